//! Characteristic subgroups, central series, abelian invariants and the
//! structural predicates used as hypotheses by the checks.

use serde::Serialize;

use crate::error::{ForgeError, Result};
use crate::pc::{Code, PcGroup, QuotientGroup, Subgroup};

/// Subgroup generated by `f(x)` over the elements `x` of `within`.
fn generated_by(g: &PcGroup, within: &Subgroup, f: impl Fn(Code) -> Option<Code>) -> Subgroup {
    let mut acc = Subgroup::trivial(g);
    for x in within.elements() {
        if let Some(y) = f(x) {
            if !acc.contains(y) {
                acc = acc.join_elements(&[y]);
            }
        }
    }
    acc
}

/// Elements of `within` satisfying `pred`, which must cut out a subgroup.
fn sweep(g: &PcGroup, within: &Subgroup, pred: impl Fn(Code) -> bool) -> Subgroup {
    generated_by(g, within, |x| pred(x).then_some(x))
}

pub fn is_abelian(g: &PcGroup) -> bool {
    Subgroup::whole(g).is_abelian()
}

pub fn center(g: &PcGroup) -> Subgroup {
    g.memo_subgroup("center", || {
        let gens = g.gens();
        sweep(g, &Subgroup::whole(g), |x| gens.iter().all(|&y| g.comm(x, y) == 0))
    })
}

/// `C_G(xs)`, narrowed one element at a time.
pub fn centralizer_of(g: &PcGroup, xs: &[Code]) -> Subgroup {
    let mut c = Subgroup::whole(g);
    for &y in xs {
        if c.gens().iter().all(|&x| g.comm(x, y) == 0) {
            continue;
        }
        c = sweep(g, &c, |x| g.comm(x, y) == 0);
    }
    c
}

pub fn centralizer(g: &PcGroup, s: &Subgroup) -> Subgroup {
    centralizer_of(g, s.gens())
}

/// `Z(S)` for a subgroup `S`.
pub fn center_of(s: &Subgroup) -> Subgroup {
    let g = s.group();
    sweep(g, s, |x| s.gens().iter().all(|&y| g.comm(x, y) == 0))
}

pub fn derived_subgroup(g: &PcGroup) -> Subgroup {
    g.memo_subgroup("derived", || {
        let n = g.n_gens();
        let mut comms = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                comms.push(g.comm(g.gen(j), g.gen(i)));
            }
        }
        Subgroup::normal_closure(g, &comms)
    })
}

/// `G^{p^i}`, the subgroup generated by all `p^i`-th powers.
pub fn agemo(g: &PcGroup, i: u32) -> Subgroup {
    let compute = || {
        let q = (g.prime() as i64).pow(i);
        generated_by(g, &Subgroup::whole(g), |x| Some(g.pow(x, q)))
    };
    match i {
        1 => g.memo_subgroup("agemo1", compute),
        2 => g.memo_subgroup("agemo2", compute),
        _ => compute(),
    }
}

/// `Φ(G) = G'G^p`.
pub fn frattini(g: &PcGroup) -> Subgroup {
    g.memo_subgroup("frattini", || derived_subgroup(g).join(&agemo(g, 1)))
}

/// Intersection of all maximal subgroups.
pub fn frattini_by_maximals(g: &PcGroup) -> Subgroup {
    maximal_subgroups(g).into_iter().reduce(|a, b| a.intersection(&b)).unwrap_or_else(|| Subgroup::trivial(g))
}

/// `Ω₁` of an abelian subgroup, read off an invariant-factor basis.
pub fn omega1(s: &Subgroup) -> Result<Subgroup> {
    let g = s.group();
    let p = g.prime() as u64;
    let basis = abelian_basis(s)?;
    let gens: Vec<Code> = basis.iter().map(|&(x, o)| g.pow(x, (o / p) as i64)).collect();
    Ok(Subgroup::closure(g, &gens))
}

/// `Ω₁(G)` by element sweep.
pub fn omega1_general(g: &PcGroup) -> Subgroup {
    g.memo_subgroup("omega1", || {
        let p = g.prime() as i64;
        generated_by(g, &Subgroup::whole(g), |x| (g.pow(x, p) == 0).then_some(x))
    })
}

/// `Z_0 = 1 < Z_1 < ... < Z_c = G`.
pub fn upper_central_series(g: &PcGroup) -> Vec<Subgroup> {
    let whole = Subgroup::whole(g);
    let gens = g.gens();
    let mut series = vec![Subgroup::trivial(g)];
    while series.last().unwrap().order() < g.order() {
        let z = series.last().unwrap().clone();
        let next = sweep(g, &whole, |x| gens.iter().all(|&y| z.contains(g.comm(x, y))));
        debug_assert!(next.order() > z.order());
        series.push(next);
    }
    series
}

/// `γ_1 = G > γ_2 > ... > γ_{c+1} = 1`.
pub fn lower_central_series(g: &PcGroup) -> Vec<Subgroup> {
    let gens = g.gens();
    let mut series = vec![Subgroup::whole(g)];
    while !series.last().unwrap().is_trivial() {
        let last = series.last().unwrap();
        let mut comms = Vec::new();
        for &s in last.gens() {
            for &y in &gens {
                comms.push(g.comm(s, y));
            }
        }
        series.push(Subgroup::normal_closure(g, &comms));
    }
    series
}

pub fn nilpotency_class(g: &PcGroup) -> u32 {
    (upper_central_series(g).len() - 1) as u32
}

/// `n - class` for `|G| = p^n`, defined only when `n > 2`.
pub fn coclass(g: &PcGroup) -> Result<u32> {
    let n = g.log_order();
    if n <= 2 {
        return Err(ForgeError::InvalidArgument(format!("coclass needs |G| > p^2, got p^{n}")));
    }
    Ok(n - nilpotency_class(g))
}

/// `d(G) = log_p |G/Φ(G)|`.
pub fn rank_d(g: &PcGroup) -> u32 {
    let idx = g.order() / frattini(g).order();
    crate::pc::presentation::log_p(g.prime(), idx).unwrap_or(0)
}

fn log_p(p: u32, q: u64) -> u32 {
    crate::pc::presentation::log_p(p, q).expect("p-power")
}

/// Smallest `p^k` with `x^{p^k} ∈ b`.
fn order_mod(g: &PcGroup, x: Code, b: &Subgroup) -> u64 {
    let p = g.prime() as i64;
    let mut y = x;
    let mut k = 1u64;
    while !b.contains(y) {
        y = g.pow(y, p);
        k *= p as u64;
    }
    k
}

/// Invariant-factor basis of the abelian section `upper/lower`, as pairs
/// (representative, order modulo `lower`), orders non-increasing.
pub fn section_basis(upper: &Subgroup, lower: &Subgroup) -> Result<Vec<(Code, u64)>> {
    let g = upper.group();
    if !lower.is_subgroup_of(upper) || !lower.is_normalized_by(upper) {
        return Err(ForgeError::NotNormal);
    }
    let ug = upper.gens();
    for (i, &x) in ug.iter().enumerate() {
        for &y in &ug[i + 1..] {
            if !lower.contains(g.comm(x, y)) {
                return Err(ForgeError::NotAbelian);
            }
        }
    }
    let elems = upper.elements();
    let mut b = lower.clone();
    let mut basis = Vec::new();
    while b.order() < upper.order() {
        let mut best: Option<(u64, Code)> = None;
        let top = elems.iter().map(|&x| order_mod(g, x, &b)).max().unwrap();
        for &x in &elems {
            if order_mod(g, x, &b) == top && order_mod(g, x, lower) == top {
                best = Some((top, x));
                break;
            }
        }
        let (o, x) = best.expect("a lift of maximal order exists");
        basis.push((x, o));
        b = b.join_elements(&[x]);
    }
    Ok(basis)
}

pub fn abelian_basis(s: &Subgroup) -> Result<Vec<(Code, u64)>> {
    section_basis(s, &Subgroup::trivial(s.group()))
}

/// Invariant factors of an abelian subgroup, non-increasing.
pub fn abelian_invariants(s: &Subgroup) -> Result<Vec<u64>> {
    Ok(abelian_basis(s)?.into_iter().map(|(_, o)| o).collect())
}

pub fn section_invariants(upper: &Subgroup, lower: &Subgroup) -> Result<Vec<u64>> {
    Ok(section_basis(upper, lower)?.into_iter().map(|(_, o)| o).collect())
}

pub fn d_abelian(s: &Subgroup) -> Result<u32> {
    Ok(abelian_basis(s)?.len() as u32)
}

pub fn exponent(g: &PcGroup) -> u64 {
    g.elements().map(|x| g.element_order(x)).max().unwrap_or(1)
}

pub fn is_powerful(g: &PcGroup) -> bool {
    let k = if g.prime() == 2 { 2 } else { 1 };
    derived_subgroup(g).is_subgroup_of(&agemo(g, k))
}

pub fn is_p_central(g: &PcGroup) -> bool {
    omega1_general(g).is_subgroup_of(&center(g))
}

/// `C_G(Z(Φ(G))) = Φ(G)`.
pub fn ds_condition(g: &PcGroup) -> bool {
    let phi = frattini(g);
    centralizer(g, &center_of(&phi)) == phi
}

/// `G/Z(G)` together with its factor presentation.
pub fn central_quotient(g: &PcGroup) -> QuotientGroup {
    QuotientGroup::new(g, &center(g)).expect("the center is normal")
}

/// `[A, x] = {[a, x] : a ∈ A}` for normal abelian `A`.
pub fn commutator_image_subgroup(a: &Subgroup, x: Code) -> Result<Subgroup> {
    if !a.is_normal() {
        return Err(ForgeError::NotNormal);
    }
    if !a.is_abelian() {
        return Err(ForgeError::NotAbelian);
    }
    let g = a.group();
    let mut set: Vec<Code> = a.elements().iter().map(|&y| g.comm(y, x)).collect();
    set.sort_unstable();
    set.dedup();
    let s = Subgroup::closure(g, &set);
    if s.order() != set.len() as u64 {
        return Err(ForgeError::InvalidArgument(format!(
            "[A,x] has {} elements but generates a subgroup of order {}",
            set.len(),
            s.order()
        )));
    }
    Ok(s)
}

/// Index-`p` subgroups, as preimages of hyperplanes of `G/Φ(G)`.
pub fn maximal_subgroups(g: &PcGroup) -> Vec<Subgroup> {
    let q = QuotientGroup::new(g, &frattini(g)).expect("Φ(G) is normal");
    let f = q.group();
    let d = f.n_gens();
    let p = g.prime();
    let mut out = Vec::new();
    // functionals with leading coordinate 1
    let total = (p as u64).pow(d as u32);
    for lam in 0..total {
        let mut v = vec![0u32; d];
        let mut t = lam;
        for k in (0..d).rev() {
            v[k] = (t % p as u64) as u32;
            t /= p as u64;
        }
        let Some(i0) = v.iter().position(|&c| c != 0) else { continue };
        if v[i0] != 1 {
            continue;
        }
        let mut gens = Vec::new();
        for j in 0..d {
            if j == i0 {
                continue;
            }
            let mut e = vec![0u32; d];
            e[j] = 1;
            e[i0] = (p - v[j]) % p;
            gens.push(f.code(&e));
        }
        let h = Subgroup::closure(f, &gens);
        out.push(q.preimage(&h));
    }
    out.sort_by(|a, b| a.gens().cmp(b.gens()));
    out
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SubgroupSummary {
    pub order: u64,
    pub gens: Vec<String>,
}

impl SubgroupSummary {
    pub fn of(s: &Subgroup) -> Self {
        SubgroupSummary { order: s.order(), gens: s.describe() }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GroupProfile {
    pub name: String,
    pub prime: u32,
    pub order: u64,
    pub nilpotency_class: u32,
    pub coclass: Option<u32>,
    pub d: u32,
    pub d_center: u32,
    pub center_invariants: Vec<u64>,
    pub exponent: u64,
    pub upper_series: Vec<SubgroupSummary>,
    pub lower_series: Vec<SubgroupSummary>,
    pub is_abelian: bool,
    pub is_powerful: bool,
    pub is_p_central: bool,
    pub ds_condition: bool,
}

pub fn profile(g: &PcGroup) -> GroupProfile {
    let upper = upper_central_series(g);
    let lower = lower_central_series(g);
    let z = center(g);
    let center_invariants = abelian_invariants(&z).expect("the center is abelian");
    GroupProfile {
        name: g.name().to_string(),
        prime: g.prime(),
        order: g.order(),
        nilpotency_class: (upper.len() - 1) as u32,
        coclass: coclass(g).ok(),
        d: rank_d(g),
        d_center: center_invariants.len() as u32,
        center_invariants,
        exponent: exponent(g),
        upper_series: upper.iter().map(SubgroupSummary::of).collect(),
        lower_series: lower.iter().map(SubgroupSummary::of).collect(),
        is_abelian: is_abelian(g),
        is_powerful: is_powerful(g),
        is_p_central: is_p_central(g),
        ds_condition: ds_condition(g),
    }
}

/// `log_p` of a subgroup order.
pub fn log_order(s: &Subgroup) -> u32 {
    log_p(s.group().prime(), s.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::families;

    #[test]
    fn d8_basics() {
        let g = families::dihedral(8).unwrap();
        assert_eq!(center(&g).order(), 2);
        assert_eq!(centralizer_of(&g, &[g.gen(1)]).order(), 4);
        assert_eq!(centralizer_of(&g, &[g.gen(1)]), Subgroup::closure(&g, &[g.gen(1)]));
        assert_eq!(nilpotency_class(&g), 2);
        assert_eq!(coclass(&g).unwrap(), 1);
        assert_eq!(rank_d(&g), 2);
        assert_eq!(maximal_subgroups(&g).len(), 3);
        assert!(!is_powerful(&g));
        assert!(!ds_condition(&g));
        assert_eq!(frattini(&g), frattini_by_maximals(&g));
    }

    #[test]
    fn q8_facts() {
        let g = families::quaternion(8).unwrap();
        assert_eq!(derived_subgroup(&g).order(), 2);
        assert_eq!(omega1_general(&g).order(), 2);
        assert!(is_p_central(&g));
        let q = QuotientGroup::new(&g, &derived_subgroup(&g)).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(exponent(q.group()), 2);
    }

    #[test]
    fn abelian_invariants_c4_c2() {
        let g = families::abelian(2, &[4, 2]).unwrap();
        let w = Subgroup::whole(&g);
        assert_eq!(abelian_invariants(&w).unwrap(), vec![4, 2]);
        let o = omega1(&w).unwrap();
        assert_eq!(o.order(), 4);
        assert_eq!(abelian_invariants(&o).unwrap(), vec![2, 2]);
        assert!(is_powerful(&g));
        assert!(!ds_condition(&g));
        assert_eq!(center(&g), w);
        let e = families::abelian(3, &[3, 3]).unwrap();
        assert!(frattini(&e).is_trivial());
    }

    #[test]
    fn abelian_ops_reject_nonabelian() {
        let g = families::dihedral(8).unwrap();
        let w = Subgroup::whole(&g);
        assert!(matches!(abelian_invariants(&w), Err(ForgeError::NotAbelian)));
        assert!(matches!(omega1(&w), Err(ForgeError::NotAbelian)));
    }

    #[test]
    fn extraspecial_27() {
        let g = families::extraspecial(3, false).unwrap();
        assert_eq!(nilpotency_class(&g), 2);
        let up = upper_central_series(&g);
        assert_eq!(up[2].order() / up[1].order(), 9);
        assert_eq!(maximal_subgroups(&g).len(), 4);
        assert!(is_powerful(central_quotient(&g).group()));
        let z = center(&g);
        for m in maximal_subgroups(&g) {
            let x = g.elements().find(|&x| !m.contains(x)).unwrap();
            assert_eq!(commutator_image_subgroup(&m, x).unwrap(), z);
        }
    }

    #[test]
    fn commutator_image_of_central_element_is_trivial() {
        let g = families::dihedral(16).unwrap();
        let z = center(&g);
        let a = Subgroup::closure(&g, &[g.gen(1)]);
        assert!(commutator_image_subgroup(&a, z.gens()[0]).unwrap().is_trivial());
        let bad = Subgroup::closure(&g, &[g.gen(0)]);
        assert!(matches!(commutator_image_subgroup(&bad, g.gen(1)), Err(ForgeError::NotNormal)));
    }

    #[test]
    fn series_agree_on_class() {
        for g in [families::dihedral(32).unwrap(), families::semidihedral(16).unwrap(), families::wreath_c3().unwrap()]
        {
            let up = upper_central_series(&g);
            let low = lower_central_series(&g);
            assert_eq!(up.len(), low.len());
            assert!(up.windows(2).all(|w| w[0].order() < w[1].order()));
            assert!(low.windows(2).all(|w| w[0].order() > w[1].order()));
        }
    }

    #[test]
    fn profile_serializes() {
        let g = families::dihedral(8).unwrap();
        let p = profile(&g);
        assert_eq!(p.d, 2);
        assert_eq!(p.center_invariants, vec![2]);
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("\"nilpotency_class\":2"));
    }
}
