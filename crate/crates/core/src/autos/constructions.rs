//! Explicit noninner automorphisms of order `p`.

use serde::Serialize;

use super::search::{first_noninner_order_p_fixing, search_automorphisms, SearchSpec};
use super::{make_automorphism, AutWitness, Automorphism};
use crate::cohomology;
use crate::error::{ForgeError, Result};
use crate::pc::{Code, PcGroup, QuotientGroup, Subgroup};
use crate::structure::{self, SubgroupSummary};

fn omega1_center(g: &PcGroup) -> Subgroup {
    structure::omega1(&structure::center(g)).expect("the center is abelian")
}

/// A maximal subgroup `m`, an element `g ∉ m` and `z ∈ Ω₁(Z(G)) \ [Z(m), g]`.
#[derive(Clone, Debug)]
pub struct Lemma21Triple {
    pub m: Subgroup,
    pub g: Code,
    pub z: Code,
}

/// `m g^i ↦ m g^i z^i`.
pub fn lemma21_alpha(gr: &PcGroup, m: &Subgroup, g: Code, z: Code) -> Result<Automorphism> {
    let p = gr.prime() as u64;
    if m.order() * p != gr.order() || !m.is_normal() {
        return Err(ForgeError::InvalidArgument("m is not a maximal subgroup".into()));
    }
    if m.contains(g) {
        return Err(ForgeError::InvalidArgument("g lies in m".into()));
    }
    if !omega1_center(gr).contains(z) {
        return Err(ForgeError::InvalidArgument("z is not in Ω₁(Z(G))".into()));
    }
    if !m.contains(z) {
        return Err(ForgeError::InvalidArgument("z is not in m".into()));
    }
    let images: Vec<Code> = gr
        .gens()
        .iter()
        .map(|&x| {
            let i = (0..p as i64).find(|&i| m.contains(gr.mul(x, gr.pow(g, -i)))).unwrap();
            gr.mul(x, gr.pow(z, i))
        })
        .collect();
    make_automorphism(gr, &images)
}

/// All triples for which [`lemma21_alpha`] is defined and `z ∉ [Z(M), g]`,
/// taking `g` over `g_0^i`, `0 < i < p`, for a fixed `g_0 ∉ M`.
pub fn lemma21_witness_scan(gr: &PcGroup) -> Result<Vec<Lemma21Triple>> {
    if structure::is_abelian(gr) {
        return Err(ForgeError::HypothesesUnmet("group is abelian".into()));
    }
    let omega = omega1_center(gr);
    let mut out = Vec::new();
    for m in structure::maximal_subgroups(gr) {
        let zm = structure::center_of(&m);
        let g0 = gr.elements().find(|&x| !m.contains(x)).unwrap();
        for i in 1..gr.prime() as i64 {
            let g = gr.pow(g0, i);
            let img = structure::commutator_image_subgroup(&zm, g)?;
            for z in omega.elements() {
                if z != 0 && !img.contains(z) && m.contains(z) {
                    out.push(Lemma21Triple { m: m.clone(), g, z });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma22Report {
    pub omega: SubgroupSummary,
    /// `|C|` by direct search
    pub c_order: usize,
    /// `|Hom(G/Ω₁(Z(G)), Ω₁(Z(G)))|`
    pub hom_order: usize,
    pub d_prime: u32,
    /// `|Ω₁(Z(G))|^{d'}`
    pub expected_order: u64,
    pub psi_matches: bool,
    pub all_fix_frattini: bool,
    pub elementary: bool,
    pub noninner: usize,
}

impl Lemma22Report {
    pub fn consistent(&self) -> bool {
        self.c_order == self.hom_order
            && self.c_order as u64 == self.expected_order
            && self.psi_matches
            && self.all_fix_frattini
            && self.elementary
    }
}

/// The group `C` of automorphisms `φ` with `x^-1 x^φ ∈ Ω₁(Z(G))` fixing
/// `Ω₁(Z(G))`, found by search and compared against `ψ(Hom(G/Ω₁Z, Ω₁Z))`.
pub fn lemma22_c_group(g: &PcGroup, cap: u64) -> Result<(Vec<Automorphism>, Lemma22Report)> {
    let w = omega1_center(g);
    let spec = SearchSpec { fix: Some(w.clone()), coset: Some(w.clone()), order_p: false };
    let c = search_automorphisms(g, &spec, cap)?;
    let module = cohomology::module_of(g, &w)?;
    let homs = cohomology::z1(&module, cap.max(1 << 12))?;
    let mut psi: Vec<Automorphism> = homs.iter().map(|f| cohomology::schmid_phi(&module, f)).collect::<Result<_>>()?;
    psi.sort_by_key(|a| a.image_exponents());
    psi.dedup();
    let psi_matches = psi.len() == homs.len() && psi == c;
    let wg = w.join(&structure::derived_subgroup(g));
    let q = QuotientGroup::new(g, &wg)?;
    let d_prime = structure::d_abelian(&Subgroup::whole(q.group()))?;
    let expected_order = w.order().pow(d_prime);
    let phi = structure::frattini(g);
    let p = g.prime() as u64;
    let report = Lemma22Report {
        omega: SubgroupSummary::of(&w),
        c_order: c.len(),
        hom_order: homs.len(),
        d_prime,
        expected_order,
        psi_matches,
        all_fix_frattini: c.iter().all(|a| a.fixes_pointwise(&phi)),
        elementary: c.iter().all(|a| a.order() == 1 || a.order() == p),
        noninner: c.iter().filter(|a| a.is_inner().is_none()).count(),
    };
    Ok((c, report))
}

/// `a ↦ a v^{2r}`, `b ↦ b v^{2s}` on the group of order 128 with
/// `v = [a, b]`.
pub fn liebeck_sigma(g: &PcGroup, r: u32, s: u32) -> Result<Automorphism> {
    let l = crate::corpus::liebeck128()?;
    if g.presentation() != l.presentation() {
        return Err(ForgeError::InvalidArgument("sigma is defined on L128 only".into()));
    }
    if r > 1 || s > 1 {
        return Err(ForgeError::InvalidArgument("r and s must be 0 or 1".into()));
    }
    let (a, b) = (g.gen(0), g.gen(1));
    let v = g.comm(a, b);
    make_automorphism(g, &[g.mul(a, g.pow(v, 2 * r as i64)), g.mul(b, g.pow(v, 2 * s as i64))])
}

/// Images of the map `u t_1^{e_1} ... t_k^{e_k} ↦ u s_1^{e_1} ... s_k^{e_k}`
/// for `u ∈ base`, exponents below `p`, where `G/base` is elementary abelian
/// on the classes of `t_i`.
fn transversal_map(g: &PcGroup, base: &Subgroup, ts: &[Code], ss: &[Code]) -> Option<Vec<Code>> {
    let p = g.prime() as u64;
    let k = ts.len();
    let combos = p.pow(k as u32);
    g.gens()
        .iter()
        .map(|&x| {
            (0..combos).find_map(|c| {
                let mut e = Vec::with_capacity(k);
                let mut t = c;
                for _ in 0..k {
                    e.push((t % p) as i64);
                    t /= p;
                }
                let word = ts.iter().zip(&e).fold(0, |acc, (&t, &ei)| g.mul(acc, g.pow(t, ei)));
                let u = g.mul(x, g.inv(word));
                base.contains(u).then(|| ss.iter().zip(&e).fold(u, |acc, (&s, &ei)| g.mul(acc, g.pow(s, ei))))
            })
        })
        .collect()
}

/// Certifies a candidate map and keeps it only if it is noninner of order `p`.
fn accept(g: &PcGroup, images: Option<Vec<Code>>, fix: &Subgroup, label: &str, path: &str) -> Option<AutWitness> {
    let a = make_automorphism(g, &images?).ok()?;
    let w = AutWitness::certify(&a, fix, label, path).ok()?;
    w.is_noninner_of_order(g.prime() as u64).then_some(w)
}

/// Metacyclic parameters `(a, b, r, s, t)` with `<b>` normal,
/// `b^a = b^{2^t+1}`, `a^{2^r} = b^{2^s}`, `|G| = 2^{r+s+t}`, `r >= s >= t >= 2`.
pub fn recognize_metacyclic(g: &PcGroup) -> Option<(Code, Code, u32, u32, u32)> {
    if g.prime() != 2 || structure::rank_d(g) != 2 {
        return None;
    }
    let n = g.log_order();
    let phi = structure::frattini(g);
    let q = QuotientGroup::new(g, &phi).ok()?;
    let outside: Vec<Code> = g.elements().filter(|&x| !phi.contains(x)).collect();
    for &b in &outside {
        let ob = g.element_order(b);
        let bsub = Subgroup::closure(g, &[b]);
        if !bsub.is_normal() {
            continue;
        }
        for &a in &outside {
            if q.project(a) == q.project(b) {
                continue;
            }
            let ab = g.conj(b, a);
            let Some(e) = (1..ob).find(|&e| g.pow(b, e as i64) == ab) else { continue };
            if e < 5 || !(e - 1).is_power_of_two() {
                continue;
            }
            let t = (e - 1).trailing_zeros();
            let st = ob.trailing_zeros();
            if st < 2 * t || n < st {
                continue;
            }
            let s = st - t;
            let r = n - st;
            if !(r >= s && s >= t && t >= 2) {
                continue;
            }
            if g.pow(a, 1 << r) == g.pow(b, 1 << s) {
                return Some((a, b, r, s, t));
            }
        }
    }
    None
}

/// `a^i b^j ↦ (a h)^i (b h_b)^j` on a metacyclic group.
fn metacyclic_map(g: &PcGroup, a: Code, b: Code, ah: Code, bh: Code) -> Option<Vec<Code>> {
    let oa = g.element_order(a) as i64;
    let bsub = Subgroup::closure(g, &[b]);
    let ob = g.element_order(b) as i64;
    g.gens()
        .iter()
        .map(|&x| {
            (0..oa).find_map(|i| {
                let rest = g.mul(g.pow(a, -i), x);
                if !bsub.contains(rest) {
                    return None;
                }
                let j = (0..ob).find(|&j| g.pow(b, j) == rest)?;
                Some(g.mul(g.pow(ah, i), g.pow(bh, j)))
            })
        })
        .collect()
}

fn search_fallback(g: &PcGroup, fixes: &[(&Subgroup, &str)], cap: u64) -> Result<AutWitness> {
    for &(s, label) in fixes {
        if let Some(mut w) = first_noninner_order_p_fixing(g, s, label, cap)? {
            w.path = "search-fallback".into();
            return Ok(w);
        }
    }
    Err(ForgeError::NoWitness(format!(
        "{}: no noninner automorphism of order p fixing {}",
        g.name(),
        fixes.iter().map(|f| f.1).collect::<Vec<_>>().join(" or ")
    )))
}

/// Replays the case analysis for non-abelian `G` with `G/Z(G)` powerful and
/// returns a certified noninner automorphism of order `p`. It fixes `Φ(G)`
/// pointwise when `p` is odd or `Z(G)` is noncyclic, and `Φ(G)` or
/// `Ω₁(Z(G))` when `p = 2` and `Z(G)` is cyclic.
pub fn thm26_construct(g: &PcGroup, cap: u64) -> Result<AutWitness> {
    if structure::is_abelian(g) {
        return Err(ForgeError::HypothesesUnmet("group is abelian".into()));
    }
    if !structure::is_powerful(structure::central_quotient(g).group()) {
        return Err(ForgeError::HypothesesUnmet("G/Z(G) is not powerful".into()));
    }
    let p = g.prime();
    let z = structure::center(g);
    let phi = structure::frattini(g);
    let zinv = structure::abelian_invariants(&z)?;

    if zinv.len() > 1 {
        if let Ok((c, _)) = lemma22_c_group(g, cap) {
            for a in &c {
                if let Some(w) = accept(g, Some(a.images().to_vec()), &phi, "frattini", "lemma-2.2") {
                    return Ok(w);
                }
            }
        }
        for t in lemma21_witness_scan(g)? {
            let images = lemma21_alpha(g, &t.m, t.g, t.z).ok().map(|a| a.images().to_vec());
            if let Some(w) = accept(g, images, &phi, "frattini", "lemma-2.1") {
                return Ok(w);
            }
        }
        return search_fallback(g, &[(&phi, "frattini")], cap);
    }

    let z2 = structure::upper_central_series(g)[2].clone();
    let hs: Vec<Code> = z2.elements().into_iter().filter(|&x| z.contains(g.pow(x, p as i64))).collect();
    let h_sub = Subgroup::closure(g, &hs);
    let hbasis = structure::section_basis(&h_sub, &z)?;
    let d = hbasis.len();

    if p != 2 {
        let mut cands = Vec::new();
        if d >= 2 {
            let (a, b) = (hbasis[0].0, hbasis[1].0);
            let pi = p as i64;
            let span = (z.order() * p as u64) as i64;
            if let Some(s) = (0..span).find(|&s| g.pow(a, pi) == g.pow(b, pi * s)) {
                cands.push((g.mul(a, g.pow(b, -s)), "beta"));
            } else if let Some(s) = (0..span).find(|&s| g.pow(a, pi * s) == g.pow(b, pi)) {
                cands.push((g.mul(b, g.pow(a, -s)), "beta"));
            }
        }
        for &h in &hs {
            cands.push((h, "beta-scan"));
        }
        for (h, path) in cands {
            if z.contains(h) || g.pow(h, p as i64) != 0 {
                continue;
            }
            let c = structure::centralizer_of(g, &[h]);
            let x = g.elements().find(|&x| !c.contains(x)).unwrap();
            let images = transversal_map(g, &c, &[x], &[g.mul(x, h)]);
            if let Some(w) = accept(g, images, &phi, "frattini", path) {
                return Ok(w);
            }
        }
        return search_fallback(g, &[(&phi, "frattini")], cap);
    }

    let om = omega1_center(g);
    let fallback = [(&phi, "frattini"), (&om, "omega1-center")];
    if !h_sub.is_abelian() {
        return search_fallback(g, &fallback, cap);
    }
    let zt = Subgroup::closure(g, &[om.gens()[0]]);
    let inv: Vec<Code> = structure::section_basis(&structure::omega1(&h_sub)?, &zt)?.into_iter().map(|b| b.0).collect();
    let cents: Vec<Subgroup> = inv.iter().map(|&h| structure::centralizer_of(g, &[h])).collect();
    for i in 0..inv.len() {
        for j in 0..inv.len() {
            if i == j || cents[i] == cents[j] {
                continue;
            }
            let u = cents[i].intersection(&cents[j]);
            let xi = g.elements().find(|&x| cents[i].contains(x) && !cents[j].contains(x)).unwrap();
            let xj = g.elements().find(|&x| cents[j].contains(x) && !cents[i].contains(x)).unwrap();
            let images = transversal_map(g, &u, &[xi, xj], &[g.mul(xi, inv[i]), g.mul(xj, inv[j])]);
            if let Some(w) = accept(g, images, &phi, "frattini", "phi") {
                return Ok(w);
            }
        }
    }
    if inv.len() >= 2 {
        let h = g.mul(inv[0], inv[1]);
        let m = &cents[0];
        let x = g.elements().find(|&x| !m.contains(x)).unwrap();
        let images = transversal_map(g, m, &[x], &[g.mul(x, h)]);
        if let Some(w) = accept(g, images, &phi, "frattini", "alpha") {
            return Ok(w);
        }
    }
    if inv.len() + 1 == d && d == 2 {
        if let Some((a, b, r, s, t)) = recognize_metacyclic(g) {
            if s > t {
                let h = g.mul(g.pow(b, 1 << (s - 1)), g.pow(a, -(1i64 << (r - 1))));
                let (images, path) = if r > s {
                    (metacyclic_map(g, a, b, g.mul(a, h), b), "metacyclic-alpha")
                } else {
                    (metacyclic_map(g, a, b, g.mul(a, h), g.mul(b, h)), "metacyclic-delta")
                };
                if let Some(w) = accept(g, images, &om, "omega1-center", path) {
                    return Ok(w);
                }
            }
        }
    }
    search_fallback(g, &fallback, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::SEARCH_CAP;
    use crate::corpus::{families, named};

    #[test]
    fn transvection_fixes_maximal() {
        let g = families::dihedral(16).unwrap();
        let z = omega1_center(&g).gens()[0];
        for m in structure::maximal_subgroups(&g) {
            let x = g.elements().find(|&x| !m.contains(x)).unwrap();
            let a = lemma21_alpha(&g, &m, x, z).unwrap();
            assert!(a.fixes_pointwise(&m));
            assert_eq!(a.order(), 2);
            assert!(lemma21_alpha(&g, &m, x, 0).unwrap().is_identity());
            assert!(lemma21_alpha(&g, &m, m.gens()[0], z).is_err());
        }
    }

    #[test]
    fn central_automorphism_counts() {
        let es = families::extraspecial(3, false).unwrap();
        let (c, r) = lemma22_c_group(&es, SEARCH_CAP).unwrap();
        assert_eq!(c.len(), 9);
        assert!(r.consistent(), "{r:?}");
        let q8 = families::quaternion(8).unwrap();
        let (c, r) = lemma22_c_group(&q8, SEARCH_CAP).unwrap();
        assert_eq!(c.len(), 4);
        assert!(r.consistent(), "{r:?}");
        let e = families::abelian(2, &[2, 2]).unwrap();
        assert_eq!(lemma22_c_group(&e, SEARCH_CAP).unwrap().0.len(), 1);
    }

    #[test]
    fn sigma_maps_are_inner() {
        let g = named::liebeck128().unwrap();
        assert!(liebeck_sigma(&g, 0, 0).unwrap().is_identity());
        for (r, s) in [(1, 0), (0, 1), (1, 1)] {
            let a = liebeck_sigma(&g, r, s).unwrap();
            assert_eq!(a.order(), 2);
            assert!(a.is_inner().is_some());
            assert!(a.fixes_pointwise(&structure::frattini(&g)));
        }
        assert!(liebeck_sigma(&families::dihedral(8).unwrap(), 1, 0).is_err());
    }

    #[test]
    fn powerful_quotient_extraspecial() {
        let g = families::extraspecial(3, false).unwrap();
        let w = thm26_construct(&g, SEARCH_CAP).unwrap();
        assert!(w.is_noninner_of_order(3));
        assert_eq!(w.fixed, "frattini");
        assert!(thm26_construct(&families::abelian(3, &[3]).unwrap(), SEARCH_CAP).is_err());
    }

    #[test]
    fn powerful_quotient_g64_fixes_omega() {
        let g = named::g64().unwrap();
        let w = thm26_construct(&g, SEARCH_CAP).unwrap();
        assert!(w.is_noninner_of_order(2));
        assert_eq!(w.fixed, "omega1-center");
    }

    #[test]
    fn metacyclic_recognized() {
        let g = named::metacyclic(3, 2, 2).unwrap();
        let (_, _, r, s, t) = recognize_metacyclic(&g).unwrap();
        assert_eq!((r, s, t), (3, 2, 2));
    }
}
