//! `Z(N)` as a `G/N`-module: fixed points, trace, `H⁰`, crossed
//! homomorphisms and the automorphisms they induce.
//!
//! Conventions: right action `a^q = a^{lift(q)}`, cocycle law
//! `f(qr) = f(q)^r f(r)`, principal maps `f_a(q) = a^-1 a^q`.

pub mod checks;

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::autos::{make_automorphism, Automorphism, SearchSpec};
use crate::error::{ForgeError, Result};
use crate::pc::{Code, PcGroup, QuotientGroup, Subgroup};
use crate::structure::{self, SubgroupSummary};

pub use checks::{
    condition3_check, lemma31_34_check, lemma37_check, norm_element, prop35_check, second_proof_pipeline, thm36_check,
    Condition3Report, LemmaCase, Prop35Report, SweepReport, Thm36Report,
};

/// Bound on `|Q| * |A|` for cocycle enumeration.
pub const COHOMOLOGY_CAP: u64 = 1 << 14;

#[derive(Clone, Debug)]
pub struct GModule {
    group: PcGroup,
    n: Subgroup,
    a: Subgroup,
    basis: Vec<(Code, u64)>,
    coords: HashMap<Code, Vec<u64>>,
    q: QuotientGroup,
    /// canonical lift of each element of `Q`, indexed by its code
    lifts: Vec<Code>,
    /// rows: coordinates of `b_i^{q_k}` for each pc generator `q_k` of `Q`
    matrices: Vec<Vec<Vec<u64>>>,
}

/// `Z(N)` with the conjugation action of `G/N`; the action is checked to be
/// a homomorphism on every pair of elements of `Q`.
pub fn module_of(g: &PcGroup, n: &Subgroup) -> Result<GModule> {
    if !n.is_normal() {
        return Err(ForgeError::NotNormal);
    }
    let q = QuotientGroup::new(g, n)?;
    let a = structure::center_of(n);
    let basis = structure::abelian_basis(&a)?;
    let mut coords = HashMap::new();
    let mut stack: Vec<(Code, Vec<u64>)> = vec![(0, vec![])];
    for &(b, o) in &basis {
        let mut next = Vec::new();
        for (x, c) in stack {
            let mut y = x;
            for e in 0..o {
                let mut c2 = c.clone();
                c2.push(e);
                next.push((y, c2));
                y = g.mul(y, b);
            }
        }
        stack = next;
    }
    coords.extend(stack);
    let qg = q.group().clone();
    let lifts: Vec<Code> = qg.elements().map(|x| q.lift(x)).collect();
    let matrices = qg
        .gens()
        .iter()
        .map(|&qk| basis.iter().map(|&(b, _)| coords[&g.conj(b, lifts[qk as usize])].clone()).collect())
        .collect();
    let m = GModule { group: g.clone(), n: n.clone(), a, basis, coords, q, lifts, matrices };
    for x in qg.elements() {
        for y in qg.elements() {
            let xy = qg.mul(x, y);
            for &(b, _) in &m.basis {
                if m.act(m.act(b, x), y) != m.act(b, xy) {
                    return Err(ForgeError::InvalidArgument("action is not a homomorphism".into()));
                }
            }
        }
    }
    Ok(m)
}

impl GModule {
    pub fn group(&self) -> &PcGroup {
        &self.group
    }

    pub fn normal(&self) -> &Subgroup {
        &self.n
    }

    /// The module `A = Z(N)` as a subgroup of `G`.
    pub fn a(&self) -> &Subgroup {
        &self.a
    }

    pub fn quotient(&self) -> &QuotientGroup {
        &self.q
    }

    pub fn q_group(&self) -> &PcGroup {
        self.q.group()
    }

    pub fn q_order(&self) -> u64 {
        self.q.order()
    }

    pub fn basis(&self) -> &[(Code, u64)] {
        &self.basis
    }

    pub fn a_invariants(&self) -> Vec<u64> {
        self.basis.iter().map(|b| b.1).collect()
    }

    pub fn matrices(&self) -> &[Vec<Vec<u64>>] {
        &self.matrices
    }

    pub fn lift(&self, q: Code) -> Code {
        self.lifts[q as usize]
    }

    /// `a^q` for `a ∈ A`, `q ∈ Q`.
    pub fn act(&self, a: Code, q: Code) -> Code {
        self.group.conj(a, self.lifts[q as usize])
    }

    /// `a^x` computed through an arbitrary representative `x ∈ G`.
    pub fn act_by_rep(&self, a: Code, x: Code) -> Code {
        self.group.conj(a, x)
    }

    pub fn coordinates(&self, a: Code) -> Option<&[u64]> {
        self.coords.get(&a).map(|v| v.as_slice())
    }

    /// Applies the action matrix of `q` to coordinates.
    pub fn act_matrix(&self, coords: &[u64], q: Code) -> Vec<u64> {
        let qg = self.q.group();
        let mut cur = coords.to_vec();
        for (k, &e) in qg.exponents(q).iter().enumerate() {
            for _ in 0..e {
                let mut next = vec![0u64; cur.len()];
                for (i, &c) in cur.iter().enumerate() {
                    for (j, &m) in self.matrices[k][i].iter().enumerate() {
                        next[j] = (next[j] + c * m) % self.basis[j].1;
                    }
                }
                cur = next;
            }
        }
        cur
    }

    /// Two representatives of one coset act identically on `A`.
    pub fn well_defined_on(&self, x: Code, y: Code) -> bool {
        if self.q.project(x) != self.q.project(y) {
            return true;
        }
        self.basis.iter().all(|&(b, _)| self.group.conj(b, x) == self.group.conj(b, y))
    }

    pub fn elements_of_a(&self) -> Vec<Code> {
        self.a.elements()
    }
}

/// `A^τ`: image of `a ↦ ∏_{x ∈ Q} a^x`, evaluated on the basis.
pub fn trace_image(m: &GModule) -> Subgroup {
    let g = &m.group;
    let imgs: Vec<Code> =
        m.basis.iter().map(|&(b, _)| m.q_group().elements().fold(0, |acc, x| g.mul(acc, m.act(b, x)))).collect();
    Subgroup::closure(g, &imgs)
}

/// `A_Q`: elements of `A` fixed by every element of `Q`.
pub fn fixed_points(m: &GModule) -> Subgroup {
    let qgens = m.q_group().gens();
    let fixed: Vec<Code> = m.a.elements().into_iter().filter(|&a| qgens.iter().all(|&q| m.act(a, q) == a)).collect();
    Subgroup::closure(&m.group, &fixed)
}

/// `H⁰(Q, A) = A_Q / A^τ` as invariant factors; empty means zero.
pub fn h0(m: &GModule) -> Vec<u64> {
    structure::section_invariants(&fixed_points(m), &trace_image(m)).expect("A is abelian")
}

/// A crossed homomorphism stored as its full table on `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossedHom {
    pub table: Vec<Code>,
    /// `a` with `f(q) = a^-1 a^q`, when known
    pub principal: Option<Code>,
}

impl CrossedHom {
    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    pub fn value(&self, q: Code) -> Code {
        self.table[q as usize]
    }

    /// Pointwise product.
    pub fn mul(&self, other: &CrossedHom, g: &PcGroup) -> CrossedHom {
        let table = self.table.iter().zip(&other.table).map(|(&x, &y)| g.mul(x, y)).collect();
        CrossedHom { table, principal: None }
    }

    pub fn pow(&self, k: i64, g: &PcGroup) -> CrossedHom {
        CrossedHom { table: self.table.iter().map(|&x| g.pow(x, k)).collect(), principal: None }
    }

    /// Order under pointwise multiplication.
    pub fn order(&self, g: &PcGroup) -> u64 {
        self.table.iter().map(|&x| g.element_order(x)).max().unwrap_or(1)
    }
}

/// Checks `f(qr) = f(q)^r f(r)` on all pairs.
pub fn verify_cocycle(m: &GModule, f: &CrossedHom) -> Result<()> {
    let qg = m.q_group();
    let g = &m.group;
    if f.table.len() as u64 != qg.order() {
        return Err(ForgeError::CocycleViolation("table has the wrong length".into()));
    }
    if let Some((q, _)) = f.table.iter().enumerate().find(|(_, &v)| !m.a.contains(v)) {
        return Err(ForgeError::CocycleViolation(format!("f({q}) is not in A")));
    }
    for q in qg.elements() {
        for r in qg.elements() {
            let lhs = f.value(qg.mul(q, r));
            let rhs = g.mul(m.act(f.value(q), r), f.value(r));
            if lhs != rhs {
                return Err(ForgeError::CocycleViolation(format!(
                    "f({}·{}) != f({})^{} f({})",
                    qg.format(q),
                    qg.format(r),
                    qg.format(q),
                    qg.format(r),
                    qg.format(r)
                )));
            }
        }
    }
    Ok(())
}

fn check_cap(m: &GModule, cap: u64) -> Result<()> {
    let size = m.q_order() * m.a.order();
    if size > cap {
        return Err(ForgeError::CapExceeded { what: "cocycle enumeration".into(), order: size, cap });
    }
    Ok(())
}

struct CocycleSolver<'m> {
    m: &'m GModule,
    /// normal-form words of the power relations, as generator index lists
    power_words: Vec<Vec<usize>>,
    conj_words: Vec<Vec<Vec<usize>>>,
}

fn nf_word(e: &[u32]) -> Vec<usize> {
    e.iter().enumerate().flat_map(|(k, &x)| std::iter::repeat_n(k, x as usize)).collect()
}

impl CocycleSolver<'_> {
    /// `F(word)` under the derivation rule `F(w q_l) = F(w)^{q_l} v_l`.
    fn eval(&self, word: &[usize], v: &[Code]) -> Code {
        let qg = self.m.q_group();
        let g = &self.m.group;
        word.iter().fold(0, |acc, &l| g.mul(self.m.act(acc, qg.gen(l)), v[l]))
    }

    fn relations_at(&self, k: usize, v: &[Code]) -> bool {
        let qg = self.m.q_group();
        let pow_lhs = vec![k; qg.rel_order(k) as usize];
        if self.eval(&pow_lhs, v) != self.eval(&self.power_words[k], v) {
            return false;
        }
        (k + 1..qg.n_gens()).all(|j| {
            let mut rhs = vec![k];
            rhs.extend_from_slice(&self.conj_words[j][k]);
            self.eval(&[j, k], v) == self.eval(&rhs, v)
        })
    }

    fn table(&self, v: &[Code]) -> Vec<Code> {
        let qg = self.m.q_group();
        let g = &self.m.group;
        let mut t = vec![0 as Code; qg.order() as usize];
        for y in 1..qg.order() as Code {
            let l = (0..qg.n_gens()).rev().find(|&k| qg.exponent_at(y, k) != 0).unwrap();
            let prev = y - qg.gen(l);
            t[y as usize] = g.mul(self.m.act(t[prev as usize], qg.gen(l)), v[l]);
        }
        t
    }

    fn descend(&self, k: usize, v: &mut Vec<Code>, a: &[Code], out: &mut Vec<Vec<Code>>) {
        for &x in a {
            v[k] = x;
            if !self.relations_at(k, v) {
                continue;
            }
            if k == 0 {
                out.push(v.clone());
            } else {
                self.descend(k - 1, v, a, out);
            }
        }
        v[k] = 0;
    }
}

/// All crossed homomorphisms `Q → A`, solved on the pc generators of `Q`
/// from the last to the first and extended by the cocycle law.
pub fn z1(m: &GModule, cap: u64) -> Result<Vec<CrossedHom>> {
    check_cap(m, cap)?;
    let qg = m.q_group();
    let n = qg.n_gens();
    if n == 0 {
        return Ok(vec![CrossedHom { table: vec![0], principal: Some(0) }]);
    }
    let pres = qg.presentation();
    let solver = CocycleSolver {
        m,
        power_words: (0..n).map(|i| nf_word(pres.power(i))).collect(),
        conj_words: (0..n).map(|j| (0..j).map(|i| nf_word(pres.conjugate(j, i))).collect()).collect(),
    };
    let a = m.a.elements();
    let mut gens = Vec::new();
    solver.descend(n - 1, &mut vec![0; n], &a, &mut gens);
    let mut out = Vec::with_capacity(gens.len());
    for v in gens {
        let f = CrossedHom { table: solver.table(&v), principal: None };
        let g = &m.group;
        for q in qg.elements() {
            for (k, &vk) in v.iter().enumerate() {
                let lhs = f.value(qg.mul(q, qg.gen(k)));
                if lhs != g.mul(m.act(f.value(q), qg.gen(k)), vk) {
                    return Err(ForgeError::CocycleViolation("solver produced a non-cocycle".into()));
                }
            }
        }
        out.push(f);
    }
    out.sort_by(|x, y| x.table.cmp(&y.table));
    Ok(out)
}

/// `f_a(q) = a^-1 a^q`.
pub fn principal(m: &GModule, a: Code) -> CrossedHom {
    let g = &m.group;
    let ainv = g.inv(a);
    let table = m.q_group().elements().map(|q| g.mul(ainv, m.act(a, q))).collect();
    CrossedHom { table, principal: Some(a) }
}

/// `B¹`, one entry per distinct table, each with a certificate.
pub fn b1(m: &GModule) -> Vec<CrossedHom> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in m.a.elements() {
        let f = principal(m, a);
        if seen.insert(f.table.clone()) {
            out.push(f);
        }
    }
    out.sort_by(|x, y| x.table.cmp(&y.table));
    out
}

/// Invariant factors of a finite abelian `p`-group from `|Ω_k|`, `k = 0, 1, ...`
/// (`Ω_k` the elements of order dividing `p^k`), stopping once the group is full.
pub fn invariants_from_omega_counts(p: u64, counts: &[u64]) -> Vec<u64> {
    // r[k] = number of cyclic factors of order >= p^k
    let mut r = Vec::new();
    for w in counts.windows(2) {
        let mut ratio = w[1] / w[0];
        let mut e = 0;
        while ratio > 1 {
            ratio /= p;
            e += 1;
        }
        r.push(e);
    }
    r.push(0);
    let mut out = Vec::new();
    for k in (0..r.len() - 1).rev() {
        for _ in 0..r[k] - r[k + 1] {
            out.push(p.pow(k as u32 + 1));
        }
    }
    out
}

/// `H¹ = Z¹/B¹` as invariant factors, by counting `f` with `f^{p^k} ∈ B¹`.
pub fn h1_from(m: &GModule, z: &[CrossedHom], b: &[CrossedHom]) -> Vec<u64> {
    let g = &m.group;
    let p = g.prime() as u64;
    let bset: HashSet<&Vec<Code>> = b.iter().map(|f| &f.table).collect();
    let total = (z.len() / b.len().max(1)) as u64;
    let mut counts = vec![1u64];
    let mut k = 1;
    while *counts.last().unwrap() < total {
        let q = p.pow(k) as i64;
        let c = z.iter().filter(|f| bset.contains(&f.pow(q, g).table)).count() / b.len();
        counts.push(c as u64);
        k += 1;
    }
    invariants_from_omega_counts(p, &counts)
}

pub fn h1(m: &GModule, cap: u64) -> Result<Vec<u64>> {
    let z = z1(m, cap)?;
    Ok(h1_from(m, &z, &b1(m)))
}

/// `g ↦ g · f(gN)`.
pub fn schmid_phi(m: &GModule, f: &CrossedHom) -> Result<Automorphism> {
    verify_cocycle(m, f)?;
    let g = &m.group;
    let images: Vec<Code> = g.gens().iter().map(|&x| g.mul(x, f.value(m.q.project(x)))).collect();
    make_automorphism(g, &images)
}

/// `C_Aut(G)(N; G/N)` by direct search.
pub fn c_aut_slice(g: &PcGroup, n: &Subgroup, cap: u64) -> Result<Vec<Automorphism>> {
    let spec = SearchSpec { fix: Some(n.clone()), coset: Some(n.clone()), order_p: false };
    crate::autos::search_automorphisms(g, &spec, cap)
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleSummary {
    pub normal: SubgroupSummary,
    pub a_invariants: Vec<u64>,
    pub q_order: u64,
    pub matrices: Vec<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub module: ModuleSummary,
    pub fixed_points: u64,
    pub trace_image: u64,
    pub z1_order: usize,
    pub b1_order: usize,
    pub h0: Vec<u64>,
    pub h1: Vec<u64>,
}

pub fn summarize(m: &GModule) -> ModuleSummary {
    ModuleSummary {
        normal: SubgroupSummary::of(&m.n),
        a_invariants: m.a_invariants(),
        q_order: m.q_order(),
        matrices: m.matrices.clone(),
    }
}

pub fn cohomology_report(g: &PcGroup, n: &Subgroup, cap: u64) -> Result<CohomologyReport> {
    let m = module_of(g, n)?;
    let z = z1(&m, cap)?;
    let b = b1(&m);
    Ok(CohomologyReport {
        module: summarize(&m),
        fixed_points: fixed_points(&m).order(),
        trace_image: trace_image(&m).order(),
        z1_order: z.len(),
        b1_order: b.len(),
        h0: h0(&m),
        h1: h1_from(&m, &z, &b),
    })
}
