//! Norm-element identities and the cohomological nonvanishing checks.

use serde::Serialize;

use super::{b1, h0, h1_from, module_of, schmid_phi, z1, CrossedHom, GModule};
use crate::autos::{self, AutWitness};
use crate::error::{ForgeError, Result};
use crate::pc::{enumerate_normal_subgroups, enumerate_subgroups, Code, PcGroup, Subgroup};
use crate::structure;

/// `a^{g^{n-1}} ... a^g a`.
pub fn norm_element(g: &PcGroup, a: Code, x: Code, n: u32) -> Code {
    let mut acc = 0;
    for i in (0..n).rev() {
        acc = g.mul(acc, g.conj(a, g.pow(x, i as i64)));
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LemmaCase {
    /// `p` odd, `G/Z(G)` `p`-central
    PCentralQuotient,
    /// `p` odd, class at most 3
    OddClassThree,
    /// `p = 2`, class at most 3
    TwoClassThree,
    /// class at most 2
    ClassTwo,
}

impl LemmaCase {
    pub const ALL: [LemmaCase; 4] =
        [LemmaCase::PCentralQuotient, LemmaCase::OddClassThree, LemmaCase::TwoClassThree, LemmaCase::ClassTwo];

    fn unmet(self, g: &PcGroup) -> Option<String> {
        let p = g.prime();
        let c = structure::nilpotency_class(g);
        match self {
            LemmaCase::PCentralQuotient if p == 2 => Some("p = 2".into()),
            LemmaCase::PCentralQuotient => (!structure::is_p_central(structure::central_quotient(g).group()))
                .then(|| "G/Z(G) is not p-central".into()),
            LemmaCase::OddClassThree if p == 2 => Some("p = 2".into()),
            LemmaCase::TwoClassThree if p != 2 => Some("p is odd".into()),
            LemmaCase::OddClassThree | LemmaCase::TwoClassThree => (c > 3).then(|| format!("class {c} exceeds 3")),
            LemmaCase::ClassTwo => (c > 2).then(|| format!("class {c} exceeds 2")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub case: LemmaCase,
    pub group: String,
    pub skipped: Option<String>,
    pub subgroups: usize,
    pub tuples: u64,
    pub counterexamples: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.skipped.is_none() && self.counterexamples.is_empty()
    }
}

fn coset_reps(s: &Subgroup) -> Vec<Code> {
    s.group().elements().filter(|&x| s.coset_rep(x) == x).collect()
}

/// Exhaustive sweep of the norm-element identity for one case. Elements
/// acting on `A` are taken modulo `C_G(A)`, on which the identity only
/// depends.
pub fn lemma31_34_check(g: &PcGroup, case: LemmaCase, cap: u64) -> Result<SweepReport> {
    let mut report = SweepReport {
        case,
        group: g.name().to_string(),
        skipped: case.unmet(g),
        subgroups: 0,
        tuples: 0,
        counterexamples: Vec::new(),
    };
    if report.skipped.is_some() {
        return Ok(report);
    }
    let z = structure::center(g);
    let p = g.prime();
    let exact = case == LemmaCase::PCentralQuotient && p > 3;
    let bad = |report: &mut SweepReport, msg: String| {
        if report.counterexamples.len() < 16 {
            report.counterexamples.push(msg);
        }
    };
    if case == LemmaCase::ClassTwo {
        for y in g.elements() {
            for x in g.elements() {
                for n in 1..=2 * p {
                    report.tuples += 1;
                    let d = g.mul(norm_element(g, y, x, n), g.pow(y, -(n as i64)));
                    if !z.contains(d) {
                        bad(&mut report, format!("y={} x={} n={n}: defect {}", g.format(y), g.format(x), g.format(d)));
                    }
                }
            }
        }
        return Ok(report);
    }
    let normals: Vec<Subgroup> = enumerate_normal_subgroups(g, cap)?.into_iter().filter(|s| s.is_abelian()).collect();
    report.subgroups = normals.len();
    for a_sub in &normals {
        let c = structure::centralizer(g, a_sub);
        let reps = coset_reps(&c);
        let elems = a_sub.elements();
        if case == LemmaCase::TwoClassThree {
            let adm: Vec<Code> = reps.iter().copied().filter(|&x| c.contains(g.pow(x, 2))).collect();
            for &x in &adm {
                for &y in &adm {
                    let xy = g.mul(x, y);
                    if !c.contains(g.pow(xy, 2)) {
                        continue;
                    }
                    for &a in &elems {
                        report.tuples += 1;
                        let norm =
                            [g.conj(a, xy), g.conj(a, y), g.conj(a, x), a].iter().fold(0, |acc, &t| g.mul(acc, t));
                        let d = g.mul(norm, g.pow(a, -4));
                        if !z.contains(d) {
                            bad(
                                &mut report,
                                format!(
                                    "A={} a={} x={} y={}: defect {}",
                                    a_sub.describe().join(","),
                                    g.format(a),
                                    g.format(x),
                                    g.format(y),
                                    g.format(d)
                                ),
                            );
                        }
                    }
                }
            }
            continue;
        }
        for &x in reps.iter().filter(|&&x| c.contains(g.pow(x, p as i64))) {
            for &a in &elems {
                report.tuples += 1;
                let d = g.mul(norm_element(g, a, x, p), g.pow(a, -(p as i64)));
                let ok = if exact { d == 0 } else { z.contains(d) };
                if !ok {
                    bad(
                        &mut report,
                        format!(
                            "A={} a={} g={}: defect {}",
                            a_sub.describe().join(","),
                            g.format(a),
                            g.format(x),
                            g.format(d)
                        ),
                    );
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop35Report {
    pub h0: Vec<u64>,
    pub skipped: Option<String>,
    pub subgroups: usize,
    pub failures: Vec<String>,
}

impl Prop35Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// When `H⁰ = 0`, checks `C_Q(A_H) = H` for every `H ≤ Q`.
pub fn prop35_check(m: &GModule, cap: u64) -> Result<Prop35Report> {
    let h = h0(m);
    let mut report = Prop35Report { h0: h.clone(), skipped: None, subgroups: 0, failures: Vec::new() };
    if !h.is_empty() {
        report.skipped = Some("not cohomologically trivial".into());
        return Ok(report);
    }
    let qg = m.q_group();
    let a = m.elements_of_a();
    for hs in enumerate_subgroups(qg, cap, false)? {
        report.subgroups += 1;
        let a_h: Vec<Code> = a.iter().copied().filter(|&x| hs.gens().iter().all(|&q| m.act(x, q) == x)).collect();
        let cent: Vec<Code> = qg.elements().filter(|&q| a_h.iter().all(|&x| m.act(x, q) == x)).collect();
        let cent = Subgroup::closure(qg, &cent);
        if cent != hs {
            report.failures.push(format!("H={}: C_Q(A_H)={}", hs.describe().join(","), cent.describe().join(",")));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm36Report {
    pub skipped: Option<String>,
    pub h0: Vec<u64>,
    pub h1: Vec<u64>,
    pub z1_order: usize,
    pub b1_order: usize,
}

impl Thm36Report {
    /// Both groups nonzero.
    pub fn holds(&self) -> bool {
        self.skipped.is_none() && !self.h0.is_empty() && !self.h1.is_empty()
    }
}

fn thm36_unmet(g: &PcGroup, n: &Subgroup) -> Option<String> {
    if n.is_trivial() {
        return Some("N is trivial".into());
    }
    let q = crate::pc::QuotientGroup::new(g, n).ok()?;
    if structure::rank_d(q.group()) <= 1 {
        return Some("G/N is cyclic".into());
    }
    if structure::nilpotency_class(g) <= 2 {
        return None;
    }
    if g.prime() == 2 {
        return Some("p = 2 and class exceeds 2".into());
    }
    let gz = structure::central_quotient(g);
    let gz = gz.group();
    if structure::nilpotency_class(gz) <= 2 || structure::is_p_central(gz) {
        None
    } else {
        Some("G/Z(G) has class above 2 and is not p-central".into())
    }
}

pub fn thm36_check(g: &PcGroup, n: &Subgroup, cap: u64) -> Result<Thm36Report> {
    if !n.is_normal() {
        return Err(ForgeError::NotNormal);
    }
    if let Some(reason) = thm36_unmet(g, n) {
        return Ok(Thm36Report { skipped: Some(reason), h0: vec![], h1: vec![], z1_order: 0, b1_order: 0 });
    }
    let m = module_of(g, n)?;
    let z = z1(&m, cap)?;
    let b = b1(&m);
    Ok(Thm36Report { skipped: None, h0: h0(&m), h1: h1_from(&m, &z, &b), z1_order: z.len(), b1_order: b.len() })
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition3Report {
    /// Some order-`p` cocycle lies outside `B¹`.
    pub holds: bool,
    /// `C_G(N) = Z(N)`
    pub self_centralizing: bool,
    pub witness: Option<AutWitness>,
}

fn nonprincipal_order_p(m: &GModule, z: &[CrossedHom], b: &[CrossedHom]) -> Option<CrossedHom> {
    let g = m.group();
    let p = g.prime() as u64;
    let bset: std::collections::HashSet<&Vec<Code>> = b.iter().map(|f| &f.table).collect();
    z.iter().find(|f| f.order(g) == p && !bset.contains(&f.table)).cloned()
}

pub fn condition3_check(g: &PcGroup, n: &Subgroup, cap: u64) -> Result<Condition3Report> {
    let m = module_of(g, n)?;
    let z = z1(&m, cap)?;
    let b = b1(&m);
    let self_centralizing = structure::centralizer(g, n) == *m.a();
    let f = nonprincipal_order_p(&m, &z, &b);
    let witness = match &f {
        Some(f) => Some(AutWitness::certify(&schmid_phi(&m, f)?, n, "N", "cocycle")?),
        None => None,
    };
    if let Some(w) = &witness {
        if self_centralizing && (w.inner || w.order != g.prime() as u64) {
            return Err(ForgeError::InvalidAutomorphism("cocycle image should be noninner of order p".into()));
        }
    }
    Ok(Condition3Report { holds: f.is_some(), self_centralizing, witness })
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma37Report {
    pub skipped: Option<String>,
    pub z1_order: usize,
    pub exponent: u64,
}

impl Lemma37Report {
    pub fn passed(&self, p: u64) -> bool {
        self.skipped.is_none() && self.exponent <= p
    }
}

/// Exponent of `Z¹(G/Φ, Z(Φ))` under pointwise multiplication.
pub fn lemma37_check(g: &PcGroup, cap: u64) -> Result<Lemma37Report> {
    let skipped = if g.prime() == 2 {
        Some("p = 2".to_string())
    } else if !structure::is_p_central(structure::central_quotient(g).group()) {
        Some("G/Z(G) is not p-central".to_string())
    } else {
        None
    };
    if skipped.is_some() {
        return Ok(Lemma37Report { skipped, z1_order: 0, exponent: 0 });
    }
    let m = module_of(g, &structure::frattini(g))?;
    let z = z1(&m, cap)?;
    let exponent = z.iter().map(|f| f.order(g)).max().unwrap_or(1);
    Ok(Lemma37Report { skipped: None, z1_order: z.len(), exponent })
}

/// Noninner automorphism of order `p` fixing `Φ(G)` through a cocycle in
/// `Z¹(G/Φ, Z(Φ))` outside `B¹`. Groups outside the self-centralizing
/// reduction go through the direct construction instead.
pub fn second_proof_pipeline(g: &PcGroup, cap: u64) -> Result<AutWitness> {
    if g.prime() == 2 {
        return Err(ForgeError::HypothesesUnmet("p = 2".into()));
    }
    if structure::is_abelian(g) {
        return Err(ForgeError::HypothesesUnmet("G is abelian".into()));
    }
    if !structure::is_powerful(structure::central_quotient(g).group()) {
        return Err(ForgeError::HypothesesUnmet("G/Z(G) is not powerful".into()));
    }
    let phi = structure::frattini(g);
    let zphi = structure::center_of(&phi);
    let reduced =
        structure::is_p_central(structure::central_quotient(g).group()) && structure::centralizer(g, &phi) == zphi;
    if !reduced {
        let mut w = autos::thm26_construct(g, cap)?;
        w.path = format!("fallback:{}", w.path);
        return Ok(w);
    }
    let report = thm36_check(g, &phi, super::COHOMOLOGY_CAP)?;
    if !report.holds() {
        return Err(ForgeError::NoWitness(format!("H^1 vanishes on {}", g.name())));
    }
    let m = module_of(g, &phi)?;
    let z = z1(&m, super::COHOMOLOGY_CAP)?;
    let b = b1(&m);
    let f = nonprincipal_order_p(&m, &z, &b)
        .ok_or_else(|| ForgeError::NoWitness("no order-p cocycle outside B^1".into()))?;
    let w = AutWitness::certify(&schmid_phi(&m, &f)?, &phi, "frattini", "cocycle")?;
    if !w.is_noninner_of_order(g.prime() as u64) {
        return Err(ForgeError::NoWitness("cocycle image is inner".into()));
    }
    Ok(w)
}
