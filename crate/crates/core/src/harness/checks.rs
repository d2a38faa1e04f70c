use std::collections::HashSet;

use serde::Serialize;

use super::{Caps, CheckSpec, Verdict};
use crate::autos::{
    self, first_noninner_order_p_fixing, lemma21_alpha, lemma21_witness_scan, lemma22_c_group, liebeck_sigma,
    thm26_construct, AutWitness, Automorphism,
};
use crate::cohomology::{
    self, b1, condition3_check, h0, h1_from, lemma31_34_check, lemma37_check, module_of, prop35_check, schmid_phi,
    second_proof_pipeline, z1, LemmaCase,
};
use crate::corpus::{g64, liebeck128};
use crate::error::Result;
use crate::pc::{enumerate_normal_subgroups, Code, PcGroup, QuotientGroup, Subgroup};
use crate::structure;

pub static REGISTRY: &[CheckSpec] = &[
    CheckSpec {
        id: "lemma-2.1",
        summary: "z in Ω₁(Z(G)) outside [Z(M),g] gives a noninner order-p map fixing M",
        run: lemma21,
    },
    CheckSpec {
        id: "lemma-2.2",
        summary: "central automorphisms trivial on Ω₁(Z(G)) match Hom(G/Ω₁(Z(G)), Ω₁(Z(G)))",
        run: lemma22,
    },
    CheckSpec { id: "cor-2.3", summary: "d(Z₂/Z) = d(Z)·d(G) or a noninner witness fixing Φ", run: cor23 },
    CheckSpec { id: "cor-2.4", summary: "coclass 1 groups have a noninner witness fixing Φ", run: cor24 },
    CheckSpec { id: "thm-2.5", summary: "d(Z)(d(G)+1) ≤ cc+1 or a noninner witness fixing Φ", run: thm25 },
    CheckSpec { id: "thm-2.6", summary: "G/Z(G) powerful gives a certified noninner witness", run: thm26 },
    CheckSpec { id: "lemma-2.8", summary: "2-generated class 2: Z = <a^k, b^k, [a,b]>", run: lemma28 },
    CheckSpec { id: "thm-2.9", summary: "class 3, d(G/Z) = 2, Z noncyclic: noninner witness fixing Φ", run: thm29 },
    CheckSpec { id: "lemma-3.1", summary: "norm identity, p odd, G/Z(G) p-central", run: lemma31 },
    CheckSpec { id: "lemma-3.2", summary: "norm identity, p odd, class at most 3", run: lemma32 },
    CheckSpec { id: "lemma-3.3", summary: "norm identity, p = 2, class at most 3", run: lemma33 },
    CheckSpec { id: "lemma-3.4", summary: "norm identity, class at most 2", run: lemma34 },
    CheckSpec { id: "prop-3.5", summary: "cohomologically trivial modules: C_Q(A_H) = H", run: prop35 },
    CheckSpec { id: "thm-3.6", summary: "H⁰ and H¹ of G/N on Z(N) are nonzero", run: thm36 },
    CheckSpec { id: "lemma-3.7", summary: "Z¹(G/Φ, Z(Φ)) is elementary abelian", run: lemma37 },
    CheckSpec { id: "prop-1.3", summary: "Z¹(G/N, Z(N)) ≅ C_Aut(G)(N; G/N)", run: prop13 },
    CheckSpec { id: "prop-1.4", summary: "C_G(N) = Z(N) and H¹ ≠ 0 give noninner maps", run: prop14 },
    CheckSpec { id: "second-proof", summary: "cocycle route to a noninner witness fixing Φ", run: second_proof },
    CheckSpec { id: "example-g64", summary: "order-2 maps fixing Φ of G64 are inner", run: example_g64 },
    CheckSpec { id: "example-l128", summary: "order-2 maps fixing Φ of L128 are the σ maps", run: example_l128 },
    CheckSpec {
        id: "example-metacyclic",
        summary: "metacyclic order, exponent, center, G/G'",
        run: example_metacyclic,
    },
];

fn frattini_witness(g: &PcGroup, caps: &Caps) -> Result<Option<AutWitness>> {
    first_noninner_order_p_fixing(g, &structure::frattini(g), "frattini", caps.search)
}

/// Structural claim, else the search must produce a witness.
fn claim_or_witness(g: &PcGroup, caps: &Caps, holds: bool, claim: String) -> Result<Verdict> {
    if holds {
        return Ok(Verdict::pass(claim));
    }
    Ok(match frattini_witness(g, caps)? {
        Some(w) => Verdict::pass_with(format!("{claim} fails; noninner witness found"), w),
        None => Verdict::fail(format!("{claim} fails and no noninner order-p map fixes Φ(G)")),
    })
}

fn non_abelian(g: &PcGroup) -> Option<Verdict> {
    structure::is_abelian(g).then(|| Verdict::skip("G is abelian"))
}

fn lemma21(g: &PcGroup, _: &Caps) -> Result<Verdict> {
    if let Some(v) = non_abelian(g) {
        return Ok(v);
    }
    let p = g.prime() as u64;
    let phi = structure::frattini(g);
    let triples = lemma21_witness_scan(g)?;
    let mut first = None;
    for t in &triples {
        let a = lemma21_alpha(g, &t.m, t.g, t.z)?;
        let w = AutWitness::certify(&a, &t.m, "maximal", "lemma-2.1")?;
        if !w.is_noninner_of_order(p) || !a.fixes_pointwise(&phi) {
            return Ok(Verdict::fail(format!(
                "M={} g={} z={}: order {}, inner {}",
                t.m.describe().join(","),
                g.format(t.g),
                g.format(t.z),
                w.order,
                w.inner
            )));
        }
        first.get_or_insert(w);
    }
    if let Some(w) = first {
        return Ok(Verdict::pass_with(format!("{} noninner triples", triples.len()), w));
    }
    // no triple: the inclusion must hold for every M and every g outside M
    let omega = structure::omega1(&structure::center(g))?;
    for m in structure::maximal_subgroups(g) {
        let zm = structure::center_of(&m);
        for x in g.elements().filter(|&x| !m.contains(x)) {
            let img = structure::commutator_image_subgroup(&zm, x)?;
            if !omega.is_subgroup_of(&img) && omega.is_subgroup_of(&m) {
                return Ok(Verdict::fail(format!("M={} g={}", m.describe().join(","), g.format(x))));
            }
        }
    }
    if !omega.is_subgroup_of(&structure::derived_subgroup(g)) {
        return Ok(Verdict::fail("Ω₁(Z(G)) is not contained in G'"));
    }
    Ok(Verdict::pass("Ω₁(Z(G)) ≤ [Z(M),g] for every maximal M and g ∉ M"))
}

fn lemma22(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    let (_, report) = lemma22_c_group(g, caps.search)?;
    Ok(if report.consistent() {
        Verdict::pass_with(format!("|C| = {}", report.c_order), report)
    } else {
        Verdict::Fail { counterexample: format!("{report:?}"), witness: serde_json::to_value(&report).ok() }
    })
}

fn cor23(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    if let Some(v) = non_abelian(g) {
        return Ok(v);
    }
    let series = structure::upper_central_series(g);
    let lhs = structure::section_invariants(&series[2], &series[1])?.len();
    let dz = structure::abelian_invariants(&series[1])?.len();
    let rhs = dz * structure::rank_d(g) as usize;
    claim_or_witness(g, caps, lhs == rhs, format!("d(Z₂/Z) = {lhs}, d(Z)·d(G) = {rhs}: equality"))
}

fn cor24(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    if let Some(v) = non_abelian(g) {
        return Ok(v);
    }
    if structure::coclass(g).ok() != Some(1) {
        return Ok(Verdict::skip("coclass is not 1"));
    }
    let series = structure::upper_central_series(g);
    let z2z = series[2].order() / series[1].order();
    let d = structure::rank_d(g);
    // at order p^3 the second center is all of G
    let expected = if g.log_order() == 3 { g.order() / series[1].order() } else { g.prime() as u64 };
    if z2z != expected || d != 2 {
        return Ok(Verdict::fail(format!("|Z₂/Z| = {z2z}, d(G) = {d}")));
    }
    Ok(match frattini_witness(g, caps)? {
        Some(w) => Verdict::pass_with(format!("|Z₂/Z| = {z2z}, d(G) = 2; noninner witness fixing Φ(G)"), w),
        None => Verdict::fail("no noninner order-p map fixes Φ(G)"),
    })
}

fn thm25(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    if let Some(v) = non_abelian(g) {
        return Ok(v);
    }
    let c = structure::coclass(g)?;
    let l = structure::abelian_invariants(&structure::center(g))?.len() as u32;
    let d = structure::rank_d(g);
    claim_or_witness(g, caps, l * (d + 1) <= c + 1, format!("d(Z)(d+1) = {} ≤ cc+1 = {}", l * (d + 1), c + 1))
}

fn thm26(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    if let Some(v) = non_abelian(g) {
        return Ok(v);
    }
    if !structure::is_powerful(structure::central_quotient(g).group()) {
        return Ok(Verdict::skip("G/Z(G) is not powerful"));
    }
    let w = thm26_construct(g, caps.search)?;
    let cyclic_center = structure::abelian_invariants(&structure::center(g))?.len() <= 1;
    let fix_ok = w.fixed == "frattini" || (g.prime() == 2 && cyclic_center && w.fixed == "omega1-center");
    if !w.is_noninner_of_order(g.prime() as u64) || !fix_ok {
        return Ok(Verdict::Fail {
            counterexample: format!("witness via {} fixes {}, inner {}", w.path, w.fixed, w.inner),
            witness: serde_json::to_value(&w).ok(),
        });
    }
    Ok(Verdict::pass_with(format!("{} fixing {}", w.path, w.fixed), w))
}

/// Lifts of a basis of `G/Φ(G)`.
fn generating_pair(g: &PcGroup) -> (Code, Code) {
    let phi = structure::frattini(g);
    let a = g.gens().into_iter().find(|&x| !phi.contains(x)).unwrap();
    let pa = phi.join_elements(&[a]);
    let b = g.gens().into_iter().find(|&x| !pa.contains(x)).unwrap();
    (a, b)
}

#[derive(Serialize)]
struct CenterWords {
    group: String,
    k: u64,
    center_order: u64,
    d_center: usize,
}

fn lemma28_on(x: &PcGroup, label: &str) -> Result<Verdict> {
    let (a, b) = generating_pair(x);
    let c = x.comm(a, b);
    let k = x.element_order(c) as i64;
    let span = Subgroup::closure(x, &[x.pow(a, k), x.pow(b, k), c]);
    let z = structure::center(x);
    let dz = structure::abelian_invariants(&z)?.len();
    let words = CenterWords { group: x.name().to_string(), k: k as u64, center_order: z.order(), d_center: dz };
    if span != z || dz > 3 {
        return Ok(Verdict::Fail {
            counterexample: format!("<a^k, b^k, [a,b]> has order {}, Z has order {}", span.order(), z.order()),
            witness: serde_json::to_value(&words).ok(),
        });
    }
    Ok(Verdict::pass_with(format!("Z({label}) = <a^{k}, b^{k}, [a,b]>, d(Z) = {dz}"), words))
}

fn lemma28(g: &PcGroup, _: &Caps) -> Result<Verdict> {
    if structure::nilpotency_class(g) <= 2 && structure::rank_d(g) == 2 {
        return lemma28_on(g, "G");
    }
    let gz = structure::central_quotient(g);
    let q = gz.group();
    if structure::nilpotency_class(q) == 2 && structure::rank_d(q) == 2 {
        return lemma28_on(q, "G/Z(G)");
    }
    Ok(Verdict::skip("neither G nor G/Z(G) is 2-generated of class at most 2"))
}

fn thm29(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    if structure::nilpotency_class(g) != 3 {
        return Ok(Verdict::skip("class is not 3"));
    }
    let gz = structure::central_quotient(g);
    if structure::rank_d(gz.group()) != 2 {
        return Ok(Verdict::skip("G/Z(G) is not 2-generated"));
    }
    if structure::abelian_invariants(&structure::center(g))?.len() <= 1 {
        return Ok(Verdict::skip("Z(G) is cyclic"));
    }
    let dzz = structure::abelian_invariants(&structure::center(gz.group()))?.len();
    if dzz > 3 {
        return Ok(Verdict::fail(format!("d(Z(G/Z(G))) = {dzz} exceeds 3")));
    }
    Ok(match frattini_witness(g, caps)? {
        Some(w) => Verdict::pass_with(format!("d(Z(G/Z(G))) = {dzz}; noninner witness fixing Φ(G)"), w),
        None => Verdict::fail("no noninner order-p map fixes Φ(G)"),
    })
}

fn sweep(g: &PcGroup, caps: &Caps, case: LemmaCase) -> Result<Verdict> {
    let r = lemma31_34_check(g, case, caps.enumeration)?;
    Ok(if let Some(reason) = r.skipped {
        Verdict::skip(reason)
    } else if r.counterexamples.is_empty() && case == LemmaCase::ClassTwo {
        Verdict::pass(format!("{} (y, x, n) triples", r.tuples))
    } else if r.counterexamples.is_empty() {
        Verdict::pass(format!("{} tuples over {} abelian normal subgroups", r.tuples, r.subgroups))
    } else {
        Verdict::fail(r.counterexamples.join("; "))
    })
}

fn lemma31(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    sweep(g, caps, LemmaCase::PCentralQuotient)
}

fn lemma32(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    sweep(g, caps, LemmaCase::OddClassThree)
}

fn lemma33(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    sweep(g, caps, LemmaCase::TwoClassThree)
}

fn lemma34(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    sweep(g, caps, LemmaCase::ClassTwo)
}

fn nontrivial_normals(g: &PcGroup, caps: &Caps) -> Result<Vec<Subgroup>> {
    Ok(enumerate_normal_subgroups(g, caps.enumeration)?.into_iter().filter(|n| !n.is_trivial()).collect())
}

fn prop35(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    let mut checked = 0;
    for n in nontrivial_normals(g, caps)? {
        let m = module_of(g, &n)?;
        let r = prop35_check(&m, caps.enumeration)?;
        if r.skipped.is_some() {
            continue;
        }
        checked += 1;
        if !r.passed() {
            return Ok(Verdict::fail(format!("N={}: {}", n.describe().join(","), r.failures.join("; "))));
        }
    }
    Ok(if checked == 0 {
        Verdict::skip("no normal subgroup gives a cohomologically trivial module")
    } else {
        Verdict::pass(format!("{checked} cohomologically trivial modules"))
    })
}

#[derive(Serialize)]
struct ModuleRow {
    normal: Vec<String>,
    quotient_cyclic: bool,
    h0: Vec<u64>,
    h1: Vec<u64>,
}

/// Group-level gate: class at most 2, or p odd with `G/Z(G)` of class at most 2 or p-central.
fn thm36_group_gate(g: &PcGroup) -> Option<String> {
    if structure::nilpotency_class(g) <= 2 {
        return None;
    }
    if g.prime() == 2 {
        return Some("p = 2 and class exceeds 2".into());
    }
    let gz = structure::central_quotient(g);
    let q = gz.group();
    (structure::nilpotency_class(q) > 2 && !structure::is_p_central(q))
        .then(|| "G/Z(G) has class above 2 and is not p-central".into())
}

fn thm36(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    if let Some(reason) = thm36_group_gate(g) {
        return Ok(Verdict::skip(reason));
    }
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for n in nontrivial_normals(g, caps)? {
        let m = module_of(g, &n)?;
        let z = z1(&m, caps.cohomology)?;
        let b = b1(&m);
        let row = ModuleRow {
            normal: n.describe(),
            quotient_cyclic: structure::rank_d(m.q_group()) <= 1,
            h0: h0(&m),
            h1: h1_from(&m, &z, &b),
        };
        if row.h0.is_empty() != row.h1.is_empty() {
            bad.push(format!("N={}: H⁰ = {:?} but H¹ = {:?}", row.normal.join(","), row.h0, row.h1));
        }
        if !row.quotient_cyclic && (row.h0.is_empty() || row.h1.is_empty()) {
            bad.push(format!("N={}: H⁰ = {:?}, H¹ = {:?}", row.normal.join(","), row.h0, row.h1));
        }
        rows.push(row);
    }
    let noncyclic = rows.iter().filter(|r| !r.quotient_cyclic).count();
    Ok(if bad.is_empty() {
        Verdict::pass_with(format!("{} normal subgroups, {noncyclic} with noncyclic quotient", rows.len()), rows)
    } else {
        Verdict::Fail { counterexample: bad.join("; "), witness: serde_json::to_value(&rows).ok() }
    })
}

fn lemma37(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    let r = lemma37_check(g, caps.cohomology)?;
    Ok(if let Some(reason) = r.skipped {
        Verdict::skip(reason)
    } else if r.passed(g.prime() as u64) {
        Verdict::pass(format!("|Z¹| = {}, exponent {}", r.z1_order, r.exponent))
    } else {
        Verdict::fail(format!("Z¹ has exponent {}", r.exponent))
    })
}

fn prop13(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    if g.order() > caps.search {
        return Err(crate::ForgeError::CapExceeded {
            what: "automorphism search".into(),
            order: g.order(),
            cap: caps.search,
        });
    }
    let normals = enumerate_normal_subgroups(g, caps.enumeration)?;
    for n in &normals {
        let label = n.describe().join(",");
        let m = module_of(g, n)?;
        let z = z1(&m, caps.cohomology)?;
        let slice = cohomology::c_aut_slice(g, n, caps.search)?;
        let mut images: Vec<Automorphism> = z.iter().map(|f| schmid_phi(&m, f)).collect::<Result<_>>()?;
        images.sort_by_key(|a| a.image_exponents());
        let distinct = {
            let mut v = images.clone();
            v.dedup();
            v.len()
        };
        if distinct != z.len() || images != slice {
            return Ok(Verdict::fail(format!(
                "N={label}: |Z¹| = {}, |φ(Z¹)| = {distinct}, |C_Aut(G)(N; G/N)| = {}",
                z.len(),
                slice.len()
            )));
        }
        let from_b1: HashSet<Vec<Code>> =
            b1(&m).iter().map(|f| schmid_phi(&m, f).map(|a| a.images().to_vec())).collect::<Result<_>>()?;
        let conj: HashSet<Vec<Code>> =
            m.a().elements().iter().map(|&t| Automorphism::conjugation(g, t).images().to_vec()).collect();
        if from_b1 != conj {
            return Ok(Verdict::fail(format!("N={label}: φ(B¹) differs from conjugations by Z(N)")));
        }
        if z.len() <= 64 {
            for f1 in &z {
                for f2 in &z {
                    let lhs = schmid_phi(&m, &f1.mul(f2, g))?;
                    let rhs = schmid_phi(&m, f1)?.compose(&schmid_phi(&m, f2)?);
                    if lhs != rhs {
                        return Ok(Verdict::fail(format!("N={label}: φ is not multiplicative")));
                    }
                }
            }
        }
    }
    Ok(Verdict::pass(format!("bijection on {} normal subgroups", normals.len())))
}

fn prop14(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    let mut applicable = 0;
    let mut first = None;
    for n in nontrivial_normals(g, caps)? {
        if structure::centralizer(g, &n) != structure::center_of(&n) {
            continue;
        }
        let m = module_of(g, &n)?;
        let z = z1(&m, caps.cohomology)?;
        let b = b1(&m);
        if h1_from(&m, &z, &b).is_empty() {
            continue;
        }
        applicable += 1;
        let label = n.describe().join(",");
        let mut noninner = false;
        for f in &z {
            if schmid_phi(&m, f)?.is_inner().is_none() {
                noninner = true;
                break;
            }
        }
        if !noninner {
            return Ok(Verdict::fail(format!("N={label}: every φ(f) is inner")));
        }
        let c3 = condition3_check(g, &n, caps.cohomology)?;
        if let Some(w) = c3.witness {
            if !w.is_noninner_of_order(g.prime() as u64) {
                return Ok(Verdict::fail(format!("N={label}: order-p cocycle outside B¹ gives an inner map")));
            }
            first.get_or_insert(w);
        }
    }
    Ok(match (applicable, first) {
        (0, _) => Verdict::skip("no normal N with C_G(N) = Z(N) and H¹ ≠ 0"),
        (k, Some(w)) => Verdict::pass_with(format!("{k} self-centralizing normal subgroups"), w),
        (k, None) => Verdict::pass(format!("{k} self-centralizing normal subgroups")),
    })
}

fn second_proof(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    if g.prime() == 2 {
        return Ok(Verdict::skip("p = 2"));
    }
    if let Some(v) = non_abelian(g) {
        return Ok(v);
    }
    if !structure::is_powerful(structure::central_quotient(g).group()) {
        return Ok(Verdict::skip("G/Z(G) is not powerful"));
    }
    let w = second_proof_pipeline(g, caps.search)?;
    let direct = thm26_construct(g, caps.search)?;
    let p = g.prime() as u64;
    if !w.is_noninner_of_order(p) || w.fixed != "frattini" || !direct.is_noninner_of_order(p) {
        return Ok(Verdict::fail(format!("witness via {} is not a noninner order-p map fixing Φ(G)", w.path)));
    }
    Ok(Verdict::pass_with(format!("witness via {}", w.path), w))
}

fn same_presentation(g: &PcGroup, h: Result<PcGroup>) -> bool {
    h.map(|h| h.presentation() == g.presentation()).unwrap_or(false)
}

fn example_g64(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    if !same_presentation(g, g64()) {
        return Ok(Verdict::skip("not the order-64 example"));
    }
    let phi = structure::frattini(g);
    let all = autos::brute_force_order_p_fixing(g, &phi, "frattini", caps.search)?;
    Ok(match all.iter().find(|w| !w.inner) {
        Some(w) => Verdict::Fail {
            counterexample: format!("noninner order-2 map {:?}", w.images),
            witness: serde_json::to_value(w).ok(),
        },
        None => Verdict::pass(format!("all {} order-2 maps fixing Φ(G) are inner", all.len())),
    })
}

fn example_l128(g: &PcGroup, caps: &Caps) -> Result<Verdict> {
    if !same_presentation(g, liebeck128()) {
        return Ok(Verdict::skip("not the order-128 example"));
    }
    let phi = structure::frattini(g);
    let all = autos::brute_force_order_p_fixing(g, &phi, "frattini", caps.search)?;
    let mut found: Vec<Vec<Code>> = all.iter().map(|w| w.automorphism.images().to_vec()).collect();
    let mut sigma: Vec<Vec<Code>> = [(1, 0), (0, 1), (1, 1)]
        .iter()
        .map(|&(r, s)| liebeck_sigma(g, r, s).map(|a| a.images().to_vec()))
        .collect::<Result<_>>()?;
    found.sort();
    sigma.sort();
    if found != sigma {
        return Ok(Verdict::fail(format!("{} order-2 maps fixing Φ(G), expected the 3 σ maps", found.len())));
    }
    if let Some(w) = all.iter().find(|w| !w.inner) {
        return Ok(Verdict::fail(format!("σ map {:?} is noninner", w.images)));
    }
    Ok(Verdict::pass("order-2 maps fixing Φ(G) are exactly σ(1,0), σ(0,1), σ(1,1), all inner"))
}

#[derive(Serialize)]
struct MetacyclicRow {
    params: (u32, u32, u32),
    order: (u64, u64),
    exponent: (u64, u64),
    order_a: (u64, u64),
    order_b: (u64, u64),
    center_matches: bool,
    abelianization: (Vec<u64>, Vec<u64>),
    central_quotient_powerful: bool,
}

fn example_metacyclic(g: &PcGroup, _: &Caps) -> Result<Verdict> {
    let Some((a, b, r, s, t)) = autos::constructions::recognize_metacyclic(g) else {
        return Ok(Verdict::skip("not a metacyclic group of the family"));
    };
    let k = 1i64 << s;
    let z = Subgroup::closure(g, &[g.pow(a, k), g.pow(b, k)]);
    let q = QuotientGroup::new(g, &structure::derived_subgroup(g))?;
    let mut want_ab = vec![1u64 << r, 1u64 << t];
    want_ab.sort_unstable_by(|x, y| y.cmp(x));
    let row = MetacyclicRow {
        params: (r, s, t),
        order: (g.order(), 1 << (r + s + t)),
        exponent: (structure::exponent(g), 1 << (r + t)),
        order_a: (g.element_order(a), 1 << (r + t)),
        order_b: (g.element_order(b), 1 << (s + t)),
        center_matches: structure::center(g) == z,
        abelianization: (structure::abelian_invariants(&Subgroup::whole(q.group()))?, want_ab),
        central_quotient_powerful: structure::is_powerful(structure::central_quotient(g).group()),
    };
    let edge = t != s || structure::derived_subgroup(g).is_subgroup_of(&structure::center(g));
    let ok = row.order.0 == row.order.1
        && row.exponent.0 == row.exponent.1
        && row.order_a.0 == row.order_a.1
        && row.order_b.0 == row.order_b.1
        && row.center_matches
        && row.abelianization.0 == row.abelianization.1
        && row.central_quotient_powerful
        && edge;
    Ok(if ok {
        Verdict::pass_with(format!("M({r},{s},{t}) facts match"), row)
    } else {
        Verdict::Fail {
            counterexample: format!("M({r},{s},{t}) facts differ"),
            witness: serde_json::to_value(&row).ok(),
        }
    })
}
