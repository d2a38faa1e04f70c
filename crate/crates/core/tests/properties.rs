use std::collections::BTreeSet;
use std::sync::OnceLock;

use forge_core::autos::{make_automorphism, search_automorphisms, SearchSpec};
use forge_core::cohomology::{self, module_of};
use forge_core::corpus;
use forge_core::pc::Consistency;
use forge_core::{structure, Code, PcGroup, PcPresentation, QuotientGroup, Subgroup};
use proptest::prelude::*;

fn small_groups() -> &'static [PcGroup] {
    static GROUPS: OnceLock<Vec<PcGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| corpus::builtin().unwrap().into_iter().map(|e| e.group).filter(|g| g.order() <= 64).collect())
}

fn pick(seed: u64) -> &'static PcGroup {
    let gs = small_groups();
    &gs[(seed % gs.len() as u64) as usize]
}

fn elt(g: &PcGroup, seed: u64) -> Code {
    (seed % g.order()) as Code
}

/// Closure by repeated right multiplication, independent of the echelon code.
fn naive_closure(g: &PcGroup, gens: &[Code]) -> BTreeSet<Code> {
    let mut set = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

fn word_of(exps: &[u32]) -> Vec<(usize, i64)> {
    exps.iter().enumerate().filter(|(_, &e)| e != 0).map(|(k, &e)| (k, e as i64)).collect()
}

fn random_presentation(p: u32, n: usize, bits: &[u32]) -> PcPresentation {
    let mut pres = PcPresentation::new("R", p, vec![p; n]).unwrap();
    let mut next = bits.iter().cycle();
    let mut draw = || next.next().copied().unwrap() % p;
    for i in 0..n {
        let mut w = vec![0; n];
        for e in w.iter_mut().skip(i + 1) {
            *e = draw();
        }
        pres.set_power(i, w).unwrap();
    }
    for j in 1..n {
        for i in 0..j {
            let mut w = vec![0; n];
            w[j] = 1;
            for e in w.iter_mut().skip(j + 1) {
                *e = draw();
            }
            pres.set_conjugate(j, i, w).unwrap();
        }
    }
    pres
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn collection_is_associative(s in any::<u64>(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let g = pick(s);
        let (x, y, z) = (elt(g, a), elt(g, b), elt(g, c));
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, g.inv(x)), g.identity());
    }

    #[test]
    fn normal_forms_round_trip(s in any::<u64>(), a in any::<u64>()) {
        let g = pick(s);
        let x = elt(g, a);
        prop_assert_eq!(g.code(&g.exponents(x)), x);
        prop_assert_eq!(g.parse_element(&g.format(x)).unwrap(), x);
        let collected = g.presentation().collect(&word_of(&g.exponents(x))).unwrap();
        prop_assert_eq!(collected, g.exponents(x));
    }

    #[test]
    fn presentation_text_round_trips(s in any::<u64>()) {
        let g = pick(s);
        let text = g.presentation().serialize();
        let back = PcPresentation::parse(&text).unwrap();
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn membership_matches_enumeration(s in any::<u64>(), seeds in prop::collection::vec(any::<u64>(), 1..4)) {
        let g = pick(s);
        let gens: Vec<Code> = seeds.iter().map(|&t| elt(g, t)).collect();
        let sub = Subgroup::closure(g, &gens);
        let naive = naive_closure(g, &gens);
        prop_assert_eq!(sub.order(), naive.len() as u64);
        prop_assert_eq!(g.order() % sub.order(), 0);
        let listed: BTreeSet<Code> = sub.elements().into_iter().collect();
        prop_assert_eq!(&listed, &naive);
        for x in g.elements() {
            prop_assert_eq!(sub.contains(x), naive.contains(&x));
        }
        prop_assert!(sub.depths().windows(2).all(|w| w[0] < w[1]));
        prop_assert!(sub.gens().iter().all(|&y| sub.contains(y)));
    }

    #[test]
    fn quotient_map_is_a_homomorphism(s in any::<u64>(), t in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let g = pick(s);
        let n = Subgroup::normal_closure(g, &[elt(g, t)]);
        let q = QuotientGroup::new(g, &n).unwrap();
        prop_assert_eq!(q.order() * n.order(), g.order());
        prop_assert_eq!(q.canonical(g.identity()), g.identity());
        let (x, y) = (elt(g, a), elt(g, b));
        let h = q.group();
        prop_assert_eq!(q.project(g.mul(x, y)), h.mul(q.project(x), q.project(y)));
        let back = q.lift(q.project(x));
        prop_assert!(n.contains(g.mul(g.inv(x), back)));
    }

    #[test]
    fn commutator_image_is_closed(s in any::<u64>(), a in any::<u64>()) {
        let g = pick(s);
        let z2 = structure::upper_central_series(g);
        let candidates: Vec<Subgroup> = z2.into_iter().filter(|s| s.is_abelian()).collect();
        let a_sub = candidates.last().unwrap();
        let x = elt(g, a);
        let ax = structure::commutator_image_subgroup(a_sub, x).unwrap();
        let set: BTreeSet<Code> = a_sub.elements().iter().map(|&y| g.comm(y, x)).collect();
        prop_assert_eq!(ax.order(), set.len() as u64);
        prop_assert!(set.iter().all(|&c| ax.contains(c)));
    }

    #[test]
    fn abelian_invariants_match_omega_counts(s in any::<u64>(), seeds in prop::collection::vec(any::<u64>(), 1..4)) {
        let g = pick(s);
        let gens: Vec<Code> = seeds.iter().map(|&t| elt(g, t)).collect();
        let sub = Subgroup::closure(g, &gens);
        let sub = if sub.is_abelian() { sub } else { structure::center(g) };
        let elems = sub.elements();
        let p = g.prime() as u64;
        let mut counts = vec![1u64];
        let mut k = 1;
        while *counts.last().unwrap() < sub.order() {
            let q = p.pow(k);
            counts.push(elems.iter().filter(|&&x| q % g.element_order(x) == 0).count() as u64);
            k += 1;
        }
        let inv = structure::abelian_invariants(&sub).unwrap();
        prop_assert_eq!(&inv, &cohomology::invariants_from_omega_counts(p, &counts));
        prop_assert_eq!(inv.iter().product::<u64>(), sub.order());
    }

    #[test]
    fn frattini_is_intersection_of_maximals(s in any::<u64>()) {
        let g = pick(s);
        let phi = structure::frattini(g);
        let mut meet = Subgroup::whole(g);
        for m in structure::maximal_subgroups(g) {
            prop_assert_eq!(m.order() * g.prime() as u64, g.order());
            meet = meet.intersection(&m);
        }
        prop_assert_eq!(phi.gens(), meet.gens());
    }

    #[test]
    fn consistency_iff_associative(bits in prop::collection::vec(any::<u32>(), 24), n in 2usize..5, odd in any::<bool>()) {
        let p = if odd { 3 } else { 2 };
        let n = if odd { n.min(3) } else { n };
        let pres = random_presentation(p, n, &bits);
        let forms: Vec<Vec<u32>> = (0..(p as u64).pow(n as u32))
            .map(|mut c| {
                let mut e = vec![0; n];
                for k in (0..n).rev() {
                    e[k] = (c % p as u64) as u32;
                    c /= p as u64;
                }
                e
            })
            .collect();
        let mul = |x: &[u32], y: &[u32]| {
            let mut w = word_of(x);
            w.extend(word_of(y));
            pres.collect(&w).unwrap()
        };
        let associative = forms.iter().all(|x| {
            forms.iter().all(|y| {
                let xy = mul(x, y);
                forms.iter().all(|z| mul(&xy, z) == mul(x, &mul(y, z)))
            })
        });
        let consistent = pres.consistency_check() == Consistency::Pass;
        prop_assert_eq!(consistent, associative);
        if consistent {
            let g = PcGroup::new(pres).unwrap();
            prop_assert_eq!(g.order(), forms.len() as u64);
            prop_assert_eq!(naive_closure(&g, &g.gens()).len(), forms.len());
        } else {
            prop_assert!(PcGroup::new(pres).is_err());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn module_laws(s in any::<u64>(), t in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let g = pick(s);
        prop_assume!(g.order() <= 32);
        let n = Subgroup::normal_closure(g, &[elt(g, t)]);
        prop_assume!(!n.is_trivial());
        let m = module_of(g, &n).unwrap();
        let (x, y) = (elt(g, a), elt(g, b));
        if m.quotient().project(x) == m.quotient().project(y) {
            prop_assert!(m.well_defined_on(x, y));
        }
        let y_in_coset = g.mul(x, n.elements()[(b % n.order()) as usize]);
        prop_assert!(m.well_defined_on(x, y_in_coset));
        let tau = cohomology::trace_image(&m);
        let fixed = cohomology::fixed_points(&m);
        prop_assert!(tau.is_subgroup_of(&fixed));
        prop_assert!(fixed.is_subgroup_of(m.a()));
        let z = cohomology::z1(&m, cohomology::COHOMOLOGY_CAP).unwrap();
        let bs = cohomology::b1(&m);
        let h: u64 = cohomology::h1_from(&m, &z, &bs).iter().product();
        prop_assert_eq!(z.len() as u64, bs.len() as u64 * h);
        for f in &z {
            prop_assert!(cohomology::verify_cocycle(&m, f).is_ok());
        }
        let h0: u64 = cohomology::h0(&m).iter().product();
        prop_assert_eq!(fixed.order(), tau.order() * h0);
    }

    #[test]
    fn automorphism_group_operations(s in any::<u64>(), i in any::<usize>(), j in any::<usize>()) {
        let g = pick(s);
        prop_assume!(g.order() <= 32);
        let all = search_automorphisms(g, &SearchSpec::default(), 64).unwrap();
        let (a, b) = (&all[i % all.len()], &all[j % all.len()]);
        let ab = a.compose(b);
        prop_assert!(make_automorphism(g, ab.images()).is_ok());
        prop_assert!(all.contains(&ab));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        for x in g.elements() {
            prop_assert_eq!(ab.apply(x), b.apply(a.apply(x)));
        }
        if let Some(t) = a.is_inner() {
            prop_assert!(g.gens().iter().zip(a.images()).all(|(&x, &h)| g.conj(x, t) == h));
        }
    }
}
