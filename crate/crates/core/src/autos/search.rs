//! Backtracking over generator images.
//!
//! Generators are assigned from last to first. When `x_k` receives its
//! image, every relation whose left side starts at `x_k` only involves
//! images already fixed, so it is checked on the spot; the images assigned
//! so far must also generate a subgroup of order `|G_k|`.

use rayon::prelude::*;

use super::{make_automorphism, AutWitness, Automorphism};
use crate::error::{ForgeError, Result};
use crate::pc::{Code, PcGroup, Subgroup};
use crate::structure;

/// Default order cap for exhaustive automorphism searches.
pub const SEARCH_CAP: u64 = 1 << 7;

#[derive(Clone, Debug, Default)]
pub struct SearchSpec {
    /// Subgroup fixed elementwise.
    pub fix: Option<Subgroup>,
    /// Require `g^-1 g^α ∈ N`.
    pub coset: Option<Subgroup>,
    /// Keep only automorphisms of order exactly `p`.
    pub order_p: bool,
}

impl SearchSpec {
    pub fn fixing(s: &Subgroup) -> Self {
        SearchSpec { fix: Some(s.clone()), ..Default::default() }
    }
}

/// Membership pattern in characteristic subgroups plus element order;
/// automorphisms preserve it.
fn signatures(g: &PcGroup) -> Vec<u64> {
    let chars = [
        structure::center(g),
        structure::derived_subgroup(g),
        structure::frattini(g),
        structure::agemo(g, 1),
        structure::omega1_general(g),
        structure::upper_central_series(g).get(2).cloned().unwrap_or_else(|| Subgroup::whole(g)),
    ];
    g.elements()
        .map(|x| {
            let mut sig = g.element_order(x) << 8;
            for (i, c) in chars.iter().enumerate() {
                if c.contains(x) {
                    sig |= 1 << i;
                }
            }
            sig
        })
        .collect()
}

fn candidates(g: &PcGroup, spec: &SearchSpec, sig: &[u64], k: usize) -> Vec<Code> {
    let gk = g.gen(k);
    if let Some(s) = &spec.fix {
        if s.contains(gk) {
            return vec![gk];
        }
    }
    let p = g.prime() as i64;
    let ord = g.element_order(gk) as i64;
    // p^i-th powers of gk that lie in the fixed subgroup
    let mut fixed_powers = Vec::new();
    let mut fixed_conj = Vec::new();
    if let Some(s) = &spec.fix {
        let mut q = p;
        while q < ord {
            let y = g.pow(gk, q);
            if s.contains(y) {
                fixed_powers.push((q, y));
            }
            q *= p;
        }
        if s.is_normal() {
            fixed_conj = s.gens().iter().map(|&y| (y, g.conj(y, gk))).collect();
        }
    }
    g.elements()
        .filter(|&h| sig[h as usize] == sig[gk as usize])
        .filter(|&h| match &spec.coset {
            Some(n) => n.contains(g.mul(g.inv(gk), h)),
            None => true,
        })
        .filter(|&h| fixed_powers.iter().all(|&(q, y)| g.pow(h, q) == y))
        .filter(|&h| fixed_conj.iter().all(|&(y, c)| g.conj(y, h) == c))
        .collect()
}

struct Search<'a> {
    g: &'a PcGroup,
    cands: Vec<Vec<Code>>,
    /// `|G_k|`
    tail_orders: Vec<u64>,
}

impl Search<'_> {
    fn relations_at(&self, k: usize, images: &[Code]) -> bool {
        let g = self.g;
        let pres = g.presentation();
        let h = images[k];
        if g.pow(h, g.rel_order(k) as i64) != g.eval_word(pres.power(k), images) {
            return false;
        }
        (k + 1..g.n_gens()).all(|j| g.conj(images[j], h) == g.eval_word(pres.conjugate(j, k), images))
    }

    fn descend(&self, k: usize, images: &mut Vec<Code>, span: &Subgroup, out: &mut Vec<Vec<Code>>) {
        for &h in &self.cands[k] {
            images[k] = h;
            if !self.relations_at(k, images) {
                continue;
            }
            let next = span.join_elements(&[h]);
            if next.order() != self.tail_orders[k] {
                continue;
            }
            if k == 0 {
                out.push(images.clone());
            } else {
                self.descend(k - 1, images, &next, out);
            }
        }
        images[k] = 0;
    }
}

/// All automorphisms satisfying `spec`, ordered by image exponent vectors.
pub fn search_automorphisms(g: &PcGroup, spec: &SearchSpec, cap: u64) -> Result<Vec<Automorphism>> {
    if g.order() > cap {
        return Err(ForgeError::CapExceeded { what: "automorphism search".into(), order: g.order(), cap });
    }
    let n = g.n_gens();
    if n == 0 {
        return Ok(vec![Automorphism::identity(g)]);
    }
    let sig = signatures(g);
    let cands: Vec<Vec<Code>> = (0..n).map(|k| candidates(g, spec, &sig, k)).collect();
    let mut tail_orders = vec![1u64; n];
    let mut acc = 1u64;
    for k in (0..n).rev() {
        acc *= g.rel_order(k) as u64;
        tail_orders[k] = acc;
    }
    let search = Search { g, cands, tail_orders };
    let top = n - 1;
    let mut found: Vec<Vec<Code>> = search.cands[top]
        .par_iter()
        .flat_map_iter(|&h| {
            let mut images = vec![0; n];
            let mut out = Vec::new();
            images[top] = h;
            if search.relations_at(top, &images) {
                let span = Subgroup::closure(g, &[h]);
                if span.order() == search.tail_orders[top] {
                    if top == 0 {
                        out.push(images.clone());
                    } else {
                        search.descend(top - 1, &mut images, &span, &mut out);
                    }
                }
            }
            out
        })
        .collect();
    found.sort_by_key(|imgs| imgs.iter().map(|&h| g.exponents(h)).collect::<Vec<_>>());
    let p = g.prime() as u64;
    let mut result = Vec::with_capacity(found.len());
    for imgs in found {
        let a = make_automorphism(g, &imgs)?;
        if let Some(s) = &spec.fix {
            if !a.fixes_pointwise(s) {
                continue;
            }
        }
        if spec.order_p && a.order() != p {
            continue;
        }
        result.push(a);
    }
    Ok(result)
}

/// Every automorphism of order exactly `p` fixing `s` elementwise, each
/// certified and resolved as inner or noninner.
pub fn brute_force_order_p_fixing(g: &PcGroup, s: &Subgroup, label: &str, cap: u64) -> Result<Vec<AutWitness>> {
    let spec = SearchSpec { fix: Some(s.clone()), coset: None, order_p: true };
    search_automorphisms(g, &spec, cap)?.iter().map(|a| AutWitness::certify(a, s, label, "search")).collect()
}

/// The first noninner witness of order `p` fixing `s`, if any.
pub fn first_noninner_order_p_fixing(g: &PcGroup, s: &Subgroup, label: &str, cap: u64) -> Result<Option<AutWitness>> {
    let spec = SearchSpec { fix: Some(s.clone()), coset: None, order_p: true };
    for a in search_automorphisms(g, &spec, cap)? {
        if a.is_inner().is_none() {
            return Ok(Some(AutWitness::certify(&a, s, label, "search")?));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::families;

    #[test]
    fn aut_counts() {
        // |Aut(D8)| = 8, |Aut(Q8)| = 24, |Aut(C2 x C2)| = 6, |Aut(C4 x C2)| = 8
        let cases: [(PcGroup, usize); 4] = [
            (families::dihedral(8).unwrap(), 8),
            (families::quaternion(8).unwrap(), 24),
            (families::abelian(2, &[2, 2]).unwrap(), 6),
            (families::abelian(2, &[4, 2]).unwrap(), 8),
        ];
        for (g, n) in cases {
            assert_eq!(search_automorphisms(&g, &SearchSpec::default(), SEARCH_CAP).unwrap().len(), n);
        }
    }

    #[test]
    fn d8_has_noninner_fixing_frattini() {
        let g = families::dihedral(8).unwrap();
        let phi = structure::frattini(&g);
        let w = brute_force_order_p_fixing(&g, &phi, "frattini", SEARCH_CAP).unwrap();
        assert!(w.iter().any(|w| w.is_noninner_of_order(2)));
        assert!(w.iter().all(|w| w.order == 2));
    }

    #[test]
    fn cap_refusal() {
        let g = families::dihedral(256).unwrap();
        assert!(matches!(
            search_automorphisms(&g, &SearchSpec::default(), SEARCH_CAP),
            Err(ForgeError::CapExceeded { .. })
        ));
    }
}
