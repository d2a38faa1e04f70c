//! Automorphisms given by generator images, an exhaustive backtracking
//! search for order-`p` automorphisms with fixing constraints, and the
//! explicit constructions of noninner automorphisms of order `p`.

pub mod constructions;
pub mod search;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{ForgeError, Result};
use crate::pc::{Code, PcGroup, Subgroup};
use crate::structure;

pub use constructions::{
    lemma21_alpha, lemma21_witness_scan, lemma22_c_group, liebeck_sigma, thm26_construct, Lemma21Triple, Lemma22Report,
};
pub use search::{
    brute_force_order_p_fixing, first_noninner_order_p_fixing, search_automorphisms, SearchSpec, SEARCH_CAP,
};

/// An automorphism stored by the images of the pc generators, with the
/// full permutation of the elements alongside.
#[derive(Clone)]
pub struct Automorphism {
    group: PcGroup,
    images: Vec<Code>,
    table: Arc<Vec<Code>>,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.images == other.images
    }
}

impl Eq for Automorphism {}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.images.iter().enumerate().map(|(k, &h)| format!("x{} -> {}", k + 1, self.group.format(h))).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Checks every power and conjugate relation on `images`.
fn relations_hold(g: &PcGroup, images: &[Code]) -> std::result::Result<(), String> {
    let pres = g.presentation();
    for i in 0..g.n_gens() {
        let lhs = g.pow(images[i], g.rel_order(i) as i64);
        if lhs != g.eval_word(pres.power(i), images) {
            return Err(format!("power relation of x{} fails", i + 1));
        }
        for j in i + 1..g.n_gens() {
            if g.conj(images[j], images[i]) != g.eval_word(pres.conjugate(j, i), images) {
                return Err(format!("conjugate relation x{}^x{} fails", j + 1, i + 1));
            }
        }
    }
    Ok(())
}

/// Validates `images` against the presentation and bijectivity.
pub fn make_automorphism(g: &PcGroup, images: &[Code]) -> Result<Automorphism> {
    if images.len() != g.n_gens() {
        return Err(ForgeError::InvalidAutomorphism(format!("{} images for {} generators", images.len(), g.n_gens())));
    }
    if images.iter().any(|&h| h as u64 >= g.order()) {
        return Err(ForgeError::InvalidAutomorphism("image out of range".into()));
    }
    relations_hold(g, images).map_err(ForgeError::InvalidAutomorphism)?;
    if Subgroup::closure(g, images).order() != g.order() {
        return Err(ForgeError::InvalidAutomorphism("map is not surjective".into()));
    }
    Ok(Automorphism::unchecked(g, images.to_vec()))
}

impl Automorphism {
    fn unchecked(g: &PcGroup, images: Vec<Code>) -> Self {
        let table = g.elements().map(|x| g.eval_word(&g.exponents(x), &images)).collect();
        Automorphism { group: g.clone(), images, table: Arc::new(table) }
    }

    pub fn identity(g: &PcGroup) -> Self {
        Self::unchecked(g, g.gens())
    }

    /// `x ↦ t^-1 x t`.
    pub fn conjugation(g: &PcGroup, t: Code) -> Self {
        let images = g.gens().iter().map(|&x| g.conj(x, t)).collect();
        Self::unchecked(g, images)
    }

    pub fn group(&self) -> &PcGroup {
        &self.group
    }

    pub fn images(&self) -> &[Code] {
        &self.images
    }

    pub fn apply(&self, x: Code) -> Code {
        self.table[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &h)| h == self.group.gen(k))
    }

    /// `x^(self other) = (x^self)^other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let images = self.images.iter().map(|&h| other.apply(h)).collect();
        Self::unchecked(&self.group, images)
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y as usize] = x as Code;
        }
        let images = self.group.gens().iter().map(|&x| inv[x as usize]).collect();
        Automorphism { group: self.group.clone(), images, table: Arc::new(inv) }
    }

    /// Order in `Aut(G)`, by iterating on the generators.
    pub fn order(&self) -> u64 {
        let gens = self.group.gens();
        let mut cur = self.images.clone();
        let mut k = 1;
        while cur != gens {
            cur = cur.iter().map(|&h| self.apply(h)).collect();
            k += 1;
        }
        k
    }

    pub fn fixes_pointwise(&self, s: &Subgroup) -> bool {
        s.gens().iter().all(|&x| self.apply(x) == x)
    }

    /// `g^-1 g^α ∈ n` for all `g`.
    pub fn acts_trivially_mod(&self, n: &Subgroup) -> bool {
        let g = &self.group;
        self.images.iter().enumerate().all(|(k, &h)| n.contains(g.mul(g.inv(g.gen(k)), h)))
    }

    /// A conjugating element if the automorphism is inner, searching a
    /// transversal of `G/Z(G)`.
    pub fn is_inner(&self) -> Option<Code> {
        let g = &self.group;
        let z = structure::center(g);
        let gens = g.gens();
        g.elements()
            .filter(|&t| z.coset_rep(t) == t)
            .find(|&t| gens.iter().zip(&self.images).all(|(&x, &h)| g.conj(x, t) == h))
    }

    /// Images as exponent vectors, used for canonical ordering.
    pub fn image_exponents(&self) -> Vec<Vec<u32>> {
        self.images.iter().map(|&h| self.group.exponents(h)).collect()
    }
}

/// Standalone `is_inner` as a free function.
pub fn is_inner(alpha: &Automorphism) -> Option<Code> {
    alpha.is_inner()
}

/// A validated automorphism packaged with its order, inner status and the
/// subgroup it was checked to fix.
#[derive(Clone, Debug, Serialize)]
pub struct AutWitness {
    #[serde(skip)]
    pub automorphism: Automorphism,
    pub images: Vec<String>,
    pub order: u64,
    pub fixed: String,
    pub inner: bool,
    pub conjugator: Option<String>,
    pub path: String,
}

impl AutWitness {
    /// Re-validates `alpha` from scratch and records its properties;
    /// `fixed` names the subgroup `fix` it must fix pointwise.
    pub fn certify(alpha: &Automorphism, fix: &Subgroup, fixed: &str, path: &str) -> Result<Self> {
        let g = alpha.group();
        let alpha = make_automorphism(g, alpha.images())?;
        if !alpha.fixes_pointwise(fix) {
            return Err(ForgeError::InvalidAutomorphism(format!("does not fix {fixed} pointwise")));
        }
        let conj = alpha.is_inner();
        Ok(AutWitness {
            images: alpha.images().iter().map(|&h| g.format(h)).collect(),
            order: alpha.order(),
            fixed: fixed.to_string(),
            inner: conj.is_some(),
            conjugator: conj.map(|t| g.format(t)),
            path: path.to_string(),
            automorphism: alpha,
        })
    }

    pub fn is_noninner_of_order(&self, p: u64) -> bool {
        !self.inner && self.order == p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::families;

    #[test]
    fn d8_automorphism_is_inner() {
        let g = families::dihedral(8).unwrap();
        let (g1, g2, g3) = (g.gen(0), g.gen(1), g.gen(2));
        let a = make_automorphism(&g, &[g.mul(g1, g3), g2, g3]).unwrap();
        assert_eq!(a.order(), 2);
        let t = a.is_inner().expect("inner");
        assert_eq!(Automorphism::conjugation(&g, t), a);
        assert_eq!(g.conj(g1, g2), g.mul(g1, g3));
    }

    #[test]
    fn invalid_maps_rejected() {
        let g = families::dihedral(8).unwrap();
        let (g1, g2, g3) = (g.gen(0), g.gen(1), g.gen(2));
        assert!(make_automorphism(&g, &[g2, g2, g3]).is_err());
        assert!(make_automorphism(&g, &[g1, g3, 0]).is_err());
        assert!(make_automorphism(&g, &[g1, g2]).is_err());
    }

    #[test]
    fn identity_and_inner_maps() {
        let g = families::quaternion(16).unwrap();
        let id = make_automorphism(&g, &g.gens()).unwrap();
        assert_eq!(id.order(), 1);
        assert_eq!(id.is_inner(), Some(0));
        for t in g.elements() {
            let c = Automorphism::conjugation(&g, t);
            assert!(make_automorphism(&g, c.images()).is_ok());
            assert!(c.is_inner().is_some());
            assert!(c.compose(&c.inverse()).is_identity());
        }
    }

    #[test]
    fn inner_test_matches_naive_sweep() {
        let g = families::dihedral(16).unwrap();
        let spec = SearchSpec::default();
        for a in search_automorphisms(&g, &spec, SEARCH_CAP).unwrap() {
            let naive = g.elements().any(|t| Automorphism::conjugation(&g, t) == a);
            assert_eq!(a.is_inner().is_some(), naive);
        }
    }
}
