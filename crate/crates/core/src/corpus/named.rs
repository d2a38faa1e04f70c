//! The metacyclic family `M(r,s,t)` and the two named 2-groups of orders 64
//! and 128.

use crate::error::{ForgeError, Result};
use crate::pc::{Code, PcGroup, PcPresentation, QuotientGroup, Subgroup};
use crate::structure;

/// `<a, b | a^{2^r} = b^{2^s}, b^{2^{s+t}} = 1, b^a = b^{2^t+1}>` for
/// `r >= s >= t >= 2`, with `x1 = a` of relative order `2^r` and `x2 = b`.
pub fn metacyclic(r: u32, s: u32, t: u32) -> Result<PcGroup> {
    if !(r >= s && s >= t && t >= 2) {
        return Err(ForgeError::InvalidArgument(format!(
            "metacyclic parameters need r >= s >= t >= 2, got ({r},{s},{t})"
        )));
    }
    metacyclic_raw(r, s, t, t)
}

/// Four-parameter shape with `b^a = b^{2^u+1}`; consistency is checked but
/// no further facts are promised.
pub fn metacyclic_raw(r: u32, s: u32, t: u32, u: u32) -> Result<PcGroup> {
    if r + s + t > 24 || s + t == 0 || r == 0 {
        return Err(ForgeError::InvalidArgument("metacyclic parameters out of range".into()));
    }
    let bo = 1u32 << (s + t);
    let mut pres = PcPresentation::new(format!("Meta({r},{s},{t})"), 2, vec![1 << r, bo])?;
    if u != t {
        pres.set_name(format!("Meta({r},{s},{t},{u})"));
    }
    pres.set_power(0, vec![0, (1u32 << s) % bo])?;
    pres.set_conjugate(1, 0, vec![0, ((1u64 << u) + 1) as u32 % bo])?;
    PcGroup::new(pres)
}

/// `<a, b | a^4 = b^4, b^16 = 1, b^4 = [b, a]>`, i.e. `M(2,2,2)`.
pub fn g64() -> Result<PcGroup> {
    let mut pres = metacyclic(2, 2, 2)?.presentation().clone();
    pres.set_name("G64");
    PcGroup::new(pres)
}

/// `<a, b | a^4 = [a,b,a] = 1, b^8 = [a,b]>`, realized as `C32 ⋊ C4` with
/// `b^a = b^25`.
pub fn liebeck128() -> Result<PcGroup> {
    let mut pres = PcPresentation::new("L128", 2, vec![4, 32])?;
    pres.set_conjugate(1, 0, vec![0, 25])?;
    PcGroup::new(pres)
}

/// Generators `a`, `b` of a two-generator named group.
pub fn ab(g: &PcGroup) -> (Code, Code) {
    (g.gen(0), g.gen(1))
}

/// Structural facts of `M(r,s,t)` recomputed from the group, next to the
/// closed forms they must equal.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MetacyclicFacts {
    pub params: (u32, u32, u32),
    pub order: (u64, u64),
    pub exponent: (u64, u64),
    pub order_a: (u64, u64),
    pub order_b: (u64, u64),
    /// `Z(G) = <a^{2^s}, b^{2^s}>`
    pub center_matches: bool,
    pub abelianization: (Vec<u64>, Vec<u64>),
}

impl MetacyclicFacts {
    pub fn all_match(&self) -> bool {
        self.order.0 == self.order.1
            && self.exponent.0 == self.exponent.1
            && self.order_a.0 == self.order_a.1
            && self.order_b.0 == self.order_b.1
            && self.center_matches
            && self.abelianization.0 == self.abelianization.1
    }
}

pub fn metacyclic_facts(r: u32, s: u32, t: u32) -> Result<MetacyclicFacts> {
    let g = metacyclic(r, s, t)?;
    let (a, b) = ab(&g);
    let k = 1i64 << s;
    let z = Subgroup::closure(&g, &[g.pow(a, k), g.pow(b, k)]);
    let q = QuotientGroup::new(&g, &structure::derived_subgroup(&g))?;
    let ab_inv = structure::abelian_invariants(&Subgroup::whole(q.group()))?;
    let mut want_ab = vec![1u64 << r, 1u64 << t];
    want_ab.sort_unstable_by(|x, y| y.cmp(x));
    Ok(MetacyclicFacts {
        params: (r, s, t),
        order: (g.order(), 1 << (r + s + t)),
        exponent: (structure::exponent(&g), 1 << (r + t)),
        order_a: (g.element_order(a), 1 << (r + t)),
        order_b: (g.element_order(b), 1 << (s + t)),
        center_matches: structure::center(&g) == z,
        abelianization: (ab_inv, want_ab),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g64_relations() {
        let g = g64().unwrap();
        let (a, b) = ab(&g);
        assert_eq!(g.order(), 64);
        assert_eq!(g.pow(a, 4), g.pow(b, 4));
        assert_eq!(g.comm(b, a), g.pow(b, 4));
        assert_eq!(g.conj(b, a), g.pow(b, 5));
        assert!(Subgroup::closure(&g, &[b]).is_normal());
        assert_eq!(structure::nilpotency_class(&g), 2);
        assert!(structure::is_powerful(&g));
    }

    #[test]
    fn liebeck_relations() {
        let g = liebeck128().unwrap();
        let (a, b) = ab(&g);
        let v = g.comm(a, b);
        assert_eq!(v, g.pow(b, 8));
        assert_eq!(g.pow(a, 4), 0);
        assert_eq!(g.comm(v, a), 0);
        assert_eq!(g.element_order(v), 4);
        assert_eq!(structure::derived_subgroup(&g), Subgroup::closure(&g, &[v]));
        assert!(structure::derived_subgroup(&g).is_subgroup_of(&structure::agemo(&g, 2)));
        assert_eq!(structure::nilpotency_class(&g), 2);
    }

    #[test]
    fn metacyclic_bounds() {
        assert!(metacyclic(2, 3, 2).is_err());
        assert!(metacyclic(2, 2, 1).is_err());
        let f = metacyclic_facts(2, 2, 2).unwrap();
        assert!(f.all_match(), "{f:?}");
    }
}
