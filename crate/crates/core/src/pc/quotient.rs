use crate::error::{ForgeError, Result};
use crate::pc::group::{Code, PcGroup};
use crate::pc::presentation::PcPresentation;
use crate::pc::subgroup::Subgroup;

/// `G/N` realized on canonical coset representatives, together with a
/// consistent presentation of the factor group.
///
/// The factor presentation keeps every position `k` of `G` whose relative
/// order survives (`l_k` when `N` has a pivot at `k`, else `m_k`); a factor
/// normal form is exactly the exponent vector of the canonical representative
/// restricted to those positions.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    parent: PcGroup,
    kernel: Subgroup,
    factor: PcGroup,
    /// parent positions kept in the factor presentation
    positions: Vec<usize>,
}

impl QuotientGroup {
    pub fn new(parent: &PcGroup, kernel: &Subgroup) -> Result<Self> {
        if !kernel.is_normal() {
            return Err(ForgeError::NotNormal);
        }
        let g = parent;
        let n = g.n_gens();
        let mut qorders: Vec<u32> = (0..n).map(|k| g.rel_order(k)).collect();
        for (&d, &l) in kernel.depths().iter().zip(kernel.leads()) {
            qorders[d] = l;
        }
        let positions: Vec<usize> = (0..n).filter(|&k| qorders[k] > 1).collect();
        let rel: Vec<u32> = positions.iter().map(|&k| qorders[k]).collect();
        let name = format!("{}/N{}", g.name(), kernel.order());
        let mut pres = PcPresentation::new(name, g.prime(), rel)?;
        let project = |c: Code| -> Vec<u32> {
            let e = g.exponents(kernel.coset_rep(c));
            positions.iter().map(|&k| e[k]).collect()
        };
        for (qi, &k) in positions.iter().enumerate() {
            let gk = g.gen(k);
            pres.set_power(qi, project(g.pow(gk, qorders[k] as i64)))?;
            for (qj, &l) in positions.iter().enumerate().skip(qi + 1) {
                pres.set_conjugate(qj, qi, project(g.conj(g.gen(l), gk)))?;
            }
        }
        let factor = PcGroup::new(pres)?;
        Ok(QuotientGroup { parent: g.clone(), kernel: kernel.clone(), factor, positions })
    }

    pub fn parent(&self) -> &PcGroup {
        &self.parent
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// The factor group as a group in its own right.
    pub fn group(&self) -> &PcGroup {
        &self.factor
    }

    pub fn order(&self) -> u64 {
        self.factor.order()
    }

    pub fn canonical(&self, x: Code) -> Code {
        self.kernel.coset_rep(x)
    }

    /// Image of a parent element in the factor group.
    pub fn project(&self, x: Code) -> Code {
        let e = self.parent.exponents(self.kernel.coset_rep(x));
        let q: Vec<u32> = self.positions.iter().map(|&k| e[k]).collect();
        self.factor.code(&q)
    }

    /// Canonical representative of a factor element.
    pub fn lift(&self, q: Code) -> Code {
        let qe = self.factor.exponents(q);
        let mut e = vec![0; self.parent.n_gens()];
        for (&k, &x) in self.positions.iter().zip(&qe) {
            e[k] = x;
        }
        self.parent.code(&e)
    }

    /// Preimage in the parent of a subgroup of the factor group.
    pub fn preimage(&self, s: &Subgroup) -> Subgroup {
        let lifts: Vec<Code> = s.gens().iter().map(|&q| self.lift(q)).collect();
        self.kernel.join_elements(&lifts)
    }

    /// Image in the factor group of a parent subgroup.
    pub fn image(&self, s: &Subgroup) -> Subgroup {
        let gens: Vec<Code> = s.gens().iter().map(|&x| self.project(x)).collect();
        Subgroup::closure(&self.factor, &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d8() -> PcGroup {
        let mut p = PcPresentation::new("D8", 2, vec![2, 2, 2]).unwrap();
        p.set_power(1, vec![0, 0, 1]).unwrap();
        p.set_conjugate(1, 0, vec![0, 1, 1]).unwrap();
        PcGroup::new(p).unwrap()
    }

    #[test]
    fn d8_mod_center_is_klein() {
        let g = d8();
        let z = Subgroup::closure(&g, &[g.gen(2)]);
        let q = QuotientGroup::new(&g, &z).unwrap();
        assert_eq!(q.order(), 4);
        let f = q.group();
        assert!(f.elements().all(|x| f.pow(x, 2) == 0));
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(f.mul(q.project(x), q.project(y)), q.project(g.mul(x, y)));
            }
            assert_eq!(q.project(q.lift(q.project(x))), q.project(x));
        }
    }

    #[test]
    fn quotient_by_whole_is_trivial() {
        let g = d8();
        let q = QuotientGroup::new(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn non_normal_kernel_rejected() {
        let g = d8();
        let s = Subgroup::closure(&g, &[g.gen(0)]);
        assert!(matches!(QuotientGroup::new(&g, &s), Err(ForgeError::NotNormal)));
    }
}
