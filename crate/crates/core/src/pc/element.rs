use std::fmt;

use crate::error::{ForgeError, Result};
use crate::pc::group::{Code, PcGroup};

/// A group element in normal form, tied to its presentation.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    group: PcGroup,
    code: Code,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group.format(self.code))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group.format(self.code))
    }
}

impl Element {
    pub fn new(group: &PcGroup, code: Code) -> Self {
        assert!((code as u64) < group.order(), "code out of range");
        Element { group: group.clone(), code }
    }

    pub fn identity(group: &PcGroup) -> Self {
        Self::new(group, 0)
    }

    pub fn from_exponents(group: &PcGroup, exps: &[u32]) -> Result<Self> {
        if exps.len() != group.n_gens() || exps.iter().enumerate().any(|(k, &e)| e >= group.rel_order(k)) {
            return Err(ForgeError::InvalidArgument(format!("{exps:?} is not a normal form")));
        }
        Ok(Self::new(group, group.code(exps)))
    }

    /// Collects a word of generator powers into its normal form.
    pub fn collect(group: &PcGroup, word: &[(usize, i64)]) -> Result<Self> {
        let e = group.presentation().collect(word)?;
        Ok(Self::new(group, group.code(&e)))
    }

    pub fn group(&self) -> &PcGroup {
        &self.group
    }

    pub fn code(&self) -> Code {
        self.code
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.group.exponents(self.code)
    }

    pub fn is_identity(&self) -> bool {
        self.code == 0
    }

    fn check(&self, other: &Element) -> Result<()> {
        if self.group.same_group(&other.group) {
            Ok(())
        } else {
            Err(ForgeError::MixedPresentations)
        }
    }

    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(Element { group: self.group.clone(), code: self.group.mul(self.code, other.code) })
    }

    pub fn inverse(&self) -> Element {
        Element { group: self.group.clone(), code: self.group.inv(self.code) }
    }

    pub fn power(&self, k: i64) -> Element {
        Element { group: self.group.clone(), code: self.group.pow(self.code, k) }
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(Element { group: self.group.clone(), code: self.group.comm(self.code, other.code) })
    }

    /// `self^g = g^-1 self g`.
    pub fn conjugate(&self, g: &Element) -> Result<Element> {
        self.check(g)?;
        Ok(Element { group: self.group.clone(), code: self.group.conj(self.code, g.code) })
    }

    pub fn order(&self) -> u64 {
        self.group.element_order(self.code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::presentation::PcPresentation;

    #[test]
    fn mixed_presentations_are_errors() {
        let a = PcGroup::new(PcPresentation::new("C2", 2, vec![2]).unwrap()).unwrap();
        let b = PcGroup::new(PcPresentation::new("C3", 3, vec![3]).unwrap()).unwrap();
        let x = Element::new(&a, 1);
        let y = Element::new(&b, 1);
        assert_eq!(x.multiply(&y), Err(ForgeError::MixedPresentations));
        assert_eq!(x.commutator(&y), Err(ForgeError::MixedPresentations));
    }

    #[test]
    fn element_ops() {
        let a = PcGroup::new(PcPresentation::new("C4", 2, vec![4]).unwrap()).unwrap();
        let x = Element::new(&a, 1);
        assert_eq!(x.order(), 4);
        assert_eq!(x.power(-1).code(), 3);
        assert!(x.multiply(&x.inverse()).unwrap().is_identity());
    }
}
