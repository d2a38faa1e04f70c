//! Subgroups as induced (echelonized) generating sequences.
//!
//! A subgroup `S` is stored as one generator per pivot depth `d`, whose
//! leading exponent `l_d` is the smallest power of `p` occurring as a leading
//! exponent of an element of `S` at depth `d`. Leading exponents add under
//! multiplication inside `G_d = <g_d, ..., g_n>`, so membership is decided by
//! stripping pivots ("sifting") without enumeration.

use std::collections::HashSet;
use std::fmt;

use crate::error::{ForgeError, Result};
use crate::pc::group::{Code, PcGroup};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    group: PcGroup,
    /// Canonical induced generators, pivot depths strictly increasing.
    gens: Vec<Code>,
    depths: Vec<usize>,
    leads: Vec<u32>,
    order: u64,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|&g| self.group.format(g)).collect();
        write!(f, "<{}> (order {})", gens.join(", "), self.order)
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // m is a prime power and a is prime to it; brute force is fine at these sizes
    (1..m).find(|&x| (a * x) % m == 1).unwrap_or(1)
}

/// Incremental builder for induced sequences.
struct SeqBuilder<'g> {
    g: &'g PcGroup,
    slots: Vec<Option<Code>>,
}

impl<'g> SeqBuilder<'g> {
    fn new(g: &'g PcGroup) -> Self {
        SeqBuilder { g, slots: vec![None; g.n_gens()] }
    }

    fn from_subgroup(s: &'g Subgroup) -> Self {
        let mut b = Self::new(&s.group);
        for (&x, &d) in s.gens.iter().zip(&s.depths) {
            b.slots[d] = Some(x);
        }
        b
    }

    fn sift(&self, mut x: Code) -> Code {
        while let Some(d) = self.g.depth(x) {
            let Some(s) = self.slots[d] else { return x };
            let lead = self.g.exponent_at(s, d);
            let e = self.g.exponent_at(x, d);
            if !e.is_multiple_of(lead) {
                return x;
            }
            x = self.g.mul(x, self.g.pow(s, -((e / lead) as i64)));
        }
        x
    }

    /// Adds `x` and closes under relative powers and commutators.
    /// Returns whether the subgroup grew.
    fn add(&mut self, x: Code) -> bool {
        let mut queue = vec![x];
        let mut grew = false;
        while let Some(y) = queue.pop() {
            let r = self.sift(y);
            let Some(d) = self.g.depth(r) else { continue };
            grew = true;
            let m = self.g.rel_order(d) as u64;
            let p = self.g.prime() as u64;
            let e = self.g.exponent_at(r, d) as u64;
            let mut pj = 1;
            while e.is_multiple_of(pj * p) {
                pj *= p;
            }
            let unit = e / pj;
            let r = self.g.pow(r, mod_inverse(unit % m, m) as i64);
            debug_assert_eq!(self.g.exponent_at(r, d) as u64, pj);
            if let Some(old) = self.slots[d].replace(r) {
                queue.push(old);
            }
            queue.push(self.g.pow(r, (m / pj) as i64));
            for s in self.slots.iter().flatten() {
                if *s != r {
                    queue.push(self.g.comm(r, *s));
                }
            }
        }
        grew
    }

    fn finish(self) -> Subgroup {
        let g = self.g;
        let mut gens = Vec::new();
        let mut depths = Vec::new();
        let mut leads = Vec::new();
        for (d, s) in self.slots.iter().enumerate() {
            if let Some(s) = s {
                gens.push(*s);
                depths.push(d);
                leads.push(g.exponent_at(*s, d));
            }
        }
        // reduced echelon form: exponents at later pivots below their lead
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let c = g.exponent_at(gens[i], depths[j]);
                let q = c / leads[j];
                if q > 0 {
                    gens[i] = g.mul(gens[i], g.pow(gens[j], -(q as i64)));
                }
            }
        }
        let order = depths.iter().zip(&leads).map(|(&d, &l)| (g.rel_order(d) / l) as u64).product();
        Subgroup { group: g.clone(), gens, depths, leads, order }
    }
}

impl Subgroup {
    /// Rebuilds a subgroup from generators already in canonical form.
    pub(crate) fn from_canonical(g: &PcGroup, gens: Vec<Code>) -> Self {
        let mut b = SeqBuilder::new(g);
        for &x in &gens {
            let d = g.depth(x).expect("canonical generators are nontrivial");
            b.slots[d] = Some(x);
        }
        let s = b.finish();
        debug_assert_eq!(s.gens, gens);
        s
    }

    pub fn trivial(g: &PcGroup) -> Self {
        SeqBuilder::new(g).finish()
    }

    pub fn whole(g: &PcGroup) -> Self {
        Self::closure(g, &g.gens())
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(g: &PcGroup, gens: &[Code]) -> Self {
        let mut b = SeqBuilder::new(g);
        for &x in gens {
            b.add(x);
        }
        b.finish()
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(g: &PcGroup, gens: &[Code]) -> Self {
        let mut b = SeqBuilder::new(g);
        for &x in gens {
            b.add(x);
        }
        let pcgens = g.gens();
        loop {
            let current: Vec<Code> = b.slots.iter().flatten().copied().collect();
            let mut grew = false;
            for s in current {
                for &t in &pcgens {
                    grew |= b.add(g.conj(s, t));
                }
            }
            if !grew {
                break;
            }
        }
        b.finish()
    }

    /// `<self, extra>`.
    pub fn join_elements(&self, extra: &[Code]) -> Subgroup {
        let mut b = SeqBuilder::from_subgroup(self);
        for &x in extra {
            b.add(x);
        }
        b.finish()
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        self.join_elements(&other.gens)
    }

    pub fn group(&self) -> &PcGroup {
        &self.group
    }

    pub fn gens(&self) -> &[Code] {
        &self.gens
    }

    pub fn depths(&self) -> &[usize] {
        &self.depths
    }

    pub fn leads(&self) -> &[u32] {
        &self.leads
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.group.order()
    }

    /// Membership by echelon stripping.
    pub fn contains(&self, x: Code) -> bool {
        let g = &self.group;
        let mut x = x;
        for ((&s, &d), &l) in self.gens.iter().zip(&self.depths).zip(&self.leads) {
            match g.depth(x) {
                None => return true,
                Some(dx) if dx < d => return false,
                Some(dx) if dx > d => continue,
                Some(_) => {
                    let e = g.exponent_at(x, d);
                    if !e.is_multiple_of(l) {
                        return false;
                    }
                    x = g.mul(x, g.pow(s, -((e / l) as i64)));
                }
            }
        }
        x == 0
    }

    /// Coordinates `c` with `x = s_1^{c_1} ... s_r^{c_r}`, if `x` is a member.
    pub fn coordinates(&self, x: Code) -> Option<Vec<u32>> {
        let g = &self.group;
        let mut x = x;
        let mut coords = vec![0; self.gens.len()];
        for (i, ((&s, &d), &l)) in self.gens.iter().zip(&self.depths).zip(&self.leads).enumerate() {
            let e = g.exponent_at(x, d);
            if g.depth(x).is_some_and(|dx| dx < d) || !e.is_multiple_of(l) {
                return None;
            }
            coords[i] = e / l;
            x = g.mul(g.pow(s, -((e / l) as i64)), x);
        }
        (x == 0).then_some(coords)
    }

    /// Relative order of the `i`-th induced generator.
    pub fn rel_order(&self, i: usize) -> u32 {
        self.group.rel_order(self.depths[i]) / self.leads[i]
    }

    /// All elements, in the order of induced normal words.
    pub fn elements(&self) -> Vec<Code> {
        let g = &self.group;
        let mut out = vec![0];
        for i in (0..self.gens.len()).rev() {
            let r = self.rel_order(i);
            let mut next = Vec::with_capacity(out.len() * r as usize);
            let mut pw = 0;
            for _ in 0..r {
                next.extend(out.iter().map(|&t| g.mul(pw, t)));
                pw = g.mul(pw, self.gens[i]);
            }
            out = next;
        }
        out
    }

    /// Canonical coset representative of `x * self` (right coset `x S`): the
    /// element of `xS` whose exponents at pivot depths are below the leads.
    pub fn coset_rep(&self, x: Code) -> Code {
        let g = &self.group;
        let mut x = x;
        for ((&s, &d), &l) in self.gens.iter().zip(&self.depths).zip(&self.leads) {
            let q = g.exponent_at(x, d) / l;
            if q > 0 {
                x = g.mul(x, g.pow(s, -(q as i64)));
            }
        }
        x
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.gens.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.group;
        self.gens.iter().all(|&s| (0..g.n_gens()).all(|k| self.contains(g.conj(s, g.gen(k)))))
    }

    /// Normal in `<self, parent>` sense: normalized by every generator of `over`.
    pub fn is_normalized_by(&self, over: &Subgroup) -> bool {
        let g = &self.group;
        self.gens.iter().all(|&s| over.gens.iter().all(|&t| self.contains(g.conj(s, t))))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.group;
        self.gens.iter().enumerate().all(|(i, &a)| self.gens[i + 1..].iter().all(|&b| g.comm(a, b) == 0))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let (small, big) = if self.order <= other.order { (self, other) } else { (other, self) };
        let members: Vec<Code> = small.elements().into_iter().filter(|&x| big.contains(x)).collect();
        Subgroup::closure(&self.group, &members)
    }

    /// Human-readable generator list.
    pub fn describe(&self) -> Vec<String> {
        self.gens.iter().map(|&g| self.group.format(g)).collect()
    }
}

/// Enumerates all subgroups (or, with `normal_only`, all normal subgroups)
/// of `g`. Refuses groups above `cap` rather than truncating.
pub fn enumerate_subgroups(g: &PcGroup, cap: u64, normal_only: bool) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(ForgeError::CapExceeded { what: "subgroup enumeration".into(), order: g.order(), cap });
    }
    let mut seen: HashSet<Vec<Code>> = HashSet::new();
    let start = Subgroup::trivial(g);
    seen.insert(start.gens.clone());
    let mut found = vec![start];
    let mut i = 0;
    while i < found.len() {
        let s = found[i].clone();
        i += 1;
        let mut tried: HashSet<Code> = HashSet::new();
        for x in g.elements() {
            if s.contains(x) {
                continue;
            }
            let rep = s.coset_rep(x);
            if !tried.insert(rep) {
                continue;
            }
            let t = if normal_only {
                let mut gens = s.gens.clone();
                gens.push(x);
                Subgroup::normal_closure(g, &gens)
            } else {
                s.join_elements(&[x])
            };
            if seen.insert(t.gens.clone()) {
                found.push(t);
            }
        }
    }
    found.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.gens.cmp(&b.gens)));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::presentation::PcPresentation;

    fn d8() -> PcGroup {
        let mut p = PcPresentation::new("D8", 2, vec![2, 2, 2]).unwrap();
        p.set_power(1, vec![0, 0, 1]).unwrap();
        p.set_conjugate(1, 0, vec![0, 1, 1]).unwrap();
        PcGroup::new(p).unwrap()
    }

    fn q8() -> PcGroup {
        let mut p = PcPresentation::new("Q8", 2, vec![2, 2, 2]).unwrap();
        p.set_power(0, vec![0, 0, 1]).unwrap();
        p.set_power(1, vec![0, 0, 1]).unwrap();
        p.set_conjugate(1, 0, vec![0, 1, 1]).unwrap();
        PcGroup::new(p).unwrap()
    }

    #[test]
    fn closures_in_d8() {
        let g = d8();
        let s = Subgroup::closure(&g, &[g.gen(2)]);
        assert_eq!(s.order(), 2);
        assert!(!s.contains(g.gen(0)));
        assert!(s.contains(g.pow(g.gen(1), 2)));
        assert!(s.contains(0));
        assert_eq!(Subgroup::closure(&g, &[]).order(), 1);
        assert_eq!(Subgroup::closure(&g, &[g.gen(0), g.gen(1)]).order(), 8);
    }

    #[test]
    fn normality_in_d8() {
        let g = d8();
        assert!(!Subgroup::closure(&g, &[g.gen(0)]).is_normal());
        let nc = Subgroup::normal_closure(&g, &[g.gen(1)]);
        assert_eq!(nc.order(), 4);
        assert!(nc.is_abelian());
        assert!(nc.elements().iter().any(|&x| g.element_order(x) == 4));
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(enumerate_subgroups(&d8(), 256, false).unwrap().len(), 10);
        let q = q8();
        let all = enumerate_subgroups(&q, 256, false).unwrap();
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|s| s.is_normal()));
        assert_eq!(enumerate_subgroups(&q, 256, true).unwrap().len(), 6);
        let cp = PcGroup::new(PcPresentation::new("C5", 5, vec![5]).unwrap()).unwrap();
        assert_eq!(enumerate_subgroups(&cp, 256, false).unwrap().len(), 2);
    }

    #[test]
    fn cap_is_a_refusal() {
        assert!(matches!(enumerate_subgroups(&d8(), 4, false), Err(ForgeError::CapExceeded { .. })));
    }

    #[test]
    fn nonprime_relative_orders() {
        // C16 as a single generator of relative order 16
        let g = PcGroup::new(PcPresentation::new("C16", 2, vec![16]).unwrap()).unwrap();
        let s = Subgroup::closure(&g, &[g.pow(g.gen(0), 12)]);
        assert_eq!(s.order(), 4);
        assert_eq!(s.leads(), &[4]);
        assert!(s.contains(g.pow(g.gen(0), 8)));
        assert!(!s.contains(g.pow(g.gen(0), 2)));
        assert_eq!(enumerate_subgroups(&g, 256, false).unwrap().len(), 5);
    }

    #[test]
    fn coordinates_round_trip() {
        let g = q8();
        let s = Subgroup::whole(&g);
        for x in g.elements() {
            let c = s.coordinates(x).unwrap();
            let y = c.iter().zip(s.gens()).fold(0, |acc, (&e, &h)| g.mul(acc, g.pow(h, e as i64)));
            assert_eq!(x, y);
        }
    }
}
