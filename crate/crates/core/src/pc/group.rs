use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{ForgeError, Result};
use crate::pc::presentation::{Consistency, Exponents, PcPresentation};

/// Elements are addressed by the mixed-radix rank of their exponent vector;
/// lexicographic order of exponent vectors equals numeric order of codes.
pub type Code = u32;

/// Groups up to this order get a full multiplication table.
pub const TABLE_LIMIT: u64 = 1024;

/// Hard upper bound on the orders the workbench will address at all.
pub const ORDER_LIMIT: u64 = 1 << 24;

/// A consistent power-commutator presentation together with lazily built
/// arithmetic caches. Cloning is cheap (shared handle).
#[derive(Clone)]
pub struct PcGroup(Arc<GroupData>);

struct GroupData {
    pres: PcPresentation,
    order: u64,
    /// `weights[k]` = product of the relative orders after `k`.
    weights: Vec<u64>,
    table: OnceLock<Option<Vec<Code>>>,
    inverses: OnceLock<Vec<Code>>,
    /// characteristic subgroups by name, stored as canonical generators
    memo: Mutex<HashMap<&'static str, Vec<Code>>>,
}

impl std::hash::Hash for PcGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.name().hash(state);
        self.order().hash(state);
    }
}

impl fmt::Debug for PcGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PcGroup({}, order {})", self.0.pres.name(), self.0.order)
    }
}

impl PartialEq for PcGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.pres == other.0.pres
    }
}

impl Eq for PcGroup {}

impl PcGroup {
    /// Validates consistency and wraps the presentation.
    pub fn new(pres: PcPresentation) -> Result<Self> {
        let order = pres.order_bound();
        if order > ORDER_LIMIT {
            return Err(ForgeError::CapExceeded { what: "group order".into(), order, cap: ORDER_LIMIT });
        }
        if let Consistency::Violations(v) = pres.consistency_check() {
            let first = &v[0];
            return Err(ForgeError::Inconsistent(format!(
                "{} test word(s) fail, first: {} gives {:?} vs {:?}",
                v.len(),
                first.test_word,
                first.left,
                first.right
            )));
        }
        let n = pres.n_gens();
        let mut weights = vec![1u64; n];
        for k in (0..n.saturating_sub(1)).rev() {
            weights[k] = weights[k + 1] * pres.rel_order(k + 1) as u64;
        }
        Ok(PcGroup(Arc::new(GroupData {
            pres,
            order,
            weights,
            table: OnceLock::new(),
            inverses: OnceLock::new(),
            memo: Mutex::new(HashMap::new()),
        })))
    }

    /// Memoizes a characteristic subgroup under `key`.
    pub(crate) fn memo_subgroup(
        &self,
        key: &'static str,
        compute: impl FnOnce() -> crate::pc::Subgroup,
    ) -> crate::pc::Subgroup {
        if let Some(gens) = self.0.memo.lock().unwrap().get(key) {
            return crate::pc::Subgroup::from_canonical(self, gens.clone());
        }
        let s = compute();
        self.0.memo.lock().unwrap().insert(key, s.gens().to_vec());
        s
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.0.pres
    }

    pub fn name(&self) -> &str {
        self.0.pres.name()
    }

    pub fn prime(&self) -> u32 {
        self.0.pres.prime()
    }

    pub fn n_gens(&self) -> usize {
        self.0.pres.n_gens()
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// `log_p |G|`.
    pub fn log_order(&self) -> u32 {
        crate::pc::presentation::log_p(self.prime(), self.order()).unwrap_or(0)
    }

    pub fn rel_order(&self, k: usize) -> u32 {
        self.0.pres.rel_order(k)
    }

    pub fn same_group(&self, other: &PcGroup) -> bool {
        self == other
    }

    pub fn identity(&self) -> Code {
        0
    }

    pub fn gen(&self, k: usize) -> Code {
        self.0.weights[k] as Code
    }

    pub fn gens(&self) -> Vec<Code> {
        (0..self.n_gens()).map(|k| self.gen(k)).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Code> {
        0..self.0.order as Code
    }

    pub fn exponents(&self, c: Code) -> Exponents {
        let mut c = c as u64;
        self.0
            .weights
            .iter()
            .map(|&w| {
                let e = c / w;
                c %= w;
                e as u32
            })
            .collect()
    }

    pub fn exponent_at(&self, c: Code, k: usize) -> u32 {
        ((c as u64 / self.0.weights[k]) % self.rel_order(k) as u64) as u32
    }

    pub fn code(&self, e: &[u32]) -> Code {
        e.iter().zip(&self.0.weights).map(|(&x, &w)| x as u64 * w).sum::<u64>() as Code
    }

    /// Index of the first nonzero exponent, `None` for the identity.
    pub fn depth(&self, c: Code) -> Option<usize> {
        if c == 0 {
            return None;
        }
        (0..self.n_gens()).find(|&k| self.exponent_at(c, k) != 0)
    }

    fn table(&self) -> Option<&Vec<Code>> {
        self.0
            .table
            .get_or_init(|| {
                if self.0.order > TABLE_LIMIT {
                    return None;
                }
                Some(self.build_table())
            })
            .as_ref()
    }

    fn build_table(&self) -> Vec<Code> {
        let ord = self.0.order as usize;
        let n = self.n_gens();
        let pres = &self.0.pres;
        // right multiplication by each generator
        let mut right = vec![0 as Code; ord * n];
        for x in 0..ord {
            let ex = self.exponents(x as Code);
            for k in 0..n {
                let mut y = ex.clone();
                let mut g = vec![0; n];
                g[k] = 1;
                pres.mul_assign(&mut y, &g);
                right[x * n + k] = self.code(&y);
            }
        }
        // x * y = (x * y') * g_l where l is the last nonzero position of y
        let mut table = vec![0 as Code; ord * ord];
        for y in 0..ord {
            if y == 0 {
                for x in 0..ord {
                    table[x * ord] = x as Code;
                }
                continue;
            }
            let l = (0..n).rev().find(|&k| self.exponent_at(y as Code, k) != 0).unwrap();
            let prev = y - self.0.weights[l] as usize;
            for x in 0..ord {
                let xy = table[x * ord + prev] as usize;
                table[x * ord + y] = right[xy * n + l];
            }
        }
        table
    }

    pub fn mul(&self, a: Code, b: Code) -> Code {
        if let Some(t) = self.table() {
            return t[a as usize * self.0.order as usize + b as usize];
        }
        let x = self.exponents(a);
        let y = self.exponents(b);
        self.code(&self.0.pres.mul(&x, &y))
    }

    pub fn inv(&self, a: Code) -> Code {
        if self.0.order <= TABLE_LIMIT {
            let inv = self.0.inverses.get_or_init(|| {
                let ord = self.0.order as Code;
                let mut v = vec![0; ord as usize];
                for x in 0..ord {
                    if v[x as usize] == 0 && x != 0 {
                        let y = (0..ord).find(|&y| self.mul(x, y) == 0).expect("finite group");
                        v[x as usize] = y;
                        v[y as usize] = x;
                    }
                }
                v
            });
            return inv[a as usize];
        }
        self.code(&self.0.pres.inverse(&self.exponents(a)))
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: Code, k: i64) -> Code {
        let (mut base, mut e) = if k < 0 { (self.inv(a), k.unsigned_abs()) } else { (a, k as u64) };
        let mut r = 0;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        r
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn comm(&self, a: Code, b: Code) -> Code {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `a^g = g^-1 a g`.
    pub fn conj(&self, a: Code, g: Code) -> Code {
        self.mul(self.inv(g), self.mul(a, g))
    }

    /// Smallest `k >= 1` with `a^k = 1`; always a power of `p`.
    pub fn element_order(&self, a: Code) -> u64 {
        let p = self.prime() as i64;
        let mut x = a;
        let mut ord = 1;
        while x != 0 {
            x = self.pow(x, p);
            ord *= p as u64;
        }
        ord
    }

    /// Evaluates the normal-form word `exps` with generator `k` replaced by
    /// `images[k]`.
    pub fn eval_word(&self, exps: &[u32], images: &[Code]) -> Code {
        exps.iter().zip(images).filter(|(&e, _)| e != 0).fold(0, |acc, (&e, &h)| self.mul(acc, self.pow(h, e as i64)))
    }

    /// Human-readable normal form such as `x1*x3^2`.
    pub fn format(&self, c: Code) -> String {
        crate::pc::presentation::format_word(&self.exponents(c))
    }

    /// Parses a word such as `x2^-1*x1*x3^2` (any order, signed exponents).
    pub fn parse_element(&self, text: &str) -> Result<Code> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(0);
        }
        let mut acc = 0;
        for factor in text.split('*') {
            let factor = factor.trim();
            let (g, e) = match factor.split_once('^') {
                Some((g, e)) => (
                    g.trim(),
                    e.trim()
                        .parse::<i64>()
                        .map_err(|_| ForgeError::InvalidArgument(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            let k: usize = g
                .strip_prefix('x')
                .and_then(|s| s.parse().ok())
                .filter(|&k: &usize| k >= 1 && k <= self.n_gens())
                .ok_or_else(|| ForgeError::InvalidArgument(format!("bad generator `{g}`")))?;
            acc = self.mul(acc, self.pow(self.gen(k - 1), e));
        }
        Ok(acc)
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
    fn d8_arithmetic() {
        let g = d8();
        let (g1, g2, g3) = (g.gen(0), g.gen(1), g.gen(2));
        assert_eq!(g.order(), 8);
        assert_eq!(g.comm(g2, g1), g3);
        assert_eq!(g.pow(g2, 2), g3);
        assert_eq!(g.element_order(g2), 4);
        assert_eq!(g.element_order(0), 1);
        assert_eq!(g.mul(g2, g1), g.code(&[1, 1, 1]));
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inv(x)), 0);
        }
    }

    #[test]
    fn table_agrees_with_collection() {
        let g = d8();
        let pres = g.presentation();
        for a in g.elements() {
            for b in g.elements() {
                let direct = g.code(&pres.mul(&g.exponents(a), &g.exponents(b)));
                assert_eq!(g.mul(a, b), direct);
            }
        }
    }

    #[test]
    fn inconsistent_presentation_rejected() {
        let mut p = PcPresentation::new("bad", 2, vec![2, 2, 2]).unwrap();
        p.set_power(0, vec![0, 1, 0]).unwrap();
        p.set_power(1, vec![0, 0, 1]).unwrap();
        p.set_conjugate(1, 0, vec![0, 1, 1]).unwrap();
        assert!(matches!(PcGroup::new(p), Err(ForgeError::Inconsistent(_))));
    }

    #[test]
    fn parse_element_words() {
        let g = d8();
        assert_eq!(g.parse_element("x2*x1").unwrap(), g.code(&[1, 1, 1]));
        assert_eq!(g.parse_element("x2^-1").unwrap(), g.code(&[0, 1, 1]));
        assert!(g.parse_element("x4").is_err());
    }
}
