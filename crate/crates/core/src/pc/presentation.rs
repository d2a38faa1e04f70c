//! Power-commutator presentations over a prime `p`.
//!
//! Generators are indexed from zero internally and named `x1..xn` in text.
//! A presentation stores, for every generator `g_i`, the normal form of
//! `g_i^{m_i}` (a word in `g_{i+1}..g_n`) and, for every `j > i`, the normal
//! form of the conjugate `g_j^{g_i}` (a word in `g_j..g_n` whose leading
//! exponent is prime to `p`).

use std::fmt::Write as _;

use crate::error::{ForgeError, Result};

/// Exponent vector of a normal-form word.
pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcPresentation {
    name: String,
    prime: u32,
    rel_orders: Vec<u32>,
    powers: Vec<Exponents>,
    /// `conjugates[j][i]` for `i < j`.
    conjugates: Vec<Vec<Exponents>>,
}

/// A failed consistency test word together with the two normal forms it
/// collected to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyViolation {
    pub test_word: String,
    pub left: Exponents,
    pub right: Exponents,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Consistency {
    Pass,
    Violations(Vec<ConsistencyViolation>),
}

impl Consistency {
    pub fn is_pass(&self) -> bool {
        matches!(self, Consistency::Pass)
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Returns `k` with `q = p^k`, or `None` when `q` is not a positive power of `p`.
pub(crate) fn log_p(p: u32, mut q: u64) -> Option<u32> {
    if q == 0 {
        return None;
    }
    let mut k = 0;
    while q > 1 {
        if !q.is_multiple_of(p as u64) {
            return None;
        }
        q /= p as u64;
        k += 1;
    }
    Some(k)
}

impl PcPresentation {
    /// A presentation with the given relative orders and all relations
    /// trivial (`g_i^{m_i} = 1`, generators commute).
    pub fn new(name: impl Into<String>, prime: u32, rel_orders: Vec<u32>) -> Result<Self> {
        if !is_prime(prime) {
            return Err(ForgeError::InvalidPresentation(format!("{prime} is not prime")));
        }
        for (i, &m) in rel_orders.iter().enumerate() {
            if m < prime || log_p(prime, m as u64).is_none() {
                return Err(ForgeError::InvalidPresentation(format!(
                    "relative order {m} of x{} is not a power of {prime}",
                    i + 1
                )));
            }
        }
        let n = rel_orders.len();
        let conjugates = (0..n)
            .map(|j| {
                (0..j)
                    .map(|_| {
                        let mut e = vec![0; n];
                        e[j] = 1;
                        e
                    })
                    .collect()
            })
            .collect();
        Ok(PcPresentation { name: name.into(), prime, powers: vec![vec![0; n]; n], rel_orders, conjugates })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn n_gens(&self) -> usize {
        self.rel_orders.len()
    }

    pub fn rel_orders(&self) -> &[u32] {
        &self.rel_orders
    }

    pub fn rel_order(&self, i: usize) -> u32 {
        self.rel_orders[i]
    }

    pub fn power(&self, i: usize) -> &[u32] {
        &self.powers[i]
    }

    pub fn conjugate(&self, j: usize, i: usize) -> &[u32] {
        &self.conjugates[j][i]
    }

    /// Product of the relative orders; equals the group order once the
    /// presentation is consistent.
    pub fn order_bound(&self) -> u64 {
        self.rel_orders.iter().map(|&m| m as u64).product()
    }

    fn check_word(&self, word: &[u32]) -> Result<()> {
        if word.len() != self.n_gens() {
            return Err(ForgeError::InvalidPresentation("word has wrong length".into()));
        }
        for (k, (&e, &m)) in word.iter().zip(&self.rel_orders).enumerate() {
            if e >= m {
                return Err(ForgeError::InvalidPresentation(format!(
                    "exponent {e} of x{} is not below its relative order {m}",
                    k + 1
                )));
            }
        }
        Ok(())
    }

    /// Sets `g_i^{m_i}`; the word may only involve generators after `g_i`.
    pub fn set_power(&mut self, i: usize, word: Exponents) -> Result<()> {
        self.check_word(&word)?;
        if word[..=i].iter().any(|&e| e != 0) {
            return Err(ForgeError::InvalidPresentation(format!(
                "power relation of x{} uses a generator of index <= {}",
                i + 1,
                i + 1
            )));
        }
        self.powers[i] = word;
        Ok(())
    }

    /// Sets `g_j^{g_i}` for `i < j`; the word must start with `g_j` raised to
    /// an exponent prime to `p` and otherwise use only later generators.
    pub fn set_conjugate(&mut self, j: usize, i: usize, word: Exponents) -> Result<()> {
        if i >= j {
            return Err(ForgeError::InvalidPresentation(format!(
                "conjugate relation needs j > i, got x{}^x{}",
                j + 1,
                i + 1
            )));
        }
        self.check_word(&word)?;
        if word[..j].iter().any(|&e| e != 0) {
            return Err(ForgeError::InvalidPresentation(format!(
                "conjugate x{}^x{} uses a generator of lower index",
                j + 1,
                i + 1
            )));
        }
        if word[j].is_multiple_of(self.prime) {
            return Err(ForgeError::InvalidPresentation(format!(
                "conjugate x{}^x{} must have leading exponent on x{} prime to {}",
                j + 1,
                i + 1,
                j + 1,
                self.prime
            )));
        }
        self.conjugates[j][i] = word;
        Ok(())
    }

    fn identity(&self) -> Exponents {
        vec![0; self.n_gens()]
    }

    fn generator(&self, k: usize) -> Exponents {
        let mut e = self.identity();
        e[k] = 1;
        e
    }

    // ----- collection ------------------------------------------------------

    /// Multiplies `x` on the right by the generator `g_k`, collecting from the
    /// left: `x * g_k = prefix * g_k^{e_k + 1} * tail^{g_k}`.
    fn mul_gen(&self, x: &mut [u32], k: usize) {
        let n = self.n_gens();
        let tail: Exponents = x[k + 1..].to_vec();
        x[k + 1..].iter_mut().for_each(|e| *e = 0);
        x[k] += 1;
        if x[k] == self.rel_orders[k] {
            x[k] = 0;
            x[k + 1..].copy_from_slice(&self.powers[k][k + 1..]);
        }
        if tail.iter().any(|&e| e != 0) {
            let mut moved = self.identity();
            for (off, &t) in tail.iter().enumerate() {
                let l = k + 1 + off;
                for _ in 0..t {
                    self.mul_assign(&mut moved, &self.conjugates[l][k]);
                }
            }
            debug_assert!(moved[..=k].iter().all(|&e| e == 0) && moved.len() == n);
            self.mul_assign(x, &moved);
        }
    }

    /// `x <- x * y` for normal forms `x` and `y`.
    pub(crate) fn mul_assign(&self, x: &mut [u32], y: &[u32]) {
        for (k, &e) in y.iter().enumerate() {
            for _ in 0..e {
                self.mul_gen(x, k);
            }
        }
    }

    pub(crate) fn mul(&self, x: &[u32], y: &[u32]) -> Exponents {
        let mut r = x.to_vec();
        self.mul_assign(&mut r, y);
        r
    }

    pub(crate) fn pow_nonneg(&self, x: &[u32], mut k: u64) -> Exponents {
        let mut result = self.identity();
        let mut base = x.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Order of `x`, found by repeated `p`-th powers (bounded by the order
    /// bound so that an inconsistent presentation still terminates).
    pub(crate) fn element_order(&self, x: &[u32]) -> u64 {
        let mut y = x.to_vec();
        let mut ord = 1u64;
        let bound = self.order_bound();
        while y.iter().any(|&e| e != 0) && ord <= bound {
            y = self.pow_nonneg(&y, self.prime as u64);
            ord *= self.prime as u64;
        }
        ord
    }

    pub(crate) fn inverse(&self, x: &[u32]) -> Exponents {
        let o = self.element_order(x);
        self.pow_nonneg(x, o - 1)
    }

    /// Collects a word given as a sequence of generator powers (negative
    /// exponents allowed) into its normal form.
    pub fn collect(&self, word: &[(usize, i64)]) -> Result<Exponents> {
        let mut x = self.identity();
        for &(k, e) in word {
            if k >= self.n_gens() {
                return Err(ForgeError::InvalidArgument(format!("no generator x{}", k + 1)));
            }
            let g = self.generator(k);
            let factor = if e >= 0 {
                self.pow_nonneg(&g, e as u64)
            } else {
                self.pow_nonneg(&self.inverse(&g), e.unsigned_abs())
            };
            self.mul_assign(&mut x, &factor);
        }
        Ok(x)
    }

    /// Runs every overlap test word of the rewriting system and reports the
    /// ones whose two collections disagree.
    pub fn consistency_check(&self) -> Consistency {
        let n = self.n_gens();
        let mut violations = Vec::new();
        let mut record = |name: String, left: Exponents, right: Exponents| {
            if left != right {
                violations.push(ConsistencyViolation { test_word: name, left, right });
            }
        };
        let g: Vec<Exponents> = (0..n).map(|k| self.generator(k)).collect();
        // (g_k g_j) g_i = g_k (g_j g_i)
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let left = self.mul(&self.mul(&g[k], &g[j]), &g[i]);
                    let right = self.mul(&g[k], &self.mul(&g[j], &g[i]));
                    record(format!("(x{0}*x{1})*x{2} = x{0}*(x{1}*x{2})", k + 1, j + 1, i + 1), left, right);
                }
            }
        }
        for j in 0..n {
            let mj = self.rel_orders[j] as u64;
            for i in 0..j {
                // (g_j^m) g_i = g_j^{m-1} (g_j g_i)
                let left = self.mul(&self.powers[j], &g[i]);
                let right = self.mul(&self.pow_nonneg(&g[j], mj - 1), &self.mul(&g[j], &g[i]));
                record(format!("(x{0}^{2})*x{1} = x{0}^{3}*(x{0}*x{1})", j + 1, i + 1, mj, mj - 1), left, right);
                // g_j (g_i^m) = (g_j g_i) g_i^{m-1}
                let mi = self.rel_orders[i] as u64;
                let left = self.mul(&g[j], &self.powers[i]);
                let right = self.mul(&self.mul(&g[j], &g[i]), &self.pow_nonneg(&g[i], mi - 1));
                record(format!("x{0}*(x{1}^{2}) = (x{0}*x{1})*x{1}^{3}", j + 1, i + 1, mi, mi - 1), left, right);
            }
            // (g_j^m) g_j = g_j (g_j^m)
            let left = self.mul(&self.powers[j], &g[j]);
            let right = self.mul(&g[j], &self.powers[j]);
            record(format!("(x{0}^{1})*x{0} = x{0}*(x{0}^{1})", j + 1, mj), left, right);
        }
        if violations.is_empty() {
            Consistency::Pass
        } else {
            Consistency::Violations(violations)
        }
    }

    // ----- text format -----------------------------------------------------

    /// Parses the line-oriented presentation format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut name: Option<String> = None;
        let mut prime: Option<u32> = None;
        let mut orders: Vec<Option<u32>> = Vec::new();
        let mut pending: Vec<(usize, Relation)> = Vec::new();
        let mut seen_gens = false;

        let err = |line: usize, msg: String| ForgeError::Parse { line, msg };

        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (kw, rest) = match line.split_once(char::is_whitespace) {
                Some((k, r)) => (k, r.trim()),
                None => (line, ""),
            };
            match kw {
                "group" => {
                    if rest.is_empty() {
                        return Err(err(line_no, "missing group name".into()));
                    }
                    name = Some(rest.to_string());
                }
                "prime" => {
                    let p: u32 = rest.parse().map_err(|_| err(line_no, format!("bad prime `{rest}`")))?;
                    if !is_prime(p) {
                        return Err(err(line_no, format!("{p} is not prime")));
                    }
                    prime = Some(p);
                }
                "gens" => {
                    let k: usize = rest.parse().map_err(|_| err(line_no, format!("bad generator count `{rest}`")))?;
                    if seen_gens {
                        return Err(err(line_no, "duplicate gens line".into()));
                    }
                    seen_gens = true;
                    orders = vec![None; k];
                }
                "order" => {
                    let p = prime.ok_or_else(|| err(line_no, "order before prime".into()))?;
                    let mut it = rest.split_whitespace();
                    let i = parse_index(it.next(), orders.len()).map_err(|m| err(line_no, m))?;
                    let q: u32 = it
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err(line_no, "bad relative order".into()))?;
                    if it.next().is_some() {
                        return Err(err(line_no, "trailing tokens".into()));
                    }
                    if q < p || log_p(p, q as u64).is_none() {
                        return Err(err(line_no, format!("relative order {q} is not a power of {p}")));
                    }
                    orders[i] = Some(q);
                }
                "pow" => {
                    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err(line_no, "missing `=`".into()))?;
                    let i = parse_index(Some(lhs.trim()), orders.len()).map_err(|m| err(line_no, m))?;
                    let word = parse_word(rhs.trim(), orders.len()).map_err(|m| err(line_no, m))?;
                    if let Some(&(k, _)) = word.first() {
                        if k <= i {
                            return Err(err(
                                line_no,
                                format!("power relation of x{} uses lower-index generator x{}", i + 1, k + 1),
                            ));
                        }
                    }
                    pending.push((line_no, Relation::Power(i, word)));
                }
                "conj" => {
                    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err(line_no, "missing `=`".into()))?;
                    let mut it = lhs.split_whitespace();
                    let j = parse_index(it.next(), orders.len()).map_err(|m| err(line_no, m))?;
                    let i = parse_index(it.next(), orders.len()).map_err(|m| err(line_no, m))?;
                    if it.next().is_some() {
                        return Err(err(line_no, "trailing tokens".into()));
                    }
                    if j <= i {
                        return Err(err(line_no, format!("conj needs j > i, got {} {}", j + 1, i + 1)));
                    }
                    let word = parse_word(rhs.trim(), orders.len()).map_err(|m| err(line_no, m))?;
                    if let Some(&(k, _)) = word.first() {
                        if k < j {
                            return Err(err(
                                line_no,
                                format!("conjugate x{}^x{} uses lower-index generator x{}", j + 1, i + 1, k + 1),
                            ));
                        }
                    }
                    pending.push((line_no, Relation::Conjugate(j, i, word)));
                }
                other => return Err(err(line_no, format!("unknown keyword `{other}`"))),
            }
        }

        let p = prime.ok_or_else(|| err(0, "missing prime line".into()))?;
        let rel_orders: Vec<u32> = orders.iter().map(|o| o.unwrap_or(p)).collect();
        if !seen_gens {
            return Err(err(0, "missing gens line".into()));
        }
        let mut pres = PcPresentation::new("", p, rel_orders).map_err(|e| err(0, e.to_string()))?;
        pres.name = name.unwrap_or_else(|| "unnamed".into());
        for (line_no, rel) in pending {
            match rel {
                Relation::Power(i, word) => {
                    let e = pres.word_exponents(&word).map_err(|m| err(line_no, m))?;
                    pres.set_power(i, e).map_err(|e| err(line_no, e.to_string()))?;
                }
                Relation::Conjugate(j, i, word) => {
                    let e = pres.word_exponents(&word).map_err(|m| err(line_no, m))?;
                    pres.set_conjugate(j, i, e).map_err(|e| err(line_no, e.to_string()))?;
                }
            }
        }
        Ok(pres)
    }

    fn word_exponents(&self, word: &[(usize, u32)]) -> std::result::Result<Exponents, String> {
        let mut e = self.identity();
        let mut last: Option<usize> = None;
        for &(k, x) in word {
            if last.is_some_and(|l| k <= l) {
                return Err("word is not in normal form (indices must increase)".into());
            }
            if x >= self.rel_orders[k] {
                return Err(format!(
                    "word is not in normal form (exponent {x} of x{} >= {})",
                    k + 1,
                    self.rel_orders[k]
                ));
            }
            e[k] = x;
            last = Some(k);
        }
        Ok(e)
    }

    /// Canonical text form: every `order` line, then nontrivial `pow` and
    /// `conj` relations in index order.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let n = self.n_gens();
        let _ = writeln!(s, "group {}", self.name);
        let _ = writeln!(s, "prime {}", self.prime);
        let _ = writeln!(s, "gens {n}");
        for (i, m) in self.rel_orders.iter().enumerate() {
            let _ = writeln!(s, "order {} {m}", i + 1);
        }
        for i in 0..n {
            if self.powers[i].iter().any(|&e| e != 0) {
                let _ = writeln!(s, "pow {} = {}", i + 1, format_word(&self.powers[i]));
            }
        }
        for j in 0..n {
            for i in 0..j {
                let w = &self.conjugates[j][i];
                let trivial = w.iter().enumerate().all(|(k, &e)| e == u32::from(k == j));
                if !trivial {
                    let _ = writeln!(s, "conj {} {} = {}", j + 1, i + 1, format_word(w));
                }
            }
        }
        s
    }
}

enum Relation {
    Power(usize, Vec<(usize, u32)>),
    Conjugate(usize, usize, Vec<(usize, u32)>),
}

fn parse_index(tok: Option<&str>, n: usize) -> std::result::Result<usize, String> {
    let tok = tok.ok_or("missing generator index")?;
    let tok = tok.strip_prefix('x').unwrap_or(tok);
    let i: usize = tok.parse().map_err(|_| format!("bad generator index `{tok}`"))?;
    if i == 0 || i > n {
        return Err(format!("generator index {i} out of range 1..={n}"));
    }
    Ok(i - 1)
}

/// Parses `x3^2*x5` (or `1` for the empty word) into `(index, exponent)` pairs.
pub(crate) fn parse_word(text: &str, n: usize) -> std::result::Result<Vec<(usize, u32)>, String> {
    let text = text.trim();
    if text.is_empty() || text == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for factor in text.split('*') {
        let factor = factor.trim();
        let (g, e) = match factor.split_once('^') {
            Some((g, e)) => (g.trim(), e.trim().parse::<u32>().map_err(|_| format!("bad exponent in `{factor}`"))?),
            None => (factor, 1),
        };
        let idx = g.strip_prefix('x').ok_or_else(|| format!("bad generator `{g}`"))?;
        let i: usize = idx.parse().map_err(|_| format!("bad generator `{g}`"))?;
        if i == 0 || i > n {
            return Err(format!("generator x{i} out of range 1..={n}"));
        }
        if e > 0 {
            out.push((i - 1, e));
        }
    }
    Ok(out)
}

pub(crate) fn format_word(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(k, &x)| if x == 1 { format!("x{}", k + 1) } else { format!("x{}^{x}", k + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}
