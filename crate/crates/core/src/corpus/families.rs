//! Standard desk-scale families as refined pc presentations.

use crate::error::{ForgeError, Result};
use crate::pc::presentation::log_p;
use crate::pc::{PcGroup, PcPresentation};

fn bad(msg: impl Into<String>) -> ForgeError {
    ForgeError::InvalidArgument(msg.into())
}

/// Base-`p` digits of `value` as an exponent vector over `x_{first}..x_{first+m-1}`.
fn digits(n: usize, first: usize, m: usize, p: u64, mut value: u64) -> Vec<u32> {
    let mut e = vec![0u32; n];
    for k in 0..m {
        e[first + k] = (value % p) as u32;
        value /= p;
    }
    e
}

/// `<a, b | b^{p^m} = 1, a^p = b^{a_pow}, b^a = b^e>` with `b` refined into
/// `b_i = b^{p^{i-1}}`, `i = 1..m`.
pub fn cyclic_extension(name: &str, p: u32, m: u32, a_pow: u64, e: u64) -> Result<PcGroup> {
    let pp = p as u64;
    let bm = pp.pow(m);
    let n = m as usize + 1;
    let mut pres = PcPresentation::new(name, p, vec![p; n])?;
    pres.set_power(0, digits(n, 1, m as usize, pp, a_pow % bm))?;
    for i in 1..m as usize {
        let mut w = vec![0; n];
        w[i + 1] = 1;
        pres.set_power(i, w)?;
    }
    for i in 1..=m as usize {
        let shift = pp.pow(i as u32 - 1);
        let v = (e % bm) * shift % bm;
        pres.set_conjugate(i, 0, digits(n, 1, m as usize, pp, v))?;
    }
    PcGroup::new(pres)
}

/// Split metacyclic group `C_{p^m} ⋊ C_{p^n}` with `b^a = b^e`; needs
/// `e^{p^n} ≡ 1 (mod p^m)`.
pub fn split_metacyclic(p: u32, m: u32, n: u32, e: u64) -> Result<PcGroup> {
    let pp = p as u64;
    let bm = pp.pow(m);
    if m == 0 || n == 0 {
        return Err(bad("both cyclic factors must be nontrivial"));
    }
    let mut t = 1u64;
    for _ in 0..pp.pow(n) {
        t = t * e % bm;
    }
    if t != 1 || e.is_multiple_of(pp) {
        return Err(bad(format!("{e} does not define an action of order dividing {}", pp.pow(n))));
    }
    let (nu, mu) = (n as usize, m as usize);
    let total = nu + mu;
    let name = format!("C{}:C{}", bm, pp.pow(n));
    let mut pres = PcPresentation::new(name, p, vec![p; total])?;
    for i in (0..total - 1).filter(|&i| i + 1 != nu) {
        let mut w = vec![0; total];
        w[i + 1] = 1;
        pres.set_power(i, w)?;
    }
    let mut f = e % bm;
    for i in 0..nu {
        for j in 0..mu {
            let v = f * pp.pow(j as u32) % bm;
            pres.set_conjugate(nu + j, i, digits(total, nu, mu, pp, v))?;
        }
        let mut next = 1u64;
        for _ in 0..p {
            next = next * f % bm;
        }
        f = next;
    }
    PcGroup::new(pres)
}

fn two_power_exp(order: u64, min: u32) -> Result<u32> {
    match log_p(2, order) {
        Some(n) if n >= min => Ok(n),
        _ => Err(bad(format!("order {order} must be 2^n with n >= {min}"))),
    }
}

/// Dihedral group of the given order `2^n`, `n >= 2`.
pub fn dihedral(order: u64) -> Result<PcGroup> {
    let n = two_power_exp(order, 2)?;
    let m = n - 1;
    cyclic_extension(&format!("D{order}"), 2, m, 0, (1u64 << m) - 1)
}

/// Generalized quaternion group of order `2^n`, `n >= 3`.
pub fn quaternion(order: u64) -> Result<PcGroup> {
    let n = two_power_exp(order, 3)?;
    let m = n - 1;
    cyclic_extension(&format!("Q{order}"), 2, m, 1u64 << (m - 1), (1u64 << m) - 1)
}

/// Semidihedral group of order `2^n`, `n >= 4`.
pub fn semidihedral(order: u64) -> Result<PcGroup> {
    let n = two_power_exp(order, 4)?;
    let m = n - 1;
    cyclic_extension(&format!("SD{order}"), 2, m, 0, (1u64 << (m - 1)) - 1)
}

/// Modular group `M_{p^n}`: `b^a = b^{1+p^{n-2}}`; needs `n >= 3` (`n >= 4` for `p = 2`).
pub fn modular(p: u32, n: u32) -> Result<PcGroup> {
    let min = if p == 2 { 4 } else { 3 };
    if n < min {
        return Err(bad(format!("modular group needs n >= {min}")));
    }
    let m = n - 1;
    let pp = p as u64;
    cyclic_extension(&format!("M{}", pp.pow(n)), p, m, 0, 1 + pp.pow(m - 1))
}

/// Extraspecial group of order `p^3` for odd `p`; exponent `p^2` when `big_exponent`.
pub fn extraspecial(p: u32, big_exponent: bool) -> Result<PcGroup> {
    if p == 2 {
        return Err(bad("use dihedral(8) or quaternion(8) for p = 2"));
    }
    if big_exponent {
        let mut g = modular(p, 3)?;
        let mut pres = g.presentation().clone();
        pres.set_name(format!("ES{}b", p.pow(3)));
        g = PcGroup::new(pres)?;
        return Ok(g);
    }
    let mut pres = PcPresentation::new(format!("ES{}", p.pow(3)), p, vec![p; 3])?;
    pres.set_conjugate(1, 0, vec![0, 1, 1])?;
    PcGroup::new(pres)
}

/// Abelian group with the given cyclic factors, one generator per factor.
pub fn abelian(p: u32, factors: &[u64]) -> Result<PcGroup> {
    let mut rel = Vec::new();
    for &f in factors {
        if log_p(p, f).filter(|&k| k > 0).is_none() || f > u32::MAX as u64 {
            return Err(bad(format!("factor {f} is not a nontrivial power of {p}")));
        }
        rel.push(f as u32);
    }
    let name = format!("C{}", factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("xC"));
    let name = if factors.is_empty() { "C1".to_string() } else { name };
    PcGroup::new(PcPresentation::new(name, p, rel)?)
}

/// Group of order `p^4` and class 3 for odd `p`: `x1` acts on the elementary
/// abelian `<x2, x3, x4>` by a single Jordan block.
pub fn maximal_class_p4(p: u32) -> Result<PcGroup> {
    if p == 2 {
        return Err(bad("p must be odd"));
    }
    let mut pres = PcPresentation::new(format!("MC{}", p.pow(4)), p, vec![p; 4])?;
    pres.set_conjugate(1, 0, vec![0, 1, 1, 0])?;
    pres.set_conjugate(2, 0, vec![0, 0, 1, 1])?;
    PcGroup::new(pres)
}

/// `C_3 ≀ C_3`, order 81, class 3.
pub fn wreath_c3() -> Result<PcGroup> {
    let mut pres = maximal_class_p4(3)?.presentation().clone();
    pres.set_name("C3wrC3");
    PcGroup::new(pres)
}

/// `G × H` with the generators of `G` first.
pub fn direct_product(g: &PcGroup, h: &PcGroup) -> Result<PcGroup> {
    if g.prime() != h.prime() {
        return Err(bad("direct product of groups for different primes"));
    }
    let (a, b) = (g.presentation(), h.presentation());
    let (na, nb) = (a.n_gens(), b.n_gens());
    let n = na + nb;
    let mut rel = a.rel_orders().to_vec();
    rel.extend_from_slice(b.rel_orders());
    let mut pres = PcPresentation::new(format!("{}x{}", g.name(), h.name()), g.prime(), rel)?;
    let embed = |w: &[u32], off: usize| {
        let mut e = vec![0u32; n];
        e[off..off + w.len()].copy_from_slice(w);
        e
    };
    for i in 0..na {
        pres.set_power(i, embed(a.power(i), 0))?;
        for j in i + 1..na {
            pres.set_conjugate(j, i, embed(a.conjugate(j, i), 0))?;
        }
    }
    for i in 0..nb {
        pres.set_power(na + i, embed(b.power(i), na))?;
        for j in i + 1..nb {
            pres.set_conjugate(na + j, na + i, embed(b.conjugate(j, i), na))?;
        }
    }
    PcGroup::new(pres)
}
