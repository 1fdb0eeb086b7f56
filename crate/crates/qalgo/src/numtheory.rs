//! Classical arithmetic: gcd, modular powers and inverses, orders,
//! continued fractions and the factoring screens.
//!
//! Everything is arbitrary precision; arguments accept anything convertible
//! into a [`BigUint`].

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

/// A convergent `p/q` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigUint,
    pub q: BigUint,
}

pub fn gcd(a: impl Into<BigUint>, b: impl Into<BigUint>) -> Result<BigUint> {
    let (a, b) = (a.into(), b.into());
    if a.is_zero() && b.is_zero() {
        return domain("gcd(0, 0) is undefined");
    }
    Ok(a.gcd(&b))
}

/// `a^e mod n` by repeated squaring.
pub fn mod_pow(a: impl Into<BigUint>, e: impl Into<BigUint>, n: impl Into<BigUint>) -> Result<BigUint> {
    let n = n.into();
    if n < BigUint::from(2u32) {
        return domain("modulus must be at least 2");
    }
    Ok(a.into().modpow(&e.into(), &n))
}

/// Smallest `r > 0` with `a^r ≡ 1 (mod n)`, by brute force.
pub fn mult_order(a: impl Into<BigUint>, n: impl Into<BigUint>) -> Result<BigUint> {
    let (a, n) = (a.into(), n.into());
    if n < BigUint::from(2u32) {
        return domain("modulus must be at least 2");
    }
    if !a.gcd(&n).is_one() {
        return domain(format!("{a} is not a unit modulo {n}"));
    }
    let a = &a % &n;
    let mut r = BigUint::one();
    let mut x = a.clone();
    while !x.is_one() {
        x = (&x * &a) % &n;
        r += 1u32;
    }
    Ok(r)
}

/// The inverse of `a` modulo `n`, in `(0, n)`.
pub fn mod_inverse(a: impl Into<BigUint>, n: impl Into<BigUint>) -> Result<BigUint> {
    let (a, n) = (a.into(), n.into());
    if n < BigUint::from(2u32) {
        return domain("modulus must be at least 2");
    }
    let (a, m) = (BigInt::from(a), BigInt::from(n.clone()));
    let ext = a.extended_gcd(&m);
    if !ext.gcd.abs().is_one() {
        return domain(format!("{a} is not a unit modulo {n}"));
    }
    let inv = ext.x.mod_floor(&m);
    Ok(inv.to_biguint().expect("mod_floor is non-negative"))
}

/// Coefficients `[b₁, …, b_z]` of `p/q = 1/(b₁ + 1/(b₂ + …))` for `0 < p < q`.
pub fn continued_fraction(p: impl Into<BigUint>, q: impl Into<BigUint>) -> Result<Vec<BigUint>> {
    let (mut p, mut q) = (p.into(), q.into());
    if p.is_zero() || p >= q {
        return domain("continued fractions need 0 < p < q");
    }
    let mut coeffs = Vec::new();
    while !p.is_zero() {
        let (b, rem) = q.div_rem(&p);
        coeffs.push(b);
        q = p;
        p = rem;
    }
    Ok(coeffs)
}

/// Successive convergents `[b₁], [b₁,b₂], …` of a coefficient list.
pub fn convergents(coeffs: &[BigUint]) -> Vec<Convergent> {
    let (mut h2, mut h1) = (BigUint::one(), BigUint::zero());
    let (mut k2, mut k1) = (BigUint::zero(), BigUint::one());
    coeffs
        .iter()
        .map(|b| {
            let h = b * &h1 + &h2;
            let k = b * &k1 + &k2;
            h2 = std::mem::replace(&mut h1, h.clone());
            k2 = std::mem::replace(&mut k1, k.clone());
            Convergent { p: h, q: k }
        })
        .collect()
}

/// Denominator of the last convergent of `ell/q` whose denominator is below `n`.
///
/// `None` for `ell = 0` or when even the first denominator is too large.
pub fn best_order_candidate(
    ell: impl Into<BigUint>,
    q: impl Into<BigUint>,
    n: impl Into<BigUint>,
) -> Result<Option<BigUint>> {
    let (ell, q, n) = (ell.into(), q.into(), n.into());
    if ell >= q {
        return domain("need 0 ≤ ell < q");
    }
    if ell.is_zero() {
        return Ok(None);
    }
    let coeffs = continued_fraction(ell, q)?;
    Ok(convergents(&coeffs).into_iter().rfind(|c| c.q < n).map(|c| c.q))
}

/// Trial division up to `√n`.
pub fn is_prime(n: impl Into<BigUint>) -> bool {
    let n = n.into();
    let two = BigUint::from(2u32);
    if n < two {
        return false;
    }
    if n.is_even() {
        return n == two;
    }
    let mut d = BigUint::from(3u32);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            return false;
        }
        d += 2u32;
    }
    true
}

/// `Some((p, k))` with `n = p^k`, `k ≥ 2` and `p` as small as possible.
pub fn is_perfect_power(n: impl Into<BigUint>) -> Option<(BigUint, u32)> {
    let n = n.into();
    if n < BigUint::from(4u32) {
        return None;
    }
    let max_k = (n.bits() - 1) as u32;
    (2..=max_k).rev().find_map(|k| {
        let root = n.nth_root(k);
        (root.pow(k) == n).then_some((root, k))
    })
}

/// Factoring screen: the order `r` of `a` is even and `a^{r/2} ≢ −1 (mod n)`.
pub fn fact3_screen(a: impl Into<BigUint>, n: impl Into<BigUint>) -> Result<bool> {
    let (a, n) = (a.into(), n.into());
    let r = mult_order(a.clone(), n.clone())?;
    if r.is_odd() {
        return Ok(false);
    }
    let half = mod_pow(a, &r >> 1u32, n.clone())?;
    Ok(half != &n - 1u32)
}

/// `⌈log₂ x⌉` for `x ≥ 1`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Exponent `m` of the smallest power of two strictly greater than `x`.
pub fn log2_pow2_above(x: u64) -> u32 {
    64 - x.leading_zeros()
}

pub(crate) fn small(b: &BigUint) -> u64 {
    b.to_u64().expect("desk-scale value fits in u64")
}

pub(crate) fn mod_pow_u64(a: u64, e: u64, n: u64) -> u64 {
    small(&BigUint::from(a).modpow(&BigUint::from(e), &BigUint::from(n)))
}
