//! Polynomial gcd over Q.
//!
//! The workloads here reach degree ~200 with kilobit coefficients
//! (consecutive-coprimality checks on deep recurrence runs), where a naive
//! rational Euclid is hopeless. The gcd is computed modularly: images over
//! word-size prime fields, CRT reconstruction with the leading-coefficient
//! scaling trick, then exact divisibility verification over Z. Verification
//! makes the result unconditional; the primitive pseudo-remainder sequence
//! remains as a fallback should every sampled prime be unlucky.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rational::{integer_gcd, mod_u64, Integer, Rational};

use super::Poly;

impl Poly<Rational> {
    /// Monic greatest common divisor.
    ///
    /// `gcd(p, 0)` is `monic(p)`; `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        let (_, a) = self.clear_denominators();
        let (_, b) = other.clear_denominators();
        let a = primitive(a);
        let b = primitive(b);
        integer_gcd_modular(&a, &b)
    }

    /// True when the gcd is constant. A single prime with a constant modular
    /// gcd already certifies coprimality, which makes this much cheaper than
    /// [`Poly::gcd`] on the deep-recurrence polynomials.
    pub fn is_coprime_with(&self, other: &Self) -> bool {
        is_coprime(self, other)
    }
}

/// See [`Poly::is_coprime_with`].
pub fn is_coprime(a: &Poly<Rational>, b: &Poly<Rational>) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_constant() || b.is_constant();
    }
    if a.is_constant() || b.is_constant() {
        return true;
    }
    let (_, za) = a.clear_denominators();
    let (_, zb) = b.clear_denominators();
    let mut checked = 0usize;
    for p in PrimeStream::new() {
        if mod_u64(za.last().unwrap(), p) == 0 || mod_u64(zb.last().unwrap(), p) == 0 {
            continue;
        }
        let ga = reduce_mod(&za, p);
        let gb = reduce_mod(&zb, p);
        if gcd_fp(ga, gb, p).len() == 1 {
            return true;
        }
        checked += 1;
        if checked >= 4 {
            break;
        }
    }
    a.gcd(b).is_one()
}

// ---------------------------------------------------------------------------
// Integer-coefficient layer
// ---------------------------------------------------------------------------

fn primitive(mut coeffs: Vec<Integer>) -> Vec<Integer> {
    let mut content = Integer::zero();
    for c in &coeffs {
        content = integer_gcd(&content, c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in &mut coeffs {
            *c = &*c / &content;
        }
    }
    coeffs
}

fn to_rational_monic(coeffs: &[Integer]) -> Poly<Rational> {
    let lead = coeffs.last().expect("nonzero").clone();
    Poly::new(
        coeffs
            .iter()
            .map(|c| Rational::new(c.clone(), lead.clone()))
            .collect(),
    )
}

fn divides(candidate: &[Integer], target: &[Integer]) -> bool {
    // Gauss: a primitive integer polynomial divides over Z iff it divides
    // over Q.
    let cand = Poly::new(candidate.iter().map(|c| Rational::from_integer(c.clone())).collect());
    let targ = Poly::new(target.iter().map(|c| Rational::from_integer(c.clone())).collect());
    targ.exact_div(&cand).is_ok()
}

fn integer_gcd_modular(a: &[Integer], b: &[Integer]) -> Poly<Rational> {
    let gamma = integer_gcd(a.last().unwrap(), b.last().unwrap());
    let mut best_degree = usize::MAX;
    // Accumulated CRT state: coefficients of gamma * monic_gcd, symmetric
    // representatives modulo `modulus`.
    let mut acc: Vec<Integer> = Vec::new();
    let mut modulus = Integer::one();
    let mut tried = 0usize;

    for p in PrimeStream::new() {
        if mod_u64(a.last().unwrap(), p) == 0 || mod_u64(b.last().unwrap(), p) == 0 {
            continue;
        }
        tried += 1;
        if tried > 64 {
            break;
        }
        let image = gcd_fp(reduce_mod(a, p), reduce_mod(b, p), p);
        let d = image.len() - 1;
        if d == 0 {
            return Poly::one();
        }
        if d < best_degree {
            best_degree = d;
            acc.clear();
            modulus = Integer::one();
        } else if d > best_degree {
            continue; // unlucky prime
        }
        let scale = mod_u64(&gamma, p);
        let scaled: Vec<u64> = image.iter().map(|&c| mul_mod(c, scale, p)).collect();
        crt_accumulate(&mut acc, &mut modulus, &scaled, p);
        let candidate = primitive(symmetric(&acc, &modulus));
        if !candidate.last().unwrap().is_zero() && divides(&candidate, a) && divides(&candidate, b) {
            return to_rational_monic(&candidate);
        }
    }

    // Every sampled prime was unlucky; fall back on the primitive PRS.
    to_rational_monic(&gcd_prs(a.to_vec(), b.to_vec()))
}

fn symmetric(acc: &[Integer], modulus: &Integer) -> Vec<Integer> {
    let half = modulus >> 1;
    acc.iter()
        .map(|c| if c > &half { c - modulus } else { c.clone() })
        .collect()
}

fn crt_accumulate(acc: &mut Vec<Integer>, modulus: &mut Integer, image: &[u64], p: u64) {
    let pi = Integer::from(p);
    if modulus.is_one() {
        *acc = image.iter().map(|&c| Integer::from(c)).collect();
        *modulus = pi;
        return;
    }
    if acc.len() < image.len() {
        acc.resize(image.len(), Integer::zero());
    }
    let m_mod_p = mod_u64(modulus, p);
    let m_inv = inv_mod(m_mod_p, p);
    for (k, slot) in acc.iter_mut().enumerate() {
        let r = image.get(k).copied().unwrap_or(0);
        let cur = mod_u64(slot, p);
        let diff = sub_mod(r, cur, p);
        let t = mul_mod(diff, m_inv, p);
        *slot += &*modulus * Integer::from(t);
    }
    *modulus *= pi;
}

/// Primitive pseudo-remainder sequence; exact but with much larger
/// intermediate coefficients than the modular route.
fn gcd_prs(mut a: Vec<Integer>, mut b: Vec<Integer>) -> Vec<Integer> {
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    primitive(a)
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a  mod  b`, exactly that
/// normalization (the subresultant bookkeeping depends on it).
pub(super) fn pseudo_rem(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    debug_assert!(!b.is_empty());
    let db = b.len() - 1;
    debug_assert!(a.len() > db, "pseudo_rem expects deg a >= deg b");
    let mut rem: Vec<Integer> = a.to_vec();
    let lead = b.last().unwrap();
    // One factor of lc(b) is consumed per elimination step; degrees can drop
    // by more than one, so the unused factors are applied at the end.
    let mut spare = a.len() - db;
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let top = rem.pop().unwrap();
        for c in rem.iter_mut() {
            *c *= lead;
        }
        for (j, bc) in b[..db].iter().enumerate() {
            rem[k + j] -= &top * bc;
        }
        spare -= 1;
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
    }
    if spare > 0 && !rem.is_empty() {
        let factor = num_traits::pow::pow(lead.clone(), spare);
        for c in rem.iter_mut() {
            *c *= &factor;
        }
    }
    rem
}

// ---------------------------------------------------------------------------
// Word-size prime fields
// ---------------------------------------------------------------------------

pub(super) fn reduce_mod(coeffs: &[Integer], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = coeffs.iter().map(|c| mod_u64(c, p)).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

pub(super) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(super) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(super) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(super) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Monic gcd over F_p. Inputs trimmed; at least one nonzero.
pub(super) fn gcd_fp(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        rem_fp(&mut a, &b, p);
        core::mem::swap(&mut a, &mut b);
    }
    let inv = inv_mod(*a.last().expect("nonzero gcd input"), p);
    for c in &mut a {
        *c = mul_mod(*c, inv, p);
    }
    a
}

fn rem_fp(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let lead_inv = inv_mod(*b.last().unwrap(), p);
    while a.len() > db {
        let k = a.len() - 1 - db;
        let factor = mul_mod(*a.last().unwrap(), lead_inv, p);
        a.pop();
        if factor != 0 {
            for (j, bc) in b[..db].iter().enumerate() {
                let t = mul_mod(factor, *bc, p);
                a[k + j] = sub_mod(a[k + j], t, p);
            }
        }
        while a.last() == Some(&0) {
            a.pop();
        }
        if a.len() <= db {
            break;
        }
    }
}

// ---------------------------------------------------------------------------
// Deterministic word-size primes
// ---------------------------------------------------------------------------

/// Descending stream of primes just below 2^62, fixed across runs so every
/// modular computation is reproducible.
pub(super) struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    pub(super) fn new() -> Self {
        PrimeStream { next: (1 << 62) - 1 }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            let candidate = self.next;
            self.next -= 2;
            if is_prime_u64(candidate) {
                return Some(candidate);
            }
        }
    }
}

/// Deterministic Miller-Rabin primality for u64 (the listed bases are
/// proven sufficient below 3.3e24).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
