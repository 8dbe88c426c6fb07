//! Exact integer and rational scalars.
//!
//! Thin aliases over `num-bigint` / `num-rational` plus the small helpers
//! (parsing, binomials, Pochhammer symbols) the rest of the crate leans on.
//! Every value is exact; nothing in this crate rounds.

use alloc::string::{String, ToString};

use num_bigint::Sign;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator (maintained by `num-rational` itself).
pub type Rational = num_rational::BigRational;

/// Rational from an `i64`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

/// Rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

/// True if the rational is an integer (denominator one after reduction).
pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Parse `"-3"` or `"5/7"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        None => text.parse::<Integer>().ok().map(Rational::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<Integer>().ok()?;
            let d = d.trim().parse::<Integer>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
    }
}

/// Render as `"num"` or `"num/den"` decimal strings.
pub fn format_rational(q: &Rational) -> String {
    if is_integral(q) {
        q.numer().to_string()
    } else {
        let mut s = q.numer().to_string();
        s.push('/');
        s.push_str(&q.denom().to_string());
        s
    }
}

/// `n!` as an [`Integer`].
pub fn factorial(n: usize) -> Integer {
    let mut acc = Integer::one();
    for k in 2..=n {
        acc *= Integer::from(k);
    }
    acc
}

/// Binomial coefficient with natural arguments; zero when `k > n`.
pub fn binomial_nat(n: usize, k: usize) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        acc = acc * Integer::from(n - i) / Integer::from(i + 1);
    }
    acc
}

/// Binomial coefficient `C(x, k)` with rational upper argument, via the
/// falling factorial `x (x-1) ... (x-k+1) / k!`. Rational parameter values
/// flow into binomials everywhere in this hierarchy, so this is the
/// definition used throughout.
pub fn binomial_falling(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= x - rat(i as i64);
    }
    acc / Rational::from_integer(factorial(k))
}

/// Pochhammer (rising factorial) `x (x+1) ... (x+k-1)`. Stands in for
/// factorial ratios so non-integer arguments stay meaningful.
pub fn pochhammer(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= x + rat(i as i64);
    }
    acc
}

/// Nonnegative gcd of two integers.
pub fn integer_gcd(a: &Integer, b: &Integer) -> Integer {
    num_integer::Integer::gcd(a, b)
}

/// Bit length of the absolute value, 0 for zero. Used by the bench command
/// to trace coefficient growth.
pub fn bit_length(n: &Integer) -> u64 {
    if n.is_zero() {
        0
    } else {
        n.abs().bits()
    }
}

/// Reduce an [`Integer`] modulo a word-size prime.
pub fn mod_u64(n: &Integer, p: u64) -> u64 {
    let (sign, digits) = n.to_u64_digits();
    let p128 = p as u128;
    let mut acc: u128 = 0;
    // Horner over base-2^64 digits, most significant first; the 2^64 shift
    // is split in two so the accumulator stays inside u128.
    for d in digits.iter().rev() {
        acc = (acc << 32) % p128;
        acc = (acc << 32) % p128;
        acc = (acc + *d as u128) % p128;
    }
    let acc = acc as u64;
    match sign {
        Sign::Minus if acc != 0 => p - acc,
        _ => acc,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "5/7", "-10/3"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
        assert_eq!(parse_rational("4/2").map(|q| format_rational(&q)).unwrap(), "2");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_nat(6, 2), Integer::from(15));
        assert_eq!(binomial_nat(2, 5), Integer::zero());
        // C(7/2, 2) = (7/2)(5/2)/2 = 35/8
        assert_eq!(binomial_falling(&ratio(7, 2), 2), ratio(35, 8));
        // falling definition agrees with the natural one on integers
        assert_eq!(binomial_falling(&rat(10), 3), rat(120));
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(1), 2), rat(2));
        assert_eq!(pochhammer(&rat(3), 0), rat(1));
        assert_eq!(pochhammer(&ratio(1, 2), 3), ratio(15, 8));
    }

    #[test]
    fn mod_u64_matches_bigint_rem() {
        let p: u64 = 0xffff_ffff_0000_0001 >> 2; // arbitrary large odd modulus
        let cases = [
            Integer::from(0),
            Integer::from(17),
            Integer::from(-17),
            Integer::parse_bytes(b"123456789012345678901234567890123456789", 10).unwrap(),
            -Integer::parse_bytes(b"99999999999999999999999999999999", 10).unwrap(),
        ];
        for n in cases {
            let expect = num_integer::Integer::mod_floor(&n, &Integer::from(p));
            assert_eq!(Integer::from(mod_u64(&n, p)), expect, "n = {n}");
        }
    }
}
