//! Resultants and discriminants via the fraction-free subresultant
//! pseudo-remainder sequence.
//!
//! Rational inputs are cleared to integer polynomials first and the scale is
//! divided back out at the end, so no rational arithmetic happens inside the
//! chain. The discriminant convention is fixed once here:
//!
//! `disc(a) = (-1)^(d(d-1)/2) * res(a, a') / lc(a)`,  d = deg a.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{Integer, Rational};

use super::gcd::pseudo_rem;
use super::Poly;

/// Resultant of two rational polynomials.
///
/// Conventions at the edges: if either input is zero the resultant is zero
/// unless the other is a nonzero constant; the resultant of two nonzero
/// constants is one (empty Sylvester matrix).
pub fn resultant(a: &Poly<Rational>, b: &Poly<Rational>) -> Rational {
    match (a.degree(), b.degree()) {
        (None, None) => Rational::zero(),
        (None, Some(0)) | (Some(0), None) => Rational::one(),
        (None, Some(_)) | (Some(_), None) => Rational::zero(),
        (Some(da), Some(db)) => {
            let (alpha, za) = a.clear_denominators();
            let (beta, zb) = b.clear_denominators();
            let res = resultant_integer(za, zb);
            // res(A/alpha, B/beta) = res(A, B) / (alpha^db * beta^da)
            let scale = Rational::new(
                Integer::one(),
                num_traits::pow::pow(alpha, db) * num_traits::pow::pow(beta, da),
            );
            Rational::from_integer(res) * scale
        }
    }
}

/// Discriminant under the convention documented on [`resultant`].
pub fn discriminant(a: &Poly<Rational>) -> Result<Rational> {
    let d = match a.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ConstantPolynomial),
    };
    let res = resultant(a, &a.derivative());
    let sign = if (d * (d - 1) / 2) % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    Ok(sign * res / a.leading())
}

/// Subresultant PRS resultant over Z (Cohen, Algorithm 3.3.7).
fn resultant_integer(a: Vec<Integer>, b: Vec<Integer>) -> Integer {
    let (mut a, mut b, sign) = if a.len() < b.len() {
        let flip = ((a.len() - 1) * (b.len() - 1)) % 2 == 1;
        (b, a, if flip { -Integer::one() } else { Integer::one() })
    } else {
        (a, b, Integer::one())
    };

    // Pull contents out; they re-enter through res(cA, B) = c^(deg B) res(A, B).
    let ca = extract_content(&mut a);
    let cb = extract_content(&mut b);
    let mut t = num_traits::pow::pow(ca, b.len() - 1) * num_traits::pow::pow(cb, a.len() - 1);
    t *= &sign;

    let mut g = Integer::one();
    let mut h = Integer::one();
    while b.len() > 1 {
        let delta = a.len() - b.len();
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            t = -t;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return Integer::zero();
        }
        a = b;
        let divisor = &g * num_traits::pow::pow(h.clone(), delta);
        b = r.into_iter().map(|c| c / &divisor).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            // h <- g^delta / h^(delta - 1), exact in Z
            num_traits::pow::pow(g.clone(), delta) / num_traits::pow::pow(h, delta - 1)
        };
    }
    // deg b == 0 here
    let da = a.len() - 1;
    let lead = b[0].clone();
    let final_h = num_traits::pow::pow(lead, da) / num_traits::pow::pow(h, da.saturating_sub(1));
    t * final_h
}

fn extract_content(coeffs: &mut [Integer]) -> Integer {
    let mut content = Integer::zero();
    for c in coeffs.iter() {
        content = crate::rational::integer_gcd(&content, c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in coeffs.iter_mut() {
            *c = &*c / &content;
        }
    }
    if content.is_zero() {
        Integer::one()
    } else {
        content
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn p(coeffs: &[i64]) -> Poly<Rational> {
        Poly::from_integers(coeffs)
    }

    /// Sylvester-matrix resultant by Gaussian elimination — an oracle
    /// independent of the PRS route.
    #[allow(clippy::needless_range_loop)]
    fn sylvester_resultant(a: &Poly<Rational>, b: &Poly<Rational>) -> Rational {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let n = da + db;
        let mut m = alloc::vec![alloc::vec![Rational::zero(); n]; n];
        for row in 0..db {
            for (k, c) in a.coeffs().iter().enumerate() {
                m[row][row + da - k] = c.clone();
            }
        }
        for row in 0..da {
            for (k, c) in b.coeffs().iter().enumerate() {
                m[db + row][row + db - k] = c.clone();
            }
        }
        // Plain fraction Gaussian elimination; exact over Q.
        let mut det = Rational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero());
            let Some(pr) = pivot else { return Rational::zero() };
            if pr != col {
                m.swap(pr, col);
                det = -det;
            }
            let pv = m[col][col].clone();
            det *= &pv;
            for r in col + 1..n {
                let factor = &m[r][col] / &pv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = &m[col][c] * &factor;
                    m[r][c] -= sub;
                }
            }
        }
        det
    }

    #[test]
    fn quadratic_discriminants() {
        assert_eq!(discriminant(&p(&[1, -5, 5])).unwrap(), rat(5));
        assert_eq!(discriminant(&p(&[-1, 0, 1])).unwrap(), rat(4));
    }

    #[test]
    fn cubic_discriminant_against_closed_form() {
        // 20t^3 - 30t^2 + 12t - 1; closed form
        // 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2 gives 2160.
        let cubic = p(&[-1, 12, -30, 20]);
        let (a, b, c, d) = (rat(20), rat(-30), rat(12), rat(-1));
        let closed = rat(18) * &a * &b * &c * &d - rat(4) * &b * &b * &b * &d
            + &b * &b * &c * &c
            - rat(4) * &a * &c * &c * &c
            - rat(27) * &a * &a * &d * &d;
        assert_eq!(closed, rat(2160));
        assert_eq!(discriminant(&cubic).unwrap(), rat(2160));
    }

    #[test]
    fn constant_polynomial_rejected() {
        assert!(matches!(discriminant(&p(&[7])), Err(Error::ConstantPolynomial)));
        assert!(matches!(
            discriminant(&Poly::zero()),
            Err(Error::ConstantPolynomial)
        ));
    }

    #[test]
    fn resultant_edge_conventions() {
        assert_eq!(resultant(&p(&[3]), &p(&[0, 1])), rat(3));
        assert_eq!(resultant(&p(&[0, 1]), &p(&[3])), rat(3));
        assert_eq!(resultant(&p(&[5]), &p(&[7])), rat(1));
        assert_eq!(resultant(&Poly::zero(), &p(&[1, 1])), rat(0));
    }

    #[test]
    fn matches_sylvester_oracle() {
        let mut seed: u64 = 7;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 58) as i64) - 16
        };
        for _ in 0..40 {
            let a = Poly::new((0..5).map(|_| rat(next())).collect::<Vec<_>>());
            let b = Poly::new((0..4).map(|_| rat(next())).collect::<Vec<_>>());
            if a.degree().unwrap_or(0) == 0 || b.degree().unwrap_or(0) == 0 {
                continue;
            }
            assert_eq!(resultant(&a, &b), sylvester_resultant(&a, &b), "a={a} b={b}");
            assert_eq!(resultant(&b, &a), sylvester_resultant(&b, &a), "swap a={a} b={b}");
        }
    }

    #[test]
    fn rational_scaling() {
        // res(a/2, b) = res(a, b) / 2^(deg b)
        let a = p(&[1, 3, 1]);
        let b = p(&[2, 0, 0, 1]);
        let half = a.mul_rational(&ratio(1, 2));
        assert_eq!(resultant(&half, &b), resultant(&a, &b) / rat(8));
    }

    #[test]
    fn zero_iff_common_factor() {
        let g = p(&[-2, 1]);
        let a = &g * &p(&[1, 1, 1]);
        let b = &g * &p(&[3, 1]);
        assert_eq!(resultant(&a, &b), rat(0));
        assert!(!resultant(&p(&[1, 1, 1]), &p(&[3, 1])).is_zero());
    }
}
