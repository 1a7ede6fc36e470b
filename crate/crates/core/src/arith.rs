//! Small-integer number theory shared by the exact modules.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)` and `g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Sum of the `k`-th powers of the positive divisors of `n`.
pub fn sigma(n: u64, k: u32) -> BigInt {
    let mut total = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    total
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Converts a rational with machine-size parts into `(numer, denom)`.
pub fn small_parts(x: &Rational) -> Option<(i64, i64)> {
    let n = i64::try_from(x.numer()).ok()?;
    let d = i64::try_from(x.denom()).ok()?;
    Some((n, d))
}

pub fn to_f64(x: &Rational) -> f64 {
    // numerator and denominator may both exceed f64 range; scale first
    let n = x.numer();
    let d = x.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    if nb < 1000 && db < 1000 {
        return big_to_f64(n) / big_to_f64(d);
    }
    let shift = (nb.max(db) - 900).max(0) as usize;
    big_to_f64(&(n >> shift)) / big_to_f64(&(d >> shift))
}

fn big_to_f64(x: &BigInt) -> f64 {
    let neg = x.is_negative();
    let mut acc = 0.0f64;
    for digit in x.magnitude().iter_u64_digits().rev() {
        acc = acc * 18446744073709551616.0 + digit as f64;
    }
    if neg {
        -acc
    } else {
        acc
    }
}

/// Converts to a machine-size exponent.
pub fn to_exponent(x: &Rational) -> Result<crate::Exponent, crate::Error> {
    let (n, d) = small_parts(x).ok_or(crate::Error::Overflow)?;
    Ok(crate::Exponent::new(n, d))
}

pub fn from_exponent(e: crate::Exponent) -> Rational {
    rat(*e.numer(), *e.denom())
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_and_factor() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
        assert_eq!(factor(360), alloc::vec![(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn sigma_small() {
        assert_eq!(sigma(6, 1), BigInt::from(12));
        assert_eq!(sigma(4, 3), BigInt::from(1 + 8 + 64));
    }

    #[test]
    fn ext_gcd_signs() {
        for (a, b) in [(3, 5), (-4, 7), (0, 5), (6, -9)] {
            let (g, x, y) = ext_gcd(a, b);
            assert_eq!(a * x + b * y, g);
            assert!(g >= 0);
        }
    }

    #[test]
    fn frac_negative() {
        assert_eq!(frac(&rat(-1, 4)), rat(3, 4));
        assert_eq!(frac(&rat(5, 2)), rat(1, 2));
    }

    #[test]
    fn float_conversion() {
        assert_eq!(to_f64(&rat(-3, 4)), -0.75);
        let huge = Rational::new(BigInt::from(3) << 2000usize, BigInt::from(1) << 2001usize);
        assert!((to_f64(&huge) - 1.5).abs() < 1e-15);
    }
}
