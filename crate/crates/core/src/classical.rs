//! q-expansions of eta, the Jacobi theta constants, g₂, g₃, Δ and j.
//!
//! `g₂` and `g₃` come from the Eisenstein q-expansions with the lattice-sum
//! normalization housed in the `(2πi)`-power: `g₂ = (2πi)⁴·E₄/12` and
//! `g₃ = (2πi)⁶·(−E₆/216)`. All coefficients are rational.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{rat, sigma};
use crate::qseries::{product_family, Factor};
use crate::{Cyclotomic, Error, Exponent, PuiseuxSeries, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theta {
    Two,
    Three,
    Four,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eisenstein {
    G2,
    G3,
}

/// `∏_{n≥1} (1 − qⁿ)` known below `trunc`.
pub fn euler_product(trunc: Exponent) -> PuiseuxSeries {
    let top = trunc.ceil().to_integer().max(0);
    let factors: Vec<Factor> =
        (1..=top).map(|n| Factor::new(Cyclotomic::from_int(1), Exponent::from_integer(n), 1)).collect();
    product_family(&factors, trunc).expect("no vanishing factors")
}

/// Dedekind eta `q^{1/24} ∏ (1 − qⁿ)`.
pub fn eta(trunc: Exponent) -> Result<PuiseuxSeries, Error> {
    let lead = Exponent::new(1, 24);
    if trunc <= lead {
        return Err(Error::InvalidTruncation);
    }
    Ok(euler_product(trunc - lead).shift(lead))
}

/// `θ₂ = Σ q^{(n+1/2)²/2}`, `θ₃ = Σ q^{n²/2}`, `θ₄ = Σ (−1)ⁿ q^{n²/2}`, summed over all `n`
/// whose exponent lies below `trunc`.
pub fn theta_classical(which: Theta, trunc: Exponent) -> PuiseuxSeries {
    let mut terms: Vec<(i64, Cyclotomic)> = Vec::new();
    let denom = match which {
        Theta::Two => 8,
        Theta::Three | Theta::Four => 2,
    };
    let limit = (trunc * denom).ceil().to_integer();
    let mut n: i64 = 0;
    loop {
        // n ≥ 0 here; the n ↦ −n (θ₃, θ₄) or n ↦ −n−1 (θ₂) partner doubles it
        let (k, mult, sign) = match which {
            Theta::Two => ((2 * n + 1) * (2 * n + 1), 2, 1),
            Theta::Three => (n * n, if n == 0 { 1 } else { 2 }, 1),
            Theta::Four => (n * n, if n == 0 { 1 } else { 2 }, if n % 2 == 0 { 1 } else { -1 }),
        };
        if k >= limit {
            break;
        }
        terms.push((k, Cyclotomic::from_int(mult * sign)));
        n += 1;
    }
    PuiseuxSeries::from_terms(denom, terms, trunc, 0)
}

fn eisenstein_e(constant: i64, weight_minus_one: u32, trunc: Exponent) -> Vec<(i64, Rational)> {
    let top = trunc.ceil().to_integer();
    let mut out = Vec::new();
    if top > 0 {
        out.push((0, rat(1, 1)));
    }
    for n in 1..top {
        out.push((n, Rational::from_integer(sigma(n as u64, weight_minus_one) * constant)));
    }
    out
}

pub fn eisenstein(which: Eisenstein, trunc: Exponent) -> PuiseuxSeries {
    let (series, scale, tag) = match which {
        Eisenstein::G2 => (eisenstein_e(240, 3, trunc), rat(1, 12), 4),
        Eisenstein::G3 => (eisenstein_e(-504, 5, trunc), rat(-1, 216), 6),
    };
    let terms = series
        .into_iter()
        .map(|(k, c)| (k, Cyclotomic::from_rational(c * &scale)))
        .filter(|(_, c)| !c.is_zero());
    PuiseuxSeries::from_terms(1, terms, trunc, tag)
}

/// `Δ = g₂³ − 27 g₃²`, with `(2πi)`-power 12.
pub fn discriminant(trunc: Exponent) -> PuiseuxSeries {
    let g2 = eisenstein(Eisenstein::G2, trunc);
    let g3 = eisenstein(Eisenstein::G3, trunc);
    let g2_cubed = g2.pow(3).expect("positive power");
    let g3_squared = g3.mul(&g3).scale_int(27);
    g2_cubed.try_sub(&g3_squared).expect("both have (2πi)-power 12")
}

/// `j = 1728 g₂³ / Δ`.
pub fn j_function(trunc: Exponent) -> Result<PuiseuxSeries, Error> {
    if trunc <= Exponent::from_integer(-1) {
        return Err(Error::InvalidTruncation);
    }
    // 1/Δ loses two orders of precision: ord Δ = 1
    let work = trunc + 2;
    let g2 = eisenstein(Eisenstein::G2, work);
    let delta = discriminant(work);
    let j = g2.pow(3)?.mul(&delta.inv()?).scale_int(1728);
    Ok(j.truncate(trunc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(n: i64) -> Exponent {
        Exponent::from_integer(n)
    }

    fn coeff_int(s: &PuiseuxSeries, e: Exponent) -> Rational {
        s.coeff(e).unwrap().as_rational().unwrap().clone()
    }

    /// Euler's pentagonal theorem, enumerated independently of any product.
    fn pentagonal_oracle(limit: i64) -> Vec<i64> {
        let mut out = alloc::vec![0i64; limit as usize];
        for m in -limit..=limit {
            let k = m * (3 * m - 1) / 2;
            if (0..limit).contains(&k) {
                out[k as usize] += if m % 2 == 0 { 1 } else { -1 };
            }
        }
        out
    }

    #[test]
    fn eta_coefficients() {
        let e = eta(ex(30)).unwrap();
        assert_eq!(e.two_pi_i_power(), 0);
        assert_eq!(e.leading().unwrap().0, Exponent::new(1, 24));
        let oracle = pentagonal_oracle(29);
        for (k, want) in oracle.iter().enumerate() {
            let got = coeff_int(&e, Exponent::new(1, 24) + k as i64);
            assert_eq!(got, rat(*want, 1), "q^(1/24 + {})", k);
        }
        assert_eq!(coeff_int(&e, Exponent::new(25, 24)), rat(-1, 1));
        assert_eq!(coeff_int(&e, Exponent::new(121, 24)), rat(1, 1));
        assert_eq!(eta(Exponent::new(1, 24)), Err(Error::InvalidTruncation));
    }

    #[test]
    fn theta_leading_terms() {
        let t3 = theta_classical(Theta::Three, ex(5));
        assert_eq!(coeff_int(&t3, ex(0)), rat(1, 1));
        assert_eq!(coeff_int(&t3, Exponent::new(1, 2)), rat(2, 1));
        let t4 = theta_classical(Theta::Four, ex(5));
        assert_eq!(coeff_int(&t4, Exponent::new(1, 2)), rat(-2, 1));
        assert_eq!(coeff_int(&t4, ex(2)), rat(2, 1));
        let t2 = theta_classical(Theta::Two, ex(5));
        assert_eq!(t2.leading().unwrap().0, Exponent::new(1, 8));
        assert_eq!(coeff_int(&t2, Exponent::new(1, 8)), rat(2, 1));
        assert_eq!(coeff_int(&t2, Exponent::new(9, 8)), rat(2, 1));
    }

    #[test]
    fn eisenstein_normalization() {
        let g2 = eisenstein(Eisenstein::G2, ex(5));
        assert_eq!(g2.two_pi_i_power(), 4);
        assert_eq!(coeff_int(&g2, ex(0)), rat(1, 12));
        assert_eq!(coeff_int(&g2, ex(1)), rat(20, 1));
        let g3 = eisenstein(Eisenstein::G3, ex(5));
        assert_eq!(g3.two_pi_i_power(), 6);
        assert_eq!(coeff_int(&g3, ex(0)), rat(-1, 216));
        assert_eq!(coeff_int(&g3, ex(1)), rat(7, 3));
    }

    #[test]
    fn discriminant_is_eta_24() {
        let d = discriminant(ex(30));
        assert_eq!(d.two_pi_i_power(), 12);
        assert_eq!(d.ord(), Some(ex(1)));
        let e24 = eta(ex(30)).unwrap().pow(24).unwrap().with_two_pi_i_power(12);
        assert_eq!(d.truncate(e24.trunc()), e24.truncate(d.trunc()));
        assert_eq!(coeff_int(&d, ex(2)), rat(-24, 1));
    }

    #[test]
    fn j_coefficients() {
        let j = j_function(ex(4)).unwrap();
        assert_eq!(j.two_pi_i_power(), 0);
        assert_eq!(j.trunc(), ex(4));
        let want = [(-1, 1i64), (0, 744), (1, 196884), (2, 21493760), (3, 864299970)];
        for (e, c) in want {
            assert_eq!(coeff_int(&j, ex(e)), rat(c, 1));
        }
    }

    #[test]
    fn classical_series_are_rational() {
        for s in [
            eta(ex(10)).unwrap(),
            theta_classical(Theta::Two, ex(10)),
            discriminant(ex(10)),
            j_function(ex(3)).unwrap(),
        ] {
            assert_eq!(s.coeff_order(), 1);
        }
    }
}
