//! Cusps of `X(N)`, divisors of Siegel units `g_v^{12N}`, and the rank of the
//! group they generate.
//!
//! Divisor entries are orders in `q` (not in the local parameter `q^{1/N}`).
//! All cusps of `Γ(N)` have width `N`, so degree and rank statements are the
//! same in either normalization.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{ext_gcd, factor, frac, gcd};
use crate::linalg::rational_rank;
use crate::units::{bernoulli2, transform_vector, FracVector, GammaMatrix};
use crate::{Error, Rational};

/// The class of `a/c` in `X(N)`; `c = 0` is `i∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cusp {
    pub a: i64,
    pub c: i64,
    pub level: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorVector {
    pub level: i64,
    pub entries: Vec<(Cusp, Rational)>,
}

impl DivisorVector {
    pub fn degree(&self) -> Rational {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn get(&self, cusp: &Cusp) -> Option<&Rational> {
        self.entries.iter().find(|(c, _)| c == cusp).map(|(_, m)| m)
    }
}

fn check_level(level: i64) -> Result<(), Error> {
    if level < 2 {
        Err(Error::InvalidLevel(level))
    } else {
        Ok(())
    }
}

/// `3` for `N = 2`, otherwise `(N²/2) ∏_{p|N} (1 − p^{−2})`.
pub fn cusp_count(level: i64) -> Result<u64, Error> {
    check_level(level)?;
    if level == 2 {
        return Ok(3);
    }
    let n = level as u64;
    let mut num = n * n;
    for (p, _) in factor(n) {
        num = num / (p * p) * (p * p - 1);
    }
    Ok(num / 2)
}

impl Cusp {
    /// Canonical representative of `±(a, c) mod N`; `None` when `gcd(a, c, N) > 1`.
    pub fn new(a: i64, c: i64, level: i64) -> Option<Cusp> {
        let (a, c) = (a.rem_euclid(level), c.rem_euclid(level));
        if gcd(gcd(a, c), level) != 1 {
            return None;
        }
        let neg = ((level - a) % level, (level - c) % level);
        let (a, c) = (a, c).min(neg);
        Some(Cusp { a, c, level })
    }

    /// A matrix in `SL₂(Z)` sending `i∞` to this cusp, i.e. with first column
    /// congruent to `(a, c)` mod `N`. `shift` selects among infinitely many lifts.
    pub fn lift(&self, shift: i64) -> GammaMatrix {
        let n = self.level;
        let c = if self.c == 0 { n } else { self.c } + shift.abs() * n;
        let mut a = self.a + shift * n;
        while gcd(a, c) != 1 {
            a += n;
        }
        let (_, x, y) = ext_gcd(a, c);
        // a·x + c·y = 1, so [[a, −y], [c, x]] has determinant 1
        GammaMatrix::new(a, -y, c, x).expect("determinant one by construction")
    }
}

/// All cusp classes of `X(N)`, sorted.
pub fn enumerate_cusps(level: i64) -> Result<Vec<Cusp>, Error> {
    check_level(level)?;
    let mut out: Vec<Cusp> = (0..level)
        .flat_map(|a| (0..level).filter_map(move |c| Cusp::new(a, c, level)))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `ord_q (g_v^{12N} ∘ γ) = 6N·B₂(⟨first coordinate of ᵗγ·v⟩)`.
pub fn order_at(v: &FracVector, gamma: &GammaMatrix, level: i64) -> Rational {
    let moved = transform_vector(gamma, v);
    bernoulli2(&frac(&moved.r)) * Rational::from_integer((6 * level).into())
}

/// Divisor of `g_v^{12N}` on the cusps of `X(N)`.
pub fn divisor_of_siegel_power(v: &FracVector, level: i64) -> Result<DivisorVector, Error> {
    check_level(level)?;
    if v.is_integral() {
        return Err(Error::IntegralIndex);
    }
    if level % v.denominator() != 0 {
        return Err(Error::InvalidLevel(level));
    }
    let entries = enumerate_cusps(level)?
        .into_iter()
        .map(|cusp| {
            let m = order_at(v, &cusp.lift(0), level);
            (cusp, m)
        })
        .collect();
    Ok(DivisorVector { level, entries })
}

/// Representatives of `((1/N)Z² − Z²)/±`.
pub fn siegel_indices(level: i64) -> Vec<FracVector> {
    let mut seen = Vec::new();
    for i in 0..level {
        for j in 0..level {
            if i == 0 && j == 0 {
                continue;
            }
            let neg = ((level - i) % level, (level - j) % level);
            if neg < (i, j) {
                continue;
            }
            seen.push(FracVector::from_ratios(i, level, j, level));
        }
    }
    seen
}

/// Rank over `Q` of the divisor matrix of all `g_v^{12N}`.
pub fn unit_group_rank(level: i64) -> Result<usize, Error> {
    Ok(rational_rank(&divisor_matrix(level)?))
}

pub fn divisor_matrix(level: i64) -> Result<Vec<Vec<Rational>>, Error> {
    siegel_indices(level)
        .iter()
        .map(|v| Ok(divisor_of_siegel_power(v, level)?.entries.into_iter().map(|(_, m)| m).collect()))
        .collect()
}

/// True when every row of the divisor matrix has degree zero.
pub fn all_degrees_zero(level: i64) -> Result<bool, Error> {
    Ok(divisor_matrix(level)?.iter().all(|row| row.iter().sum::<Rational>().is_zero()))
}
