//! Theta constants on the Siegel upper half-space.
//!
//! `Θ_[r;s](Z) = Σ_{n∈Z^g} e(ᵗ(n+r)Z(n+r)/2 + ᵗ(n+r)s)` is summed over the box
//! `‖n‖∞ ≤ R`, with `R` picked from the Gaussian decay rate `π·λ_min(Im Z)`.
//! On diagonal points the sum splits into a product of one-variable sums;
//! [`theta_diag_factorization_residual`] measures how far the two computations
//! drift apart. For `g = 1` the quotient `Θ_[r;s]/Θ_[0;0]` is also a quotient of
//! Siegel functions, which [`phi_siegel_identity_residual`] checks against the
//! exact series of [`crate::units`].

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // needed only when num-traits is built without std
use num_traits::Float;
use num_traits::Zero;

use crate::arith::{is_integer, rat, to_f64};
use crate::linalg::{complex_inverse, complex_matmul, symmetric_eigenvalues};
use crate::units::{siegel_function, FracVector, GammaMatrix};
use crate::{e_of, Error, Exponent, PuiseuxSeries, Rational};

/// Geometric-tail ratio used in the truncation radius.
const TAIL_RATIO: f64 = 0.5;

const SYMMETRY_TOL: f64 = 1e-12;

/// A point `Z` of the Siegel upper half-space of degree `g` (row-major).
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelPoint {
    g: usize,
    z: Vec<Complex64>,
    lambda_min: f64,
}

impl SiegelPoint {
    pub fn new(g: usize, entries: Vec<Complex64>) -> Result<Self, Error> {
        if g == 0 || entries.len() != g * g {
            return Err(Error::DimensionMismatch { expected: g * g, found: entries.len() });
        }
        for i in 0..g {
            for j in 0..i {
                if (entries[i * g + j] - entries[j * g + i]).norm() > SYMMETRY_TOL {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let imag: Vec<f64> = entries.iter().map(|z| z.im).collect();
        let lambda_min = symmetric_eigenvalues(&imag, g).into_iter().fold(f64::INFINITY, f64::min);
        if !(lambda_min > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(SiegelPoint { g, z: entries, lambda_min })
    }

    pub fn diagonal(taus: &[Complex64]) -> Result<Self, Error> {
        let g = taus.len();
        let mut z = vec![Complex64::zero(); g * g];
        for (k, t) in taus.iter().enumerate() {
            z[k * g + k] = *t;
        }
        Self::new(g, z)
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.z
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.z[i * self.g + j]
    }

    /// Smallest eigenvalue of `Im Z`.
    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }
}

/// A theta characteristic `[r; s]` with `r, s ∈ Q^g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaChar {
    pub r: Vec<Rational>,
    pub s: Vec<Rational>,
}

impl ThetaChar {
    pub fn new(r: Vec<Rational>, s: Vec<Rational>) -> Result<Self, Error> {
        if r.len() != s.len() || r.is_empty() {
            return Err(Error::DimensionMismatch { expected: r.len(), found: s.len() });
        }
        Ok(ThetaChar { r, s })
    }

    pub fn zero(g: usize) -> Self {
        ThetaChar { r: vec![rat(0, 1); g], s: vec![rat(0, 1); g] }
    }

    pub fn genus(&self) -> usize {
        self.r.len()
    }

    /// The one-variable characteristic `[r_k; s_k]`.
    pub fn component(&self, k: usize) -> ThetaChar {
        ThetaChar { r: vec![self.r[k].clone()], s: vec![self.s[k].clone()] }
    }

    /// Every `(r_k, s_k)` lies in `(1/2 + Z)²`.
    pub fn is_half_integral(&self) -> bool {
        let half = rat(1, 2);
        self.r.iter().chain(&self.s).all(|x| is_integer(&(x - &half)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaValue {
    pub value: Complex64,
    pub radius: u32,
}

/// `R = ⌈c + sqrt(max(0, −ln(tol·(1−ρ)) / (π λ_min)))⌉` with `c = ‖r‖∞`.
pub fn truncation_radius(ch: &ThetaChar, z: &SiegelPoint, tol: f64) -> Result<u32, Error> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance);
    }
    let shift = ch.r.iter().map(|x| to_f64(x).abs()).fold(0.0, f64::max);
    let spread = (-(tol * (1.0 - TAIL_RATIO)).ln() / (PI * z.lambda_min)).max(0.0).sqrt();
    Ok((shift + spread).ceil() as u32)
}

/// The theta sum over `‖n‖∞ ≤ radius`.
pub fn theta_constant_with_radius(ch: &ThetaChar, z: &SiegelPoint, radius: u32) -> Result<Complex64, Error> {
    let g = z.genus();
    if ch.genus() != g {
        return Err(Error::DimensionMismatch { expected: g, found: ch.genus() });
    }
    let r: Vec<f64> = ch.r.iter().map(to_f64).collect();
    let s: Vec<f64> = ch.s.iter().map(to_f64).collect();
    let radius = radius as i64;
    let mut n = vec![-radius; g];
    let mut x = vec![0.0; g];
    let mut total = Complex64::zero();
    'outer: loop {
        for k in 0..g {
            x[k] = n[k] as f64 + r[k];
        }
        let mut quad = Complex64::zero();
        for i in 0..g {
            let mut row = Complex64::zero();
            for j in 0..g {
                row += z.z[i * g + j] * x[j];
            }
            quad += row * x[i];
        }
        let linear: f64 = x.iter().zip(&s).map(|(a, b)| a * b).sum();
        total += (Complex64::new(0.0, PI) * quad + Complex64::new(0.0, 2.0 * PI * linear)).exp();
        for k in 0..g {
            if n[k] < radius {
                n[k] += 1;
                continue 'outer;
            }
            n[k] = -radius;
        }
        break;
    }
    Ok(total)
}

pub fn theta_constant(ch: &ThetaChar, z: &SiegelPoint, tol: f64) -> Result<ThetaValue, Error> {
    let radius = truncation_radius(ch, z, tol)?;
    Ok(ThetaValue { value: theta_constant_with_radius(ch, z, radius)?, radius })
}

/// `|Θ_[r;s](diag(τ)) − ∏_k Θ_[r_k;s_k](τ_k)|`.
pub fn theta_diag_factorization_residual(ch: &ThetaChar, taus: &[Complex64], tol: f64) -> Result<f64, Error> {
    let z = SiegelPoint::diagonal(taus)?;
    let whole = theta_constant(ch, &z, tol)?.value;
    let mut product = Complex64::new(1.0, 0.0);
    for (k, t) in taus.iter().enumerate() {
        let zk = SiegelPoint::new(1, vec![*t])?;
        product *= theta_constant(&ch.component(k), &zk, tol)?.value;
    }
    Ok((whole - product).norm())
}

fn check_phi_char(r: &Rational, s: &Rational) -> Result<(), Error> {
    let half = rat(1, 2);
    if is_integer(&(r - &half)) && is_integer(&(s - &half)) {
        return Err(Error::HalfIntegralCharacteristic);
    }
    Ok(())
}

/// `e((2rs + r − s)/4) · g_[1/2−r; 1/2−s] / g_[1/2; 1/2]` as an exact series.
pub fn phi_siegel_series(r: &Rational, s: &Rational, trunc: Exponent) -> Result<PuiseuxSeries, Error> {
    check_phi_char(r, s)?;
    let half = rat(1, 2);
    let top = FracVector::new(&half - r, &half - s);
    let bottom = FracVector::new(half.clone(), half);
    let root = e_of(&((r * s * rat(2, 1) + r - s) / rat(4, 1)));
    crate::qseries::with_precision(trunc, |work| {
        let num = siegel_function(&top, work + 1)?;
        let den = siegel_function(&bottom, work + 1)?;
        Ok(num.mul(&den.inv()?).scale(&root))
    })
}

/// `Θ_[r;s](τ) / Θ_[0;0](τ)` for `g = 1`.
pub fn phi_numeric(r: &Rational, s: &Rational, tau: Complex64, tol: f64) -> Result<Complex64, Error> {
    let z = SiegelPoint::new(1, vec![tau])?;
    let ch = ThetaChar::new(vec![r.clone()], vec![s.clone()])?;
    let num = theta_constant(&ch, &z, tol)?.value;
    let den = theta_constant(&ThetaChar::zero(1), &z, tol)?.value;
    Ok(num / den)
}

/// `|Φ_[r;s](τ) − (Siegel quotient series evaluated at τ)|`.
pub fn phi_siegel_identity_residual(r: &Rational, s: &Rational, tau: Complex64, trunc: Exponent) -> Result<f64, Error> {
    check_phi_char(r, s)?;
    if !(tau.im > 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let theta_side = phi_numeric(r, s, tau, 1e-15)?;
    let series_side = phi_siegel_series(r, s, trunc)?.evaluate(tau);
    Ok((theta_side - series_side).norm())
}

/// A `2g×2g` integer matrix `[[A, B], [C, D]]`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticMatrix {
    g: usize,
    entries: Vec<i64>,
}

impl SymplecticMatrix {
    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn size(&self) -> usize {
        2 * self.g
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size() + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.size()).map(|c| c.to_vec()).collect()
    }

    /// `ᵗM J M = J` with `J = [[0, I], [−I, 0]]`, checked exactly.
    pub fn is_symplectic(&self) -> bool {
        let n = self.size();
        let g = self.g;
        let j = |a: usize, b: usize| -> i64 {
            if a < g && b == a + g {
                1
            } else if a >= g && b + g == a {
                -1
            } else {
                0
            }
        };
        for a in 0..n {
            for b in 0..n {
                let mut acc: i64 = 0;
                for k in 0..n {
                    for l in 0..n {
                        let jkl = j(k, l);
                        if jkl != 0 {
                            acc += self.entry(k, a) * jkl * self.entry(l, b);
                        }
                    }
                }
                if acc != j(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// `(AZ + B)(CZ + D)^{-1}`, numerically.
    pub fn act(&self, z: &SiegelPoint) -> Result<Vec<Complex64>, Error> {
        let g = self.g;
        if z.genus() != g {
            return Err(Error::DimensionMismatch { expected: g, found: z.genus() });
        }
        let block = |row0: usize, col0: usize| -> Vec<Complex64> {
            (0..g * g).map(|k| Complex64::from(self.entry(row0 + k / g, col0 + k % g) as f64)).collect()
        };
        let (a, b, c, d) = (block(0, 0), block(0, g), block(g, 0), block(g, g));
        let mut top = complex_matmul(&a, z.entries(), g);
        let mut bottom = complex_matmul(&c, z.entries(), g);
        for k in 0..g * g {
            top[k] += b[k];
            bottom[k] += d[k];
        }
        let inv = complex_inverse(&bottom, g).ok_or(Error::DivisionByZero)?;
        Ok(complex_matmul(&top, &inv, g))
    }
}

/// Embeds `(γ_1, …, γ_g)` as the block matrix with diagonal `A, B, C, D`.
pub fn block_diag_symplectic(gammas: &[GammaMatrix]) -> Result<SymplecticMatrix, Error> {
    let g = gammas.len();
    if g == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    let n = 2 * g;
    let mut entries = vec![0i64; n * n];
    for (k, gm) in gammas.iter().enumerate() {
        if gm.a * gm.d - gm.b * gm.c != 1 {
            return Err(Error::NotUnimodular);
        }
        entries[k * n + k] = gm.a;
        entries[k * n + g + k] = gm.b;
        entries[(g + k) * n + k] = gm.c;
        entries[(g + k) * n + g + k] = gm.d;
    }
    let m = SymplecticMatrix { g, entries };
    debug_assert!(m.is_symplectic());
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{theta_classical, Theta};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn point1(tau: Complex64) -> SiegelPoint {
        SiegelPoint::new(1, vec![tau]).unwrap()
    }

    #[test]
    fn theta3_at_i() {
        let ch = ThetaChar::zero(1);
        let z = point1(c(0.0, 1.0));
        let v = theta_constant(&ch, &z, 1e-12).unwrap();
        // π^{1/4}/Γ(3/4)
        assert!((v.value.re - 1.086_434_811_213_308).abs() < 1e-14);
        let wider = theta_constant_with_radius(&ch, &z, v.radius + 5).unwrap();
        assert!((wider - v.value).norm() < 1e-12);
    }

    #[test]
    fn half_integral_characteristic_vanishes() {
        let ch = ThetaChar::new(vec![rat(1, 2)], vec![rat(1, 2)]).unwrap();
        let v = theta_constant(&ch, &point1(c(0.2, 0.9)), 1e-12).unwrap();
        assert!(v.value.norm() < 1e-12);
    }

    #[test]
    fn characteristic_sign_symmetry() {
        let z = SiegelPoint::new(2, vec![c(0.1, 1.2), c(0.3, 0.2), c(0.3, 0.2), c(-0.4, 0.9)]).unwrap();
        let ch = ThetaChar::new(vec![rat(1, 3), rat(-1, 4)], vec![rat(1, 5), rat(2, 3)]).unwrap();
        let neg = ThetaChar::new(ch.r.iter().map(|x| -x).collect(), ch.s.iter().map(|x| -x).collect()).unwrap();
        let a = theta_constant(&ch, &z, 1e-13).unwrap().value;
        let b = theta_constant(&neg, &z, 1e-13).unwrap().value;
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn invalid_points_rejected() {
        assert_eq!(SiegelPoint::new(1, vec![c(0.0, -1.0)]), Err(Error::NotPositiveDefinite));
        let asym = vec![c(0.0, 1.0), c(0.1, 0.0), c(0.2, 0.0), c(0.0, 1.0)];
        assert_eq!(SiegelPoint::new(2, asym), Err(Error::NotSymmetric));
        let indefinite = vec![c(0.0, 1.0), c(0.0, 2.0), c(0.0, 2.0), c(0.0, 1.0)];
        assert_eq!(SiegelPoint::new(2, indefinite), Err(Error::NotPositiveDefinite));
        assert!(SiegelPoint::new(2, vec![c(0.0, 1.0)]).is_err());
        let z = point1(c(0.0, 1.0));
        assert_eq!(theta_constant(&ThetaChar::zero(1), &z, 0.0), Err(Error::InvalidTolerance));
    }

    #[test]
    fn diagonal_factorization_examples() {
        let ch = ThetaChar::new(vec![rat(1, 4), rat(1, 4)], vec![rat(0, 1), rat(0, 1)]).unwrap();
        let res = theta_diag_factorization_residual(&ch, &[c(0.0, 1.0), c(0.0, 2.0)], 1e-12).unwrap();
        assert!(res < 1e-10);

        let taus = [c(0.0, 1.0); 3];
        let res = theta_diag_factorization_residual(&ThetaChar::zero(3), &taus, 1e-12).unwrap();
        assert!(res < 1e-10);
        let z3 = SiegelPoint::diagonal(&taus).unwrap();
        let whole = theta_constant(&ThetaChar::zero(3), &z3, 1e-12).unwrap().value;
        let t3 = theta_constant(&ThetaChar::zero(1), &point1(taus[0]), 1e-12).unwrap().value;
        assert!((whole - t3 * t3 * t3).norm() < 1e-10);

        let half = ThetaChar::new(vec![rat(1, 2); 2], vec![rat(1, 2); 2]).unwrap();
        let z = SiegelPoint::diagonal(&[c(0.1, 1.0), c(0.0, 1.5)]).unwrap();
        assert!(theta_constant(&half, &z, 1e-12).unwrap().value.norm() < 1e-12);
    }

    #[test]
    fn theta_constant_matches_classical_series() {
        let tau = c(0.25, 1.1);
        let num = theta_constant(&ThetaChar::zero(1), &point1(tau), 1e-14).unwrap().value;
        let series = theta_classical(Theta::Three, Exponent::from_integer(20)).evaluate(tau);
        assert!((num - series).norm() < 1e-13);
    }

    #[test]
    fn phi_identity_examples() {
        let cases = [
            (rat(0, 1), rat(0, 1), c(0.0, 2.0)),
            (rat(1, 4), rat(0, 1), c(0.0, 1.0)),
            (rat(0, 1), rat(1, 3), c(0.2, 1.0)),
        ];
        for (r, s, tau) in cases {
            let res = phi_siegel_identity_residual(&r, &s, tau, Exponent::from_integer(10)).unwrap();
            assert!(res < 1e-8, "r={} s={} residual {}", r, s, res);
        }
        let series = phi_siegel_series(&rat(0, 1), &rat(0, 1), Exponent::from_integer(5)).unwrap();
        assert_eq!(series, PuiseuxSeries::one(Exponent::from_integer(5)));
        assert_eq!(
            phi_siegel_identity_residual(&rat(1, 2), &rat(-1, 2), c(0.0, 1.0), Exponent::from_integer(5)),
            Err(Error::HalfIntegralCharacteristic)
        );
    }

    #[test]
    fn phi_quotient_is_scale_invariant() {
        let tau = c(0.1, 0.9);
        let z = point1(tau);
        let ch = ThetaChar::new(vec![rat(1, 3)], vec![rat(1, 4)]).unwrap();
        let num = theta_constant(&ch, &z, 1e-14).unwrap().value;
        let den = theta_constant(&ThetaChar::zero(1), &z, 1e-14).unwrap().value;
        let k = c(-2.5, 0.75);
        assert!(((num * k) / (den * k) - num / den).norm() < 1e-14);
        let phi = phi_numeric(&ch.r[0], &ch.s[0], tau, 1e-14).unwrap();
        assert!((phi - num / den).norm() < 1e-14);
    }

    #[test]
    fn block_diagonal_embedding() {
        let id = block_diag_symplectic(&[GammaMatrix::identity(); 3]).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(id.entry(i, j), (i == j) as i64);
            }
        }
        let g1 = GammaMatrix::new(0, -1, 1, 0).unwrap();
        let g2 = GammaMatrix::new(1, 1, 0, 1).unwrap();
        let m = block_diag_symplectic(&[g1, g2]).unwrap();
        assert!(m.is_symplectic());
        let z = SiegelPoint::diagonal(&[c(0.0, 1.0), c(0.0, 2.0)]).unwrap();
        let image = m.act(&z).unwrap();
        let want = [g1.act(c(0.0, 1.0)), Complex64::zero(), Complex64::zero(), g2.act(c(0.0, 2.0))];
        for (a, b) in image.iter().zip(want) {
            assert!((a - b).norm() < 1e-12);
        }
        let bad = GammaMatrix { a: 2, b: 0, c: 0, d: 1 };
        assert_eq!(block_diag_symplectic(&[bad]), Err(Error::NotUnimodular));
    }

    #[test]
    fn non_block_matrix_fails_symplectic_check() {
        let m = SymplecticMatrix { g: 1, entries: vec![2, 0, 0, 1] };
        assert!(!m.is_symplectic());
    }
}
