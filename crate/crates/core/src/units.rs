//! Siegel functions, the Klein form `𝔨_{[0;1/2]}`, Weierstrass ℘-values and
//! the Weierstrass units built from them.
//!
//! A Siegel function is expanded from its product
//!
//! ```text
//! g_[r;s](τ) = −q^{B₂(r)/2} e^{πis(r−1)} (1 − q^r e(s)) ∏_{n≥1} (1 − q^{n+r} e(s)) (1 − q^{n−r} e(−s))
//! ```
//!
//! using the representative `(r, s)` exactly as given. The product is valid
//! for every real `r`; factors with non-positive exponent are finitely many and
//! are absorbed into the leading monomial.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::arith::{self, frac, is_integer, rat, to_exponent};
use crate::qseries::{product_family, with_precision, Factor};
use crate::{e_of, Cyclotomic, Error, Exponent, PuiseuxSeries, Rational};

/// A row vector `[r; s]` indexing a Siegel function or a ℘-value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FracVector {
    pub r: Rational,
    pub s: Rational,
}

impl FracVector {
    pub fn new(r: Rational, s: Rational) -> Self {
        FracVector { r, s }
    }

    /// `[rn/rd; sn/sd]` from machine integers.
    pub fn from_ratios(rn: i64, rd: i64, sn: i64, sd: i64) -> Self {
        FracVector { r: rat(rn, rd), s: rat(sn, sd) }
    }

    pub fn is_integral(&self) -> bool {
        is_integer(&self.r) && is_integer(&self.s)
    }

    /// Representative with both coordinates in `[0, 1)`.
    pub fn reduced(&self) -> Self {
        FracVector { r: frac(&self.r), s: frac(&self.s) }
    }

    /// `v ≡ w` or `v ≡ −w` modulo `Z²`.
    pub fn equivalent_up_to_sign(&self, other: &Self) -> bool {
        let diff = FracVector::new(&self.r - &other.r, &self.s - &other.s);
        let sum = FracVector::new(&self.r + &other.r, &self.s + &other.s);
        diff.is_integral() || sum.is_integral()
    }

    /// Least common denominator of `r` and `s`.
    pub fn denominator(&self) -> i64 {
        let lcm = num_integer::Integer::lcm(self.r.denom(), self.s.denom());
        i64::try_from(&lcm).unwrap_or(i64::MAX)
    }
}

impl core::ops::Neg for &FracVector {
    type Output = FracVector;

    fn neg(self) -> FracVector {
        FracVector { r: -&self.r, s: -&self.s }
    }
}

/// An element of `SL₂(Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GammaMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GammaMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, Error> {
        if a * d - b * c != 1 {
            return Err(Error::NotUnimodular);
        }
        Ok(GammaMatrix { a, b, c, d })
    }

    pub fn identity() -> Self {
        GammaMatrix { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn compose(&self, other: &Self) -> Self {
        GammaMatrix {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// Möbius action on the upper half-plane.
    pub fn act(&self, tau: num_complex::Complex64) -> num_complex::Complex64 {
        (tau * self.a as f64 + self.b as f64) / (tau * self.c as f64 + self.d as f64)
    }
}

/// `B₂(x) = x² − x + 1/6`.
pub fn bernoulli2(x: &Rational) -> Rational {
    x * x - x + rat(1, 6)
}

/// `ᵗγ·[r; s] = [a·r + c·s; b·r + d·s]`.
pub fn transform_vector(g: &GammaMatrix, v: &FracVector) -> FracVector {
    let int = |n: i64| Rational::from_integer(n.into());
    FracVector {
        r: &v.r * int(g.a) + &v.s * int(g.c),
        s: &v.r * int(g.b) + &v.s * int(g.d),
    }
}

/// `ord_q g_v^{12N} = 6N·B₂(⟨r⟩)`.
pub fn siegel_power_ord(v: &FracVector, level: i64) -> Result<Rational, Error> {
    if level < 1 || level % v.denominator() != 0 {
        return Err(Error::InvalidLevel(level));
    }
    if v.is_integral() {
        return Err(Error::IntegralIndex);
    }
    Ok(bernoulli2(&frac(&v.r)) * rat(6 * level, 1))
}

/// Exact expansion of the Siegel function `g_v`, known below `trunc`.
pub fn siegel_function(v: &FracVector, trunc: Exponent) -> Result<PuiseuxSeries, Error> {
    if v.is_integral() {
        return Err(Error::IntegralIndex);
    }
    let r = to_exponent(&v.r)?;
    let lead = to_exponent(&(bernoulli2(&v.r) / rat(2, 1)))?;
    let rel = trunc - lead;
    let es = e_of(&v.s);
    let ems = e_of(&-&v.s);

    let exponent_at = |n: i64| [Exponent::from_integer(n) + r, Exponent::from_integer(n) - r];
    let reach = r.abs().ceil().to_integer() + 1;
    let most_negative: Exponent = core::iter::once(r)
        .chain((1..=reach).flat_map(exponent_at))
        .filter(|e| *e < Exponent::zero())
        .sum();
    let n_max = (rel - most_negative + r.abs()).ceil().to_integer().max(0) + 1;

    let mut factors = vec![Factor::new(es.clone(), r, 1)];
    for n in 1..=n_max {
        let [plus, minus] = exponent_at(n);
        factors.push(Factor::new(es.clone(), plus, 1));
        factors.push(Factor::new(ems.clone(), minus, 1));
    }
    let product = product_family(&factors, rel)?;
    let prefactor = -e_of(&(&v.s * (&v.r - Rational::one()) / rat(2, 1)));
    Ok(product.shift(lead).scale(&prefactor))
}

/// `𝔨_{[0;1/2]} = (2πi)^{-1} g_{[0;1/2]} / η²`.
pub fn klein_form_0_half(trunc: Exponent) -> Result<PuiseuxSeries, Error> {
    let v = FracVector::from_ratios(0, 1, 1, 2);
    with_precision(trunc, |work| {
        let g = siegel_function(&v, work + 1)?;
        let eta = crate::classical::eta(work + 1)?;
        Ok(g.mul(&eta.pow(-2)?).with_two_pi_i_power(-1))
    })
}

/// Fourier expansion of `℘_{[r;s]}(τ) = ℘(rτ + s; [τ, 1])`.
///
/// With `u = q^r e(s)` and `0 ≤ r < 1`,
/// `℘ = (2πi)² [1/12 + u/(1−u)² + Σ_{n,m≥1} m (q^{nm}u^m + q^{nm}u^{−m} − 2q^{nm})]`.
/// ℘ is `Z²`-periodic in the index, so the reduced representative is used.
pub fn wp_expansion(v: &FracVector, trunc: Exponent) -> Result<PuiseuxSeries, Error> {
    if v.is_integral() {
        return Err(Error::IntegralIndex);
    }
    let v = v.reduced();
    let r = to_exponent(&v.r)?;
    let mut terms: Vec<(Exponent, Cyclotomic)> = vec![(Exponent::zero(), Cyclotomic::from_rational(rat(1, 12)))];
    let root = |m: i64| e_of(&(&v.s * rat(m, 1)));
    if r.is_zero() {
        let u = root(1);
        let one_minus = &Cyclotomic::one() - &u;
        terms.push((Exponent::zero(), u.checked_div(&(&one_minus * &one_minus))?));
    } else {
        let mut m = 1;
        while r * m < trunc {
            terms.push((r * m, root(m).scale(&rat(m, 1))));
            m += 1;
        }
    }
    let mut n = 1;
    while Exponent::from_integer(n) - r < trunc {
        let mut m = 1;
        loop {
            let base = Exponent::from_integer(n * m);
            let down = (Exponent::from_integer(n) - r) * m;
            if down >= trunc {
                break;
            }
            let weight = rat(m, 1);
            terms.push((down, root(-m).scale(&weight)));
            let up = base + r * m;
            if up < trunc {
                terms.push((up, root(m).scale(&weight)));
            }
            if base < trunc {
                terms.push((base, Cyclotomic::from_rational(rat(-2 * m, 1))));
            }
            m += 1;
        }
        n += 1;
    }
    Ok(PuiseuxSeries::from_exponent_terms(terms, trunc, 2))
}

/// `(℘_{v1} − ℘_{w1}) / (℘_{v2} − ℘_{w2})`.
pub fn weierstrass_unit(
    v1: &FracVector,
    w1: &FracVector,
    v2: &FracVector,
    w2: &FracVector,
    trunc: Exponent,
) -> Result<PuiseuxSeries, Error> {
    for v in [v1, w1, v2, w2] {
        if v.is_integral() {
            return Err(Error::IntegralIndex);
        }
    }
    if v1.equivalent_up_to_sign(w1) || v2.equivalent_up_to_sign(w2) {
        return Err(Error::DegenerateIndexPair);
    }
    with_precision(trunc, |work| {
        let num = wp_expansion(v1, work)?.try_sub(&wp_expansion(w1, work)?)?;
        let den = wp_expansion(v2, work)?.try_sub(&wp_expansion(w2, work)?)?;
        Ok(num.mul(&den.inv()?))
    })
}

/// `h_{1,N} = (℘_{[0;1/N]} − ℘_{[0;1/2]}) / (℘_{[0;1/2]} − ℘_{[0;1/4]})`.
pub fn h1n(level: i64, trunc: Exponent) -> Result<PuiseuxSeries, Error> {
    if level < 2 {
        return Err(Error::InvalidLevel(level));
    }
    let half = FracVector::from_ratios(0, 1, 1, 2);
    let quarter = FracVector::from_ratios(0, 1, 1, 4);
    weierstrass_unit(&FracVector::from_ratios(0, 1, 1, level), &half, &half, &quarter, trunc)
}

/// `h_N = (℘_{[1/N;0]} − ℘_{[0;1/2]}) / (℘_{[0;1/2]} − ℘_{[0;1/4]})`.
pub fn hn(level: i64, trunc: Exponent) -> Result<PuiseuxSeries, Error> {
    if level < 2 {
        return Err(Error::InvalidLevel(level));
    }
    let half = FracVector::from_ratios(0, 1, 1, 2);
    let quarter = FracVector::from_ratios(0, 1, 1, 4);
    weierstrass_unit(&FracVector::from_ratios(1, level, 0, 1), &half, &half, &quarter, trunc)
}

/// `g_{1,4}(τ) = g_{[1/4;0]}(4τ)^{−8} g_{[1/2;0]}(4τ)^8`.
pub fn g14(trunc: Exponent) -> Result<PuiseuxSeries, Error> {
    if trunc <= Exponent::from_integer(-1) {
        return Err(Error::InvalidTruncation);
    }
    let quarter = FracVector::from_ratios(1, 4, 0, 1);
    let half = FracVector::from_ratios(1, 2, 0, 1);
    with_precision(trunc, |work| {
        let inner = work / 4 + 1;
        let a = siegel_function(&quarter, inner)?;
        let b = siegel_function(&half, inner)?;
        Ok(b.mul(&a.inv()?).pow(8)?.substitute_q_power(4))
    })
}

/// `B₂(⟨x⟩) ≠ 0`.
pub fn bernoulli2_frac_nonzero(x: &Rational) -> bool {
    !bernoulli2(&arith::frac(x)).is_zero()
}
