//! Truncated Puiseux series in `q` with cyclotomic coefficients.
//!
//! A [`PuiseuxSeries`] stands for `(2πi)^p · Σ c_k q^{k/D} + O(q^T)`. The
//! truncation `T` is carried explicitly and propagated pessimistically, so a
//! coefficient is only ever reported when it is actually known.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::arith::lcm;
use crate::cycloq::{CycloField, Cyclotomic};
use crate::{Error, Rational};

/// Exponents of `q` and truncation orders.
pub type Exponent = Ratio<i64>;

/// Exclusive bound on lattice indices: `k/d < t` iff `k < k_limit(t, d)`.
fn k_limit(t: Exponent, d: i64) -> i64 {
    (t * d).ceil().to_integer()
}

fn add_into(acc: &mut [Rational], x: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += b;
        }
    }
}

#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    denom: i64,
    terms: BTreeMap<i64, Cyclotomic>,
    trunc: Exponent,
    two_pi_i_power: i32,
}

/// One factor `(1 - c·q^e)^m` of [`product_family`].
#[derive(Clone, Debug)]
pub struct Factor {
    pub coeff: Cyclotomic,
    pub exponent: Exponent,
    pub multiplicity: i64,
}

impl Factor {
    pub fn new(coeff: Cyclotomic, exponent: Exponent, multiplicity: i64) -> Self {
        Factor { coeff, exponent, multiplicity }
    }
}

impl PuiseuxSeries {
    pub fn zero(trunc: Exponent) -> Self {
        PuiseuxSeries { denom: 1, terms: BTreeMap::new(), trunc, two_pi_i_power: 0 }
    }

    pub fn one(trunc: Exponent) -> Self {
        Self::constant(Cyclotomic::one(), trunc)
    }

    pub fn constant(c: Cyclotomic, trunc: Exponent) -> Self {
        Self::monomial(c, Exponent::zero(), trunc)
    }

    pub fn monomial(c: Cyclotomic, exponent: Exponent, trunc: Exponent) -> Self {
        Self::from_exponent_terms([(exponent, c)], trunc, 0)
    }

    /// Builds a series on the lattice `(1/denom)Z`; terms at or beyond `trunc` and zero
    /// coefficients are dropped, repeated `k` are summed.
    pub fn from_terms(
        denom: i64,
        terms: impl IntoIterator<Item = (i64, Cyclotomic)>,
        trunc: Exponent,
        two_pi_i_power: i32,
    ) -> Self {
        assert!(denom > 0);
        let limit = k_limit(trunc, denom);
        let mut map: BTreeMap<i64, Cyclotomic> = BTreeMap::new();
        for (k, c) in terms {
            if k >= limit || c.is_zero() {
                continue;
            }
            match map.get_mut(&k) {
                Some(old) => *old = &*old + &c,
                None => {
                    map.insert(k, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        PuiseuxSeries { denom, terms: map, trunc, two_pi_i_power }
    }

    /// Like [`from_terms`](Self::from_terms) but with rational exponents; the lattice
    /// denominator is the lcm of the exponent denominators.
    pub fn from_exponent_terms(
        terms: impl IntoIterator<Item = (Exponent, Cyclotomic)>,
        trunc: Exponent,
        two_pi_i_power: i32,
    ) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        let denom = terms.iter().fold(1, |d, (e, _)| lcm(d, *e.denom()));
        Self::from_terms(
            denom,
            terms.into_iter().map(|(e, c)| ((e * denom).to_integer(), c)),
            trunc,
            two_pi_i_power,
        )
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn trunc(&self) -> Exponent {
        self.trunc
    }

    pub fn two_pi_i_power(&self) -> i32 {
        self.two_pi_i_power
    }

    pub fn with_two_pi_i_power(mut self, p: i32) -> Self {
        self.two_pi_i_power = p;
        self
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stored terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &Cyclotomic)> + '_ {
        let d = self.denom;
        self.terms.iter().map(move |(&k, c)| (Exponent::new(k, d), c))
    }

    /// Stored terms as lattice indices `k` (exponent `k/denom`).
    pub fn raw_terms(&self) -> impl Iterator<Item = (i64, &Cyclotomic)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    /// The coefficient of `q^e`, or `None` when `e` is at or beyond the truncation.
    pub fn coeff(&self, e: Exponent) -> Option<Cyclotomic> {
        if e >= self.trunc {
            return None;
        }
        let scaled = e * self.denom;
        if !scaled.is_integer() {
            return Some(Cyclotomic::zero());
        }
        Some(self.terms.get(&scaled.to_integer()).cloned().unwrap_or_else(Cyclotomic::zero))
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn ord(&self) -> Option<Exponent> {
        self.terms.keys().next().map(|&k| Exponent::new(k, self.denom))
    }

    pub fn leading(&self) -> Option<(Exponent, &Cyclotomic)> {
        self.terms().next()
    }

    /// `ord`, or the truncation order for a series with no known nonzero term.
    fn ord_or_trunc(&self) -> Exponent {
        self.ord().unwrap_or(self.trunc)
    }

    /// Smallest cyclotomic order containing every coefficient.
    pub fn coeff_order(&self) -> u64 {
        self.terms.values().fold(1, |m, c| lcm(m as i64, c.order() as i64) as u64)
    }

    pub fn truncate(&self, trunc: Exponent) -> Self {
        let trunc = trunc.min(self.trunc);
        let limit = k_limit(trunc, self.denom);
        let terms = self.terms.range(..limit).map(|(&k, c)| (k, c.clone())).collect();
        PuiseuxSeries { denom: self.denom, terms, trunc, two_pi_i_power: self.two_pi_i_power }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&k, x)| (k, x * c))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        PuiseuxSeries { terms, ..self.clone_empty() }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&Cyclotomic::from_int(n))
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: Exponent) -> Self {
        let denom = lcm(self.denom, *e.denom());
        let f = denom / self.denom;
        let off = (e * denom).to_integer();
        let terms = self.terms.iter().map(|(&k, c)| (k * f + off, c.clone())).collect();
        PuiseuxSeries { denom, terms, trunc: self.trunc + e, two_pi_i_power: self.two_pi_i_power }
    }

    fn clone_empty(&self) -> Self {
        PuiseuxSeries {
            denom: self.denom,
            terms: BTreeMap::new(),
            trunc: self.trunc,
            two_pi_i_power: self.two_pi_i_power,
        }
    }

    fn rescaled(&self, denom: i64) -> impl Iterator<Item = (i64, &Cyclotomic)> + '_ {
        let f = denom / self.denom;
        self.terms.iter().map(move |(&k, c)| (k * f, c))
    }

    /// Termwise sum; both operands must carry the same `(2πi)`-power.
    pub fn try_add(&self, other: &Self) -> Result<Self, Error> {
        if self.two_pi_i_power != other.two_pi_i_power {
            return Err(Error::WeightMismatch { left: self.two_pi_i_power, right: other.two_pi_i_power });
        }
        let denom = lcm(self.denom, other.denom);
        let trunc = self.trunc.min(other.trunc);
        let terms = self.rescaled(denom).chain(other.rescaled(denom)).map(|(k, c)| (k, c.clone()));
        Ok(Self::from_terms(denom, terms, trunc, self.two_pi_i_power))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, Error> {
        self.try_add(&-other)
    }

    /// Cauchy product. The result is known below
    /// `min(a.trunc + ord b, b.trunc + ord a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = (self.trunc + other.ord_or_trunc()).min(other.trunc + self.ord_or_trunc());
        let two_pi_i_power = self.two_pi_i_power + other.two_pi_i_power;
        let denom = lcm(self.denom, other.denom);
        if self.is_zero() || other.is_zero() {
            return PuiseuxSeries { denom, terms: BTreeMap::new(), trunc, two_pi_i_power };
        }
        let order = lcm(self.coeff_order() as i64, other.coeff_order() as i64) as u64;
        let field = CycloField::new(order);
        let lift = |s: &Self| -> Vec<(i64, Vec<Rational>)> {
            s.rescaled(denom).map(|(k, c)| (k, field.lift(c))).collect()
        };
        let a = lift(self);
        let b = lift(other);
        let limit = k_limit(trunc, denom);
        let b_first = b[0].0;
        let mut acc: BTreeMap<i64, Vec<Rational>> = BTreeMap::new();
        for (ka, ca) in &a {
            if ka + b_first >= limit {
                break;
            }
            for (kb, cb) in &b {
                let k = ka + kb;
                if k >= limit {
                    break;
                }
                let p = field.mul(ca, cb);
                match acc.get_mut(&k) {
                    Some(v) => add_into(v, &p),
                    None => {
                        acc.insert(k, p);
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, v)| v.iter().any(|c| !c.is_zero()))
            .map(|(k, v)| (k, field.element(v)))
            .collect();
        PuiseuxSeries { denom, terms, trunc, two_pi_i_power }
    }

    /// Multiplicative inverse, known to relative precision `trunc − ord`.
    pub fn inv(&self) -> Result<Self, Error> {
        let (&k0, c0) = self.terms.iter().next().ok_or(Error::ZeroSeries)?;
        let d = self.denom;
        let ord = Exponent::new(k0, d);
        let rel_limit = k_limit(self.trunc, d) - k0;
        let step = self.terms.keys().skip(1).fold(0, |g, &k| crate::arith::gcd(g, k - k0));
        let field = CycloField::new(self.coeff_order());
        let inv_c0 = field.inverse(&field.lift(c0)).ok_or(Error::DivisionByZero)?;
        let tail: Vec<(usize, Vec<Rational>)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(&k, c)| (((k - k0) / step) as usize, field.lift(c)))
            .collect();
        let n = if step == 0 { 1 } else { ((rel_limit + step - 1) / step).max(1) as usize };
        let mut out: Vec<Vec<Rational>> = Vec::with_capacity(n);
        out.push(inv_c0.clone());
        for t in 1..n {
            let mut s = field.zero_vec();
            for (i, c) in &tail {
                if *i > t {
                    break;
                }
                let prev = &out[t - i];
                if prev.iter().all(Zero::is_zero) {
                    continue;
                }
                add_into(&mut s, &field.mul(c, prev));
            }
            let next = field.mul(&inv_c0, &s).into_iter().map(|x| -x).collect();
            out.push(next);
        }
        let step = step.max(1);
        let terms = out
            .into_iter()
            .enumerate()
            .filter(|(_, v)| v.iter().any(|c| !c.is_zero()))
            .map(|(t, v)| (-k0 + t as i64 * step, field.element(v)));
        Ok(Self::from_terms(d, terms, self.trunc - ord * 2, -self.two_pi_i_power))
    }

    pub fn pow(&self, n: i64) -> Result<Self, Error> {
        if self.is_zero() && n <= 0 {
            return Err(Error::ZeroPower);
        }
        if n == 0 {
            let rel = self.trunc - self.ord_or_trunc();
            return Ok(Self::one(rel));
        }
        let mut base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc: Option<Self> = None;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a.mul(&base),
                    None => base.clone(),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        Ok(acc.expect("n != 0"))
    }

    /// `q ↦ q^m`: exponents and truncation scale by `m`.
    pub fn substitute_q_power(&self, m: i64) -> Self {
        assert!(m > 0, "substitution power must be positive");
        let terms = self.terms.iter().map(|(&k, c)| (k * m, c.clone())).collect();
        PuiseuxSeries {
            denom: self.denom,
            terms,
            trunc: self.trunc * m,
            two_pi_i_power: self.two_pi_i_power,
        }
    }

    /// Numeric value at `τ`, including the `(2πi)^p` factor; `q^{k/D}` is taken
    /// as `e^{2πiτk/D}`.
    pub fn evaluate(&self, tau: Complex64) -> Complex64 {
        let two_pi_i = Complex64::new(0.0, 2.0 * core::f64::consts::PI);
        let sum: Complex64 = self
            .terms
            .iter()
            .map(|(&k, c)| c.to_complex() * (two_pi_i * tau * (k as f64 / self.denom as f64)).exp())
            .sum();
        sum * two_pi_i.powi(self.two_pi_i_power)
    }

    /// First exponent below the common truncation where the two series differ,
    /// or `None` if they agree there.
    pub fn first_mismatch(&self, other: &Self) -> Result<Option<Exponent>, Error> {
        let diff = self.try_sub(other)?;
        Ok(diff.ord())
    }
}

/// Equal as truncated series: same truncation, same `(2πi)`-power and the same
/// coefficient at every exponent, regardless of the lattice denominator.
impl PartialEq for PuiseuxSeries {
    fn eq(&self, other: &Self) -> bool {
        self.trunc == other.trunc
            && self.two_pi_i_power == other.two_pi_i_power
            && self.terms.len() == other.terms.len()
            && self.terms().zip(other.terms()).all(|(a, b)| a == b)
    }
}

impl Eq for PuiseuxSeries {}

impl core::ops::Neg for &PuiseuxSeries {
    type Output = PuiseuxSeries;

    fn neg(self) -> PuiseuxSeries {
        let terms = self.terms.iter().map(|(&k, c)| (k, -c)).collect();
        PuiseuxSeries { terms, ..self.clone_empty() }
    }
}

impl core::ops::Mul for &PuiseuxSeries {
    type Output = PuiseuxSeries;

    fn mul(self, other: &PuiseuxSeries) -> PuiseuxSeries {
        PuiseuxSeries::mul(self, other)
    }
}

/// Runs `build` with a growing working truncation until its result is known
/// below `target`, then truncates to exactly `target`.
pub fn with_precision(
    target: Exponent,
    mut build: impl FnMut(Exponent) -> Result<PuiseuxSeries, Error>,
) -> Result<PuiseuxSeries, Error> {
    let mut work = target;
    for _ in 0..8 {
        let s = build(work)?;
        if s.trunc() >= target {
            return Ok(s.truncate(target));
        }
        work += (target - s.trunc()).ceil() + 1;
    }
    Err(Error::InvalidTruncation)
}

/// Exact truncated product `∏ (1 - c·q^e)^m`, known below `trunc`.
///
/// Finitely many factors may have `e ≤ 0`; they are folded into a monomial
/// prefactor. Factors whose contribution starts at or beyond `trunc` are skipped.
pub fn product_family(factors: &[Factor], trunc: Exponent) -> Result<PuiseuxSeries, Error> {
    let mut pre_coeff = Cyclotomic::one();
    let mut pre_exp = Exponent::zero();
    let mut positive: Vec<(Cyclotomic, Exponent, i64)> = Vec::new();
    for f in factors {
        if f.multiplicity == 0 || f.coeff.is_zero() {
            continue;
        }
        if f.exponent.is_zero() {
            if f.coeff.is_one() {
                return Err(Error::VanishingFactor);
            }
            let base = &Cyclotomic::one() - &f.coeff;
            pre_coeff = &pre_coeff * &base.pow(f.multiplicity)?;
        } else if f.exponent < Exponent::zero() {
            // 1 - c q^e = (-c q^e)(1 - c^{-1} q^{-e})
            pre_coeff = &pre_coeff * &(-&f.coeff).pow(f.multiplicity)?;
            pre_exp += f.exponent * f.multiplicity;
            positive.push((f.coeff.inv()?, -f.exponent, f.multiplicity));
        } else {
            positive.push((f.coeff.clone(), f.exponent, f.multiplicity));
        }
    }
    let rel_trunc = trunc - pre_exp;
    if rel_trunc <= Exponent::zero() {
        return Ok(PuiseuxSeries::zero(trunc));
    }
    positive.retain(|(_, e, _)| *e < rel_trunc);
    let denom = positive.iter().fold(*pre_exp.denom(), |d, (_, e, _)| lcm(d, *e.denom()));
    let order = positive
        .iter()
        .fold(pre_coeff.order() as i64, |m, (c, _, _)| lcm(m, c.order() as i64)) as u64;
    let field = CycloField::new(order);
    let limit = k_limit(rel_trunc, denom) as usize;
    let mut dense = vec![field.zero_vec(); limit];
    dense[0] = field.lift(&Cyclotomic::one());
    for (c, e, m) in &positive {
        let step = (*e * denom).to_integer() as usize;
        let cl = field.lift(c);
        for _ in 0..m.unsigned_abs() {
            if *m > 0 {
                for k in (step..limit).rev() {
                    if dense[k - step].iter().all(Zero::is_zero) {
                        continue;
                    }
                    let p = field.mul(&cl, &dense[k - step]);
                    for (x, y) in dense[k].iter_mut().zip(p) {
                        *x -= y;
                    }
                }
            } else {
                for k in step..limit {
                    if dense[k - step].iter().all(Zero::is_zero) {
                        continue;
                    }
                    let p = field.mul(&cl, &dense[k - step]);
                    add_into(&mut dense[k], &p);
                }
            }
        }
    }
    let lead = (pre_exp * denom).to_integer();
    let pre = field.lift(&pre_coeff);
    let terms = dense
        .into_iter()
        .enumerate()
        .filter(|(_, v)| v.iter().any(|c| !c.is_zero()))
        .map(|(k, v)| (lead + k as i64, field.element(field.mul(&pre, &v))));
    Ok(PuiseuxSeries::from_terms(denom, terms, trunc, 0))
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.two_pi_i_power != 0 {
            write!(f, "(2πi)^{} * [", self.two_pi_i_power)?;
        }
        for (e, c) in self.terms() {
            write!(f, "{}", c)?;
            if e.is_zero() {
            } else if e.is_one() {
                write!(f, "*q")?;
            } else {
                write!(f, "*q^({})", e)?;
            }
            write!(f, " + ")?;
        }
        write!(f, "O(q^({}))", self.trunc)?;
        if self.two_pi_i_power != 0 {
            write!(f, "]")?;
        }
        Ok(())
    }
}
