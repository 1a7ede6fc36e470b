//! Exact arithmetic in cyclotomic fields `Q(ζ_M)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(M)-1}` modulo the
//! `M`-th cyclotomic polynomial, so two elements of the same order are equal
//! exactly when their coordinate vectors are. Binary operations lift both
//! operands into `Q(ζ_lcm)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::arith::{self, euler_phi, lcm};
use crate::{Error, Rational};

/// Integer polynomial helpers for building `Φ_n`, low degree first.
fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let lead = den[dn];
    let mut rem = num.to_vec();
    let mut quo = vec![0i64; num.len() - dn];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dn] / lead;
        quo[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quo
}

fn poly_inflate(p: &[i64], k: usize) -> Vec<i64> {
    let mut out = vec![0i64; (p.len() - 1) * k + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i * k] = c;
    }
    out
}

/// The `n`-th cyclotomic polynomial, monic, low degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let mut current = vec![-1i64, 1];
    let mut radical_cofactor = 1usize;
    for (p, e) in arith::factor(n) {
        radical_cofactor *= (p as usize).pow(e - 1);
        let inflated = poly_inflate(&current, p as usize);
        current = poly_exact_div(&inflated, &current);
    }
    poly_inflate(&current, radical_cofactor)
}

/// Arithmetic context for a fixed field `Q(ζ_M)`.
///
/// Building one computes `Φ_M` once; series code lifts all coefficients to
/// a shared order and then works on raw coordinate vectors.
#[derive(Clone, Debug)]
pub struct CycloField {
    order: u64,
    modulus: Vec<i64>,
}

impl CycloField {
    pub fn new(order: u64) -> Self {
        CycloField { order, modulus: cyclotomic_polynomial(order) }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduces a polynomial in `ζ` of any length to canonical coordinates.
    pub fn reduce(&self, mut poly: Vec<Rational>) -> Vec<Rational> {
        let deg = self.degree();
        if poly.len() <= deg {
            poly.resize(deg, Rational::zero());
            return poly;
        }
        for top in (deg..poly.len()).rev() {
            if poly[top].is_zero() {
                continue;
            }
            let c = core::mem::replace(&mut poly[top], Rational::zero());
            let base = top - deg;
            for (j, &m) in self.modulus[..deg].iter().enumerate() {
                if m != 0 {
                    poly[base + j] -= &c * Rational::from_integer(m.into());
                }
            }
        }
        poly.truncate(deg);
        poly
    }

    pub fn zero_vec(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.degree()]
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if self.degree() == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut prod = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }

    /// Coordinates of `x` inside this field; `x.order()` must divide the field order.
    pub fn lift(&self, x: &Cyclotomic) -> Vec<Rational> {
        assert!(self.order.is_multiple_of(x.order), "order {} does not divide {}", x.order, self.order);
        if x.order == self.order {
            return x.coeffs.clone();
        }
        let step = (self.order / x.order) as usize;
        let len = (x.coeffs.len() - 1) * step + 1;
        let mut poly = vec![Rational::zero(); len];
        for (i, c) in x.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        self.reduce(poly)
    }

    /// Wraps canonical coordinates as an element, shrinking to `Q` when rational.
    pub fn element(&self, coeffs: Vec<Rational>) -> Cyclotomic {
        Cyclotomic::normalized(self.order, coeffs)
    }

    /// Inverse by the extended Euclidean algorithm against `Φ_M`.
    pub fn inverse(&self, a: &[Rational]) -> Option<Vec<Rational>> {
        if a.iter().all(Zero::is_zero) {
            return None;
        }
        if self.degree() == 1 {
            return Some(vec![a[0].recip()]);
        }
        let modulus: Vec<Rational> =
            self.modulus.iter().map(|&m| Rational::from_integer(m.into())).collect();
        // invariant: s_i * a ≡ r_i (mod Φ)
        let (mut r0, mut r1) = (modulus, trim(a.to_vec()));
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Φ is irreducible
        debug_assert_eq!(r0.len(), 1);
        let inv_c = r0[0].recip();
        let s: Vec<Rational> = s0.into_iter().map(|c| c * &inv_c).collect();
        Some(self.reduce(s))
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b[db].recip();
    let mut quo = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quo[shift] = c;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quo), rem)
}

/// An element of `Q(ζ_M)` in canonical power-basis coordinates.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    fn normalized(order: u64, coeffs: Vec<Rational>) -> Self {
        if order > 1 && coeffs[1..].iter().all(Zero::is_zero) {
            let c = coeffs.into_iter().next().unwrap();
            return Cyclotomic { order: 1, coeffs: vec![c] };
        }
        Cyclotomic { order, coeffs }
    }

    /// Builds `Σ coeffs[i] ζ_M^i` from a polynomial of any length.
    pub fn from_poly(order: u64, coeffs: Vec<Rational>) -> Result<Self, Error> {
        if order == 0 {
            return Err(Error::InvalidOrder);
        }
        let field = CycloField::new(order);
        Ok(field.element(field.reduce(coeffs)))
    }

    /// Builds an element from coordinates that are already canonical.
    pub fn from_coords(order: u64, coeffs: Vec<Rational>) -> Result<Self, Error> {
        if order == 0 || coeffs.len() as u64 != euler_phi(order) {
            return Err(Error::InvalidOrder);
        }
        Ok(Self::normalized(order, coeffs))
    }

    pub fn from_rational(x: Rational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![x] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(arith::rat_int(n))
    }

    /// The primitive root `ζ_M = e^{2πi/M}`.
    pub fn zeta(order: u64) -> Self {
        e_of(&arith::rat(1, order as i64))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    pub fn lift_to(&self, order: u64) -> Vec<Rational> {
        CycloField::new(order).lift(self)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<Self, Error> {
        let field = CycloField::new(self.order);
        let coeffs = field.inverse(&self.coeffs).ok_or(Error::DivisionByZero)?;
        Ok(field.element(coeffs))
    }

    pub fn pow(&self, n: i64) -> Result<Self, Error> {
        let mut base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Complex value under `ζ_M ↦ e^{2πi/M}`.
    pub fn to_complex(&self) -> Complex64 {
        let step = 2.0 * core::f64::consts::PI / self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Complex64::from_polar(arith::to_f64(c), step * i as f64))
            .sum()
    }

    fn binary(&self, other: &Self, op: impl Fn(&CycloField, &[Rational], &[Rational]) -> Vec<Rational>) -> Self {
        let order = lcm(self.order as i64, other.order as i64) as u64;
        let field = CycloField::new(order);
        let a = field.lift(self);
        let b = field.lift(other);
        field.element(op(&field, &a, &b))
    }
}

/// `e(x) = e^{2πix}` for rational `x`, as `ζ_b^a` with `x ≡ a/b (mod 1)`.
pub fn e_of(x: &Rational) -> Cyclotomic {
    let f = arith::frac(x);
    let b = u64::try_from(f.denom()).expect("root of unity order exceeds u64");
    let a = usize::try_from(f.numer()).expect("root of unity index exceeds usize");
    let mut poly = vec![Rational::zero(); a + 1];
    poly[a] = Rational::one();
    let field = CycloField::new(b);
    field.element(field.reduce(poly))
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        (self - other).is_zero()
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, other: &Cyclotomic) -> Cyclotomic {
        if self.order == other.order {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return Cyclotomic::normalized(self.order, coeffs);
        }
        self.binary(other, |_, a, b| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, other: &Cyclotomic) -> Cyclotomic {
        self + &(-other)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, other: &Cyclotomic) -> Cyclotomic {
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        self.binary(other, |f, a, b| f.mul(a, b))
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, other: Cyclotomic) -> Cyclotomic {
                (&self).$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*z{}", c, self.order)?,
                _ => write!(f, "{}*z{}^{}", c, self.order, i)?,
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(18), vec![1, 0, 0, -1, 0, 0, 1]);
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len(), 49);
        assert_eq!(p105[7], -2);
    }

    #[test]
    fn half_turn_is_minus_one() {
        assert_eq!(e_of(&rat(1, 2)), Cyclotomic::from_int(-1));
        assert!(e_of(&rat(1, 2)).is_rational());
    }

    #[test]
    fn quarter_turns_multiply() {
        let i = e_of(&rat(1, 4));
        assert_eq!(&i * &i, e_of(&rat(1, 2)));
    }

    #[test]
    fn fifth_roots_sum_to_zero() {
        let total = (0..5).fold(Cyclotomic::zero(), |acc, a| &acc + &e_of(&rat(a, 5)));
        assert!(total.is_zero());
    }

    #[test]
    fn gaussian_norm() {
        let one = Cyclotomic::one();
        let i = Cyclotomic::zeta(4);
        assert_eq!(&(&one + &i) * &(&one - &i), Cyclotomic::from_int(2));
    }

    #[test]
    fn primitive_cube_roots_sum() {
        let w = Cyclotomic::zeta(3);
        assert_eq!(&w + &(&w * &w), Cyclotomic::from_int(-1));
    }

    #[test]
    fn inverse_of_one_plus_zeta8() {
        let x = &Cyclotomic::one() + &Cyclotomic::zeta(8);
        let inv = Cyclotomic::one().checked_div(&x).unwrap();
        assert_eq!(&inv * &x, Cyclotomic::one());
        assert!(!inv.is_rational());
    }

    #[test]
    fn divide_by_zero_rejected() {
        assert_eq!(Cyclotomic::one().checked_div(&Cyclotomic::zero()), Err(Error::DivisionByZero));
        let z = &Cyclotomic::zeta(6) - &Cyclotomic::zeta(6);
        assert_eq!(z.inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_orders_and_numeric_value() {
        let x = &Cyclotomic::zeta(3) + &Cyclotomic::zeta(4);
        let v = x.to_complex();
        let expect = Complex64::new(-0.5, 3f64.sqrt() / 2.0) + Complex64::new(0.0, 1.0);
        assert!((v - expect).norm() < 1e-14);
        assert_eq!(x.order(), 12);
    }

    #[test]
    fn from_coords_checks_length() {
        assert!(Cyclotomic::from_coords(5, vec![rat_int(1)]).is_err());
        assert!(Cyclotomic::from_coords(5, vec![rat_int(0); 4]).is_ok());
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..13).prop_map(|(n, d)| rat(n, d))
    }

    fn element() -> impl Strategy<Value = Cyclotomic> {
        (1u64..13).prop_flat_map(|m| {
            proptest::collection::vec(small_rat(), euler_phi(m) as usize)
                .prop_map(move |c| Cyclotomic::from_coords(m, c).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn e_is_a_character(a in small_rat(), b in small_rat()) {
            prop_assert_eq!(e_of(&(&a + &b)), &e_of(&a) * &e_of(&b));
        }

        #[test]
        fn division_undoes_multiplication(a in element(), c in element()) {
            prop_assume!(!c.is_zero());
            prop_assert_eq!((&a * &c).checked_div(&c).unwrap(), a);
        }

        #[test]
        fn lift_and_reduce_back(a in element(), k in 1u64..5) {
            let big = a.order() * k;
            let lifted = Cyclotomic::from_coords(big, a.lift_to(big)).unwrap();
            prop_assert_eq!(&lifted, &a);
            prop_assert!((lifted.to_complex() - a.to_complex()).norm() < 1e-9);
        }
    }
}
