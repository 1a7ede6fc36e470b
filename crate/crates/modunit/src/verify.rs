//! Named identity checks producing a [`VerifyReport`].
//!
//! Series identities are checked exactly, coefficient by coefficient, below the
//! requested truncation. Numeric ones report the largest residual seen and the
//! sample that produced it. Randomized checks draw from a ChaCha stream seeded
//! by the caller, so a seed fixes the whole report apart from `wall_ms`.

use std::fmt::Write as _;
use std::time::Instant;

use modunit_core::arith::rat;
use modunit_core::classical::{discriminant, eta, j_function, theta_classical, Theta};
use modunit_core::cusps::{all_degrees_zero, cusp_count, enumerate_cusps, unit_group_rank};
use modunit_core::qseries::{product_family, with_precision, Factor};
use modunit_core::thetag::{
    phi_siegel_identity_residual, theta_constant, theta_diag_factorization_residual, SiegelPoint, ThetaChar,
};
use modunit_core::units::{bernoulli2_frac_nonzero, g14, h1n, wp_expansion, FracVector};
use modunit_core::{Cyclotomic, Exponent, PuiseuxSeries, Rational};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::json::exponent_string;
use crate::oracle;
use crate::CliError;

pub const IDENTITIES: [&str; 12] = [
    "jacobi",
    "theta-eta",
    "g14-eta",
    "g14-theta",
    "delta-eta",
    "j-coeffs",
    "bernoulli-nonzero",
    "rank",
    "cusp-count",
    "wp-oracle",
    "theta-diag",
    "phi-siegel",
];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub trunc: Exponent,
    pub tol: f64,
    pub level: Option<i64>,
    pub genus: usize,
    pub samples: Option<usize>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { trunc: Exponent::from_integer(50), tol: 1e-10, level: None, genus: 2, samples: None, seed: 0 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trunc: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub level: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub identity: String,
    pub parameters: Parameters,
    pub pass: bool,
    pub checks: usize,
    pub first_failing_exponent: Option<String>,
    pub max_residual: Option<f64>,
    pub witness: Option<String>,
    pub wall_ms: u64,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "identity   {}", self.identity);
        let _ = writeln!(out, "result     {}", if self.pass { "pass" } else { "FAIL" });
        let _ = writeln!(out, "checks     {}", self.checks);
        if let Some(e) = &self.first_failing_exponent {
            let _ = writeln!(out, "exponent   {}", e);
        }
        if let Some(r) = self.max_residual {
            let _ = writeln!(out, "residual   {:e}", r);
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness    {}", w);
        }
        let _ = writeln!(out, "wall_ms    {}", self.wall_ms);
        out
    }
}

/// Accumulated result of one identity run.
#[derive(Default)]
struct Outcome {
    checks: usize,
    failed: bool,
    first_failing_exponent: Option<String>,
    max_residual: Option<f64>,
    witness: Option<String>,
}

impl Outcome {
    fn fail(&mut self, witness: String) {
        if !self.failed {
            self.failed = true;
            self.witness = Some(witness);
        }
    }

    fn series(&mut self, label: &str, lhs: &PuiseuxSeries, rhs: &PuiseuxSeries, target: Exponent) -> Result<(), CliError> {
        self.checks += 1;
        if lhs.trunc() < target || rhs.trunc() < target {
            self.fail(format!(
                "{}: sides known only below {} and {}",
                label,
                exponent_string(lhs.trunc()),
                exponent_string(rhs.trunc())
            ));
            return Ok(());
        }
        let (lhs, rhs) = (lhs.truncate(target), rhs.truncate(target));
        if let Some(e) = lhs.first_mismatch(&rhs)? {
            let zero = Cyclotomic::from_int(0);
            let a = lhs.coeff(e).unwrap_or_else(|| zero.clone());
            let b = rhs.coeff(e).unwrap_or(zero);
            if !self.failed {
                self.first_failing_exponent = Some(exponent_string(e));
            }
            self.fail(format!("{}: coefficient of q^({}) is {} on the left, {} on the right", label, exponent_string(e), a, b));
        }
        Ok(())
    }

    fn residual(&mut self, value: f64, tol: f64, describe: impl FnOnce() -> String) {
        self.checks += 1;
        let worst = self.max_residual.map_or(true, |m| !(value <= m));
        if worst {
            self.max_residual = Some(value);
        }
        if !(value < tol) {
            self.fail(format!("{}: residual {:e}", describe(), value));
        }
    }

    fn condition(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(describe());
        }
    }
}

pub fn verify(identity: &str, opts: &VerifyOptions) -> Result<VerifyReport, CliError> {
    if !IDENTITIES.contains(&identity) {
        return Err(CliError::Unknown { what: "identity", name: identity.to_string() });
    }
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(modunit_core::Error::InvalidTolerance.into());
    }
    let start = Instant::now();
    let mut params = Parameters::default();
    let mut out = Outcome::default();
    let t = opts.trunc;
    let trunc_param = |p: &mut Parameters| p.trunc = Some(exponent_string(t));
    match identity {
        "jacobi" => {
            trunc_param(&mut params);
            jacobi(&mut out, t)?
        }
        "theta-eta" => {
            trunc_param(&mut params);
            theta_eta(&mut out, t)?
        }
        "g14-eta" => {
            trunc_param(&mut params);
            g14_eta(&mut out, t)?
        }
        "g14-theta" => {
            trunc_param(&mut params);
            g14_theta(&mut out, t)?
        }
        "delta-eta" => {
            trunc_param(&mut params);
            let rhs = eta(t)?.pow(24)?.with_two_pi_i_power(12);
            out.series("Δ = η²⁴", &discriminant(t), &rhs, t)?;
        }
        "j-coeffs" => {
            trunc_param(&mut params);
            j_coeffs(&mut out, t)?
        }
        "bernoulli-nonzero" => {
            let top = opts.level.unwrap_or(100);
            params.level = Some(top);
            for d in 1..=top.max(1) {
                for a in 0..d {
                    out.condition(bernoulli2_frac_nonzero(&rat(a, d)), || format!("B₂({}/{}) = 0", a, d));
                }
            }
        }
        "rank" => {
            params.level = opts.level;
            for n in levels(opts.level, 2..=6)? {
                let rank = unit_group_rank(n)?;
                let expected = cusp_count(n)? - 1;
                out.condition(rank as u64 == expected, || format!("N={}: rank {} but n−1 = {}", n, rank, expected));
                out.condition(all_degrees_zero(n)?, || format!("N={}: a divisor row has nonzero degree", n));
            }
        }
        "cusp-count" => {
            params.level = opts.level;
            for n in levels(opts.level, 2..=24)? {
                let listed = enumerate_cusps(n)?.len() as u64;
                let formula = cusp_count(n)?;
                out.condition(listed == formula, || format!("N={}: {} classes listed, formula gives {}", n, listed, formula));
            }
        }
        "wp-oracle" => {
            trunc_param(&mut params);
            params.tol = Some(opts.tol);
            wp_oracle(&mut out, t, opts.tol)?
        }
        "theta-diag" => {
            let samples = opts.samples.unwrap_or(50);
            params.tol = Some(opts.tol);
            params.g = Some(opts.genus);
            params.samples = Some(samples);
            params.seed = Some(opts.seed);
            theta_diag(&mut out, opts.genus, samples, opts.seed, opts.tol)?
        }
        "phi-siegel" => {
            let samples = opts.samples.unwrap_or(20);
            trunc_param(&mut params);
            params.tol = Some(opts.tol);
            params.samples = Some(samples);
            params.seed = Some(opts.seed);
            phi_siegel(&mut out, t, samples, opts.seed, opts.tol)?
        }
        _ => unreachable!("checked against IDENTITIES"),
    }
    Ok(VerifyReport {
        identity: identity.to_string(),
        parameters: params,
        pass: !out.failed,
        checks: out.checks,
        first_failing_exponent: out.first_failing_exponent,
        max_residual: out.max_residual,
        witness: out.witness,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

fn levels(given: Option<i64>, default: std::ops::RangeInclusive<i64>) -> Result<Vec<i64>, CliError> {
    match given {
        Some(n) if n < 2 => Err(modunit_core::Error::InvalidLevel(n).into()),
        Some(n) => Ok(vec![n]),
        None => Ok(default.collect()),
    }
}

fn jacobi(out: &mut Outcome, t: Exponent) -> Result<(), CliError> {
    let fourth = |w| theta_classical(w, t).pow(4);
    let lhs = fourth(Theta::Two)?.try_add(&fourth(Theta::Four)?)?;
    out.series("θ₂⁴ + θ₄⁴ = θ₃⁴", &lhs, &fourth(Theta::Three)?, t)
}

/// `f(mτ)` known below `t`.
fn at_multiple(m: i64, t: Exponent, f: impl Fn(Exponent) -> Result<PuiseuxSeries, modunit_core::Error>) -> Result<PuiseuxSeries, CliError> {
    Ok(f(t / m + 1)?.substitute_q_power(m).truncate(t))
}

fn theta_eta(out: &mut Outcome, t: Exponent) -> Result<(), CliError> {
    let theta2 = at_multiple(2, t, |w| Ok(theta_classical(Theta::Two, w)))?;
    let theta4 = at_multiple(2, t, |w| Ok(theta_classical(Theta::Four, w)))?;
    let rhs2 = with_precision(t, |w| {
        let e4 = eta(w / 4 + 1)?.substitute_q_power(4);
        let e2 = eta(w / 2 + 1)?.substitute_q_power(2);
        Ok(e4.pow(2)?.mul(&e2.inv()?).scale_int(2))
    })?;
    let rhs4 = with_precision(t, |w| {
        let e1 = eta(w + 1)?;
        let e2 = eta(w / 2 + 1)?.substitute_q_power(2);
        Ok(e1.pow(2)?.mul(&e2.inv()?))
    })?;
    out.series("θ₂(2τ) = 2η(4τ)²/η(2τ)", &theta2, &rhs2, t)?;
    out.series("θ₄(2τ) = η(τ)²/η(2τ)", &theta4, &rhs4, t)
}

fn g14_eta(out: &mut Outcome, t: Exponent) -> Result<(), CliError> {
    let g = g14(t)?;
    let shifted = g.try_sub(&PuiseuxSeries::constant(Cyclotomic::from_int(16), t))?;
    let quotient = with_precision(t, |w| {
        let e1 = eta(w + 1)?;
        let e4 = eta(w / 4 + 1)?.substitute_q_power(4);
        Ok(e1.pow(8)?.mul(&e4.pow(-8)?))
    })?;
    // q^{-1} ∏ (1 + qⁿ)^{-8} (1 + q^{2n})^{-8}
    let product = with_precision(t, |w| {
        let top = (w + 1).ceil().to_integer().max(1);
        let minus_one = Cyclotomic::from_int(-1);
        let mut factors = Vec::new();
        for n in 1..=top {
            factors.push(Factor::new(minus_one.clone(), Exponent::from_integer(n), -8));
            factors.push(Factor::new(minus_one.clone(), Exponent::from_integer(2 * n), -8));
        }
        Ok(product_family(&factors, w + 1)?.shift(Exponent::from_integer(-1)))
    })?;
    out.series("g₁,₄ − 16 = η(τ)⁸/η(4τ)⁸", &shifted, &quotient, t)?;
    out.series("η(τ)⁸/η(4τ)⁸ = q⁻¹∏(1+qⁿ)⁻⁸(1+q²ⁿ)⁻⁸", &quotient, &product, t)
}

fn g14_theta(out: &mut Outcome, t: Exponent) -> Result<(), CliError> {
    let rhs = with_precision(t, |w| {
        let t3 = theta_classical(Theta::Three, w / 2 + 1).substitute_q_power(2);
        let t2 = theta_classical(Theta::Two, w / 2 + 1).substitute_q_power(2);
        Ok(t3.pow(4)?.mul(&t2.pow(-4)?).scale_int(16))
    })?;
    out.series("g₁,₄ = 16θ₃(2τ)⁴/θ₂(2τ)⁴", &g14(t)?, &rhs, t)
}

fn j_coeffs(out: &mut Outcome, t: Exponent) -> Result<(), CliError> {
    const EXPECTED: [(i64, i64); 5] = [(-1, 1), (0, 744), (1, 196884), (2, 21493760), (3, 864299970)];
    let j = j_function(t)?;
    for (e, c) in EXPECTED {
        let e = Exponent::from_integer(e);
        if e >= t {
            continue;
        }
        let got = j.coeff(e).unwrap_or_else(|| Cyclotomic::from_int(0));
        out.checks += 1;
        if got != Cyclotomic::from_int(c) {
            if !out.failed {
                out.first_failing_exponent = Some(exponent_string(e));
            }
            out.fail(format!("coefficient of q^({}) is {}, expected {}", exponent_string(e), got, c));
        }
    }
    Ok(())
}

/// The index vectors compared against the lattice sum, all at `τ = 2i`.
pub const WP_INDICES: [(i64, i64, i64, i64); 4] = [(1, 4, 0, 1), (0, 1, 1, 3), (1, 2, 1, 2), (1, 5, 1, 5)];

fn wp_oracle(out: &mut Outcome, t: Exponent, tol: f64) -> Result<(), CliError> {
    let tau = Complex64::new(0.0, 2.0);
    for (rn, rd, sn, sd) in WP_INDICES {
        let v = FracVector::from_ratios(rn, rd, sn, sd);
        let series = wp_expansion(&v, t)?.evaluate(tau);
        let lattice = oracle::wp_value(rn as f64 / rd as f64, sn as f64 / sd as f64, tau);
        out.residual((series - lattice).norm(), tol, || {
            format!("℘_[{}/{};{}/{}](2i): series {} vs lattice {}", rn, rd, sn, sd, series, lattice)
        });
    }
    let series = h1n(8, t)?.evaluate(tau);
    let p = |s: f64| oracle::wp_value(0.0, s, tau);
    let lattice = (p(0.125) - p(0.5)) / (p(0.5) - p(0.25));
    out.residual((series - lattice).norm(), tol, || format!("h_1,8(2i): series {} vs lattice {}", series, lattice));
    Ok(())
}

/// A rational with denominator at most 4 in `[−1, 1]`.
fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.gen_range(1..=4);
    rat(rng.gen_range(-d..=d), d)
}

fn sample_tau(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..2.0))
}

fn char_string(r: &[Rational], s: &[Rational]) -> String {
    let list = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    format!("{}:{}", list(r), list(s))
}

/// Accuracy requested from each theta sum, well inside the pass threshold.
fn eval_tol(tol: f64) -> f64 {
    (tol * 1e-3).max(1e-16)
}

fn theta_diag(out: &mut Outcome, g: usize, samples: usize, seed: u64, tol: f64) -> Result<(), CliError> {
    if g == 0 {
        return Err(CliError::Usage("genus must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..samples {
        let r: Vec<Rational> = (0..g).map(|_| small_rational(&mut rng)).collect();
        let s: Vec<Rational> = (0..g).map(|_| small_rational(&mut rng)).collect();
        let taus: Vec<Complex64> = (0..g).map(|_| sample_tau(&mut rng)).collect();
        let ch = ThetaChar::new(r.clone(), s.clone())?;
        let res = theta_diag_factorization_residual(&ch, &taus, eval_tol(tol))?;
        out.residual(res, tol, || format!("sample {}: char {} at diag{:?}", k, char_string(&r, &s), taus));
    }
    Ok(())
}

fn phi_siegel(out: &mut Outcome, t: Exponent, samples: usize, seed: u64, tol: f64) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = rat(1, 2);
    let half_integral = |x: &Rational| (x - &half).is_integer();
    let mut k = 0;
    while k < samples {
        let (r, s) = (small_rational(&mut rng), small_rational(&mut rng));
        let tau = sample_tau(&mut rng);
        if half_integral(&r) && half_integral(&s) {
            continue;
        }
        let res = phi_siegel_identity_residual(&r, &s, tau, t)?;
        out.residual(res, tol, || format!("sample {}: [{};{}] at τ = {}", k, r, s, tau));
        k += 1;
    }
    // Odd characteristics: Θ vanishes identically.
    for (rn, sn) in [(1, 1), (-1, 1), (3, -1), (1, -3)] {
        let (r, s) = (rat(rn, 2), rat(sn, 2));
        let tau = sample_tau(&mut rng);
        let z = SiegelPoint::new(1, vec![tau])?;
        let ch = ThetaChar::new(vec![r.clone()], vec![s.clone()])?;
        let value = theta_constant(&ch, &z, eval_tol(tol))?.value.norm();
        out.residual(value, tol, || format!("Θ_[{};{}]({}) should vanish", r, s, tau));
    }
    Ok(())
}
