//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use modunit::verify::{verify, VerifyOptions, VerifyReport};
use modunit_core::arith::rat;
use modunit_core::classical::j_function;
use modunit_core::cusps::{all_degrees_zero, cusp_count, enumerate_cusps, unit_group_rank};
use modunit_core::units::{bernoulli2, siegel_function, FracVector};
use modunit_core::{Cyclotomic, Exponent, Rational};

struct Verdict {
    pass: bool,
    detail: String,
}

fn from_report(r: &VerifyReport) -> Verdict {
    let mut detail = format!("{} checks", r.checks);
    if let Some(m) = r.max_residual {
        detail += &format!(", max residual {:.2e}", m);
    }
    if let Some(w) = &r.witness {
        detail += &format!(", witness: {}", w);
    }
    Verdict { pass: r.pass, detail }
}

fn within(v: Verdict, elapsed: Duration, limit: Option<Duration>) -> Verdict {
    let mut detail = format!("{}; {} ms", v.detail, elapsed.as_millis());
    let mut pass = v.pass;
    if let Some(limit) = limit {
        detail += &format!(" (limit {} ms)", limit.as_millis());
        pass &= elapsed < limit;
    }
    Verdict { pass, detail }
}

fn series_opts(trunc: i64) -> VerifyOptions {
    VerifyOptions { trunc: Exponent::from_integer(trunc), ..VerifyOptions::default() }
}

fn run_verify(identity: &str, opts: &VerifyOptions) -> Verdict {
    match verify(identity, opts) {
        Ok(r) => from_report(&r),
        Err(e) => Verdict { pass: false, detail: format!("error: {}", e) },
    }
}

fn all_of(parts: Vec<Verdict>) -> Verdict {
    Verdict {
        pass: parts.iter().all(|v| v.pass),
        detail: parts.into_iter().map(|v| v.detail).collect::<Vec<_>>().join(" | "),
    }
}

fn j_expansion() -> Verdict {
    let expected = [(-1, 1), (0, 744), (1, 196884), (2, 21493760), (3, 864299970)];
    let j = match j_function(Exponent::from_integer(10)) {
        Ok(j) => j,
        Err(e) => return Verdict { pass: false, detail: e.to_string() },
    };
    let bad: Vec<String> = expected
        .iter()
        .filter(|(e, c)| j.coeff(Exponent::from_integer(*e)) != Some(Cyclotomic::from_int(*c)))
        .map(|(e, _)| format!("q^{}", e))
        .collect();
    Verdict { pass: bad.is_empty(), detail: if bad.is_empty() { "5 coefficients".into() } else { bad.join(",") } }
}

fn order_formula() -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 2..=4i64 {
        for i in -n..2 * n {
            for j in -n..n {
                let v = FracVector::from_ratios(i, n, j, n);
                if v.is_integral() {
                    continue;
                }
                let got = siegel_function(&v, Exponent::from_integer(1))
                    .and_then(|g| g.pow(12 * n))
                    .ok()
                    .and_then(|p| p.ord());
                let frac_r = v.reduced().r;
                let want = bernoulli2(&frac_r) * Rational::from_integer((6 * n).into());
                checked += 1;
                if got.map(|e| rat(*e.numer(), *e.denom())) != Some(want) {
                    bad.push(format!("N={} v=[{}/{};{}/{}]", n, i, n, j, n));
                }
            }
        }
    }
    Verdict { pass: bad.is_empty(), detail: format!("{} index vectors{}", checked, if bad.is_empty() { String::new() } else { format!(", wrong: {}", bad.join(" ")) }) }
}

fn cusp_counts() -> Verdict {
    let bad: Vec<i64> = (2..=24)
        .filter(|&n| match (enumerate_cusps(n), cusp_count(n)) {
            (Ok(list), Ok(count)) => list.len() as u64 != count,
            _ => true,
        })
        .collect();
    let n2 = cusp_count(2).ok();
    Verdict {
        pass: bad.is_empty() && n2 == Some(3),
        detail: format!("N = 2..24, n(2) = {}{}", n2.unwrap_or(0), if bad.is_empty() { String::new() } else { format!(", wrong at {:?}", bad) }),
    }
}

fn ranks() -> Verdict {
    let mut detail = Vec::new();
    let mut pass = true;
    for n in 2..=6 {
        let rank = unit_group_rank(n).ok();
        let expected = cusp_count(n).ok().map(|c| c as usize - 1);
        let degrees = all_degrees_zero(n).unwrap_or(false);
        pass &= rank.is_some() && rank == expected && degrees;
        detail.push(format!("N={}: rank {}", n, rank.map_or("?".to_string(), |r| r.to_string())));
    }
    Verdict { pass, detail: detail.join(" ") }
}

fn criterion(number: u32, title: &str, limit: Option<Duration>, check: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let v = within(check(), start.elapsed(), limit);
    println!("[{}] criterion {:>2}: {} ({})", if v.pass { "PASS" } else { "FAIL" }, number, title, v.detail);
    v.pass
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "j = 1728 g2^3/Delta coefficients", Some(secs(5)), j_expansion),
        criterion(2, "Jacobi identity to order 200", Some(secs(10)), || run_verify("jacobi", &series_opts(200))),
        criterion(3, "theta-eta relations to order 200", None, || run_verify("theta-eta", &series_opts(200))),
        criterion(4, "g_{1,4} chain to order 60", None, || {
            all_of(vec![run_verify("g14-eta", &series_opts(60)), run_verify("g14-theta", &series_opts(60))])
        }),
        criterion(5, "order of g_v^{12N} for N = 2, 3, 4", None, order_formula),
        criterion(6, "cusp counts for N = 2..24", None, cusp_counts),
        criterion(7, "divisor rank n-1 and degree 0 for N = 2..6", Some(secs(10)), ranks),
        criterion(8, "wp series vs lattice sum at tau = 2i", None, || {
            run_verify("wp-oracle", &VerifyOptions { tol: 1e-8, ..series_opts(50) })
        }),
        criterion(9, "theta diagonal factorization, g = 2 and 3", Some(secs(30)), || {
            let run = |g| run_verify("theta-diag", &VerifyOptions { genus: g, samples: Some(50), seed: 2024, ..VerifyOptions::default() });
            all_of(vec![run(2), run(3)])
        }),
        criterion(10, "Phi vs Siegel quotient, 20 samples and zero branch", None, || {
            run_verify("phi-siegel", &VerifyOptions { samples: Some(20), seed: 2024, tol: 1e-8, ..series_opts(50) })
        }),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {}/{} criteria pass", passed, results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
