//! Command-line interface. [`run`] does all the work and returns the exit code
//! together with what should go to stdout, so it can be driven in-process.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use modunit_core::classical::{discriminant, eisenstein, eta, j_function, theta_classical, Eisenstein, Theta};
use modunit_core::cusps::{cusp_count, divisor_of_siegel_power, enumerate_cusps, unit_group_rank};
use modunit_core::thetag::{theta_constant, theta_constant_with_radius, SiegelPoint, ThetaChar};
use modunit_core::units::{g14, h1n, hn, klein_form_0_half, siegel_function, weierstrass_unit, wp_expansion, FracVector};
use modunit_core::{Exponent, PuiseuxSeries};
use num_complex::Complex64;
use serde_json::json;

use crate::json::series_to_json;
use crate::parse::{parse_characteristic, parse_exponent, parse_point, parse_rational};
use crate::verify::{verify, VerifyOptions};
use crate::CliError;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "modunit", version, about = "Exact q-expansions of modular units and Siegel theta constants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the q-expansion of a named function.
    ///
    /// Names: eta theta2 theta3 theta4 g2 g3 delta j klein g14 (no parameters);
    /// siegel R S; wp R S; wunit R1 S1 R2 S2 R3 S3 R4 S4; h1N N; hN N.
    Expand {
        name: String,
        /// Parameters; put `--` before any that start with a minus sign.
        params: Vec<String>,
        #[arg(long, default_value = "50")]
        trunc: String,
        #[arg(long = "N")]
        level: Option<i64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check a named identity; exits 1 if it fails.
    Verify {
        identity: String,
        #[arg(long, default_value = "50")]
        trunc: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long = "N")]
        level: Option<i64>,
        #[arg(long, default_value_t = 2)]
        g: usize,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// List the cusps of X(N).
    Cusps {
        level: i64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Divisor of g_[r;s]^{12N} on the cusps of X(N).
    Divisor {
        r: String,
        s: String,
        level: i64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Rank of the Siegel-unit divisor matrix at level N.
    Rank {
        level: i64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Evaluate a theta constant Θ[r;s](Z).
    Theta {
        #[arg(long)]
        g: usize,
        #[arg(long = "char", allow_hyphen_values = true)]
        characteristic: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_PASS, stdout, stderr: String::new() }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n", e) },
    }
}

fn dispatch(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Expand { name, params, trunc, level, format } => {
            let series = expand(&name, &params, parse_exponent(&trunc)?, level)?;
            Ok(Outcome::ok(match format {
                Format::Json => series_to_json(&series)? + "\n",
                Format::Text => series_text(&series),
            }))
        }
        Command::Verify { identity, trunc, tol, level, g, samples, seed, format } => {
            let opts = VerifyOptions { trunc: parse_exponent(&trunc)?, tol, level, genus: g, samples, seed };
            let report = verify(&identity, &opts)?;
            let stdout = match format {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Text => report.to_text(),
            };
            Ok(Outcome { code: if report.pass { EXIT_PASS } else { EXIT_FAIL }, stdout, stderr: String::new() })
        }
        Command::Cusps { level, format } => {
            let cusps = enumerate_cusps(level)?;
            let count = cusp_count(level)?;
            Ok(Outcome::ok(match format {
                Format::Json => {
                    let classes: Vec<[i64; 2]> = cusps.iter().map(|c| [c.a, c.c]).collect();
                    serde_json::to_string_pretty(&json!({ "N": level, "count": count, "classes": classes }))? + "\n"
                }
                Format::Text => {
                    let mut out = format!("{} cusps of X({})\n", count, level);
                    for c in &cusps {
                        let _ = writeln!(out, "  ±({}, {})", c.a, c.c);
                    }
                    out
                }
            }))
        }
        Command::Divisor { r, s, level, format } => {
            let v = FracVector::new(parse_rational(&r)?, parse_rational(&s)?);
            let d = divisor_of_siegel_power(&v, level)?;
            Ok(Outcome::ok(match format {
                Format::Json => {
                    let entries: Vec<_> = d
                        .entries
                        .iter()
                        .map(|(c, m)| json!({ "cusp": [c.a, c.c], "order": m.to_string() }))
                        .collect();
                    let body = json!({ "N": level, "entries": entries, "degree": d.degree().to_string() });
                    serde_json::to_string_pretty(&body)? + "\n"
                }
                Format::Text => {
                    let mut out = String::new();
                    for (c, m) in &d.entries {
                        let _ = writeln!(out, "  ±({}, {})  {:>8}", c.a, c.c, m.to_string());
                    }
                    let _ = writeln!(out, "degree {}", d.degree());
                    out
                }
            }))
        }
        Command::Rank { level, format } => {
            let rank = unit_group_rank(level)?;
            let count = cusp_count(level)?;
            Ok(Outcome::ok(match format {
                Format::Json => {
                    serde_json::to_string_pretty(&json!({ "N": level, "rank": rank, "cusps": count }))? + "\n"
                }
                Format::Text => format!("N = {}: rank {} with {} cusps\n", level, rank, count),
            }))
        }
        Command::Theta { g, characteristic, point, tol, format } => theta(g, &characteristic, &point, tol, format),
    }
}

fn need(params: &[String], n: usize, name: &str) -> Result<(), CliError> {
    if params.len() == n {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{} takes {} parameter(s), got {}", name, n, params.len())))
    }
}

fn vector(r: &str, s: &str) -> Result<FracVector, CliError> {
    Ok(FracVector::new(parse_rational(r)?, parse_rational(s)?))
}

fn level_param(params: &[String], level: Option<i64>, name: &str) -> Result<i64, CliError> {
    match (params, level) {
        ([], Some(n)) => Ok(n),
        ([p], None) => p.trim().parse().map_err(|_| CliError::parse("level", p)),
        _ => Err(CliError::Usage(format!("{} takes a level N", name))),
    }
}

pub fn expand(name: &str, params: &[String], trunc: Exponent, level: Option<i64>) -> Result<PuiseuxSeries, CliError> {
    let plain = |n: usize| need(params, n, name);
    Ok(match name {
        "eta" => {
            plain(0)?;
            eta(trunc)?
        }
        "theta2" | "theta3" | "theta4" => {
            plain(0)?;
            let which = match name {
                "theta2" => Theta::Two,
                "theta3" => Theta::Three,
                _ => Theta::Four,
            };
            theta_classical(which, trunc)
        }
        "g2" => {
            plain(0)?;
            eisenstein(Eisenstein::G2, trunc)
        }
        "g3" => {
            plain(0)?;
            eisenstein(Eisenstein::G3, trunc)
        }
        "delta" => {
            plain(0)?;
            discriminant(trunc)
        }
        "j" => {
            plain(0)?;
            j_function(trunc)?
        }
        "klein" => {
            plain(0)?;
            klein_form_0_half(trunc)?
        }
        "g14" => {
            plain(0)?;
            g14(trunc)?
        }
        "siegel" => {
            plain(2)?;
            siegel_function(&vector(&params[0], &params[1])?, trunc)?
        }
        "wp" => {
            plain(2)?;
            wp_expansion(&vector(&params[0], &params[1])?, trunc)?
        }
        "wunit" => {
            plain(8)?;
            let v: Vec<FracVector> =
                params.chunks(2).map(|p| vector(&p[0], &p[1])).collect::<Result<_, _>>()?;
            weierstrass_unit(&v[0], &v[1], &v[2], &v[3], trunc)?
        }
        "h1N" => h1n(level_param(params, level, name)?, trunc)?,
        "hN" => hn(level_param(params, level, name)?, trunc)?,
        _ => return Err(CliError::Unknown { what: "series name", name: name.to_string() }),
    })
}

/// One line per term: exponent, then coefficient.
pub fn series_text(s: &PuiseuxSeries) -> String {
    let rows: Vec<(String, String)> = s.terms().map(|(e, c)| (e.to_string(), c.to_string())).collect();
    let width = rows.iter().map(|(e, _)| e.len()).max().unwrap_or(0).max(8);
    let mut out = String::new();
    if s.two_pi_i_power() != 0 {
        let _ = writeln!(out, "factor (2πi)^{}", s.two_pi_i_power());
    }
    let _ = writeln!(out, "{:>width$}  coefficient", "exponent");
    for (e, c) in rows {
        let _ = writeln!(out, "{:>width$}  {}", e, c);
    }
    let _ = writeln!(out, "{:>width$}  O(q^({}))", "", s.trunc());
    out
}

fn theta(g: usize, characteristic: &str, point: &str, tol: f64, format: Format) -> Result<Outcome, CliError> {
    if g == 0 {
        return Err(CliError::Usage("--g must be at least 1".into()));
    }
    let (r, s) = parse_characteristic(characteristic)?;
    let ch = ThetaChar::new(r, s)?;
    let entries = parse_point(point, g)?;
    let z = SiegelPoint::new(g, entries)?;
    let value = theta_constant(&ch, &z, tol)?;
    let wider = theta_constant_with_radius(&ch, &z, value.radius + 5)?;
    let mut residuals = serde_json::Map::new();
    residuals.insert("radius_plus_5".into(), json!((wider - value.value).norm()));
    let diagonal = (0..g).all(|i| (0..g).all(|j| i == j || z.entry(i, j) == Complex64::new(0.0, 0.0)));
    if diagonal && g > 1 {
        let mut product = Complex64::new(1.0, 0.0);
        for k in 0..g {
            let zk = SiegelPoint::new(1, vec![z.entry(k, k)])?;
            product *= theta_constant(&ch.component(k), &zk, tol)?.value;
        }
        residuals.insert("diagonal_product".into(), json!((value.value - product).norm()));
    }
    let stdout = match format {
        Format::Json => {
            let body = json!({
                "value_re": value.value.re,
                "value_im": value.value.im,
                "radius": value.radius,
                "residuals": residuals,
            });
            serde_json::to_string_pretty(&body)? + "\n"
        }
        Format::Text => {
            let mut out = format!("value   {:+.16e} {:+.16e}i\nradius  {}\n", value.value.re, value.value.im, value.radius);
            for (k, v) in &residuals {
                let _ = writeln!(out, "{}  {}", k, v);
            }
            out
        }
    };
    Ok(Outcome::ok(stdout))
}
