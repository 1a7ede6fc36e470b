//! Argument syntax: rationals `a/b`, complex numbers `x+yi`, comma lists and
//! semicolon-separated matrix rows.

use core::str::FromStr;

use modunit_core::{Exponent, Rational};
use num_complex::Complex64;

use crate::CliError;

pub fn parse_rational(input: &str) -> Result<Rational, CliError> {
    Rational::from_str(input.trim()).map_err(|_| CliError::parse("rational", input))
}

pub fn parse_exponent(input: &str) -> Result<Exponent, CliError> {
    let x = parse_rational(input)?;
    modunit_core::arith::to_exponent(&x).map_err(|_| CliError::parse("exponent", input))
}

pub fn parse_rational_list(input: &str) -> Result<Vec<Rational>, CliError> {
    input.split(',').map(parse_rational).collect()
}

fn parse_real(input: &str) -> Option<f64> {
    let v = f64::from_str(input).ok()?;
    v.is_finite().then_some(v)
}

/// Accepts `x`, `yi`, `i`, `-i`, `x+yi`, `x-i`; exponents like `1e-3` are fine.
pub fn parse_complex(input: &str) -> Result<Complex64, CliError> {
    let t: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::parse("complex number", input);
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return parse_real(&t).map(|x| Complex64::new(x, 0.0)).ok_or_else(bad);
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => parse_real(s).ok_or_else(bad)?,
    };
    Ok(Complex64::new(parse_real(re).ok_or_else(bad)?, im))
}

/// Rows separated by `;`, entries by `,`.
pub fn parse_complex_matrix(input: &str) -> Result<Vec<Vec<Complex64>>, CliError> {
    input
        .split(';')
        .map(|row| row.split(',').map(parse_complex).collect())
        .collect()
}

/// `r1,...,rg:s1,...,sg`.
pub fn parse_characteristic(input: &str) -> Result<(Vec<Rational>, Vec<Rational>), CliError> {
    let (r, s) = input.split_once(':').ok_or_else(|| CliError::parse("characteristic", input))?;
    let (r, s) = (parse_rational_list(r)?, parse_rational_list(s)?);
    if r.len() != s.len() {
        return Err(CliError::parse("characteristic", input));
    }
    Ok((r, s))
}

/// A point of genus `g`: either `g` diagonal entries or `g` rows of `g` entries,
/// returned row-major.
pub fn parse_point(input: &str, g: usize) -> Result<Vec<Complex64>, CliError> {
    let rows = parse_complex_matrix(input)?;
    let bad = || CliError::parse("point", input);
    if rows.len() == 1 && rows[0].len() == g {
        let mut out = vec![Complex64::new(0.0, 0.0); g * g];
        for (k, t) in rows[0].iter().enumerate() {
            out[k * g + k] = *t;
        }
        return Ok(out);
    }
    if rows.len() == 1 && rows[0].len() == g * g {
        return Ok(rows.into_iter().next().unwrap());
    }
    if rows.len() == g && rows.iter().all(|r| r.len() == g) {
        return Ok(rows.into_iter().flatten().collect());
    }
    Err(bad())
}

#[cfg(test)]
mod tests {
    use super::*;
    use modunit_core::arith::rat;
    use proptest::prelude::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        for bad in ["", "1/0", "a/b", "1.5", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{}", bad);
        }
        assert_eq!(parse_exponent("-1/24").unwrap(), Exponent::new(-1, 24));
    }

    #[test]
    fn complex_forms() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex("0.5+1.25i").unwrap(), c(0.5, 1.25));
        assert_eq!(parse_complex("-0.5-i").unwrap(), c(-0.5, -1.0));
        assert_eq!(parse_complex("1e-3+2e+1i").unwrap(), c(1e-3, 20.0));
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        for bad in ["", "j", "1+", "1+2", "ii", "nan", "1+xi"] {
            assert!(parse_complex(bad).is_err(), "{}", bad);
        }
    }

    #[test]
    fn points_and_characteristics() {
        let p = parse_point("i,2i", 2).unwrap();
        assert_eq!(p[3], Complex64::new(0.0, 2.0));
        assert_eq!(p[1], Complex64::new(0.0, 0.0));
        let m = parse_point("i,0.5;0.5,2i", 2).unwrap();
        assert_eq!(m[1], Complex64::new(0.5, 0.0));
        assert!(parse_point("i,2i,3i", 2).is_err());
        let (r, s) = parse_characteristic("1/2,0:0,1/3").unwrap();
        assert_eq!(r, vec![rat(1, 2), rat(0, 1)]);
        assert_eq!(s[1], rat(1, 3));
        assert!(parse_characteristic("0,0:0").is_err());
        assert!(parse_characteristic("0,0").is_err());
    }

    proptest! {
        #[test]
        fn complex_display_round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            let text = format!("{:e}{:+e}i", re, im);
            prop_assert_eq!(parse_complex(&text).unwrap(), Complex64::new(re, im));
        }

        #[test]
        fn rational_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            prop_assert_eq!(parse_rational(&format!("{}/{}", n, d)).unwrap(), rat(n, d));
        }
    }
}
