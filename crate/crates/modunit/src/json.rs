//! The JSON series format:
//!
//! ```text
//! {"two_pi_i_power": p, "denom": D, "trunc": "a/b",
//!  "terms": [{"k": k, "coeff": {"order": M, "coeffs": [["num", "den"], ...]}}]}
//! ```
//!
//! A term stands for `coeff · q^{k/D}`; `coeffs` are power-basis coordinates of
//! the coefficient in `Q(ζ_M)`.

use modunit_core::{Cyclotomic, Exponent, PuiseuxSeries};
use serde::{Deserialize, Serialize};

use crate::parse::{parse_exponent, parse_rational};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicJson {
    pub order: u64,
    pub coeffs: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub k: i64,
    pub coeff: CyclotomicJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub two_pi_i_power: i32,
    pub denom: i64,
    pub trunc: String,
    pub terms: Vec<TermJson>,
}

pub fn exponent_string(e: Exponent) -> String {
    format!("{}/{}", e.numer(), e.denom())
}

impl From<&Cyclotomic> for CyclotomicJson {
    fn from(c: &Cyclotomic) -> Self {
        CyclotomicJson {
            order: c.order(),
            coeffs: c.coeffs().iter().map(|x| [x.numer().to_string(), x.denom().to_string()]).collect(),
        }
    }
}

impl TryFrom<&CyclotomicJson> for Cyclotomic {
    type Error = CliError;

    fn try_from(j: &CyclotomicJson) -> Result<Self, CliError> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|[n, d]| {
                let x = parse_rational(&format!("{}/{}", n, d))?;
                Ok(x)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(Cyclotomic::from_coords(j.order, coeffs)?)
    }
}

impl From<&PuiseuxSeries> for SeriesJson {
    fn from(s: &PuiseuxSeries) -> Self {
        SeriesJson {
            two_pi_i_power: s.two_pi_i_power(),
            denom: s.denom(),
            trunc: exponent_string(s.trunc()),
            terms: s.raw_terms().map(|(k, c)| TermJson { k, coeff: c.into() }).collect(),
        }
    }
}

impl TryFrom<&SeriesJson> for PuiseuxSeries {
    type Error = CliError;

    fn try_from(j: &SeriesJson) -> Result<Self, CliError> {
        if j.denom <= 0 {
            return Err(CliError::parse("series denominator", &j.denom.to_string()));
        }
        let trunc = parse_exponent(&j.trunc)?;
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((t.k, Cyclotomic::try_from(&t.coeff)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(PuiseuxSeries::from_terms(j.denom, terms, trunc, j.two_pi_i_power))
    }
}

pub fn series_to_json(s: &PuiseuxSeries) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(&SeriesJson::from(s))?)
}

pub fn series_from_json(text: &str) -> Result<PuiseuxSeries, CliError> {
    let j: SeriesJson = serde_json::from_str(text)?;
    PuiseuxSeries::try_from(&j)
}
