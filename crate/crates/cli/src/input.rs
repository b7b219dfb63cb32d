//! Reading states and interaction specs.

use std::io::Read;

use orbits_core::nalgebra::{Matrix3, Vector3};
use orbits_core::num_complex::Complex64;
use orbits_core::{DensityMatrix4, InteractionSpec, Matrix4c, TwoQubitState};
use serde::Deserialize;

use crate::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleJson {
    r1: [f64; 3],
    r2: [f64; 3],
    #[serde(rename = "T")]
    t: [[f64; 3]; 3],
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RhoEntries {
    Flat(Vec<[f64; 2]>),
    Nested(Vec<Vec<[f64; 2]>>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RhoJson {
    rho: RhoEntries,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StateJson {
    Triple(TripleJson),
    Rho(RhoJson),
}

/// A parsed state. Density-matrix input that fails its checks is kept as an
/// error so the caller can report it as invalid input rather than a parse failure.
pub enum ParsedState {
    Triple(TwoQubitState),
    Rho(Result<TwoQubitState, orbits_core::Error>),
}

pub fn read_source(input: Option<&str>) -> Result<String, CliError> {
    match input {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
        Some(text) if looks_inline(text) => Ok(text.to_string()),
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}"))),
    }
}

fn looks_inline(text: &str) -> bool {
    let t = text.trim_start();
    t.starts_with('{') || t.contains(',') || t.contains('\n')
}

pub fn parse_state(text: &str) -> Result<ParsedState, CliError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        parse_state_json(trimmed)
    } else {
        parse_state_csv(trimmed).map(ParsedState::Triple)
    }
}

fn parse_state_json(text: &str) -> Result<ParsedState, CliError> {
    let parsed: StateJson = serde_json::from_str(text).map_err(|e| {
        CliError::Usage(format!(
            "state JSON must be {{\"r1\",\"r2\",\"T\"}} or {{\"rho\"}}: {e}"
        ))
    })?;
    match parsed {
        StateJson::Triple(t) => Ok(ParsedState::Triple(TwoQubitState::new(
            Vector3::from(t.r1),
            Vector3::from(t.r2),
            Matrix3::from_fn(|a, b| t.t[a][b]),
        ))),
        StateJson::Rho(r) => {
            let entries: Vec<[f64; 2]> = match r.rho {
                RhoEntries::Flat(v) => v,
                RhoEntries::Nested(rows) => {
                    if rows.iter().any(|row| row.len() != 4) {
                        return Err(CliError::Usage("rho rows must have 4 entries".into()));
                    }
                    rows.into_iter().flatten().collect()
                }
            };
            if entries.len() != 16 {
                return Err(CliError::Usage(format!(
                    "rho needs 16 [re, im] entries, got {}",
                    entries.len()
                )));
            }
            let m = Matrix4c::from_fn(|a, b| {
                let [re, im] = entries[4 * a + b];
                Complex64::new(re, im)
            });
            Ok(ParsedState::Rho(
                DensityMatrix4::new(m).map(|rho| TwoQubitState::from_density(&rho)),
            ))
        }
    }
}

/// First data row of CSV input: 15 components, or 16 with a leading `phi`.
fn parse_state_csv(text: &str) -> Result<TwoQubitState, CliError> {
    let row = text
        .lines()
        .map(str::trim)
        .find(|line| {
            !line.is_empty()
                && line
                    .split(',')
                    .next()
                    .is_some_and(|f| f.trim().parse::<f64>().is_ok())
        })
        .ok_or_else(|| CliError::Usage("no numeric row in CSV input".into()))?;
    let values = row
        .split(',')
        .map(|f| f.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("bad CSV value: {e}")))?;
    let comps: [f64; 15] = match values.len() {
        15 => values.try_into().expect("length checked"),
        16 => values[1..].try_into().expect("length checked"),
        n => {
            return Err(CliError::Usage(format!(
                "CSV row needs 15 components (or 16 with phi), got {n}"
            )))
        }
    };
    Ok(TwoQubitState::from_components(&comps))
}

pub fn parse_spec(text: &str) -> Result<InteractionSpec, CliError> {
    let spec: InteractionSpec = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("bad interaction spec: {e}")))?;
    spec.validate()
        .map_err(|e| CliError::Usage(format!("bad interaction spec: {e}")))?;
    Ok(spec)
}
