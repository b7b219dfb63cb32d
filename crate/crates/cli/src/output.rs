use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use orbits_core::nalgebra::Vector3;
use orbits_core::{EllipseParams, TwoQubitState};
use serde::Serialize;

use crate::CliError;

pub const TRIPLE_HEADER: &str = "r1x,r1y,r1z,r2x,r2y,r2z,Txx,Txy,Txz,Tyx,Tyy,Tyz,Tzx,Tzy,Tzz";

#[derive(Serialize)]
pub struct TripleOut {
    pub r1: [f64; 3],
    pub r2: [f64; 3],
    #[serde(rename = "T")]
    pub t: [[f64; 3]; 3],
}

impl TripleOut {
    pub fn new(s: &TwoQubitState, scale: f64) -> TripleOut {
        let s = s.scaled(scale);
        TripleOut {
            r1: s.r1.into(),
            r2: s.r2.into(),
            t: std::array::from_fn(|a| std::array::from_fn(|b| s.t[(a, b)])),
        }
    }
}

#[derive(Serialize)]
pub struct PlaneOut {
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    pub normal: [f64; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axes: Option<[orbits_core::Axis; 2]>,
}

#[derive(Serialize)]
pub struct EllipseOut {
    pub a: f64,
    pub b: f64,
    pub psi: f64,
    pub chi: f64,
    pub plane: PlaneOut,
    pub center: [f64; 3],
    pub frequency: f64,
    pub degeneracy: orbits_core::Degeneracy,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_product: Option<f64>,
}

/// Adding `0.0` maps `-0.0` to `0.0` and leaves every other value unchanged.
fn unsigned_zero(x: f64) -> f64 {
    x + 0.0
}

fn vec3(v: Vector3<f64>) -> [f64; 3] {
    v.map(unsigned_zero).into()
}

impl EllipseOut {
    pub fn new(e: &EllipseParams, scale: f64) -> EllipseOut {
        EllipseOut {
            a: e.a * scale,
            b: e.b * scale,
            psi: unsigned_zero(e.psi),
            chi: unsigned_zero(e.chi),
            plane: PlaneOut {
                e1: vec3(e.plane.e1),
                e2: vec3(e.plane.e2),
                normal: vec3(e.plane.normal),
                axes: e.plane.axes,
            },
            center: vec3(e.center * scale),
            frequency: e.frequency,
            degeneracy: e.degeneracy,
            b_product: None,
        }
    }
}

/// 17 significant digits, enough to read back every `f64` exactly.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_row(out: &mut String, values: impl IntoIterator<Item = f64>) {
    let mut first = true;
    for v in values {
        if !first {
            out.push(',');
        }
        first = false;
        out.push_str(&num(v));
    }
    out.push('\n');
}

pub fn triple_values(s: &TwoQubitState, scale: f64) -> [f64; 15] {
    s.scaled(scale).components()
}

pub fn vector_rows(header: &str, rows: &[Vector3<f64>], scale: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{header}");
    for r in rows {
        csv_row(&mut out, (r * scale).iter().copied());
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string(value)
        .map_err(|e| CliError::Usage(format!("cannot encode output: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Writes to stdout, or to `path` through a temporary file renamed into place.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        None => write_stdout(text),
        Some(p) if p.as_os_str() == "-" => write_stdout(text),
        Some(p) => {
            let dir = match p.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let io = |e: std::io::Error| CliError::Io(format!("cannot write {}: {e}", p.display()));
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(text.as_bytes()).map_err(io)?;
            tmp.as_file().sync_all().map_err(io)?;
            tmp.persist(p).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}

fn write_stdout(text: &str) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .map_err(|e| CliError::Io(format!("cannot write stdout: {e}")))
}
