use orbits_core::control::coverage_gap;
use orbits_core::state::ValidationReport;
use orbits_core::{
    evolve, fit_one_dim, heisenberg_ellipse, heisenberg_entanglement_scan, reachable_disk,
    sample_reachable, semi_minor_product, trace_orbit, Error, InteractionSpec, Subsystem,
    TwoQubitState,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{Command, Common, Format};
use crate::input::{parse_spec, parse_state, read_source, ParsedState};
use crate::output::{
    csv_row, emit, to_json, triple_values, vector_rows, EllipseOut, TripleOut, TRIPLE_HEADER,
};
use crate::CliError;

pub fn run(common: &Common, command: &Command) -> Result<(), CliError> {
    let text = read_source(common.input.as_deref())?;
    let parsed = parse_state(&text)?;
    let scale = common.normalization.factor();
    let out = match command {
        Command::State => return cmd_state(common, parsed),
        Command::Evolve { spec } => {
            let s = valid_state(parsed)?;
            let spec = parse_spec(spec)?;
            let e = evolve(&s, &spec).map_err(usage)?;
            match common.format {
                Format::Json => to_json(&TripleOut::new(&e, scale))?,
                Format::Csv => {
                    let mut out = format!("{TRIPLE_HEADER}\n");
                    csv_row(&mut out, triple_values(&e, scale));
                    out
                }
            }
        }
        Command::Orbit {
            spec,
            phi_max,
            samples,
        } => {
            let s = valid_state(parsed)?;
            let spec = parse_spec(spec)?;
            cmd_orbit(common.format, &s, &spec, *phi_max, *samples, scale)?
        }
        Command::Ellipse {
            spec,
            subsystem,
            semi_minor,
        } => {
            let s = valid_state(parsed)?;
            let spec = parse_spec(spec)?;
            let sub = Subsystem::try_from(*subsystem).map_err(CliError::Usage)?;
            require_json(common.format, "ellipse")?;
            cmd_ellipse(&s, &spec, sub, *semi_minor, scale)?
        }
        Command::Reachable {
            i,
            j,
            samples,
            seed,
        } => {
            let s = valid_state(parsed)?;
            cmd_reachable(common.format, &s, *i, *j, *samples, *seed, scale)?
        }
        Command::Entangle { c, samples } => {
            let s = valid_state(parsed)?;
            let report = heisenberg_entanglement_scan(&s, *c, *samples).map_err(usage)?;
            match common.format {
                Format::Json => to_json(&report)?,
                Format::Csv => {
                    let mut out = String::from("phi,entropy1,entropy2\n");
                    for k in 0..report.phi_grid.len() {
                        csv_row(
                            &mut out,
                            [report.phi_grid[k], report.entropy1[k], report.entropy2[k]],
                        );
                    }
                    out
                }
            }
        }
    };
    emit(common.output.as_deref(), &out)
}

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn require_json(format: Format, command: &str) -> Result<(), CliError> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Usage(format!("{command} output is JSON only"))),
    }
}

fn valid_state(parsed: ParsedState) -> Result<TwoQubitState, CliError> {
    match parsed {
        ParsedState::Rho(Err(e)) => Err(CliError::Domain(format!("invalid density matrix: {e}"))),
        ParsedState::Rho(Ok(s)) | ParsedState::Triple(s) => {
            let report = s.validate();
            if report.valid {
                Ok(s)
            } else {
                Err(CliError::Domain(describe_invalid(&report)))
            }
        }
    }
}

fn describe_invalid(r: &ValidationReport) -> String {
    if !r.finite {
        "state has non-finite components".into()
    } else if !r.norms_ok {
        format!(
            "coherence vector norms {} and {} must not exceed 1/2",
            r.r1_norm, r.r2_norm
        )
    } else {
        format!(
            "state is not positive semidefinite (min eigenvalue {:e})",
            r.min_eigenvalue
        )
    }
}

#[derive(Serialize)]
struct StateOut<'a> {
    #[serde(flatten)]
    triple: TripleOut,
    product: bool,
    report: &'a ValidationReport,
}

fn cmd_state(common: &Common, parsed: ParsedState) -> Result<(), CliError> {
    let s = match parsed {
        ParsedState::Rho(Err(e)) => {
            return Err(CliError::Domain(format!("invalid density matrix: {e}")))
        }
        ParsedState::Rho(Ok(s)) | ParsedState::Triple(s) => s,
    };
    let report = s.validate();
    let scale = common.normalization.factor();
    let text = match common.format {
        Format::Json => to_json(&StateOut {
            triple: TripleOut::new(&s, scale),
            product: report.product,
            report: &report,
        })?,
        Format::Csv => {
            let mut out = format!("{TRIPLE_HEADER},valid,product\n");
            let mut row = String::new();
            csv_row(&mut row, triple_values(&s, scale));
            row.pop();
            out.push_str(&format!("{row},{},{}\n", report.valid, report.product));
            out
        }
    };
    emit(common.output.as_deref(), &text)?;
    if report.valid {
        Ok(())
    } else {
        Err(CliError::Domain(describe_invalid(&report)))
    }
}

#[derive(Serialize)]
struct SampleOut {
    phi: f64,
    #[serde(flatten)]
    triple: TripleOut,
}

#[derive(Serialize)]
struct OrbitOut<'a> {
    spec: &'a InteractionSpec,
    samples: Vec<SampleOut>,
}

fn cmd_orbit(
    format: Format,
    s: &TwoQubitState,
    spec: &InteractionSpec,
    phi_max: f64,
    n: usize,
    scale: f64,
) -> Result<String, CliError> {
    let trace = trace_orbit(s, spec, phi_max, n).map_err(usage)?;
    match format {
        Format::Json => to_json(&OrbitOut {
            spec,
            samples: trace
                .samples
                .iter()
                .map(|p| SampleOut {
                    phi: p.phi,
                    triple: TripleOut::new(&p.state, scale),
                })
                .collect(),
        }),
        Format::Csv => {
            let mut out = format!("phi,{TRIPLE_HEADER}\n");
            for p in &trace.samples {
                csv_row(
                    &mut out,
                    std::iter::once(p.phi).chain(triple_values(&p.state, scale)),
                );
            }
            Ok(out)
        }
    }
}

fn cmd_ellipse(
    s: &TwoQubitState,
    spec: &InteractionSpec,
    sub: Subsystem,
    semi_minor: bool,
    scale: f64,
) -> Result<String, CliError> {
    let out = match *spec {
        InteractionSpec::OneDim { i, j, .. } => {
            let mut out = EllipseOut::new(&fit_one_dim(s, sub, i, j), scale);
            if semi_minor {
                let b = semi_minor_product(s, sub, i, j)
                    .map_err(|e| CliError::Domain(e.to_string()))?;
                out.b_product = Some(b * scale);
            }
            out
        }
        InteractionSpec::Heisenberg { c, .. } => {
            if semi_minor {
                return Err(CliError::Usage(
                    "--semi-minor applies to one_dim interactions only".into(),
                ));
            }
            EllipseOut::new(&heisenberg_ellipse(s, sub, c).map_err(usage)?, scale)
        }
        _ => {
            return Err(CliError::Usage(
                "ellipse needs a one_dim or heisenberg interaction".into(),
            ))
        }
    };
    to_json(&out)
}

#[derive(Serialize)]
struct ReachableOut {
    fixed_axis: orbits_core::Axis,
    fixed_component: f64,
    axes: [orbits_core::Axis; 2],
    a: f64,
    b: f64,
    orientation: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coverage_gap: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    samples: Vec<[f64; 3]>,
}

fn cmd_reachable(
    format: Format,
    s: &TwoQubitState,
    i: orbits_core::Axis,
    j: orbits_core::Axis,
    n: usize,
    seed: u64,
    scale: f64,
) -> Result<String, CliError> {
    let disk = reachable_disk(s, i, j).map_err(|e| CliError::Domain(e.to_string()))?;
    let points = if n > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        sample_reachable(s, i, j, n, &mut rng).map_err(|e| CliError::Domain(e.to_string()))?
    } else {
        Vec::new()
    };
    match format {
        Format::Csv => Ok(vector_rows("x,y,z", &points, scale)),
        Format::Json => to_json(&ReachableOut {
            fixed_axis: disk.fixed_axis,
            fixed_component: disk.fixed_component * scale,
            axes: disk.axes,
            a: disk.a * scale,
            b: disk.b * scale,
            orientation: disk.orientation,
            seed: (n > 0).then_some(seed),
            coverage_gap: (n > 0).then(|| coverage_gap(&disk, &points, 32) * scale),
            samples: points.iter().map(|p| (p * scale).into()).collect(),
        }),
    }
}
