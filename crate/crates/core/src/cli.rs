//! Command-line surface. Every row a command emits is a direct call into the
//! library; the CLI adds formatting and argument validation only.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poles::{enumerate_poles, refine_pole, PoleKind};
use crate::scattering::{amplitudes, coefficients, s_matrix, transfer_matrix, PotentialSpec};
use crate::states::{energy, state, Series};
use crate::susy::PartnerModel;
use crate::table::{Cell, ColumnKind, OutputTable};

/// Parse "3.5", "0.5+2i", "-1.5i", "2i", "i" into a complex number.
pub fn parse_complex(text: &str) -> std::result::Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty number".into());
    }
    let parse_real = |t: &str| -> std::result::Result<f64, String> {
        t.parse::<f64>().map_err(|_| format!("cannot parse '{t}' as a number"))
    };
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // find the sign splitting re and im, skipping exponent signs
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx] as char;
            if (c == '+' || c == '-') && !matches!(bytes[idx - 1] as char, 'e' | 'E') {
                split = Some(idx);
                break;
            }
        }
        let (re_part, im_part) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() { 0.0 } else { parse_real(re_part)? };
        let im = match im_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            t => parse_real(t)?,
        };
        Ok(Complex64::new(re, im))
    } else {
        Ok(Complex64::new(parse_real(&s)?, 0.0))
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im > 0.0 {
        format!("{}+{}i", z.re, z.im)
    } else {
        format!("{}-{}i", z.re, -z.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output path (standard output when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_series(v: u8) -> Result<Series> {
    match v {
        1 => Ok(Series::One),
        2 => Ok(Series::Two),
        _ => Err(Error::BadRange(format!("series must be 1 or 2, got {v}"))),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "pt-scatter",
    version,
    about = "Scattering data for the hyperbolic Pöschl-Teller potential V(x) = −λ(λ−1)/cosh²x"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transmission and reflection coefficients on a real k grid
    Coeffs {
        /// Potential parameter: real ("3.5") or high barrier ("0.5+2i")
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        #[arg(long, allow_hyphen_values = true)]
        k_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        k_max: f64,
        /// Number of grid intervals (k = 0 rows are skipped)
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Analytic pole table, optionally cross-checked by Newton refinement
    Poles {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        #[arg(long)]
        n_max: u32,
        /// Add Newton-refined momenta and |Δk| per pole row
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Sample a ladder-generated wavefunction
    Wavefunction {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        /// Pole series (1 or 2)
        #[arg(long)]
        series: u8,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true, default_value_t = -4.0)]
        x_min: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 4.0)]
        x_max: f64,
        #[arg(long, default_value_t = 400)]
        steps: usize,
        /// Comma-separated subset of abs,re,im
        #[arg(long, default_value = "abs,re,im")]
        parts: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// SUSY partner potential and its new ground state from a nodeless state
    Susy {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        #[arg(long)]
        series: u8,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true, default_value_t = -3.0)]
        x_min: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 3.0)]
        x_max: f64,
        #[arg(long, default_value_t = 300)]
        steps: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Single-point transfer/S matrix dump
    Smatrix {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        /// Momentum, real or complex ("1.3", "2-0.5i")
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        k: Complex64,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn base_meta(table: OutputTable, spec: &PotentialSpec) -> OutputTable {
    table
        .with_meta("lambda", fmt_complex(spec.lambda()))
        .with_meta("regime", spec.regime())
}

pub fn cmd_coeffs(lambda: Complex64, k_min: f64, k_max: f64, steps: usize) -> Result<OutputTable> {
    let spec = PotentialSpec::new(lambda)?;
    if !(k_max > k_min) || steps == 0 {
        return Err(Error::BadRange(format!(
            "need k_min < k_max and steps > 0, got [{k_min}, {k_max}] with {steps}"
        )));
    }
    let mut table = base_meta(
        OutputTable::new(&[
            ("k", ColumnKind::Real),
            ("T", ColumnKind::Real),
            ("R", ColumnKind::Real),
        ]),
        &spec,
    );
    for i in 0..=steps {
        let k = k_min + (k_max - k_min) * i as f64 / steps as f64;
        if k.abs() < 1e-12 {
            continue;
        }
        let (r, t) = coefficients(&spec, k)?;
        table.push(vec![Cell::Real(k), Cell::Real(t), Cell::Real(r)]);
    }
    Ok(table)
}

pub fn cmd_poles(lambda: Complex64, n_max: u32, verify: bool) -> Result<OutputTable> {
    let spec = PotentialSpec::new(lambda)?;
    let mut columns = vec![
        ("series", ColumnKind::Int),
        ("n", ColumnKind::Int),
        ("kind", ColumnKind::Text),
        ("k", ColumnKind::Complex),
        ("energy", ColumnKind::Complex),
    ];
    if verify {
        columns.push(("refined", ColumnKind::Complex));
        columns.push(("delta", ColumnKind::Real));
    }
    let mut table = base_meta(OutputTable::new(&columns), &spec);
    for rec in enumerate_poles(&spec, n_max) {
        if rec.duplicate_of.is_some() {
            continue; // one record per physical pole
        }
        let mut row = vec![
            Cell::Int(match rec.series {
                Series::One => 1,
                Series::Two => 2,
            }),
            Cell::Int(rec.n as i64),
            Cell::Text(rec.kind.to_string()),
            Cell::Complex(rec.k),
            Cell::Complex(rec.energy),
        ];
        if verify {
            match rec.kind {
                PoleKind::NullAtOrigin | PoleKind::ZeroOfS => {
                    row.extend_from_slice(&[Cell::Empty, Cell::Empty]);
                }
                _ => {
                    let refined = refine_pole(&spec, rec.k)?;
                    row.push(Cell::Complex(refined));
                    row.push(Cell::Real((refined - rec.k).norm()));
                }
            }
        }
        table.push(row);
    }
    Ok(table)
}

pub fn cmd_wavefunction(
    lambda: Complex64,
    series: u8,
    n: u32,
    x_min: f64,
    x_max: f64,
    steps: usize,
    parts: &str,
) -> Result<OutputTable> {
    let spec = PotentialSpec::new(lambda)?;
    let series = parse_series(series)?;
    if !(x_max > x_min) || steps == 0 {
        return Err(Error::BadRange(format!(
            "need x_min < x_max and steps > 0, got [{x_min}, {x_max}] with {steps}"
        )));
    }
    let mut wanted = Vec::new();
    for part in parts.split(',') {
        match part.trim() {
            "abs" | "re" | "im" => wanted.push(part.trim().to_string()),
            other => return Err(Error::BadRange(format!("unknown part '{other}' (use abs,re,im)"))),
        }
    }
    if wanted.is_empty() {
        return Err(Error::BadRange("no parts requested".into()));
    }
    let form = state(&spec, series, n)?;
    let e = energy(&spec, series, n as i64);
    let columns: Vec<(&str, ColumnKind)> = std::iter::once(("x", ColumnKind::Real))
        .chain(wanted.iter().map(|s| (s.as_str(), ColumnKind::Real)))
        .collect();
    let mut table = base_meta(OutputTable::new(&columns), &spec)
        .with_meta("series", series)
        .with_meta("n", n)
        .with_meta("energy", fmt_complex(e))
        .with_meta("mu", fmt_complex(form.mu()));
    for i in 0..=steps {
        let x = x_min + (x_max - x_min) * i as f64 / steps as f64;
        let mut row = vec![Cell::Real(x)];
        match form.evaluate(x) {
            Ok(v) => {
                for part in &wanted {
                    row.push(Cell::Real(match part.as_str() {
                        "abs" => v.norm(),
                        "re" => v.re,
                        _ => v.im,
                    }));
                }
            }
            Err(Error::Overflow { .. }) => {
                // overflow rows keep their x and flag the values as missing
                for _ in &wanted {
                    row.push(Cell::Empty);
                }
            }
            Err(e) => return Err(e),
        }
        table.push(row);
    }
    Ok(table)
}

pub fn cmd_susy(
    lambda: Complex64,
    series: u8,
    n: u32,
    x_min: f64,
    x_max: f64,
    steps: usize,
) -> Result<OutputTable> {
    let spec = PotentialSpec::new(lambda)?;
    let series = parse_series(series)?;
    if !(x_max > x_min) || steps == 0 {
        return Err(Error::BadRange(format!(
            "need x_min < x_max and steps > 0, got [{x_min}, {x_max}] with {steps}"
        )));
    }
    let model = PartnerModel::new(&spec, series, n)?;
    let mut table = base_meta(
        OutputTable::new(&[
            ("x", ColumnKind::Real),
            ("v", ColumnKind::Complex),
            ("psi", ColumnKind::Complex),
            ("psi_abs", ColumnKind::Real),
        ]),
        &spec,
    )
    .with_meta("series", series)
    .with_meta("n", n)
    .with_meta("epsilon", fmt_complex(model.epsilon()));
    for i in 0..=steps {
        let x = x_min + (x_max - x_min) * i as f64 / steps as f64;
        let v = model.partner_potential(x)?;
        let psi = model.partner_ground_state(x)?;
        table.push(vec![
            Cell::Real(x),
            Cell::Complex(v),
            Cell::Complex(psi),
            Cell::Real(psi.norm()),
        ]);
    }
    Ok(table)
}

pub fn cmd_smatrix(lambda: Complex64, k: Complex64) -> Result<OutputTable> {
    let spec = PotentialSpec::new(lambda)?;
    let t = transfer_matrix(&spec, k)?;
    let s = s_matrix(&spec, k)?;
    let (r, tr) = amplitudes(&spec, k)?;
    let det = t.det();
    let mut table = base_meta(
        OutputTable::new(&[
            ("k", ColumnKind::Complex),
            ("t11", ColumnKind::Complex),
            ("t12", ColumnKind::Complex),
            ("t21", ColumnKind::Complex),
            ("t22", ColumnKind::Complex),
            ("det", ColumnKind::Complex),
            ("s11", ColumnKind::Complex),
            ("s12", ColumnKind::Complex),
            ("s21", ColumnKind::Complex),
            ("s22", ColumnKind::Complex),
            ("r", ColumnKind::Complex),
            ("t", ColumnKind::Complex),
            ("R", ColumnKind::Real),
            ("T", ColumnKind::Real),
        ]),
        &spec,
    );
    let mut row: Vec<Cell> = [k, t.t11, t.t12, t.t21, t.t22, det, s.s11, s.s12, s.s21, s.s22, r, tr]
        .iter()
        .map(|&z| Cell::Complex(z))
        .collect();
    row.push(Cell::Real(r.norm_sqr()));
    row.push(Cell::Real(tr.norm_sqr()));
    table.push(row);
    Ok(table)
}

/// Process exit code for an error: 2 invalid arguments, 3 domain error,
/// 4 numerical non-convergence.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidRegime(_) | Error::BadRange(_) | Error::InvalidGrid(_) => 2,
        Error::NonConvergence { .. }
        | Error::DivergedFromSeed { .. }
        | Error::SeriesDivergence(_)
        | Error::StepTooCoarse(_) => 4,
        _ => 3,
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let (table, output) = match cli.command {
        Command::Coeffs { lambda, k_min, k_max, steps, output } => {
            (cmd_coeffs(lambda, k_min, k_max, steps)?, output)
        }
        Command::Poles { lambda, n_max, verify, output } => {
            (cmd_poles(lambda, n_max, verify)?, output)
        }
        Command::Wavefunction { lambda, series, n, x_min, x_max, steps, parts, output } => (
            cmd_wavefunction(lambda, series, n, x_min, x_max, steps, &parts)?,
            output,
        ),
        Command::Susy { lambda, series, n, x_min, x_max, steps, output } => {
            (cmd_susy(lambda, series, n, x_min, x_max, steps)?, output)
        }
        Command::Smatrix { lambda, k, output } => (cmd_smatrix(lambda, k)?, output),
    };
    let text = match output.format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let mut t = table.to_json();
            t.push('\n');
            t
        }
    };
    match output.out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Error::BadRange(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::BadRange(format!("cannot write to stdout: {e}")))?;
        }
    }
    Ok(())
}
