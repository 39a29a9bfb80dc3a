use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;
use tfcorr::asymptotics::{
    figure_abscissae, fit_model_coefficients, model_expansion, model_sequence, richardson_extrapolate,
    scaled_model_density, thirds, ModelPoint, RichardsonFit,
};
use tfcorr::atomic_data::find_atom;
use tfcorr::correction::LAST_NODE;
use tfcorr::hydrogenic::{electron_count, magic_shell, model_kinetic_energy_continuous, MAX_SHELLS};
use tfcorr::table::{table_rows, TableRow};
use tfcorr::{
    bundled_atoms, model_density, model_kinetic_energy, parse_sto_file, tf_energy, CorrectionTable, DeltaKind, Error,
    RadialGrid, ShellConfiguration, StoAtomRecord,
};

use crate::args::{AsymptoticArgs, FigureArgs, Format, ModelArgs, RunConfig};
use crate::render::{csv_text, jsonl_text, two_figures, Sink};
use crate::CliError;

/// Terms of the model expansion compared against in `model`.
const EXPANSION_TERMS: usize = 5;
/// Shells of the scaled-density figure.
const FIGURE_SHELLS: [u32; 4] = [1, 2, 3, 5];
/// Last n_max of the linear-scale relative-error figure.
const LINEAR_FIGURE_SHELLS: u32 = 20;

fn warn_extrapolated(z: u32, kind: DeltaKind) {
    if kind == DeltaKind::Extrapolated {
        eprintln!("warning: Z = {z}: dT is extrapolated beyond the last interpolation node Z = {LAST_NODE}");
    }
}

fn load_records(cfg: &RunConfig) -> Result<Vec<StoAtomRecord>, CliError> {
    Ok(match &cfg.data {
        Some(path) => parse_sto_file(path).map_err(|e| CliError::DataFile(path.display().to_string(), e))?,
        None => bundled_atoms(),
    })
}

#[derive(Serialize)]
struct PercentRow<'a> {
    z: u32,
    atom: &'a str,
    t_tf: String,
    t_tf_t2: String,
    t_tf_t2_t4: String,
    t_tf_dt: String,
    delta_kind: DeltaKind,
}

fn percent_row(row: &TableRow) -> PercentRow<'_> {
    let e = &row.energies;
    PercentRow {
        z: row.z,
        atom: &row.symbol,
        t_tf: two_figures(100.0 * e.rel_err_tf),
        t_tf_t2: two_figures(100.0 * e.rel_err_t2),
        t_tf_t2_t4: two_figures(100.0 * e.rel_err_t4),
        t_tf_dt: two_figures(100.0 * e.rel_err_corrected),
        delta_kind: row.delta_kind,
    }
}

fn kind_name(kind: DeltaKind) -> &'static str {
    match kind {
        DeltaKind::Exact => "exact",
        DeltaKind::Interpolated => "interpolated",
        DeltaKind::Extrapolated => "extrapolated",
    }
}

fn table1_text(rows: &[TableRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{:>10}{:>48}", "", "Relative error, %").unwrap();
    writeln!(
        out,
        "{:>4}  {:<4}{:>10}{:>10}{:>13}{:>10}  dT",
        "Z", "Atom", "T_TF", "T_TF+T2", "T_TF+T2+T4", "T_TF+dT"
    )
    .unwrap();
    for row in rows {
        let p = percent_row(row);
        writeln!(
            out,
            "{:>4}  {:<4}{:>10}{:>10}{:>13}{:>10}  {}",
            p.z,
            p.atom,
            p.t_tf,
            p.t_tf_t2,
            p.t_tf_t2_t4,
            p.t_tf_dt,
            kind_name(p.delta_kind)
        )
        .unwrap();
    }
    out
}

pub fn table1(cfg: &RunConfig) -> Result<(), CliError> {
    let records = load_records(cfg)?;
    let mut failures: Vec<(String, CliError)> = Vec::new();
    let mut picked: Vec<&StoAtomRecord> = Vec::new();
    if cfg.atoms.is_empty() {
        picked.extend(records.iter());
    } else {
        for key in &cfg.atoms {
            match find_atom(&records, key) {
                Some(r) if picked.iter().any(|p| p.z == r.z) => {}
                Some(r) => picked.push(r),
                None => failures.push((key.clone(), CliError::MissingAtom(key.clone()))),
            }
        }
    }
    let correction = CorrectionTable::new(cfg.interpolation, &cfg.grid)?;
    let mut rows = Vec::new();
    for (symbol, result) in table_rows(&picked, &correction, &cfg.grid) {
        match result {
            Ok(row) => {
                warn_extrapolated(row.z, row.delta_kind);
                rows.push(row);
            }
            Err(e) => failures.push((symbol, e.into())),
        }
    }
    for (key, e) in &failures {
        eprintln!("error: {key}: {e}");
    }
    if rows.is_empty() {
        return Err(match failures.into_iter().next() {
            Some((_, first)) => CliError::AllRowsFailed(Box::new(first)),
            None => CliError::NoAtoms,
        });
    }
    let text = match cfg.format {
        Format::Table => table1_text(&rows),
        Format::Csv => csv_text(rows.iter().map(percent_row))?,
        Format::Jsonl => jsonl_text(&rows)?,
    };
    Sink::new(cfg.out.as_deref()).emit(&format!("table1.{}", cfg.format.extension()), &text)?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct ModelReport {
    z: u32,
    n_max: Option<u32>,
    electrons: u32,
    t_model: f64,
    t_tf: Option<f64>,
    delta_t: f64,
    delta_kind: DeltaKind,
    expansion: f64,
    expansion_terms: usize,
    expansion_rel_dev: f64,
}

fn neighbouring_magic(z: u32) -> (u64, u64) {
    let mut n = 1;
    while electron_count(n + 1) <= z as u64 {
        n += 1;
    }
    if electron_count(1) > z as u64 {
        return (0, electron_count(1));
    }
    (electron_count(n), electron_count(n + 1))
}

fn model_report_text(r: &ModelReport) -> String {
    let mut out = String::new();
    let line = |out: &mut String, key: &str, value: String| writeln!(out, "{key:<15}{value}").unwrap();
    line(&mut out, "Z", r.z.to_string());
    line(
        &mut out,
        "closed shells",
        match r.n_max {
            Some(n) => format!("yes, magic number with n_max = {n}"),
            None => {
                let (lo, hi) = neighbouring_magic(r.z);
                format!("no, between the magic numbers {lo} and {hi}")
            }
        },
    );
    line(&mut out, "N", r.electrons.to_string());
    line(&mut out, "T", format!("{}", r.t_model));
    line(
        &mut out,
        "T_TF",
        match r.t_tf {
            Some(t) => format!("{t:.10}"),
            None => "n/a (shells not closed)".into(),
        },
    );
    line(
        &mut out,
        "dT",
        format!("{:.10} ({})", r.delta_t, kind_name(r.delta_kind)),
    );
    line(
        &mut out,
        "expansion",
        format!(
            "{:.10} ({} terms, relative deviation {:.3e})",
            r.expansion, r.expansion_terms, r.expansion_rel_dev
        ),
    );
    out
}

pub fn model(cfg: &RunConfig, args: &ModelArgs) -> Result<(), CliError> {
    let z = match (args.z, args.n_max) {
        (Some(z), _) => z,
        (None, Some(n)) => ShellConfiguration::neutral(n)?.electron_count() as u32,
        (None, None) => unreachable!("clap requires one of --z and --n-max"),
    };
    if z == 0 {
        return Err(Error::Domain {
            function: "model",
            detail: "Z must be positive".into(),
        }
        .into());
    }
    let n_max = magic_shell(z as u64);
    let (t_model, t_tf, delta_t, delta_kind) = match n_max {
        Some(n) => {
            let shells = ShellConfiguration::neutral(n)?;
            let density = model_density(&shells)?;
            let grid = RadialGrid::for_density(&density, &cfg.grid)?;
            let t = model_kinetic_energy(&shells);
            let t_tf = tf_energy(&density, &grid)?;
            (t, Some(t_tf), t - t_tf, DeltaKind::Exact)
        }
        None => {
            let correction = CorrectionTable::new(cfg.interpolation, &cfg.grid)?;
            let delta = correction.delta_t(z)?;
            warn_extrapolated(z, delta.kind);
            (
                model_kinetic_energy_continuous(z as f64)?,
                None,
                delta.value,
                delta.kind,
            )
        }
    };
    let expansion = model_expansion(EXPANSION_TERMS).evaluate(z as f64);
    let report = ModelReport {
        z,
        n_max,
        electrons: z,
        t_model,
        t_tf,
        delta_t,
        delta_kind,
        expansion,
        expansion_terms: EXPANSION_TERMS,
        expansion_rel_dev: (expansion - t_model) / t_model,
    };
    let text = match cfg.format {
        Format::Table => model_report_text(&report),
        Format::Csv => csv_text([&report])?,
        Format::Jsonl => jsonl_text([&report])?,
    };
    Sink::new(cfg.out.as_deref()).emit(&format!("model.{}", cfg.format.extension()), &text)?;
    Ok(())
}

#[derive(Serialize)]
struct DensityRow {
    r_hat: f64,
    rho_hat_model: f64,
    rho_hat_tf: f64,
    n_max: u32,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct ErrorRow {
    n_max: u32,
    Z: f64,
    rel_err_T0: f64,
    rel_err_T2: f64,
    rel_err_T4: f64,
}

fn error_rows(points: &[ModelPoint]) -> impl Iterator<Item = ErrorRow> + '_ {
    points.iter().map(|p| {
        let [e0, e2, e4] = p.relative_errors();
        ErrorRow {
            n_max: p.n_max,
            Z: p.z,
            rel_err_T0: e0,
            rel_err_T2: e2,
            rel_err_T4: e4,
        }
    })
}

pub fn figures(cfg: &RunConfig, args: &FigureArgs) -> Result<(), CliError> {
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    let sink = Sink::Directory(dir.clone());

    let r_hat = figure_abscissae(args.samples);
    let mut density_rows = Vec::new();
    for n in FIGURE_SHELLS {
        let scaled = scaled_model_density(&ShellConfiguration::neutral(n)?, &r_hat)?;
        density_rows.extend(scaled.samples.iter().map(|s| DensityRow {
            r_hat: s.r_hat,
            rho_hat_model: s.rho_hat_model,
            rho_hat_tf: s.rho_hat_tf,
            n_max: n,
        }));
    }
    sink.emit("fig1.csv", &csv_text(density_rows)?)?;

    ShellConfiguration::neutral(args.max_shells)?;
    let points = model_sequence(1..=args.max_shells, &cfg.grid)?;
    let linear: Vec<ModelPoint> = points
        .iter()
        .filter(|p| p.n_max <= LINEAR_FIGURE_SHELLS)
        .copied()
        .collect();
    sink.emit("fig1a.csv", &csv_text(error_rows(&linear))?)?;
    sink.emit("fig2a.csv", &csv_text(error_rows(&points))?)?;
    for name in ["fig1.csv", "fig1a.csv", "fig2a.csv"] {
        println!("{}", dir.join(name).display());
    }
    Ok(())
}

/// Literature values the fitted coefficients are compared with.
const REFERENCE_COEFFICIENTS: [(&str, i32, f64); 7] = [
    ("T_TF", 7, 1.144714),
    ("T_TF", 6, -0.625856),
    ("T_TF", 5, 0.146878),
    ("T2", 6, 0.10942),
    ("T2", 5, 0.045),
    ("T4", 6, 0.015052),
    ("T4", 5, 0.0078),
];

#[derive(Serialize)]
struct CoefficientRow {
    quantity: &'static str,
    power: String,
    fitted: f64,
    error_estimate: f64,
    points_used: usize,
    stride: usize,
    reference: Option<f64>,
    deviation: Option<f64>,
}

fn coefficient_rows(quantity: &'static str, fit: &RichardsonFit) -> Vec<CoefficientRow> {
    (0..fit.powers.len())
        .map(|i| {
            let power = fit.powers[i];
            let reference = REFERENCE_COEFFICIENTS
                .iter()
                .find(|r| r.0 == quantity && thirds(r.1) == power)
                .map(|r| r.2)
                .or_else(|| (quantity != "T_TF" && power == thirds(7)).then_some(0.0));
            CoefficientRow {
                quantity,
                power: power.to_string(),
                fitted: fit.coefficients[i],
                error_estimate: fit.error_estimates[i],
                points_used: fit.points_used[i],
                stride: fit.strides[i],
                reference,
                deviation: reference.map(|r| fit.coefficients[i] - r),
            }
        })
        .collect()
}

/// Identity and two-term synthetic series through the same extrapolation.
fn self_tests() -> Result<(f64, f64), CliError> {
    let magic: Vec<f64> = (2..=25).map(|n| electron_count(n) as f64).collect();
    let identity: Vec<(f64, f64)> = magic.iter().map(|&z| (z, z.powf(7.0 / 3.0))).collect();
    let fit = richardson_extrapolate(&identity, &[thirds(7)])?;
    let identity_err = (fit.coefficients[0] - 1.0).abs();
    let (a, b) = (1.144714, -0.625856);
    let two_term: Vec<(f64, f64)> = magic.iter().map(|&z| (z, a * z.powf(7.0 / 3.0) + b * z * z)).collect();
    let fit = richardson_extrapolate(&two_term, &[thirds(7), thirds(6)])?;
    let two_term_err = (fit.coefficients[0] - a).abs().max((fit.coefficients[1] - b).abs());
    Ok((identity_err, two_term_err))
}

pub fn asymptotics(cfg: &RunConfig, args: &AsymptoticArgs) -> Result<(), CliError> {
    if args.max_shells > MAX_SHELLS {
        return Err(Error::OutOfRange(format!(
            "n_max = {}; supported range is 1..={MAX_SHELLS}",
            args.max_shells
        ))
        .into());
    }
    let points = model_sequence(2..=args.max_shells, &cfg.grid)?;
    let fits = fit_model_coefficients(&points)?;
    let mut rows = coefficient_rows("T_TF", &fits.tf);
    rows.extend(coefficient_rows("T2", &fits.t2));
    rows.extend(coefficient_rows("T4", &fits.t4));
    let text = match cfg.format {
        Format::Csv => csv_text(&rows)?,
        Format::Jsonl => jsonl_text(&rows)?,
        Format::Table => {
            let (identity_err, two_term_err) = self_tests()?;
            let mut out = String::new();
            writeln!(out, "Richardson fits over n_max = 2..={}", args.max_shells).unwrap();
            writeln!(
                out,
                "{:<6}{:>6}{:>14}{:>12}{:>12}{:>12}",
                "term", "power", "fitted", "reference", "deviation", "estimate"
            )
            .unwrap();
            for r in &rows {
                let show = |x: Option<f64>, p: usize| x.map_or_else(|| "-".to_string(), |v| format!("{v:.p$}"));
                writeln!(
                    out,
                    "{:<6}{:>6}{:>14.8}{:>12}{:>12}{:>12.1e}",
                    r.quantity,
                    r.power,
                    r.fitted,
                    show(r.reference, 6),
                    show(r.deviation, 6),
                    r.error_estimate
                )
                .unwrap();
            }
            let z2 = |f: &RichardsonFit| f.coefficient(thirds(6)).unwrap_or(0.0);
            let resummed = z2(&fits.tf) + z2(&fits.t2) + z2(&fits.t4);
            writeln!(out, "Z^2 terms of T_TF + T2 + T4: {resummed:.6} (model: -0.5)").unwrap();
            let expansion = model_expansion(EXPANSION_TERMS);
            let lead = expansion.coefficient(thirds(7));
            writeln!(out, "leading model coefficient (3/2)^(1/3): {lead:.6}").unwrap();
            writeln!(out, "self-test, identity series: error {identity_err:.1e}").unwrap();
            writeln!(out, "self-test, two-term series: error {two_term_err:.1e}").unwrap();
            out
        }
    };
    Sink::new(cfg.out.as_deref()).emit(&format!("asymptotics.{}", cfg.format.extension()), &text)?;
    Ok(())
}
