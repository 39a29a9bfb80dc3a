//! Acceptance checks, one line per criterion. Prints every result and a
//! summary; exits nonzero on a failed criterion only when
//! `TFCORR_ACCEPTANCE_STRICT` is set.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use tfcorr::asymptotics::{
    default_fit_shells, figure_abscissae, fit_model_coefficients, model_expansion, model_sequence,
    scaled_model_density, tf_limit_charge, thirds, ModelPoint,
};
use tfcorr::atomic_data::find_atom;
use tfcorr::hydrogenic::{
    electron_count, model_kinetic_energy_continuous, neutral_kinetic_energy_exact, radial_wavefunction,
    radial_wavefunction_derivatives,
};
use tfcorr::table::{table_rows, TableRow, TABLE_ATOMS};
use tfcorr::{
    atom_density, bundled_atoms, gradient_expansion, laguerre, log_factorial, make_grid, model_density,
    model_kinetic_energy, weizsacker_energy, CorrectionTable, GridScheme, GridSettings, InterpolationMode,
    LaguerreSpec, RadialDensity, RadialField, RadialGrid, ShellConfiguration, StoAtomRecord,
};

/// Printed Table 1 rows: Z, symbol, then % errors of T_TF, T_TF+T2, T_TF+T2+T4, T_TF+dT.
const TABLE_1: [(u32, &str, [f64; 4]); 5] = [
    (2, "He", [-11.0, 0.59, 3.6, 0.95]),
    (10, "Ne", [-8.4, -0.56, 0.95, 0.28]),
    (18, "Ar", [-7.0, -0.49, 0.69, 0.36]),
    (36, "Kr", [-5.8, -0.69, 0.18, 0.11]),
    (54, "Xe", [-5.2, -0.68, 0.067, 0.073]),
];
const TABLE_TOLERANCE_PP: f64 = 0.3;

const EXPANSION_PRINTED: [(i32, f64); 5] = [(7, 1.144714), (6, -0.5), (5, 0.072798), (1, -0.000098), (-1, 0.000006)];
const EXPANSION_PLACES: i32 = 6;

const TF_TARGETS: [(i32, f64, f64); 3] = [(7, 1.144714, 1e-5), (6, -0.625856, 1e-3), (5, 0.146878, 1e-2)];
const T2_LEADING_LIMIT: f64 = 1e-4;
const T2_TARGET: (f64, f64) = (0.10942, 1e-3);
const T4_TARGET: (f64, f64) = (0.015052, 1e-3);

const MIN_MEAN_IMPROVEMENT: f64 = 9.0;
const HE_IMPROVEMENT: f64 = 11.0;
const XE_IMPROVEMENT: f64 = 72.0;
const IMPROVEMENT_TOLERANCE: f64 = 0.3;

const OSCILLATION_SHELLS: [u32; 4] = [1, 2, 3, 5];
const OSCILLATION_SAMPLES: usize = 4000;

const PROPERTY_TOLERANCE: f64 = 1e-8;
const KINETIC_SUM_TOLERANCE: f64 = 1e-7;
const HE_WEIZSACKER: (f64, f64) = (4.0, 1e-6);
const TF_LIMIT_TOLERANCE: f64 = 1e-6;

struct Report {
    passed: usize,
    failed: usize,
}

impl Report {
    fn line(&mut self, id: &str, title: &str, ok: bool, elapsed: Duration, limit: Duration, detail: String) {
        let ok = ok && elapsed <= limit;
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        println!(
            "criterion {id} {title}: {} ({:.2} s, limit {} s) {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
}

fn note(title: &str, ok: bool, detail: String) {
    println!("  supplementary {title}: {} {detail}", if ok { "pass" } else { "fail" });
}

fn criterion_1() -> (bool, String) {
    let mut ok = true;
    let mut worst = 0.0f64;
    for n in 1..=8u32 {
        let mut z = 0i128;
        for k in 1..=n {
            z += 2 * (k * k) as i128;
        }
        let z2 = Ratio::from_integer(z * z);
        let total: Ratio<i128> = (1..=n)
            .map(|k| Ratio::from_integer(2 * (k * k) as i128) * z2 / Ratio::from_integer(2 * (k * k) as i128))
            .sum();
        ok &= total.is_integer() && total.to_integer() as u128 == neutral_kinetic_energy_exact(n);
        ok &= electron_count(n) as i128 == z;
        let cfg = ShellConfiguration::neutral(n).unwrap();
        ok &= model_kinetic_energy(&cfg) == total.to_integer() as f64;
        let continuous = model_kinetic_energy_continuous(z as f64).unwrap();
        worst = worst.max((continuous - total.to_integer() as f64).abs() / total.to_integer() as f64);
    }
    ok &= worst <= 1e-9;
    (
        ok,
        format!("exact for n_max <= 8; continuous form worst relative deviation {worst:.1e} (limit 1e-9)"),
    )
}

fn round_to(x: f64, places: i32) -> f64 {
    let s = 10f64.powi(places);
    (x * s).round() / s
}

fn criterion_2() -> (bool, String) {
    let expansion = model_expansion(5);
    let mut ok = true;
    let mut shown = Vec::new();
    for (p, printed) in EXPANSION_PRINTED {
        let c = expansion.coefficient(thirds(p));
        ok &= round_to(c, EXPANSION_PLACES) == printed;
        shown.push(format!("Z^{}: {c:.7}", thirds(p)));
    }
    (ok, shown.join(", "))
}

fn criterion_3(points: &[ModelPoint]) -> (bool, String) {
    let fits = match fit_model_coefficients(points) {
        Ok(f) => f,
        Err(e) => return (false, format!("fit failed: {e}")),
    };
    let mut ok = true;
    let mut shown = Vec::new();
    for (p, target, tol) in TF_TARGETS {
        let c = fits.tf.coefficient(thirds(p)).unwrap();
        let hit = (c - target).abs() <= tol;
        ok &= hit;
        shown.push(format!("T_TF Z^{} {c:.6} vs {target} {}", thirds(p), mark(hit)));
    }
    let lead = fits.t2.coefficient(thirds(7)).unwrap();
    let hit = lead.abs() < T2_LEADING_LIMIT;
    ok &= hit;
    shown.push(format!("T2 Z^7/3 {lead:.1e} {}", mark(hit)));
    for (name, fit, (target, tol)) in [("T2", &fits.t2, T2_TARGET), ("T4", &fits.t4, T4_TARGET)] {
        let c = fit.coefficient(thirds(6)).unwrap();
        let hit = (c - target).abs() <= tol;
        ok &= hit;
        shown.push(format!("{name} Z^2 {c:.6} vs {target} {}", mark(hit)));
    }
    let shells = points.iter().map(|p| p.n_max).max().unwrap_or(0);
    (ok, format!("n_max <= {shells}; {}", shown.join("; ")))
}

fn mark(hit: bool) -> &'static str {
    if hit {
        "ok"
    } else {
        "off"
    }
}

/// Distance from `x` to the interval of values that print as `printed`
/// with the same number of significant figures.
fn distance_to_printed(x: f64, printed: f64) -> f64 {
    let digits = printed.abs().log10().floor() as i32;
    // two significant figures
    let half = 0.5 * 10f64.powi(digits - 1);
    ((x - printed).abs() - half).max(0.0)
}

fn table_1_rows(mode: InterpolationMode) -> Vec<TableRow> {
    let atoms = bundled_atoms();
    let picked: Vec<&StoAtomRecord> = TABLE_ATOMS.iter().map(|s| find_atom(&atoms, s).unwrap()).collect();
    let settings = GridSettings::default();
    let correction = CorrectionTable::new(mode, &settings).unwrap();
    table_rows(&picked, &correction, &settings)
        .into_iter()
        .map(|(_, r)| r.unwrap())
        .collect()
}

fn percents(row: &TableRow) -> [f64; 4] {
    let e = &row.energies;
    [e.rel_err_tf, e.rel_err_t2, e.rel_err_t4, e.rel_err_corrected].map(|x| 100.0 * x)
}

fn criterion_4(rows: &[TableRow]) -> (bool, String) {
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut raw = 0.0f64;
    let mut shown = Vec::new();
    for (row, (z, symbol, printed)) in rows.iter().zip(TABLE_1) {
        ok &= row.z == z && row.symbol == symbol;
        let ours = percents(row);
        for (x, p) in ours.iter().zip(printed) {
            worst = worst.max(distance_to_printed(*x, p));
            raw = raw.max((x - p).abs());
        }
        ok &= ours[0] < 0.0 && ours[3] > 0.0;
        shown.push(format!(
            "{symbol} ({:.3}, {:.3}, {:.3}, {:.3})",
            ours[0], ours[1], ours[2], ours[3]
        ));
    }
    ok &= worst <= TABLE_TOLERANCE_PP;
    (ok, format!(
            "worst distance to the printed rounding interval {worst:.3} pp (limit {TABLE_TOLERANCE_PP}), raw {raw:.3} pp; {}",
            shown.join(", ")
        ),)
}

fn criterion_5(rows: &[TableRow]) -> (bool, String) {
    let factors: Vec<f64> = rows
        .iter()
        .map(|r| r.energies.rel_err_tf.abs() / r.energies.rel_err_corrected.abs())
        .collect();
    let mean = factors.iter().sum::<f64>() / factors.len() as f64;
    let he = factors[0];
    let xe = factors[factors.len() - 1];
    let within = |x: f64, target: f64| (x - target).abs() <= IMPROVEMENT_TOLERANCE * target;
    let ok = mean >= MIN_MEAN_IMPROVEMENT && within(he, HE_IMPROVEMENT) && within(xe, XE_IMPROVEMENT);
    (ok, format!("mean {mean:.1} (min {MIN_MEAN_IMPROVEMENT}), He {he:.1} (target {HE_IMPROVEMENT}), Xe {xe:.1} (target {XE_IMPROVEMENT})"))
}

fn criterion_6() -> (bool, String, Vec<f64>) {
    let r_hat = figure_abscissae(OSCILLATION_SAMPLES);
    let mut ok = true;
    let mut shown = Vec::new();
    let mut amplitudes = Vec::new();
    let mut radial = Vec::new();
    for n in OSCILLATION_SHELLS {
        let cfg = ShellConfiguration::neutral(n).unwrap();
        let summary = scaled_model_density(&cfg, &r_hat).unwrap().oscillations();
        ok &= summary.local_maxima == n as usize;
        amplitudes.push(summary.peak_amplitude);
        radial.push(summary.radial_peak_amplitude);
        shown.push(format!(
            "n_max {n}: {} maxima, peak {:.4}",
            summary.local_maxima, summary.peak_amplitude
        ));
    }
    ok &= amplitudes[3] < amplitudes[2];
    (ok, shown.join("; "), radial)
}

fn laguerre_by_sum(k: u32, alpha: u32, x: f64) -> f64 {
    let lf = |n: u32| log_factorial(n as u64);
    (0..=k)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let binom = (lf(k + alpha) - lf(k - i) - lf(alpha + i)).exp();
            sign * binom * x.powi(i as i32) / lf(i).exp()
        })
        .sum()
}

fn criterion_7() -> (bool, String) {
    let mut failures = Vec::new();

    let laguerre_ok = (0..6).all(|alpha| {
        (0..10).all(|k| {
            [0.0, 0.3, 1.7, 4.0, 9.5].iter().all(|&x| {
                let b = laguerre_by_sum(k, alpha, x);
                (laguerre(LaguerreSpec::new(k, alpha), x) - b).abs() <= 1e-10 * b.abs().max(1.0)
            })
        })
    });
    if !laguerre_ok {
        failures.push("laguerre oracle");
    }

    let grid = make_grid(GridScheme::Linear, 8000, (1e-12, 300.0)).unwrap();
    let mut worst_overlap = 0.0f64;
    for l in 0..5u32 {
        for n in (l + 1)..=5 {
            for m in (l + 1)..=5 {
                let s = grid.integrate(|r| {
                    r * r * radial_wavefunction(1.0, n, l, r).unwrap() * radial_wavefunction(1.0, m, l, r).unwrap()
                });
                worst_overlap = worst_overlap.max((s - if n == m { 1.0 } else { 0.0 }).abs());
            }
        }
    }
    if worst_overlap > PROPERTY_TOLERANCE {
        failures.push("orthonormality");
    }

    let settings = GridSettings::default();
    let mut worst_norm = 0.0f64;
    let mut worst_kinetic = 0.0f64;
    for n_max in 1..=8u32 {
        let cfg = ShellConfiguration::neutral(n_max).unwrap();
        let z = cfg.nuclear_charge();
        let rho = model_density(&cfg).unwrap();
        let grid = RadialGrid::for_density(&rho, &settings).unwrap();
        let charge = grid.integrate(|r| 4.0 * PI * r * r * rho.value(r));
        worst_norm = worst_norm.max((charge / z - 1.0).abs());
        if n_max <= 6 {
            let mut total = 0.0;
            for n in 1..=n_max {
                for l in 0..n {
                    total += 2.0
                        * (2 * l + 1) as f64
                        * grid.integrate(|r| {
                            let (v, d, _) = radial_wavefunction_derivatives(z, n, l, r).unwrap();
                            0.5 * d * d * r * r + 0.5 * (l * (l + 1)) as f64 * v * v
                        });
                }
            }
            worst_kinetic = worst_kinetic.max((total / model_kinetic_energy(&cfg) - 1.0).abs());
        }
    }
    if worst_norm > PROPERTY_TOLERANCE {
        failures.push("normalization");
    }
    if worst_kinetic > KINETIC_SUM_TOLERANCE {
        failures.push("kinetic sum");
    }

    let he_model = model_density(&ShellConfiguration::neutral(1).unwrap())
        .unwrap()
        .to_field()
        .unwrap();
    let ar = atom_density(find_atom(&bundled_atoms(), "Ar").unwrap()).unwrap();
    let terms = |f: &RadialField| gradient_expansion(f, &RadialGrid::for_density(f, &settings).unwrap()).unwrap();
    let mut worst_scaling = 0.0f64;
    for base in [&he_model, &ar] {
        let a = terms(base);
        for lambda in [0.5, 2.0, 3.7] {
            let b = terms(&base.scaled(lambda));
            let l2 = lambda * lambda;
            for (x, y) in [(b.t_tf, a.t_tf), (b.t_w, a.t_w), (b.t4, a.t4)] {
                worst_scaling = worst_scaling.max((x / (l2 * y) - 1.0).abs());
            }
        }
    }
    if worst_scaling > PROPERTY_TOLERANCE {
        failures.push("scaling");
    }

    let he_grid = RadialGrid::for_density(&he_model, &settings).unwrap();
    let (t_w, _) = weizsacker_energy(&he_model, &he_grid).unwrap();
    if (t_w - HE_WEIZSACKER.0).abs() > HE_WEIZSACKER.1 {
        failures.push("T_W exactness");
    }
    let tf_charge = tf_limit_charge(64);
    if (tf_charge - 1.0).abs() > TF_LIMIT_TOLERANCE {
        failures.push("TF-limit normalization");
    }

    let detail = format!(
        "overlap {worst_overlap:.1e}, norm {worst_norm:.1e}, kinetic sum {worst_kinetic:.1e}, scaling {worst_scaling:.1e}, He-model T_W {t_w:.9}, TF-limit charge {tf_charge:.9}{}",
        if failures.is_empty() { String::new() } else { format!("; failing: {}", failures.join(", ")) }
    );
    (failures.is_empty(), detail)
}

/// Least-squares slope of `ln|err|` against `ln Z` over the largest decade.
fn decade_slope(points: &[ModelPoint], which: usize) -> f64 {
    let z_max = points.iter().map(|p| p.z).fold(0.0, f64::max);
    let sel: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.z >= z_max / 10.0)
        .map(|p| (p.z.ln(), p.relative_errors()[which].abs().ln()))
        .collect();
    let n = sel.len() as f64;
    let mx = sel.iter().map(|q| q.0).sum::<f64>() / n;
    let my = sel.iter().map(|q| q.1).sum::<f64>() / n;
    let sxy: f64 = sel.iter().map(|q| (q.0 - mx) * (q.1 - my)).sum();
    let sxx: f64 = sel.iter().map(|q| (q.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn supplementary(points: &[ModelPoint], published: &[TableRow], radial: &[f64]) {
    let last = points.last().unwrap();
    let [e0, e2, e4] = last.relative_errors().map(f64::abs);
    let r02 = e0 / e2;
    let r24 = e2 / e4;
    note(
        "fig1a |err T0|/|err T2| at largest n_max",
        (r02 - 6.0).abs() <= 0.3 * 6.0,
        format!("{r02:.2} (target 6 +-30%)"),
    );
    note(
        "fig1a |err T2|/|err T4| at largest n_max",
        (r24 - 3.0).abs() <= 0.3 * 3.0,
        format!("{r24:.2} (target 3 +-30%)"),
    );
    for (which, name) in ["T0", "T2", "T4"].iter().enumerate() {
        let s = decade_slope(points, which);
        note(
            &format!("fig2a slope of {name} over the largest decade"),
            (s + 1.0 / 3.0).abs() <= 0.1 / 3.0,
            format!("{s:.3} (target -1/3 +-10%)"),
        );
    }
    let (ok, detail) = criterion_4(published);
    note("table 1 with the printed cubic", ok, detail);
    note(
        "radially weighted peak amplitudes decrease",
        radial.windows(2).all(|w| w[1] < w[0]),
        format!("{radial:.4?}"),
    );
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn main() {
    let mut report = Report { passed: 0, failed: 0 };
    let secs = Duration::from_secs;

    let ((ok, d), t) = timed(criterion_1);
    report.line("1", "model energies", ok, t, secs(1), d);

    let ((ok, d), t) = timed(criterion_2);
    report.line("2", "expansion coefficients", ok, t, secs(1), d);

    let ((points, (ok, d)), t) = timed(|| {
        let points = model_sequence(1..=*default_fit_shells().end(), &GridSettings::default()).unwrap();
        let fit_points: Vec<ModelPoint> = points
            .iter()
            .filter(|p| default_fit_shells().contains(&p.n_max))
            .copied()
            .collect();
        let result = criterion_3(&fit_points);
        (points, result)
    });
    report.line("3", "Richardson targets", ok, t, secs(300), d);

    let ((rows, (ok, d)), t) = timed(|| {
        let rows = table_1_rows(InterpolationMode::Refit);
        let result = criterion_4(&rows);
        (rows, result)
    });
    report.line("4", "Table 1 reproduction", ok, t, secs(30), d);

    let ((ok, d), t) = timed(|| criterion_5(&rows));
    report.line("5", "improvement factor", ok, t, secs(1), d);

    let ((ok, d, radial), t) = timed(criterion_6);
    report.line("6", "shell oscillations", ok, t, secs(10), d);

    let ((ok, d), t) = timed(criterion_7);
    report.line("7", "property suite", ok, t, secs(60), d);

    supplementary(&points, &table_1_rows(InterpolationMode::Published), &radial);

    println!(
        "acceptance: {} of {} criteria pass",
        report.passed,
        report.passed + report.failed
    );
    if report.failed > 0 && std::env::var_os("TFCORR_ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
