use criterion::{black_box, criterion_group, criterion_main, Criterion};
use tfcorr::asymptotics::{richardson_extrapolate, thirds};
use tfcorr::atomic_data::find_atom;
use tfcorr::hydrogenic::electron_count;
use tfcorr::table::table_row;
use tfcorr::{
    bundled_atoms, gradient_expansion, gradient_terms_on, model_density, CorrectionTable, GridSettings,
    InterpolationMode, RadialGrid, ShellConfiguration,
};

fn model_density_terms(c: &mut Criterion) {
    let settings = GridSettings::default();
    for n in [2, 10, 40] {
        let rho = model_density(&ShellConfiguration::neutral(n).unwrap()).unwrap();
        let grid = RadialGrid::for_density(&rho, &settings).unwrap();
        c.bench_function(&format!("model density terms, n_max {n}"), |b| {
            b.iter(|| gradient_terms_on(black_box(&rho), &grid).unwrap())
        });
    }
    let rho = model_density(&ShellConfiguration::neutral(10).unwrap()).unwrap();
    let grid = RadialGrid::for_density(&rho, &settings).unwrap();
    c.bench_function("model density terms with grid check, n_max 10", |b| {
        b.iter(|| gradient_expansion(black_box(&rho), &grid).unwrap())
    });
}

fn table_rows(c: &mut Criterion) {
    let atoms = bundled_atoms();
    let settings = GridSettings::default();
    let correction = CorrectionTable::new(InterpolationMode::Refit, &settings).unwrap();
    for symbol in ["He", "Xe"] {
        let atom = find_atom(&atoms, symbol).unwrap();
        c.bench_function(&format!("table row, {symbol}"), |b| {
            b.iter(|| table_row(black_box(atom), &correction, &settings).unwrap())
        });
    }
}

fn richardson(c: &mut Criterion) {
    let data: Vec<(f64, f64)> = (2..=40)
        .map(|n| {
            let z = electron_count(n) as f64;
            (
                z,
                1.144714 * z.powf(7.0 / 3.0) - 0.625856 * z * z + 0.146878 * z.powf(5.0 / 3.0),
            )
        })
        .collect();
    let powers = [thirds(7), thirds(6), thirds(5)];
    c.bench_function("richardson, 39 points, 3 powers", |b| {
        b.iter(|| richardson_extrapolate(black_box(&data), &powers).unwrap())
    });
}

criterion_group!(benches, model_density_terms, table_rows, richardson);
criterion_main!(benches);
