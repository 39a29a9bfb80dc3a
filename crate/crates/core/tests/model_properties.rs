use std::f64::consts::PI;

use tfcorr::hydrogenic::{
    electron_count, neutral_kinetic_energy_exact, radial_wavefunction, radial_wavefunction_derivatives,
};
use tfcorr::{
    laguerre, log_factorial, make_grid, model_density, model_kinetic_energy, GridScheme, GridSettings, LaguerreSpec,
    RadialDensity, RadialGrid, ShellConfiguration,
};

fn binomial(n: u32, k: u32) -> f64 {
    (log_factorial(n as u64) - log_factorial(k as u64) - log_factorial((n - k) as u64)).exp()
}

fn laguerre_by_sum(k: u32, alpha: u32, x: f64) -> f64 {
    (0..=k)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(k + alpha, k - i) * x.powi(i as i32) / log_factorial(i as u64).exp()
        })
        .sum()
}

#[test]
fn laguerre_recurrence_matches_explicit_sum() {
    for alpha in 0..6 {
        for k in 0..10 {
            for &x in &[0.0, 0.3, 1.7, 4.0, 9.5] {
                let a = laguerre(LaguerreSpec::new(k, alpha), x);
                let b = laguerre_by_sum(k, alpha, x);
                assert!(
                    (a - b).abs() <= 1e-10 * b.abs().max(1.0),
                    "L_{k}^{alpha}({x}): {a} vs {b}"
                );
            }
        }
    }
}

#[test]
fn laguerre_orthogonality() {
    let grid = make_grid(GridScheme::Linear, 4000, (1e-12, 120.0)).unwrap();
    for alpha in 0..3u32 {
        for j in 0..=4u32 {
            for k in 0..=4u32 {
                let moment = grid.integrate(|x| {
                    x.powi(alpha as i32)
                        * (-x).exp()
                        * laguerre(LaguerreSpec::new(j, alpha), x)
                        * laguerre(LaguerreSpec::new(k, alpha), x)
                });
                let expected = if j == k {
                    (log_factorial((k + alpha) as u64) - log_factorial(k as u64)).exp()
                } else {
                    0.0
                };
                assert!((moment - expected).abs() < 1e-8, "alpha {alpha}, ({j}, {k}): {moment}");
            }
        }
    }
}

#[test]
fn orbitals_are_orthonormal() {
    let grid = make_grid(GridScheme::Linear, 8000, (1e-12, 300.0)).unwrap();
    for l in 0..5u32 {
        for n in (l + 1)..=5 {
            for m in (l + 1)..=5 {
                let overlap = grid.integrate(|r| {
                    r * r * radial_wavefunction(1.0, n, l, r).unwrap() * radial_wavefunction(1.0, m, l, r).unwrap()
                });
                let expected = if n == m { 1.0 } else { 0.0 };
                assert!((overlap - expected).abs() < 1e-8, "<{n}{l}|{m}{l}> = {overlap}");
            }
        }
    }
}

#[test]
fn model_density_holds_the_electron_count() {
    for n in 1..=8 {
        let cfg = ShellConfiguration::neutral(n).unwrap();
        let rho = model_density(&cfg).unwrap();
        let grid = RadialGrid::for_density(&rho, &GridSettings::default()).unwrap();
        let charge = grid.integrate(|r| 4.0 * PI * r * r * rho.value(r));
        let expected = electron_count(n) as f64;
        assert!((charge - expected).abs() / expected < 1e-8, "n_max {n}: {charge}");
    }
}

#[test]
fn orbital_kinetic_energies_sum_to_the_model_energy() {
    for n_max in 1..=6u32 {
        let cfg = ShellConfiguration::neutral(n_max).unwrap();
        let z = cfg.nuclear_charge();
        let rho = model_density(&cfg).unwrap();
        let grid = RadialGrid::for_density(&rho, &GridSettings::default()).unwrap();
        let mut total = 0.0;
        for n in 1..=n_max {
            for l in 0..n {
                let t = grid.integrate(|r| {
                    let (value, first, _) = radial_wavefunction_derivatives(z, n, l, r).unwrap();
                    0.5 * first * first * r * r + 0.5 * (l * (l + 1)) as f64 * value * value
                });
                total += 2.0 * (2 * l + 1) as f64 * t;
            }
        }
        let expected = model_kinetic_energy(&cfg);
        assert!(
            (total - expected).abs() / expected < 1e-7,
            "n_max {n_max}: {total} vs {expected}"
        );
    }
}

#[test]
fn exact_energies_are_integers() {
    for n in 1..=8u32 {
        let z = electron_count(n) as u128;
        assert_eq!(neutral_kinetic_energy_exact(n), n as u128 * z * z);
    }
    assert_eq!(neutral_kinetic_energy_exact(2), 200);
}
