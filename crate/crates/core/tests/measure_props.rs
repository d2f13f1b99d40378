use bqf_core::measure::{
    levy_partial_sum, moment_consistency, self_energy_eval, tan_fixed_points, tangent_atoms, tangent_convergence,
    zeta_zigzag_approx, ApproxKind,
};
use bqf_core::rational::int;
use std::f64::consts::PI;

#[test]
fn tangent_atoms_solve_the_fixed_point_equation() {
    let mu = tangent_atoms(100).unwrap();
    let roots = tan_fixed_points(100).unwrap();
    for (j, x) in mu.positive_locations().into_iter().enumerate() {
        assert!(x < 4.0 / PI);
        let u = roots[j];
        assert_eq!(x, 1.0 / u);
        // tan has slope ~4u² at the root, so one ulp of u costs ~4u³·2⁻⁵³ in the residual
        if u < 40.0 {
            assert!((2.0 / x - (1.0 / x).tan()).abs() < 1e-9, "residual at {x}");
        }
        let step = 4.0 * f64::EPSILON * u;
        let f = |t: f64| t.tan() - 2.0 * t;
        assert!(f(u - step) < 0.0 && f(u + step) > 0.0, "root {j} at {u} is not bracketed");
    }
    let total = mu.total_mass();
    assert!((1.0 - 1e-3..=1.0 + 1e-12).contains(&total), "total mass {total}");
}

// m = 0 is the total mass, whose truncation deficit is ~2.5e-4 at 200 pairs
#[test]
fn even_moments_match_the_series() {
    let rows = moment_consistency(&tangent_atoms(200).unwrap(), 6).unwrap();
    for row in rows.iter().filter(|row| row.m >= 2 && row.m % 2 == 0) {
        assert!(row.error < 1e-4, "m = {}: {} vs {}", row.m, row.atom_moment, row.series_moment);
    }
}

#[test]
fn levy_sum_converges_to_self_energy() {
    for z in [0.8, 1.0, 1.5, -2.0] {
        let err = (levy_partial_sum(z, 100_000).unwrap() - self_energy_eval(z).unwrap()).abs();
        assert!(err < 1e-6, "z = {z}: error {err}");
    }
}

// With a zero diagonal the r = 2 error is exactly 1/(3n²), so doubling n
// divides it by four rather than two.
#[test]
fn zero_diagonal_convergence_error_is_inverse_square() {
    let rows = tangent_convergence(&int(0), &int(1), &[100, 200, 400], 2).unwrap();
    let errors: Vec<f64> = rows.iter().filter(|row| row.r == 2).map(|row| row.abs_error).collect();
    assert_eq!(errors.len(), 3);
    for (n, err) in [100.0f64, 200.0, 400.0].iter().zip(&errors) {
        assert!((err - 1.0 / (3.0 * n * n)).abs() < 1e-15, "n = {n}: {err}");
    }
    for pair in errors.windows(2) {
        assert!((pair[0] / pair[1] - 4.0).abs() < 1e-6);
    }
}

#[test]
fn trace_approximations_improve_with_n() {
    for kind in [ApproxKind::Zeta, ApproxKind::Tangent, ApproxKind::Zigzag] {
        let ks: &[usize] = if kind == ApproxKind::Zigzag { &[2, 3] } else { &[0, 1, 2, 3] };
        for &k in ks {
            let errors: Vec<f64> =
                [50, 100, 200].iter().map(|&n| zeta_zigzag_approx(kind, k, n).unwrap().rel_error).collect();
            assert!(errors.windows(2).all(|w| w[1] <= w[0]), "{kind:?} k={k}: {errors:?}");
        }
    }
}
