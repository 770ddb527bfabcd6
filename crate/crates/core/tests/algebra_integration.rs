use fockpt::deformed_algebra::{ladder_operators, sigma_cross_check};
use fockpt::spectral::{closed_form_spectrum, dense_eigensolve, match_spectra};
use nalgebra::DVector;
use num_complex::Complex64;

#[test]
fn ladder_raises_by_omega() {
    for (alpha, m) in [(0.3, 3), (0.6, 4), (0.85, 5)] {
        let b = ladder_operators(alpha, 0.5, m).unwrap();
        let w = b.omega;
        for pair in dense_eigensolve(&b.j0).unwrap() {
            let v = DVector::from_column_slice(&pair.vector);
            let up = &b.j_plus * &v;
            if up.norm() <= 1e-8 * v.norm() {
                continue;
            }
            let shifted = pair.value + w;
            let res = (&b.j0 * &up - &up * shifted).norm() / up.norm();
            assert!(res < 1e-8, "alpha={alpha} m={m} residual {res}");
            let down = &b.j_minus * &v;
            if down.norm() > 1e-8 * v.norm() {
                let res = (&b.j0 * &down - &down * (pair.value - w)).norm() / down.norm();
                assert!(res < 1e-8);
            }
        }
    }
}

#[test]
fn doubled_j0_spectrum_is_closed_form() {
    for m in 0..=8 {
        for alpha in [0.1, 0.5, 0.9] {
            let b = ladder_operators(alpha, 0.0, m).unwrap();
            let doubled = &b.j0 * Complex64::new(2.0, 0.0);
            let vals: Vec<Complex64> = dense_eigensolve(&doubled)
                .unwrap()
                .iter()
                .map(|p| p.value)
                .collect();
            assert!(match_spectra(&vals, &closed_form_spectrum(m, alpha)) < 1e-8);
        }
    }
}

#[test]
fn dyadic_generators_reported_not_forced() {
    for alpha in [0.2, 0.6, 0.9] {
        let check = sigma_cross_check(alpha).unwrap();
        assert!(check.mirrored.iter().all(|r| *r < 1e-13));
        assert!(check.direct[0] > 1e-3);
    }
}
