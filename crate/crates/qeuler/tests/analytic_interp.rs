//! Certified series evaluation against exact targets, plus internal
//! consistency between the three evaluators and honesty of the reported
//! error bounds.

mod common;

use common::rat;
use num_complex::Complex64;
use qeuler::{barnes_zeta, character_from_spec, euler_polynomial_at, l_q, zeta_q};

fn real(s: f64) -> Complex64 {
    Complex64::new(s, 0.0)
}

#[test]
fn zeta_interpolates_the_polynomials() {
    for k in 0..=6usize {
        for (x, xf) in [(rat(1, 1), 1.0), (rat(1, 2), 0.5)] {
            for (q, qf) in [(rat(1, 2), 0.5), (rat(1, 4), 0.25)] {
                let target = euler_polynomial_at(k, &x).eval_rational(&q).unwrap();
                let target = qeuler::field::rational_to_f64(&target);
                let z = zeta_q(real(-(k as f64)), xf, qf, 1e-12).unwrap();
                let err = (z.value - real(target)).norm();
                assert!(
                    err <= 1e-9,
                    "k={k} x={xf} q={qf}: err {err:.3e}, value {}, target {target}",
                    z.value
                );
            }
        }
    }
}

#[test]
fn l_function_with_trivial_modulus_matches_shifted_zeta() {
    // The modulus-1 series starts at n = 1, so it equals -q * zeta(s, 1).
    let chi = character_from_spec("1.0").unwrap();
    let q0 = 0.45;
    for s in [real(-4.0), real(2.5), Complex64::new(1.0, 2.0)] {
        let l = l_q(s, &chi, q0, 1e-11).unwrap();
        let z = zeta_q(s, 1.0, q0, 1e-11).unwrap();
        let diff = (l.value + q0 * z.value).norm();
        let allowance = l.abs_error_bound + q0 * z.abs_error_bound + 1e-13;
        assert!(
            diff <= allowance,
            "s={s}: diff {diff:.3e} > {allowance:.3e}"
        );
    }
}

#[test]
fn barnes_rank_one_matches_zeta() {
    for s in [real(-5.0), real(3.25), Complex64::new(0.5, -1.5)] {
        let b = barnes_zeta(s, &[1.0], 0.75, 0.5, 1e-11).unwrap();
        let z = zeta_q(s, 0.75, 0.5, 1e-11).unwrap();
        let diff = (b.value - z.value).norm();
        let allowance = b.abs_error_bound + z.abs_error_bound + 1e-13;
        assert!(
            diff <= allowance,
            "s={s}: diff {diff:.3e} > {allowance:.3e}"
        );
    }
}

#[test]
fn reported_bounds_survive_refinement() {
    // Re-evaluating at a 100x tighter tolerance must move the value by
    // less than the originally reported bound.
    let points = [
        (real(-3.0), 1.0, 0.5),
        (real(-7.0), 0.5, 0.25),
        (real(1.5), 2.0, 0.6),
        (Complex64::new(2.0, 1.0), 1.0, 0.35),
    ];
    for (s, x, q0) in points {
        let coarse = zeta_q(s, x, q0, 1e-8).unwrap();
        let fine = zeta_q(s, x, q0, 1e-10).unwrap();
        let moved = (coarse.value - fine.value).norm();
        assert!(
            moved <= coarse.abs_error_bound,
            "s={s} x={x} q={q0}: moved {moved:.3e} > bound {:.3e}",
            coarse.abs_error_bound
        );
        assert!(coarse.abs_error_bound <= 1e-8 + f64::EPSILON);
    }
}

#[test]
fn non_integer_and_complex_arguments_are_finite() {
    for s in [real(0.5), real(-2.5), Complex64::new(1.0, 2.0)] {
        let z = zeta_q(s, 1.0, 0.5, 1e-10).unwrap();
        assert!(z.value.is_finite());
        assert!(z.abs_error_bound <= 1e-10);
    }
    let b = barnes_zeta(Complex64::new(-1.5, 0.5), &[1.0, 2.0], 1.0, 0.5, 1e-9).unwrap();
    assert!(b.value.is_finite());
    assert!(b.abs_error_bound <= 1e-9);
}

#[test]
fn domain_errors_are_reported() {
    assert!(zeta_q(real(-2.0), 1.0, 1.5, 1e-10).is_err()); // q outside (0, 1)
    assert!(zeta_q(real(2.0), 0.0, 0.5, 1e-10).is_err()); // x = 0 needs s a nonpositive integer
    assert!(zeta_q(real(-2.0), 1.0, 0.5, 0.0).is_err()); // tolerance must be positive
    assert!(barnes_zeta(real(-2.0), &[], 1.0, 0.5, 1e-10).is_err()); // no weights
    assert!(barnes_zeta(real(-2.0), &[1.0; 4], 1.0, 0.5, 1e-10).is_err()); // rank cap
}
