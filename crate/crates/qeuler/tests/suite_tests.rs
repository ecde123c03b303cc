//! End-to-end runs of the verification suite: the default configuration
//! must pass, runs must be deterministic, and a deliberately perturbed
//! identity must be caught, whichever family it hides in.

use qeuler::{
    all_passed, reports_to_json, run_all, verify, IdentityCase, IdentityId, Status, SuiteConfig,
    VerifyMode, ALL_IDENTITIES,
};

/// A slimmed grid per family so whole-catalogue sweeps stay quick.
fn reduced(id: IdentityId) -> IdentityCase {
    let mut case = IdentityCase::canonical(id);
    match id {
        IdentityId::Thm1 => {
            case.grid.k_max = 3;
            case.grid.x_values = vec!["1".into()];
            case.grid.q_samples = vec!["1/2".into()];
        }
        IdentityId::Thm2 => {
            case.grid.n_max = 3;
            case.grid.k_max = 5;
        }
        IdentityId::Thm3 => {
            case.grid.k_max = 2;
        }
        IdentityId::Thm4 => {
            case.grid.k_max = 2;
            case.grid.moduli = vec![3];
        }
        IdentityId::Thm5 => {
            case.grid.n_max = 5;
            case.grid.moduli = vec![3];
            case.grid.x_values = vec!["1/2".into()];
        }
        IdentityId::Thm6 => {
            case.grid.n_max = 4;
            case.grid.k_max = 5;
        }
        IdentityId::Eq215 => {
            case.grid.n_max = 8;
        }
        IdentityId::Sec4SumProd => {
            case.grid.n_max = 5;
            case.grid.r_max = 2;
            case.grid.x_values = vec!["1/2".into()];
        }
        IdentityId::Witt => {
            case.grid.n_max = 3;
            case.grid.primes = vec![5];
            case.grid.level_max = 3;
            case.mode = VerifyMode::Padic {
                monotone_from_level: 2,
                min_final_valuation: 1,
            };
        }
        IdentityId::IntEq => {
            case.grid.n_max = 2;
            case.grid.k_max = 1;
            case.grid.primes = vec![5];
            case.grid.level_max = 3;
            case.mode = VerifyMode::Padic {
                monotone_from_level: 0,
                min_final_valuation: 2,
            };
        }
    }
    case
}

#[test]
fn default_suite_passes() {
    let reports = run_all(&SuiteConfig::default_suite()).unwrap();
    assert_eq!(reports.len(), ALL_IDENTITIES.len());
    for r in &reports {
        println!(
            "{:<12} {:?} checked={} time={:.1}ms",
            r.id.to_string(),
            r.status,
            r.cases_checked,
            r.time_ms
        );
        assert_eq!(r.status, Status::Pass, "{}: {:?}", r.id, r.counterexample);
        assert!(r.cases_checked > 0, "{} verified nothing", r.id);
        assert!(!r.perturbed);
    }
    assert!(all_passed(&reports));

    // The repaired statements are flagged, the faithful ones are not.
    for r in &reports {
        let expect = matches!(r.id, IdentityId::Thm2 | IdentityId::Thm3 | IdentityId::Witt);
        assert_eq!(r.corrected_form, expect, "{}", r.id);
    }
}

#[test]
fn runs_are_deterministic() {
    let config = SuiteConfig {
        cases: vec![
            reduced(IdentityId::Thm2),
            reduced(IdentityId::Thm5),
            reduced(IdentityId::Witt),
        ],
        mutate: None,
    };
    let mut a = run_all(&config).unwrap();
    let mut b = run_all(&config).unwrap();
    for r in a.iter_mut().chain(b.iter_mut()) {
        r.time_ms = 0.0;
    }
    assert_eq!(a, b);
}

#[test]
fn every_family_detects_mutation() {
    for id in ALL_IDENTITIES {
        let config = SuiteConfig {
            cases: vec![reduced(id)],
            mutate: Some(id),
        };
        let reports = run_all(&config).unwrap();
        assert_eq!(
            reports[0].status,
            Status::Fail,
            "{id} missed the perturbation"
        );
        assert!(reports[0].perturbed);
        let ce = reports[0].counterexample.as_ref().unwrap();
        assert!(!ce.is_empty());
    }
}

#[test]
fn json_reports_have_the_expected_shape() {
    let report = verify(&reduced(IdentityId::Eq215)).unwrap();
    let json = reports_to_json(std::slice::from_ref(&report)).unwrap();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    let entry = &value.as_array().unwrap()[0];
    assert_eq!(entry["id"], "EQ2.15");
    assert_eq!(entry["status"], "pass");
    assert!(entry["params"].is_object());
    assert!(entry["residual"].is_object());
    assert!(entry["time_ms"].is_number());
    assert_eq!(entry["residual"]["kind"], "exact");
    assert_eq!(entry["residual"]["mismatches"], 0);
}

#[test]
fn single_case_verification_matches_run_all() {
    let case = reduced(IdentityId::Thm6);
    let direct = verify(&case).unwrap();
    let config = SuiteConfig {
        cases: vec![case],
        mutate: None,
    };
    let via_suite = &run_all(&config).unwrap()[0];
    assert_eq!(direct.status, via_suite.status);
    assert_eq!(direct.cases_checked, via_suite.cases_checked);
    assert_eq!(direct.residual, via_suite.residual);
}
