//! Acceptance gate: one test per criterion, each printing its pass/fail
//! line and the failing checks, if any.
//!
//! Run with `cargo test -p lie-eigenlab --test acceptance -- --nocapture`
//! to see every line.
//!
//! Two criteria assert statements that the laboratory itself refutes
//! numerically (see the failure messages for the measured laws): the
//! kappa-orthogonality of the two column-coefficient families, and the
//! eigenfamily property of the extended (s >= 2) construction. They are
//! implemented exactly as stated and fail honestly.

use lie_eigenlab::acceptance::{self, Criterion};

fn report(criterion: &Criterion) {
    println!(
        "criterion {} ({}): {} [{} checks, {:.1}s{}]",
        criterion.number,
        criterion.name,
        if criterion.passed() { "PASS" } else { "FAIL" },
        criterion.checks.len(),
        criterion.elapsed_seconds,
        match criterion.budget_seconds {
            Some(b) => format!(", budget {b:.0}s"),
            None => String::new(),
        }
    );
    for check in &criterion.checks {
        println!(
            "  [{}] {}: measured {:.6e} vs {:.1e}{}",
            if check.passed { "ok" } else { "FAIL" },
            check.name,
            check.measured,
            check.tolerance,
            if check.detail.is_empty() {
                String::new()
            } else {
                format!(" ({})", check.detail)
            }
        );
    }
    if let Some(budget) = criterion.budget_seconds {
        assert!(
            criterion.elapsed_seconds < budget,
            "criterion {} blew its runtime budget: {:.1}s > {budget:.0}s",
            criterion.number,
            criterion.elapsed_seconds
        );
    }
}

fn assert_criterion(criterion: &Criterion) {
    report(criterion);
    let failures: Vec<String> = criterion
        .failures()
        .iter()
        .map(|c| {
            format!(
                "{} (measured {:.6e}, tolerance {:.1e}) {}",
                c.name, c.measured, c.tolerance, c.detail
            )
        })
        .collect();
    assert!(
        criterion.passed(),
        "criterion {} ({}) failed:\n  {}",
        criterion.number,
        criterion.name,
        failures.join("\n  ")
    );
}

#[test]
fn criterion_1_casimir_agreement() {
    assert_criterion(&acceptance::criterion_1().expect("criterion 1 must run"));
}

#[test]
fn criterion_2_tensor_mu_minus_two() {
    assert_criterion(&acceptance::criterion_2().expect("criterion 2 must run"));
}

#[test]
fn criterion_3_kappa_orthogonality() {
    assert_criterion(&acceptance::criterion_3().expect("criterion 3 must run"));
}

#[test]
fn criterion_4_eigenfamily_suite() {
    assert_criterion(&acceptance::criterion_4().expect("criterion 4 must run"));
}

#[test]
fn criterion_5_harmonic_morphism_suite() {
    assert_criterion(&acceptance::criterion_5().expect("criterion 5 must run"));
}

#[test]
fn criterion_6_main_theorem_desk_scale() {
    assert_criterion(&acceptance::criterion_6().expect("criterion 6 must run"));
}

#[test]
fn criterion_7_gradient_formula() {
    assert_criterion(&acceptance::criterion_7().expect("criterion 7 must run"));
}

#[test]
fn criterion_8_numerical_hygiene() {
    assert_criterion(&acceptance::criterion_8().expect("criterion 8 must run"));
}
