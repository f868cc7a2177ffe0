//! Acceptance battery: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use binform::verify::{run_suite, RunConfig};

const CRITERIA: [(u32, &str, &str); 12] = [
    (1, "ideals.hilbert", "Hilbert function of coprime pairs matches the model"),
    (2, "ideals.psi", "psi gives Hilbert-scheme points and inverts exactly"),
    (3, "limits.degeneration", "flat limits agree with the psi prediction"),
    (4, "strata.dmu", "differential injective with corank d-u; planted factors give kernel"),
    (5, "strata.koszul", "multiples of coprime triples span V_(e+u)"),
    (6, "pic.restriction", "restriction identities of the L classes"),
    (7, "pic.cones", "L classes form a nef basis; delta is not nef"),
    (8, "curves.complete", "explicit and Frobenius curves are complete"),
    (9, "curves.mdegree", "Plucker degree profile is affine and vanishes at i=d"),
    (10, "strata.fiber", "divisor counts equal binomial(d-u, d-v)"),
    (11, "invariants.slices", "invariant slices match the free ring; resultant invariant"),
    (12, "strata.census", "census: gcd and resultant agree; stratum densities bounded"),
];

fn main() -> ExitCode {
    let config = RunConfig::default();
    let mut all = true;
    for (n, suite, what) in CRITERIA {
        let start = Instant::now();
        let report = run_suite(suite, &config).expect("known suite");
        let secs = start.elapsed().as_secs_f64();
        let verdict = if report.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {n:>2} [{verdict}] {what} ({} checks, {} samples, {secs:.2}s)",
            report.checks, report.samples
        );
        for failure in &report.failures {
            println!("    {failure}");
        }
        all &= report.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
