//! Acceptance run: every criterion at q in {3, 4, 5, 7}, one verdict line
//! each. Set `CUBIC_CENSUS_EXTENDED=1` for the long-running checks.

use std::process::ExitCode;

use cubic_census::engine::Budget;
use cubic_census::verify::{criterion_title, Suite, Verifier, VerifyOptions};

fn main() -> ExitCode {
    let extended = std::env::var("CUBIC_CENSUS_EXTENDED").is_ok_and(|v| !v.is_empty() && v != "0");
    let budget = if extended { Budget::EXTENDED } else { Budget::DEFAULT };
    let opts = VerifyOptions { qs: vec![3, 4, 5, 7], extended, budget };
    let report = match Verifier::new(opts).run_suite(Suite::All) {
        Ok(r) => r,
        Err(e) => {
            println!("FAIL acceptance aborted: {e}");
            return ExitCode::FAILURE;
        }
    };
    let groups = report.by_criterion();
    for &criterion in Suite::All.criteria() {
        let rows = groups.get(&criterion).map(Vec::as_slice).unwrap_or(&[]);
        let failed: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
        let verdict = if rows.is_empty() || !failed.is_empty() { "FAIL" } else { "PASS" };
        let mut qs: Vec<u64> = rows.iter().map(|r| r.q).filter(|&q| q > 0).collect();
        qs.sort_unstable();
        qs.dedup();
        println!(
            "{verdict} criterion {criterion:>2} ({}): {} checks, {} failed, q = {qs:?}",
            criterion_title(criterion),
            rows.len(),
            failed.len()
        );
        for r in failed {
            println!("    {} q={}: formula {} brute force {}", r.check, r.q, r.formula, r.brute_force);
        }
    }
    for s in &report.skipped {
        println!("     skipped {s}");
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
