//! One PASS/FAIL line per acceptance criterion, followed by the evidence.
//! Exits non-zero when any criterion fails.

use std::process::ExitCode;

fn main() -> ExitCode {
    let outcomes = charvar_verification::all();
    for o in &outcomes {
        let mark = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {mark} {} ({:.2?})",
            o.criterion, o.title, o.elapsed
        );
        for d in &o.details {
            println!("    {d}");
        }
    }
    let failed: Vec<u8> = outcomes
        .iter()
        .filter(|o| !o.pass)
        .map(|o| o.criterion)
        .collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", outcomes.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
