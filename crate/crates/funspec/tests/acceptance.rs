//! One line per acceptance criterion, then the determinism and
//! fault-injection checks on the suite itself. Exits nonzero on any failure.

use std::process::ExitCode;

use funspec::verify::verify_suite;

const SEED: u64 = 7;

fn main() -> ExitCode {
    let checks = verify_suite(SEED, false);
    for c in &checks {
        println!("{}", c.line());
    }
    let mut ok = checks.len() == 9 && checks.iter().all(|c| c.passed());

    let repeat = verify_suite(SEED, false) == checks;
    println!("[{}] identical verdicts on a repeated run", if repeat { "PASS" } else { "FAIL" });
    ok &= repeat;

    let corrupted = verify_suite(SEED, true);
    let bad: Vec<usize> = corrupted.iter().filter(|c| !c.passed()).map(|c| c.criterion).collect();
    let caught = bad == [4] && corrupted[3].failures[0].operation == "verify_support_data";
    println!("[{}] corrupted tensor product is caught by criterion 4 only", if caught { "PASS" } else { "FAIL" });
    ok &= caught;

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
