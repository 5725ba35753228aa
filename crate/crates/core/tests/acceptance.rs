//! One line per acceptance criterion, with exact verdicts. Runs without the
//! libtest harness so the lines always show up in `cargo test` output.

use std::process::ExitCode;

use hopfvoa::suite::{self, SuiteConfig};

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    println!("acceptance: window {}, budget {}", cfg.window, cfg.budget);
    let mut failed = Vec::new();
    for id in 1..=11 {
        match suite::run(id, &cfg) {
            Ok(c) => {
                println!("{}", c.line());
                if !c.passed() {
                    println!("{}", c.report.render());
                    failed.push(id);
                }
            }
            Err(e) => {
                println!("[FAIL] {id:>2} could not run: {e}");
                failed.push(id);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: 11/11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: criteria failed: {failed:?}");
        ExitCode::FAILURE
    }
}
