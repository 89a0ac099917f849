//! Run the built-in consistency groups and print the full report. The same
//! checks back the `pmathieu selfcheck` subcommand; each group exercises an
//! exact identity or a pair of independent routes to the same number.
//!
//!     cargo run --example selfcheck_report

use pmathieu::selfcheck::{run_selfcheck, SelfcheckOptions};

fn main() {
    let reports = run_selfcheck(&SelfcheckOptions::default());
    for g in &reports {
        println!(
            "[{}] {:<28} worst {:>10.2e} of tol {:>8.0e}  {}",
            if g.pass { "PASS" } else { "FAIL" },
            g.name,
            g.worst_rel,
            g.tol,
            g.detail,
        );
    }
    let passed = reports.iter().filter(|g| g.pass).count();
    println!("{passed}/{} groups passed", reports.len());
    std::process::exit(if passed == reports.len() { 0 } else { 1 });
}
