//! Run the reproduction report, optionally filtered to named row groups.
//!
//! Usage: cargo run --release --example verify_suite -- [group ...]

use copnum::analysis::{theorem_suite, SuiteConfig, SUITE_GROUPS};

fn main() {
    let rows: Vec<String> = std::env::args().skip(1).collect();
    let config = SuiteConfig {
        rows: if rows.is_empty() { None } else { Some(rows) },
        ..SuiteConfig::default()
    };
    match theorem_suite(&config) {
        Ok(report) => {
            print!("{}", report.to_table());
            std::process::exit(if report.passed() { 0 } else { 4 });
        }
        Err(e) => {
            eprintln!("error: {e} (known groups: {})", SUITE_GROUPS.join(", "));
            std::process::exit(2);
        }
    }
}
