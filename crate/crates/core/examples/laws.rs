//! The law matrix, and the negative control with a broken lax structure.

use mlab::laws::run_laws;

fn main() {
    let size = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let report = run_laws(size, false);
    for row in &report.rows {
        println!(
            "{:<5} {:<12} {:<55} {}",
            if row.passed { "ok" } else { "FAIL" },
            row.suite,
            row.law,
            row.instances
        );
    }
    let broken = run_laws(1, true);
    for row in broken.rows.iter().filter(|r| !r.passed) {
        println!(
            "corrupted: {} fails at {}",
            row.law,
            row.witness.as_deref().unwrap_or("")
        );
    }
}
