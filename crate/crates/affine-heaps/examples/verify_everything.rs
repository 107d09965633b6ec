//! Run all ten verification suites at their default scale and print one
//! line per check — the same engine behind `affine-heaps verify`.
//!
//! Run with: `cargo run --release -p affine-heaps --example verify_everything`

use affine_heaps::suites::{run_all, Scale};

fn main() {
    let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let reports = run_all(Scale::default(), jobs);
    for r in &reports {
        print!("{}", r.render_text());
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    println!("overall: {} ({passed}/{} suites)", if passed == reports.len() { "PASS" } else { "FAIL" }, reports.len());
    if passed != reports.len() {
        std::process::exit(1);
    }
}
