//! Bounds on the largest number of concepts of a cubic context.
//!
//! `cargo run --example bounds`

use polyadic::bounds::{bounds_report, lower_bound_4d_count, reports_to_csv, ReportOptions};
use polyadic::Result;

pub fn run() -> Result<String> {
    let opts = ReportOptions::default();
    let mut reports = Vec::new();
    for (n, s) in [(2, 3), (3, 2), (3, 3), (4, 2), (4, 3)] {
        reports.push(bounds_report(n, s, &opts)?);
    }
    let mut out: String = reports.iter().map(|r| r.to_text()).collect();
    out.push_str(&reports_to_csv(&reports)?);
    for s in [3, 6, 9] {
        out.push_str(&format!("4-dimensional construction, side {s}: {}\n", lower_bound_4d_count(s)?));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run()?);
    Ok(())
}
