//! Running a named experiment through the library and reading the
//! report back from CSV.
//!
//! Run with `cargo run --release --example experiment_reports`.

use tsnorm::experiments::{self, ExperimentOpts};
use tsnorm::report::ExperimentReport;

fn main() {
    let mut opts = ExperimentOpts::default();
    opts.max_n = Some(8); // shrink the sweep so this finishes quickly

    let report = experiments::run("thm43", &opts).unwrap();
    let mut table = Vec::new();
    report.write_table(&mut table).unwrap();
    print!("{}", String::from_utf8(table).unwrap());
    println!(
        "all {} cells pass: {}",
        report.cells.len(),
        report.all_pass()
    );

    // CSV round-trips losslessly, including exact rational values.
    let mut csv = Vec::new();
    report.write_csv(&mut csv).unwrap();
    let back = ExperimentReport::read_csv(&csv[..]).unwrap();
    assert_eq!(back, vec![report]);
    println!("csv round-trip ok ({} bytes)", csv.len());
}
