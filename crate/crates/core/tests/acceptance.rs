//! Runs the twelve acceptance criteria and prints one line per criterion.
//!
//! Criteria run on separate threads; output is printed in criterion order.
//! Set `GENT_ACCEPTANCE_SAMPLE=<k>` to check only `k` graphs in the
//! splitting criterion.

use std::process::ExitCode;
use std::time::Instant;

use gent_core::verify::{run_criterion, Check, VerifyOptions};

const TITLES: [&str; 12] = [
    "complete-graph identity",
    "vertex-transitive values",
    "line graph of fig52",
    "bipartite symmetry",
    "chromatic entropy values",
    "sandwich chain",
    "splitting vs perfection",
    "grundy maximum",
    "kneser chi_H = chi",
    "conormal power rates",
    "fw/am agreement",
    "counting bounds",
];

fn main() -> ExitCode {
    let opts = VerifyOptions {
        sample: std::env::var("GENT_ACCEPTANCE_SAMPLE").ok().and_then(|s| s.parse().ok()),
        ..VerifyOptions::default()
    };
    let results: Vec<(Vec<Check>, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = (1..=12u8)
            .map(|k| {
                let opts = &opts;
                s.spawn(move || {
                    let start = Instant::now();
                    let checks = run_criterion(k, opts);
                    (checks, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });

    let mut failed = 0;
    for (i, (checks, secs)) in results.iter().enumerate() {
        let ok = checks.iter().all(|c| c.passed);
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<26} {} ({} checks, {secs:.1}s)",
            i + 1,
            TITLES[i],
            if ok { "PASS" } else { "FAIL" },
            checks.len()
        );
        for c in checks.iter().filter(|c| !c.passed) {
            println!("    {}", serde_json::to_string(c).expect("serializable"));
        }
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
