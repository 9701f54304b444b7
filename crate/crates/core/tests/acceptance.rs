//! One line per acceptance criterion. Every comparison is exact integer
//! (or exact rational) equality; the only tolerances are the wall-clock
//! budgets, pinned below. `CHAMBERSCOPE_LONG=1` adds the m = 9 run.

use std::time::{Duration, Instant};

use chamberscope::golden::UNREALIZABLE_M9;
use chamberscope::realize::realize;
use chamberscope::verify::{verify, Report, Status, VerifyOptions};
use chamberscope::GeneticCode;

const CRITERIA: [&str; 9] = [
    "chamber counts m = 3..8 within 60 s (m <= 7) and 600 s (m = 8)",
    "m = 9 code and chamber counts; <9642> infeasible within 1 s",
    "a_min reference values, exact",
    "plus/minus correspondences row for row",
    "strata counts and the m = 7 image test",
    "toric criterion failures m = 7, 8",
    "hexagon (b, r_cup, s), pentagon r_cup, distinct invariants m <= 7",
    "property suites",
    "conjecture monitors report without failing",
];

const SPOT_BUDGET: Duration = Duration::from_secs(1);

fn verdict(report: &Report, criterion: u8) -> Option<Status> {
    let items: Vec<_> = report.items.iter().filter(|i| i.criterion == criterion).collect();
    if items.is_empty() {
        return None;
    }
    let has = |s: Status| items.iter().any(|i| i.status == s);
    Some(if has(Status::Fail) {
        Status::Fail
    } else if has(Status::Known) {
        Status::Known
    } else {
        Status::Pass
    })
}

// Runs without the libtest harness so the lines are never captured.
fn main() {
    let long = std::env::var_os("CHAMBERSCOPE_LONG").is_some();
    let m = if long { 9 } else { 8 };

    let code = GeneticCode::parse(UNREALIZABLE_M9, 9).unwrap();
    let start = Instant::now();
    let spot = realize(&code).unwrap();
    let spot_time = start.elapsed();
    let spot_ok = !spot.realizable && spot_time < SPOT_BUDGET;

    let report = verify(&VerifyOptions { m, long }).unwrap();
    println!("{report}");
    println!("standalone: {UNREALIZABLE_M9} realizable = {}, {spot_time:?} (budget {SPOT_BUDGET:?})", spot.realizable);
    println!();
    for (k, name) in CRITERIA.iter().enumerate() {
        let c = k as u8 + 1;
        let mut status = verdict(&report, c).unwrap_or(Status::Pass);
        let mut note = String::new();
        if c == 2 {
            if !spot_ok {
                status = Status::Fail;
            }
            if !long {
                note = " (counts not run; set CHAMBERSCOPE_LONG=1)".into();
            }
        }
        let shown = match status {
            Status::Known => "FAIL (known)".to_string(),
            Status::Fail => "FAIL".to_string(),
            _ => "PASS".to_string(),
        };
        println!("{shown:<12} criterion {c}: {name}{note}");
    }

    let unexpected = report.unexpected_failures();
    if !spot_ok || !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:#?}");
        std::process::exit(1);
    }
    println!("acceptance: no unexpected failures");
}
