//! Run every cross-identity check over a family of (group, mu) pairs and
//! report a summary line per pair.
//!
//! Run with `cargo run --example verify_suite`.

use newton_strata::report::verify_report;
use newton_strata::root_datum::parse_group_spec;

fn main() {
    let cases = [
        ("gl(n=2,d=1)", "1,0"),
        ("gl(n=3,d=1)", "1,1,0"),
        ("gl(n=4,d=1)", "1,0,0,0"),
        ("gl(n=2,d=2)", "1,0;1,0"),
        ("gl(n=3,d=2)", "1,0,0;0,0,0"),
        ("gsp(n=4,d=1)", "1,1,0,0"),
        ("gsp(n=2,d=2)", "1,0;1,0"),
        ("gu(n=2,d=2)", "1,0;1,0"),
        ("gu(n=3,d=2)", "1,1,0;1,0,0"),
    ];
    let mut all_ok = true;
    for (spec, mu) in cases {
        let g = parse_group_spec(spec).unwrap();
        let mu = g.parse_cocharacter(mu).unwrap();
        let report = verify_report(&g, &mu).unwrap();
        let failed: Vec<&(String, usize, bool)> =
            report.checks.iter().filter(|(_, _, ok)| !ok).collect();
        println!(
            "{:<14} mu = {:<14} {} classes, {} checks: {}",
            report.group,
            report.mu,
            report.class_count,
            report.checks.len(),
            if failed.is_empty() { "all identities hold" } else { "FAILURES" }
        );
        for (name, idx, _) in failed {
            println!("    FAIL {name} on class {idx}");
            all_ok = false;
        }
    }
    assert!(all_ok);
}
