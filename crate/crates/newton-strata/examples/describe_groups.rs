//! Build each of the three group families and print the realized root
//! datum: simple roots and coroots, rho, the Galois orbit weights, and the
//! fundamental group with its coinvariants.
//!
//! Run with `cargo run --example describe_groups`.

use newton_strata::report::describe_text;
use newton_strata::root_datum::parse_group_spec;

fn main() {
    for spec in ["gl(n=2,d=1)", "gl(n=3,d=2)", "gsp(n=4,d=1)", "gu(n=3,d=2)"] {
        let g = parse_group_spec(spec).unwrap();
        println!("{}", describe_text(&g));
    }

    // invalid combinations are rejected up front
    for bad in ["gsp(n=3,d=1)", "gu(n=2,d=1)"] {
        match parse_group_spec(bad) {
            Err(e) => println!("{bad}: rejected ({e})"),
            Ok(_) => unreachable!(),
        }
    }
}
