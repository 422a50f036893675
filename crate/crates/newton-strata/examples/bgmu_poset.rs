//! Enumerate B(G, mu) and print the stratification table and the Hasse
//! diagram, for the Siegel genus-2 datum and a few Res GL cases.
//!
//! Run with `cargo run --example bgmu_poset`.

use newton_strata::report::{bgmu_dot, bgmu_report, bgmu_table};
use newton_strata::root_datum::parse_group_spec;

fn main() {
    for (spec, mu) in [
        ("gsp(n=4,d=1)", "1,1,0,0"),
        ("gl(n=2,d=1)", "1,0"),
        ("gl(n=5,d=1)", "1,1,0,0,0"),
        ("gl(n=2,d=2)", "1,0;0,0"),
    ] {
        let g = parse_group_spec(spec).unwrap();
        let mu = g.parse_cocharacter(mu).unwrap();
        let report = bgmu_report(&g, &mu).unwrap();
        println!("{}", bgmu_table(&report));
    }

    // the DOT emitter gives the transitive reduction with dimension labels
    let g = parse_group_spec("gsp(n=4,d=1)").unwrap();
    let mu = g.parse_cocharacter("1,1,0,0").unwrap();
    let report = bgmu_report(&g, &mu).unwrap();
    println!("{}", bgmu_dot(&report));
}
