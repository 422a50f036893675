//! Evaluate the closed dimension formulas on every class of B(G, mu) and
//! check their cross-identities: Newton stratum, Rapoport-Zink space
//! (closed form and floor form), central leaf, and the chain-length
//! reformulation.
//!
//! Run with `cargo run --example rz_dimensions`.

use newton_strata::dimensions;
use newton_strata::newton;
use newton_strata::report::rat_string;
use newton_strata::root_datum::parse_group_spec;

fn main() {
    for (spec, mu) in [
        ("gsp(n=4,d=1)", "1,1,0,0"),
        ("gl(n=4,d=1)", "1,1,0,0"),
        ("gl(n=3,d=2)", "1,0,0;1,0,0"),
    ] {
        let g = parse_group_spec(spec).unwrap();
        let mu = g.parse_cocharacter(mu).unwrap();
        println!(
            "strata of {} with mu = {}:",
            g.key(),
            g.format_coords_int(&mu.coords)
        );
        for r in dimensions::stratum_reports(&g, &mu).unwrap() {
            println!(
                "  nu = {:<18} dim_N = {}  dim_RZ = {} (floors {})  leaf = {}  chain = {}  defect = {}",
                g.format_coords_rat(&r.class.nu.coords),
                rat_string(&r.dim_newton),
                rat_string(&r.dim_rz),
                r.dim_rz_floor,
                rat_string(&r.dim_central_leaf),
                r.chain_to_mu,
                newton::defect(&g, &r.class),
            );
        }
        // the Levi reduction recovers dim_RZ from superbasic data
        let classes = newton::enumerate_bgmu(&g, &mu).unwrap();
        for c in &classes {
            if let Ok((lhs, rhs)) = dimensions::reduction_check(&g, &mu, c) {
                assert_eq!(lhs, rhs);
                println!(
                    "  reduction check for nu = {}: {} = {}",
                    g.format_coords_rat(&c.nu.coords),
                    rat_string(&lhs),
                    rat_string(&rhs)
                );
            }
        }
        println!();
    }
}
