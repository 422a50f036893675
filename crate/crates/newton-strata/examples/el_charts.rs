//! Enumerate normalized small EL-charts, inspect their V-sets, and verify
//! that max #V_A equals the floor-formula dimension.
//!
//! Run with `cargo run --example el_charts`.

use newton_strata::el_chart::{self, ELChartParams};

fn main() {
    // the worked h = 2 case: a single chart with empty V-set
    let p = ELChartParams::new(1, 2, vec![1]).unwrap();
    let mu = el_chart::minuscule_hodge(&p);
    let charts = el_chart::enumerate(&p, &mu).unwrap();
    println!("d=1, h=2, m=1: {} chart(s)", charts.len());
    for c in &charts {
        println!(
            "  b-sequence {:?}, eps {:?}, V = {:?}",
            c.values(&p),
            c.eps,
            el_chart::v_set(&p, c).unwrap()
        );
    }

    // h = 5, m = 2: the maximum is 1
    let p = ELChartParams::new(1, 5, vec![2]).unwrap();
    let mu = el_chart::minuscule_hodge(&p);
    let charts = el_chart::enumerate(&p, &mu).unwrap();
    let dim = el_chart::superbasic_rz_dim(&p, &mu).unwrap();
    println!(
        "d=1, h=5, m=2: {} charts, max #V = {} (floor formula {})",
        charts.len(),
        dim,
        el_chart::floor_formula(&p, &mu).unwrap()
    );
    for c in charts.iter().filter(|c| el_chart::v_count(&p, c).unwrap() == dim) {
        println!("  maximizer: b-sequence {:?}", c.values(&p));
    }

    // a two-slot case with its Hodge point in both conventions
    let p = ELChartParams::new(2, 3, vec![1, 1]).unwrap();
    let mu = el_chart::minuscule_hodge(&p);
    let charts = el_chart::enumerate(&p, &mu).unwrap();
    println!(
        "d=2, h=3, m_seq=(1,1): {} charts, max #V = {}",
        charts.len(),
        el_chart::superbasic_rz_dim(&p, &mu).unwrap()
    );
    let g = newton_strata::root_datum::parse_group_spec("gl(n=3,d=2)").unwrap();
    let chart = &charts[0];
    println!(
        "  first chart: Hodge point {:?} (lower), {} (upper convention)",
        el_chart::hodge_point(&p, chart).unwrap(),
        g.format_coords_int(&el_chart::hodge_point_upper(&g, &p, chart).unwrap().coords)
    );

    // the full sweep of the dimension identity at small size
    let mut checked = 0;
    for d in 1..=2 {
        for h in 1..=5 {
            for params in el_chart::all_minuscule_params(d, h) {
                let mu = el_chart::minuscule_hodge(&params);
                el_chart::superbasic_rz_dim(&params, &mu).unwrap();
                checked += 1;
            }
        }
    }
    println!("dimension identity verified on {checked} parameter sets");
}
