//! Batch front-end for the library: parse group specs, run the
//! computations, and emit tables, JSON or DOT.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure.

use clap::{Parser, Subcommand, ValueEnum};

use newton_strata::affine;
use newton_strata::dimensions;
use newton_strata::el_chart::{self, ELChartParams};
use newton_strata::newton;
use newton_strata::report;
use newton_strata::root_datum::parse_group_spec;
use newton_strata::weyl;

#[derive(Parser)]
#[command(name = "newton-strata", version, about = "Exact invariants of Newton strata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Print root datum, rho, orbit weights and fundamental group data
    Describe { group: String },
    /// List B(G, mu) with invariants, dimensions and the Hasse diagram
    Bgmu {
        group: String,
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Ekedahl-Oort truncation of an extended affine Weyl element
    Eo {
        group: String,
        /// element literal `<lambda-blocks>|<word>`, e.g. `1,0|id`
        #[arg(long)]
        element: String,
    },
    /// Rapoport-Zink dimensions for the classes of B(G, mu)
    Rzdim {
        group: String,
        #[arg(long)]
        mu: String,
        /// restrict to the class with this index in the bgmu listing
        #[arg(long)]
        class: Option<usize>,
    },
    /// Enumerate normalized small EL-charts and the max #V dimension
    Elchart {
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long)]
        h: usize,
        /// total multiplicity (d = 1), or use --m-seq for d > 1
        #[arg(long)]
        m: Option<i64>,
        /// comma-separated per-slot multiplicities
        #[arg(long)]
        m_seq: Option<String>,
    },
    /// Run every cross-identity on B(G, mu); nonzero exit on failure
    Verify {
        group: String,
        #[arg(long)]
        mu: String,
    },
}

fn main() {
    // clap exits with status 2 on usage errors by default; the contract
    // here is 0 = success, 1 = usage error, 2 = verification failure
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.exit_code() == 0 { 0 } else { 1 });
        }
    };
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    });
}

fn run(cli: Cli) -> newton_strata::Result<i32> {
    match cli.command {
        Command::Describe { group } => {
            let g = parse_group_spec(&group)?;
            print!("{}", report::describe_text(&g));
            Ok(0)
        }
        Command::Bgmu { group, mu, format } => {
            let g = parse_group_spec(&group)?;
            let mu = g.parse_cocharacter(&mu)?;
            if !g.is_dominant_int(&mu.coords) {
                return Err(newton_strata::Error::Precondition(
                    "mu must be dominant".into(),
                ));
            }
            let rep = report::bgmu_report(&g, &mu)?;
            match format {
                Format::Table => print!("{}", report::bgmu_table(&rep)),
                Format::Json => println!("{}", serde_json::to_string_pretty(&rep).unwrap()),
                Format::Dot => print!("{}", report::bgmu_dot(&rep)),
            }
            Ok(0)
        }
        Command::Eo { group, element } => {
            let g = parse_group_spec(&group)?;
            let x = affine::parse_element(&g, &element)?;
            let r = affine::eo_truncation(&g, &x)?;
            let word = weyl::reduced_word(&g, &r.w);
            let word_str = if word.is_empty() {
                "id".to_string()
            } else {
                word.iter()
                    .map(|&j| g.simple_name(j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let rep = report::EoReport {
                group: g.key().to_string(),
                element,
                w_word: word_str,
                w_length: weyl::length_finite(&g, &r.w).to_string(),
                mu: g.format_coords_int(&r.mu.coords),
                iterations: r.iterations,
                sigma_straight: affine::is_sigma_straight(&g, &x),
                fundamental: affine::is_fundamental(&g, &x).is_some(),
            };
            println!("{}", serde_json::to_string_pretty(&rep).unwrap());
            Ok(0)
        }
        Command::Rzdim { group, mu, class } => {
            let g = parse_group_spec(&group)?;
            let mu = g.parse_cocharacter(&mu)?;
            let reports = dimensions::stratum_reports(&g, &mu)?;
            let selected: Vec<_> = match class {
                Some(i) => {
                    if i >= reports.len() {
                        return Err(newton_strata::Error::Precondition(format!(
                            "class index {i} out of range (have {})",
                            reports.len()
                        )));
                    }
                    vec![&reports[i]]
                }
                None => reports.iter().collect(),
            };
            for (i, r) in selected.iter().enumerate() {
                let idx = class.unwrap_or(i);
                println!(
                    "class {idx}: nu = {} | dim_RZ = {} (floor form {}) | defect = {}",
                    g.format_coords_rat(&r.class.nu.coords),
                    report::rat_string(&r.dim_rz),
                    r.dim_rz_floor,
                    newton::defect(&g, &r.class),
                );
            }
            Ok(0)
        }
        Command::Elchart { d, h, m, m_seq } => {
            let seq: Vec<i64> = match (m, m_seq) {
                (_, Some(s)) => s
                    .split(',')
                    .map(|t| {
                        t.trim().parse().map_err(|_| {
                            newton_strata::Error::Parse(format!("bad multiplicity {t:?}"))
                        })
                    })
                    .collect::<newton_strata::Result<_>>()?,
                (Some(total), None) => {
                    if d != 1 {
                        return Err(newton_strata::Error::Precondition(
                            "--m needs d = 1; use --m-seq for d > 1".into(),
                        ));
                    }
                    vec![total]
                }
                (None, None) => {
                    return Err(newton_strata::Error::Precondition(
                        "need --m or --m-seq".into(),
                    ))
                }
            };
            let params = ELChartParams::new(d, h, seq.clone())?;
            let mu = el_chart::minuscule_hodge(&params);
            let charts = el_chart::enumerate(&params, &mu)?;
            let dim = el_chart::superbasic_rz_dim(&params, &mu)?;
            let rep = report::ElChartReport {
                d,
                h,
                m_seq: seq,
                chart_count: charts.len(),
                max_v_count: dim,
                floor_formula: el_chart::floor_formula(&params, &mu)?.to_string(),
            };
            println!("{}", serde_json::to_string_pretty(&rep).unwrap());
            Ok(0)
        }
        Command::Verify { group, mu } => {
            let g = parse_group_spec(&group)?;
            let mu = g.parse_cocharacter(&mu)?;
            let rep = report::verify_report(&g, &mu)?;
            for (name, class_index, passed) in &rep.checks {
                println!(
                    "{} class {}: {}",
                    if *passed { "PASS" } else { "FAIL" },
                    class_index,
                    name
                );
            }
            if rep.all_passed {
                println!("all identities hold ({} classes)", rep.class_count);
                Ok(0)
            } else {
                println!("verification FAILED");
                Ok(2)
            }
        }
    }
}
