//! Output surfaces: exact-string serialization of the computed reports
//! (JSON), Hasse diagrams (DOT), and aligned text tables.
//!
//! All numbers are serialized as exact strings `p/q`; nothing is rounded.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dimensions::{self, StratumReport};
use crate::linalg::{AbelianElt, Rat};
use crate::newton;
use crate::root_datum::{Cocharacter, GroupDatum};
use crate::{Error, Result};

/// Exact string form of a rational: `p` or `p/q`.
pub fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rat::new(n, d))
}

fn kappa_strings(k: &AbelianElt) -> Vec<String> {
    k.torsion
        .iter()
        .map(|t| t.to_string())
        .chain(k.free.iter().map(|f| f.to_string()))
        .collect()
}

/// One class row of the `bgmu` report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub nu: String,
    pub kappa: Vec<String>,
    pub defect: String,
    pub dim_newton: String,
    pub dim_rz: String,
    pub dim_central_leaf: String,
    pub chain_to_mu: String,
    pub basic: bool,
    pub superbasic: bool,
}

/// The full `bgmu` report: classes plus the Hasse diagram of the Mazur
/// order (edges point from smaller to larger class).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BgmuReport {
    pub group: String,
    pub mu: String,
    pub classes: Vec<ClassReport>,
    pub edges: Vec<(usize, usize)>,
}

pub fn bgmu_report(g: &GroupDatum, mu: &Cocharacter) -> Result<BgmuReport> {
    let reports = dimensions::stratum_reports(g, mu)?;
    let classes: Vec<&crate::newton::SigmaClass> = reports.iter().map(|r| &r.class).collect();
    let owned: Vec<crate::newton::SigmaClass> = classes.iter().map(|c| (*c).clone()).collect();
    let edges = newton::hasse_edges(g, &owned);
    let rows = reports
        .iter()
        .map(|r: &StratumReport| ClassReport {
            nu: g.format_coords_rat(&r.class.nu.coords),
            kappa: kappa_strings(&r.class.kappa),
            defect: newton::defect(g, &r.class).to_string(),
            dim_newton: rat_string(&r.dim_newton),
            dim_rz: rat_string(&r.dim_rz),
            dim_central_leaf: rat_string(&r.dim_central_leaf),
            chain_to_mu: r.chain_to_mu.to_string(),
            basic: newton::is_basic(g, &r.class),
            superbasic: newton::is_superbasic(g, &r.class),
        })
        .collect();
    Ok(BgmuReport {
        group: g.key().to_string(),
        mu: g.format_coords_int(&mu.coords),
        classes: rows,
        edges,
    })
}

pub fn bgmu_table(report: &BgmuReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "B(G, mu) for {} with mu = {}\n",
        report.group, report.mu
    ));
    let header = [
        "#", "nu", "kappa", "defect", "dim_N", "dim_RZ", "leaf", "chain", "type",
    ];
    let mut rows: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for (i, c) in report.classes.iter().enumerate() {
        let kind = if c.superbasic {
            "superbasic"
        } else if c.basic {
            "basic"
        } else {
            ""
        };
        rows.push(vec![
            i.to_string(),
            c.nu.clone(),
            c.kappa.join(","),
            c.defect.clone(),
            c.dim_newton.clone(),
            c.dim_rz.clone(),
            c.dim_central_leaf.clone(),
            c.chain_to_mu.clone(),
            kind.to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap())
        .collect();
    for r in &rows {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:w$}"))
            .collect();
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out.push_str(&format!(
        "edges (Hasse, smaller -> larger): {:?}\n",
        report.edges
    ));
    out
}

pub fn bgmu_dot(report: &BgmuReport) -> String {
    let mut out = String::from("digraph bgmu {\n  rankdir=BT;\n");
    for (i, c) in report.classes.iter().enumerate() {
        out.push_str(&format!(
            "  {} [label=\"nu={}, dim={}\"];\n",
            i, c.nu, c.dim_newton
        ));
    }
    for (a, b) in &report.edges {
        out.push_str(&format!("  {} -> {};\n", a, b));
    }
    out.push_str("}\n");
    out
}

/// Report of the Ekedahl-Oort truncation of one element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EoReport {
    pub group: String,
    pub element: String,
    pub w_word: String,
    pub w_length: String,
    pub mu: String,
    pub iterations: usize,
    pub sigma_straight: bool,
    pub fundamental: bool,
}

/// Report of the EL-chart scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElChartReport {
    pub d: usize,
    pub h: usize,
    pub m_seq: Vec<i64>,
    pub chart_count: usize,
    pub max_v_count: usize,
    pub floor_formula: String,
}

/// Per-identity outcome for `verify`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub group: String,
    pub mu: String,
    pub class_count: usize,
    pub checks: Vec<(String, usize, bool)>,
    pub all_passed: bool,
}

pub fn verify_report(g: &GroupDatum, mu: &Cocharacter) -> Result<VerifyReport> {
    let checks = dimensions::verify_identities(g, mu)?;
    let class_count = checks
        .iter()
        .map(|c| c.class_index + 1)
        .max()
        .unwrap_or(0);
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        group: g.key().to_string(),
        mu: g.format_coords_int(&mu.coords),
        class_count,
        checks: checks
            .into_iter()
            .map(|c| (c.name.to_string(), c.class_index, c.passed))
            .collect(),
        all_passed,
    })
}

/// Textual description of a group datum (for `describe`).
pub fn describe_text(g: &GroupDatum) -> String {
    let mut out = String::new();
    out.push_str(&format!("group {}\n", g.key()));
    out.push_str(&format!(
        "ambient rank {} | lattice rank {} | positive roots {}\n",
        g.ambient_rank(),
        g.lattice_basis().len(),
        g.positive_roots().len()
    ));
    out.push_str("simple roots (ambient representatives) and coroots:\n");
    for j in 0..g.simple_count() {
        let r = g.simple_root(j);
        out.push_str(&format!(
            "  {} : alpha = {:?}, alpha^vee = {:?}\n",
            g.simple_name(j),
            r.amb.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            r.coroot.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        ));
    }
    out.push_str(&format!("rho = {}\n", g.format_coords_rat(g.rho())));
    for (o, w) in g.simple_orbits().iter().zip(g.orbit_weights()) {
        let names: Vec<&str> = o.iter().map(|&j| g.simple_name(j)).collect();
        out.push_str(&format!(
            "orbit {{{}}} : omega = {}\n",
            names.join(","),
            g.format_coords_rat(w)
        ));
    }
    let describe_pres = |p: &crate::linalg::AbelianPresentation| -> String {
        let mut parts: Vec<String> = Vec::new();
        if p.free_rank > 0 {
            parts.push(format!("Z^{}", p.free_rank));
        }
        for t in &p.torsion_orders {
            parts.push(format!("Z/{}", t));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        parts.join(" + ")
    };
    out.push_str(&format!("pi_1(G) = {}\n", describe_pres(g.pi1_absolute())));
    out.push_str(&format!("pi_1(G)_Gamma = {}\n", describe_pres(g.pi1_gamma())));
    out
}
