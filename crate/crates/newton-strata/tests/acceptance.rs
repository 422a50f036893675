//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its runtime (run with `--nocapture` to see them). Each criterion
//! is exact; any deviation fails the corresponding assertion.

use std::collections::HashSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use newton_strata::affine::{self, ExtAffElt};
use newton_strata::dimensions;
use newton_strata::el_chart;
use newton_strata::linalg::{int, Rat};
use newton_strata::newton::{self, SigmaClass};
use newton_strata::root_datum::{build_group, Cocharacter, GroupDatum, GroupKind};
use newton_strata::weyl;

// run the timed criteria one at a time so that the budgets are meaningful
static GATE: std::sync::Mutex<()> = std::sync::Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|e| e.into_inner())
}

fn pass(name: &str, started: Instant, budget_secs: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    println!("criterion {name}: PASS in {elapsed:.2}s (budget {budget_secs}s)");
    assert!(
        elapsed < budget_secs,
        "criterion {name} exceeded its time budget: {elapsed:.2}s"
    );
}

/// All dominant minuscule cocharacters with coordinates in {0, 1}.
fn minuscule_mus(g: &GroupDatum) -> Vec<Cocharacter> {
    let ambient = g.ambient_rank();
    let mut out = Vec::new();
    for mask in 0u64..(1 << ambient) {
        let coords: Vec<BigInt> = (0..ambient)
            .map(|i| int(((mask >> i) & 1) as i64))
            .collect();
        if !g.in_lattice(&coords) {
            continue;
        }
        let c = Cocharacter {
            group: g.key(),
            coords,
        };
        if g.is_dominant_int(&c.coords) && g.is_minuscule(&c) {
            out.push(c);
        }
    }
    out
}

/// Omega elements with translation coordinates in [-1, 1].
fn omega_window(g: &GroupDatum) -> Vec<ExtAffElt> {
    let ambient = g.ambient_rank();
    let w_all = weyl::enumerate_weyl_group(g);
    let mut out = Vec::new();
    let mut coords = vec![-1i64; ambient];
    'outer: loop {
        let vec: Vec<BigInt> = coords.iter().map(|&v| int(v)).collect();
        if g.in_lattice(&vec) {
            let lambda = Cocharacter {
                group: g.key(),
                coords: vec,
            };
            for w in w_all.iter() {
                let x = ExtAffElt {
                    lambda: lambda.clone(),
                    w: w.clone(),
                };
                if affine::is_in_omega(g, &x) {
                    out.push(x);
                }
            }
        }
        let mut k = 0;
        loop {
            if k == ambient {
                break 'outer;
            }
            if coords[k] < 1 {
                coords[k] += 1;
                break;
            }
            coords[k] = -1;
            k += 1;
        }
    }
    out
}

fn small_groups() -> Vec<GroupDatum> {
    vec![
        build_group(GroupKind::ResGl, 2, 1).unwrap(),
        build_group(GroupKind::ResGl, 3, 1).unwrap(),
        build_group(GroupKind::ResGl, 2, 2).unwrap(),
        build_group(GroupKind::ResGl, 3, 2).unwrap(),
        build_group(GroupKind::ResGsp, 4, 1).unwrap(),
    ]
}

fn random_element(g: &GroupDatum, rng: &mut ChaCha8Rng) -> ExtAffElt {
    let coeffs: Vec<BigInt> = (0..g.lattice_basis().len())
        .map(|_| int(rng.gen_range(-3..4)))
        .collect();
    let lambda = Cocharacter {
        group: g.key(),
        coords: g.from_basis_coords(&coeffs),
    };
    let word: Vec<usize> = (0..rng.gen_range(0..8))
        .map(|_| rng.gen_range(0..g.simple_count().max(1)))
        .filter(|_| g.simple_count() > 0)
        .collect();
    ExtAffElt {
        lambda,
        w: weyl::from_word(g, &word),
    }
}

#[test]
fn criterion_1_siegel_genus_two() {
    let _guard = serial();
    let t = Instant::now();
    let g = build_group(GroupKind::ResGsp, 4, 1).unwrap();
    let mu = g
        .cocharacter(vec![int(1), int(1), int(0), int(0)])
        .unwrap();
    let reports = dimensions::stratum_reports(&g, &mu).unwrap();
    assert_eq!(reports.len(), 3, "Siegel g=2 must have exactly 3 strata");
    let dims: Vec<i64> = reports
        .iter()
        .map(|r| r.dim_newton.to_integer().to_i64().unwrap())
        .collect();
    assert_eq!(dims, vec![3, 2, 1]);
    // joint route: dim = 2<rho, mu> - chain length must give the same values
    let two_rho: Vec<Rat> = g.rho().iter().map(|r| r + r).collect();
    let base = g.pair_raw_int(&two_rho, &mu.coords);
    for r in &reports {
        assert_eq!(
            r.dim_newton,
            &base - Rat::from_integer(r.chain_to_mu.clone())
        );
    }
    let rz: Vec<i64> = reports
        .iter()
        .map(|r| r.dim_rz.to_integer().to_i64().unwrap())
        .collect();
    assert_eq!(rz, vec![0, 0, 1]);
    pass("1 (Siegel g=2 cross-check)", t, 1.0);
}

#[test]
fn criterion_2_superbasic_el_theorem() {
    let _guard = serial();
    let t = Instant::now();
    let mut checked = 0usize;
    for d in 1..=3usize {
        for h in 1..=6usize {
            let g = build_group(GroupKind::ResGl, h, d).unwrap();
            for params in el_chart::all_minuscule_params(d, h) {
                let mu = el_chart::minuscule_hodge(&params);
                let charts = el_chart::enumerate(&params, &mu).unwrap();
                let max_v = charts
                    .iter()
                    .map(|c| el_chart::v_count(&params, c).unwrap())
                    .max()
                    .unwrap_or(0);
                let formula = el_chart::floor_formula_in(&g, &params, &mu).unwrap();
                assert_eq!(
                    BigInt::from(max_v as i64),
                    formula,
                    "EL theorem check failed for d={d}, h={h}, m_seq={:?}",
                    params.m_seq
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "sweep too small: {checked}");
    pass(
        &format!("2 (superbasic EL theorem, {checked} parameter sets)"),
        t,
        60.0,
    );
}

#[test]
fn criterion_3_length_oracle() {
    let _guard = serial();
    let t = Instant::now();
    for g in small_groups() {
        let ball = affine::wa_ball(&g, 8);
        let omega = omega_window(&g);
        assert!(!omega.is_empty());
        // closed form vs BFS distance on W_a, extended by l(y tau) = l(y)
        for (y, &dist) in &ball {
            for tau in &omega {
                let x = affine::multiply(&g, y, tau).unwrap();
                assert_eq!(
                    affine::length(&g, &x),
                    BigInt::from(dist as i64),
                    "length mismatch in {} at distance {dist}",
                    g.key()
                );
            }
        }
        // independent direction: sampled full BFS oracle
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sample: Vec<&ExtAffElt> = ball.keys().collect();
        for _ in 0..30 {
            let y = sample[rng.gen_range(0..sample.len())];
            let tau = &omega[rng.gen_range(0..omega.len())];
            let x = affine::multiply(&g, y, tau).unwrap();
            let closed = affine::length(&g, &x).to_usize().unwrap();
            if closed <= 8 {
                assert_eq!(affine::bfs_length(&g, &x, 8), Some(closed));
            }
        }
        // l(tau_mu) = 0 for every minuscule dominant mu
        for mu in minuscule_mus(&g) {
            let (tau, _) = affine::tau_mu(&g, &mu).unwrap();
            assert!(
                affine::length(&g, &tau).is_zero(),
                "l(tau_mu) != 0 for mu = {:?} in {}",
                mu.coords,
                g.key()
            );
        }
    }
    pass("3 (length oracle, RES_GL(n<=3,d<=2) and GSp4)", t, 120.0);
}

fn defect_sweep_groups() -> Vec<GroupDatum> {
    let mut out = Vec::new();
    for d in 1..=2usize {
        for n in 1..=5usize {
            out.push(build_group(GroupKind::ResGl, n, d).unwrap());
        }
    }
    out
}

#[test]
fn criterion_4_defect_double_computation() {
    let _guard = serial();
    let t = Instant::now();
    let mut classes_checked = 0usize;
    for g in defect_sweep_groups() {
        for mu in minuscule_mus(&g) {
            let classes = newton::enumerate_bgmu(&g, &mu).unwrap();
            for c in &classes {
                let formula = newton::defect(&g, c);
                let oracle = newton::defect_oracle_resgl(&g, c).unwrap();
                assert_eq!(
                    formula,
                    oracle,
                    "defect mismatch in {} for nu = {:?}",
                    g.key(),
                    c.nu.coords
                );
                // rank identity: defect = #orbits with non-integral pairing
                assert_eq!(
                    formula,
                    BigInt::from(newton::defect_rank_count(&g, c) as i64)
                );
                classes_checked += 1;
            }
        }
    }
    assert!(classes_checked > 100);
    pass(
        &format!("4 (defect vs J_b-rank oracle, {classes_checked} classes)"),
        t,
        30.0,
    );
}

#[test]
fn criterion_5_chain_length_oracle() {
    let _guard = serial();
    let t = Instant::now();
    let mut pairs = 0usize;
    let mut groups = defect_sweep_groups();
    groups.push(build_group(GroupKind::ResGsp, 4, 1).unwrap());
    for g in groups {
        for mu in minuscule_mus(&g) {
            let classes = newton::enumerate_bgmu(&g, &mu).unwrap();
            for i in 0..classes.len() {
                for j in 0..classes.len() {
                    if !newton::leq(&g, &classes[i], &classes[j]) {
                        continue;
                    }
                    let formula = newton::chain_length(&g, &classes[i], &classes[j]).unwrap();
                    let brute = newton::longest_chain(&g, &classes, i, j);
                    assert_eq!(
                        formula,
                        BigInt::from(brute as i64),
                        "chain length mismatch in {} between {:?} and {:?}",
                        g.key(),
                        classes[i].nu.coords,
                        classes[j].nu.coords
                    );
                    pairs += 1;
                }
            }
        }
    }
    assert!(pairs > 100);
    pass(&format!("5 (chain-length oracle, {pairs} pairs)"), t, 60.0);
}

#[test]
fn criterion_6_truncation_algorithm() {
    let _guard = serial();
    let t = Instant::now();
    for g in small_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..500 {
            let b = random_element(&g, &mut rng);
            // termination within |S|+2 rounds is asserted inside
            let r = affine::eo_truncation(&g, &b).unwrap();
            assert!(r.iterations <= g.simple_count() + 2);
            // w is minimal in its W_{J_1}-coset
            let j1 = affine::truncation_min_coset_set(&g, &r.mu).unwrap();
            assert!(
                affine::is_min_in_left_coset(&g, &r.w, &j1),
                "w not minimal in its coset for b = {:?}",
                b
            );
            // l(b) >= l(w tau_mu)
            let (tau, _) = affine::tau_mu(&g, &r.mu).unwrap();
            let w_tau = affine::multiply(
                &g,
                &ExtAffElt {
                    lambda: g.zero_cocharacter(),
                    w: r.w.clone(),
                },
                &tau,
            )
            .unwrap();
            assert!(affine::length(&g, &b) >= affine::length(&g, &w_tau));
            // fixed point on its own output
            let again = affine::eo_truncation(&g, &w_tau).unwrap();
            assert_eq!(again.w.perm, r.w.perm);
            assert_eq!(again.mu, r.mu);
            // the certificate chain is exact
            let mut x = b.clone();
            for c in &r.certificate {
                x = affine::sigma_conjugate(&g, &x, c);
            }
            let expected = affine::multiply(
                &g,
                &ExtAffElt {
                    lambda: g.zero_cocharacter(),
                    w: weyl::multiply(&g, &r.w, &r.finite_remainder).unwrap(),
                },
                &tau,
            )
            .unwrap();
            assert_eq!(x, expected, "certificate chain broken");
        }
    }
    pass("6 (EO truncation, 500 random elements per group)", t, 120.0);
}

#[test]
fn criterion_7_straight_and_fundamental() {
    let _guard = serial();
    let t = Instant::now();
    let mut straights = 0usize;
    let mut fundamentals = 0usize;
    for g in small_groups() {
        let ball = affine::wa_ball(&g, 4);
        let omega = omega_window(&g);
        let two_rho: Vec<Rat> = g.rho().iter().map(|r| r + r).collect();
        let search = affine::FundamentalSearch::new(&g);
        let mut seen: HashSet<ExtAffElt> = HashSet::new();
        for y in ball.keys() {
            for tau in &omega {
                let x = affine::multiply(&g, y, tau).unwrap();
                if !seen.insert(x.clone()) {
                    continue;
                }
                let nu = affine::newton_point(&g, &x);
                let bound = g.pair_raw(&two_rho, &nu.coords);
                let len = Rat::from_integer(affine::length(&g, &x));
                // straightness inequality for every element
                assert!(len >= bound, "l(x) < <2rho, nu> for {:?}", x);
                let straight = affine::is_sigma_straight(&g, &x);
                if search.search(&x).is_some() {
                    fundamentals += 1;
                    assert!(straight, "fundamental element not sigma-straight: {:?}", x);
                }
                if straight {
                    straights += 1;
                    // product-length identity up to n = 4
                    let mut prod = x.clone();
                    let mut twist = x.clone();
                    for n in 1..=4usize {
                        twist = affine::sigma(&g, &twist);
                        prod = affine::multiply(&g, &prod, &twist).unwrap();
                        let expected = affine::length(&g, &x) * BigInt::from((n + 1) as i64);
                        assert_eq!(affine::length(&g, &prod), expected);
                    }
                }
            }
        }
    }
    assert!(straights > 50 && fundamentals > 10);
    pass(
        &format!("7 (sigma-straight/fundamental suite, {straights} straight, {fundamentals} fundamental)"),
        t,
        120.0,
    );
}

#[test]
fn criterion_8_levi_reduction() {
    let _guard = serial();
    let t = Instant::now();
    let mut checked = 0usize;
    for d in 1..=2usize {
        for h in 1..=4usize {
            let g = build_group(GroupKind::ResGl, h, d).unwrap();
            for mu in minuscule_mus(&g) {
                let classes = newton::enumerate_bgmu(&g, &mu).unwrap();
                for c in &classes {
                    match dimensions::reduction_check(&g, &mu, c) {
                        Ok((lhs, rhs)) => {
                            assert_eq!(
                                lhs,
                                rhs,
                                "reduction mismatch in {} for nu = {:?}",
                                g.key(),
                                c.nu.coords
                            );
                            checked += 1;
                        }
                        Err(_) => {} // no qualifying proper superbasic Levi
                    }
                }
            }
        }
    }
    assert!(checked > 30, "too few reduction checks ran: {checked}");
    pass(&format!("8 (Levi reduction, {checked} classes)"), t, 60.0);
}

#[test]
fn criterion_9_enumeration_stability() {
    let _guard = serial();
    let t = Instant::now();
    let mut groups = defect_sweep_groups();
    groups.push(build_group(GroupKind::ResGsp, 4, 1).unwrap());
    let key = |c: &SigmaClass| (c.levi_j.clone(), c.kappa_m.clone(), c.nu.coords.clone());
    for g in groups {
        for mu in minuscule_mus(&g) {
            let base = newton::enumerate_bgmu_with_window(&g, &mu, 0).unwrap();
            let wide = newton::enumerate_bgmu_with_window(&g, &mu, 2).unwrap();
            let a: HashSet<_> = base.iter().map(key).collect();
            let b: HashSet<_> = wide.iter().map(key).collect();
            assert_eq!(a, b, "window instability in {}", g.key());
        }
    }
    pass("9 (B(G,mu) window stability)", t, 120.0);
}

#[test]
fn monotonicity_and_top_stratum() {
    // supporting invariants: dimensions strictly increase along the order,
    // and the top stratum has dim 2<rho,mu> with RZ dimension 0
    let mut groups = defect_sweep_groups();
    groups.push(build_group(GroupKind::ResGsp, 4, 1).unwrap());
    for g in groups {
        for mu in minuscule_mus(&g) {
            let reports = dimensions::stratum_reports(&g, &mu).unwrap();
            let two_rho: Vec<Rat> = g.rho().iter().map(|r| r + r).collect();
            assert_eq!(reports[0].dim_newton, g.pair_raw_int(&two_rho, &mu.coords));
            assert!(reports[0].dim_rz.is_zero());
            for a in &reports {
                for b in &reports {
                    if a.class != b.class && newton::leq(&g, &a.class, &b.class) {
                        assert!(a.dim_newton < b.dim_newton);
                    }
                }
            }
        }
    }
}

#[test]
fn el_chart_newton_cross_check() {
    // the standard superbasic element has constant slope m/(dh) and its
    // class is superbasic
    for d in 1..=2usize {
        for h in 1..=4usize {
            let g = build_group(GroupKind::ResGl, h, d).unwrap();
            for params in el_chart::all_minuscule_params(d, h) {
                let x = el_chart::superbasic_witness(&g, &params);
                let nu = affine::newton_point(&g, &x);
                let slope = Rat::new(BigInt::from(params.m()), BigInt::from((d * h) as i64));
                assert!(nu.coords.iter().all(|c| c == &slope));
                let class = newton::classify(&g, &x);
                assert!(newton::is_superbasic(&g, &class));
                // the Hodge points of its charts match the translation part
                let mu_lower = el_chart::minuscule_hodge(&params);
                for chart in el_chart::enumerate(&params, &mu_lower).unwrap() {
                    let up = el_chart::hodge_point_upper(&g, &params, &chart).unwrap();
                    let (dom, _) = g.dominantize(&x.lambda);
                    assert_eq!(up.coords, dom.coords);
                }
            }
        }
    }
}
