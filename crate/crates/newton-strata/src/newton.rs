//! sigma-conjugacy class invariants and the structure of `B(G, mu)`:
//! classification, enumeration, Mazur order, defect and chain lengths.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::affine::{self, ExtAffElt};
use crate::linalg::{
    frac_part, solve_rational, to_rat_vec, AbelianElt, AbelianPresentation, Rat,
};
use crate::root_datum::{Cocharacter, GroupDatum, GroupKind, RatCocharacter};
use crate::{Error, Result};

/// A sigma-conjugacy class, given by its Newton and Kottwitz points plus
/// the Levi data of a defining lift.
#[derive(Clone, Debug)]
pub struct SigmaClass {
    pub nu: RatCocharacter,
    /// Kottwitz point in `pi_1(G)_Gamma`.
    pub kappa: AbelianElt,
    /// Simple roots vanishing on `nu`; defines the centralizer Levi `M_nu`.
    pub levi_j: Vec<usize>,
    /// Class of the defining lift in `pi_1(M_J)_Gamma`.
    pub kappa_m: AbelianElt,
    /// An integral cocharacter with `kappa_G(lift) = kappa` whose
    /// `W_J x Gamma`-average is `nu`.
    pub lift: Cocharacter,
}

impl PartialEq for SigmaClass {
    fn eq(&self, other: &Self) -> bool {
        self.nu == other.nu && self.kappa == other.kappa
    }
}
impl Eq for SigmaClass {}

/// `pi_1(M_J)_Gamma` for a Gamma-stable subset `J` of the simple roots.
pub fn levi_presentation(g: &GroupDatum, j_set: &[usize]) -> AbelianPresentation {
    let rank = g.lattice_basis().len();
    let mut rels: Vec<Vec<BigInt>> = j_set
        .iter()
        .map(|&j| g.basis_coords(&g.positive_roots()[j].coroot))
        .collect();
    for b in g.lattice_basis() {
        let shifted = g.galois().act(b);
        let diff: Vec<BigInt> = shifted.iter().zip(b).map(|(a, x)| a - x).collect();
        rels.push(g.basis_coords(&diff));
    }
    crate::linalg::quotient_presentation(rank, &rels)
}

/// Is the subset of simple roots stable under the Galois action?
pub fn is_gamma_stable(g: &GroupDatum, j_set: &[usize]) -> bool {
    j_set.iter().all(|&j| {
        let (img, sign) = g.act_on_root(g.galois(), j);
        sign > 0 && j_set.contains(&img)
    })
}

/// Rational dominance order: `x <= y` iff `y - x` is a nonnegative rational
/// combination of the simple coroots. Tested functionally: the difference
/// must vanish on the coroot-span complement, and its fundamental-weight
/// pairings (= the combination coefficients) must be nonnegative.
pub fn leq_dominance_rat(g: &GroupDatum, lower: &[Rat], upper: &[Rat]) -> bool {
    let diff: Vec<Rat> = upper.iter().zip(lower).map(|(u, l)| u - l).collect();
    for z in g.coroot_complement() {
        if !g.pair_raw(z, &diff).is_zero() {
            return false;
        }
    }
    for omega in g.all_fund_weights() {
        if g.pair_raw(omega, &diff).is_negative() {
            return false;
        }
    }
    true
}

pub fn leq_dominance(g: &GroupDatum, lower: &Cocharacter, upper: &Cocharacter) -> bool {
    leq_dominance_rat(g, &to_rat_vec(&lower.coords), &to_rat_vec(&upper.coords))
}

/// Galois average of a cocharacter, as rational ambient coordinates.
pub fn gamma_average(g: &GroupDatum, mu: &Cocharacter) -> Vec<Rat> {
    let d = g.d();
    let mut acc = vec![Rat::zero(); g.ambient_rank()];
    let mut cur = to_rat_vec(&mu.coords);
    for _ in 0..d {
        for (a, c) in acc.iter_mut().zip(&cur) {
            *a += c;
        }
        cur = g.galois().act(&cur);
    }
    let denom = Rat::from_integer(BigInt::from(d as i64));
    acc.into_iter().map(|a| a / denom.clone()).collect()
}

/// The Mazur comparison `nu <= mu`: since Newton points are
/// Gamma-invariant, the dominance comparison is taken against the Galois
/// average of `mu` (for `d = 1` this is the plain dominance order).
pub fn leq_mazur(g: &GroupDatum, nu: &[Rat], mu: &Cocharacter) -> bool {
    leq_dominance_rat(g, nu, &gamma_average(g, mu))
}

fn torsion_combos(orders: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for t in orders {
        let mut next = Vec::new();
        let tmax = t.to_i64().expect("huge torsion order");
        for combo in &out {
            for v in 0..tmax {
                let mut c = combo.clone();
                c.push(BigInt::from(v));
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// Recover the `pi_1(M_J)_Gamma` class of a sigma-conjugacy class from its
/// `(nu, kappa)` invariants: the free part is the rational projection of
/// `nu`, the torsion part is pinned by matching `kappa_G`.
pub fn kappa_m_from_invariants(
    g: &GroupDatum,
    pres: &AbelianPresentation,
    nu: &[Rat],
    kappa: &AbelianElt,
) -> (AbelianElt, Cocharacter) {
    // basis coordinates of nu (rational; nu lies in the sublattice)
    let rank = g.ambient_rank();
    let mat: Vec<Vec<Rat>> = (0..rank)
        .map(|r| {
            g.lattice_basis()
                .iter()
                .map(|b| Rat::from_integer(b[r].clone()))
                .collect()
        })
        .collect();
    let nu_basis = solve_rational(&mat, nu)
        .expect("nu not in the sublattice")
        .particular;
    let free: Vec<BigInt> = pres
        .project_free_rational(&nu_basis)
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "free part of kappa_M is not integral");
            c.to_integer()
        })
        .collect();
    let mut found: Option<(AbelianElt, Cocharacter)> = None;
    for torsion in torsion_combos(&pres.torsion_orders) {
        let cand = AbelianElt {
            torsion,
            free: free.clone(),
        };
        let lift_basis = pres.section(&cand);
        let lift = Cocharacter {
            group: g.key(),
            coords: g.from_basis_coords(&lift_basis),
        };
        if &g.kappa(&lift) == kappa {
            assert!(
                found.is_none(),
                "kappa_M not unique for the given (nu, kappa)"
            );
            found = Some((cand, lift));
        }
    }
    found.expect("no kappa_M matches the Kottwitz point")
}

/// Classify an extended affine Weyl element into its sigma-conjugacy class.
pub fn classify(g: &GroupDatum, x: &ExtAffElt) -> SigmaClass {
    let nu = affine::newton_point(g, x);
    let kappa = affine::kottwitz_point(g, x);
    let levi_j: Vec<usize> = (0..g.simple_count())
        .filter(|&j| g.pair_simple_rat(j, &nu.coords).is_zero())
        .collect();
    let pres = levi_presentation(g, &levi_j);
    let (kappa_m, lift) = kappa_m_from_invariants(g, &pres, &nu.coords, &kappa);
    SigmaClass {
        nu,
        kappa,
        levi_j,
        kappa_m,
        lift,
    }
}

/// Basic: `nu` central, i.e. all simple roots vanish on it.
pub fn is_basic(g: &GroupDatum, c: &SigmaClass) -> bool {
    c.levi_j.len() == g.simple_count()
}

/// Superbasic: meets no proper Levi subgroup. Only happens when the adjoint
/// group is a product of restrictions of `PGL_h`: the `Res GL` families,
/// and the `n = 2` cases of `Res GSp`/`Res GU`.
pub fn is_superbasic(g: &GroupDatum, c: &SigmaClass) -> bool {
    if !is_basic(g, c) {
        return false;
    }
    let q = &c.nu.coords[0];
    debug_assert!(c.nu.coords.iter().all(|v| v == q), "basic nu must be constant");
    let (n, d) = (g.n(), g.d());
    let m_of = |factor: usize| -> Option<BigInt> {
        let scaled = q * Rat::from_integer(BigInt::from(factor as i64));
        scaled.is_integer().then(|| scaled.to_integer())
    };
    match g.kind() {
        GroupKind::ResGl => {
            let Some(m) = m_of(d * n) else { return false };
            m.gcd(&BigInt::from(n as i64)).is_one()
        }
        GroupKind::ResGsp => {
            // GSp_2 = GL_2; no superbasic classes above n = 2
            n == 2 && m_of(d * 2).is_some_and(|m| m.gcd(&BigInt::from(2)).is_one())
        }
        GroupKind::ResGu => {
            // adjoint group Res_{F'} PGL_2 with [F' : Q_p] = d/2
            n == 2 && m_of(d).is_some_and(|m| m.gcd(&BigInt::from(2)).is_one())
        }
    }
}

/// Defect via the fractional-part formula: `2 sum_O { <omega_O, lift - nu> }`
/// over the Galois orbits `O` of simple roots. `lift - nu` lies in the
/// rational span of the coroots up to `(gamma - 1)`, which the
/// Gamma-invariant orbit weights kill, so the value is lift-independent.
pub fn defect(g: &GroupDatum, c: &SigmaClass) -> BigInt {
    let diff: Vec<Rat> = to_rat_vec(&c.lift.coords)
        .iter()
        .zip(&c.nu.coords)
        .map(|(a, b)| a - b)
        .collect();
    let total: Rat = g
        .orbit_weights()
        .iter()
        .map(|w| frac_part(&g.pair_raw(w, &diff)))
        .sum();
    let doubled = total * Rat::from_integer(BigInt::from(2));
    assert!(doubled.is_integer(), "defect is not an integer");
    let v = doubled.to_integer();
    assert!(!v.is_negative());
    v
}

/// Number of Galois orbits of simple roots with non-integral
/// `<omega_O, lift - nu>`; by self-contragredience this equals the defect.
pub fn defect_rank_count(g: &GroupDatum, c: &SigmaClass) -> usize {
    let diff: Vec<Rat> = to_rat_vec(&c.lift.coords)
        .iter()
        .zip(&c.nu.coords)
        .map(|(a, b)| a - b)
        .collect();
    g.orbit_weights()
        .iter()
        .filter(|w| !g.pair_raw(w, &diff).is_integer())
        .count()
}

/// Independent defect oracle for `Res GL`: `rank_{Q_p} G - rank_{Q_p} J_b`
/// computed from the slope decomposition of the `sigma^d`-isocrystal. The
/// slopes of `(N_tau, Phi^d)` are `d` times the per-slot Newton slopes, and
/// each isoclinic part of slope `p/q` (reduced) with multiplicity `m`
/// contributes `m/q` to the rank of `J_b`.
pub fn defect_oracle_resgl(g: &GroupDatum, c: &SigmaClass) -> Result<BigInt> {
    if g.kind() != GroupKind::ResGl {
        return Err(Error::Precondition("defect oracle needs Res GL".into()));
    }
    let n = g.n();
    let d = BigInt::from(g.d() as i64);
    // per-slot slopes are Gamma-invariant: read slot 0
    let slopes: Vec<Rat> = (0..n)
        .map(|i| &c.nu.coords[i] * Rat::from_integer(d.clone()))
        .collect();
    let mut distinct: Vec<(Rat, usize)> = Vec::new();
    for s in &slopes {
        match distinct.iter_mut().find(|(v, _)| v == s) {
            Some((_, m)) => *m += 1,
            None => distinct.push((s.clone(), 1)),
        }
    }
    let mut rank_jb = BigInt::zero();
    for (s, m) in &distinct {
        let q = s.denom().clone();
        let m = BigInt::from(*m as i64);
        let (quot, rem) = m.div_rem(&q);
        assert!(rem.is_zero(), "slope multiplicity not divisible by denominator");
        rank_jb += quot;
    }
    Ok(BigInt::from(n as i64) - rank_jb)
}

/// Mazur partial order on classes: `c' <= c` iff the Newton points compare
/// in the dominance order and the Kottwitz points agree.
pub fn leq(g: &GroupDatum, lower: &SigmaClass, upper: &SigmaClass) -> bool {
    lower.kappa == upper.kappa && leq_dominance_rat(g, &lower.nu.coords, &upper.nu.coords)
}

/// Chain length between comparable classes, anchored at an integral
/// kappa-lift `lambda` (both classes share it):
/// `sum_O ( ceil<omega_O, lambda - nu'> - ceil<omega_O, lambda - nu> )`.
/// When the upper Newton point pairs integrally (e.g. it is the class of
/// an integral translation) this collapses to `sum_O ceil<omega_O, nu - nu'>`.
pub fn chain_length(g: &GroupDatum, lower: &SigmaClass, upper: &SigmaClass) -> Result<BigInt> {
    if !leq(g, lower, upper) {
        return Err(Error::Precondition("chain_length needs lower <= upper".into()));
    }
    let lift = to_rat_vec(&upper.lift.coords);
    let mut total = BigInt::zero();
    for w in g.orbit_weights() {
        let to_lower: Rat = lift
            .iter()
            .zip(&lower.nu.coords)
            .enumerate()
            .map(|(i, (a, b))| &w[i] * (a - b))
            .sum();
        let to_upper: Rat = lift
            .iter()
            .zip(&upper.nu.coords)
            .enumerate()
            .map(|(i, (a, b))| &w[i] * (a - b))
            .sum();
        total += to_lower.ceil().to_integer() - to_upper.ceil().to_integer();
    }
    assert!(!total.is_negative());
    Ok(total)
}

/// Membership in `B(G, mu)`.
pub fn is_in_bgmu(g: &GroupDatum, mu: &Cocharacter, c: &SigmaClass) -> bool {
    g.kappa(mu) == c.kappa && leq_mazur(g, &c.nu.coords, mu)
}

/// Enumerate `B(G, mu)` for dominant `mu`. For each Gamma-stable subset `J`
/// of the simple roots the basic classes of `M_J` are scanned through their
/// `pi_1(M_J)_Gamma` classes (free coordinates in a derived window, torsion
/// exhaustively); a class is kept when its Newton point is `M_J`-central,
/// strictly dominant off `J`, below `mu`, and kappa matches. The window is
/// then enlarged by 2 and the run repeated; the two class sets must agree.
pub fn enumerate_bgmu(g: &GroupDatum, mu: &Cocharacter) -> Result<Vec<SigmaClass>> {
    let base = enumerate_bgmu_with_window(g, mu, 0)?;
    let widened = enumerate_bgmu_with_window(g, mu, 2)?;
    let key = |c: &SigmaClass| (c.levi_j.clone(), c.kappa_m.clone(), c.nu.coords.clone());
    let a: HashSet<_> = base.iter().map(key).collect();
    let b: HashSet<_> = widened.iter().map(key).collect();
    if a != b {
        return Err(Error::IdentityFailed(
            "B(G,mu) enumeration not stable under window enlargement".into(),
        ));
    }
    Ok(base)
}

/// The enumeration with every free-coordinate window widened by `widen`.
/// The per-candidate filters run in exact scaled-integer arithmetic; the
/// few survivors are reconstructed and re-checked rationally.
pub fn enumerate_bgmu_with_window(
    g: &GroupDatum,
    mu: &Cocharacter,
    widen: i64,
) -> Result<Vec<SigmaClass>> {
    if !g.is_dominant_int(&mu.coords) {
        return Err(Error::Precondition("enumerate_bgmu needs dominant mu".into()));
    }
    let kappa_target = g.kappa(mu);
    let mu_avg = gamma_average(g, mu);

    // |nu_c| <= K for every ambient coordinate, since nu <= mu-average and
    // both are dominant (convex hull of the W-orbit)
    let coord_bound: Rat = mu
        .coords
        .iter()
        .map(|c| Rat::from_integer(c.abs()))
        .max()
        .unwrap_or_else(Rat::zero);

    let orbits = g.simple_orbits().to_vec();
    let mut classes: Vec<SigmaClass> = Vec::new();

    for mask in 0u32..(1 << orbits.len()) {
        let j_set: Vec<usize> = orbits
            .iter()
            .enumerate()
            .filter(|(o, _)| mask & (1 << o) != 0)
            .flat_map(|(_, orbit)| orbit.iter().copied())
            .collect();
        debug_assert!(is_gamma_stable(g, &j_set));
        let scan = levi_scan_data(g, &j_set);
        let scan = scan.as_ref();
        let pres = &scan.pres;
        let f = pres.free_rank;

        // window per free coordinate
        let bounds: Vec<i64> = scan
            .norms
            .iter()
            .map(|n| {
                let b = (n * coord_bound.clone()).ceil().to_integer();
                crate::linalg::big_to_i64(&b) + widen
            })
            .collect();
        let y_max = bounds.iter().copied().max().unwrap_or(0).max(1);

        // filter rows: per form, [offset per torsion combo | columns]
        // simple pairings (== 0 on J, > 0 off J), complement equalities,
        // fundamental-weight inequalities (<= paired value of mu-average)
        let nt = scan.torsion_combos.len();
        let mut rows: Vec<FilterRow> = Vec::new();
        for j in 0..g.simple_count() {
            let alpha = to_rat_vec(&g.positive_roots()[j].amb);
            rows.push(FilterRow::new(
                &alpha,
                scan,
                Rat::zero(),
                if j_set.contains(&j) { FilterKind::Zero } else { FilterKind::Positive },
            ));
        }
        for z in g.coroot_complement() {
            rows.push(FilterRow::new(z, scan, g.pair_raw(z, &mu_avg), FilterKind::EqualTarget));
        }
        for omega in g.all_fund_weights() {
            rows.push(FilterRow::new(
                omega,
                scan,
                g.pair_raw(omega, &mu_avg),
                FilterKind::AtMostTarget,
            ));
        }

        // common denominator and i128 tables
        let mut denom = BigInt::one();
        for r in &rows {
            for v in r.offsets.iter().chain(r.cols.iter()).chain([&r.target]) {
                denom = denom.lcm(v.denom());
            }
        }
        let scale = |v: &Rat| -> i128 {
            let scaled = v * Rat::from_integer(denom.clone());
            assert!(scaled.is_integer());
            scaled
                .to_integer()
                .to_i128()
                .expect("scaled coefficient out of range")
        };
        struct IntRow {
            offsets: Vec<i128>,
            cols: Vec<i128>,
            target: i128,
            kind: FilterKind,
        }
        let int_rows: Vec<IntRow> = rows
            .iter()
            .map(|r| {
                let row = IntRow {
                    offsets: r.offsets.iter().map(&scale).collect(),
                    cols: r.cols.iter().map(&scale).collect(),
                    target: scale(&r.target),
                    kind: r.kind,
                };
                // overflow guard: |off| + sum |c|*y_max stays far below i128::MAX
                let mag: i128 = row.offsets.iter().map(|v| v.abs()).max().unwrap_or(0)
                    + row.cols.iter().map(|v| v.abs() * (y_max as i128 + 2)).sum::<i128>()
                    + row.target.abs();
                assert!(mag < i128::MAX / 8, "scaled filter magnitude too large");
                row
            })
            .collect();

        // kappa linearization in i128 (free coords exact, torsion mod order)
        let kf = kappa_target.free.len();
        let kt = kappa_target.torsion.len();
        let to_i128 = |b: &BigInt| b.to_i128().expect("kappa coordinate out of range");
        let ktarget_free: Vec<i128> = kappa_target.free.iter().map(to_i128).collect();
        let ktarget_tors: Vec<i128> = kappa_target.torsion.iter().map(to_i128).collect();
        let orders: Vec<i128> = g.pi1_gamma().torsion_orders.iter().map(to_i128).collect();
        let koff_free: Vec<Vec<i128>> = scan.kappa_offsets.iter().map(|k| k.free.iter().map(to_i128).collect()).collect();
        let koff_tors: Vec<Vec<i128>> = scan.kappa_offsets.iter().map(|k| k.torsion.iter().map(to_i128).collect()).collect();
        let kcol_free: Vec<Vec<i128>> = scan.kappa_cols.iter().map(|k| k.free.iter().map(to_i128).collect()).collect();
        let kcol_tors: Vec<Vec<i128>> = scan.kappa_cols.iter().map(|k| k.torsion.iter().map(to_i128).collect()).collect();

        let mut survivors: Vec<(usize, Vec<i64>)> = Vec::new();
        for ti in 0..nt {
            let mut y: Vec<i64> = bounds.iter().map(|&b| -b).collect();
            'scan: loop {
                let accept = 'check: {
                    for r in &int_rows {
                        let mut v = r.offsets[ti];
                        for (k, &yk) in y.iter().enumerate() {
                            v += r.cols[k] * yk as i128;
                        }
                        let ok = match r.kind {
                            FilterKind::Zero => v == 0,
                            FilterKind::Positive => v > 0,
                            FilterKind::EqualTarget => v == r.target,
                            FilterKind::AtMostTarget => v <= r.target,
                        };
                        if !ok {
                            break 'check false;
                        }
                    }
                    for i in 0..kf {
                        let mut v = koff_free[ti][i];
                        for (k, &yk) in y.iter().enumerate() {
                            v += kcol_free[k][i] * yk as i128;
                        }
                        if v != ktarget_free[i] {
                            break 'check false;
                        }
                    }
                    for i in 0..kt {
                        let mut v = koff_tors[ti][i];
                        for (k, &yk) in y.iter().enumerate() {
                            v += kcol_tors[k][i] * yk as i128;
                        }
                        if v.rem_euclid(orders[i]) != ktarget_tors[i] {
                            break 'check false;
                        }
                    }
                    true
                };
                if accept {
                    survivors.push((ti, y.clone()));
                }
                let mut k = 0;
                loop {
                    if k == f {
                        break 'scan;
                    }
                    if y[k] < bounds[k] {
                        y[k] += 1;
                        break;
                    }
                    y[k] = -bounds[k];
                    k += 1;
                }
            }
        }

        // exact rational reconstruction of the survivors
        for (ti, y) in survivors {
            let free: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
            let elt = AbelianElt {
                torsion: scan.torsion_combos[ti].clone(),
                free,
            };
            let mut lift_basis = scan.sec_offsets[ti].clone();
            for (k, &yk) in y.iter().enumerate() {
                for (t, c) in lift_basis.iter_mut().zip(&scan.sec_cols[k]) {
                    *t += BigInt::from(yk) * c;
                }
            }
            let lift = Cocharacter {
                group: g.key(),
                coords: g.from_basis_coords(&lift_basis),
            };
            let mut nu_amb = scan.nu_amb_offsets[ti].clone();
            for (k, &yk) in y.iter().enumerate() {
                for (t, c) in nu_amb.iter_mut().zip(&scan.nu_amb_cols[k]) {
                    *t += Rat::from_integer(BigInt::from(yk)) * c;
                }
            }
            // re-verify the filters exactly
            assert_eq!(g.kappa(&lift), kappa_target, "integer kappa filter drifted");
            assert!(j_set.iter().all(|&j| g.pair_simple_rat(j, &nu_amb).is_zero()));
            assert!((0..g.simple_count())
                .filter(|j| !j_set.contains(j))
                .all(|j| g.pair_simple_rat(j, &nu_amb).is_positive()));
            assert!(leq_dominance_rat(g, &nu_amb, &mu_avg));
            debug_assert_eq!(pres.project(&lift_basis), elt);
            classes.push(SigmaClass {
                nu: RatCocharacter {
                    group: g.key(),
                    coords: nu_amb,
                },
                kappa: kappa_target.clone(),
                levi_j: j_set.clone(),
                kappa_m: elt,
                lift,
            });
        }
    }

    // the class of p^mu and at least one basic class must be present
    let top = classify(g, &ExtAffElt::translation(g, mu.clone()));
    assert!(
        classes.iter().any(|c| c == &top),
        "B(G,mu) misses the class of p^mu"
    );
    assert!(
        classes.iter().any(|c| is_basic(g, c)),
        "B(G,mu) misses the basic class"
    );

    // deterministic order: top stratum first
    let two_rho: Vec<Rat> = g.rho().iter().map(|r| r + r).collect();
    classes.sort_by(|a, b| {
        let ka = g.pair_raw(&two_rho, &a.nu.coords);
        let kb = g.pair_raw(&two_rho, &b.nu.coords);
        kb.cmp(&ka).then_with(|| b.nu.coords.cmp(&a.nu.coords))
    });
    Ok(classes)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum FilterKind {
    Zero,
    Positive,
    EqualTarget,
    AtMostTarget,
}

struct FilterRow {
    offsets: Vec<Rat>,
    cols: Vec<Rat>,
    target: Rat,
    kind: FilterKind,
}

impl FilterRow {
    /// Pair an ambient functional with the affine family
    /// `nu(t, y) = nu_off[t] + sum_k y_k nu_col[k]`.
    fn new(functional: &[Rat], scan: &LeviScanData, target: Rat, kind: FilterKind) -> Self {
        FilterRow {
            offsets: scan
                .nu_amb_offsets
                .iter()
                .map(|o| crate::linalg::dot_rat(functional, o))
                .collect(),
            cols: scan
                .nu_amb_cols
                .iter()
                .map(|c| crate::linalg::dot_rat(functional, c))
                .collect(),
            target,
            kind,
        }
    }
}

/// Per-(group, J) scan data: the `pi_1(M_J)_Gamma` presentation, integral
/// sections of its generators, their projected Newton contributions, their
/// Kottwitz images, and window norms. Cached globally by group key.
struct LeviScanData {
    pres: AbelianPresentation,
    torsion_combos: Vec<Vec<BigInt>>,
    sec_offsets: Vec<Vec<BigInt>>,
    sec_cols: Vec<Vec<BigInt>>,
    nu_amb_offsets: Vec<Vec<Rat>>,
    nu_amb_cols: Vec<Vec<Rat>>,
    kappa_offsets: Vec<AbelianElt>,
    kappa_cols: Vec<AbelianElt>,
    norms: Vec<Rat>,
}

static SCAN_CACHE: std::sync::LazyLock<
    std::sync::Mutex<HashMap<(crate::root_datum::GroupKey, Vec<usize>), std::sync::Arc<LeviScanData>>>,
> = std::sync::LazyLock::new(|| std::sync::Mutex::new(HashMap::new()));

fn levi_scan_data(g: &GroupDatum, j_set: &[usize]) -> std::sync::Arc<LeviScanData> {
    let mut key_j = j_set.to_vec();
    key_j.sort_unstable();
    let key = (g.key(), key_j);
    if let Some(d) = SCAN_CACHE.lock().unwrap().get(&key) {
        return d.clone();
    }

    let rank = g.lattice_basis().len();
    let ambient = g.ambient_rank();
    let basis_mat: Vec<Vec<Rat>> = (0..ambient)
        .map(|r| {
            g.lattice_basis()
                .iter()
                .map(|b| Rat::from_integer(b[r].clone()))
                .collect()
        })
        .collect();
    let pres = levi_presentation(g, j_set);
    let projector = invariant_projector(g, j_set, &basis_mat);
    let torsion_combos = torsion_combos(&pres.torsion_orders);

    let amb_of_basis = |v: &[Rat]| -> Vec<Rat> {
        (0..ambient)
            .map(|r| crate::linalg::dot_rat(&basis_mat[r], v))
            .collect()
    };
    let project_basis = |v: &[BigInt]| -> Vec<Rat> {
        let rat = to_rat_vec(v);
        projector
            .iter()
            .map(|row| crate::linalg::dot_rat(row, &rat))
            .collect()
    };

    let mut sec_offsets = Vec::new();
    let mut nu_amb_offsets = Vec::new();
    let mut kappa_offsets = Vec::new();
    for t in &torsion_combos {
        let elt = AbelianElt {
            torsion: t.clone(),
            free: vec![BigInt::zero(); pres.free_rank],
        };
        let sec = pres.section(&elt);
        nu_amb_offsets.push(amb_of_basis(&project_basis(&sec)));
        kappa_offsets.push(g.pi1_gamma().project(&sec));
        sec_offsets.push(sec);
    }
    let mut sec_cols = Vec::new();
    let mut nu_amb_cols = Vec::new();
    let mut kappa_cols = Vec::new();
    for k in 0..pres.free_rank {
        let mut free = vec![BigInt::zero(); pres.free_rank];
        free[k] = BigInt::one();
        let elt = AbelianElt {
            torsion: vec![BigInt::zero(); pres.torsion_orders.len()],
            free,
        };
        let sec = pres.section(&elt);
        // subtract the zero-torsion offset so the column is honest-linear
        let base = &sec_offsets[0];
        let col: Vec<BigInt> = sec.iter().zip(base).map(|(a, b)| a - b).collect();
        nu_amb_cols.push(amb_of_basis(&project_basis(&col)));
        kappa_cols.push(g.pi1_gamma().project(&col));
        sec_cols.push(col);
    }

    // window norms: |y_k| = |<f_k, nu>| with f_k the ambient functional of
    // the k-th free coordinate, composed with the invariant projector
    let left_inv = g.basis_left_inverse();
    let mut p_amb = vec![vec![Rat::zero(); ambient]; ambient];
    // P_amb = B * projector * left_inv
    for r in 0..ambient {
        for c in 0..ambient {
            let mut acc = Rat::zero();
            for a in 0..rank {
                for b in 0..rank {
                    acc += &basis_mat[r][a] * &projector[a][b] * &left_inv[b][c];
                }
            }
            p_amb[r][c] = acc;
        }
    }
    let norms: Vec<Rat> = pres
        .free_functionals()
        .iter()
        .map(|row| {
            // f = row * left_inv; g = f * P_amb; norm = sum |g_c|
            let f: Vec<Rat> = (0..ambient)
                .map(|c| (0..rank).map(|k| &row[k] * &left_inv[k][c]).sum())
                .collect();
            (0..ambient)
                .map(|c| {
                    let v: Rat = (0..ambient).map(|r| &f[r] * &p_amb[r][c]).sum();
                    v.abs()
                })
                .sum()
        })
        .collect();

    let data = std::sync::Arc::new(LeviScanData {
        pres,
        torsion_combos,
        sec_offsets,
        sec_cols,
        nu_amb_offsets,
        nu_amb_cols,
        kappa_offsets,
        kappa_cols,
        norms,
    });
    SCAN_CACHE.lock().unwrap().insert(key, data.clone());
    data
}

/// Projection matrix (in lattice-basis coordinates) onto the
/// `W_J x <gamma>`-invariants along `span(J-coroots) + im(gamma - 1)`.
fn invariant_projector(g: &GroupDatum, j_set: &[usize], basis_mat: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let rank = g.lattice_basis().len();
    // operator matrices on basis coordinates
    let op_matrix = |perm: &crate::perm::Perm| -> Vec<Vec<Rat>> {
        // columns: basis coords of perm(b_k)
        let mut cols = Vec::with_capacity(rank);
        for b in g.lattice_basis() {
            let moved = perm.act(b);
            let sol = solve_rational(basis_mat, &to_rat_vec(&moved)).expect("lattice stable");
            cols.push(sol.particular);
        }
        (0..rank)
            .map(|r| (0..rank).map(|c| cols[c][r].clone()).collect())
            .collect()
    };
    let mut stacked: Vec<Vec<Rat>> = Vec::new();
    let mut ops: Vec<Vec<Vec<Rat>>> = Vec::new();
    for &j in j_set {
        ops.push(op_matrix(&g.simple_reflection(j).perm));
    }
    ops.push(op_matrix(g.galois()));
    for m in &ops {
        for r in 0..rank {
            let mut row: Vec<Rat> = m[r].clone();
            row[r] -= Rat::one();
            stacked.push(row);
        }
    }
    let zero_rhs = vec![Rat::zero(); stacked.len()];
    let inv_basis = solve_rational(&stacked, &zero_rhs)
        .expect("homogeneous system")
        .kernel;

    // complement: J-coroots and (gamma - 1) images, pruned to a basis
    let mut compl: Vec<Vec<Rat>> = Vec::new();
    let add_if_independent = |v: Vec<Rat>, acc: &mut Vec<Vec<Rat>>| {
        let mut cols: Vec<Vec<Rat>> = acc.clone();
        cols.push(v.clone());
        if matrix_rank(&cols) > acc.len() {
            acc.push(v);
        }
    };
    for &j in j_set {
        let coroot = g.basis_coords(&g.positive_roots()[j].coroot);
        add_if_independent(to_rat_vec(&coroot), &mut compl);
    }
    for b in g.lattice_basis() {
        let moved = g.galois().act(b);
        let diff: Vec<BigInt> = moved.iter().zip(b).map(|(a, x)| a - x).collect();
        add_if_independent(to_rat_vec(&g.basis_coords(&diff)), &mut compl);
    }
    assert_eq!(
        inv_basis.len() + compl.len(),
        rank,
        "invariants and complement do not span"
    );
    // a = [inv | compl]; P = inv-part of a^{-1}
    let a: Vec<Vec<Rat>> = (0..rank)
        .map(|r| {
            inv_basis
                .iter()
                .chain(compl.iter())
                .map(|col| col[r].clone())
                .collect()
        })
        .collect();
    let mut projector = vec![vec![Rat::zero(); rank]; rank];
    for c in 0..rank {
        let mut e = vec![Rat::zero(); rank];
        e[c] = Rat::one();
        let z = solve_rational(&a, &e).expect("change of basis invertible").particular;
        // P e_c = sum_k z_k inv_k over the invariant part only
        for (k, col) in inv_basis.iter().enumerate() {
            for r in 0..rank {
                projector[r][c] += &z[k] * &col[r];
            }
        }
    }
    projector
}

fn matrix_rank(cols: &[Vec<Rat>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let rows = cols[0].len();
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols.len() {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].clone();
        for j in 0..cols.len() {
            let t = &m[rank][j] / &inv;
            m[rank][j] = t;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..cols.len() {
                    let t = &m[r][j] - &f * &m[rank][j];
                    m[r][j] = t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Hasse diagram: transitive reduction of the Mazur order on the classes.
pub fn hasse_edges(g: &GroupDatum, classes: &[SigmaClass]) -> Vec<(usize, usize)> {
    let n = classes.len();
    let mut less = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && leq(g, &classes[i], &classes[j]) {
                less[i][j] = true;
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if less[i][j] && !(0..n).any(|k| less[i][k] && less[k][j]) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Longest-chain length from `lower` to `upper` inside the enumerated poset
/// (brute-force oracle for the chain-length formula).
pub fn longest_chain(g: &GroupDatum, classes: &[SigmaClass], lower: usize, upper: usize) -> usize {
    let n = classes.len();
    let mut memo = vec![None; n];
    fn go(
        g: &GroupDatum,
        classes: &[SigmaClass],
        memo: &mut Vec<Option<usize>>,
        cur: usize,
        upper: usize,
    ) -> usize {
        if cur == upper {
            return 0;
        }
        if let Some(v) = memo[cur] {
            return v;
        }
        let mut best = 0;
        for next in 0..classes.len() {
            if next != cur
                && leq(g, &classes[cur], &classes[next])
                && leq(g, &classes[next], &classes[upper])
            {
                let v = go(g, classes, memo, next, upper);
                best = best.max(v + 1);
            }
        }
        memo[cur] = Some(best);
        best
    }
    go(g, classes, &mut memo, lower, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ratio};
    use crate::root_datum::build_group;
    use crate::weyl;

    fn class_of(g: &GroupDatum, coords: Vec<i64>, word: &[usize]) -> SigmaClass {
        let lambda = g.cocharacter(coords.into_iter().map(int).collect()).unwrap();
        let x = ExtAffElt {
            lambda,
            w: weyl::from_word(g, word),
        };
        classify(g, &x)
    }

    #[test]
    fn classify_examples() {
        let g = build_group(GroupKind::ResGl, 2, 1).unwrap();
        let id = classify(&g, &ExtAffElt::identity(&g));
        assert!(id.nu.coords.iter().all(|c| c.is_zero()));
        assert!(id.kappa.is_zero());
        assert_eq!(id.levi_j, vec![0]);

        let basic = class_of(&g, vec![1, 0], &[0]);
        assert_eq!(basic.nu.coords, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(basic.levi_j, vec![0]);

        let ordinary = class_of(&g, vec![1, 0], &[]);
        assert_eq!(ordinary.nu.coords, vec![ratio(1, 1), ratio(0, 1)]);
        assert!(ordinary.levi_j.is_empty());
        assert_eq!(basic.kappa, ordinary.kappa);
    }

    #[test]
    fn basic_and_superbasic() {
        let g = build_group(GroupKind::ResGl, 2, 1).unwrap();
        let id = classify(&g, &ExtAffElt::identity(&g));
        assert!(is_basic(&g, &id));
        assert!(!is_superbasic(&g, &id)); // nu = 0 meets the torus
        let basic = class_of(&g, vec![1, 0], &[0]);
        assert!(is_superbasic(&g, &basic)); // slope 1/2
        let central = class_of(&g, vec![1, 1], &[]);
        assert!(is_basic(&g, &central));
        assert!(!is_superbasic(&g, &central)); // slope 1 = 2/2
    }

    #[test]
    fn dominance_order() {
        let g = build_group(GroupKind::ResGl, 2, 1).unwrap();
        let half = vec![ratio(1, 2), ratio(1, 2)];
        let mu = vec![ratio(1, 1), ratio(0, 1)];
        assert!(leq_dominance_rat(&g, &half, &mu));
        assert!(!leq_dominance_rat(&g, &mu, &half));
        assert!(leq_dominance_rat(&g, &mu, &mu));
    }

    #[test]
    fn bgmu_gl2() {
        let g = build_group(GroupKind::ResGl, 2, 1).unwrap();
        let mu = g.cocharacter(vec![int(1), int(0)]).unwrap();
        let classes = enumerate_bgmu(&g, &mu).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].nu.coords, vec![ratio(1, 1), ratio(0, 1)]);
        assert_eq!(classes[1].nu.coords, vec![ratio(1, 2), ratio(1, 2)]);
        let edges = hasse_edges(&g, &classes);
        assert_eq!(edges, vec![(1, 0)]);
    }

    #[test]
    fn bgmu_gsp4() {
        let g = build_group(GroupKind::ResGsp, 4, 1).unwrap();
        let mu = g
            .cocharacter(vec![int(1), int(1), int(0), int(0)])
            .unwrap();
        let classes = enumerate_bgmu(&g, &mu).unwrap();
        assert_eq!(classes.len(), 3);
        let nus: Vec<Vec<Rat>> = classes.iter().map(|c| c.nu.coords.clone()).collect();
        assert_eq!(
            nus,
            vec![
                vec![ratio(1, 1), ratio(1, 1), ratio(0, 1), ratio(0, 1)],
                vec![ratio(1, 1), ratio(1, 2), ratio(1, 2), ratio(0, 1)],
                vec![ratio(1, 2), ratio(1, 2), ratio(1, 2), ratio(1, 2)],
            ]
        );
        // total order here: chain lengths 0, 1, 2 from the top
        let top = &classes[0];
        assert_eq!(chain_length(&g, top, top).unwrap(), int(0));
        assert_eq!(chain_length(&g, &classes[1], top).unwrap(), int(1));
        assert_eq!(chain_length(&g, &classes[2], top).unwrap(), int(2));
    }

    #[test]
    fn bgmu_trivial() {
        let g = build_group(GroupKind::ResGl, 3, 1).unwrap();
        let classes = enumerate_bgmu(&g, &g.zero_cocharacter()).unwrap();
        assert_eq!(classes.len(), 1);
    }

    #[test]
    fn defect_values() {
        let g = build_group(GroupKind::ResGl, 2, 1).unwrap();
        let ordinary = class_of(&g, vec![1, 0], &[]);
        assert_eq!(defect(&g, &ordinary), int(0));
        let basic = class_of(&g, vec![1, 0], &[0]);
        assert_eq!(defect(&g, &basic), int(1));
        assert_eq!(defect_oracle_resgl(&g, &basic).unwrap(), int(1));
        assert_eq!(defect_oracle_resgl(&g, &ordinary).unwrap(), int(0));

        // Res GL(2,2) superbasic with slopes 1/4: defect 1
        let g22 = build_group(GroupKind::ResGl, 2, 2).unwrap();
        let x = ExtAffElt {
            lambda: g22
                .cocharacter(vec![int(1), int(0), int(0), int(0)])
                .unwrap(),
            w: weyl::from_word(&g22, &[0]),
        };
        let c = classify(&g22, &x);
        assert_eq!(c.nu.coords, vec![ratio(1, 4); 4]);
        assert_eq!(defect(&g22, &c), int(1));
        assert_eq!(defect_oracle_resgl(&g22, &c).unwrap(), int(1));
    }

    #[test]
    fn defect_gl_n_superbasic() {
        // slope m/n with gcd(m,n) = 1 has defect n-1
        for (n, m) in [(3usize, 1i64), (4, 3), (5, 2)] {
            let g = build_group(GroupKind::ResGl, n, 1).unwrap();
            let mut coords = vec![int(0); n];
            for c in coords.iter_mut().take(m as usize) {
                *c = int(1);
            }
            let mu = g.cocharacter(coords).unwrap();
            let classes = enumerate_bgmu(&g, &mu).unwrap();
            let basic = classes.iter().find(|c| is_basic(&g, c)).unwrap();
            assert_eq!(defect(&g, basic), int(n as i64 - 1));
            assert_eq!(defect_oracle_resgl(&g, basic).unwrap(), int(n as i64 - 1));
            assert!(is_superbasic(&g, basic));
        }
    }

    #[test]
    fn classify_invariant_under_sigma_conjugation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let g = build_group(GroupKind::ResGl, 3, 1).unwrap();
        let x = ExtAffElt {
            lambda: g.cocharacter(vec![int(2), int(0), int(1)]).unwrap(),
            w: weyl::from_word(&g, &[0, 1]),
        };
        let c0 = classify(&g, &x);
        for _ in 0..50 {
            let coords: Vec<BigInt> = (0..3).map(|_| int(rng.gen_range(-3..4))).collect();
            let word: Vec<usize> = (0..rng.gen_range(0..5))
                .map(|_| rng.gen_range(0..2))
                .collect();
            let y = ExtAffElt {
                lambda: g.cocharacter(coords).unwrap(),
                w: weyl::from_word(&g, &word),
            };
            let conj = affine::sigma_conjugate(&g, &x, &y);
            let c1 = classify(&g, &conj);
            assert_eq!(c0, c1);
        }
    }
}
