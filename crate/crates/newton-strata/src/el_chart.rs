//! Superbasic EL combinatorics: normalized small EL-charts, their Hodge
//! points and `V`-sets, exhaustive enumeration, and the identity
//! `max #V_A = sum_i floor(<omega_i, mu - nu>)` computing the superbasic
//! Rapoport-Zink dimension.
//!
//! This module works in the conventions of the superbasic analysis (lower
//! triangular Borel, so minuscule Hodge points read `(0,...,0,1,...,1)` per
//! slot); `hodge_point_upper` reverses each slot to convert to the
//! convention of the other modules.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::linalg::Rat;
use crate::perm::Perm;
use crate::root_datum::{build_group, Cocharacter, GroupDatum, GroupKind, WeylElt};
use crate::{Error, Result};

/// Parameters `(d, h, (m_tau))` of a superbasic EL datum; `m = sum m_tau`
/// must be coprime to `h`, and the minuscule regime needs `0 <= m_tau <= h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ELChartParams {
    pub d: usize,
    pub h: usize,
    pub m_seq: Vec<i64>,
}

impl ELChartParams {
    pub fn new(d: usize, h: usize, m_seq: Vec<i64>) -> Result<Self> {
        if d < 1 || h < 1 || m_seq.len() != d {
            return Err(Error::Precondition(format!(
                "need d,h >= 1 and {} slot multiplicities, got {:?}",
                d, m_seq
            )));
        }
        if m_seq.iter().any(|&m| m < 0 || m > h as i64) {
            return Err(Error::Precondition(format!(
                "minuscule regime needs 0 <= m_tau <= h, got {m_seq:?}"
            )));
        }
        let params = ELChartParams { d, h, m_seq };
        if params.m().gcd(&(h as i64)) != 1 {
            return Err(Error::Precondition(format!(
                "superbasic needs gcd(m, h) = 1, got m = {}, h = {}",
                params.m(),
                h
            )));
        }
        Ok(params)
    }

    pub fn m(&self) -> i64 {
        self.m_seq.iter().sum()
    }

    fn len(&self) -> usize {
        self.d * self.h
    }
}

/// A normalized small EL-chart, stored as the cycle data `(b_0, eps)`:
/// `b_{i+1} = f(b_i) - h * eps_i`, with `b_i` living in the slot `i mod d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ELChart {
    pub b0: i64,
    pub eps: Vec<u8>,
}

impl ELChart {
    /// The value sequence `|b_0|, |b_1|, ...` (slot of `b_i` is `i mod d`).
    pub fn values(&self, params: &ELChartParams) -> Vec<i64> {
        let mut v = Vec::with_capacity(params.len());
        let mut cur = self.b0;
        for i in 0..params.len() {
            v.push(cur);
            cur += params.m_seq[(i + 1) % params.d] - params.h as i64 * self.eps[i] as i64;
        }
        v
    }

    /// Elements of `B = A \ (A + h)` grouped by slot.
    pub fn slot_values(&self, params: &ELChartParams) -> Vec<Vec<i64>> {
        let vals = self.values(params);
        let mut slots = vec![Vec::new(); params.d];
        for (i, v) in vals.iter().enumerate() {
            slots[i % params.d].push(*v);
        }
        slots
    }
}

/// Check every defining invariant; returns the list of violations (empty
/// for a valid normalized small EL-chart).
pub fn validate(params: &ELChartParams, chart: &ELChart) -> Vec<String> {
    let mut problems = Vec::new();
    let dh = params.len();
    let h = params.h as i64;
    if chart.eps.len() != dh {
        problems.push(format!("eps length {} != d*h = {dh}", chart.eps.len()));
        return problems;
    }
    if chart.eps.iter().any(|&e| e > 1) {
        problems.push("eps entries must be 0 or 1".into());
        return problems;
    }
    let vals = chart.values(params);
    // cycle closes
    let last = vals[dh - 1] + params.m_seq[0] - h * chart.eps[dh - 1] as i64;
    if last != chart.b0 {
        problems.push(format!("cycle does not close: b_dh = {last} != b_0 = {}", chart.b0));
    }
    // distinct elements
    let mut seen = HashSet::new();
    for (i, v) in vals.iter().enumerate() {
        if !seen.insert((i % params.d, *v)) {
            problems.push(format!("repeated element {v} in slot {}", i % params.d));
        }
    }
    // per slot: h elements forming a complete residue system mod h
    for (tau, slot) in chart.slot_values(params).iter().enumerate() {
        if slot.len() != params.h {
            problems.push(format!("slot {tau} has {} elements, expected {}", slot.len(), params.h));
            continue;
        }
        let residues: HashSet<i64> = slot.iter().map(|v| v.rem_euclid(h)).collect();
        if residues.len() != params.h {
            problems.push(format!("slot {tau} residues mod h not distinct"));
        }
    }
    // per slot eps counts match the multiplicities: #B^-_(tau) = m_{tau+1}
    for tau in 0..params.d {
        let count: i64 = (0..params.h)
            .map(|k| chart.eps[tau + k * params.d] as i64)
            .sum();
        if count != params.m_seq[(tau + 1) % params.d] {
            problems.push(format!(
                "slot {tau} carries {count} minus-elements, expected m_{} = {}",
                (tau + 1) % params.d,
                params.m_seq[(tau + 1) % params.d]
            ));
        }
    }
    // smallness: f(A) in A and A + h in f(A), checked on B
    let by_slot = chart.slot_values(params);
    for i in 0..dh {
        let f_val = vals[i] + params.m_seq[(i + 1) % params.d];
        let f_slot = (i + 1) % params.d;
        // f(b) must be in A = B + h Z_{>=0}
        let ok = by_slot[f_slot]
            .iter()
            .any(|&b| b <= f_val && (f_val - b).rem_euclid(h) == 0);
        if !ok {
            problems.push(format!("f(b_{i}) = {f_val} not in A"));
        }
        // b + h must be in f(A) = f(B) + h Z_{>=0}
        let target = vals[i] + h;
        let ok2 = (0..dh).any(|j| {
            let fj = vals[j] + params.m_seq[(j + 1) % params.d];
            (j + 1) % params.d == i % params.d && fj <= target && (target - fj).rem_euclid(h) == 0
        });
        if !ok2 {
            problems.push(format!("b_{i} + h not in f(A): smallness fails"));
        }
    }
    // normalization
    let sum0: i64 = by_slot[0].iter().sum();
    let expected = h * (h - 1) / 2;
    if sum0 != expected {
        problems.push(format!(
            "not normalized: sum over B_(0) is {sum0}, expected {expected}"
        ));
    }
    problems
}

/// Hodge point in the lower-triangular convention: per slot
/// `(0,...,0,1,...,1)` with `#B^-_(tau-1)` ones.
pub fn hodge_point(params: &ELChartParams, chart: &ELChart) -> Result<Vec<Vec<i64>>> {
    let problems = validate(params, chart);
    if !problems.is_empty() {
        return Err(Error::Precondition(format!("invalid chart: {problems:?}")));
    }
    let mut out = Vec::with_capacity(params.d);
    for tau in 0..params.d {
        // slot tau of the Hodge point counts B^- in slot tau-1
        let prev = (tau + params.d - 1) % params.d;
        let minus: i64 = (0..params.h)
            .map(|k| chart.eps[prev + k * params.d] as i64)
            .sum();
        let mut block = vec![0i64; params.h];
        for b in block.iter_mut().rev().take(minus as usize) {
            *b = 1;
        }
        out.push(block);
    }
    Ok(out)
}

/// Hodge point as a dominant cocharacter of `Res GL(h, d)` in the
/// upper-triangular convention of the other modules (per-slot reversal).
pub fn hodge_point_upper(g: &GroupDatum, params: &ELChartParams, chart: &ELChart) -> Result<Cocharacter> {
    assert_eq!(g.kind(), GroupKind::ResGl);
    assert_eq!((g.n(), g.d()), (params.h, params.d));
    let lower = hodge_point(params, chart)?;
    let coords: Vec<BigInt> = lower
        .iter()
        .flat_map(|block| block.iter().rev().map(|&v| BigInt::from(v)))
        .collect();
    g.cocharacter(coords)
}

/// The set `V_A`: pairs of cycle indices `(j, i)` with `b_j` in `B^-`,
/// `b_i` in `B^+`, same slot, and `b_j < b_i`.
pub fn v_set(params: &ELChartParams, chart: &ELChart) -> Result<Vec<(usize, usize)>> {
    let problems = validate(params, chart);
    if !problems.is_empty() {
        return Err(Error::Precondition(format!("invalid chart: {problems:?}")));
    }
    let vals = chart.values(params);
    let mut out = Vec::new();
    for j in 0..params.len() {
        if chart.eps[j] != 1 {
            continue;
        }
        for i in 0..params.len() {
            if chart.eps[i] != 0 || i % params.d != j % params.d {
                continue;
            }
            if vals[j] < vals[i] {
                out.push((j, i));
            }
        }
    }
    Ok(out)
}

pub fn v_count(params: &ELChartParams, chart: &ELChart) -> Result<usize> {
    Ok(v_set(params, chart)?.len())
}

/// Minuscule Hodge point (lower convention) for given per-slot counts.
pub fn minuscule_hodge(params: &ELChartParams) -> Vec<Vec<i64>> {
    (0..params.d)
        .map(|tau| {
            let ones = params.m_seq[tau] as usize;
            let mut block = vec![0i64; params.h];
            for b in block.iter_mut().rev().take(ones) {
                *b = 1;
            }
            block
        })
        .collect()
}

/// Exhaustively enumerate the normalized small EL-charts with the given
/// minuscule Hodge point: choose, per slot, which cycle positions carry
/// `eps = 1`, then normalize the translation and the starting point.
pub fn enumerate(params: &ELChartParams, mu: &[Vec<i64>]) -> Result<Vec<ELChart>> {
    // mu must be the minuscule cocharacter with the prescribed one-counts
    if mu.len() != params.d || mu.iter().any(|b| b.len() != params.h) {
        return Err(Error::Precondition("Hodge point has wrong shape".into()));
    }
    for (tau, block) in mu.iter().enumerate() {
        if block.iter().any(|&v| v != 0 && v != 1) {
            return Err(Error::Precondition(format!(
                "non-minuscule Hodge point in slot {tau}: {block:?}"
            )));
        }
        let ones: i64 = block.iter().sum();
        if ones != params.m_seq[tau] {
            return Err(Error::Precondition(format!(
                "slot {tau} has {ones} ones, expected m_{tau} = {}",
                params.m_seq[tau]
            )));
        }
        let mut sorted = block.clone();
        sorted.sort_unstable();
        if &sorted != block {
            return Err(Error::Precondition(format!(
                "slot {tau} is not dominant for the lower-triangular convention"
            )));
        }
    }

    let d = params.d;
    let h = params.h;
    let dh = params.len();
    // per-slot position subsets: slot tau owns cycle indices tau, tau+d, ...
    // and must carry m_{tau+1} ones
    let per_slot_choices: Vec<Vec<Vec<usize>>> = (0..d)
        .map(|tau| {
            let count = params.m_seq[(tau + 1) % d] as usize;
            subsets_of_size(h, count)
        })
        .collect();

    let mut found: HashSet<ELChart> = HashSet::new();
    let mut stack = vec![0usize; d];
    'outer: loop {
        // build the eps pattern for the current choice tuple
        let mut eps = vec![0u8; dh];
        for tau in 0..d {
            for &k in &per_slot_choices[tau][stack[tau]] {
                eps[tau + k * d] = 1;
            }
        }
        let chart = canonicalize(params, ELChart { b0: 0, eps });
        let problems = validate(params, &chart);
        assert!(problems.is_empty(), "enumerated chart invalid: {problems:?}");
        found.insert(chart);

        // advance the mixed-radix counter over choice tuples
        let mut t = 0;
        loop {
            if t == d {
                break 'outer;
            }
            stack[t] += 1;
            if stack[t] < per_slot_choices[t].len() {
                break;
            }
            stack[t] = 0;
            t += 1;
        }
    }
    let mut out: Vec<ELChart> = found.into_iter().collect();
    out.sort_by(|a, b| (a.b0, &a.eps).cmp(&(b.b0, &b.eps)));
    Ok(out)
}

/// Translate to the normalized representative and rotate the cycle so that
/// `b_0` is the minimal element of `B_(0)`.
fn canonicalize(params: &ELChartParams, chart: ELChart) -> ELChart {
    let h = params.h as i64;
    let d = params.d;
    let vals = chart.values(params);
    let sum0: i64 = vals.iter().step_by(d).sum();
    let target = h * (h - 1) / 2;
    // translating A by t shifts the slot-0 sum by h*t; the slot-0 residues
    // cover all classes mod h, so t is integral
    let shift_num = target - sum0;
    assert_eq!(shift_num.rem_euclid(h), 0, "normalization shift not integral");
    let t = shift_num / h;
    // rotate so that b_0 = min of B_(0); rotations move by multiples of d
    let min_pos = (0..params.h)
        .map(|k| k * d)
        .min_by_key(|&i| vals[i])
        .unwrap();
    let mut eps = Vec::with_capacity(params.len());
    for i in 0..params.len() {
        eps.push(chart.eps[(min_pos + i) % params.len()]);
    }
    ELChart {
        b0: vals[min_pos] + t,
        eps,
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// The superbasic Rapoport-Zink dimension: the maximum of `#V_A` over all
/// normalized small EL-charts with the given Hodge point, asserted equal to
/// the floor formula `sum_{i=1}^{h-1} floor(<omega_i, mu - nu>)` with `nu`
/// the constant-slope Newton point `m/(d h)`.
pub fn superbasic_rz_dim(params: &ELChartParams, mu: &[Vec<i64>]) -> Result<usize> {
    let charts = enumerate(params, mu)?;
    let max_v = charts
        .iter()
        .map(|c| v_count(params, c))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let formula = floor_formula(params, mu)?;
    if BigInt::from(max_v as i64) != formula {
        return Err(Error::IdentityFailed(format!(
            "max #V_A = {max_v} but the floor formula gives {formula} \
             (d = {}, h = {}, m_seq = {:?})",
            params.d, params.h, params.m_seq
        )));
    }
    Ok(max_v)
}

/// The closed-form side: `sum_O floor(<omega_O, mu - nu>)` on `Res GL(h,d)`
/// with `mu` converted to the upper-triangular convention.
pub fn floor_formula(params: &ELChartParams, mu: &[Vec<i64>]) -> Result<BigInt> {
    let g = build_group(GroupKind::ResGl, params.h, params.d)?;
    floor_formula_in(&g, params, mu)
}

/// As `floor_formula`, with the group supplied by the caller (sweeps reuse
/// one group per `(h, d)`).
pub fn floor_formula_in(g: &GroupDatum, params: &ELChartParams, mu: &[Vec<i64>]) -> Result<BigInt> {
    assert_eq!((g.n(), g.d()), (params.h, params.d));
    let coords: Vec<Rat> = mu
        .iter()
        .flat_map(|block| {
            block
                .iter()
                .rev()
                .map(|&v| Rat::from_integer(BigInt::from(v)))
        })
        .collect();
    let slope = Rat::new(
        BigInt::from(params.m()),
        BigInt::from((params.d * params.h) as i64),
    );
    let diff: Vec<Rat> = coords.iter().map(|c| c - &slope).collect();
    Ok(g
        .orbit_weights()
        .iter()
        .map(|w| g.pair_raw(w, &diff).floor().to_integer())
        .sum())
}

/// The standard superbasic Weyl element `b(e_{tau,i}) = e_{tau,i+m_tau}`
/// as an extended affine Weyl element of `Res GL(h, d)` (upper-triangular
/// convention): per-slot translation `(1,...,1,0,...,0)` with `m_tau` ones
/// and the `m_tau`-fold rotation.
pub fn superbasic_witness(g: &GroupDatum, params: &ELChartParams) -> crate::affine::ExtAffElt {
    assert_eq!(g.kind(), GroupKind::ResGl);
    assert_eq!((g.n(), g.d()), (params.h, params.d));
    let h = params.h;
    let mut coords = Vec::with_capacity(g.ambient_rank());
    let mut perm = Perm::identity(g.ambient_rank());
    for (tau, &m) in params.m_seq.iter().enumerate() {
        for i in 0..h {
            coords.push(if (i as i64) < m { BigInt::one() } else { BigInt::zero() });
            perm.0[tau * h + i] = (tau * h + (i + m as usize) % h) as u32;
        }
    }
    crate::affine::ExtAffElt {
        lambda: g.cocharacter(coords).unwrap(),
        w: WeylElt {
            group: g.key(),
            perm,
        },
    }
}

/// All minuscule per-slot multiplicity sequences for given `(d, h)` with
/// `gcd(m, h) = 1`, paired with their Hodge points.
pub fn all_minuscule_params(d: usize, h: usize) -> Vec<ELChartParams> {
    let mut out = Vec::new();
    let mut seq = vec![0i64; d];
    loop {
        if let Ok(p) = ELChartParams::new(d, h, seq.clone()) {
            out.push(p);
        }
        let mut t = 0;
        loop {
            if t == d {
                return out;
            }
            seq[t] += 1;
            if seq[t] <= h as i64 {
                break;
            }
            seq[t] = 0;
            t += 1;
        }
    }
}
