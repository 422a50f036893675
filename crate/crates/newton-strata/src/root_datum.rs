//! Realizations of the three unramified PEL group families as explicit root
//! data with Galois action.
//!
//! All objects live in the ambient lattice `Z^(d x n)`; the PEL similitude
//! conditions are explicit integer functionals cutting out `X_*(T)`. Roots
//! and weights are stored as chosen ambient representatives and compared as
//! functionals on the constrained sublattice.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::{
    dot_rat, dot_rat_int, integral_kernel_basis, quotient_presentation, solve_rational,
    to_rat_vec, AbelianElt, AbelianPresentation, Rat,
};
use crate::perm::Perm;
use crate::{Error, Result};

/// The three group families of the appendix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum GroupKind {
    ResGl,
    ResGsp,
    ResGu,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::ResGl => write!(f, "gl"),
            GroupKind::ResGsp => write!(f, "gsp"),
            GroupKind::ResGu => write!(f, "gu"),
        }
    }
}

/// Identity of a built group; values carry it so that cross-group mixing is
/// caught at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupKey {
    pub kind: GroupKind,
    pub n: usize,
    pub d: usize,
}

impl fmt::Display for GroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={},d={})", self.kind, self.n, self.d)
    }
}

/// A root: chosen ambient representative of the functional, its coroot
/// (a genuine lattice vector), coordinates in the simple-root basis, and a
/// witness `root = word(base)` expressing it as a Weyl image of a simple.
#[derive(Clone, Debug)]
pub struct Root {
    pub amb: Vec<BigInt>,
    pub coroot: Vec<BigInt>,
    pub simple_coords: Vec<BigInt>,
    pub witness_base: usize,
    pub witness_word: Vec<usize>,
}

/// Integral cocharacter, constrained to the group's sublattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocharacter {
    pub group: GroupKey,
    pub coords: Vec<BigInt>,
}

/// Rational cocharacter (Newton points and averages).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatCocharacter {
    pub group: GroupKey,
    pub coords: Vec<Rat>,
}

impl Cocharacter {
    pub fn to_rational(&self) -> RatCocharacter {
        RatCocharacter {
            group: self.group,
            coords: to_rat_vec(&self.coords),
        }
    }

    pub fn sub(&self, other: &Cocharacter) -> Cocharacter {
        assert_eq!(self.group, other.group);
        Cocharacter {
            group: self.group,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, other: &Cocharacter) -> Cocharacter {
        assert_eq!(self.group, other.group);
        Cocharacter {
            group: self.group,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl RatCocharacter {
    pub fn sub(&self, other: &RatCocharacter) -> RatCocharacter {
        assert_eq!(self.group, other.group);
        RatCocharacter {
            group: self.group,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }
}

/// Weight: rational functional on `X_*(T)`, stored as a chosen ambient
/// representative. Equality is equality of the induced functionals.
#[derive(Clone, Debug)]
pub struct Weight {
    pub group: GroupKey,
    pub coords: Vec<Rat>,
}

/// Finite Weyl group element, acting as a permutation of the ambient
/// coordinates (valid on the constrained sublattice).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt {
    pub group: GroupKey,
    pub perm: Perm,
}

type Fingerprint = Vec<Rat>;

/// A realized group: lattice, Galois action, roots, coroots, weights and
/// fundamental-group data.
pub struct GroupDatum {
    key: GroupKey,
    ambient_rank: usize,
    galois: Perm,
    constraints: Vec<Vec<BigInt>>,
    lattice_basis: Vec<Vec<BigInt>>,
    simple_count: usize,
    positive_roots: Vec<Root>,
    simple_perms: Vec<Perm>,
    root_lookup: HashMap<Fingerprint, (usize, i8)>,
    rho: Vec<Rat>,
    fund_weights: Vec<Vec<Rat>>,
    simple_orbits: Vec<Vec<usize>>,
    orbit_weights: Vec<Vec<Rat>>,
    components: Vec<Vec<usize>>,
    highest_roots: Vec<usize>,
    pi1_absolute: AbelianPresentation,
    pi1_gamma: AbelianPresentation,
    simple_names: Vec<String>,
    coroot_complement: Vec<Vec<Rat>>,
    basis_left_inverse: Vec<Vec<Rat>>,
    // memoized subgroup enumerations and per-permutation root actions;
    // the coset and length computations hit the same keys constantly
    subgroup_cache: Mutex<HashMap<Vec<usize>, Arc<Vec<WeylElt>>>>,
    action_cache: Mutex<HashMap<Perm, Arc<Vec<(u32, i8)>>>>,
}

fn flat(n: usize, tau: usize, i: usize) -> usize {
    tau * n + i
}

fn add_unit(v: &mut [BigInt], i: usize, sign: i64) {
    v[i] += BigInt::from(sign);
}

/// Build a realized group datum. Rejects invalid `(kind, n, d)` combinations.
pub fn build_group(kind: GroupKind, n: usize, d: usize) -> Result<GroupDatum> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidGroup(format!(
            "n and d must be at least 1, got n={n}, d={d}"
        )));
    }
    if kind == GroupKind::ResGsp && n % 2 != 0 {
        return Err(Error::InvalidGroup(format!(
            "gsp requires even n, got n={n}"
        )));
    }
    if kind == GroupKind::ResGu && d % 2 != 0 {
        return Err(Error::InvalidGroup(format!("gu requires even d, got d={d}")));
    }
    let key = GroupKey { kind, n, d };
    let ambient = d * n;

    let mut gal = vec![0u32; ambient];
    for tau in 0..d {
        for i in 0..n {
            gal[flat(n, tau, i)] = flat(n, (tau + 1) % d, i) as u32;
        }
    }
    let galois = Perm(gal);

    // similitude constraints cutting X_*(T) out of Z^(d x n)
    let mut constraints: Vec<Vec<BigInt>> = Vec::new();
    match kind {
        GroupKind::ResGl => {}
        GroupKind::ResGsp => {
            // mu_{tau,i} + mu_{tau,n+1-i} = c, common to all tau and i
            let base = |v: &mut Vec<BigInt>| {
                add_unit(v, flat(n, 0, 0), -1);
                add_unit(v, flat(n, 0, n - 1), -1);
            };
            for tau in 0..d {
                for i in 0..n / 2 {
                    if tau == 0 && i == 0 {
                        continue;
                    }
                    let mut v = vec![BigInt::zero(); ambient];
                    add_unit(&mut v, flat(n, tau, i), 1);
                    add_unit(&mut v, flat(n, tau, n - 1 - i), 1);
                    base(&mut v);
                    constraints.push(v);
                }
            }
        }
        GroupKind::ResGu => {
            // mu_{tau,i} + mu_{tau+d/2,n+1-i} = c
            let half = d / 2;
            let base = |v: &mut Vec<BigInt>| {
                add_unit(v, flat(n, 0, 0), -1);
                add_unit(v, flat(n, half, n - 1), -1);
            };
            for tau in 0..half {
                for i in 0..n {
                    if tau == 0 && i == 0 {
                        continue;
                    }
                    let mut v = vec![BigInt::zero(); ambient];
                    add_unit(&mut v, flat(n, tau, i), 1);
                    add_unit(&mut v, flat(n, (tau + half) % d, n - 1 - i), 1);
                    base(&mut v);
                    constraints.push(v);
                }
            }
        }
    }
    let lattice_basis = integral_kernel_basis(&constraints, ambient);

    // simple roots with coroots and reflection permutations, per family
    let mut simples: Vec<(Vec<BigInt>, Vec<BigInt>, Perm, String)> = Vec::new();
    match kind {
        GroupKind::ResGl => {
            for tau in 0..d {
                for i in 0..n - 1 {
                    let mut amb = vec![BigInt::zero(); ambient];
                    add_unit(&mut amb, flat(n, tau, i), 1);
                    add_unit(&mut amb, flat(n, tau, i + 1), -1);
                    let coroot = amb.clone();
                    let perm = Perm::swap(ambient, flat(n, tau, i), flat(n, tau, i + 1));
                    let name = if d == 1 {
                        format!("s{}", i + 1)
                    } else {
                        format!("t{}:s{}", tau, i + 1)
                    };
                    simples.push((amb, coroot, perm, name));
                }
            }
        }
        GroupKind::ResGsp => {
            let g = n / 2;
            for tau in 0..d {
                for i in 0..g {
                    // e_{tau,i} - e_{tau,i+1}; for i = g-1 this restricts to
                    // the long root 2e_{tau,g} - c
                    let mut amb = vec![BigInt::zero(); ambient];
                    add_unit(&mut amb, flat(n, tau, i), 1);
                    add_unit(&mut amb, flat(n, tau, i + 1), -1);
                    let mut coroot = vec![BigInt::zero(); ambient];
                    let mut perm = Perm::identity(ambient);
                    if i + 1 < g {
                        // short root: coroot e_i - e_{i+1} + e_{n-1-i} - e_{n-i}
                        add_unit(&mut coroot, flat(n, tau, i), 1);
                        add_unit(&mut coroot, flat(n, tau, i + 1), -1);
                        add_unit(&mut coroot, flat(n, tau, n - 2 - i), 1);
                        add_unit(&mut coroot, flat(n, tau, n - 1 - i), -1);
                        perm.0.swap(flat(n, tau, i), flat(n, tau, i + 1));
                        perm.0.swap(flat(n, tau, n - 2 - i), flat(n, tau, n - 1 - i));
                    } else {
                        // long root 2e_g - c: coroot e_g - e_{g+1}
                        add_unit(&mut coroot, flat(n, tau, g - 1), 1);
                        add_unit(&mut coroot, flat(n, tau, g), -1);
                        perm.0.swap(flat(n, tau, g - 1), flat(n, tau, g));
                    }
                    let name = if d == 1 {
                        format!("s{}", i + 1)
                    } else {
                        format!("t{}:s{}", tau, i + 1)
                    };
                    simples.push((amb, coroot, perm, name));
                }
            }
        }
        GroupKind::ResGu => {
            let half = d / 2;
            for tau in 0..half {
                for i in 0..n - 1 {
                    let mut amb = vec![BigInt::zero(); ambient];
                    add_unit(&mut amb, flat(n, tau, i), 1);
                    add_unit(&mut amb, flat(n, tau, i + 1), -1);
                    let mut coroot = vec![BigInt::zero(); ambient];
                    add_unit(&mut coroot, flat(n, tau, i), 1);
                    add_unit(&mut coroot, flat(n, tau, i + 1), -1);
                    add_unit(&mut coroot, flat(n, tau + half, n - 2 - i), 1);
                    add_unit(&mut coroot, flat(n, tau + half, n - 1 - i), -1);
                    let mut perm = Perm::identity(ambient);
                    perm.0.swap(flat(n, tau, i), flat(n, tau, i + 1));
                    perm.0
                        .swap(flat(n, tau + half, n - 2 - i), flat(n, tau + half, n - 1 - i));
                    simples.push((amb, coroot, perm, format!("t{}:s{}", tau, i + 1)));
                }
            }
        }
    }

    let fingerprint = |v: &[Rat]| -> Fingerprint {
        lattice_basis
            .iter()
            .map(|b| dot_rat(v, &to_rat_vec(b)))
            .collect()
    };

    // sanity: each simple pair satisfies <alpha, alpha^vee> = 2, coroots are
    // in the lattice, and the stated permutation is the reflection on X_*(T)
    for (amb, coroot, perm, _) in &simples {
        let pairing: BigInt = amb.iter().zip(coroot).map(|(a, b)| a * b).sum();
        assert_eq!(pairing, BigInt::from(2), "<alpha, alpha^vee> != 2");
        for c in &constraints {
            let v: BigInt = c.iter().zip(coroot).map(|(a, b)| a * b).sum();
            assert!(v.is_zero(), "coroot violates constraints");
        }
        for b in &lattice_basis {
            let reflected: Vec<BigInt> = {
                let p: BigInt = amb.iter().zip(b).map(|(a, x)| a * x).sum();
                b.iter().zip(coroot).map(|(x, cv)| x - &p * cv).collect()
            };
            assert_eq!(perm.act(b), reflected, "reflection permutation mismatch");
        }
    }

    let simple_count = simples.len();

    // close the simple roots under the simple reflections to get all roots
    let mut positive_roots: Vec<Root> = Vec::new();
    let mut all_roots: Vec<Root> = Vec::new();
    let mut seen: HashMap<Fingerprint, usize> = HashMap::new();
    for (j, (amb, coroot, _, _)) in simples.iter().enumerate() {
        let mut sc = vec![BigInt::zero(); simple_count];
        sc[j] = BigInt::one();
        let root = Root {
            amb: amb.clone(),
            coroot: coroot.clone(),
            simple_coords: sc,
            witness_base: j,
            witness_word: Vec::new(),
        };
        seen.insert(fingerprint(&to_rat_vec(&root.amb)), all_roots.len());
        all_roots.push(root);
    }
    let mut frontier: Vec<usize> = (0..all_roots.len()).collect();
    while let Some(idx) = frontier.pop() {
        for j in 0..simple_count {
            let (alpha_amb, alpha_co) = (simples[j].0.clone(), simples[j].1.clone());
            let r = all_roots[idx].clone();
            // s_j(r): amb - <amb, alpha_j^vee> alpha_j, tracked on all three coords
            let k: BigInt = r.amb.iter().zip(&alpha_co).map(|(a, b)| a * b).sum();
            let amb: Vec<BigInt> = r
                .amb
                .iter()
                .zip(&alpha_amb)
                .map(|(a, b)| a - &k * b)
                .collect();
            let kc: BigInt = alpha_amb.iter().zip(&r.coroot).map(|(a, b)| a * b).sum();
            let coroot: Vec<BigInt> = r
                .coroot
                .iter()
                .zip(&alpha_co)
                .map(|(a, b)| a - &kc * b)
                .collect();
            let mut sc = r.simple_coords.clone();
            sc[j] -= &k;
            let fp = fingerprint(&to_rat_vec(&amb));
            if !seen.contains_key(&fp) {
                let mut word = vec![j];
                word.extend_from_slice(&r.witness_word);
                seen.insert(fp, all_roots.len());
                all_roots.push(Root {
                    amb,
                    coroot,
                    simple_coords: sc,
                    witness_base: r.witness_base,
                    witness_word: word,
                });
                frontier.push(all_roots.len() - 1);
            }
        }
    }
    let mut reordered: Vec<Root> = Vec::new();
    for r in &all_roots {
        let pos = r.simple_coords.iter().all(|c| !c.is_negative());
        let neg = r.simple_coords.iter().all(|c| !c.is_positive());
        assert!(pos ^ neg, "root neither positive nor negative");
        if pos {
            reordered.push(r.clone());
        }
    }
    // simples first, in their original order
    reordered.sort_by_key(|r| {
        let weight: BigInt = r.simple_coords.iter().sum();
        let first = r
            .simple_coords
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0);
        (weight, first)
    });
    positive_roots.extend(reordered);
    assert_eq!(2 * positive_roots.len(), all_roots.len());

    let expected_positive = match kind {
        GroupKind::ResGl => d * n * (n - 1) / 2,
        GroupKind::ResGsp => d * (n / 2) * (n / 2),
        GroupKind::ResGu => (d / 2) * n * (n - 1) / 2,
    };
    assert_eq!(
        positive_roots.len(),
        expected_positive,
        "root count does not match the stated type"
    );

    let mut root_lookup: HashMap<Fingerprint, (usize, i8)> = HashMap::new();
    for (i, r) in positive_roots.iter().enumerate() {
        let fp = fingerprint(&to_rat_vec(&r.amb));
        let neg: Vec<Rat> = to_rat_vec(&r.amb).iter().map(|x| -x).collect();
        root_lookup.insert(fp, (i, 1));
        root_lookup.insert(fingerprint(&neg), (i, -1));
    }

    // rho = half-sum of the deduplicated positive roots
    let mut rho = vec![Rat::zero(); ambient];
    for r in &positive_roots {
        for (t, a) in rho.iter_mut().zip(&r.amb) {
            *t += Rat::from_integer(a.clone()) / Rat::from_integer(BigInt::from(2));
        }
    }
    for (j, (_, coroot, _, _)) in simples.iter().enumerate() {
        let p = dot_rat_int(&rho, coroot);
        assert!(p.is_one(), "rho does not pair to 1 with simple coroot {j}");
    }

    // fundamental weights inside the rational span of the simple roots:
    // omega_k = sum_j x_{kj} alpha_j with <omega_k, alpha_m^vee> = delta_{km}
    let cartan: Vec<Vec<Rat>> = (0..simple_count)
        .map(|m| {
            (0..simple_count)
                .map(|j| dot_rat_int(&to_rat_vec(&simples[j].0), &simples[m].1))
                .collect()
        })
        .collect();
    let mut fund_weights: Vec<Vec<Rat>> = Vec::new();
    for k in 0..simple_count {
        let mut rhs = vec![Rat::zero(); simple_count];
        rhs[k] = Rat::one();
        let sol = solve_rational(&cartan, &rhs).expect("Cartan matrix is invertible");
        assert!(sol.kernel.is_empty());
        assert!(
            sol.particular.iter().all(|c| !c.is_negative()),
            "fundamental weight with a negative simple-root coefficient"
        );
        let mut w = vec![Rat::zero(); ambient];
        for (j, c) in sol.particular.iter().enumerate() {
            for (t, a) in w.iter_mut().zip(&simples[j].0) {
                *t += c * Rat::from_integer(a.clone());
            }
        }
        for m in 0..simple_count {
            let p = dot_rat_int(&w, &simples[m].1);
            assert_eq!(p, if m == k { Rat::one() } else { Rat::zero() });
        }
        fund_weights.push(w);
    }

    // Galois orbits on the simple roots
    let mut simple_orbits: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; simple_count];
    for j in 0..simple_count {
        if assigned[j] {
            continue;
        }
        let mut orbit = vec![j];
        assigned[j] = true;
        let mut cur = j;
        loop {
            let pushed = galois.act(&positive_roots[cur].amb);
            let fp = fingerprint(&to_rat_vec(&pushed));
            let &(next, sign) = root_lookup
                .get(&fp)
                .expect("Galois image of a simple root is not a root");
            assert_eq!(sign, 1, "Galois sends a simple root to a negative root");
            assert!(next < simple_count, "Galois image of a simple root is not simple");
            if next == j {
                break;
            }
            assert!(!assigned[next]);
            assigned[next] = true;
            orbit.push(next);
            cur = next;
        }
        simple_orbits.push(orbit);
    }

    // orbit sums of fundamental weights; Gamma-invariant by construction
    let mut orbit_weights: Vec<Vec<Rat>> = Vec::new();
    for orbit in &simple_orbits {
        let mut w = vec![Rat::zero(); ambient];
        for &j in orbit {
            for (t, a) in w.iter_mut().zip(&fund_weights[j]) {
                *t += a;
            }
        }
        let pushed = galois.act(&w);
        assert_eq!(
            fingerprint(&pushed),
            fingerprint(&w),
            "orbit weight is not Galois-invariant"
        );
        orbit_weights.push(w);
    }

    // irreducible components of the Dynkin diagram and their highest roots
    let mut comp_id: Vec<usize> = (0..simple_count).collect();
    loop {
        let mut changed = false;
        for a in 0..simple_count {
            for b in 0..simple_count {
                if a != b {
                    let c: BigInt = simples[a].0.iter().zip(&simples[b].1).map(|(x, y)| x * y).sum();
                    if !c.is_zero() && comp_id[a] != comp_id[b] {
                        let m = comp_id[a].min(comp_id[b]);
                        comp_id[a] = m;
                        comp_id[b] = m;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    {
        let mut ids: Vec<usize> = comp_id.clone();
        ids.sort_unstable();
        ids.dedup();
        for id in ids {
            components.push((0..simple_count).filter(|&j| comp_id[j] == id).collect());
        }
    }
    let mut highest_roots: Vec<usize> = Vec::new();
    for comp in &components {
        let mut best: Option<(BigInt, usize)> = None;
        for (i, r) in positive_roots.iter().enumerate() {
            let support_ok = r
                .simple_coords
                .iter()
                .enumerate()
                .all(|(j, c)| c.is_zero() || comp.contains(&j));
            if !support_ok || r.simple_coords.iter().all(|c| c.is_zero()) {
                continue;
            }
            let height: BigInt = r.simple_coords.iter().sum();
            match &best {
                Some((h, _)) if *h >= height => {}
                _ => best = Some((height, i)),
            }
        }
        let (h, idx) = best.expect("component without roots");
        // the highest root is the unique one of maximal height
        let count = positive_roots
            .iter()
            .enumerate()
            .filter(|(i, r)| {
                *i != idx
                    && r.simple_coords.iter().enumerate().all(|(j, c)| c.is_zero() || comp.contains(&j))
                    && r.simple_coords.iter().sum::<BigInt>() == h
            })
            .count();
        assert_eq!(count, 0, "highest root not unique in component");
        highest_roots.push(idx);
    }

    // functionals cutting out the rational coroot span: kernel of the
    // pairing against the simple coroots (used by the dominance test)
    let coroot_complement: Vec<Vec<Rat>> = if simple_count == 0 {
        (0..ambient)
            .map(|i| {
                let mut e = vec![Rat::zero(); ambient];
                e[i] = Rat::one();
                e
            })
            .collect()
    } else {
        let rows: Vec<Vec<Rat>> = simples
            .iter()
            .map(|s| to_rat_vec(&s.1))
            .collect();
        solve_rational(&rows, &vec![Rat::zero(); simple_count])
            .expect("homogeneous system")
            .kernel
    };
    assert_eq!(coroot_complement.len(), ambient - simple_count);

    // rational left inverse of the lattice-basis matrix (gram based); rows
    // express basis coordinates as ambient functionals on the sublattice
    let basis_left_inverse: Vec<Vec<Rat>> = {
        let rank = lattice_basis.len();
        let gram: Vec<Vec<Rat>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        lattice_basis[i]
                            .iter()
                            .zip(&lattice_basis[j])
                            .map(|(a, b)| Rat::from_integer(a * b))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let mut rows = vec![vec![Rat::zero(); ambient]; rank];
        for c in 0..ambient {
            let rhs: Vec<Rat> = (0..rank)
                .map(|k| Rat::from_integer(lattice_basis[k][c].clone()))
                .collect();
            let sol = solve_rational(&gram, &rhs).expect("gram invertible");
            for k in 0..rank {
                rows[k][c] = sol.particular[k].clone();
            }
        }
        rows
    };

    // pi_1(G) = X_*(T)/Q^vee and its Gamma-coinvariants, in lattice-basis
    // coordinates
    let basis_mat: Vec<Vec<Rat>> = (0..ambient)
        .map(|row| {
            lattice_basis
                .iter()
                .map(|b| Rat::from_integer(b[row].clone()))
                .collect()
        })
        .collect();
    let to_basis = |v: &[BigInt]| -> Vec<BigInt> {
        let sol = solve_rational(&basis_mat, &to_rat_vec(v))
            .expect("vector not in the constrained sublattice");
        sol.particular
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integral basis coordinates");
                c.to_integer()
            })
            .collect()
    };
    let rank = lattice_basis.len();
    let mut coroot_rels: Vec<Vec<BigInt>> = simples.iter().map(|s| to_basis(&s.1)).collect();
    let pi1_absolute = quotient_presentation(rank, &coroot_rels);
    for b in &lattice_basis {
        let shifted = galois.act(b);
        let diff: Vec<BigInt> = shifted.iter().zip(b).map(|(a, x)| a - x).collect();
        coroot_rels.push(to_basis(&diff));
    }
    let pi1_gamma = quotient_presentation(rank, &coroot_rels);

    let simple_perms: Vec<Perm> = simples.iter().map(|s| s.2.clone()).collect();
    let simple_names: Vec<String> = simples.iter().map(|s| s.3.clone()).collect();

    // the stored positive list must begin with the simples, in order
    for (j, s) in simples.iter().enumerate() {
        let fp = fingerprint(&to_rat_vec(&s.0));
        assert_eq!(root_lookup[&fp], (j, 1), "simple roots must lead the root list");
    }

    Ok(GroupDatum {
        key,
        ambient_rank: ambient,
        galois,
        constraints,
        lattice_basis,
        simple_count,
        positive_roots,
        simple_perms,
        root_lookup,
        rho,
        fund_weights,
        simple_orbits,
        orbit_weights,
        components,
        highest_roots,
        pi1_absolute,
        pi1_gamma,
        simple_names,
        coroot_complement,
        basis_left_inverse,
        subgroup_cache: Mutex::new(HashMap::new()),
        action_cache: Mutex::new(HashMap::new()),
    })
}

impl GroupDatum {
    pub fn key(&self) -> GroupKey {
        self.key
    }

    pub fn kind(&self) -> GroupKind {
        self.key.kind
    }

    pub fn n(&self) -> usize {
        self.key.n
    }

    pub fn d(&self) -> usize {
        self.key.d
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn galois(&self) -> &Perm {
        &self.galois
    }

    pub fn lattice_basis(&self) -> &[Vec<BigInt>] {
        &self.lattice_basis
    }

    pub fn simple_count(&self) -> usize {
        self.simple_count
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn simple_root(&self, j: usize) -> &Root {
        &self.positive_roots[j]
    }

    pub fn simple_name(&self, j: usize) -> &str {
        &self.simple_names[j]
    }

    pub fn simple_names(&self) -> &[String] {
        &self.simple_names
    }

    pub fn simple_orbits(&self) -> &[Vec<usize>] {
        &self.simple_orbits
    }

    pub fn orbit_weights(&self) -> &[Vec<Rat>] {
        &self.orbit_weights
    }

    /// Irreducible components of the Dynkin diagram (sets of simple indices).
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Positive-root index of the highest root of each component.
    pub fn highest_roots(&self) -> &[usize] {
        &self.highest_roots
    }

    /// The reflection in an arbitrary positive root, via its witness
    /// conjugation `s_root = w s_base w^{-1}`.
    pub fn reflection_in_root(&self, idx: usize) -> WeylElt {
        let r = &self.positive_roots[idx];
        let mut w = Perm::identity(self.ambient_rank);
        for &j in &r.witness_word {
            w = w.compose(&self.simple_perms[j].clone());
        }
        let perm = self.simple_perms[r.witness_base].conjugate_by(&w);
        WeylElt {
            group: self.key,
            perm,
        }
    }

    pub fn fund_weight(&self, j: usize) -> &[Rat] {
        &self.fund_weights[j]
    }

    pub fn rho(&self) -> &[Rat] {
        &self.rho
    }

    pub fn pi1_absolute(&self) -> &AbelianPresentation {
        &self.pi1_absolute
    }

    pub fn pi1_gamma(&self) -> &AbelianPresentation {
        &self.pi1_gamma
    }

    /// Rational functionals vanishing exactly on the coroot span.
    pub fn coroot_complement(&self) -> &[Vec<Rat>] {
        &self.coroot_complement
    }

    /// Rows expressing lattice-basis coordinates as ambient functionals.
    pub fn basis_left_inverse(&self) -> &[Vec<Rat>] {
        &self.basis_left_inverse
    }

    pub fn all_fund_weights(&self) -> &[Vec<Rat>] {
        &self.fund_weights
    }

    /// Does the ambient vector satisfy all lattice constraints?
    pub fn in_lattice(&self, coords: &[BigInt]) -> bool {
        coords.len() == self.ambient_rank
            && self.constraints.iter().all(|c| {
                let v: BigInt = c.iter().zip(coords).map(|(a, b)| a * b).sum();
                v.is_zero()
            })
    }

    pub fn cocharacter(&self, coords: Vec<BigInt>) -> Result<Cocharacter> {
        if !self.in_lattice(&coords) {
            return Err(Error::Constraint(format!(
                "cocharacter violates the {} lattice constraints",
                self.key
            )));
        }
        Ok(Cocharacter {
            group: self.key,
            coords,
        })
    }

    pub fn zero_cocharacter(&self) -> Cocharacter {
        Cocharacter {
            group: self.key,
            coords: vec![BigInt::zero(); self.ambient_rank],
        }
    }

    /// Lattice-basis coordinates of a constrained integral vector.
    pub fn basis_coords(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mat: Vec<Vec<Rat>> = (0..self.ambient_rank)
            .map(|row| {
                self.lattice_basis
                    .iter()
                    .map(|b| Rat::from_integer(b[row].clone()))
                    .collect()
            })
            .collect();
        let sol = solve_rational(&mat, &to_rat_vec(v)).expect("not in sublattice");
        sol.particular
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                c.to_integer()
            })
            .collect()
    }

    pub fn from_basis_coords(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coeffs.len(), self.lattice_basis.len());
        let mut v = vec![BigInt::zero(); self.ambient_rank];
        for (c, b) in coeffs.iter().zip(&self.lattice_basis) {
            for (t, x) in v.iter_mut().zip(b) {
                *t += c * x;
            }
        }
        v
    }

    fn fingerprint(&self, v: &[Rat]) -> Fingerprint {
        self.lattice_basis
            .iter()
            .map(|b| dot_rat(v, &to_rat_vec(b)))
            .collect()
    }

    /// Signed index of the root represented by the given ambient functional.
    pub fn root_index(&self, amb: &[Rat]) -> Option<(usize, i8)> {
        self.root_lookup.get(&self.fingerprint(amb)).copied()
    }

    /// Image of root `j` (positive index) under a Weyl element, as a signed
    /// root index. Per-permutation action tables are memoized.
    pub fn act_on_root(&self, w: &Perm, j: usize) -> (usize, i8) {
        let table = self.action_table(w);
        (table[j].0 as usize, table[j].1)
    }

    fn action_table(&self, w: &Perm) -> Arc<Vec<(u32, i8)>> {
        if let Some(t) = self.action_cache.lock().unwrap().get(w) {
            return t.clone();
        }
        let table: Vec<(u32, i8)> = self
            .positive_roots
            .iter()
            .map(|r| {
                let moved = w.act(&to_rat_vec(&r.amb));
                let &(idx, sign) = self
                    .root_lookup
                    .get(&self.fingerprint(&moved))
                    .expect("Weyl image of a root is a root");
                (idx as u32, sign)
            })
            .collect();
        let arc = Arc::new(table);
        self.action_cache
            .lock()
            .unwrap()
            .insert(w.clone(), arc.clone());
        arc
    }

    /// Memoized enumeration of the parabolic subgroup generated by the
    /// given simple reflections.
    pub fn subgroup(&self, generators: &[usize]) -> Arc<Vec<WeylElt>> {
        let mut key = generators.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(v) = self.subgroup_cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let mut seen: std::collections::HashSet<Perm> = std::collections::HashSet::new();
        let mut queue = std::collections::VecDeque::new();
        let id = Perm::identity(self.ambient_rank);
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(p) = queue.pop_front() {
            for &j in &key {
                let q = p.compose(&self.simple_perms[j]);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let mut out: Vec<Perm> = seen.into_iter().collect();
        out.sort();
        let arc = Arc::new(
            out.into_iter()
                .map(|perm| WeylElt {
                    group: self.key,
                    perm,
                })
                .collect::<Vec<_>>(),
        );
        self.subgroup_cache
            .lock()
            .unwrap()
            .insert(key, arc.clone());
        arc
    }

    pub fn identity_weyl(&self) -> WeylElt {
        WeylElt {
            group: self.key,
            perm: Perm::identity(self.ambient_rank),
        }
    }

    pub fn simple_reflection(&self, j: usize) -> WeylElt {
        WeylElt {
            group: self.key,
            perm: self.simple_perms[j].clone(),
        }
    }

    /// gamma as a lattice automorphism (not a Weyl element; used to twist).
    pub fn galois_of_weyl(&self, w: &WeylElt) -> WeylElt {
        WeylElt {
            group: self.key,
            perm: w.perm.conjugate_by(&self.galois),
        }
    }

    /// Pairing of a weight functional with a cocharacter.
    pub fn pair(&self, chi: &Weight, lambda: &Cocharacter) -> Result<Rat> {
        if chi.group != self.key || lambda.group != self.key {
            return Err(Error::GroupMismatch);
        }
        Ok(dot_rat_int(&chi.coords, &lambda.coords))
    }

    pub fn pair_rat(&self, chi: &Weight, lambda: &RatCocharacter) -> Result<Rat> {
        if chi.group != self.key || lambda.group != self.key {
            return Err(Error::GroupMismatch);
        }
        Ok(dot_rat(&chi.coords, &lambda.coords))
    }

    pub fn weight(&self, coords: Vec<Rat>) -> Weight {
        Weight {
            group: self.key,
            coords,
        }
    }

    pub fn rho_weight(&self) -> Weight {
        self.weight(self.rho.clone())
    }

    /// `<f, v>` for a raw functional and raw coords (internal plumbing).
    pub fn pair_raw(&self, f: &[Rat], v: &[Rat]) -> Rat {
        dot_rat(f, v)
    }

    pub fn pair_raw_int(&self, f: &[Rat], v: &[BigInt]) -> Rat {
        dot_rat_int(f, v)
    }

    /// `<alpha_j, v>` for the j-th simple root.
    pub fn pair_simple_int(&self, j: usize, v: &[BigInt]) -> Rat {
        dot_rat_int(&to_rat_vec(&self.positive_roots[j].amb), v)
    }

    /// `<alpha_j, v>` as an exact integer, `j` indexing the positive roots.
    pub fn pair_root_int(&self, j: usize, v: &[BigInt]) -> BigInt {
        self.positive_roots[j]
            .amb
            .iter()
            .zip(v)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn pair_simple_rat(&self, j: usize, v: &[Rat]) -> Rat {
        dot_rat(&to_rat_vec(&self.positive_roots[j].amb), v)
    }

    pub fn is_dominant_int(&self, v: &[BigInt]) -> bool {
        (0..self.simple_count).all(|j| !self.pair_simple_int(j, v).is_negative())
    }

    pub fn is_dominant_rat(&self, v: &[Rat]) -> bool {
        (0..self.simple_count).all(|j| !self.pair_simple_rat(j, v).is_negative())
    }

    /// Make a vector dominant; returns the dominant representative and the
    /// Weyl element `w` with `w(v) = v_dom`.
    pub fn dominantize_rat(&self, v: &[Rat]) -> (Vec<Rat>, WeylElt) {
        let mut cur = v.to_vec();
        let mut w = Perm::identity(self.ambient_rank);
        loop {
            let Some(j) = (0..self.simple_count).find(|&j| self.pair_simple_rat(j, &cur).is_negative())
            else {
                break;
            };
            cur = self.simple_perms[j].act(&cur);
            w = self.simple_perms[j].compose(&w);
        }
        (
            cur,
            WeylElt {
                group: self.key,
                perm: w,
            },
        )
    }

    pub fn dominantize(&self, v: &Cocharacter) -> (Cocharacter, WeylElt) {
        let (coords, w) = self.dominantize_rat(&to_rat_vec(&v.coords));
        let coords = coords.iter().map(|c| c.to_integer()).collect();
        (
            Cocharacter {
                group: self.key,
                coords,
            },
            w,
        )
    }

    /// Kottwitz map: image of a cocharacter in `pi_1(G)_Gamma`.
    pub fn kappa(&self, lambda: &Cocharacter) -> AbelianElt {
        self.pi1_gamma.project(&self.basis_coords(&lambda.coords))
    }

    /// Dominant cocharacter with all root pairings in {-1, 0, 1}.
    pub fn is_minuscule(&self, mu: &Cocharacter) -> bool {
        self.positive_roots.iter().all(|r| {
            let p = dot_rat_int(&to_rat_vec(&r.amb), &mu.coords);
            p.is_integer() && p.to_integer().abs() <= BigInt::one()
        })
    }

    /// Similitude value `c(lambda)` for the PEL kinds; checks consistency
    /// across all defining index pairs.
    pub fn c_value(&self, coords: &[BigInt]) -> Option<BigInt> {
        let n = self.key.n;
        match self.key.kind {
            GroupKind::ResGl => None,
            GroupKind::ResGsp => {
                let c = &coords[flat(n, 0, 0)] + &coords[flat(n, 0, n - 1)];
                for tau in 0..self.key.d {
                    for i in 0..n {
                        assert_eq!(
                            &coords[flat(n, tau, i)] + &coords[flat(n, tau, n - 1 - i)],
                            c,
                            "inconsistent similitude value"
                        );
                    }
                }
                Some(c)
            }
            GroupKind::ResGu => {
                let half = self.key.d / 2;
                let c = &coords[flat(n, 0, 0)] + &coords[flat(n, half, n - 1)];
                for tau in 0..self.key.d {
                    for i in 0..n {
                        assert_eq!(
                            &coords[flat(n, tau, i)]
                                + &coords[flat(n, (tau + half) % self.key.d, n - 1 - i)],
                            c,
                            "inconsistent similitude value"
                        );
                    }
                }
                Some(c)
            }
        }
    }

    /// Parse a cocharacter literal: semicolon-separated tau-blocks of
    /// comma-separated integers, e.g. `1,0;0,1`.
    pub fn parse_cocharacter(&self, text: &str) -> Result<Cocharacter> {
        let blocks: Vec<&str> = text.split(';').collect();
        if blocks.len() != self.key.d {
            return Err(Error::Parse(format!(
                "expected {} tau-blocks, got {}",
                self.key.d,
                blocks.len()
            )));
        }
        let mut coords = Vec::with_capacity(self.ambient_rank);
        for b in blocks {
            let entries: Vec<&str> = b.split(',').collect();
            if entries.len() != self.key.n {
                return Err(Error::Parse(format!(
                    "expected {} entries per block, got {} in {b:?}",
                    self.key.n,
                    entries.len()
                )));
            }
            for e in entries {
                let v: i64 = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer {e:?}")))?;
                coords.push(BigInt::from(v));
            }
        }
        self.cocharacter(coords)
    }

    pub fn format_coords_int(&self, coords: &[BigInt]) -> String {
        self.format_blocks(coords.iter().map(|c| c.to_string()).collect())
    }

    pub fn format_coords_rat(&self, coords: &[Rat]) -> String {
        self.format_blocks(coords.iter().map(crate::report::rat_string).collect())
    }

    fn format_blocks(&self, items: Vec<String>) -> String {
        items
            .chunks(self.key.n)
            .map(|c| c.join(","))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Group spec grammar: `gl(n=<int>,d=<int>)`, `gsp(...)`, `gu(...)`.
pub fn parse_group_spec(text: &str) -> Result<GroupDatum> {
    let text = text.trim();
    let open = text
        .find('(')
        .ok_or_else(|| Error::Parse(format!("expected '(' in group spec {text:?}")))?;
    if !text.ends_with(')') {
        return Err(Error::Parse(format!("expected ')' at end of {text:?}")));
    }
    let kind = match &text[..open] {
        "gl" => GroupKind::ResGl,
        "gsp" => GroupKind::ResGsp,
        "gu" => GroupKind::ResGu,
        other => {
            return Err(Error::Parse(format!(
                "unknown group kind {other:?} (expected gl, gsp or gu)"
            )))
        }
    };
    let mut n: Option<usize> = None;
    let mut d: Option<usize> = None;
    for part in text[open + 1..text.len() - 1].split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {v:?}")))?;
        match k.trim() {
            "n" => n = Some(v),
            "d" => d = Some(v),
            other => return Err(Error::Parse(format!("unknown parameter {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| Error::Parse("missing n".into()))?;
    let d = d.unwrap_or(1);
    build_group(kind, n, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat, ratio};

    #[test]
    fn gl2_basics() {
        let g = build_group(GroupKind::ResGl, 2, 1).unwrap();
        assert_eq!(g.simple_count(), 1);
        assert_eq!(g.positive_roots().len(), 1);
        assert_eq!(g.simple_root(0).amb, vec![int(1), int(-1)]);
        assert_eq!(g.simple_root(0).coroot, vec![int(1), int(-1)]);
        assert_eq!(g.rho(), &[ratio(1, 2), ratio(-1, 2)]);
        // pi_1(GL_2)_Gamma = Z with kappa((1,0)) = 1
        assert_eq!(g.pi1_gamma().free_rank, 1);
        assert!(g.pi1_gamma().torsion_orders.is_empty());
        let mu = g.cocharacter(vec![int(1), int(0)]).unwrap();
        let k = g.kappa(&mu);
        assert_eq!(k.free[0].clone().abs(), int(1));
    }

    #[test]
    fn gl2_pairings() {
        let g = build_group(GroupKind::ResGl, 2, 1).unwrap();
        let rho = g.rho_weight();
        let zero = g.zero_cocharacter();
        assert_eq!(g.pair(&rho, &zero).unwrap(), rat(0));
        let mu = g.cocharacter(vec![int(1), int(0)]).unwrap();
        assert_eq!(g.pair(&rho, &mu).unwrap(), ratio(1, 2));
    }

    #[test]
    fn gsp4_structure() {
        let g = build_group(GroupKind::ResGsp, 4, 1).unwrap();
        assert_eq!(g.simple_count(), 2);
        assert_eq!(g.positive_roots().len(), 4);
        // rho evaluates as lambda -> 2 l1 + l2 - 3/2 c(lambda)
        let mu = g.cocharacter(vec![int(1), int(1), int(0), int(0)]).unwrap();
        assert_eq!(g.pair(&g.rho_weight(), &mu).unwrap(), ratio(3, 2));
        let nu = g.cocharacter(vec![int(2), int(1), int(1), int(0)]).unwrap();
        // 2*2 + 1 - 3/2*2 = 2
        assert_eq!(g.pair(&g.rho_weight(), &nu).unwrap(), rat(2));
        assert_eq!(g.c_value(&mu.coords), Some(int(1)));
        // lattice rank d*n/2 + 1 = 3
        assert_eq!(g.lattice_basis().len(), 3);
        // pi_1(GSp_4)_Gamma = Z
        assert_eq!(g.pi1_gamma().free_rank, 1);
        assert!(g.pi1_gamma().torsion_orders.is_empty());
    }

    #[test]
    fn gsp_rejects_odd_n() {
        assert!(build_group(GroupKind::ResGsp, 3, 1).is_err());
    }

    #[test]
    fn gu_rejects_odd_d() {
        assert!(build_group(GroupKind::ResGu, 3, 1).is_err());
    }

    #[test]
    fn gl3_d2_orbits() {
        let g = build_group(GroupKind::ResGl, 3, 2).unwrap();
        // 4 simple roots in 2 Galois orbits of size 2
        assert_eq!(g.simple_count(), 4);
        assert_eq!(g.simple_orbits().len(), 2);
        assert!(g.simple_orbits().iter().all(|o| o.len() == 2));
        // pi_1(G) = Z^2; its Galois coinvariants collapse to Z
        assert_eq!(g.pi1_absolute().free_rank, 2);
        assert!(g.pi1_absolute().torsion_orders.is_empty());
        assert_eq!(g.pi1_gamma().free_rank, 1);
    }

    #[test]
    fn gu_structure() {
        let g = build_group(GroupKind::ResGu, 3, 2).unwrap();
        // A_2 per slot-pair: 2 simple roots, 3 positive roots
        assert_eq!(g.simple_count(), 2);
        assert_eq!(g.positive_roots().len(), 3);
        assert_eq!(g.lattice_basis().len(), 4); // dn/2 + 1
        let g42 = build_group(GroupKind::ResGu, 2, 4).unwrap();
        assert_eq!(g42.simple_count(), 2);
        assert_eq!(g42.simple_orbits().len(), 1);
    }

    #[test]
    fn dominantize_examples() {
        let g = build_group(GroupKind::ResGl, 2, 1).unwrap();
        let v = g.cocharacter(vec![int(0), int(1)]).unwrap();
        let (dom, w) = g.dominantize(&v);
        assert_eq!(dom.coords, vec![int(1), int(0)]);
        assert!(!w.perm.is_identity());
        let already = g.cocharacter(vec![int(2), int(0)]).unwrap();
        let (dom2, w2) = g.dominantize(&already);
        assert_eq!(dom2, already);
        assert!(w2.perm.is_identity());

        let g3 = build_group(GroupKind::ResGl, 3, 1).unwrap();
        let v3 = g3.cocharacter(vec![int(0), int(1), int(2)]).unwrap();
        let (dom3, w3) = g3.dominantize(&v3);
        assert_eq!(dom3.coords, vec![int(2), int(1), int(0)]);
        assert_eq!(w3.perm.act(&v3.coords), dom3.coords);
    }

    #[test]
    fn reflections_permute_positive_roots() {
        for g in [
            build_group(GroupKind::ResGl, 3, 1).unwrap(),
            build_group(GroupKind::ResGsp, 4, 1).unwrap(),
            build_group(GroupKind::ResGu, 3, 2).unwrap(),
        ] {
            for j in 0..g.simple_count() {
                let s = g.simple_reflection(j);
                let mut flipped = 0;
                for r in 0..g.positive_roots().len() {
                    let (idx, sign) = g.act_on_root(&s.perm, r);
                    if sign < 0 {
                        assert_eq!(idx, j, "s_j must negate only alpha_j among positives");
                        flipped += 1;
                    }
                }
                assert_eq!(flipped, 1);
            }
        }
    }

    #[test]
    fn dominance_matches_appendix_inequalities() {
        // Appendix cross-check on random constrained vectors
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for g in [
            build_group(GroupKind::ResGl, 3, 2).unwrap(),
            build_group(GroupKind::ResGsp, 4, 1).unwrap(),
            build_group(GroupKind::ResGu, 3, 2).unwrap(),
        ] {
            for _ in 0..100 {
                let coeffs: Vec<BigInt> = (0..g.lattice_basis().len())
                    .map(|_| int(rng.gen_range(-4..5)))
                    .collect();
                let v = g.from_basis_coords(&coeffs);
                let dominant = g.is_dominant_int(&v);
                // appendix description: per-slot weakly descending entries
                let n = g.n();
                let explicit = v
                    .chunks(n)
                    .all(|block| block.windows(2).all(|w| w[0] >= w[1]));
                assert_eq!(dominant, explicit, "{} {:?}", g.key(), v);
            }
        }
    }

    #[test]
    fn parse_group_and_cocharacter() {
        let g = parse_group_spec("gl(n=2,d=2)").unwrap();
        assert_eq!(g.key().n, 2);
        assert_eq!(g.key().d, 2);
        let c = g.parse_cocharacter("1,0;0,1").unwrap();
        assert_eq!(c.coords, vec![int(1), int(0), int(0), int(1)]);
        assert!(g.parse_cocharacter("1,0").is_err());
        assert!(parse_group_spec("gu(n=3,d=1)").is_err());
        assert!(parse_group_spec("su(n=3,d=1)").is_err());
    }
}
