//! The finite absolute Weyl group: multiplication, lengths, orbit and
//! subgroup enumeration, and the minimal-coset-representative calculus.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::perm::Perm;
use crate::root_datum::{Cocharacter, GroupDatum, RatCocharacter, WeylElt};
use crate::{Error, Result};

impl WeylElt {
    pub fn is_identity(&self) -> bool {
        self.perm.is_identity()
    }
}

/// Which side a coset decomposition is taken on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetSide {
    Left,
    Right,
}

/// Product `u v` in the standard composition order: `(u v)(x) = u(v(x))`.
pub fn multiply(g: &GroupDatum, u: &WeylElt, v: &WeylElt) -> Result<WeylElt> {
    if u.group != g.key() || v.group != g.key() {
        return Err(Error::GroupMismatch);
    }
    Ok(WeylElt {
        group: g.key(),
        perm: u.perm.compose(&v.perm),
    })
}

pub fn invert(g: &GroupDatum, u: &WeylElt) -> WeylElt {
    WeylElt {
        group: g.key(),
        perm: u.perm.inverse(),
    }
}

pub fn act(g: &GroupDatum, u: &WeylElt, lambda: &Cocharacter) -> Result<Cocharacter> {
    if u.group != g.key() || lambda.group != g.key() {
        return Err(Error::GroupMismatch);
    }
    Ok(Cocharacter {
        group: g.key(),
        coords: u.perm.act(&lambda.coords),
    })
}

pub fn act_rat(g: &GroupDatum, u: &WeylElt, lambda: &RatCocharacter) -> RatCocharacter {
    RatCocharacter {
        group: g.key(),
        coords: u.perm.act(&lambda.coords),
    }
}

/// Length = number of positive roots sent to negative roots.
pub fn length_finite(g: &GroupDatum, w: &WeylElt) -> usize {
    (0..g.positive_roots().len())
        .filter(|&j| g.act_on_root(&w.perm, j).1 < 0)
        .count()
}

/// A reduced word for `w` in the simple reflections, by left-descent
/// peeling: while `w != id` there is a simple `alpha` with `w^{-1}(alpha)`
/// negative, and `w = s_alpha * (s_alpha w)` shortens.
pub fn reduced_word(g: &GroupDatum, w: &WeylElt) -> Vec<usize> {
    let mut word = Vec::new();
    let mut cur = w.clone();
    while !cur.perm.is_identity() {
        let inv = cur.perm.inverse();
        let j = (0..g.simple_count())
            .find(|&j| g.act_on_root(&inv, j).1 < 0)
            .expect("non-identity element with no descent");
        word.push(j);
        cur = WeylElt {
            group: g.key(),
            perm: g.simple_reflection(j).perm.compose(&cur.perm),
        };
    }
    word
}

/// Evaluate a word in simple reflections.
pub fn from_word(g: &GroupDatum, word: &[usize]) -> WeylElt {
    let mut perm = Perm::identity(g.ambient_rank());
    for &j in word {
        perm = perm.compose(&g.simple_reflection(j).perm);
    }
    WeylElt {
        group: g.key(),
        perm,
    }
}

/// The subgroup generated by the given simple reflections (memoized).
pub fn enumerate_subgroup(g: &GroupDatum, generators: &[usize]) -> Arc<Vec<WeylElt>> {
    g.subgroup(generators)
}

/// The full Weyl group (memoized).
pub fn enumerate_weyl_group(g: &GroupDatum) -> Arc<Vec<WeylElt>> {
    g.subgroup(&(0..g.simple_count()).collect::<Vec<_>>())
}

/// Weyl orbit of a cocharacter.
pub fn orbit(g: &GroupDatum, v: &Cocharacter) -> Vec<Cocharacter> {
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(v.coords.clone());
    queue.push_back(v.coords.clone());
    while let Some(c) = queue.pop_front() {
        for j in 0..g.simple_count() {
            let moved = g.simple_reflection(j).perm.act(&c);
            if seen.insert(moved.clone()) {
                queue.push_back(moved);
            }
        }
    }
    let mut out: Vec<Vec<BigInt>> = seen.into_iter().collect();
    out.sort();
    out.into_iter()
        .map(|coords| Cocharacter {
            group: g.key(),
            coords,
        })
        .collect()
}

/// Simple reflections fixing a dominant cocharacter: `{s_alpha : <alpha, mu> = 0}`.
pub fn stabilizer_simples(g: &GroupDatum, mu: &Cocharacter) -> Result<Vec<usize>> {
    if !g.is_dominant_int(&mu.coords) {
        return Err(Error::Precondition("stabilizer_simples needs dominant input".into()));
    }
    Ok((0..g.simple_count())
        .filter(|&j| g.pair_simple_int(j, &mu.coords).is_zero())
        .collect())
}

/// One-sided minimal coset representative. For `side = Left` decomposes
/// `w = w_J * x` with `x` the unique shortest element of `W_J w`; for
/// `Right`, `w = x * w_J` with `x` shortest in `w W_J`. Length additivity
/// is checked.
pub fn min_coset_rep(
    g: &GroupDatum,
    w: &WeylElt,
    j_set: &[usize],
    side: CosetSide,
) -> (WeylElt, WeylElt) {
    let subgroup = enumerate_subgroup(g, j_set);
    let mut best: Option<(usize, WeylElt, WeylElt)> = None;
    for u in subgroup.iter() {
        let x = match side {
            CosetSide::Left => WeylElt {
                group: g.key(),
                perm: u.perm.compose(&w.perm),
            },
            CosetSide::Right => WeylElt {
                group: g.key(),
                perm: w.perm.compose(&u.perm),
            },
        };
        let l = length_finite(g, &x);
        if best.as_ref().map_or(true, |(bl, _, _)| l < *bl) {
            best = Some((l, x, u.clone()));
        }
    }
    let (lx, x, u) = best.expect("nonempty coset");
    // w = u^{-1} x (left) resp. x u^{-1} (right); u^{-1} is in W_J
    let w_j = invert(g, &u);
    let total = length_finite(g, w);
    assert_eq!(
        total,
        length_finite(g, &w_j) + lx,
        "coset length additivity failed"
    );
    (w_j, x)
}

/// Minimal double coset representative: `w = w_J * u * w_kp` with `u` the
/// unique shortest element of `W_J w W_K`, `K' = K cap u^{-1} J u`, and the
/// third factor in `W_K`, normalized to be shortest in its `W_K'`-coset.
/// Full length additivity holds.
pub struct DoubleCosetDecomposition {
    pub w_j: WeylElt,
    pub u: WeylElt,
    pub w_kp: WeylElt,
    pub k_prime: Vec<usize>,
}

pub fn min_double_coset_rep(
    g: &GroupDatum,
    w: &WeylElt,
    j_set: &[usize],
    k_set: &[usize],
) -> DoubleCosetDecomposition {
    let wj_group = enumerate_subgroup(g, j_set);
    let wk_group = enumerate_subgroup(g, k_set);
    let mut u_best: Option<(usize, WeylElt)> = None;
    for a in wj_group.iter() {
        let aw = a.perm.compose(&w.perm);
        for b in wk_group.iter() {
            let x = WeylElt {
                group: g.key(),
                perm: aw.compose(&b.perm),
            };
            let l = length_finite(g, &x);
            if u_best.as_ref().map_or(true, |(bl, bu)| {
                l < *bl || (l == *bl && x.perm < bu.perm)
            }) {
                u_best = Some((l, x));
            }
        }
    }
    let (lu, u) = u_best.expect("nonempty double coset");
    // K' = {k in K : u k u^{-1} in J as simple reflections}
    let j_perms: HashSet<Perm> = j_set
        .iter()
        .map(|&j| g.simple_reflection(j).perm.clone())
        .collect();
    let k_prime: Vec<usize> = k_set
        .iter()
        .copied()
        .filter(|&k| {
            let conj = g.simple_reflection(k).perm.conjugate_by(&u.perm);
            j_perms.contains(&conj)
        })
        .collect();
    let total = length_finite(g, w);
    let u_inv = u.perm.inverse();
    let wk_perms: HashSet<Perm> = wk_group.iter().map(|x| x.perm.clone()).collect();
    let mut best: Option<(usize, usize, WeylElt, WeylElt)> = None;
    for a in wj_group.iter() {
        // w = a * u * b with b = u^{-1} a^{-1} w, b in W_K
        let b_perm = u_inv.compose(&a.perm.inverse()).compose(&w.perm);
        if !wk_perms.contains(&b_perm) {
            continue;
        }
        let b = WeylElt {
            group: g.key(),
            perm: b_perm,
        };
        let (la, lb) = (length_finite(g, a), length_finite(g, &b));
        if la + lu + lb != total {
            continue;
        }
        if best
            .as_ref()
            .map_or(true, |(bb, ba, _, _)| (lb, la) < (*bb, *ba))
        {
            best = Some((lb, la, a.clone(), b));
        }
    }
    let (_, _, a, b) = best.expect("no length-additive double coset decomposition found");
    DoubleCosetDecomposition {
        w_j: a,
        u,
        w_kp: b,
        k_prime,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::root_datum::{build_group, GroupKind};

    #[test]
    fn group_axioms_and_reflection_formula() {
        let g = build_group(GroupKind::ResGl, 3, 1).unwrap();
        let s1 = g.simple_reflection(0);
        let s2 = g.simple_reflection(1);
        let u = multiply(&g, &s1, &s2).unwrap();
        let uinv = invert(&g, &u);
        assert!(multiply(&g, &u, &uinv).unwrap().is_identity());
        // composing the two transpositions maps (1,0,0) to (0,0,1);
        // in our composition order that product is s2 * s1
        let v = g.cocharacter(vec![int(1), int(0), int(0)]).unwrap();
        let prod = multiply(&g, &s2, &s1).unwrap();
        let moved = act(&g, &prod, &v).unwrap();
        assert_eq!(moved.coords, vec![int(0), int(0), int(1)]);
        assert_eq!(act(&g, &u, &v).unwrap().coords, vec![int(0), int(1), int(0)]);
        // reflection formula s_alpha(v) = v - <alpha, v> alpha^vee
        let pair = g.pair_simple_int(0, &v.coords);
        let formula: Vec<BigInt> = v
            .coords
            .iter()
            .zip(&g.simple_root(0).coroot)
            .map(|(a, c)| a - pair.to_integer() * c)
            .collect();
        assert_eq!(act(&g, &s1, &v).unwrap().coords, formula);
    }

    #[test]
    fn lengths() {
        let g = build_group(GroupKind::ResGl, 3, 1).unwrap();
        assert_eq!(length_finite(&g, &g.identity_weyl()), 0);
        assert_eq!(length_finite(&g, &g.simple_reflection(0)), 1);
        let w0 = from_word(&g, &[0, 1, 0]);
        assert_eq!(length_finite(&g, &w0), 3);
        assert_eq!(reduced_word(&g, &w0).len(), 3);
    }

    #[test]
    fn weyl_group_orders() {
        let cases = [
            (build_group(GroupKind::ResGl, 3, 1).unwrap(), 6),
            (build_group(GroupKind::ResGl, 2, 2).unwrap(), 4),
            (build_group(GroupKind::ResGsp, 4, 1).unwrap(), 8),
            (build_group(GroupKind::ResGu, 3, 2).unwrap(), 6),
            (build_group(GroupKind::ResGsp, 2, 2).unwrap(), 4),
        ];
        for (g, expected) in cases {
            assert_eq!(enumerate_weyl_group(&g).len(), expected, "{}", g.key());
        }
    }

    #[test]
    fn dominant_orbit_representative_unique() {
        let g = build_group(GroupKind::ResGsp, 4, 1).unwrap();
        let v = g.cocharacter(vec![int(0), int(1), int(0), int(1)]).unwrap();
        let orb = orbit(&g, &v);
        let dominants: Vec<_> = orb
            .iter()
            .filter(|c| g.is_dominant_int(&c.coords))
            .collect();
        assert_eq!(dominants.len(), 1);
        let (dom, w) = g.dominantize(&v);
        assert_eq!(&dom, dominants[0]);
        assert_eq!(w.perm.act(&v.coords), dom.coords);
    }

    #[test]
    fn stabilizers() {
        let g = build_group(GroupKind::ResGl, 3, 1).unwrap();
        let regular = g.cocharacter(vec![int(2), int(1), int(0)]).unwrap();
        assert!(stabilizer_simples(&g, &regular).unwrap().is_empty());
        let zero = g.zero_cocharacter();
        assert_eq!(stabilizer_simples(&g, &zero).unwrap(), vec![0, 1]);
        let mu = g.cocharacter(vec![int(1), int(1), int(0)]).unwrap();
        assert_eq!(stabilizer_simples(&g, &mu).unwrap(), vec![0]);
        let non_dom = g.cocharacter(vec![int(0), int(1), int(0)]).unwrap();
        assert!(stabilizer_simples(&g, &non_dom).is_err());
    }

    #[test]
    fn coset_representatives() {
        let g = build_group(GroupKind::ResGl, 3, 1).unwrap();
        let w = from_word(&g, &[0, 1]); // s1 s2
        // J = {} gives the trivial decomposition
        let (w_j, x) = min_coset_rep(&g, &w, &[], CosetSide::Left);
        assert!(w_j.is_identity());
        assert_eq!(x.perm, w.perm);
        // J = S makes the representative trivial
        let (_, x) = min_coset_rep(&g, &w, &[0, 1], CosetSide::Left);
        assert!(x.is_identity());
        // A_2, J = {s1}, w = s1 s2: w_J = s1, rep = s2, lengths 1 + 1 = 2
        let (w_j, x) = min_coset_rep(&g, &w, &[0], CosetSide::Left);
        assert_eq!(w_j.perm, g.simple_reflection(0).perm);
        assert_eq!(x.perm, g.simple_reflection(1).perm);
    }

    #[test]
    fn double_coset_additivity() {
        let g = build_group(GroupKind::ResGsp, 4, 1).unwrap();
        for w in enumerate_weyl_group(&g).iter() {
            for j_set in [vec![], vec![0], vec![1], vec![0, 1]] {
                for k_set in [vec![], vec![0], vec![1]] {
                    let dec = min_double_coset_rep(&g, &w, &j_set, &k_set);
                    let recomposed = dec
                        .w_j
                        .perm
                        .compose(&dec.u.perm)
                        .compose(&dec.w_kp.perm);
                    assert_eq!(recomposed, w.perm);
                    assert_eq!(
                        length_finite(&g, &w),
                        length_finite(&g, &dec.w_j)
                            + length_finite(&g, &dec.u)
                            + length_finite(&g, &dec.w_kp)
                    );
                }
            }
        }
    }
}
