//! Exact integer and rational linear algebra: Smith normal form, finitely
//! generated abelian group presentations, and rational linear solving.
//!
//! Everything here is exact; no operation rounds. Matrices are desk-scale
//! (at most a few dozen rows), so the implementations favour simplicity
//! over asymptotics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for `BigInt` construction from machine integers.
pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Rational from a machine integer.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(int(v))
}

/// Rational p/q from machine integers, q != 0.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}

/// Fractional part `{x} = x - floor(x)`, in `[0, 1)`.
pub fn frac_part(x: &Rat) -> Rat {
    x - x.floor()
}

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)].clone(), self[(b, j)].clone());
            self[(a, j)] = y;
            self[(b, j)] = x;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            let (x, y) = (self[(i, a)].clone(), self[(i, b)].clone());
            self[(i, a)] = y;
            self[(i, b)] = x;
        }
    }

    /// row[a] += c * row[b]
    fn add_row(&mut self, a: usize, b: usize, c: &BigInt) {
        for j in 0..self.cols {
            let t = c * &self[(b, j)];
            self[(a, j)] += t;
        }
    }

    /// col[a] += c * col[b]
    fn add_col(&mut self, a: usize, b: usize, c: &BigInt) {
        for i in 0..self.rows {
            let t = c * &self[(i, b)];
            self[(i, a)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -self[(a, j)].clone();
            self[(a, j)] = t;
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let t = -self[(i, a)].clone();
            self[(i, a)] = t;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// Result of `smith_normal_form`: `u * m * v = s` with `u`, `v` unimodular
/// and `s` diagonal with nonnegative entries, each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

/// Smith normal form by row/column reduction, picking the pivot of smallest
/// absolute value at each step to keep coefficients small.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut u_inv = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let mut v_inv = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    // u * m * v = s is maintained throughout: a row op R (s <- R s) updates
    // u <- R u, u_inv <- u_inv R^{-1}; a column op C (s <- s C) updates
    // v <- v C, v_inv <- C^{-1} v_inv.
    let mut t = 0;
    while t < n {
        // smallest nonzero pivot in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..s.rows {
            for j in t..s.cols {
                if !s[(i, j)].is_zero()
                    && pivot.map_or(true, |(pi, pj)| s[(i, j)].abs() < s[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
        }
        if pj != t {
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }

        let mut clean = true;
        for i in t + 1..s.rows {
            if !s[(i, t)].is_zero() {
                let q = -(&s[(i, t)] / &s[(t, t)]);
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                u_inv.add_col(t, i, &(-&q));
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..s.cols {
            if !s[(t, j)].is_zero() {
                let q = -(&s[(t, j)] / &s[(t, t)]);
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                v_inv.add_row(t, j, &(-&q));
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue; // remainders left; re-pick a smaller pivot
        }

        // divisibility: fold any non-multiple into row t and keep reducing
        let mut divides = true;
        'outer: for i in t + 1..s.rows {
            for j in t + 1..s.cols {
                if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                    s.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                    u_inv.add_col(i, t, &-BigInt::one());
                    divides = false;
                    break 'outer;
                }
            }
        }
        if divides {
            t += 1;
        }
    }
    SmithDecomposition { s, u, v, u_inv, v_inv }
}

/// Coordinate kinds of a presented abelian group, in the order of the
/// Smith-transformed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
enum CoordKind {
    Dead,
    Torsion(BigInt),
    Free,
}

/// Presentation of `Z^rank / <relations>` as `Z^free_rank + sum Z/t_i`,
/// together with the projection map and an integral section.
#[derive(Clone, Debug)]
pub struct AbelianPresentation {
    pub ambient_rank: usize,
    pub free_rank: usize,
    /// Torsion orders, each > 1, each dividing the next.
    pub torsion_orders: Vec<BigInt>,
    kinds: Vec<CoordKind>,
    u: IntMatrix,
    u_inv: IntMatrix,
}

/// Element of a presented abelian group: torsion coordinates reduced into
/// `[0, t_i)`, followed by free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianElt {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

impl AbelianElt {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(|t| t.is_zero()) && self.free.iter().all(|t| t.is_zero())
    }
}

/// Present the quotient of `Z^ambient_rank` by the span of `relations`.
pub fn quotient_presentation(ambient_rank: usize, relations: &[Vec<BigInt>]) -> AbelianPresentation {
    for r in relations {
        assert_eq!(r.len(), ambient_rank, "relation of wrong length");
    }
    // relations as columns
    let mut a = IntMatrix::zero(ambient_rank, relations.len().max(1));
    for (j, r) in relations.iter().enumerate() {
        for i in 0..ambient_rank {
            a[(i, j)] = r[i].clone();
        }
    }
    let dec = smith_normal_form(&a);
    let mut kinds = Vec::with_capacity(ambient_rank);
    let mut torsion_orders = Vec::new();
    for i in 0..ambient_rank {
        let d = if i < dec.s.cols { dec.s[(i, i)].clone() } else { BigInt::zero() };
        if d.is_zero() {
            kinds.push(CoordKind::Free);
        } else if d.is_one() {
            kinds.push(CoordKind::Dead);
        } else {
            torsion_orders.push(d.clone());
            kinds.push(CoordKind::Torsion(d));
        }
    }
    let free_rank = kinds.iter().filter(|k| matches!(k, CoordKind::Free)).count();
    AbelianPresentation {
        ambient_rank,
        free_rank,
        torsion_orders,
        kinds,
        u: dec.u,
        u_inv: dec.u_inv,
    }
}

impl AbelianPresentation {
    /// Image of an ambient vector in the presented group.
    pub fn project(&self, x: &[BigInt]) -> AbelianElt {
        assert_eq!(x.len(), self.ambient_rank);
        let y = self.u.mul_vec(x);
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (yi, kind) in y.iter().zip(&self.kinds) {
            match kind {
                CoordKind::Dead => {}
                CoordKind::Torsion(t) => torsion.push(yi.mod_floor_by(t)),
                CoordKind::Free => free.push(yi.clone()),
            }
        }
        AbelianElt { torsion, free }
    }

    /// Rational image of the free coordinates; torsion is not rationally
    /// meaningful and is dropped. Agrees with `project(..).free` on
    /// integral input.
    pub fn project_free_rational(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.ambient_rank);
        let mut free = Vec::new();
        for (i, kind) in self.kinds.iter().enumerate() {
            if matches!(kind, CoordKind::Free) {
                let val: Rat = self
                    .u
                    .row(i)
                    .iter()
                    .zip(x)
                    .map(|(a, b)| Rat::from_integer(a.clone()) * b)
                    .sum();
                free.push(val);
            }
        }
        free
    }

    /// The ambient rational functionals computing the free coordinates.
    pub fn free_functionals(&self) -> Vec<Vec<Rat>> {
        self.kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| matches!(k, CoordKind::Free))
            .map(|(i, _)| {
                self.u
                    .row(i)
                    .iter()
                    .map(|a| Rat::from_integer(a.clone()))
                    .collect()
            })
            .collect()
    }

    /// An integral ambient preimage of the given group element.
    pub fn section(&self, elt: &AbelianElt) -> Vec<BigInt> {
        assert_eq!(elt.torsion.len(), self.torsion_orders.len());
        assert_eq!(elt.free.len(), self.free_rank);
        let mut y = vec![BigInt::zero(); self.ambient_rank];
        let mut ti = 0;
        let mut fi = 0;
        for (i, kind) in self.kinds.iter().enumerate() {
            match kind {
                CoordKind::Dead => {}
                CoordKind::Torsion(_) => {
                    y[i] = elt.torsion[ti].clone();
                    ti += 1;
                }
                CoordKind::Free => {
                    y[i] = elt.free[fi].clone();
                    fi += 1;
                }
            }
        }
        self.u_inv.mul_vec(&y)
    }
}

trait ModFloor {
    fn mod_floor_by(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor_by(&self, m: &BigInt) -> BigInt {
        num_integer::Integer::mod_floor(self, m)
    }
}

/// Solution of an exact rational linear system `A x = b`.
#[derive(Clone, Debug)]
pub struct RationalSolution {
    pub particular: Vec<Rat>,
    pub kernel: Vec<Vec<Rat>>,
}

/// Solve `A x = b` over the rationals. Returns `None` when inconsistent,
/// otherwise a particular solution plus a kernel basis.
pub fn solve_rational(a: &[Vec<Rat>], b: &[Rat]) -> Option<RationalSolution> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "dimension mismatch");
    let cols = a.first().map_or(0, |r| r.len());
    assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");

    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut rhs = b.to_vec();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        rhs.swap(row, p);
        let inv = m[row][col].clone();
        for j in col..cols {
            let t = &m[row][j] / &inv;
            m[row][j] = t;
        }
        rhs[row] = &rhs[row] / &inv;
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..cols {
                    let t = &m[r][j] - &f * &m[row][j];
                    m[r][j] = t;
                }
                let t = &rhs[r] - &f * &rhs[row];
                rhs[r] = t;
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    // consistency
    for r in row..rows {
        if !rhs[r].is_zero() {
            return None;
        }
    }
    let pivot_cols: std::collections::HashSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut particular = vec![Rat::zero(); cols];
    for (r, &pc) in pivot_col_of_row.iter().enumerate() {
        particular[pc] = rhs[r].clone();
    }
    let mut kernel = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut k = vec![Rat::zero(); cols];
        k[free] = Rat::one();
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            k[pc] = -m[r][free].clone();
        }
        kernel.push(k);
    }
    Some(RationalSolution { particular, kernel })
}

/// Integral basis of the kernel of the integer matrix with the given rows.
/// The kernel of an integer matrix is saturated, so this is a basis of the
/// full lattice of integral solutions.
pub fn integral_kernel_basis(rows: &[Vec<BigInt>], ambient: usize) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return (0..ambient)
            .map(|i| {
                let mut e = vec![BigInt::zero(); ambient];
                e[i] = BigInt::one();
                e
            })
            .collect();
    }
    let c = IntMatrix::from_rows(rows.to_vec());
    assert_eq!(c.cols, ambient);
    let dec = smith_normal_form(&c);
    let rank = (0..c.rows.min(c.cols)).take_while(|&i| !dec.s[(i, i)].is_zero()).count();
    // x in ker(C) iff the first `rank` coordinates of v^{-1} x vanish, so
    // the last columns of v form a kernel basis.
    (rank..c.cols)
        .map(|j| (0..c.cols).map(|i| dec.v[(i, j)].clone()).collect())
        .collect()
}

pub fn dot_rat(f: &[Rat], v: &[Rat]) -> Rat {
    assert_eq!(f.len(), v.len());
    f.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn dot_rat_int(f: &[Rat], v: &[BigInt]) -> Rat {
    assert_eq!(f.len(), v.len());
    f.iter().zip(v).map(|(a, b)| a * Rat::from_integer(b.clone())).sum()
}

pub fn to_rat_vec(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Desk-scale conversion; panics on out-of-range values.
pub fn big_to_i64(v: &BigInt) -> i64 {
    num_traits::ToPrimitive::to_i64(v).expect("value out of i64 range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    fn check_snf(m: &IntMatrix) {
        let dec = smith_normal_form(m);
        // u m v = s
        assert_eq!(dec.u.mul(m).mul(&dec.v), dec.s);
        // unimodularity via the tracked inverses
        assert_eq!(dec.u.mul(&dec.u_inv), IntMatrix::identity(m.rows));
        assert_eq!(dec.v.mul(&dec.v_inv), IntMatrix::identity(m.cols));
        // diagonal, nonnegative, divisibility chain
        for i in 0..dec.s.rows {
            for j in 0..dec.s.cols {
                if i != j {
                    assert!(dec.s[(i, j)].is_zero());
                }
            }
        }
        let n = m.rows.min(m.cols);
        for i in 0..n {
            assert!(!dec.s[(i, i)].is_negative());
            if i + 1 < n && !dec.s[(i, i)].is_zero() {
                let next = &dec.s[(i + 1, i + 1)];
                assert!((next % &dec.s[(i, i)]).is_zero() || next.is_zero() == false && (next % &dec.s[(i, i)]).is_zero(),
                    "divisibility chain broken");
            }
            if i + 1 < n && dec.s[(i, i)].is_zero() {
                assert!(dec.s[(i + 1, i + 1)].is_zero());
            }
        }
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(2);
        let dec = smith_normal_form(&m);
        assert_eq!(dec.s, IntMatrix::identity(2));
        check_snf(&m);
    }

    #[test]
    fn snf_zero() {
        let m = IntMatrix::zero(2, 3);
        let dec = smith_normal_form(&m);
        assert_eq!(dec.s, IntMatrix::zero(2, 3));
        check_snf(&m);
    }

    #[test]
    fn snf_two_by_two() {
        let m = mat(&[&[2, 4], &[6, 8]]);
        let dec = smith_normal_form(&m);
        assert_eq!(dec.s[(0, 0)], int(2));
        assert_eq!(dec.s[(1, 1)], int(4));
        check_snf(&m);
    }

    #[test]
    fn presentation_gl2_pi1() {
        // rank 2, relation (1,-1): pi_1(GL_2) = Z
        let p = quotient_presentation(2, &[vec![int(1), int(-1)]]);
        assert_eq!(p.free_rank, 1);
        assert!(p.torsion_orders.is_empty());
        let img = p.project(&[int(1), int(0)]);
        assert_eq!(img.free.len(), 1);
        assert!(!img.free[0].is_zero());
        // section is a genuine preimage
        let back = p.project(&p.section(&img));
        assert_eq!(back, img);
    }

    #[test]
    fn presentation_torsion() {
        let p = quotient_presentation(1, &[vec![int(2)]]);
        assert_eq!(p.free_rank, 0);
        assert_eq!(p.torsion_orders, vec![int(2)]);
        assert!(!p.project(&[int(1)]).is_zero());
        assert!(p.project(&[int(2)]).is_zero());
    }

    #[test]
    fn presentation_free() {
        let p = quotient_presentation(2, &[]);
        assert_eq!(p.free_rank, 2);
        assert!(p.torsion_orders.is_empty());
    }

    #[test]
    fn presentation_kills_exactly_relation_span() {
        let rels = vec![vec![int(2), int(4), int(0)], vec![int(0), int(6), int(3)]];
        let p = quotient_presentation(3, &rels);
        for r in &rels {
            assert!(p.project(r).is_zero(), "relation not annihilated");
        }
        // a vector outside the span must survive
        assert!(!p.project(&[int(1), int(0), int(0)]).is_zero());
    }

    #[test]
    fn solve_identity() {
        let a = vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]];
        let b = vec![rat(3), rat(-7)];
        let sol = solve_rational(&a, &b).unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn solve_underdetermined() {
        let a = vec![vec![rat(1), rat(1)]];
        let b = vec![rat(3)];
        let sol = solve_rational(&a, &b).unwrap();
        assert_eq!(&sol.particular[0] + &sol.particular[1], rat(3));
        assert_eq!(sol.kernel.len(), 1);
        assert_eq!(&sol.kernel[0][0] + &sol.kernel[0][1], rat(0));
    }

    #[test]
    fn solve_cartan_a2() {
        // Cartan matrix of A_2, b = (1,0) -> x = (2/3, 1/3)
        let a = vec![vec![rat(2), rat(-1)], vec![rat(-1), rat(2)]];
        let b = vec![rat(1), rat(0)];
        let sol = solve_rational(&a, &b).unwrap();
        assert_eq!(sol.particular, vec![ratio(2, 3), ratio(1, 3)]);
    }

    #[test]
    fn solve_inconsistent() {
        let a = vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]];
        let b = vec![rat(1), rat(3)];
        assert!(solve_rational(&a, &b).is_none());
    }

    #[test]
    fn kernel_basis_of_constraints() {
        // x + y = 0 in Z^2
        let basis = integral_kernel_basis(&[vec![int(1), int(1)]], 2);
        assert_eq!(basis.len(), 1);
        assert_eq!(&basis[0][0] + &basis[0][1], int(0));
        assert!(basis[0][0].abs().is_one());
    }

    proptest! {
        #[test]
        fn rational_round_trip(a in -40i64..40, b in 1i64..20, c in -40i64..40, d in 1i64..20) {
            let x = ratio(a, b);
            let y = ratio(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert_eq!(&(&x * &y) + &(&x * &-&y), rat(0));
        }

        #[test]
        fn snf_random(entries in proptest::collection::vec(-9i64..10, 12)) {
            let m = IntMatrix::from_rows(
                entries.chunks(4).map(|r| r.iter().map(|&v| int(v)).collect()).collect());
            check_snf(&m);
        }
    }
}
