//! Permutations of the ambient coordinate set, the common representation of
//! finite Weyl group elements and the Galois generator for all three group
//! families.

/// A permutation `i -> map[i]` of `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(len: usize) -> Self {
        Perm((0..len as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self` after `other`: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Perm(inv)
    }

    /// Pushforward on coordinate vectors: `out[p(i)] = v[i]`.
    pub fn act<T: Clone>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.len(), v.len());
        let mut out = v.to_vec();
        for (i, &pi) in self.0.iter().enumerate() {
            out[pi as usize] = v[i].clone();
        }
        out
    }

    /// Conjugate `self` by `g`: returns `g * self * g^{-1}`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    pub fn swap(len: usize, a: usize, b: usize) -> Perm {
        let mut p = Perm::identity(len);
        p.0.swap(a, b);
        p
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }
}
