use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::Q;

/// Sparse vector: coordinate -> nonzero value.
pub type SparseVec = BTreeMap<usize, Q>;

/// A subspace held as reduced row echelon rows keyed by pivot coordinate.
/// Every row has a 1 at its pivot and 0 at all other pivots.
#[derive(Clone, Debug, Default)]
pub struct Subspace {
    rows: BTreeMap<usize, SparseVec>,
}

fn axpy(v: &mut SparseVec, a: &Q, row: &SparseVec) {
    for (c, x) in row {
        let slot = v.entry(*c).or_insert_with(Q::zero);
        *slot -= a * x;
        if slot.is_zero() {
            v.remove(c);
        }
    }
}

impl Subspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(vs: I) -> Self {
        let mut s = Self::new();
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Normal form of `v` modulo the subspace (zero at every pivot).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if let Some(a) = v.get(p).cloned() {
                axpy(&mut v, &a, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(&v);
        let Some((&p, lead)) = r.iter().next() else { return false };
        let inv = lead.recip();
        for x in r.values_mut() {
            *x *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(a) = row.get(&p).cloned() {
                axpy(row, &a, &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn basis(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }

    /// Coordinates of a member `v` in the echelon basis, keyed by pivot.
    pub fn coordinates(&self, v: &SparseVec) -> BTreeMap<usize, Q> {
        self.rows.keys().filter_map(|p| v.get(p).map(|x| (*p, x.clone()))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(c, x)| (*c, q(*x))).collect()
    }

    #[test]
    fn reduce_and_membership() {
        let s = Subspace::from_vectors([sv(&[(0, 1), (1, 1)]), sv(&[(1, 2), (2, 2)]), sv(&[(0, 1), (2, -1)])]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&sv(&[(0, 3), (2, -3)])));
        assert!(!s.contains(&sv(&[(2, 1)])));
        let v = sv(&[(0, 2), (1, 5), (2, 3)]);
        let c = s.coordinates(&v);
        let mut back = SparseVec::new();
        for (p, x) in c {
            let row = s.rows[&p].clone();
            axpy(&mut back, &-x, &row);
        }
        assert_eq!(back, v);
    }
}
