//! Fraction-free row elimination.
//!
//! Rows are cleared of denominators up front and kept primitive (content 1)
//! after every combination, so entries stay integral and small-ish.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Q;

type IntRow = Vec<(usize, BigInt)>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Pivoting {
    /// Pivot on the leftmost nonzero column; rows are reduced as they arrive.
    #[default]
    Leftmost,
    /// Minimize the Markowitz cost (r-1)(c-1); ties go to the smallest (column, row).
    Markowitz,
}

#[derive(Clone, Debug)]
pub struct RankKernel {
    pub rank: usize,
    /// Basis of the right kernel, one dense vector per free column.
    pub kernel: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solve {
    Solution(Vec<Q>),
    /// `v` is not in the column span: rank([M|v]) = rank(M) + 1.
    Infeasible {
        rank: usize,
        augmented_rank: usize,
    },
}

impl Solve {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Solve::Solution(_))
    }
}

fn to_int_row(row: &[(usize, Q)]) -> IntRow {
    let mut l = BigInt::one();
    for (_, v) in row {
        l = l.lcm(v.denom());
    }
    let mut out: IntRow = row.iter().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (*c, v.numer() * (&l / v.denom()))).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

fn coeff_at(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// `a*r - b*p`, where a = p[col] and b = r[col], so the result vanishes at `col`.
fn eliminate(r: &IntRow, p: &IntRow, col: usize) -> IntRow {
    let a = coeff_at(p, col).expect("pivot row lacks pivot");
    let b = match coeff_at(r, col) {
        Some(b) => b,
        None => return r.clone(),
    };
    let g = a.gcd(b);
    let (a, b) = (a / &g, b / &g);
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take = match (r.get(i), p.get(j)) {
            (Some((ci, _)), Some((cj, _))) => ci.cmp(cj),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => unreachable!(),
        };
        let (c, v) = match take {
            std::cmp::Ordering::Less => {
                let (c, v) = &r[i];
                i += 1;
                (*c, &a * v)
            }
            std::cmp::Ordering::Greater => {
                let (c, v) = &p[j];
                j += 1;
                (*c, -(&b * v))
            }
            std::cmp::Ordering::Equal => {
                let (c, v) = &r[i];
                let w = &p[j].1;
                i += 1;
                j += 1;
                (*c, &a * v - &b * w)
            }
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    make_primitive(&mut out);
    out
}

/// Row echelon form keyed by pivot column.
fn echelon_leftmost(rows: Vec<IntRow>) -> BTreeMap<usize, IntRow> {
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    for mut r in rows {
        while let Some(&(lead, _)) = r.first() {
            match pivots.get(&lead) {
                Some(p) => r = eliminate(&r, p, lead),
                None => {
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    pivots
}

fn echelon_markowitz(rows: Vec<IntRow>) -> BTreeMap<usize, IntRow> {
    let mut active: Vec<Option<IntRow>> = rows.into_iter().map(|r| (!r.is_empty()).then_some(r)).collect();
    let mut pivots = BTreeMap::new();
    loop {
        let mut col_count: BTreeMap<usize, usize> = BTreeMap::new();
        for r in active.iter().flatten() {
            for (c, _) in r {
                *col_count.entry(*c).or_default() += 1;
            }
        }
        let mut best: Option<(usize, usize, usize)> = None; // (cost, col, row)
        for (ri, r) in active.iter().enumerate() {
            let Some(r) = r else { continue };
            for (c, _) in r {
                let cost = (r.len() - 1) * (col_count[c] - 1);
                let key = (cost, *c, ri);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((_, col, ri)) = best else { break };
        let p = active[ri].take().unwrap();
        for slot in active.iter_mut() {
            if let Some(r) = slot {
                if coeff_at(r, col).is_some() {
                    let e = eliminate(r, &p, col);
                    *slot = (!e.is_empty()).then_some(e);
                }
            }
        }
        pivots.insert(col, p);
    }
    pivots
}

fn int_rows(m: &SparseMatrix) -> Vec<IntRow> {
    m.row_lists().iter().map(|r| to_int_row(r)).filter(|r| !r.is_empty()).collect()
}

pub fn rank_with(m: &SparseMatrix, pivoting: Pivoting) -> usize {
    let rows = int_rows(m);
    match pivoting {
        Pivoting::Leftmost => echelon_leftmost(rows).len(),
        Pivoting::Markowitz => echelon_markowitz(rows).len(),
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    rank_with(m, Pivoting::Leftmost)
}

/// Reduced row echelon form over Q from an echelon keyed by leading column.
/// Each returned row has a 1 in its pivot column and zeros in all other pivot columns.
fn rref(pivots: BTreeMap<usize, IntRow>) -> BTreeMap<usize, BTreeMap<usize, Q>> {
    let mut out: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
    // Highest pivot first; rows with larger leads are already fully reduced.
    for (&lead, row) in pivots.iter().rev() {
        let lead_val = Q::from_integer(row[0].1.clone());
        let mut r: BTreeMap<usize, Q> = row.iter().map(|(c, v)| (*c, Q::from_integer(v.clone()) / &lead_val)).collect();
        let later: Vec<usize> = r.keys().copied().filter(|c| *c > lead && out.contains_key(c)).collect();
        for c in later {
            let f = match r.get(&c) {
                Some(f) => f.clone(),
                None => continue,
            };
            for (cc, v) in &out[&c] {
                let slot = r.entry(*cc).or_insert_with(Q::zero);
                *slot -= &f * v;
                if slot.is_zero() {
                    r.remove(cc);
                }
            }
        }
        out.insert(lead, r);
    }
    out
}

pub fn rank_kernel(m: &SparseMatrix) -> RankKernel {
    let ech = echelon_leftmost(int_rows(m));
    let rank = ech.len();
    let red = rref(ech);
    let kernel = (0..m.ncols())
        .filter(|c| !red.contains_key(c))
        .map(|free| {
            let mut v = vec![Q::zero(); m.ncols()];
            v[free] = Q::one();
            for (&p, row) in &red {
                if let Some(x) = row.get(&free) {
                    v[p] = -x.clone();
                }
            }
            v
        })
        .collect();
    RankKernel { rank, kernel }
}

/// Finds x with `m x = v`, or certifies there is none.
pub fn solve_in_image(m: &SparseMatrix, v: &[Q]) -> Result<Solve> {
    if v.len() != m.nrows() {
        return Err(Error::Dimension { expected: m.nrows(), got: v.len() });
    }
    let n = m.ncols();
    let mut rows = m.row_lists();
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            rows[i].push((n, x.clone()));
        }
    }
    let ech = echelon_leftmost(rows.iter().map(|r| to_int_row(r)).filter(|r| !r.is_empty()).collect());
    if ech.contains_key(&n) {
        let augmented_rank = ech.len();
        return Ok(Solve::Infeasible { rank: augmented_rank - 1, augmented_rank });
    }
    let red = rref(ech);
    let mut x = vec![Q::zero(); n];
    for (&p, row) in &red {
        if let Some(val) = row.get(&n) {
            x[p] = val.clone();
        }
    }
    Ok(Solve::Solution(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qfrac};

    #[test]
    fn identity_and_zero() {
        let id = SparseMatrix::identity(3);
        let rk = rank_kernel(&id);
        assert_eq!(rk.rank, 3);
        assert!(rk.kernel.is_empty());
        let z = SparseMatrix::zeros(2, 4);
        let rk = rank_kernel(&z);
        assert_eq!(rk.rank, 0);
        assert_eq!(rk.kernel.len(), 4);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m =
            SparseMatrix::from_dense(&[vec![q(1), q(2), q(3), q(4)], vec![q(2), q(4), q(6), q(8)], vec![qfrac(1, 2), q(0), q(1), q(-1)]]);
        let rk = rank_kernel(&m);
        assert_eq!(rk.rank, 2);
        assert_eq!(rk.kernel.len(), 2);
        for k in &rk.kernel {
            assert!(m.mul_vec(k).unwrap().iter().all(|x| x.is_zero()));
        }
        assert_eq!(rank_with(&m, Pivoting::Markowitz), 2);
    }

    #[test]
    fn solve_identity_and_infeasible() {
        let id = SparseMatrix::identity(3);
        let v = vec![q(1), qfrac(-2, 3), q(5)];
        assert_eq!(solve_in_image(&id, &v).unwrap(), Solve::Solution(v.clone()));
        let m = SparseMatrix::from_dense(&[vec![q(1), q(1)], vec![q(1), q(1)]]);
        match solve_in_image(&m, &[q(1), q(2)]).unwrap() {
            Solve::Infeasible { rank, augmented_rank } => assert_eq!((rank, augmented_rank), (1, 2)),
            s => panic!("expected infeasible, got {s:?}"),
        }
        assert_eq!(solve_in_image(&m, &[q(0), q(0)]).unwrap(), Solve::Solution(vec![q(0), q(0)]));
        assert!(solve_in_image(&m, &[q(0)]).is_err());
    }
}
