//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use qpoisson::linalg::SparseMatrix;
use qpoisson::Q;

/// Rank by Bareiss fraction-free elimination on a dense integer copy
/// (each row is first scaled by the lcm of its denominators).
pub fn dense_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for k in c + 1..ncols {
                let v = (&m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k]) / &prev;
                m[r][k] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

pub fn dense_rank_of(m: &SparseMatrix) -> usize {
    dense_rank(&m.to_dense())
}

/// Random polyvector with arity and weight drawn from the given ranges.
pub fn some_polyvector(
    r: &mut qpoisson::random::Rng64,
    c: &qpoisson::calculus::Calculus,
    arity: std::ops::RangeInclusive<u32>,
    weight: std::ops::RangeInclusive<i32>,
    terms: usize,
) -> qpoisson::algebra::Element {
    use rand::Rng;
    let (a, w) = (r.gen_range(arity), r.gen_range(weight));
    qpoisson::random::polyvector(r, c, a, w, terms).unwrap()
}

/// Random form of degree in `degree` and weight `degree + extra`.
pub fn some_form(
    r: &mut qpoisson::random::Rng64,
    c: &qpoisson::calculus::Calculus,
    degree: std::ops::RangeInclusive<u32>,
    extra: std::ops::RangeInclusive<i32>,
    terms: usize,
) -> qpoisson::algebra::Element {
    use rand::Rng;
    let (d, e) = (r.gen_range(degree), r.gen_range(extra));
    qpoisson::random::form(r, c, d, d as i32 + e, terms).unwrap()
}
