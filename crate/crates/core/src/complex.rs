//! Finite weight slices of a graded complex and their (co)homology.
//!
//! A complex here is a free graded-commutative algebra with a linear map that
//! preserves total weight and moves the odd-generator count by `step` (±1).

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::sync::Arc;

use crate::algebra::{linear_map_matrix, Basis, Element, Signature};
use crate::error::Result;
use crate::linalg::{rank, SparseMatrix};
use crate::parallel;

/// One (degree, weight) component with the differential leaving and entering it.
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    pub degree: u32,
    pub weight: i32,
    pub basis: Basis,
    pub matrix_out: SparseMatrix,
    pub matrix_in: SparseMatrix,
}

impl ComplexSlice {
    pub fn homology_dim(&self) -> usize {
        self.basis.len() - rank(&self.matrix_out) - rank(&self.matrix_in)
    }
}

type Diff<'a> = dyn Fn(&Element) -> Result<Element> + Sync + Send + 'a;

pub struct Complex<'a> {
    sig: Arc<Signature>,
    step: i32,
    diff: Box<Diff<'a>>,
}

/// Dimensions keyed by (degree, weight).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(u32, i32), usize>,
}

impl BettiTable {
    pub fn get(&self, degree: u32, weight: i32) -> usize {
        self.entries.get(&(degree, weight)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }
}

impl<'a> Complex<'a> {
    pub fn new<F>(sig: &Arc<Signature>, step: i32, diff: F) -> Self
    where
        F: Fn(&Element) -> Result<Element> + Sync + Send + 'a,
    {
        assert!(step == 1 || step == -1);
        Complex { sig: sig.clone(), step, diff: Box::new(diff) }
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn basis(&self, degree: i64, weight: i32) -> Result<Basis> {
        if degree < 0 {
            return Ok(Basis::new(&self.sig, Vec::new()));
        }
        Basis::slice(&self.sig, degree as u32, weight)
    }

    pub fn apply(&self, e: &Element) -> Result<Element> {
        (self.diff)(e)
    }

    /// Matrix of the differential leaving slice (degree, weight).
    pub fn matrix(&self, degree: i64, weight: i32) -> Result<SparseMatrix> {
        let src = self.basis(degree, weight)?;
        let dst = self.basis(degree + self.step as i64, weight)?;
        linear_map_matrix(&src, &dst, |e| (self.diff)(e).expect("differential failed"))
    }

    pub fn slice(&self, degree: u32, weight: i32) -> Result<ComplexSlice> {
        Ok(ComplexSlice {
            degree,
            weight,
            basis: self.basis(degree as i64, weight)?,
            matrix_out: self.matrix(degree as i64, weight)?,
            matrix_in: self.matrix(degree as i64 - self.step as i64, weight)?,
        })
    }

    /// Exact (co)homology dimensions; slices are computed concurrently.
    pub fn betti(&self, degrees: RangeInclusive<u32>, weights: RangeInclusive<i32>) -> Result<BettiTable> {
        let (d0, d1) = (*degrees.start() as i64, *degrees.end() as i64);
        let mut jobs = Vec::new();
        for w in weights.clone() {
            for d in (d0 - 1)..=(d1 + 1) {
                jobs.push((d, w));
            }
        }
        let ranks = parallel::map(&jobs, |&(d, w)| -> Result<(usize, usize)> {
            let m = self.matrix(d, w)?;
            Ok((m.ncols(), rank(&m)))
        });
        let mut dims = BTreeMap::new();
        let mut rk = BTreeMap::new();
        for (job, r) in jobs.iter().zip(ranks) {
            let (dim, r) = r?;
            dims.insert(*job, dim);
            rk.insert(*job, r);
        }
        let mut table = BettiTable::default();
        for w in weights {
            for d in d0..=d1 {
                let out = rk[&(d, w)];
                let inn = rk.get(&(d - self.step as i64, w)).copied().unwrap_or(0);
                table.entries.insert((d as u32, w), dims[&(d, w)] - out - inn);
            }
        }
        Ok(table)
    }

    /// Checks that consecutive matrices compose to zero on every slice.
    pub fn squares_to_zero(&self, degrees: RangeInclusive<u32>, weights: RangeInclusive<i32>) -> Result<bool> {
        let mut jobs = Vec::new();
        for w in weights {
            for d in degrees.clone() {
                jobs.push((d as i64, w));
            }
        }
        let ok = parallel::map(&jobs, |&(d, w)| -> Result<bool> {
            let first = self.matrix(d, w)?;
            let second = self.matrix(d + self.step as i64, w)?;
            Ok(second.mul(&first)?.is_zero())
        });
        for r in ok {
            if !r? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
