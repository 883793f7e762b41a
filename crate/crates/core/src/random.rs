//! Seeded generators for test data: coefficients, slice elements, brackets.
//!
//! Everything is driven by a ChaCha stream so runs are reproducible from a seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Basis, Element};
use crate::calculus::{Calculus, Side};
use crate::error::Result;
use crate::poisson::{QuadraticBivector, Term};
use crate::scalar::{q, Q};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero integer in -3..=3.
pub fn coeff(r: &mut Rng64) -> Q {
    let v = r.gen_range(1..=3);
    q(if r.gen_bool(0.5) { v } else { -v })
}

/// Up to `terms` random multiples of basis monomials; zero if the basis is empty.
pub fn combination(r: &mut Rng64, basis: &Basis, terms: usize) -> Element {
    let mut e = Element::zero(basis.signature());
    if basis.is_empty() {
        return e;
    }
    for _ in 0..terms {
        let m = basis.monomials().choose(r).expect("nonempty").clone();
        e.add_term(m, coeff(r));
    }
    e
}

/// Random element of the slice (odd count, weight) of the signature.
pub fn slice_element(
    r: &mut Rng64,
    sig: &std::sync::Arc<crate::algebra::Signature>,
    odd: u32,
    weight: i32,
    terms: usize,
) -> Result<Element> {
    Ok(combination(r, &Basis::slice(sig, odd, weight)?, terms))
}

/// Random homogeneous polyvector: `arity` odd generators, total weight `weight`.
pub fn polyvector(r: &mut Rng64, calc: &Calculus, arity: u32, weight: i32, terms: usize) -> Result<Element> {
    slice_element(r, calc.polyvectors(), arity, weight, terms)
}

pub fn form(r: &mut Rng64, calc: &Calculus, degree: u32, weight: i32, terms: usize) -> Result<Element> {
    slice_element(r, calc.forms(), degree, weight, terms)
}

/// Arbitrary coefficient tensor; usually fails Jacobi for n ≥ 3.
pub fn tensor(r: &mut Rng64, n: usize, side: Side, terms: usize) -> Result<QuadraticBivector> {
    let mut ts = Vec::new();
    for _ in 0..terms {
        let (i1, i2) = (r.gen_range(1..=n), r.gen_range(1..=n));
        let j1 = r.gen_range(1..=n);
        let mut j2 = r.gen_range(1..=n);
        while n > 1 && j2 == j1 {
            j2 = r.gen_range(1..=n);
        }
        ts.push(Term { i1, i2, j1, j2, coeff: coeff(r) });
    }
    QuadraticBivector::new(n, side, &ts)
}

/// `Σ_{i<j} a_ij x_i x_j ∂_i ∂_j` with random antisymmetric `a`. Always Poisson;
/// unimodular exactly when every row sum of `a` vanishes.
pub fn log_canonical(r: &mut Rng64, n: usize) -> Result<QuadraticBivector> {
    let mut ts = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let c = q(r.gen_range(-3..=3));
            ts.push(Term { i1: i, i2: j, j1: i, j2: j, coeff: c });
        }
    }
    QuadraticBivector::new(n, Side::Primal, &ts)
}

/// Random homogeneous polynomial of degree `deg` in `x1..xn`, over the primal
/// polyvector signature.
pub fn polynomial(r: &mut Rng64, n: usize, deg: i32, terms: usize) -> Result<Element> {
    polyvector(r, &Calculus::get(n, Side::Primal), 0, deg, terms)
}

/// A random cubic for the Etingof–Ginzburg family.
pub fn cubic(r: &mut Rng64, terms: usize) -> Result<Element> {
    polynomial(r, 3, 3, terms)
}

/// `α = f dg - g df` with `f, g` random quadrics in four variables; satisfies
/// both integrability conditions of the Pym family by construction.
pub fn pym_form(r: &mut Rng64, terms: usize) -> Result<Element> {
    let c = Calculus::get(4, Side::Primal);
    let f = form(r, &c, 0, 2, terms)?;
    let g = form(r, &c, 0, 2, terms)?;
    let df = c.de_rham(&f)?;
    let dg = c.de_rham(&g)?;
    f.mul(&dg)?.sub(&g.mul(&df)?)
}
