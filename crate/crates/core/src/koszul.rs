//! Quadratic duality: presentations, the dual coalgebra, the Koszul complex,
//! and the generator maps Φ and Ψ between the symmetric and exterior sides.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{check_same, linear_map_matrix, Element, Monomial};
use crate::calculus::{Calculus, Side};
use crate::complex::{BettiTable, Complex};
use crate::error::{Error, Result};
use crate::linalg::{rank, rank_kernel, SparseMatrix, SparseVec, Subspace};
use crate::parallel;
use crate::poisson::{complex, jacobi_check, weight_window, QuadraticBivector, Which};
use crate::scalar::Q;

fn n_of(e: &Element) -> usize {
    e.signature().len() / 2
}

fn relabel(e: &Element, from: &Calculus, to: &std::sync::Arc<crate::algebra::Signature>, swap: bool, what: &str) -> Result<Element> {
    let src = if swap { from.polyvectors() } else { from.forms() };
    check_same(e.signature(), src).map_err(|_| Error::SignatureMismatch(format!("expected a {what} over {src}")))?;
    let n = from.n();
    let mut out = Element::zero(to);
    for (m, c) in e.terms() {
        let exps = m.exponents();
        let img: Vec<u8> = if swap { exps[n..].iter().chain(&exps[..n]).copied().collect() } else { exps.to_vec() };
        out.add_term(Monomial::from_exponents(&img), c.clone());
    }
    Ok(out)
}

/// Φ: primal forms to Koszul-side dual polyvectors, `x_i ↦ ∂/∂xi_i`, `dx_i ↦ xi_i*`.
///
/// Both signatures list the images in the same order with the same parities,
/// so the map is a relabelling with no sign.
pub fn phi(w: &Element) -> Result<Element> {
    let n = n_of(w);
    let from = Calculus::get(n, Side::Primal);
    relabel(w, &from, Calculus::get(n, Side::Koszul).dual_polyvectors(), false, "primal form")
}

pub fn phi_inverse(f: &Element) -> Result<Element> {
    let n = n_of(f);
    let k = Calculus::get(n, Side::Koszul);
    check_same(f.signature(), k.dual_polyvectors())
        .map_err(|_| Error::SignatureMismatch("expected a Koszul-side dual polyvector".into()))?;
    Ok(f.with_signature(Calculus::get(n, Side::Primal).forms()))
}

/// Ψ: primal polyvectors to Koszul polyvectors, `x_i ↦ ∂/∂xi_i`, `∂/∂x_i ↦ xi_i`.
pub fn psi(p: &Element) -> Result<Element> {
    let n = n_of(p);
    let from = Calculus::get(n, Side::Primal);
    relabel(p, &from, Calculus::get(n, Side::Koszul).polyvectors(), true, "primal polyvector")
}

pub fn psi_inverse(p: &Element) -> Result<Element> {
    let n = n_of(p);
    let from = Calculus::get(n, Side::Koszul);
    relabel(p, &from, Calculus::get(n, Side::Primal).polyvectors(), true, "Koszul polyvector")
}

/// `T(V)/(R)` with `R ⊆ V⊗V`. Tensors `e_a⊗e_b` are indexed `a·d + b`.
#[derive(Clone, Debug)]
pub struct QuadraticPresentation {
    names: Vec<String>,
    degrees: Vec<i32>,
    relations: Subspace,
}

impl QuadraticPresentation {
    pub fn new(names: Vec<String>, degrees: Vec<i32>, relations: Vec<Vec<(usize, usize, Q)>>) -> Result<Self> {
        let d = names.len();
        if degrees.len() != d {
            return Err(Error::Dimension { expected: d, got: degrees.len() });
        }
        if d == 0 {
            return Err(Error::Input("empty generator list".into()));
        }
        let mut rel = Subspace::new();
        for r in relations {
            let mut v = SparseVec::new();
            for (a, b, c) in r {
                if a >= d || b >= d {
                    return Err(Error::Input(format!("relation index ({a},{b}) outside 0..{d}")));
                }
                let slot = v.entry(a * d + b).or_insert_with(Q::zero);
                *slot += c;
            }
            v.retain(|_, x| !x.is_zero());
            rel.insert(v);
        }
        Ok(QuadraticPresentation { names, degrees, relations: rel })
    }

    fn default_names(d: usize) -> (Vec<String>, Vec<i32>) {
        ((1..=d).map(|i| format!("x{i}")).collect(), vec![0; d])
    }

    /// `k[x_1..x_n]`: all commutators.
    pub fn polynomial(n: usize) -> Result<Self> {
        let (names, degs) = Self::default_names(n);
        let mut rels = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                rels.push(vec![(a, b, Q::one()), (b, a, -Q::one())]);
            }
        }
        Self::new(names, degs, rels)
    }

    /// `Λ(x_1..x_n)`: squares and anticommutators.
    pub fn exterior(n: usize) -> Result<Self> {
        let (names, degs) = Self::default_names(n);
        let mut rels = Vec::new();
        for a in 0..n {
            rels.push(vec![(a, a, Q::one())]);
            for b in a + 1..n {
                rels.push(vec![(a, b, Q::one()), (b, a, Q::one())]);
            }
        }
        Self::new(names, degs, rels)
    }

    /// Commutative quotient `k[x_1..x_n]/(quadrics)`; each quadric lists
    /// `(a, b, c)` for `c·x_a x_b`.
    pub fn commutative(n: usize, quadrics: &[Vec<(usize, usize, Q)>]) -> Result<Self> {
        let mut p = Self::polynomial(n)?;
        for f in quadrics {
            let mut v = SparseVec::new();
            for (a, b, c) in f {
                if *a >= n || *b >= n {
                    return Err(Error::Input(format!("quadric index ({a},{b}) outside 0..{n}")));
                }
                let (a, b) = if a <= b { (*a, *b) } else { (*b, *a) };
                let slot = v.entry(a * n + b).or_insert_with(Q::zero);
                *slot += c;
            }
            v.retain(|_, x| !x.is_zero());
            p.relations.insert(v);
        }
        Ok(p)
    }

    pub fn dim_v(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn dim_r(&self) -> usize {
        self.relations.dim()
    }

    /// Reduced basis of R, each relation as `(a, b, c)` triples.
    pub fn relations(&self) -> Vec<Vec<(usize, usize, Q)>> {
        let d = self.dim_v();
        self.relations.basis().map(|(_, v)| v.iter().map(|(i, c)| (i / d, i % d, c.clone())).collect()).collect()
    }

    /// Basis of `R^⊥ ⊆ V*⊗V*` under the pairing dual to the tensor basis.
    pub fn annihilator(&self) -> Vec<SparseVec> {
        let d2 = self.dim_v() * self.dim_v();
        let rows: Vec<(usize, usize, Q)> = self
            .relations
            .basis()
            .enumerate()
            .flat_map(|(r, (_, v))| v.iter().map(move |(c, x)| (r, *c, x.clone())).collect::<Vec<_>>())
            .collect();
        let m = SparseMatrix::from_triplets(self.relations.dim(), d2, rows);
        rank_kernel(&m).kernel.into_iter().map(|k| k.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()).collect()
    }

    /// `A! = T(V*)/(R^⊥)`.
    pub fn koszul_dual(&self) -> Self {
        let d = self.dim_v();
        let rels = self.annihilator().into_iter().map(|v| v.into_iter().map(|(i, c)| (i / d, i % d, c)).collect()).collect();
        Self::new(self.names.iter().map(|s| format!("{s}_dual")).collect(), self.degrees.iter().map(|g| -g).collect(), rels)
            .expect("annihilator indices are in range")
    }
}

fn tensor_len(d: usize, m: usize) -> Result<usize> {
    d.checked_pow(m as u32).filter(|x| *x <= u32::MAX as usize).ok_or_else(|| Error::Input(format!("tensor power {d}^{m} too large")))
}

/// A basis of `U_m = ∩_{i+j+2=m} V^{⊗i}⊗R⊗V^{⊗j}` as vectors on `V^{⊗m}`,
/// in reduced echelon form.
#[derive(Clone, Debug)]
pub struct CoalgebraComponent {
    pub m: usize,
    pub basis: Subspace,
}

impl CoalgebraComponent {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// `U_0, ..., U_max`, each obtained from the previous one as
/// `(U_{m-1}⊗V) ∩ (V^{⊗(m-2)}⊗R)`.
pub fn dual_coalgebra(pres: &QuadraticPresentation, max: usize) -> Result<Vec<CoalgebraComponent>> {
    let d = pres.dim_v();
    let ann = pres.annihilator();
    let mut out = vec![CoalgebraComponent { m: 0, basis: Subspace::from_vectors([SparseVec::from([(0, Q::one())])]) }];
    for m in 1..=max {
        tensor_len(d, m)?;
        let prev = &out[m - 1].basis;
        let cands: Vec<SparseVec> =
            prev.basis().flat_map(|(_, u)| (0..d).map(move |l| u.iter().map(|(i, c)| (i * d + l, c.clone())).collect())).collect();
        let basis = if m == 1 {
            Subspace::from_vectors(cands)
        } else {
            // Row (ρ, prefix) of the constraint `(id ⊗ ρ) v = 0`.
            let mut rows: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            let mut trip = Vec::new();
            for (col, v) in cands.iter().enumerate() {
                for (idx, c) in v {
                    let (prefix, last2) = (idx / (d * d), idx % (d * d));
                    for (k, rho) in ann.iter().enumerate() {
                        if let Some(r) = rho.get(&last2) {
                            let next = rows.len();
                            let row = *rows.entry((k, prefix)).or_insert(next);
                            trip.push((row, col, c * r));
                        }
                    }
                }
            }
            let mat = SparseMatrix::from_triplets(rows.len(), cands.len(), trip);
            let ker = rank_kernel(&mat).kernel;
            Subspace::from_vectors(ker.into_iter().map(|coef| {
                let mut v = SparseVec::new();
                for (cand, a) in cands.iter().zip(coef) {
                    if a.is_zero() {
                        continue;
                    }
                    for (i, c) in cand {
                        let slot = v.entry(*i).or_insert_with(Q::zero);
                        *slot += &a * c;
                    }
                }
                v.retain(|_, x| !x.is_zero());
                v
            }))
        };
        out.push(CoalgebraComponent { m, basis });
    }
    Ok(out)
}

pub fn dual_coalgebra_component(pres: &QuadraticPresentation, m: usize) -> Result<CoalgebraComponent> {
    Ok(dual_coalgebra(pres, m)?.pop().expect("m+1 components"))
}

/// Graded pieces `A_0..A_max` with right multiplication by generators.
#[derive(Clone, Debug)]
pub struct AlgebraComponents {
    dims: Vec<usize>,
    /// `mult[j][b][l]` is `b · e_l ∈ A_{j+1}` for `b` a basis vector of `A_j`.
    mult: Vec<Vec<Vec<SparseVec>>>,
}

impl AlgebraComponents {
    pub fn new(pres: &QuadraticPresentation, max: usize) -> Self {
        let d = pres.dim_v();
        let rels = pres.relations();
        let mut dims = vec![1];
        let mut mult: Vec<Vec<Vec<SparseVec>>> = Vec::new();
        for j in 0..max {
            // A_{j+1} = (A_j ⊗ V) / (A_{j-1} ⊗ R).
            let mut s = Subspace::new();
            if j >= 1 {
                for c in 0..dims[j - 1] {
                    for r in &rels {
                        let mut v = SparseVec::new();
                        for (l, m, x) in r {
                            for (b, y) in &mult[j - 1][c][*l] {
                                let slot = v.entry(b * d + m).or_insert_with(Q::zero);
                                *slot += x * y;
                            }
                        }
                        v.retain(|_, x| !x.is_zero());
                        s.insert(v);
                    }
                }
            }
            let total = dims[j] * d;
            let pivots: Vec<usize> = s.pivots().collect();
            let mut index = BTreeMap::new();
            for i in 0..total {
                if pivots.binary_search(&i).is_err() {
                    let k = index.len();
                    index.insert(i, k);
                }
            }
            let table = (0..dims[j])
                .map(|b| {
                    (0..d)
                        .map(|l| s.reduce(&SparseVec::from([(b * d + l, Q::one())])).into_iter().map(|(i, x)| (index[&i], x)).collect())
                        .collect()
                })
                .collect();
            dims.push(index.len());
            mult.push(table);
        }
        AlgebraComponents { dims, mult }
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims[j]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
}

/// One weight of the Koszul complex `A ⊗ A¡`: spaces `A_j ⊗ U_{w-j}` for
/// `j = 0..=w`, with `δ(a ⊗ u) = Σ_l a e_l ⊗ (e_l* ⌟ u)` contracting the first
/// tensor factor of `u`.
#[derive(Clone, Debug)]
pub struct KoszulComplexSlice {
    pub weight: usize,
    pub dims: Vec<usize>,
    /// `differentials[j]: A_j⊗U_{w-j} → A_{j+1}⊗U_{w-j-1}`, for `j < w`.
    pub differentials: Vec<SparseMatrix>,
    pub homology: Vec<usize>,
}

impl KoszulComplexSlice {
    pub fn is_exact(&self) -> bool {
        self.homology.iter().all(|h| *h == 0)
    }

    pub fn squares_to_zero(&self) -> bool {
        self.differentials.windows(2).all(|w| w[1].mul(&w[0]).map(|m| m.is_zero()).unwrap_or(false))
    }
}

fn slice(pres: &QuadraticPresentation, alg: &AlgebraComponents, us: &[CoalgebraComponent], w: usize) -> KoszulComplexSlice {
    let d = pres.dim_v();
    let u_basis: Vec<Vec<(usize, &SparseVec)>> = us.iter().map(|u| u.basis.basis().collect()).collect();
    let u_pos: Vec<BTreeMap<usize, usize>> = u_basis.iter().map(|b| b.iter().enumerate().map(|(k, (p, _))| (*p, k)).collect()).collect();
    let dims: Vec<usize> = (0..=w).map(|j| alg.dim(j) * us[w - j].dim()).collect();
    let mut differentials = Vec::new();
    for j in 0..w {
        let i = w - j;
        let tail = d.pow(i as u32 - 1);
        let (ui, ui1) = (us[i].dim(), us[i - 1].dim());
        let mut trip = Vec::new();
        for a in 0..alg.dim(j) {
            for (k, (_, u)) in u_basis[i].iter().enumerate() {
                let col = a * ui + k;
                for l in 0..d {
                    // e_l* ⌟ u, read in the echelon basis of U_{i-1} via its pivots.
                    let contracted: SparseVec = u.range(l * tail..(l + 1) * tail).map(|(idx, c)| (idx - l * tail, c.clone())).collect();
                    if contracted.is_empty() {
                        continue;
                    }
                    let coords = us[i - 1].basis.coordinates(&contracted);
                    for (b, x) in &alg.mult[j][a][l] {
                        for (p, y) in &coords {
                            trip.push((b * ui1 + u_pos[i - 1][p], col, x * y));
                        }
                    }
                }
            }
        }
        differentials.push(SparseMatrix::from_triplets(dims[j + 1], dims[j], trip));
    }
    let ranks: Vec<usize> = differentials.iter().map(rank).collect();
    let homology = (0..=w)
        .map(|j| {
            let out = if j < w { ranks[j] } else { 0 };
            let inn = if j > 0 { ranks[j - 1] } else { 0 };
            dims[j] - out - inn
        })
        .collect();
    KoszulComplexSlice { weight: w, dims, differentials, homology }
}

#[derive(Clone, Debug)]
pub struct KoszulReport {
    pub max_weight: usize,
    pub slices: Vec<KoszulComplexSlice>,
    /// Weights whose slice is not what a Koszul algebra gives
    /// (weight 0 must be `k`, all others exact).
    pub failing: Vec<usize>,
}

impl KoszulReport {
    pub fn is_koszul(&self) -> bool {
        self.failing.is_empty()
    }
}

/// Checks exactness of every weight slice up to `max_weight`.
pub fn koszul_acyclicity(pres: &QuadraticPresentation, max_weight: usize) -> Result<KoszulReport> {
    let alg = AlgebraComponents::new(pres, max_weight);
    let us = dual_coalgebra(pres, max_weight)?;
    let weights: Vec<usize> = (0..=max_weight).collect();
    let slices = parallel::map(&weights, |&w| slice(pres, &alg, &us, w));
    let failing = slices.iter().filter(|s| if s.weight == 0 { s.homology != [1] } else { !s.is_exact() }).map(|s| s.weight).collect();
    Ok(KoszulReport { max_weight, slices, failing })
}

/// Outcome of comparing a primal Poisson structure with its Koszul dual
/// through Φ (forms) and Ψ (polyvectors), slice by slice.
#[derive(Clone, Debug)]
pub struct Theorem1Report {
    pub max_weight: i32,
    pub slices_checked: usize,
    /// First slice or element where Φ or Ψ fails to be a bijective chain map.
    pub map_failure: Option<String>,
    /// `HP_•(A)` and `HP^{-•}(A!; A¡)`.
    pub low: (BettiTable, BettiTable),
    /// `HP^•(A)` and `HP^•(A!)`.
    pub high: (BettiTable, BettiTable),
}

impl Theorem1Report {
    pub fn tables_agree(&self) -> bool {
        self.low.0 == self.low.1 && self.high.0 == self.high.1
    }

    pub fn holds(&self) -> bool {
        self.map_failure.is_none() && self.tables_agree()
    }
}

struct MapCheck<'a> {
    name: &'static str,
    src: Complex<'a>,
    dst: Complex<'a>,
    map: fn(&Element) -> Result<Element>,
}

impl MapCheck<'_> {
    /// Chain map on every basis element and bijection onto the matching slice.
    fn check(&self, degree: u32, weight: i32) -> Result<Option<String>> {
        let sb = self.src.basis(degree as i64, weight)?;
        let db = self.dst.basis(degree as i64, weight)?;
        if sb.len() != db.len() {
            return Ok(Some(format!(
                "{}: slice ({degree},{weight}) has dimension {} but its target has {}",
                self.name,
                sb.len(),
                db.len()
            )));
        }
        for i in 0..sb.len() {
            let e = sb.element(i);
            let lhs = (self.map)(&self.src.apply(&e)?)?;
            let rhs = self.dst.apply(&(self.map)(&e)?)?;
            if lhs != rhs {
                return Ok(Some(format!("{} does not commute with the differentials on {e}", self.name)));
            }
        }
        let m = linear_map_matrix(&sb, &db, |e| (self.map)(e).expect("map on its own slice"))?;
        if rank(&m) != sb.len() {
            return Ok(Some(format!("{} is not injective on slice ({degree},{weight})", self.name)));
        }
        Ok(None)
    }
}

/// Chain-level and homology-level comparison of π and π! up to `max_weight`.
pub fn verify_theorem1(pi: &QuadraticBivector, max_weight: i32) -> Result<Theorem1Report> {
    let a = match pi.side() {
        Side::Primal => pi.clone(),
        Side::Koszul => pi.koszul_dual(),
    };
    let b = a.koszul_dual();
    jacobi_check(&a).holds.then_some(()).ok_or_else(|| Error::NotJacobi { witness: jacobi_check(&a).witness.to_string() })?;
    let n = a.n() as u32;
    let low = [
        MapCheck { name: "Φ", src: complex(&a, Which::HpLow), dst: complex(&b, Which::HpHighDual), map: phi },
        MapCheck { name: "Ψ", src: complex(&a, Which::HpHigh), dst: complex(&b, Which::HpHigh), map: psi },
    ];
    let mut jobs = Vec::new();
    for (k, w) in [(0usize, weight_window(Which::HpLow, n as usize, max_weight)), (1, weight_window(Which::HpHigh, n as usize, max_weight))]
    {
        for wt in w {
            for d in 0..=n {
                jobs.push((k, d, wt));
            }
        }
    }
    let found = parallel::map(&jobs, |&(k, d, w)| low[k].check(d, w));
    let mut map_failure = None;
    for f in found {
        if let (None, Some(msg)) = (&map_failure, f?) {
            map_failure = Some(msg);
        }
    }
    let lw = weight_window(Which::HpLow, n as usize, max_weight);
    let hw = weight_window(Which::HpHigh, n as usize, max_weight);
    Ok(Theorem1Report {
        max_weight,
        slices_checked: jobs.len(),
        map_failure,
        low: (low[0].src.betti(0..=n, lw.clone())?, low[0].dst.betti(0..=n, lw)?),
        high: (low[1].src.betti(0..=n, hw.clone())?, low[1].dst.betti(0..=n, hw)?),
    })
}
