//! Poincaré duality, unimodularity, the BV operator, and the comparison of
//! the symmetric and exterior sides.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{left_partial, Basis, Element, Monomial};
use crate::calculus::{Calculus, Side};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::koszul::{phi, psi};
use crate::linalg::{rank_kernel, solve_in_image, Solve};
use crate::parallel;
use crate::poisson::{poisson_boundary, poisson_coboundary, require_jacobi, BoundaryCache, QuadraticBivector};
use crate::random;
use crate::scalar::{sign_q, Q};

/// The calculus whose polyvector signature `p` lives on.
pub fn polyvector_calculus(p: &Element) -> Result<Arc<Calculus>> {
    let n = p.signature().len() / 2;
    for side in [Side::Primal, Side::Koszul] {
        let c = Calculus::get(n, side);
        if **c.polyvectors() == **p.signature() {
            return Ok(c);
        }
    }
    Err(Error::SignatureMismatch(format!("{} is not a polyvector signature", p.signature())))
}

fn expect_side(p: &Element, side: Side) -> Result<Arc<Calculus>> {
    let c = polyvector_calculus(p)?;
    if c.side() != side {
        return Err(Error::SignatureMismatch(format!("expected a {side} polyvector")));
    }
    Ok(c)
}

/// `PD(P) = ι_P η` with `η = dx_1 ... dx_n`.
pub fn pd(p: &Element) -> Result<Element> {
    let c = expect_side(p, Side::Primal)?;
    c.contract(p, &c.volume_form())
}

/// `PD(P) = ι*_P η!` with `η! = xi_1* ... xi_n*`.
pub fn pd_dual(p: &Element) -> Result<Element> {
    let c = expect_side(p, Side::Koszul)?;
    c.contract_dual(p, &c.dual_volume())
}

/// Both duality maps send monomials to ± monomials, with the odd block
/// complemented. `preimage` names the only monomial that can hit a target.
fn invert_monomialwise<F, G>(e: &Element, target: &Arc<crate::algebra::Signature>, preimage: G, forward: F) -> Result<Element>
where
    F: Fn(&Element) -> Result<Element>,
    G: Fn(&Monomial) -> Monomial,
{
    let mut out = Element::zero(target);
    for (m, c) in e.terms() {
        let cand = preimage(m);
        let img = forward(&Element::term(target, cand.clone(), Q::one()))?;
        let k = img.coeff(m);
        if k.is_zero() || img.len() != 1 {
            return Err(Error::DegeneratePairing);
        }
        out.add_term(cand, c / k);
    }
    Ok(out)
}

pub fn pd_inverse(w: &Element) -> Result<Element> {
    let n = w.signature().len() / 2;
    let c = Calculus::get(n, Side::Primal);
    if **w.signature() != **c.forms() {
        return Err(Error::SignatureMismatch("expected a primal form".into()));
    }
    invert_monomialwise(
        w,
        c.polyvectors(),
        |m| {
            let mut e = m.exponents().to_vec();
            for i in 0..n {
                e[n + i] = 1 - e[n + i];
            }
            Monomial::from_exponents(&e)
        },
        pd,
    )
}

pub fn pd_dual_inverse(f: &Element) -> Result<Element> {
    let n = f.signature().len() / 2;
    let c = Calculus::get(n, Side::Koszul);
    if **f.signature() != **c.dual_polyvectors() {
        return Err(Error::SignatureMismatch("expected a Koszul-side dual polyvector".into()));
    }
    invert_monomialwise(
        f,
        c.polyvectors(),
        |m| {
            // ∂/∂xi powers stay, the xi* block is complemented into xi.
            let e = m.exponents();
            let mut out = vec![0u8; 2 * n];
            for i in 0..n {
                out[i] = 1 - e[n + i];
                out[n + i] = e[i];
            }
            Monomial::from_exponents(&out)
        },
        pd_dual,
    )
}

/// `Δ = PD⁻¹ d PD` on primal polyvectors, `PD⁻¹ d* PD` on Koszul ones.
pub fn bv_operator(p: &Element) -> Result<Element> {
    let c = polyvector_calculus(p)?;
    match c.side() {
        Side::Primal => pd_inverse(&c.de_rham(&pd(p)?)?),
        Side::Koszul => pd_dual_inverse(&c.dual_de_rham(&pd_dual(p)?)?),
    }
}

/// Bases of every polyvector slice with `odd` in `0..=n` and weight in
/// `-n..=max_weight`.
fn polyvector_slices(c: &Calculus, max_weight: i32) -> Result<Vec<Basis>> {
    let n = c.n() as i32;
    let mut out = Vec::new();
    for odd in 0..=c.n() as u32 {
        for w in -n..=max_weight {
            let b = Basis::slice(c.polyvectors(), odd, w)?;
            if !b.is_empty() {
                out.push(b);
            }
        }
    }
    Ok(out)
}

/// First basis element of any slice where `defect` is nonzero.
fn first_defect<F>(slices: &[Basis], defect: F) -> Result<Option<(Element, Element)>>
where
    F: Fn(&Element) -> Result<Element> + Sync + Send,
{
    let found = parallel::map(slices, |b| -> Result<Option<(Element, Element)>> {
        for i in 0..b.len() {
            let p = b.element(i);
            let d = defect(&p)?;
            if !d.is_zero() {
                return Ok(Some((p, d)));
            }
        }
        Ok(None)
    });
    for f in found {
        if let Some(w) = f? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Unimodularity {
    Unimodular,
    NotUnimodular,
    /// The cycle test and the square test disagree.
    Discrepancy,
}

#[derive(Clone, Debug)]
pub struct UnimodularReport {
    pub side: Side,
    pub verdict: Unimodularity,
    /// `∂η` on the primal side, `δη!` on the Koszul side.
    pub cycle_witness: Element,
    /// A polyvector `P` and the nonzero value of `PD(δP) + ∂PD(P)`
    /// (resp. `PD(δP) + δ PD(P)`).
    pub square_witness: Option<(Element, Element)>,
    pub max_weight: i32,
}

impl UnimodularReport {
    pub fn is_unimodular(&self) -> bool {
        self.verdict == Unimodularity::Unimodular
    }
}

/// Decides unimodularity for the standard constant volume form by two
/// independent tests: the cycle condition on the volume form, and the square
/// `PD∘δ = -∂∘PD` on every polyvector slice up to `max_weight`.
pub fn is_unimodular(pi: &QuadraticBivector, max_weight: i32) -> Result<UnimodularReport> {
    require_jacobi(pi)?;
    let c = pi.calculus();
    let slices = polyvector_slices(&c, max_weight)?;
    let (cycle_witness, square_witness) = match pi.side() {
        Side::Primal => (
            poisson_boundary(pi, &c.volume_form())?,
            first_defect(&slices, |p| pd(&poisson_coboundary(pi, p)?)?.add(&poisson_boundary(pi, &pd(p)?)?))?,
        ),
        Side::Koszul => {
            let cache = BoundaryCache::new(pi);
            (
                cache.coboundary_dual(&c.dual_volume())?,
                first_defect(&slices, |p| pd_dual(&poisson_coboundary(pi, p)?)?.add(&cache.coboundary_dual(&pd_dual(p)?)?))?,
            )
        }
    };
    let verdict = match (cycle_witness.is_zero(), square_witness.is_none()) {
        (true, true) => Unimodularity::Unimodular,
        (false, false) => Unimodularity::NotUnimodular,
        _ => Unimodularity::Discrepancy,
    };
    Ok(UnimodularReport { side: pi.side(), verdict, cycle_witness, square_witness, max_weight })
}

#[derive(Clone, Debug)]
pub struct Theorem2Report {
    pub primal: UnimodularReport,
    pub dual: UnimodularReport,
    pub verdicts_agree: bool,
    /// Number of basis polyvectors on which `PD!∘Ψ = Φ∘PD` was checked.
    pub square_checked: usize,
    pub square_failure: Option<Element>,
}

impl Theorem2Report {
    pub fn holds(&self) -> bool {
        self.verdicts_agree && self.square_failure.is_none()
    }
}

/// Compares unimodularity of π and π!, and checks the square
/// `PD_{A!} ∘ Ψ = Φ ∘ PD_A` on every primal polyvector slice.
pub fn verify_theorem2(pi: &QuadraticBivector, max_weight: i32) -> Result<Theorem2Report> {
    let (a, b) = match pi.side() {
        Side::Primal => (pi.clone(), pi.koszul_dual()),
        Side::Koszul => (pi.koszul_dual(), pi.clone()),
    };
    let primal = is_unimodular(&a, max_weight)?;
    let dual = is_unimodular(&b, max_weight)?;
    let c = a.calculus();
    let slices = polyvector_slices(&c, max_weight)?;
    let square_checked = slices.iter().map(Basis::len).sum();
    let square_failure = first_defect(&slices, |p| pd_dual(&psi(p)?)?.sub(&phi(&pd(p)?)?))?.map(|(p, _)| p);
    let verdicts_agree = primal.verdict == dual.verdict && primal.verdict != Unimodularity::Discrepancy;
    Ok(Theorem2Report { primal, dual, verdicts_agree, square_checked, square_failure })
}

fn parity(p: &Element) -> i64 {
    p.parity().unwrap_or(0) as i64
}

/// `(-1)^{|P|+1}(Δ(PQ) - Δ(P)Q - (-1)^{|P|} P Δ(Q))`.
pub fn bracket_from_bv(p: &Element, q: &Element) -> Result<Element> {
    let e = parity(p);
    let pq = p.mul(q)?;
    let mut out = bv_operator(&pq)?;
    out.add_scaled(&bv_operator(p)?.mul(q)?, &-Q::one());
    out.add_scaled(&p.mul(&bv_operator(q)?)?, &-sign_q(e));
    Ok(out.scale(&sign_q(e + 1)))
}

/// The seven-term identity saying Δ has order two. Returns the defect.
pub fn seven_term_defect(p: &Element, q: &Element, r: &Element) -> Result<Element> {
    let (ep, eq) = (parity(p), parity(q));
    let d = bv_operator;
    let mut s = d(&p.mul(q)?.mul(r)?)?;
    s.add_scaled(&d(&p.mul(q)?)?.mul(r)?, &-Q::one());
    s.add_scaled(&p.mul(&d(&q.mul(r)?)?)?, &-sign_q(ep));
    s.add_scaled(&q.mul(&d(&p.mul(r)?)?)?, &-sign_q((ep + 1) * eq));
    s.add_scaled(&d(p)?.mul(q)?.mul(r)?, &Q::one());
    s.add_scaled(&p.mul(&d(q)?)?.mul(r)?, &sign_q(ep));
    s.add_scaled(&p.mul(q)?.mul(&d(r)?)?, &sign_q(ep + eq));
    let one = Element::one(p.signature());
    s.add_scaled(&d(&one)?.mul(p)?.mul(q)?.mul(r)?, &-Q::one());
    Ok(s)
}

#[derive(Clone, Debug, Default)]
pub struct BvReport {
    pub samples: usize,
    pub bracket_failures: usize,
    pub square_zero_failures: usize,
    pub seven_term_failures: usize,
    /// Samples where `Δδ + δΔ ≠ 0`.
    pub chain_failures: usize,
    pub first_failure: Option<String>,
}

impl BvReport {
    pub fn holds(&self) -> bool {
        self.bracket_failures + self.square_zero_failures + self.seven_term_failures + self.chain_failures == 0
    }
}

fn random_polyvector(r: &mut random::Rng64, c: &Calculus, max_weight: i32) -> Result<Element> {
    use rand::Rng;
    let n = c.n() as i32;
    let odd = r.gen_range(0..=c.n() as u32);
    let w = r.gen_range(-n.min(odd as i32)..=max_weight);
    random::polyvector(r, c, odd, w, 3)
}

/// Checks the BV relations on `samples` random homogeneous triples. Refuses
/// non-unimodular input.
pub fn verify_bv_identity(pi: &QuadraticBivector, samples: usize, max_weight: i32, seed: u64) -> Result<BvReport> {
    let u = is_unimodular(pi, max_weight.min(3))?;
    if !u.is_unimodular() {
        return Err(Error::NotUnimodular { witness: u.cycle_witness.to_string() });
    }
    let c = pi.calculus();
    let mut r = random::rng(seed);
    let mut inputs = Vec::with_capacity(samples);
    for _ in 0..samples {
        let p = random_polyvector(&mut r, &c, max_weight)?;
        let q = random_polyvector(&mut r, &c, max_weight)?;
        let s = random_polyvector(&mut r, &c, max_weight)?;
        inputs.push((p, q, s));
    }
    let results = parallel::map(&inputs, |(p, q, s)| -> Result<[Option<String>; 4]> {
        // Ψ reverses the Schouten bracket, so on the exterior side Δ
        // generates its negative.
        let br = match c.side() {
            Side::Primal => c.schouten(p, q)?,
            Side::Koszul => c.schouten(p, q)?.neg(),
        };
        let bracket = (br != bracket_from_bv(p, q)?).then(|| format!("bracket identity fails for P={p}, Q={q}"));
        let dp = bv_operator(p)?;
        let sq = (!bv_operator(&dp)?.is_zero()).then(|| format!("Δ² ≠ 0 on {p}"));
        let seven = (!seven_term_defect(p, q, s)?.is_zero()).then(|| format!("order-two identity fails for {p}, {q}, {s}"));
        let chain = bv_operator(&poisson_coboundary(pi, p)?)?.add(&poisson_coboundary(pi, &dp)?)?;
        let chain = (!chain.is_zero()).then(|| format!("Δδ + δΔ = {chain} on {p}"));
        Ok([bracket, sq, seven, chain])
    });
    let mut rep = BvReport { samples, ..Default::default() };
    for res in results {
        let [a, b, s, ch] = res?;
        rep.bracket_failures += a.is_some() as usize;
        rep.square_zero_failures += b.is_some() as usize;
        rep.seven_term_failures += s.is_some() as usize;
        rep.chain_failures += ch.is_some() as usize;
        if rep.first_failure.is_none() {
            rep.first_failure = a.or(b).or(s).or(ch);
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Default)]
pub struct Theorem3Report {
    pub representatives: usize,
    /// Representatives where `ΨΔ(P) = ΔΨ(P)` already at chain level.
    pub exact: usize,
    /// Representatives where the difference is a nonzero coboundary.
    pub cohomologous: usize,
    pub products_checked: usize,
    pub failure: Option<String>,
}

impl Theorem3Report {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Whether `x` is `δ` of something in the slice one step down.
fn is_coboundary(cx: &Complex<'_>, x: &Element) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    let sig = cx.signature();
    let (odd, w) = {
        let m = x.terms().keys().next().expect("nonzero");
        (m.odd_count(sig) as i64, m.weight(sig))
    };
    let mat = cx.matrix(odd - 1, w)?;
    let target = cx.basis(odd, w)?;
    let v = target.coords(x)?;
    Ok(matches!(solve_in_image(&mat, &v)?, Solve::Solution(_)))
}

/// For cocycle representatives in the given primal slices, checks that Ψ
/// intertwines the BV operators and the products up to coboundaries.
pub fn verify_theorem3(pi: &QuadraticBivector, degrees: std::ops::RangeInclusive<u32>, max_weight: i32) -> Result<Theorem3Report> {
    let a = match pi.side() {
        Side::Primal => pi.clone(),
        Side::Koszul => pi.koszul_dual(),
    };
    let b = a.koszul_dual();
    for s in [&a, &b] {
        let u = is_unimodular(s, max_weight.min(3))?;
        if !u.is_unimodular() {
            return Err(Error::NotUnimodular { witness: u.cycle_witness.to_string() });
        }
    }
    let ca = a.calculus();
    let cxa = Complex::new(ca.polyvectors(), 1, |p| poisson_coboundary(&a, p));
    let cxb = Complex::new(b.calculus().polyvectors(), 1, |p| poisson_coboundary(&b, p));
    let n = a.n() as i32;
    let mut jobs = Vec::new();
    for p in degrees {
        for w in -n.min(p as i32)..=max_weight {
            jobs.push((p, w));
        }
    }
    let reps = parallel::map(&jobs, |&(p, w)| -> Result<Vec<Element>> {
        let basis = cxa.basis(p as i64, w)?;
        if basis.is_empty() {
            return Ok(Vec::new());
        }
        let k = rank_kernel(&cxa.matrix(p as i64, w)?);
        Ok(k.kernel.iter().map(|v| basis.combine(v)).collect())
    });
    let mut all = Vec::new();
    for r in reps {
        all.extend(r?);
    }
    let mut rep = Theorem3Report { representatives: all.len(), ..Default::default() };
    let checks = parallel::map(&all, |p| -> Result<(bool, bool)> {
        let diff = psi(&bv_operator(p)?)?.sub(&bv_operator(&psi(p)?)?)?;
        if diff.is_zero() {
            return Ok((true, true));
        }
        Ok((false, is_coboundary(&cxb, &diff)?))
    });
    for (p, c) in all.iter().zip(checks) {
        let (exact, ok) = c?;
        if exact {
            rep.exact += 1;
        } else if ok {
            rep.cohomologous += 1;
        } else if rep.failure.is_none() {
            rep.failure = Some(format!("ΨΔ(P) and ΔΨ(P) are not cohomologous for P = {p}"));
        }
    }
    // Products of representatives, capped to keep the check quadratic-free.
    let limit = all.len().min(24);
    for i in 0..limit {
        for j in i..limit {
            let diff = psi(&all[i].mul(&all[j])?)?.sub(&psi(&all[i])?.mul(&psi(&all[j])?)?)?;
            rep.products_checked += 1;
            if !is_coboundary(&cxb, &diff)? && rep.failure.is_none() {
                rep.failure = Some(format!("Ψ does not respect the product of {} and {}", all[i], all[j]));
            }
        }
    }
    Ok(rep)
}

fn check_polynomial(f: &Element, n: usize, degree: u32, what: &str) -> Result<Element> {
    let c = Calculus::get(n, Side::Primal);
    let f = if **f.signature() == **c.forms() { f.with_signature(c.polyvectors()) } else { f.clone() };
    if **f.signature() != **c.polyvectors() {
        return Err(Error::SignatureMismatch(format!("{what} must be a polynomial in x1..x{n}")));
    }
    for m in f.terms().keys() {
        if m.odd_count(f.signature()) != 0 || m.degree() != degree {
            return Err(Error::Input(format!("{what} must be homogeneous of degree {degree}; found {f}")));
        }
    }
    Ok(f)
}

/// `{x,y} = ∂φ/∂z`, `{y,z} = ∂φ/∂x`, `{z,x} = ∂φ/∂y` for a cubic φ in `x1, x2, x3`.
pub fn eg_bracket(phi_cubic: &Element) -> Result<QuadraticBivector> {
    let f = check_polynomial(phi_cubic, 3, 3, "φ")?;
    let d = |i| left_partial(i, &f);
    QuadraticBivector::from_brackets(3, &[(1, 2, d(2)), (2, 3, d(0)), (3, 1, d(1))])
}

/// `α = Σ α_i dx_i` from four cubic coefficients.
pub fn pym_form(coefficients: &[Element]) -> Result<Element> {
    if coefficients.len() != 4 {
        return Err(Error::Dimension { expected: 4, got: coefficients.len() });
    }
    let c = Calculus::get(4, Side::Primal);
    let mut a = Element::zero(c.forms());
    for (i, f) in coefficients.iter().enumerate() {
        let f = check_polynomial(f, 4, 3, "coefficient of α")?.with_signature(c.forms());
        a.add_scaled(&f.mul(&Element::generator(c.forms(), 4 + i))?, &Q::one());
    }
    Ok(a)
}

/// `{f, g} dx_1∧…∧dx_4 = df∧dg∧dα` for a 1-form α with cubic coefficients
/// satisfying `α∧dα = 0` and `Σ x_i α_i = 0`.
pub fn pym_bracket(alpha: &Element) -> Result<QuadraticBivector> {
    let c = Calculus::get(4, Side::Primal);
    if **alpha.signature() != **c.forms() {
        return Err(Error::SignatureMismatch("α must be a form in x1..x4".into()));
    }
    for m in alpha.terms().keys() {
        if m.odd_count(alpha.signature()) != 1 || m.degree() != 4 {
            return Err(Error::Input(format!("α must be a 1-form with cubic coefficients; found {alpha}")));
        }
    }
    let da = c.de_rham(alpha)?;
    let integrable = alpha.mul(&da)?;
    if !integrable.is_zero() {
        return Err(Error::Input(format!("α∧dα = {integrable} is not zero")));
    }
    let euler = c.poly("x1*px1 + x2*px2 + x3*px3 + x4*px4")?;
    let radial = c.contract(&euler, alpha)?;
    if !radial.is_zero() {
        return Err(Error::Input(format!("Σ x_i α_i = {radial} is not zero")));
    }
    let top: Monomial = Monomial::from_exponents(&[0, 0, 0, 0, 1, 1, 1, 1]);
    let mut brackets = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let w = Element::generator(c.forms(), 4 + i).mul(&Element::generator(c.forms(), 4 + j))?.mul(&da)?;
            let mut coeff = Element::zero(c.polyvectors());
            for (m, x) in w.terms() {
                let mut e = m.exponents().to_vec();
                if e[4..] != top.exponents()[4..] {
                    continue;
                }
                e[4..].iter_mut().for_each(|v| *v = 0);
                coeff.add_term(Monomial::from_exponents(&e), x.clone());
            }
            brackets.push((i + 1, j + 1, coeff));
        }
    }
    QuadraticBivector::from_brackets(4, &brackets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pd_examples() {
        let c = Calculus::get(2, Side::Primal);
        assert_eq!(pd(&c.poly("1").unwrap()).unwrap(), c.volume_form());
        assert_eq!(pd(&c.poly("px1*px2").unwrap()).unwrap(), c.form("-1").unwrap());
        let k = Calculus::get(2, Side::Koszul);
        assert_eq!(pd_dual(&k.poly("1").unwrap()).unwrap(), k.dual_volume());
    }

    #[test]
    fn pd_inverses() {
        let c = Calculus::get(3, Side::Primal);
        let p = c.poly("x1^2*px2 - 3*x2*x3*px1*px3 + 7 + x1*px1*px2*px3").unwrap();
        assert_eq!(pd_inverse(&pd(&p).unwrap()).unwrap(), p);
        let k = Calculus::get(3, Side::Koszul);
        let p = k.poly("xi1*pxi2^2 - 2*xi1*xi3*pxi1 + 5 + xi1*xi2*xi3").unwrap();
        assert_eq!(pd_dual_inverse(&pd_dual(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn bv_examples() {
        let c = Calculus::get(2, Side::Primal);
        assert!(bv_operator(&c.poly("x1*x2").unwrap()).unwrap().is_zero());
        assert_eq!(bv_operator(&c.poly("x1*px1").unwrap()).unwrap(), c.poly("1").unwrap());
        assert!(bv_operator(&c.poly("x2*px1").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn eg_examples() {
        let c = Calculus::get(3, Side::Primal);
        let pi = eg_bracket(&c.poly("x1*x2*x3").unwrap()).unwrap();
        let x = |i: usize| c.poly(&format!("x{i}")).unwrap();
        assert_eq!(pi.bracket(&x(1), &x(2)).unwrap(), c.poly("x1*x2").unwrap());
        assert_eq!(pi.bracket(&x(2), &x(3)).unwrap(), c.poly("x2*x3").unwrap());
        assert_eq!(pi.bracket(&x(3), &x(1)).unwrap(), c.poly("x1*x3").unwrap());
        let pi = eg_bracket(&c.poly("x1^3").unwrap()).unwrap();
        assert_eq!(pi.bracket(&x(2), &x(3)).unwrap(), c.poly("3*x1^2").unwrap());
        assert!(pi.bracket(&x(1), &x(2)).unwrap().is_zero());
        assert!(eg_bracket(&c.poly("x1^2").unwrap()).is_err());
    }
}
