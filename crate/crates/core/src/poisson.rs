//! Quadratic bivectors, the Koszul boundary and the Lichnerowicz coboundary.

use std::collections::HashMap;
use std::ops::RangeInclusive;
use std::sync::{Arc, Mutex};

use num_traits::One;

use crate::algebra::{Element, Monomial};
use crate::calculus::{Calculus, Side};
use crate::complex::{BettiTable, Complex};
use crate::error::{Error, Result};
use crate::koszul;
use crate::scalar::Q;

/// `coeff · y_{i1} y_{i2} ∂_{j1} ∂_{j2}`, indices 1-based.
///
/// On the Koszul side the same tuple stands for
/// `coeff · xi_{j1} xi_{j2} ∂/∂xi_{i1} ∂/∂xi_{i2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub i1: usize,
    pub i2: usize,
    pub j1: usize,
    pub j2: usize,
    pub coeff: Q,
}

/// A quadratic bivector, stored normalized as a polyvector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticBivector {
    n: usize,
    side: Side,
    body: Element,
}

impl QuadraticBivector {
    pub fn zero(n: usize, side: Side) -> Self {
        let calc = Calculus::get(n, side);
        QuadraticBivector { n, side, body: Element::zero(calc.polyvectors()) }
    }

    pub fn new(n: usize, side: Side, terms: &[Term]) -> Result<Self> {
        let calc = Calculus::get(n, side);
        let sig = calc.polyvectors();
        let mut body = Element::zero(sig);
        for t in terms {
            for (name, v) in [("i1", t.i1), ("i2", t.i2), ("j1", t.j1), ("j2", t.j2)] {
                if v == 0 || v > n {
                    return Err(Error::Input(format!("index {name}={v} outside 1..={n}")));
                }
            }
            let (c1, c2, m1, m2) = (t.i1 - 1, t.i2 - 1, n + t.j1 - 1, n + t.j2 - 1);
            let word = match side {
                Side::Primal => [c1, c2, m1, m2],
                // xi_{j} live at 0..n, ∂/∂xi_{i} at n..2n
                Side::Koszul => [t.j1 - 1, t.j2 - 1, n + t.i1 - 1, n + t.i2 - 1],
            };
            if let Some((neg, m)) = Monomial::from_word(sig, &word) {
                body.add_term(m, if neg { -t.coeff.clone() } else { t.coeff.clone() });
            }
        }
        Ok(QuadraticBivector { n, side, body })
    }

    /// Accepts any polyvector whose terms are quadratic in coordinates and of arity two.
    pub fn from_element(n: usize, side: Side, body: Element) -> Result<Self> {
        let calc = Calculus::get(n, side);
        if body.signature() != calc.polyvectors() && **body.signature() != **calc.polyvectors() {
            return Err(Error::SignatureMismatch("bivector over the wrong signature".into()));
        }
        let sig = calc.polyvectors();
        for m in body.terms().keys() {
            let coords: u32 = (0..n).map(|i| m.exp(i) as u32).sum();
            let moms: u32 = (0..n).map(|i| m.exp(n + i) as u32).sum();
            let (c, p) = match side {
                Side::Primal => (coords, moms),
                Side::Koszul => (moms, coords),
            };
            if c != 2 || p != 2 {
                return Err(Error::Input(format!("term {} is not quadratic of arity two", Element::term(sig, m.clone(), Q::one()))));
            }
        }
        Ok(QuadraticBivector { n, side, body: body.with_signature(sig) })
    }

    /// π = Σ_{a<b} {x_a, x_b} ∂_a ∂_b on the primal side.
    pub fn from_brackets(n: usize, brackets: &[(usize, usize, Element)]) -> Result<Self> {
        let calc = Calculus::get(n, Side::Primal);
        let sig = calc.polyvectors();
        let mut body = Element::zero(sig);
        for (a, b, f) in brackets {
            if a == b || *a == 0 || *b == 0 || *a > n || *b > n {
                return Err(Error::Input(format!("bad bracket indices ({a},{b})")));
            }
            let f = f.with_signature(sig);
            let (neg, m) = Monomial::from_word(sig, &[n + a - 1, n + b - 1]).expect("distinct");
            let theta = Element::term(sig, m, if neg { -Q::one() } else { Q::one() });
            body.add_scaled(&f.mul(&theta)?, &Q::one());
        }
        Self::from_element(n, Side::Primal, body)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn body(&self) -> &Element {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn calculus(&self) -> Arc<Calculus> {
        Calculus::get(self.n, self.side)
    }

    /// Canonical term list: i1 ≤ i2, j1 < j2, one entry per monomial.
    pub fn terms(&self) -> Vec<Term> {
        let n = self.n;
        let mut out = Vec::new();
        for (m, c) in self.body.terms() {
            let (coord_block, mom_block) = match self.side {
                Side::Primal => (0, n),
                Side::Koszul => (n, 0),
            };
            let mut is = Vec::new();
            let mut js = Vec::new();
            for i in 0..n {
                for _ in 0..m.exp(coord_block + i) {
                    is.push(i + 1);
                }
                for _ in 0..m.exp(mom_block + i) {
                    js.push(i + 1);
                }
            }
            out.push(Term { i1: is[0], i2: is[1], j1: js[0], j2: js[1], coeff: c.clone() });
        }
        out.sort_by_key(|t| (t.i1, t.i2, t.j1, t.j2));
        out
    }

    /// π ↦ π!: same coefficient tensor on the other side.
    pub fn koszul_dual(&self) -> QuadraticBivector {
        let body = match self.side {
            Side::Primal => koszul::psi(&self.body),
            Side::Koszul => koszul::psi_inverse(&self.body),
        }
        .expect("bivector lives on the polyvector signature");
        QuadraticBivector { n: self.n, side: self.side.flip(), body }
    }

    /// `{f, g} = [[π, g], f]` for arity-zero polyvectors, so that
    /// `{x_a, x_b}` is the coefficient of `∂_a ∂_b` in π.
    pub fn bracket(&self, f: &Element, g: &Element) -> Result<Element> {
        let c = self.calculus();
        c.schouten(&c.schouten(&self.body, g)?, f)
    }
}

#[derive(Clone, Debug)]
pub struct JacobiReport {
    pub holds: bool,
    /// `[π, π]`; zero exactly when the identity holds.
    pub witness: Element,
}

pub fn jacobi_check(pi: &QuadraticBivector) -> JacobiReport {
    let c = pi.calculus();
    let witness = c.schouten(pi.body(), pi.body()).expect("same signature");
    JacobiReport { holds: witness.is_zero(), witness }
}

pub(crate) fn require_jacobi(pi: &QuadraticBivector) -> Result<()> {
    let r = jacobi_check(pi);
    if r.holds {
        Ok(())
    } else {
        Err(Error::NotJacobi { witness: r.witness.to_string() })
    }
}

/// Koszul boundary `∂ = [d, ι_π] = d ι_π - ι_π d` on forms.
pub fn poisson_boundary(pi: &QuadraticBivector, w: &Element) -> Result<Element> {
    let c = pi.calculus();
    let a = c.de_rham(&c.contract(pi.body(), w)?)?;
    let b = c.contract(pi.body(), &c.de_rham(w)?)?;
    a.sub(&b)
}

/// Sign s in `δ = s (-1)^ε [π, -]`, ε the parity of the coordinates.
const COBOUNDARY_SIGN: i32 = 1;

/// Lichnerowicz coboundary with values in the algebra itself.
pub fn poisson_coboundary(pi: &QuadraticBivector, p: &Element) -> Result<Element> {
    let c = pi.calculus();
    let br = c.schouten(pi.body(), p)?;
    let s = COBOUNDARY_SIGN * if pi.side() == Side::Koszul { -1 } else { 1 };
    Ok(if s == 1 { br } else { br.neg() })
}

/// Lichnerowicz coboundary with values in the linear dual: minus the
/// (twisted) transpose of the Koszul boundary on forms of the same side.
/// The overall sign makes Φ a chain map; it does not affect cohomology.
pub fn poisson_coboundary_dual(pi: &QuadraticBivector, phi: &Element) -> Result<Element> {
    BoundaryCache::new(pi).coboundary_dual(phi)
}

/// `∂` on single monomials, remembered; the dual coboundary applies `∂` to
/// whole neighbouring form slices for every input, so repeated calls share it.
pub(crate) struct BoundaryCache<'a> {
    pi: &'a QuadraticBivector,
    seen: Mutex<HashMap<Monomial, Element>>,
}

impl<'a> BoundaryCache<'a> {
    pub(crate) fn new(pi: &'a QuadraticBivector) -> Self {
        BoundaryCache { pi, seen: Mutex::new(HashMap::new()) }
    }

    fn boundary(&self, w: &Element) -> Result<Element> {
        let mut it = w.terms().iter();
        let (Some((m, c)), None) = (it.next(), it.next()) else { return poisson_boundary(self.pi, w) };
        if let Some(v) = self.seen.lock().expect("cache lock").get(m) {
            return Ok(v.scale(c));
        }
        let unit = Element::term(w.signature(), m.clone(), Q::one());
        let v = poisson_boundary(self.pi, &unit)?;
        let out = v.scale(c);
        self.seen.lock().expect("cache lock").insert(m.clone(), v);
        Ok(out)
    }

    pub(crate) fn coboundary_dual(&self, phi: &Element) -> Result<Element> {
        let c = self.pi.calculus();
        Ok(c.signed_transpose(|w| self.boundary(w), phi)?.neg())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    SelfValued,
    Dual,
}

pub fn poisson_coboundary_with(pi: &QuadraticBivector, x: &Element, coeff: Coefficients) -> Result<Element> {
    match coeff {
        Coefficients::SelfValued => poisson_coboundary(pi, x),
        Coefficients::Dual => poisson_coboundary_dual(pi, x),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    /// Homology of forms under ∂.
    HpLow,
    /// Cohomology of polyvectors under δ.
    HpHigh,
    /// Cohomology of dual polyvectors under the dual δ.
    HpHighDual,
}

impl Which {
    pub fn parse(s: &str) -> Result<Which> {
        match s {
            "hp_low" => Ok(Which::HpLow),
            "hp_high" => Ok(Which::HpHigh),
            "hp_high_dual" => Ok(Which::HpHighDual),
            _ => Err(Error::Input(format!("unknown complex {s:?}; expected hp_low, hp_high or hp_high_dual"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Which::HpLow => "hp_low",
            Which::HpHigh => "hp_high",
            Which::HpHighDual => "hp_high_dual",
        }
    }
}

/// The complex as slices keyed by (odd-generator count, total weight).
pub fn complex(pi: &QuadraticBivector, which: Which) -> Complex<'_> {
    let c = pi.calculus();
    match which {
        Which::HpLow => {
            // ∂ lowers the dx count on Ω(A) but raises the xi count on Ω(A!).
            let step = match pi.side() {
                Side::Primal => -1,
                Side::Koszul => 1,
            };
            Complex::new(c.forms(), step, move |w| poisson_boundary(pi, w))
        }
        Which::HpHigh => {
            // δ adds one odd polyvector generator on both sides.
            Complex::new(c.polyvectors(), 1, move |p| poisson_coboundary(pi, p))
        }
        Which::HpHighDual => {
            // ∂ lowers the dy count; its transpose raises the count of the
            // matching dual generators, which are odd on the primal side
            // (∂/∂x) and even on the Koszul side (∂/∂xi, paired with dxi).
            // On Ω(A!) ∂ raises the xi count, so the transpose lowers xi*.
            let step = match pi.side() {
                Side::Primal => 1,
                Side::Koszul => -1,
            };
            let cache = BoundaryCache::new(pi);
            Complex::new(c.dual_polyvectors(), step, move |p| cache.coboundary_dual(p))
        }
    }
}

/// Exact (co)homology dimensions per (degree, weight); refuses non-Poisson input.
pub fn homology_dims(
    pi: &QuadraticBivector,
    which: Which,
    degrees: RangeInclusive<u32>,
    weights: RangeInclusive<i32>,
) -> Result<BettiTable> {
    require_jacobi(pi)?;
    complex(pi, which).betti(degrees, weights)
}

/// Weight window used for polyvector tables: arity p has weights ≥ -p.
pub fn weight_window(which: Which, n: usize, max_weight: i32) -> RangeInclusive<i32> {
    match which {
        Which::HpHigh => -(n as i32)..=max_weight,
        _ => 0..=max_weight,
    }
}
