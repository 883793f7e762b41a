//! Forms, polyvectors and dual polyvectors over a base of `n` coordinates.
//!
//! On the primal side the coordinates are even (`x_i`), on the Koszul side
//! they are odd (`xi_i`). All four spaces are free graded-commutative algebras:
//!
//! | space              | generators             | primal names | koszul names     |
//! |--------------------|------------------------|--------------|------------------|
//! | forms              | `y_i`, `dy_i`          | `x1`, `dx1`  | `xi1`, `dxi1`    |
//! | polyvectors        | `y_i`, `∂y_i`          | `x1`, `px1`  | `xi1`, `pxi1`    |
//! | dual polyvectors   | `∂y_i`, `y_i*`         | `px1`, `xstar1` | `pxi1`, `xistar1` |
//!
//! Dual polyvectors are functionals on forms: `y_i*` pairs with `y_i` and
//! `∂y_i` with `dy_i`.
//!
//! Polyvectors act on forms from the left: `ι_{PQ} = ι_P ι_Q`. A coordinate
//! acts by multiplication, `∂y_i` by the left derivative in `dy_i`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::algebra::{apply_derivation, check_same, left_partial, right_partial, Basis, Element, Generator, Monomial, Parity, Signature};
use crate::error::{Error, Result};
use crate::scalar::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Primal,
    Koszul,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Primal => Side::Koszul,
            Side::Koszul => Side::Primal,
        }
    }

    /// Parity of the base coordinates.
    pub fn parity(self) -> Parity {
        match self {
            Side::Primal => Parity::Even,
            Side::Koszul => Parity::Odd,
        }
    }

    pub fn parse(s: &str) -> Result<Side> {
        match s {
            "primal" => Ok(Side::Primal),
            "koszul" => Ok(Side::Koszul),
            _ => Err(Error::Input(format!("side must be primal or koszul, got {s:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Primal => "primal",
            Side::Koszul => "koszul",
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The three signatures for one base, plus the operations between them.
#[derive(Debug)]
pub struct Calculus {
    n: usize,
    side: Side,
    forms: Arc<Signature>,
    polys: Arc<Signature>,
    duals: Arc<Signature>,
}

fn build(n: usize, side: Side) -> Calculus {
    let (y, w): (&str, [i32; 2]) = match side {
        Side::Primal => ("x", [1, 0]),
        Side::Koszul => ("xi", [0, 1]),
    };
    let neg = [-w[0], -w[1]];
    let eps = side.parity();
    // Homological degree of a coordinate: 0 for x, -1 for xi.
    let hy = match side {
        Side::Primal => 0,
        Side::Koszul => -1,
    };
    let mut forms = Vec::new();
    let mut polys = Vec::new();
    let mut duals = Vec::new();
    for i in 1..=n {
        forms.push(Generator::new(format!("{y}{i}"), eps, hy, w));
    }
    for i in 1..=n {
        forms.push(Generator::new(format!("d{y}{i}"), eps.flip(), hy + 1, w));
    }
    // Polyvector weights are chosen so that the bracket with a quadratic
    // bivector preserves weight and so that x_i and the Koszul ∂/∂xi_i match.
    let (wy, wp) = match side {
        Side::Primal => (w, neg),
        Side::Koszul => (neg, w),
    };
    for i in 1..=n {
        polys.push(Generator::new(format!("{y}{i}"), eps, hy, wy));
    }
    for i in 1..=n {
        polys.push(Generator::new(format!("p{y}{i}"), eps.flip(), -(hy + 1), wp));
    }
    for i in 1..=n {
        duals.push(Generator::new(format!("p{y}{i}"), eps.flip(), -(hy + 1), w));
    }
    for i in 1..=n {
        duals.push(Generator::new(format!("{y}star{i}"), eps, -hy, w));
    }
    Calculus {
        n,
        side,
        forms: Signature::new(forms).expect("valid names"),
        polys: Signature::new(polys).expect("valid names"),
        duals: Signature::new(duals).expect("valid names"),
    }
}

impl Calculus {
    /// Shared instance for `(n, side)`.
    pub fn get(n: usize, side: Side) -> Arc<Calculus> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, Side), Arc<Calculus>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard.entry((n, side)).or_insert_with(|| Arc::new(build(n, side))).clone()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn forms(&self) -> &Arc<Signature> {
        &self.forms
    }

    pub fn polyvectors(&self) -> &Arc<Signature> {
        &self.polys
    }

    pub fn dual_polyvectors(&self) -> &Arc<Signature> {
        &self.duals
    }

    pub fn form(&self, text: &str) -> Result<Element> {
        Element::parse(&self.forms, text)
    }

    pub fn poly(&self, text: &str) -> Result<Element> {
        Element::parse(&self.polys, text)
    }

    pub fn dual(&self, text: &str) -> Result<Element> {
        Element::parse(&self.duals, text)
    }

    /// Standard volume form dy_1 ... dy_n.
    pub fn volume_form(&self) -> Element {
        let mut m = Monomial::one(2 * self.n);
        for i in 0..self.n {
            m.set_exp(self.n + i, 1);
        }
        Element::term(&self.forms, m, Q::one())
    }

    /// Dual volume y_1* ... y_n*.
    pub fn dual_volume(&self) -> Element {
        let mut m = Monomial::one(2 * self.n);
        for i in 0..self.n {
            m.set_exp(self.n + i, 1);
        }
        Element::term(&self.duals, m, Q::one())
    }

    fn expect(&self, e: &Element, sig: &Arc<Signature>, what: &str) -> Result<()> {
        check_same(e.signature(), sig).map_err(|_| Error::SignatureMismatch(format!("expected a {what} over {sig}")))
    }

    pub fn wedge(&self, p: &Element, q: &Element) -> Result<Element> {
        self.expect(p, &self.polys, "polyvector")?;
        p.mul(q)
    }

    /// Schouten bracket
    /// `[P,Q] = Σ_i (P ∂←/∂(∂y_i))(∂→/∂y_i Q) - (P ∂←/∂y_i)(∂→/∂(∂y_i) Q)`.
    pub fn schouten(&self, p: &Element, q: &Element) -> Result<Element> {
        self.expect(p, &self.polys, "polyvector")?;
        self.expect(q, &self.polys, "polyvector")?;
        let n = self.n;
        let mut out = Element::zero(&self.polys);
        for i in 0..n {
            let a = right_partial(n + i, p);
            if !a.is_zero() {
                let b = left_partial(i, q);
                out.add_scaled(&a.mul(&b)?, &Q::one());
            }
            let c = right_partial(i, p);
            if !c.is_zero() {
                let d = left_partial(n + i, q);
                out.add_scaled(&c.mul(&d)?, &-Q::one());
            }
        }
        Ok(out)
    }

    /// de Rham differential on forms.
    pub fn de_rham(&self, w: &Element) -> Result<Element> {
        self.expect(w, &self.forms, "form")?;
        let table: BTreeMap<usize, Element> = (0..self.n).map(|i| (i, Element::generator(&self.forms, self.n + i))).collect();
        apply_derivation(&table, 1, w)
    }

    /// Contraction `ι_P ω`.
    pub fn contract(&self, p: &Element, w: &Element) -> Result<Element> {
        self.expect(p, &self.polys, "polyvector")?;
        self.expect(w, &self.forms, "form")?;
        let n = self.n;
        let mut out = Element::zero(&self.forms);
        for (m, c) in p.terms() {
            let mut cur = w.clone();
            for i in (0..n).rev() {
                for _ in 0..m.exp(n + i) {
                    cur = left_partial(n + i, &cur);
                }
            }
            if cur.is_zero() {
                continue;
            }
            let mut ya = Monomial::one(2 * n);
            for i in 0..n {
                ya.set_exp(i, m.exp(i));
            }
            out.add_scaled(&cur.mul_monomial_left(&ya), c);
        }
        Ok(out)
    }

    /// `ι_P dω - (-1)^{|P|} d ι_P ω`, split over the parity components of P.
    pub fn lie_derivative(&self, p: &Element, w: &Element) -> Result<Element> {
        let dw = self.de_rham(w)?;
        let mut out = Element::zero(&self.forms);
        for (pp, part) in self.parity_parts(p)? {
            out.add_scaled(&self.contract(&part, &dw)?, &Q::one());
            let s = if pp == 0 { -Q::one() } else { Q::one() };
            out.add_scaled(&self.de_rham(&self.contract(&part, w)?)?, &s);
        }
        Ok(out)
    }

    /// `[d, ι_P] = d ι_P - (-1)^{|P|} ι_P d`.
    pub fn cartan_lie(&self, p: &Element, w: &Element) -> Result<Element> {
        let dw = self.de_rham(w)?;
        let mut out = Element::zero(&self.forms);
        for (pp, part) in self.parity_parts(p)? {
            out.add_scaled(&self.de_rham(&self.contract(&part, w)?)?, &Q::one());
            let s = if pp == 0 { -Q::one() } else { Q::one() };
            out.add_scaled(&self.contract(&part, &dw)?, &s);
        }
        Ok(out)
    }

    fn parity_parts(&self, p: &Element) -> Result<Vec<(u32, Element)>> {
        self.expect(p, &self.polys, "polyvector")?;
        let sig = p.signature();
        Ok((0..2u32).map(|par| (par, p.filter(|m| m.parity(sig) == par))).filter(|(_, e)| !e.is_zero()).collect())
    }

    /// `ι*_P φ`: `y_i` acts as the left derivative in `y_i*`, `∂y_i` by
    /// multiplication, generators of P applied right to left.
    pub fn contract_dual(&self, p: &Element, phi: &Element) -> Result<Element> {
        self.expect(p, &self.polys, "polyvector")?;
        self.expect(phi, &self.duals, "dual polyvector")?;
        let n = self.n;
        let mut out = Element::zero(&self.duals);
        for (m, c) in p.terms() {
            let mut mom = Monomial::one(2 * n);
            for i in 0..n {
                mom.set_exp(i, m.exp(n + i));
            }
            let mut cur = phi.mul_monomial_left(&mom);
            for i in (0..n).rev() {
                for _ in 0..m.exp(i) {
                    cur = left_partial(n + i, &cur);
                }
            }
            out.add_scaled(&cur, c);
        }
        Ok(out)
    }

    /// `⟨φ, ω⟩`: φ acts on ω as a constant-coefficient operator
    /// (`y_i* ↦ ∂/∂y_i`, `∂y_i ↦ ∂/∂(dy_i)`, right to left); keep the constant term.
    pub fn pair(&self, phi: &Element, w: &Element) -> Result<Q> {
        self.expect(phi, &self.duals, "dual polyvector")?;
        self.expect(w, &self.forms, "form")?;
        let n = self.n;
        let one = Monomial::one(2 * n);
        let mut total = Q::zero();
        for (m, c) in phi.terms() {
            let mut cur = w.clone();
            for i in (0..n).rev() {
                for _ in 0..m.exp(n + i) {
                    cur = left_partial(i, &cur);
                }
            }
            for i in (0..n).rev() {
                for _ in 0..m.exp(i) {
                    cur = left_partial(n + i, &cur);
                }
            }
            let k = cur.coeff(&one);
            if !k.is_zero() {
                total += c * k;
            }
        }
        Ok(total)
    }

    /// The form monomial a dual monomial pairs with.
    pub fn matching_form(&self, m: &Monomial) -> Monomial {
        let n = self.n;
        let mut f = Monomial::one(2 * n);
        for i in 0..n {
            f.set_exp(i, m.exp(n + i));
            f.set_exp(n + i, m.exp(i));
        }
        f
    }

    /// The dual monomial a form monomial pairs with.
    pub fn matching_dual(&self, f: &Monomial) -> Monomial {
        self.matching_form(f)
    }

    /// Transpose of an operator on forms: returns ψ with
    /// `⟨ψ, ω⟩ = ⟨φ, op(ω)⟩` for all ω. `op` must preserve total weight and
    /// shift the odd count by ±1.
    pub fn transpose<F>(&self, op: F, phi: &Element) -> Result<Element>
    where
        F: Fn(&Element) -> Result<Element>,
    {
        self.expect(phi, &self.duals, "dual polyvector")?;
        let mut out = Element::zero(&self.duals);
        let mut seen: Vec<(u32, i32)> = Vec::new();
        for m in phi.terms().keys() {
            let key = (m.odd_count(&self.duals), m.weight(&self.duals));
            if !seen.contains(&key) {
                seen.push(key);
            }
        }
        for (odd, weight) in seen {
            let part = phi.slice_component(odd, weight);
            for target in [odd as i64 - 1, odd as i64 + 1] {
                if target < 0 {
                    continue;
                }
                let basis = Basis::slice(&self.forms, target as u32, weight)?;
                for fm in basis.monomials() {
                    let w = Element::term(&self.forms, fm.clone(), Q::one());
                    let val = self.pair(&part, &op(&w)?)?;
                    if val.is_zero() {
                        continue;
                    }
                    let dm = self.matching_dual(fm);
                    let norm = self.pair(&Element::term(&self.duals, dm.clone(), Q::one()), &w)?;
                    out.add_term(dm, val / norm);
                }
            }
        }
        Ok(out)
    }

    /// `d*`, the transpose of the de Rham differential, with the sign
    /// `(-1)^{|φ|}` on a component of parity `|φ|`.
    pub fn dual_de_rham(&self, phi: &Element) -> Result<Element> {
        self.signed_transpose(|w| self.de_rham(w), phi)
    }

    /// Transpose of `op` twisted by `(-1)^{|φ|}`.
    pub(crate) fn signed_transpose<F>(&self, op: F, phi: &Element) -> Result<Element>
    where
        F: Fn(&Element) -> Result<Element>,
    {
        self.expect(phi, &self.duals, "dual polyvector")?;
        let sig = phi.signature().clone();
        let mut out = Element::zero(&self.duals);
        for par in 0..2u32 {
            let part = phi.filter(|m| m.parity(&sig) == par);
            if part.is_zero() {
                continue;
            }
            let t = self.transpose(&op, &part)?;
            let s = if par == 1 && DUAL_TWIST { -Q::one() } else { Q::one() };
            out.add_scaled(&t, &s);
        }
        Ok(out)
    }
}

/// Whether transposed operators pick up `(-1)^{|φ|}`.
const DUAL_TWIST: bool = true;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn c2() -> Arc<Calculus> {
        Calculus::get(2, Side::Primal)
    }

    #[test]
    fn wedge_examples() {
        let c = c2();
        let p = c.poly("x1*px2").unwrap();
        let r = c.poly("x2*px1").unwrap();
        assert_eq!(c.wedge(&p, &r).unwrap(), c.poly("-x1*x2*px1*px2").unwrap());
        assert_eq!(c.wedge(&c.poly("1").unwrap(), &r).unwrap(), r);
    }

    #[test]
    fn schouten_examples() {
        let c = c2();
        assert_eq!(c.schouten(&c.poly("px1").unwrap(), &c.poly("x1").unwrap()).unwrap(), c.poly("1").unwrap());
        assert_eq!(c.schouten(&c.poly("x1*px2").unwrap(), &c.poly("x2*px1").unwrap()).unwrap(), c.poly("x1*px1 - x2*px2").unwrap());
    }

    #[test]
    fn contraction_examples() {
        let c = c2();
        assert_eq!(c.contract(&c.poly("px1").unwrap(), &c.form("dx1*dx2").unwrap()).unwrap(), c.form("dx2").unwrap());
        assert!(c.contract(&c.poly("px1*px2").unwrap(), &c.form("dx1").unwrap()).unwrap().is_zero());
        assert_eq!(c.contract(&c.poly("px1*px2").unwrap(), &c.form("dx1*dx2").unwrap()).unwrap(), c.form("-1").unwrap());
    }

    #[test]
    fn de_rham_examples() {
        let c = Calculus::get(3, Side::Primal);
        assert_eq!(c.de_rham(&c.form("x1").unwrap()).unwrap(), c.form("dx1").unwrap());
        assert!(c.de_rham(&c.form("dx1*dx2").unwrap()).unwrap().is_zero());
        assert_eq!(c.de_rham(&c.form("x1*x2*dx3").unwrap()).unwrap(), c.form("x2*dx1*dx3 + x1*dx2*dx3").unwrap());
    }

    #[test]
    fn lie_derivative_examples() {
        let c = c2();
        assert_eq!(c.lie_derivative(&c.poly("px1").unwrap(), &c.form("x1*dx2").unwrap()).unwrap(), c.form("dx2").unwrap());
        assert!(c.lie_derivative(&c.poly("px1").unwrap(), &c.form("0").unwrap()).unwrap().is_zero());
        assert_eq!(c.lie_derivative(&c.poly("x1*px1").unwrap(), &c.form("dx1").unwrap()).unwrap(), c.form("dx1").unwrap());
    }

    #[test]
    fn dual_contraction() {
        let k = Calculus::get(2, Side::Koszul);
        let phi = k.dual("xistar1").unwrap();
        assert_eq!(k.contract_dual(&k.poly("1").unwrap(), &phi).unwrap(), phi);
        assert_eq!(k.contract_dual(&k.poly("xi1").unwrap(), &phi).unwrap(), k.dual("1").unwrap());
        assert_eq!(k.contract_dual(&k.poly("pxi1").unwrap(), &phi).unwrap(), k.dual("pxi1*xistar1").unwrap());
    }

    #[test]
    fn pairing_has_factorials() {
        let k = Calculus::get(1, Side::Koszul);
        let v = k.pair(&k.dual("pxi1^3*xistar1").unwrap(), &k.form("xi1*dxi1^3").unwrap()).unwrap();
        assert_eq!(v, q(6));
        assert_eq!(k.pair(&k.dual("pxi1").unwrap(), &k.form("xi1").unwrap()).unwrap(), q(0));
    }
}
