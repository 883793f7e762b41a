use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use super::{check_same, Element, Monomial, Signature};
use crate::error::Result;
use crate::scalar::Q;

/// Extends `table` (generator index -> image) to a graded derivation of degree
/// parity `sign_degree`: D(uv) = D(u)v + (-1)^{sign_degree |u|} u D(v).
/// Generators missing from the table are sent to zero.
pub fn apply_derivation(table: &BTreeMap<usize, Element>, sign_degree: i64, a: &Element) -> Result<Element> {
    let sig = a.signature();
    for img in table.values() {
        check_same(sig, img.signature())?;
    }
    let odd_der = sign_degree.rem_euclid(2) == 1;
    let mut out = Element::zero(sig);
    for (m, c) in a.terms() {
        let mut prefix = Monomial::one(sig.len());
        let mut prefix_odd = 0u32;
        for idx in 0..sig.len() {
            let e = m.exp(idx);
            if e == 0 {
                continue;
            }
            if let Some(img) = table.get(&idx) {
                if !img.is_zero() {
                    let mut left = prefix.clone();
                    left.set_exp(idx, e - 1);
                    let mut suffix = m.clone();
                    for j in 0..=idx {
                        suffix.set_exp(j, 0);
                    }
                    let mut coeff = c * Q::from_integer(e.into());
                    if odd_der && prefix_odd & 1 == 1 {
                        coeff = -coeff;
                    }
                    let piece = img.mul_monomial_left(&left).mul_monomial_right(&suffix);
                    out.add_scaled(&piece, &coeff);
                }
            }
            prefix.set_exp(idx, e);
            if sig.is_odd(idx) {
                prefix_odd += e as u32;
            }
        }
    }
    Ok(out)
}

/// Left derivative with respect to generator `g`.
pub fn left_partial(g: usize, a: &Element) -> Element {
    let sig = a.signature();
    let table = BTreeMap::from([(g, Element::one(sig))]);
    apply_derivation(&table, sig.is_odd(g) as i64, a).expect("same signature")
}

/// Right derivative: for u = w g, returns w. Equals (-1)^{|g|(|u|+1)} times the left one, termwise.
pub fn right_partial(g: usize, a: &Element) -> Element {
    let sig = a.signature();
    let left = left_partial(g, a);
    if !sig.is_odd(g) {
        return left;
    }
    // |u| + 1 = |left term| (+|g| = +1) + 1, so the sign is (-1)^{|left term|}.
    let mut out = Element::zero(sig);
    for (m, c) in left.terms() {
        let s = if m.parity(sig) == 1 { -c.clone() } else { c.clone() };
        out.add_term(m.clone(), s);
    }
    out
}

/// Algebra map sending generator i to `images[i]` (an element of `target`).
/// Images of odd generators must be odd, of even ones even, for this to be a
/// homomorphism; that is the caller's business.
pub fn substitute(a: &Element, target: &Arc<Signature>, images: &[Element]) -> Result<Element> {
    assert_eq!(images.len(), a.signature().len());
    for img in images {
        check_same(target, img.signature())?;
    }
    let mut out = Element::zero(target);
    for (m, c) in a.terms() {
        let mut acc = Element::constant(target, Q::one());
        for (i, e) in m.exponents().iter().enumerate() {
            for _ in 0..*e {
                acc = acc.mul(&images[i])?;
            }
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{Generator, Parity};
    use super::*;

    fn sig() -> Arc<Signature> {
        Signature::new(vec![
            Generator::new("x1", Parity::Even, 0, [1, 0]),
            Generator::new("x2", Parity::Even, 0, [1, 0]),
            Generator::new("xi1", Parity::Odd, -1, [0, 1]),
            Generator::new("xi2", Parity::Odd, -1, [0, 1]),
            Generator::new("dx1", Parity::Odd, 1, [1, 0]),
            Generator::new("dx2", Parity::Odd, 1, [1, 0]),
        ])
        .unwrap()
    }

    fn p(s: &Arc<Signature>, t: &str) -> Element {
        Element::parse(s, t).unwrap()
    }

    #[test]
    fn examples() {
        let s = sig();
        let t = BTreeMap::from([(0, Element::one(&s))]);
        assert_eq!(apply_derivation(&t, 0, &p(&s, "x1^2")).unwrap(), p(&s, "2*x1"));
        let d = BTreeMap::from([(0, p(&s, "dx1")), (1, p(&s, "dx2"))]);
        assert_eq!(apply_derivation(&d, 1, &p(&s, "x1*x2")).unwrap(), p(&s, "x2*dx1 + x1*dx2"));
        let o = BTreeMap::from([(2, Element::one(&s))]);
        assert_eq!(apply_derivation(&o, 1, &p(&s, "xi1*xi2")).unwrap(), p(&s, "xi2"));
        assert_eq!(apply_derivation(&BTreeMap::from([(3, Element::one(&s))]), 1, &p(&s, "xi1*xi2")).unwrap(), p(&s, "-xi1"));
    }

    #[test]
    fn right_partial_strips_from_the_right() {
        let s = sig();
        assert_eq!(right_partial(2, &p(&s, "xi1*xi2")), p(&s, "-xi2"));
        assert_eq!(right_partial(3, &p(&s, "xi1*xi2")), p(&s, "xi1"));
        assert_eq!(left_partial(3, &p(&s, "x1*xi1*xi2")), p(&s, "-x1*xi1"));
    }
}
