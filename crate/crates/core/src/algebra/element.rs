use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{check_same, Monomial, Signature};
use crate::error::{Error, Result};
use crate::scalar::{format_q, parse_q, Q};

/// Sparse rational combination of canonical monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    sig: Arc<Signature>,
    terms: BTreeMap<Monomial, Q>,
}

impl Element {
    pub fn zero(sig: &Arc<Signature>) -> Self {
        Element { sig: sig.clone(), terms: BTreeMap::new() }
    }

    pub fn one(sig: &Arc<Signature>) -> Self {
        Self::constant(sig, Q::one())
    }

    pub fn constant(sig: &Arc<Signature>, c: Q) -> Self {
        Self::term(sig, Monomial::one(sig.len()), c)
    }

    pub fn term(sig: &Arc<Signature>, m: Monomial, c: Q) -> Self {
        assert_eq!(m.len(), sig.len(), "monomial length does not match signature");
        let mut e = Self::zero(sig);
        e.add_term(m, c);
        e
    }

    pub fn generator(sig: &Arc<Signature>, i: usize) -> Self {
        Self::term(sig, Monomial::generator(sig.len(), i), Q::one())
    }

    pub fn named(sig: &Arc<Signature>, name: &str) -> Result<Self> {
        let i = sig.index_of(name).ok_or_else(|| Error::Input(format!("unknown generator {name}")))?;
        Ok(Self::generator(sig, i))
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Q> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, s: &Q) {
        debug_assert!(check_same(&self.sig, &other.sig).is_ok());
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        check_same(&self.sig, &other.sig)?;
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        check_same(&self.sig, &other.sig)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        Ok(out)
    }

    pub fn scale(&self, s: &Q) -> Element {
        if s.is_zero() {
            return Element::zero(&self.sig);
        }
        Element { sig: self.sig.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Q::one())
    }

    /// Graded-commutative product.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        check_same(&self.sig, &other.sig)?;
        let mut out = Element::zero(&self.sig);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = Monomial::mul(&self.sig, ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Product with a single monomial on the right.
    pub(crate) fn mul_monomial_right(&self, m: &Monomial) -> Element {
        let mut out = Element::zero(&self.sig);
        for (ma, ca) in &self.terms {
            if let Some((neg, p)) = Monomial::mul(&self.sig, ma, m) {
                out.add_term(p, if neg { -ca.clone() } else { ca.clone() });
            }
        }
        out
    }

    /// Product with a single monomial on the left.
    pub(crate) fn mul_monomial_left(&self, m: &Monomial) -> Element {
        let mut out = Element::zero(&self.sig);
        for (mb, cb) in &self.terms {
            if let Some((neg, p)) = Monomial::mul(&self.sig, m, mb) {
                out.add_term(p, if neg { -cb.clone() } else { cb.clone() });
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut out = Element::one(&self.sig);
        for _ in 0..k {
            out = out.mul(self).expect("same signature");
        }
        out
    }

    /// Homogeneous part of given homological degree and total weight.
    pub fn component(&self, homdeg: i32, weight: i32) -> Element {
        self.filter(|m| m.homdeg(&self.sig) == homdeg && m.weight(&self.sig) == weight)
    }

    /// Homogeneous part with the given number of odd factors and total weight.
    pub fn slice_component(&self, odd: u32, weight: i32) -> Element {
        self.filter(|m| m.odd_count(&self.sig) == odd && m.weight(&self.sig) == weight)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element { sig: self.sig.clone(), terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Parity bit, if all terms share it.
    pub fn parity(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.parity(&self.sig));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Degree pairs (homdeg, total weight) present, sorted.
    pub fn bidegrees(&self) -> Vec<(i32, i32)> {
        let mut v: Vec<(i32, i32)> = self.terms.keys().map(|m| (m.homdeg(&self.sig), m.weight(&self.sig))).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Same terms, reinterpreted over another signature of equal length.
    pub fn with_signature(&self, sig: &Arc<Signature>) -> Element {
        assert_eq!(sig.len(), self.sig.len());
        Element { sig: sig.clone(), terms: self.terms.clone() }
    }

    /// Parses text such as `3/2*x1^2*dx2 - dx1 + 1`.
    pub fn parse(sig: &Arc<Signature>, text: &str) -> Result<Element> {
        let mut out = Element::zero(sig);
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Input("empty expression".into()));
        }
        if s == "0" {
            return Ok(out);
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                pieces.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && cur.is_empty() {
                if ch == '-' {
                    neg = !neg;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Input(format!("dangling sign in {text:?}")));
        }
        pieces.push((neg, cur));
        for (neg, piece) in pieces {
            let mut coeff = Q::one();
            let mut word = Vec::new();
            for factor in piece.split('*') {
                if factor.is_empty() {
                    return Err(Error::Input(format!("empty factor in {text:?}")));
                }
                if factor.chars().next().unwrap().is_ascii_digit() {
                    coeff *= parse_q(factor)?;
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((n, p)) => (n, p.parse::<usize>().map_err(|_| Error::Input(format!("bad exponent in {factor:?}")))?),
                    None => (factor, 1),
                };
                let g = sig.index_of(name).ok_or_else(|| Error::Input(format!("unknown generator {name:?}")))?;
                word.extend(std::iter::repeat_n(g, power));
            }
            if let Some((s, m)) = Monomial::from_word(sig, &word) {
                out.add_term(m, if neg ^ s { -coeff } else { coeff });
            }
        }
        Ok(out)
    }
}

impl Element {
    /// `(monomial, coefficient)` pairs in canonical order; the empty monomial is `"1"`.
    pub fn term_list(&self) -> Vec<(String, Q)> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let t = fmt_monomial(&self.sig, m);
                (if t.is_empty() { "1".into() } else { t }, c.clone())
            })
            .collect()
    }
}

fn fmt_monomial(sig: &Signature, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(sig.generator(i).name.clone()),
            e => parts.push(format!("{}^{}", sig.generator(i).name, e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = crate::scalar::is_neg(c);
            let abs = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = fmt_monomial(&self.sig, m);
            if mono.is_empty() {
                write!(f, "{}", format_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_q(&abs))?;
            }
        }
        Ok(())
    }
}
