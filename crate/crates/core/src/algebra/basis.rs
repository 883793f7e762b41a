use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use super::{Element, Monomial, Signature};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::parallel;
use crate::scalar::Q;

/// An ordered list of monomials spanning a slice.
#[derive(Clone, Debug)]
pub struct Basis {
    sig: Arc<Signature>,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    pub fn new(sig: &Arc<Signature>, mut monos: Vec<Monomial>) -> Self {
        monos.sort();
        monos.dedup();
        Self::ordered(sig, monos)
    }

    /// Keeps the given order (used to test order independence).
    pub fn ordered(sig: &Arc<Signature>, monos: Vec<Monomial>) -> Self {
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Basis { sig: sig.clone(), monos, index }
    }

    /// All monomials with `odd` odd factors and total weight `weight`.
    /// Every even generator must have positive total weight, otherwise the
    /// slice is infinite.
    pub fn slice(sig: &Arc<Signature>, odd: u32, weight: i32) -> Result<Self> {
        let gens = sig.generators();
        let odds: Vec<usize> = (0..gens.len()).filter(|i| gens[*i].is_odd()).collect();
        let evens: Vec<usize> = (0..gens.len()).filter(|i| !gens[*i].is_odd()).collect();
        if let Some(&bad) = evens.iter().find(|i| gens[**i].total_weight() <= 0) {
            return Err(Error::Input(format!("even generator {} has non-positive weight", gens[bad].name)));
        }
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        choose(&odds, odd as usize, 0, &mut chosen, &mut |subset| {
            let rem = weight - subset.iter().map(|i| gens[*i].total_weight()).sum::<i32>();
            if rem < 0 && !evens.is_empty() {
                return;
            }
            let mut m = Monomial::one(gens.len());
            for i in subset {
                m.set_exp(*i, 1);
            }
            distribute(sig, &evens, 0, rem, &mut m, &mut out);
        });
        Ok(Self::new(sig, out))
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn element(&self, i: usize) -> Element {
        Element::term(&self.sig, self.monos[i].clone(), Q::from_integer(1.into()))
    }

    /// Coordinates of `e`; fails if `e` has a term outside the span.
    pub fn coords(&self, e: &Element) -> Result<Vec<Q>> {
        let mut v = vec![Q::zero(); self.len()];
        for (m, c) in e.terms() {
            let i = self
                .position(m)
                .ok_or_else(|| Error::Input(format!("term {} outside basis", Element::term(&self.sig, m.clone(), c.clone()))))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn combine(&self, v: &[Q]) -> Element {
        let mut e = Element::zero(&self.sig);
        for (m, c) in self.monos.iter().zip(v) {
            e.add_term(m.clone(), c.clone());
        }
        e
    }
}

fn choose(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..items.len() {
        if items.len() - i < k - cur.len() {
            break;
        }
        cur.push(items[i]);
        choose(items, k, i + 1, cur, f);
        cur.pop();
    }
}

fn distribute(sig: &Signature, evens: &[usize], pos: usize, rem: i32, m: &mut Monomial, out: &mut Vec<Monomial>) {
    if pos == evens.len() {
        if rem == 0 {
            out.push(m.clone());
        }
        return;
    }
    let g = evens[pos];
    let w = sig.generator(g).total_weight();
    let mut e = 0;
    while e * w <= rem {
        m.set_exp(g, e as u8);
        distribute(sig, evens, pos + 1, rem - e * w, m, out);
        e += 1;
    }
    m.set_exp(g, 0);
}

/// Matrix of a linear map between spans; column j is the image of `src[j]`.
pub fn linear_map_matrix<F>(src: &Basis, dst: &Basis, f: F) -> Result<SparseMatrix>
where
    F: Fn(&Element) -> Element + Sync + Send,
{
    let cols = parallel::map_range(src.len(), |j| dst.coords(&f(&src.element(j))));
    let mut m = SparseMatrix::zeros(dst.len(), src.len());
    for (j, col) in cols.into_iter().enumerate() {
        for (i, v) in col?.into_iter().enumerate() {
            if !v.is_zero() {
                m.set(i, j, v);
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::super::{Generator, Parity};
    use super::*;

    #[test]
    fn slice_counts() {
        let sig = Signature::new(vec![
            Generator::new("x1", Parity::Even, 0, [1, 0]),
            Generator::new("x2", Parity::Even, 0, [1, 0]),
            Generator::new("x3", Parity::Even, 0, [1, 0]),
            Generator::new("dx1", Parity::Odd, 1, [1, 0]),
            Generator::new("dx2", Parity::Odd, 1, [1, 0]),
            Generator::new("dx3", Parity::Odd, 1, [1, 0]),
        ])
        .unwrap();
        // C(3,p) * C(w-p+2, 2)
        assert_eq!(Basis::slice(&sig, 0, 4).unwrap().len(), 15);
        assert_eq!(Basis::slice(&sig, 2, 4).unwrap().len(), 3 * 6);
        assert_eq!(Basis::slice(&sig, 3, 2).unwrap().len(), 0);
        assert_eq!(Basis::slice(&sig, 0, 0).unwrap().len(), 1);
    }
}
