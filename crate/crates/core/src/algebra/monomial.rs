use smallvec::SmallVec;

use super::Signature;

/// Exponent vector in canonical generator order. Odd exponents are 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u8; 12]>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(SmallVec::from_elem(0, len))
    }

    pub fn generator(len: usize, i: usize) -> Self {
        let mut m = Self::one(len);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub(crate) fn set_exp(&mut self, i: usize, e: u8) {
        self.0[i] = e;
    }

    /// Number of odd generator factors.
    pub fn odd_count(&self, sig: &Signature) -> u32 {
        self.0.iter().enumerate().filter(|(i, _)| sig.is_odd(*i)).map(|(_, e)| *e as u32).sum()
    }

    /// Parity bit (0 or 1).
    pub fn parity(&self, sig: &Signature) -> u32 {
        self.odd_count(sig) & 1
    }

    pub fn homdeg(&self, sig: &Signature) -> i32 {
        self.0.iter().zip(sig.generators()).map(|(e, g)| *e as i32 * g.homdeg).sum()
    }

    pub fn weight2(&self, sig: &Signature) -> [i32; 2] {
        let mut w = [0, 0];
        for (e, g) in self.0.iter().zip(sig.generators()) {
            w[0] += *e as i32 * g.weight[0];
            w[1] += *e as i32 * g.weight[1];
        }
        w
    }

    pub fn weight(&self, sig: &Signature) -> i32 {
        let w = self.weight2(sig);
        w[0] + w[1]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|e| *e as u32).sum()
    }

    /// Canonical product `a * b`: `None` if an odd generator repeats, otherwise
    /// `(negative, monomial)`.
    pub fn mul(sig: &Signature, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let mut out = a.clone();
        let mut inversions = 0u32;
        // Odd generators of `a` seen so far with index greater than the current one
        // are counted from the right: walk indices high to low.
        let mut a_odd_above = 0u32;
        for i in (0..a.len()).rev() {
            let (ea, eb) = (a.0[i], b.0[i]);
            if sig.is_odd(i) {
                if ea == 1 && eb == 1 {
                    return None;
                }
                if eb == 1 {
                    inversions += a_odd_above;
                }
                if ea == 1 {
                    a_odd_above += 1;
                }
            }
            out.0[i] = ea.checked_add(eb).expect("exponent overflow");
        }
        Some((inversions & 1 == 1, out))
    }

    /// Sorts a word of generator indices into canonical order.
    pub fn from_word(sig: &Signature, word: &[usize]) -> Option<(bool, Monomial)> {
        let mut m = Monomial::one(sig.len());
        let mut neg = false;
        for &g in word {
            let (s, next) = Monomial::mul(sig, &m, &Monomial::generator(sig.len(), g))?;
            neg ^= s;
            m = next;
        }
        Some((neg, m))
    }

    /// The word of generator indices spelled by this monomial, in canonical order.
    pub fn to_word(&self) -> Vec<usize> {
        let mut w = Vec::new();
        for (i, e) in self.0.iter().enumerate() {
            for _ in 0..*e {
                w.push(i);
            }
        }
        w
    }
}
