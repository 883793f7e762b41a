//! Free graded-commutative algebras over Q.
//!
//! A [`Signature`] is an ordered list of generators; its order is the canonical
//! order for monomials. Signs come from one rule only: when a product is sorted
//! into canonical order, every transposition of two odd generators costs a
//! factor of -1.

mod basis;
mod derivation;
mod element;
mod monomial;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use basis::{linear_map_matrix, Basis};
pub use derivation::{apply_derivation, left_partial, right_partial, substitute};
pub use element::Element;
pub use monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: i64) -> Self {
        if b.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// One generator. `weight` is (x-weight, xi-weight).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
    pub homdeg: i32,
    pub weight: [i32; 2],
}

impl Generator {
    pub fn new(name: impl Into<String>, parity: Parity, homdeg: i32, weight: [i32; 2]) -> Self {
        Generator { name: name.into(), parity, homdeg, weight }
    }

    pub fn is_odd(&self) -> bool {
        self.parity == Parity::Odd
    }

    pub fn total_weight(&self) -> i32 {
        self.weight[0] + self.weight[1]
    }
}

#[derive(Debug)]
pub struct Signature {
    gens: Vec<Generator>,
    by_name: HashMap<String, usize>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for Signature {}

impl Signature {
    pub fn new(gens: Vec<Generator>) -> Result<Arc<Self>> {
        let mut by_name = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if g.name.is_empty() || !g.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Input(format!("bad generator name {:?}", g.name)));
            }
            if by_name.insert(g.name.clone(), i).is_some() {
                return Err(Error::Input(format!("duplicate generator {}", g.name)));
            }
        }
        Ok(Arc::new(Signature { gens, by_name }))
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.gens[i].is_odd()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.gens.iter().map(|g| g.name.as_str()).collect();
        write!(f, "[{}]", names.join(", "))
    }
}

pub(crate) fn check_same(a: &Arc<Signature>, b: &Arc<Signature>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::SignatureMismatch(format!("{a} vs {b}")))
    }
}
