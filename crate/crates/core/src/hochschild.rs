//! Reduced Hochschild chains and cochains of a finite-dimensional graded
//! algebra, with the operator calculus on them.
//!
//! Bar-level signs are the ungraded ones; on top of them every term carries
//! the Koszul sign of the permutation it applies to the graded symbols
//! (cochains and algebra elements, with their internal parities).

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::complex::BettiTable;
use crate::error::{Error, Result};
use crate::linalg::{rank, SparseMatrix, SparseVec};
use crate::parallel;
use crate::random::{self, Rng64};
use crate::scalar::{sign_q, Q};

pub type Word = Vec<u8>;

fn add_into(v: &mut SparseVec, k: usize, x: Q) {
    if x.is_zero() {
        return;
    }
    let slot = v.entry(k).or_insert_with(Q::zero);
    *slot += x;
    if slot.is_zero() {
        v.remove(&k);
    }
}

fn add_word<K: Ord>(m: &mut BTreeMap<K, Q>, k: K, x: Q) {
    if x.is_zero() {
        return;
    }
    let slot = m.entry(k).or_insert_with(Q::zero);
    *slot += x;
    if slot.is_zero() {
        m.retain(|_, v| !v.is_zero());
    }
}

/// Sign of the permutation taking symbols from input order to the listed
/// output order, counting only swaps of two odd symbols. Entries are
/// `(input position, odd)`.
fn koszul(order: &[(usize, bool)]) -> bool {
    let mut neg = false;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a].1 && order[b].1 && order[a].0 > order[b].0 {
                neg = !neg;
            }
        }
    }
    neg
}

fn sgn(neg: bool) -> Q {
    if neg {
        -Q::one()
    } else {
        Q::one()
    }
}

/// Finite-dimensional graded associative algebra; basis element 0 is the unit.
#[derive(Clone, Debug)]
pub struct FiniteGradedAlgebra {
    names: Vec<String>,
    degrees: Vec<i32>,
    table: Vec<Vec<SparseVec>>,
    /// `factor[k]`: reduced `(a, b, c)` with `c` the `e_k` coefficient of `e_a e_b`.
    factor: Vec<Vec<(u8, u8, Q)>>,
}

impl FiniteGradedAlgebra {
    /// `table[i][j]` lists `(k, c)` with `e_i e_j = Σ c e_k`. Checks the unit,
    /// the grading and associativity on all basis triples.
    pub fn new(names: Vec<String>, degrees: Vec<i32>, table: Vec<Vec<Vec<(usize, Q)>>>) -> Result<Self> {
        let d = names.len();
        if d == 0 || d > 255 {
            return Err(Error::Input(format!("algebra dimension {d} outside 1..=255")));
        }
        if degrees.len() != d || table.len() != d || table.iter().any(|r| r.len() != d) {
            return Err(Error::Input("structure table does not match the basis".into()));
        }
        if degrees[0] != 0 {
            return Err(Error::Input("the unit (basis element 0) must have degree 0".into()));
        }
        let mut t = vec![vec![SparseVec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                for (k, c) in &table[i][j] {
                    if *k >= d {
                        return Err(Error::Input(format!("product index {k} out of range")));
                    }
                    if degrees[*k] != degrees[i] + degrees[j] && !c.is_zero() {
                        return Err(Error::Input(format!("{}·{} has a term {} of the wrong degree", names[i], names[j], names[*k])));
                    }
                    add_into(&mut t[i][j], *k, c.clone());
                }
            }
        }
        let alg = Self::from_table(names, degrees, t);
        alg.validate()?;
        Ok(alg)
    }

    fn from_table(names: Vec<String>, degrees: Vec<i32>, table: Vec<Vec<SparseVec>>) -> Self {
        let d = names.len();
        let mut factor = vec![Vec::new(); d];
        for a in 1..d {
            for b in 1..d {
                for (k, c) in &table[a][b] {
                    if *k != 0 {
                        factor[*k].push((a as u8, b as u8, c.clone()));
                    }
                }
            }
        }
        FiniteGradedAlgebra { names, degrees, table, factor }
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            let e = SparseVec::from([(i, Q::one())]);
            if self.table[0][i] != e || self.table[i][0] != e {
                return Err(Error::Input(format!("basis element 0 is not a unit for {}", self.names[i])));
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let l = self.mul_vec(&self.table[i][j], &SparseVec::from([(k, Q::one())]));
                    let r = self.mul_vec(&SparseVec::from([(i, Q::one())]), &self.table[j][k]);
                    if l != r {
                        return Err(Error::Input(format!("not associative on ({}, {}, {})", self.names[i], self.names[j], self.names[k])));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Λ(xi_1..xi_n)` with `|xi_i| = -1`; basis ordered by size, then lexicographically.
    pub fn exterior(n: usize) -> Result<Self> {
        if n > 7 {
            return Err(Error::Input("exterior algebras are limited to n ≤ 7".into()));
        }
        let mut subsets: Vec<u32> = (0..1u32 << n).collect();
        subsets.sort_by_key(|s| (s.count_ones(), (0..n).map(|i| (s >> i) & 1 == 0).collect::<Vec<_>>()));
        let pos: BTreeMap<u32, usize> = subsets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let names = subsets
            .iter()
            .map(|s| {
                if *s == 0 {
                    "1".to_string()
                } else {
                    (0..n).filter(|i| s >> i & 1 == 1).map(|i| format!("xi{}", i + 1)).collect::<Vec<_>>().join("*")
                }
            })
            .collect();
        let degrees = subsets.iter().map(|s| -(s.count_ones() as i32)).collect();
        let d = subsets.len();
        let mut table = vec![vec![SparseVec::new(); d]; d];
        for (i, a) in subsets.iter().enumerate() {
            for (j, b) in subsets.iter().enumerate() {
                if a & b != 0 {
                    continue;
                }
                // Each generator of b passes the generators of a above it.
                let swaps: u32 = (0..n).filter(|k| b >> k & 1 == 1).map(|k| (a >> (k + 1)).count_ones()).sum();
                table[i][j].insert(pos[&(a | b)], sgn(swaps % 2 == 1));
            }
        }
        Ok(Self::from_table(names, degrees, table))
    }

    /// `k[x]/(x^k)` with `|x| = degree`.
    pub fn truncated_polynomial(k: usize, degree: i32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Input("k[x]/(x^0) is the zero ring".into()));
        }
        let names = (0..k).map(|i| if i == 0 { "1".into() } else { format!("x^{i}") }).collect();
        let degrees = (0..k).map(|i| degree * i as i32).collect();
        let mut table = vec![vec![Vec::new(); k]; k];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if i + j < k {
                    cell.push((i + j, Q::one()));
                }
            }
        }
        Self::new(names, degrees, table)
    }

    /// Upper triangular 2×2 matrices on the basis `1, e11, e12`.
    pub fn upper_triangular() -> Self {
        let one = Q::one;
        let table = vec![
            vec![vec![(0, one())], vec![(1, one())], vec![(2, one())]],
            vec![vec![(1, one())], vec![(1, one())], vec![(2, one())]],
            vec![vec![(2, one())], vec![], vec![]],
        ];
        Self::new(vec!["1".into(), "e11".into(), "e12".into()], vec![0; 3], table).expect("valid algebra")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    fn odd(&self, i: u8) -> bool {
        self.degrees[i as usize].rem_euclid(2) == 1
    }

    fn word_odd(&self, w: &[u8]) -> bool {
        w.iter().filter(|k| self.odd(**k)).count() % 2 == 1
    }

    fn word_degree(&self, w: &[u8]) -> i32 {
        w.iter().map(|k| self.degrees[*k as usize]).sum()
    }

    /// `e_i e_j`.
    pub fn mul(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn mul_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in &self.table[*i][*j] {
                    add_into(&mut out, *k, a * b * c);
                }
            }
        }
        out
    }

    /// Index of the top-degree element for exterior algebras and similar
    /// one-dimensional socles: the unique basis element of extreme degree.
    pub fn top(&self) -> Option<usize> {
        let (lo, hi) = (*self.degrees.iter().min()?, *self.degrees.iter().max()?);
        let ext = if lo != 0 { lo } else { hi };
        let idx: Vec<usize> = (0..self.dim()).filter(|i| self.degrees[*i] == ext).collect();
        (idx.len() == 1 && ext != 0).then(|| idx[0])
    }
}

/// `C^n(A; A)`: multilinear maps on words of reduced basis elements.
#[derive(Clone, Debug, Eq)]
pub struct Cochain {
    level: usize,
    values: BTreeMap<Word, SparseVec>,
}

/// Zero cochains are equal whatever their level.
impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && (self.level == other.level || self.values.is_empty())
    }
}

impl Cochain {
    pub fn zero(level: usize) -> Self {
        Cochain { level, values: BTreeMap::new() }
    }

    /// The level-0 cochain with value `a`.
    pub fn element(a: SparseVec) -> Self {
        let mut c = Self::zero(0);
        c.set(Vec::new(), a);
        c
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn values(&self) -> &BTreeMap<Word, SparseVec> {
        &self.values
    }

    pub fn get(&self, w: &[u8]) -> Option<&SparseVec> {
        self.values.get(w)
    }

    pub fn set(&mut self, w: Word, v: SparseVec) {
        assert_eq!(w.len(), self.level);
        let v: SparseVec = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        if v.is_empty() {
            self.values.remove(&w);
        } else {
            self.values.insert(w, v);
        }
    }

    pub fn add_entry(&mut self, w: Word, k: usize, x: Q) {
        let slot = self.values.entry(w.clone()).or_default();
        add_into(slot, k, x);
        if slot.is_empty() {
            self.values.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Zero cochains adopt the level of the other summand.
    pub fn add_scaled(&mut self, other: &Cochain, s: &Q) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            self.level = other.level;
        }
        assert_eq!(self.level, other.level, "adding cochains of different levels");
        for (w, v) in &other.values {
            for (k, x) in v {
                self.add_entry(w.clone(), *k, x * s);
            }
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        let mut c = self.clone();
        c.add_scaled(other, &Q::one());
        c
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        let mut c = self.clone();
        c.add_scaled(other, &-Q::one());
        c
    }

    pub fn scale(&self, s: &Q) -> Cochain {
        let mut c = Cochain::zero(self.level);
        c.add_scaled(self, s);
        c
    }

    /// Components of internal parity 0 and 1.
    pub fn parity_parts(&self, alg: &FiniteGradedAlgebra) -> [Cochain; 2] {
        let mut parts = [Cochain::zero(self.level), Cochain::zero(self.level)];
        for (w, v) in &self.values {
            for (k, x) in v {
                let p = (alg.odd(*k as u8) ^ alg.word_odd(w)) as usize;
                parts[p].add_entry(w.clone(), *k, x.clone());
            }
        }
        parts
    }
}

/// `C_•(A; A)`: combinations of `(a_0, ā_1, ..., ā_m)`, stored as words whose
/// first letter is `a_0` and whose other letters are reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chain {
    terms: BTreeMap<Word, Q>,
}

impl Chain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: Word) -> Self {
        assert!(!w.is_empty() && w[1..].iter().all(|k| *k != 0), "chains need a0 and reduced letters");
        let mut c = Self::zero();
        c.add_term(w, Q::one());
        c
    }

    pub fn terms(&self) -> &BTreeMap<Word, Q> {
        &self.terms
    }

    pub fn add_term(&mut self, w: Word, x: Q) {
        debug_assert!(w[1..].iter().all(|k| *k != 0));
        add_word(&mut self.terms, w, x);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &Chain, s: &Q) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * s);
        }
    }

    pub fn add(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_scaled(other, &Q::one());
        c
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_scaled(other, &-Q::one());
        c
    }

    pub fn scale(&self, s: &Q) -> Chain {
        let mut c = Chain::zero();
        c.add_scaled(self, s);
        c
    }
}

/// `C^n(A; A*) = Hom(A ⊗ Ā^{⊗n}, k)`: a functional on chains of level n.
#[derive(Clone, Debug, Eq)]
pub struct DualCochain {
    level: usize,
    terms: BTreeMap<Word, Q>,
}

impl PartialEq for DualCochain {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.level == other.level || self.terms.is_empty())
    }
}

impl DualCochain {
    pub fn zero(level: usize) -> Self {
        DualCochain { level, terms: BTreeMap::new() }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn terms(&self) -> &BTreeMap<Word, Q> {
        &self.terms
    }

    pub fn add_term(&mut self, w: Word, x: Q) {
        assert_eq!(w.len(), self.level + 1);
        add_word(&mut self.terms, w, x);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, c: &Chain) -> Q {
        let mut s = Q::zero();
        for (w, x) in &c.terms {
            if let Some(y) = self.terms.get(w) {
                s += x * y;
            }
        }
        s
    }

    pub fn add_scaled(&mut self, other: &DualCochain, s: &Q) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            self.level = other.level;
        }
        assert_eq!(self.level, other.level, "adding functionals of different levels");
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * s);
        }
    }

    pub fn sub(&self, other: &DualCochain) -> DualCochain {
        let mut c = self.clone();
        c.add_scaled(other, &-Q::one());
        c
    }

    pub fn scale(&self, s: &Q) -> DualCochain {
        let mut c = DualCochain::zero(self.level);
        c.add_scaled(self, s);
        c
    }

    pub fn parity_parts(&self, alg: &FiniteGradedAlgebra) -> [DualCochain; 2] {
        let mut parts = [DualCochain::zero(self.level), DualCochain::zero(self.level)];
        for (w, x) in &self.terms {
            parts[alg.word_odd(w) as usize].add_term(w.clone(), x.clone());
        }
        parts
    }
}

/// All words of `len` reduced letters.
fn reduced_words(alg: &FiniteGradedAlgebra, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..alg.dim()).map(move |k| {
                    let mut v = w.clone();
                    v.push(k as u8);
                    v
                })
            })
            .collect();
    }
    out
}

/// Basis words of chains of level `m`.
pub fn chain_words(alg: &FiniteGradedAlgebra, m: usize) -> Vec<Word> {
    let tails = reduced_words(alg, m);
    (0..alg.dim())
        .flat_map(|a| {
            tails.iter().map(move |t| {
                let mut w = vec![a as u8];
                w.extend(t);
                w
            })
        })
        .collect()
}

impl FiniteGradedAlgebra {
    /// Internal parity of the cochain entry `w ↦ e_k`.
    fn entry_odd(&self, w: &[u8], k: usize) -> bool {
        self.odd(k as u8) ^ self.word_odd(w)
    }

    /// Hochschild coboundary
    /// `(δf)(a_1..a_{n+1}) = ±a_1 f(a_2..) + Σ_i (-1)^i f(.., a_i a_{i+1}, ..) + (-1)^{n+1} f(a_1..a_n) a_{n+1}`.
    pub fn hoch_coboundary(&self, f: &Cochain) -> Cochain {
        let n = f.level;
        let mut out = Cochain::zero(n + 1);
        for (w, v) in &f.values {
            for a in 1..self.dim() {
                for (k, x) in v {
                    let s = sgn(self.odd(a as u8) && self.entry_odd(w, *k));
                    let mut word = vec![a as u8];
                    word.extend(w);
                    for (r, y) in self.mul(a, *k) {
                        out.add_entry(word.clone(), *r, &s * x * y);
                    }
                    let mut word = w.clone();
                    word.push(a as u8);
                    for (r, y) in self.mul(*k, a) {
                        out.add_entry(word.clone(), *r, sign_q(n as i64 + 1) * x * y);
                    }
                }
            }
            for pos in 0..n {
                for (a, b, c) in &self.factor[w[pos] as usize] {
                    let mut word = w[..pos].to_vec();
                    word.extend([*a, *b]);
                    word.extend(&w[pos + 1..]);
                    let s = sign_q(pos as i64 + 1) * c;
                    for (k, x) in v {
                        out.add_entry(word.clone(), *k, &s * x);
                    }
                }
            }
        }
        out
    }

    /// `(f ∪ g)(a_1..a_{n+m}) = (-1)^{nm} f(a_1..a_n) g(a_{n+1}..a_{n+m})`.
    pub fn cup(&self, f: &Cochain, g: &Cochain) -> Cochain {
        let (n, m) = (f.level, g.level);
        let mut out = Cochain::zero(n + m);
        for (wf, vf) in &f.values {
            let pass = self.word_odd(wf);
            for (wg, vg) in &g.values {
                let mut word = wf.clone();
                word.extend(wg);
                for (k1, x1) in vf {
                    for (k2, x2) in vg {
                        let s = sign_q((n * m) as i64) * sgn(pass && self.entry_odd(wg, *k2));
                        for (r, y) in self.mul(*k1, *k2) {
                            out.add_entry(word.clone(), *r, &s * x1 * x2 * y);
                        }
                    }
                }
            }
        }
        out
    }

    /// `f∘g = Σ_i (-1)^{(m+1)i} f(a_1..a_i, g(a_{i+1}..a_{i+m}), ..)`.
    pub fn circle(&self, f: &Cochain, g: &Cochain) -> Cochain {
        let (n, m) = (f.level, g.level);
        let mut out = Cochain::zero((n + m).saturating_sub(1));
        if n == 0 {
            return out;
        }
        let mut by_output: BTreeMap<usize, Vec<(&Word, &Q)>> = BTreeMap::new();
        for (wg, vg) in &g.values {
            for (k, x) in vg {
                if *k != 0 {
                    by_output.entry(*k).or_default().push((wg, x));
                }
            }
        }
        for (wf, vf) in &f.values {
            for i in 0..n {
                let Some(list) = by_output.get(&(wf[i] as usize)) else { continue };
                let before_odd = self.word_odd(&wf[..i]);
                for (wg, c) in list {
                    let s = sign_q(((m + 1) * i) as i64) * sgn(before_odd && self.entry_odd(wg, wf[i] as usize));
                    let mut word = wf[..i].to_vec();
                    word.extend(wg.iter());
                    word.extend(&wf[i + 1..]);
                    for (k, x) in vf {
                        out.add_entry(word.clone(), *k, &s * *c * x);
                    }
                }
            }
        }
        out
    }

    /// `{f, g} = f∘g - (-1)^{(|f|+1)(|g|+1)} g∘f`.
    pub fn gerst_bracket(&self, f: &Cochain, g: &Cochain) -> Cochain {
        let (n, m) = (f.level, g.level);
        let mut out = Cochain::zero((n + m).saturating_sub(1));
        let (fp, gp) = (f.parity_parts(self), g.parity_parts(self));
        for (pf, f) in fp.iter().enumerate() {
            for (pg, g) in gp.iter().enumerate() {
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                out.add_scaled(&self.circle(f, g), &Q::one());
                let e = ((n + 1) * (m + 1) + pf * pg) as i64;
                out.add_scaled(&self.circle(g, f), &-sign_q(e));
            }
        }
        out
    }

    /// Hochschild boundary
    /// `b = Σ_{i<m} (-1)^i (.., a_i a_{i+1}, ..) + (-1)^m (a_m a_0, a_1, .., a_{m-1})`.
    pub fn hoch_boundary(&self, alpha: &Chain) -> Chain {
        let mut out = Chain::zero();
        for (w, c) in &alpha.terms {
            let m = w.len() - 1;
            for i in 0..m {
                for (r, y) in self.mul(w[i] as usize, w[i + 1] as usize) {
                    if i > 0 && *r == 0 {
                        continue;
                    }
                    let mut word = w[..i].to_vec();
                    word.push(*r as u8);
                    word.extend(&w[i + 2..]);
                    out.add_term(word, sign_q(i as i64) * c * y);
                }
            }
            if m > 0 {
                let mut order = vec![(m, self.odd(w[m]))];
                order.extend((0..m).map(|k| (k, self.odd(w[k]))));
                let s = sign_q(m as i64) * sgn(koszul(&order));
                for (r, y) in self.mul(w[m] as usize, w[0] as usize) {
                    let mut word = vec![*r as u8];
                    word.extend(&w[1..m]);
                    out.add_term(word, &s * c * y);
                }
            }
        }
        out
    }

    /// Connes operator `B = Σ_i (-1)^{mi} (1, ā_i, .., ā_m, ā_0, .., ā_{i-1})`.
    pub fn connes_b(&self, alpha: &Chain) -> Chain {
        let mut out = Chain::zero();
        for (w, c) in &alpha.terms {
            if w[0] == 0 {
                continue;
            }
            let m = w.len() - 1;
            for i in 0..=m {
                let seq: Vec<usize> = (i..=m).chain(0..i).collect();
                let order: Vec<(usize, bool)> = seq.iter().map(|k| (*k, self.odd(w[*k]))).collect();
                let mut word = vec![0u8];
                word.extend(seq.iter().map(|k| w[*k]));
                out.add_term(word, sign_q((m * i) as i64) * sgn(koszul(&order)) * c);
            }
        }
        out
    }

    /// Cap product `ι_f α = (a_0 f(ā_1..ā_n), ā_{n+1}, .., ā_m)`, zero if `m < n`.
    pub fn cap(&self, f: &Cochain, alpha: &Chain) -> Chain {
        let n = f.level;
        let mut out = Chain::zero();
        for (w, c) in &alpha.terms {
            let m = w.len() - 1;
            if m < n {
                continue;
            }
            let Some(v) = f.get(&w[1..=n]) else { continue };
            for (k, x) in v {
                let s = sgn(self.odd(w[0]) && self.entry_odd(&w[1..=n], *k));
                for (r, y) in self.mul(w[0] as usize, *k) {
                    let mut word = vec![*r as u8];
                    word.extend(&w[n + 1..]);
                    out.add_term(word, &s * c * x * y);
                }
            }
        }
        out
    }

    /// Lie derivative `L_f`, the two displayed sums; zero when `n > m + 1`.
    pub fn lie_l(&self, f: &Cochain, alpha: &Chain) -> Chain {
        let n = f.level;
        let mut out = Chain::zero();
        for (w, c) in &alpha.terms {
            let m = w.len() - 1;
            if n > m + 1 {
                continue;
            }
            // Insertions not touching a_0.
            for i in 0..=(m + 1).saturating_sub(n + 1).min(m) {
                if i + n > m {
                    break;
                }
                let args = &w[i + 1..=i + n];
                let Some(v) = f.get(args) else { continue };
                let before_odd = self.word_odd(&w[..=i]);
                for (k, x) in v {
                    if *k == 0 {
                        continue;
                    }
                    let s = sign_q(((n + 1) * i) as i64) * sgn(before_odd && self.entry_odd(args, *k));
                    let mut word = w[..=i].to_vec();
                    word.push(*k as u8);
                    word.extend(&w[i + n + 1..]);
                    out.add_term(word, s * c * x);
                }
            }
            // Cyclic terms with a_0 among the arguments of f.
            if w[0] == 0 || n == 0 {
                continue;
            }
            for i in (m + 1 - n)..=m {
                let mut args: Vec<usize> = (i + 1..=m).collect();
                args.extend(0..=(n + i - m - 1));
                let rest: Vec<usize> = (n + i - m..=i).collect();
                let word_args: Word = args.iter().map(|k| w[*k]).collect();
                let Some(v) = f.get(&word_args) else { continue };
                let mut order: Vec<(usize, bool)> = args.iter().map(|k| (*k, self.odd(w[*k]))).collect();
                order.extend(rest.iter().map(|k| (*k, self.odd(w[*k]))));
                let s = sign_q((m * (i + 1) + n + 1) as i64) * sgn(koszul(&order));
                for (k, x) in v {
                    let mut word = vec![*k as u8];
                    word.extend(rest.iter().map(|r| w[*r]));
                    out.add_term(word, &s * c * x);
                }
            }
        }
        out
    }

    /// Homotopy `S_f` with `η_ij = (n+1)m + (m-j)m + (n+1)(j-i)`.
    pub fn homotopy_s(&self, f: &Cochain, alpha: &Chain) -> Chain {
        let n = f.level;
        let mut out = Chain::zero();
        for (w, c) in &alpha.terms {
            let m = w.len() - 1;
            if w[0] == 0 || m < n {
                continue;
            }
            for i in 0..=m - n {
                let args = &w[i + 1..=i + n];
                let Some(v) = f.get(args) else { continue };
                for j in i + n..=m {
                    let eta = (n + 1) * m + (m - j) * m + (n + 1) * (j - i);
                    for (k, x) in v {
                        if *k == 0 {
                            continue;
                        }
                        // Symbol 0 is f, symbol t+1 is a_t.
                        let mut order: Vec<(usize, bool)> = (j + 1..=m).map(|t| (t + 1, self.odd(w[t]))).collect();
                        order.extend((0..=i).map(|t| (t + 1, self.odd(w[t]))));
                        order.push((0, self.entry_odd(args, *k)));
                        order.extend((i + 1..=j).map(|t| (t + 1, self.odd(w[t]))));
                        let s = sign_q(eta as i64) * sgn(koszul(&order));
                        let mut word = vec![0u8];
                        word.extend(&w[j + 1..=m]);
                        word.extend(&w[..=i]);
                        word.push(*k as u8);
                        word.extend(&w[i + n + 1..=j]);
                        out.add_term(word, s * c * x);
                    }
                }
            }
        }
        out
    }

    /// Homotopy `T(f, g)` with `θ_ij = (m+1)(i+j+l) + l(i+1)`; terms whose
    /// displayed index ranges do not describe a cyclic arrangement of
    /// `a_0..a_l` are empty.
    pub fn homotopy_t(&self, f: &Cochain, g: &Cochain, alpha: &Chain) -> Chain {
        let (n, m) = (f.level as i64, g.level as i64);
        let mut out = Chain::zero();
        let mut g_by_output: BTreeMap<&Word, &SparseVec> = BTreeMap::new();
        for (wg, vg) in &g.values {
            g_by_output.insert(wg, vg);
        }
        for (w, c) in &alpha.terms {
            let l = w.len() as i64 - 1;
            if w[0] == 0 {
                continue;
            }
            for i in (l - n + 2).max(0)..=l {
                for j in 0..=(n + i - l - 2) {
                    let before: Vec<i64> = (i + 1..=l).chain(0..=j).collect();
                    let gargs: Vec<i64> = (j + 1..=j + m).collect();
                    let after: Vec<i64> = (j + m + 1..=n + m + i - l - 2).collect();
                    let rest: Vec<i64> = (n + m + i - l - 1..=i).collect();
                    let mut used: Vec<i64> = before.iter().chain(&gargs).chain(&after).chain(&rest).copied().collect();
                    used.sort();
                    if used != (0..=l).collect::<Vec<_>>() || before.len() + 1 + after.len() != n as usize {
                        continue;
                    }
                    let at = |v: &[i64]| -> Word { v.iter().map(|k| w[*k as usize]).collect() };
                    let Some(vg) = g_by_output.get(&at(&gargs)) else { continue };
                    let theta = (m + 1) * (i + j + l) + l * (i + 1);
                    for (kg, xg) in vg.iter() {
                        if *kg == 0 {
                            continue;
                        }
                        let mut fargs = at(&before);
                        fargs.push(*kg as u8);
                        fargs.extend(at(&after));
                        let Some(vf) = f.get(&fargs) else { continue };
                        for (kf, xf) in vf {
                            // Symbols: f = 0, g = 1, a_t = t + 2.
                            let sym = |t: &i64| (*t as usize + 2, self.odd(w[*t as usize]));
                            let mut order = vec![(0, self.entry_odd(&fargs, *kf))];
                            order.extend(before.iter().map(sym));
                            order.push((1, self.entry_odd(&at(&gargs), *kg)));
                            order.extend(gargs.iter().chain(&after).chain(&rest).map(sym));
                            let s = sign_q(theta) * sgn(koszul(&order));
                            let mut word = vec![*kf as u8];
                            word.extend(at(&rest));
                            out.add_term(word, s * c * xg * xf);
                        }
                    }
                }
            }
        }
        out
    }

    /// `α ∘ op` as a functional on chains of level `level`.
    pub fn compose<F>(&self, alpha: &DualCochain, level: usize, op: F) -> DualCochain
    where
        F: Fn(&Chain) -> Chain + Sync + Send,
    {
        let words = chain_words(self, level);
        let vals = parallel::map(&words, |w| alpha.eval(&op(&Chain::basis(w.clone()))));
        let mut out = DualCochain::zero(level);
        for (w, x) in words.into_iter().zip(vals) {
            out.add_term(w, x);
        }
        out
    }

    /// Coboundary on `C^•(A; A*)`: `α ↦ α∘b`.
    pub fn dual_coboundary(&self, alpha: &DualCochain) -> DualCochain {
        self.compose(alpha, alpha.level + 1, |c| self.hoch_boundary(c))
    }

    /// `B*(g) = (-1)^{|g|} g∘B`.
    pub fn connes_b_dual(&self, g: &DualCochain) -> DualCochain {
        if g.level == 0 {
            return DualCochain::zero(0);
        }
        let t = self.compose(g, g.level - 1, |c| self.connes_b(c));
        t.scale(&sign_q(g.level as i64))
    }

    /// `ι*_f(α) = (-1)^{|f||α|} α∘ι_f`.
    pub fn iota_dual(&self, f: &Cochain, alpha: &DualCochain) -> DualCochain {
        let mut out = DualCochain::zero(alpha.level + f.level);
        for (pf, f) in f.parity_parts(self).iter().enumerate() {
            for (pa, a) in alpha.parity_parts(self).iter().enumerate() {
                if f.is_zero() || a.is_zero() {
                    continue;
                }
                let t = self.compose(a, a.level + f.level, |c| self.cap(f, c));
                let e = (f.level * a.level + pf * pa) as i64;
                out.add_scaled(&t, &sign_q(e));
            }
        }
        out
    }
}

/// Non-degenerate graded symmetric cyclic pairing on a finite algebra.
#[derive(Clone, Debug)]
pub struct SymmetricPairing {
    pub degree: i32,
    matrix: Vec<Vec<Q>>,
}

impl SymmetricPairing {
    /// Validates non-degeneracy, graded symmetry and cyclic invariance
    /// `⟨a, bc⟩ = (-1)^{(|a|+|b|)|c|} ⟨c, ab⟩` on all basis triples.
    pub fn new(alg: &FiniteGradedAlgebra, degree: i32, matrix: Vec<Vec<Q>>) -> Result<Self> {
        let d = alg.dim();
        if matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension { expected: d, got: matrix.len() });
        }
        if rank(&SparseMatrix::from_dense(&matrix)) != d {
            return Err(Error::DegeneratePairing);
        }
        let p = SymmetricPairing { degree, matrix };
        let par = |i: usize| alg.degree(i).rem_euclid(2) as i64;
        for a in 0..d {
            for b in 0..d {
                if p.matrix[a][b] != sign_q(par(a) * par(b)) * &p.matrix[b][a] {
                    return Err(Error::Input(format!("pairing is not graded symmetric on ({}, {})", alg.names[a], alg.names[b])));
                }
                for c in 0..d {
                    let l = p.pair(&SparseVec::from([(a, Q::one())]), alg.mul(b, c));
                    let r = p.pair(&SparseVec::from([(c, Q::one())]), alg.mul(a, b));
                    if l != sign_q((par(a) + par(b)) * par(c)) * r {
                        return Err(Error::Input(format!(
                            "pairing is not cyclic on ({}, {}, {})",
                            alg.names[a], alg.names[b], alg.names[c]
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    /// `⟨a, b⟩` = coefficient of the top element in `ab`.
    pub fn top_coefficient(alg: &FiniteGradedAlgebra) -> Result<Self> {
        let top = alg.top().ok_or_else(|| Error::Input("algebra has no one-dimensional top degree".into()))?;
        let d = alg.dim();
        let matrix = (0..d).map(|a| (0..d).map(|b| alg.mul(a, b).get(&top).cloned().unwrap_or_else(Q::zero)).collect()).collect();
        Self::new(alg, alg.degree(top), matrix)
    }

    pub fn pair(&self, x: &SparseVec, y: &SparseVec) -> Q {
        let mut s = Q::zero();
        for (i, a) in x {
            for (j, b) in y {
                s += a * b * &self.matrix[*i][*j];
            }
        }
        s
    }

    pub fn matrix(&self) -> &[Vec<Q>] {
        &self.matrix
    }
}

/// Tradler's map `f ↦ η∘f`:
/// `(η∘f)(a_0, ā_1..ā_n) = (-1)^{|a_0|(|a_1|+..+|a_n|)} ⟨f(ā_1..ā_n), a_0⟩`,
/// the sign coming from reading `α(a_0, ā..)` as `α(ā..)(a_0)`.
pub fn tradler_cap(alg: &FiniteGradedAlgebra, f: &Cochain, eta: &SymmetricPairing) -> DualCochain {
    let mut out = DualCochain::zero(f.level);
    for (w, v) in &f.values {
        for a0 in 0..alg.dim() {
            let s = sgn(alg.odd(a0 as u8) && alg.word_odd(w));
            let x = s * eta.pair(v, &SparseVec::from([(a0, Q::one())]));
            if !x.is_zero() {
                let mut word = vec![a0 as u8];
                word.extend(w);
                out.add_term(word, x);
            }
        }
    }
    out
}

/// Basis of `C^q(A;A)` in internal degree `w` (output degree minus input degrees).
pub fn cochain_basis(alg: &FiniteGradedAlgebra, q: usize, w: i32) -> Vec<(Word, usize)> {
    let mut out = Vec::new();
    for word in reduced_words(alg, q) {
        let din = alg.word_degree(&word);
        for k in 0..alg.dim() {
            if alg.degree(k) - din == w {
                out.push((word.clone(), k));
            }
        }
    }
    out
}

/// Basis words of chains of level `m` and total degree `w`.
pub fn chain_basis(alg: &FiniteGradedAlgebra, m: usize, w: i32) -> Vec<Word> {
    chain_words(alg, m).into_iter().filter(|x| alg.word_degree(x) == w).collect()
}

fn coboundary_matrix(alg: &FiniteGradedAlgebra, q: usize, w: i32) -> SparseMatrix {
    let src = cochain_basis(alg, q, w);
    let dst = cochain_basis(alg, q + 1, w);
    let index: BTreeMap<(Word, usize), usize> = dst.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let cols = parallel::map(&src, |(word, k)| {
        let mut f = Cochain::zero(q);
        f.add_entry(word.clone(), *k, Q::one());
        let d = alg.hoch_coboundary(&f);
        let mut col = Vec::new();
        for (dw, v) in d.values() {
            for (r, x) in v {
                col.push((index[&(dw.clone(), *r)], x.clone()));
            }
        }
        col
    });
    SparseMatrix::from_triplets(
        dst.len(),
        src.len(),
        cols.into_iter().enumerate().flat_map(|(c, col)| col.into_iter().map(move |(r, x)| (r, c, x))),
    )
}

fn boundary_matrix(alg: &FiniteGradedAlgebra, m: usize, w: i32) -> SparseMatrix {
    let src = chain_basis(alg, m, w);
    if m == 0 {
        return SparseMatrix::zeros(0, src.len());
    }
    let dst = chain_basis(alg, m - 1, w);
    let index: BTreeMap<Word, usize> = dst.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let cols = parallel::map(&src, |word| {
        alg.hoch_boundary(&Chain::basis(word.clone())).terms().iter().map(|(dw, x)| (index[dw], x.clone())).collect::<Vec<_>>()
    });
    SparseMatrix::from_triplets(
        dst.len(),
        src.len(),
        cols.into_iter().enumerate().flat_map(|(c, col)| col.into_iter().map(move |(r, x)| (r, c, x))),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HochCoefficients {
    SelfValued,
    Dual,
}

/// Range of internal degrees that occur at level `q`.
fn degree_range(alg: &FiniteGradedAlgebra, q: usize, coeff: HochCoefficients) -> (i32, i32) {
    let red: Vec<i32> = (1..alg.dim()).map(|k| alg.degree(k)).collect();
    let all = alg.degrees();
    let (rmin, rmax) = (red.iter().copied().min().unwrap_or(0), red.iter().copied().max().unwrap_or(0));
    let (amin, amax) = (*all.iter().min().expect("nonempty"), *all.iter().max().expect("nonempty"));
    let q = q as i32;
    match coeff {
        HochCoefficients::SelfValued => (amin - q * rmax, amax - q * rmin),
        HochCoefficients::Dual => (amin + q * rmin, amax + q * rmax),
    }
}

/// Dimensions of `HH^q(A; A)` by (level, internal degree), or of
/// `HH^q(A; A*)` by (level, total chain degree), for `q ≤ max_level`.
pub fn hochschild_dims(alg: &FiniteGradedAlgebra, coeff: HochCoefficients, max_level: usize) -> BettiTable {
    let mut jobs = Vec::new();
    for q in 0..=max_level {
        let (lo, hi) = degree_range(alg, q, coeff);
        for w in lo..=hi {
            jobs.push((q, w));
        }
    }
    let dims = parallel::map(&jobs, |&(q, w)| match coeff {
        HochCoefficients::SelfValued => {
            let dim = cochain_basis(alg, q, w).len();
            let out = rank(&coboundary_matrix(alg, q, w));
            let inn = if q > 0 { rank(&coboundary_matrix(alg, q - 1, w)) } else { 0 };
            dim - out - inn
        }
        HochCoefficients::Dual => {
            let dim = chain_basis(alg, q, w).len();
            dim - rank(&boundary_matrix(alg, q + 1, w)) - rank(&boundary_matrix(alg, q, w))
        }
    });
    let mut t = BettiTable::default();
    for ((q, w), d) in jobs.into_iter().zip(dims) {
        if d > 0 {
            t.entries.insert((q as u32, w), d);
        }
    }
    t
}

/// Random homogeneous cochain of level `q` and internal degree `w`.
pub fn random_cochain(alg: &FiniteGradedAlgebra, r: &mut Rng64, q: usize, w: i32, terms: usize) -> Cochain {
    let basis = cochain_basis(alg, q, w);
    let mut f = Cochain::zero(q);
    if basis.is_empty() {
        return f;
    }
    for _ in 0..terms {
        let (word, k) = &basis[r.gen_range(0..basis.len())];
        f.add_entry(word.clone(), *k, random::coeff(r));
    }
    f
}

/// Random homogeneous cochain of level `q` in a random nonempty internal degree.
pub fn random_cochain_any(alg: &FiniteGradedAlgebra, r: &mut Rng64, q: usize, terms: usize) -> Cochain {
    let (lo, hi) = degree_range(alg, q, HochCoefficients::SelfValued);
    for _ in 0..32 {
        let w = r.gen_range(lo..=hi);
        let f = random_cochain(alg, r, q, w, terms);
        if !f.is_zero() {
            return f;
        }
    }
    Cochain::zero(q)
}

/// Random chain of level `m` (mixed degrees).
pub fn random_chain(alg: &FiniteGradedAlgebra, r: &mut Rng64, m: usize, terms: usize) -> Chain {
    let mut c = Chain::zero();
    for _ in 0..terms {
        let mut w = vec![r.gen_range(0..alg.dim()) as u8];
        w.extend((0..m).map(|_| r.gen_range(1..alg.dim()) as u8));
        c.add_term(w, random::coeff(r));
    }
    c
}

/// Random homogeneous functional of level `q` and chain degree `w`.
pub fn random_dual_cochain(alg: &FiniteGradedAlgebra, r: &mut Rng64, q: usize, w: i32, terms: usize) -> DualCochain {
    let basis = chain_basis(alg, q, w);
    let mut a = DualCochain::zero(q);
    if basis.is_empty() {
        return a;
    }
    for _ in 0..terms {
        a.add_term(basis[r.gen_range(0..basis.len())].clone(), random::coeff(r));
    }
    a
}

/// Induced map of Tradler's cap on `HH^q` in internal degree `w`:
/// returns `(dim HH^q(A;A)_w, dim of the target cohomology, rank of the induced map)`.
pub fn tradler_on_cohomology(alg: &FiniteGradedAlgebra, eta: &SymmetricPairing, q: usize, w: i32) -> (usize, usize, usize) {
    use crate::linalg::rank_kernel;
    let src = cochain_basis(alg, q, w);
    let dz = coboundary_matrix(alg, q, w);
    let z = rank_kernel(&dz).kernel;
    let bprev = if q > 0 { rank(&coboundary_matrix(alg, q - 1, w)) } else { 0 };
    let h_src = z.len() - bprev;
    // η∘f has chain degree: ⟨f(..), a_0⟩ needs deg f(..) + deg a_0 = top degree.
    let tw = eta.degree - w;
    let tgt = chain_basis(alg, q, tw);
    let index: BTreeMap<Word, usize> = tgt.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let to_vec = |d: &DualCochain| -> Vec<(usize, Q)> { d.terms().iter().map(|(k, x)| (index[k], x.clone())).collect() };
    // Coboundaries in the target: images of transposed boundaries.
    let bmat = boundary_matrix(alg, q, tw);
    let coboundaries = bmat.transpose();
    let mut trip: Vec<(usize, usize, Q)> = coboundaries.entries().map(|(r, c, x)| (r, c, x.clone())).collect();
    let base = coboundaries.ncols();
    for (j, v) in z.iter().enumerate() {
        let mut f = Cochain::zero(q);
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                f.add_entry(src[i].0.clone(), src[i].1, x.clone());
            }
        }
        for (r, x) in to_vec(&tradler_cap(alg, &f, eta)) {
            trip.push((r, base + j, x));
        }
    }
    let big = SparseMatrix::from_triplets(tgt.len(), base + z.len(), trip);
    let rk_b = rank(&coboundaries);
    let induced = rank(&big) - rk_b;
    let h_tgt = tgt.len() - rank(&boundary_matrix(alg, q + 1, tw)) - rk_b;
    (h_src, h_tgt, induced)
}

fn cochain_from_coords(q: usize, basis: &[(Word, usize)], v: &[Q]) -> Cochain {
    let mut f = Cochain::zero(q);
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            f.add_entry(basis[i].0.clone(), basis[i].1, x.clone());
        }
    }
    f
}

/// Basis of δ-cocycles in `C^q(A;A)` of internal degree `w`.
pub fn cocycle_basis(alg: &FiniteGradedAlgebra, q: usize, w: i32) -> Vec<Cochain> {
    let basis = cochain_basis(alg, q, w);
    crate::linalg::rank_kernel(&coboundary_matrix(alg, q, w)).kernel.iter().map(|v| cochain_from_coords(q, &basis, v)).collect()
}

/// Basis of cocycles in `C^q(A;A*)` supported on chains of degree `w`.
pub fn dual_cocycle_basis(alg: &FiniteGradedAlgebra, q: usize, w: i32) -> Vec<DualCochain> {
    let basis = chain_basis(alg, q, w);
    let d = boundary_matrix(alg, q + 1, w).transpose();
    crate::linalg::rank_kernel(&d)
        .kernel
        .iter()
        .map(|v| {
            let mut a = DualCochain::zero(q);
            for (i, x) in v.iter().enumerate() {
                a.add_term(basis[i].clone(), x.clone());
            }
            a
        })
        .collect()
}

/// Whether `f` is a Hochschild coboundary (checked degree by degree).
pub fn is_coboundary(alg: &FiniteGradedAlgebra, f: &Cochain) -> bool {
    let q = f.level;
    let mut parts: BTreeMap<i32, Vec<(Word, usize, Q)>> = BTreeMap::new();
    for (w, v) in &f.values {
        for (k, x) in v {
            parts.entry(alg.degree(*k) - alg.word_degree(w)).or_default().push((w.clone(), *k, x.clone()));
        }
    }
    parts.into_iter().all(|(deg, entries)| {
        if q == 0 {
            return false;
        }
        let basis = cochain_basis(alg, q, deg);
        let index: BTreeMap<(Word, usize), usize> = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut target = vec![Q::zero(); basis.len()];
        for (w, k, x) in entries {
            target[index[&(w, k)]] = x;
        }
        crate::linalg::solve_in_image(&coboundary_matrix(alg, q - 1, deg), &target).map(|s| s.is_feasible()).unwrap_or(false)
    })
}

/// Whether `a` lies in the image of the coboundary of `C^•(A;A*)`.
pub fn is_dual_coboundary(alg: &FiniteGradedAlgebra, a: &DualCochain) -> bool {
    let q = a.level;
    let mut parts: BTreeMap<i32, Vec<(Word, Q)>> = BTreeMap::new();
    for (w, x) in &a.terms {
        parts.entry(alg.word_degree(w)).or_default().push((w.clone(), x.clone()));
    }
    parts.into_iter().all(|(deg, entries)| {
        if q == 0 {
            return false;
        }
        let basis = chain_basis(alg, q, deg);
        let index: BTreeMap<Word, usize> = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut target = vec![Q::zero(); basis.len()];
        for (w, x) in entries {
            target[index[&w]] = x;
        }
        let d = boundary_matrix(alg, q, deg).transpose();
        crate::linalg::solve_in_image(&d, &target).map(|s| s.is_feasible()).unwrap_or(false)
    })
}

/// Failure counts of the operator identities over a random campaign.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HochReport {
    pub samples: usize,
    /// `(identity, failures)` in a fixed order.
    pub failures: Vec<(&'static str, usize)>,
}

impl HochReport {
    pub fn holds(&self) -> bool {
        self.failures.iter().all(|(_, k)| *k == 0)
    }

    pub fn failed(&self, name: &str) -> usize {
        self.failures.iter().find(|(n, _)| *n == name).map(|(_, k)| *k).unwrap_or(0)
    }
}

pub const IDENTITIES: [&str; 12] = [
    "delta^2",
    "b^2",
    "B^2",
    "bB+Bb",
    "cup associative",
    "iota_f iota_g",
    "iota_delta",
    "[L_f,L_g]",
    "[b,L_f]",
    "cartan 1",
    "cartan 2",
    "iota* module",
];

impl FiniteGradedAlgebra {
    /// `L_f - [B, ι_f] - [b, S_f] - (-1)^{|f|} S_{δf}`; zero for every `f`.
    pub fn cartan1_defect(&self, f: &Cochain, alpha: &Chain) -> Chain {
        let n = f.level as i64;
        let df = self.hoch_coboundary(f);
        let bi = self.connes_b(&self.cap(f, alpha)).sub(&self.cap(f, &self.connes_b(alpha)).scale(&sign_q(n)));
        let bs = self.hoch_boundary(&self.homotopy_s(f, alpha)).sub(&self.homotopy_s(f, &self.hoch_boundary(alpha)).scale(&sign_q(n)));
        self.lie_l(f, alpha).sub(&bi).sub(&bs).sub(&self.homotopy_s(&df, alpha).scale(&sign_q(n)))
    }

    /// `[L_f, ι_g] - (-1)^{|f|+1} ι_{{f,g}} - [b, T(f,g)] - (-1)^{|f|} T(δf,g) - (-1)^{|f|+|g|} T(f,δg)`.
    /// `f` and `g` must be homogeneous.
    pub fn cartan2_defect(&self, f: &Cochain, g: &Cochain, alpha: &Chain) -> Chain {
        let (n, m) = (f.level as i64, g.level as i64);
        let pf = !f.parity_parts(self)[1].is_zero() as i64;
        let pg = !g.parity_parts(self)[1].is_zero() as i64;
        let li = self.lie_l(f, &self.cap(g, alpha)).sub(&self.cap(g, &self.lie_l(f, alpha)).scale(&sign_q((n + 1) * m + pf * pg)));
        let lhs = li.sub(&self.cap(&self.gerst_bracket(f, g), alpha).scale(&sign_q(n + 1)));
        let bt =
            self.hoch_boundary(&self.homotopy_t(f, g, alpha)).sub(&self.homotopy_t(f, g, &self.hoch_boundary(alpha)).scale(&sign_q(n + m)));
        let rhs = bt
            .add(&self.homotopy_t(&self.hoch_coboundary(f), g, alpha).scale(&sign_q(n)))
            .add(&self.homotopy_t(f, &self.hoch_coboundary(g), alpha).scale(&sign_q(n + m)));
        lhs.sub(&rhs)
    }
}

/// Randomized check of the chain-level identities with cochains of level
/// `≤ max_level` (the chain level is drawn up to `max_level + 1`).
pub fn verify_identities(alg: &FiniteGradedAlgebra, samples: usize, max_level: usize, seed: u64) -> HochReport {
    let seeds: Vec<u64> = (0..samples as u64).map(|i| seed.wrapping_mul(0x9e37_79b9).wrapping_add(i)).collect();
    let rows = parallel::map(&seeds, |s| {
        let mut r = random::rng(*s);
        let n = r.gen_range(0..=max_level);
        let m = r.gen_range(0..=max_level);
        let l = r.gen_range(0..=max_level + 1);
        let f = random_cochain_any(alg, &mut r, n, 3);
        let g = random_cochain_any(alg, &mut r, m, 3);
        let hl = r.gen_range(0..=1);
        let h = random_cochain_any(alg, &mut r, hl, 2);
        let al = random_chain(alg, &mut r, l, 3);
        let pf = !f.parity_parts(alg)[1].is_zero() as i64;
        let pg = !g.parity_parts(alg)[1].is_zero() as i64;
        let (ni, mi) = (n as i64, m as i64);
        let df = alg.hoch_coboundary(&f);
        let bb = alg.hoch_boundary(&al);
        let mut ok = Vec::with_capacity(IDENTITIES.len());
        ok.push(alg.hoch_coboundary(&df).is_zero());
        ok.push(alg.hoch_boundary(&bb).is_zero());
        ok.push(alg.connes_b(&alg.connes_b(&al)).is_zero());
        ok.push(alg.hoch_boundary(&alg.connes_b(&al)).add(&alg.connes_b(&bb)).is_zero());
        ok.push(alg.cup(&alg.cup(&f, &g), &h) == alg.cup(&f, &alg.cup(&g, &h)));
        ok.push(alg.cap(&f, &alg.cap(&g, &al)) == alg.cap(&alg.cup(&g, &f), &al).scale(&sign_q(ni * mi + pf * pg)));
        let comm = alg.hoch_boundary(&alg.cap(&f, &al)).sub(&alg.cap(&f, &bb).scale(&sign_q(ni)));
        ok.push(alg.cap(&df, &al) == comm.scale(&sign_q(ni + 1)));
        let lfg = alg.lie_l(&f, &alg.lie_l(&g, &al)).sub(&alg.lie_l(&g, &alg.lie_l(&f, &al)).scale(&sign_q((ni + 1) * (mi + 1) + pf * pg)));
        ok.push(lfg == alg.lie_l(&alg.gerst_bracket(&f, &g), &al));
        let bl = alg.hoch_boundary(&alg.lie_l(&f, &al)).sub(&alg.lie_l(&f, &bb).scale(&sign_q(ni + 1)));
        ok.push(bl.scale(&sign_q(ni + 1)).add(&alg.lie_l(&df, &al)).is_zero());
        ok.push(alg.cartan1_defect(&f, &al).is_zero());
        ok.push(alg.cartan2_defect(&f, &g, &al).is_zero());
        // Module action on A*-valued cochains, on a small functional.
        let q = r.gen_range(0..=1);
        let words = chain_words(alg, q);
        let mut a = DualCochain::zero(q);
        for _ in 0..2 {
            a.add_term(words[r.gen_range(0..words.len())].clone(), random::coeff(&mut r));
        }
        let gl = r.gen_range(0..=1);
        let f1 = random_cochain_any(alg, &mut r, 1, 2);
        let g1 = random_cochain_any(alg, &mut r, gl, 2);
        ok.push(alg.iota_dual(&f1, &alg.iota_dual(&g1, &a)) == alg.iota_dual(&alg.cup(&f1, &g1), &a));
        ok
    });
    let failures = IDENTITIES.iter().enumerate().map(|(i, name)| (*name, rows.iter().filter(|r| !r[i]).count())).collect();
    HochReport { samples, failures }
}
