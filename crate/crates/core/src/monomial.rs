//! The monomial algebra κ on generators `z_1, …, z_l`.
//!
//! Relations: `z_i z_j = 0` for `i < j`, `z_i^{β_i} = 0`, and the staircase
//! words `z_i^{β_i−1} z_{i−1}^{β_{i−1}−2} ⋯ z_{j+1}^{β_{j+1}−2} z_j^{β_j−1}`
//! for `j < i`. Every nonzero monomial has a unique normal form
//! `z_l^{b_l} ⋯ z_1^{b_1}`, stored here as the exponent vector `(b_1, …, b_l)`.
//!
//! Words are sequences of generator indices in written order: `[1, 2]` is the
//! product `z_1 z_2`.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fractions::{dual, evaluate, expand, CoprimePair, Evaluated, HJSeq};

const ZERO: u32 = u32::MAX;

/// A normal-form monomial or zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Monomial {
    Zero,
    /// Exponents `(b_1, …, b_l)`.
    Term(Vec<u32>),
}

impl Monomial {
    pub fn identity(l: usize) -> Self {
        Monomial::Term(vec![0; l])
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Monomial::Zero)
    }

    pub fn degree(&self) -> Option<u32> {
        match self {
            Monomial::Zero => None,
            Monomial::Term(e) => Some(e.iter().sum()),
        }
    }

    pub fn exponents(&self) -> Option<&[u32]> {
        match self {
            Monomial::Zero => None,
            Monomial::Term(e) => Some(e),
        }
    }

    /// The written word `z_l…z_l z_{l−1}… z_1…z_1` as generator indices.
    pub fn word(&self) -> Option<Vec<usize>> {
        let e = self.exponents()?;
        let mut w = Vec::new();
        for (i, &b) in e.iter().enumerate().rev() {
            w.extend(std::iter::repeat_n(i + 1, b as usize));
        }
        Some(w)
    }
}

impl fmt::Display for Monomial {
    /// Renders as `z3^1.z1^2`; the identity is `1`, zero is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Zero => write!(f, "0"),
            Monomial::Term(e) => {
                let parts: Vec<String> = e
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &b)| b > 0)
                    .map(|(i, b)| format!("z{}^{}", i + 1, b))
                    .collect();
                if parts.is_empty() {
                    write!(f, "1")
                } else {
                    write!(f, "{}", parts.join("."))
                }
            }
        }
    }
}

/// The ideal `I_i = κ·m_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    pub index: usize,
    pub generator: Monomial,
    pub dim: usize,
}

/// `M_i = κ / J_i` with `J_i` the left annihilator of `m_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialModule {
    pub index: usize,
    /// Minimal monomial generators of `J_i`, as basis indices.
    pub annihilator_generators: Vec<usize>,
    /// Basis indices of κ surviving in the quotient.
    pub basis: Vec<usize>,
    /// The β-sequence of the algebra `M_i` is isomorphic to.
    pub beta: HJSeq,
    /// Dual of `beta`; equals `[α_{i+1}, …, α_n]` when the identification holds.
    pub alpha: HJSeq,
}

impl MonomialModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// κ with its basis and multiplication table.
#[derive(Debug, Clone)]
pub struct KappaAlgebra {
    beta: HJSeq,
    alpha: HJSeq,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    /// Lowest and highest generator index with nonzero exponent (0 for the identity).
    span: Vec<(usize, usize)>,
    table: Vec<u32>,
    /// `annihilators[i][q]` is true when `q·m_i = 0`.
    annihilators: Vec<Vec<bool>>,
    generators: Vec<usize>,
}

impl KappaAlgebra {
    /// κ for the pair `(r, a)`: the β-sequence is the expansion of `r/(r−a)`.
    pub fn new(pair: CoprimePair) -> Self {
        Self::from_beta(expand(pair.dual()))
    }

    pub fn from_beta(beta: HJSeq) -> Self {
        let alpha = dual(&beta);
        let l = beta.len();
        let basis = enumerate_basis(&beta);
        let index: HashMap<Vec<u32>, usize> =
            basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let span = basis.iter().map(|e| span_of(e)).collect();
        let mut k = KappaAlgebra {
            beta,
            alpha,
            basis,
            index,
            span,
            table: Vec::new(),
            annihilators: Vec::new(),
            generators: Vec::new(),
        };
        let d = k.basis.len();
        // Rows by decreasing degree: x·y = (x·z_g)·y' with z_g the leftmost letter of y.
        let mut by_gen = vec![vec![None; l]; d];
        for u in 1..d {
            let g = k.span[u].0;
            let mut e = k.basis[u].clone();
            e[g - 1] -= 1;
            by_gen[k.index[&e]][g - 1] = Some(u);
        }
        let rest: Vec<usize> = (0..d)
            .map(|y| {
                let (_, g) = k.span[y];
                if g == 0 {
                    return 0;
                }
                let mut e = k.basis[y].clone();
                e[g - 1] -= 1;
                k.index[&e]
            })
            .collect();
        let mut table = vec![ZERO; d * d];
        for x in (0..d).rev() {
            table[x * d] = x as u32;
            for y in 1..d {
                if let Some(u) = by_gen[x][k.span[y].1 - 1] {
                    table[x * d + y] = table[u * d + rest[y]];
                }
            }
        }
        k.table = table;

        let n = k.alpha.len();
        let mut top = vec![0u32; l];
        if l > 0 {
            for (i, t) in top.iter_mut().enumerate() {
                *t = k.beta.entries()[i] as u32 - 2;
            }
            top[0] += 1;
        }
        let mut generators = Vec::with_capacity(n + 1);
        for i in 0..=n {
            generators.push(k.index[&right_factor(&top, i)]);
        }
        k.annihilators = generators.iter().map(|&g| k.left_annihilator(g)).collect();
        k.generators = generators;
        k
    }

    pub fn pair(&self) -> Option<CoprimePair> {
        match evaluate(&self.alpha) {
            Ok(Evaluated::Pair(p)) => Some(p),
            _ => None,
        }
    }

    pub fn beta(&self) -> &HJSeq {
        &self.beta
    }

    pub fn alpha(&self) -> &HJSeq {
        &self.alpha
    }

    pub fn l(&self) -> usize {
        self.beta.len()
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<Monomial> {
        self.basis.iter().map(|e| Monomial::Term(e.clone())).collect()
    }

    pub fn monomial(&self, idx: usize) -> Monomial {
        Monomial::Term(self.basis[idx].clone())
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        m.exponents().and_then(|e| self.index.get(e).copied())
    }

    pub fn one(&self) -> usize {
        0
    }

    pub fn degree(&self, idx: usize) -> u32 {
        self.basis[idx].iter().sum()
    }

    pub fn max_degree(&self) -> u32 {
        (0..self.dim()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// Product of basis elements `x·y`, or `None` when it vanishes.
    pub fn mul(&self, x: usize, y: usize) -> Option<usize> {
        let p = self.table[x * self.dim() + y];
        (p != ZERO).then_some(p as usize)
    }

    pub fn multiply(&self, x: &Monomial, y: &Monomial) -> Monomial {
        match (self.index_of(x), self.index_of(y)) {
            (Some(i), Some(j)) => self.mul(i, j).map_or(Monomial::Zero, |p| self.monomial(p)),
            _ => Monomial::Zero,
        }
    }

    /// Normal form of a word of generator indices in written order.
    pub fn normal_form(&self, word: &[usize]) -> Result<Monomial> {
        let l = self.l();
        let mut acc = Some(self.one());
        for &g in word {
            if g == 0 || g > l {
                return Err(Error::GeneratorOutOfRange { index: g, max: l });
            }
            let mut e = vec![0; l];
            e[g - 1] = 1;
            let z = self.index.get(&e).copied();
            acc = match (acc, z) {
                (Some(a), Some(z)) => self.mul(a, z),
                _ => None,
            };
        }
        Ok(acc.map_or(Monomial::Zero, |i| self.monomial(i)))
    }

    /// Defining monomial relations, as words in written order: first the
    /// powers `z_i^{β_i}`, then `z_i z_j` for `i < j`, then the staircase
    /// words ordered by `(j, i)`.
    pub fn relations(&self) -> Vec<Vec<usize>> {
        let l = self.l();
        let b = |i: usize| self.beta.get(i) as usize;
        let mut out = Vec::new();
        for i in 1..=l {
            out.push(vec![i; b(i)]);
        }
        for i in 1..=l {
            for j in i + 1..=l {
                out.push(vec![i, j]);
            }
        }
        for j in 1..=l {
            for i in j + 1..=l {
                let mut w = vec![i; b(i) - 1];
                for k in (j + 1..i).rev() {
                    w.extend(std::iter::repeat_n(k, b(k) - 2));
                }
                w.extend(std::iter::repeat_n(j, b(j) - 1));
                out.push(w);
            }
        }
        out
    }

    /// `q ↦ (q·m = 0)` over the basis.
    pub fn left_annihilator(&self, m: usize) -> Vec<bool> {
        (0..self.dim()).map(|q| self.mul(q, m).is_none()).collect()
    }

    /// Dimension of the principal left ideal `κ·m`.
    pub fn principal_ideal_dim(&self, m: usize) -> usize {
        (0..self.dim()).filter(|&q| self.mul(q, m).is_some()).count()
    }

    /// Largest dimension of a principal left ideal `κ·m` with `m` a non-identity monomial.
    pub fn largest_proper_ideal_dim(&self) -> usize {
        let d = self.dim();
        let mut counts = vec![0usize; d];
        for row in self.table.chunks_exact(d) {
            for (c, &p) in counts.iter_mut().zip(row) {
                *c += usize::from(p != ZERO);
            }
        }
        counts.into_iter().skip(1).max().unwrap_or(0)
    }

    /// The ideals `I_0, …, I_n` with generators `m_i`.
    pub fn ideals(&self) -> Vec<MonomialIdeal> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, &g)| MonomialIdeal {
                index: i,
                generator: self.monomial(g),
                dim: self.principal_ideal_dim(g),
            })
            .collect()
    }

    /// Basis index of `m_i`.
    pub fn ideal_generator(&self, i: usize) -> usize {
        self.generators[i]
    }

    /// `in_annihilator(i, q)` is true when `q ∈ J_i`.
    pub fn in_annihilator(&self, i: usize, q: usize) -> bool {
        self.annihilators[i][q]
    }

    pub fn module_of(&self, i: usize) -> Result<MonomialModule> {
        let n = self.n();
        if i > n {
            return Err(Error::VertexOutOfRange { vertex: i, max: n });
        }
        let ann = &self.annihilators[i];
        let basis: Vec<usize> = (0..self.dim()).filter(|&q| !ann[q]).collect();
        let annihilator_generators = (0..self.dim())
            .filter(|&q| ann[q] && self.drop_leftmost(q).is_none_or(|rest| !ann[rest]))
            .collect();

        // The first generator outside J_i and its smallest power inside J_i
        // start the β-sequence of the quotient; the tail is inherited.
        let l = self.l();
        let mut beta = Vec::new();
        if let Some(j) = (1..=l).find(|&j| !ann[self.generator_index(j)]) {
            let mut e = 1u32;
            let mut pow = self.generator_index(j);
            loop {
                e += 1;
                match self.mul(self.generator_index(j), pow) {
                    Some(p) if !ann[p] => pow = p,
                    _ => break,
                }
            }
            beta.push(e as u64);
            beta.extend_from_slice(&self.beta.entries()[j..]);
        }
        let beta = HJSeq::new(beta)?;
        let alpha = dual(&beta);
        Ok(MonomialModule { index: i, annihilator_generators, basis, beta, alpha })
    }

    /// The `i` with `κ·m ≅ I_i`, found by matching left annihilators.
    pub fn classify_ideal(&self, m: &Monomial) -> Result<usize> {
        let idx = self.index_of(m).ok_or(Error::ZeroMonomial)?;
        let ann = self.left_annihilator(idx);
        self.annihilators
            .iter()
            .position(|a| *a == ann)
            .ok_or_else(|| Error::MalformedAlgebra(format!("no ideal class matches {m}")))
    }

    /// Rooted digraph on the basis; an edge labelled `i` joins `m` to `z_i·m`.
    pub fn monomial_diagram(&self) -> String {
        let mut out = String::from("digraph monomials {\n  rankdir=TB;\n");
        for e in &self.basis {
            let _ = writeln!(out, "  \"{}\";", Monomial::Term(e.clone()));
        }
        for (s, g, t) in self.diagram_edges() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.monomial(s),
                self.monomial(t),
                g
            );
        }
        out.push_str("}\n");
        out
    }

    /// Edges `(source, generator, target)` of the monomial diagram.
    pub fn diagram_edges(&self) -> Vec<(usize, usize, usize)> {
        let mut edges = Vec::new();
        for m in 0..self.dim() {
            for g in 1..=self.l() {
                if let Some(t) = self.mul(self.generator_index(g), m) {
                    edges.push((m, g, t));
                }
            }
        }
        edges
    }

    /// Basis index of the generator `z_g`.
    pub fn generator_index(&self, g: usize) -> usize {
        let mut e = vec![0; self.l()];
        e[g - 1] = 1;
        self.index[&e]
    }

    /// The monomial with its leftmost letter removed.
    fn drop_leftmost(&self, q: usize) -> Option<usize> {
        let (_, hi) = self.span[q];
        if hi == 0 {
            return None;
        }
        let mut e = self.basis[q].clone();
        e[hi - 1] -= 1;
        self.index.get(&e).copied()
    }

}

/// Whether `(b_1, …, b_l)` is a normal-form exponent vector.
pub fn is_normal(beta: &HJSeq, e: &[u32]) -> bool {
    let mut open = false;
    for (i, &b) in e.iter().enumerate().rev() {
        let bi = beta.entries()[i] as u32;
        if b >= bi {
            return false;
        }
        if b == bi - 1 {
            if open {
                return false;
            }
            open = true;
        } else if b != bi - 2 {
            open = false;
        }
    }
    true
}

fn span_of(e: &[u32]) -> (usize, usize) {
    let lo = e.iter().position(|&b| b > 0).map_or(0, |p| p + 1);
    let hi = e.iter().rposition(|&b| b > 0).map_or(0, |p| p + 1);
    (lo, hi)
}

/// Right factor of degree `d` of the monomial with exponents `top`.
fn right_factor(top: &[u32], d: usize) -> Vec<u32> {
    let mut left = d as u32;
    top.iter()
        .map(|&b| {
            let take = b.min(left);
            left -= take;
            take
        })
        .collect()
}

fn enumerate_basis(beta: &HJSeq) -> Vec<Vec<u32>> {
    let l = beta.len();
    // Grow monomials by left multiplication; `z_g·m` stays in normal form
    // only when `g` is at least the highest index occurring in `m`.
    let mut out = vec![vec![0u32; l]];
    let mut frontier = vec![(vec![0u32; l], 1usize)];
    while let Some((mut m, hi)) = frontier.pop() {
        for g in hi..=l {
            m[g - 1] += 1;
            if is_normal(beta, &m) {
                out.push(m.clone());
                frontier.push((m.clone(), g));
            }
            m[g - 1] -= 1;
        }
    }
    out.sort_by(|x, y| {
        let dx: u32 = x.iter().sum();
        let dy: u32 = y.iter().sum();
        dx.cmp(&dy).then_with(|| x.iter().rev().cmp(y.iter().rev()))
    });
    out
}
