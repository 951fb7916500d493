//! Quiver-with-relations presentations.
//!
//! Paths compose left to right: the word `a1c1` is `a1` followed by `c1`, so
//! the head of each arrow must equal the tail of the next one.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fractions::{dual, evaluate, expand, t_map, CoprimePair, Evaluated, HJSeq};
use crate::monomial::KappaAlgebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Lambda,
    Recon,
    Knoerrer,
    Riemenschneider,
}

impl AlgebraKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Lambda => "lambda",
            AlgebraKind::Recon => "recon",
            AlgebraKind::Knoerrer => "knoerrer",
            AlgebraKind::Riemenschneider => "riemenschneider",
        }
    }
}

impl std::str::FromStr for AlgebraKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(AlgebraKind::Lambda),
            "recon" => Ok(AlgebraKind::Recon),
            "knoerrer" => Ok(AlgebraKind::Knoerrer),
            "riemenschneider" => Ok(AlgebraKind::Riemenschneider),
            other => Err(Error::Parse(format!("unknown algebra '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

impl Arrow {
    fn new(name: impl Into<String>, tail: usize, head: usize) -> Self {
        Arrow { name: name.into(), tail, head }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn arrow(&self, name: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.name == name)
    }

    /// `counts[u][v]` is the number of arrows `u → v`.
    pub fn arrow_counts(&self) -> Vec<Vec<usize>> {
        let mut c = vec![vec![0; self.vertices]; self.vertices];
        for a in &self.arrows {
            if a.tail < self.vertices && a.head < self.vertices {
                c[a.tail][a.head] += 1;
            }
        }
        c
    }
}

pub type PathWord = Vec<String>;

/// `lhs = rhs`, or `lhs = 0` when `rhs` is absent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: PathWord,
    pub rhs: Option<PathWord>,
}

impl Relation {
    fn zero(lhs: PathWord) -> Self {
        Relation { lhs, rhs: None }
    }

    fn binomial(lhs: PathWord, rhs: PathWord) -> Self {
        Relation { lhs, rhs: Some(rhs) }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=", self.lhs.concat())?;
        match &self.rhs {
            Some(r) => write!(f, "{}", r.concat()),
            None => write!(f, "0"),
        }
    }
}

/// A quiver with relations plus the data it was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub algebra: AlgebraKind,
    pub r: u64,
    pub a: u64,
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
    #[serde(flatten)]
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph {} {{\n", self.algebra.name());
        for v in 0..self.quiver.vertices {
            let _ = writeln!(out, "  {v};");
        }
        for a in &self.quiver.arrows {
            let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", a.tail, a.head, a.name);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algebra {} r={} a={}", self.algebra.name(), self.r, self.a);
        let _ = writeln!(out, "alpha {}", seq_text(&self.alpha));
        let _ = writeln!(out, "beta {}", seq_text(&self.beta));
        let _ = writeln!(out, "vertices {}", self.quiver.vertices);
        for a in &self.quiver.arrows {
            let _ = writeln!(out, "arrow {}: {} -> {}", a.name, a.tail, a.head);
        }
        for r in &self.relations {
            let _ = writeln!(out, "{r}");
        }
        out
    }

    /// Source and target vertex of a composable word.
    pub fn endpoints(&self, word: &[String]) -> Option<(usize, usize)> {
        let first = self.quiver.arrow(word.first()?)?;
        let last = self.quiver.arrow(word.last()?)?;
        Some((first.tail, last.head))
    }

    /// Number of relations whose paths start (and end) at each vertex.
    pub fn relation_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.quiver.vertices];
        for r in &self.relations {
            if let Some((s, _)) = self.endpoints(&r.lhs) {
                c[s] += 1;
            }
        }
        c
    }
}

fn seq_text(s: &[u64]) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(","))
}

fn pair_of(alpha: &HJSeq) -> (u64, u64) {
    match evaluate(alpha) {
        Ok(Evaluated::Pair(p)) => (p.r(), p.a()),
        _ => (1, 0),
    }
}

fn c(i: usize) -> String {
    format!("c{i}")
}

fn a(i: usize) -> String {
    format!("a{i}")
}

fn k(j: usize) -> String {
    if j == 1 {
        a(1)
    } else {
        format!("k{j}")
    }
}

/// `C_0^i = c_1 ⋯ c_i`.
fn c_path(i: usize) -> Vec<String> {
    (1..=i).map(c).collect()
}

/// `A_0^t = a_0 a_n ⋯ a_{t+1}`.
fn a_path(n: usize, t: usize) -> Vec<String> {
    let mut p = vec![a(0)];
    p.extend((t + 1..=n).rev().map(a));
    p
}

fn cat(x: &[String], y: &[String]) -> PathWord {
    let mut v = x.to_vec();
    v.extend_from_slice(y);
    v
}

fn chain_arrows(alpha: &HJSeq, recon: bool) -> Vec<Arrow> {
    let n = alpha.len();
    let vn = alpha.v(n);
    let mut arrows = Vec::new();
    if recon {
        arrows.push(Arrow::new(a(0), 0, n));
        arrows.push(Arrow::new(c(0), n, 0));
    }
    for i in 1..=n {
        arrows.push(Arrow::new(c(i), i - 1, i));
    }
    for i in 1..=n {
        arrows.push(Arrow::new(a(i), i, i - 1));
    }
    for j in 2..=vn {
        arrows.push(Arrow::new(k(j), alpha.k_tail(j), 0));
    }
    arrows
}

/// The finite-dimensional algebra Λ attached to the chain `α`.
pub fn lambda_presentation(alpha: &HJSeq) -> Presentation {
    let n = alpha.len();
    let mut relations = Vec::new();
    for i in (1..=n).rev() {
        let ci = c_path(i);
        let next = (i < n).then(|| vec![c(i + 1), a(i + 1)]);
        let close = |lhs: PathWord| match &next {
            Some(rhs) => Relation::binomial(lhs, rhs.clone()),
            None => Relation::zero(lhs),
        };
        if alpha.get(i) > 2 {
            let (u, v) = (alpha.u(i), alpha.v(i));
            relations.push(Relation::zero(vec![a(i), c(i)]));
            for j in u + 2..v {
                relations.push(Relation::zero(cat(&[k(j)], &ci)));
            }
            relations.push(close(cat(&[k(v)], &ci)));
        } else {
            relations.push(close(vec![a(i), c(i)]));
        }
    }
    let (r, aa) = pair_of(alpha);
    Presentation {
        algebra: AlgebraKind::Lambda,
        r,
        a: aa,
        alpha: alpha.entries().to_vec(),
        beta: dual(alpha).entries().to_vec(),
        quiver: Quiver { vertices: n + 1, arrows: chain_arrows(alpha, false) },
        relations,
    }
}

/// The reconstruction algebra (opposite), with the extra arrows `a0: 0 → n`
/// and `c0: n → 0`.
pub fn recon_presentation(alpha: &HJSeq) -> Presentation {
    let n = alpha.len();
    let vn = alpha.v(n);
    let mut relations = Vec::new();
    let idx = |i: usize| if i == n + 1 { 0 } else { i };
    for i in (1..=n).rev() {
        let ci = c_path(i);
        let ai = a_path(n, i);
        let next = vec![c(idx(i + 1)), a(idx(i + 1))];
        if alpha.get(i) > 2 {
            let (u, v) = (alpha.u(i), alpha.v(i));
            relations.push(Relation::binomial(vec![a(i), c(i)], cat(&[k(u + 2)], &ai)));
            for j in u + 2..v {
                relations.push(Relation::binomial(cat(&[k(j)], &ci), cat(&[k(j + 1)], &ai)));
            }
            relations.push(Relation::binomial(cat(&[k(v)], &ci), next));
        } else {
            relations.push(Relation::binomial(vec![a(i), c(i)], next));
        }
    }
    let t = t_map(alpha);
    let kk = |j: usize| if j == vn + 1 { c(0) } else { k(j) };
    let tt = |j: usize| if j == vn + 1 { n } else { t[j - 1] };
    for j in (1..=vn).rev() {
        let lhs = cat(&a_path(n, tt(j + 1)), &[kk(j + 1)]);
        let rhs = cat(&c_path(tt(j)), &[kk(j)]);
        relations.push(Relation::binomial(lhs, rhs));
    }
    let (r, aa) = pair_of(alpha);
    Presentation {
        algebra: AlgebraKind::Recon,
        r,
        a: aa,
        alpha: alpha.entries().to_vec(),
        beta: dual(alpha).entries().to_vec(),
        quiver: Quiver { vertices: n + 1, arrows: chain_arrows(alpha, true) },
        relations,
    }
}

/// The one-vertex monomial presentation of κ with loops `z1, …, zl`.
pub fn knoerrer_presentation(pair: CoprimePair) -> Presentation {
    let kappa = KappaAlgebra::new(pair);
    let z = |g: usize| format!("z{g}");
    let arrows = (1..=kappa.l()).map(|g| Arrow::new(z(g), 0, 0)).collect();
    let relations = kappa
        .relations()
        .into_iter()
        .map(|word| Relation::zero(word.into_iter().map(z).collect()))
        .collect();
    Presentation {
        algebra: AlgebraKind::Knoerrer,
        r: pair.r(),
        a: pair.a(),
        alpha: kappa.alpha().entries().to_vec(),
        beta: kappa.beta().entries().to_vec(),
        quiver: Quiver { vertices: 1, arrows },
        relations,
    }
}

/// A product of powers in written order, e.g. `[(2,1),(0,1)]` is `z2 z0`.
pub type CommWord = Vec<(usize, u64)>;

/// Commutative presentation of the invariant ring: `z_{j+1} z_i = z_{i+1} (∏ z_k^{β_k−2}) z_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutativePresentation {
    pub r: u64,
    pub a: u64,
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
    pub generators: Vec<String>,
    pub relations: Vec<(CommWord, CommWord)>,
}

impl CommutativePresentation {
    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn render_word(word: &CommWord) -> String {
        word.iter()
            .map(|&(g, e)| if e == 1 { format!("z{g}") } else { format!("z{g}^{e}") })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algebra riemenschneider r={} a={}", self.r, self.a);
        let _ = writeln!(out, "alpha {}", seq_text(&self.alpha));
        let _ = writeln!(out, "beta {}", seq_text(&self.beta));
        let _ = writeln!(out, "generators {}", self.generators.join(","));
        for (l, r) in &self.relations {
            let _ = writeln!(out, "{}={}", Self::render_word(l), Self::render_word(r));
        }
        out
    }

    /// The same data in the shared presentation schema: one vertex, one loop
    /// per generator, powers spelled out as repeated letters.
    pub fn to_presentation(&self) -> Presentation {
        let spell = |wd: &CommWord| -> PathWord {
            wd.iter()
                .flat_map(|&(g, e)| std::iter::repeat_n(format!("z{g}"), e as usize))
                .collect()
        };
        Presentation {
            algebra: AlgebraKind::Riemenschneider,
            r: self.r,
            a: self.a,
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            quiver: Quiver {
                vertices: 1,
                arrows: self.generators.iter().map(|g| Arrow::new(g.clone(), 0, 0)).collect(),
            },
            relations: self
                .relations
                .iter()
                .map(|(l, r)| Relation::binomial(spell(l), spell(r)))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_presentation().to_json()
    }

    pub fn to_dot(&self) -> String {
        self.to_presentation().to_dot()
    }
}

pub fn riemenschneider_presentation(pair: CoprimePair) -> CommutativePresentation {
    let beta = expand(pair.dual());
    let l = beta.len();
    let mut relations = Vec::new();
    for i in 0..l {
        for j in i + 1..=l {
            let lhs = vec![(j + 1, 1), (i, 1)];
            let mut rhs: CommWord = vec![(i + 1, 1)];
            for kk in i + 1..=j {
                push_power(&mut rhs, kk, beta.get(kk) - 2);
            }
            push_power(&mut rhs, j, 1);
            relations.push((lhs, rhs));
        }
    }
    CommutativePresentation {
        r: pair.r(),
        a: pair.a(),
        alpha: expand(pair).entries().to_vec(),
        beta: beta.entries().to_vec(),
        generators: (0..=l + 1).map(|g| format!("z{g}")).collect(),
        relations,
    }
}

fn push_power(word: &mut CommWord, g: usize, e: u64) {
    if e == 0 {
        return;
    }
    match word.last_mut() {
        Some((h, f)) if *h == g => *f += e,
        _ => word.push((g, e)),
    }
}

/// Closed-form Ext dimensions for Λ: `ext(k, i, j) = dim Ext^k(σ_i, σ_j)`.
pub fn lambda_ext(alpha: &HJSeq, k: usize, i: usize, j: usize) -> usize {
    let n = alpha.len();
    let al = |x: usize| alpha.get(x) as usize;
    match k {
        0 => usize::from(i == j),
        1 if i != 0 && i.abs_diff(j) == 1 => 1,
        1 if i == 0 && j == 1 => al(1) - 1,
        1 if i == 0 && j > 1 && j <= n => al(j) - 2,
        2 if i == j && i != 0 => al(i) - 1,
        _ => 0,
    }
}

/// Closed-form Ext¹ and Ext² dimensions for the reconstruction algebra,
/// with vertex adjacency read modulo `n + 1`.
pub fn recon_ext(alpha: &HJSeq, k: usize, i: usize, j: usize) -> usize {
    let n = alpha.len();
    let al = |x: usize| alpha.get(x) as usize;
    let adjacent = (i + 1) % (n + 1) == j || (j + 1) % (n + 1) == i;
    match k {
        0 => usize::from(i == j),
        1 if n == 1 => match (i, j) {
            (1, 0) => 2,
            (0, 1) => al(1),
            _ => 0,
        },
        1 if i >= 1 && adjacent => 1,
        1 if i == 0 && (j == 1 || j == n) => al(j) - 1,
        1 if i == 0 && j > 1 && j < n => al(j) - 2,
        2 if i == j && i >= 1 => al(i) - 1,
        2 if i == 0 && j == 0 => alpha.v(n),
        _ => 0,
    }
}

/// Per-vertex counts gathered while validating.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub arrow_counts: Vec<Vec<usize>>,
    pub relation_counts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
pub enum Violation {
    #[error("duplicate arrow name {0}")]
    DuplicateArrow(String),
    #[error("arrow {name} has endpoint outside 0..{vertices}")]
    ArrowOutOfRange { name: String, vertices: usize },
    #[error("relation {relation}: unknown arrow {name}")]
    UnknownArrow { relation: usize, name: String },
    #[error("relation {relation}: empty path")]
    EmptyPath { relation: usize },
    #[error("relation {relation}: {path} is not composable at {name} (vertex {expected} expected, arrow starts at {found})")]
    NotComposable { relation: usize, path: String, name: String, expected: usize, found: usize },
    #[error("relation {relation}: sides run {lhs:?} and {rhs:?}")]
    EndpointMismatch { relation: usize, lhs: (usize, usize), rhs: (usize, usize) },
    #[error("{count} arrows {tail} -> {head}, expected {expected}")]
    ArrowCount { tail: usize, head: usize, count: usize, expected: usize },
    #[error("{count} relations at vertex {vertex}, expected {expected}")]
    RelationCount { vertex: usize, count: usize, expected: usize },
}

/// Checks arrow names, composability of every relation, and (for Λ and the
/// reconstruction algebra) arrow and relation counts against the Ext tables.
pub fn validate(p: &Presentation) -> std::result::Result<ValidationReport, Violation> {
    let q = &p.quiver;
    let mut seen = HashSet::new();
    let mut by_name = HashMap::new();
    for ar in &q.arrows {
        if !seen.insert(ar.name.as_str()) {
            return Err(Violation::DuplicateArrow(ar.name.clone()));
        }
        if ar.tail >= q.vertices || ar.head >= q.vertices {
            return Err(Violation::ArrowOutOfRange { name: ar.name.clone(), vertices: q.vertices });
        }
        by_name.insert(ar.name.as_str(), ar);
    }
    let walk = |rel: usize, path: &[String]| -> std::result::Result<(usize, usize), Violation> {
        let mut ends = None;
        for name in path {
            let ar = by_name
                .get(name.as_str())
                .ok_or_else(|| Violation::UnknownArrow { relation: rel, name: name.clone() })?;
            ends = match ends {
                None => Some((ar.tail, ar.head)),
                Some((s, h)) if h == ar.tail => Some((s, ar.head)),
                Some((_, h)) => {
                    return Err(Violation::NotComposable {
                        relation: rel,
                        path: path.concat(),
                        name: name.clone(),
                        expected: h,
                        found: ar.tail,
                    })
                }
            };
        }
        ends.ok_or(Violation::EmptyPath { relation: rel })
    };
    let mut relation_counts = vec![0; q.vertices];
    for (idx, rel) in p.relations.iter().enumerate() {
        let l = walk(idx, &rel.lhs)?;
        if let Some(rhs) = &rel.rhs {
            let r = walk(idx, rhs)?;
            if l != r {
                return Err(Violation::EndpointMismatch { relation: idx, lhs: l, rhs: r });
            }
        }
        relation_counts[l.0] += 1;
    }
    let arrow_counts = q.arrow_counts();

    let table: Option<fn(&HJSeq, usize, usize, usize) -> usize> = match p.algebra {
        AlgebraKind::Lambda => Some(lambda_ext),
        AlgebraKind::Recon => Some(recon_ext),
        _ => None,
    };
    if let (Some(ext), Ok(alpha)) = (table, HJSeq::new(p.alpha.clone())) {
        if alpha.len() + 1 == q.vertices {
            for u in 0..q.vertices {
                for v in 0..q.vertices {
                    let expected = ext(&alpha, 1, v, u);
                    if arrow_counts[u][v] != expected {
                        return Err(Violation::ArrowCount {
                            tail: u,
                            head: v,
                            count: arrow_counts[u][v],
                            expected,
                        });
                    }
                }
            }
            for (v, &count) in relation_counts.iter().enumerate() {
                let expected = ext(&alpha, 2, v, v);
                if count != expected {
                    return Err(Violation::RelationCount { vertex: v, count, expected });
                }
            }
        }
    }
    Ok(ValidationReport { arrow_counts, relation_counts })
}

/// Relations grouped by the vertex their paths start at.
pub fn relations_by_vertex(p: &Presentation) -> BTreeMap<usize, Vec<String>> {
    let mut m: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for r in &p.relations {
        if let Some((s, _)) = p.endpoints(&r.lhs) {
            m.entry(s).or_default().push(r.to_string());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> HJSeq {
        HJSeq::new(v.to_vec()).unwrap()
    }

    fn texts(p: &Presentation) -> Vec<String> {
        p.relations.iter().map(|r| r.to_string()).collect()
    }

    #[test]
    fn lambda_4_2_3() {
        let p = lambda_presentation(&seq(&[4, 2, 3]));
        assert_eq!((p.r, p.a), (17, 5));
        assert_eq!(
            texts(&p),
            ["a3c3=0", "k4c1c2c3=0", "a2c2=c3a3", "a1c1=0", "k2c1=0", "k3c1=c2a2"]
        );
        let names: Vec<_> = p.quiver.arrows.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["c1", "c2", "c3", "a1", "a2", "a3", "k2", "k3", "k4"]);
        assert_eq!(p.quiver.arrow("k4").unwrap().tail, 3);
        let rep = validate(&p).unwrap();
        assert_eq!(rep.relation_counts, vec![0, 3, 1, 2]);
    }

    #[test]
    fn lambda_small() {
        let p = lambda_presentation(&seq(&[2]));
        assert_eq!(p.quiver.arrows.len(), 2);
        assert_eq!(texts(&p), ["a1c1=0"]);
        let p = lambda_presentation(&seq(&[3]));
        assert_eq!(texts(&p), ["a1c1=0", "k2c1=0"]);
        validate(&p).unwrap();
    }

    #[test]
    fn recon_4_2_3() {
        let p = recon_presentation(&seq(&[4, 2, 3]));
        assert_eq!(
            texts(&p),
            [
                "a3c3=k4a0",
                "k4c1c2c3=c0a0",
                "a2c2=c3a3",
                "a1c1=k2a0a3a2",
                "k2c1=k3a0a3a2",
                "k3c1=c2a2",
                "a0c0=c1c2c3k4",
                "a0k4=c1k3",
                "a0a3a2k3=c1k2",
                "a0a3a2k2=c1a1",
            ]
        );
        assert_eq!(validate(&p).unwrap().relation_counts, vec![4, 3, 1, 2]);
    }

    #[test]
    fn recon_single_curve() {
        for x in 2..8 {
            let p = recon_presentation(&seq(&[x]));
            let rep = validate(&p).unwrap();
            assert_eq!(rep.arrow_counts[0][1], 2);
            assert_eq!(rep.arrow_counts[1][0], x as usize);
        }
        validate(&recon_presentation(&seq(&[2, 2]))).unwrap();
    }

    #[test]
    fn knoerrer_examples() {
        let p = knoerrer_presentation(CoprimePair::new(5, 2).unwrap());
        assert_eq!(texts(&p), ["z1z1=0", "z2z2z2=0", "z1z2=0", "z2z2z1=0"]);
        let p = knoerrer_presentation(CoprimePair::new(6, 5).unwrap());
        assert_eq!(texts(&p), ["z1z1z1z1z1z1=0"]);
    }

    #[test]
    fn riemenschneider_examples() {
        let p = riemenschneider_presentation(CoprimePair::new(7, 6).unwrap());
        assert_eq!(p.embedding_dimension(), 3);
        assert_eq!(p.to_text().lines().last().unwrap(), "z2z0=z1^7");
        let p = riemenschneider_presentation(CoprimePair::new(5, 2).unwrap());
        assert_eq!(p.generators.len(), 4);
        assert_eq!(p.relations.len(), 3);
    }

    #[test]
    fn composability_error() {
        let mut p = lambda_presentation(&seq(&[4, 2, 3]));
        p.relations[0].lhs = vec!["a3".into(), "c1".into()];
        match validate(&p) {
            Err(Violation::NotComposable { relation: 0, name, expected: 2, found: 0, .. }) => {
                assert_eq!(name, "c1")
            }
            other => panic!("unexpected {other:?}"),
        }
        let mut p = lambda_presentation(&seq(&[4, 2, 3]));
        p.relations[2].rhs = Some(vec!["c1".into(), "a1".into()]);
        assert!(matches!(validate(&p), Err(Violation::EndpointMismatch { relation: 2, .. })));
    }

    #[test]
    fn serialization_is_stable() {
        let p = lambda_presentation(&seq(&[4, 2, 3]));
        assert_eq!(p.to_json(), p.clone().to_json());
        assert_eq!(Presentation::from_json(&p.to_json()).unwrap(), p);
        let dot = p.to_dot();
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("->")).count(), 4);
        assert!(dot.contains("3 -> 0 [label=\"k4\"]"));
        let json: serde_json::Value = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(json["algebra"], "lambda");
        assert_eq!(json["vertices"], 4);
        assert_eq!(json["relations"][0]["rhs"], serde_json::Value::Null);
    }

    #[test]
    fn ext_tables() {
        let s = seq(&[4, 2, 3]);
        assert_eq!(lambda_ext(&s, 1, 0, 1), 3);
        assert_eq!(lambda_ext(&s, 1, 0, 2), 0);
        assert_eq!(lambda_ext(&s, 1, 0, 3), 1);
        let e2: Vec<_> = (0..4).map(|i| lambda_ext(&s, 2, i, i)).collect();
        assert_eq!(e2, vec![0, 3, 1, 2]);
        assert_eq!(recon_ext(&s, 2, 0, 0), 4);
    }
}
