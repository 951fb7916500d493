//! Hirzebruch–Jung (minus-sign) continued fractions.
//!
//! A coprime pair `0 < a < r` expands as
//! `r/a = α₁ − 1/(α₂ − 1/(… − 1/αₙ))` with every `αᵢ ≥ 2`. The dual expansion
//! of `r/(r−a)` is read off the point diagram, and the λ-sequence records the
//! partial numerators `λ_{i−1}/λ_i = [α_i, …, α_n]`.
//!
//! All arithmetic is checked 64-bit. Every intermediate value is bounded by `r`,
//! so inputs with `r ≤ 2^31` never overflow; larger inputs either work or return
//! [`Error::Overflow`].

use std::fmt;
use std::ops::Range;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A pair `(r, a)` with `0 < a < r` and `gcd(r, a) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoprimePair {
    r: u64,
    a: u64,
}

impl CoprimePair {
    pub fn new(r: u64, a: u64) -> Result<Self> {
        if a == 0 || a >= r {
            return Err(Error::OutOfRange { r, a });
        }
        let gcd = r.gcd(&a);
        if gcd != 1 {
            return Err(Error::NotCoprime { r, a, gcd });
        }
        Ok(Self { r, a })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    /// The pair `(r, r − a)`, whose expansion is the dual of this one.
    pub fn dual(&self) -> Self {
        Self { r: self.r, a: self.r - self.a }
    }

    /// The pair `(r, a⁻¹ mod r)`, i.e. the same chain of curves read in the
    /// opposite direction.
    pub fn reversed(&self) -> Self {
        let ext = (self.a as i128).extended_gcd(&(self.r as i128));
        let inv = ext.x.rem_euclid(self.r as i128) as u64;
        Self { r: self.r, a: inv }
    }

    /// All coprime pairs with `r` in the given inclusive range, ordered by `(r, a)`.
    pub fn enumerate(r_min: u64, r_max: u64) -> impl Iterator<Item = CoprimePair> {
        (r_min.max(2)..=r_max).flat_map(|r| {
            (1..r).filter_map(move |a| CoprimePair::new(r, a).ok())
        })
    }
}

impl fmt::Display for CoprimePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.a)
    }
}

/// A Hirzebruch–Jung sequence `[α₁, …, αₙ]`, every entry at least 2.
///
/// The empty sequence is allowed; it stands for the smooth case (no curves).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct HJSeq(Vec<u64>);

impl HJSeq {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if let Some((index, &value)) = entries.iter().enumerate().find(|(_, &v)| v < 2) {
            return Err(Error::EntryTooSmall { index, value });
        }
        Ok(Self(entries))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry `α_i` with 1-based `i`.
    pub fn get(&self, i: usize) -> u64 {
        self.0[i - 1]
    }

    /// Zero-based half-open slice as a new sequence.
    pub fn slice(&self, range: Range<usize>) -> HJSeq {
        HJSeq(self.0[range].to_vec())
    }

    pub fn reversed(&self) -> HJSeq {
        HJSeq(self.0.iter().rev().copied().collect())
    }

    /// `v_i = Σ_{k≤i}(α_k − 2) + 1`, with `v_0 = 1`.
    pub fn v(&self, i: usize) -> usize {
        self.0[..i].iter().map(|&x| (x - 2) as usize).sum::<usize>() + 1
    }

    /// `u_i = Σ_{k<i}(α_k − 2)` for `1 ≤ i ≤ n`.
    pub fn u(&self, i: usize) -> usize {
        self.v(i - 1) - 1
    }

    /// Tail vertex of the arrow `k_j` (`1 ≤ j ≤ v_n`): the unique `i` with
    /// `u_i + 1 < j ≤ v_i`, and `t(1) = 1` because `k_1` is `a_1`.
    pub fn k_tail(&self, j: usize) -> usize {
        if j == 1 {
            return 1;
        }
        (1..=self.len())
            .find(|&i| self.u(i) + 1 < j && j <= self.v(i))
            .expect("k index out of range")
    }
}

impl TryFrom<Vec<u64>> for HJSeq {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        HJSeq::new(v)
    }
}

impl From<HJSeq> for Vec<u64> {
    fn from(s: HJSeq) -> Self {
        s.0
    }
}

impl fmt::Display for HJSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Value of a (possibly empty) continued fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Evaluated {
    /// The empty chain: no curves, a smooth point.
    Smooth,
    Pair(CoprimePair),
}

impl Evaluated {
    pub fn pair(self) -> Option<CoprimePair> {
        match self {
            Evaluated::Smooth => None,
            Evaluated::Pair(p) => Some(p),
        }
    }
}

impl fmt::Display for Evaluated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evaluated::Smooth => write!(f, "smooth"),
            Evaluated::Pair(p) => write!(f, "{}/{}", p.r, p.a),
        }
    }
}

/// A sequence together with its Riemenschneider dual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualData {
    pub alpha: HJSeq,
    pub beta: HJSeq,
    pub n: usize,
    pub l: usize,
}

impl DualData {
    pub fn new(alpha: HJSeq) -> Self {
        let beta = dual(&alpha);
        Self { n: alpha.len(), l: beta.len(), alpha, beta }
    }

    pub fn of_pair(pair: CoprimePair) -> Self {
        Self::new(expand(pair))
    }
}

/// One row of a point diagram: 1-based starting column and number of points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRow {
    pub start: usize,
    pub count: usize,
}

/// The staircase point diagram of a sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDiagram {
    pub rows: Vec<PointRow>,
}

impl PointDiagram {
    pub fn width(&self) -> usize {
        self.rows.last().map_or(0, |r| r.start + r.count - 1)
    }

    /// Number of points in each column, left to right.
    pub fn column_counts(&self) -> Vec<usize> {
        let mut cols = vec![0; self.width()];
        for row in &self.rows {
            for c in row.start..row.start + row.count {
                cols[c - 1] += 1;
            }
        }
        cols
    }

    pub fn render_ascii(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let pad = "  ".repeat(row.start - 1);
            let pts = vec!["*"; row.count].join(" ");
            out.push_str(&pad);
            out.push_str(&pts);
            out.push('\n');
        }
        out
    }
}

/// Λ-ranks `λ_0, …, λ_n` (the sentinel `λ_{n+1} = 0` is implicit).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaSeq {
    pub values: Vec<u64>,
}

impl LambdaSeq {
    /// `λ_i`, with `λ_{n+1} = 0`.
    pub fn get(&self, i: usize) -> u64 {
        self.values.get(i).copied().unwrap_or(0)
    }
}

/// Hirzebruch–Jung expansion of `r/a`.
pub fn expand(pair: CoprimePair) -> HJSeq {
    let (mut r, mut a) = (pair.r, pair.a);
    let mut out = Vec::new();
    while a > 0 {
        let alpha = r.div_ceil(a);
        // alpha * a − r < a, so no overflow beyond r + a.
        let next = alpha * a - r;
        out.push(alpha);
        r = a;
        a = next;
    }
    HJSeq(out)
}

/// Exact evaluation of the nested fraction.
pub fn evaluate(seq: &HJSeq) -> Result<Evaluated> {
    // (num, den) of [α_i, …, α_n]; the empty tail is 1/0.
    let (mut num, mut den) = (1u64, 0u64);
    for &alpha in seq.0.iter().rev() {
        let next = alpha
            .checked_mul(num)
            .and_then(|x| x.checked_sub(den))
            .ok_or(Error::Overflow("evaluate"))?;
        den = num;
        num = next;
    }
    if seq.is_empty() {
        return Ok(Evaluated::Smooth);
    }
    Ok(Evaluated::Pair(CoprimePair::new(num, den)?))
}

/// Riemenschneider dual: column counts of the point diagram, plus one.
pub fn dual(seq: &HJSeq) -> HJSeq {
    if seq.is_empty() {
        return HJSeq::empty();
    }
    HJSeq(point_diagram(seq).column_counts().into_iter().map(|c| c as u64 + 1).collect())
}

/// Row `i` has `α_i − 1` points and starts under the last point of row `i − 1`.
pub fn point_diagram(seq: &HJSeq) -> PointDiagram {
    let mut rows = Vec::with_capacity(seq.len());
    let mut start = 1;
    for &alpha in &seq.0 {
        let count = (alpha - 1) as usize;
        rows.push(PointRow { start, count });
        start += count - 1;
    }
    PointDiagram { rows }
}

/// λ-sequence: `λ_n = 1`, `λ_{i−1} = α_i λ_i − λ_{i+1}`.
pub fn lambda_seq(seq: &HJSeq) -> Result<LambdaSeq> {
    let n = seq.len();
    let mut values = vec![0u64; n + 2];
    values[n] = 1;
    for i in (1..=n).rev() {
        values[i - 1] = seq
            .get(i)
            .checked_mul(values[i])
            .and_then(|x| x.checked_sub(values[i + 1]))
            .ok_or(Error::Overflow("lambda_seq"))?;
    }
    values.truncate(n + 1);
    Ok(LambdaSeq { values })
}

/// `t(j) = Σ_{i<j}(β_i − 2) + 1` for `j = 1..l`, followed by the convention
/// value `t(l+1) = n`.
pub fn t_map(seq: &HJSeq) -> Vec<usize> {
    let beta = dual(seq);
    let mut out = Vec::with_capacity(beta.len() + 1);
    let mut acc = 1usize;
    for &b in beta.entries() {
        out.push(acc);
        acc += (b - 2) as usize;
    }
    out.push(seq.len());
    out
}

/// Evaluation of a contiguous (zero-based, half-open) piece of the sequence.
pub fn subfraction(seq: &HJSeq, range: Range<usize>) -> Result<Evaluated> {
    evaluate(&seq.slice(range))
}
