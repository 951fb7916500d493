//! Chunk decompositions of partial resolutions and K₀ arithmetic of
//! singularity categories.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fractions::{evaluate, CoprimePair, Evaluated, HJSeq};

/// The vertices kept by an idempotent `e = e_0 + e_{i_1} + … + e_{i_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KeptSet(Vec<usize>);

impl KeptSet {
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.first() != Some(&0) {
            return Err(Error::KeptSetMissingZero);
        }
        Ok(KeptSet(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl std::str::FromStr for KeptSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let vs = parse_list(s)?;
        KeptSet::new(vs)
    }
}

/// Comma-separated non-negative integers.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad list entry {t:?}"))))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chunk {
    pub seq: HJSeq,
    pub value: Evaluated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkDecomposition {
    pub alpha: HJSeq,
    pub kept: KeptSet,
    /// One chunk per gap between consecutive kept vertices, including empty ones.
    pub chunks: Vec<Chunk>,
}

impl ChunkDecomposition {
    /// Pairs of the nonempty chunks, sorted.
    pub fn fractions(&self) -> Vec<CoprimePair> {
        let mut v: Vec<CoprimePair> = self.chunks.iter().filter_map(|c| c.value.pair()).collect();
        v.sort();
        v
    }

    /// The chunks laid end to end: `α` with the kept entries removed.
    pub fn concatenation(&self) -> Vec<u64> {
        self.chunks.iter().flat_map(|c| c.seq.entries().iter().copied()).collect()
    }
}

/// Chunk `j` is `[α_{i_j+1}, …, α_{i_{j+1}−1}]` with `i_0 = 0` and `i_{k+1} = n+1`.
pub fn decompose(alpha: &HJSeq, kept: &KeptSet) -> Result<ChunkDecomposition> {
    let n = alpha.len();
    if let Some(&v) = kept.vertices().iter().find(|&&v| v > n) {
        return Err(Error::VertexOutOfRange { vertex: v, max: n });
    }
    let mut bounds = kept.vertices().to_vec();
    bounds.push(n + 1);
    let chunks = bounds
        .windows(2)
        .map(|w| {
            let seq = alpha.slice(w[0]..w[1] - 1);
            let value = evaluate(&seq)?;
            Ok(Chunk { seq, value })
        })
        .collect::<Result<_>>()?;
    Ok(ChunkDecomposition { alpha: alpha.clone(), kept: kept.clone(), chunks })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub left: ChunkDecomposition,
    pub right: ChunkDecomposition,
    /// Nonempty chunk fractions agree as multisets.
    pub chunk_verdict: bool,
    /// The removed-entry sequences agree.
    pub concatenation_verdict: bool,
    pub disagreement: bool,
}

pub fn compare(left: (&HJSeq, &KeptSet), right: (&HJSeq, &KeptSet)) -> Result<EquivalenceVerdict> {
    let l = decompose(left.0, left.1)?;
    let r = decompose(right.0, right.1)?;
    let chunk_verdict = l.fractions() == r.fractions();
    let concatenation_verdict = l.concatenation() == r.concatenation();
    Ok(EquivalenceVerdict {
        left: l,
        right: r,
        chunk_verdict,
        concatenation_verdict,
        disagreement: chunk_verdict != concatenation_verdict,
    })
}

/// Whether the two singularity categories split into the same cyclic pieces.
pub fn singular_equivalent(left: (&HJSeq, &KeptSet), right: (&HJSeq, &KeptSet)) -> Result<bool> {
    Ok(compare(left, right)?.chunk_verdict)
}

/// `(eΛe, Λ/ΛeΛ)` sequences for `e = Σ_{i ≥ j−1} e_i`: `[α_j, …, α_n]` and `[α_1, …, α_{j−2}]`.
pub fn corner_restriction(alpha: &HJSeq, j: usize) -> Result<(HJSeq, HJSeq)> {
    let n = alpha.len();
    if j == 0 || j > n + 1 {
        return Err(Error::InvalidParameters(format!("restriction index {j} outside 1..={}", n + 1)));
    }
    Ok((alpha.slice(j - 1..n), alpha.slice(0..j.saturating_sub(2))))
}

/// A finite abelian group by invariant factors `d_1 | d_2 | …`, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(d: u64) -> Self {
        Self::from_orders(&[d])
    }

    /// Normal form of `⊕ Z/d_i`, merging pairs by `(gcd, lcm)`.
    pub fn from_orders(orders: &[u64]) -> Self {
        let mut f: Vec<u64> = orders.iter().copied().filter(|&d| d != 1).collect();
        assert!(!f.contains(&0), "only finite groups are represented");
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                let (g, l) = (f[i].gcd(&f[j]), f[i].lcm(&f[j]));
                f[i] = g;
                f[j] = l;
            }
        }
        f.retain(|&d| d != 1);
        FiniteAbelianGroup { factors: f }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A class group, or only its order when the structure is not known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassGroup {
    Known(FiniteAbelianGroup),
    OrderOnly(u64),
}

impl ClassGroup {
    pub fn order(&self) -> u64 {
        match self {
            ClassGroup::Known(g) => g.order(),
            ClassGroup::OrderOnly(o) => *o,
        }
    }
}

impl fmt::Display for ClassGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassGroup::Known(g) => write!(f, "{g}"),
            ClassGroup::OrderOnly(o) => write!(f, "order {o}, structure unknown"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Singularity {
    Cyclic { r: u64, a: u64 },
    GorensteinD { n: u64 },
    GorensteinE { n: u64 },
    DihedralD { n: u64, m: u64 },
}

/// `K_0(D_sg(R)) ≅ Cl(R)` for the listed quotient surface singularities.
pub fn k0_singularity(kind: Singularity) -> Result<ClassGroup> {
    match kind {
        Singularity::Cyclic { r, a } => {
            let p = CoprimePair::new(r, a)?;
            Ok(ClassGroup::Known(FiniteAbelianGroup::cyclic(p.r())))
        }
        Singularity::GorensteinD { n } if n >= 4 => Ok(ClassGroup::OrderOnly(4)),
        Singularity::GorensteinE { n } if (6..=8).contains(&n) => {
            Ok(ClassGroup::Known(FiniteAbelianGroup::cyclic(9 - n)))
        }
        Singularity::DihedralD { n, m } if 1 < 2 * m && 2 * m < n && n.gcd(&m) == 1 => {
            Ok(ClassGroup::Known(FiniteAbelianGroup::from_orders(&[2, 2 * (n - 2 * m)])))
        }
        other => Err(Error::InvalidParameters(format!("unsupported singularity {other:?}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Obstruction {
    /// No local finite-dimensional algebra has this K₀.
    Obstructed,
    /// K₀ is `Z/d`, consistent with a local algebra of dimension `d`.
    Compatible { dim: u64 },
    Indeterminate { order: u64 },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Obstructed => {
                write!(f, "obstructed: no local finite dimensional algebra can be singular equivalent")
            }
            Obstruction::Compatible { dim } => write!(f, "K-theory compatible with dim {dim}"),
            Obstruction::Indeterminate { order } => write!(f, "indeterminate: order {order}, cyclicity unknown"),
        }
    }
}

/// A local finite-dimensional `A` has `K_0(D_sg(A)) ≅ Z/(dim A)`.
pub fn local_fd_obstruction(group: &ClassGroup) -> Obstruction {
    match group {
        ClassGroup::Known(g) if g.is_cyclic() => Obstruction::Compatible { dim: g.order() },
        ClassGroup::Known(_) => Obstruction::Obstructed,
        ClassGroup::OrderOnly(o) => Obstruction::Indeterminate { order: *o },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> HJSeq {
        HJSeq::new(v.to_vec()).unwrap()
    }

    fn kept(v: &[usize]) -> KeptSet {
        KeptSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&seq(&[4, 2, 3]), &kept(&[0, 2])).unwrap();
        assert_eq!(d.fractions(), vec![CoprimePair::new(3, 1).unwrap(), CoprimePair::new(4, 1).unwrap()]);
        assert_eq!(d.concatenation(), vec![4, 3]);

        let d = decompose(&seq(&[2, 2]), &kept(&[0, 1])).unwrap();
        assert_eq!(d.chunks.len(), 2);
        assert!(d.chunks[0].seq.is_empty());
        assert_eq!(d.fractions(), vec![CoprimePair::new(2, 1).unwrap()]);

        let d = decompose(&seq(&[4, 2, 3]), &kept(&[0, 1, 2, 3])).unwrap();
        assert!(d.chunks.iter().all(|c| c.value == Evaluated::Smooth));
        assert!(d.fractions().is_empty());
    }

    #[test]
    fn kept_set_needs_zero() {
        assert_eq!(KeptSet::new(vec![1, 2]), Err(Error::KeptSetMissingZero));
        assert!(decompose(&seq(&[2]), &kept(&[0, 2])).is_err());
        assert_eq!("0, 2".parse::<KeptSet>().unwrap(), kept(&[0, 2]));
    }

    #[test]
    fn worked_examples() {
        let (a22, a2) = (seq(&[2, 2]), seq(&[2]));
        assert!(singular_equivalent((&a22, &kept(&[0, 1])), (&a2, &kept(&[0]))).unwrap());
        assert!(singular_equivalent((&a22, &kept(&[0, 2])), (&a2, &kept(&[0]))).unwrap());
        let a = seq(&[4, 2, 3]);
        assert!(!singular_equivalent((&a, &kept(&[0])), (&a, &kept(&[0, 1, 2, 3]))).unwrap());
        assert!(!singular_equivalent((&a, &kept(&[0])), (&a2, &kept(&[0]))).unwrap());
    }

    #[test]
    fn criteria_can_disagree() {
        let v = compare((&seq(&[2, 3]), &kept(&[0])), (&seq(&[2, 3, 2]), &kept(&[0, 3]))).unwrap();
        assert!(v.chunk_verdict && v.concatenation_verdict && !v.disagreement);
        let v = compare((&seq(&[2, 3]), &kept(&[0])), (&seq(&[2, 2, 3]), &kept(&[0, 2]))).unwrap();
        assert!(!v.chunk_verdict && v.concatenation_verdict && v.disagreement);
    }

    #[test]
    fn restrictions() {
        let a = seq(&[4, 2, 3]);
        assert_eq!(corner_restriction(&a, 2).unwrap(), (seq(&[2, 3]), HJSeq::empty()));
        assert_eq!(corner_restriction(&a, 1).unwrap(), (a.clone(), HJSeq::empty()));
        assert_eq!(corner_restriction(&a, 4).unwrap(), (HJSeq::empty(), seq(&[4, 2])));
        assert!(corner_restriction(&a, 5).is_err());
    }

    #[test]
    fn class_groups() {
        let g = k0_singularity(Singularity::Cyclic { r: 17, a: 5 }).unwrap();
        assert_eq!(g, ClassGroup::Known(FiniteAbelianGroup::cyclic(17)));
        assert_eq!(local_fd_obstruction(&g), Obstruction::Compatible { dim: 17 });
        assert_eq!(k0_singularity(Singularity::GorensteinE { n: 6 }).unwrap().order(), 3);
        assert_eq!(k0_singularity(Singularity::GorensteinE { n: 8 }).unwrap(), ClassGroup::Known(FiniteAbelianGroup::trivial()));
        let d = k0_singularity(Singularity::DihedralD { n: 7, m: 2 }).unwrap();
        assert_eq!(d, ClassGroup::Known(FiniteAbelianGroup::from_orders(&[2, 6])));
        assert_eq!(d.to_string(), "Z/2 x Z/6");
        assert_eq!(local_fd_obstruction(&d), Obstruction::Obstructed);
        let gd = k0_singularity(Singularity::GorensteinD { n: 5 }).unwrap();
        assert_eq!(local_fd_obstruction(&gd), Obstruction::Indeterminate { order: 4 });
        assert_eq!(local_fd_obstruction(&ClassGroup::Known(FiniteAbelianGroup::trivial())), Obstruction::Compatible { dim: 1 });
        assert!(k0_singularity(Singularity::DihedralD { n: 8, m: 2 }).is_err());
        assert!(k0_singularity(Singularity::GorensteinE { n: 5 }).is_err());
    }

    #[test]
    fn invariant_factor_normal_form() {
        assert_eq!(FiniteAbelianGroup::from_orders(&[6, 4]).invariant_factors(), &[2, 12]);
        assert_eq!(FiniteAbelianGroup::from_orders(&[3, 5]).invariant_factors(), &[15]);
        assert!(FiniteAbelianGroup::from_orders(&[1]).is_cyclic());
    }
}
