//! The endomorphism algebra `End_κ(⊕_{i=0}^n M_i)` and its comparison with Λ.
//!
//! `M_i = κ/J_i` where `J_i` is the left annihilator of `m_i`. A map
//! `M_i → M_j` is determined by the image of `1`, a class `m ∈ M_j` with
//! `J_i·m ⊆ J_j`; such classes have a monomial basis. Maps compose left to
//! right, matching path composition: `(i,j,x)·(j,k,y) = (i,k,x·y)`.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fractions::{dual, lambda_seq, t_map, CoprimePair, HJSeq};
use crate::homology::{BasicAlgebra, Product};
use crate::monomial::{KappaAlgebra, Monomial};
use crate::presentations::{lambda_presentation, Presentation};

const MISSING: u32 = u32::MAX;

/// `Hom_κ(M_source, M_target)` with its monomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSpace {
    pub source: usize,
    pub target: usize,
    /// κ basis indices representing the image of `1`.
    pub basis: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone)]
pub struct EndAlgebra {
    kappa: KappaAlgebra,
    vertices: usize,
    /// `(source, target, κ index)` per basis element, block-major.
    elements: Vec<(usize, usize, usize)>,
    blocks: Vec<Vec<Vec<usize>>>,
    lookup: Vec<u32>,
}

impl EndAlgebra {
    pub fn new(pair: CoprimePair) -> Self {
        Self::from_kappa(KappaAlgebra::new(pair))
    }

    pub fn from_kappa(kappa: KappaAlgebra) -> Self {
        let m = kappa.n() + 1;
        let d = kappa.dim();
        let ann_gens: Vec<Vec<usize>> = (0..m)
            .map(|i| kappa.module_of(i).expect("vertex in range").annihilator_generators)
            .collect();
        let mut elements = Vec::new();
        let mut blocks = vec![vec![Vec::new(); m]; m];
        let mut lookup = vec![MISSING; m * m * d];
        for i in 0..m {
            for j in 0..m {
                for x in 0..d {
                    if kappa.in_annihilator(j, x) {
                        continue;
                    }
                    let hom = ann_gens[i]
                        .iter()
                        .all(|&g| kappa.mul(g, x).is_none_or(|p| kappa.in_annihilator(j, p)));
                    if hom {
                        lookup[(i * m + j) * d + x] = elements.len() as u32;
                        blocks[i][j].push(elements.len());
                        elements.push((i, j, x));
                    }
                }
            }
        }
        EndAlgebra { kappa, vertices: m, elements, blocks, lookup }
    }

    pub fn kappa(&self) -> &KappaAlgebra {
        &self.kappa
    }

    pub fn alpha(&self) -> &HJSeq {
        self.kappa.alpha()
    }

    /// Basis index of `(i, j, x)`, if `x` represents a map `M_i → M_j`.
    pub fn element(&self, i: usize, j: usize, x: usize) -> Option<usize> {
        if i >= self.vertices || j >= self.vertices || x >= self.kappa.dim() {
            return None;
        }
        let v = self.lookup[(i * self.vertices + j) * self.kappa.dim() + x];
        (v != MISSING).then_some(v as usize)
    }

    pub fn describe(&self, b: usize) -> (usize, usize, Monomial) {
        let (i, j, x) = self.elements[b];
        (i, j, self.kappa.monomial(x))
    }

    pub fn hom(&self, i: usize, j: usize) -> HomSpace {
        HomSpace {
            source: i,
            target: j,
            basis: self.blocks[i][j].iter().map(|&b| self.elements[b].2).collect(),
        }
    }

    pub fn block_dims(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|row| row.iter().map(Vec::len).collect()).collect()
    }

    fn compose(&self, x: usize, y: usize) -> std::result::Result<Option<usize>, (usize, usize)> {
        let (i, j, mx) = self.elements[x];
        let (j2, k, my) = self.elements[y];
        if j != j2 {
            return Ok(None);
        }
        match self.kappa.mul(mx, my) {
            None => Ok(None),
            Some(p) if self.kappa.in_annihilator(k, p) => Ok(None),
            Some(p) => self.element(i, k, p).map(Some).ok_or((x, y)),
        }
    }

    /// Every product of composable basis elements is again a basis element or zero.
    pub fn check_closure(&self) -> Result<()> {
        for x in 0..self.elements.len() {
            let j = self.elements[x].1;
            for k in 0..self.vertices {
                for &y in &self.blocks[j][k] {
                    self.compose(x, y).map_err(|(x, y)| {
                        Error::MalformedAlgebra(format!("product of basis elements {x} and {y} is not a homomorphism"))
                    })?;
                }
            }
        }
        Ok(())
    }

    /// The κ-table of the corner `e_0 E e_0` equals the table of κ.
    pub fn corner_matches_kappa(&self) -> bool {
        let d = self.kappa.dim();
        if self.blocks[0][0].len() != d {
            return false;
        }
        for x in 0..d {
            for y in 0..d {
                let (Some(ex), Some(ey)) = (self.element(0, 0, x), self.element(0, 0, y)) else {
                    return false;
                };
                let want = self.kappa.mul(x, y).and_then(|p| self.element(0, 0, p));
                if self.compose(ex, ey) != Ok(want) {
                    return false;
                }
            }
        }
        true
    }

    /// Compact JSON description: fraction data, block dimensions and basis.
    pub fn to_json(&self) -> serde_json::Value {
        let pair = self.kappa.pair();
        let basis: Vec<_> = self
            .elements
            .iter()
            .map(|&(i, j, x)| serde_json::json!([i, j, self.kappa.monomial(x).to_string()]))
            .collect();
        serde_json::json!({
            "r": pair.map_or(1, |p| p.r()),
            "a": pair.map_or(0, |p| p.a()),
            "alpha": self.alpha(),
            "beta": self.kappa.beta(),
            "dim": self.elements.len(),
            "blocks": self.block_dims(),
            "basis": basis,
        })
    }
}

impl BasicAlgebra for EndAlgebra {
    fn dim(&self) -> usize {
        self.elements.len()
    }

    fn num_vertices(&self) -> usize {
        self.vertices
    }

    fn vertex_pair(&self, b: usize) -> (usize, usize) {
        let (i, j, _) = self.elements[b];
        (i, j)
    }

    fn basis_between(&self, s: usize, t: usize) -> &[usize] {
        &self.blocks[s][t]
    }

    fn idempotent(&self, v: usize) -> usize {
        self.element(v, v, self.kappa.one()).expect("identity map")
    }

    fn product(&self, x: usize, y: usize) -> Product<'_> {
        match self.compose(x, y) {
            Ok(Some(p)) => Product::Basis(p),
            _ => Product::Zero,
        }
    }
}

/// Expected `dim Hom(M_i, M_j)`: `λ_j` for `j ≥ i`, and below the diagonal
/// `Σ_{k>j}(α_k − 2)·d(i,k) + d(i,j+1)`.
pub fn expected_block_dims(alpha: &HJSeq) -> Result<Vec<Vec<usize>>> {
    let n = alpha.len();
    let lambda = lambda_seq(alpha)?;
    let mut d = vec![vec![0usize; n + 1]; n + 1];
    for (i, row) in d.iter_mut().enumerate() {
        for j in (0..=n).rev() {
            row[j] = if j >= i {
                lambda.get(j) as usize
            } else {
                (j + 1..=n).map(|k| (alpha.get(k) as usize - 2) * row[k]).sum::<usize>() + row[j + 1]
            };
        }
    }
    Ok(d)
}

/// Images of the arrows of a presentation, one basis element each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub images: BTreeMap<String, usize>,
}

impl AlgebraMorphism {
    /// Validates that each image `(i, j, m)` is a basis element sitting in the
    /// block of its arrow.
    pub fn from_images(pres: &Presentation, end: &EndAlgebra, images: &[(String, (usize, usize, usize))]) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (name, (i, j, x)) in images {
            let arrow = pres
                .quiver
                .arrow(name)
                .ok_or_else(|| Error::InvalidParameters(format!("unknown arrow {name}")))?;
            if (*i, *j) != (arrow.tail, arrow.head) {
                return Err(Error::BlockMismatch {
                    arrow: name.clone(),
                    got_src: *i,
                    got_dst: *j,
                    want_src: arrow.tail,
                    want_dst: arrow.head,
                });
            }
            let b = end.element(*i, *j, *x).ok_or_else(|| {
                Error::MalformedAlgebra(format!(
                    "image {} of {name} is not a map M_{i} -> M_{j}",
                    end.kappa.monomial(*x)
                ))
            })?;
            out.insert(name.clone(), b);
        }
        for arrow in &pres.quiver.arrows {
            if !out.contains_key(&arrow.name) {
                return Err(Error::InvalidParameters(format!("no image for arrow {}", arrow.name)));
            }
        }
        Ok(AlgebraMorphism { images: out })
    }

    /// Image of a path, `None` when it vanishes.
    pub fn eval(&self, end: &EndAlgebra, word: &[String]) -> Option<usize> {
        let mut cur = *self.images.get(word.first()?)?;
        for name in &word[1..] {
            let next = *self.images.get(name)?;
            cur = end.compose(cur, next).ok()??;
        }
        Some(cur)
    }
}

/// Raw images `c_i ↦ (i−1,i,1)`, `a_i ↦ (i,i−1,z_{v_{i−1}})`, `k_j ↦ (t(j),0,z_j)`.
pub fn phi_images(alpha: &HJSeq, kappa: &KappaAlgebra) -> Vec<(String, (usize, usize, usize))> {
    let n = alpha.len();
    let one = kappa.one();
    let t = t_map(alpha);
    let mut out = Vec::new();
    for i in 1..=n {
        out.push((format!("c{i}"), (i - 1, i, one)));
    }
    for i in 1..=n {
        out.push((format!("a{i}"), (i, i - 1, kappa.generator_index(alpha.v(i - 1)))));
    }
    for j in 2..=kappa.l() {
        out.push((format!("k{j}"), (t[j - 1], 0, kappa.generator_index(j))));
    }
    out
}

/// The map from Λ to the endomorphism algebra.
pub fn phi(pres: &Presentation, end: &EndAlgebra) -> Result<AlgebraMorphism> {
    let alpha = HJSeq::new(pres.alpha.clone())?;
    AlgebraMorphism::from_images(pres, end, &phi_images(&alpha, end.kappa()))
}

/// Outcome of checking that φ is an isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub dim: usize,
    /// Relations whose two sides have different images.
    pub failed_relations: Vec<String>,
    /// Dimension of the subalgebra generated by the idempotents and arrow images.
    pub generated_dim: usize,
    pub block_dims: Vec<Vec<usize>>,
    pub expected_block_dims: Vec<Vec<usize>>,
}

impl IsoReport {
    pub fn relations_hold(&self) -> bool {
        self.failed_relations.is_empty()
    }

    pub fn surjective(&self) -> bool {
        self.generated_dim == self.dim
    }

    pub fn dims_match(&self) -> bool {
        self.block_dims == self.expected_block_dims
    }

    pub fn ok(&self) -> bool {
        self.relations_hold() && self.surjective() && self.dims_match()
    }
}

pub fn verify_with(pres: &Presentation, end: &EndAlgebra, morphism: &AlgebraMorphism) -> Result<IsoReport> {
    let failed_relations = pres
        .relations
        .iter()
        .filter(|rel| {
            let lhs = morphism.eval(end, &rel.lhs);
            let rhs = rel.rhs.as_ref().and_then(|w| morphism.eval(end, w));
            lhs != rhs
        })
        .map(|rel| rel.to_string())
        .collect();

    let mut seen = vec![false; end.dim()];
    let mut queue: VecDeque<usize> = (0..end.num_vertices()).map(|v| end.idempotent(v)).collect();
    for &b in &queue {
        seen[b] = true;
    }
    let images: Vec<usize> = morphism.images.values().copied().collect();
    while let Some(x) = queue.pop_front() {
        for &y in &images {
            if let Ok(Some(p)) = end.compose(x, y) {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
    }

    let alpha = HJSeq::new(pres.alpha.clone())?;
    Ok(IsoReport {
        dim: end.dim(),
        failed_relations,
        generated_dim: seen.iter().filter(|&&s| s).count(),
        block_dims: end.block_dims(),
        expected_block_dims: expected_block_dims(&alpha)?,
    })
}

/// Builds Λ and the endomorphism algebra for `pair` and checks φ.
pub fn verify_iso(pair: CoprimePair) -> Result<IsoReport> {
    let end = EndAlgebra::new(pair);
    let pres = lambda_presentation(end.alpha());
    let morphism = phi(&pres, &end)?;
    verify_with(&pres, &end, &morphism)
}

/// Dimensions attached to the idempotent `e = Σ_{i ≥ j−1} e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Restriction {
    pub j: usize,
    pub corner_dim: usize,
    /// Dimension of the endomorphism algebra for `[α_j, …, α_n]`.
    pub tail_dim: usize,
    pub quotient_dim: usize,
    /// Dimension of the endomorphism algebra for `[α_1, …, α_{j−2}]` (when `j ≥ 2`).
    pub head_dim: Option<usize>,
}

impl Restriction {
    pub fn ok(&self) -> bool {
        self.corner_dim == self.tail_dim && self.head_dim.is_none_or(|h| h == self.quotient_dim)
    }
}

fn end_dim_of(alpha: &HJSeq) -> usize {
    EndAlgebra::from_kappa(KappaAlgebra::from_beta(dual(alpha))).dim()
}

/// Compares `eEe` and `E/EeE` with the algebras of the two subchains, for
/// `1 ≤ j ≤ n`.
pub fn restriction(end: &EndAlgebra, j: usize) -> Result<Restriction> {
    let n = end.num_vertices() - 1;
    if j == 0 || j > n {
        return Err(Error::VertexOutOfRange { vertex: j, max: n });
    }
    let keep = j - 1..=n;
    let corner_dim = keep.clone().flat_map(|s| keep.clone().map(move |t| (s, t))).map(|(s, t)| end.blocks[s][t].len()).sum();
    let alpha = end.alpha();
    let tail_dim = end_dim_of(&alpha.slice(j - 1..n));

    let mut ideal = vec![false; end.dim()];
    for u in keep {
        for s in 0..=n {
            for &x in &end.blocks[s][u] {
                for t in 0..=n {
                    for &y in &end.blocks[u][t] {
                        if let Ok(Some(p)) = end.compose(x, y) {
                            ideal[p] = true;
                        }
                    }
                }
            }
        }
    }
    let quotient_dim = ideal.iter().filter(|&&b| !b).count();
    let head_dim = (j >= 2).then(|| end_dim_of(&alpha.slice(0..j - 2)));
    Ok(Restriction { j, corner_dim, tail_dim, quotient_dim, head_dim })
}
