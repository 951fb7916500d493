//! Homological algebra for basic finite-dimensional algebras over ℚ.
//!
//! An algebra is given by a basis adapted to a complete set of primitive
//! orthogonal idempotents `e_0, …, e_m`: every basis element `b` satisfies
//! `e_s b e_t = b` for one pair `(s, t)`, and the idempotents themselves are
//! basis elements. Left modules are handled as subspaces of direct sums of
//! indecomposable projectives `A e_t`, split by left vertex.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel, q, Accumulator, Echelon, SparseVec, Q};
use crate::monomial::KappaAlgebra;

/// The product of two basis elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Product<'a> {
    Zero,
    Basis(usize),
    Combination(&'a [(usize, Q)]),
}

impl Product<'_> {
    fn for_each(self, mut f: impl FnMut(usize, Q) -> Result<()>) -> Result<()> {
        match self {
            Product::Zero => Ok(()),
            Product::Basis(b) => f(b, q(1)),
            Product::Combination(c) => c.iter().try_for_each(|&(b, x)| f(b, x)),
        }
    }
}

/// A basic algebra with an idempotent-adapted basis.
pub trait BasicAlgebra: Sync {
    fn dim(&self) -> usize;
    fn num_vertices(&self) -> usize;
    /// `(s, t)` with `e_s b e_t = b`.
    fn vertex_pair(&self, b: usize) -> (usize, usize);
    fn basis_between(&self, s: usize, t: usize) -> &[usize];
    /// Basis index of `e_v`.
    fn idempotent(&self, v: usize) -> usize;
    fn product(&self, x: usize, y: usize) -> Product<'_>;
}

/// Product of two elements given as sparse combinations of basis elements.
pub fn multiply<A: BasicAlgebra + ?Sized>(alg: &A, x: &[(usize, Q)], y: &[(usize, Q)]) -> Result<SparseVec> {
    let mut acc = Accumulator::new();
    for &(bx, cx) in x {
        for &(by, cy) in y {
            alg.product(bx, by).for_each(|b, c| acc.add(b, cx * cy * c))?;
        }
    }
    Ok(acc.finish())
}

/// An algebra given by an explicit multiplication table.
#[derive(Debug, Clone)]
pub struct FDAlgebra {
    vertices: usize,
    pairs: Vec<(usize, usize)>,
    blocks: Vec<Vec<Vec<usize>>>,
    idempotents: Vec<usize>,
    table: Vec<SparseVec>,
}

const FULL_ASSOCIATIVITY_LIMIT: usize = 300;
const SAMPLED_TRIPLES: usize = 200_000;

impl FDAlgebra {
    /// Builds and validates: block compatibility of every product, the
    /// idempotents acting as block projections, and associativity (every
    /// triple up to 300 basis elements, a deterministic sample beyond).
    pub fn new(
        vertices: usize,
        pairs: Vec<(usize, usize)>,
        idempotents: Vec<usize>,
        table: Vec<SparseVec>,
    ) -> Result<Self> {
        let n = pairs.len();
        if table.len() != n * n {
            return Err(Error::MalformedAlgebra(format!("table has {} entries, expected {}", table.len(), n * n)));
        }
        if idempotents.len() != vertices {
            return Err(Error::MalformedAlgebra("one idempotent per vertex required".into()));
        }
        let mut blocks = vec![vec![Vec::new(); vertices]; vertices];
        for (b, &(s, t)) in pairs.iter().enumerate() {
            if s >= vertices || t >= vertices {
                return Err(Error::VertexOutOfRange { vertex: s.max(t), max: vertices - 1 });
            }
            blocks[s][t].push(b);
        }
        let alg = FDAlgebra { vertices, pairs, blocks, idempotents, table };
        alg.check_structure()?;
        alg.check_associativity()?;
        Ok(alg)
    }

    /// `k` orthogonal idempotents and nothing else.
    pub fn semisimple(k: usize) -> Self {
        let pairs = (0..k).map(|v| (v, v)).collect();
        let mut table = vec![Vec::new(); k * k];
        for v in 0..k {
            table[v * k + v] = vec![(v, q(1))];
        }
        FDAlgebra::new(k, pairs, (0..k).collect(), table).expect("semisimple table is valid")
    }

    /// κ as a one-vertex algebra on its monomial basis.
    pub fn from_kappa(kappa: &KappaAlgebra) -> Result<Self> {
        let d = kappa.dim();
        let mut table = vec![Vec::new(); d * d];
        for x in 0..d {
            for y in 0..d {
                if let Some(p) = kappa.mul(x, y) {
                    table[x * d + y] = vec![(p, q(1))];
                }
            }
        }
        FDAlgebra::new(1, vec![(0, 0); d], vec![kappa.one()], table)
    }

    /// The corner `eAe` for `e = Σ_{v ∈ keep} e_v`, vertices renumbered in order.
    pub fn corner<A: BasicAlgebra>(alg: &A, keep: &[usize]) -> Result<Self> {
        let mut basis = Vec::new();
        let mut pairs = Vec::new();
        for (si, &s) in keep.iter().enumerate() {
            for (ti, &t) in keep.iter().enumerate() {
                for &b in alg.basis_between(s, t) {
                    basis.push(b);
                    pairs.push((si, ti));
                }
            }
        }
        let mut local = vec![usize::MAX; alg.dim()];
        for (i, &b) in basis.iter().enumerate() {
            local[b] = i;
        }
        let d = basis.len();
        let mut table = vec![Vec::new(); d * d];
        for x in 0..d {
            for y in 0..d {
                let mut acc = Accumulator::new();
                alg.product(basis[x], basis[y]).for_each(|b, c| acc.add(local[b], c))?;
                table[x * d + y] = acc.finish();
            }
        }
        let idempotents = keep.iter().map(|&v| local[alg.idempotent(v)]).collect();
        FDAlgebra::new(keep.len(), pairs, idempotents, table)
    }

    pub fn table_entry(&self, x: usize, y: usize) -> &SparseVec {
        &self.table[x * self.pairs.len() + y]
    }

    fn check_structure(&self) -> Result<()> {
        let n = self.pairs.len();
        for (v, &e) in self.idempotents.iter().enumerate() {
            if self.pairs[e] != (v, v) {
                return Err(Error::MalformedAlgebra(format!("idempotent {v} is not in block ({v},{v})")));
            }
        }
        for x in 0..n {
            let (s, t) = self.pairs[x];
            for v in 0..self.vertices {
                let e = self.idempotents[v];
                let left = if v == s { vec![(x, q(1))] } else { Vec::new() };
                let right = if v == t { vec![(x, q(1))] } else { Vec::new() };
                if *self.table_entry(e, x) != left || *self.table_entry(x, e) != right {
                    return Err(Error::MalformedAlgebra(format!(
                        "idempotent e_{v} does not act as a block projection on basis element {x}"
                    )));
                }
            }
            for y in 0..n {
                let (u, w) = self.pairs[y];
                for &(b, _) in self.table_entry(x, y) {
                    if t != u || self.pairs[b] != (s, w) {
                        return Err(Error::MalformedAlgebra(format!(
                            "product of basis elements {x} and {y} leaves its block"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_triple(&self, x: usize, y: usize, z: usize) -> Result<()> {
        let xy = self.table_entry(x, y).clone();
        let yz = self.table_entry(y, z).clone();
        let l = multiply(self, &xy, &[(z, q(1))])?;
        let r = multiply(self, &[(x, q(1))], &yz)?;
        if l != r {
            return Err(Error::MalformedAlgebra(format!("associativity fails on ({x},{y},{z})")));
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.pairs.len();
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    if self.pairs[x].1 != self.pairs[y].0 {
                        continue;
                    }
                    for z in 0..n {
                        if self.pairs[y].1 == self.pairs[z].0 {
                            self.check_triple(x, y, z)?;
                        }
                    }
                }
            }
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                self.check_triple(x, y, z)?;
            }
        }
        Ok(())
    }
}

impl BasicAlgebra for FDAlgebra {
    fn dim(&self) -> usize {
        self.pairs.len()
    }

    fn num_vertices(&self) -> usize {
        self.vertices
    }

    fn vertex_pair(&self, b: usize) -> (usize, usize) {
        self.pairs[b]
    }

    fn basis_between(&self, s: usize, t: usize) -> &[usize] {
        &self.blocks[s][t]
    }

    fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    fn product(&self, x: usize, y: usize) -> Product<'_> {
        match self.table_entry(x, y).as_slice() {
            [] => Product::Zero,
            [(b, c)] if *c == q(1) => Product::Basis(*b),
            other => Product::Combination(other),
        }
    }
}

/// A subspace of the algebra given blockwise: `blocks[s][t]` spans part of `e_s A e_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpace {
    pub blocks: Vec<Vec<Vec<SparseVec>>>,
}

impl BlockSpace {
    fn empty(m: usize) -> Self {
        BlockSpace { blocks: vec![vec![Vec::new(); m]; m] }
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().flatten().map(Vec::len).sum()
    }

    pub fn block_dims(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|row| row.iter().map(Vec::len).collect()).collect()
    }
}

/// Trace form `(x, y) ↦ tr(L_{xy})` restricted to the span of `basis`, which
/// must be closed under multiplication. Returns a basis of its kernel.
fn trace_form_kernel<A: BasicAlgebra + ?Sized>(alg: &A, basis: &[usize]) -> Result<Vec<SparseVec>> {
    let mut local = std::collections::HashMap::new();
    for (i, &b) in basis.iter().enumerate() {
        local.insert(b, i);
    }
    let mut tr = vec![q(0); basis.len()];
    for (i, &b) in basis.iter().enumerate() {
        for &c in basis {
            alg.product(b, c).for_each(|p, x| {
                if p == c {
                    tr[i] += x;
                }
                Ok(())
            })?;
        }
    }
    let mut cols = Vec::with_capacity(basis.len());
    for &x in basis {
        let mut acc = Accumulator::new();
        for (yi, &y) in basis.iter().enumerate() {
            let mut v = q(0);
            alg.product(x, y).for_each(|p, c| {
                let i = *local.get(&p).ok_or_else(|| {
                    Error::MalformedAlgebra("trace-form subspace is not closed under products".into())
                })?;
                v += c * tr[i];
                Ok(())
            })?;
            acc.add(yi, v)?;
        }
        cols.push(acc.finish());
    }
    let ker = kernel(&cols)?;
    Ok(ker
        .into_iter()
        .map(|v| {
            let mut out: SparseVec = v.into_iter().map(|(i, c)| (basis[i], c)).collect();
            out.sort_by_key(|e| e.0);
            out
        })
        .collect())
}

/// Jacobson radical of a basic algebra: every off-diagonal block, plus the
/// trace-form radical of each corner `e_s A e_s`. Fails unless every corner
/// is local, i.e. the algebra is basic for the given idempotents.
pub fn radical<A: BasicAlgebra + ?Sized>(alg: &A) -> Result<BlockSpace> {
    let m = alg.num_vertices();
    let mut rad = BlockSpace::empty(m);
    for s in 0..m {
        for t in 0..m {
            if s != t {
                rad.blocks[s][t] = alg.basis_between(s, t).iter().map(|&b| vec![(b, q(1))]).collect();
            }
        }
        let corner = alg.basis_between(s, s);
        let ker = trace_form_kernel(alg, corner)?;
        if ker.len() + 1 != corner.len() {
            return Err(Error::MalformedAlgebra(format!(
                "corner at vertex {s} has top of dimension {}, expected 1 (algebra not basic)",
                corner.len() - ker.len()
            )));
        }
        rad.blocks[s][s] = ker;
    }
    Ok(rad)
}

/// Jacobson radical from the trace form of the whole algebra, with no
/// assumption on the idempotents. Quadratic in the dimension.
pub fn radical_by_trace_form<A: BasicAlgebra + ?Sized>(alg: &A) -> Result<BlockSpace> {
    let all: Vec<usize> = (0..alg.dim()).collect();
    let ker = trace_form_kernel(alg, &all)?;
    let m = alg.num_vertices();
    let mut ech = vec![vec![Echelon::new(); m]; m];
    let mut rad = BlockSpace::empty(m);
    // The radical is a two-sided ideal, so block projections stay inside it.
    for v in &ker {
        for s in 0..m {
            for t in 0..m {
                let part: SparseVec = v.iter().copied().filter(|&(b, _)| alg.vertex_pair(b) == (s, t)).collect();
                if !part.is_empty() && ech[s][t].insert(&part)? {
                    rad.blocks[s][t].push(part);
                }
            }
        }
    }
    Ok(rad)
}

/// `blocks[s][t]` of `X·Y` for blockwise subspaces.
fn block_product<A: BasicAlgebra + ?Sized>(alg: &A, x: &BlockSpace, y: &BlockSpace) -> Result<BlockSpace> {
    let m = alg.num_vertices();
    let mut out = BlockSpace::empty(m);
    for s in 0..m {
        for t in 0..m {
            let mut ech = Echelon::new();
            for u in 0..m {
                for a in &x.blocks[s][u] {
                    for b in &y.blocks[u][t] {
                        let p = multiply(alg, a, b)?;
                        if !p.is_empty() && ech.insert(&p)? {
                            out.blocks[s][t].push(p);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Dimension data of a standard module `Δ_i = P_i / Σ_{k>i} trace of P_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardModule {
    pub vertex: usize,
    /// `dim e_u Δ_i` for each vertex `u`.
    pub dims_by_vertex: Vec<usize>,
    pub dim: usize,
    /// Top multiplicities of the kernel of `P_i → Δ_i`.
    pub kernel_top: Vec<usize>,
    /// Whether that kernel is projective (its projective cover has equal dimension).
    pub kernel_projective: bool,
}

/// Multiplicities of indecomposable projectives in a minimal projective resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub vertex: usize,
    /// `terms[k][j]` is the multiplicity of `P_j` in the `k`-th term.
    pub terms: Vec<Vec<usize>>,
    /// Dimensions of the syzygies `Ω^1, Ω^2, …` that were computed.
    pub syzygy_dims: Vec<usize>,
    /// Projective dimension, when the resolution stopped within the probe.
    pub projective_dimension: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GlobalDimension {
    Finite(usize),
    ExceedsProbe(usize),
}

impl fmt::Display for GlobalDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlobalDimension::Finite(d) => write!(f, "{d}"),
            GlobalDimension::ExceedsProbe(p) => write!(f, ">{p}"),
        }
    }
}

/// `dims[k][i][j] = dim Ext^k(S_i, S_j)` for `k ≤ depth`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtTable {
    pub depth: usize,
    pub vertices: usize,
    pub dims: Vec<Vec<Vec<usize>>>,
}

impl ExtTable {
    pub fn get(&self, k: usize, i: usize, j: usize) -> usize {
        self.dims.get(k).map_or(0, |t| t[i][j])
    }

    /// Flat JSON object keyed `ext.k.i.j`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for k in 0..=self.depth {
            for i in 0..self.vertices {
                for j in 0..self.vertices {
                    map.insert(format!("ext.{k}.{i}.{j}"), self.get(k, i, j).into());
                }
            }
        }
        serde_json::Value::Object(map)
    }
}

/// A one-dimensional module: only `e_v` acts, as the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftModule {
    pub dim: usize,
    /// Action matrices of the basis elements acting nonzero.
    pub action: Vec<(usize, Vec<Vec<Q>>)>,
}

/// Direct sum `⊕_k A e_{verts[k]}`, coordinatised separately on each `e_s`-part.
struct Ambient {
    verts: Vec<usize>,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl Ambient {
    fn new<A: BasicAlgebra + ?Sized>(alg: &A, verts: Vec<usize>) -> Self {
        let m = alg.num_vertices();
        let mut offsets = vec![Vec::with_capacity(verts.len()); m];
        let mut dims = vec![0; m];
        for s in 0..m {
            for &t in &verts {
                offsets[s].push(dims[s]);
                dims[s] += alg.basis_between(s, t).len();
            }
        }
        Ambient { verts, offsets, dims }
    }

    fn decode(&self, s: usize, idx: usize) -> (usize, usize) {
        let k = self.offsets[s].partition_point(|&o| o <= idx) - 1;
        (k, idx - self.offsets[s][k])
    }
}

/// Radical, arrows and resolutions of one algebra.
pub struct Homology<'a, A: BasicAlgebra + ?Sized> {
    alg: &'a A,
    rad: BlockSpace,
    arrows: BlockSpace,
    block_pos: Vec<usize>,
}

/// A submodule of an ambient projective: `parts[s]` spans its `e_s`-part.
type Sub = Vec<Vec<SparseVec>>;

impl<'a, A: BasicAlgebra + ?Sized> Homology<'a, A> {
    pub fn new(alg: &'a A) -> Result<Self> {
        let rad = radical(alg)?;
        Self::with_radical(alg, rad)
    }

    pub fn with_radical(alg: &'a A, rad: BlockSpace) -> Result<Self> {
        let m = alg.num_vertices();
        let rad2 = block_product(alg, &rad, &rad)?;
        let mut arrows = BlockSpace::empty(m);
        for s in 0..m {
            for t in 0..m {
                let mut ech = Echelon::new();
                for v in &rad2.blocks[s][t] {
                    ech.insert(v)?;
                }
                for v in &rad.blocks[s][t] {
                    if ech.insert(v)? {
                        arrows.blocks[s][t].push(v.clone());
                    }
                }
            }
        }
        let mut block_pos = vec![0; alg.dim()];
        for s in 0..m {
            for t in 0..m {
                for (i, &b) in alg.basis_between(s, t).iter().enumerate() {
                    block_pos[b] = i;
                }
            }
        }
        Ok(Homology { alg, rad, arrows, block_pos })
    }

    pub fn radical(&self) -> &BlockSpace {
        &self.rad
    }

    /// `counts[s][t] = dim e_s (rad/rad²) e_t`, the number of arrows `s → t`.
    pub fn arrow_counts(&self) -> Vec<Vec<usize>> {
        self.arrows.block_dims()
    }

    pub fn simples(&self) -> Vec<LeftModule> {
        (0..self.alg.num_vertices())
            .map(|v| LeftModule { dim: 1, action: vec![(self.alg.idempotent(v), vec![vec![q(1)]])] })
            .collect()
    }

    /// Smallest `m` with `rad^m = 0`, searching up to the algebra dimension.
    pub fn nilpotency_index(&self) -> Result<Option<usize>> {
        let mut power = self.rad.clone();
        for m in 1..=self.alg.dim() + 1 {
            if power.dim() == 0 {
                return Ok(Some(m));
            }
            power = block_product(self.alg, &power, &self.rad)?;
        }
        Ok(None)
    }

    pub fn projective_dim(&self, t: usize) -> usize {
        (0..self.alg.num_vertices()).map(|s| self.alg.basis_between(s, t).len()).sum()
    }

    /// `x·w` for `x ∈ e_{s'} A e_s` and `w` in the `e_s`-part of the ambient.
    fn left_mul(&self, amb: &Ambient, s_to: usize, s: usize, x: &[(usize, Q)], w: &[(usize, Q)]) -> Result<SparseVec> {
        let mut acc = Accumulator::new();
        for &(idx, c) in w {
            let (k, pos) = amb.decode(s, idx);
            let b = self.alg.basis_between(s, amb.verts[k])[pos];
            let base = amb.offsets[s_to][k];
            for &(xb, xc) in x {
                self.alg.product(xb, b).for_each(|g, gc| acc.add(base + self.block_pos[g], c * xc * gc))?;
            }
        }
        Ok(acc.finish())
    }

    /// `rad·Ω = Σ_x x·Ω` over the arrow space, as an echelon per vertex.
    fn radical_of(&self, amb: &Ambient, omega: &Sub) -> Result<Vec<Echelon>> {
        let m = self.alg.num_vertices();
        let mut ech = vec![Echelon::new(); m];
        for s_to in 0..m {
            for s in 0..m {
                for x in &self.arrows.blocks[s_to][s] {
                    for w in &omega[s] {
                        let v = self.left_mul(amb, s_to, s, x, w)?;
                        if !v.is_empty() {
                            ech[s_to].insert(&v)?;
                        }
                    }
                }
            }
        }
        Ok(ech)
    }

    /// Elements of `Ω` spanning `Ω / rad Ω`, with their vertices.
    fn top(&self, amb: &Ambient, omega: &Sub) -> Result<Vec<(usize, SparseVec)>> {
        let mut ech = self.radical_of(amb, omega)?;
        let mut gens = Vec::new();
        for (s, part) in omega.iter().enumerate() {
            for w in part {
                if ech[s].insert(w)? {
                    gens.push((s, w.clone()));
                }
            }
        }
        Ok(gens)
    }

    /// Kernel of the projective cover `⊕_g A e_{s_g} → Ω`, `e_g ↦ w_g`.
    fn cover_kernel(&self, amb: &Ambient, omega: &Sub, gens: &[(usize, SparseVec)]) -> Result<(Ambient, Sub)> {
        let m = self.alg.num_vertices();
        let cover = Ambient::new(self.alg, gens.iter().map(|g| g.0).collect());
        let mut out = vec![Vec::new(); m];
        for u in 0..m {
            let mut cols = Vec::with_capacity(cover.dims[u]);
            for (s, w) in gens {
                for &b in self.alg.basis_between(u, *s) {
                    cols.push(self.left_mul(amb, u, *s, &[(b, q(1))], w)?);
                }
            }
            let ker = kernel(&cols)?;
            if cols.len() - ker.len() != omega[u].len() {
                return Err(Error::MalformedAlgebra(format!(
                    "projective cover is not onto at vertex {u}: rank {} vs {}",
                    cols.len() - ker.len(),
                    omega[u].len()
                )));
            }
            out[u] = ker;
        }
        Ok((cover, out))
    }

    /// Minimal projective resolution of the simple at `vertex`, computing
    /// terms `0..=depth` and stopping early once a syzygy vanishes.
    pub fn minimal_resolution(&self, vertex: usize, depth: usize) -> Result<Resolution> {
        let m = self.alg.num_vertices();
        if vertex >= m {
            return Err(Error::VertexOutOfRange { vertex, max: m - 1 });
        }
        let mut amb = Ambient::new(self.alg, vec![vertex]);
        let mut omega: Sub = (0..m)
            .map(|s| {
                self.rad.blocks[s][vertex]
                    .iter()
                    .map(|v| {
                        let mut w: SparseVec = v.iter().map(|&(b, c)| (self.block_pos[b], c)).collect();
                        w.sort_by_key(|e| e.0);
                        w
                    })
                    .collect()
            })
            .collect();
        let mut first = vec![0; m];
        first[vertex] = 1;
        let mut terms = vec![first];
        let mut syzygy_dims = Vec::new();
        let mut projective_dimension = None;
        for k in 1.. {
            let size: usize = omega.iter().map(Vec::len).sum();
            syzygy_dims.push(size);
            if size == 0 {
                projective_dimension = Some(k - 1);
                break;
            }
            if k > depth {
                break;
            }
            let gens = self.top(&amb, &omega)?;
            let mut mult = vec![0; m];
            for (s, _) in &gens {
                mult[*s] += 1;
            }
            terms.push(mult);
            let (next_amb, next) = self.cover_kernel(&amb, &omega, &gens)?;
            amb = next_amb;
            omega = next;
        }
        while terms.len() <= depth {
            terms.push(vec![0; m]);
        }
        terms.truncate(depth + 1);
        Ok(Resolution { vertex, terms, syzygy_dims, projective_dimension })
    }

    pub fn resolutions(&self, depth: usize) -> Result<Vec<Resolution>> {
        (0..self.alg.num_vertices())
            .into_par_iter()
            .map(|v| self.minimal_resolution(v, depth))
            .collect()
    }

    pub fn ext_table(&self, depth: usize) -> Result<ExtTable> {
        let res = self.resolutions(depth)?;
        Ok(Self::ext_from(&res, depth, self.alg.num_vertices()))
    }

    fn ext_from(res: &[Resolution], depth: usize, m: usize) -> ExtTable {
        let dims = (0..=depth).map(|k| (0..m).map(|i| res[i].terms[k].clone()).collect()).collect();
        ExtTable { depth, vertices: m, dims }
    }

    pub fn global_dimension(&self, probe: usize) -> Result<GlobalDimension> {
        let res = self.resolutions(probe)?;
        Ok(Self::gldim_from(&res, probe))
    }

    fn gldim_from(res: &[Resolution], probe: usize) -> GlobalDimension {
        let mut max = 0;
        for r in res {
            match r.projective_dimension {
                Some(d) => max = max.max(d),
                None => return GlobalDimension::ExceedsProbe(probe),
            }
        }
        GlobalDimension::Finite(max)
    }

    /// Ext table and global dimension from a single set of resolutions.
    pub fn ext_and_global_dimension(&self, depth: usize) -> Result<(ExtTable, GlobalDimension)> {
        let res = self.resolutions(depth)?;
        let m = self.alg.num_vertices();
        Ok((Self::ext_from(&res, depth, m), Self::gldim_from(&res, depth)))
    }

    /// Standard modules for the vertex order `0 < 1 < … < m−1`.
    pub fn standard_modules(&self) -> Result<Vec<StandardModule>> {
        let m = self.alg.num_vertices();
        (0..m)
            .into_par_iter()
            .map(|i| {
                let amb = Ambient::new(self.alg, vec![i]);
                let mut sub: Sub = vec![Vec::new(); m];
                for u in 0..m {
                    let mut ech = Echelon::new();
                    for k in i + 1..m {
                        for &c in self.alg.basis_between(k, i) {
                            for &b in self.alg.basis_between(u, k) {
                                let mut acc = Accumulator::new();
                                self.alg.product(b, c).for_each(|g, x| acc.add(self.block_pos[g], x))?;
                                let v = acc.finish();
                                if !v.is_empty() && ech.insert(&v)? {
                                    sub[u].push(v);
                                }
                            }
                        }
                    }
                }
                let dims_by_vertex: Vec<usize> = (0..m).map(|u| amb.dims[u] - sub[u].len()).collect();
                let gens = self.top(&amb, &sub)?;
                let mut kernel_top = vec![0; m];
                for (s, _) in &gens {
                    kernel_top[*s] += 1;
                }
                let cover: usize = (0..m).map(|s| kernel_top[s] * self.projective_dim(s)).sum();
                let sub_dim: usize = sub.iter().map(Vec::len).sum();
                Ok(StandardModule {
                    vertex: i,
                    dim: dims_by_vertex.iter().sum(),
                    dims_by_vertex,
                    kernel_top,
                    kernel_projective: cover == sub_dim,
                })
            })
            .collect()
    }
}
