//! Sparse exact linear algebra over ℚ.
//!
//! Vectors are sorted `(index, coefficient)` lists with no zero entries.
//! Every arithmetic step is checked; an overflow of the 64-bit numerator or
//! denominator surfaces as [`Error::Overflow`].

use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Zero};

use crate::error::{Error, Result};

pub type Q = Ratio<i64>;
pub type SparseVec = Vec<(usize, Q)>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn add(a: &Q, b: &Q) -> Result<Q> {
    a.checked_add(b).ok_or(Error::Overflow("rational add"))
}

fn sub(a: &Q, b: &Q) -> Result<Q> {
    a.checked_sub(b).ok_or(Error::Overflow("rational sub"))
}

fn mul(a: &Q, b: &Q) -> Result<Q> {
    a.checked_mul(b).ok_or(Error::Overflow("rational mul"))
}

fn div(a: &Q, b: &Q) -> Result<Q> {
    a.checked_div(b).ok_or(Error::Overflow("rational div"))
}

/// `y + c·x`.
pub fn axpy(y: &[(usize, Q)], c: &Q, x: &[(usize, Q)]) -> Result<SparseVec> {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j == x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i]);
            i += 1;
        } else if i == y.len() || x[j].0 < y[i].0 {
            let v = mul(c, &x[j].1)?;
            if !v.is_zero() {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = add(&y[i].1, &mul(c, &x[j].1)?)?;
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Accumulates `(index, coefficient)` terms into a sorted sparse vector.
#[derive(Debug, Default, Clone)]
pub struct Accumulator {
    terms: BTreeMap<usize, Q>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, idx: usize, c: Q) -> Result<()> {
        let e = self.terms.entry(idx).or_insert_with(Q::zero);
        *e = add(e, &c)?;
        Ok(())
    }

    pub fn finish(self) -> SparseVec {
        self.terms.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// An echelon basis built incrementally. Each stored row has leading
/// coefficient 1 at a distinct pivot; rows optionally carry the combination
/// of inserted vectors that produced them.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivot: HashMap<usize, usize>,
    tracking: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// An echelon that records, for each row, the inserted vectors it came from.
    pub fn tracked() -> Self {
        Echelon { tracking: true, ..Self::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    fn reduce_with(&self, v: &[(usize, Q)], combo: &mut SparseVec) -> Result<SparseVec> {
        let mut cur: BTreeMap<usize, Q> = v.iter().copied().collect();
        let mut cursor = 0;
        loop {
            let hit = cur
                .range(cursor..)
                .find(|(idx, _)| self.pivot.contains_key(idx))
                .map(|(&i, &c)| (i, c));
            let Some((idx, coef)) = hit else { break };
            let r = self.pivot[&idx];
            for (j, x) in &self.rows[r] {
                let e = cur.entry(*j).or_insert_with(Q::zero);
                *e = sub(e, &mul(&coef, x)?)?;
                if e.is_zero() {
                    cur.remove(j);
                }
            }
            if self.tracking {
                *combo = axpy(combo, &-coef, &self.combos[r])?;
            }
            cursor = idx + 1;
        }
        Ok(cur.into_iter().collect())
    }

    /// The residue of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &[(usize, Q)]) -> Result<SparseVec> {
        self.reduce_with(v, &mut Vec::new())
    }

    fn push(&mut self, residue: SparseVec, combo: SparseVec) -> Result<()> {
        let (p, lead) = residue[0];
        let inv = div(&Q::one(), &lead)?;
        let row = residue.iter().map(|&(i, c)| Ok((i, mul(&c, &inv)?))).collect::<Result<_>>()?;
        if self.tracking {
            let combo = combo.iter().map(|&(i, c)| Ok((i, mul(&c, &inv)?))).collect::<Result<_>>()?;
            self.combos.push(combo);
        }
        self.pivot.insert(p, self.rows.len());
        self.rows.push(row);
        Ok(())
    }

    /// Adds `v`; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, v: &[(usize, Q)]) -> Result<bool> {
        let residue = self.reduce(v)?;
        if residue.is_empty() {
            return Ok(false);
        }
        self.push(residue, Vec::new())?;
        Ok(true)
    }

    /// Adds `v` tagged as input number `tag`. When `v` is dependent, returns
    /// the combination of earlier tags (plus `tag` itself) summing to zero.
    pub fn insert_tracked(&mut self, v: &[(usize, Q)], tag: usize) -> Result<Option<SparseVec>> {
        debug_assert!(self.tracking);
        let mut combo = vec![(tag, Q::one())];
        let residue = self.reduce_with(v, &mut combo)?;
        if residue.is_empty() {
            return Ok(Some(combo));
        }
        self.push(residue, combo)?;
        Ok(None)
    }
}

/// A basis of `{c : Σ c_i·columns[i] = 0}`.
pub fn kernel(columns: &[SparseVec]) -> Result<Vec<SparseVec>> {
    let mut e = Echelon::tracked();
    let mut out = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        if let Some(rel) = e.insert_tracked(col, i)? {
            out.push(rel);
        }
    }
    Ok(out)
}

/// Rank of a set of vectors.
pub fn rank(vectors: &[SparseVec]) -> Result<usize> {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v)?;
    }
    Ok(e.rank())
}
