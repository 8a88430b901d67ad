//! Fundamental relative invariants indexed by pairs `(p, q)`.
//!
//! Conditions on a pair are checked segment by segment: walking from `p`
//! to `q`, a running count starts at `n_p` and is replaced by `n_t - count`
//! at every turning vertex. Interior vertices must exceed the count of
//! their segment, and `n_q` must equal it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};
use crate::quiver::{DimVector, Direction, QuiverA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantIndex {
    pub p: usize,
    pub q: usize,
    /// Position in the turning sequence of the first entry beyond `p`.
    pub alpha: usize,
    /// Position of the last entry before `q`; `alpha - 1` when there is none strictly between.
    pub beta: usize,
}

impl InvariantIndex {
    pub fn has_interior_turning(&self) -> bool {
        self.beta >= self.alpha
    }
}

pub fn alpha_beta(quiver: &QuiverA, p: usize, q: usize) -> (usize, usize) {
    let nu = quiver.sinks_sources();
    let alpha = nu.iter().position(|&v| v > p).unwrap_or(nu.len());
    let beta = nu.iter().rposition(|&v| v < q).unwrap_or(0);
    (alpha, beta)
}

/// Count of the segment containing each `t` in `p+1..=q`, or `None`
/// when the pair fails the conditions.
pub fn segment_counts(quiver: &QuiverA, n: &DimVector, p: usize, q: usize) -> Option<Vec<usize>> {
    if p < 1 || p >= q || q > quiver.r() {
        return None;
    }
    let mut c = n.at(p);
    let mut out = Vec::with_capacity(q - p);
    for t in p + 1..=q {
        out.push(c);
        let nt = n.at(t);
        if t == q {
            return (nt == c).then_some(out);
        }
        if nt <= c {
            return None;
        }
        if quiver.is_turning(t) {
            c = nt - c;
        }
    }
    None
}

pub fn index(quiver: &QuiverA, n: &DimVector, p: usize, q: usize) -> Result<InvariantIndex> {
    check_dims(quiver, n)?;
    if segment_counts(quiver, n, p, q).is_none() {
        return Err(Error::NotAnInvariant { p, q });
    }
    let (alpha, beta) = alpha_beta(quiver, p, q);
    Ok(InvariantIndex { p, q, alpha, beta })
}

pub(crate) fn check_dims(quiver: &QuiverA, n: &DimVector) -> Result<()> {
    if n.len() != quiver.r() {
        return Err(Error::LengthMismatch {
            expected: quiver.r(),
            got: n.len(),
        });
    }
    Ok(())
}

pub(crate) fn check_index(quiver: &QuiverA, n: &DimVector, idx: &InvariantIndex) -> Result<()> {
    let fresh = index(quiver, n, idx.p, idx.q)?;
    if fresh != *idx {
        return Err(Error::NotAnInvariant { p: idx.p, q: idx.q });
    }
    Ok(())
}

/// Alternating sum `n_{nu(alpha+kappa)} - ... +- n_{nu(alpha)} -+ n_p`.
/// `kappa = -1` gives the empty alternation, i.e. `n_p`.
pub fn nbar(quiver: &QuiverA, n: &DimVector, idx: &InvariantIndex, kappa: i64) -> Result<i64> {
    let max = idx.beta as i64 - idx.alpha as i64;
    if kappa < -1 || kappa > max {
        return Err(Error::KappaOutOfRange { kappa, max });
    }
    let nu = quiver.sinks_sources();
    let mut total = 0i64;
    for tau in 0..=kappa {
        let v = nu[(idx.alpha as i64 + kappa - tau) as usize];
        let sign = if tau % 2 == 0 { 1 } else { -1 };
        total += sign * n.at(v) as i64;
    }
    let sign = if (kappa + 1) % 2 == 0 { 1 } else { -1 };
    Ok(total + sign * n.at(idx.p) as i64)
}

pub fn enumerate_invariants(quiver: &QuiverA, n: &DimVector) -> Vec<InvariantIndex> {
    let r = quiver.r();
    if n.len() != r {
        return Vec::new();
    }
    let mut out = Vec::new();
    for p in 1..r {
        for q in p + 1..=r {
            if segment_counts(quiver, n, p, q).is_some() {
                let (alpha, beta) = alpha_beta(quiver, p, q);
                out.push(InvariantIndex { p, q, alpha, beta });
            }
        }
    }
    out
}

/// A monotone path of edges from a source block to a sink block, listed
/// in traversal order starting at the source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePath {
    pub from: usize,
    pub to: usize,
    pub edges: Vec<usize>,
}

impl EdgePath {
    fn between(from: usize, to: usize) -> EdgePath {
        let edges = if from < to {
            (from..to).collect()
        } else {
            (to..from).rev().collect()
        };
        EdgePath { from, to, edges }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockMatrixSpec {
    /// Sink vertices, increasing.
    pub row_blocks: Vec<usize>,
    /// Source vertices, increasing.
    pub col_blocks: Vec<usize>,
    /// `entries[r][c]` is the path from source `col_blocks[c]` to sink `row_blocks[r]`.
    pub entries: Vec<Vec<Option<EdgePath>>>,
}

impl BlockMatrixSpec {
    pub fn row_dim(&self, n: &DimVector) -> usize {
        self.row_blocks.iter().map(|&v| n.at(v)).sum()
    }

    pub fn col_dim(&self, n: &DimVector) -> usize {
        self.col_blocks.iter().map(|&v| n.at(v)).sum()
    }
}

/// Block map for the subquiver on `i..=j` (`i < j`): sources to sinks of
/// the subquiver, each entry the path between neighbouring turning
/// vertices. Used both for invariants and for rank parameters.
pub fn difference_map_spec(quiver: &QuiverA, i: usize, j: usize) -> BlockMatrixSpec {
    assert!(i < j && j <= quiver.r());
    let mut turning = vec![i];
    turning.extend((i + 1..j).filter(|&t| quiver.is_turning(t)));
    turning.push(j);
    let is_sink = |pos: usize| -> bool {
        let v = turning[pos];
        if pos == 0 {
            quiver.direction(v) == Direction::Left
        } else {
            quiver.direction(v - 1) == Direction::Right
        }
    };
    let sinks: Vec<usize> = (0..turning.len()).filter(|&k| is_sink(k)).collect();
    let sources: Vec<usize> = (0..turning.len()).filter(|&k| !is_sink(k)).collect();
    let entries = sinks
        .iter()
        .map(|&u| {
            sources
                .iter()
                .map(|&w| (u.abs_diff(w) == 1).then(|| EdgePath::between(turning[w], turning[u])))
                .collect()
        })
        .collect();
    BlockMatrixSpec {
        row_blocks: sinks.iter().map(|&k| turning[k]).collect(),
        col_blocks: sources.iter().map(|&k| turning[k]).collect(),
        entries,
    }
}

pub fn block_spec(quiver: &QuiverA, n: &DimVector, idx: &InvariantIndex) -> Result<BlockMatrixSpec> {
    check_index(quiver, n, idx)?;
    Ok(difference_map_spec(quiver, idx.p, idx.q))
}

/// One matrix per edge, `X_a` of shape `n_{h(a)} x n_{t(a)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRep {
    pub maps: Vec<Matrix>,
}

impl MatrixRep {
    pub fn zero(quiver: &QuiverA, n: &DimVector) -> MatrixRep {
        let maps = (1..quiver.r())
            .map(|a| Matrix::zeros(n.at(quiver.head(a)), n.at(quiver.tail(a))))
            .collect();
        MatrixRep { maps }
    }

    pub fn edge(&self, a: usize) -> &Matrix {
        &self.maps[a - 1]
    }

    pub fn check_shapes(&self, quiver: &QuiverA, n: &DimVector) -> Result<()> {
        if self.maps.len() + 1 != quiver.r() {
            return Err(Error::Shape(format!(
                "{} edge matrices for a quiver with {} vertices",
                self.maps.len(),
                quiver.r()
            )));
        }
        for a in 1..quiver.r() {
            let m = self.edge(a);
            let (h, t) = (n.at(quiver.head(a)), n.at(quiver.tail(a)));
            if m.rows() != h || m.cols() != t {
                return Err(Error::Shape(format!(
                    "edge {a} matrix is {}x{}, expected {h}x{t}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(())
    }

    /// `g_{h(a)} X_a g_{t(a)}^{-1}`.
    pub fn act(&self, quiver: &QuiverA, g: &[Matrix]) -> Result<MatrixRep> {
        let mut maps = Vec::with_capacity(self.maps.len());
        for a in 1..quiver.r() {
            let inv = g[quiver.tail(a) - 1]
                .inverse()
                .ok_or_else(|| Error::Shape("group element is singular".into()))?;
            maps.push(g[quiver.head(a) - 1].mul(self.edge(a))?.mul(&inv)?);
        }
        Ok(MatrixRep { maps })
    }
}

pub fn path_product(rep: &MatrixRep, path: &EdgePath, n: &DimVector) -> Result<Matrix> {
    let mut acc = Matrix::identity(n.at(path.from));
    for &a in &path.edges {
        acc = rep.edge(a).mul(&acc)?;
    }
    Ok(acc)
}

pub fn instantiate(spec: &BlockMatrixSpec, n: &DimVector, rep: &MatrixRep) -> Result<Matrix> {
    let row_sizes: Vec<usize> = spec.row_blocks.iter().map(|&v| n.at(v)).collect();
    let col_sizes: Vec<usize> = spec.col_blocks.iter().map(|&v| n.at(v)).collect();
    let blocks = spec
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| e.as_ref().map(|p| path_product(rep, p, n)).transpose())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_blocks(&row_sizes, &col_sizes, &blocks)
}

pub fn evaluate_invariant(spec: &BlockMatrixSpec, n: &DimVector, rep: &MatrixRep) -> Result<Rational> {
    instantiate(spec, n, rep)?.det()
}

/// Exponent of `det g_i` in the character of the invariant.
pub fn character_exponents(quiver: &QuiverA, n: &DimVector, idx: &InvariantIndex) -> Result<Vec<i64>> {
    let spec = block_spec(quiver, n, idx)?;
    let mut sigma = vec![0; quiver.r()];
    for &v in &spec.row_blocks {
        sigma[v - 1] += 1;
    }
    for &v in &spec.col_blocks {
        sigma[v - 1] -= 1;
    }
    Ok(sigma)
}

/// Degree of the invariant, the sum of the segment counts over `p+1..=q`.
pub fn degree(quiver: &QuiverA, n: &DimVector, idx: &InvariantIndex) -> Result<usize> {
    check_index(quiver, n, idx)?;
    let counts = segment_counts(quiver, n, idx.p, idx.q).ok_or(Error::NotAnInvariant { p: idx.p, q: idx.q })?;
    Ok(counts.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(v: &[usize]) -> DimVector {
        DimVector::new(v.to_vec()).unwrap()
    }

    fn pairs(v: &[InvariantIndex]) -> Vec<(usize, usize)> {
        v.iter().map(|i| (i.p, i.q)).collect()
    }

    #[test]
    fn enumerates_equioriented_example() {
        let q = QuiverA::equioriented(5);
        let inv = enumerate_invariants(&q, &dims(&[2, 5, 6, 6, 2]));
        assert_eq!(pairs(&inv), vec![(1, 5), (3, 4)]);
    }

    #[test]
    fn enumerates_alternating_example() {
        let q = QuiverA::alternating(5);
        let inv = enumerate_invariants(&q, &dims(&[2, 5, 7, 4, 2]));
        assert_eq!(pairs(&inv), vec![(1, 4), (2, 5)]);
    }

    #[test]
    fn a2_unequal_has_none() {
        let q = QuiverA::equioriented(2);
        assert!(enumerate_invariants(&q, &dims(&[1, 2])).is_empty());
        assert_eq!(pairs(&enumerate_invariants(&q, &dims(&[3, 3]))), vec![(1, 2)]);
    }

    #[test]
    fn nbar_values() {
        use Direction::*;
        let q = QuiverA::new(vec![Right, Right, Left, Right, Right, Left, Left]);
        // n_t > n_4 - n_3 + n_1 must hold on the second segment
        let n = dims(&[1, 2, 3, 4, 5, 6, 7, 8]);
        let (alpha, beta) = alpha_beta(&q, 1, 8);
        let idx = InvariantIndex { p: 1, q: 8, alpha, beta };
        assert_eq!(nbar(&q, &n, &idx, 1).unwrap(), 4 - 3 + 1);
        assert_eq!(nbar(&q, &n, &idx, 0).unwrap(), 3 - 1);
        assert_eq!(nbar(&q, &n, &idx, -1).unwrap(), 1);
        assert!(nbar(&q, &n, &idx, 3).is_err());
        assert!(nbar(&q, &n, &idx, -2).is_err());
    }

    #[test]
    fn nbar_equioriented_is_np() {
        let q = QuiverA::equioriented(5);
        let n = dims(&[2, 5, 6, 6, 2]);
        let idx = index(&q, &n, 1, 5).unwrap();
        assert!(!idx.has_interior_turning());
        assert_eq!(nbar(&q, &n, &idx, -1).unwrap(), 2);
        assert!(nbar(&q, &n, &idx, 0).is_err());
    }

    #[test]
    fn block_spec_alternating() {
        let q = QuiverA::alternating(5);
        let n = dims(&[2, 5, 7, 4, 2]);
        let idx = index(&q, &n, 1, 4).unwrap();
        let spec = block_spec(&q, &n, &idx).unwrap();
        assert_eq!(spec.row_blocks, vec![2, 4]);
        assert_eq!(spec.col_blocks, vec![1, 3]);
        let ends = |e: &Option<EdgePath>| e.as_ref().map(|p| (p.to, p.from));
        assert_eq!(ends(&spec.entries[0][0]), Some((2, 1)));
        assert_eq!(ends(&spec.entries[0][1]), Some((2, 3)));
        assert_eq!(ends(&spec.entries[1][0]), None);
        assert_eq!(ends(&spec.entries[1][1]), Some((4, 3)));

        let idx = index(&q, &n, 2, 5).unwrap();
        let spec = block_spec(&q, &n, &idx).unwrap();
        assert_eq!(spec.row_blocks, vec![2, 4]);
        assert_eq!(spec.col_blocks, vec![3, 5]);
        assert_eq!(ends(&spec.entries[0][0]), Some((2, 3)));
        assert_eq!(ends(&spec.entries[0][1]), None);
        assert_eq!(ends(&spec.entries[1][0]), Some((4, 3)));
        assert_eq!(ends(&spec.entries[1][1]), Some((4, 5)));
    }

    #[test]
    fn block_spec_mixed_a8() {
        use Direction::*;
        let q = QuiverA::new(vec![Right, Right, Left, Right, Right, Left, Left]);
        let spec = difference_map_spec(&q, 1, 8);
        assert_eq!(spec.row_blocks, vec![3, 6]);
        assert_eq!(spec.col_blocks, vec![1, 4, 8]);
        let e = |r: usize, c: usize| spec.entries[r][c].as_ref().map(|p| p.edges.clone());
        assert_eq!(e(0, 0), Some(vec![1, 2]));
        assert_eq!(e(0, 1), Some(vec![3]));
        assert_eq!(e(0, 2), None);
        assert_eq!(e(1, 0), None);
        assert_eq!(e(1, 1), Some(vec![4, 5]));
        assert_eq!(e(1, 2), Some(vec![7, 6]));
    }

    #[test]
    fn block_spec_single_path() {
        let q = QuiverA::equioriented(5);
        let spec = difference_map_spec(&q, 1, 5);
        assert_eq!(spec.row_blocks, vec![5]);
        assert_eq!(spec.col_blocks, vec![1]);
        assert_eq!(spec.entries[0][0].as_ref().unwrap().edges, vec![1, 2, 3, 4]);
        let rq = q.dual();
        let spec = difference_map_spec(&rq, 1, 5);
        assert_eq!(spec.row_blocks, vec![1]);
        assert_eq!(spec.entries[0][0].as_ref().unwrap().edges, vec![4, 3, 2, 1]);
    }

    #[test]
    fn block_spec_rejects_non_invariant() {
        let q = QuiverA::equioriented(5);
        let n = dims(&[2, 5, 6, 6, 2]);
        let bogus = InvariantIndex { p: 1, q: 4, alpha: 1, beta: 0 };
        assert!(block_spec(&q, &n, &bogus).is_err());
    }

    #[test]
    fn character_examples() {
        let q = QuiverA::equioriented(5);
        let n = dims(&[2, 5, 6, 6, 2]);
        let idx = index(&q, &n, 1, 5).unwrap();
        assert_eq!(character_exponents(&q, &n, &idx).unwrap(), vec![-1, 0, 0, 0, 1]);
        let idx = index(&q, &n, 3, 4).unwrap();
        assert_eq!(character_exponents(&q, &n, &idx).unwrap(), vec![0, 0, -1, 1, 0]);
        let q = QuiverA::alternating(5);
        let n = dims(&[2, 5, 7, 4, 2]);
        let idx = index(&q, &n, 1, 4).unwrap();
        assert_eq!(character_exponents(&q, &n, &idx).unwrap(), vec![-1, 1, -1, 1, 0]);
    }

    #[test]
    fn zero_rep_evaluates_to_zero() {
        let q = QuiverA::equioriented(5);
        let n = dims(&[2, 5, 6, 6, 2]);
        for idx in enumerate_invariants(&q, &n) {
            let spec = block_spec(&q, &n, &idx).unwrap();
            let v = evaluate_invariant(&spec, &n, &MatrixRep::zero(&q, &n)).unwrap();
            assert_eq!(v, crate::linalg::rat(0));
        }
    }

    #[test]
    fn degrees() {
        let q = QuiverA::equioriented(5);
        let n = dims(&[2, 5, 6, 6, 2]);
        assert_eq!(degree(&q, &n, &index(&q, &n, 1, 5).unwrap()).unwrap(), 8);
        assert_eq!(degree(&q, &n, &index(&q, &n, 3, 4).unwrap()).unwrap(), 6);
    }
}
