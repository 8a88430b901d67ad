//! Hom and Ext between representations, slice representations at the
//! closed orbits, and restrictions of invariants to those slices.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bfun::{b_one_variable, FactoredBFunction};
use crate::error::{Error, Result};
use crate::invariant::{check_index, index, InvariantIndex, MatrixRep};
use crate::lace::{exact_diagram, strands, LaceDiagram};
use crate::linalg::Matrix;
use crate::quiver::{DimVector, Direction, Interval, QuiverA};

/// The map `phi -> (phi_{h(a)} A_a - B_a phi_{t(a)})_a` from
/// `sum_i Hom(k^{n_i}, k^{m_i})` to `sum_a Hom(k^{n_{t(a)}}, k^{m_{h(a)}})`.
pub fn hom_ext_matrix(quiver: &QuiverA, n: &[usize], a: &MatrixRep, m: &[usize], b: &MatrixRep) -> Result<Matrix> {
    let r = quiver.r();
    if n.len() != r || m.len() != r {
        return Err(Error::LengthMismatch {
            expected: r,
            got: if n.len() != r { n.len() } else { m.len() },
        });
    }
    for (rep, d) in [(a, n), (b, m)] {
        if rep.maps.len() + 1 != r {
            return Err(Error::Shape("wrong number of edge matrices".into()));
        }
        for e in 1..r {
            let x = rep.edge(e);
            if x.rows() != d[quiver.head(e) - 1] || x.cols() != d[quiver.tail(e) - 1] {
                return Err(Error::Shape(format!("edge {e} matrix has the wrong shape")));
            }
        }
    }
    let mut col_off = vec![0usize; r + 1];
    for i in 0..r {
        col_off[i + 1] = col_off[i] + m[i] * n[i];
    }
    let mut row_off = vec![0usize; r];
    for e in 1..r {
        row_off[e] = row_off[e - 1] + m[quiver.head(e) - 1] * n[quiver.tail(e) - 1];
    }
    let rows = row_off[r - 1];
    let mut d = Matrix::zeros(rows, col_off[r]);
    for e in 1..r {
        let (t, h) = (quiver.tail(e) - 1, quiver.head(e) - 1);
        let base = row_off[e - 1];
        let (ae, be) = (a.edge(e), b.edge(e));
        // phi_h A_e
        for x in 0..m[h] {
            for y in 0..n[h] {
                for z in 0..n[t] {
                    let v = ae.get(y, z);
                    if !v.is_zero() {
                        let row = base + x * n[t] + z;
                        let col = col_off[h] + x * n[h] + y;
                        let cur = d.get(row, col) + v;
                        d.set(row, col, cur);
                    }
                }
            }
        }
        // -B_e phi_t
        for x in 0..m[t] {
            for y in 0..n[t] {
                for w in 0..m[h] {
                    let v = be.get(w, x);
                    if !v.is_zero() {
                        let row = base + w * n[t] + y;
                        let col = col_off[t] + x * n[t] + y;
                        let cur = d.get(row, col) - v;
                        d.set(row, col, cur);
                    }
                }
            }
        }
    }
    Ok(d)
}

/// `(dim Hom(A, B), dim Ext(A, B))`.
pub fn hom_ext_dims(quiver: &QuiverA, n: &[usize], a: &MatrixRep, m: &[usize], b: &MatrixRep) -> Result<(usize, usize)> {
    let d = hom_ext_matrix(quiver, n, a, m, b)?;
    let rank = d.rank();
    Ok((d.cols() - rank, d.rows() - rank))
}

/// The indecomposable supported on an interval: `k` on `i..=j`, identities inside.
pub fn interval_rep(quiver: &QuiverA, iv: Interval) -> (Vec<usize>, MatrixRep) {
    let dims: Vec<usize> = (1..=quiver.r()).map(|v| usize::from(iv.contains(v))).collect();
    let maps = (1..quiver.r())
        .map(|e| {
            let (h, t) = (dims[quiver.head(e) - 1], dims[quiver.tail(e) - 1]);
            if h == 1 && t == 1 {
                Matrix::identity(1)
            } else {
                Matrix::zeros(h, t)
            }
        })
        .collect();
    (dims, MatrixRep { maps })
}

/// Ext between interval modules read off the orientation: one when the
/// intervals sit side by side without overlapping and the edge joining
/// them points from the first to the second. Valid for pairs of strands of
/// one exact diagram.
pub fn interval_ext(quiver: &QuiverA, u: Interval, v: Interval) -> usize {
    let hit = (1..quiver.r()).any(|e| {
        let (t, h) = (quiver.tail(e), quiver.head(e));
        (t == u.j && h == v.i && v.i == u.j + 1) || (t == u.i && h == v.j && v.j + 1 == u.i)
    });
    usize::from(hit)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceVertex {
    pub interval: Interval,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceArrow {
    /// 0-based positions in `vertices`.
    pub from: usize,
    pub to: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceRep {
    pub vertices: Vec<SliceVertex>,
    pub arrows: Vec<SliceArrow>,
}

impl SliceRep {
    /// Sizes of the general linear factors of the isotropy group.
    pub fn group_factors(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v.mult).collect()
    }

    /// `(rows, cols)` of each matrix summand of the slice, `M(m_to, m_from)`.
    pub fn summands(&self) -> Vec<(usize, usize)> {
        self.arrows
            .iter()
            .flat_map(|a| std::iter::repeat_n((self.vertices[a.to].mult, self.vertices[a.from].mult), a.count))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.summands().iter().map(|(r, c)| r * c).sum()
    }
}

pub fn slice_representation(quiver: &QuiverA, n: &DimVector, idx: &InvariantIndex) -> Result<SliceRep> {
    let d = exact_diagram(quiver, n, idx)?;
    let mut mult: BTreeMap<Interval, usize> = BTreeMap::new();
    for s in strands(&d) {
        *mult.entry(s.interval).or_insert(0) += 1;
    }
    let vertices: Vec<SliceVertex> = mult.into_iter().map(|(interval, mult)| SliceVertex { interval, mult }).collect();
    let mut arrows = Vec::new();
    for (x, u) in vertices.iter().enumerate() {
        for (y, v) in vertices.iter().enumerate() {
            let count = interval_ext(quiver, u.interval, v.interval);
            if count > 0 {
                arrows.push(SliceArrow { from: x, to: y, count });
            }
        }
    }
    Ok(SliceRep { vertices, arrows })
}

/// What an invariant becomes on the slice at another invariant's closed orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Restriction {
    Constant,
    Reduced {
        quiver: QuiverA,
        dims: DimVector,
        index: InvariantIndex,
        /// Strand class behind each local vertex.
        vertices: Vec<Interval>,
    },
}

impl Restriction {
    pub fn b_function(&self) -> Result<FactoredBFunction> {
        match self {
            Restriction::Constant => Ok(FactoredBFunction::one_variable([])),
            Restriction::Reduced { quiver, dims, index, .. } => b_one_variable(quiver, dims, index),
        }
    }
}

fn strand_of_dot(d: &LaceDiagram) -> BTreeMap<(usize, usize), Interval> {
    let mut out = BTreeMap::new();
    for s in strands(d) {
        for (k, &dot) in s.dots.iter().enumerate() {
            out.insert((s.interval.i + k, dot), s.interval);
        }
    }
    out
}

/// Connections of the second exact diagram missing from the first become
/// arrows between strand classes of the first. They must line up into a
/// chain whose exact diagram for its full span has exactly those arrows.
pub fn restricted_invariant_shape(
    quiver: &QuiverA,
    n: &DimVector,
    idx_slice: &InvariantIndex,
    idx_f: &InvariantIndex,
) -> Result<Restriction> {
    check_index(quiver, n, idx_slice)?;
    check_index(quiver, n, idx_f)?;
    if idx_slice == idx_f {
        return Ok(Restriction::Constant);
    }
    let base = exact_diagram(quiver, n, idx_slice)?;
    let other = exact_diagram(quiver, n, idx_f)?;
    let owner = strand_of_dot(&base);
    let mut mult: BTreeMap<Interval, usize> = BTreeMap::new();
    for s in strands(&base) {
        *mult.entry(s.interval).or_insert(0) += 1;
    }
    // (tail class, head class) -> number of transferred connections
    let mut arrows: BTreeMap<(Interval, Interval), usize> = BTreeMap::new();
    for c in other.connections() {
        if base.contains(&c) {
            continue;
        }
        let u = owner[&(c.edge, c.left)];
        let v = owner[&(c.edge + 1, c.right)];
        let key = match quiver.direction(c.edge) {
            Direction::Right => (u, v),
            Direction::Left => (v, u),
        };
        *arrows.entry(key).or_insert(0) += 1;
    }
    if arrows.is_empty() {
        return Ok(Restriction::Constant);
    }
    let fail = |msg: String| Err(Error::RestrictionNotExact(msg));

    let mut neighbours: BTreeMap<Interval, BTreeSet<Interval>> = BTreeMap::new();
    for &(u, v) in arrows.keys() {
        if u == v {
            return fail(format!("loop at {u}"));
        }
        if arrows.contains_key(&(v, u)) {
            return fail(format!("arrows both ways between {u} and {v}"));
        }
        neighbours.entry(u).or_default().insert(v);
        neighbours.entry(v).or_default().insert(u);
    }
    if neighbours.values().any(|s| s.len() > 2) {
        return fail("a strand class meets more than two others".into());
    }
    let ends: Vec<Interval> = neighbours.iter().filter(|(_, s)| s.len() == 1).map(|(&k, _)| k).collect();
    if ends.len() != 2 {
        return fail("transferred arrows do not form a path".into());
    }
    let mut chain = vec![ends[0]];
    while chain.len() < neighbours.len() {
        let last = *chain.last().expect("nonempty");
        let next = neighbours[&last].iter().find(|v| !chain.contains(v)).copied();
        match next {
            Some(v) => chain.push(v),
            None => return fail("transferred arrows are disconnected".into()),
        }
    }
    if *chain.last().expect("nonempty") != ends[1] {
        return fail("transferred arrows are disconnected".into());
    }

    let mut directions = Vec::new();
    let mut counts = Vec::new();
    for w in chain.windows(2) {
        if let Some(&c) = arrows.get(&(w[0], w[1])) {
            directions.push(Direction::Right);
            counts.push(c);
        } else {
            directions.push(Direction::Left);
            counts.push(arrows[&(w[1], w[0])]);
        }
    }
    let local_q = QuiverA::new(directions);
    let local_n = DimVector::for_quiver(&local_q, chain.iter().map(|v| mult[v]).collect())?;
    let local_idx = match index(&local_q, &local_n, 1, chain.len()) {
        Ok(i) => i,
        Err(_) => {
            return fail(format!(
                "local quiver {local_q} with dimensions {:?} has no invariant on its full span",
                local_n.entries()
            ))
        }
    };
    let local_exact = exact_diagram(&local_q, &local_n, &local_idx)?;
    if local_exact.edge_counts() != counts {
        return fail(format!(
            "transferred counts {:?} differ from the local exact diagram {:?}",
            counts,
            local_exact.edge_counts()
        ));
    }
    Ok(Restriction::Reduced {
        quiver: local_q,
        dims: local_n,
        index: local_idx,
        vertices: chain,
    })
}

/// Ext between a representation and itself via the block map, for checks
/// against the slice dimension.
pub fn self_ext_dims(quiver: &QuiverA, n: &DimVector, a: &MatrixRep) -> Result<(usize, usize)> {
    hom_ext_dims(quiver, n.entries(), a, n.entries(), a)
}
