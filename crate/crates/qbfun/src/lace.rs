//! Lace diagrams: columns of dots joined across edges.
//!
//! Dots in column `i` are numbered `1..=n_i` from the top. Each column sits
//! at a vertical offset so that `Right` edges are bottom-aligned and `Left`
//! edges top-aligned; dot `d` of column `i` has height `b_i + n_i - d`.
//! Complete and exact diagrams only ever join dots of equal height.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariant::{check_dims, check_index, InvariantIndex, MatrixRep};
use crate::linalg::{rat, Matrix};
use crate::quiver::{DimVector, Direction, Interval, QuiverA};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaceDiagram {
    columns: Vec<usize>,
    /// `edges[a-1]` holds `(left dot, right dot)` pairs for edge `a`, sorted.
    edges: Vec<Vec<(usize, usize)>>,
}

/// One connection: edge, dot in column `a`, dot in column `a+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Connection {
    pub edge: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strand {
    pub interval: Interval,
    /// Dot index in each column `interval.i..=interval.j`.
    pub dots: Vec<usize>,
}

impl LaceDiagram {
    pub fn new(columns: Vec<usize>, mut edges: Vec<Vec<(usize, usize)>>) -> Result<LaceDiagram> {
        if columns.is_empty() || edges.len() + 1 != columns.len() {
            return Err(Error::InvalidDiagram(format!(
                "{} columns but {} edges",
                columns.len(),
                edges.len()
            )));
        }
        for (k, pairs) in edges.iter_mut().enumerate() {
            pairs.sort_unstable();
            let (nl, nr) = (columns[k], columns[k + 1]);
            let mut lefts = BTreeSet::new();
            let mut rights = BTreeSet::new();
            for &(l, r) in pairs.iter() {
                if l == 0 || l > nl || r == 0 || r > nr {
                    return Err(Error::InvalidDiagram(format!("edge {}: dot ({l},{r}) out of range", k + 1)));
                }
                if !lefts.insert(l) || !rights.insert(r) {
                    return Err(Error::InvalidDiagram(format!(
                        "edge {}: a dot is joined more than once",
                        k + 1
                    )));
                }
            }
        }
        Ok(LaceDiagram { columns, edges })
    }

    pub fn empty(n: &DimVector) -> LaceDiagram {
        LaceDiagram {
            columns: n.entries().to_vec(),
            edges: vec![Vec::new(); n.len() - 1],
        }
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn r(&self) -> usize {
        self.columns.len()
    }

    /// Pairs on edge `a` (1-based).
    pub fn pairs(&self, a: usize) -> &[(usize, usize)] {
        &self.edges[a - 1]
    }

    pub fn edge_counts(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.len()).collect()
    }

    pub fn connections(&self) -> Vec<Connection> {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(k, pairs)| {
                pairs.iter().map(move |&(left, right)| Connection {
                    edge: k + 1,
                    left,
                    right,
                })
            })
            .collect()
    }

    pub fn contains(&self, c: &Connection) -> bool {
        c.edge >= 1 && c.edge <= self.edges.len() && self.edges[c.edge - 1].binary_search(&(c.left, c.right)).is_ok()
    }

    pub fn without(&self, c: &Connection) -> LaceDiagram {
        let mut d = self.clone();
        d.edges[c.edge - 1].retain(|&p| p != (c.left, c.right));
        d
    }

    fn right_of(&self, col: usize, dot: usize) -> Option<usize> {
        if col >= self.r() {
            return None;
        }
        self.edges[col - 1].iter().find(|p| p.0 == dot).map(|p| p.1)
    }

    fn has_left(&self, col: usize, dot: usize) -> bool {
        col > 1 && self.edges[col - 2].iter().any(|p| p.1 == dot)
    }
}

/// Vertical offset of each column's lowest dot.
pub fn column_offsets(quiver: &QuiverA, n: &DimVector) -> Vec<i64> {
    let mut b = vec![0i64];
    for a in 1..quiver.r() {
        let prev = b[a - 1];
        let next = match quiver.direction(a) {
            Direction::Right => prev,
            Direction::Left => prev + n.at(a) as i64 - n.at(a + 1) as i64,
        };
        b.push(next);
    }
    b
}

pub fn dot_height(offsets: &[i64], n: &DimVector, col: usize, dot: usize) -> i64 {
    offsets[col - 1] + n.at(col) as i64 - dot as i64
}

fn dot_at_height(offsets: &[i64], n: &DimVector, col: usize, h: i64) -> Option<usize> {
    let d = offsets[col - 1] + n.at(col) as i64 - h;
    (d >= 1 && d <= n.at(col) as i64).then_some(d as usize)
}

/// Every pair of equal-height dots on every edge.
pub fn complete_diagram(quiver: &QuiverA, n: &DimVector) -> Result<LaceDiagram> {
    check_dims(quiver, n)?;
    let b = column_offsets(quiver, n);
    let mut edges = Vec::new();
    for a in 1..quiver.r() {
        let pairs = (1..=n.at(a))
            .filter_map(|d| {
                let h = dot_height(&b, n, a, d);
                dot_at_height(&b, n, a + 1, h).map(|e| (d, e))
            })
            .collect();
        edges.push(pairs);
    }
    LaceDiagram::new(n.entries().to_vec(), edges)
}

/// Starting from all dots of column `p`, carry horizontal lines to the
/// right. Past a turning vertex the lines continue from the dots of that
/// column that were not reached.
pub fn exact_diagram(quiver: &QuiverA, n: &DimVector, idx: &InvariantIndex) -> Result<LaceDiagram> {
    check_index(quiver, n, idx)?;
    let b = column_offsets(quiver, n);
    let heights = |col: usize| -> BTreeSet<i64> { (1..=n.at(col)).map(|d| dot_height(&b, n, col, d)).collect() };
    let mut edges = vec![Vec::new(); quiver.r() - 1];
    let mut live = heights(idx.p);
    for a in idx.p..idx.q {
        let target = heights(a + 1);
        for &h in &live {
            if !target.contains(&h) {
                return Err(Error::InvalidDiagram(format!(
                    "height {h} has no dot in column {}",
                    a + 1
                )));
            }
            let l = dot_at_height(&b, n, a, h).expect("height taken from column");
            let r = dot_at_height(&b, n, a + 1, h).expect("height checked");
            edges[a - 1].push((l, r));
        }
        if a + 1 < idx.q && quiver.is_turning(a + 1) {
            live = target.difference(&live).copied().collect();
        }
    }
    if live != heights(idx.q) {
        return Err(Error::InvalidDiagram(format!(
            "lines do not cover column {}",
            idx.q
        )));
    }
    LaceDiagram::new(n.entries().to_vec(), edges)
}

/// 0/1 matrices: a connection between dot `j` of the tail column and dot
/// `k` of the head column puts a 1 at `(k, j)` of the edge matrix.
pub fn diagram_to_matrices(quiver: &QuiverA, n: &DimVector, d: &LaceDiagram) -> Result<MatrixRep> {
    check_dims(quiver, n)?;
    if d.columns() != n.entries() {
        return Err(Error::Shape("diagram columns differ from the dimension vector".into()));
    }
    let mut maps = Vec::new();
    for a in 1..quiver.r() {
        let mut m = Matrix::zeros(n.at(quiver.head(a)), n.at(quiver.tail(a)));
        for &(l, r) in d.pairs(a) {
            match quiver.direction(a) {
                Direction::Right => m.set(r - 1, l - 1, rat(1)),
                Direction::Left => m.set(l - 1, r - 1, rat(1)),
            }
        }
        maps.push(m);
    }
    Ok(MatrixRep { maps })
}

/// Maximal chains of connected dots, ordered by starting column then dot.
pub fn strands(d: &LaceDiagram) -> Vec<Strand> {
    let mut out = Vec::new();
    for col in 1..=d.r() {
        for dot in 1..=d.columns[col - 1] {
            if d.has_left(col, dot) {
                continue;
            }
            let mut dots = vec![dot];
            let (mut c, mut cur) = (col, dot);
            while let Some(next) = d.right_of(c, cur) {
                dots.push(next);
                c += 1;
                cur = next;
            }
            out.push(Strand {
                interval: Interval { i: col, j: c },
                dots,
            });
        }
    }
    out
}

pub fn strand_multiset(d: &LaceDiagram) -> BTreeMap<Interval, usize> {
    let mut m = BTreeMap::new();
    for s in strands(d) {
        *m.entry(s.interval).or_insert(0) += 1;
    }
    m
}

/// A diagram whose strands are the given intervals. Within each column the
/// dots are handed out in increasing interval order.
pub fn diagram_from_strands(n: &DimVector, multiset: &BTreeMap<Interval, usize>) -> Result<LaceDiagram> {
    let r = n.len();
    let mut next = vec![1usize; r + 1];
    let mut edges = vec![Vec::new(); r - 1];
    for (iv, &mult) in multiset {
        if iv.j > r {
            return Err(Error::Shape(format!("interval {iv} exceeds {r} vertices")));
        }
        for _ in 0..mult {
            let dots: Vec<usize> = (iv.i..=iv.j)
                .map(|c| {
                    let d = next[c];
                    next[c] += 1;
                    d
                })
                .collect();
            for (k, c) in (iv.i..iv.j).enumerate() {
                edges[c - 1].push((dots[k], dots[k + 1]));
            }
        }
    }
    if let Some(c) = (1..=r).find(|&c| next[c] - 1 != n.at(c)) {
        return Err(Error::Shape(format!(
            "strands use {} dots of column {c}, expected {}",
            next[c] - 1,
            n.at(c)
        )));
    }
    LaceDiagram::new(n.entries().to_vec(), edges)
}
