//! Type-A quivers, dimension vectors and intervals.
//!
//! Vertices and edges are 1-based. Edge `a` joins vertices `a` and `a+1`;
//! a `Right` edge points `a -> a+1`, a `Left` edge points `a+1 -> a`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Right,
    Left,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Right => Direction::Left,
            Direction::Left => Direction::Right,
        }
    }

    /// +1 for `Right`, -1 for `Left`.
    pub fn delta(self) -> i64 {
        match self {
            Direction::Right => 1,
            Direction::Left => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuiverA {
    directions: Vec<Direction>,
}

impl QuiverA {
    pub fn new(directions: Vec<Direction>) -> Self {
        QuiverA { directions }
    }

    /// The single vertex quiver has `r = 1` and no edges.
    pub fn equioriented(r: usize) -> Self {
        QuiverA::new(vec![Direction::Right; r.saturating_sub(1)])
    }

    /// Edges alternate starting with `Right`.
    pub fn alternating(r: usize) -> Self {
        let dirs = (0..r.saturating_sub(1))
            .map(|k| if k % 2 == 0 { Direction::Right } else { Direction::Left })
            .collect();
        QuiverA::new(dirs)
    }

    pub fn r(&self) -> usize {
        self.directions.len() + 1
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    /// Direction of edge `a` (1-based, `1 <= a < r`).
    pub fn direction(&self, a: usize) -> Direction {
        self.directions[a - 1]
    }

    pub fn tail(&self, a: usize) -> usize {
        match self.direction(a) {
            Direction::Right => a,
            Direction::Left => a + 1,
        }
    }

    pub fn head(&self, a: usize) -> usize {
        match self.direction(a) {
            Direction::Right => a + 1,
            Direction::Left => a,
        }
    }

    /// Interior vertex where the orientation changes.
    pub fn is_turning(&self, v: usize) -> bool {
        v > 1 && v < self.r() && self.direction(v - 1) != self.direction(v)
    }

    /// All arrows at `v` point into `v`. Endpoints count with their single edge.
    pub fn is_sink(&self, v: usize) -> bool {
        let left_in = v == 1 || self.direction(v - 1) == Direction::Right;
        let right_in = v == self.r() || self.direction(v) == Direction::Left;
        left_in && right_in
    }

    pub fn is_source(&self, v: usize) -> bool {
        let left_out = v == 1 || self.direction(v - 1) == Direction::Left;
        let right_out = v == self.r() || self.direction(v) == Direction::Right;
        left_out && right_out
    }

    /// The sequence 1, interior sinks and sources in order, r.
    pub fn sinks_sources(&self) -> Vec<usize> {
        let r = self.r();
        let mut nu = vec![1];
        nu.extend((2..r).filter(|&v| self.is_turning(v)));
        if r > 1 {
            nu.push(r);
        }
        nu
    }

    pub fn dual(&self) -> QuiverA {
        QuiverA::new(self.directions.iter().map(|d| d.flip()).collect())
    }

    /// Parses either the arrow form `1->2<-3` or the compact form `R,L`.
    pub fn parse(text: &str) -> Result<QuiverA> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty quiver".into()));
        }
        if t.contains("->") || t.contains("<-") || t.chars().all(|c| c.is_ascii_digit()) {
            parse_arrows(&t)
        } else {
            parse_compact(&t)
        }
    }
}

fn parse_compact(t: &str) -> Result<QuiverA> {
    let mut dirs = Vec::new();
    for tok in t.split(',') {
        match tok {
            "R" | "r" => dirs.push(Direction::Right),
            "L" | "l" => dirs.push(Direction::Left),
            _ => return Err(Error::Parse(format!("unknown edge token '{tok}'"))),
        }
    }
    Ok(QuiverA::new(dirs))
}

fn parse_arrows(t: &str) -> Result<QuiverA> {
    let bytes = t.as_bytes();
    let mut pos = 0;
    let read_num = |pos: &mut usize| -> Result<usize> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        t[start..*pos]
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("expected vertex number at offset {start}")))
    };
    let first = read_num(&mut pos)?;
    if first != 1 {
        return Err(Error::Parse("vertices must be numbered from 1".into()));
    }
    let mut prev = first;
    let mut dirs = Vec::new();
    while pos < bytes.len() {
        let arrow = t.get(pos..pos + 2).unwrap_or("");
        let dir = match arrow {
            "->" => Direction::Right,
            "<-" => Direction::Left,
            _ => return Err(Error::Parse(format!("expected '->' or '<-' at offset {pos}"))),
        };
        pos += 2;
        let v = read_num(&mut pos)?;
        if v != prev + 1 {
            return Err(Error::Parse(format!("vertex {v} follows {prev}")));
        }
        prev = v;
        dirs.push(dir);
    }
    Ok(QuiverA::new(dirs))
}

impl FromStr for QuiverA {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        QuiverA::parse(s)
    }
}

impl fmt::Display for QuiverA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")?;
        for (k, d) in self.directions.iter().enumerate() {
            let arrow = match d {
                Direction::Right => "->",
                Direction::Left => "<-",
            };
            write!(f, "{arrow}{}", k + 2)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimVector(Vec<usize>);

impl DimVector {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::LengthMismatch { expected: 1, got: 0 });
        }
        if entries.contains(&0) {
            return Err(Error::NonPositiveDimension);
        }
        Ok(DimVector(entries))
    }

    /// Checks the length against the quiver as well.
    pub fn for_quiver(q: &QuiverA, entries: Vec<usize>) -> Result<Self> {
        if entries.len() != q.r() {
            return Err(Error::LengthMismatch {
                expected: q.r(),
                got: entries.len(),
            });
        }
        DimVector::new(entries)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad dimension '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        DimVector::new(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based entry.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub i: usize,
    pub j: usize,
}

impl Interval {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || i > j {
            return Err(Error::Shape(format!("invalid interval [{i},{j}]")));
        }
        Ok(Interval { i, j })
    }

    pub fn contains(&self, v: usize) -> bool {
        self.i <= v && v <= self.j
    }

    /// 0/1 characteristic vector of length `r`.
    pub fn dim_vector(&self, r: usize) -> Vec<i64> {
        (1..=r).map(|v| i64::from(self.contains(v))).collect()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i, self.j)
    }
}

/// `sum n_i m_i - sum_a n_{t(a)} m_{h(a)}`.
pub fn euler_form(q: &QuiverA, n: &[i64], m: &[i64]) -> Result<i64> {
    let r = q.r();
    for v in [n, m] {
        if v.len() != r {
            return Err(Error::LengthMismatch {
                expected: r,
                got: v.len(),
            });
        }
    }
    let diag: i64 = n.iter().zip(m).map(|(a, b)| a * b).sum();
    let edges: i64 = (1..r).map(|a| n[q.tail(a) - 1] * m[q.head(a) - 1]).sum();
    Ok(diag - edges)
}
