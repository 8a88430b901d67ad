//! Rank parameters and the componentwise order on them.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariant::{check_dims, difference_map_spec, instantiate, MatrixRep};
use crate::quiver::{DimVector, QuiverA};

/// `rows[i-1][j-i]` is the rank of the block map on `i..=j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankParameter {
    rows: Vec<Vec<usize>>,
}

impl RankParameter {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<RankParameter> {
        let r = rows.len();
        for (k, row) in rows.iter().enumerate() {
            if row.len() != r - k {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {}",
                    k + 1,
                    row.len(),
                    r - k
                )));
            }
        }
        Ok(RankParameter { rows })
    }

    pub fn r(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.rows[i - 1][j - i]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }
}

pub fn rank_parameter(quiver: &QuiverA, n: &DimVector, rep: &MatrixRep) -> Result<RankParameter> {
    check_dims(quiver, n)?;
    rep.check_shapes(quiver, n)?;
    let r = quiver.r();
    let mut rows = Vec::with_capacity(r);
    for i in 1..=r {
        let mut row = vec![n.at(i)];
        for j in i + 1..=r {
            let spec = difference_map_spec(quiver, i, j);
            row.push(instantiate(&spec, n, rep)?.rank());
        }
        rows.push(row);
    }
    Ok(RankParameter { rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// `Less` means every entry of `a` is at most the matching entry of `b`,
/// so the orbit of `a` lies in the closure of the orbit of `b`.
pub fn closure_compare(a: &RankParameter, b: &RankParameter) -> Result<ClosureOrder> {
    if a.r() != b.r() {
        return Err(Error::Shape("rank parameters of different sizes".into()));
    }
    let (mut le, mut ge) = (true, true);
    for (ra, rb) in a.rows.iter().zip(&b.rows) {
        for (x, y) in ra.iter().zip(rb) {
            match x.cmp(y) {
                Ordering::Less => ge = false,
                Ordering::Greater => le = false,
                Ordering::Equal => {}
            }
        }
    }
    Ok(match (le, ge) {
        (true, true) => ClosureOrder::Equal,
        (true, false) => ClosureOrder::Less,
        (false, true) => ClosureOrder::Greater,
        (false, false) => ClosureOrder::Incomparable,
    })
}
