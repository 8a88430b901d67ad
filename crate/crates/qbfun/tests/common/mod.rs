#![allow(dead_code)]

use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qbfun::invariant::{enumerate_invariants, InvariantIndex, MatrixRep};
use qbfun::linalg::{rat, Matrix};
use qbfun::quiver::{DimVector, Direction, QuiverA};

#[derive(Debug, Clone)]
pub struct Instance {
    pub quiver: QuiverA,
    pub dims: DimVector,
    pub invariants: Vec<InvariantIndex>,
}

pub fn directions(r: usize) -> impl Strategy<Value = Vec<Direction>> {
    prop::collection::vec(prop_oneof![Just(Direction::Right), Just(Direction::Left)], r - 1)
}

pub fn quiver(max_r: usize) -> impl Strategy<Value = QuiverA> {
    (2..=max_r).prop_flat_map(directions).prop_map(QuiverA::new)
}

/// Instance with at least one invariant.
pub fn instance(max_r: usize, max_n: usize) -> impl Strategy<Value = Instance> {
    (2..=max_r)
        .prop_flat_map(move |r| (directions(r), prop::collection::vec(1..=max_n, r)))
        .prop_filter_map("no invariants", |(dirs, dims)| {
            let quiver = QuiverA::new(dirs);
            let dims = DimVector::new(dims).unwrap();
            let invariants = enumerate_invariants(&quiver, &dims);
            (!invariants.is_empty()).then_some(Instance {
                quiver,
                dims,
                invariants,
            })
        })
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rat(rng.gen_range(-3..=3)))
}

pub fn random_rep(rng: &mut StdRng, q: &QuiverA, n: &DimVector) -> MatrixRep {
    MatrixRep {
        maps: (1..q.r())
            .map(|a| random_matrix(rng, n.at(q.head(a)), n.at(q.tail(a))))
            .collect(),
    }
}

pub fn random_invertible(rng: &mut StdRng, size: usize) -> Matrix {
    loop {
        let g = random_matrix(rng, size, size);
        if !g.det().unwrap().is_zero() {
            return g;
        }
    }
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

