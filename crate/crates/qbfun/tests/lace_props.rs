mod common;

use num_traits::Zero;
use proptest::prelude::*;

use qbfun::invariant::{block_spec, evaluate_invariant};
use qbfun::lace::{
    complete_diagram, diagram_from_strands, diagram_to_matrices, exact_diagram, strand_multiset, LaceDiagram,
};
use qbfun::quiver::{DimVector, QuiverA};
use qbfun::rank::{closure_compare, rank_parameter, ClosureOrder, RankParameter};

fn ranks(q: &QuiverA, n: &DimVector, d: &LaceDiagram) -> RankParameter {
    rank_parameter(q, n, &diagram_to_matrices(q, n, d).unwrap()).unwrap()
}

/// Random partial matchings between neighbouring columns.
fn random_diagram(n: &DimVector, seed: u64) -> LaceDiagram {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let mut rng = common::rng(seed);
    let cols = n.entries();
    let edges = cols
        .windows(2)
        .map(|w| {
            let mut lefts: Vec<usize> = (1..=w[0]).collect();
            let mut rights: Vec<usize> = (1..=w[1]).collect();
            lefts.shuffle(&mut rng);
            rights.shuffle(&mut rng);
            let k = rng.gen_range(0..=w[0].min(w[1]));
            lefts.into_iter().zip(rights).take(k).collect()
        })
        .collect();
    LaceDiagram::new(cols.to_vec(), edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn exact_diagrams_are_minimal(inst in common::instance(6, 5)) {
        let (q, n) = (&inst.quiver, &inst.dims);
        for idx in &inst.invariants {
            let spec = block_spec(q, n, idx).unwrap();
            let d = exact_diagram(q, n, idx).unwrap();
            let value = |d: &LaceDiagram| evaluate_invariant(&spec, n, &diagram_to_matrices(q, n, d).unwrap()).unwrap();
            prop_assert!(!value(&d).is_zero());
            for c in d.connections() {
                prop_assert!(value(&d.without(&c)).is_zero(), "({},{}) without {:?}", idx.p, idx.q, c);
            }
        }
    }

    #[test]
    fn strands_resynthesize_the_rank_parameter(inst in common::instance(6, 5), seed in any::<u64>()) {
        let (q, n) = (&inst.quiver, &inst.dims);
        let mut diagrams = vec![complete_diagram(q, n).unwrap(), random_diagram(n, seed)];
        for idx in &inst.invariants {
            diagrams.push(exact_diagram(q, n, idx).unwrap());
        }
        for d in diagrams {
            let rebuilt = diagram_from_strands(n, &strand_multiset(&d)).unwrap();
            prop_assert_eq!(strand_multiset(&rebuilt), strand_multiset(&d));
            prop_assert_eq!(ranks(q, n, &rebuilt), ranks(q, n, &d));
        }
    }

    #[test]
    fn exact_orbits_lie_in_the_generic_closure(inst in common::instance(6, 5)) {
        let (q, n) = (&inst.quiver, &inst.dims);
        let generic = ranks(q, n, &complete_diagram(q, n).unwrap());
        for idx in &inst.invariants {
            let exact = ranks(q, n, &exact_diagram(q, n, idx).unwrap());
            let order = closure_compare(&exact, &generic).unwrap();
            prop_assert!(matches!(order, ClosureOrder::Less | ClosureOrder::Equal), "({},{}): {:?}", idx.p, idx.q, order);
        }
    }

    #[test]
    fn complete_diagram_is_generic(inst in common::instance(6, 5)) {
        let (q, n) = (&inst.quiver, &inst.dims);
        let a = diagram_to_matrices(q, n, &complete_diagram(q, n).unwrap()).unwrap();
        for idx in &inst.invariants {
            prop_assert!(!evaluate_invariant(&block_spec(q, n, idx).unwrap(), n, &a).unwrap().is_zero());
        }
    }
}
