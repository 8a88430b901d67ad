mod common;

use proptest::prelude::*;

use qbfun::quiver::{euler_form, Interval, QuiverA};

fn vector(r: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, r)
}

proptest! {
    #[test]
    fn turning_sequence_alternates(q in common::quiver(9)) {
        let nu = q.sinks_sources();
        prop_assert_eq!(nu.first(), Some(&1));
        prop_assert_eq!(nu.last(), Some(&q.r()));
        let interior = &nu[1..nu.len() - 1];
        for w in interior.windows(2) {
            prop_assert!(q.is_sink(w[0]) != q.is_sink(w[1]));
            prop_assert!(q.is_source(w[0]) != q.is_source(w[1]));
        }
        for &v in interior {
            prop_assert!(q.is_sink(v) || q.is_source(v));
        }
        // recomputing from the directions gives the same sequence
        let rebuilt = QuiverA::new(q.directions().to_vec());
        prop_assert_eq!(rebuilt.sinks_sources(), nu);
        prop_assert_eq!(QuiverA::parse(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn dual_is_an_involution_swapping_sinks_and_sources(q in common::quiver(9)) {
        let d = q.dual();
        prop_assert_eq!(d.dual(), q.clone());
        prop_assert_eq!(d.sinks_sources(), q.sinks_sources());
        for v in 2..q.r() {
            prop_assert_eq!(q.is_sink(v), d.is_source(v));
            prop_assert_eq!(q.is_source(v), d.is_sink(v));
        }
    }

    #[test]
    fn euler_form_is_bilinear(
        (q, n, m, m2) in common::quiver(8).prop_flat_map(|q| {
            let r = q.r();
            (Just(q), vector(r), vector(r), vector(r))
        }),
    ) {
        let sum: Vec<i64> = m.iter().zip(&m2).map(|(a, b)| a + b).collect();
        prop_assert_eq!(
            euler_form(&q, &n, &sum).unwrap(),
            euler_form(&q, &n, &m).unwrap() + euler_form(&q, &n, &m2).unwrap()
        );
        prop_assert_eq!(
            euler_form(&q, &sum, &n).unwrap(),
            euler_form(&q, &m, &n).unwrap() + euler_form(&q, &m2, &n).unwrap()
        );
        prop_assert_eq!(euler_form(&q, &n, &vec![0; q.r()]).unwrap(), 0);
    }

    #[test]
    fn interval_pairs_on_euler_form(
        (q, i, j) in common::quiver(8).prop_flat_map(|q| {
            let r = q.r();
            (Just(q), 1..=r).prop_flat_map(move |(q, i)| (Just(q), Just(i), i..=r))
        }),
    ) {
        let r = q.r();
        let iv = Interval::new(i, j).unwrap().dim_vector(r);
        prop_assert_eq!(euler_form(&q, &iv, &iv).unwrap(), 1);
        // an arrow from the end of one interval into the start of the next
        if j < r {
            let next = Interval::new(j + 1, r).unwrap().dim_vector(r);
            let (from, to) = if q.tail(j) == j { (&iv, &next) } else { (&next, &iv) };
            prop_assert_eq!(euler_form(&q, from, to).unwrap(), -1);
        }
    }
}
