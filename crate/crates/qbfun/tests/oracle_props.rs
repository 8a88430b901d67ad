mod common;

use proptest::prelude::*;

use qbfun::oracle::{apply_bernstein_multi, grad_log_check, verify_one_variable, Budget};
use qbfun::Error;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_agrees_with_the_closed_formula(inst in common::instance(4, 2)) {
        let budget = Budget::default();
        for idx in &inst.invariants {
            match verify_one_variable(&inst.quiver, &inst.dims, idx, &budget) {
                Ok(c) => {
                    prop_assert!(c.matches, "{} vs {}", c.oracle.b.render(), c.engine.render());
                    prop_assert!(c.oracle.b.root_shifts().keys().all(|&c| c > 0));
                }
                Err(Error::Budget { .. }) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }

    #[test]
    fn several_variable_identity_holds(inst in common::instance(4, 2), bits in any::<u8>()) {
        let l = inst.invariants.len();
        prop_assume!(l <= 3);
        let m: Vec<u64> = (0..l).map(|k| u64::from(bits >> k & 1)).collect();
        match apply_bernstein_multi(&inst.quiver, &inst.dims, &m, &Budget::default()) {
            Ok(c) => prop_assert!(c.matches, "m={:?}: {} vs {}", m, c.vars.render(&c.oracle), c.vars.render(&c.engine)),
            Err(Error::Budget { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn gradient_at_the_generic_point_is_the_exact_diagram(inst in common::instance(6, 4)) {
        for idx in &inst.invariants {
            prop_assert!(grad_log_check(&inst.quiver, &inst.dims, idx).unwrap().matches);
        }
    }
}
