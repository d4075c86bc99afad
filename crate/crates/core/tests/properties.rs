mod common;

macro_rules! suite {
    ($name:ident) => {
        #[test]
        fn $name() {
            if let Err(e) = common::$name() {
                panic!("{e}");
            }
        }
    };
}

suite!(purifier_symmetry);
suite!(min_cut_oracle);
suite!(relabel_commutes_with_pullback);
suite!(pullback_functoriality);
suite!(permutation_group_laws);
suite!(instance_set_closure);
suite!(membership_certificates);
suite!(rank_certificates);
suite!(sa_ssa_nonnegative);
suite!(double_description_order_invariance);
suite!(canonical_lookup);
suite!(fixture_files);
