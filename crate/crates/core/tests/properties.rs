mod common;

macro_rules! property_tests {
    ($($name:ident),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                if let Err(e) = common::$name() {
                    panic!("{e}");
                }
            }
        )*
    };
}

property_tests!(
    integer_and_rational_axioms,
    residue_axioms,
    residue_reduction_is_a_homomorphism,
    cyclotomic_axioms,
    cyclotomic_root_sums,
    series_product_laws,
    inverse_is_two_sided,
    u_undoes_rescale,
    fit_recovers_combination,
    leibniz_rule,
    leibniz_rule_in_w,
    e2_derivative,
    serre_derivative_is_modular,
    series_text_roundtrip,
    table_roundtrip,
    u_star_partitions_indices,
);

#[test]
fn every_property_is_listed() {
    assert_eq!(common::PROPERTIES.len(), 16);
}
