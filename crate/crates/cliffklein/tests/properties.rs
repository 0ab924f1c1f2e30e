mod support;

use support::props;

#[test]
fn blade_products_exhaustive() {
    props::blade_products_exhaustive();
}

#[test]
fn blade_square_and_commutation_laws() {
    props::blade_square_and_commutation_laws();
}

#[test]
fn reversion_and_star_are_anti_automorphisms() {
    props::reversion_and_star_are_anti_automorphisms().unwrap();
}

#[test]
fn morphisms_commute_with_star() {
    props::morphisms_commute_with_star().unwrap();
}

#[test]
fn jordan_recomposes_and_commutes() {
    props::jordan_recomposes_and_commutes().unwrap();
}

#[test]
fn jordan_is_unique() {
    props::jordan_is_unique().unwrap();
}

#[test]
fn elliptic_part_has_bounded_powers() {
    props::elliptic_part_has_bounded_powers().unwrap();
}

#[test]
fn cone_disjointness_matches_sampling() {
    props::cone_disjointness_matches_sampling().unwrap();
}

#[test]
fn space_form_duality() {
    props::space_form_duality();
}

#[test]
fn tangential_matches_bilinear_maps() {
    props::tangential_matches_bilinear_maps().unwrap();
}
