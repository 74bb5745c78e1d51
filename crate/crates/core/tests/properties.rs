mod common;

use common::props;

#[test]
fn groebner_bases_and_membership() {
    props::groebner_bases_and_membership();
}

#[test]
fn weyl_algebra_identities() {
    props::weyl_algebra_identities();
}

#[test]
fn membership_is_invariant_under_linear_changes() {
    props::membership_is_invariant_under_linear_changes();
}

#[test]
fn computed_modules_are_logarithmic_and_closed() {
    props::computed_modules_are_logarithmic_and_closed();
}

#[test]
fn v0_dimensions_match_brute_force() {
    props::v0_dimensions_match_brute_force();
}

#[test]
fn free_plane_curves_are_generated_by_fields() {
    props::free_plane_curves_are_generated_by_fields();
}
