mod common;

#[test]
fn restriction_is_functorial() {
    common::restriction_functoriality().unwrap();
}

#[test]
fn coboundary_squares_to_zero() {
    common::coboundary_squares_to_zero().unwrap();
}

#[test]
fn g_a_takes_values_one_and_two() {
    common::g_a_values().unwrap();
}

#[test]
fn lcf_is_bounded_by_one_half() {
    common::lcf_bound().unwrap();
}

#[test]
fn euler_number_survives_doubling() {
    common::lcf_doubling_invariance().unwrap();
}

#[test]
fn total_space_is_face_consistent_and_round_trips() {
    common::total_space_consistency().unwrap();
}

#[test]
fn collisions_match_non_classicality() {
    common::collision_iff_nonclassical().unwrap();
}
