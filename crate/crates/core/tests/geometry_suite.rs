mod common;

use common::{b_action, conjugation, digit_string, params, series_matches_delta, similarity, PAIRS};
use rauzy::geometry::{delta_of, delta_via_series, CubicSystem};

#[test]
fn series_equals_delta_up_to_1e4() {
    for (a, b) in PAIRS {
        series_matches_delta(a, b, 10_000).unwrap();
    }
}

#[test]
fn b_maps_delta_t_n_to_delta_t_n_plus_one() {
    for (a, b) in PAIRS {
        b_action(a, b).unwrap();
    }
}

#[test]
fn m_b_is_diagonal_m() {
    for (a, b) in PAIRS {
        similarity(a, b).unwrap();
    }
}

#[test]
fn conjugation_map_fixed_points() {
    for (a, b) in PAIRS {
        conjugation(a, b).unwrap();
    }
}

#[test]
fn series_examples() {
    let sys = CubicSystem::new(params(4, -2));
    let eq = |d: &[u32], n| delta_via_series(&digit_string(d, 4, -2), &sys).unwrap().same_point(&delta_of(n, &sys));
    assert!(eq(&[1], 1));
    assert!(eq(&[1, 1], 5));
    assert!(eq(&[1, 0, 0], 14));
}
