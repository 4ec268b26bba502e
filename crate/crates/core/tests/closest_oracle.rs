mod common;

use common::{closest_matches_oracle, renyi, PAIRS};

#[test]
fn closest_lattice_matches_box_search() {
    for (a, b) in PAIRS {
        closest_matches_oracle(a, b, 2000).unwrap();
    }
}

#[test]
fn renyi_thirty_digits() {
    for (a, b) in PAIRS {
        renyi(a, b).unwrap();
    }
}
