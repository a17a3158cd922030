//! Closed-form series, Betti numbers and the Euler identity from face counts.

use gkm_cm::cm::{ab_alternating_series, betti_from_lambda, duflot_series, euler_characteristic};
use gkm_cm::faces::LambdaVector;

fn main() {
    for (label, r, b, counts) in [
        ("CP^3 or S^4 x S^2", 3, 0, vec![4, 6, 4, 1]),
        ("S^5", 3, 1, vec![3, 3, 1]),
        ("S^4", 2, 0, vec![2, 2, 1]),
        ("not a face count", 3, 0, vec![4, 6, 3, 1]),
    ] {
        let l = LambdaVector::new(r, b, counts).unwrap();
        let d = duflot_series(&l);
        let betti = betti_from_lambda(&l).unwrap();
        println!("{label}: {d}");
        println!(
            "  alternating form equal: {}",
            d == ab_alternating_series(&l)
        );
        println!(
            "  numerator: {:?}",
            betti
                .coefficients
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        );
        println!("  alternating face count: {}", euler_characteristic(&l));
    }
}
