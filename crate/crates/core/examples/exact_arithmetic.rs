//! Exact rationals, graded polynomials, matrices and rational series.

use gkm_cm::exact::scalar::{format_scalar, int, parse_scalar, ratio};
use gkm_cm::exact::{subspace_intersection, GradedPoly, RationalMatrix, SeriesQ};

fn main() {
    let x = GradedPoly::var(2, 0);
    let y = GradedPoly::var(2, 1);
    let p = &(&x + &y) * &(&x - &y);
    println!("(u1 + u2)(u1 - u2) = {p}");

    // u1 -> 2 v1, u2 -> v1 - v2
    let images = [
        GradedPoly::linear(&[int(2), int(0)]),
        GradedPoly::linear(&[int(1), int(-1)]),
    ];
    println!("after substitution: {}", p.substitute(&images).unwrap());

    let m = RationalMatrix::from_i64_rows(3, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).unwrap();
    let (rank, null) = m.rank_and_nullspace();
    for v in &null {
        let v: Vec<String> = v.iter().map(format_scalar).collect();
        println!("rank {rank}, kernel vector ({})", v.join(", "));
    }

    let a = RationalMatrix::from_i64_rows(3, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
    let b = RationalMatrix::from_i64_rows(3, &[&[0, 1, 0], &[0, 0, 1]]).unwrap();
    println!("intersection:\n{}", subspace_intersection(&a, &b).unwrap());

    let half = parse_scalar("1/2").unwrap();
    assert_eq!(half, ratio(1, 2));
    let s = SeriesQ::new(
        vec![int(1), int(0), int(1), int(0), int(1), int(0), int(1)],
        3,
    );
    println!(
        "{s} = {:?} + ...",
        s.expand(8)
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
}
