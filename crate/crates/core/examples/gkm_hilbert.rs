//! Builds the two-vertex GKM graph of the T^2-action on S^4 by hand and
//! computes the graded dimensions of its GKM algebra.

use gkm_cm::exact::scalar::int;
use gkm_cm::exact::RationalMatrix;
use gkm_cm::gkm::{GkmEdge, GkmGraph, GkmVertex};

fn main() {
    let vertex = |id: &str| GkmVertex {
        id: id.into(),
        isotropy_basis: RationalMatrix::identity(2),
    };
    let edge = |id: &str, w: [i64; 2]| GkmEdge {
        id: id.into(),
        endpoints: ("N".into(), "S".into()),
        weight_at_u: w.iter().map(|&c| int(c)).collect(),
        weight_at_v: w.iter().map(|&c| int(c)).collect(),
    };
    let g = GkmGraph::new(
        2,
        0,
        vec![vertex("N"), vertex("S")],
        vec![edge("x", [1, 0]), edge("y", [0, 1])],
    )
    .unwrap();
    println!("valid: {}", g.validate().is_valid());

    let h = g.gkm_hilbert(6).unwrap();
    println!("polynomial degrees:    {:?}", h.values);
    println!("cohomological degrees: {:?}", h.cohomological());
    for t in g.gkm_basis(2).unwrap() {
        let values: Vec<String> = t.values().iter().map(ToString::to_string).collect();
        println!("degree 2 class: ({})", values.join(", "));
    }
}
