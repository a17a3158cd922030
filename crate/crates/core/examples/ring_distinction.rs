//! CP^3 and S^4 x S^2 share their Poincare series but not their ring
//! structure: only the cylinder has two degree-2 classes with zero product.

use gkm_cm::cm::duflot_series;
use gkm_cm::io::corpus_model;

fn main() {
    for name in ["tetrahedron", "cylinder"] {
        let m = corpus_model(name).unwrap();
        let series = duflot_series(&m.complex.lambda_vector().unwrap());
        let zd = m.complex.zero_divisor_pairs_deg2().unwrap();
        println!(
            "{name:<12} {series}  zero-divisor pairs: {} {:?}",
            zd.count, zd.witnesses
        );
    }
}
