//! Thom class tuples of every face of the tetrahedron (CP^3 with T^3).

use gkm_cm::io::corpus_model;

fn main() {
    let m = corpus_model("tetrahedron").unwrap();
    for (face, check) in m
        .complex
        .faces()
        .iter()
        .zip(m.complex.verify_thom_membership())
    {
        let t = m.complex.thom_tuple(&face.id).unwrap();
        let values: Vec<String> = t.values().iter().map(ToString::to_string).collect();
        println!(
            "{:<6} in algebra: {:<5} ({})",
            face.id,
            check.passed,
            values.join("; ")
        );
    }
}
