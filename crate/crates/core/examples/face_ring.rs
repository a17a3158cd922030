//! Checks the face ring relations tau_F tau_G = tau_{F v G} sum_E tau_E on
//! a model given on the command line (default: the S^4 model).

use gkm_cm::faces::RelationOptions;
use gkm_cm::io::load_model;

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "corpus/s4_t2".into());
    let m = load_model(&path).unwrap();
    let rep = m
        .complex
        .verify_face_ring_relations(RelationOptions::default())
        .unwrap();
    for p in rep.pairs.iter().filter(|p| p.components.len() != 1) {
        println!(
            "{} * {}: join {:?}, components {:?}, residual zero {}",
            p.first, p.second, p.join, p.components, p.residual_zero
        );
    }
    println!("{} pairs, relations hold: {}", rep.pairs.len(), rep.holds());
}
