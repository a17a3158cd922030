//! Runs the full Cohen-Macaulay verdict on every bundled model.

use gkm_cm::cm::cm_verdict;
use gkm_cm::faces::RelationOptions;
use gkm_cm::io::{corpus_model, CORPUS};

fn main() {
    for (name, _) in CORPUS {
        let m = corpus_model(name).unwrap();
        match cm_verdict(&m.graph, &m.complex, 6, RelationOptions::default()) {
            Ok(v) => println!(
                "{name:<26} {} (dim M = {})",
                v.verdict, v.implied_manifold_dim
            ),
            Err(e) => println!("{name:<26} rejected: {e}"),
        }
    }
}
