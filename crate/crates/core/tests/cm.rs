use gkm_cm::cm::{
    ab_alternating_series, betti_binomial, betti_from_lambda, cm_verdict, duflot_series,
    euler_identity, BettiKind, Verdict,
};
use gkm_cm::exact::scalar::int;
use gkm_cm::exact::{Scalar, SeriesQ};
use gkm_cm::faces::{LambdaVector, RelationOptions};
use gkm_cm::io::{corpus_model, VALID_CORPUS};

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| int(x)).collect()
}

fn lambda(name: &str) -> LambdaVector {
    corpus_model(name).unwrap().complex.lambda_vector().unwrap()
}

#[test]
fn odd_sphere_series_coincides_with_cp2() {
    let l = LambdaVector::new(3, 1, vec![3, 3, 1]).unwrap();
    assert_eq!(duflot_series(&l), SeriesQ::new(ints(&[1, 0, 1, 0, 1]), 2));
    assert_eq!(duflot_series(&l), duflot_series(&lambda("cp2")));
}

#[test]
fn series_identities_on_corpus() {
    for name in VALID_CORPUS {
        let l = lambda(name);
        assert_eq!(duflot_series(&l), ab_alternating_series(&l), "{name}");
        assert!(euler_identity(&l), "{name}");
    }
}

#[test]
fn betti_methods_agree_on_corpus() {
    for name in VALID_CORPUS {
        let l = lambda(name);
        let betti = betti_from_lambda(&l).unwrap();
        assert!(betti.is_palindromic() && betti.is_nonnegative(), "{name}");
        if l.min_orbit_dim() == 0 {
            assert_eq!(betti.kind, BettiKind::Betti);
            assert_eq!(betti.coefficients, betti_binomial(&l), "{name}");
        } else {
            assert_eq!(betti.kind, BettiKind::NumeratorCoefficients);
        }
    }
    assert_eq!(
        betti_from_lambda(&lambda("tetrahedron"))
            .unwrap()
            .coefficients,
        ints(&[1, 1, 1, 1])
    );
    assert_eq!(
        betti_from_lambda(&lambda("s4_t2")).unwrap().coefficients,
        ints(&[1, 0, 1])
    );
}

#[test]
fn verdicts() {
    let run = |name: &str| {
        let m = corpus_model(name).unwrap();
        cm_verdict(&m.graph, &m.complex, 6, RelationOptions::default()).unwrap()
    };
    let expect = [
        ("tetrahedron", Verdict::ConsistentEquivariantlyFormal, 6),
        ("cylinder", Verdict::ConsistentEquivariantlyFormal, 6),
        ("s4_t2", Verdict::ConsistentEquivariantlyFormal, 4),
        ("sphere2", Verdict::ConsistentEquivariantlyFormal, 2),
        ("cp2", Verdict::ConsistentEquivariantlyFormal, 4),
        ("triangle", Verdict::ConsistentCm, 5),
        ("interval", Verdict::ConsistentCm, 3),
        ("s7_t4", Verdict::ConsistentCm, 7),
    ];
    for (name, verdict, dim) in expect {
        let v = run(name);
        assert_eq!(v.verdict, verdict, "{name}");
        assert_eq!(v.implied_manifold_dim, dim, "{name}");
        assert!(v.flags.all());
        let r = v.lambda.torus_rank();
        assert_eq!(v.krull_dim, r - v.lambda.min_orbit_dim());
    }
}

#[test]
fn missing_facet_is_inconsistent() {
    let m = corpus_model("tetrahedron_missing_facet").unwrap();
    let v = cm_verdict(&m.graph, &m.complex, 4, RelationOptions::default()).unwrap();
    let Verdict::Inconsistent(failures) = &v.verdict else {
        panic!("{}", v.verdict)
    };
    let flags: Vec<&str> = failures.iter().map(|f| f.flag.as_str()).collect();
    assert!(flags.contains(&"euler_identity"));
    assert!(!v.flags.euler_identity);
    assert!(failures.iter().all(|f| !f.witness.is_empty()));
}

#[test]
fn invalid_model_is_rejected_before_analysis() {
    let m = corpus_model("tetrahedron_bad_weight").unwrap();
    assert!(cm_verdict(&m.graph, &m.complex, 2, RelationOptions::default()).is_err());
}

#[test]
fn mismatched_graph_is_rejected() {
    let a = corpus_model("tetrahedron").unwrap();
    let b = corpus_model("cylinder").unwrap();
    assert!(cm_verdict(&a.graph, &b.complex, 2, RelationOptions::default()).is_err());
}

#[test]
fn tetrahedron_and_cylinder_differ_only_multiplicatively() {
    let (t, c) = (
        corpus_model("tetrahedron").unwrap(),
        corpus_model("cylinder").unwrap(),
    );
    let (lt, lc) = (
        t.complex.lambda_vector().unwrap(),
        c.complex.lambda_vector().unwrap(),
    );
    assert_eq!(duflot_series(&lt), duflot_series(&lc));
    assert_eq!(
        betti_from_lambda(&lt).unwrap(),
        betti_from_lambda(&lc).unwrap()
    );
    assert_eq!(
        t.graph.gkm_hilbert(5).unwrap(),
        c.graph.gkm_hilbert(5).unwrap()
    );
    assert_eq!(t.complex.zero_divisor_pairs_deg2().unwrap().count, 0);
    assert!(c.complex.zero_divisor_pairs_deg2().unwrap().count >= 1);
}
