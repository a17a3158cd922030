//! One line per acceptance criterion. All comparisons are exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use gkm_cm::cm::{
    ab_alternating_series, betti_binomial, betti_from_lambda, cm_verdict, duflot_series,
    euler_identity, Verdict,
};
use gkm_cm::exact::scalar::{int, ratio};
use gkm_cm::exact::{
    subspace_intersection, subspace_sum, GradedPoly, Monomial, RationalMatrix, Scalar, SeriesQ,
};
use gkm_cm::faces::{LambdaVector, RelationOptions};
use gkm_cm::gkm::{GkmEdge, GkmGraph, GkmVertex, VertexTuple};
use gkm_cm::io::{corpus_model, run_command, Command, Model, Results, RunOptions, VALID_CORPUS};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exact arithmetic throughout: every numeric comparison has zero tolerance.
const TOLERANCE: i64 = 0;
const MAX_DEGREE: usize = 8;
const RANDOM_CASES: usize = 1000;
const SEED: u64 = 0x6b6d_2024;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);
type Suite = fn(&mut ChaCha8Rng) -> Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn model(name: &str) -> Model {
    corpus_model(name).expect("corpus model loads")
}

fn lambda(name: &str) -> LambdaVector {
    model(name).complex.lambda_vector().expect("lambda vector")
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| int(x)).collect()
}

fn c1_lambda() -> Check {
    let t = lambda("tetrahedron");
    let c = lambda("cylinder");
    ensure(
        t.counts() == [4, 6, 4, 1],
        format!("tetrahedron {:?}", t.counts()),
    )?;
    ensure(
        c.counts() == t.counts(),
        format!("cylinder {:?}", c.counts()),
    )?;
    Ok("tetrahedron = cylinder = (4, 6, 4, 1)".into())
}

fn c2_betti() -> Check {
    let l = LambdaVector::new(3, 0, vec![4, 6, 4, 1]).unwrap();
    let numerator = betti_from_lambda(&l)
        .map_err(|e| e.to_string())?
        .coefficients;
    let binomial = betti_binomial(&l);
    ensure(
        numerator == ints(&[1, 1, 1, 1]),
        format!("numerator {numerator:?}"),
    )?;
    ensure(
        binomial == ints(&[1, 1, 1, 1]),
        format!("binomial {binomial:?}"),
    )?;
    for name in VALID_CORPUS {
        let l = lambda(name);
        let k = l.torus_rank() - l.min_orbit_dim();
        // The same formula in rank r - b computes the numerator when b > 0.
        let shifted = LambdaVector::new(k, 0, l.counts().to_vec()).unwrap();
        let num = betti_from_lambda(&l)
            .map_err(|e| e.to_string())?
            .coefficients;
        let bin = betti_binomial(&shifted);
        ensure(
            num == bin,
            format!("{name}: numerator {num:?} vs binomial {bin:?}"),
        )?;
    }
    Ok(format!(
        "(1,1,1,1) both ways; methods agree on {} corpus models",
        VALID_CORPUS.len()
    ))
}

fn c3_series() -> Check {
    for name in VALID_CORPUS {
        let l = lambda(name);
        ensure(
            duflot_series(&l) == ab_alternating_series(&l),
            format!("{name}: series differ"),
        )?;
    }
    let l = LambdaVector::new(3, 1, vec![3, 3, 1]).unwrap();
    let expected = SeriesQ::from_fraction(ints(&[1, 0, 1, 0, 1]), ints(&[1, 0, -2, 0, 1]))
        .map_err(|e| e.to_string())?;
    let got = duflot_series(&l);
    ensure(got == expected, format!("S5 series {got}"))?;
    Ok(format!(
        "duflot = alternating on {} models; (3,3,1) gives {got}",
        VALID_CORPUS.len()
    ))
}

fn c4_hilbert() -> Check {
    for name in VALID_CORPUS {
        let m = model(name);
        let h = m.graph.gkm_hilbert(MAX_DEGREE).map_err(|e| e.to_string())?;
        let lam = m.complex.lambda_vector().unwrap();
        let exp = duflot_series(&lam).expand(2 * MAX_DEGREE);
        for (d, &v) in h.values.iter().enumerate() {
            let diff = Scalar::from_integer((v as i64).into()) - &exp[2 * d];
            ensure(
                diff.abs() <= int(TOLERANCE),
                format!("{name} degree {d}: {v} vs {}", exp[2 * d]),
            )?;
        }
        ensure(
            exp.iter().skip(1).step_by(2).all(Zero::is_zero),
            format!("{name}: odd terms"),
        )?;
    }
    let s4 = model("s4_t2").graph.gkm_hilbert(MAX_DEGREE).unwrap().values;
    ensure(s4[..5] == [1, 2, 4, 6, 8], format!("s4_t2 {s4:?}"))?;
    Ok(format!(
        "D = {MAX_DEGREE} on {} models; s4_t2 {:?}, dim H^2 = {}",
        VALID_CORPUS.len(),
        s4,
        s4[1]
    ))
}

fn c5_thom() -> Check {
    let mut faces = 0;
    for name in VALID_CORPUS {
        let m = model(name);
        for t in m.complex.verify_thom_membership() {
            ensure(
                t.passed,
                format!("{name}: {} fails on {:?}", t.face, t.failing_edges),
            )?;
            faces += 1;
        }
        let span = m
            .complex
            .thom_spanning_test(MAX_DEGREE)
            .map_err(|e| e.to_string())?;
        if let Some(s) = span.degrees.iter().find(|s| s.span_dim != s.target) {
            return Err(format!(
                "{name} degree {}: span {} vs {}",
                s.degree, s.span_dim, s.target
            ));
        }
        ensure(
            span.degrees.len() == MAX_DEGREE + 1,
            format!("{name}: degrees missing"),
        )?;
    }
    Ok(format!(
        "{faces} Thom tuples are GKM classes; spans match through degree {MAX_DEGREE}"
    ))
}

fn c6_relations() -> Check {
    let strict = RelationOptions {
        sign_retry: false,
        ..Default::default()
    };
    let mut pairs = 0;
    for name in VALID_CORPUS {
        let rep = model(name)
            .complex
            .verify_face_ring_relations(strict)
            .map_err(|e| e.to_string())?;
        if let Some(p) = rep.pairs.iter().find(|p| !p.residual_zero) {
            return Err(format!("{name}: {} * {}", p.first, p.second));
        }
        pairs += rep.pairs.len();
    }
    let s4 = model("s4_t2")
        .complex
        .verify_face_ring_relations(strict)
        .unwrap();
    let multi = s4
        .pairs
        .iter()
        .find(|p| p.first == "arc_e1" && p.second == "arc_e2")
        .ok_or("pair e1,e2")?;
    ensure(
        multi.components.len() == 2 && multi.residual_zero,
        "s4_t2 two-component intersection",
    )?;
    let cyl = model("cylinder");
    let prod = cyl
        .complex
        .thom_tuple("top")
        .unwrap()
        .mul(&cyl.complex.thom_tuple("bottom").unwrap());
    ensure(prod.is_zero(), "cylinder top * bottom is nonzero")?;
    Ok(format!(
        "{pairs} pairs with zero residual; arc_e1*arc_e2 has 2 components; top*bottom = 0"
    ))
}

fn c7_distinction() -> Check {
    let (t, c) = (model("tetrahedron"), model("cylinder"));
    let zt = t
        .complex
        .zero_divisor_pairs_deg2()
        .map_err(|e| e.to_string())?;
    let zc = c
        .complex
        .zero_divisor_pairs_deg2()
        .map_err(|e| e.to_string())?;
    let (lt, lc) = (
        t.complex.lambda_vector().unwrap(),
        c.complex.lambda_vector().unwrap(),
    );
    ensure(zt.count == 0, format!("tetrahedron has {} pairs", zt.count))?;
    ensure(zc.count >= 1, "cylinder has no zero-divisor pair")?;
    ensure(duflot_series(&lt) == duflot_series(&lc), "series differ")?;
    ensure(
        betti_from_lambda(&lt).unwrap() == betti_from_lambda(&lc).unwrap(),
        "Betti vectors differ",
    )?;
    Ok(format!(
        "pairs 0 vs {} {:?}; equal series and Betti vectors",
        zc.count, zc.witnesses
    ))
}

fn c8_euler() -> Check {
    for name in VALID_CORPUS {
        ensure(
            euler_identity(&lambda(name)),
            format!("{name}: identity fails"),
        )?;
    }
    let missing = run_command(
        Command::Verdict,
        "corpus/tetrahedron_missing_facet",
        RunOptions::default(),
    );
    ensure(
        missing.exit_code == 1,
        format!("missing facet exit {}", missing.exit_code),
    )?;
    match &missing.report.results {
        Results::Verdict(v) => match &v.verdict {
            Verdict::Inconsistent(f) if f.iter().any(|f| f.flag == "euler_identity") => {}
            other => return Err(format!("missing facet verdict {other}")),
        },
        other => return Err(format!("missing facet results {other:?}")),
    }
    let bad = run_command(
        Command::Verdict,
        "corpus/tetrahedron_bad_weight",
        RunOptions::default(),
    );
    ensure(
        bad.exit_code == 1,
        format!("bad weight exit {}", bad.exit_code),
    )?;
    match &bad.report.results {
        Results::Invalid { graph, .. } if !graph.is_valid() => {}
        other => return Err(format!("bad weight results {other:?}")),
    }
    Ok(format!(
        "identity on {} models; missing facet fails euler_identity (exit 1); bad weight fails validation (exit 1)",
        VALID_CORPUS.len()
    ))
}

fn c9_verdicts() -> Check {
    let expect = [
        ("tetrahedron", Verdict::ConsistentEquivariantlyFormal, 6),
        ("triangle", Verdict::ConsistentCm, 5),
        ("interval", Verdict::ConsistentCm, 3),
    ];
    let mut seen = Vec::new();
    for (name, verdict, dim) in expect {
        let m = model(name);
        let v = cm_verdict(&m.graph, &m.complex, MAX_DEGREE, RelationOptions::default())
            .map_err(|e| e.to_string())?;
        ensure(v.verdict == verdict, format!("{name}: {}", v.verdict))?;
        ensure(
            v.implied_manifold_dim == dim,
            format!("{name}: dim {}", v.implied_manifold_dim),
        )?;
        let cli = run_command(
            Command::Verdict,
            &format!("corpus/{name}"),
            RunOptions::default(),
        );
        ensure(
            cli.exit_code == 0,
            format!("{name}: exit {}", cli.exit_code),
        )?;
        seen.push(format!("{name} {} dim {dim}", v.verdict));
    }
    Ok(seen.join("; "))
}

// Randomized suites.

fn rand_scalar(rng: &mut ChaCha8Rng, nonzero: bool) -> Scalar {
    loop {
        let x = ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        if !nonzero || !x.is_zero() {
            return x;
        }
    }
}

fn rand_covector(rng: &mut ChaCha8Rng, r: usize) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..r).map(|_| int(rng.gen_range(-2..=2))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn rand_edge(rng: &mut ChaCha8Rng, n: usize, r: usize, id: usize) -> GkmEdge {
    let u = rng.gen_range(0..n);
    let v = (u + rng.gen_range(1..n)) % n;
    let w = rand_covector(rng, r);
    let sign = if rng.gen_bool(0.5) { int(1) } else { int(-1) };
    GkmEdge {
        id: format!("e{id}"),
        endpoints: (format!("v{u}"), format!("v{v}")),
        weight_at_v: w.iter().map(|x| x * &sign).collect(),
        weight_at_u: w,
    }
}

/// A random graph with `b = 0`; not necessarily a valid GKM graph.
fn rand_graph(rng: &mut ChaCha8Rng) -> (usize, usize, Vec<GkmVertex>, Vec<GkmEdge>) {
    let r = rng.gen_range(1..=3);
    let n = rng.gen_range(2..=4);
    let vertices = (0..n)
        .map(|i| GkmVertex {
            id: format!("v{i}"),
            isotropy_basis: RationalMatrix::identity(r),
        })
        .collect();
    let m = rng.gen_range(1..=5);
    let edges = (0..m).map(|i| rand_edge(rng, n, r, i)).collect();
    (r, n, vertices, edges)
}

fn hilbert(r: usize, v: &[GkmVertex], e: &[GkmEdge], d: usize) -> Vec<usize> {
    GkmGraph::new(r, 0, v.to_vec(), e.to_vec())
        .unwrap()
        .hilbert_unchecked(d)
        .unwrap()
        .values
}

fn p1_scaling(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for case in 0..RANDOM_CASES {
        let (r, _, vertices, edges) = if case % 2 == 0 {
            rand_graph(rng)
        } else {
            let name = VALID_CORPUS[rng.gen_range(0..VALID_CORPUS.len())];
            let g = model(name).graph;
            (g.torus_rank(), 0, g.vertices().to_vec(), g.edges().to_vec())
        };
        let b = if case % 2 == 0 {
            0
        } else {
            r - vertices[0].isotropy_basis.num_rows()
        };
        let scaled: Vec<GkmEdge> = edges
            .iter()
            .map(|e| {
                let (cu, cv) = (rand_scalar(rng, true), rand_scalar(rng, true));
                GkmEdge {
                    weight_at_u: e.weight_at_u.iter().map(|x| x * &cu).collect(),
                    weight_at_v: e.weight_at_v.iter().map(|x| x * &cv).collect(),
                    ..e.clone()
                }
            })
            .collect();
        let d = 3;
        let base = GkmGraph::new(r, b, vertices.clone(), edges)
            .unwrap()
            .hilbert_unchecked(d)
            .unwrap();
        let other = GkmGraph::new(r, b, vertices, scaled)
            .unwrap()
            .hilbert_unchecked(d)
            .unwrap();
        ensure(
            base == other,
            format!("case {case}: {:?} vs {:?}", base.values, other.values),
        )?;
    }
    Ok(())
}

fn p2_monotone(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for case in 0..RANDOM_CASES {
        let (r, n, vertices, mut edges) = rand_graph(rng);
        let before = hilbert(r, &vertices, &edges, 3);
        edges.push(rand_edge(rng, n, r, edges.len()));
        let after = hilbert(r, &vertices, &edges, 3);
        ensure(
            before.iter().zip(&after).all(|(a, b)| b <= a),
            format!("case {case}: {before:?} then {after:?}"),
        )?;
    }
    Ok(())
}

fn p3_products(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let bases: Vec<(Model, Vec<Vec<VertexTuple>>)> = VALID_CORPUS
        .iter()
        .map(|name| {
            let m = model(name);
            let b = (0..=2).map(|d| m.graph.gkm_basis(d).unwrap()).collect();
            (m, b)
        })
        .collect();
    for case in 0..RANDOM_CASES {
        let (m, basis) = &bases[rng.gen_range(0..bases.len())];
        let mut pick = |d: usize| {
            basis[d].iter().fold(VertexTuple::zero(&m.graph), |acc, t| {
                let s = t.scale(&rand_scalar(rng, false));
                if acc.is_zero() {
                    s
                } else {
                    acc.add(&s).unwrap()
                }
            })
        };
        let (d1, d2) = (case % 3, (case / 3) % 3);
        let (a, b) = (pick(d1), pick(d2));
        let prod = a.mul(&b);
        ensure(
            m.graph.is_in_gkm_algebra(&prod),
            format!("case {case} on {}", m.name),
        )?;
    }
    Ok(())
}

fn rand_poly(rng: &mut ChaCha8Rng, n: usize) -> GradedPoly {
    let mut p = GradedPoly::zero(n);
    for _ in 0..rng.gen_range(0..5) {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        p.add_term(Monomial::new(e), rand_scalar(rng, false));
    }
    p
}

fn rand_linear(rng: &mut ChaCha8Rng, from: usize, to: usize) -> Vec<GradedPoly> {
    (0..from)
        .map(|_| GradedPoly::linear(&(0..to).map(|_| rand_scalar(rng, false)).collect::<Vec<_>>()))
        .collect()
}

fn p4_substitution(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for case in 0..RANDOM_CASES {
        let (n, m, k) = (
            rng.gen_range(1..=3),
            rng.gen_range(1..=3),
            rng.gen_range(1..=3),
        );
        let f = rand_poly(rng, n);
        let a = rand_linear(rng, n, m);
        let b = rand_linear(rng, m, k);
        let composed: Vec<GradedPoly> = a.iter().map(|l| l.substitute(&b).unwrap()).collect();
        let stepwise = f.substitute(&a).unwrap().substitute(&b).unwrap();
        let direct = f.substitute(&composed).unwrap();
        ensure(
            stepwise == direct,
            format!("case {case}: {stepwise} vs {direct}"),
        )?;
    }
    Ok(())
}

fn rand_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RationalMatrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| int(rng.gen_range(-2..=2))).collect())
        .collect();
    RationalMatrix::from_rows(cols, data).unwrap()
}

fn p5_intersection(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for case in 0..RANDOM_CASES {
        let n = rng.gen_range(1..=5);
        let (ra, rb) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let a = rand_matrix(rng, ra, n);
        let b = rand_matrix(rng, rb, n);
        let i = subspace_intersection(&a, &b).map_err(|e| e.to_string())?;
        let s = subspace_sum(&a, &b).map_err(|e| e.to_string())?;
        ensure(
            i.rank() == a.rank() + b.rank() - s.rank(),
            format!("case {case}: dimensions"),
        )?;
        ensure(
            a.row_space_contains(&i).unwrap() && b.row_space_contains(&i).unwrap(),
            format!("case {case}: containment"),
        )?;
    }
    Ok(())
}

fn c10_properties() -> Check {
    let suites: [(&str, Suite); 5] = [
        ("weight scaling", p1_scaling),
        ("edge insertion", p2_monotone),
        ("product closure", p3_products),
        ("substitution composition", p4_substitution),
        ("intersection dimension", p5_intersection),
    ];
    for (i, (name, suite)) in suites.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + i as u64);
        suite(&mut rng).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("5 suites x {RANDOM_CASES} seeded cases"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("lambda fixtures", c1_lambda),
        ("Betti fixtures", c2_betti),
        ("series identities", c3_series),
        ("GKM Hilbert vs series", c4_hilbert),
        ("Thom membership and spanning", c5_thom),
        ("face-ring relations", c6_relations),
        ("ring distinction", c7_distinction),
        ("Euler identity and negative controls", c8_euler),
        ("verdicts", c9_verdicts),
        ("randomized property suites", c10_properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
