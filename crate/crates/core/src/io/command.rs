use std::fmt;
use std::str::FromStr;

use super::report::{strings, thom_face};
use super::{
    load_model, BettiDocument, Model, ReportDocument, Results, SeriesDocument, VerdictDocument,
};
use crate::cm::{
    ab_alternating_series, betti_binomial, betti_from_lambda, cm_verdict, duflot_series,
    euler_characteristic, euler_identity, BettiVector, CmError,
};
use crate::faces::{FaceError, LambdaVector, RelationOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Command {
    Validate,
    Hilbert,
    Series,
    Betti,
    Euler,
    Thom,
    Relations,
    Span,
    ZeroDivisors,
    Verdict,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Validate,
        Command::Hilbert,
        Command::Series,
        Command::Betti,
        Command::Euler,
        Command::Thom,
        Command::Relations,
        Command::Span,
        Command::ZeroDivisors,
        Command::Verdict,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Hilbert => "hilbert",
            Command::Series => "series",
            Command::Betti => "betti",
            Command::Euler => "euler",
            Command::Thom => "thom",
            Command::Relations => "relations",
            Command::Span => "span",
            Command::ZeroDivisors => "zero-divisors",
            Command::Verdict => "verdict",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub max_degree: usize,
    pub format: OutputFormat,
    pub sign_retry: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_degree: 8,
            format: OutputFormat::Text,
            sign_retry: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: ReportDocument,
    /// The report rendered in the requested format.
    pub rendered: String,
    pub exit_code: i32,
}

pub fn run_command(command: Command, model_path: &str, options: RunOptions) -> RunOutput {
    let report = match load_model(model_path) {
        Ok(model) => run_on_model(command, &model, options),
        Err(e) => ReportDocument {
            command: command.name().into(),
            model: model_path.into(),
            max_degree: options.max_degree,
            results: Results::InputError {
                message: e.to_string(),
            },
            exit_status: 2,
        },
    };
    let rendered = match options.format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Machine => report.to_machine(),
    };
    RunOutput {
        exit_code: report.exit_status,
        report,
        rendered,
    }
}

pub fn run_on_model(command: Command, model: &Model, options: RunOptions) -> ReportDocument {
    let (results, exit_status) = analyse(command, model, options);
    ReportDocument {
        command: command.name().into(),
        model: model.name.clone(),
        max_degree: options.max_degree,
        results,
        exit_status,
    }
}

fn status(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn failure(message: String, input: bool) -> (Results, i32) {
    if input {
        (Results::InputError { message }, 2)
    } else {
        (Results::ModelError { message }, 1)
    }
}

fn face_failure(e: FaceError) -> (Results, i32) {
    let input = matches!(e, FaceError::Precondition(_));
    failure(e.to_string(), input)
}

fn cm_failure(e: CmError) -> (Results, i32) {
    match e {
        CmError::Face(f) => face_failure(f),
        other => failure(other.to_string(), false),
    }
}

fn betti_document(lambda: &LambdaVector, betti: &BettiVector) -> BettiDocument {
    BettiDocument {
        kind: betti.kind.clone(),
        coefficients: strings(&betti.coefficients),
        binomial: (lambda.min_orbit_dim() == 0).then(|| strings(&betti_binomial(lambda))),
        palindromic: betti.is_palindromic(),
        nonnegative: betti.is_nonnegative(),
    }
}

fn analyse(command: Command, model: &Model, options: RunOptions) -> (Results, i32) {
    let graph = &*model.graph;
    let complex = &model.complex;
    let graph_report = graph.validate();
    let complex_report = graph_report.is_valid().then(|| complex.validate());
    let valid = complex_report.as_ref().is_some_and(|c| c.is_valid());
    match command {
        Command::Validate => {
            return (
                Results::Validate {
                    valid,
                    graph: graph_report,
                    complex: complex_report,
                },
                status(valid),
            )
        }
        // Membership is reported even for invalid models so that a bad
        // weight shows up as a failing face and edge.
        Command::Thom => return thom(model, valid),
        _ if !valid => {
            return (
                Results::Invalid {
                    graph: graph_report,
                    complex: complex_report,
                },
                1,
            )
        }
        _ => {}
    }
    let lambda = match complex.lambda_vector() {
        Ok(l) => l,
        Err(e) => return failure(e.to_string(), false),
    };
    let d = options.max_degree;
    let relation_options = RelationOptions {
        sign_retry: options.sign_retry,
        ..Default::default()
    };
    match command {
        Command::Validate | Command::Thom => unreachable!("handled above"),
        Command::Hilbert => match graph.gkm_hilbert(d) {
            Ok(h) => {
                let expansion = duflot_series(&lambda).expand(2 * d);
                let series: Vec<_> = expansion.iter().step_by(2).cloned().collect();
                (
                    Results::Hilbert {
                        cohomological: h.cohomological(),
                        polynomial: h.values,
                        series: strings(&series),
                    },
                    0,
                )
            }
            Err(e) => failure(e.to_string(), false),
        },
        Command::Series => {
            let duflot = duflot_series(&lambda);
            let ab = ab_alternating_series(&lambda);
            let equal = duflot == ab;
            (
                Results::Series {
                    lambda,
                    duflot: SeriesDocument::from(&duflot),
                    ab_alternating: SeriesDocument::from(&ab),
                    equal,
                },
                status(equal),
            )
        }
        Command::Betti => match betti_from_lambda(&lambda) {
            Ok(betti) => {
                let doc = betti_document(&lambda, &betti);
                let ok = doc.palindromic && doc.nonnegative;
                (Results::Betti(doc), status(ok))
            }
            Err(e) => cm_failure(e),
        },
        Command::Euler => {
            let holds = euler_identity(&lambda);
            let sum = euler_characteristic(&lambda) as i64;
            (
                Results::Euler {
                    lambda,
                    alternating_sum: sum,
                    holds,
                },
                status(holds),
            )
        }
        Command::Relations => match complex.verify_face_ring_relations(relation_options) {
            Ok(rep) => {
                let ok = rep.holds();
                (Results::Relations(rep), status(ok))
            }
            Err(e) => face_failure(e),
        },
        Command::Span => match complex.thom_spanning_test(d) {
            Ok(rep) => {
                let ok = rep.matches;
                (Results::Span(rep), status(ok))
            }
            Err(e) => face_failure(e),
        },
        Command::ZeroDivisors => match complex.zero_divisor_pairs_deg2() {
            Ok(rep) => (Results::ZeroDivisors(rep), 0),
            Err(e) => face_failure(e),
        },
        Command::Verdict => match cm_verdict(graph, complex, d, relation_options) {
            Ok(v) => {
                let ok = v.verdict.is_consistent();
                let doc = VerdictDocument {
                    betti: betti_document(&v.lambda, &v.betti),
                    verdict: v.verdict,
                    flags: v.flags,
                    hilbert_from_graph: v.hilbert_from_graph.values,
                    hilbert_from_series: strings(&v.hilbert_from_series),
                    duflot: SeriesDocument::from(&v.duflot),
                    ab_alternating: SeriesDocument::from(&v.ab_alternating),
                    lambda: v.lambda,
                    implied_manifold_dim: v.implied_manifold_dim,
                    krull_dim: v.krull_dim,
                };
                (Results::Verdict(Box::new(doc)), status(ok))
            }
            Err(e) => cm_failure(e),
        },
    }
}

fn thom(model: &Model, model_valid: bool) -> (Results, i32) {
    let complex = &model.complex;
    let memberships = complex.verify_thom_membership();
    let mut faces = Vec::with_capacity(memberships.len());
    for (i, m) in memberships.iter().enumerate() {
        let tuple = match complex.thom_tuple(&m.face) {
            Ok(t) => t,
            Err(e) => return face_failure(e),
        };
        let values = tuple.values().iter().map(ToString::to_string).collect();
        faces.push(thom_face(m, complex.codim(i), values));
    }
    let all_pass = faces.iter().all(|f| f.passed);
    (
        Results::Thom {
            faces,
            all_pass,
            model_valid,
        },
        status(all_pass && model_valid),
    )
}
