use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cm::{BettiKind, CmFlags, Verdict};
use crate::exact::scalar::format_scalar;
use crate::exact::{Scalar, SeriesQ};
use crate::faces::{
    ComplexReport, FaceRingReport, LambdaVector, SpanReport, ThomMembership, ZeroDivisorReport,
};
use crate::gkm::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub command: String,
    pub model: String,
    pub max_degree: usize,
    pub results: Results,
    pub exit_status: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub numerator: Vec<String>,
    pub denom_power: u32,
    pub text: String,
}

impl From<&SeriesQ> for SeriesDocument {
    fn from(s: &SeriesQ) -> Self {
        SeriesDocument {
            numerator: strings(s.numerator()),
            denom_power: s.denom_power(),
            text: s.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiDocument {
    pub kind: BettiKind,
    pub coefficients: Vec<String>,
    /// Binomial formula, only for `b = 0`.
    pub binomial: Option<Vec<String>>,
    pub palindromic: bool,
    pub nonnegative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThomFace {
    pub face: String,
    pub degree: usize,
    /// Restriction at each vertex, in model order.
    pub values: Vec<String>,
    pub passed: bool,
    pub failing_edges: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDocument {
    pub verdict: Verdict,
    pub flags: CmFlags,
    pub hilbert_from_graph: Vec<usize>,
    pub hilbert_from_series: Vec<String>,
    pub lambda: LambdaVector,
    pub duflot: SeriesDocument,
    pub ab_alternating: SeriesDocument,
    pub betti: BettiDocument,
    pub implied_manifold_dim: usize,
    pub krull_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Results {
    Validate {
        valid: bool,
        graph: ValidationReport,
        complex: Option<ComplexReport>,
    },
    Hilbert {
        polynomial: Vec<usize>,
        cohomological: Vec<usize>,
        series: Vec<String>,
    },
    Series {
        lambda: LambdaVector,
        duflot: SeriesDocument,
        ab_alternating: SeriesDocument,
        equal: bool,
    },
    Betti(BettiDocument),
    Euler {
        lambda: LambdaVector,
        alternating_sum: i64,
        holds: bool,
    },
    Thom {
        faces: Vec<ThomFace>,
        all_pass: bool,
        model_valid: bool,
    },
    Relations(FaceRingReport),
    Span(SpanReport),
    ZeroDivisors(ZeroDivisorReport),
    Verdict(Box<VerdictDocument>),
    /// A command needing a valid model was given one that fails validation.
    Invalid {
        graph: ValidationReport,
        complex: Option<ComplexReport>,
    },
    /// The analysis found the model internally inconsistent.
    ModelError {
        message: String,
    },
    InputError {
        message: String,
    },
}

pub(crate) fn strings(values: &[Scalar]) -> Vec<String> {
    values.iter().map(format_scalar).collect()
}

pub(crate) fn thom_face(m: &ThomMembership, degree: usize, values: Vec<String>) -> ThomFace {
    ThomFace {
        face: m.face.clone(),
        degree,
        values,
        passed: m.passed,
        failing_edges: m.failing_edges.clone(),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn lambda_line(out: &mut String, lambda: &LambdaVector) {
    let b = lambda.min_orbit_dim();
    let cells: Vec<String> = lambda
        .counts()
        .iter()
        .enumerate()
        .map(|(k, c)| format!("l{}={c}", b + k))
        .collect();
    let _ = writeln!(out, "lambda:        {}", cells.join(" "));
}

fn violations<T: Serialize>(out: &mut String, label: &str, items: &[T]) {
    for v in items {
        let _ = writeln!(
            out,
            "{label} violation: {}",
            serde_json::to_string(v).unwrap_or_default()
        );
    }
}

impl ReportDocument {
    pub fn to_machine(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialize");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} {} (max degree {})",
            self.command, self.model, self.max_degree
        );
        match &self.results {
            Results::Validate { graph, complex, .. } => validity_lines(&mut out, graph, complex),
            Results::Invalid { graph, complex } => {
                out.push_str("model failed validation\n");
                validity_lines(&mut out, graph, complex);
            }
            Results::Hilbert {
                polynomial,
                cohomological,
                series,
            } => {
                out.push_str("poly_deg  coh_deg  dim  series\n");
                debug_assert_eq!(cohomological.len(), 2 * polynomial.len() - 1);
                for (d, h) in polynomial.iter().enumerate() {
                    let s = series.get(d).map(String::as_str).unwrap_or("-");
                    let _ = writeln!(out, "{d:>8}  {:>7}  {h:>3}  {s}", 2 * d);
                }
            }
            Results::Series {
                lambda,
                duflot,
                ab_alternating,
                equal,
            } => {
                lambda_line(&mut out, lambda);
                let _ = writeln!(out, "duflot:        {}", duflot.text);
                let _ = writeln!(out, "alternating:   {}", ab_alternating.text);
                let _ = writeln!(out, "equal:         {}", yes(*equal));
            }
            Results::Betti(b) => betti_lines(&mut out, b),
            Results::Euler {
                lambda,
                alternating_sum,
                holds,
            } => {
                lambda_line(&mut out, lambda);
                let _ = writeln!(out, "alternating sum: {alternating_sum}");
                let _ = writeln!(out, "identity holds:  {}", yes(*holds));
            }
            Results::Thom {
                faces,
                all_pass,
                model_valid,
            } => {
                if !*model_valid {
                    out.push_str("warning: model fails validation\n");
                }
                for f in faces {
                    let status = if f.passed {
                        "pass".to_string()
                    } else {
                        format!("FAIL on edges {}", join(&f.failing_edges))
                    };
                    let _ = writeln!(
                        out,
                        "{:<12} deg {}  {}  ({})",
                        f.face,
                        f.degree,
                        status,
                        f.values.join("; ")
                    );
                }
                let _ = writeln!(out, "all pass: {}", yes(*all_pass));
            }
            Results::Relations(rep) => {
                for p in &rep.pairs {
                    let join_face = p.join.as_deref().unwrap_or("-");
                    let _ = writeln!(
                        out,
                        "{} * {}  join {}  components [{}]  residual {}",
                        p.first,
                        p.second,
                        join_face,
                        p.components.join(", "),
                        if p.residual_zero { "0" } else { "NONZERO" }
                    );
                }
                let _ = writeln!(
                    out,
                    "residuals zero with supplied signs: {}",
                    yes(rep.all_zero)
                );
                if let Some(s) = &rep.sign_search {
                    match &s.flipped {
                        Some(f) => {
                            let _ = writeln!(
                                out,
                                "sign search: holds after flipping [{}]",
                                f.join(", ")
                            );
                        }
                        None if s.attempted => out.push_str("sign search: no sign choice works\n"),
                        None => out.push_str("sign search: skipped (too many faces)\n"),
                    }
                }
                let _ = writeln!(out, "relations hold: {}", yes(rep.holds()));
            }
            Results::Span(rep) => {
                out.push_str("poly_deg  span  algebra\n");
                for s in &rep.degrees {
                    let _ = writeln!(out, "{:>8}  {:>4}  {:>7}", s.degree, s.span_dim, s.target);
                }
                let _ = writeln!(out, "spans match: {}", yes(rep.matches));
            }
            Results::ZeroDivisors(rep) => {
                let _ = writeln!(out, "zero-divisor pairs in degree 2: {}", rep.count);
                for (a, b) in &rep.witnesses {
                    let _ = writeln!(out, "  ({a}, {b})");
                }
            }
            Results::Verdict(v) => {
                let _ = writeln!(out, "verdict:       {}", v.verdict);
                for (name, ok) in v.flags.named() {
                    let _ = writeln!(out, "  {name:<16} {}", if ok { "pass" } else { "FAIL" });
                }
                if let Verdict::Inconsistent(failures) = &v.verdict {
                    for f in failures {
                        let _ = writeln!(out, "  witness {}: {}", f.flag, f.witness);
                    }
                }
                lambda_line(&mut out, &v.lambda);
                let _ = writeln!(out, "hilbert:       [{}]", join(&v.hilbert_from_graph));
                let _ = writeln!(out, "series:        [{}]", v.hilbert_from_series.join(", "));
                let _ = writeln!(out, "duflot:        {}", v.duflot.text);
                let _ = writeln!(out, "alternating:   {}", v.ab_alternating.text);
                betti_lines(&mut out, &v.betti);
                let _ = writeln!(out, "implied dim M: {}", v.implied_manifold_dim);
                let _ = writeln!(out, "krull dim:     {}", v.krull_dim);
                out.push_str("(verdict on the GKM model of equivariant cohomology)\n");
            }
            Results::ModelError { message } => {
                let _ = writeln!(out, "model error: {message}");
            }
            Results::InputError { message } => {
                let _ = writeln!(out, "input error: {message}");
            }
        }
        let _ = writeln!(out, "exit status: {}", self.exit_status);
        out
    }
}

fn validity_lines(out: &mut String, graph: &ValidationReport, complex: &Option<ComplexReport>) {
    let _ = writeln!(out, "graph valid:   {}", yes(graph.is_valid()));
    violations(out, "graph", &graph.violations);
    match complex {
        Some(c) => {
            let _ = writeln!(out, "complex valid: {}", yes(c.is_valid()));
            violations(out, "complex", &c.violations);
        }
        None => out.push_str("complex valid: not checked\n"),
    }
}

fn betti_lines(out: &mut String, b: &BettiDocument) {
    let label = match b.kind {
        BettiKind::Betti => "betti",
        BettiKind::NumeratorCoefficients => "numerator",
    };
    let _ = writeln!(
        out,
        "{label}:{}[{}]",
        " ".repeat(14 - label.len()),
        b.coefficients.join(", ")
    );
    if let Some(bin) = &b.binomial {
        let _ = writeln!(out, "binomial:      [{}]", bin.join(", "));
    }
    let _ = writeln!(out, "palindromic:   {}", yes(b.palindromic));
    let _ = writeln!(out, "nonnegative:   {}", yes(b.nonnegative));
}
