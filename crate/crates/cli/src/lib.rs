//! JSON front end for `twistor-core`: requests in, reports out.
//!
//! A request names a command, carries a command-specific payload and may
//! override the tolerance and the sampling seed. Every report echoes those,
//! the payload, the result (or an error record) and a diagnostics object.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use twistor_core::klein::{classify_hyperplane, classify_point, gram, kappa, klein_q, tau, PluckerVector};
use twistor_core::orbits::{act_gamma, admissibility, normalize, orbit_equal, orbit_invariants, GL2HElement};
use twistor_core::planarity::{
    annihilator_basis, coefficient_span, covector_and_pole, hyperplane_residual, lambda_type, planarity_report,
};
use twistor_core::quat::ComplexNum;
use twistor_core::slicereg::{reality_check, twistor_plucker_at, SliceRegPoly};
use twistor_core::DEFAULT_TOL;

/// Version of the report layout, bumped on incompatible changes.
pub const SCHEMA_VERSION: &str = "1";

pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    ClassifyPoint,
    ClassifyHyperplane,
    Lift,
    Planarity,
    HyperplaneFamily,
    NormalForm,
    OrbitEqual,
    Act,
    Admissible,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Request {
    pub command: Command,
    #[serde(default)]
    pub payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ErrorKind {
    MalformedInput,
    UnknownCommand,
    FileNotFound,
    Domain,
}

impl ErrorKind {
    /// Process exit code: 2 for domain errors, 1 for anything wrong with the input.
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Domain => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub kind: ErrorKind,
    pub message: String,
}

impl ErrorRecord {
    fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
        }
    }
}

impl From<twistor_core::Error> for ErrorRecord {
    fn from(e: twistor_core::Error) -> Self {
        Self::new(ErrorKind::Domain, e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    /// Echo of the command name, or whatever was sent when it was not understood.
    pub command: Value,
    pub input: Value,
    pub tolerance: f64,
    pub seed: u64,
    pub result: Option<Value>,
    pub error: Option<ErrorRecord>,
    pub diagnostics: Value,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, |e| e.kind.exit_code())
    }
}

/// Worst exit code over a batch.
pub fn batch_exit_code(reports: &[Report]) -> i32 {
    reports.iter().map(Report::exit_code).fold(0, |worst, c| match (worst, c) {
        (1, _) | (_, 1) => 1,
        (a, b) => a.max(b),
    })
}

struct Outcome {
    result: Value,
    diagnostics: Value,
}

type Step = std::result::Result<Outcome, ErrorRecord>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("core types serialise to JSON")
}

fn payload<T: DeserializeOwned>(p: &Value, what: &str) -> std::result::Result<T, ErrorRecord> {
    serde_json::from_value(p.clone())
        .map_err(|e| ErrorRecord::new(ErrorKind::MalformedInput, format!("payload is not {what}: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointPayload {
    zeta: PluckerVector,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HyperplanePayload {
    z: PluckerVector,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LiftPayload {
    coeffs: Vec<twistor_core::quat::Quaternion>,
    /// Sample points in the upper half-plane; defaults to `i`.
    #[serde(default)]
    points: Option<Vec<ComplexNum>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairPayload {
    f: SliceRegPoly,
    h: SliceRegPoly,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActPayload {
    t: GL2HElement,
    f: SliceRegPoly,
}

/// Parsed, validated work item; nothing has been computed yet.
enum Job {
    Point(PointPayload),
    Hyperplane(HyperplanePayload),
    Lift(LiftPayload),
    Poly(Command, SliceRegPoly),
    Pair(PairPayload),
    Act(Command, ActPayload),
}

fn parse_job(command: Command, p: &Value) -> std::result::Result<Job, ErrorRecord> {
    Ok(match command {
        Command::ClassifyPoint => Job::Point(payload(p, "{\"zeta\": [6 complex pairs]}")?),
        Command::ClassifyHyperplane => Job::Hyperplane(payload(p, "{\"z\": [6 complex pairs]}")?),
        Command::Lift => Job::Lift(payload(p, "{\"coeffs\": [...], \"points\": [...]}")?),
        Command::Planarity | Command::HyperplaneFamily | Command::NormalForm => {
            Job::Poly(command, payload(p, "a polynomial {\"coeffs\": [...]}")?)
        }
        Command::OrbitEqual => Job::Pair(payload(p, "{\"f\": polynomial, \"h\": polynomial}")?),
        Command::Act | Command::Admissible => Job::Act(command, payload(p, "{\"t\": element, \"f\": polynomial}")?),
    })
}

fn point_diagnostics(p: &PluckerVector, tol: f64) -> Value {
    json!({
        "quadric": to_value(&klein_q(p)),
        "gram": to_value(&gram(p)),
        "tau": tau(p, tol).ok(),
    })
}

fn execute(job: Job, tol: f64, seed: u64) -> Step {
    match job {
        Job::Point(PointPayload { zeta }) => Ok(Outcome {
            result: to_value(&classify_point(&zeta, tol)?),
            diagnostics: point_diagnostics(&zeta, tol),
        }),
        Job::Hyperplane(HyperplanePayload { z }) => Ok(Outcome {
            result: to_value(&classify_hyperplane(&z, tol)?),
            diagnostics: json!({ "pole": to_value(&kappa(&z)), "pole_invariants": point_diagnostics(&kappa(&z), tol) }),
        }),
        Job::Lift(LiftPayload { coeffs, points }) => {
            let f = SliceRegPoly::new(coeffs);
            let points = points.unwrap_or_else(|| vec![ComplexNum::new(0.0, 1.0)]);
            let mut out = Vec::with_capacity(points.len());
            let mut worst = 0.0_f64;
            for v in points {
                let g = twistor_plucker_at(&f, v);
                let q = klein_q(&g).norm() / g.norm().powi(2).max(f64::MIN_POSITIVE);
                worst = worst.max(q);
                out.push(json!({ "v": to_value(&v), "plucker": to_value(&g), "real": reality_check(&f, v, tol) }));
            }
            Ok(Outcome {
                result: Value::Array(out),
                diagnostics: json!({ "max_quadric_residual": worst }),
            })
        }
        Job::Poly(Command::Planarity, f) => {
            let span = coefficient_span(&f, tol)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Outcome {
                result: to_value(&planarity_report(&f, tol, &mut rng)?),
                diagnostics: to_value(&span),
            })
        }
        Job::Poly(Command::HyperplaneFamily, f) => {
            let span = coefficient_span(&f, tol)?;
            let family = annihilator_basis(&f, tol)?
                .into_iter()
                .map(|l| {
                    let (covector, pole) = covector_and_pole(&l, &f)?;
                    let (residual, scale) = hyperplane_residual(&f, &covector);
                    Ok(json!({
                        "lambda": to_value(&l),
                        "type": to_value(&lambda_type(&l, tol)?),
                        "covector": to_value(&covector),
                        "pole": to_value(&pole),
                        "pole_type": to_value(&classify_point(&pole, tol)?),
                        "residual": residual,
                        "scale": scale,
                    }))
                })
                .collect::<twistor_core::Result<Vec<Value>>>()?;
            Ok(Outcome {
                result: json!({ "r": span.rank, "family": family }),
                diagnostics: to_value(&span),
            })
        }
        Job::Poly(_, f) => {
            let (nf, t) = normalize(&f, tol)?;
            let moved = act_gamma(&t, &f, tol)?;
            let target = nf.to_poly();
            let n = moved.coeffs().len().max(target.coeffs().len());
            let residual = (0..n).fold(0.0_f64, |m, k| m.max((moved.coeff(k) - target.coeff(k)).max_abs()));
            Ok(Outcome {
                result: json!({ "normal_form": to_value(&nf), "witness": to_value(&t) }),
                diagnostics: json!({ "round_trip_residual": residual }),
            })
        }
        Job::Pair(PairPayload { f, h }) => {
            let decision = orbit_equal(&f, &h, tol)?;
            Ok(Outcome {
                result: to_value(&decision),
                diagnostics: json!({
                    "invariants_f": to_value(&orbit_invariants(&f, tol)?),
                    "invariants_h": to_value(&orbit_invariants(&h, tol)?),
                }),
            })
        }
        Job::Act(Command::Act, ActPayload { t, f }) => Ok(Outcome {
            result: to_value(&act_gamma(&t, &f, tol)?),
            diagnostics: json!({ "lower_triangular": t.is_lower_triangular(tol), "det": t.det() }),
        }),
        Job::Act(_, ActPayload { t, f }) => {
            let a = admissibility(&t, &f, tol)?;
            let upper = a.roots.iter().filter(|r| r.im > tol * r.norm().max(1.0)).count();
            Ok(Outcome {
                result: json!({ "admissible": a.admissible }),
                diagnostics: json!({ "det_poly": to_value(&a.det_poly), "roots": to_value(&a.roots), "roots_in_upper_half_plane": upper }),
            })
        }
    }
}

/// Runs one request given as raw JSON. Never panics on bad input: problems
/// come back as an error record in the report.
pub fn run_value(raw: &Value, default_tol: Option<f64>, default_seed: Option<u64>) -> Report {
    let input = raw.get("payload").cloned().unwrap_or(Value::Null);
    let command_echo = raw.get("command").cloned().unwrap_or(Value::Null);
    let tol = raw
        .get("tolerance")
        .and_then(Value::as_f64)
        .or(default_tol)
        .unwrap_or(DEFAULT_TOL);
    let seed = raw.get("seed").and_then(Value::as_u64).or(default_seed).unwrap_or(DEFAULT_SEED);
    let mut report = Report {
        version: SCHEMA_VERSION.into(),
        command: command_echo,
        input,
        tolerance: tol,
        seed,
        result: None,
        error: None,
        diagnostics: json!({}),
    };
    let fail = |mut report: Report, e: ErrorRecord| {
        report.error = Some(e);
        report
    };
    let request: Request = match serde_json::from_value(raw.clone()) {
        Ok(r) => r,
        Err(e) => {
            let kind = match raw.get("command") {
                Some(Value::String(s)) if serde_json::from_value::<Command>(Value::String(s.clone())).is_err() => {
                    ErrorKind::UnknownCommand
                }
                _ => ErrorKind::MalformedInput,
            };
            return fail(report, ErrorRecord::new(kind, e.to_string()));
        }
    };
    if !(tol.is_finite() && tol > 0.0) {
        return fail(report, ErrorRecord::new(ErrorKind::MalformedInput, "tolerance must be positive"));
    }
    let job = match parse_job(request.command, &request.payload) {
        Ok(j) => j,
        Err(e) => return fail(report, e),
    };
    match execute(job, tol, seed) {
        Ok(Outcome { result, diagnostics }) => {
            report.result = Some(result);
            report.diagnostics = diagnostics;
            report
        }
        Err(e) => fail(report, e),
    }
}

pub fn run(request: &Request) -> Report {
    run_value(&to_value(request), None, None)
}

/// One report per element of a JSON array, in order. A non-array input gives
/// a single malformed-input report.
pub fn batch_value(raw: &Value, default_tol: Option<f64>, default_seed: Option<u64>) -> Vec<Report> {
    match raw {
        Value::Array(items) => items.iter().map(|r| run_value(r, default_tol, default_seed)).collect(),
        other => vec![input_error(ErrorKind::MalformedInput, "batch input must be a JSON array", other.clone(), default_tol, default_seed)],
    }
}

/// A report for input that never reached a command.
pub fn input_error(kind: ErrorKind, message: impl Into<String>, input: Value, tol: Option<f64>, seed: Option<u64>) -> Report {
    Report {
        version: SCHEMA_VERSION.into(),
        command: Value::Null,
        input,
        tolerance: tol.unwrap_or(DEFAULT_TOL),
        seed: seed.unwrap_or(DEFAULT_SEED),
        result: None,
        error: Some(ErrorRecord::new(kind, message)),
        diagnostics: json!({}),
    }
}
