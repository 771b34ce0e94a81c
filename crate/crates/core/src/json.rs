//! Canonical JSON encodings for configurations, plans, and reports.
//!
//! Every rational travels as a string `"p/q"` in lowest terms with the sign
//! on the numerator and a positive denominator, so equal values always have
//! equal encodings and output is byte deterministic. Parsing accepts three
//! spellings: canonical `"p/q"`, plain integers, and exact decimals such as
//! `"1.25"`. A fraction that is not in lowest terms is rejected with a
//! distinct error rather than silently normalized, which keeps hand-written
//! fixtures honest.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bead::ConfigError;
use crate::majorization::CheckReport;
use crate::oracle::ReachabilityVerdict;
use crate::planner::{PlanResult, PredecessorInterval, VerificationReport};
use crate::{BeadConfig, GapVector, Rational, SlideMove, SlidePlan};

/// Why a rational literal was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    /// The text is not an integer, a decimal, or a `p/q` fraction.
    #[error("expected an integer, a decimal, or a fraction like 3/4")]
    Malformed,
    /// The fraction parses but is not in lowest terms with a positive
    /// denominator, for example `2/4` or `1/-2`.
    #[error("fraction is not canonical; write it in lowest terms with a positive denominator")]
    NonCanonical,
    /// The denominator is zero.
    #[error("the denominator must not be zero")]
    ZeroDenominator,
}

/// Why a JSON document was rejected.
#[derive(Debug, Error)]
pub enum JsonError {
    /// The document is not valid JSON or does not match the expected shape.
    #[error("malformed document: {0}")]
    Syntax(#[from] serde_json::Error),
    /// A rational literal inside the document was rejected.
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    /// The decoded values do not form a valid configuration.
    #[error(transparent)]
    Config(#[from] ConfigError),
    /// A decoded slide carries a negative delta.
    #[error("a slide delta must not be negative")]
    NegativeDelta,
}

/// Formats a rational as canonical `"p/q"` text, `"3/1"` for integers.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

// Optional leading minus followed by at least one ASCII digit.
fn signed_digits(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn unsigned_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses a rational from `"p/q"`, integer, or exact decimal text.
///
/// Fractions must be canonical: `parse_rational("2/4")` is an error, not
/// `1/2`. Integers and decimals are normalized, so `"1.25"` gives `5/4`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    if let Some((p, q)) = s.split_once('/') {
        let p = signed_digits(p).ok_or(ParseRationalError::Malformed)?;
        let q = signed_digits(q).ok_or(ParseRationalError::Malformed)?;
        if q.is_zero() {
            return Err(ParseRationalError::ZeroDenominator);
        }
        let r = Rational::new(p, q);
        if format_rational(&r) != s {
            return Err(ParseRationalError::NonCanonical);
        }
        return Ok(r);
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let magnitude = if let Some((whole, frac)) = body.split_once('.') {
        let whole = unsigned_digits(whole).ok_or(ParseRationalError::Malformed)?;
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRationalError::Malformed);
        }
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().expect("digits parse");
        Rational::new(whole * &scale + frac, scale)
    } else {
        let whole = unsigned_digits(body).ok_or(ParseRationalError::Malformed)?;
        Rational::from_integer(whole)
    };
    Ok(Rational::from_integer(BigInt::from(sign)) * magnitude)
}

#[derive(Serialize, Deserialize)]
struct ConfigJson {
    mu: String,
    positions: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GapsJson {
    mu: String,
    gaps: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct MoveJson {
    bead: usize,
    delta: String,
}

#[derive(Serialize, Deserialize)]
struct PlanJson {
    moves: Vec<MoveJson>,
}

#[derive(Serialize)]
struct PlanResultJson {
    moves: Vec<MoveJson>,
    sweeps_used: u64,
    sweep_bound: u64,
    splits: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct ReportJson {
    ok: bool,
    failing_step: Option<usize>,
    reason: Option<&'static str>,
}

#[derive(Serialize)]
struct VerdictJson {
    reachable: bool,
    states: usize,
    witness: Option<PlanJson>,
}

#[derive(Serialize)]
struct IntervalJson {
    bead: usize,
    lower: String,
    upper: String,
    empty: bool,
}

#[derive(Serialize)]
struct PredecessorsJson {
    has_predecessor: bool,
    intervals: Vec<IntervalJson>,
}

#[derive(Serialize)]
struct CheckJson {
    holds: bool,
    lhs: String,
    rhs: String,
    mode: &'static str,
}

#[derive(Deserialize)]
struct InstanceJson {
    #[serde(alias = "a")]
    x: Vec<String>,
    #[serde(alias = "b")]
    y: Vec<String>,
    #[serde(default)]
    mu: Option<String>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: &'a str,
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: ErrorBody<'a>,
}

fn encode<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report structs always serialize")
}

fn parse_all(raw: &[String]) -> Result<Vec<Rational>, ParseRationalError> {
    raw.iter().map(|s| parse_rational(s)).collect()
}

/// Encodes a configuration as `{"mu": "p/q", "positions": [...]}`.
pub fn config_to_json(c: &BeadConfig) -> String {
    encode(&ConfigJson {
        mu: format_rational(c.mu()),
        positions: c.positions().iter().map(format_rational).collect(),
    })
}

/// Decodes and validates a configuration.
pub fn config_from_json(s: &str) -> Result<BeadConfig, JsonError> {
    let dto: ConfigJson = serde_json::from_str(s)?;
    let mu = parse_rational(&dto.mu)?;
    let positions = parse_all(&dto.positions)?;
    Ok(BeadConfig::new(mu, positions)?)
}

/// Encodes a gap vector as `{"mu": "p/q", "gaps": [...]}`.
pub fn gap_vector_to_json(g: &GapVector) -> String {
    encode(&GapsJson {
        mu: format_rational(g.mu()),
        gaps: g.gaps().iter().map(format_rational).collect(),
    })
}

/// Decodes and validates a gap vector.
pub fn gap_vector_from_json(s: &str) -> Result<GapVector, JsonError> {
    let dto: GapsJson = serde_json::from_str(s)?;
    let mu = parse_rational(&dto.mu)?;
    let gaps = parse_all(&dto.gaps)?;
    Ok(GapVector::new(mu, gaps)?)
}

fn moves_to_json(plan: &SlidePlan) -> Vec<MoveJson> {
    plan.moves
        .iter()
        .map(|m| MoveJson {
            bead: m.bead,
            delta: format_rational(&m.delta),
        })
        .collect()
}

/// Encodes a bare plan as `{"moves": [...]}`.
pub fn plan_to_json(plan: &SlidePlan) -> String {
    encode(&PlanJson {
        moves: moves_to_json(plan),
    })
}

/// Decodes a plan from `{"moves": [...]}`.
///
/// Extra fields are ignored, so the richer planner output is accepted
/// wherever a plan is expected and the two can be piped together.
pub fn plan_from_json(s: &str) -> Result<SlidePlan, JsonError> {
    let dto: PlanJson = serde_json::from_str(s)?;
    let mut moves = Vec::with_capacity(dto.moves.len());
    for m in &dto.moves {
        let delta = parse_rational(&m.delta)?;
        if delta.is_negative() {
            return Err(JsonError::NegativeDelta);
        }
        moves.push(SlideMove {
            bead: m.bead,
            delta,
        });
    }
    Ok(SlidePlan { moves })
}

/// Encodes planner output with its certificate and accounting fields.
pub fn plan_result_to_json(r: &PlanResult) -> String {
    encode(&PlanResultJson {
        moves: moves_to_json(&r.plan),
        sweeps_used: r.sweeps_used,
        sweep_bound: r.sweep_bound,
        splits: r.split_trace.clone(),
    })
}

/// Encodes a replay report as `{"ok", "failing_step", "reason"}`.
pub fn verification_report_to_json(r: &VerificationReport) -> String {
    encode(&ReportJson {
        ok: r.ok,
        failing_step: r.failing_step,
        reason: r.reason.map(|f| f.as_str()),
    })
}

/// Encodes a search verdict as `{"reachable", "states", "witness"}`.
pub fn verdict_to_json(v: &ReachabilityVerdict) -> String {
    encode(&VerdictJson {
        reachable: v.reachable,
        states: v.states_explored,
        witness: v.witness.as_ref().map(moves_to_json).map(|moves| PlanJson { moves }),
    })
}

/// Encodes per-bead predecessor intervals with the overall verdict.
pub fn predecessor_report_to_json(has: bool, intervals: &[PredecessorInterval]) -> String {
    encode(&PredecessorsJson {
        has_predecessor: has,
        intervals: intervals
            .iter()
            .map(|iv| IntervalJson {
                bead: iv.bead,
                lower: format_rational(&iv.lower),
                upper: format_rational(&iv.upper),
                empty: iv.empty,
            })
            .collect(),
    })
}

/// Encodes an inequality check as `{"holds", "lhs", "rhs", "mode"}`.
pub fn check_report_to_json(r: &CheckReport) -> String {
    encode(&CheckJson {
        holds: r.holds,
        lhs: r.lhs.to_string(),
        rhs: r.rhs.to_string(),
        mode: r.mode(),
    })
}

/// Decodes a majorization instance `{"x", "y"}` (aliases `"a"`, `"b"`)
/// with an optional `"mu"`.
#[allow(clippy::type_complexity)]
pub fn instance_from_json(
    s: &str,
) -> Result<(Vec<Rational>, Vec<Rational>, Option<Rational>), JsonError> {
    let dto: InstanceJson = serde_json::from_str(s)?;
    let x = parse_all(&dto.x)?;
    let y = parse_all(&dto.y)?;
    let mu = dto.mu.as_deref().map(parse_rational).transpose()?;
    Ok((x, y, mu))
}

/// Encodes an error envelope `{"error": {"code", "message"}}`.
pub fn error_to_json(code: &str, message: &str) -> String {
    encode(&ErrorJson {
        error: ErrorBody { code, message },
    })
}
