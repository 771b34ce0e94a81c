//! Schur-type sum inequalities driven by the slide order.
//!
//! Componentwise domination of bead positions is prefix-sum domination of
//! gap vectors, which is exactly the hypothesis of the classical
//! majorization inequalities. This module checks three of them:
//!
//! * the concave sum inequality: prefix-dominated entries with a concave
//!   nondecreasing test function give `sum f(x) <= sum f(y)`
//!   ([`check_concave_sum_inequality`]);
//! * the Schur variant with equal totals, where monotonicity of `f` is not
//!   needed ([`check_concave_schur`]);
//! * its convex mirror image `sum g(a) >= sum g(b)` obtained by negating
//!   arguments and values ([`check_schur_convex`]).
//!
//! Test functions come in two backends. Piecewise linear functions carry
//! rational breakpoints and evaluate exactly; everything about them
//! (monotonicity, concavity, clamping, counterexample search) is decided
//! by slope comparisons. Smooth functions wrap `f64` closures and evaluate
//! in floating point with a relative tolerance of `1e-9`.
//!
//! [`transform_gaps`] and [`check_transform_order`] apply a test function
//! gap by gap and ask whether domination survives; concavity is what makes
//! it survive, and [`find_concavity_counterexample`] hunts for the
//! two-bead violations that appear as soon as it fails.

use std::fmt;
use std::sync::Arc;

use log::warn;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bead::{ConfigError, OrderError};
use crate::{BeadConfig, GapVector, Gaps, Rational, SlideMove};

/// Why a majorization check or function operation is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MajorizeError {
    #[error("the instance has no entries")]
    EmptyInstance,
    #[error("the two sides have different lengths")]
    LengthMismatch,
    #[error("prefix sum dominance fails at prefix {prefix}")]
    DominanceViolated { prefix: usize },
    #[error("the two sides have different totals")]
    TotalsDiffer,
    #[error("entry {index} breaks the required ordering")]
    NotSorted { index: usize },
    #[error("entry {index} lies below the base point")]
    ValueBelowBase { index: usize },
    #[error("the gap transform requires base point zero")]
    BasePointNotZero,
    #[error("the test function must be nondecreasing on the gap range")]
    NotNondecreasing,
    #[error("breakpoint {index} does not increase")]
    InvalidBreakpoints { index: usize },
    #[error("a piecewise linear function needs at least one breakpoint")]
    EmptyFunction,
    #[error("clamping a smooth function needs its derivative")]
    DerivativeUnavailable,
    #[error("the supplied derivative disagrees with a finite difference")]
    DerivativeMismatch,
    #[error("the function produced a non-finite value on the data")]
    DomainError,
    #[error("the source is not componentwise below the target")]
    NotDominated,
    #[error(transparent)]
    Incompatible(#[from] OrderError),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// A piecewise linear function with rational breakpoints.
///
/// Between consecutive breakpoints the function interpolates linearly; to
/// the left and right of the breakpoint range it extrapolates with the
/// first and last segment slope. A single breakpoint denotes a constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear {
    points: Vec<(Rational, Rational)>,
}

impl PiecewiseLinear {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self, MajorizeError> {
        if points.is_empty() {
            return Err(MajorizeError::EmptyFunction);
        }
        for i in 1..points.len() {
            if points[i].0 <= points[i - 1].0 {
                return Err(MajorizeError::InvalidBreakpoints { index: i + 1 });
            }
        }
        Ok(PiecewiseLinear { points })
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    fn slope(&self, i: usize) -> Rational {
        let (x0, y0) = &self.points[i];
        let (x1, y1) = &self.points[i + 1];
        (y1 - y0) / (x1 - x0)
    }

    fn slopes(&self) -> Vec<Rational> {
        (0..self.points.len().saturating_sub(1))
            .map(|i| self.slope(i))
            .collect()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        if self.points.len() == 1 {
            return self.points[0].1.clone();
        }
        let i = self
            .points
            .iter()
            .rposition(|(x, _)| x <= t)
            .unwrap_or(0);
        let s = self.slope(i.min(self.points.len() - 2));
        self.points[i].1.clone() + s * (t - &self.points[i].0)
    }

    fn is_concave(&self) -> bool {
        self.slopes().windows(2).all(|w| w[0] >= w[1])
    }

    fn is_nondecreasing(&self) -> bool {
        self.slopes().iter().all(|s| !s.is_negative())
    }

    // slope immediately to the left of l
    fn left_slope_at(&self, l: &Rational) -> Rational {
        if self.points.len() == 1 {
            return Rational::zero();
        }
        match self.points.iter().rposition(|(x, _)| x < l) {
            None => self.slope(0),
            Some(i) => self.slope(i.min(self.points.len() - 2)),
        }
    }

    // nondecreasing on [lo, hi], ignoring segments that only live outside;
    // the first slope extends to -infinity and the last to +infinity
    fn nondecreasing_on(&self, lo: &Rational, hi: &Rational) -> bool {
        let m = self.points.len();
        if m == 1 {
            return true;
        }
        for i in 0..m - 1 {
            let seg_lo = if i == 0 { lo } else { (&self.points[i].0).max(lo) };
            let seg_hi = if i == m - 2 {
                hi
            } else {
                (&self.points[i + 1].0).min(hi)
            };
            if seg_lo < seg_hi && self.slope(i).is_negative() {
                return false;
            }
        }
        true
    }
}

type FloatFn = dyn Fn(f64) -> f64 + Send + Sync;

/// A test function given by an `f64` closure, optionally with derivative.
#[derive(Clone)]
pub struct SmoothFunction {
    name: String,
    f: Arc<FloatFn>,
    df: Option<Arc<FloatFn>>,
}

impl SmoothFunction {
    pub fn new(name: &str, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        SmoothFunction { name: name.to_owned(), f: Arc::new(f), df: None }
    }

    pub fn with_derivative(
        name: &str,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        SmoothFunction {
            name: name.to_owned(),
            f: Arc::new(f),
            df: Some(Arc::new(df)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
}

impl fmt::Debug for SmoothFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmoothFunction({})", self.name)
    }
}

/// Either backend of a test function.
#[derive(Debug, Clone)]
pub enum TestFunction {
    PiecewiseLinear(PiecewiseLinear),
    Smooth(SmoothFunction),
}

impl TestFunction {
    pub fn piecewise_linear(points: Vec<(Rational, Rational)>) -> Result<Self, MajorizeError> {
        Ok(TestFunction::PiecewiseLinear(PiecewiseLinear::new(points)?))
    }

    /// The built-in catalog: `sqrt`, `log1p`, `square`, `exp`, all with
    /// derivatives.
    pub fn named(name: &str) -> Option<Self> {
        let smooth = match name {
            "sqrt" => SmoothFunction::with_derivative(name, |t| t.sqrt(), |t| 0.5 / t.sqrt()),
            "log1p" => SmoothFunction::with_derivative(name, |t| t.ln_1p(), |t| 1.0 / (1.0 + t)),
            "square" => SmoothFunction::with_derivative(name, |t| t * t, |t| 2.0 * t),
            "exp" => SmoothFunction::with_derivative(name, f64::exp, f64::exp),
            _ => return None,
        };
        Some(TestFunction::Smooth(smooth))
    }

    /// Exact backends produce rational check values; smooth ones floats.
    pub fn is_exact(&self) -> bool {
        matches!(self, TestFunction::PiecewiseLinear(_))
    }
}

/// One side of a check outcome, in the arithmetic the backend used.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckValue {
    Exact(Rational),
    Float(f64),
}

impl CheckValue {
    pub fn mode(&self) -> &'static str {
        match self {
            CheckValue::Exact(_) => "exact",
            CheckValue::Float(_) => "float",
        }
    }

    fn negated(&self) -> CheckValue {
        match self {
            CheckValue::Exact(r) => CheckValue::Exact(-r.clone()),
            CheckValue::Float(v) => CheckValue::Float(-v),
        }
    }
}

impl fmt::Display for CheckValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckValue::Exact(r) => write!(f, "{}", crate::json::format_rational(r)),
            // adding zero collapses -0 so equal values print identically
            CheckValue::Float(v) => write!(f, "{}", v + 0.0),
        }
    }
}

/// Verdict of an inequality check: whether it holds and both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub holds: bool,
    pub lhs: CheckValue,
    pub rhs: CheckValue,
}

impl CheckReport {
    pub fn mode(&self) -> &'static str {
        self.lhs.mode()
    }
}

/// How strong a dominance relation an instance promises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceMode {
    /// Every prefix of the sorted left side is dominated, totals included.
    PrefixDominance,
    /// Proper prefixes are dominated and the totals agree exactly.
    EqualTotals,
}

/// A validated pair of entry vectors for the sum inequalities.
///
/// The left side may arrive in any order; dominance is checked against its
/// increasing rearrangement, while the right side is compared as stored.
/// Sums of function values do not depend on entry order, so checks evaluate
/// the sides exactly as given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorizationInstance {
    x: Vec<Rational>,
    y: Vec<Rational>,
    mode: DominanceMode,
}

impl MajorizationInstance {
    pub fn new(
        x: Vec<Rational>,
        y: Vec<Rational>,
        mode: DominanceMode,
    ) -> Result<Self, MajorizeError> {
        if x.is_empty() || y.is_empty() {
            return Err(MajorizeError::EmptyInstance);
        }
        if x.len() != y.len() {
            return Err(MajorizeError::LengthMismatch);
        }
        let xs = increasing_rearrangement(&x);
        let n = x.len();
        let mut sx = Rational::zero();
        let mut sy = Rational::zero();
        for k in 0..n {
            sx += &xs[k];
            sy += &y[k];
            let checked = k + 1 < n || mode == DominanceMode::PrefixDominance;
            if checked && sx > sy {
                return Err(MajorizeError::DominanceViolated { prefix: k + 1 });
            }
        }
        if mode == DominanceMode::EqualTotals && sx != sy {
            return Err(MajorizeError::TotalsDiffer);
        }
        Ok(MajorizationInstance { x, y, mode })
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    pub fn y(&self) -> &[Rational] {
        &self.y
    }

    pub fn mode(&self) -> DominanceMode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }
}

/// The entries sorted ascending; dominance checks compare this side.
pub fn increasing_rearrangement(values: &[Rational]) -> Vec<Rational> {
    let mut v = values.to_vec();
    v.sort();
    v
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn float_leq(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + 1e-9 * (1.0 + rhs.abs())
}

fn require_sorted(y: &[Rational]) -> Result<(), MajorizeError> {
    for i in 1..y.len() {
        if y[i] < y[i - 1] {
            return Err(MajorizeError::NotSorted { index: i + 1 });
        }
    }
    Ok(())
}

fn sum_exact(p: &PiecewiseLinear, values: &[Rational]) -> Rational {
    values
        .iter()
        .fold(Rational::zero(), |acc, t| acc + p.eval(t))
}

fn sum_float(sf: &SmoothFunction, values: &[Rational]) -> Result<f64, MajorizeError> {
    let mut acc = 0.0;
    for t in values {
        let v = sf.eval(to_f64(t));
        if !v.is_finite() {
            return Err(MajorizeError::DomainError);
        }
        acc += v;
    }
    Ok(acc)
}

fn sum_report(
    f: &TestFunction,
    x: &[Rational],
    y: &[Rational],
) -> Result<CheckReport, MajorizeError> {
    match f {
        TestFunction::PiecewiseLinear(p) => {
            let lhs = sum_exact(p, x);
            let rhs = sum_exact(p, y);
            Ok(CheckReport {
                holds: lhs <= rhs,
                lhs: CheckValue::Exact(lhs),
                rhs: CheckValue::Exact(rhs),
            })
        }
        TestFunction::Smooth(sf) => {
            let lhs = sum_float(sf, x)?;
            let rhs = sum_float(sf, y)?;
            Ok(CheckReport {
                holds: float_leq(lhs, rhs),
                lhs: CheckValue::Float(lhs),
                rhs: CheckValue::Float(rhs),
            })
        }
    }
}

// (concave, nondecreasing) judged from evenly spaced samples; None when the
// function leaves its domain there, in which case no warning is emitted and
// evaluation errors surface later
fn sampled_shape(sf: &SmoothFunction, lo: f64, hi: f64) -> Option<(bool, bool)> {
    const STEPS: usize = 16;
    let mut vals = Vec::with_capacity(STEPS + 1);
    for i in 0..=STEPS {
        let t = lo + (hi - lo) * (i as f64 / STEPS as f64);
        let v = sf.eval(t);
        if !v.is_finite() {
            return None;
        }
        vals.push((t, v));
    }
    let scale = 1.0 + vals.iter().fold(0.0f64, |m, &(_, v)| m.max(v.abs()));
    let tol = 1e-9 * scale;
    let mut concave = true;
    for i in 0..vals.len() {
        for j in i + 2..vals.len() {
            let (ti, vi) = vals[i];
            let (tj, vj) = vals[j];
            let mid = sf.eval(0.5 * (ti + tj));
            if !mid.is_finite() {
                return None;
            }
            if mid + tol < 0.5 * (vi + vj) {
                concave = false;
            }
        }
    }
    let nondecreasing = vals.windows(2).all(|w| w[1].1 >= w[0].1 - tol);
    Some((concave, nondecreasing))
}

fn warn_shape(f: &TestFunction, sides: [&[Rational]; 2], need_monotone: bool) {
    let (concave, nondecreasing) = match f {
        TestFunction::PiecewiseLinear(p) => (p.is_concave(), p.is_nondecreasing()),
        TestFunction::Smooth(sf) => {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for side in sides {
                for v in side {
                    let t = to_f64(v);
                    lo = lo.min(t);
                    hi = hi.max(t);
                }
            }
            if !lo.is_finite() || !hi.is_finite() {
                return;
            }
            match sampled_shape(sf, lo, hi) {
                Some(shape) => shape,
                None => return,
            }
        }
    };
    if !concave {
        warn!("the test function does not look concave on the data; the inequality is not guaranteed");
    }
    if need_monotone && !nondecreasing {
        warn!("the test function does not look nondecreasing on the data; the inequality is not guaranteed");
    }
}

/// Checks `sum f(x) <= sum f(y)` for prefix-dominated entries and a
/// concave nondecreasing test function bounded below by `mu`.
///
/// The right side must be sorted ascending and start at or above `mu`, and
/// every left entry must lie at or above `mu`; these are the hypotheses
/// under which domination forces the inequality. A test function that does
/// not look concave or nondecreasing on the data only logs a warning: the
/// check still reports what the sums actually do.
pub fn check_concave_sum_inequality(
    inst: &MajorizationInstance,
    f: &TestFunction,
    mu: &Rational,
) -> Result<CheckReport, MajorizeError> {
    require_sorted(inst.y())?;
    if inst.y()[0] < *mu {
        return Err(MajorizeError::ValueBelowBase { index: 1 });
    }
    for (i, v) in inst.x().iter().enumerate() {
        if v < mu {
            return Err(MajorizeError::ValueBelowBase { index: i + 1 });
        }
    }
    warn_shape(f, [inst.x(), inst.y()], true);
    sum_report(f, inst.x(), inst.y())
}

/// Checks `sum f(x) <= sum f(y)` in the equal-totals regime, where
/// concavity alone carries the inequality and no monotonicity or base
/// point is needed.
///
/// Revalidates the instance in the stronger mode regardless of how it was
/// built: ascending right side, equal totals, dominated proper prefixes of
/// the sorted left side.
pub fn check_concave_schur(
    inst: &MajorizationInstance,
    f: &TestFunction,
) -> Result<CheckReport, MajorizeError> {
    require_sorted(inst.y())?;
    let xs = increasing_rearrangement(inst.x());
    let n = inst.n();
    let mut sx = Rational::zero();
    let mut sy = Rational::zero();
    let mut violated = None;
    for (k, (xv, yv)) in xs.iter().zip(inst.y()).enumerate() {
        sx += xv;
        sy += yv;
        if k + 1 < n && sx > sy && violated.is_none() {
            violated = Some(k + 1);
        }
    }
    if sx != sy {
        return Err(MajorizeError::TotalsDiffer);
    }
    if let Some(prefix) = violated {
        return Err(MajorizeError::DominanceViolated { prefix });
    }
    warn_shape(f, [inst.x(), inst.y()], false);
    sum_report(f, inst.x(), inst.y())
}

/// Checks the convex mirror `sum g(a) >= sum g(b)` for `a` majorizing `b`
/// with the right side sorted descending.
///
/// Negating entries and reflecting the function reduces this to
/// [`check_concave_schur`]; the reported sides are negated back, so they
/// are the actual sums of `g`.
pub fn check_schur_convex(
    a: &[Rational],
    b: &[Rational],
    g: &TestFunction,
) -> Result<CheckReport, MajorizeError> {
    let x: Vec<Rational> = a.iter().map(|v| -v.clone()).collect();
    let y: Vec<Rational> = b.iter().map(|v| -v.clone()).collect();
    let inst = MajorizationInstance::new(x, y, DominanceMode::EqualTotals)?;
    let rep = check_concave_schur(&inst, &negated_reflection(g))?;
    Ok(CheckReport {
        holds: rep.holds,
        lhs: rep.lhs.negated(),
        rhs: rep.rhs.negated(),
    })
}

/// The function `t -> -g(-t)`: concave iff `g` is convex, and the exact
/// dual under entry negation.
pub fn negated_reflection(g: &TestFunction) -> TestFunction {
    match g {
        TestFunction::PiecewiseLinear(p) => {
            let pts = p
                .points()
                .iter()
                .rev()
                .map(|(x, y)| (-x.clone(), -y.clone()))
                .collect();
            TestFunction::PiecewiseLinear(
                PiecewiseLinear::new(pts).expect("negation keeps breakpoints strictly increasing"),
            )
        }
        TestFunction::Smooth(sf) => {
            let name = format!("reflect({})", sf.name);
            let f0 = sf.f.clone();
            let g = move |t: f64| -f0(-t);
            TestFunction::Smooth(match &sf.df {
                Some(d0) => {
                    let d = d0.clone();
                    SmoothFunction::with_derivative(&name, g, move |t| d(-t))
                }
                None => SmoothFunction::new(&name, g),
            })
        }
    }
}

/// Flattens `f` beyond `l` while keeping it concave and nondecreasing:
/// `g(t) = f(t) - s*t` up to `l` and constant after, where `s` is the
/// slope of `f` just left of `l`.
///
/// Smooth functions need their derivative for `s`; it is cross-checked
/// against a central finite difference before use.
pub fn concave_clamp(f: &TestFunction, l: &Rational) -> Result<TestFunction, MajorizeError> {
    match f {
        TestFunction::PiecewiseLinear(p) => {
            let s = p.left_slope_at(l);
            let cap = p.eval(l) - &s * l;
            let mut pts: Vec<(Rational, Rational)> = p
                .points()
                .iter()
                .filter(|(x, _)| x < l)
                .map(|(x, y)| (x.clone(), y - &s * x))
                .collect();
            pts.push((l.clone(), cap.clone()));
            pts.push((l + Rational::one(), cap));
            Ok(TestFunction::PiecewiseLinear(PiecewiseLinear::new(pts)?))
        }
        TestFunction::Smooth(sf) => {
            let df = sf.df.clone().ok_or(MajorizeError::DerivativeUnavailable)?;
            let lf = to_f64(l);
            if !lf.is_finite() {
                return Err(MajorizeError::DomainError);
            }
            let s = df(lf);
            let h = 1e-5;
            let fd = (sf.eval(lf + h) - sf.eval(lf - h)) / (2.0 * h);
            if !s.is_finite() || !fd.is_finite() || (s - fd).abs() > 1e-4 {
                return Err(MajorizeError::DerivativeMismatch);
            }
            let cap = sf.eval(lf) - s * lf;
            let name = format!("clamp({})", sf.name);
            let f0 = sf.f.clone();
            let g = move |t: f64| if t <= lf { f0(t) - s * t } else { cap };
            let dg = move |t: f64| if t <= lf { df(t) - s } else { 0.0 };
            Ok(TestFunction::Smooth(SmoothFunction::with_derivative(
                &name, g, dg,
            )))
        }
    }
}

/// A gap vector pushed through a test function, in the backend's
/// arithmetic.
#[derive(Debug, Clone)]
pub enum TransformedGaps {
    Exact(GapVector),
    Float(Gaps<f64>),
}

// fixed seed: the monotonicity probe must not make transform results
// depend on caller state
const MONOTONE_PROBE_SEED: u64 = 0xBEAD_5EED;

fn smooth_nondecreasing_sampled(
    sf: &SmoothFunction,
    lo: f64,
    hi: f64,
) -> Result<bool, MajorizeError> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(MajorizeError::DomainError);
    }
    let mut ts = vec![lo, hi];
    let mut rng = ChaCha8Rng::seed_from_u64(MONOTONE_PROBE_SEED);
    for _ in 0..64 {
        ts.push(rng.gen_range(lo..=hi));
    }
    ts.sort_by(|a, b| a.partial_cmp(b).expect("samples are finite"));
    let mut prev = f64::NEG_INFINITY;
    for t in ts {
        let v = sf.eval(t);
        if !v.is_finite() {
            return Err(MajorizeError::DomainError);
        }
        if v < prev - 1e-9 * (1.0 + prev.abs()) {
            return Ok(false);
        }
        prev = v;
    }
    Ok(true)
}

/// Applies `f` to every gap of a base-zero gap vector.
///
/// The function must be nondecreasing on the closed range the gaps span,
/// so that the result is again a gap vector; that is a hard error, checked
/// exactly for piecewise linear functions and on sampled points for smooth
/// ones. The transformed gaps are revalidated, which also rejects
/// functions that send the first gap below zero.
pub fn transform_gaps(g: &GapVector, f: &TestFunction) -> Result<TransformedGaps, MajorizeError> {
    if !g.mu().is_zero() {
        return Err(MajorizeError::BasePointNotZero);
    }
    let gaps = g.gaps();
    let lo = &gaps[0];
    let hi = &gaps[gaps.len() - 1];
    match f {
        TestFunction::PiecewiseLinear(p) => {
            if !p.nondecreasing_on(lo, hi) {
                return Err(MajorizeError::NotNondecreasing);
            }
            let out: Vec<Rational> = gaps.iter().map(|t| p.eval(t)).collect();
            Ok(TransformedGaps::Exact(GapVector::new(
                Rational::zero(),
                out,
            )?))
        }
        TestFunction::Smooth(sf) => {
            if !smooth_nondecreasing_sampled(sf, to_f64(lo), to_f64(hi))? {
                return Err(MajorizeError::NotNondecreasing);
            }
            let mut out = Vec::with_capacity(gaps.len());
            for t in gaps {
                let v = sf.eval(to_f64(t));
                if !v.is_finite() {
                    return Err(MajorizeError::DomainError);
                }
                out.push(v);
            }
            Ok(TransformedGaps::Float(Gaps::new(0.0, out)?))
        }
    }
}

/// Whether domination survives the gap transform: compares the prefix sums
/// of the transformed gaps of `a` against those of `b`.
///
/// Requires `a <= b` componentwise with base point zero. For concave
/// nondecreasing `f` the transformed order always holds; the report's
/// sides are the first violating prefix pair, or the final pair when the
/// order holds throughout.
pub fn check_transform_order(
    a: &BeadConfig,
    b: &BeadConfig,
    f: &TestFunction,
) -> Result<CheckReport, MajorizeError> {
    if !a.leq(b)? {
        return Err(MajorizeError::NotDominated);
    }
    let ta = transform_gaps(&a.gaps(), f)?;
    let tb = transform_gaps(&b.gaps(), f)?;
    match (ta, tb) {
        (TransformedGaps::Exact(ga), TransformedGaps::Exact(gb)) => {
            let ca = ga.config();
            let cb = gb.config();
            let (pa, pb) = (ca.positions(), cb.positions());
            for k in 0..pa.len() {
                if pa[k] > pb[k] {
                    return Ok(CheckReport {
                        holds: false,
                        lhs: CheckValue::Exact(pa[k].clone()),
                        rhs: CheckValue::Exact(pb[k].clone()),
                    });
                }
            }
            let last = pa.len() - 1;
            Ok(CheckReport {
                holds: true,
                lhs: CheckValue::Exact(pa[last].clone()),
                rhs: CheckValue::Exact(pb[last].clone()),
            })
        }
        (TransformedGaps::Float(ga), TransformedGaps::Float(gb)) => {
            let ca = ga.config();
            let cb = gb.config();
            let (pa, pb) = (ca.positions(), cb.positions());
            for k in 0..pa.len() {
                if !float_leq(pa[k], pb[k]) {
                    return Ok(CheckReport {
                        holds: false,
                        lhs: CheckValue::Float(pa[k]),
                        rhs: CheckValue::Float(pb[k]),
                    });
                }
            }
            let last = pa.len() - 1;
            Ok(CheckReport {
                holds: true,
                lhs: CheckValue::Float(pa[last]),
                rhs: CheckValue::Float(pb[last]),
            })
        }
        _ => unreachable!("one function evaluates in one backend"),
    }
}

fn pair_from_gaps(
    x: Rational,
    y: Rational,
    delta: Rational,
) -> Option<(BeadConfig, BeadConfig)> {
    let a = BeadConfig::new(Rational::zero(), vec![x.clone(), x + &y]).ok()?;
    let b = a.apply_slide(&SlideMove { bead: 1, delta }).ok()?;
    Some((a, b))
}

// every convex kink at a positive abscissa yields an exact two-bead
// violation centered on it; the scan is complete for gap-realizable
// violations, so no random fallback is needed
fn pwl_corner_scan(p: &PiecewiseLinear) -> Option<(BeadConfig, BeadConfig)> {
    let pts = p.points();
    let m = pts.len();
    for i in 0..m.saturating_sub(2) {
        if p.slope(i + 1) <= p.slope(i) {
            continue;
        }
        let c = &pts[i + 1].0;
        if !c.is_positive() {
            continue;
        }
        let mut h = (c - &pts[i].0).min(c.clone());
        if i + 2 < m {
            h = h.min(&pts[i + 2].0 - c);
        }
        h /= Rational::from_integer(2.into());
        let x = c - &h;
        let y = c + &h;
        if p.eval(&x) + p.eval(&y) > p.eval(c) + p.eval(c) {
            return pair_from_gaps(x, y, h);
        }
    }
    None
}

fn smooth_random_probe(
    sf: &SmoothFunction,
    trials: u64,
    seed: u64,
) -> Option<(BeadConfig, BeadConfig)> {
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        // draw order: left gap, width, then the slide fraction
        let x = q(rng.gen_range(0..=32), 8);
        let w = q(rng.gen_range(1..=16), 8);
        let delta = &w * q(rng.gen_range(1..=8), 16);
        let y = &x + &w;
        let lhs = sf.eval(to_f64(&x)) + sf.eval(to_f64(&y));
        let rhs = sf.eval(to_f64(&(&x + &delta))) + sf.eval(to_f64(&(&y - &delta)));
        if !lhs.is_finite() || !rhs.is_finite() {
            continue;
        }
        if lhs > rhs + 1e-9 * (1.0 + rhs.abs()) {
            if let Some(pair) = pair_from_gaps(x, y, delta) {
                return Some(pair);
            }
        }
    }
    None
}

/// Hunts for a two-bead pair `a <= b` whose transformed order under `f`
/// fails, which certifies that `f` is not concave.
///
/// Piecewise linear functions are scanned exactly at their convex kinks
/// (`trials` and `seed` are ignored; the scan is complete for violations
/// realizable with nonnegative gaps). Smooth functions are probed with
/// `trials` random dyadic single-slide pairs from `seed`. The returned
/// pair always satisfies `b = a` plus one admissible slide of the first
/// bead.
pub fn find_concavity_counterexample(
    f: &TestFunction,
    trials: u64,
    seed: u64,
) -> Option<(BeadConfig, BeadConfig)> {
    match f {
        TestFunction::PiecewiseLinear(p) => pwl_corner_scan(p),
        TestFunction::Smooth(sf) => smooth_random_probe(sf, trials, seed),
    }
}
