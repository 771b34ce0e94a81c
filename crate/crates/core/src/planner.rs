//! Certificate construction for the slide order.
//!
//! Componentwise order `A <= B` is necessary for reachability. When the
//! target additionally satisfies [`crate::Beads::is_slideable_target`], it is
//! also sufficient, and [`plan`] turns the proof into an algorithm emitting an
//! explicit sequence of admissible slides from `A` to `B`.
//!
//! The engine has three ingredients:
//!
//! * midpoint moves `M_k`, which center bead `k` between its neighbors and
//!   are always admissible at the constraint boundary;
//! * the sweep `T` (midpoint moves from the second-to-last bead down to the
//!   first), which contracts the spread: `lambda(T(X)) <= (1 - 2^(1-m)) *
//!   lambda(X)` for `m` beads;
//! * clamping: a midpoint target at or beyond `B_k` is cut to exactly `B_k`,
//!   which keeps every intermediate inside the box `X <= B` and pins bead
//!   `k`, splitting the problem into two independent windows.
//!
//! The spread also obeys a lower bound while the last bead is pinned,
//! `lambda(X) >= lambda(B) / (m - 1)`, so the contraction forces a clamp
//! within a precomputable number of sweeps. [`sweep_count_bound`] is that
//! bound; exceeding it is an internal defect, never an input condition.
//!
//! The rest of the module handles the boundary of the theory: targets that
//! are not slideable ([`try_plan`], [`epsilon_sleeve`], [`approx_plan`]),
//! the exact single-slide predecessor region ([`one_step_predecessor_interval`],
//! [`has_predecessor`]), the explicit dominated-but-unreachable construction
//! ([`converse_counterexample`]), and independent replay of certificates
//! ([`verify_plan`]).

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::bead::OrderError;
use crate::scalar::half;
use crate::{BeadConfig, Rational, SlideMove, SlidePlan};

/// Why a planning or perturbation request is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlannerError {
    #[error(transparent)]
    Incompatible(#[from] OrderError),
    #[error("the source is not componentwise below the target")]
    NotDominated,
    #[error("the target has four consecutive equidistant points and is not reachable from every source")]
    TargetNotSlideable,
    #[error("sweeps exceeded the precomputed bound; this is a defect, not an input condition")]
    SweepBoundExceeded,
    #[error("bead index {k} out of range for {beads} beads")]
    IndexOutOfRange { k: usize, beads: usize },
    #[error("the operation needs at least two beads, got {beads}")]
    TooFewBeads { beads: usize },
    #[error("the perturbation size must be strictly positive")]
    NonpositiveEpsilon,
    #[error("gap pattern precondition fails: {detail}")]
    PatternMismatch { detail: &'static str },
}

/// A constructed certificate together with its accounting.
///
/// `sweeps_used` counts every started sweep pass over any window of the
/// recursion; `sweep_bound` is the sum of the per-window termination bounds,
/// so `sweeps_used <= sweep_bound` holds for the aggregate because it holds
/// per window. `split_trace` records each pinned bead index together with
/// the recursion depth of the window it split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanResult {
    pub plan: SlidePlan,
    pub sweeps_used: u64,
    pub sweep_bound: u64,
    pub split_trace: Vec<(usize, usize)>,
}

/// The set of positions from which one admissible slide of bead `bead`
/// reaches the target: a half-open interval `[lower, upper)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredecessorInterval {
    pub bead: usize,
    pub lower: Rational,
    pub upper: Rational,
    pub empty: bool,
}

/// Why a replayed plan is not a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyFailure {
    /// A move violated the gap constraint, its index, or its sign.
    InadmissibleStep,
    /// An intermediate configuration left the box `X <= B`.
    LeftBBox,
    /// Replay ended somewhere other than the target.
    WrongTerminal,
}

impl VerifyFailure {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerifyFailure::InadmissibleStep => "InadmissibleStep",
            VerifyFailure::LeftBBox => "LeftBBox",
            VerifyFailure::WrongTerminal => "WrongTerminal",
        }
    }
}

/// Outcome of replaying a plan against a source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    pub failing_step: Option<usize>,
    pub reason: Option<VerifyFailure>,
}

/// Slides bead `k` to the midpoint of its neighbors, `(X_{k-1} + X_{k+1}) / 2`.
///
/// The move sits exactly on the admissibility boundary, so it always
/// applies; on an equidistant triple it degenerates to a zero slide. The
/// last bead has no midpoint target.
pub fn midpoint_move(x: &BeadConfig, k: usize) -> Result<(SlideMove, BeadConfig), PlannerError> {
    let n = x.n();
    if k < 1 || k >= n {
        return Err(PlannerError::IndexOutOfRange { k, beads: n });
    }
    let left = if k == 1 { x.mu() } else { &x.positions()[k - 2] };
    let target = half(left.clone() + x.positions()[k].clone());
    let delta = target - x.positions()[k - 1].clone();
    debug_assert!(!delta.is_negative());
    let mv = SlideMove { bead: k, delta };
    let moved = x.apply_slide(&mv).expect("midpoint moves are admissible");
    Ok((mv, moved))
}

/// One contraction sweep: midpoint moves from bead `m-1` down to bead `1`.
///
/// Returns the moves that actually displaced a bead (zero slides are
/// dropped) and the final configuration. The last bead never moves, and the
/// spread contracts by at least the factor `1 - 2^(1-m)`.
pub fn sweep_t(x: &BeadConfig) -> Result<(Vec<SlideMove>, BeadConfig), PlannerError> {
    let n = x.n();
    if n < 2 {
        return Err(PlannerError::TooFewBeads { beads: n });
    }
    let mut cur = x.clone();
    let mut moves = Vec::new();
    for k in (1..n).rev() {
        let (mv, next) = midpoint_move(&cur, k)?;
        if !mv.delta.is_zero() {
            moves.push(mv);
        }
        cur = next;
    }
    Ok((moves, cur))
}

/// Upper bound on the number of sweeps a window can run before a bead
/// crosses its target.
///
/// For an `m`-bead window whose last bead is pinned to the target, the
/// spread after the settling step (`lambda0`) contracts by `1 - 2^(1-m)`
/// per sweep while it stays above `lambda_b / (m - 1)`, which caps
/// crossing-free sweeps at `ceil(ln((m-1) * lambda0 / lambda_b) /
/// -ln(1 - 2^(1-m))) + 1`. A nonpositive `lambda_b` yields no finite bound
/// and saturates to `u64::MAX`.
pub fn sweep_count_bound(m: usize, lambda0: &Rational, lambda_b: &Rational) -> u64 {
    if !lambda_b.is_positive() {
        return u64::MAX;
    }
    let scaled = lambda0 * Rational::from_integer((m as i64 - 1).into());
    if scaled <= *lambda_b {
        return 1;
    }
    let ratio = match (scaled / lambda_b).to_f64() {
        Some(r) if r.is_finite() => r,
        _ => return u64::MAX,
    };
    // -ln(1 - x) via ln_1p keeps precision for the tiny x of wide windows
    let x = 0.5f64.powi(m as i32 - 1);
    let per_sweep = -(-x).ln_1p();
    let sweeps = ratio.ln() / per_sweep;
    if !sweeps.is_finite() {
        return u64::MAX;
    }
    (sweeps.ceil() as u64).saturating_add(1)
}

// One mutable view over the whole problem. Windows are 1-based inclusive
// bead ranges [lo, hi]; index 0 denotes the base point. Every window is
// entered with its left neighbor and its own last bead already final, so
// in-window admissibility equals global admissibility.
struct Walker<'a> {
    mu: &'a Rational,
    x: Vec<Rational>,
    b: &'a [Rational],
    budget: Option<u64>,
    moves: Vec<SlideMove>,
    sweeps_used: u64,
    sweep_bound: u64,
    split_trace: Vec<(usize, usize)>,
}

impl<'a> Walker<'a> {
    fn new(a: &BeadConfig, b: &'a BeadConfig, budget: Option<u64>) -> Self {
        Walker {
            mu: b.mu(),
            x: a.positions().to_vec(),
            b: b.positions(),
            budget,
            moves: Vec::new(),
            sweeps_used: 0,
            sweep_bound: 0,
            split_trace: Vec::new(),
        }
    }

    fn pos(&self, i: usize) -> &Rational {
        if i == 0 {
            self.mu
        } else {
            &self.x[i - 1]
        }
    }

    fn target(&self, i: usize) -> &Rational {
        if i == 0 {
            self.mu
        } else {
            &self.b[i - 1]
        }
    }

    fn pin(&mut self, k: usize) {
        let delta = self.target(k).clone() - self.pos(k).clone();
        debug_assert!(!delta.is_negative());
        self.x[k - 1] = self.target(k).clone();
        if !delta.is_zero() {
            self.moves.push(SlideMove { bead: k, delta });
        }
    }

    fn window_lambda(&self, lo: usize, hi: usize) -> Rational {
        (self.pos(hi).clone() - self.pos(hi - 1).clone())
            - (self.pos(lo).clone() - self.pos(lo - 1).clone())
    }

    fn target_lambda(&self, lo: usize, hi: usize) -> Rational {
        (self.target(hi).clone() - self.target(hi - 1).clone())
            - (self.target(lo).clone() - self.target(lo - 1).clone())
    }

    // Ok(true) on success, Ok(false) when the sweep budget of the relaxed
    // entry point ran out. Plain planning has no budget and cannot see
    // Ok(false).
    fn solve(&mut self, lo: usize, hi: usize, depth: usize) -> Result<bool, PlannerError> {
        if lo > hi {
            return Ok(true);
        }
        debug_assert_eq!(self.pos(lo - 1), self.target(lo - 1));
        // split windows inherit the slideable condition from the whole
        // target; re-check defensively when planning demands it
        #[cfg(debug_assertions)]
        if self.budget.is_none() {
            for i in lo + 2..=hi {
                let near = self.target(i).clone() - self.target(i - 1).clone();
                let far = self.target(i - 2).clone() - self.target(i - 3).clone();
                debug_assert!(near > far, "window target lost slideability");
            }
        }
        if self.pos(hi) != self.target(hi) {
            // only the global last bead can be off target here; it slides freely
            debug_assert_eq!(hi, self.b.len());
            self.pin(hi);
        }
        loop {
            if (lo..=hi).all(|i| self.pos(i) == self.target(i)) {
                return Ok(true);
            }
            if let Some(j) = (lo..hi).find(|&j| self.pos(j) == self.target(j)) {
                self.split_trace.push((j, depth));
                if !self.solve(lo, j, depth + 1)? {
                    return Ok(false);
                }
                return self.solve(j + 1, hi, depth + 1);
            }
            let m = hi - lo + 1;
            if m == 2 {
                // the single interior bead clamps straight to its target:
                // 2(B_lo - X_lo) <= B_{lo+1} + B_{lo-1} - 2X_lo reduces to
                // target gap monotonicity
                self.pin(lo);
                return Ok(true);
            }
            let bound = sweep_count_bound(
                m,
                &self.window_lambda(lo, hi),
                &self.target_lambda(lo, hi),
            );
            self.sweep_bound = self.sweep_bound.saturating_add(bound);
            let limit = self.budget.unwrap_or(bound);
            let mut used = 0u64;
            'sweeps: loop {
                if used == limit {
                    return if self.budget.is_some() {
                        Ok(false)
                    } else {
                        Err(PlannerError::SweepBoundExceeded)
                    };
                }
                used += 1;
                for k in (lo..hi).rev() {
                    let t = half(self.pos(k - 1).clone() + self.pos(k + 1).clone());
                    if t >= *self.target(k) {
                        // crossing: clamp to the target, which is admissible
                        // because it moves no further than the midpoint
                        self.pin(k);
                        break 'sweeps;
                    }
                    let delta = t.clone() - self.pos(k).clone();
                    if delta.is_positive() {
                        self.x[k - 1] = t;
                        self.moves.push(SlideMove { bead: k, delta });
                    }
                }
            }
            self.sweeps_used += used;
            // the clamped bead now matches the target; the split branch of
            // the next iteration pins the window apart around it
        }
    }

    fn into_result(self) -> PlanResult {
        PlanResult {
            plan: SlidePlan { moves: self.moves },
            sweeps_used: self.sweeps_used,
            sweep_bound: self.sweep_bound,
            split_trace: self.split_trace,
        }
    }
}

fn require_dominated(a: &BeadConfig, b: &BeadConfig) -> Result<(), PlannerError> {
    if a.leq(b)? {
        Ok(())
    } else {
        Err(PlannerError::NotDominated)
    }
}

/// Constructs a certificate of admissible slides from `a` to `b`.
///
/// Requires `a <= b` componentwise and a slideable target. Every emitted
/// move has a strictly positive delta, every intermediate configuration
/// stays componentwise below `b`, and replay ends exactly at `b`.
pub fn plan(a: &BeadConfig, b: &BeadConfig) -> Result<PlanResult, PlannerError> {
    require_dominated(a, b)?;
    if !b.is_slideable_target() {
        return Err(PlannerError::TargetNotSlideable);
    }
    let mut w = Walker::new(a, b, None);
    let done = w.solve(1, b.n(), 0)?;
    debug_assert!(done);
    Ok(w.into_result())
}

/// Best-effort planning without the slideable-target requirement.
///
/// Runs the same recursion with at most `max_sweeps` sweep passes per
/// window. `Ok(None)` means no certificate was found within the budget; it
/// is not a proof of unreachability, although for targets without a
/// one-step predecessor no budget can ever succeed.
pub fn try_plan(
    a: &BeadConfig,
    b: &BeadConfig,
    max_sweeps: u64,
) -> Result<Option<PlanResult>, PlannerError> {
    require_dominated(a, b)?;
    let mut w = Walker::new(a, b, Some(max_sweeps));
    if w.solve(1, b.n(), 0)? {
        Ok(Some(w.into_result()))
    } else {
        Ok(None)
    }
}

/// The perturbed target `B(eps)` with `B_k(eps) = B_k + 2^k * eps`.
///
/// The sleeve is always a slideable target, dominates `b`, and deviates
/// from it by at most `2^n * eps` (attained at the last bead), so planning
/// toward it witnesses reachability of `b` in the closure of the slide
/// order as `eps` shrinks.
pub fn epsilon_sleeve(b: &BeadConfig, eps: &Rational) -> Result<BeadConfig, PlannerError> {
    if !eps.is_positive() {
        return Err(PlannerError::NonpositiveEpsilon);
    }
    let two = Rational::from_integer(2.into());
    let mut pow = Rational::one();
    let positions = b
        .positions()
        .iter()
        .map(|p| {
            pow *= &two;
            p + &pow * eps
        })
        .collect();
    let sleeve = BeadConfig::new(b.mu().clone(), positions)
        .expect("the sleeve widens every gap difference");
    debug_assert!(sleeve.is_slideable_target());
    Ok(sleeve)
}

/// Plans from `a` to the sleeve of `b`: an approximate certificate whose
/// terminal overshoots each `B_k` by exactly `2^k * eps`.
pub fn approx_plan(
    a: &BeadConfig,
    b: &BeadConfig,
    eps: &Rational,
) -> Result<PlanResult, PlannerError> {
    require_dominated(a, b)?;
    let sleeve = epsilon_sleeve(b, eps)?;
    plan(a, &sleeve)
}

/// Replays `p` from `a` and checks that it certifies reachability of `b`:
/// every step admissible, every intermediate componentwise below `b`, and
/// the terminal equal to `b` exactly. Failures are reported, not raised.
pub fn verify_plan(a: &BeadConfig, p: &SlidePlan, b: &BeadConfig) -> VerificationReport {
    let fail = |step, reason| VerificationReport {
        ok: false,
        failing_step: step,
        reason: Some(reason),
    };
    let mut x = a.clone();
    for (i, mv) in p.moves.iter().enumerate() {
        x = match x.apply_slide(mv) {
            Ok(next) => next,
            Err(_) => return fail(Some(i + 1), VerifyFailure::InadmissibleStep),
        };
        if !matches!(x.leq(b), Ok(true)) {
            return fail(Some(i + 1), VerifyFailure::LeftBBox);
        }
    }
    if x == *b {
        VerificationReport { ok: true, failing_step: None, reason: None }
    } else {
        fail(None, VerifyFailure::WrongTerminal)
    }
}

/// The positions bead `k` may occupy one admissible slide before the
/// target.
///
/// Lowering only coordinate `k` of `b` to `v` must leave a monotone
/// configuration; the slide back up to `B_k` is then automatically
/// admissible because `b` itself is monotone. The binding constraints are
/// `v >= 2B_{k-1} - B_{k-2}` (the base point when `k = 1`), the reflected
/// bound `v >= 2B_{k+1} - B_{k+2}` when two beads follow, and `v < B_k`;
/// the midpoint ceiling `v <= (B_{k-1} + B_{k+1}) / 2` is implied by
/// `v < B_k` since target gaps are monotone.
pub fn one_step_predecessor_interval(
    b: &BeadConfig,
    k: usize,
) -> Result<PredecessorInterval, PlannerError> {
    let n = b.n();
    if k < 1 || k > n {
        return Err(PlannerError::IndexOutOfRange { k, beads: n });
    }
    let pos = |i: usize| -> &Rational {
        if i == 0 {
            b.mu()
        } else {
            &b.positions()[i - 1]
        }
    };
    let two = Rational::from_integer(2.into());
    let mut lower = if k == 1 {
        b.mu().clone()
    } else {
        &two * pos(k - 1) - pos(k - 2)
    };
    if k + 2 <= n {
        let behind = &two * pos(k + 1) - pos(k + 2);
        if behind > lower {
            lower = behind;
        }
    }
    let upper = pos(k).clone();
    let empty = lower >= upper;
    Ok(PredecessorInterval { bead: k, lower, upper, empty })
}

/// Whether any bead admits a one-step predecessor. When this is false the
/// target is unreachable from every other configuration: the final move of
/// any certificate would land in one of the intervals.
pub fn has_predecessor(b: &BeadConfig) -> bool {
    (1..=b.n()).any(|k| {
        !one_step_predecessor_interval(b, k)
            .expect("index in range")
            .empty
    })
}

/// The explicit dominated-but-unreachable companion of a target whose last
/// three gaps are equal and exceed the gap before them.
///
/// With gaps `b_1, ..., b_n` satisfying `b_n = b_{n-1} = b_{n-2} > b_{n-3}`,
/// the configuration keeping `C_k = B_k` for `k <= n-3` and then stepping
/// by `b_{n-3}, b_{n-2}, b_{n-1}` is monotone, strictly below the target,
/// and cannot reach it (the target admits no one-step predecessor at the
/// tail pattern).
pub fn converse_counterexample(b: &BeadConfig) -> Result<BeadConfig, PlannerError> {
    let n = b.n();
    if n < 4 {
        return Err(PlannerError::PatternMismatch {
            detail: "needs at least four beads",
        });
    }
    let g = b.gaps();
    let gs = g.gaps();
    if gs[n - 1] != gs[n - 2] || gs[n - 2] != gs[n - 3] {
        return Err(PlannerError::PatternMismatch {
            detail: "the last three gaps must be equal",
        });
    }
    if gs[n - 2] <= gs[n - 4] {
        return Err(PlannerError::PatternMismatch {
            detail: "the equal tail gaps must exceed the gap before them",
        });
    }
    let mut positions: Vec<Rational> = b.positions()[..n - 3].to_vec();
    for step in &gs[n - 4..n - 1] {
        let last = positions.last().cloned().unwrap_or_else(|| b.mu().clone());
        positions.push(last + step);
    }
    let c = BeadConfig::new(b.mu().clone(), positions)
        .expect("shifting the tail gaps down one slot keeps them monotone");
    debug_assert!(c.leq(b).unwrap() && c != *b);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::bead::ConfigError;
    use crate::GapVector;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn config(mu: i64, pos: &[(i64, i64)]) -> BeadConfig {
        BeadConfig::new(
            Rational::from_integer(mu.into()),
            pos.iter().map(|&(n, d)| rat(n, d)).collect(),
        )
        .unwrap()
    }

    fn ints(mu: i64, pos: &[i64]) -> BeadConfig {
        config(mu, &pos.iter().map(|&p| (p, 1)).collect::<Vec<_>>())
    }

    fn mv(bead: usize, n: i64, d: i64) -> SlideMove {
        SlideMove { bead, delta: rat(n, d) }
    }

    #[test]
    fn midpoint_centers_a_bead_between_its_neighbors() {
        let (m2, x1) = midpoint_move(&ints(0, &[1, 3, 6]), 2).unwrap();
        assert_eq!(m2, mv(2, 1, 2));
        assert_eq!(x1, config(0, &[(1, 1), (7, 2), (6, 1)]));

        let (m1, x2) = midpoint_move(&x1, 1).unwrap();
        assert_eq!(m1, mv(1, 3, 4));
        assert_eq!(x2, config(0, &[(7, 4), (7, 2), (6, 1)]));

        let equi = ints(0, &[1, 2, 3]);
        let (m0, same) = midpoint_move(&equi, 2).unwrap();
        assert!(m0.delta.is_zero());
        assert_eq!(same, equi);

        assert_eq!(
            midpoint_move(&equi, 3).unwrap_err(),
            PlannerError::IndexOutOfRange { k: 3, beads: 3 }
        );
        assert_eq!(
            midpoint_move(&equi, 0).unwrap_err(),
            PlannerError::IndexOutOfRange { k: 0, beads: 3 }
        );
    }

    #[test]
    fn sweep_contracts_the_spread() {
        let x = ints(0, &[1, 3, 6]);
        let (moves, out) = sweep_t(&x).unwrap();
        assert_eq!(moves, vec![mv(2, 1, 2), mv(1, 3, 4)]);
        assert_eq!(out, config(0, &[(7, 4), (7, 2), (6, 1)]));
        assert_eq!(x.lambda(), rat(2, 1));
        assert_eq!(out.lambda(), rat(3, 4));
        // the contraction factor for three beads is 3/4
        assert!(out.lambda() <= rat(3, 4) * x.lambda());

        let (none, fixed) = sweep_t(&ints(0, &[1, 2, 3])).unwrap();
        assert!(none.is_empty());
        assert_eq!(fixed, ints(0, &[1, 2, 3]));

        let (single, out2) = sweep_t(&ints(0, &[2, 10])).unwrap();
        assert_eq!(single, vec![mv(1, 3, 1)]);
        assert_eq!(out2, ints(0, &[5, 10]));
        assert!(out2.lambda().is_zero());

        assert_eq!(
            sweep_t(&ints(0, &[5])).unwrap_err(),
            PlannerError::TooFewBeads { beads: 1 }
        );
    }

    #[test]
    fn plan_emits_a_verified_certificate() {
        let a = config(0, &[(1, 2), (2, 1), (4, 1)]);
        let b = ints(0, &[1, 3, 6]);
        let r = plan(&a, &b).unwrap();
        assert_eq!(r.plan.moves, vec![mv(3, 2, 1), mv(2, 1, 1), mv(1, 1, 2)]);
        assert_eq!(r.sweeps_used, 1);
        assert_eq!(r.sweep_bound, 6);
        assert_eq!(r.split_trace, vec![(2, 0)]);
        assert!(r.sweeps_used <= r.sweep_bound);
        assert!(verify_plan(&a, &r.plan, &b).ok);

        // replay and freeze the intermediate gap vectors
        let mut x = a.clone();
        let mut gap_states = Vec::new();
        for m in &r.plan.moves {
            x = x.apply_slide(m).unwrap();
            gap_states.push(x.gaps().gaps().to_vec());
        }
        assert_eq!(
            gap_states,
            vec![
                vec![rat(1, 2), rat(3, 2), rat(4, 1)],
                vec![rat(1, 2), rat(5, 2), rat(3, 1)],
                vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            ]
        );
    }

    #[test]
    fn plan_on_equal_endpoints_is_empty() {
        let b = ints(0, &[1, 3, 6]);
        let r = plan(&b, &b).unwrap();
        assert!(r.plan.is_empty());
        assert_eq!(r.sweeps_used, 0);
        assert_eq!(r.sweep_bound, 0);
        assert!(r.split_trace.is_empty());
    }

    #[test]
    fn plan_gates_its_preconditions() {
        let equi = ints(0, &[1, 2, 3]);
        assert_eq!(
            plan(&equi, &equi).unwrap_err(),
            PlannerError::TargetNotSlideable
        );
        // the relaxed entry point accepts the same pair
        let relaxed = try_plan(&equi, &equi, 5).unwrap().unwrap();
        assert!(relaxed.plan.is_empty());

        let a = ints(0, &[2, 4, 7]);
        let b = ints(0, &[1, 3, 6]);
        assert_eq!(plan(&a, &b).unwrap_err(), PlannerError::NotDominated);
        assert!(matches!(
            plan(&ints(0, &[1, 3]), &b).unwrap_err(),
            PlannerError::Incompatible(OrderError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            plan(&ints(1, &[1, 3, 6]), &b).unwrap_err(),
            PlannerError::Incompatible(OrderError::BasePointMismatch)
        ));
    }

    #[test]
    fn try_plan_reuses_the_same_walk_under_a_budget() {
        let a = config(0, &[(1, 2), (2, 1), (4, 1)]);
        let b = ints(0, &[1, 3, 6]);
        let r = try_plan(&a, &b, 1).unwrap().unwrap();
        assert_eq!(r.plan.moves, vec![mv(3, 2, 1), mv(2, 1, 1), mv(1, 1, 2)]);
    }

    #[test]
    fn try_plan_gives_up_on_an_equidistant_target() {
        let a = config(0, &[(1, 2), (3, 2), (5, 2)]);
        let b = ints(0, &[1, 2, 3]);
        assert_eq!(try_plan(&a, &b, 100).unwrap(), None);
    }

    #[test]
    fn verify_rejects_bad_replays() {
        let a = ints(0, &[1, 3, 6]);
        // bead 1 may cover at most half the gap difference, so a full unit
        // is too far no matter the claimed terminal
        let bad = SlidePlan { moves: vec![mv(1, 1, 1)] };
        let report = verify_plan(&a, &bad, &a);
        assert_eq!(
            report,
            VerificationReport {
                ok: false,
                failing_step: Some(1),
                reason: Some(VerifyFailure::InadmissibleStep),
            }
        );

        let empty = SlidePlan::default();
        let report = verify_plan(&a, &empty, &ints(0, &[1, 3, 7]));
        assert_eq!(report.reason, Some(VerifyFailure::WrongTerminal));
        assert_eq!(report.failing_step, None);

        // an admissible move that overshoots the target box
        let over = SlidePlan { moves: vec![mv(3, 1, 1)] };
        let report = verify_plan(&a, &over, &a);
        assert_eq!(
            report,
            VerificationReport {
                ok: false,
                failing_step: Some(1),
                reason: Some(VerifyFailure::LeftBBox),
            }
        );

        let ok = verify_plan(&a, &empty, &a);
        assert!(ok.ok && ok.failing_step.is_none() && ok.reason.is_none());
    }

    #[test]
    fn sleeve_doubles_the_perturbation_per_bead() {
        let b = ints(0, &[1, 2, 3]);
        let s = epsilon_sleeve(&b, &rat(1, 8)).unwrap();
        assert_eq!(s, config(0, &[(5, 4), (5, 2), (4, 1)]));
        assert_eq!(
            s.gaps().gaps().to_vec(),
            vec![rat(5, 4), rat(5, 4), rat(3, 2)]
        );
        assert!(s.is_slideable_target());
        assert!(b.leq(&s).unwrap());

        assert_eq!(
            epsilon_sleeve(&b, &Rational::zero()).unwrap_err(),
            PlannerError::NonpositiveEpsilon
        );
        assert_eq!(
            epsilon_sleeve(&ints(0, &[5]), &rat(1, 1)).unwrap(),
            ints(0, &[7])
        );
    }

    #[test]
    fn approx_plan_reaches_the_sleeve_exactly() {
        let a = config(0, &[(1, 2), (3, 2), (5, 2)]);
        let b = ints(0, &[1, 2, 3]);
        let eps = rat(1, 8);
        let r = approx_plan(&a, &b, &eps).unwrap();
        let sleeve = epsilon_sleeve(&b, &eps).unwrap();
        assert_eq!(sleeve, config(0, &[(5, 4), (5, 2), (4, 1)]));
        assert!(verify_plan(&a, &r.plan, &sleeve).ok);

        // the terminal deviation is 2^n * eps, at the last bead
        let dev = sleeve.positions()[2].clone() - b.positions()[2].clone();
        assert_eq!(dev, rat(1, 1));

        // planning from the target itself still slides every bead right
        let from_b = approx_plan(&b, &b, &eps).unwrap();
        assert!(verify_plan(&b, &from_b.plan, &sleeve).ok);
        assert_eq!(from_b.plan.len(), 3);
    }

    #[test]
    fn predecessor_intervals_follow_the_gap_constraints() {
        let equi = ints(0, &[1, 2, 3]);
        let i2 = one_step_predecessor_interval(&equi, 2).unwrap();
        assert_eq!((i2.lower, i2.upper, i2.empty), (rat(2, 1), rat(2, 1), true));

        let b = ints(0, &[1, 3, 6]);
        let i3 = one_step_predecessor_interval(&b, 3).unwrap();
        assert_eq!((i3.lower, i3.upper, i3.empty), (rat(5, 1), rat(6, 1), false));
        let i1 = one_step_predecessor_interval(&b, 1).unwrap();
        assert_eq!((i1.lower, i1.upper, i1.empty), (rat(0, 1), rat(1, 1), false));

        assert!(matches!(
            one_step_predecessor_interval(&b, 4),
            Err(PlannerError::IndexOutOfRange { k: 4, beads: 3 })
        ));
    }

    #[test]
    fn predecessor_existence_matches_the_intervals() {
        assert!(!has_predecessor(&ints(0, &[1, 2, 3])));
        assert!(!has_predecessor(&ints(0, &[1, 3, 5, 7])));
        assert!(has_predecessor(&ints(0, &[1, 3, 6])));
    }

    #[test]
    fn converse_construction_shifts_the_tail_gaps() {
        let b = ints(0, &[1, 3, 5, 7]);
        let c = converse_counterexample(&b).unwrap();
        assert_eq!(c, ints(0, &[1, 2, 4, 6]));
        assert!(c.leq(&b).unwrap());
        assert_ne!(c, b);

        let b5 = ints(0, &[1, 3, 6, 9, 12]);
        assert_eq!(
            converse_counterexample(&b5).unwrap(),
            ints(0, &[1, 3, 5, 8, 11])
        );

        assert!(matches!(
            converse_counterexample(&ints(0, &[1, 3, 6, 10])),
            Err(PlannerError::PatternMismatch { .. })
        ));
        assert!(matches!(
            converse_counterexample(&ints(0, &[1, 2, 3])),
            Err(PlannerError::PatternMismatch { .. })
        ));
    }

    #[test]
    fn sweep_bound_freezes_the_worked_ratio() {
        // the planning example: window of three beads, spreads 7/2 and 2
        assert_eq!(sweep_count_bound(3, &rat(7, 2), &rat(2, 1)), 6);
        assert_eq!(sweep_count_bound(3, &rat(1, 1), &rat(2, 1)), 1);
        assert_eq!(sweep_count_bound(3, &rat(1, 1), &Rational::zero()), u64::MAX);
    }

    #[test]
    fn planned_moves_are_strictly_positive_and_stay_boxed() {
        let a = ints(0, &[0, 1, 2, 4]);
        let b = ints(0, &[2, 5, 8, 12]);
        assert!(b.is_slideable_target());
        let r = plan(&a, &b).unwrap();
        assert!(r.plan.moves.iter().all(|m| m.delta.is_positive()));
        assert!(verify_plan(&a, &r.plan, &b).ok);
        assert!(r.sweeps_used <= r.sweep_bound);
    }

    #[test]
    fn gap_form_still_validates_after_planning_helpers() {
        // guard against accidental regressions in shared validation
        assert_eq!(
            GapVector::new(rat(0, 1), vec![rat(2, 1), rat(1, 1)]).unwrap_err(),
            ConfigError::GapDecrease { gap: 2 }
        );
    }
}
