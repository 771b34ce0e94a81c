//! Monotone bead configurations and admissible slides.
//!
//! A configuration keeps `n` beads on a line at positions
//! `A_1 <= A_2 <= ... <= A_n`, anchored to a base point `mu` that acts as a
//! zeroth bead. Writing `a_k = A_k - A_{k-1}` for the consecutive gaps (with
//! `A_0 = mu`), the defining invariant is
//!
//! ```text
//! 0 <= a_1 <= a_2 <= ... <= a_n
//! ```
//!
//! Equal gaps are allowed and the first bead may sit on the base point, so
//! the set of valid configurations is closed.
//!
//! Beads only move right. Sliding bead `k` by `delta >= 0` widens gap `k`
//! and narrows gap `k+1`, so for `k < n` the move keeps the invariant
//! exactly when `2*delta <= a_{k+1} - a_k`; the last bead has no gap after
//! it and slides freely. A zero-length slide is an admissible no-op.
//!
//! Componentwise comparison over a shared base point (`leq`) is the ambient
//! partial order on configurations; reachability along finite admissible
//! slide sequences refines it and is the subject of the planner module.

use crate::scalar::{twice, Scalar};
use thiserror::Error;

/// Why a position or gap list is not a valid configuration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("a configuration needs at least one bead")]
    Empty,
    #[error("value at index {index} is not comparable (index 0 is the base point)")]
    Incomparable { index: usize },
    #[error("the first bead lies left of the base point")]
    FirstGapNegative,
    #[error("gaps must not decrease: gap {gap} is smaller than the one before it")]
    GapDecrease { gap: usize },
}

/// Why two configurations cannot be compared componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("configurations have {left} and {right} beads")]
    DimensionMismatch { left: usize, right: usize },
    #[error("configurations have different base points")]
    BasePointMismatch,
}

/// Why a slide cannot be applied.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlideError {
    #[error("bead index {bead} out of range for {beads} beads (indices are 1-based)")]
    BeadOutOfRange { bead: usize, beads: usize },
    #[error("slide of bead {bead} has a negative or incomparable delta")]
    NegativeDelta { bead: usize },
    #[error("slide of bead {bead} breaks monotonicity: 2*delta exceeds the gap difference ahead")]
    GapConstraint { bead: usize },
}

/// A single slide: bead `bead` (1-based) moves right by `delta >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slide<S> {
    pub bead: usize,
    pub delta: S,
}

/// A finite sequence of slides, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan<S> {
    pub moves: Vec<Slide<S>>,
}

impl<S> Default for Plan<S> {
    fn default() -> Self {
        Plan { moves: Vec::new() }
    }
}

impl<S> Plan<S> {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

/// A monotone bead configuration: base point plus bead positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Beads<S> {
    mu: S,
    positions: Vec<S>,
}

/// The gap form of a configuration: base point plus consecutive gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gaps<S> {
    mu: S,
    gaps: Vec<S>,
}

fn check_comparable<S: Scalar>(mu: &S, values: &[S]) -> Result<(), ConfigError> {
    if !mu.is_comparable() {
        return Err(ConfigError::Incomparable { index: 0 });
    }
    for (i, v) in values.iter().enumerate() {
        if !v.is_comparable() {
            return Err(ConfigError::Incomparable { index: i + 1 });
        }
    }
    Ok(())
}

impl<S: Scalar> Beads<S> {
    /// Validates monotonicity and builds a configuration.
    pub fn new(mu: S, positions: Vec<S>) -> Result<Self, ConfigError> {
        if positions.is_empty() {
            return Err(ConfigError::Empty);
        }
        check_comparable(&mu, &positions)?;
        let mut prev_pos = mu.clone();
        let mut prev_gap: Option<S> = None;
        for (i, p) in positions.iter().enumerate() {
            let gap = p.clone() - prev_pos;
            match &prev_gap {
                None => {
                    if gap < S::zero() {
                        return Err(ConfigError::FirstGapNegative);
                    }
                }
                Some(prev) => {
                    if gap < *prev {
                        return Err(ConfigError::GapDecrease { gap: i + 1 });
                    }
                }
            }
            prev_pos = p.clone();
            prev_gap = Some(gap);
        }
        Ok(Self { mu, positions })
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn mu(&self) -> &S {
        &self.mu
    }

    pub fn positions(&self) -> &[S] {
        &self.positions
    }

    /// The gap form `(a_1, ..., a_n)` with `a_k = A_k - A_{k-1}`.
    pub fn gaps(&self) -> Gaps<S> {
        let mut prev = self.mu.clone();
        let mut gaps = Vec::with_capacity(self.positions.len());
        for p in &self.positions {
            gaps.push(p.clone() - prev);
            prev = p.clone();
        }
        Gaps { mu: self.mu.clone(), gaps }
    }

    /// Componentwise order against a configuration over the same base point.
    pub fn leq(&self, other: &Self) -> Result<bool, OrderError> {
        if self.positions.len() != other.positions.len() {
            return Err(OrderError::DimensionMismatch {
                left: self.positions.len(),
                right: other.positions.len(),
            });
        }
        if self.mu != other.mu {
            return Err(OrderError::BasePointMismatch);
        }
        Ok(self
            .positions
            .iter()
            .zip(&other.positions)
            .all(|(a, b)| a <= b))
    }

    /// The spread `lambda = a_n - a_1`. Zero exactly when all gaps agree,
    /// the base point included; a single bead always has zero spread.
    pub fn lambda(&self) -> S {
        let n = self.positions.len();
        let first_gap = self.positions[0].clone() - self.mu.clone();
        let last_gap = if n == 1 {
            first_gap.clone()
        } else {
            self.positions[n - 1].clone() - self.positions[n - 2].clone()
        };
        last_gap - first_gap
    }

    /// Whether every dominated configuration can reach this one: no gap may
    /// fall back to the one two places before it, `b_k > b_{k-2}` for all
    /// `3 <= k <= n`. Vacuously true with fewer than three beads.
    pub fn is_slideable_target(&self) -> bool {
        let g = self.gaps();
        let gs = g.gaps();
        (2..gs.len()).all(|i| gs[i] > gs[i - 2])
    }

    /// Applies one slide, rejecting moves that break monotonicity.
    pub fn apply_slide(&self, mv: &Slide<S>) -> Result<Self, SlideError> {
        let n = self.positions.len();
        let k = mv.bead;
        if k == 0 || k > n {
            return Err(SlideError::BeadOutOfRange { bead: k, beads: n });
        }
        if !mv.delta.is_comparable() || mv.delta < S::zero() {
            return Err(SlideError::NegativeDelta { bead: k });
        }
        if k < n {
            let left = if k == 1 {
                self.mu.clone()
            } else {
                self.positions[k - 2].clone()
            };
            let headroom =
                self.positions[k].clone() + left - twice(self.positions[k - 1].clone());
            if twice(mv.delta.clone()) > headroom {
                return Err(SlideError::GapConstraint { bead: k });
            }
        }
        let mut next = self.clone();
        next.positions[k - 1] = next.positions[k - 1].clone() + mv.delta.clone();
        Ok(next)
    }
}

impl<S: Scalar> Gaps<S> {
    /// Validates the gap invariant and builds the gap form directly.
    pub fn new(mu: S, gaps: Vec<S>) -> Result<Self, ConfigError> {
        if gaps.is_empty() {
            return Err(ConfigError::Empty);
        }
        check_comparable(&mu, &gaps)?;
        if gaps[0] < S::zero() {
            return Err(ConfigError::FirstGapNegative);
        }
        for i in 1..gaps.len() {
            if gaps[i] < gaps[i - 1] {
                return Err(ConfigError::GapDecrease { gap: i + 1 });
            }
        }
        Ok(Self { mu, gaps })
    }

    pub fn n(&self) -> usize {
        self.gaps.len()
    }

    pub fn mu(&self) -> &S {
        &self.mu
    }

    pub fn gaps(&self) -> &[S] {
        &self.gaps
    }

    /// The position form: prefix sums of the gaps over the base point.
    pub fn config(&self) -> Beads<S> {
        let mut pos = Vec::with_capacity(self.gaps.len());
        let mut acc = self.mu.clone();
        for g in &self.gaps {
            acc = acc + g.clone();
            pos.push(acc.clone());
        }
        Beads { mu: self.mu.clone(), positions: pos }
    }

    /// The same slide as [`Beads::apply_slide`], in gap coordinates: gap `k`
    /// grows by delta and gap `k+1` shrinks by it.
    pub fn apply_slide(&self, mv: &Slide<S>) -> Result<Self, SlideError> {
        let n = self.gaps.len();
        let k = mv.bead;
        if k == 0 || k > n {
            return Err(SlideError::BeadOutOfRange { bead: k, beads: n });
        }
        if !mv.delta.is_comparable() || mv.delta < S::zero() {
            return Err(SlideError::NegativeDelta { bead: k });
        }
        if k < n {
            let headroom = self.gaps[k].clone() - self.gaps[k - 1].clone();
            if twice(mv.delta.clone()) > headroom {
                return Err(SlideError::GapConstraint { bead: k });
            }
        }
        let mut next = self.clone();
        next.gaps[k - 1] = next.gaps[k - 1].clone() + mv.delta.clone();
        if k < n {
            next.gaps[k] = next.gaps[k].clone() - mv.delta.clone();
        }
        Ok(next)
    }
}
