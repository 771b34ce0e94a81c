//! Brute-force ground truth on a rational lattice.
//!
//! The planner and the predecessor intervals are analytic; this module
//! answers the same questions by plain search so tests can compare the two
//! routes. All coordinates are scaled by a common denominator onto an
//! integer lattice, where admissible slides become integer steps and
//! breadth-first search enumerates exactly the reachable configurations
//! with lattice-sized deltas.
//!
//! Everything here is deterministic: the queue is FIFO, successors are
//! generated in increasing bead and position order, and hash maps are used
//! only for membership, never to order output.

use std::collections::{HashMap, VecDeque};

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bead::OrderError;
use crate::{BeadConfig, GapVector, Rational, SlideMove, SlidePlan};

/// Why a lattice search cannot run or had to stop.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Incompatible(#[from] OrderError),
    #[error("the source is not componentwise below the target")]
    NotDominated,
    #[error("the lattice denominator must be a positive integer")]
    ZeroDenominator,
    #[error("value {value} does not lie on the lattice")]
    OffLattice { value: String },
    #[error("exploration exceeded the budget of {max_states} states")]
    BudgetExceeded { max_states: usize },
}

/// Search parameters: the lattice is the integer grid divided by
/// `denominator`, and at most `max_states` distinct configurations are
/// visited before the search gives up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSpec {
    pub denominator: i64,
    pub max_states: usize,
}

/// What the search concluded, with the explored-state count and, for
/// reachable targets, a replayable witness plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityVerdict {
    pub reachable: bool,
    pub states_explored: usize,
    pub witness: Option<SlidePlan>,
}

fn scale(r: &Rational, d: i64) -> Result<i64, OracleError> {
    let off_lattice = || OracleError::OffLattice {
        value: crate::json::format_rational(r),
    };
    let v = r * Rational::from_integer(d.into());
    if !v.is_integer() {
        return Err(off_lattice());
    }
    v.to_integer().to_i64().ok_or_else(off_lattice)
}

fn scale_all(c: &BeadConfig, d: i64) -> Result<(i64, Vec<i64>), OracleError> {
    let mu = scale(c.mu(), d)?;
    let positions = c
        .positions()
        .iter()
        .map(|p| scale(p, d))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((mu, positions))
}

/// Decides reachability of `b` from `a` by exhaustive search over slides
/// whose deltas are multiples of `1 / spec.denominator`.
///
/// Requires `a <= b` componentwise. Reachable verdicts carry a witness
/// plan that replays to `b`; unreachable ones are exhaustive for the given
/// lattice, not for arbitrary rational slides. The search never visits
/// more than `spec.max_states` configurations; needing more is an error,
/// not a verdict.
// state -> (parent state, move that produced it); the start has no parent
type ParentMap = HashMap<Vec<i64>, Option<(Vec<i64>, (usize, i64))>>;

pub fn lattice_reachable(
    a: &BeadConfig,
    b: &BeadConfig,
    spec: &LatticeSpec,
) -> Result<ReachabilityVerdict, OracleError> {
    if !a.leq(b)? {
        return Err(OracleError::NotDominated);
    }
    if spec.denominator < 1 {
        return Err(OracleError::ZeroDenominator);
    }
    let d = spec.denominator;
    let (mu, start) = scale_all(a, d)?;
    let (_, goal) = scale_all(b, d)?;
    if start == goal {
        return Ok(ReachabilityVerdict {
            reachable: true,
            states_explored: 0,
            witness: Some(SlidePlan::default()),
        });
    }
    let n = start.len();
    let mut parents = ParentMap::new();
    if spec.max_states == 0 {
        return Err(OracleError::BudgetExceeded { max_states: 0 });
    }
    parents.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    let mut explored = 0usize;
    while let Some(state) = queue.pop_front() {
        explored += 1;
        for k in 1..=n {
            let here = state[k - 1];
            let cap = if k == n {
                goal[n - 1]
            } else {
                let left = if k == 1 { mu } else { state[k - 2] };
                // the integer form of 2p <= left + right, floored toward
                // minus infinity because positions may be negative
                let mid = (left as i128 + state[k] as i128).div_euclid(2);
                (goal[k - 1] as i128).min(mid) as i64
            };
            for p in here + 1..=cap {
                let mut next = state.clone();
                next[k - 1] = p;
                let step = (k, p - here);
                if next == goal {
                    let mut moves = witness_moves(&parents, &state, d);
                    moves.push(lattice_move(step, d));
                    return Ok(ReachabilityVerdict {
                        reachable: true,
                        states_explored: explored,
                        witness: Some(SlidePlan { moves }),
                    });
                }
                if !parents.contains_key(&next) {
                    if parents.len() == spec.max_states {
                        return Err(OracleError::BudgetExceeded {
                            max_states: spec.max_states,
                        });
                    }
                    parents.insert(next.clone(), Some((state.clone(), step)));
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(ReachabilityVerdict {
        reachable: false,
        states_explored: explored,
        witness: None,
    })
}

fn lattice_move((bead, dp): (usize, i64), d: i64) -> SlideMove {
    SlideMove {
        bead,
        delta: Rational::new(dp.into(), d.into()),
    }
}

fn witness_moves(parents: &ParentMap, last: &[i64], d: i64) -> Vec<SlideMove> {
    let mut moves = Vec::new();
    let mut state = last.to_vec();
    while let Some(Some((prev, step))) = parents.get(&state) {
        moves.push(lattice_move(*step, d));
        state = prev.clone();
    }
    moves.reverse();
    moves
}

/// Enumerates every configuration exactly one lattice-sized admissible
/// slide before `b`, in increasing bead order and increasing position.
///
/// This is a second, independent route to the predecessor question: each
/// candidate lowers one coordinate of `b` onto the lattice and is kept
/// only if it validates as a configuration and the slide back up actually
/// lands on `b`. The candidate set is finite, so only the lattice
/// denominator of `spec` is consulted, never its state budget.
pub fn enumerate_one_step_predecessors(
    b: &BeadConfig,
    spec: &LatticeSpec,
) -> Result<Vec<BeadConfig>, OracleError> {
    if spec.denominator < 1 {
        return Err(OracleError::ZeroDenominator);
    }
    let d = spec.denominator;
    let (mu, pos) = scale_all(b, d)?;
    let n = pos.len();
    let mut out = Vec::new();
    for k in 1..=n {
        let lo = if k == 1 { mu } else { pos[k - 2] };
        for v in lo..pos[k - 1] {
            let mut positions = b.positions().to_vec();
            positions[k - 1] = Rational::new(v.into(), d.into());
            let candidate = match BeadConfig::new(b.mu().clone(), positions) {
                Ok(c) => c,
                Err(_) => continue,
            };
            let back = SlideMove {
                bead: k,
                delta: Rational::new((pos[k - 1] - v).into(), d.into()),
            };
            if candidate.apply_slide(&back).ok().as_ref() == Some(b) {
                out.push(candidate);
            }
        }
    }
    Ok(out)
}

/// Draws a reproducible dominated pair `(a, b)` with `n` beads from
/// `seed`.
///
/// The target's gaps grow by quarter-unit increments; when
/// `slideable_only` is set, zero increments never repeat, which is exactly
/// the slideable-target condition. The source then interpolates each gap
/// between its predecessor and the largest value every later target
/// position still allows, so `a <= b` holds by construction. Draw order:
/// base point, first gap, one increment per remaining gap, one
/// interpolation parameter per source gap.
pub fn random_pair(n: usize, seed: u64, slideable_only: bool) -> (BeadConfig, BeadConfig) {
    assert!(n >= 1, "a configuration needs at least one bead");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = |k: i64| Rational::new(k.into(), 4.into());
    let mu = q(rng.gen_range(-16..=16));
    let mut gaps = vec![q(rng.gen_range(0..=32))];
    let mut prev_zero = false;
    for _ in 1..n {
        let zero = if slideable_only {
            !prev_zero && rng.gen_bool(0.2)
        } else {
            rng.gen_bool(0.5)
        };
        let inc = if zero { Rational::zero() } else { q(rng.gen_range(1..=8)) };
        prev_zero = zero;
        let last = gaps.last().unwrap().clone();
        gaps.push(last + inc);
    }
    let b = GapVector::new(mu.clone(), gaps)
        .expect("increments keep the gaps nondecreasing")
        .config();
    debug_assert!(!slideable_only || b.is_slideable_target());

    let bpos = b.positions();
    let mut apos: Vec<Rational> = Vec::with_capacity(n);
    let mut prev_pos = mu.clone();
    let mut prev_gap = Rational::zero();
    for k in 0..n {
        // largest gap no later target position regrets: min over j >= k of
        // the even split of B_j - A_{k-1} across beads k..j
        let hi = bpos[k..]
            .iter()
            .enumerate()
            .map(|(i, bp)| (bp - &prev_pos) / Rational::from_integer(((i + 1) as i64).into()))
            .min()
            .expect("at least one later position exists");
        let t = Rational::new(rng.gen_range(0..=16i64).into(), 16.into());
        let gap = &prev_gap + (hi - &prev_gap) * t;
        prev_pos += &gap;
        apos.push(prev_pos.clone());
        prev_gap = gap;
    }
    let a = BeadConfig::new(mu, apos).expect("interpolated gaps stay nondecreasing");
    debug_assert!(a.leq(&b).unwrap());
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::verify_plan;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ints(mu: i64, pos: &[i64]) -> BeadConfig {
        BeadConfig::new(
            Rational::from_integer(mu.into()),
            pos.iter().map(|&p| Rational::from_integer(p.into())).collect(),
        )
        .unwrap()
    }

    fn spec(d: i64) -> LatticeSpec {
        LatticeSpec { denominator: d, max_states: 1_000_000 }
    }

    #[test]
    fn search_finds_a_replayable_witness() {
        let a = BeadConfig::new(rat(0, 1), vec![rat(1, 2), rat(2, 1), rat(4, 1)]).unwrap();
        let b = ints(0, &[1, 3, 6]);
        let v = lattice_reachable(&a, &b, &spec(2)).unwrap();
        assert!(v.reachable);
        assert!(v.states_explored > 0);
        let witness = v.witness.unwrap();
        assert!(verify_plan(&a, &witness, &b).ok);
    }

    #[test]
    fn search_exhausts_an_unreachable_equidistant_target() {
        let a = BeadConfig::new(rat(0, 1), vec![rat(1, 2), rat(3, 2), rat(5, 2)]).unwrap();
        let b = ints(0, &[1, 2, 3]);
        let v = lattice_reachable(&a, &b, &spec(2)).unwrap();
        assert!(!v.reachable);
        assert!(v.witness.is_none());
        assert!(v.states_explored > 0);
    }

    #[test]
    fn equal_endpoints_need_no_search() {
        let b = ints(0, &[1, 3, 6]);
        let v = lattice_reachable(&b, &b, &spec(2)).unwrap();
        assert!(v.reachable);
        assert_eq!(v.states_explored, 0);
        assert!(v.witness.unwrap().is_empty());
    }

    #[test]
    fn search_rejects_bad_inputs() {
        let a = ints(0, &[1, 2, 3]);
        let b = ints(0, &[1, 3, 6]);
        assert_eq!(
            lattice_reachable(&b, &b, &LatticeSpec { denominator: 0, max_states: 10 })
                .unwrap_err(),
            OracleError::ZeroDenominator
        );
        assert_eq!(
            lattice_reachable(&b, &a, &spec(2)).unwrap_err(),
            OracleError::NotDominated
        );
        let third = BeadConfig::new(rat(0, 1), vec![rat(1, 3)]).unwrap();
        assert_eq!(
            lattice_reachable(&third, &ints(0, &[1]), &spec(2)).unwrap_err(),
            OracleError::OffLattice { value: "1/3".to_owned() }
        );
    }

    #[test]
    fn search_respects_its_state_budget() {
        let a = BeadConfig::new(rat(0, 1), vec![rat(1, 2), rat(2, 1), rat(4, 1)]).unwrap();
        let b = ints(0, &[1, 3, 6]);
        let err = lattice_reachable(&a, &b, &LatticeSpec { denominator: 2, max_states: 2 })
            .unwrap_err();
        assert_eq!(err, OracleError::BudgetExceeded { max_states: 2 });
    }

    #[test]
    fn predecessor_enumeration_matches_the_frozen_examples() {
        let b = ints(0, &[1, 3, 6]);
        let preds = enumerate_one_step_predecessors(&b, &spec(1)).unwrap();
        assert_eq!(
            preds,
            vec![ints(0, &[0, 3, 6]), ints(0, &[1, 2, 6]), ints(0, &[1, 3, 5])]
        );

        assert!(enumerate_one_step_predecessors(&ints(0, &[1, 2, 3]), &spec(4))
            .unwrap()
            .is_empty());
        assert!(enumerate_one_step_predecessors(&ints(0, &[1, 3, 5, 7]), &spec(4))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn generated_pairs_are_reproducible_and_dominated() {
        for n in 1..=8 {
            for seed in 0..10 {
                let (a, b) = random_pair(n, seed, true);
                let (a2, b2) = random_pair(n, seed, true);
                assert_eq!((a.clone(), b.clone()), (a2, b2));
                assert!(a.leq(&b).unwrap());
                assert!(b.is_slideable_target());

                let (a, b) = random_pair(n, seed, false);
                assert!(a.leq(&b).unwrap());
            }
        }
    }
}
