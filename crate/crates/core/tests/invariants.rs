//! Property tests for the order, slide, and spread invariants.
//!
//! Configurations are drawn on a quarter-unit lattice so every check runs
//! in exact arithmetic; nothing here depends on tolerances.

use beadslide::json::{format_rational, parse_rational, ParseRationalError};
use beadslide::majorization::{check_transform_order, negated_reflection, TestFunction};
use beadslide::oracle::random_pair;
use beadslide::planner::{
    converse_counterexample, epsilon_sleeve, has_predecessor, midpoint_move,
    one_step_predecessor_interval, plan, sweep_t, try_plan, verify_plan,
};
use beadslide::{BeadConfig, GapVector, Rational, SlideMove};
use proptest::prelude::*;

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn quarters(k: i64) -> Rational {
    rat(k, 4)
}

// base point and nondecreasing gaps in quarter units
fn config_strategy() -> impl Strategy<Value = BeadConfig> {
    (
        -16..=16i64,
        0..=32i64,
        prop::collection::vec(0..=8i64, 0..=6),
    )
        .prop_map(|(mu, first, incs)| {
            let mut gaps = vec![quarters(first)];
            for inc in incs {
                gaps.push(gaps.last().unwrap() + quarters(inc));
            }
            GapVector::new(quarters(mu), gaps)
                .expect("nonnegative increments keep gaps nondecreasing")
                .config()
        })
}

fn dominated_pair_strategy(slideable: bool) -> impl Strategy<Value = (BeadConfig, BeadConfig)> {
    (1..=8usize, any::<u64>()).prop_map(move |(n, seed)| random_pair(n, seed, slideable))
}

fn last_admissible_slides(c: &BeadConfig) -> Vec<SlideMove> {
    let gaps = c.gaps();
    let gs = gaps.gaps();
    let n = c.n();
    let mut moves = Vec::new();
    for k in 1..n {
        let delta = (&gs[k] - &gs[k - 1]) / rat(2, 1);
        moves.push(SlideMove { bead: k, delta });
    }
    moves.push(SlideMove {
        bead: n,
        delta: rat(3, 4),
    });
    moves
}

proptest! {
    #[test]
    fn gap_and_position_forms_are_inverse(c in config_strategy()) {
        let g = c.gaps();
        prop_assert_eq!(g.config(), c.clone());
        let rebuilt = GapVector::new(g.mu().clone(), g.gaps().to_vec()).unwrap();
        prop_assert_eq!(rebuilt, g);
    }

    #[test]
    fn dominance_is_a_partial_order((a, b) in dominated_pair_strategy(false)) {
        prop_assert!(a.leq(&a).unwrap());
        prop_assert!(b.leq(&b).unwrap());
        prop_assert!(a.leq(&b).unwrap());
        // antisymmetry
        prop_assert_eq!(b.leq(&a).unwrap(), a == b);
        // transitivity along a sleeve extension b <= c
        let c = epsilon_sleeve(&b, &rat(1, 4)).unwrap();
        prop_assert!(b.leq(&c).unwrap());
        prop_assert!(a.leq(&c).unwrap());
    }

    #[test]
    fn spread_is_zero_exactly_on_equidistant_configurations(c in config_strategy()) {
        let lambda = c.lambda();
        prop_assert!(lambda >= Rational::from_integer(0.into()));
        let gs = c.gaps();
        let equidistant = gs.gaps().iter().all(|g| *g == gs.gaps()[0]);
        prop_assert_eq!(lambda == Rational::from_integer(0.into()), equidistant);
    }

    #[test]
    fn midpoint_moves_are_always_admissible(c in config_strategy()) {
        for k in 1..c.n() {
            let (mv, moved) = midpoint_move(&c, k).unwrap();
            prop_assert_eq!(c.apply_slide(&mv).unwrap(), moved.clone());
            // the moved bead sits exactly between its old neighbors
            let left = if k == 1 { c.mu() } else { &c.positions()[k - 2] };
            let mid = (left + &c.positions()[k]) / rat(2, 1);
            prop_assert_eq!(&moved.positions()[k - 1], &mid);
        }
    }

    #[test]
    fn maximal_slides_stay_admissible_in_both_forms(c in config_strategy()) {
        for mv in last_admissible_slides(&c) {
            let by_positions = c.apply_slide(&mv).unwrap();
            let by_gaps = c.gaps().apply_slide(&mv).unwrap().config();
            prop_assert_eq!(by_positions, by_gaps);
        }
    }

    #[test]
    fn sweeps_contract_the_spread(c in config_strategy()) {
        let m = c.n();
        if m < 2 {
            prop_assert!(sweep_t(&c).is_err());
            return Ok(());
        }
        let (moves, swept) = sweep_t(&c).unwrap();
        // replay the emitted moves to confirm they produce the sweep
        let mut x = c.clone();
        for mv in &moves {
            x = x.apply_slide(mv).unwrap();
        }
        prop_assert_eq!(&x, &swept);
        let scale = rat(1 << (m - 1), 1);
        prop_assert!(swept.lambda() * &scale <= c.lambda() * (scale.clone() - rat(1, 1)));
    }

    #[test]
    fn pinning_the_last_bead_bounds_the_spread_below((a, b) in dominated_pair_strategy(false)) {
        let mut positions = a.positions().to_vec();
        let last = positions.len() - 1;
        positions[last] = b.positions()[last].clone();
        // raising only the last bead keeps the gaps nondecreasing
        let pinned = BeadConfig::new(a.mu().clone(), positions).unwrap();
        prop_assert!(pinned.leq(&b).unwrap());
        let m = rat((b.n() as i64) - 1, 1);
        prop_assert!(pinned.lambda() * m >= b.lambda());
    }

    #[test]
    fn plans_replay_exactly_and_respect_their_bounds((a, b) in dominated_pair_strategy(true)) {
        let r = plan(&a, &b).unwrap();
        prop_assert!(verify_plan(&a, &r.plan, &b).ok);
        prop_assert!(r.sweeps_used <= r.sweep_bound);
        let mut x = a.clone();
        for mv in &r.plan.moves {
            prop_assert!(mv.delta > rat(0, 1));
            x = x.apply_slide(mv).unwrap();
            prop_assert!(x.leq(&b).unwrap());
        }
        prop_assert_eq!(x, b.clone());
        // a generous budget walks the same route
        let budgeted = try_plan(&a, &b, u64::MAX).unwrap();
        prop_assert_eq!(budgeted, Some(r));
    }

    #[test]
    fn sleeves_are_slideable_and_sit_above_their_target(
        (_, b) in dominated_pair_strategy(false),
        num in 1..=8i64,
    ) {
        let eps = rat(num, 64);
        let sleeve = epsilon_sleeve(&b, &eps).unwrap();
        prop_assert!(sleeve.is_slideable_target());
        prop_assert!(b.leq(&sleeve).unwrap());
        let mut scale = rat(2, 1);
        for k in 0..b.n() {
            let dev = &sleeve.positions()[k] - &b.positions()[k];
            prop_assert_eq!(dev, &eps * &scale);
            scale *= rat(2, 1);
        }
    }

    #[test]
    fn predecessor_intervals_are_sound_and_sharp(c in config_strategy()) {
        let mut any_nonempty = false;
        for k in 1..=c.n() {
            let iv = one_step_predecessor_interval(&c, k).unwrap();
            prop_assert_eq!(iv.bead, k);
            prop_assert_eq!(iv.empty, iv.lower >= iv.upper);
            if iv.empty {
                continue;
            }
            any_nonempty = true;
            // every point of [lower, upper) really is one slide before c,
            // and the point just below lower is not
            let mid = (&iv.lower + &iv.upper) / rat(2, 1);
            for v in [iv.lower.clone(), mid] {
                let mut positions = c.positions().to_vec();
                positions[k - 1] = v.clone();
                let x = BeadConfig::new(c.mu().clone(), positions).unwrap();
                let back = SlideMove { bead: k, delta: &c.positions()[k - 1] - &v };
                prop_assert_eq!(x.apply_slide(&back).unwrap(), c.clone());
            }
            let below = &iv.lower - rat(1, 8);
            let mut positions = c.positions().to_vec();
            positions[k - 1] = below;
            prop_assert!(BeadConfig::new(c.mu().clone(), positions).is_err());
        }
        prop_assert_eq!(has_predecessor(&c), any_nonempty);
    }

    #[test]
    fn converse_constructions_are_dominated_and_distinct(
        c in config_strategy(),
        inc in 1..=8i64,
    ) {
        // extend any configuration with three equal, strictly larger gaps
        // so the tail pattern is guaranteed
        let g = c.gaps();
        let tail = g.gaps().last().unwrap() + quarters(inc);
        let mut gaps = g.gaps().to_vec();
        gaps.extend([tail.clone(), tail.clone(), tail]);
        let b = GapVector::new(g.mu().clone(), gaps).unwrap().config();
        prop_assert!(!b.is_slideable_target());
        let witness = converse_counterexample(&b).unwrap();
        prop_assert!(witness.leq(&b).unwrap());
        prop_assert_ne!(witness, b);
    }

    #[test]
    fn reflecting_twice_is_the_identity_on_breakpoints(
        xs in prop::collection::btree_set(-16..=16i64, 2..=5),
        ys in prop::collection::vec(-16..=16i64, 5),
    ) {
        let points: Vec<(Rational, Rational)> = xs
            .iter()
            .zip(&ys)
            .map(|(&x, &y)| (quarters(x), quarters(y)))
            .collect();
        let f = TestFunction::piecewise_linear(points.clone()).unwrap();
        let twice = negated_reflection(&negated_reflection(&f));
        match twice {
            TestFunction::PiecewiseLinear(p) => prop_assert_eq!(p.points(), &points[..]),
            TestFunction::Smooth(_) => prop_assert!(false, "reflection changed the backend"),
        }
    }

    #[test]
    fn single_slides_preserve_the_transformed_order(
        c in config_strategy(),
        pick in any::<prop::sample::Index>(),
    ) {
        // concave nondecreasing, slopes 1, 1/2, 1/4 over [0, 7]
        let f = TestFunction::piecewise_linear(vec![
            (rat(0, 1), rat(0, 1)),
            (rat(1, 1), rat(1, 1)),
            (rat(3, 1), rat(2, 1)),
            (rat(7, 1), rat(3, 1)),
        ])
        .unwrap();
        let base = BeadConfig::new(
            Rational::from_integer(0.into()),
            c.positions().iter().map(|p| p - c.mu()).collect::<Vec<_>>(),
        )
        .unwrap();
        let moves = last_admissible_slides(&base);
        let mv = &moves[pick.index(moves.len())];
        let moved = base.apply_slide(mv).unwrap();
        let report = check_transform_order(&base, &moved, &f).unwrap();
        prop_assert!(report.holds);
    }

    #[test]
    fn canonical_rationals_round_trip(p in -99_999..=99_999i64, q in 1..=9_999i64) {
        let r = rat(p, q);
        let canonical = format_rational(&r);
        prop_assert_eq!(parse_rational(&canonical).unwrap(), r);
        let raw = format!("{p}/{q}");
        if raw != canonical {
            prop_assert_eq!(parse_rational(&raw), Err(ParseRationalError::NonCanonical));
        }
    }
}
