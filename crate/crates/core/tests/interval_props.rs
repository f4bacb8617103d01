mod common;

use common::{isotonicity_violations, Op, ALL_OPS};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use stiffcap::interval::{contains_rational, exact_value, Interval, Rect};

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e3..1e3f64,
        -1.0..1.0f64,
        Just(0.0),
        (-300i32..300).prop_map(|e| 2f64.powi(e)),
    ]
}

fn interval() -> impl Strategy<Value = Interval> {
    (finite(), finite()).prop_map(|(a, b)| Interval::new(a.min(b), a.max(b)).unwrap())
}

/// An interval and a sub-interval of it.
fn nested() -> impl Strategy<Value = (Interval, Interval)> {
    (interval(), 0.0..1.0f64, 0.0..1.0f64).prop_map(|(outer, s, t)| {
        let at = |u: f64| (outer.lo() + u * (outer.hi() - outer.lo())).clamp(outer.lo(), outer.hi());
        let (a, b) = (at(s.min(t)), at(s.max(t)));
        (outer, Interval::new(a, b).unwrap())
    })
}

fn area(r: &Rect) -> BigRational {
    let w = |iv: &Interval| exact_value(iv.hi()) - exact_value(iv.lo());
    w(&r.x1) * w(&r.x2)
}

proptest! {
    #[test]
    fn operations_enclose_sampled_values(a in interval(), b in interval(), s in 0.0..1.0f64, t in 0.0..1.0f64) {
        let x = (a.lo() + s * (a.hi() - a.lo())).clamp(a.lo(), a.hi());
        let y = (b.lo() + t * (b.hi() - b.lo())).clamp(b.lo(), b.hi());
        for op in ALL_OPS {
            if let (Some(c), Some(e)) = (op.apply(&a, &b), op.exact(&exact_value(x), &exact_value(y))) {
                prop_assert!(contains_rational(&c, &e), "{} {:?} {:?} at ({x}, {y}) gave {:?}", op.name(), a, b, c);
            }
        }
    }

    #[test]
    fn operations_are_inclusion_monotone((a, a2) in nested(), (b, b2) in nested()) {
        for op in ALL_OPS {
            if let (Some(big), Some(small)) = (op.apply(&a, &b), op.apply(&a2, &b2)) {
                prop_assert!(small.is_subset_of(&big), "{}: {:?} not within {:?}", op.name(), small, big);
            }
        }
    }

    #[test]
    fn even_powers_are_tight_and_nonnegative(a in interval()) {
        for n in [2u32, 4] {
            // overflow is reported as an error, not an enclosure
            let Ok(p) = a.powi(n) else { continue };
            prop_assert!(p.lo() >= 0.0);
            if a.contains(0.0) {
                prop_assert_eq!(p.lo(), 0.0);
            }
            // never wider than the naive product
            if let Ok(naive) = (1..n).try_fold(a, |acc, _| acc.mul(&a)) {
                prop_assert!(p.is_subset_of(&naive));
            }
        }
    }

    #[test]
    fn point_operations_are_near_exact(x in finite(), y in finite()) {
        let (a, b) = (Interval::point(x).unwrap(), Interval::point(y).unwrap());
        for op in [Op::Add, Op::Sub, Op::Mul] {
            let c = op.apply(&a, &b).unwrap();
            // directed rounding: at most one step apart
            prop_assert!(c.lo() == c.hi() || c.lo().next_up() == c.hi(), "{}: {:?}", op.name(), c);
        }
    }

    #[test]
    fn split_tiles_the_parent(
        (x, wx) in (-50.0..50.0f64, 0.0..20.0f64),
        (y, wy) in (-50.0..50.0f64, 0.0..20.0f64),
        t1 in 0.05..2.0f64,
        t2 in 0.05..2.0f64,
    ) {
        let parent = Rect::from_bounds(x, x + wx, y, y + wy).unwrap();
        let pieces = parent.split(t1, t2);
        prop_assert_eq!(pieces.len(), parent.split_count(t1, t2));
        let mut total = BigRational::zero();
        let mut hull = pieces[0];
        for p in &pieces {
            prop_assert!(p.is_subset_of(&parent));
            let (w1, w2) = p.width();
            prop_assert!(w1 <= t1 || p.x1.lo().next_up() >= p.x1.hi());
            prop_assert!(w2 <= t2 || p.x2.lo().next_up() >= p.x2.hi());
            total += area(p);
            hull = hull.hull(p);
        }
        prop_assert_eq!(hull, parent);
        prop_assert_eq!(total, area(&parent));
    }

    #[test]
    fn decimal_literals_are_enclosed_tightly(int in 0u32..1000, frac in 0u32..100000) {
        let text = format!("{int}.{frac:05}");
        let iv = Interval::from_decimal(&text).unwrap();
        let q = BigRational::new(BigInt::from(int as u64 * 100000 + frac as u64), BigInt::from(100000));
        prop_assert!(contains_rational(&iv, &q));
        prop_assert!(iv.lo() == iv.hi() || iv.lo().next_up() == iv.hi());
    }
}

#[test]
fn randomized_isotonicity_small_batch() {
    for (k, op) in ALL_OPS.iter().enumerate() {
        let (checked, bad) = isotonicity_violations(*op, 5_000, 100 + k as u64);
        assert_eq!(checked, 5_000);
        assert_eq!(bad, 0, "{}", op.name());
    }
}

#[test]
fn division_by_interval_containing_zero_is_an_error() {
    let a = Interval::new(1.0, 2.0).unwrap();
    for b in [(-1.0, 1.0), (0.0, 1.0), (-1.0, 0.0), (0.0, 0.0)] {
        assert!(a.div(&Interval::new(b.0, b.1).unwrap()).is_err());
    }
}
