#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stiffcap::interval::{contains_rational, exact_value, Interval};

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u32),
}

pub const ALL_OPS: [Op; 7] = [Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Pow(2), Op::Pow(3), Op::Pow(4)];

impl Op {
    pub fn name(&self) -> String {
        match self {
            Op::Add => "add".into(),
            Op::Sub => "sub".into(),
            Op::Mul => "mul".into(),
            Op::Div => "div".into(),
            Op::Pow(n) => format!("pow{n}"),
        }
    }

    pub fn apply(&self, a: &Interval, b: &Interval) -> Option<Interval> {
        match self {
            Op::Add => a.add(b).ok(),
            Op::Sub => a.sub(b).ok(),
            Op::Mul => a.mul(b).ok(),
            Op::Div => a.div(b).ok(),
            Op::Pow(n) => a.powi(*n).ok(),
        }
    }

    pub fn exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        Some(match self {
            Op::Add => a + b,
            Op::Sub => a - b,
            Op::Mul => a * b,
            Op::Div => {
                if b.is_zero() {
                    return None;
                }
                a / b
            }
            Op::Pow(n) => (0..*n).fold(BigRational::one(), |acc, _| acc * a),
        })
    }
}

/// Endpoint spread over several magnitudes, both signs and exact zeros.
fn random_endpoint(rng: &mut ChaCha8Rng) -> f64 {
    match rng.gen_range(0..10) {
        0 => 0.0,
        1 => rng.gen_range(-1.0..1.0),
        _ => {
            let mag = 10f64.powf(rng.gen_range(-6.0..6.0));
            if rng.gen_bool(0.5) {
                mag
            } else {
                -mag
            }
        }
    }
}

pub fn random_interval(rng: &mut ChaCha8Rng) -> Interval {
    let (a, b) = (random_endpoint(rng), random_endpoint(rng));
    if rng.gen_range(0..8) == 0 {
        return Interval::point(a).unwrap();
    }
    Interval::new(a.min(b), a.max(b)).unwrap()
}

pub fn sample_in(iv: &Interval, rng: &mut ChaCha8Rng) -> f64 {
    let t: f64 = rng.gen();
    (iv.lo() + t * (iv.hi() - iv.lo())).clamp(iv.lo(), iv.hi())
}

/// Draw `n` operand/sample triples and count results that miss the exact
/// value of the operation on the samples. Returns (checked, violations).
pub fn isotonicity_violations(op: Op, n: usize, seed: u64) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut checked, mut bad) = (0, 0);
    while checked < n {
        let a = random_interval(&mut rng);
        let b = random_interval(&mut rng);
        let Some(c) = op.apply(&a, &b) else { continue };
        let (x, y) = (sample_in(&a, &mut rng), sample_in(&b, &mut rng));
        let Some(exact) = op.exact(&exact_value(x), &exact_value(y)) else { continue };
        checked += 1;
        if !contains_rational(&c, &exact) {
            bad += 1;
        }
    }
    (checked, bad)
}

/// One exact Heun step of the stiff field with rational `h` and `λ`.
pub fn exact_heun(x1: &BigRational, x2: &BigRational, h: &BigRational, lambda: &BigRational) -> (BigRational, BigRational) {
    let two = ratio(2, 1);
    let f = |a: &BigRational, b: &BigRational| {
        let one = BigRational::one();
        let b4 = b * b * b * b;
        let a4 = a * a * a * a;
        (
            -(&two * a) - a * a / (&one + b4),
            -(lambda * b) - b * b / (&one + a4),
        )
    };
    let (k1a, k1b) = f(x1, x2);
    let (pa, pb) = (x1 + h * &k1a, x2 + h * &k1b);
    let (k2a, k2b) = f(&pa, &pb);
    let half = h / &two;
    (x1 + &half * (k1a + k2a), x2 + &half * (k1b + k2b))
}
