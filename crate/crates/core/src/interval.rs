//! Closed intervals over `f64` with outward rounding, and axis-aligned boxes
//! built from them.
//!
//! Every endpoint operation is rounded in the safe direction. The error of
//! each native operation is recovered exactly with an error-free
//! transformation (TwoSum, FMA residual), so an endpoint is only moved to its
//! neighbouring machine number when the native result was actually inexact.
//! Near the underflow range the error terms stop being exact; there we widen
//! unconditionally.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("invalid interval [{lo}, {hi}]")]
    Invalid { lo: f64, hi: f64 },
    #[error("division by an interval containing zero: [{lo}, {hi}]")]
    DivisionByZero { lo: f64, hi: f64 },
    #[error("unsupported power {0}, expected 2, 3 or 4")]
    UnsupportedPower(u32),
    #[error("cannot parse decimal literal `{0}`")]
    BadLiteral(String),
}

pub type Result<T> = std::result::Result<T, IntervalError>;

/// Below this magnitude products and quotients may be subnormal, and the FMA
/// residual is no longer guaranteed to be exact.
const TINY: f64 = 1e-290;

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bp = s - a;
    let ap = s - bp;
    (a - ap) + (b - bp)
}

pub(crate) fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s;
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s;
    }
    if two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

pub(crate) fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

pub(crate) fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

#[inline]
fn same_sign(a: f64, b: f64) -> bool {
    (a >= 0.0) == (b >= 0.0)
}

/// Sign of `exact(a*b) - fl(a*b)`, or `None` when it cannot be trusted.
#[inline]
fn mul_residual(a: f64, b: f64, p: f64) -> Option<f64> {
    if a == 0.0 || b == 0.0 {
        return Some(0.0);
    }
    if !p.is_finite() || p.abs() < TINY {
        return None;
    }
    Some(a.mul_add(b, -p))
}

pub(crate) fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    match mul_residual(a, b, p) {
        Some(r) if r < 0.0 => p.next_down(),
        Some(_) => p,
        // the sign of the exact result is still known
        None if p.is_finite() && same_sign(a, b) => p.next_down().max(0.0),
        None if p.is_finite() => p.next_down(),
        None => p,
    }
}

pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    match mul_residual(a, b, p) {
        Some(r) if r > 0.0 => p.next_up(),
        Some(_) => p,
        None if p.is_finite() && !same_sign(a, b) => p.next_up().min(0.0),
        None if p.is_finite() => p.next_up(),
        None => p,
    }
}

/// Sign of `exact(a/b) - fl(a/b)`; `b != 0`.
#[inline]
fn div_residual(a: f64, b: f64, q: f64) -> Option<f64> {
    if a == 0.0 {
        return Some(0.0);
    }
    if !q.is_finite() || q.abs() < TINY || a.abs() < TINY {
        return None;
    }
    // a - q*b is exact when q is the rounded quotient.
    let r = (-q).mul_add(b, a);
    Some(if b > 0.0 { r } else { -r })
}

pub(crate) fn div_down(a: f64, b: f64) -> f64 {
    let q = a / b;
    match div_residual(a, b, q) {
        Some(r) if r < 0.0 => q.next_down(),
        Some(_) => q,
        // the sign of the exact result is still known
        None if q.is_finite() && same_sign(a, b) => q.next_down().max(0.0),
        None if q.is_finite() => q.next_down(),
        None => q,
    }
}

pub(crate) fn div_up(a: f64, b: f64) -> f64 {
    let q = a / b;
    match div_residual(a, b, q) {
        Some(r) if r > 0.0 => q.next_up(),
        Some(_) => q,
        None if q.is_finite() && !same_sign(a, b) => q.next_up().min(0.0),
        None if q.is_finite() => q.next_up(),
        None => q,
    }
}

/// `m^n` rounded down, for `m >= 0`.
fn pow_mag_down(m: f64, n: u32) -> f64 {
    let mut acc = m;
    for _ in 1..n {
        acc = mul_down(acc, m);
    }
    acc
}

/// `m^n` rounded up, for `m >= 0`.
fn pow_mag_up(m: f64, n: u32) -> f64 {
    let mut acc = m;
    for _ in 1..n {
        acc = mul_up(acc, m);
    }
    acc
}

/// A closed interval `[lo, hi]` with finite machine-number endpoints.
///
/// Negative zero is normalised to `+0.0` on construction, so two intervals
/// compare equal exactly when their endpoint bit patterns agree.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo <= hi {
            Ok(Interval {
                lo: lo + 0.0,
                hi: hi + 0.0,
            })
        } else {
            Err(IntervalError::Invalid { lo, hi })
        }
    }

    /// Degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    /// Smallest interval with machine endpoints containing the decimal
    /// literal `text` (e.g. `"0.1"`, `"-1.22"`, `"2.5e-3"`).
    pub fn from_decimal(text: &str) -> Result<Self> {
        let exact = parse_decimal(text)?;
        let nearest: f64 = text
            .trim()
            .parse()
            .map_err(|_| IntervalError::BadLiteral(text.to_string()))?;
        if !nearest.is_finite() {
            return Err(IntervalError::BadLiteral(text.to_string()));
        }
        let as_rational = BigRational::from_float(nearest).expect("finite float");
        match as_rational.cmp(&exact) {
            Ordering::Equal => Self::point(nearest),
            Ordering::Less => Self::new(nearest, nearest.next_up()),
            Ordering::Greater => Self::new(nearest.next_down(), nearest),
        }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// `hi - lo`, rounded up.
    pub fn width(&self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// A machine number in `[lo, hi]`, the rounded midpoint.
    pub fn mid(&self) -> f64 {
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Largest absolute value of any member.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi + 0.0,
            hi: -self.lo + 0.0,
        }
    }

    pub fn add(&self, other: &Interval) -> Result<Interval> {
        Self::new(add_down(self.lo, other.lo), add_up(self.hi, other.hi))
    }

    pub fn sub(&self, other: &Interval) -> Result<Interval> {
        Self::new(sub_down(self.lo, other.hi), sub_up(self.hi, other.lo))
    }

    pub fn mul(&self, other: &Interval) -> Result<Interval> {
        let (a, b, c, d) = (self.lo, self.hi, other.lo, other.hi);
        let lo = mul_down(a, c)
            .min(mul_down(a, d))
            .min(mul_down(b, c))
            .min(mul_down(b, d));
        let hi = mul_up(a, c)
            .max(mul_up(a, d))
            .max(mul_up(b, c))
            .max(mul_up(b, d));
        Self::new(lo, hi)
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        if other.contains(0.0) {
            return Err(IntervalError::DivisionByZero {
                lo: other.lo,
                hi: other.hi,
            });
        }
        let (a, b, c, d) = (self.lo, self.hi, other.lo, other.hi);
        let lo = div_down(a, c)
            .min(div_down(a, d))
            .min(div_down(b, c))
            .min(div_down(b, d));
        let hi = div_up(a, c)
            .max(div_up(a, d))
            .max(div_up(b, c))
            .max(div_up(b, d));
        Self::new(lo, hi)
    }

    /// Integer power for `n` in `{2, 3, 4}`. Even powers of an interval
    /// straddling zero have lower endpoint exactly `0`.
    pub fn powi(&self, n: u32) -> Result<Interval> {
        if !(2..=4).contains(&n) {
            return Err(IntervalError::UnsupportedPower(n));
        }
        let (a, b) = (self.lo, self.hi);
        if n % 2 == 1 {
            let lo = if a >= 0.0 {
                pow_mag_down(a, n)
            } else {
                -pow_mag_up(-a, n)
            };
            let hi = if b >= 0.0 {
                pow_mag_up(b, n)
            } else {
                -pow_mag_down(-b, n)
            };
            Self::new(lo, hi)
        } else if a >= 0.0 {
            Self::new(pow_mag_down(a, n), pow_mag_up(b, n))
        } else if b <= 0.0 {
            Self::new(pow_mag_down(-b, n), pow_mag_up(-a, n))
        } else {
            Self::new(0.0, pow_mag_up(self.mag(), n))
        }
    }

    /// `c * self` for a machine number `c`.
    pub fn scale(&self, c: f64) -> Result<Interval> {
        if !c.is_finite() {
            return Err(IntervalError::Invalid { lo: c, hi: c });
        }
        if c >= 0.0 {
            Self::new(mul_down(c, self.lo), mul_up(c, self.hi))
        } else {
            Self::new(mul_down(c, self.hi), mul_up(c, self.lo))
        }
    }

    /// `self + c` for a machine number `c`.
    pub fn add_scalar(&self, c: f64) -> Result<Interval> {
        Self::new(add_down(self.lo, c), add_up(self.hi, c))
    }
}

/// Exact rational value of a decimal literal.
pub(crate) fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || IntervalError::BadLiteral(text.to_string());
    let s = text.trim();
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (
            &body[..i],
            body[i + 1..].parse::<i32>().map_err(|_| bad())?,
        ),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// An axis-aligned closed box `x1 × x2` in the plane.
#[derive(Clone, Copy, PartialEq)]
pub struct Rect {
    pub x1: Interval,
    pub x2: Interval,
}

impl fmt::Debug for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rect({:?} x {:?})", self.x1, self.x2)
    }
}

impl Rect {
    pub fn new(x1: Interval, x2: Interval) -> Self {
        Rect { x1, x2 }
    }

    /// Build from raw endpoints `[a, b] × [c, d]`.
    pub fn from_bounds(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Ok(Rect::new(Interval::new(a, b)?, Interval::new(c, d)?))
    }

    pub fn point(x1: f64, x2: f64) -> Result<Self> {
        Ok(Rect::new(Interval::point(x1)?, Interval::point(x2)?))
    }

    pub fn width(&self) -> (f64, f64) {
        (self.x1.width(), self.x2.width())
    }

    pub fn mid(&self) -> (f64, f64) {
        (self.x1.mid(), self.x2.mid())
    }

    pub fn contains(&self, p: (f64, f64)) -> bool {
        self.x1.contains(p.0) && self.x2.contains(p.1)
    }

    pub fn is_subset_of(&self, other: &Rect) -> bool {
        self.x1.is_subset_of(&other.x1) && self.x2.is_subset_of(&other.x2)
    }

    pub fn hull(&self, other: &Rect) -> Rect {
        Rect::new(self.x1.hull(&other.x1), self.x2.hull(&other.x2))
    }

    pub fn key(&self) -> RectKey {
        RectKey {
            x1_lo: self.x1.lo,
            x1_hi: self.x1.hi,
            x2_lo: self.x2.lo,
            x2_hi: self.x2.hi,
        }
    }

    /// Number of pieces [`Rect::split`] will produce, saturating at
    /// `usize::MAX`.
    pub fn split_count(&self, t1: f64, t2: f64) -> usize {
        fn levels(w: f64, t: f64) -> u32 {
            let mut k = 0;
            let mut w = w;
            while w > t && k < 64 {
                w /= 2.0;
                k += 1;
            }
            k
        }
        let k = levels(self.x1.width(), t1) + levels(self.x2.width(), t2);
        1usize.checked_shl(k).unwrap_or(usize::MAX)
    }

    /// Bisect until every piece has `width(x1) <= t1` and `width(x2) <= t2`.
    ///
    /// `x1` is split first whenever it is too wide. Pieces share their cut
    /// endpoints, so their union is exactly `self`. Pieces that can no longer
    /// be bisected (adjacent machine numbers) are returned as they are.
    pub fn split(&self, t1: f64, t2: f64) -> Vec<Rect> {
        let mut out = Vec::new();
        let mut stack = vec![*self];
        while let Some(curr) = stack.pop() {
            let (w1, w2) = curr.width();
            if w1 <= t1 && w2 <= t2 {
                out.push(curr);
            } else if w1 > t1 {
                let mid = curr.x1.mid();
                if mid <= curr.x1.lo || mid >= curr.x1.hi {
                    out.push(curr);
                    continue;
                }
                stack.push(Rect::new(Interval { lo: curr.x1.lo, hi: mid }, curr.x2));
                stack.push(Rect::new(Interval { lo: mid, hi: curr.x1.hi }, curr.x2));
            } else {
                let mid = curr.x2.mid();
                if mid <= curr.x2.lo || mid >= curr.x2.hi {
                    out.push(curr);
                    continue;
                }
                stack.push(Rect::new(curr.x1, Interval { lo: curr.x2.lo, hi: mid }));
                stack.push(Rect::new(curr.x1, Interval { lo: mid, hi: curr.x2.hi }));
            }
        }
        out
    }
}

/// Exact endpoint quadruple of a [`Rect`], used to deduplicate clouds.
#[derive(Clone, Copy, Debug)]
pub struct RectKey {
    pub x1_lo: f64,
    pub x1_hi: f64,
    pub x2_lo: f64,
    pub x2_hi: f64,
}

impl RectKey {
    fn bits(&self) -> [u64; 4] {
        [
            self.x1_lo.to_bits(),
            self.x1_hi.to_bits(),
            self.x2_lo.to_bits(),
            self.x2_hi.to_bits(),
        ]
    }

    pub fn to_rect(&self) -> Rect {
        Rect::new(
            Interval {
                lo: self.x1_lo,
                hi: self.x1_hi,
            },
            Interval {
                lo: self.x2_lo,
                hi: self.x2_hi,
            },
        )
    }
}

impl PartialEq for RectKey {
    fn eq(&self, other: &Self) -> bool {
        self.bits() == other.bits()
    }
}

impl Eq for RectKey {}

impl std::hash::Hash for RectKey {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits().hash(state);
    }
}

impl Ord for RectKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x1_lo
            .total_cmp(&other.x1_lo)
            .then(self.x1_hi.total_cmp(&other.x1_hi))
            .then(self.x2_lo.total_cmp(&other.x2_lo))
            .then(self.x2_hi.total_cmp(&other.x2_hi))
    }
}

impl PartialOrd for RectKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact rational value of a finite float; handy for containment checks.
pub fn exact_value(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

/// Does `iv` contain the exact rational `q`?
pub fn contains_rational(iv: &Interval, q: &BigRational) -> bool {
    &exact_value(iv.lo) <= q && q <= &exact_value(iv.hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn add_exact_cases() {
        assert_eq!(iv(1.0, 2.0).add(&iv(3.0, 4.0)).unwrap(), iv(4.0, 6.0));
        assert_eq!(iv(0.0, 0.0).add(&iv(-1.5, 2.25)).unwrap(), iv(-1.5, 2.25));
    }

    #[test]
    fn add_inexact_encloses_three_tenths() {
        let s = Interval::point(0.1).unwrap().add(&Interval::point(0.2).unwrap()).unwrap();
        assert!(s.lo() < s.hi());
        // 0.1 and 0.2 as machine numbers sum to slightly above 3/10; the
        // enclosure must contain the exact sum of the machine operands.
        let exact = exact_value(0.1) + exact_value(0.2);
        assert!(contains_rational(&s, &exact));
        let tenths = Interval::from_decimal("0.1")
            .unwrap()
            .add(&Interval::from_decimal("0.2").unwrap())
            .unwrap();
        assert!(contains_rational(&tenths, &ratio(3, 10)));
    }

    #[test]
    fn sub_cases() {
        assert_eq!(iv(4.0, 6.0).sub(&iv(3.0, 4.0)).unwrap(), iv(0.0, 3.0));
        assert_eq!(iv(1.0, 1.0).sub(&iv(1.0, 1.0)).unwrap(), iv(0.0, 0.0));
        let a = iv(0.3, 0.7);
        let d = a.sub(&a).unwrap();
        assert!(d.contains(0.0));
        assert!(d.width() > 0.0);
    }

    #[test]
    fn mul_cases() {
        assert_eq!(iv(1.0, 2.0).mul(&iv(-3.0, 4.0)).unwrap(), iv(-6.0, 8.0));
        assert_eq!(iv(0.0, 0.0).mul(&iv(-3.0, 7.0)).unwrap(), iv(0.0, 0.0));
        // brute force over endpoint products
        let (a, b) = (iv(-1.0, 2.0), iv(-1.0, 2.0));
        let prods = [1.0, -2.0, -2.0, 4.0];
        let lo = prods.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = prods.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(a.mul(&b).unwrap(), iv(lo, hi));
    }

    #[test]
    fn div_cases() {
        assert_eq!(iv(1.0, 1.0).div(&iv(2.0, 4.0)).unwrap(), iv(0.25, 0.5));
        assert_eq!(iv(1.0, 2.0).div(&iv(1.0, 1.0)).unwrap(), iv(1.0, 2.0));
        assert!(matches!(
            iv(1.0, 1.0).div(&iv(-1.0, 1.0)),
            Err(IntervalError::DivisionByZero { .. })
        ));
        let third = iv(1.0, 1.0).div(&iv(3.0, 3.0)).unwrap();
        assert!(contains_rational(&third, &ratio(1, 3)));
        assert_eq!(third.hi(), third.lo().next_up());
    }

    #[test]
    fn powi_cases() {
        assert_eq!(iv(-1.0, 2.0).powi(4).unwrap(), iv(0.0, 16.0));
        assert_eq!(iv(2.0, 3.0).powi(2).unwrap(), iv(4.0, 9.0));
        assert_eq!(iv(-2.0, 1.0).powi(3).unwrap(), iv(-8.0, 1.0));
        assert_eq!(iv(-3.0, -2.0).powi(2).unwrap(), iv(4.0, 9.0));
        assert!(matches!(
            iv(1.0, 2.0).powi(5),
            Err(IntervalError::UnsupportedPower(5))
        ));
    }

    #[test]
    fn scale_cases() {
        assert_eq!(iv(2.0, 4.0).scale(0.5).unwrap(), iv(1.0, 2.0));
        assert_eq!(iv(1.0, 2.0).scale(-1.0).unwrap(), iv(-2.0, -1.0));
        let s = iv(1.0, 1.0).scale(0.1).unwrap();
        assert!(s.lo() <= s.hi());
        assert!(contains_rational(&s, &exact_value(0.1)));
    }

    #[test]
    fn overflow_is_an_error() {
        let big = iv(f64::MAX, f64::MAX);
        assert!(matches!(big.add(&big), Err(IntervalError::Invalid { .. })));
        assert!(big.mul(&big).is_err());
        assert!(big.powi(2).is_err());
        assert!(big.scale(4.0).is_err());
    }

    #[test]
    fn invalid_construction() {
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn negative_zero_is_normalised() {
        let z = iv(-0.0, -0.0);
        assert_eq!(z.lo().to_bits(), 0.0f64.to_bits());
        let p = iv(0.0, 1.0).scale(-2.0).unwrap();
        assert_eq!(p.hi().to_bits(), 0.0f64.to_bits());
    }

    #[test]
    fn decimal_literals_are_enclosed_tightly() {
        let h = Interval::from_decimal("0.1").unwrap();
        assert!(contains_rational(&h, &ratio(1, 10)));
        assert_eq!(h.hi(), h.lo().next_up());
        let exact = Interval::from_decimal("0.5").unwrap();
        assert_eq!(exact, iv(0.5, 0.5));
        let neg = Interval::from_decimal("-1.22").unwrap();
        assert!(contains_rational(&neg, &ratio(-122, 100)));
        let sci = Interval::from_decimal("2.5e-3").unwrap();
        assert!(contains_rational(&sci, &ratio(25, 10000)));
        assert!(Interval::from_decimal("abc").is_err());
        assert!(Interval::from_decimal("1.2.3").is_err());
        assert!(Interval::from_decimal(".").is_err());
    }

    #[test]
    fn rect_utilities() {
        let r = Rect::from_bounds(0.0, 1.0, 2.0, 2.0).unwrap();
        assert_eq!(r.width(), (1.0, 0.0));
        let u = Rect::from_bounds(0.0, 1.0, 0.0, 1.0).unwrap();
        assert!(u.contains((1.0, 1.0)));
        assert!(!u.contains((1.0, 1.0000001)));
        let v = Rect::from_bounds(2.0, 3.0, 0.0, 1.0).unwrap();
        assert_eq!(u.hull(&v), Rect::from_bounds(0.0, 3.0, 0.0, 1.0).unwrap());
        let (m1, m2) = u.mid();
        assert!(u.contains((m1, m2)));
    }

    #[test]
    fn split_small_box_is_identity() {
        let r = Rect::from_bounds(0.0, 0.05, 0.0, 0.05).unwrap();
        assert_eq!(r.split(0.1, 0.1), vec![r]);
    }

    #[test]
    fn split_bisects_x1_first() {
        let r = Rect::from_bounds(0.0, 0.2, 0.0, 0.05).unwrap();
        let mut pieces = r.split(0.1, 0.1);
        pieces.sort_by_key(|p| p.key());
        assert_eq!(
            pieces,
            vec![
                Rect::from_bounds(0.0, 0.1, 0.0, 0.05).unwrap(),
                Rect::from_bounds(0.1, 0.2, 0.0, 0.05).unwrap(),
            ]
        );
    }

    /// Simulated bisection count: an interval of width w needs 2^k pieces,
    /// with k the least integer such that w / 2^k <= t.
    fn bisection_pieces(w: f64, t: f64) -> usize {
        let mut n = 1;
        let mut width = w;
        while width > t {
            width /= 2.0;
            n *= 2;
        }
        n
    }

    #[test]
    fn split_count_matches_simulated_bisection() {
        let r = Rect::from_bounds(0.0, 0.44, 0.0, 0.44).unwrap();
        let pieces = r.split(0.1, 0.1);
        // 0.44 -> 0.22 -> 0.11 -> 0.055: eight strips per axis
        let expected = bisection_pieces(0.44, 0.1).pow(2);
        assert_eq!(pieces.len(), expected);
        assert_eq!(expected, 64);
        let hull = pieces.iter().skip(1).fold(pieces[0], |h, p| h.hull(p));
        assert_eq!(hull, r);
    }

    #[test]
    fn split_stops_on_unsplittable_width() {
        let a = 1.0e300;
        let r = Rect::from_bounds(a, a.next_up(), 0.0, 0.0).unwrap();
        let pieces = r.split(1e-300, 1.0);
        assert_eq!(pieces, vec![r]);
    }

    #[test]
    fn keys_are_bitwise() {
        let a = Rect::from_bounds(0.0, 0.1, 0.2, 0.3).unwrap();
        let b = Rect::from_bounds(0.0, 0.1, 0.2, 0.3f64.next_up()).unwrap();
        assert_eq!(a.key(), a.key());
        assert_ne!(a.key(), b.key());
        assert_eq!(a.key().to_rect(), a);
        let z1 = Rect::from_bounds(-0.0, 0.0, 1.0, 1.0).unwrap();
        let z2 = Rect::from_bounds(0.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(z1.key(), z2.key());
    }
}
