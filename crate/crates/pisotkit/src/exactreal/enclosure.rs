//! Certified real enclosures `center ± radius` over dyadic numbers.
//!
//! Every operation returns an enclosure whose interval contains the exact
//! result of the operation applied to any points of the input intervals.
//! Endpoints are rounded outward to the working precision, so radii absorb
//! all rounding error. Center and radius are themselves dyadic, and the
//! conversions endpoint <-> midpoint are exact.

use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone)]
pub struct Enclosure {
    center: Dyadic,
    radius: Dyadic,
    precision_bits: u32,
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Enclosure({} ± {} @{}b)",
            self.center.to_f64(),
            self.radius.to_f64(),
            self.precision_bits
        )
    }
}

impl Enclosure {
    pub fn new(center: Dyadic, radius: Dyadic, precision_bits: u32) -> Self {
        debug_assert!(!radius.is_negative());
        Enclosure { center, radius, precision_bits }
    }

    /// Exact point value (radius zero).
    pub fn exact(value: Dyadic, precision_bits: u32) -> Self {
        Enclosure { center: value, radius: Dyadic::zero(), precision_bits }
    }

    pub fn from_i64(v: i64, precision_bits: u32) -> Self {
        Enclosure::exact(Dyadic::from_i64(v), precision_bits)
    }

    pub fn from_bigint(v: &BigInt, precision_bits: u32) -> Self {
        Enclosure::exact(Dyadic::from_bigint(v), precision_bits)
    }

    pub fn from_endpoints(lo: Dyadic, hi: Dyadic, precision_bits: u32) -> Self {
        debug_assert!(lo.cmp(&hi) != Ordering::Greater);
        let center = lo.add(&hi).half();
        let radius = hi.sub(&lo).half();
        Enclosure { center, radius, precision_bits }
    }

    /// Enclosure of the rational `num/den` at the working precision.
    /// Exact when the rational is dyadic.
    pub fn from_ratio(num: &BigInt, den: &BigInt, precision_bits: u32) -> Self {
        let n = Dyadic::from_bigint(num);
        let d = Dyadic::from_bigint(den);
        let lo = n.div(&d, precision_bits, Round::Floor);
        let hi = n.div(&d, precision_bits, Round::Ceil);
        Enclosure::from_endpoints(lo, hi, precision_bits)
    }

    pub fn center(&self) -> &Dyadic {
        &self.center
    }

    pub fn radius(&self) -> &Dyadic {
        &self.radius
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn lo(&self) -> Dyadic {
        self.center.sub(&self.radius)
    }

    pub fn hi(&self) -> Dyadic {
        self.center.add(&self.radius)
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }

    fn prec_with(&self, other: &Self) -> u32 {
        self.precision_bits.max(other.precision_bits)
    }

    /// Re-round outward at a (possibly lower) working precision.
    pub fn with_precision(&self, prec: u32) -> Self {
        let lo = self.lo().round(prec, Round::Floor);
        let hi = self.hi().round(prec, Round::Ceil);
        Enclosure::from_endpoints(lo, hi, prec)
    }

    pub fn neg(&self) -> Self {
        Enclosure {
            center: self.center.neg(),
            radius: self.radius.clone(),
            precision_bits: self.precision_bits,
        }
    }

    /// Enclosure of |x| over the interval.
    pub fn abs(&self) -> Self {
        let lo = self.lo();
        let hi = self.hi();
        if !lo.is_negative() {
            self.clone()
        } else if !hi.is_positive() {
            self.neg()
        } else {
            let m = lo.neg().max(&hi);
            Enclosure::from_endpoints(Dyadic::zero(), m, self.precision_bits)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.prec_with(other);
        let lo = self.lo().add(&other.lo()).round(p, Round::Floor);
        let hi = self.hi().add(&other.hi()).round(p, Round::Ceil);
        Enclosure::from_endpoints(lo, hi, p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.prec_with(other);
        let (a, b) = (self.lo(), self.hi());
        let (c, d) = (other.lo(), other.hi());
        let mut candidates = [a.mul(&c), a.mul(&d), b.mul(&c), b.mul(&d)];
        candidates.sort_by(|x, y| x.cmp(y));
        let lo = candidates[0].round(p, Round::Floor);
        let hi = candidates[3].round(p, Round::Ceil);
        Enclosure::from_endpoints(lo, hi, p)
    }

    pub fn square(&self) -> Self {
        let p = self.precision_bits;
        let (a, b) = (self.lo(), self.hi());
        let aa = a.mul(&a);
        let bb = b.mul(&b);
        let hi = aa.max(&bb).round(p, Round::Ceil);
        let lo = if a.is_negative() && b.is_positive() {
            Dyadic::zero()
        } else {
            aa.min(&bb).round(p, Round::Floor)
        };
        Enclosure::from_endpoints(lo, hi, p)
    }

    /// Interval division; errors when the divisor interval contains zero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let p = self.prec_with(other);
        let (c, d) = (other.lo(), other.hi());
        if !c.is_positive() && !d.is_negative() {
            return Err(Error::DivisionByZero("divisor enclosure contains zero".into()));
        }
        let (a, b) = (self.lo(), self.hi());
        let q = |x: &Dyadic, y: &Dyadic, dir: Round| x.div(y, p + 2, dir);
        let mut lo = q(&a, &c, Round::Floor);
        let mut hi = q(&a, &c, Round::Ceil);
        for (x, y) in [(&a, &d), (&b, &c), (&b, &d)] {
            let l = q(x, y, Round::Floor);
            let h = q(x, y, Round::Ceil);
            lo = lo.min(&l);
            hi = hi.max(&h);
        }
        Ok(Enclosure::from_endpoints(
            lo.round(p, Round::Floor),
            hi.round(p, Round::Ceil),
            p,
        ))
    }

    pub fn recip(&self) -> Result<Self> {
        Enclosure::from_i64(1, self.precision_bits).div(self)
    }

    /// `x^n` for integer n (negative allowed when the interval excludes zero).
    pub fn powi(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Enclosure::from_i64(1, self.precision_bits));
        }
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        // Positive base: endpoint monotonicity gives tight bounds.
        if self.lo().is_positive() {
            let p = self.precision_bits;
            let lo = pow_dir(&self.lo(), n as u64, p, Round::Floor);
            let hi = pow_dir(&self.hi(), n as u64, p, Round::Ceil);
            return Ok(Enclosure::from_endpoints(lo, hi, p));
        }
        // General sign: interval binary powering.
        let mut result = Enclosure::from_i64(1, self.precision_bits);
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        Ok(result)
    }

    /// Interval n-th root for nonnegative intervals.
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        if self.lo().is_negative() {
            return Err(Error::InvalidParameter("nth_root of interval reaching below zero".into()));
        }
        let p = self.precision_bits;
        let lo = self.lo().nth_root(n, p, Round::Floor);
        let hi = self.hi().nth_root(n, p, Round::Ceil);
        Ok(Enclosure::from_endpoints(lo, hi, p))
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.nth_root(2)
    }

    pub fn contains_dyadic(&self, x: &Dyadic) -> bool {
        self.lo().cmp(x) != Ordering::Greater && self.hi().cmp(x) != Ordering::Less
    }

    pub fn contains_bigint(&self, x: &BigInt) -> bool {
        self.contains_dyadic(&Dyadic::from_bigint(x))
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_dyadic(&Dyadic::zero())
    }

    /// True when the two intervals share at least one point.
    pub fn intersects(&self, other: &Self) -> bool {
        self.lo().cmp(&other.hi()) != Ordering::Greater
            && other.lo().cmp(&self.hi()) != Ordering::Greater
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.lo().cmp(&self.lo()) != Ordering::Greater
            && self.hi().cmp(&other.hi()) != Ordering::Greater
    }

    /// Certified comparison: Some(ordering) when the intervals are disjoint
    /// (or both exact and equal), None when they overlap undecidably.
    pub fn cmp_certified(&self, other: &Self) -> Option<Ordering> {
        if self.hi().cmp(&other.lo()) == Ordering::Less {
            return Some(Ordering::Less);
        }
        if self.lo().cmp(&other.hi()) == Ordering::Greater {
            return Some(Ordering::Greater);
        }
        if self.is_exact() && other.is_exact() && self.center.cmp(&other.center) == Ordering::Equal {
            return Some(Ordering::Equal);
        }
        None
    }

    pub fn cmp_dyadic(&self, x: &Dyadic) -> Option<Ordering> {
        self.cmp_certified(&Enclosure::exact(x.clone(), self.precision_bits))
    }

    /// Certified strict bound checks against a dyadic point.
    pub fn certainly_gt(&self, x: &Dyadic) -> bool {
        self.lo().cmp(x) == Ordering::Greater
    }

    pub fn certainly_lt(&self, x: &Dyadic) -> bool {
        self.hi().cmp(x) == Ordering::Less
    }

    /// Relative width `2*radius / max(|lo|,|hi|-ish)`; returns None for
    /// intervals containing zero (relative error is then meaningless).
    pub fn rel_width_log2(&self) -> Option<i64> {
        if self.radius.is_zero() {
            return Some(i64::MIN);
        }
        if self.contains_zero() {
            return None;
        }
        let mag = self.lo().abs().min(&self.hi().abs());
        Some(self.radius.log2_magnitude() - mag.log2_magnitude())
    }

    /// Union hull of two enclosures.
    pub fn hull(&self, other: &Self) -> Self {
        let p = self.prec_with(other);
        Enclosure::from_endpoints(self.lo().min(&other.lo()), self.hi().max(&other.hi()), p)
    }

    /// Widen by a dyadic amount on both sides.
    pub fn widen(&self, slack: &Dyadic) -> Self {
        Enclosure {
            center: self.center.clone(),
            radius: self.radius.add(slack),
            precision_bits: self.precision_bits,
        }
    }

    /// Decimal rendering of the center with the number of fractional digits
    /// actually certified by the radius (capped at `max_digits`), plus the
    /// radius as a short upper bound. Deterministic in the enclosure.
    pub fn to_decimal_certified(&self, max_digits: u32) -> (String, String) {
        let digits = if self.radius.is_zero() {
            max_digits
        } else {
            // 10^-d >= 2*radius  =>  d <= -log10(2 radius)
            let log2r = self.radius.log2_magnitude() + 1;
            let d = (-(log2r as f64) * 0.30102999566398119).floor();
            d.clamp(0.0, max_digits as f64) as u32
        };
        (self.center.to_decimal(digits), radius_string(&self.radius))
    }
}

fn pow_dir(x: &Dyadic, n: u64, prec: u32, dir: Round) -> Dyadic {
    let mut result = Dyadic::one();
    let mut base = x.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base).round(prec + 8, dir);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base).round(prec + 8, dir);
        }
    }
    result.round(prec, dir)
}

/// Compact scientific-style upper bound for a radius, e.g. "3e-42"; "0" when exact.
pub fn radius_string(r: &Dyadic) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    // r <= m * 10^e with single digit m
    let log10 = (r.log2_magnitude() as f64 + 1.0) * 0.30102999566398119;
    let e = log10.floor() as i64;
    // mantissa upper bound: r / 10^e, rounded up; stays in [1,10]
    let ten = Dyadic::from_i64(10);
    let pow = pow_dyadic_i(&ten, e);
    let m = match pow {
        Ok(p) => r.div(&p, 8, Round::Ceil),
        Err(p_inv) => r.mul(&p_inv).round(8, Round::Ceil),
    };
    let md = m.to_f64().ceil().max(1.0) as i64;
    if md >= 10 {
        format!("1e{}", e + 1)
    } else {
        format!("{}e{}", md, e)
    }
}

/// 10^e as dyadic: Ok(exact) for e >= 0, Err(10^-e exact) for e < 0.
fn pow_dyadic_i(ten: &Dyadic, e: i64) -> std::result::Result<Dyadic, Dyadic> {
    let mut p = Dyadic::one();
    for _ in 0..e.unsigned_abs() {
        p = p.mul(ten);
    }
    if e >= 0 {
        Ok(p)
    } else {
        Err(p)
    }
}

/// Rectangular complex enclosure used for conjugate arithmetic.
#[derive(Clone, Debug)]
pub struct ComplexEnclosure {
    pub re: Enclosure,
    pub im: Enclosure,
}

impl ComplexEnclosure {
    pub fn new(re: Enclosure, im: Enclosure) -> Self {
        ComplexEnclosure { re, im }
    }

    pub fn from_real(re: Enclosure) -> Self {
        let p = re.precision_bits();
        ComplexEnclosure { im: Enclosure::from_i64(0, p), re }
    }

    pub fn add(&self, other: &Self) -> Self {
        ComplexEnclosure { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ComplexEnclosure { re: self.re.sub(&other.re), im: self.im.sub(&other.im) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        ComplexEnclosure { re, im }
    }

    pub fn scale(&self, s: &Enclosure) -> Self {
        ComplexEnclosure { re: self.re.mul(s), im: self.im.mul(s) }
    }

    pub fn conj(&self) -> Self {
        ComplexEnclosure { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn modulus_sq(&self) -> Enclosure {
        self.re.square().add(&self.im.square())
    }

    /// Certified interval for |z|.
    pub fn modulus(&self) -> Enclosure {
        self.modulus_sq().sqrt().expect("modulus_sq is nonnegative")
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enc(num: i64, den: i64, prec: u32) -> Enclosure {
        Enclosure::from_ratio(&BigInt::from(num), &BigInt::from(den), prec)
    }

    #[test]
    fn rational_enclosure_contains_value() {
        let e = enc(1, 3, 32);
        assert!(!e.is_exact());
        // 1/3 in [lo, hi]: check via 3*lo <= 1 <= 3*hi
        let three = Dyadic::from_i64(3);
        assert!(e.lo().mul(&three).cmp(&Dyadic::one()) == Ordering::Less);
        assert!(e.hi().mul(&three).cmp(&Dyadic::one()) == Ordering::Greater);
    }

    #[test]
    fn dyadic_rational_is_exact() {
        let e = enc(3, 2, 64);
        assert!(e.is_exact());
        assert_eq!(e.center().to_f64(), 1.5);
    }

    #[test]
    fn arithmetic_is_conservative() {
        let a = enc(1, 3, 24);
        let b = enc(1, 7, 24);
        let sum = a.add(&b);
        // 1/3 + 1/7 = 10/21
        let t = enc(10, 21, 64);
        assert!(t.intersects(&sum));
        assert!(t.is_subset_of(&sum.with_precision(16)));
        let prod = a.mul(&b);
        let tp = enc(1, 21, 64);
        assert!(tp.is_subset_of(&prod.with_precision(12)));
    }

    #[test]
    fn division_and_powers() {
        let a = enc(10, 21, 48);
        let b = enc(1, 3, 48);
        let q = a.div(&b).unwrap();
        let t = enc(10, 7, 64);
        assert!(t.intersects(&q));
        let sq = enc(3, 2, 64).powi(4).unwrap();
        assert!(sq.contains_dyadic(&Dyadic::new(BigInt::from(81), 0).div(
            &Dyadic::from_i64(16),
            64,
            Round::Floor
        )));
        let inv = enc(3, 2, 64).powi(-2).unwrap();
        assert!(inv.intersects(&enc(4, 9, 64)));
    }

    #[test]
    fn division_by_zero_interval_rejected() {
        let a = enc(1, 1, 32);
        let z = Enclosure::from_endpoints(Dyadic::from_i64(-1), Dyadic::from_i64(1), 32);
        assert!(a.div(&z).is_err());
    }

    #[test]
    fn nesting_under_precision_increase() {
        // lower-precision enclosure contains the higher-precision one
        for (n, d) in [(1i64, 3i64), (22, 7), (355, 113), (-7, 11)] {
            let lo_p = Enclosure::from_ratio(&BigInt::from(n), &BigInt::from(d), 24);
            let hi_p = Enclosure::from_ratio(&BigInt::from(n), &BigInt::from(d), 96);
            assert!(hi_p.is_subset_of(&lo_p), "nesting failed for {}/{}", n, d);
        }
    }

    #[test]
    fn complex_modulus() {
        let z = ComplexEnclosure::new(enc(3, 1, 48), enc(4, 1, 48));
        let m = z.modulus();
        assert!(m.contains_dyadic(&Dyadic::from_i64(5)));
        let w = z.mul(&z.conj());
        assert!(w.re.contains_dyadic(&Dyadic::from_i64(25)));
        assert!(w.im.contains_zero());
    }

    #[test]
    fn certified_decimal_digits() {
        let e = Enclosure::new(Dyadic::new(BigInt::from(3), -1), Dyadic::pow2(-40), 64);
        let (c, r) = e.to_decimal_certified(30);
        assert!(c.starts_with("1.5000000"));
        assert!(r.ends_with("e-13") || r.ends_with("e-12"));
    }
}
