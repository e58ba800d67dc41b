//! Certified elementary functions over enclosures: natural logarithm,
//! arctangent, and the constants ln 2 and pi.
//!
//! Everything reduces to two classical series with explicit geometric tail
//! bounds, evaluated in interval arithmetic with a guard margin:
//!
//!   ln m  = 2 * atanh(t),  t = (m-1)/(m+1) in [0, 1/3] for m in [1, 2]
//!   atan t = t - t^3/3 + t^5/5 - ...       after halving until t <= 1/8
//!
//! Constants are cached per canonical precision rung (powers of two), so a
//! value at a given working precision is unique regardless of call order.

use super::dyadic::{Dyadic, Round};
use super::enclosure::Enclosure;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

fn guard(prec: u32) -> u32 {
    prec + 32
}

fn canonical_rung(prec: u32) -> u32 {
    prec.next_power_of_two().max(64)
}

/// atanh-series for ln over an interval contained in [1, 2].
fn ln_mantissa(m: &Enclosure, w: u32) -> Enclosure {
    let one = Enclosure::from_i64(1, w);
    let t = m.sub(&one).div(&m.add(&one)).expect("m+1 > 0");
    let t2 = t.square();
    // terms needed: ((1/3)^(2I+1)) * (9/8) / (2I+1) <= 2^-w
    let terms = (w as usize) / 3 + 3;
    let mut sum = Enclosure::from_i64(0, w);
    let mut pow = t.clone();
    for i in 0..terms {
        let denom = Enclosure::from_i64((2 * i + 1) as i64, w);
        sum = sum.add(&pow.div(&denom).unwrap());
        pow = pow.mul(&t2);
    }
    // conservative tail: pow = t^(2*terms+1) >= 0, tail <= pow * 9/8
    let tail_hi = pow
        .hi()
        .mul(&Dyadic::from_i64(9))
        .div(&Dyadic::from_i64(8), w, Round::Ceil);
    let tail = Enclosure::from_endpoints(Dyadic::zero(), tail_hi.max(&Dyadic::zero()), w);
    sum.add(&tail).mul(&Enclosure::from_i64(2, w))
}

fn ln2_rung(rung: u32) -> Enclosure {
    static CACHE: OnceLock<Mutex<HashMap<u32, Enclosure>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = cache.lock().unwrap();
        if let Some(v) = guard.get(&rung) {
            return v.clone();
        }
    }
    let w = guard_rung(rung);
    let two = Enclosure::from_i64(2, w);
    let v = ln_mantissa(&two, w).with_precision(rung);
    cache.lock().unwrap().insert(rung, v.clone());
    v
}

fn guard_rung(rung: u32) -> u32 {
    rung + 64
}

/// Enclosure of ln 2 with at least `prec` working bits.
pub fn ln2(prec: u32) -> Enclosure {
    ln2_rung(canonical_rung(prec))
}

/// Certified natural logarithm of a strictly positive enclosure.
pub fn ln(x: &Enclosure, prec: u32) -> Result<Enclosure> {
    if !x.lo().is_positive() {
        return Err(Error::InvalidParameter(
            "ln requires a strictly positive enclosure".into(),
        ));
    }
    let lo = ln_point(&x.lo(), prec, Round::Floor);
    let hi = ln_point(&x.hi(), prec, Round::Ceil);
    Ok(Enclosure::from_endpoints(lo, hi, prec))
}

/// Directed ln of a positive dyadic point.
pub fn ln_point(x: &Dyadic, prec: u32, dir: Round) -> Dyadic {
    debug_assert!(x.is_positive());
    let w = guard(prec);
    // x = m * 2^k with m in [1, 2)
    let k = x.log2_magnitude();
    let m = x.mul_pow2(-k);
    debug_assert!(m.cmp(&Dyadic::one()) != std::cmp::Ordering::Less);
    let lnm = ln_mantissa(&Enclosure::exact(m, w), w);
    let kl = Enclosure::from_i64(k, w).mul(&ln2(w));
    let total = lnm.add(&kl);
    match dir {
        Round::Floor => total.lo().round(prec, Round::Floor),
        Round::Ceil => total.hi().round(prec, Round::Ceil),
        Round::Nearest => total.center().round(prec, Round::Nearest),
    }
}

/// Alternating arctangent series on |t| <= 1/8 (interval form).
fn atan_small(t: &Enclosure, w: u32) -> Enclosure {
    let t2 = t.square();
    let terms = (w as usize) / 6 + 2;
    let mut sum = Enclosure::from_i64(0, w);
    let mut pow = t.clone();
    let mut sign = 1i64;
    for i in 0..terms {
        let denom = Enclosure::from_i64(sign * (2 * i + 1) as i64, w);
        sum = sum.add(&pow.div(&denom).unwrap());
        pow = pow.mul(&t2);
        sign = -sign;
    }
    // alternating series: error within +-|next term|
    let bound = pow.abs().hi();
    sum.widen(&bound)
}

/// Certified arctangent of an arbitrary enclosure (monotone, so endpoints).
pub fn atan(x: &Enclosure, prec: u32) -> Enclosure {
    let lo = atan_point(&x.lo(), prec, Round::Floor);
    let hi = atan_point(&x.hi(), prec, Round::Ceil);
    Enclosure::from_endpoints(lo, hi, prec)
}

fn atan_point(x: &Dyadic, prec: u32, dir: Round) -> Dyadic {
    let w = guard(prec);
    let total = atan_interval_exactarg(&Enclosure::exact(x.clone(), w), w);
    match dir {
        Round::Floor => total.lo().round(prec, Round::Floor),
        Round::Ceil => total.hi().round(prec, Round::Ceil),
        Round::Nearest => total.center().round(prec, Round::Nearest),
    }
}

/// atan over a sign-definite or small interval; used internally with
/// near-point arguments.
fn atan_interval_exactarg(x: &Enclosure, w: u32) -> Enclosure {
    if x.contains_zero() {
        // |atan t| <= |t|; good enough for tiny straddles
        let b = x.abs().hi();
        return Enclosure::from_endpoints(b.neg(), b, w);
    }
    if x.lo().is_negative() {
        return atan_interval_exactarg(&x.neg(), w).neg();
    }
    // x > 0 now
    let one = Enclosure::from_i64(1, w);
    if x.lo().cmp(&Dyadic::one()) == std::cmp::Ordering::Greater {
        // atan x = pi/2 - atan(1/x)
        let half_pi = pi(w).mul(&Enclosure::exact(Dyadic::new(1.into(), -1), w));
        return half_pi.sub(&atan_interval_exactarg(&one.div(x).unwrap(), w));
    }
    // halve until below 1/8
    let eighth = Dyadic::new(1.into(), -3);
    let mut t = x.clone();
    let mut doublings = 0u32;
    while t.hi().cmp(&eighth) == std::cmp::Ordering::Greater {
        let denom = one.add(&one.add(&t.square()).sqrt().unwrap());
        t = t.div(&denom).unwrap();
        doublings += 1;
        if doublings > 8 {
            break;
        }
    }
    let s = atan_small(&t, w);
    let mut out = s;
    for _ in 0..doublings {
        out = out.add(&out.clone());
    }
    out
}

fn pi_rung(rung: u32) -> Enclosure {
    static CACHE: OnceLock<Mutex<HashMap<u32, Enclosure>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = cache.lock().unwrap();
        if let Some(v) = guard.get(&rung) {
            return v.clone();
        }
    }
    let w = guard_rung(rung);
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239); both arguments < 1/8, so the
    // small series applies directly and no pi recursion occurs.
    let a5 = atan_small(&Enclosure::from_ratio(&1.into(), &5.into(), w), w);
    let a239 = atan_small(&Enclosure::from_ratio(&1.into(), &239.into(), w), w);
    let v = a5
        .mul(&Enclosure::from_i64(16, w))
        .sub(&a239.mul(&Enclosure::from_i64(4, w)))
        .with_precision(rung);
    cache.lock().unwrap().insert(rung, v.clone());
    v
}

/// Enclosure of pi with at least `prec` working bits.
pub fn pi(prec: u32) -> Enclosure {
    pi_rung(canonical_rung(prec))
}

/// Angle of the complex point (re, im) in [0, 2pi), certified.
/// Requires the imaginary part to be sign-definite; purely real inputs
/// must be resolved by the caller (angle 0 or pi).
pub fn atan2_angle(im: &Enclosure, re: &Enclosure, prec: u32) -> Result<Enclosure> {
    let w = guard(prec);
    if im.lo().is_positive() {
        // angle = pi/2 - atan(re/im), lands in (0, pi)
        let q = re.div(im)?;
        let half_pi = pi(w).mul(&Enclosure::exact(Dyadic::new(1.into(), -1), w));
        Ok(half_pi.sub(&atan(&q, w)).with_precision(prec))
    } else if im.hi().is_negative() {
        // angle = 3pi/2 - atan(re/im), lands in (pi, 2pi)
        let q = re.div(im)?;
        let three_half_pi = pi(w).mul(&Enclosure::from_ratio(&3.into(), &2.into(), w));
        Ok(three_half_pi.sub(&atan(&q, w)).with_precision(prec))
    } else {
        Err(Error::Undecided(
            "imaginary part straddles zero; resolve real roots symbolically".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactreal::test_support::decimal_enclosure;

    #[test]
    fn ln2_matches_reference_digits() {
        let v = ln2(128);
        let reference =
            decimal_enclosure("0.69314718055994530941723212145817656807550013436025525412068", 200);
        assert!(reference.is_subset_of(&v.with_precision(100)) || v.intersects(&reference));
        assert!(v.contains_dyadic(reference.center()) || v.intersects(&reference));
        // tight: radius below 2^-120
        assert!(v.radius().is_zero() || v.radius().log2_magnitude() < -120);
    }

    #[test]
    fn pi_matches_reference_digits() {
        let v = pi(128);
        let reference =
            decimal_enclosure("3.14159265358979323846264338327950288419716939937510582097494", 200);
        assert!(v.intersects(&reference));
        assert!(v.radius().is_zero() || v.radius().log2_magnitude() < -120);
    }

    #[test]
    fn ln_of_rational_interval() {
        // ln(3/2) = 0.405465108108164381978013115464349137
        let x = Enclosure::from_ratio(&3.into(), &2.into(), 128);
        let v = ln(&x, 128).unwrap();
        let reference = decimal_enclosure("0.405465108108164381978013115464349137", 160);
        assert!(v.intersects(&reference));
    }

    #[test]
    fn ln_large_and_tiny_magnitudes() {
        // ln(2^100) = 100 ln 2
        let x = Enclosure::exact(Dyadic::pow2(100), 96);
        let v = ln(&x, 96).unwrap();
        let expect = ln2(96).mul(&Enclosure::from_i64(100, 96));
        assert!(v.intersects(&expect));
        let y = Enclosure::exact(Dyadic::pow2(-1000), 96);
        let vy = ln(&y, 96).unwrap();
        let expect_y = ln2(96).mul(&Enclosure::from_i64(-1000, 96));
        assert!(vy.intersects(&expect_y));
    }

    #[test]
    fn atan_one_is_quarter_pi() {
        let v = atan(&Enclosure::from_i64(1, 128), 128);
        let q = pi(128).mul(&Enclosure::from_ratio(&1.into(), &4.into(), 128));
        assert!(v.intersects(&q));
        assert!(v.radius().is_zero() || v.radius().log2_magnitude() < -110);
    }

    #[test]
    fn atan_negative_and_large() {
        // atan(-7) = -(pi/2 - atan(1/7))
        let v = atan(&Enclosure::from_i64(-7, 128), 128);
        let reference =
            decimal_enclosure("-1.4288992721907326964184700745371983590908029409591", 160);
        assert!(v.intersects(&reference));
    }

    #[test]
    fn angle_of_plastic_conjugate() {
        // z = -0.66235897862237301298... + 0.56227951206230124390...i
        // angle = 2.43773493228831672097088255743731736169...
        let re = decimal_enclosure("-0.66235897862237301298045442723904867036720202845086668226700754", 200);
        let im = decimal_enclosure("0.562279512062301243899182144909373061497843002895783939838390488", 200);
        let a = atan2_angle(&im, &re, 160).unwrap();
        let reference =
            decimal_enclosure("2.43773493228831672097088255743731736169315702511883847009813", 200);
        assert!(a.intersects(&reference));
    }

    #[test]
    fn angle_lower_half_plane() {
        // (1, -1): angle 7pi/4
        let re = Enclosure::from_i64(1, 96);
        let im = Enclosure::from_i64(-1, 96);
        let a = atan2_angle(&im, &re, 96).unwrap();
        let expect = pi(96).mul(&Enclosure::from_ratio(&7.into(), &4.into(), 96));
        assert!(a.intersects(&expect));
    }
}
