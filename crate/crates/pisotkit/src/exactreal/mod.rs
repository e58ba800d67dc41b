//! Certified arbitrary-precision evaluation of symbolic reals, the
//! nearest-integer functions with the half-integer-down tie convention, and
//! the adaptive precision ladder.

pub mod dyadic;
pub mod elementary;
pub mod enclosure;
pub mod symbolic;

pub use dyadic::{Dyadic, Round};
pub use enclosure::{ComplexEnclosure, Enclosure};
pub use symbolic::{RootSelector, SymbolicReal};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// Doubling precision ladder: start_bits, 2*start_bits, ..., capped at
/// max_bits (the cap itself is always the last rung). Deterministic.
#[derive(Clone, Debug)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { start_bits: 64, max_bits: 1 << 20 }
    }
}

impl PrecisionPolicy {
    pub fn new(start_bits: u32, max_bits: u32) -> Self {
        PrecisionPolicy { start_bits: start_bits.max(16), max_bits: max_bits.max(start_bits) }
    }

    pub fn rungs(&self) -> impl Iterator<Item = u32> {
        let start = self.start_bits;
        let max = self.max_bits;
        let mut current = start;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = current;
            if current >= max {
                done = true;
            } else {
                current = current.saturating_mul(2).min(max);
            }
            Some(out)
        })
    }
}

/// Result of a nearest-integer query on an enclosure.
#[derive(Clone, Debug)]
pub struct NearestIntResult {
    pub nearest: BigInt,
    pub distance: Enclosure,
    pub exact_hit: bool,
    /// False when the fractional part straddles some half-integer, so the
    /// nearest integer could not be pinned down at this radius.
    pub certified: bool,
}

/// Paper-convention nearest integer of an exact dyadic point:
/// the closest integer, with {x} = 1/2 resolved downward.
pub fn paper_nearest_dyadic(x: &Dyadic) -> BigInt {
    x.sub(&Dyadic::new(BigInt::one(), -1)).ceil_bigint()
}

/// Same convention on an exact rational.
pub fn paper_nearest_rational(x: &BigRational) -> BigInt {
    let shifted = x - BigRational::new(BigInt::one(), BigInt::from(2));
    shifted.ceil().to_integer()
}

/// Nearest integer with certified distance. Precondition: radius < 1/4.
pub fn nearest_int(v: &Enclosure) -> Result<NearestIntResult> {
    let quarter = Dyadic::new(BigInt::one(), -2);
    if v.radius().cmp(&quarter) != std::cmp::Ordering::Less {
        return Err(Error::InvalidParameter(
            "nearest_int requires enclosure radius below 1/4".into(),
        ));
    }
    let m_lo = paper_nearest_dyadic(&v.lo());
    let m_hi = paper_nearest_dyadic(&v.hi());
    if m_lo == m_hi {
        let m = m_lo;
        let p = v.precision_bits();
        let distance = v.sub(&Enclosure::from_bigint(&m, p)).abs();
        let exact_hit = v.is_exact() && v.center().is_integer() && v.center().floor_bigint() == m;
        Ok(NearestIntResult { nearest: m, distance, exact_hit, certified: true })
    } else {
        // fractional part straddles a half-integer
        let p = v.precision_bits();
        let m = paper_nearest_dyadic(v.center());
        let distance = v.sub(&Enclosure::from_bigint(&m, p)).abs();
        Ok(NearestIntResult { nearest: m, distance, exact_hit: false, certified: false })
    }
}

/// True iff alpha * zeta^n is exactly an integer, decided symbolically.
/// Complete for rationals, radicals (including cross-radical products), and
/// InField forms over their own base; conservatively false for combinations
/// outside the admissible reductions (a later precision-cap error then flags
/// the suspected hit rather than mislabeling it).
pub fn exact_hit_test(alpha: &SymbolicReal, zeta: &SymbolicReal, n: u64) -> bool {
    exact_integer_value(alpha, zeta, n).is_some()
}

/// The exact integer value of alpha * zeta^n when the hit test succeeds.
pub fn exact_integer_value(alpha: &SymbolicReal, zeta: &SymbolicReal, n: u64) -> Option<BigInt> {
    // zeta rational (covers radicals that reduce to rationals)
    if let Some(z) = zeta.rational_value() {
        let zn = pow_rational(&z, n);
        if let Some(a) = alpha.rational_value() {
            return rational_integer(&(a * zn));
        }
        // alpha irrational (or undecidable): alpha * rational is an integer
        // only if alpha is rational
        return infield_times_power(alpha, zeta, n);
    }
    // zeta a genuine radical (p/q)^(1/l), l >= 2, minimal
    if let Some((p, q, l)) = zeta.radical_form() {
        debug_assert!(l >= 2);
        if let Some(a) = alpha.rational_value() {
            if n % l as u64 != 0 {
                return None;
            }
            let zn = pow_rational(&BigRational::new(p, q), n / l as u64);
            return rational_integer(&(a * zn));
        }
        if let Some((p2, q2, l2)) = alpha.radical_form() {
            // value^D = (p2/q2)^(D/l2) * (p/q)^(nD/l) must be a perfect D-th
            // power of an integer
            let d = (l as u64).lcm(&(l2 as u64));
            let r = pow_rational(&BigRational::new(p2, q2), d / l2 as u64)
                * pow_rational(&BigRational::new(p, q), n * d / l as u64);
            let rint = rational_integer(&r)?;
            if !rint.is_positive() {
                return None;
            }
            let root = num_integer::Roots::nth_root(&rint, d as u32);
            if num_traits::pow::Pow::pow(&root, d as u32) == rint {
                return Some(root);
            }
            return None;
        }
        return infield_times_power(alpha, zeta, n);
    }
    // zeta an irrational polynomial root: only InField alpha over the same
    // value can produce hits we can certify
    infield_times_power(alpha, zeta, n)
}

/// Exact value of alpha * zeta^n for alpha in InField form over a base with
/// the same value as zeta, reduced in the base's field.
fn infield_times_power(alpha: &SymbolicReal, zeta: &SymbolicReal, n: u64) -> Option<BigInt> {
    let SymbolicReal::InField { base, numer, den, shift } = alpha else {
        return None;
    };
    if !same_value(base, zeta) {
        return None;
    }
    let field = match &**base {
        SymbolicReal::PolyRoot { poly, .. } => NumberField::from_int_poly(poly),
        SymbolicReal::Radical { num, den: d, index } => NumberField::radical(num, d, *index),
        _ => return None,
    };
    let g = field.from_int_coeffs(numer);
    let x_pow = field.pow_x(shift.checked_add(n as i64)?).ok()?;
    let prod = field.mul(&g, &x_pow);
    let scaled = field.scale(&prod, &BigRational::new(BigInt::one(), den.clone()));
    field.as_integer(&scaled)
}

use crate::numberfield::NumberField;

/// Structural value identity between an InField base and zeta.
fn same_value(base: &SymbolicReal, zeta: &SymbolicReal) -> bool {
    if base == zeta {
        return true;
    }
    // radicals: equal minimal forms mean equal values
    if let (Some(a), Some(b)) = (base.radical_form(), zeta.radical_form()) {
        return a == b;
    }
    false
}

/// Adaptive evaluation of alpha * zeta^n to a certified nearest integer with
/// relative distance-enclosure width at most target_rel_error. Doubles the
/// working precision per rung; a cap hit signals a suspected exact hit or
/// half-integer tie that needs symbolic resolution.
pub fn refine_until_certified(
    alpha: &SymbolicReal,
    zeta: &SymbolicReal,
    n: u64,
    target_rel_error: f64,
    policy: &PrecisionPolicy,
) -> Result<NearestIntResult> {
    if !(target_rel_error > 0.0 && target_rel_error < 1.0) {
        return Err(Error::InvalidParameter("target_rel_error must be in (0,1)".into()));
    }
    let target_log2 = target_rel_error.log2().floor() as i64;

    if let Some(m) = exact_integer_value(alpha, zeta, n) {
        let distance = Enclosure::from_i64(0, policy.start_bits);
        return Ok(NearestIntResult { nearest: m, distance, exact_hit: true, certified: true });
    }

    // exact rational fast path
    if let (Some(a), Some(z)) = (alpha.rational_value(), zeta.rational_value()) {
        let v = a * pow_rational(&z, n);
        let m = paper_nearest_rational(&v);
        let diff = &v - BigRational::from(m.clone());
        let dist = diff.abs();
        let prec = policy.start_bits.max(128);
        let distance = Enclosure::from_ratio(dist.numer(), dist.denom(), prec);
        return Ok(NearestIntResult { nearest: m, distance, exact_hit: false, certified: true });
    }

    for prec in policy.rungs() {
        let va = alpha.eval(prec, policy)?;
        let vz = zeta.eval(prec, policy)?;
        let v = va.mul(&vz.powi(n as i64)?);
        if v.radius().cmp(&Dyadic::new(BigInt::one(), -2)) != std::cmp::Ordering::Less {
            continue;
        }
        let r = nearest_int(&v)?;
        if !r.certified {
            continue;
        }
        if r.distance.contains_zero() {
            continue; // suspected hit; the symbolic test said no, so refine
        }
        match r.distance.rel_width_log2() {
            Some(w) if w <= target_log2 => return Ok(r),
            _ => continue,
        }
    }
    Err(Error::PrecisionCap {
        cap: policy.max_bits,
        context: format!(
            "certifying nearest integer of ({}) * ({})^{}",
            alpha, zeta, n
        ),
    })
}

fn pow_rational(r: &BigRational, n: u64) -> BigRational {
    let mut result = BigRational::one();
    let mut base = r.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    result
}

fn rational_integer(r: &BigRational) -> Option<BigInt> {
    if r.is_integer() {
        Some(r.to_integer())
    } else {
        None
    }
}

/// Helpers shared by unit, integration, and acceptance tests: parse decimal
/// reference digits (from an independent high-precision oracle) into an
/// enclosure that certainly contains the underlying constant.
pub mod test_support {
    use super::*;

    pub fn decimal_enclosure(s: &str, prec: u32) -> Enclosure {
        let s = s.trim();
        let (sign, body) = match s.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        let digits: String = format!("{}{}", int_part, frac_part);
        let num: BigInt = digits.parse().expect("decimal digits");
        let num = num * BigInt::from(sign);
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let e = Enclosure::from_ratio(&num, &den, prec);
        // widen by one unit in the last printed digit: reference strings are
        // rounded, and the true constant must stay inside
        let ulp = Enclosure::from_ratio(&BigInt::one(), &den, 64);
        e.widen(&ulp.hi())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use test_support::decimal_enclosure;

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn tie_convention_rounds_down() {
        // exact 2.5 -> nearest 2, distance exactly 1/2
        let v = Enclosure::exact(Dyadic::new(5.into(), -1), 64);
        let r = nearest_int(&v).unwrap();
        assert_eq!(r.nearest, BigInt::from(2));
        assert!(r.certified);
        assert!(!r.exact_hit);
        assert!(r.distance.contains_dyadic(&Dyadic::new(1.into(), -1)));
        assert!(r.distance.is_exact());
        // negative tie: -2.5 -> floor is -3
        let v = Enclosure::exact(Dyadic::new((-5).into(), -1), 64);
        let r = nearest_int(&v).unwrap();
        assert_eq!(r.nearest, BigInt::from(-3));
    }

    #[test]
    fn exact_integer_is_a_hit() {
        let v = Enclosure::from_i64(7, 64);
        let r = nearest_int(&v).unwrap();
        assert_eq!(r.nearest, BigInt::from(7));
        assert!(r.exact_hit);
        assert!(r.distance.is_exact() && r.distance.contains_zero());
    }

    #[test]
    fn straddling_half_integer_is_uncertified() {
        let v = Enclosure::new(Dyadic::new(5.into(), -1), Dyadic::pow2(-6), 64);
        let r = nearest_int(&v).unwrap();
        assert!(!r.certified);
        let wide = Enclosure::new(Dyadic::zero(), Dyadic::one(), 64);
        assert!(nearest_int(&wide).is_err());
    }

    #[test]
    fn phi_fifth_power_nearest() {
        // phi^5 = 11.0901699437...; nearest 11, distance = phi^-5
        let phi = SymbolicReal::parse("polyroot:x^2-x-1:max").unwrap();
        let one = SymbolicReal::one();
        let r = refine_until_certified(&one, &phi, 5, 1e-12, &policy()).unwrap();
        assert_eq!(r.nearest, BigInt::from(11));
        let expect =
            decimal_enclosure("0.090169943749474241022934171828190588601545899028814", 160);
        assert!(r.distance.intersects(&expect));
        assert!(r.certified && !r.exact_hit);
    }

    #[test]
    fn phi_tenth_power_is_lucas_123() {
        let phi = SymbolicReal::parse("polyroot:x^2-x-1:max").unwrap();
        let r = refine_until_certified(&SymbolicReal::one(), &phi, 10, 1e-9, &policy()).unwrap();
        assert_eq!(r.nearest, BigInt::from(123));
        // distance = phi^-10 ~ 8.1306e-3
        let expect = decimal_enclosure("0.0081306187557833487477241098899035253829951106830425", 160);
        assert!(r.distance.intersects(&expect));
    }

    #[test]
    fn cube_root_exact_hits() {
        let c = SymbolicReal::radical(2, 1, 3).unwrap();
        let one = SymbolicReal::one();
        assert!(exact_hit_test(&one, &c, 3));
        assert!(exact_hit_test(&one, &c, 6));
        assert!(!exact_hit_test(&one, &c, 4));
        assert_eq!(exact_integer_value(&one, &c, 6), Some(BigInt::from(4)));
        let r = refine_until_certified(&one, &c, 3, 1e-9, &policy()).unwrap();
        assert!(r.exact_hit);
        assert_eq!(r.nearest, BigInt::from(2));
    }

    #[test]
    fn rational_power_distance_exact() {
        // (3/2)^4 = 81/16: nearest 5, distance 1/16
        let z = SymbolicReal::radical(3, 2, 1).unwrap();
        let r = refine_until_certified(&SymbolicReal::one(), &z, 4, 1e-9, &policy()).unwrap();
        assert_eq!(r.nearest, BigInt::from(5));
        assert!(r.distance.contains_dyadic(&Dyadic::new(1.into(), -4)));
        assert!(r.certified);
    }

    #[test]
    fn quarter_times_power_of_two_hits() {
        // alpha = 1/4, zeta = 2: 2^3/4 = 2
        let a = SymbolicReal::rational(1, 4).unwrap();
        let z = SymbolicReal::radical(2, 1, 1).unwrap();
        assert!(exact_hit_test(&a, &z, 3));
        assert_eq!(exact_integer_value(&a, &z, 3), Some(BigInt::from(2)));
        assert!(!exact_hit_test(&a, &z, 1));
    }

    #[test]
    fn cross_radical_hits() {
        // alpha = 2^(1/3), zeta = 4^(1/3) = 2^(2/3): alpha*zeta = 2
        let a = SymbolicReal::radical(2, 1, 3).unwrap();
        let z = SymbolicReal::radical(4, 1, 3).unwrap();
        assert!(exact_hit_test(&a, &z, 1));
        assert_eq!(exact_integer_value(&a, &z, 1), Some(BigInt::from(2)));
        assert!(!exact_hit_test(&a, &z, 2));
    }

    #[test]
    fn infield_hits_over_polyroot() {
        // alpha = phi^(-3), zeta = phi: alpha * zeta^n integer iff phi^(n-3)
        // is... never (phi powers are irrational); but alpha = (phi+2)/B with
        // g = x+2: (phi+2)*phi^(-1)... use alpha = phi^(-2)*(x^2 coeffs):
        // simplest true case: alpha = g(phi)/1 * phi^(-4) with g = x^4 form
        // reduced: g(x) = 3x+2 (= phi^4 reduced mod x^2-x-1)
        let phi = SymbolicReal::parse("polyroot:x^2-x-1:max").unwrap();
        let a = SymbolicReal::in_field(
            phi.clone(),
            vec![BigInt::from(2), BigInt::from(3)],
            BigInt::one(),
            -4,
        )
        .unwrap();
        // alpha = phi^4 * phi^-4 = 1: so alpha*zeta^n = phi^n: integer only at n=0
        assert!(exact_hit_test(&a, &phi, 0));
        assert!(!exact_hit_test(&a, &phi, 1));
        assert!(!exact_hit_test(&a, &phi, 5));
    }

    #[test]
    fn monotone_certification() {
        // once certified, doubling precision reproduces the same nearest
        let z = SymbolicReal::parse("polyroot:x^3-x-1:max").unwrap();
        let one = SymbolicReal::one();
        for n in [5u64, 12, 25] {
            let r1 = refine_until_certified(&one, &z, n, 1e-6, &PrecisionPolicy::new(64, 1 << 16))
                .unwrap();
            let r2 = refine_until_certified(&one, &z, n, 1e-6, &PrecisionPolicy::new(128, 1 << 16))
                .unwrap();
            assert_eq!(r1.nearest, r2.nearest);
            assert!(r1.distance.intersects(&r2.distance));
        }
    }

    #[test]
    fn precision_ladder_rungs() {
        let p = PrecisionPolicy::new(64, 300);
        let rungs: Vec<u32> = p.rungs().collect();
        assert_eq!(rungs, vec![64, 128, 256, 300]);
    }
}
