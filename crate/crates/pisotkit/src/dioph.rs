//! Continued fractions with enclosure-certified partial quotients, a
//! finite-depth estimate of the one-dimensional irrationality exponent, and
//! the conjugate-angle report connecting the second conjugate of a Pisot
//! number to rational-approximation quality.

use crate::error::{Error, Result};
use crate::exactreal::elementary;
use crate::exactreal::enclosure::Enclosure;
use crate::exactreal::{PrecisionPolicy, SymbolicReal};
use crate::pisot::PisotCertificate;
use crate::polyalg;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Continued fraction data: partial quotients and convergents p_i/q_i.
#[derive(Clone, Debug)]
pub struct CFExpansion {
    pub quotients: Vec<BigInt>,
    pub convergents: Vec<(BigInt, BigInt)>,
    /// Quotients provably correct for the input (all of them, by construction).
    pub certified_depth: usize,
    /// True when the input was rational and fully expanded.
    pub terminated: bool,
}

impl CFExpansion {
    fn from_quotients(quotients: Vec<BigInt>, terminated: bool) -> CFExpansion {
        let mut convergents = Vec::with_capacity(quotients.len());
        let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
        let (mut p, mut q) = (BigInt::zero(), BigInt::one());
        std::mem::swap(&mut p_prev, &mut p);
        std::mem::swap(&mut q_prev, &mut q);
        // now (p_prev, q_prev) = (0, 1) h_{-2}; (p, q) = (1, 0) h_{-1}
        for a in &quotients {
            let np = a * &p + &p_prev;
            let nq = a * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, np);
            q_prev = std::mem::replace(&mut q, nq);
            convergents.push((p.clone(), q.clone()));
        }
        CFExpansion {
            certified_depth: quotients.len(),
            quotients,
            convergents,
            terminated,
        }
    }

    /// p_i q_{i-1} - p_{i-1} q_i = (-1)^(i-1), exactly.
    pub fn determinant_identity_holds(&self) -> bool {
        for i in 1..self.convergents.len() {
            let (p1, q1) = &self.convergents[i];
            let (p0, q0) = &self.convergents[i - 1];
            let det = p1 * q0 - p0 * q1;
            if det.abs() != BigInt::one() {
                return false;
            }
        }
        true
    }
}

/// Expand a value given by an adaptive enclosure provider. A quotient is
/// emitted only when the floor is constant across the whole enclosure; on
/// ambiguity the provider is asked for more precision and the expansion
/// restarts, so the certified prefix is reproducible.
pub fn cf_expand_provider<F>(provider: F, depth: usize, policy: &PrecisionPolicy) -> Result<CFExpansion>
where
    F: Fn(u32) -> Result<Enclosure>,
{
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be positive".into()));
    }
    let mut prec = policy.start_bits.max(128);
    loop {
        let x0 = provider(prec)?;
        let mut quotients: Vec<BigInt> = Vec::with_capacity(depth);
        let mut x = x0;
        let mut complete = true;
        while quotients.len() < depth {
            let lo_floor = x.lo().floor_bigint();
            let hi_floor = x.hi().floor_bigint();
            if lo_floor != hi_floor {
                complete = false;
                break;
            }
            quotients.push(lo_floor.clone());
            let frac = x.sub(&Enclosure::from_bigint(&lo_floor, x.precision_bits()));
            if frac.contains_zero() {
                // cannot certify the next reciprocal; either the value is
                // rational (callers use the exact path) or precision is short
                complete = false;
                break;
            }
            x = frac.recip()?;
        }
        if complete {
            return Ok(CFExpansion::from_quotients(quotients, false));
        }
        if prec >= policy.max_bits {
            return Err(Error::PrecisionCap {
                cap: policy.max_bits,
                context: format!(
                    "certifying continued-fraction quotient {} of the input",
                    quotients.len() + 1
                ),
            });
        }
        prec = (prec * 2).min(policy.max_bits);
    }
}

/// Expand a symbolic real: exact Euclidean expansion for rationals
/// (terminating), enclosure-certified quotients otherwise.
pub fn cf_expand(x: &SymbolicReal, depth: usize, policy: &PrecisionPolicy) -> Result<CFExpansion> {
    if let Some(r) = x.rational_value() {
        let mut quotients = Vec::new();
        let mut num = r.numer().clone();
        let mut den = r.denom().clone();
        while !den.is_zero() && quotients.len() < depth {
            let (q, rem) = num.div_mod_floor(&den);
            quotients.push(q);
            num = std::mem::replace(&mut den, rem);
        }
        let terminated = den.is_zero();
        return Ok(CFExpansion::from_quotients(quotients, terminated));
    }
    cf_expand_provider(|prec| x.eval(prec, policy), depth, policy)
}

/// Finite-depth estimate of the irrationality exponent lambda_1: the maximum
/// of log q_{i+1} / log q_i over the deepest quarter of the expansion
/// (normalization: bounded quotients give values near 1, matching the
/// algebraic-number expectation). Labeled an estimate: no liminf/limsup
/// claim is made at finite depth.
pub fn irrationality_exponent_estimate(cf: &CFExpansion) -> Result<Enclosure> {
    if cf.certified_depth < 5 {
        return Err(Error::InvalidParameter(
            "need at least 5 certified quotients for an exponent estimate".into(),
        ));
    }
    let n = cf.convergents.len();
    let start = (3 * n) / 4;
    let prec = 96;
    let two = BigInt::from(2);
    let mut best: Option<Enclosure> = None;
    for i in start.max(1)..n.saturating_sub(1) {
        let q_i = &cf.convergents[i].1;
        let q_next = &cf.convergents[i + 1].1;
        if q_i < &two {
            continue;
        }
        let num = elementary::ln(&Enclosure::from_bigint(q_next, prec), prec)?;
        let den = elementary::ln(&Enclosure::from_bigint(q_i, prec), prec)?;
        let ratio = num.div(&den)?;
        best = Some(match best {
            None => ratio,
            Some(b) => Enclosure::from_endpoints(
                b.lo().max(&ratio.lo()),
                b.hi().max(&ratio.hi()),
                prec,
            ),
        });
    }
    best.ok_or_else(|| {
        Error::InvalidParameter("no usable convergent ratios in the tail window".into())
    })
}

#[derive(Clone, Debug, Serialize)]
pub enum AngleRegime {
    /// Second conjugate real: the constants coincide and equal
    /// -log f / log zeta; the angle is 0 or pi.
    RealSecondConjugate,
    /// Complex pair: the angle fraction psi_2/(2 pi) is analyzed.
    ComplexPair,
}

/// Evidence report for the conjugate-angle question: the continued fraction
/// of psi_2/(2 pi) at certified depth, its exponent estimate, and
/// tan(psi_2). States evidence only; no Liouville verdict is possible at
/// finite depth.
#[derive(Clone, Debug)]
pub struct AngleReport {
    pub regime: AngleRegime,
    pub angle_fraction: Option<Enclosure>,
    pub tan_angle: Option<Enclosure>,
    pub quotients: Vec<BigInt>,
    pub lambda1_estimate: Option<Enclosure>,
    pub certified_depth: usize,
}

pub fn conjugate_angle_report(
    cert: &PisotCertificate,
    depth: usize,
    policy: &PrecisionPolicy,
) -> Result<AngleReport> {
    if cert.degree < 3 {
        return Err(Error::InvalidParameter(
            "angle report requires degree >= 3".into(),
        ));
    }
    if cert.second_is_real == Some(true) {
        return Ok(AngleReport {
            regime: AngleRegime::RealSecondConjugate,
            angle_fraction: None,
            tan_angle: None,
            quotients: Vec::new(),
            lambda1_estimate: None,
            certified_depth: 0,
        });
    }
    let poly = cert.poly.clone();
    // provider: re-isolate at the needed precision and take the angle of the
    // upper-half maximal conjugate, divided by 2 pi
    let provider = |prec: u32| -> Result<Enclosure> {
        let spec = polyalg::isolate_roots_rel(&poly, prec + 16, policy)?;
        let root = spec.roots[1..]
            .iter()
            .find(|r| !r.is_real && r.center_im.is_positive())
            .ok_or_else(|| Error::Undecided("no upper-half conjugate found".into()))?;
        let angle = elementary::atan2_angle(
            &root.im_enclosure(prec + 16),
            &root.re_enclosure(prec + 16),
            prec + 16,
        )?;
        let two_pi = elementary::pi(prec + 16).mul(&Enclosure::from_i64(2, prec + 16));
        angle.div(&two_pi).map(|e| e.with_precision(prec))
    };
    let cf = cf_expand_provider(provider, depth, policy)?;
    let lambda = irrationality_exponent_estimate(&cf).ok();
    // tan(psi_2) = im/re of the conjugate
    let spec = polyalg::isolate_roots_rel(&poly, 160, policy)?;
    let tan_angle = spec.roots[1..]
        .iter()
        .find(|r| !r.is_real && r.center_im.is_positive())
        .and_then(|r| r.im_enclosure(160).div(&r.re_enclosure(160)).ok());
    Ok(AngleReport {
        regime: AngleRegime::ComplexPair,
        angle_fraction: Some(provider(192)?),
        tan_angle,
        quotients: cf.quotients.clone(),
        lambda1_estimate: lambda,
        certified_depth: cf.certified_depth,
    })
}

#[derive(Serialize)]
pub struct CFJson {
    pub quotients: Vec<String>,
    pub convergents: Vec<(String, String)>,
    pub lambda1_lo: Option<String>,
    pub lambda1_hi: Option<String>,
    pub certified_depth: usize,
    pub terminated: bool,
}

pub fn cf_json(cf: &CFExpansion, lambda: Option<&Enclosure>) -> CFJson {
    CFJson {
        quotients: cf.quotients.iter().map(|q| q.to_string()).collect(),
        convergents: cf
            .convergents
            .iter()
            .map(|(p, q)| (p.to_string(), q.to_string()))
            .collect(),
        lambda1_lo: lambda.map(|l| Enclosure::exact(l.lo(), 64).to_decimal_certified(6).0),
        lambda1_hi: lambda.map(|l| Enclosure::exact(l.hi(), 64).to_decimal_certified(6).0),
        certified_depth: cf.certified_depth,
        terminated: cf.terminated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pisot::{certify_pisot, PisotOutcome};
    use crate::polyalg::IntPoly;

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn classical_expansions() {
        // sqrt2 = [1; 2, 2, 2, ...]
        let s2 = SymbolicReal::radical(2, 1, 2).unwrap();
        let cf = cf_expand(&s2, 20, &policy()).unwrap();
        assert_eq!(cf.quotients[0], BigInt::one());
        assert!(cf.quotients[1..].iter().all(|a| *a == BigInt::from(2)));
        assert!(cf.determinant_identity_holds());
        // phi = [1; 1, 1, ...]
        let phi = SymbolicReal::parse("polyroot:x^2-x-1:max").unwrap();
        let cfp = cf_expand(&phi, 25, &policy()).unwrap();
        assert!(cfp.quotients.iter().all(|a| *a == BigInt::one()));
        assert!(cfp.determinant_identity_holds());
        // 3/2 = [1; 2], terminating
        let r = cf_expand(&SymbolicReal::rational(3, 2).unwrap(), 10, &policy()).unwrap();
        assert_eq!(r.quotients, vec![BigInt::one(), BigInt::from(2)]);
        assert!(r.terminated);
    }

    #[test]
    fn sqrt3_alternating_quotients() {
        let s3 = SymbolicReal::radical(3, 1, 2).unwrap();
        let cf = cf_expand(&s3, 16, &policy()).unwrap();
        // [1; 1, 2, 1, 2, ...]
        assert_eq!(cf.quotients[0], BigInt::one());
        for (i, a) in cf.quotients[1..].iter().enumerate() {
            let expect = if i % 2 == 0 { 1 } else { 2 };
            assert_eq!(*a, BigInt::from(expect), "quotient {} wrong", i + 1);
        }
        assert!(cf.determinant_identity_holds());
    }

    #[test]
    fn prefix_stable_under_precision_doubling() {
        let phi = SymbolicReal::parse("polyroot:x^3-x-1:max").unwrap();
        let a = cf_expand_provider(|p| phi.eval(p, &policy()), 18, &PrecisionPolicy::new(128, 1 << 16)).unwrap();
        let b = cf_expand_provider(|p| phi.eval(p, &policy()), 18, &PrecisionPolicy::new(256, 1 << 16)).unwrap();
        assert_eq!(a.quotients, b.quotients);
    }

    #[test]
    fn exponent_estimates_near_one_for_quadratics() {
        for s in ["radical:2/1:2", "radical:3/1:2", "polyroot:x^2-x-1:max", "polyroot:x^2-x-3:max"] {
            let x = SymbolicReal::parse(s).unwrap();
            let cf = cf_expand(&x, 30, &policy()).unwrap();
            let est = irrationality_exponent_estimate(&cf).unwrap();
            let lo = est.lo().to_f64();
            let hi = est.hi().to_f64();
            assert!(lo > 0.9 && hi < 1.1, "estimate for {} out of band: [{}, {}]", s, lo, hi);
        }
    }

    #[test]
    fn liouville_style_blowup_detected() {
        // truncation of sum 10^(-j!) at j = 5: a 72-digit quotient appears at
        // index 15, well inside the deepest-quarter window at depth 16
        let mut num = BigInt::zero();
        let den = BigInt::from(10u32).pow(120); // 10^(5!)
        for j in 1..=5u32 {
            let f: u32 = (1..=j).product();
            num += BigInt::from(10u32).pow(120 - f);
        }
        let x = SymbolicReal::rational_big(num, den).unwrap();
        let cf = cf_expand(&x, 16, &policy()).unwrap();
        let est = irrationality_exponent_estimate(&cf).unwrap();
        assert!(est.lo().to_f64() > 2.0, "no blowup detected: {:?}", est);
        // and it grows with depth past the next factorial gap
        let deep = cf_expand(&x, 31, &policy()).unwrap();
        assert!(deep.terminated);
    }

    #[test]
    fn angle_report_plastic_vs_real_cubic() {
        let p = policy();
        let PisotOutcome::Certified(c) = certify_pisot(&IntPoly::parse("x^3-x-1").unwrap(), &p).unwrap() else {
            panic!()
        };
        let r = conjugate_angle_report(&c, 12, &p).unwrap();
        assert!(matches!(r.regime, AngleRegime::ComplexPair));
        let frac = r.angle_fraction.unwrap();
        // psi2/(2pi) = 0.38797756442147237741...
        let expect = crate::exactreal::test_support::decimal_enclosure(
            "0.387977564421472377410239708590833683100955990012606665912695",
            200,
        );
        assert!(frac.intersects(&expect));
        assert_eq!(r.certified_depth, 12);
        // tan(psi2) = -0.84890449168783818866...
        let tan = r.tan_angle.unwrap();
        let expect_tan = crate::exactreal::test_support::decimal_enclosure(
            "-0.848904491687838188666903161508400558001778343440331195710582",
            200,
        );
        assert!(tan.intersects(&expect_tan));

        let PisotOutcome::Certified(c2) =
            certify_pisot(&IntPoly::parse("x^3-3*x^2+1").unwrap(), &p).unwrap()
        else {
            panic!()
        };
        let r2 = conjugate_angle_report(&c2, 12, &p).unwrap();
        assert!(matches!(r2.regime, AngleRegime::RealSecondConjugate));
    }

    #[test]
    fn quartic_pisot_angle_report() {
        let p = policy();
        let PisotOutcome::Certified(c) =
            certify_pisot(&IntPoly::parse("x^4-x^3-1").unwrap(), &p).unwrap()
        else {
            panic!()
        };
        let r = conjugate_angle_report(&c, 10, &p).unwrap();
        assert!(matches!(r.regime, AngleRegime::ComplexPair));
        assert!(r.lambda1_estimate.is_some());
    }
}
