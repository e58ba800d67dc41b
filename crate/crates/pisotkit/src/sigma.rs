//! sigma_n traces: per-n certified distances to the nearest integer, the
//! derived approximation exponents, window estimates for the liminf/limsup
//! constants, the dual-route self-check for Pisot zeta, and the family
//! density scan.
//!
//! sigma_n(alpha, zeta) = -log ||alpha zeta^n|| / log(alpha zeta^n). Samples
//! with alpha zeta^n <= 1 are skipped (nonpositive denominator); exact
//! integer hits carry sigma = +infinity and are flagged, never inferred
//! numerically.

use crate::error::{Error, Result};
use crate::exactreal::elementary;
use crate::exactreal::enclosure::{ComplexEnclosure, Enclosure};
use crate::exactreal::{
    exact_integer_value, refine_until_certified, Dyadic, PrecisionPolicy, SymbolicReal,
};
use crate::numberfield::NumberField;
use crate::pisot::{self, BoundKind, BoundReport, BoundValue, PisotCertificate, PisotOutcome};
use crate::polyalg::{self, IntPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    Direct,
    Trace,
}

#[derive(Clone, Debug)]
pub enum SigmaValue {
    /// alpha zeta^n <= 1: the exponent is undefined at this index.
    Skipped,
    /// alpha zeta^n is exactly an integer: sigma_n = +infinity.
    ExactHit,
    Finite(Enclosure),
}

impl SigmaValue {
    pub fn finite(&self) -> Option<&Enclosure> {
        match self {
            SigmaValue::Finite(e) => Some(e),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SigmaSample {
    pub n: u64,
    /// Enclosure of alpha zeta^n (from nearest +- distance).
    pub value: Enclosure,
    pub nearest: BigInt,
    pub distance: Enclosure,
    pub sigma: SigmaValue,
    pub route: Route,
}

#[derive(Clone, Debug)]
pub struct SigmaTrace {
    pub alpha: SymbolicReal,
    pub zeta: SymbolicReal,
    pub samples: Vec<SigmaSample>,
    pub n_max: u64,
    /// First index where the integer-recurrence route is active (Pisot zeta
    /// with compatible alpha only).
    pub trace_route_start: Option<u64>,
}

/// Integer-recurrence route state for Pisot zeta and alpha = g(zeta) with
/// integer g: nearest integers come from the twisted trace sequence, and the
/// distance is the certified modulus of the conjugate sum.
struct TraceEngine {
    cert: PisotCertificate,
    twist: Vec<BigInt>,
    /// t_n = sum_j g(zeta_j) zeta_j^n, exact integers, index 0..=n_max.
    integer_traces: Vec<BigInt>,
    /// g(zeta_j) * zeta_j^n for conjugates j >= 2, updated incrementally.
    conj_powers: Vec<ComplexEnclosure>,
    conj_bases: Vec<ComplexEnclosure>,
    n_current: u64,
    n0: u64,
    prec: u32,
}

impl TraceEngine {
    fn new(
        cert: PisotCertificate,
        twist: Vec<BigInt>,
        n_max: u64,
        prec: u32,
    ) -> Result<Option<TraceEngine>> {
        let integer_traces = polyalg::twisted_trace(&cert.poly, &twist, n_max as usize)?;
        let conj_bases: Vec<ComplexEnclosure> = cert.spectrum.roots[1..]
            .iter()
            .map(|r| r.complex_enclosure(prec))
            .collect();
        // g evaluated at each conjugate
        let twist_poly: Vec<Enclosure> =
            twist.iter().map(|c| Enclosure::from_bigint(c, prec)).collect();
        let conj_powers: Vec<ComplexEnclosure> = conj_bases
            .iter()
            .map(|z| {
                let mut acc = ComplexEnclosure::from_real(Enclosure::from_i64(0, prec));
                for c in twist_poly.iter().rev() {
                    acc = acc.mul(z);
                    acc.re = acc.re.add(c);
                }
                acc
            })
            .collect();
        // n0: first n with (sum of |g(zeta_j)|) * f^n < 1/2, monotone in n
        let mut c_bound = Dyadic::zero();
        for p in &conj_powers {
            c_bound = c_bound.add(&p.modulus().hi());
        }
        let f_hi = cert.conjugate_max.hi();
        if f_hi.cmp(&Dyadic::one()) != std::cmp::Ordering::Less {
            return Ok(None);
        }
        let half = Dyadic::new(BigInt::one(), -1);
        let mut n0 = 0u64;
        let mut bound = c_bound.clone();
        while bound.cmp(&half) != std::cmp::Ordering::Less {
            n0 += 1;
            bound = bound.mul(&f_hi).round(64, crate::exactreal::Round::Ceil);
            if n0 > 1_000_000 {
                return Ok(None);
            }
        }
        Ok(Some(TraceEngine {
            cert,
            twist,
            integer_traces,
            conj_powers,
            conj_bases,
            n_current: 0,
            n0: n0.max(1),
            prec,
        }))
    }

    fn advance_to(&mut self, n: u64) {
        while self.n_current < n {
            for (p, b) in self.conj_powers.iter_mut().zip(self.conj_bases.iter()) {
                *p = p.mul(b);
            }
            self.n_current += 1;
        }
    }

    /// Certified |sum of conjugate terms| at the current n.
    fn distance(&self) -> Enclosure {
        let mut sum = ComplexEnclosure::from_real(Enclosure::from_i64(0, self.prec));
        for p in &self.conj_powers {
            sum = sum.add(p);
        }
        // the sum is a real number (conjugation-symmetric), so its real-part
        // enclosure contains it
        sum.re.abs()
    }

    /// Recompute the distance at index n by direct binary powering at a
    /// higher working precision (per-sample escalation).
    fn distance_at_prec(&self, n: u64, prec: u32) -> Enclosure {
        let mut sum = ComplexEnclosure::from_real(Enclosure::from_i64(0, prec));
        for root in &self.cert.spectrum.roots[1..] {
            let z = root.complex_enclosure(prec);
            let mut g = ComplexEnclosure::from_real(Enclosure::from_i64(0, prec));
            for c in self.twist.iter().rev() {
                g = g.mul(&z);
                g.re = g.re.add(&Enclosure::from_bigint(c, prec));
            }
            sum = sum.add(&g.mul(&cpow(&z, n, prec)));
        }
        sum.re.abs()
    }
}

fn cpow(z: &ComplexEnclosure, n: u64, prec: u32) -> ComplexEnclosure {
    let mut result = ComplexEnclosure::from_real(Enclosure::from_i64(1, prec));
    let mut base = z.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    result
}

/// Twist vector for the integer-recurrence route: alpha as an integer
/// polynomial in zeta. None when alpha is not of that shape.
fn trace_twist(alpha: &SymbolicReal, zeta: &SymbolicReal, poly: &IntPoly) -> Option<Vec<BigInt>> {
    match alpha {
        SymbolicReal::Rational { num, den } => {
            if den.is_one() && num.is_positive() {
                Some(vec![num.clone()])
            } else {
                None
            }
        }
        SymbolicReal::InField { base, numer, den, shift } if base.as_ref() == zeta => {
            let field = NumberField::from_int_poly(poly);
            let g = field.from_int_coeffs(numer);
            let xs = field.pow_x(*shift).ok()?;
            let prod = field.mul(&g, &xs);
            let scaled = field.scale(&prod, &BigRational::new(BigInt::one(), den.clone()));
            field.int_coeffs(&scaled)
        }
        _ => None,
    }
}

/// Certified sign of log(alpha zeta^n): ln alpha + n ln zeta.
struct LogValue {
    ln_alpha: Enclosure,
    ln_zeta: Enclosure,
}

impl LogValue {
    fn new(alpha: &SymbolicReal, zeta: &SymbolicReal, prec: u32, policy: &PrecisionPolicy) -> Result<LogValue> {
        let mut w = prec;
        loop {
            let za = alpha.eval(w, policy)?;
            let zz = zeta.eval(w, policy)?;
            if !za.lo().is_positive() {
                if w >= policy.max_bits {
                    return Err(Error::InvalidParameter("alpha must be positive".into()));
                }
                w = (w * 2).min(policy.max_bits);
                continue;
            }
            if !zz.certainly_gt(&Dyadic::one()) {
                if zz.hi().cmp(&Dyadic::one()) != std::cmp::Ordering::Greater {
                    return Err(Error::InvalidParameter("zeta must exceed 1".into()));
                }
                if w >= policy.max_bits {
                    return Err(Error::PrecisionCap {
                        cap: policy.max_bits,
                        context: "separating zeta from 1".to_string(),
                    });
                }
                w = (w * 2).min(policy.max_bits);
                continue;
            }
            let ln_alpha = elementary::ln(&za, prec)?;
            let ln_zeta = elementary::ln(&zz, prec)?;
            return Ok(LogValue { ln_alpha, ln_zeta });
        }
    }

    fn at(&self, n: u64) -> Enclosure {
        self.ln_alpha.add(&self.ln_zeta.mul(&Enclosure::from_i64(n as i64, self.ln_zeta.precision_bits())))
    }
}

/// Compute per-n certified sigma samples for n in [1, n_max].
///
/// Route selection: the integer-recurrence route activates for certified
/// Pisot zeta (monic polynomial root) and alpha expressible as an integer
/// polynomial in zeta, once the conjugate-sum bound drops below 1/2;
/// everything else evaluates directly on the precision ladder.
pub fn trace(
    alpha: &SymbolicReal,
    zeta: &SymbolicReal,
    n_max: u64,
    target_rel_error: f64,
    policy: &PrecisionPolicy,
) -> Result<SigmaTrace> {
    let prec = 160u32;
    let logs = LogValue::new(alpha, zeta, prec, policy)?;
    let target_log2 = target_rel_error.log2().floor() as i64;

    let mut engine: Option<TraceEngine> = None;
    if let SymbolicReal::PolyRoot { poly, .. } = zeta {
        if poly.is_monic() {
            if let PisotOutcome::Certified(cert) = pisot::certify_pisot(poly, policy)? {
                if let Some(twist) = trace_twist(alpha, zeta, poly) {
                    engine = TraceEngine::new(*cert, twist, n_max, prec)?;
                }
            }
        }
    }
    let trace_route_start = engine.as_ref().map(|e| e.n0);

    let mut samples = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        if let Some(e) = engine.as_mut() {
            e.advance_to(n);
        }
        samples.push(sample_at(
            alpha,
            zeta,
            n,
            &logs,
            engine.as_ref(),
            target_log2,
            target_rel_error,
            policy,
        )?);
    }
    Ok(SigmaTrace {
        alpha: alpha.clone(),
        zeta: zeta.clone(),
        samples,
        n_max,
        trace_route_start,
    })
}

#[allow(clippy::too_many_arguments)]
fn sample_at(
    alpha: &SymbolicReal,
    zeta: &SymbolicReal,
    n: u64,
    logs: &LogValue,
    engine: Option<&TraceEngine>,
    target_log2: i64,
    target_rel_error: f64,
    policy: &PrecisionPolicy,
) -> Result<SigmaSample> {
    let prec = logs.ln_zeta.precision_bits();
    // exact hits first: never decided numerically
    if let Some(m) = exact_integer_value(alpha, zeta, n) {
        let value = Enclosure::from_bigint(&m, prec);
        let distance = Enclosure::from_i64(0, prec);
        let sigma = if m > BigInt::one() { SigmaValue::ExactHit } else { SigmaValue::Skipped };
        return Ok(SigmaSample { n, value, nearest: m, distance, sigma, route: Route::Direct });
    }

    let ln_v = logs.at(n);
    if !ln_v.lo().is_positive() {
        if !ln_v.hi().is_positive() {
            // certified alpha zeta^n < 1 (equality would be an exact hit)
            let r = refine_until_certified(alpha, zeta, n, target_rel_error, policy)?;
            let value = value_from(&r.nearest, &r.distance, prec);
            return Ok(SigmaSample {
                n,
                value,
                nearest: r.nearest,
                distance: r.distance,
                sigma: SigmaValue::Skipped,
                route: Route::Direct,
            });
        }
        // straddles 1: refine the logs locally
        let fine = LogValue::new(alpha, zeta, prec * 4, policy)?;
        let ln_v2 = fine.at(n);
        if !ln_v2.lo().is_positive() && ln_v2.hi().is_positive() {
            return Err(Error::PrecisionCap {
                cap: policy.max_bits,
                context: format!("separating alpha*zeta^{} from 1", n),
            });
        }
        return sample_at(alpha, zeta, n, &fine, engine, target_log2, target_rel_error, policy);
    }

    // trace route
    if let Some(e) = engine {
        if n >= e.n0 {
            let mut distance = e.distance();
            let mut w = e.prec;
            loop {
                let ok_width = match distance.rel_width_log2() {
                    Some(r) => r <= target_log2,
                    None => false,
                };
                if distance.lo().is_positive() && ok_width {
                    break;
                }
                if w >= policy.max_bits {
                    return Err(Error::PrecisionCap {
                        cap: policy.max_bits,
                        context: format!("certifying conjugate-sum distance at n={}", n),
                    });
                }
                w = (w * 2).min(policy.max_bits);
                distance = e.distance_at_prec(n, w);
            }
            let nearest = e.integer_traces[n as usize].clone();
            let value = value_from(&nearest, &distance, prec);
            let sigma = sigma_from(&distance, &ln_v)?;
            return Ok(SigmaSample { n, value, nearest, distance, sigma, route: Route::Trace });
        }
    }

    // direct route
    let r = refine_until_certified(alpha, zeta, n, target_rel_error, policy)?;
    let sigma = sigma_from(&r.distance, &ln_v)?;
    let value = value_from(&r.nearest, &r.distance, prec);
    Ok(SigmaSample { n, value, nearest: r.nearest, distance: r.distance, sigma, route: Route::Direct })
}

fn value_from(nearest: &BigInt, distance: &Enclosure, prec: u32) -> Enclosure {
    let c = Enclosure::from_bigint(nearest, prec);
    let d = distance.hi();
    c.widen(&d)
}

fn sigma_from(distance: &Enclosure, ln_v: &Enclosure) -> Result<SigmaValue> {
    debug_assert!(distance.lo().is_positive());
    let prec = ln_v.precision_bits();
    let ln_d = elementary::ln(distance, prec)?;
    Ok(SigmaValue::Finite(ln_d.neg().div(ln_v)?))
}

/// One-off sigma sample at a single index (direct route only); used where
/// scattered indices are needed without a full trace.
pub fn sigma_at(
    alpha: &SymbolicReal,
    zeta: &SymbolicReal,
    n: u64,
    target_rel_error: f64,
    policy: &PrecisionPolicy,
) -> Result<SigmaSample> {
    let logs = LogValue::new(alpha, zeta, 160, policy)?;
    let target_log2 = target_rel_error.log2().floor() as i64;
    sample_at(alpha, zeta, n, &logs, None, target_log2, target_rel_error, policy)
}

/// Window estimates over the trailing `tail_fraction` of a trace.
#[derive(Clone, Debug)]
pub struct WindowEstimates {
    pub n_lo: u64,
    pub n_hi: u64,
    pub certified: usize,
    pub exact_hits: usize,
    pub skipped: usize,
    /// min over certified finite sigma_n in the window
    pub inf_est: Option<Enclosure>,
    /// max over certified finite sigma_n; infinite if the window has hits
    pub sup_est: Option<Enclosure>,
    pub sup_is_infinite: bool,
    /// max excluding exact hits
    pub restricted_sup_est: Option<Enclosure>,
}

pub fn window_estimates(trace: &SigmaTrace, tail_fraction: f64) -> Result<WindowEstimates> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(Error::InvalidParameter("tail_fraction must be in (0,1]".into()));
    }
    let len = trace.samples.len() as f64;
    let start_idx = ((len * (1.0 - tail_fraction)).floor() as usize).min(trace.samples.len());
    let window = &trace.samples[start_idx..];
    if window.is_empty() {
        return Err(Error::InvalidParameter("empty tail window".into()));
    }
    let mut inf_est: Option<Enclosure> = None;
    let mut sup_est: Option<Enclosure> = None;
    let mut hits = 0usize;
    let mut skipped = 0usize;
    let mut certified = 0usize;
    for s in window {
        match &s.sigma {
            SigmaValue::Finite(e) => {
                certified += 1;
                inf_est = Some(match inf_est {
                    None => e.clone(),
                    Some(cur) => {
                        Enclosure::from_endpoints(cur.lo().min(&e.lo()), cur.hi().min(&e.hi()), e.precision_bits())
                    }
                });
                sup_est = Some(match sup_est {
                    None => e.clone(),
                    Some(cur) => {
                        Enclosure::from_endpoints(cur.lo().max(&e.lo()), cur.hi().max(&e.hi()), e.precision_bits())
                    }
                });
            }
            SigmaValue::ExactHit => hits += 1,
            SigmaValue::Skipped => skipped += 1,
        }
    }
    if certified < 10 {
        return Err(Error::InvalidParameter(format!(
            "tail window has only {} certified samples (need 10)",
            certified
        )));
    }
    Ok(WindowEstimates {
        n_lo: window.first().unwrap().n,
        n_hi: window.last().unwrap().n,
        certified,
        exact_hits: hits,
        skipped,
        inf_est,
        sup_is_infinite: hits > 0,
        sup_est: sup_est.clone(),
        restricted_sup_est: sup_est,
    })
}

/// Dual-route self check: for every n >= n0 the direct-evaluation distance
/// enclosure and the conjugate-sum distance enclosure must intersect.
#[derive(Clone, Debug, Serialize)]
pub struct DualRouteReport {
    pub n0: u64,
    pub checked: usize,
    /// largest |direct center - trace center| observed, as a decimal string
    pub max_center_gap: String,
}

pub fn dual_route_check(
    alpha: &SymbolicReal,
    zeta: &SymbolicReal,
    n_max: u64,
    policy: &PrecisionPolicy,
) -> Result<DualRouteReport> {
    let SymbolicReal::PolyRoot { poly, .. } = zeta else {
        return Err(Error::InvalidParameter(
            "dual-route check needs zeta as a monic polynomial root".into(),
        ));
    };
    let PisotOutcome::Certified(cert) = pisot::certify_pisot(poly, policy)? else {
        return Err(Error::InvalidParameter("dual-route check needs Pisot zeta".into()));
    };
    let twist = trace_twist(alpha, zeta, poly).ok_or_else(|| {
        Error::InvalidParameter("alpha is not an integer polynomial in zeta".into())
    })?;
    let prec = 192u32;
    let mut engine = TraceEngine::new(*cert, twist, n_max, prec)?
        .ok_or_else(|| Error::InvalidParameter("conjugate bound does not contract".into()))?;
    let n0 = engine.n0;
    let mut max_gap = Dyadic::zero();
    let mut checked = 0usize;
    for n in 1..=n_max {
        engine.advance_to(n);
        if n < n0 {
            continue;
        }
        if exact_integer_value(alpha, zeta, n).is_some() {
            continue;
        }
        let trace_dist = engine.distance();
        let direct = refine_until_certified(alpha, zeta, n, 1e-12, policy)?;
        if !trace_dist.intersects(&direct.distance) {
            return Err(Error::RouteDisagreement { n });
        }
        // consistency of the predicted nearest integer
        if &direct.nearest != &engine.integer_traces[n as usize] {
            return Err(Error::RouteDisagreement { n });
        }
        let gap = trace_dist.center().sub(direct.distance.center()).abs();
        max_gap = max_gap.max(&gap);
        checked += 1;
    }
    Ok(DualRouteReport {
        n0,
        checked,
        max_center_gap: crate::exactreal::enclosure::radius_string(&max_gap),
    })
}

/// Verify sigma_n(alpha, zeta^k) = sigma_{nk}(alpha, zeta) on enclosures.
#[derive(Clone, Debug, Serialize)]
pub struct PowerIdentityReport {
    pub k: u32,
    pub compared: usize,
    pub conformant: bool,
    pub first_mismatch: Option<u64>,
}

pub fn power_identity_check(
    alpha: &SymbolicReal,
    zeta: &SymbolicReal,
    k: u32,
    n_max: u64,
    policy: &PrecisionPolicy,
) -> Result<PowerIdentityReport> {
    if k < 1 {
        return Err(Error::InvalidParameter("power must be >= 1".into()));
    }
    let zk = zeta.pow_symbolic(k, policy)?;
    let inner_max = n_max / k as u64;
    if inner_max == 0 {
        return Err(Error::InvalidParameter("n_max too small for this power".into()));
    }
    let t_pow = trace(alpha, &zk, inner_max, 1e-9, policy)?;
    let t_base = trace(alpha, zeta, n_max, 1e-9, policy)?;
    let mut conformant = true;
    let mut first_mismatch = None;
    let mut compared = 0usize;
    for n in 1..=inner_max {
        let a = &t_pow.samples[(n - 1) as usize];
        let b = &t_base.samples[(n * k as u64 - 1) as usize];
        compared += 1;
        let ok = match (&a.sigma, &b.sigma) {
            (SigmaValue::Skipped, SigmaValue::Skipped) => true,
            (SigmaValue::ExactHit, SigmaValue::ExactHit) => a.nearest == b.nearest,
            (SigmaValue::Finite(x), SigmaValue::Finite(y)) => {
                x.intersects(y) && a.nearest == b.nearest
            }
            _ => false,
        };
        if !ok && first_mismatch.is_none() {
            conformant = false;
            first_mismatch = Some(n);
        }
    }
    Ok(PowerIdentityReport { k, compared, conformant, first_mismatch })
}

/// One row of the density scan over the Pisot family
/// X^k - M X^(k-1) + N(M, eps).
#[derive(Clone, Debug)]
pub struct DensityRow {
    pub k: u32,
    pub m: i64,
    pub eps: BigRational,
    pub n_param: i64,
    pub zeta: Enclosure,
    pub f: Enclosure,
    pub unit: bool,
    /// -log f / log zeta, the liminf target swept across (0, 1/(k-1)]
    pub target: Enclosure,
    pub window_inf: Option<Enclosure>,
}

/// N(M, eps) = floor(M^(1-eps)) clamped to [1, M-2], computed exactly for
/// rational eps = a/b via the integer b-th root of M^(b-a).
pub fn density_parameter(m: i64, eps: &BigRational) -> Result<i64> {
    if eps < &BigRational::zero() || eps >= &BigRational::one() {
        return Err(Error::InvalidParameter("eps must lie in [0, 1)".into()));
    }
    let a = eps.numer();
    let b = eps.denom();
    let b_u = b.to_u32().ok_or_else(|| Error::InvalidParameter("eps denominator too large".into()))?;
    let e = (b - a).to_u32().ok_or_else(|| Error::InvalidParameter("eps too complex".into()))?;
    let mb = BigInt::from(m).pow(e);
    let root = num_integer::Roots::nth_root(&mb, b_u);
    let val = root.to_i64().unwrap_or(i64::MAX);
    Ok(val.clamp(1, m - 2))
}

/// Scan the family across M and an eps grid: certify each member, report the
/// liminf target -log f / log zeta and a measured window estimate.
pub fn density_scan(
    k: u32,
    m_range: (i64, i64),
    eps_grid: &[BigRational],
    n_max_trace: u64,
    tail_fraction: f64,
    policy: &PrecisionPolicy,
) -> Result<Vec<DensityRow>> {
    if k < 2 {
        return Err(Error::InvalidParameter("density scan requires k >= 2".into()));
    }
    let prec = 128;
    let mut rows = Vec::new();
    for m in m_range.0..=m_range.1 {
        if m < 3 {
            continue;
        }
        for eps in eps_grid {
            let n_param = density_parameter(m, eps)?;
            let poly = pisot::family_q(k, m, n_param)?;
            let PisotOutcome::Certified(cert) = pisot::certify_pisot(&poly, policy)? else {
                return Err(Error::InvalidParameter(format!(
                    "family member {} failed certification",
                    poly
                )));
            };
            let target = pisot::conjugate_ratio(&cert, prec)?;
            let window_inf = if n_max_trace > 0 {
                let zeta = SymbolicReal::poly_root(poly.clone(), crate::exactreal::RootSelector::MaxRealAbove1);
                let tr = trace(&SymbolicReal::one(), &zeta, n_max_trace, 1e-6, policy)?;
                window_estimates(&tr, tail_fraction).ok().and_then(|w| w.inf_est)
            } else {
                None
            };
            rows.push(DensityRow {
                k,
                m,
                eps: eps.clone(),
                n_param,
                zeta: cert.pisot_root.clone(),
                f: cert.conjugate_max.clone(),
                unit: cert.is_unit,
                target,
                window_inf,
            });
        }
    }
    Ok(rows)
}

/// Conformance of measured window estimates against a bound report:
/// a SigmaSupUpper bound passes when the measured window max stays at or
/// below the bound's upper endpoint, and similarly for the other kinds.
#[derive(Clone, Debug, Serialize)]
pub struct ConformanceRow {
    pub name: String,
    pub pass: Option<bool>,
}

pub fn check_bounds(report: &BoundReport, window: &WindowEstimates) -> Vec<ConformanceRow> {
    report
        .entries
        .iter()
        .map(|e| {
            let pass = match (&e.value, e.kind) {
                (BoundValue::Infinite, _) => Some(true),
                (BoundValue::Finite(b), BoundKind::SigmaSupUpper) => {
                    if window.sup_is_infinite {
                        Some(false)
                    } else {
                        window
                            .sup_est
                            .as_ref()
                            .map(|m| m.hi().cmp(&b.hi()) != std::cmp::Ordering::Greater)
                    }
                }
                (BoundValue::Finite(b), BoundKind::SigmaRestrictedSupUpper) => window
                    .restricted_sup_est
                    .as_ref()
                    .map(|m| m.hi().cmp(&b.hi()) != std::cmp::Ordering::Greater),
                (BoundValue::Finite(b), BoundKind::SigmaInfUpper) => window
                    .inf_est
                    .as_ref()
                    .map(|m| m.lo().cmp(&b.hi()) != std::cmp::Ordering::Greater),
                (BoundValue::Finite(_), BoundKind::LogZetaLower) => None,
            };
            ConformanceRow { name: e.name.to_string(), pass }
        })
        .collect()
}

/// CSV row rendering: `n,nearest,distance,sigma_lo,sigma_hi,route,exact_hit`.
pub fn sample_csv_row(s: &SigmaSample) -> String {
    let (dist, dist_rad) = s.distance.to_decimal_certified(30);
    let (sig_lo, sig_hi, hit) = match &s.sigma {
        SigmaValue::Finite(e) => (
            Enclosure::exact(e.lo(), 64).to_decimal_certified(12).0,
            Enclosure::exact(e.hi(), 64).to_decimal_certified(12).0,
            false,
        ),
        SigmaValue::ExactHit => ("inf".to_string(), "inf".to_string(), true),
        SigmaValue::Skipped => ("skipped".to_string(), "skipped".to_string(), false),
    };
    let route = match s.route {
        Route::Direct => "direct",
        Route::Trace => "trace",
    };
    format!(
        "{},{},{}±{},{},{},{},{}",
        s.n, s.nearest, dist, dist_rad, sig_lo, sig_hi, route, hit
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    fn phi() -> SymbolicReal {
        SymbolicReal::parse("polyroot:x^2-x-1:max").unwrap()
    }

    #[test]
    fn golden_ratio_sigma_is_one() {
        let tr = trace(&SymbolicReal::one(), &phi(), 50, 1e-9, &policy()).unwrap();
        assert_eq!(tr.trace_route_start, Some(2));
        for s in &tr.samples {
            if s.n < 2 {
                continue;
            }
            let e = s.sigma.finite().expect("finite sigma");
            assert!(
                e.contains_dyadic(&Dyadic::one()),
                "sigma_{} = {:?} does not contain 1",
                s.n,
                e
            );
            let width_ok = e.rel_width_log2().map(|w| w < -20).unwrap_or(false);
            assert!(width_ok, "sigma_{} too wide: {:?}", s.n, e);
        }
    }

    #[test]
    fn cube_root_hits_at_multiples_of_three() {
        let z = SymbolicReal::radical(2, 1, 3).unwrap();
        let tr = trace(&SymbolicReal::one(), &z, 30, 1e-9, &policy()).unwrap();
        for s in &tr.samples {
            let is_hit = matches!(s.sigma, SigmaValue::ExactHit);
            assert_eq!(is_hit, s.n % 3 == 0, "hit flag wrong at n={}", s.n);
        }
        // n=3: value exactly 2
        assert_eq!(tr.samples[2].nearest, BigInt::from(2));
        assert_eq!(tr.samples[5].nearest, BigInt::from(4));
    }

    #[test]
    fn plastic_window_and_nonconstancy() {
        let z = SymbolicReal::parse("polyroot:x^3-x-1:max").unwrap();
        let tr = trace(&SymbolicReal::one(), &z, 400, 1e-9, &policy()).unwrap();
        assert_eq!(tr.trace_route_start, Some(10));
        let w = window_estimates(&tr, 0.5).unwrap();
        let inf = w.inf_est.unwrap();
        // liminf target is 1/2; window min should be near it
        let lo = inf.lo().to_f64();
        assert!(lo > 0.45 && lo < 0.55, "window min {} away from 1/2", lo);
        assert!(!w.sup_is_infinite);
    }

    #[test]
    fn skipped_samples_when_value_below_one() {
        // alpha = 1/100, zeta = 3/2: early n give alpha zeta^n < 1
        let a = SymbolicReal::rational(1, 100).unwrap();
        let z = SymbolicReal::rational(3, 2).unwrap();
        let tr = trace(&a, &z, 20, 1e-9, &policy()).unwrap();
        assert!(matches!(tr.samples[0].sigma, SigmaValue::Skipped));
        // 0.01 * 1.5^12 = 1.297 > 1
        assert!(tr.samples[11].sigma.finite().is_some());
    }

    #[test]
    fn dual_route_agreement_for_phi_and_plastic() {
        let r = dual_route_check(&SymbolicReal::one(), &phi(), 120, &policy()).unwrap();
        assert_eq!(r.n0, 2);
        assert!(r.checked > 100);
        let z = SymbolicReal::parse("polyroot:x^3-x-1:max").unwrap();
        let r2 = dual_route_check(&SymbolicReal::one(), &z, 120, &policy()).unwrap();
        assert_eq!(r2.n0, 10);
    }

    #[test]
    fn power_identity_for_phi_and_radical() {
        let r = power_identity_check(&SymbolicReal::one(), &phi(), 2, 60, &policy()).unwrap();
        assert!(r.conformant, "mismatch at {:?}", r.first_mismatch);
        let z = SymbolicReal::radical(2, 1, 3).unwrap();
        let r2 = power_identity_check(&SymbolicReal::one(), &z, 3, 45, &policy()).unwrap();
        assert!(r2.conformant);
    }

    #[test]
    fn density_parameter_clamps() {
        // eps = 0: N = M clamped to M-2
        let e0 = BigRational::zero();
        assert_eq!(density_parameter(10, &e0).unwrap(), 8);
        // eps = 1/2: N = floor(sqrt(10)) = 3
        let eh = BigRational::new(1.into(), 2.into());
        assert_eq!(density_parameter(10, &eh).unwrap(), 3);
        // large eps: clamp to 1
        let eb = BigRational::new(9.into(), 10.into());
        assert_eq!(density_parameter(3, &eb).unwrap(), 1);
    }

    #[test]
    fn density_rows_sweep_targets() {
        let eps: Vec<BigRational> = (0..5)
            .map(|i| BigRational::new(i.into(), 5.into()))
            .collect();
        let rows = density_scan(2, (3, 14), &eps, 0, 0.5, &policy()).unwrap();
        assert!(!rows.is_empty());
        let mut targets: Vec<f64> = rows.iter().map(|r| r.target.center().to_f64()).collect();
        targets.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // all in (0, 1], spread out
        assert!(targets.first().unwrap() > &0.0);
        assert!(targets.last().unwrap() <= &1.0000001);
        assert!(targets.last().unwrap() - targets.first().unwrap() > 0.5);
    }
}
