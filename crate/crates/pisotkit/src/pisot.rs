//! Pisot certification, Pisot units, the X^k - M X^(k-1) + N family, and the
//! ladder of upper bounds for the approximation constants.

use crate::error::{Error, Result};
use crate::exactreal::elementary;
use crate::exactreal::enclosure::Enclosure;
use crate::exactreal::{Dyadic, PrecisionPolicy, SymbolicReal};
use crate::numberfield::NumberField;
use crate::polyalg::{self, IntPoly, RootSpectrum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

/// Certified Pisot data: exactly one root outside the unit circle, real and
/// above 1; all conjugates certified strictly inside.
#[derive(Clone, Debug)]
pub struct PisotCertificate {
    pub poly: IntPoly,
    pub spectrum: RootSpectrum,
    /// Enclosure of the Pisot root (real, certified > 1).
    pub pisot_root: Enclosure,
    /// Enclosure of f = max conjugate modulus (certified < 1; exact 0 for
    /// degree 1).
    pub conjugate_max: Enclosure,
    pub is_unit: bool,
    pub degree: usize,
    /// Angle of the canonically-first maximal-modulus conjugate, in [0, 2pi).
    /// Exactly 0 or pi when that conjugate is real; 0 for degree 1.
    pub second_angle: Enclosure,
    /// Whether the maximal-modulus conjugate is real (None for degree 1).
    pub second_is_real: Option<bool>,
}

/// Violated condition when a polynomial is not certifiably Pisot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NotPisotReason {
    NotMonic,
    ZeroConstantCoefficient,
    RootOnUnitCircle,
    MultipleRootsOutsideUnitCircle,
    DominantRootNotRealAbove1,
}

impl fmt::Display for NotPisotReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NotPisotReason::NotMonic => "polynomial is not monic",
            NotPisotReason::ZeroConstantCoefficient => "constant coefficient is zero",
            NotPisotReason::RootOnUnitCircle => "a root lies on the unit circle",
            NotPisotReason::MultipleRootsOutsideUnitCircle => {
                "more than one root lies outside the unit circle"
            }
            NotPisotReason::DominantRootNotRealAbove1 => {
                "the dominant root is not a real number above 1"
            }
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Debug)]
pub enum PisotOutcome {
    Certified(Box<PisotCertificate>),
    NotPisot(NotPisotReason),
}

/// Certify the Pisot property of a monic squarefree integer polynomial,
/// or name the violated condition. Undecidable-at-cap situations (a root too
/// close to the unit circle) surface as a precision-cap error.
pub fn certify_pisot(poly: &IntPoly, policy: &PrecisionPolicy) -> Result<PisotOutcome> {
    if !poly.is_monic() {
        return Ok(PisotOutcome::NotPisot(NotPisotReason::NotMonic));
    }
    if !poly.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if poly.constant().is_zero() {
        return Ok(PisotOutcome::NotPisot(NotPisotReason::ZeroConstantCoefficient));
    }
    // roots exactly on the circle at +-1 are decided exactly
    if poly.eval_bigint(&BigInt::one()).is_zero()
        || poly.eval_bigint(&BigInt::from(-1)).is_zero()
    {
        return Ok(PisotOutcome::NotPisot(NotPisotReason::RootOnUnitCircle));
    }

    let one = Dyadic::one();
    let mut rel = 96u32;
    loop {
        let spectrum = polyalg::isolate_roots_rel(poly, rel, policy)?;
        let prec = rel.max(96);
        let mut outside = 0usize;
        let mut undecided = false;
        for root in &spectrum.roots {
            let m = root.modulus(prec);
            if m.certainly_gt(&one) {
                outside += 1;
            } else if !m.certainly_lt(&one) {
                undecided = true;
            }
        }
        if undecided {
            if rel >= policy.max_bits {
                return Err(Error::PrecisionCap {
                    cap: policy.max_bits,
                    context: format!("separating roots of {} from the unit circle", poly),
                });
            }
            rel = (rel * 2).min(policy.max_bits);
            continue;
        }
        if outside == 0 {
            return Ok(PisotOutcome::NotPisot(NotPisotReason::DominantRootNotRealAbove1));
        }
        if outside > 1 {
            return Ok(PisotOutcome::NotPisot(NotPisotReason::MultipleRootsOutsideUnitCircle));
        }
        // canonical order puts the outside root first
        let dominant = &spectrum.roots[0];
        if !dominant.is_real || !dominant.re_enclosure(prec).certainly_gt(&one) {
            return Ok(PisotOutcome::NotPisot(NotPisotReason::DominantRootNotRealAbove1));
        }
        let degree = poly.degree();
        let pisot_root = dominant.re_enclosure(prec);
        let conjugate_max = if degree == 1 {
            Enclosure::from_i64(0, prec)
        } else {
            let mut lo = Dyadic::zero();
            let mut hi = Dyadic::zero();
            for root in &spectrum.roots[1..] {
                let m = root.modulus(prec);
                lo = lo.max(&m.lo());
                hi = hi.max(&m.hi());
            }
            Enclosure::from_endpoints(lo, hi, prec)
        };
        let is_unit = poly.constant().abs().is_one();

        // second-conjugate data: need the top conjugate either strictly
        // dominant among conjugates (real case) or a certified conjugate pair
        match second_conjugate_data(&spectrum, prec) {
            Some((second_angle, second_is_real)) => {
                return Ok(PisotOutcome::Certified(Box::new(PisotCertificate {
                    poly: poly.clone(),
                    spectrum,
                    pisot_root,
                    conjugate_max,
                    is_unit,
                    degree,
                    second_angle,
                    second_is_real,
                })));
            }
            None => {
                if rel >= policy.max_bits {
                    return Err(Error::PrecisionCap {
                        cap: policy.max_bits,
                        context: format!("resolving the maximal conjugate of {}", poly),
                    });
                }
                rel = (rel * 2).min(policy.max_bits);
            }
        }
    }
}

/// Angle and reality of the canonically-first maximal-modulus conjugate.
/// None when the top-of-conjugates structure is still ambiguous.
fn second_conjugate_data(
    spectrum: &RootSpectrum,
    prec: u32,
) -> Option<(Enclosure, Option<bool>)> {
    if spectrum.roots.len() == 1 {
        return Some((Enclosure::from_i64(0, prec), None));
    }
    let second = &spectrum.roots[1];
    let m2 = second.modulus(prec);
    if second.is_real {
        for other in &spectrum.roots[2..] {
            if !other.modulus(prec).certainly_lt(&m2.lo()) {
                return None;
            }
        }
        let angle = if second.center_re.is_negative() {
            elementary::pi(prec)
        } else {
            Enclosure::from_i64(0, prec)
        };
        Some((angle, Some(true)))
    } else {
        // expect the partner right after in canonical order; all later
        // conjugates strictly smaller
        if spectrum.roots.len() < 3 {
            return None;
        }
        let partner = &spectrum.roots[2];
        if partner.is_real {
            return None;
        }
        // partner must be the mirror image
        let mirror_re = second.re_enclosure(prec);
        let mirror_im = second.im_enclosure(prec).neg();
        if !mirror_re.intersects(&partner.re_enclosure(prec))
            || !mirror_im.intersects(&partner.im_enclosure(prec))
        {
            return None;
        }
        for other in &spectrum.roots[3..] {
            if !other.modulus(prec).certainly_lt(&m2.lo()) {
                return None;
            }
        }
        let upper = if second.center_im.is_positive() { second } else { partner };
        let angle =
            elementary::atan2_angle(&upper.im_enclosure(prec), &upper.re_enclosure(prec), prec)
                .ok()?;
        Some((angle, Some(false)))
    }
}

/// The family Q(X) = X^k - M X^(k-1) + N, a Pisot polynomial for
/// k >= 2, M >= 3, 1 <= N <= M-2.
pub fn family_q(k: u32, m: i64, n: i64) -> Result<IntPoly> {
    if k < 2 {
        return Err(Error::InvalidParameter("family requires k >= 2".into()));
    }
    if m < 3 {
        return Err(Error::InvalidParameter("family requires M >= 3".into()));
    }
    if n < 1 || n > m - 2 {
        return Err(Error::InvalidParameter("family requires 1 <= N <= M-2".into()));
    }
    let mut coeffs = vec![BigInt::zero(); k as usize + 1];
    coeffs[0] = BigInt::from(n);
    coeffs[k as usize - 1] = BigInt::from(-m);
    coeffs[k as usize] = BigInt::one();
    IntPoly::new(coeffs)
}

/// Irreducibility by the Pisot criterion: monic, nonzero constant term,
/// exactly one root certified outside the unit circle, all others certified
/// strictly inside. A `false` means the criterion does not apply, not that
/// the polynomial is reducible.
pub fn irreducible_by_pisot_criterion(spectrum: &RootSpectrum, poly: &IntPoly) -> Result<bool> {
    if !poly.is_monic() || poly.constant().is_zero() {
        return Ok(false);
    }
    // roots exactly at +-1 sit on the circle; the criterion cannot apply
    if poly.eval_bigint(&BigInt::one()).is_zero()
        || poly.eval_bigint(&BigInt::from(-1)).is_zero()
    {
        return Ok(false);
    }
    let one = Dyadic::one();
    let mut outside = 0usize;
    for root in &spectrum.roots {
        let m = root.modulus(128);
        if m.certainly_gt(&one) {
            outside += 1;
        } else if !m.certainly_lt(&one) {
            return Err(Error::Undecided(format!(
                "modulus of a root of {} vs 1 undecided; refine the spectrum",
                poly
            )));
        }
    }
    Ok(outside == 1)
}

/// What a bound constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    SigmaInfUpper,
    SigmaSupUpper,
    SigmaRestrictedSupUpper,
    LogZetaLower,
}

#[derive(Clone, Debug)]
pub enum BoundValue {
    Finite(Enclosure),
    Infinite,
}

#[derive(Clone, Debug)]
pub struct BoundEntry {
    pub name: &'static str,
    pub kind: BoundKind,
    pub value: BoundValue,
    pub applicable: bool,
    pub source: &'static str,
}

#[derive(Clone, Debug, Default)]
pub struct BoundReport {
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn push(&mut self, e: BoundEntry) {
        self.entries.push(e);
    }

    pub fn get(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name && e.applicable)
    }
}

/// The three degree-level bounds for a Pisot number: sigma_inf <= 1/(k-1),
/// sigma_sup <= k-1, and sigma_inf <= -log f / log zeta.
pub fn degree_bounds(cert: &PisotCertificate, prec: u32) -> Result<BoundReport> {
    if cert.degree < 2 {
        return Err(Error::InvalidParameter("degree bounds require k >= 2".into()));
    }
    let k = cert.degree as i64;
    let mut report = BoundReport::default();
    report.push(BoundEntry {
        name: "inv_degree_liminf",
        kind: BoundKind::SigmaInfUpper,
        value: BoundValue::Finite(Enclosure::from_ratio(&1.into(), &(k - 1).into(), prec)),
        applicable: true,
        source: "liminf bound 1/(k-1) from the conjugate product",
    });
    report.push(BoundEntry {
        name: "degree_limsup",
        kind: BoundKind::SigmaSupUpper,
        value: BoundValue::Finite(Enclosure::from_i64(k - 1, prec)),
        applicable: true,
        source: "limsup bound k-1 from the norm of the nearest-integer error",
    });
    report.push(BoundEntry {
        name: "conjugate_modulus_liminf",
        kind: BoundKind::SigmaInfUpper,
        value: BoundValue::Finite(conjugate_ratio(cert, prec)?),
        applicable: true,
        source: "liminf bound -log f / log zeta from the dominant conjugate",
    });
    Ok(report)
}

/// -log f / log zeta as a certified enclosure.
pub fn conjugate_ratio(cert: &PisotCertificate, prec: u32) -> Result<Enclosure> {
    let lnf = elementary::ln(&cert.conjugate_max.with_precision(prec), prec)?;
    let lnz = elementary::ln(&cert.pisot_root.with_precision(prec), prec)?;
    lnf.neg().div(&lnz)
}

/// Structural facts tied to unit-ness.
#[derive(Clone, Debug)]
pub struct UnitRelations {
    /// For k = 2: the predicted eventually-constant sigma value
    /// -log f / log zeta, and whether it is exactly 1 (iff unit).
    pub quadratic_sigma: Option<Enclosure>,
    pub quadratic_sigma_is_one: Option<bool>,
    /// k >= 4 forces -log f/log zeta < 1/(k-1) strictly.
    pub strict_gap_at_degree_4plus: bool,
    /// Maximal-modulus conjugate real => liminf = limsup = -log f/log zeta.
    pub second_is_real: Option<bool>,
}

pub fn unit_relations(cert: &PisotCertificate, prec: u32) -> Result<UnitRelations> {
    let quadratic_sigma =
        if cert.degree == 2 { Some(conjugate_ratio(cert, prec)?) } else { None };
    // for k=2, sigma = 1 exactly iff the norm |a_0| is 1
    let quadratic_sigma_is_one = if cert.degree == 2 { Some(cert.is_unit) } else { None };
    Ok(UnitRelations {
        quadratic_sigma,
        quadratic_sigma_is_one,
        strict_gap_at_degree_4plus: cert.degree >= 4,
        second_is_real: cert.second_is_real,
    })
}

/// Angle data of the maximal-modulus conjugate (degree >= 3), plus the
/// consistency check that equal-modulus conjugates are complex-conjugate
/// pairs.
#[derive(Clone, Debug)]
pub struct SecondConjugateAngle {
    pub angle: Enclosure,
    pub real_second_conjugate: bool,
    pub conjugate_pairing_consistent: bool,
}

pub fn second_conjugate_angle(
    cert: &PisotCertificate,
    prec: u32,
) -> Result<SecondConjugateAngle> {
    if cert.degree < 3 {
        return Err(Error::InvalidParameter(
            "second-conjugate angle analysis requires degree >= 3".into(),
        ));
    }
    let real_second = cert.second_is_real.unwrap_or(false);
    // pairing consistency: every non-real conjugate's mirror box must meet a
    // sibling disk
    let mut consistent = true;
    let roots = &cert.spectrum.roots;
    for (i, r) in roots.iter().enumerate().skip(1) {
        if r.is_real {
            continue;
        }
        let mre = r.re_enclosure(prec);
        let mim = r.im_enclosure(prec).neg();
        let mut found = false;
        for (j, other) in roots.iter().enumerate() {
            if i == j || other.is_real {
                continue;
            }
            if mre.intersects(&other.re_enclosure(prec))
                && mim.intersects(&other.im_enclosure(prec))
            {
                found = true;
                break;
            }
        }
        if !found {
            consistent = false;
        }
    }
    Ok(SecondConjugateAngle {
        angle: cert.second_angle.with_precision(prec),
        real_second_conjugate: real_second,
        conjugate_pairing_consistent: consistent,
    })
}

/// Every applicable limsup/liminf bound for the pair (alpha, zeta).
///
/// alpha must be rational or an InField element over zeta; zeta may be a
/// rational, a radical, or a polynomial root. Polynomial inputs are treated
/// as minimal polynomials of their selected root (heights and degrees are
/// read off the given polynomial).
pub fn bound_ladder(
    alpha: &SymbolicReal,
    zeta: &SymbolicReal,
    policy: &PrecisionPolicy,
) -> Result<BoundReport> {
    let prec = 128u32;
    let mut report = BoundReport::default();

    // radical-shaped zeta: the L-th-root bounds apply
    if let Some((p, q, _l)) = zeta.radical_form() {
        if q.is_one() {
            report.push(BoundEntry {
                name: "restricted_sup_radical",
                kind: BoundKind::SigmaRestrictedSupUpper,
                value: BoundValue::Finite(Enclosure::from_i64(1, prec)),
                applicable: true,
                source: "restricted limsup <= 1 for integer-power zeta",
            });
            report.push(BoundEntry {
                name: "sup_unbounded_for_compatible_alpha",
                kind: BoundKind::SigmaSupUpper,
                value: BoundValue::Infinite,
                applicable: true,
                source: "exact hits give unbounded sigma for compatible alpha",
            });
        } else if p > q {
            let lp = elementary::ln(&Enclosure::from_bigint(&p, prec), prec)?;
            let lq = elementary::ln(&Enclosure::from_bigint(&q, prec), prec)?;
            let v = lp.add(&lq).div(&lp.sub(&lq))?;
            report.push(BoundEntry {
                name: "rational_power_ratio",
                kind: BoundKind::SigmaSupUpper,
                value: BoundValue::Finite(v),
                applicable: true,
                source: "limsup bound (log p + log q)/(log p - log q) for zeta^L = p/q",
            });
            report.push(BoundEntry {
                name: "restricted_sup_radical",
                kind: BoundKind::SigmaRestrictedSupUpper,
                value: BoundValue::Finite(Enclosure::from_i64(1, prec)),
                applicable: true,
                source: "restricted limsup <= 1 for rational-power zeta",
            });
        }
        return Ok(report);
    }

    let SymbolicReal::PolyRoot { poly, .. } = zeta else {
        return Err(Error::Unsupported(
            "bound ladder needs zeta as a radical, rational, or polynomial root".into(),
        ));
    };
    let k = poly.degree();
    let height = poly.height();
    let zeta_val = zeta.eval(prec, policy)?;
    let ln_zeta = elementary::ln(&zeta_val, prec)?;
    let zeta_is_integer = poly.is_monic();

    // alpha shape: extension degree t and algebraic-integrality
    let field = NumberField::from_int_poly(poly);
    let (t, alpha_is_algebraic_integer) = match alpha {
        SymbolicReal::Rational { num, den } => {
            let r = BigRational::new(num.clone(), den.clone());
            (1usize, r.is_integer())
        }
        SymbolicReal::InField { base, numer, den, shift } if base.as_ref() == zeta => {
            let g = field.from_int_coeffs(numer);
            let xs = field.pow_x(*shift)?;
            let prod = field.mul(&g, &xs);
            let reduced = field.scale(&prod, &BigRational::new(BigInt::one(), den.clone()));
            // the element degree is invariant under clearing denominators
            let mut denlcm = BigInt::one();
            for c in reduced.iter() {
                denlcm = num_integer::lcm(denlcm, c.denom().clone());
            }
            let int_vec: Vec<BigInt> =
                reduced.iter().map(|c| c.numer() * (&denlcm / c.denom())).collect();
            let (t, _) = polyalg::element_degree(poly, &int_vec)?;
            let is_integer = zeta_is_integer && field.has_integer_coeffs(&reduced);
            (t, is_integer)
        }
        _ => {
            return Err(Error::Unsupported(
                "bound ladder supports alpha rational or InField over zeta".into(),
            ))
        }
    };

    let mut n_in_disk = k.saturating_sub(1);
    if zeta_is_integer {
        if let PisotOutcome::Certified(cert) = certify_pisot(poly, policy)? {
            let kk = cert.degree as i64;
            if kk >= 2 {
                let deg = degree_bounds(&cert, prec)?;
                for e in deg.entries {
                    report.push(e);
                }
            }
            report.push(BoundEntry {
                name: "pisot_degree_product",
                kind: BoundKind::SigmaSupUpper,
                value: BoundValue::Finite(Enclosure::from_i64(
                    (t as i64) * (kk - 1).max(0),
                    prec,
                )),
                applicable: true,
                source: "limsup bound t(k-1) for Pisot zeta and degree-t alpha",
            });
        }
        // conjugates inside the closed unit disk; undecided comparisons fail
        // over to the coarser count k-1
        let spec = polyalg::isolate_roots_rel(poly, 128, policy)?;
        let mut count = 0usize;
        let mut decided = true;
        for r in &spec.roots {
            let m = r.modulus(prec);
            if m.certainly_lt(&Dyadic::one()) {
                count += 1;
            } else if !m.certainly_gt(&Dyadic::one()) {
                decided = false;
            }
        }
        n_in_disk = if decided { count } else { k.saturating_sub(1) };
    }

    let half_ln_k = elementary::ln(&Enclosure::from_i64(k as i64, prec), prec)?
        .mul(&Enclosure::exact(Dyadic::new(BigInt::one(), -1), prec));
    let ln_h = elementary::ln(&Enclosure::from_bigint(&height, prec), prec)?;
    let hk_term = half_ln_k.add(&ln_h); // (1/2) log k + log H

    if zeta_is_integer && alpha_is_algebraic_integer {
        // s(N(zeta) + ((1/2) log k + log H)/log zeta) with s = 1 here
        let v = Enclosure::from_i64(n_in_disk as i64, prec).add(&hk_term.div(&ln_zeta)?);
        report.push(BoundEntry {
            name: "unit_disk_count_height",
            kind: BoundKind::SigmaSupUpper,
            value: BoundValue::Finite(v),
            applicable: true,
            source: "limsup bound s(N + ((1/2) log k + log H)/log zeta), s = 1",
        });
        let v2 = Enclosure::from_i64((k - 1) as i64, prec)
            .add(&hk_term.div(&ln_zeta)?)
            .mul(&Enclosure::from_i64(t as i64, prec));
        report.push(BoundEntry {
            name: "height_degree",
            kind: BoundKind::SigmaSupUpper,
            value: BoundValue::Finite(v2),
            applicable: true,
            source: "limsup bound t(k-1 + ((1/2) log k + log H)/log zeta)",
        });
        let two_pow = Enclosure::from_bigint(&(BigInt::one() << (k - 1)), prec);
        let sqrt_k = Enclosure::from_i64(k as i64, prec).sqrt()?;
        let h_enc = Enclosure::from_bigint(&height, prec);
        let gap = Enclosure::from_i64(1, prec)
            .add(&Enclosure::from_i64(1, prec).div(&two_pow.mul(&sqrt_k).mul(&h_enc))?);
        let ln_gap = elementary::ln(&gap, prec)?;
        report.push(BoundEntry {
            name: "log_zeta_lower",
            kind: BoundKind::LogZetaLower,
            value: BoundValue::Finite(ln_gap.clone()),
            applicable: true,
            source: "log zeta >= log(1 + 1/(2^(k-1) sqrt(k) H))",
        });
        let vq = Enclosure::from_i64((k - 1) as i64, prec)
            .add(&hk_term.div(&ln_gap)?)
            .mul(&Enclosure::from_i64(t as i64, prec));
        report.push(BoundEntry {
            name: "uniform_height_degree",
            kind: BoundKind::SigmaSupUpper,
            value: BoundValue::Finite(vq),
            applicable: true,
            source: "uniform limsup bound in (k, t, H) only",
        });
        let vn = Enclosure::from_i64((k - 1) as i64, prec)
            .add(
                &two_pow
                    .mul(&Enclosure::from_i64(2, prec))
                    .mul(&sqrt_k)
                    .mul(&h_enc)
                    .mul(&hk_term),
            )
            .mul(&Enclosure::from_i64(t as i64, prec));
        report.push(BoundEntry {
            name: "linearized_uniform",
            kind: BoundKind::SigmaSupUpper,
            value: BoundValue::Finite(vn),
            applicable: true,
            source: "linearized uniform limsup bound t(k-1 + 2^k sqrt(k) H ((1/2) log k + log H))",
        });
    }

    // general-algebraic rescaling bound: the route for non-integer zeta;
    // degenerate for height 1, where the integer bounds already apply
    if !zeta_is_integer {
        let h_f = height.to_f64().unwrap_or(f64::MAX);
        if h_f >= 2.0 {
            let two_pow = Enclosure::from_bigint(&(BigInt::one() << k), prec);
            let sqrt_k = Enclosure::from_i64(k as i64, prec).sqrt()?;
            let h_enc = Enclosure::from_bigint(&height, prec);
            let ln_h2 = elementary::ln(&h_enc, prec)?;
            let ln2 = elementary::ln2(prec);
            let lead = two_pow.mul(&sqrt_k).mul(&h_enc).mul(&ln_h2);
            let inner =
                Enclosure::from_i64(2 * k as i64 - 1, prec).add(&hk_term.div(&ln2)?);
            let v = lead
                .mul(&Enclosure::from_i64(t as i64, prec))
                .mul(&inner)
                .add(&lead)
                .sub(&Enclosure::from_i64(1, prec));
            report.push(BoundEntry {
                name: "general_algebraic",
                kind: BoundKind::SigmaSupUpper,
                value: BoundValue::Finite(v),
                applicable: true,
                source: "limsup bound for general algebraic zeta via integer rescaling",
            });
        }
    }
    Ok(report)
}

/// JSON-facing serialization of a bound report.
#[derive(Serialize)]
pub struct BoundEntryJson {
    pub name: String,
    pub kind: BoundKind,
    pub lo: Option<String>,
    pub hi: Option<String>,
    pub infinite: bool,
    pub applicable: bool,
    pub source: String,
}

pub fn bound_report_json(report: &BoundReport) -> Vec<BoundEntryJson> {
    report
        .entries
        .iter()
        .map(|e| match &e.value {
            BoundValue::Finite(v) => BoundEntryJson {
                name: e.name.to_string(),
                kind: e.kind,
                lo: Some(Enclosure::exact(v.lo(), 64).to_decimal_certified(20).0),
                hi: Some(Enclosure::exact(v.hi(), 64).to_decimal_certified(20).0),
                infinite: false,
                applicable: e.applicable,
                source: e.source.to_string(),
            },
            BoundValue::Infinite => BoundEntryJson {
                name: e.name.to_string(),
                kind: e.kind,
                lo: None,
                hi: None,
                infinite: true,
                applicable: e.applicable,
                source: e.source.to_string(),
            },
        })
        .collect()
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub poly: String,
    pub pisot: bool,
    pub reason: Option<String>,
    pub degree: Option<usize>,
    pub unit: Option<bool>,
    pub zeta_lo: Option<String>,
    pub zeta_hi: Option<String>,
    pub conjugate_max_lo: Option<String>,
    pub conjugate_max_hi: Option<String>,
    pub second_angle: Option<String>,
    pub second_is_real: Option<bool>,
    pub roots: Option<Vec<polyalg::RootDiskJson>>,
}

pub fn certificate_json(poly: &IntPoly, outcome: &PisotOutcome) -> CertificateJson {
    match outcome {
        PisotOutcome::Certified(c) => CertificateJson {
            poly: poly.to_ascii(),
            pisot: true,
            reason: None,
            degree: Some(c.degree),
            unit: Some(c.is_unit),
            zeta_lo: Some(Enclosure::exact(c.pisot_root.lo(), 64).to_decimal_certified(30).0),
            zeta_hi: Some(Enclosure::exact(c.pisot_root.hi(), 64).to_decimal_certified(30).0),
            conjugate_max_lo: Some(
                Enclosure::exact(c.conjugate_max.lo(), 64).to_decimal_certified(30).0,
            ),
            conjugate_max_hi: Some(
                Enclosure::exact(c.conjugate_max.hi(), 64).to_decimal_certified(30).0,
            ),
            second_angle: Some(c.second_angle.to_decimal_certified(30).0),
            second_is_real: c.second_is_real,
            roots: Some(c.spectrum.to_json(96)),
        },
        PisotOutcome::NotPisot(r) => CertificateJson {
            poly: poly.to_ascii(),
            pisot: false,
            reason: Some(r.to_string()),
            degree: None,
            unit: None,
            zeta_lo: None,
            zeta_hi: None,
            conjugate_max_lo: None,
            conjugate_max_hi: None,
            second_angle: None,
            second_is_real: None,
            roots: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactreal::test_support::decimal_enclosure;

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    fn certify(s: &str) -> PisotCertificate {
        match certify_pisot(&IntPoly::parse(s).unwrap(), &policy()).unwrap() {
            PisotOutcome::Certified(c) => *c,
            PisotOutcome::NotPisot(r) => panic!("{} unexpectedly not Pisot: {}", s, r),
        }
    }

    #[test]
    fn golden_ratio_certificate() {
        let c = certify("x^2-x-1");
        assert_eq!(c.degree, 2);
        assert!(c.is_unit);
        // f = phi - 1
        let f = decimal_enclosure(
            "0.61803398874989484820458683436563811772030917980576286213545",
            200,
        );
        assert!(c.conjugate_max.intersects(&f));
        assert_eq!(c.second_is_real, Some(true));
        assert!(c.second_angle.intersects(&elementary::pi(96)));
    }

    #[test]
    fn plastic_certificate() {
        let c = certify("x^3-x-1");
        assert_eq!(c.degree, 3);
        assert!(c.is_unit);
        let f = decimal_enclosure(
            "0.868836961832709301806569964191097222477465662014499316926087",
            200,
        );
        assert!(c.conjugate_max.intersects(&f));
        assert_eq!(c.second_is_real, Some(false));
        let psi2 = decimal_enclosure(
            "2.43773493228831672097088255743731736169315702511883847009813",
            200,
        );
        assert!(c.second_angle.intersects(&psi2));
    }

    #[test]
    fn non_pisot_verdicts() {
        let p = policy();
        match certify_pisot(&IntPoly::parse("x^2-4").unwrap(), &p).unwrap() {
            PisotOutcome::NotPisot(NotPisotReason::MultipleRootsOutsideUnitCircle) => {}
            other => panic!("unexpected: {:?}", other),
        }
        match certify_pisot(&IntPoly::parse("x^2-1").unwrap(), &p).unwrap() {
            PisotOutcome::NotPisot(NotPisotReason::RootOnUnitCircle) => {}
            other => panic!("unexpected: {:?}", other),
        }
        match certify_pisot(&IntPoly::parse("2*x^2-x-1").unwrap(), &p).unwrap() {
            PisotOutcome::NotPisot(NotPisotReason::NotMonic) => {}
            other => panic!("unexpected: {:?}", other),
        }
        match certify_pisot(&IntPoly::parse("x^2+3*x+1").unwrap(), &p).unwrap() {
            PisotOutcome::NotPisot(NotPisotReason::DominantRootNotRealAbove1) => {}
            other => panic!("unexpected: {:?}", other),
        }
        match certify_pisot(&IntPoly::parse("x^2-x").unwrap(), &p).unwrap() {
            PisotOutcome::NotPisot(NotPisotReason::ZeroConstantCoefficient) => {}
            other => panic!("unexpected: {:?}", other),
        }
    }

    #[test]
    fn family_members_certify() {
        let p = policy();
        let q = family_q(3, 3, 1).unwrap();
        assert_eq!(q, IntPoly::parse("x^3-3*x^2+1").unwrap());
        let c = match certify_pisot(&q, &p).unwrap() {
            PisotOutcome::Certified(c) => c,
            _ => panic!("family member not certified"),
        };
        assert!(c.is_unit);
        let z = decimal_enclosure(
            "2.87938524157181676810821855464946293987241626852892926618057",
            200,
        );
        assert!(c.pisot_root.intersects(&z));
        let q2 = family_q(2, 3, 1).unwrap();
        let c2 = match certify_pisot(&q2, &p).unwrap() {
            PisotOutcome::Certified(c) => c,
            _ => panic!(),
        };
        let z2 = decimal_enclosure(
            "2.61803398874989484820458683436563811772030917980576286213545",
            200,
        );
        assert!(c2.pisot_root.intersects(&z2));
        assert!(c2.is_unit);
        let q3 = family_q(4, 5, 3).unwrap();
        let c3 = match certify_pisot(&q3, &p).unwrap() {
            PisotOutcome::Certified(c) => c,
            _ => panic!(),
        };
        assert!(!c3.is_unit);
        assert!(family_q(1, 3, 1).is_err());
        assert!(family_q(3, 2, 1).is_err());
        assert!(family_q(3, 4, 3).is_err());
    }

    #[test]
    fn irreducibility_criterion() {
        let p = policy();
        let fib = IntPoly::parse("x^2-x-1").unwrap();
        let spec = polyalg::isolate_roots_rel(&fib, 96, &p).unwrap();
        assert!(irreducible_by_pisot_criterion(&spec, &fib).unwrap());
        let cubic = IntPoly::parse("x^3-3*x^2+1").unwrap();
        let spec3 = polyalg::isolate_roots_rel(&cubic, 96, &p).unwrap();
        assert!(irreducible_by_pisot_criterion(&spec3, &cubic).unwrap());
        // (x-1)(x-2): root on the circle, criterion inapplicable
        let red = IntPoly::parse("x^2-3*x+2").unwrap();
        let specr = polyalg::isolate_roots_rel(&red, 96, &p).unwrap();
        assert!(!irreducible_by_pisot_criterion(&specr, &red).unwrap());
    }

    #[test]
    fn degree_bound_values() {
        let prec = 128;
        let c = certify("x^2-x-1");
        let r = degree_bounds(&c, prec).unwrap();
        let one = Enclosure::from_i64(1, prec);
        for name in ["inv_degree_liminf", "degree_limsup", "conjugate_modulus_liminf"] {
            let e = r.get(name).unwrap();
            match &e.value {
                BoundValue::Finite(v) => assert!(v.intersects(&one), "{} not 1 for phi", name),
                _ => panic!(),
            }
        }
        let c = certify("x^3-x-1");
        let r = degree_bounds(&c, prec).unwrap();
        let half = Enclosure::from_ratio(&1.into(), &2.into(), prec);
        match &r.get("inv_degree_liminf").unwrap().value {
            BoundValue::Finite(v) => assert!(v.intersects(&half)),
            _ => panic!(),
        }
        match &r.get("conjugate_modulus_liminf").unwrap().value {
            BoundValue::Finite(v) => assert!(v.intersects(&half)),
            _ => panic!(),
        }
        match &r.get("degree_limsup").unwrap().value {
            BoundValue::Finite(v) => assert!(v.contains_dyadic(&Dyadic::from_i64(2))),
            _ => panic!(),
        }
    }

    #[test]
    fn unit_relation_facts() {
        let prec = 128;
        let c = certify("x^2-3*x+1");
        let u = unit_relations(&c, prec).unwrap();
        assert_eq!(u.quadratic_sigma_is_one, Some(true));
        assert!(u.quadratic_sigma.unwrap().contains_dyadic(&Dyadic::one()));
        let c4 = certify("x^4-5*x^3+3");
        let u4 = unit_relations(&c4, prec).unwrap();
        assert!(u4.strict_gap_at_degree_4plus);
        assert_eq!(u4.second_is_real, Some(true));
    }

    #[test]
    fn angle_report_cases() {
        let prec = 128;
        let c = certify("x^3-x-1");
        let a = second_conjugate_angle(&c, prec).unwrap();
        assert!(!a.real_second_conjugate);
        assert!(a.conjugate_pairing_consistent);
        let c2 = certify("x^3-3*x^2+1");
        let a2 = second_conjugate_angle(&c2, prec).unwrap();
        assert!(a2.real_second_conjugate);
        assert!(a2.angle.contains_zero());
        // x^4-x^3-1: Pisot with complex maximal conjugate pair
        let c3 = certify("x^4-x^3-1");
        let a3 = second_conjugate_angle(&c3, prec).unwrap();
        assert!(!a3.real_second_conjugate);
        assert!(a3.conjugate_pairing_consistent);
    }

    #[test]
    fn uniform_bound_for_phi() {
        // t=1, k=2, H=1: 1 + (0.5 log 2)/log(1 + 1/(2 sqrt2)) = 2.14481...
        let phi = SymbolicReal::parse("polyroot:x^2-x-1:max").unwrap();
        let one = SymbolicReal::one();
        let r = bound_ladder(&one, &phi, &policy()).unwrap();
        let e = r.get("uniform_height_degree").unwrap();
        let expect = decimal_enclosure(
            "2.14481498466762538262594966809554048117242655487465863787651",
            200,
        );
        match &e.value {
            BoundValue::Finite(v) => assert!(v.intersects(&expect)),
            _ => panic!(),
        }
        let q = r.get("log_zeta_lower").unwrap();
        let expect_gap = decimal_enclosure(
            "0.30273327561360800265650081687389165324289410900483228373003",
            200,
        );
        match &q.value {
            BoundValue::Finite(v) => assert!(v.intersects(&expect_gap)),
            _ => panic!(),
        }
        // log phi = 0.4812... exceeds the lower bound
        let lnphi = decimal_enclosure(
            "0.481211825059603447497758913424368423135184334385660519661018",
            200,
        );
        match &q.value {
            BoundValue::Finite(v) => {
                assert!(v.hi().cmp(&lnphi.lo()) == std::cmp::Ordering::Less)
            }
            _ => panic!(),
        }
    }

    #[test]
    fn rational_power_bound_for_three_halves() {
        // zeta = 3/2: (log 6)/(log 1.5) = 4.41902258...
        let z = SymbolicReal::rational(3, 2).unwrap();
        let one = SymbolicReal::one();
        let r = bound_ladder(&one, &z, &policy()).unwrap();
        let e = r.get("rational_power_ratio").unwrap();
        let expect = decimal_enclosure(
            "4.41902258270290955395238052434802828123000747047221444614891",
            200,
        );
        match &e.value {
            BoundValue::Finite(v) => assert!(v.intersects(&expect)),
            _ => panic!(),
        }
        let restricted = r.get("restricted_sup_radical").unwrap();
        assert_eq!(restricted.kind, BoundKind::SigmaRestrictedSupUpper);
    }

    #[test]
    fn integer_radical_bound_entries() {
        let z = SymbolicReal::radical(2, 1, 3).unwrap();
        let r = bound_ladder(&SymbolicReal::one(), &z, &policy()).unwrap();
        assert!(r.get("restricted_sup_radical").is_some());
        assert!(matches!(
            r.get("sup_unbounded_for_compatible_alpha").unwrap().value,
            BoundValue::Infinite
        ));
    }

    #[test]
    fn infield_alpha_degrees() {
        // alpha = sqrt5 = 2 phi - 1 over zeta = phi: t = 2, bound t(k-1) = 2
        let phi = SymbolicReal::parse("polyroot:x^2-x-1:max").unwrap();
        let a = SymbolicReal::in_field(
            phi.clone(),
            vec![BigInt::from(-1), BigInt::from(2)],
            BigInt::one(),
            0,
        )
        .unwrap();
        let r = bound_ladder(&a, &phi, &policy()).unwrap();
        let e = r.get("pisot_degree_product").unwrap();
        match &e.value {
            BoundValue::Finite(v) => assert!(v.contains_dyadic(&Dyadic::from_i64(2))),
            _ => panic!(),
        }
    }
}
