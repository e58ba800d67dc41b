//! Exact, tagged descriptions of the admissible real inputs.
//!
//! Inputs are symbolic only: rationals, radicals (p/q)^(1/L), selected roots
//! of integer polynomials, and field elements (A/B)*g(zeta)*zeta^shift over a
//! polynomial or radical base. Raw decimals are rejected by construction, so
//! exactness questions (is alpha*zeta^n an integer?) stay decidable.

use super::dyadic::Dyadic;
use super::enclosure::Enclosure;
use super::PrecisionPolicy;
use crate::error::{Error, Result};
use crate::numberfield::{FieldElem, NumberField};
use crate::polyalg::{self, IntPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSelector {
    /// The largest real root strictly above 1.
    MaxRealAbove1,
    /// Index in the canonical spectrum order (modulus desc, angle class asc).
    /// The indexed root must be certified real.
    Index(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolicReal {
    Rational {
        num: BigInt,
        den: BigInt,
    },
    /// (num/den)^(1/index) with num, den positive.
    Radical {
        num: BigInt,
        den: BigInt,
        index: u32,
    },
    PolyRoot {
        poly: IntPoly,
        selector: RootSelector,
    },
    /// (1/den) * numer(base) * base^shift.
    InField {
        base: Box<SymbolicReal>,
        numer: Vec<BigInt>,
        den: BigInt,
        shift: i64,
    },
}

impl SymbolicReal {
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        Self::rational_big(BigInt::from(num), BigInt::from(den))
    }

    pub fn rational_big(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidParameter("rational with zero denominator".into()));
        }
        let r = BigRational::new(num, den);
        Ok(SymbolicReal::Rational { num: r.numer().clone(), den: r.denom().clone() })
    }

    pub fn from_big_rational(r: &BigRational) -> Self {
        SymbolicReal::Rational { num: r.numer().clone(), den: r.denom().clone() }
    }

    pub fn one() -> Self {
        SymbolicReal::Rational { num: BigInt::one(), den: BigInt::one() }
    }

    pub fn radical(num: i64, den: i64, index: u32) -> Result<Self> {
        Self::radical_big(BigInt::from(num), BigInt::from(den), index)
    }

    pub fn radical_big(num: BigInt, den: BigInt, index: u32) -> Result<Self> {
        if !num.is_positive() || !den.is_positive() {
            return Err(Error::InvalidParameter(
                "radical requires positive numerator and denominator".into(),
            ));
        }
        if index == 0 {
            return Err(Error::InvalidParameter("radical index must be positive".into()));
        }
        let g = num.gcd(&den);
        if index == 1 {
            return Ok(SymbolicReal::Rational { num: num / &g, den: den / &g });
        }
        Ok(SymbolicReal::Radical { num: num / &g, den: den / &g, index })
    }

    pub fn poly_root(poly: IntPoly, selector: RootSelector) -> Self {
        SymbolicReal::PolyRoot { poly, selector }
    }

    pub fn in_field(base: SymbolicReal, numer: Vec<BigInt>, den: BigInt, shift: i64) -> Result<Self> {
        match base {
            SymbolicReal::PolyRoot { .. } | SymbolicReal::Radical { .. } => {}
            _ => {
                return Err(Error::InvalidParameter(
                    "InField base must be a polynomial root or radical".into(),
                ))
            }
        }
        if !den.is_positive() {
            return Err(Error::InvalidParameter("InField denominator must be positive".into()));
        }
        Ok(SymbolicReal::InField { base: Box::new(base), numer, den, shift })
    }

    /// Exact rational value, when the symbol denotes one.
    pub fn rational_value(&self) -> Option<BigRational> {
        match self {
            SymbolicReal::Rational { num, den } => Some(BigRational::new(num.clone(), den.clone())),
            SymbolicReal::Radical { num, den, index } => {
                let (p, q, l) = minimal_radical(num, den, *index);
                if l == 1 {
                    Some(BigRational::new(p, q))
                } else {
                    None
                }
            }
            SymbolicReal::PolyRoot { poly, selector } => rational_root_value(poly, selector),
            SymbolicReal::InField { base, numer, den, shift } => {
                let field = base.field()?;
                let elem = infield_reduce(&field, numer, den, *shift).ok()?;
                field.as_rational(&elem)
            }
        }
    }

    /// Minimal radical form (p, q, L) with value (p/q)^(1/L), L minimal,
    /// gcd(p,q)=1. L = 1 means the value is rational p/q. None when the value
    /// is not (detectably) of that form.
    pub fn radical_form(&self) -> Option<(BigInt, BigInt, u32)> {
        match self {
            SymbolicReal::Rational { num, den } => {
                if num.is_positive() {
                    Some((num.clone(), den.clone(), 1))
                } else {
                    None
                }
            }
            SymbolicReal::Radical { num, den, index } => Some(minimal_radical(num, den, *index)),
            SymbolicReal::PolyRoot { poly, selector } => {
                if let Some(r) = rational_root_value(poly, selector) {
                    if r.is_positive() {
                        return Some((r.numer().clone(), r.denom().clone(), 1));
                    }
                    return None;
                }
                if !poly.is_monic() {
                    return None;
                }
                // zeta^L = c detection for integer c: candidates from the
                // enclosure of zeta^L; verified exactly via gcd(P, x^L - c).
                let policy = PrecisionPolicy::default();
                let v = self.eval(96, &policy).ok()?;
                if !v.lo().is_positive() {
                    return None;
                }
                for l in 1..=poly.degree() as u32 {
                    let pw = v.powi(l as i64).ok()?;
                    let lo_int = pw.lo().floor_bigint();
                    let hi_int = pw.hi().ceil_bigint();
                    let span = &hi_int - &lo_int;
                    if span > BigInt::from(3) {
                        continue; // enclosure too wide to suggest a candidate
                    }
                    let mut cand = lo_int;
                    while cand <= hi_int {
                        if cand.is_positive()
                            && pw.contains_bigint(&cand)
                            && self.power_equals(poly, l, &cand)
                        {
                            let (p, q, lmin) = minimal_radical(&cand, &BigInt::one(), l);
                            return Some((p, q, lmin));
                        }
                        cand += 1;
                    }
                }
                None
            }
            SymbolicReal::InField { .. } => {
                let r = self.rational_value()?;
                if r.is_positive() {
                    Some((r.numer().clone(), r.denom().clone(), 1))
                } else {
                    None
                }
            }
        }
    }

    /// Exact check that the selected root satisfies zeta^l = c, via the gcd
    /// of P with x^l - c evaluated on a shrinking disk.
    fn power_equals(&self, poly: &IntPoly, l: u32, c: &BigInt) -> bool {
        let mut xl = vec![BigInt::zero(); l as usize + 1];
        xl[0] = -c.clone();
        xl[l as usize] = BigInt::one();
        let g = polyalg::poly_gcd(poly.coeffs(), &xl);
        if g.len() <= 1 {
            return false;
        }
        // the selected root is a root of g iff the shrinking enclosure keeps
        // g's interval evaluation around zero while the cofactor's does not
        let gp = match IntPoly::new(g) {
            Ok(p) => p,
            Err(_) => return false,
        };
        let policy = PrecisionPolicy::default();
        for prec in [96u32, 192, 384, 768] {
            let v = match self.eval(prec, &policy) {
                Ok(v) => v,
                Err(_) => return false,
            };
            let gv = gp.eval_enclosure(&v);
            if !gv.contains_zero() {
                return false;
            }
            // cofactor check: P/g must not vanish on the disk
            let (q, _) = polyalg::poly_pseudo_div(poly.coeffs(), gp.coeffs());
            if let Ok(qp) = IntPoly::new(q.clone()) {
                let qv = qp.eval_enclosure(&v);
                if !qv.contains_zero() {
                    return true;
                }
            } else {
                // cofactor is constant: g spans all roots
                return true;
            }
        }
        false
    }

    fn field(&self) -> Option<NumberField> {
        match self {
            SymbolicReal::PolyRoot { poly, .. } => Some(NumberField::from_int_poly(poly)),
            SymbolicReal::Radical { num, den, index } => {
                Some(NumberField::radical(num, den, *index))
            }
            _ => None,
        }
    }

    /// Certified evaluation with radius <= 2^(1-prec)*|value| for nonzero
    /// values (precision escalates internally for ill-conditioned field
    /// elements; exact zeroes come back as tiny straddling intervals).
    pub fn eval(&self, prec: u32, policy: &PrecisionPolicy) -> Result<Enclosure> {
        match self {
            SymbolicReal::Rational { num, den } => Ok(Enclosure::from_ratio(num, den, prec)),
            SymbolicReal::Radical { num, den, index } => {
                let base = Enclosure::from_ratio(num, den, prec + 16);
                Ok(base.nth_root(*index)?.with_precision(prec))
            }
            SymbolicReal::PolyRoot { poly, selector } => {
                select_root(poly, selector, prec, policy)
            }
            SymbolicReal::InField { base, numer, den, shift } => {
                let mut w = prec + 64;
                loop {
                    let b = base.eval(w, policy)?;
                    let mut acc = Enclosure::from_i64(0, w);
                    for c in numer.iter().rev() {
                        acc = acc.mul(&b).add(&Enclosure::from_bigint(c, w));
                    }
                    if *shift != 0 {
                        acc = acc.mul(&b.powi(*shift)?);
                    }
                    let v = acc.div(&Enclosure::from_bigint(den, w))?;
                    match v.rel_width_log2() {
                        Some(r) if r <= -(prec as i64) => return Ok(v.with_precision(prec)),
                        _ => {}
                    }
                    if w >= policy.max_bits {
                        // exact zero or cap: return the absolute enclosure
                        return Ok(v.with_precision(prec));
                    }
                    w = (w * 2).min(policy.max_bits);
                }
            }
        }
    }

    /// The symbol multiplied by a positive integer, staying symbolic.
    pub fn scale_by_int(&self, m: &BigInt) -> Result<SymbolicReal> {
        if !m.is_positive() {
            return Err(Error::InvalidParameter("scale factor must be positive".into()));
        }
        match self {
            SymbolicReal::Rational { num, den } => {
                SymbolicReal::rational_big(num * m, den.clone())
            }
            SymbolicReal::Radical { num, den, index } => {
                // m * (p/q)^(1/L) = (m^L p / q)^(1/L)
                let ml = m.pow(*index);
                SymbolicReal::radical_big(num * ml, den.clone(), *index)
            }
            SymbolicReal::PolyRoot { poly, selector } => {
                let scaled = poly.scale_roots(m);
                match selector {
                    RootSelector::MaxRealAbove1 => {
                        Ok(SymbolicReal::poly_root(scaled, RootSelector::MaxRealAbove1))
                    }
                    RootSelector::Index(i) => {
                        // scaling by a positive integer preserves the canonical order
                        Ok(SymbolicReal::poly_root(scaled, RootSelector::Index(*i)))
                    }
                }
            }
            SymbolicReal::InField { base, numer, den, shift } => {
                let scaled: Vec<BigInt> = numer.iter().map(|c| c * m).collect();
                SymbolicReal::in_field((**base).clone(), scaled, den.clone(), *shift)
            }
        }
    }

    /// zeta^k as a symbolic value (for the power identity). Supported for
    /// rationals, radicals, and monic polynomial roots selected as the
    /// dominant real root.
    pub fn pow_symbolic(&self, k: u32, policy: &PrecisionPolicy) -> Result<SymbolicReal> {
        if k == 0 {
            return SymbolicReal::rational(1, 1);
        }
        match self {
            SymbolicReal::Rational { num, den } => {
                SymbolicReal::rational_big(num.pow(k), den.pow(k))
            }
            SymbolicReal::Radical { num, den, index } => {
                let g = (k as u64).gcd(&(*index as u64)) as u32;
                let e = k / g;
                SymbolicReal::radical_big(num.pow(e), den.pow(e), index / g)
            }
            SymbolicReal::PolyRoot { poly, .. } => {
                if !poly.is_monic() {
                    return Err(Error::Unsupported(
                        "symbolic powers need a monic polynomial".into(),
                    ));
                }
                let pk = polyalg::min_poly_of_power(poly, k as usize)?;
                if pk.degree() == 1 {
                    // power collapsed to a rational
                    let r = BigRational::new(-pk.constant().clone(), pk.leading().clone());
                    return Ok(SymbolicReal::from_big_rational(&r));
                }
                // locate our value among the new roots by enclosure matching
                let value = self
                    .eval(128, policy)?
                    .powi(k as i64)?;
                let spec = polyalg::isolate_roots_rel(&pk, 140, policy)?;
                let mut hits = Vec::new();
                for (i, root) in spec.roots.iter().enumerate() {
                    if root.is_real && root.re_enclosure(160).intersects(&value) {
                        hits.push(i);
                    }
                }
                if hits.len() == 1 {
                    return Ok(SymbolicReal::poly_root(pk, RootSelector::Index(hits[0])));
                }
                Err(Error::Undecided(format!(
                    "could not uniquely match zeta^{} among roots of {}",
                    k, pk
                )))
            }
            SymbolicReal::InField { .. } => {
                Err(Error::Unsupported("symbolic powers of InField values".into()))
            }
        }
    }

    /// Grammar: `rat:p/q`, `radical:p/q:L`, `polyroot:<poly>:<max|idxN>`,
    /// `infield:<base>:<numer-poly>:<denom>:<shift>`.
    pub fn parse(s: &str) -> Result<SymbolicReal> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("rat:") {
            let (n, d) = parse_fraction(rest)?;
            return SymbolicReal::rational_big(n, d);
        }
        if let Some(rest) = s.strip_prefix("radical:") {
            let mut parts = rest.rsplitn(2, ':');
            let l_str = parts.next().ok_or_else(|| Error::Parse("radical needs index".into()))?;
            let frac = parts.next().ok_or_else(|| Error::Parse("radical needs p/q".into()))?;
            let l: u32 = l_str
                .parse()
                .map_err(|e| Error::Parse(format!("bad radical index `{}`: {}", l_str, e)))?;
            let (n, d) = parse_fraction(frac)?;
            return SymbolicReal::radical_big(n, d, l);
        }
        if let Some(rest) = s.strip_prefix("polyroot:") {
            let mut parts = rest.rsplitn(2, ':');
            let sel_str = parts.next().ok_or_else(|| Error::Parse("polyroot needs selector".into()))?;
            let poly_str = parts.next().ok_or_else(|| Error::Parse("polyroot needs polynomial".into()))?;
            let poly = IntPoly::parse(poly_str)?;
            let selector = parse_selector(sel_str)?;
            return Ok(SymbolicReal::poly_root(poly, selector));
        }
        if let Some(rest) = s.strip_prefix("infield:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() < 4 {
                return Err(Error::Parse(
                    "infield needs base:numer:denom:shift".into(),
                ));
            }
            let shift_str = parts[parts.len() - 1];
            let den_str = parts[parts.len() - 2];
            let numer_str = parts[parts.len() - 3];
            let base_str = parts[..parts.len() - 3].join(":");
            let base = SymbolicReal::parse(&base_str)?;
            let numer = polyalg::parse_coeff_vec(numer_str)?;
            let den: BigInt = den_str
                .parse()
                .map_err(|e| Error::Parse(format!("bad denominator `{}`: {}", den_str, e)))?;
            let shift: i64 = shift_str
                .parse()
                .map_err(|e| Error::Parse(format!("bad shift `{}`: {}", shift_str, e)))?;
            return SymbolicReal::in_field(base, numer, den, shift);
        }
        Err(Error::Parse(format!(
            "unknown symbolic form `{}` (expected rat:/radical:/polyroot:/infield:)",
            s
        )))
    }
}

fn parse_fraction(s: &str) -> Result<(BigInt, BigInt)> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|e| Error::Parse(format!("bad numerator: {}", e)))?;
            let d = d.trim().parse().map_err(|e| Error::Parse(format!("bad denominator: {}", e)))?;
            Ok((n, d))
        }
        None => {
            let n = s.trim().parse().map_err(|e| Error::Parse(format!("bad integer: {}", e)))?;
            Ok((n, BigInt::one()))
        }
    }
}

fn parse_selector(s: &str) -> Result<RootSelector> {
    if s == "max" {
        return Ok(RootSelector::MaxRealAbove1);
    }
    if let Some(i) = s.strip_prefix("idx") {
        let i: usize = i.parse().map_err(|e| Error::Parse(format!("bad index: {}", e)))?;
        return Ok(RootSelector::Index(i));
    }
    Err(Error::Parse(format!("unknown selector `{}` (use max or idxN)", s)))
}

impl fmt::Display for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicReal::Rational { num, den } => write!(f, "rat:{}/{}", num, den),
            SymbolicReal::Radical { num, den, index } => {
                write!(f, "radical:{}/{}:{}", num, den, index)
            }
            SymbolicReal::PolyRoot { poly, selector } => {
                let sel = match selector {
                    RootSelector::MaxRealAbove1 => "max".to_string(),
                    RootSelector::Index(i) => format!("idx{}", i),
                };
                write!(f, "polyroot:{}:{}", poly.to_ascii(), sel)
            }
            SymbolicReal::InField { base, numer, den, shift } => {
                let np = poly_ascii_allow_const(numer);
                write!(f, "infield:{}:{}:{}:{}", base, np, den, shift)
            }
        }
    }
}

fn poly_ascii_allow_const(coeffs: &[BigInt]) -> String {
    match IntPoly::new(coeffs.to_vec()) {
        Ok(p) => p.to_ascii(),
        Err(_) => coeffs.first().cloned().unwrap_or_else(BigInt::zero).to_string(),
    }
}

/// Minimal radical form of (p/q)^(1/l): extract the largest divisor g of l
/// with p and q both perfect g-th powers.
pub fn minimal_radical(p: &BigInt, q: &BigInt, l: u32) -> (BigInt, BigInt, u32) {
    let mut best = (p.clone(), q.clone(), l);
    for g in (2..=l).rev() {
        if l % g != 0 {
            continue;
        }
        let pr = num_integer::Roots::nth_root(p, g);
        let qr = num_integer::Roots::nth_root(q, g);
        if num_traits::pow::Pow::pow(&pr, g) == *p && num_traits::pow::Pow::pow(&qr, g) == *q {
            best = (pr, qr, l / g);
            break;
        }
    }
    best
}

/// Exact rational value of a selected polynomial root, when it is rational.
/// Complete: rational roots have denominator dividing the leading
/// coefficient, so the candidate derived from a coarse enclosure is decisive.
fn rational_root_value(poly: &IntPoly, selector: &RootSelector) -> Option<BigRational> {
    let policy = PrecisionPolicy::default();
    let v = select_root(poly, selector, 64, &policy).ok()?;
    let ak = poly.leading();
    let scaled = v.mul(&Enclosure::from_bigint(ak, 64));
    let lo = scaled.lo().floor_bigint();
    let hi = scaled.hi().ceil_bigint();
    let mut cand = lo.clone();
    loop {
        if &cand > &hi {
            return None;
        }
        if poly.eval_rational_num(&cand, ak).is_zero() {
            let r = BigRational::new(cand.clone(), ak.clone());
            let re = Enclosure::from_ratio(r.numer(), r.denom(), 96);
            if re.intersects(&v) {
                return Some(r);
            }
        }
        cand += 1;
    }
}

fn infield_reduce(
    field: &NumberField,
    numer: &[BigInt],
    den: &BigInt,
    shift: i64,
) -> Result<FieldElem> {
    let g = field.from_int_coeffs(numer);
    let xs = field.pow_x(shift)?;
    let prod = field.mul(&g, &xs);
    Ok(field.scale(&prod, &BigRational::new(BigInt::one(), den.clone())))
}

/// Select and evaluate a root of `poly` per the selector, with relative
/// radius ~2^-prec. Escalates isolation precision until the selection is
/// certified.
fn select_root(
    poly: &IntPoly,
    selector: &RootSelector,
    prec: u32,
    policy: &PrecisionPolicy,
) -> Result<Enclosure> {
    let mut rel = prec + 8;
    loop {
        let spec = polyalg::isolate_roots_rel(poly, rel, policy)?;
        match selector {
            RootSelector::Index(i) => {
                let root = spec.roots.get(*i).ok_or_else(|| {
                    Error::SelectorNoMatch(format!("idx{} out of range", i))
                })?;
                if !root.is_real {
                    return Err(Error::SelectorNoMatch(format!(
                        "root idx{} of {} is not real",
                        i, poly
                    )));
                }
                return Ok(root.re_enclosure(prec));
            }
            RootSelector::MaxRealAbove1 => {
                // candidates: certified real roots whose enclosure reaches above 1
                let one = Dyadic::one();
                let mut best: Option<Enclosure> = None;
                let mut ambiguous = false;
                for r in &spec.roots {
                    if !r.is_real {
                        continue;
                    }
                    let e = r.re_enclosure(prec);
                    if e.hi().cmp(&one) != std::cmp::Ordering::Greater {
                        continue;
                    }
                    if !e.certainly_gt(&one) {
                        // the root might be exactly 1 (excluded: strict) or
                        // slightly below; decide exactly when possible
                        if poly.eval_bigint(&BigInt::one()).is_zero() {
                            continue; // root is exactly 1, not "> 1"
                        }
                        ambiguous = true;
                        continue;
                    }
                    best = match best {
                        None => Some(e),
                        Some(b) => {
                            if e.lo().cmp(&b.hi()) == std::cmp::Ordering::Greater {
                                Some(e)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
                if !ambiguous {
                    return best.ok_or_else(|| {
                        Error::SelectorNoMatch(format!("{} has no real root above 1", poly))
                    });
                }
                if rel >= policy.max_bits {
                    return Err(Error::PrecisionCap {
                        cap: policy.max_bits,
                        context: format!("deciding roots of {} against 1", poly),
                    });
                }
                rel = (rel * 2).min(policy.max_bits);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactreal::test_support::decimal_enclosure;

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn parse_roundtrip() {
        for s in [
            "rat:3/2",
            "rat:-7/1",
            "radical:2/1:3",
            "polyroot:x^2-x-1:max",
            "polyroot:x^3-x-1:idx0",
            "infield:polyroot:x^2-x-1:max:x:2:-1",
            "infield:radical:2/1:3:x^2-1:4:0",
        ] {
            let v = SymbolicReal::parse(s).unwrap();
            let round = SymbolicReal::parse(&v.to_string()).unwrap();
            assert_eq!(v, round, "roundtrip failed for {}", s);
        }
        assert!(SymbolicReal::parse("3.14").is_err());
        assert!(SymbolicReal::parse("rat:1/0").is_err());
        assert!(SymbolicReal::parse("radical:-2/1:3").is_err());
    }

    #[test]
    fn eval_rational_exact() {
        let v = SymbolicReal::rational(3, 2).unwrap().eval(64, &policy()).unwrap();
        assert!(v.is_exact());
        assert_eq!(v.center().to_f64(), 1.5);
    }

    #[test]
    fn eval_cube_root_of_two() {
        let v = SymbolicReal::radical(2, 1, 3).unwrap().eval(128, &policy()).unwrap();
        let reference = decimal_enclosure(
            "1.25992104989487316476721060727822835057025146470150798008198",
            200,
        );
        assert!(v.intersects(&reference));
        assert!(v.rel_width_log2().unwrap() <= -120);
    }

    #[test]
    fn eval_golden_ratio_root() {
        let phi = SymbolicReal::parse("polyroot:x^2-x-1:max").unwrap();
        let v = phi.eval(128, &policy()).unwrap();
        let reference = decimal_enclosure(
            "1.61803398874989484820458683436563811772030917980576286213545",
            200,
        );
        assert!(v.intersects(&reference));
    }

    #[test]
    fn eval_infield_value() {
        // (1/2) * phi * phi^(-1) = 1/2
        let phi = SymbolicReal::parse("polyroot:x^2-x-1:max").unwrap();
        let a = SymbolicReal::in_field(phi, vec![BigInt::zero(), BigInt::one()], 2.into(), -1)
            .unwrap();
        let v = a.eval(96, &policy()).unwrap();
        assert!(v.contains_dyadic(&Dyadic::new(1.into(), -1)));
    }

    #[test]
    fn selector_no_real_root_above_one() {
        let p = SymbolicReal::parse("polyroot:x^2+1:max").unwrap();
        assert!(matches!(p.eval(64, &policy()), Err(Error::SelectorNoMatch(_))));
        let q = SymbolicReal::parse("polyroot:x^2-x-1:idx1").unwrap();
        // index 1 is the negative conjugate: real, allowed
        let v = q.eval(96, &policy()).unwrap();
        assert!(v.certainly_lt(&Dyadic::zero()));
    }

    #[test]
    fn minimal_radical_reduction() {
        // (4/1)^(1/2) = 2
        let (p, q, l) = minimal_radical(&4.into(), &1.into(), 2);
        assert_eq!((p, q, l), (2.into(), 1.into(), 1));
        // (2/1)^(1/6) stays index 6
        let (p, q, l) = minimal_radical(&2.into(), &1.into(), 6);
        assert_eq!((p, q, l), (2.into(), 1.into(), 6));
        // (8/27)^(1/6) = (2/3)^(1/2)
        let (p, q, l) = minimal_radical(&8.into(), &27.into(), 6);
        assert_eq!((p, q, l), (2.into(), 3.into(), 2));
    }

    #[test]
    fn radical_form_of_poly_roots() {
        // x^3 - 2: root is 2^(1/3)
        let r = SymbolicReal::parse("polyroot:x^3-2:max").unwrap();
        assert_eq!(r.radical_form(), Some((2.into(), 1.into(), 3)));
        // golden ratio is not a radical
        let phi = SymbolicReal::parse("polyroot:x^2-x-1:max").unwrap();
        assert_eq!(phi.radical_form(), None);
        // rational root of a reducible polynomial
        let two = SymbolicReal::parse("polyroot:x^2-3x+2:max").unwrap();
        assert_eq!(two.rational_value(), Some(BigRational::from(BigInt::from(2))));
        assert_eq!(two.radical_form(), Some((2.into(), 1.into(), 1)));
    }

    #[test]
    fn scaling_symbols() {
        let half_3 = SymbolicReal::rational(3, 2).unwrap().scale_by_int(&2.into()).unwrap();
        assert_eq!(half_3, SymbolicReal::rational(3, 1).unwrap());
        // 2 * 2^(1/3) = (16)^(1/3)
        let r = SymbolicReal::radical(2, 1, 3).unwrap().scale_by_int(&2.into()).unwrap();
        assert_eq!(r, SymbolicReal::radical(16, 1, 3).unwrap());
        // 2 * phi: root of x^2 - 2x - 4
        let phi = SymbolicReal::parse("polyroot:x^2-x-1:max").unwrap();
        let tw = phi.scale_by_int(&2.into()).unwrap();
        let v = tw.eval(96, &policy()).unwrap();
        let expect = decimal_enclosure("3.23606797749978969640917366873127623544061835961152572427090", 160);
        assert!(v.intersects(&expect));
    }

    #[test]
    fn symbolic_powers() {
        let p = policy();
        // phi^2 = root of x^2-3x+1
        let phi = SymbolicReal::parse("polyroot:x^2-x-1:max").unwrap();
        let phi2 = phi.pow_symbolic(2, &p).unwrap();
        let v = phi2.eval(96, &p).unwrap();
        let expect = decimal_enclosure("2.61803398874989484820458683436563811772030917980576286213545", 160);
        assert!(v.intersects(&expect));
        // (2^(1/3))^3 = 2
        let c = SymbolicReal::radical(2, 1, 3).unwrap();
        assert_eq!(c.pow_symbolic(3, &p).unwrap(), SymbolicReal::rational(2, 1).unwrap());
        // (2^(1/3))^2 = 4^(1/3)
        assert_eq!(c.pow_symbolic(2, &p).unwrap(), SymbolicReal::radical(4, 1, 3).unwrap());
        // (3/2)^2 = 9/4
        let r = SymbolicReal::rational(3, 2).unwrap();
        assert_eq!(r.pow_symbolic(2, &p).unwrap(), SymbolicReal::rational(9, 4).unwrap());
    }
}
