//! Integer polynomials: heights, Landau's bound, certified root isolation,
//! and exact power-sum (trace) recurrences.

mod isolate;
mod traces;

pub use isolate::{isolate_roots, isolate_roots_rel, RootDisk, RootDiskJson, RootSpectrum};
pub use traces::{
    charpoly_from_power_sums, element_degree, min_poly_of_power, trace_sequence, twisted_trace,
};

use crate::error::{Error, Result};
use crate::exactreal::enclosure::{ComplexEnclosure, Enclosure};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

/// Dense integer polynomial, coefficients low to high, leading coefficient
/// nonzero, degree at least 1.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        let mut c = coeffs;
        while let Some(last) = c.last() {
            if last.is_zero() && c.len() > 1 {
                c.pop();
            } else {
                break;
            }
        }
        if c.len() < 2 {
            return Err(Error::InvalidParameter(
                "polynomial must have degree at least 1".into(),
            ));
        }
        if c.last().unwrap().is_zero() {
            return Err(Error::InvalidParameter("leading coefficient is zero".into()));
        }
        Ok(IntPoly { coeffs: c })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    pub fn constant(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// H(P): the maximum absolute value of the coefficients.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .expect("nonempty coefficient list")
    }

    /// Landau's bound sqrt(sum a_j^2), an upper bound for
    /// M(P) = |a_k| * prod max(1, |root|).
    pub fn landau_bound(&self, prec: u32) -> Enclosure {
        let sum: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        Enclosure::from_bigint(&sum, prec)
            .sqrt()
            .expect("sum of squares is nonnegative")
    }

    pub fn derivative(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect()
    }

    /// Exact evaluation at an integer.
    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact evaluation at a rational p/q, returned as the numerator of
    /// P(p/q) over q^deg.
    pub fn eval_rational_num(&self, p: &BigInt, q: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let deg = self.degree();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * p.pow(i as u32) * q.pow((deg - i) as u32);
        }
        acc
    }

    /// Interval Horner evaluation.
    pub fn eval_enclosure(&self, x: &Enclosure) -> Enclosure {
        let p = x.precision_bits();
        let mut acc = Enclosure::from_i64(0, p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Enclosure::from_bigint(c, p));
        }
        acc
    }

    /// Interval Horner evaluation over a complex rectangle.
    pub fn eval_complex(&self, z: &ComplexEnclosure) -> ComplexEnclosure {
        let p = z.re.precision_bits();
        let mut acc = ComplexEnclosure::from_real(Enclosure::from_i64(0, p));
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z);
            acc.re = acc.re.add(&Enclosure::from_bigint(c, p));
        }
        acc
    }

    /// Content: gcd of the coefficients (positive).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// True iff gcd(P, P') is constant.
    pub fn is_squarefree(&self) -> bool {
        let g = poly_gcd(&self.coeffs, &self.derivative());
        g.len() == 1
    }

    /// P / gcd(P, P'): same roots, all simple. Result is primitive.
    pub fn squarefree_part(&self) -> Result<IntPoly> {
        let g = poly_gcd(&self.coeffs, &self.derivative());
        if g.len() == 1 {
            let mut p = self.clone();
            let c = p.content();
            if c > BigInt::one() {
                for a in &mut p.coeffs {
                    *a /= &c;
                }
            }
            if p.leading().is_negative() {
                for a in &mut p.coeffs {
                    *a = -&*a;
                }
            }
            return Ok(p);
        }
        let (q, r) = poly_pseudo_div(&self.coeffs, &g);
        debug_assert!(r.iter().all(|c| c.is_zero()));
        let q = poly_primitive(&q);
        IntPoly::new(q)
    }

    /// Product of two integer polynomials.
    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        IntPoly { coeffs: poly_mul(&self.coeffs, &other.coeffs) }
    }

    /// The polynomial whose roots are N * (roots of self): N^k P(x/N),
    /// kept integral. Monic input stays monic.
    pub fn scale_roots(&self, n: &BigInt) -> IntPoly {
        let k = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * n.pow((k - i) as u32))
            .collect();
        IntPoly { coeffs }
    }

    /// ASCII form like `x^3-x-1`.
    pub fn to_ascii(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else if c.is_negative() {
                s.push('-');
            } else {
                s.push('+');
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                s.push_str(&mag.to_string());
            }
            if i >= 1 {
                if show_coeff {
                    s.push('*');
                }
                s.push('x');
                if i >= 2 {
                    s.push_str(&format!("^{}", i));
                }
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// Parse the ASCII grammar `x^k±c*x^j±…` (spaces allowed, `*` optional).
    pub fn parse(input: &str) -> Result<IntPoly> {
        IntPoly::new(parse_coeff_vec(input)?)
    }
}

/// Parse the polynomial grammar into a raw coefficient vector (low to high);
/// unlike `IntPoly::parse`, constants are allowed.
pub fn parse_coeff_vec(input: &str) -> Result<Vec<BigInt>> {
    {
        let cleaned: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(BigInt, usize)> = Vec::new();
        let bytes = cleaned.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff_str = &cleaned[start..i];
            let mut coeff = if coeff_str.is_empty() {
                BigInt::one()
            } else {
                coeff_str
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("bad coefficient `{}`: {}", coeff_str, e)))?
            };
            coeff *= sign;
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
            }
            let exp = if i < bytes.len() && bytes[i] == b'x' {
                i += 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if es == i {
                        return Err(Error::Parse("missing exponent after ^".into()));
                    }
                    cleaned[es..i]
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad exponent: {}", e)))?
                } else {
                    1
                }
            } else {
                if coeff_str.is_empty() {
                    return Err(Error::Parse(format!(
                        "unexpected character at position {} in `{}`",
                        i, cleaned
                    )));
                }
                0
            };
            terms.push((coeff, exp));
        }
        let deg = terms.iter().map(|(_, e)| *e).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (c, e) in terms {
            coeffs[e] += c;
        }
        Ok(coeffs)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ascii())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_ascii())
    }
}

// --- raw coefficient-slice helpers (allow constants, used by gcd) ---

pub(crate) fn poly_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    v
}

pub(crate) fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

pub(crate) fn poly_primitive(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        return poly_trim(v.to_vec());
    }
    poly_trim(v.iter().map(|c| c / &g).collect())
}

/// Pseudo-division: returns (q, r) with lc(b)^s * a = q*b + r for some s,
/// deg r < deg b. Only the remainder's root structure matters to callers.
pub(crate) fn poly_pseudo_div(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let a = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    if a.len() < b.len() {
        return (vec![BigInt::zero()], a);
    }
    let mut r = a;
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    loop {
        r = poly_trim(r);
        let dr = r.len() - 1;
        if dr < db || (r.len() == 1 && r[0].is_zero()) {
            break;
        }
        let lead = r.last().unwrap().clone();
        // q = lb*q + lead*x^(dr-db);  r = lb*r - lead*x^(dr-db)*b
        for c in q.iter_mut() {
            *c *= &lb;
        }
        q[dr - db] += &lead;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[i + dr - db] -= &lead * c;
        }
    }
    (poly_trim(q), r)
}

/// Primitive-PRS gcd of two integer polynomials (primitive, positive lead).
pub(crate) fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = poly_primitive(a);
    let mut b = poly_primitive(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.len() == 1 && b[0].is_zero() {
            if a.last().map(|c| c.is_negative()).unwrap_or(false) {
                for c in &mut a {
                    *c = -&*c;
                }
            }
            return a;
        }
        if b.len() == 1 {
            // nonzero constant divides everything
            return vec![BigInt::one()];
        }
        let (_, r) = poly_pseudo_div(&a, &b);
        a = b;
        b = poly_primitive(&r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display_roundtrip() {
        for s in ["x^2-x-1", "x^3-3*x^2+1", "2*x^2-5*x+3", "x^4-5*x^3+3", "-x+2"] {
            let poly = p(s);
            assert_eq!(p(&poly.to_ascii()), poly);
        }
        assert_eq!(p("x^2 - x - 1"), p("x^2-x-1"));
        assert_eq!(p("2x^2-5x+3"), p("2*x^2-5*x+3"));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(IntPoly::parse("").is_err());
        assert!(IntPoly::parse("x^").is_err());
        assert!(IntPoly::parse("5").is_err()); // degree 0
        assert!(IntPoly::parse("y^2").is_err());
    }

    #[test]
    fn height_examples() {
        assert_eq!(p("x^2-x-1").height(), BigInt::from(1));
        assert_eq!(p("x^3-3*x^2+1").height(), BigInt::from(3));
        assert_eq!(p("2*x^2-5*x+3").height(), BigInt::from(5));
    }

    #[test]
    fn landau_bound_examples() {
        // x^2-x-1 -> sqrt(3); x-2 -> sqrt(5); x^3-3x^2+1 -> sqrt(11)
        let b = p("x^2-x-1").landau_bound(64);
        let s3 = Enclosure::from_i64(3, 96).sqrt().unwrap();
        assert!(b.intersects(&s3));
        let b2 = p("x-2").landau_bound(64);
        let s5 = Enclosure::from_i64(5, 96).sqrt().unwrap();
        assert!(b2.intersects(&s5));
        let b3 = p("x^3-3*x^2+1").landau_bound(64);
        let s11 = Enclosure::from_i64(11, 96).sqrt().unwrap();
        assert!(b3.intersects(&s11));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p("x^2-1");
        let b = p("x^2-2*x+1");
        let g = poly_gcd(a.coeffs(), b.coeffs());
        assert_eq!(g, vec![BigInt::from(-1), BigInt::from(1)]); // x - 1
        assert!(a.is_squarefree());
        assert!(!p("x^2-2*x+1").is_squarefree());
        assert!(p("x^3-x-1").is_squarefree());
        let sf = p("x^2-2*x+1").squarefree_part().unwrap();
        assert_eq!(sf, p("x-1"));
    }

    #[test]
    fn eval_exact() {
        let q = p("x^3-x-1");
        assert_eq!(q.eval_bigint(&BigInt::from(2)), BigInt::from(5));
        // P(3/2) = 27/8 - 3/2 - 1 = 7/8; numerator over q^3 = 7
        assert_eq!(q.eval_rational_num(&BigInt::from(3), &BigInt::from(2)), BigInt::from(7));
    }

    #[test]
    fn scale_roots_is_monic_preserving() {
        let q = p("x^3-x-1").scale_roots(&BigInt::from(2));
        assert_eq!(q, p("x^3-4*x-8"));
    }
}
