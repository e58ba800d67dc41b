//! Exact arithmetic in Q[x]/(m) for a monic rational modulus m.
//!
//! Used wherever symbolic elements of Q(zeta) must be manipulated without
//! rounding: exact-hit tests, greedy series coefficients, and InField
//! reductions. Elements are coefficient vectors (low to high, length < deg m)
//! over BigRational.

use crate::error::{Error, Result};
use crate::exactreal::enclosure::Enclosure;
use crate::polyalg::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type FieldElem = Vec<BigRational>;

#[derive(Clone, Debug)]
pub struct NumberField {
    /// Monic modulus, coefficients low to high, length degree+1.
    modulus: Vec<BigRational>,
}

impl NumberField {
    /// Field presented by an integer polynomial (made monic over Q).
    pub fn from_int_poly(p: &IntPoly) -> Self {
        let lead = BigRational::from(p.leading().clone());
        let modulus = p
            .coeffs()
            .iter()
            .map(|c| BigRational::from(c.clone()) / lead.clone())
            .collect();
        NumberField { modulus }
    }

    /// Field Q((p/q)^(1/l)) presented by x^l - p/q.
    pub fn radical(p: &BigInt, q: &BigInt, l: u32) -> Self {
        let mut modulus = vec![BigRational::zero(); l as usize + 1];
        modulus[0] = -BigRational::new(p.clone(), q.clone());
        modulus[l as usize] = BigRational::one();
        NumberField { modulus }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn one(&self) -> FieldElem {
        vec![BigRational::one()]
    }

    pub fn constant(&self, c: BigRational) -> FieldElem {
        vec![c]
    }

    pub fn from_int_coeffs(&self, coeffs: &[BigInt]) -> FieldElem {
        let v: FieldElem = coeffs.iter().map(|c| BigRational::from(c.clone())).collect();
        self.reduce(v)
    }

    pub fn reduce(&self, mut v: FieldElem) -> FieldElem {
        let k = self.degree();
        while v.len() > k {
            let lead = v.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let d = v.len(); // degree of popped term
            for i in 0..k {
                let t = &lead * &self.modulus[i];
                v[d - k + i] -= t;
            }
        }
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
        if v.is_empty() {
            v.push(BigRational::zero());
        }
        v
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let n = a.len().max(b.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] += c;
        }
        self.reduce(out)
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let n = a.len().max(b.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] -= c;
        }
        self.reduce(out)
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    pub fn scale(&self, a: &FieldElem, c: &BigRational) -> FieldElem {
        self.reduce(a.iter().map(|x| x * c).collect())
    }

    /// x^(-1) mod m: requires m(0) != 0. From m(x) = 0,
    /// x * (m_k x^(k-1) + ... + m_1) = -m_0, so
    /// x^(-1) = -(m_k x^(k-1) + ... + m_1)/m_0.
    pub fn x_inverse(&self) -> Result<FieldElem> {
        let m0 = &self.modulus[0];
        if m0.is_zero() {
            return Err(Error::DivisionByZero("modulus has zero constant term".into()));
        }
        let k = self.degree();
        let mut v = vec![BigRational::zero(); k];
        for i in 1..=k {
            v[i - 1] = -(&self.modulus[i] / m0);
        }
        Ok(self.reduce(v))
    }

    /// x^e mod m for any integer e (negative via x_inverse).
    pub fn pow_x(&self, e: i64) -> Result<FieldElem> {
        let base = if e >= 0 {
            let mut x = vec![BigRational::zero(), BigRational::one()];
            if self.degree() == 1 {
                x = self.reduce(x);
            }
            x
        } else {
            self.x_inverse()?
        };
        let mut result = self.one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(&result, &b);
            }
            n >>= 1;
            if n > 0 {
                b = self.mul(&b, &b);
            }
        }
        Ok(result)
    }

    /// Some(c) iff the element is the rational constant c.
    /// Complete when the modulus is the minimal polynomial of the generator.
    pub fn as_rational(&self, a: &FieldElem) -> Option<BigRational> {
        if a.iter().skip(1).all(|c| c.is_zero()) {
            Some(a.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// Some(n) iff the element is the rational integer n.
    pub fn as_integer(&self, a: &FieldElem) -> Option<BigInt> {
        let r = self.as_rational(a)?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    /// Interval evaluation at an enclosure of the generator.
    pub fn eval_enclosure(&self, a: &FieldElem, x: &Enclosure) -> Enclosure {
        let p = x.precision_bits();
        let mut acc = Enclosure::from_i64(0, p);
        for c in a.iter().rev() {
            acc = acc.mul(x).add(&Enclosure::from_ratio(c.numer(), c.denom(), p));
        }
        acc
    }

    /// Is every coefficient's denominator 1?
    pub fn has_integer_coeffs(&self, a: &FieldElem) -> bool {
        a.iter().all(|c| c.denom().is_one() || c.numer().is_zero())
    }

    pub fn int_coeffs(&self, a: &FieldElem) -> Option<Vec<BigInt>> {
        if self.has_integer_coeffs(a) {
            Some(a.iter().map(|c| c.numer() / c.denom()).collect())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn golden_field_arithmetic() {
        let f = NumberField::from_int_poly(&IntPoly::parse("x^2-x-1").unwrap());
        let phi = f.pow_x(1).unwrap();
        // phi^2 = phi + 1
        let sq = f.mul(&phi, &phi);
        assert_eq!(sq, vec![rat(1, 1), rat(1, 1)]);
        // phi^(-1) = phi - 1
        let inv = f.pow_x(-1).unwrap();
        assert_eq!(inv, vec![rat(-1, 1), rat(1, 1)]);
        let prod = f.mul(&phi, &inv);
        assert_eq!(f.as_integer(&prod), Some(BigInt::from(1)));
        // phi^10 = 55 phi + 34 (Fibonacci)
        let p10 = f.pow_x(10).unwrap();
        assert_eq!(p10, vec![rat(34, 1), rat(55, 1)]);
    }

    #[test]
    fn radical_field_power_reduction() {
        let f = NumberField::radical(&2.into(), &1.into(), 3);
        // x^3 = 2, x^6 = 4, x^4 = 2x
        assert_eq!(f.as_integer(&f.pow_x(3).unwrap()), Some(BigInt::from(2)));
        assert_eq!(f.as_integer(&f.pow_x(6).unwrap()), Some(BigInt::from(4)));
        let x4 = f.pow_x(4).unwrap();
        assert_eq!(x4, vec![rat(0, 1), rat(2, 1)]);
        // x^(-3) = 1/2
        let inv3 = f.pow_x(-3).unwrap();
        assert_eq!(f.as_rational(&inv3), Some(rat(1, 2)));
    }

    #[test]
    fn rational_radical_field() {
        // x - 3/2: degree-1 field, everything is rational
        let f = NumberField::radical(&3.into(), &2.into(), 1);
        assert_eq!(f.degree(), 1);
        let v = f.pow_x(4).unwrap();
        assert_eq!(f.as_rational(&v), Some(rat(81, 16)));
    }
}
