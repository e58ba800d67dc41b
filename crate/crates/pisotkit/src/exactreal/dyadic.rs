//! Dyadic floating-point numbers `mant * 2^exp` with unbounded mantissa.
//!
//! This is the substrate for all certified real arithmetic in the crate:
//! addition and multiplication are exact, and every precision-losing step
//! (division, roots, rounding to a working precision) is directed, so an
//! enclosure built from dyadic endpoints never silently drops the true value.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Rounding direction for precision-losing operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Floor,
    /// Toward positive infinity.
    Ceil,
    /// To nearest (ties toward even are not needed; ties round up).
    Nearest,
}

/// An exact dyadic rational `mant * 2^exp`, normalized so `mant` is odd or zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({} * 2^{} ~ {})", self.mant, self.exp, self.to_f64())
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Dyadic::new(n.clone(), 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic { mant: BigInt::one(), exp: e }
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    /// Number of significant bits in the mantissa (0 for zero).
    pub fn mant_bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `floor(log2(|x|))` for nonzero `x`: the exponent of the leading bit.
    pub fn log2_magnitude(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.mant.bits() as i64 - 1 + self.exp
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Exact sum.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    /// Exact halving (dyadic, so always exact).
    pub fn half(&self) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp - 1 }
    }

    pub fn mul_pow2(&self, e: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + e }
    }

    pub fn cmp(&self, other: &Self) -> Ordering {
        match (self.sign(), other.sign()) {
            (Sign::Minus, Sign::NoSign) | (Sign::Minus, Sign::Plus) | (Sign::NoSign, Sign::Plus) => {
                return Ordering::Less
            }
            (Sign::Plus, Sign::NoSign) | (Sign::Plus, Sign::Minus) | (Sign::NoSign, Sign::Minus) => {
                return Ordering::Greater
            }
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        // Same nonzero sign: compare magnitudes cheaply first.
        let la = self.log2_magnitude();
        let lb = other.log2_magnitude();
        if la != lb {
            let mag = if la < lb { Ordering::Less } else { Ordering::Greater };
            return if self.is_positive() { mag } else { mag.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }

    pub fn min(&self, other: &Self) -> Self {
        if self.cmp(other) == Ordering::Greater { other.clone() } else { self.clone() }
    }

    pub fn max(&self, other: &Self) -> Self {
        if self.cmp(other) == Ordering::Less { other.clone() } else { self.clone() }
    }

    /// Round to at most `prec` mantissa bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let cut = (bits - prec as u64) as i64;
        // BigInt shr rounds toward -inf, which is exactly Floor.
        let floored = Dyadic::new(&self.mant >> cut as u64, self.exp + cut);
        match dir {
            Round::Floor => floored,
            Round::Ceil => {
                if floored.cmp(self) == Ordering::Equal {
                    floored
                } else {
                    floored.add(&Dyadic::pow2(self.exp + cut))
                }
            }
            Round::Nearest => {
                // Look at the top dropped bit.
                let half = Dyadic::pow2(self.exp + cut - 1);
                let rem = self.sub(&floored);
                if rem.cmp(&half) == Ordering::Less {
                    floored
                } else {
                    floored.add(&Dyadic::pow2(self.exp + cut))
                }
            }
        }
    }

    /// Directed quotient `num/den` with `prec` significant bits.
    /// `den` must be nonzero.
    pub fn div(&self, den: &Self, prec: u32, dir: Round) -> Self {
        assert!(!den.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // self/den = (ma/mb) * 2^(ea-eb); scale ma so the integer quotient
        // carries prec+2 significant bits.
        let shift = (den.mant.bits() as i64 + prec as i64 + 2 - self.mant.bits() as i64).max(0) as u64;
        let num = &self.mant << shift;
        let (q, r) = num.div_rem(&den.mant);
        let exact = r.is_zero();
        // div_rem truncates toward zero; fix up for direction.
        let mut q = q;
        let e = self.exp - den.exp - shift as i64;
        let negative = (self.is_negative()) ^ (den.is_negative());
        match dir {
            Round::Floor => {
                if !exact && negative {
                    q -= 1;
                }
            }
            Round::Ceil => {
                if !exact && !negative {
                    q += 1;
                }
            }
            Round::Nearest => {
                if !exact {
                    // |r| vs |den|/2; bump magnitude if at least half.
                    let r2: BigInt = r.abs() << 1u8;
                    if r2.cmp(&den.mant.abs()) != Ordering::Less {
                        if negative {
                            q -= 1;
                        } else {
                            q += 1;
                        }
                    }
                }
            }
        }
        Dyadic::new(q, e)
    }

    /// Directed `n`-th root of a nonnegative dyadic with `prec` significant bits.
    pub fn nth_root(&self, n: u32, prec: u32, dir: Round) -> Self {
        assert!(n >= 1);
        assert!(!self.is_negative(), "nth_root of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        if n == 1 {
            return self.round(prec, dir);
        }
        // Scale so the integer root carries enough bits and the exponent is
        // divisible by n: x = (mant << a) * 2^(exp - a), with n | (exp - a).
        let want_bits = (n as u64) * (prec as u64 + 4);
        let mut a = want_bits.saturating_sub(self.mant.bits()) as i64;
        // Make exp - a divisible by n.
        let n64 = n as i64;
        let rem = (self.exp - a).rem_euclid(n64);
        a += rem;
        let scaled: BigInt = &self.mant << a as u64;
        let root = num_integer::Roots::nth_root(&scaled, n);
        let e = (self.exp - a) / n64;
        let lower = Dyadic::new(root.clone(), e);
        match dir {
            Round::Floor => lower,
            Round::Ceil | Round::Nearest => {
                // Exactness check: lower^n == scaled?
                if num_traits::pow::Pow::pow(&root, n) == scaled {
                    lower
                } else {
                    Dyadic::new(root + 1, e)
                }
            }
        }
    }

    /// Largest integer <= self, as a BigInt.
    pub fn floor_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            &self.mant >> (-self.exp) as u64
        }
    }

    /// Smallest integer >= self.
    pub fn ceil_bigint(&self) -> BigInt {
        let f = self.floor_bigint();
        if self.is_integer() {
            f
        } else {
            f + 1
        }
    }

    pub fn is_integer(&self) -> bool {
        self.exp >= 0 || self.is_zero()
    }

    /// Approximate conversion for diagnostics and plotting only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        if bits <= 52 {
            let m: f64 = match self.mant.to_string().parse() {
                Ok(v) => v,
                Err(_) => return f64::NAN,
            };
            m * 2f64.powi(self.exp.clamp(-1060, 1060) as i32)
        } else {
            let cut = bits - 52;
            let top = Dyadic::new(&self.mant >> cut, self.exp + cut as i64);
            top.to_f64()
        }
    }

    /// Decimal string with `digits` fractional digits, rounded to nearest.
    /// Exact dyadics of small scale print exactly when `digits` suffices.
    pub fn to_decimal(&self, digits: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let scale = BigInt::from(10u32).pow(digits);
        // round(self * 10^digits)
        let scaled = self.mul(&Dyadic::from_bigint(&scale));
        let int = if scaled.exp >= 0 {
            &scaled.mant << scaled.exp as u64
        } else {
            // round to nearest integer
            let shifted: BigInt = &scaled.mant >> (-scaled.exp - 1) as u64;
            let half_up: BigInt = shifted + 1;
            &half_up >> 1u8
        };
        let neg = int.is_negative();
        let digits_str = int.abs().to_string();
        let digits = digits as usize;
        let (ip, fp) = if digits_str.len() > digits {
            let (a, b) = digits_str.split_at(digits_str.len() - digits);
            (a.to_string(), b.to_string())
        } else {
            ("0".to_string(), format!("{:0>width$}", digits_str, width = digits))
        };
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push_str(&ip);
        if digits > 0 {
            s.push('.');
            s.push_str(&fp);
        }
        s
    }
}
