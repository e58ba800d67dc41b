//! Exact power-sum (trace) sequences via Newton's identities and the
//! polynomial's own linear recurrence.
//!
//! For monic P with roots z_1..z_k, the sums s_n = sum_j z_j^n are integers:
//! Newton's identities give s_1..s_k from the coefficients, and for n > k
//! the order-k recurrence s_n = -(c_{k-1} s_{n-1} + ... + c_0 s_{n-k}) holds.

use super::{poly_trim, IntPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// s_0..s_n_max for a monic polynomial.
pub fn trace_sequence(poly: &IntPoly, n_max: usize) -> Result<Vec<BigInt>> {
    if !poly.is_monic() {
        return Err(Error::InvalidParameter(
            "trace sequence requires a monic polynomial".into(),
        ));
    }
    let k = poly.degree();
    let c = poly.coeffs();
    let mut s: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    s.push(BigInt::from(k as i64));
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        if n <= k {
            acc -= BigInt::from(n as i64) * &c[k - n];
            for i in 1..n {
                acc -= &c[k - i] * &s[n - i];
            }
        } else {
            for i in 1..=k {
                acc -= &c[k - i] * &s[n - i];
            }
        }
        s.push(acc);
    }
    Ok(s)
}

/// Twisted traces t_n = sum_j g(z_j) z_j^n = sum_m g_m s_{n+m}, exact.
/// Requires deg g < deg P (constants allowed).
pub fn twisted_trace(poly: &IntPoly, g: &[BigInt], n_max: usize) -> Result<Vec<BigInt>> {
    let g = poly_trim(g.to_vec());
    if g.len() > poly.degree() {
        return Err(Error::InvalidParameter(
            "twist polynomial must have degree below the modulus".into(),
        ));
    }
    let s = trace_sequence(poly, n_max + g.len() - 1)?;
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut acc = BigInt::zero();
        for (m, gm) in g.iter().enumerate() {
            acc += gm * &s[n + m];
        }
        out.push(acc);
    }
    Ok(out)
}

/// Monic characteristic polynomial from power sums p_0..p_k (p_0 = k) via
/// inverse Newton identities. Errors if a division is inexact, which cannot
/// happen when the sums come from an algebraic-integer spectrum.
pub fn charpoly_from_power_sums(p: &[BigInt]) -> Result<IntPoly> {
    let k = p.len() - 1;
    if k < 1 {
        return Err(Error::InvalidParameter("need at least p_0, p_1".into()));
    }
    let mut e = vec![BigInt::one()];
    for i in 1..=k {
        let mut acc = BigInt::zero();
        let mut sign = BigInt::one();
        for j in 1..=i {
            acc += &sign * &e[i - j] * &p[j];
            sign = -sign;
        }
        let (q, r) = acc.div_rem(&BigInt::from(i as i64));
        if !r.is_zero() {
            return Err(Error::InvalidParameter(
                "power sums are not those of an algebraic-integer spectrum".into(),
            ));
        }
        e.push(q);
    }
    // coefficients: c_{k-i} = (-1)^i e_i, monic
    let mut coeffs = vec![BigInt::zero(); k + 1];
    for (i, ei) in e.iter().enumerate() {
        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        coeffs[k - i] = sign * ei;
    }
    IntPoly::new(coeffs)
}

/// Remainder of a mod monic p, integer coefficients preserved.
pub(crate) fn zpoly_rem_monic(a: &[BigInt], p: &IntPoly) -> Vec<BigInt> {
    debug_assert!(p.is_monic());
    let k = p.degree();
    let mut r = poly_trim(a.to_vec());
    while r.len() > k {
        let d = r.len() - 1;
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        for i in 0..k {
            let idx = d - k + i;
            let sub = &lead * &p.coeffs()[i];
            r[idx] -= sub;
        }
    }
    r
}

pub(crate) fn zpoly_mulmod(a: &[BigInt], b: &[BigInt], p: &IntPoly) -> Vec<BigInt> {
    zpoly_rem_monic(&super::poly_mul(a, b), p)
}

/// Trace of a residue class: sum_j h(z_j) for deg h < k, via s-values.
fn residue_trace(h: &[BigInt], s: &[BigInt]) -> BigInt {
    h.iter().enumerate().map(|(m, c)| c * &s[m]).sum()
}

/// Degree over Q of the element g(z) of Z[z]/P (monic squarefree P), with
/// its monic minimal polynomial. The characteristic polynomial of g(z) is
/// m^(k/t) for the minimal polynomial m of degree t, so the squarefree part
/// is exactly m.
pub fn element_degree(poly: &IntPoly, g: &[BigInt]) -> Result<(usize, IntPoly)> {
    let k = poly.degree();
    let s = trace_sequence(poly, k.max(1))?;
    let g_red = zpoly_rem_monic(g, poly);
    if g_red.iter().all(|c| c.is_zero()) {
        // g(z) = 0: degenerate; minimal polynomial is x
        return Ok((1, IntPoly::new(vec![BigInt::zero(), BigInt::one()])?));
    }
    let mut p_sums = vec![BigInt::from(k as i64)];
    let mut power = vec![BigInt::one()];
    for _ in 1..=k {
        power = zpoly_mulmod(&power, &g_red, poly);
        p_sums.push(residue_trace(&power, &s));
    }
    let charpoly = charpoly_from_power_sums(&p_sums)?;
    let minimal = charpoly.squarefree_part()?;
    Ok((minimal.degree(), minimal))
}

/// Monic polynomial (squarefree) vanishing at z^m for every root z of P:
/// the squarefree part of the characteristic polynomial of z^m, computed
/// from the subsampled trace sequence.
pub fn min_poly_of_power(poly: &IntPoly, m: usize) -> Result<IntPoly> {
    if m == 0 {
        return Err(Error::InvalidParameter("power must be positive".into()));
    }
    let k = poly.degree();
    let s = trace_sequence(poly, k * m)?;
    let p_sums: Vec<BigInt> = (0..=k).map(|i| s[i * m].clone()).collect();
    let charpoly = charpoly_from_power_sums(&p_sums)?;
    charpoly.squarefree_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactreal::enclosure::{ComplexEnclosure, Enclosure};
    use crate::exactreal::{Dyadic, PrecisionPolicy};
    use crate::polyalg::isolate_roots_rel;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    #[test]
    fn plastic_trace_sequence() {
        // s_n = s_{n-2} + s_{n-3}
        let s = trace_sequence(&p("x^3-x-1"), 8).unwrap();
        let expect: Vec<BigInt> = [3, 0, 2, 3, 2, 5, 5, 7, 10].iter().map(|&v| v.into()).collect();
        assert_eq!(s, expect);
    }

    #[test]
    fn lucas_numbers() {
        let s = trace_sequence(&p("x^2-x-1"), 10).unwrap();
        let expect: Vec<BigInt> =
            [2, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123].iter().map(|&v| v.into()).collect();
        assert_eq!(s, expect);
    }

    #[test]
    fn degree_one_powers() {
        let s = trace_sequence(&p("x-5"), 3).unwrap();
        let expect: Vec<BigInt> = [1, 5, 25, 125].iter().map(|&v| v.into()).collect();
        assert_eq!(s, expect);
    }

    #[test]
    fn rejects_non_monic() {
        assert!(trace_sequence(&p("2*x^2-1"), 5).is_err());
    }

    #[test]
    fn twisted_shift_identities() {
        let fib = p("x^2-x-1");
        let s = trace_sequence(&fib, 11).unwrap();
        // g(x) = x: t_n = s_{n+1}
        let t = twisted_trace(&fib, &[BigInt::zero(), BigInt::one()], 10).unwrap();
        assert_eq!(&t[..], &s[1..]);
        // g(x) = 2: t_n = 2 s_n
        let t2 = twisted_trace(&fib, &[BigInt::from(2)], 10).unwrap();
        for (a, b) in t2.iter().zip(s.iter()) {
            assert_eq!(a, &(b * BigInt::from(2)));
        }
        // cubic, g(x) = x^2: t_n = s_{n+2}
        let c = p("x^3-x-1");
        let sc = trace_sequence(&c, 12).unwrap();
        let tc =
            twisted_trace(&c, &[BigInt::zero(), BigInt::zero(), BigInt::one()], 10).unwrap();
        assert_eq!(&tc[..], &sc[2..]);
    }

    #[test]
    fn dual_route_numeric_powersums_match() {
        // numeric sum of root powers must stay inside the certified enclosure
        // around the integer trace values
        for s in ["x^2-x-1", "x^3-x-1", "x^3-3*x^2+1", "x^4-5*x^3+3"] {
            let poly = p(s);
            let spec = isolate_roots_rel(&poly, 120, &PrecisionPolicy::default()).unwrap();
            let traces = trace_sequence(&poly, 200).unwrap();
            let prec = 320;
            let mut powers: Vec<ComplexEnclosure> = spec
                .roots
                .iter()
                .map(|_| ComplexEnclosure::from_real(Enclosure::from_i64(1, prec)))
                .collect();
            for (n, t) in traces.iter().enumerate() {
                let mut sum = ComplexEnclosure::from_real(Enclosure::from_i64(0, prec));
                for p in &powers {
                    sum = sum.add(p);
                }
                assert!(
                    sum.re.contains_bigint(t),
                    "trace mismatch for {} at n={}: {:?} vs {}",
                    s,
                    n,
                    sum.re,
                    t
                );
                assert!(sum.im.contains_zero());
                for (pw, root) in powers.iter_mut().zip(spec.roots.iter()) {
                    *pw = pw.mul(&root.complex_enclosure(prec));
                }
            }
        }
    }

    #[test]
    fn charpoly_roundtrip_and_power_poly() {
        // phi^2 has minimal polynomial x^2 - 3x + 1
        let fib = p("x^2-x-1");
        let sq = min_poly_of_power(&fib, 2).unwrap();
        assert_eq!(sq, p("x^2-3*x+1"));
        // (2^(1/3))^3 = 2: subsampled charpoly of x^3-2 at m=3 is (x-2)^3,
        // squarefree part x-2
        let c = p("x^3-2");
        let cubed = min_poly_of_power(&c, 3).unwrap();
        assert_eq!(cubed, p("x-2"));
    }

    #[test]
    fn element_degrees_in_quadratic_field() {
        let fib = p("x^2-x-1");
        // alpha = phi: degree 2
        let (d, m) = element_degree(&fib, &[BigInt::zero(), BigInt::one()]).unwrap();
        assert_eq!(d, 2);
        assert_eq!(m, fib);
        // alpha = 2phi - 1 = sqrt5: degree 2, x^2 - 5
        let (d2, m2) = element_degree(&fib, &[BigInt::from(-1), BigInt::from(2)]).unwrap();
        assert_eq!(d2, 2);
        assert_eq!(m2, p("x^2-5"));
        // alpha = 3 (constant): degree 1, x - 3
        let (d3, m3) = element_degree(&fib, &[BigInt::from(3)]).unwrap();
        assert_eq!(d3, 1);
        assert_eq!(m3, p("x-3"));
    }
}
