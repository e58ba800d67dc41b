//! Certified complex root isolation.
//!
//! Approximation is simultaneous Aberth-Ehrlich iteration in dyadic complex
//! arithmetic; certification is a-posteriori via Weierstrass/Gerschgorin
//! inclusion disks: with pairwise distinct approximations z_1..z_k, the disks
//! centered at z_i with radius
//!
//! ```text
//! r_i = k * |P(z_i)| / (|a_k| * prod_{j != i} |z_i - z_j|)
//! ```
//!
//! cover all roots of P, and a disk disjoint from all others contains exactly
//! one root. The radii are evaluated with exact dyadic arithmetic (outward
//! square roots only), so disjoint disks constitute a proof. Reality of a
//! root is certified by the mirror-disk argument: if D_i meets the real axis
//! and conj(D_i) intersects no other disk, the root in D_i is its own
//! conjugate.

use super::IntPoly;
use crate::error::{Error, Result};
use crate::exactreal::dyadic::{Dyadic, Round};
use crate::exactreal::enclosure::{ComplexEnclosure, Enclosure};
use crate::exactreal::PrecisionPolicy;
use serde::Serialize;
use std::cmp::Ordering;

/// One certified root disk. Centers are exact dyadics; real roots are
/// canonicalized to center_im = 0 with the imaginary offset absorbed into
/// the radius.
#[derive(Clone, Debug)]
pub struct RootDisk {
    pub center_re: Dyadic,
    pub center_im: Dyadic,
    pub radius: Dyadic,
    pub is_real: bool,
}

impl RootDisk {
    pub fn re_enclosure(&self, prec: u32) -> Enclosure {
        Enclosure::new(self.center_re.clone(), self.radius.clone(), prec).with_precision(prec)
    }

    pub fn im_enclosure(&self, prec: u32) -> Enclosure {
        if self.is_real {
            Enclosure::from_i64(0, prec)
        } else {
            Enclosure::new(self.center_im.clone(), self.radius.clone(), prec).with_precision(prec)
        }
    }

    pub fn complex_enclosure(&self, prec: u32) -> ComplexEnclosure {
        ComplexEnclosure::new(self.re_enclosure(prec), self.im_enclosure(prec))
    }

    /// Certified enclosure of |root|.
    pub fn modulus(&self, prec: u32) -> Enclosure {
        let nsq = self.center_re.mul(&self.center_re).add(&self.center_im.mul(&self.center_im));
        let clo = nsq.nth_root(2, prec + 8, Round::Floor);
        let chi = nsq.nth_root(2, prec + 8, Round::Ceil);
        let lo = clo.sub(&self.radius).max(&Dyadic::zero());
        let hi = chi.add(&self.radius);
        Enclosure::from_endpoints(lo, hi, prec)
    }

    /// Real enclosure of a certified-real root.
    pub fn real_enclosure(&self, prec: u32) -> Option<Enclosure> {
        if self.is_real {
            Some(self.re_enclosure(prec))
        } else {
            None
        }
    }

    #[cfg(test)]
    fn dist_sq_to(&self, other: &RootDisk) -> Dyadic {
        let dre = self.center_re.sub(&other.center_re);
        let dim = self.center_im.sub(&other.center_im);
        dre.mul(&dre).add(&dim.mul(&dim))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootDiskJson {
    pub re: String,
    pub im: String,
    pub radius: String,
    pub modulus_lo: String,
    pub modulus_hi: String,
    pub is_real: bool,
}

/// All roots of a squarefree integer polynomial, as certified pairwise
/// disjoint disks in canonical order (modulus descending, then angle class,
/// then real part descending).
#[derive(Clone, Debug)]
pub struct RootSpectrum {
    pub poly: IntPoly,
    pub roots: Vec<RootDisk>,
    /// Squarefree input is mandatory, so every disk holds a simple root.
    pub squarefree: bool,
    /// Permutation mapping rank to index; identity since roots are stored sorted.
    pub modulus_order: Vec<usize>,
}

impl RootSpectrum {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Certified count of roots with |root| > 1; None if any comparison is
    /// undecided at the current radii.
    pub fn count_outside_unit(&self, prec: u32) -> Option<usize> {
        let one = Dyadic::one();
        let mut count = 0;
        for r in &self.roots {
            let m = r.modulus(prec);
            if m.certainly_gt(&one) {
                count += 1;
            } else if !m.certainly_lt(&one) {
                return None;
            }
        }
        Some(count)
    }

    pub fn to_json(&self, prec: u32) -> Vec<RootDiskJson> {
        self.roots
            .iter()
            .map(|r| {
                let m = r.modulus(prec);
                RootDiskJson {
                    re: Enclosure::exact(r.center_re.clone(), prec).to_decimal_certified(30).0,
                    im: Enclosure::exact(r.center_im.clone(), prec).to_decimal_certified(30).0,
                    radius: crate::exactreal::enclosure::radius_string(&r.radius),
                    modulus_lo: Enclosure::exact(m.lo(), prec).to_decimal_certified(30).0,
                    modulus_hi: Enclosure::exact(m.hi(), prec).to_decimal_certified(30).0,
                    is_real: r.is_real,
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy)]
enum Target<'a> {
    Abs(&'a Dyadic),
    RelBits(u32),
}

/// Exact complex point in dyadic coordinates.
#[derive(Clone, Debug)]
struct CPt {
    re: Dyadic,
    im: Dyadic,
}

impl CPt {
    fn zero() -> Self {
        CPt { re: Dyadic::zero(), im: Dyadic::zero() }
    }

    fn add(&self, o: &CPt) -> CPt {
        CPt { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    fn sub(&self, o: &CPt) -> CPt {
        CPt { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    fn mul(&self, o: &CPt, prec: u32) -> CPt {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im)).round(prec, Round::Nearest);
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re)).round(prec, Round::Nearest);
        CPt { re, im }
    }

    fn norm_sq(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    fn div(&self, o: &CPt, prec: u32) -> CPt {
        let d = o.norm_sq();
        let re_num = self.re.mul(&o.re).add(&self.im.mul(&o.im));
        let im_num = self.im.mul(&o.re).sub(&self.re.mul(&o.im));
        CPt {
            re: re_num.div(&d, prec, Round::Nearest),
            im: im_num.div(&d, prec, Round::Nearest),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn from_f64(re: f64, im: f64) -> CPt {
        CPt { re: dyadic_from_f64(re), im: dyadic_from_f64(im) }
    }
}

fn dyadic_from_f64(x: f64) -> Dyadic {
    if x == 0.0 || !x.is_finite() {
        return Dyadic::zero();
    }
    let bits = x.abs().to_bits();
    let e = ((bits >> 52) & 0x7ff) as i64;
    let m = bits & ((1u64 << 52) - 1);
    let (mant, exp) = if e == 0 { (m, -1074) } else { (m | (1u64 << 52), e - 1075) };
    let mut v = num_bigint::BigInt::from(mant);
    if x < 0.0 {
        v = -v;
    }
    Dyadic::new(v, exp)
}

/// Horner evaluation of real-coefficient polynomial at a complex point,
/// rounding each step to `prec` bits.
fn horner(coeffs: &[Dyadic], z: &CPt, prec: u32) -> CPt {
    let mut acc = CPt::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec);
        acc.re = acc.re.add(c).round(prec, Round::Nearest);
        acc.im = acc.im.round(prec, Round::Nearest);
    }
    acc
}

/// Exact Horner evaluation (no rounding); mantissas grow with the degree.
fn horner_exact(coeffs: &[Dyadic], z: &CPt) -> CPt {
    let mut acc = CPt::zero();
    for c in coeffs.iter().rev() {
        let re = acc.re.mul(&z.re).sub(&acc.im.mul(&z.im)).add(c);
        let im = acc.re.mul(&z.im).add(&acc.im.mul(&z.re));
        acc = CPt { re, im };
    }
    acc
}

/// Isolate all roots with disk radii at most `target_radius`.
pub fn isolate_roots(
    poly: &IntPoly,
    target_radius: &Dyadic,
    policy: &PrecisionPolicy,
) -> Result<RootSpectrum> {
    isolate(poly, Target::Abs(target_radius), policy)
}

/// Isolate all roots with per-root relative radius at most 2^-rel_bits.
/// Results are memoized per (polynomial, precision): isolation is pure, so
/// the cache cannot change any output, only skip recomputation.
pub fn isolate_roots_rel(
    poly: &IntPoly,
    rel_bits: u32,
    policy: &PrecisionPolicy,
) -> Result<RootSpectrum> {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<(String, u32), RootSpectrum>>> = OnceLock::new();
    let key = (poly.to_ascii(), rel_bits);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let spec = isolate(poly, Target::RelBits(rel_bits), policy)?;
    let mut guard = cache.lock().unwrap();
    if guard.len() > 4096 {
        guard.clear();
    }
    guard.insert(key, spec.clone());
    Ok(spec)
}

fn isolate(poly: &IntPoly, target: Target, policy: &PrecisionPolicy) -> Result<RootSpectrum> {
    if !poly.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let k = poly.degree();
    if k == 1 {
        return Ok(linear_spectrum(poly, target));
    }
    let coeffs: Vec<Dyadic> = poly.coeffs().iter().map(Dyadic::from_bigint).collect();
    let deriv: Vec<Dyadic> = poly.derivative().iter().map(Dyadic::from_bigint).collect();
    let lead_abs = coeffs.last().unwrap().abs();

    // Cauchy-style initial circle: 1 + H(P)/|a_k|.
    let height_f = poly.height().to_string().parse::<f64>().unwrap_or(1e300);
    let lead_f = lead_abs.to_f64().abs().max(1e-300);
    let r0 = 1.0 + (height_f / lead_f).min(1e12);

    let mut z: Vec<CPt> = Vec::new();
    let mut rung_index = 0u32;
    let mut prec = policy.start_bits.max(64);
    loop {
        if z.is_empty() {
            let offset = 0.4 + 0.37 * rung_index as f64;
            z = (0..k)
                .map(|i| {
                    let theta = 2.0 * std::f64::consts::PI * (i as f64 + 0.25) / k as f64 + offset;
                    CPt::from_f64(r0 * theta.cos(), r0 * theta.sin())
                })
                .collect();
        }
        aberth_sweep(&coeffs, &deriv, &mut z, prec);
        if let Some(disks) = certify(poly, &coeffs, &lead_abs, &z, target) {
            return Ok(finish_spectrum(poly, disks));
        }
        if prec >= policy.max_bits {
            return Err(Error::PrecisionCap {
                cap: policy.max_bits,
                context: format!("isolating roots of {}", poly),
            });
        }
        prec = (prec * 2).min(policy.max_bits);
        rung_index += 1;
        if rung_index % 4 == 3 {
            // stagnation escape: reseed from fresh perturbed circle
            z.clear();
        }
    }
}

fn linear_spectrum(poly: &IntPoly, target: Target) -> RootSpectrum {
    // root = -a0/a1, exact rational
    let a0 = Dyadic::from_bigint(poly.constant());
    let a1 = Dyadic::from_bigint(poly.leading());
    let prec = match target {
        Target::Abs(t) => {
            if t.is_zero() {
                256
            } else {
                (-t.log2_magnitude()).max(64) as u32 + 16
            }
        }
        Target::RelBits(b) => b + 16,
    };
    let lo = a0.neg().div(&a1, prec, Round::Floor);
    let hi = a0.neg().div(&a1, prec, Round::Ceil);
    let e = Enclosure::from_endpoints(lo, hi, prec);
    let disk = RootDisk {
        center_re: e.center().clone(),
        center_im: Dyadic::zero(),
        radius: e.radius().clone(),
        is_real: true,
    };
    RootSpectrum {
        poly: poly.clone(),
        roots: vec![disk],
        squarefree: true,
        modulus_order: vec![0],
    }
}

fn aberth_sweep(coeffs: &[Dyadic], deriv: &[Dyadic], z: &mut [CPt], prec: u32) {
    let k = z.len();
    let max_iters = 40 + 8 * k;
    let stop_sq = Dyadic::pow2(-2 * (prec as i64 - 6));
    for _ in 0..max_iters {
        let mut max_rel_sq = Dyadic::zero();
        let snapshot: Vec<CPt> = z.to_vec();
        for i in 0..k {
            let p = horner(coeffs, &snapshot[i], prec);
            if p.is_zero() {
                continue;
            }
            let pd = horner(deriv, &snapshot[i], prec);
            if pd.is_zero() {
                continue;
            }
            let ratio = p.div(&pd, prec);
            let mut sum = CPt::zero();
            for (j, other) in snapshot.iter().enumerate() {
                if j == i {
                    continue;
                }
                let d = snapshot[i].sub(other);
                if d.is_zero() {
                    continue;
                }
                let one = CPt { re: Dyadic::one(), im: Dyadic::zero() };
                sum = sum.add(&one.div(&d, prec));
            }
            let denom = CPt { re: Dyadic::one(), im: Dyadic::zero() }.sub(&ratio.mul(&sum, prec));
            let w = if denom.is_zero() { ratio } else { ratio.div(&denom, prec) };
            z[i] = z[i].sub(&w);
            let scale = z[i].norm_sq().max(&Dyadic::one());
            let rel = w.norm_sq().div(&scale, 32, Round::Ceil);
            max_rel_sq = max_rel_sq.max(&rel);
        }
        if max_rel_sq.cmp(&stop_sq) == Ordering::Less {
            break;
        }
    }
}

/// Weierstrass/Gerschgorin certification at exact precision. Returns the
/// disks when they are pairwise disjoint, meet the target, and every root's
/// reality status is decided.
fn certify(
    poly: &IntPoly,
    coeffs: &[Dyadic],
    lead_abs: &Dyadic,
    z: &[CPt],
    target: Target,
) -> Option<Vec<RootDisk>> {
    let k = z.len();
    let kd = Dyadic::from_i64(k as i64);
    let mut radii: Vec<Dyadic> = Vec::with_capacity(k);
    for i in 0..k {
        let pval = horner_exact(coeffs, &z[i]);
        let pnorm_hi = pval.norm_sq().nth_root(2, 64, Round::Ceil);
        let mut denom = lead_abs.clone();
        for j in 0..k {
            if j == i {
                continue;
            }
            let dsq = z[i].sub(&z[j]).norm_sq();
            if dsq.is_zero() {
                return None;
            }
            denom = denom.mul(&dsq.nth_root(2, 64, Round::Floor));
        }
        if denom.is_zero() {
            return None;
        }
        let r = kd.mul(&pnorm_hi).div(&denom, 64, Round::Ceil);
        radii.push(r);
    }
    // target check
    for (i, r) in radii.iter().enumerate() {
        match target {
            Target::Abs(t) => {
                if r.cmp(t) == Ordering::Greater {
                    return None;
                }
            }
            Target::RelBits(b) => {
                let zmag = z[i].norm_sq().nth_root(2, 64, Round::Floor);
                let bound = zmag.mul(&Dyadic::pow2(-(b as i64)));
                if !r.is_zero() && r.cmp(&bound) == Ordering::Greater {
                    return None;
                }
            }
        }
    }
    // pairwise disjoint
    for i in 0..k {
        for j in (i + 1)..k {
            let dsq = z[i].sub(&z[j]).norm_sq();
            let rsum = radii[i].add(&radii[j]);
            if dsq.cmp(&rsum.mul(&rsum)) != Ordering::Greater {
                return None;
            }
        }
    }
    // reality resolution
    let mut disks = Vec::with_capacity(k);
    for i in 0..k {
        let touches_axis = z[i].im.abs().cmp(&radii[i]) != Ordering::Greater;
        let is_real = if touches_axis {
            // mirror disk must avoid every other disk
            let mut clear = true;
            for j in 0..k {
                if j == i {
                    continue;
                }
                let dre = z[i].re.sub(&z[j].re);
                let dim = z[i].im.neg().sub(&z[j].im);
                let dsq = dre.mul(&dre).add(&dim.mul(&dim));
                let rsum = radii[i].add(&radii[j]);
                if dsq.cmp(&rsum.mul(&rsum)) != Ordering::Greater {
                    clear = false;
                    break;
                }
            }
            if !clear {
                return None; // undecided; refine further
            }
            true
        } else {
            false
        };
        if is_real {
            disks.push(RootDisk {
                center_re: z[i].re.clone(),
                center_im: Dyadic::zero(),
                radius: radii[i].add(&z[i].im.abs()),
                is_real: true,
            });
        } else {
            disks.push(RootDisk {
                center_re: z[i].re.clone(),
                center_im: z[i].im.clone(),
                radius: radii[i].clone(),
                is_real: false,
            });
        }
    }
    let _ = poly;
    Some(disks)
}

fn finish_spectrum(poly: &IntPoly, mut disks: Vec<RootDisk>) -> RootSpectrum {
    // canonical deterministic order: modulus descending, with roots of
    // indistinguishable modulus (overlapping certified modulus enclosures,
    // e.g. conjugate pairs) clustered and ordered by angle class
    // (positive real, upper half, negative real, lower half), then real part
    // descending, then imaginary part descending.
    disks.sort_by(|a, b| {
        let ma = a.center_re.mul(&a.center_re).add(&a.center_im.mul(&a.center_im));
        let mb = b.center_re.mul(&b.center_re).add(&b.center_im.mul(&b.center_im));
        mb.cmp(&ma)
    });
    let n = disks.len();
    let mut ordered: Vec<RootDisk> = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && disks[j].modulus(64).intersects(&disks[j - 1].modulus(64)) {
            j += 1;
        }
        let mut group: Vec<RootDisk> = disks[i..j].to_vec();
        group.sort_by(|a, b| {
            angle_class(a)
                .cmp(&angle_class(b))
                .then_with(|| b.center_re.cmp(&a.center_re))
                .then_with(|| b.center_im.cmp(&a.center_im))
        });
        ordered.extend(group);
        i = j;
    }
    RootSpectrum {
        poly: poly.clone(),
        roots: ordered,
        squarefree: true,
        modulus_order: (0..n).collect(),
    }
}

fn angle_class(d: &RootDisk) -> u8 {
    if d.is_real {
        if d.center_re.is_negative() {
            2
        } else {
            0
        }
    } else if d.center_im.is_positive() {
        1
    } else {
        3
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactreal::test_support::decimal_enclosure;

    fn spectrum(s: &str, rel_bits: u32) -> RootSpectrum {
        let poly = IntPoly::parse(s).unwrap();
        isolate_roots_rel(&poly, rel_bits, &PrecisionPolicy::default()).unwrap()
    }

    #[test]
    fn golden_ratio_quadratic() {
        // independent oracle: (1 +/- sqrt5)/2
        let spec = spectrum("x^2-x-1", 80);
        assert_eq!(spec.roots.len(), 2);
        let phi = decimal_enclosure(
            "1.61803398874989484820458683436563811772030917980576286213545",
            200,
        );
        let psi = decimal_enclosure(
            "-0.61803398874989484820458683436563811772030917980576286213545",
            200,
        );
        assert!(spec.roots[0].is_real);
        assert!(spec.roots[1].is_real);
        assert!(spec.roots[0].re_enclosure(128).intersects(&phi));
        assert!(spec.roots[1].re_enclosure(128).intersects(&psi));
    }

    #[test]
    fn plastic_cubic_with_complex_pair() {
        let spec = spectrum("x^3-x-1", 80);
        assert_eq!(spec.roots.len(), 3);
        let rho = decimal_enclosure(
            "1.32471795724474602596090885447809734073440405690173336453401508",
            200,
        );
        assert!(spec.roots[0].is_real);
        assert!(spec.roots[0].re_enclosure(128).intersects(&rho));
        assert!(!spec.roots[1].is_real);
        assert!(!spec.roots[2].is_real);
        // complex pair modulus = rho^(-1/2) = 0.868836961832709301806...
        let m = decimal_enclosure("0.868836961832709301806569964191097222477465662014499316926087", 200);
        assert!(spec.roots[1].modulus(128).intersects(&m));
        assert!(spec.roots[2].modulus(128).intersects(&m));
        // canonical order: upper half before lower half
        assert!(spec.roots[1].center_im.is_positive());
        assert!(spec.roots[2].center_im.is_negative());
    }

    #[test]
    fn all_real_cubic() {
        let spec = spectrum("x^3-3*x^2+1", 80);
        let expected = [
            "2.87938524157181676810821855464946293987241626852892926618057",
            "0.652703644666139302296566746461370407999248645631861225527517",
            "-0.532088886237956070404785301110833347871664914160790491708091",
        ];
        assert_eq!(spec.roots.len(), 3);
        for (root, digits) in spec.roots.iter().zip(expected.iter()) {
            assert!(root.is_real);
            assert!(root.re_enclosure(128).intersects(&decimal_enclosure(digits, 200)));
        }
    }

    #[test]
    fn disks_disjoint_and_vieta_product() {
        for s in ["x^2-x-1", "x^3-x-1", "x^3-3*x^2+1", "x^4-5*x^3+3", "x^4-x^3-1", "x^5-2*x+1"] {
            let spec = spectrum(s, 64);
            let poly = IntPoly::parse(s).unwrap();
            assert_eq!(spec.roots.len(), poly.degree());
            for i in 0..spec.roots.len() {
                for j in (i + 1)..spec.roots.len() {
                    let dsq = spec.roots[i].dist_sq_to(&spec.roots[j]);
                    let rsum = spec.roots[i].radius.add(&spec.roots[j].radius);
                    assert!(
                        dsq.cmp(&rsum.mul(&rsum)) == Ordering::Greater,
                        "disks {} and {} overlap for {}",
                        i,
                        j,
                        s
                    );
                }
            }
            // Vieta: product of roots = (-1)^k a_0/a_k
            let prec = 128;
            let mut prod = ComplexEnclosure::from_real(Enclosure::from_i64(1, prec));
            for r in &spec.roots {
                prod = prod.mul(&r.complex_enclosure(prec));
            }
            let k = poly.degree();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let expect = Enclosure::from_ratio(
                &(poly.constant() * num_bigint::BigInt::from(sign)),
                poly.leading(),
                prec,
            );
            assert!(prod.re.intersects(&expect), "Vieta failed for {}", s);
            assert!(prod.im.contains_zero(), "Vieta product not real for {}", s);
        }
    }

    #[test]
    fn rejects_non_squarefree() {
        let poly = IntPoly::parse("x^2-2*x+1").unwrap();
        assert!(matches!(
            isolate_roots(&poly, &Dyadic::pow2(-10), &PrecisionPolicy::default()),
            Err(Error::NotSquarefree)
        ));
    }

    #[test]
    fn linear_polynomial_fast_path() {
        let spec = spectrum("3*x-2", 60);
        assert_eq!(spec.roots.len(), 1);
        assert!(spec.roots[0].is_real);
        let expect = Enclosure::from_ratio(&2.into(), &3.into(), 128);
        assert!(spec.roots[0].re_enclosure(64).intersects(&expect));
    }

    #[test]
    fn roots_with_zero_constant_term() {
        let spec = spectrum("x^2-x", 60);
        assert_eq!(spec.roots.len(), 2);
        assert!(spec.roots[0].re_enclosure(64).contains_dyadic(&Dyadic::one()));
        assert!(spec.roots[1].re_enclosure(64).contains_dyadic(&Dyadic::zero()));
    }

    #[test]
    fn equal_modulus_quartet_is_ordered() {
        // x^4+1: all four roots on the unit circle
        let spec = spectrum("x^4+1", 64);
        assert_eq!(spec.roots.len(), 4);
        for r in &spec.roots {
            assert!(!r.is_real);
            assert!(r.modulus(96).contains_dyadic(&Dyadic::one()));
        }
        // order: two upper-half roots (re desc), then two lower-half
        assert!(spec.roots[0].center_im.is_positive());
        assert!(spec.roots[1].center_im.is_positive());
        assert!(spec.roots[0].center_re.cmp(&spec.roots[1].center_re) == Ordering::Greater);
        assert!(spec.roots[2].center_im.is_negative());
        assert!(spec.roots[3].center_im.is_negative());
    }
}
