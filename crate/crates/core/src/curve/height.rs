//! Naive and canonical heights on `E_d : dy² = x³ − x`.
//!
//! Normalization: `ĥ(P) = ½ · lim 4^{−n} h_x(2ⁿP)` with
//! `h_x = log max(|num x|, den x)`. Under this convention `ĥ` vanishes
//! exactly on torsion and `η_d ≤ d^{1/8+α}` corresponds to points of naive
//! x-height ⪅ `(1/4+2α)·log d`.
//!
//! # How the limit is evaluated
//!
//! On every twist the x-coordinate doubles through the same rational map
//! `x ↦ N(x)/M(x)` with `N = (x² + D²)²`, `M = 4x(x² − D²)` (`D = 1` on the
//! twist model itself, `D = d` on the integral model `Y² = X³ − d²X`).
//! Writing `x_n = A_n/B_n` in lowest terms and letting `g_{n+1}` be the gcd
//! removed when reducing `(N(A_n,B_n), M(A_n,B_n))`, the naive heights
//! telescope:
//!
//! ```text
//! lim 4^{−n} h_x(x_n) = h_x(x_0) + Σ_{n≥0} 4^{−(n+1)} (μ_n − log g_{n+1})
//! ```
//!
//! where `μ_n = log max(|N|,|M|)` evaluated on the pair normalized to unit
//! size. The two summands are computed independently:
//!
//! * `μ_n` from a dyadic *interval* iteration of the normalized pair — exact
//!   integer endpoints, outward rounding, so the accumulated sum carries a
//!   certified error bound;
//! * `g_{n+1}` exactly: the gcd always divides the resultant `4096·D¹²` of
//!   `N` and `M`, so it is supported on the primes dividing `2D`, and each
//!   such prime is tracked modulo a high prime power.
//!
//! Both tails are geometric with ratio 1/4 and explicit constants
//! (`0 ≤ μ_n ≤ log max((1+D²)², 4D(D+1))`, `log g ≤ log(4096·D¹²)`), which
//! gives the certified truncation bound. Iterating the exact doubling
//! instead would need numerator sizes of order `4^n` bits for the same
//! certification and cannot reach `tol = 10⁻⁸`; the partial exact-doubling
//! value is kept as an independent cross-check (see
//! [`naive_doubling_estimate`]).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::curve::point::{frac_magnitudes, CurvePoint};
use crate::curve::twist::Twist;
use crate::error::{Error, Result};
use crate::Rat;

/// A real value together with a certified absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct HeightValue {
    pub value: f64,
    pub precision: f64,
}

const LN_2: f64 = std::f64::consts::LN_2;
/// Absolute slack charged per logarithm evaluation.
const LN_SLACK: f64 = 2e-12;

/// `ln` of a positive big integer via its top 53 bits.
fn ln_big(n: &BigUint) -> f64 {
    debug_assert!(!n.is_zero());
    let bits = n.bits();
    if bits <= 53 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 53;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * LN_2
}

/// `log max(|num x|, den x)` of an affine point, `x` in lowest terms.
pub fn naive_x_height(p: &CurvePoint) -> Result<f64> {
    let x = p.x()?;
    let (num, den) = frac_magnitudes(x);
    let m = num.max(den);
    Ok(if m.is_one() { 0.0 } else { ln_big(&m) })
}

/// Exact integer interval, endpoints inclusive.
#[derive(Clone, Debug)]
struct IInt {
    lo: BigInt,
    hi: BigInt,
}

impl IInt {

    fn add(&self, o: &IInt) -> IInt {
        IInt { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn sub(&self, o: &IInt) -> IInt {
        IInt { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    fn mul(&self, o: &IInt) -> IInt {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        IInt { lo, hi }
    }

    fn sq(&self) -> IInt {
        if !self.lo.is_negative() {
            IInt { lo: &self.lo * &self.lo, hi: &self.hi * &self.hi }
        } else if !self.hi.is_positive() {
            IInt { lo: &self.hi * &self.hi, hi: &self.lo * &self.lo }
        } else {
            let a = &self.lo * &self.lo;
            let b = &self.hi * &self.hi;
            IInt { lo: BigInt::zero(), hi: a.max(b) }
        }
    }

    /// Multiply by a non-negative constant.
    fn scale(&self, c: &BigInt) -> IInt {
        debug_assert!(!c.is_negative());
        IInt { lo: &self.lo * c, hi: &self.hi * c }
    }

    /// Componentwise interval of `max(a, b)`.
    fn max_with(&self, o: &IInt) -> IInt {
        IInt {
            lo: self.lo.clone().max(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
        }
    }

    /// Outer bound of `(self << shift) / s` for a positive interval `s`.
    fn div_scale(&self, shift: u64, s: &IInt) -> IInt {
        debug_assert!(s.lo.is_positive());
        let a: BigInt = &self.lo << shift;
        let b: BigInt = &self.hi << shift;
        let lo = a.div_floor(&s.lo).min(a.div_floor(&s.hi));
        let hi = b.div_ceil(&s.lo).max(b.div_ceil(&s.hi));
        IInt { lo, hi }
    }
}

/// One tracked prime `p | 2D`: residues of the reduced pair mod `p^κ`.
struct Track {
    p: u64,
    kappa: u32,
    pk: BigUint,
    a: BigUint,
    b: BigUint,
}

impl Track {
    fn new(p: u64, kappa: u32, num: &BigInt, den: &BigInt) -> Track {
        let pk = BigUint::from(p).pow(kappa);
        let m = BigInt::from(pk.clone());
        Track {
            p,
            kappa,
            pk,
            a: num.mod_floor(&m).to_biguint().unwrap(),
            b: den.mod_floor(&m).to_biguint().unwrap(),
        }
    }

    /// Evaluate the duplication pair mod `p^κ` and read off valuations.
    /// Returns `(N mod p^κ, M mod p^κ, v_p(N), v_p(M))`; `None` when a
    /// residue vanishes entirely (precision exhausted, caller must retry).
    fn eval(&self, d_big: &BigUint, d2: &BigUint) -> Option<(BigUint, BigUint, u32, u32)> {
        let pk = &self.pk;
        let a2 = (&self.a * &self.a) % pk;
        let b2 = (&self.b * &self.b) % pk;
        let inner = (&a2 + d2 * &b2) % pk;
        let nn = (&inner * &inner) % pk;
        let db = (d_big * &self.b) % pk;
        let diff = ((&self.a + pk) - &db) % pk;
        let sum = (&self.a + &db) % pk;
        let mm = (BigUint::from(4u32) * &self.a % pk * &self.b % pk * diff % pk * sum) % pk;
        let en = val_p(&nn, self.p)?;
        let em = val_p(&mm, self.p)?;
        Some((nn, mm, en, em))
    }
}

/// p-adic valuation of a residue; `None` if the residue is zero.
fn val_p(r: &BigUint, p: u64) -> Option<u32> {
    if r.is_zero() {
        return None;
    }
    let p = BigUint::from(p);
    let mut v = 0u32;
    let mut r = r.clone();
    loop {
        let (q, rem) = r.div_rem(&p);
        if !rem.is_zero() {
            return Some(v);
        }
        r = q;
        v += 1;
    }
}

fn mod_inverse(a: &BigUint, m: &BigUint) -> BigUint {
    let e = BigInt::from(a.clone()).extended_gcd(&BigInt::from(m.clone()));
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(&BigInt::from(m.clone())).to_biguint().unwrap()
}

struct EngineOutcome {
    mid: f64,
    half_width: f64,
}

enum Attempt {
    Done(EngineOutcome),
    Retry,
}

/// `lim 4^{−n} h_x(xₙ)` under the duplication map with parameter `D`,
/// starting from a non-torsion rational `x₀`. Returns `(value, precision)`.
fn height_limit(d_model: u64, x0: &Rat, tol: f64) -> Result<(f64, f64)> {
    let d_f = d_model as f64;
    let mu_max = ((1.0 + d_f * d_f).powi(2)).max(4.0 * d_f * (d_f + 1.0)).ln();
    let ln_res = 4096f64.ln() + 12.0 * d_f.ln();
    // geometric tails: Σ_{n≥K} 4^{−(n+1)} μ ≤ 4^{−K} μ_max/3, same for log g
    let tail_budget = tol * 0.4;
    let need = (mu_max + ln_res) / (3.0 * tail_budget);
    let k_steps = (need.ln() / (4f64).ln()).ceil().max(1.0) as u32;
    if k_steps > 200 {
        return Err(Error::DepthExceeded);
    }
    let v_res_2 = 12 + 12 * u32::from(d_model % 2 == 0);
    let mut bits: u64 = 192;
    let mut kappa_scale: u32 = 1;
    for _ in 0..6 {
        let kappa0 = |p: u64| {
            let v_res = if p == 2 { v_res_2 } else { 12 };
            (64 + (k_steps + 2) * (v_res + 4)) * kappa_scale
        };
        match run_engine(d_model, x0, k_steps, bits, &kappa0, mu_max, ln_res) {
            Ok(Attempt::Done(out)) => {
                let precision = out.half_width;
                if precision <= tol {
                    return Ok((out.mid, precision));
                }
                // interval too wide: more bits
            }
            Ok(Attempt::Retry) => {}
            Err(e) => return Err(e),
        }
        bits *= 2;
        kappa_scale *= 2;
    }
    Err(Error::DepthExceeded)
}

fn run_engine(
    d_model: u64,
    x0: &Rat,
    k_steps: u32,
    bits: u64,
    kappa0: &dyn Fn(u64) -> u32,
    mu_max: f64,
    ln_res: f64,
) -> Result<Attempt> {
    let num = x0.numer().clone();
    let den = x0.denom().clone();
    let m0 = num.magnitude().clone().max(den.magnitude().clone());
    if m0.is_one() {
        return Err(Error::TorsionPoint); // x ∈ {0, ±1} is torsion
    }
    let h0 = ln_big(&m0);

    // bad primes: 2 and the odd primes dividing D
    let mut bad = vec![2u64];
    for (p, _) in crate::factor::factorize(d_model) {
        if p != 2 {
            bad.push(p);
        }
    }
    let mut tracks: Vec<Track> =
        bad.iter().map(|&p| Track::new(p, kappa0(p), &num, &den)).collect();

    let d_big_s = BigInt::from(d_model);
    let d2_s = &d_big_s * &d_big_s;
    let d_big_u = BigUint::from(d_model);
    let d2_u = &d_big_u * &d_big_u;

    // normalized dyadic pair: (u, v) = 2^bits · (A, B)/max(|A|, B)
    let m0_int = BigInt::from(m0);
    let shifted_num: BigInt = &num << bits;
    let shifted_den: BigInt = &den << bits;
    let mut u = IInt {
        lo: shifted_num.div_floor(&m0_int),
        hi: shifted_num.div_ceil(&m0_int),
    };
    let mut v = IInt {
        lo: shifted_den.div_floor(&m0_int),
        hi: shifted_den.div_ceil(&m0_int),
    };

    let four_b_ln2 = 4.0 * bits as f64 * LN_2;
    let mut sum_lo = 0.0f64;
    let mut sum_hi = 0.0f64;
    let mut weight = 1.0f64; // 4^{−(n+1)} at step n

    for _ in 0..k_steps {
        weight *= 0.25;

        let npoly = u.sq().add(&v.sq().scale(&d2_s)).sq();
        let dv = v.scale(&d_big_s);
        let mpoly = u
            .mul(&v)
            .mul(&u.sub(&dv))
            .mul(&u.add(&dv))
            .scale(&BigInt::from(4));
        let s = npoly.max_with(&mpoly);
        if !s.lo.is_positive() {
            return Ok(Attempt::Retry);
        }
        let mu_lo = ln_big(s.lo.magnitude()) - four_b_ln2 - LN_SLACK;
        let mu_hi = ln_big(s.hi.magnitude()) - four_b_ln2 + LN_SLACK;

        // exact gcd content at the tracked primes
        let mut evals = Vec::with_capacity(tracks.len());
        let mut g_log = 0.0f64;
        for t in &tracks {
            match t.eval(&d_big_u, &d2_u) {
                Some((nn, mm, en, em)) => {
                    let vp = en.min(em);
                    g_log += vp as f64 * (t.p as f64).ln();
                    evals.push((nn, mm, vp));
                }
                None => return Ok(Attempt::Retry),
            }
        }

        sum_lo += weight * (mu_lo - g_log - LN_SLACK);
        sum_hi += weight * (mu_hi - g_log + LN_SLACK);

        // advance the real pair
        let s_next = s;
        u = npoly.div_scale(bits, &s_next);
        v = mpoly.div_scale(bits, &s_next);

        // advance the p-adic tracks: divide by the full gcd
        let strips: Vec<(u64, u32)> =
            tracks.iter().zip(&evals).map(|(t, e)| (t.p, e.2)).collect();
        for (i, t) in tracks.iter_mut().enumerate() {
            let (nn, mm, vp) = &evals[i];
            if t.kappa < vp + 16 {
                return Ok(Attempt::Retry);
            }
            let strip = BigUint::from(t.p).pow(*vp);
            t.kappa -= vp;
            t.pk = &t.pk / &strip;
            let mut a = (nn / &strip) % &t.pk;
            let mut b = (mm / &strip) % &t.pk;
            // divide by the other primes' content (invertible mod p^κ)
            let mut other = BigUint::one();
            for &(q, vq) in &strips {
                if q != t.p && vq > 0 {
                    other = other * BigUint::from(q).pow(vq) % &t.pk;
                }
            }
            if !other.is_one() {
                let inv = mod_inverse(&other, &t.pk);
                a = a * &inv % &t.pk;
                b = b * &inv % &t.pk;
            }
            t.a = a;
            t.b = b;
        }
    }

    // geometric truncation tails (weight is 4^{−K} after the loop)
    let tail_hi = weight * mu_max / 3.0;
    let tail_lo = -weight * ln_res / 3.0;
    let lo = h0 - LN_SLACK + sum_lo + tail_lo;
    let hi = h0 + LN_SLACK + sum_hi + tail_hi;
    Ok(Attempt::Done(EngineOutcome {
        mid: 0.5 * (lo + hi),
        half_width: 0.5 * (hi - lo) + 1e-13,
    }))
}

/// Canonical height `ĥ(P) = ½ lim 4^{−n} h_x(2ⁿP)` with certified absolute
/// error at most `tol`.
///
/// Torsion inputs return exactly zero. Off-curve points are rejected.
/// Tolerances below ~10⁻¹¹ exceed what the f64 accumulation certifies and
/// fail with `DepthExceeded` rather than returning an uncertified value.
pub fn canonical_height(tw: &Twist, p: &CurvePoint, tol: f64) -> Result<HeightValue> {
    check_tol(tol)?;
    require_member(tw, p)?;
    if tw.is_torsion(p) {
        return Ok(HeightValue { value: 0.0, precision: tol });
    }
    let x = p.x()?;
    let (l, prec) = height_limit(1, x, tol * 2.0)?;
    Ok(HeightValue { value: 0.5 * l, precision: 0.5 * prec })
}

/// The same limit computed through X-heights on the integral model
/// `Y² = X³ − d²X` (map `(x, y) ↦ (dx, d²y)`). The bounded coordinate change
/// vanishes in the `4^{−n}` limit, so this must agree with
/// [`canonical_height`]; it serves as an independent route for verification.
pub fn canonical_height_w_model(tw: &Twist, p: &CurvePoint, tol: f64) -> Result<HeightValue> {
    check_tol(tol)?;
    require_member(tw, p)?;
    if tw.is_torsion(p) {
        return Ok(HeightValue { value: 0.0, precision: tol });
    }
    let xw = p.x()? * Rat::from_integer(BigInt::from(tw.d()));
    let (l, prec) = height_limit(tw.d(), &xw, tol * 2.0)?;
    Ok(HeightValue { value: 0.5 * l, precision: 0.5 * prec })
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol >= 1e-30) {
        return Err(Error::InvalidParameter(format!("tol = {tol} must be ≥ 1e-30")));
    }
    Ok(())
}

fn require_member(tw: &Twist, p: &CurvePoint) -> Result<()> {
    if tw.contains(p) {
        Ok(())
    } else {
        match p {
            CurvePoint::Infinity => Ok(()),
            CurvePoint::Affine { x, y } => Err(Error::OffCurve {
                d: tw.d(),
                x: crate::curve::point::rat_to_string(x),
                y: crate::curve::point::rat_to_string(y),
            }),
        }
    }
}

/// Partial value of the defining limit from `depth` exact doublings:
/// `4^{−depth}·h_x(2^depth P)`, with the certified band
/// `|limit − value| ≤ 4^{−depth}·log(4096)/3` for the twist model.
///
/// Slowly convergent; used as an independent oracle against the series
/// evaluation at coarse tolerance.
pub fn naive_doubling_estimate(tw: &Twist, p: &CurvePoint, depth: u32) -> Result<(f64, f64)> {
    require_member(tw, p)?;
    if tw.is_torsion(p) {
        return Err(Error::TorsionPoint);
    }
    let mut q = p.clone();
    for _ in 0..depth {
        q = tw.double(&q)?;
    }
    let h = naive_x_height(&q)?;
    let w = 0.25f64.powi(depth as i32);
    Ok((w * h, w * 4096f64.ln() / 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::point::rat;

    fn pt(xn: i64, xd: i64, yn: i64, yd: i64) -> CurvePoint {
        CurvePoint::affine(rat(xn, xd), rat(yn, yd))
    }

    #[test]
    fn naive_height_examples() {
        assert!((naive_x_height(&pt(-4, 5, 6, 25)).unwrap() - 5f64.ln()).abs() < 1e-14);
        assert_eq!(naive_x_height(&pt(0, 1, 0, 1)).unwrap(), 0.0);
        assert!((naive_x_height(&pt(5, 4, 3, 8)).unwrap() - 5f64.ln()).abs() < 1e-14);
        assert!(naive_x_height(&CurvePoint::Infinity).is_err());
    }

    #[test]
    fn torsion_height_is_zero() {
        let e5 = Twist::new(5).unwrap();
        for t in e5.torsion_points() {
            let h = canonical_height(&e5, &t, 1e-10).unwrap();
            assert_eq!(h.value, 0.0);
            assert!(h.value <= h.precision);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let e5 = Twist::new(5).unwrap();
        assert!(canonical_height(&e5, &pt(1, 1, 1, 1), 1e-8).is_err());
        assert!(canonical_height(&e5, &pt(-4, 5, 6, 25), 1e-40).is_err());
    }

    #[test]
    fn generator_d5_matches_naive_limit() {
        let e5 = Twist::new(5).unwrap();
        let p = pt(-4, 5, 6, 25);
        let h = canonical_height(&e5, &p, 1e-10).unwrap();
        assert!(h.precision <= 1e-10);
        // independent oracle: exact doubling partial value with its own band
        let (l8, band8) = naive_doubling_estimate(&e5, &p, 8).unwrap();
        assert!(
            (2.0 * h.value - l8).abs() <= band8 + 1e-10,
            "series {} vs doubling partial {} ± {}",
            2.0 * h.value,
            l8,
            band8
        );
    }

    #[test]
    fn quadraticity_d5() {
        let e5 = Twist::new(5).unwrap();
        let p = pt(-4, 5, 6, 25);
        let p2 = e5.double(&p).unwrap();
        let tol = 1e-9;
        let h1 = canonical_height(&e5, &p, tol).unwrap();
        let h2 = canonical_height(&e5, &p2, tol).unwrap();
        assert!(
            (h2.value - 4.0 * h1.value).abs() <= 5.0 * tol,
            "ĥ(2P) = {} vs 4ĥ(P) = {}",
            h2.value,
            4.0 * h1.value
        );
    }

    #[test]
    fn model_invariance_small_d() {
        let tol = 1e-9;
        for (d, p) in [(5u64, pt(-4, 5, 6, 25)), (6, pt(2, 1, 1, 1))] {
            let tw = Twist::new(d).unwrap();
            let a = canonical_height(&tw, &p, tol).unwrap();
            let b = canonical_height_w_model(&tw, &p, tol).unwrap();
            assert!(
                (a.value - b.value).abs() <= 2.0 * tol,
                "d={d}: twist-model {} vs integral-model {}",
                a.value,
                b.value
            );
        }
    }

    #[test]
    fn torsion_translation_invariance() {
        let e5 = Twist::new(5).unwrap();
        let p = pt(-4, 5, 6, 25);
        let tol = 1e-9;
        let h = canonical_height(&e5, &p, tol).unwrap();
        for t in &e5.torsion_points()[1..] {
            let q = e5.add(&p, t).unwrap();
            let hq = canonical_height(&e5, &q, tol).unwrap();
            assert!(
                (hq.value - h.value).abs() <= 2.0 * tol,
                "translate by {t}: {} vs {}",
                hq.value,
                h.value
            );
        }
    }

    #[test]
    fn precision_tracks_tolerance() {
        let e5 = Twist::new(5).unwrap();
        let p = pt(-4, 5, 6, 25);
        for tol in [1e-6, 1e-8, 1e-10] {
            let h = canonical_height(&e5, &p, tol).unwrap();
            assert!(h.precision <= tol);
            assert!(h.value > 0.0);
        }
    }
}
