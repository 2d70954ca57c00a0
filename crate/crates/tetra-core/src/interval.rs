//! Certified real intervals with dyadic endpoints.
//!
//! An [`Interval`] at precision `p` holds integers `lo <= hi` and represents
//! the real segment `[lo/2^p, hi/2^p]`. Every operation rounds outward, so
//! the true value always stays inside.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Starting precision for sign certification.
pub const START_PRECISION: u32 = 128;
/// Default upper limit for sign certification.
pub const DEFAULT_PRECISION_CAP: u32 = 4096;
/// Environment variable overriding the precision cap.
pub const PRECISION_CAP_ENV: &str = "TETRA_PRECISION_CAP";

/// The precision cap in bits, read from [`PRECISION_CAP_ENV`] when set.
pub fn precision_cap() -> u32 {
    std::env::var(PRECISION_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v: &u32| v >= 16)
        .unwrap_or(DEFAULT_PRECISION_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub prec: u32,
}

fn floor_shift(x: &BigInt, bits: u32) -> BigInt {
    // BigInt >> rounds toward negative infinity
    x >> bits
}

fn ceil_shift(x: &BigInt, bits: u32) -> BigInt {
    -((-x) >> bits)
}

impl Interval {
    pub fn zero(prec: u32) -> Self {
        Interval { lo: BigInt::zero(), hi: BigInt::zero(), prec }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        let x = BigInt::from(v) << prec;
        Interval { lo: x.clone(), hi: x, prec }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let num = r.numer() << prec;
        let (lo, hi) = div_outward(&num, r.denom());
        Interval { lo, hi, prec }
    }

    /// A point interval widened by `ulps` units in the last place.
    pub fn around(center: BigInt, ulps: u64, prec: u32) -> Self {
        let e = BigInt::from(ulps);
        Interval { lo: &center - &e, hi: center + e, prec }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        debug_assert_eq!(self.prec, o.prec);
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, prec: self.prec }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        debug_assert_eq!(self.prec, o.prec);
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo, prec: self.prec }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        debug_assert_eq!(self.prec, o.prec);
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mn = c.iter().min().unwrap();
        let mx = c.iter().max().unwrap();
        Interval { lo: floor_shift(mn, self.prec), hi: ceil_shift(mx, self.prec), prec: self.prec }
    }

    pub fn mul_int(&self, n: &BigInt) -> Interval {
        let a = &self.lo * n;
        let b = &self.hi * n;
        if n.is_negative() {
            Interval { lo: b, hi: a, prec: self.prec }
        } else {
            Interval { lo: a, hi: b, prec: self.prec }
        }
    }

    /// Division by a positive integer.
    pub fn div_pos_int(&self, d: &BigInt) -> Interval {
        debug_assert!(d.is_positive());
        Interval { lo: self.lo.div_floor(d), hi: ceil_div(&self.hi, d), prec: self.prec }
    }

    pub fn mul_rational(&self, r: &BigRational) -> Interval {
        self.mul_int(r.numer()).div_pos_int(r.denom())
    }

    /// Widens both ends by `e` units in the last place.
    pub fn widen(&self, e: &BigInt) -> Interval {
        Interval { lo: &self.lo - e, hi: &self.hi + e, prec: self.prec }
    }

    /// Strict sign if the interval excludes zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn width(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// Exact rational endpoints.
    pub fn bounds(&self) -> (BigRational, BigRational) {
        let den = BigInt::one() << self.prec;
        (BigRational::new(self.lo.clone(), den.clone()), BigRational::new(self.hi.clone(), den))
    }

    /// Midpoint as f64, for display only.
    pub fn approx(&self) -> f64 {
        let mid: BigInt = (&self.lo + &self.hi) >> 1u32;
        let shift = self.prec.saturating_sub(60);
        let m: BigInt = mid >> shift;
        let v: f64 = m.to_string().parse().unwrap_or(f64::NAN);
        v / 2f64.powi((self.prec - shift) as i32)
    }
}

fn ceil_div(a: &BigInt, d: &BigInt) -> BigInt {
    -((-a).div_floor(d))
}

fn div_outward(n: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    (n.div_floor(d), ceil_div(n, d))
}

/// Bounds for atan(1/n) from the alternating series, at precision `w`.
fn atan_inv(n: u64, w: u32) -> Interval {
    let one = BigInt::one() << w;
    let n2 = BigInt::from(n * n);
    let mut power = BigInt::from(n); // n^(2k+1)
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let term = &one / (&power * BigInt::from(2 * k + 1));
        if term.is_zero() {
            break;
        }
        if k.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        power *= &n2;
        k += 1;
    }
    // each truncated division loses < 1 ulp; the omitted tail is < 1 ulp
    Interval::around(sum, k + 2, w)
}

/// Bounds for atanh(p/q) with 0 <= p/q <= 1/3, at precision `w`.
fn atanh_ratio(p: &BigInt, q: &BigInt, w: u32) -> Interval {
    let one = BigInt::one() << w;
    let (p2, q2) = (p * p, q * q);
    let mut num = p.clone();
    let mut den = q.clone();
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let term = (&one * &num) / (&den * BigInt::from(2 * k + 1));
        if term.is_zero() {
            break;
        }
        sum += term;
        num *= &p2;
        den *= &q2;
        k += 1;
    }
    // truncation < 1 ulp per term; the tail is below 2 ulps since the
    // terms shrink by at least 1/9
    Interval { lo: sum.clone(), hi: sum + BigInt::from(k + 3), prec: w }
}

/// Natural logarithm of a positive rational.
pub fn ln_rational(r: &BigRational, prec: u32) -> Interval {
    assert!(r.is_positive(), "logarithm of a non-positive number");
    let w = prec + 16;
    // r = 2^e·y with 1 <= y < 2
    let mut e = r.numer().bits() as i64 - r.denom().bits() as i64;
    let two = BigRational::from_integer(BigInt::from(2));
    let pow2 = |e: i64| {
        if e >= 0 {
            BigRational::from_integer(BigInt::one() << e as u32)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-e) as u32)
        }
    };
    let mut y = r / pow2(e);
    while y >= two {
        e += 1;
        y = r / pow2(e);
    }
    while y < BigRational::one() {
        e -= 1;
        y = r / pow2(e);
    }
    // ln y = 2 atanh((y-1)/(y+1)), and (y-1)/(y+1) < 1/3
    let (n, d) = (y.numer().clone(), y.denom().clone());
    let ln_y = atanh_ratio(&(&n - &d), &(&n + &d), w).mul_int(&BigInt::from(2));
    let ln2 = atanh_ratio(&BigInt::one(), &BigInt::from(3), w).mul_int(&BigInt::from(2));
    let total = ln_y.add(&ln2.mul_int(&BigInt::from(e)));
    Interval { lo: floor_shift(&total.lo, 16), hi: ceil_shift(&total.hi, 16), prec }
}

impl Interval {
    /// Enclosure of ln over the interval, if it is strictly positive.
    pub fn ln(&self) -> Option<Interval> {
        if !self.lo.is_positive() {
            return None;
        }
        let (lo, hi) = self.bounds();
        Some(Interval { lo: ln_rational(&lo, self.prec).lo, hi: ln_rational(&hi, self.prec).hi, prec: self.prec })
    }
}

/// π by Machin's formula, `16·atan(1/5) - 4·atan(1/239)`.
pub fn pi(prec: u32) -> Interval {
    let w = prec + 16;
    let a = atan_inv(5, w).mul_int(&BigInt::from(16));
    let b = atan_inv(239, w).mul_int(&BigInt::from(4));
    let v = a.sub(&b);
    Interval { lo: floor_shift(&v.lo, 16), hi: ceil_shift(&v.hi, 16), prec }
}

/// Bounds for (cos x, sin x) for a point `x` with |x| <= 4, by Taylor
/// series with an explicit remainder bound.
fn cos_sin_point(x: &Interval) -> (Interval, Interval) {
    let prec = x.prec;
    let x2 = x.mul(x);
    let mut cos = Interval::from_int(1, prec);
    let mut sin = x.clone();
    let mut term_c = Interval::from_int(1, prec);
    let mut term_s = x.clone();
    let mut k: u64 = 1;
    let tiny = BigInt::from(4);
    loop {
        term_c = term_c.mul(&x2).div_pos_int(&BigInt::from((2 * k - 1) * (2 * k))).neg();
        term_s = term_s.mul(&x2).div_pos_int(&BigInt::from((2 * k) * (2 * k + 1))).neg();
        cos = cos.add(&term_c);
        sin = sin.add(&term_s);
        k += 1;
        let small = |t: &Interval| t.lo.abs() <= tiny && t.hi.abs() <= tiny;
        if k > 8 && small(&term_c) && small(&term_s) {
            break;
        }
    }
    // the next terms form an alternating series with decreasing size once
    // 2k exceeds |x|, so a few ulps bound the tail
    let e = 2 * tiny.clone() + 2;
    (cos.widen(&e), sin.widen(&e))
}

type TrigTable = (Vec<Interval>, Vec<Interval>);

fn trig_cache() -> &'static Mutex<HashMap<(u32, u32), std::sync::Arc<TrigTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), std::sync::Arc<TrigTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Certified bounds for `cos(2πj/M)` and `sin(2πj/M)`, `j = 0..M`.
pub fn roots_of_unity(m: u32, prec: u32) -> std::sync::Arc<TrigTable> {
    if let Some(t) = trig_cache().lock().unwrap().get(&(m, prec)) {
        return t.clone();
    }
    let w = prec + 32;
    let two_pi = pi(w).mul_int(&BigInt::from(2));
    let mut cos = Vec::with_capacity(m as usize);
    let mut sin = Vec::with_capacity(m as usize);
    for j in 0..m {
        // reduce to an angle in [0, π]
        let (jj, sgn) = if 2 * j <= m { (j, 1) } else { (m - j, -1) };
        let ang = two_pi.mul_int(&BigInt::from(jj)).div_pos_int(&BigInt::from(m));
        // evaluate at the midpoint, then widen by the radius (cos, sin are
        // 1-Lipschitz)
        let mid: BigInt = (&ang.lo + &ang.hi) >> 1u32;
        let rad = (ang.width() >> 1u32) + BigInt::one();
        let (c, s) = cos_sin_point(&Interval { lo: mid.clone(), hi: mid, prec: w });
        let (c, s) = (c.widen(&rad), s.widen(&rad));
        let s = if sgn < 0 { s.neg() } else { s };
        let down = |v: &Interval| Interval { lo: floor_shift(&v.lo, 32), hi: ceil_shift(&v.hi, 32), prec };
        cos.push(down(&c));
        sin.push(down(&s));
    }
    let table = std::sync::Arc::new((cos, sin));
    trig_cache().lock().unwrap().insert((m, prec), table.clone());
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logarithms_match_f64() {
        for (n, d) in [(1i64, 1i64), (2, 1), (3, 7), (1000, 3), (5, 4), (1, 1000)] {
            let r = BigRational::new(BigInt::from(n), BigInt::from(d));
            let iv = ln_rational(&r, 128);
            let f = (n as f64 / d as f64).ln();
            assert!((iv.approx() - f).abs() < 1e-12, "ln({n}/{d})");
            assert!(iv.width() < BigInt::from(1u64 << 20));
        }
        let e = Interval::from_int(2, 64).ln().unwrap();
        assert!((e.approx() - 2f64.ln()).abs() < 1e-15);
        assert!(Interval::zero(64).ln().is_none());
    }
    use num_traits::ToPrimitive;

    #[test]
    fn pi_brackets_known_digits() {
        let p = pi(200);
        let (lo, hi) = p.bounds();
        let lo_ok = BigRational::new(BigInt::from(314159265358979323i64), BigInt::from(100000000000000000i64));
        let hi_ok = BigRational::new(BigInt::from(314159265358979324i64), BigInt::from(100000000000000000i64));
        assert!(lo > lo_ok && hi < hi_ok);
        assert!(p.width() < BigInt::from(64));
    }

    #[test]
    fn trig_matches_f64() {
        for m in [9u32, 12, 36, 108] {
            let t = roots_of_unity(m, 128);
            for j in 0..m {
                let ang = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                let (cl, ch) = t.0[j as usize].bounds();
                let (sl, sh) = t.1[j as usize].bounds();
                assert!(cl.to_f64().unwrap() <= ang.cos() + 1e-15);
                assert!(ch.to_f64().unwrap() >= ang.cos() - 1e-15);
                assert!(sl.to_f64().unwrap() <= ang.sin() + 1e-15);
                assert!(sh.to_f64().unwrap() >= ang.sin() - 1e-15);
                assert!(t.0[j as usize].width() < BigInt::from(1u64 << 20));
            }
        }
    }

    #[test]
    fn exact_values_are_enclosed() {
        let t = roots_of_unity(12, 256);
        // cos(π/3) = 1/2, sin(π/2) = 1, cos(π) = -1
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let (lo, hi) = t.0[2].bounds();
        assert!(lo <= half && half <= hi);
        let (lo, hi) = t.1[3].bounds();
        assert!(lo <= BigRational::one() && BigRational::one() <= hi);
        let (lo, hi) = t.0[6].bounds();
        assert!(lo <= -BigRational::one() && -BigRational::one() <= hi);
    }

    #[test]
    fn width_shrinks_with_precision() {
        let a = roots_of_unity(36, 128);
        let b = roots_of_unity(36, 512);
        let (al, ah) = a.0[5].bounds();
        let (bl, bh) = b.0[5].bounds();
        assert!(bh.clone() - bl.clone() < ah.clone() - al.clone());
        assert!(bl >= al && bh <= ah);
    }
}
