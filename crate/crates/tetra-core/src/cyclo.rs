//! Exact arithmetic in the cyclotomic fields Q(ζ_M) for M = 3^s and
//! M = 4·3^s, with sign decisions certified under the embedding
//! ζ_M -> e^(2πi/M).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{self, Interval};

/// Q(ζ_M) presented as Q[x]/Φ_M(x).
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    conductor: u32,
    /// Coefficients of Φ_M, lowest degree first (monic).
    modulus: Vec<i64>,
    degree: usize,
    /// Reduced images of x^e for e in 0..M.
    monomials: Vec<Vec<BigRational>>,
}

/// Shared handle to a field.
pub type Field = Arc<CycloField>;

impl CycloField {
    /// Supported conductors are 3^s and 4·3^s with s >= 1.
    pub fn new(conductor: u32) -> Result<Field> {
        let modulus = closed_form_cyclotomic(conductor)
            .ok_or_else(|| Error::Param(format!("unsupported conductor {conductor}")))?;
        let degree = modulus.len() - 1;
        let mut field = CycloField { conductor, modulus, degree, monomials: Vec::new() };
        let monomials = (0..conductor as usize)
            .map(|e| {
                let mut v = vec![BigRational::zero(); e.max(degree) + 1];
                v[e] = BigRational::one();
                field.reduce(v)
            })
            .collect();
        field.monomials = monomials;
        Ok(Arc::new(field))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Reduces a coefficient vector of any length modulo Φ_M.
    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree;
        for i in (d..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut v[i], BigRational::zero());
            for (j, &mj) in self.modulus[..d].iter().enumerate() {
                if mj != 0 {
                    v[i - d + j] -= &c * BigRational::from_integer(BigInt::from(mj));
                }
            }
        }
        v.truncate(d);
        v.resize(d, BigRational::zero());
        v
    }
}

/// Φ_M in closed form: Φ_(3^s)(x) = x^(2a) + x^a + 1 and
/// Φ_(4·3^s)(x) = x^(4a) - x^(2a) + 1 with a = 3^(s-1).
pub fn closed_form_cyclotomic(m: u32) -> Option<Vec<i64>> {
    let (four, t) = if m.is_multiple_of(4) { (true, m / 4) } else { (false, m) };
    let mut s = 0;
    let mut r = t;
    while r % 3 == 0 && r > 1 {
        r /= 3;
        s += 1;
    }
    if r != 1 || s == 0 {
        return None;
    }
    let a = 3usize.pow(s - 1);
    if four {
        let mut v = vec![0i64; 4 * a + 1];
        v[0] = 1;
        v[2 * a] = -1;
        v[4 * a] = 1;
        Some(v)
    } else {
        let mut v = vec![0i64; 2 * a + 1];
        v[0] = 1;
        v[a] = 1;
        v[2 * a] = 1;
        Some(v)
    }
}

/// Φ_M computed by repeated division of x^M - 1 by Φ_d for proper
/// divisors d; an independent check on the closed forms.
pub fn cyclotomic_by_division(m: u32) -> Vec<i64> {
    fn divide(num: &[i64], den: &[i64]) -> Vec<i64> {
        let mut rem = num.to_vec();
        let dl = den.len();
        let mut q = vec![0i64; rem.len() + 1 - dl];
        for i in (0..q.len()).rev() {
            let c = rem[i + dl - 1] / den[dl - 1];
            q[i] = c;
            for j in 0..dl {
                rem[i + j] -= c * den[j];
            }
        }
        assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
        q
    }
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = divide(&p, &cyclotomic_by_division(d));
        }
    }
    p
}

/// An element of Q(ζ_M), stored as its reduced coefficient vector.
#[derive(Clone)]
pub struct CycloNumber {
    field: Field,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CycloNumber {
    fn eq(&self, o: &Self) -> bool {
        self.field.conductor == o.field.conductor && self.coeffs == o.coeffs
    }
}
impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})·ζ^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// JSON form: conductor and coefficient strings "n/d".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloRepr {
    pub conductor: u32,
    pub coefficients: Vec<String>,
}

impl CycloNumber {
    pub fn zero(field: &Field) -> Self {
        CycloNumber { field: field.clone(), coeffs: vec![BigRational::zero(); field.degree] }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Field, v: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(field: &Field, v: BigRational) -> Self {
        let mut n = Self::zero(field);
        n.coeffs[0] = v;
        n
    }

    /// ζ_M^e for any integer e.
    pub fn root(field: &Field, e: i64) -> Self {
        let m = field.conductor as i64;
        CycloNumber { field: field.clone(), coeffs: field.monomials[e.rem_euclid(m) as usize].clone() }
    }

    /// Builds Σ c_e ζ_M^e from integer coefficients on arbitrary exponents.
    pub fn from_exponents(field: &Field, terms: &[(i64, i64)]) -> Self {
        let m = field.conductor as i64;
        let mut v = vec![BigRational::zero(); field.conductor as usize];
        for &(e, c) in terms {
            v[e.rem_euclid(m) as usize] += BigRational::from_integer(BigInt::from(c));
        }
        CycloNumber { field: field.clone(), coeffs: field.reduce(v) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if the number lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn same_field(&self, o: &Self) {
        assert_eq!(self.field.conductor, o.field.conductor, "mixed cyclotomic fields");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_field(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        CycloNumber { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_field(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        CycloNumber { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        CycloNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_field(o);
        let d = self.field.degree;
        let mut v = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        CycloNumber { field: self.field.clone(), coeffs: self.field.reduce(v) }
    }

    /// Multiplication by ζ_M^e, a shift followed by reduction.
    pub fn mul_root(&self, e: i64) -> Self {
        let m = self.field.conductor as i64;
        let e = e.rem_euclid(m) as usize;
        let mut v = vec![BigRational::zero(); self.field.degree + e];
        for (i, a) in self.coeffs.iter().enumerate() {
            v[i + e] = a.clone();
        }
        CycloNumber { field: self.field.clone(), coeffs: self.field.reduce(v) }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm against Φ_M.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("cyclotomic inverse"));
        }
        let f: Vec<BigRational> =
            self.field.modulus.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        let (g, s) = poly_ext_gcd(trim(self.coeffs.clone()), f);
        // g is a nonzero constant since Φ_M is irreducible
        let c = g[0].clone();
        let mut s: Vec<BigRational> = s.iter().map(|x| x / &c).collect();
        s.resize(s.len().max(self.field.degree), BigRational::zero());
        Ok(CycloNumber { field: self.field.clone(), coeffs: self.field.reduce(s) })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inverse()?))
    }

    /// The automorphism ζ_M -> ζ_M^t, for t prime to M.
    pub fn galois(&self, t: i64) -> Result<Self> {
        let m = self.field.conductor as i64;
        if t.rem_euclid(m).gcd(&m) != 1 {
            return Err(Error::Param(format!("galois exponent {t} not prime to {m}")));
        }
        let mut v = vec![BigRational::zero(); m as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            v[(i as i64 * t).rem_euclid(m) as usize] += a;
        }
        Ok(CycloNumber { field: self.field.clone(), coeffs: self.field.reduce(v) })
    }

    /// Complex conjugation, the automorphism ζ -> ζ^(-1).
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    /// Twice the real part, which lies in the real subfield.
    pub fn two_re(&self) -> Self {
        self.add(&self.conj())
    }

    /// |a|^2 = a·conj(a).
    pub fn abs2(&self) -> Self {
        self.mul(&self.conj())
    }

    /// Product of all Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let m = self.field.conductor as i64;
        let mut acc = Self::one(&self.field);
        for t in 1..m {
            if t.gcd(&m) == 1 {
                acc = acc.mul(&self.galois(t).unwrap());
            }
        }
        acc.as_rational().expect("norm is rational")
    }

    /// Interval enclosures of the real and imaginary parts at precision `prec`.
    pub fn enclose(&self, prec: u32) -> (Interval, Interval) {
        let table = interval::roots_of_unity(self.field.conductor, prec);
        let mut re = Interval::zero(prec);
        let mut im = Interval::zero(prec);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            re = re.add(&table.0[i].mul_rational(c));
            im = im.add(&table.1[i].mul_rational(c));
        }
        (re, im)
    }

    /// Sign of the real or imaginary part. Zero is decided exactly; other
    /// signs by interval refinement up to the precision cap.
    pub fn certify_sign(&self, part: Part) -> Result<Ordering> {
        self.certify_sign_with_cap(part, interval::precision_cap())
    }

    pub fn certify_sign_with_cap(&self, part: Part, cap: u32) -> Result<Ordering> {
        let exact_zero = match part {
            Part::Re => self.two_re().is_zero(),
            Part::Im => self.sub(&self.conj()).is_zero(),
        };
        if exact_zero {
            return Ok(Ordering::Equal);
        }
        let mut prec = interval::START_PRECISION.min(cap);
        loop {
            let (re, im) = self.enclose(prec);
            let iv = match part {
                Part::Re => re,
                Part::Im => im,
            };
            if let Some(s) = iv.sign() {
                return Ok(s);
            }
            if prec >= cap {
                return Err(Error::PrecisionCap { cap });
            }
            prec = (prec * 2).min(cap);
        }
    }

    /// The j in 0..2·3^s with self = (-ζ)^j, where ζ is the primitive
    /// 3^s-th root ζ_M^(M/3^s).
    pub fn as_power_of_minus_zeta(&self) -> Option<u32> {
        let m = self.field.conductor as i64;
        let t = if m % 4 == 0 { m / 4 } else { m };
        let step = m / t;
        let half = m / 2;
        for j in 0..2 * t {
            // (-ζ)^j = ζ_M^(step·j) when j is even, otherwise its negative
            let e = step * j;
            let mono = &self.field.monomials[e.rem_euclid(m) as usize];
            let hit = if j % 2 == 0 {
                &self.coeffs == mono
            } else if m % 2 == 0 {
                // -1 = ζ_M^(M/2)
                self.coeffs == self.field.monomials[(e + half).rem_euclid(m) as usize]
            } else {
                self.coeffs.iter().zip(mono).all(|(a, b)| *a == -b)
            };
            if hit {
                return Some(j as u32);
            }
        }
        None
    }

    pub fn to_repr(&self) -> CycloRepr {
        CycloRepr { conductor: self.field.conductor, coefficients: self.coeffs.iter().map(|c| c.to_string()).collect() }
    }

    /// Floating approximation, for display and float oracles only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let (re, im) = self.enclose(64);
        (re.approx(), im.approx())
    }
}

impl Serialize for CycloNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Re,
    Im,
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigRational::zero());
    }
    v
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
        if r.len() < b.len() {
            break;
        }
    }
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    v
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut v = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        v[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        v[i] -= y;
    }
    trim(v)
}

/// Returns (g, s) with s·a ≡ g (mod f) and g = gcd(a, f).
fn poly_ext_gcd(a: Vec<BigRational>, f: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (f, a);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

/// Rank of a matrix over Q(ζ), given by rows.
pub fn matrix_rank(rows: &[Vec<CycloNumber>]) -> usize {
    echelon(rows.to_vec()).0
}

/// Gaussian elimination; returns (rank, determinant when square).
fn echelon(mut m: Vec<Vec<CycloNumber>>) -> (usize, Option<CycloNumber>) {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut sign_flip = false;
    let mut det: Option<CycloNumber> = None;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else { continue };
        if p != rank {
            m.swap(p, rank);
            sign_flip = !sign_flip;
        }
        let pivot = m[rank][col].clone();
        det = Some(match det {
            None => pivot.clone(),
            Some(d) => d.mul(&pivot),
        });
        let inv = pivot.inverse().expect("nonzero pivot");
        for i in rank + 1..nrows {
            if m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].mul(&inv);
            for j in col..ncols {
                let t = f.mul(&m[rank][j]);
                m[i][j] = m[i][j].sub(&t);
            }
        }
        rank += 1;
    }
    let square_det = (nrows == ncols && nrows > 0).then(|| {
        if rank < nrows {
            return match m.first().and_then(|r| r.first()) {
                Some(x) => CycloNumber::zero(x.field()),
                None => unreachable!(),
            };
        }
        let d = det.clone().expect("nonempty square matrix");
        if sign_flip {
            d.neg()
        } else {
            d
        }
    });
    (rank, square_det)
}

/// Determinant of a square matrix over Q(ζ); the empty matrix has det 1.
pub fn determinant(m: &[Vec<CycloNumber>], field: &Field) -> CycloNumber {
    if m.is_empty() {
        return CycloNumber::one(field);
    }
    echelon(m.to_vec()).1.expect("square matrix")
}

/// Polynomial gcd over Q with integer input, used by the circulant rank.
pub fn rational_poly_gcd(a: &[i64], b: &[i64]) -> Vec<BigRational> {
    let to_q = |v: &[i64]| trim(v.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect());
    let (mut x, mut y) = (to_q(a), to_q(b));
    while !(y.len() == 1 && y[0].is_zero()) {
        let (_, r) = poly_divmod(&x, &y);
        x = std::mem::replace(&mut y, r);
    }
    let lead = x.last().unwrap().clone();
    if lead.is_zero() {
        return x;
    }
    x.iter().map(|c| c / &lead).collect()
}

/// Degree of a trimmed polynomial, with the zero polynomial at degree 0.
pub fn poly_degree(v: &[BigRational]) -> usize {
    trim(v.to_vec()).len() - 1
}

/// Signed magnitude helper for reports.
pub fn sign_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "negative",
        Ordering::Equal => "zero",
        Ordering::Greater => "positive",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(m: u32) -> Field {
        CycloField::new(m).unwrap()
    }

    #[test]
    fn closed_forms_match_division() {
        for m in [3u32, 9, 27, 12, 36, 108] {
            assert_eq!(closed_form_cyclotomic(m).unwrap(), cyclotomic_by_division(m), "M={m}");
        }
        assert!(closed_form_cyclotomic(10).is_none());
    }

    #[test]
    fn root_arithmetic() {
        let k = f(9);
        let z = CycloNumber::root(&k, 1);
        assert!(z.mul(&CycloNumber::root(&k, 8)).is_one());
        // (ζ - 1)(1 + ζ + ... + ζ^(d-1)) = ζ^d - 1
        for d in 1..9 {
            let geo = CycloNumber::from_exponents(&k, &(0..d).map(|i| (i, 1)).collect::<Vec<_>>());
            let lhs = z.sub(&CycloNumber::one(&k)).mul(&geo);
            let rhs = CycloNumber::from_exponents(&k, &[(d, 1), (0, -1)]);
            assert_eq!(lhs, rhs);
        }
        assert_eq!(z.galois(2).unwrap(), CycloNumber::root(&k, 2));
        assert!(z.galois(3).is_err());
    }

    #[test]
    fn norms() {
        for m in [9u32, 27] {
            let k = f(m);
            let zm1 = CycloNumber::from_exponents(&k, &[(1, 1), (0, -1)]);
            assert_eq!(zm1.norm(), BigRational::from_integer(3.into()));
            assert_eq!(CycloNumber::one(&k).norm(), BigRational::one());
            for d in [1i64, 2, 4, 5, 7, 8] {
                let eps = CycloNumber::from_exponents(&k, &[(d, 1), (0, -1)]).div(&zm1).unwrap();
                assert_eq!(eps.norm(), BigRational::one(), "d={d}");
            }
        }
    }

    #[test]
    fn certified_signs() {
        let k = f(9);
        let z = CycloNumber::root(&k, 1);
        assert_eq!(z.sub(&z.conj()).certify_sign(Part::Re).unwrap(), Ordering::Equal);
        let onez = CycloNumber::one(&k).add(&z);
        assert_eq!(onez.certify_sign(Part::Re).unwrap(), Ordering::Greater);
        assert_eq!(CycloNumber::from_int(&k, -2).certify_sign(Part::Re).unwrap(), Ordering::Less);
        assert_eq!(z.certify_sign(Part::Im).unwrap(), Ordering::Greater);
        // cos(2π/9) - 3/4 is tiny but nonzero
        let c = z.add(&z.conj()).scale(&BigRational::new(1.into(), 2.into()));
        let d = c.sub(&CycloNumber::from_rational(&k, BigRational::new(3.into(), 4.into())));
        assert_eq!(d.certify_sign(Part::Re).unwrap(), Ordering::Greater);
    }

    #[test]
    fn precision_cap_is_reported() {
        // 2cos(2π/108) minus a 12-digit rational approximation is about
        // 5e-13, below what 16 bits can resolve
        let k = f(108);
        let a = CycloNumber::root(&k, 1).two_re();
        let b = CycloNumber::root(&k, 107).two_re();
        assert_eq!(a.sub(&b).certify_sign(Part::Re).unwrap(), Ordering::Equal);
        let tiny = a.sub(&CycloNumber::from_rational(
            &k,
            BigRational::new(BigInt::from(1996616316542i64), BigInt::from(1000000000000i64)),
        ));
        match tiny.certify_sign_with_cap(Part::Re, 16) {
            Err(Error::PrecisionCap { cap: 16 }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
        assert!(tiny.certify_sign_with_cap(Part::Re, 256).is_ok());
    }

    #[test]
    fn minus_zeta_powers() {
        for m in [9u32, 36] {
            let k = f(m);
            let step = if m % 4 == 0 { 4 } else { 1 };
            let mz = CycloNumber::root(&k, step).neg();
            assert_eq!(mz.as_power_of_minus_zeta(), Some(1));
            assert_eq!(CycloNumber::one(&k).as_power_of_minus_zeta(), Some(0));
            assert_eq!(mz.pow(7).as_power_of_minus_zeta(), Some(7));
        }
        let k = f(9);
        let zp1 = CycloNumber::from_exponents(&k, &[(1, 1), (0, 1)]);
        assert_eq!(zp1.as_power_of_minus_zeta(), None);
    }

    fn number(m: u32) -> impl Strategy<Value = Vec<i64>> {
        let d = closed_form_cyclotomic(m).unwrap().len() - 1;
        proptest::collection::vec(-5i64..=5, d)
    }

    fn build(k: &Field, v: &[i64]) -> CycloNumber {
        CycloNumber::from_exponents(k, &v.iter().enumerate().map(|(i, &c)| (i as i64, c)).collect::<Vec<_>>())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn field_laws(a in number(9), b in number(9), c in number(9)) {
            let k = f(9);
            let (a, b, c) = (build(&k, &a), build(&k, &b), build(&k, &c));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.galois(2).unwrap().mul(&b.galois(2).unwrap()), a.mul(&b).galois(2).unwrap());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inverse().unwrap()).is_one());
                prop_assert!(!a.norm().is_zero());
            }
        }

        #[test]
        fn norm_multiplicative(a in number(9), b in number(9)) {
            let k = f(9);
            let (a, b) = (build(&k, &a), build(&k, &b));
            prop_assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        }

        #[test]
        fn reduction_idempotent(v in proptest::collection::vec(-5i64..=5, 36)) {
            let k = f(36);
            let terms: Vec<(i64, i64)> = v.iter().enumerate().map(|(i, &c)| (i as i64, c)).collect();
            let once = CycloNumber::from_exponents(&k, &terms);
            let twice = CycloNumber::from_exponents(&k, &once.coeffs().iter().enumerate()
                .map(|(i, c)| (i as i64, c.to_integer().try_into().unwrap())).collect::<Vec<_>>());
            prop_assert_eq!(once, twice);
        }
    }

    /// Products of random root sums, evaluated exactly and as f64 complex
    /// products before any reduction; certified signs must agree wherever
    /// the float value is clearly away from zero.
    #[test]
    fn certify_sign_agrees_with_float_evaluation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut compared = 0;
        for trial in 0..100 {
            let m = [9u32, 27, 36, 108][trial % 4];
            let k = f(m);
            let mut exact = CycloNumber::one(&k);
            let (mut re, mut im) = (1.0f64, 0.0f64);
            for _ in 0..rng.gen_range(1..4) {
                let terms: Vec<(i64, i64)> =
                    (0..rng.gen_range(1..5)).map(|_| (rng.gen_range(0..m as i64), rng.gen_range(-3..4))).collect();
                exact = exact.mul(&CycloNumber::from_exponents(&k, &terms));
                let (mut sr, mut si) = (0.0, 0.0);
                for &(e, c) in &terms {
                    let ang = 2.0 * std::f64::consts::PI * e as f64 / m as f64;
                    sr += c as f64 * ang.cos();
                    si += c as f64 * ang.sin();
                }
                (re, im) = (re * sr - im * si, re * si + im * sr);
            }
            for (part, v) in [(Part::Re, re), (Part::Im, im)] {
                let sign = exact.certify_sign(part).unwrap();
                if v.abs() > 1e-6 {
                    compared += 1;
                    assert_eq!(sign, v.partial_cmp(&0.0).unwrap(), "trial {trial}: {exact:?} {part:?} ~ {v}");
                } else if v.abs() < 1e-12 {
                    assert_eq!(sign, Ordering::Equal, "trial {trial}: {exact:?} {part:?} ~ {v}");
                }
            }
        }
        assert!(compared > 100, "only {compared} comparisons");
    }
}
