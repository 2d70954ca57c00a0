//! Reidemeister torsion of the tetrahedral space forms S^(4n-1)/G.
//!
//! Torsions live in Q(ζ)^*/Γ with ζ = ζ_(3^s) and Γ = ⟨-ζ⟩. Three
//! pipelines compute them: determinants over the specialized complex
//! U• = E• ⊗ C, the same over V• = C• ⊗ C, and the closed product
//! Π (ζ_ℓ - 1)(ζ_ℓ^(2a-1) - 1)/(ζ_ℓ^(a+w+1) + 1) with ζ_ℓ = χ(x_ℓ).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complexes::{build_c, build_e, build_w, zeta_ell_exponent, FieldComplex};
use crate::cyclo::{
    determinant, matrix_rank as rank_of, poly_degree, rational_poly_gcd, CycloField, CycloNumber, Field,
};
use crate::error::{Error, Result};
use crate::group::{check_ell, GroupParams};
use crate::homology::{invariant_factors, IntMatrix};
use crate::interval::Interval;

/// A nonzero element of Q(ζ) read modulo Γ = ⟨-ζ⟩.
#[derive(Clone, Debug)]
pub struct TorsionValue {
    pub value: CycloNumber,
}

impl TorsionValue {
    pub fn new(value: CycloNumber) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::Verification("a torsion value must be nonzero".into()));
        }
        Ok(TorsionValue { value })
    }

    pub fn one(field: &Field) -> Self {
        TorsionValue { value: CycloNumber::one(field) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        TorsionValue { value: self.value.mul(&o.value) }
    }

    pub fn div(&self, o: &Self) -> Self {
        TorsionValue { value: self.value.div(&o.value).expect("torsion values are nonzero") }
    }

    /// Coset membership: self/o is a power of -ζ.
    pub fn eq_mod_gamma(&self, o: &Self) -> bool {
        self.div(o).value.as_power_of_minus_zeta().is_some()
    }

    pub fn is_trivial(&self) -> bool {
        self.value.as_power_of_minus_zeta().is_some()
    }
}

impl Serialize for TorsionValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.value.serialize(s)
    }
}

/// The torsion field Q(ζ_(3^s)).
pub fn torsion_field(params: GroupParams) -> Result<Field> {
    CycloField::new(params.t())
}

type Vector = Vec<CycloNumber>;

fn apply_boundary(v: &[CycloNumber], d: &[Vector], field: &Field, cols: usize) -> Vector {
    (0..cols)
        .map(|j| v.iter().zip(d).fold(CycloNumber::zero(field), |acc, (c, row)| acc.add(&c.mul(&row[j]))))
        .collect()
}

fn boundary_rank(c: &FieldComplex, k: usize) -> usize {
    if k == 0 || k > c.top() {
        return 0;
    }
    rank_of(&c.d[k])
}

/// rank ∂_k + rank ∂_(k+1) = dim A_k in every degree.
pub fn is_acyclic(c: &FieldComplex) -> bool {
    (0..=c.top()).all(|k| boundary_rank(c, k) + boundary_rank(c, k + 1) == c.ranks[k])
}

/// Per-degree data of a torsion computation.
#[derive(Clone, Debug, Serialize)]
pub struct BasedTorsion {
    /// det(∂_(k+1)(b_(k+1)), b_k / a_k) for every degree k.
    pub determinants: Vec<CycloNumber>,
    pub torsion: TorsionValue,
}

/// Torsion with respect to the preferred bases, choosing every b_k
/// greedily among the standard basis vectors.
pub fn torsion_of_based_complex(c: &FieldComplex, field: &Field) -> Result<BasedTorsion> {
    let candidates: Vec<Vec<Vector>> = (0..=c.top())
        .map(|k| {
            (0..c.ranks[k])
                .map(|i| (0..c.ranks[k]).map(|j| CycloNumber::from_int(field, (i == j) as i64)).collect())
                .collect()
        })
        .collect();
    torsion_with_candidates(c, field, &candidates)
}

/// Torsion with b_k chosen greedily, in order, from `candidates[k]`.
pub fn torsion_with_candidates(c: &FieldComplex, field: &Field, candidates: &[Vec<Vector>]) -> Result<BasedTorsion> {
    if !is_acyclic(c) {
        return Err(Error::Verification("complex is not acyclic over Q(ζ)".into()));
    }
    let top = c.top();
    let mut images: Vec<Vector> = Vec::new();
    let mut dets = vec![CycloNumber::one(field); top + 1];
    for k in (0..=top).rev() {
        let need = boundary_rank(c, k);
        let mut rows = images.clone();
        let mut b: Vec<Vector> = Vec::new();
        for cand in &candidates[k] {
            if b.len() == need {
                break;
            }
            rows.push(cand.clone());
            if rank_of(&rows) == rows.len() {
                b.push(cand.clone());
            } else {
                rows.pop();
            }
        }
        if b.len() != need || rows.len() != c.ranks[k] {
            return Err(Error::Verification(format!("no valid b_{k} among the candidates")));
        }
        if k > 0 {
            let cols = c.ranks[k - 1];
            let img: Vec<Vector> = b.iter().map(|v| apply_boundary(v, &c.d[k], field, cols)).collect();
            if rank_of(&img) != need {
                return Err(Error::Verification(format!("∂_{k} is not injective on b_{k}")));
            }
            dets[k] = determinant(&rows, field);
            images = img;
        } else {
            dets[k] = determinant(&rows, field);
        }
    }
    let mut value = CycloNumber::one(field);
    for (k, d) in dets.iter().enumerate() {
        if d.is_zero() {
            return Err(Error::Verification(format!("singular basis change in degree {k}")));
        }
        value = if k % 2 == 0 { value.mul(d) } else { value.div(d)? };
    }
    Ok(BasedTorsion { determinants: dets, torsion: TorsionValue::new(value)? })
}

/// Torsion of U• = E• specialized at z -> ζ.
pub fn tau_u(params: GroupParams, ells: &[i64]) -> Result<BasedTorsion> {
    let field = torsion_field(params)?;
    torsion_of_based_complex(&build_e(params, ells)?.chi_zeta(&field), &field)
}

/// Torsion of V• = C• specialized at z -> ζ.
pub fn tau_v(params: GroupParams, ells: &[i64]) -> Result<BasedTorsion> {
    let field = torsion_field(params)?;
    torsion_of_based_complex(&build_c(params, ells)?.chi_zeta(&field), &field)
}

/// Torsion of the quotient W• = V•/U•.
pub fn tau_w(params: GroupParams, ells: &[i64]) -> Result<BasedTorsion> {
    let field = torsion_field(params)?;
    torsion_of_based_complex(&build_w(params, ells, &field)?, &field)
}

/// ζ_ℓ = χ(x_ℓ).
pub fn zeta_ell(params: GroupParams, ell: i64, field: &Field) -> Result<CycloNumber> {
    Ok(CycloNumber::root(field, zeta_ell_exponent(params, ell)?))
}

/// τ_ℓ = (ζ_ℓ - 1)(ζ_ℓ^(2a-1) - 1)/(ζ_ℓ^(a+w+1) + 1).
pub fn tau_factor(params: GroupParams, ell: i64, field: &Field) -> Result<TorsionValue> {
    let (a, w) = (params.a() as i64, params.half() as i64);
    let e = zeta_ell_exponent(params, ell)?;
    let one = CycloNumber::one(field);
    let num = CycloNumber::root(field, e).sub(&one).mul(&CycloNumber::root(field, e * (2 * a - 1)).sub(&one));
    let den = CycloNumber::root(field, e * (a + w + 1)).add(&one);
    TorsionValue::new(num.div(&den)?)
}

/// The expected per-degree determinants of U• in one period, in
/// degrees 4k, 4k+1, 4k+2, 4k+3.
pub fn u_period_determinants(params: GroupParams, ell: i64, field: &Field) -> Result<[CycloNumber; 4]> {
    let (a, w) = (params.a() as i64, params.half() as i64);
    let e = zeta_ell_exponent(params, ell)?;
    let one = CycloNumber::one(field);
    Ok([
        CycloNumber::root(field, e).sub(&one),
        CycloNumber::root(field, e * (a + w + 1)).add(&one),
        CycloNumber::root(field, e * (2 * a - 1)).sub(&one),
        one,
    ])
}

pub fn tau_closed_form(params: GroupParams, ells: &[i64]) -> Result<TorsionValue> {
    if ells.is_empty() {
        return Err(Error::Param("the ℓ-list is empty".into()));
    }
    let field = torsion_field(params)?;
    let mut t = TorsionValue::one(&field);
    for &l in ells {
        check_ell(params, l)?;
        t = t.mul(&tau_factor(params, l, &field)?);
    }
    Ok(t)
}

/// Result of the three torsion pipelines for one ℓ-list.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub s: u32,
    pub ells: Vec<i64>,
    pub closed: TorsionValue,
    pub det_u: TorsionValue,
    pub det_v: TorsionValue,
    pub det_w: TorsionValue,
    pub u_determinants_match: bool,
    pub closed_eq_u: bool,
    pub closed_eq_v: bool,
    pub u_eq_v: bool,
    pub w_trivial: bool,
}

impl TorsionReport {
    pub fn ok(&self) -> bool {
        self.u_determinants_match && self.closed_eq_u && self.closed_eq_v && self.u_eq_v && self.w_trivial
    }
}

pub fn torsion_report(params: GroupParams, ells: &[i64]) -> Result<TorsionReport> {
    let field = torsion_field(params)?;
    let closed = tau_closed_form(params, ells)?;
    let u = tau_u(params, ells)?;
    let v = tau_v(params, ells)?;
    let w = tau_w(params, ells)?;
    let mut expected = Vec::new();
    for &l in ells {
        expected.extend(u_period_determinants(params, l, &field)?);
    }
    Ok(TorsionReport {
        s: params.s,
        ells: ells.to_vec(),
        u_determinants_match: u.determinants == expected,
        closed_eq_u: closed.eq_mod_gamma(&u.torsion),
        closed_eq_v: closed.eq_mod_gamma(&v.torsion),
        u_eq_v: u.torsion.eq_mod_gamma(&v.torsion),
        w_trivial: w.torsion.is_trivial(),
        closed,
        det_u: u.torsion,
        det_v: v.torsion,
        det_w: w.torsion,
    })
}

/// ε_d = (ζ^d - 1)/(ζ - 1).
pub fn epsilon(field: &Field, t: i64, d: i64) -> CycloNumber {
    let step = field.conductor() as i64 / t;
    let one = CycloNumber::one(field);
    CycloNumber::root(field, d * step)
        .sub(&one)
        .div(&CycloNumber::root(field, step).sub(&one))
        .expect("ζ - 1 is nonzero")
}

/// δ_r = (ζ^(ru) - 1)(ζ^(rv) - 1)/(ζ^(3rw) + 1), u = a+1, v = a-1, w = (a+1)/2.
pub fn delta(params: GroupParams, r: i64, field: &Field) -> CycloNumber {
    let (a, w) = (params.a() as i64, params.half() as i64);
    let one = CycloNumber::one(field);
    let num = CycloNumber::root(field, r * (a + 1)).sub(&one).mul(&CycloNumber::root(field, r * (a - 1)).sub(&one));
    num.div(&CycloNumber::root(field, 3 * r * w).add(&one)).expect("ζ^(3rw) ≠ -1")
}

/// The ε-terms (d, exponent) in δ_r/(ζ-1)^2 = Π ε_(rd)^exponent.
pub fn delta_epsilon_terms(params: GroupParams) -> Vec<(i64, i64)> {
    let (a, w) = (params.a() as i64, params.half() as i64);
    vec![
        (a + 1, 1),
        (a - 1, 1),
        (w, 1),
        (2 * w, -1),
        (w + a, 1),
        (2 * (w + a), -1),
        (w + 2 * a, 1),
        (2 * (w + 2 * a), -1),
    ]
}

/// The generator 2 of (Z/3^s)^*/±1 and the index of d in it.
fn class_index(params: GroupParams, d: i64) -> usize {
    let t = params.t() as i64;
    let d = d.rem_euclid(t);
    let mut g = 1i64;
    for i in 0..params.a() as usize {
        if g == d || g == t - d {
            return i;
        }
        g = g * 2 % t;
    }
    panic!("{d} is not a unit mod {t}")
}

/// Representatives 2^i of (Z/3^s)^*/±1, normalized into 1..=3^s/2.
pub fn class_representatives(params: GroupParams) -> Vec<i64> {
    let t = params.t() as i64;
    let mut g = 1i64;
    (0..params.a())
        .map(|_| {
            let r = g.min(t - g);
            g = g * 2 % t;
            r
        })
        .collect()
}

/// The ±-class of ℓ, as its representative in 1..=3^s/2.
pub fn normalize_ell(params: GroupParams, ell: i64) -> i64 {
    let t = params.t() as i64;
    let l = ell.rem_euclid(t);
    l.min(t - l)
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaFactorization {
    pub s: u32,
    pub r: i64,
    /// δ_r equals (ζ-1)^2 Π ε_(rd)^(e_d) exactly in Q(ζ).
    pub exact: bool,
    /// ... or at least modulo Γ.
    pub mod_gamma: bool,
    /// ã_i: exponent of ε_(r·2^i), i over (Z/3^s)^*/±1.
    pub exponents: Vec<i64>,
    pub content: i64,
    #[serde(serialize_with = "ser_rational")]
    pub norm: BigRational,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn delta_factorization(params: GroupParams, r: i64) -> Result<DeltaFactorization> {
    if r.rem_euclid(3) == 0 {
        return Err(Error::Param(format!("r = {r} is divisible by 3")));
    }
    let field = torsion_field(params)?;
    let t = params.t() as i64;
    let lhs = delta(params, r, &field);
    let zm1 = CycloNumber::root(&field, 1).sub(&CycloNumber::one(&field));
    let mut rhs = zm1.mul(&zm1);
    let mut exponents = vec![0i64; params.a() as usize];
    for (d, e) in delta_epsilon_terms(params) {
        let eps = epsilon(&field, t, r * d);
        rhs = if e > 0 { rhs.mul(&eps) } else { rhs.div(&eps)? };
        exponents[class_index(params, d)] += e;
    }
    let exact = lhs == rhs;
    let mod_gamma = TorsionValue::new(lhs.clone())?.eq_mod_gamma(&TorsionValue::new(rhs)?);
    if !mod_gamma {
        return Err(Error::Verification(format!("δ_{r} factorization fails")));
    }
    Ok(DeltaFactorization {
        s: params.s,
        r,
        exact,
        mod_gamma,
        content: exponents.iter().sum(),
        norm: lhs.norm(),
        exponents,
    })
}

/// ε_(-d) = ε_d modulo Γ.
pub fn epsilon_sign_symmetry(params: GroupParams, d: i64) -> Result<bool> {
    let field = torsion_field(params)?;
    let t = params.t() as i64;
    let a = TorsionValue::new(epsilon(&field, t, d))?;
    let b = TorsionValue::new(epsilon(&field, t, -d))?;
    Ok(a.eq_mod_gamma(&b))
}

/// A square circulant integer matrix A with A[i][j] = c[(i - j) mod m].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentMatrix {
    pub column: Vec<i64>,
}

impl ExponentMatrix {
    pub fn order(&self) -> usize {
        self.column.len()
    }

    pub fn content(&self) -> i64 {
        self.column.iter().sum()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        let m = self.order();
        self.column[(i + m - j) % m]
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.order(), self.order(), |i, j| self.entry(i, j) as i128)
    }

    /// Reads the first column of a matrix, rejecting non-circulant input.
    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        if m.rows != m.cols {
            return Err(Error::Param("circulant matrices are square".into()));
        }
        let c = ExponentMatrix { column: (0..m.rows).map(|i| m.at(i, 0) as i64).collect() };
        if c.to_int_matrix() != *m {
            return Err(Error::Param("matrix is not circulant".into()));
        }
        Ok(c)
    }
}

/// The exponent matrix (ã_(i-j)) of the δ's.
pub fn exponent_matrix(params: GroupParams) -> Result<ExponentMatrix> {
    Ok(ExponentMatrix { column: delta_factorization(params, 1)?.exponents })
}

/// rank = m - deg gcd(f, x^m - 1) with f(x) = Σ c_j x^j.
pub fn circulant_rank(a: &ExponentMatrix) -> usize {
    let m = a.order();
    if a.column.iter().all(|&c| c == 0) {
        return 0;
    }
    let mut xm1 = vec![0i64; m + 1];
    xm1[0] = -1;
    xm1[m] = 1;
    m - poly_degree(&rational_poly_gcd(&a.column, &xm1))
}

/// Rank over Q via the Smith normal form, as an oracle.
pub fn direct_rank(m: &IntMatrix) -> Result<usize> {
    Ok(invariant_factors(m)?.len())
}

/// Certified lower bound check: is the real matrix with the given
/// interval entries nonsingular? Uses the exact determinant of the
/// midpoints and a perturbation bound n!·n·r·(M+r)^(n-1).
pub fn certified_nonsingular(entries: &[Vec<Interval>]) -> bool {
    let n = entries.len();
    if n == 0 {
        return true;
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut mid = Vec::new();
    let mut radius = BigRational::zero();
    let mut big = BigRational::zero();
    for row in entries {
        let mut r = Vec::new();
        for iv in row {
            let (lo, hi) = iv.bounds();
            let m = (&lo + &hi) / &two;
            let rad = (&hi - &lo) / &two;
            if rad > radius {
                radius = rad;
            }
            if m.abs() > big {
                big = m.abs();
            }
            r.push(m);
        }
        mid.push(r);
    }
    let det = rational_det(mid);
    let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
    let mut bound = BigRational::from_integer(fact * BigInt::from(n as u64)) * &radius;
    for _ in 1..n {
        bound *= &big + &radius;
    }
    det.abs() > bound
}

fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// ln|σ_t(x)| enclosed at the given precision.
pub fn log_abs_embedding(x: &CycloNumber, t: i64, prec: u32) -> Result<Interval> {
    let y = x.galois(t)?.abs2();
    let (re, _) = y.enclose(prec + 32);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    re.ln().map(|l| l.mul_rational(&half)).ok_or(Error::PrecisionCap { cap: prec })
}

/// The matrix of ln|σ_t(τ_ℓ)|: rows over embeddings t, columns over ℓ.
pub fn log_embedding_matrix(
    params: GroupParams,
    ells: &[i64],
    embeddings: &[i64],
    prec: u32,
) -> Result<Vec<Vec<Interval>>> {
    let field = torsion_field(params)?;
    let taus: Vec<CycloNumber> =
        ells.iter().map(|&l| tau_factor(params, l, &field).map(|t| t.value)).collect::<Result<_>>()?;
    std::thread::scope(|scope| {
        let handles: Vec<_> = embeddings
            .iter()
            .map(|&t| {
                let taus = &taus;
                scope.spawn(move || taus.iter().map(|x| log_abs_embedding(x, t, prec)).collect::<Result<Vec<_>>>())
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("embedding thread panicked")).collect()
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub s: u32,
    pub classes: Vec<i64>,
    pub exponents: Vec<i64>,
    pub content: i64,
    pub circulant_rank: usize,
    pub oracle_rank: usize,
    /// N(δ_r) = 9 for every class r.
    pub norms_nine: bool,
    /// τ_ℓ = τ_(-ℓ) mod Γ for every unit ℓ.
    pub sign_symmetry: bool,
    pub precision: u32,
    /// The log-embedding matrix of the class representatives is
    /// certifiably nonsingular.
    pub log_rank: usize,
    /// The pair (τ_ℓ, τ_(-ℓ)) has log rank 1, for ℓ = 1.
    pub pair_dependent: bool,
}

impl IndependenceReport {
    pub fn ok(&self) -> bool {
        let n = self.classes.len();
        self.circulant_rank == n
            && self.oracle_rank == n
            && self.content.rem_euclid(3) != 0
            && self.norms_nine
            && self.sign_symmetry
            && self.log_rank == n
            && self.pair_dependent
    }
}

/// Structural and numeric evidence that the τ_ℓ over ±-classes are
/// multiplicatively independent modulo Γ. The structural half reduces the
/// claim to Kummer's independence of cyclotomic units; the numeric half
/// certifies it directly, since every element of Γ has |σ_t| = 1.
pub fn independence_check(params: GroupParams, prec: u32) -> Result<IndependenceReport> {
    let field = torsion_field(params)?;
    let t = params.t() as i64;
    let classes = class_representatives(params);
    let a = exponent_matrix(params)?;
    let nine = BigRational::from_integer(BigInt::from(9));
    let norms_nine = classes.iter().all(|&r| delta(params, r, &field).norm() == nine);
    let mut sign_symmetry = true;
    for l in 1..t {
        if l % 3 != 0 {
            let x = tau_factor(params, l, &field)?;
            let y = tau_factor(params, t - l, &field)?;
            sign_symmetry &= x.eq_mod_gamma(&y);
        }
    }
    let logs = log_embedding_matrix(params, &classes, &classes, prec)?;
    let log_rank = if certified_nonsingular(&logs) { classes.len() } else { 0 };
    // the pair (τ_1, τ_(-1)) has equal log columns, so rank 1
    let pair = log_embedding_matrix(params, &[1, t - 1], &classes, prec)?;
    let pair_dependent = pair.iter().all(|row| !row[0].sub(&row[1]).sign().is_some_and(|s| s.is_ne()))
        && pair.iter().any(|row| row[0].sign().is_some_and(|s| s.is_ne()));
    Ok(IndependenceReport {
        s: params.s,
        classes,
        content: a.content(),
        circulant_rank: circulant_rank(&a),
        oracle_rank: direct_rank(&a.to_int_matrix())?,
        exponents: a.column,
        norms_nine,
        sign_symmetry,
        precision: prec,
        log_rank,
        pair_dependent,
    })
}

/// Multisets of units mod 3^s of size 1..=max_n, as sorted lists.
pub fn ell_multisets(params: GroupParams, max_n: usize) -> Vec<Vec<i64>> {
    let units: Vec<i64> = (1..params.t() as i64).filter(|l| l % 3 != 0).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(units: &[i64], start: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..units.len() {
            cur.push(units[i]);
            rec(units, i, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(&units, 0, max_n, &mut cur, &mut out);
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct DistinctnessReport {
    pub s: u32,
    pub max_n: usize,
    pub multisets: usize,
    pub pairs: usize,
    pub equal_pairs: usize,
    /// Pairs where torsion equality disagrees with ±-normalized equality.
    pub mismatches: Vec<(Vec<i64>, Vec<i64>)>,
}

impl DistinctnessReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Exhaustive check that τ(X_α) = τ(X_β) mod Γ exactly when the
/// ±-normalized ℓ-multisets coincide.
pub fn distinguish_space_forms(params: GroupParams, max_n: usize) -> Result<DistinctnessReport> {
    let sets = ell_multisets(params, max_n);
    let taus: Vec<TorsionValue> = sets.iter().map(|e| tau_closed_form(params, e)).collect::<Result<_>>()?;
    let norm = |e: &[i64]| {
        let mut v: Vec<i64> = e.iter().map(|&l| normalize_ell(params, l)).collect();
        v.sort_unstable();
        v
    };
    let keys: Vec<Vec<i64>> = sets.iter().map(|e| norm(e)).collect();
    let mut mismatches = Vec::new();
    let mut equal_pairs = 0;
    let mut pairs = 0;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            pairs += 1;
            let eq = taus[i].eq_mod_gamma(&taus[j]);
            equal_pairs += eq as usize;
            if eq != (keys[i] == keys[j]) {
                mismatches.push((sets[i].clone(), sets[j].clone()));
            }
        }
    }
    Ok(DistinctnessReport { s: params.s, max_n, multisets: sets.len(), pairs, equal_pairs, mismatches })
}

/// Groups a list of ℓ-multisets by torsion class, for reports.
pub fn torsion_classes(params: GroupParams, sets: &[Vec<i64>]) -> Result<BTreeMap<Vec<i64>, Vec<Vec<i64>>>> {
    let mut out: BTreeMap<Vec<i64>, Vec<Vec<i64>>> = BTreeMap::new();
    for e in sets {
        let mut key: Vec<i64> = e.iter().map(|&l| normalize_ell(params, l)).collect();
        key.sort_unstable();
        out.entry(key).or_default().push(e.clone());
    }
    Ok(out)
}

/// gcd of the exponents, used to report the content's coprimality.
pub fn content_gcd(a: &ExponentMatrix) -> i64 {
    a.column.iter().fold(0i64, |g, &c| g.gcd(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: u32) -> GroupParams {
        GroupParams::new(s).unwrap()
    }

    #[test]
    fn identity_two_term_complex_has_trivial_torsion() {
        let field = CycloField::new(9).unwrap();
        let one = CycloNumber::one(&field);
        let zero = CycloNumber::zero(&field);
        let c = FieldComplex {
            ranks: vec![2, 2],
            d: vec![vec![vec![], vec![]], vec![vec![one.clone(), zero.clone()], vec![zero, one]]],
            labels: vec![vec![], vec![]],
        };
        let t = torsion_of_based_complex(&c, &field).unwrap();
        assert!(t.torsion.value.is_one());
    }

    #[test]
    fn non_acyclic_input_is_rejected() {
        let field = CycloField::new(9).unwrap();
        let c = FieldComplex { ranks: vec![1], d: vec![vec![vec![]]], labels: vec![vec![]] };
        assert!(torsion_of_based_complex(&c, &field).is_err());
    }

    #[test]
    fn u_determinants_and_pipelines_agree_s2() {
        let params = p(2);
        for l in [1, 2, 4, 5, 7, 8] {
            let r = torsion_report(params, &[l]).unwrap();
            assert!(r.ok(), "ℓ = {l}: {r:?}");
        }
        assert!(torsion_report(params, &[2, 7]).unwrap().ok());
    }

    #[test]
    fn torsion_independent_of_b_choice() {
        let params = p(2);
        let field = torsion_field(params).unwrap();
        let u = build_e(params, &[4]).unwrap().chi_zeta(&field);
        let base = torsion_of_based_complex(&u, &field).unwrap().torsion;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            let cands: Vec<Vec<Vector>> = u
                .ranks
                .iter()
                .map(|&n| {
                    (0..2 * n)
                        .map(|_| (0..n).map(|_| CycloNumber::from_int(&field, rng.gen_range(-3..=3))).collect())
                        .collect()
                })
                .collect();
            let t = torsion_with_candidates(&u, &field, &cands).unwrap().torsion;
            assert!(t.eq_mod_gamma(&base));
        }
    }

    #[test]
    fn delta_factorization_and_content() {
        for s in [2, 3] {
            let params = p(s);
            for r in (1..params.t() as i64).filter(|r| r % 3 != 0) {
                let f = delta_factorization(params, r).unwrap();
                assert!(f.mod_gamma);
                assert_eq!(f.content, 2);
                assert_eq!(f.norm, BigRational::from_integer(BigInt::from(9)));
                assert_eq!(f.exponents, exponent_matrix(params).unwrap().column);
            }
            assert!(epsilon_sign_symmetry(params, 2).unwrap());
        }
    }

    #[test]
    fn circulant_ranks() {
        assert_eq!(circulant_rank(&ExponentMatrix { column: vec![1, 1, 1] }), 1);
        for s in [2, 3] {
            let a = exponent_matrix(p(s)).unwrap();
            assert_eq!(circulant_rank(&a), a.order());
            assert_eq!(direct_rank(&a.to_int_matrix()).unwrap(), a.order());
        }
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert!(ExponentMatrix::from_matrix(&m).is_err());
    }

    #[test]
    fn independence_s2() {
        let r = independence_check(p(2), 256).unwrap();
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn distinctness_s2() {
        let r = distinguish_space_forms(p(2), 2).unwrap();
        assert_eq!(r.multisets, 6 + 21);
        assert!(r.ok(), "{:?}", r.mismatches);
        let t = |e: &[i64]| tau_closed_form(p(2), e).unwrap();
        assert!(t(&[1]).eq_mod_gamma(&t(&[8])));
        assert!(!t(&[1]).eq_mod_gamma(&t(&[2])));
        assert!(!t(&[1, 1]).eq_mod_gamma(&t(&[1, 2])));
    }
}
