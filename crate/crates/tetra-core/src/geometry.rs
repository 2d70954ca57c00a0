//! Representation matrices, the orbit polytope of a free action on S^3,
//! facet certificates and the fundamental domain.
//!
//! Vertices of the orbit polytope are named by group elements: g stands
//! for the point g·v_0. Writing g = g_j x^h with g_j in {1, p, q, pq}
//! places the vertex in the plane Π_j, at position h of a regular
//! 2·3^s-gon. All arithmetic happens in Q(ζ_(4·3^s)), which contains i,
//! ζ = ζ_(3^s), ω = e^(iπ/3) and e^(iπ/(2·3^s)).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::complexes::{ell_hat, transport};
use crate::cyclo::{matrix_rank, CycloField, CycloNumber, Field, Part};
use crate::error::{Error, Result};
use crate::group::{check_ell, Automorphism, GroupElement, GroupParams, Q8};
use crate::interval;

pub type Mat2 = [[CycloNumber; 2]; 2];
pub type Vec2 = [CycloNumber; 2];

/// Q(ζ_M) with M = 4·3^s.
pub fn geometry_field(params: GroupParams) -> Result<Field> {
    CycloField::new(4 * params.t())
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

fn imag_unit(params: GroupParams, field: &Field) -> CycloNumber {
    CycloNumber::root(field, params.t() as i64)
}

/// ζ^e with ζ = e^(2πi/3^s).
fn zeta(field: &Field, e: i64) -> CycloNumber {
    CycloNumber::root(field, 4 * e)
}

/// ω = e^(iπ/3).
pub fn omega(params: GroupParams, field: &Field) -> CycloNumber {
    CycloNumber::root(field, 2 * params.a() as i64)
}

/// √-3 = 2ω - 1.
pub fn sqrt_minus_three(params: GroupParams, field: &Field) -> CycloNumber {
    omega(params, field).scale(&BigRational::from_integer(BigInt::from(2))).sub(&CycloNumber::one(field))
}

/// Real part of a field element, as an element of the real subfield.
fn re(x: &CycloNumber) -> CycloNumber {
    x.two_re().scale(&half())
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat_vec(a: &Mat2, v: &Vec2) -> Vec2 {
    [a[0][0].mul(&v[0]).add(&a[0][1].mul(&v[1])), a[1][0].mul(&v[0]).add(&a[1][1].mul(&v[1]))]
}

pub fn mat_identity(field: &Field) -> Mat2 {
    let (o, z) = (CycloNumber::one(field), CycloNumber::zero(field));
    [[o.clone(), z.clone()], [z, o]]
}

fn mat_scale(a: &Mat2, c: &CycloNumber) -> Mat2 {
    [[a[0][0].mul(c), a[0][1].mul(c)], [a[1][0].mul(c), a[1][1].mul(c)]]
}

fn mat_add(a: &Mat2, b: &Mat2) -> Mat2 {
    [[a[0][0].add(&b[0][0]), a[0][1].add(&b[0][1])], [a[1][0].add(&b[1][0]), a[1][1].add(&b[1][1])]]
}

fn conj_transpose(a: &Mat2) -> Mat2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

pub fn is_unitary(a: &Mat2) -> bool {
    let f = a[0][0].field().clone();
    mat_mul(a, &conj_transpose(a)) == mat_identity(&f)
}

/// Z_0 = -1/2 [[1+i, 1+i], [-1+i, 1-i]].
pub fn z0_matrix(params: GroupParams, field: &Field) -> Mat2 {
    let i = imag_unit(params, field);
    let one = CycloNumber::one(field);
    let m = [[one.add(&i), one.add(&i)], [i.sub(&one), one.sub(&i)]];
    mat_scale(&m, &CycloNumber::from_rational(field, -half()))
}

pub fn p_matrix(params: GroupParams, field: &Field) -> Mat2 {
    let i = imag_unit(params, field);
    let z = CycloNumber::zero(field);
    [[i.clone(), z.clone()], [z, i.neg()]]
}

pub fn q_matrix(field: &Field) -> Mat2 {
    let (o, z) = (CycloNumber::one(field), CycloNumber::zero(field));
    [[z.clone(), o.clone()], [o.neg(), z]]
}

/// Z = ζ^ℓ Z_0.
pub fn z_matrix(params: GroupParams, ell: i64, field: &Field) -> Mat2 {
    mat_scale(&z0_matrix(params, field), &zeta(field, ell))
}

/// The matrix of ±p^m q^n without the z part.
fn q8_matrix(params: GroupParams, u: Q8, field: &Field) -> Mat2 {
    let mut m = mat_identity(field);
    if u.m == 1 {
        m = mat_mul(&m, &p_matrix(params, field));
    }
    if u.n == 1 {
        m = mat_mul(&m, &q_matrix(field));
    }
    if u.neg {
        m = mat_scale(&m, &CycloNumber::from_int(field, -1));
    }
    m
}

/// α_ℓ(g) for a single element.
pub fn repr(params: GroupParams, ell: i64, g: &GroupElement, field: &Field) -> Result<Mat2> {
    check_ell(params, ell)?;
    let mut m = q8_matrix(params, g.u, field);
    let z = z_matrix(params, ell, field);
    for _ in 0..g.k {
        m = mat_mul(&m, &z);
    }
    Ok(m)
}

/// α_ℓ on the whole group, indexed by element index.
#[derive(Clone, Debug)]
pub struct Representation {
    pub params: GroupParams,
    pub ell: i64,
    pub field: Field,
    mats: Vec<Mat2>,
}

impl Representation {
    pub fn new(params: GroupParams, ell: i64, field: &Field) -> Result<Self> {
        let ell = check_ell(params, ell)?;
        let z = z_matrix(params, ell, field);
        let mut zpow = vec![mat_identity(field)];
        for k in 1..params.t() as usize {
            zpow.push(mat_mul(&zpow[k - 1], &z));
        }
        let mats =
            params.elements().iter().map(|g| mat_mul(&q8_matrix(params, g.u, field), &zpow[g.k as usize])).collect();
        Ok(Representation { params, ell, field: field.clone(), mats })
    }

    pub fn mat(&self, g: &GroupElement) -> &Mat2 {
        &self.mats[g.index()]
    }

    pub fn is_homomorphism_on(&self, pairs: &[(GroupElement, GroupElement)]) -> bool {
        pairs.iter().all(|(g, h)| mat_mul(self.mat(g), self.mat(h)) == *self.mat(&(*g * *h)))
    }

    /// The defining relations on the generator matrices themselves.
    pub fn relations_hold(&self) -> bool {
        let f = &self.field;
        let (p, q) = (p_matrix(self.params, f), q_matrix(f));
        let z = z_matrix(self.params, self.ell, f);
        let pq = mat_mul(&p, &q);
        let minus = mat_scale(&mat_identity(f), &CycloNumber::from_int(f, -1));
        let mut zt = mat_identity(f);
        for _ in 0..self.params.t() {
            zt = mat_mul(&zt, &z);
        }
        let zinv = conj_transpose(&z);
        mat_mul(&p, &p) == minus
            && mat_mul(&q, &q) == minus
            && mat_mul(&pq, &pq) == minus
            && mat_mul(&mat_mul(&z, &p), &zinv) == q
            && mat_mul(&mat_mul(&z, &q), &zinv) == pq
            && zt == mat_identity(f)
    }

    pub fn all_unitary(&self) -> bool {
        self.mats.iter().all(is_unitary)
    }

    pub fn trace(&self, g: &GroupElement) -> CycloNumber {
        let m = self.mat(g);
        m[0][0].add(&m[1][1])
    }
}

/// Z_0 = -1/2 (1 + P + Q + PQ), checked against a given Z_0.
pub fn quaternion_identity_check(params: GroupParams, z0: &Mat2, field: &Field) -> bool {
    let p = p_matrix(params, field);
    let q = q_matrix(field);
    let sum = mat_add(&mat_add(&mat_identity(field), &p), &mat_add(&q, &mat_mul(&p, &q)));
    mat_scale(&sum, &CycloNumber::from_rational(field, -half())) == *z0
}

/// The character inner products ⟨Ind_H C_μ, V_h⟩ for all units h, where
/// μ = ζ^ℓ e^(-iπ/3) is the eigenvalue of x on the base line. Only the h
/// with nonzero multiplicity are returned.
pub fn induced_decomposition(params: GroupParams, ell: i64) -> Result<Vec<(i64, i64)>> {
    let ell = check_ell(params, ell)?;
    let field = geometry_field(params)?;
    let t = params.t() as i64;
    let a = params.a() as i64;
    let mu = zeta(&field, ell).mul_root(-2 * a);
    let mut x_log = BTreeMap::new();
    for m in 0..2 * t {
        x_log.insert(params.x_pow(m), m);
    }
    let reps = params.coset_reps();
    let elements = params.elements();
    let induced: Vec<CycloNumber> = elements
        .iter()
        .map(|g| {
            reps.iter().fold(CycloNumber::zero(&field), |acc, r| match x_log.get(&(r.inverse() * *g * *r)) {
                Some(&m) => acc.add(&mu.pow(m as u64)),
                None => acc,
            })
        })
        .collect();
    // traces of ±p^m q^n Z_0^j; the ζ^(hk) factor is added per h
    let z0 = z0_matrix(params, &field);
    let z0_pow = [mat_identity(&field), z0.clone(), mat_mul(&z0, &z0)];
    let base: Vec<CycloNumber> = elements
        .iter()
        .map(|g| {
            let m = mat_mul(&q8_matrix(params, g.u, &field), &z0_pow[g.k as usize % 3]);
            m[0][0].add(&m[1][1])
        })
        .collect();
    let order = BigRational::from_integer(BigInt::from(params.order()));
    let mut out = Vec::new();
    for h in (1..t).filter(|h| h % 3 != 0) {
        let mut acc = CycloNumber::zero(&field);
        for (i, g) in elements.iter().enumerate() {
            let chi_h = base[i].mul(&zeta(&field, h * g.k as i64));
            acc = acc.add(&induced[i].mul(&chi_h.conj()));
        }
        let v = acc.scale(&(BigRational::from_integer(BigInt::from(1)) / &order));
        let r = v
            .as_rational()
            .filter(|r| r.is_integer())
            .ok_or_else(|| Error::Verification(format!("non-integral multiplicity for h = {h}")))?;
        let n: i64 = r.to_integer().try_into().map_err(|_| Error::Overflow("multiplicity"))?;
        if n != 0 {
            out.push((h, n));
        }
    }
    Ok(out)
}

/// One face of a regular polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PolygonFace {
    Empty,
    Vertex(i64),
    Edge(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DualClass {
    EmptyFace,
    Vertex(i64),
    Edge(i64),
    Invalid,
}

/// ⟨e^(2πih/n), v̂⟩ compared with 1, for the regular n-gon.
pub fn classify_dual_vector(vhat: &CycloNumber, n: u32) -> Result<DualClass> {
    let field = vhat.field().clone();
    let m = field.conductor();
    if !m.is_multiple_of(n) {
        return Err(Error::Param(format!("the {n}-gon does not live in Q(ζ_{m})")));
    }
    let step = (m / n) as i64;
    let conj = vhat.conj();
    let one = CycloNumber::one(&field);
    let mut touching = Vec::new();
    for h in 0..n as i64 {
        let slack = one.sub(&re(&conj.mul_root(step * h)));
        match certify_real_sign(&slack)? {
            Ordering::Less => return Ok(DualClass::Invalid),
            Ordering::Equal => touching.push(h),
            Ordering::Greater => {}
        }
    }
    let n = n as i64;
    Ok(match touching.as_slice() {
        [] => DualClass::EmptyFace,
        [h] => DualClass::Vertex(*h),
        [h, k] if (h + 1) % n == *k => DualClass::Edge(*h),
        [0, k] if *k == n - 1 => DualClass::Edge(n - 1),
        _ => DualClass::Invalid,
    })
}

fn certify_real_sign(x: &CycloNumber) -> Result<Ordering> {
    x.certify_sign_with_cap(Part::Re, interval::precision_cap())
}

/// The face of the joint P̃_0 ⊛ P̃_1 ⊛ P̃_2 ⊛ P̃_3 of 2·3^s-gons with the
/// given component faces, as (plane, position) vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointFace {
    pub vertices: Vec<(usize, i64)>,
    pub dim: i64,
}

pub fn joint_face(params: GroupParams, faces: &[PolygonFace; 4]) -> JointFace {
    let n = params.x_order() as i64;
    let mut vertices = Vec::new();
    for (j, f) in faces.iter().enumerate() {
        match *f {
            PolygonFace::Empty => {}
            PolygonFace::Vertex(h) => vertices.push((j, h.rem_euclid(n))),
            PolygonFace::Edge(h) => {
                vertices.push((j, h.rem_euclid(n)));
                vertices.push((j, (h + 1).rem_euclid(n)));
            }
        }
    }
    let dim = vertices.len() as i64 - 1;
    JointFace { vertices, dim }
}

/// A functional ⟨·, z̃⟩ on C^4 given by z̃ in the basis ṽ_0..ṽ_3.
pub type Functional = [CycloNumber; 4];

/// z̃_2 = ω²z̃_0 - ωz̃_1 and z̃_3 = ωz̃_0 + ω²z̃_1.
pub fn admissible_functional_check(params: GroupParams, z: &Functional) -> bool {
    let field = z[0].field().clone();
    let w = omega(params, &field);
    let w2 = w.mul(&w);
    z[2] == w2.mul(&z[0]).sub(&w.mul(&z[1])) && z[3] == w.mul(&z[0]).add(&w2.mul(&z[1]))
}

/// Whether the real functional vanishes on ker π, spanned over R by
/// R̃_0, R̃_1, iR̃_0, iR̃_1.
pub fn vanishes_on_kernel(params: GroupParams, z: &Functional) -> bool {
    let field = z[0].field().clone();
    let r = sqrt_minus_three(params, &field);
    let o = CycloNumber::one(&field);
    let i = imag_unit(params, &field);
    let kernel = [[r.clone(), o.clone(), o.clone(), o.clone()], [o.neg(), r, o.neg(), o]];
    kernel.iter().all(|k| {
        [CycloNumber::one(&field), i.clone()].iter().all(|c| {
            let s = (0..4).fold(CycloNumber::zero(&field), |acc, j| acc.add(&c.mul(&k[j]).mul(&z[j].conj())));
            s.two_re().is_zero()
        })
    })
}

/// The orbit polytope of α_ℓ with vertex labels transported from the base
/// action ℓ̂: the vertex named g is α_ℓ(ψ_ℓ(g))·v_0, where v_0 is the
/// eigenvector of α_ℓ(x_ℓ) for e^(iπ/3^s).
pub struct OrbitPolytope {
    pub params: GroupParams,
    pub ell: i64,
    pub field: Field,
    pub rep: Representation,
    pub psi: Automorphism,
    pub lambda: CycloNumber,
    pub v0: Vec2,
    /// ⟨v_0, v_0⟩; v_0 has first coordinate 1 and is not unit-normalized.
    pub norm0: CycloNumber,
    points: Vec<Vec2>,
    coords: Vec<Vec2>,
}

impl OrbitPolytope {
    pub fn new(params: GroupParams, ell: i64) -> Result<Self> {
        let ell = check_ell(params, ell)?;
        let field = geometry_field(params)?;
        let rep = Representation::new(params, ell, &field)?;
        let psi = transport(params, ell)?;
        let lambda = CycloNumber::root(&field, 2);
        let x = rep.mat(&psi.apply(&params.x())).clone();
        let v0 = eigenvector(&x, &lambda)?;
        let norm0 = v0[0].abs2().add(&v0[1].abs2());
        let points: Vec<Vec2> = params.elements().iter().map(|g| mat_vec(rep.mat(&psi.apply(g)), &v0)).collect();
        let v1 = points[params.p().index()].clone();
        let det = v0[0].mul(&v1[1]).sub(&v1[0].mul(&v0[1]));
        if det.is_zero() {
            return Err(Error::Verification("v_0 and v_1 are dependent".into()));
        }
        let inv = det.inverse()?;
        let coords = points
            .iter()
            .map(|w| {
                let al = w[0].mul(&v1[1]).sub(&v1[0].mul(&w[1])).mul(&inv);
                let be = v0[0].mul(&w[1]).sub(&w[0].mul(&v0[1])).mul(&inv);
                [al, be]
            })
            .collect();
        Ok(OrbitPolytope { params, ell, field, rep, psi, lambda, v0, norm0, points, coords })
    }

    /// The base action ℓ̂.
    pub fn base(params: GroupParams) -> Result<Self> {
        Self::new(params, ell_hat(params))
    }

    pub fn point(&self, g: &GroupElement) -> &Vec2 {
        &self.points[g.index()]
    }

    /// X v_0 = λ v_0 and X^(2·3^s) v_0 = v_0.
    pub fn eigen_check(&self) -> bool {
        let x = self.rep.mat(&self.psi.apply(&self.params.x()));
        let xv = mat_vec(x, &self.v0);
        let mut pw = mat_identity(&self.field);
        for _ in 0..self.params.x_order() {
            pw = mat_mul(&pw, x);
        }
        xv == [self.lambda.mul(&self.v0[0]), self.lambda.mul(&self.v0[1])] && mat_vec(&pw, &self.v0) == self.v0
    }

    /// Every vertex has the Hermitian norm of v_0.
    pub fn on_sphere(&self) -> bool {
        self.points.iter().all(|w| w[0].abs2().add(&w[1].abs2()) == self.norm0)
    }

    /// √-3 v_0 + v_1 + v_2 + v_3 = 0 and -v_0 + √-3 v_1 - v_2 + v_3 = 0.
    pub fn kernel_relations_check(&self) -> bool {
        let r = sqrt_minus_three(self.params, &self.field);
        let v: Vec<&Vec2> = self.params.coset_reps().iter().map(|g| self.point(g)).collect();
        let o = CycloNumber::one(&self.field);
        let rels = [[r.clone(), o.clone(), o.clone(), o.clone()], [o.neg(), r, o.neg(), o]];
        rels.iter().all(|c| {
            (0..2).all(|i| (0..4).fold(CycloNumber::zero(&self.field), |acc, j| acc.add(&c[j].mul(&v[j][i]))).is_zero())
        })
    }

    /// π(g·ṽ_j) = g·v_j for the generators, where g·ṽ_j is read off the
    /// vertex labels: g g_j = g_j' x^h gives λ^h ṽ_j'.
    pub fn projection_equivariance_check(&self) -> bool {
        let p = self.params;
        let gens = [p.x(), p.z(), p.p(), p.q(), p.pq()];
        gens.iter().all(|g| {
            p.coset_reps().iter().all(|gj| {
                let lhs = mat_vec(self.rep.mat(&self.psi.apply(g)), self.point(gj));
                let (j2, h) = (*g * *gj).vertex_label();
                let base = self.point(&p.coset_reps()[j2]);
                let l = self.lambda.pow(h as u64);
                lhs == [l.mul(&base[0]), l.mul(&base[1])]
            })
        })
    }

    /// ⟨ṽ, z̃⟩ at the lift of vertex g, read from its label.
    pub fn value_r8(&self, z: &Functional, g: &GroupElement) -> CycloNumber {
        let (j, h) = g.vertex_label();
        re(&z[j].conj().mul_root(2 * h as i64))
    }

    /// The same functional pulled back to V through the section
    /// α v_0 + β v_1 -> α ṽ_0 + β ṽ_1, at the actual point g·v_0.
    pub fn value_r4(&self, z: &Functional, g: &GroupElement) -> CycloNumber {
        let c = &self.coords[g.index()];
        re(&c[0].mul(&z[0].conj()).add(&c[1].mul(&z[1].conj())))
    }

    /// Dimension of the affine hull of a vertex set in R^4.
    pub fn affine_dimension(&self, vertices: &[GroupElement]) -> usize {
        let i = imag_unit(self.params, &self.field);
        let real = |g: &GroupElement| -> Vec<CycloNumber> {
            let w = self.point(g);
            let mut v = Vec::new();
            for c in w {
                v.push(re(c));
                v.push(re(&c.mul(&i).neg()));
            }
            v
        };
        let Some(first) = vertices.first() else { return 0 };
        let o = real(first);
        let rows: Vec<Vec<CycloNumber>> =
            vertices[1..].iter().map(|g| real(g).iter().zip(&o).map(|(a, b)| a.sub(b)).collect()).collect();
        matrix_rank(&rows)
    }
}

fn eigenvector(x: &Mat2, lambda: &CycloNumber) -> Result<Vec2> {
    let field = lambda.field().clone();
    let one = CycloNumber::one(&field);
    let v = if !x[0][1].is_zero() {
        [one, lambda.sub(&x[0][0]).div(&x[0][1])?]
    } else if !x[1][0].is_zero() {
        [one, x[1][0].div(&lambda.sub(&x[1][1]))?]
    } else {
        return Err(Error::Verification("x acts diagonally".into()));
    };
    if mat_vec(x, &v) != [lambda.mul(&v[0]), lambda.mul(&v[1])] {
        return Err(Error::Verification("λ is not an eigenvalue of x".into()));
    }
    Ok(v)
}

/// A facet of the orbit polytope, named by its vertex pattern.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FacetLabel {
    /// O(h) = [x^h, x^(h+1), px^(h+2a), px^(h+2a+1), qx^(h+a), qx^(h+a+1)].
    Octahedron { h: i64 },
    /// T_(g,g')(h,k) = [gx^h, gx^(h+1), g'x^k, g'x^(k+1)].
    Tetrahedron { g: GroupElement, g2: GroupElement, h: i64, k: i64 },
}

impl FacetLabel {
    /// T(h,k) = T_(1,p)(h,k).
    pub fn t(params: GroupParams, h: i64, k: i64) -> Self {
        FacetLabel::Tetrahedron { g: params.one(), g2: params.p(), h, k }
    }

    pub fn vertices(&self, params: GroupParams) -> Vec<GroupElement> {
        let a = params.a() as i64;
        let x = |h: i64| params.x_pow(h);
        match *self {
            FacetLabel::Octahedron { h } => vec![
                x(h),
                x(h + 1),
                params.p() * x(h + 2 * a),
                params.p() * x(h + 2 * a + 1),
                params.q() * x(h + a),
                params.q() * x(h + a + 1),
            ],
            FacetLabel::Tetrahedron { g, g2, h, k } => vec![g * x(h), g * x(h + 1), g2 * x(k), g2 * x(k + 1)],
        }
    }

    pub fn vertex_set(&self, params: GroupParams) -> BTreeSet<GroupElement> {
        self.vertices(params).into_iter().collect()
    }

    pub fn name(&self, params: GroupParams) -> String {
        match self {
            FacetLabel::Octahedron { h } => format!("O({h})"),
            FacetLabel::Tetrahedron { g, g2, h, k } => {
                if g.is_one() && *g2 == params.p() {
                    format!("T({h},{k})")
                } else {
                    format!("T[{g},{g2}]({h},{k})")
                }
            }
        }
    }
}

/// h + 3^(s-1) < k < h + 2·3^(s-1), modulo 2·3^s.
pub fn in_tetrahedron_window(params: GroupParams, h: i64, k: i64) -> bool {
    let a = params.a() as i64;
    let d = (k - h).rem_euclid(params.x_order() as i64);
    a < d && d < 2 * a
}

/// Reads a vertex set as T(h,k) = [x^h, x^(h+1), px^k, px^(k+1)].
fn as_basic_tetrahedron(params: GroupParams, set: &BTreeSet<GroupElement>) -> Option<(i64, i64)> {
    let n = params.x_order() as i64;
    let mut planes: [Vec<i64>; 4] = Default::default();
    for g in set {
        let (j, h) = g.vertex_label();
        planes[j].push(h as i64);
    }
    let edge = |v: &Vec<i64>| -> Option<i64> {
        match v.as_slice() {
            [a, b] if (a + 1) % n == *b => Some(*a),
            [a, b] if (b + 1) % n == *a => Some(*b),
            _ => None,
        }
    };
    if !planes[2].is_empty() || !planes[3].is_empty() {
        return None;
    }
    Some((edge(&planes[0])?, edge(&planes[1])?))
}

pub fn translate(g: &GroupElement, set: &BTreeSet<GroupElement>) -> BTreeSet<GroupElement> {
    set.iter().map(|v| *g * *v).collect()
}

/// c·e^(i(h+1/2)φ) with φ = π/3^s and c = 1/cos(φ/2): the dual-polygon
/// vertex defining the h-th edge.
pub fn dual_edge(field: &Field, h: i64) -> CycloNumber {
    let c = CycloNumber::root(field, 1)
        .two_re()
        .inverse()
        .expect("cos(φ/2) ≠ 0")
        .scale(&BigRational::from_integer(BigInt::from(2)));
    c.mul_root(2 * h + 1)
}

/// The functional of the proof that O(h) is a facet.
pub fn octahedron_functional(params: GroupParams, field: &Field, h: i64) -> Functional {
    let a = params.a() as i64;
    [dual_edge(field, h), dual_edge(field, h + 2 * a), dual_edge(field, h + a), CycloNumber::zero(field)]
}

/// The functional of the proof that T(h,k) is a facet.
pub fn tetrahedron_functional(params: GroupParams, field: &Field, h: i64, k: i64) -> Functional {
    let w = omega(params, field);
    let w2 = w.mul(&w);
    let (z0, z1) = (dual_edge(field, h), dual_edge(field, k));
    let z2 = w2.mul(&z0).sub(&w.mul(&z1));
    let z3 = w.mul(&z0).add(&w2.mul(&z1));
    [z0, z1, z2, z3]
}

/// Exact and certified evidence that a vertex set is a facet.
#[derive(Clone, Debug, Serialize)]
pub struct FacetCertificate {
    pub facet: String,
    /// g with facet = g·(basic facet), where the functional lives.
    pub transform: String,
    pub basic: String,
    pub functional: Vec<String>,
    pub on_hyperplane: Vec<String>,
    /// Enclosure of min(1 - ⟨v, z̃⟩) over the vertices off the facet.
    pub min_margin: (f64, f64),
    pub admissible: bool,
    pub kernel_vanishing: bool,
    /// |z̃_2|, |z̃_3| < 1 for tetrahedra.
    pub interior_components: bool,
    /// The pulled-back functional on R^4 agrees with the R^8 values.
    pub r4_consistent: bool,
    pub affine_dim: usize,
    pub ok: bool,
}

pub fn vertex_name(g: &GroupElement) -> String {
    let (j, h) = g.vertex_label();
    format!("{}x^{h}", ["", "p", "q", "pq"][j])
}

/// Certifies a facet: the functional of the corresponding proof takes the
/// value 1 exactly on the claimed vertices and is certifiably below 1 on
/// all other vertices, and it factors through the projection to R^4.
pub fn verify_facet(poly: &OrbitPolytope, label: &FacetLabel) -> Result<FacetCertificate> {
    let params = poly.params;
    let field = &poly.field;
    let target = label.vertex_set(params);
    let (transform, basic, z) = match *label {
        FacetLabel::Octahedron { h } => (params.one(), label.clone(), octahedron_functional(params, field, h)),
        FacetLabel::Tetrahedron { .. } => {
            let found = params.elements().into_iter().find_map(|g| {
                let back = translate(&g.inverse(), &target);
                as_basic_tetrahedron(params, &back)
                    .filter(|&(h, k)| in_tetrahedron_window(params, h, k))
                    .map(|(h, k)| (g, h, k))
            });
            let (g, h, k) = found
                .ok_or_else(|| Error::Param(format!("{} is not an admissible tetrahedron", label.name(params))))?;
            (g, FacetLabel::t(params, h, k), tetrahedron_functional(params, field, h, k))
        }
    };
    let base_set = basic.vertex_set(params);
    let one = CycloNumber::one(field);
    let mut r4_consistent = true;
    let mut on_hyperplane = Vec::new();
    let mut all_ok = true;
    let mut min_margin: Option<(f64, f64)> = None;
    for v in params.elements() {
        let val = poly.value_r8(&z, &v);
        r4_consistent &= poly.value_r4(&z, &v) == val;
        let slack = one.sub(&val);
        if base_set.contains(&v) {
            all_ok &= slack.is_zero();
            on_hyperplane.push(vertex_name(&(transform * v)));
        } else {
            all_ok &= certify_real_sign(&slack)? == Ordering::Greater;
            let (lo, hi) = slack.enclose(64).0.bounds();
            let pair = (to_f64(&lo), to_f64(&hi));
            if min_margin.is_none_or(|m| pair.0 < m.0) {
                min_margin = Some(pair);
            }
        }
    }
    let interior_components = match basic {
        FacetLabel::Octahedron { .. } => z[3].is_zero(),
        FacetLabel::Tetrahedron { .. } => {
            let mut ok = true;
            for c in &z[2..] {
                ok &= certify_real_sign(&one.sub(&c.abs2()))? == Ordering::Greater;
            }
            ok
        }
    };
    let admissible = admissible_functional_check(params, &z);
    let kernel_vanishing = vanishes_on_kernel(params, &z);
    let affine_dim = poly.affine_dimension(&basic.vertices(params));
    let ok = all_ok && interior_components && admissible && kernel_vanishing && r4_consistent && affine_dim == 3;
    Ok(FacetCertificate {
        facet: label.name(params),
        transform: transform.to_string(),
        basic: basic.name(params),
        functional: z.iter().map(|c| c.to_string()).collect(),
        on_hyperplane,
        min_margin: min_margin.unwrap_or((f64::INFINITY, f64::INFINITY)),
        admissible,
        kernel_vanishing,
        interior_components,
        r4_consistent,
        affine_dim,
        ok,
    })
}

fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Every O(h) and every admissible T(h,k), h in 0..2·3^s.
pub fn basic_facets(params: GroupParams) -> Vec<FacetLabel> {
    let n = params.x_order() as i64;
    let mut out: Vec<FacetLabel> = (0..n).map(|h| FacetLabel::Octahedron { h }).collect();
    for h in 0..n {
        for k in 0..n {
            if in_tetrahedron_window(params, h, k) {
                out.push(FacetLabel::t(params, h, k));
            }
        }
    }
    out
}

/// Certificates for a list of facets, computed in parallel and returned in
/// input order.
pub fn verify_facets(poly: &OrbitPolytope, labels: &[FacetLabel]) -> Result<Vec<FacetCertificate>> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(labels.len().max(1));
    let chunk = labels.len().div_ceil(threads.max(1)).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = labels
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|l| verify_facet(poly, l)).collect::<Result<Vec<_>>>()))
            .collect();
        let mut out = Vec::new();
        for h in handles {
            out.extend(h.join().expect("facet thread panicked")?);
        }
        Ok(out)
    })
}

/// x^(3^(s-1)) q x maps the listed vertices of O(h) onto those of O(h+1)
/// in the order [qx^(h+a+1), qx^(h+a+2), x^(h+1), x^(h+2), px^(h+2a+1), px^(h+2a+2)].
pub fn octahedron_transport_check(params: GroupParams, h: i64, element: &GroupElement) -> bool {
    let a = params.a() as i64;
    let x = |e: i64| params.x_pow(e);
    let (p, q) = (params.p(), params.q());
    let expected = [q * x(h + a + 1), q * x(h + a + 2), x(h + 1), x(h + 2), p * x(h + 2 * a + 1), p * x(h + 2 * a + 2)];
    let src = FacetLabel::Octahedron { h }.vertices(params);
    src.iter().zip(expected.iter()).all(|(v, e)| *element * *v == *e)
}

/// The transporting element x^(3^(s-1)) q x.
pub fn octahedron_transporter(params: GroupParams) -> GroupElement {
    params.x_pow(params.a() as i64) * params.q() * params.x()
}

/// The tetrahedra of the fundamental domain, by colour.
pub fn fundamental_tetrahedra(params: GroupParams) -> [Vec<FacetLabel>; 3] {
    let a = params.a() as i64;
    let m = (a - 1) / 2;
    let (one, p, q) = (params.one(), params.p(), params.q());
    let red = (1..=m).map(|h| FacetLabel::Tetrahedron { g: one, g2: p, h, k: 2 * a }).collect();
    let green = (a + 1..=a + m).map(|h| FacetLabel::Tetrahedron { g: q, g2: one, h, k: 0 }).collect();
    let blue = (2 * a + 1..=2 * a + m).map(|h| FacetLabel::Tetrahedron { g: p, g2: q, h, k: a }).collect();
    [red, green, blue]
}

#[derive(Clone, Debug, Serialize)]
pub struct FundamentalDomain {
    pub s: u32,
    pub facets: Vec<String>,
    pub octahedra: usize,
    pub tetrahedra: usize,
    /// Each tetrahedron is admissible after the stated transport.
    pub step1: bool,
    pub admissible_pairs: usize,
    pub stabilizer_order: usize,
    /// K = ⟨x^3, p⟩ is the stabilizer of {Π_0, Π_1} and preserves the
    /// admissible T(h,k).
    pub stabilizer_ok: bool,
    pub k_orbits: usize,
    pub expected_orbits: usize,
    pub step2: bool,
    /// No group element maps one listed tetrahedron to another.
    pub step3: bool,
    pub offending: Option<(String, String)>,
}

impl FundamentalDomain {
    pub fn ok(&self) -> bool {
        self.step1 && self.step2 && self.step3
    }
}

fn subgroup(params: GroupParams, gens: &[GroupElement]) -> BTreeSet<GroupElement> {
    let mut set = BTreeSet::from([params.one()]);
    let mut frontier = vec![params.one()];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let n = g * *s;
            if set.insert(n) {
                frontier.push(n);
            }
        }
    }
    set
}

pub fn fundamental_domain(params: GroupParams) -> Result<FundamentalDomain> {
    let a = params.a() as i64;
    let t = params.t() as i64;
    let [red, green, blue] = fundamental_tetrahedra(params);
    let x = params.x();
    let xinv = x.inverse();
    let pq = params.pq();

    // Step 1
    let mut step1 = true;
    for f in &red {
        if let FacetLabel::Tetrahedron { h, k, .. } = *f {
            step1 &= in_tetrahedron_window(params, h, k);
        }
    }
    for f in &green {
        if let FacetLabel::Tetrahedron { h, .. } = *f {
            let moved = translate(&xinv, &f.vertex_set(params));
            step1 &= moved == FacetLabel::t(params, -1, h - 1).vertex_set(params)
                && in_tetrahedron_window(params, -1, h - 1);
        }
    }
    let blue_mover = params.x_pow(-t) * pq * x;
    for f in &blue {
        if let FacetLabel::Tetrahedron { h, .. } = *f {
            let moved = translate(&blue_mover, &f.vertex_set(params));
            step1 &= moved == FacetLabel::t(params, a + 1, h + 1).vertex_set(params)
                && in_tetrahedron_window(params, a + 1, h + 1);
        }
    }

    // Step 2
    let basic: Vec<BTreeSet<GroupElement>> = basic_facets(params)
        .into_iter()
        .filter(|f| matches!(f, FacetLabel::Tetrahedron { .. }))
        .map(|f| f.vertex_set(params))
        .collect();
    let basic_set: BTreeSet<&BTreeSet<GroupElement>> = basic.iter().collect();
    let k = subgroup(params, &[params.x_pow(3), params.p()]);
    let plane = |g: &GroupElement| g.vertex_label().0;
    let stabilizer: BTreeSet<GroupElement> = params
        .elements()
        .into_iter()
        .filter(|g| {
            let pair = BTreeSet::from([plane(&(*g * params.one())), plane(&(*g * params.p()))]);
            pair == BTreeSet::from([0, 1])
        })
        .collect();
    let preserves = basic.iter().all(|f| k.iter().all(|g| basic_set.contains(&translate(g, f))));
    let stabilizer_ok = stabilizer == k && preserves;
    let mut seen = BTreeSet::new();
    let mut k_orbits = 0;
    for f in &basic {
        if seen.contains(f) {
            continue;
        }
        k_orbits += 1;
        for g in &k {
            seen.insert(translate(g, f));
        }
    }
    let listed = red.len() + green.len() + blue.len();
    let expected_orbits = (3 * (a - 1) / 2) as usize;
    let step2 = stabilizer_ok
        && k_orbits == expected_orbits
        && listed == expected_orbits
        && basic.len().is_multiple_of(k.len())
        && basic.len() / k.len() == expected_orbits;

    // Step 3
    let all: Vec<FacetLabel> = red.iter().chain(&green).chain(&blue).cloned().collect();
    let sets: Vec<BTreeSet<GroupElement>> = all.iter().map(|f| f.vertex_set(params)).collect();
    let mut offending = None;
    'outer: for i in 0..sets.len() {
        for j in 0..sets.len() {
            if i == j {
                continue;
            }
            for g in params.elements() {
                if translate(&g, &sets[i]) == sets[j] {
                    offending = Some((all[i].name(params), all[j].name(params)));
                    break 'outer;
                }
            }
        }
    }
    let mut facets = vec![FacetLabel::Octahedron { h: 0 }.name(params)];
    facets.extend(all.iter().map(|f| f.name(params)));
    Ok(FundamentalDomain {
        s: params.s,
        facets,
        octahedra: 1,
        tetrahedra: listed,
        step1,
        admissible_pairs: basic.len(),
        stabilizer_order: k.len(),
        stabilizer_ok,
        k_orbits,
        expected_orbits,
        step2,
        step3: offending.is_none(),
        offending,
    })
}

/// The facets of the fundamental domain: O(0) and the coloured tetrahedra.
pub fn fundamental_facets(params: GroupParams) -> Vec<FacetLabel> {
    let mut out = vec![FacetLabel::Octahedron { h: 0 }];
    for c in fundamental_tetrahedra(params) {
        out.extend(c);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct FacetCensus {
    pub s: u32,
    pub vertices: usize,
    pub edges: usize,
    pub ridges: usize,
    pub octahedra: usize,
    pub tetrahedra: usize,
    pub euler: i64,
    /// Every ridge lies in exactly two facets.
    pub ridges_in_two_facets: bool,
    /// Octahedra have 8 triangular ridges and tetrahedra 4.
    pub ridge_counts_ok: bool,
    /// The ridges of O(0) are the eight triangles of its figure.
    pub octahedron_faces_ok: bool,
    /// The orbits of the fundamental facets are exactly the sets g·O(h)
    /// and g·T(h,k) from the definitions.
    pub matches_definition: bool,
}

impl FacetCensus {
    pub fn ok(&self) -> bool {
        self.ridges_in_two_facets
            && self.ridge_counts_ok
            && self.octahedron_faces_ok
            && self.matches_definition
            && self.euler == 0
    }
}

type VertexSet = Vec<usize>;

fn index_set(set: &BTreeSet<GroupElement>) -> VertexSet {
    let mut v: Vec<usize> = set.iter().map(|g| g.index()).collect();
    v.sort_unstable();
    v
}

/// The eight triangles of O(0), from the figure of the octahedron.
pub fn octahedron_triangles(params: GroupParams) -> Vec<[GroupElement; 3]> {
    let a = params.a() as i64;
    let x = |e: i64| params.x_pow(e);
    let (p, q) = (params.p(), params.q());
    let (o, x1, p0, p1, q0, q1) = (x(0), x(1), p * x(2 * a), p * x(2 * a + 1), q * x(a), q * x(a + 1));
    vec![[o, x1, p0], [x1, p0, p1], [o, q0, q1], [o, x1, q1], [p0, p1, q0], [p1, q0, q1], [o, p0, q0], [x1, p1, q1]]
}

pub fn facet_census(params: GroupParams) -> Result<FacetCensus> {
    let elements = params.elements();
    // facets as orbits of the fundamental ones
    let mut facets: BTreeMap<VertexSet, bool> = BTreeMap::new();
    for f in fundamental_facets(params) {
        let set = f.vertex_set(params);
        let octa = matches!(f, FacetLabel::Octahedron { .. });
        for g in &elements {
            facets.insert(index_set(&translate(g, &set)), octa);
        }
    }
    // the same from the definitions
    let mut defined: BTreeSet<VertexSet> = BTreeSet::new();
    for f in basic_facets(params) {
        let set = f.vertex_set(params);
        for g in &elements {
            defined.insert(index_set(&translate(g, &set)));
        }
    }
    let matches_definition = defined.len() == facets.len() && defined.iter().all(|f| facets.contains_key(f));

    let list: Vec<(&VertexSet, bool)> = facets.iter().map(|(k, v)| (k, *v)).collect();
    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); elements.len()];
    for (id, (f, _)) in list.iter().enumerate() {
        for &v in f.iter() {
            incidence[v].push(id);
        }
    }
    let mut ridges: BTreeMap<VertexSet, BTreeSet<usize>> = BTreeMap::new();
    for (id, (f, _)) in list.iter().enumerate() {
        let mut shared: BTreeMap<usize, usize> = BTreeMap::new();
        for &v in f.iter() {
            for &o in &incidence[v] {
                if o != id {
                    *shared.entry(o).or_default() += 1;
                }
            }
        }
        for (o, n) in shared {
            if n >= 3 {
                let inter: VertexSet = f.iter().filter(|v| list[o].0.contains(v)).copied().collect();
                let e = ridges.entry(inter).or_default();
                e.insert(id);
                e.insert(o);
            }
        }
    }
    let ridges_in_two_facets = ridges.values().all(|s| s.len() == 2);
    let mut per_facet = vec![0usize; list.len()];
    for (r, fs) in &ridges {
        if r.len() == 3 {
            for &f in fs {
                per_facet[f] += 1;
            }
        }
    }
    let ridge_counts_ok = ridges.keys().all(|r| r.len() == 3)
        && list.iter().zip(&per_facet).all(|((_, octa), n)| *n == if *octa { 8 } else { 4 });
    let octa0 = index_set(&FacetLabel::Octahedron { h: 0 }.vertex_set(params));
    let found: BTreeSet<VertexSet> = ridges.keys().filter(|r| r.iter().all(|v| octa0.contains(v))).cloned().collect();
    let figure: BTreeSet<VertexSet> =
        octahedron_triangles(params).iter().map(|tri| index_set(&tri.iter().copied().collect())).collect();
    let octahedron_faces_ok = found == figure;
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for r in ridges.keys() {
        for i in 0..r.len() {
            for j in i + 1..r.len() {
                edges.insert((r[i], r[j]));
            }
        }
    }
    let octahedra = list.iter().filter(|(_, o)| *o).count();
    let tetrahedra = list.len() - octahedra;
    let vertices = elements.len();
    let euler = vertices as i64 - edges.len() as i64 + ridges.len() as i64 - list.len() as i64;
    Ok(FacetCensus {
        s: params.s,
        vertices,
        edges: edges.len(),
        ridges: ridges.len(),
        octahedra,
        tetrahedra,
        euler,
        ridges_in_two_facets,
        ridge_counts_ok,
        octahedron_faces_ok,
        matches_definition,
    })
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
    fn representation_is_a_unitary_homomorphism() {
        for s in [2, 3] {
            let params = p(s);
            let field = geometry_field(params).unwrap();
            let z0 = z0_matrix(params, &field);
            assert_eq!(mat_mul(&mat_mul(&z0, &z0), &z0), mat_identity(&field));
            for ell in [1, 2, params.half() as i64] {
                let rep = Representation::new(params, ell, &field).unwrap();
                assert!(rep.relations_hold());
                assert!(rep.all_unitary());
                assert!(rep.mat(&params.one()) == &mat_identity(&field));
                assert_eq!(rep.trace(&params.z()), zeta(&field, ell).neg());
                let mut rng = ChaCha8Rng::seed_from_u64(s as u64 * 100 + ell as u64);
                let n = params.order();
                let pairs: Vec<_> = (0..200)
                    .map(|_| {
                        (
                            GroupElement::from_index(params, rng.gen_range(0..n)),
                            GroupElement::from_index(params, rng.gen_range(0..n)),
                        )
                    })
                    .collect();
                assert!(rep.is_homomorphism_on(&pairs));
                let z3 = mat_mul(&mat_mul(rep.mat(&params.z()), rep.mat(&params.z())), rep.mat(&params.z()));
                assert_eq!(z3, mat_scale(&mat_identity(&field), &zeta(&field, 3 * ell)));
            }
        }
    }

    #[test]
    fn quaternion_identity() {
        for s in [2, 3] {
            let params = p(s);
            let field = geometry_field(params).unwrap();
            let z0 = z0_matrix(params, &field);
            assert!(quaternion_identity_check(params, &z0, &field));
            let mut bad = z0.clone();
            bad[0][1] = bad[0][1].neg();
            assert!(!quaternion_identity_check(params, &bad, &field));
        }
    }

    #[test]
    fn induced_representation_decomposition() {
        for s in [2, 3] {
            let params = p(s);
            let (t, a) = (params.t() as i64, params.a() as i64);
            for ell in (1..t).filter(|l| l % 3 != 0) {
                let d = induced_decomposition(params, ell).unwrap();
                let mut expected = vec![(ell, 1), ((ell - a).rem_euclid(t), 1)];
                expected.sort();
                assert_eq!(d, expected, "s={s} ℓ={ell}");
            }
        }
    }

    #[test]
    fn orbit_polytope_basics() {
        let params = p(2);
        for ell in [params.half() as i64, 1, 7] {
            let poly = OrbitPolytope::new(params, ell).unwrap();
            assert!(poly.eigen_check());
            assert!(poly.on_sphere());
            assert!(poly.kernel_relations_check());
            assert!(poly.projection_equivariance_check());
        }
    }

    #[test]
    fn dual_polygon_classification() {
        let params = p(2);
        let field = geometry_field(params).unwrap();
        let n = params.x_order();
        assert_eq!(classify_dual_vector(&dual_edge(&field, 3), n).unwrap(), DualClass::Edge(3));
        assert_eq!(classify_dual_vector(&CycloNumber::zero(&field), n).unwrap(), DualClass::EmptyFace);
        let twice = dual_edge(&field, 0).scale(&BigRational::from_integer(BigInt::from(2)));
        assert_eq!(classify_dual_vector(&twice, n).unwrap(), DualClass::Invalid);
        let mid = dual_edge(&field, 4).add(&dual_edge(&field, 5)).scale(&half());
        assert_eq!(classify_dual_vector(&mid, n).unwrap(), DualClass::Vertex(5));
    }

    #[test]
    fn admissible_functionals() {
        let params = p(2);
        let field = geometry_field(params).unwrap();
        let z = octahedron_functional(params, &field, 0);
        assert!(admissible_functional_check(params, &z));
        assert!(vanishes_on_kernel(params, &z));
        let zero = CycloNumber::zero(&field);
        let zeros = [zero.clone(), zero.clone(), zero.clone(), zero.clone()];
        assert!(admissible_functional_check(params, &zeros));
        let one = CycloNumber::one(&field);
        let bad = [one.clone(), zero.clone(), one, zero];
        assert!(!admissible_functional_check(params, &bad));
        assert!(!vanishes_on_kernel(params, &bad));
    }

    #[test]
    fn joint_faces() {
        let params = p(2);
        use PolygonFace::*;
        assert_eq!(joint_face(params, &[Edge(0), Edge(6), Edge(3), Empty]).dim, 5);
        assert_eq!(joint_face(params, &[Edge(0), Edge(6), Empty, Empty]).dim, 3);
        assert_eq!(joint_face(params, &[Empty; 4]).dim, -1);
    }

    #[test]
    fn facets_certify_s2() {
        let params = p(2);
        let poly = OrbitPolytope::base(params).unwrap();
        let a = params.a() as i64;
        let o = verify_facet(&poly, &FacetLabel::Octahedron { h: 0 }).unwrap();
        assert!(o.ok, "{o:?}");
        assert_eq!(o.on_hyperplane.len(), 6);
        let t = verify_facet(&poly, &FacetLabel::t(params, 0, 2 * a - 1)).unwrap();
        assert!(t.ok, "{t:?}");
        assert!(verify_facet(&poly, &FacetLabel::t(params, 0, a)).is_err());
        for c in verify_facets(&poly, &fundamental_facets(params)).unwrap() {
            assert!(c.ok, "{c:?}");
        }
    }

    #[test]
    fn facets_certify_for_other_actions() {
        let params = p(2);
        let poly = OrbitPolytope::new(params, 1).unwrap();
        for c in verify_facets(&poly, &fundamental_facets(params)).unwrap() {
            assert!(c.ok, "{c:?}");
        }
    }

    #[test]
    fn octahedron_transport() {
        let params = p(2);
        let g = octahedron_transporter(params);
        assert!(octahedron_transport_check(params, 0, &g));
        assert!(!octahedron_transport_check(params, 0, &(params.q() * params.x())));
        let params = p(3);
        assert!(octahedron_transport_check(params, 5, &octahedron_transporter(params)));
    }

    #[test]
    fn fundamental_domain_steps() {
        for (s, n) in [(2, 3), (3, 12)] {
            let fd = fundamental_domain(p(s)).unwrap();
            assert!(fd.ok(), "{fd:?}");
            assert_eq!(fd.tetrahedra, n);
        }
    }

    #[test]
    fn census_s2() {
        let c = facet_census(p(2)).unwrap();
        assert!(c.ok(), "{c:?}");
        assert_eq!((c.vertices, c.octahedra, c.tetrahedra, c.euler), (72, 72, 216, 0));
    }
}
