//! The equivariant chain complexes C•, E•, the cyclic resolution Z•, the
//! quotient W•, and the maps φ, φ', D and γ between them.
//!
//! All matrices use the row convention of [`crate::group_ring`]: row `i` of
//! `∂_k` lists `∂(e_{k,i})`, and a chain map `F: A -> B` commutes with the
//! boundaries when `∂^A_k · F_(k-1) = F_k · ∂^B_k`.
//!
//! Every period is written for the base action ℓ̂ = (3^(s-1)+1)/2 and then
//! transported to an arbitrary ℓ by ψ_ℓ = φ_ℓ^(-1) ∘ φ_ℓ̂, which replaces
//! x, p, q by x_ℓ, p_ℓ, q_ℓ.

use serde::Serialize;

use crate::cyclo::{CycloNumber, Field};
use crate::error::{Error, Result};
use crate::group::{check_ell, phi_ell, Automorphism, GroupElement, GroupParams};
use crate::group_ring::{GroupRingElement, GroupRingMatrix};
use crate::homology::{IntComplex, IntMatrix};

/// The base action whose generator x rotates the first plane by π/3^s.
pub fn ell_hat(params: GroupParams) -> i64 {
    params.half() as i64
}

/// ψ_ℓ = φ_ℓ^(-1) ∘ φ_ℓ̂.
pub fn transport(params: GroupParams, ell: i64) -> Result<Automorphism> {
    let target = phi_ell(params, ell)?;
    let base = phi_ell(params, ell_hat(params))?;
    Ok(target.inverse().compose(&base))
}

/// χ(x_ℓ) as a power of ζ = ζ_(3^s): the exponent r·ℓ̂ with rℓ ≡ 1.
pub fn zeta_ell_exponent(params: GroupParams, ell: i64) -> Result<i64> {
    let psi = transport(params, ell)?;
    Ok(psi.apply(&params.x()).k as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComplexKind {
    C,
    E,
    Cyclic,
}

/// A bounded chain complex of free Z[G]-modules in degrees `0..=top`.
#[derive(Clone, Debug)]
pub struct GroupComplex {
    pub params: GroupParams,
    pub kind: ComplexKind,
    pub ells: Vec<i64>,
    pub ranks: Vec<usize>,
    /// `d[k]` is `∂_k`; `d[0]` has zero columns.
    pub d: Vec<GroupRingMatrix>,
    pub labels: Vec<Vec<String>>,
}

/// Where an identity between matrices first fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub identity: String,
    pub degree: usize,
    pub row: usize,
    pub col: usize,
}

impl std::fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails in degree {} at ({}, {})", self.identity, self.degree, self.row, self.col)
    }
}

fn compare(identity: &str, degree: usize, lhs: &GroupRingMatrix, rhs: &GroupRingMatrix) -> Option<IdentityFailure> {
    lhs.first_difference(rhs).map(|(row, col)| IdentityFailure { identity: identity.to_string(), degree, row, col })
}

impl GroupComplex {
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// The first degree k with `∂_k ∘ ∂_(k-1) ≠ 0`, if any.
    pub fn square_failure(&self) -> Option<IdentityFailure> {
        (2..=self.top()).find_map(|k| {
            let prod = self.d[k].mul(&self.d[k - 1]);
            let zero = GroupRingMatrix::zero(self.params, prod.rows, prod.cols);
            compare("∂∂ = 0", k, &prod, &zero)
        })
    }

    pub fn is_complex(&self) -> bool {
        self.square_failure().is_none()
    }

    fn specialize(&self, f: impl Fn(&GroupRingMatrix) -> IntMatrix) -> IntComplex {
        IntComplex::new(self.ranks.clone(), self.d[1..].iter().map(f).collect())
    }

    /// `C ⊗_(ZG) Z` with the trivial action.
    pub fn augmentation(&self) -> IntComplex {
        self.specialize(|m| m.augmentation())
    }

    /// The underlying complex of free abelian groups, of rank |G| times
    /// the Z[G]-rank in each degree.
    pub fn regular(&self) -> IntComplex {
        let n = self.params.order();
        IntComplex::new(self.ranks.iter().map(|r| r * n).collect(), self.d[1..].iter().map(|m| m.regular()).collect())
    }

    /// The boundaries specialized by p, q -> 1 and z -> ζ.
    pub fn chi_zeta(&self, field: &Field) -> FieldComplex {
        FieldComplex {
            ranks: self.ranks.clone(),
            d: self.d.iter().map(|m| m.chi_zeta(field)).collect(),
            labels: self.labels.clone(),
        }
    }
}

/// A bounded complex of finite-dimensional Q(ζ)-vector spaces with a
/// preferred basis in each degree.
#[derive(Clone, Debug)]
pub struct FieldComplex {
    pub ranks: Vec<usize>,
    /// `d[k]` has `ranks[k]` rows and `ranks[k-1]` columns.
    pub d: Vec<Vec<Vec<CycloNumber>>>,
    pub labels: Vec<Vec<String>>,
}

impl FieldComplex {
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }
}

fn el(g: GroupElement) -> GroupRingElement {
    GroupRingElement::from_element(g)
}

fn int(params: GroupParams, c: i64) -> GroupRingElement {
    GroupRingElement::from_int(params, c)
}

/// Shorthands for the base-frame elements used in the boundary formulas.
struct Frame {
    params: GroupParams,
    a: i64,
    w: i64,
}

impl Frame {
    fn new(params: GroupParams) -> Self {
        Frame { params, a: params.a() as i64, w: params.half() as i64 }
    }
    fn x(&self, h: i64) -> GroupElement {
        self.params.x_pow(h)
    }
    fn px(&self, h: i64) -> GroupElement {
        self.params.p() * self.x(h)
    }
    fn qx(&self, h: i64) -> GroupElement {
        self.params.q() * self.x(h)
    }
    fn pqx(&self, h: i64) -> GroupElement {
        self.params.pq() * self.x(h)
    }
    fn one(&self) -> GroupRingElement {
        int(self.params, 1)
    }
    fn zero(&self) -> GroupRingElement {
        int(self.params, 0)
    }
    /// 1 - g
    fn one_minus(&self, g: GroupElement) -> GroupRingElement {
        self.one().sub(&el(g))
    }
    /// L = x + x^2 + ... + x^((a-1)/2)
    fn l(&self) -> GroupRingElement {
        GroupRingElement::from_terms(self.params, (1..=(self.a - 1) / 2).map(|h| (self.x(h), 1)))
    }
    fn mat(&self, rows: Vec<Vec<GroupRingElement>>) -> GroupRingMatrix {
        GroupRingMatrix::from_rows(self.params, rows)
    }
}

/// ∂ of one period of C• in degrees 1, 2, 3 (base frame).
fn c_period(f: &Frame, j: usize) -> GroupRingMatrix {
    let (a, w) = (f.a, f.w);
    match j {
        1 => f.mat(vec![
            vec![el(f.x(1)).sub(&f.one())],
            vec![el(f.qx(a + w - 1)).sub(&f.one())],
            vec![el(f.qx(a + w)).sub(&f.one())],
            vec![el(f.qx(a + w)).sub(&el(f.x(1)))],
        ]),
        2 => {
            let l = f.l();
            let l_sum = l.add(&el(f.px(2 * a)).mul(&l)).add(&el(f.qx(a)).mul(&l));
            f.mat(vec![
                vec![l_sum, el(f.qx(a + 1)).neg(), el(f.x(w)), int(f.params, -1)],
                vec![f.one(), f.zero(), int(f.params, -1), f.one()],
                vec![el(f.qx(a)), el(f.qx(a + 1)), f.zero(), el(f.px(2 * a + w - 1))],
                vec![el(f.qx(a + w - 1)).neg(), int(f.params, -1), f.one(), f.zero()],
            ])
        }
        3 => f.mat(vec![vec![
            f.one_minus(f.px(2 * a - 1)),
            f.one_minus(f.px(2 * a + w - 1)),
            f.one_minus(f.pqx(2 * a + w - 1)),
            f.one_minus(f.x(w)),
        ]]),
        _ => unreachable!(),
    }
}

/// ∂ of one period of E• in degrees 1, 2, 3 (base frame).
fn e_period(f: &Frame, j: usize) -> GroupRingMatrix {
    let (a, w) = (f.a, f.w);
    match j {
        1 => f.mat(vec![vec![el(f.x(1)).sub(&f.one())], vec![el(f.qx(a + w - 1)).sub(&f.one())]]),
        2 => {
            let l = f.l();
            let first = f.one().sub(&el(f.qx(a + w))).sub(&el(f.qx(a + w - 1)));
            let second = f.one().add(&el(f.qx(a + w + 1))).neg();
            let third =
                l.add(&el(f.px(2 * a)).mul(&l)).add(&el(f.qx(a)).mul(&l)).add(&el(f.px(2 * a))).add(&el(f.qx(a + w)));
            let fourth = el(f.x(w)).add(&el(f.qx(a + w + 1))).sub(&el(f.qx(a + 1)));
            f.mat(vec![vec![first, second], vec![third, fourth]])
        }
        3 => f.mat(vec![vec![f.one_minus(f.px(2 * a + w - 1)), f.one_minus(f.px(2 * a - 1))]]),
        _ => unreachable!(),
    }
}

fn validate_ells(params: GroupParams, ells: &[i64]) -> Result<Vec<Automorphism>> {
    if ells.is_empty() {
        return Err(Error::Param("the ℓ-list is empty".into()));
    }
    ells.iter()
        .map(|&l| {
            check_ell(params, l)?;
            transport(params, l)
        })
        .collect()
}

fn periodic_labels(prefix: &str, n: usize, per: [usize; 4]) -> Vec<Vec<String>> {
    (0..4 * n)
        .map(|deg| {
            let r = per[deg % 4];
            if r == 1 {
                vec![format!("{prefix}{deg}")]
            } else {
                (1..=r).map(|j| format!("{prefix}{deg},{j}")).collect()
            }
        })
        .collect()
}

fn build_periodic(
    params: GroupParams,
    kind: ComplexKind,
    ells: &[i64],
    per: [usize; 4],
    block: impl Fn(&Frame, usize) -> GroupRingMatrix,
    prefix: &str,
) -> Result<GroupComplex> {
    let psis = validate_ells(params, ells)?;
    let f = Frame::new(params);
    let n = ells.len();
    let ranks: Vec<usize> = (0..4 * n).map(|deg| per[deg % 4]).collect();
    let mut d = vec![GroupRingMatrix::zero(params, 1, 0)];
    for deg in 1..4 * n {
        let psi = &psis[deg / 4];
        let m = match deg % 4 {
            0 => GroupRingMatrix::from_rows(params, vec![vec![GroupRingElement::norm_element(params)]]),
            j => block(&f, j).map_entries(|e| e.apply_automorphism(psi)),
        };
        d.push(m);
    }
    Ok(GroupComplex { params, kind, ells: ells.to_vec(), ranks, d, labels: periodic_labels(prefix, n, per) })
}

/// The cellular complex of S^(4n-1), one period of ranks (1,4,4,1) per ℓ.
pub fn build_c(params: GroupParams, ells: &[i64]) -> Result<GroupComplex> {
    build_periodic(params, ComplexKind::C, ells, [1, 4, 4, 1], c_period, "c")
}

/// The reduced complex, one period of ranks (1,2,2,1) per ℓ. In degree 4k
/// the boundary is Σ·e_(4k-1).
pub fn build_e(params: GroupParams, ells: &[i64]) -> Result<GroupComplex> {
    build_periodic(params, ComplexKind::E, ells, [1, 2, 2, 1], e_period, "e")
}

/// m = 2a + (a+1)/2 - 1, the exponent in ∂_3 of the cyclic resolution.
pub fn cyclic_m(params: GroupParams) -> i64 {
    2 * params.a() as i64 + params.half() as i64 - 1
}

/// The 4-periodic resolution of Z over Z[<z>] in degrees `0..=top`:
/// ∂_(4k+1) = z - 1, ∂_(4k+2) = Θ, ∂_(4k+3) = z^m - 1, ∂_(4k+4) = Θ.
/// It is stored inside Z[G] using only powers of z.
pub fn build_cyclic(params: GroupParams, top: usize) -> GroupComplex {
    let z = params.z();
    let one = int(params, 1);
    let theta = GroupRingElement::theta(params);
    let mut d = vec![GroupRingMatrix::zero(params, 1, 0)];
    for deg in 1..=top {
        let e = match deg % 4 {
            1 => el(z).sub(&one),
            3 => el(z.pow(cyclic_m(params))).sub(&one),
            _ => theta.clone(),
        };
        d.push(GroupRingMatrix::from_rows(params, vec![vec![e]]));
    }
    GroupComplex {
        params,
        kind: ComplexKind::Cyclic,
        ells: Vec::new(),
        ranks: vec![1; top + 1],
        d,
        labels: (0..=top).map(|k| vec![format!("c~{k}")]).collect(),
    }
}

/// A family of module maps, one matrix per degree.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub name: String,
    pub maps: Vec<GroupRingMatrix>,
}

/// Checks `∂^A_k · F_(k-1) = F_k · ∂^B_k` for every k, optionally after
/// applying `twist` to the entries of ∂^A (for maps over a homomorphism
/// f: G -> H, where γ(g·c) = f(g)·γ(c)).
pub fn check_chain_map(
    source: &GroupComplex,
    target: &GroupComplex,
    map: &ChainMap,
    twist: Option<&dyn Fn(&GroupRingElement) -> GroupRingElement>,
) -> Option<IdentityFailure> {
    let top = source.top().min(target.top()).min(map.maps.len() - 1);
    (1..=top).find_map(|k| {
        let ds = match twist {
            Some(t) => source.d[k].map_entries(t),
            None => source.d[k].clone(),
        };
        let lhs = ds.mul(&map.maps[k - 1]);
        let rhs = map.maps[k].mul(&target.d[k]);
        compare(&format!("{} is a chain map", map.name), k, &lhs, &rhs)
    })
}

fn period_maps(
    params: GroupParams,
    ells: &[i64],
    name: &str,
    block: impl Fn(&Frame, usize) -> GroupRingMatrix,
) -> Result<ChainMap> {
    let psis = validate_ells(params, ells)?;
    let f = Frame::new(params);
    let maps = (0..4 * ells.len())
        .map(|deg| block(&f, deg % 4).map_entries(|e| e.apply_automorphism(&psis[deg / 4])))
        .collect();
    Ok(ChainMap { name: name.to_string(), maps })
}

/// φ': C• -> E•.
pub fn phi_prime(params: GroupParams, ells: &[i64]) -> Result<ChainMap> {
    period_maps(params, ells, "φ'", |f, j| {
        let (a, w, o, z) = (f.a, f.w, f.one(), f.zero());
        match j {
            0 | 3 => f.mat(vec![vec![o]]),
            1 => f.mat(vec![
                vec![o.clone(), z.clone()],
                vec![z.clone(), o.clone()],
                vec![el(f.qx(a + w - 1)), o],
                vec![el(f.qx(a + w)).neg(), el(f.qx(a + w + 1)).neg()],
            ]),
            _ => f.mat(vec![
                vec![z.clone(), o.clone()],
                vec![o, z.clone()],
                vec![z.clone(), z.clone()],
                vec![z.clone(), z],
            ]),
        }
    })
}

/// φ: E• -> C•.
pub fn phi(params: GroupParams, ells: &[i64]) -> Result<ChainMap> {
    period_maps(params, ells, "φ", |f, j| {
        let (w, o, z) = (f.w, f.one(), f.zero());
        match j {
            0 | 3 => f.mat(vec![vec![o]]),
            1 => f.mat(vec![vec![o.clone(), z.clone(), z.clone(), z.clone()], vec![z.clone(), o, z.clone(), z]]),
            _ => f.mat(vec![
                vec![z.clone(), o.clone(), el(f.pqx(w)).neg(), o.clone()],
                vec![o, z, el(f.pqx(w)), el(f.x(w)).neg()],
            ]),
        }
    })
}

/// The homotopy D: C_k -> C_(k+1) between φ∘φ' and the identity. It is
/// nonzero only on c_(4k+1,3) and c_(4k+1,4).
pub fn homotopy(params: GroupParams, ells: &[i64]) -> Result<ChainMap> {
    let psis = validate_ells(params, ells)?;
    let f = Frame::new(params);
    let top = 4 * ells.len() - 1;
    let rank = |k: usize| if k > top { 0 } else { [1, 4, 4, 1][k % 4] };
    let maps = (0..=top)
        .map(|deg| {
            let mut m = GroupRingMatrix::zero(params, rank(deg), rank(deg + 1));
            if deg % 4 == 1 {
                m.set(2, 3, int(params, -1));
                m.set(3, 2, el(f.pqx(f.w)).neg());
                m = m.map_entries(|e| e.apply_automorphism(&psis[deg / 4]));
            }
            m
        })
        .collect();
    Ok(ChainMap { name: "D".into(), maps })
}

/// Checks φ'φ = Id on E• (left inverse; note the maps compose as φ then
/// φ', which in the row convention is the product Φ·Φ').
pub fn check_left_inverse(phi: &ChainMap, phi_prime: &ChainMap) -> Option<IdentityFailure> {
    (0..phi.maps.len()).find_map(|k| {
        let prod = phi.maps[k].mul(&phi_prime.maps[k]);
        let id = GroupRingMatrix::identity(prod.params(), prod.rows);
        compare("φ'∘φ = Id", k, &prod, &id)
    })
}

/// Checks φ∘φ' - Id = ∂D + D∂ on C•.
pub fn check_homotopy(c: &GroupComplex, phi: &ChainMap, phi_prime: &ChainMap, d: &ChainMap) -> Option<IdentityFailure> {
    let params = c.params;
    (0..=c.top()).find_map(|k| {
        let n = c.ranks[k];
        let lhs = phi_prime.maps[k].mul(&phi.maps[k]).sub(&GroupRingMatrix::identity(params, n));
        let mut rhs = GroupRingMatrix::zero(params, n, n);
        if k > 0 {
            rhs = rhs.add(&c.d[k].mul(&d.maps[k - 1]));
        }
        if k < c.top() {
            rhs = rhs.add(&d.maps[k].mul(&c.d[k + 1]));
        }
        compare("φφ' - Id = ∂D + D∂", k, &lhs, &rhs)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub e_is_complex: Option<IdentityFailure>,
    pub c_is_complex: Option<IdentityFailure>,
    pub phi_prime_chain_map: Option<IdentityFailure>,
    pub phi_chain_map: Option<IdentityFailure>,
    pub left_inverse: Option<IdentityFailure>,
    pub homotopy: Option<IdentityFailure>,
}

impl EquivalenceReport {
    pub fn ok(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&IdentityFailure> {
        [
            &self.e_is_complex,
            &self.c_is_complex,
            &self.phi_prime_chain_map,
            &self.phi_chain_map,
            &self.left_inverse,
            &self.homotopy,
        ]
        .into_iter()
        .flatten()
        .collect()
    }
}

/// Verifies that C• and E• are chain equivalent through φ, φ' and D.
pub fn verify_chain_equivalence(params: GroupParams, ells: &[i64]) -> Result<EquivalenceReport> {
    let c = build_c(params, ells)?;
    let e = build_e(params, ells)?;
    let ph = phi(params, ells)?;
    let pp = phi_prime(params, ells)?;
    let d = homotopy(params, ells)?;
    Ok(EquivalenceReport {
        e_is_complex: e.square_failure(),
        c_is_complex: c.square_failure(),
        phi_prime_chain_map: check_chain_map(&c, &e, &pp, None),
        phi_chain_map: check_chain_map(&e, &c, &ph, None),
        left_inverse: check_left_inverse(&ph, &pp),
        homotopy: check_homotopy(&c, &ph, &pp, &d),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GammaVariant {
    /// The formulas as printed: γ_(4k+1)(e_2) = 2^(3k)(1 + ... + z^(m-1)),
    /// γ_(4k+3) = -2^(3k) z^m, γ_(4k) = 2^(3k).
    Printed,
    /// A corrected map that does commute with the boundaries.
    Corrected,
}

/// m' with m·m' ≡ 1 (mod 3^s), in `1..3^s`.
pub fn cyclic_m_inverse(params: GroupParams) -> i64 {
    let t = params.t() as i64;
    let m = cyclic_m(params).rem_euclid(t);
    (1..t).find(|x| (m * x) % t == 1).expect("m is prime to 3")
}

/// γ: E• -> Z• over f: G -> <z>, g = ±p^m q^n z^k ↦ z^k, in degrees
/// `0..=top`. The corrected map in the first period is
///
/// γ_1 = (1, 1 + z + ... + z^(a+w-2)), γ_2 = (-1, 1),
/// γ_3 = z^(2a-1) (1 + ... + z^(w-1)) (1 + z^m + ... + z^(m(m'-1))),
/// γ_4 = 8·w·m',
///
/// and period k is the first period scaled by (8wm')^k.
pub fn gamma(params: GroupParams, top: usize, variant: GammaVariant) -> ChainMap {
    let z = params.z();
    let (a, w, m) = (params.a() as i64, params.half() as i64, cyclic_m(params));
    let geo = GroupRingElement::geometric;
    let c = |v: i64| int(params, v);
    let col = |v: Vec<GroupRingElement>| GroupRingMatrix::from_rows(params, v.into_iter().map(|e| vec![e]).collect());
    let (g1, g3, g4) = match variant {
        GammaVariant::Printed => (geo(z, m), el(z.pow(m)).neg(), 8),
        GammaVariant::Corrected => {
            let mi = cyclic_m_inverse(params);
            let g3 = el(z.pow(2 * a - 1)).mul(&geo(z, w)).mul(&geo(z.pow(m), mi));
            (geo(z, a + w - 1), g3, 8 * w * mi)
        }
    };
    let maps = (0..=top)
        .map(|deg| {
            let scale = g4.pow((deg / 4) as u32);
            let m = match deg % 4 {
                0 => col(vec![c(1)]),
                1 => col(vec![c(1), g1.clone()]),
                2 => col(vec![c(-1), c(1)]),
                _ => col(vec![g3.clone()]),
            };
            m.map_entries(|e| e.scale(scale))
        })
        .collect();
    let name = match variant {
        GammaVariant::Printed => "γ (printed)",
        GammaVariant::Corrected => "γ",
    };
    ChainMap { name: name.into(), maps }
}

/// Checks that γ is a chain map over f, as an identity of matrices over
/// Z[G] after pushing ∂^E through f, on `periods` periods of E• built with
/// ℓ = ℓ̂ throughout (f fixes x only for the base action). Returns the
/// first failure.
pub fn check_gamma(params: GroupParams, periods: usize, variant: GammaVariant) -> Result<Option<IdentityFailure>> {
    let e = build_e(params, &vec![ell_hat(params); periods])?;
    let z = build_cyclic(params, e.top());
    let g = gamma(params, e.top(), variant);
    let f = |x: &GroupRingElement| x.to_cyclic();
    Ok(check_chain_map(&e, &z, &g, Some(&f)))
}

/// f(g) = z^k is a homomorphism G -> <z>.
pub fn check_twist_homomorphism(params: GroupParams) -> bool {
    let elems = params.elements();
    let f = |g: &GroupElement| params.z_pow(g.k as i64);
    elems.iter().all(|g| elems.iter().all(|h| f(&(*g * *h)) == f(g) * f(h)))
}

/// The quotient complex W• = V•/ψ(U•) over Q(ζ), read off from the
/// specialized C•: in each period the basis is c_(4k+1,3), c_(4k+1,4) and
/// c_(4k+2,3), c_(4k+2,4).
pub fn build_w_from_c(params: GroupParams, ells: &[i64], field: &Field) -> Result<FieldComplex> {
    let v = build_c(params, ells)?.chi_zeta(field);
    let per = [0usize, 2, 2, 0];
    let top = v.top();
    let ranks: Vec<usize> = (0..=top).map(|k| per[k % 4]).collect();
    let d = (0..=top)
        .map(|k| {
            if k % 4 == 2 {
                (2..4).map(|i| (2..4).map(|j| v.d[k][i][j].clone()).collect()).collect()
            } else {
                vec![Vec::new(); ranks[k]]
            }
        })
        .map(|m: Vec<Vec<CycloNumber>>| m)
        .collect::<Vec<_>>();
    let d = fix_shapes(d, &ranks, field);
    let labels = (0..=top)
        .map(|k| if per[k % 4] == 2 { vec![format!("c{k},3"), format!("c{k},4")] } else { Vec::new() })
        .collect();
    Ok(FieldComplex { ranks, d, labels })
}

/// W• from the closed formula: ∂(c_(4k+2,3)) = ζ_ℓ^m c_(4k+1,4) and
/// ∂(c_(4k+2,4)) = c_(4k+1,3), with ζ_ℓ = χ(x_ℓ).
pub fn build_w(params: GroupParams, ells: &[i64], field: &Field) -> Result<FieldComplex> {
    validate_ells(params, ells)?;
    let per = [0usize, 2, 2, 0];
    let top = 4 * ells.len() - 1;
    let ranks: Vec<usize> = (0..=top).map(|k| per[k % 4]).collect();
    let step = (field.conductor() / params.t()) as i64;
    let mut d = Vec::new();
    for k in 0..=top {
        if k % 4 == 2 {
            let e = zeta_ell_exponent(params, ells[k / 4])?;
            let zero = CycloNumber::zero(field);
            d.push(vec![
                vec![zero.clone(), CycloNumber::root(field, e * cyclic_m(params) * step)],
                vec![CycloNumber::one(field), zero],
            ]);
        } else {
            d.push(vec![Vec::new(); ranks[k]]);
        }
    }
    let d = fix_shapes(d, &ranks, field);
    let labels = (0..=top)
        .map(|k| if per[k % 4] == 2 { vec![format!("c{k},3"), format!("c{k},4")] } else { Vec::new() })
        .collect();
    Ok(FieldComplex { ranks, d, labels })
}

/// Pads every boundary to `ranks[k] × ranks[k-1]` with zeros.
fn fix_shapes(d: Vec<Vec<Vec<CycloNumber>>>, ranks: &[usize], field: &Field) -> Vec<Vec<Vec<CycloNumber>>> {
    d.into_iter()
        .enumerate()
        .map(|(k, m)| {
            let cols = if k == 0 { 0 } else { ranks[k - 1] };
            (0..ranks[k])
                .map(|i| {
                    (0..cols)
                        .map(|j| m.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(|| CycloNumber::zero(field)))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// A 2-cell as the cyclic list of its vertices g·v_0.
pub type Cell = Vec<GroupElement>;

/// The eight 2-cells c_(2,j) and c̄_(2,j) of the base domain.
pub fn two_cells(params: GroupParams) -> ([Cell; 4], [Cell; 4]) {
    let f = Frame::new(params);
    let (a, w) = (f.a, f.w);
    let mut c21: Cell = (1..=w).map(|h| f.x(h)).collect();
    c21.extend((2 * a + 1..=2 * a + w).map(|h| f.px(h)));
    c21.extend((a + 1..=a + w).map(|h| f.qx(h)));
    let mut b21: Cell = (0..w).rev().map(|h| f.x(h)).collect();
    b21.extend((a..a + w).rev().map(|h| f.qx(h)));
    b21.extend((2 * a..2 * a + w).rev().map(|h| f.px(h)));
    let c = [
        c21,
        vec![f.x(0), f.x(1), f.qx(a + w)],
        vec![f.px(2 * a + w), f.qx(a), f.qx(a + 1)],
        vec![f.x(0), f.qx(a + w), f.qx(a + w - 1)],
    ];
    let b = [
        b21,
        vec![f.qx(a), f.px(2 * a + w), f.px(2 * a + w - 1)],
        vec![f.x(w), f.x(w - 1), f.px(2 * a)],
        vec![f.px(2 * a), f.px(2 * a + 1), f.x(w)],
    ];
    (c, b)
}

/// The relations c̄_(2,j) = -g_j c_(2,j) as (g_j, sign).
pub fn cell_relations(params: GroupParams) -> [(GroupElement, i32); 4] {
    let f = Frame::new(params);
    let (a, w) = (f.a, f.w);
    [(f.px(2 * a - 1), -1), (f.px(2 * a + w - 1), -1), (f.pqx(2 * a + w - 1), -1), (f.x(w), -1)]
}

/// Orientation sign relating two vertex cycles: +1 if `b` is a rotation of
/// `a`, -1 if it is a rotation of `a` reversed, None otherwise.
pub fn cycle_sign(a: &[GroupElement], b: &[GroupElement]) -> Option<i32> {
    if a.len() != b.len() || a.is_empty() {
        return None;
    }
    let n = a.len();
    let rotation_of = |seq: &[GroupElement]| (0..n).any(|r| (0..n).all(|i| seq[(i + r) % n] == b[i]));
    if rotation_of(a) {
        return Some(1);
    }
    let rev: Vec<GroupElement> = a.iter().rev().copied().collect();
    rotation_of(&rev).then_some(-1)
}

/// Checks `g·c_(2,j)` against `c̄_(2,j)` as oriented cells, comparing the
/// orientation sign with `expected_signs[j]`. Returns one flag per relation.
pub fn oriented_cell_relations_check(params: GroupParams, expected_signs: [i32; 4]) -> [bool; 4] {
    let (c, b) = two_cells(params);
    let rel = cell_relations(params);
    let mut out = [false; 4];
    for j in 0..4 {
        let moved: Cell = c[j].iter().map(|v| rel[j].0 * *v).collect();
        out[j] = cycle_sign(&moved, &b[j]) == Some(expected_signs[j]);
    }
    out
}

/// The 1-cells c_(1,j) as vertex pairs.
pub fn one_cells(params: GroupParams) -> [[GroupElement; 2]; 4] {
    let f = Frame::new(params);
    let (a, w) = (f.a, f.w);
    [[f.x(0), f.x(1)], [f.x(0), f.qx(a + w - 1)], [f.x(0), f.qx(a + w)], [f.x(1), f.qx(a + w)]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::AbelianGroup;

    fn params(s: u32) -> GroupParams {
        GroupParams::new(s).unwrap()
    }

    #[test]
    fn zeta_ell_matches_inverse_formula() {
        for s in [2, 3] {
            let p = params(s);
            let t = p.t() as i64;
            for ell in (1..t).filter(|l| l % 3 != 0) {
                let r = (1..t).find(|r| (r * ell) % t == 1).unwrap();
                assert_eq!(zeta_ell_exponent(p, ell).unwrap(), (r * ell_hat(p)).rem_euclid(t));
            }
            assert_eq!(transport(p, ell_hat(p)).unwrap(), Automorphism::identity(p));
        }
    }

    #[test]
    fn complexes_square_to_zero() {
        for s in [2, 3] {
            let p = params(s);
            assert_eq!(build_c(p, &[1, 2]).unwrap().square_failure(), None);
            assert_eq!(build_e(p, &[4, 5]).unwrap().square_failure(), None);
            assert!(build_cyclic(p, 9).is_complex());
        }
    }

    #[test]
    fn ranks_per_period() {
        let p = params(2);
        assert_eq!(build_c(p, &[4]).unwrap().ranks, vec![1, 4, 4, 1]);
        assert_eq!(build_e(p, &[4, 7]).unwrap().ranks, vec![1, 2, 2, 1, 1, 2, 2, 1]);
        assert!(build_e(p, &[]).is_err());
        assert!(build_e(p, &[3]).is_err());
    }

    #[test]
    fn first_boundary_is_x_minus_one() {
        let p = params(2);
        for ell in [1, 2, 4] {
            let e = build_e(p, &[ell, ell]).unwrap();
            let x = transport(p, ell).unwrap().apply(&p.x());
            let expect = el(x).sub(&int(p, 1));
            assert_eq!(e.d[1].get(0, 0), &expect);
            assert_eq!(e.d[5].get(0, 0), &expect);
        }
    }

    #[test]
    fn c_is_a_cellular_three_sphere() {
        let p = params(2);
        let h = build_c(p, &[ell_hat(p)]).unwrap().regular().homology_all().unwrap();
        assert_eq!(
            h,
            vec![AbelianGroup::free(1), AbelianGroup::trivial(), AbelianGroup::trivial(), AbelianGroup::free(1)]
        );
    }

    #[test]
    fn chain_equivalence_s2() {
        let r = verify_chain_equivalence(params(2), &[1, 5]).unwrap();
        assert!(r.ok(), "{:?}", r.failures());
    }

    #[test]
    fn mutated_homotopy_is_rejected() {
        let p = params(2);
        let ells = [4];
        let c = build_c(p, &ells).unwrap();
        let mut d = homotopy(p, &ells).unwrap();
        let e = d.maps[1].get(3, 2).neg();
        d.maps[1].set(3, 2, e);
        let f = check_homotopy(&c, &phi(p, &ells).unwrap(), &phi_prime(p, &ells).unwrap(), &d);
        assert!(f.is_some());
    }

    #[test]
    fn gamma_corrected_is_a_chain_map() {
        for s in [2, 3] {
            let p = params(s);
            assert_eq!(check_gamma(p, 2, GammaVariant::Corrected).unwrap(), None);
        }
    }

    #[test]
    fn gamma_printed_fails_in_degree_one() {
        let f = check_gamma(params(2), 2, GammaVariant::Printed).unwrap().unwrap();
        assert_eq!(f.degree, 1);
    }

    #[test]
    fn twist_is_a_homomorphism() {
        assert!(check_twist_homomorphism(params(2)));
    }

    #[test]
    fn w_matches_quotient_of_c() {
        let p = params(2);
        let field = crate::cyclo::CycloField::new(p.t()).unwrap();
        for ells in [vec![1], vec![2, 4]] {
            let a = build_w(p, &ells, &field).unwrap();
            let b = build_w_from_c(p, &ells, &field).unwrap();
            assert_eq!(a.d, b.d);
        }
    }

    #[test]
    fn oriented_cells() {
        for s in [2, 3, 4] {
            let p = params(s);
            assert_eq!(oriented_cell_relations_check(p, [-1; 4]), [true; 4]);
            assert_eq!(oriented_cell_relations_check(p, [1; 4]), [false; 4]);
        }
    }
}
