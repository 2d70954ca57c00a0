//! Arithmetic in the generalized binary tetrahedral group P'(8·3^s).
//!
//! An element is stored as `u·z^k` with `u` in the quaternion group Q8 and
//! `k` reduced mod 3^s. Conjugation by `z` cycles `p -> q -> pq -> p`, so the
//! product is the twisted rule `(u1, k1)(u2, k2) = (u1·σ^k1(u2), k1 + k2)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The tower exponent `s` together with the derived constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupParams {
    pub s: u32,
}

impl GroupParams {
    pub fn new(s: u32) -> Result<Self> {
        if !(2..=6).contains(&s) {
            return Err(Error::Param(format!("s must lie in 2..=6, got {s}")));
        }
        Ok(GroupParams { s })
    }

    /// 3^s, the order of `z`.
    pub fn t(&self) -> u32 {
        3u32.pow(self.s)
    }

    /// a = 3^(s-1).
    pub fn a(&self) -> u32 {
        3u32.pow(self.s - 1)
    }

    /// (a+1)/2.
    pub fn half(&self) -> u32 {
        self.a().div_ceil(2)
    }

    pub fn order(&self) -> usize {
        8 * self.t() as usize
    }

    /// Order of `x = -z`.
    pub fn x_order(&self) -> u32 {
        2 * self.t()
    }

    pub fn one(&self) -> GroupElement {
        GroupElement::new(*self, Q8::ONE, 0)
    }

    pub fn minus_one(&self) -> GroupElement {
        GroupElement::new(*self, Q8::MINUS_ONE, 0)
    }

    pub fn p(&self) -> GroupElement {
        GroupElement::new(*self, Q8::P, 0)
    }

    pub fn q(&self) -> GroupElement {
        GroupElement::new(*self, Q8::Q, 0)
    }

    pub fn pq(&self) -> GroupElement {
        GroupElement::new(*self, Q8::PQ, 0)
    }

    pub fn z(&self) -> GroupElement {
        GroupElement::new(*self, Q8::ONE, 1)
    }

    /// x = -z, a generator of the largest cyclic subgroup.
    pub fn x(&self) -> GroupElement {
        GroupElement::new(*self, Q8::MINUS_ONE, 1)
    }

    pub fn z_pow(&self, k: i64) -> GroupElement {
        GroupElement::new(*self, Q8::ONE, k.rem_euclid(self.t() as i64) as u32)
    }

    pub fn x_pow(&self, h: i64) -> GroupElement {
        self.x().pow(h)
    }

    /// All elements in canonical order (sign, m, n, k).
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| GroupElement::from_index(*self, i)).collect()
    }

    /// Coset representatives 1, p, q, pq of the subgroup generated by `x`.
    pub fn coset_reps(&self) -> [GroupElement; 4] {
        [self.one(), self.p(), self.q(), self.pq()]
    }
}

/// An element `±p^m q^n` of Q8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Q8 {
    pub neg: bool,
    pub m: u8,
    pub n: u8,
}

impl Q8 {
    pub const ONE: Q8 = Q8 { neg: false, m: 0, n: 0 };
    pub const MINUS_ONE: Q8 = Q8 { neg: true, m: 0, n: 0 };
    pub const P: Q8 = Q8 { neg: false, m: 1, n: 0 };
    pub const Q: Q8 = Q8 { neg: false, m: 0, n: 1 };
    pub const PQ: Q8 = Q8 { neg: false, m: 1, n: 1 };

    pub fn all() -> [Q8; 8] {
        let mut out = [Q8::ONE; 8];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = Q8 { neg: i & 4 != 0, m: ((i >> 1) & 1) as u8, n: (i & 1) as u8 };
        }
        out
    }

    /// Moving `q^n1` past `p^m2` costs a sign when both are present; the
    /// squares `p^2`, `q^2` contribute the remaining two terms.
    pub fn mul(self, o: Q8) -> Q8 {
        let flip = (self.n & o.m) ^ (self.m & o.m) ^ (self.n & o.n);
        Q8 { neg: self.neg ^ o.neg ^ (flip == 1), m: self.m ^ o.m, n: self.n ^ o.n }
    }

    pub fn neg(self) -> Q8 {
        Q8 { neg: !self.neg, ..self }
    }

    pub fn inverse(self) -> Q8 {
        if self.m == 0 && self.n == 0 {
            self
        } else {
            self.neg()
        }
    }

    pub fn is_pm_one(self) -> bool {
        self.m == 0 && self.n == 0
    }
}

/// Conjugation by `z`: p -> q -> pq -> p, fixing ±1.
pub fn sigma(u: Q8) -> Q8 {
    let (m, n) = match (u.m, u.n) {
        (0, 0) => (0, 0),
        (1, 0) => (0, 1),
        (0, 1) => (1, 1),
        _ => (1, 0),
    };
    Q8 { neg: u.neg, m, n }
}

pub fn sigma_pow(u: Q8, k: u32) -> Q8 {
    let mut r = u;
    for _ in 0..k % 3 {
        r = sigma(r);
    }
    r
}

/// `u·z^k` in P'(8·3^s).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub u: Q8,
    pub k: u32,
    #[serde(skip)]
    params: ParamsTag,
}

// Kept last so that the derived ordering is (sign, m, n, k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
struct ParamsTag(u32);

impl GroupElement {
    pub fn new(params: GroupParams, u: Q8, k: u32) -> Self {
        GroupElement { u, k: k % params.t(), params: ParamsTag(params.s) }
    }

    pub fn params(&self) -> GroupParams {
        GroupParams { s: self.params.0 }
    }

    pub fn t(&self) -> u32 {
        3u32.pow(self.params.0)
    }

    /// Position in the canonical ordering, in `0..8·3^s`.
    pub fn index(&self) -> usize {
        let q = (self.u.neg as usize) * 4 + (self.u.m as usize) * 2 + self.u.n as usize;
        q * self.t() as usize + self.k as usize
    }

    pub fn from_index(params: GroupParams, i: usize) -> Self {
        let t = params.t() as usize;
        let q = i / t;
        let u = Q8 { neg: q & 4 != 0, m: ((q >> 1) & 1) as u8, n: (q & 1) as u8 };
        GroupElement::new(params, u, (i % t) as u32)
    }

    pub fn try_mul(&self, o: &GroupElement) -> Result<GroupElement> {
        if self.params != o.params {
            return Err(Error::Param(format!(
                "cannot multiply elements with s={} and s={}",
                self.params.0, o.params.0
            )));
        }
        Ok(self.mul_unchecked(o))
    }

    fn mul_unchecked(&self, o: &GroupElement) -> GroupElement {
        let t = self.t();
        GroupElement { u: self.u.mul(sigma_pow(o.u, self.k)), k: (self.k + o.k) % t, params: self.params }
    }

    pub fn inverse(&self) -> GroupElement {
        // (u z^k)^{-1} = z^{-k} u^{-1} = σ^{-k}(u^{-1}) z^{-k}
        let t = self.t();
        let back = (3 - self.k % 3) % 3;
        GroupElement { u: sigma_pow(self.u.inverse(), back), k: (t - self.k) % t, params: self.params }
    }

    pub fn pow(&self, e: i64) -> GroupElement {
        let base = if e < 0 { self.inverse() } else { *self };
        let mut e = e.unsigned_abs();
        let mut acc = self.params().one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq;
            }
            sq = sq * sq;
            e >>= 1;
        }
        acc
    }

    pub fn is_one(&self) -> bool {
        self.k == 0 && self.u == Q8::ONE
    }

    pub fn order(&self) -> u32 {
        let mut g = *self;
        let mut n = 1;
        while !g.is_one() {
            g = g * *self;
            n += 1;
        }
        n
    }

    /// Writes the element as `g_j x^h` with `g_j` in {1, p, q, pq}.
    pub fn vertex_label(&self) -> (usize, u32) {
        let j = self.u.m as usize + 2 * self.u.n as usize;
        let t = self.t();
        // h ≡ k (mod 3^s) and h ≡ sign (mod 2)
        let h = if (self.k % 2 == 1) == self.u.neg { self.k } else { self.k + t };
        (j, h)
    }

    pub fn from_vertex_label(params: GroupParams, j: usize, h: i64) -> GroupElement {
        params.coset_reps()[j] * params.x_pow(h)
    }
}

impl std::ops::Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, o: GroupElement) -> GroupElement {
        assert_eq!(self.params, o.params, "group elements from different groups");
        self.mul_unchecked(&o)
    }
}

impl std::ops::Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement { u: self.u.neg(), ..self }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        if self.u.neg {
            s.push('-');
        }
        if self.u.m == 1 {
            s.push('p');
        }
        if self.u.n == 1 {
            s.push('q');
        }
        if self.k != 0 {
            s.push('z');
            if self.k != 1 {
                s.push_str(&format!("^{}", self.k));
            }
        }
        if s.is_empty() || s == "-" {
            s.push('1');
        }
        f.write_str(&s)
    }
}

/// Parses a word such as `-pqz^5`, `qp`, `x^3` or `z^-1` in the group with
/// parameter `s`. Any word in `p`, `q`, `z`, `x` and signs is accepted and
/// normalized.
pub fn parse_element(params: GroupParams, text: &str) -> Result<GroupElement> {
    let bad = || Error::Parse(format!("cannot parse group element '{text}'"));
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut acc = params.one();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        i += 1;
        let base = match c {
            '-' => {
                acc = -acc;
                continue;
            }
            '+' => continue,
            '1' => params.one(),
            'p' => params.p(),
            'q' => params.q(),
            'z' => params.z(),
            'x' => params.x(),
            _ => return Err(bad()),
        };
        let mut e: i64 = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && chars[i] == '-' {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            e = digits.parse().map_err(|_| bad())?;
        }
        acc = acc * base.pow(e);
    }
    if chars.is_empty() {
        return Err(bad());
    }
    Ok(acc)
}

impl FromStr for GroupParams {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v: u32 = s.parse().map_err(|_| Error::Parse(format!("bad s '{s}'")))?;
        GroupParams::new(v)
    }
}

/// An endomorphism given by the images of the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub p: GroupElement,
    pub q: GroupElement,
    pub z: GroupElement,
}

impl Automorphism {
    pub fn identity(params: GroupParams) -> Self {
        Automorphism { p: params.p(), q: params.q(), z: params.z() }
    }

    /// Extends the generator images multiplicatively to `±p^m q^n z^k`.
    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        let params = g.params();
        let mut r = params.one();
        if g.u.neg {
            r = r * self.p * self.p;
        }
        if g.u.m == 1 {
            r = r * self.p;
        }
        if g.u.n == 1 {
            r = r * self.q;
        }
        r * self.z.pow(g.k as i64)
    }

    pub fn compose(&self, inner: &Automorphism) -> Automorphism {
        Automorphism { p: self.apply(&inner.p), q: self.apply(&inner.q), z: self.apply(&inner.z) }
    }

    pub fn inverse(&self) -> Automorphism {
        let params = self.p.params();
        let mut table = vec![None; params.order()];
        for g in params.elements() {
            table[self.apply(&g).index()] = Some(g);
        }
        let pre = |h: GroupElement| table[h.index()].expect("not bijective");
        Automorphism { p: pre(params.p()), q: pre(params.q()), z: pre(params.z()) }
    }
}

/// The automorphism of the proof that all free representations are
/// equivalent: `z -> z^ℓ` and `p, q` fixed or sent to `-pq, -q`.
pub fn phi_ell(params: GroupParams, ell: i64) -> Result<Automorphism> {
    let ell = check_ell(params, ell)?;
    let (p, q) = if ell % 3 == 1 { (params.p(), params.q()) } else { (-params.pq(), -params.q()) };
    Ok(Automorphism { p, q, z: params.z_pow(ell) })
}

/// Reduces ℓ into `1..3^s` and rejects multiples of 3.
pub fn check_ell(params: GroupParams, ell: i64) -> Result<i64> {
    let t = params.t() as i64;
    let r = ell.rem_euclid(t);
    if r % 3 == 0 {
        return Err(Error::Param(format!("ℓ = {ell} is divisible by 3")));
    }
    Ok(r)
}

/// Checks the defining relations `p^2 = q^2 = (pq)^2`, `zpz^-1 = q`,
/// `zqz^-1 = pq`, `z^(3^s) = 1` on the images, and bijectivity.
pub fn verify_automorphism(phi: &Automorphism) -> bool {
    let params = phi.p.params();
    let (p, q, z) = (phi.p, phi.q, phi.z);
    let zi = z.inverse();
    let relations = p * p == q * q
        && (p * q) * (p * q) == q * q
        && z * p * zi == q
        && z * q * zi == p * q
        && z.pow(params.t() as i64).is_one();
    if !relations {
        return false;
    }
    let images: BTreeSet<usize> = params.elements().iter().map(|g| phi.apply(g).index()).collect();
    images.len() == params.order()
}

/// Breadth-first closure of `seed` under the subgroup generated by
/// `generators`. The frontier is processed in sorted order, so the output
/// is deterministic.
pub fn orbit<L, F>(generators: &[GroupElement], seed: L, mut act: F, limit: usize) -> Result<Vec<L>>
where
    L: Ord + Clone,
    F: FnMut(&GroupElement, &L) -> L,
{
    let mut seen = BTreeSet::new();
    seen.insert(seed.clone());
    let mut queue = VecDeque::from([seed]);
    while let Some(cur) = queue.pop_front() {
        let mut next: Vec<L> = generators.iter().map(|g| act(g, &cur)).collect();
        next.sort();
        for n in next {
            if seen.insert(n.clone()) {
                if seen.len() > limit {
                    return Err(Error::Config(format!("orbit exceeds {limit} labels")));
                }
                queue.push_back(n);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
