//! Sparse arithmetic in the integral group ring Z[P'(8·3^s)] and matrices
//! over it, with specialization to coefficient rings.
//!
//! Matrices follow the row convention used by the chain complexes: row `i`
//! of a boundary matrix lists the coefficients of `∂(e_i)`, and the
//! composite "first A, then B" is the product `A·B`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::cyclo::{CycloNumber, Field};
use crate::group::{Automorphism, GroupElement, GroupParams};
use crate::homology::IntMatrix;

/// A finite integer combination of group elements.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingElement {
    params: GroupParams,
    terms: BTreeMap<GroupElement, i64>,
}

impl GroupRingElement {
    pub fn zero(params: GroupParams) -> Self {
        GroupRingElement { params, terms: BTreeMap::new() }
    }

    pub fn one(params: GroupParams) -> Self {
        Self::from_element(params.one())
    }

    pub fn from_int(params: GroupParams, c: i64) -> Self {
        Self::monomial(params.one(), c)
    }

    pub fn from_element(g: GroupElement) -> Self {
        Self::monomial(g, 1)
    }

    pub fn monomial(g: GroupElement, c: i64) -> Self {
        let mut r = Self::zero(g.params());
        if c != 0 {
            r.terms.insert(g, c);
        }
        r
    }

    pub fn from_terms(params: GroupParams, terms: impl IntoIterator<Item = (GroupElement, i64)>) -> Self {
        let mut r = Self::zero(params);
        for (g, c) in terms {
            r.add_term(g, c);
        }
        r
    }

    /// Σ, the sum of all group elements.
    pub fn norm_element(params: GroupParams) -> Self {
        Self::from_terms(params, params.elements().into_iter().map(|g| (g, 1)))
    }

    /// Θ = 1 + z + ... + z^(3^s - 1).
    pub fn theta(params: GroupParams) -> Self {
        Self::geometric(params.z(), params.t() as i64)
    }

    /// 1 + g + ... + g^(n-1); for negative n, -(g^-1 + ... + g^n).
    pub fn geometric(g: GroupElement, n: i64) -> Self {
        let params = g.params();
        if n >= 0 {
            Self::from_terms(params, (0..n).map(|i| (g.pow(i), 1)))
        } else {
            Self::from_terms(params, (n..0).map(|i| (g.pow(i), -1)))
        }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &i64)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, g: &GroupElement) -> i64 {
        self.terms.get(g).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, g: GroupElement, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(g).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&g);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (g, c) in &o.terms {
            r.add_term(*g, *c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut r = Self::zero(self.params);
        for (g, c) in &self.terms {
            r.add_term(*g, c * k);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: BTreeMap<GroupElement, i64> = BTreeMap::new();
        for (g, c) in &self.terms {
            for (h, d) in &o.terms {
                *acc.entry(*g * *h).or_insert(0) += c * d;
            }
        }
        acc.retain(|_, c| *c != 0);
        GroupRingElement { params: self.params, terms: acc }
    }

    /// g·self, left translation.
    pub fn left_translate(&self, g: &GroupElement) -> Self {
        GroupRingElement { params: self.params, terms: self.terms.iter().map(|(h, c)| (*g * *h, *c)).collect() }
    }

    /// Image under a map of groups, extended linearly.
    pub fn map(&self, f: impl Fn(&GroupElement) -> GroupElement) -> Self {
        let mut r = Self::zero(self.params);
        for (g, c) in &self.terms {
            r.add_term(f(g), *c);
        }
        r
    }

    pub fn apply_automorphism(&self, phi: &Automorphism) -> Self {
        self.map(|g| phi.apply(g))
    }

    /// Sum of coefficients: the trivial representation.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// p, q -> 1 and z -> ζ with ζ = ζ_(3^s); -1 = p^2 goes to 1.
    pub fn chi_zeta(&self, field: &Field) -> CycloNumber {
        let t = self.params.t() as i64;
        let m = field.conductor() as i64;
        assert_eq!(m % t, 0, "field must contain the 3^s-th roots of unity");
        let step = m / t;
        let terms: Vec<(i64, i64)> = self.terms.iter().map(|(g, c)| (g.k as i64 * step, *c)).collect();
        CycloNumber::from_exponents(field, &terms)
    }

    /// The homomorphism onto <z> killing p and q.
    pub fn to_cyclic(&self) -> Self {
        let params = self.params;
        self.map(|g| params.z_pow(g.k as i64))
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (g, c) in &self.terms {
            let gs = g.to_string();
            let (neg, body) = match gs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, gs),
            };
            let c = if neg { -c } else { *c };
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if !first {
                write!(f, " ")?;
            }
            if mag == 1 {
                write!(f, "{sign}{body}")?;
            } else if body == "1" {
                write!(f, "{sign}{mag}")?;
            } else {
                write!(f, "{sign}{mag}{body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for GroupRingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(String, i64)> = self.terms.iter().map(|(g, c)| (g.to_string(), *c)).collect();
        v.serialize(s)
    }
}

/// A dense matrix of group ring elements.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingMatrix {
    pub rows: usize,
    pub cols: usize,
    params: GroupParams,
    entries: Vec<GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn zero(params: GroupParams, rows: usize, cols: usize) -> Self {
        GroupRingMatrix { rows, cols, params, entries: vec![GroupRingElement::zero(params); rows * cols] }
    }

    pub fn identity(params: GroupParams, n: usize) -> Self {
        let mut m = Self::zero(params, n, n);
        for i in 0..n {
            m.set(i, i, GroupRingElement::one(params));
        }
        m
    }

    pub fn from_rows(params: GroupParams, rows: Vec<Vec<GroupRingElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(params, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, e) in row.into_iter().enumerate() {
                m.set(i, j, e);
            }
        }
        m
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: GroupRingElement) {
        self.entries[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> &[GroupRingElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix shapes do not compose");
        let mut r = Self::zero(self.params, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = GroupRingElement::zero(self.params);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                r.set(i, j, acc);
            }
        }
        r
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect();
        GroupRingMatrix { entries, ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect();
        GroupRingMatrix { entries, ..self.clone() }
    }

    pub fn map_entries(&self, f: impl Fn(&GroupRingElement) -> GroupRingElement) -> Self {
        GroupRingMatrix { entries: self.entries.iter().map(f).collect(), ..self.clone() }
    }

    pub fn to_cyclic(&self) -> Self {
        self.map_entries(|e| e.to_cyclic())
    }

    /// First (row, col) where the two matrices differ.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Some((0, 0));
        }
        (0..self.rows).flat_map(|i| (0..self.cols).map(move |j| (i, j))).find(|&(i, j)| self.get(i, j) != o.get(i, j))
    }

    pub fn augmentation(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).augmentation() as i128)
    }

    pub fn mod3(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).augmentation().rem_euclid(3) as i128)
    }

    pub fn chi_zeta(&self, field: &Field) -> Vec<Vec<CycloNumber>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).chi_zeta(field)).collect()).collect()
    }

    /// Z-matrix on the basis {g·e_i}, rows indexed by (i, g) and columns by
    /// (j, h). Since `∂(g e_i) = Σ g·M[i][j] e'_j`, block (i, j) sends g to
    /// g·M[i][j]; the specialization is multiplicative, R(AB) = R(A)R(B).
    pub fn regular(&self) -> IntMatrix {
        let n = self.params.order();
        let elems = self.params.elements();
        let mut out = IntMatrix::zeros(self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if e.is_zero() {
                    continue;
                }
                for g in &elems {
                    for (h, c) in e.terms() {
                        let col = j * n + (*g * *h).index();
                        let row = i * n + g.index();
                        *out.at_mut(row, col) += *c as i128;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for GroupRingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Sparse JSON form: (row, col, [(element, coefficient)]) for nonzero entries.
impl Serialize for GroupRingMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut v = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() {
                    v.push((i, j, e.clone()));
                }
            }
        }
        #[derive(Serialize)]
        struct Repr<'a, T> {
            rows: usize,
            cols: usize,
            entries: &'a T,
        }
        Repr { rows: self.rows, cols: self.cols, entries: &v }.serialize(s)
    }
}
