//! Dense integer matrices and the Smith normal form.
//!
//! Elimination always pivots on the entry of smallest absolute value, which
//! keeps the entries of the sparse ±1 boundary matrices met here small.
//! Arithmetic is done in i128 with overflow checks.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i128) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn at(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix shapes do not compose");
        let mut r = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    r.data[i * o.cols + j] += a * o.at(k, j);
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn map(&self, f: impl Fn(i128) -> i128) -> Self {
        IntMatrix { data: self.data.iter().map(|&x| f(x)).collect(), ..self.clone() }
    }

    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(row_perm[i], col_perm[j]))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q·row[src], over columns `from..`.
    fn row_axpy(&mut self, dst: usize, src: usize, q: i128, from: usize) -> Result<()> {
        for j in from..self.cols {
            let s = self.data[src * self.cols + j];
            if s != 0 {
                let d = &mut self.data[dst * self.cols + j];
                *d = s.checked_mul(q).and_then(|p| d.checked_sub(p)).ok_or(Error::Overflow("smith row operation"))?;
            }
        }
        Ok(())
    }

    /// col[dst] -= q·col[src], over rows `from..`.
    fn col_axpy(&mut self, dst: usize, src: usize, q: i128, from: usize) -> Result<()> {
        for i in from..self.rows {
            let s = self.data[i * self.cols + src];
            if s != 0 {
                let d = &mut self.data[i * self.cols + dst];
                *d =
                    s.checked_mul(q).and_then(|p| d.checked_sub(p)).ok_or(Error::Overflow("smith column operation"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// `U·A·V = D` with `D` diagonal and `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    /// Nonzero diagonal entries, positive, in divisibility order.
    pub invariant_factors: Vec<i128>,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// The diagonal matrix D.
    pub fn diagonal(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, f) in self.invariant_factors.iter().enumerate() {
            *d.at_mut(i, i) = *f;
        }
        d
    }

    /// Factors larger than one.
    pub fn torsion(&self) -> Vec<i128> {
        self.invariant_factors.iter().copied().filter(|&d| d > 1).collect()
    }
}

/// Smith normal form. Transforms are accumulated when `with_transforms`.
pub fn smith_normal_form(a: &IntMatrix, with_transforms: bool) -> Result<SmithDecomposition> {
    let mut m = a.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut u = with_transforms.then(|| IntMatrix::identity(rows));
    let mut v = with_transforms.then(|| IntMatrix::identity(cols));
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize, i128)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = m.at(i, j).abs();
                if x != 0 && best.is_none_or(|(_, _, b)| x < b) {
                    best = Some((i, j, x));
                    if x == 1 {
                        break;
                    }
                }
            }
            if matches!(best, Some((_, _, 1))) {
                break;
            }
        }
        let Some((pi, pj, _)) = best else { break };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        if let Some(v) = v.as_mut() {
            v.swap_cols(t, pj);
        }
        loop {
            let p = m.at(t, t);
            let mut moved = false;
            // clear column t
            for i in t + 1..rows {
                let x = m.at(i, t);
                if x == 0 {
                    continue;
                }
                let q = x.div_euclid(p);
                m.row_axpy(i, t, q, t)?;
                if let Some(u) = u.as_mut() {
                    u.row_axpy(i, t, q, 0)?;
                }
                if m.at(i, t) != 0 {
                    m.swap_rows(t, i);
                    if let Some(u) = u.as_mut() {
                        u.swap_rows(t, i);
                    }
                    moved = true;
                    break;
                }
            }
            if moved {
                continue;
            }
            // clear row t
            for j in t + 1..cols {
                let x = m.at(t, j);
                if x == 0 {
                    continue;
                }
                let q = x.div_euclid(p);
                m.col_axpy(j, t, q, t)?;
                if let Some(v) = v.as_mut() {
                    v.col_axpy(j, t, q, 0)?;
                }
                if m.at(t, j) != 0 {
                    m.swap_cols(t, j);
                    if let Some(v) = v.as_mut() {
                        v.swap_cols(t, j);
                    }
                    moved = true;
                    break;
                }
            }
            if moved {
                continue;
            }
            // divisibility: fold a row with a non-multiple into row t
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m.at(i, j) % p != 0));
            match bad {
                Some(i) => {
                    m.row_axpy(t, i, -1, t)?;
                    if let Some(u) = u.as_mut() {
                        u.row_axpy(t, i, -1, 0)?;
                    }
                }
                None => break,
            }
        }
        if m.at(t, t) < 0 {
            for j in t..cols {
                *m.at_mut(t, j) = -m.at(t, j);
            }
            if let Some(u) = u.as_mut() {
                for j in 0..rows {
                    *u.at_mut(t, j) = -u.at(t, j);
                }
            }
        }
        factors.push(m.at(t, t));
        t += 1;
    }
    Ok(SmithDecomposition { invariant_factors: factors, u, v, rows, cols })
}

/// Invariant factors only.
pub fn invariant_factors(a: &IntMatrix) -> Result<Vec<i128>> {
    Ok(smith_normal_form(a, false)?.invariant_factors)
}

/// Rank over the field with `p` elements.
pub fn rank_mod_p(a: &IntMatrix, p: i128) -> usize {
    let mut m = a.map(|x| x.rem_euclid(p));
    let inv = |x: i128| -> i128 { (1..p).find(|y| (x * y) % p == 1).expect("p prime") };
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(r) = (rank..m.rows).find(|&r| m.at(r, c) != 0) else { continue };
        m.swap_rows(rank, r);
        let iv = inv(m.at(rank, c));
        for j in 0..m.cols {
            *m.at_mut(rank, j) = (m.at(rank, j) * iv) % p;
        }
        for i in 0..m.rows {
            if i != rank && m.at(i, c) != 0 {
                let f = m.at(i, c);
                for j in 0..m.cols {
                    *m.at_mut(i, j) = (m.at(i, j) - f * m.at(rank, j)).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Is `x` an integer combination of the columns of `a`?
pub fn in_column_span(smith: &SmithDecomposition, x: &[i128]) -> bool {
    let u = smith.u.as_ref().expect("transforms required");
    let ux = u.mul_vec(x);
    ux.iter().enumerate().all(|(i, &c)| match smith.invariant_factors.get(i) {
        Some(&d) => c % d == 0,
        None => c == 0,
    })
}

/// An integer solution of `A·y = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[i128]) -> Result<Option<Vec<i128>>> {
    let smith = smith_normal_form(a, true)?;
    let u = smith.u.as_ref().unwrap();
    let v = smith.v.as_ref().unwrap();
    let ub = u.mul_vec(b);
    let mut w = vec![0i128; a.cols];
    for (i, &c) in ub.iter().enumerate() {
        match smith.invariant_factors.get(i) {
            Some(&d) => {
                if c % d != 0 {
                    return Ok(None);
                }
                w[i] = c / d;
            }
            None => {
                if c != 0 {
                    return Ok(None);
                }
            }
        }
    }
    let y = v.mul_vec(&w);
    debug_assert_eq!(a.mul_vec(&y), b);
    Ok(Some(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a, true).unwrap();
        let (u, v) = (s.u.clone().unwrap(), s.v.clone().unwrap());
        assert_eq!(u.mul(a).mul(&v), s.diagonal());
        for w in s.invariant_factors.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        s
    }

    #[test]
    fn small_cases() {
        assert_eq!(check(&IntMatrix::identity(3)).invariant_factors, vec![1, 1, 1]);
        let d = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(check(&d).invariant_factors, vec![1, 6]);
        assert!(check(&IntMatrix::zeros(3, 2)).invariant_factors.is_empty());
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(check(&a).invariant_factors, vec![2, 6, 12]);
    }

    #[test]
    fn mod_p_rank() {
        let a = IntMatrix::from_rows(&[vec![3, 0], vec![0, 1]]);
        assert_eq!(rank_mod_p(&a, 3), 1);
        assert_eq!(rank_mod_p(&a, 2), 2);
    }

    #[test]
    fn integer_solving() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![0, 3]]);
        assert_eq!(solve_integer(&a, &[2, 3]).unwrap(), Some(vec![-1, 1]));
        assert_eq!(solve_integer(&a, &[1, 0]).unwrap(), None);
    }

    fn matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i128..=9, r * c)
                .prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| v[i * c + j]))
        })
    }

    proptest! {
        #[test]
        fn decomposition_is_valid(a in matrix()) {
            check(&a);
        }

        #[test]
        fn permutation_invariant(a in matrix(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut rp: Vec<usize> = (0..a.rows).collect();
            let mut cp: Vec<usize> = (0..a.cols).collect();
            rp.shuffle(&mut rng);
            cp.shuffle(&mut rng);
            prop_assert_eq!(invariant_factors(&a).unwrap(), invariant_factors(&a.permute(&rp, &cp)).unwrap());
        }
    }
}
