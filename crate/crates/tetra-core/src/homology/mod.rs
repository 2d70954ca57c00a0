//! Homology and cohomology of chain complexes over Z and Z/3, and the
//! cohomology ring of the group.

pub mod ring;
pub mod snf;
pub mod tables;

use std::fmt;

use serde::Serialize;

pub use snf::{
    in_column_span, invariant_factors, rank_mod_p, smith_normal_form, solve_integer, IntMatrix, SmithDecomposition,
};

use crate::error::Result;

/// A finitely generated abelian group `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`
/// with `t_1 | t_2 | ...` and every `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => AbelianGroup { rank: 0, torsion: vec![n] },
        }
    }

    /// Order of a finite group, `None` if it is infinite.
    pub fn order(&self) -> Option<u64> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A chain complex of free Z-modules in degrees `0..=top`. `d[k]` is the
/// row-convention matrix of `∂_k: C_k -> C_(k-1)`; `d[0]` has no columns.
#[derive(Clone, Debug)]
pub struct IntComplex {
    pub ranks: Vec<usize>,
    pub d: Vec<IntMatrix>,
}

impl IntComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Self {
        assert_eq!(boundaries.len() + 1, ranks.len(), "one boundary per positive degree");
        let mut d = vec![IntMatrix::zeros(ranks[0], 0)];
        for (k, m) in boundaries.into_iter().enumerate() {
            assert_eq!((m.rows, m.cols), (ranks[k + 1], ranks[k]), "boundary shape in degree {}", k + 1);
            d.push(m);
        }
        IntComplex { ranks, d }
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    /// ∂_(k-1)∘∂_k = 0 in every degree.
    pub fn is_complex(&self) -> bool {
        (2..=self.top()).all(|k| self.d[k].mul(&self.d[k - 1]).is_zero())
    }

    fn factors(&self) -> Result<Vec<Vec<i128>>> {
        self.d.iter().map(invariant_factors).collect()
    }

    /// H_k for every degree. The top degree is computed as the kernel of
    /// the last boundary, as for a truncated complex.
    pub fn homology_all(&self) -> Result<Vec<AbelianGroup>> {
        let f = self.factors()?;
        Ok((0..=self.top()).map(|k| homology_from(&self.ranks, &f, k)).collect())
    }

    pub fn homology(&self, k: usize) -> Result<AbelianGroup> {
        let here = invariant_factors(&self.d[k])?;
        let above = if k < self.top() { invariant_factors(&self.d[k + 1])? } else { Vec::new() };
        let rank = self.ranks[k] - here.len() - above.len();
        Ok(AbelianGroup { rank, torsion: torsion_of(&above) })
    }

    /// H^k of the dual complex `Hom(C, Z)`.
    pub fn cohomology_all(&self) -> Result<Vec<AbelianGroup>> {
        let f = self.factors()?;
        Ok((0..=self.top())
            .map(|k| {
                let above = if k < self.top() { f[k + 1].len() } else { 0 };
                let rank = self.ranks[k] - f[k].len() - above;
                AbelianGroup { rank, torsion: torsion_of(&f[k]) }
            })
            .collect())
    }

    /// dim H_k(C ⊗ F_p).
    pub fn homology_mod_p(&self, p: i128) -> Vec<usize> {
        let r: Vec<usize> = self.d.iter().map(|m| rank_mod_p(m, p)).collect();
        (0..=self.top()).map(|k| self.ranks[k] - r[k] - if k < self.top() { r[k + 1] } else { 0 }).collect()
    }

    /// dim H^k(Hom(C, F_p)); equal to the homology dimensions.
    pub fn cohomology_mod_p(&self, p: i128) -> Vec<usize> {
        self.homology_mod_p(p)
    }

    /// Is the row vector `v` on C_k a cycle mod p?
    pub fn is_cycle_mod_p(&self, k: usize, v: &[i128], p: i128) -> bool {
        let d = &self.d[k];
        (0..d.cols).all(|j| (0..d.rows).map(|i| v[i] * d.at(i, j)).sum::<i128>().rem_euclid(p) == 0)
    }

    /// Is the row vector `v` on C_k a boundary mod p?
    pub fn is_boundary_mod_p(&self, k: usize, v: &[i128], p: i128) -> bool {
        if k == self.top() {
            return v.iter().all(|x| x.rem_euclid(p) == 0);
        }
        let d = &self.d[k + 1];
        let base = rank_mod_p(d, p);
        let mut ext = d.to_rows();
        ext.push(v.to_vec());
        rank_mod_p(&IntMatrix::from_rows(&ext), p) == base
    }

    /// Is the cochain `c` on C_k a coboundary mod p?
    pub fn is_coboundary_mod_p(&self, k: usize, c: &[i128], p: i128) -> bool {
        let d = self.d[k].transpose();
        let base = rank_mod_p(&d, p);
        let mut ext = d.to_rows();
        ext.push(c.to_vec());
        rank_mod_p(&IntMatrix::from_rows(&ext), p) == base
    }

    /// Is the cochain `c` on C_k a cocycle mod p?
    pub fn is_cocycle_mod_p(&self, k: usize, c: &[i128], p: i128) -> bool {
        if k == self.top() {
            return true;
        }
        self.d[k + 1].mul_vec(c).iter().all(|x| x.rem_euclid(p) == 0)
    }
}

fn torsion_of(f: &[i128]) -> Vec<u64> {
    f.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect()
}

fn homology_from(ranks: &[usize], f: &[Vec<i128>], k: usize) -> AbelianGroup {
    let top = ranks.len() - 1;
    let above: &[i128] = if k < top { &f[k + 1] } else { &[] };
    AbelianGroup { rank: ranks[k] - f[k].len() - above.len(), torsion: torsion_of(above) }
}

/// Integer cohomology classes in degree k: cocycles modulo the image of
/// δ^(k-1), whose matrix is `∂_k` acting on cochains of degree k-1.
pub struct CohomologyDegree {
    k: usize,
    smith: SmithDecomposition,
    next: Option<IntMatrix>,
}

impl CohomologyDegree {
    pub fn new(c: &IntComplex, k: usize) -> Result<Self> {
        let smith = smith_normal_form(&c.d[k], true)?;
        let next = (k < c.top()).then(|| c.d[k + 1].clone());
        Ok(CohomologyDegree { k, smith, next })
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_cocycle(&self, c: &[i128]) -> bool {
        match &self.next {
            Some(d) => d.mul_vec(c).iter().all(|&x| x == 0),
            None => true,
        }
    }

    pub fn is_coboundary(&self, c: &[i128]) -> bool {
        in_column_span(&self.smith, c)
    }

    /// The m in `0..order` with `c = m·g` in cohomology, if any.
    pub fn multiple_of(&self, c: &[i128], g: &[i128], order: u64) -> Option<u64> {
        (0..order).find(|&m| {
            let diff: Vec<i128> = c.iter().zip(g).map(|(a, b)| a - m as i128 * b).collect();
            self.is_coboundary(&diff)
        })
    }

    /// Order of the class of `g`, searched up to `bound`.
    pub fn class_order(&self, g: &[i128], bound: u64) -> Option<u64> {
        (1..=bound).find(|&n| {
            let v: Vec<i128> = g.iter().map(|x| x * n as i128).collect();
            self.is_coboundary(&v)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_like_complex() {
        // Z --(3)--> Z: H_0 = Z/3, H_1 = 0; H^0 = 0, H^1 = Z/3
        let c = IntComplex::new(vec![1, 1], vec![IntMatrix::from_rows(&[vec![3]])]);
        let h = c.homology_all().unwrap();
        assert_eq!(h, vec![AbelianGroup::cyclic(3), AbelianGroup::trivial()]);
        let co = c.cohomology_all().unwrap();
        assert_eq!(co, vec![AbelianGroup::trivial(), AbelianGroup::cyclic(3)]);
        assert_eq!(c.homology_mod_p(3), vec![1, 1]);
        assert_eq!(c.homology(0).unwrap(), AbelianGroup::cyclic(3));
    }

    #[test]
    fn display() {
        assert_eq!(AbelianGroup::cyclic(9).to_string(), "Z/9");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
    }

    #[test]
    fn cohomology_classes() {
        let c = IntComplex::new(vec![1, 1], vec![IntMatrix::from_rows(&[vec![6]])]);
        let h1 = CohomologyDegree::new(&c, 1).unwrap();
        assert!(h1.is_cocycle(&[5]));
        assert_eq!(h1.multiple_of(&[10], &[1], 6), Some(4));
        assert_eq!(h1.class_order(&[2], 10), Some(3));
    }
}
