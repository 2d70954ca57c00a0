//! Homology and cohomology tables of the group, read off from the reduced
//! resolution E•, together with the expected values.

use serde::Serialize;

use crate::complexes::{build_e, ell_hat, GroupComplex, IdentityFailure};
use crate::error::Result;
use crate::group::GroupParams;
use crate::homology::{AbelianGroup, IntComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Coefficients {
    Z,
    Z3,
}

impl std::str::FromStr for Coefficients {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" | "z" => Ok(Coefficients::Z),
            "Z3" | "z3" | "Z/3" => Ok(Coefficients::Z3),
            _ => Err(crate::Error::Param(format!("unknown coefficients {s:?}; use Z or Z3"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub degree: usize,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub s: u32,
    pub kind: &'static str,
    pub coefficients: Coefficients,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }
}

/// H_k(G; Z): Z, then Z/3^s in degrees 4j+1, Z/(8·3^s) in degrees 4j+3
/// and 0 in positive even degrees.
pub fn expected_homology(params: GroupParams, k: usize) -> AbelianGroup {
    let t = params.t() as u64;
    match (k, k % 4) {
        (0, _) => AbelianGroup::free(1),
        (_, 1) => AbelianGroup::cyclic(t),
        (_, 3) => AbelianGroup::cyclic(8 * t),
        _ => AbelianGroup::trivial(),
    }
}

/// H^k(G; Z): Z, then Z/3^s in degrees 4j+2, Z/(8·3^s) in positive
/// degrees 4j and 0 in odd degrees.
pub fn expected_cohomology(params: GroupParams, k: usize) -> AbelianGroup {
    let t = params.t() as u64;
    match (k, k % 4) {
        (0, _) => AbelianGroup::free(1),
        (_, 2) => AbelianGroup::cyclic(t),
        (_, 0) => AbelianGroup::cyclic(8 * t),
        _ => AbelianGroup::trivial(),
    }
}

/// E• ⊗ Z with enough periods that every degree up to `max_degree` lies
/// strictly below the truncation.
pub fn trivial_complex(params: GroupParams, max_degree: usize) -> Result<IntComplex> {
    let periods = (max_degree + 1) / 4 + 1;
    Ok(build_e(params, &vec![ell_hat(params); periods])?.augmentation())
}

fn z3_name(dim: usize) -> String {
    match dim {
        0 => "0".into(),
        1 => "Z/3".into(),
        d => format!("(Z/3)^{d}"),
    }
}

pub fn homology_table(params: GroupParams, coefficients: Coefficients, max_degree: usize) -> Result<Table> {
    let c = trivial_complex(params, max_degree)?;
    let rows = match coefficients {
        Coefficients::Z => {
            let h = c.homology_all()?;
            (0..=max_degree).map(|k| row(k, expected_homology(params, k), h[k].clone())).collect()
        }
        Coefficients::Z3 => {
            let h = c.homology_mod_p(3);
            (0..=max_degree).map(|k| text_row(k, z3_name(1), z3_name(h[k]))).collect()
        }
    };
    Ok(Table { s: params.s, kind: "homology", coefficients, rows })
}

pub fn cohomology_table(params: GroupParams, coefficients: Coefficients, max_degree: usize) -> Result<Table> {
    let c = trivial_complex(params, max_degree)?;
    let rows = match coefficients {
        Coefficients::Z => {
            let h = c.cohomology_all()?;
            (0..=max_degree).map(|k| row(k, expected_cohomology(params, k), h[k].clone())).collect()
        }
        Coefficients::Z3 => {
            let h = c.cohomology_mod_p(3);
            (0..=max_degree).map(|k| text_row(k, z3_name(1), z3_name(h[k]))).collect()
        }
    };
    Ok(Table { s: params.s, kind: "cohomology", coefficients, rows })
}

fn row(degree: usize, expected: AbelianGroup, actual: AbelianGroup) -> TableRow {
    TableRow { degree, ok: expected == actual, expected: expected.to_string(), actual: actual.to_string() }
}

fn text_row(degree: usize, expected: String, actual: String) -> TableRow {
    TableRow { degree, ok: expected == actual, expected, actual }
}

/// E• is a complex over Z[G] whose underlying free abelian complex has
/// the homology of S^(4n-1).
#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    pub s: u32,
    pub ells: Vec<i64>,
    pub square_failure: Option<IdentityFailure>,
    pub regular_homology: Vec<String>,
    pub sphere_homology: bool,
    /// The augmented complex E• -> Z is exact below the top degree.
    pub augmented_exact: bool,
}

impl ResolutionReport {
    pub fn ok(&self) -> bool {
        self.square_failure.is_none() && self.sphere_homology && self.augmented_exact
    }
}

pub fn resolution_check(params: GroupParams, ells: &[i64]) -> Result<ResolutionReport> {
    let e: GroupComplex = build_e(params, ells)?;
    let square_failure = e.square_failure();
    let h = e.regular().homology_all()?;
    let top = h.len() - 1;
    let sphere_homology = h
        .iter()
        .enumerate()
        .all(|(k, g)| *g == if k == 0 || k == top { AbelianGroup::free(1) } else { AbelianGroup::trivial() });
    // H_0 = Z generated by the augmentation class means ε: E_0 -> Z is onto
    // with kernel im ∂_1, i.e. E• -> Z -> 0 is exact there.
    let augmented_exact = h[0] == AbelianGroup::free(1) && h[1..top].iter().all(|g| *g == AbelianGroup::trivial());
    Ok(ResolutionReport {
        s: params.s,
        ells: ells.to_vec(),
        square_failure,
        regular_homology: h.iter().map(|g| g.to_string()).collect(),
        sphere_homology,
        augmented_exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_s2() {
        let p = GroupParams::new(2).unwrap();
        for coeffs in [Coefficients::Z, Coefficients::Z3] {
            let h = homology_table(p, coeffs, 7).unwrap();
            assert!(h.ok(), "{h:?}");
            let c = cohomology_table(p, coeffs, 7).unwrap();
            assert!(c.ok(), "{c:?}");
        }
        let h = homology_table(p, Coefficients::Z, 3).unwrap();
        assert_eq!(h.rows[1].actual, "Z/9");
        assert_eq!(h.rows[3].actual, "Z/72");
    }

    #[test]
    fn resolution_s2() {
        let p = GroupParams::new(2).unwrap();
        let r = resolution_check(p, &[1, 4]).unwrap();
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!("Z3".parse::<Coefficients>().unwrap(), Coefficients::Z3);
        assert!("Q".parse::<Coefficients>().is_err());
    }
}
