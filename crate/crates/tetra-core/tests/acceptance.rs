//! Acceptance criteria 1-11. Runs every criterion, prints one line each and
//! exits nonzero if any of them fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tetra_core::complexes::{ell_hat, verify_chain_equivalence};
use tetra_core::cyclo::CycloNumber;
use tetra_core::geometry::{
    basic_facets, facet_census, fundamental_domain, fundamental_facets, geometry_field, verify_facets, OrbitPolytope,
    Representation,
};
use tetra_core::group_ring::GroupRingElement;
use tetra_core::homology::ring::ring_relations_check;
use tetra_core::homology::tables::{cohomology_table, homology_table, resolution_check, Coefficients};
use tetra_core::homology::{invariant_factors, IntMatrix};
use tetra_core::torsion::{
    circulant_rank, direct_rank, distinguish_space_forms, independence_check, tau_closed_form, torsion_report,
    ExponentMatrix,
};
use tetra_core::{GroupElement, GroupParams, Result};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn params(s: u32) -> GroupParams {
    GroupParams::new(s).expect("valid s")
}

fn units(p: GroupParams) -> Vec<i64> {
    (1..p.t() as i64).filter(|l| l % 3 != 0).collect()
}

fn within(start: Instant, limit: Duration) -> bool {
    start.elapsed() < limit
}

fn criterion_1() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    for s in [2, 3] {
        let p = params(s);
        let start = Instant::now();
        let z = homology_table(p, Coefficients::Z, 7)?;
        let z3 = homology_table(p, Coefficients::Z3, 7)?;
        let fast = within(start, Duration::from_secs(60));
        pass &= z.ok() && z3.ok() && fast;
        let h: Vec<&str> = z.rows.iter().map(|r| r.actual.as_str()).collect();
        notes.push(format!("s={s}: H_0..7 = [{}], mod 3 ok = {}", h.join(", "), z3.ok()));
    }
    Ok(outcome(pass, notes.join("; ")))
}

fn criterion_2() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    for s in [2, 3] {
        let p = params(s);
        let z = cohomology_table(p, Coefficients::Z, 7)?;
        let z3 = cohomology_table(p, Coefficients::Z3, 7)?;
        pass &= z.ok() && z3.ok();
        let h: Vec<&str> = z.rows.iter().map(|r| r.actual.as_str()).collect();
        notes.push(format!("s={s}: H^0..7 = [{}]", h.join(", ")));
    }
    Ok(outcome(pass, notes.join("; ")))
}

fn criterion_3() -> Result<Outcome> {
    let start = Instant::now();
    let cases: [(u32, Vec<i64>); 4] = [(2, vec![1, 4]), (2, vec![2, 7]), (3, vec![1, 5]), (3, vec![13, 26])];
    let mut pass = true;
    let mut notes = Vec::new();
    for (s, ells) in cases {
        let r = resolution_check(params(s), &ells)?;
        pass &= r.ok();
        notes.push(format!("s={s} ells={ells:?}: {}", r.regular_homology.join(",")));
    }
    pass &= within(start, Duration::from_secs(300));
    Ok(outcome(pass, notes.join("; ")))
}

fn criterion_4() -> Result<Outcome> {
    let mut pass = true;
    let mut notes = Vec::new();
    for s in [2, 3] {
        let p = params(s);
        for ells in [vec![ell_hat(p)], vec![1, 2]] {
            let r = verify_chain_equivalence(p, &ells)?;
            pass &= r.ok();
            if !r.ok() {
                notes.push(format!("s={s} ells={ells:?}: {:?}", r.failures()));
            }
        }
    }
    if pass {
        notes.push("φ'φ = Id and φφ' - Id = ∂D + D∂ for s=2,3".into());
    }
    Ok(outcome(pass, notes.join("; ")))
}

fn criterion_5() -> Result<Outcome> {
    let start = Instant::now();
    let p2 = params(2);
    let poly = OrbitPolytope::base(p2)?;
    let all = verify_facets(&poly, &basic_facets(p2))?;
    let reps2 = verify_facets(&poly, &fundamental_facets(p2))?;
    let census = facet_census(p2)?;
    let p3 = params(3);
    let poly3 = OrbitPolytope::base(p3)?;
    let reps3 = verify_facets(&poly3, &fundamental_facets(p3))?;
    let ok = |c: &[tetra_core::geometry::FacetCertificate]| c.iter().all(|x| x.ok);
    let pass = ok(&all)
        && ok(&reps2)
        && ok(&reps3)
        && census.ok()
        && census.octahedra == 72
        && census.tetrahedra == 216
        && census.euler == 0
        && within(start, Duration::from_secs(600));
    Ok(outcome(
        pass,
        format!(
            "s=2: {} basic facets certified, census {} octahedra + {} tetrahedra, χ = {}; s=3: {} orbit representatives certified",
            all.len(),
            census.octahedra,
            census.tetrahedra,
            census.euler,
            reps3.len()
        ),
    ))
}

fn criterion_6() -> Result<Outcome> {
    let mut pass = true;
    let mut notes = Vec::new();
    for s in [2, 3] {
        let p = params(s);
        let fd = fundamental_domain(p)?;
        let expected = 3 * (p.a() as usize - 1) / 2;
        pass &= fd.ok() && fd.tetrahedra == expected && fd.k_orbits == expected;
        notes.push(format!(
            "s={s}: |T| = {} (expected {expected}), steps {}/{}/{}",
            fd.tetrahedra, fd.step1, fd.step2, fd.step3
        ));
    }
    Ok(outcome(pass, notes.join("; ")))
}

fn criterion_7() -> Result<Outcome> {
    let mut pass = true;
    let mut notes = Vec::new();
    for s in [2, 3] {
        let p = params(s);
        let r = ring_relations_check(p)?;
        pass &= r.gamma_chain_map && r.annihilators_ok(p) && r.x2_is_8y;
        notes.push(format!(
            "s={s}: γ chain map {}, annihilators {}/{}, x̄² = {}ȳ by γ and {}ȳ by Yoneda (literal 8ȳ: {}); \
             x̄² = 8y' with y' = {}ȳ a generator: {}",
            r.gamma_chain_map,
            r.order_x,
            r.order_y,
            r.c_gamma,
            r.c_yoneda,
            r.x2_is_8y,
            r.generator_multiplier.map_or("-".to_string(), |l| l.to_string()),
            r.presentation_holds
        ));
    }
    Ok(outcome(pass, notes.join("; ")))
}

fn criterion_8() -> Result<Outcome> {
    let start = Instant::now();
    let p = params(2);
    let us = units(p);
    let mut lists: Vec<Vec<i64>> = us.iter().map(|&l| vec![l]).collect();
    for (i, &a) in us.iter().enumerate() {
        for &b in &us[i..] {
            lists.push(vec![a, b]);
        }
    }
    let mut failures = Vec::new();
    for ells in &lists {
        if !torsion_report(p, ells)?.ok() {
            failures.push(ells.clone());
        }
    }
    let pass = failures.is_empty() && within(start, Duration::from_secs(300));
    Ok(outcome(pass, format!("{} ℓ-lists, closed = det U = det V and τ(W) = 1; failures {failures:?}", lists.len())))
}

fn criterion_9() -> Result<Outcome> {
    let mut pass = true;
    let mut notes = Vec::new();
    for s in [2, 3] {
        let p = params(s);
        let t = p.t() as i64;
        let mut symmetric = true;
        for l in units(p) {
            symmetric &= tau_closed_form(p, &[l])?.eq_mod_gamma(&tau_closed_form(p, &[t - l])?);
        }
        let r = independence_check(p, 256)?;
        let n = r.classes.len();
        pass &= symmetric && r.ok() && r.content == 2 && r.circulant_rank == n && r.log_rank == n;
        notes.push(format!(
            "s={s}: τ_ℓ = τ_-ℓ {symmetric}, content {}, circulant rank {}/{n}, log rank {}/{n} at {} bits",
            r.content, r.circulant_rank, r.log_rank, r.precision
        ));
    }
    Ok(outcome(pass, notes.join("; ")))
}

fn criterion_10() -> Result<Outcome> {
    let r = distinguish_space_forms(params(2), 2)?;
    Ok(outcome(
        r.ok(),
        format!(
            "{} multisets, {} pairs, {} equal, {} mismatches",
            r.multisets,
            r.pairs,
            r.equal_pairs,
            r.mismatches.len()
        ),
    ))
}

/// Invariant factors from determinantal divisors: d_k is the gcd of all
/// k×k minors and the k-th factor is d_k / d_(k-1).
fn snf_oracle(a: &[Vec<i128>]) -> Vec<i128> {
    let (r, c) = (a.len(), a[0].len());
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let m: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect();
                g = g.gcd(&laplace_det(&m));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn laplace_det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * laplace_det(&minor)
            })
            .sum(),
    }
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Vec<Vec<i128>> {
    let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    let mut m: Vec<Vec<i128>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-6..=6)).collect()).collect();
    // rank drops and common factors now and then
    if r > 1 && rng.gen_bool(0.3) {
        let f = rng.gen_range(-2..=2);
        m[r - 1] = m[0].iter().map(|v| v * f).collect();
    }
    if rng.gen_bool(0.2) {
        let f = rng.gen_range(2..=4);
        m.iter_mut().flatten().for_each(|v| *v *= f);
    }
    m
}

/// Products in Z[G] through the Cayley table of the faithful 2x2 matrix
/// representation, which never calls the group law.
struct DenseOracle {
    rep: Representation,
    lookup: BTreeMap<String, usize>,
    elements: Vec<GroupElement>,
}

impl DenseOracle {
    fn new(p: GroupParams) -> Result<Self> {
        let field = geometry_field(p)?;
        let rep = Representation::new(p, 1, &field)?;
        let elements = p.elements();
        let lookup = elements.iter().map(|g| (key(rep.mat(g)), g.index())).collect();
        Ok(DenseOracle { rep, lookup, elements })
    }

    fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; a.len()];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                let m = tetra_core::geometry::mat_mul(self.rep.mat(&self.elements[i]), self.rep.mat(&self.elements[j]));
                out[self.lookup[&key(&m)]] += x * y;
            }
        }
        out
    }
}

fn key(m: &tetra_core::geometry::Mat2) -> String {
    m.iter().flatten().map(CycloNumber::to_string).collect::<Vec<_>>().join("|")
}

fn random_dense(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for _ in 0..rng.gen_range(0..=6) {
        v[rng.gen_range(0..n)] += rng.gen_range(-4..=4);
    }
    v
}

fn criterion_11() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e7a);
    let mut snf_bad = 0;
    for _ in 0..200 {
        let m = random_matrix(&mut rng);
        let fast = invariant_factors(&IntMatrix::from_rows(&m))?;
        if fast != snf_oracle(&m) {
            snf_bad += 1;
        }
    }
    let mut ring_bad = 0;
    for (s, count) in [(2, 60), (3, 40)] {
        let p = params(s);
        let oracle = DenseOracle::new(p)?;
        let n = p.order();
        let sparse = |v: &[i64]| {
            GroupRingElement::from_terms(p, v.iter().enumerate().map(|(i, c)| (GroupElement::from_index(p, i), *c)))
        };
        for _ in 0..count {
            let (a, b) = (random_dense(&mut rng, n), random_dense(&mut rng, n));
            let expect = sparse(&oracle.mul(&a, &b));
            if sparse(&a).mul(&sparse(&b)) != expect {
                ring_bad += 1;
            }
        }
    }
    let mut circ_bad = 0;
    for i in 0..50 {
        let order = if i % 2 == 0 { 3 } else { 9 };
        let column: Vec<i128> = match i % 10 {
            0 => vec![1; order],
            1 => (0..order)
                .map(|j| {
                    if j == 0 {
                        1
                    } else if j == 1 {
                        -1
                    } else {
                        0
                    }
                })
                .collect(),
            _ => (0..order).map(|_| rng.gen_range(-3..=3)).collect(),
        };
        let m = IntMatrix::from_fn(order, order, |r, c| column[(r + order - c) % order]);
        let a = ExponentMatrix::from_matrix(&m)?;
        if circulant_rank(&a) != direct_rank(&m)? {
            circ_bad += 1;
        }
    }
    Ok(outcome(
        snf_bad + ring_bad + circ_bad == 0,
        format!("SNF 200 matrices, {snf_bad} mismatches; group ring 100 pairs, {ring_bad}; circulants 50, {circ_bad}"),
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 11] = [
        ("homology tables", criterion_1),
        ("cohomology tables", criterion_2),
        ("resolution property", criterion_3),
        ("chain equivalence", criterion_4),
        ("facet certificates", criterion_5),
        ("fundamental domain", criterion_6),
        ("cohomology ring x^2 = 8y", criterion_7),
        ("torsion triple agreement", criterion_8),
        ("torsion symmetry and independence", criterion_9),
        ("distinctness", criterion_10),
        ("oracle equivalences", criterion_11),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name} ({:.1}s): {}", i + 1, start.elapsed().as_secs_f64(), o.detail);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 11 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
