//! The property battery behind `mindeg verify`: every property is checked
//! against an exact oracle, and results are collected in instance order so
//! the summary does not depend on the thread count.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::instance::{InstanceFile, LoadedInstance};
use super::{EXIT_OK, EXIT_PROPERTY};
use crate::bounds::{self, CurveBoundData};
use crate::cm_algebra;
use crate::error::Error;
use crate::lattice::{self, BRUTE_FORCE_MAX_DIM};
use crate::linalg;
use crate::rosati::{self, CaseTag, HomInstance};

pub const PROPERTIES: [&str; 9] = [
    "realify_determinant",
    "endomorphism_degree",
    "covolume_formula",
    "svp_oracle",
    "coset_oracle",
    "inequality_chain",
    "degree_bounds",
    "witness",
    "certify",
];

/// Brute force is skipped above this many box points.
const BRUTE_MAX_POINTS: u64 = 50_000_000;

#[derive(Debug, Clone)]
pub struct Bundle {
    pub label: String,
    pub inst: HomInstance,
    pub curve: Option<CurveBoundData>,
}

impl Bundle {
    pub fn from_file(label: String, file: &InstanceFile) -> Result<Self, Error> {
        let (inst, curve, _) = file.to_domain()?;
        Ok(Bundle { label, inst, curve })
    }
}

impl LoadedInstance {
    pub fn inst_bundle(&self) -> Bundle {
        Bundle { label: format!("file:{}", self.input_sha256), inst: self.inst.clone(), curve: self.curve.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: String,
    pub property: String,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub instances: usize,
    pub counts: BTreeMap<String, Counts>,
    pub failures: Vec<Failure>,
}

impl Summary {
    pub fn total_failed(&self) -> usize {
        self.counts.values().map(|c| c.failed).sum()
    }

    pub fn exit_code(&self) -> i32 {
        if self.total_failed() == 0 {
            EXIT_OK
        } else {
            EXIT_PROPERTY
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "instances": self.instances,
            "properties": serde_json::to_value(&self.counts).expect("counts serialize"),
            "failures": serde_json::to_value(&self.failures).expect("failures serialize"),
            "all_pass": self.total_failed() == 0,
        })
    }
}

type Check = (Outcome, String);

fn pass() -> Check {
    (Outcome::Pass, String::new())
}

fn skip() -> Check {
    (Outcome::Skip, String::new())
}

fn expect(ok: bool, detail: impl FnOnce() -> String) -> Check {
    if ok {
        pass()
    } else {
        (Outcome::Fail, detail())
    }
}

fn box_points(n: usize, b: &BigInt) -> Option<u64> {
    let side = u64::try_from(&(BigInt::from(2) * b + 1)).ok()?;
    side.checked_pow(u32::try_from(n).ok()?)
}

/// The brute-force box for `q ≤ q_bound`, when small enough to search.
fn brute_box(g: &lattice::GramLattice, q_bound: &BigInt) -> Option<i64> {
    if g.dim() > BRUTE_FORCE_MAX_DIM {
        return None;
    }
    let b = lattice::sufficient_box(g, q_bound);
    (box_points(g.dim(), &b)? <= BRUTE_MAX_POINTS).then(|| i64::try_from(&b).ok()).flatten()
}

fn realify_determinant(b: &Bundle) -> Check {
    let m = b.inst.hermitian();
    let order = m.order();
    let det_s = linalg::determinant(&cm_algebra::realify(m));
    let det_m = match cm_algebra::det_hermitian(m) {
        Ok(d) => d,
        Err(e) => return (Outcome::Fail, e.to_string()),
    };
    let want = match order.imag_tau_sq() {
        Some(t) => num_traits::pow(t, m.rank()) * &det_m * &det_m,
        None => det_m,
    };
    expect(det_s == want, || format!("det realify = {det_s}, expected {want}"))
}

fn endomorphism_degree(b: &Bundle) -> Check {
    let m = b.inst.hermitian();
    let deg = match rosati::endo_degree(m.order(), m.entries()) {
        Ok(d) => d,
        Err(e) => return (Outcome::Fail, e.to_string()),
    };
    let mat = rosati::multiplication_matrix(m.order(), m.entries());
    let mut det = linalg::determinant(&mat).abs();
    if !m.order().is_quadratic() {
        // over Z the map acts on each factor's rank-two lattice
        det = &det * &det;
    }
    expect(deg == det, || format!("|det M|² = {deg}, |det| of the Z-matrix = {det}"))
}

fn covolume(b: &Bundle) -> Check {
    let Some(data) = &b.curve else { return skip() };
    let Some(cr) = &data.chi_rho else { return skip() };
    let vol = lattice::covolume_sq(b.inst.gram());
    match bounds::covolume_formula(data.order, cr, &data.c_omega, b.inst.rank() as u32) {
        Ok(f) => expect(f == BigRational::from_integer(vol.clone()), || format!("formula {f}, Gram {vol}")),
        Err(e) => (Outcome::Fail, e.to_string()),
    }
}

fn svp_oracle(b: &Bundle) -> Check {
    let g = b.inst.gram();
    let (sv, q) = lattice::shortest_vector(g);
    if g.q(&sv) != q || sv.iter().all(Zero::is_zero) {
        return (Outcome::Fail, "witness does not realise the reported minimum".into());
    }
    let Some(bx) = brute_box(g, &q) else { return skip() };
    match lattice::brute_force_minimum(g, bx) {
        Ok((_, bq)) => expect(bq == q, || format!("enumeration {q}, brute force {bq}")),
        Err(e) => (Outcome::Fail, e.to_string()),
    }
}

fn coset_oracle(b: &Bundle) -> Check {
    let Some(c) = b.inst.coset() else { return skip() };
    let g = b.inst.gram();
    let (u, q) = match lattice::coset_minimum(g, c) {
        Ok(r) => r,
        Err(e) => return (Outcome::Fail, e.to_string()),
    };
    let diff: Vec<BigInt> = u.iter().zip(&c.offset).map(|(a, o)| a - o).collect();
    if g.q(&u) != q || !c.subgroup_contains(&diff) {
        return (Outcome::Fail, "witness is not a coset element realising the minimum".into());
    }
    let Some(bx) = brute_box(g, &q) else { return skip() };
    match lattice::brute_force_coset_minimum(g, c, bx) {
        Ok(Some((_, bq))) => expect(bq == q, || format!("enumeration {q}, brute force {bq}")),
        Ok(None) => (Outcome::Fail, "brute force found no coset element".into()),
        Err(e) => (Outcome::Fail, e.to_string()),
    }
}

fn inequality_chain(b: &Bundle) -> Check {
    let g = b.inst.gram();
    let n = g.dim() as u32;
    let vol = BigRational::from_integer(lattice::covolume_sq(g));
    let (_, lambda_sq) = lattice::shortest_vector(g);
    let big = lattice::successive_minimum_n(g);
    expect(
        bounds::lambda_chain_holds(n, &lambda_sq, &vol) && bounds::minkowski_chain_holds(n, &lambda_sq, &big, &vol),
        || format!("λ² = {lambda_sq}, Λ² = {big}, vol² = {vol}"),
    )
}

fn degree_bounds(b: &Bundle) -> Check {
    let inst = &b.inst;
    let res = match rosati::minimal_degree(inst) {
        Ok(r) => r,
        Err(e) => return (Outcome::Fail, e.to_string()),
    };
    let g = inst.gram();
    let half = |q: &BigInt| BigRational::new(q.clone(), BigInt::from(2));
    let p_sq = BigRational::from_integer(inst.period_p() * inst.period_p());
    let lower = half(&res.lambda_sq);
    let Some(upper) = res.upper() else { return (Outcome::Fail, "no upper bound".into()) };
    let mut ok = lower <= res.lower() && res.lower() <= upper;
    // μ ≤ ½p²λ² when Y(K) ≠ ∅, otherwise μ ≤ ½p²R² ≤ ½p²(n/4)Λ²
    if inst.y_has_rational_point() {
        ok &= upper <= &lower * &p_sq;
    } else {
        let n = BigRational::new(BigInt::from(g.dim()), BigInt::from(4));
        let r_sq = n * BigRational::from_integer(lattice::successive_minimum_n(g));
        ok &= upper <= half(&BigInt::from(1)) * &p_sq * r_sq;
    }
    expect(ok, || format!("λ²/2 = {lower}, μ ∈ [{}, {upper}], p² = {p_sq}", res.lower()))
}

fn witness(b: &Bundle) -> Check {
    let inst = &b.inst;
    let res = match rosati::minimal_degree(inst) {
        Ok(r) => r,
        Err(e) => return (Outcome::Fail, e.to_string()),
    };
    let Some(w) = &res.witness else { return skip() };
    let deg = match rosati::degree_of_hom(inst, w) {
        Ok(d) => d,
        Err(e) => return (Outcome::Fail, e.to_string()),
    };
    let ok = match res.case_tag {
        CaseTag::ExactRationalPointX | CaseTag::ExactCosetGiven => res.exact() == Some(&deg),
        CaseTag::UpperYRational => res.upper() == Some(BigRational::from_integer(deg.clone())),
        CaseTag::UpperYNoPoint | CaseTag::LowerOnly => true,
    };
    let in_coset = inst.coset().is_none_or(|c| {
        let diff: Vec<BigInt> = w.iter().zip(&c.offset).map(|(a, o)| a - o).collect();
        c.subgroup_contains(&diff)
    });
    expect(ok && deg.is_positive() && in_coset, || format!("witness degree {deg} for {:?}", res.case_tag))
}

fn certify(b: &Bundle, digits: u32) -> Check {
    let Some(data) = &b.curve else { return skip() };
    match bounds::certify(&b.inst, data, digits) {
        Ok(rep) => expect(rep.all_pass(), || {
            let failed: Vec<&str> = rep.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
            format!("failed checks: {}", failed.join(", "))
        }),
        Err(e) => (Outcome::Fail, e.to_string()),
    }
}

fn run_one(b: &Bundle, digits: u32) -> Vec<(&'static str, Check)> {
    vec![
        ("realify_determinant", realify_determinant(b)),
        ("endomorphism_degree", endomorphism_degree(b)),
        ("covolume_formula", covolume(b)),
        ("svp_oracle", svp_oracle(b)),
        ("coset_oracle", coset_oracle(b)),
        ("inequality_chain", inequality_chain(b)),
        ("degree_bounds", degree_bounds(b)),
        ("witness", witness(b)),
        ("certify", certify(b, digits)),
    ]
}

/// Checks every property on every bundle.
pub fn run_battery(bundles: &[Bundle], digits: u32) -> Summary {
    let results: Vec<Vec<(&'static str, Check)>> = bundles.par_iter().map(|b| run_one(b, digits)).collect();
    let mut summary = Summary { instances: bundles.len(), ..Summary::default() };
    for p in PROPERTIES {
        summary.counts.insert(p.to_string(), Counts::default());
    }
    for (b, checks) in bundles.iter().zip(results) {
        for (name, (outcome, detail)) in checks {
            let c = summary.counts.get_mut(name).expect("registered property");
            match outcome {
                Outcome::Pass => c.passed += 1,
                Outcome::Skip => c.skipped += 1,
                Outcome::Fail => {
                    c.failed += 1;
                    summary.failures.push(Failure {
                        instance: b.label.clone(),
                        property: name.to_string(),
                        detail,
                    });
                }
            }
        }
    }
    summary
}
