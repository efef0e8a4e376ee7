//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Tolerances and budgets are pinned below.

use std::process::Command;
use std::time::{Duration, Instant};

use mindeg::bounds::{self, CurveBoundData, DEFAULT_DIGITS};
use mindeg::cli::random::{self, rng_for, DISCRIMINANTS};
use mindeg::cli::verify::Bundle;
use mindeg::cm_algebra::{self, HermitianForm, Order, OrderElement};
use mindeg::lattice::{self, GramLattice, SubgroupCoset};
use mindeg::linalg;
use mindeg::rosati::{self, HomInstance};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::Rng;

const BUDGET_REALIFY: Duration = Duration::from_secs(5);
const BUDGET_ENDO: Duration = Duration::from_secs(5);
const BUDGET_SVP: Duration = Duration::from_secs(60);
/// Reference `65536·ln 14`, evaluated independently to 100 digits.
const KAPPA_G1_REFERENCE: &str = "172953.2611536655885613521217061752863268919616433105431809274779684682782947255244156778463614920435";
const KAPPA_SIGNIFICANT_DIGITS: u32 = 30;
const MIN_CHAIN_INSTANCES: usize = 300;
const SEED: u64 = 20_241_016;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Lattices produced along the way, for the inequality-chain criterion.
#[derive(Default)]
struct Pool {
    lattices: Vec<GramLattice>,
}

fn quadratic_orders() -> Vec<Order> {
    DISCRIMINANTS.iter().map(|&d| Order::from_discriminant(d).unwrap()).collect()
}

fn c1_realify(pool: &mut Pool, forms: &mut Vec<HermitianForm>) -> Outcome {
    let start = Instant::now();
    let orders = quadratic_orders();
    let mut bad = 0;
    for i in 0..200u64 {
        let mut rng = rng_for(SEED, 100 + i);
        let order = orders[i as usize % orders.len()];
        let r = 1 + (i as usize / orders.len()) % 4;
        let m = random::random_hermitian(&mut rng, order, r);
        let det_s = linalg::determinant(&cm_algebra::realify(&m));
        let det_m = cm_algebra::det_hermitian(&m).unwrap();
        let want = num_traits::pow(order.imag_tau_sq().unwrap(), r) * &det_m * &det_m;
        if det_s != want {
            bad += 1;
        }
        let inst = HomInstance::with_rational_point(m.clone(), r as u64).unwrap();
        pool.lattices.push(inst.gram().clone());
        forms.push(m);
    }
    let t = start.elapsed();
    outcome(bad == 0 && t < BUDGET_REALIFY, format!("200 forms, r in 1..=4, {bad} mismatches, {t:.2?} (budget {BUDGET_REALIFY:?})"))
}

fn c2_endo_degree() -> Outcome {
    let start = Instant::now();
    let mut bad = 0;
    let mut total = 0;
    for (k, order) in quadratic_orders().into_iter().enumerate() {
        for i in 0..100u64 {
            let mut rng = rng_for(SEED, 1000 + 100 * k as u64 + i);
            let r = 1 + (i as usize % 3);
            let m: Vec<Vec<OrderElement>> = (0..r)
                .map(|_| (0..r).map(|_| OrderElement::new(rng.gen_range(-4..=4), rng.gen_range(-4..=4))).collect())
                .collect();
            let deg = rosati::endo_degree(order, &m).unwrap();
            let det = linalg::determinant(&rosati::multiplication_matrix(order, &m)).abs();
            total += 1;
            if deg != det {
                bad += 1;
            }
        }
    }
    let t = start.elapsed();
    outcome(bad == 0 && t < BUDGET_ENDO, format!("{total} matrices, {bad} mismatches, {t:.2?} (budget {BUDGET_ENDO:?})"))
}

fn c3_svp_oracle(pool: &mut Pool) -> Outcome {
    let start = Instant::now();
    let mut agree = 0;
    for i in 0..100u64 {
        let mut rng = rng_for(SEED, 2000 + i);
        let n = 1 + (i as usize % 6);
        let g = random::random_gram(&mut rng, n, 50);
        let (_, q) = lattice::shortest_vector(&g);
        // the box is derived from the Gram matrix alone, not from `q`
        let min_diag = (0..n).map(|k| g.gram()[k][k].clone()).min().unwrap();
        let b = i64::try_from(lattice::sufficient_box(&g, &min_diag)).unwrap();
        let (_, bq) = lattice::brute_force_minimum(&g, b).unwrap();
        if bq == q {
            agree += 1;
        }
        pool.lattices.push(g);
    }
    let t = start.elapsed();
    outcome(agree == 100 && t < BUDGET_SVP, format!("{agree}/100 agree, n in 1..=6, |entries| <= 50, {t:.2?} (budget {BUDGET_SVP:?})"))
}

fn c4_covolume(pool: &mut Pool, forms: &[HermitianForm]) -> Outcome {
    let one = BigInt::one();
    let mut bad = 0;
    let mut total = 0;
    let mut check = |m: &HermitianForm| {
        let r = m.rank();
        let det = cm_algebra::det_hermitian(m).unwrap().to_integer();
        let inst = HomInstance::with_rational_point(m.clone(), r as u64).unwrap();
        let formula = bounds::covolume_formula(m.order(), &det, &one, r as u32).unwrap();
        let gram = BigRational::from_integer(lattice::covolume_sq(inst.gram()));
        total += 1;
        if formula != gram {
            bad += 1;
        }
        inst.gram().clone()
    };
    for m in forms {
        check(m);
    }
    for i in 0..60u64 {
        let mut rng = rng_for(SEED, 3000 + i);
        let r = 1 + (i as usize % 4);
        let m = random::random_hermitian(&mut rng, Order::RationalIntegers, r);
        pool.lattices.push(check(&m));
    }
    outcome(bad == 0, format!("{total} instances ({} quadratic, 60 over Z), {bad} mismatches", forms.len()))
}

fn c5_planted(pool: &mut Pool) -> Outcome {
    let required = [1i64, 2, 3, 5, 12];
    let mut orders = quadratic_orders();
    orders.push(Order::RationalIntegers);
    let mut bad = Vec::new();
    for i in 0..50u64 {
        let mut rng = rng_for(SEED, 4000 + i);
        let d = if (i as usize) < required.len() { required[i as usize] } else { rng.gen_range(1..=15) };
        let order = orders[i as usize % orders.len()];
        let r = 1 + (i as usize % 3);
        let m = random::planted_hermitian(&mut rng, order, r, d);
        let inst = HomInstance::with_rational_point(m, r as u64).unwrap();
        let res = rosati::minimal_degree(&inst).unwrap();
        let witness_ok = res
            .witness
            .as_ref()
            .is_some_and(|w| rosati::degree_of_hom(&inst, w).unwrap() == BigInt::from(d));
        if res.exact() != Some(&BigInt::from(d)) || !witness_ok {
            bad.push(i);
        }
        pool.lattices.push(inst.gram().clone());
    }
    outcome(bad.is_empty(), format!("50 planted instances incl. d in {required:?}, failures {bad:?}"))
}

/// A Rosati lattice of rank `n ≤ 4` with a coset for period `p`.
fn coset_instance(i: u64, p: i64, y_point: bool) -> HomInstance {
    let mut rng = rng_for(SEED, 5000 + i + if y_point { 0 } else { 500 });
    let (order, r) = match i % 3 {
        0 => (Order::RationalIntegers, 1 + (i as usize / 3) % 4),
        _ => (random::random_quadratic_order(&mut rng), 1 + (i as usize / 3) % 2),
    };
    let m = random::random_hermitian(&mut rng, order, r);
    let n = r * order.rank_z();
    let spec = random::random_coset(&mut rng, n, p, y_point);
    let h = spec.h_basis.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let c = SubgroupCoset::new(h, spec.offset.iter().map(|&x| BigInt::from(x)).collect()).unwrap();
    HomInstance::new(m, BigInt::from(p), false, y_point, Some(c), r as u64).unwrap()
}

fn coset_agrees(inst: &HomInstance) -> Option<(BigInt, BigInt)> {
    let g = inst.gram();
    let (_, q) = lattice::coset_minimum(g, inst.coset().unwrap()).ok()?;
    let b = i64::try_from(lattice::sufficient_box(g, &q)).ok()?;
    let (_, bq) = lattice::brute_force_coset_minimum(g, inst.coset().unwrap(), b).ok()??;
    (bq == q).then(|| (q, lattice::shortest_vector(g).1))
}

fn c6_cosets(pool: &mut Pool) -> Outcome {
    let half = |q: &BigInt| BigRational::new(q.clone(), BigInt::from(2));
    let mut bad = Vec::new();
    for i in 0..50u64 {
        let p = 2 + (i % 2) as i64;
        let inst = coset_instance(i, p, true);
        let ok = coset_agrees(&inst).is_some_and(|(q, l)| {
            let mu = rosati::minimal_degree(&inst).unwrap().lower();
            let p_sq = BigRational::from_integer(BigInt::from(p * p));
            mu == half(&q) && half(&l) <= mu && mu <= half(&l) * p_sq
        });
        if !ok {
            bad.push(i);
        }
        pool.lattices.push(inst.gram().clone());
    }
    // cosets not containing 0 (no rational point on Y): oracle agreement and
    // the covering-radius bound ½λ² ≤ μ ≤ ½p²(n/4)Λ²
    let mut bad_np = Vec::new();
    for i in 0..50u64 {
        let p = 2 + (i % 2) as i64;
        let inst = coset_instance(i, p, false);
        let g = inst.gram();
        let ok = coset_agrees(&inst).is_some_and(|(q, l)| {
            let r_sq = BigRational::new(BigInt::from(g.dim()), BigInt::from(4))
                * BigRational::from_integer(lattice::successive_minimum_n(g));
            let mu = half(&q);
            half(&l) <= mu && mu <= half(&BigInt::one()) * BigRational::from_integer(BigInt::from(p * p)) * r_sq
        });
        if !ok {
            bad_np.push(i);
        }
        pool.lattices.push(g.clone());
    }
    outcome(
        bad.is_empty() && bad_np.is_empty(),
        format!(
            "50 cosets with Y(K) nonempty, p in {{2,3}}, n <= 4: failures {bad:?}; 50 cosets without 0: failures {bad_np:?}"
        ),
    )
}

fn c7_chain(pool: &Pool) -> Outcome {
    let mut bad = 0;
    for g in &pool.lattices {
        let n = g.dim() as u32;
        let vol = lattice::covolume_sq(g);
        let nn = BigInt::from(n).pow(n);
        let (_, l) = lattice::shortest_vector(g);
        let big_l = lattice::successive_minimum_n(g);
        let first = l.pow(n) <= &nn * &vol;
        let second = l.pow(n - 1) * &big_l <= &nn * &vol;
        if !(first && second) {
            bad += 1;
        }
    }
    let total = pool.lattices.len();
    outcome(bad == 0 && total >= MIN_CHAIN_INSTANCES, format!("{total} lattices (need >= {MIN_CHAIN_INSTANCES}), {bad} violations"))
}

fn parse_decimal(s: &str) -> BigRational {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let num: BigInt = format!("{int}{frac}").parse().unwrap();
    BigRational::new(num, BigInt::from(10).pow(frac.len() as u32))
}

fn c8_certify() -> Outcome {
    let bundles: Vec<Bundle> = random::random_bundles(SEED, 120);
    let mut certified = 0;
    let mut failed = Vec::new();
    for b in &bundles {
        let data = b.curve.as_ref().unwrap();
        match bounds::certify(&b.inst, data, DEFAULT_DIGITS) {
            Ok(rep) if rep.all_pass() => certified += 1,
            _ => failed.push(b.label.clone()),
        }
    }
    let one = BigRational::one();
    let k = bounds::kappa_log(1, 1, &one, DEFAULT_DIGITS);
    let reference = parse_decimal(KAPPA_G1_REFERENCE);
    let tol = &reference / BigRational::from_integer(BigInt::from(10).pow(KAPPA_SIGNIFICANT_DIGITS));
    let encloses = k.contains(&reference);
    let close = (k.midpoint() - &reference).abs() < tol && k.width() < tol;
    // certification also on a hand-built instance
    let m = HermitianForm::from_ints(Order::RationalIntegers, &[&[(1, 0)]]).unwrap();
    let inst = HomInstance::with_rational_point(m, 1).unwrap();
    let data = CurveBoundData {
        genus_x: 1,
        degree_k: 1,
        faltings_height: one,
        period_p: BigInt::one(),
        chi_rho: Some(BigInt::one()),
        c_omega: BigInt::one(),
        r: 1,
        order: Order::RationalIntegers,
    };
    let base = bounds::certify(&inst, &data, DEFAULT_DIGITS).is_ok_and(|r| r.all_pass());
    outcome(
        failed.is_empty() && encloses && close && base,
        format!(
            "{certified}/{} certified; ln kappa(1,1,1) = {} encloses reference: {encloses}, within {KAPPA_SIGNIFICANT_DIGITS} significant digits: {close}",
            bundles.len(),
            k.to_decimal(35).lo
        ),
    )
}

fn c9_discriminant() -> Outcome {
    let degrees = [1u64, 2, 3, 7];
    let heights = ["-3/2", "0", "1/2", "1", "19/7"];
    let mut bad = 0;
    let mut clamp = 0;
    for &d in &degrees {
        for h in heights {
            let hq: BigRational = h.parse().unwrap();
            let effective = if hq < BigRational::one() {
                clamp += 1;
                BigRational::one()
            } else {
                hq.clone()
            };
            let want = BigRational::from_integer(BigInt::from(500 * d * d)) * &effective * &effective;
            if bounds::discriminant_bound(d, &hq) != want {
                bad += 1;
            }
        }
    }
    let points = degrees.len() * heights.len();
    outcome(bad == 0 && points == 20 && clamp > 0, format!("{points} grid points ({clamp} with h < 1, d = 1 included), {bad} mismatches"))
}

fn c10_determinism() -> Outcome {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_mindeg"))
            .args(["verify", "--random", "42", "100"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .expect("binary runs")
    };
    let a = run("4");
    let b = run("4");
    let c = run("1");
    let ok_status = [&a, &b, &c].iter().all(|o| o.status.success());
    let same = a.stdout == b.stdout && a.stdout == c.stdout && !a.stdout.is_empty();
    outcome(ok_status && same, format!("3 runs (4, 4, 1 threads): exit ok {ok_status}, byte-identical {same}"))
}

fn main() {
    let mut pool = Pool::default();
    let mut forms = Vec::new();
    let results = vec![
        ("1 realified determinant identity", c1_realify(&mut pool, &mut forms)),
        ("2 endomorphism degree", c2_endo_degree()),
        ("3 SVP oracle equivalence", c3_svp_oracle(&mut pool)),
        ("4 covolume formula", c4_covolume(&mut pool, &forms)),
        ("5 planted exact degrees", c5_planted(&mut pool)),
        ("6 coset minima", c6_cosets(&mut pool)),
        ("7 successive-minima chain", c7_chain(&pool)),
        ("8 certification and kappa", c8_certify()),
        ("9 discriminant bound", c9_discriminant()),
        ("10 determinism", c10_determinism()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {}/{} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
