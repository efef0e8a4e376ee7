//! Seeded random instances. Instance `i` of a run with seed `s` draws from
//! its own ChaCha stream, so generation order never affects the result.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::instance::{CosetSpec, CurveDataSpec, EntrySpec, InstanceFile, OrderKind, OrderSpec, SCHEMA_VERSION};
use super::verify::Bundle;
use crate::cm_algebra::{self, HermitianForm, Order, OrderElement};
use crate::lattice::{GramLattice, SubgroupCoset};
use crate::linalg::{self, IntMatrix};
use crate::rosati;

/// Discriminants of the quadratic orders used for random instances.
pub const DISCRIMINANTS: [i64; 6] = [-3, -4, -7, -8, -11, -20];

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_quadratic_order(rng: &mut impl Rng) -> Order {
    let d = *DISCRIMINANTS.choose(rng).expect("nonempty");
    Order::from_discriminant(d).expect("valid discriminant")
}

fn random_elem(rng: &mut impl Rng, order: Order, bound: i64) -> OrderElement {
    let a = rng.gen_range(-bound..=bound);
    let b = if order.is_quadratic() { rng.gen_range(-bound..=bound) } else { 0 };
    OrderElement::new(a, b)
}

type OMatrix = Vec<Vec<OrderElement>>;

fn o_identity(r: usize) -> OMatrix {
    (0..r)
        .map(|i| (0..r).map(|j| if i == j { OrderElement::one() } else { OrderElement::zero() }).collect())
        .collect()
}

fn o_mul(order: Order, a: &OMatrix, b: &OMatrix) -> OMatrix {
    let (n, m, k) = (a.len(), b[0].len(), b.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(OrderElement::zero(), |acc, t| order.add(&acc, &order.mul(&a[i][t], &b[t][j]))))
                .collect()
        })
        .collect()
}

fn o_adjoint(order: Order, a: &OMatrix) -> OMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| order.conj(&a[j][i])).collect()).collect()
}

/// A product of elementary matrices `I + c·E_ij` over `O`.
fn random_unimodular_o(rng: &mut impl Rng, order: Order, r: usize, steps: usize) -> OMatrix {
    let mut u = o_identity(r);
    if r < 2 {
        return u;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..r);
        let mut j = rng.gen_range(0..r - 1);
        if j >= i {
            j += 1;
        }
        let c = random_elem(rng, order, 1);
        for row in u.iter_mut() {
            let add = order.mul(&row[i], &c);
            row[j] = order.add(&row[j], &add);
        }
    }
    u
}

/// `M = L*L + I` with small random entries in `L`; always positive definite.
pub fn random_hermitian(rng: &mut impl Rng, order: Order, r: usize) -> HermitianForm {
    let l: OMatrix = (0..r).map(|_| (0..r).map(|_| random_elem(rng, order, 2)).collect()).collect();
    let mut m = o_mul(order, &o_adjoint(order, &l), &l);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = order.add(&row[i], &OrderElement::one());
    }
    HermitianForm::new(order, m).expect("L*L + I is Hermitian")
}

/// `U* diag(d, m_2, …, m_r) U` with `m_i ≥ d` and `U` unimodular over `O`;
/// its Rosati lattice has `λ² = 2d`.
pub fn planted_hermitian(rng: &mut impl Rng, order: Order, r: usize, d: i64) -> HermitianForm {
    let mut diag = o_identity(r);
    diag[0][0] = OrderElement::new(d, 0);
    for (i, row) in diag.iter_mut().enumerate().skip(1) {
        row[i] = OrderElement::new(d + rng.gen_range(0..=3 * d), 0);
    }
    let u = random_unimodular_o(rng, order, r, 2 * r);
    let m = o_mul(order, &o_mul(order, &o_adjoint(order, &u), &diag), &u);
    HermitianForm::new(order, m).expect("congruent to a diagonal form")
}

fn random_unimodular_z(rng: &mut impl Rng, n: usize, steps: usize) -> IntMatrix {
    let mut u = linalg::identity_int(n);
    if n < 2 {
        return u;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(rng.gen_range(-1i64..=1));
        for row in u.iter_mut() {
            let add = &row[i] * &c;
            row[j] += add;
        }
    }
    u
}

/// A random positive definite Gram matrix `L Lᵀ + D` with entries of
/// absolute value at most `max_entry`.
pub fn random_gram(rng: &mut impl Rng, n: usize, max_entry: i64) -> GramLattice {
    loop {
        let span = (max_entry / (2 * n as i64 + 2)).max(1);
        let l: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-span..=span)).collect()).collect();
        let g: IntMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let dot: i64 = (0..n).map(|k| l[i][k] * l[j][k]).sum();
                        BigInt::from(dot + if i == j { rng.gen_range(1..=span.max(2)) } else { 0 })
                    })
                    .collect()
            })
            .collect();
        let fits = g.iter().flatten().all(|x| x.to_i64().is_some_and(|v| v.abs() <= max_entry));
        if fits {
            if let Ok(lat) = GramLattice::new(g) {
                return lat;
            }
        }
    }
}

/// `Uᵀ diag(d, m_2, …) U` with `m_i ≥ d`: a lattice with `λ² = d`.
pub fn planted_gram(rng: &mut impl Rng, n: usize, d: i64) -> GramLattice {
    let mut diag = vec![vec![BigInt::from(0); n]; n];
    diag[0][0] = BigInt::from(d);
    for (i, row) in diag.iter_mut().enumerate().skip(1) {
        row[i] = BigInt::from(d + rng.gen_range(0..=2 * d));
    }
    let u = random_unimodular_z(rng, n, 2 * n);
    let g = linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(&u), &diag), &u);
    GramLattice::new(g).expect("congruent to a positive diagonal form")
}

/// `H = V·diag(d_i)` with every `d_i | p` and `V` unimodular, so `pZⁿ ⊆ H`.
/// At least one `d_i` equals `p` when `proper` is set.
pub fn random_subgroup(rng: &mut impl Rng, n: usize, p: i64, proper: bool) -> IntMatrix {
    let divisors: Vec<i64> = (1..=p).filter(|d| p % d == 0).collect();
    let mut d: Vec<i64> = (0..n).map(|_| *divisors.choose(rng).expect("nonempty")).collect();
    if proper {
        d[rng.gen_range(0..n)] = p;
    }
    let v = random_unimodular_z(rng, n, 2 * n);
    (0..n).map(|i| (0..n).map(|j| &v[i][j] * d[j]).collect()).collect()
}

fn to_i64_matrix(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.iter().map(|x| x.to_i64().expect("small")).collect()).collect()
}

/// A coset `offset + H` for a lattice of rank `n`: `offset ∈ H` when
/// `y_point`, `offset ∉ H` otherwise.
pub fn random_coset(rng: &mut impl Rng, n: usize, p: i64, y_point: bool) -> CosetSpec {
    let h = random_subgroup(rng, n, p, !y_point);
    let offset: Vec<i64> = if y_point {
        let y: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-1i64..=1))).collect();
        linalg::mat_vec(&h, &y).iter().map(|x| x.to_i64().expect("small")).collect()
    } else {
        let basis = h.clone();
        loop {
            let o: Vec<i64> = (0..n).map(|_| rng.gen_range(-p..=p)).collect();
            let c = SubgroupCoset::new(basis.clone(), o.iter().map(|&x| BigInt::from(x)).collect())
                .expect("nonsingular");
            if !c.offset_in_subgroup() {
                break o;
            }
        }
    };
    CosetSpec { h_basis: to_i64_matrix(&h), offset }
}

fn order_spec(order: Order) -> OrderSpec {
    match order {
        Order::RationalIntegers => OrderSpec { kind: OrderKind::RationalIntegers, u: None, v: None },
        Order::Quadratic { u, v } => OrderSpec { kind: OrderKind::Quadratic, u: Some(u), v: Some(v) },
    }
}

fn hermitian_spec(m: &HermitianForm) -> Vec<Vec<EntrySpec>> {
    m.entries()
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| EntrySpec { a: e.a.to_i64().expect("small"), b: e.b.to_i64().expect("small") })
                .collect()
        })
        .collect()
}

/// Which rational-point situation a random instance is drawn in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Situation {
    XPoint,
    YPoint,
    YPointCoset,
    NoPointCoset,
    NoPoint,
}

/// One random instance file, with curve data consistent with its lattice.
pub fn random_instance_file(rng: &mut impl Rng) -> InstanceFile {
    let order = if rng.gen_bool(0.25) { Order::RationalIntegers } else { random_quadratic_order(rng) };
    let max_r = if order.is_quadratic() { 3 } else { 4 };
    let r = rng.gen_range(1..=max_r);
    let herm = if rng.gen_bool(0.25) {
        let d = rng.gen_range(1..=6);
        planted_hermitian(rng, order, r, d)
    } else {
        random_hermitian(rng, order, r)
    };
    let n = r * order.rank_z();
    let situation = *[
        Situation::XPoint,
        Situation::YPoint,
        Situation::YPointCoset,
        Situation::NoPointCoset,
        Situation::NoPoint,
    ]
    .choose(rng)
    .expect("nonempty");
    let (p, x_pt, y_pt, coset) = match situation {
        Situation::XPoint => (1, true, true, None),
        Situation::YPoint => (rng.gen_range(1..=3), false, true, None),
        Situation::YPointCoset => {
            let p = rng.gen_range(2..=3);
            (p, false, true, Some(random_coset(rng, n, p, true)))
        }
        Situation::NoPointCoset => {
            let p = rng.gen_range(2..=3);
            (p, false, false, Some(random_coset(rng, n, p, false)))
        }
        Situation::NoPoint => (rng.gen_range(2..=3), false, false, None),
    };

    let det = cm_algebra::det_hermitian(&herm).expect("positive definite").to_integer();
    let c_bound = rosati::class_index_bound(order, r as u32);
    let c_omega: u64 = if c_bound > BigInt::one() && rng.gen_bool(0.3) { 2 } else { 1 };
    let chi_rho = &det * c_omega;
    let curve_data = CurveDataSpec {
        genus_x: (r + rng.gen_range(0..=2)) as u64,
        degree_k: rng.gen_range(1..=3),
        faltings_height: format!("{}/{}", rng.gen_range(-20i64..=50), rng.gen_range(1i64..=10)),
        chi_rho: Some(chi_rho.to_u64().expect("small determinant")),
        c_omega: Some(c_omega),
        genus_y: None,
    };
    InstanceFile {
        schema_version: SCHEMA_VERSION.to_string(),
        order: order_spec(order),
        rank_o: r,
        hermitian: hermitian_spec(&herm),
        period_p: p as u64,
        x_rational_point: x_pt,
        y_rational_point: y_pt,
        coset,
        curve_data: Some(curve_data),
    }
}

/// Instances `0..count` of the run with seed `seed`.
pub fn random_bundles(seed: u64, count: usize) -> Vec<Bundle> {
    (0..count)
        .map(|i| {
            let file = random_instance_file(&mut rng_for(seed, i as u64));
            Bundle::from_file(format!("random:{seed}:{i}"), &file).expect("generated instances are valid")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_reproducible() {
        let a = random_instance_file(&mut rng_for(7, 3));
        let b = random_instance_file(&mut rng_for(7, 3));
        assert_eq!(a, b);
        assert_ne!(a, random_instance_file(&mut rng_for(7, 4)));
    }

    #[test]
    fn generated_instances_load() {
        for i in 0..60 {
            let f = random_instance_file(&mut rng_for(1, i));
            let (inst, curve, _) = f.to_domain().unwrap();
            assert!(curve.is_some());
            assert!(inst.dim() <= 8);
        }
    }

    #[test]
    fn planted_forms_have_planted_minimum() {
        let mut rng = rng_for(5, 0);
        for d in [1, 2, 3, 5, 12] {
            let order = random_quadratic_order(&mut rng);
            let m = planted_hermitian(&mut rng, order, 2, d);
            let inst = rosati::HomInstance::with_rational_point(m, 2).unwrap();
            assert_eq!(rosati::minimal_degree(&inst).unwrap().exact(), Some(&BigInt::from(d)));
            let g = planted_gram(&mut rng, 4, d);
            assert_eq!(crate::lattice::shortest_vector(&g).1, BigInt::from(d));
        }
    }

    #[test]
    fn random_grams_respect_entry_bound() {
        let mut rng = rng_for(9, 0);
        for n in 1..=6 {
            let g = random_gram(&mut rng, n, 50);
            assert!(g.gram().iter().flatten().all(|x| x.to_i64().unwrap().abs() <= 50));
        }
    }
}
