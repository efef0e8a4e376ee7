//! Imaginary quadratic orders, Hermitian forms over them, and the
//! realification of a Hermitian form to a rational quadratic form on `Z^n`.
//!
//! An order is either `Z` or `Z + Zτ` where `τ² + uτ + v = 0` and `τ` is the
//! root with positive imaginary part. Elements are stored in the basis
//! `{1, τ}`; conjugation uses `τ + τ̄ = -u` and `ττ̄ = v`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, ExactRing, RatMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    RationalIntegers,
    /// `Z[τ]` with `τ² + uτ + v = 0`.
    Quadratic { u: i64, v: i64 },
}

impl Order {
    pub fn quadratic(u: i64, v: i64) -> Result<Self> {
        let d = i128::from(u) * i128::from(u) - 4 * i128::from(v);
        if d >= 0 {
            return Err(Error::InvalidOrder(format!(
                "x^2 + {u}x + {v} has discriminant {d} >= 0, so the order is not imaginary quadratic"
            )));
        }
        Ok(Order::Quadratic { u, v })
    }

    /// The order `Z[τ]` whose discriminant `u² - 4v` equals `d`, using
    /// `u = 0` when `d ≡ 0 (mod 4)` and `u = -1` when `d ≡ 1 (mod 4)`.
    pub fn from_discriminant(d: i64) -> Result<Self> {
        if d >= 0 || d.rem_euclid(4) > 1 {
            return Err(Error::InvalidOrder(format!("{d} is not a negative discriminant")));
        }
        if d.rem_euclid(4) == 0 {
            Order::quadratic(0, -d / 4)
        } else {
            Order::quadratic(-1, (1 - d) / 4)
        }
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self, Order::Quadratic { .. })
    }

    /// Rank of the order as a `Z`-module.
    pub fn rank_z(&self) -> usize {
        match self {
            Order::RationalIntegers => 1,
            Order::Quadratic { .. } => 2,
        }
    }

    /// `u² - 4v`, or `None` for `Z`.
    pub fn discriminant(&self) -> Option<BigInt> {
        match *self {
            Order::RationalIntegers => None,
            Order::Quadratic { u, v } => Some(BigInt::from(u) * u - BigInt::from(v) * 4),
        }
    }

    /// `(Im τ)² = (4v - u²)/4`; `None` for `Z`.
    pub fn imag_tau_sq(&self) -> Option<BigRational> {
        self.discriminant()
            .map(|d| BigRational::new(-d, BigInt::from(4)))
    }

    pub fn elem(&self, a: i64, b: i64) -> OrderElement {
        OrderElement::new(a, b)
    }

    pub fn contains(&self, c: &OrderElement) -> bool {
        self.is_quadratic() || c.b.is_zero()
    }

    pub fn conj(&self, c: &OrderElement) -> OrderElement {
        match *self {
            Order::RationalIntegers => c.clone(),
            Order::Quadratic { u, .. } => OrderElement { a: &c.a - &c.b * u, b: -&c.b },
        }
    }

    pub fn add(&self, x: &OrderElement, y: &OrderElement) -> OrderElement {
        OrderElement { a: &x.a + &y.a, b: &x.b + &y.b }
    }

    pub fn sub(&self, x: &OrderElement, y: &OrderElement) -> OrderElement {
        OrderElement { a: &x.a - &y.a, b: &x.b - &y.b }
    }

    pub fn mul(&self, x: &OrderElement, y: &OrderElement) -> OrderElement {
        match *self {
            Order::RationalIntegers => OrderElement { a: &x.a * &y.a, b: BigInt::zero() },
            Order::Quadratic { u, v } => {
                // τ² = -uτ - v
                let bb = &x.b * &y.b;
                OrderElement {
                    a: &x.a * &y.a - &bb * v,
                    b: &x.a * &y.b + &x.b * &y.a - bb * u,
                }
            }
        }
    }

    /// `c · conj(c) = a² - abu + b²v`.
    pub fn norm(&self, c: &OrderElement) -> BigInt {
        match *self {
            Order::RationalIntegers => &c.a * &c.a,
            Order::Quadratic { u, v } => &c.a * &c.a - &c.a * &c.b * u + &c.b * &c.b * v,
        }
    }

    pub fn to_field(&self, c: &OrderElement) -> FieldElem {
        FieldElem::new(
            *self,
            BigRational::from_integer(c.a.clone()),
            BigRational::from_integer(c.b.clone()),
        )
    }

    /// `τ` as an element of `O ⊗ Q`; for `Z` this is zero.
    pub fn tau(&self) -> FieldElem {
        match self {
            Order::RationalIntegers => FieldElem::zero(*self),
            Order::Quadratic { .. } => FieldElem::new(*self, BigRational::zero(), BigRational::one()),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::RationalIntegers => write!(f, "Z"),
            Order::Quadratic { u, v } => write!(f, "Z[t], t^2 + ({u})t + ({v}) = 0"),
        }
    }
}

/// `a + bτ` in an order; `b = 0` for elements of `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderElement {
    pub a: BigInt,
    pub b: BigInt,
}

impl OrderElement {
    pub fn new(a: i64, b: i64) -> Self {
        OrderElement { a: BigInt::from(a), b: BigInt::from(b) }
    }

    pub fn from_big(a: BigInt, b: BigInt) -> Self {
        OrderElement { a, b }
    }

    pub fn zero() -> Self {
        OrderElement::new(0, 0)
    }

    pub fn one() -> Self {
        OrderElement::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Discriminant of the order, or `None` for `Z`.
pub fn order_discriminant(order: &Order) -> Option<BigInt> {
    order.discriminant()
}

pub fn elem_norm(order: &Order, c: &OrderElement) -> BigInt {
    order.norm(c)
}

/// An element `a + bτ` of `O ⊗ Q` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElem {
    order: Order,
    pub a: BigRational,
    pub b: BigRational,
}

impl FieldElem {
    pub fn new(order: Order, a: BigRational, b: BigRational) -> Self {
        let b = if order.is_quadratic() { b } else { BigRational::zero() };
        FieldElem { order, a, b }
    }

    pub fn from_ints(order: Order, a: i64, b: i64) -> Self {
        FieldElem::new(order, BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    pub fn zero(order: Order) -> Self {
        FieldElem::new(order, BigRational::zero(), BigRational::zero())
    }

    pub fn one(order: Order) -> Self {
        FieldElem::new(order, BigRational::one(), BigRational::zero())
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn uv(&self) -> (BigRational, BigRational) {
        match self.order {
            Order::RationalIntegers => (BigRational::zero(), BigRational::zero()),
            Order::Quadratic { u, v } => {
                (BigRational::from_integer(u.into()), BigRational::from_integer(v.into()))
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        FieldElem::new(self.order, &self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        FieldElem::new(self.order, &self.a - &o.a, &self.b - &o.b)
    }

    pub fn neg(&self) -> Self {
        FieldElem::new(self.order, -&self.a, -&self.b)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (u, v) = self.uv();
        let bb = &self.b * &o.b;
        FieldElem::new(
            self.order,
            &self.a * &o.a - &bb * &v,
            &self.a * &o.b + &self.b * &o.a - bb * u,
        )
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        FieldElem::new(self.order, &self.a * k, &self.b * k)
    }

    pub fn conj(&self) -> Self {
        let (u, _) = self.uv();
        FieldElem::new(self.order, &self.a - &self.b * u, -&self.b)
    }

    pub fn norm(&self) -> BigRational {
        let (u, v) = self.uv();
        &self.a * &self.a - &self.a * &self.b * u + &self.b * &self.b * v
    }

    /// Real part, using `Re τ = -u/2`.
    pub fn re(&self) -> BigRational {
        let (u, _) = self.uv();
        &self.a - &self.b * u / BigRational::from_integer(2.into())
    }

    /// Inverse `conj(x) / N(x)`; panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero");
        self.conj().scale(&n.recip())
    }

    /// The rational value when the `τ`-coordinate vanishes.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.b.is_zero().then(|| self.a.clone())
    }
}

impl ExactRing for FieldElem {
    fn zero_like(&self) -> Self {
        FieldElem::zero(self.order)
    }
    fn one_like(&self) -> Self {
        FieldElem::one(self.order)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn div_exact(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

/// An `r × r` Hermitian matrix over an order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianForm {
    order: Order,
    entries: Vec<Vec<OrderElement>>,
}

impl HermitianForm {
    /// Checks shape, membership in the order, and `M[j][i] = conj(M[i][j])`.
    /// Positive definiteness is a separate check.
    pub fn new(order: Order, entries: Vec<Vec<OrderElement>>) -> Result<Self> {
        let r = entries.len();
        if r == 0 {
            return Err(Error::ZeroModule);
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != r {
                return Err(Error::DimensionMismatch { expected: r, got: row.len() });
            }
            for (j, c) in row.iter().enumerate() {
                if !order.contains(c) {
                    return Err(Error::field(
                        format!("hermitian[{i}][{j}]"),
                        "entry has a tau component but the order is Z",
                    ));
                }
                if entries[j][i] != order.conj(c) {
                    return Err(Error::field(
                        format!("hermitian[{j}][{i}]"),
                        format!("matrix is not Hermitian: expected the conjugate of entry [{i}][{j}]"),
                    ));
                }
            }
        }
        Ok(HermitianForm { order, entries })
    }

    pub fn from_ints(order: Order, entries: &[&[(i64, i64)]]) -> Result<Self> {
        let rows = entries
            .iter()
            .map(|row| row.iter().map(|&(a, b)| OrderElement::new(a, b)).collect())
            .collect();
        HermitianForm::new(order, rows)
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<OrderElement>] {
        &self.entries
    }

    /// `k · M` for a positive integer `k`.
    pub fn scaled(&self, k: &BigInt) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|c| OrderElement { a: &c.a * k, b: &c.b * k }).collect())
            .collect();
        HermitianForm { order: self.order, entries }
    }

    /// `x* M x` for `x ∈ O^r`; always a rational integer.
    pub fn evaluate(&self, x: &[OrderElement]) -> Result<BigInt> {
        let r = self.rank();
        if x.len() != r {
            return Err(Error::DimensionMismatch { expected: r, got: x.len() });
        }
        let o = self.order;
        let mut acc = OrderElement::zero();
        for i in 0..r {
            let xi_bar = o.conj(&x[i]);
            for (j, xj) in x.iter().enumerate() {
                let t = o.mul(&o.mul(&xi_bar, &self.entries[i][j]), xj);
                acc = o.add(&acc, &t);
            }
        }
        debug_assert!(acc.b.is_zero());
        Ok(acc.a)
    }

    pub fn is_positive_definite(&self) -> bool {
        linalg::is_positive_definite_rat(&realify(self))
    }

    fn field_matrix(&self) -> Vec<Vec<FieldElem>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|c| self.order.to_field(c)).collect())
            .collect()
    }
}

/// Symmetric rational `S` with `zᵀ S z = x* M x`, where
/// `x_i = z_i + z_{r+i} τ` (the first `r` coordinates are the `Z`-parts, the
/// last `r` the `τ`-parts). For `Z`, `S = M`.
pub fn realify(m: &HermitianForm) -> RatMatrix {
    let r = m.rank();
    let fm = m.field_matrix();
    match m.order {
        Order::RationalIntegers => fm.iter().map(|row| row.iter().map(|c| c.a.clone()).collect()).collect(),
        Order::Quadratic { v, .. } => {
            let tau = m.order.tau();
            let tau_bar = tau.conj();
            let abs_tau_sq = BigRational::from_integer(v.into());
            let mut s = vec![vec![BigRational::zero(); 2 * r]; 2 * r];
            for i in 0..r {
                for j in 0..r {
                    let c = &fm[i][j];
                    s[i][j] = c.re();
                    s[i][r + j] = tau.mul(c).re();
                    s[r + i][j] = tau_bar.mul(c).re();
                    s[r + i][r + j] = &abs_tau_sq * c.re();
                }
            }
            s
        }
    }
}

/// Exact determinant of a Hermitian form, computed by fraction-free
/// elimination in `O ⊗ Q`.
pub fn det_hermitian(m: &HermitianForm) -> Result<BigRational> {
    if !m.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let d = linalg::determinant(&m.field_matrix());
    // Hermitian determinants are real.
    d.as_rational().ok_or(Error::NotPositiveDefinite)
}

/// Determinant of a square matrix over `O ⊗ Q`.
pub fn det_field(m: &[Vec<FieldElem>]) -> FieldElem {
    linalg::determinant(m)
}

/// Builds `N = (A+B, sA+tB; tA+sB, st(A+B))` and compares `det N` with
/// `(-1)^r (t-s)^{2r} det A det B`, both evaluated exactly in `O ⊗ Q`.
pub fn block_det_identity_check(
    order: Order,
    a: &[Vec<FieldElem>],
    b: &[Vec<FieldElem>],
    s: &FieldElem,
    t: &FieldElem,
) -> Result<bool> {
    let r = a.len();
    if r == 0 {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    for row in a.iter().chain(b.iter()) {
        if row.len() != r {
            return Err(Error::DimensionMismatch { expected: r, got: row.len() });
        }
    }
    if b.len() != r {
        return Err(Error::DimensionMismatch { expected: r, got: b.len() });
    }
    let st = s.mul(t);
    let mut n = vec![vec![FieldElem::zero(order); 2 * r]; 2 * r];
    for i in 0..r {
        for j in 0..r {
            let sum = a[i][j].add(&b[i][j]);
            n[i][j] = sum.clone();
            n[i][r + j] = s.mul(&a[i][j]).add(&t.mul(&b[i][j]));
            n[r + i][j] = t.mul(&a[i][j]).add(&s.mul(&b[i][j]));
            n[r + i][r + j] = st.mul(&sum);
        }
    }
    let lhs = det_field(&n);
    let diff = t.sub(s);
    let mut rhs = det_field(a).mul(&det_field(b));
    for _ in 0..2 * r {
        rhs = rhs.mul(&diff);
    }
    if r % 2 == 1 {
        rhs = rhs.neg();
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn gauss() -> Order {
        Order::quadratic(0, 1).unwrap()
    }

    #[test]
    fn discriminants() {
        assert_eq!(gauss().discriminant(), Some(BigInt::from(-4)));
        assert_eq!(Order::quadratic(-1, 1).unwrap().discriminant(), Some(BigInt::from(-3)));
        assert_eq!(Order::quadratic(0, 5).unwrap().discriminant(), Some(BigInt::from(-20)));
        assert_eq!(order_discriminant(&Order::RationalIntegers), None);
        assert!(Order::quadratic(3, 2).is_err());
        assert!(Order::quadratic(2, 1).is_err());
        for d in [-3, -4, -7, -8, -11, -20, -23] {
            let o = Order::from_discriminant(d).unwrap();
            assert_eq!(o.discriminant(), Some(BigInt::from(d)));
        }
        assert!(Order::from_discriminant(-5).is_err());
    }

    #[test]
    fn norms() {
        let o = gauss();
        assert_eq!(elem_norm(&o, &o.elem(1, 1)), BigInt::from(2));
        assert_eq!(elem_norm(&o, &OrderElement::zero()), BigInt::zero());
        let eis = Order::quadratic(1, 1).unwrap();
        assert_eq!(elem_norm(&eis, &eis.elem(2, 3)), BigInt::from(7));
        // cross-check against c * conj(c)
        let c = eis.elem(2, 3);
        let p = eis.mul(&c, &eis.conj(&c));
        assert_eq!(p, OrderElement::new(7, 0));
    }

    #[test]
    fn realify_examples() {
        let m = HermitianForm::from_ints(gauss(), &[&[(1, 0)]]).unwrap();
        assert_eq!(realify(&m), linalg::identity_rat(2));

        let eis = Order::quadratic(-1, 1).unwrap();
        let m = HermitianForm::from_ints(eis, &[&[(2, 0)]]).unwrap();
        let s = realify(&m);
        assert_eq!(s, linalg::to_rational(&linalg::int_matrix_from_i64(&[&[2, 1], &[1, 2]])));
        assert_eq!(linalg::determinant(&s), q(3, 1));

        let id = HermitianForm::from_ints(Order::RationalIntegers, &[&[(1, 0), (0, 0)], &[(0, 0), (1, 0)]])
            .unwrap();
        assert_eq!(realify(&id), linalg::identity_rat(2));
    }

    #[test]
    fn hermitian_determinants() {
        let o = gauss();
        let id = HermitianForm::from_ints(o, &[&[(1, 0), (0, 0)], &[(0, 0), (1, 0)]]).unwrap();
        assert_eq!(det_hermitian(&id).unwrap(), q(1, 1));
        let m = HermitianForm::from_ints(o, &[&[(2, 0), (1, 1)], &[(1, -1), (3, 0)]]).unwrap();
        assert_eq!(det_hermitian(&m).unwrap(), q(4, 1));
        let m = HermitianForm::from_ints(Order::RationalIntegers, &[&[(7, 0)]]).unwrap();
        assert_eq!(det_hermitian(&m).unwrap(), q(7, 1));
        let bad = HermitianForm::from_ints(o, &[&[(1, 0), (2, 0)], &[(2, 0), (1, 0)]]).unwrap();
        assert_eq!(det_hermitian(&bad), Err(Error::NotPositiveDefinite));
    }

    #[test]
    fn rejects_non_hermitian() {
        let o = gauss();
        assert!(HermitianForm::from_ints(o, &[&[(1, 0), (1, 1)], &[(1, 1), (3, 0)]]).is_err());
        assert!(HermitianForm::from_ints(o, &[&[(1, 1)]]).is_err());
        assert!(HermitianForm::from_ints(Order::RationalIntegers, &[&[(1, 1)]]).is_err());
        assert!(HermitianForm::from_ints(o, &[&[(1, 0), (0, 0)]]).is_err());
    }

    #[test]
    fn block_identity_examples() {
        let o = gauss();
        let one = vec![vec![FieldElem::one(o)]];
        let zero = FieldElem::zero(o);
        let unit = FieldElem::one(o);
        assert!(block_det_identity_check(o, &one, &one, &zero, &unit).unwrap());
        let i = FieldElem::from_ints(o, 0, 1);
        assert!(block_det_identity_check(o, &one, &one, &i, &i.neg()).unwrap());
        // s = t collapses both sides to zero
        let a = vec![
            vec![FieldElem::from_ints(o, 2, 1), FieldElem::from_ints(o, 0, 3)],
            vec![FieldElem::from_ints(o, -1, 0), FieldElem::from_ints(o, 5, -2)],
        ];
        assert!(block_det_identity_check(o, &a, &a, &i, &i).unwrap());
        assert!(matches!(
            block_det_identity_check(o, &a, &one, &i, &zero),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    fn order_strategy() -> impl Strategy<Value = Order> {
        prop_oneof![
            Just(Order::RationalIntegers),
            Just(Order::quadratic(0, 1).unwrap()),
            Just(Order::quadratic(-1, 1).unwrap()),
            Just(Order::quadratic(-1, 2).unwrap()),
            Just(Order::quadratic(0, 2).unwrap()),
            Just(Order::quadratic(1, 3).unwrap()),
            Just(Order::quadratic(3, 7).unwrap()),
        ]
    }

    fn elem(o: Order, a: i64, b: i64) -> OrderElement {
        if o.is_quadratic() { OrderElement::new(a, b) } else { OrderElement::new(a, 0) }
    }

    proptest! {
        #[test]
        fn conj_is_involutive_ring_automorphism(o in order_strategy(), a in -20i64..20, b in -20i64..20,
                                                c in -20i64..20, d in -20i64..20) {
            let x = elem(o, a, b);
            let y = elem(o, c, d);
            prop_assert_eq!(o.conj(&o.conj(&x)), x.clone());
            prop_assert_eq!(o.conj(&o.mul(&x, &y)), o.mul(&o.conj(&x), &o.conj(&y)));
            prop_assert_eq!(o.norm(&o.mul(&x, &y)), o.norm(&x) * o.norm(&y));
            prop_assert!(o.norm(&x) >= BigInt::zero());
            prop_assert_eq!(o.norm(&x).is_zero(), x.is_zero());
        }

        #[test]
        fn block_identity_holds(a in proptest::collection::vec((-5i64..5, -5i64..5), 4),
                                b in proptest::collection::vec((-5i64..5, -5i64..5), 4),
                                s in (-4i64..4, -4i64..4), t in (-4i64..4, -4i64..4)) {
            let o = Order::quadratic(-1, 2).unwrap();
            let mk = |v: &[(i64, i64)]| vec![
                vec![FieldElem::from_ints(o, v[0].0, v[0].1), FieldElem::from_ints(o, v[1].0, v[1].1)],
                vec![FieldElem::from_ints(o, v[2].0, v[2].1), FieldElem::from_ints(o, v[3].0, v[3].1)],
            ];
            let s = FieldElem::from_ints(o, s.0, s.1);
            let t = FieldElem::from_ints(o, t.0, t.1);
            prop_assert!(block_det_identity_check(o, &mk(&a), &mk(&b), &s, &t).unwrap());
        }
    }

    /// Exhaustive check of `zᵀ S z = x* M x` for rank 2 and small entries.
    #[test]
    fn realify_matches_hermitian_evaluation_exhaustively() {
        for o in [Order::RationalIntegers, gauss(), Order::quadratic(-1, 2).unwrap()] {
            let w = o.rank_z();
            let m = HermitianForm::new(
                o,
                vec![
                    vec![OrderElement::new(3, 0), elem(o, 1, -1)],
                    vec![o.conj(&elem(o, 1, -1)), OrderElement::new(2, 0)],
                ],
            )
            .unwrap();
            let s = realify(&m);
            let range: Vec<i64> = (-3..=3).collect();
            let dim = 2 * w;
            let mut z = vec![-3i64; dim];
            loop {
                let x: Vec<OrderElement> = (0..2)
                    .map(|i| if w == 2 { OrderElement::new(z[i], z[2 + i]) } else { OrderElement::new(z[i], 0) })
                    .collect();
                let lhs = m.evaluate(&x).unwrap();
                let mut rhs = BigRational::zero();
                for i in 0..dim {
                    for j in 0..dim {
                        rhs += &s[i][j] * BigRational::from_integer((z[i] * z[j]).into());
                    }
                }
                assert_eq!(BigRational::from_integer(lhs), rhs);
                let mut k = 0;
                while k < dim && z[k] == *range.last().unwrap() {
                    z[k] = -3;
                    k += 1;
                }
                if k == dim {
                    break;
                }
                z[k] += 1;
            }
        }
    }
}
