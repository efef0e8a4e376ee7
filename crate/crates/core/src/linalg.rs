//! Exact dense linear algebra shared by the algebra and lattice modules.
//!
//! Everything here works over exact rings (big integers, rationals, elements
//! of an imaginary quadratic field); nothing touches floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

/// A commutative ring in which the divisions performed by Bareiss
/// elimination are exact.
pub trait ExactRing: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!((self % other).is_zero(), "inexact Bareiss division");
        self / other
    }
}

impl ExactRing for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
///
/// Panics on an empty or non-square matrix.
pub fn determinant<T: ExactRing>(m: &[Vec<T>]) -> T {
    let n = m.len();
    assert!(n > 0, "determinant of an empty matrix");
    assert!(m.iter().all(|row| row.len() == n), "determinant of a non-square matrix");
    let mut a: Vec<Vec<T>> = m.to_vec();
    let one = a[0][0].one_like();
    let mut prev = one.clone();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero_elem() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero_elem()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return one.zero_like(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                a[i][j] = t.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg_ref()
    } else {
        d
    }
}

/// Leading principal minors `det(m[..k][..k])` for `k = 1..=n`, computed as
/// the Bareiss pivots without row exchanges. Stops early (after pushing the
/// zero) at the first vanishing minor.
pub fn leading_minors<T: ExactRing>(m: &[Vec<T>]) -> Vec<T> {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let mut prev = a[0][0].one_like();
    for k in 0..n {
        out.push(a[k][k].clone());
        if a[k][k].is_zero_elem() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                a[i][j] = t.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    out
}

pub fn is_symmetric<T: PartialEq>(m: &[Vec<T>]) -> bool {
    let n = m.len();
    m.iter().all(|row| row.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Positive definiteness via the signs of all leading principal minors.
pub fn is_positive_definite_int(m: &[Vec<BigInt>]) -> bool {
    let minors = leading_minors(m);
    !m.is_empty() && minors.len() == m.len() && minors.iter().all(|d| d.is_positive())
}

pub fn is_positive_definite_rat(m: &[Vec<BigRational>]) -> bool {
    let minors = leading_minors(m);
    !m.is_empty() && minors.len() == m.len() && minors.iter().all(|d| d.is_positive())
}

pub fn to_rational(m: &[Vec<BigInt>]) -> RatMatrix {
    m.iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Inverse over the rationals by Gauss-Jordan elimination; `None` if singular.
pub fn inverse(m: &[Vec<BigRational>]) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m.to_vec();
    let mut inv: RatMatrix = identity_rat(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

pub fn identity_int(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn identity_rat(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec(a: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(BigInt::zero(), |acc, (r, v)| acc + r * v))
        .collect()
}

/// `xᵀ G x` for an integer Gram matrix.
pub fn quadratic_form(g: &[Vec<BigInt>], x: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, row) in g.iter().enumerate() {
        if x[i].is_zero() {
            continue;
        }
        let mut s = BigInt::zero();
        for (j, gij) in row.iter().enumerate() {
            if !x[j].is_zero() {
                s += gij * &x[j];
            }
        }
        acc += &x[i] * s;
    }
    acc
}

/// Incrementally maintained row-echelon basis over the rationals, used to
/// test linear independence of integer vectors.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the vectors already present.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let mut w: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        for (pivot, row) in &self.rows {
            if !w[*pivot].is_zero() {
                let f = w[*pivot].clone();
                for (wj, rj) in w.iter_mut().zip(row) {
                    *wj -= &f * rj;
                }
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                let f = w[p].clone();
                for x in w.iter_mut() {
                    *x = &*x / &f;
                }
                self.rows.push((p, w));
                true
            }
            None => false,
        }
    }
}

pub fn int_matrix_from_i64(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}
