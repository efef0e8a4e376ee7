use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::GramLattice;
use crate::linalg::{self, IntMatrix};

/// Gram-Schmidt data of a Gram matrix: `mu[i][j]` for `j < i` and the
/// squared lengths `b_star[i]` of the orthogonalised vectors.
struct Gso {
    mu: Vec<Vec<BigRational>>,
    b_star: Vec<BigRational>,
}

impl Gso {
    fn from_gram(g: &[Vec<BigInt>]) -> Self {
        let n = g.len();
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut r = vec![vec![BigRational::zero(); n]; n];
        let mut b_star = vec![BigRational::zero(); n];
        for i in 0..n {
            for j in 0..=i {
                let mut rij = BigRational::from_integer(g[i][j].clone());
                for k in 0..j {
                    rij -= &mu[j][k] * &r[i][k];
                }
                if j < i {
                    mu[i][j] = &rij / &b_star[j];
                    r[i][j] = rij;
                } else {
                    b_star[i] = rij;
                }
            }
        }
        Gso { mu, b_star }
    }
}

fn round_half_away(x: &BigRational) -> BigInt {
    // num-rational rounds half away from zero
    x.round().to_integer()
}

/// `b_k ← b_k - r·b_j` applied to the Gram matrix and the transform.
fn reduce_column(g: &mut IntMatrix, u: &mut IntMatrix, k: usize, j: usize, r: &BigInt) {
    let row_j = g[j].clone();
    for (c, x) in row_j.iter().enumerate() {
        g[k][c] -= r * x;
    }
    for row in g.iter_mut() {
        let t = r * &row[j];
        row[k] -= t;
    }
    for row in u.iter_mut() {
        let t = r * &row[j];
        row[k] -= t;
    }
}

fn swap_columns(g: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    g.swap(a, b);
    for row in g.iter_mut() {
        row.swap(a, b);
    }
    for row in u.iter_mut() {
        row.swap(a, b);
    }
}

/// LLL reduction with `δ = 3/4` on the Gram matrix, in exact rational
/// arithmetic. Returns the reduced lattice `UᵀGU` together with the
/// unimodular `U` (columns are the new basis in old coordinates).
pub fn lll_reduce(lattice: &GramLattice) -> (GramLattice, IntMatrix) {
    let n = lattice.dim();
    let mut g = lattice.gram().to_vec();
    let mut u = linalg::identity_int(n);
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));

    let mut gso = Gso::from_gram(&g);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            if gso.mu[k][j].abs() > half {
                let r = round_half_away(&gso.mu[k][j]);
                reduce_column(&mut g, &mut u, k, j, &r);
                let rq = BigRational::from_integer(r);
                for l in 0..j {
                    let t = &rq * &gso.mu[j][l];
                    gso.mu[k][l] -= t;
                }
                gso.mu[k][j] -= rq;
            }
        }
        let mu = &gso.mu[k][k - 1];
        let lovasz = gso.b_star[k] >= (&delta - mu * mu) * &gso.b_star[k - 1];
        if lovasz {
            k += 1;
        } else {
            swap_columns(&mut g, &mut u, k, k - 1);
            gso = Gso::from_gram(&g);
            k = (k - 1).max(1);
        }
    }
    (GramLattice::from_trusted(g), u)
}

/// True when the Gram matrix satisfies size reduction (`|μ| ≤ 1/2`) and the
/// Lovász condition with `δ = 3/4`.
pub fn is_lll_reduced(g: &[Vec<BigInt>]) -> bool {
    let gso = Gso::from_gram(g);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let n = g.len();
    for i in 0..n {
        for j in 0..i {
            if gso.mu[i][j].abs() > half {
                return false;
            }
        }
        if i > 0 {
            let mu = &gso.mu[i][i - 1];
            if gso.b_star[i] < (&delta - mu * mu) * &gso.b_star[i - 1] {
                return false;
            }
        }
    }
    true
}
