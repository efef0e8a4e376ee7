//! Fincke-Pohst enumeration over an exact rational `LDLᵀ` decomposition.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// `q(y) = Σ_i d_i (y_i + Σ_{j>i} mu_ij y_j)²`
pub(crate) struct Enumerator {
    d: Vec<BigRational>,
    mu: Vec<Vec<BigRational>>,
}

struct Search<'a, F> {
    e: &'a Enumerator,
    center: &'a [BigRational],
    bound: BigRational,
    w: Vec<BigInt>,
    visit: F,
}

impl Enumerator {
    /// Decomposes a positive-definite rational Gram matrix.
    pub(crate) fn new(gram: &[Vec<BigRational>]) -> Self {
        let n = gram.len();
        let mut q = gram.to_vec();
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j].clone();
                q[i][j] = &q[i][j] / &q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    let t = &q[k][i] * &q[i][l];
                    q[k][l] -= t;
                }
            }
        }
        let d = (0..n).map(|i| q[i][i].clone()).collect();
        let mu = (0..n)
            .map(|i| (0..n).map(|j| if j > i { q[i][j].clone() } else { BigRational::zero() }).collect())
            .collect();
        Enumerator { d, mu }
    }

    pub(crate) fn dim(&self) -> usize {
        self.d.len()
    }

    /// Calls `visit(w, q)` for every integer `w` with
    /// `q = (w - center)ᵀ G (w - center) ≤ bound`. A `Some(b)` return value
    /// replaces the bound for the rest of the search.
    pub(crate) fn for_each<F>(&self, center: &[BigRational], bound: BigRational, visit: F)
    where
        F: FnMut(&[BigInt], &BigRational) -> Option<BigRational>,
    {
        let n = self.dim();
        if n == 0 {
            return;
        }
        let mut s = Search { e: self, center, bound, w: vec![BigInt::zero(); n], visit };
        s.level(n - 1, BigRational::zero());
    }
}

impl<F> Search<'_, F>
where
    F: FnMut(&[BigInt], &BigRational) -> Option<BigRational>,
{
    fn level(&mut self, i: usize, partial: BigRational) {
        let n = self.e.dim();
        let mut c = self.center[i].clone();
        for j in i + 1..n {
            let yj = BigRational::from_integer(self.w[j].clone()) - &self.center[j];
            c -= &self.e.mu[i][j] * yj;
        }
        let di = &self.e.d[i];
        let start = c.round().to_integer();
        // the feasible set is an interval around c, so walk up then down from
        // the nearest integer
        for dir in [1i32, -1] {
            let mut x = if dir == 1 { start.clone() } else { &start - 1 };
            loop {
                let dx = BigRational::from_integer(x.clone()) - &c;
                let total = &partial + di * &dx * &dx;
                if total > self.bound {
                    break;
                }
                self.w[i] = x.clone();
                if i == 0 {
                    if let Some(b) = (self.visit)(&self.w, &total) {
                        self.bound = b;
                    }
                } else {
                    self.level(i - 1, total);
                }
                if dir == 1 {
                    x += 1;
                } else {
                    x -= 1;
                }
            }
        }
        self.w[i] = BigInt::zero();
    }
}
