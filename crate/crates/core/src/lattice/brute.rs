//! Exhaustive box search, kept independent of the reduction/enumeration path
//! so it can serve as an oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{sign_normalized, GramLattice, SubgroupCoset, BRUTE_FORCE_MAX_DIM};
use crate::error::{Error, Result};
use crate::linalg;

/// Evaluates `zᵀGz` for all `z` in a box, with an `i128` fast path.
struct BoxEval {
    small: Option<Vec<Vec<i128>>>,
    big: Vec<Vec<BigInt>>,
}

impl BoxEval {
    fn new(g: &[Vec<BigInt>]) -> Self {
        let small = g
            .iter()
            .map(|row| row.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>();
        BoxEval { small, big: g.to_vec() }
    }

    fn eval(&self, z: &[i64]) -> BigInt {
        if let Some(g) = &self.small {
            if let Some(v) = eval_i128(g, z) {
                return BigInt::from(v);
            }
        }
        let zb: Vec<BigInt> = z.iter().map(|&x| BigInt::from(x)).collect();
        linalg::quadratic_form(&self.big, &zb)
    }
}

fn eval_i128(g: &[Vec<i128>], z: &[i64]) -> Option<i128> {
    let mut acc: i128 = 0;
    for (i, row) in g.iter().enumerate() {
        let zi = i128::from(z[i]);
        if zi == 0 {
            continue;
        }
        let mut s: i128 = 0;
        for (j, gij) in row.iter().enumerate() {
            s = s.checked_add(gij.checked_mul(i128::from(z[j]))?)?;
        }
        acc = acc.checked_add(zi.checked_mul(s)?)?;
    }
    Some(acc)
}

/// Odometer over `[-b, b]^n`.
fn for_each_in_box(n: usize, b: i64, mut f: impl FnMut(&[i64])) {
    let mut z = vec![-b; n];
    loop {
        f(&z);
        let mut k = 0;
        while k < n && z[k] == b {
            z[k] = -b;
            k += 1;
        }
        if k == n {
            return;
        }
        z[k] += 1;
    }
}

fn check_box(n: usize, box_bound: i64) -> Result<()> {
    if n > BRUTE_FORCE_MAX_DIM {
        return Err(Error::DimensionTooLarge { n, max: BRUTE_FORCE_MAX_DIM });
    }
    if box_bound < 1 {
        return Err(Error::field("box_bound", "must be a positive integer"));
    }
    Ok(())
}

/// Nonzero `z` with `|z_i| ≤ box_bound` minimising `zᵀGz`, with the same
/// tie-break as [`super::shortest_vector`]. Whether the box contains a true
/// shortest vector is the caller's responsibility (see [`sufficient_box`]).
pub fn brute_force_minimum(lattice: &GramLattice, box_bound: i64) -> Result<(Vec<BigInt>, BigInt)> {
    let n = lattice.dim();
    check_box(n, box_bound)?;
    let ev = BoxEval::new(lattice.gram());
    let mut best: Option<(BigInt, Vec<BigInt>)> = None;
    for_each_in_box(n, box_bound, |z| {
        // each ± pair is represented by its sign-normalised member
        let Some(first) = z.iter().find(|&&x| x != 0) else { return };
        if *first < 0 {
            return;
        }
        let q = ev.eval(z);
        let better = match &best {
            None => true,
            Some((bq, bz)) => q < *bq || (q == *bq && z.iter().map(|&x| BigInt::from(x)).lt(bz.iter().cloned())),
        };
        if better {
            best = Some((q, z.iter().map(|&x| BigInt::from(x)).collect()));
        }
    });
    let (q, z) = best.expect("box of radius >= 1 contains a nonzero vector");
    Ok((z, q))
}

/// Brute-force counterpart of [`super::coset_minimum`]: scans the box for
/// nonzero members of `offset + H·Zⁿ`.
pub fn brute_force_coset_minimum(
    lattice: &GramLattice,
    coset: &SubgroupCoset,
    box_bound: i64,
) -> Result<Option<(Vec<BigInt>, BigInt)>> {
    let n = lattice.dim();
    check_box(n, box_bound)?;
    coset.check_dim(n)?;
    // z ∈ offset + H·Zⁿ  ⇔  adj(H)·(z - offset) ≡ 0 (mod det H)
    let det = coset.det();
    if det.is_zero() {
        return Err(Error::SingularSubgroupBasis);
    }
    let hq = linalg::to_rational(&coset.basis);
    let inv = linalg::inverse(&hq).ok_or(Error::SingularSubgroupBasis)?;
    let adj: Vec<Vec<BigInt>> = inv
        .iter()
        .map(|row| row.iter().map(|x| (x * BigRational::from_integer(det.clone())).to_integer()).collect())
        .collect();
    let ev = BoxEval::new(lattice.gram());
    let mut best: Option<(BigInt, (bool, Vec<BigInt>))> = None;
    let det_abs = det.abs();
    for_each_in_box(n, box_bound, |z| {
        if z.iter().all(|&x| x == 0) {
            return;
        }
        let diff: Vec<BigInt> = z.iter().zip(&coset.offset).map(|(&a, o)| BigInt::from(a) - o).collect();
        let member = adj.iter().all(|row| {
            let s = row.iter().zip(&diff).fold(BigInt::zero(), |acc, (a, d)| acc + a * d);
            (s % &det_abs).is_zero()
        });
        if !member {
            return;
        }
        let q = ev.eval(z);
        let zb: Vec<BigInt> = z.iter().map(|&x| BigInt::from(x)).collect();
        let key = (!sign_normalized(&zb), zb);
        let better = match &best {
            None => true,
            Some((bq, bk)) => q < *bq || (q == *bq && key < *bk),
        };
        if better {
            best = Some((q, key));
        }
    });
    Ok(best.map(|(q, (_, z))| (z, q)))
}

/// A box radius `B` such that every `z` with `zᵀGz ≤ q_bound` satisfies
/// `|z_i| ≤ B`, from `z_i² ≤ q_bound · (G⁻¹)_ii` (Cauchy-Schwarz).
pub fn sufficient_box(lattice: &GramLattice, q_bound: &BigInt) -> BigInt {
    let inv = linalg::inverse(&linalg::to_rational(lattice.gram())).expect("positive definite");
    let qb = BigRational::from_integer(q_bound.clone());
    (0..lattice.dim())
        .map(|i| (&qb * &inv[i][i]).floor().to_integer().sqrt())
        .max()
        .unwrap_or_default()
}
