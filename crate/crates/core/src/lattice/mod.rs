//! Integer Gram lattices: reduction, shortest vectors, the last successive
//! minimum, minima over cosets of finite-index subgroups, and covolumes.
//!
//! A lattice is given by its Gram matrix `G` on a fixed basis, so vectors are
//! integer coordinate vectors `z` and `q(z) = zᵀGz` is the squared length.
//! Witness vectors are made deterministic: among all minimisers the returned
//! one has its first nonzero coordinate positive and is lexicographically
//! smallest.

mod brute;
mod enumerate;
mod lll;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub use brute::{brute_force_coset_minimum, brute_force_minimum, sufficient_box};
pub use lll::{is_lll_reduced, lll_reduce};

use crate::error::{Error, Result};
use crate::linalg::{self, EchelonBasis, IntMatrix};
use enumerate::Enumerator;

pub const MAX_DIM: usize = 16;
pub const BRUTE_FORCE_MAX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramLattice {
    gram: IntMatrix,
}

impl GramLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::ZeroModule);
        }
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge { n, max: MAX_DIM });
        }
        if let Some(row) = gram.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
        if !linalg::is_symmetric(&gram) {
            return Err(Error::field("gram", "matrix is not symmetric"));
        }
        if !linalg::is_positive_definite_int(&gram) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(GramLattice { gram })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        GramLattice::new(linalg::int_matrix_from_i64(rows))
    }

    /// For matrices produced from an already validated lattice by a
    /// unimodular change of basis.
    pub(crate) fn from_trusted(gram: IntMatrix) -> Self {
        GramLattice { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn q(&self, z: &[BigInt]) -> BigInt {
        linalg::quadratic_form(&self.gram, z)
    }

    fn rational_gram(&self) -> Vec<Vec<BigRational>> {
        linalg::to_rational(&self.gram)
    }

    fn min_diagonal(&self) -> BigInt {
        (0..self.dim()).map(|i| self.gram[i][i].clone()).min().expect("nonempty")
    }

    fn max_diagonal(&self) -> BigInt {
        (0..self.dim()).map(|i| self.gram[i][i].clone()).max().expect("nonempty")
    }
}

/// Columns of `basis` generate a finite-index subgroup `H ⊆ Zⁿ`; the coset is
/// `offset + H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupCoset {
    pub basis: IntMatrix,
    pub offset: Vec<BigInt>,
}

impl SubgroupCoset {
    pub fn new(basis: IntMatrix, offset: Vec<BigInt>) -> Result<Self> {
        let c = SubgroupCoset { basis, offset };
        c.check_dim(c.offset.len())?;
        if c.det().is_zero() {
            return Err(Error::SingularSubgroupBasis);
        }
        Ok(c)
    }

    /// The full lattice `Zⁿ` with offset zero.
    pub fn whole(n: usize) -> Self {
        SubgroupCoset { basis: linalg::identity_int(n), offset: vec![BigInt::zero(); n] }
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if self.basis.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: self.basis.len() });
        }
        if let Some(row) = self.basis.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
        if self.offset.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: self.offset.len() });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn det(&self) -> BigInt {
        if self.basis.is_empty() {
            return BigInt::zero();
        }
        linalg::determinant(&self.basis)
    }

    /// Index `[Zⁿ : H] = |det H|`.
    pub fn index(&self) -> BigInt {
        self.det().abs()
    }

    /// Coordinates of `v` in the basis of `H`, if `v ∈ H`.
    fn solve(&self, v: &[BigInt]) -> Option<Vec<BigRational>> {
        let inv = linalg::inverse(&linalg::to_rational(&self.basis))?;
        Some(
            inv.iter()
                .map(|row| {
                    row.iter()
                        .zip(v)
                        .fold(BigRational::zero(), |acc, (a, x)| acc + a * BigRational::from_integer(x.clone()))
                })
                .collect(),
        )
    }

    pub fn subgroup_contains(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some_and(|c| c.iter().all(BigRational::is_integer))
    }

    pub fn offset_in_subgroup(&self) -> bool {
        self.subgroup_contains(&self.offset)
    }

    /// Whether `m·Zⁿ ⊆ H`.
    pub fn contains_multiples(&self, m: &BigInt) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = m.clone();
            self.subgroup_contains(&e)
        })
    }
}

pub(crate) fn sign_normalized(z: &[BigInt]) -> bool {
    z.iter().find(|x| !x.is_zero()).is_none_or(|x| x.is_positive())
}

fn negate(z: &[BigInt]) -> Vec<BigInt> {
    z.iter().map(|x| -x).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub n: usize,
    pub lambda_sq: BigInt,
    pub big_lambda_sq: BigInt,
    pub covering_radius_sq_upper: BigRational,
    pub covolume_sq: BigInt,
    pub lambda_witness: Vec<BigInt>,
    /// `n` independent vectors in order of increasing length; the last one
    /// realises `Λ²`.
    pub independent_witnesses: Vec<Vec<BigInt>>,
}

/// Shortest nonzero vector and `λ²`, by LLL followed by exact enumeration.
pub fn shortest_vector(lattice: &GramLattice) -> (Vec<BigInt>, BigInt) {
    let (reduced, u) = lll_reduce(lattice);
    let e = Enumerator::new(&reduced.rational_gram());
    let n = lattice.dim();
    let center = vec![BigRational::zero(); n];
    let mut best: Option<(BigInt, Vec<BigInt>)> = None;
    e.for_each(&center, BigRational::from_integer(reduced.min_diagonal()), |w, q| {
        if w.iter().all(Zero::is_zero) {
            return None;
        }
        let q = q.to_integer();
        let mut z = linalg::mat_vec(&u, w);
        if !sign_normalized(&z) {
            z = negate(&z);
        }
        let better = match &best {
            None => true,
            Some((bq, bz)) => q < *bq || (q == *bq && z < *bz),
        };
        if better {
            best = Some((q.clone(), z));
            return Some(BigRational::from_integer(q));
        }
        None
    });
    let (q, z) = best.expect("a reduced basis vector lies within the initial bound");
    (z, q)
}

/// All sign-normalised nonzero vectors with `q ≤ bound`, sorted by `(q, z)`.
fn vectors_up_to(reduced: &GramLattice, u: &IntMatrix, bound: &BigInt) -> Vec<(BigInt, Vec<BigInt>)> {
    let e = Enumerator::new(&reduced.rational_gram());
    let center = vec![BigRational::zero(); reduced.dim()];
    let mut out = Vec::new();
    e.for_each(&center, BigRational::from_integer(bound.clone()), |w, q| {
        if w.iter().all(Zero::is_zero) {
            return None;
        }
        let z = linalg::mat_vec(u, w);
        if sign_normalized(&z) {
            out.push((q.to_integer(), z));
        }
        None
    });
    out.sort();
    out
}

/// `Λ²` together with `n` linearly independent vectors attaining it, picked
/// greedily in order of increasing `q`.
pub fn successive_minima_basis(lattice: &GramLattice) -> (BigInt, Vec<Vec<BigInt>>) {
    let n = lattice.dim();
    let (reduced, u) = lll_reduce(lattice);
    let cap = reduced.max_diagonal();
    let (_, lambda_sq) = shortest_vector(lattice);
    let mut bound = lambda_sq;
    loop {
        let vectors = vectors_up_to(&reduced, &u, &bound);
        let mut echelon = EchelonBasis::new();
        let mut picked = Vec::new();
        for (q, z) in vectors {
            if echelon.insert(&z) {
                picked.push((q, z));
                if picked.len() == n {
                    let last = picked.last().expect("n >= 1").0.clone();
                    return (last, picked.into_iter().map(|(_, z)| z).collect());
                }
            }
        }
        // the reduced basis itself lies within `cap`, so this terminates
        assert!(bound < cap, "reduced basis vectors must be independent");
        bound = (&bound * 2u32).min(cap.clone());
    }
}

/// The squared `n`-th successive minimum `Λ²`.
pub fn successive_minimum_n(lattice: &GramLattice) -> BigInt {
    successive_minima_basis(lattice).0
}

/// Minimum of `q` over the nonzero elements of `offset + H·Zⁿ`.
///
/// The witness prefers sign-normalised vectors, then lexicographic order, so
/// with `H = Zⁿ` and zero offset this agrees with [`shortest_vector`].
pub fn coset_minimum(lattice: &GramLattice, coset: &SubgroupCoset) -> Result<(Vec<BigInt>, BigInt)> {
    let n = lattice.dim();
    coset.check_dim(n)?;
    if coset.det().is_zero() {
        return Err(Error::SingularSubgroupBasis);
    }
    // restrict the form to H: u = offset + H·y, then reduce H's basis
    let h = &coset.basis;
    let sub_gram = linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(h), lattice.gram()), h);
    let (reduced, v) = lll_reduce(&GramLattice::from_trusted(sub_gram));
    let basis = linalg::mat_mul(h, &v);
    let basis_inv = linalg::inverse(&linalg::to_rational(&basis)).ok_or(Error::SingularSubgroupBasis)?;
    let center: Vec<BigRational> = basis_inv
        .iter()
        .map(|row| {
            -row.iter()
                .zip(&coset.offset)
                .fold(BigRational::zero(), |acc, (a, o)| acc + a * BigRational::from_integer(o.clone()))
        })
        .collect();

    let point = |w: &[BigInt]| -> Vec<BigInt> {
        linalg::mat_vec(&basis, w).into_iter().zip(&coset.offset).map(|(a, o)| a + o).collect()
    };
    let key = |u: Vec<BigInt>| (!sign_normalized(&u), u);

    // seed the bound with a nonzero coset element near the center
    let rounded: Vec<BigInt> = center.iter().map(|c| c.round().to_integer()).collect();
    let mut seed: Option<BigInt> = None;
    for k in 0..=n {
        let mut w = rounded.clone();
        if k > 0 {
            w[k - 1] += 1;
        }
        let u = point(&w);
        if u.iter().any(|x| !x.is_zero()) {
            let q = lattice.q(&u);
            seed = Some(seed.map_or(q.clone(), |s| s.min(q)));
        }
    }
    let seed = seed.expect("offset + H has a nonzero element among the seeds");

    let e = Enumerator::new(&reduced.rational_gram());
    let mut best: Option<(BigInt, (bool, Vec<BigInt>))> = None;
    e.for_each(&center, BigRational::from_integer(seed), |w, q| {
        let u = point(w);
        if u.iter().all(Zero::is_zero) {
            return None;
        }
        let q = q.to_integer();
        let k = key(u);
        let better = match &best {
            None => true,
            Some((bq, bk)) => q < *bq || (q == *bq && k < *bk),
        };
        if better {
            best = Some((q.clone(), k));
            return Some(BigRational::from_integer(q));
        }
        None
    });
    let (q, (_, u)) = best.expect("seed element lies within the bound");
    Ok((u, q))
}

/// `vol² = det G`.
pub fn covolume_sq(lattice: &GramLattice) -> BigInt {
    linalg::determinant(lattice.gram())
}

pub fn analyze(lattice: &GramLattice) -> LatticeReport {
    let n = lattice.dim();
    let (lambda_witness, lambda_sq) = shortest_vector(lattice);
    let (big_lambda_sq, independent_witnesses) = successive_minima_basis(lattice);
    let covering_radius_sq_upper =
        BigRational::new(BigInt::from(n), BigInt::from(4)) * BigRational::from_integer(big_lambda_sq.clone());
    LatticeReport {
        n,
        lambda_sq,
        big_lambda_sq,
        covering_radius_sq_upper,
        covolume_sq: covolume_sq(lattice),
        lambda_witness,
        independent_witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rejects_bad_grams() {
        assert_eq!(GramLattice::from_i64(&[&[1, 2], &[2, 1]]), Err(Error::NotPositiveDefinite));
        assert!(GramLattice::from_i64(&[&[1, 2], &[0, 1]]).is_err());
        let big_id = linalg::identity_int(17);
        assert!(matches!(GramLattice::new(big_id), Err(Error::DimensionTooLarge { .. })));
    }

    #[test]
    fn lll_examples() {
        let l = GramLattice::from_i64(&[&[2, 0], &[0, 2]]).unwrap();
        let (r, u) = lll_reduce(&l);
        assert_eq!(r.gram(), l.gram());
        assert_eq!(linalg::determinant(&u).abs(), BigInt::from(1));

        let l = GramLattice::from_i64(&[&[2, 2], &[2, 4]]).unwrap();
        let (r, u) = lll_reduce(&l);
        assert_eq!(covolume_sq(&r), BigInt::from(4));
        assert!(r.gram()[0][1].abs() < BigInt::from(2));
        assert!(is_lll_reduced(r.gram()));
        assert_eq!(linalg::determinant(&u).abs(), BigInt::from(1));

        let l = GramLattice::from_i64(&[&[1000002, 1000000], &[1000000, 1000000]]).unwrap();
        let (r, _) = lll_reduce(&l);
        assert_eq!(r.gram()[0][0], BigInt::from(2));
        assert!(is_lll_reduced(r.gram()));
    }

    #[test]
    fn shortest_vector_examples() {
        let l = GramLattice::from_i64(&[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(shortest_vector(&l), (big(&[0, 1]), BigInt::from(2)));
        let l = GramLattice::from_i64(&[&[2, 1], &[1, 2]]).unwrap();
        // minimisers (1,0), (0,1), (1,-1) up to sign; lexicographically smallest is (0,1)
        assert_eq!(shortest_vector(&l).1, BigInt::from(2));
        assert_eq!(shortest_vector(&l).0, big(&[0, 1]));
        let l = GramLattice::from_i64(&[&[4, 0], &[0, 6]]).unwrap();
        assert_eq!(shortest_vector(&l), (big(&[1, 0]), BigInt::from(4)));
    }

    #[test]
    fn last_minimum_examples() {
        let l = GramLattice::new(linalg::int_matrix_from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])).unwrap();
        assert_eq!(successive_minimum_n(&l), BigInt::from(2));
        let l = GramLattice::from_i64(&[&[2, 1], &[1, 4]]).unwrap();
        assert_eq!(successive_minimum_n(&l), BigInt::from(4));
        let l = GramLattice::from_i64(&[&[2, 0], &[0, 8]]).unwrap();
        assert_eq!(successive_minimum_n(&l), BigInt::from(8));
    }

    #[test]
    fn coset_examples() {
        let l = GramLattice::from_i64(&[&[2, 0], &[0, 2]]).unwrap();
        let two_i = linalg::int_matrix_from_i64(&[&[2, 0], &[0, 2]]);
        let c = SubgroupCoset::new(two_i.clone(), big(&[1, 0])).unwrap();
        assert_eq!(coset_minimum(&l, &c).unwrap(), (big(&[1, 0]), BigInt::from(2)));

        let c = SubgroupCoset::whole(2);
        assert_eq!(coset_minimum(&l, &c).unwrap(), shortest_vector(&l));

        let c = SubgroupCoset::new(two_i, big(&[2, 0])).unwrap();
        let (u, q) = coset_minimum(&l, &c).unwrap();
        assert_eq!(q, BigInt::from(8));
        assert_eq!(u, big(&[0, 2]));

        let singular = linalg::int_matrix_from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(SubgroupCoset::new(singular, big(&[0, 0])), Err(Error::SingularSubgroupBasis));
    }

    #[test]
    fn covolume_examples() {
        assert_eq!(covolume_sq(&GramLattice::from_i64(&[&[2, 0], &[0, 2]]).unwrap()), BigInt::from(4));
        assert_eq!(covolume_sq(&GramLattice::from_i64(&[&[2, 1], &[1, 2]]).unwrap()), BigInt::from(3));
    }

    #[test]
    fn brute_force_examples() {
        let l = GramLattice::from_i64(&[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(brute_force_minimum(&l, 3).unwrap().1, BigInt::from(2));
        let l = GramLattice::from_i64(&[&[2, 1], &[1, 2]]).unwrap();
        assert_eq!(brute_force_minimum(&l, 3).unwrap().1, BigInt::from(2));
        let l = GramLattice::from_i64(&[&[6, 0], &[0, 10]]).unwrap();
        assert_eq!(brute_force_minimum(&l, 1).unwrap().1, BigInt::from(6));
        let l = GramLattice::new(linalg::identity_int(9)).unwrap();
        assert!(matches!(brute_force_minimum(&l, 1), Err(Error::DimensionTooLarge { .. })));
    }

    #[test]
    fn analyze_report_orders_invariants() {
        let l = GramLattice::from_i64(&[&[2, 1], &[1, 4]]).unwrap();
        let r = analyze(&l);
        assert_eq!(r.lambda_sq, BigInt::from(2));
        assert_eq!(r.big_lambda_sq, BigInt::from(4));
        assert_eq!(r.covering_radius_sq_upper, BigRational::from_integer(2.into()));
        assert_eq!(r.covolume_sq, BigInt::from(7));
        assert_eq!(r.independent_witnesses.len(), 2);
        assert!(BigRational::from_integer(r.big_lambda_sq.clone()) <= r.covering_radius_sq_upper.clone() * BigRational::from_integer(4.into()));
    }
}
