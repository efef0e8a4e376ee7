//! The Hom-lattice `Ω = Hom(J(X), E)` as a free `O`-module `O^r` carrying the
//! Rosati form `q(x) = 2·x*Mx`, and the minimal morphism degree read off it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cm_algebra::{self, FieldElem, HermitianForm, Order, OrderElement};
use crate::error::{Error, Result};
use crate::lattice::{self, GramLattice, SubgroupCoset};
use crate::linalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomInstance {
    herm: HermitianForm,
    period_p: BigInt,
    x_has_rational_point: bool,
    y_has_rational_point: bool,
    coset: Option<SubgroupCoset>,
    genus_x: u64,
    gram: GramLattice,
}

impl HomInstance {
    /// Validates the instance and builds its Rosati Gram lattice.
    pub fn new(
        herm: HermitianForm,
        period_p: BigInt,
        x_has_rational_point: bool,
        y_has_rational_point: bool,
        coset: Option<SubgroupCoset>,
        genus_x: u64,
    ) -> Result<Self> {
        let r = herm.rank();
        if genus_x == 0 {
            return Err(Error::field("genus_x", "must be positive"));
        }
        if r as u64 > genus_x {
            return Err(Error::field("rank_O", format!("rank {r} exceeds g(X) = {genus_x}")));
        }
        if !period_p.is_positive() {
            return Err(Error::field("period_p", "must be a positive integer"));
        }
        if x_has_rational_point && !period_p.is_one() {
            return Err(Error::field("period_p", "must be 1 when X has a rational point"));
        }
        let gram = rosati_gram_of(&herm)?;
        let n = gram.dim();
        if let Some(c) = &coset {
            c.check_dim(n).map_err(|_| Error::field("coset", format!("expected {n}x{n} basis and length-{n} offset")))?;
            if c.det().is_zero() {
                return Err(Error::SingularSubgroupBasis);
            }
            if !c.contains_multiples(&period_p) {
                return Err(Error::field("coset.h_basis", "subgroup must contain p(X)·Ω"));
            }
            let offset_in_h = c.offset_in_subgroup();
            if x_has_rational_point && !(c.index().is_one() && offset_in_h) {
                return Err(Error::InconsistentInstance(
                    "X has a rational point, so the coset must be the whole lattice".into(),
                ));
            }
            if y_has_rational_point && !offset_in_h {
                return Err(Error::InconsistentInstance(
                    "Y has a rational point, so the coset must be the subgroup itself".into(),
                ));
            }
            if !y_has_rational_point && offset_in_h {
                return Err(Error::InconsistentInstance(
                    "Y has no rational point, so the coset cannot contain 0".into(),
                ));
            }
        }
        Ok(HomInstance { herm, period_p, x_has_rational_point, y_has_rational_point, coset, genus_x, gram })
    }

    /// An instance where `X(K) ≠ ∅` (so `p = 1`) and no coset data.
    pub fn with_rational_point(herm: HermitianForm, genus_x: u64) -> Result<Self> {
        HomInstance::new(herm, BigInt::one(), true, true, None, genus_x)
    }

    pub fn order(&self) -> Order {
        self.herm.order()
    }

    pub fn rank(&self) -> usize {
        self.herm.rank()
    }

    pub fn hermitian(&self) -> &HermitianForm {
        &self.herm
    }

    pub fn period_p(&self) -> &BigInt {
        &self.period_p
    }

    pub fn x_has_rational_point(&self) -> bool {
        self.x_has_rational_point
    }

    pub fn y_has_rational_point(&self) -> bool {
        self.y_has_rational_point
    }

    pub fn coset(&self) -> Option<&SubgroupCoset> {
        self.coset.as_ref()
    }

    pub fn genus_x(&self) -> u64 {
        self.genus_x
    }

    /// `n = r · rank_Z(O)`.
    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn gram(&self) -> &GramLattice {
        &self.gram
    }
}

fn rosati_gram_of(herm: &HermitianForm) -> Result<GramLattice> {
    let s = cm_algebra::realify(herm);
    let two = BigRational::from_integer(BigInt::from(2));
    let gram = s
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let y = x * &two;
                    debug_assert!(y.is_integer());
                    y.to_integer()
                })
                .collect()
        })
        .collect();
    GramLattice::new(gram)
}

/// The Rosati Gram matrix `2·realify(M)`.
pub fn rosati_gram(inst: &HomInstance) -> GramLattice {
    inst.gram.clone()
}

/// `deg φ = |det M|²` for the endomorphism of `E^r` given by `M ∈ O^{r×r}`.
pub fn endo_degree(order: Order, m: &[Vec<OrderElement>]) -> Result<BigInt> {
    let r = m.len();
    if r == 0 {
        return Ok(BigInt::one());
    }
    if let Some(row) = m.iter().find(|row| row.len() != r) {
        return Err(Error::DimensionMismatch { expected: r, got: row.len() });
    }
    let fm: Vec<Vec<FieldElem>> = m.iter().map(|row| row.iter().map(|c| order.to_field(c)).collect()).collect();
    let det = cm_algebra::det_field(&fm);
    let norm = det.norm();
    debug_assert!(norm.is_integer());
    Ok(norm.to_integer())
}

/// The `Z`-linear map `O^r → O^r` given by `M`, in block coordinates
/// (the `1`-parts of all entries, then the `τ`-parts). Its determinant is
/// `N(det M) = |det M|²`.
pub fn multiplication_matrix(order: Order, m: &[Vec<OrderElement>]) -> IntMatrix {
    let r = m.len();
    match order {
        Order::RationalIntegers => m.iter().map(|row| row.iter().map(|c| c.a.clone()).collect()).collect(),
        Order::Quadratic { u, v } => {
            // c·1 = a + bτ, c·τ = -bv + (a - bu)τ
            let mut out = vec![vec![BigInt::zero(); 2 * r]; 2 * r];
            for i in 0..r {
                for j in 0..r {
                    let OrderElement { a, b } = &m[i][j];
                    out[i][j] = a.clone();
                    out[i][r + j] = -(b * v);
                    out[r + i][j] = b.clone();
                    out[r + i][r + j] = a - b * u;
                }
            }
            out
        }
    }
}

/// `|c|² = 2·N(c)` for the Rosati norm on `End(E)`.
pub fn rosati_norm_sq_scalar(order: Order, c: &OrderElement) -> BigInt {
    order.norm(c) * 2
}

/// `deg φ = ½ xᵀGx` for the morphism with Rosati coordinates `x`.
pub fn degree_of_hom(inst: &HomInstance, x: &[BigInt]) -> Result<BigInt> {
    let n = inst.dim();
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    let q = inst.gram.q(x);
    debug_assert!((&q % 2u32).is_zero());
    Ok(q / 2)
}

/// Interprets Rosati coordinates as a vector in `O^r`.
pub fn coordinates_to_module(inst: &HomInstance, x: &[BigInt]) -> Vec<OrderElement> {
    let r = inst.rank();
    if inst.order().is_quadratic() {
        (0..r).map(|i| OrderElement::from_big(x[i].clone(), x[r + i].clone())).collect()
    } else {
        x.iter().map(|a| OrderElement::from_big(a.clone(), BigInt::zero())).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    ExactRationalPointX,
    ExactCosetGiven,
    UpperYRational,
    UpperYNoPoint,
    /// Only the lower bound `½λ²` is known.
    LowerOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeValue {
    Exact(BigInt),
    Interval { lower: BigRational, upper: Option<BigRational> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeResult {
    pub mu: DegreeValue,
    pub case_tag: CaseTag,
    /// A morphism realising `mu` (exact cases) or the upper bound (case
    /// `UpperYRational`).
    pub witness: Option<Vec<BigInt>>,
    pub lambda_sq: BigInt,
}

impl DegreeResult {
    pub fn lower(&self) -> BigRational {
        match &self.mu {
            DegreeValue::Exact(m) => BigRational::from_integer(m.clone()),
            DegreeValue::Interval { lower, .. } => lower.clone(),
        }
    }

    pub fn upper(&self) -> Option<BigRational> {
        match &self.mu {
            DegreeValue::Exact(m) => Some(BigRational::from_integer(m.clone())),
            DegreeValue::Interval { upper, .. } => upper.clone(),
        }
    }

    pub fn exact(&self) -> Option<&BigInt> {
        match &self.mu {
            DegreeValue::Exact(m) => Some(m),
            DegreeValue::Interval { .. } => None,
        }
    }
}

/// `μ_K(X, Y)` from the Rosati lattice:
/// exact `½λ²` when `X(K) ≠ ∅`, exact `½·min q` over the coset when one is
/// given, `[½λ², ½p²λ²]` when only `Y(K) ≠ ∅`, and `[½λ², ½p²·(n/4)Λ²]`
/// otherwise.
pub fn minimal_degree(inst: &HomInstance) -> Result<DegreeResult> {
    let g = &inst.gram;
    let (sv, lambda_sq) = lattice::shortest_vector(g);
    let half = |q: &BigInt| BigRational::new(q.clone(), BigInt::from(2));
    let lower = half(&lambda_sq);
    let p_sq = BigRational::from_integer(&inst.period_p * &inst.period_p);

    if inst.x_has_rational_point {
        return Ok(DegreeResult {
            mu: DegreeValue::Exact(&lambda_sq / 2),
            case_tag: CaseTag::ExactRationalPointX,
            witness: Some(sv),
            lambda_sq,
        });
    }
    if let Some(c) = &inst.coset {
        let (u, q) = lattice::coset_minimum(g, c)?;
        return Ok(DegreeResult {
            mu: DegreeValue::Exact(q / 2),
            case_tag: CaseTag::ExactCosetGiven,
            witness: Some(u),
            lambda_sq,
        });
    }
    if inst.y_has_rational_point {
        let witness = sv.iter().map(|x| x * &inst.period_p).collect();
        return Ok(DegreeResult {
            mu: DegreeValue::Interval { lower: lower.clone(), upper: Some(lower * p_sq) },
            case_tag: CaseTag::UpperYRational,
            witness: Some(witness),
            lambda_sq,
        });
    }
    let big_lambda_sq = lattice::successive_minimum_n(g);
    let r_sq = BigRational::new(BigInt::from(inst.dim()), BigInt::from(4)) * BigRational::from_integer(big_lambda_sq);
    let upper = half(&BigInt::one()) * p_sq * r_sq;
    Ok(DegreeResult {
        mu: DegreeValue::Interval { lower, upper: Some(upper) },
        case_tag: CaseTag::UpperYNoPoint,
        witness: None,
        lambda_sq,
    })
}

/// `⌈|D|^{r/2}⌉` for an imaginary quadratic order, `1` for `Z`.
pub fn class_index_bound(order: Order, r: u32) -> BigInt {
    match order.discriminant() {
        None => BigInt::one(),
        Some(d) => {
            let p = d.abs().pow(r);
            let s = p.sqrt();
            if &s * &s == p {
                s
            } else {
                s + 1
            }
        }
    }
}
