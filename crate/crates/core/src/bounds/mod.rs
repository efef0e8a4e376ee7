//! Explicit bounds: the isogeny quantity `κ`, the discriminant bound, the
//! covolume of the Hom-lattice, the successive-minima chain, and the final
//! degree bound `p² κ³`, plus certification of computed minima against them.
//!
//! `κ` is astronomically large (its logarithm is already ~1.7·10⁵ for
//! `g = 1`), so everything on that side lives in log space as
//! [`LogValue`] intervals.

pub mod logspace;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

pub use logspace::{bits_for_digits, DecimalInterval, LogValue, DEFAULT_DIGITS};

use crate::cm_algebra::Order;
use crate::error::{Error, Result};
use crate::lattice;
use crate::rosati::{self, DegreeResult, HomInstance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveBoundData {
    pub genus_x: u64,
    pub degree_k: u64,
    /// Stable Faltings height of `J(X)`, original Faltings normalisation.
    pub faltings_height: BigRational,
    pub period_p: BigInt,
    /// `χ(A, F_A)·ρ(E^r, A)`, when known.
    pub chi_rho: Option<BigInt>,
    pub c_omega: BigInt,
    pub r: u64,
    pub order: Order,
}

impl CurveBoundData {
    pub fn validate(&self) -> Result<()> {
        if self.genus_x == 0 {
            return Err(Error::field("curve_data.genus_x", "must be positive"));
        }
        if self.degree_k == 0 {
            return Err(Error::field("curve_data.degree_k", "must be positive"));
        }
        if !self.period_p.is_positive() {
            return Err(Error::field("period_p", "must be positive"));
        }
        if self.chi_rho.as_ref().is_some_and(|c| !c.is_positive()) {
            return Err(Error::field("curve_data.chi_rho", "must be positive"));
        }
        if !self.c_omega.is_positive() {
            return Err(Error::field("curve_data.c_omega", "must be positive"));
        }
        if self.r == 0 || self.r > self.genus_x {
            return Err(Error::field("rank_O", "must satisfy 1 <= r <= g(X)"));
        }
        Ok(())
    }
}

/// `ln κ = 2^10 g³ (64 g² ln(14g) + ln d + 2 ln max(h, ln d, 1))`.
pub fn kappa_log(g: u64, deg_k: u64, h_f: &BigRational, digits: u32) -> LogValue {
    assert!(g >= 1 && deg_k >= 1);
    let bits = bits_for_digits(digits);
    let ln_d = LogValue::ln_u64(deg_k, bits);
    let clamp = LogValue::from_rational(h_f, bits)
        .max(&ln_d)
        .max(&LogValue::from_int(&BigInt::one(), bits));
    let inner = LogValue::ln_u64(14 * g, bits)
        .scale_u64(64 * g * g)
        .add(&ln_d)
        .add(&clamp.ln().scale_u64(2));
    inner.scale(&(BigInt::from(1024u32) * BigInt::from(g).pow(3)))
}

/// `500 d² max(h, 1)²`.
pub fn discriminant_bound(deg_k: u64, h_f: &BigRational) -> BigRational {
    let h = h_f.clone().max(BigRational::one());
    BigRational::from_integer(BigInt::from(500) * BigInt::from(deg_k).pow(2)) * &h * &h
}

/// `vol²` of the Hom-lattice: `2^r χρ` over `Z`, and
/// `|D|^r (χρ)² / c²` over an imaginary quadratic order.
pub fn covolume_formula(order: Order, chi_rho: &BigInt, c_omega: &BigInt, r: u32) -> Result<BigRational> {
    let bound = rosati::class_index_bound(order, r);
    if !c_omega.is_positive() || *c_omega > bound {
        return Err(Error::InvalidClassIndex {
            c_omega: c_omega.try_into().unwrap_or(u64::MAX),
            bound: bound.to_string(),
        });
    }
    Ok(match order.discriminant() {
        None => BigRational::from_integer(BigInt::from(2).pow(r) * chi_rho),
        Some(d) => BigRational::new(d.abs().pow(r) * chi_rho * chi_rho, c_omega * c_omega),
    })
}

/// An exact rational enclosure `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainBounds {
    /// Encloses `n·vol^{2/n}`, the bound on `λ²`.
    pub lambda_sq_max: RatInterval,
    /// `nⁿ vol²`
    pub big_lambda_sq_max: BigRational,
    /// `¼ n^{n+1} vol²`
    pub r_sq_max: BigRational,
    /// `½ R²_max`, so that `μ ≤ p² · mu_factor`.
    pub mu_factor: BigRational,
}

const ROOT_BITS: u32 = 64;

/// `[lo, hi]` around `x^{1/n}` for a positive rational `x`.
fn nth_root_enclosure(x: &BigRational, n: u32) -> RatInterval {
    let scale = BigInt::one() << (ROOT_BITS * n);
    let den = BigInt::one() << ROOT_BITS;
    let scaled = x * BigRational::from_integer(scale);
    let lo = scaled.floor().to_integer().nth_root(n);
    let up = scaled.ceil().to_integer();
    let mut hi = up.nth_root(n);
    if hi.pow(n) < up {
        hi += 1;
    }
    RatInterval { lo: BigRational::new(lo, den.clone()), hi: BigRational::new(hi, den) }
}

/// The successive-minima inequalities turned into explicit bounds on `λ²`,
/// `Λ²` and `R²` in terms of `vol²`.
pub fn inequality_chain(n: u32, vol_sq: &BigRational) -> ChainBounds {
    assert!(n >= 1 && vol_sq.is_positive());
    let nq = BigRational::from_integer(BigInt::from(n));
    let n_pow_n = BigRational::from_integer(BigInt::from(n).pow(n));
    let root = nth_root_enclosure(vol_sq, n);
    let big_lambda_sq_max = &n_pow_n * vol_sq;
    let r_sq_max = &big_lambda_sq_max * &nq / BigRational::from_integer(BigInt::from(4));
    let mu_factor = &r_sq_max / BigRational::from_integer(BigInt::from(2));
    ChainBounds {
        lambda_sq_max: RatInterval { lo: &root.lo * &nq, hi: &root.hi * &nq },
        big_lambda_sq_max,
        r_sq_max,
        mu_factor,
    }
}

/// `(λ²)ⁿ ≤ nⁿ vol²`, exactly.
pub fn lambda_chain_holds(n: u32, lambda_sq: &BigInt, vol_sq: &BigRational) -> bool {
    BigRational::from_integer(lambda_sq.pow(n)) <= BigRational::from_integer(BigInt::from(n).pow(n)) * vol_sq
}

/// `(λ²)^{n-1} Λ² ≤ nⁿ vol²`, exactly.
pub fn minkowski_chain_holds(n: u32, lambda_sq: &BigInt, big_lambda_sq: &BigInt, vol_sq: &BigRational) -> bool {
    BigRational::from_integer(lambda_sq.pow(n - 1) * big_lambda_sq)
        <= BigRational::from_integer(BigInt::from(n).pow(n)) * vol_sq
}

/// `p² (2g)^{2g+1} vol²`.
pub fn intermediate_bound(g: u64, p: &BigInt, vol_sq: &BigRational) -> BigRational {
    let two_g = BigInt::from(2 * g);
    let e = u32::try_from(2 * g + 1).expect("genus fits in u32");
    BigRational::from_integer(p * p * two_g.pow(e)) * vol_sq
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBounds {
    /// `ln(p² κ³)`
    pub log_mu_bound: LogValue,
    /// `ln(p² (2g)^{2g+1} vol²)`, when `χρ` is known.
    pub log_intermediate: Option<LogValue>,
    pub vol_sq: Option<BigRational>,
}

pub fn degree_bound_log(data: &CurveBoundData, digits: u32) -> Result<DegreeBounds> {
    data.validate()?;
    let bits = bits_for_digits(digits);
    let log_p2 = LogValue::ln_int(&data.period_p, bits).scale_u64(2);
    let kappa = kappa_log(data.genus_x, data.degree_k, &data.faltings_height, digits);
    let log_mu_bound = log_p2.add(&kappa.scale_u64(3));
    let (log_intermediate, vol_sq) = match &data.chi_rho {
        Some(cr) => {
            let r = u32::try_from(data.r).map_err(|_| Error::field("rank_O", "too large"))?;
            let vol_sq = covolume_formula(data.order, cr, &data.c_omega, r)?;
            let g = data.genus_x;
            let log_i = log_p2
                .add(&LogValue::ln_u64(2 * g, bits).scale_u64(2 * g + 1))
                .add(&LogValue::ln_rational(&vol_sq, bits));
            (Some(log_i), Some(vol_sq))
        }
        None => (None, None),
    };
    Ok(DegreeBounds { log_mu_bound, log_intermediate, vol_sq })
}

/// `g(X) - 1` when `g(Y) ≥ 2`, `g(X) + 1` when `g(Y) = 0` and `X(K) ≠ ∅`,
/// and `None` when neither bound applies.
pub fn non_genus_one_bound(genus_x: u64, genus_y: u64, x_has_point: bool) -> Result<Option<u64>> {
    match genus_y {
        1 => Err(Error::GenusOneNotHandledHere),
        0 if x_has_point => Ok(Some(genus_x + 1)),
        0 => Ok(None),
        _ => Ok(Some(genus_x.saturating_sub(1))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    fn new(name: &str, pass: bool, lhs: impl ToString, rhs: impl ToString) -> Self {
        Check { name: name.to_string(), pass, lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificationReport {
    pub degree: DegreeResult,
    pub lattice: lattice::LatticeReport,
    pub bounds: DegreeBounds,
    /// `ln(p² (2g)^{2g+1} vol²)` with `vol²` taken from the Gram matrix.
    pub log_intermediate_gram: LogValue,
    pub checks: Vec<Check>,
}

impl CertificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// `a ≤ b` for positive rationals: certified in log space, with an exact
/// comparison deciding when the intervals overlap.
fn log_le(a: &BigRational, b: &BigRational, bits: u32) -> bool {
    let la = LogValue::ln_rational(a, bits);
    let lb = LogValue::ln_rational(b, bits);
    if la.certainly_le(&lb) {
        true
    } else if lb.hi() < la.lo() {
        false
    } else {
        a <= b
    }
}

/// Runs the whole chain on one instance: exact `μ`, `vol²` from the Gram
/// matrix, the covolume formula, every successive-minima inequality, and
/// `μ ≤ p²(2g)^{2g+1}vol² ≤ p²κ³`.
pub fn certify(inst: &HomInstance, data: &CurveBoundData, digits: u32) -> Result<CertificationReport> {
    data.validate()?;
    if data.order != inst.order() {
        return Err(Error::InconsistentInstance(format!("order {} vs {}", data.order, inst.order())));
    }
    if data.r != inst.rank() as u64 {
        return Err(Error::InconsistentInstance(format!("rank {} vs {}", data.r, inst.rank())));
    }
    if data.period_p != *inst.period_p() {
        return Err(Error::InconsistentInstance(format!("period {} vs {}", data.period_p, inst.period_p())));
    }
    if data.genus_x != inst.genus_x() {
        return Err(Error::InconsistentInstance(format!("genus {} vs {}", data.genus_x, inst.genus_x())));
    }
    let bits = bits_for_digits(digits);
    let gram = inst.gram();
    let degree = rosati::minimal_degree(inst)?;
    let lat = lattice::analyze(gram);
    let n = u32::try_from(lat.n).expect("n <= 16");
    let vol_sq = BigRational::from_integer(lat.covolume_sq.clone());
    let r = u32::try_from(data.r).expect("r <= n");
    let mut checks = Vec::new();

    let bound = rosati::class_index_bound(data.order, r);
    checks.push(Check::new("class_index", data.c_omega <= bound, &data.c_omega, &bound));
    if let Some(cr) = &data.chi_rho {
        match covolume_formula(data.order, cr, &data.c_omega, r) {
            Ok(v) => checks.push(Check::new("covolume_formula", v == vol_sq, &v, &vol_sq)),
            Err(e) => checks.push(Check::new("covolume_formula", false, e, &vol_sq)),
        }
    }

    let nn = BigInt::from(n).pow(n);
    checks.push(Check::new(
        "lambda_vs_covolume",
        lambda_chain_holds(n, &lat.lambda_sq, &vol_sq),
        lat.lambda_sq.pow(n),
        &nn * &lat.covolume_sq,
    ));
    checks.push(Check::new(
        "lambda_Lambda_vs_covolume",
        minkowski_chain_holds(n, &lat.lambda_sq, &lat.big_lambda_sq, &vol_sq),
        lat.lambda_sq.pow(n - 1) * &lat.big_lambda_sq,
        &nn * &lat.covolume_sq,
    ));
    let chain = inequality_chain(n, &vol_sq);
    let big_lambda = BigRational::from_integer(lat.big_lambda_sq.clone());
    checks.push(Check::new(
        "Lambda_vs_covolume",
        big_lambda <= chain.big_lambda_sq_max,
        &big_lambda,
        &chain.big_lambda_sq_max,
    ));
    checks.push(Check::new(
        "covering_vs_covolume",
        lat.covering_radius_sq_upper <= chain.r_sq_max,
        &lat.covering_radius_sq_upper,
        &chain.r_sq_max,
    ));
    let half_lambda = BigRational::new(lat.lambda_sq.clone(), BigInt::from(2));
    checks.push(Check::new("degree_lower_bound", half_lambda <= degree.lower(), &half_lambda, degree.lower()));
    if let Some(m) = degree.exact() {
        checks.push(Check::new("degree_positive_integer", m.is_positive(), m, 1));
    }

    let bounds = degree_bound_log(data, digits)?;
    let inter = intermediate_bound(data.genus_x, &data.period_p, &vol_sq);
    let log_intermediate_gram = LogValue::ln_rational(&inter, bits);
    if let Some(upper) = degree.upper() {
        checks.push(Check::new("degree_vs_intermediate", log_le(&upper, &inter, bits), &upper, &inter));
        let log_mu = LogValue::ln_rational(&upper, bits);
        checks.push(Check::new(
            "degree_vs_final_bound",
            log_mu.certainly_le(&bounds.log_mu_bound),
            &log_mu,
            &bounds.log_mu_bound,
        ));
    }
    checks.push(Check::new(
        "intermediate_vs_final_bound",
        log_intermediate_gram.certainly_le(&bounds.log_mu_bound),
        &log_intermediate_gram,
        &bounds.log_mu_bound,
    ));
    if let Some(d) = data.order.discriminant() {
        let db = discriminant_bound(data.degree_k, &data.faltings_height);
        let abs_d = BigRational::from_integer(d.abs());
        checks.push(Check::new("discriminant_bound", abs_d <= db, &abs_d, &db));
    }

    Ok(CertificationReport { degree, lattice: lat, bounds, log_intermediate_gram, checks })
}
