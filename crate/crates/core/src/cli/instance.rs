//! The JSON instance file and its conversion into validated domain objects.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::CliError;
use crate::bounds::CurveBoundData;
use crate::cm_algebra::{HermitianForm, Order, OrderElement};
use crate::error::Error;
use crate::lattice::SubgroupCoset;
use crate::rosati::HomInstance;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    RationalIntegers,
    Quadratic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderSpec {
    pub kind: OrderKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub a: i64,
    #[serde(default)]
    pub b: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosetSpec {
    pub h_basis: Vec<Vec<i64>>,
    pub offset: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDataSpec {
    pub genus_x: u64,
    pub degree_k: u64,
    /// Exact decimal ("0.75") or fraction ("3/4") string.
    pub faltings_height: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_rho: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_omega: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus_y: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema_version: String,
    pub order: OrderSpec,
    #[serde(rename = "rank_O")]
    pub rank_o: usize,
    pub hermitian: Vec<Vec<EntrySpec>>,
    pub period_p: u64,
    pub x_rational_point: bool,
    pub y_rational_point: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coset: Option<CosetSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve_data: Option<CurveDataSpec>,
}

/// A parsed file together with the domain objects built from it.
#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub file: InstanceFile,
    pub input_sha256: String,
    pub inst: HomInstance,
    pub curve: Option<CurveBoundData>,
    pub genus_y: Option<u64>,
}

/// Parses `"3/4"`, `"-2"`, or `"0.75"` into an exact rational.
pub fn parse_exact_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let den = BigInt::from(10).pow(u32::try_from(frac.len()).ok()?);
    let q = BigRational::new(num, den);
    Some(if neg { -q } else { q })
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, CliError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| CliError::parse(e.to_string()))?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(CliError::parse(format!(
            "unsupported schema_version {:?} (expected {SCHEMA_VERSION:?})",
            file.schema_version
        ))
        .with_field("schema_version"));
    }
    Ok(file)
}

fn to_big_matrix(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

impl InstanceFile {
    pub fn order(&self) -> Result<Order, Error> {
        match self.order.kind {
            OrderKind::RationalIntegers => {
                if self.order.u.is_some() || self.order.v.is_some() {
                    return Err(Error::field("order", "u and v only apply to quadratic orders"));
                }
                Ok(Order::RationalIntegers)
            }
            OrderKind::Quadratic => {
                let u = self.order.u.ok_or_else(|| Error::field("order.u", "required for quadratic orders"))?;
                let v = self.order.v.ok_or_else(|| Error::field("order.v", "required for quadratic orders"))?;
                Order::quadratic(u, v).map_err(|e| Error::field("order", e.to_string()))
            }
        }
    }

    pub fn to_domain(&self) -> Result<(HomInstance, Option<CurveBoundData>, Option<u64>), Error> {
        let order = self.order()?;
        if self.hermitian.len() != self.rank_o {
            return Err(Error::field(
                "hermitian",
                format!("expected {} rows for rank_O = {}", self.rank_o, self.rank_o),
            ));
        }
        let entries = self
            .hermitian
            .iter()
            .map(|row| row.iter().map(|e| OrderElement::new(e.a, e.b)).collect())
            .collect();
        let herm = HermitianForm::new(order, entries)?;
        let coset = match &self.coset {
            Some(c) => Some(
                SubgroupCoset::new(to_big_matrix(&c.h_basis), c.offset.iter().map(|&x| BigInt::from(x)).collect())
                    .map_err(|e| match e {
                        Error::DimensionMismatch { .. } => Error::field("coset", e.to_string()),
                        other => other,
                    })?,
            ),
            None => None,
        };
        let genus_x = self.curve_data.as_ref().map_or(self.rank_o as u64, |c| c.genus_x);
        let inst = HomInstance::new(
            herm,
            BigInt::from(self.period_p),
            self.x_rational_point,
            self.y_rational_point,
            coset,
            genus_x,
        )?;
        let (curve, genus_y) = match &self.curve_data {
            Some(cd) => {
                let h = parse_exact_rational(&cd.faltings_height).ok_or_else(|| {
                    Error::field("curve_data.faltings_height", "expected an exact decimal or fraction string")
                })?;
                let data = CurveBoundData {
                    genus_x: cd.genus_x,
                    degree_k: cd.degree_k,
                    faltings_height: h,
                    period_p: BigInt::from(self.period_p),
                    chi_rho: cd.chi_rho.map(BigInt::from),
                    c_omega: cd.c_omega.map_or_else(BigInt::one, BigInt::from),
                    r: self.rank_o as u64,
                    order,
                };
                data.validate()?;
                (Some(data), cd.genus_y)
            }
            None => (None, None),
        };
        Ok((inst, curve, genus_y))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parses and validates an instance; parse failures map to exit code 1,
/// invariant violations to 2 and a non-positive-definite form to 3.
pub fn load_instance(text: &str) -> Result<LoadedInstance, CliError> {
    let file = parse_instance(text)?;
    let (inst, curve, genus_y) = file.to_domain().map_err(CliError::from_domain)?;
    Ok(LoadedInstance { input_sha256: sha256_hex(text.as_bytes()), file, inst, curve, genus_y })
}
