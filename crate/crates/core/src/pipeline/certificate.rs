//! The certificate document and its JSON form.
//!
//! Field elements are little-endian coordinate lists, polynomials are
//! little-endian lists of elements, and integers of unbounded size are plain
//! JSON numbers.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::elliptic::EllipticCurveModel;
use crate::finite_field::{make_field, FieldElement, FiniteField, Poly};

pub const SCHEMA_VERSION: u32 = 1;
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const BASE_CHANGE_NOTE: &str =
    "the twist is stated over K(x); the same curve over an algebraic closure of F_p(x) has rank at least rank_bound";

mod bigint_json {
    use super::*;
    use serde::de::Error;
    use serde_json::Number;

    fn to_number<E: serde::ser::Error>(n: &BigInt) -> Result<Number, E> {
        n.to_string().parse::<Number>().map_err(E::custom)
    }

    fn from_number<E: Error>(n: Number) -> Result<BigInt, E> {
        n.to_string().parse::<BigInt>().map_err(|_| E::custom(format!("{n} is not an integer")))
    }

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_number(n)?.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_number(Number::deserialize(d)?)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            v.iter().map(to_number).collect::<Result<Vec<_>, _>>()?.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            Vec::<Number>::deserialize(d)?.into_iter().map(from_number).collect()
        }
    }
}

pub type ElementJson = Vec<u32>;
pub type PolyJson = Vec<ElementJson>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigEcho {
    pub p: u64,
    pub ell: u64,
    pub max_base_degree: u32,
    pub paper_faithful: bool,
    pub max_candidates: Option<u64>,
    pub seed: u64,
    pub allow_ell_eq_p: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub p: u64,
    pub degree: u32,
    pub modulus: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    pub field: FieldJson,
    pub a2: ElementJson,
    pub a4: ElementJson,
    pub a6: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelJson {
    pub ell: u64,
    pub poly: PolyJson,
    pub chi: u64,
    pub chi_order: u64,
}

/// `u = N / M` on x-coordinates and the y-coordinate factor `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsogenyJson {
    #[serde(rename = "N")]
    pub n: PolyJson,
    #[serde(rename = "M")]
    pub m: PolyJson,
    pub v_numerator: PolyJson,
    pub v_denominator: PolyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameJson {
    /// Rows of the matrix of the Möbius map sending the 2-torsion of `E`
    /// to that of `E'`.
    pub mu: [[ElementJson; 2]; 2],
    #[serde(rename = "P")]
    pub p: String,
    /// `c`, the finite image of `P` under `mu`.
    #[serde(rename = "P_prime")]
    pub p_prime: ElementJson,
    pub degenerate: bool,
    pub p_prime_in_two_torsion: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperellipticJson {
    pub field: FieldJson,
    pub h: PolyJson,
    pub genus: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitJson {
    #[serde(rename = "L_k", with = "bigint_json::vec")]
    pub l_k: Vec<BigInt>,
    pub ell: u64,
    #[serde(rename = "K_degree")]
    pub k_degree: u32,
    #[serde(rename = "L_K", with = "bigint_json::vec")]
    pub l_big_k: Vec<BigInt>,
    #[serde(with = "bigint_json")]
    pub a: BigInt,
    #[serde(rename = "q_K", with = "bigint_json")]
    pub q_big_k: BigInt,
    pub ordinary: bool,
    pub inert_shape_ok: bool,
    pub p_rank: usize,
    pub cartier_manin_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistJson {
    #[serde(rename = "K")]
    pub big_k: FieldJson,
    /// `F_{q^g}`, over which the elliptic factor is first defined.
    pub descent_field: FieldJson,
    pub descent_curve: CurveJson,
    #[serde(with = "bigint_json")]
    pub descent_trace: BigInt,
    pub curve_over_k: CurveJson,
    pub h_over_k: PolyJson,
    #[serde(rename = "A2")]
    pub a2: PolyJson,
    #[serde(rename = "A4")]
    pub a4: PolyJson,
    #[serde(rename = "A6")]
    pub a6: PolyJson,
    pub j: ElementJson,
    pub rank_bound: usize,
    pub certificate_reference: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub schema: u32,
    pub artifact_version: String,
    pub config: ConfigEcho,
    pub field: FieldJson,
    pub e_prime: CurveJson,
    pub e_tilde: CurveJson,
    pub e: CurveJson,
    pub pairing: [usize; 3],
    pub kernel: KernelJson,
    pub isogeny: IsogenyJson,
    pub frame: FrameJson,
    pub d: HyperellipticJson,
    pub d_prime: HyperellipticJson,
    pub point_counts: Vec<u64>,
    pub split: SplitJson,
    pub cross_check_over_big_k: Option<bool>,
    pub twist: Option<TwistJson>,
    pub note: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_hash: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum SchemaError {
    #[error("{path}: {message}")]
    Json { path: String, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl Certificate {
    /// The bytes that are hashed: compact JSON without timestamp and hash.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut stripped = self.clone();
        stripped.timestamp = None;
        stripped.canonical_hash = None;
        serde_json::to_vec(&stripped).expect("serializable")
    }

    pub fn compute_hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_bytes()))
    }

    /// Hash of the mathematical content only: the config echo is dropped
    /// as well, so runs with different search settings can be compared.
    pub fn content_hash(&self) -> String {
        let mut stripped = self.clone();
        stripped.timestamp = None;
        stripped.canonical_hash = None;
        stripped.config = ConfigEcho {
            p: 0,
            ell: 0,
            max_base_degree: 0,
            paper_faithful: false,
            max_candidates: None,
            seed: 0,
            allow_ell_eq_p: false,
        };
        hex::encode(Sha256::digest(serde_json::to_vec(&stripped).expect("serializable")))
    }

    pub fn seal(&mut self, timestamp: Option<u64>) {
        self.timestamp = timestamp;
        self.canonical_hash = Some(self.compute_hash());
    }

    pub fn to_pretty_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Certificate, SchemaError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| SchemaError::Json {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })
    }

    pub fn read(path: &std::path::Path) -> Result<Certificate, SchemaError> {
        Certificate::from_json(&std::fs::read_to_string(path)?)
    }
}

pub fn field_json(k: &FiniteField) -> FieldJson {
    FieldJson { p: k.characteristic() as u64, degree: k.degree(), modulus: k.modulus().map(|m| m.to_vec()) }
}

pub fn element_json(k: &FiniteField, a: FieldElement) -> ElementJson {
    k.coords(a)
}

pub fn poly_json(k: &FiniteField, f: &Poly) -> PolyJson {
    f.coeffs().iter().map(|&c| k.coords(c)).collect()
}

pub fn curve_json(e: &EllipticCurveModel) -> CurveJson {
    let k = e.base();
    CurveJson {
        field: field_json(k),
        a2: element_json(k, e.a2),
        a4: element_json(k, e.a4),
        a6: element_json(k, e.a6),
    }
}

/// Rebuilds a field, insisting that the stored modulus is the one this
/// library would choose.
pub fn parse_field(f: &FieldJson) -> Result<FiniteField, String> {
    let p = u32::try_from(f.p).map_err(|_| format!("characteristic {} out of range", f.p))?;
    let k = make_field(p as u64, f.degree).map_err(|e| e.to_string())?;
    if k.modulus().map(|m| m.to_vec()) != f.modulus {
        return Err(format!("modulus {:?} is not the canonical one for F_{}^{}", f.modulus, f.p, f.degree));
    }
    Ok(k)
}

pub fn parse_element(k: &FiniteField, a: &ElementJson) -> Result<FieldElement, String> {
    k.from_coords(a).map_err(|e| e.to_string())
}

/// Polynomials must be stored without trailing zero coefficients.
pub fn parse_poly(k: &FiniteField, f: &PolyJson) -> Result<Poly, String> {
    let coeffs = f.iter().map(|c| parse_element(k, c)).collect::<Result<Vec<_>, _>>()?;
    if coeffs.last().is_some_and(|c| c.is_zero()) {
        return Err("polynomial has a zero leading coefficient".into());
    }
    Ok(Poly::from_coeffs(coeffs))
}

pub fn parse_curve(k: &FiniteField, c: &CurveJson) -> Result<EllipticCurveModel, String> {
    if c.field != field_json(k) {
        return Err("curve is defined over a different field".into());
    }
    let [a2, a4, a6] = [&c.a2, &c.a4, &c.a6].map(|a| parse_element(k, a));
    EllipticCurveModel::new(k, a2?, a4?, a6?).map_err(|e| e.to_string())
}
