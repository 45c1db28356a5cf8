//! JSON file formats: algebra definitions, Rumin packages and
//! quasi-conformality candidates. Indices in files are 1-based and every
//! scalar is an exact `"p/q"` string.

use std::str::FromStr;

use rumin_core::algebra::{RawAlgebra, RawBracket};
use rumin_core::calculus::{FormKey, PolyForm};
use rumin_core::error::StructuralError;
use rumin_core::exterior::{FiberForm, FormMonomial};
use rumin_core::linalg::LinearTable;
use rumin_core::poly::Exponents;
use rumin_core::rumin::{HarmonicForm, HarmonicKey, HarmonicSection, RuminPackage};
use rumin_core::{GradedLieAlgebra, Rational};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

/// Reads an exact rational from a JSON string `"p"`/`"p/q"` or a JSON
/// integer. Anything else (floats, `"0.5"`) is rejected.
pub fn rational_from_json(v: &Value) -> Result<Rational, StructuralError> {
    match v {
        Value::String(s) => Rational::from_str(s).map_err(|_| StructuralError::NonRational(s.clone())),
        Value::Number(n) if n.is_i64() => Ok(Rational::from(n.as_i64().unwrap())),
        other => Err(StructuralError::NonRational(other.to_string())),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermFile {
    pub k: usize,
    pub c: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketFile {
    pub a: usize,
    pub b: usize,
    pub terms: Vec<TermFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub layers: Vec<usize>,
    #[serde(default)]
    pub brackets: Vec<BracketFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner_product: Option<Vec<Vec<Value>>>,
}

impl AlgebraFile {
    pub fn to_raw(&self) -> Result<RawAlgebra, StructuralError> {
        let brackets = self
            .brackets
            .iter()
            .map(|b| {
                let terms = b
                    .terms
                    .iter()
                    .map(|t| Ok((t.k, rational_from_json(&t.c)?)))
                    .collect::<Result<Vec<_>, StructuralError>>()?;
                Ok(RawBracket { a: b.a, b: b.b, terms })
            })
            .collect::<Result<Vec<_>, StructuralError>>()?;
        let inner_product = match &self.inner_product {
            None => None,
            Some(rows) => Some(
                rows.iter()
                    .map(|r| r.iter().map(rational_from_json).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        Ok(RawAlgebra { name: self.name.clone(), layers: self.layers.clone(), brackets, inner_product })
    }

    pub fn from_raw(raw: &RawAlgebra) -> Self {
        AlgebraFile {
            name: raw.name.clone(),
            layers: raw.layers.clone(),
            brackets: raw
                .brackets
                .iter()
                .map(|b| BracketFile {
                    a: b.a,
                    b: b.b,
                    terms: b.terms.iter().map(|(k, c)| TermFile { k: *k, c: rational_to_json(c) }).collect(),
                })
                .collect(),
            inner_product: raw
                .inner_product
                .as_ref()
                .map(|rows| rows.iter().map(|r| r.iter().map(rational_to_json).collect()).collect()),
        }
    }

    pub fn from_algebra(alg: &GradedLieAlgebra) -> Self {
        Self::from_raw(&alg.to_raw())
    }
}

/// A term `c · u^exps θ^form` of a stored form (1-based form indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub form: Vec<usize>,
    pub exps: Vec<u16>,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyJson {
    pub form: Vec<usize>,
    pub exps: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnJson {
    pub key: KeyJson,
    pub image: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicTermJson {
    /// 1-based harmonic basis index.
    pub h: usize,
    pub exps: Vec<u16>,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicKeyJson {
    pub h: usize,
    pub exps: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftColumnJson {
    pub key: HarmonicKeyJson,
    pub image: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DColumnJson {
    pub key: HarmonicKeyJson,
    pub image: Vec<HarmonicTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberTermJson {
    pub form: Vec<usize>,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicJson {
    pub degree: usize,
    pub weight: usize,
    pub form: Vec<FiberTermJson>,
}

pub const PACKAGE_FORMAT: &str = "rumin-package/1";

/// Serialized [`RuminPackage`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackageFile {
    pub format: String,
    pub algebra: AlgebraFile,
    pub max_poly_degree: usize,
    pub harmonic: Vec<HarmonicJson>,
    pub d: Vec<ColumnJson>,
    pub q: Vec<ColumnJson>,
    pub pi: Vec<ColumnJson>,
    pub iota_inverse: Vec<LiftColumnJson>,
    #[serde(rename = "D")]
    pub rumin_d: Vec<DColumnJson>,
}

fn form_indices(m: FormMonomial) -> Vec<usize> {
    m.indices().map(|i| i + 1).collect()
}

fn key_json(k: &FormKey) -> KeyJson {
    KeyJson { form: form_indices(k.form), exps: k.exps.0.clone() }
}

fn terms_json(f: &PolyForm) -> Vec<TermJson> {
    f.iter().map(|(k, c)| TermJson { form: form_indices(k.form), exps: k.exps.0.clone(), c: c.to_string() }).collect()
}

fn table_json(t: &LinearTable<FormKey, FormKey>) -> Vec<ColumnJson> {
    t.columns().map(|(k, img)| ColumnJson { key: key_json(k), image: terms_json(img) }).collect()
}

fn hkey_json(k: &HarmonicKey) -> HarmonicKeyJson {
    HarmonicKeyJson { h: k.index + 1, exps: k.exps.0.clone() }
}

impl PackageFile {
    pub fn from_package(pkg: &RuminPackage) -> Self {
        PackageFile {
            format: PACKAGE_FORMAT.to_string(),
            algebra: AlgebraFile::from_algebra(&pkg.algebra),
            max_poly_degree: pkg.max_degree,
            harmonic: pkg
                .harmonic
                .iter()
                .map(|h| HarmonicJson {
                    degree: h.degree,
                    weight: h.weight,
                    form: h.form.iter().map(|(m, c)| FiberTermJson { form: form_indices(*m), c: c.to_string() }).collect(),
                })
                .collect(),
            d: table_json(&pkg.d),
            q: table_json(&pkg.q),
            pi: table_json(&pkg.pi),
            iota_inverse: pkg
                .iota_inverse
                .columns()
                .map(|(k, img)| LiftColumnJson { key: hkey_json(k), image: terms_json(img) })
                .collect(),
            rumin_d: pkg
                .rumin_d
                .columns()
                .map(|(k, img)| DColumnJson {
                    key: hkey_json(k),
                    image: img
                        .iter()
                        .map(|(t, c)| HarmonicTermJson { h: t.index + 1, exps: t.exps.0.clone(), c: c.to_string() })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_package(&self) -> Result<RuminPackage, CliError> {
        if self.format != PACKAGE_FORMAT {
            return Err(CliError::Input(format!("unsupported package format {:?}", self.format)));
        }
        let raw = self.algebra.to_raw()?;
        let algebra = GradedLieAlgebra::new(&raw)?;
        let n = algebra.dim();
        let parse = |s: &str| Rational::from_str(s).map_err(|_| CliError::from(StructuralError::NonRational(s.to_string())));
        let mono = |ix: &[usize]| -> Result<FormMonomial, CliError> {
            if let Some(&bad) = ix.iter().find(|&&i| i == 0 || i > n) {
                return Err(StructuralError::IndexOutOfRange { index: bad, dim: n }.into());
            }
            Ok(FormMonomial::from_indices(&ix.iter().map(|i| i - 1).collect::<Vec<_>>()))
        };
        let exps = |e: &[u16]| -> Result<Exponents, CliError> {
            if e.len() != n {
                return Err(CliError::Input(format!("exponent vector of length {} for dimension {}", e.len(), n)));
            }
            Ok(Exponents(e.to_vec()))
        };
        let form = |terms: &[TermJson]| -> Result<PolyForm, CliError> {
            let mut f = PolyForm::new();
            for t in terms {
                f.add_term(FormKey::new(mono(&t.form)?, exps(&t.exps)?), &parse(&t.c)?);
            }
            Ok(f)
        };
        let table = |cols: &[ColumnJson]| -> Result<LinearTable<FormKey, FormKey>, CliError> {
            let mut t = LinearTable::new();
            for c in cols {
                t.insert(FormKey::new(mono(&c.key.form)?, exps(&c.key.exps)?), form(&c.image)?);
            }
            Ok(t)
        };
        let nh = self.harmonic.len();
        let hkey = |h: usize, e: &[u16]| -> Result<HarmonicKey, CliError> {
            if h == 0 || h > nh {
                return Err(CliError::Input(format!("harmonic index {} outside 1..={}", h, nh)));
            }
            Ok(HarmonicKey { index: h - 1, exps: exps(e)? })
        };
        let mut harmonic = Vec::new();
        for h in &self.harmonic {
            let mut f = FiberForm::new();
            for t in &h.form {
                f.add_term(mono(&t.form)?, &parse(&t.c)?);
            }
            harmonic.push(HarmonicForm { degree: h.degree, weight: h.weight, form: f });
        }
        let mut iota_inverse = LinearTable::new();
        for c in &self.iota_inverse {
            iota_inverse.insert(hkey(c.key.h, &c.key.exps)?, form(&c.image)?);
        }
        let mut rumin_d = LinearTable::new();
        for c in &self.rumin_d {
            let mut img = HarmonicSection::new();
            for t in &c.image {
                img.add_term(hkey(t.h, &t.exps)?, &parse(&t.c)?);
            }
            rumin_d.insert(hkey(c.key.h, &c.key.exps)?, img);
        }
        Ok(RuminPackage {
            algebra,
            max_degree: self.max_poly_degree,
            harmonic,
            d: table(&self.d)?,
            q: table(&self.q)?,
            pi: table(&self.pi)?,
            iota_inverse,
            rumin_d,
        })
    }
}

/// Input of `qc-check`: an algebra (builtin id string or inline definition)
/// and a square matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QcFile {
    pub algebra: Value,
    pub matrix: Vec<Vec<Value>>,
}

pub fn fiber_terms(f: &FiberForm) -> Vec<FiberTermJson> {
    f.iter().map(|(m, c)| FiberTermJson { form: form_indices(*m), c: c.to_string() }).collect()
}
