//! Graded nilpotent Lie algebras `g = g_1 ⊕ ... ⊕ g_l` with exact structure
//! constants, their validation, the built-in boundary models and the
//! dilation automorphisms.
//!
//! Basis vectors are numbered layer by layer. Public data types use 1-based
//! indices (as in algebra definition files); the in-memory tables are 0-based.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use alloc::{format, collections::BTreeMap};
use core::fmt;

use crate::error::{Error, Result, StructuralError};
use crate::linalg::DenseMatrix;
use crate::rational::Rational;

/// Largest supported dimension: exterior monomials are `u64` bitmasks.
pub const MAX_DIM: usize = 63;

/// One bracket entry `[e_a, e_b] = Σ c_k e_k` of unvalidated input (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawBracket {
    pub a: usize,
    pub b: usize,
    pub terms: Vec<(usize, Rational)>,
}

/// Candidate structure data, before validation.
///
/// An entry for `(a, b)` implies `[e_b, e_a] = -[e_a, e_b]` unless `(b, a)` is
/// listed too, in which case both are taken literally and antisymmetry is
/// checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawAlgebra {
    pub name: String,
    pub layers: Vec<usize>,
    pub brackets: Vec<RawBracket>,
    /// `None` means the standard orthonormal inner product.
    pub inner_product: Option<Vec<Vec<Rational>>>,
}

/// A failed axiom together with a witnessing basis tuple (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Antisymmetry { a: usize, b: usize, k: usize },
    Jacobi { a: usize, b: usize, c: usize, k: usize },
    Grading { a: usize, b: usize, k: usize },
    InnerProductNotSymmetric { i: usize, j: usize },
    InnerProductNotPositive { minor: usize },
    LayersNotOrthogonal { i: usize, j: usize },
}

impl Violation {
    pub fn axiom(&self) -> &'static str {
        match self {
            Violation::Antisymmetry { .. } => "antisymmetry",
            Violation::Jacobi { .. } => "jacobi",
            Violation::Grading { .. } => "grading",
            Violation::InnerProductNotSymmetric { .. } => "inner_product_symmetric",
            Violation::InnerProductNotPositive { .. } => "inner_product_positive_definite",
            Violation::LayersNotOrthogonal { .. } => "layers_orthogonal",
        }
    }

    /// The witnessing basis indices.
    pub fn witness(&self) -> Vec<usize> {
        match *self {
            Violation::Antisymmetry { a, b, k } | Violation::Grading { a, b, k } => vec![a, b, k],
            Violation::Jacobi { a, b, c, k } => vec![a, b, c, k],
            Violation::InnerProductNotSymmetric { i, j } | Violation::LayersNotOrthogonal { i, j } => {
                vec![i, j]
            }
            Violation::InnerProductNotPositive { minor } => vec![minor],
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at {:?}", self.axiom(), self.witness())
    }
}

/// Outcome of [`validate`] on well-formed data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A validated graded nilpotent Lie algebra. Immutable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    name: String,
    layers: Vec<usize>,
    /// Layer number (1-based) of each basis vector.
    layer_of: Vec<usize>,
    /// `bracket[a][b]` = sorted nonzero terms `(k, c^k_ab)`.
    bracket: Vec<Vec<Vec<(usize, Rational)>>>,
    inner_product: DenseMatrix,
    orthonormal: bool,
}

struct Parsed {
    dim: usize,
    layer_of: Vec<usize>,
    bracket: Vec<Vec<Vec<(usize, Rational)>>>,
    inner_product: DenseMatrix,
}

fn parse(raw: &RawAlgebra) -> core::result::Result<Parsed, StructuralError> {
    if raw.layers.is_empty() {
        return Err(StructuralError::NoLayers);
    }
    let dim: usize = raw.layers.iter().sum();
    if dim == 0 {
        return Err(StructuralError::EmptyAlgebra);
    }
    if dim > MAX_DIM {
        return Err(StructuralError::TooLarge { dim, max: MAX_DIM });
    }
    let layer_of: Vec<usize> = raw
        .layers
        .iter()
        .enumerate()
        .flat_map(|(j, &d)| core::iter::repeat(j + 1).take(d))
        .collect();
    let check = |i: usize| {
        if i == 0 || i > dim {
            Err(StructuralError::IndexOutOfRange { index: i, dim })
        } else {
            Ok(i - 1)
        }
    };
    let mut listed: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
    for br in &raw.brackets {
        let (a, b) = (check(br.a)?, check(br.b)?);
        let mut terms = BTreeMap::new();
        for (k, c) in &br.terms {
            let k0 = check(*k)?;
            if terms.insert(k0, c.clone()).is_some() {
                return Err(StructuralError::DuplicateTerm { a: br.a, b: br.b, k: *k });
            }
        }
        if listed.insert((a, b), terms).is_some() {
            return Err(StructuralError::DuplicateBracket { a: br.a, b: br.b });
        }
    }
    let mut bracket = vec![vec![Vec::new(); dim]; dim];
    for (&(a, b), terms) in &listed {
        bracket[a][b] = terms.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c.clone())).collect();
        if a != b && !listed.contains_key(&(b, a)) {
            bracket[b][a] = terms.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, -c)).collect();
        }
    }
    let inner_product = match &raw.inner_product {
        None => DenseMatrix::identity(dim),
        Some(rows) => {
            let cols = rows.first().map_or(0, Vec::len);
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(StructuralError::InnerProductShape { rows: rows.len(), cols, dim });
            }
            DenseMatrix::from_rows(rows.clone())
        }
    };
    Ok(Parsed { dim, layer_of, bracket, inner_product })
}

fn bracket_vectors(
    bracket: &[Vec<Vec<(usize, Rational)>>],
    x: &BTreeMap<usize, Rational>,
    b: usize,
) -> BTreeMap<usize, Rational> {
    // [x, e_b]
    let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
    for (a, ca) in x {
        for (k, c) in &bracket[*a][b] {
            let e = out.entry(*k).or_insert_with(Rational::zero);
            *e += &(ca * c);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn check_axioms(p: &Parsed) -> Vec<Violation> {
    let dim = p.dim;
    let step = p.layer_of.last().copied().unwrap_or(0);
    let mut out = Vec::new();
    let coeff = |a: usize, b: usize, k: usize| {
        p.bracket[a][b].iter().find(|(kk, _)| *kk == k).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    };
    for a in 0..dim {
        for b in a..dim {
            let mut ks: Vec<usize> = p.bracket[a][b].iter().chain(&p.bracket[b][a]).map(|(k, _)| *k).collect();
            ks.sort_unstable();
            ks.dedup();
            for k in ks {
                if !(&coeff(a, b, k) + &coeff(b, a, k)).is_zero() {
                    out.push(Violation::Antisymmetry { a: a + 1, b: b + 1, k: k + 1 });
                }
            }
        }
    }
    for a in 0..dim {
        for b in 0..dim {
            let target = p.layer_of[a] + p.layer_of[b];
            for (k, _) in &p.bracket[a][b] {
                if target > step || p.layer_of[*k] != target {
                    out.push(Violation::Grading { a: a + 1, b: b + 1, k: k + 1 });
                }
            }
        }
    }
    // Jacobi: [[a,b],c] + [[b,c],a] + [[c,a],b] = 0.
    let unit = |i: usize| -> BTreeMap<usize, Rational> { core::iter::once((i, Rational::one())).collect() };
    for a in 0..dim {
        for b in a + 1..dim {
            for c in b + 1..dim {
                let mut sum: BTreeMap<usize, Rational> = BTreeMap::new();
                for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                    let xy = bracket_vectors(&p.bracket, &unit(x), y);
                    for (k, v) in bracket_vectors(&p.bracket, &xy, z) {
                        let e = sum.entry(k).or_insert_with(Rational::zero);
                        *e += &v;
                    }
                }
                if let Some((k, _)) = sum.iter().find(|(_, v)| !v.is_zero()) {
                    out.push(Violation::Jacobi { a: a + 1, b: b + 1, c: c + 1, k: k + 1 });
                }
            }
        }
    }
    let g = &p.inner_product;
    for i in 0..dim {
        for j in i + 1..dim {
            if g[(i, j)] != g[(j, i)] {
                out.push(Violation::InnerProductNotSymmetric { i: i + 1, j: j + 1 });
            }
            if p.layer_of[i] != p.layer_of[j] && (!g[(i, j)].is_zero() || !g[(j, i)].is_zero()) {
                out.push(Violation::LayersNotOrthogonal { i: i + 1, j: j + 1 });
            }
        }
    }
    // Sylvester's criterion on leading principal minors.
    for m in 1..=dim {
        let mut minor = DenseMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                minor.set(i, j, g[(i, j)].clone());
            }
        }
        if !minor.determinant().is_positive() {
            out.push(Violation::InnerProductNotPositive { minor: m });
            break;
        }
    }
    out
}

/// Checks the graded Lie algebra axioms. Malformed input is reported as a
/// [`StructuralError`], never as a violation.
pub fn validate(raw: &RawAlgebra) -> core::result::Result<ValidationReport, StructuralError> {
    let parsed = parse(raw)?;
    Ok(ValidationReport { violations: check_axioms(&parsed) })
}

impl GradedLieAlgebra {
    /// Validates and builds. Axiom violations become [`Error::InvalidAlgebra`]
    /// naming the first failure.
    pub fn new(raw: &RawAlgebra) -> Result<Self> {
        let parsed = parse(raw)?;
        if let Some(v) = check_axioms(&parsed).first() {
            return Err(Error::InvalidAlgebra(v.to_string()));
        }
        let orthonormal = parsed.inner_product == DenseMatrix::identity(parsed.dim);
        Ok(GradedLieAlgebra {
            name: raw.name.clone(),
            layers: raw.layers.clone(),
            layer_of: parsed.layer_of,
            bracket: parsed.bracket,
            inner_product: parsed.inner_product,
            orthonormal,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.layer_of.len()
    }

    pub fn layers(&self) -> &[usize] {
        &self.layers
    }

    /// Index of the last nonzero layer.
    pub fn step(&self) -> usize {
        self.layer_of.last().copied().unwrap_or(0)
    }

    /// 1-based layer number of the 0-based basis index `i`; this is also the
    /// weight of the dual covector.
    pub fn layer(&self, i: usize) -> usize {
        self.layer_of[i]
    }

    /// 0-based basis indices of layer `j` (1-based).
    pub fn layer_indices(&self, j: usize) -> core::ops::Range<usize> {
        let start: usize = self.layers[..j - 1].iter().sum();
        start..start + self.layers[j - 1]
    }

    /// Nonzero terms `(k, c^k_ab)` of `[e_a, e_b]`, 0-based.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.bracket[a][b]
    }

    pub fn structure_constant(&self, a: usize, b: usize, k: usize) -> Rational {
        self.bracket[a][b]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Bracket of two vectors given in coordinates.
    pub fn bracket_vec(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let s = xa * yb;
                for (k, c) in &self.bracket[a][b] {
                    out[*k] += &(&s * c);
                }
            }
        }
        out
    }

    pub fn inner_product(&self) -> &DenseMatrix {
        &self.inner_product
    }

    /// Whether the inner product is the standard one.
    pub fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }

    /// `ν = Σ_j j·dim g_j`.
    pub fn homogeneous_dimension(&self) -> usize {
        self.layers.iter().enumerate().map(|(j, d)| (j + 1) * d).sum()
    }

    /// The raw data this algebra was built from, with every bracket pair
    /// `a < b` listed once.
    pub fn to_raw(&self) -> RawAlgebra {
        let mut brackets = Vec::new();
        for a in 0..self.dim() {
            for b in a + 1..self.dim() {
                if !self.bracket[a][b].is_empty() {
                    brackets.push(RawBracket {
                        a: a + 1,
                        b: b + 1,
                        terms: self.bracket[a][b].iter().map(|(k, c)| (k + 1, c.clone())).collect(),
                    });
                }
            }
        }
        let inner_product = if self.orthonormal {
            None
        } else {
            Some((0..self.dim()).map(|i| self.inner_product.row(i).to_vec()).collect())
        };
        RawAlgebra { name: self.name.clone(), layers: self.layers.clone(), brackets, inner_product }
    }
}

/// The built-in model families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Model {
    Abelian,
    Heisenberg,
    Quaternionic,
    Octonionic,
}

impl Model {
    pub fn parse(id: &str) -> Result<Model> {
        match id {
            "abelian" => Ok(Model::Abelian),
            "heisenberg" => Ok(Model::Heisenberg),
            "quaternionic" => Ok(Model::Quaternionic),
            "octonionic" => Ok(Model::Octonionic),
            other => Err(Error::UnknownModel(other.to_string())),
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Model::Abelian => "abelian",
            Model::Heisenberg => "heisenberg",
            Model::Quaternionic => "quaternionic",
            Model::Octonionic => "octonionic",
        }
    }
}

/// Multiplication of basis units in a Cayley–Dickson algebra presented by
/// its oriented triples `e_a e_b = e_c`. Unit 0 is the identity.
fn unit_product(triples: &[(usize, usize, usize)], u: usize, v: usize) -> (i64, usize) {
    if u == 0 {
        return (1, v);
    }
    if v == 0 {
        return (1, u);
    }
    if u == v {
        return (-1, 0);
    }
    for &(a, b, c) in triples {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            if (u, v) == (x, y) {
                return (1, z);
            }
            if (u, v) == (y, x) {
                return (-1, z);
            }
        }
    }
    unreachable!("incomplete multiplication table for units {} {}", u, v)
}

pub const QUATERNION_TRIPLES: [(usize, usize, usize); 1] = [(1, 2, 3)];

pub const OCTONION_TRIPLES: [(usize, usize, usize); 7] =
    [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)];

/// `Im(e_u · conj(e_v))` as `(sign, imaginary unit)`, or `None` when real.
fn im_u_conj_v(triples: &[(usize, usize, usize)], u: usize, v: usize) -> Option<(i64, usize)> {
    let conj_sign = if v == 0 { 1 } else { -1 };
    let (s, w) = unit_product(triples, u, v);
    (w != 0).then_some((s * conj_sign, w))
}

/// Product of two octonion basis units `e_u e_v` (`u, v` in `0..8`).
pub fn octonion_unit_product(u: usize, v: usize) -> (i64, usize) {
    unit_product(&OCTONION_TRIPLES, u, v)
}

/// Product of two quaternion basis units (`1, i, j, k` = `0..4`).
pub fn quaternion_unit_product(u: usize, v: usize) -> (i64, usize) {
    unit_product(&QUATERNION_TRIPLES, u, v)
}

/// Bracket `[x, y] = Im(Σ_s x_s ȳ_s)` on `A^m` for a unital division algebra
/// `A` of dimension `units`, with layer 2 the imaginary part.
fn hermitian_type(name: String, triples: &[(usize, usize, usize)], units: usize, m: usize) -> RawAlgebra {
    let d1 = units * m;
    let mut brackets = Vec::new();
    for s in 0..m {
        for u in 0..units {
            for v in u + 1..units {
                if let Some((sign, w)) = im_u_conj_v(triples, u, v) {
                    brackets.push(RawBracket {
                        a: s * units + u + 1,
                        b: s * units + v + 1,
                        terms: vec![(d1 + w, Rational::from(sign))],
                    });
                }
            }
        }
    }
    RawAlgebra { name, layers: vec![d1, units - 1], brackets, inner_product: None }
}

/// Raw data of a built-in model. `n` is ignored for the octonionic model.
pub fn builtin_raw(model: Model, n: usize) -> Result<RawAlgebra> {
    match model {
        Model::Abelian => {
            if n < 1 {
                return Err(Error::InvalidParameter("abelian model needs n >= 1".into()));
            }
            Ok(RawAlgebra { name: format!("abelian:{}", n), layers: vec![n, 0], brackets: vec![], inner_product: None })
        }
        Model::Heisenberg => {
            if n < 2 {
                return Err(Error::InvalidParameter("heisenberg model needs n >= 2".into()));
            }
            let m = n - 1;
            let brackets = (1..=m)
                .map(|i| RawBracket { a: i, b: m + i, terms: vec![(2 * m + 1, Rational::one())] })
                .collect();
            Ok(RawAlgebra {
                name: format!("heisenberg:{}", n),
                layers: vec![2 * m, 1],
                brackets,
                inner_product: None,
            })
        }
        Model::Quaternionic => {
            if n < 2 {
                return Err(Error::InvalidParameter("quaternionic model needs n >= 2".into()));
            }
            Ok(hermitian_type(format!("quaternionic:{}", n), &QUATERNION_TRIPLES, 4, n - 1))
        }
        Model::Octonionic => Ok(hermitian_type("octonionic".into(), &OCTONION_TRIPLES, 8, 1)),
    }
}

/// A validated built-in model.
pub fn builtin(model: Model, n: usize) -> Result<GradedLieAlgebra> {
    GradedLieAlgebra::new(&builtin_raw(model, n)?)
}

/// The grading automorphism `θ_t`, scaling layer `j` by `t^j`.
#[derive(Clone, Debug)]
pub struct Dilation<'a> {
    t: Rational,
    algebra: &'a GradedLieAlgebra,
}

impl<'a> Dilation<'a> {
    pub fn new(algebra: &'a GradedLieAlgebra, t: Rational) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::InvalidParameter("dilation factor must be nonzero".into()));
        }
        Ok(Dilation { t, algebra })
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    /// Scale factor on basis vector `i`.
    pub fn factor(&self, i: usize) -> Rational {
        self.t.pow(self.algebra.layer(i) as i32)
    }

    pub fn matrix(&self) -> DenseMatrix {
        let n = self.algebra.dim();
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, self.factor(i));
        }
        m
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        x.iter().enumerate().map(|(i, v)| v * &self.factor(i)).collect()
    }

    /// `θ_s ∘ θ_t = θ_{st}`.
    pub fn compose(&self, other: &Dilation<'a>) -> Dilation<'a> {
        Dilation { t: &self.t * &other.t, algebra: self.algebra }
    }

    /// Checks `θ[e_a, e_b] = [θ e_a, θ e_b]` on every basis pair; returns the
    /// first failing pair (1-based).
    pub fn check_automorphism(&self) -> core::result::Result<(), (usize, usize)> {
        let n = self.algebra.dim();
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        };
        for a in 0..n {
            for b in 0..n {
                let lhs = self.apply(&self.algebra.bracket_vec(&unit(a), &unit(b)));
                let rhs = self.algebra.bracket_vec(&self.apply(&unit(a)), &self.apply(&unit(b)));
                if lhs != rhs {
                    return Err((a + 1, b + 1));
                }
            }
        }
        Ok(())
    }
}

/// Builds `θ_t` and verifies it is an automorphism.
pub fn dilate(algebra: &GradedLieAlgebra, t: Rational) -> Result<Dilation<'_>> {
    let d = Dilation::new(algebra, t)?;
    d.check_automorphism().map_err(|(a, b)| Error::IdentityFailure {
        identity: "dilation is a Lie algebra automorphism".into(),
        witness: format!("basis pair ({}, {})", a, b),
    })?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn heis_raw() -> RawAlgebra {
        RawAlgebra {
            name: "h".into(),
            layers: vec![2, 1],
            brackets: vec![RawBracket { a: 1, b: 2, terms: vec![(3, q(1))] }],
            inner_product: None,
        }
    }

    #[test]
    fn heisenberg_passes() {
        assert!(validate(&heis_raw()).unwrap().passed());
    }

    #[test]
    fn symmetric_bracket_fails_antisymmetry() {
        let mut raw = heis_raw();
        raw.brackets.push(RawBracket { a: 2, b: 1, terms: vec![(3, q(1))] });
        let report = validate(&raw).unwrap();
        assert_eq!(report.violations, vec![Violation::Antisymmetry { a: 1, b: 2, k: 3 }]);
    }

    #[test]
    fn bracket_into_wrong_layer_fails_grading() {
        let raw = RawAlgebra {
            name: "bad".into(),
            layers: vec![2, 1, 1],
            brackets: vec![RawBracket { a: 1, b: 2, terms: vec![(1, q(1))] }],
            inner_product: None,
        };
        let report = validate(&raw).unwrap();
        assert!(report.violations.contains(&Violation::Grading { a: 1, b: 2, k: 1 }));
    }

    #[test]
    fn structural_errors_are_not_violations() {
        let mut raw = heis_raw();
        raw.brackets[0].terms[0].0 = 9;
        assert_eq!(validate(&raw), Err(StructuralError::IndexOutOfRange { index: 9, dim: 3 }));
        let mut raw = heis_raw();
        raw.inner_product = Some(vec![vec![q(1)]]);
        assert!(matches!(validate(&raw), Err(StructuralError::InnerProductShape { .. })));
    }

    #[test]
    fn inner_product_checks() {
        let mut raw = heis_raw();
        raw.inner_product = Some(vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(0)], vec![q(1), q(0), q(2)]]);
        let v = validate(&raw).unwrap().violations;
        assert!(v.contains(&Violation::LayersNotOrthogonal { i: 1, j: 3 }));
        raw.inner_product = Some(vec![vec![q(1), q(0), q(0)], vec![q(0), q(-1), q(0)], vec![q(0), q(0), q(1)]]);
        let v = validate(&raw).unwrap().violations;
        assert_eq!(v, vec![Violation::InnerProductNotPositive { minor: 2 }]);
    }

    #[test]
    fn builtin_shapes() {
        assert_eq!(builtin(Model::Heisenberg, 2).unwrap().layers(), &[2, 1]);
        assert_eq!(builtin(Model::Quaternionic, 2).unwrap().layers(), &[4, 3]);
        assert_eq!(builtin(Model::Octonionic, 0).unwrap().layers(), &[8, 7]);
        assert!(builtin(Model::Heisenberg, 1).is_err());
        assert!(matches!(Model::parse("e8"), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn dilation_scales_layers() {
        let h = builtin(Model::Heisenberg, 2).unwrap();
        let d = dilate(&h, q(2)).unwrap();
        assert_eq!(d.apply(&[q(1), q(0), q(0)]), vec![q(2), q(0), q(0)]);
        assert_eq!(d.apply(&[q(0), q(0), q(1)]), vec![q(0), q(0), q(4)]);
        assert!(Dilation::new(&h, q(0)).is_err());
    }

    #[test]
    fn dilation_commutes_with_bracket() {
        let h = builtin(Model::Heisenberg, 2).unwrap();
        let d = dilate(&h, q(3)).unwrap();
        let e1 = [q(1), q(0), q(0)];
        let e2 = [q(0), q(1), q(0)];
        let lhs = d.apply(&h.bracket_vec(&e1, &e2));
        let rhs = h.bracket_vec(&d.apply(&e1), &d.apply(&e2));
        assert_eq!(lhs, vec![q(0), q(0), q(9)]);
        assert_eq!(lhs, rhs);
    }
}
