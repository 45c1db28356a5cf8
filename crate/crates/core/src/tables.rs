//! Tables derived from the bigraded fiber: uniform-boundedness strip bounds,
//! the truncated rank sequence, and the decision whether a filtered linear
//! map is of the form `(1 + ad Y) ∘ θ_t`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{Dilation, GradedLieAlgebra};
use crate::error::{Error, Result};
use crate::exterior::bgg_fiber;
use crate::linalg::{sparse_rank, DenseMatrix};
use crate::poly::Exponents;
use crate::rational::Rational;
use crate::rumin::{HarmonicKey, HarmonicSection, RuminComplex};

/// `B = (ν/2) / |ν/2 − w|`, or infinity at `w = ν/2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StripBound {
    Finite(Rational),
    Infinite,
}

impl StripBound {
    pub fn new(nu: usize, weight: usize) -> Self {
        let gap = (nu as i64 - 2 * weight as i64).abs();
        if gap == 0 {
            StripBound::Infinite
        } else {
            StripBound::Finite(Rational::new(nu as i64, gap))
        }
    }

    /// `(numerator, denominator)`, with `(1, 0)` for infinity.
    pub fn parts(&self) -> (String, String) {
        match self {
            StripBound::Finite(r) => (format!("{}", r.numer()), format!("{}", r.denom())),
            StripBound::Infinite => (String::from("1"), String::from("0")),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, StripBound::Finite(_))
    }
}

impl fmt::Display for StripBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StripBound::Finite(r) => write!(f, "{}", r),
            StripBound::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripRow {
    pub degree: usize,
    pub weight: usize,
    pub rank: usize,
    pub bound: StripBound,
    /// `w ∈ {0, ν}`: the bound is exactly 1.
    pub exceptional: bool,
    /// Whether `s = 1` lies inside the strip `|Re s| < B`.
    pub s_one_inside: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripTable {
    pub homogeneous_dimension: usize,
    pub rows: Vec<StripRow>,
}

/// One row per nonzero component of `ker δ / im δ`.
pub fn strip_table(algebra: &GradedLieAlgebra) -> Result<StripTable> {
    let nu = algebra.homogeneous_dimension();
    let table = bgg_fiber(algebra)?;
    let rows = table
        .entries
        .iter()
        .map(|e| {
            let bound = StripBound::new(nu, e.weight);
            let exceptional = e.weight == 0 || e.weight == nu;
            let s_one_inside = match &bound {
                StripBound::Infinite => true,
                StripBound::Finite(b) => *b > Rational::one(),
            };
            StripRow { degree: e.degree, weight: e.weight, rank: e.rank, bound, exceptional, s_one_inside }
        })
        .collect();
    Ok(StripTable { homogeneous_dimension: nu, rows })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationRow {
    pub degree: usize,
    pub weight: usize,
    pub rank: usize,
}

/// Ranks of the complex cut at the middle degree of an odd-dimensional
/// algebra: the fiber ranks in degrees `≤ (m−1)/2`, then in degree
/// `(m+1)/2` the rank of the symbol image of `D` out of degree `(m−1)/2`,
/// per target weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationTable {
    pub dim: usize,
    pub middle_degree: usize,
    pub rows: Vec<TruncationRow>,
    /// `Σ (−1)^k` of the untruncated fiber ranks.
    pub full_euler_characteristic: i64,
    pub note: &'static str,
}

impl TruncationTable {
    pub fn degree_totals(&self) -> Vec<usize> {
        let mut out = alloc::vec![0; self.middle_degree + 1];
        for r in &self.rows {
            out[r.degree] += r.rank;
        }
        out
    }
}

pub const INDEX_NOTE: &str = "index-one property of the truncated operator is analytic and not verified";

pub fn truncation_ranks(algebra: &GradedLieAlgebra) -> Result<TruncationTable> {
    let m = algebra.dim();
    if m % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "truncation needs an odd total dimension, got {}",
            m
        )));
    }
    let k0 = (m - 1) / 2;
    let table = bgg_fiber(algebra)?;
    let mut rows: Vec<TruncationRow> = table
        .entries
        .iter()
        .filter(|e| e.degree <= k0)
        .map(|e| TruncationRow { degree: e.degree, weight: e.weight, rank: e.rank })
        .collect();

    // D preserves weight + homogeneous coefficient degree, so D(u^e h) with
    // h of weight w has constant terms only in target weight w + |e|. Those
    // constant terms form the principal symbol.
    let cx = RuminComplex::new(algebra)?;
    let targets: Vec<usize> = table.in_degree(k0 + 1).iter().map(|(w, _)| *w).collect();
    let mut symbol_rows: BTreeMap<usize, Vec<Vec<(usize, Rational)>>> = BTreeMap::new();
    for (index, h) in cx.fiber().harmonic().iter().enumerate().filter(|(_, h)| h.degree == k0) {
        for &tw in targets.iter().filter(|&&tw| tw > h.weight) {
            for e in Exponents::of_homogeneous_degree(algebra, tw - h.weight) {
                let dh = cx.rumin_d(&HarmonicSection::unit(HarmonicKey { index, exps: e }))?;
                let row: Vec<(usize, Rational)> = dh
                    .iter()
                    .filter(|(k, _)| k.exps.is_constant())
                    .map(|(k, c)| (k.index, c.clone()))
                    .collect();
                symbol_rows.entry(tw).or_default().push(row);
            }
        }
    }
    for (weight, block) in symbol_rows {
        let rank = sparse_rank(block);
        if rank > 0 {
            rows.push(TruncationRow { degree: k0 + 1, weight, rank });
        }
    }
    Ok(TruncationTable {
        dim: m,
        middle_degree: k0 + 1,
        rows,
        full_euler_characteristic: table.euler_characteristic(),
        note: INDEX_NOTE,
    })
}

/// Why a matrix is not of the form `(1 + ad Y) ∘ θ_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QcObstruction {
    /// Nonzero entry mapping layer 2 into layer 1.
    Layer2ToLayer1 { row: usize, col: usize },
    Layer1NotScalar,
    NonPositiveScale,
    Layer2NotScaleSquared,
    NotInnerDerivation,
}

impl fmt::Display for QcObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QcObstruction::Layer2ToLayer1 { row, col } => {
                write!(f, "layer-2 to layer-1 block nonzero (entry {},{})", row + 1, col + 1)
            }
            QcObstruction::Layer1NotScalar => write!(f, "layer-1 block is not a multiple of the identity"),
            QcObstruction::NonPositiveScale => write!(f, "layer-1 scale t is not positive"),
            QcObstruction::Layer2NotScaleSquared => write!(f, "layer-2 block is not t^2 times the identity"),
            QcObstruction::NotInnerDerivation => {
                write!(f, "layer-1 to layer-2 block is not t*ad(Y) for any Y in layer 1")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QcDecision {
    /// `A = (1 + ad Y) ∘ θ_t`; `y` holds the coordinates of `Y` on the full
    /// basis (zero outside layer 1).
    Yes { t: Rational, y: Vec<Rational> },
    No(QcObstruction),
}

/// Matrix of `ad Y` in the basis of the algebra.
pub fn ad_matrix(algebra: &GradedLieAlgebra, y: &[Rational]) -> DenseMatrix {
    let n = algebra.dim();
    let mut m = DenseMatrix::zeros(n, n);
    for (a, ya) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for b in 0..n {
            for (k, c) in algebra.bracket(a, b) {
                let v = &m[(*k, b)] + &(ya * c);
                m.set(*k, b, v);
            }
        }
    }
    m
}

/// `(1 + ad Y) ∘ θ_t`.
pub fn qc_candidate(algebra: &GradedLieAlgebra, t: &Rational, y: &[Rational]) -> Result<DenseMatrix> {
    let theta = Dilation::new(algebra, t.clone())?.matrix();
    let one_plus = DenseMatrix::identity(algebra.dim()).add(&ad_matrix(algebra, y));
    Ok(one_plus.mul(&theta))
}

pub fn quasiconformal_check(algebra: &GradedLieAlgebra, a: &DenseMatrix) -> Result<QcDecision> {
    let n = algebra.dim();
    if a.nrows() != n || a.ncols() != n {
        return Err(Error::InvalidParameter(format!(
            "matrix is {}x{}, algebra has dimension {}",
            a.nrows(),
            a.ncols(),
            n
        )));
    }
    if algebra.step() > 2 {
        return Err(Error::StepTooLarge { step: algebra.step() });
    }
    let l1: Vec<usize> = (0..n).filter(|&i| algebra.layer(i) == 1).collect();
    let l2: Vec<usize> = (0..n).filter(|&i| algebra.layer(i) == 2).collect();
    for &r in &l1 {
        for &c in &l2 {
            if !a[(r, c)].is_zero() {
                return Ok(QcDecision::No(QcObstruction::Layer2ToLayer1 { row: r, col: c }));
            }
        }
    }
    if l1.is_empty() {
        return Err(Error::InvalidParameter(String::from("algebra has an empty first layer")));
    }
    let t = a[(l1[0], l1[0])].clone();
    for &r in &l1 {
        for &c in &l1 {
            let want = if r == c { t.clone() } else { Rational::zero() };
            if a[(r, c)] != want {
                return Ok(QcDecision::No(QcObstruction::Layer1NotScalar));
            }
        }
    }
    if !t.is_positive() {
        return Ok(QcDecision::No(QcObstruction::NonPositiveScale));
    }
    let t2 = &t * &t;
    for &r in &l2 {
        for &c in &l2 {
            let want = if r == c { t2.clone() } else { Rational::zero() };
            if a[(r, c)] != want {
                return Ok(QcDecision::No(QcObstruction::Layer2NotScaleSquared));
            }
        }
    }
    // A₂₁[k][b] = t Σ_a y_a c^k_ab: one equation per (k, b).
    let tinv = t.recip();
    let mut system = Vec::new();
    let mut rhs = Vec::new();
    for &k in &l2 {
        for &b in &l1 {
            system.push(l1.iter().map(|&a2| algebra.structure_constant(a2, b, k)).collect::<Vec<_>>());
            rhs.push(&a[(k, b)] * &tinv);
        }
    }
    let coords = if system.is_empty() {
        alloc::vec![Rational::zero(); l1.len()]
    } else {
        match DenseMatrix::from_rows(system).solve(&rhs) {
            Some(x) => x,
            None => return Ok(QcDecision::No(QcObstruction::NotInnerDerivation)),
        }
    };
    let mut y = alloc::vec![Rational::zero(); n];
    for (i, &a1) in l1.iter().enumerate() {
        y[a1] = coords[i].clone();
    }
    Ok(QcDecision::Yes { t, y })
}
