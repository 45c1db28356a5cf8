//! The exterior algebra `Λ g*` with its degree and weight gradings, the
//! Chevalley–Eilenberg coboundary `d₀`, its metric adjoint `δ`, Lie algebra
//! cohomology ranks and the bigraded ranks of `ker δ / im δ`.
//!
//! A dual basis monomial `ξ^{i_1} ∧ ... ∧ ξ^{i_k}` with `i_1 < ... < i_k` is a
//! bitmask. Its weight is the sum of the layers of its indices, so a layer-1
//! covector has weight 1 and a layer-2 covector weight 2.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::algebra::GradedLieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{sparse_rank, DenseMatrix, SparseVec};
use crate::rational::Rational;

/// Largest dimension for which the full exterior algebra is enumerated.
pub const MAX_EXTERIOR_DIM: usize = 20;

/// A sorted set of dual basis indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FormMonomial(pub u64);

impl FormMonomial {
    pub const ONE: FormMonomial = FormMonomial(0);

    pub fn from_indices(indices: &[usize]) -> Self {
        FormMonomial(indices.iter().fold(0u64, |m, &i| m | (1u64 << i)))
    }

    pub fn single(i: usize) -> Self {
        FormMonomial(1u64 << i)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1u64 << i) != 0
    }

    /// Indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        core::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    pub fn weight(self, algebra: &GradedLieAlgebra) -> usize {
        self.indices().map(|i| algebra.layer(i)).sum()
    }

    pub fn without(self, i: usize) -> Self {
        FormMonomial(self.0 & !(1u64 << i))
    }

    /// Number of indices of `self` strictly below `i`.
    pub fn count_below(self, i: usize) -> u32 {
        (self.0 & ((1u64 << i) - 1)).count_ones()
    }
}

impl PartialOrd for FormMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FormMonomial {
    /// Lexicographic order of the sorted index lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

/// `α ∧ β` for monomials: `None` if they share an index, otherwise the sign of
/// the sorting permutation and the product monomial.
pub fn wedge(a: FormMonomial, b: FormMonomial) -> Option<(i64, FormMonomial)> {
    if a.0 & b.0 != 0 {
        return None;
    }
    let inversions: u32 = b.indices().map(|j| (a.0 >> (j + 1)).count_ones()).sum();
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((sign, FormMonomial(a.0 | b.0)))
}

/// Element of `Λ g*` with exact coefficients.
pub type FiberForm = SparseVec<FormMonomial>;

/// `α ∧ β` for fiber forms.
pub fn wedge_forms(a: &FiberForm, b: &FiberForm) -> FiberForm {
    let mut out = FiberForm::new();
    for (ma, ca) in a.iter() {
        for (mb, cb) in b.iter() {
            if let Some((s, m)) = wedge(*ma, *mb) {
                out.add_term(m, &(&(ca * cb) * &Rational::from(s)));
            }
        }
    }
    out
}

/// `d₀ ξ^k = -Σ_{a<b} c^k_ab ξ^a ∧ ξ^b`.
pub fn d0_covector(algebra: &GradedLieAlgebra, k: usize) -> FiberForm {
    let mut out = FiberForm::new();
    let n = algebra.dim();
    for a in 0..n {
        for b in a + 1..n {
            let c = algebra.structure_constant(a, b, k);
            if !c.is_zero() {
                out.add_term(FormMonomial::from_indices(&[a, b]), &-c);
            }
        }
    }
    out
}

/// `d₀` on a monomial, extended as an odd derivation.
pub fn d0_monomial(algebra: &GradedLieAlgebra, m: FormMonomial) -> FiberForm {
    d0_monomial_with(&covector_table(algebra), m)
}

/// `d₀ ξ^k` for every `k`, precomputed.
pub fn covector_table(algebra: &GradedLieAlgebra) -> Vec<FiberForm> {
    (0..algebra.dim()).map(|k| d0_covector(algebra, k)).collect()
}

pub(crate) fn d0_monomial_with(table: &[FiberForm], m: FormMonomial) -> FiberForm {
    let mut out = FiberForm::new();
    for (pos, i) in m.indices().enumerate() {
        let below = FormMonomial(m.0 & ((1u64 << i) - 1));
        let above = FormMonomial(m.0 & !((1u64 << (i + 1)) - 1));
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        for (two, c) in table[i].iter() {
            let Some((s1, left)) = wedge(below, *two) else { continue };
            let Some((s2, full)) = wedge(left, above) else { continue };
            out.add_term(full, &(c * &Rational::from(sign * s1 * s2)));
        }
    }
    out
}

/// Monomials grouped by `(degree, weight)`, each group sorted.
#[derive(Clone, Debug)]
pub struct MonomialBlocks {
    blocks: BTreeMap<(usize, usize), Vec<FormMonomial>>,
    position: BTreeMap<FormMonomial, usize>,
}

impl MonomialBlocks {
    pub fn new(algebra: &GradedLieAlgebra) -> Result<Self> {
        let n = algebra.dim();
        if n > MAX_EXTERIOR_DIM {
            return Err(Error::InvalidParameter(format!(
                "exterior algebra of dimension {} exceeds supported {}",
                n, MAX_EXTERIOR_DIM
            )));
        }
        let mut blocks: BTreeMap<(usize, usize), Vec<FormMonomial>> = BTreeMap::new();
        for mask in 0..(1u64 << n) {
            let m = FormMonomial(mask);
            blocks.entry((m.degree(), m.weight(algebra))).or_default().push(m);
        }
        let mut position = BTreeMap::new();
        for list in blocks.values_mut() {
            list.sort();
            for (i, m) in list.iter().enumerate() {
                position.insert(*m, i);
            }
        }
        Ok(MonomialBlocks { blocks, position })
    }

    pub fn block(&self, degree: usize, weight: usize) -> &[FormMonomial] {
        self.blocks.get(&(degree, weight)).map_or(&[], Vec::as_slice)
    }

    /// All `(degree, weight)` keys with a nonempty block.
    pub fn keys(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.blocks.keys().copied()
    }

    pub fn weights_in_degree(&self, degree: usize) -> impl Iterator<Item = usize> + '_ {
        self.blocks.keys().filter(move |(k, _)| *k == degree).map(|(_, w)| *w)
    }

    /// Position of a monomial within its block.
    pub fn position(&self, m: FormMonomial) -> usize {
        self.position[&m]
    }

    pub fn to_dense(&self, degree: usize, weight: usize, form: &FiberForm) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.block(degree, weight).iter().map(|_| Rational::zero()).collect();
        for (m, c) in form.iter() {
            v[self.position(*m)] = c.clone();
        }
        v
    }

    pub fn from_dense(&self, degree: usize, weight: usize, v: &[Rational]) -> FiberForm {
        self.block(degree, weight).iter().zip(v).map(|(m, c)| (*m, c.clone())).collect()
    }
}

/// Exact sparse linear map on `Λ g*` with a declared degree shift and a
/// declared lower bound on the weight shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredOperator {
    degree_shift: i32,
    min_weight_shift: i32,
    columns: BTreeMap<FormMonomial, FiberForm>,
}

impl FilteredOperator {
    pub fn new(degree_shift: i32, min_weight_shift: i32) -> Self {
        FilteredOperator { degree_shift, min_weight_shift, columns: BTreeMap::new() }
    }

    pub fn degree_shift(&self) -> i32 {
        self.degree_shift
    }

    pub fn min_weight_shift(&self) -> i32 {
        self.min_weight_shift
    }

    pub fn set_column(&mut self, source: FormMonomial, image: FiberForm) {
        if image.is_zero() {
            self.columns.remove(&source);
        } else {
            self.columns.insert(source, image);
        }
    }

    pub fn column(&self, source: FormMonomial) -> Option<&FiberForm> {
        self.columns.get(&source)
    }

    /// Nonzero columns.
    pub fn columns(&self) -> impl Iterator<Item = (&FormMonomial, &FiberForm)> {
        self.columns.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.columns.values().map(SparseVec::len).sum()
    }

    pub fn apply(&self, form: &FiberForm) -> FiberForm {
        let mut out = FiberForm::new();
        for (m, c) in form.iter() {
            if let Some(col) = self.columns.get(m) {
                out.add_scaled(col, c);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FilteredOperator) -> FilteredOperator {
        let mut out = FilteredOperator::new(
            self.degree_shift + other.degree_shift,
            self.min_weight_shift + other.min_weight_shift,
        );
        for (m, col) in other.columns() {
            out.set_column(*m, self.apply(col));
        }
        out
    }

    /// Returns the first stored entry that breaks the declared degree shift
    /// or weight bound.
    pub fn check_shifts(&self, algebra: &GradedLieAlgebra) -> core::result::Result<(), (FormMonomial, FormMonomial)> {
        for (src, col) in self.columns() {
            for dst in col.keys() {
                let dk = dst.degree() as i32 - src.degree() as i32;
                let dw = dst.weight(algebra) as i32 - src.weight(algebra) as i32;
                if dk != self.degree_shift || dw < self.min_weight_shift {
                    return Err((*src, *dst));
                }
            }
        }
        Ok(())
    }

    /// Rank of the restriction to the `(degree, weight)` source block.
    pub fn rank_on_block(&self, blocks: &MonomialBlocks, degree: usize, weight: usize) -> usize {
        let mut index: BTreeMap<FormMonomial, usize> = BTreeMap::new();
        let rows = blocks.block(degree, weight).iter().filter_map(|m| self.column(*m)).map(|col| {
            col.iter()
                .map(|(t, c)| {
                    let next = index.len();
                    (*index.entry(*t).or_insert(next), c.clone())
                })
                .collect::<Vec<_>>()
        });
        let rows: Vec<_> = rows.collect();
        sparse_rank(rows)
    }

    /// Dense matrix of the map from the `(degree, weight)` block to the
    /// `(degree + shift, weight + weight_shift)` block.
    pub fn block_matrix(
        &self,
        blocks: &MonomialBlocks,
        degree: usize,
        weight: usize,
        weight_shift: i32,
    ) -> DenseMatrix {
        let src = blocks.block(degree, weight);
        let dk = degree as i32 + self.degree_shift;
        let dw = weight as i32 + weight_shift;
        let dst: &[FormMonomial] = if dk < 0 || dw < 0 { &[] } else { blocks.block(dk as usize, dw as usize) };
        let mut m = DenseMatrix::zeros(dst.len(), src.len());
        for (j, s) in src.iter().enumerate() {
            if let Some(col) = self.column(*s) {
                for (t, c) in col.iter() {
                    if let Ok(i) = dst.binary_search(t) {
                        m.set(i, j, c.clone());
                    }
                }
            }
        }
        m
    }
}

/// The Chevalley–Eilenberg coboundary on all of `Λ g*`: degree +1, weight
/// shift exactly 0.
pub fn d0(algebra: &GradedLieAlgebra) -> Result<FilteredOperator> {
    let blocks = MonomialBlocks::new(algebra)?;
    let table = covector_table(algebra);
    let mut op = FilteredOperator::new(1, 0);
    for key in blocks.keys().collect::<Vec<_>>() {
        for m in blocks.block(key.0, key.1) {
            op.set_column(*m, d0_monomial_with(&table, *m));
        }
    }
    Ok(op)
}

/// Inner product on `Λ g*` induced by the inner product of `g`: the dual
/// Gram matrix on covectors, extended by determinants of minors.
#[derive(Clone, Debug)]
pub struct ExteriorMetric {
    /// `None` when the basis is orthonormal.
    dual_gram: Option<DenseMatrix>,
}

impl ExteriorMetric {
    pub fn new(algebra: &GradedLieAlgebra) -> Self {
        if algebra.is_orthonormal() {
            ExteriorMetric { dual_gram: None }
        } else {
            let inv = algebra.inner_product().inverse().expect("validated inner product is invertible");
            ExteriorMetric { dual_gram: Some(inv) }
        }
    }

    pub fn is_orthonormal(&self) -> bool {
        self.dual_gram.is_none()
    }

    pub fn monomial_product(&self, a: FormMonomial, b: FormMonomial) -> Rational {
        match &self.dual_gram {
            None => {
                if a == b {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            Some(g) => {
                if a.degree() != b.degree() {
                    return Rational::zero();
                }
                let ia: Vec<usize> = a.indices().collect();
                let ib: Vec<usize> = b.indices().collect();
                let mut m = DenseMatrix::zeros(ia.len(), ib.len());
                for (r, &i) in ia.iter().enumerate() {
                    for (c, &j) in ib.iter().enumerate() {
                        m.set(r, c, g[(i, j)].clone());
                    }
                }
                m.determinant()
            }
        }
    }

    pub fn inner(&self, a: &FiberForm, b: &FiberForm) -> Rational {
        let mut acc = Rational::zero();
        match &self.dual_gram {
            None => {
                for (m, c) in a.iter() {
                    if let Some(d) = b.get(m) {
                        acc += &(c * d);
                    }
                }
            }
            Some(_) => {
                for (ma, ca) in a.iter() {
                    for (mb, cb) in b.iter() {
                        let g = self.monomial_product(*ma, *mb);
                        if !g.is_zero() {
                            acc += &(&(ca * cb) * &g);
                        }
                    }
                }
            }
        }
        acc
    }

    /// Gram matrix of a block of monomials.
    pub fn gram(&self, block: &[FormMonomial]) -> DenseMatrix {
        let n = block.len();
        match &self.dual_gram {
            None => DenseMatrix::identity(n),
            Some(_) => {
                let mut m = DenseMatrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        m.set(i, j, self.monomial_product(block[i], block[j]));
                    }
                }
                m
            }
        }
    }
}

/// The metric adjoint of `d₀`: degree −1, weight shift exactly 0.
pub fn delta(algebra: &GradedLieAlgebra) -> Result<FilteredOperator> {
    let blocks = MonomialBlocks::new(algebra)?;
    let d = d0(algebra)?;
    delta_from(algebra, &blocks, &d)
}

/// [`delta`] from precomputed blocks and `d₀`.
pub fn delta_from(
    algebra: &GradedLieAlgebra,
    blocks: &MonomialBlocks,
    d: &FilteredOperator,
) -> Result<FilteredOperator> {
    let metric = ExteriorMetric::new(algebra);
    let mut op = FilteredOperator::new(-1, 0);
    if metric.is_orthonormal() {
        let mut cols: BTreeMap<FormMonomial, FiberForm> = BTreeMap::new();
        for (src, col) in d.columns() {
            for (dst, c) in col.iter() {
                cols.entry(*dst).or_default().add_term(*src, c);
            }
        }
        for (m, col) in cols {
            op.set_column(m, col);
        }
        return Ok(op);
    }
    // δ = Γ_{k-1}^{-1} d₀ᵀ Γ_k on each weight block.
    for (k, w) in blocks.keys().collect::<Vec<_>>() {
        if k == 0 {
            continue;
        }
        let src = blocks.block(k, w);
        let dst = blocks.block(k - 1, w);
        if dst.is_empty() {
            continue;
        }
        let dmat = d.block_matrix(blocks, k - 1, w, 0);
        let g_src = metric.gram(src);
        let g_dst_inv = metric.gram(dst).inverse().expect("Gram matrix of an inner product is invertible");
        let m = g_dst_inv.mul(&dmat.transpose()).mul(&g_src);
        for (j, s) in src.iter().enumerate() {
            let col: FiberForm = (0..dst.len()).map(|i| (dst[i], m[(i, j)].clone())).collect();
            op.set_column(*s, col);
        }
    }
    Ok(op)
}

/// Betti numbers `b_k = dim H^k(g)` for `k = 0..=dim`.
pub fn cohomology_ranks(algebra: &GradedLieAlgebra) -> Result<Vec<usize>> {
    let blocks = MonomialBlocks::new(algebra)?;
    let d = d0(algebra)?;
    Ok(cohomology_ranks_from(algebra, &blocks, &d))
}

/// `rank(d₀ |Λ^k)` for `k = 0..=dim`.
pub fn d0_ranks(algebra: &GradedLieAlgebra, blocks: &MonomialBlocks, d: &FilteredOperator) -> Vec<usize> {
    let n = algebra.dim();
    let mut ranks = alloc::vec![0usize; n + 1];
    for (k, w) in blocks.keys() {
        ranks[k] += d.rank_on_block(blocks, k, w);
    }
    ranks
}

/// [`cohomology_ranks`] from precomputed blocks and `d₀`.
pub fn cohomology_ranks_from(algebra: &GradedLieAlgebra, blocks: &MonomialBlocks, d: &FilteredOperator) -> Vec<usize> {
    let n = algebra.dim();
    let ranks = d0_ranks(algebra, blocks, d);
    (0..=n)
        .map(|k| {
            let dim: usize = blocks.weights_in_degree(k).map(|w| blocks.block(k, w).len()).sum();
            dim - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }
        })
        .collect()
}

/// One bigraded component of `ker δ / im δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BggEntry {
    pub degree: usize,
    pub weight: usize,
    pub rank: usize,
}

/// Ranks of `ker δ / im δ` per `(degree, weight)`; zero components omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BggTable {
    pub dim: usize,
    pub homogeneous_dimension: usize,
    pub entries: Vec<BggEntry>,
}

impl BggTable {
    pub fn degree_total(&self, degree: usize) -> usize {
        self.entries.iter().filter(|e| e.degree == degree).map(|e| e.rank).sum()
    }

    /// `(weight, rank)` pairs in degree `k`.
    pub fn in_degree(&self, degree: usize) -> Vec<(usize, usize)> {
        self.entries.iter().filter(|e| e.degree == degree).map(|e| (e.weight, e.rank)).collect()
    }

    pub fn rank_at(&self, degree: usize, weight: usize) -> usize {
        self.entries.iter().find(|e| e.degree == degree && e.weight == weight).map_or(0, |e| e.rank)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries.iter().map(|e| if e.degree % 2 == 0 { e.rank as i64 } else { -(e.rank as i64) }).sum()
    }
}

/// Bigraded ranks of `ker δ / im δ`, computed blockwise from `δ`.
pub fn bgg_fiber(algebra: &GradedLieAlgebra) -> Result<BggTable> {
    let blocks = MonomialBlocks::new(algebra)?;
    let d = d0(algebra)?;
    let del = delta_from(algebra, &blocks, &d)?;
    Ok(bgg_fiber_from(algebra, &blocks, &del))
}

/// [`bgg_fiber`] from precomputed blocks and `δ`.
pub fn bgg_fiber_from(algebra: &GradedLieAlgebra, blocks: &MonomialBlocks, del: &FilteredOperator) -> BggTable {
    let mut rank_cache: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut rank = |k: usize, w: usize| -> usize {
        *rank_cache.entry((k, w)).or_insert_with(|| del.rank_on_block(blocks, k, w))
    };
    let mut entries = Vec::new();
    for (k, w) in blocks.keys().collect::<Vec<_>>() {
        let dim = blocks.block(k, w).len();
        // dim ker δ|(k,w) − dim im δ|(k+1,w)
        let r = dim - rank(k, w) - rank(k + 1, w);
        if r > 0 {
            entries.push(BggEntry { degree: k, weight: w, rank: r });
        }
    }
    BggTable { dim: algebra.dim(), homogeneous_dimension: algebra.homogeneous_dimension(), entries }
}

/// Pullback of covectors by `θ_t`: scales a weight-`w` monomial by `t^w`.
pub fn dilation_pullback(algebra: &GradedLieAlgebra, t: &Rational) -> Result<FilteredOperator> {
    let blocks = MonomialBlocks::new(algebra)?;
    let mut op = FilteredOperator::new(0, 0);
    for (k, w) in blocks.keys().collect::<Vec<_>>() {
        for m in blocks.block(k, w) {
            op.set_column(*m, FiberForm::from_terms([(*m, t.pow(w as i32))]));
        }
    }
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, Model};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn mono(ix: &[usize]) -> FormMonomial {
        FormMonomial::from_indices(ix)
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge(mono(&[0]), mono(&[1])), Some((1, mono(&[0, 1]))));
        assert_eq!(wedge(mono(&[1]), mono(&[0])), Some((-1, mono(&[0, 1]))));
        assert_eq!(wedge(mono(&[0, 2]), mono(&[1])), Some((-1, mono(&[0, 1, 2]))));
        assert_eq!(wedge(mono(&[2]), mono(&[0, 1])), Some((1, mono(&[0, 1, 2]))));
        assert_eq!(wedge(mono(&[0]), mono(&[0, 1])), None);
    }

    #[test]
    fn lexicographic_order() {
        let mut v = [mono(&[1, 2]), mono(&[0, 2]), mono(&[0, 1]), mono(&[0])];
        v.sort();
        assert_eq!(v, [mono(&[0]), mono(&[0, 1]), mono(&[0, 2]), mono(&[1, 2])]);
    }

    #[test]
    fn heisenberg_d0() {
        let h = builtin(Model::Heisenberg, 2).unwrap();
        assert_eq!(d0_covector(&h, 2), FiberForm::from_terms([(mono(&[0, 1]), q(-1))]));
        assert!(d0_covector(&h, 0).is_zero());
        assert!(d0_monomial(&h, mono(&[0, 2])).is_zero());
        let d = d0(&h).unwrap();
        assert!(d.compose(&d).is_zero());
        assert!(d.check_shifts(&h).is_ok());
    }

    #[test]
    fn heisenberg_delta() {
        let h = builtin(Model::Heisenberg, 2).unwrap();
        let del = delta(&h).unwrap();
        assert_eq!(del.apply(&FiberForm::unit(mono(&[0, 1]))), FiberForm::from_terms([(mono(&[2]), q(-1))]));
        for i in 0..3 {
            assert!(del.apply(&FiberForm::unit(mono(&[i]))).is_zero());
        }
    }

    #[test]
    fn heisenberg_ranks() {
        let h = builtin(Model::Heisenberg, 2).unwrap();
        assert_eq!(cohomology_ranks(&h).unwrap(), [1, 2, 2, 1]);
        let t = bgg_fiber(&h).unwrap();
        assert_eq!(t.in_degree(0), [(0, 1)]);
        assert_eq!(t.in_degree(1), [(1, 2)]);
        assert_eq!(t.in_degree(2), [(3, 2)]);
        assert_eq!(t.in_degree(3), [(4, 1)]);
    }

    #[test]
    fn abelian_is_full_exterior_algebra() {
        let a = builtin(Model::Abelian, 3).unwrap();
        assert!(d0(&a).unwrap().is_zero());
        assert!(delta(&a).unwrap().is_zero());
        assert_eq!(cohomology_ranks(&a).unwrap(), [1, 3, 3, 1]);
        let t = bgg_fiber(&a).unwrap();
        assert_eq!(t.in_degree(2), [(2, 3)]);
    }
}
