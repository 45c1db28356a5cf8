//! The Rumin construction on polynomial-coefficient forms.
//!
//! With `δ` the pointwise adjoint of `d₀`, the operator `dδ + δd` maps
//! sections of `im δ` to themselves. Its weight-0 part `L₀ = d₀δ + δd₀` is a
//! bundle map, invertible on `im δ` blockwise, and the rest `N` strictly
//! raises the form weight, so
//!
//! ```text
//! G = Σ_{j ≥ 0} (−L₀⁻¹N)^j L₀⁻¹
//! ```
//!
//! is a finite sum inverting `dδ + δd` on `im δ`. From it: `q = Gδ`,
//! `π = dq + qd`, the retraction `ι` (pointwise harmonic projection onto
//! `H = ker δ ∩ ker d₀`, a model of `ker δ / im δ`), its inverse `1 − qd` on
//! harmonic sections, and `D = ι d ι⁻¹`.
//!
//! All of these preserve polynomial degree bounds: on the space `V_P` of
//! forms with coefficients of degree `≤ P` every operator maps `V_P` into
//! itself, so the operators are stored as exact tables over the spanning set
//! of `V_P` and identities are checked by composing tables.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::algebra::GradedLieAlgebra;
use crate::budget::Budget;
use crate::calculus::{FormKey, GroupCalculus, PolyForm};
#[cfg(test)]
use crate::exterior::FormMonomial;
use crate::error::{Error, Result};
use crate::exterior::{bgg_fiber_from, cohomology_ranks_from, d0, delta_from, ExteriorMetric, FiberForm, FilteredOperator, MonomialBlocks};
use crate::linalg::{sparse_kernel, sparse_rank, DenseMatrix, LinearTable, SparseVec};
use crate::poly::Exponents;
use crate::rational::Rational;
use crate::report::{IdentityCheck, VerificationReport};

/// A harmonic fiber form: basis vector of `H = ker δ ∩ ker d₀` in one
/// `(degree, weight)` block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicForm {
    pub degree: usize,
    pub weight: usize,
    pub form: FiberForm,
}

/// Basis element `u^exps · h_index` of the harmonic sections.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HarmonicKey {
    pub index: usize,
    pub exps: Exponents,
}

impl fmt::Display for HarmonicKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} h{}", self.exps, self.index + 1)
    }
}

/// A section of `H` with polynomial coefficients.
pub type HarmonicSection = SparseVec<HarmonicKey>;

/// Pointwise (bundle map) data on `Λ g*`.
#[derive(Clone, Debug)]
pub struct FiberData {
    blocks: MonomialBlocks,
    d0: FilteredOperator,
    delta: FilteredOperator,
    l0: FilteredOperator,
    /// `L₀⁻¹` on `im δ₀`, per `(degree, weight)` block.
    l0_inv: BTreeMap<(usize, usize), DenseMatrix>,
    harmonic: Vec<HarmonicForm>,
    /// Offset of the block's harmonic forms in `harmonic`, and the matrix
    /// `(BᵀΓB)⁻¹BᵀΓ` taking block coordinates to harmonic coordinates.
    extract: BTreeMap<(usize, usize), (usize, DenseMatrix)>,
}

impl FiberData {
    pub fn new(algebra: &GradedLieAlgebra) -> Result<Self> {
        let blocks = MonomialBlocks::new(algebra)?;
        let d = d0(algebra)?;
        let del = delta_from(algebra, &blocks, &d)?;
        let metric = ExteriorMetric::new(algebra);
        let mut l0 = FilteredOperator::new(0, 0);
        for (k, w) in blocks.keys().collect::<Vec<_>>() {
            for m in blocks.block(k, w) {
                let unit = FiberForm::unit(*m);
                let mut col = d.apply(&del.apply(&unit));
                col.add(&del.apply(&d.apply(&unit)));
                l0.set_column(*m, col);
            }
        }
        let mut l0_inv = BTreeMap::new();
        let mut harmonic = Vec::new();
        let mut extract = BTreeMap::new();
        for (k, w) in blocks.keys().collect::<Vec<_>>() {
            let size = blocks.block(k, w).len();
            let lap = l0.block_matrix(&blocks, k, w, 0);
            // im δ₀ in this block is spanned by columns of δ out of (k+1, w).
            let del_in = del.block_matrix(&blocks, k + 1, w, 0);
            let basis_cols = del_in.independent_columns();
            if !basis_cols.is_empty() {
                let cols: Vec<Vec<Rational>> = basis_cols.iter().map(|&c| del_in.column(c)).collect();
                let b = DenseMatrix::from_columns(size, &cols);
                let left = lap.mul(&b).left_inverse().ok_or(Error::SingularBlock { degree: k, weight: w })?;
                l0_inv.insert((k, w), b.mul(&left));
            }
            let mut stacked = Vec::new();
            let up = d.block_matrix(&blocks, k, w, 0);
            let down = del.block_matrix(&blocks, k, w, 0);
            for r in 0..up.nrows() {
                stacked.push(up.row(r).to_vec());
            }
            for r in 0..down.nrows() {
                stacked.push(down.row(r).to_vec());
            }
            let kernel = if stacked.is_empty() {
                (0..size).map(|i| (0..size).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
            } else {
                DenseMatrix::from_rows(stacked).kernel()
            };
            if kernel.is_empty() {
                continue;
            }
            let b = DenseMatrix::from_columns(size, &kernel);
            let gram = metric.gram(blocks.block(k, w));
            let bt_g = b.transpose().mul(&gram);
            let inv = bt_g.mul(&b).inverse().expect("Gram matrix of independent vectors is invertible");
            extract.insert((k, w), (harmonic.len(), inv.mul(&bt_g)));
            for v in &kernel {
                harmonic.push(HarmonicForm { degree: k, weight: w, form: blocks.from_dense(k, w, v) });
            }
        }
        Ok(FiberData { blocks, d0: d, delta: del, l0, l0_inv, harmonic, extract })
    }

    pub fn blocks(&self) -> &MonomialBlocks {
        &self.blocks
    }

    pub fn d0(&self) -> &FilteredOperator {
        &self.d0
    }

    pub fn delta(&self) -> &FilteredOperator {
        &self.delta
    }

    pub fn harmonic(&self) -> &[HarmonicForm] {
        &self.harmonic
    }

    /// Applies a fiber operator coefficientwise.
    pub fn pointwise(op: &FilteredOperator, form: &PolyForm) -> PolyForm {
        let mut out = PolyForm::new();
        for (key, c) in form.iter() {
            if let Some(col) = op.column(key.form) {
                for (m, v) in col.iter() {
                    out.add_term(FormKey::new(*m, key.exps.clone()), &(c * v));
                }
            }
        }
        out
    }

    /// Groups a form by coefficient monomial and fiber block.
    fn split(&self, algebra: &GradedLieAlgebra, form: &PolyForm) -> BTreeMap<(Exponents, usize, usize), FiberForm> {
        let mut parts: BTreeMap<(Exponents, usize, usize), FiberForm> = BTreeMap::new();
        for (key, c) in form.iter() {
            parts
                .entry((key.exps.clone(), key.form.degree(), key.form.weight(algebra)))
                .or_default()
                .add_term(key.form, c);
        }
        parts
    }

    /// `L₀⁻¹` applied coefficientwise; the input must be a section of `im δ`.
    pub fn l0_inverse(&self, algebra: &GradedLieAlgebra, form: &PolyForm) -> PolyForm {
        let mut out = PolyForm::new();
        for ((e, k, w), part) in self.split(algebra, form) {
            let Some(m) = self.l0_inv.get(&(k, w)) else { continue };
            let y = self.blocks.to_dense(k, w, &part);
            let x = m.mul_vec(&y);
            for (mono, c) in self.blocks.block(k, w).iter().zip(x) {
                out.add_term(FormKey::new(*mono, e.clone()), &c);
            }
        }
        out
    }

    /// Harmonic coordinates of the pointwise orthogonal projection onto `H`.
    pub fn project(&self, algebra: &GradedLieAlgebra, form: &PolyForm) -> HarmonicSection {
        let mut out = HarmonicSection::new();
        for ((e, k, w), part) in self.split(algebra, form) {
            let Some((offset, m)) = self.extract.get(&(k, w)) else { continue };
            let coords = m.mul_vec(&self.blocks.to_dense(k, w, &part));
            for (i, c) in coords.into_iter().enumerate() {
                out.add_term(HarmonicKey { index: offset + i, exps: e.clone() }, &c);
            }
        }
        out
    }

    /// The polynomial form `Σ f_i h_i` of a harmonic section.
    pub fn lift(&self, section: &HarmonicSection) -> PolyForm {
        let mut out = PolyForm::new();
        for (key, c) in section.iter() {
            for (m, v) in self.harmonic[key.index].form.iter() {
                out.add_term(FormKey::new(*m, key.exps.clone()), &(c * v));
            }
        }
        out
    }

    /// `(degree, weight)` of a harmonic basis index.
    pub fn component(&self, index: usize) -> (usize, usize) {
        let h = &self.harmonic[index];
        (h.degree, h.weight)
    }
}

/// The Rumin operators on polynomial forms, computed on demand. `d` is
/// memoized per basis element.
pub struct RuminComplex<'a> {
    calc: GroupCalculus<'a>,
    fiber: FiberData,
    d_cache: RefCell<BTreeMap<FormKey, PolyForm>>,
    max_terms: core::cell::Cell<usize>,
}

impl<'a> RuminComplex<'a> {
    pub fn new(algebra: &'a GradedLieAlgebra) -> Result<Self> {
        let calc = GroupCalculus::new(algebra)?;
        let fiber = FiberData::new(algebra)?;
        Ok(RuminComplex { calc, fiber, d_cache: RefCell::new(BTreeMap::new()), max_terms: core::cell::Cell::new(0) })
    }

    /// Uses a precomputed table for `d` where it has columns.
    pub fn with_d_table(algebra: &'a GradedLieAlgebra, table: &LinearTable<FormKey, FormKey>) -> Result<Self> {
        let c = Self::new(algebra)?;
        {
            let mut cache = c.d_cache.borrow_mut();
            for (k, v) in table.columns() {
                cache.insert(k.clone(), v.clone());
            }
        }
        Ok(c)
    }

    pub fn algebra(&self) -> &'a GradedLieAlgebra {
        self.calc.algebra()
    }

    pub fn calculus(&self) -> &GroupCalculus<'a> {
        &self.calc
    }

    pub fn fiber(&self) -> &FiberData {
        &self.fiber
    }

    pub fn d(&self, form: &PolyForm) -> PolyForm {
        let mut out = PolyForm::new();
        for (k, c) in form.iter() {
            let hit = self.d_cache.borrow().get(k).cloned();
            let col = match hit {
                Some(col) => col,
                None => {
                    let col = self.calc.d_key(k);
                    self.d_cache.borrow_mut().insert(k.clone(), col.clone());
                    col
                }
            };
            out.add_scaled(&col, c);
        }
        out
    }

    pub fn delta(&self, form: &PolyForm) -> PolyForm {
        FiberData::pointwise(&self.fiber.delta, form)
    }

    /// `dδ + δd`.
    pub fn laplacian(&self, form: &PolyForm) -> PolyForm {
        let mut out = self.d(&self.delta(form));
        out.add(&self.delta(&self.d(form)));
        out
    }

    /// Solves `(dδ + δd) x = y` for `x` in `im δ`, given `y` in `im δ`, by the
    /// Neumann series. Returns `x` and the number of nonzero terms used.
    pub fn invert_on_im_delta(&self, y: &PolyForm) -> Result<(PolyForm, usize)> {
        let alg = self.algebra();
        let limit = alg.homogeneous_dimension() + 2;
        let mut term = self.fiber.l0_inverse(alg, y);
        let mut sum = PolyForm::new();
        let mut terms = 0;
        while !term.is_zero() {
            if terms > limit {
                return Err(Error::IdentityFailure {
                    identity: String::from("Neumann series terminates"),
                    witness: crate::calculus::describe(y),
                });
            }
            sum.add(&term);
            terms += 1;
            let mut n_term = self.laplacian(&term);
            n_term.sub(&FiberData::pointwise(&self.fiber.l0, &term));
            term = self.fiber.l0_inverse(alg, &n_term).scaled(&Rational::from(-1));
        }
        if terms > self.max_terms.get() {
            self.max_terms.set(terms);
        }
        Ok((sum, terms))
    }

    /// Largest Neumann term count seen so far.
    pub fn neumann_max_terms(&self) -> usize {
        self.max_terms.get()
    }

    /// `q = (dδ + δd)⁻¹ δ`.
    pub fn q(&self, form: &PolyForm) -> Result<PolyForm> {
        let y = self.delta(form);
        if y.is_zero() {
            return Ok(y);
        }
        Ok(self.invert_on_im_delta(&y)?.0)
    }

    /// `π = dq + qd`.
    pub fn pi(&self, form: &PolyForm) -> Result<PolyForm> {
        let mut out = self.d(&self.q(form)?);
        out.add(&self.q(&self.d(form))?);
        Ok(out)
    }

    /// `ι`: pointwise harmonic projection, in harmonic coordinates.
    pub fn iota(&self, form: &PolyForm) -> HarmonicSection {
        self.fiber.project(self.algebra(), form)
    }

    /// `ι⁻¹ = (1 − qd)` applied to the harmonic lift.
    pub fn iota_inverse(&self, section: &HarmonicSection) -> Result<PolyForm> {
        let h = self.fiber.lift(section);
        let mut out = h.clone();
        out.sub(&self.q(&self.d(&h))?);
        Ok(out)
    }

    /// `D = ι d ι⁻¹`.
    pub fn rumin_d(&self, section: &HarmonicSection) -> Result<HarmonicSection> {
        Ok(self.iota(&self.d(&self.iota_inverse(section)?)))
    }

    /// Harmonic sections `u^e h_i` with `deg e ≤ max_degree`.
    pub fn harmonic_span(&self, max_degree: usize) -> Vec<HarmonicKey> {
        let exps = Exponents::up_to_degree(self.algebra().dim(), max_degree);
        let mut out = Vec::new();
        for index in 0..self.fiber.harmonic.len() {
            for e in &exps {
                out.push(HarmonicKey { index, exps: e.clone() });
            }
        }
        out
    }
}

/// A weight-graded arrow of `D` between bigraded components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub source_degree: usize,
    pub source_weight: usize,
    pub target_degree: usize,
    pub target_weight: usize,
}

impl Arrow {
    /// Order of the differential operator: the weight gained.
    pub fn weight_jump(&self) -> i64 {
        self.target_weight as i64 - self.source_weight as i64
    }
}

/// Exact tables of the Rumin operators on the spanning set of `V_P`.
#[derive(Clone, Debug)]
pub struct RuminPackage {
    pub algebra: GradedLieAlgebra,
    pub max_degree: usize,
    pub harmonic: Vec<HarmonicForm>,
    pub d: LinearTable<FormKey, FormKey>,
    pub q: LinearTable<FormKey, FormKey>,
    pub pi: LinearTable<FormKey, FormKey>,
    pub iota_inverse: LinearTable<HarmonicKey, FormKey>,
    pub rumin_d: LinearTable<HarmonicKey, HarmonicKey>,
}

impl RuminPackage {
    /// Builds every table for polynomial degree `≤ max_degree`.
    pub fn build(algebra: &GradedLieAlgebra, max_degree: usize, budget: &mut dyn Budget) -> Result<Self> {
        let cx = RuminComplex::new(algebra)?;
        let span = cx.calculus().spanning_set(max_degree);
        let mut d = LinearTable::new();
        let mut q = LinearTable::new();
        for key in &span {
            budget.charge(1)?;
            let unit = PolyForm::unit(key.clone());
            d.insert(key.clone(), cx.d(&unit));
            q.insert(key.clone(), cx.q(&unit)?);
        }
        let mut pi = LinearTable::new();
        for key in &span {
            budget.charge(1)?;
            let mut col = d.apply(q.column(key).unwrap()).map_err(missing)?;
            col.add(&q.apply(d.column(key).unwrap()).map_err(missing)?);
            pi.insert(key.clone(), col);
        }
        let mut iota_inverse = LinearTable::new();
        let mut rumin_d = LinearTable::new();
        for hk in cx.harmonic_span(max_degree) {
            budget.charge(1)?;
            let h = cx.fiber().lift(&HarmonicSection::unit(hk.clone()));
            let mut lift = h.clone();
            lift.sub(&q.apply(&d.apply(&h).map_err(missing)?).map_err(missing)?);
            let dd = cx.iota(&d.apply(&lift).map_err(missing)?);
            iota_inverse.insert(hk.clone(), lift);
            rumin_d.insert(hk, dd);
        }
        Ok(RuminPackage {
            algebra: algebra.clone(),
            max_degree,
            harmonic: cx.fiber().harmonic().to_vec(),
            d,
            q,
            pi,
            iota_inverse,
            rumin_d,
        })
    }

    /// Bigraded arrows of `D` present in the table.
    pub fn arrows(&self) -> Vec<Arrow> {
        let mut set = BTreeSet::new();
        for (src, col) in self.rumin_d.columns() {
            let s = &self.harmonic[src.index];
            for dst in col.keys() {
                let t = &self.harmonic[dst.index];
                set.insert(Arrow { source_degree: s.degree, source_weight: s.weight, target_degree: t.degree, target_weight: t.weight });
            }
        }
        set.into_iter().collect()
    }
}

fn missing<K: fmt::Display>(k: K) -> Error {
    Error::IdentityFailure { identity: String::from("operator closes on V_P"), witness: format!("{}", k) }
}

/// Result of [`verify_package`].
#[derive(Clone, Debug)]
pub struct RuminVerification {
    pub report: VerificationReport,
    pub arrows: Vec<Arrow>,
    /// Largest number of Neumann terms needed to invert `dδ + δd`.
    pub neumann_max_terms: usize,
    /// `dim (𝓔 ∩ constant forms)` per form degree.
    pub constant_e_dims: Vec<usize>,
}

/// Re-checks every asserted identity on the stored tables. A budget stop
/// returns the partial report with `interrupted` set.
pub fn verify_package(pkg: &RuminPackage, budget: &mut dyn Budget) -> Result<RuminVerification> {
    let cx = RuminComplex::with_d_table(&pkg.algebra, &pkg.d)?;
    let mut out = RuminVerification {
        report: VerificationReport::default(),
        arrows: pkg.arrows(),
        neumann_max_terms: 0,
        constant_e_dims: Vec::new(),
    };
    match run_verification(pkg, &cx, budget, &mut out) {
        Ok(()) => {}
        Err(Error::BudgetExceeded(msg)) => out.report.interrupted = Some(msg),
        Err(e) => return Err(e),
    }
    out.neumann_max_terms = cx.neumann_max_terms();
    Ok(out)
}

/// Convenience: build and verify.
pub fn build_and_verify(algebra: &GradedLieAlgebra, max_degree: usize, budget: &mut dyn Budget) -> Result<(RuminPackage, RuminVerification)> {
    let pkg = RuminPackage::build(algebra, max_degree, budget)?;
    let v = verify_package(&pkg, budget)?;
    Ok((pkg, v))
}

struct Tables<'p> {
    d: &'p LinearTable<FormKey, FormKey>,
    q: &'p LinearTable<FormKey, FormKey>,
    pi: &'p LinearTable<FormKey, FormKey>,
}

impl Tables<'_> {
    fn d(&self, f: &PolyForm) -> Result<PolyForm> {
        self.d.apply(f).map_err(missing)
    }
    fn q(&self, f: &PolyForm) -> Result<PolyForm> {
        self.q.apply(f).map_err(missing)
    }
    fn pi(&self, f: &PolyForm) -> Result<PolyForm> {
        self.pi.apply(f).map_err(missing)
    }
}

fn check_terms(
    check: &mut IdentityCheck,
    alg: &GradedLieAlgebra,
    key: &FormKey,
    image: &PolyForm,
    degree_shift: i64,
) {
    let ok = image.keys().all(|t| {
        t.degree() as i64 - key.degree() as i64 == degree_shift
            && t.scaling_degree(alg) == key.scaling_degree(alg)
            && t.weight(alg) >= key.weight(alg)
    });
    check.record(ok, || format!("{}", key));
}

fn run_verification(pkg: &RuminPackage, cx: &RuminComplex<'_>, budget: &mut dyn Budget, out: &mut RuminVerification) -> Result<()> {
    let alg = &pkg.algebra;
    let fiber = cx.fiber();
    let t = Tables { d: &pkg.d, q: &pkg.q, pi: &pkg.pi };
    let span = cx.calculus().spanning_set(pkg.max_degree);
    let checks = &mut out.report.checks;

    let mut same_fiber = IdentityCheck::new("stored harmonic basis matches recomputation");
    same_fiber.record(pkg.harmonic == fiber.harmonic(), || String::from("harmonic basis"));
    checks.push(same_fiber);

    let mut bgg = IdentityCheck::new("harmonic block dimensions = bgg_fiber ranks");
    let table = bgg_fiber_from(alg, fiber.blocks(), fiber.delta());
    let mut dims: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for h in fiber.harmonic() {
        *dims.entry((h.degree, h.weight)).or_default() += 1;
    }
    let from_table: BTreeMap<(usize, usize), usize> = table.entries.iter().map(|e| ((e.degree, e.weight), e.rank)).collect();
    bgg.record(dims == from_table, || format!("{:?} vs {:?}", dims, from_table));
    checks.push(bgg);

    let mut d_matches = IdentityCheck::new("stored d = de Rham d");
    let mut d2 = IdentityCheck::new("d^2 = 0");
    let mut q_bk = IdentityCheck::new("q: degree -1, filtration");
    let mut pi_bk = IdentityCheck::new("pi: degree 0, filtration");
    let mut q_im = IdentityCheck::new("im q in sections of im delta");
    let mut q2 = IdentityCheck::new("q^2 = 0");
    let mut qdq = IdentityCheck::new("qdq = q");
    let mut pi2 = IdentityCheck::new("pi^2 = pi");
    let mut pid = IdentityCheck::new("pi d = d pi");
    let mut piq = IdentityCheck::new("pi q = q");
    let mut qpi = IdentityCheck::new("q pi = q");
    let mut homotopy = IdentityCheck::new("dq + qd = id on im pi");
    let mut inverse = IdentityCheck::new("(d delta + delta d) G = id on im delta");
    for key in &span {
        budget.charge(1)?;
        let unit = PolyForm::unit(key.clone());
        let dk = t.d(&unit)?;
        let qk = t.q(&unit)?;
        let pk = t.pi(&unit)?;
        d_matches.record(dk == cx.calculus().d_key(key), || format!("{}", key));
        d2.record(t.d(&dk)?.is_zero(), || format!("{}", key));
        check_terms(&mut q_bk, alg, key, &qk, -1);
        check_terms(&mut pi_bk, alg, key, &pk, 0);
        q_im.record(cx.delta(&qk).is_zero() && cx.iota(&qk).is_zero(), || format!("{}", key));
        q2.record(t.q(&qk)?.is_zero(), || format!("{}", key));
        qdq.record(t.q(&t.d(&qk)?)? == qk, || format!("{}", key));
        pi2.record(t.pi(&pk)? == pk, || format!("{}", key));
        pid.record(t.pi(&dk)? == t.d(&pk)?, || format!("{}", key));
        piq.record(t.pi(&qk)? == qk, || format!("{}", key));
        qpi.record(t.q(&pk)? == qk, || format!("{}", key));
        let mut h = t.d(&t.q(&pk)?)?;
        h.add(&t.q(&t.d(&pk)?)?);
        homotopy.record(h == pk, || format!("pi({})", key));
        let y = cx.delta(&unit);
        if !y.is_zero() {
            let (x, _) = cx.invert_on_im_delta(&y)?;
            inverse.record(cx.laplacian(&x) == y && cx.delta(&x).is_zero(), || format!("delta({})", key));
        }
    }
    checks.extend([d_matches, d2, q_bk, pi_bk, q_im, q2, qdq, pi2, pid, piq, qpi, homotopy, inverse]);

    // Kernel comparisons on blocks invariant under all operators involved:
    // fixed scaling degree and form degree.
    let mut by_block: BTreeMap<(usize, usize), Vec<&FormKey>> = BTreeMap::new();
    for key in &span {
        by_block.entry((key.scaling_degree(alg), key.degree())).or_default().push(key);
    }
    let mut kernels = IdentityCheck::new("ker pi = ker q cap ker qd = ker delta cap ker delta d");
    let mut e_basis: Vec<PolyForm> = Vec::new();
    let n = alg.dim();
    let mut constant_e = alloc::vec![0usize; n + 1];
    for ((scaling, degree), keys) in &by_block {
        budget.charge(keys.len() as u64)?;
        let mut pi_rows = Vec::new();
        let mut qq_rows = Vec::new();
        let mut dd_rows = Vec::new();
        let mut idx: BTreeMap<(u8, FormKey), usize> = BTreeMap::new();
        let mut col = |tag: u8, k: &FormKey| {
            let next = idx.len();
            *idx.entry((tag, k.clone())).or_insert(next)
        };
        let mut dd_images = Vec::new();
        for key in keys {
            let unit = PolyForm::unit((*key).clone());
            let pk = t.pi(&unit)?;
            pi_rows.push(pk.iter().map(|(k, c)| (col(0, k), c.clone())).collect::<Vec<_>>());
            let qk = t.q(&unit)?;
            let qdk = t.q(&t.d(&unit)?)?;
            let mut row: Vec<_> = qk.iter().map(|(k, c)| (col(1, k), c.clone())).collect();
            row.extend(qdk.iter().map(|(k, c)| (col(2, k), c.clone())));
            qq_rows.push(row);
            let dl = cx.delta(&unit);
            let dld = cx.delta(&t.d(&unit)?);
            let mut row: Vec<_> = dl.iter().map(|(k, c)| (col(3, k), c.clone())).collect();
            row.extend(dld.iter().map(|(k, c)| (col(4, k), c.clone())));
            dd_rows.push(row.clone());
            dd_images.push(row);
        }
        let r_pi = sparse_rank(pi_rows);
        let r_qq = sparse_rank(qq_rows);
        let r_dd = sparse_rank(dd_rows);
        kernels.record(r_pi == r_qq && r_qq == r_dd, || {
            format!("scaling degree {} form degree {}: ranks {} {} {}", scaling, degree, r_pi, r_qq, r_dd)
        });
        // Basis of 𝓔 on this block: kernel of the matrix with the images as
        // columns.
        let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (j, img) in dd_images.iter().enumerate() {
            for (i, c) in img {
                rows.entry(*i).or_default().push((j, c.clone()));
            }
        }
        let constant_rows: Vec<Vec<(usize, Rational)>> = rows
            .values()
            .map(|r| r.iter().filter(|(j, _)| keys[*j].exps.is_constant()).cloned().collect())
            .collect();
        let constants = keys.iter().filter(|k| k.exps.is_constant()).count();
        constant_e[*degree] += constants - sparse_rank(constant_rows);
        for v in sparse_kernel(rows.into_values(), keys.len()) {
            e_basis.push(v.iter().map(|(j, c)| (keys[*j].clone(), c.clone())).collect());
        }
    }
    checks.push(kernels);
    out.constant_e_dims = constant_e.clone();

    let mut betti = IdentityCheck::new("dim(E cap constants) = b_k");
    let b = cohomology_ranks_from(alg, fiber.blocks(), fiber.d0());
    betti.record(constant_e == b, || format!("{:?} vs {:?}", constant_e, b));
    checks.push(betti);

    let iota_inv = |s: &HarmonicSection| pkg.iota_inverse.apply(s).map_err(missing);
    let mut left = IdentityCheck::new("iota^-1 iota = id on E");
    for e in &e_basis {
        budget.charge(1)?;
        left.record(iota_inv(&cx.iota(e))? == *e, || crate::calculus::describe(e));
    }
    checks.push(left);

    let mut right = IdentityCheck::new("iota iota^-1 = id on harmonic sections");
    let mut in_e = IdentityCheck::new("iota^-1 lands in E");
    let mut d2 = IdentityCheck::new("D^2 = 0");
    let mut deg = IdentityCheck::new("D: degree +1, scaling degree preserved");
    let mut no_zero = IdentityCheck::new("no weight-0 arrows");
    for (hk, lift) in pkg.iota_inverse.columns() {
        budget.charge(1)?;
        let unit = HarmonicSection::unit(hk.clone());
        right.record(cx.iota(lift) == unit, || format!("{}", hk));
        in_e.record(cx.delta(lift).is_zero() && cx.delta(&t.d(lift)?).is_zero(), || format!("{}", hk));
        let dh = pkg.rumin_d.column(hk).ok_or_else(|| missing(hk))?;
        d2.record(pkg.rumin_d.apply(dh).map_err(missing)?.is_zero(), || format!("{}", hk));
        let (k, w) = fiber.component(hk.index);
        let s = w + hk.exps.homogeneous_degree(alg);
        let ok = dh.keys().all(|t| {
            let (k2, w2) = fiber.component(t.index);
            k2 == k + 1 && w2 + t.exps.homogeneous_degree(alg) == s
        });
        deg.record(ok, || format!("{}", hk));
        no_zero.record(dh.keys().all(|t| fiber.component(t.index).1 > w), || format!("{}", hk));
    }
    checks.extend([right, in_e, d2, deg, no_zero]);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, Model};
    use crate::budget::Unlimited;

    #[test]
    fn heisenberg_package() {
        let h = builtin(Model::Heisenberg, 2).unwrap();
        let (pkg, v) = build_and_verify(&h, 2, &mut Unlimited).unwrap();
        for c in &v.report.checks {
            assert!(c.passed(), "{}: {:?}", c.identity, c.counterexample);
        }
        assert!(v.report.passed());
        let jumps: Vec<_> = pkg.arrows().iter().map(|a| (a.source_degree, a.weight_jump())).collect();
        assert_eq!(jumps, [(0, 1), (1, 2), (2, 1)]);
        assert_eq!(v.constant_e_dims, [1, 2, 2, 1]);
        assert!(v.neumann_max_terms <= 4);
    }

    #[test]
    fn q_kills_functions() {
        let h = builtin(Model::Heisenberg, 2).unwrap();
        let cx = RuminComplex::new(&h).unwrap();
        let one = PolyForm::unit(FormKey::constant(FormMonomial::ONE, 3));
        assert!(cx.q(&one).unwrap().is_zero());
    }
}
