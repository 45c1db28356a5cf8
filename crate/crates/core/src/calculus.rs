//! Differential forms with polynomial coefficients on a 2-step graded group.
//!
//! Coordinates are exponential coordinates `u_1, ..., u_n`, one per basis
//! vector (the `x` of layer 1 followed by the `z` of layer 2), with group law
//! `(x, z)(x', z') = (x + x', z + z' + ½[x, x'])`. The left-invariant frame is
//!
//! ```text
//! X_a = ∂/∂x_a − ½ Σ_k Σ_b c^k_ab x_b ∂/∂z_k      (layer 1)
//! Z_k = ∂/∂z_k                                     (layer 2)
//! ```
//!
//! so that `[X_a, X_b] = Σ_k c^k_ab Z_k`. Forms are written in the dual
//! coframe `θ^i`, whose exterior derivative is `d₀ θ^i`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::GradedLieAlgebra;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exterior::{covector_table, d0_monomial_with, wedge, FiberForm, FormMonomial};
use crate::linalg::SparseVec;
use crate::poly::{Exponents, Polynomial};
use crate::rational::Rational;
use crate::report::{IdentityCheck, VerificationReport};

/// Basis element `u^exps · θ^form` of the polynomial forms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormKey {
    pub form: FormMonomial,
    pub exps: Exponents,
}

impl FormKey {
    pub fn new(form: FormMonomial, exps: Exponents) -> Self {
        FormKey { form, exps }
    }

    pub fn constant(form: FormMonomial, nvars: usize) -> Self {
        FormKey { form, exps: Exponents::constant(nvars) }
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    /// Weight of the coframe part only.
    pub fn weight(&self, algebra: &GradedLieAlgebra) -> usize {
        self.form.weight(algebra)
    }

    pub fn poly_degree(&self) -> usize {
        self.exps.degree()
    }

    /// Form weight plus homogeneous degree of the coefficient; `d`, `δ`, `q`
    /// and `π` preserve it.
    pub fn scaling_degree(&self, algebra: &GradedLieAlgebra) -> usize {
        self.form.weight(algebra) + self.exps.homogeneous_degree(algebra)
    }
}

impl fmt::Display for FormKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.exps)?;
        if self.form.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for i in self.form.indices() {
            if !first {
                write!(f, "^")?;
            }
            first = false;
            write!(f, "th{}", i + 1)?;
        }
        Ok(())
    }
}

/// A form with polynomial coefficients.
pub type PolyForm = SparseVec<FormKey>;

/// Renders a form as `c1*[key1] + c2*[key2] ...` for witnesses.
pub fn describe(form: &PolyForm) -> String {
    if form.is_zero() {
        return String::from("0");
    }
    let parts: Vec<String> = form.iter().map(|(k, c)| format!("{}*[{}]", c, k)).collect();
    parts.join(" + ")
}

/// `f · θ^form`.
pub fn times_form(f: &Polynomial, form: FormMonomial) -> PolyForm {
    f.iter().map(|(e, c)| (FormKey::new(form, e.clone()), c.clone())).collect()
}

/// A constant-coefficient form.
pub fn from_fiber(form: &FiberForm, nvars: usize) -> PolyForm {
    form.iter().map(|(m, c)| (FormKey::constant(*m, nvars), c.clone())).collect()
}

/// Exact operators of the group calculus for one algebra of step at most 2.
#[derive(Clone, Debug)]
pub struct GroupCalculus<'a> {
    algebra: &'a GradedLieAlgebra,
    d0_table: Vec<FiberForm>,
    /// For a layer-1 index `a`: the terms `(b, k, −½ c^k_ab)` of `X_a`.
    field_terms: Vec<Vec<(usize, usize, Rational)>>,
    /// `L_{X_a} θ^c = Σ (b, coeff) θ^b`, indexed `[a][c]`.
    lie_coframe: Vec<Vec<Vec<(usize, Rational)>>>,
    /// Nonzero `g^{ab}` over layer-1 pairs.
    inverse_metric: Vec<(usize, usize, Rational)>,
}

impl<'a> GroupCalculus<'a> {
    pub fn new(algebra: &'a GradedLieAlgebra) -> Result<Self> {
        if algebra.step() > 2 {
            return Err(Error::StepTooLarge { step: algebra.step() });
        }
        let n = algebra.dim();
        let half = Rational::new(1, 2);
        let mut field_terms = alloc::vec![Vec::new(); n];
        for a in 0..n {
            if algebra.layer(a) != 1 {
                continue;
            }
            for b in 0..n {
                for (k, c) in algebra.bracket(a, b) {
                    field_terms[a].push((b, *k, -(c * &half)));
                }
            }
        }
        let mut lie_coframe = alloc::vec![alloc::vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                for (c, coeff) in algebra.bracket(a, b) {
                    lie_coframe[a][*c].push((b, -coeff));
                }
            }
        }
        let layer1: Vec<usize> = (0..n).filter(|&i| algebra.layer(i) == 1).collect();
        let mut inverse_metric = Vec::new();
        if !layer1.is_empty() {
            let g = algebra.inner_product();
            let mut block = crate::linalg::DenseMatrix::zeros(layer1.len(), layer1.len());
            for (i, &a) in layer1.iter().enumerate() {
                for (j, &b) in layer1.iter().enumerate() {
                    block.set(i, j, g[(a, b)].clone());
                }
            }
            let inv = block.inverse().expect("validated inner product is positive definite");
            for (i, &a) in layer1.iter().enumerate() {
                for (j, &b) in layer1.iter().enumerate() {
                    if !inv[(i, j)].is_zero() {
                        inverse_metric.push((a, b, inv[(i, j)].clone()));
                    }
                }
            }
        }
        Ok(GroupCalculus { algebra, d0_table: covector_table(algebra), field_terms, lie_coframe, inverse_metric })
    }

    pub fn algebra(&self) -> &'a GradedLieAlgebra {
        self.algebra
    }

    pub fn nvars(&self) -> usize {
        self.algebra.dim()
    }

    /// Adds `scale · X_a(u^e)` to `out`.
    fn field_on_monomial(&self, a: usize, e: &Exponents, scale: &Rational, out: &mut Polynomial) {
        if let Some((f, m)) = e.differentiate(a) {
            out.add_term(m, &(scale * &Rational::from(f as i64)));
        }
        for (b, k, c) in &self.field_terms[a] {
            if let Some((f, m)) = e.differentiate(*k) {
                out.add_term(m.times_var(*b), &(&(scale * c) * &Rational::from(f as i64)));
            }
        }
    }

    /// The left-invariant field `X_a` (or `Z_a` on layer 2) applied to a
    /// polynomial.
    pub fn apply_field(&self, a: usize, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::new();
        for (e, c) in p.iter() {
            self.field_on_monomial(a, e, c, &mut out);
        }
        out
    }

    fn linear<F: Fn(&FormKey, &Rational, &mut PolyForm)>(form: &PolyForm, f: F) -> PolyForm {
        let mut out = PolyForm::new();
        for (k, c) in form.iter() {
            f(k, c, &mut out);
        }
        out
    }

    fn d_key_into(&self, key: &FormKey, scale: &Rational, out: &mut PolyForm) {
        for a in 0..self.nvars() {
            let Some((s, m)) = wedge(FormMonomial::single(a), key.form) else { continue };
            let mut coeff = Polynomial::new();
            self.field_on_monomial(a, &key.exps, &(scale * &Rational::from(s)), &mut coeff);
            for (e, c) in coeff.iter() {
                out.add_term(FormKey::new(m, e.clone()), c);
            }
        }
        for (m, c) in d0_monomial_with(&self.d0_table, key.form).iter() {
            out.add_term(FormKey::new(*m, key.exps.clone()), &(scale * c));
        }
    }

    /// Exterior derivative of a basis element.
    pub fn d_key(&self, key: &FormKey) -> PolyForm {
        let mut out = PolyForm::new();
        self.d_key_into(key, &Rational::one(), &mut out);
        out
    }

    /// `d(f θ^I) = Σ_a (X_a f) θ^a ∧ θ^I + f d₀θ^I`.
    pub fn d(&self, form: &PolyForm) -> PolyForm {
        Self::linear(form, |k, c, out| self.d_key_into(k, c, out))
    }

    /// Contraction `i_{X_a}` against the coframe.
    pub fn contract(&self, a: usize, form: &PolyForm) -> PolyForm {
        Self::linear(form, |k, c, out| {
            if k.form.contains(a) {
                let c = if k.form.count_below(a) % 2 == 0 { c.clone() } else { -c };
                out.add_term(FormKey::new(k.form.without(a), k.exps.clone()), &c);
            }
        })
    }

    /// Lie derivative along `X_a`, computed directly: the field acts on the
    /// coefficient and `L_{X_a} θ^c = −Σ_b c^c_ab θ^b` acts as a derivation.
    pub fn lie_derivative(&self, a: usize, form: &PolyForm) -> PolyForm {
        Self::linear(form, |k, c, out| {
            let mut coeff = Polynomial::new();
            self.field_on_monomial(a, &k.exps, c, &mut coeff);
            for (e, v) in coeff.iter() {
                out.add_term(FormKey::new(k.form, e.clone()), v);
            }
            for i in k.form.indices() {
                let below = FormMonomial(k.form.0 & ((1u64 << i) - 1));
                let above = FormMonomial(k.form.0 & !((1u64 << (i + 1)) - 1));
                for (b, coeff) in &self.lie_coframe[a][i] {
                    let Some((s1, left)) = wedge(below, FormMonomial::single(*b)) else { continue };
                    let Some((s2, m)) = wedge(left, above) else { continue };
                    out.add_term(FormKey::new(m, k.exps.clone()), &(&(c * coeff) * &Rational::from(s1 * s2)));
                }
            }
        })
    }

    /// `d i_{X_a} + i_{X_a} d`.
    pub fn cartan(&self, a: usize, form: &PolyForm) -> PolyForm {
        let mut out = self.d(&self.contract(a, form));
        out.add(&self.contract(a, &self.d(form)));
        out
    }

    /// `A = Σ g^{ab} i_{X_a} L_{X_b}` over layer 1.
    pub fn parametrix(&self, form: &PolyForm) -> PolyForm {
        let mut out = PolyForm::new();
        for (a, b, g) in &self.inverse_metric {
            out.add_scaled(&self.contract(*a, &self.lie_derivative(*b, form)), g);
        }
        out
    }

    /// `Σ g^{ab} L_{X_a} L_{X_b}` over layer 1.
    pub fn lie_laplacian(&self, form: &PolyForm) -> PolyForm {
        let mut out = PolyForm::new();
        for (a, b, g) in &self.inverse_metric {
            out.add_scaled(&self.lie_derivative(*a, &self.lie_derivative(*b, form)), g);
        }
        out
    }

    /// All `u^e θ^I` with `deg e ≤ max_degree`, sorted.
    pub fn spanning_set(&self, max_degree: usize) -> Vec<FormKey> {
        let n = self.nvars();
        let exps = Exponents::up_to_degree(n, max_degree);
        let mut out = Vec::with_capacity(exps.len() << n);
        for mask in 0..(1u64 << n) {
            for e in &exps {
                out.push(FormKey::new(FormMonomial(mask), e.clone()));
            }
        }
        out.sort();
        out
    }

    /// First term of `d(key)` breaking the filtration: every output term must
    /// keep the scaling degree and not lower the form weight.
    pub fn check_filtration(&self, key: &FormKey) -> core::result::Result<(), FormKey> {
        let n = key.scaling_degree(self.algebra);
        let w = key.weight(self.algebra);
        for t in self.d_key(key).keys() {
            if t.scaling_degree(self.algebra) != n || t.weight(self.algebra) < w || t.degree() != key.degree() + 1 {
                return Err(t.clone());
            }
        }
        Ok(())
    }
}

/// Runs the calculus identity suite on every spanning element of polynomial
/// degree at most `max_degree`:
///
/// * `d² = 0` and the filtration bookkeeping of `d`;
/// * `[X_a, X_b] = Σ_k c^k_ab Z_k` and `[X_a, Z_k] = 0` on polynomials;
/// * `d i_X + i_X d = L_X` and `L_X d = d L_X` for every basis field;
/// * `dA + Ad = Σ g^{ab} L_{X_a} L_{X_b}`.
///
/// A budget stop returns the checks finished so far with `interrupted` set.
pub fn parametrix_identity_check(
    algebra: &GradedLieAlgebra,
    max_degree: usize,
    budget: &mut dyn Budget,
) -> Result<VerificationReport> {
    let calc = GroupCalculus::new(algebra)?;
    let span = calc.spanning_set(max_degree);
    let mut report = VerificationReport::default();
    let result = run_checks(&calc, &span, max_degree, budget, &mut report);
    match result {
        Ok(()) => Ok(report),
        Err(Error::BudgetExceeded(msg)) => {
            report.interrupted = Some(msg);
            Ok(report)
        }
        Err(e) => Err(e),
    }
}

fn run_checks(
    calc: &GroupCalculus<'_>,
    span: &[FormKey],
    max_degree: usize,
    budget: &mut dyn Budget,
    report: &mut VerificationReport,
) -> Result<()> {
    let alg = calc.algebra();
    let n = alg.dim();

    let mut check = IdentityCheck::new("[X_a, X_b] = sum_k c^k_ab Z_k");
    let polys = Exponents::up_to_degree(n, max_degree);
    for e in &polys {
        budget.charge(1)?;
        let p = Polynomial::unit(e.clone());
        for a in 0..n {
            for b in 0..n {
                let mut lhs = calc.apply_field(a, &calc.apply_field(b, &p));
                lhs.sub(&calc.apply_field(b, &calc.apply_field(a, &p)));
                let mut rhs = Polynomial::new();
                for (k, c) in alg.bracket(a, b) {
                    rhs.add_scaled(&calc.apply_field(*k, &p), c);
                }
                check.record(lhs == rhs, || format!("a={} b={} f={}", a + 1, b + 1, e));
            }
        }
    }
    report.checks.push(check);

    let mut d2 = IdentityCheck::new("d^2 = 0");
    let mut filt = IdentityCheck::new("d preserves degree and weight filtration");
    let mut images: BTreeMap<&FormKey, PolyForm> = BTreeMap::new();
    for key in span {
        budget.charge(1)?;
        let dk = calc.d_key(key);
        d2.record(calc.d(&dk).is_zero(), || format!("{}", key));
        filt.record(calc.check_filtration(key).is_ok(), || format!("{}", key));
        images.insert(key, dk);
    }
    report.checks.push(d2);
    report.checks.push(filt);

    let mut cartan = IdentityCheck::new("d i_X + i_X d = L_X");
    let mut commute = IdentityCheck::new("L_X d = d L_X");
    for key in span {
        budget.charge(1)?;
        let form = PolyForm::unit(key.clone());
        let dform = &images[key];
        for a in 0..n {
            let lie = calc.lie_derivative(a, &form);
            cartan.record(calc.cartan(a, &form) == lie, || format!("X{} on {}", a + 1, key));
            commute.record(calc.lie_derivative(a, dform) == calc.d(&lie), || format!("X{} on {}", a + 1, key));
        }
    }
    report.checks.push(cartan);
    report.checks.push(commute);

    let mut para = IdentityCheck::new("dA + Ad = sum g^ab L_a L_b");
    for key in span {
        budget.charge(1)?;
        let form = PolyForm::unit(key.clone());
        let mut lhs = calc.d(&calc.parametrix(&form));
        lhs.add(&calc.parametrix(&images[key]));
        para.record(lhs == calc.lie_laplacian(&form), || format!("{}", key));
    }
    report.checks.push(para);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, Model};
    use crate::budget::Unlimited;
    use crate::poly::{multiply, variable};

    fn key(form: &[usize], exps: &[u16]) -> FormKey {
        FormKey::new(FormMonomial::from_indices(form), Exponents(exps.to_vec()))
    }

    #[test]
    fn heisenberg_fields() {
        let h = builtin(Model::Heisenberg, 2).unwrap();
        let g = GroupCalculus::new(&h).unwrap();
        let z = variable(3, 2);
        // X_1 z = −½ x_2, X_2 z = ½ x_1
        assert_eq!(g.apply_field(0, &z), variable(3, 1).scaled(&Rational::new(-1, 2)));
        assert_eq!(g.apply_field(1, &z), variable(3, 0).scaled(&Rational::new(1, 2)));
    }

    #[test]
    fn d_examples() {
        let h = builtin(Model::Heisenberg, 2).unwrap();
        let g = GroupCalculus::new(&h).unwrap();
        // d(z θ¹) = ½ x₁ θ²∧θ¹ + θ³∧θ¹ = −½ x₁ θ¹∧θ² − θ¹∧θ³
        let form = PolyForm::unit(key(&[0], &[0, 0, 1]));
        let dz = g.d(&form);
        let expect = PolyForm::from_terms([
            (key(&[0, 1], &[1, 0, 0]), Rational::new(-1, 2)),
            (key(&[0, 2], &[0, 0, 0]), Rational::from(-1)),
        ]);
        assert_eq!(dz, expect);
        assert!(g.d(&dz).is_zero());
        // d θ³ = −θ¹∧θ²
        assert_eq!(g.d(&PolyForm::unit(key(&[2], &[0, 0, 0]))), PolyForm::from_terms([(key(&[0, 1], &[0, 0, 0]), Rational::from(-1))]));
    }

    #[test]
    fn contraction_and_lie() {
        let h = builtin(Model::Heisenberg, 2).unwrap();
        let g = GroupCalculus::new(&h).unwrap();
        let t12 = PolyForm::unit(key(&[0, 1], &[0, 0, 0]));
        assert_eq!(g.contract(0, &t12), PolyForm::unit(key(&[1], &[0, 0, 0])));
        assert_eq!(g.contract(1, &t12), PolyForm::from_terms([(key(&[0], &[0, 0, 0]), Rational::from(-1))]));
        let t3 = PolyForm::unit(key(&[2], &[0, 0, 0]));
        let expect = PolyForm::from_terms([(key(&[1], &[0, 0, 0]), Rational::from(-1))]);
        assert_eq!(g.lie_derivative(0, &t3), expect);
        assert_eq!(g.cartan(0, &t3), expect);
        // Cartan on the function x₂ z
        let f = times_form(&multiply(&variable(3, 1), &variable(3, 2)), FormMonomial::ONE);
        let x1f = times_form(&g.apply_field(0, &multiply(&variable(3, 1), &variable(3, 2))), FormMonomial::ONE);
        assert_eq!(g.cartan(0, &f), x1f);
    }

    #[test]
    fn abelian_derivative() {
        let a = builtin(Model::Abelian, 2).unwrap();
        let g = GroupCalculus::new(&a).unwrap();
        let x1 = PolyForm::unit(key(&[], &[1, 0]));
        assert_eq!(g.d(&x1), PolyForm::unit(key(&[0], &[0, 0])));
        // The Lie Laplacian is the coefficientwise Euclidean Laplacian.
        let f = PolyForm::unit(key(&[1], &[2, 1]));
        assert_eq!(g.lie_laplacian(&f), PolyForm::from_terms([(key(&[1], &[0, 1]), Rational::from(2))]));
    }

    #[test]
    fn heisenberg_suite() {
        let h = builtin(Model::Heisenberg, 2).unwrap();
        let r = parametrix_identity_check(&h, 2, &mut Unlimited).unwrap();
        for c in &r.checks {
            assert!(c.passed(), "{} failed at {:?}", c.identity, c.counterexample);
            assert!(c.checked > 0);
        }
    }
}
