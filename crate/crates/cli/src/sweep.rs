//! Seeded property sweeps on the fiber operators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rumin_core::exterior::{self, ExteriorMetric, FiberForm, FormMonomial, MonomialBlocks};
use rumin_core::report::{IdentityCheck, VerificationReport};
use rumin_core::{GradedLieAlgebra, Rational, Result};

/// Cohomology ranks together with the checks behind them.
#[derive(Clone, Debug)]
pub struct FiberSweep {
    pub betti: Vec<usize>,
    pub euler_characteristic: i64,
    pub report: VerificationReport,
}

fn random_form(rng: &mut ChaCha8Rng, monomials: &[FormMonomial], terms: usize) -> FiberForm {
    let mut f = FiberForm::new();
    for _ in 0..terms {
        let m = *monomials.choose(rng).unwrap();
        let c = Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        f.add_term(m, &c);
    }
    f
}

/// Computes the Betti numbers and checks `d₀² = 0`, `δ² = 0`, adjointness on
/// `pairs` seeded random pairs, `Σ(−1)^k b_k = 0` and Poincaré duality.
///
/// Each pair is `(α, β)` with `α` random in degree `k` and `β = d₀α + γ`,
/// `γ` random in degree `k+1`, so the pairing is rarely zero.
pub fn fiber_sweep(alg: &GradedLieAlgebra, pairs: usize, seed: u64) -> Result<FiberSweep> {
    let n = alg.dim();
    let blocks = MonomialBlocks::new(alg)?;
    let d = exterior::d0(alg)?;
    let del = exterior::delta_from(alg, &blocks, &d)?;
    let metric = ExteriorMetric::new(alg);
    let betti = exterior::cohomology_ranks_from(alg, &blocks, &d);
    let euler: i64 = betti.iter().enumerate().map(|(k, b)| if k % 2 == 0 { *b as i64 } else { -(*b as i64) }).sum();

    let mut report = VerificationReport::default();
    for (name, op) in [("d0^2 = 0", &d), ("delta^2 = 0", &del)] {
        let mut check = IdentityCheck::new(name);
        let sq = op.compose(op);
        for (src, _) in op.columns() {
            check.record(sq.column(*src).is_none(), || format!("{:?}", src.indices().map(|i| i + 1).collect::<Vec<_>>()));
        }
        report.checks.push(check);
    }

    let by_degree: Vec<Vec<FormMonomial>> = (0..=n)
        .map(|k| blocks.weights_in_degree(k).flat_map(|w| blocks.block(k, w).iter().copied()).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = IdentityCheck::new("<d0 a, b> = <a, delta b>");
    for i in 0..pairs {
        let k = rng.gen_range(0..n);
        let a = random_form(&mut rng, &by_degree[k], 3);
        let mut b = d.apply(&a);
        b.add(&random_form(&mut rng, &by_degree[k + 1], 3));
        let lhs = metric.inner(&d.apply(&a), &b);
        let rhs = metric.inner(&a, &del.apply(&b));
        adj.record(lhs == rhs, || format!("pair {} in degree {}: {} vs {}", i, k, lhs, rhs));
    }
    report.checks.push(adj);

    let mut ec = IdentityCheck::new("sum (-1)^k b_k = 0");
    ec.record(euler == 0, || format!("{}", euler));
    report.checks.push(ec);

    let mut pd = IdentityCheck::new("b_k = b_(n-k)");
    for k in 0..=n {
        pd.record(betti[k] == betti[n - k], || format!("k = {}", k));
    }
    report.checks.push(pd);

    Ok(FiberSweep { betti, euler_characteristic: euler, report })
}
