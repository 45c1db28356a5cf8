mod support;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rumin_core::algebra::{builtin_raw, dilate, validate, RawAlgebra, RawBracket};
use rumin_core::exterior::{bgg_fiber, cohomology_ranks, d0, delta, dilation_pullback, ExteriorMetric, FiberForm, FormMonomial, MonomialBlocks};
use rumin_core::{builtin, GradedLieAlgebra, Model, Rational};
use support::oracle;

fn models() -> Vec<GradedLieAlgebra> {
    let mut v = Vec::new();
    for n in 2..=4 {
        v.push(builtin(Model::Abelian, n).unwrap());
        v.push(builtin(Model::Heisenberg, n).unwrap());
    }
    v.push(builtin(Model::Quaternionic, 2).unwrap());
    v
}

#[test]
fn cohomology_matches_dense_oracle() {
    for alg in models() {
        assert_eq!(cohomology_ranks(&alg).unwrap(), oracle::betti(&alg), "{}", alg.name());
    }
}

#[test]
fn bgg_matches_dense_oracle() {
    for alg in models() {
        let table = bgg_fiber(&alg).unwrap();
        let got: Vec<_> = table.entries.iter().map(|e| (e.degree, e.weight, e.rank)).collect();
        assert_eq!(got, oracle::bgg(&alg), "{}", alg.name());
    }
}

#[test]
fn d0_matches_dense_oracle_entrywise() {
    let alg = builtin(Model::Quaternionic, 2).unwrap();
    let d = d0(&alg).unwrap();
    for k in 0..alg.dim() {
        let dense = oracle::d0_matrix(&alg, k);
        let src = oracle::subsets(alg.dim(), k);
        let dst = oracle::subsets(alg.dim(), k + 1);
        for (j, s) in src.iter().enumerate() {
            let img = d.apply(&FiberForm::unit(FormMonomial::from_indices(s)));
            for (i, t) in dst.iter().enumerate() {
                assert_eq!(img.coeff(&FormMonomial::from_indices(t)), dense[i][j]);
            }
        }
    }
}

#[test]
fn heisenberg_examples() {
    let h = builtin(Model::Heisenberg, 2).unwrap();
    assert_eq!(cohomology_ranks(&h).unwrap(), [1, 2, 2, 1]);
    let t = bgg_fiber(&h).unwrap();
    let got: Vec<_> = t.entries.iter().map(|e| (e.degree, e.weight, e.rank)).collect();
    assert_eq!(got, [(0, 0, 1), (1, 1, 2), (2, 3, 2), (3, 4, 1)]);
    let q = builtin(Model::Quaternionic, 2).unwrap();
    let t = bgg_fiber(&q).unwrap();
    assert_eq!(t.in_degree(0), [(0, 1)]);
    assert_eq!(t.in_degree(7), [(10, 1)]);
}

#[test]
fn squares_vanish_and_duality() {
    for alg in models() {
        let d = d0(&alg).unwrap();
        let del = delta(&alg).unwrap();
        assert!(d.compose(&d).is_zero());
        assert!(del.compose(&del).is_zero());
        assert!(d.check_shifts(&alg).is_ok());
        let b = cohomology_ranks(&alg).unwrap();
        let rev: Vec<_> = b.iter().rev().copied().collect();
        assert_eq!(b, rev, "{}", alg.name());
        assert_eq!(b.iter().enumerate().map(|(k, r)| if k % 2 == 0 { *r as i64 } else { -(*r as i64) }).sum::<i64>(), 0);
        let t = bgg_fiber(&alg).unwrap();
        for k in 0..=alg.dim() {
            assert_eq!(t.degree_total(k), b[k]);
        }
    }
}

fn random_form(rng: &mut ChaCha8Rng, n: usize, k: usize) -> FiberForm {
    let subsets = oracle::subsets(n, k);
    let mut f = FiberForm::new();
    for _ in 0..rng.gen_range(1..4) {
        let s = &subsets[rng.gen_range(0..subsets.len())];
        f.add_term(FormMonomial::from_indices(s), &Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
    }
    f
}

#[test]
fn adjoint_on_random_pairs() {
    let alg = builtin(Model::Quaternionic, 2).unwrap();
    let d = d0(&alg).unwrap();
    let del = delta(&alg).unwrap();
    let metric = ExteriorMetric::new(&alg);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let k = rng.gen_range(0..alg.dim());
        let a = random_form(&mut rng, alg.dim(), k);
        let b = random_form(&mut rng, alg.dim(), k + 1);
        assert_eq!(metric.inner(&d.apply(&a), &b), metric.inner(&a, &del.apply(&b)));
    }
}

#[test]
fn adjoint_with_nonstandard_metric() {
    // Heisenberg(2) with a layer-orthogonal but non-orthonormal inner product.
    let mut raw = builtin_raw(Model::Heisenberg, 2).unwrap();
    let r = |p, q| Rational::new(p, q);
    raw.inner_product = Some(vec![
        vec![r(2, 1), r(1, 1), r(0, 1)],
        vec![r(1, 1), r(3, 1), r(0, 1)],
        vec![r(0, 1), r(0, 1), r(5, 2)],
    ]);
    let alg = GradedLieAlgebra::new(&raw).unwrap();
    let d = d0(&alg).unwrap();
    let del = delta(&alg).unwrap();
    let metric = ExteriorMetric::new(&alg);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let k = rng.gen_range(0..alg.dim());
        let a = random_form(&mut rng, alg.dim(), k);
        let b = random_form(&mut rng, alg.dim(), k + 1);
        assert_eq!(metric.inner(&d.apply(&a), &b), metric.inner(&a, &del.apply(&b)));
    }
    assert!(del.compose(&del).is_zero());
    // Ranks are metric independent.
    assert_eq!(bgg_fiber(&alg).unwrap(), bgg_fiber(&builtin(Model::Heisenberg, 2).unwrap()).unwrap());
}

#[test]
fn dilation_equivariance() {
    let t = Rational::from(2);
    for alg in models() {
        let d = d0(&alg).unwrap();
        let theta = dilation_pullback(&alg, &t).unwrap();
        assert_eq!(d.compose(&theta), theta.compose(&d), "{}", alg.name());
        assert!(dilate(&alg, t.clone()).unwrap().check_automorphism().is_ok());
        // Each weight-w block is rescaled by t^w.
        let blocks = MonomialBlocks::new(&alg).unwrap();
        for (k, w) in blocks.keys() {
            let plain = d.block_matrix(&blocks, k, w, 0);
            let conj = d.compose(&theta).block_matrix(&blocks, k, w, 0);
            assert_eq!(conj, plain.scale(&t.pow(w as i32)));
        }
    }
}

#[test]
fn builtins_validate() {
    for n in 2..=4 {
        for m in [Model::Abelian, Model::Heisenberg, Model::Quaternionic] {
            assert!(validate(&builtin_raw(m, n).unwrap()).unwrap().passed());
        }
    }
    let q = builtin(Model::Quaternionic, 2).unwrap();
    assert_eq!(q.layers(), [4, 3]);
    assert_eq!(q.homogeneous_dimension(), 10);
    assert_eq!(builtin(Model::Heisenberg, 2).unwrap().homogeneous_dimension(), 4);
    assert_eq!(builtin(Model::Abelian, 5).unwrap().homogeneous_dimension(), 5);
}

/// Jacobi by brute force over all basis triples, from the bracket table only.
fn jacobi_holds(alg: &GradedLieAlgebra) -> bool {
    let n = alg.dim();
    let bracket_vec = |x: &[Rational], b: usize| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for (a, xa) in x.iter().enumerate() {
            for (k, c) in alg.bracket(a, b) {
                out[*k] += &(xa * c);
            }
        }
        out
    };
    let unit = |i: usize| -> Vec<Rational> { (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect() };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let ab_c = bracket_vec(&bracket_vec(&unit(a), b), c);
                let bc_a = bracket_vec(&bracket_vec(&unit(b), c), a);
                let ca_b = bracket_vec(&bracket_vec(&unit(c), a), b);
                for k in 0..n {
                    if !(&(&ab_c[k] + &bc_a[k]) + &ca_b[k]).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn octonionic_jacobi_and_alternativity() {
    let o = builtin(Model::Octonionic, 0).unwrap();
    assert_eq!(o.layers(), [8, 7]);
    assert!(jacobi_holds(&o));
    assert!(jacobi_holds(&builtin(Model::Quaternionic, 3).unwrap()));
    // The unit table must define an alternative algebra: (uu)v = u(uv).
    use rumin_core::algebra::octonion_unit_product as mul;
    let mul_vec = |x: &[i64; 8], y: &[i64; 8]| -> [i64; 8] {
        let mut out = [0i64; 8];
        for u in 0..8 {
            for v in 0..8 {
                let (s, w) = mul(u, v);
                out[w] += s * x[u] * y[v];
            }
        }
        out
    };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let x: [i64; 8] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        let y: [i64; 8] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        assert_eq!(mul_vec(&mul_vec(&x, &x), &y), mul_vec(&x, &mul_vec(&x, &y)));
        assert_eq!(mul_vec(&mul_vec(&y, &x), &x), mul_vec(&y, &mul_vec(&x, &x)));
    }
}

#[test]
fn homogeneous_dimension_ignores_permutations() {
    let raw = builtin_raw(Model::Quaternionic, 2).unwrap();
    let perm = [3usize, 1, 0, 2, 6, 4, 5];
    let permuted = RawAlgebra {
        name: "permuted".into(),
        layers: raw.layers.clone(),
        brackets: raw
            .brackets
            .iter()
            .map(|b| RawBracket {
                a: perm[b.a - 1] + 1,
                b: perm[b.b - 1] + 1,
                terms: b.terms.iter().map(|(k, c)| (perm[k - 1] + 1, c.clone())).collect(),
            })
            .collect(),
        inner_product: None,
    };
    let alg = GradedLieAlgebra::new(&permuted).unwrap();
    assert_eq!(alg.homogeneous_dimension(), 10);
    assert_eq!(cohomology_ranks(&alg).unwrap(), cohomology_ranks(&builtin(Model::Quaternionic, 2).unwrap()).unwrap());
}
