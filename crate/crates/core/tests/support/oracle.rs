//! Dense reference computations written without the library's exterior
//! algebra or elimination code. Only the scalar type is shared.

#![allow(dead_code)]

use rumin_core::{GradedLieAlgebra, Rational};

/// All k-subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Sorts a list of distinct indices, returning the permutation sign, or
/// `None` on a repeat.
pub fn sort_sign(v: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some(sign)
}

/// Dense matrix of d0 from degree k to k+1 (rows: targets, columns: sources).
pub fn d0_matrix(alg: &GradedLieAlgebra, k: usize) -> Vec<Vec<Rational>> {
    let n = alg.dim();
    let src = subsets(n, k);
    let dst = subsets(n, k + 1);
    let mut m = vec![vec![Rational::zero(); src.len()]; dst.len()];
    for (j, s) in src.iter().enumerate() {
        for p in 0..s.len() {
            for a in 0..n {
                for b in a + 1..n {
                    let c = alg.structure_constant(a, b, s[p]);
                    if c.is_zero() {
                        continue;
                    }
                    let mut t: Vec<usize> = s[..p].to_vec();
                    t.push(a);
                    t.push(b);
                    t.extend_from_slice(&s[p + 1..]);
                    let Some(sign) = sort_sign(&mut t) else { continue };
                    let parity = if p % 2 == 0 { 1 } else { -1 };
                    let i = dst.iter().position(|d| *d == t).unwrap();
                    let v = &m[i][j] - &(&c * &Rational::from(sign * parity));
                    m[i][j] = v;
                }
            }
        }
    }
    m
}

pub fn transpose(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    (0..cols).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
}

/// Rank by plain Gaussian elimination.
pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] * &inv;
                for cc in c..cols {
                    let v = &a[i][cc] - &(&f * &a[r][cc]);
                    a[i][cc] = v;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn weight(alg: &GradedLieAlgebra, s: &[usize]) -> usize {
    s.iter().map(|&i| alg.layer(i)).sum()
}

/// Betti numbers from full dense d0 matrices.
pub fn betti(alg: &GradedLieAlgebra) -> Vec<usize> {
    let n = alg.dim();
    let ranks: Vec<usize> = (0..n).map(|k| rank(&d0_matrix(alg, k))).collect();
    (0..=n)
        .map(|k| {
            let dim = subsets(n, k).len();
            dim - if k < n { ranks[k] } else { 0 } - if k > 0 { ranks[k - 1] } else { 0 }
        })
        .collect()
}

/// Ranks of ker delta / im delta per (degree, weight), delta being the
/// transpose of d0 (orthonormal basis). Zero entries omitted.
pub fn bgg(alg: &GradedLieAlgebra) -> Vec<(usize, usize, usize)> {
    let n = alg.dim();
    let mut out = Vec::new();
    // delta from degree k+1 to k, restricted to weight w on both sides.
    let block_rank = |k: usize, w: usize| -> usize {
        // rank of delta: Λ^{k} (weight w) -> Λ^{k-1}
        if k == 0 || k > n {
            return 0;
        }
        let d = d0_matrix(alg, k - 1);
        let src = subsets(n, k - 1);
        let dst = subsets(n, k);
        let rows: Vec<Vec<Rational>> = src
            .iter()
            .enumerate()
            .filter(|(_, s)| weight(alg, s) == w)
            .map(|(j, _)| {
                dst.iter()
                    .enumerate()
                    .filter(|(_, t)| weight(alg, t) == w)
                    .map(|(i, _)| d[i][j].clone())
                    .collect()
            })
            .collect();
        if rows.is_empty() || rows[0].is_empty() {
            0
        } else {
            rank(&rows)
        }
    };
    for k in 0..=n {
        let mut weights: Vec<usize> = subsets(n, k).iter().map(|s| weight(alg, s)).collect();
        weights.sort();
        weights.dedup();
        for w in weights {
            let dim = subsets(n, k).iter().filter(|s| weight(alg, s) == w).count();
            let r = dim - block_rank(k, w) - block_rank(k + 1, w);
            if r > 0 {
                out.push((k, w, r));
            }
        }
    }
    out
}
