//! Multivariate polynomials with exact rational coefficients, in the
//! exponential coordinates of a graded group (one variable per basis vector).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::GradedLieAlgebra;
use crate::linalg::SparseVec;
use crate::rational::Rational;

/// Exponent vector of a monomial `x^α z^β`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents(pub Vec<u16>);

impl Exponents {
    pub fn constant(nvars: usize) -> Self {
        Exponents(vec![0; nvars])
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// Degree under the dilations: a variable of layer `j` counts `j`.
    pub fn homogeneous_degree(&self, algebra: &GradedLieAlgebra) -> usize {
        self.0.iter().enumerate().map(|(i, &e)| e as usize * algebra.layer(i)).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `∂/∂x_var` applied to the monomial: `(factor, exponents)`.
    pub fn differentiate(&self, var: usize) -> Option<(u16, Exponents)> {
        let e = self.0[var];
        if e == 0 {
            return None;
        }
        let mut out = self.clone();
        out.0[var] -= 1;
        Some((e, out))
    }

    pub fn times_var(&self, var: usize) -> Exponents {
        let mut out = self.clone();
        out.0[var] += 1;
        out
    }

    pub fn product(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All exponent vectors in `nvars` variables of total degree `<= max`, in
    /// increasing order.
    pub fn up_to_degree(nvars: usize, max: usize) -> Vec<Exponents> {
        fn rec(prefix: &mut Vec<u16>, left: usize, nvars: usize, out: &mut Vec<Exponents>) {
            if prefix.len() == nvars {
                out.push(Exponents(prefix.clone()));
                return;
            }
            for e in 0..=left {
                prefix.push(e as u16);
                rec(prefix, left - e, nvars, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::with_capacity(nvars), max, nvars, &mut out);
        out.sort();
        out
    }

    /// All exponent vectors of homogeneous degree exactly `h`.
    pub fn of_homogeneous_degree(algebra: &GradedLieAlgebra, h: usize) -> Vec<Exponents> {
        Self::up_to_degree(algebra.dim(), h)
            .into_iter()
            .filter(|e| e.homogeneous_degree(algebra) == h)
            .collect()
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate().filter(|(_, e)| **e > 0) {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "u{}", i + 1)?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// A polynomial: exponent vector to coefficient.
pub type Polynomial = SparseVec<Exponents>;

pub fn constant(nvars: usize, c: Rational) -> Polynomial {
    Polynomial::from_terms([(Exponents::constant(nvars), c)])
}

pub fn variable(nvars: usize, var: usize) -> Polynomial {
    Polynomial::unit(Exponents::constant(nvars).times_var(var))
}

pub fn derivative(p: &Polynomial, var: usize) -> Polynomial {
    let mut out = Polynomial::new();
    for (m, c) in p.iter() {
        if let Some((f, m2)) = m.differentiate(var) {
            out.add_term(m2, &(c * &Rational::from(f as i64)));
        }
    }
    out
}

pub fn multiply(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let mut out = Polynomial::new();
    for (a, ca) in p.iter() {
        for (b, cb) in q.iter() {
            out.add_term(a.product(b), &(ca * cb));
        }
    }
    out
}

pub fn degree(p: &Polynomial) -> Option<usize> {
    p.keys().map(Exponents::degree).max()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        // C(n + d, d)
        assert_eq!(Exponents::up_to_degree(3, 2).len(), 10);
        assert_eq!(Exponents::up_to_degree(5, 3).len(), 56);
        assert_eq!(Exponents::up_to_degree(2, 0), vec![Exponents(vec![0, 0])]);
    }

    #[test]
    fn leibniz_rule() {
        let x = variable(2, 0);
        let y = variable(2, 1);
        let mut p = multiply(&x, &x);
        p.add(&y);
        let mut q = multiply(&x, &y);
        q.add(&constant(2, Rational::from(3)));
        let lhs = derivative(&multiply(&p, &q), 0);
        let mut rhs = multiply(&derivative(&p, 0), &q);
        rhs.add(&multiply(&p, &derivative(&q, 0)));
        assert_eq!(lhs, rhs);
        assert_eq!(degree(&multiply(&p, &q)), Some(4));
    }
}
