//! N x N matrices with entries in U(g).
//!
//! The generator matrix `F = [F_ij]` (resp. `E`), its powers, traces against
//! rational matrices, and the form transposition. Entry products preserve
//! the left-to-right order of the noncommutative coefficients.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{AlgebraSpec, Family};
use crate::error::{AlgebraError, Result};
use crate::pbw::UElement;
use crate::scalar::{q, Q};
use crate::shift::ShiftMatrix;

#[derive(Clone, PartialEq, Eq)]
pub struct UMatrix {
    spec: Arc<AlgebraSpec>,
    data: Vec<UElement>, // row-major, n x n
}

impl std::fmt::Debug for UMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "UMatrix({} N={})", self.spec.family(), self.spec.n())?;
        for i in 1..=self.spec.n() {
            let row: Vec<String> = (1..=self.spec.n())
                .map(|j| self.entry(i, j).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(" | "))?;
        }
        Ok(())
    }
}

impl UMatrix {
    pub fn zero(spec: &Arc<AlgebraSpec>) -> UMatrix {
        let n = spec.n();
        UMatrix {
            spec: spec.clone(),
            data: vec![UElement::zero(spec); n * n],
        }
    }

    pub fn identity(spec: &Arc<AlgebraSpec>) -> UMatrix {
        let mut m = UMatrix::zero(spec);
        for i in 1..=spec.n() {
            *m.entry_mut(i, i) = UElement::unit(spec);
        }
        m
    }

    /// The generator matrix: entry (i,j) is `E[i,j]` resp. `F[i,j]`.
    pub fn generator_matrix(spec: &Arc<AlgebraSpec>) -> UMatrix {
        let n = spec.n();
        let mut m = UMatrix::zero(spec);
        for i in 1..=n {
            for j in 1..=n {
                *m.entry_mut(i, j) = UElement::entry(spec, i, j);
            }
        }
        m
    }

    /// Lift a rational matrix to a U-valued one.
    pub fn from_shift(mu: &ShiftMatrix) -> UMatrix {
        let spec = mu.spec().clone();
        let n = spec.n();
        let mut m = UMatrix::zero(&spec);
        for i in 1..=n {
            for j in 1..=n {
                *m.entry_mut(i, j) = UElement::scalar(&spec, mu.entry(i, j).clone());
            }
        }
        m
    }

    pub fn from_entries(spec: &Arc<AlgebraSpec>, data: Vec<UElement>) -> UMatrix {
        assert_eq!(data.len(), spec.n() * spec.n());
        UMatrix {
            spec: spec.clone(),
            data,
        }
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn entry(&self, i: usize, j: usize) -> &UElement {
        &self.data[(i - 1) * self.spec.n() + (j - 1)]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut UElement {
        &mut self.data[(i - 1) * self.spec.n() + (j - 1)]
    }

    pub fn mul(&self, rhs: &UMatrix) -> UMatrix {
        let n = self.spec.n();
        let mut out = UMatrix::zero(&self.spec);
        for i in 1..=n {
            for k in 1..=n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 1..=n {
                    let b = rhs.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    *out.entry_mut(i, j) = &*out.entry(i, j) + &prod;
                }
            }
        }
        out
    }

    /// Matrix power, with `pow(0)` the identity.
    pub fn pow(&self, e: u32) -> UMatrix {
        let mut acc = UMatrix::identity(&self.spec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn add(&self, rhs: &UMatrix) -> UMatrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = &*a + b;
        }
        out
    }

    pub fn sub(&self, rhs: &UMatrix) -> UMatrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = &*a - b;
        }
        out
    }

    pub fn scale(&self, c: &Q) -> UMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.scale(c);
        }
        out
    }

    /// Left multiplication by a rational matrix.
    pub fn mul_rat_left(&self, mu: &ShiftMatrix) -> UMatrix {
        let n = self.spec.n();
        let mut out = UMatrix::zero(&self.spec);
        for i in 1..=n {
            for k in 1..=n {
                let c = mu.entry(i, k);
                if c.is_zero() {
                    continue;
                }
                for j in 1..=n {
                    let b = self.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    *out.entry_mut(i, j) = &*out.entry(i, j) + &b.scale(c);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> UElement {
        let mut out = UElement::zero(&self.spec);
        for i in 1..=self.spec.n() {
            out = &out + self.entry(i, i);
        }
        out
    }

    /// `tr(mu X)` for a rational matrix mu: equals `sum_ij mu[i,j] X[j,i]`.
    pub fn trace_against(&self, mu: &ShiftMatrix) -> UElement {
        let mut out = UElement::zero(&self.spec);
        for (i, j, v) in mu.nonzero_entries() {
            out = &out + &self.entry(j, i).scale(&v);
        }
        out
    }

    /// Form transposition: `(X')_ij = eps_i eps_j X_{j'i'}` (plain transpose
    /// in the canonical presentation). Rejected for glN, which carries no
    /// form.
    pub fn transpose_prime(&self) -> Result<UMatrix> {
        if self.spec.family() == Family::GlN {
            return Err(AlgebraError::UnsupportedFamily {
                family: "glN".to_string(),
                reason: "no defining form, transposition-prime undefined".to_string(),
            });
        }
        let n = self.spec.n();
        let mut out = UMatrix::zero(&self.spec);
        for i in 1..=n {
            for j in 1..=n {
                let sign = q(self.spec.eps(i) * self.spec.eps(j));
                *out.entry_mut(i, j) = self
                    .entry(self.spec.prime(j), self.spec.prime(i))
                    .scale(&sign);
            }
        }
        Ok(out)
    }
}

/// Quantum trace of a generator power: `tr F^p` (a central element).
pub fn trace_power(spec: &Arc<AlgebraSpec>, p: u32) -> UElement {
    UMatrix::generator_matrix(spec).pow(p).trace()
}

/// `tr(mu F^p)`.
pub fn trace_mu_power(mu: &ShiftMatrix, p: u32) -> UElement {
    UMatrix::generator_matrix(mu.spec())
        .pow(p)
        .trace_against(mu)
}
