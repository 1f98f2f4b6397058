//! Shift matrices: the mu datum of the argument shift method.
//!
//! A shift matrix is an N x N rational matrix constrained by the algebra
//! type: arbitrary for glN, skew with respect to the defining form for the
//! split orthogonal/symplectic presentations (`mu[i,j] = -mu[j',i']`, with
//! the `eps` signs in the symplectic case) and plainly skew-symmetric for
//! the canonical even orthogonal presentation.
//!
//! File format: JSON `{"family": str, "N": int, "entries": [["p/q", ...], ...]}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSpec, Family};
use crate::error::{AlgebraError, Result};
use crate::scalar::{format_q, parse_q, q, Q};
use num_traits::Zero;

/// N x N rational shift matrix tied to an algebra spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftMatrix {
    spec: Arc<AlgebraSpec>,
    entries: Vec<Q>, // row-major
}

#[derive(Serialize, Deserialize)]
struct MuFile {
    family: String,
    #[serde(rename = "N")]
    n: usize,
    entries: Vec<Vec<String>>,
}

impl ShiftMatrix {
    /// Validate and wrap a row-major entry matrix.
    pub fn new(spec: &Arc<AlgebraSpec>, entries: Vec<Q>) -> Result<ShiftMatrix> {
        let n = spec.n();
        if entries.len() != n * n {
            return Err(AlgebraError::InvalidShiftMatrix(format!(
                "expected {}x{} entries, got {}",
                n,
                n,
                entries.len()
            )));
        }
        let m = ShiftMatrix {
            spec: spec.clone(),
            entries,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let n = self.spec.n();
        match self.spec.family() {
            Family::GlN => Ok(()),
            Family::SplitO | Family::SplitSp | Family::CanonicalO => {
                for i in 1..=n {
                    for j in 1..=n {
                        let (pi, pj) = (self.spec.prime(j), self.spec.prime(i));
                        let sign = q(self.spec.eps(i) * self.spec.eps(j));
                        let lhs = self.entry(i, j).clone();
                        let rhs = -(sign * self.entry(pi, pj).clone());
                        if lhs != rhs {
                            return Err(AlgebraError::InvalidShiftMatrix(format!(
                                "form skew-symmetry fails at ({i},{j}) for {}",
                                self.spec.family()
                            )));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// The default generic shift matrix of the family:
    /// diag(1..N) for glN; diag(1..n, [0], -n..-1) for the split types;
    /// the block-skew matrix sum_k k (e[2k-1,2k] - e[2k,2k-1]) for the
    /// canonical even orthogonal presentation.
    pub fn generic(spec: &Arc<AlgebraSpec>) -> ShiftMatrix {
        let n = spec.n();
        let mut entries = vec![Q::zero(); n * n];
        match spec.family() {
            Family::GlN => {
                for i in 1..=n {
                    entries[(i - 1) * n + (i - 1)] = q(i as i64);
                }
            }
            Family::SplitO | Family::SplitSp => {
                let half = n / 2;
                for i in 1..=half {
                    entries[(i - 1) * n + (i - 1)] = q(i as i64);
                    let ip = spec.prime(i);
                    entries[(ip - 1) * n + (ip - 1)] = q(-(i as i64));
                }
            }
            Family::CanonicalO => {
                for k in 1..=n / 2 {
                    let (a, b) = (2 * k - 1, 2 * k);
                    entries[(a - 1) * n + (b - 1)] = q(k as i64);
                    entries[(b - 1) * n + (a - 1)] = q(-(k as i64));
                }
            }
        }
        ShiftMatrix {
            spec: spec.clone(),
            entries,
        }
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    /// 1-based entry access.
    pub fn entry(&self, i: usize, j: usize) -> &Q {
        &self.entries[(i - 1) * self.spec.n() + (j - 1)]
    }

    /// Value of mu on a canonical generator (the entry at its index pair).
    pub fn of_gen(&self, g: crate::algebra::GenId) -> &Q {
        let (i, j) = self.spec.gen_pair(g);
        self.entry(i, j)
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.spec.n();
        (1..=n).all(|i| (1..=n).all(|j| i == j || self.entry(i, j).is_zero()))
    }

    /// Checks the genericity needed by the commutant characterization:
    /// diagonal with distinct entries, and for the split B/C/D types the
    /// leading entries mu_1..mu_n must also be nonzero.
    pub fn check_diagonal_generic(&self) -> Result<()> {
        if !self.is_diagonal() {
            return Err(AlgebraError::NonGenericMu("matrix is not diagonal".into()));
        }
        let n = self.spec.n();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.entry(i, i) == self.entry(j, j) {
                    return Err(AlgebraError::NonGenericMu(format!(
                        "repeated diagonal entries at {i},{j}"
                    )));
                }
            }
        }
        if self.spec.family().has_form() {
            for i in 1..=n / 2 {
                if self.entry(i, i).is_zero() {
                    return Err(AlgebraError::NonGenericMu(format!(
                        "mu_{i} must be nonzero for {}",
                        self.spec.family()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Nonzero entries as `(i, j, value)`, 1-based.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, Q)> {
        let n = self.spec.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let v = self.entry(i, j);
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    /// Matrix square (rational): used for checks involving mu^2.
    pub fn square(&self) -> Vec<Q> {
        let n = self.spec.n();
        let mut out = vec![Q::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &self.entries[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j] += a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<Q>> {
        let n = self.spec.n();
        (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect()
    }

    /// Parse from the JSON file format, building the spec as declared.
    pub fn from_json(text: &str) -> Result<ShiftMatrix> {
        let file: MuFile =
            serde_json::from_str(text).map_err(|e| AlgebraError::Parse(format!("mu file: {e}")))?;
        let family = Family::parse(&file.family)?;
        let spec = AlgebraSpec::build(family, file.n)?;
        let n = spec.n();
        if file.entries.len() != n || file.entries.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::InvalidShiftMatrix(format!(
                "entries must form an {n}x{n} matrix"
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in &file.entries {
            for cell in row {
                entries.push(parse_q(cell).map_err(AlgebraError::Parse)?);
            }
        }
        ShiftMatrix::new(&spec, entries)
    }

    pub fn to_json(&self) -> String {
        let n = self.spec.n();
        let file = MuFile {
            family: self.spec.family().name().to_string(),
            n,
            entries: (1..=n)
                .map(|i| (1..=n).map(|j| format_q(self.entry(i, j))).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&file).unwrap()
    }
}
