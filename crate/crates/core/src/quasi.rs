//! Quasi-derivations on U(g) and the shift operator D_mu.
//!
//! The operators `d_ij` act by zero on 1, by explicit delta formulas on the
//! canonical generators, and satisfy the quantum Leibniz rule
//!
//! ```text
//! d_ij(f g) = (d_ij f) g + f (d_ij g) - sum_k (d_ik f)(d_kj g).
//! ```
//!
//! Evaluation on a PBW monomial proceeds by splitting off the leading
//! generator; the rule then determines the value on all of U(g). That this
//! is independent of the chosen factorization (well-definedness) is an
//! executable property checked by [`leibniz_consistency_check`], not an
//! assumption.
//!
//! For glN there is an alternative family (`hat`) obeying the transposed
//! plus-sign rule; the two are conjugate under the automorphism
//! `E[k,l] -> -E[l,k]`.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{AlgebraSpec, Family};
use crate::error::{AlgebraError, Result};
use crate::pbw::{add_scaled, gen_times_mono, PbwMonomial, Terms, UElement};
use crate::random::ElementSampler;
use crate::scalar::{q, Q};
use crate::shift::ShiftMatrix;

/// Which quantum Leibniz rule the operator obeys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivKind {
    /// Minus-sign rule; defined for every supported family.
    Standard,
    /// Transposed plus-sign rule; glN only.
    Hat,
}

impl DerivKind {
    fn code(&self) -> u8 {
        match self {
            DerivKind::Standard => 0,
            DerivKind::Hat => 1,
        }
    }
}

/// `d_ij` applied to a single canonical generator: a scalar.
pub fn deriv_gen(spec: &AlgebraSpec, i: usize, j: usize, g: crate::algebra::GenId) -> Q {
    let (k, l) = spec.gen_pair(g);
    let mut v = 0i64;
    if k == j && l == i {
        v += 1;
    }
    match spec.family() {
        Family::GlN => {}
        Family::SplitO => {
            if k == spec.prime(i) && l == spec.prime(j) {
                v -= 1;
            }
        }
        Family::SplitSp => {
            if k == spec.prime(i) && l == spec.prime(j) {
                v -= spec.eps(k) * spec.eps(l);
            }
        }
        Family::CanonicalO => {
            if k == i && l == j {
                v -= 1;
            }
        }
    }
    q(v)
}

fn deriv_mono(
    spec: &Arc<AlgebraSpec>,
    kind: DerivKind,
    i: usize,
    j: usize,
    m: &PbwMonomial,
) -> Arc<Terms> {
    let key = (kind.code(), i as u8, j as u8, m.clone());
    if let Some(hit) = spec.caches.quasi.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let mut out = Terms::new();
    if let Some((g, rest)) = m.split_leading() {
        // d_ij(g * rest) via the quantum Leibniz rule with f = g
        let s = deriv_gen(spec, i, j, g);
        if !s.is_zero() {
            let mut t = Terms::new();
            t.insert(rest.clone(), s);
            add_scaled(&mut out, &t, &q(1));
        }
        // g * d_ij(rest)
        let inner = deriv_mono(spec, kind, i, j, &rest);
        for (t, c) in inner.iter() {
            let prod = gen_times_mono(spec, g, t);
            add_scaled(&mut out, &prod, c);
        }
        // correction sum over k
        for k in 1..=spec.n() {
            let (s, ii, jj) = match kind {
                // - sum_k (d_ik g)(d_kj rest)
                DerivKind::Standard => (-deriv_gen(spec, i, k, g), k, j),
                // + sum_k (d_kj g)(d_ik rest)
                DerivKind::Hat => (deriv_gen(spec, k, j, g), i, k),
            };
            if s.is_zero() {
                continue;
            }
            let inner = deriv_mono(spec, kind, ii, jj, &rest);
            add_scaled(&mut out, &inner, &s);
        }
    }
    let out = Arc::new(out);
    spec.caches.quasi.lock().unwrap().insert(key, out.clone());
    out
}

/// Apply the quasi-derivation `d_ij` to an element.
pub fn quasi_derive(f: &UElement, i: usize, j: usize, kind: DerivKind) -> Result<UElement> {
    let spec = f.spec().clone();
    let n = spec.n();
    if i < 1 || i > n || j < 1 || j > n {
        return Err(AlgebraError::IndexOutOfRange { i, j, n });
    }
    if kind == DerivKind::Hat && spec.family() != Family::GlN {
        return Err(AlgebraError::HatRequiresGl {
            family: spec.family().name().to_string(),
        });
    }
    Ok(quasi_derive_unchecked(f, i, j, kind))
}

pub(crate) fn quasi_derive_unchecked(
    f: &UElement,
    i: usize,
    j: usize,
    kind: DerivKind,
) -> UElement {
    let spec = f.spec().clone();
    let mut out = Terms::new();
    for (m, c) in f.terms() {
        let d = deriv_mono(&spec, kind, i, j, m);
        add_scaled(&mut out, &d, c);
    }
    UElement::from_terms(&spec, out)
}

/// The shift operator `D_mu = tr(mu D)`: `sum_ij mu[i,j] d_ji`.
pub fn d_mu(mu: &ShiftMatrix, f: &UElement) -> UElement {
    assert_eq!(mu.spec().key(), f.spec().key(), "spec mismatch");
    let spec = f.spec().clone();
    let mut out = UElement::zero(&spec);
    for (i, j, v) in mu.nonzero_entries() {
        out = &out + &quasi_derive_unchecked(f, j, i, DerivKind::Standard).scale(&v);
    }
    out
}

/// p-fold composition of `D_mu` (p = 0 is the identity).
pub fn d_mu_iterate(mu: &ShiftMatrix, f: &UElement, p: u32) -> UElement {
    let mut acc = f.clone();
    for _ in 0..p {
        acc = d_mu(mu, &acc);
    }
    acc
}

/// Right side of the quantum Leibniz rule, assembled from the quasi-
/// derivations of the two factors separately.
pub fn leibniz_rhs(f: &UElement, g: &UElement, i: usize, j: usize, kind: DerivKind) -> UElement {
    let spec = f.spec().clone();
    let n = spec.n();
    let mut out = &(&quasi_derive_unchecked(f, i, j, kind) * g)
        + &(f * &quasi_derive_unchecked(g, i, j, kind));
    for k in 1..=n {
        let (df, dg) = match kind {
            DerivKind::Standard => (
                quasi_derive_unchecked(f, i, k, kind),
                quasi_derive_unchecked(g, k, j, kind),
            ),
            DerivKind::Hat => (
                quasi_derive_unchecked(f, k, j, kind),
                quasi_derive_unchecked(g, i, k, kind),
            ),
        };
        if df.is_zero() || dg.is_zero() {
            continue;
        }
        let prod = &df * &dg;
        out = match kind {
            DerivKind::Standard => &out - &prod,
            DerivKind::Hat => &out + &prod,
        };
    }
    out
}

/// A single well-definedness violation, with full witnesses.
#[derive(Debug)]
pub struct ConsistencyViolation {
    pub i: usize,
    pub j: usize,
    pub f: UElement,
    pub g: UElement,
    pub lhs: UElement,
    pub rhs: UElement,
}

/// Outcome of [`leibniz_consistency_check`].
#[derive(Debug)]
pub struct ConsistencyReport {
    pub trials: usize,
    pub violations: Vec<ConsistencyViolation>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Well-definedness check: for random `f, g` and every index pair `(i,j)`,
/// the quasi-derivation of the normal-formed product must equal the right
/// side of the quantum Leibniz rule computed from the factors.
pub fn leibniz_consistency_check(
    spec: &Arc<AlgebraSpec>,
    trials: usize,
    seed: u64,
    kind: DerivKind,
) -> ConsistencyReport {
    assert!(trials >= 1);
    let mut sampler = ElementSampler::new(seed);
    let mut violations = Vec::new();
    let n = spec.n();
    for _ in 0..trials {
        let f = sampler.element(spec, 2, 2);
        let g = sampler.element(spec, 2, 2);
        let fg = &f * &g;
        for i in 1..=n {
            for j in 1..=n {
                let lhs = quasi_derive_unchecked(&fg, i, j, kind);
                let rhs = leibniz_rhs(&f, &g, i, j, kind);
                if lhs != rhs {
                    violations.push(ConsistencyViolation {
                        i,
                        j,
                        f: f.clone(),
                        g: g.clone(),
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    ConsistencyReport { trials, violations }
}
