//! Executable verification harness.
//!
//! Every mathematical assertion the library is built on is runnable: identity
//! checks over the tensor calculus, commutant-membership and commutativity
//! checks for the generator families, the counterexamples showing what fails
//! beyond glN, and the classical (Poisson) oracle. Each check produces a
//! [`CheckReport`]; failures carry the full residual element as a witness.
//!
//! Counterexample checks pass when the relevant element is exactly nonzero;
//! they are the one place where a passing report still carries a witness
//! (the nonzero element itself).

use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{AlgebraSpec, Family, GenId};
use crate::error::Result;
use crate::generators::{
    amu_generating_family, central_basis, gamma_m, gelfand_generator, omega_of, pf_shift_coeffs,
    pfaffian, pfaffian_gradient, phi, phi_brauer_form, psi, t_element, GeneratorFamily,
};
use crate::linsolve::{express_in_span, express_tensor_in_span};
use crate::pbw::UElement;
use crate::quasi::{d_mu, d_mu_iterate, leibniz_consistency_check, DerivKind};
use crate::random::ElementSampler;
use crate::scalar::{q, Q};
use crate::shift::ShiftMatrix;
use crate::sym::{argument_shift, classical_dmu, classical_trace_power, poisson_bracket, symbol};
use crate::tensor::{antisymmetrizer, brauer_symmetrizer, TensorElement};
use crate::umatrix::{trace_mu_power, trace_power, UMatrix};

/// Outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One machine-readable check result.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    pub witness: Option<String>,
    pub ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).unwrap()
    }
}

fn run(check: &str, f: impl FnOnce() -> (bool, Option<String>)) -> CheckReport {
    let start = Instant::now();
    let (ok, witness) = f();
    CheckReport {
        check: check.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        witness,
        ms: start.elapsed().as_millis() as u64,
    }
}

/// Pass iff the element is exactly zero; otherwise the element itself is the
/// witness.
fn expect_zero(check: &str, value: UElement) -> CheckReport {
    run(check, || {
        if value.is_zero() {
            (true, None)
        } else {
            (false, Some(truncate(value.to_string(), 4000)))
        }
    })
}

fn expect_tensor_zero(check: &str, value: TensorElement) -> CheckReport {
    run(check, || {
        if value.is_zero() {
            (true, None)
        } else {
            let dump = crate::tensor::dump_json(&value).to_string();
            (false, Some(truncate(dump, 4000)))
        }
    })
}

fn truncate(mut s: String, cap: usize) -> String {
    if s.len() > cap {
        s.truncate(cap);
        s.push_str("...");
    }
    s
}

fn spec_tag(spec: &AlgebraSpec) -> String {
    let fam = match spec.family() {
        Family::GlN => "gl",
        Family::SplitO => "o",
        Family::SplitSp => "sp",
        Family::CanonicalO => "o-can",
    };
    format!("{}{}", fam, spec.n())
}

/// `a = c * b` for a nonzero rational `c`?
fn proportional_u(a: &UElement, b: &UElement) -> Option<Q> {
    if b.is_zero() || a.is_zero() {
        return None;
    }
    let (m, cb) = b.terms().iter().next()?;
    let ca = a.terms().get(m)?;
    let c = ca.clone() / cb.clone();
    (!c.is_zero() && *a == b.scale(&c)).then_some(c)
}

fn binom_q(n: i64, k: i64) -> Q {
    if k < 0 || k > n {
        return Q::zero();
    }
    let mut acc = q(1);
    for i in 0..k {
        acc = acc * q(n - i) / q(i + 1);
    }
    acc
}

// ---- Core check operations ----

/// Pass iff `[g, f] = 0` for every canonical generator `g`.
pub fn is_central(check: &str, f: &UElement) -> CheckReport {
    run(check, || {
        let spec = f.spec().clone();
        for g in 0..spec.dim() as GenId {
            let x = UElement::from_gen(&spec, g);
            let c = x.commutator(f);
            if !c.is_zero() {
                let (i, j) = spec.gen_pair(g);
                return (
                    false,
                    Some(format!(
                        "[{}[{},{}], f] = {}",
                        spec.family().letter(),
                        i,
                        j,
                        truncate(c.to_string(), 2000)
                    )),
                );
            }
        }
        (true, None)
    })
}

/// The commutant membership criterion for diagonal generic mu: pass iff `f`
/// commutes with every Cartan generator and every `T_i` of the type's index
/// range. This characterizes the quantum Mishchenko--Fomenko subalgebra for
/// generic regular semisimple mu only.
pub fn amu_membership(mu: &ShiftMatrix, f: &UElement) -> Result<(bool, Option<String>)> {
    mu.check_diagonal_generic()?;
    let spec = f.spec().clone();
    let n = spec.n();
    let imax = if spec.family() == Family::GlN {
        n
    } else {
        n / 2
    };
    for i in 1..=imax {
        let h = UElement::entry(&spec, i, i);
        let c = h.commutator(f);
        if !c.is_zero() {
            return Ok((
                false,
                Some(format!("[H_{i}, f] = {}", truncate(c.to_string(), 2000))),
            ));
        }
    }
    for i in 1..=imax {
        let t = t_element(&spec, mu, i)?;
        let c = t.commutator(f);
        if !c.is_zero() {
            return Ok((
                false,
                Some(format!("[T_{i}, f] = {}", truncate(c.to_string(), 2000))),
            ));
        }
    }
    Ok((true, None))
}

pub fn amu_membership_report(check: &str, mu: &ShiftMatrix, f: &UElement) -> CheckReport {
    run(check, || match amu_membership(mu, f) {
        Ok(r) => r,
        Err(e) => (false, Some(format!("error: {e}"))),
    })
}

/// Pass iff all pairwise commutators of the family members vanish.
pub fn pairwise_commuting(check: &str, family: &GeneratorFamily) -> CheckReport {
    run(check, || {
        for a in 0..family.members.len() {
            for b in a + 1..family.members.len() {
                let c = family.members[a].1.commutator(&family.members[b].1);
                if !c.is_zero() {
                    return (
                        false,
                        Some(format!(
                            "[{:?}, {:?}] = {}",
                            family.members[a].0,
                            family.members[b].0,
                            truncate(c.to_string(), 2000)
                        )),
                    );
                }
            }
        }
        (true, None)
    })
}

/// glN iterated-shift membership: `D_mu^p z` satisfies the commutant
/// criterion for all `p <= p_max`.
pub fn check_gl_iterates(
    tag: &str,
    mu: &ShiftMatrix,
    z: &UElement,
    p_max: u32,
) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut cur = z.clone();
    for p in 0..=p_max {
        if p > 0 {
            cur = d_mu(mu, &cur);
        }
        out.push(amu_membership_report(
            &format!("dmu-iterate-membership/{tag}/p{p}"),
            mu,
            &cur,
        ));
    }
    out
}

/// Single-step membership for the orthogonal/symplectic split presentations:
/// `D_mu z` satisfies the commutant criterion.
pub fn check_bcd_single_step(tag: &str, mu: &ShiftMatrix, z: &UElement) -> CheckReport {
    amu_membership_report(&format!("single-step-membership/{tag}"), mu, &d_mu(mu, z))
}

// ---- Counterexamples ----

/// glN counterexample path: the subalgebra is not stable under D_mu.
/// Passes iff (a) `[T_i, tr mu^2 E^2] != 0` for some i, (b) the image
/// `D_mu(tr mu E * tr E^3)` fails the membership criterion, and (c) the
/// image minus `3 tr mu^2 E^2` passes it (the reduction identity).
pub fn counterexample_gl(spec: &Arc<AlgebraSpec>, mu: &ShiftMatrix) -> Vec<CheckReport> {
    let tag = spec_tag(spec);
    let mut out = Vec::new();
    let tr_mu2_e2 = trace_weight_power(&mu.square(), spec, 2);

    out.push(run(
        &format!("counterexample-gl/{tag}/t-commutator"),
        || {
            for i in 1..=spec.n() {
                let t = t_element(spec, mu, i).unwrap();
                let c = t.commutator(&tr_mu2_e2);
                if !c.is_zero() {
                    return (
                        true,
                        Some(format!(
                            "[T_{i}, tr mu^2 E^2] = {}",
                            truncate(c.to_string(), 2000)
                        )),
                    );
                }
            }
            (false, Some("all commutators vanished".to_string()))
        },
    ));

    // y = D_mu(tr mu E * tr E^3)
    let y = d_mu(mu, &(&trace_mu_power(mu, 1) * &trace_power(spec, 3)));
    out.push(run(
        &format!("counterexample-gl/{tag}/image-not-member"),
        || match amu_membership(mu, &y) {
            Ok((false, w)) => (true, w),
            Ok((true, _)) => (false, Some("image unexpectedly in the commutant".into())),
            Err(e) => (false, Some(format!("error: {e}"))),
        },
    ));

    // the image reduces to -3 tr mu^2 E^2 modulo the subalgebra (the
    // Leibniz correction term carries the minus sign)
    let reduced = &y + &tr_mu2_e2.scale(&q(3));
    out.push(run(
        &format!("counterexample-gl/{tag}/reduction-identity"),
        || match amu_membership(mu, &reduced) {
            Ok(r) => r,
            Err(e) => (false, Some(format!("error: {e}"))),
        },
    ));
    out
}

/// `tr(W F^p)` for a plain rational weight matrix `W` (row-major), used for
/// weights like mu^2 that need not satisfy the family's skew constraint.
fn trace_weight_power(w: &[Q], spec: &Arc<AlgebraSpec>, p: u32) -> UElement {
    let n = spec.n();
    let fp = UMatrix::generator_matrix(spec).pow(p);
    let mut out = UElement::zero(spec);
    for i in 1..=n {
        for j in 1..=n {
            let c = &w[(i - 1) * n + (j - 1)];
            if !c.is_zero() {
                out = &out + &fp.entry(j, i).scale(c);
            }
        }
    }
    out
}

/// Informational glN observation at small N (no assertion): reports whether
/// `tr mu^2 E^2` commutes with every `T_i`.
pub fn observe_gl_small(spec: &Arc<AlgebraSpec>, mu: &ShiftMatrix) -> String {
    let f = trace_weight_power(&mu.square(), spec, 2);
    let nonzero = (1..=spec.n()).any(|i| {
        !t_element(spec, mu, i)
            .map(|t| t.commutator(&f).is_zero())
            .unwrap_or(true)
    });
    format!(
        "{}: [T_i, tr mu^2 E^2] {} for generic diagonal mu",
        spec_tag(spec),
        if nonzero { "nonzero" } else { "all zero" }
    )
}

/// Orthogonal counterexample path at N = 5: iterated shifts leave the
/// subalgebra. Passes iff the explicit cubic coefficient element is nonzero
/// in PBW form, `[T_1, D_mu^2 (tr F^2)^3] != 0`, and the trace reduction
/// `2 tr mu F^2 = (N-2) tr mu F` holds.
pub fn counterexample_orthogonal(spec: &Arc<AlgebraSpec>, mu: &ShiftMatrix) -> Vec<CheckReport> {
    assert_eq!(spec.family(), Family::SplitO);
    assert_eq!(spec.n(), 5);
    let tag = spec_tag(spec);
    let mut out = Vec::new();

    // F12 F23 F31 - F13 F32 F21 + F[1,2'] F32 F31 - F13 F23 F[2',1], 2' = 4
    let e = |i, j| UElement::entry(spec, i, j);
    let coeff = &(&(&(&e(1, 2) * &e(2, 3)) * &e(3, 1)) - &(&(&e(1, 3) * &e(3, 2)) * &e(2, 1)))
        + &(&(&(&e(1, 4) * &e(3, 2)) * &e(3, 1)) - &(&(&e(1, 3) * &e(2, 3)) * &e(4, 1)));
    out.push(run(
        &format!("counterexample-bcd/{tag}/cubic-coefficient-nonzero"),
        || {
            if coeff.is_zero() {
                (false, Some("coefficient element is zero".into()))
            } else {
                (true, Some(coeff.to_string()))
            }
        },
    ));

    // [T_1, tr mu^2 F^2] != 0, and it equals the closed form
    // sum_{k != 1} 2 (mu_1 + mu_k) (F_1k (F^2)_k1 - (F^2)_1k F_k1)
    let t1 = t_element(spec, mu, 1).unwrap();
    let tr_mu2_f2 = trace_weight_power(&mu.square(), spec, 2);
    let comm = t1.commutator(&tr_mu2_f2);
    out.push(run(
        &format!("counterexample-bcd/{tag}/t1-mu2-commutator-nonzero"),
        || {
            if comm.is_zero() {
                (false, Some("[T_1, tr mu^2 F^2] = 0".into()))
            } else {
                (true, Some(truncate(comm.to_string(), 2000)))
            }
        },
    ));
    out.push(run(
        &format!("counterexample-bcd/{tag}/t1-commutator-closed-form"),
        || {
            let f = UMatrix::generator_matrix(spec);
            let f2 = f.pow(2);
            let mut rhs = UElement::zero(spec);
            for k in 1..=spec.n() {
                if k == 1 {
                    continue;
                }
                let w = q(2) * (mu.entry(1, 1).clone() + mu.entry(k, k).clone());
                let term = &(&UElement::entry(spec, 1, k) * f2.entry(k, 1))
                    - &(f2.entry(1, k) * &UElement::entry(spec, k, 1));
                rhs = &rhs + &term.scale(&w);
            }
            let diff = &comm - &rhs;
            if diff.is_zero() {
                (true, None)
            } else {
                (false, Some(truncate(diff.to_string(), 2000)))
            }
        },
    ));

    let z = trace_power(spec, 2).pow(3);
    let image = d_mu_iterate(mu, &z, 2);
    out.push(run(
        &format!("counterexample-bcd/{tag}/t1-commutator-nonzero"),
        || {
            let t1 = t_element(spec, mu, 1).unwrap();
            let c = t1.commutator(&image);
            if c.is_zero() {
                (false, Some("[T_1, D_mu^2 (tr F^2)^3] = 0".into()))
            } else {
                (true, Some(truncate(c.to_string(), 2000)))
            }
        },
    ));

    // 2 tr mu F^2 = (N-2) tr mu F
    let lhs = trace_mu_power(mu, 2).scale(&q(2));
    let rhs = trace_mu_power(mu, 1).scale(&q(spec.n() as i64 - 2));
    out.push(expect_zero(
        &format!("counterexample-bcd/{tag}/trace-reduction"),
        &lhs - &rhs,
    ));
    out
}

/// Informational observation at o_4 (no assertion).
pub fn observe_o4(spec: &Arc<AlgebraSpec>, mu: &ShiftMatrix) -> String {
    let f = trace_weight_power(&mu.square(), spec, 2);
    let nonzero = (1..=spec.n() / 2).any(|i| {
        !t_element(spec, mu, i)
            .map(|t| t.commutator(&f).is_zero())
            .unwrap_or(true)
    });
    format!(
        "{}: [T_i, tr mu^2 F^2] {} for generic diagonal mu",
        spec_tag(spec),
        if nonzero { "nonzero" } else { "all zero" }
    )
}

// ---- Suite configuration ----

/// Configuration of a suite run.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Only run checks whose spec family is in the filter (None = all).
    pub families: Option<Vec<Family>>,
    /// Only run checks whose spec has N <= max_n.
    pub max_n: usize,
    pub seed: u64,
    /// Trials for the well-definedness (consistency) checks.
    pub trials: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            families: None,
            max_n: 5,
            seed: 1,
            trials: 200,
        }
    }
}

impl SuiteConfig {
    fn wants(&self, spec: &AlgebraSpec) -> bool {
        spec.n() <= self.max_n
            && self
                .families
                .as_ref()
                .map_or(true, |fs| fs.contains(&spec.family()))
    }
}

fn spec_of(family: Family, n: usize) -> Arc<AlgebraSpec> {
    AlgebraSpec::build(family, n).unwrap()
}

fn form_specs(cfg: &SuiteConfig) -> Vec<Arc<AlgebraSpec>> {
    [
        (Family::SplitO, 4),
        (Family::SplitO, 5),
        (Family::SplitSp, 4),
        (Family::CanonicalO, 4),
    ]
    .into_iter()
    .map(|(f, n)| spec_of(f, n))
    .filter(|s| cfg.wants(s))
    .collect()
}

/// Tensor with `op` acting on slots 1..m and the identity on slot 0.
fn shifted_up(op: &TensorElement) -> TensorElement {
    let m = op.slots();
    let ext = op.extend_identity(1);
    let mut sigma: Vec<usize> = (1..=m).collect();
    sigma.push(0);
    ext.permute_slots(&sigma)
}

// ---- Identity suite ----

/// The identity suite at the configured caps.
pub fn identity_checks(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();

    // P/Q sign relation: P Q = Q P = +Q (orthogonal), -Q (symplectic)
    for spec in form_specs(cfg) {
        let p = TensorElement::perm(&spec, 2, 0, 1).unwrap();
        let qq = TensorElement::q_op(&spec, 2, 0, 1).unwrap();
        let sign = if spec.family() == Family::SplitSp {
            q(-1)
        } else {
            q(1)
        };
        out.push(expect_tensor_zero(
            &format!("pq-sign/{}", spec_tag(&spec)),
            p.mul(&qq)
                .sub(&qq.scale(&sign))
                .add(&qq.mul(&p).sub(&qq.scale(&sign))),
        ));
    }

    // power-swap relation: [E_1^r, E_0^s] = sum_a (E_0^{a-1} E_1^{r+s-a} P
    //                                             - E_0^{r+s-a} E_1^{a-1} P)
    for n in [2usize, 3] {
        let spec = spec_of(Family::GlN, n);
        if !cfg.wants(&spec) {
            continue;
        }
        let e = UMatrix::generator_matrix(&spec);
        let p01 = TensorElement::perm(&spec, 2, 0, 1).unwrap();
        let at = |pow: u32, slot: usize| TensorElement::umatrix_at(&e.pow(pow), 2, slot).unwrap();
        for r in 1..=5u32 {
            for s in 1..=(6 - r).min(5) {
                let lhs = at(r, 1).mul(&at(s, 0)).sub(&at(s, 0).mul(&at(r, 1)));
                let mut rhs = TensorElement::zero(&spec, 2);
                for a in 1..=r.min(s) {
                    rhs = rhs
                        .add(&at(a - 1, 0).mul(&at(r + s - a, 1)).mul(&p01))
                        .sub(&at(r + s - a, 0).mul(&at(a - 1, 1)).mul(&p01));
                }
                out.push(expect_tensor_zero(
                    &format!("power-swap/gl{n}/r{r}s{s}"),
                    lhs.sub(&rhs),
                ));
            }
        }
    }

    // trace-swap contraction: tr_1 X_1 P_01 = X_0 and tr_1 P_01 X_0 = X_0
    for (fam, n) in [(Family::GlN, 3), (Family::SplitO, 4), (Family::SplitSp, 4)] {
        let spec = spec_of(fam, n);
        if !cfg.wants(&spec) {
            continue;
        }
        let p01 = TensorElement::perm(&spec, 2, 0, 1).unwrap();
        let x = UMatrix::generator_matrix(&spec).pow(2);
        let x1 = TensorElement::umatrix_at(&x, 2, 1).unwrap();
        let x0 = TensorElement::umatrix_at(&x, 2, 0).unwrap();
        let x0_single = TensorElement::umatrix_at(&x, 1, 0).unwrap();
        let first = x1.mul(&p01).partial_trace(&[1]).sub(&x0_single);
        let second = p01.mul(&x0).partial_trace(&[1]).sub(&x0_single);
        out.push(expect_tensor_zero(
            &format!("trace-swap/{}", spec_tag(&spec)),
            first.add(&second),
        ));
    }

    // antisymmetrizer absorbs swap chains:
    // A^(m) P_{0 i1} ... P_{0 is} = (-1)^(s-1) A^(m) P_{0 i1}
    {
        let spec = spec_of(Family::GlN, 3);
        if cfg.wants(&spec) {
            for m in 2..=4usize {
                let a = shifted_up(&antisymmetrizer(&spec, m));
                for s in 2..=m {
                    let mut lhs = a.clone();
                    for i in 1..=s {
                        lhs = lhs.mul(&TensorElement::perm(&spec, m + 1, 0, i).unwrap());
                    }
                    let sign = if s % 2 == 1 { q(1) } else { q(-1) };
                    let rhs = a
                        .mul(&TensorElement::perm(&spec, m + 1, 0, 1).unwrap())
                        .scale(&sign);
                    out.push(expect_tensor_zero(
                        &format!("antisym-swap-chain/gl3/m{m}s{s}"),
                        lhs.sub(&rhs),
                    ));
                }
            }
        }
    }

    // trace conjugation invariance: tr A^(m) X = tr A^(m) p(X)
    {
        let spec = spec_of(Family::GlN, 3);
        if cfg.wants(&spec) {
            let mut sampler = ElementSampler::new(cfg.seed.wrapping_add(101));
            for m in 2..=4usize {
                let a = antisymmetrizer(&spec, m);
                let x = random_tensor(&spec, m, &mut sampler);
                let sigma = random_permutation(m, &mut sampler);
                let lhs = a.mul(&x).trace_all();
                let rhs = a.mul(&x.permute_slots(&sigma)).trace_all();
                out.push(expect_zero(
                    &format!("trace-conjugation/gl3/m{m}"),
                    &lhs - &rhs,
                ));
            }
        }
    }

    // partial traces of the antisymmetrizer:
    // tr_{m-s+2..m} A^(m) = binom(N-m+s-1, s-1) binom(m, s-1)^{-1} A^(m-s+1)
    for n in 2..=5usize {
        let spec = spec_of(Family::GlN, n);
        if !cfg.wants(&spec) {
            continue;
        }
        for m in 2..=n {
            let a = antisymmetrizer(&spec, m);
            for s in 2..=m {
                let slots: Vec<usize> = (m - s + 1..m).collect();
                let lhs = a.partial_trace(&slots);
                let c = binom_q((n + s) as i64 - m as i64 - 1, s as i64 - 1)
                    / binom_q(m as i64, s as i64 - 1);
                let rhs = antisymmetrizer(&spec, m - s + 1).scale(&c);
                out.push(expect_tensor_zero(
                    &format!("antisym-partial-trace/gl{n}/m{m}s{s}"),
                    lhs.sub(&rhs),
                ));
            }
        }
    }

    // Q sandwich: Q F_0^q Q = Q F_1^q Q = Q tr F^q;
    // Q transpose transfer: Q F_1^q = Q (F_0^q)' and F_1^q Q = (F_0^q)' Q
    for spec in form_specs(cfg) {
        let f = UMatrix::generator_matrix(&spec);
        let qq = TensorElement::q_op(&spec, 2, 0, 1).unwrap();
        for p in 1..=4u32 {
            let fp = f.pow(p);
            let f0 = TensorElement::umatrix_at(&fp, 2, 0).unwrap();
            let f1 = TensorElement::umatrix_at(&fp, 2, 1).unwrap();
            let trfp = fp.trace();
            let sandwich0 = qq.mul(&f0).mul(&qq).sub(&qq.scale_u_right(&trfp));
            let sandwich1 = qq.mul(&f1).mul(&qq).sub(&qq.scale_u_right(&trfp));
            out.push(expect_tensor_zero(
                &format!("q-sandwich/{}/p{p}", spec_tag(&spec)),
                sandwich0.add(&sandwich1),
            ));
            let fpt = TensorElement::umatrix_at(&fp.transpose_prime().unwrap(), 2, 0).unwrap();
            let left = qq.mul(&f1).sub(&qq.mul(&fpt));
            let right = f1.mul(&qq).sub(&fpt.mul(&qq));
            out.push(expect_tensor_zero(
                &format!("q-transpose-transfer/{}/p{p}", spec_tag(&spec)),
                left.add(&right),
            ));
        }
    }

    // chain reversal through P and Q
    for (fam, n) in [(Family::SplitO, 4), (Family::SplitSp, 4)] {
        let spec = spec_of(fam, n);
        if !cfg.wants(&spec) {
            continue;
        }
        for s in 2..=4usize {
            let m = s + 1;
            let phi_at = |a: usize, b: usize| TensorElement::phi_op(&spec, m, a, b).unwrap();
            let p01 = TensorElement::perm(&spec, m, 0, 1).unwrap();
            let q01 = TensorElement::q_op(&spec, m, 0, 1).unwrap();
            // i_k = k for k = 1..s
            let mut lhs_p = p01.clone();
            let mut lhs_q = q01.clone();
            for i in 2..=s {
                lhs_p = lhs_p.mul(&phi_at(0, i));
                lhs_q = lhs_q.mul(&phi_at(0, i));
            }
            let mut rhs_p = TensorElement::identity(&spec, m);
            for i in 2..=s {
                rhs_p = rhs_p.mul(&phi_at(1, i));
            }
            rhs_p = rhs_p.mul(&p01);
            let mut rhs_q = q01.clone();
            for i in (2..=s).rev() {
                rhs_q = rhs_q.mul(&phi_at(1, i));
            }
            let sign = if s % 2 == 1 { q(1) } else { q(-1) };
            rhs_q = rhs_q.scale(&sign);
            out.push(expect_tensor_zero(
                &format!("pq-chain-reversal/{}/s{s}", spec_tag(&spec)),
                lhs_p.sub(&rhs_p).add(&lhs_q.sub(&rhs_q)),
            ));
        }
    }

    // skew trace against Q: tr_0 mu_0 Q_{0i} = -1 (x) mu_i
    for spec in form_specs(cfg) {
        let mu = ShiftMatrix::generic(&spec);
        let qq = TensorElement::q_op(&spec, 2, 0, 1).unwrap();
        let mu0 = TensorElement::shift_at(&mu, 2, 0).unwrap();
        let lhs = mu0.mul(&qq).partial_trace(&[0]);
        let rhs = TensorElement::shift_at(&mu, 1, 0).unwrap().scale(&q(-1));
        out.push(expect_tensor_zero(
            &format!("mu-q-trace/{}", spec_tag(&spec)),
            lhs.sub(&rhs),
        ));
    }

    // transposed powers lie in the central span:
    // (F^r)' - (-1)^r F^r in Z-span{F^q : q < r}
    for spec in form_specs(cfg) {
        let f = UMatrix::generator_matrix(&spec);
        for r in 1..=4u32 {
            let fr = f.pow(r);
            let sign = if r % 2 == 0 { q(1) } else { q(-1) };
            let target = TensorElement::umatrix_at(
                &fr.transpose_prime().unwrap().sub(&fr.scale(&sign)),
                1,
                0,
            )
            .unwrap();
            let mut candidates = Vec::new();
            for qpow in 0..r {
                let fq = TensorElement::umatrix_at(&f.pow(qpow), 1, 0).unwrap();
                for z in central_basis(&spec, (r - qpow) as usize) {
                    candidates.push(fq.scale_u_left(&z));
                }
            }
            out.push(run(
                &format!("transpose-power-span/{}/r{r}", spec_tag(&spec)),
                || match express_tensor_in_span(&target, &candidates) {
                    Some(_) => (true, None),
                    None => (false, Some("no central-span decomposition found".into())),
                },
            ));
        }
    }

    // cross-power central span:
    // F_1^r F_0^s = Z-combination of F_0^k F_1^l, F_0^k F_1^l P, F_0^k Q F_0^l
    for (fam, n) in [(Family::SplitO, 4), (Family::SplitSp, 4)] {
        let spec = spec_of(fam, n);
        if !cfg.wants(&spec) {
            continue;
        }
        let f = UMatrix::generator_matrix(&spec);
        let p01 = TensorElement::perm(&spec, 2, 0, 1).unwrap();
        let q01 = TensorElement::q_op(&spec, 2, 0, 1).unwrap();
        for r in 1..=2u32 {
            for s in 1..=2u32 {
                let target = TensorElement::umatrix_at(&f.pow(r), 2, 1)
                    .unwrap()
                    .mul(&TensorElement::umatrix_at(&f.pow(s), 2, 0).unwrap());
                let total = r + s;
                let mut candidates = Vec::new();
                for k in 0..=total {
                    for l in 0..=total - k {
                        let f0k = TensorElement::umatrix_at(&f.pow(k), 2, 0).unwrap();
                        let f1l = TensorElement::umatrix_at(&f.pow(l), 2, 1).unwrap();
                        let f0l = TensorElement::umatrix_at(&f.pow(l), 2, 0).unwrap();
                        let zdeg = (total - k - l) as usize;
                        for z in central_basis(&spec, zdeg) {
                            candidates.push(f0k.mul(&f1l).scale_u_left(&z));
                            candidates.push(f0k.mul(&f1l).mul(&p01).scale_u_left(&z));
                            candidates.push(f0k.mul(&q01).mul(&f0l).scale_u_left(&z));
                        }
                    }
                }
                out.push(run(
                    &format!("cross-power-span/{}/r{r}s{s}", spec_tag(&spec)),
                    || match express_tensor_in_span(&target, &candidates) {
                        Some(_) => (true, None),
                        None => (false, Some("no central-span decomposition found".into())),
                    },
                ));
            }
        }
    }

    // derivation of powers, glN: D_0 E_1^p decomposes over
    // E_0^k E_1^l and E_0^k E_1^l P_01 with k + l <= p - 1
    for n in [2usize, 3] {
        let spec = spec_of(Family::GlN, n);
        if !cfg.wants(&spec) {
            continue;
        }
        let e = UMatrix::generator_matrix(&spec);
        let p01 = TensorElement::perm(&spec, 2, 0, 1).unwrap();
        for p in 1..=4u32 {
            let target = TensorElement::umatrix_at(&e.pow(p), 1, 0)
                .unwrap()
                .apply_d(0);
            let mut candidates = Vec::new();
            for k in 0..p {
                for l in 0..p - k {
                    let t = TensorElement::umatrix_at(&e.pow(k), 2, 0)
                        .unwrap()
                        .mul(&TensorElement::umatrix_at(&e.pow(l), 2, 1).unwrap());
                    candidates.push(t.clone());
                    candidates.push(t.mul(&p01));
                }
            }
            out.push(run(
                &format!("deriv-power-span/gl{n}/p{p}"),
                || match express_tensor_in_span(&target, &candidates) {
                    Some(_) => (true, None),
                    None => (false, Some("no decomposition with k+l <= p-1".into())),
                },
            ));
        }
    }

    // derivation of powers with a form: D_0 F_1^p decomposes over
    // F_0^k F_1^l, F_0^k F_1^l P_01, F_0^k Q_01 F_0^l with central
    // coefficients and k + l <= p - 1
    for spec in form_specs(cfg) {
        let pmax = if spec.n() >= 5 { 3 } else { 4 };
        let f = UMatrix::generator_matrix(&spec);
        let p01 = TensorElement::perm(&spec, 2, 0, 1).unwrap();
        let q01 = TensorElement::q_op(&spec, 2, 0, 1).unwrap();
        for p in 1..=pmax {
            let target = TensorElement::umatrix_at(&f.pow(p), 1, 0)
                .unwrap()
                .apply_d(0);
            let mut candidates = Vec::new();
            for k in 0..p {
                for l in 0..p - k {
                    let f0k = TensorElement::umatrix_at(&f.pow(k), 2, 0).unwrap();
                    let f1l = TensorElement::umatrix_at(&f.pow(l), 2, 1).unwrap();
                    let f0l = TensorElement::umatrix_at(&f.pow(l), 2, 0).unwrap();
                    let zdeg = (p - 1 - k - l) as usize;
                    for z in central_basis(&spec, zdeg) {
                        candidates.push(f0k.mul(&f1l).scale_u_left(&z));
                        candidates.push(f0k.mul(&f1l).mul(&p01).scale_u_left(&z));
                        candidates.push(f0k.mul(&q01).mul(&f0l).scale_u_left(&z));
                    }
                }
            }
            out.push(run(
                &format!("deriv-power-span/{}/p{p}", spec_tag(&spec)),
                || match express_tensor_in_span(&target, &candidates) {
                    Some(_) => (true, None),
                    None => (
                        false,
                        Some("no central decomposition with k+l <= p-1".into()),
                    ),
                },
            ));
        }
    }

    // antisymmetrizer against Phi chains:
    // A Phi_12 ... Phi_1r = A (1+Q_23)(1+Q_45)...(1+Q_{r-1,r})        r odd
    // A Phi_12 ... Phi_1r = -A (1+Q_23)...(1+Q_{r-2,r-1})(1+Q_{1r})   r even
    for (fam, n, rmax) in [
        (Family::SplitO, 4, 5usize),
        (Family::SplitO, 5, 4),
        (Family::SplitSp, 4, 5),
    ] {
        let spec = spec_of(fam, n);
        if !cfg.wants(&spec) {
            continue;
        }
        for r in 2..=rmax {
            let m = r;
            let a = antisymmetrizer(&spec, m);
            let mut lhs = a.clone();
            for i in 1..r {
                lhs = lhs.mul(&TensorElement::phi_op(&spec, m, 0, i).unwrap());
            }
            let one = TensorElement::identity(&spec, m);
            let plus_q =
                |x: usize, y: usize| one.add(&TensorElement::q_op(&spec, m, x, y).unwrap());
            let mut rhs = a.clone();
            if r % 2 == 1 {
                let mut x = 1;
                while x + 1 < r {
                    rhs = rhs.mul(&plus_q(x, x + 1));
                    x += 2;
                }
            } else {
                let mut x = 1;
                while x + 1 < r - 1 {
                    rhs = rhs.mul(&plus_q(x, x + 1));
                    x += 2;
                }
                rhs = rhs.mul(&plus_q(0, r - 1)).scale(&q(-1));
            }
            out.push(expect_tensor_zero(
                &format!("antisym-phi-chain/{}/r{r}", spec_tag(&spec)),
                lhs.sub(&rhs),
            ));
        }
    }

    // Brauer symmetrizer partial trace:
    // tr_m gamma_m S^(m) = +/- ((omega+m-2)/m) gamma_{m-1} S^(m-1)
    for spec in form_specs(cfg) {
        let omega = omega_of(&spec);
        let mmax = match spec.family() {
            Family::SplitSp => spec.n() / 2,
            _ => spec.n().min(4),
        };
        for m in 2..=mmax {
            let lhs = brauer_symmetrizer(&spec, m)
                .unwrap()
                .scale(&gamma_m(omega, m))
                .partial_trace(&[m - 1]);
            let sign = if spec.family() == Family::SplitSp {
                q(-1)
            } else {
                q(1)
            };
            let factor = sign * (q(omega) + q(m as i64) - q(2)) / q(m as i64);
            let rhs = brauer_symmetrizer(&spec, m - 1)
                .unwrap()
                .scale(&(gamma_m(omega, m - 1) * factor));
            out.push(expect_tensor_zero(
                &format!("brauer-partial-trace/{}/m{m}", spec_tag(&spec)),
                lhs.sub(&rhs),
            ));
        }
    }

    // symplectic equivalence: the gamma S^(m) form of phi agrees with the
    // antisymmetrizer form for m <= n
    {
        let spec = spec_of(Family::SplitSp, 4);
        if cfg.wants(&spec) {
            let mu = ShiftMatrix::generic(&spec);
            for m in 1..=2usize {
                for k in 0..=m {
                    let a_form = phi(&spec, m, k, &mu).unwrap();
                    let s_form = phi_brauer_form(&spec, m, k, &mu).unwrap();
                    out.push(expect_zero(
                        &format!("symplectic-phi-equivalence/sp4/m{m}k{k}"),
                        &a_form - &s_form,
                    ));
                }
            }
        }
    }

    // proof-step traces: tr_1 mu_1 [D_1 T_i, D_1 D_mu^p z] = 0 and
    // tr_01 mu_0 mu_1 [D_0 D_1 T_i, D_0 D_1 x] = 0
    {
        let spec = spec_of(Family::GlN, 3);
        if cfg.wants(&spec) {
            let mu = ShiftMatrix::generic(&spec);
            let zs: Vec<(String, UElement)> = vec![
                ("trE2".into(), trace_power(&spec, 2)),
                ("trE3".into(), trace_power(&spec, 3)),
                ("phi02".into(), phi(&spec, 2, 0, &mu).unwrap()),
            ];
            for (zname, z) in &zs {
                for p in 0..=2u32 {
                    let x = d_mu_iterate(&mu, z, p);
                    for i in 1..=3usize {
                        let t = t_element(&spec, &mu, i).unwrap();
                        let dt = TensorElement::from_u(&t).apply_d(0);
                        let dx = TensorElement::from_u(&x).apply_d(0);
                        let comm = dt.mul(&dx).sub(&dx.mul(&dt));
                        let mu1 = TensorElement::shift_at(&mu, 1, 0).unwrap();
                        let traced = mu1.mul(&comm).trace_all();
                        out.push(expect_zero(
                            &format!("shift-commutator-trace/gl3/{zname}/p{p}i{i}"),
                            traced,
                        ));
                        let ddt = dt.apply_d(0);
                        let ddx = dx.apply_d(0);
                        let comm2 = ddt.mul(&ddx).sub(&ddx.mul(&ddt));
                        let mu0 = TensorElement::shift_at(&mu, 2, 0).unwrap();
                        let mu1 = TensorElement::shift_at(&mu, 2, 1).unwrap();
                        let traced2 = mu0.mul(&mu1).mul(&comm2).trace_all();
                        out.push(expect_zero(
                            &format!("shift-double-commutator-trace/gl3/{zname}/p{p}i{i}"),
                            traced2,
                        ));
                    }
                }
            }
        }
    }

    // reduced trace identity: tr E^r mu E^s = tr mu E^{r+s} modulo central
    // combinations of lower tr mu E^q
    {
        let spec = spec_of(Family::GlN, 3);
        if cfg.wants(&spec) {
            let mu = ShiftMatrix::generic(&spec);
            let e = UMatrix::generator_matrix(&spec);
            for r in 1..=3u32 {
                for s in 1..=(4 - r).min(3) {
                    let lhs = e
                        .pow(r)
                        .mul(&UMatrix::from_shift(&mu))
                        .mul(&e.pow(s))
                        .trace();
                    let target = &lhs - &trace_mu_power(&mu, r + s);
                    let mut candidates = Vec::new();
                    for qpow in 0..r + s {
                        let base = trace_mu_power(&mu, qpow);
                        let zdeg = (r + s - qpow) as usize;
                        for z in central_basis(&spec, zdeg) {
                            candidates.push(&z * &base);
                        }
                    }
                    out.push(run(&format!("reduced-trace-identity/gl3/r{r}s{s}"), || {
                        match express_in_span(&target, &candidates) {
                            Some(_) => (true, None),
                            None => (false, Some("no central reduction found".into())),
                        }
                    }));
                }
            }
        }
    }

    // split embedding consistency: commutators computed through the glN
    // expansion agree with the structure table, exhaustively
    for (fam, n) in [
        (Family::SplitO, 4),
        (Family::SplitO, 5),
        (Family::SplitO, 6),
        (Family::SplitSp, 4),
        (Family::SplitSp, 6),
        (Family::CanonicalO, 4),
        (Family::CanonicalO, 6),
    ] {
        let spec = spec_of(fam, n);
        if !cfg.wants(&spec) {
            continue;
        }
        out.push(run(
            &format!("split-embedding-consistency/{}", spec_tag(&spec)),
            || {
                let gl = spec_of(Family::GlN, n);
                let embed = |g: GenId| {
                    let mut u = UElement::zero(&gl);
                    for (i, j, c) in spec.gl_expansion(g) {
                        u = &u + &UElement::entry(&gl, i, j).scale(&c);
                    }
                    u
                };
                for a in 0..spec.dim() as GenId {
                    for b in 0..spec.dim() as GenId {
                        let via_gl = embed(a).commutator(&embed(b));
                        let mut via_table = UElement::zero(&gl);
                        for (g, c) in spec.bracket_gens(a, b) {
                            via_table = &via_table + &embed(*g).scale(c);
                        }
                        if via_gl != via_table {
                            return (false, Some(format!("mismatch at generators {a},{b}")));
                        }
                    }
                }
                (true, None)
            },
        ));
    }

    out
}

fn random_tensor(spec: &Arc<AlgebraSpec>, m: usize, sampler: &mut ElementSampler) -> TensorElement {
    use rand::Rng;
    let n = spec.n();
    let mut out = TensorElement::zero(spec, m);
    let count = 2 * n * m + 3;
    for _ in 0..count {
        let row: Vec<u8> = (0..m)
            .map(|_| sampler.rng().gen_range(1..=n) as u8)
            .collect();
        let col: Vec<u8> = (0..m)
            .map(|_| sampler.rng().gen_range(1..=n) as u8)
            .collect();
        let v = q(sampler.rng().gen_range(-3i64..=3));
        out = out.add(&TensorElement::single_entry(
            spec,
            m,
            row,
            col,
            UElement::scalar(spec, v),
        ));
    }
    out
}

fn random_permutation(m: usize, sampler: &mut ElementSampler) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut sigma: Vec<usize> = (0..m).collect();
    sigma.shuffle(sampler.rng());
    sigma
}

// ---- Theorem-level checks ----

pub fn theorem_checks(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();

    // centrality of the basic central generators
    for (fam, n) in [
        (Family::GlN, 2),
        (Family::GlN, 3),
        (Family::SplitO, 4),
        (Family::SplitO, 5),
        (Family::SplitSp, 4),
        (Family::CanonicalO, 4),
    ] {
        let spec = spec_of(fam, n);
        if !cfg.wants(&spec) {
            continue;
        }
        let mu = ShiftMatrix::generic(&spec);
        let tag = spec_tag(&spec);
        out.push(is_central(
            &format!("central/{tag}/gelfand-2-2"),
            &gelfand_generator(&spec, &[2, 2]).unwrap(),
        ));
        let mmax = if fam == Family::GlN { n } else { 2 };
        for m in 1..=mmax {
            if let Ok(ph) = phi(&spec, m, 0, &mu) {
                out.push(is_central(&format!("central/{tag}/phi0-{m}"), &ph));
            }
        }
        if fam == Family::GlN {
            for m in 1..=n {
                out.push(is_central(
                    &format!("central/{tag}/psi0-{m}"),
                    &psi(&spec, m, 0, &mu).unwrap(),
                ));
            }
        }
    }

    // glN iterated membership
    {
        let spec = spec_of(Family::GlN, 3);
        if cfg.wants(&spec) {
            let mu = ShiftMatrix::generic(&spec);
            for (zname, z, pmax) in [
                ("gl3-trE2", trace_power(&spec, 2), 3u32),
                ("gl3-trE3", trace_power(&spec, 3), 3),
                ("gl3-phi03", phi(&spec, 3, 0, &mu).unwrap(), 3),
            ] {
                out.extend(check_gl_iterates(zname, &mu, &z, pmax));
            }
        }
        let spec = spec_of(Family::GlN, 2);
        if cfg.wants(&spec) {
            let mu = ShiftMatrix::generic(&spec);
            let z = psi(&spec, 2, 0, &mu).unwrap();
            out.extend(check_gl_iterates("gl2-psi02", &mu, &z, 1));
        }
    }

    // orthogonal/symplectic single-step membership
    for (fam, n) in [
        (Family::SplitO, 4),
        (Family::SplitO, 5),
        (Family::SplitSp, 4),
    ] {
        let spec = spec_of(fam, n);
        if !cfg.wants(&spec) {
            continue;
        }
        let mu = ShiftMatrix::generic(&spec);
        let tag = spec_tag(&spec);
        out.push(check_bcd_single_step(
            &format!("{tag}-trF2"),
            &mu,
            &trace_power(&spec, 2),
        ));
        out.push(check_bcd_single_step(
            &format!("{tag}-phi02"),
            &mu,
            &phi(&spec, 2, 0, &mu).unwrap(),
        ));
        if fam == Family::SplitO && n % 2 == 0 {
            out.push(check_bcd_single_step(
                &format!("{tag}-pfaffian"),
                &mu,
                &pfaffian(&spec).unwrap(),
            ));
        }
    }

    // recurrence of the phi family under D_mu, glN: all coefficients nonzero
    {
        let spec = spec_of(Family::GlN, 3);
        if cfg.wants(&spec) {
            let mu = ShiftMatrix::generic(&spec);
            for m in 1..=3usize {
                for k in 0..m {
                    for use_psi in [false, true] {
                        let base = |mm: usize, kk: usize| {
                            if use_psi {
                                psi(&spec, mm, kk, &mu).unwrap()
                            } else {
                                phi(&spec, mm, kk, &mu).unwrap()
                            }
                        };
                        let name = if use_psi { "psi" } else { "phi" };
                        let image = d_mu(&mu, &base(m, k));
                        let candidates: Vec<UElement> =
                            (k + 1..=m).map(|j| base(j, k + 1)).collect();
                        out.push(run(
                            &format!("shift-recurrence/gl3/{name}/m{m}k{k}"),
                            || match express_in_span(&image, &candidates) {
                                Some(coeffs) => {
                                    if coeffs.iter().all(|c| !c.is_zero()) {
                                        (true, None)
                                    } else {
                                        (
                                            false,
                                            Some(format!("vanishing coefficient in {coeffs:?}")),
                                        )
                                    }
                                }
                                None => (false, Some("image not in the phi span".into())),
                            },
                        ));
                    }
                }
            }
        }
    }

    // recurrence with a form: leading coefficient 2(m-k), odd gaps only
    for (fam, n) in [(Family::SplitO, 5), (Family::SplitSp, 4)] {
        let spec = spec_of(fam, n);
        if !cfg.wants(&spec) {
            continue;
        }
        let mu = ShiftMatrix::generic(&spec);
        let tag = spec_tag(&spec);
        // the family lives at even m (phi^(k)_m vanishes identically for odd m)
        for (m, kmax) in [(2usize, 1usize), (4, 1)] {
            for k in 0..=kmax.min(m - 1) {
                let image = d_mu(&mu, &phi(&spec, m, k, &mu).unwrap());
                let candidates: Vec<UElement> = (k + 1..=m)
                    .map(|j| phi(&spec, j, k + 1, &mu).unwrap())
                    .collect();
                out.push(run(&format!("shift-recurrence/{tag}/m{m}k{k}"), || {
                    match express_in_span(&image, &candidates) {
                        Some(coeffs) => {
                            // coefficient of phi^(k+1)_j sits at index j-(k+1)
                            let lead = &coeffs[m - (k + 1)];
                            if *lead != q(2 * (m as i64 - k as i64)) {
                                return (
                                    false,
                                    Some(format!("leading coefficient {lead} != 2(m-k)")),
                                );
                            }
                            for (idx, c) in coeffs.iter().enumerate() {
                                let j = idx + k + 1;
                                if (m - j) % 2 == 1 && !c.is_zero() {
                                    return (
                                        false,
                                        Some(format!(
                                            "even-gap term phi^({})_{j} appears: {c}",
                                            k + 1
                                        )),
                                    );
                                }
                            }
                            (true, None)
                        }
                        None => (false, Some("image not in the phi span".into())),
                    }
                }));
            }
        }
    }

    // Pfaffian block (both presentations for centrality)
    for (fam, n) in [
        (Family::CanonicalO, 4),
        (Family::CanonicalO, 6),
        (Family::SplitO, 4),
        (Family::SplitO, 6),
    ] {
        let spec = spec_of(fam, n);
        if !cfg.wants(&spec) {
            continue;
        }
        out.push(is_central(
            &format!("pfaffian-central/{}", spec_tag(&spec)),
            &pfaffian(&spec).unwrap(),
        ));
    }
    // Pfaffian gradient identities. The classical matrix identity
    // F Pi = -Pf F * 1 acquires a quantum shift: exactly
    // (F - (n-1)) Pi = -Pf F * 1 in U(o_2n), the correction being
    // (n-1) Pi itself (off-diagonal complementary sub-Pfaffians).
    for n2 in [4usize, 6] {
        let spec = spec_of(Family::CanonicalO, n2);
        if !cfg.wants(&spec) {
            continue;
        }
        let tag = spec_tag(&spec);
        let half = (n2 / 2) as i64;
        let fm = UMatrix::generator_matrix(&spec);
        let pi = pfaffian_gradient(&spec).unwrap();
        let pf = pfaffian(&spec).unwrap();
        let shifted = fm.sub(&UMatrix::identity(&spec).scale(&q(half - 1)));
        let lhs = shifted.mul(&pi);
        out.push(run(&format!("pfaffian-gradient-identity/{tag}"), || {
            for i in 1..=n2 {
                for j in 1..=n2 {
                    let expect = if i == j {
                        pf.scale(&q(-1))
                    } else {
                        UElement::zero(&spec)
                    };
                    let diff = lhs.entry(i, j) - &expect;
                    if !diff.is_zero() {
                        return (false, Some(format!("entry ({i},{j}): {diff}")));
                    }
                }
            }
            (true, None)
        }));
        // the classical shadow has no shift: Fbar Pibar = -Pf * 1 in S(o_2n)
        out.push(run(&format!("pfaffian-gradient-classical/{tag}"), || {
            let pf_cl = symbol(&pf);
            let entry_cl = |i: usize, j: usize| -> crate::sym::SElement {
                match spec.resolve(i, j) {
                    None => crate::sym::SElement::zero(&spec),
                    Some((sign, g)) => pf_cl.derive(g).scale(&q(sign)),
                }
            };
            for i in 1..=n2 {
                for j in 1..=n2 {
                    let mut acc = crate::sym::SElement::zero(&spec);
                    for k in 1..=n2 {
                        let fik = crate::sym::SElement::entry(&spec, i, k);
                        acc = &acc + &(&fik * &entry_cl(k, j));
                    }
                    let expect = if i == j {
                        pf_cl.scale(&q(-1))
                    } else {
                        crate::sym::SElement::zero(&spec)
                    };
                    if acc != expect {
                        return (false, Some(format!("classical entry ({i},{j}): {acc}")));
                    }
                }
            }
            (true, None)
        }));
    }
    {
        let spec = spec_of(Family::CanonicalO, 4);
        if cfg.wants(&spec) {
            let mu = ShiftMatrix::generic(&spec);
            let pi = pfaffian_gradient(&spec).unwrap();

            // D_mu^p pi^(0) proportional to pi^(p) with a nonzero factor
            let pis = pf_shift_coeffs(&spec, &mu).unwrap();
            let d1 = d_mu(&mu, &pis[0]);
            out.push(run(
                "pfaffian-shift-proportional/o-can4/p1",
                || match proportional_u(&d1, &pis[1]) {
                    Some(c) if !c.is_zero() => (true, None),
                    _ => (false, Some(format!("D_mu pi0 = {d1} vs pi1 = {}", pis[1]))),
                },
            ));
            // tr mu Pi = -2 pi^(n-1)
            let traced = pi.trace_against(&mu);
            out.push(expect_zero(
                "pfaffian-gradient-trace/o-can4",
                &traced + &pis[1].scale(&q(2)),
            ));
        }
    }

    // commutativity of the generated families
    for (fam, n) in [
        (Family::GlN, 2),
        (Family::GlN, 3),
        (Family::SplitO, 4),
        (Family::SplitO, 5),
        (Family::SplitSp, 4),
        (Family::CanonicalO, 4),
    ] {
        let spec = spec_of(fam, n);
        if !cfg.wants(&spec) {
            continue;
        }
        let mu = ShiftMatrix::generic(&spec);
        let family = amu_generating_family(&spec, &mu).unwrap();
        out.push(pairwise_commuting(
            &format!("family-commutes/{}", spec_tag(&spec)),
            &family,
        ));
    }

    // classical oracle: Poisson commutativity of the argument-shift family
    {
        let spec = spec_of(Family::GlN, 3);
        if cfg.wants(&spec) {
            let mu = ShiftMatrix::generic(&spec);
            out.push(run("classical-shift-poisson-commutes/gl3", || {
                let mut components = Vec::new();
                for p in [2u32, 3] {
                    components.extend(argument_shift(&classical_trace_power(&spec, p), &mu));
                }
                for a in 0..components.len() {
                    for b in a + 1..components.len() {
                        let br = poisson_bracket(&components[a], &components[b]);
                        if !br.is_zero() {
                            return (false, Some(format!("{{P_{a}, P_{b}}} = {br}")));
                        }
                    }
                }
                (true, None)
            }));

            // symbols of the quantum generators match the classical shift
            // images (top degree only)
            for m in 1..=3usize {
                let base = phi(&spec, m, 0, &mu).unwrap();
                let mut quantum = base.clone();
                let mut cls = symbol(&base);
                for p in 1..m {
                    quantum = d_mu(&mu, &quantum);
                    cls = classical_dmu(&cls, &mu);
                    let got = symbol(&quantum);
                    let want = cls.clone();
                    out.push(run(
                        &format!("symbol-matches-classical-shift/gl3/m{m}p{p}"),
                        || {
                            if got == want {
                                (true, None)
                            } else {
                                (false, Some(format!("symbol {got} vs classical {want}")))
                            }
                        },
                    ));
                }
            }
        }
    }

    out
}

// ---- Counterexample suite ----

pub fn counterexample_checks(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    {
        let spec = spec_of(Family::GlN, 3);
        if cfg.wants(&spec) {
            let mu = ShiftMatrix::generic(&spec);
            out.extend(counterexample_gl(&spec, &mu));
            let gl2 = spec_of(Family::GlN, 2);
            eprintln!(
                "note: {}",
                observe_gl_small(&gl2, &ShiftMatrix::generic(&gl2))
            );
        }
    }
    {
        let spec = spec_of(Family::SplitO, 5);
        if cfg.wants(&spec) {
            let mu = ShiftMatrix::generic(&spec);
            out.extend(counterexample_orthogonal(&spec, &mu));
            let o4 = spec_of(Family::SplitO, 4);
            eprintln!("note: {}", observe_o4(&o4, &ShiftMatrix::generic(&o4)));
        }
    }
    out
}

// ---- Consistency suite ----

pub fn consistency_checks(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (fam, n) in [
        (Family::GlN, 2),
        (Family::GlN, 3),
        (Family::SplitO, 4),
        (Family::SplitO, 5),
        (Family::SplitSp, 4),
    ] {
        let spec = spec_of(fam, n);
        if !cfg.wants(&spec) {
            continue;
        }
        let start = Instant::now();
        let report = leibniz_consistency_check(&spec, cfg.trials, cfg.seed, DerivKind::Standard);
        let ms = start.elapsed().as_millis() as u64;
        let mut r = run(&format!("leibniz-consistency/{}", spec_tag(&spec)), || {
            if report.passed() {
                (true, None)
            } else {
                let v = &report.violations[0];
                (
                    false,
                    Some(format!(
                        "d_{}{} inconsistent on f = {}, g = {}: lhs {} vs rhs {}",
                        v.i, v.j, v.f, v.g, v.lhs, v.rhs
                    )),
                )
            }
        });
        r.ms = ms;
        out.push(r);
    }
    // hat variant on glN
    let spec = spec_of(Family::GlN, 2);
    if cfg.wants(&spec) {
        let report = leibniz_consistency_check(&spec, cfg.trials, cfg.seed, DerivKind::Hat);
        out.push(run("leibniz-consistency-hat/gl2", || {
            if report.passed() {
                (true, None)
            } else {
                (false, Some("hat rule inconsistent".into()))
            }
        }));
    }
    out
}

/// Which checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Identities,
    Theorems,
    Counterexamples,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "all" => Some(Suite::All),
            "identities" => Some(Suite::Identities),
            "theorems" => Some(Suite::Theorems),
            "counterexamples" => Some(Suite::Counterexamples),
            _ => None,
        }
    }
}

/// Run a suite; report order is deterministic.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    match suite {
        Suite::Identities => out.extend(identity_checks(cfg)),
        Suite::Theorems => out.extend(theorem_checks(cfg)),
        Suite::Counterexamples => out.extend(counterexample_checks(cfg)),
        Suite::All => {
            out.extend(identity_checks(cfg));
            out.extend(theorem_checks(cfg));
            out.extend(counterexample_checks(cfg));
            out.extend(consistency_checks(cfg));
        }
    }
    out
}
