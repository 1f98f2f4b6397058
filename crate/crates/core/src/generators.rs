//! Center generators and quantum Mishchenko--Fomenko generator families.
//!
//! Gelfand traces `tr F^{p_1} ... tr F^{p_m}`, the symmetrizer traces
//! `phi^(k)_m` and `psi^(k)_m`, the Pfaffian of the even orthogonal algebra
//! in both presentations, the shift-Pfaffian coefficients `pi_(k)`, the
//! commutant elements `T_i`, and the generating families obtained by
//! iterating `D_mu` on central generators.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{AlgebraSpec, Family, MAX_SLOTS};
use crate::error::{AlgebraError, Result};
use crate::pbw::UElement;
use crate::scalar::{q, qr, Q};
use crate::shift::ShiftMatrix;
use crate::tensor::{antisymmetrizer, brauer_symmetrizer, symmetrizer_h, TensorElement};
use crate::umatrix::{trace_power, UMatrix};

/// One slot factor of a pure tensor product.
pub enum SlotFactor<'a> {
    Rat(&'a ShiftMatrix),
    U(&'a UMatrix),
}

/// `tr_{1..m} op * X_1 ... X_m` where `X_i` acts on slot `i` only:
/// contracts without materializing the full product.
pub fn trace_pure_product(op: &TensorElement, factors: &[SlotFactor<'_>]) -> UElement {
    let spec = op.spec().clone();
    assert_eq!(op.slots(), factors.len(), "factor count must match slots");
    let mut out = UElement::zero(&spec);
    'entry: for ((row, col), w) in op.entries() {
        // contribution: w * prod_i X_i[col_i, row_i]
        let mut coeff = Q::from_integer(1.into());
        let mut us: Vec<&UElement> = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            let (a, b) = (col[i] as usize, row[i] as usize);
            match f {
                SlotFactor::Rat(mu) => {
                    let v = mu.entry(a, b);
                    if v.is_zero() {
                        continue 'entry;
                    }
                    coeff *= v.clone();
                }
                SlotFactor::U(x) => {
                    let u = x.entry(a, b);
                    if u.is_zero() {
                        continue 'entry;
                    }
                    us.push(u);
                }
            }
        }
        let mut term = w.scale(&coeff);
        for u in us {
            term = &term * u;
        }
        out = &out + &term;
    }
    out
}

/// Gelfand generator `tr_{1..m} F_1^{p_1} ... F_m^{p_m}`: the ordered
/// product of the trace powers.
pub fn gelfand_generator(spec: &Arc<AlgebraSpec>, powers: &[u32]) -> Result<UElement> {
    if powers.len() > MAX_SLOTS {
        return Err(AlgebraError::CapsExceeded(format!(
            "{} trace factors exceed the cap {MAX_SLOTS}",
            powers.len()
        )));
    }
    let mut out = UElement::unit(spec);
    for &p in powers {
        if p == 0 {
            return Err(AlgebraError::Parse("trace powers must be >= 1".into()));
        }
        out = &out * &trace_power(spec, p);
    }
    Ok(out)
}

/// `gamma_m(omega) = (omega + m - 2) / (omega + 2m - 2)`.
pub fn gamma_m(omega: i64, m: usize) -> Q {
    let m = m as i64;
    qr(omega + m - 2, omega + 2 * m - 2)
}

/// Brauer weight parameter of the family: `N` orthogonal, `-2n` symplectic.
pub fn omega_of(spec: &AlgebraSpec) -> i64 {
    match spec.family() {
        Family::SplitO | Family::CanonicalO => spec.n() as i64,
        Family::SplitSp => -(spec.n() as i64),
        Family::GlN => panic!("omega undefined for glN"),
    }
}

fn check_phi_range(spec: &AlgebraSpec, m: usize, k: usize) -> Result<()> {
    if k > m {
        return Err(AlgebraError::Parse(format!(
            "need k <= m, got k={k}, m={m}"
        )));
    }
    if m > MAX_SLOTS {
        return Err(AlgebraError::CapsExceeded(format!(
            "m={m} exceeds the slot cap {MAX_SLOTS}"
        )));
    }
    let max_m = spec.n(); // symplectic 2n = N as well
    if m > max_m {
        return Err(AlgebraError::Parse(format!(
            "m={m} out of range for {} N={}",
            spec.family(),
            spec.n()
        )));
    }
    Ok(())
}

/// The trace generator `phi^(k)_m`: antisymmetrizer form for glN and (for
/// every m up to 2n) the symplectic algebra; Brauer-symmetrizer form with
/// the `gamma_m` factor for the orthogonal presentations.
pub fn phi(spec: &Arc<AlgebraSpec>, m: usize, k: usize, mu: &ShiftMatrix) -> Result<UElement> {
    assert_eq!(spec.key(), mu.spec().key(), "spec mismatch");
    check_phi_range(spec, m, k)?;
    if m == 0 {
        return Ok(UElement::unit(spec));
    }
    let op = match spec.family() {
        Family::GlN | Family::SplitSp => antisymmetrizer(spec, m),
        Family::SplitO | Family::CanonicalO => {
            brauer_symmetrizer(spec, m)?.scale(&gamma_m(omega_of(spec), m))
        }
    };
    Ok(phi_with_op(spec, &op, m, k, mu))
}

/// `phi^(k)_m` through the Brauer symmetrizer product formula (with the
/// `gamma_m` factor), also for the symplectic family where the formula is
/// only valid while its denominators survive. Used to cross-check the
/// antisymmetrizer route.
pub fn phi_brauer_form(
    spec: &Arc<AlgebraSpec>,
    m: usize,
    k: usize,
    mu: &ShiftMatrix,
) -> Result<UElement> {
    assert_eq!(spec.key(), mu.spec().key(), "spec mismatch");
    check_phi_range(spec, m, k)?;
    if m == 0 {
        return Ok(UElement::unit(spec));
    }
    let op = brauer_symmetrizer(spec, m)?.scale(&gamma_m(omega_of(spec), m));
    Ok(phi_with_op(spec, &op, m, k, mu))
}

fn phi_with_op(
    spec: &Arc<AlgebraSpec>,
    op: &TensorElement,
    m: usize,
    k: usize,
    mu: &ShiftMatrix,
) -> UElement {
    let gen = UMatrix::generator_matrix(spec);
    let factors: Vec<SlotFactor<'_>> = (0..m)
        .map(|i| {
            if i < k {
                SlotFactor::Rat(mu)
            } else {
                SlotFactor::U(&gen)
            }
        })
        .collect();
    trace_pure_product(op, &factors)
}

/// `psi^(k)_m`: the symmetrizer analogue, glN only (H^(m) never vanishes,
/// so m is unrestricted up to the slot cap).
pub fn psi(spec: &Arc<AlgebraSpec>, m: usize, k: usize, mu: &ShiftMatrix) -> Result<UElement> {
    assert_eq!(spec.key(), mu.spec().key(), "spec mismatch");
    if spec.family() != Family::GlN {
        return Err(AlgebraError::UnsupportedFamily {
            family: spec.family().name().to_string(),
            reason: "psi family is defined for glN".to_string(),
        });
    }
    if k > m {
        return Err(AlgebraError::Parse(format!(
            "need k <= m, got k={k}, m={m}"
        )));
    }
    if m > MAX_SLOTS {
        return Err(AlgebraError::CapsExceeded(format!(
            "m={m} exceeds the slot cap {MAX_SLOTS}"
        )));
    }
    if m == 0 {
        return Ok(UElement::unit(spec));
    }
    let op = symmetrizer_h(spec, m);
    Ok(phi_with_op(spec, &op, m, k, mu))
}

// ---- Pfaffian machinery ----

/// Perfect matchings of {1..2n} as flat pair lists [a1,b1,a2,b2,...] with
/// a_t < b_t and a_1 < a_2 < ..., together with the permutation sign.
fn matchings(n2: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(free: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i64)>) {
        if free.is_empty() {
            let sign = perm_sign(cur);
            out.push((cur.clone(), sign));
            return;
        }
        let a = free.remove(0);
        for idx in 0..free.len() {
            let b = free.remove(idx);
            cur.push(a);
            cur.push(b);
            go(free, cur, out);
            cur.pop();
            cur.pop();
            free.insert(idx, b);
        }
        free.insert(0, a);
    }
    let mut free: Vec<usize> = (1..=n2).collect();
    let mut out = Vec::new();
    go(&mut free, &mut Vec::new(), &mut out);
    out
}

fn perm_sign(word: &[usize]) -> i64 {
    let mut inv = 0usize;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn require_even_orthogonal(spec: &AlgebraSpec) -> Result<()> {
    let ok = match spec.family() {
        Family::CanonicalO => true,
        Family::SplitO => spec.n() % 2 == 0,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(AlgebraError::UnsupportedFamily {
            family: spec.family().name().to_string(),
            reason: format!("Pfaffian needs an even orthogonal algebra (N={})", spec.n()),
        })
    }
}

/// Pfaffian of the generator matrix: the degree-n central element of the
/// even orthogonal algebra. Canonical presentation: signed sum over perfect
/// matchings; split presentation: the normalized sum over all permutations
/// with primed second indices.
pub fn pfaffian(spec: &Arc<AlgebraSpec>) -> Result<UElement> {
    require_even_orthogonal(spec)?;
    let n2 = spec.n();
    let n = n2 / 2;
    match spec.family() {
        Family::CanonicalO => {
            let mut out = UElement::zero(spec);
            for (pairs, sign) in matchings(n2) {
                let mut term = UElement::scalar(spec, q(sign));
                for t in 0..n {
                    term = &term * &UElement::entry(spec, pairs[2 * t], pairs[2 * t + 1]);
                }
                out = &out + &term;
            }
            Ok(out)
        }
        Family::SplitO => {
            // (1 / 2^n n!) sum over all permutations sigma of
            // F[sigma(1), sigma(2)'] ... F[sigma(2n-1), sigma(2n)']
            let mut out = UElement::zero(spec);
            let mut perm: Vec<usize> = (1..=n2).collect();
            permute_all(&mut perm, 0, &mut |p| {
                let sign = perm_sign(p);
                let mut term = UElement::scalar(spec, q(sign));
                for t in 0..n {
                    let (i, j) = (p[2 * t], spec.prime(p[2 * t + 1]));
                    let e = UElement::entry(spec, i, j);
                    if e.is_zero() {
                        term = UElement::zero(spec);
                        break;
                    }
                    term = &term * &e;
                }
                out = &out + &term;
            });
            let mut norm = q(1);
            for t in 1..=n {
                norm = norm * q(2) * q(t as i64);
            }
            Ok(out.scale(&(q(1) / norm)))
        }
        _ => unreachable!(),
    }
}

fn permute_all(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_all(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Coefficients `pi_(0), ..., pi_(n)` of `Pf(mu + F z^{-1})` in powers
/// `z^{-n}, ..., z^0` (canonical presentation): `pi_(0) = Pf F`,
/// `pi_(n) = Pf mu`.
pub fn pf_shift_coeffs(spec: &Arc<AlgebraSpec>, mu: &ShiftMatrix) -> Result<Vec<UElement>> {
    if spec.family() != Family::CanonicalO {
        return Err(AlgebraError::UnsupportedFamily {
            family: spec.family().name().to_string(),
            reason: "shift-Pfaffian coefficients use the canonical presentation".to_string(),
        });
    }
    assert_eq!(spec.key(), mu.spec().key(), "spec mismatch");
    let n2 = spec.n();
    let n = n2 / 2;
    let mut out = vec![UElement::zero(spec); n + 1];
    for (pairs, sign) in matchings(n2) {
        // expand prod_t (mu[a_t,b_t] + F[a_t,b_t] z^{-1})
        for mask in 0u32..(1 << n) {
            let mu_count = mask.count_ones() as usize;
            let mut term = UElement::scalar(spec, q(sign));
            let mut alive = true;
            for t in 0..n {
                let (a, b) = (pairs[2 * t], pairs[2 * t + 1]);
                if mask & (1 << t) != 0 {
                    let v = mu.entry(a, b);
                    if v.is_zero() {
                        alive = false;
                        break;
                    }
                    term = term.scale(v);
                } else {
                    term = &term * &UElement::entry(spec, a, b);
                }
            }
            if alive {
                out[mu_count] = &out[mu_count] + &term;
            }
        }
    }
    Ok(out)
}

/// The gradient matrix `Pi` of the Pfaffian (canonical presentation): the
/// entry at `(i,j)` is `d_ji Pf F`, the quasi-derivation paired against the
/// entry the way the trace pairs them (as in `tr mu D`). With this index
/// convention the defining identities hold on the nose:
/// `F Pi = -Pf F * 1` and `tr mu Pi = -2 pi_(n-1)`.
pub fn pfaffian_gradient(spec: &Arc<AlgebraSpec>) -> Result<UMatrix> {
    if spec.family() != Family::CanonicalO {
        return Err(AlgebraError::UnsupportedFamily {
            family: spec.family().name().to_string(),
            reason: "the Pfaffian gradient matrix uses the canonical presentation".to_string(),
        });
    }
    let pf = pfaffian(spec)?;
    let n = spec.n();
    let mut data = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            data.push(crate::quasi::quasi_derive(
                &pf,
                j,
                i,
                crate::quasi::DerivKind::Standard,
            )?);
        }
    }
    Ok(UMatrix::from_entries(spec, data))
}

/// The commutant element `T_i = sum_{k != i} F[i,k] F[k,i] / (mu_i - mu_k)`
/// for diagonal generic mu; `i` ranges over 1..=N for glN and 1..=n for the
/// split types.
pub fn t_element(spec: &Arc<AlgebraSpec>, mu: &ShiftMatrix, i: usize) -> Result<UElement> {
    assert_eq!(spec.key(), mu.spec().key(), "spec mismatch");
    if spec.family() == Family::CanonicalO {
        return Err(AlgebraError::UnsupportedFamily {
            family: spec.family().name().to_string(),
            reason: "commutant elements are defined in the split presentations".to_string(),
        });
    }
    mu.check_diagonal_generic()?;
    let n = spec.n();
    let imax = if spec.family() == Family::GlN {
        n
    } else {
        n / 2
    };
    if i < 1 || i > imax {
        return Err(AlgebraError::IndexOutOfRange { i, j: i, n: imax });
    }
    let mut out = UElement::zero(spec);
    for k in 1..=n {
        if k == i {
            continue;
        }
        let den = mu.entry(i, i).clone() - mu.entry(k, k).clone();
        assert!(!den.is_zero(), "genericity violated");
        let prod = &UElement::entry(spec, i, k) * &UElement::entry(spec, k, i);
        out = &out + &prod.scale(&(q(1) / den));
    }
    Ok(out)
}

/// Products of central trace generators (and the Pfaffian for even
/// orthogonal algebras) of total degree <= `max_deg`, used as the central
/// coefficient basis in span solves. Always contains the unit.
pub fn central_basis(spec: &Arc<AlgebraSpec>, max_deg: usize) -> Vec<UElement> {
    let mut atoms: Vec<(usize, UElement)> = Vec::new();
    let lo = if spec.family() == Family::GlN { 1 } else { 2 };
    for p in lo..=max_deg {
        atoms.push((p, trace_power(spec, p as u32)));
    }
    if let Ok(pf) = pfaffian(spec) {
        let deg = spec.n() / 2;
        if deg <= max_deg {
            atoms.push((deg, pf));
        }
    }
    let mut out = vec![UElement::unit(spec)];
    // multisets of atoms with bounded total degree
    fn go(
        atoms: &[(usize, UElement)],
        from: usize,
        cur: &UElement,
        deg_left: usize,
        out: &mut Vec<UElement>,
    ) {
        for idx in from..atoms.len() {
            let (d, a) = &atoms[idx];
            if *d > deg_left {
                continue;
            }
            let next = cur * a;
            out.push(next.clone());
            go(atoms, idx, &next, deg_left - d, out);
        }
    }
    let unit = UElement::unit(spec);
    go(&atoms, 0, &unit, max_deg, &mut out);
    out
}

// ---- Generator families ----

/// What a family member is an iterate of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MemberKind {
    Phi,
    Psi,
    Pi,
    DmuIterate,
}

/// Label of one family member: `D_mu^p phi^(0)_m` is `(phi, m, p)` etc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyLabel {
    pub kind: MemberKind,
    pub m: usize,
    pub k_or_p: usize,
}

/// An ordered, labelled generating family for the quantum
/// Mishchenko--Fomenko subalgebra.
pub struct GeneratorFamily {
    pub spec: Arc<AlgebraSpec>,
    pub mu: ShiftMatrix,
    pub members: Vec<(FamilyLabel, UElement)>,
}

impl GeneratorFamily {
    pub fn to_json(&self) -> serde_json::Value {
        let members: Vec<serde_json::Value> = self
            .members
            .iter()
            .map(|(label, el)| {
                serde_json::json!({
                    "label": {
                        "kind": serde_json::to_value(label.kind).unwrap(),
                        "m": label.m,
                        "k_or_p": label.k_or_p,
                    },
                    "element": el.to_string(),
                })
            })
            .collect();
        serde_json::Value::Array(members)
    }
}

/// The generating family of the quantum Mishchenko--Fomenko subalgebra:
/// `D_mu^p phi^(0)_m` with `m = 1..N`, `p < m` for glN; `m = 2,4,...,2n`,
/// `p < m` for the odd orthogonal and symplectic algebras; for even
/// orthogonal algebras `m` stops at `2n-2` and the Pfaffian iterates
/// `D_mu^p Pf F`, `p < n`, complete the family.
pub fn amu_generating_family(spec: &Arc<AlgebraSpec>, mu: &ShiftMatrix) -> Result<GeneratorFamily> {
    assert_eq!(spec.key(), mu.spec().key(), "spec mismatch");
    let n = spec.n();
    let mut members = Vec::new();
    let ms: Vec<usize> = match spec.family() {
        Family::GlN => (1..=n).collect(),
        Family::SplitSp => (1..=n).filter(|m| m % 2 == 0).collect(),
        Family::SplitO => {
            if n % 2 == 1 {
                (1..n).filter(|m| m % 2 == 0).collect()
            } else {
                (1..n - 1).filter(|m| m % 2 == 0).collect()
            }
        }
        Family::CanonicalO => (1..n - 1).filter(|m| m % 2 == 0).collect(),
    };
    for m in ms {
        let base = phi(spec, m, 0, mu)?;
        let mut cur = base;
        for p in 0..m {
            if p > 0 {
                cur = crate::quasi::d_mu(mu, &cur);
            }
            members.push((
                FamilyLabel {
                    kind: MemberKind::Phi,
                    m,
                    k_or_p: p,
                },
                cur.clone(),
            ));
        }
    }
    if matches!(spec.family(), Family::CanonicalO)
        || (spec.family() == Family::SplitO && n % 2 == 0)
    {
        let half = n / 2;
        let mut cur = pfaffian(spec)?;
        for p in 0..half {
            if p > 0 {
                cur = crate::quasi::d_mu(mu, &cur);
            }
            members.push((
                FamilyLabel {
                    kind: MemberKind::Pi,
                    m: half,
                    k_or_p: p,
                },
                cur.clone(),
            ));
        }
    }
    Ok(GeneratorFamily {
        spec: spec.clone(),
        mu: mu.clone(),
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::normal_form;

    fn gl(n: usize) -> Arc<AlgebraSpec> {
        AlgebraSpec::build(Family::GlN, n).unwrap()
    }

    #[test]
    fn gelfand_basics() {
        let s = gl(2);
        assert_eq!(gelfand_generator(&s, &[]).unwrap(), UElement::unit(&s));
        let tr = gelfand_generator(&s, &[1]).unwrap();
        let expect = &UElement::entry(&s, 1, 1) + &UElement::entry(&s, 2, 2);
        assert_eq!(tr, expect);
        let tr2 = gelfand_generator(&s, &[2]).unwrap();
        assert_eq!(tr2, trace_power(&s, 2));
    }

    #[test]
    fn phi_psi_small_gl2() {
        let s = gl(2);
        let mu = ShiftMatrix::generic(&s); // diag(1,2)
                                           // phi^(0)_1 = psi^(0)_1 = tr E
        let tr = trace_power(&s, 1);
        assert_eq!(phi(&s, 1, 0, &mu).unwrap(), tr);
        assert_eq!(psi(&s, 1, 0, &mu).unwrap(), tr);
        // psi^(1)_1 = tr mu = 3
        assert_eq!(psi(&s, 1, 1, &mu).unwrap(), UElement::scalar(&s, q(3)));
        // phi^(1)_2 = (tr mu tr E - tr mu E)/2 = E11 + E22/2
        let expect = &UElement::entry(&s, 1, 1) + &UElement::entry(&s, 2, 2).scale(&qr(1, 2));
        assert_eq!(phi(&s, 2, 1, &mu).unwrap(), expect);
        // psi^(1)_2 = (tr mu tr E + tr mu E)/2 = 2 E11 + 5/2 E22
        let expect =
            &UElement::entry(&s, 1, 1).scale(&q(2)) + &UElement::entry(&s, 2, 2).scale(&qr(5, 2));
        assert_eq!(psi(&s, 2, 1, &mu).unwrap(), expect);
        // k = m leaves a pure scalar
        let fullk = phi(&s, 2, 2, &mu).unwrap();
        assert_eq!(fullk.degree(), 0);
        // tr A^(2) mu_1 mu_2 = (tr mu^2... ) here: ((tr mu)^2 - tr mu^2)/2 = (9-5)/2
        assert_eq!(fullk, UElement::scalar(&s, q(2)));
    }

    #[test]
    fn phi_ranges_checked() {
        let s = gl(2);
        let mu = ShiftMatrix::generic(&s);
        assert!(phi(&s, 3, 0, &mu).is_err()); // m > N
        assert!(phi(&s, 2, 3, &mu).is_err()); // k > m
                                              // psi unrestricted in m
        assert!(psi(&s, 3, 0, &mu).is_ok());
    }

    #[test]
    fn pfaffian_small_cases() {
        // o_2 canonical: Pf = F[1,2]
        let o2 = AlgebraSpec::build(Family::CanonicalO, 2).unwrap();
        assert_eq!(pfaffian(&o2).unwrap(), UElement::entry(&o2, 1, 2));
        // o_4 canonical: Pf = F12 F34 - F13 F24 + F14 F23
        let o4 = AlgebraSpec::build(Family::CanonicalO, 4).unwrap();
        let e = |i, j| UElement::entry(&o4, i, j);
        let expect = &(&(&e(1, 2) * &e(3, 4)) - &(&e(1, 3) * &e(2, 4))) + &(&e(1, 4) * &e(2, 3));
        assert_eq!(pfaffian(&o4).unwrap(), expect);
        // o_2 split: Pf = F[1,1] (single permutation, normalized)
        let o2s = AlgebraSpec::build(Family::SplitO, 2).unwrap();
        assert_eq!(pfaffian(&o2s).unwrap(), UElement::entry(&o2s, 1, 1));
        // rejected away from even orthogonal algebras
        assert!(pfaffian(&AlgebraSpec::build(Family::SplitO, 5).unwrap()).is_err());
        assert!(pfaffian(&gl(2)).is_err());
    }

    #[test]
    fn shift_pfaffian_coefficients() {
        let o4 = AlgebraSpec::build(Family::CanonicalO, 4).unwrap();
        // mu with single nonzero pair mu_12 = -mu_21 = 1: pi_(1) = F34
        let n = 4;
        let mut entries = vec![Q::zero(); n * n];
        entries[0 * n + 1] = q(1);
        entries[1 * n + 0] = q(-1);
        let mu = ShiftMatrix::new(&o4, entries).unwrap();
        let pis = pf_shift_coeffs(&o4, &mu).unwrap();
        assert_eq!(pis.len(), 3);
        assert_eq!(pis[0], pfaffian(&o4).unwrap());
        assert_eq!(pis[1], UElement::entry(&o4, 3, 4));
        assert!(pis[2].is_zero()); // Pf mu = mu_12 mu_34 - ... = 0
                                   // mu = 0: only pi_(0) = Pf F survives
        let mu0 = ShiftMatrix::new(&o4, vec![Q::zero(); n * n]).unwrap();
        let pis = pf_shift_coeffs(&o4, &mu0).unwrap();
        assert_eq!(pis[0], pfaffian(&o4).unwrap());
        assert!(pis[1].is_zero() && pis[2].is_zero());
        // n = 1: [F12, mu_12]
        let o2 = AlgebraSpec::build(Family::CanonicalO, 2).unwrap();
        let mu = ShiftMatrix::generic(&o2);
        let pis = pf_shift_coeffs(&o2, &mu).unwrap();
        assert_eq!(pis[0], UElement::entry(&o2, 1, 2));
        assert_eq!(pis[1], UElement::scalar(&o2, q(1)));
    }

    #[test]
    fn t_elements() {
        let s = gl(2);
        let mu = ShiftMatrix::generic(&s);
        // T_1 = E12 E21 / (mu_1 - mu_2) = -E12 E21
        let t1 = t_element(&s, &mu, 1).unwrap();
        let expect = (&UElement::entry(&s, 1, 2) * &UElement::entry(&s, 2, 1)).scale(&q(-1));
        assert_eq!(t1, expect);
        // weight zero: [E_ii, T_i] = 0
        for i in 1..=2 {
            let t = t_element(&s, &mu, i).unwrap();
            for j in 1..=2 {
                assert!(UElement::entry(&s, j, j).commutator(&t).is_zero());
            }
        }
        // D_mu T_i is a constant
        let d = crate::quasi::d_mu(&mu, &t_element(&s, &mu, 1).unwrap());
        assert_eq!(d.degree(), 0);
        // non-generic mu rejected
        let bad = ShiftMatrix::new(&s, vec![q(1), Q::zero(), Q::zero(), q(1)]).unwrap();
        assert!(t_element(&s, &bad, 1).is_err());
        // index range honoured for split types
        let o5 = AlgebraSpec::build(Family::SplitO, 5).unwrap();
        let mu5 = ShiftMatrix::generic(&o5);
        assert!(t_element(&o5, &mu5, 2).is_ok());
        assert!(t_element(&o5, &mu5, 3).is_err());
    }

    #[test]
    fn family_shapes() {
        let s = gl(2);
        let mu = ShiftMatrix::generic(&s);
        let fam = amu_generating_family(&s, &mu).unwrap();
        // gl_2: phi^(0)_1, phi^(0)_2, D_mu phi^(0)_2
        assert_eq!(fam.members.len(), 3);
        assert_eq!(fam.members[0].1, trace_power(&s, 1));

        let sp4 = AlgebraSpec::build(Family::SplitSp, 4).unwrap();
        let fam = amu_generating_family(&sp4, &ShiftMatrix::generic(&sp4)).unwrap();
        // m = 2, 4 with p < m: 2 + 4 members
        assert_eq!(fam.members.len(), 6);

        let o4 = AlgebraSpec::build(Family::CanonicalO, 4).unwrap();
        let fam = amu_generating_family(&o4, &ShiftMatrix::generic(&o4)).unwrap();
        // m = 2 (p = 0,1) plus Pfaffian iterates p = 0,1
        assert_eq!(fam.members.len(), 4);
        assert!(fam
            .members
            .iter()
            .any(|(l, _)| l.kind == MemberKind::Pi && l.k_or_p == 1));
        // labels unique
        let mut labels: Vec<_> = fam.members.iter().map(|(l, _)| *l).collect();
        labels.dedup();
        assert_eq!(labels.len(), fam.members.len());
    }

    #[test]
    fn odd_m_phi_vanishes_with_a_form() {
        // the generating family uses even m only: odd-m phi are identically 0
        for (fam, n) in [
            (Family::SplitO, 5),
            (Family::SplitO, 4),
            (Family::SplitSp, 4),
            (Family::CanonicalO, 4),
        ] {
            let s = AlgebraSpec::build(fam, n).unwrap();
            let mu = ShiftMatrix::generic(&s);
            for m in [1usize, 3] {
                for k in 0..=m {
                    assert!(
                        phi(&s, m, k, &mu).unwrap().is_zero(),
                        "phi^({k})_{m} nonzero in {fam} N={n}"
                    );
                }
            }
            assert!(!phi(&s, 2, 0, &mu).unwrap().is_zero());
        }
    }

    #[test]
    fn central_basis_members_are_central() {
        let o4 = AlgebraSpec::build(Family::SplitO, 4).unwrap();
        for z in central_basis(&o4, 3) {
            for g in 0..o4.dim() as crate::algebra::GenId {
                let x = normal_form(&o4, &[g]);
                assert!(z.commutator(&x).is_zero());
            }
        }
    }
}
