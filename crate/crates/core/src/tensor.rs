//! Sparse calculus in End(C^N)^(tensor m) tensor U(g).
//!
//! A [`TensorElement`] is a sparse map from (row tuple, column tuple) pairs
//! to U(g) coefficients. Matrix products contract column against row and
//! multiply the noncommutative coefficients in left-to-right order. The
//! module provides the permutation operators `P_ab`, the form operators
//! `Q_ab`, embeddings of rational and U-valued matrices into a chosen slot,
//! partial traces, slot permutations and transpositions, application of the
//! quasi-derivation matrix `D`, the symmetric-group (anti)symmetrizers and
//! the Brauer-algebra symmetrizer.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{AlgebraSpec, Family, MAX_SLOTS};
use crate::error::{AlgebraError, Result};
use crate::pbw::UElement;
use crate::quasi::{quasi_derive_unchecked, DerivKind};
use crate::scalar::{q, qr, Q};
use crate::shift::ShiftMatrix;
use crate::umatrix::UMatrix;

type Idx = Vec<u8>;

/// Element of End(C^N)^(tensor m) tensor U(g), sparse.
#[derive(Clone)]
pub struct TensorElement {
    spec: Arc<AlgebraSpec>,
    m: usize,
    entries: HashMap<(Idx, Idx), UElement>,
}

fn all_tuples(n: usize, m: usize) -> Vec<Idx> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for v in 1..=n as u8 {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

impl TensorElement {
    pub fn zero(spec: &Arc<AlgebraSpec>, m: usize) -> TensorElement {
        assert!(m <= MAX_SLOTS, "slot count {m} exceeds cap {MAX_SLOTS}");
        TensorElement {
            spec: spec.clone(),
            m,
            entries: HashMap::new(),
        }
    }

    pub fn identity(spec: &Arc<AlgebraSpec>, m: usize) -> TensorElement {
        let mut out = TensorElement::zero(spec, m);
        for t in all_tuples(spec.n(), m) {
            out.insert_add(t.clone(), t, UElement::unit(spec));
        }
        out
    }

    /// A plain U(g) element viewed as a 0-slot tensor.
    pub fn from_u(u: &UElement) -> TensorElement {
        let mut out = TensorElement::zero(u.spec(), 0);
        out.insert_add(Vec::new(), Vec::new(), u.clone());
        out
    }

    /// Tensor with a single (row, col) entry.
    pub fn single_entry(
        spec: &Arc<AlgebraSpec>,
        m: usize,
        row: Vec<u8>,
        col: Vec<u8>,
        u: UElement,
    ) -> TensorElement {
        assert_eq!(row.len(), m);
        assert_eq!(col.len(), m);
        let mut out = TensorElement::zero(spec, m);
        out.insert_add(row, col, u);
        out
    }

    /// Permutation operator `P_ab` swapping two tensor factors.
    pub fn perm(spec: &Arc<AlgebraSpec>, m: usize, a: usize, b: usize) -> Result<TensorElement> {
        check_slots(m, &[a, b])?;
        if a == b {
            return Err(AlgebraError::SlotOutOfRange { slot: a, m });
        }
        let mut out = TensorElement::zero(spec, m);
        for t in all_tuples(spec.n(), m) {
            let mut c = t.clone();
            c.swap(a, b);
            out.insert_add(t, c, UElement::unit(spec));
        }
        Ok(out)
    }

    /// Form operator `Q_ab = sum eps_i eps_j e_ij (x) e_i'j'` on two slots
    /// (plain `sum e_ij (x) e_ij` in the canonical presentation). Rejected
    /// for glN.
    pub fn q_op(spec: &Arc<AlgebraSpec>, m: usize, a: usize, b: usize) -> Result<TensorElement> {
        if spec.family() == Family::GlN {
            return Err(AlgebraError::UnsupportedFamily {
                family: "glN".to_string(),
                reason: "Q operator needs a defining form".to_string(),
            });
        }
        check_slots(m, &[a, b])?;
        if a == b {
            return Err(AlgebraError::SlotOutOfRange { slot: a, m });
        }
        let n = spec.n();
        let rest = all_tuples(n, m - 2);
        let mut out = TensorElement::zero(spec, m);
        for i in 1..=n {
            for j in 1..=n {
                let c = q(spec.eps(i) * spec.eps(j));
                for t in &rest {
                    let mut row = t.clone();
                    let mut col = t.clone();
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    // slot a carries (i,j), slot b carries (i',j')
                    let (ra, ca) = (i as u8, j as u8);
                    let (rb, cb) = (spec.prime(i) as u8, spec.prime(j) as u8);
                    let (rlo, clo, rhi, chi) = if a < b {
                        (ra, ca, rb, cb)
                    } else {
                        (rb, cb, ra, ca)
                    };
                    row.insert(lo, rlo);
                    col.insert(lo, clo);
                    row.insert(hi, rhi);
                    col.insert(hi, chi);
                    out.insert_add(row, col, UElement::scalar(spec, c.clone()));
                }
            }
        }
        Ok(out)
    }

    /// `Phi_ab = P_ab - Q_ab`.
    pub fn phi_op(spec: &Arc<AlgebraSpec>, m: usize, a: usize, b: usize) -> Result<TensorElement> {
        Ok(TensorElement::perm(spec, m, a, b)?.sub(&TensorElement::q_op(spec, m, a, b)?))
    }

    /// An arbitrary rational matrix (row-major rows) embedded at one slot,
    /// identity elsewhere. Unlike [`TensorElement::shift_at`] this places no
    /// constraint on the matrix.
    pub fn rat_matrix_at(
        spec: &Arc<AlgebraSpec>,
        m: usize,
        slot: usize,
        rows: &[Vec<Q>],
    ) -> Result<TensorElement> {
        check_slots(m, &[slot])?;
        let n = spec.n();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::InvalidShiftMatrix(format!(
                "expected an {n}x{n} matrix"
            )));
        }
        let rest = all_tuples(n, m - 1);
        let mut out = TensorElement::zero(spec, m);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for t in &rest {
                    let mut r = t.clone();
                    let mut c = t.clone();
                    r.insert(slot, (i + 1) as u8);
                    c.insert(slot, (j + 1) as u8);
                    out.insert_add(r, c, UElement::scalar(spec, v.clone()));
                }
            }
        }
        Ok(out)
    }

    /// A rational matrix embedded at one slot (identity elsewhere).
    pub fn shift_at(mu: &ShiftMatrix, m: usize, slot: usize) -> Result<TensorElement> {
        let spec = mu.spec().clone();
        check_slots(m, &[slot])?;
        let rest = all_tuples(spec.n(), m - 1);
        let mut out = TensorElement::zero(&spec, m);
        for (i, j, v) in mu.nonzero_entries() {
            for t in &rest {
                let mut row = t.clone();
                let mut col = t.clone();
                row.insert(slot, i as u8);
                col.insert(slot, j as u8);
                out.insert_add(row, col, UElement::scalar(&spec, v.clone()));
            }
        }
        Ok(out)
    }

    /// A U-valued matrix embedded at one slot (identity elsewhere).
    pub fn umatrix_at(x: &UMatrix, m: usize, slot: usize) -> Result<TensorElement> {
        let spec = x.spec().clone();
        check_slots(m, &[slot])?;
        let n = spec.n();
        let rest = all_tuples(n, m - 1);
        let mut out = TensorElement::zero(&spec, m);
        for i in 1..=n {
            for j in 1..=n {
                let u = x.entry(i, j);
                if u.is_zero() {
                    continue;
                }
                for t in &rest {
                    let mut row = t.clone();
                    let mut col = t.clone();
                    row.insert(slot, i as u8);
                    col.insert(slot, j as u8);
                    out.insert_add(row, col, u.clone());
                }
            }
        }
        Ok(out)
    }

    /// The generator matrix `E_a` resp. `F_a` at a slot.
    pub fn generator_at(spec: &Arc<AlgebraSpec>, m: usize, slot: usize) -> Result<TensorElement> {
        TensorElement::umatrix_at(&UMatrix::generator_matrix(spec), m, slot)
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn slots(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Idx, Idx), &UElement)> {
        self.entries.iter()
    }

    fn insert_add(&mut self, row: Idx, col: Idx, u: UElement) {
        if u.is_zero() {
            return;
        }
        let key = (row, col);
        match self.entries.get_mut(&key) {
            Some(cur) => {
                *cur = &*cur + &u;
                if cur.is_zero() {
                    self.entries.remove(&key);
                }
            }
            None => {
                self.entries.insert(key, u);
            }
        }
    }

    fn assert_compatible(&self, rhs: &TensorElement) {
        assert_eq!(self.spec.key(), rhs.spec.key(), "spec mismatch");
        assert_eq!(self.m, rhs.m, "tensor slot mismatch");
    }

    pub fn add(&self, rhs: &TensorElement) -> TensorElement {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for ((r, c), u) in &rhs.entries {
            out.insert_add(r.clone(), c.clone(), u.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &TensorElement) -> TensorElement {
        self.add(&rhs.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> TensorElement {
        if c.is_zero() {
            return TensorElement::zero(&self.spec, self.m);
        }
        let mut out = TensorElement::zero(&self.spec, self.m);
        for ((r, cc), u) in &self.entries {
            out.entries.insert((r.clone(), cc.clone()), u.scale(c));
        }
        out
    }

    /// Multiply every coefficient by a U(g) element on the right.
    pub fn scale_u_right(&self, v: &UElement) -> TensorElement {
        let mut out = TensorElement::zero(&self.spec, self.m);
        for ((r, c), u) in &self.entries {
            out.insert_add(r.clone(), c.clone(), u * v);
        }
        out
    }

    /// Multiply every coefficient by a U(g) element on the left.
    pub fn scale_u_left(&self, v: &UElement) -> TensorElement {
        let mut out = TensorElement::zero(&self.spec, self.m);
        for ((r, c), u) in &self.entries {
            out.insert_add(r.clone(), c.clone(), v * u);
        }
        out
    }

    /// Matrix product: contracts column of `self` against row of `rhs`;
    /// U coefficients multiply preserving left-right order.
    pub fn mul(&self, rhs: &TensorElement) -> TensorElement {
        self.assert_compatible(rhs);
        let mut by_row: HashMap<&Idx, Vec<(&Idx, &UElement)>> = HashMap::new();
        for ((r, c), u) in &rhs.entries {
            by_row.entry(r).or_default().push((c, u));
        }
        let mut out = TensorElement::zero(&self.spec, self.m);
        for ((r, mid), u) in &self.entries {
            if let Some(cols) = by_row.get(mid) {
                for (c, v) in cols {
                    out.insert_add(r.clone(), (*c).clone(), u * v);
                }
            }
        }
        out
    }

    /// Contract row = col over the given slots, reducing the slot count.
    pub fn partial_trace(&self, slots: &[usize]) -> TensorElement {
        for &s in slots {
            assert!(s < self.m, "trace slot {s} out of range");
        }
        let keep: Vec<usize> = (0..self.m).filter(|s| !slots.contains(s)).collect();
        let mut out = TensorElement::zero(&self.spec, keep.len());
        'entry: for ((r, c), u) in &self.entries {
            for &s in slots {
                if r[s] != c[s] {
                    continue 'entry;
                }
            }
            let nr: Idx = keep.iter().map(|&s| r[s]).collect();
            let nc: Idx = keep.iter().map(|&s| c[s]).collect();
            out.insert_add(nr, nc, u.clone());
        }
        out
    }

    /// Full trace, as a U(g) element.
    pub fn trace_all(&self) -> UElement {
        let slots: Vec<usize> = (0..self.m).collect();
        let traced = self.partial_trace(&slots);
        let mut out = UElement::zero(&self.spec);
        for (_, u) in &traced.entries {
            out = &out + u;
        }
        out
    }

    /// Move slot k to position sigma[k] (conjugation by the permutation
    /// operator of sigma).
    pub fn permute_slots(&self, sigma: &[usize]) -> TensorElement {
        assert_eq!(sigma.len(), self.m);
        let mut out = TensorElement::zero(&self.spec, self.m);
        for ((r, c), u) in &self.entries {
            let mut nr = vec![0u8; self.m];
            let mut nc = vec![0u8; self.m];
            for k in 0..self.m {
                nr[sigma[k]] = r[k];
                nc[sigma[k]] = c[k];
            }
            out.insert_add(nr, nc, u.clone());
        }
        out
    }

    /// Form transposition applied to one slot.
    pub fn transpose_slot(&self, slot: usize) -> Result<TensorElement> {
        if self.spec.family() == Family::GlN {
            return Err(AlgebraError::UnsupportedFamily {
                family: "glN".to_string(),
                reason: "no defining form, transposition-prime undefined".to_string(),
            });
        }
        assert!(slot < self.m);
        let mut out = TensorElement::zero(&self.spec, self.m);
        for ((r, c), u) in &self.entries {
            let (rs, cs) = (r[slot] as usize, c[slot] as usize);
            let (a, b) = (self.spec.prime(cs), self.spec.prime(rs));
            let sign = q(self.spec.eps(a) * self.spec.eps(b));
            let mut nr = r.clone();
            let mut nc = c.clone();
            nr[slot] = a as u8;
            nc[slot] = b as u8;
            out.insert_add(nr, nc, u.scale(&sign));
        }
        Ok(out)
    }

    /// Apply the quasi-derivation matrix `D`, inserting the new End(C^N)
    /// slot at `pos`: the (i,j) entry of the new slot is `d_ij` applied to
    /// each coefficient.
    pub fn apply_d(&self, pos: usize) -> TensorElement {
        assert!(pos <= self.m, "insertion position out of range");
        assert!(self.m + 1 <= MAX_SLOTS, "slot cap exceeded");
        let n = self.spec.n();
        let mut out = TensorElement::zero(&self.spec, self.m + 1);
        for ((r, c), u) in &self.entries {
            for i in 1..=n {
                for j in 1..=n {
                    let d = quasi_derive_unchecked(u, i, j, DerivKind::Standard);
                    if d.is_zero() {
                        continue;
                    }
                    let mut nr = r.clone();
                    let mut nc = c.clone();
                    nr.insert(pos, i as u8);
                    nc.insert(pos, j as u8);
                    out.insert_add(nr, nc, d);
                }
            }
        }
        out
    }

    /// Tensor with identity factors appended at the end.
    pub fn extend_identity(&self, extra: usize) -> TensorElement {
        assert!(self.m + extra <= MAX_SLOTS, "slot cap exceeded");
        let mut out = TensorElement::zero(&self.spec, self.m + extra);
        for t in all_tuples(self.spec.n(), extra) {
            for ((r, c), u) in &self.entries {
                let mut nr = r.clone();
                let mut nc = c.clone();
                nr.extend_from_slice(&t);
                nc.extend_from_slice(&t);
                out.insert_add(nr, nc, u.clone());
            }
        }
        out
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec.key() == other.spec.key() && self.m == other.m && self.entries == other.entries
    }
}
impl Eq for TensorElement {}

impl std::fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "TensorElement({} N={}, m={}, {} entries)",
            self.spec.family(),
            self.spec.n(),
            self.m,
            self.entries.len()
        )?;
        let mut keys: Vec<_> = self.entries.keys().collect();
        keys.sort();
        for k in keys.into_iter().take(40) {
            writeln!(f, "  {:?} -> {}", k, self.entries[k])?;
        }
        Ok(())
    }
}

/// JSON debug dump: `{m, entries: [{row, col, element}]}`.
pub fn dump_json(x: &TensorElement) -> serde_json::Value {
    let mut entries: Vec<serde_json::Value> = Vec::new();
    let mut keys: Vec<_> = x.entries.keys().collect();
    keys.sort();
    for k in keys {
        entries.push(serde_json::json!({
            "row": k.0,
            "col": k.1,
            "element": x.entries[k].to_string(),
        }));
    }
    serde_json::json!({ "m": x.m, "entries": entries })
}

fn check_slots(m: usize, slots: &[usize]) -> Result<()> {
    if m > MAX_SLOTS {
        return Err(AlgebraError::CapsExceeded(format!(
            "slot count {m} exceeds cap {MAX_SLOTS}"
        )));
    }
    for &s in slots {
        if s >= m {
            return Err(AlgebraError::SlotOutOfRange { slot: s, m });
        }
    }
    Ok(())
}

/// Antisymmetrizer A^(m): image of the alternating group-algebra idempotent,
/// built by the recursion A^(m) = (1/m)(1 - P_1m - ... - P_{m-1,m}) A^(m-1).
pub fn antisymmetrizer(spec: &Arc<AlgebraSpec>, m: usize) -> TensorElement {
    symmetrizer_impl(spec, m, true)
}

/// Symmetrizer H^(m).
pub fn symmetrizer_h(spec: &Arc<AlgebraSpec>, m: usize) -> TensorElement {
    symmetrizer_impl(spec, m, false)
}

fn symmetrizer_impl(spec: &Arc<AlgebraSpec>, m: usize, anti: bool) -> TensorElement {
    assert!(m >= 1 && m <= MAX_SLOTS);
    let mut acc = TensorElement::identity(spec, 1);
    for k in 2..=m {
        let prev = acc.extend_identity(1);
        let mut factor = TensorElement::identity(spec, k);
        for a in 0..k - 1 {
            let p = TensorElement::perm(spec, k, a, k - 1).unwrap();
            factor = if anti { factor.sub(&p) } else { factor.add(&p) };
        }
        acc = factor.mul(&prev).scale(&qr(1, k as i64));
    }
    acc
}

/// Brauer-algebra symmetrizer S^(m) from the pairwise product formula
/// (factors in lexicographic order on the index pairs). Orthogonal:
/// `1 + P_ab/(b-a) - Q_ab/(N/2+b-a-1)`; symplectic:
/// `1 - P_ab/(b-a) - Q_ab/(n-b+a+1)`, rejected when a denominator
/// vanishes (use the antisymmetrizer route for those ranges).
pub fn brauer_symmetrizer(spec: &Arc<AlgebraSpec>, m: usize) -> Result<TensorElement> {
    if spec.family() == Family::GlN {
        return Err(AlgebraError::UnsupportedFamily {
            family: "glN".to_string(),
            reason: "Brauer symmetrizer needs a defining form".to_string(),
        });
    }
    if m > MAX_SLOTS {
        return Err(AlgebraError::CapsExceeded(format!(
            "slot count {m} exceeds cap {MAX_SLOTS}"
        )));
    }
    let n2 = q(spec.n() as i64);
    let symplectic = spec.family() == Family::SplitSp;
    let half_n = spec.n() / 2;
    let mut acc = TensorElement::identity(spec, m);
    let mut factorial = 1i64;
    for a in 1..=m {
        factorial *= a as i64;
        for b in a + 1..=m {
            let p = TensorElement::perm(spec, m, a - 1, b - 1)?;
            let qq = TensorElement::q_op(spec, m, a - 1, b - 1)?;
            let gap = q((b - a) as i64);
            let factor = if symplectic {
                let den = q(half_n as i64) - q(b as i64) + q(a as i64) + q(1);
                if den.is_zero() {
                    return Err(AlgebraError::UnsupportedFamily {
                        family: spec.family().name().to_string(),
                        reason: format!(
                            "symplectic product formula denominator vanishes at pair ({a},{b}) \
                             for m={m}; use the antisymmetrizer form instead"
                        ),
                    });
                }
                TensorElement::identity(spec, m)
                    .sub(&p.scale(&(q(1) / gap)))
                    .sub(&qq.scale(&(q(1) / den)))
            } else {
                let den = n2.clone() / q(2) + q(b as i64) - q(a as i64) - q(1);
                assert!(!den.is_zero());
                TensorElement::identity(spec, m)
                    .add(&p.scale(&(q(1) / gap)))
                    .sub(&qq.scale(&(q(1) / den)))
            };
            acc = acc.mul(&factor);
        }
    }
    Ok(acc.scale(&qr(1, factorial)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::umatrix::trace_power;

    fn gl(n: usize) -> Arc<AlgebraSpec> {
        AlgebraSpec::build(Family::GlN, n).unwrap()
    }

    #[test]
    fn permutation_operator_algebra() {
        let s = gl(3);
        let p = TensorElement::perm(&s, 2, 0, 1).unwrap();
        assert_eq!(p.mul(&p), TensorElement::identity(&s, 2));
        // P_12 E_1 P_12 = E_2
        let e0 = TensorElement::generator_at(&s, 2, 0).unwrap();
        let e1 = TensorElement::generator_at(&s, 2, 1).unwrap();
        assert_eq!(p.mul(&e0).mul(&p), e1);
    }

    #[test]
    fn q_operator_relations() {
        // orthogonal: Q^2 = N Q and P Q = Q P = Q
        let o5 = AlgebraSpec::build(Family::SplitO, 5).unwrap();
        let p = TensorElement::perm(&o5, 2, 0, 1).unwrap();
        let qq = TensorElement::q_op(&o5, 2, 0, 1).unwrap();
        assert_eq!(qq.mul(&qq), qq.scale(&q(5)));
        assert_eq!(p.mul(&qq), qq);
        assert_eq!(qq.mul(&p), qq);
        // symplectic: P Q = Q P = -Q
        let sp4 = AlgebraSpec::build(Family::SplitSp, 4).unwrap();
        let p = TensorElement::perm(&sp4, 2, 0, 1).unwrap();
        let qq = TensorElement::q_op(&sp4, 2, 0, 1).unwrap();
        assert_eq!(qq.mul(&qq), qq.scale(&q(4)));
        assert_eq!(p.mul(&qq), qq.scale(&q(-1)));
        assert_eq!(qq.mul(&p), qq.scale(&q(-1)));
        // canonical: same pattern as orthogonal
        let oc = AlgebraSpec::build(Family::CanonicalO, 4).unwrap();
        let p = TensorElement::perm(&oc, 2, 0, 1).unwrap();
        let qq = TensorElement::q_op(&oc, 2, 0, 1).unwrap();
        assert_eq!(qq.mul(&qq), qq.scale(&q(4)));
        assert_eq!(p.mul(&qq), qq);
    }

    #[test]
    fn trace_swap_relations() {
        // tr_1 P_01 = identity; tr_1 X_1 P_01 = X_0; tr_1 id(m=1) = N
        let s = gl(3);
        let p = TensorElement::perm(&s, 2, 0, 1).unwrap();
        assert_eq!(p.partial_trace(&[1]), TensorElement::identity(&s, 1));
        let x1 = TensorElement::generator_at(&s, 2, 1).unwrap();
        let x0 = TensorElement::generator_at(&s, 1, 0).unwrap();
        assert_eq!(x1.mul(&p).partial_trace(&[1]), x0);
        assert_eq!(p.mul(&x0.extend_identity(1)).partial_trace(&[1]), x0);
        let one = TensorElement::identity(&s, 1);
        assert_eq!(one.trace_all(), UElement::scalar(&s, q(3)));
    }

    #[test]
    fn product_entries_keep_coefficient_order() {
        let s = gl(2);
        let e0 = TensorElement::generator_at(&s, 2, 0).unwrap();
        let e1 = TensorElement::generator_at(&s, 2, 1).unwrap();
        let prod = e0.mul(&e1);
        // entry ((1,1),(2,2)) = E12 * E12
        let key = (vec![1u8, 1u8], vec![2u8, 2u8]);
        let expected = &UElement::entry(&s, 1, 2) * &UElement::entry(&s, 1, 2);
        let got = prod
            .entries
            .get(&key)
            .cloned()
            .unwrap_or_else(|| UElement::zero(&s));
        assert_eq!(got, expected);
    }

    #[test]
    fn defining_relations_in_matrix_form() {
        // E1 E2 - E2 E1 = P12 E2 - E2 P12, and the Phi version with a form
        for (fam, n) in [(Family::GlN, 2), (Family::GlN, 3)] {
            let s = AlgebraSpec::build(fam, n).unwrap();
            let e1 = TensorElement::generator_at(&s, 2, 0).unwrap();
            let e2 = TensorElement::generator_at(&s, 2, 1).unwrap();
            let p = TensorElement::perm(&s, 2, 0, 1).unwrap();
            let lhs = e1.mul(&e2).sub(&e2.mul(&e1));
            let rhs = p.mul(&e2).sub(&e2.mul(&p));
            assert_eq!(lhs, rhs, "matrix defining relations fail in {fam} N={n}");
        }
        for (fam, n) in [
            (Family::SplitO, 4),
            (Family::SplitO, 5),
            (Family::SplitSp, 4),
            (Family::CanonicalO, 4),
        ] {
            let s = AlgebraSpec::build(fam, n).unwrap();
            let f1 = TensorElement::generator_at(&s, 2, 0).unwrap();
            let f2 = TensorElement::generator_at(&s, 2, 1).unwrap();
            let phi = TensorElement::phi_op(&s, 2, 0, 1).unwrap();
            let lhs = f1.mul(&f2).sub(&f2.mul(&f1));
            let rhs = phi.mul(&f2).sub(&f2.mul(&phi));
            assert_eq!(lhs, rhs, "matrix defining relations fail in {fam} N={n}");
        }
    }

    #[test]
    fn d_of_generator_matrix() {
        // D_1 E_2 = P_12 (x) 1 for glN; Phi_12 (x) 1 with a form
        let s = gl(3);
        let e = TensorElement::generator_at(&s, 1, 0).unwrap();
        let de = e.apply_d(0);
        assert_eq!(de, TensorElement::perm(&s, 2, 0, 1).unwrap());
        for (fam, n) in [
            (Family::SplitO, 5),
            (Family::SplitSp, 4),
            (Family::CanonicalO, 4),
        ] {
            let s = AlgebraSpec::build(fam, n).unwrap();
            let f = TensorElement::generator_at(&s, 1, 0).unwrap();
            let df = f.apply_d(0);
            assert_eq!(df, TensorElement::phi_op(&s, 2, 0, 1).unwrap());
        }
        // D applied to a constant is the zero tensor
        let one = TensorElement::from_u(&UElement::unit(&s));
        assert!(one.apply_d(0).is_zero());
    }

    #[test]
    fn d_applications_commute() {
        // the two new slots of a double application can be swapped
        let s = gl(2);
        let x = &UElement::entry(&s, 1, 2) * &UElement::entry(&s, 2, 1);
        let dd = TensorElement::from_u(&x).apply_d(0).apply_d(0);
        assert_eq!(dd.permute_slots(&[1, 0]), dd);
    }

    #[test]
    fn antisymmetrizer_properties() {
        let s = gl(3);
        assert_eq!(antisymmetrizer(&s, 1), TensorElement::identity(&s, 1));
        assert_eq!(symmetrizer_h(&s, 1), TensorElement::identity(&s, 1));
        // A^(2) = (1 - P)/2
        let a2 = antisymmetrizer(&s, 2);
        let p = TensorElement::perm(&s, 2, 0, 1).unwrap();
        let expect = TensorElement::identity(&s, 2).sub(&p).scale(&qr(1, 2));
        assert_eq!(a2, expect);
        for m in 1..=3 {
            let a = antisymmetrizer(&s, m);
            let h = symmetrizer_h(&s, m);
            assert_eq!(a.mul(&a), a, "A^({m}) not idempotent");
            assert_eq!(h.mul(&h), h, "H^({m}) not idempotent");
            if m >= 2 {
                let p = TensorElement::perm(&s, m, 0, 1).unwrap();
                assert_eq!(a.mul(&p), a.scale(&q(-1)));
                assert_eq!(h.mul(&p), h);
            }
        }
        // tr_2 A^(2) = ((N-1)/2) id
        let a2 = antisymmetrizer(&s, 2);
        assert_eq!(
            a2.partial_trace(&[1]),
            TensorElement::identity(&s, 1).scale(&qr(2, 2))
        );
    }

    #[test]
    fn brauer_symmetrizer_small_cases() {
        // o_3, m = 2: S = (1/2)(1 + P - (2/3) Q)
        let o3 = AlgebraSpec::build(Family::SplitO, 3).unwrap();
        let s2 = brauer_symmetrizer(&o3, 2).unwrap();
        let p = TensorElement::perm(&o3, 2, 0, 1).unwrap();
        let qq = TensorElement::q_op(&o3, 2, 0, 1).unwrap();
        let expect = TensorElement::identity(&o3, 2)
            .add(&p)
            .sub(&qq.scale(&qr(2, 3)))
            .scale(&qr(1, 2));
        assert_eq!(s2, expect);
        // idempotency across families and sizes
        for (fam, n, mmax) in [
            (Family::SplitO, 3, 3),
            (Family::SplitO, 4, 3),
            (Family::SplitO, 5, 3),
            (Family::SplitSp, 4, 2),
            (Family::CanonicalO, 4, 3),
        ] {
            let s = AlgebraSpec::build(fam, n).unwrap();
            for m in 1..=mmax {
                let sm = brauer_symmetrizer(&s, m).unwrap();
                assert_eq!(sm.mul(&sm), sm, "S^({m}) not idempotent in {fam} N={n}");
            }
        }
        // symplectic m beyond the product-formula regime is rejected
        let sp4 = AlgebraSpec::build(Family::SplitSp, 4).unwrap();
        assert!(brauer_symmetrizer(&sp4, 4).is_err());
    }

    #[test]
    fn rational_matrix_operator() {
        // tr_1 X_1 P_01 = X_0 also for a plain (unconstrained) rational matrix
        let s = gl(3);
        let rows = vec![
            vec![q(1), q(2), q(0)],
            vec![q(0), qr(1, 2), q(3)],
            vec![q(-1), q(0), q(5)],
        ];
        let x1 = TensorElement::rat_matrix_at(&s, 2, 1, &rows).unwrap();
        let x0 = TensorElement::rat_matrix_at(&s, 1, 0, &rows).unwrap();
        let p = TensorElement::perm(&s, 2, 0, 1).unwrap();
        assert_eq!(x1.mul(&p).partial_trace(&[1]), x0);
        assert!(TensorElement::rat_matrix_at(&s, 2, 1, &[vec![q(1)]]).is_err());
    }

    #[test]
    fn transpose_slot_matches_matrix_transpose() {
        let o4 = AlgebraSpec::build(Family::SplitO, 4).unwrap();
        let f = UMatrix::generator_matrix(&o4);
        let f2 = f.pow(2);
        let t_matrix = TensorElement::umatrix_at(&f2.transpose_prime().unwrap(), 1, 0).unwrap();
        let t_tensor = TensorElement::umatrix_at(&f2, 1, 0)
            .unwrap()
            .transpose_slot(0)
            .unwrap();
        assert_eq!(t_matrix, t_tensor);
        // involution
        assert_eq!(
            t_tensor.transpose_slot(0).unwrap(),
            TensorElement::umatrix_at(&f2, 1, 0).unwrap()
        );
    }

    #[test]
    fn gelfand_trace_through_tensors() {
        // tr_{1,2} E_1 E_2 P_12 = tr E^2
        let s = gl(2);
        let e1 = TensorElement::generator_at(&s, 2, 0).unwrap();
        let e2 = TensorElement::generator_at(&s, 2, 1).unwrap();
        let p = TensorElement::perm(&s, 2, 0, 1).unwrap();
        let lhs = e1.mul(&e2).mul(&p).trace_all();
        assert_eq!(lhs, trace_power(&s, 2));
    }
}
