//! Commutative twin: the symmetric algebra S(g) as the classical oracle.
//!
//! [`SElement`] reuses the monomial layout of the PBW module but multiplies
//! commutatively (multisets of generators). It carries the Lie--Poisson
//! bracket, the classical argument shift expansion and the classical
//! directional derivative, against which the quantum constructions are
//! compared.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgebraSpec, GenId};
use crate::pbw::{PbwMonomial, UElement};
use crate::scalar::{format_q, q, Q};
use crate::shift::ShiftMatrix;

/// Element of S(g): rational combination of commutative monomials.
#[derive(Clone)]
pub struct SElement {
    spec: Arc<AlgebraSpec>,
    terms: BTreeMap<PbwMonomial, Q>,
}

fn merge_monomials(a: &PbwMonomial, b: &PbwMonomial) -> PbwMonomial {
    let mut word = a.word();
    word.extend(b.word());
    word.sort_unstable();
    PbwMonomial::from_sorted_word(&word)
}

impl SElement {
    pub fn zero(spec: &Arc<AlgebraSpec>) -> Self {
        SElement {
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(spec: &Arc<AlgebraSpec>, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(PbwMonomial::unit(), c);
        }
        SElement {
            spec: spec.clone(),
            terms,
        }
    }

    pub fn unit(spec: &Arc<AlgebraSpec>) -> Self {
        SElement::scalar(spec, q(1))
    }

    pub fn from_gen(spec: &Arc<AlgebraSpec>, g: GenId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(PbwMonomial::gen(g), q(1));
        SElement {
            spec: spec.clone(),
            terms,
        }
    }

    /// Matrix entry as a classical element (resolves symmetry classes).
    pub fn entry(spec: &Arc<AlgebraSpec>, i: usize, j: usize) -> Self {
        match spec.resolve(i, j) {
            None => SElement::zero(spec),
            Some((sign, g)) => SElement::from_gen(spec, g).scale(&q(sign)),
        }
    }

    pub fn from_terms(spec: &Arc<AlgebraSpec>, terms: BTreeMap<PbwMonomial, Q>) -> Self {
        SElement {
            spec: spec.clone(),
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn terms(&self) -> &BTreeMap<PbwMonomial, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Q) -> SElement {
        if c.is_zero() {
            return SElement::zero(&self.spec);
        }
        SElement {
            spec: self.spec.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, m: PbwMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let cur = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *cur += c;
        if cur.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Partial derivative with respect to a canonical generator.
    pub fn derive(&self, g: GenId) -> SElement {
        let mut out = SElement::zero(&self.spec);
        for (m, c) in &self.terms {
            if let Some(pos) = m.factors().iter().position(|&(h, _)| h == g) {
                let e = m.factors()[pos].1;
                let mut factors = m.factors().to_vec();
                if e == 1 {
                    factors.remove(pos);
                } else {
                    factors[pos].1 = e - 1;
                }
                let word: Vec<GenId> = factors
                    .iter()
                    .flat_map(|&(h, k)| std::iter::repeat(h).take(k as usize))
                    .collect();
                out.add_term(
                    PbwMonomial::from_sorted_word(&word),
                    c.clone() * q(e as i64),
                );
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SElement {
        let mut acc = SElement::unit(&self.spec);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl PartialEq for SElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec.key() == other.spec.key() && self.terms == other.terms
    }
}
impl Eq for SElement {}

impl std::ops::Add for &SElement {
    type Output = SElement;
    fn add(self, rhs: &SElement) -> SElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &SElement {
    type Output = SElement;
    fn sub(self, rhs: &SElement) -> SElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &SElement {
    type Output = SElement;
    fn mul(self, rhs: &SElement) -> SElement {
        assert_eq!(self.spec.key(), rhs.spec.key(), "spec mismatch");
        let mut out = SElement::zero(&self.spec);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(merge_monomials(m1, m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

/// Lie--Poisson bracket on S(g): bilinear, Leibniz in each slot, equal to the
/// structure bracket on degree-1 elements.
pub fn poisson_bracket(f: &SElement, g: &SElement) -> SElement {
    assert_eq!(f.spec().key(), g.spec().key(), "spec mismatch");
    let spec = f.spec().clone();
    let mut out = SElement::zero(&spec);
    for a in 0..spec.dim() as GenId {
        let fa = f.derive(a);
        if fa.is_zero() {
            continue;
        }
        for b in 0..spec.dim() as GenId {
            let gb = g.derive(b);
            if gb.is_zero() {
                continue;
            }
            let lin = spec.bracket_gens(a, b);
            if lin.is_empty() {
                continue;
            }
            let prod = &fa * &gb;
            for (h, c) in lin {
                out = &out + &(&prod * &SElement::from_gen(&spec, *h)).scale(c);
            }
        }
    }
    out
}

/// Classical argument shift: substitute `Y -> Y + t mu(Y)` and expand in `t`,
/// returning coefficients of t^0, ..., t^d.
pub fn argument_shift(p: &SElement, mu: &ShiftMatrix) -> Vec<SElement> {
    assert_eq!(p.spec().key(), mu.spec().key(), "spec mismatch");
    let spec = p.spec().clone();
    let d = p.degree();
    let mut out = vec![SElement::zero(&spec); d + 1];
    for (m, c) in p.terms() {
        // distribute each factor (g + t mu(g))^e
        let mut parts: Vec<(PbwMonomial, Q, usize)> = vec![(PbwMonomial::unit(), c.clone(), 0)];
        for &(g, e) in m.factors() {
            let mug = mu.of_gen(g).clone();
            let mut next = Vec::new();
            for (mono, coeff, tdeg) in &parts {
                for k in 0..=e {
                    let c_binom = q(binomial(e as u64, k as u64) as i64);
                    let c_mu = pow_q(&mug, k);
                    if c_mu.is_zero() && k > 0 {
                        continue;
                    }
                    let mut word = mono.word();
                    for _ in 0..(e - k) {
                        word.push(g);
                    }
                    word.sort_unstable();
                    next.push((
                        PbwMonomial::from_sorted_word(&word),
                        coeff.clone() * c_binom * c_mu,
                        tdeg + k as usize,
                    ));
                }
            }
            parts = next;
        }
        for (mono, coeff, tdeg) in parts {
            let mut t = BTreeMap::new();
            t.insert(mono, coeff);
            out[tdeg] = &out[tdeg] + &SElement::from_terms(&spec, t);
        }
    }
    out
}

/// Classical directional derivative along mu: sum_a mu(Y_a) dP/dY_a.
/// The t-derivative of the shifted polynomial, so that the argument shift
/// components are its divided iterates.
pub fn classical_dmu(p: &SElement, mu: &ShiftMatrix) -> SElement {
    assert_eq!(p.spec().key(), mu.spec().key(), "spec mismatch");
    let spec = p.spec().clone();
    let mut out = SElement::zero(&spec);
    for a in 0..spec.dim() as GenId {
        let c = mu.of_gen(a);
        if c.is_zero() {
            continue;
        }
        out = &out + &p.derive(a).scale(c);
    }
    out
}

/// Top PBW-degree part of a quantum element, as a classical element.
pub fn symbol(u: &UElement) -> SElement {
    let spec = u.spec().clone();
    let d = u.degree();
    let mut terms = BTreeMap::new();
    for (m, c) in u.terms() {
        if m.degree() == d {
            terms.insert(m.clone(), c.clone());
        }
    }
    SElement::from_terms(&spec, terms)
}

/// Commutative N x N matrix with S(g) entries: classical generator matrix
/// and its traces, the independent oracle for the quantum Gelfand traces.
pub struct SMatrix {
    spec: Arc<AlgebraSpec>,
    data: Vec<SElement>,
}

impl SMatrix {
    pub fn generator_matrix(spec: &Arc<AlgebraSpec>) -> SMatrix {
        let n = spec.n();
        let mut data = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                data.push(SElement::entry(spec, i, j));
            }
        }
        SMatrix {
            spec: spec.clone(),
            data,
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &SElement {
        &self.data[(i - 1) * self.spec.n() + (j - 1)]
    }

    pub fn mul(&self, other: &SMatrix) -> SMatrix {
        let n = self.spec.n();
        let mut data = vec![SElement::zero(&self.spec); n * n];
        for i in 1..=n {
            for k in 1..=n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 1..=n {
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    data[(i - 1) * n + (j - 1)] = &data[(i - 1) * n + (j - 1)] + &(a * b);
                }
            }
        }
        SMatrix {
            spec: self.spec.clone(),
            data,
        }
    }

    pub fn pow(&self, e: u32) -> SMatrix {
        assert!(e >= 1);
        let mut acc = SMatrix {
            spec: self.spec.clone(),
            data: self.data.clone(),
        };
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> SElement {
        let n = self.spec.n();
        let mut out = SElement::zero(&self.spec);
        for i in 1..=n {
            out = &out + self.entry(i, i);
        }
        out
    }
}

/// Classical Gelfand trace tr E^p in S(g).
pub fn classical_trace_power(spec: &Arc<AlgebraSpec>, p: u32) -> SElement {
    SMatrix::generator_matrix(spec).pow(p).trace()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1u64;
    for i in 0..k {
        num = num * (n - i) / (i + 1);
    }
    num
}

fn pow_q(x: &Q, e: u32) -> Q {
    let mut acc = Q::one();
    for _ in 0..e {
        acc *= x.clone();
    }
    acc
}

impl fmt::Display for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let letter = self.spec.family().letter();
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mono: String = m
                .factors()
                .iter()
                .map(|&(g, e)| {
                    let (i, j) = self.spec.gen_pair(g);
                    if e > 1 {
                        format!("{letter}[{i},{j}]^{e}")
                    } else {
                        format!("{letter}[{i},{j}]")
                    }
                })
                .collect();
            if m.is_unit() {
                f.write_str(&format_q(&abs))?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", format_q(&abs), mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({} N={}: {})", self.spec.family(), self.spec.n(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Family;

    fn gl2() -> Arc<AlgebraSpec> {
        AlgebraSpec::build(Family::GlN, 2).unwrap()
    }

    #[test]
    fn poisson_degree_one_matches_bracket() {
        let s = gl2();
        // {E12, E21} = E11 - E22
        let br = poisson_bracket(&SElement::entry(&s, 1, 2), &SElement::entry(&s, 2, 1));
        let expect = &SElement::entry(&s, 1, 1) - &SElement::entry(&s, 2, 2);
        assert_eq!(br, expect);
        // antisymmetry on a sample
        let y = SElement::entry(&s, 1, 1);
        assert!(poisson_bracket(&y, &y).is_zero());
    }

    #[test]
    fn poisson_leibniz_example() {
        let s = gl2();
        // {E12^2, E21} = 2 E12 (E11 - E22)
        let f = SElement::entry(&s, 1, 2).pow(2);
        let g = SElement::entry(&s, 2, 1);
        let br = poisson_bracket(&f, &g);
        let expect = (&SElement::entry(&s, 1, 2)
            * &(&SElement::entry(&s, 1, 1) - &SElement::entry(&s, 2, 2)))
            .scale(&q(2));
        assert_eq!(br, expect);
    }

    #[test]
    fn poisson_leibniz_random() {
        let s = AlgebraSpec::build(Family::SplitO, 4).unwrap();
        let f = SElement::entry(&s, 1, 2);
        let g = SElement::entry(&s, 2, 1);
        let h = &SElement::entry(&s, 1, 1) * &SElement::entry(&s, 2, 2);
        // {f, g h} = {f,g} h + g {f,h}
        let lhs = poisson_bracket(&f, &(&g * &h));
        let rhs = &(&poisson_bracket(&f, &g) * &h) + &(&g * &poisson_bracket(&f, &h));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn argument_shift_linear_and_constant() {
        let s = gl2();
        let mu = ShiftMatrix::generic(&s); // diag(1,2)
        let y = SElement::entry(&s, 1, 1);
        let shifts = argument_shift(&y, &mu);
        assert_eq!(shifts.len(), 2);
        assert_eq!(shifts[0], y);
        assert_eq!(shifts[1], SElement::unit(&s)); // mu(E11) = 1
        let c = SElement::scalar(&s, q(5));
        let shifts = argument_shift(&c, &mu);
        assert_eq!(shifts.len(), 1);
        assert_eq!(shifts[0], c);
    }

    #[test]
    fn argument_shift_trace_square() {
        // P = tr E^2 in gl_2 with mu = diag(1,2):
        // P^(1) = 2 E11 + 4 E22, P^(2) = 5.
        let s = gl2();
        let mu = ShiftMatrix::generic(&s);
        let p = classical_trace_power(&s, 2);
        let expect_p = {
            let e11 = SElement::entry(&s, 1, 1);
            let e22 = SElement::entry(&s, 2, 2);
            let e12 = SElement::entry(&s, 1, 2);
            let e21 = SElement::entry(&s, 2, 1);
            &(&e11.pow(2) + &e22.pow(2)) + &(&e12 * &e21).scale(&q(2))
        };
        assert_eq!(p, expect_p);
        let shifts = argument_shift(&p, &mu);
        assert_eq!(shifts[0], p);
        let expect1 =
            &SElement::entry(&s, 1, 1).scale(&q(2)) + &SElement::entry(&s, 2, 2).scale(&q(4));
        assert_eq!(shifts[1], expect1);
        assert_eq!(shifts[2], SElement::scalar(&s, q(5)));
    }

    #[test]
    fn shift_reconstructs_polynomial() {
        // summing t^i P^(i) at t=1 equals substituting Y -> Y + mu(Y)
        let s = gl2();
        let mu = ShiftMatrix::generic(&s);
        let p = classical_trace_power(&s, 3);
        let shifts = argument_shift(&p, &mu);
        let mut total = SElement::zero(&s);
        for part in &shifts {
            total = &total + part;
        }
        // independent route: substitute generators directly
        let subst: Vec<SElement> = (0..s.dim() as GenId)
            .map(|g| {
                let (i, j) = s.gen_pair(g);
                &SElement::from_gen(&s, g) + &SElement::scalar(&s, mu.entry(i, j).clone())
            })
            .collect();
        let mut direct = SElement::zero(&s);
        for (m, c) in p.terms() {
            let mut acc = SElement::scalar(&s, c.clone());
            for &(g, e) in m.factors() {
                acc = &acc * &subst[g as usize].pow(e);
            }
            direct = &direct + &acc;
        }
        assert_eq!(total, direct);
    }

    #[test]
    fn classical_dmu_matches_shift_components() {
        // P^(k) = D^k P / k!
        let s = AlgebraSpec::build(Family::GlN, 3).unwrap();
        let mu = ShiftMatrix::generic(&s);
        let p = classical_trace_power(&s, 3);
        let shifts = argument_shift(&p, &mu);
        let mut dk = p.clone();
        let mut fact = 1i64;
        for (k, part) in shifts.iter().enumerate() {
            if k > 0 {
                dk = classical_dmu(&dk, &mu);
                fact *= k as i64;
            }
            assert_eq!(part, &dk.scale(&crate::scalar::qr(1, fact)));
        }
    }
}
