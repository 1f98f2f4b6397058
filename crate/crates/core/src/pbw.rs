//! PBW monomials, normal forms and the enveloping-algebra arithmetic.
//!
//! Elements of U(g) are stored as finite rational-weighted sums of PBW
//! monomials: normal-ordered words in the canonical generators, with respect
//! to the fixed total order of [`crate::algebra::AlgebraSpec::gens`]. The
//! straightening engine rewrites the leftmost out-of-order adjacent pair
//! `g_a g_b -> g_b g_a + [g_a, g_b]`; each rewrite strictly decreases
//! (degree, inversion count) lexicographically, so the worklist terminates
//! and the result is independent of the input word order (confluence is
//! exercised by tests, not assumed).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgebraSpec, GenId};
use crate::scalar::{format_q, q, Q};

/// Normal-ordered monomial: strictly increasing generator ids with positive
/// exponents; the empty list is the unit monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PbwMonomial {
    factors: Vec<(GenId, u32)>,
}

impl PbwMonomial {
    pub fn unit() -> Self {
        PbwMonomial::default()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn gen(g: GenId) -> Self {
        PbwMonomial {
            factors: vec![(g, 1)],
        }
    }

    pub fn factors(&self) -> &[(GenId, u32)] {
        &self.factors
    }

    /// Total degree.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|&(_, e)| e as usize).sum()
    }

    /// The monomial as an expanded word of generator ids.
    pub fn word(&self) -> Vec<GenId> {
        let mut w = Vec::with_capacity(self.degree());
        for &(g, e) in &self.factors {
            for _ in 0..e {
                w.push(g);
            }
        }
        w
    }

    /// Build from a word that is already sorted (asserted).
    pub fn from_sorted_word(word: &[GenId]) -> Self {
        let mut factors: Vec<(GenId, u32)> = Vec::new();
        for &g in word {
            match factors.last_mut() {
                Some((h, e)) if *h == g => *e += 1,
                Some((h, _)) => {
                    assert!(*h < g, "from_sorted_word: word not sorted");
                    factors.push((g, 1));
                }
                None => factors.push((g, 1)),
            }
        }
        PbwMonomial { factors }
    }

    pub fn first_gen(&self) -> Option<GenId> {
        self.factors.first().map(|&(g, _)| g)
    }

    pub fn last_gen(&self) -> Option<GenId> {
        self.factors.last().map(|&(g, _)| g)
    }

    /// Append a generator `g >= last_gen` (asserted).
    pub fn append_gen(&self, g: GenId) -> Self {
        let mut factors = self.factors.clone();
        match factors.last_mut() {
            Some((h, e)) if *h == g => *e += 1,
            Some((h, _)) => {
                assert!(*h < g, "append_gen: order violated");
                factors.push((g, 1));
            }
            None => factors.push((g, 1)),
        }
        PbwMonomial { factors }
    }

    /// Peel one copy of the leading (smallest) generator: `m = g * rest`.
    pub fn split_leading(&self) -> Option<(GenId, PbwMonomial)> {
        let (&(g, e), _) = self.factors.split_first()?;
        let mut rest = self.factors.clone();
        if e == 1 {
            rest.remove(0);
        } else {
            rest[0].1 = e - 1;
        }
        Some((g, PbwMonomial { factors: rest }))
    }

    /// Weight of the monomial at index `i` (1-based): the eigenvalue of
    /// `ad E[i,i]` resp. `ad F[i,i]`, computed from index pairs.
    pub fn weight(&self, spec: &AlgebraSpec, i: usize) -> i64 {
        let mut w = 0i64;
        for &(g, e) in &self.factors {
            let (a, b) = spec.gen_pair(g);
            let mut d = 0i64;
            if a == i {
                d += 1;
            }
            if b == i {
                d -= 1;
            }
            if spec.family().has_form() {
                let pi = spec.prime(i);
                if a == pi {
                    d -= 1;
                }
                if b == pi {
                    d += 1;
                }
            }
            w += d * e as i64;
        }
        w
    }
}

/// Canonical term map of an element.
pub type Terms = BTreeMap<PbwMonomial, Q>;

/// `dst += c * src`, dropping zero coefficients.
pub fn add_scaled(dst: &mut Terms, src: &Terms, c: &Q) {
    if c.is_zero() {
        return;
    }
    for (m, v) in src {
        let w = c.clone() * v.clone();
        match dst.get_mut(m) {
            Some(cur) => {
                *cur += w;
                if cur.is_zero() {
                    dst.remove(m);
                }
            }
            None => {
                dst.insert(m.clone(), w);
            }
        }
    }
}

fn inversions(word: &[GenId]) -> u32 {
    let mut inv = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// PBW normal form of an arbitrary word of generator ids.
pub fn straighten(spec: &AlgebraSpec, word: &[GenId]) -> Terms {
    let mut out = Terms::new();
    // worklist keyed by (degree, inversions, word), processed max-first:
    // every rewrite strictly decreases (degree, inversions), so all
    // contributions to a key arrive before it is popped.
    let mut work: BTreeMap<(u32, u32, Vec<GenId>), Q> = BTreeMap::new();
    let push =
        |work: &mut BTreeMap<(u32, u32, Vec<GenId>), Q>, out: &mut Terms, w: Vec<GenId>, c: Q| {
            if c.is_zero() {
                return;
            }
            let inv = inversions(&w);
            if inv == 0 {
                let m = PbwMonomial::from_sorted_word(&w);
                let cur = out.entry(m.clone()).or_insert_with(Q::zero);
                *cur += c;
                if cur.is_zero() {
                    out.remove(&m);
                }
            } else {
                let key = (w.len() as u32, inv, w);
                let cur = work.entry(key.clone()).or_insert_with(Q::zero);
                *cur += c;
                if cur.is_zero() {
                    work.remove(&key);
                }
            }
        };
    push(&mut work, &mut out, word.to_vec(), q(1));
    while let Some((key, c)) = work.pop_last() {
        let w = key.2;
        if c.is_zero() {
            continue;
        }
        // leftmost adjacent descent
        let p = (0..w.len() - 1)
            .find(|&p| w[p] > w[p + 1])
            .expect("queued word must have an inversion");
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        push(&mut work, &mut out, swapped, c.clone());
        for (g, cg) in spec.bracket_gens(w[p], w[p + 1]) {
            let mut reduced = Vec::with_capacity(w.len() - 1);
            reduced.extend_from_slice(&w[..p]);
            reduced.push(*g);
            reduced.extend_from_slice(&w[p + 2..]);
            push(&mut work, &mut out, reduced, c.clone() * cg.clone());
        }
    }
    out
}

/// Cached normal form of `m * g`.
pub fn mono_times_gen(spec: &AlgebraSpec, m: &PbwMonomial, g: GenId) -> Arc<Terms> {
    if m.last_gen().map_or(true, |h| h <= g) {
        let mut t = Terms::new();
        t.insert(m.append_gen(g), q(1));
        return Arc::new(t);
    }
    if let Some(hit) = spec.caches.mono_gen.lock().unwrap().get(&(m.clone(), g)) {
        return hit.clone();
    }
    let mut word = m.word();
    word.push(g);
    let result = Arc::new(straighten(spec, &word));
    spec.caches
        .mono_gen
        .lock()
        .unwrap()
        .insert((m.clone(), g), result.clone());
    result
}

/// Cached normal form of `g * m`.
pub fn gen_times_mono(spec: &AlgebraSpec, g: GenId, m: &PbwMonomial) -> Arc<Terms> {
    if m.first_gen().map_or(true, |h| g <= h) {
        let mut word = vec![g];
        word.extend(m.word());
        let mut t = Terms::new();
        t.insert(PbwMonomial::from_sorted_word(&word), q(1));
        return Arc::new(t);
    }
    if let Some(hit) = spec.caches.gen_mono.lock().unwrap().get(&(g, m.clone())) {
        return hit.clone();
    }
    let mut word = vec![g];
    word.extend(m.word());
    let result = Arc::new(straighten(spec, &word));
    spec.caches
        .gen_mono
        .lock()
        .unwrap()
        .insert((g, m.clone()), result.clone());
    result
}

/// Element of U(g) in canonical PBW form.
#[derive(Clone)]
pub struct UElement {
    spec: Arc<AlgebraSpec>,
    terms: Terms,
}

impl UElement {
    pub fn zero(spec: &Arc<AlgebraSpec>) -> Self {
        UElement {
            spec: spec.clone(),
            terms: Terms::new(),
        }
    }

    pub fn unit(spec: &Arc<AlgebraSpec>) -> Self {
        UElement::scalar(spec, q(1))
    }

    pub fn scalar(spec: &Arc<AlgebraSpec>, c: Q) -> Self {
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(PbwMonomial::unit(), c);
        }
        UElement {
            spec: spec.clone(),
            terms,
        }
    }

    pub fn from_gen(spec: &Arc<AlgebraSpec>, g: GenId) -> Self {
        let mut terms = Terms::new();
        terms.insert(PbwMonomial::gen(g), q(1));
        UElement {
            spec: spec.clone(),
            terms,
        }
    }

    /// The matrix entry `E/F[i,j]` as an element (resolving symmetry classes;
    /// identically-zero entries give the zero element).
    pub fn entry(spec: &Arc<AlgebraSpec>, i: usize, j: usize) -> Self {
        match spec.resolve(i, j) {
            None => UElement::zero(spec),
            Some((sign, g)) => {
                let mut terms = Terms::new();
                terms.insert(PbwMonomial::gen(g), q(sign));
                UElement {
                    spec: spec.clone(),
                    terms,
                }
            }
        }
    }

    pub fn from_terms(spec: &Arc<AlgebraSpec>, terms: Terms) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        UElement {
            spec: spec.clone(),
            terms,
        }
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal total degree (0 for scalars and zero).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Q {
        self.terms
            .get(&PbwMonomial::unit())
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    fn assert_same_spec(&self, other: &UElement) {
        assert_eq!(
            self.spec.key(),
            other.spec.key(),
            "operands belong to different algebra specs"
        );
    }

    pub fn scale(&self, c: &Q) -> UElement {
        let mut terms = Terms::new();
        add_scaled(&mut terms, &self.terms, c);
        UElement {
            spec: self.spec.clone(),
            terms,
        }
    }

    pub fn commutator(&self, other: &UElement) -> UElement {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, e: u32) -> UElement {
        let mut acc = UElement::unit(&self.spec);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The algebra automorphism of U(glN) induced by `E[k,l] -> -E[l,k]`.
    /// Panics for other families.
    pub fn omega(&self) -> UElement {
        assert!(
            !self.spec.family().has_form(),
            "omega is defined on glN only"
        );
        let mut out = Terms::new();
        for (m, c) in &self.terms {
            let word: Vec<GenId> = m
                .word()
                .iter()
                .map(|&g| {
                    let (k, l) = self.spec.gen_pair(g);
                    self.spec.gen_id(l, k).unwrap()
                })
                .collect();
            let sign = if m.degree() % 2 == 0 { q(1) } else { q(-1) };
            let nf = straighten(&self.spec, &word);
            add_scaled(&mut out, &nf, &(c.clone() * sign));
        }
        UElement {
            spec: self.spec.clone(),
            terms: out,
        }
    }
}

impl PartialEq for UElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec.key() == other.spec.key() && self.terms == other.terms
    }
}
impl Eq for UElement {}

impl std::ops::Add for &UElement {
    type Output = UElement;
    fn add(self, rhs: &UElement) -> UElement {
        self.assert_same_spec(rhs);
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &rhs.terms, &q(1));
        UElement {
            spec: self.spec.clone(),
            terms,
        }
    }
}

impl std::ops::Sub for &UElement {
    type Output = UElement;
    fn sub(self, rhs: &UElement) -> UElement {
        self.assert_same_spec(rhs);
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &rhs.terms, &q(-1));
        UElement {
            spec: self.spec.clone(),
            terms,
        }
    }
}

impl std::ops::Neg for &UElement {
    type Output = UElement;
    fn neg(self) -> UElement {
        self.scale(&q(-1))
    }
}

impl std::ops::Mul for &UElement {
    type Output = UElement;
    fn mul(self, rhs: &UElement) -> UElement {
        self.assert_same_spec(rhs);
        let spec = &self.spec;
        let mut out = Terms::new();
        for (m2, c2) in &rhs.terms {
            // self * m2, folding in one generator of m2 at a time
            let mut cur = self.terms.clone();
            for g in m2.word() {
                let mut next = Terms::new();
                for (t, ct) in &cur {
                    let prod = mono_times_gen(spec, t, g);
                    add_scaled(&mut next, &prod, ct);
                }
                cur = next;
            }
            add_scaled(&mut out, &cur, c2);
        }
        UElement {
            spec: spec.clone(),
            terms: out,
        }
    }
}

/// Normal form of an arbitrary word of generator ids, as an element.
pub fn normal_form(spec: &Arc<AlgebraSpec>, word: &[GenId]) -> UElement {
    UElement::from_terms(spec, straighten(spec, word))
}

/// The Lie bracket of two canonical generators, as a degree-<=1 element.
pub fn commutator_generators(spec: &Arc<AlgebraSpec>, a: GenId, b: GenId) -> UElement {
    let mut terms = Terms::new();
    for (g, c) in spec.bracket_gens(a, b) {
        terms.insert(PbwMonomial::gen(*g), c.clone());
    }
    UElement::from_terms(spec, terms)
}

// ---- Display ----

fn mono_string(spec: &AlgebraSpec, m: &PbwMonomial) -> String {
    let letter = spec.family().letter();
    let mut s = String::new();
    for &(g, e) in m.factors() {
        let (i, j) = spec.gen_pair(g);
        s.push_str(&format!("{letter}[{i},{j}]"));
        if e > 1 {
            s.push_str(&format!("^{e}"));
        }
    }
    s
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
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
            if m.is_unit() {
                f.write_str(&format_q(&abs))?;
            } else if abs.is_one() {
                f.write_str(&mono_string(&self.spec, m))?;
            } else {
                write!(f, "{}*{}", format_q(&abs), mono_string(&self.spec, m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U({} N={}: {})", self.spec.family(), self.spec.n(), self)
    }
}
