//! Lie algebra specs: families, canonical generators, structure constants.
//!
//! A [`AlgebraSpec`] fixes one of the supported classical matrix Lie algebras
//! together with a canonical ordered generator set and the full structure
//! table `[g_a, g_b]`. Four presentations are supported:
//!
//! * `glN`: basis `E[i,j]`, all pairs `(i,j)`;
//! * `oN` (split): `F[i,j] = E[i,j] - E[j',i']` inside `glN`, `i' = N+1-i`;
//! * `spN` (split): `F[i,j] = E[i,j] - eps_i eps_j E[j',i']`, `N = 2n`;
//! * `o2n-canonical`: skew matrices, `F[i,j] = E[i,j] - E[j,i]`.
//!
//! For the split and canonical families only one representative per symmetry
//! class `{F[i,j], -F[j',i']}` is kept; identically-zero entries (orthogonal
//! `F[i,i']`) are excluded. Structure constants are obtained by expanding the
//! generators inside `glN`, taking the `glN` bracket and re-canonicalizing;
//! closure of the table is asserted during construction.
//!
//! The fixed total order on canonical generators is lexicographic on the
//! index pair `(i,j)`. This order is an implementation convention (any fixed
//! order gives a valid PBW basis); serialized elements are canonical with
//! respect to it.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{AlgebraError, Result};
use crate::pbw::{PbwMonomial, Terms};
use crate::scalar::{q, Q};
use num_traits::Zero;

/// Desk-scale cap on the matrix size N.
pub const MAX_N: usize = 6;
/// Desk-scale cap on tensor slots.
pub const MAX_SLOTS: usize = 6;

/// Supported Lie algebra families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    GlN,
    /// Orthogonal algebra in the split presentation.
    SplitO,
    /// Symplectic algebra in the split presentation.
    SplitSp,
    /// Even orthogonal algebra presented by skew-symmetric matrices.
    CanonicalO,
}

impl Family {
    /// CLI/file name of the family.
    pub fn name(&self) -> &'static str {
        match self {
            Family::GlN => "glN",
            Family::SplitO => "oN",
            Family::SplitSp => "spN",
            Family::CanonicalO => "o2n-canonical",
        }
    }

    /// Parse a family name (accepts a few aliases).
    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "glN" | "gl" => Ok(Family::GlN),
            "oN" | "o" | "oN-split" => Ok(Family::SplitO),
            "spN" | "sp" | "spN-split" => Ok(Family::SplitSp),
            "o2n-canonical" | "o-canonical" => Ok(Family::CanonicalO),
            other => Err(AlgebraError::Parse(format!(
                "unknown family `{other}` (expected glN|oN|spN|o2n-canonical)"
            ))),
        }
    }

    /// Letter used by the element grammar for this family.
    pub fn letter(&self) -> char {
        match self {
            Family::GlN => 'E',
            _ => 'F',
        }
    }

    /// Whether the family carries a bilinear form (everything except glN).
    pub fn has_form(&self) -> bool {
        !matches!(self, Family::GlN)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Identifier of a canonical generator (index into [`AlgebraSpec::gens`]).
pub type GenId = u16;

/// Linear combination of canonical generators.
pub type Lin = Vec<(GenId, Q)>;

#[derive(Default)]
pub(crate) struct Caches {
    /// normal form of (sorted monomial) * (single generator)
    pub(crate) mono_gen: Mutex<HashMap<(PbwMonomial, GenId), Arc<Terms>>>,
    /// normal form of (single generator) * (sorted monomial)
    pub(crate) gen_mono: Mutex<HashMap<(GenId, PbwMonomial), Arc<Terms>>>,
    /// quasi-derivation values on monomials, keyed by (kind, i, j, monomial)
    pub(crate) quasi: Mutex<HashMap<(u8, u8, u8, PbwMonomial), Arc<Terms>>>,
}

/// One of the supported classical Lie algebras with its canonical basis.
pub struct AlgebraSpec {
    family: Family,
    n: usize,
    /// Canonical generators as 1-based index pairs, sorted lexicographically.
    gens: Vec<(u8, u8)>,
    gen_index: HashMap<(u8, u8), GenId>,
    /// structure_table[a][b] = [g_a, g_b] as a linear combination of generators
    table: Vec<Vec<Lin>>,
    pub(crate) caches: Caches,
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraSpec({} N={})", self.family, self.n)
    }
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for AlgebraSpec {}

impl AlgebraSpec {
    /// Build the spec for `family` at matrix size `n`, including the full
    /// structure table. Rejects incompatible or over-cap dimensions.
    pub fn build(family: Family, n: usize) -> Result<Arc<AlgebraSpec>> {
        let fail = |reason: &str| {
            Err(AlgebraError::IncompatibleDimension {
                family: family.name().to_string(),
                n,
                reason: reason.to_string(),
            })
        };
        if n == 0 {
            return fail("N must be positive");
        }
        if n > MAX_N {
            return Err(AlgebraError::CapsExceeded(format!(
                "N={n} exceeds the desk-scale cap {MAX_N}"
            )));
        }
        match family {
            Family::GlN => {}
            Family::SplitO => {
                if n < 2 {
                    return fail("oN needs N >= 2");
                }
            }
            Family::SplitSp => {
                if n % 2 != 0 {
                    return fail("spN needs even N");
                }
            }
            Family::CanonicalO => {
                if n % 2 != 0 {
                    return fail("o2n-canonical needs even N");
                }
            }
        }

        let mut gens = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if is_canonical_pair(family, n, i, j) {
                    gens.push((i as u8, j as u8));
                }
            }
        }
        let gen_index: HashMap<(u8, u8), GenId> = gens
            .iter()
            .enumerate()
            .map(|(id, &p)| (p, id as GenId))
            .collect();

        let mut spec = AlgebraSpec {
            family,
            n,
            gens,
            gen_index,
            table: Vec::new(),
            caches: Caches::default(),
        };
        spec.table = spec.build_table();
        Ok(Arc::new(spec))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Matrix size N.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Identity of the spec: (family, N). Two specs with equal keys are
    /// interchangeable (construction is deterministic).
    pub fn key(&self) -> (Family, usize) {
        (self.family, self.n)
    }

    /// Number of canonical generators (= dim of the Lie algebra).
    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    /// Canonical generators as 1-based `(i,j)` pairs in the fixed total order.
    pub fn gens(&self) -> &[(u8, u8)] {
        &self.gens
    }

    /// Index pair of a generator.
    pub fn gen_pair(&self, g: GenId) -> (usize, usize) {
        let (i, j) = self.gens[g as usize];
        (i as usize, j as usize)
    }

    /// The id of the canonical generator with exact index pair `(i,j)`.
    pub fn gen_id(&self, i: usize, j: usize) -> Option<GenId> {
        self.gen_index.get(&(i as u8, j as u8)).copied()
    }

    /// `i' = N+1-i` for split presentations, `i` for the canonical one.
    pub fn prime(&self, i: usize) -> usize {
        match self.family {
            Family::GlN | Family::CanonicalO => i,
            Family::SplitO | Family::SplitSp => self.n + 1 - i,
        }
    }

    /// `eps_i`: -1 for the lower half of a split symplectic index range, else 1.
    pub fn eps(&self, i: usize) -> i64 {
        match self.family {
            Family::SplitSp => {
                if i > self.n / 2 {
                    -1
                } else {
                    1
                }
            }
            _ => 1,
        }
    }

    /// Express the matrix entry `(i,j)` of the generator matrix in the
    /// canonical basis: returns `(sign, gen)` with `E/F[i,j] = sign * g`,
    /// or `None` when the entry is identically zero.
    pub fn resolve(&self, i: usize, j: usize) -> Option<(i64, GenId)> {
        assert!(
            i >= 1 && i <= self.n && j >= 1 && j <= self.n,
            "resolve: index ({i},{j}) out of range 1..={}",
            self.n
        );
        match self.family {
            Family::GlN => Some((1, self.gen_index[&(i as u8, j as u8)])),
            Family::SplitO => {
                if j == self.prime(i) {
                    return None; // F[i,i'] = 0
                }
                let (pi, pj) = (self.prime(j), self.prime(i));
                if (i, j) <= (pi, pj) {
                    Some((1, self.gen_index[&(i as u8, j as u8)]))
                } else {
                    Some((-1, self.gen_index[&(pi as u8, pj as u8)]))
                }
            }
            Family::SplitSp => {
                let (pi, pj) = (self.prime(j), self.prime(i));
                if (i, j) <= (pi, pj) {
                    Some((1, self.gen_index[&(i as u8, j as u8)]))
                } else {
                    Some((
                        -self.eps(i) * self.eps(j),
                        self.gen_index[&(pi as u8, pj as u8)],
                    ))
                }
            }
            Family::CanonicalO => {
                if i == j {
                    None
                } else if i < j {
                    Some((1, self.gen_index[&(i as u8, j as u8)]))
                } else {
                    Some((-1, self.gen_index[&(j as u8, i as u8)]))
                }
            }
        }
    }

    /// Expansion of a canonical generator inside `glN`: list of
    /// `(row, col, coeff)` over the standard basis `E[row,col]`.
    pub fn gl_expansion(&self, g: GenId) -> Vec<(usize, usize, Q)> {
        let (i, j) = self.gen_pair(g);
        match self.family {
            Family::GlN => vec![(i, j, q(1))],
            Family::SplitO | Family::SplitSp | Family::CanonicalO => {
                let (pi, pj) = (self.prime(j), self.prime(i));
                let theta = q(self.eps(i) * self.eps(j));
                if (pi, pj) == (i, j) {
                    // self-paired: F[i,i'] = (1 - theta) E[i,i'] (symplectic: 2E)
                    vec![(i, j, q(1) - theta)]
                } else {
                    vec![(i, j, q(1)), (pi, pj, -theta)]
                }
            }
        }
    }

    /// `[g_a, g_b]` as a linear combination of canonical generators.
    pub fn bracket_gens(&self, a: GenId, b: GenId) -> &Lin {
        &self.table[a as usize][b as usize]
    }

    // Structure table construction: expand in glN, bracket there, map back.
    fn build_table(&self) -> Vec<Vec<Lin>> {
        let dim = self.dim();
        let mut table = vec![vec![Lin::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let x = self.bracket_in_gl(a as GenId, b as GenId);
                let lin = self.from_gl_coords(&x);
                // closure assertion: re-expanding the result must reproduce x
                let mut back: HashMap<(usize, usize), Q> = HashMap::new();
                for (g, c) in &lin {
                    for (r, s, e) in self.gl_expansion(*g) {
                        let entry = back.entry((r, s)).or_insert_with(Q::zero);
                        *entry += c.clone() * e;
                    }
                }
                back.retain(|_, v| !v.is_zero());
                let x_nonzero: HashMap<(usize, usize), Q> = x
                    .iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| (*k, v.clone()))
                    .collect();
                assert_eq!(
                    back, x_nonzero,
                    "structure table closure failed for generators {a},{b}"
                );
                table[a][b] = lin;
            }
        }
        table
    }

    fn bracket_in_gl(&self, a: GenId, b: GenId) -> HashMap<(usize, usize), Q> {
        let mut acc: HashMap<(usize, usize), Q> = HashMap::new();
        for (i, j, ca) in self.gl_expansion(a) {
            for (k, l, cb) in self.gl_expansion(b) {
                // [E_ij, E_kl] = d_jk E_il - d_li E_kj
                let c = ca.clone() * cb.clone();
                if j == k {
                    *acc.entry((i, l)).or_insert_with(Q::zero) += c.clone();
                }
                if l == i {
                    *acc.entry((k, j)).or_insert_with(Q::zero) -= c;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        acc
    }

    /// Map a glN coordinate vector known to lie in the algebra back to the
    /// canonical basis (split/canonical: x = (1/2) sum x_ab F_ab).
    fn from_gl_coords(&self, x: &HashMap<(usize, usize), Q>) -> Lin {
        let mut acc: HashMap<GenId, Q> = HashMap::new();
        let half = if self.family == Family::GlN {
            q(1)
        } else {
            qhalf()
        };
        for (&(i, j), c) in x {
            if c.is_zero() {
                continue;
            }
            if let Some((sign, g)) = self.resolve(i, j) {
                *acc.entry(g).or_insert_with(Q::zero) += c.clone() * q(sign) * half.clone();
            }
        }
        let mut lin: Lin = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        lin.sort_by_key(|(g, _)| *g);
        lin
    }
}

fn qhalf() -> Q {
    crate::scalar::qr(1, 2)
}

fn is_canonical_pair(family: Family, n: usize, i: usize, j: usize) -> bool {
    match family {
        Family::GlN => true,
        Family::SplitO => {
            let (pi, pj) = (n + 1 - j, n + 1 - i);
            j != n + 1 - i && (i, j) <= (pi, pj)
        }
        Family::SplitSp => {
            let (pi, pj) = (n + 1 - j, n + 1 - i);
            (i, j) <= (pi, pj)
        }
        Family::CanonicalO => i < j,
    }
}
