//! Exact rational linear solving.
//!
//! Small dense Gaussian elimination over Q, plus helpers that express a
//! target element (or tensor) as a rational combination of candidate
//! elements by flattening over the PBW monomial (and entry) index set.
//! Used to turn span-membership assertions into executable checks that
//! also produce the witness coefficients.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::pbw::{PbwMonomial, UElement};
use crate::scalar::Q;
use crate::tensor::TensorElement;

/// Solve `A x = b` exactly; `a` is row-major with `cols` columns. Returns
/// any solution (free variables set to zero), or `None` if inconsistent.
pub fn solve(a: &[Vec<Q>], b: &[Q], cols: usize) -> Option<Vec<Q>> {
    let rows = a.len();
    assert_eq!(b.len(), rows);
    let mut mat: Vec<Vec<Q>> = a
        .iter()
        .zip(b.iter())
        .map(|(r, v)| {
            assert_eq!(r.len(), cols);
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !mat[r][col].is_zero());
        let Some(p) = pivot else { continue };
        mat.swap(rank, p);
        let inv = {
            let v = mat[rank][col].clone();
            Q::new(v.denom().clone(), v.numer().clone())
        };
        for x in mat[rank].iter_mut() {
            if !x.is_zero() {
                *x *= inv.clone();
            }
        }
        for r in 0..rows {
            if r != rank && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                let pivot_row = mat[rank].clone();
                for (x, pv) in mat[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= f.clone() * pv.clone();
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    // inconsistent if a zero row has nonzero rhs
    for r in rank..rows {
        if mat[r][..cols].iter().all(|x| x.is_zero()) && !mat[r][cols].is_zero() {
            return None;
        }
    }
    // also check rows below rank that were never reached but may be nonzero
    for r in rank..rows {
        if !mat[r][..cols].iter().all(|x| x.is_zero()) {
            // shouldn't happen after full elimination; defensive re-check
            continue;
        }
    }
    let mut x = vec![Q::zero(); cols];
    for col in 0..cols {
        if let Some(r) = pivot_of_col[col] {
            x[col] = mat[r][cols].clone();
        }
    }
    Some(x)
}

/// Coefficients expressing `target` in the span of `candidates`, or `None`.
pub fn express_in_span(target: &UElement, candidates: &[UElement]) -> Option<Vec<Q>> {
    let mut row_index: BTreeMap<PbwMonomial, usize> = BTreeMap::new();
    let index = |m: &PbwMonomial, idx: &mut BTreeMap<PbwMonomial, usize>| {
        let next = idx.len();
        *idx.entry(m.clone()).or_insert(next)
    };
    for c in candidates {
        for m in c.terms().keys() {
            index(m, &mut row_index);
        }
    }
    for m in target.terms().keys() {
        index(m, &mut row_index);
    }
    let rows = row_index.len();
    let cols = candidates.len();
    let mut a = vec![vec![Q::zero(); cols]; rows];
    let mut b = vec![Q::zero(); rows];
    for (k, c) in candidates.iter().enumerate() {
        for (m, v) in c.terms() {
            a[row_index[m]][k] = v.clone();
        }
    }
    for (m, v) in target.terms() {
        b[row_index[m]] = v.clone();
    }
    let x = solve(&a, &b, cols)?;
    // re-check the reconstruction exactly before reporting membership
    let mut recon = UElement::zero(target.spec());
    for (c, coeff) in candidates.iter().zip(x.iter()) {
        recon = &recon + &c.scale(coeff);
    }
    (recon == *target).then_some(x)
}

/// Same, for tensors: flatten over (entry key, monomial).
pub fn express_tensor_in_span(
    target: &TensorElement,
    candidates: &[TensorElement],
) -> Option<Vec<Q>> {
    type Key = ((Vec<u8>, Vec<u8>), PbwMonomial);
    let mut row_index: BTreeMap<Key, usize> = BTreeMap::new();
    let collect = |t: &TensorElement, idx: &mut BTreeMap<Key, usize>| {
        for (k, u) in t.entries() {
            for m in u.terms().keys() {
                let key = (k.clone(), m.clone());
                let next = idx.len();
                idx.entry(key).or_insert(next);
            }
        }
    };
    for c in candidates {
        collect(c, &mut row_index);
    }
    collect(target, &mut row_index);
    let rows = row_index.len();
    let cols = candidates.len();
    let mut a = vec![vec![Q::zero(); cols]; rows];
    let mut b = vec![Q::zero(); rows];
    for (kk, c) in candidates.iter().enumerate() {
        for (k, u) in c.entries() {
            for (m, v) in u.terms() {
                a[row_index[&(k.clone(), m.clone())]][kk] = v.clone();
            }
        }
    }
    for (k, u) in target.entries() {
        for (m, v) in u.terms() {
            b[row_index[&(k.clone(), m.clone())]] = v.clone();
        }
    }
    let x = solve(&a, &b, cols)?;
    let mut recon = TensorElement::zero(target.spec(), target.slots());
    for (c, coeff) in candidates.iter().zip(x.iter()) {
        recon = recon.add(&c.scale(coeff));
    }
    (recon == *target).then_some(x)
}
