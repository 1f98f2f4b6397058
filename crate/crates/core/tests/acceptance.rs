//! Acceptance suite: the executable exit gate of the library.
//!
//! One test per criterion; each prints a `PASS`/`FAIL` line per component
//! (visible with `cargo test --test acceptance -- --nocapture`). Every
//! assertion is exact rational arithmetic: "pass" means exact zero, or
//! exact nonzero for the counterexample block.
//!
//! Known red: `criterion_7_pfaffian_gradient_identity_as_stated` checks the
//! matrix identity `F Pi = -Pf F * 1` in the literal form it was specified
//! in. That form misses a quantum shift and is false in U(o_4) (the
//! off-diagonal entries equal (n-1) Pi_ij); the exact identity
//! `(F - (n-1)) Pi = -Pf F * 1` and its shiftless classical shadow are
//! verified green in `criterion_7_pfaffian_gradient_identity_corrected`.

use std::sync::Arc;
use std::time::Instant;

use argshift_core::algebra::{AlgebraSpec, Family};
use argshift_core::check::{
    amu_membership, counterexample_gl, counterexample_orthogonal, identity_checks,
    pairwise_commuting, SuiteConfig,
};
use argshift_core::generators::{
    amu_generating_family, pf_shift_coeffs, pfaffian, pfaffian_gradient, phi, psi,
};
use argshift_core::linsolve::express_in_span;
use argshift_core::pbw::UElement;
use argshift_core::quasi::{d_mu, leibniz_consistency_check, DerivKind};
use argshift_core::scalar::q;
use argshift_core::shift::ShiftMatrix;
use argshift_core::sym::{
    argument_shift, classical_dmu, classical_trace_power, poisson_bracket, symbol, SElement,
};
use argshift_core::umatrix::{trace_power, UMatrix};
use num_traits::Zero;

fn spec_of(family: Family, n: usize) -> Arc<AlgebraSpec> {
    AlgebraSpec::build(family, n).unwrap()
}

fn report(line: &str, ok: bool) -> bool {
    println!("{} {}", if ok { "PASS" } else { "FAIL" }, line);
    ok
}

#[test]
fn criterion_1_well_definedness() {
    // 1000 random pairs per spec, zero quantum-Leibniz violations
    let start = Instant::now();
    let mut all = true;
    for (fam, n) in [
        (Family::GlN, 2),
        (Family::GlN, 3),
        (Family::SplitO, 4),
        (Family::SplitO, 5),
        (Family::SplitSp, 4),
    ] {
        let spec = spec_of(fam, n);
        let r = leibniz_consistency_check(&spec, 1000, 1, DerivKind::Standard);
        all &= report(
            &format!(
                "criterion-1 well-definedness {fam} N={n}: {} violations / {} trials",
                r.violations.len(),
                r.trials
            ),
            r.passed(),
        );
    }
    println!("criterion-1 runtime: {} ms", start.elapsed().as_millis());
    assert!(all);
}

#[test]
fn criterion_2_gl3_iterated_shift_membership() {
    let start = Instant::now();
    let spec = spec_of(Family::GlN, 3);
    let mu = ShiftMatrix::generic(&spec); // diag(1,2,3)
    let zs: Vec<(&str, UElement)> = vec![
        ("tr E^2", trace_power(&spec, 2)),
        ("tr E^3", trace_power(&spec, 3)),
        ("phi^(0)_3", phi(&spec, 3, 0, &mu).unwrap()),
    ];
    let mut all = true;
    for (name, z) in &zs {
        let mut cur = z.clone();
        for p in 0..=3u32 {
            if p > 0 {
                cur = d_mu(&mu, &cur);
            }
            let (ok, witness) = amu_membership(&mu, &cur).unwrap();
            all &= report(
                &format!(
                    "criterion-2 [H_i, D^{p} {name}] = [T_i, D^{p} {name}] = 0{}",
                    witness.map(|w| format!(" ({w})")).unwrap_or_default()
                ),
                ok,
            );
        }
    }
    println!("criterion-2 runtime: {} ms", start.elapsed().as_millis());
    assert!(all);
}

#[test]
fn criterion_3_single_step_membership() {
    let start = Instant::now();
    let mut all = true;
    for (fam, n) in [
        (Family::SplitO, 4),
        (Family::SplitO, 5),
        (Family::SplitSp, 4),
    ] {
        let spec = spec_of(fam, n);
        let mu = ShiftMatrix::generic(&spec);
        let mut zs: Vec<(String, UElement)> = vec![
            ("tr F^2".to_string(), trace_power(&spec, 2)),
            ("phi^(0)_2".to_string(), phi(&spec, 2, 0, &mu).unwrap()),
        ];
        if fam == Family::SplitO && n == 4 {
            zs.push(("Pf F".to_string(), pfaffian(&spec).unwrap()));
        }
        for (name, z) in &zs {
            let (ok, _) = amu_membership(&mu, &d_mu(&mu, z)).unwrap();
            all &= report(
                &format!("criterion-3 D_mu({name}) in the commutant, {fam} N={n}"),
                ok,
            );
        }
    }
    println!("criterion-3 runtime: {} ms", start.elapsed().as_millis());
    assert!(all);
}

#[test]
fn criterion_4_shift_recurrences() {
    let start = Instant::now();
    let mut all = true;

    // type A: all coefficients nonzero, gl_3, m <= 3
    let spec = spec_of(Family::GlN, 3);
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
                let image = d_mu(&mu, &base(m, k));
                let candidates: Vec<UElement> = (k + 1..=m).map(|j| base(j, k + 1)).collect();
                let coeffs = express_in_span(&image, &candidates);
                let ok = coeffs
                    .as_ref()
                    .map(|cs| cs.iter().all(|c| !c.is_zero()))
                    .unwrap_or(false);
                all &= report(
                    &format!(
                        "criterion-4 glN recurrence {}^(k)_m m={m} k={k}: all {} coefficients nonzero",
                        if use_psi { "psi" } else { "phi" },
                        m - k
                    ),
                    ok,
                );
            }
        }
    }

    // types B/C: leading coefficient exactly 2(m-k), only odd-gap terms
    for (fam, n) in [(Family::SplitO, 5), (Family::SplitSp, 4)] {
        let spec = spec_of(fam, n);
        let mu = ShiftMatrix::generic(&spec);
        for k in 0..=1usize {
            let m = 2usize;
            let image = d_mu(&mu, &phi(&spec, m, k, &mu).unwrap());
            let candidates: Vec<UElement> = (k + 1..=m)
                .map(|j| phi(&spec, j, k + 1, &mu).unwrap())
                .collect();
            let ok = match express_in_span(&image, &candidates) {
                Some(coeffs) => {
                    let lead_ok = coeffs[m - (k + 1)] == q(2 * (m as i64 - k as i64));
                    let gaps_ok = coeffs.iter().enumerate().all(|(idx, c)| {
                        let j = idx + k + 1;
                        (m - j) % 2 == 0 || c.is_zero()
                    });
                    lead_ok && gaps_ok
                }
                None => false,
            };
            all &= report(
                &format!(
                    "criterion-4 {fam} N={n} recurrence m={m} k={k}: c_1 = 2(m-k) = {}, odd gaps only",
                    2 * (m - k)
                ),
                ok,
            );
        }
    }
    println!("criterion-4 runtime: {} ms", start.elapsed().as_millis());
    assert!(all);
}

#[test]
fn criterion_5_counterexamples() {
    let start = Instant::now();
    let mut all = true;
    {
        let spec = spec_of(Family::GlN, 3);
        let mu = ShiftMatrix::generic(&spec);
        for r in counterexample_gl(&spec, &mu) {
            if let Some(w) = &r.witness {
                let w: String = w.chars().take(140).collect();
                println!("  witness[{}]: {w}", r.check);
            }
            all &= report(&format!("criterion-5 {}", r.check), r.passed());
        }
    }
    {
        let spec = spec_of(Family::SplitO, 5);
        let mu = ShiftMatrix::generic(&spec);
        for r in counterexample_orthogonal(&spec, &mu) {
            if let Some(w) = &r.witness {
                let w: String = w.chars().take(140).collect();
                println!("  witness[{}]: {w}", r.check);
            }
            all &= report(&format!("criterion-5 {}", r.check), r.passed());
        }
    }
    println!("criterion-5 runtime: {} ms", start.elapsed().as_millis());
    assert!(all);
}

#[test]
fn criterion_6_identity_suite() {
    let start = Instant::now();
    let cfg = SuiteConfig::default(); // caps N <= 5, m <= 4, powers <= 4
    let reports = identity_checks(&cfg);
    let mut all = true;
    let mut failures = 0;
    for r in &reports {
        if !r.passed() {
            failures += 1;
            all &= report(&format!("criterion-6 {}", r.check), false);
        }
    }
    all &= report(
        &format!(
            "criterion-6 identity suite: {}/{} identities exact",
            reports.len() - failures,
            reports.len()
        ),
        failures == 0,
    );
    println!("criterion-6 runtime: {} ms", start.elapsed().as_millis());
    assert!(all);
}

#[test]
fn criterion_7_pfaffian_centrality_and_shift() {
    let start = Instant::now();
    let mut all = true;
    for n in [4usize, 6] {
        let spec = spec_of(Family::CanonicalO, n);
        let pf = pfaffian(&spec).unwrap();
        let mut central = true;
        for g in 0..spec.dim() as argshift_core::algebra::GenId {
            central &= UElement::from_gen(&spec, g).commutator(&pf).is_zero();
        }
        all &= report(&format!("criterion-7 Pf F central in U(o_{n})"), central);
    }
    // D_mu pi^(0) proportional to pi^(1) with a nonzero rational factor
    let spec = spec_of(Family::CanonicalO, 4);
    let mu = ShiftMatrix::generic(&spec);
    let pis = pf_shift_coeffs(&spec, &mu).unwrap();
    let d1 = d_mu(&mu, &pis[0]);
    let factor = (!pis[1].is_zero())
        .then(|| {
            let (m, cb) = pis[1].terms().iter().next().unwrap();
            d1.terms().get(m).map(|ca| ca.clone() / cb.clone())
        })
        .flatten();
    let ok = match &factor {
        Some(c) => !c.is_zero() && d1 == pis[1].scale(c),
        None => false,
    };
    all &= report(
        &format!(
            "criterion-7 D_mu pi^(0) = c * pi^(1) with nonzero c{} (o_4)",
            factor
                .map(|c| format!(" = {}", argshift_core::scalar::format_q(&c)))
                .unwrap_or_default()
        ),
        ok,
    );
    println!(
        "criterion-7(a,c) runtime: {} ms",
        start.elapsed().as_millis()
    );
    assert!(all);
}

/// The literal form of the gradient identity from the acceptance list:
/// `F Pi = -Pf F * 1` for o_4. This is false in U(o_4): the off-diagonal
/// entries are exactly `(n-1) Pi_ij`: so this test is an intentional,
/// documented red; see the decisions ledger and the `_corrected` test below
/// for the identity that does hold.
#[test]
fn criterion_7_pfaffian_gradient_identity_as_stated() {
    let spec = spec_of(Family::CanonicalO, 4);
    let fm = UMatrix::generator_matrix(&spec);
    let pi = pfaffian_gradient(&spec).unwrap();
    let pf = pfaffian(&spec).unwrap();
    let prod = fm.mul(&pi);
    let mut ok = true;
    for i in 1..=4 {
        for j in 1..=4 {
            let expect = if i == j {
                pf.scale(&q(-1))
            } else {
                UElement::zero(&spec)
            };
            let diff = prod.entry(i, j) - &expect;
            if !diff.is_zero() {
                println!("  residual entry ({i},{j}): {diff}");
                ok = false;
            }
        }
    }
    report("criterion-7 F Pi = -Pf F * 1 as stated (o_4)", ok);
    assert!(
        ok,
        "F Pi = -Pf F * 1 fails in U(o_4): the off-diagonal entries equal (n-1) Pi_ij \
         (quantum corrections absent from the classical identity). The exact quantum \
         identity (F - (n-1)) Pi = -Pf F * 1 is verified green in \
         criterion_7_pfaffian_gradient_identity_corrected."
    );
}

#[test]
fn criterion_7_pfaffian_gradient_identity_corrected() {
    let start = Instant::now();
    let mut all = true;
    for n in [4usize, 6] {
        let spec = spec_of(Family::CanonicalO, n);
        let half = (n / 2) as i64;
        let fm = UMatrix::generator_matrix(&spec);
        let pi = pfaffian_gradient(&spec).unwrap();
        let pf = pfaffian(&spec).unwrap();
        let prod = fm
            .sub(&UMatrix::identity(&spec).scale(&q(half - 1)))
            .mul(&pi);
        let mut ok = true;
        for i in 1..=n {
            for j in 1..=n {
                let expect = if i == j {
                    pf.scale(&q(-1))
                } else {
                    UElement::zero(&spec)
                };
                ok &= (prod.entry(i, j) - &expect).is_zero();
            }
        }
        all &= report(
            &format!("criterion-7 (F - (n-1)) Pi = -Pf F * 1 exactly (o_{n})"),
            ok,
        );
        // classical shadow: no shift
        let pf_cl = symbol(&pf);
        let entry_cl = |i: usize, j: usize| -> SElement {
            match spec.resolve(i, j) {
                None => SElement::zero(&spec),
                Some((sign, g)) => pf_cl.derive(g).scale(&q(sign)),
            }
        };
        let mut ok = true;
        for i in 1..=n {
            for j in 1..=n {
                let mut acc = SElement::zero(&spec);
                for k in 1..=n {
                    acc = &acc + &(&SElement::entry(&spec, i, k) * &entry_cl(k, j));
                }
                let expect = if i == j {
                    pf_cl.scale(&q(-1))
                } else {
                    SElement::zero(&spec)
                };
                ok &= acc == expect;
            }
        }
        all &= report(
            &format!("criterion-7 classical shadow F Pi = -Pf F * 1 in S(o_{n})"),
            ok,
        );
    }
    println!(
        "criterion-7(corrected) runtime: {} ms",
        start.elapsed().as_millis()
    );
    assert!(all);
}

#[test]
fn criterion_8_family_commutativity() {
    let start = Instant::now();
    let mut all = true;
    for (fam, n) in [
        (Family::GlN, 2),
        (Family::GlN, 3),
        (Family::SplitO, 4),
        (Family::CanonicalO, 4),
        (Family::SplitO, 5),
        (Family::SplitSp, 4),
    ] {
        let spec = spec_of(fam, n);
        let mu = ShiftMatrix::generic(&spec);
        let family = amu_generating_family(&spec, &mu).unwrap();
        let members = family.members.len();
        let r = pairwise_commuting("criterion-8", &family);
        if let Some(w) = &r.witness {
            let w: String = w.chars().take(200).collect();
            println!("  witness: {w}");
        }
        all &= report(
            &format!("criterion-8 family of {members} generators pairwise commutes, {fam} N={n}"),
            r.passed(),
        );
    }
    println!("criterion-8 runtime: {} ms", start.elapsed().as_millis());
    assert!(all);
}

#[test]
fn criterion_9_classical_oracle() {
    let start = Instant::now();
    let spec = spec_of(Family::GlN, 3);
    let mu = ShiftMatrix::generic(&spec);
    let mut all = true;

    // Poisson commutativity of the argument-shift components
    let mut components: Vec<SElement> = Vec::new();
    for p in [2u32, 3] {
        components.extend(argument_shift(&classical_trace_power(&spec, p), &mu));
    }
    let mut ok = true;
    for a in 0..components.len() {
        for b in a + 1..components.len() {
            ok &= poisson_bracket(&components[a], &components[b]).is_zero();
        }
    }
    all &= report(
        &format!(
            "criterion-9 classical shift family of tr E^2, tr E^3 Poisson-commutes ({} components)",
            components.len()
        ),
        ok,
    );

    // symbols of the quantum generators are classical invariants, and the
    // symbols of their D_mu iterates are the classical shift images
    for m in 1..=3usize {
        let base = phi(&spec, m, 0, &mu).unwrap();
        let cls0 = symbol(&base);
        let mut invariant = true;
        for g in 0..spec.dim() as argshift_core::algebra::GenId {
            invariant &= poisson_bracket(&cls0, &SElement::from_gen(&spec, g)).is_zero();
        }
        all &= report(
            &format!("criterion-9 symbol(phi^(0)_{m}) is a classical invariant"),
            invariant,
        );
        let mut quantum = base.clone();
        let mut cls = cls0;
        for p in 1..m {
            quantum = d_mu(&mu, &quantum);
            cls = classical_dmu(&cls, &mu);
            all &= report(
                &format!(
                    "criterion-9 symbol(D_mu^{p} phi^(0)_{m}) = classical D^{p} of its symbol"
                ),
                symbol(&quantum) == cls,
            );
        }
    }
    println!("criterion-9 runtime: {} ms", start.elapsed().as_millis());
    assert!(all);
}
