//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (run with `cargo test --test acceptance -- --nocapture`
//! to see the lines for passing criteria too).

use cpcov_core::covariants::{
    evaluated_catalog, generator_set, polarize, sl2_check, TableId,
};
use cpcov_core::cpmodules::{
    decompose, decomposition_witness, hilbert_function, integral_witnesses, modular_lengths,
    pascal_det, ModuleElement, ModuleSpec,
};
use cpcov_core::exactalg::Scalar;
use cpcov_core::invariants::{
    check_generation, periodicity_check, transfer_family, verify_main_theorem, ActionContext,
    GenerationVerdict,
};
use cpcov_core::poly::{format_monomial, parse_polynomial, Polynomial, TermOrder};
use cpcov_core::reprring::{
    chebyshev_expand, class, evaluate_at_v2, kernel_poly, product_m, product_v, RepElement,
    RingTag, SignedRep,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn pass(n: u32, what: &str) {
    println!("acceptance {n:02} ({what}): PASS");
}

/// Criterion 1: the worked-example chains in the 3x4 product, term for
/// term, after rescaling each generator to its primitive integer form.
#[test]
fn acceptance_01_worked_example_chains() {
    let spec = ModuleSpec::new(&[3, 4], 0).unwrap();
    let parse = |s: &str| ModuleElement::parse(spec.clone(), s).unwrap();
    let chains: [&[&str]; 3] = [
        &[
            "1",
            "s + t + s*t",
            "s^2 + 2*s*t + t^2 + 2*s^2*t + 2*s*t^2 + s^2*t^2",
            "3*s^2*t + 3*s*t^2 + t^3 + 6*s^2*t^2 + 3*s*t^3 + 3*s^2*t^3",
            "6*s^2*t^2 + 4*s*t^3 + 12*s^2*t^3",
            "10*s^2*t^3",
            "0",
        ],
        &[
            "3*s - 2*t",
            "3*s^2 + s*t - 2*t^2 + 3*s^2*t - 2*s*t^2",
            // The printed version of this line has two sign typos (+2t^3 and
            // +2s^2t^3); the values below are forced by the displayed third
            // power 3s^2t^2 - 3st^3 - 3s^2t^3.
            "4*s^2*t - s*t^2 - 2*t^3 + 2*s^2*t^2 - 4*s*t^3 - 2*s^2*t^3",
            "3*s^2*t^2 - 3*s*t^3 - 3*s^2*t^3",
            "0",
        ],
        &[
            "3*s^2 - 2*s*t + t^2 + 2*t^3",
            "s^2*t - s*t^2 + t^3 - 2*s^2*t^2 + 3*s*t^3",
            "0",
        ],
    ];
    let witnesses = integral_witnesses(3, 4).unwrap();
    for (r, chain) in chains.iter().enumerate() {
        let mut cur = witnesses[r].alpha_primitive.clone();
        for (j, expected) in chain.iter().enumerate() {
            assert_eq!(cur, parse(expected), "Delta^{j} of generator {r}");
            cur = cur.delta();
        }
    }
    // and the normalized generators carry the stated scales
    assert_eq!(witnesses[0].alpha, parse("1/10"));
    assert_eq!(witnesses[0].scale, BigInt::from(10));
    assert_eq!(witnesses[1].scale, BigInt::from(3));
    assert_eq!(witnesses[2].scale, BigInt::from(1));
    pass(1, "worked-example chains");
}

/// Criterion 2: socle lengths (6,4,2) rationally and at p = 7, (5,5,2) at
/// p = 5.
#[test]
fn acceptance_02_lengths() {
    let bundle = decomposition_witness(3, 4, None).unwrap();
    assert_eq!(bundle.omega_lengths, vec![6, 4, 2]);
    assert_eq!(modular_lengths(3, 4, 7).unwrap(), vec![6, 4, 2]);
    assert_eq!(modular_lengths(3, 4, 5).unwrap(), vec![5, 5, 2]);
    pass(2, "witness lengths");
}

/// Criterion 3: the two-branch product formula equals the rank-counting
/// oracle for every 1 <= m <= n <= p, p in {3, 5, 7, 11}.
#[test]
fn acceptance_03_product_formula_vs_rank_oracle() {
    for p in [3u64, 5, 7, 11] {
        for m in 1..=p as usize {
            for n in m..=p as usize {
                let spec = ModuleSpec::new(&[m, n], p).unwrap();
                let oracle = decompose(&spec).unwrap();
                let formula =
                    product_v(&class(RingTag::V(p), m), &class(RingTag::V(p), n)).unwrap();
                assert_eq!(formula, oracle, "m={m} n={n} p={p}");
            }
        }
    }
    pass(3, "two-branch product vs rank oracle");
}

/// Criterion 4: Chebyshev identities in the M ring for d <= 10 and the
/// vanishing of the kernel polynomial at the generator for p in {3, 5, 7}.
#[test]
fn acceptance_04_chebyshev_identities() {
    for d in 1..=10usize {
        let poly = chebyshev_expand(d, RingTag::M).unwrap();
        let mut powers: Vec<RepElement> = vec![class(RingTag::M, 1)];
        for k in 1..=poly.total_degree() as usize {
            powers.push(product_m(&powers[k - 1], &class(RingTag::M, 2)).unwrap());
        }
        let mut acc = SignedRep::zero(RingTag::M);
        for (mono, c) in poly.terms() {
            let coeff = i64::try_from(c.as_bigint().unwrap()).unwrap();
            acc = acc
                .add(&SignedRep::from_effective(&powers[mono.exponent(0) as usize]).scale(coeff))
                .unwrap();
        }
        assert_eq!(acc.try_effective().unwrap(), class(RingTag::M, d), "dimension {d}");
    }
    for p in [3u64, 5, 7] {
        let q = kernel_poly(p).unwrap();
        assert_eq!(q.total_degree() as u64, p);
        assert!(evaluate_at_v2(&q, p).unwrap().is_zero(), "q does not vanish at p = {p}");
    }
    pass(4, "Chebyshev identities and kernel polynomial");
}

/// Criterion 5: the closed-form Hilbert function equals direct monomial
/// counting for all m, n <= 8 and every degree.
#[test]
fn acceptance_05_hilbert_function() {
    for m in 1..=8usize {
        for n in 1..=8usize {
            for j in 0..=(m + n) {
                let mut count = 0usize;
                for a in 0..m {
                    for b in 0..n {
                        if a + b == j {
                            count += 1;
                        }
                    }
                }
                assert_eq!(hilbert_function(m, n, j), count, "m={m} n={n} j={j}");
            }
        }
    }
    pass(5, "Hilbert function closed form");
}

/// Criterion 6: the binomial determinant matches the closed product
/// formula for all m <= n <= 7, and is nonzero mod p exactly when
/// m + n - r - 2 < p throughout the hypothesis range n <= p. Outside that
/// range the equivalence provably fails and the counterexamples are
/// reported as a finding rather than asserted either way.
#[test]
fn acceptance_06_pascal_determinants() {
    let mut out_of_scope_failures: Vec<(usize, usize, usize, u64)> = Vec::new();
    for m in 1..=7usize {
        for n in m..=7 {
            for r in 0..m {
                let det = pascal_det(m, n, r).unwrap();
                let expect = srinivasan_product(m, n, r);
                assert!(expect.is_integer(), "closed formula must be integral");
                assert_eq!(det, expect.to_integer(), "m={m} n={n} r={r}");
                assert!(!det.is_zero());
                for p in [3u64, 5, 7] {
                    let vanishes = (&det % BigInt::from(p)).is_zero();
                    let should_vanish = (m + n - r - 2) as u64 >= p;
                    if n as u64 <= p {
                        assert_eq!(
                            vanishes, should_vanish,
                            "m={m} n={n} r={r} p={p} det={det}"
                        );
                    } else if vanishes != should_vanish {
                        out_of_scope_failures.push((m, n, r, p));
                    }
                }
            }
        }
    }
    // The equivalence is a statement about chains of dimension at most p;
    // beyond that it is false, e.g. m=n=4, r=0, p=3 gives det = 20, not
    // divisible by 3 although m+n-r-2 = 6 >= 3.
    assert!(
        out_of_scope_failures.contains(&(4, 4, 0, 3)),
        "expected the documented counterexample outside n <= p"
    );
    println!(
        "acceptance 06 finding: the divisibility equivalence fails at {} triples with n > p \
         (first: {:?}); it is asserted on its hypothesis range n <= p",
        out_of_scope_failures.len(),
        out_of_scope_failures.first().unwrap()
    );
    pass(6, "binomial determinant criterion");
}

/// Independent oracle for criterion 6: the closed product formula
/// 1! 2! ... r! / ((m-r)^r (m-r+1)^{r-1} ... (m-1)^1)
///   * prod_{c=0}^{r} binom(m+n-2r-2+c, m-r-1).
fn srinivasan_product(m: usize, n: usize, r: usize) -> BigRational {
    let mut acc = BigRational::one();
    for i in 1..=r {
        acc *= BigRational::from_integer(factorial(i));
    }
    for (e, base) in (1..=r).rev().zip(m - r..m) {
        // base runs m-r .. m-1 with exponents r .. 1
        acc /= BigRational::from_integer(BigInt::from(base).pow(e as u32));
    }
    for c in 0..=r {
        acc *= BigRational::from_integer(binom_big(m + n - 2 * r - 2 + c, m - r - 1));
    }
    acc
}

fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

fn binom_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Criterion 7: all 13 + 15 + 26 catalog recipes evaluate to nonzero
/// covariants passing the invariance check; orders, bidegrees and both lead
/// monomial columns match the stored (recomputed) values at p = 5 and 7;
/// divergences of the printed tables are reported as findings.
#[test]
fn acceptance_07_generator_tables() {
    let mut findings = 0;
    for (table, rows_expected) in
        [(TableId::R1R3, 13), (TableId::R2R3, 15), (TableId::R3R3, 26)]
    {
        for p in [5u64, 7] {
            // evaluated_catalog itself checks order, bidegree and both lead
            // monomials, and the invariance of every reduced source.
            let rows = evaluated_catalog(table, Some(p)).unwrap();
            assert_eq!(rows.len(), rows_expected);
            if p == 5 {
                for row in &rows {
                    assert!(!row.covariant.is_zero(), "{}", row.record.name);
                    assert!(
                        sl2_check(&row.covariant).unwrap(),
                        "{} fails the invariance check",
                        row.record.name
                    );
                    for note in row.record.printed_notes {
                        findings += 1;
                        println!(
                            "acceptance 07 finding [{} / {}]: {}",
                            table.name(),
                            row.record.name,
                            note
                        );
                    }
                }
            }
        }
    }
    assert_eq!(findings, 4, "expected the four documented print divergences");
    pass(7, "generator tables");
}

/// Criterion 8: the norm of the 2-chain generator is the classical
/// p-polynomial, and the transfer of the top power of the 4-chain generator
/// leads with the next chain variable.
#[test]
fn acceptance_08_dickson_norm_and_transfer_lead() {
    for p in [3u64, 5, 7] {
        let ctx = ActionContext::new(&[2], p).unwrap();
        let norm = ctx.norm(0).unwrap();
        let expect = ctx.parse(&format!("y1^{p} - x1^{}*y1", p - 1)).unwrap();
        assert_eq!(norm, expect, "p = {p}");
    }
    for p in [5u64, 7] {
        let ctx = ActionContext::new(&[4], p).unwrap();
        let tr = ctx.transfer(&ctx.parse("w1").unwrap().pow((p - 1) as u32).unwrap()).unwrap();
        let lm = tr.lead_monomial(ctx.order()).unwrap();
        assert_eq!(format_monomial(ctx.table(), lm), format!("z1^{}", p - 1), "p = {p}");
    }
    pass(8, "Dickson norm and transfer lead term");
}

/// Criterion 9: integral invariants plus transfers span the full invariant
/// space in every multidegree with all entries at most p-1 = 4 (total
/// degree at most 8) for the four stated modules at p = 5.
#[test]
fn acceptance_09_main_theorem() {
    let p = 5u64;
    for dims in [vec![2usize, 4], vec![3, 4], vec![2, 2], vec![3, 3]] {
        let ctx = ActionContext::new(&dims, p).unwrap();
        for d1 in 0..=4u32 {
            for d2 in 0..=4u32 {
                let report = verify_main_theorem(&ctx, &[d1, d2]).unwrap();
                assert!(
                    report.pass,
                    "dims {dims:?} degree ({d1},{d2}): invariants {} joint span {}",
                    report.dim_invariants, report.dim_joint_span
                );
            }
        }
    }
    pass(9, "integral plus transfer spanning");
}

/// Criterion 10: the published generator sets pass the generation check up
/// to total degree 8 at p = 5, and the crippled singleton fails at degree 5.
#[test]
fn acceptance_10_generation() {
    let p = 5u64;
    // 2-chain plus 4-chain: catalog invariants + norms + transfer box.
    let (ctx, gens) = generator_set(TableId::R1R3, p).unwrap();
    let report = check_generation(&ctx, &gens, 8).unwrap();
    assert!(
        report.passed(),
        "generator set for the (2,4) module has deficits: {:?}",
        report
            .rows
            .iter()
            .filter(|r| r.deficit > 0)
            .map(|r| (&r.multidegree, r.deficit))
            .collect::<Vec<_>>()
    );
    // two 2-chains: socle variables, determinant, norms, transfer box.
    let ctx2 = ActionContext::new(&[2, 2], p).unwrap();
    let mut gens2 = cpcov_core::covariants::quadratic_determinants(&ctx2).unwrap();
    gens2.push(ctx2.norm(0).unwrap());
    gens2.push(ctx2.norm(1).unwrap());
    let mut bounds = vec![0u32; ctx2.table().len()];
    for summand in 0..2 {
        let idx = ctx2.table().chain_var(summand, 0).unwrap();
        bounds[idx] = (p - 1) as u32;
    }
    gens2.extend(transfer_family(&ctx2, &bounds).unwrap());
    let report2 = check_generation(&ctx2, &gens2, 8).unwrap();
    assert!(report2.passed(), "vector invariants of two 2-chains have deficits");
    // deliberately crippled set
    let ctx1 = ActionContext::new(&[2], p).unwrap();
    let crippled = check_generation(&ctx1, &[ctx1.parse("x1").unwrap()], 5).unwrap();
    assert_eq!(
        crippled.verdict,
        GenerationVerdict::FirstFailure { multidegree: vec![5] }
    );
    pass(10, "generation verification");
}

/// Criterion 11: shifting one degree by p only adds free blocks, for the
/// 2-chain at p in {3, 5} and the 4-chain at p = 5, for all base degrees up
/// to 2p. The 4-chain at p = 3 falls outside the scope constraint n <= p
/// (the group element has order 9 there) and is excluded.
#[test]
fn acceptance_11_periodicity() {
    for (n, p) in [(2usize, 3u64), (2, 5), (4, 5)] {
        let ctx = ActionContext::new(&[n], p).unwrap();
        for d in 0..=(2 * p as u32) {
            let report = periodicity_check(&ctx, &[d], 0).unwrap();
            assert!(report.pass, "chain {n} p {p} degree {d}: {report:?}");
        }
    }
    println!(
        "acceptance 11 note: the 4-chain at p = 3 violates the scope constraint \
         (dimension above p) and is excluded"
    );
    pass(11, "periodicity");
}

/// Criterion 12: polarization doubles the polarized diagonal quadratic, and
/// commutes with reduction mod 7 on all 26 catalog sources pushed into a
/// third copy.
#[test]
fn acceptance_12_polarization() {
    let ctx = ActionContext::new(&[3, 3], 0).unwrap();
    let d11 = ctx.parse("2*y1^2 - 4*z1*x1 - 2*x1*y1").unwrap();
    let d12 = ctx.parse("2*y1*y2 - 2*z1*x2 - 2*x1*z2 - x1*y2 - y1*x2").unwrap();
    assert_eq!(
        polarize(&d11, 0, 1, &ctx).unwrap(),
        d12.scalar_mul(&Scalar::from_int(2)).unwrap()
    );

    let p = 7u64;
    let big0 = ActionContext::new(&[4, 4, 4], 0).unwrap();
    let bigp = ActionContext::new(&[4, 4, 4], p).unwrap();
    let sources: Vec<Polynomial> = evaluated_catalog(TableId::R3R3, None)
        .unwrap()
        .into_iter()
        .map(|r| r.source)
        .collect();
    assert_eq!(sources.len(), 26);
    for src in &sources {
        let wide = embed(src, &big0);
        let wide_red = embed(&src.reduce_mod_p(p).unwrap(), &bigp);
        for to in [1usize, 2] {
            let polarized_then_reduced =
                polarize(&wide, 0, to, &big0).unwrap().reduce_mod_p(p).unwrap();
            let reduced_then_polarized = polarize(&wide_red, 0, to, &bigp).unwrap();
            assert_eq!(polarized_then_reduced, reduced_then_polarized);
        }
    }
    pass(12, "polarization");
}

/// Reinterpret a polynomial over a context with more summands of the same
/// shape: variables map by name.
fn embed(f: &Polynomial, to: &ActionContext) -> Polynomial {
    let ord = TermOrder::index(f.table());
    let text = cpcov_core::poly::format_polynomial(f, &ord);
    parse_polynomial(&text, to.table(), f.characteristic()).unwrap()
}
