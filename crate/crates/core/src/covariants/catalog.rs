//! The classical generator tables as evaluable data: each record carries a
//! transvectant recipe over the generic forms together with the expected
//! order, slot bidegree and lead monomials of the covariant and of its
//! source in chain variables. Where the printed versions of these tables
//! disagree with recomputation the stored value is the recomputed one and
//! the divergence is kept on the record.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::invariants::{transfer_family, ActionContext};
use crate::poly::{Monomial, Polynomial, TermOrder};

use super::{
    chain_rename, roberts_source, transvectant, BinaryFormContext, Covariant, CovariantError,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableId {
    R1R3,
    R2R3,
    R3R3,
}

impl TableId {
    pub fn parse(s: &str) -> Result<Self, CovariantError> {
        match s {
            "R1R3" => Ok(TableId::R1R3),
            "R2R3" => Ok(TableId::R2R3),
            "R3R3" => Ok(TableId::R3R3),
            other => Err(CovariantError::UnknownTable(other.into())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TableId::R1R3 => "R1R3",
            TableId::R2R3 => "R2R3",
            TableId::R3R3 => "R3R3",
        }
    }
}

/// Form degrees of the two slots.
pub fn table_degrees(table: TableId) -> [usize; 2] {
    match table {
        TableId::R1R3 => [1, 3],
        TableId::R2R3 => [2, 3],
        TableId::R3R3 => [3, 3],
    }
}

/// Chain dimensions of the corresponding module sum.
pub fn table_dims(table: TableId) -> [usize; 2] {
    let [a, b] = table_degrees(table);
    [a + 1, b + 1]
}

/// Expression tree over the generic form slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Form(usize),
    Transvectant(Box<Recipe>, Box<Recipe>, usize),
    Pow(Box<Recipe>, u32),
    Mul(Box<Recipe>, Box<Recipe>),
}

impl Recipe {
    fn tr(a: Recipe, b: Recipe, r: usize) -> Recipe {
        Recipe::Transvectant(Box::new(a), Box::new(b), r)
    }

    fn pow(a: Recipe, k: u32) -> Recipe {
        Recipe::Pow(Box::new(a), k)
    }

    fn mul(a: Recipe, b: Recipe) -> Recipe {
        Recipe::Mul(Box::new(a), Box::new(b))
    }

    pub fn evaluate(&self, ctx: &BinaryFormContext) -> Result<Covariant, CovariantError> {
        match self {
            Recipe::Form(slot) => Ok(Covariant::form(ctx, *slot)),
            Recipe::Transvectant(a, b, r) => {
                transvectant(&a.evaluate(ctx)?, &b.evaluate(ctx)?, *r)
            }
            Recipe::Pow(a, k) => a.evaluate(ctx)?.pow(*k),
            Recipe::Mul(a, b) => a.evaluate(ctx)?.mul(&b.evaluate(ctx)?),
        }
    }
}

/// One catalog row. Lead monomials are stored in the text format and read
/// against the respective variable tables; `printed_notes` records where
/// the printed table deviates from the recomputed truth.
#[derive(Clone, Debug)]
pub struct GeneratorRecord {
    pub name: &'static str,
    pub recipe: Recipe,
    pub order: usize,
    pub bidegree: (u32, u32),
    pub lm_covariant: &'static str,
    pub lm_source: &'static str,
    pub printed_notes: &'static [&'static str],
}

/// Term order reproducing the tables' covariant lead-monomial column: the
/// second slot's coefficients first (highest index first within a slot),
/// then the first slot's, then x above y.
pub fn covariant_order(table: TableId, ctx: &BinaryFormContext) -> TermOrder {
    let [d1, d2] = table_degrees(table);
    let mut names: Vec<String> = Vec::new();
    for j in (0..=d2).rev() {
        names.push(format!("b{j}"));
    }
    for j in (0..=d1).rev() {
        names.push(format!("a{j}"));
    }
    names.push("x".into());
    names.push("y".into());
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    TermOrder::from_names(ctx.table(), &refs).expect("catalog variables")
}

/// Term order reproducing the tables' source lead-monomial column: whole
/// summand blocks, first summand highest, generator first within a block.
pub fn source_order(ctx: &ActionContext) -> TermOrder {
    let mut idx: Vec<usize> = Vec::with_capacity(ctx.table().len());
    for summand in 0..ctx.dims().len() {
        for depth in 0..ctx.dims()[summand] {
            idx.push(ctx.table().chain_var(summand, depth).expect("chain variable"));
        }
    }
    TermOrder::new(ctx.table(), idx)
}

fn r1r3() -> Vec<GeneratorRecord> {
    use Recipe as R;
    let l = || R::Form(0);
    let f = || R::Form(1);
    let h = || R::tr(f(), f(), 2);
    let t = || R::tr(f(), h(), 1);
    let rec = |name, recipe, order, bidegree, lm_covariant, lm_source, printed_notes| {
        GeneratorRecord { name, recipe, order, bidegree, lm_covariant, lm_source, printed_notes }
    };
    alloc::vec![
        rec("L", l(), 1, (1, 0), "a0*x", "x1", &[]),
        rec("f", f(), 3, (0, 1), "b0*x^3", "x2", &[]),
        rec("H", h(), 2, (0, 2), "b1^2*x^2", "y2^2", &[]),
        rec("T", t(), 3, (0, 3), "b1^3*x^3", "y2^3", &[]),
        rec(
            "discr",
            R::tr(h(), h(), 2),
            0,
            (0, 4),
            "b1^2*b2^2",
            "y2^2*z2^2",
            &["printed lead monomial b1^3*b3 is not the graded reverse lexicographic one; \
               recomputation gives b1^2*b2^2, matching the other table"],
        ),
        rec("(f,L)^1", R::tr(f(), l(), 1), 2, (1, 1), "a1*b0*x^2", "x1*y2", &[]),
        rec("(f,L^2)^2", R::tr(f(), R::pow(l(), 2), 2), 1, (2, 1), "a1^2*b0*x", "x1^2*z2", &[]),
        rec("(f,L^3)^3", R::tr(f(), R::pow(l(), 3), 3), 0, (3, 1), "a1^3*b0", "x1^3*w2", &[]),
        rec("(H,L)^1", R::tr(h(), l(), 1), 1, (1, 2), "a1*b1^2*x", "x1*y2*z2", &[]),
        rec("(H,L^2)^2", R::tr(h(), R::pow(l(), 2), 2), 0, (2, 2), "a1^2*b1^2", "x1^2*z2^2", &[]),
        rec("(T,L)^1", R::tr(t(), l(), 1), 2, (1, 3), "a1*b1^3*x^2", "x1*y2^2*z2", &[]),
        rec("(T,L^2)^2", R::tr(t(), R::pow(l(), 2), 2), 1, (2, 3), "a1^2*b1^3*x", "x1^2*y2*z2^2", &[]),
        rec("(T,L^3)^3", R::tr(t(), R::pow(l(), 3), 3), 0, (3, 3), "a1^3*b1^3", "x1^3*z2^3", &[]),
    ]
}

fn r2r3() -> Vec<GeneratorRecord> {
    use Recipe as R;
    let phi = || R::Form(0);
    let f = || R::Form(1);
    let h = || R::tr(f(), f(), 2);
    let t = || R::tr(f(), h(), 1);
    let rec = |name, recipe, order, bidegree, lm_covariant, lm_source, printed_notes| {
        GeneratorRecord { name, recipe, order, bidegree, lm_covariant, lm_source, printed_notes }
    };
    alloc::vec![
        rec("phi", phi(), 2, (1, 0), "a0*x^2", "x1", &[]),
        rec("f", f(), 3, (0, 1), "b0*x^3", "x2", &[]),
        rec("H", h(), 2, (0, 2), "b1^2*x^2", "y2^2", &[]),
        rec("T", t(), 3, (0, 3), "b1^3*x^3", "y2^3", &[]),
        rec("discr", R::tr(h(), h(), 2), 0, (0, 4), "b1^2*b2^2", "y2^2*z2^2", &[]),
        rec("D", R::tr(phi(), phi(), 2), 0, (2, 0), "a1^2", "y1^2", &[]),
        rec("(phi,f)^1", R::tr(phi(), f(), 1), 3, (1, 1), "a1*b0*x^3", "x1*y2", &[]),
        rec("(phi,f)^2", R::tr(phi(), f(), 2), 1, (1, 1), "a2*b0*x", "x1*z2", &[]),
        rec("(phi^2,f)^3", R::tr(R::pow(phi(), 2), f(), 3), 1, (2, 1), "a1*a2*b0*x", "x1^2*w2", &[]),
        rec("(phi^3,f^2)^6", R::tr(R::pow(phi(), 3), R::pow(f(), 2), 6), 0, (3, 2), "a2^3*b0^2", "x1^3*w2^2", &[]),
        rec("(phi,H)^1", R::tr(phi(), h(), 1), 2, (1, 2), "a1*b1^2*x^2", "x1*y2*z2", &[]),
        rec("(phi,H)^2", R::tr(phi(), h(), 2), 0, (1, 2), "a2*b1^2", "x1*z2^2", &[]),
        rec("(phi,T)^2", R::tr(phi(), t(), 2), 1, (1, 3), "a2*b1^3*x", "x1*y2*z2^2", &[]),
        rec("(phi^2,T)^3", R::tr(R::pow(phi(), 2), t(), 3), 1, (2, 3), "a1*a2*b1^3*x", "x1^2*z2^3", &[]),
        rec(
            "(phi^3,f*T)^6",
            R::tr(R::pow(phi(), 3), R::mul(f(), t()), 6),
            0,
            (3, 4),
            "a2^3*b0*b1^3",
            "x1^3*z2^3*w2",
            &[],
        ),
    ]
}

fn r3r3() -> Vec<GeneratorRecord> {
    use Recipe as R;
    let f1 = || R::Form(0);
    let f2 = || R::Form(1);
    let h20 = || R::tr(f1(), f1(), 2);
    let h11 = || R::tr(f1(), f2(), 2);
    let h02 = || R::tr(f2(), f2(), 2);
    let p = || R::tr(f2(), h20(), 2);
    let pi = || R::tr(f1(), h02(), 2);
    let rec = |name, recipe, order, bidegree, lm_covariant, lm_source, printed_notes| {
        GeneratorRecord { name, recipe, order, bidegree, lm_covariant, lm_source, printed_notes }
    };
    alloc::vec![
        rec("f1", f1(), 3, (1, 0), "a0*x^3", "x1", &[]),
        rec("f2", f2(), 3, (0, 1), "b0*x^3", "x2", &[]),
        rec("(f1,f2)^3", R::tr(f1(), f2(), 3), 0, (1, 1), "a3*b0", "x1*w2", &[]),
        rec("H20", h20(), 2, (2, 0), "a1^2*x^2", "y1^2", &[]),
        rec(
            "H11",
            h11(),
            2,
            (1, 1),
            "a2*b0*x^2",
            "x1*z2",
            &["printed bidegree (0,2) belongs to the next row; the recipe has bidegree (1,1)"],
        ),
        rec(
            "H02",
            h02(),
            2,
            (0, 2),
            "b1^2*x^2",
            "y2^2",
            &["printed bidegree (1,1) belongs to the previous row; the recipe has bidegree (0,2)"],
        ),
        rec("U12", R::tr(f1(), f2(), 1), 4, (1, 1), "a1*b0*x^4", "x1*y2", &[]),
        rec("(f1,H20)^1", R::tr(f1(), h20(), 1), 3, (3, 0), "a1^3*x^3", "y1^3", &[]),
        rec("(f2,H02)^1", R::tr(f2(), h02(), 1), 3, (0, 3), "b1^3*x^3", "y2^3", &[]),
        rec("P", p(), 1, (2, 1), "a2^2*b0*x", "y1^2*z2", &[]),
        rec("pi", pi(), 1, (1, 2), "a2*b1^2*x", "x1*z2^2", &[]),
        rec("(f1,H02)^1", R::tr(f1(), h02(), 1), 3, (1, 2), "a1*b1^2*x^3", "x1*z2*y2", &[]),
        rec("(f2,H20)^1", R::tr(f2(), h20(), 1), 3, (2, 1), "a1*a2*b0*x^3", "y1^2*y2", &[]),
        rec("(H20,H20)^2", R::tr(h20(), h20(), 2), 0, (4, 0), "a1^2*a2^2", "z1^2*y1^2", &[]),
        rec("(H02,H02)^2", R::tr(h02(), h02(), 2), 0, (0, 4), "b1^2*b2^2", "z2^2*y2^2", &[]),
        rec(
            "(H20,H02)^2",
            R::tr(h20(), h02(), 2),
            0,
            (2, 2),
            "a2^2*b1^2",
            "y1^2*z2^2",
            &["printed lead monomials a3^2*b0^2 and x1^2*w2^2 belong to (H11,H11)^2, which has \
               the same bidegree; recomputation of this recipe gives a2^2*b1^2 and y1^2*z2^2"],
        ),
        rec("(H20,H11)^2", R::tr(h20(), h11(), 2), 0, (3, 1), "a2^3*b0", "y1^3*w2", &[]),
        rec("(H02,H11)^2", R::tr(h02(), h11(), 2), 0, (1, 3), "a3*b1^3", "x1*z2^3", &[]),
        rec("(f1,P)^1", R::tr(f1(), p(), 1), 2, (3, 1), "a1*a2^2*b0*x^2", "y1^2*x1*w2", &[]),
        rec("(f2,pi)^1", R::tr(f2(), pi(), 1), 2, (1, 3), "a3*b0*b1^2*x^2", "x1*z2^2*y2", &[]),
        rec("(H20,H02)^1", R::tr(h20(), h02(), 1), 2, (2, 2), "a1*a2*b1^2*x^2", "y1^2*z2*y2", &[]),
        rec("(H20,P)^1", R::tr(h20(), p(), 1), 1, (4, 1), "a1*a2^3*b0*x", "y1^4*w2", &[]),
        rec("(H20,pi)^1", R::tr(h20(), pi(), 1), 1, (3, 2), "a1*a2^2*b1^2*x", "y1^3*z2^2", &[]),
        rec("(H02,P)^1", R::tr(h02(), p(), 1), 1, (2, 3), "a2^2*b1^3*x", "y1^2*z2^2*y2", &[]),
        rec("(H02,pi)^1", R::tr(h02(), pi(), 1), 1, (1, 4), "a3*b1^4*x", "x1*z2^3*y2", &[]),
        rec("(P,pi)^1", R::tr(p(), pi(), 1), 0, (3, 3), "a2^2*a3*b0*b1^2", "y1^2*x1*w2*z2^2", &[]),
    ]
}

/// The full recipe list of one table.
pub fn catalog(table: TableId) -> Vec<GeneratorRecord> {
    match table {
        TableId::R1R3 => r1r3(),
        TableId::R2R3 => r2r3(),
        TableId::R3R3 => r3r3(),
    }
}

/// A record together with everything computed from it.
#[derive(Clone, Debug)]
pub struct EvaluatedRecord {
    pub record: GeneratorRecord,
    pub covariant: Covariant,
    /// Source in chain variables, denominators cleared to a primitive
    /// integer polynomial with positive lead coefficient.
    pub source: Polynomial,
    /// Reduction of the source mod the requested prime.
    pub reduced: Option<Polynomial>,
}

fn expected_monomial(
    s: &str,
    table: &alloc::sync::Arc<crate::poly::VarTable>,
) -> Result<Monomial, CovariantError> {
    let poly = crate::poly::parse_polynomial(s, table, 0)
        .map_err(|e| CovariantError::Internal(format!("bad stored monomial {s}: {e}")))?;
    let mut terms = poly.terms();
    let (m, _) = terms
        .next()
        .ok_or_else(|| CovariantError::Internal(format!("stored monomial {s} is empty")))?;
    Ok(m.clone())
}

/// Evaluate a whole table: run every recipe, extract and rename sources,
/// and check each record's stored order, bidegree and lead monomials
/// against the computation. With a prime, also reduce each source and
/// verify it stays fixed by the group.
pub fn evaluated_catalog(
    table: TableId,
    prime: Option<u64>,
) -> Result<Vec<EvaluatedRecord>, CovariantError> {
    let degrees = table_degrees(table);
    let dims = table_dims(table);
    if let Some(p) = prime {
        let needed = *dims.iter().max().unwrap() as u64;
        if p < needed.max(5) {
            return Err(CovariantError::PrimeTooSmall { prime: p, needed: needed.max(5) });
        }
    }
    let form_ctx = BinaryFormContext::new(&degrees)?;
    let ctx0 = ActionContext::new(&dims, 0)?;
    let cov_ord = covariant_order(table, &form_ctx);
    let src_ord = source_order(&ctx0);
    let mut out = Vec::new();
    for record in catalog(table) {
        let covariant = record.recipe.evaluate(&form_ctx)?;
        if covariant.is_zero() {
            return Err(CovariantError::Internal(format!("{} evaluates to zero", record.name)));
        }
        if covariant.order() != record.order {
            return Err(CovariantError::Internal(format!(
                "{}: computed order {} differs from the stored {}",
                record.name,
                covariant.order(),
                record.order
            )));
        }
        let bideg = covariant.slot_degrees();
        if (bideg[0], bideg[1]) != record.bidegree {
            return Err(CovariantError::Internal(format!(
                "{}: computed bidegree {:?} differs from the stored {:?}",
                record.name, bideg, record.bidegree
            )));
        }
        let lm = covariant.poly().lead_monomial(&cov_ord)?;
        if *lm != expected_monomial(record.lm_covariant, form_ctx.table())? {
            return Err(CovariantError::Internal(format!(
                "{}: computed covariant lead monomial {} differs from the stored {}",
                record.name,
                crate::poly::format_monomial(form_ctx.table(), lm),
                record.lm_covariant
            )));
        }
        let raw_source = roberts_source(&covariant)?;
        let renamed = chain_rename(&raw_source, &form_ctx, &ctx0)?;
        let (source, _) = renamed.clear_denominators(&src_ord)?;
        let slm = source.lead_monomial(&src_ord)?;
        if *slm != expected_monomial(record.lm_source, ctx0.table())? {
            return Err(CovariantError::Internal(format!(
                "{}: computed source lead monomial {} differs from the stored {}",
                record.name,
                crate::poly::format_monomial(ctx0.table(), slm),
                record.lm_source
            )));
        }
        let reduced = match prime {
            None => None,
            Some(p) => {
                let ctx_p = ActionContext::new(&dims, p)?;
                let red = source.reduce_mod_p(p)?;
                if red.is_zero() {
                    return Err(CovariantError::Internal(format!(
                        "{}: primitive source reduces to zero mod {p}",
                        record.name
                    )));
                }
                if !ctx_p.is_invariant(&red)? {
                    return Err(CovariantError::Internal(format!(
                        "{}: reduced source is not invariant mod {p}",
                        record.name
                    )));
                }
                Some(red)
            }
        };
        out.push(EvaluatedRecord { record, covariant, source, reduced });
    }
    Ok(out)
}

/// The integral invariants of one table at a prime: evaluated sources,
/// renamed, made primitive and reduced.
pub fn integral_invariants(table: TableId, p: u64) -> Result<Vec<Polynomial>, CovariantError> {
    Ok(evaluated_catalog(table, Some(p))?
        .into_iter()
        .map(|r| r.reduced.expect("reduction requested"))
        .collect())
}

/// The complete generation candidate set of one table at a prime: the
/// integral invariants, the norms of both summand generators, and the
/// transfer family over the table's exponent box.
pub fn generator_set(
    table: TableId,
    p: u64,
) -> Result<(ActionContext, Vec<Polynomial>), CovariantError> {
    let dims = table_dims(table);
    let ctx = ActionContext::new(&dims, p)?;
    let mut gens = integral_invariants(table, p)?;
    for summand in 0..dims.len() {
        gens.push(ctx.norm(summand)?);
    }
    let pb = p as u32;
    // Inclusive exponent bounds per chain variable (generator first within
    // each summand), following the published transfer boxes.
    let sum_bounds: Vec<Vec<u32>> = match table {
        TableId::R1R3 => alloc::vec![
            alloc::vec![pb - 1, 0],
            alloc::vec![pb - 1, pb - 2, 1, 0],
        ],
        TableId::R2R3 => alloc::vec![
            alloc::vec![pb - 1, 2, 0],
            alloc::vec![pb - 1, pb - 2, 1, 0],
        ],
        TableId::R3R3 => alloc::vec![
            alloc::vec![pb - 1, pb - 2, 1, 0],
            alloc::vec![pb - 1, pb - 2, 1, 0],
        ],
    };
    let mut bounds = alloc::vec![0u32; ctx.table().len()];
    for (summand, bs) in sum_bounds.iter().enumerate() {
        for (depth, &b) in bs.iter().enumerate() {
            let idx = ctx.table().chain_var(summand, depth).expect("chain variable");
            bounds[idx] = b;
        }
    }
    gens.extend(transfer_family(&ctx, &bounds)?);
    Ok((ctx, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_row_counts() {
        assert_eq!(catalog(TableId::R1R3).len(), 13);
        assert_eq!(catalog(TableId::R2R3).len(), 15);
        assert_eq!(catalog(TableId::R3R3).len(), 26);
    }

    #[test]
    fn table_parsing() {
        assert_eq!(TableId::parse("R1R3").unwrap(), TableId::R1R3);
        assert!(TableId::parse("R9R9").is_err());
    }

    #[test]
    fn r1r3_evaluates_and_checks() {
        let rows = evaluated_catalog(TableId::R1R3, Some(7)).unwrap();
        assert_eq!(rows.len(), 13);
        let by_name = |n: &str| rows.iter().find(|r| r.record.name == n).unwrap();
        // (f,L^3)^3 reduces to an invariant with lead monomial x1^3*w2
        let row = by_name("(f,L^3)^3");
        let ctx0 = ActionContext::new(&[2, 4], 0).unwrap();
        let ord = source_order(&ctx0);
        let lm = row.source.lead_monomial(&ord).unwrap();
        assert_eq!(crate::poly::format_monomial(ctx0.table(), lm), "x1^3*w2");
    }

    #[test]
    fn prime_bound_is_enforced() {
        assert!(matches!(
            evaluated_catalog(TableId::R1R3, Some(3)),
            Err(CovariantError::PrimeTooSmall { .. })
        ));
    }
}

#[cfg(test)]
mod full_table_tests {
    use super::*;

    #[test]
    fn r2r3_evaluates_and_checks() {
        let rows = evaluated_catalog(TableId::R2R3, Some(5)).unwrap();
        assert_eq!(rows.len(), 15);
        let rows7 = evaluated_catalog(TableId::R2R3, Some(7)).unwrap();
        assert_eq!(rows7.len(), 15);
    }

    #[test]
    fn r3r3_evaluates_and_checks() {
        let rows = evaluated_catalog(TableId::R3R3, Some(7)).unwrap();
        assert_eq!(rows.len(), 26);
    }
}
