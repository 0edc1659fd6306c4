//! Degree-bounded generation checking: for every multidegree up to a total
//! degree bound, compare the span of all products of the candidate
//! generators against the full invariant space of the piece. Spans are
//! built degree by degree with memoized echelon bases; no Groebner or
//! SAGBI machinery is involved.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::exactalg::Scalar;
use crate::poly::Polynomial;

use super::{ActionContext, InvariantError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenerationVerdict {
    CompleteUpToBound,
    FirstFailure { multidegree: Vec<u32> },
}

#[derive(Clone, Debug)]
pub struct DegreeRow {
    pub multidegree: Vec<u32>,
    pub dim_invariants: usize,
    pub dim_span: usize,
    pub deficit: usize,
}

#[derive(Clone, Debug)]
pub struct GenerationReport {
    pub bound: u32,
    pub verdict: GenerationVerdict,
    pub rows: Vec<DegreeRow>,
}

impl GenerationReport {
    pub fn passed(&self) -> bool {
        self.verdict == GenerationVerdict::CompleteUpToBound
    }

    pub fn total_deficit(&self) -> usize {
        self.rows.iter().map(|r| r.deficit).sum()
    }
}

/// Incremental row echelon basis over a fixed coordinate list.
struct Echelon {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    /// Reduce and insert; false when the vector was already in the span.
    fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        loop {
            let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
                return false;
            };
            match self.rows.iter().find(|(p, _)| *p == pivot) {
                Some((_, row)) => {
                    let c = v[pivot].clone();
                    for (vi, ri) in v.iter_mut().zip(row) {
                        *vi = &*vi - &(&c * ri);
                    }
                }
                None => {
                    let inv = v[pivot].inv().expect("pivot is nonzero");
                    for vi in v.iter_mut() {
                        if !vi.is_zero() {
                            *vi = &*vi * &inv;
                        }
                    }
                    let at = self.rows.partition_point(|(p, _)| *p < pivot);
                    self.rows.insert(at, (pivot, v));
                    return true;
                }
            }
        }
    }
}

/// Multidegrees over `parts` summands with the given total, ascending
/// lexicographically.
fn compositions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = alloc::vec![0u32; parts];
    fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(cur, pos + 1, left - v, out);
        }
        cur[pos] = 0;
    }
    rec(&mut cur, 0, total, &mut out);
    out
}

/// For every multidegree with total degree at most `bound`, compute the
/// dimension of the subalgebra generated by `gens` in that piece and
/// compare it with the dimension of the invariant space. Every generator
/// must be multihomogeneous, nonconstant and fixed by the group.
pub fn check_generation(
    ctx: &ActionContext,
    gens: &[Polynomial],
    bound: u32,
) -> Result<GenerationReport, InvariantError> {
    let mut gen_degrees: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    for (index, g) in gens.iter().enumerate() {
        if g.is_zero() {
            return Err(InvariantError::BadGenerator { index, reason: "zero generator".into() });
        }
        let Some(d) = g.multidegree() else {
            return Err(InvariantError::BadGenerator {
                index,
                reason: format!("not multihomogeneous: {g}"),
            });
        };
        if d.iter().all(|&x| x == 0) {
            return Err(InvariantError::BadGenerator {
                index,
                reason: "constant generator".into(),
            });
        }
        if !ctx.is_invariant(g)? {
            return Err(InvariantError::BadGenerator {
                index,
                reason: format!("not fixed by the group action: {g}"),
            });
        }
        gen_degrees.push(d);
    }

    let parts = ctx.table().num_summands();
    let mut memo: BTreeMap<Vec<u32>, Vec<Polynomial>> = BTreeMap::new();
    memo.insert(
        alloc::vec![0; parts],
        alloc::vec![Polynomial::one(ctx.table(), ctx.characteristic())],
    );

    let mut rows = Vec::new();
    let mut first_failure = None;
    for total in 0..=bound {
        for d in compositions(parts, total) {
            let basis = ctx.piece_basis(&d);
            let dim_invariants = if total == 0 {
                1
            } else {
                let (_, delta) = ctx.delta_matrix_on_piece(&d)?;
                basis.len() - delta.rank()
            };
            let dim_span = if total == 0 {
                1
            } else {
                let mut ech = Echelon::new();
                'gens: for (g, gd) in gens.iter().zip(&gen_degrees) {
                    if gd.iter().zip(&d).any(|(&a, &b)| a > b) {
                        continue;
                    }
                    let sub: Vec<u32> = d.iter().zip(gd).map(|(&a, &b)| a - b).collect();
                    let lower = memo.get(&sub).expect("lower degrees already computed");
                    for f in lower {
                        let prod = g.mul(f)?;
                        ech.insert(prod.coordinates(&basis));
                        if ech.len() == dim_invariants {
                            break 'gens;
                        }
                    }
                }
                let span: Vec<Polynomial> = ech
                    .rows
                    .iter()
                    .map(|(_, v)| {
                        Polynomial::from_coordinates(
                            ctx.table(),
                            ctx.characteristic(),
                            &basis,
                            v,
                        )
                    })
                    .collect();
                let n = span.len();
                memo.insert(d.clone(), span);
                n
            };
            if dim_span > dim_invariants {
                return Err(InvariantError::Internal(format!(
                    "span exceeds the invariant space in degree {d:?}"
                )));
            }
            let deficit = dim_invariants - dim_span;
            if deficit > 0 && first_failure.is_none() {
                first_failure = Some(d.clone());
            }
            rows.push(DegreeRow { multidegree: d, dim_invariants, dim_span, deficit });
        }
    }
    let verdict = match first_failure {
        None => GenerationVerdict::CompleteUpToBound,
        Some(multidegree) => GenerationVerdict::FirstFailure { multidegree },
    };
    Ok(GenerationReport { bound, verdict, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_generator_set_fails_at_degree_one() {
        let ctx = ActionContext::new(&[2], 5).unwrap();
        let rep = check_generation(&ctx, &[], 2).unwrap();
        assert_eq!(
            rep.verdict,
            GenerationVerdict::FirstFailure { multidegree: alloc::vec![1] }
        );
    }

    #[test]
    fn x_alone_fails_for_v2_at_degree_p() {
        let ctx = ActionContext::new(&[2], 5).unwrap();
        let x = ctx.parse("x1").unwrap();
        let rep = check_generation(&ctx, &[x], 5).unwrap();
        assert_eq!(
            rep.verdict,
            GenerationVerdict::FirstFailure { multidegree: alloc::vec![5] }
        );
        // below degree p everything is generated by x alone
        for row in &rep.rows {
            if row.multidegree[0] < 5 {
                assert_eq!(row.deficit, 0, "at {:?}", row.multidegree);
            }
        }
    }

    #[test]
    fn dickson_set_for_v2_is_complete() {
        let ctx = ActionContext::new(&[2], 3).unwrap();
        let x = ctx.parse("x1").unwrap();
        let norm = ctx.norm(0).unwrap();
        let fam = super::super::transfer_family(&ctx, &[2, 0]).unwrap();
        let mut gens = alloc::vec![x, norm];
        gens.extend(fam);
        let rep = check_generation(&ctx, &gens, 6).unwrap();
        assert!(rep.passed(), "{:?}", rep.rows);
    }

    #[test]
    fn invalid_generators_are_identified() {
        let ctx = ActionContext::new(&[2], 5).unwrap();
        let y = ctx.parse("y1").unwrap();
        let err = check_generation(&ctx, &[y], 2).unwrap_err();
        assert!(matches!(err, InvariantError::BadGenerator { index: 0, .. }));
        let mixed = ctx.parse("x1 + x1^2").unwrap();
        let err = check_generation(&ctx, &[mixed], 2).unwrap_err();
        assert!(matches!(err, InvariantError::BadGenerator { index: 0, .. }));
    }

    #[test]
    fn adding_generators_never_decreases_dimensions() {
        let ctx = ActionContext::new(&[2], 3).unwrap();
        let x = ctx.parse("x1").unwrap();
        let norm = ctx.norm(0).unwrap();
        let small = check_generation(&ctx, &[x.clone()], 5).unwrap();
        let large = check_generation(&ctx, &[x, norm], 5).unwrap();
        for (a, b) in small.rows.iter().zip(&large.rows) {
            assert_eq!(a.multidegree, b.multidegree);
            assert!(a.dim_span <= b.dim_span);
        }
    }
}
