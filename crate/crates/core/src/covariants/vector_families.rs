//! Generator families for vector invariants of many equal chains: the
//! quadratic determinants for sums of 2-chains, the three families for sums
//! of 3-chains, and the polarization operator that produces multi-copy
//! generators from few-copy ones.

use alloc::format;
use alloc::vec::Vec;

use crate::invariants::ActionContext;
use crate::poly::Polynomial;

use super::CovariantError;

fn chain_var(
    ctx: &ActionContext,
    summand: usize,
    depth: usize,
) -> Polynomial {
    let idx = ctx.table().chain_var(summand, depth).expect("chain variable");
    Polynomial::var(ctx.table(), idx, ctx.characteristic())
}

fn require_uniform(ctx: &ActionContext, dim: usize) -> Result<usize, CovariantError> {
    if ctx.dims().iter().any(|&n| n != dim) {
        return Err(CovariantError::DimensionMismatch(format!(
            "context must be a sum of {dim}-chains, got {:?}",
            ctx.dims()
        )));
    }
    Ok(ctx.dims().len())
}

/// Sources of the first fundamental theorem for m copies of the 2-chain:
/// x_j for every copy and u_{i,j} = x_i y_j - x_j y_i for i < j.
pub fn quadratic_determinants(ctx: &ActionContext) -> Result<Vec<Polynomial>, CovariantError> {
    let m = require_uniform(ctx, 2)?;
    let mut out = Vec::new();
    for j in 0..m {
        out.push(chain_var(ctx, j, 1));
    }
    for i in 0..m {
        for j in i + 1..m {
            let (xi, yi) = (chain_var(ctx, i, 1), chain_var(ctx, i, 0));
            let (xj, yj) = (chain_var(ctx, j, 1), chain_var(ctx, j, 0));
            out.push(xi.mul(&yj)?.sub(&xj.mul(&yi)?)?);
        }
    }
    Ok(out)
}

/// Generators for m copies of the 3-chain: the socle variables x_i, the
/// quadratic determinants u_{i,j}, the quadratics
/// d_{i,j} = 2 y_i y_j - 2 z_i x_j - 2 x_i z_j - x_i y_j - y_i x_j (i <= j)
/// and the 3x3 determinants det_{i,j,k}.
pub fn mv3_generators(ctx: &ActionContext) -> Result<Vec<Polynomial>, CovariantError> {
    let m = require_uniform(ctx, 3)?;
    let x = |i: usize| chain_var(ctx, i, 2);
    let y = |i: usize| chain_var(ctx, i, 1);
    let z = |i: usize| chain_var(ctx, i, 0);
    let mut out = Vec::new();
    for i in 0..m {
        out.push(x(i));
    }
    for i in 0..m {
        for j in i + 1..m {
            out.push(x(i).mul(&y(j))?.sub(&x(j).mul(&y(i))?)?);
        }
    }
    let two = crate::exactalg::Scalar::from_int(2);
    let two = if ctx.characteristic() == 0 {
        two
    } else {
        two.reduce_mod(ctx.characteristic()).expect("integer reduces")
    };
    for i in 0..m {
        for j in i..m {
            let quad = y(i)
                .mul(&y(j))?
                .sub(&z(i).mul(&x(j))?)?
                .sub(&x(i).mul(&z(j))?)?
                .scalar_mul(&two)?
                .sub(&x(i).mul(&y(j))?)?
                .sub(&y(i).mul(&x(j))?)?;
            out.push(quad);
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                // 3x3 determinant of the columns (x, y, z) of copies i, j, k.
                let det = x(i)
                    .mul(&y(j))?
                    .mul(&z(k))?
                    .sub(&x(i).mul(&z(j))?.mul(&y(k))?)?
                    .add(&z(i).mul(&x(j))?.mul(&y(k))?)?
                    .sub(&y(i).mul(&x(j))?.mul(&z(k))?)?
                    .add(&y(i).mul(&z(j))?.mul(&x(k))?)?
                    .sub(&z(i).mul(&y(j))?.mul(&x(k))?)?;
                out.push(det);
            }
        }
    }
    Ok(out)
}

/// Polarization from one summand into another of the same dimension: the
/// derivation sum_k z_{to,k} d/dz_{from,k}. Lowers the degree in the source
/// copy by one and raises the target copy by one; commutes with the group
/// action and with reduction mod p (which requires p above the source
/// degree).
pub fn polarize(
    f: &Polynomial,
    from: usize,
    to: usize,
    ctx: &ActionContext,
) -> Result<Polynomial, CovariantError> {
    let dims = ctx.dims();
    if from >= dims.len() || to >= dims.len() || dims[from] != dims[to] {
        return Err(CovariantError::DimensionMismatch(format!(
            "summands {from} and {to} must exist and have equal dimension"
        )));
    }
    let p = ctx.characteristic();
    if p != 0 {
        let deg_from = f
            .multidegree()
            .map(|d| d[from] as u64)
            .unwrap_or_else(|| f.total_degree() as u64);
        if p <= deg_from {
            return Err(CovariantError::PrimeTooSmall { prime: p, needed: deg_from + 1 });
        }
    }
    let mut out = Polynomial::zero(ctx.table(), p);
    for depth in 0..dims[from] {
        let src = ctx.table().chain_var(from, depth).expect("chain variable");
        let dst = chain_var(ctx, to, depth);
        out = out.add(&f.derivative(src).mul(&dst)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_determinant_families() {
        let ctx = ActionContext::new(&[2, 2], 0).unwrap();
        let gens = quadratic_determinants(&ctx).unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(gens[2], ctx.parse("x1*y2 - x2*y1").unwrap());
        let ctx1 = ActionContext::new(&[2], 0).unwrap();
        assert_eq!(quadratic_determinants(&ctx1).unwrap().len(), 1);
        // u_{1,2} is killed by Delta over any prime
        for p in [3u64, 5, 7] {
            let ctxp = ActionContext::new(&[2, 2], p).unwrap();
            let u = ctxp.parse("x1*y2 - x2*y1").unwrap();
            assert!(ctxp.delta(&u).unwrap().is_zero());
        }
    }

    #[test]
    fn mv3_families() {
        let ctx = ActionContext::new(&[3, 3], 0).unwrap();
        let gens = mv3_generators(&ctx).unwrap();
        // 2 socle variables, 1 determinant u, 3 quadratics d, no triples
        assert_eq!(gens.len(), 2 + 1 + 3);
        let d11 = ctx.parse("2*y1^2 - 4*z1*x1 - 2*x1*y1").unwrap();
        assert!(gens.contains(&d11));
        let ctx3 = ActionContext::new(&[3, 3, 3], 0).unwrap();
        let gens3 = mv3_generators(&ctx3).unwrap();
        assert_eq!(gens3.len(), 3 + 3 + 6 + 1);
        let det = ctx3
            .parse("x1*y2*z3 - x1*z2*y3 + z1*x2*y3 - y1*x2*z3 + y1*z2*x3 - z1*y2*x3")
            .unwrap();
        assert!(gens3.contains(&det));
        // every family member is invariant mod 7
        let ctxp = ActionContext::new(&[3, 3, 3], 7).unwrap();
        for g in &gens3 {
            let red = g.reduce_mod_p(7).unwrap();
            assert!(ctxp.is_invariant(&red).unwrap());
        }
    }

    #[test]
    fn polarize_examples() {
        let ctx = ActionContext::new(&[3, 3], 0).unwrap();
        let d11 = ctx.parse("2*y1^2 - 4*z1*x1 - 2*x1*y1").unwrap();
        let d12 = ctx.parse("2*y1*y2 - 2*z1*x2 - 2*x1*z2 - x1*y2 - y1*x2").unwrap();
        let got = polarize(&d11, 0, 1, &ctx).unwrap();
        assert_eq!(got, d12.scalar_mul(&crate::exactalg::Scalar::from_int(2)).unwrap());
        // constants die, single variables move across
        assert!(polarize(&ctx.parse("1").unwrap(), 0, 1, &ctx).unwrap().is_zero());
        assert_eq!(
            polarize(&ctx.parse("x1").unwrap(), 0, 1, &ctx).unwrap(),
            ctx.parse("x2").unwrap()
        );
        // polarization commutes with the group action
        let sig_then = ctx.act(&polarize(&d11, 0, 1, &ctx).unwrap(), 1).unwrap();
        let then_sig = polarize(&ctx.act(&d11, 1).unwrap(), 0, 1, &ctx).unwrap();
        assert_eq!(sig_then, then_sig);
        // characteristic too small is rejected
        let ctxp = ActionContext::new(&[2, 2], 3).unwrap();
        let cube = ctxp.parse("y1^3").unwrap();
        assert!(matches!(
            polarize(&cube, 0, 1, &ctxp),
            Err(CovariantError::PrimeTooSmall { .. })
        ));
    }
}
