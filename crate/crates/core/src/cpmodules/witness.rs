//! Explicit witnesses for the decomposition of a two-factor tensor product:
//! for each block, a socle vector omega_r and a generator alpha_r with
//! Delta^{m+n-2r-2}(alpha_r) = omega_r, plus the characteristic-p
//! counterparts beta_r with Delta^{p-1}(beta_r) = rho(omega_r).
//!
//! The construction is a deterministic linear solve rather than the
//! inductive argument: alpha_r is found inside the kernel of
//! Delta^{m+n-2r-1} by fixing its leading form (unique up to scale in
//! degree r) and completing with the particular solution that sets every
//! free coordinate to zero, columns ordered by ascending degree. Witnesses
//! are normalized so the coefficient of s^{m-1} t^{n-r-1} in the leading
//! form of omega_r is +1.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exactalg::{lattice_saturate, Matrix, Scalar};
use crate::poly::Monomial;

use super::{length, CpError, ModuleElement, ModuleSpec};

/// One block of the decomposition: the generator in two normalizations and
/// the primitive socle vector, with Delta^{m+n-2r-2}(alpha) = omega and
/// Delta^{m+n-2r-2}(alpha_primitive) = scale * omega.
#[derive(Clone, Debug)]
pub struct IntegralWitness {
    pub alpha: ModuleElement,
    pub alpha_primitive: ModuleElement,
    pub omega: ModuleElement,
    pub scale: BigInt,
}

/// The full witness bundle for M_m (x) M_n and, when a prime is supplied,
/// its reduction mod p.
#[derive(Clone, Debug)]
pub struct DecompositionWitness {
    pub m: usize,
    pub n: usize,
    pub p: Option<u64>,
    pub blocks: Vec<IntegralWitness>,
    pub omega_lengths: Vec<usize>,
    /// beta_r over F_p with Delta^{p-1}(beta_r) = rho(omega_r); nonempty
    /// only when p is given and m + n >= p + 1.
    pub betas: Vec<ModuleElement>,
    pub modular_lengths: Vec<usize>,
}

fn check_range(m: usize, n: usize) -> Result<(), CpError> {
    if !(1 <= m && m <= n) {
        return Err(CpError::OutOfRange(format!("need 1 <= m <= n, got ({m},{n})")));
    }
    Ok(())
}

/// All witnesses for r = 0..m-1, with the structural properties of the
/// decomposition checked before returning.
pub fn integral_witnesses(m: usize, n: usize) -> Result<Vec<IntegralWitness>, CpError> {
    check_range(m, n)?;
    let spec = ModuleSpec::new(&[m, n], 0)?;
    let basis = spec.basis();
    let d = spec.delta_matrix();
    let mut out = Vec::with_capacity(m);
    for r in 0..m {
        out.push(witness_for(&spec, &basis, &d, m, n, r)?);
    }
    check_chain_properties(m, n, &out)?;
    Ok(out)
}

/// The primitive socle vector omega_r.
pub fn omega_witness(m: usize, n: usize, r: usize) -> Result<ModuleElement, CpError> {
    if r >= m {
        return Err(CpError::OutOfRange(format!("r = {r} exceeds m - 1 = {}", m.max(1) - 1)));
    }
    Ok(integral_witnesses(m, n)?.remove(r).omega)
}

/// The generators alpha_0..alpha_{m-1} normalized so that
/// Delta^{m+n-2r-2}(alpha_r) = omega_r exactly.
pub fn alpha_witness(m: usize, n: usize) -> Result<Vec<ModuleElement>, CpError> {
    Ok(integral_witnesses(m, n)?.into_iter().map(|w| w.alpha).collect())
}

fn witness_for(
    spec: &ModuleSpec,
    basis: &[Monomial],
    d: &Matrix,
    m: usize,
    n: usize,
    r: usize,
) -> Result<IntegralWitness, CpError> {
    let dim = basis.len();
    let kill_power = m + n - 2 * r - 1;
    let drop_power = d.pow(kill_power)?;

    // Unknowns: monomials of degree >= r, ascending; the first r+1 of them
    // are exactly the degree-r monomials.
    let unknown_cols: Vec<usize> =
        (0..dim).filter(|&i| basis[i].total_degree() as usize >= r).collect();
    let gr_count = unknown_cols
        .iter()
        .take_while(|&&i| basis[i].total_degree() as usize == r)
        .count();
    let a = Matrix::from_fn(dim, unknown_cols.len(), 0, |i, j| {
        drop_power.get(i, unknown_cols[j]).clone()
    });

    // Stage 1: the space of admissible leading forms in degree r is one
    // dimensional; read it off the kernel.
    let kernel = a.kernel_basis();
    let proj = Matrix::from_fn(kernel.len().max(1), gr_count, 0, |i, j| {
        if kernel.is_empty() {
            Scalar::zero(0)
        } else {
            kernel[i][j].clone()
        }
    });
    if proj.rank() != 1 {
        return Err(CpError::Internal(format!(
            "leading-form space for r = {r} has rank {}, expected 1",
            proj.rank()
        )));
    }
    let kv = kernel
        .iter()
        .find(|v| v[..gr_count].iter().any(|c| !c.is_zero()))
        .ok_or_else(|| CpError::Internal("no kernel vector with a degree-r part".into()))?;
    let g = lattice_saturate(&kv[..gr_count])?;

    // Stage 2: complete the leading form with the deterministic particular
    // solution over the higher-degree columns (free coordinates zero).
    let mut g_full = alloc::vec![Scalar::zero(0); dim];
    for (j, gi) in g.iter().enumerate() {
        g_full[unknown_cols[j]] = Scalar::from_bigint(gi.clone());
    }
    let rhs_neg = drop_power.mul_vec(&g_full)?;
    let rhs: Vec<Scalar> = rhs_neg.iter().map(|c| -c).collect();
    let tail_cols = &unknown_cols[gr_count..];
    let a_tail = Matrix::from_fn(dim, tail_cols.len(), 0, |i, j| {
        drop_power.get(i, tail_cols[j]).clone()
    });
    let y = a_tail
        .solve(&rhs)?
        .ok_or_else(|| CpError::Internal("tail completion is inconsistent".into()))?;

    let mut alpha_coords = g_full;
    for (j, yj) in y.iter().enumerate() {
        alpha_coords[tail_cols[j]] = &alpha_coords[tail_cols[j]] + yj;
    }
    let alpha_hat = lattice_saturate(&alpha_coords)?;

    // Normalize: omega is Delta^{m+n-2r-2}(alpha_hat) divided by its anchor
    // coefficient at s^{m-1} t^{n-r-1}; the anchor equals the content up to
    // sign, which makes omega primitive with a +1 there.
    let send_power = d.pow(kill_power - 1)?;
    let alpha_hat_scalars: Vec<Scalar> =
        alpha_hat.iter().map(|b| Scalar::from_bigint(b.clone())).collect();
    let w = send_power.mul_vec(&alpha_hat_scalars)?;
    let anchor_mono = Monomial(alloc::vec![(m - 1) as u32, (n - 1 - r) as u32]);
    let anchor = basis
        .iter()
        .position(|b| *b == anchor_mono)
        .ok_or_else(|| CpError::Internal("anchor monomial missing".into()))?;
    let kappa = w[anchor]
        .as_bigint()
        .ok_or_else(|| CpError::Internal("expected integer image".into()))?;
    if kappa.is_zero() {
        return Err(CpError::Internal(format!("anchor coefficient vanishes for r = {r}")));
    }
    let mut content = BigInt::zero();
    for c in &w {
        content = content.gcd(&c.as_bigint().expect("integer image"));
    }
    if content != kappa.abs() {
        return Err(CpError::Internal(format!(
            "anchor {kappa} is not the content {content} for r = {r}"
        )));
    }

    let inv_kappa = Scalar::Rat(BigRational::new(BigInt::from(1), kappa.clone()));
    let omega_coords: Vec<Scalar> = w.iter().map(|c| c * &inv_kappa).collect();
    let alpha_coords: Vec<Scalar> = alpha_hat_scalars.iter().map(|c| c * &inv_kappa).collect();
    let sign = if kappa.is_negative() { Scalar::from_int(-1) } else { Scalar::from_int(1) };
    let prim_coords: Vec<Scalar> = alpha_hat_scalars.iter().map(|c| c * &sign).collect();

    let omega = ModuleElement::from_coordinates(spec.clone(), basis, &omega_coords);
    let alpha = ModuleElement::from_coordinates(spec.clone(), basis, &alpha_coords);
    let alpha_primitive = ModuleElement::from_coordinates(spec.clone(), basis, &prim_coords);

    if !omega.delta().is_zero() {
        return Err(CpError::Internal("omega is not a socle element".into()));
    }
    if alpha.star_degree() as usize != r {
        return Err(CpError::Internal(format!(
            "alpha_{r} has leading degree {}, expected {r}",
            alpha.star_degree()
        )));
    }
    if omega.star_degree() as usize != m + n - r - 2 {
        return Err(CpError::Internal("omega has the wrong leading degree".into()));
    }
    check_omega_leading_form(&omega, m, n, r)?;

    Ok(IntegralWitness { alpha, alpha_primitive, omega, scale: kappa.abs() })
}

/// The leading form of omega_r must be the alternating staircase
/// sum_{k=0..r} (-1)^{r+k} s^{m-r+k-1} t^{n-k-1}.
fn check_omega_leading_form(
    omega: &ModuleElement,
    m: usize,
    n: usize,
    r: usize,
) -> Result<(), CpError> {
    let lead = omega.poly().homogeneous_part((m + n - r - 2) as u32);
    let mut expected = alloc::collections::BTreeMap::new();
    for k in 0..=r {
        let mono = Monomial(alloc::vec![(m - r + k - 1) as u32, (n - k - 1) as u32]);
        let sign = if (r + k).is_multiple_of(2) { 1i64 } else { -1 };
        expected.insert(mono, Scalar::from_int(sign));
    }
    let got: alloc::collections::BTreeMap<Monomial, Scalar> =
        lead.terms().map(|(mo, c)| (mo.clone(), c.clone())).collect();
    if got != expected {
        return Err(CpError::Internal(format!(
            "leading form of omega_{r} deviates from the staircase: {lead}"
        )));
    }
    Ok(())
}

/// Structural checks on the full chain system: leading degrees, graded
/// independence, and the filtration basis property.
fn check_chain_properties(
    m: usize,
    n: usize,
    blocks: &[IntegralWitness],
) -> Result<(), CpError> {
    let spec = blocks[0].alpha.spec().clone();
    let basis = spec.basis();
    // Chains of every alpha_i; entry (i, j) is Delta^j(alpha_i).
    let mut chains: Vec<Vec<ModuleElement>> = Vec::with_capacity(m);
    for (i, b) in blocks.iter().enumerate() {
        let top = m + n - 2 * i - 2;
        let mut chain = Vec::with_capacity(top + 1);
        let mut cur = b.alpha.clone();
        for _ in 0..=top {
            chain.push(cur.clone());
            cur = cur.delta();
        }
        if !cur.is_zero() {
            return Err(CpError::Internal(format!("chain of alpha_{i} does not terminate")));
        }
        chains.push(chain);
    }
    // (a) leading degrees are i + j.
    for (i, chain) in chains.iter().enumerate() {
        for (j, e) in chain.iter().enumerate() {
            if e.is_zero() || e.star_degree() as usize != i + j {
                return Err(CpError::Internal(format!(
                    "deg_*(Delta^{j} alpha_{i}) != {}",
                    i + j
                )));
            }
        }
    }
    // (b) leading forms of equal degree are linearly independent.
    for deg in 0..=(m + n - 2) {
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (i, chain) in chains.iter().enumerate() {
            if deg >= i {
                if let Some(e) = chain.get(deg - i) {
                    let lead = e.poly().homogeneous_part(deg as u32);
                    rows.push(lead.coordinates(&basis));
                }
            }
        }
        if rows.is_empty() {
            continue;
        }
        let mat = Matrix::from_fn(rows.len(), basis.len(), 0, |i, j| rows[i][j].clone());
        if mat.rank() != rows.len() {
            return Err(CpError::Internal(format!(
                "leading forms in degree {deg} are dependent"
            )));
        }
    }
    // (c) the whole chain system is a basis.
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for chain in &chains {
        for e in chain {
            rows.push(e.poly().coordinates(&basis));
        }
    }
    if rows.len() != basis.len() {
        return Err(CpError::Internal("chain count does not match the dimension".into()));
    }
    let mat = Matrix::from_fn(rows.len(), basis.len(), 0, |i, j| rows[i][j].clone());
    if mat.rank() != basis.len() {
        return Err(CpError::Internal("chains do not form a basis".into()));
    }
    Ok(())
}

/// beta_r over F_p with Delta^{p-1}(beta_r) = rho(omega_r) and leading
/// degree m+n-p-r-1, for r = 0..m+n-p-1. Requires m+n >= p+1 and n <= p.
pub fn beta_witness(m: usize, n: usize, p: u64) -> Result<Vec<ModuleElement>, CpError> {
    check_range(m, n)?;
    if n as u64 > p {
        return Err(CpError::OutOfRange(format!("need n <= p, got ({n},{p})")));
    }
    if ((m + n) as u64) < p + 1 {
        return Err(CpError::OutOfRange(format!("need m + n >= p + 1, got ({m},{n},{p})")));
    }
    let witnesses = integral_witnesses(m, n)?;
    let spec_p = ModuleSpec::new(&[m, n], p)?;
    let basis = spec_p.basis();
    let dp = spec_p.delta_matrix();
    let transfer_power = dp.pow(p as usize - 1)?;
    let count = m + n - p as usize;
    let mut out = Vec::with_capacity(count);
    for (r, w) in witnesses.iter().take(count).enumerate() {
        let target = w.omega.rho(p)?.coordinates(&basis);
        let min_deg = m + n - p as usize - r - 1;
        let cols: Vec<usize> = (0..basis.len())
            .filter(|&i| basis[i].total_degree() as usize >= min_deg)
            .collect();
        let a = Matrix::from_fn(basis.len(), cols.len(), p, |i, j| {
            transfer_power.get(i, cols[j]).clone()
        });
        let y = a
            .solve(&target)?
            .ok_or_else(|| CpError::Internal(format!("no beta_{r} exists")))?;
        let mut coords = alloc::vec![Scalar::zero(p); basis.len()];
        for (j, c) in y.iter().enumerate() {
            coords[cols[j]] = c.clone();
        }
        let beta = ModuleElement::from_coordinates(spec_p.clone(), &basis, &coords);
        if beta.star_degree() as usize != min_deg {
            return Err(CpError::Internal(format!(
                "beta_{r} has leading degree {}, expected {min_deg}",
                beta.star_degree()
            )));
        }
        out.push(beta);
    }
    Ok(out)
}

/// Reductions mod p of the primitive generators, rescaled so that
/// Delta^{m+n-2r-2} carries them exactly onto rho(omega_r); `None` where the
/// image vanishes (blocks that merge into free modules mod p).
pub fn modular_alpha_witness(
    m: usize,
    n: usize,
    p: u64,
) -> Result<Vec<Option<ModuleElement>>, CpError> {
    check_range(m, n)?;
    if n as u64 > p {
        return Err(CpError::OutOfRange(format!("need n <= p, got ({n},{p})")));
    }
    let witnesses = integral_witnesses(m, n)?;
    let mut out = Vec::with_capacity(m);
    for (r, w) in witnesses.iter().enumerate() {
        let send = m + n - 2 * r - 2;
        let reduced = w.alpha_primitive.rho(p)?;
        let image = reduced.delta_power(send);
        if image.is_zero() {
            out.push(None);
            continue;
        }
        let omega_p = w.omega.rho(p)?;
        // image = lambda * omega_p for a unit lambda.
        let (mono, c) = omega_p
            .poly()
            .terms()
            .next()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or_else(|| CpError::Internal("reduced omega vanishes".into()))?;
        let lambda = &image.poly().coefficient(&mono)
            * &c.inv().ok_or_else(|| CpError::Internal("zero coefficient".into()))?;
        let check = omega_p.scalar_mul(&lambda)?;
        if check != image {
            return Err(CpError::Internal(format!(
                "Delta^{send}(rho(alpha_{r})) is not proportional to rho(omega_{r})"
            )));
        }
        let unit =
            lambda.inv().ok_or_else(|| CpError::Internal("vanishing proportionality".into()))?;
        out.push(Some(reduced.scalar_mul(&unit)?));
    }
    Ok(out)
}

/// Compute the witness bundle and verify its defining equations and the
/// length claims.
pub fn decomposition_witness(
    m: usize,
    n: usize,
    p: Option<u64>,
) -> Result<DecompositionWitness, CpError> {
    let blocks = integral_witnesses(m, n)?;
    let mut omega_lengths = Vec::with_capacity(m);
    for (r, b) in blocks.iter().enumerate() {
        let send = m + n - 2 * r - 2;
        if b.alpha.delta_power(send) != b.omega {
            return Err(CpError::Internal(format!("Delta^{send}(alpha_{r}) != omega_{r}")));
        }
        let ell = length(&b.omega)?;
        if ell != m + n - 2 * r - 1 {
            return Err(CpError::Internal(format!(
                "length of omega_{r} is {ell}, expected {}",
                m + n - 2 * r - 1
            )));
        }
        omega_lengths.push(ell);
    }
    let mut betas = Vec::new();
    let mut mod_lengths = Vec::new();
    if let Some(p) = p {
        if n as u64 > p {
            return Err(CpError::OutOfRange(format!("need n <= p, got ({n},{p})")));
        }
        if (m + n) as u64 > p {
            betas = beta_witness(m, n, p)?;
            for (r, beta) in betas.iter().enumerate() {
                let image = beta.delta_power(p as usize - 1);
                if image != blocks[r].omega.rho(p)? {
                    return Err(CpError::Internal(format!(
                        "Delta^{}(beta_{r}) != rho(omega_{r})",
                        p - 1
                    )));
                }
            }
        }
        for b in &blocks {
            mod_lengths.push(length(&b.omega.rho(p)?)?);
        }
    }
    Ok(DecompositionWitness {
        m,
        n,
        p,
        blocks,
        omega_lengths,
        betas,
        modular_lengths: mod_lengths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpmodules::modular_lengths;

    fn parse(spec: &ModuleSpec, s: &str) -> ModuleElement {
        ModuleElement::parse(spec.clone(), s).unwrap()
    }

    #[test]
    fn omega_witnesses_for_3_4_match_the_worked_example() {
        let spec = ModuleSpec::new(&[3, 4], 0).unwrap();
        assert_eq!(omega_witness(3, 4, 0).unwrap(), parse(&spec, "s^2*t^3"));
        assert_eq!(
            omega_witness(3, 4, 1).unwrap(),
            parse(&spec, "s^2*t^2 - s*t^3 - s^2*t^3")
        );
        assert_eq!(
            omega_witness(3, 4, 2).unwrap(),
            parse(&spec, "s^2*t - s*t^2 + t^3 - 2*s^2*t^2 + 3*s*t^3")
        );
        assert!(omega_witness(3, 4, 3).is_err());
    }

    #[test]
    fn alpha_witnesses_for_3_4_match_the_worked_example() {
        let spec = ModuleSpec::new(&[3, 4], 0).unwrap();
        let ws = integral_witnesses(3, 4).unwrap();
        assert_eq!(ws[0].alpha, parse(&spec, "1/10"));
        assert_eq!(ws[0].alpha_primitive, parse(&spec, "1"));
        assert_eq!(ws[0].scale, BigInt::from(10));
        assert_eq!(ws[1].alpha_primitive, parse(&spec, "3*s - 2*t"));
        assert_eq!(ws[1].scale, BigInt::from(3));
        assert_eq!(ws[2].alpha_primitive, parse(&spec, "3*s^2 - 2*s*t + t^2 + 2*t^3"));
        assert_eq!(ws[2].scale, BigInt::from(1));
    }

    #[test]
    fn omega_witness_2_2_1_has_positive_anchor() {
        let spec = ModuleSpec::new(&[2, 2], 0).unwrap();
        assert_eq!(omega_witness(2, 2, 1).unwrap(), parse(&spec, "s - t"));
    }

    #[test]
    fn single_chain_witness() {
        let spec = ModuleSpec::new(&[1, 4], 0).unwrap();
        let ws = integral_witnesses(1, 4).unwrap();
        assert_eq!(ws[0].omega, parse(&spec, "t^3"));
        assert_eq!(ws[0].alpha, parse(&spec, "1"));
    }

    #[test]
    fn beta_witnesses_for_3_4_5() {
        let betas = beta_witness(3, 4, 5).unwrap();
        assert_eq!(betas.len(), 2);
        let ws = integral_witnesses(3, 4).unwrap();
        for (r, beta) in betas.iter().enumerate() {
            assert_eq!(beta.delta_power(4), ws[r].omega.rho(5).unwrap());
            assert_eq!(beta.star_degree() as usize, 3 + 4 - 5 - r - 1);
        }
        assert!(beta_witness(2, 2, 5).is_err());
    }

    #[test]
    fn beta_witness_p_p_p() {
        let p = 3usize;
        let betas = beta_witness(p, p, p as u64).unwrap();
        assert_eq!(betas.len(), p);
        // the last beta has leading degree 0 (a unit plus higher terms)
        assert_eq!(betas[p - 1].star_degree(), 0);
    }

    #[test]
    fn modular_lengths_examples() {
        assert_eq!(modular_lengths(3, 4, 5).unwrap(), alloc::vec![5, 5, 2]);
        assert_eq!(modular_lengths(3, 4, 7).unwrap(), alloc::vec![6, 4, 2]);
        assert_eq!(modular_lengths(1, 1, 5).unwrap(), alloc::vec![1]);
    }

    #[test]
    fn modular_alpha_compatibility() {
        // Blocks with r >= m+n-p always reduce onto generators; below that
        // the image may vanish (it does for r = 0 at p = 5, where
        // Delta^5(alpha_0) = 10 s^2 t^3 dies).
        let ws = integral_witnesses(3, 4).unwrap();
        let mods = modular_alpha_witness(3, 4, 5).unwrap();
        assert!(mods[0].is_none());
        for r in [1usize, 2] {
            let a = mods[r].as_ref().unwrap();
            assert_eq!(a.delta_power(3 + 4 - 2 * r - 2), ws[r].omega.rho(5).unwrap());
        }
        let mods7 = modular_alpha_witness(3, 4, 7).unwrap();
        for (r, a) in mods7.iter().enumerate() {
            let a = a.as_ref().unwrap();
            assert_eq!(a.delta_power(3 + 4 - 2 * r - 2), ws[r].omega.rho(7).unwrap());
        }
    }

    #[test]
    fn bundle_validates() {
        let b = decomposition_witness(3, 4, Some(5)).unwrap();
        assert_eq!(b.omega_lengths, alloc::vec![6, 4, 2]);
        assert_eq!(b.modular_lengths, alloc::vec![5, 5, 2]);
        assert_eq!(b.betas.len(), 2);
        let b = decomposition_witness(4, 4, None).unwrap();
        assert_eq!(b.omega_lengths, alloc::vec![7, 5, 3, 1]);
    }
}
