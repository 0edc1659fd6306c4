//! The cyclic-group action on a polynomial ring in chain variables, and the
//! machinery built on it: transfer and norm, invariant bases per
//! multidegree, Jordan structure of graded pieces, periodicity checks,
//! integral invariants through reduction of the lattice kernel, the
//! integral-plus-transfer spanning check, and a degree-bounded generation
//! verifier.

mod generation;
mod genfile;

pub use generation::{check_generation, DegreeRow, GenerationReport, GenerationVerdict};
pub use genfile::{format_gen_file, parse_gen_file};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::exactalg::{is_prime, lattice_saturate, p_saturate, LinAlgError, Matrix, Scalar};
use crate::poly::{
    graded_monomial_basis, Monomial, PolyError, Polynomial, TermOrder, VarTable,
};
use crate::reprring::{RepElement, RingTag, SignedRep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantError {
    BadContext(String),
    WrongCharacteristic { expected: &'static str },
    OutsideTheorem(String),
    NotInvariant(String),
    BadGenerator { index: usize, reason: String },
    Poly(PolyError),
    LinAlg(LinAlgError),
    Parse(String),
    Internal(String),
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantError::BadContext(m) => write!(f, "bad action context: {m}"),
            InvariantError::WrongCharacteristic { expected } => {
                write!(f, "operation requires characteristic {expected}")
            }
            InvariantError::OutsideTheorem(m) => write!(f, "outside the theorem hypothesis: {m}"),
            InvariantError::NotInvariant(m) => write!(f, "not invariant: {m}"),
            InvariantError::BadGenerator { index, reason } => {
                write!(f, "generator {index}: {reason}")
            }
            InvariantError::Poly(e) => write!(f, "{e}"),
            InvariantError::LinAlg(e) => write!(f, "{e}"),
            InvariantError::Parse(m) => write!(f, "parse error: {m}"),
            InvariantError::Internal(m) => write!(f, "internal invariant violated: {m}"),
        }
    }
}

impl From<PolyError> for InvariantError {
    fn from(e: PolyError) -> Self {
        InvariantError::Poly(e)
    }
}

impl From<LinAlgError> for InvariantError {
    fn from(e: LinAlgError) -> Self {
        InvariantError::LinAlg(e)
    }
}

/// A sum of chain modules with the generator acting unipotently on the
/// chain variables: sigma(z_{i,j}) = z_{i,j} + z_{i,j+1}, the socle variable
/// fixed. Characteristic 0 gives the lattice-side action of the infinite
/// cyclic group; characteristic p the group of order p.
#[derive(Clone)]
pub struct ActionContext {
    dims: Vec<usize>,
    characteristic: u64,
    table: Arc<VarTable>,
    order: TermOrder,
}

impl fmt::Debug for ActionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ActionContext({:?} char {})", self.dims, self.characteristic)
    }
}

impl ActionContext {
    pub fn new(dims: &[usize], characteristic: u64) -> Result<Self, InvariantError> {
        let table = VarTable::chain(check_dims(dims, characteristic)?);
        let order = TermOrder::classical(&table);
        let ctx = ActionContext { dims: dims.to_vec(), characteristic, table, order };
        ctx.validate_group_order()?;
        Ok(ctx)
    }

    /// Same chains, custom variable names (one list per summand, generator
    /// first).
    pub fn with_names(
        dims: &[usize],
        characteristic: u64,
        names: &[Vec<String>],
    ) -> Result<Self, InvariantError> {
        check_dims(dims, characteristic)?;
        if names.len() != dims.len() || names.iter().zip(dims).any(|(ns, &n)| ns.len() != n) {
            return Err(InvariantError::BadContext("variable name shape mismatch".into()));
        }
        let mut vars = Vec::new();
        for (i, ns) in names.iter().enumerate() {
            for (depth, name) in ns.iter().enumerate() {
                vars.push(crate::poly::VarInfo { name: name.clone(), summand: i, depth });
            }
        }
        let table = VarTable::new(vars);
        let order = TermOrder::classical(&table);
        let ctx = ActionContext { dims: dims.to_vec(), characteristic, table, order };
        ctx.validate_group_order()?;
        Ok(ctx)
    }

    /// Replace the term order used for lead monomials and printing.
    pub fn with_order(mut self, order: TermOrder) -> Self {
        self.order = order;
        self
    }

    /// The lattice-side companion: same table, characteristic 0.
    pub fn lattice_companion(&self) -> ActionContext {
        ActionContext {
            dims: self.dims.clone(),
            characteristic: 0,
            table: self.table.clone(),
            order: self.order.clone(),
        }
    }

    fn validate_group_order(&self) -> Result<(), InvariantError> {
        if self.characteristic == 0 {
            return Ok(());
        }
        let p = self.characteristic;
        for idx in 0..self.table.len() {
            let v = Polynomial::var(&self.table, idx, p);
            if self.act(&v, p as i64)? != v {
                return Err(InvariantError::Internal(format!(
                    "sigma^{p} does not fix {}",
                    self.table.name(idx)
                )));
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn prime(&self) -> Result<u64, InvariantError> {
        if self.characteristic == 0 {
            Err(InvariantError::WrongCharacteristic { expected: "p" })
        } else {
            Ok(self.characteristic)
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial, InvariantError> {
        Ok(crate::poly::parse_polynomial(s, &self.table, self.characteristic)?)
    }

    /// Generator variable z_{i,0} of one summand (0-indexed).
    pub fn generator_var(&self, summand: usize) -> Polynomial {
        let idx = self.table.chain_var(summand, 0).expect("generator exists");
        Polynomial::var(&self.table, idx, self.characteristic)
    }

    /// sigma^k as a substitution: z_{i,j} maps to
    /// sum_l binom(k, l-j) z_{i,l}.
    fn sigma_images(&self, k: i64) -> BTreeMap<usize, Polynomial> {
        let mut images = BTreeMap::new();
        for idx in 0..self.table.len() {
            let info = self.table.var(idx);
            let n = self.dims[info.summand];
            let mut img = Polynomial::zero(&self.table, self.characteristic);
            for l in info.depth..n {
                let c = binom_scalar(k, (l - info.depth) as u32, self.characteristic);
                if c.is_zero() {
                    continue;
                }
                let var_idx = self.table.chain_var(info.summand, l).expect("chain variable");
                img = img
                    .add(
                        &Polynomial::var(&self.table, var_idx, self.characteristic)
                            .scalar_mul(&c)
                            .expect("same ring"),
                    )
                    .expect("same ring");
            }
            images.insert(idx, img);
        }
        images
    }

    /// Apply sigma^k.
    pub fn act(&self, f: &Polynomial, k: i64) -> Result<Polynomial, InvariantError> {
        let k = if self.characteristic != 0 {
            k.rem_euclid(self.characteristic as i64)
        } else {
            k
        };
        Ok(f.substitute(&self.table, &self.sigma_images(k))?)
    }

    /// Delta(f) = sigma(f) - f.
    pub fn delta(&self, f: &Polynomial) -> Result<Polynomial, InvariantError> {
        Ok(self.act(f, 1)?.sub(f)?)
    }

    pub fn is_invariant(&self, f: &Polynomial) -> Result<bool, InvariantError> {
        Ok(self.act(f, 1)? == *f)
    }

    /// Transfer: the sum of the full orbit (characteristic p only).
    pub fn transfer(&self, f: &Polynomial) -> Result<Polynomial, InvariantError> {
        let p = self.prime()?;
        let mut acc = Polynomial::zero(&self.table, p);
        for k in 0..p {
            acc = acc.add(&self.act(f, k as i64)?)?;
        }
        Ok(acc)
    }

    /// Norm of the generator variable of one summand: the product of its
    /// orbit, of degree p with lead term z_{i,0}^p.
    pub fn norm(&self, summand: usize) -> Result<Polynomial, InvariantError> {
        let p = self.prime()?;
        let z = self.generator_var(summand);
        let mut acc = Polynomial::one(&self.table, p);
        for k in 0..p {
            acc = acc.mul(&self.act(&z, k as i64)?)?;
        }
        Ok(acc)
    }

    /// Monomials of the graded piece, ascending under the context order.
    pub fn piece_basis(&self, d: &[u32]) -> Vec<Monomial> {
        graded_monomial_basis(&self.table, d, &self.order)
    }

    /// Matrix of Delta on the graded piece in the `piece_basis` coordinates.
    pub fn delta_matrix_on_piece(&self, d: &[u32]) -> Result<(Vec<Monomial>, Matrix), InvariantError> {
        let basis = self.piece_basis(d);
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(basis.len());
        for b in &basis {
            let e = Polynomial::term(&self.table, b.clone(), Scalar::one(self.characteristic));
            let de = self.delta(&e)?;
            let mut col = alloc::vec![Scalar::zero(self.characteristic); basis.len()];
            for (m, c) in de.terms() {
                let i = index.get(m).ok_or_else(|| {
                    InvariantError::Internal("Delta does not preserve the piece".into())
                })?;
                col[*i] = c.clone();
            }
            cols.push(col);
        }
        let m = Matrix::from_fn(basis.len(), basis.len(), self.characteristic, |i, j| {
            cols[j][i].clone()
        });
        Ok((basis, m))
    }

    /// Basis of the invariants of one graded piece (kernel of Delta).
    pub fn invariant_basis(&self, d: &[u32]) -> Result<Vec<Polynomial>, InvariantError> {
        let (basis, m) = self.delta_matrix_on_piece(d)?;
        Ok(m.kernel_basis()
            .into_iter()
            .map(|v| Polynomial::from_coordinates(&self.table, self.characteristic, &basis, &v))
            .collect())
    }

    /// Jordan-block multiset of a graded piece as a module over the group
    /// (characteristic p), by rank counting.
    pub fn graded_structure(&self, d: &[u32]) -> Result<RepElement, InvariantError> {
        let p = self.prime()?;
        let (_, m) = self.delta_matrix_on_piece(d)?;
        let dim = m.rows();
        structure_from_ranks(&rank_sequence(&m, dim, p as usize)?, p)
    }
}

fn check_dims(dims: &[usize], characteristic: u64) -> Result<&[usize], InvariantError> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(InvariantError::BadContext("dimensions must be positive".into()));
    }
    if characteristic != 0 {
        if !is_prime(characteristic) {
            return Err(InvariantError::BadContext(format!(
                "{characteristic} is not prime"
            )));
        }
        if dims.iter().any(|&n| n as u64 > characteristic) {
            return Err(InvariantError::BadContext(format!(
                "summand dimension exceeds the prime {characteristic}"
            )));
        }
    }
    Ok(dims)
}

/// binom(k, j) as a scalar, with k possibly negative in characteristic 0.
fn binom_scalar(k: i64, j: u32, characteristic: u64) -> Scalar {
    let mut acc = BigInt::from(1);
    for i in 0..j as i64 {
        acc *= BigInt::from(k - i);
    }
    for i in 1..=j as i64 {
        acc /= BigInt::from(i);
    }
    let s = Scalar::from_bigint(acc);
    if characteristic == 0 {
        s
    } else {
        s.reduce_mod(characteristic).expect("integer reduces")
    }
}

/// Ranks of Delta^k for k = 0..=max_power.
fn rank_sequence(
    delta: &Matrix,
    dim: usize,
    max_power: usize,
) -> Result<Vec<usize>, InvariantError> {
    let mut ranks = Vec::with_capacity(max_power + 2);
    ranks.push(dim);
    let mut power = Matrix::identity(dim, delta.characteristic());
    for _ in 1..=max_power + 1 {
        power = power.mul(delta)?;
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    while ranks.len() < max_power + 2 {
        ranks.push(0);
    }
    Ok(ranks)
}

fn structure_from_ranks(ranks: &[usize], p: u64) -> Result<RepElement, InvariantError> {
    let mut out = RepElement::zero(RingTag::V(p));
    for k in 1..=p as usize {
        let mult = (ranks[k - 1] + ranks[k + 1])
            .checked_sub(2 * ranks[k])
            .ok_or_else(|| InvariantError::Internal("rank sequence is not convex".into()))?;
        if mult > 0 {
            out.add_label(k, mult as u64)
                .map_err(|e| InvariantError::Internal(e.to_string()))?;
        }
    }
    Ok(out)
}

/// Outcome of a periodicity comparison between the pieces at d and at
/// d + p e_i, plus the freeness check of the non-norm part where the
/// theorem asserts it.
#[derive(Clone, Debug)]
pub struct PeriodicityReport {
    pub multidegree: Vec<u32>,
    pub shifted_summand: usize,
    pub base: RepElement,
    pub shifted: RepElement,
    /// Number of free blocks added by the shift when the comparison passes.
    pub free_blocks_added: Option<u64>,
    pub flat_part_checked: bool,
    pub flat_part_free: Option<bool>,
    pub pass: bool,
}

/// Verify that shifting one multidegree coordinate by p only adds free
/// blocks, and, when some d_j >= p - n_j + 1, that the complement of the
/// norm-ideal piece is free (as a block multiset).
pub fn periodicity_check(
    ctx: &ActionContext,
    d: &[u32],
    summand: usize,
) -> Result<PeriodicityReport, InvariantError> {
    let p = ctx.prime()?;
    let base = ctx.graded_structure(d)?;
    let mut shifted_deg = d.to_vec();
    shifted_deg[summand] += p as u32;
    let shifted = ctx.graded_structure(&shifted_deg)?;
    let mut diff = SignedRep::from_effective(&shifted);
    for (&l, &m) in base.multiplicities() {
        diff.add_label(l, -(m as i64));
    }
    let mut pass = true;
    let mut free_added = None;
    match diff.try_effective() {
        Ok(eff) => {
            let labels: Vec<usize> = eff.multiplicities().keys().copied().collect();
            if labels.iter().all(|&l| l == p as usize) {
                free_added = Some(eff.multiplicity(p as usize));
            } else {
                pass = false;
            }
        }
        Err(_) => pass = false,
    }

    // Flat-part freeness at the base degree, when the theorem asserts it.
    let applies = d
        .iter()
        .zip(&ctx.dims)
        .any(|(&dj, &nj)| dj as u64 > p - nj as u64);
    let mut flat_free = None;
    if applies {
        let free = flat_part_is_free(ctx, d)?;
        flat_free = Some(free);
        if !free {
            pass = false;
        }
    }
    Ok(PeriodicityReport {
        multidegree: d.to_vec(),
        shifted_summand: summand,
        base,
        shifted,
        free_blocks_added: free_added,
        flat_part_checked: applies,
        flat_part_free: flat_free,
        pass,
    })
}

/// Block multiset of the norm-ideal part of a piece, computed from the
/// actual subspace spanned by N_i * (monomials of the lower piece).
fn sharp_structure(ctx: &ActionContext, d: &[u32]) -> Result<RepElement, InvariantError> {
    let p = ctx.prime()?;
    let (basis, delta) = ctx.delta_matrix_on_piece(d)?;
    let mut vectors: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..ctx.dims.len() {
        if (d[i] as u64) < p {
            continue;
        }
        let norm = ctx.norm(i)?;
        let mut lower = d.to_vec();
        lower[i] -= p as u32;
        for m in ctx.piece_basis(&lower) {
            let mono = Polynomial::term(&ctx.table, m, Scalar::one(p));
            let prod = norm.mul(&mono)?;
            vectors.push(prod.coordinates(&basis));
        }
    }
    if vectors.is_empty() {
        return Ok(RepElement::zero(RingTag::V(p)));
    }
    // Echelonize the spanning set, then rank-count Delta^k on the subspace.
    let span = Matrix::from_fn(vectors.len(), basis.len(), p, |i, j| vectors[i][j].clone());
    let sub_dim = span.rank();
    let mut ranks = alloc::vec![sub_dim];
    let mut images = vectors;
    for _ in 1..=p as usize + 1 {
        let next: Vec<Vec<Scalar>> = images
            .iter()
            .map(|v| delta.mul_vec(v).expect("dimensions agree"))
            .collect();
        let m = Matrix::from_fn(next.len(), basis.len(), p, |i, j| next[i][j].clone());
        let r = m.rank();
        ranks.push(r);
        images = next;
        if r == 0 {
            break;
        }
    }
    while ranks.len() < p as usize + 2 {
        ranks.push(0);
    }
    structure_from_ranks(&ranks, p)
}

/// True when the complement of the norm-ideal piece in the given degree is
/// a free module (all blocks of size p) in the block-multiset sense.
fn flat_part_is_free(ctx: &ActionContext, d: &[u32]) -> Result<bool, InvariantError> {
    let p = ctx.prime()?;
    let total = ctx.graded_structure(d)?;
    let sharp = sharp_structure(ctx, d)?;
    let mut flat = SignedRep::from_effective(&total);
    for (&l, &m) in sharp.multiplicities() {
        flat.add_label(l, -(m as i64));
    }
    match flat.try_effective() {
        Ok(eff) => Ok(eff
            .multiplicities()
            .keys()
            .all(|&l| l == p as usize)),
        Err(_) => Ok(false),
    }
}

/// Spanning set of the reductions mod p of the lattice invariants in one
/// multidegree: the rational kernel of Delta, saturated (including
/// p-saturation of the resulting lattice) and reduced coefficient-wise.
pub fn integral_invariant_space(
    ctx0: &ActionContext,
    d: &[u32],
    p: u64,
) -> Result<Vec<Polynomial>, InvariantError> {
    if ctx0.characteristic() != 0 {
        return Err(InvariantError::WrongCharacteristic { expected: "0" });
    }
    let (basis, m) = ctx0.delta_matrix_on_piece(d)?;
    let kernel = m.kernel_basis();
    let mut ints: Vec<Vec<BigInt>> = Vec::with_capacity(kernel.len());
    for v in &kernel {
        ints.push(lattice_saturate(v)?);
    }
    let saturated = p_saturate(ints, p);
    let mut out = Vec::with_capacity(saturated.len());
    for v in saturated {
        let coords: Vec<Scalar> = v
            .into_iter()
            .map(|b| Scalar::from_bigint(b).reduce_mod(p).expect("integers reduce"))
            .collect();
        let poly = Polynomial::from_coordinates(&ctx0.table, p, &basis, &coords);
        if poly.is_zero() {
            return Err(InvariantError::Internal(
                "saturated invariant reduced to zero".into(),
            ));
        }
        out.push(poly);
    }
    Ok(out)
}

/// Report for the integral-plus-transfer spanning check in one multidegree.
#[derive(Clone, Debug)]
pub struct MainTheoremReport {
    pub multidegree: Vec<u32>,
    pub dim_invariants: usize,
    pub dim_integral: usize,
    pub dim_transfer: usize,
    pub dim_joint_span: usize,
    pub pass: bool,
}

/// Check that integral invariants and transfers together span the full
/// invariant space of the piece; requires every d_i <= p - 1.
pub fn verify_main_theorem(
    ctx: &ActionContext,
    d: &[u32],
) -> Result<MainTheoremReport, InvariantError> {
    let p = ctx.prime()?;
    if d.iter().any(|&di| di as u64 > p - 1) {
        return Err(InvariantError::OutsideTheorem(format!(
            "multidegree {d:?} has an entry above p - 1 = {}",
            p - 1
        )));
    }
    let (basis, delta) = ctx.delta_matrix_on_piece(d)?;
    let dim_invariants = basis.len() - delta.rank();

    let ctx0 = ctx.lattice_companion();
    let integral = integral_invariant_space(&ctx0, d, p)?;
    let dim_integral = integral.len();

    let transfer_power = delta.pow(p as usize - 1)?;
    let dim_transfer = transfer_power.rank();

    // Joint span: integral vectors next to the transfer-image columns.
    let cols = dim_integral + basis.len();
    let joint = Matrix::from_fn(basis.len(), cols, p, |i, j| {
        if j < dim_integral {
            integral[j].coefficient(&basis[i])
        } else {
            transfer_power.get(i, j - dim_integral).clone()
        }
    });
    let dim_joint_span = joint.rank();
    Ok(MainTheoremReport {
        multidegree: d.to_vec(),
        dim_invariants,
        dim_integral,
        dim_transfer,
        dim_joint_span,
        pass: dim_joint_span == dim_invariants,
    })
}

/// Express an invariant as integral part plus transfer part, by an exact
/// solve over the two spanning sets. Errors when `f` is not invariant or
/// its multidegree falls outside the theorem hypothesis.
pub fn split_invariant(
    ctx: &ActionContext,
    f: &Polynomial,
) -> Result<(Polynomial, Polynomial), InvariantError> {
    let p = ctx.prime()?;
    if !ctx.is_invariant(f)? {
        return Err(InvariantError::NotInvariant(format!("{f}")));
    }
    let d = f
        .multidegree()
        .ok_or_else(|| InvariantError::NotInvariant("not multihomogeneous".into()))?;
    if d.iter().any(|&di| di as u64 > p - 1) {
        return Err(InvariantError::OutsideTheorem(format!(
            "multidegree {d:?} has an entry above p - 1 = {}",
            p - 1
        )));
    }
    if f.is_zero() {
        return Ok((f.clone(), f.clone()));
    }
    let (basis, delta) = ctx.delta_matrix_on_piece(&d)?;
    let ctx0 = ctx.lattice_companion();
    let integral = integral_invariant_space(&ctx0, &d, p)?;
    let transfer_power = delta.pow(p as usize - 1)?;
    let cols = integral.len() + basis.len();
    let joint = Matrix::from_fn(basis.len(), cols, p, |i, j| {
        if j < integral.len() {
            integral[j].coefficient(&basis[i])
        } else {
            transfer_power.get(i, j - integral.len()).clone()
        }
    });
    let target = f.coordinates(&basis);
    let x = joint
        .solve(&target)?
        .ok_or_else(|| InvariantError::Internal("invariant escapes the joint span".into()))?;
    let mut integral_part = Polynomial::zero(&ctx.table, p);
    for (j, c) in x[..integral.len()].iter().enumerate() {
        integral_part = integral_part.add(&integral[j].scalar_mul(c)?)?;
    }
    let transfer_part = f.sub(&integral_part)?;
    Ok((integral_part, transfer_part))
}

/// Transfers of all monomials within per-variable inclusive exponent
/// bounds, zero transfers dropped.
pub fn transfer_family(
    ctx: &ActionContext,
    bounds: &[u32],
) -> Result<Vec<Polynomial>, InvariantError> {
    let _ = ctx.prime()?;
    if bounds.len() != ctx.table.len() {
        return Err(InvariantError::BadContext(format!(
            "expected {} bounds, got {}",
            ctx.table.len(),
            bounds.len()
        )));
    }
    let mut out = Vec::new();
    let mut exps = alloc::vec![0u32; bounds.len()];
    loop {
        let mono = Monomial(exps.clone());
        let f = Polynomial::term(&ctx.table, mono, Scalar::one(ctx.characteristic));
        let tr = ctx.transfer(&f)?;
        if !tr.is_zero() {
            out.push(tr);
        }
        let mut i = 0;
        loop {
            if i == bounds.len() {
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] <= bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}
