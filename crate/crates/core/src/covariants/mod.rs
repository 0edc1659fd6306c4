//! Classical binary-form side: generic forms with binomially scaled
//! coefficient bases, transvectants, invariance checking against both
//! unipotent generators, the source map (evaluation of the form slot at the
//! fixed vector), the change to chain variables, the generator catalogs,
//! and polarization for vector invariants.

mod catalog;
mod vector_families;

pub use catalog::{
    catalog, covariant_order, evaluated_catalog, generator_set, integral_invariants,
    source_order, table_degrees, table_dims, EvaluatedRecord, GeneratorRecord, Recipe, TableId,
};
pub use vector_families::{mv3_generators, polarize, quadratic_determinants};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exactalg::{LinAlgError, Matrix, Scalar};
use crate::invariants::{ActionContext, InvariantError};
use crate::poly::{Monomial, PolyError, Polynomial, VarInfo, VarTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CovariantError {
    BadContext(String),
    WrongCharacteristic { expected: &'static str },
    OrderTooSmall { have: usize, want: usize },
    NotBihomogeneous,
    DimensionMismatch(String),
    PrimeTooSmall { prime: u64, needed: u64 },
    UnknownTable(String),
    Poly(PolyError),
    LinAlg(LinAlgError),
    Invariant(alloc::boxed::Box<InvariantError>),
    Internal(String),
}

impl fmt::Display for CovariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CovariantError::BadContext(m) => write!(f, "bad form context: {m}"),
            CovariantError::WrongCharacteristic { expected } => {
                write!(f, "operation requires characteristic {expected}")
            }
            CovariantError::OrderTooSmall { have, want } => {
                write!(f, "transvectant index {want} exceeds an order {have}")
            }
            CovariantError::NotBihomogeneous => write!(f, "covariant is not bihomogeneous"),
            CovariantError::DimensionMismatch(m) => write!(f, "dimension mismatch: {m}"),
            CovariantError::PrimeTooSmall { prime, needed } => {
                write!(f, "prime {prime} is below the required {needed}")
            }
            CovariantError::UnknownTable(m) => write!(f, "unknown table {m}"),
            CovariantError::Poly(e) => write!(f, "{e}"),
            CovariantError::LinAlg(e) => write!(f, "{e}"),
            CovariantError::Invariant(e) => write!(f, "{e}"),
            CovariantError::Internal(m) => write!(f, "internal invariant violated: {m}"),
        }
    }
}

impl From<PolyError> for CovariantError {
    fn from(e: PolyError) -> Self {
        CovariantError::Poly(e)
    }
}

impl From<LinAlgError> for CovariantError {
    fn from(e: LinAlgError) -> Self {
        CovariantError::LinAlg(e)
    }
}

impl From<InvariantError> for CovariantError {
    fn from(e: InvariantError) -> Self {
        CovariantError::Invariant(alloc::boxed::Box::new(e))
    }
}

/// Polynomial ring of one or more generic binary forms: form variables x, y
/// and, for slot i of degree d_i, coefficient variables c_{i,0..d_i} scaled
/// so that the generic form sum_j binom(d_i, j) c_{i,j} x^{d_i-j} y^j is
/// fixed by the whole group. The two triangular generators act by
///   lower: x -> x - y,              c_r -> sum_{j<=r} binom(r, j) c_j
///   upper: y -> y - x,              c_r -> sum_{j>=r} binom(d-r, j-r) c_j
/// and both substitutions are validated against the generic forms on
/// construction.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryFormContext {
    degrees: Vec<usize>,
    table: Arc<VarTable>,
    x: usize,
    y: usize,
    coeff_idx: Vec<Vec<usize>>,
}

impl fmt::Debug for BinaryFormContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryFormContext(degrees {:?})", self.degrees)
    }
}

const SLOT_LETTERS: [char; 4] = ['a', 'b', 'c', 'd'];

impl BinaryFormContext {
    pub fn new(degrees: &[usize]) -> Result<Self, CovariantError> {
        if degrees.is_empty() || degrees.len() > SLOT_LETTERS.len() {
            return Err(CovariantError::BadContext(format!(
                "between 1 and {} form slots supported",
                SLOT_LETTERS.len()
            )));
        }
        if degrees.contains(&0) {
            return Err(CovariantError::BadContext("form degrees must be positive".into()));
        }
        let xy_summand = degrees.len();
        let mut vars = Vec::new();
        let mut coeff_idx = Vec::new();
        for (i, &d) in degrees.iter().enumerate() {
            let mut idx = Vec::with_capacity(d + 1);
            for j in 0..=d {
                idx.push(vars.len());
                vars.push(VarInfo {
                    name: format!("{}{}", SLOT_LETTERS[i], j),
                    summand: i,
                    depth: d - j,
                });
            }
            coeff_idx.push(idx);
        }
        let x = vars.len();
        vars.push(VarInfo { name: "x".into(), summand: xy_summand, depth: 0 });
        let y = vars.len();
        vars.push(VarInfo { name: "y".into(), summand: xy_summand, depth: 1 });
        let table = VarTable::new(vars);
        let ctx = BinaryFormContext { degrees: degrees.to_vec(), table, x, y, coeff_idx };
        ctx.validate()?;
        Ok(ctx)
    }

    fn validate(&self) -> Result<(), CovariantError> {
        for slot in 0..self.degrees.len() {
            let f = self.generic_form(slot);
            let lower = f.substitute(&self.table, &self.lower_images())?;
            let upper = f.substitute(&self.table, &self.upper_images())?;
            if lower != f || upper != f {
                return Err(CovariantError::Internal(format!(
                    "generic form of slot {slot} is not fixed by the unipotent generators"
                )));
            }
        }
        Ok(())
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial, CovariantError> {
        Ok(crate::poly::parse_polynomial(s, &self.table, 0)?)
    }

    fn var(&self, idx: usize) -> Polynomial {
        Polynomial::var(&self.table, idx, 0)
    }

    /// The generic form of one slot.
    pub fn generic_form(&self, slot: usize) -> Polynomial {
        let d = self.degrees[slot];
        let mut acc = Polynomial::zero(&self.table, 0);
        for j in 0..=d {
            let mut mono = Monomial::one(self.table.len());
            mono.0[self.coeff_idx[slot][j]] = 1;
            mono.0[self.x] = (d - j) as u32;
            mono.0[self.y] = j as u32;
            let c = Scalar::from_bigint(binom_big(d, j));
            acc = acc.add(&Polynomial::term(&self.table, mono, c)).expect("same ring");
        }
        acc
    }

    /// Apply the lower unipotent generator to a polynomial of this ring.
    pub fn apply_lower(&self, f: &Polynomial) -> Result<Polynomial, CovariantError> {
        Ok(f.substitute(&self.table, &self.lower_images())?)
    }

    /// Apply the upper unipotent generator to a polynomial of this ring.
    pub fn apply_upper(&self, f: &Polynomial) -> Result<Polynomial, CovariantError> {
        Ok(f.substitute(&self.table, &self.upper_images())?)
    }

    fn lower_images(&self) -> BTreeMap<usize, Polynomial> {
        let mut images = BTreeMap::new();
        images.insert(self.x, self.var(self.x).sub(&self.var(self.y)).unwrap());
        images.insert(self.y, self.var(self.y));
        for (slot, idx) in self.coeff_idx.iter().enumerate() {
            let d = self.degrees[slot];
            for r in 0..=d {
                let mut img = Polynomial::zero(&self.table, 0);
                for j in 0..=r {
                    let c = Scalar::from_bigint(binom_big(r, j));
                    img = img.add(&self.var(idx[j]).scalar_mul(&c).unwrap()).unwrap();
                }
                images.insert(idx[r], img);
            }
        }
        images
    }

    fn upper_images(&self) -> BTreeMap<usize, Polynomial> {
        let mut images = BTreeMap::new();
        images.insert(self.x, self.var(self.x));
        images.insert(self.y, self.var(self.y).sub(&self.var(self.x)).unwrap());
        for (slot, idx) in self.coeff_idx.iter().enumerate() {
            let d = self.degrees[slot];
            for r in 0..=d {
                let mut img = Polynomial::zero(&self.table, 0);
                for j in r..=d {
                    let c = Scalar::from_bigint(binom_big(d - r, j - r));
                    img = img.add(&self.var(idx[j]).scalar_mul(&c).unwrap()).unwrap();
                }
                images.insert(idx[r], img);
            }
        }
        images
    }
}

fn binom_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// A bihomogeneous element of the covariant ring: a polynomial in x, y and
/// the form coefficients, with its order (degree in x, y) and its
/// multidegree over the form slots.
#[derive(Clone, PartialEq, Eq)]
pub struct Covariant {
    ctx: BinaryFormContext,
    poly: Polynomial,
}

impl fmt::Debug for Covariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl Covariant {
    pub fn new(ctx: &BinaryFormContext, poly: Polynomial) -> Result<Self, CovariantError> {
        if poly.multidegree().is_none() {
            return Err(CovariantError::NotBihomogeneous);
        }
        Ok(Covariant { ctx: ctx.clone(), poly })
    }

    pub fn form(ctx: &BinaryFormContext, slot: usize) -> Self {
        Covariant { ctx: ctx.clone(), poly: ctx.generic_form(slot) }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn ctx(&self) -> &BinaryFormContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Degree in the form variables x, y.
    pub fn order(&self) -> usize {
        self.poly
            .multidegree()
            .map(|d| d[self.ctx.degrees.len()] as usize)
            .expect("covariants are bihomogeneous")
    }

    /// Degrees in each form slot's coefficients.
    pub fn slot_degrees(&self) -> Vec<u32> {
        let d = self.poly.multidegree().expect("covariants are bihomogeneous");
        d[..self.ctx.degrees.len()].to_vec()
    }

    pub fn mul(&self, other: &Covariant) -> Result<Covariant, CovariantError> {
        Ok(Covariant { ctx: self.ctx.clone(), poly: self.poly.mul(&other.poly)? })
    }

    pub fn pow(&self, k: u32) -> Result<Covariant, CovariantError> {
        Ok(Covariant { ctx: self.ctx.clone(), poly: self.poly.pow(k)? })
    }
}

/// The r-th transvectant of two covariants over the rationals:
/// (g,h)^r = (m-r)!(n-r)!/(m! n!) * sum_i (-1)^i binom(r,i)
///           d^r g / dX^{r-i} dY^i * d^r h / dX^i dY^{r-i},
/// of order m + n - 2r. The partials act on the x,y representation through
/// the duality that pairs x with the fixed vector: d/dX differentiates by
/// y and d/dY by x (validated by the invariance of the catalog outputs).
pub fn transvectant(g: &Covariant, h: &Covariant, r: usize) -> Result<Covariant, CovariantError> {
    if g.poly.characteristic() != 0 {
        return Err(CovariantError::WrongCharacteristic { expected: "0" });
    }
    let (m, n) = (g.order(), h.order());
    if r > m || r > n {
        return Err(CovariantError::OrderTooSmall { have: m.min(n), want: r });
    }
    let ctx = &g.ctx;
    let dx = ctx.y; // d/dX acts as d/dy
    let dy = ctx.x; // d/dY acts as d/dx
    // Mixed partials of order r: parts[i] = dX^{r-i} dY^i applied.
    let partials = |f: &Polynomial, x_count: usize, y_count: usize| {
        let mut p = f.clone();
        for _ in 0..x_count {
            p = p.derivative(dx);
        }
        for _ in 0..y_count {
            p = p.derivative(dy);
        }
        p
    };
    let parts_g: Vec<Polynomial> = (0..=r).map(|i| partials(&g.poly, r - i, i)).collect();
    let parts_h: Vec<Polynomial> = (0..=r).map(|i| partials(&h.poly, i, r - i)).collect();
    let mut acc = Polynomial::zero(&ctx.table, 0);
    for i in 0..=r {
        let term = parts_g[i].mul(&parts_h[i])?;
        let mut c = binom_big(r, i);
        if i % 2 == 1 {
            c = -c;
        }
        acc = acc.add(&term.scalar_mul(&Scalar::from_bigint(c))?)?;
    }
    let scale = BigRational::new(
        factorial(m - r) * factorial(n - r),
        factorial(m) * factorial(n),
    );
    let poly = acc.scalar_mul(&Scalar::Rat(scale))?;
    Covariant::new(ctx, poly)
}

fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// True exactly when the covariant is fixed by both unipotent substitution
/// maps; by density this certifies full invariance.
pub fn sl2_check(c: &Covariant) -> Result<bool, CovariantError> {
    let ctx = &c.ctx;
    let lower = c.poly.substitute(&ctx.table, &ctx.lower_images())?;
    if lower != c.poly {
        return Ok(false);
    }
    let upper = c.poly.substitute(&ctx.table, &ctx.upper_images())?;
    Ok(upper == c.poly)
}

/// The source of a covariant: evaluate the form slot at the fixed vector,
/// that is substitute x -> 1, y -> 0. Order-zero covariants are their own
/// source.
pub fn roberts_source(c: &Covariant) -> Result<Polynomial, CovariantError> {
    let ctx = &c.ctx;
    let mut images = BTreeMap::new();
    for idx in 0..ctx.table.len() {
        if idx == ctx.x {
            images.insert(idx, Polynomial::one(&ctx.table, 0));
        } else if idx == ctx.y {
            images.insert(idx, Polynomial::zero(&ctx.table, 0));
        } else {
            images.insert(idx, ctx.var(idx));
        }
    }
    Ok(c.poly.substitute(&ctx.table, &images)?)
}

/// Express a source polynomial in the chain variables of the matching
/// action context: coefficient slot i of form degree d corresponds to the
/// chain of dimension d + 1, its top coefficient variable being the chain
/// generator and the successive images under Delta the deeper variables.
/// The change of basis is triangular with nonzero integer diagonal, so lead
/// monomials transport along the variable correspondence.
pub fn chain_rename(
    src: &Polynomial,
    form_ctx: &BinaryFormContext,
    ctx: &ActionContext,
) -> Result<Polynomial, CovariantError> {
    let dims: Vec<usize> = form_ctx.degrees.iter().map(|d| d + 1).collect();
    if ctx.dims() != dims.as_slice() {
        return Err(CovariantError::DimensionMismatch(format!(
            "form degrees {:?} need chain dimensions {:?}, context has {:?}",
            form_ctx.degrees,
            dims,
            ctx.dims()
        )));
    }
    if ctx.characteristic() != 0 {
        return Err(CovariantError::WrongCharacteristic { expected: "0" });
    }
    let mut images: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for (slot, idx) in form_ctx.coeff_idx.iter().enumerate() {
        let d = form_ctx.degrees[slot];
        let n = d + 1;
        // Chain basis in coefficient coordinates: u_0 = c_d,
        // u_{k+1} = Delta(u_k) with Delta(c_r) = sum_{j<r} binom(r,j) c_j.
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
        let mut cur = alloc::vec![Scalar::zero(0); n];
        cur[d] = Scalar::from_int(1);
        cols.push(cur.clone());
        for _ in 1..n {
            let mut next = alloc::vec![Scalar::zero(0); n];
            for (r, c) in cur.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for j in 0..r {
                    let b = Scalar::from_bigint(binom_big(r, j));
                    next[j] = &next[j] + &(c * &b);
                }
            }
            cols.push(next.clone());
            cur = next;
        }
        let u = Matrix::from_fn(n, n, 0, |i, k| cols[k][i].clone());
        // Invert column by column: c_j = sum_k inv[k][j] z_{i,k}.
        for j in 0..n {
            let mut e = alloc::vec![Scalar::zero(0); n];
            e[j] = Scalar::from_int(1);
            let coeffs = u
                .solve(&e)?
                .ok_or_else(|| CovariantError::Internal("chain basis is singular".into()))?;
            let mut img = Polynomial::zero(ctx.table(), 0);
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let var = ctx.table().chain_var(slot, k).expect("chain variable");
                img = img
                    .add(&Polynomial::var(ctx.table(), var, 0).scalar_mul(c)?)
                    .expect("same ring");
            }
            images.insert(idx[j], img);
        }
    }
    Ok(src.substitute(ctx.table(), &images)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::TermOrder;

    fn cubic_ctx() -> BinaryFormContext {
        BinaryFormContext::new(&[3]).unwrap()
    }

    #[test]
    fn generic_forms_are_invariant() {
        for degs in [&[1usize][..], &[3], &[2, 3], &[3, 3], &[1, 3]] {
            let ctx = BinaryFormContext::new(degs).unwrap();
            for slot in 0..degs.len() {
                let f = Covariant::form(&ctx, slot);
                assert!(sl2_check(&f).unwrap());
            }
        }
    }

    #[test]
    fn raw_coefficient_is_not_invariant() {
        let ctx = cubic_ctx();
        let a1 = Covariant::new(&ctx, ctx.parse("a1").unwrap()).unwrap();
        assert!(!sl2_check(&a1).unwrap());
    }

    #[test]
    fn zeroth_transvectant_is_the_product() {
        let ctx = BinaryFormContext::new(&[2, 3]).unwrap();
        let f = Covariant::form(&ctx, 0);
        let g = Covariant::form(&ctx, 1);
        let t = transvectant(&f, &g, 0).unwrap();
        assert_eq!(t.poly(), f.mul(&g).unwrap().poly());
    }

    #[test]
    fn hessian_of_the_cubic() {
        let ctx = cubic_ctx();
        let f = Covariant::form(&ctx, 0);
        let h = transvectant(&f, &f, 2).unwrap();
        assert_eq!(h.order(), 2);
        assert!(sl2_check(&h).unwrap());
        let expect = ctx
            .parse("2*a0*a2*x^2 - 2*a1^2*x^2 + 2*a0*a3*x*y - 2*a1*a2*x*y + 2*a1*a3*y^2 - 2*a2^2*y^2")
            .unwrap();
        assert_eq!(h.poly(), &expect);
        // lead monomial under the catalog order
        let ord = TermOrder::from_names(
            ctx.table(),
            &["a3", "a2", "a1", "a0", "x", "y"],
        )
        .unwrap();
        let lm = h.poly().lead_monomial(&ord).unwrap();
        let expect_lm = ctx.parse("a1^2*x^2").unwrap();
        assert_eq!(lm, expect_lm.lead_monomial(&ord).unwrap());
    }

    #[test]
    fn transvectant_symmetry() {
        let ctx = BinaryFormContext::new(&[2, 3]).unwrap();
        let phi = Covariant::form(&ctx, 0);
        let f = Covariant::form(&ctx, 1);
        for r in 0..=2usize {
            let a = transvectant(&phi, &f, r).unwrap();
            let b = transvectant(&f, &phi, r).unwrap();
            let flipped = if r % 2 == 1 { b.poly().neg() } else { b.poly().clone() };
            assert_eq!(a.poly(), &flipped, "r = {r}");
        }
        assert!(transvectant(&phi, &f, 3).is_err());
        let ctx2 = BinaryFormContext::new(&[3, 3]).unwrap();
        let f1 = Covariant::form(&ctx2, 0);
        let f2 = Covariant::form(&ctx2, 1);
        for r in 0..=3usize {
            let a = transvectant(&f1, &f2, r).unwrap();
            let b = transvectant(&f2, &f1, r).unwrap();
            let flipped = if r % 2 == 1 { b.poly().neg() } else { b.poly().clone() };
            assert_eq!(a.poly(), &flipped, "two cubics, r = {r}");
        }
    }

    #[test]
    fn source_of_the_generic_form() {
        let ctx = cubic_ctx();
        let f = Covariant::form(&ctx, 0);
        let src = roberts_source(&f).unwrap();
        assert_eq!(src, ctx.parse("a0").unwrap());
    }

    #[test]
    fn chain_rename_is_triangular_and_equivariant() {
        let form_ctx = cubic_ctx();
        let chain_ctx = ActionContext::new(&[4], 0).unwrap();
        // a3 is the generator, so it maps to the top chain variable w1.
        let a3 = form_ctx.parse("a3").unwrap();
        let img = chain_rename(&a3, &form_ctx, &chain_ctx).unwrap();
        assert_eq!(img, chain_ctx.parse("w1").unwrap());
        // a0 spans the socle line.
        let a0 = form_ctx.parse("a0").unwrap();
        let img0 = chain_rename(&a0, &form_ctx, &chain_ctx).unwrap();
        assert_eq!(img0, chain_ctx.parse("1/6*x1").unwrap());
        // Equivariance: renaming after the coefficient action equals the
        // chain action after renaming, on every variable.
        let lower = form_ctx.lower_images();
        for j in 0..=3usize {
            let cj = form_ctx.var(form_ctx.coeff_idx[0][j]);
            let lhs =
                chain_rename(&cj.substitute(form_ctx.table(), &lower).unwrap(), &form_ctx, &chain_ctx)
                    .unwrap();
            let rhs = chain_ctx
                .act(&chain_rename(&cj, &form_ctx, &chain_ctx).unwrap(), 1)
                .unwrap();
            assert_eq!(lhs, rhs, "variable a{j}");
        }
    }
}
