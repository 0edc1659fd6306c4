//! Truncated-polynomial models of the indecomposable Jordan-block modules
//! and their tensor products: the generator of the group acts on
//! k[t_1,...,t_r]/(t_i^{n_i}) as multiplication by prod(1 + t_i), so
//! Delta = sigma - 1 is multiplication by prod(1 + t_i) - 1. Lengths,
//! decomposition by rank counting, Hilbert functions, and the explicit
//! integral and modular witness chains live here.

mod witness;

pub use witness::{
    alpha_witness, beta_witness, decomposition_witness, integral_witnesses,
    modular_alpha_witness, omega_witness, DecompositionWitness, IntegralWitness,
};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::exactalg::{is_prime, LinAlgError, Matrix, Scalar};
use crate::poly::{format_monomial, parse_polynomial, Monomial, PolyError, Polynomial, VarTable};
use crate::reprring::{RepElement, RingTag};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CpError {
    BadSpec(String),
    OutOfRange(String),
    ZeroElement,
    NotSocle,
    NonIntegerCoefficient { monomial: String },
    SpecMismatch,
    Poly(PolyError),
    LinAlg(LinAlgError),
    Internal(String),
}

impl fmt::Display for CpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CpError::BadSpec(m) => write!(f, "bad module spec: {m}"),
            CpError::OutOfRange(m) => write!(f, "out of range: {m}"),
            CpError::ZeroElement => write!(f, "zero element"),
            CpError::NotSocle => write!(f, "element is not annihilated by Delta"),
            CpError::NonIntegerCoefficient { monomial } => {
                write!(f, "non-integer coefficient at {monomial}")
            }
            CpError::SpecMismatch => write!(f, "elements of different modules"),
            CpError::Poly(e) => write!(f, "{e}"),
            CpError::LinAlg(e) => write!(f, "{e}"),
            CpError::Internal(m) => write!(f, "internal invariant violated: {m}"),
        }
    }
}

impl From<PolyError> for CpError {
    fn from(e: PolyError) -> Self {
        CpError::Poly(e)
    }
}

impl From<LinAlgError> for CpError {
    fn from(e: LinAlgError) -> Self {
        CpError::LinAlg(e)
    }
}

/// A tensor product of Jordan-block modules: factor i is modeled as
/// k\[t_i\]/(t_i^{n_i}). Characteristic 0 uses the rational lattice model;
/// characteristic p requires every dimension at most p.
#[derive(Clone)]
pub struct ModuleSpec {
    dims: Vec<usize>,
    characteristic: u64,
    table: Arc<VarTable>,
}

impl PartialEq for ModuleSpec {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.characteristic == other.characteristic
    }
}
impl Eq for ModuleSpec {}

impl fmt::Debug for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleSpec({:?} char {})", self.dims, self.characteristic)
    }
}

impl ModuleSpec {
    pub fn new(dims: &[usize], characteristic: u64) -> Result<Self, CpError> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(CpError::BadSpec("dimensions must be positive".into()));
        }
        if characteristic != 0 {
            if !is_prime(characteristic) {
                return Err(CpError::BadSpec(format!("{characteristic} is not prime")));
            }
            if dims.iter().any(|&n| n as u64 > characteristic) {
                return Err(CpError::BadSpec(format!(
                    "dimension exceeds the prime {characteristic}"
                )));
            }
        }
        let names: Vec<String> = match dims.len() {
            1 => alloc::vec!["t".to_string()],
            2 => alloc::vec!["s".to_string(), "t".to_string()],
            r => (1..=r).map(|i| format!("t{i}")).collect(),
        };
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let table = VarTable::simple(&name_refs);
        Ok(ModuleSpec { dims: dims.to_vec(), characteristic, table })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    /// Total dimension of the tensor product.
    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Largest possible Jordan block: 1 + sum (n_i - 1) in characteristic 0,
    /// capped at p in characteristic p.
    pub fn max_block(&self) -> usize {
        let free = 1 + self.dims.iter().map(|n| n - 1).sum::<usize>();
        if self.characteristic == 0 {
            free
        } else {
            free.min(self.characteristic as usize)
        }
    }

    fn in_box(&self, m: &Monomial) -> bool {
        m.0.iter().zip(&self.dims).all(|(&e, &n)| (e as usize) < n)
    }

    /// Monomial basis sorted ascending: total degree first, then the storage
    /// grevlex order. This ordering is the column convention for every
    /// deterministic solve in the witness constructions.
    pub fn basis(&self) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(self.dim());
        let mut exps = alloc::vec![0u32; self.dims.len()];
        loop {
            out.push(Monomial(exps.clone()));
            let mut i = 0;
            loop {
                if i == self.dims.len() {
                    out.sort();
                    return out;
                }
                exps[i] += 1;
                if (exps[i] as usize) < self.dims[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    /// Matrix of multiplication by Delta = prod(1 + t_i) - 1 on the
    /// ascending monomial basis.
    pub fn delta_matrix(&self) -> Matrix {
        let basis = self.basis();
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(basis.len());
        for b in &basis {
            let e = ModuleElement::term(self.clone(), b.clone());
            let de = e.delta();
            let mut col = alloc::vec![Scalar::zero(self.characteristic); basis.len()];
            for (m, c) in de.poly.terms() {
                col[index[m]] = c.clone();
            }
            cols.push(col);
        }
        Matrix::from_fn(basis.len(), basis.len(), self.characteristic, |i, j| cols[j][i].clone())
    }
}

/// An element of the truncated-polynomial model, carried with its spec.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleElement {
    spec: ModuleSpec,
    poly: Polynomial,
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl ModuleElement {
    pub fn zero(spec: ModuleSpec) -> Self {
        let poly = Polynomial::zero(spec.table(), spec.characteristic());
        ModuleElement { spec, poly }
    }

    pub fn one(spec: ModuleSpec) -> Self {
        let poly = Polynomial::one(spec.table(), spec.characteristic());
        ModuleElement { spec, poly }
    }

    fn term(spec: ModuleSpec, m: Monomial) -> Self {
        let poly = Polynomial::term(spec.table(), m, Scalar::one(spec.characteristic()));
        ModuleElement { spec, poly }
    }

    /// Wrap a polynomial; monomials outside the truncation box are rejected.
    pub fn from_poly(spec: ModuleSpec, poly: Polynomial) -> Result<Self, CpError> {
        if poly.characteristic() != spec.characteristic() {
            return Err(CpError::Poly(PolyError::CharacteristicMismatch {
                left: spec.characteristic(),
                right: poly.characteristic(),
            }));
        }
        for (m, _) in poly.terms() {
            if !spec.in_box(m) {
                return Err(CpError::OutOfRange(format!(
                    "monomial {} exceeds the truncation bounds",
                    format_monomial(spec.table(), m)
                )));
            }
        }
        Ok(ModuleElement { spec, poly })
    }

    pub fn parse(spec: ModuleSpec, s: &str) -> Result<Self, CpError> {
        let poly = parse_polynomial(s, spec.table(), spec.characteristic())?;
        ModuleElement::from_poly(spec, poly)
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Leading-form degree of a nonzero element (its filtration level).
    pub fn star_degree(&self) -> u32 {
        self.poly.min_degree()
    }

    fn truncate(&self, poly: Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.spec.table(), self.spec.characteristic());
        for (m, c) in poly.terms() {
            if self.spec.in_box(m) {
                out = out
                    .add(&Polynomial::term(self.spec.table(), m.clone(), c.clone()))
                    .expect("same ring");
            }
        }
        out
    }

    pub fn add(&self, other: &ModuleElement) -> Result<ModuleElement, CpError> {
        if self.spec != other.spec {
            return Err(CpError::SpecMismatch);
        }
        Ok(ModuleElement { spec: self.spec.clone(), poly: self.poly.add(&other.poly)? })
    }

    pub fn sub(&self, other: &ModuleElement) -> Result<ModuleElement, CpError> {
        if self.spec != other.spec {
            return Err(CpError::SpecMismatch);
        }
        Ok(ModuleElement { spec: self.spec.clone(), poly: self.poly.sub(&other.poly)? })
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Result<ModuleElement, CpError> {
        Ok(ModuleElement { spec: self.spec.clone(), poly: self.poly.scalar_mul(c)? })
    }

    /// Product in the truncated ring.
    pub fn mul(&self, other: &ModuleElement) -> Result<ModuleElement, CpError> {
        if self.spec != other.spec {
            return Err(CpError::SpecMismatch);
        }
        let raw = self.poly.mul(&other.poly)?;
        Ok(ModuleElement { spec: self.spec.clone(), poly: self.truncate(raw) })
    }

    /// sigma = multiplication by prod(1 + t_i), truncated.
    pub fn sigma(&self) -> ModuleElement {
        let spec = &self.spec;
        let mut factor = Polynomial::one(spec.table(), spec.characteristic());
        for i in 0..spec.dims.len() {
            let one_plus = Polynomial::one(spec.table(), spec.characteristic())
                .add(&Polynomial::var(spec.table(), i, spec.characteristic()))
                .expect("same ring");
            factor = factor.mul(&one_plus).expect("same ring");
        }
        let raw = self.poly.mul(&factor).expect("same ring");
        ModuleElement { spec: spec.clone(), poly: self.truncate(raw) }
    }

    /// Delta = sigma - 1.
    pub fn delta(&self) -> ModuleElement {
        let s = self.sigma();
        s.sub(self).expect("same spec")
    }

    pub fn delta_power(&self, k: usize) -> ModuleElement {
        let mut e = self.clone();
        for _ in 0..k {
            e = e.delta();
        }
        e
    }

    /// Coefficient-wise reduction mod p; requires integer coefficients.
    pub fn rho(&self, p: u64) -> Result<ModuleElement, CpError> {
        if self.spec.characteristic() != 0 {
            return Err(CpError::Poly(PolyError::NotRational));
        }
        for (m, c) in self.poly.terms() {
            if !c.is_integer() {
                return Err(CpError::NonIntegerCoefficient {
                    monomial: format_monomial(self.spec.table(), m),
                });
            }
        }
        let spec = ModuleSpec::new(&self.spec.dims, p)?;
        let poly = self.poly.reduce_mod_p(p)?;
        Ok(ModuleElement { spec, poly })
    }

    /// Coordinates on the spec's ascending basis.
    pub fn coordinates(&self, basis: &[Monomial]) -> Vec<Scalar> {
        self.poly.coordinates(basis)
    }

    pub fn from_coordinates(
        spec: ModuleSpec,
        basis: &[Monomial],
        coords: &[Scalar],
    ) -> ModuleElement {
        let poly = Polynomial::from_coordinates(
            spec.table(),
            spec.characteristic(),
            basis,
            coords,
        );
        ModuleElement { spec, poly }
    }
}

/// Maximal r with `omega` in the image of Delta^{r-1}; requires a nonzero
/// socle element. Computed by successive exact solves.
pub fn length(omega: &ModuleElement) -> Result<usize, CpError> {
    if omega.is_zero() {
        return Err(CpError::ZeroElement);
    }
    if !omega.delta().is_zero() {
        return Err(CpError::NotSocle);
    }
    let spec = omega.spec();
    let basis = spec.basis();
    let d = spec.delta_matrix();
    let target = omega.coordinates(&basis);
    let mut power = Matrix::identity(basis.len(), spec.characteristic());
    let mut ell = 1;
    for k in 1..=spec.max_block() {
        power = power.mul(&d)?;
        if power.solve(&target)?.is_some() {
            ell = k + 1;
        } else {
            break;
        }
    }
    Ok(ell)
}

/// Indecomposable decomposition of the tensor product by rank counting:
/// the number of blocks of size at least k is rank Delta^{k-1} - rank
/// Delta^k, so the multiplicity of size k is r_{k-1} - 2 r_k + r_{k+1}.
pub fn decompose(spec: &ModuleSpec) -> Result<RepElement, CpError> {
    let d = spec.delta_matrix();
    let maxb = spec.max_block();
    let mut ranks = Vec::with_capacity(maxb + 2);
    ranks.push(spec.dim()); // rank of Delta^0
    let mut power = Matrix::identity(spec.dim(), spec.characteristic());
    for _ in 1..=maxb + 1 {
        power = power.mul(&d)?;
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    while ranks.len() < maxb + 2 {
        ranks.push(0);
    }
    let tag = if spec.characteristic() == 0 {
        RingTag::M
    } else {
        RingTag::V(spec.characteristic())
    };
    let mut out = RepElement::zero(tag);
    for k in 1..=maxb {
        let mult = (ranks[k - 1] + ranks[k + 1]).checked_sub(2 * ranks[k]).ok_or_else(|| {
            CpError::Internal("rank sequence is not convex".into())
        })?;
        if mult > 0 {
            out.add_label(k, mult as u64)
                .map_err(|e| CpError::Internal(e.to_string()))?;
        }
    }
    if out.dim() as usize != spec.dim() {
        return Err(CpError::Internal("block sizes do not sum to the dimension".into()));
    }
    Ok(out)
}

/// Lengths of the reductions mod p of the socle witnesses omega_r,
/// r = 0..m-1, computed by linear algebra over F_p.
pub fn modular_lengths(m: usize, n: usize, p: u64) -> Result<Vec<usize>, CpError> {
    if !(1 <= m && m <= n && n as u64 <= p) {
        return Err(CpError::OutOfRange(format!("need 1 <= m <= n <= p, got ({m},{n},{p})")));
    }
    let witnesses = integral_witnesses(m, n)?;
    let mut out = Vec::with_capacity(m);
    for w in &witnesses {
        let red = w.omega.rho(p)?;
        out.push(length(&red)?);
    }
    Ok(out)
}

/// Closed-form Hilbert function of the bigraded tensor product of chains of
/// lengths m and n at total degree j.
pub fn hilbert_function(m: usize, n: usize, j: usize) -> usize {
    let (m, n) = if m <= n { (m, n) } else { (n, m) };
    if j <= m.saturating_sub(1) {
        j + 1
    } else if j < n {
        m
    } else if j <= m + n - 2 {
        m + n - j - 1
    } else {
        0
    }
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n.max(0) || n < 0 {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Determinant of the (r+1) x (r+1) binomial matrix with entries
/// binom(m+n-2r-2, m-r-1+i-j); this is the Gram matrix of the graded
/// multiplication map from degree r to degree m+n-r-2.
pub fn pascal_det(m: usize, n: usize, r: usize) -> Result<BigInt, CpError> {
    if !(1 <= m && m <= n && r < m) {
        return Err(CpError::OutOfRange(format!("need 0 <= r <= m-1 <= n-1, got ({m},{n},{r})")));
    }
    let size = r + 1;
    let top = (m + n) as i64 - 2 * r as i64 - 2;
    let shift = m as i64 - r as i64 - 1;
    let mat = Matrix::from_fn(size, size, 0, |i, j| {
        Scalar::from_bigint(binomial(top, shift + i as i64 - j as i64))
    });
    mat.det()
        .as_bigint()
        .ok_or_else(|| CpError::Internal("integer determinant expected".into()))
}
