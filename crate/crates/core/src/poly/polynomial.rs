use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactalg::{Scalar, ScalarError};

use super::monomial::Monomial;
use super::order::TermOrder;
use super::table::{same_table, VarTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    TableMismatch,
    CharacteristicMismatch { left: u64, right: u64 },
    ZeroPolynomial,
    MissingImage { variable: String },
    Reduction { monomial: String, source: ScalarError },
    NotRational,
    Parse(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::TableMismatch => write!(f, "polynomials use different variable tables"),
            PolyError::CharacteristicMismatch { left, right } => {
                write!(f, "characteristic mismatch: {left} vs {right}")
            }
            PolyError::ZeroPolynomial => write!(f, "zero polynomial"),
            PolyError::MissingImage { variable } => {
                write!(f, "no image provided for variable {variable}")
            }
            PolyError::Reduction { monomial, source } => {
                write!(f, "cannot reduce coefficient of {monomial}: {source}")
            }
            PolyError::NotRational => write!(f, "operation requires characteristic zero"),
            PolyError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

/// Sparse polynomial: monomial -> nonzero coefficient, all coefficients of
/// one characteristic, variables described by a shared table. The map is
/// keyed by the storage order so iteration is deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    table: Arc<VarTable>,
    characteristic: u64,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(table: &Arc<VarTable>, characteristic: u64) -> Self {
        Polynomial { table: table.clone(), characteristic, terms: BTreeMap::new() }
    }

    pub fn constant(table: &Arc<VarTable>, c: Scalar) -> Self {
        let mut p = Polynomial::zero(table, c.characteristic());
        if !c.is_zero() {
            p.terms.insert(Monomial::one(table.len()), c);
        }
        p
    }

    pub fn one(table: &Arc<VarTable>, characteristic: u64) -> Self {
        Polynomial::constant(table, Scalar::one(characteristic))
    }

    pub fn var(table: &Arc<VarTable>, idx: usize, characteristic: u64) -> Self {
        Polynomial::term(table, Monomial::var(table.len(), idx, 1), Scalar::one(characteristic))
    }

    pub fn term(table: &Arc<VarTable>, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.0.len(), table.len(), "monomial length");
        let mut p = Polynomial::zero(table, c.characteristic());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.characteristic))
    }

    fn compatible(&self, other: &Polynomial) -> Result<(), PolyError> {
        if !same_table(&self.table, &other.table) {
            return Err(PolyError::TableMismatch);
        }
        if self.characteristic != other.characteristic {
            return Err(PolyError::CharacteristicMismatch {
                left: self.characteristic,
                right: other.characteristic,
            });
        }
        Ok(())
    }

    fn insert_add(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        let mut out = Polynomial::zero(&self.table, self.characteristic);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Result<Polynomial, PolyError> {
        if c.characteristic() != self.characteristic {
            return Err(PolyError::CharacteristicMismatch {
                left: self.characteristic,
                right: c.characteristic(),
            });
        }
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.table, self.characteristic));
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::one(&self.table, self.characteristic);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Greatest monomial of a nonzero polynomial under the given order.
    pub fn lead_monomial(&self, order: &TermOrder) -> Result<&Monomial, PolyError> {
        self.lead_term(order).map(|(m, _)| m)
    }

    pub fn lead_term(&self, order: &TermOrder) -> Result<(&Monomial, &Scalar), PolyError> {
        let mut best: Option<(&Monomial, &Scalar)> = None;
        for (m, c) in &self.terms {
            match best {
                None => best = Some((m, c)),
                Some((bm, _)) => {
                    if order.cmp(m, bm) == core::cmp::Ordering::Greater {
                        best = Some((m, c));
                    }
                }
            }
        }
        best.ok_or(PolyError::ZeroPolynomial)
    }

    /// Apply the ring homomorphism determined by `images` (indexed by the
    /// variables of this polynomial's table, with polynomials over `target`).
    /// Every variable that occurs must have an image.
    pub fn substitute(
        &self,
        target: &Arc<VarTable>,
        images: &BTreeMap<usize, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        for img in images.values() {
            if !same_table(img.table(), target) {
                return Err(PolyError::TableMismatch);
            }
            if img.characteristic() != self.characteristic {
                return Err(PolyError::CharacteristicMismatch {
                    left: self.characteristic,
                    right: img.characteristic(),
                });
            }
        }
        let mut out = Polynomial::zero(target, self.characteristic);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(target, c.clone());
            for (idx, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images.get(&idx).ok_or_else(|| PolyError::MissingImage {
                    variable: self.table.name(idx).into(),
                })?;
                acc = acc.mul(&img.pow(e)?)?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Partial derivative with respect to one variable. In characteristic p
    /// the usual rule applies with exponents read mod p.
    pub fn derivative(&self, idx: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.table, self.characteristic);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut me = m.clone();
            me.0[idx] -= 1;
            let factor = if self.characteristic == 0 {
                Scalar::from_int(e as i64)
            } else {
                Scalar::Mod {
                    value: (e as u64) % self.characteristic,
                    prime: self.characteristic,
                }
            };
            out.insert_add(me, c * &factor);
        }
        out
    }

    /// Multidegree of a monomial over this table's summands.
    pub fn monomial_multidegree(&self, m: &Monomial) -> Vec<u32> {
        multidegree_of(&self.table, m)
    }

    /// The common multidegree when multihomogeneous, `None` otherwise. The
    /// zero polynomial counts as multihomogeneous of degree zero.
    pub fn multidegree(&self) -> Option<Vec<u32>> {
        let mut iter = self.terms.keys();
        let Some(first) = iter.next() else {
            return Some(vec![0; self.table.num_summands()]);
        };
        let d = multidegree_of(&self.table, first);
        for m in iter {
            if multidegree_of(&self.table, m) != d {
                return None;
            }
        }
        Some(d)
    }

    pub fn is_multihomogeneous(&self) -> bool {
        self.multidegree().is_some()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Smallest total degree among the terms (the degree of the leading form
    /// of the associated graded element); zero polynomial reports 0.
    pub fn min_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).min().unwrap_or(0)
    }

    /// The homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        let mut out = Polynomial::zero(&self.table, self.characteristic);
        for (m, c) in &self.terms {
            if m.total_degree() == degree {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Coefficient-wise reduction mod p; fails on the first monomial whose
    /// coefficient has a denominator divisible by p.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Polynomial, PolyError> {
        let mut out = Polynomial::zero(&self.table, p);
        for (m, c) in &self.terms {
            let r = c.reduce_mod(p).map_err(|e| PolyError::Reduction {
                monomial: super::text::format_monomial(&self.table, m),
                source: e,
            })?;
            if !r.is_zero() {
                out.terms.insert(m.clone(), r);
            }
        }
        Ok(out)
    }

    /// Write a nonzero rational polynomial as c * g with g a primitive
    /// integer polynomial whose lead coefficient under `order` is positive.
    /// Returns (g, c).
    pub fn clear_denominators(
        &self,
        order: &TermOrder,
    ) -> Result<(Polynomial, Scalar), PolyError> {
        if self.characteristic != 0 {
            return Err(PolyError::NotRational);
        }
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.as_ratio().unwrap().denom());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            let n = (c.as_ratio().unwrap() * BigRational::from_integer(lcm.clone())).to_integer();
            content = content.gcd(&n);
        }
        // Sign: positive lead coefficient under the active order.
        let lead = self.lead_term(order)?.1.as_ratio().unwrap();
        if lead.is_negative() {
            content = -content;
        }
        let scale = BigRational::new(lcm, content.clone());
        let g = self.scalar_mul(&Scalar::Rat(scale.clone()))?;
        Ok((g, Scalar::Rat(scale.recip())))
    }

    /// The polynomial's coefficients as a coordinate vector over the given
    /// monomial basis (entries for monomials outside the basis are dropped;
    /// callers pick bases that contain the support).
    pub fn coordinates(&self, basis: &[Monomial]) -> Vec<Scalar> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn from_coordinates(
        table: &Arc<VarTable>,
        characteristic: u64,
        basis: &[Monomial],
        coords: &[Scalar],
    ) -> Polynomial {
        let mut out = Polynomial::zero(table, characteristic);
        for (m, c) in basis.iter().zip(coords) {
            if !c.is_zero() {
                out.insert_add(m.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_polynomial(self, &TermOrder::index(&self.table)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn multidegree_of(table: &VarTable, m: &Monomial) -> Vec<u32> {
    let mut d = vec![0u32; table.num_summands()];
    for (idx, &e) in m.0.iter().enumerate() {
        d[table.var(idx).summand] += e;
    }
    d
}

/// All monomials of exactly the given multidegree, ascending under `order`.
pub fn graded_monomial_basis(
    table: &Arc<VarTable>,
    multidegree: &[u32],
    order: &TermOrder,
) -> Vec<Monomial> {
    assert_eq!(multidegree.len(), table.num_summands());
    let mut out = Vec::new();
    let mut exps = vec![0u32; table.len()];
    fill_summand(table, multidegree, 0, &mut exps, &mut out);
    out.sort_by(|a, b| order.cmp(a, b));
    out
}

fn fill_summand(
    table: &Arc<VarTable>,
    multidegree: &[u32],
    summand: usize,
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if summand == multidegree.len() {
        out.push(Monomial(exps.clone()));
        return;
    }
    let vars: Vec<usize> =
        (0..table.len()).filter(|&i| table.var(i).summand == summand).collect();
    distribute(table, multidegree, summand, &vars, 0, multidegree[summand], exps, out);
}

#[allow(clippy::too_many_arguments)]
fn distribute(
    table: &Arc<VarTable>,
    multidegree: &[u32],
    summand: usize,
    vars: &[usize],
    pos: usize,
    remaining: u32,
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if pos == vars.len() {
        if remaining == 0 {
            fill_summand(table, multidegree, summand + 1, exps, out);
        }
        return;
    }
    if pos + 1 == vars.len() {
        exps[vars[pos]] = remaining;
        fill_summand(table, multidegree, summand + 1, exps, out);
        exps[vars[pos]] = 0;
        return;
    }
    for e in 0..=remaining {
        exps[vars[pos]] = e;
        distribute(table, multidegree, summand, vars, pos + 1, remaining - e, exps, out);
    }
    exps[vars[pos]] = 0;
}
