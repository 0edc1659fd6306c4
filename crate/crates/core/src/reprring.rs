//! Arithmetic in three representation rings: complex SL2 classes with the
//! Clebsch-Gordan product, the unipotent integer-matrix classes M_d, and the
//! characteristic-p cyclic group classes V_d with the two-branch product.
//! Chebyshev expansions express a class polynomially in the two-dimensional
//! generator; the specialization map carries M classes to V classes.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::exactalg::{is_prime, Scalar};
use crate::poly::{Polynomial, VarTable};

/// Which ring a multiplicity vector lives in. Labels are dimensions:
/// `R` uses form degree d (dimension d+1), `M` and `V` use the module
/// dimension itself (label 1 is the trivial class).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingTag {
    R,
    M,
    V(u64),
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::R => write!(f, "R"),
            RingTag::M => write!(f, "M"),
            RingTag::V(p) => write!(f, "V mod {p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepError {
    RingMismatch,
    BadLabel { label: usize, reason: String },
    ZeroDegree,
    NotPrime(u64),
    NegativeMultiplicity { label: usize, value: i64 },
}

impl fmt::Display for RepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepError::RingMismatch => write!(f, "elements belong to different rings"),
            RepError::BadLabel { label, reason } => write!(f, "bad label {label}: {reason}"),
            RepError::ZeroDegree => write!(f, "dimension label must be at least 1"),
            RepError::NotPrime(p) => write!(f, "{p} is not prime"),
            RepError::NegativeMultiplicity { label, value } => {
                write!(f, "negative multiplicity {value} for label {label}")
            }
        }
    }
}

/// Non-negative multiplicity vector over the isomorphism classes of one
/// ring; genuine module classes are always of this effective form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepElement {
    tag: RingTag,
    mult: BTreeMap<usize, u64>,
}

impl RepElement {
    pub fn zero(tag: RingTag) -> Self {
        RepElement { tag, mult: BTreeMap::new() }
    }

    pub fn single(tag: RingTag, label: usize, mult: u64) -> Result<Self, RepError> {
        check_label(tag, label)?;
        let mut e = RepElement::zero(tag);
        if mult > 0 {
            e.mult.insert(label, mult);
        }
        Ok(e)
    }

    pub fn tag(&self) -> RingTag {
        self.tag
    }

    pub fn multiplicities(&self) -> &BTreeMap<usize, u64> {
        &self.mult
    }

    pub fn multiplicity(&self, label: usize) -> u64 {
        self.mult.get(&label).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &RepElement) -> Result<RepElement, RepError> {
        if self.tag != other.tag {
            return Err(RepError::RingMismatch);
        }
        let mut out = self.clone();
        for (&l, &m) in &other.mult {
            *out.mult.entry(l).or_insert(0) += m;
        }
        Ok(out)
    }

    pub fn add_label(&mut self, label: usize, mult: u64) -> Result<(), RepError> {
        check_label(self.tag, label)?;
        if mult > 0 {
            *self.mult.entry(label).or_insert(0) += mult;
        }
        Ok(())
    }

    /// Additive dimension functional.
    pub fn dim(&self) -> u64 {
        self.mult
            .iter()
            .map(|(&l, &m)| m * matches!(self.tag, RingTag::R).then_some(l + 1).unwrap_or(l) as u64)
            .sum()
    }

    /// Total number of indecomposable summands (socle dimension).
    pub fn summand_count(&self) -> u64 {
        self.mult.values().sum()
    }
}

impl fmt::Display for RepElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return write!(f, "0");
        }
        let letter = match self.tag {
            RingTag::R => "R",
            RingTag::M => "M",
            RingTag::V(_) => "V",
        };
        let mut first = true;
        for (&l, &m) in &self.mult {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{letter}{l}")?;
            } else {
                write!(f, "{m}*{letter}{l}")?;
            }
        }
        Ok(())
    }
}

fn check_label(tag: RingTag, label: usize) -> Result<(), RepError> {
    match tag {
        RingTag::R => Ok(()),
        RingTag::M => {
            if label == 0 {
                Err(RepError::ZeroDegree)
            } else {
                Ok(())
            }
        }
        RingTag::V(p) => {
            if label == 0 {
                Err(RepError::ZeroDegree)
            } else if label as u64 > p {
                Err(RepError::BadLabel {
                    label,
                    reason: alloc::format!("exceeds the prime {p}"),
                })
            } else {
                Ok(())
            }
        }
    }
}

/// Clebsch-Gordan product of SL2 form classes:
/// R_m R_n = sum_{k=0}^{min(m,n)} R_{|n-m|+2k}.
pub fn product_r(a: &RepElement, b: &RepElement) -> Result<RepElement, RepError> {
    if a.tag != RingTag::R || b.tag != RingTag::R {
        return Err(RepError::RingMismatch);
    }
    let mut out = RepElement::zero(RingTag::R);
    for (&m, &am) in &a.mult {
        for (&n, &bn) in &b.mult {
            let lo = m.abs_diff(n);
            for k in 0..=m.min(n) {
                out.add_label(lo + 2 * k, am * bn)?;
            }
        }
    }
    Ok(out)
}

/// Product of unipotent integer-matrix classes:
/// M_m M_n = sum_{k=1}^{min(m,n)} M_{|n-m|+2k-1}.
pub fn product_m(a: &RepElement, b: &RepElement) -> Result<RepElement, RepError> {
    if a.tag != RingTag::M || b.tag != RingTag::M {
        return Err(RepError::RingMismatch);
    }
    let mut out = RepElement::zero(RingTag::M);
    for (&m, &am) in &a.mult {
        for (&n, &bn) in &b.mult {
            let lo = m.abs_diff(n);
            for k in 1..=m.min(n) {
                out.add_label(lo + 2 * k - 1, am * bn)?;
            }
        }
    }
    Ok(out)
}

/// Two-branch product of cyclic-group classes in characteristic p.
/// For 1 <= m <= n <= p:
/// small case m+n <= p+1: sum_{s=1}^{m} V_{n-m+2s-1};
/// large case m+n >= p:   sum_{s=1}^{p-n} V_{n-m+2s-1} + (m+n-p) V_p.
pub fn product_v(a: &RepElement, b: &RepElement) -> Result<RepElement, RepError> {
    let p = match (a.tag, b.tag) {
        (RingTag::V(p), RingTag::V(q)) if p == q => p as usize,
        _ => return Err(RepError::RingMismatch),
    };
    let mut out = RepElement::zero(a.tag);
    for (&la, &am) in &a.mult {
        for (&lb, &bn) in &b.mult {
            let (m, n) = if la <= lb { (la, lb) } else { (lb, la) };
            let mult = am * bn;
            if m + n <= p + 1 {
                for s in 1..=m {
                    out.add_label(n - m + 2 * s - 1, mult)?;
                }
            } else {
                for s in 1..=(p - n) {
                    out.add_label(n - m + 2 * s - 1, mult)?;
                }
                out.add_label(p, (m + n - p) as u64 * mult)?;
            }
        }
    }
    Ok(out)
}

/// Integer multiplicity vector used while reducing through the Chebyshev
/// recursion, where formal negatives can appear transiently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedRep {
    tag: RingTag,
    mult: BTreeMap<usize, i64>,
}

impl SignedRep {
    pub fn zero(tag: RingTag) -> Self {
        SignedRep { tag, mult: BTreeMap::new() }
    }

    pub fn from_effective(e: &RepElement) -> Self {
        SignedRep {
            tag: e.tag,
            mult: e.mult.iter().map(|(&l, &m)| (l, m as i64)).collect(),
        }
    }

    pub fn tag(&self) -> RingTag {
        self.tag
    }

    pub fn multiplicities(&self) -> &BTreeMap<usize, i64> {
        &self.mult
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn add_label(&mut self, label: usize, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.mult.entry(label).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.mult.remove(&label);
        }
    }

    pub fn add(&self, other: &SignedRep) -> Result<SignedRep, RepError> {
        if self.tag != other.tag {
            return Err(RepError::RingMismatch);
        }
        let mut out = self.clone();
        for (&l, &m) in &other.mult {
            out.add_label(l, m);
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> SignedRep {
        let mut out = SignedRep::zero(self.tag);
        for (&l, &m) in &self.mult {
            out.add_label(l, c * m);
        }
        out
    }

    /// A genuine module class has no negative multiplicities; a negative
    /// entry here means the input was not effective (or a bug upstream).
    pub fn try_effective(&self) -> Result<RepElement, RepError> {
        let mut out = RepElement::zero(self.tag);
        for (&l, &m) in &self.mult {
            if m < 0 {
                return Err(RepError::NegativeMultiplicity { label: l, value: m });
            }
            out.add_label(l, m as u64)?;
        }
        Ok(out)
    }
}

impl fmt::Display for SignedRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return write!(f, "0");
        }
        let letter = match self.tag {
            RingTag::R => "R",
            RingTag::M => "M",
            RingTag::V(_) => "V",
        };
        let mut first = true;
        for (&l, &m) in &self.mult {
            let neg = m < 0;
            let a = m.unsigned_abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if a == 1 {
                write!(f, "{letter}{l}")?;
            } else {
                write!(f, "{a}*{letter}{l}")?;
            }
        }
        Ok(())
    }
}

fn cheb_table() -> Arc<VarTable> {
    VarTable::simple(&["X"])
}

/// Dimension-indexed Chebyshev expansion: the integer polynomial P_d with
/// P_1 = 1, P_2 = X and P_{d+1} = X P_d - P_{d-1}, so that substituting the
/// class of the 2-dimensional module for X yields the d-dimensional class.
/// The ring tag only records which generator X stands for.
pub fn chebyshev_expand(d: usize, _ring: RingTag) -> Result<Polynomial, RepError> {
    if d == 0 {
        return Err(RepError::ZeroDegree);
    }
    let t = cheb_table();
    let mut prev = Polynomial::one(&t, 0);
    if d == 1 {
        return Ok(prev);
    }
    let x = Polynomial::var(&t, 0, 0);
    let mut cur = x.clone();
    for _ in 2..d {
        let next = cur.mul(&x).unwrap().sub(&prev).unwrap();
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// The degree-p kernel polynomial q with q(T) = P_{p+1} - 2 P_p + P_{p-1};
/// evaluating it at the class of the 2-dimensional module gives zero in the
/// characteristic-p ring.
pub fn kernel_poly(p: u64) -> Result<Polynomial, RepError> {
    if !is_prime(p) {
        return Err(RepError::NotPrime(p));
    }
    let tag = RingTag::V(p);
    let a = chebyshev_expand(p as usize + 1, tag)?;
    let b = chebyshev_expand(p as usize, tag)?;
    let c = chebyshev_expand(p as usize - 1, tag)?;
    let two = Scalar::from_int(2);
    Ok(a.sub(&b.scalar_mul(&two).unwrap()).unwrap().add(&c).unwrap())
}

/// Specialization of M classes into the characteristic-p ring: M_d maps to
/// V_d for d <= p and reduces through V_{d} = V_2 V_{d-1} - V_{d-2} above p.
/// The result is reported as a signed combination; genuine module classes
/// resolve to effective elements.
pub fn phi_map(a: &RepElement, p: u64) -> Result<SignedRep, RepError> {
    if a.tag != RingTag::M {
        return Err(RepError::RingMismatch);
    }
    if !is_prime(p) {
        return Err(RepError::NotPrime(p));
    }
    let tag = RingTag::V(p);
    let mut out = SignedRep::zero(tag);
    let mut memo: BTreeMap<usize, SignedRep> = BTreeMap::new();
    for (&d, &m) in &a.mult {
        let img = phi_label(d, p, tag, &mut memo)?;
        out = out.add(&img.scale(m as i64))?;
    }
    Ok(out)
}

fn phi_label(
    d: usize,
    p: u64,
    tag: RingTag,
    memo: &mut BTreeMap<usize, SignedRep>,
) -> Result<SignedRep, RepError> {
    if let Some(v) = memo.get(&d) {
        return Ok(v.clone());
    }
    let result = if d as u64 <= p {
        SignedRep::from_effective(&RepElement::single(tag, d, 1)?)
    } else {
        // V_d := V_2 * V_{d-1} - V_{d-2}, with the product expanded by the
        // two-branch rule (labels stay at most p).
        let prev = phi_label(d - 1, p, tag, memo)?;
        let prev2 = phi_label(d - 2, p, tag, memo)?;
        mul_by_v2(&prev, tag)?.add(&prev2.scale(-1))?
    };
    memo.insert(d, result.clone());
    Ok(result)
}

fn mul_by_v2(a: &SignedRep, tag: RingTag) -> Result<SignedRep, RepError> {
    let v2 = RepElement::single(tag, 2, 1)?;
    let mut out = SignedRep::zero(tag);
    for (&l, &m) in &a.mult {
        let prod = product_v(&RepElement::single(tag, l, 1)?, &v2)?;
        out = out.add(&SignedRep::from_effective(&prod).scale(m))?;
    }
    Ok(out)
}

/// Evaluate an integer univariate polynomial at the class of the
/// 2-dimensional module in the characteristic-p ring, expanding powers with
/// the two-branch product and combining with signed coefficients.
pub fn evaluate_at_v2(poly: &Polynomial, p: u64) -> Result<SignedRep, RepError> {
    if !is_prime(p) {
        return Err(RepError::NotPrime(p));
    }
    let tag = RingTag::V(p);
    assert_eq!(poly.table().len(), 1, "univariate polynomial expected");
    let v2 = RepElement::single(tag, 2, 1)?;
    let one = RepElement::single(tag, 1, 1)?;
    let mut out = SignedRep::zero(tag);
    // Powers of the generator, lowest first.
    let max_e = poly.terms().map(|(m, _)| m.exponent(0)).max().unwrap_or(0);
    let mut powers: Vec<RepElement> = Vec::with_capacity(max_e as usize + 1);
    powers.push(one);
    for k in 1..=max_e {
        let next = product_v(&powers[(k - 1) as usize], &v2)?;
        powers.push(next);
    }
    for (m, c) in poly.terms() {
        let coeff = c
            .as_bigint()
            .and_then(|b| i64::try_from(b).ok())
            .expect("integer coefficients expected");
        out = out.add(&SignedRep::from_effective(&powers[m.exponent(0) as usize]).scale(coeff))?;
    }
    Ok(out)
}

/// Parse "V3 + 2*V5" style class expressions (used by the CLI and tests).
pub fn parse_rep(s: &str, tag: RingTag) -> Result<RepElement, RepError> {
    let letter = match tag {
        RingTag::R => 'R',
        RingTag::M => 'M',
        RingTag::V(_) => 'V',
    };
    let mut out = RepElement::zero(tag);
    for part in s.split('+') {
        let part = part.trim();
        if part.is_empty() || part == "0" {
            continue;
        }
        let (mult, rest) = match part.split_once('*') {
            Some((m, r)) => (
                m.trim().parse::<u64>().map_err(|_| RepError::BadLabel {
                    label: 0,
                    reason: "bad multiplicity".into(),
                })?,
                r.trim(),
            ),
            None => (1, part),
        };
        let label: usize = rest
            .strip_prefix(letter)
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| RepError::BadLabel { label: 0, reason: alloc::format!("bad class {rest}") })?;
        out.add_label(label, mult)?;
    }
    Ok(out)
}

/// Convenience constructor for a single class.
pub fn class(tag: RingTag, label: usize) -> RepElement {
    RepElement::single(tag, label, 1).expect("valid label")
}
