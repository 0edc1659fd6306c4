use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Deterministic trial-division primality test; p here is always small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact number: a rational (characteristic 0, integers are the
/// denominator-one case) or a residue modulo a prime p.
///
/// Invariants: rationals are stored in lowest terms with positive
/// denominator (enforced by `BigRational`); residues lie in `[0, p)` with p
/// prime. Arithmetic between different characteristics is a programming
/// error; the polynomial and matrix layers check compatibility before any
/// scalar arithmetic happens.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, prime: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarError {
    /// Reduction mod p was asked of a rational whose denominator p divides.
    DenominatorDivisibleByP { prime: u64, denominator: String },
    NotPrime(u64),
    CharacteristicMismatch { left: u64, right: u64 },
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::DenominatorDivisibleByP { prime, denominator } => {
                write!(f, "denominator {denominator} is divisible by {prime}")
            }
            ScalarError::NotPrime(p) => write!(f, "{p} is not prime"),
            ScalarError::CharacteristicMismatch { left, right } => {
                write!(f, "characteristic mismatch: {left} vs {right}")
            }
        }
    }
}

impl Scalar {
    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Rat(BigRational::from_integer(n))
    }

    /// Rational n/d in lowest terms. Panics if d = 0.
    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Residue of `v` mod the prime `p`.
    pub fn residue(v: i64, p: u64) -> Result<Self, ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        let m = v.rem_euclid(p as i64) as u64;
        Ok(Scalar::Mod { value: m, prime: p })
    }

    pub fn zero(characteristic: u64) -> Self {
        if characteristic == 0 {
            Scalar::Rat(BigRational::zero())
        } else {
            Scalar::Mod { value: 0, prime: characteristic }
        }
    }

    pub fn one(characteristic: u64) -> Self {
        if characteristic == 0 {
            Scalar::Rat(BigRational::one())
        } else {
            Scalar::Mod { value: 1, prime: characteristic }
        }
    }

    /// 0 for rationals, p for residues mod p.
    pub fn characteristic(&self) -> u64 {
        match self {
            Scalar::Rat(_) => 0,
            Scalar::Mod { prime, .. } => *prime,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// True for rationals with denominator one (and for all residues).
    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_integer(),
            Scalar::Mod { .. } => true,
        }
    }

    pub fn as_ratio(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    /// The underlying integer, when the scalar is a denominator-one rational.
    pub fn as_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    pub fn residue_value(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rat(_) => None,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Mod { value, prime } => {
                if *value == 0 {
                    None
                } else {
                    Some(Scalar::Mod { value: mod_inv(*value, *prime), prime: *prime })
                }
            }
        }
    }

    pub fn pow(&self, mut k: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.characteristic());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Coefficient-wise reduction mod p. Fails when p divides the
    /// denominator; otherwise n/d maps to n * d^{-1} in F_p.
    pub fn reduce_mod(&self, p: u64) -> Result<Scalar, ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        match self {
            Scalar::Mod { prime, .. } => {
                if *prime == p {
                    Ok(self.clone())
                } else {
                    Err(ScalarError::CharacteristicMismatch { left: *prime, right: p })
                }
            }
            Scalar::Rat(r) => {
                let pb = BigInt::from(p);
                let den = r.denom();
                if (den % &pb).is_zero() {
                    return Err(ScalarError::DenominatorDivisibleByP {
                        prime: p,
                        denominator: den.to_str_radix(10),
                    });
                }
                let n = bigint_mod_u64(r.numer(), p);
                let d = bigint_mod_u64(den, p);
                Ok(Scalar::Mod { value: mulmod(n, mod_inv(d, p), p), prime: p })
            }
        }
    }

    fn check_same_char(&self, other: &Scalar) {
        let (a, b) = (self.characteristic(), other.characteristic());
        assert!(a == b, "characteristic mismatch: {a} vs {b}");
    }
}

fn bigint_mod_u64(n: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let mut r = n % &pb;
    if r.sign() == Sign::Minus {
        r += &pb;
    }
    r.to_u64().expect("reduced residue fits in u64")
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse mod a prime via Fermat.
fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same_char(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, prime }, Scalar::Mod { value: b, .. }) => {
                Scalar::Mod { value: (a + b) % prime, prime: *prime }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_same_char(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { value: a, prime }, Scalar::Mod { value: b, .. }) => {
                Scalar::Mod { value: (a + prime - b) % prime, prime: *prime }
            }
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same_char(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, prime }, Scalar::Mod { value: b, .. }) => {
                Scalar::Mod { value: mulmod(*a, *b, *prime), prime: *prime }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, prime } => {
                Scalar::Mod { value: (prime - value) % prime, prime: *prime }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
