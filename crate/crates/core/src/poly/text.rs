//! Exact text format for polynomials: a sum of `coeff*var1^e1*var2^e2`
//! terms, with integer or `a/b` coefficients. Printing and parsing
//! round-trip exactly.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::exactalg::Scalar;

use super::monomial::Monomial;
use super::order::TermOrder;
use super::polynomial::{PolyError, Polynomial};
use super::table::VarTable;

/// Monomial in the table's variable order, `*`-joined, `1` for the empty
/// monomial.
pub fn format_monomial(table: &VarTable, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (idx, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(table.name(idx).to_string());
        } else {
            parts.push(format!("{}^{}", table.name(idx), e));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Terms descending under `order`; the sign is pulled into the separator for
/// rational coefficients.
pub fn format_polynomial(p: &Polynomial, order: &TermOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Monomial, &Scalar)> = p.terms().collect();
    terms.sort_by(|a, b| order.cmp(b.0, a.0));
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let (sign_neg, abs): (bool, String) = match c {
            Scalar::Rat(r) => (r.is_negative(), format_ratio(&r.abs())),
            Scalar::Mod { value, .. } => (false, value.to_string()),
        };
        if i == 0 {
            if sign_neg {
                out.push('-');
            }
        } else {
            out.push_str(if sign_neg { " - " } else { " + " });
        }
        let mono = format_monomial(p.table(), m);
        if mono == "1" {
            out.push_str(&abs);
        } else if abs == "1" {
            out.push_str(&mono);
        } else {
            out.push_str(&abs);
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

fn format_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

struct Lexer<'a> {
    chars: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer { chars: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn read_uint(&mut self) -> Result<String, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PolyError::Parse(format!("expected digits at byte {}", self.pos)));
        }
        Ok(core::str::from_utf8(&self.chars[start..self.pos]).unwrap().to_string())
    }

    fn read_ident(&mut self) -> Result<String, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PolyError::Parse(format!("expected identifier at byte {}", self.pos)));
        }
        Ok(core::str::from_utf8(&self.chars[start..self.pos]).unwrap().to_string())
    }
}

/// Parse the text format over the given table and characteristic.
pub fn parse_polynomial(
    s: &str,
    table: &Arc<VarTable>,
    characteristic: u64,
) -> Result<Polynomial, PolyError> {
    let mut lx = Lexer::new(s);
    let mut out = Polynomial::zero(table, characteristic);
    let mut first = true;
    loop {
        let Some(c) = lx.peek() else {
            if first {
                return Err(PolyError::Parse("empty input".into()));
            }
            break;
        };
        let negate = match c {
            b'+' => {
                lx.bump();
                false
            }
            b'-' => {
                lx.bump();
                true
            }
            _ if first => false,
            _ => {
                return Err(PolyError::Parse(format!(
                    "expected + or - before term at byte {}",
                    lx.pos
                )))
            }
        };
        first = false;
        let term = parse_term(&mut lx, table, characteristic)?;
        out = if negate { out.sub(&term)? } else { out.add(&term)? };
        if lx.peek().is_none() {
            break;
        }
    }
    Ok(out)
}

fn parse_term(
    lx: &mut Lexer,
    table: &Arc<VarTable>,
    characteristic: u64,
) -> Result<Polynomial, PolyError> {
    let mut coeff: Option<Scalar> = None;
    let mut exps = alloc::vec![0u32; table.len()];
    let mut any = false;
    while let Some(c) = lx.peek() {
        if c.is_ascii_digit() {
            if any {
                return Err(PolyError::Parse(format!(
                    "unexpected number inside term at byte {}",
                    lx.pos
                )));
            }
            let num = lx.read_uint()?;
            let den = if lx.peek() == Some(b'/') {
                lx.bump();
                Some(lx.read_uint()?)
            } else {
                None
            };
            coeff = Some(scalar_from_strings(&num, den.as_deref(), characteristic)?);
            any = true;
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let name = lx.read_ident()?;
            let idx = table
                .index_of(&name)
                .ok_or_else(|| PolyError::Parse(format!("unknown variable {name}")))?;
            let e: u32 = if lx.peek() == Some(b'^') {
                lx.bump();
                lx.read_uint()?
                    .parse()
                    .map_err(|_| PolyError::Parse("exponent overflow".into()))?
            } else {
                1
            };
            exps[idx] += e;
            any = true;
        } else {
            break;
        }
        if lx.peek() == Some(b'*') {
            lx.bump();
            continue;
        }
        break;
    }
    if !any {
        return Err(PolyError::Parse(format!("empty term at byte {}", lx.pos)));
    }
    let c = coeff.unwrap_or_else(|| Scalar::one(characteristic));
    Ok(Polynomial::term(table, Monomial(exps), c))
}

fn scalar_from_strings(
    num: &str,
    den: Option<&str>,
    characteristic: u64,
) -> Result<Scalar, PolyError> {
    let n = BigInt::parse_bytes(num.as_bytes(), 10)
        .ok_or_else(|| PolyError::Parse("bad integer".into()))?;
    let r = match den {
        None => BigRational::from_integer(n),
        Some(d) => {
            let d = BigInt::parse_bytes(d.as_bytes(), 10)
                .ok_or_else(|| PolyError::Parse("bad integer".into()))?;
            if d == BigInt::from(0) {
                return Err(PolyError::Parse("zero denominator".into()));
            }
            BigRational::new(n, d)
        }
    };
    if characteristic == 0 {
        Ok(Scalar::Rat(r))
    } else {
        Scalar::Rat(r)
            .reduce_mod(characteristic)
            .map_err(|e| PolyError::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn print_and_parse_round_trip() {
        let t = VarTable::simple(&["x", "y"]);
        let ord = TermOrder::index(&t);
        for s in ["0", "1", "-1", "x", "-x + y", "3*x^2*y - 1/2*y^3 + 7", "x*y"] {
            let p = parse_polynomial(s, &t, 0).unwrap();
            let printed = format_polynomial(&p, &ord);
            let q = parse_polynomial(&printed, &t, 0).unwrap();
            assert_eq!(p, q, "round trip through {printed}");
        }
    }

    #[test]
    fn canonical_print() {
        let t = VarTable::simple(&["x", "y"]);
        let ord = TermOrder::index(&t);
        let p = parse_polynomial("y^3*1/2 - x^2", &t, 0);
        // numbers may not follow variables
        assert!(p.is_err());
        let p = parse_polynomial("1/2*y^3 - x^2", &t, 0).unwrap();
        assert_eq!(format_polynomial(&p, &ord), "1/2*y^3 - x^2");
    }

    #[test]
    fn mod_p_coefficients_normalize() {
        let t = VarTable::simple(&["x"]);
        let ord = TermOrder::index(&t);
        let p = parse_polynomial("-x + 7", &t, 5).unwrap();
        assert_eq!(format_polynomial(&p, &ord), "4*x + 2");
    }

    #[test]
    fn unknown_variable_and_garbage_rejected() {
        let t = VarTable::simple(&["x"]);
        assert!(parse_polynomial("q + 1", &t, 0).is_err());
        assert!(parse_polynomial("x +", &t, 0).is_err());
        assert!(parse_polynomial("", &t, 0).is_err());
    }
}
