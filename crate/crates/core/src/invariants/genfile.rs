//! Text format for generator lists: a small header naming the module
//! (summand dimensions, prime, variable aliases) followed by one
//! polynomial per line in the shared polynomial text format.
//!
//! ```text
//! summands: 2,4
//! prime: 5
//! vars: y1 x1 ; w2 z2 y2 x2
//! gen: x1
//! gen: y2^2 - 2*x2*z2 + ...
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::poly::{format_polynomial, Polynomial};

use super::{ActionContext, InvariantError};

/// Serialize a context and generator list; `parse_gen_file` inverts this.
pub fn format_gen_file(ctx: &ActionContext, gens: &[Polynomial]) -> String {
    let mut out = String::new();
    out.push_str("summands: ");
    let dims: Vec<String> = ctx.dims().iter().map(|n| n.to_string()).collect();
    out.push_str(&dims.join(","));
    out.push('\n');
    out.push_str(&format!("prime: {}\n", ctx.characteristic()));
    out.push_str("vars: ");
    let mut groups = Vec::new();
    for (i, &n) in ctx.dims().iter().enumerate() {
        let mut names = Vec::with_capacity(n);
        for depth in 0..n {
            let idx = ctx.table().chain_var(i, depth).expect("chain variable");
            names.push(ctx.table().name(idx).to_string());
        }
        groups.push(names.join(" "));
    }
    out.push_str(&groups.join(" ; "));
    out.push('\n');
    for g in gens {
        out.push_str("gen: ");
        out.push_str(&format_polynomial(g, ctx.order()));
        out.push('\n');
    }
    out
}

/// Parse a generator list file into its context and polynomials.
pub fn parse_gen_file(text: &str) -> Result<(ActionContext, Vec<Polynomial>), InvariantError> {
    let mut dims: Option<Vec<usize>> = None;
    let mut prime: Option<u64> = None;
    let mut names: Option<Vec<Vec<String>>> = None;
    let mut gen_lines: Vec<&str> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| {
            InvariantError::Parse(format!("line {}: expected key: value", lineno + 1))
        })?;
        let value = value.trim();
        match key.trim() {
            "summands" => {
                let parsed: Result<Vec<usize>, _> =
                    value.split(',').map(|s| s.trim().parse::<usize>()).collect();
                dims = Some(parsed.map_err(|_| {
                    InvariantError::Parse(format!("line {}: bad summand list", lineno + 1))
                })?);
            }
            "prime" => {
                prime = Some(value.parse().map_err(|_| {
                    InvariantError::Parse(format!("line {}: bad prime", lineno + 1))
                })?);
            }
            "vars" => {
                names = Some(
                    value
                        .split(';')
                        .map(|grp| {
                            grp.split_whitespace().map(|s| s.to_string()).collect::<Vec<_>>()
                        })
                        .collect(),
                );
            }
            "gen" => gen_lines.push(value),
            other => {
                return Err(InvariantError::Parse(format!(
                    "line {}: unknown key {other}",
                    lineno + 1
                )))
            }
        }
    }
    let dims = dims.ok_or_else(|| InvariantError::Parse("missing summands line".into()))?;
    let prime = prime.ok_or_else(|| InvariantError::Parse("missing prime line".into()))?;
    let ctx = match names {
        Some(groups) => ActionContext::with_names(&dims, prime, &groups)?,
        None => ActionContext::new(&dims, prime)?,
    };
    let mut gens = Vec::with_capacity(gen_lines.len());
    for line in gen_lines {
        gens.push(ctx.parse(line)?);
    }
    Ok((ctx, gens))
}
