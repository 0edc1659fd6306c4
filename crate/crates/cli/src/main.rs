//! Command-line front end: one subcommand per pipeline stage, deterministic
//! line-oriented output suitable for golden-file testing. Exit codes:
//! 0 success, 1 mathematical check failure, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cpcov_core::covariants::{
    self, evaluated_catalog, generator_set, polarize, source_order, TableId,
};
use cpcov_core::cpmodules::{
    self, decompose, decomposition_witness, hilbert_function, ModuleSpec,
};
use cpcov_core::invariants::{
    check_generation, format_gen_file, parse_gen_file, periodicity_check, split_invariant,
    ActionContext, GenerationVerdict,
};
use cpcov_core::poly::{format_polynomial, TermOrder};
use cpcov_core::reprring::{
    chebyshev_expand, class, kernel_poly, product_m, product_r, product_v, RingTag,
};

#[derive(Parser)]
#[command(name = "cpcov", version, about = "Exact invariants of cyclic prime-order groups")]
struct Cli {
    /// Output style: bare values or key: value lines.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Args)]
struct ModuleArgs {
    /// Summand dimensions, comma separated (for example 3,4).
    #[arg(long)]
    summands: String,
    /// The prime characteristic; may come from CPCOV_PRIME instead.
    #[arg(long)]
    prime: Option<u64>,
    /// Term-order override: variable names, greatest first, comma separated.
    #[arg(long)]
    order: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose a tensor product of chain modules into indecomposables.
    Decompose {
        /// 0 for the rational lattice side, or a prime p.
        #[arg(long, default_value_t = 0)]
        char: u64,
        #[arg(long)]
        summands: String,
    },
    /// Print witness chains for a two-factor product.
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Block index (omega only; alpha and beta print all).
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Lengths of the socle witnesses, rational or reduced mod p.
    Lengths {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Hilbert function of the two-factor product, degree by degree.
    Hilbert {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Representation-ring arithmetic: products, Chebyshev expansions, the
    /// kernel polynomial.
    Repring {
        /// Which ring a product or expansion lives in.
        #[arg(long, value_enum, ignore_case = true, default_value_t = RingArg::M)]
        ring: RingArg,
        #[arg(long)]
        prime: Option<u64>,
        /// Two dimension labels, comma separated.
        #[arg(long)]
        product: Option<String>,
        /// Chebyshev expansion of the given dimension.
        #[arg(long)]
        chebyshev: Option<usize>,
        /// Kernel polynomial of the given prime.
        #[arg(long)]
        qpoly: Option<u64>,
    },
    /// Basis of the invariants of one multidegree piece.
    InvariantBasis {
        #[command(flatten)]
        module: ModuleArgs,
        /// Multidegree, comma separated.
        #[arg(long)]
        degree: String,
    },
    /// Transfer (orbit sum) of a polynomial.
    Transfer {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        poly: String,
    },
    /// Norm of a summand's generator variable.
    Norm {
        #[command(flatten)]
        module: ModuleArgs,
        /// Summand index, 1-based.
        #[arg(long)]
        index: usize,
    },
    /// Print a generator table, optionally reduced mod p; with --out, write
    /// the full generator set as a generator-list file.
    Catalog {
        #[arg(long)]
        table: String,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a generator list against the invariant dimensions up to a
    /// total-degree bound. Exit code 1 on any deficit.
    Verify {
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        summands: Option<String>,
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        bound: u32,
    },
    /// Split an invariant into integral and transfer parts.
    Split {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        poly: String,
    },
    /// Compare the module structure of a piece against its p-shift.
    Periodicity {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        degree: String,
        /// Which summand degree to shift by p, 1-based.
        #[arg(long, default_value_t = 1)]
        index: usize,
    },
    /// Apply the polarization operator between two equal summands.
    Polarize {
        #[command(flatten)]
        module: ModuleArgs,
        /// Source summand, 1-based.
        #[arg(long)]
        from: usize,
        /// Target summand, 1-based.
        #[arg(long)]
        to: usize,
        #[arg(long)]
        poly: String,
        /// Work over the rationals instead of mod p.
        #[arg(long, default_value_t = false)]
        rational: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    Omega,
    Alpha,
    Beta,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    R,
    M,
    V,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_usize_list(s: &str, what: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| anyhow!("bad {what} entry {t:?}")))
        .collect()
}

fn parse_u32_list(s: &str, what: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| anyhow!("bad {what} entry {t:?}")))
        .collect()
}

/// The prime: the flag wins, the CPCOV_PRIME environment variable backs it.
fn resolve_prime(flag: Option<u64>) -> Result<u64> {
    if let Some(p) = flag {
        return Ok(p);
    }
    if let Ok(v) = std::env::var("CPCOV_PRIME") {
        return v.parse().context("CPCOV_PRIME is not a number");
    }
    bail!("no prime given: pass --prime or set CPCOV_PRIME")
}

fn context_for(module: &ModuleArgs, characteristic: u64) -> Result<ActionContext> {
    let dims = parse_usize_list(&module.summands, "summand")?;
    let ctx = ActionContext::new(&dims, characteristic).map_err(|e| anyhow!("{e}"))?;
    match &module.order {
        None => Ok(ctx),
        Some(names) => {
            let parts: Vec<&str> = names.split(',').map(|s| s.trim()).collect();
            let order = TermOrder::from_names(ctx.table(), &parts)
                .ok_or_else(|| anyhow!("--order must list every variable exactly once"))?;
            Ok(ctx.with_order(order))
        }
    }
}

fn kv(format: Format, key: &str, value: &str) {
    match format {
        Format::Human => println!("{value}"),
        Format::Structured => println!("{key}: {value}"),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let format = cli.format;
    match cli.cmd {
        Cmd::Decompose { char, summands } => {
            let dims = parse_usize_list(&summands, "summand")?;
            let spec = ModuleSpec::new(&dims, char).map_err(|e| anyhow!("{e}"))?;
            let rep = decompose(&spec).map_err(|e| anyhow!("{e}"))?;
            kv(format, "decomposition", &rep.to_string());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Witness { kind, m, n, r, prime } => {
            match kind {
                WitnessKind::Omega => {
                    let r = r.ok_or_else(|| anyhow!("--r is required for omega"))?;
                    let w = cpmodules::omega_witness(m, n, r).map_err(|e| anyhow!("{e}"))?;
                    println!("omega_{r}: {w}");
                }
                WitnessKind::Alpha => {
                    let ws = cpmodules::integral_witnesses(m, n).map_err(|e| anyhow!("{e}"))?;
                    for (i, w) in ws.iter().enumerate() {
                        println!("alpha_{i}: {}", w.alpha);
                        println!("alpha_{i}_primitive: {}", w.alpha_primitive);
                        println!("omega_{i}: {}", w.omega);
                    }
                }
                WitnessKind::Beta => {
                    let p = resolve_prime(prime)?;
                    let betas = cpmodules::beta_witness(m, n, p).map_err(|e| anyhow!("{e}"))?;
                    for (i, b) in betas.iter().enumerate() {
                        println!("beta_{i}: {b}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Lengths { m, n, prime } => {
            let value = match prime {
                None => decomposition_witness(m, n, None)
                    .map_err(|e| anyhow!("{e}"))?
                    .omega_lengths,
                Some(p) => cpmodules::modular_lengths(m, n, p).map_err(|e| anyhow!("{e}"))?,
            };
            let text: Vec<String> = value.iter().map(|l| l.to_string()).collect();
            kv(format, "lengths", &text.join(","));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Hilbert { m, n } => {
            let values: Vec<String> =
                (0..=(m + n - 2)).map(|j| hilbert_function(m, n, j).to_string()).collect();
            kv(format, "hilbert", &values.join(","));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Repring { ring, prime, product, chebyshev, qpoly } => {
            let mut actions = 0;
            if let Some(spec) = product {
                actions += 1;
                let labels = parse_usize_list(&spec, "label")?;
                if labels.len() != 2 {
                    bail!("--product takes exactly two labels");
                }
                let rep = match ring {
                    RingArg::R => {
                        product_r(&class(RingTag::R, labels[0]), &class(RingTag::R, labels[1]))
                    }
                    RingArg::M => {
                        product_m(&class(RingTag::M, labels[0]), &class(RingTag::M, labels[1]))
                    }
                    RingArg::V => {
                        let p = resolve_prime(prime)?;
                        let tag = RingTag::V(p);
                        let a = cpcov_core::reprring::RepElement::single(tag, labels[0], 1)
                            .map_err(|e| anyhow!("{e}"))?;
                        let b = cpcov_core::reprring::RepElement::single(tag, labels[1], 1)
                            .map_err(|e| anyhow!("{e}"))?;
                        product_v(&a, &b)
                    }
                }
                .map_err(|e| anyhow!("{e}"))?;
                kv(format, "product", &rep.to_string());
            }
            if let Some(d) = chebyshev {
                actions += 1;
                let tag = match ring {
                    RingArg::R => RingTag::R,
                    RingArg::M => RingTag::M,
                    RingArg::V => RingTag::V(resolve_prime(prime)?),
                };
                let poly = chebyshev_expand(d, tag).map_err(|e| anyhow!("{e}"))?;
                let ord = TermOrder::index(poly.table());
                kv(format, "chebyshev", &format_polynomial(&poly, &ord));
            }
            if let Some(p) = qpoly {
                actions += 1;
                let q = kernel_poly(p).map_err(|e| anyhow!("{e}"))?;
                let ord = TermOrder::index(q.table());
                kv(format, "qpoly", &format_polynomial(&q, &ord));
            }
            if actions == 0 {
                bail!("pass one of --product, --chebyshev, --qpoly");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::InvariantBasis { module, degree } => {
            let p = resolve_prime(module.prime)?;
            let ctx = context_for(&module, p)?;
            let d = parse_u32_list(&degree, "degree")?;
            if d.len() != ctx.dims().len() {
                bail!("--degree must have one entry per summand");
            }
            let basis = ctx.invariant_basis(&d).map_err(|e| anyhow!("{e}"))?;
            kv(format, "dimension", &basis.len().to_string());
            for (i, f) in basis.iter().enumerate() {
                println!("basis_{i}: {}", format_polynomial(f, ctx.order()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Transfer { module, poly } => {
            let p = resolve_prime(module.prime)?;
            let ctx = context_for(&module, p)?;
            let f = ctx.parse(&poly).map_err(|e| anyhow!("{e}"))?;
            let tr = ctx.transfer(&f).map_err(|e| anyhow!("{e}"))?;
            kv(format, "transfer", &format_polynomial(&tr, ctx.order()));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Norm { module, index } => {
            let p = resolve_prime(module.prime)?;
            let ctx = context_for(&module, p)?;
            if index == 0 || index > ctx.dims().len() {
                bail!("--index must name a summand between 1 and {}", ctx.dims().len());
            }
            let n = ctx.norm(index - 1).map_err(|e| anyhow!("{e}"))?;
            kv(format, "norm", &format_polynomial(&n, ctx.order()));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Catalog { table, prime, out } => {
            let table = TableId::parse(&table).map_err(|e| anyhow!("{e}"))?;
            if let Some(path) = out {
                let p = resolve_prime(prime)?;
                let (ctx, gens) = generator_set(table, p).map_err(|e| anyhow!("{e}"))?;
                let text = format_gen_file(&ctx, &gens);
                std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?;
                println!("wrote {} generators to {}", gens.len(), path.display());
                return Ok(ExitCode::SUCCESS);
            }
            let rows = evaluated_catalog(table, prime).map_err(|e| anyhow!("{e}"))?;
            let degrees: Vec<usize> =
                covariants::table_dims(table).iter().map(|n| n - 1).collect();
            let form_ctx =
                covariants::BinaryFormContext::new(&degrees).map_err(|e| anyhow!("{e}"))?;
            let cov_ord = covariants::covariant_order(table, &form_ctx);
            let dims = covariants::table_dims(table);
            let ctx0 = ActionContext::new(&dims, 0).map_err(|e| anyhow!("{e}"))?;
            let src_ord = source_order(&ctx0);
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                println!("name: {}", row.record.name);
                println!("order: {}", row.record.order);
                println!("bidegree: ({},{})", row.record.bidegree.0, row.record.bidegree.1);
                println!("covariant: {}", format_polynomial(row.covariant.poly(), &cov_ord));
                println!("lm: {}", row.record.lm_covariant);
                println!("source: {}", format_polynomial(&row.source, &src_ord));
                println!("source_lm: {}", row.record.lm_source);
                if let Some(red) = &row.reduced {
                    println!(
                        "source_mod_{}: {}",
                        prime.expect("prime given"),
                        format_polynomial(red, &src_ord)
                    );
                }
                for note in row.record.printed_notes {
                    println!("note: {note}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { prime, summands, gens, bound } => {
            let text = std::fs::read_to_string(&gens)
                .with_context(|| format!("reading {}", gens.display()))?;
            let (ctx, generators) = parse_gen_file(&text).map_err(|e| anyhow!("{e}"))?;
            if let Some(p) = prime {
                if p != ctx.characteristic() {
                    bail!(
                        "--prime {p} conflicts with the file's prime {}",
                        ctx.characteristic()
                    );
                }
            }
            if let Some(s) = summands {
                let dims = parse_usize_list(&s, "summand")?;
                if dims != ctx.dims() {
                    bail!("--summands {dims:?} conflicts with the file's {:?}", ctx.dims());
                }
            }
            let report =
                check_generation(&ctx, &generators, bound).map_err(|e| anyhow!("{e}"))?;
            for row in &report.rows {
                let d: Vec<String> = row.multidegree.iter().map(|x| x.to_string()).collect();
                println!(
                    "degree ({}): invariants {} span {} deficit {}",
                    d.join(","),
                    row.dim_invariants,
                    row.dim_span,
                    row.deficit
                );
            }
            match &report.verdict {
                GenerationVerdict::CompleteUpToBound => {
                    println!("verdict: complete up to total degree {bound}");
                    Ok(ExitCode::SUCCESS)
                }
                GenerationVerdict::FirstFailure { multidegree } => {
                    let d: Vec<String> = multidegree.iter().map(|x| x.to_string()).collect();
                    println!("verdict: first failure at degree ({})", d.join(","));
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Split { module, poly } => {
            let p = resolve_prime(module.prime)?;
            let ctx = context_for(&module, p)?;
            let f = ctx.parse(&poly).map_err(|e| anyhow!("{e}"))?;
            match split_invariant(&ctx, &f) {
                Ok((integral, transfer)) => {
                    println!("integral: {}", format_polynomial(&integral, ctx.order()));
                    println!("transfer: {}", format_polynomial(&transfer, ctx.order()));
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("split failed: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Periodicity { module, degree, index } => {
            let p = resolve_prime(module.prime)?;
            let ctx = context_for(&module, p)?;
            let d = parse_u32_list(&degree, "degree")?;
            if d.len() != ctx.dims().len() {
                bail!("--degree must have one entry per summand");
            }
            if index == 0 || index > ctx.dims().len() {
                bail!("--index must name a summand between 1 and {}", ctx.dims().len());
            }
            let rep = periodicity_check(&ctx, &d, index - 1).map_err(|e| anyhow!("{e}"))?;
            println!("base: {}", rep.base);
            println!("shifted: {}", rep.shifted);
            if let Some(k) = rep.free_blocks_added {
                println!("free blocks added: {k}");
            }
            if rep.flat_part_checked {
                println!(
                    "flat part free: {}",
                    match rep.flat_part_free {
                        Some(true) => "yes",
                        _ => "no",
                    }
                );
            }
            println!("verdict: {}", if rep.pass { "pass" } else { "fail" });
            Ok(if rep.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Polarize { module, from, to, poly, rational } => {
            let characteristic = if rational { 0 } else { resolve_prime(module.prime)? };
            let ctx = context_for(&module, characteristic)?;
            if from == 0 || to == 0 || from > ctx.dims().len() || to > ctx.dims().len() {
                bail!("--from/--to must name summands between 1 and {}", ctx.dims().len());
            }
            let f = ctx.parse(&poly).map_err(|e| anyhow!("{e}"))?;
            let g = polarize(&f, from - 1, to - 1, &ctx).map_err(|e| anyhow!("{e}"))?;
            kv(format, "polarized", &format_polynomial(&g, ctx.order()));
            Ok(ExitCode::SUCCESS)
        }
    }
}
