use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

/// One variable: a display name, the summand it grades, and its chain depth
/// (0 for a module generator, increasing toward the socle). The multidegree
/// weight of a variable is the unit vector of its summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarInfo {
    pub name: String,
    pub summand: usize,
    pub depth: usize,
}

/// Ordered variable list shared by all polynomials of a ring.
#[derive(Debug, PartialEq, Eq)]
pub struct VarTable {
    vars: Vec<VarInfo>,
    /// Number of variables in each summand; for chain tables this is the
    /// dimension of the module summand.
    summand_sizes: Vec<usize>,
}

impl VarTable {
    /// General constructor. Names must be unique and nonempty.
    pub fn new(vars: Vec<VarInfo>) -> Arc<Self> {
        assert!(!vars.is_empty(), "empty variable table");
        for (i, v) in vars.iter().enumerate() {
            assert!(!v.name.is_empty(), "empty variable name");
            assert!(
                vars[..i].iter().all(|w| w.name != v.name),
                "duplicate variable name {}",
                v.name
            );
        }
        let n_summands = 1 + vars.iter().map(|v| v.summand).max().unwrap();
        let mut summand_sizes = alloc::vec![0usize; n_summands];
        for v in &vars {
            summand_sizes[v.summand] += 1;
        }
        Arc::new(VarTable { vars, summand_sizes })
    }

    /// Plain variables, one summand each, depth 0. Used for the truncated
    /// polynomial models where `t_i` generates the i-th factor.
    pub fn simple(names: &[&str]) -> Arc<Self> {
        VarTable::new(
            names
                .iter()
                .enumerate()
                .map(|(i, n)| VarInfo { name: n.to_string(), summand: i, depth: 0 })
                .collect(),
        )
    }

    /// Chain variables z_{i,j} = Delta^j(z_i) for a sum of Jordan-block
    /// modules of the given dimensions, generator first within each summand.
    /// Dimensions up to four use the classical aliases (w, z, y, x with the
    /// socle named x); larger chains fall back to `z{i}_{j}`.
    pub fn chain(dims: &[usize]) -> Arc<Self> {
        assert!(!dims.is_empty());
        let mut vars = Vec::new();
        for (i, &n) in dims.iter().enumerate() {
            assert!(n >= 1, "summand dimension must be positive");
            for depth in 0..n {
                vars.push(VarInfo {
                    name: chain_var_name(i, n, depth),
                    summand: i,
                    depth,
                });
            }
        }
        VarTable::new(vars)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn var(&self, idx: usize) -> &VarInfo {
        &self.vars[idx]
    }

    pub fn vars(&self) -> &[VarInfo] {
        &self.vars
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.vars[idx].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn num_summands(&self) -> usize {
        self.summand_sizes.len()
    }

    pub fn summand_size(&self, i: usize) -> usize {
        self.summand_sizes[i]
    }

    /// Index of the chain variable z_{summand, depth}; only meaningful for
    /// tables where (summand, depth) pairs are unique, as built by `chain`.
    pub fn chain_var(&self, summand: usize, depth: usize) -> Option<usize> {
        self.vars.iter().position(|v| v.summand == summand && v.depth == depth)
    }

    /// Distance from a variable to the socle of its chain.
    pub fn distance_to_socle(&self, idx: usize) -> usize {
        let v = &self.vars[idx];
        self.summand_sizes[v.summand] - 1 - v.depth
    }
}

pub(crate) fn chain_var_name(summand: usize, dim: usize, depth: usize) -> String {
    let i = summand + 1;
    if dim <= 4 {
        // Socle is always x; the generator of a 4-chain is w, of a 3-chain z,
        // of a 2-chain y.
        let letters = ["x", "y", "z", "w"];
        format!("{}{}", letters[dim - 1 - depth], i)
    } else {
        format!("z{}_{}", i, depth)
    }
}

/// Two tables are compatible when they are the same allocation or equal in
/// content.
pub(crate) fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
