use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::monomial::{cmp_grevlex, Monomial};
use super::table::VarTable;

/// Graded reverse lexicographic term order with an explicit variable
/// precedence, greatest variable first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    precedence: Vec<usize>,
}

impl TermOrder {
    /// Order with the given precedence; must be a permutation of all
    /// variable indices.
    pub fn new(table: &VarTable, precedence: Vec<usize>) -> Self {
        assert_eq!(precedence.len(), table.len(), "precedence must list every variable");
        let mut seen = alloc::vec![false; table.len()];
        for &v in &precedence {
            assert!(v < table.len() && !seen[v], "precedence must be a permutation");
            seen[v] = true;
        }
        TermOrder { precedence }
    }

    /// The default convention for chain tables: variables sorted by distance
    /// to the socle descending (each generator above its whole chain tail),
    /// ties broken by summand index descending. On a sum of a 2-chain and a
    /// 4-chain this is w2 > z2 > y2 > y1 > x2 > x1.
    pub fn classical(table: &VarTable) -> Self {
        let mut idx: Vec<usize> = (0..table.len()).collect();
        idx.sort_by(|&a, &b| {
            let da = table.distance_to_socle(a);
            let db = table.distance_to_socle(b);
            db.cmp(&da).then(table.var(b).summand.cmp(&table.var(a).summand))
        });
        TermOrder { precedence: idx }
    }

    /// Plain index order: the table's first variable is greatest.
    pub fn index(table: &VarTable) -> Self {
        TermOrder { precedence: (0..table.len()).collect() }
    }

    /// Precedence given by variable names, greatest first.
    pub fn from_names(table: &VarTable, names: &[&str]) -> Option<Self> {
        let mut prec = Vec::with_capacity(names.len());
        for n in names {
            prec.push(table.index_of(n)?);
        }
        if prec.len() != table.len() {
            return None;
        }
        let mut seen = alloc::vec![false; table.len()];
        for &v in &prec {
            if seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(TermOrder { precedence: prec })
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        cmp_grevlex(a, b, &self.precedence)
    }

    pub fn describe(&self, table: &VarTable) -> String {
        let mut s = String::new();
        for (k, &v) in self.precedence.iter().enumerate() {
            if k > 0 {
                s.push_str(" > ");
            }
            s.push_str(table.name(v));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn classical_order_on_24_and_34() {
        let t = VarTable::chain(&[2, 4]);
        let ord = TermOrder::classical(&t);
        assert_eq!(ord.describe(&t), "w2 > z2 > y2 > y1 > x2 > x1");
        let t = VarTable::chain(&[3, 4]);
        let ord = TermOrder::classical(&t);
        assert_eq!(ord.describe(&t), "w2 > z2 > z1 > y2 > y1 > x2 > x1");
    }

    #[test]
    fn grevlex_tie_break() {
        // With y > x > z and equal degrees, y^2 beats x*z: the degree tie is
        // decided by the least variable z, of which y^2 has none.
        let t = VarTable::simple(&["y", "x", "z"]);
        let ord = TermOrder::index(&t);
        let y2 = Monomial(vec![2, 0, 0]);
        let xz = Monomial(vec![0, 1, 1]);
        assert_eq!(ord.cmp(&y2, &xz), Ordering::Greater);
    }
}
