use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Exponent vector, one entry per variable of the owning table.
///
/// `Ord` is graded reverse lexicographic with the table's index order as
/// precedence; this is only the storage order that makes iteration over a
/// polynomial deterministic. Queries that care about a particular precedence
/// go through [`crate::poly::TermOrder`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, idx: usize, exp: u32) -> Self {
        let mut e = vec![0; n_vars];
        e[idx] = exp;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn exponent(&self, idx: usize) -> u32 {
        self.0[idx]
    }
}

/// Graded reverse lexicographic comparison under the given precedence
/// (variable indices listed greatest first): higher total degree wins; on a
/// tie the last (least) variable where the exponents differ decides, the
/// monomial with less of it being greater.
pub(crate) fn cmp_grevlex(a: &Monomial, b: &Monomial, precedence: &[usize]) -> Ordering {
    match a.total_degree().cmp(&b.total_degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for &v in precedence.iter().rev() {
        let (ea, eb) = (a.0[v], b.0[v]);
        if ea != eb {
            // More of the least variable means smaller.
            return if ea < eb { Ordering::Greater } else { Ordering::Less };
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.0.len()).rev() {
            let (ea, eb) = (self.0[i], other.0[i]);
            if ea != eb {
                return if ea < eb { Ordering::Greater } else { Ordering::Less };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
