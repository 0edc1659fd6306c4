use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::Scalar;

/// Dense matrix over Q or F_p, row major, immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
    characteristic: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinAlgError {
    DimensionMismatch { expected: usize, got: usize },
    EntryCount { expected: usize, got: usize },
    MixedCharacteristics,
    ZeroVector,
    NotRational,
}

impl fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinAlgError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            LinAlgError::EntryCount { expected, got } => {
                write!(f, "entry count {got} does not match shape ({expected})")
            }
            LinAlgError::MixedCharacteristics => write!(f, "entries mix characteristics"),
            LinAlgError::ZeroVector => write!(f, "zero vector"),
            LinAlgError::NotRational => write!(f, "expected rational entries"),
        }
    }
}

impl Matrix {
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
        characteristic: u64,
    ) -> Result<Self, LinAlgError> {
        if entries.len() != rows * cols {
            return Err(LinAlgError::EntryCount { expected: rows * cols, got: entries.len() });
        }
        if entries.iter().any(|e| e.characteristic() != characteristic) {
            return Err(LinAlgError::MixedCharacteristics);
        }
        Ok(Matrix { rows, cols, entries, characteristic })
    }

    pub fn zeros(rows: usize, cols: usize, characteristic: u64) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(characteristic); rows * cols],
            characteristic,
        }
    }

    pub fn identity(n: usize, characteristic: u64) -> Self {
        let mut m = Matrix::zeros(n, n, characteristic);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one(characteristic);
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        characteristic: u64,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert!(e.characteristic() == characteristic, "entry characteristic");
                entries.push(e);
            }
        }
        Matrix { rows, cols, entries, characteristic }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, got: rhs.rows });
        }
        if self.characteristic != rhs.characteristic {
            return Err(LinAlgError::MixedCharacteristics);
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols, self.characteristic);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let mut out = vec![Scalar::zero(self.characteristic); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() || v[j].is_zero() {
                    continue;
                }
                out[i] = &out[i] + &(a * &v[j]);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<Matrix, LinAlgError> {
        assert!(self.rows == self.cols, "pow needs a square matrix");
        let mut acc = Matrix::identity(self.rows, self.characteristic);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Row echelon form with unit pivots, plus the pivot column list.
    /// Elimination is deterministic: columns are swept left to right and the
    /// first row with a nonzero entry is the pivot.
    fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let mut pivot_row = None;
            for r in row..m.rows {
                if !m.get(r, col).is_zero() {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            m.swap_rows(row, pr);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.row_sub_scaled(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            if !self.entries[idx].is_zero() {
                self.entries[idx] = &self.entries[idx] * c;
            }
        }
    }

    /// row r -= c * row src
    fn row_sub_scaled(&mut self, r: usize, src: usize, c: &Scalar) {
        for j in 0..self.cols {
            let s = &self.entries[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let idx = r * self.cols + j;
            self.entries[idx] = &self.entries[idx] - &(c * s);
        }
    }

    /// Rank over the fraction field (char 0) or over F_p, by exact
    /// Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space. Over Q each vector is
    /// denominator-cleared to content one with its first nonzero entry
    /// positive; over F_p vectors have a unit in their free coordinate.
    /// Empty exactly when the matrix is injective.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(self.characteristic); self.cols];
            v[free] = Scalar::one(self.characteristic);
            for (i, &pc) in pivots.iter().enumerate() {
                let e = r.get(i, free);
                if !e.is_zero() {
                    v[pc] = -e;
                }
            }
            if self.characteristic == 0 {
                v = normalize_rational_vector(&v);
            }
            basis.push(v);
        }
        basis
    }

    /// One particular solution of `self * x = b`, or `None` when the system
    /// is inconsistent. Deterministic: free variables are set to zero, so the
    /// solution is supported on the pivot columns of the elimination (callers
    /// control which monomials those are by ordering the columns).
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, got: b.len() });
        }
        if b.iter().any(|e| e.characteristic() != self.characteristic) {
            return Err(LinAlgError::MixedCharacteristics);
        }
        // Eliminate the augmented matrix [self | b].
        let aug = Matrix::from_fn(self.rows, self.cols + 1, self.characteristic, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last().is_some_and(|&c| c == self.cols) {
            return Ok(None); // a pivot in the augmented column: inconsistent
        }
        let mut x = vec![Scalar::zero(self.characteristic); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Determinant by exact elimination; square matrices only.
    pub fn det(&self) -> Scalar {
        assert!(self.rows == self.cols, "det needs a square matrix");
        let mut m = self.clone();
        let mut det = Scalar::one(self.characteristic);
        for col in 0..m.cols {
            let mut pivot_row = None;
            for r in col..m.rows {
                if !m.get(r, col).is_zero() {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else {
                return Scalar::zero(self.characteristic);
            };
            if pr != col {
                m.swap_rows(col, pr);
                det = -&det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for r in col + 1..m.rows {
                if !m.get(r, col).is_zero() {
                    let factor = &m.get(r, col).clone() * &inv;
                    m.row_sub_scaled(r, col, &factor);
                }
            }
        }
        det
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} (char {})", self.rows, self.cols, self.characteristic)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}{}", if j == 0 { "" } else { " " }, self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The primitive integer vector on the ray of a nonzero rational vector:
/// denominators cleared, content divided out, first nonzero entry positive.
pub fn lattice_saturate(v: &[Scalar]) -> Result<Vec<BigInt>, LinAlgError> {
    let mut lcm = BigInt::one();
    for s in v {
        let r = s.as_ratio().ok_or(LinAlgError::NotRational)?;
        lcm = lcm.lcm(r.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|s| {
            let r = s.as_ratio().unwrap();
            (r * BigRational::from_integer(lcm.clone())).to_integer()
        })
        .collect();
    let mut content = BigInt::zero();
    for n in &ints {
        content = content.gcd(n);
    }
    if content.is_zero() {
        return Err(LinAlgError::ZeroVector);
    }
    let mut out: Vec<BigInt> = ints.into_iter().map(|n| n / &content).collect();
    if out.iter().find(|n| !n.is_zero()).is_some_and(|n| n.is_negative()) {
        for n in &mut out {
            *n = -&*n;
        }
    }
    Ok(out)
}

/// p-saturate a spanning set of integer vectors: repeatedly replace
/// combinations that vanish mod p by their quotient by p, until the
/// reductions mod p are as independent as the vectors are over Q. The
/// returned vectors reduce to a basis of the saturated lattice mod p.
pub fn p_saturate(vectors: Vec<Vec<BigInt>>, p: u64) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return vectors;
    }
    let n = vectors[0].len();
    let mut vecs = vectors;
    loop {
        // Reduce the current vectors mod p and look for a dependency.
        let rows = vecs.len();
        let m = Matrix::from_fn(n, rows, p, |i, j| {
            Scalar::Rat(BigRational::from_integer(vecs[j][i].clone()))
                .reduce_mod(p)
                .expect("integer entries reduce")
        });
        let kernel = m.kernel_basis();
        let Some(dep) = kernel.first() else { break };
        // Integer combination divisible by p; divide it out and replace the
        // last vector participating in the dependency.
        let mut combo = vec![BigInt::zero(); n];
        let mut last = 0;
        for (j, c) in dep.iter().enumerate() {
            let cv = c.residue_value().unwrap();
            if cv == 0 {
                continue;
            }
            last = j;
            let ci = BigInt::from(cv);
            for i in 0..n {
                combo[i] += &ci * &vecs[j][i];
            }
        }
        let pb = BigInt::from(p);
        for c in &mut combo {
            debug_assert!((&*c % &pb).is_zero());
            *c = &*c / &pb;
        }
        vecs[last] = combo;
    }
    vecs
}

fn normalize_rational_vector(v: &[Scalar]) -> Vec<Scalar> {
    match lattice_saturate(v) {
        Ok(ints) => ints.into_iter().map(Scalar::from_bigint).collect(),
        Err(_) => v.to_vec(),
    }
}
