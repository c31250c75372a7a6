use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{modular, ExactMatrix, Scalar};

/// A row-sparse matrix of exact rationals. Used for the large, very sparse
/// linear systems of the lifting solver.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    /// Appends a row given as `(column, value)` pairs. Zero entries are
    /// dropped and repeated columns summed.
    pub fn push_row(&mut self, mut entries: Vec<(usize, Scalar)>) {
        entries.sort_by_key(|e| e.0);
        let mut row: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.ncols, "column {c} out of range");
            match row.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|(_, v)| !v.is_zero());
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.rows[i]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.rows[i]
            .binary_search_by_key(&j, |e| e.0)
            .map(|k| self.rows[i][k].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Scalar::zero(), |acc, (c, x)| acc + x * &v[*c])
            })
            .collect()
    }

    /// `true` iff `M v = 0` exactly.
    pub fn annihilates(&self, v: &[Scalar]) -> bool {
        self.mul_vec(v).iter().all(Zero::is_zero)
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.rows.len(), self.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row {
                m[(i, *j)] = x.clone();
            }
        }
        m
    }

    /// Each row multiplied by the lcm of its denominators. Row scaling does
    /// not change the null space.
    pub(crate) fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.rows
            .iter()
            .map(|row| {
                let den = row
                    .iter()
                    .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
                row.iter()
                    .map(|(c, x)| (*c, x.numer() * (&den / x.denom())))
                    .collect()
            })
            .collect()
    }

    /// Exact basis of the right null space, each vector primitive over `Z`
    /// with a positive entry at its free coordinate.
    ///
    /// Rank and pivots are found modulo a word-size prime; the kernel
    /// vectors are then lifted p-adically and reconstructed as rationals and
    /// every candidate is checked against all rows in exact arithmetic. A
    /// prime that loses rank produces candidates that fail the check and
    /// the next prime is tried.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        modular::kernel(self.ncols, &self.integer_rows())
    }

    /// Rank of the matrix. Computed modulo primes; a full-rank result
    /// is exact, otherwise it is confirmed through the kernel.
    pub fn rank(&self) -> usize {
        self.ncols - self.kernel().len()
    }
}

#[cfg(test)]
mod tests {
    use super::super::int;
    use super::*;
    use alloc::vec;

    #[test]
    fn push_row_merges_and_drops_zeros() {
        let mut m = SparseMatrix::new(4);
        m.push_row(vec![(2, int(1)), (0, int(3)), (2, int(-1)), (1, int(0))]);
        assert_eq!(m.row(0), &[(0, int(3))]);
        assert_eq!(m.get(0, 2), int(0));
    }

    #[test]
    fn kernel_of_rank_deficient_system() {
        let mut m = SparseMatrix::new(3);
        m.push_row(vec![(0, int(1)), (1, int(2)), (2, int(3))]);
        m.push_row(vec![(0, int(2)), (1, int(4)), (2, int(6))]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.annihilates(&super::super::to_scalars(v)));
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_with_no_rows() {
        let m = SparseMatrix::new(3);
        assert_eq!(m.kernel().len(), 3);
    }
}
