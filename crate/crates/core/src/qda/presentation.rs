use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::AlgebraError;
use crate::exact::{ExactMatrix, ExactVector, Scalar};

/// A finite-dimensional real algebra given by structure constants over a
/// fixed basis `e_0, ..., e_{dim-1}`, together with the coordinates of its
/// unity: `e_i e_j = sum_k m[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    dim: usize,
    constants: Vec<Scalar>,
    unity: ExactVector,
}

impl AlgebraPresentation {
    /// Checks shapes and that `unity` is a two-sided identity on the basis.
    pub fn new(
        dim: usize,
        constants: Vec<Scalar>,
        unity: ExactVector,
    ) -> Result<Self, AlgebraError> {
        let alg = Self::without_unity_check(dim, constants, unity)?;
        if !alg.unity_is_two_sided() {
            return Err(AlgebraError::NotUnital);
        }
        Ok(alg)
    }

    pub(crate) fn without_unity_check(
        dim: usize,
        constants: Vec<Scalar>,
        unity: ExactVector,
    ) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::BadDimension(0));
        }
        if constants.len() != dim * dim * dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim * dim * dim,
                found: constants.len(),
            });
        }
        if unity.len() != dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                found: unity.len(),
            });
        }
        Ok(Self {
            dim,
            constants,
            unity,
        })
    }

    /// Builds the presentation from a closure giving `e_i e_j` as a vector,
    /// with unity `e_0`.
    pub fn from_basis_products<F>(dim: usize, mut product: F) -> Result<Self, AlgebraError>
    where
        F: FnMut(usize, usize) -> ExactVector,
    {
        let mut constants = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = product(i, j);
                if p.len() != dim {
                    return Err(AlgebraError::DimensionMismatch {
                        expected: dim,
                        found: p.len(),
                    });
                }
                constants.extend(p);
            }
        }
        let mut unity = vec![Scalar::zero(); dim];
        unity[0] = Scalar::one();
        Self::new(dim, constants, unity)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unity(&self) -> &[Scalar] {
        &self.unity
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// All structure constants, indexed `[i][j][k]` in row-major order.
    pub fn constants(&self) -> &[Scalar] {
        &self.constants
    }

    pub fn basis_product(&self, i: usize, j: usize) -> ExactVector {
        let start = (i * self.dim + j) * self.dim;
        self.constants[start..start + self.dim].to_vec()
    }

    pub fn basis_vector(&self, i: usize) -> ExactVector {
        let mut e = vec![Scalar::zero(); self.dim];
        e[i] = Scalar::one();
        e
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> ExactVector {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                let start = (i * self.dim + j) * self.dim;
                for (o, m) in out.iter_mut().zip(&self.constants[start..start + self.dim]) {
                    if !m.is_zero() {
                        *o += &c * m;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `L_a: x -> a x`.
    pub fn left_mul(&self, a: &[Scalar]) -> ExactMatrix {
        let cols: Vec<ExactVector> = (0..self.dim)
            .map(|j| self.mul(a, &self.basis_vector(j)))
            .collect();
        ExactMatrix::from_columns(&cols).expect("square by construction")
    }

    /// Matrix of `R_a: x -> x a`.
    pub fn right_mul(&self, a: &[Scalar]) -> ExactMatrix {
        let cols: Vec<ExactVector> = (0..self.dim)
            .map(|j| self.mul(&self.basis_vector(j), a))
            .collect();
        ExactMatrix::from_columns(&cols).expect("square by construction")
    }

    pub fn unity_is_two_sided(&self) -> bool {
        (0..self.dim).all(|j| {
            let e = self.basis_vector(j);
            self.mul(&self.unity, &e) == e && self.mul(&e, &self.unity) == e
        })
    }
}
