//! The octonions over the Cayley-Dickson basis `(1, i, j, k, l, il, jl, kl)`,
//! the vector products on `R^3` and `R^7`, the Frobenius decomposition of a
//! quadratic algebra, and membership testing for `G2`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{dot, frac, ExactMatrix, ExactVector, Scalar};
use crate::qda::{AlgebraError, AlgebraPresentation};
use crate::sample;

/// Hamilton product of two quaternions in the basis `(1, i, j, k)`.
pub fn quat_mul(a: &[Scalar], b: &[Scalar]) -> ExactVector {
    assert!(a.len() == 4 && b.len() == 4);
    vec![
        &a[0] * &b[0] - &a[1] * &b[1] - &a[2] * &b[2] - &a[3] * &b[3],
        &a[0] * &b[1] + &a[1] * &b[0] + &a[2] * &b[3] - &a[3] * &b[2],
        &a[0] * &b[2] - &a[1] * &b[3] + &a[2] * &b[0] + &a[3] * &b[1],
        &a[0] * &b[3] + &a[1] * &b[2] - &a[2] * &b[1] + &a[3] * &b[0],
    ]
}

pub fn quat_conj(a: &[Scalar]) -> ExactVector {
    vec![a[0].clone(), -&a[1], -&a[2], -&a[3]]
}

/// Octonion product as a pair of quaternions:
/// `(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`.
pub fn oct_mul(x: &[Scalar], y: &[Scalar]) -> ExactVector {
    assert!(x.len() == 8 && y.len() == 8);
    let (a, b) = x.split_at(4);
    let (c, d) = y.split_at(4);
    let first: ExactVector = quat_mul(a, c)
        .into_iter()
        .zip(quat_mul(&quat_conj(d), b))
        .map(|(p, q)| p - q)
        .collect();
    let second: ExactVector = quat_mul(d, a)
        .into_iter()
        .zip(quat_mul(b, &quat_conj(c)))
        .map(|(p, q)| p + q)
        .collect();
    first.into_iter().chain(second).collect()
}

/// Structure constants of the octonions, `e_i e_j = sign * e_index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctonionTable {
    entries: [[(i8, u8); 8]; 8],
}

impl Default for OctonionTable {
    fn default() -> Self {
        Self::new()
    }
}

impl OctonionTable {
    pub fn new() -> Self {
        let mut entries = [[(0i8, 0u8); 8]; 8];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let p = oct_mul(&unit(8, i), &unit(8, j));
                let k = p
                    .iter()
                    .position(|c| !c.is_zero())
                    .expect("basis product is nonzero");
                *slot = (if p[k].is_one() { 1 } else { -1 }, k as u8);
            }
        }
        Self { entries }
    }

    pub fn product(&self, i: usize, j: usize) -> (i8, usize) {
        let (s, k) = self.entries[i][j];
        (s, k as usize)
    }

    /// The full `8 x 8 x 8` tensor with entries in `{-1, 0, 1}`.
    pub fn tensor(&self) -> [[[i8; 8]; 8]; 8] {
        let mut t = [[[0i8; 8]; 8]; 8];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let (s, k) = self.product(i, j);
                cell[k] = s;
            }
        }
        t
    }
}

fn unit(n: usize, i: usize) -> ExactVector {
    let mut e = vec![Scalar::zero(); n];
    e[i] = Scalar::one();
    e
}

pub fn octonions() -> AlgebraPresentation {
    AlgebraPresentation::from_basis_products(8, |i, j| oct_mul(&unit(8, i), &unit(8, j)))
        .expect("octonion table is unital")
}

pub fn quaternions() -> AlgebraPresentation {
    AlgebraPresentation::from_basis_products(4, |i, j| quat_mul(&unit(4, i), &unit(4, j)))
        .expect("quaternion table is unital")
}

pub fn complex_numbers() -> AlgebraPresentation {
    AlgebraPresentation::from_basis_products(2, |i, j| match (i, j) {
        (0, k) | (k, 0) => unit(2, k),
        _ => vec![-Scalar::one(), Scalar::zero()],
    })
    .expect("complex table is unital")
}

/// The vector product on `R^n`, `n` in `{3, 7}`: the imaginary part of the
/// quaternion or octonion product of two imaginary elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VectorProduct {
    n: usize,
}

impl VectorProduct {
    pub fn new(n: usize) -> Result<Self, AlgebraError> {
        match n {
            3 | 7 => Ok(Self { n }),
            _ => Err(AlgebraError::UnsupportedDimension(n)),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apply(&self, v: &[Scalar], w: &[Scalar]) -> Result<ExactVector, AlgebraError> {
        for x in [v, w] {
            if x.len() != self.n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.n,
                    found: x.len(),
                });
            }
        }
        let embed = |x: &[Scalar]| -> ExactVector {
            core::iter::once(Scalar::zero())
                .chain(x.iter().cloned())
                .collect()
        };
        let p = if self.n == 7 {
            oct_mul(&embed(v), &embed(w))
        } else {
            quat_mul(&embed(v), &embed(w))
        };
        Ok(p[1..].to_vec())
    }

    /// Structure tensor `t[i][j][k]` with `e_i x e_j = sum_k t[i][j][k] e_k`,
    /// flattened row-major.
    pub fn tensor(&self) -> Vec<Scalar> {
        let n = self.n;
        let mut t = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                t.extend(self.apply(&unit(n, i), &unit(n, j)).expect("sized"));
            }
        }
        t
    }
}

/// `v x w` for `n` in `{3, 7}`.
pub fn vector_product(v: &[Scalar], w: &[Scalar]) -> Result<ExactVector, AlgebraError> {
    VectorProduct::new(v.len())?.apply(v, w)
}

/// The decomposition `A = R1 + V` of a quadratic algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSplit {
    /// Coefficients of the linear form `rho` in the presentation's basis.
    pub rho: ExactVector,
    /// A basis of the purely imaginary hyperplane `V = ker rho`.
    pub imaginary: Vec<ExactVector>,
    unity: ExactVector,
}

impl FrobeniusSplit {
    pub fn rho_of(&self, x: &[Scalar]) -> Scalar {
        dot(&self.rho, x)
    }

    /// `iota(x) = x - rho(x) 1`.
    pub fn iota(&self, x: &[Scalar]) -> ExactVector {
        let r = self.rho_of(x);
        x.iter().zip(&self.unity).map(|(a, u)| a - &r * u).collect()
    }
}

/// Coefficient `mu` with `b^2 = lambda 1 + mu b`, if `b^2` lies in the span.
fn linear_coefficient(alg: &AlgebraPresentation, b: &[Scalar]) -> Option<Scalar> {
    let sq = alg.mul(b, b);
    let m = ExactMatrix::from_columns(&[alg.unity().to_vec(), b.to_vec(), sq]).ok()?;
    m.kernel()
        .into_iter()
        .find(|k| !k[2].is_zero())
        .map(|k| -&k[1] / &k[2])
}

fn in_unity_line(alg: &AlgebraPresentation, x: &[Scalar], pivot: usize) -> bool {
    let u = alg.unity();
    let lambda = &x[pivot] / &u[pivot];
    x.iter().zip(u).all(|(a, b)| *a == &lambda * b)
}

/// Computes `rho` and a basis of the imaginary hyperplane.
///
/// For every basis vector `b` off the unity line, `b^2` is expanded in
/// `{1, b}` and `rho(b)` is half the coefficient of `b`. The result is then
/// verified exactly on the returned basis and on seeded random samples.
pub fn frobenius_split(alg: &AlgebraPresentation) -> Result<FrobeniusSplit, AlgebraError> {
    if !alg.unity_is_two_sided() {
        return Err(AlgebraError::NotUnital);
    }
    let n = alg.dim();
    let u = alg.unity().to_vec();
    let pivot = u
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(AlgebraError::NotUnital)?;
    let mut rho = vec![Scalar::zero(); n];
    for j in (0..n).filter(|&j| j != pivot) {
        let mu = linear_coefficient(alg, &unit(n, j)).ok_or(AlgebraError::NotQuadratic)?;
        rho[j] = mu * frac(1, 2);
    }
    let rest = (0..n)
        .filter(|&j| j != pivot)
        .fold(Scalar::zero(), |acc, j| acc + &rho[j] * &u[j]);
    rho[pivot] = (Scalar::one() - rest) / &u[pivot];

    let imaginary: Vec<ExactVector> = (0..n)
        .filter(|&j| j != pivot)
        .map(|j| {
            let r = rho[j].clone();
            (0..n)
                .map(|k| if k == j { Scalar::one() } else { Scalar::zero() } - &r * &u[k])
                .collect()
        })
        .collect();
    let split = FrobeniusSplit {
        rho,
        imaginary,
        unity: u,
    };
    for v in &split.imaginary {
        if !in_unity_line(alg, &alg.mul(v, v), pivot) {
            return Err(AlgebraError::NotQuadratic);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xf70b);
    for _ in 0..16 {
        let x = sample::vector(&mut rng, n);
        let r2 = split.rho_of(&x) * Scalar::from_integer(2.into());
        let defect: ExactVector = alg
            .mul(&x, &x)
            .iter()
            .zip(&x)
            .map(|(s, xi)| s - &r2 * xi)
            .collect();
        if !in_unity_line(alg, &defect, pivot) {
            return Err(AlgebraError::NotQuadratic);
        }
    }
    Ok(split)
}

/// `<x, y> = 2 rho(x) rho(y) - rho(xy + yx) / 2`.
pub fn scalar_product(
    alg: &AlgebraPresentation,
    split: &FrobeniusSplit,
    x: &[Scalar],
    y: &[Scalar],
) -> Scalar {
    let xy = alg.mul(x, y);
    let yx = alg.mul(y, x);
    let sym: ExactVector = xy.iter().zip(&yx).map(|(a, b)| a + b).collect();
    Scalar::from_integer(2.into()) * split.rho_of(x) * split.rho_of(y)
        - split.rho_of(&sym) * frac(1, 2)
}

/// Gram matrix of [`scalar_product`] over the given vectors.
pub fn gram_matrix(
    alg: &AlgebraPresentation,
    split: &FrobeniusSplit,
    basis: &[ExactVector],
) -> ExactMatrix {
    let n = basis.len();
    let mut g = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let s = scalar_product(alg, split, &basis[i], &basis[j]);
            g[(j, i)] = s.clone();
            g[(i, j)] = s;
        }
    }
    g
}

/// `true` iff `S` is orthogonal and preserves the 7-dimensional vector
/// product on all 21 basis pairs.
pub fn g2_check(s: &ExactMatrix) -> Result<bool, AlgebraError> {
    if s.rows() != 7 || s.cols() != 7 {
        return Err(AlgebraError::DimensionMismatch {
            expected: 49,
            found: s.rows() * s.cols(),
        });
    }
    if !s.is_orthogonal() {
        return Ok(false);
    }
    let cross = VectorProduct { n: 7 };
    let cols: Vec<ExactVector> = (0..7).map(|j| s.column(j)).collect();
    for i in 0..7 {
        for j in i + 1..7 {
            let lhs = s.mul_vec(&cross.apply(&unit(7, i), &unit(7, j))?)?;
            let rhs = cross.apply(&cols[i], &cols[j])?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The rotation `x -> q x q^-1` of the imaginary quaternions, as a 3x3
/// matrix in the basis `(i, j, k)`. Rational whenever `q` is.
pub fn quaternion_rotation(q: &[Scalar]) -> Result<ExactMatrix, AlgebraError> {
    let norm = dot(q, q);
    if norm.is_zero() {
        return Err(AlgebraError::Malformed("zero quaternion".into()));
    }
    let qc = quat_conj(q);
    let cols: Vec<ExactVector> = (1..4)
        .map(|i| {
            let r = quat_mul(&quat_mul(q, &unit(4, i)), &qc);
            r[1..].iter().map(|x| x / &norm).collect()
        })
        .collect();
    Ok(ExactMatrix::from_columns(&cols)?)
}

/// The `G2` element induced by a quaternion automorphism `phi` (given by its
/// 3x3 rotation matrix): `(a, b) -> (phi(a), phi(b))` acts on the imaginary
/// octonions `(i, j, k, l, il, jl, kl)` as `diag(R, 1, R)`.
pub fn extend_quaternion_automorphism(r: &ExactMatrix) -> Result<ExactMatrix, AlgebraError> {
    if r.rows() != 3 || r.cols() != 3 {
        return Err(AlgebraError::DimensionMismatch {
            expected: 9,
            found: r.rows() * r.cols(),
        });
    }
    if !r.is_orthogonal() || !r.has_unit_determinant() {
        return Err(AlgebraError::Malformed(
            "not a rotation of the imaginary quaternions".into(),
        ));
    }
    let mut s = ExactMatrix::zeros(7, 7);
    for i in 0..3 {
        for j in 0..3 {
            s[(i, j)] = r[(i, j)].clone();
            s[(i + 4, j + 4)] = r[(i, j)].clone();
        }
    }
    s[(3, 3)] = Scalar::one();
    Ok(s)
}
