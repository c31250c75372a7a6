//! Dissident maps, dissident triples, matrix quadruples and the induced
//! self-map `eta_P` of projective space.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exact::{dot, normalize_line, ExactError, ExactMatrix, ExactVector, Scalar};
use crate::octonion::VectorProduct;
use crate::sample;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DissidentError {
    #[error("dissident maps are only constructed on R^3 and R^7, not R^{0}")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("structure tensor is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("form matrix is not antisymmetric")]
    FormNotAntisymmetric,
    #[error("invalid matrix quadruple: {0}")]
    InvalidQuadruple(String),
    #[error("zero vector has no line")]
    ZeroVector,
    #[error("image of the orthogonal complement is not a hyperplane")]
    DegenerateSpan,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn check_len(v: &[Scalar], n: usize) -> Result<(), DissidentError> {
    if v.len() == n {
        Ok(())
    } else {
        Err(DissidentError::DimensionMismatch {
            expected: n,
            found: v.len(),
        })
    }
}

/// An antisymmetric bilinear map `eta: V x V -> V` on `R^n`, stored as the
/// tensor `t[i][j][k]` with `eta(e_i, e_j) = sum_k t[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DissidentMap {
    n: usize,
    tensor: Vec<Scalar>,
}

impl DissidentMap {
    /// Checks the dimension and antisymmetry of a row-major `n x n x n`
    /// tensor.
    pub fn new(n: usize, tensor: Vec<Scalar>) -> Result<Self, DissidentError> {
        if n != 3 && n != 7 {
            return Err(DissidentError::UnsupportedDimension(n));
        }
        if tensor.len() != n * n * n {
            return Err(DissidentError::DimensionMismatch {
                expected: n * n * n,
                found: tensor.len(),
            });
        }
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let a = &tensor[(i * n + j) * n + k];
                    let b = &tensor[(j * n + i) * n + k];
                    if *a != -b {
                        return Err(DissidentError::NotAntisymmetric(i, j));
                    }
                }
            }
        }
        Ok(Self { n, tensor })
    }

    /// Builds the tensor from `eta(e_i, e_j)` for `i < j`.
    pub fn from_basis_pairs<F>(n: usize, mut f: F) -> Result<Self, DissidentError>
    where
        F: FnMut(usize, usize) -> ExactVector,
    {
        let mut tensor = vec![Scalar::zero(); n * n * n];
        for i in 0..n {
            for j in i + 1..n {
                let image = f(i, j);
                check_len(&image, n)?;
                for (k, x) in image.into_iter().enumerate() {
                    tensor[(j * n + i) * n + k] = -&x;
                    tensor[(i * n + j) * n + k] = x;
                }
            }
        }
        Self::new(n, tensor)
    }

    /// The vector product on `R^3` or `R^7`.
    pub fn cross(n: usize) -> Result<Self, DissidentError> {
        let vp = VectorProduct::new(n).map_err(|_| DissidentError::UnsupportedDimension(n))?;
        Self::new(n, vp.tensor())
    }

    pub fn zero(n: usize) -> Result<Self, DissidentError> {
        Self::new(n, vec![Scalar::zero(); n * n * n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row-major tensor entries.
    pub fn tensor(&self) -> &[Scalar] {
        &self.tensor
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.tensor[(i * self.n + j) * self.n + k]
    }

    pub fn basis_image(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.n + j) * self.n;
        &self.tensor[start..start + self.n]
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.iter().all(Zero::is_zero)
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Scalar, other: &Self) -> Result<Self, DissidentError> {
        if other.n != self.n {
            return Err(DissidentError::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let tensor = self
            .tensor
            .iter()
            .zip(&other.tensor)
            .map(|(a, b)| a + c * b)
            .collect();
        Ok(Self { n: self.n, tensor })
    }

    /// `(v, w) -> (v^t A w) u` for antisymmetric `A`.
    pub fn rank_one(a: &ExactMatrix, u: &[Scalar]) -> Result<Self, DissidentError> {
        let n = u.len();
        if a.rows() != n || a.cols() != n {
            return Err(DissidentError::DimensionMismatch {
                expected: n,
                found: a.rows().max(a.cols()),
            });
        }
        if !a.is_antisymmetric() {
            return Err(DissidentError::FormNotAntisymmetric);
        }
        Self::from_basis_pairs(n, |i, j| u.iter().map(|x| x * &a[(i, j)]).collect())
    }

    /// `eta(v, w)`.
    pub fn eval(&self, v: &[Scalar], w: &[Scalar]) -> Result<ExactVector, DissidentError> {
        check_len(v, self.n)?;
        check_len(w, self.n)?;
        let mut out = vec![Scalar::zero(); self.n];
        for (i, vi) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, wj) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                if i == j {
                    continue;
                }
                let c = vi * wj;
                for (o, t) in out.iter_mut().zip(self.basis_image(i, j)) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `eta(v ^ w)` evaluated from the tensor.
pub fn eval_eta(
    eta: &DissidentMap,
    v: &[Scalar],
    w: &[Scalar],
) -> Result<ExactVector, DissidentError> {
    eta.eval(v, w)
}

/// A Euclidean space `R^n`, an antisymmetric form `xi(v ^ w) = v^t A w` and
/// a dissident map on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DissidentTriple {
    xi: ExactMatrix,
    eta: DissidentMap,
}

impl DissidentTriple {
    pub fn new(xi: ExactMatrix, eta: DissidentMap) -> Result<Self, DissidentError> {
        let n = eta.n();
        if xi.rows() != n || xi.cols() != n {
            return Err(DissidentError::DimensionMismatch {
                expected: n,
                found: xi.rows().max(xi.cols()),
            });
        }
        if !xi.is_antisymmetric() {
            return Err(DissidentError::FormNotAntisymmetric);
        }
        Ok(Self { xi, eta })
    }

    /// `(R^n, 0, x)`.
    pub fn cross(n: usize) -> Result<Self, DissidentError> {
        Self::new(ExactMatrix::zeros(n, n), DissidentMap::cross(n)?)
    }

    pub fn n(&self) -> usize {
        self.eta.n()
    }

    pub fn xi(&self) -> &ExactMatrix {
        &self.xi
    }

    pub fn eta(&self) -> &DissidentMap {
        &self.eta
    }

    pub fn xi_of(&self, v: &[Scalar], w: &[Scalar]) -> Result<Scalar, DissidentError> {
        Ok(dot(v, &self.xi.mul_vec(w)?))
    }
}

/// `(A, B, C, D)`: `A`, `B` antisymmetric, `C` symmetric positive definite,
/// `D` symmetric positive definite of determinant 1, all `7 x 7`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixQuadruple {
    a: ExactMatrix,
    b: ExactMatrix,
    c: ExactMatrix,
    d: ExactMatrix,
}

impl MatrixQuadruple {
    pub fn new(
        a: ExactMatrix,
        b: ExactMatrix,
        c: ExactMatrix,
        d: ExactMatrix,
    ) -> Result<Self, DissidentError> {
        let invalid = |s: &str| Err(DissidentError::InvalidQuadruple(s.into()));
        for m in [&a, &b, &c, &d] {
            if m.rows() != 7 || m.cols() != 7 {
                return invalid("all four matrices must be 7x7");
            }
        }
        if !a.is_antisymmetric() {
            return invalid("A is not antisymmetric");
        }
        if !b.is_antisymmetric() {
            return invalid("B is not antisymmetric");
        }
        if !(c.is_symmetric() && c.is_positive_definite()) {
            return invalid("C is not symmetric positive definite");
        }
        if !(d.is_symmetric() && d.is_positive_definite()) {
            return invalid("D is not symmetric positive definite");
        }
        if !d.has_unit_determinant() {
            return invalid("det D is not 1");
        }
        Ok(Self { a, b, c, d })
    }

    /// `(0, 0, I, I)`.
    pub fn identity() -> Self {
        let i = ExactMatrix::identity(7);
        let z = ExactMatrix::zeros(7, 7);
        Self {
            a: z.clone(),
            b: z,
            c: i.clone(),
            d: i,
        }
    }

    pub fn random(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::new(
            sample::antisymmetric(&mut rng, 7),
            sample::antisymmetric(&mut rng, 7),
            sample::positive_definite(&mut rng, 7),
            sample::unimodular_positive_definite(&mut rng, 7),
        )
        .expect("generators satisfy the quadruple predicates")
    }

    pub fn a(&self) -> &ExactMatrix {
        &self.a
    }

    pub fn b(&self) -> &ExactMatrix {
        &self.b
    }

    pub fn c(&self) -> &ExactMatrix {
        &self.c
    }

    pub fn d(&self) -> &ExactMatrix {
        &self.d
    }

    /// `(S A S^t, S B S^t, S C S^t, S D S^t)`.
    pub fn conjugate(&self, s: &ExactMatrix) -> Result<Self, DissidentError> {
        let st = s.transpose();
        let conj = |m: &ExactMatrix| s.mul(m).and_then(|x| x.mul(&st));
        Self::new(
            conj(&self.a)?,
            conj(&self.b)?,
            conj(&self.c)?,
            conj(&self.d)?,
        )
    }
}

/// `xi(v ^ w) = v^t A w`, `eta(v ^ w) = (B + C) D (Dv x Dw)`.
pub fn quadruple_to_triple(q: &MatrixQuadruple) -> DissidentTriple {
    let cross = VectorProduct::new(7).expect("seven");
    let outer = q.b.add(&q.c).and_then(|bc| bc.mul(&q.d)).expect("7x7");
    let cols: Vec<ExactVector> = (0..7).map(|j| q.d.column(j)).collect();
    let eta = DissidentMap::from_basis_pairs(7, |i, j| {
        let p = cross.apply(&cols[i], &cols[j]).expect("seven");
        outer.mul_vec(&p).expect("seven")
    })
    .expect("shape");
    DissidentTriple::new(q.a.clone(), eta).expect("A is antisymmetric")
}

/// Outcome of a sampled search for a failure of dissidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Falsification {
    NoCounterexample { trials: usize },
    Counterexample { v: ExactVector, w: ExactVector },
}

impl Falsification {
    pub fn passed(&self) -> bool {
        matches!(self, Self::NoCounterexample { .. })
    }
}

fn rank_of_rows(rows: &[&[Scalar]]) -> usize {
    ExactMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
        .expect("rows share a length")
        .rank()
}

/// Samples `trials` independent rational pairs `(v, w)` and checks that
/// `v, w, eta(v ^ w)` have rank 3. Dependent pairs are redrawn.
pub fn dissidence_falsify(eta: &DissidentMap, trials: usize, seed: u64) -> Falsification {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = eta.n();
    let mut done = 0;
    while done < trials {
        let v = sample::vector(&mut rng, n);
        let w = sample::vector(&mut rng, n);
        if rank_of_rows(&[&v, &w]) < 2 {
            continue;
        }
        done += 1;
        let e = eta.eval(&v, &w).expect("sized");
        if rank_of_rows(&[&v, &w, &e]) < 3 {
            return Falsification::Counterexample { v, w };
        }
    }
    Falsification::NoCounterexample { trials }
}

/// `eta_P([v]) = eta(v ^ v^perp)^perp`, as a normalized integer vector.
///
/// `v^perp` is spanned by `w_i = |v|^2 e_i - v_i v`. The result is the
/// one-dimensional kernel of the matrix with rows `eta(v ^ w_i)`.
pub fn eta_p_point(eta: &DissidentMap, v: &[Scalar]) -> Result<Vec<BigInt>, DissidentError> {
    let n = eta.n();
    check_len(v, n)?;
    if v.iter().all(Zero::is_zero) {
        return Err(DissidentError::ZeroVector);
    }
    let norm = dot(v, v);
    let rows = (0..n)
        .map(|i| {
            let w: ExactVector = v
                .iter()
                .enumerate()
                .map(|(k, vk)| {
                    let diag = if k == i { norm.clone() } else { Scalar::zero() };
                    diag - &v[i] * vk
                })
                .collect();
            eta.eval(v, &w)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let kernel = ExactMatrix::from_rows(rows)?.kernel();
    match kernel.as_slice() {
        [line] => Ok(normalize_line(line)),
        _ => Err(DissidentError::DegenerateSpan),
    }
}

/// `true` iff `phi` is orthogonal, `xi = xi' (phi ^ phi)` and
/// `phi eta = eta' (phi ^ phi)` on all basis pairs.
pub fn triple_morphism_check(
    src: &DissidentTriple,
    dst: &DissidentTriple,
    phi: &ExactMatrix,
) -> Result<bool, DissidentError> {
    let n = src.n();
    if dst.n() != n {
        return Err(DissidentError::DimensionMismatch {
            expected: n,
            found: dst.n(),
        });
    }
    if phi.rows() != n || phi.cols() != n {
        return Err(DissidentError::DimensionMismatch {
            expected: n,
            found: phi.rows().max(phi.cols()),
        });
    }
    if !phi.is_orthogonal() {
        return Ok(false);
    }
    let images: Vec<ExactVector> = (0..n).map(|j| phi.column(j)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if src.xi()[(i, j)] != dst.xi_of(&images[i], &images[j])? {
                return Ok(false);
            }
            let lhs = phi.mul_vec(src.eta().basis_image(i, j))?;
            if lhs != dst.eta().eval(&images[i], &images[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
