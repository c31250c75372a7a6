//! Real quadratic division algebras: the algebra of a dissident triple,
//! recovery of the triple from an algebra, the algebra of a matrix
//! quadruple, and exact or sampled checks of the defining properties.

mod presentation;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use presentation::AlgebraPresentation;

use crate::dissident::{DissidentError, DissidentMap, DissidentTriple, MatrixQuadruple};
use crate::exact::{frac, ExactError, ExactMatrix, ExactVector, Scalar};
use crate::octonion::{
    frobenius_split, gram_matrix, scalar_product, FrobeniusSplit, VectorProduct,
};
use crate::sample;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("algebra has no two-sided unity")]
    NotUnital,
    #[error("algebra is not quadratic")]
    NotQuadratic,
    #[error("unsupported algebra dimension {0}")]
    BadDimension(usize),
    #[error("vector products exist on R^3 and R^7, not R^{0}")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Dissident(#[from] DissidentError),
}

/// The algebra `R x V` of a triple, with
/// `(a, v)(b, w) = (ab - <v, w> + xi(v ^ w), a w + b v + eta(v ^ w))`
/// over the basis `(1, e_1, ..., e_n)`.
pub fn make_qda(t: &DissidentTriple) -> AlgebraPresentation {
    let n = t.n();
    AlgebraPresentation::from_basis_products(n + 1, |i, j| {
        let mut out = vec![Scalar::zero(); n + 1];
        match (i, j) {
            (0, k) | (k, 0) => out[k] = Scalar::one(),
            _ => {
                let (a, b) = (i - 1, j - 1);
                out[0] = t.xi()[(a, b)].clone();
                if a == b {
                    out[0] -= Scalar::one();
                }
                for (o, x) in out[1..].iter_mut().zip(t.eta().basis_image(a, b)) {
                    *o = x.clone();
                }
            }
        }
        out
    })
    .expect("unity is e_0 by construction")
}

/// The algebra of a matrix quadruple, straight from
/// `(a, v)(b, w) = (ab - v^t w + v^t A w, a w + b v + (B + C) D (Dv x Dw))`.
pub fn quadruple_algebra(q: &MatrixQuadruple) -> AlgebraPresentation {
    let cross = VectorProduct::new(7).expect("seven");
    let outer = q.b().add(q.c()).and_then(|m| m.mul(q.d())).expect("7x7");
    let unit7 = |i: usize| sample::unit(7, i);
    AlgebraPresentation::from_basis_products(8, |i, j| {
        let split = |k: usize| -> (Scalar, ExactVector) {
            if k == 0 {
                (Scalar::one(), vec![Scalar::zero(); 7])
            } else {
                (Scalar::zero(), unit7(k - 1))
            }
        };
        let (a, v) = split(i);
        let (b, w) = split(j);
        let aw = q.a().mul_vec(&w).expect("seven");
        let scalar = &a * &b - crate::exact::dot(&v, &w) + crate::exact::dot(&v, &aw);
        let dv = q.d().mul_vec(&v).expect("seven");
        let dw = q.d().mul_vec(&w).expect("seven");
        let eta = outer
            .mul_vec(&cross.apply(&dv, &dw).expect("seven"))
            .expect("seven");
        let mut out = vec![scalar];
        out.extend((0..7).map(|k| &a * &w[k] + &b * &v[k] + &eta[k]));
        out
    })
    .expect("unity is e_0 by construction")
}

/// An orthogonal basis of `V` whose squared norms are not all rational
/// squares, so no rational orthonormal basis was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChangeCertificate {
    pub orthogonal_basis: Vec<ExactVector>,
    pub squared_norms: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recovery {
    /// The triple together with the orthonormal basis of `V` it is
    /// expressed in (coordinates in the algebra's basis).
    Triple {
        triple: DissidentTriple,
        basis: Vec<ExactVector>,
    },
    Certificate(BasisChangeCertificate),
}

impl Recovery {
    pub fn triple(&self) -> Option<&DissidentTriple> {
        match self {
            Self::Triple { triple, .. } => Some(triple),
            Self::Certificate(_) => None,
        }
    }
}

fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Scalar::new(root(x.numer())?, root(x.denom())?))
}

/// Orthonormal basis of `V` for the scalar product, if one exists over `Q`.
fn orthonormalize(
    alg: &AlgebraPresentation,
    split: &FrobeniusSplit,
) -> Result<Result<Vec<ExactVector>, BasisChangeCertificate>, AlgebraError> {
    let basis = &split.imaginary;
    if gram_matrix(alg, split, basis) == ExactMatrix::identity(basis.len()) {
        return Ok(Ok(basis.clone()));
    }
    let mut ortho: Vec<ExactVector> = Vec::with_capacity(basis.len());
    let mut norms: Vec<Scalar> = Vec::with_capacity(basis.len());
    for b in basis {
        let mut u = b.clone();
        for (o, q) in ortho.iter().zip(&norms) {
            let c = scalar_product(alg, split, b, o) / q;
            for (x, y) in u.iter_mut().zip(o) {
                *x -= &c * y;
            }
        }
        let q = scalar_product(alg, split, &u, &u);
        if !q.is_positive() {
            return Err(AlgebraError::Malformed(
                "scalar product is not positive definite".into(),
            ));
        }
        ortho.push(u);
        norms.push(q);
    }
    let roots: Option<Vec<Scalar>> = norms.iter().map(rational_sqrt).collect();
    Ok(match roots {
        Some(roots) => Ok(ortho
            .into_iter()
            .zip(roots)
            .map(|(u, r)| u.into_iter().map(|x| x / &r).collect())
            .collect()),
        None => Err(BasisChangeCertificate {
            orthogonal_basis: ortho,
            squared_norms: norms,
        }),
    })
}

/// Recovers `(V, xi, eta)` from a quadratic algebra of dimension 4 or 8:
/// `eta(v ^ w) = iota(vw)` and `xi(v ^ w) = (rho(vw) - rho(wv)) / 2`, in an
/// orthonormal basis of `V`.
pub fn recover_triple(alg: &AlgebraPresentation) -> Result<Recovery, AlgebraError> {
    let dim = alg.dim();
    if dim != 4 && dim != 8 {
        return Err(AlgebraError::BadDimension(dim));
    }
    let split = frobenius_split(alg)?;
    let basis = match orthonormalize(alg, &split)? {
        Ok(b) => b,
        Err(cert) => return Ok(Recovery::Certificate(cert)),
    };
    let n = dim - 1;
    let mut xi = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let a = split.rho_of(&alg.mul(&basis[i], &basis[j]));
            let b = split.rho_of(&alg.mul(&basis[j], &basis[i]));
            let x = (a - b) * frac(1, 2);
            xi[(j, i)] = -&x;
            xi[(i, j)] = x;
        }
    }
    let eta = DissidentMap::from_basis_pairs(n, |i, j| {
        let image = split.iota(&alg.mul(&basis[i], &basis[j]));
        basis
            .iter()
            .map(|u| scalar_product(alg, &split, &image, u))
            .collect()
    })?;
    Ok(Recovery::Triple {
        triple: DissidentTriple::new(xi, eta)?,
        basis,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionCheck {
    NoCounterexample { trials: usize },
    Counterexample { a: ExactVector },
}

impl DivisionCheck {
    pub fn passed(&self) -> bool {
        matches!(self, Self::NoCounterexample { .. })
    }
}

/// Samples nonzero rational `a` and checks `det L_a != 0` and
/// `det R_a != 0` exactly. Never certifies the division property.
pub fn division_check(alg: &AlgebraPresentation, trials: usize, seed: u64) -> DivisionCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let a = sample::nonzero_vector(&mut rng, alg.dim());
        let singular = |m: ExactMatrix| m.det().expect("square").is_zero();
        if singular(alg.left_mul(&a)) || singular(alg.right_mul(&a)) {
            return DivisionCheck::Counterexample { a };
        }
    }
    DivisionCheck::NoCounterexample { trials }
}

fn in_span(vectors: &[ExactVector]) -> usize {
    ExactMatrix::from_rows(vectors.to_vec())
        .expect("same length")
        .rank()
}

/// Decides whether `1, x, x^2` are dependent for every `x`.
///
/// With `rho` from [`frobenius_split`], the algebra is quadratic iff
/// `e_i e_j + e_j e_i - 2 rho(e_i) e_j - 2 rho(e_j) e_i` lies on the unity
/// line for all `i <= j`. This exact test is followed by a rank check of
/// `(1, x, x^2)` on a fixed set of samples.
pub fn quadratic_check(alg: &AlgebraPresentation) -> Result<bool, AlgebraError> {
    if !alg.unity_is_two_sided() {
        return Err(AlgebraError::NotUnital);
    }
    let split = match frobenius_split(alg) {
        Ok(s) => s,
        Err(AlgebraError::NotQuadratic) => return Ok(false),
        Err(e) => return Err(e),
    };
    let n = alg.dim();
    let unity = alg.unity().to_vec();
    let two = Scalar::from_integer(2.into());
    for i in 0..n {
        for j in i..n {
            let ri = &two * &split.rho[i];
            let rj = &two * &split.rho[j];
            let ij = alg.basis_product(i, j);
            let ji = alg.basis_product(j, i);
            let mut p: ExactVector = ij.iter().zip(&ji).map(|(a, b)| a + b).collect();
            p[j] -= &ri;
            p[i] -= &rj;
            if in_span(&[unity.clone(), p]) > 1 {
                return Ok(false);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x9ad);
    for _ in 0..16 {
        let x = sample::vector(&mut rng, n);
        let xx = alg.mul(&x, &x);
        if in_span(&[unity.clone(), x, xx]) > 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `true` iff `f` is nonzero and `f(e_i e_j) = f(e_i) f(e_j)` on all
/// basis pairs.
pub fn algebra_morphism_check(
    src: &AlgebraPresentation,
    dst: &AlgebraPresentation,
    f: &ExactMatrix,
) -> Result<bool, AlgebraError> {
    if f.rows() != dst.dim() || f.cols() != src.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: dst.dim() * src.dim(),
            found: f.rows() * f.cols(),
        });
    }
    if f.to_rows().iter().flatten().all(Zero::is_zero) {
        return Ok(false);
    }
    let images: Vec<ExactVector> = (0..src.dim()).map(|j| f.column(j)).collect();
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            if f.mul_vec(&src.basis_product(i, j))? != dst.mul(&images[i], &images[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `diag(1, phi)`: the algebra map induced by a morphism of triples.
pub fn induced_morphism(phi: &ExactMatrix) -> ExactMatrix {
    let n = phi.rows();
    let mut f = ExactMatrix::zeros(n + 1, n + 1);
    f[(0, 0)] = Scalar::one();
    for i in 0..n {
        for j in 0..n {
            f[(i + 1, j + 1)] = phi[(i, j)].clone();
        }
    }
    f
}
