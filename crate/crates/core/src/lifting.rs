//! Polynomial liftings of `eta_P` and the degree of a dissident map.
//!
//! A lifting of degree `d` is a vector `Phi` of homogeneous polynomials of
//! degree `d` with `[Phi(v)] = eta_P([v])`. Since `eta_P([v])` is the line
//! orthogonal to `eta(v ^ v^perp)`, the condition is linear in the
//! coefficients of `Phi`:
//!
//! `<Phi(v), eta(v ^ (|v|^2 w - <v, w> v))> = 0` for all `v, w`.
//!
//! The left side equals `|v|^2 <Phi(v), eta(v ^ w)>`, so both forms have
//! the same solutions; the solver uses the smaller one.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dissident::{eta_p_point, DissidentError, DissidentMap};
use crate::exact::{
    monomials, normalize_line, poly_content_gcd, to_scalars, ExactVector, HomogeneousPoly, Scalar,
    SparseMatrix,
};
use crate::sample;

pub const MAX_DEGREE: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftingError {
    #[error("candidate degree {0} is outside 1..=5")]
    DegreeOutOfRange(u32),
    #[error("no lifting of degree at most {max_degree}")]
    NoLiftingFound { max_degree: u32 },
    #[error("eta_P is undefined at a sampled point: the map is not dissident")]
    NotDissidentAt { v: ExactVector },
    #[error("{dimension} independent validated solutions at degree {degree}")]
    AmbiguousKernel { degree: u32, dimension: usize },
    #[error("computed degree {0} is even")]
    OddnessViolation(u32),
    #[error("components must be {expected} polynomials in {expected} variables")]
    Shape { expected: usize },
    #[error(transparent)]
    Dissident(#[from] DissidentError),
}

/// A polynomial map `R^n -> R^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lifting {
    components: Vec<HomogeneousPoly>,
}

impl Lifting {
    /// Requires `n` components in `n` variables. Homogeneity of a common
    /// degree and coprimality are checked by [`verify_lifting`].
    pub fn new(components: Vec<HomogeneousPoly>) -> Result<Self, LiftingError> {
        let n = components.len();
        if n == 0 || components.iter().any(|p| p.nvars() != n) {
            return Err(LiftingError::Shape { expected: n });
        }
        Ok(Self { components })
    }

    /// `Phi(v) = v`.
    pub fn identity(n: usize) -> Self {
        Self {
            components: (0..n).map(|i| HomogeneousPoly::variable(n, i)).collect(),
        }
    }

    /// Components from a coefficient vector in solver column order:
    /// component-major, monomials ascending within each component.
    pub fn from_coefficients(n: usize, d: u32, coeffs: &[Scalar]) -> Self {
        let mons = monomials(n, d);
        assert_eq!(coeffs.len(), n * mons.len());
        let components = coeffs
            .chunks(mons.len())
            .map(|chunk| {
                HomogeneousPoly::from_terms(n, d, mons.iter().cloned().zip(chunk.iter().cloned()))
                    .expect("monomials of degree d")
            })
            .collect();
        Self { components }
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[HomogeneousPoly] {
        &self.components
    }

    /// The common degree of the components, if there is one. Zero
    /// components take their nominal degree.
    pub fn degree(&self) -> Option<u32> {
        let d = self.components[0].degree();
        self.components.iter().all(|p| p.degree() == d).then_some(d)
    }

    pub fn eval(&self, v: &[Scalar]) -> ExactVector {
        self.components.iter().map(|p| p.eval(v)).collect()
    }

    /// Coefficients in solver column order.
    pub fn coefficients(&self) -> Option<Vec<Scalar>> {
        let d = self.degree()?;
        let mons = monomials(self.n(), d);
        Some(
            self.components
                .iter()
                .flat_map(|p| mons.iter().map(move |m| p.coeff(m)))
                .collect(),
        )
    }

    /// Multiplies every component by `p`.
    pub fn times(&self, p: &HomogeneousPoly) -> Self {
        Self {
            components: self
                .components
                .iter()
                .map(|c| c.mul(p).expect("same variables"))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(HomogeneousPoly::is_zero)
    }
}

fn check_degree(d: u32) -> Result<(), LiftingError> {
    if (1..=MAX_DEGREE).contains(&d) {
        Ok(())
    } else {
        Err(LiftingError::DegreeOutOfRange(d))
    }
}

fn monomial_index(n: usize, degree: u32) -> BTreeMap<Vec<u32>, usize> {
    monomials(n, degree)
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect()
}

fn bumped(m: &[u32], bumps: &[usize]) -> Vec<u32> {
    let mut e = m.to_vec();
    for &b in bumps {
        e[b] += 1;
    }
    e
}

fn assemble(ncols: usize, nrows: usize, entries: Vec<(usize, usize, Scalar)>) -> SparseMatrix {
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nrows];
    for (r, c, x) in entries {
        rows[r].push((c, x));
    }
    let mut m = SparseMatrix::new(ncols);
    for row in rows {
        m.push_row(row);
    }
    m
}

/// The coefficient system of `<Phi(v), eta(v ^ (|v|^2 w - <v, w> v))> = 0`.
///
/// Rows are indexed by `(l, m)`, the coefficient of `w_l v^m` with
/// `|m| = d + 3`; columns by `(k, m)`, the coefficient of `v^m` in `Phi_k`
/// with `|m| = d`.
pub fn build_constraint_system(eta: &DissidentMap, d: u32) -> Result<SparseMatrix, LiftingError> {
    check_degree(d)?;
    let n = eta.n();
    let cols = monomials(n, d);
    let rows = monomial_index(n, d + 3);
    let mut entries = Vec::new();
    for k in 0..n {
        for (ci, m) in cols.iter().enumerate() {
            let col = k * cols.len() + ci;
            for i in 0..n {
                for l in 0..n {
                    // |v|^2 w_l term: v_i * v_j^2 * t[i][l][k].
                    let t = eta.entry(i, l, k);
                    if !t.is_zero() {
                        for j in 0..n {
                            let r = l * rows.len() + rows[&bumped(m, &[i, j, j])];
                            entries.push((r, col, t.clone()));
                        }
                    }
                    // -<v, w> v term: -w_l v_l v_i v_j t[i][j][k].
                    for j in 0..n {
                        let t = eta.entry(i, j, k);
                        if !t.is_zero() {
                            let r = l * rows.len() + rows[&bumped(m, &[l, i, j])];
                            entries.push((r, col, -t));
                        }
                    }
                }
            }
        }
    }
    Ok(assemble(n * cols.len(), n * rows.len(), entries))
}

/// The coefficient system of `<Phi(v), eta(v ^ w)> = 0`, rows indexed by
/// `(l, m)` with `|m| = d + 1`. Same kernel as
/// [`build_constraint_system`].
pub fn build_reduced_system(eta: &DissidentMap, d: u32) -> Result<SparseMatrix, LiftingError> {
    check_degree(d)?;
    let n = eta.n();
    let cols = monomials(n, d);
    let rows = monomial_index(n, d + 1);
    let mut entries = Vec::new();
    for k in 0..n {
        for (ci, m) in cols.iter().enumerate() {
            let col = k * cols.len() + ci;
            for i in 0..n {
                let r0 = rows[&bumped(m, &[i])];
                for l in 0..n {
                    let t = eta.entry(i, l, k);
                    if !t.is_zero() {
                        entries.push((l * rows.len() + r0, col, t.clone()));
                    }
                }
            }
        }
    }
    Ok(assemble(n * cols.len(), n * rows.len(), entries))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub max_degree: u32,
    /// Random points for pointwise validation.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            max_degree: MAX_DEGREE,
            samples: 64,
            seed: 0,
        }
    }
}

/// Outcome of one candidate degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeScan {
    pub degree: u32,
    /// Dimension of the solution space of the constraint system.
    pub kernel_dimension: usize,
    /// Dimension of the subspace that agrees with `eta_P` at every sample.
    pub validated_dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingSolution {
    pub lifting: Lifting,
    /// One entry per scanned degree, ending with the accepted one.
    pub scan: Vec<DegreeScan>,
}

impl LiftingSolution {
    pub fn degree(&self) -> u32 {
        self.lifting.degree().expect("solver output is homogeneous")
    }
}

struct Sample {
    monomial_values: Vec<Scalar>,
    line: Vec<BigInt>,
    pivot: usize,
}

fn sample_points(
    eta: &DissidentMap,
    samples: usize,
    seed: u64,
) -> Result<Vec<(ExactVector, Vec<BigInt>)>, LiftingError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample::integer_points(&mut rng, eta.n(), samples, 6)
        .into_iter()
        .map(|v| match eta_p_point(eta, &v) {
            Ok(line) => Ok((v, line)),
            Err(DissidentError::DegenerateSpan) => Err(LiftingError::NotDissidentAt { v }),
            Err(e) => Err(e.into()),
        })
        .collect()
}

fn monomial_values(v: &[Scalar], mons: &[Vec<u32>]) -> Vec<Scalar> {
    mons.iter()
        .map(|m| {
            m.iter()
                .zip(v)
                .filter(|(e, _)| **e > 0)
                .fold(Scalar::one(), |acc, (e, x)| {
                    acc * num_traits::pow(x.clone(), *e as usize)
                })
        })
        .collect()
}

fn eval_coefficients(n: usize, coeffs: &[BigInt], values: &[Scalar]) -> ExactVector {
    coeffs
        .chunks(values.len())
        .take(n)
        .map(|chunk| {
            chunk
                .iter()
                .zip(values)
                .filter(|(c, _)| !c.is_zero())
                .fold(Scalar::zero(), |acc, (c, x)| {
                    acc + x * Scalar::from_integer(c.clone())
                })
        })
        .collect()
}

/// Scans `d = 1, ..., max_degree` for the lifting of `eta_P`.
///
/// At each degree the constraint kernel is computed exactly; its elements
/// are then restricted to those whose value at every sample point lies on
/// the line `eta_P_point(eta, v)`. The first degree with a nonzero such
/// element wins. More than one independent element there is reported as
/// [`LiftingError::AmbiguousKernel`].
pub fn solve_lifting(
    eta: &DissidentMap,
    opts: &SolveOptions,
) -> Result<LiftingSolution, LiftingError> {
    check_degree(opts.max_degree)?;
    let n = eta.n();
    let points = sample_points(eta, opts.samples, opts.seed)?;
    let mut scan = Vec::new();
    for d in 1..=opts.max_degree {
        let kernel = build_reduced_system(eta, d)?.kernel();
        let mut entry = DegreeScan {
            degree: d,
            kernel_dimension: kernel.len(),
            validated_dimension: 0,
        };
        if kernel.is_empty() {
            scan.push(entry);
            continue;
        }
        let mons = monomials(n, d);
        let samples: Vec<Sample> = points
            .iter()
            .map(|(v, line)| Sample {
                monomial_values: monomial_values(v, &mons),
                pivot: line
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("nonzero line"),
                line: line.clone(),
            })
            .collect();

        // Phi = sum_j c_j K_j must satisfy Phi_l N_p - Phi_p N_l = 0 at
        // each sample, with N the expected line and p a pivot of N.
        let mut validation = SparseMatrix::new(kernel.len());
        for s in &samples {
            let values: Vec<ExactVector> = kernel
                .iter()
                .map(|k| eval_coefficients(n, k, &s.monomial_values))
                .collect();
            let np = Scalar::from_integer(s.line[s.pivot].clone());
            for l in (0..n).filter(|&l| l != s.pivot) {
                let nl = Scalar::from_integer(s.line[l].clone());
                validation.push_row(
                    values
                        .iter()
                        .enumerate()
                        .map(|(j, phi)| (j, &phi[l] * &np - &phi[s.pivot] * &nl))
                        .collect(),
                );
            }
        }
        let validated = validation.kernel();
        entry.validated_dimension = validated.len();
        match validated.len() {
            0 => {
                scan.push(entry);
                continue;
            }
            1 => {}
            dimension => {
                return Err(LiftingError::AmbiguousKernel {
                    degree: d,
                    dimension,
                })
            }
        }
        let c = &validated[0];
        let mut coeffs = vec![BigInt::zero(); kernel[0].len()];
        for (cj, kj) in c.iter().zip(&kernel) {
            if cj.is_zero() {
                continue;
            }
            for (x, y) in coeffs.iter_mut().zip(kj) {
                *x += cj * y;
            }
        }
        let coeffs = normalize_line(&to_scalars(&coeffs));
        let vanishes = samples.iter().any(|s| {
            eval_coefficients(n, &coeffs, &s.monomial_values)
                .iter()
                .all(Zero::is_zero)
        });
        if vanishes {
            entry.validated_dimension = 0;
            scan.push(entry);
            continue;
        }
        scan.push(entry);
        return Ok(LiftingSolution {
            lifting: Lifting::from_coefficients(n, d, &to_scalars(&coeffs)),
            scan,
        });
    }
    Err(LiftingError::NoLiftingFound {
        max_degree: opts.max_degree,
    })
}

/// Degree of a dissident map. On `R^7` an even result is reported as
/// [`LiftingError::OddnessViolation`].
pub fn degree(eta: &DissidentMap, opts: &SolveOptions) -> Result<u32, LiftingError> {
    let d = solve_lifting(eta, opts)?.degree();
    if eta.n() == 7 && d % 2 == 0 {
        return Err(LiftingError::OddnessViolation(d));
    }
    Ok(d)
}

/// Results of checking conditions (a), (b), (c) for a candidate lifting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingReport {
    /// (a): components homogeneous of one common degree `d >= 1`.
    pub homogeneous: bool,
    pub degree: Option<u32>,
    /// (b), symbolic: `<Phi(v), eta(v ^ w_i(v))>` vanishes identically for
    /// every `i`, with `w_i(v) = |v|^2 e_i - v_i v`.
    pub identity_holds: bool,
    /// (b), sampled: `Phi(v) != 0` at every sample.
    pub nonvanishing: bool,
    /// (b), sampled: `[Phi(v)] = eta_P([v])` at every sample.
    pub lines_agree: bool,
    pub samples: usize,
    /// (c): monic gcd of the components, `None` if all are zero.
    pub gcd: Option<HomogeneousPoly>,
}

impl LiftingReport {
    pub fn coprime(&self) -> bool {
        self.gcd.as_ref().is_some_and(|g| g.degree() == 0)
    }

    pub fn passed(&self) -> bool {
        self.homogeneous
            && self.identity_holds
            && self.nonvanishing
            && self.lines_agree
            && self.coprime()
    }
}

/// `eta(v ^ w_i(v))` as a vector of cubic polynomials in `v`.
fn eta_on_complement(eta: &DissidentMap, i: usize) -> Vec<HomogeneousPoly> {
    let n = eta.n();
    let norm = HomogeneousPoly::norm_squared(n);
    let w: Vec<HomogeneousPoly> = (0..n)
        .map(|b| {
            let vi_vb = HomogeneousPoly::variable(n, i).product(&HomogeneousPoly::variable(n, b));
            if b == i {
                norm.difference(&vi_vb)
            } else {
                vi_vb.neg()
            }
        })
        .collect();
    (0..n)
        .map(|k| {
            let mut acc = HomogeneousPoly::zero(n, 3);
            for a in 0..n {
                let va = HomogeneousPoly::variable(n, a);
                for (b, wb) in w.iter().enumerate() {
                    let t = eta.entry(a, b, k);
                    if !t.is_zero() {
                        acc = acc.sum(&va.product(wb).scale(t));
                    }
                }
            }
            acc
        })
        .collect()
}

/// Checks (a), (b) and (c) for `phi`. The symbolic part of (b) is done by
/// polynomial multiplication, independently of the constraint matrices.
pub fn verify_lifting(
    eta: &DissidentMap,
    phi: &Lifting,
    samples: usize,
    seed: u64,
) -> Result<LiftingReport, LiftingError> {
    let n = eta.n();
    if phi.n() != n {
        return Err(LiftingError::Shape { expected: n });
    }
    let degree = phi.degree();
    let homogeneous = degree.is_some_and(|d| d >= 1);

    let identity_holds = (0..n).all(|i| {
        let e = eta_on_complement(eta, i);
        let mut acc: Option<HomogeneousPoly> = None;
        for (p, q) in phi.components().iter().zip(&e) {
            let term = p.product(q);
            acc = Some(match acc {
                Some(a) if a.degree() == term.degree() => a.sum(&term),
                Some(a) if a.is_zero() => term,
                Some(a) if term.is_zero() => a,
                Some(_) => return false,
                None => term,
            });
        }
        acc.is_none_or(|a| a.is_zero())
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nonvanishing = true;
    let mut lines_agree = true;
    for v in sample::integer_points(&mut rng, n, samples, 6) {
        let value = phi.eval(&v);
        if value.iter().all(Zero::is_zero) {
            nonvanishing = false;
            lines_agree = false;
            continue;
        }
        match eta_p_point(eta, &v) {
            Ok(line) if line == normalize_line(&value) => {}
            _ => lines_agree = false,
        }
    }

    Ok(LiftingReport {
        homogeneous,
        degree,
        identity_holds,
        nonvanishing,
        lines_agree,
        samples,
        gcd: poly_content_gcd(phi.components()).ok(),
    })
}
