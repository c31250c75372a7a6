#![allow(dead_code)]

use dissident_core::dissident::DissidentMap;
use dissident_core::exact::{frac, int, ExactMatrix, Scalar};
use dissident_core::sample::sign_tensor;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `v x w + (v^t A w) e_1 / 10` with `A = E_12 - E_21 + E_34 - E_43`.
pub fn degree3_example() -> DissidentMap {
    let mut a = ExactMatrix::zeros(7, 7);
    for (i, j) in [(0, 1), (2, 3)] {
        a[(i, j)] = int(1);
        a[(j, i)] = int(-1);
    }
    let mut u = vec![int(0); 7];
    u[0] = int(1);
    let t = DissidentMap::rank_one(&a, &u).unwrap();
    DissidentMap::cross(7)
        .unwrap()
        .add_scaled(&frac(1, 10), &t)
        .unwrap()
}

/// `v x w + T(v, w) / 20` with `T` a seeded sign tensor.
pub fn degree5_example() -> DissidentMap {
    let t = sign_tensor(&mut ChaCha8Rng::seed_from_u64(1), 7);
    DissidentMap::cross(7)
        .unwrap()
        .add_scaled(&frac(1, 20), &t)
        .unwrap()
}

/// Sufficient condition for `cross + eps T` to be dissident:
/// `eps^2 |T|_F^2 < 1`, since then the component of `eta(v ^ w)`
/// orthogonal to orthonormal `v, w` has norm at least `1 - eps |T|_F`.
pub fn perturbation_is_certified(eta: &DissidentMap) -> bool {
    let n = eta.n();
    let cross = DissidentMap::cross(n).unwrap();
    let diff = eta.add_scaled(&int(-1), &cross).unwrap();
    let norm2: Scalar = diff.tensor().iter().map(|x| x * x).sum();
    norm2 < int(1)
}

/// Univariate polynomials over `Q`, lowest coefficient first.
pub mod upoly {
    use dissident_core::exact::Scalar;
    use num_traits::Zero;

    pub fn trim(mut p: Vec<Scalar>) -> Vec<Scalar> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    pub fn rem(mut a: Vec<Scalar>, b: &[Scalar]) -> Vec<Scalar> {
        let b = trim(b.to_vec());
        let lead = b.last().unwrap().clone();
        a = trim(a);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let q = a.last().unwrap() / &lead;
            for (i, x) in b.iter().enumerate() {
                a[shift + i] -= &q * x;
            }
            a = trim(a);
        }
        a
    }

    pub fn div(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let b = trim(b.to_vec());
        let mut a = trim(a.to_vec());
        if a.len() < b.len() {
            return Vec::new();
        }
        let mut q = vec![Scalar::zero(); a.len() - b.len() + 1];
        let lead = b.last().unwrap().clone();
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let c = a.last().unwrap() / &lead;
            for (i, x) in b.iter().enumerate() {
                a[shift + i] -= &c * x;
            }
            q[shift] = c;
            a = trim(a);
        }
        assert!(a.is_empty(), "inexact division");
        q
    }

    pub fn gcd(a: Vec<Scalar>, b: Vec<Scalar>) -> Vec<Scalar> {
        let (mut a, mut b) = (trim(a), trim(b));
        while !b.is_empty() {
            let r = rem(a, &b);
            a = b;
            b = r;
        }
        a
    }

    /// Lagrange interpolation through `(x_i, y_i)`.
    pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> Vec<Scalar> {
        let n = xs.len();
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            let mut basis = vec![ys[i].clone()];
            for j in (0..n).filter(|&j| j != i) {
                let denom = &xs[i] - &xs[j];
                let mut next = vec![Scalar::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += c / &denom;
                    next[k] -= c * &xs[j] / &denom;
                }
                basis = next;
            }
            for (o, c) in out.iter_mut().zip(basis) {
                *o += c;
            }
        }
        trim(out)
    }

    pub fn eval(p: &[Scalar], x: &Scalar) -> Scalar {
        p.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
    }
}
