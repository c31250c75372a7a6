//! Seeded generators of exact test data. Every function draws from the
//! caller's RNG, so results are a deterministic function of the seed.

use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;

use crate::dissident::DissidentMap;
use crate::exact::{frac, int, ExactMatrix, ExactVector, Scalar};
use crate::octonion::{extend_quaternion_automorphism, quaternion_rotation};

/// A rational `p/q` with `|p| <= 9` and `1 <= q <= 5`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ExactVector {
    (0..n).map(|_| rational(rng)).collect()
}

pub fn nonzero_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ExactVector {
    loop {
        let v = vector(rng, n);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Integer vector with entries in `[-bound, bound]`, never zero.
pub fn integer_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> ExactVector {
    loop {
        let v: ExactVector = (0..n).map(|_| int(rng.gen_range(-bound..=bound))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn integer_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = int(rng.gen_range(-bound..=bound));
        }
    }
    m
}

pub fn antisymmetric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = rational(rng);
            m[(j, i)] = -&x;
            m[(i, j)] = x;
        }
    }
    m
}

/// `L L^t + I` for a random integer `L`.
pub fn positive_definite<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ExactMatrix {
    let l = integer_matrix(rng, n, 2);
    l.mul(&l.transpose())
        .and_then(|m| m.add(&ExactMatrix::identity(n)))
        .expect("square")
}

/// `P^t P` for a random unimodular integer `P`, so the result is positive
/// definite, symmetric and of determinant 1.
pub fn unimodular_positive_definite<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ExactMatrix {
    let mut lower = ExactMatrix::identity(n);
    let mut upper = ExactMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower[(i, j)] = int(rng.gen_range(-1..=1));
            upper[(j, i)] = int(rng.gen_range(-1..=1));
        }
    }
    let p = lower.mul(&upper).expect("square");
    p.transpose().mul(&p).expect("square")
}

/// A rational rotation of `R^3` from a random integer quaternion.
pub fn rotation3<R: Rng + ?Sized>(rng: &mut R) -> ExactMatrix {
    let q = integer_vector(rng, 4, 3);
    quaternion_rotation(&q).expect("nonzero quaternion")
}

/// A member of `G2` obtained by extending a quaternion automorphism. With
/// probability one half the rotation is composed with the swap
/// `i <-> j, k -> -k`.
pub fn g2_member<R: Rng + ?Sized>(rng: &mut R) -> ExactMatrix {
    let mut r = rotation3(rng);
    if rng.gen_bool(0.5) {
        let swap = ExactMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]);
        r = r.mul(&swap).expect("3x3");
    }
    extend_quaternion_automorphism(&r).expect("rotation")
}

/// An antisymmetric tensor on `R^n` with entries `t[i][j][k]` in
/// `{-1, 0, 1}` for `i < j`.
pub fn sign_tensor<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DissidentMap {
    DissidentMap::from_basis_pairs(n, |_, _| {
        (0..n).map(|_| int(rng.gen_range(-1..=1))).collect()
    })
    .expect("n is 3 or 7")
}

/// `n` random points with small integer coordinates.
pub fn integer_points<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    count: usize,
    bound: i64,
) -> Vec<ExactVector> {
    (0..count).map(|_| integer_vector(rng, n, bound)).collect()
}

pub fn is_nonzero(v: &[Scalar]) -> bool {
    v.iter().any(|x| !x.is_zero())
}

pub(crate) fn unit(n: usize, i: usize) -> ExactVector {
    let mut e = alloc::vec![Scalar::zero(); n];
    e[i] = Scalar::one();
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_matrices_satisfy_their_predicates() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            assert!(antisymmetric(&mut rng, 7).is_antisymmetric());
            let c = positive_definite(&mut rng, 7);
            assert!(c.is_symmetric() && c.is_positive_definite());
            let d = unimodular_positive_definite(&mut rng, 7);
            assert!(d.is_symmetric() && d.is_positive_definite());
            assert_eq!(d.det().unwrap(), int(1));
            let r = rotation3(&mut rng);
            assert!(r.is_orthogonal() && r.has_unit_determinant());
        }
    }

    #[test]
    fn seeded_draws_repeat() {
        let a = vector(&mut ChaCha8Rng::seed_from_u64(11), 7);
        let b = vector(&mut ChaCha8Rng::seed_from_u64(11), 7);
        assert_eq!(a, b);
    }
}
