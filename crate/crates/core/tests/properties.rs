//! Property tests of the algebraic invariants.

mod common;

use dissident_core::dissident::{
    dissidence_falsify, eta_p_point, quadruple_to_triple, triple_morphism_check, DissidentMap,
    DissidentTriple, MatrixQuadruple,
};
use dissident_core::exact::{
    dot, int, monomials, normalize_line, poly_content_gcd, ExactMatrix, ExactVector,
    HomogeneousPoly, Scalar,
};
use dissident_core::lifting::{build_constraint_system, solve_lifting, Lifting, SolveOptions};
use dissident_core::octonion::{frobenius_split, g2_check, gram_matrix, octonions, scalar_product};
use dissident_core::qda::{
    algebra_morphism_check, induced_morphism, make_qda, quadratic_check, recover_triple,
    AlgebraPresentation,
};
use dissident_core::sample;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Scalar::new(p.into(), q.into()))
}

fn poly(nvars: usize, degree: u32) -> impl Strategy<Value = HomogeneousPoly> {
    let mons = monomials(nvars, degree);
    let count = mons.len();
    proptest::collection::vec(small_scalar(), count).prop_map(move |coeffs| {
        HomogeneousPoly::from_terms(nvars, degree, mons.clone().into_iter().zip(coeffs)).unwrap()
    })
}

fn nonzero_poly(nvars: usize, degree: u32) -> impl Strategy<Value = HomogeneousPoly> {
    poly(nvars, degree).prop_filter("nonzero", |p| !p.is_zero())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(-4i64..=4, rows * cols).prop_map(move |v| {
        let mut m = ExactMatrix::zeros(rows, cols);
        for (k, x) in v.into_iter().enumerate() {
            m[(k / cols, k % cols)] = int(x);
        }
        m
    })
}

fn square_pair() -> impl Strategy<Value = (ExactMatrix, ExactMatrix)> {
    (1usize..=7).prop_flat_map(|n| (matrix(n, n), matrix(n, n)))
}

fn any_matrix() -> impl Strategy<Value = ExactMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| matrix(r, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poly_mul_commutes(p in poly(3, 2), q in poly(3, 1)) {
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
    }

    #[test]
    fn poly_ring_laws(p in poly(3, 1), q in poly(3, 1), r in poly(3, 2)) {
        let lhs = p.mul(&q).unwrap().mul(&r).unwrap();
        let rhs = p.mul(&q.mul(&r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let s = p.add(&q).unwrap().add(&p).unwrap();
        prop_assert_eq!(s, p.add(&q.add(&p).unwrap()).unwrap());
        let dist = p.add(&q).unwrap().mul(&r).unwrap();
        prop_assert_eq!(dist, p.mul(&r).unwrap().add(&q.mul(&r).unwrap()).unwrap());
    }

    #[test]
    fn gcd_divides_inputs(g in nonzero_poly(3, 1), a in nonzero_poly(3, 2), b in nonzero_poly(3, 1)) {
        let p = g.mul(&a).unwrap();
        let q = g.mul(&b).unwrap();
        let d = poly_content_gcd(&[p.clone(), q.clone()]).unwrap();
        prop_assert!(d.divides(&p) && d.divides(&q));
        prop_assert!(g.divides(&d));
    }

    #[test]
    fn kernel_vectors_annihilate(m in any_matrix()) {
        let k = m.kernel();
        prop_assert_eq!(k.len() + m.rank(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn det_is_multiplicative((m, n) in square_pair()) {
        let prod = m.mul(&n).unwrap().det().unwrap();
        prop_assert_eq!(prod, m.det().unwrap() * n.det().unwrap());
    }
}

fn octonion(seed: u64) -> ExactVector {
    sample::vector(&mut ChaCha8Rng::seed_from_u64(seed), 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn octonion_quadratic_identity(seed in any::<u64>()) {
        let o = octonions();
        let split = frobenius_split(&o).unwrap();
        let x = octonion(seed);
        let r = split.rho_of(&x);
        let im = split.iota(&x);
        let c = &r * &r + dot(&im, &im);
        let xx = o.mul(&x, &x);
        let two_r = &r * int(2);
        for k in 0..8 {
            let unit = if k == 0 { c.clone() } else { Scalar::zero() };
            prop_assert!((&xx[k] - &two_r * &x[k] + unit).is_zero());
        }
    }

    #[test]
    fn octonion_norm_is_multiplicative(a in any::<u64>(), b in any::<u64>()) {
        let o = octonions();
        let split = frobenius_split(&o).unwrap();
        let (x, y) = (octonion(a), octonion(b));
        let xy = o.mul(&x, &y);
        let n = |v: &[Scalar]| scalar_product(&o, &split, v, v);
        prop_assert_eq!(n(&xy), n(&x) * n(&y));
    }

    #[test]
    fn g2_is_closed_under_products(a in any::<u64>(), b in any::<u64>()) {
        let s1 = sample::g2_member(&mut ChaCha8Rng::seed_from_u64(a));
        let s2 = sample::g2_member(&mut ChaCha8Rng::seed_from_u64(b));
        prop_assert!(g2_check(&s1).unwrap() && g2_check(&s2).unwrap());
        prop_assert!(g2_check(&s1.mul(&s2).unwrap()).unwrap());
    }

    #[test]
    fn eta_p_is_projective(seed in any::<u64>(), num in 1i64..=9, den in 1i64..=9, neg: bool) {
        let eta = quadruple_to_triple(&MatrixQuadruple::random(seed % 8)).eta().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = sample::nonzero_vector(&mut rng, 7);
        let lambda = Scalar::new(if neg { -num } else { num }.into(), den.into());
        let lv: ExactVector = v.iter().map(|x| x * &lambda).collect();
        prop_assert_eq!(eta_p_point(&eta, &v).unwrap(), eta_p_point(&eta, &lv).unwrap());
    }

    #[test]
    fn eta_p_line_is_orthogonal_to_image(seed in any::<u64>()) {
        let eta = quadruple_to_triple(&MatrixQuadruple::random(seed % 8)).eta().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = sample::nonzero_vector(&mut rng, 7);
        let line = dissident_core::exact::to_scalars(&eta_p_point(&eta, &v).unwrap());
        let norm = dot(&v, &v);
        for i in 0..7 {
            let w: ExactVector = (0..7)
                .map(|k| if k == i { norm.clone() } else { Scalar::zero() } - &v[i] * &v[k])
                .collect();
            prop_assert!(dot(&line, &eta.eval(&v, &w).unwrap()).is_zero());
        }
    }

    #[test]
    fn homogeneity_law(seed in any::<u64>(), num in -5i64..=5, den in 1i64..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = 1 + (seed % 3) as u32;
        let coeffs = sample::vector(&mut rng, 3 * monomials(3, d).len());
        let phi = Lifting::from_coefficients(3, d, &coeffs);
        let v = sample::vector(&mut rng, 3);
        let lambda = Scalar::new(num.into(), den.into());
        let lv: ExactVector = v.iter().map(|x| x * &lambda).collect();
        let scale = num_traits::pow(lambda, d as usize);
        let expected: ExactVector = phi.eval(&v).iter().map(|x| x * &scale).collect();
        prop_assert_eq!(phi.eval(&lv), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn quadruple_maps_are_dissident_of_degree_one(seed in any::<u64>()) {
        let q = MatrixQuadruple::random(seed);
        let eta = quadruple_to_triple(&q).eta().clone();
        prop_assert!(dissidence_falsify(&eta, 50, seed).passed());
        let opts = SolveOptions { samples: 16, seed, ..SolveOptions::default() };
        let sol = solve_lifting(&eta, &opts).unwrap();
        prop_assert_eq!(sol.degree(), 1);
        prop_assert_eq!(sol.degree() % 2, 1);

        // Padding by |v|^2 lands in the kernel of the degree-3 system.
        let padded = sol.lifting.times(&HomogeneousPoly::norm_squared(7));
        let system = build_constraint_system(&eta, 3).unwrap();
        prop_assert!(system.annihilates(&padded.coefficients().unwrap()));
    }

    #[test]
    fn eta_p_is_injective_on_samples(seed in any::<u64>()) {
        let eta = quadruple_to_triple(&MatrixQuadruple::random(seed)).eta().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut inputs = Vec::new();
        let mut outputs = Vec::new();
        while inputs.len() < 12 {
            let v = sample::integer_vector(&mut rng, 7, 4);
            let line = normalize_line(&v);
            if inputs.contains(&line) {
                continue;
            }
            inputs.push(line);
            outputs.push(eta_p_point(&eta, &v).unwrap());
        }
        for i in 0..outputs.len() {
            for j in i + 1..outputs.len() {
                prop_assert_ne!(&outputs[i], &outputs[j]);
            }
        }
    }

    #[test]
    fn round_trip_and_frobenius(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eta = quadruple_to_triple(&MatrixQuadruple::random(seed)).eta().clone();
        let t = DissidentTriple::new(sample::antisymmetric(&mut rng, 7), eta).unwrap();
        let alg = make_qda(&t);
        prop_assert_eq!(quadratic_check(&alg), Ok(true));
        let recovered = recover_triple(&alg).unwrap();
        prop_assert_eq!(recovered.triple(), Some(&t));
        let split = frobenius_split(&alg).unwrap();
        prop_assert!(gram_matrix(&alg, &split, &split.imaginary).is_positive_definite());
    }

    #[test]
    fn morphisms_transport(seed in any::<u64>()) {
        let q = MatrixQuadruple::random(seed);
        let s = sample::g2_member(&mut ChaCha8Rng::seed_from_u64(seed ^ 0xabc));
        let src = quadruple_to_triple(&q);
        let dst = quadruple_to_triple(&q.conjugate(&s).unwrap());
        prop_assert!(triple_morphism_check(&src, &dst, &s).unwrap());
        let (a, b): (AlgebraPresentation, AlgebraPresentation) = (make_qda(&src), make_qda(&dst));
        prop_assert!(algebra_morphism_check(&a, &b, &induced_morphism(&s)).unwrap());
    }
}

#[test]
fn maps_on_r3_have_degree_one() {
    // On R^3 every eta is v ^ w -> M (v x w), and eta_P(v) = M^-t v.
    let eta = DissidentMap::cross(3)
        .unwrap()
        .add_scaled(
            &Scalar::new(1.into(), 10.into()),
            &sample::sign_tensor(&mut ChaCha8Rng::seed_from_u64(2), 3),
        )
        .unwrap();
    assert!(common::perturbation_is_certified(&eta));
    let sol = solve_lifting(&eta, &SolveOptions::default()).unwrap();
    assert_eq!(sol.degree(), 1);
}
