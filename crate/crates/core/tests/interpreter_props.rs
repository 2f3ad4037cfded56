use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use padic_lift::graph::FunctionalGraph;
use padic_lift::interpreter::{
    ball_system_from_graph, check_inclusion_by_commutation, check_linear_dominance,
    classify_ball_enumerated, conjugate_affine_isometry, conjugate_ball, image_ball,
    interpolate_at_centers, robust_exactness_certificate, synthesize_piecewise_affine,
};
use padic_lift::padic::{pow_p, valuation};
use padic_lift::{Ball, IntPolynomial, RatPolynomial, Valuation};
use proptest::prelude::*;

fn small_prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3])
}

fn poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-12i64..12, 1..5).prop_map(|cs| IntPolynomial::from_i64s(&cs))
}

fn image_residues(f: &IntPolynomial, b: &Ball, depth: u32) -> BTreeSet<BigInt> {
    let m = pow_p(b.p(), depth);
    b.residues(depth)
        .unwrap()
        .iter()
        .map(|z| f.eval_mod(z, &m))
        .collect()
}

fn ball_residues(b: &Ball, depth: u32) -> BTreeSet<BigInt> {
    b.residues(depth).unwrap().into_iter().collect()
}

proptest! {
    #[test]
    fn dominance_gives_a_similarity_onto_the_image(p in small_prime(), f in poly(), c in -8i64..8, n in 0u32..3) {
        let b = Ball::new(BigInt::from(c), n, p).unwrap();
        let verdict = check_linear_dominance(&f, &b);
        if let Some(v1) = verdict.linear_valuation().filter(|_| verdict.passes()) {
            let img = image_ball(&f, &b).unwrap();
            let depth = img.radius_exp() + 2;
            prop_assert_eq!(image_residues(&f, &b, depth), ball_residues(&img, depth));
            // |f(x) - f(y)| = |c_1| |x - y| on the ball.
            let pts = b.residues(n + 2).unwrap();
            for x in &pts {
                for y in &pts {
                    if x != y {
                        let lhs = valuation(&(f.eval(x) - f.eval(y)), p).unwrap();
                        let rhs = valuation(&(x - y), p).unwrap().shift(v1);
                        prop_assert_eq!(lhs, rhs);
                    }
                }
            }
            let e = classify_ball_enumerated(&f, &b, &img, depth).unwrap();
            prop_assert!(e.image_is_ball && e.inside);
        }
    }

    #[test]
    fn inclusion_is_commutation(
        p in small_prime(),
        depth in 1u32..3,
        f in poly(),
        raw in prop::collection::vec(0usize..9, 1..9),
    ) {
        let cap = (p as usize).pow(depth);
        let size = raw.len().min(cap);
        let g = FunctionalGraph::from_successors(raw[..size].iter().map(|x| x % size).collect()).unwrap();
        let bs = ball_system_from_graph(&g, p, depth).unwrap();
        let comm = check_inclusion_by_commutation(&f, &g, p, depth).unwrap();
        let oracle = (0..size).all(|i| {
            let tgt = ball_residues(bs.target_of(i), depth + 2);
            image_residues(&f, &bs.balls()[i], depth + 2).is_subset(&tgt)
        });
        prop_assert_eq!(comm.holds, oracle);
        let psi = synthesize_piecewise_affine(&bs);
        let cert = robust_exactness_certificate(&f, &psi, &bs).unwrap();
        prop_assert_eq!(cert.with_inclusion, oracle);
    }

    #[test]
    fn conjugation_preserves_dominance_and_images(
        p in small_prime(),
        f in poly(),
        c in -6i64..6,
        n in 0u32..3,
        alpha in prop::sample::select(vec![1i64, -1, 5, 7, -11, 13]),
        beta in -9i64..9,
    ) {
        prop_assume!(alpha % p as i64 != 0);
        let (alpha, beta) = (BigInt::from(alpha), BigInt::from(beta));
        let b = Ball::new(BigInt::from(c), n, p).unwrap();
        let g = conjugate_affine_isometry(&f, &alpha, &beta, p).unwrap();
        prop_assert!(g.is_p_integral(p));
        let b2 = conjugate_ball(&b, &alpha, &beta).unwrap();
        let v = check_linear_dominance(&f, &b);
        let w = check_linear_dominance(&g, &b2);
        prop_assert_eq!(v.passes(), w.passes());
        if v.passes() {
            prop_assert_eq!(v.linear_valuation(), w.linear_valuation());
            let img = image_ball(&f, &b).unwrap();
            prop_assert_eq!(image_ball(&g, &b2).unwrap(), conjugate_ball(&img, &alpha, &beta).unwrap());
        }
    }
}

/// Solve the Vandermonde system for the interpolating coefficients.
fn vandermonde_solve(points: &[(i64, i64)]) -> Vec<BigRational> {
    let n = points.len();
    let mut rows: Vec<Vec<BigRational>> = points
        .iter()
        .map(|&(x, y)| {
            let mut row: Vec<BigRational> = (0..n)
                .map(|k| BigRational::from_integer(BigInt::from(x).pow(k as u32)))
                .collect();
            row.push(BigRational::from_integer(BigInt::from(y)));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero()).unwrap();
        rows.swap(col, pivot);
        let inv = BigRational::one() / rows[col][col].clone();
        for k in col..=n {
            rows[col][k] = &rows[col][k] * &inv;
        }
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for k in col..=n {
                    let delta = &factor * &rows[col][k];
                    rows[r][k] = &rows[r][k] - delta;
                }
            }
        }
    }
    rows.into_iter().map(|r| r[n].clone()).collect()
}

#[test]
fn cubic_through_the_four_state_example() {
    let g = FunctionalGraph::from_successors(vec![1, 0, 1, 3]).unwrap();
    let bs = ball_system_from_graph(&g, 2, 2).unwrap();
    let interp = interpolate_at_centers(&bs).unwrap();
    let oracle = vandermonde_solve(&[(0, 1), (1, 0), (2, 1), (3, 3)]);
    assert_eq!(RatPolynomial::new(oracle), interp.polynomial);
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    assert_eq!(
        interp.polynomial.coeffs(),
        &[q(1, 1), q(-7, 3), q(3, 2), q(-1, 6)]
    );
    assert!(interp.non_integral);
    assert_eq!(
        interp.coefficient_valuations,
        vec![Valuation::Finite(0), Valuation::Finite(0), Valuation::Finite(-1), Valuation::Finite(-1)]
    );
}

#[test]
fn certified_exact_images_match_residues_on_swap_perturbations() {
    let g = FunctionalGraph::from_successors(vec![1, 0]).unwrap();
    let bs = ball_system_from_graph(&g, 2, 1).unwrap();
    let psi = synthesize_piecewise_affine(&bs);
    for k in 0..6i64 {
        let f = IntPolynomial::from_i64s(&[1, -1, 8 * k, 16 * k]);
        let cert = robust_exactness_certificate(&f, &psi, &bs).unwrap();
        assert!(cert.exact);
        for i in 0..2 {
            let depth = 4;
            let m = BigInt::from(16);
            let img: BTreeSet<BigInt> = bs.balls()[i]
                .residues(depth)
                .unwrap()
                .iter()
                .map(|z| f.eval(z).mod_floor(&m))
                .collect();
            assert_eq!(img, ball_residues(bs.target_of(i), depth));
        }
    }
}
