use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use padic_lift::graph::{decode, encode, graph_product, FunctionalGraph};
use padic_lift::padic::{pow_p, valuation};
use padic_lift::{affine_image, gauss_norm_on_ball, Ball, IntPolynomial, Nesting, NormExponent};
use proptest::prelude::*;

fn primes() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5])
}

fn residue_set(b: &Ball, depth: u32) -> BTreeSet<BigInt> {
    b.residues(depth).unwrap().into_iter().collect()
}

fn exponent(z: &BigInt, p: u32) -> NormExponent {
    valuation(z, p).unwrap().lower_bound()
}

proptest! {
    #[test]
    fn ultrametric_inequality(p in primes(), x in -500i64..500, y in -500i64..500, z in -500i64..500) {
        let (x, y, z) = (BigInt::from(x), BigInt::from(y), BigInt::from(z));
        let lhs = exponent(&(&x - &z), p);
        let rhs = exponent(&(&x - &y), p).min(exponent(&(&y - &z), p));
        prop_assert!(lhs >= rhs);
    }

    #[test]
    fn nesting_matches_residue_sets(p in primes(), c1 in 0i64..625, c2 in 0i64..625, n1 in 0u32..4, n2 in 0u32..4) {
        let depth = 4;
        let a = Ball::new(BigInt::from(c1), n1, p).unwrap();
        let b = Ball::new(BigInt::from(c2), n2, p).unwrap();
        let (sa, sb) = (residue_set(&a, depth), residue_set(&b, depth));
        let expected = if sa == sb {
            Nesting::Equal
        } else if sa.is_subset(&sb) {
            Nesting::FirstInsideSecond
        } else if sb.is_subset(&sa) {
            Nesting::SecondInsideFirst
        } else {
            prop_assert!(sa.is_disjoint(&sb), "balls neither nest nor separate");
            Nesting::Disjoint
        };
        prop_assert_eq!(a.nesting(&b).unwrap(), expected);
        prop_assert_eq!(a.contains_ball(&b).unwrap(), sb.is_subset(&sa));
        prop_assert_eq!(a == b, sa == sb);
    }

    #[test]
    fn affine_image_matches_enumeration(
        p in primes(),
        c in -50i64..50,
        n in 0u32..4,
        u in prop::sample::select(vec![1i64, -1, 2, 3, 5, 6, 10, 25, -9]),
        alpha in -30i64..30,
        beta in -30i64..30,
    ) {
        let b = Ball::new(BigInt::from(c), n, p).unwrap();
        let (u, alpha, beta) = (BigInt::from(u), BigInt::from(alpha), BigInt::from(beta));
        let img = affine_image(&u, &alpha, &beta, &b).unwrap();
        let depth = img.radius_exp().max(n) + 1;
        let m = pow_p(p, depth);
        let enumerated: BTreeSet<BigInt> = b
            .residues(depth)
            .unwrap()
            .iter()
            .map(|z| (&beta + &u * (z - &alpha)).mod_floor(&m))
            .collect();
        prop_assert_eq!(enumerated, residue_set(&img, depth));
    }

    #[test]
    fn gauss_norm_bounds_values(
        p in primes(),
        cs in prop::collection::vec(-40i64..40, 1..5),
        c in -20i64..20,
        n in 0u32..3,
    ) {
        let f = IntPolynomial::from_i64s(&cs);
        let b = Ball::new(BigInt::from(c), n, p).unwrap();
        let bound = gauss_norm_on_ball(&f, &b);
        for z in b.residues(n + 2).unwrap() {
            prop_assert!(exponent(&f.eval(&z), p) >= bound);
        }
    }

    #[test]
    fn recentering_is_an_algebra_map(
        f in prop::collection::vec(-9i64..9, 1..5),
        g in prop::collection::vec(-9i64..9, 1..5),
        a in -6i64..6,
        z in -6i64..6,
    ) {
        let (f, g) = (IntPolynomial::from_i64s(&f), IntPolynomial::from_i64s(&g));
        let a = BigInt::from(a);
        prop_assert_eq!((&f + &g).recenter(&a), &f.recenter(&a) + &g.recenter(&a));
        prop_assert_eq!((&f * &g).recenter(&a), &f.recenter(&a) * &g.recenter(&a));
        let z = BigInt::from(z);
        prop_assert_eq!(f.recenter(&a).eval(&(&z - &a)), f.eval(&z));
    }

    #[test]
    fn encoding_is_a_bijection(p in primes(), n in 1u32..5, x in 0u64..10_000) {
        let x = BigInt::from(x) % pow_p(p, n);
        let digits = decode(&x, p, n);
        prop_assert_eq!(digits.len(), n as usize);
        prop_assert!(digits.iter().all(|&d| d < p as u64));
        prop_assert_eq!(encode(&digits, p).unwrap(), x);
    }

    #[test]
    fn product_periods_are_lcms(
        s1 in prop::collection::vec(0usize..6, 1..7),
        s2 in prop::collection::vec(0usize..6, 1..7),
    ) {
        let clamp = |s: Vec<usize>| {
            let n = s.len();
            FunctionalGraph::from_successors(s.into_iter().map(|x| x % n).collect()).unwrap()
        };
        let (g1, g2) = (clamp(s1), clamp(s2));
        let prod = graph_product(&g1, &g2).unwrap();
        for x in 0..g1.size() {
            for y in 0..g2.size() {
                let idx = x * g2.size() + y;
                prop_assert_eq!(prod.successor(idx), g1.successor(x) * g2.size() + g2.successor(y));
                let want = match (g1.period(x), g2.period(y)) {
                    (Some(a), Some(b)) => Some(a.lcm(&b)),
                    _ => None,
                };
                prop_assert_eq!(prod.period(idx), want);
            }
        }
    }
}

#[test]
fn cylinder_example_radius_quarter() {
    // Four states at depth 2 over Z_2 give four disjoint balls of radius 1/4
    // covering Z_2.
    let balls = padic_lift::graph::cylinder_partition(2, 2).unwrap();
    assert_eq!(balls.len(), 4);
    let mut all = BTreeSet::new();
    for b in &balls {
        assert_eq!(b.radius_exp(), 2);
        for r in b.residues(3).unwrap() {
            assert!(all.insert(r));
        }
    }
    assert_eq!(all.len(), 8);
}
