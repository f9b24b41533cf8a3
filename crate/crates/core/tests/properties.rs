use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use anchorkit::cyclo::CycloNum;
use anchorkit::fp::{rank_of_rows, BasisSolver, FpVec};
use anchorkit::grp::{group_from_generators, stabilizer_chain_order, Perm};
use anchorkit::lat::{CoordPermutation, LinearMap, PLattice};
use anchorkit::padic::choose_prime;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn conductor() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![1u64, 3, 4, 5, 8, 9, 12, 15])
}

fn cyclo(m: u64) -> impl Strategy<Value = CycloNum> {
    let phi = CycloNum::zero(m).coeffs().len();
    prop::collection::vec((-5i64..=5, 1i64..=3), phi)
        .prop_map(move |c| CycloNum::from_coeffs(m, c.into_iter().map(|(n, d)| q(n, d)).collect()).unwrap())
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws((m, x, y, z) in conductor().prop_flat_map(|m| (Just(m), cyclo(m), cyclo(m), cyclo(m)))) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, CycloNum::zero(m));
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn galois_action_is_a_ring_automorphism((m, x, y) in conductor().prop_flat_map(|m| (Just(m), cyclo(m), cyclo(m))), j in 1i64..60) {
        prop_assume!(num_integer::gcd(j, m as i64) == 1);
        let s = |v: &CycloNum| v.galois(j).unwrap();
        prop_assert_eq!(s(&(&x * &y)), &s(&x) * &s(&y));
        prop_assert_eq!(s(&(&x + &y)), &s(&x) + &s(&y));
        let big = x.embed(m * 2).unwrap();
        prop_assert_eq!(big.restrict(m).unwrap(), x.clone());
    }

    #[test]
    fn frobenius_preserves_valuation((m, x) in prop::sample::select(vec![3u64, 5, 12, 15]).prop_flat_map(|m| (Just(m), cyclo(m))), p in prop::sample::select(vec![2u64, 3, 5])) {
        prop_assume!(!x.is_zero());
        let ld = choose_prime(p, m);
        let m_free = (m as i64) / (p.pow(anchorkit::arith::vp_u64(m, p)) as i64);
        let j = (0..m as i64).find(|&j| j % m_free == p as i64 % m_free && num_integer::gcd(j, m as i64) == 1).unwrap();
        prop_assert_eq!(ld.valuation(&x).unwrap(), ld.valuation(&x.galois(j).unwrap()).unwrap());
    }

    #[test]
    fn group_orders_agree_with_stabilizer_chain(a in perm(5), b in perm(5)) {
        let g = group_from_generators("G", 5, &[a.clone(), b.clone()]).unwrap();
        let gens = [Perm::from_images_one_based(&a).unwrap(), Perm::from_images_one_based(&b).unwrap()];
        prop_assert_eq!(g.order() as u128, stabilizer_chain_order(5, &gens));
        prop_assert_eq!(g.classes.iter().map(|c| c.size()).sum::<usize>(), g.order());
        for p in [2u64, 3, 5] {
            let s = g.sylow(p);
            prop_assert_eq!(s.order() as u64, p.pow(anchorkit::arith::vp_u64(g.order() as u64, p)));
            let core = g.p_core(p);
            prop_assert!(core.is_subset_of(&s));
            prop_assert!((0..g.order()).all(|x| core.conjugate(&g, x).elements() == core.elements()));
        }
    }

    #[test]
    fn lattice_span_ignores_generator_order(rows in prop::collection::vec(prop::collection::vec((-4i64..=4, 1i64..=4), 3), 1..5), p in prop::sample::select(vec![2u64, 3])) {
        let rows: Vec<Vec<Q>> = rows.into_iter().map(|r| r.into_iter().map(|(n, d)| q(n, d)).collect()).collect();
        let mut rev = rows.clone();
        rev.reverse();
        let a = PLattice::normal_form(p, 3, rows.clone()).unwrap();
        let b = PLattice::normal_form(p, 3, rev).unwrap();
        prop_assert!(a.same_span(&b).unwrap());
        for r in &rows {
            prop_assert!(a.member(r).unwrap());
        }
    }

    #[test]
    fn fixed_sublattice_is_fixed(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..5), target in perm(4)) {
        let rows: Vec<Vec<Q>> = rows.into_iter().map(|r| r.into_iter().map(|n| q(n, 1)).collect()).collect();
        let lat = PLattice::normal_form(2, 4, rows).unwrap();
        let sigma = CoordPermutation { target: target.iter().map(|&t| t - 1).collect() };
        let image = lat.image_generators(&sigma).unwrap();
        prop_assume!(image.same_span(&lat).unwrap());
        let fixed = lat.fixed_sublattice(&[&sigma as &dyn LinearMap]).unwrap();
        for v in fixed.basis() {
            prop_assert_eq!(&sigma.apply(v), v);
            prop_assert!(lat.member(v).unwrap());
        }
    }

    #[test]
    fn basis_solver_recovers_coefficients(basis in prop::collection::vec(prop::collection::vec(0u64..5, 5), 1..5), coeffs in prop::collection::vec(0u64..5, 5)) {
        let p = 5;
        prop_assume!(rank_of_rows(p, 5, &basis) == basis.len());
        let solver = BasisSolver::new(p, &basis).unwrap();
        let mut v: FpVec = vec![0; 5];
        for (b, c) in basis.iter().zip(&coeffs) {
            anchorkit::fp::add_scaled(p, &mut v, b, *c);
        }
        prop_assert_eq!(solver.solve(&v).unwrap(), coeffs[..basis.len()].to_vec());
    }
}
