mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use langparams_core::dualgroup::torus_cocycle_group;
use langparams_core::exactalg::{cyclotomic, smith_normal_form, IntMatrix, IntPoly};
use langparams_core::fingrp::{make_field, GroupSpecFin};
use langparams_core::kostant::{kostant_determinant, principal_triple, PinnedOuter};
use langparams_core::moduli::{cyclic_cohomology, SemidirectData, TameParameterPoint};

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-6i64..=6, rows * cols)
        .prop_map(move |e| IntMatrix::new(rows, cols, e.into_iter().map(BigInt::from).collect()))
}

fn divisors(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_equivalent_and_divisible(m in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| small_matrix(r, c))) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert_eq!(s.u.det().abs(), BigInt::one());
        prop_assert_eq!(s.v.det().abs(), BigInt::one());
        let inv = s.invariant_factors();
        for w in inv.windows(2) {
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
        if m.is_square() {
            let prod: BigInt = inv.iter().product();
            prop_assert_eq!(prod.abs(), m.det().abs());
        }
    }

    #[test]
    fn cyclotomics_multiply_to_binomial(n in 1u64..=60) {
        let prod: IntPoly = divisors(n).map(cyclotomic).product();
        prop_assert_eq!(prod, IntPoly::binomial(n as usize, 1));
    }

    #[test]
    fn polynomial_evaluation_is_multiplicative(
        a in prop::collection::vec(-9i64..=9, 1..6),
        b in prop::collection::vec(-9i64..=9, 1..6),
        x in -20i64..=20,
    ) {
        let (pa, pb) = (IntPoly::from_i64(&a), IntPoly::from_i64(&b));
        let x = BigInt::from(x);
        prop_assert_eq!((&pa * &pb).eval(&x), pa.eval(&x) * pb.eval(&x));
    }

    #[test]
    fn field_axioms(k in 1u32..=3, a in 0u32..1000, b in 0u32..1000) {
        let f = make_field(3, k).unwrap();
        let (a, b) = (a % f.size(), b % f.size());
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(a, k), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn scalar_pairs_satisfy_relation(ell in prop::sample::select(vec![3u32, 5, 7, 11]), q in 2u64..=9, a in 1u32..11, b in 1u32..11) {
        // GL1: F sigma F^-1 = sigma^q forces sigma^(q-1) = 1
        let spec = GroupSpecFin::parse("GL1", ell, 1).unwrap();
        let f = spec.field();
        let (a, b) = (1 + a % (ell - 1), 1 + b % (ell - 1));
        let fm = langparams_core::fingrp::FqMatrix::diag(f, &[a]);
        let sm = langparams_core::fingrp::FqMatrix::diag(f, &[b]);
        let sd = SemidirectData::trivial(q);
        let ok = TameParameterPoint::new(fm, sm, &spec, &sd).is_ok();
        prop_assert_eq!(ok, f.pow(b, q - 1) == 1);
    }

    #[test]
    fn rank_one_torus_counts(q in 2u64..=9, ell in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
        let one = IntMatrix::from_rows(&[vec![1]]);
        let g = torus_cocycle_group(&one, &one, q).unwrap();
        let want = common::torus_point_count(&[vec![1]], &[vec![1]], q, ell);
        prop_assert_eq!(g.point_count(ell), BigInt::from(want));
    }

    #[test]
    fn cyclic_cohomology_matches_cocycles(n in 1u64..=24, u in 0u64..24, v in 0u64..24, q in prop::sample::select(vec![2u64, 3, 4, 5, 7])) {
        let p = [2u64, 3, 5, 7].into_iter().find(|p| q % p == 0).unwrap();
        prop_assume!(n % p != 0);
        let units: Vec<u64> = (0..n).filter(|&x| num_integer::gcd(x, n) == 1).collect();
        prop_assume!(!units.is_empty() || n == 1);
        let (u, v) = if n == 1 { (0, 0) } else { (units[u as usize % units.len()], units[v as usize % units.len()]) };
        let mut uq = 1 % n;
        for _ in 0..q {
            uq = uq * u % n;
        }
        prop_assume!(uq == u % n);
        let mut m = 1;
        let mut x = u % n;
        while x != 1 % n {
            x = x * u % n;
            m += 1;
        }
        let got = cyclic_cohomology(&[n], &IntMatrix::from_rows(&[vec![u as i64]]), &IntMatrix::from_rows(&[vec![v as i64]]), q, m, p).unwrap();
        let got = (
            got.h1_inertia.iter().map(|x| x.to_u64().unwrap()).collect::<Vec<_>>(),
            got.h1_total.iter().map(|x| x.to_u64().unwrap()).collect::<Vec<_>>(),
        );
        prop_assert_eq!(got, common::brute_force_h1(&[n], &[vec![u as i64]], &[vec![v as i64]], q, m * n));
    }

    #[test]
    fn kostant_identity_for_random_t(t in prop::sample::select(vec![-7i64, -5, -3, -1, 1, 4, 6, 7]), outer in any::<bool>()) {
        let frame = principal_triple("sl3").unwrap();
        let o = PinnedOuter::for_frame(&frame).unwrap();
        let beta = if outer { Some(&o) } else { None };
        let rep = kostant_determinant(&frame, beta, t).unwrap();
        let chi = frame.chi(beta).unwrap();
        prop_assert_eq!(rep.det.abs(), chi.eval(&BigInt::from(t * t)).abs());
    }
}
