mod oracle;

use burau::braid::{BraidWord, Letter, Perm};
use burau::burau::{eval, eval_trunc, form_j, vector_ones, vector_v};
use burau::json;
use burau::laurent::LaurentPoly;
use burau::liealg::{basis, gen_x, GradedElement};
use burau::linalg::Lattice;
use burau::Depth;
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    (-4i64..4, prop::collection::vec(-20i64..20, 0..6)).prop_map(|(low, c)| LaurentPoly::from_coeffs(low, c))
}

fn letters(n: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    let m = n as i32 - 1;
    prop::collection::vec((1..=m, any::<bool>()).prop_map(|(i, inv)| if inv { -i } else { i }), 0..max_len)
}

fn braid(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    letters(n, max_len).prop_map(move |l| BraidWord::from_letters(n, l).unwrap())
}

fn pure_generator(n: usize) -> impl Strategy<Value = BraidWord> {
    (1..n, 1..n).prop_filter("i < j", |(i, j)| i < j).prop_map(move |(i, j)| BraidWord::pure(n, i, j + 1).unwrap())
}

/// A product of two or three pure generators, so depth at least 1.
fn pure_word(n: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((pure_generator(n), any::<bool>()), 1..3)
        .prop_map(move |parts| {
            let ws: Vec<BraidWord> = parts.into_iter().map(|(w, inv)| if inv { w.inverse() } else { w }).collect();
            BraidWord::product(n, &ws).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_map_is_a_ring_map(p in poly(), q in poly()) {
        let n = 6;
        prop_assert_eq!((&p * &q).to_series(n), &p.to_series(n) * &q.to_series(n));
        prop_assert_eq!((&p + &q).to_series(n), &p.to_series(n) + &q.to_series(n));
    }

    #[test]
    fn series_matches_binomial_oracle(p in poly()) {
        let s = p.to_series(7);
        let o = oracle::expand_poly(&p, 7);
        let lib: Vec<i128> = s.coeffs().iter().map(|c| c.try_into().unwrap()).collect();
        prop_assert_eq!(lib, o);
    }

    #[test]
    fn bar_is_an_involutive_ring_map(p in poly(), q in poly()) {
        prop_assert_eq!(p.bar().bar(), p.clone());
        prop_assert_eq!((&p * &q).bar(), &p.bar() * &q.bar());
    }

    #[test]
    fn valuation_counts_factors_of_s(p in poly(), k in 0u32..4) {
        prop_assume!(!p.is_zero());
        let mut q = p.clone();
        for _ in 0..k {
            q = &q * &LaurentPoly::s();
        }
        let Depth::Finite(v) = p.s_valuation() else { unreachable!() };
        prop_assert_eq!(q.s_valuation(), Depth::Finite(v + k));
    }

    #[test]
    fn poly_json_round_trip(p in poly()) {
        prop_assert_eq!(json::poly_from_json(&json::poly_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn burau_is_a_homomorphism(u in braid(4, 12), w in braid(4, 12)) {
        let uw = u.concat(&w).unwrap();
        prop_assert_eq!(eval(&uw), &eval(&u) * &eval(&w));
        prop_assert!((&eval(&w) * &eval(&w.inverse())).is_identity());
    }

    #[test]
    fn images_fix_the_invariant_data(w in braid(5, 20)) {
        let b = eval(&w);
        let (v, ones, j) = (vector_v(5), vector_ones(5), form_j(5));
        prop_assert_eq!(&b * &v, v);
        prop_assert_eq!(&ones * &b, ones);
        prop_assert_eq!(&(&b.star() * &j) * &b, j);
    }

    #[test]
    fn truncated_evaluation_matches_oracle(l in letters(5, 30)) {
        let w = BraidWord::from_letters(5, l.clone()).unwrap();
        let t = eval_trunc(&w, 5);
        let o = oracle::word(5, &l, 5);
        for k in 0..5 {
            prop_assert_eq!(oracle::to_imat(t.coefficient(k)), oracle::coefficient(&o, k));
        }
        prop_assert_eq!(eval(&w).to_trunc(5), t);
    }

    #[test]
    fn reduction_is_the_permutation(w in braid(5, 20)) {
        let p = w.permutation();
        let m = eval(&w).eval_at_one();
        for i in 0..5 {
            for j in 0..5 {
                let expected = BigInt::from((p.image0(i) == j) as i32);
                prop_assert_eq!(&m[(i, j)], &expected);
            }
        }
    }

    #[test]
    fn pure_commutators_raise_depth(a in pure_word(5), b in pure_word(5), c in pure_word(5)) {
        // a has depth >= 1 and [b, c] depth >= 2, so [a, [b, c]] has depth >= 3
        let bc = b.commutator(&c).unwrap();
        let abc = a.commutator(&bc).unwrap();
        let (ta, tbc, tabc) = (eval_trunc(&a, 4), eval_trunc(&bc, 4), eval_trunc(&abc, 4));
        prop_assert!(ta.depth().is_at_least(1));
        prop_assert!(tbc.depth().is_at_least(2));
        prop_assert!(tabc.depth().is_at_least(3));
        let expected = oracle::ibracket(&oracle::to_imat(ta.coefficient(1)), &oracle::to_imat(tbc.coefficient(2)));
        prop_assert_eq!(oracle::to_imat(tabc.coefficient(3)), expected);
    }

    #[test]
    fn leading_coefficients_are_graded(a in pure_word(5), b in pure_word(5)) {
        let c = a.commutator(&b).unwrap();
        let t = eval_trunc(&c, 3);
        let m = t.coefficient(2);
        prop_assert!(GradedElement::new(2, m.clone()).is_ok());
        let g = GradedElement::new(1, eval_trunc(&a, 2).coefficient(1).clone()).unwrap();
        prop_assert!(g.matrix().is_symmetric());
    }

    #[test]
    fn coordinates_round_trip(coords in prop::collection::vec(-5i64..5, 10), k in 1u32..7) {
        let dim = basis(5, k).len();
        let coords: Vec<BigInt> = coords.into_iter().take(dim).map(BigInt::from).collect();
        let g = GradedElement::from_coordinates(5, k, &coords).unwrap();
        prop_assert_eq!(g.coordinates(), coords);
        prop_assert_eq!(json::graded_from_json(&json::graded_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn relabelling_is_an_action(p in Just((1..=5).collect::<Vec<usize>>()).prop_shuffle(), i in 1usize..5, j in 2usize..6) {
        prop_assume!(i < j);
        let perm = Perm::new(p).unwrap();
        let x = gen_x(i, j, 5).unwrap();
        let moved = x.sn_act(&perm);
        prop_assert_eq!(moved.sn_act(&perm.inverse()), x.clone());
        let expected = oracle::relabel(&oracle::to_imat(x.matrix()), &perm.images().iter().map(|a| a - 1).collect::<Vec<_>>());
        prop_assert_eq!(oracle::to_imat(moved.matrix()), expected);
    }
}

#[test]
fn library_lattices_agree_with_oracle_echelon_form() {
    for k in 1..=6 {
        let b: Vec<Vec<i128>> = basis(5, k).iter().map(|g| oracle::flat(&oracle::to_imat(g.matrix()))).collect();
        let lattice = Lattice::span_matrices(&basis(5, k).iter().map(|g| g.matrix().clone()).collect::<Vec<_>>(), 25);
        assert_eq!(lattice.rank(), oracle::rank(&b));
        let lib: Vec<Vec<i128>> =
            lattice.basis().iter().map(|r| r.iter().map(|x| x.try_into().unwrap()).collect()).collect();
        assert!(oracle::span_equal(&lib, &b), "degree {k}");
    }
}
