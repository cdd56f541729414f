use homlift::bracket::{
    antisymmetric_pair, build_setting, lifting_defect, cohomology_basis, gerstenhaber_bracket, solve_homotopy_lifting, AlgebraKind, Cocycle,
    DiagonalChoice, LiftingMethod, ResolutionChoice,
};
use homlift::exactla::{kernel, rref, solve, Matrix};
use homlift::hopf::{taft, trivial_module};
use homlift::resolutions::{taft_diagonal, taft_resolution};
use homlift::scalars::{omega_binomial, q_integer};
use homlift::{Elem, Field};
use proptest::prelude::*;

fn element(f: &Field, coeffs: &[(i64, i64)]) -> Elem {
    coeffs.iter().enumerate().fold(f.zero(), |acc, (k, &(num, den))| {
        let c = f.from_ratio(num, den).unwrap();
        f.add(&acc, &f.mul(&c, &f.omega_pow(k as i64)))
    })
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..20, 1i64..7), 0..6)
}

/// Product formula `Π (b-c+i)_ω / (i)_ω`, valid while no `(i)_ω` vanishes.
fn binomial_by_quotient(f: &Field, b: u64, c: u64) -> Option<Elem> {
    let w = f.omega();
    let mut acc = f.one();
    for i in 1..=c {
        let den = q_integer(f, &w, i);
        if f.is_zero(&den) {
            return None;
        }
        acc = f.div(&f.mul(&acc, &q_integer(f, &w, b - c + i)), &den).unwrap();
    }
    Some(acc)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_form_round_trips(n in 1u32..9, cs in coeffs()) {
        let f = Field::cyclotomic(n).unwrap();
        let a = element(&f, &cs);
        prop_assert_eq!(f.parse(&f.format(&a)).unwrap(), a);
    }

    #[test]
    fn prime_text_form_round_trips(v in -100i64..100) {
        let f = Field::prime(13, 3, None).unwrap();
        let a = f.from_i64(v);
        prop_assert_eq!(f.parse(&f.format(&a)).unwrap(), a);
    }

    #[test]
    fn field_axioms(n in 2u32..8, a in coeffs(), b in coeffs(), c in coeffs()) {
        let f = Field::cyclotomic(n).unwrap();
        let (a, b, c) = (element(&f, &a), element(&f, &b), element(&f, &c));
        prop_assert_eq!(f.mul(&f.add(&a, &b), &c), f.add(&f.mul(&a, &c), &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
    }

    #[test]
    fn omega_integers_add(n in 2u32..8, a in 0u64..15, b in 0u64..15) {
        let f = Field::cyclotomic(n).unwrap();
        let w = f.omega();
        let rhs = f.add(&q_integer(&f, &w, a), &f.mul(&f.pow(&w, a), &q_integer(&f, &w, b)));
        prop_assert_eq!(q_integer(&f, &w, a + b), rhs);
    }

    #[test]
    fn recurrence_matches_quotient(n in 2u32..8, b in 0u64..12, c in 0u64..12) {
        prop_assume!(c <= b);
        let f = Field::cyclotomic(n).unwrap();
        let rec = omega_binomial(b, c, &f).unwrap();
        if let Some(q) = binomial_by_quotient(&f, b, c) {
            prop_assert_eq!(rec.elem(), &q);
        }
    }

    #[test]
    fn recurrence_matches_quotient_mod_p(b in 0u64..10, c in 0u64..10) {
        prop_assume!(c <= b);
        let f = Field::prime(7, 3, None).unwrap();
        let rec = omega_binomial(b, c, &f).unwrap();
        if let Some(q) = binomial_by_quotient(&f, b, c) {
            prop_assert_eq!(rec.elem(), &q);
        }
    }

    #[test]
    fn binomials_of_a_full_period_vanish(n in 2u32..8, c in 1u64..7) {
        let f = Field::cyclotomic(n).unwrap();
        prop_assume!(c < n as u64);
        prop_assert!(omega_binomial(n as u64, c, &f).unwrap().is_zero());
    }

    #[test]
    fn rank_nullity(rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-3i64..4, 36)) {
        let f = Field::cyclotomic(3).unwrap();
        let m = Matrix::from_fn(&f, rows, cols, |r, c| f.mul(&f.from_i64(seed[r * 6 + c]), &f.omega_pow((r + c) as i64 % 2)));
        let k = kernel(&m);
        prop_assert_eq!(m.rank() + k.dim(), cols);
        for v in k.basis() {
            prop_assert!(m.apply(v).iter().all(|x| f.is_zero(x)));
        }
        let (r, _) = rref(&m);
        prop_assert_eq!(rref(&r).0, r);
    }

    #[test]
    fn solve_recovers_consistent_systems(n in 1usize..6, seed in prop::collection::vec(-3i64..4, 42)) {
        let f = Field::cyclotomic(4).unwrap();
        let m = Matrix::from_fn(&f, n, n, |r, c| f.from_i64(seed[r * 6 + c]));
        let x0: Vec<Elem> = (0..n).map(|i| f.add(&f.from_i64(seed[36 + i]), &f.omega())).collect();
        let b = m.apply(&x0);
        let x = solve(&m, &b).unwrap().expect("consistent");
        prop_assert_eq!(m.apply(&x), b);
        if let Some(inv) = m.inverse() {
            prop_assert!(inv.mul(&m).is_identity());
        }
    }

    #[test]
    fn bracket_classes_antisymmetric_with_independent_liftings(n in 2u32..4, s1 in 0u64..1000, s2 in 0u64..1000) {
        let f = Field::cyclotomic(n).unwrap();
        let s = build_setting(&AlgebraKind::Taft(n), &f, None, 5, ResolutionChoice::Explicit, DiagonalChoice::Explicit).unwrap();
        let p = s.complex();
        let basis = cohomology_basis(p, &trivial_module(&s.hopf), 4).unwrap();
        let z = Cocycle::new(p, 2, basis.classes[2][0].clone()).unwrap();
        let l1 = solve_homotopy_lifting(&z, &s.diagonal, LiftingMethod::Perturbed, s1).unwrap();
        let l2 = solve_homotopy_lifting(&z, &s.diagonal, LiftingMethod::Perturbed, s2).unwrap();
        let fg = gerstenhaber_bracket(&z, &z, &l1, &l2, &basis, p).unwrap();
        let gf = gerstenhaber_bracket(&z, &z, &l2, &l1, &basis, p).unwrap();
        prop_assert!(fg.is_cocycle && gf.is_cocycle);
        prop_assert!(antisymmetric_pair(&f, 2, 2, &fg.class.coords, &gf.class.coords));
    }
}

#[test]
fn explicit_diagonal_is_not_symmetric_for_n_at_least_three() {
    for n in 3..=5u32 {
        let f = Field::cyclotomic(n).unwrap();
        let h = taft(n, &f).unwrap();
        let d = taft_diagonal(&taft_resolution(&h, n as usize, 4).unwrap()).unwrap();
        assert!(!d.is_symmetric(), "n = {n}");
    }
}

#[test]
fn neighbouring_binomials_differ_for_n_at_least_three() {
    for n in 3..=7u32 {
        let f = Field::cyclotomic(n).unwrap();
        let m = n as u64 - 1;
        let differ = (0..m).any(|a| omega_binomial(m, a + 1, &f).unwrap() != omega_binomial(m, a, &f).unwrap());
        assert!(differ, "n = {n}");
    }
}

#[test]
fn even_cocycles_see_a_symmetric_diagonal() {
    for n in 2..=4u32 {
        let f = Field::cyclotomic(n).unwrap();
        let h = taft(n, &f).unwrap();
        let d = taft_diagonal(&taft_resolution(&h, n as usize, 7).unwrap()).unwrap();
        let basis = cohomology_basis(&d.complex, &trivial_module(&h), 6).unwrap();
        for deg in [2, 4, 6] {
            let z = Cocycle::new(&d.complex, deg, basis.classes[deg][0].clone()).unwrap();
            assert!(lifting_defect(&z, &d).unwrap().is_zero(), "n = {n}, degree {deg}");
        }
        assert!(d.counit_defect().unwrap().is_zero());
    }
}
