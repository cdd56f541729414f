//! Acceptance battery. Runs without the libtest harness so that every
//! criterion prints exactly one status line; exits non-zero on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};

use homlift::bracket::{
    bracket_cochain, bracket_table, build_setting, cohomology_basis, cup, solve_homotopy_lifting, verify_lifting, AlgebraKind,
    Cocycle, DiagonalChoice, LiftingMethod, ResolutionChoice, Setting, TableOptions,
};
use homlift::exactla::{kernel, Matrix};
use homlift::functor::{
    eckmann_shapiro_check, induce_resolution, transport_check, verify_monoidal, verify_naturality, verify_unit_identification,
    Envelope,
};
use homlift::hopf::{taft, trivial_module, HopfStructure};
use homlift::resolutions::{power_flat_check, slant_difference, taft_diagonal, taft_resolution, DiagonalData};
use homlift::scalars::{omega_binomial, q_integer};
use homlift::{Elem, Field};

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn taft_setting(n: u32, top: usize, diagonal: DiagonalChoice) -> Setting {
    let f = Field::cyclotomic(n).unwrap();
    build_setting(&AlgebraKind::Taft(n), &f, None, top, ResolutionChoice::Explicit, diagonal).unwrap()
}

fn degree_two_class(s: &Setting) -> Cocycle {
    let p = s.complex();
    let b = cohomology_basis(p, &trivial_module(&s.hopf), 2).unwrap();
    Cocycle::new(p, 2, b.classes[2][0].clone()).unwrap()
}

/// Homology ranks recomputed from the raw differentials.
fn homology_by_rank(p: &homlift::complexes::TruncatedComplex, l: usize) -> usize {
    p.dim(l as i64) - p.d(l as i64).rank() - p.d(l as i64 + 1).rank()
}

/// `Π (b-c+i)_ω / (i)_ω`; only used where no denominator vanishes.
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

fn criterion_1() -> Outcome {
    for n in [2u32, 3, 4] {
        let f = Field::cyclotomic(n).unwrap();
        let h = taft(n, &f).unwrap();
        let r = taft_resolution(&h, n as usize, 10).unwrap();
        let rep = r.verify();
        ensure(rep.passed(), format!("n={n}: {:?}", rep.first_failure()))?;
        let p = &r.complex;
        for l in 1..=9 {
            ensure(homology_by_rank(p, l) == 0, format!("n={n}: H_{l} ≠ 0"))?;
        }
        let mu = &p.augmentation().unwrap().map;
        ensure(mu.rank() == 1 && p.dim(0) - mu.rank() == p.d(1).rank(), format!("n={n}: augmentation"))?;
        for l in 0..=10 {
            let s = r.stated_splitting(l);
            ensure(s.composes_to_identity(), format!("n={n}: stated p∘s ≠ id at {l}"))?;
            let s = r.linear_splitting(l);
            ensure(s.composes_to_identity(), format!("n={n}: linear p∘s ≠ id at {l}"))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    for n in [2u32, 3] {
        let f = Field::cyclotomic(n).unwrap();
        let h = taft(n, &f).unwrap();
        let r = taft_resolution(&h, n as usize, 6).unwrap();
        let rep = power_flat_check(&h, &r.complex, 2, 5, true).unwrap();
        ensure(rep.passed(), format!("n={n}: {:?}", rep.first_failure()))?;
    }
    Ok(())
}

/// Generator column of `Δ_l` expected from the closed form.
fn expected_delta_column(d: &DiagonalData, n: usize, l: usize) -> Vec<Elem> {
    let f = d.complex.field().clone();
    let blocks = d.square.blocks(l).unwrap();
    let mut col = vec![f.zero(); d.square.dim(l as i64)];
    for b in blocks {
        let (i, j) = (b.left, b.right);
        if l % 2 == 1 || (i % 2 == 0 && j % 2 == 0) {
            col[b.offset] = f.one();
        } else if i % 2 == 1 && j % 2 == 1 {
            for a in 0..=n - 2 {
                let c = binomial_by_quotient(&f, n as u64 - 1, a as u64 + 1).unwrap();
                col[b.offset + a * n + (n - 2 - a)] = c;
            }
        }
    }
    col
}

fn criterion_3() -> Outcome {
    for n in [2u32, 3, 4] {
        let f = Field::cyclotomic(n).unwrap();
        let h = taft(n, &f).unwrap();
        let d = taft_diagonal(&taft_resolution(&h, n as usize, 9).unwrap()).unwrap();
        let rep = d.certify();
        ensure(rep.passed(), format!("n={n}: {:?}", rep.first_failure()))?;
        for l in 1..=8 {
            let lhs = d.square.d_times(l as i64, &d.delta.component(l));
            let rhs = d.delta.component(l - 1).mul(&d.complex.d(l as i64));
            ensure(lhs == rhs, format!("n={n}: chain map residual at {l}"))?;
        }
        for l in [1usize, 2] {
            let got = d.delta.component(l).column(0);
            ensure(got == expected_delta_column(&d, n as usize, l), format!("n={n}: Δ_{l} coefficients"))?;
        }
        for a in 0..=n as u64 - 2 {
            let rec = omega_binomial(n as u64 - 1, a + 1, &f).unwrap();
            ensure(Some(rec.elem().clone()) == binomial_by_quotient(&f, n as u64 - 1, a + 1), "binomial mismatch")?;
        }
        ensure(d.counit_defect().unwrap().is_zero(), format!("n={n}: (μ⊗1 - 1⊗μ)Δ ≠ 0"))?;
        ensure(d.psi.is_zero(), format!("n={n}: ψ is not zero"))?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for n in [2u32, 3, 5] {
        let s = taft_setting(n, 9, DiagonalChoice::Explicit);
        let p = s.complex();
        let b = cohomology_basis(p, &trivial_module(&s.hopf), 8).unwrap();
        let expected: Vec<usize> = (0..=8).map(|i| usize::from(i % 2 == 0)).collect();
        ensure(b.dims() == expected, format!("n={n}: dims {:?}", b.dims()))?;
        let z = Cocycle::new(p, 2, b.classes[2][0].clone()).unwrap();
        let mut acc = z.clone();
        for i in 1..=4 {
            let zero = b.class_of(acc.degree, &acc.component).unwrap().is_zero(p.field());
            ensure(!zero, format!("n={n}: z^{i} is zero"))?;
            if i < 4 {
                acc = cup(&acc, &z, &s.diagonal).unwrap();
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for n in [2u32, 3] {
        let s = taft_setting(n, 7, DiagonalChoice::Explicit);
        let d = &s.diagonal;
        let p = s.complex();
        let z = degree_two_class(&s);
        let mu = &p.augmentation().unwrap().map;
        for method in [LiftingMethod::Zero, LiftingMethod::Generic] {
            let l = solve_homotopy_lifting(&z, d, method, 0).unwrap();
            ensure(l.hi() >= 6, "lifting too short")?;
            ensure(verify_lifting(&z, d, &l).unwrap().passed(), format!("n={n} {method:?}: certificate"))?;
            let dpsi = l.psi_f.hom_differential();
            for i in 0..=6 {
                let rhs = slant_difference(&d.square, &d.delta.component(i), &z.component, 2, i);
                ensure(*dpsi.component(i) == rhs, format!("n={n} {method:?}: residual at {i}"))?;
            }
            // μψ_f - (-1)^{m+1} fψ = τ d_{m-1} with m = 2.
            let side = mu.mul(&l.psi_f.component(1)).add(&z.component.mul(&d.psi.component(1)));
            ensure(side == l.side_witness.mul(&p.d(1)), format!("n={n} {method:?}: side condition witness"))?;
        }
        let zero = solve_homotopy_lifting(&z, d, LiftingMethod::Zero, 0).unwrap();
        ensure(zero.psi_f.is_zero(), "ψ_f = 0 expected")?;
        let generic = solve_homotopy_lifting(&z, d, LiftingMethod::Perturbed, 1).unwrap();
        ensure(!generic.psi_f.is_zero(), "perturbed lifting should be nonzero")?;
        ensure(verify_lifting(&z, d, &generic).unwrap().passed(), "perturbed lifting certificate")?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for n in [2u32, 3] {
        let s = taft_setting(n, 7, DiagonalChoice::Explicit);
        let zero = bracket_table(&s, 6, TableOptions { lifting: LiftingMethod::Zero, seed: 0 }).unwrap();
        let generic = bracket_table(&s, 6, TableOptions { lifting: LiftingMethod::Generic, seed: 0 }).unwrap();
        let perturbed = bracket_table(&s, 6, TableOptions { lifting: LiftingMethod::Perturbed, seed: 9 }).unwrap();
        for t in [&zero, &generic, &perturbed] {
            ensure(t.certified() && t.all_zero, format!("n={n}: table not certified or nonzero"))?;
            ensure(!t.brackets.is_empty(), "empty table")?;
        }
        for (a, b) in zero.brackets.iter().zip(&generic.brackets) {
            ensure(a.coordinates == b.coordinates, format!("n={n}: lifting choice changes a class"))?;
        }
        let z = degree_two_class(&s);
        let l = solve_homotopy_lifting(&z, &s.diagonal, LiftingMethod::Zero, 0).unwrap();
        let c = bracket_cochain(&z, &z, &l, &l).unwrap();
        let f_psi = z.component.mul(&l.psi_f.component(3));
        ensure(c.is_zero() && f_psi.is_zero(), format!("n={n}: [f,f] = 2fψ_f is not literally zero"))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for ns in [vec![2u32, 2], vec![2, 3]] {
        let kind = AlgebraKind::TaftTensor(ns.clone());
        let f = kind.default_field().unwrap();
        let s = build_setting(&kind, &f, None, 5, ResolutionChoice::Explicit, DiagonalChoice::Explicit).unwrap();
        let t = bracket_table(&s, 4, TableOptions::default()).unwrap();
        ensure(t.certified() && t.all_zero, format!("{ns:?}: brackets"))?;
        ensure(t.cohomology_dims[2] == ns.len(), format!("{ns:?}: H^2 dims {:?}", t.cohomology_dims))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let kind = AlgebraKind::GroupZp(3);
    let f = kind.default_field().unwrap();
    let s = build_setting(&kind, &f, None, 5, ResolutionChoice::Explicit, DiagonalChoice::Symmetrized).unwrap();
    let d = &s.diagonal;
    ensure(d.is_symmetric(), "σΔ ≠ Δ")?;
    ensure(d.psi.is_zero() && d.counit_defect().unwrap().is_zero(), "ψ ≡ 0 not certified")?;
    ensure(d.certify().passed(), "diagonal certificate")?;
    let b = cohomology_basis(s.complex(), &trivial_module(&s.hopf), 4).unwrap();
    for deg in 1..=3 {
        for c in &b.classes[deg] {
            let z = Cocycle::new(s.complex(), deg, c.clone()).unwrap();
            let l = solve_homotopy_lifting(&z, d, LiftingMethod::Zero, 0).unwrap();
            ensure(verify_lifting(&z, d, &l).unwrap().passed(), format!("ψ_f ≡ 0 rejected in degree {deg}"))?;
        }
    }
    let t = bracket_table(&s, 4, TableOptions { lifting: LiftingMethod::Zero, seed: 0 }).unwrap();
    ensure(t.certified() && t.all_zero, "brackets")
}

fn sweedler() -> (HopfStructure, DiagonalData) {
    let f = Field::cyclotomic(2).unwrap();
    let h = taft(2, &f).unwrap();
    let d = taft_diagonal(&taft_resolution(&h, 2, 6).unwrap()).unwrap();
    (h, d)
}

fn criterion_9() -> Outcome {
    let (h, d) = sweedler();
    let env = Envelope::new(&h).unwrap();
    let p = &d.complex;
    let ir = induce_resolution(&env, p).unwrap();
    let rep = ir.verify(5).unwrap();
    ensure(rep.passed(), format!("F(P): {:?}", rep.first_failure()))?;
    for l in 1..=5 {
        let h = ir.complex.dim(l) - ir.complex.d(l).rank() - ir.complex.d(l + 1).rank();
        ensure(h == 0, format!("F(P) homology in degree {l}"))?;
    }
    let mu = &ir.complex.augmentation().unwrap().map;
    ensure(mu.rank() == h.dim(), "cokernel of μ' is not zero")?;
    ensure(verify_unit_identification(&env).unwrap().passed(), "F(k) ≅ A")?;
    let k = trivial_module(&h);
    ensure(verify_monoidal(&env, &k, &k, &k, false).unwrap().passed(), "monoidal (k,k,k)")?;
    ensure(verify_monoidal(&env, p.module(0), p.module(1), p.module(0), false).unwrap().passed(), "monoidal (P0,P1,P0)")?;
    ensure(verify_monoidal(&env, p.module(1), p.module(2), p.module(1), false).unwrap().passed(), "monoidal (P1,P2,P1)")?;
    ensure(!verify_monoidal(&env, p.module(0), p.module(1), p.module(0), true).unwrap().passed(), "corruption unnoticed")?;
    let id0 = Matrix::identity(p.field(), p.dim(0));
    let nat = verify_naturality(&env, (p.module(1), p.module(0), &p.d(1)), (p.module(0), p.module(0), &id0)).unwrap();
    ensure(nat.passed(), "naturality (d_1, id)")?;
    let nat = verify_naturality(&env, (p.module(2), p.module(1), &p.d(2)), (p.module(1), p.module(0), &p.d(1))).unwrap();
    ensure(nat.passed(), "naturality (d_2, d_1)")?;
    let b = cohomology_basis(p, &k, 2).unwrap();
    let z = Cocycle::new(p, 2, b.classes[2][0].clone()).unwrap();
    for method in [LiftingMethod::Zero, LiftingMethod::Perturbed] {
        let l = solve_homotopy_lifting(&z, &d, method, 4).unwrap();
        let t = transport_check(&env, &d, &z, &l, 4).unwrap();
        ensure(t.report.passed(), format!("{method:?}: {:?}", t.report.first_failure()))?;
    }
    Ok(())
}

/// Dimension of the center, from commutators with the generators.
fn center_dim(h: &HopfStructure) -> usize {
    let alg = h.algebra();
    let f = h.field();
    let mut blocks = Vec::new();
    for &g in alg.generators() {
        let lm = &alg.left_mult()[g];
        let rm = alg.right_mult(&vec![(g, f.one())]);
        blocks.push(lm.sub(&rm));
    }
    let refs: Vec<&Matrix> = blocks.iter().collect();
    kernel(&Matrix::vstack(&refs)).dim()
}

fn criterion_10() -> Outcome {
    let (h, d) = sweedler();
    let env = Envelope::new(&h).unwrap();
    let es = eckmann_shapiro_check(&env, &d.complex, 4).unwrap();
    ensure(es.report.passed(), format!("{:?}", es.report.first_failure()))?;
    ensure(es.bimodule_side.len() == 5 && es.bimodule_side == es.adjoint_side, "dimension sequences differ")?;
    ensure(es.bimodule_side[0] == center_dim(&h), "HH^0 is not the center")?;
    ensure(
        es.report.checks.iter().any(|c| c.degree == Some(2) && c.equation.contains("injective") && c.residual_zero),
        "degree-2 class not embedded",
    )
}

fn criterion_11() -> Outcome {
    for (kind, maxdeg) in [(AlgebraKind::Taft(3), 6), (AlgebraKind::TaftTensor(vec![2, 2]), 4)] {
        let f = kind.default_field().unwrap();
        let s = build_setting(&kind, &f, None, maxdeg + 1, ResolutionChoice::Explicit, DiagonalChoice::Explicit).unwrap();
        let t = bracket_table(&s, maxdeg, TableOptions { lifting: LiftingMethod::Perturbed, seed: 17 }).unwrap();
        ensure(t.antisymmetric, format!("{}: antisymmetry", kind.name()))?;
    }
    for n in 2..=8u32 {
        let f = Field::cyclotomic(n).unwrap();
        for b in 0..=12u64 {
            for c in 0..=b {
                if let Some(q) = binomial_by_quotient(&f, b, c) {
                    ensure(omega_binomial(b, c, &f).unwrap().elem() == &q, format!("n={n}: C({b},{c})"))?;
                }
            }
        }
    }
    let run = || {
        let s = taft_setting(3, 5, DiagonalChoice::Explicit);
        let t = bracket_table(&s, 4, TableOptions { lifting: LiftingMethod::Perturbed, seed: 5 }).unwrap();
        serde_json::to_vec(&t).unwrap()
    };
    ensure(run() == run(), "reruns differ")
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("resolution validity", criterion_1),
        ("power flatness", criterion_2),
        ("explicit diagonal", criterion_3),
        ("cohomology ring", criterion_4),
        ("homotopy liftings", criterion_5),
        ("vanishing brackets for Taft algebras", criterion_6),
        ("vanishing brackets for tensor products", criterion_7),
        ("cocommutative group algebra", criterion_8),
        ("functor transport", criterion_9),
        ("Eckmann-Shapiro", criterion_10),
        ("property suite", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("[PASS] {}. {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
