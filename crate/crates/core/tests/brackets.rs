use homlift::bracket::{bracket_table, build_setting, AlgebraKind, DiagonalChoice, LiftingMethod, ResolutionChoice, TableOptions};

fn table(kind: AlgebraKind, maxdeg: usize, diag: DiagonalChoice, lifting: LiftingMethod) -> homlift::bracket::BracketReport {
    let field = kind.default_field().unwrap();
    let s = build_setting(&kind, &field, None, maxdeg + 1, ResolutionChoice::Explicit, diag).unwrap();
    bracket_table(&s, maxdeg, TableOptions { lifting, seed: 11 }).unwrap()
}

#[test]
fn taft_three_vanishes_to_degree_six() {
    let t = table(AlgebraKind::Taft(3), 6, DiagonalChoice::Explicit, LiftingMethod::Auto);
    assert!(t.certified() && t.all_zero);
    assert_eq!(t.cohomology_dims, vec![1, 0, 1, 0, 1, 0, 1]);
}

#[test]
fn taft_generic_diagonal_vanishes() {
    let t = table(AlgebraKind::Taft(3), 6, DiagonalChoice::Generic, LiftingMethod::Generic);
    assert!(t.certified() && t.all_zero);
}

#[test]
fn sweedler_square_vanishes() {
    let t = table(AlgebraKind::TaftTensor(vec![2, 2]), 4, DiagonalChoice::Explicit, LiftingMethod::Auto);
    assert_eq!(t.cohomology_dims, vec![1, 0, 2, 0, 3]);
    assert!(t.certified() && t.all_zero, "{:?}", t.brackets.iter().find(|b| b.class != "zero"));
}

#[test]
fn mixed_tensor_vanishes() {
    let t = table(AlgebraKind::TaftTensor(vec![2, 3]), 4, DiagonalChoice::Explicit, LiftingMethod::Auto);
    assert!(t.certified() && t.all_zero);
}
