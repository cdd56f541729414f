//! Cohomology `H*(A, M)` from `Hom_A(P, M)`, cup products, homotopy liftings
//! and the Gerstenhaber bracket `[f,g] = fψ_g - (-1)^{(m-1)(n-1)} gψ_f`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complexes::{hom_complex, solve_greedy_step, CochainComplex, GradedMap, LinearProblem, Term, TruncatedComplex};
use crate::error::{Error, Result};
use crate::exactla::{kernel, solve, Matrix, Subspace, Vector};
use crate::hopf::{group_algebra_zp, hom_space, taft, HopfStructure, ModuleRep};
use crate::report::{Check, Report};
use crate::resolutions::{
    free_resolution, generic_diagonal, group_zp_resolution, slant_difference, symmetrize_diagonal, taft_diagonal,
    taft_resolution, tensor_resolution_and_diagonal, DiagonalData,
};
use crate::scalars::{Elem, Field};

/// An m-cochain `P_m → M` with `f∘d_{m+1} = 0`.
#[derive(Debug, Clone)]
pub struct Cocycle {
    pub degree: usize,
    pub component: Matrix,
}

impl Cocycle {
    pub fn new(p: &TruncatedComplex, degree: usize, component: Matrix) -> Result<Cocycle> {
        if degree + 1 > p.top() {
            return Err(Error::OutOfRange(format!("cocycle check in degree {degree} needs P_{}", degree + 1)));
        }
        if component.cols() != p.dim(degree as i64) {
            return Err(Error::DimensionMismatch(format!("cochain width {} vs dim P_{degree}", component.cols())));
        }
        if !component.mul(&p.d(degree as i64 + 1)).is_zero() {
            return Err(Error::InvalidArgument(format!("not a cocycle in degree {degree}")));
        }
        Ok(Cocycle { degree, component })
    }
}

/// Where a cochain sits in cohomology.
#[derive(Debug, Clone)]
pub struct ClassMembership {
    /// Coordinates in the chosen class basis of that degree.
    pub coords: Vector,
    /// `h` with `c - Σ coords·rep = h∘d`.
    pub witness: Matrix,
}

impl ClassMembership {
    pub fn is_zero(&self, f: &Field) -> bool {
        self.coords.iter().all(|c| f.is_zero(c))
    }
}

/// Cocycle representatives of a basis of `H^i(A, M)` for `i ≤ maxdeg`.
#[derive(Debug, Clone)]
pub struct CohomologyBasis {
    pub field: Field,
    pub cochains: CochainComplex,
    /// Representatives as `dim M × dim P_i` matrices.
    pub classes: Vec<Vec<Matrix>>,
    /// Same, in Hom-space coordinates.
    class_coords: Vec<Vec<Vector>>,
}

pub fn cohomology_basis(p: &TruncatedComplex, m: &ModuleRep, maxdeg: usize) -> Result<CohomologyBasis> {
    let f = p.field().clone();
    let cc = hom_complex(p, m, maxdeg)?;
    let mut classes = Vec::with_capacity(maxdeg + 1);
    let mut class_coords = Vec::with_capacity(maxdeg + 1);
    for i in 0..=maxdeg {
        let n = cc.spaces[i].dim();
        let z = kernel(&cc.coboundary[i]);
        let b: Vec<Vector> = if i == 0 {
            Vec::new()
        } else {
            (0..cc.coboundary[i - 1].cols()).map(|c| cc.coboundary[i - 1].column(c)).collect()
        };
        let mut span = Subspace::span(&f, n, &b);
        let mut reps = Vec::new();
        for v in z.basis() {
            if !span.contains(v)? {
                reps.push(v.clone());
                let mut all = span.basis().to_vec();
                all.push(v.clone());
                span = Subspace::span(&f, n, &all);
            }
        }
        classes.push(reps.iter().map(|v| cc.spaces[i].combine(&f, v)).collect());
        class_coords.push(reps);
    }
    Ok(CohomologyBasis { field: f, cochains: cc, classes, class_coords })
}

impl CohomologyBasis {
    pub fn maxdeg(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }

    /// Decomposes a cocycle into class-basis coordinates plus a coboundary.
    pub fn class_of(&self, degree: usize, cochain: &Matrix) -> Result<ClassMembership> {
        if degree > self.maxdeg() {
            return Err(Error::OutOfRange(format!("cohomology known to degree {}", self.maxdeg())));
        }
        let f = &self.field;
        let space = &self.cochains.spaces[degree];
        let x = space
            .coordinates(f, cochain)
            .ok_or_else(|| Error::InvalidArgument("cochain is not A-linear".into()))?;
        if !self.cochains.coboundary[degree].apply(&x).iter().all(|c| f.is_zero(c)) {
            return Err(Error::InvalidArgument(format!("not a cocycle in degree {degree}")));
        }
        let prev = if degree == 0 { 0 } else { self.cochains.spaces[degree - 1].dim() };
        let reps = &self.class_coords[degree];
        let mut cols: Vec<Vector> = Vec::with_capacity(prev + reps.len());
        if degree > 0 {
            cols.extend((0..prev).map(|c| self.cochains.coboundary[degree - 1].column(c)));
        }
        cols.extend(reps.iter().cloned());
        let m = Matrix::from_columns(f, space.dim(), &cols);
        let sol = solve(&m, &x)?.ok_or_else(|| Error::Certification("cocycle outside Z = B ⊕ reps".into()))?;
        let witness = if degree == 0 {
            Matrix::zeros(f, space.tgt_dim, 0)
        } else {
            self.cochains.spaces[degree - 1].combine(f, &sol[..prev])
        };
        Ok(ClassMembership { coords: sol[prev..].to_vec(), witness })
    }
}

/// `(f⊗g)∘Δ_{m+n}` with the Koszul sign `(-1)^{mn}` and `k⊗k ≅ k`.
pub fn cup(f: &Cocycle, g: &Cocycle, d: &DiagonalData) -> Result<Cocycle> {
    let total = f.degree + g.degree;
    if total > d.delta.hi() {
        return Err(Error::OutOfRange(format!("diagonal known to degree {}", d.delta.hi())));
    }
    let delta = d.delta.component(total);
    let b = d
        .square
        .blocks(total)
        .and_then(|bs| bs.iter().find(|b| b.left == f.degree && b.right == g.degree).copied())
        .ok_or_else(|| Error::OutOfRange("missing summand".into()))?;
    let rows = delta.block(b.offset, 0, b.dim, delta.cols());
    let mut c = f.component.kron(&g.component).mul(&rows);
    if (f.degree * g.degree) % 2 == 1 {
        c = c.neg();
    }
    Cocycle::new(&d.complex, total, c)
}

/// How a homotopy lifting is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftingMethod {
    /// ψ_f = 0; only valid when `(f⊗1 - 1⊗f)Δ` vanishes.
    Zero,
    /// Degree-by-degree linear solve.
    Generic,
    /// Generic solve plus `∂H` for a random A-linear `H`.
    Perturbed,
    /// Zero when possible, otherwise generic.
    Auto,
}

/// `ψ_f` of degree m-1 with `∂ψ_f = (f⊗1 - 1⊗f)Δ` and the witness `τ` of
/// `μψ_f - (-1)^{m+1}fψ = τ∘d_{m-1}`.
#[derive(Debug, Clone)]
pub struct HomotopyLifting {
    pub degree: usize,
    pub method: LiftingMethod,
    pub psi_f: GradedMap,
    pub side_witness: Matrix,
}

impl HomotopyLifting {
    pub fn hi(&self) -> usize {
        self.psi_f.hi()
    }
}

/// `(f⊗1 - 1⊗f)Δ` as a degree-m map `P → P`.
pub fn lifting_defect(f: &Cocycle, d: &DiagonalData) -> Result<GradedMap> {
    let hi = d.delta.hi().min(d.complex.top());
    let mut r = GradedMap::zero(f.degree as i64, &d.complex, &d.complex, hi);
    for i in f.degree..=r.hi() {
        r.set(i, slant_difference(&d.square, &d.delta.component(i), &f.component, f.degree, i))?;
    }
    Ok(r)
}

fn side_defect(f: &Cocycle, d: &DiagonalData, psi_f: &GradedMap) -> Result<Matrix> {
    let m = f.degree;
    let mu = &d.complex.augmentation().ok_or_else(|| Error::InvalidArgument("unaugmented".into()))?.map;
    let left = mu.mul(&psi_f.component(m - 1));
    let right = f.component.mul(&d.psi.component(m - 1));
    // μψ_f - (-1)^{m+1} fψ
    Ok(if (m + 1) % 2 == 0 { left.sub(&right) } else { left.add(&right) })
}

/// τ with `side = τ∘d_{m-1}`, if any.
fn side_witness(f: &Cocycle, d: &DiagonalData, side: &Matrix) -> Result<Option<Matrix>> {
    let m = f.degree;
    let k = &d.complex.augmentation().unwrap().target;
    if m == 1 {
        return Ok(side.is_zero().then(|| Matrix::zeros(d.complex.field(), k.dim(), 0)));
    }
    let space = hom_space(d.complex.module(m as i64 - 2), k)?;
    let dm = d.complex.d(m as i64 - 1);
    let mut lp = LinearProblem::new(d.complex.field(), vec![space]);
    lp.add_equation(&[Term { unknown: 0, left: None, right: Some(&dm), negate: false }], side)?;
    Ok(lp.solve().map(|mut v| v.remove(0)))
}

pub fn solve_homotopy_lifting(f: &Cocycle, d: &DiagonalData, method: LiftingMethod, seed: u64) -> Result<HomotopyLifting> {
    let m = f.degree;
    if m == 0 {
        return Err(Error::Unsupported("homotopy liftings are used for positive degree cohomology only".into()));
    }
    let p = &d.complex;
    let field = p.field().clone();
    let r = lifting_defect(f, d)?;
    let hi = r.hi();
    let zero = GradedMap::zero(m as i64 - 1, p, p, hi);
    let use_zero = match method {
        LiftingMethod::Zero => true,
        LiftingMethod::Auto => r.is_zero() && side_witness(f, d, &side_defect(f, d, &zero)?)?.is_some(),
        _ => false,
    };
    let mut psi_f = if use_zero {
        if !r.is_zero() {
            return Err(Error::Certification("ψ_f = 0 does not solve the lifting equation: (f⊗1 - 1⊗f)Δ ≠ 0".into()));
        }
        zero
    } else {
        generic_lifting(f, d, &r)?
    };
    if method == LiftingMethod::Perturbed {
        psi_f = psi_f.add(&random_boundary(&psi_f, seed)?)?;
    }
    let side = side_defect(f, d, &psi_f)?;
    let tau = side_witness(f, d, &side)?.ok_or_else(|| Error::NoSolution {
        degree: m - 1,
        detail: "side condition μψ_f ∼ (-1)^{m+1}fψ has no witness".into(),
    })?;
    let method = if use_zero { LiftingMethod::Zero } else if method == LiftingMethod::Auto { LiftingMethod::Generic } else { method };
    let _ = field;
    Ok(HomotopyLifting { degree: m, method, psi_f, side_witness: tau })
}

/// Joint solve of the first equation with the side condition, then one
/// degree at a time.
fn generic_lifting(f: &Cocycle, d: &DiagonalData, r: &GradedMap) -> Result<GradedMap> {
    let m = f.degree;
    let p = &d.complex;
    let field = p.field().clone();
    let mut psi_f = GradedMap::zero(m as i64 - 1, p, p, r.hi());
    if m > psi_f.hi() {
        return Ok(psi_f);
    }
    let mu = &p.augmentation().unwrap().map;
    let k = &p.augmentation().unwrap().target;
    let mut spaces = vec![hom_space(p.module(m as i64 - 1), p.module(0))?, hom_space(p.module(m as i64), p.module(1))?];
    if m >= 2 {
        spaces.push(hom_space(p.module(m as i64 - 2), k)?);
    }
    let mut lp = LinearProblem::new(&field, spaces);
    let d1 = p.d(1);
    let dm = p.d(m as i64);
    // d_1 ψ_f[m] - (-1)^{m-1} ψ_f[m-1] d_m = R_m
    lp.add_equation(
        &[
            Term { unknown: 1, left: Some(&d1), right: None, negate: false },
            Term { unknown: 0, left: None, right: Some(&dm), negate: (m - 1) % 2 == 0 },
        ],
        &r.component(m),
    )?;
    // μ ψ_f[m-1] - τ d_{m-1} = (-1)^{m+1} f ψ[m-1]
    let fpsi = f.component.mul(&d.psi.component(m - 1));
    let rhs = if (m + 1) % 2 == 0 { fpsi } else { fpsi.neg() };
    let dprev = p.d(m as i64 - 1);
    let mut terms = vec![Term { unknown: 0, left: Some(mu), right: None, negate: false }];
    if m >= 2 {
        terms.push(Term { unknown: 2, left: None, right: Some(&dprev), negate: true });
    }
    lp.add_equation(&terms, &rhs)?;
    let sol = lp.solve().ok_or_else(|| Error::NoSolution {
        degree: m,
        detail: "first lifting equation together with the side condition".into(),
    })?;
    let mut it = sol.into_iter();
    psi_f.set(m - 1, it.next().unwrap())?;
    psi_f.set(m, it.next().unwrap())?;
    for i in m + 1..=psi_f.hi() {
        if !solve_greedy_step(&mut psi_f, i, &r.component(i))? {
            return Err(Error::NoSolution { degree: i, detail: "lifting equation; P may not be exact here".into() });
        }
    }
    Ok(psi_f)
}

/// `∂H` for an A-linear `H` of degree one less than `like`, with small
/// random integer coordinates.
fn random_boundary(like: &GradedMap, seed: u64) -> Result<GradedMap> {
    let p = like.source().clone();
    let f = p.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = GradedMap::zero(like.degree() - 1, &p, like.target(), like.hi());
    for i in 0..=h.hi() {
        let t = h.target_degree(i);
        if t < 0 || !like.target().exists(t) {
            continue;
        }
        let space = hom_space(p.module(i as i64), like.target().module(t))?;
        let coords: Vec<Elem> = (0..space.dim()).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect();
        h.set(i, space.combine(&f, &coords))?;
    }
    Ok(h.hom_differential().truncate(like.hi()))
}

/// Lifting equation on the whole range plus the side condition.
pub fn verify_lifting(f: &Cocycle, d: &DiagonalData, l: &HomotopyLifting) -> Result<Report> {
    let mut rep = Report::new(format!("homotopy lifting of a degree {} cocycle", f.degree));
    let r = lifting_defect(f, d)?;
    let lhs = l.psi_f.hom_differential();
    for i in 0..=lhs.hi().min(r.hi()) {
        rep.push(Check::at("∂ψ_f = (f⊗1 - 1⊗f)Δ", i, lhs.component(i) == r.component(i)));
    }
    let side = side_defect(f, d, &l.psi_f)?;
    let m = f.degree;
    let ok = if m == 1 {
        side.is_zero()
    } else {
        side == l.side_witness.mul(&d.complex.d(m as i64 - 1))
    };
    rep.push(Check::at("μψ_f - (-1)^{m+1}fψ = τ∘d", m - 1, ok));
    Ok(rep)
}

/// The bracket cochain on `P_{m+n-1}`.
pub fn bracket_cochain(f: &Cocycle, g: &Cocycle, lf: &HomotopyLifting, lg: &HomotopyLifting) -> Result<Matrix> {
    let (m, n) = (f.degree, g.degree);
    if m == 0 || n == 0 {
        return Err(Error::Unsupported("the bracket is computed in positive degrees only".into()));
    }
    let deg = m + n - 1;
    if deg > lf.hi() || deg > lg.hi() {
        return Err(Error::OutOfRange(format!("bracket in degree {deg} exceeds lifting range")));
    }
    let a = f.component.mul(&lg.psi_f.component(deg));
    let b = g.component.mul(&lf.psi_f.component(deg));
    Ok(if ((m - 1) * (n - 1)) % 2 == 1 { a.add(&b) } else { a.sub(&b) })
}

/// A computed bracket with its cohomology certificate.
#[derive(Debug, Clone)]
pub struct BracketResult {
    pub degree: usize,
    pub cochain: Matrix,
    pub is_cocycle: bool,
    pub class: ClassMembership,
}

pub fn gerstenhaber_bracket(
    f: &Cocycle,
    g: &Cocycle,
    lf: &HomotopyLifting,
    lg: &HomotopyLifting,
    basis: &CohomologyBasis,
    p: &TruncatedComplex,
) -> Result<BracketResult> {
    let cochain = bracket_cochain(f, g, lf, lg)?;
    let degree = f.degree + g.degree - 1;
    let is_cocycle = degree + 1 <= p.top() && cochain.mul(&p.d(degree as i64 + 1)).is_zero();
    let class = basis.class_of(degree, &cochain)?;
    Ok(BracketResult { degree, cochain, is_cocycle, class })
}

/// Supported algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraKind {
    Taft(u32),
    TaftTensor(Vec<u32>),
    GroupZp(u32),
    /// A Hopf algebra given by structure constants.
    Custom(String),
}

impl AlgebraKind {
    pub fn name(&self) -> String {
        match self {
            AlgebraKind::Taft(n) => format!("taft:{n}"),
            AlgebraKind::TaftTensor(ns) => {
                format!("taft_tensor:{}", ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","))
            }
            AlgebraKind::GroupZp(p) => format!("group_zp:{p}"),
            AlgebraKind::Custom(s) => format!("file:{s}"),
        }
    }

    /// The default field: Q(ω) for Taft algebras, F_p for k[Z/p].
    pub fn default_field(&self) -> Result<Field> {
        match self {
            AlgebraKind::Taft(n) => Field::cyclotomic(*n),
            AlgebraKind::TaftTensor(ns) => Field::cyclotomic(ns.iter().fold(1, |a, &b| num_integer::lcm(a, b))),
            AlgebraKind::GroupZp(p) => Field::prime(*p as u64, 1, None),
            AlgebraKind::Custom(_) => Err(Error::InvalidArgument("a file algebra carries its own field".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResolutionChoice {
    /// The closed-form periodic resolution (Taft algebras and their
    /// tensor products, k[Z/p]).
    Explicit,
    /// Greedy free-cover resolution, for any algebra.
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagonalChoice {
    Explicit,
    Generic,
    Symmetrized,
}

/// A Hopf algebra with a resolution of k and a diagonal on it.
#[derive(Debug, Clone)]
pub struct Setting {
    pub kind: AlgebraKind,
    pub hopf: HopfStructure,
    pub diagonal: DiagonalData,
}

impl Setting {
    pub fn complex(&self) -> &Arc<TruncatedComplex> {
        &self.diagonal.complex
    }
}

/// The Hopf algebra of a built-in kind over `field`; for tensor products
/// the factors are returned as well.
pub fn build_hopf(kind: &AlgebraKind, field: &Field) -> Result<(HopfStructure, Vec<HopfStructure>)> {
    match kind {
        AlgebraKind::Taft(n) => Ok((taft(*n, field)?, Vec::new())),
        AlgebraKind::TaftTensor(ns) => {
            if ns.len() < 2 {
                return Err(Error::InvalidArgument("a tensor product needs at least two factors".into()));
            }
            let factors = ns.iter().map(|&n| taft(n, field)).collect::<Result<Vec<_>>>()?;
            let mut h = factors[0].clone();
            for t in &factors[1..] {
                h = h.tensor(t)?;
            }
            Ok((h, factors))
        }
        AlgebraKind::GroupZp(p) => Ok((group_algebra_zp(*p, field)?, Vec::new())),
        AlgebraKind::Custom(_) => Err(Error::InvalidArgument("file algebras are loaded by the caller".into())),
    }
}

/// Builds resolution and diagonal up to degree `top`.
pub fn build_setting(
    kind: &AlgebraKind,
    field: &Field,
    custom: Option<HopfStructure>,
    top: usize,
    resolution: ResolutionChoice,
    diagonal: DiagonalChoice,
) -> Result<Setting> {
    let (hopf, factors) = match (kind, custom) {
        (AlgebraKind::Custom(_), Some(h)) => (h, Vec::new()),
        (AlgebraKind::Custom(_), None) => return Err(Error::InvalidArgument("missing Hopf structure".into())),
        (k, _) => build_hopf(k, field)?,
    };
    let diag = match resolution {
        ResolutionChoice::Generic => {
            let k = crate::hopf::trivial_module(&hopf);
            let p = free_resolution(&k, top)?;
            match diagonal {
                DiagonalChoice::Explicit => {
                    return Err(Error::InvalidArgument("an explicit diagonal needs the explicit resolution".into()))
                }
                DiagonalChoice::Generic => generic_diagonal(&hopf, &p)?,
                DiagonalChoice::Symmetrized => symmetrize_diagonal(&generic_diagonal(&hopf, &p)?)?,
            }
        }
        ResolutionChoice::Explicit => match (kind, diagonal) {
            (AlgebraKind::Taft(n), _) => {
                let r = taft_resolution(&hopf, *n as usize, top)?;
                match diagonal {
                    DiagonalChoice::Explicit => taft_diagonal(&r)?,
                    DiagonalChoice::Generic => generic_diagonal(&hopf, &r.complex)?,
                    DiagonalChoice::Symmetrized => symmetrize_diagonal(&taft_diagonal(&r)?)?,
                }
            }
            (AlgebraKind::TaftTensor(ns), _) => {
                let mut acc: Option<DiagonalData> = None;
                let mut prod: Option<HopfStructure> = None;
                for (h, &n) in factors.iter().zip(ns) {
                    let d = taft_diagonal(&taft_resolution(h, n as usize, top)?)?;
                    (acc, prod) = match (acc, prod) {
                        (Some(a), Some(ph)) => {
                            let next = ph.tensor(h)?;
                            (Some(tensor_resolution_and_diagonal(&a, &d, &next)?), Some(next))
                        }
                        _ => (Some(d), Some(h.clone())),
                    };
                }
                let explicit = acc.expect("at least two factors");
                match diagonal {
                    DiagonalChoice::Explicit => explicit,
                    DiagonalChoice::Generic => generic_diagonal(&explicit.hopf, &explicit.complex)?,
                    DiagonalChoice::Symmetrized => symmetrize_diagonal(&explicit)?,
                }
            }
            (AlgebraKind::GroupZp(_), DiagonalChoice::Explicit) => {
                return Err(Error::InvalidArgument(
                    "k[Z/p] has no closed-form diagonal here; use a generic or symmetrized diagonal".into(),
                ))
            }
            (AlgebraKind::GroupZp(_), _) => {
                let p = group_zp_resolution(&hopf, top)?;
                let g = generic_diagonal(&hopf, &p)?;
                if diagonal == DiagonalChoice::Symmetrized { symmetrize_diagonal(&g)? } else { g }
            }
            (AlgebraKind::Custom(_), _) => {
                return Err(Error::InvalidArgument("file algebras need the generic resolution".into()))
            }
        },
    };
    // Tensor products are assembled factor by factor; keep that copy.
    let hopf = diag.hopf.clone();
    Ok(Setting { kind: kind.clone(), hopf, diagonal: diag })
}

/// One entry of a bracket table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub degree: usize,
    pub cochain: Vec<String>,
    pub class: String,
    pub coordinates: Vec<String>,
    pub witness: Vec<String>,
    pub cocycle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub degree: usize,
    pub representative: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingEntry {
    pub class: usize,
    pub method: LiftingMethod,
    pub valid_to: usize,
    pub certified: bool,
}

/// Serialized bracket table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketReport {
    pub algebra: String,
    pub field: String,
    pub maxdeg: usize,
    pub diagonal: String,
    pub diagonal_certified: bool,
    pub cohomology_dims: Vec<usize>,
    pub classes: Vec<ClassEntry>,
    pub liftings: Vec<LiftingEntry>,
    pub brackets: Vec<BracketEntry>,
    pub antisymmetric: bool,
    pub all_zero: bool,
}

impl BracketReport {
    pub fn certified(&self) -> bool {
        self.diagonal_certified && self.liftings.iter().all(|l| l.certified) && self.brackets.iter().all(|b| b.cocycle) && self.antisymmetric
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,deg_i,deg_j,degree,class,cocycle\n");
        for b in &self.brackets {
            let (di, dj) = (self.classes[b.i].degree, self.classes[b.j].degree);
            out.push_str(&format!("{},{},{},{},{},{},{}\n", b.i, b.j, di, dj, b.degree, b.class, b.cocycle));
        }
        out
    }
}

/// Options for [`bracket_table`].
#[derive(Debug, Clone, Copy)]
pub struct TableOptions {
    pub lifting: LiftingMethod,
    pub seed: u64,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions { lifting: LiftingMethod::Auto, seed: 0 }
    }
}

fn row_text(f: &Field, m: &Matrix) -> Vec<String> {
    m.as_slice().iter().map(|e| f.format(e)).collect()
}

/// All brackets of basis classes of positive degree with total degree at
/// most `maxdeg`. Needs the setting built to degree `maxdeg + 1`.
pub fn bracket_table(s: &Setting, maxdeg: usize, opts: TableOptions) -> Result<BracketReport> {
    let d = &s.diagonal;
    let p = &d.complex;
    let f = p.field().clone();
    if p.top() < maxdeg + 1 || d.delta.hi() < maxdeg.saturating_sub(1) {
        return Err(Error::OutOfRange(format!("bracket table to degree {maxdeg} needs P and Δ to degree {}", maxdeg + 1)));
    }
    let k = &p.augmentation().ok_or_else(|| Error::InvalidArgument("unaugmented".into()))?.target;
    let basis = cohomology_basis(p, k, maxdeg)?;
    let diagonal_certified = d.certify().passed();
    let mut classes = Vec::new();
    let mut cocycles = Vec::new();
    for deg in 1..maxdeg {
        for c in &basis.classes[deg] {
            classes.push(ClassEntry { degree: deg, representative: row_text(&f, c) });
            cocycles.push(Cocycle::new(p, deg, c.clone())?);
        }
    }
    let mut lifts = Vec::with_capacity(cocycles.len());
    let mut liftings = Vec::with_capacity(cocycles.len());
    for (idx, c) in cocycles.iter().enumerate() {
        let l = solve_homotopy_lifting(c, d, opts.lifting, opts.seed.wrapping_add(idx as u64))?;
        let certified = verify_lifting(c, d, &l)?.passed();
        liftings.push(LiftingEntry { class: idx, method: l.method, valid_to: l.hi(), certified });
        lifts.push(l);
    }
    let mut brackets = Vec::new();
    let mut results = std::collections::BTreeMap::new();
    for i in 0..cocycles.len() {
        for j in 0..cocycles.len() {
            if cocycles[i].degree + cocycles[j].degree > maxdeg {
                continue;
            }
            let r = gerstenhaber_bracket(&cocycles[i], &cocycles[j], &lifts[i], &lifts[j], &basis, p)?;
            let zero = r.class.is_zero(&f);
            brackets.push(BracketEntry {
                i,
                j,
                degree: r.degree,
                cochain: row_text(&f, &r.cochain),
                class: if zero { "zero" } else { "nonzero" }.into(),
                coordinates: r.class.coords.iter().map(|c| f.format(c)).collect(),
                witness: row_text(&f, &r.class.witness),
                cocycle: r.is_cocycle,
            });
            results.insert((i, j), r.class.coords.clone());
        }
    }
    let antisymmetric = results.iter().all(|(&(i, j), c)| {
        let (m, n) = (cocycles[i].degree, cocycles[j].degree);
        let other = &results[&(j, i)];
        antisymmetric_pair(&f, m, n, c, other)
    });
    let all_zero = brackets.iter().all(|b| b.class == "zero");
    Ok(BracketReport {
        algebra: s.kind.name(),
        field: f.spec().to_text(),
        maxdeg,
        diagonal: format!("{:?}", d.kind).to_lowercase(),
        diagonal_certified,
        cohomology_dims: basis.dims(),
        classes,
        liftings,
        brackets,
        antisymmetric,
        all_zero,
    })
}

/// `class([f,g]) = -(-1)^{(m-1)(n-1)} class([g,f])`.
pub fn antisymmetric_pair(f: &Field, m: usize, n: usize, fg: &[Elem], gf: &[Elem]) -> bool {
    let plus = ((m - 1) * (n - 1)) % 2 == 1;
    fg.len() == gf.len() && fg.iter().zip(gf).all(|(a, b)| if plus { a == b } else { *a == f.neg(b) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn taft_setting(n: u32, top: usize, diag: DiagonalChoice) -> Setting {
        let kind = AlgebraKind::Taft(n);
        build_setting(&kind, &kind.default_field().unwrap(), None, top, ResolutionChoice::Explicit, diag).unwrap()
    }

    #[test]
    fn taft_cohomology_dims() {
        let s = taft_setting(3, 9, DiagonalChoice::Explicit);
        let k = &s.complex().augmentation().unwrap().target;
        let b = cohomology_basis(s.complex(), k, 8).unwrap();
        assert_eq!(b.dims(), vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn cup_powers_and_unit() {
        let s = taft_setting(3, 9, DiagonalChoice::Explicit);
        let p = s.complex();
        let k = &p.augmentation().unwrap().target;
        let b = cohomology_basis(p, k, 8).unwrap();
        let unit = Cocycle::new(p, 0, b.classes[0][0].clone()).unwrap();
        let z = Cocycle::new(p, 2, b.classes[2][0].clone()).unwrap();
        let zu = cup(&z, &unit, &s.diagonal).unwrap();
        assert_eq!(b.class_of(2, &zu.component).unwrap().coords, b.class_of(2, &z.component).unwrap().coords);
        let mut pow = z.clone();
        for i in 2..=4 {
            pow = cup(&pow, &z, &s.diagonal).unwrap();
            assert_eq!(pow.degree, 2 * i);
            assert!(!b.class_of(pow.degree, &pow.component).unwrap().is_zero(&b.field));
        }
        // z∪z evaluates to 1 on ε_4 through the ε_2⊗ε_2 term.
        let zz = cup(&z, &z, &s.diagonal).unwrap();
        let zval = z.component.get(0, 0).clone();
        let f = &b.field;
        assert_eq!(zz.component.get(0, 0), &f.mul(&zval, &zval));
    }

    #[test]
    fn zero_and_generic_liftings() {
        let s = taft_setting(3, 7, DiagonalChoice::Explicit);
        let p = s.complex();
        let k = &p.augmentation().unwrap().target;
        let b = cohomology_basis(p, k, 6).unwrap();
        let z = Cocycle::new(p, 2, b.classes[2][0].clone()).unwrap();
        let l0 = solve_homotopy_lifting(&z, &s.diagonal, LiftingMethod::Zero, 0).unwrap();
        assert!(l0.psi_f.is_zero());
        assert!(verify_lifting(&z, &s.diagonal, &l0).unwrap().passed());
        let lp = solve_homotopy_lifting(&z, &s.diagonal, LiftingMethod::Perturbed, 7).unwrap();
        assert!(!lp.psi_f.is_zero());
        assert!(verify_lifting(&z, &s.diagonal, &lp).unwrap().passed());
        // [z,z] = 2zψ_z = 0 for ψ_z = 0.
        let c = bracket_cochain(&z, &z, &l0, &l0).unwrap();
        assert!(c.is_zero());
        let r = gerstenhaber_bracket(&z, &z, &lp, &lp, &b, p).unwrap();
        assert!(r.class.is_zero(&b.field));
    }

    #[test]
    fn degree_zero_is_rejected() {
        let s = taft_setting(2, 5, DiagonalChoice::Explicit);
        let p = s.complex();
        let k = &p.augmentation().unwrap().target;
        let b = cohomology_basis(p, k, 4).unwrap();
        let unit = Cocycle::new(p, 0, b.classes[0][0].clone()).unwrap();
        assert!(matches!(
            solve_homotopy_lifting(&unit, &s.diagonal, LiftingMethod::Auto, 0),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn sweedler_table_vanishes() {
        let s = taft_setting(2, 7, DiagonalChoice::Explicit);
        let t = bracket_table(&s, 6, TableOptions::default()).unwrap();
        assert!(t.certified());
        assert!(t.all_zero);
        let t2 = bracket_table(&s, 6, TableOptions { lifting: LiftingMethod::Perturbed, seed: 3 }).unwrap();
        assert!(t2.certified() && t2.all_zero);
    }

    #[test]
    fn group_algebra_symmetrized() {
        let kind = AlgebraKind::GroupZp(3);
        let s = build_setting(&kind, &kind.default_field().unwrap(), None, 5, ResolutionChoice::Explicit, DiagonalChoice::Symmetrized)
            .unwrap();
        assert!(s.diagonal.psi.is_zero());
        let t = bracket_table(&s, 4, TableOptions { lifting: LiftingMethod::Zero, seed: 0 }).unwrap();
        assert_eq!(t.cohomology_dims, vec![1, 1, 1, 1, 1]);
        assert!(t.certified(), "{t:?}");
        assert!(t.all_zero);
    }
}
