//! The induction functor `F(U) = A^e ⊗_A U` from A-modules to A-bimodules,
//! with A sitting inside A^e through `δ(a) = Σ a₁ ⊗ S(a₂)`, its monoidal
//! structure `η_{U,V}: F(U)⊗_A F(V) → F(U⊗V)`, and checks that F carries
//! resolutions, diagonals and homotopy liftings across.
//!
//! Everything is an explicit quotient with a chosen section, so every map
//! here is a matrix and every check is an exact matrix identity.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bracket::{bracket_cochain, cohomology_basis, Cocycle, HomotopyLifting};
use crate::complexes::{Augmentation, GradedMap, TruncatedComplex};
use crate::error::{Error, Result};
use crate::exactla::{solve_matrix, Echelon, Matrix, SparseRow, Vector};
use crate::hopf::{
    adjoint_module, delta_embed, enveloping, tensor_modules, trivial_module, verify_delta_embedding, AlgebraPresentation,
    DeltaEmbedding, HopfStructure, ModuleRep,
};
use crate::report::{Check, Report};
use crate::resolutions::{split_through_free, DiagonalData};
use crate::scalars::{Elem, Field};

/// `V / R` for a subspace `R` of `V = k^ambient`, with the complement
/// spanned by the non-pivot coordinates of the reduced relations.
#[derive(Debug, Clone)]
pub struct Quotient {
    field: Field,
    ambient: usize,
    /// Reduced relation rows, pivot entry 1.
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
    /// Position of each free ambient coordinate in the quotient basis.
    free_pos: Vec<Option<usize>>,
    free: Vec<usize>,
}

impl Quotient {
    pub fn new(field: &Field, ambient: usize, relations: Vec<SparseRow>) -> Quotient {
        let e = Echelon::build(field, ambient, relations);
        let mut pivot_row = vec![None; ambient];
        for (r, &p) in e.pivots.iter().enumerate() {
            pivot_row[p] = Some(r);
        }
        let free: Vec<usize> = (0..ambient).filter(|c| pivot_row[*c].is_none()).collect();
        let mut free_pos = vec![None; ambient];
        for (k, &c) in free.iter().enumerate() {
            free_pos[c] = Some(k);
        }
        Quotient { field: field.clone(), ambient, rows: e.rows, pivot_row, free_pos, free }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn relation_rank(&self) -> usize {
        self.rows.len()
    }

    /// Image of a sparse ambient vector.
    pub fn project_sparse(&self, v: &[(usize, Elem)]) -> Vector {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (j, x) in v {
            if f.is_zero(x) {
                continue;
            }
            if let Some(k) = self.free_pos[*j] {
                out[k] = f.add(&out[k], x);
            } else {
                let r = self.pivot_row[*j].expect("pivot");
                for (c, y) in &self.rows[r] {
                    if let Some(k) = self.free_pos[*c] {
                        out[k] = f.sub(&out[k], &f.mul(x, y));
                    }
                }
            }
        }
        out
    }

    pub fn project(&self, v: &[Elem]) -> Vector {
        let sparse: Vec<(usize, Elem)> =
            v.iter().enumerate().filter(|(_, x)| !self.field.is_zero(x)).map(|(i, x)| (i, x.clone())).collect();
        self.project_sparse(&sparse)
    }

    /// `π`, of shape `dim × ambient`.
    pub fn projection(&self) -> Matrix {
        let f = &self.field;
        let mut m = Matrix::zeros(f, self.dim(), self.ambient);
        for j in 0..self.ambient {
            for (k, x) in self.project_sparse(&[(j, f.one())]).into_iter().enumerate() {
                if !f.is_zero(&x) {
                    m.set(k, j, x);
                }
            }
        }
        m
    }

    /// The chosen section `σ`, of shape `ambient × dim`.
    pub fn section(&self) -> Matrix {
        let f = &self.field;
        let mut m = Matrix::zeros(f, self.ambient, self.dim());
        for (k, &c) in self.free.iter().enumerate() {
            m.set(c, k, f.one());
        }
        m
    }

    /// Whether `m` (any width-`ambient` matrix) vanishes on the relations.
    pub fn kills(&self, m: &Matrix) -> bool {
        let f = &self.field;
        self.rows.iter().all(|row| {
            (0..m.rows()).all(|r| {
                let mut acc = f.zero();
                for (c, x) in row {
                    let y = m.get(r, *c);
                    if !f.is_zero(y) {
                        acc = f.add(&acc, &f.mul(x, y));
                    }
                }
                f.is_zero(&acc)
            })
        })
    }

    /// `π_tgt ∘ ambient ∘ σ` after checking the ambient map respects the
    /// relations.
    pub fn induce(&self, ambient_map: &Matrix, target: Option<&Quotient>) -> Result<Matrix> {
        if ambient_map.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!("ambient map width {} vs {}", ambient_map.cols(), self.ambient)));
        }
        let projected = match target {
            Some(t) => {
                if ambient_map.rows() != t.ambient {
                    return Err(Error::DimensionMismatch("ambient map height".into()));
                }
                let cols: Vec<Vector> = (0..ambient_map.cols()).map(|c| t.project(&ambient_map.column(c))).collect();
                Matrix::from_columns(&self.field, t.dim(), &cols)
            }
            None => ambient_map.clone(),
        };
        if !self.kills(&projected) {
            return Err(Error::Certification("map is not well defined on the quotient".into()));
        }
        let cols: Vec<Vector> = self.free.iter().map(|&c| projected.column(c)).collect();
        Ok(Matrix::from_columns(&self.field, projected.rows(), &cols))
    }
}

/// A^e with δ, and A as a bimodule (the unit object on the A^e side).
#[derive(Debug, Clone)]
pub struct Envelope {
    pub hopf: HopfStructure,
    pub algebra: Arc<AlgebraPresentation>,
    pub delta: DeltaEmbedding,
    pub unit_object: ModuleRep,
    right_delta: Vec<Matrix>,
    unit: usize,
}

impl Envelope {
    pub fn new(h: &HopfStructure) -> Result<Envelope> {
        let alg = h.algebra();
        let unit = alg.unit_index().ok_or_else(|| Error::Unsupported("the unit must be a basis element".into()))?;
        let env = Arc::new(enveloping(h)?);
        let delta = delta_embed(h);
        verify_delta_embedding(h, &env, &delta)?;
        let right_delta = alg.generators().iter().map(|&g| env.right_mult(&delta.images[g])).collect();
        // (a⊗b)·c = a c b: generators g⊗1 act by left, 1⊗h by right multiplication.
        let gens_a = alg.generators();
        let mut acts: Vec<Matrix> = gens_a.iter().map(|&g| alg.left_mult()[g].clone()).collect();
        acts.extend(gens_a.iter().map(|&g| alg.right_mult(&vec![(g, h.field().one())])));
        let unit_object = ModuleRep::from_generator_actions(&env, alg.dim(), acts)?;
        Ok(Envelope { hopf: h.clone(), algebra: env, delta, unit_object, right_delta, unit })
    }

    pub fn field(&self) -> &Field {
        self.hopf.field()
    }

    fn d(&self) -> usize {
        self.hopf.dim()
    }

    /// Index of `a⊗1` in A^e.
    pub fn left_index(&self, a: usize) -> usize {
        a * self.d() + self.unit
    }

    /// Index of `1⊗b` in A^e.
    pub fn right_index(&self, b: usize) -> usize {
        self.unit * self.d() + b
    }

    fn ngen(&self) -> usize {
        self.hopf.algebra().generators().len()
    }

    /// Action of the generator `g⊗1` (i-th generator of A) on a bimodule.
    fn left_gen<'a>(&self, m: &'a ModuleRep, i: usize) -> &'a Matrix {
        &m.generator_actions()[i]
    }

    /// Action of `1⊗g` (i-th generator of A) on a bimodule.
    fn right_gen<'a>(&self, m: &'a ModuleRep, i: usize) -> &'a Matrix {
        &m.generator_actions()[self.ngen() + i]
    }

    /// The isomorphism `φ: F(k) → A`, `(a⊗b)⊗1 ↦ ab`.
    pub fn lemma_iso(&self) -> Result<(InducedModule, Matrix)> {
        let k = trivial_module(&self.hopf);
        let fk = induce_module(self, &k)?;
        let f = self.field();
        let d = self.d();
        let one: Vector = (0..d).map(|i| if i == self.unit { f.one() } else { f.zero() }).collect();
        let cols: Vec<Vector> = (0..self.algebra.dim()).map(|x| self.unit_object.action(x).apply(&one)).collect();
        let ambient = Matrix::from_columns(f, d, &cols);
        let phi = fk.quotient.induce(&ambient, None)?;
        Ok((fk, phi))
    }
}

/// `F(U) = A^e ⊗_A U`.
#[derive(Debug, Clone)]
pub struct InducedModule {
    pub source: ModuleRep,
    pub carrier: ModuleRep,
    pub quotient: Quotient,
}

/// Left A^e-action `L_e ⊗ 1` on `A^e ⊗ U`, projected.
pub fn induce_module(env: &Envelope, u: &ModuleRep) -> Result<InducedModule> {
    if !Arc::ptr_eq(u.algebra(), env.hopf.algebra()) {
        return Err(Error::AlgebraMismatch("induction of a module over another algebra".into()));
    }
    let f = env.field().clone();
    let de = env.algebra.dim();
    let du = u.dim();
    let ambient = de * du;
    // (ξ·δ(g)) ⊗ u - ξ ⊗ g·u for generators g; generators suffice.
    let mut rels: Vec<SparseRow> = Vec::new();
    for (gi, rd) in env.right_delta.iter().enumerate() {
        let ga = &u.generator_actions()[gi];
        for xi in 0..de {
            for uu in 0..du {
                let mut acc = crate::hopf::SparseAcc::new(&f);
                for r in 0..de {
                    let c = rd.get(r, xi);
                    if !f.is_zero(c) {
                        acc.add(r * du + uu, c.clone());
                    }
                }
                for v in 0..du {
                    let c = ga.get(v, uu);
                    if !f.is_zero(c) {
                        acc.add(xi * du + v, f.neg(c));
                    }
                }
                let row = acc.finish();
                if !row.is_empty() {
                    rels.push(row);
                }
            }
        }
    }
    let quotient = Quotient::new(&f, ambient, rels);
    let gens = env
        .algebra
        .generators()
        .iter()
        .map(|&e| {
            let l = &env.algebra.left_mult()[e];
            let cols: Vec<Vector> = quotient
                .free
                .iter()
                .map(|&c| {
                    let (xi, uu) = (c / du.max(1), c % du.max(1));
                    let v: Vec<(usize, Elem)> =
                        (0..de).filter(|&r| !f.is_zero(l.get(r, xi))).map(|r| (r * du + uu, l.get(r, xi).clone())).collect();
                    quotient.project_sparse(&v)
                })
                .collect();
            Matrix::from_columns(&f, quotient.dim(), &cols)
        })
        .collect();
    let carrier = ModuleRep::from_generator_actions(&env.algebra, quotient.dim(), gens)?;
    Ok(InducedModule { source: u.clone(), carrier, quotient })
}

/// `F(t)` for an A-linear `t: U → V`.
pub fn induce_map(env: &Envelope, src: &InducedModule, tgt: &InducedModule, t: &Matrix) -> Result<Matrix> {
    if !src.source.is_hom_to(&tgt.source, t) {
        return Err(Error::InvalidArgument("induce_map needs an A-linear map".into()));
    }
    let f = env.field();
    let de = env.algebra.dim();
    let (du, dv) = (src.source.dim(), tgt.source.dim());
    let cols: Vec<Vector> = src
        .quotient
        .free
        .iter()
        .map(|&c| {
            let (xi, uu) = (c / du.max(1), c % du.max(1));
            let v: Vec<(usize, Elem)> =
                (0..dv).filter(|&r| !f.is_zero(t.get(r, uu))).map(|r| (xi * dv + r, t.get(r, uu).clone())).collect();
            tgt.quotient.project_sparse(&v)
        })
        .collect();
    let _ = de;
    Ok(Matrix::from_columns(f, tgt.quotient.dim(), &cols))
}

/// `M ⊗_A N` for bimodules, `m·a ⊗ n = m ⊗ a·n`.
#[derive(Debug, Clone)]
pub struct BimoduleTensor {
    pub left: ModuleRep,
    pub right: ModuleRep,
    pub quotient: Quotient,
    pub carrier: ModuleRep,
}

pub fn bimodule_tensor(env: &Envelope, m: &ModuleRep, n: &ModuleRep) -> Result<BimoduleTensor> {
    let f = env.field().clone();
    let (dm, dn) = (m.dim(), n.dim());
    let mut rels: Vec<SparseRow> = Vec::new();
    for i in 0..env.ngen() {
        let ra = env.right_gen(m, i);
        let la = env.left_gen(n, i);
        for x in 0..dm {
            for y in 0..dn {
                let mut acc = crate::hopf::SparseAcc::new(&f);
                for r in 0..dm {
                    let c = ra.get(r, x);
                    if !f.is_zero(c) {
                        acc.add(r * dn + y, c.clone());
                    }
                }
                for s in 0..dn {
                    let c = la.get(s, y);
                    if !f.is_zero(c) {
                        acc.add(x * dn + s, f.neg(c));
                    }
                }
                let row = acc.finish();
                if !row.is_empty() {
                    rels.push(row);
                }
            }
        }
    }
    let quotient = Quotient::new(&f, dm * dn, rels);
    let sec = quotient.section();
    let mut gens = Vec::with_capacity(2 * env.ngen());
    for i in 0..env.ngen() {
        let amb = env.left_gen(m, i).kron(&Matrix::identity(&f, dn));
        gens.push(project_cols(&quotient, &amb.mul(&sec)));
    }
    for i in 0..env.ngen() {
        let amb = Matrix::identity(&f, dm).kron(env.right_gen(n, i));
        gens.push(project_cols(&quotient, &amb.mul(&sec)));
    }
    let carrier = ModuleRep::from_generator_actions(&env.algebra, quotient.dim(), gens)?;
    Ok(BimoduleTensor { left: m.clone(), right: n.clone(), quotient, carrier })
}

fn project_cols(q: &Quotient, m: &Matrix) -> Matrix {
    let cols: Vec<Vector> = (0..m.cols()).map(|c| q.project(&m.column(c))).collect();
    Matrix::from_columns(m.field(), q.dim(), &cols)
}

/// `s ⊗_A t` between bimodule tensors.
pub fn tensor_map(src: &BimoduleTensor, tgt: &BimoduleTensor, s: &Matrix, t: &Matrix) -> Result<Matrix> {
    src.quotient.induce(&s.kron(t), Some(&tgt.quotient))
}

/// `η_{U,V}` with its inverse and the spanning-form rank.
#[derive(Debug, Clone)]
pub struct EtaMap {
    pub source: BimoduleTensor,
    pub target: InducedModule,
    pub matrix: Matrix,
    pub inverse: Matrix,
    pub spanning_rank: usize,
}

/// `((a⊗1)⊗u) ⊗ ((1⊗b)⊗v) ↦ (a⊗b)⊗(u⊗v)`, solved from all spanning forms
/// and checked to be well defined on them.
pub fn eta(env: &Envelope, fu: &InducedModule, fv: &InducedModule, fuv: &InducedModule) -> Result<EtaMap> {
    let f = env.field().clone();
    let d = env.d();
    let (du, dv) = (fu.source.dim(), fv.source.dim());
    if fuv.source.dim() != du * dv {
        return Err(Error::DimensionMismatch("F(U⊗V) has the wrong source".into()));
    }
    let src = bimodule_tensor(env, &fu.carrier, &fv.carrier)?;
    let mut s_cols = Vec::new();
    let mut t_cols = Vec::new();
    for a in 0..d {
        for b in 0..d {
            for u in 0..du {
                for v in 0..dv {
                    let x = fu.quotient.project_sparse(&[(env.left_index(a) * du + u, f.one())]);
                    let y = fv.quotient.project_sparse(&[(env.right_index(b) * dv + v, f.one())]);
                    let mut amb = Vec::new();
                    for (i, xi) in x.iter().enumerate() {
                        if f.is_zero(xi) {
                            continue;
                        }
                        for (j, yj) in y.iter().enumerate() {
                            if !f.is_zero(yj) {
                                amb.push((i * y.len() + j, f.mul(xi, yj)));
                            }
                        }
                    }
                    s_cols.push(src.quotient.project_sparse(&amb));
                    t_cols.push(fuv.quotient.project_sparse(&[((a * d + b) * du * dv + u * dv + v, f.one())]));
                }
            }
        }
    }
    let s = Matrix::from_columns(&f, src.quotient.dim(), &s_cols);
    let t = Matrix::from_columns(&f, fuv.quotient.dim(), &t_cols);
    let spanning_rank = s.rank();
    if spanning_rank != src.quotient.dim() {
        return Err(Error::Certification("spanning forms do not span F(U)⊗_A F(V)".into()));
    }
    let eta_t = solve_matrix(&s.transpose(), &t.transpose())?
        .ok_or_else(|| Error::Certification("η is not well defined on the spanning forms".into()))?;
    let matrix = eta_t.transpose();
    let inverse = matrix.inverse().ok_or_else(|| Error::Certification("η is not bijective".into()))?;
    Ok(EtaMap { source: src, target: fuv.clone(), matrix, inverse, spanning_rank })
}

/// `l: A ⊗_A M → M`, `c⊗m ↦ (c⊗1)·m`.
pub fn left_unit(env: &Envelope, t: &BimoduleTensor) -> Result<Matrix> {
    let f = env.field();
    let m = &t.right;
    let d = env.d();
    let mut amb = Matrix::zeros(f, m.dim(), d * m.dim());
    for c in 0..d {
        amb.set_block(0, c * m.dim(), m.action(env.left_index(c)));
    }
    t.quotient.induce(&amb, None)
}

/// `r: M ⊗_A A → M`, `m⊗c ↦ (1⊗c)·m`.
pub fn right_unit(env: &Envelope, t: &BimoduleTensor) -> Result<Matrix> {
    let f = env.field();
    let m = &t.left;
    let d = env.d();
    let mut amb = Matrix::zeros(f, m.dim(), m.dim() * d);
    for x in 0..m.dim() {
        for c in 0..d {
            let col = m.action(env.right_index(c)).column(x);
            for (r, v) in col.into_iter().enumerate() {
                amb.set(r, x * d + c, v);
            }
        }
    }
    t.quotient.induce(&amb, None)
}

fn first_difference(a: &Matrix, b: &Matrix) -> Option<String> {
    if a.shape() != b.shape() {
        return Some(format!("shapes {:?} vs {:?}", a.shape(), b.shape()));
    }
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            if a.get(r, c) != b.get(r, c) {
                return Some(format!("entry ({r}, {c})"));
            }
        }
    }
    None
}

fn matrix_check(report: &mut Report, eq: &str, lhs: &Matrix, rhs: &Matrix) {
    let diff = first_difference(lhs, rhs);
    let mut c = Check::new(eq, None, diff.is_none());
    if let Some(d) = diff {
        c = c.with_detail(d);
    }
    report.push(c);
}

/// Diagram checks for one triple: the monoidal axiom and both unit
/// triangles (through φ). `corrupt` perturbs `η_{X⊗Y,Z}` to test the check.
pub fn verify_monoidal(env: &Envelope, x: &ModuleRep, y: &ModuleRep, z: &ModuleRep, corrupt: bool) -> Result<Report> {
    let h = &env.hopf;
    let f = env.field().clone();
    let mut rep = Report::new("monoidal structure of induction");
    let xy = tensor_modules(h, x, y)?;
    let yz = tensor_modules(h, y, z)?;
    let xy_z = tensor_modules(h, &xy, z)?;
    let x_yz = tensor_modules(h, x, &yz)?;
    rep.push(Check::new(
        "(X⊗Y)⊗Z = X⊗(Y⊗Z) as modules",
        None,
        xy_z.generator_actions() == x_yz.generator_actions(),
    ));
    let (fx, fy, fz) = (induce_module(env, x)?, induce_module(env, y)?, induce_module(env, z)?);
    let (fxy, fyz) = (induce_module(env, &xy)?, induce_module(env, &yz)?);
    let (fxy_z, fx_yz) = (induce_module(env, &xy_z)?, induce_module(env, &x_yz)?);
    let e_xy = eta(env, &fx, &fy, &fxy)?;
    let e_yz = eta(env, &fy, &fz, &fyz)?;
    let mut e_xy_z = eta(env, &fxy, &fz, &fxy_z)?;
    if corrupt {
        let v = f.add(e_xy_z.matrix.get(0, 0), &f.one());
        e_xy_z.matrix.set(0, 0, v);
    }
    let e_x_yz = eta(env, &fx, &fyz, &fx_yz)?;
    // (FX⊗FY)⊗FZ and FX⊗(FY⊗FZ)
    let l_src = bimodule_tensor(env, &e_xy.source.carrier, &fz.carrier)?;
    let r_src = bimodule_tensor(env, &fx.carrier, &e_yz.source.carrier)?;
    let (dx, dz) = (fx.carrier.dim(), fz.carrier.dim());
    let assoc_amb = Matrix::identity(&f, dx)
        .kron(&e_yz.source.quotient.projection())
        .mul(&e_xy.source.quotient.section().kron(&Matrix::identity(&f, dz)));
    let assoc = l_src.quotient.induce(&assoc_amb, Some(&r_src.quotient))?;
    let left = e_xy_z.matrix.mul(&tensor_map(&l_src, &e_xy_z.source, &e_xy.matrix, &Matrix::identity(&f, dz))?);
    let right = e_x_yz
        .matrix
        .mul(&tensor_map(&r_src, &e_x_yz.source, &Matrix::identity(&f, dx), &e_yz.matrix)?)
        .mul(&assoc);
    matrix_check(&mut rep, "η_{X⊗Y,Z}(η_{X,Y}⊗1) = η_{X,Y⊗Z}(1⊗η_{Y,Z})α", &left, &right);

    // Unit triangles through φ: F(k⊗X) = F(X) strictly.
    let (fk, phi) = env.lemma_iso()?;
    let k = &fk.source;
    for (name, m) in [("X", x), ("Y", y), ("Z", z)] {
        let kx = tensor_modules(h, k, m)?;
        let xk = tensor_modules(h, m, k)?;
        let fm = induce_module(env, m)?;
        let fkx = induce_module(env, &kx)?;
        let fxk = induce_module(env, &xk)?;
        let ekx = eta(env, &fk, &fm, &fkx)?;
        let exk = eta(env, &fm, &fk, &fxk)?;
        let a_m = bimodule_tensor(env, &env.unit_object, &fm.carrier)?;
        let m_a = bimodule_tensor(env, &fm.carrier, &env.unit_object)?;
        let id_m = Matrix::identity(&f, fm.carrier.dim());
        let lhs = left_unit(env, &a_m)?.mul(&tensor_map(&ekx.source, &a_m, &phi, &id_m)?).mul(&ekx.inverse);
        let rhs = right_unit(env, &m_a)?.mul(&tensor_map(&exk.source, &m_a, &id_m, &phi)?).mul(&exk.inverse);
        let strict = fkx.carrier.generator_actions() == fm.carrier.generator_actions()
            && fxk.carrier.generator_actions() == fm.carrier.generator_actions();
        rep.push(Check::new(format!("F(k⊗{name}) = F({name}) = F({name}⊗k)"), None, strict));
        matrix_check(&mut rep, &format!("l(φ⊗1)η⁻¹_(k,{name}) = id"), &lhs, &id_m);
        matrix_check(&mut rep, &format!("r(1⊗φ)η⁻¹_({name},k) = id"), &rhs, &id_m);
    }
    Ok(rep)
}

/// `η_{U',V'}(F(s)⊗F(t)) = F(s⊗t)η_{U,V}`.
pub fn verify_naturality(
    env: &Envelope,
    (u, u2, s): (&ModuleRep, &ModuleRep, &Matrix),
    (v, v2, t): (&ModuleRep, &ModuleRep, &Matrix),
) -> Result<Report> {
    let h = &env.hopf;
    let mut rep = Report::new("naturality of η");
    let (fu, fu2, fv, fv2) = (induce_module(env, u)?, induce_module(env, u2)?, induce_module(env, v)?, induce_module(env, v2)?);
    let (uv, uv2) = (tensor_modules(h, u, v)?, tensor_modules(h, u2, v2)?);
    let (fuv, fuv2) = (induce_module(env, &uv)?, induce_module(env, &uv2)?);
    let e1 = eta(env, &fu, &fv, &fuv)?;
    let e2 = eta(env, &fu2, &fv2, &fuv2)?;
    let fs = induce_map(env, &fu, &fu2, s)?;
    let ft = induce_map(env, &fv, &fv2, t)?;
    let lhs = e2.matrix.mul(&tensor_map(&e1.source, &e2.source, &fs, &ft)?);
    let rhs = induce_map(env, &fuv, &fuv2, &s.kron(t))?.mul(&e1.matrix);
    matrix_check(&mut rep, "η'(F(s)⊗F(t)) = F(s⊗t)η", &lhs, &rhs);
    rep.push(Check::new("η bijective", None, e1.matrix.rank() == fuv.carrier.dim()));
    Ok(rep)
}

/// `φ` is a bijective A^e-map and `η_{k,k}` matches multiplication
/// `A⊗_A A → A` through it.
pub fn verify_unit_identification(env: &Envelope) -> Result<Report> {
    let mut rep = Report::new("F(k) ≅ A");
    let (fk, phi) = env.lemma_iso()?;
    rep.push(Check::new("dim F(k) = dim A", None, fk.carrier.dim() == env.d()));
    rep.push(Check::new("φ is A^e-linear", None, fk.carrier.is_hom_to(&env.unit_object, &phi)));
    rep.push(Check::new("φ is bijective", None, phi.inverse().is_some()));
    let kk = tensor_modules(&env.hopf, &fk.source, &fk.source)?;
    let fkk = induce_module(env, &kk)?;
    let e = eta(env, &fk, &fk, &fkk)?;
    let aa = bimodule_tensor(env, &env.unit_object, &env.unit_object)?;
    let lhs = phi.mul(&e.matrix);
    let rhs = left_unit(env, &aa)?.mul(&tensor_map(&e.source, &aa, &phi, &phi)?);
    matrix_check(&mut rep, "φη_(k,k) = m(φ⊗φ)", &lhs, &rhs);
    Ok(rep)
}

/// Lemma-style projectivity: A^e is a summand of a free right A-module
/// (right action through δ).
pub fn verify_right_projectivity(env: &Envelope) -> Result<Report> {
    let mut rep = Report::new("A^e is projective as a right A-module");
    let op = Arc::new(env.hopf.algebra().opposite());
    let m = ModuleRep::from_generator_actions(&op, env.algebra.dim(), env.right_delta.clone())?;
    rep.push(Check::new("right δ-action is a module", None, m.check_axioms().is_ok()));
    let s = split_through_free(&m)?;
    rep.push(Check::new("split surjection from a free module", None, s.is_some_and(|s| s.composes_to_identity())));
    Ok(rep)
}

/// `F(P)` with `d' = F(d)`, `μ' = φF(μ)`, plus the induced modules.
#[derive(Debug, Clone)]
pub struct InducedResolution {
    pub induced: Vec<InducedModule>,
    pub complex: Arc<TruncatedComplex>,
    pub phi: Matrix,
}

pub fn induce_resolution(env: &Envelope, p: &TruncatedComplex) -> Result<InducedResolution> {
    let induced = (0..=p.top()).map(|l| induce_module(env, p.module(l as i64))).collect::<Result<Vec<_>>>()?;
    let diffs = (1..=p.top())
        .map(|l| induce_map(env, &induced[l], &induced[l - 1], &p.d(l as i64)))
        .collect::<Result<Vec<_>>>()?;
    let (fk, phi) = env.lemma_iso()?;
    let aug = p.augmentation().ok_or_else(|| Error::InvalidArgument("unaugmented".into()))?;
    let mu = phi.mul(&induce_map(env, &induced[0], &fk, &aug.map)?);
    let modules = induced.iter().map(|m| m.carrier.clone()).collect();
    let complex = TruncatedComplex::new(modules, diffs, Some(Augmentation { target: env.unit_object.clone(), map: mu }), false)?;
    Ok(InducedResolution { induced, complex: Arc::new(complex), phi })
}

impl InducedResolution {
    /// Exactness, cokernel of `μ'`, and a splitting through a free A^e-module
    /// for every term.
    pub fn verify(&self, upto: usize) -> Result<Report> {
        let mut rep = self.complex.verify_resolution(upto);
        for (l, m) in self.induced.iter().enumerate().take(upto + 1) {
            let ok = split_through_free(&m.carrier)?.is_some_and(|s| s.composes_to_identity());
            rep.push(Check::at("F(P_l) is projective", l, ok));
        }
        Ok(rep)
    }

    /// `φ∘F(c)` for a cochain `c: P_i → k`.
    pub fn induce_cochain(&self, env: &Envelope, i: usize, c: &Matrix) -> Result<Matrix> {
        let (fk, _) = env.lemma_iso()?;
        Ok(self.phi.mul(&induce_map(env, &self.induced[i], &fk, c)?))
    }

    pub fn induce_graded(&self, env: &Envelope, g: &GradedMap) -> Result<GradedMap> {
        let mut out = GradedMap::zero(g.degree(), &self.complex, &self.complex, g.hi());
        for (i, m) in g.nonzero_components() {
            let t = g.target_degree(i) as usize;
            out.set(i, induce_map(env, &self.induced[i], &self.induced[t], m)?)?;
        }
        Ok(out)
    }
}

/// One summand `F(P_a) ⊗_A F(P_b)` of `P'⊗_A P'`.
struct SquareBlock {
    a: usize,
    b: usize,
    offset: usize,
    tensor: BimoduleTensor,
}

/// Serializable outcome of a functor report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorSummary {
    pub induced_dims: Vec<usize>,
    pub report: Report,
}

/// Transport of a diagonal and a homotopy lifting along F: `P' = F(P)` is a
/// resolution of A, `Δ' = η⁻¹F(Δ)` is a chain map, `F(ψ_f)` satisfies the
/// lifting equation for `f' = φF(f)` with `ψ' = F(ψ)`, and the F-side
/// bracket `[f', f']` equals `φF([f, f])`.
pub fn transport_check(env: &Envelope, d: &DiagonalData, f: &Cocycle, l: &HomotopyLifting, hi: usize) -> Result<FunctorSummary> {
    let field = env.field().clone();
    let h = &env.hopf;
    let p = &d.complex;
    if hi + 1 > p.top() || hi > d.delta.hi() || hi > l.hi() {
        return Err(Error::OutOfRange(format!("transport to degree {hi} needs P to degree {}", hi + 1)));
    }
    let ir = induce_resolution(env, p)?;
    let pp = &ir.complex;
    let mut rep = Report::new("transport along induction");
    rep.extend(ir.verify(hi)?);
    let coker = pp.augmented_homology().map(|(_, c)| c);
    rep.push(Check::new("μ' is onto A", Some(0), coker == Some(0)));
    rep.extend(verify_unit_identification(env)?);

    // Blocks of P'⊗_A P' and η per block.
    let mut blocks: Vec<Vec<SquareBlock>> = Vec::new();
    let mut etas: Vec<Vec<EtaMap>> = Vec::new();
    for deg in 0..=hi {
        let mut bs = Vec::new();
        let mut es = Vec::new();
        let mut off = 0;
        for a in 0..=deg {
            let b = deg - a;
            let m = tensor_modules(h, p.module(a as i64), p.module(b as i64))?;
            let fm = induce_module(env, &m)?;
            let e = eta(env, &ir.induced[a], &ir.induced[b], &fm)?;
            let dim = e.source.quotient.dim();
            bs.push(SquareBlock { a, b, offset: off, tensor: e.source.clone() });
            es.push(e);
            off += dim;
        }
        blocks.push(bs);
        etas.push(es);
    }
    let sq_dim = |deg: usize| blocks[deg].iter().map(|b| b.tensor.quotient.dim()).sum::<usize>();

    // Δ'_deg = η⁻¹ F(Δ_deg), blockwise.
    let mut delta_p = Vec::new();
    for deg in 0..=hi {
        let dl = d.delta.component(deg);
        let mut m = Matrix::zeros(&field, sq_dim(deg), pp.dim(deg as i64));
        let sblocks = d.square.blocks(deg).expect("tensor square");
        for (bk, e) in blocks[deg].iter().zip(&etas[deg]) {
            let sb = sblocks.iter().find(|s| s.left == bk.a && s.right == bk.b).unwrap();
            let rows = dl.block(sb.offset, 0, sb.dim, dl.cols());
            let fd = induce_map(env, &ir.induced[deg], &e.target, &rows)?;
            m.set_block(bk.offset, 0, &e.inverse.mul(&fd));
        }
        delta_p.push(m);
    }
    // Differential of P'⊗_A P'.
    let id = |n: usize| Matrix::identity(&field, n);
    let mut sq_d = vec![Matrix::zeros(&field, 0, sq_dim(0))];
    for deg in 1..=hi {
        let mut m = Matrix::zeros(&field, sq_dim(deg - 1), sq_dim(deg));
        for bk in &blocks[deg] {
            if bk.a >= 1 {
                let t = blocks[deg - 1].iter().find(|t| t.a == bk.a - 1 && t.b == bk.b).unwrap();
                let x = tensor_map(&bk.tensor, &t.tensor, &pp.d(bk.a as i64), &id(pp.dim(bk.b as i64)))?;
                m.add_block(t.offset, bk.offset, &x);
            }
            if bk.b >= 1 {
                let t = blocks[deg - 1].iter().find(|t| t.a == bk.a && t.b == bk.b - 1).unwrap();
                let x = tensor_map(&bk.tensor, &t.tensor, &id(pp.dim(bk.a as i64)), &pp.d(bk.b as i64))?;
                m.add_block(t.offset, bk.offset, &x.signed(bk.a % 2 == 1));
            }
        }
        sq_d.push(m);
    }
    for deg in 1..=hi {
        let lhs = sq_d[deg].mul(&delta_p[deg]);
        let rhs = delta_p[deg - 1].mul(&pp.d(deg as i64));
        rep.push(Check::at("Δ' is a chain map", deg, lhs == rhs));
    }
    let mu = &pp.augmentation().unwrap().map;
    let aa = bimodule_tensor(env, &env.unit_object, &env.unit_object)?;
    let mumu = left_unit(env, &aa)?.mul(&tensor_map(&blocks[0][0].tensor, &aa, mu, mu)?);
    rep.push(Check::at("m(μ'⊗μ')Δ'_0 = μ'", 0, mumu.mul(&delta_p[0]) == *mu));

    // (c⊗1 - 1⊗c)Δ' for a cochain c: P'_m → A.
    let slant = |c: &Matrix, m: usize, deg: usize| -> Result<Matrix> {
        let mut out = Matrix::zeros(&field, if deg >= m { pp.dim((deg - m) as i64) } else { 0 }, pp.dim(deg as i64));
        if deg < m {
            return Ok(out);
        }
        for bk in &blocks[deg] {
            let rows = delta_p[deg].block(bk.offset, 0, bk.tensor.quotient.dim(), delta_p[deg].cols());
            if bk.a == m {
                let y = &bk.tensor.right;
                let mut amb = Matrix::zeros(&field, y.dim(), bk.tensor.left.dim() * y.dim());
                for x in 0..bk.tensor.left.dim() {
                    let mut act = Matrix::zeros(&field, y.dim(), y.dim());
                    for cc in 0..env.d() {
                        let s = c.get(cc, x);
                        if !field.is_zero(s) {
                            act = act.add(&y.action(env.left_index(cc)).scale(s));
                        }
                    }
                    amb.set_block(0, x * y.dim(), &act);
                }
                out = out.add(&bk.tensor.quotient.induce(&amb, None)?.mul(&rows));
            }
            if bk.b == m {
                let x = &bk.tensor.left;
                let dy = bk.tensor.right.dim();
                let mut amb = Matrix::zeros(&field, x.dim(), x.dim() * dy);
                for yy in 0..dy {
                    let mut act = Matrix::zeros(&field, x.dim(), x.dim());
                    for cc in 0..env.d() {
                        let s = c.get(cc, yy);
                        if !field.is_zero(s) {
                            act = act.add(&x.action(env.right_index(cc)).scale(s));
                        }
                    }
                    for xx in 0..x.dim() {
                        for (r, v) in act.column(xx).into_iter().enumerate() {
                            amb.set(r, xx * dy + yy, v);
                        }
                    }
                }
                let t = bk.tensor.quotient.induce(&amb, None)?.mul(&rows);
                out = if (m * bk.a) % 2 == 1 { out.add(&t) } else { out.sub(&t) };
            }
        }
        Ok(out)
    };

    // ψ' = F(ψ) against μ'.
    let psi_p = ir.induce_graded(env, &d.psi.truncate(hi.min(d.psi.hi())))?;
    let dpsi = psi_p.hom_differential();
    for deg in 0..=dpsi.hi() {
        rep.push(Check::at("∂ψ' = (μ'⊗1 - 1⊗μ')Δ'", deg, *dpsi.component(deg) == slant(mu, 0, deg)?));
    }
    // F(ψ_f) against f'.
    let m = f.degree;
    let fp = ir.induce_cochain(env, m, &f.component)?;
    let psif_p = ir.induce_graded(env, &l.psi_f.truncate(hi))?;
    let dpsif = psif_p.hom_differential();
    for deg in 0..=dpsif.hi() {
        rep.push(Check::at("∂F(ψ_f) = (f'⊗1 - 1⊗f')Δ'", deg, *dpsif.component(deg) == slant(&fp, m, deg)?));
    }
    let left = mu.mul(&psif_p.component(m - 1));
    let right = fp.mul(&psi_p.component(m - 1));
    let side = if (m + 1) % 2 == 0 { left.sub(&right) } else { left.add(&right) };
    let witness = if m >= 2 {
        ir.induce_cochain(env, m - 2, &l.side_witness)?.mul(&pp.d(m as i64 - 1))
    } else {
        Matrix::zeros(&field, side.rows(), side.cols())
    };
    rep.push(Check::at("μ'F(ψ_f) - (-1)^{m+1}f'ψ' = F(τ)d'", m - 1, side == witness));

    // Bracket [f, f] on both sides.
    let deg = 2 * m - 1;
    if deg <= hi && deg + 1 <= pp.top() {
        let c = bracket_cochain(f, f, l, l)?;
        let sign_plus = ((m - 1) * (m - 1)) % 2 == 1;
        let a = fp.mul(&psif_p.component(deg));
        let cp = if sign_plus { a.add(&a) } else { a.sub(&a) };
        rep.push(Check::at("[f',f'] = φF([f,f])", deg, cp == ir.induce_cochain(env, deg, &c)?));
        let basis_p = cohomology_basis(p, &trivial_module(h), deg)?;
        let basis_pp = cohomology_basis(pp, &env.unit_object, deg)?;
        let zero = basis_p.class_of(deg, &c)?.is_zero(&field);
        let zero_p = basis_pp.class_of(deg, &cp)?.is_zero(&field);
        rep.push(Check::at("class([f',f']) = F(class([f,f]))", deg, zero == zero_p));
    }
    Ok(FunctorSummary { induced_dims: pp.dims().to_vec(), report: rep })
}

/// Two pipelines for Hochschild cohomology: `Hom_{A^e}(F(P), A)` and
/// `Hom_A(P, A^ad)`, plus injectivity of `H*(A,k) → H*(A,A^ad)` induced by
/// the unit `k → A^ad`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EckmannShapiro {
    pub bimodule_side: Vec<usize>,
    pub adjoint_side: Vec<usize>,
    pub report: Report,
}

pub fn eckmann_shapiro_check(env: &Envelope, p: &TruncatedComplex, maxdeg: usize) -> Result<EckmannShapiro> {
    let h = &env.hopf;
    let field = env.field().clone();
    let ir = induce_resolution(env, p)?;
    let hh = cohomology_basis(&ir.complex, &env.unit_object, maxdeg)?;
    let ad = adjoint_module(h);
    let had = cohomology_basis(p, &ad, maxdeg)?;
    let k = trivial_module(h);
    let hk = cohomology_basis(p, &k, maxdeg)?;
    let mut rep = Report::new("Eckmann-Shapiro");
    for i in 0..=maxdeg {
        rep.push(Check::at("dim HH^i = dim H^i(A, A^ad)", i, hh.dims()[i] == had.dims()[i]));
    }
    let unit = env.hopf.algebra().unit().clone();
    let unit_col = Matrix::column_vector(&field, crate::hopf::dense_from_sparse(&field, h.dim(), &unit));
    rep.push(Check::new("unit k → A^ad is A-linear", None, k.is_hom_to(&ad, &unit_col)));
    for i in 0..=maxdeg {
        let images: Result<Vec<Vector>> = hk.classes[i]
            .iter()
            .map(|c| {
                let img = unit_col.mul(c);
                let cocycle = i + 1 > p.top() || img.mul(&p.d(i as i64 + 1)).is_zero();
                if !cocycle {
                    return Err(Error::Certification(format!("image of a cocycle is not a cocycle in degree {i}")));
                }
                Ok(had.class_of(i, &img)?.coords)
            })
            .collect();
        let ok = match images {
            Ok(v) if v.is_empty() => true,
            Ok(v) => Matrix::from_columns(&field, had.dims()[i], &v).rank() == v.len(),
            Err(_) => false,
        };
        rep.push(Check::at("H^i(A,k) → H^i(A,A^ad) injective", i, ok));
    }
    Ok(EckmannShapiro { bimodule_side: hh.dims(), adjoint_side: had.dims(), report: rep })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::{solve_homotopy_lifting, LiftingMethod};
    use crate::hopf::taft;
    use crate::resolutions::{taft_diagonal, taft_resolution};

    fn sweedler() -> (Envelope, crate::resolutions::TaftResolution) {
        let f = Field::cyclotomic(2).unwrap();
        let h = taft(2, &f).unwrap();
        let r = taft_resolution(&h, 2, 6).unwrap();
        (Envelope::new(&h).unwrap(), r)
    }

    #[test]
    fn induced_dimensions() {
        let (env, r) = sweedler();
        let (fk, phi) = env.lemma_iso().unwrap();
        assert_eq!(fk.carrier.dim(), 4);
        assert!(fk.carrier.check_axioms().is_ok());
        assert!(phi.inverse().is_some());
        let fp = induce_module(&env, r.complex.module(1)).unwrap();
        assert_eq!(fp.carrier.dim(), 8);
        let zero = ModuleRep::zero(env.hopf.algebra());
        assert_eq!(induce_module(&env, &zero).unwrap().carrier.dim(), 0);
    }

    #[test]
    fn induce_map_functorial() {
        let (env, r) = sweedler();
        let p = &r.complex;
        let fm: Vec<_> = (0..3).map(|l| induce_module(&env, p.module(l)).unwrap()).collect();
        let d1 = induce_map(&env, &fm[1], &fm[0], &p.d(1)).unwrap();
        let d2 = induce_map(&env, &fm[2], &fm[1], &p.d(2)).unwrap();
        assert!(d1.mul(&d2).is_zero());
        assert!(fm[1].carrier.is_hom_to(&fm[0].carrier, &d1));
        let id = induce_map(&env, &fm[1], &fm[1], &Matrix::identity(env.field(), 2)).unwrap();
        assert!(id.is_identity());
        let comp = induce_map(&env, &fm[2], &fm[0], &p.d(1).mul(&p.d(2))).unwrap();
        assert_eq!(comp, d1.mul(&d2));
    }

    #[test]
    fn monoidal_and_corruption() {
        let (env, r) = sweedler();
        let p = &r.complex;
        let k = trivial_module(&env.hopf);
        assert!(verify_monoidal(&env, &k, &k, &k, false).unwrap().passed());
        let rep = verify_monoidal(&env, p.module(0), p.module(1), p.module(0), false).unwrap();
        assert!(rep.passed(), "{:?}", rep.first_failure());
        let bad = verify_monoidal(&env, p.module(0), p.module(1), p.module(0), true).unwrap();
        let fail = bad.first_failure().unwrap();
        assert!(fail.equation.starts_with("η_{X⊗Y,Z}"));
        assert!(fail.detail.is_some());
    }

    #[test]
    fn naturality_and_unit() {
        let (env, r) = sweedler();
        let p = &r.complex;
        let id0 = Matrix::identity(env.field(), 2);
        let rep = verify_naturality(&env, (p.module(1), p.module(0), &p.d(1)), (p.module(0), p.module(0), &id0)).unwrap();
        assert!(rep.passed(), "{:?}", rep.first_failure());
        assert!(verify_unit_identification(&env).unwrap().passed());
        assert!(verify_right_projectivity(&env).unwrap().passed());
    }

    #[test]
    fn transport_of_zero_and_perturbed_liftings() {
        let (env, r) = sweedler();
        let d = taft_diagonal(&r).unwrap();
        let k = trivial_module(&env.hopf);
        let b = cohomology_basis(&r.complex, &k, 4).unwrap();
        let z = Cocycle::new(&r.complex, 2, b.classes[2][0].clone()).unwrap();
        for method in [LiftingMethod::Zero, LiftingMethod::Perturbed] {
            let l = solve_homotopy_lifting(&z, &d, method, 5).unwrap();
            let s = transport_check(&env, &d, &z, &l, 4).unwrap();
            assert!(s.report.passed(), "{method:?}: {:?}", s.report.first_failure());
        }
    }

    #[test]
    fn eckmann_shapiro_sweedler() {
        let (env, r) = sweedler();
        let es = eckmann_shapiro_check(&env, &r.complex, 4).unwrap();
        assert!(es.report.passed(), "{:?}", es.report.first_failure());
        assert_eq!(es.bimodule_side, es.adjoint_side);
    }
}
