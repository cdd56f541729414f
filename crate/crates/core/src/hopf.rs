//! Finite-dimensional algebras and Hopf algebras by structure constants,
//! their modules, and Hom spaces between modules.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use once_cell::sync::{Lazy, OnceCell};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, SparseRow, SparseSystem, Vector};
use crate::scalars::{Elem, Field, FieldSpec};

/// Sparse algebra element: sorted `(basis index, coefficient)` pairs.
pub type SparseVec = Vec<(usize, Elem)>;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

pub(crate) fn sparse_from_dense(field: &Field, v: &[Elem]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, e)| !field.is_zero(e))
        .map(|(i, e)| (i, e.clone()))
        .collect()
}

pub(crate) fn dense_from_sparse(field: &Field, dim: usize, v: &SparseVec) -> Vector {
    let mut out = vec![field.zero(); dim];
    for (i, e) in v {
        out[*i] = e.clone();
    }
    out
}

/// Accumulates `scale * v` into a dense buffer.
fn axpy_dense(field: &Field, acc: &mut [Elem], scale: &Elem, v: &SparseVec) {
    for (i, e) in v {
        let t = field.mul(scale, e);
        acc[*i] = field.add(&acc[*i], &t);
    }
}

/// Sparse accumulator keyed by basis index.
pub(crate) struct SparseAcc<'a> {
    field: &'a Field,
    map: std::collections::BTreeMap<usize, Elem>,
}

impl<'a> SparseAcc<'a> {
    pub(crate) fn new(field: &'a Field) -> Self {
        SparseAcc { field, map: Default::default() }
    }

    pub(crate) fn add(&mut self, idx: usize, v: Elem) {
        match self.map.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &v);
                e.insert(s);
            }
        }
    }

    pub(crate) fn axpy(&mut self, scale: &Elem, v: &SparseVec) {
        for (i, e) in v {
            self.add(*i, self.field.mul(scale, e));
        }
    }

    pub(crate) fn finish(self) -> SparseVec {
        let f = self.field;
        self.map.into_iter().filter(|(_, e)| !f.is_zero(e)).collect()
    }
}

/// An associative unital algebra given by structure constants.
#[derive(Debug)]
pub struct AlgebraPresentation {
    id: u64,
    field: Field,
    dim: usize,
    labels: Vec<String>,
    /// `mult[a][b]` = e_a · e_b.
    mult: Vec<Vec<SparseVec>>,
    unit: SparseVec,
    /// Basis indices that generate the algebra.
    generators: Vec<usize>,
    /// For each basis element, a word in `generators` (as basis indices) whose
    /// product is exactly that basis element; the empty word is the unit.
    words: Vec<Vec<usize>>,
    left_mult: OnceCell<Vec<Matrix>>,
}

impl AlgebraPresentation {
    /// Builds an algebra with every basis element as a generator.
    pub fn new(field: &Field, labels: Vec<String>, mult: Vec<Vec<SparseVec>>, unit: SparseVec) -> Result<Self> {
        let dim = labels.len();
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("structure constants must be dim x dim".into()));
        }
        Ok(AlgebraPresentation {
            id: fresh_id(),
            field: field.clone(),
            dim,
            labels,
            mult,
            unit,
            generators: (0..dim).collect(),
            words: (0..dim).map(|a| vec![a]).collect(),
            left_mult: OnceCell::new(),
        })
    }

    /// Replaces the generating set; each word must multiply out to its basis
    /// element exactly.
    pub fn with_generators(mut self, generators: Vec<usize>, words: Vec<Vec<usize>>) -> Result<Self> {
        if words.len() != self.dim {
            return Err(Error::DimensionMismatch("one word per basis element".into()));
        }
        for (a, w) in words.iter().enumerate() {
            if w.iter().any(|g| !generators.contains(g)) {
                return Err(Error::InvalidArgument(format!("word for {} uses a non-generator", self.labels[a])));
            }
            let mut prod = self.unit.clone();
            for &g in w {
                prod = self.mul(&prod, &vec![(g, self.field.one())]);
            }
            if prod != vec![(a, self.field.one())] {
                return Err(Error::InvalidArgument(format!("word for {} does not multiply out to it", self.labels[a])));
            }
        }
        self.generators = generators;
        self.words = words;
        Ok(self)
    }

    pub fn id(&self) -> u64 {
        self.id
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    /// Index of the unit if it is itself a basis element.
    pub fn unit_index(&self) -> Option<usize> {
        match self.unit.as_slice() {
            [(i, e)] if self.field.is_one(e) => Some(*i),
            _ => None,
        }
    }

    pub fn basis_product(&self, a: usize, b: usize) -> &SparseVec {
        &self.mult[a][b]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let f = &self.field;
        let mut acc = SparseAcc::new(f);
        for (a, xa) in x {
            for (b, yb) in y {
                acc.axpy(&f.mul(xa, yb), &self.mult[*a][*b]);
            }
        }
        acc.finish()
    }

    /// Left multiplication matrices, one per basis element.
    pub fn left_mult(&self) -> &[Matrix] {
        self.left_mult.get_or_init(|| {
            (0..self.dim)
                .map(|a| {
                    let mut m = Matrix::zeros(&self.field, self.dim, self.dim);
                    for b in 0..self.dim {
                        for (c, e) in &self.mult[a][b] {
                            m.set(*c, b, e.clone());
                        }
                    }
                    m
                })
                .collect()
        })
    }

    /// Matrix of right multiplication by the element `y`.
    pub fn right_mult(&self, y: &SparseVec) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.dim, self.dim);
        for b in 0..self.dim {
            let prod = self.mul(&vec![(b, self.field.one())], y);
            for (c, e) in prod {
                m.set(c, b, e);
            }
        }
        m
    }

    pub fn left_mult_by(&self, y: &SparseVec) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.dim, self.dim);
        for b in 0..self.dim {
            let prod = self.mul(y, &vec![(b, self.field.one())]);
            for (c, e) in prod {
                m.set(c, b, e);
            }
        }
        m
    }

    pub fn check_associativity(&self) -> Result<()> {
        let one = self.field.one();
        for a in 0..self.dim {
            for b in 0..self.dim {
                let ab = &self.mult[a][b];
                for c in 0..self.dim {
                    let left = self.mul(ab, &vec![(c, one.clone())]);
                    let right = self.mul(&vec![(a, one.clone())], &self.mult[b][c]);
                    if left != right {
                        return Err(Error::Axiom(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_unit(&self) -> Result<()> {
        let one = self.field.one();
        for a in 0..self.dim {
            let e = vec![(a, one.clone())];
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::Axiom(format!("unit axiom fails on {}", self.labels[a])));
            }
        }
        Ok(())
    }

    pub fn check_axioms(&self) -> Result<()> {
        self.check_associativity()?;
        self.check_unit()
    }

    /// The opposite algebra; words are reversed.
    pub fn opposite(&self) -> AlgebraPresentation {
        let mult = (0..self.dim).map(|a| (0..self.dim).map(|b| self.mult[b][a].clone()).collect()).collect();
        AlgebraPresentation {
            id: fresh_id(),
            field: self.field.clone(),
            dim: self.dim,
            labels: self.labels.clone(),
            mult,
            unit: self.unit.clone(),
            generators: self.generators.clone(),
            words: self.words.iter().map(|w| w.iter().rev().copied().collect()).collect(),
            left_mult: OnceCell::new(),
        }
    }

    /// Tensor product algebra with basis index `a * other.dim + b`.
    pub fn tensor(&self, other: &AlgebraPresentation) -> Result<AlgebraPresentation> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.spec().to_text(), other.field.spec().to_text()));
        }
        let f = &self.field;
        let (d1, d2) = (self.dim, other.dim);
        let mut labels = Vec::with_capacity(d1 * d2);
        for a in 0..d1 {
            for b in 0..d2 {
                labels.push(format!("{}⊗{}", self.labels[a], other.labels[b]));
            }
        }
        let mut mult = vec![vec![Vec::new(); d1 * d2]; d1 * d2];
        for a in 0..d1 {
            for b in 0..d2 {
                for c in 0..d1 {
                    for d in 0..d2 {
                        mult[a * d2 + b][c * d2 + d] = sparse_tensor(f, &self.mult[a][c], &other.mult[b][d], d2);
                    }
                }
            }
        }
        let unit = sparse_tensor(f, &self.unit, &other.unit, d2);
        let alg = AlgebraPresentation::new(f, labels, mult, unit)?;
        match (self.unit_index(), other.unit_index()) {
            (Some(u1), Some(u2)) => {
                let mut gens: Vec<usize> = self.generators.iter().map(|&g| g * d2 + u2).collect();
                gens.extend(other.generators.iter().map(|&h| u1 * d2 + h));
                let mut words = Vec::with_capacity(d1 * d2);
                for a in 0..d1 {
                    for b in 0..d2 {
                        let mut w: Vec<usize> = self.words[a].iter().map(|&g| g * d2 + u2).collect();
                        w.extend(other.words[b].iter().map(|&h| u1 * d2 + h));
                        words.push(w);
                    }
                }
                alg.with_generators(gens, words)
            }
            _ => Ok(alg),
        }
    }

    /// The left regular module.
    pub fn regular_module(self: &Arc<Self>) -> ModuleRep {
        ModuleRep::from_basis_actions(self, self.dim, self.left_mult().to_vec()).expect("regular module")
    }
}

/// Tensor of two sparse vectors, index `i * d2 + j`.
pub(crate) fn sparse_tensor(f: &Field, x: &SparseVec, y: &SparseVec, d2: usize) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for (i, a) in x {
        for (j, b) in y {
            out.push((i * d2 + j, f.mul(a, b)));
        }
    }
    out.sort_by_key(|e| e.0);
    out
}

/// A Hopf algebra: an algebra with coproduct, counit, antipode and the
/// inverse of the antipode.
#[derive(Debug, Clone)]
pub struct HopfStructure {
    algebra: Arc<AlgebraPresentation>,
    /// Δ(e_a) in A⊗A, index `b * dim + c`.
    coproduct: Vec<SparseVec>,
    counit: Vector,
    antipode: Vec<SparseVec>,
    antipode_inverse: Vec<SparseVec>,
}

impl HopfStructure {
    /// Assembles a Hopf structure, computing S⁻¹, and checks every axiom.
    pub fn new(algebra: AlgebraPresentation, coproduct: Vec<SparseVec>, counit: Vector, antipode: Vec<SparseVec>) -> Result<Self> {
        let h = Self::assemble(algebra, coproduct, counit, antipode)?;
        h.check_axioms()?;
        Ok(h)
    }

    fn assemble(algebra: AlgebraPresentation, coproduct: Vec<SparseVec>, counit: Vector, antipode: Vec<SparseVec>) -> Result<Self> {
        let dim = algebra.dim();
        if coproduct.len() != dim || counit.len() != dim || antipode.len() != dim {
            return Err(Error::DimensionMismatch("Hopf data must have one entry per basis element".into()));
        }
        let f = algebra.field().clone();
        let s = Matrix::from_columns(&f, dim, &antipode.iter().map(|v| dense_from_sparse(&f, dim, v)).collect::<Vec<_>>());
        let sinv = s.inverse().ok_or_else(|| Error::Axiom("antipode is not bijective".into()))?;
        let antipode_inverse = (0..dim).map(|a| sparse_from_dense(&f, &sinv.column(a))).collect();
        Ok(HopfStructure { algebra: Arc::new(algebra), coproduct, counit, antipode, antipode_inverse })
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }
    pub fn field(&self) -> &Field {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
    pub fn coproduct(&self, a: usize) -> &SparseVec {
        &self.coproduct[a]
    }
    pub fn counit(&self) -> &Vector {
        &self.counit
    }
    pub fn antipode(&self, a: usize) -> &SparseVec {
        &self.antipode[a]
    }
    pub fn antipode_inverse(&self, a: usize) -> &SparseVec {
        &self.antipode_inverse[a]
    }

    pub fn coproduct_matrix(&self) -> Matrix {
        let d = self.dim();
        let f = self.field();
        Matrix::from_columns(f, d * d, &self.coproduct.iter().map(|v| dense_from_sparse(f, d * d, v)).collect::<Vec<_>>())
    }

    pub fn antipode_matrix(&self) -> Matrix {
        let d = self.dim();
        let f = self.field();
        Matrix::from_columns(f, d, &self.antipode.iter().map(|v| dense_from_sparse(f, d, v)).collect::<Vec<_>>())
    }

    fn apply_linear(&self, map: &[SparseVec], x: &SparseVec) -> SparseVec {
        let f = self.field();
        let mut acc = vec![f.zero(); self.dim()];
        for (a, c) in x {
            axpy_dense(f, &mut acc, c, &map[*a]);
        }
        sparse_from_dense(f, &acc)
    }

    pub fn apply_antipode(&self, x: &SparseVec) -> SparseVec {
        self.apply_linear(&self.antipode, x)
    }

    pub fn apply_counit(&self, x: &SparseVec) -> Elem {
        let f = self.field();
        let mut acc = f.zero();
        for (a, c) in x {
            acc = f.add(&acc, &f.mul(c, &self.counit[*a]));
        }
        acc
    }

    /// Δ of an arbitrary element.
    pub fn apply_coproduct(&self, x: &SparseVec) -> SparseVec {
        let f = self.field();
        let mut acc = SparseAcc::new(f);
        for (a, c) in x {
            acc.axpy(c, &self.coproduct[*a]);
        }
        acc.finish()
    }

    /// Multiplication in A⊗A.
    pub fn tensor_mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let f = self.field();
        HopfScratch { alg: &self.algebra, d: self.dim() }.tensor_mul(f, x, y)
    }

    pub fn check_axioms(&self) -> Result<()> {
        let alg = &self.algebra;
        alg.check_axioms()?;
        let f = self.field().clone();
        let d = self.dim();
        let one = f.one();
        let labels = alg.labels();
        for a in 0..d {
            let da = &self.coproduct[a];
            // Coassociativity.
            let mut left = SparseAcc::new(&f);
            let mut right = SparseAcc::new(&f);
            for (idx, c) in da {
                let (x, y) = (idx / d, idx % d);
                for (j, e) in &self.coproduct[x] {
                    left.add(j * d + y, f.mul(c, e));
                }
                for (j, e) in &self.coproduct[y] {
                    right.add(x * d * d + j, f.mul(c, e));
                }
            }
            if left.finish() != right.finish() {
                return Err(Error::Axiom(format!("coassociativity fails on {}", labels[a])));
            }
            // Counit and antipode.
            let mut eps_left = vec![f.zero(); d];
            let mut eps_right = vec![f.zero(); d];
            let mut s_left = vec![f.zero(); d];
            let mut s_right = vec![f.zero(); d];
            for (idx, c) in da {
                let (x, y) = (idx / d, idx % d);
                eps_left[y] = f.add(&eps_left[y], &f.mul(c, &self.counit[x]));
                eps_right[x] = f.add(&eps_right[x], &f.mul(c, &self.counit[y]));
                let sl = alg.mul(&self.antipode[x], &vec![(y, one.clone())]);
                axpy_dense(&f, &mut s_left, c, &sl);
                let sr = alg.mul(&vec![(x, one.clone())], &self.antipode[y]);
                axpy_dense(&f, &mut s_right, c, &sr);
            }
            let ea = dense_from_sparse(&f, d, &vec![(a, one.clone())]);
            if eps_left != ea || eps_right != ea {
                return Err(Error::Axiom(format!("counit axiom fails on {}", labels[a])));
            }
            let mut expect = vec![f.zero(); d];
            axpy_dense(&f, &mut expect, &self.counit[a], alg.unit());
            if s_left != expect || s_right != expect {
                return Err(Error::Axiom(format!("antipode axiom fails on {}", labels[a])));
            }
            // S ∘ S⁻¹ = id.
            if self.apply_antipode(&self.antipode_inverse[a]) != vec![(a, one.clone())] {
                return Err(Error::Axiom(format!("S∘S⁻¹ ≠ id on {}", labels[a])));
            }
        }
        // Δ and ε are algebra maps.
        let unit_tensor = sparse_tensor(&f, alg.unit(), alg.unit(), d);
        if self.apply_coproduct(alg.unit()) != unit_tensor {
            return Err(Error::Axiom("Δ(1) ≠ 1⊗1".into()));
        }
        if !f.is_one(&self.apply_counit(alg.unit())) {
            return Err(Error::Axiom("ε(1) ≠ 1".into()));
        }
        for a in 0..d {
            for b in 0..d {
                let ab = alg.basis_product(a, b);
                if self.apply_coproduct(ab) != self.tensor_mul(&self.coproduct[a], &self.coproduct[b]) {
                    return Err(Error::Axiom(format!("Δ not multiplicative on ({}, {})", labels[a], labels[b])));
                }
                if self.apply_counit(ab) != f.mul(&self.counit[a], &self.counit[b]) {
                    return Err(Error::Axiom(format!("ε not multiplicative on ({}, {})", labels[a], labels[b])));
                }
            }
        }
        Ok(())
    }

    /// τ∘Δ = Δ.
    pub fn is_cocommutative(&self) -> bool {
        let d = self.dim();
        self.coproduct.iter().all(|v| {
            let mut swapped: SparseVec = v.iter().map(|(i, c)| ((i % d) * d + i / d, c.clone())).collect();
            swapped.sort_by_key(|e| e.0);
            &swapped == v
        })
    }

    /// Componentwise Hopf structure on A₁⊗A₂.
    pub fn tensor(&self, other: &HopfStructure) -> Result<HopfStructure> {
        let alg = self.algebra.tensor(&other.algebra)?;
        let f = self.field().clone();
        let (d1, d2) = (self.dim(), other.dim());
        let d = d1 * d2;
        let mut coproduct = Vec::with_capacity(d);
        let mut antipode = Vec::with_capacity(d);
        let mut counit = Vec::with_capacity(d);
        for a in 0..d1 {
            for b in 0..d2 {
                let mut terms = Vec::new();
                for (i, x) in &self.coproduct[a] {
                    let (a1, a2) = (i / d1, i % d1);
                    for (j, y) in &other.coproduct[b] {
                        let (b1, b2) = (j / d2, j % d2);
                        terms.push(((a1 * d2 + b1) * d + (a2 * d2 + b2), f.mul(x, y)));
                    }
                }
                terms.sort_by_key(|e| e.0);
                coproduct.push(terms);
                antipode.push(sparse_tensor(&f, &self.antipode[a], &other.antipode[b], d2));
                counit.push(f.mul(&self.counit[a], &other.counit[b]));
            }
        }
        // The axioms are inherited from the (already checked) factors.
        HopfStructure::assemble(alg, coproduct, counit, antipode)
    }

    /// Structural equality of the Hopf data (same basis order).
    pub fn same_structure(&self, other: &HopfStructure) -> bool {
        self.dim() == other.dim()
            && self.field() == other.field()
            && (0..self.dim()).all(|a| (0..self.dim()).all(|b| self.algebra.basis_product(a, b) == other.algebra.basis_product(a, b)))
            && self.coproduct == other.coproduct
            && self.counit == other.counit
            && self.antipode == other.antipode
    }
}

fn taft_label(i: usize, j: usize) -> String {
    let x = match i {
        0 => String::new(),
        1 => "x".into(),
        _ => format!("x^{i}"),
    };
    let g = match j {
        0 => String::new(),
        1 => "g".into(),
        _ => format!("g^{j}"),
    };
    if i == 0 && j == 0 {
        "1".into()
    } else {
        format!("{x}{g}")
    }
}

/// The primitive n-th root of unity ω^(N/n) inside a field whose designated
/// root has order N.
pub fn root_of_order(field: &Field, n: u32) -> Result<Elem> {
    let big = field.root_order();
    if n == 0 || big % n != 0 {
        return Err(Error::InvalidField(format!(
            "field {} has no designated primitive {n}-th root of unity",
            field.spec().to_text()
        )));
    }
    Ok(field.omega_pow((big / n) as i64))
}

/// The Taft algebra T_n: basis x^i g^j (index i*n + j) with gx = ωxg,
/// xⁿ = 0, gⁿ = 1, Δ(x) = x⊗1 + g⊗x, Δ(g) = g⊗g, S(x) = -g⁻¹x, S(g) = g⁻¹.
pub fn taft(n: u32, field: &Field) -> Result<HopfStructure> {
    if n < 2 {
        return Err(Error::InvalidArgument("Taft algebras need n ≥ 2".into()));
    }
    let p = field.characteristic();
    if p != 0 && p % n as u64 == 0 {
        return Err(Error::InvalidField(format!("characteristic {p} divides {n}")));
    }
    let w = root_of_order(field, n)?;
    let f = field;
    let n = n as usize;
    let idx = |i: usize, j: usize| i * n + j;
    let labels = (0..n).flat_map(|i| (0..n).map(move |j| taft_label(i, j))).collect();
    let mut mult = vec![vec![Vec::new(); n * n]; n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if i + k < n {
                        // g^j x^k = ω^(jk) x^k g^j
                        let c = f.pow(&w, (j * k) as u64);
                        mult[idx(i, j)][idx(k, l)] = vec![(idx(i + k, (j + l) % n), c)];
                    }
                }
            }
        }
    }
    let one = f.one();
    let unit = vec![(0, one.clone())];
    let (x, g) = (idx(1, 0), idx(0, 1));
    let words = (0..n)
        .flat_map(|i| (0..n).map(move |j| std::iter::repeat(x).take(i).chain(std::iter::repeat(g).take(j)).collect()))
        .collect();
    let alg = AlgebraPresentation::new(f, labels, mult, unit.clone())?.with_generators(vec![x, g], words)?;

    // Δ, S, ε on generators, extended (anti)multiplicatively.
    let d = n * n;
    let e = |a: usize| vec![(a, one.clone())];
    let mut delta_x = vec![(x * d, one.clone()), (g * d + x, one.clone())];
    delta_x.sort_by_key(|t| t.0);
    let delta_g = vec![(g * d + g, one.clone())];
    let g_inv = idx(0, n - 1);
    let s_g = e(g_inv);
    let s_x = alg.mul(&e(g_inv), &e(x)).into_iter().map(|(i, c)| (i, f.neg(&c))).collect::<SparseVec>();

    let probe = HopfScratch { alg: &alg, d };
    let mut coproduct = Vec::with_capacity(d);
    let mut antipode = Vec::with_capacity(d);
    let mut counit = Vec::with_capacity(d);
    for i in 0..n {
        for j in 0..n {
            let mut dl = sparse_tensor(f, &unit, &unit, d);
            let mut sl = unit.clone();
            for _ in 0..i {
                dl = probe.tensor_mul(f, &dl, &delta_x);
            }
            for _ in 0..j {
                dl = probe.tensor_mul(f, &dl, &delta_g);
                sl = alg.mul(&s_g, &sl);
            }
            // S(x^i g^j) = S(g)^j S(x)^i
            for _ in 0..i {
                sl = alg.mul(&sl, &s_x);
            }
            coproduct.push(dl);
            antipode.push(sl);
            counit.push(if i == 0 { one.clone() } else { f.zero() });
        }
    }
    HopfStructure::new(alg, coproduct, counit, antipode)
}

struct HopfScratch<'a> {
    alg: &'a AlgebraPresentation,
    d: usize,
}

impl HopfScratch<'_> {
    fn tensor_mul(&self, f: &Field, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let d = self.d;
        let mut acc = SparseAcc::new(f);
        for (i, a) in x {
            for (j, b) in y {
                let left = self.alg.basis_product(i / d, j / d);
                let right = self.alg.basis_product(i % d, j % d);
                let s = f.mul(a, b);
                for (p, u) in left {
                    for (q, v) in right {
                        acc.add(p * d + q, f.mul(&s, &f.mul(u, v)));
                    }
                }
            }
        }
        acc.finish()
    }
}

/// k[Z/p] over a field of characteristic p, in the basis u^i with u = t - 1,
/// so u^p = 0, Δ(u) = u⊗1 + 1⊗u + u⊗u, S(u) = (1+u)^(p-1) - 1.
pub fn group_algebra_zp(p: u32, field: &Field) -> Result<HopfStructure> {
    if field.characteristic() != p as u64 {
        return Err(Error::InvalidField(format!(
            "the u = t-1 presentation of k[Z/{p}] needs characteristic {p}, field is {}",
            field.spec().to_text()
        )));
    }
    let f = field;
    let n = p as usize;
    let one = f.one();
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "u".to_string(),
            _ => format!("u^{i}"),
        })
        .collect();
    let mut mult = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                mult[i][j] = vec![(i + j, one.clone())];
            }
        }
    }
    let unit = vec![(0, one.clone())];
    let words = (0..n).map(|i| vec![1; i]).collect();
    let alg = AlgebraPresentation::new(f, labels, mult, unit.clone())?.with_generators(vec![1], words)?;
    let d = n;
    let scratch = HopfScratch { alg: &alg, d };
    let delta_u = vec![(1, one.clone()), (d, one.clone()), (d + 1, one.clone())];
    let t = vec![(0, one.clone()), (1, one.clone())];
    let mut t_pow = unit.clone();
    for _ in 0..n - 1 {
        t_pow = alg.mul(&t_pow, &t);
    }
    let mut s_u = t_pow;
    let mut found = false;
    for e in s_u.iter_mut() {
        if e.0 == 0 {
            e.1 = f.sub(&e.1, &one);
            found = true;
        }
    }
    if !found {
        s_u.insert(0, (0, f.neg(&one)));
    }
    s_u.retain(|(_, c)| !f.is_zero(c));
    let mut coproduct = Vec::with_capacity(n);
    let mut antipode = Vec::with_capacity(n);
    let mut counit = Vec::with_capacity(n);
    let mut dl = sparse_tensor(f, &unit, &unit, d);
    let mut sl = unit.clone();
    for i in 0..n {
        coproduct.push(dl.clone());
        antipode.push(sl.clone());
        counit.push(if i == 0 { one.clone() } else { f.zero() });
        dl = scratch.tensor_mul(f, &dl, &delta_u);
        sl = alg.mul(&sl, &s_u);
    }
    HopfStructure::new(alg, coproduct, counit, antipode)
}

/// Iterated tensor product T_{n1} ⊗ … ⊗ T_{nr}.
pub fn taft_tensor(ns: &[u32], field: &Field) -> Result<HopfStructure> {
    let (first, rest) = ns.split_first().ok_or_else(|| Error::InvalidArgument("empty Taft list".into()))?;
    let mut h = taft(*first, field)?;
    for &n in rest {
        h = h.tensor(&taft(n, field)?)?;
    }
    Ok(h)
}

/// A^e = A ⊗ A^op with (a⊗b)(c⊗d) = ac ⊗ db.
pub fn enveloping(h: &HopfStructure) -> Result<AlgebraPresentation> {
    let alg = h.algebra();
    let mut env = alg.tensor(&alg.opposite())?;
    env.labels = (0..alg.dim())
        .flat_map(|a| (0..alg.dim()).map(move |b| (a, b)))
        .map(|(a, b)| format!("{}⊗{}", alg.labels()[a], alg.labels()[b]))
        .collect();
    Ok(env)
}

/// The algebra embedding δ(a) = Σ a₁ ⊗ S(a₂) of A into A^e.
#[derive(Debug, Clone)]
pub struct DeltaEmbedding {
    /// δ(e_a) in A^e coordinates.
    pub images: Vec<SparseVec>,
}

impl DeltaEmbedding {
    pub fn apply(&self, field: &Field, x: &SparseVec, env_dim: usize) -> SparseVec {
        let _ = env_dim;
        let mut acc = SparseAcc::new(field);
        for (a, c) in x {
            acc.axpy(c, &self.images[*a]);
        }
        acc.finish()
    }

    pub fn matrix(&self, field: &Field, env_dim: usize) -> Matrix {
        Matrix::from_columns(field, env_dim, &self.images.iter().map(|v| dense_from_sparse(field, env_dim, v)).collect::<Vec<_>>())
    }
}

pub fn delta_embed(h: &HopfStructure) -> DeltaEmbedding {
    let f = h.field();
    let d = h.dim();
    let images = (0..d)
        .map(|a| {
            let mut acc = SparseAcc::new(f);
            for (idx, c) in h.coproduct(a) {
                let (x, y) = (idx / d, idx % d);
                for (s, e) in h.antipode(y) {
                    acc.add(x * d + s, f.mul(c, e));
                }
            }
            acc.finish()
        })
        .collect();
    DeltaEmbedding { images }
}

/// Checks that δ is an injective algebra homomorphism into `env`.
pub fn verify_delta_embedding(h: &HopfStructure, env: &AlgebraPresentation, delta: &DeltaEmbedding) -> Result<()> {
    let f = h.field();
    let d = h.dim();
    let alg = h.algebra();
    if delta.apply(f, alg.unit(), env.dim()) != *env.unit() {
        return Err(Error::Axiom("δ(1) ≠ 1⊗1".into()));
    }
    for a in 0..d {
        for b in 0..d {
            let lhs = delta.apply(f, alg.basis_product(a, b), env.dim());
            let rhs = env.mul(&delta.images[a], &delta.images[b]);
            if lhs != rhs {
                return Err(Error::Axiom(format!("δ not multiplicative on ({}, {})", alg.labels()[a], alg.labels()[b])));
            }
        }
    }
    if delta.matrix(f, env.dim()).rank() != d {
        return Err(Error::Axiom("δ is not injective".into()));
    }
    Ok(())
}

/// A finite-dimensional left module: one action matrix per algebra
/// generator, expanded lazily to one per basis element.
#[derive(Debug, Clone)]
pub struct ModuleRep {
    id: u64,
    algebra: Arc<AlgebraPresentation>,
    dim: usize,
    gens: Vec<Matrix>,
    full: OnceCell<Arc<Vec<Matrix>>>,
}

impl ModuleRep {
    /// From actions of the algebra's generators (in `algebra.generators()` order).
    pub fn from_generator_actions(algebra: &Arc<AlgebraPresentation>, dim: usize, gens: Vec<Matrix>) -> Result<ModuleRep> {
        if gens.len() != algebra.generators().len() || gens.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::DimensionMismatch("generator actions must be dim x dim, one per generator".into()));
        }
        Ok(ModuleRep { id: fresh_id(), algebra: algebra.clone(), dim, gens, full: OnceCell::new() })
    }

    /// From actions of every basis element.
    pub fn from_basis_actions(algebra: &Arc<AlgebraPresentation>, dim: usize, actions: Vec<Matrix>) -> Result<ModuleRep> {
        if actions.len() != algebra.dim() || actions.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::DimensionMismatch("one dim x dim action per basis element".into()));
        }
        let gens = algebra.generators().iter().map(|&g| actions[g].clone()).collect();
        let full = OnceCell::new();
        let _ = full.set(Arc::new(actions));
        Ok(ModuleRep { id: fresh_id(), algebra: algebra.clone(), dim, gens, full })
    }

    pub fn zero(algebra: &Arc<AlgebraPresentation>) -> ModuleRep {
        let f = algebra.field();
        let gens = algebra.generators().iter().map(|_| Matrix::zeros(f, 0, 0)).collect();
        ModuleRep { id: fresh_id(), algebra: algebra.clone(), dim: 0, gens, full: OnceCell::new() }
    }

    pub fn id(&self) -> u64 {
        self.id
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }
    pub fn field(&self) -> &Field {
        self.algebra.field()
    }
    pub fn generator_actions(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn actions(&self) -> &[Matrix] {
        self.full.get_or_init(|| {
            let f = self.field();
            let gen_pos: HashMap<usize, usize> = self.algebra.generators().iter().enumerate().map(|(k, &g)| (g, k)).collect();
            Arc::new(
                self.algebra
                    .words()
                    .iter()
                    .map(|w| {
                        let mut m = Matrix::identity(f, self.dim);
                        for g in w {
                            m = m.mul(&self.gens[gen_pos[g]]);
                        }
                        m
                    })
                    .collect(),
            )
        })
    }

    pub fn action(&self, a: usize) -> &Matrix {
        &self.actions()[a]
    }

    /// Action of an arbitrary algebra element.
    pub fn action_of(&self, x: &SparseVec) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (a, c) in x {
            m = m.add(&self.action(*a).scale(c));
        }
        m
    }

    pub fn same_algebra(&self, other: &ModuleRep) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra.id() == other.algebra.id()
    }

    /// ρ(a)ρ(b) = ρ(ab) on all basis pairs and ρ(1) = id.
    pub fn check_axioms(&self) -> Result<()> {
        let alg = &self.algebra;
        let f = self.field();
        if !self.action_of(alg.unit()).is_identity() && self.dim > 0 {
            return Err(Error::Axiom("unit does not act as identity".into()));
        }
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let lhs = self.action(a).mul(self.action(b));
                let rhs = self.action_of(alg.basis_product(a, b));
                if lhs != rhs {
                    return Err(Error::Axiom(format!(
                        "module action not multiplicative on ({}, {}) over {}",
                        alg.labels()[a],
                        alg.labels()[b],
                        f.spec().to_text()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Is `t` (dim other × dim self) a module map self → other?
    pub fn is_hom_to(&self, other: &ModuleRep, t: &Matrix) -> bool {
        t.shape() == (other.dim, self.dim)
            && self.gens.iter().zip(&other.gens).all(|(a, b)| t.mul(a) == b.mul(t))
    }

    pub fn direct_sum(parts: &[&ModuleRep]) -> Result<ModuleRep> {
        let first = parts.first().ok_or_else(|| Error::InvalidArgument("empty direct sum".into()))?;
        if parts.iter().any(|p| !p.same_algebra(first)) {
            return Err(Error::AlgebraMismatch("direct sum of modules over different algebras".into()));
        }
        let f = first.field();
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let gens = (0..first.gens.len())
            .map(|k| {
                let mut m = Matrix::zeros(f, dim, dim);
                let mut off = 0;
                for p in parts {
                    m.set_block(off, off, &p.gens[k]);
                    off += p.dim;
                }
                m
            })
            .collect();
        ModuleRep::from_generator_actions(&first.algebra, dim, gens)
    }

    /// External tensor product over `product` = self.algebra ⊗ other.algebra.
    pub fn outer_tensor(&self, other: &ModuleRep, product: &Arc<AlgebraPresentation>) -> Result<ModuleRep> {
        let (g1, g2) = (self.algebra.generators().len(), other.algebra.generators().len());
        if product.generators().len() != g1 + g2 || product.dim() != self.algebra.dim() * other.algebra.dim() {
            return Err(Error::AlgebraMismatch("product algebra does not match factors".into()));
        }
        let f = self.field();
        let mut gens = Vec::with_capacity(g1 + g2);
        for m in &self.gens {
            gens.push(m.kron(&Matrix::identity(f, other.dim)));
        }
        for m in &other.gens {
            gens.push(Matrix::identity(f, self.dim).kron(m));
        }
        ModuleRep::from_generator_actions(product, self.dim * other.dim, gens)
    }
}

/// The trivial module k, a·1 = ε(a).
pub fn trivial_module(h: &HopfStructure) -> ModuleRep {
    let f = h.field();
    let actions = h.counit().iter().map(|e| Matrix::from_fn(f, 1, 1, |_, _| e.clone())).collect();
    ModuleRep::from_basis_actions(h.algebra(), 1, actions).expect("trivial module")
}

/// A^ad: a·b = Σ a₁ b S(a₂).
pub fn adjoint_module(h: &HopfStructure) -> ModuleRep {
    let f = h.field();
    let d = h.dim();
    let alg = h.algebra();
    let one = f.one();
    let actions = (0..d)
        .map(|a| {
            let mut m = Matrix::zeros(f, d, d);
            for b in 0..d {
                let mut acc = vec![f.zero(); d];
                for (idx, c) in h.coproduct(a) {
                    let (x, y) = (idx / d, idx % d);
                    let xb = alg.mul(&vec![(x, one.clone())], &vec![(b, one.clone())]);
                    let prod = alg.mul(&xb, h.antipode(y));
                    axpy_dense(f, &mut acc, c, &prod);
                }
                for (r, v) in acc.into_iter().enumerate() {
                    m.set(r, b, v);
                }
            }
            m
        })
        .collect();
    ModuleRep::from_basis_actions(alg, d, actions).expect("adjoint module")
}

/// M ⊗ N with the diagonal action through Δ.
pub fn tensor_modules(h: &HopfStructure, m: &ModuleRep, n: &ModuleRep) -> Result<ModuleRep> {
    if !Arc::ptr_eq(m.algebra(), h.algebra()) || !Arc::ptr_eq(n.algebra(), h.algebra()) {
        return Err(Error::AlgebraMismatch("tensor of modules over a different algebra".into()));
    }
    let f = h.field();
    let d = h.dim();
    let dim = m.dim() * n.dim();
    let gens = h
        .algebra()
        .generators()
        .iter()
        .map(|&g| {
            let mut acc = Matrix::zeros(f, dim, dim);
            for (idx, c) in h.coproduct(g) {
                acc = acc.add(&m.action(idx / d).kron(n.action(idx % d)).scale(c));
            }
            acc
        })
        .collect();
    ModuleRep::from_generator_actions(h.algebra(), dim, gens)
}

/// A basis of Hom_A(M, N) as N.dim × M.dim matrices. Coordinates of a
/// member are its entries at `free` (row-major flat positions).
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub src_dim: usize,
    pub tgt_dim: usize,
    pub basis: Vec<Matrix>,
    free: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combine(&self, field: &Field, coords: &[Elem]) -> Matrix {
        let mut m = Matrix::zeros(field, self.tgt_dim, self.src_dim);
        for (b, c) in self.basis.iter().zip(coords) {
            if !field.is_zero(c) {
                m = m.add(&b.scale(c));
            }
        }
        m
    }

    /// Coordinates of `t`, or `None` if `t` is not in the space.
    pub fn coordinates(&self, field: &Field, t: &Matrix) -> Option<Vector> {
        if t.shape() != (self.tgt_dim, self.src_dim) {
            return None;
        }
        let coords: Vector = self.free.iter().map(|&p| t.as_slice()[p].clone()).collect();
        (self.combine(field, &coords) == *t).then_some(coords)
    }
}

static HOM_CACHE: Lazy<Mutex<HashMap<(u64, u64), Arc<HomSpace>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Hom_A(M, N): all T with T·ρ_M(a) = ρ_N(a)·T for every generator a,
/// computed as one kernel.
pub fn hom_space(m: &ModuleRep, n: &ModuleRep) -> Result<Arc<HomSpace>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch("Hom between modules over different algebras".into()));
    }
    let key = (m.id(), n.id());
    if let Some(h) = HOM_CACHE.lock().unwrap().get(&key) {
        return Ok(h.clone());
    }
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    // Unknown T[i][k] at flat index i*dm + k.
    let mut sys = SparseSystem::new(f, dn * dm, 0);
    for (rm, rn) in m.generator_actions().iter().zip(n.generator_actions()) {
        let rm_cols: Vec<SparseRow> = (0..dm)
            .map(|j| (0..dm).filter_map(|k| {
                let v = rm.get(k, j);
                (!f.is_zero(v)).then(|| (k, v.clone()))
            }).collect())
            .collect();
        let rn_rows = rn.sparse_rows();
        for i in 0..dn {
            for j in 0..dm {
                let mut row: SparseRow = Vec::new();
                for (k, v) in &rm_cols[j] {
                    row.push((i * dm + k, v.clone()));
                }
                for (k, v) in &rn_rows[i] {
                    row.push((k * dm + j, f.neg(v)));
                }
                sys.push(row, Vec::new());
            }
        }
    }
    let (vecs, free) = sys.kernel();
    let basis = vecs
        .into_iter()
        .map(|v| Matrix::from_rows(f, v.chunks(dm.max(1)).take(dn).map(|c| c.to_vec()).collect()).map(|mm| {
            if dm == 0 { Matrix::zeros(f, dn, 0) } else { mm }
        }))
        .collect::<Result<Vec<_>>>()?;
    let basis = basis.into_iter().map(|b| if b.shape() == (dn, dm) { b } else { Matrix::zeros(f, dn, dm) }).collect();
    let hs = Arc::new(HomSpace { src_dim: dm, tgt_dim: dn, basis, free });
    HOM_CACHE.lock().unwrap().insert(key, hs.clone());
    Ok(hs)
}

/// JSON presentation of a Hopf algebra; scalars in text form.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct HopfDocument {
    #[serde(rename = "field")]
    pub spec: FieldSpec,
    pub dim: usize,
    pub labels: Vec<String>,
    /// `mult[a][b][c]`: coefficient of e_c in e_a e_b.
    pub mult: Vec<Vec<Vec<String>>>,
    /// `coproduct[a][b * dim + c]`: coefficient of e_b⊗e_c in Δ(e_a).
    pub coproduct: Vec<Vec<String>>,
    pub counit: Vec<String>,
    /// `antipode[a][b]`: coefficient of e_b in S(e_a).
    pub antipode: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
}

impl HopfDocument {
    pub fn from_hopf(h: &HopfStructure) -> HopfDocument {
        let f = h.field();
        let d = h.dim();
        let alg = h.algebra();
        let fmt_dense = |v: &SparseVec, len: usize| dense_from_sparse(f, len, v).iter().map(|e| f.format(e)).collect::<Vec<_>>();
        HopfDocument {
            spec: f.spec().clone(),
            dim: d,
            labels: alg.labels().to_vec(),
            mult: (0..d).map(|a| (0..d).map(|b| fmt_dense(alg.basis_product(a, b), d)).collect()).collect(),
            coproduct: (0..d).map(|a| fmt_dense(h.coproduct(a), d * d)).collect(),
            counit: h.counit().iter().map(|e| f.format(e)).collect(),
            antipode: (0..d).map(|a| fmt_dense(h.antipode(a), d)).collect(),
            unit: Some(fmt_dense(alg.unit(), d)),
        }
    }

    pub fn to_hopf(&self) -> Result<HopfStructure> {
        let f = Field::new(self.spec.clone());
        let d = self.dim;
        let parse_vec = |v: &[String], len: usize| -> Result<SparseVec> {
            if v.len() != len {
                return Err(Error::DimensionMismatch(format!("expected {len} entries, got {}", v.len())));
            }
            let dense = v.iter().map(|s| f.parse(s)).collect::<Result<Vec<_>>>()?;
            Ok(sparse_from_dense(&f, &dense))
        };
        if self.labels.len() != d || self.mult.len() != d {
            return Err(Error::DimensionMismatch("labels/mult do not match dim".into()));
        }
        let mult = self
            .mult
            .iter()
            .map(|row| {
                if row.len() != d {
                    return Err(Error::DimensionMismatch("mult row length".into()));
                }
                row.iter().map(|v| parse_vec(v, d)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let unit = match &self.unit {
            Some(u) => parse_vec(u, d)?,
            None => find_unit(&f, d, &mult)?,
        };
        let alg = AlgebraPresentation::new(&f, self.labels.clone(), mult, unit)?;
        let coproduct = self.coproduct.iter().map(|v| parse_vec(v, d * d)).collect::<Result<Vec<_>>>()?;
        let counit = self.counit.iter().map(|s| f.parse(s)).collect::<Result<Vec<_>>>()?;
        let antipode = self.antipode.iter().map(|v| parse_vec(v, d)).collect::<Result<Vec<_>>>()?;
        HopfStructure::new(alg, coproduct, counit, antipode)
    }
}

/// Solves u·e_b = e_b for all b.
fn find_unit(f: &Field, d: usize, mult: &[Vec<SparseVec>]) -> Result<SparseVec> {
    let mut sys = SparseSystem::new(f, d, 1);
    for b in 0..d {
        for c in 0..d {
            let lhs: SparseRow = (0..d)
                .filter_map(|a| mult[a][b].iter().find(|(i, _)| *i == c).map(|(_, v)| (a, v.clone())))
                .collect();
            let rhs = if b == c { vec![(0, f.one())] } else { Vec::new() };
            sys.push(lhs, rhs);
        }
    }
    let sol = sys.solve().ok_or_else(|| Error::Axiom("algebra has no left unit".into()))?;
    Ok(sparse_from_dense(f, &sol[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(f: &Field, a: usize) -> SparseVec {
        vec![(a, f.one())]
    }

    #[test]
    fn sweedler_relations() {
        let f = Field::cyclotomic(2).unwrap();
        let h = taft(2, &f).unwrap();
        assert_eq!(h.dim(), 4);
        let alg = h.algebra();
        // gx = -xg ; index x = 2, g = 1, xg = 3
        let gx = alg.mul(&e(&f, 1), &e(&f, 2));
        assert_eq!(gx, vec![(3, f.from_i64(-1))]);
        assert!(alg.mul(&e(&f, 2), &e(&f, 2)).is_empty());
    }

    #[test]
    fn taft_nilpotency_and_coproduct() {
        let f = Field::cyclotomic(3).unwrap();
        let h = taft(3, &f).unwrap();
        let alg = h.algebra();
        let x = 3;
        let x2 = 6;
        assert!(alg.mul(&e(&f, x), &e(&f, x2)).is_empty());
        // Δ(xg) = xg⊗g + g²⊗xg
        let d = 9;
        let (g, g2, xg) = (1, 2, 4);
        let mut expect = vec![(xg * d + g, f.one()), (g2 * d + xg, f.one())];
        expect.sort_by_key(|t| t.0);
        assert_eq!(h.coproduct(xg), &expect);
        // S is bijective with order dividing 2n.
        let s = h.antipode_matrix();
        let mut p = Matrix::identity(&f, 9);
        for _ in 0..6 {
            p = p.mul(&s);
        }
        assert!(p.is_identity());
    }

    #[test]
    fn taft_rejects_bad_fields() {
        assert!(taft(3, &Field::cyclotomic(4).unwrap()).is_err());
        assert!(taft(3, &Field::prime(7, 3, None).unwrap()).is_ok());
        assert!(taft(2, &Field::prime(7, 3, None).unwrap()).is_err());
    }

    #[test]
    fn trivial_module_actions() {
        let f = Field::cyclotomic(3).unwrap();
        let h = taft(3, &f).unwrap();
        let k = trivial_module(&h);
        assert!(f.is_one(k.action(1).get(0, 0)));
        assert!(f.is_zero(k.action(3).get(0, 0)));
        k.check_axioms().unwrap();
        let hom = hom_space(&k, &k).unwrap();
        assert_eq!(hom.dim(), 1);
    }

    #[test]
    fn enveloping_algebra() {
        let f = Field::cyclotomic(2).unwrap();
        let h = taft(2, &f).unwrap();
        let env = enveloping(&h).unwrap();
        assert_eq!(env.dim(), 16);
        env.check_associativity().unwrap();
        // (1⊗b)(1⊗d) = 1⊗db : b = g (1), d = x (2): db = xg (3)
        let prod = env.mul(&e(&f, 1), &e(&f, 2));
        assert_eq!(prod, vec![(3, f.one())]);
    }

    #[test]
    fn delta_embedding_values() {
        let f = Field::cyclotomic(3).unwrap();
        let h = taft(3, &f).unwrap();
        let env = enveloping(&h).unwrap();
        let delta = delta_embed(&h);
        verify_delta_embedding(&h, &env, &delta).unwrap();
        let d = 9;
        // δ(1) = 1⊗1
        assert_eq!(delta.images[0], vec![(0, f.one())]);
        // δ(g) = g ⊗ g⁻¹ = g ⊗ g²
        assert_eq!(delta.images[1], vec![(d + 2, f.one())]);
        // δ(x) = x⊗1 + g⊗S(x) = x⊗1 − g⊗g²x ; g²x = ω² x g² (index 5)
        let w2 = f.omega_pow(2);
        let mut expect = vec![(3 * d, f.one()), (d + 5, f.neg(&w2))];
        expect.sort_by_key(|t| t.0);
        assert_eq!(delta.images[3], expect);
    }

    #[test]
    fn adjoint_action() {
        let f = Field::cyclotomic(3).unwrap();
        let h = taft(3, &f).unwrap();
        let ad = adjoint_module(&h);
        ad.check_axioms().unwrap();
        // g·x = g x g⁻¹ = ω x
        let gx = ad.action(1).apply(&dense_from_sparse(&f, 9, &e(&f, 3)));
        assert_eq!(sparse_from_dense(&f, &gx), vec![(3, f.omega())]);
        // 1·b = b, a·1 = ε(a)1
        assert!(ad.action(0).is_identity());
        for a in 0..9 {
            let v = ad.action(a).apply(&dense_from_sparse(&f, 9, &e(&f, 0)));
            let mut expect = vec![f.zero(); 9];
            expect[0] = h.counit()[a].clone();
            assert_eq!(v, expect);
        }
    }

    #[test]
    fn tensor_hopf_algebras() {
        let f = Field::cyclotomic(6).unwrap();
        let t2 = taft(2, &f).unwrap();
        let t3 = taft(3, &f).unwrap();
        let p = t2.tensor(&t3).unwrap();
        assert_eq!(p.dim(), 36);
        p.check_axioms().unwrap();
        // ε(x⊗g) = 0
        assert!(f.is_zero(&p.counit()[2 * 9 + 1]));
        let t22 = t2.tensor(&t2).unwrap();
        assert_eq!(t22.dim(), 16);
        // Strict associativity of the tensor product.
        let a = t2.tensor(&t2).unwrap().tensor(&t3).unwrap();
        let b = t2.tensor(&t2.tensor(&t3).unwrap()).unwrap();
        assert!(a.same_structure(&b));
    }

    #[test]
    fn group_algebra_is_cocommutative() {
        let f = Field::prime(3, 1, None).unwrap();
        let g = group_algebra_zp(3, &f).unwrap();
        assert!(g.is_cocommutative());
        assert!(!taft(3, &Field::cyclotomic(3).unwrap()).unwrap().is_cocommutative());
        assert!(group_algebra_zp(3, &Field::cyclotomic(3).unwrap()).is_err());
    }

    #[test]
    fn hopf_document_round_trip() {
        let f = Field::cyclotomic(3).unwrap();
        let h = taft(3, &f).unwrap();
        let doc = HopfDocument::from_hopf(&h);
        let json = serde_json::to_string(&doc).unwrap();
        let back: HopfDocument = serde_json::from_str(&json).unwrap();
        let h2 = back.to_hopf().unwrap();
        assert!(h.same_structure(&h2));
        let mut no_unit = doc.clone();
        no_unit.unit = None;
        assert!(h.same_structure(&no_unit.to_hopf().unwrap()));
    }
}
