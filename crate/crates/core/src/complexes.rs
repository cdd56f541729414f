//! Truncated chain complexes of modules, graded maps between them, tensor
//! products with Koszul signs, homology, and degree-by-degree solvers for
//! chain-map lifting and null homotopies.
//!
//! Grading follows the Hom-complex convention: a graded map of degree `ℓ`
//! sends `P_i` to `Q_{i-ℓ}`, and `∂ψ = dψ - (-1)^ℓ ψd` has degree `ℓ + 1`.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::sync::Arc;

use once_cell::sync::OnceCell;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, SparseRow, SparseSystem};
use crate::hopf::{hom_space, tensor_modules, AlgebraPresentation, HomSpace, HopfStructure, ModuleRep};
use crate::report::{Check, Report};
use crate::scalars::Field;

/// Map from the degree-0 term onto the resolved module.
#[derive(Debug, Clone)]
pub struct Augmentation {
    pub target: ModuleRep,
    pub map: Matrix,
}

/// One summand `P_left ⊗ Q_right` of a tensor complex, at `offset` in its
/// degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub left: usize,
    pub right: usize,
    pub offset: usize,
    pub dim: usize,
}

/// How the tensor product of two complexes is made into a module.
#[derive(Debug, Clone)]
pub enum TensorMode {
    /// Same algebra on both sides, diagonal action through the coproduct.
    Inner(HopfStructure),
    /// Factors over A₁ and A₂, result over the given A₁⊗A₂.
    Outer(Arc<AlgebraPresentation>),
}

#[derive(Debug)]
struct TensorData {
    left: Arc<TruncatedComplex>,
    right: Arc<TruncatedComplex>,
    mode: TensorMode,
    blocks: Vec<Vec<Block>>,
}

/// `P_0 ← P_1 ← … ← P_N` with an optional augmentation. When `tail_zero`
/// is set the complex is genuinely zero above `N`, otherwise it is unknown
/// there.
#[derive(Debug)]
pub struct TruncatedComplex {
    algebra: Arc<AlgebraPresentation>,
    dims: Vec<usize>,
    modules: Vec<OnceCell<ModuleRep>>,
    diffs: Vec<OnceCell<Matrix>>,
    augmentation: Option<Augmentation>,
    tail_zero: bool,
    zero: ModuleRep,
    tensor: Option<TensorData>,
}

impl TruncatedComplex {
    /// `diffs[l - 1]` is `d_l: P_l → P_{l-1}`.
    pub fn new(
        modules: Vec<ModuleRep>,
        diffs: Vec<Matrix>,
        augmentation: Option<Augmentation>,
        tail_zero: bool,
    ) -> Result<TruncatedComplex> {
        let first = modules.first().ok_or_else(|| Error::InvalidArgument("a complex needs P_0".into()))?;
        let algebra = first.algebra().clone();
        if modules.iter().any(|m| !m.same_algebra(first)) {
            return Err(Error::AlgebraMismatch("complex terms over different algebras".into()));
        }
        if diffs.len() + 1 != modules.len() {
            return Err(Error::DimensionMismatch("need one differential per positive degree".into()));
        }
        for (l, d) in diffs.iter().enumerate() {
            if d.shape() != (modules[l].dim(), modules[l + 1].dim()) {
                return Err(Error::DimensionMismatch(format!("d_{} has the wrong shape", l + 1)));
            }
        }
        if let Some(aug) = &augmentation {
            if aug.map.shape() != (aug.target.dim(), first.dim()) || !aug.target.same_algebra(first) {
                return Err(Error::DimensionMismatch("augmentation does not match P_0".into()));
            }
        }
        let field = algebra.field().clone();
        let dims = modules.iter().map(|m| m.dim()).collect();
        let zero_diff = Matrix::zeros(&field, 0, first.dim());
        let modules = modules.into_iter().map(OnceCell::with_value).collect();
        let diffs = std::iter::once(zero_diff).chain(diffs).map(OnceCell::with_value).collect();
        Ok(TruncatedComplex {
            zero: ModuleRep::zero(&algebra),
            algebra,
            dims,
            modules,
            diffs,
            augmentation,
            tail_zero,
            tensor: None,
        })
    }

    /// The module `m` placed in degree 0, zero elsewhere.
    pub fn concentrated(m: ModuleRep) -> TruncatedComplex {
        TruncatedComplex::new(vec![m], Vec::new(), None, true).expect("single-term complex")
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }
    pub fn field(&self) -> &Field {
        self.algebra.field()
    }
    /// Highest degree held.
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }
    pub fn tail_zero(&self) -> bool {
        self.tail_zero
    }
    pub fn augmentation(&self) -> Option<&Augmentation> {
        self.augmentation.as_ref()
    }

    /// Whether degree `l` is known (negative degrees are zero).
    pub fn exists(&self, l: i64) -> bool {
        l < 0 || l as usize <= self.top() || self.tail_zero
    }

    pub fn dim(&self, l: i64) -> usize {
        assert!(self.exists(l), "degree {l} beyond truncation {}", self.top());
        if l < 0 || l as usize > self.top() {
            0
        } else {
            self.dims[l as usize]
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn module(&self, l: i64) -> &ModuleRep {
        if l < 0 || l as usize > self.top() {
            assert!(self.exists(l), "degree {l} beyond truncation");
            return &self.zero;
        }
        let l = l as usize;
        self.modules[l].get_or_init(|| self.build_tensor_module(l))
    }

    /// `d_l: P_l → P_{l-1}`.
    pub fn d(&self, l: i64) -> Cow<'_, Matrix> {
        if l <= 0 || l as usize > self.top() {
            return Cow::Owned(Matrix::zeros(self.field(), self.dim(l - 1), self.dim(l)));
        }
        let l = l as usize;
        Cow::Borrowed(self.diffs[l].get_or_init(|| self.build_tensor_diff(l)))
    }

    /// `d_l · m`, computed summand by summand for tensor complexes whose
    /// differential has not been materialized.
    pub fn d_times(&self, l: i64, m: &Matrix) -> Matrix {
        let f = self.field();
        let t = match &self.tensor {
            Some(t) if l >= 1 && (l as usize) <= self.top() && self.diffs[l as usize].get().is_none() => t,
            _ => return self.d(l).mul(m),
        };
        let l = l as usize;
        assert_eq!(m.rows(), self.dims[l], "d_times shape");
        let mut out = Matrix::zeros(f, self.dims[l - 1], m.cols());
        let find = |a: usize, b: usize| t.blocks[l - 1].iter().find(|x| x.left == a && x.right == b).copied();
        for blk in &t.blocks[l] {
            let (a, b) = (blk.left, blk.right);
            let rows = m.block(blk.offset, 0, blk.dim, m.cols());
            if rows.is_zero() {
                continue;
            }
            let (dp, dq) = (t.left.dim(a as i64), t.right.dim(b as i64));
            if a >= 1 {
                if let Some(tb) = find(a - 1, b) {
                    let k = t.left.d(a as i64).kron(&Matrix::identity(f, dq));
                    out.add_block(tb.offset, 0, &k.mul(&rows));
                }
            }
            if b >= 1 {
                if let Some(tb) = find(a, b - 1) {
                    let k = Matrix::identity(f, dp).kron(&t.right.d(b as i64)).signed(a % 2 == 1);
                    out.add_block(tb.offset, 0, &k.mul(&rows));
                }
            }
        }
        out
    }

    /// Summands of a tensor complex in degree `l`.
    pub fn blocks(&self, l: usize) -> Option<&[Block]> {
        self.tensor.as_ref().and_then(|t| t.blocks.get(l).map(|b| b.as_slice()))
    }

    pub fn tensor_factors(&self) -> Option<(&Arc<TruncatedComplex>, &Arc<TruncatedComplex>)> {
        self.tensor.as_ref().map(|t| (&t.left, &t.right))
    }

    /// The Hopf algebra acting diagonally on an inner tensor complex.
    pub fn inner_hopf(&self) -> Option<&HopfStructure> {
        match &self.tensor.as_ref()?.mode {
            TensorMode::Inner(h) => Some(h),
            TensorMode::Outer(_) => None,
        }
    }

    /// The module `P_a ⊗ Q_b` of a tensor complex, built on its own.
    pub fn summand_module(&self, a: usize, b: usize) -> ModuleRep {
        let t = self.tensor.as_ref().expect("summand of a tensor complex");
        let (p, q) = (t.left.module(a as i64), t.right.module(b as i64));
        match &t.mode {
            TensorMode::Inner(h) => tensor_modules(h, p, q).expect("inner tensor"),
            TensorMode::Outer(prod) => p.outer_tensor(q, prod).expect("outer tensor"),
        }
    }

    fn build_tensor_module(&self, l: usize) -> ModuleRep {
        let t = self.tensor.as_ref().expect("module of a tensor complex");
        let parts: Vec<ModuleRep> = t.blocks[l]
            .iter()
            .map(|b| self.summand_module(b.left, b.right))
            .collect();
        if parts.is_empty() {
            return ModuleRep::zero(&self.algebra);
        }
        let refs: Vec<&ModuleRep> = parts.iter().collect();
        ModuleRep::direct_sum(&refs).expect("direct sum")
    }

    fn build_tensor_diff(&self, l: usize) -> Matrix {
        let t = self.tensor.as_ref().expect("differential of a tensor complex");
        let f = self.field();
        let mut out = Matrix::zeros(f, self.dims[l - 1], self.dims[l]);
        let find = |a: usize, b: usize| t.blocks[l - 1].iter().find(|x| x.left == a && x.right == b).copied();
        for blk in &t.blocks[l] {
            let (a, b) = (blk.left, blk.right);
            let (dp, dq) = (t.left.dim(a as i64), t.right.dim(b as i64));
            if a >= 1 {
                if let Some(tb) = find(a - 1, b) {
                    let m = t.left.d(a as i64).kron(&Matrix::identity(f, dq));
                    out.add_block(tb.offset, blk.offset, &m);
                }
            }
            if b >= 1 {
                if let Some(tb) = find(a, b - 1) {
                    let m = Matrix::identity(f, dp).kron(&t.right.d(b as i64)).signed(a % 2 == 1);
                    out.add_block(tb.offset, blk.offset, &m);
                }
            }
        }
        out
    }

    /// d_{l-1} d_l = 0 for every held degree, and μ d_1 = 0.
    pub fn check_d_squared(&self) -> Report {
        let mut r = Report::new("d∘d = 0");
        for l in 2..=self.top() {
            let ok = self.d(l as i64 - 1).mul(&self.d(l as i64)).is_zero();
            r.push(Check::at("d∘d = 0", l, ok));
        }
        if let Some(aug) = &self.augmentation {
            let ok = self.top() == 0 || aug.map.mul(&self.d(1)).is_zero();
            r.push(Check::at("μ∘d_1 = 0", 1, ok));
        }
        r
    }

    /// Every differential and the augmentation are module maps.
    pub fn check_linearity(&self) -> Report {
        let mut r = Report::new("module maps");
        for l in 1..=self.top() {
            let ok = match (self.blocks(l), self.blocks(l - 1)) {
                // Block by block, so the full tensor module is never formed.
                (Some(src), Some(tgt)) => {
                    let d = self.d(l as i64);
                    src.iter().all(|s| {
                        let ms = self.summand_module(s.left, s.right);
                        tgt.iter().all(|t| {
                            let part = d.block(t.offset, s.offset, t.dim, s.dim);
                            part.is_zero() || ms.is_hom_to(&self.summand_module(t.left, t.right), &part)
                        })
                    })
                }
                _ => self.module(l as i64).is_hom_to(self.module(l as i64 - 1), &self.d(l as i64)),
            };
            r.push(Check::at("d_l is A-linear", l, ok));
        }
        if let Some(aug) = &self.augmentation {
            r.push(Check::at("μ is A-linear", 0, self.module(0).is_hom_to(&aug.target, &aug.map)));
        }
        r
    }

    /// dim ker d_l / im d_{l+1} for each degree where both are known.
    pub fn homology_dims(&self) -> Vec<usize> {
        let last = if self.tail_zero { self.top() } else { self.top().saturating_sub(1) };
        if !self.tail_zero && self.top() == 0 {
            return Vec::new();
        }
        let mut ranks: Vec<usize> = (0..=self.top()).map(|l| self.d(l as i64).rank()).collect();
        ranks.push(0);
        (0..=last).map(|l| self.dims[l] - ranks[l] - ranks[l + 1]).collect()
    }

    /// (dim ker μ / im d_1, dim coker μ); both zero for a resolution.
    pub fn augmented_homology(&self) -> Option<(usize, usize)> {
        let aug = self.augmentation.as_ref()?;
        let rank_mu = aug.map.rank();
        let rank_d1 = self.d(1).rank();
        Some((self.dims[0] - rank_mu - rank_d1, aug.target.dim() - rank_mu))
    }

    /// d² = 0, linearity, and exactness of the augmented complex in
    /// degrees 0..=upto.
    pub fn verify_resolution(&self, upto: usize) -> Report {
        let mut r = self.check_d_squared();
        r.extend(self.check_linearity());
        match self.augmented_homology() {
            Some((h0, coker)) => {
                r.push(Check::at("ker μ = im d_1", 0, h0 == 0));
                r.push(Check::at("μ surjective", 0, coker == 0));
            }
            None => r.push(Check::at("augmentation present", 0, false)),
        }
        let h = self.homology_dims();
        for l in 1..=upto {
            let ok = h.get(l).map(|&x| x == 0).unwrap_or(false);
            let c = Check::at("homology vanishes", l, ok);
            r.push(if h.get(l).is_none() { c.with_detail("degree beyond truncation") } else { c });
        }
        r
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            top: self.top(),
            tail_zero: self.tail_zero,
            dims: self.dims.clone(),
            differentials: (1..=self.top()).map(|l| self.d(l as i64).to_text()).collect(),
            augmentation: self.augmentation.as_ref().map(|a| a.map.to_text()),
        }
    }
}

/// JSON view of a complex.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ComplexDocument {
    pub top: usize,
    pub tail_zero: bool,
    pub dims: Vec<usize>,
    pub differentials: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub augmentation: Option<Vec<Vec<String>>>,
}

/// Tensor product with `(P⊗Q)_m = ⊕_{i+j=m} P_i⊗Q_j`, blocks ordered by `i`,
/// `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`, augmentation `μ_P⊗μ_Q` into the
/// tensor of the augmentation targets.
pub fn tensor_complex(p: &Arc<TruncatedComplex>, q: &Arc<TruncatedComplex>, mode: TensorMode) -> Result<TruncatedComplex> {
    match &mode {
        TensorMode::Inner(h) => {
            if !Arc::ptr_eq(p.algebra(), h.algebra()) || !Arc::ptr_eq(q.algebra(), h.algebra()) {
                return Err(Error::AlgebraMismatch("inner tensor needs both complexes over the Hopf algebra".into()));
            }
        }
        TensorMode::Outer(prod) => {
            if prod.dim() != p.algebra().dim() * q.algebra().dim() {
                return Err(Error::AlgebraMismatch("product algebra does not match the factors".into()));
            }
        }
    }
    let (np, nq) = (p.top(), q.top());
    let top = match (p.tail_zero(), q.tail_zero()) {
        (true, true) => np + nq,
        (true, false) => nq,
        (false, true) => np,
        (false, false) => np.min(nq),
    };
    let mut blocks = Vec::with_capacity(top + 1);
    let mut dims = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let mut off = 0;
        let mut row = Vec::new();
        for i in 0..=m {
            let j = m - i;
            let (dp, dq) = (p.dim(i as i64), q.dim(j as i64));
            if (i <= np) && (j <= nq) {
                row.push(Block { left: i, right: j, offset: off, dim: dp * dq });
                off += dp * dq;
            }
        }
        blocks.push(row);
        dims.push(off);
    }
    let algebra = match &mode {
        TensorMode::Inner(h) => h.algebra().clone(),
        TensorMode::Outer(prod) => prod.clone(),
    };
    let augmentation = match (p.augmentation(), q.augmentation()) {
        (Some(a), Some(b)) => {
            let target = match &mode {
                TensorMode::Inner(h) => tensor_modules(h, &a.target, &b.target)?,
                TensorMode::Outer(prod) => a.target.outer_tensor(&b.target, prod)?,
            };
            Some(Augmentation { target, map: a.map.kron(&b.map) })
        }
        _ => None,
    };
    Ok(TruncatedComplex {
        zero: ModuleRep::zero(&algebra),
        algebra,
        modules: (0..=top).map(|_| OnceCell::new()).collect(),
        diffs: std::iter::once(OnceCell::with_value(Matrix::zeros(p.field(), 0, dims[0])))
            .chain((1..=top).map(|_| OnceCell::new()))
            .collect(),
        dims,
        augmentation,
        tail_zero: p.tail_zero() && q.tail_zero(),
        tensor: Some(TensorData { left: p.clone(), right: q.clone(), mode, blocks }),
    })
}

/// A family of maps `P_i → Q_{i-degree}` for source degrees `0..=hi`;
/// absent components are zero.
#[derive(Debug, Clone)]
pub struct GradedMap {
    degree: i64,
    source: Arc<TruncatedComplex>,
    target: Arc<TruncatedComplex>,
    hi: usize,
    comps: BTreeMap<usize, Matrix>,
}

impl GradedMap {
    /// The zero map; `hi` is clipped to where both ends are known.
    pub fn zero(degree: i64, source: &Arc<TruncatedComplex>, target: &Arc<TruncatedComplex>, hi: usize) -> GradedMap {
        let mut hi = hi.min(source.top());
        while hi > 0 && !target.exists(hi as i64 - degree) {
            hi -= 1;
        }
        GradedMap { degree, source: source.clone(), target: target.clone(), hi, comps: BTreeMap::new() }
    }

    pub fn identity(p: &Arc<TruncatedComplex>) -> GradedMap {
        let mut m = GradedMap::zero(0, p, p, p.top());
        for i in 0..=p.top() {
            m.comps.insert(i, Matrix::identity(p.field(), p.dim(i as i64)));
        }
        m
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }
    pub fn hi(&self) -> usize {
        self.hi
    }
    pub fn source(&self) -> &Arc<TruncatedComplex> {
        &self.source
    }
    pub fn target(&self) -> &Arc<TruncatedComplex> {
        &self.target
    }

    pub fn target_degree(&self, i: usize) -> i64 {
        i as i64 - self.degree
    }

    pub fn set(&mut self, i: usize, m: Matrix) -> Result<()> {
        if i > self.hi {
            return Err(Error::OutOfRange(format!("component {i} beyond {}", self.hi)));
        }
        let shape = (self.target.dim(self.target_degree(i)), self.source.dim(i as i64));
        if m.shape() != shape {
            return Err(Error::DimensionMismatch(format!("component {i}: {:?} vs {:?}", m.shape(), shape)));
        }
        if m.is_zero() {
            self.comps.remove(&i);
        } else {
            self.comps.insert(i, m);
        }
        Ok(())
    }

    pub fn component(&self, i: usize) -> Cow<'_, Matrix> {
        assert!(i <= self.hi, "component {i} beyond {}", self.hi);
        match self.comps.get(&i) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(
                self.source.field(),
                self.target.dim(self.target_degree(i)),
                self.source.dim(i as i64),
            )),
        }
    }

    pub fn nonzero_components(&self) -> impl Iterator<Item = (usize, &Matrix)> {
        self.comps.iter().map(|(i, m)| (*i, m))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Restriction to source degrees `0..=hi`.
    pub fn truncate(&self, hi: usize) -> GradedMap {
        let mut out = self.clone();
        out.hi = hi.min(self.hi);
        out.comps.retain(|i, _| *i <= out.hi);
        out
    }

    fn compatible(&self, o: &GradedMap) -> bool {
        self.degree == o.degree && Arc::ptr_eq(&self.source, &o.source) && Arc::ptr_eq(&self.target, &o.target)
    }

    fn combine(&self, o: &GradedMap, negate: bool) -> Result<GradedMap> {
        if !self.compatible(o) {
            return Err(Error::DimensionMismatch("graded maps of different type".into()));
        }
        let mut out = GradedMap::zero(self.degree, &self.source, &self.target, self.hi.min(o.hi));
        for i in 0..=out.hi {
            let m = if negate { self.component(i).sub(&o.component(i)) } else { self.component(i).add(&o.component(i)) };
            out.set(i, m)?;
        }
        Ok(out)
    }

    pub fn add(&self, o: &GradedMap) -> Result<GradedMap> {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &GradedMap) -> Result<GradedMap> {
        self.combine(o, true)
    }

    pub fn scale(&self, s: &crate::scalars::Elem) -> GradedMap {
        let mut out = self.clone();
        out.comps = self.comps.iter().map(|(i, m)| (*i, m.scale(s))).filter(|(_, m)| !m.is_zero()).collect();
        out
    }

    /// Componentwise equality on the common range.
    pub fn equals(&self, o: &GradedMap) -> bool {
        self.compatible(o) && (0..=self.hi.min(o.hi)).all(|i| self.component(i) == o.component(i))
    }

    /// Every component is a module map.
    pub fn check_linearity(&self) -> Report {
        let mut r = Report::new("graded map is A-linear");
        for i in 0..=self.hi {
            let ok = self.source.module(i as i64).is_hom_to(self.target.module(self.target_degree(i)), &self.component(i));
            r.push(Check::at("component is A-linear", i, ok));
        }
        r
    }

    /// `∂ψ = dψ - (-1)^ℓ ψd`, of degree ℓ + 1.
    pub fn hom_differential(&self) -> GradedMap {
        let l = self.degree;
        let mut out = GradedMap::zero(l + 1, &self.source, &self.target, self.hi);
        for i in 0..=out.hi {
            let t = self.target_degree(i);
            let mut m = self.target.d_times(t, &self.component(i));
            if i >= 1 {
                let back = self.component(i - 1).mul(&self.source.d(i as i64));
                m = if l % 2 == 0 { m.sub(&back) } else { m.add(&back) };
            }
            out.set(i, m).expect("shape of ∂ψ");
        }
        out
    }

    /// `self ∘ inner`, degrees add.
    pub fn compose(&self, inner: &GradedMap) -> Result<GradedMap> {
        if !Arc::ptr_eq(&inner.target, &self.source) {
            return Err(Error::DimensionMismatch("composition of non-matching graded maps".into()));
        }
        let b = inner.degree;
        let mut hi = inner.hi;
        while hi > 0 && hi as i64 - b > self.hi as i64 {
            hi -= 1;
        }
        let mut out = GradedMap::zero(self.degree + b, &inner.source, &self.target, hi);
        for i in 0..=out.hi {
            let mid = i as i64 - b;
            if mid < 0 {
                continue;
            }
            out.set(i, self.component(mid as usize).mul(&inner.component(i)))?;
        }
        Ok(out)
    }

    pub fn to_document(&self) -> GradedMapDocument {
        GradedMapDocument {
            degree: self.degree,
            valid_range: (0, self.hi),
            components: self.comps.iter().map(|(i, m)| (*i, m.to_text())).collect(),
        }
    }
}

/// JSON view of a graded map; omitted components are zero.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GradedMapDocument {
    pub degree: i64,
    pub valid_range: (usize, usize),
    pub components: BTreeMap<usize, Vec<Vec<String>>>,
}

/// A linear system whose unknowns range over Hom spaces.
pub(crate) struct LinearProblem {
    field: Field,
    spaces: Vec<Arc<HomSpace>>,
    offsets: Vec<usize>,
    sys: SparseSystem,
}

/// `±(left · X_unknown · right)`; `None` means identity.
pub(crate) struct Term<'a> {
    pub unknown: usize,
    pub left: Option<&'a Matrix>,
    pub right: Option<&'a Matrix>,
    pub negate: bool,
}

impl LinearProblem {
    pub fn new(field: &Field, spaces: Vec<Arc<HomSpace>>) -> LinearProblem {
        let mut offsets = Vec::with_capacity(spaces.len());
        let mut n = 0;
        for s in &spaces {
            offsets.push(n);
            n += s.dim();
        }
        LinearProblem { field: field.clone(), sys: SparseSystem::new(field, n, 1), spaces, offsets }
    }

    /// Adds the entrywise equations `Σ terms = rhs`.
    pub fn add_equation(&mut self, terms: &[Term<'_>], rhs: &Matrix) -> Result<()> {
        let f = self.field.clone();
        let (rows, cols) = rhs.shape();
        let mut eqs: Vec<SparseRow> = vec![Vec::new(); rows * cols];
        for t in terms {
            let space = &self.spaces[t.unknown];
            for (k, b) in space.basis.iter().enumerate() {
                let mut m = Cow::Borrowed(b);
                if let Some(l) = t.left {
                    m = Cow::Owned(l.try_mul(&m)?);
                }
                if let Some(r) = t.right {
                    m = Cow::Owned(m.try_mul(r)?);
                }
                if m.shape() != (rows, cols) {
                    return Err(Error::DimensionMismatch(format!("term {:?} vs rhs {:?}", m.shape(), (rows, cols))));
                }
                let var = self.offsets[t.unknown] + k;
                for (idx, v) in m.as_slice().iter().enumerate() {
                    if !f.is_zero(v) {
                        eqs[idx].push((var, if t.negate { f.neg(v) } else { v.clone() }));
                    }
                }
            }
        }
        for (idx, lhs) in eqs.into_iter().enumerate() {
            let r = &rhs.as_slice()[idx];
            let rhs_row = if f.is_zero(r) { Vec::new() } else { vec![(0, r.clone())] };
            if lhs.is_empty() && rhs_row.is_empty() {
                continue;
            }
            self.sys.push(lhs, rhs_row);
        }
        Ok(())
    }

    /// One matrix per unknown, or `None` if inconsistent.
    pub fn solve(self) -> Option<Vec<Matrix>> {
        let sol = self.sys.solve()?.pop().expect("one right-hand side");
        Some(
            self.spaces
                .iter()
                .zip(&self.offsets)
                .map(|(s, &o)| s.combine(&self.field, &sol[o..o + s.dim()]))
                .collect(),
        )
    }
}

/// Lifts `c: target(μ_P) → target(μ_Q)` to a degree-0 chain map `P → Q`
/// with `μ_Q φ_0 = c μ_P` and `d φ_l = φ_{l-1} d`, up to source degree `hi`.
pub fn lift_chain_map(p: &Arc<TruncatedComplex>, q: &Arc<TruncatedComplex>, c: &Matrix, hi: usize) -> Result<GradedMap> {
    let ap = p.augmentation().ok_or_else(|| Error::InvalidArgument("source has no augmentation".into()))?;
    let aq = q.augmentation().ok_or_else(|| Error::InvalidArgument("target has no augmentation".into()))?;
    if c.shape() != (aq.target.dim(), ap.target.dim()) {
        return Err(Error::DimensionMismatch("map on augmentation targets".into()));
    }
    let f = p.field().clone();
    let mut phi = GradedMap::zero(0, p, q, hi);
    for i in 0..=phi.hi() {
        let space = hom_space(p.module(i as i64), q.module(i as i64))?;
        let mut lp = LinearProblem::new(&f, vec![space]);
        if i == 0 {
            lp.add_equation(&[Term { unknown: 0, left: Some(&aq.map), right: None, negate: false }], &c.mul(&ap.map))?;
        } else {
            let dq = q.d(i as i64);
            let rhs = phi.component(i - 1).mul(&p.d(i as i64));
            lp.add_equation(&[Term { unknown: 0, left: Some(&dq), right: None, negate: false }], &rhs)?;
        }
        let sol = lp.solve().ok_or_else(|| Error::NoSolution {
            degree: i,
            detail: "chain map lifting has no solution; the target is not exact here".into(),
        })?;
        phi.set(i, sol.into_iter().next().unwrap())?;
    }
    Ok(phi)
}

/// Checks `d φ_l = φ_{l-1} d` on the range and, if both ends are
/// augmented, `μ_Q φ_0 = c μ_P`.
pub fn check_chain_map(phi: &GradedMap, c: Option<&Matrix>) -> Report {
    let mut r = Report::new("chain map");
    let d = phi.hom_differential();
    for i in 0..=d.hi() {
        r.push(Check::at("∂φ = 0", i, d.component(i).is_zero()));
    }
    if let (Some(c), Some(ap), Some(aq)) = (c, phi.source().augmentation(), phi.target().augmentation()) {
        let ok = aq.map.mul(&phi.component(0)) == c.mul(&ap.map);
        r.push(Check::at("μ_Q φ_0 = c μ_P", 0, ok));
    }
    r
}

/// Solves `∂H = φ` degree by degree for a ∂-closed `φ` of degree ℓ; `H`
/// has degree ℓ - 1. Returns `None` when no solution exists in the range.
pub fn solve_null_homotopy(phi: &GradedMap) -> Result<Option<GradedMap>> {
    let (p, q) = (phi.source().clone(), phi.target().clone());
    let f = p.field().clone();
    let l = phi.degree();
    let mut h = GradedMap::zero(l - 1, &p, &q, phi.hi());
    let hi = h.hi();
    let start = if l >= 1 {
        let l = l as usize;
        if l > hi {
            return Ok(Some(h));
        }
        // Joint step: d_1 H_l - (-1)^{l-1} H_{l-1} d_l = φ_l.
        let s0 = hom_space(p.module(l as i64 - 1), q.module(0))?;
        let s1 = hom_space(p.module(l as i64), q.module(1))?;
        let mut lp = LinearProblem::new(&f, vec![s0, s1]);
        let d1 = q.d(1);
        let dl = p.d(l as i64);
        lp.add_equation(
            &[
                Term { unknown: 1, left: Some(&d1), right: None, negate: false },
                Term { unknown: 0, left: None, right: Some(&dl), negate: (l - 1) % 2 == 0 },
            ],
            &phi.component(l),
        )?;
        let Some(sol) = lp.solve() else { return Ok(None) };
        let mut it = sol.into_iter();
        h.set(l - 1, it.next().unwrap())?;
        h.set(l, it.next().unwrap())?;
        l + 1
    } else {
        0
    };
    for i in start..=hi {
        if !solve_greedy_step(&mut h, i, &phi.component(i))? {
            return Ok(None);
        }
    }
    Ok(Some(h))
}

/// Solves `d H_i = rhs + (-1)^{deg H} H_{i-1} d_i` for the component `H_i`,
/// i.e. one degree of `∂H = rhs`.
pub(crate) fn solve_greedy_step(h: &mut GradedMap, i: usize, rhs: &Matrix) -> Result<bool> {
    let (p, q) = (h.source().clone(), h.target().clone());
    let f = p.field().clone();
    let deg = h.degree();
    let t = h.target_degree(i);
    let mut full = rhs.clone();
    if i >= 1 {
        let back = h.component(i - 1).mul(&p.d(i as i64));
        // ∂H_i = d H_i - (-1)^deg H_{i-1} d_i
        full = if deg % 2 == 0 { full.add(&back) } else { full.sub(&back) };
    }
    if t < 0 {
        return Ok(full.rows() == 0 || full.is_zero());
    }
    let space = hom_space(p.module(i as i64), q.module(t))?;
    let dq = q.d(t);
    let mut lp = LinearProblem::new(&f, vec![space]);
    lp.add_equation(&[Term { unknown: 0, left: Some(&dq), right: None, negate: false }], &full)?;
    match lp.solve() {
        Some(sol) => {
            h.set(i, sol.into_iter().next().unwrap())?;
            Ok(true)
        }
        None => Ok(false),
    }
}

/// The cochain complex `Hom_A(P_i, M)` in coordinates of the Hom-space
/// bases, with coboundary `f ↦ f∘d`.
#[derive(Debug, Clone)]
pub struct CochainComplex {
    pub spaces: Vec<Arc<HomSpace>>,
    /// `coboundary[i]`: coordinates in degree i+1 of `b∘d_{i+1}` for each
    /// basis element `b` of degree i.
    pub coboundary: Vec<Matrix>,
}

pub fn hom_complex(p: &TruncatedComplex, m: &ModuleRep, maxdeg: usize) -> Result<CochainComplex> {
    if maxdeg + 1 > p.top() && !p.tail_zero() {
        return Err(Error::OutOfRange(format!("cochains to degree {maxdeg} need P up to {}", maxdeg + 1)));
    }
    let f = p.field();
    let spaces = (0..=maxdeg + 1).map(|i| hom_space(p.module(i as i64), m)).collect::<Result<Vec<_>>>()?;
    let mut coboundary = Vec::with_capacity(maxdeg + 1);
    for i in 0..=maxdeg {
        let d = p.d(i as i64 + 1);
        let cols = spaces[i]
            .basis
            .iter()
            .map(|b| {
                spaces[i + 1]
                    .coordinates(f, &b.mul(&d))
                    .ok_or_else(|| Error::Certification("coboundary left the Hom space".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        coboundary.push(Matrix::from_columns(f, spaces[i + 1].dim(), &cols));
    }
    Ok(CochainComplex { spaces, coboundary })
}

impl CochainComplex {
    pub fn maxdeg(&self) -> usize {
        self.coboundary.len() - 1
    }

    /// dim H^i for i ≤ maxdeg.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        (0..=self.maxdeg())
            .map(|i| {
                let z = self.spaces[i].dim() - self.coboundary[i].rank();
                let b = if i == 0 { 0 } else { self.coboundary[i - 1].rank() };
                z - b
            })
            .collect()
    }

    pub fn check_squares_to_zero(&self) -> Report {
        let mut r = Report::new("coboundary² = 0");
        for i in 1..=self.maxdeg() {
            r.push(Check::at("δδ = 0", i, self.coboundary[i].mul(&self.coboundary[i - 1]).is_zero()));
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{taft, trivial_module};

    fn sweedler_resolution(top: usize) -> (HopfStructure, Arc<TruncatedComplex>) {
        // P_l = A·ε_l / via explicit 2-dim modules as in the Taft resolution.
        let f = Field::cyclotomic(2).unwrap();
        let h = taft(2, &f).unwrap();
        let alg = h.algebra().clone();
        let mk = |odd: bool| {
            // basis ε, xε ; generators x, g
            let x = Matrix::from_fn(&f, 2, 2, |r, c| if r == 1 && c == 0 { f.one() } else { f.zero() });
            let s = |i: i64| f.omega_pow(i + odd as i64);
            let g = Matrix::from_fn(&f, 2, 2, |r, c| if r == c { s(r as i64) } else { f.zero() });
            ModuleRep::from_generator_actions(&alg, 2, vec![x, g]).unwrap()
        };
        let modules: Vec<ModuleRep> = (0..=top).map(|l| mk(l % 2 == 1)).collect();
        let xmul = Matrix::from_fn(&f, 2, 2, |r, c| if r == 1 && c == 0 { f.one() } else { f.zero() });
        let diffs = (1..=top).map(|_| xmul.clone()).collect();
        let k = trivial_module(&h);
        let mu = Matrix::row_vector(&f, vec![f.one(), f.zero()]);
        let p = TruncatedComplex::new(modules, diffs, Some(Augmentation { target: k, map: mu }), false).unwrap();
        (h, Arc::new(p))
    }

    #[test]
    fn sweedler_resolution_is_exact() {
        let (_, p) = sweedler_resolution(6);
        let r = p.verify_resolution(5);
        assert!(r.passed(), "{:?}", r.first_failure());
        assert_eq!(p.homology_dims(), vec![1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn identity_is_closed() {
        let (_, p) = sweedler_resolution(4);
        let id = GradedMap::identity(&p);
        assert!(id.hom_differential().is_zero());
        let z = GradedMap::zero(1, &p, &p, 4);
        assert!(z.hom_differential().is_zero());
    }

    #[test]
    fn tensor_square_koszul_and_exact() {
        let (h, p) = sweedler_resolution(6);
        let pp = Arc::new(tensor_complex(&p, &p, TensorMode::Inner(h)).unwrap());
        assert_eq!(pp.dims(), &[4, 8, 12, 16, 20, 24, 28]);
        assert!(pp.check_d_squared().passed());
        assert!(pp.check_linearity().passed());
        assert_eq!(&pp.homology_dims()[..6], &[1, 0, 0, 0, 0, 0]);
        // Block (1,1) of degree 2 maps to (1,0) with sign -1.
        let d2 = pp.d(2);
        let b11 = pp.blocks(2).unwrap()[1];
        let b10 = pp.blocks(1).unwrap()[1];
        assert_eq!((b11.left, b11.right), (1, 1));
        assert_eq!((b10.left, b10.right), (1, 0));
        let minus = p.field().from_i64(-1);
        // ε_1⊗ε_1 ↦ ... − ε_1⊗xε_0 : column 0 of block, row 1 of target block.
        assert_eq!(d2.get(b10.offset + 1, b11.offset), &minus);
    }

    #[test]
    fn chain_map_lift_and_null_homotopy() {
        let (_, p) = sweedler_resolution(5);
        let c = Matrix::identity(p.field(), 1);
        let phi = lift_chain_map(&p, &p, &c, 5).unwrap();
        assert!(check_chain_map(&phi, Some(&c)).passed());
        // φ - id is null-homotopic.
        let diff = phi.sub(&GradedMap::identity(&p)).unwrap();
        let h = solve_null_homotopy(&diff).unwrap().expect("homotopic to identity");
        assert!(h.hom_differential().equals(&diff));
    }

    #[test]
    fn null_homotopy_round_trip_and_obstruction() {
        let (h, p) = sweedler_resolution(6);
        let f = p.field().clone();
        // A random-ish degree-0 map H0 and φ = ∂H0 of degree 1.
        let mut h0 = GradedMap::zero(0, &p, &p, 6);
        for i in 0..=6 {
            let s = hom_space(p.module(i), p.module(i)).unwrap();
            let coords: Vec<_> = (0..s.dim()).map(|k| f.from_i64(k as i64 + i as i64 + 1)).collect();
            h0.set(i as usize, s.combine(&f, &coords)).unwrap();
        }
        let phi = h0.hom_differential();
        let hh = solve_null_homotopy(&phi).unwrap().unwrap();
        assert!(hh.hom_differential().truncate(5).equals(&phi.truncate(5)));

        // The degree-2 generator as a map P → k is not a coboundary.
        let k = Arc::new(TruncatedComplex::concentrated(trivial_module(&h)));
        let mut z = GradedMap::zero(2, &p, &k, 6);
        z.set(2, Matrix::row_vector(&f, vec![f.one(), f.zero()])).unwrap();
        assert!(z.hom_differential().is_zero());
        assert!(solve_null_homotopy(&z).unwrap().is_none());
        assert!(solve_null_homotopy(&GradedMap::zero(2, &p, &k, 6)).unwrap().unwrap().is_zero());
    }

    #[test]
    fn lifting_into_non_exact_target_fails() {
        let (h, p) = sweedler_resolution(4);
        let f = p.field().clone();
        // Q: P_0 with zero differentials; not exact in degree 0.
        let m0 = p.module(0).clone();
        let q = TruncatedComplex::new(
            vec![m0.clone(), m0.clone()],
            vec![Matrix::zeros(&f, 2, 2)],
            Some(Augmentation { target: trivial_module(&h), map: Matrix::row_vector(&f, vec![f.one(), f.zero()]) }),
            false,
        )
        .unwrap();
        let err = lift_chain_map(&p, &Arc::new(q), &Matrix::identity(&f, 1), 1).unwrap_err();
        assert!(matches!(err, Error::NoSolution { degree: 1, .. }));
    }

    #[test]
    fn cochain_dims() {
        let (h, p) = sweedler_resolution(6);
        let cc = hom_complex(&p, &trivial_module(&h), 5).unwrap();
        assert!(cc.check_squares_to_zero().passed());
        assert_eq!(cc.cohomology_dims(), vec![1, 0, 1, 0, 1, 0]);
    }
}
