//! Drivers behind the `homlift` binary. Every command returns a serializable
//! document; the binary only parses flags, writes output and picks the exit
//! code.

use std::fmt;
use std::path::PathBuf;

use homlift::bracket::{
    bracket_table, build_setting, cohomology_basis, cup, solve_homotopy_lifting, verify_lifting, AlgebraKind, BracketReport,
    Cocycle, DiagonalChoice, LiftingMethod, ResolutionChoice, Setting, TableOptions,
};
use homlift::exactla::Matrix;
use homlift::functor::{
    eckmann_shapiro_check, induce_resolution, transport_check, verify_monoidal, verify_naturality, verify_right_projectivity,
    verify_unit_identification, Envelope,
};
use homlift::hopf::{trivial_module, HopfDocument, HopfStructure};
use homlift::report::{Check, Report};
use homlift::resolutions::{power_flat_check, taft_resolution};
use homlift::Field;
use serde::{Deserialize, Serialize};

/// Bad flags or an incompatible combination; exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug)]
pub enum JobError {
    Config(ConfigError),
    Compute(homlift::Error),
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JobError::Config(e) => write!(f, "invalid configuration: {e}"),
            JobError::Compute(e) => write!(f, "computation failed: {e}"),
        }
    }
}

impl From<homlift::Error> for JobError {
    fn from(e: homlift::Error) -> Self {
        JobError::Compute(e)
    }
}

impl From<ConfigError> for JobError {
    fn from(e: ConfigError) -> Self {
        JobError::Config(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Resolution,
    Flatness,
    Diagonal,
    Cohomology,
    Liftings,
    Brackets,
    Functor,
    EckmannShapiro,
    Determinism,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Resolution,
        Suite::Flatness,
        Suite::Diagonal,
        Suite::Cohomology,
        Suite::Liftings,
        Suite::Brackets,
        Suite::Functor,
        Suite::EckmannShapiro,
        Suite::Determinism,
    ];

    pub fn parse_list(s: &str) -> Result<Vec<Suite>, ConfigError> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
                continue;
            }
            let v: Suite = serde_json::from_value(serde_json::Value::String(part.to_string()))
                .map_err(|_| ConfigError(format!("unknown suite '{part}'")))?;
            out.push(v);
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(ConfigError("no suites selected".into()));
        }
        Ok(out)
    }

    fn needs_envelope(self) -> bool {
        matches!(self, Suite::Functor | Suite::EckmannShapiro)
    }
}

/// `taft:n`, `taft_tensor:a,b,..`, `group_zp:p` or `file:path`.
pub fn parse_algebra(s: &str) -> Result<AlgebraKind, ConfigError> {
    let (head, tail) = s.split_once(':').ok_or_else(|| ConfigError(format!("algebra '{s}' needs the form kind:args")))?;
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| ConfigError(format!("'{t}' is not a positive integer")));
    let kind = match head {
        "taft" => AlgebraKind::Taft(num(tail)?),
        "taft_tensor" => AlgebraKind::TaftTensor(tail.split(',').map(num).collect::<Result<_, _>>()?),
        "group_zp" => AlgebraKind::GroupZp(num(tail)?),
        "file" if !tail.is_empty() => AlgebraKind::Custom(tail.to_string()),
        _ => return Err(ConfigError(format!("unknown algebra '{s}'"))),
    };
    match &kind {
        AlgebraKind::Taft(n) if *n < 2 => Err(ConfigError("taft needs n >= 2".into())),
        AlgebraKind::TaftTensor(ns) if ns.len() < 2 || ns.iter().any(|&n| n < 2) => {
            Err(ConfigError("taft_tensor needs at least two orders, each >= 2".into()))
        }
        AlgebraKind::GroupZp(p) if *p < 2 => Err(ConfigError("group_zp needs p >= 2".into())),
        _ => Ok(kind),
    }
}

/// `cyclotomic` or `prime:p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldArg {
    Cyclotomic,
    Prime(u64),
}

pub fn parse_field(s: &str) -> Result<FieldArg, ConfigError> {
    match s.split_once(':') {
        None if s == "cyclotomic" => Ok(FieldArg::Cyclotomic),
        Some(("prime", p)) => p.parse().map(FieldArg::Prime).map_err(|_| ConfigError(format!("bad prime '{p}'"))),
        _ => Err(ConfigError(format!("unknown field '{s}'"))),
    }
}

/// A fully described job.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub algebra: AlgebraKind,
    pub field: Option<FieldArg>,
    pub maxdeg: usize,
    pub resolution: ResolutionChoice,
    pub diagonal: DiagonalChoice,
    pub lifting: LiftingMethod,
    pub suites: Vec<Suite>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub seed: Option<u64>,
    pub max_n_envelope: u32,
}

impl JobConfig {
    pub fn new(algebra: AlgebraKind) -> JobConfig {
        JobConfig {
            algebra,
            field: None,
            maxdeg: 4,
            resolution: ResolutionChoice::Explicit,
            diagonal: DiagonalChoice::Explicit,
            lifting: LiftingMethod::Auto,
            suites: Suite::ALL.to_vec(),
            output: None,
            format: Format::Json,
            seed: None,
            max_n_envelope: 3,
        }
    }

    /// Root-of-unity order the field must carry.
    fn order(&self) -> u32 {
        match &self.algebra {
            AlgebraKind::Taft(n) => *n,
            AlgebraKind::TaftTensor(ns) => ns.iter().fold(1, |a, &b| num_lcm(a, b)),
            AlgebraKind::GroupZp(_) | AlgebraKind::Custom(_) => 1,
        }
    }

    pub fn build_field(&self) -> Result<Field, ConfigError> {
        let e = |e: homlift::Error| ConfigError(e.to_string());
        match (&self.algebra, self.field) {
            (AlgebraKind::Custom(_), _) => Err(ConfigError("file algebras carry their own field".into())),
            (AlgebraKind::GroupZp(p), Some(FieldArg::Prime(q))) if *p as u64 != q => {
                Err(ConfigError(format!("group_zp:{p} is computed over F_{p}, not F_{q}")))
            }
            (AlgebraKind::GroupZp(p), Some(FieldArg::Cyclotomic)) => {
                Err(ConfigError(format!("group_zp:{p} is computed over F_{p}")))
            }
            (k, None) => k.default_field().map_err(e),
            (_, Some(FieldArg::Cyclotomic)) => Field::cyclotomic(self.order()).map_err(e),
            (_, Some(FieldArg::Prime(p))) => Field::prime(p, self.order(), None).map_err(e),
        }
    }

    fn load_custom(&self) -> Result<Option<HopfStructure>, ConfigError> {
        let AlgebraKind::Custom(path) = &self.algebra else { return Ok(None) };
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("cannot read {path}: {e}")))?;
        let doc: HopfDocument = serde_json::from_str(&text).map_err(|e| ConfigError(format!("bad algebra file: {e}")))?;
        doc.to_hopf().map(Some).map_err(|e| ConfigError(format!("bad algebra file: {e}")))
    }

    /// Checks flag compatibility without running anything expensive.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.maxdeg == 0 || self.maxdeg > 40 {
            return Err(ConfigError("maxdeg must be between 1 and 40".into()));
        }
        let custom = self.load_custom()?;
        if custom.is_none() {
            self.build_field()?;
        }
        let cocommutative = match (&self.algebra, &custom) {
            (AlgebraKind::GroupZp(_), _) => true,
            (_, Some(h)) => h.is_cocommutative(),
            _ => false,
        };
        if self.diagonal == DiagonalChoice::Symmetrized && !cocommutative {
            return Err(ConfigError("a symmetrized diagonal requires a cocommutative Hopf algebra".into()));
        }
        if self.diagonal == DiagonalChoice::Symmetrized {
            let two_ok = match (&self.algebra, &custom) {
                (AlgebraKind::GroupZp(p), _) => *p != 2,
                (_, Some(h)) => h.field().characteristic() != 2,
                _ => true,
            };
            if !two_ok {
                return Err(ConfigError("symmetrizing divides by 2".into()));
            }
        }
        if self.diagonal == DiagonalChoice::Explicit && matches!(self.algebra, AlgebraKind::GroupZp(_)) {
            return Err(ConfigError("group_zp has no closed-form diagonal; use --diagonal generic or symmetrized".into()));
        }
        if custom.is_some() && self.resolution == ResolutionChoice::Explicit {
            return Err(ConfigError("file algebras need --resolution generic".into()));
        }
        if self.resolution == ResolutionChoice::Generic && self.diagonal == DiagonalChoice::Explicit {
            return Err(ConfigError("an explicit diagonal needs the explicit resolution".into()));
        }
        Ok(())
    }

    fn envelope_allowed(&self, h: &HopfStructure) -> Result<(), ConfigError> {
        let cap = self.max_n_envelope as usize;
        if h.dim() > cap * cap {
            return Err(ConfigError(format!(
                "A^e computations are limited to dim A <= {} (raise --max-n-envelope)",
                cap * cap
            )));
        }
        Ok(())
    }

    /// Resolution and diagonal to degree `top`.
    pub fn setting(&self, top: usize) -> Result<Setting, JobError> {
        self.validate()?;
        let custom = self.load_custom()?;
        let field = match &custom {
            Some(h) => h.field().clone(),
            None => self.build_field()?,
        };
        Ok(build_setting(&self.algebra, &field, custom, top, self.resolution, self.diagonal)?)
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

fn num_lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// One cup power `z^k` of the degree-2 generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupPower {
    pub power: usize,
    pub degree: usize,
    pub nonzero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub algebra: String,
    pub field: String,
    pub maxdeg: usize,
    pub resolution_dims: Vec<usize>,
    pub dims: Vec<usize>,
    pub cup_powers: Vec<CupPower>,
}

impl CohomologyTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,dim\n");
        for (i, d) in self.dims.iter().enumerate() {
            out.push_str(&format!("{i},{d}\n"));
        }
        out
    }
}

pub fn cmd_cohomology(cfg: &JobConfig) -> Result<CohomologyTable, JobError> {
    let s = cfg.setting(cfg.maxdeg + 1)?;
    let p = s.complex();
    let k = trivial_module(&s.hopf);
    let basis = cohomology_basis(p, &k, cfg.maxdeg)?;
    let dims = basis.dims();
    let mut cup_powers = Vec::new();
    if dims.len() > 2 && dims[2] == 1 {
        let z = Cocycle::new(p, 2, basis.classes[2][0].clone())?;
        let mut acc = z.clone();
        let mut power = 1;
        while acc.degree <= cfg.maxdeg {
            let nonzero = !basis.class_of(acc.degree, &acc.component)?.is_zero(p.field());
            cup_powers.push(CupPower { power, degree: acc.degree, nonzero });
            if acc.degree + 2 > cfg.maxdeg {
                break;
            }
            acc = cup(&acc, &z, &s.diagonal)?;
            power += 1;
        }
    }
    Ok(CohomologyTable {
        algebra: s.kind.name(),
        field: p.field().spec().to_text(),
        maxdeg: cfg.maxdeg,
        resolution_dims: p.dims().to_vec(),
        dims,
        cup_powers,
    })
}

pub fn cmd_bracket(cfg: &JobConfig) -> Result<BracketReport, JobError> {
    let s = cfg.setting(cfg.maxdeg + 1)?;
    Ok(bracket_table(&s, cfg.maxdeg, TableOptions { lifting: cfg.lifting, seed: cfg.seed() })?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub passed: bool,
    pub report: Report,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub field: String,
    pub maxdeg: usize,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,equation,degree,residual_zero\n");
        for s in &self.suites {
            let name = serde_json::to_value(s.suite).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            for c in &s.report.checks {
                let deg = c.degree.map(|d| d.to_string()).unwrap_or_default();
                out.push_str(&format!("{name},\"{}\",{deg},{}\n", c.equation.replace('"', "'"), c.residual_zero));
            }
        }
        out
    }
}

fn failure(name: &str, e: impl fmt::Display) -> Report {
    let mut r = Report::new(name);
    r.push(Check::new("suite ran", None, false).with_detail(e.to_string()));
    r
}

/// A cocycle to drive lifting and transport checks: the lowest positive
/// degree class, preferring degree 2.
fn probe_class(s: &Setting, maxdeg: usize) -> Result<Option<Cocycle>, JobError> {
    let p = s.complex();
    let k = trivial_module(&s.hopf);
    let b = cohomology_basis(p, &k, maxdeg)?;
    let deg = if b.dims().get(2).copied().unwrap_or(0) > 0 { Some(2) } else { (1..=maxdeg).find(|&i| b.dims()[i] > 0) };
    Ok(match deg {
        Some(d) => Some(Cocycle::new(p, d, b.classes[d][0].clone())?),
        None => None,
    })
}

fn run_suite(cfg: &JobConfig, suite: Suite) -> Result<Report, JobError> {
    let maxdeg = cfg.maxdeg;
    let mut rep = Report::new(format!("{suite:?}").to_lowercase());
    match suite {
        Suite::Resolution => {
            let s = cfg.setting(maxdeg + 1)?;
            let p = s.complex();
            rep.extend(p.verify_resolution(p.top().saturating_sub(1)));
            if let AlgebraKind::Taft(n) = s.kind {
                let r = taft_resolution(&s.hopf, n as usize, p.top())?;
                rep.extend(r.verify());
            }
        }
        Suite::Flatness => {
            // For tensor products P⊗P is large: exactness only, in low degrees.
            let big = matches!(cfg.algebra, AlgebraKind::TaftTensor(_));
            let hi = if big { maxdeg.min(3) } else { maxdeg.min(5) };
            let s = cfg.setting(hi + 1)?;
            rep.extend(power_flat_check(&s.hopf, s.complex(), 2, hi, !big)?);
        }
        Suite::Diagonal => {
            let s = cfg.setting(maxdeg + 1)?;
            rep.extend(s.diagonal.certify());
        }
        Suite::Cohomology => {
            let t = cmd_cohomology(cfg)?;
            for c in &t.cup_powers {
                rep.push(Check::at("z^k is a nonzero class", c.degree, c.nonzero));
            }
            rep.push(Check::new("H^0(A,k) = k", Some(0), t.dims[0] == 1).with_detail(format!("dims {:?}", t.dims)));
        }
        Suite::Liftings => {
            let s = cfg.setting(maxdeg + 1)?;
            if let Some(f) = probe_class(&s, maxdeg)? {
                for method in [LiftingMethod::Auto, LiftingMethod::Generic, LiftingMethod::Perturbed] {
                    let l = solve_homotopy_lifting(&f, &s.diagonal, method, cfg.seed())?;
                    for mut c in verify_lifting(&f, &s.diagonal, &l)?.checks {
                        c.equation = format!("{method:?}: {}", c.equation).to_lowercase();
                        rep.push(c);
                    }
                }
            }
        }
        Suite::Brackets => {
            let b = cmd_bracket(cfg)?;
            rep.push(Check::new("bracket table certified", None, b.certified()));
            rep.push(Check::new("graded antisymmetry of classes", None, b.antisymmetric));
            if !matches!(cfg.algebra, AlgebraKind::Custom(_)) {
                rep.push(Check::new("all bracket classes zero", None, b.all_zero));
            }
        }
        Suite::Functor => {
            let s = cfg.setting(maxdeg.max(4) + 1)?;
            cfg.envelope_allowed(&s.hopf)?;
            let env = Envelope::new(&s.hopf)?;
            let p = s.complex();
            let k = trivial_module(&s.hopf);
            rep.extend(verify_unit_identification(&env)?);
            rep.extend(verify_right_projectivity(&env)?);
            rep.extend(verify_monoidal(&env, &k, &k, &k, false)?);
            rep.extend(verify_monoidal(&env, p.module(0), p.module(1), p.module(0), false)?);
            let corrupted = verify_monoidal(&env, p.module(0), p.module(1), p.module(0), true)?;
            let caught = corrupted.first_failure().map(|c| c.equation.clone());
            rep.push(Check::new("corrupted η is detected", None, caught.is_some()).with_detail(caught.unwrap_or_default()));
            let id0 = Matrix::identity(p.field(), p.dim(0));
            rep.extend(verify_naturality(&env, (p.module(1), p.module(0), &p.d(1)), (p.module(0), p.module(0), &id0))?);
            let ir = induce_resolution(&env, p)?;
            rep.extend(ir.verify(maxdeg.max(4))?);
            if let Some(f) = probe_class(&s, maxdeg)? {
                for method in [LiftingMethod::Auto, LiftingMethod::Perturbed] {
                    let l = solve_homotopy_lifting(&f, &s.diagonal, method, cfg.seed())?;
                    rep.extend(transport_check(&env, &s.diagonal, &f, &l, maxdeg.max(4).min(p.top() - 1))?.report);
                }
            }
        }
        Suite::EckmannShapiro => {
            let s = cfg.setting(maxdeg + 1)?;
            cfg.envelope_allowed(&s.hopf)?;
            let env = Envelope::new(&s.hopf)?;
            let es = eckmann_shapiro_check(&env, s.complex(), maxdeg)?;
            rep.extend(es.report);
        }
        Suite::Determinism => {
            let a = serde_json::to_string(&cmd_bracket(cfg)?).expect("serializable");
            let b = serde_json::to_string(&cmd_bracket(cfg)?).expect("serializable");
            rep.push(Check::new("identical reruns give identical bytes", None, a == b));
        }
    }
    Ok(rep)
}

pub fn cmd_verify(cfg: &JobConfig) -> Result<VerifyReport, JobError> {
    cfg.validate()?;
    let field = match &cfg.algebra {
        AlgebraKind::Custom(_) => cfg.load_custom()?.map(|h| h.field().spec().to_text()).unwrap_or_default(),
        _ => cfg.build_field()?.spec().to_text(),
    };
    let mut suites = Vec::new();
    for &suite in &cfg.suites {
        let report = match run_suite(cfg, suite) {
            Ok(r) => r,
            Err(JobError::Config(e)) if suite.needs_envelope() && cfg.suites.len() > 1 => {
                let mut r = Report::new(format!("{suite:?}").to_lowercase());
                r.push(Check::new("skipped", None, true).with_detail(e.0));
                r
            }
            Err(JobError::Config(e)) => return Err(JobError::Config(e)),
            Err(e) => failure(&format!("{suite:?}"), e),
        };
        suites.push(SuiteResult { suite, passed: report.passed(), report });
    }
    let passed = suites.iter().all(|s| s.passed);
    Ok(VerifyReport { algebra: cfg.algebra.name(), field, maxdeg: cfg.maxdeg, seed: cfg.seed(), suites, passed })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InduceReport {
    pub algebra: String,
    pub field: String,
    pub envelope_dim: usize,
    pub induced_dims: Vec<usize>,
    pub hochschild_dims: Vec<usize>,
    pub adjoint_dims: Vec<usize>,
    pub reports: Vec<Report>,
    pub passed: bool,
}

impl InduceReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("report,equation,degree,residual_zero\n");
        for r in &self.reports {
            for c in &r.checks {
                let deg = c.degree.map(|d| d.to_string()).unwrap_or_default();
                out.push_str(&format!("\"{}\",\"{}\",{deg},{}\n", r.name, c.equation.replace('"', "'"), c.residual_zero));
            }
        }
        out
    }
}

pub fn cmd_induce(cfg: &JobConfig) -> Result<InduceReport, JobError> {
    let hi = cfg.maxdeg.max(2);
    let s = cfg.setting(hi + 1)?;
    cfg.envelope_allowed(&s.hopf)?;
    let env = Envelope::new(&s.hopf)?;
    let p = s.complex();
    let k = trivial_module(&s.hopf);
    let mut reports = vec![verify_unit_identification(&env)?, verify_monoidal(&env, &k, &k, &k, false)?];
    reports.push(verify_monoidal(&env, p.module(0), p.module(1), p.module(0), false)?);
    let id0 = Matrix::identity(p.field(), p.dim(0));
    reports.push(verify_naturality(&env, (p.module(1), p.module(0), &p.d(1)), (p.module(0), p.module(0), &id0))?);
    let mut induced_dims = induce_resolution(&env, p)?.complex.dims().to_vec();
    if let Some(f) = probe_class(&s, hi)? {
        let l = solve_homotopy_lifting(&f, &s.diagonal, cfg.lifting, cfg.seed())?;
        let t = transport_check(&env, &s.diagonal, &f, &l, hi)?;
        induced_dims = t.induced_dims;
        reports.push(t.report);
    }
    let es = eckmann_shapiro_check(&env, p, hi)?;
    reports.push(es.report);
    let passed = reports.iter().all(Report::passed);
    Ok(InduceReport {
        algebra: s.kind.name(),
        field: p.field().spec().to_text(),
        envelope_dim: env.algebra.dim(),
        induced_dims,
        hochschild_dims: es.bimodule_side,
        adjoint_dims: es.adjoint_side,
        reports,
        passed,
    })
}

/// Rendered output plus whether every certificate passed.
pub struct Rendered {
    pub text: String,
    pub passed: bool,
}

pub fn render<T: Serialize>(doc: &T, csv: impl FnOnce() -> String, format: Format, passed: bool) -> Rendered {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("serializable") + "\n",
        Format::Csv => csv(),
    };
    Rendered { text, passed }
}
