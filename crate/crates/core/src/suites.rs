//! Named verification suites and their reports.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::action::{self, linear_fundamental_vf, plane, sphere3};
use crate::bundle::{self, compare, BundleExample, Connection, PrincipalBundle};
use crate::chart::{Chart, ChartBuilder, RuleOrder};
use crate::coeff::{frac, i_unit, int, Coeff};
use crate::config::{Config, Format};
use crate::dupont::{DupontForm, DupontSpace};
use crate::equivariant::{key_string, EquivariantForm};
use crate::error::{Error, Result};
use crate::form::Form;
use crate::getzler::{cochain_vanishes, Cochain, Getzler};
use crate::lie::{gl2, sl2, InvariantPolynomial, TorusGroup};
use crate::oracle;
use crate::random::{Generator, Shape};
use crate::simplicial::{gamma_commutes, SimplicialSpace};
use crate::subst::Substitution;
use crate::theorem::{self, Pipeline};
use crate::vector_field::VectorField;

/// Outcome of one identity over all its samples.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub identity: String,
    pub samples: usize,
    /// First failing sample, pretty-printed.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }
}

#[derive(Default)]
struct Tally {
    checks: Vec<Check>,
}

impl Tally {
    fn record(&mut self, identity: &str, ok: bool, detail: impl FnOnce() -> String) {
        let pos = match self.checks.iter().position(|c| c.identity == identity) {
            Some(p) => p,
            None => {
                self.checks.push(Check { identity: identity.into(), samples: 0, failure: None });
                self.checks.len() - 1
            }
        };
        let c = &mut self.checks[pos];
        c.samples += 1;
        if !ok && c.failure.is_none() {
            c.failure = Some(detail());
        }
    }

    fn zero(&mut self, identity: &str, defect: &Form) {
        self.record(identity, defect.vanishes(), || first_term(defect));
    }

    fn equal(&mut self, identity: &str, a: &Form, b: &Form) {
        self.zero(identity, &(a - b));
    }

    fn zero_eq(&mut self, identity: &str, defect: &EquivariantForm) {
        self.record(identity, defect.vanishes(), || first_eq_term(defect));
    }

    fn equal_eq(&mut self, identity: &str, a: &EquivariantForm, b: &EquivariantForm) {
        self.zero_eq(identity, &(a - b));
    }

    fn zero_cochain(&mut self, identity: &str, defect: &Cochain) {
        self.record(identity, cochain_vanishes(defect), || {
            defect
                .iter()
                .find(|(_, w)| !w.vanishes())
                .map(|(p, w)| format!("level {p}: {}", first_eq_term(w)))
                .unwrap_or_default()
        });
    }

    fn result<T>(&mut self, identity: &str, r: Result<T>, ok: impl FnOnce(&T) -> bool) {
        match r {
            Ok(v) => {
                let passed = ok(&v);
                self.record(identity, passed, || "mismatch".into());
            }
            Err(e) => self.record(identity, false, || format!("error: {e}")),
        }
    }

    fn finish(self) -> Vec<Check> {
        self.checks
    }
}

/// The first nonzero term, on the canonical chart.
pub fn first_term(f: &Form) -> String {
    let c = f.canonical();
    let out = match c.terms().next() {
        Some((w, s)) => Form::from_map(c.chart(), BTreeMap::from([(*w, s.clone())])).to_plain(),
        None => "0".into(),
    };
    out
}

fn first_eq_term(w: &EquivariantForm) -> String {
    for (m, f) in w.components() {
        if !f.vanishes() {
            return format!("[{}] {}", key_string(m, w.dual()), first_term(f));
        }
    }
    "0".into()
}

type SuiteFn = fn(&Config) -> Result<Vec<Check>>;

/// Registered suites, sorted by name.
pub const SUITES: [(&str, SuiteFn); 13] = [
    ("algebra-hom", algebra_hom),
    ("cartan", cartan),
    ("chain-map", chain_map),
    ("chern-weil", chern_weil),
    ("double-complex", double_complex),
    ("exterior", exterior),
    ("getzler", getzler),
    ("lie", lie),
    ("main-theorem", main_theorem),
    ("moment-map", moment_map),
    ("numeric-oracle", numeric_oracle),
    ("simplex", simplex),
    ("universal", universal),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Seed for one suite, independent of which other suites run.
fn suite_seed(cfg: &Config, name: &str) -> u64 {
    name.bytes().fold(cfg.seed ^ 0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

pub fn run_suite(name: &str, cfg: &Config) -> Result<SuiteReport> {
    let (_, f) = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Config(format!("unknown suite `{name}`")))?;
    Ok(SuiteReport { name: name.into(), checks: f(cfg)? })
}

/// Expands `all`, rejects unknown names and sorts.
pub fn resolve(names: &[String]) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for n in names {
        if n == "all" {
            out.extend(suite_names());
        } else {
            let found = suite_names()
                .into_iter()
                .find(|s| s == n)
                .ok_or_else(|| Error::Config(format!("unknown suite `{n}`")))?;
            out.push(found);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Runs the configured suites in parallel; the report order is by name.
pub fn run(cfg: &Config) -> Result<Vec<SuiteReport>> {
    cfg.validate()?;
    let names = resolve(&cfg.suites)?;
    std::thread::scope(|s| {
        let handles: Vec<_> = names.iter().map(|n| s.spawn(move || run_suite(n, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}

pub fn exit_code(reports: &[SuiteReport]) -> i32 {
    if reports.iter().all(SuiteReport::passed) {
        0
    } else {
        1
    }
}

pub fn render(reports: &[SuiteReport], format: Format) -> String {
    match format {
        Format::Json => {
            let v: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "suite": r.name,
                        "passed": r.passed(),
                        "checks": r.checks.iter().map(|c| json!({
                            "identity": c.identity,
                            "samples": c.samples,
                            "passed": c.failure.is_none(),
                            "failure": c.failure,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            crate::export::to_text(&Value::Array(v))
        }
        Format::Plain | Format::Latex => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&format!("[{}] {}\n", if r.passed() { "PASS" } else { "FAIL" }, r.name));
                for c in &r.checks {
                    let status = if c.failure.is_none() { "ok  " } else { "FAIL" };
                    out.push_str(&format!("  {status} {} ({} samples)\n", c.identity, c.samples));
                    if let Some(f) = &c.failure {
                        out.push_str(&format!("       first failing term: {f}\n"));
                    }
                }
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            out.push_str(&format!("{} suites, {} failed\n", reports.len(), failed));
            out
        }
    }
}

fn random_element(g: &mut Generator, rank: usize) -> Vec<Coeff> {
    (0..rank).map(|_| g.coeff()).collect()
}

fn examples(cfg: &Config) -> Result<Vec<(String, BundleExample)>> {
    let names: Vec<&str> = match &cfg.example {
        Some(e) => vec![e.as_str()],
        None => bundle::BUNDLES.to_vec(),
    };
    names.into_iter().map(|n| Ok((n.to_string(), bundle::lookup(n)?))).collect()
}

fn polynomials() -> [InvariantPolynomial; 2] {
    [InvariantPolynomial::identity(), InvariantPolynomial::square()]
}

// ---------------------------------------------------------------------------

/// Fields tangent to `|z1|² + |z2|² = 1`.
fn sphere_fields(s3: &std::sync::Arc<Chart>) -> Result<Vec<VectorField>> {
    [
        vec![("z1", "i*z1"), ("zb1", "-i*zb1")],
        vec![("z2", "i*z2"), ("zb2", "-i*zb2")],
        vec![("z1", "-zb2"), ("z2", "zb1")],
        vec![("zb1", "-z2"), ("zb2", "z1")],
    ]
    .iter()
    .map(|parts| VectorField::parse(s3, parts))
    .collect()
}

fn exterior(cfg: &Config) -> Result<Vec<Check>> {
    let mut g = Generator::new(suite_seed(cfg, "exterior"));
    let mut t = Tally::default();
    let n = 5 * cfg.samples;
    let rot = action::rotation_plane();
    let levels = SimplicialSpace::action(&rot, 3)?;
    let s3 = sphere3("S3", &[]);
    let hopf = action::hopf_on(&s3)?;
    let tangent = sphere_fields(&s3)?;

    let r2 = plane();
    let mut charts: Vec<(String, std::sync::Arc<Chart>, Vec<Substitution>)> = vec![
        ("rotation-plane".into(), r2.clone(), vec![rot.substitution().clone(), rot.projection().clone()]),
        ("S3".into(), s3.clone(), vec![hopf.substitution().clone()]),
    ];
    for p in 1..=2 {
        let faces = (0..=p + 1).map(|i| levels.face(p + 1, i).cloned()).collect::<Result<Vec<_>>>()?;
        charts.push((format!("G^{p}xR2"), levels.level(p)?.clone(), faces));
    }

    for (name, chart, subs) in &charts {
        for k in 0..n {
            let f = g.form(chart);
            let x = if name == "S3" {
                let mut acc = VectorField::zero(chart);
                for v in &tangent {
                    acc = acc.add(&v.mul_scalar(&g.scalar(chart)))?;
                }
                acc
            } else {
                g.vector_field(chart)?
            };
            t.zero(&format!("d∘d = 0 on {name}"), &f.exterior_d().exterior_d());
            t.zero(&format!("ι(X)∘ι(X) = 0 on {name}"), &f.contract(&x)?.contract(&x)?);
            t.equal(&format!("L(X) = dι(X) + ι(X)d on {name}"), &f.lie_derivative(&x)?, &f.cartan_formula(&x)?);
            let mut subs_for = subs.clone();
            if name == "rotation-plane" {
                let images = (0..2).map(|_| g.scalar(chart)).collect();
                subs_for.push(Substitution::new(chart, chart, images)?);
            }
            let s = g.pick(&subs_for);
            t.equal(&format!("φ^*∘d = d∘φ^* on {name}"), &s.pullback(&f.exterior_d())?, &s.pullback(&f)?.exterior_d());
            if k % 10 == 0 {
                let err = oracle::exterior_d_error(&f, 3, g.rng());
                t.record(&format!("d against finite differences on {name}"), err <= 1e-6, || format!("relative error {err:e}"));
            }
        }
    }

    let s2 = bundle::hopf()?.bundle.base().clone();
    for chart in [&s3, &s2] {
        t.record(&format!("critical pairs resolve on {}", chart.name()), chart.unresolved_critical_pairs().is_empty(), || {
            format!("{:?}", chart.unresolved_critical_pairs())
        });
        for _ in 0..cfg.samples {
            let a = g.scalar(chart);
            let b = g.scalar(chart);
            let raw = a.mul_raw(&b);
            let fwd = chart.reduce_ordered(raw.clone(), RuleOrder::Forward);
            let rev = chart.reduce_ordered(raw, RuleOrder::Reverse);
            t.record(&format!("normal form independent of rule order on {}", chart.name()), fwd == rev, || {
                format!("{} vs {}", chart.fmt_scalar(&fwd), chart.fmt_scalar(&rev))
            });
        }
    }
    Ok(t.finish())
}

// ---------------------------------------------------------------------------

fn cartan(cfg: &Config) -> Result<Vec<Check>> {
    let mut g = Generator::new(suite_seed(cfg, "cartan"));
    let mut t = Tally::default();
    let n = 3 * cfg.samples;
    for name in action::ACTIONS {
        let act = action::lookup(name)?;
        let space = act.space().clone();
        let dual = act.group.algebra.dual.clone();
        let mut equivariant = 0;
        for k in 0..n {
            let mut w = g.equivariant(&space, &dual);
            if k % 2 == 0 {
                w = w.map(|f| act.average(f).expect("average of a form on the action's space"));
            }
            let x = random_element(&mut g, act.group.rank());
            t.equal(
                &format!("d_C² = L(X♯) on {name}"),
                &w.cartan_d_defect(&act, &x)?,
                &w.lie_defect(&act, &x)?,
            );
            if w.check_equivariance(&act)? {
                equivariant += 1;
                let dd = w.cartan_d(&act)?.cartan_d(&act)?;
                t.zero_eq(&format!("d_C² = 0 on equivariant forms on {name}"), &dd);
            }
        }
        t.record(&format!("equivariant samples generated on {name}"), equivariant >= n / 2, || {
            format!("only {equivariant} of {n}")
        });
    }
    let act = action::rotation_plane();
    let area = crate::equivariant::plane_area_form(&act)?;
    t.zero_eq("area form dx∧dy + ½r²X is d_C-closed", &area.cartan_d(&act)?);
    Ok(t.finish())
}

// ---------------------------------------------------------------------------

fn double_complex(cfg: &Config) -> Result<Vec<Check>> {
    let mut g = Generator::new(suite_seed(cfg, "double-complex"));
    let mut t = Tally::default();
    let rot = action::rotation_plane();
    let space = SimplicialSpace::action(&rot, cfg.p_max)?;
    let u1 = TorusGroup::u1();
    let nk = SimplicialSpace::nerve(&u1, cfg.p_max)?;
    let bar = SimplicialSpace::bar(&u1, cfg.p_max)?;
    for (label, s) in [("G^•×R2", &space), ("NK", &nk), ("N̄K", &bar)] {
        let bad = s.relation_failures();
        t.record(&format!("simplicial identities of {label}"), bad.is_empty(), || bad.join(", "));
    }
    t.result("γ commutes with faces", gamma_commutes(&nk, &bar), |ok| *ok);
    for p in 0..=cfg.p_max - 2 {
        let chart = space.level(p)?.clone();
        for _ in 0..cfg.samples {
            let w = g.form(&chart);
            let dd = space.del(p + 1, &space.del(p, &w)?)?;
            t.zero(&format!("∂∘∂ = 0 from level {p}"), &dd);
            for (q, part) in space.double_complex_defect(p, &w)?.iter().enumerate() {
                t.zero(&format!("(d + (-1)^q ∂)² = 0 from level {p}, component {}", p + q), part);
            }
        }
    }
    Ok(t.finish())
}

// ---------------------------------------------------------------------------

/// A random Getzler cochain: no group differentials, polynomial degree ≤ 2.
fn random_cochain(g: &mut Generator, gz: &Getzler, p: usize) -> Result<EquivariantForm> {
    let chart = gz.level(p)?.clone();
    let mask = gz.space().group_mask(p);
    let pool: Vec<usize> = (0..chart.nvars()).filter(|&v| chart.has_differential(v) && mask & (1 << v) == 0).collect();
    let mut out = EquivariantForm::zero(&chart, gz.dual());
    for pdeg in 0..=2 {
        let deg = rand::Rng::random_range(g.rng(), 0..=pool.len().min(3));
        out.add_component(vec![0; pdeg], g.form_with(&chart, deg, &pool, None));
    }
    Ok(out)
}

fn getzler(cfg: &Config) -> Result<Vec<Check>> {
    let mut g = Generator::new(suite_seed(cfg, "getzler"));
    let mut t = Tally::default();
    let gz = Getzler::new(&action::rotation_plane(), cfg.p_max)?;
    let max = cfg.p_max;
    let lie_sign = if cfg.corrupt_sign { 1 } else { -1 };
    for p in 0..=max {
        for _ in 0..cfg.samples {
            let f = random_cochain(&mut g, &gz, p)?;
            if p + 2 <= max {
                t.zero_eq(&format!("d̄² = 0 at level {p}"), &gz.dbar(p + 1, &gz.dbar(p, &f)?)?);
            }
            if p >= 2 {
                t.zero_eq(&format!("ῑ² = 0 at level {p}"), &gz.iota_bar(p - 1, &gz.iota_bar(p, &f)?)?);
            }
            if p < max {
                let mut lhs = gz.iota_bar(p + 1, &gz.dbar(p, &f)?)?;
                if p > 0 {
                    lhs = &lhs + &gz.dbar(p - 1, &gz.iota_bar(p, &f)?)?;
                }
                t.equal_eq(&format!("d̄ῑ + ῑd̄ = -L at level {p}"), &lhs, &gz.lie(p, &f)?.scale(&int(lie_sign)));
                let mut c = Cochain::new();
                c.insert(p, f.clone());
                t.zero_cochain(&format!("d_G² = 0 from level {p}"), &gz.d_total(&gz.d_total(&c)?)?);
            }
            if p + 2 <= max {
                let closed = gz.dbar(p, &f)?;
                let back = gz.dbar(p, &gz.integrate_group(p + 1, &closed)?)?;
                t.equal_eq(&format!("d̄∫_G f = f for d̄-closed f at level {}", p + 1), &back, &closed);
            }
            if p >= 1 && p < max {
                let h = &gz.integrate_group(p + 1, &gz.dbar(p, &f)?)? + &gz.dbar(p - 1, &gz.integrate_group(p, &f)?)?;
                t.equal_eq(&format!("∫_G d̄ + d̄∫_G = id at level {p}"), &h, &f);
            }
        }
    }
    Ok(t.finish())
}

// ---------------------------------------------------------------------------

fn chain_map(cfg: &Config) -> Result<Vec<Check>> {
    let mut g = Generator::new(suite_seed(cfg, "chain-map"));
    let mut t = Tally::default();
    let gz = Getzler::new(&action::rotation_plane(), cfg.p_max)?;
    let names = ["𝒥∂ = (d̄ + (-1)^k ι)𝒥", "𝒥((-1)^p d_M) = (-1)^k d𝒥", "𝒥((-1)^p d_G) = ῑ𝒥"];
    for p in 0..=2.min(cfg.p_max - 1) {
        let chart = gz.level(p)?.clone();
        for _ in 0..cfg.samples {
            let w = g.form(&chart);
            for (name, defect) in names.iter().zip(gz.identity_defects(p, &w)?) {
                t.zero_cochain(&format!("{name} at level {p}"), &defect);
            }
            t.zero_cochain(&format!("𝒥(δ + (-1)^p d) = d_G𝒥 at level {p}"), &gz.chain_map_defect(p, &w)?);
            let j = gz.j_map(p, &w)?;
            let constrained = j.iter().all(|(k, v)| v.components().all(|(_, f)| f.terms().all(|(wd, _)| wd & gz.space().group_mask(*k) == 0)));
            t.record(&format!("𝒥 output has no group differentials at level {p}"), constrained, || "group differential".into());
        }
    }
    Ok(t.finish())
}

// ---------------------------------------------------------------------------

/// Small shapes keep products over `Δ^p × G^p × M` tractable.
const DUPONT_SHAPE: Shape = Shape { terms: 2, degree: 1, coeff: 3 };

fn simplex(cfg: &Config) -> Result<Vec<Check>> {
    let mut g = Generator::with_shape(suite_seed(cfg, "simplex"), DUPONT_SHAPE);
    let mut t = Tally::default();
    let rot = action::rotation_plane();
    let big = DupontSpace::new(SimplicialSpace::action(&rot, 5)?)?;
    let mut fact = 1;
    for p in 0..=5 {
        if p > 0 {
            fact *= p as i64;
        }
        let vol = (1..=p).fold(Form::one(big.chart(p)?), |acc, j| {
            acc.wedge(&Form::generator(big.chart(p).unwrap(), &format!("t{j}")).unwrap()).unwrap()
        });
        let got = big.integrate(p, &vol)?;
        t.equal(&format!("vol Δ^{p} = 1/{p}!"), &got, &Form::constant(big.base().level(p)?, frac(1, fact)));
    }
    let t0 = Form::scalar(big.chart(1)?, big.barycentric(1, 0)?).wedge(&Form::generator(big.chart(1)?, "t1")?)?;
    t.equal("∫_{Δ¹} t₀ dt₁ = 1/2", &big.integrate(1, &t0)?, &Form::constant(big.base().level(1)?, frac(1, 2)));
    let space = DupontSpace::new(SimplicialSpace::action(&rot, cfg.p_max)?)?;
    let m = rot.space().clone();
    for _ in 0..cfg.samples.div_ceil(4).max(2) {
        let compatible = |w: &DupontForm| space.incompatibilities(w).map(|v| v.is_empty()).unwrap_or(false);
        let (w1, _) = g.dupont_pair(&space, &m)?;
        let (_, dw2) = g.dupont_pair(&space, &m)?;
        let (w3, _) = g.dupont_pair(&space, &m)?;
        t.record("barycentric extensions are Dupont forms", compatible(&w1) && compatible(&dw2), || "face mismatch".into());
        let prod = space.wedge(&w1, &dw2)?;
        t.record("∧ preserves compatibility", compatible(&prod), || "face mismatch".into());
        let a: DupontForm = prod.iter().zip(&w3).map(|(x, y)| x + y).collect();
        t.record("d preserves compatibility", compatible(&space.exterior_d(&a)), || "face mismatch".into());
        let da = space.exterior_d(&a);
        let int_da = space.integrate_all(&da)?;
        let int_a = space.integrate_all(&a)?;
        for p in 1..=cfg.p_max {
            let d_part = int_a[p].exterior_d().scale(&int(if p % 2 == 0 { 1 } else { -1 }));
            let faces = space.base().del(p - 1, &int_a[p - 1])?;
            t.equal(&format!("∫_Δ d = (-1)^p d∫_Δ + ∂∫_Δ at level {p}"), &int_da[p], &(&d_part + &faces));
        }
    }

    for (name, ex) in examples(cfg)? {
        let d = DupontSpace::new(SimplicialSpace::action(&ex.bundle.g_total, cfg.p_max)?)?;
        let theta = d.simplicial_connection(&ex.bundle, &ex.connection)?;
        let comp: DupontForm = theta.iter().map(|c| c.components[0].clone()).collect();
        let bad = d.incompatibilities(&comp)?;
        t.record(&format!("Θ is a Dupont form on {name}"), bad.is_empty(), || format!("{bad:?}"));
        let base = Substitution::by_name(ex.bundle.total(), d.chart(0)?)?.pullback(&ex.connection.components[0])?;
        t.equal(&format!("Θ^(0) = ϑ on {name}"), &comp[0], &base);
    }

    let u1 = structure_torus();
    let bar = DupontSpace::new(SimplicialSpace::bar(&u1, cfg.p_max)?)?;
    let theta_bar = bar.universal_connection(&u1)?;
    let comp: DupontForm = theta_bar.iter().map(|c| c.components[0].clone()).collect();
    let bad = bar.incompatibilities(&comp)?;
    t.record("ϑ̄ is a Dupont form on N̄K", bad.is_empty(), || format!("{bad:?}"));
    for (p, w) in comp.iter().enumerate() {
        let chart = bar.chart(p)?;
        let mut coeffs = BTreeMap::new();
        for j in 0..=p {
            let name = bar.base().slot_name(j, 0);
            coeffs.insert(chart.require(&name)?, chart.var_scalar(&name)?.scale(&i_unit()));
        }
        let y = VectorField::new(chart, coeffs)?;
        t.equal(&format!("ι(Y♯)ϑ̄ = i at level {p}"), &w.contract(&y)?, &Form::constant(chart, i_unit()));
        t.zero(&format!("L(Y♯)ϑ̄ = 0 at level {p}"), &w.lie_derivative(&y)?);
    }
    Ok(t.finish())
}

fn structure_torus() -> TorusGroup {
    TorusGroup::new("K", &["h"], &["f"], &["Y"]).expect("static torus")
}

// ---------------------------------------------------------------------------

/// A `G`-invariant 1-form on the base, pulled back to `E`.
fn basic_perturbation(g: &mut Generator, b: &PrincipalBundle) -> Result<Form> {
    let base = b.base().clone();
    let alpha = b.g_base.average(&g.form_of_degree(&base, 1))?;
    b.projection.pullback(&alpha)
}

fn chern_weil(cfg: &Config) -> Result<Vec<Check>> {
    let mut g = Generator::new(suite_seed(cfg, "chern-weil"));
    let mut t = Tally::default();
    for (name, ex) in examples(cfg)? {
        let b = &ex.bundle;
        let th0 = &ex.connection;
        for p in polynomials() {
            let pn = &p.name;
            let cf = b.char_form(&p, th0)?;
            t.result(&format!("P(Ω+μ) is basic [{name}, {pn}]"), b.is_basic(&cf), |ok| *ok);
            t.zero_eq(&format!("d_C P(Ω+μ) = 0 [{name}, {pn}]"), &cf.cartan_d(&b.g_total)?);
            t.zero(&format!("d P(Ω) = 0 [{name}, {pn}]"), &b.chern_weil_form(&p, th0)?.exterior_d());
        }
        for _ in 0..cfg.samples.div_ceil(5) {
            let th1 = Connection::single(&th0.components[0] + &basic_perturbation(&mut g, b)?);
            let th2 = Connection::single(&th0.components[0] + &basic_perturbation(&mut g, b)?);
            for p in polynomials() {
                let pn = &p.name;
                let tr = b.transgression(&p, th0, &th1)?;
                let rhs = &b.char_form(&p, &th1)? - &b.char_form(&p, th0)?;
                t.equal_eq(&format!("d_C ω̃(ϑ₁,ϑ₀) = P(ϑ₁) - P(ϑ₀) [{name}, {pn}]"), &tr.cartan_d(&b.g_total)?, &rhs);
                let cocycle = &(&b.transgression(&p, &th1, &th2)? + &tr) - &b.transgression(&p, th0, &th2)?;
                let tri = b.transgression_triangle(&p, [th0, &th1, &th2])?.cartan_d(&b.g_total)?;
                t.zero_eq(&format!("ω̃(ϑ₂,ϑ₁) + ω̃(ϑ₁,ϑ₀) - ω̃(ϑ₂,ϑ₀) = -d_C∫_{{Δ²}} [{name}, {pn}]"), &(&cocycle + &tri));
            }
        }
        let id = InvariantPolynomial::identity();
        for q in polynomials() {
            let prod = id.mul(&q)?;
            let lhs = b.char_form(&prod, th0)?;
            let rhs = b.char_form(&id, th0)?.wedge(&b.char_form(&q, th0)?)?;
            t.equal_eq(&format!("P·Q ↦ P(Ω+μ)∧Q(Ω+μ) [{name}, id·{}]", q.name), &lhs, &rhs);
        }
        if name == "trivial-r2" {
            naturality(&ex, &mut t)?;
        }
    }
    Ok(t.finish())
}

/// `P(Ω^{f^*ϑ}) = f^*P(Ω^ϑ)` along `ℝ¹ ↪ ℝ²` and along `z ↦ z²`.
fn naturality(ex: &BundleExample, t: &mut Tally) -> Result<()> {
    let e = ex.bundle.total().clone();
    let line = ChartBuilder::new("E1").real("x").unit("k").formal("tau").build()?;
    let maps = [
        ("ℝ¹ ↪ ℝ²", Substitution::parse(&e, &line, &[("x", "x"), ("y", "0"), ("k", "k"), ("tau", "tau")])?),
        ("z ↦ z²", Substitution::parse(&e, &e, &[("x", "x^2 - y^2"), ("y", "2*x*y"), ("k", "k"), ("tau", "tau")])?),
    ];
    for (label, f) in maps {
        for p in polynomials() {
            let pulled = ex.connection.pullback(&f)?;
            let lhs = p.evaluate_diagonal(&pulled.curvature())?;
            let rhs = f.pullback(&p.evaluate_diagonal(&ex.connection.curvature())?)?;
            t.equal(&format!("pullback naturality along {label} [{}]", p.name), &lhs, &rhs);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------

fn main_theorem(cfg: &Config) -> Result<Vec<Check>> {
    let mut t = Tally::default();
    let cases: Vec<(&str, InvariantPolynomial)> = vec![
        ("trivial-r2", InvariantPolynomial::identity()),
        ("trivial-r2", InvariantPolynomial::square()),
        ("hopf", InvariantPolynomial::identity()),
        ("weighted-hopf", InvariantPolynomial::identity()),
    ];
    for (name, p) in cases {
        if cfg.example.as_deref().is_some_and(|e| e != name) {
            continue;
        }
        let ex = bundle::lookup(name)?;
        match theorem::classform_check(&ex.bundle, &p, &ex.connection, cfg.p_max) {
            Ok(o) => t.record(&format!("pr₀𝒥∫_Δ ω_P(Θ) = P(Ω+μ) [{name}, {}]", p.name), o.passed(), || {
                o.mismatch().unwrap_or_default()
            }),
            Err(e) => t.record(&format!("pr₀𝒥∫_Δ ω_P(Θ) = P(Ω+μ) [{name}, {}]", p.name), false, || e.to_string()),
        }
    }
    if cfg.example.as_deref().is_none_or(|e| e == "trivial-r2") {
        let ex = bundle::lookup("trivial-r2")?;
        let b = crate::compute::with_trivial_action(&ex.bundle)?;
        let p = InvariantPolynomial::identity();
        let o = theorem::classform_check(&b, &p, &ex.connection, cfg.p_max)?;
        t.record("pr₀𝒥∫_Δ ω_P(Θ) = P(Ω+μ) [trivial-r2, trivial G, id]", o.passed(), || o.mismatch().unwrap_or_default());
        let plain = EquivariantForm::from_form(b.chern_weil_form(&p, &ex.connection)?, b.g_dual());
        t.equal_eq("trivial G-action gives P(Ω)", &o.simplicial, &plain);
    }
    Ok(t.finish())
}

// ---------------------------------------------------------------------------

fn algebra_hom(cfg: &Config) -> Result<Vec<Check>> {
    let mut g = Generator::with_shape(suite_seed(cfg, "algebra-hom"), DUPONT_SHAPE);
    let mut t = Tally::default();
    let act = action::rotation_plane();
    let pipe = Pipeline::new(&act, cfg.p_max)?;
    let m = act.space().clone();
    let n = (cfg.samples / 2).max(10);
    for k in 0..n {
        let (w1, dw1) = g.dupont_pair(&pipe.dupont, &m)?;
        let (w2, dw2) = g.dupont_pair(&pipe.dupont, &m)?;
        let (a, b) = match k % 4 {
            0 => (w1, w2),
            1 => (w1, dw2),
            2 => (dw1, dw2),
            _ => (pipe.dupont.wedge(&w1, &dw1)?, dw2),
        };
        let o = theorem::algebra_hom_check(&pipe, &a, &b)?;
        t.record("pr₀𝒥∫_Δ(ω₁∧ω₂) = pr₀𝒥∫_Δω₁ ∧ pr₀𝒥∫_Δω₂", o.passed(), || o.mismatch().unwrap_or_default());
        let one: DupontForm = (0..=cfg.p_max).map(|p| Ok(Form::one(pipe.dupont.chart(p)?))).collect::<Result<_>>()?;
        let o = theorem::algebra_hom_check(&pipe, &a, &one)?;
        t.record("unit factor", o.passed(), || o.mismatch().unwrap_or_default());
    }
    Ok(t.finish())
}

// ---------------------------------------------------------------------------

fn moment_map(cfg: &Config) -> Result<Vec<Check>> {
    let mut t = Tally::default();
    for (name, ex) in examples(cfg)? {
        let c = compare(&ex.bundle, &ex.line_connection, &ex.line, &ex.frame)?;
        t.record(&format!("dϑ + ϑ∧ϑ = R^∇ [{name}]"), c.curvature.is_none(), || c.curvature.clone().unwrap_or_default());
        t.record(&format!("μ^ϑ = μ^∇ [{name}]"), c.moment.is_none(), || c.moment.clone().unwrap_or_default());
    }
    Ok(t.finish())
}

// ---------------------------------------------------------------------------

fn universal(cfg: &Config) -> Result<Vec<Check>> {
    let mut t = Tally::default();
    let k = structure_torus();
    for p in polynomials().into_iter().chain([InvariantPolynomial::zero(1, 1)]) {
        let label = format!("pr₀𝒥∫_Δ ω_P(ϑ̄) = P [{}]", p.name);
        match theorem::universal_inverse_check(&k, &p, cfg.p_max) {
            Ok(o) => t.record(&label, o.passed(), || o.mismatch().unwrap_or_default()),
            Err(e) => t.record(&label, false, || e.to_string()),
        }
    }
    let act = theorem::left_translation(&k)?;
    let pipe = Pipeline::new(&act, cfg.p_max)?;
    let bar = DupontSpace::new(SimplicialSpace::bar(&k, cfg.p_max)?)?;
    let theta_bar = bar.universal_connection(&k)?;
    let mc = &k.maurer_cartan()[0];
    let expected = pipe.dupont.barycentric_extension(&|p, i| pipe.dupont.vertex_map(p, i), mc)?;
    for (p, c) in theta_bar.iter().enumerate() {
        let moved = theorem::bar_transport(&bar, &pipe.dupont, &k, p)?.pullback(&c.components[0])?;
        t.equal(&format!("ϑ̄ transported to G^•×K is Σ t_i ϑ_i at level {p}"), &moved, &expected[p]);
    }
    Ok(t.finish())
}

// ---------------------------------------------------------------------------

fn numeric_oracle(cfg: &Config) -> Result<Vec<Check>> {
    let mut g = Generator::new(suite_seed(cfg, "numeric-oracle"));
    let mut t = Tally::default();
    let points = cfg.samples.max(50);
    for (name, ex) in examples(cfg)? {
        for p in polynomials() {
            let r = oracle::cross_check(&ex, &p, points, g.rng())?;
            t.record(&format!("curvature vs finite differences [{name}]"), r.curvature <= 1e-6, || format!("relative error {:e}", r.curvature));
            t.record(&format!("P(Ω+μ) vs finite differences [{name}, {}]", p.name), r.char_form <= 1e-6, || {
                format!("relative error {:e}", r.char_form)
            });
        }
    }
    Ok(t.finish())
}

// ---------------------------------------------------------------------------

fn lie(_cfg: &Config) -> Result<Vec<Check>> {
    let mut t = Tally::default();
    for alg in [sl2(), gl2(), TorusGroup::u1().algebra, TorusGroup::torus2().algebra] {
        t.record(&format!("antisymmetry of {}", alg.name), alg.antisymmetric(), || "bracket".into());
        t.record(&format!("Jacobi identity of {}", alg.name), alg.jacobi_holds(), || "bracket".into());
    }
    let g2 = gl2();
    for q in 1..=3 {
        let p = InvariantPolynomial::trace_power(&g2, q)?;
        t.record(&format!("tr(X^{q}) is Ad-invariant on gl2"), p.infinitesimally_invariant(&g2), || "nonzero".into());
    }
    for p in polynomials() {
        t.record(&format!("{} is invariant on u1", p.name), p.infinitesimally_invariant(&TorusGroup::u1().algebra), || "nonzero".into());
    }
    // X ↦ X♯ for the linear action reverses brackets.
    let s = sl2();
    let c = ChartBuilder::new("R2ab").real("a").real("b").build()?;
    let sharp = |x: &Vec<Coeff>| linear_fundamental_vf(&c, &["a", "b"], &s.element_matrix(x).expect("matrix algebra"));
    for i in 0..s.dim() {
        for j in 0..s.dim() {
            let (x, y) = (s.basis_element(i), s.basis_element(j));
            let lhs = sharp(&x)?.bracket(&sharp(&y)?)?;
            let rhs = sharp(&s.bracket(&x, &y)?)?.scale(&int(-1));
            t.record("[X♯, Y♯] = -[X, Y]♯ on sl2 acting on ℝ²", lhs == rhs, || format!("{} vs {}", lhs.to_plain(), rhs.to_plain()));
        }
    }
    for name in action::ACTIONS {
        let a = action::lookup(name)?;
        t.record(&format!("e·m = m for {name}"), a.identity_holds(), || "identity".into());
        t.result(&format!("g·(h·m) = (gh)·m for {name}"), a.associativity_holds(), |ok| *ok);
    }
    Ok(t.finish())
}
