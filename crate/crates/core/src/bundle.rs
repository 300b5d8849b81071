//! Equivariant principal torus bundles, connections, and Chern–Weil forms.

use std::sync::Arc;

use crate::action::{self, Action};
use crate::chart::{ensure_same, Chart, ChartBuilder};
use crate::coeff::{i_unit, int};
use crate::equivariant::EquivariantForm;
use crate::error::{Error, Result};
use crate::form::Form;
use crate::lie::{Element, InvariantPolynomial, TorusGroup};
use crate::scalar::Scalar;
use crate::subst::Substitution;
use crate::vector_field::VectorField;

/// A `G`-equivariant principal `K`-bundle `E → M` given in coordinates.
#[derive(Clone, Debug)]
pub struct PrincipalBundle {
    pub name: String,
    pub structure: TorusGroup,
    /// Right `K`-action on `E`.
    pub k_action: Action,
    /// `G`-action on `E`.
    pub g_total: Action,
    /// `G`-action on `M`.
    pub g_base: Action,
    /// `π^*: M → E`.
    pub projection: Substitution,
}

/// A `𝔨`-valued 1-form, one complex-valued component per basis element of `𝔨`.
/// Basis elements of `𝔲(1)` are `i`, so vertical normalization reads
/// `ι(Y_a♯) ϑ_b = i δ_ab`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    pub components: Vec<Form>,
}

impl Connection {
    pub fn new(components: Vec<Form>) -> Self {
        Connection { components }
    }

    pub fn single(form: Form) -> Self {
        Connection { components: vec![form] }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.components[0].chart()
    }

    pub fn pullback(&self, sub: &Substitution) -> Result<Connection> {
        Ok(Connection { components: self.components.iter().map(|f| sub.pullback(f)).collect::<Result<_>>()? })
    }

    /// `(1-t)ϑ₀ + tϑ₁` for a scalar `t` on the common chart.
    pub fn convex(a: &Connection, b: &Connection, t: &Scalar) -> Result<Connection> {
        let chart = a.chart().clone();
        ensure_same(&chart, b.chart())?;
        let one_minus = &chart.one() - t;
        Ok(Connection {
            components: a
                .components
                .iter()
                .zip(&b.components)
                .map(|(x, y)| &x.mul_scalar(&one_minus) + &y.mul_scalar(t))
                .collect(),
        })
    }

    /// Curvature; for abelian structure groups `Ω = dϑ` componentwise.
    pub fn curvature(&self) -> Vec<Form> {
        self.components.iter().map(Form::exterior_d).collect()
    }

    pub fn same_as(&self, other: &Connection) -> bool {
        self.components.len() == other.components.len()
            && self.components.iter().zip(&other.components).all(|(a, b)| a.same_as(b))
    }
}

impl PrincipalBundle {
    pub fn total(&self) -> &Arc<Chart> {
        self.k_action.space()
    }

    pub fn base(&self) -> &Arc<Chart> {
        self.g_base.space()
    }

    pub fn g_dual(&self) -> &[String] {
        &self.g_total.group.algebra.dual
    }

    /// `π(gx) = gπ(x)` as substitution identities over `G×E`.
    pub fn projection_equivariant(&self) -> Result<bool> {
        let pe = self.g_total.product();
        let g: Vec<Scalar> = self.g_total.group.vars.iter().map(|v| pe.var_scalar(v)).collect::<Result<_>>()?;
        let embed = self.g_total.projection();
        let pi_x: Vec<Scalar> = self.projection.images().iter().map(|s| embed.apply(s)).collect();
        let lhs = self.g_base.act_on(pe, &g, &pi_x)?;
        let gx = Substitution::unchecked(self.total(), pe, self.g_total.substitution().images().to_vec());
        let rhs: Vec<Scalar> = self.projection.images().iter().map(|s| gx.apply(s)).collect();
        Ok(lhs.iter().zip(&rhs).all(|(l, r)| Form::scalar(pe, l - r).vanishes()))
    }

    /// `(gx)k = g(xk)` on `G×K×E`.
    pub fn actions_commute(&self) -> Result<bool> {
        let e = self.total();
        let both = Chart::product(
            &format!("{}-GK", self.name),
            &[self.g_total.group.chart(), self.structure.chart(), e],
        )?;
        let vars = |grp: &TorusGroup| grp.vars.iter().map(|v| both.var_scalar(v)).collect::<Result<Vec<_>>>();
        let (g, k) = (vars(&self.g_total.group)?, vars(&self.structure)?);
        let x: Vec<Scalar> = e.vars().iter().map(|v| both.var_scalar(&v.name)).collect::<Result<_>>()?;
        let gx_k = self.k_action.act_on(&both, &k, &self.g_total.act_on(&both, &g, &x)?)?;
        let g_xk = self.g_total.act_on(&both, &g, &self.k_action.act_on(&both, &k, &x)?)?;
        Ok(gx_k.iter().zip(&g_xk).all(|(l, r)| Form::scalar(&both, l - r).vanishes()))
    }

    pub fn vertical_normalized(&self, theta: &Connection) -> Result<bool> {
        for a in 0..self.structure.rank() {
            let y = self.k_action.fundamental_basis(a);
            for (b, c) in theta.components.iter().enumerate() {
                let want = if a == b { i_unit() } else { int(0) };
                if !(&c.contract(&y)? - &Form::constant(c.chart(), want)).vanishes() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn k_invariant(&self, forms: &[Form]) -> Result<bool> {
        for f in forms {
            if !self.k_action.is_invariant(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn g_invariant(&self, theta: &Connection) -> Result<bool> {
        for f in &theta.components {
            if !self.g_total.is_invariant(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Killed by every `K`-vertical contraction.
    pub fn horizontal(&self, forms: &[Form]) -> Result<bool> {
        for a in 0..self.structure.rank() {
            let y = self.k_action.fundamental_basis(a);
            for f in forms {
                if !f.contract(&y)?.vanishes() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `μ(X) = ι(X♯)ϑ`, one component per basis element of `𝔨`.
    pub fn moment_map(&self, theta: &Connection, x: &Element) -> Result<Vec<Form>> {
        let xs = self.g_total.fundamental_vf(x)?;
        theta.components.iter().map(|c| c.contract(&xs)).collect()
    }

    /// `μ` as a polynomial map on `𝔤`, one equivariant form per `𝔨`-component.
    pub fn moment_map_poly(&self, theta: &Connection) -> Result<Vec<EquivariantForm>> {
        self.moment_map_on(&self.g_total, theta)
    }

    fn moment_map_on(&self, g: &Action, theta: &Connection) -> Result<Vec<EquivariantForm>> {
        let dual = &g.group.algebra.dual;
        let fields: Vec<VectorField> = (0..g.group.rank()).map(|a| g.fundamental_basis(a)).collect();
        theta
            .components
            .iter()
            .map(|c| {
                let comps = fields.iter().enumerate().map(|(a, f)| Ok((vec![a], c.contract(f)?))).collect::<Result<_>>()?;
                EquivariantForm::from_components(c.chart(), dual, comps)
            })
            .collect()
    }

    /// `Ω + μ` per `𝔨`-component.
    pub fn equivariant_curvature(&self, theta: &Connection) -> Result<Vec<EquivariantForm>> {
        self.equivariant_curvature_on(&self.g_total, theta)
    }

    fn equivariant_curvature_on(&self, g: &Action, theta: &Connection) -> Result<Vec<EquivariantForm>> {
        let dual = &g.group.algebra.dual;
        let mu = self.moment_map_on(g, theta)?;
        Ok(theta
            .curvature()
            .into_iter()
            .zip(mu)
            .map(|(om, m)| &EquivariantForm::from_form(om, dual) + &m)
            .collect())
    }

    /// `P(Ω + μ)` on `E`; fails for connections that are not `G`-invariant.
    pub fn char_form(&self, p: &InvariantPolynomial, theta: &Connection) -> Result<EquivariantForm> {
        if !self.g_invariant(theta)? {
            return Err(Error::NotInvariant(format!("connection on `{}`", self.name)));
        }
        p.evaluate_diagonal(&self.equivariant_curvature(theta)?)
    }

    /// The non-equivariant `P(Ω)`; no invariance needed.
    pub fn chern_weil_form(&self, p: &InvariantPolynomial, theta: &Connection) -> Result<Form> {
        p.evaluate_diagonal(&theta.curvature())
    }

    /// Basic: `K`-invariant and horizontal, componentwise.
    pub fn is_basic(&self, w: &EquivariantForm) -> Result<bool> {
        let forms: Vec<Form> = w.components().map(|(_, f)| f.clone()).collect();
        Ok(self.k_invariant(&forms)? && self.horizontal(&forms)?)
    }

    /// `∫_0^1 P(Ω_t + μ_t) dt` along `ϑ_t = (1-t)ϑ₀ + tϑ₁`.
    pub fn transgression(&self, p: &InvariantPolynomial, t0: &Connection, t1: &Connection) -> Result<EquivariantForm> {
        let e = self.total();
        ensure_same(e, t0.chart())?;
        ensure_same(e, t1.chart())?;
        for th in [t0, t1] {
            if !self.g_invariant(th)? {
                return Err(Error::NotInvariant(format!("connection on `{}`", self.name)));
            }
        }
        let interval = ChartBuilder::new("I").real("t").build()?;
        let g_ext = self.g_total.extend(&interval)?;
        let ext = g_ext.space().clone();
        let up = Substitution::by_name(e, &ext)?;
        let t = ext.var_scalar("t")?;
        let theta_t = Connection::convex(&t0.pullback(&up)?, &t1.pullback(&up)?, &t)?;
        let w = p.evaluate_diagonal(&self.equivariant_curvature_on(&g_ext, &theta_t)?)?;
        w.try_map_to(e, |f| f.integrate_param("t", e))
    }
}

impl PrincipalBundle {
    /// `∫_{Δ²} P(Ω̂ + μ̂)` for `ϑ̂ = s_0 ϑ₀ + s_1 ϑ₁ + s_2 ϑ₂` on `Δ² × E`,
    /// oriented by `ds_1∧ds_2`.
    pub fn transgression_triangle(&self, p: &InvariantPolynomial, thetas: [&Connection; 3]) -> Result<EquivariantForm> {
        let e = self.total();
        for th in thetas {
            ensure_same(e, th.chart())?;
            if !self.g_invariant(th)? {
                return Err(Error::NotInvariant(format!("connection on `{}`", self.name)));
            }
        }
        let simplex = ChartBuilder::new("D2").real("s1").real("s2").build()?;
        let g_ext = self.g_total.extend(&simplex)?;
        let ext = g_ext.space().clone();
        let up = Substitution::by_name(e, &ext)?;
        let s1 = ext.var_scalar("s1")?;
        let s2 = ext.var_scalar("s2")?;
        let s0 = &(&ext.one() - &s1) - &s2;
        let lifted = thetas.iter().map(|th| th.pullback(&up)).collect::<Result<Vec<_>>>()?;
        let components = (0..lifted[0].components.len())
            .map(|c| {
                [&s0, &s1, &s2]
                    .iter()
                    .zip(&lifted)
                    .fold(Form::zero(&ext), |acc, (s, th)| &acc + &th.components[c].mul_scalar(s))
            })
            .collect();
        let hat = Connection::new(components);
        let w = p.evaluate_diagonal(&self.equivariant_curvature_on(&g_ext, &hat)?)?;
        w.try_map_to(e, |f| crate::dupont::integrate_simplex(f, &["s1", "s2"], e))
    }
}

/// `∇ = d + A` on the trivial line bundle over a chart with a `G`-action;
/// `G` acts on sections by `(g·φ)(m) = gʷ φ(g⁻¹m)`.
#[derive(Clone, Debug)]
pub struct LineBundle {
    pub name: String,
    pub g_action: Action,
    pub potential: Form,
    pub weight: i64,
}

impl LineBundle {
    pub fn base(&self) -> &Arc<Chart> {
        self.g_action.space()
    }

    pub fn curvature(&self) -> Form {
        self.potential.exterior_d()
    }

    /// `∇_{X♯}φ + L_X φ`, computed literally from both summands.
    pub fn moment_map(&self, x: &Element, phi: &Scalar) -> Result<Scalar> {
        let base = self.base();
        let xs = self.g_action.fundamental_vf(x)?;
        let a_x = self.potential.contract(&xs)?.component(0);
        let nabla = &xs.apply(phi) + &base.mul(&a_x, phi);
        // d/dt|₀ of e^{iwt·x₀} φ(exp(-tX)m)
        let character = phi.scale(&(i_unit() * int(self.weight) * x[0].clone()));
        let lie = &character - &xs.apply(phi);
        Ok(base.reduce(&nabla + &lie))
    }

    /// The endomorphism `μ^∇(X)` (a scalar for line bundles).
    pub fn endomorphism(&self, x: &Element) -> Result<Scalar> {
        self.moment_map(x, &self.base().one())
    }
}

/// Result of comparing a principal bundle with its associated line bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub curvature: Option<String>,
    pub moment: Option<String>,
}

impl Comparison {
    pub fn passed(&self) -> bool {
        self.curvature.is_none() && self.moment.is_none()
    }
}

/// Pulls `dϑ` and `μ^ϑ` back along a local frame `s` and compares them with
/// `R^∇` and `μ^∇`.
pub fn compare(bundle: &PrincipalBundle, theta: &Connection, line: &LineBundle, frame: &Substitution) -> Result<Comparison> {
    let base = line.base();
    ensure_same(frame.source(), bundle.total())?;
    ensure_same(frame.target(), base)?;
    let up = frame.pullback(&theta.curvature()[0])?;
    let down = line.curvature();
    let curvature = (!up.same_as(&down)).then(|| format!("s*dϑ - R = {}", (&up - &down).canonical()));
    let x = bundle.g_total.group.algebra.basis_element(0);
    let mu_up = frame.pullback(&bundle.moment_map(theta, &x)?[0])?;
    let mu_down = Form::scalar(base, line.endomorphism(&x)?);
    let moment = (!mu_up.same_as(&mu_down)).then(|| format!("s*μ - μ∇ = {}", (&mu_up - &mu_down).canonical()));
    Ok(Comparison { curvature, moment })
}

/// A registered bundle together with its connections and line-bundle data.
#[derive(Clone, Debug)]
pub struct BundleExample {
    pub bundle: PrincipalBundle,
    /// `G`-invariant reference connection.
    pub connection: Connection,
    pub flat: Option<Connection>,
    /// A connection that is not `G`-invariant, if the example has one.
    pub non_invariant: Option<Connection>,
    pub line: LineBundle,
    /// The connection whose pullback along `frame` is the line-bundle potential.
    pub line_connection: Connection,
    pub frame: Substitution,
}

fn structure_group() -> TorusGroup {
    TorusGroup::new("K", &["h"], &["f"], &["Y"]).expect("static chart")
}

/// `ℝ²×U(1)` with `G = U(1)` rotating the plane.
pub fn trivial_r2() -> Result<BundleExample> {
    let k = structure_group();
    let e = ChartBuilder::new("E").real("x").real("y").unit("k").formal("tau").build()?;
    let m = ChartBuilder::new("M").real("x").real("y").formal("tau").build()?;
    let k_action = Action::new("fiber", &k, &e, &[("k", "k*h")])?;
    let g_total = action::rotation_on(&e)?;
    let g_base = action::rotation_on(&m)?;
    let projection = Substitution::by_name(&m, &e)?;
    let bundle = PrincipalBundle { name: "trivial-r2".into(), structure: k, k_action, g_total, g_base: g_base.clone(), projection };
    let mc = Form::parse_terms(&e, &[("k^-1", &["dk"])])?;
    let sym = &mc + &Form::parse_terms(&e, &[("1/2*x", &["dy"]), ("-1/2*y", &["dx"])])?;
    let xdy = &mc + &Form::parse_terms(&e, &[("x", &["dy"])])?;
    let line = LineBundle {
        name: "trivial-r2".into(),
        g_action: g_base,
        potential: Form::parse_terms(&m, &[("x", &["dy"])])?,
        weight: 0,
    };
    let frame = Substitution::parse(&e, &m, &[("k", "1")])?;
    Ok(BundleExample {
        bundle,
        connection: Connection::single(sym),
        flat: Some(Connection::single(mc)),
        non_invariant: Some(Connection::single(xdy.clone())),
        line,
        line_connection: Connection::single(xdy),
        frame,
    })
}

/// The base sphere `|w|² + r² = 1` with `w = 2 z1 z̄2`, `r = |z1|² - |z2|²`.
fn sphere2() -> Result<Arc<Chart>> {
    let t = ChartBuilder::new("S2~param").unit("p").unit("q").formal("tau").build()?;
    ChartBuilder::new("S2")
        .real("r")
        .complex("w", "wb")
        .formal("tau")
        .rule("w*wb", "1 - r^2")
        .param(t, &["1/2*(p + p^-1)", "-1/2*i*(p - p^-1)*q", "-1/2*i*(p - p^-1)*q^-1", "tau"])
        .build()
}

/// Chart on an open piece of the Hopf base, with frame `(z1, z2) = (c v, s)`.
fn hopf_frame_chart() -> Result<Arc<Chart>> {
    ChartBuilder::new("frame").unit("p").unit("v").formal("tau").build()
}

fn hopf_like(name: &str, z1_weight: i32, z2_weight: i32, fiber_weight: i64) -> Result<BundleExample> {
    let k = structure_group();
    let g = TorusGroup::u1();
    let e = action::sphere3("S3", &["tau"]);
    let m = sphere2()?;
    let k_action = Action::new("fiber", &k, &e, &[("z1", "z1*h"), ("zb1", "zb1*h^-1"), ("z2", "z2*h"), ("zb2", "zb2*h^-1")])?;
    let pw = |w: i32, v: &str| if w == 0 { v.to_string() } else { format!("u^{w}*{v}") };
    let g_total = Action::new(
        name,
        &g,
        &e,
        &[
            ("z1", &pw(z1_weight, "z1")),
            ("zb1", &pw(-z1_weight, "zb1")),
            ("z2", &pw(z2_weight, "z2")),
            ("zb2", &pw(-z2_weight, "zb2")),
        ],
    )?;
    let base_weight = z1_weight - z2_weight;
    let g_base = Action::new(name, &g, &m, &[("w", &pw(base_weight, "w")), ("wb", &pw(-base_weight, "wb"))])?;
    let projection = Substitution::parse(&m, &e, &[("r", "z1*zb1 - z2*zb2"), ("w", "2*z1*zb2"), ("wb", "2*zb1*z2")])?;
    let bundle = PrincipalBundle { name: name.into(), structure: k, k_action, g_total, g_base, projection };
    let theta = Form::parse_terms(&e, &[("zb1", &["dz1"]), ("zb2", &["dz2"])])?;
    let fc = hopf_frame_chart()?;
    let c = "1/2*(p + p^-1)";
    let s = "-1/2*i*(p - p^-1)";
    let frame = Substitution::parse(
        &e,
        &fc,
        &[("z1", &format!("({c})*v")), ("zb1", &format!("({c})*v^-1")), ("z2", s), ("zb2", s)],
    )?;
    let frame_action = Action::new(name, &g, &fc, &[("v", &pw(base_weight, "v"))])?;
    let line = LineBundle {
        name: name.into(),
        g_action: frame_action,
        potential: Form::parse_terms(&fc, &[(&format!("({c})^2*v^-1"), &["dv"])])?,
        weight: fiber_weight,
    };
    let connection = Connection::single(theta);
    Ok(BundleExample { bundle, line_connection: connection.clone(), connection, flat: None, non_invariant: None, line, frame })
}

/// The Hopf bundle `S³ → S²` with `G` rotating the first coordinate.
pub fn hopf() -> Result<BundleExample> {
    hopf_like("hopf", 1, 0, 0)
}

/// The Hopf bundle with `G` acting by `(g²z1, g z2)`.
pub fn weighted_hopf() -> Result<BundleExample> {
    hopf_like("weighted-hopf", 2, 1, 1)
}

pub const BUNDLES: [&str; 3] = ["hopf", "trivial-r2", "weighted-hopf"];

pub fn lookup(name: &str) -> Result<BundleExample> {
    match name {
        "trivial-r2" => trivial_r2(),
        "hopf" => hopf(),
        "weighted-hopf" => weighted_hopf(),
        _ => Err(Error::UnknownName { kind: "example", name: name.into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundle_models_are_consistent() {
        for name in BUNDLES {
            let ex = lookup(name).unwrap();
            let b = &ex.bundle;
            assert!(b.projection_equivariant().unwrap(), "{name}");
            assert!(b.actions_commute().unwrap(), "{name}");
            assert!(b.vertical_normalized(&ex.connection).unwrap(), "{name}");
            assert!(b.g_invariant(&ex.connection).unwrap(), "{name}");
            assert!(compare(b, &ex.line_connection, &ex.line, &ex.frame).unwrap().passed(), "{name}");
        }
    }

    #[test]
    fn hopf_curvature_and_moment() {
        let ex = hopf().unwrap();
        let e = ex.bundle.total();
        let om = ex.connection.curvature();
        assert_eq!(om[0], Form::parse_terms(e, &[("1", &["dzb1", "dz1"]), ("1", &["dzb2", "dz2"])]).unwrap());
        let mu = ex.bundle.moment_map(&ex.connection, &vec![int(1)]).unwrap();
        assert!(mu[0].same_as(&Form::scalar(e, e.parse("i*z1*zb1").unwrap())));
    }
}
