//! Torus actions on charts, given by pullback rules for `g·m`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;

use crate::chart::{Chart, ChartBuilder};
use crate::coeff::{i_unit, Coeff};
use crate::error::{Error, Result};
use crate::form::Form;
use crate::lie::{Element, Matrix, TorusGroup};
use crate::scalar::Scalar;
use crate::subst::Substitution;
use crate::vector_field::VectorField;

#[derive(Clone, Debug)]
pub struct Action {
    pub name: String,
    pub group: TorusGroup,
    space: Arc<Chart>,
    product: Arc<Chart>,
    /// `space -> G×space`, the pullback along `(g, m) ↦ g·m`.
    act: Substitution,
    /// `space -> G×space`, the pullback along the projection.
    embed: Substitution,
    /// `G×space -> space`, evaluation at the identity.
    at_identity: Substitution,
}

impl Action {
    /// `images` gives `g·m` coordinatewise over the product chart; omitted
    /// variables are fixed.
    pub fn new(name: &str, group: &TorusGroup, space: &Arc<Chart>, images: &[(&str, &str)]) -> Result<Self> {
        let product = Self::product_chart(group, space)?;
        let act = Substitution::parse(space, &product, images)?;
        Self::assemble(name, group, space, product, act)
    }

    /// Like [`Action::new`] with images already expressed on the product chart.
    pub fn from_images(name: &str, group: &TorusGroup, space: &Arc<Chart>, images: Vec<Scalar>) -> Result<Self> {
        let product = Self::product_chart(group, space)?;
        let act = Substitution::new(space, &product, images)?;
        Self::assemble(name, group, space, product, act)
    }

    fn product_chart(group: &TorusGroup, space: &Arc<Chart>) -> Result<Arc<Chart>> {
        let product = Chart::product(&format!("{}x{}", group.chart().name(), space.name()), &[group.chart(), space])?;
        if product.nvars() != group.rank() + space.nvars() {
            return Err(Error::InvalidChart(format!("`{}` shares variable names with the group", space.name())));
        }
        Ok(product)
    }

    fn assemble(name: &str, group: &TorusGroup, space: &Arc<Chart>, product: Arc<Chart>, act: Substitution) -> Result<Self> {
        let embed = Substitution::by_name(space, &product)?;
        let ones: Vec<(&str, &str)> = group.vars.iter().map(|v| (v.as_str(), "1")).collect();
        let at_identity = Substitution::parse(&product, space, &ones)?;
        Ok(Action { name: name.into(), group: group.clone(), space: space.clone(), product, act, embed, at_identity })
    }

    /// The same action on `space × extra`, trivial on the new factor.
    pub fn extend(&self, extra: &Arc<Chart>) -> Result<Self> {
        let space = Chart::product(&format!("{}x{}", self.space.name(), extra.name()), &[&self.space, extra])?;
        let product = Self::product_chart(&self.group, &space)?;
        let rename = Substitution::by_name(&self.product, &product)?;
        let images = space
            .vars()
            .iter()
            .map(|v| match self.space.index(&v.name) {
                Some(i) => Ok(rename.apply(self.act.image(i))),
                None => product.var_scalar(&v.name),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(&self.name, &self.group, &space, images)
    }

    pub fn trivial(group: &TorusGroup, space: &Arc<Chart>) -> Result<Self> {
        Self::new("trivial", group, space, &[])
    }

    pub fn space(&self) -> &Arc<Chart> {
        &self.space
    }

    pub fn product(&self) -> &Arc<Chart> {
        &self.product
    }

    pub fn substitution(&self) -> &Substitution {
        &self.act
    }

    pub fn projection(&self) -> &Substitution {
        &self.embed
    }

    pub fn is_trivial(&self) -> bool {
        self.act.same_as(&self.embed)
    }

    /// `X♯ = d/dt|₀ exp(tX)·m`; basis element `a` moves `u_a` along `e^{it}`,
    /// so `d/dt` at the identity is `i ∂_{u_a}` followed by `u = 1`.
    pub fn fundamental_vf(&self, x: &Element) -> Result<VectorField> {
        if x.len() != self.group.rank() {
            return Err(Error::BasisMismatch(format!("{} expects rank {}", self.name, self.group.rank())));
        }
        let mut coeffs = BTreeMap::new();
        for v in 0..self.space.nvars() {
            if !self.space.has_differential(v) {
                continue;
            }
            let mut c = Scalar::zero();
            for (a, xa) in x.iter().enumerate() {
                if xa.is_zero() {
                    continue;
                }
                let ua = self.product.require(&self.group.vars[a])?;
                let dv = self.product.reduce(self.act.image(v).derivative(ua));
                c = &c + &self.at_identity.apply(&dv).scale(&(xa * i_unit()));
            }
            coeffs.insert(v, c);
        }
        VectorField::new(&self.space, coeffs)
    }

    pub fn fundamental_basis(&self, a: usize) -> VectorField {
        self.fundamental_vf(&self.group.algebra.basis_element(a)).expect("basis element of the right rank")
    }

    /// Images of the space variables under `g·m`, where `g` and `m` are given
    /// coordinatewise on an arbitrary chart.
    pub fn act_on(&self, target: &Arc<Chart>, g: &[Scalar], m: &[Scalar]) -> Result<Vec<Scalar>> {
        if g.len() != self.group.rank() || m.len() != self.space.nvars() {
            return Err(Error::Arity { expected: self.group.rank() + self.space.nvars(), got: g.len() + m.len() });
        }
        let images = self
            .product
            .vars()
            .iter()
            .map(|v| match self.group.vars.iter().position(|u| *u == v.name) {
                Some(a) => g[a].clone(),
                None => m[self.space.index(&v.name).expect("product variable")].clone(),
            })
            .collect();
        let into = Substitution::unchecked(&self.product, target, images);
        Ok(self.act.then(&into)?.images().to_vec())
    }

    /// `(g·)^*ω` with `g` left free: the pullback along the action with the
    /// group differentials dropped.
    pub fn translate(&self, form: &Form) -> Result<Form> {
        let mask = self.group_mask();
        Ok(self.act.pullback(form)?.drop_generators(mask))
    }

    fn group_mask(&self) -> u64 {
        self.group.vars.iter().map(|v| 1u64 << self.product.index(v).expect("group variable")).fold(0, |a, b| a | b)
    }

    /// `∫_G g^*ω dg`: the weight-zero part of the translated form.
    pub fn average(&self, form: &Form) -> Result<Form> {
        let t = self.translate(form)?;
        let gs: Vec<usize> = self.group.vars.iter().map(|v| self.product.index(v).expect("group variable")).collect();
        let kept = Form::from_map(
            &self.product,
            t.terms().map(|(w, s)| (*w, s.filter(|m| gs.iter().all(|&i| m[i] == 0)))).collect(),
        );
        self.at_identity.pullback(&kept)
    }

    /// Invariance under every group element.
    pub fn is_invariant(&self, form: &Form) -> Result<bool> {
        Ok(self.translate(form)?.same_as(&self.embed.pullback(form)?))
    }

    pub fn identity_holds(&self) -> bool {
        self.act.then(&self.at_identity).map(|s| s.same_as(&Substitution::identity(&self.space))).unwrap_or(false)
    }

    /// `a(g, a(h, m)) = a(gh, m)` on `G×G×M`.
    pub fn associativity_holds(&self) -> Result<bool> {
        let mut b = ChartBuilder::new(&format!("{}-assoc", self.name));
        let ga: Vec<String> = self.group.vars.iter().map(|v| format!("{v}_a")).collect();
        let gb: Vec<String> = self.group.vars.iter().map(|v| format!("{v}_b")).collect();
        for v in ga.iter().chain(&gb) {
            b = b.unit(v);
        }
        let gg = b.build()?;
        let triple = Chart::product(&format!("{}-triple", self.name), &[&gg, &self.space])?;
        let m: Vec<Scalar> = self.space.vars().iter().map(|v| triple.var_scalar(&v.name)).collect::<Result<_>>()?;
        let g = |names: &[String]| names.iter().map(|n| triple.var_scalar(n)).collect::<Result<Vec<_>>>();
        let (a, bb) = (g(&ga)?, g(&gb)?);
        let inner = self.act_on(&triple, &bb, &m)?;
        let lhs = self.act_on(&triple, &a, &inner)?;
        let prod: Vec<Scalar> = a.iter().zip(&bb).map(|(x, y)| triple.mul(x, y)).collect();
        let rhs = self.act_on(&triple, &prod, &m)?;
        Ok(lhs.iter().zip(&rhs).all(|(l, r)| Form::scalar(&triple, l - r).vanishes()))
    }
}

/// Fundamental field of `x ↦ g x` on `ℝⁿ` for a matrix `X`: `X♯ = Σ (Xx)_i ∂_i`.
pub fn linear_fundamental_vf(chart: &Arc<Chart>, vars: &[&str], x: &Matrix) -> Result<VectorField> {
    let mut coeffs = BTreeMap::new();
    for (i, row) in x.iter().enumerate() {
        let mut c = Scalar::zero();
        for (j, a) in row.iter().enumerate() {
            c = &c + &chart.var_scalar(vars[j])?.scale(a);
        }
        coeffs.insert(chart.require(vars[i])?, c);
    }
    VectorField::new(chart, coeffs)
}

/// Scales a Lie-algebra element.
pub fn scaled(x: &Element, c: &Coeff) -> Element {
    x.iter().map(|a| a * c).collect()
}

pub fn plane() -> Arc<Chart> {
    ChartBuilder::new("R2").real("x").real("y").build().expect("static chart")
}

pub fn complex_line() -> Arc<Chart> {
    ChartBuilder::new("C").complex("z", "zb").build().expect("static chart")
}

/// The 3-sphere `|z1|² + |z2|² = 1`, parametrized by `T³`.
pub fn sphere3(name: &str, extra_formal: &[&str]) -> Arc<Chart> {
    let mut t = ChartBuilder::new(&format!("{name}~param")).unit("eta").unit("xi1").unit("xi2");
    let mut s = ChartBuilder::new(name).complex("z1", "zb1").complex("z2", "zb2");
    for f in extra_formal {
        t = t.formal(f);
        s = s.formal(f);
    }
    let t = t.build().expect("static chart");
    let mut images = vec![
        "1/2*(eta + eta^-1)*xi1",
        "1/2*(eta + eta^-1)*xi1^-1",
        "-1/2*i*(eta - eta^-1)*xi2",
        "-1/2*i*(eta - eta^-1)*xi2^-1",
    ];
    images.extend(extra_formal.iter().copied());
    s.rule("z2*zb2", "1 - z1*zb1").param(t, &images).build().expect("static chart")
}

/// Rotation of the plane: `x + iy ↦ u(x + iy)`.
pub fn rotation_plane() -> Action {
    rotation_on(&plane()).expect("static action")
}

pub fn rotation_on(space: &Arc<Chart>) -> Result<Action> {
    Action::new(
        "rotation-plane",
        &TorusGroup::u1(),
        space,
        &[("x", "1/2*x*u + 1/2*x*u^-1 + 1/2*i*y*u - 1/2*i*y*u^-1"), ("y", "-1/2*i*x*u + 1/2*i*x*u^-1 + 1/2*y*u + 1/2*y*u^-1")],
    )
}

/// `z ↦ u² z` on `ℂ`.
pub fn weighted_rotation() -> Action {
    Action::new("weighted-rotation", &TorusGroup::u1(), &complex_line(), &[("z", "u^2*z"), ("zb", "u^-2*zb")])
        .expect("static action")
}

/// Rotation of the first Hopf coordinate on `S³`.
pub fn hopf_on(space: &Arc<Chart>) -> Result<Action> {
    Action::new("hopf", &TorusGroup::u1(), space, &[("z1", "u*z1"), ("zb1", "u^-1*zb1")])
}

pub fn hopf() -> Action {
    hopf_on(&sphere3("S3", &[])).expect("static action")
}

pub fn lookup(name: &str) -> Result<Action> {
    match name {
        "rotation-plane" => Ok(rotation_plane()),
        "weighted-rotation" => Ok(weighted_rotation()),
        "hopf" => Ok(hopf()),
        _ => Err(Error::UnknownName { kind: "action", name: name.into() }),
    }
}

pub const ACTIONS: [&str; 3] = ["hopf", "rotation-plane", "weighted-rotation"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_field() {
        let a = rotation_plane();
        let x = a.fundamental_basis(0);
        assert_eq!(x, VectorField::parse(a.space(), &[("x", "-y"), ("y", "x")]).unwrap());
        assert!(a.identity_holds() && a.associativity_holds().unwrap());
    }

    #[test]
    fn weighted_field_doubles() {
        let a = weighted_rotation();
        let x = a.fundamental_basis(0);
        assert_eq!(x, VectorField::parse(a.space(), &[("z", "2i*z"), ("zb", "-2i*zb")]).unwrap());
        let half = a.fundamental_vf(&vec![crate::coeff::frac(1, 2)]).unwrap();
        assert_eq!(half, VectorField::parse(a.space(), &[("z", "i*z"), ("zb", "-i*zb")]).unwrap());
    }

    #[test]
    fn hopf_is_tangent_and_associative() {
        let a = hopf();
        assert!(a.fundamental_basis(0).is_tangent());
        assert!(a.identity_holds() && a.associativity_holds().unwrap());
        let r = Form::scalar(a.space(), a.space().parse("z1*zb1").unwrap());
        assert!(a.is_invariant(&r).unwrap());
        let z = Form::scalar(a.space(), a.space().parse("z1").unwrap());
        assert!(!a.is_invariant(&z).unwrap());
    }

    #[test]
    fn trivial_action_has_zero_field() {
        let a = Action::trivial(&TorusGroup::u1(), &plane()).unwrap();
        assert!(a.fundamental_basis(0).is_zero());
        assert!(a.is_trivial());
    }
}
