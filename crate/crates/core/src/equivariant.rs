//! Polynomial maps `𝔤 → Ω(M)`: elements of `S(𝔤^∨)⊗Ω(M)` with the Cartan differential.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num::Zero;

use crate::action::Action;
use crate::chart::{ensure_same, Chart};
use crate::coeff::{int, Coeff};
use crate::error::{Error, Result};
use crate::form::Form;
use crate::lie::{Element, Graded};
use crate::scalar::Scalar;
use crate::subst::Substitution;

/// Sorted multiset of dual-basis indices.
pub type SymMono = Vec<usize>;

#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantForm {
    chart: Arc<Chart>,
    dual: Arc<Vec<String>>,
    components: BTreeMap<SymMono, Form>,
}

/// `X*X`-style key for a symmetric monomial; `1` for the constant term.
pub fn key_string(m: &SymMono, dual: &[String]) -> String {
    if m.is_empty() {
        "1".into()
    } else {
        m.iter().map(|&i| dual[i].as_str()).join("*")
    }
}

pub fn parse_key(key: &str, dual: &[String]) -> Result<SymMono> {
    if key == "1" {
        return Ok(vec![]);
    }
    let mut m = key
        .split('*')
        .map(|s| dual.iter().position(|d| d == s).ok_or_else(|| Error::Parse(format!("unknown dual symbol `{s}`"))))
        .collect::<Result<Vec<_>>>()?;
    m.sort_unstable();
    Ok(m)
}

impl EquivariantForm {
    pub fn zero(chart: &Arc<Chart>, dual: &[String]) -> Self {
        EquivariantForm { chart: chart.clone(), dual: Arc::new(dual.to_vec()), components: BTreeMap::new() }
    }

    pub fn from_form(form: Form, dual: &[String]) -> Self {
        let mut e = Self::zero(form.chart(), dual);
        e.add_component(vec![], form);
        e
    }

    /// The constant polynomial `c · m` on `chart`.
    pub fn polynomial(chart: &Arc<Chart>, dual: &[String], m: SymMono, c: Coeff) -> Self {
        let mut e = Self::zero(chart, dual);
        e.add_component(m, Form::constant(chart, c));
        e
    }

    pub fn from_components(chart: &Arc<Chart>, dual: &[String], comps: Vec<(SymMono, Form)>) -> Result<Self> {
        let mut e = Self::zero(chart, dual);
        for (m, f) in comps {
            ensure_same(chart, f.chart())?;
            if m.iter().any(|&i| i >= dual.len()) {
                return Err(Error::BasisMismatch(format!("index beyond rank {}", dual.len())));
            }
            e.add_component(m, f);
        }
        Ok(e)
    }

    pub fn add_component(&mut self, mut m: SymMono, f: Form) {
        m.sort_unstable();
        let sum = match self.components.remove(&m) {
            Some(g) => &g + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.components.insert(m, sum);
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dual(&self) -> &[String] {
        &self.dual
    }

    pub fn rank(&self) -> usize {
        self.dual.len()
    }

    pub fn components(&self) -> impl Iterator<Item = (&SymMono, &Form)> {
        self.components.iter()
    }

    pub fn component(&self, m: &[usize]) -> Form {
        let mut k = m.to_vec();
        k.sort_unstable();
        self.components.get(&k).cloned().unwrap_or_else(|| Form::zero(&self.chart))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Zero on the chart, honouring relations.
    pub fn vanishes(&self) -> bool {
        self.components.values().all(Form::vanishes)
    }

    pub fn same_as(&self, other: &Self) -> bool {
        crate::chart::same_chart(&self.chart, &other.chart) && self.dual == other.dual && (self - other).vanishes()
    }

    fn check(&self, other: &Self) -> Result<()> {
        ensure_same(&self.chart, &other.chart)?;
        if self.dual != other.dual {
            return Err(Error::BasisMismatch("different Lie algebras".into()));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        self.map(|f| f.scale(c))
    }

    pub fn mul_scalar(&self, s: &Scalar) -> Self {
        self.map(|f| f.mul_scalar(s))
    }

    pub fn map(&self, f: impl Fn(&Form) -> Form) -> Self {
        let mut out = Self::zero(&self.chart, &self.dual);
        for (m, g) in &self.components {
            out.add_component(m.clone(), f(g));
        }
        out
    }

    /// Componentwise map onto another chart, e.g. a pullback.
    pub fn try_map_to(&self, target: &Arc<Chart>, f: impl Fn(&Form) -> Result<Form>) -> Result<Self> {
        let mut out = Self::zero(target, &self.dual);
        for (m, g) in &self.components {
            out.add_component(m.clone(), f(g)?);
        }
        Ok(out)
    }

    pub fn pullback(&self, sub: &Substitution) -> Result<Self> {
        self.try_map_to(sub.target(), |f| sub.pullback(f))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.chart, &self.dual);
        for (a, fa) in &self.components {
            for (b, fb) in &other.components {
                let mut m = a.clone();
                m.extend(b);
                out.add_component(m, fa.wedge(fb)?);
            }
        }
        Ok(out)
    }

    pub fn exterior_d(&self) -> Self {
        self.map(Form::exterior_d)
    }

    /// `Σ_a X_a ι(X_a♯)`, raising polynomial degree by one.
    pub fn contraction_part(&self, action: &Action) -> Result<Self> {
        ensure_same(&self.chart, action.space())?;
        let mut out = Self::zero(&self.chart, &self.dual);
        for a in 0..action.group.rank() {
            let xs = action.fundamental_basis(a);
            for (m, f) in &self.components {
                let mut k = m.clone();
                k.push(a);
                out.add_component(k, f.contract(&xs)?);
            }
        }
        Ok(out)
    }

    /// `d_C ω (X) = d(ω(X)) + ι(X♯)ω(X)`.
    pub fn cartan_d(&self, action: &Action) -> Result<Self> {
        Ok(&self.exterior_d() + &self.contraction_part(action)?)
    }

    /// Value at a Lie-algebra element: substitutes coordinates into the polynomial.
    pub fn evaluate(&self, x: &Element) -> Result<Form> {
        if x.len() != self.rank() {
            return Err(Error::BasisMismatch(format!("expected rank {}", self.rank())));
        }
        let mut out = Form::zero(&self.chart);
        for (m, f) in &self.components {
            let c = m.iter().fold(int(1), |acc, &i| acc * &x[i]);
            if !c.is_zero() {
                out = &out + &f.scale(&c);
            }
        }
        Ok(out)
    }

    /// `(d_C d_C ω)(X)`.
    pub fn cartan_d_defect(&self, action: &Action, x: &Element) -> Result<Form> {
        self.cartan_d(action)?.cartan_d(action)?.evaluate(x)
    }

    /// `L_{X♯}(ω(X))`, the value the defect must equal.
    pub fn lie_defect(&self, action: &Action, x: &Element) -> Result<Form> {
        self.evaluate(x)?.lie_derivative(&action.fundamental_vf(x)?)
    }

    /// Every component is invariant (the coadjoint action of a torus is trivial).
    pub fn check_equivariance(&self, action: &Action) -> Result<bool> {
        for f in self.components.values() {
            if !action.is_invariant(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `2·(polynomial degree) + form degree` of each nonzero piece.
    pub fn total_degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.components.iter().flat_map(|(m, f)| f.degrees().into_iter().map(move |d| 2 * m.len() + d)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn total_degree(&self) -> Option<usize> {
        match self.total_degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Polynomial-degree-`k` part.
    pub fn poly_part(&self, k: usize) -> Self {
        let mut out = Self::zero(&self.chart, &self.dual);
        for (m, f) in &self.components {
            if m.len() == k {
                out.add_component(m.clone(), f.clone());
            }
        }
        out
    }

    pub fn canonical(&self) -> Self {
        self.map(Form::canonical)
    }

    pub fn to_plain(&self) -> String {
        self.render(false)
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.components.is_empty() {
            return "0".into();
        }
        self.components
            .iter()
            .sorted_by_key(|(m, _)| (m.len(), (*m).clone()))
            .map(|(m, f)| {
                let body = if latex { f.to_latex() } else { f.to_plain() };
                let wrapped = if f.terms().count() > 1 || body.starts_with('-') { format!("({body})") } else { body };
                if m.is_empty() {
                    wrapped
                } else if latex {
                    let sym = m.iter().map(|&i| self.dual[i].as_str()).join(" ");
                    format!("{sym}\\,{wrapped}")
                } else {
                    format!("{}*{wrapped}", key_string(m, &self.dual))
                }
            })
            .join(" + ")
    }
}

impl fmt::Display for EquivariantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain())
    }
}

impl std::ops::Add for &EquivariantForm {
    type Output = EquivariantForm;
    fn add(self, rhs: &EquivariantForm) -> EquivariantForm {
        self.check(rhs).expect("equivariant forms on one chart");
        let mut out = self.clone();
        for (m, f) in &rhs.components {
            out.add_component(m.clone(), f.clone());
        }
        out
    }
}

impl std::ops::Sub for &EquivariantForm {
    type Output = EquivariantForm;
    fn sub(self, rhs: &EquivariantForm) -> EquivariantForm {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &EquivariantForm {
    type Output = EquivariantForm;
    fn neg(self) -> EquivariantForm {
        self.scale(&int(-1))
    }
}

impl Graded for EquivariantForm {
    fn wedge_with(&self, other: &Self) -> Result<Self> {
        self.wedge(other)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn scaled(&self, c: &Coeff) -> Self {
        self.scale(c)
    }
    fn zero_like(&self) -> Self {
        Self::zero(&self.chart, &self.dual)
    }
    fn times_tau_power(&self, n: i32) -> Result<Self> {
        let mut out = Self::zero(&self.chart, &self.dual);
        for (m, f) in &self.components {
            out.add_component(m.clone(), f.times_tau_power(n)?);
        }
        Ok(out)
    }
}

/// `dx∧dy + ½(x²+y²)X`, the equivariant area form of the rotated plane.
pub fn plane_area_form(action: &Action) -> Result<EquivariantForm> {
    let chart = action.space();
    let area = Form::parse_terms(chart, &[("1", &["dx", "dy"])])?;
    let mu = Form::scalar(chart, chart.parse("1/2*x^2 + 1/2*y^2")?);
    EquivariantForm::from_components(chart, &action.group.algebra.dual, vec![(vec![], area), (vec![0], mu)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::rotation_plane;

    #[test]
    fn area_form_is_cartan_closed() {
        let a = rotation_plane();
        let w = plane_area_form(&a).unwrap();
        assert!(w.check_equivariance(&a).unwrap());
        assert!(w.cartan_d(&a).unwrap().is_zero());
        assert_eq!(w.total_degree(), Some(2));
        assert_eq!(w.to_plain(), "dx∧dy + X*(1/2*y^2 + 1/2*x^2)");
    }

    #[test]
    fn keys_round_trip() {
        let dual = vec!["X1".to_string(), "X2".to_string()];
        let k = parse_key("X2*X1*X2", &dual).unwrap();
        assert_eq!(k, vec![0, 1, 1]);
        assert_eq!(key_string(&k, &dual), "X1*X2*X2");
        assert_eq!(parse_key("1", &dual).unwrap(), Vec::<usize>::new());
    }
}
