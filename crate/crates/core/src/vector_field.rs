use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chart::{ensure_same, Chart};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `Σ X^v ∂_v` over the differentiable variables of a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    chart: Arc<Chart>,
    coeffs: BTreeMap<usize, Scalar>,
}

impl VectorField {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        VectorField { chart: chart.clone(), coeffs: BTreeMap::new() }
    }

    pub fn new(chart: &Arc<Chart>, coeffs: BTreeMap<usize, Scalar>) -> Result<Self> {
        for &v in coeffs.keys() {
            if v >= chart.nvars() || !chart.has_differential(v) {
                return Err(Error::UnknownVariable(format!("#{v}"), chart.name().into()));
            }
        }
        let coeffs = coeffs.into_iter().map(|(v, s)| (v, chart.reduce(s))).filter(|(_, s)| !s.is_zero()).collect();
        Ok(VectorField { chart: chart.clone(), coeffs })
    }

    /// From `(variable name, coefficient expression)` pairs.
    pub fn parse(chart: &Arc<Chart>, parts: &[(&str, &str)]) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (name, expr) in parts {
            let v = chart.require(name)?;
            let s: Scalar = chart.parse(expr)?;
            let prev: Scalar = coeffs.remove(&v).unwrap_or_default();
            coeffs.insert(v, &prev + &s);
        }
        Self::new(chart, coeffs)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn coefficient(&self, v: usize) -> Option<&Scalar> {
        self.coeffs.get(&v)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&usize, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The same field on a chart containing this one's variables by name,
    /// with coefficients renamed accordingly.
    pub fn transport(&self, target: &Arc<Chart>) -> Result<Self> {
        let into = crate::subst::Substitution::by_name(&self.chart, target)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(v, s)| Ok((target.require(&self.chart.var(*v).name)?, into.apply(s))))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Self::new(target, coeffs)
    }

    /// `f·X` for a function `f`.
    pub fn mul_scalar(&self, f: &Scalar) -> Self {
        let coeffs = self.coeffs.iter().map(|(v, s)| (*v, self.chart.mul(s, f))).filter(|(_, s)| !s.is_zero()).collect();
        VectorField { chart: self.chart.clone(), coeffs }
    }

    /// Directional derivative of a scalar.
    pub fn apply(&self, f: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (v, xv) in &self.coeffs {
            let df = f.derivative(*v);
            if !df.is_zero() {
                out = &out + &df.mul_raw(xv);
            }
        }
        self.chart.reduce(out)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        VectorField {
            chart: self.chart.clone(),
            coeffs: self.coeffs.iter().map(|(v, s)| (*v, s.scale(c))).filter(|(_, s)| !s.is_zero()).collect(),
        }
    }

    pub fn add(&self, other: &VectorField) -> Result<Self> {
        ensure_same(&self.chart, &other.chart)?;
        let mut coeffs = self.coeffs.clone();
        for (v, s) in &other.coeffs {
            let sum = &coeffs.remove(v).unwrap_or_default() + s;
            if !sum.is_zero() {
                coeffs.insert(*v, sum);
            }
        }
        Ok(VectorField { chart: self.chart.clone(), coeffs })
    }

    /// Commutator `[X, Y]^v = X(Y^v) - Y(X^v)`.
    pub fn bracket(&self, other: &VectorField) -> Result<Self> {
        ensure_same(&self.chart, &other.chart)?;
        let mut coeffs = BTreeMap::new();
        let vars: std::collections::BTreeSet<usize> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        for v in vars {
            let a = other.coeffs.get(&v).map(|s| self.apply(s)).unwrap_or_default();
            let b = self.coeffs.get(&v).map(|s| other.apply(s)).unwrap_or_default();
            coeffs.insert(v, &a - &b);
        }
        Self::new(&self.chart, coeffs)
    }

    /// Tangency to the chart relations: `X(lhs - rhs)` must vanish on the chart.
    pub fn is_tangent(&self) -> bool {
        self.chart.rules().iter().all(|r| {
            let rel = &Scalar::monomial(crate::coeff::int(1), r.lhs.clone()) - &r.rhs;
            crate::form::Form::scalar(&self.chart, self.apply(&rel)).vanishes()
        })
    }

    pub fn to_plain(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(v, s)| format!("({})∂{}", self.chart.fmt_scalar(s), self.chart.var(*v).name))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_latex(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(v, s)| format!("\\left({}\\right)\\partial_{{{}}}", self.chart.latex_scalar(s), self.chart.latex_var(*v)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
