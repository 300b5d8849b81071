//! Floating-point evaluation and finite differences, used only to cross-check
//! the exact symbolic results.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::Complex;
use rand::Rng;

use crate::bundle::{BundleExample, PrincipalBundle};
use crate::chart::{Chart, VarKind};
use crate::coeff::{to_f64, Coeff};
use crate::equivariant::{EquivariantForm, SymMono};
use crate::error::{Error, Result};
use crate::form::{wedge_sign, Form, Wedge};
use crate::lie::{Graded, InvariantPolynomial};
use crate::scalar::Scalar;

pub type C64 = Complex<f64>;

/// Step of the central differences.
pub const STEP: f64 = 1e-5;

/// A form evaluated at one point: wedge monomial to value.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointForm(pub BTreeMap<Wedge, C64>);

impl PointForm {
    fn add(&mut self, w: Wedge, c: C64) {
        *self.0.entry(w).or_default() += c;
    }

    pub fn max_abs(&self) -> f64 {
        self.0.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn wedge(&self, other: &PointForm) -> PointForm {
        let mut out = PointForm::default();
        for (&a, x) in &self.0 {
            for (&b, y) in &other.0 {
                if a & b == 0 {
                    out.add(a | b, x * y * wedge_sign(a, b) as f64);
                }
            }
        }
        out
    }

    pub fn minus(&self, other: &PointForm) -> PointForm {
        let mut out = self.clone();
        for (&w, c) in &other.0 {
            out.add(w, -c);
        }
        out
    }
}

/// `|a − b| / max(1, |b|)` in the sup norm over components.
pub fn relative_error(a: &PointForm, b: &PointForm) -> f64 {
    a.minus(b).max_abs() / b.max_abs().max(1.0)
}

/// A random point of a relation-free chart: real coordinates in `[-3/2, 3/2]`,
/// torus coordinates on the unit circle, conjugate pairs conjugate.
pub fn sample_point(chart: &Chart, rng: &mut impl Rng) -> Vec<C64> {
    let mut pt = vec![C64::new(0.0, 0.0); chart.nvars()];
    for v in 0..chart.nvars() {
        let var = chart.var(v);
        pt[v] = match var.kind {
            VarKind::Real => C64::new(rng.random_range(-1.5..1.5), 0.0),
            VarKind::Unit => C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)),
            VarKind::Formal => C64::new(0.0, rng.random_range(0.5..1.5)),
            VarKind::Complex if var.conj > v => C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            VarKind::Complex => pt[var.conj].conj(),
        };
    }
    pt
}

pub fn eval_scalar(s: &Scalar, pt: &[C64]) -> C64 {
    s.terms()
        .map(|(m, c)| m.iter().zip(pt).fold(to_f64(c), |acc, (&e, x)| acc * x.powi(e)))
        .sum()
}

/// Only meaningful on relation-free charts; see [`Form::canonical`].
pub fn eval_form(f: &Form, pt: &[C64]) -> PointForm {
    let mut out = PointForm::default();
    for (&w, s) in f.terms() {
        out.add(w, eval_scalar(s, pt));
    }
    out
}

/// `d f` at `pt` from central differences of the coefficients, treating each
/// coordinate as an independent complex variable.
pub fn fd_exterior_d(f: &Form, pt: &[C64]) -> PointForm {
    let chart = f.chart();
    let mut out = PointForm::default();
    for (&w, s) in f.terms() {
        for v in 0..chart.nvars() {
            if !chart.has_differential(v) || w & (1 << v) != 0 {
                continue;
            }
            let mut hi = pt.to_vec();
            let mut lo = pt.to_vec();
            hi[v] += STEP;
            lo[v] -= STEP;
            let dv = (eval_scalar(s, &hi) - eval_scalar(s, &lo)) / (2.0 * STEP);
            out.add(w | 1 << v, dv * wedge_sign(1 << v, w) as f64);
        }
    }
    out
}

/// Polynomial-valued form at a point, for evaluating invariant polynomials
/// numerically.
#[derive(Clone, Debug)]
pub struct PointEquivariant {
    pub comps: BTreeMap<SymMono, PointForm>,
    pub tau: C64,
}

impl PointEquivariant {
    pub fn from_symbolic(w: &EquivariantForm, pt: &[C64], tau: C64) -> Self {
        let comps = w.components().map(|(m, f)| (m.clone(), eval_form(&f.canonical(), pt))).collect();
        PointEquivariant { comps, tau }
    }

    pub fn relative_error(&self, other: &PointEquivariant) -> f64 {
        let keys: std::collections::BTreeSet<&SymMono> = self.comps.keys().chain(other.comps.keys()).collect();
        let empty = PointForm::default();
        keys.into_iter()
            .map(|k| relative_error(self.comps.get(k).unwrap_or(&empty), other.comps.get(k).unwrap_or(&empty)))
            .fold(0.0, f64::max)
    }
}

impl Graded for PointEquivariant {
    fn wedge_with(&self, other: &Self) -> Result<Self> {
        let mut comps: BTreeMap<SymMono, PointForm> = BTreeMap::new();
        for (a, fa) in &self.comps {
            for (b, fb) in &other.comps {
                let mut m = a.clone();
                m.extend(b);
                m.sort_unstable();
                let prod = fa.wedge(fb);
                let slot = comps.entry(m).or_default();
                for (w, c) in prod.0 {
                    slot.add(w, c);
                }
            }
        }
        Ok(PointEquivariant { comps, tau: self.tau })
    }

    fn plus(&self, other: &Self) -> Self {
        let mut comps = self.comps.clone();
        for (m, f) in &other.comps {
            let slot = comps.entry(m.clone()).or_default();
            for (&w, &c) in &f.0 {
                slot.add(w, c);
            }
        }
        PointEquivariant { comps, tau: self.tau }
    }

    fn scaled(&self, c: &Coeff) -> Self {
        let c = to_f64(c);
        let comps = self
            .comps
            .iter()
            .map(|(m, f)| (m.clone(), PointForm(f.0.iter().map(|(&w, &x)| (w, x * c)).collect())))
            .collect();
        PointEquivariant { comps, tau: self.tau }
    }

    fn zero_like(&self) -> Self {
        PointEquivariant { comps: BTreeMap::new(), tau: self.tau }
    }

    fn times_tau_power(&self, n: i32) -> Result<Self> {
        let f = self.tau.powi(n);
        let comps = self
            .comps
            .iter()
            .map(|(m, pf)| (m.clone(), PointForm(pf.0.iter().map(|(&w, &x)| (w, x * f)).collect())))
            .collect();
        Ok(PointEquivariant { comps, tau: self.tau })
    }
}

/// Worst relative errors of curvature and of `P(Ω + μ)` against finite
/// differences of the connection, over `samples` random points.
#[derive(Clone, Copy, Debug)]
pub struct OracleReport {
    pub curvature: f64,
    pub char_form: f64,
}

fn tau_value(chart: &Arc<Chart>, pt: &[C64]) -> C64 {
    chart.index("tau").map_or(C64::new(1.0, 0.0), |i| pt[i])
}

pub fn cross_check(ex: &BundleExample, p: &InvariantPolynomial, samples: usize, rng: &mut impl Rng) -> Result<OracleReport> {
    let bundle: &PrincipalBundle = &ex.bundle;
    let theta = &ex.connection;
    if theta.components.len() != 1 {
        return Err(Error::Unsupported("numeric oracle for rank-one structure groups".into()));
    }
    let symbolic_curv = theta.curvature()[0].canonical();
    let theta_flat = theta.components[0].canonical();
    let param_chart = theta_flat.chart().clone();
    let symbolic_char = bundle.char_form(p, theta)?;
    let mu: Vec<Form> = (0..bundle.g_total.group.rank())
        .map(|a| Ok(theta.components[0].contract(&bundle.g_total.fundamental_basis(a))?.canonical()))
        .collect::<Result<_>>()?;
    let mut report = OracleReport { curvature: 0.0, char_form: 0.0 };
    for _ in 0..samples {
        let pt = sample_point(&param_chart, rng);
        let tau = tau_value(&param_chart, &pt);
        let omega_num = fd_exterior_d(&theta_flat, &pt);
        report.curvature = report.curvature.max(relative_error(&omega_num, &eval_form(&symbolic_curv, &pt)));

        let mut comps = BTreeMap::new();
        comps.insert(vec![], omega_num.clone());
        for (a, m) in mu.iter().enumerate() {
            comps.insert(vec![a], eval_form(m, &pt));
        }
        let arg = PointEquivariant { comps, tau };
        let numeric = p.evaluate_diagonal(&[arg])?;
        let exact = PointEquivariant::from_symbolic(&symbolic_char, &pt, tau);
        report.char_form = report.char_form.max(numeric.relative_error(&exact));
    }
    Ok(report)
}

/// Worst relative error of the symbolic `d` against finite differences on a
/// form (pulled back to a relation-free chart first).
pub fn exterior_d_error(f: &Form, samples: usize, rng: &mut impl Rng) -> f64 {
    let flat = f.canonical();
    let exact = f.exterior_d().canonical();
    (0..samples)
        .map(|_| {
            let pt = sample_point(flat.chart(), rng);
            relative_error(&fd_exterior_d(&flat, &pt), &eval_form(&exact, &pt))
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle;
    use rand::SeedableRng;

    #[test]
    fn numeric_checks_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for name in ["trivial-r2", "hopf"] {
            let ex = bundle::lookup(name).unwrap();
            let r = cross_check(&ex, &InvariantPolynomial::identity(), 10, &mut rng).unwrap();
            assert!(r.curvature < 1e-6 && r.char_form < 1e-6, "{name}: {r:?}");
        }
    }
}
