//! Differential forms with scalar coefficients.
//!
//! A wedge monomial is a bitmask over chart variables: bit `v` stands for the
//! generator `dv`, and generators are ordered by variable index.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chart::{ensure_same, Chart};
use crate::coeff::{int, Coeff};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subst::Substitution;
use crate::vector_field::VectorField;

pub type Wedge = u64;

pub fn wedge_degree(w: Wedge) -> usize {
    w.count_ones() as usize
}

/// Sign of `dx_a ∧ dx_b` after sorting into a single increasing monomial.
pub fn wedge_sign(a: Wedge, b: Wedge) -> i64 {
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign picked up by moving generator `v` to the front of `w`.
fn front_sign(w: Wedge, v: usize) -> i64 {
    if (w & ((1u64 << v) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn bits(w: Wedge) -> impl Iterator<Item = usize> {
    let mut rest = w;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(j)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    chart: Arc<Chart>,
    terms: BTreeMap<Wedge, Scalar>,
}

impl Form {
    pub fn zero(chart: &Arc<Chart>) -> Form {
        Form { chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(chart: &Arc<Chart>, s: Scalar) -> Form {
        let mut f = Form::zero(chart);
        f.add_term(0, chart.reduce(s));
        f
    }

    pub fn constant(chart: &Arc<Chart>, c: Coeff) -> Form {
        Form::scalar(chart, chart.constant(c))
    }

    pub fn one(chart: &Arc<Chart>) -> Form {
        Form::constant(chart, int(1))
    }

    /// The generator `d<name>`, accepted with or without the leading `d`.
    pub fn generator(chart: &Arc<Chart>, name: &str) -> Result<Form> {
        let idx = match chart.generator_index(name) {
            Ok(i) => i,
            Err(_) => chart.require(name)?,
        };
        Ok(Form::gen_index(chart, idx))
    }

    pub fn gen_index(chart: &Arc<Chart>, idx: usize) -> Form {
        let mut f = Form::zero(chart);
        f.add_term(1u64 << idx, chart.one());
        f
    }

    /// Builds `Σ coeff · d<g1>∧…` from textual pieces.
    pub fn parse_terms(chart: &Arc<Chart>, terms: &[(&str, &[&str])]) -> Result<Form> {
        let mut f = Form::zero(chart);
        for (coef, gens) in terms {
            let mut t = Form::scalar(chart, chart.parse(coef)?);
            for g in *gens {
                t = t.wedge(&Form::generator(chart, g)?)?;
            }
            f = &f + &t;
        }
        Ok(f)
    }

    pub fn from_map(chart: &Arc<Chart>, terms: BTreeMap<Wedge, Scalar>) -> Form {
        let mut f = Form::zero(chart);
        for (w, s) in terms {
            f.add_term(w, chart.reduce(s));
        }
        f
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Wedge, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn component(&self, w: Wedge) -> Scalar {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    /// Adds an already reduced coefficient.
    pub fn add_term(&mut self, w: Wedge, s: Scalar) {
        if s.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(s);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &s;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|w| wedge_degree(*w)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Degree if homogeneous; `None` for zero or mixed forms.
    pub fn degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn homogeneous_part(&self, deg: usize) -> Form {
        self.filter(|w| wedge_degree(w) == deg)
    }

    pub fn filter(&self, keep: impl Fn(Wedge) -> bool) -> Form {
        Form {
            chart: self.chart.clone(),
            terms: self.terms.iter().filter(|(w, _)| keep(**w)).map(|(w, s)| (*w, s.clone())).collect(),
        }
    }

    /// Drops every term containing a generator of one of `vars`.
    pub fn drop_generators(&self, vars: Wedge) -> Form {
        self.filter(|w| w & vars == 0)
    }

    pub fn scale(&self, c: &Coeff) -> Form {
        Form {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(w, s)| (*w, s.scale(c))).filter(|(_, s)| !s.is_zero()).collect(),
        }
    }

    pub fn mul_scalar(&self, s: &Scalar) -> Form {
        let mut out = Form::zero(&self.chart);
        for (w, c) in &self.terms {
            out.add_term(*w, self.chart.mul(c, s));
        }
        out
    }

    pub fn wedge(&self, other: &Form) -> Result<Form> {
        ensure_same(&self.chart, &other.chart)?;
        let mut out = Form::zero(&self.chart);
        for (wa, sa) in &self.terms {
            for (wb, sb) in &other.terms {
                if wa & wb != 0 {
                    continue;
                }
                let prod = self.chart.mul(sa, sb);
                let prod = if wedge_sign(*wa, *wb) < 0 { -&prod } else { prod };
                out.add_term(wa | wb, prod);
            }
        }
        Ok(out)
    }

    pub fn exterior_d(&self) -> Form {
        self.exterior_d_along(!0)
    }

    /// The part of `d` differentiating only the variables in `vars`.
    pub fn exterior_d_along(&self, vars: Wedge) -> Form {
        let mut out = Form::zero(&self.chart);
        for (w, s) in &self.terms {
            for v in 0..self.chart.nvars() {
                if vars & (1 << v) == 0 || w & (1 << v) != 0 || !self.chart.has_differential(v) {
                    continue;
                }
                let ds = s.derivative(v);
                if ds.is_zero() {
                    continue;
                }
                let ds = self.chart.reduce(ds);
                out.add_term(w | (1 << v), if front_sign(*w, v) < 0 { -&ds } else { ds });
            }
        }
        out
    }

    pub fn contract(&self, x: &VectorField) -> Result<Form> {
        ensure_same(&self.chart, x.chart())?;
        let mut out = Form::zero(&self.chart);
        for (w, s) in &self.terms {
            for v in bits(*w) {
                let Some(xv) = x.coefficient(v) else { continue };
                let c = self.chart.mul(s, xv);
                out.add_term(w & !(1 << v), if front_sign(*w, v) < 0 { -&c } else { c });
            }
        }
        Ok(out)
    }

    /// Lie derivative computed directly: `X(f) dx_I + f Σ dx_.. ∧ d(X^i) ∧ dx_..`.
    pub fn lie_derivative(&self, x: &VectorField) -> Result<Form> {
        ensure_same(&self.chart, x.chart())?;
        let mut out = Form::zero(&self.chart);
        for (w, s) in &self.terms {
            out.add_term(*w, x.apply(s));
            for v in bits(*w) {
                let Some(xv) = x.coefficient(v) else { continue };
                let dxv = Form::scalar(&self.chart, xv.clone()).exterior_d();
                let rest = Form { chart: self.chart.clone(), terms: BTreeMap::from([(w & !(1 << v), s.clone())]) };
                let t = dxv.wedge(&rest)?;
                let t = if front_sign(*w, v) < 0 { -&t } else { t };
                out = &out + &t;
            }
        }
        Ok(out)
    }

    /// Right side of the Cartan formula, `d ι + ι d`.
    pub fn cartan_formula(&self, x: &VectorField) -> Result<Form> {
        Ok(&self.contract(x)?.exterior_d() + &self.exterior_d().contract(x)?)
    }

    pub fn pullback(&self, sub: &Substitution) -> Result<Form> {
        sub.pullback(self)
    }

    /// `∫_0^1` along variable `t`: keep the `dt` component (moved to the front),
    /// integrate coefficients in `t`, and land on `target`, which must contain
    /// every other variable by name.
    pub fn integrate_param(&self, t: &str, target: &Arc<Chart>) -> Result<Form> {
        let ti = self.chart.require(t)?;
        let bit = 1u64 << ti;
        let mut keep = Vec::new();
        for i in 0..self.chart.nvars() {
            if i == ti {
                continue;
            }
            let name = &self.chart.var(i).name;
            let j = target.require(name)?;
            keep.push((i, j));
        }
        let tn = target.nvars();
        let mut out = Form::zero(target);
        for (w, s) in &self.terms {
            if w & bit == 0 {
                continue;
            }
            let sign = front_sign(*w, ti);
            let rest = w & !bit;
            let mut nw = 0u64;
            for (i, j) in &keep {
                if rest & (1 << i) != 0 {
                    nw |= 1 << j;
                }
            }
            // the map i -> j may reorder generators
            let order_sign = reorder_sign(rest, &keep);
            let mut acc = Scalar::zero();
            for (m, c) in s.terms() {
                let e = m[ti];
                if e < 0 {
                    return Err(Error::NonPolynomial(t.into()));
                }
                let mut nm = vec![0; tn];
                for (i, j) in &keep {
                    nm[*j] += m[*i];
                }
                acc.add_term(nm, c / int(e as i64 + 1));
            }
            let acc = if sign * order_sign < 0 { -&acc } else { acc };
            out.add_term(nw, target.reduce(acc));
        }
        Ok(out)
    }

    /// Canonical representative for equality: pullback along the chart's
    /// parametrization, or the form itself on relation-free charts.
    pub fn canonical(&self) -> Form {
        match self.chart.param() {
            None => self.clone(),
            Some(p) => {
                let sub = Substitution::unchecked(&self.chart, &p.target, p.images.clone());
                sub.pullback(self).expect("parametrization images are well formed")
            }
        }
    }

    /// Zero as a form on the (possibly constrained) chart.
    pub fn vanishes(&self) -> bool {
        self.is_zero() || (self.chart.param().is_some() && self.canonical().is_zero())
    }

    pub fn same_as(&self, other: &Form) -> bool {
        same_chart_forms(self, other) && (self - other).vanishes()
    }

    /// Plain text, e.g. `x dx∧dy - 1/2*y dy`.
    pub fn to_plain(&self) -> String {
        self.render(false)
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Wedge> = self.terms.keys().collect();
        keys.sort_by_key(|w| (wedge_degree(**w), bits(**w).collect::<Vec<_>>()));
        let mut out = String::new();
        for (k, w) in keys.into_iter().enumerate() {
            let s = &self.terms[w];
            let gens: Vec<String> = bits(*w)
                .map(|v| if latex { format!("d{}", self.chart.latex_var(v)) } else { self.chart.generator_name(v) })
                .collect();
            let wedge = gens.join(if latex { " \\wedge " } else { "∧" });
            let (neg, body) = if s.len() == 1 {
                let (m, c) = s.terms().next().unwrap();
                let neg = crate::coeff::reads_negative(c);
                let mag = Scalar::monomial(if neg { -c.clone() } else { c.clone() }, m.clone());
                let txt = if latex { self.chart.latex_scalar(&mag) } else { self.chart.fmt_scalar(&mag) };
                (neg, txt)
            } else {
                let txt = if latex { self.chart.latex_scalar(s) } else { self.chart.fmt_scalar(s) };
                (false, if latex { format!("\\left({txt}\\right)") } else { format!("({txt})") })
            };
            let body = match (body.as_str(), wedge.is_empty()) {
                (b, true) => b.to_string(),
                ("1", false) => wedge,
                (b, false) => format!("{b} {wedge}"),
            };
            match (k, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

fn same_chart_forms(a: &Form, b: &Form) -> bool {
    crate::chart::same_chart(&a.chart, &b.chart)
}

/// Sign of the permutation induced on the generators of `w` by the index map.
fn reorder_sign(w: Wedge, map: &[(usize, usize)]) -> i64 {
    let targets: Vec<usize> =
        bits(w).map(|i| map.iter().find(|(a, _)| *a == i).map(|(_, b)| *b).unwrap()).collect();
    permutation_sign(&targets)
}

/// Sign of the permutation sorting `seq` (entries distinct).
pub fn permutation_sign(seq: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

impl std::ops::Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        assert!(same_chart_forms(self, rhs), "chart mismatch: {} vs {}", self.chart.name(), rhs.chart.name());
        let mut out = self.clone();
        for (w, s) in &rhs.terms {
            out.add_term(*w, s.clone());
        }
        out
    }
}

impl std::ops::Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        assert!(same_chart_forms(self, rhs), "chart mismatch: {} vs {}", self.chart.name(), rhs.chart.name());
        let mut out = self.clone();
        for (w, s) in &rhs.terms {
            out.add_term(*w, -s);
        }
        out
    }
}

impl std::ops::Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form { chart: self.chart.clone(), terms: self.terms.iter().map(|(w, s)| (*w, -s)).collect() }
    }
}

impl std::fmt::Display for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_plain())
    }
}
