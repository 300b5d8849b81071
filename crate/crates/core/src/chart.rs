//! Coordinate charts.
//!
//! A chart lists its variables, how conjugation acts on them, and oriented
//! rewrite rules. Charts with relations also carry a relation-free
//! parametrization of an open dense subset; two forms are equal on such a
//! chart iff their pullbacks along it agree, which makes equality exact even
//! though the differential ideal of the relations is not normalized.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::{fmt_coeff, int, latex_coeff, reads_negative, Coeff};
use crate::error::{Error, Result};
use crate::scalar::{mono_cmp, Mono, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// Real coordinate, polynomial dependence.
    Real,
    /// One half of a conjugate pair `z`, `zb`; polynomial dependence.
    Complex,
    /// Torus coordinate with `u * conj(u) = 1`; Laurent dependence.
    Unit,
    /// Invertible transcendental constant (no differential); conjugation negates it.
    Formal,
}

impl VarKind {
    pub fn is_laurent(self) -> bool {
        matches!(self, VarKind::Unit | VarKind::Formal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Var {
    pub name: String,
    pub kind: VarKind,
    /// Conjugation partner (itself for everything but complex pairs).
    pub conj: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Mono,
    pub rhs: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub target: Arc<Chart>,
    pub images: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    name: String,
    vars: Vec<Var>,
    rules: Vec<Rule>,
    param: Option<Param>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleOrder {
    Forward,
    Reverse,
}

pub fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> bool {
    Arc::ptr_eq(a, b) || (a.name == b.name && a.vars == b.vars && a.rules == b.rules)
}

pub fn ensure_same(a: &Arc<Chart>, b: &Arc<Chart>) -> Result<()> {
    if same_chart(a, b) {
        Ok(())
    } else {
        Err(Error::ChartMismatch(a.name.clone(), b.name.clone()))
    }
}

impl Chart {
    /// The chart of a point (no variables).
    pub fn point() -> Arc<Chart> {
        Arc::new(Chart { name: "pt".into(), vars: vec![], rules: vec![], param: None })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn var(&self, idx: usize) -> &Var {
        &self.vars[idx]
    }

    pub fn kind(&self, idx: usize) -> VarKind {
        self.vars[idx].kind
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index(name).ok_or_else(|| Error::UnknownVariable(name.into(), self.name.clone()))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn param(&self) -> Option<&Param> {
        self.param.as_ref()
    }

    /// Variables that carry a 1-form generator.
    pub fn has_differential(&self, idx: usize) -> bool {
        self.vars[idx].kind != VarKind::Formal
    }

    pub fn generator_name(&self, idx: usize) -> String {
        format!("d{}", self.vars[idx].name)
    }

    pub fn generator_index(&self, gen: &str) -> Result<usize> {
        let name = gen
            .strip_prefix('d')
            .ok_or_else(|| Error::UnknownVariable(gen.into(), self.name.clone()))?;
        let idx = self.require(name)?;
        if !self.has_differential(idx) {
            return Err(Error::UnknownVariable(gen.into(), self.name.clone()));
        }
        Ok(idx)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.nvars())
    }

    pub fn constant(&self, c: Coeff) -> Scalar {
        Scalar::constant(c, self.nvars())
    }

    pub fn var_scalar(&self, name: &str) -> Result<Scalar> {
        Ok(Scalar::var(self.nvars(), self.require(name)?))
    }

    pub fn parse(&self, src: &str) -> Result<Scalar> {
        crate::parse::parse_scalar(self, src)
    }

    pub fn reduce(&self, s: Scalar) -> Scalar {
        if self.rules.is_empty() {
            s
        } else {
            self.reduce_ordered(s, RuleOrder::Forward)
        }
    }

    /// Reduction with an explicit rule and term order; used by the confluence tests.
    pub fn reduce_ordered(&self, s: Scalar, order: RuleOrder) -> Scalar {
        let rules: Vec<&Rule> = match order {
            RuleOrder::Forward => self.rules.iter().collect(),
            RuleOrder::Reverse => self.rules.iter().rev().collect(),
        };
        let mut work: BTreeMap<Mono, Coeff> = s.into_terms().collect();
        let mut out = Scalar::zero();
        loop {
            let next = match order {
                RuleOrder::Forward => work.pop_last(),
                RuleOrder::Reverse => work.pop_first(),
            };
            let Some((m, c)) = next else { break };
            match rules.iter().find(|r| divides(&r.lhs, &m)) {
                Some(r) => {
                    for (rm, rc) in r.rhs.terms() {
                        let mono: Mono = m.iter().zip(&r.lhs).zip(rm).map(|((a, l), b)| a - l + b).collect();
                        let v = &c * rc;
                        use std::collections::btree_map::Entry;
                        match work.entry(mono) {
                            Entry::Vacant(e) => {
                                e.insert(v);
                            }
                            Entry::Occupied(mut e) => {
                                *e.get_mut() += v;
                                if num::Zero::is_zero(e.get()) {
                                    e.remove();
                                }
                            }
                        }
                    }
                }
                None => out.add_term(m, c),
            }
        }
        out
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a.mul_raw(b))
    }

    pub fn pow(&self, a: &Scalar, e: u32) -> Scalar {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Inverse of a single-term scalar whose variables are all Laurent.
    pub fn inverse(&self, a: &Scalar) -> Option<Scalar> {
        if a.len() != 1 {
            return None;
        }
        let (m, c) = a.terms().next()?;
        if m.iter().enumerate().any(|(i, &e)| e != 0 && !self.kind(i).is_laurent()) {
            return None;
        }
        Some(Scalar::monomial(int(1) / c.clone(), m.iter().map(|e| -e).collect()))
    }

    /// Complex conjugation of a scalar.
    pub fn conj(&self, s: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in s.terms() {
            let mut m2 = vec![0; m.len()];
            let mut sign = 1i64;
            for (i, &e) in m.iter().enumerate() {
                match self.vars[i].kind {
                    VarKind::Real => m2[i] += e,
                    VarKind::Complex => m2[self.vars[i].conj] += e,
                    VarKind::Unit => m2[i] -= e,
                    VarKind::Formal => {
                        m2[i] += e;
                        if e % 2 != 0 {
                            sign = -sign;
                        }
                    }
                }
            }
            out.add_term(m2, c.conj() * int(sign));
        }
        self.reduce(out)
    }

    /// Every pair of rules whose left sides overlap must reduce their overlap to one normal form.
    /// Returns the overlaps that fail.
    pub fn unresolved_critical_pairs(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.rules.len() {
            for j in i + 1..self.rules.len() {
                let (a, b) = (&self.rules[i].lhs, &self.rules[j].lhs);
                if !a.iter().zip(b).any(|(x, y)| *x > 0 && *y > 0) {
                    continue;
                }
                let lcm: Mono = a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
                let step = |r: &Rule| {
                    let rest: Mono = lcm.iter().zip(&r.lhs).map(|(x, y)| x - y).collect();
                    Scalar::monomial(int(1), rest).mul_raw(&r.rhs)
                };
                let left = self.reduce(step(&self.rules[i]));
                let right = self.reduce(step(&self.rules[j]));
                if left != right {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// Product chart. Formal constants with equal names are shared.
    pub fn product(name: &str, factors: &[&Arc<Chart>]) -> Result<Arc<Chart>> {
        let (vars, maps) = merge_vars(factors)?;
        let n = vars.len();
        let remap = |m: &Mono, map: &[usize]| {
            let mut out = vec![0; n];
            for (i, &e) in m.iter().enumerate() {
                out[map[i]] += e;
            }
            out
        };
        let mut rules = Vec::new();
        for (f, map) in factors.iter().zip(&maps) {
            for r in &f.rules {
                rules.push(Rule { lhs: remap(&r.lhs, map), rhs: r.rhs.map_monos(|m| remap(m, map)) });
            }
        }
        let param = if factors.iter().any(|f| f.param.is_some()) {
            let targets: Vec<Arc<Chart>> =
                factors.iter().map(|f| f.param.as_ref().map_or_else(|| Arc::clone(f), |p| p.target.clone())).collect();
            let trefs: Vec<&Arc<Chart>> = targets.iter().collect();
            let target = Chart::product(&format!("{name}~param"), &trefs)?;
            let (_, tmaps) = merge_vars(&trefs)?;
            let tn = target.nvars();
            let tremap = |m: &Mono, map: &[usize]| {
                let mut out = vec![0; tn];
                for (i, &e) in m.iter().enumerate() {
                    out[map[i]] += e;
                }
                out
            };
            let mut images = vec![Scalar::zero(); n];
            for (k, f) in factors.iter().enumerate() {
                for i in 0..f.nvars() {
                    let img = match &f.param {
                        Some(p) => p.images[i].map_monos(|m| tremap(m, &tmaps[k])),
                        None => Scalar::var(tn, tmaps[k][i]),
                    };
                    images[maps[k][i]] = img;
                }
            }
            Some(Param { target, images })
        } else {
            None
        };
        let chart = Chart { name: name.into(), vars, rules, param };
        chart.validate()?;
        Ok(Arc::new(chart))
    }

    fn validate(&self) -> Result<()> {
        for (i, v) in self.vars.iter().enumerate() {
            if self.vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::InvalidChart(format!("duplicate variable `{}`", v.name)));
            }
            if v.name == "i" {
                return Err(Error::InvalidChart("`i` is reserved".into()));
            }
            let partner = &self.vars[v.conj];
            let ok = match v.kind {
                VarKind::Complex => partner.kind == VarKind::Complex && partner.conj == i && v.conj != i,
                _ => v.conj == i,
            };
            if !ok {
                return Err(Error::InvalidChart(format!("bad conjugation on `{}`", v.name)));
            }
        }
        for r in &self.rules {
            if r.lhs.iter().enumerate().any(|(i, &e)| e < 0 || (e > 0 && self.kind(i).is_laurent())) {
                return Err(Error::InvalidChart("rule left sides must be polynomial monomials".into()));
            }
            if r.rhs.terms().any(|(m, _)| mono_cmp(m, &r.lhs) != std::cmp::Ordering::Less) {
                return Err(Error::InvalidChart(format!(
                    "rule `{}` does not decrease the monomial order",
                    self.fmt_mono(&r.lhs)
                )));
            }
        }
        if let Some(p) = &self.param {
            if p.images.len() != self.nvars() {
                return Err(Error::InvalidChart("parametrization arity".into()));
            }
            if p.target.param.is_some() || !p.target.rules.is_empty() {
                return Err(Error::InvalidChart("parametrization target must be relation-free".into()));
            }
        } else if !self.rules.is_empty() {
            return Err(Error::InvalidChart(format!("chart `{}` has relations but no parametrization", self.name)));
        }
        Ok(())
    }

    pub fn fmt_mono(&self, m: &Mono) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| if e == 1 { self.vars[i].name.clone() } else { format!("{}^{}", self.vars[i].name, e) })
            .collect();
        parts.join("*")
    }

    pub fn latex_var(&self, idx: usize) -> String {
        let v = &self.vars[idx];
        if v.kind == VarKind::Complex && v.conj < idx {
            return format!("\\bar{{{}}}", latex_name(&self.vars[v.conj].name));
        }
        latex_name(&v.name)
    }

    fn latex_mono(&self, m: &Mono) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| if e == 1 { self.latex_var(i) } else { format!("{}^{{{}}}", self.latex_var(i), e) })
            .collect();
        parts.join(" ")
    }

    fn sorted_terms<'a>(&self, s: &'a Scalar) -> Vec<(&'a Mono, &'a Coeff)> {
        let mut t: Vec<_> = s.terms().collect();
        t.sort_by(|a, b| mono_cmp(b.0, a.0).then_with(|| b.0.cmp(a.0)));
        t
    }

    /// Canonical plain-text rendering, highest monomial first.
    pub fn fmt_scalar(&self, s: &Scalar) -> String {
        if s.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms(s).into_iter().enumerate() {
            let neg = reads_negative(c) && (c.re != num::Zero::zero() || c.im != num::Zero::zero());
            let mag = if neg { -c.clone() } else { c.clone() };
            let mono = self.fmt_mono(m);
            let body = if mono.is_empty() {
                fmt_coeff(&mag)
            } else if mag == int(1) {
                mono
            } else {
                format!("{}*{}", fmt_coeff(&mag), mono)
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

    pub fn latex_scalar(&self, s: &Scalar) -> String {
        if s.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms(s).into_iter().enumerate() {
            let neg = reads_negative(c);
            let mag = if neg { -c.clone() } else { c.clone() };
            let mono = self.latex_mono(m);
            let body = if mono.is_empty() {
                latex_coeff(&mag)
            } else if mag == int(1) {
                mono
            } else {
                format!("{} {}", latex_coeff(&mag), mono)
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

fn divides(lhs: &Mono, m: &Mono) -> bool {
    lhs.iter().zip(m).all(|(l, e)| *l <= 0 || e >= l)
}

fn merge_vars(factors: &[&Arc<Chart>]) -> Result<(Vec<Var>, Vec<Vec<usize>>)> {
    let mut vars: Vec<Var> = Vec::new();
    let mut maps = Vec::new();
    for f in factors {
        let base = vars.len();
        let mut map = Vec::with_capacity(f.nvars());
        let mut fresh = 0;
        let mut local: Vec<Option<usize>> = vec![None; f.nvars()];
        for (i, v) in f.vars.iter().enumerate() {
            if v.kind == VarKind::Formal {
                if let Some(j) = vars.iter().position(|w| w.name == v.name && w.kind == VarKind::Formal) {
                    local[i] = Some(j);
                    continue;
                }
            }
            local[i] = Some(base + fresh);
            fresh += 1;
        }
        for (i, v) in f.vars.iter().enumerate() {
            let idx = local[i].unwrap();
            map.push(idx);
            if idx >= base {
                let conj = local[v.conj].unwrap();
                vars.push(Var { name: v.name.clone(), kind: v.kind, conj });
            }
        }
        maps.push(map);
    }
    Ok((vars, maps))
}

fn latex_name(name: &str) -> String {
    let split = name.find(|c: char| c.is_ascii_digit() || c == '_').unwrap_or(name.len());
    let (stem, sub) = name.split_at(split);
    let stem = match stem {
        "tau" | "eta" | "xi" | "theta" | "phi" | "psi" | "alpha" | "beta" | "gamma" => format!("\\{stem}"),
        s => s.to_string(),
    };
    let sub = sub.trim_start_matches('_').replace('_', ",");
    if sub.is_empty() {
        stem
    } else {
        format!("{stem}_{{{sub}}}")
    }
}

/// Incremental construction of a chart from names and textual rules.
#[derive(Default)]
pub struct ChartBuilder {
    name: String,
    vars: Vec<Var>,
    rules: Vec<(String, String)>,
    param: Option<(Arc<Chart>, Vec<String>)>,
}

impl ChartBuilder {
    pub fn new(name: &str) -> Self {
        ChartBuilder { name: name.into(), ..Default::default() }
    }

    fn push(mut self, name: &str, kind: VarKind) -> Self {
        let idx = self.vars.len();
        self.vars.push(Var { name: name.into(), kind, conj: idx });
        self
    }

    pub fn real(self, name: &str) -> Self {
        self.push(name, VarKind::Real)
    }

    pub fn unit(self, name: &str) -> Self {
        self.push(name, VarKind::Unit)
    }

    pub fn formal(self, name: &str) -> Self {
        self.push(name, VarKind::Formal)
    }

    /// A conjugate pair `z`, `zbar`.
    pub fn complex(mut self, z: &str, zbar: &str) -> Self {
        let a = self.vars.len();
        self.vars.push(Var { name: z.into(), kind: VarKind::Complex, conj: a + 1 });
        self.vars.push(Var { name: zbar.into(), kind: VarKind::Complex, conj: a });
        self
    }

    /// Oriented rule `lhs -> rhs`; `lhs` must be a monomial.
    pub fn rule(mut self, lhs: &str, rhs: &str) -> Self {
        self.rules.push((lhs.into(), rhs.into()));
        self
    }

    /// Relation-free parametrization: one image expression per variable, in order.
    pub fn param(mut self, target: Arc<Chart>, images: &[&str]) -> Self {
        self.param = Some((target, images.iter().map(|s| s.to_string()).collect()));
        self
    }

    pub fn build(self) -> Result<Arc<Chart>> {
        let bare = Chart { name: self.name.clone(), vars: self.vars.clone(), rules: vec![], param: None };
        let mut rules = Vec::new();
        for (l, r) in &self.rules {
            let lhs = bare.parse(l)?;
            let (m, c) = match lhs.terms().next() {
                Some((m, c)) if lhs.len() == 1 => (m.clone(), c.clone()),
                _ => return Err(Error::InvalidChart(format!("rule left side `{l}` is not a monomial"))),
            };
            if c != int(1) {
                return Err(Error::InvalidChart(format!("rule left side `{l}` must be monic")));
            }
            rules.push(Rule { lhs: m, rhs: bare.parse(r)? });
        }
        let param = match self.param {
            Some((target, images)) => {
                if images.len() != bare.nvars() {
                    return Err(Error::InvalidChart("parametrization arity".into()));
                }
                let images = images.iter().map(|s| target.parse(s)).collect::<Result<Vec<_>>>()?;
                Some(Param { target, images })
            }
            None => None,
        };
        let chart = Chart { name: self.name, vars: self.vars, rules, param };
        chart.validate()?;
        Ok(Arc::new(chart))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<Chart> {
        let t = ChartBuilder::new("t3").unit("eta").unit("xi1").unit("xi2").build().unwrap();
        ChartBuilder::new("s3")
            .complex("z1", "zb1")
            .complex("z2", "zb2")
            .rule("z2*zb2", "1 - z1*zb1")
            .param(
                t,
                &[
                    "1/2*(eta + eta^-1)*xi1",
                    "1/2*(eta + eta^-1)*xi1^-1",
                    "-1/2*i*(eta - eta^-1)*xi2",
                    "-1/2*i*(eta - eta^-1)*xi2^-1",
                ],
            )
            .build()
            .unwrap()
    }

    #[test]
    fn sphere_relation_reduces_to_one() {
        let c = s3();
        assert_eq!(c.parse("z1*zb1 + z2*zb2").unwrap(), c.one());
        assert_eq!(c.parse("z2^2*zb2^3").unwrap(), c.parse("zb2 - 2*z1*zb1*zb2 + z1^2*zb1^2*zb2").unwrap());
    }

    #[test]
    fn rule_must_decrease_order() {
        let err = ChartBuilder::new("bad")
            .real("x")
            .real("y")
            .rule("x", "y")
            .param(ChartBuilder::new("p").real("s").build().unwrap(), &["s", "s"])
            .build();
        assert!(err.is_err());
    }

    #[test]
    fn conj_on_units_and_pairs() {
        let c = ChartBuilder::new("c").complex("z", "zb").unit("u").formal("tau").build().unwrap();
        assert_eq!(c.conj(&c.parse("i*z*u^2*tau").unwrap()), c.parse("i*zb*u^-2*tau").unwrap());
    }

    #[test]
    fn product_shares_formal_constants() {
        let a = ChartBuilder::new("a").real("x").formal("tau").build().unwrap();
        let b = ChartBuilder::new("b").unit("g").formal("tau").build().unwrap();
        let p = Chart::product("ab", &[&b, &a]).unwrap();
        assert_eq!(p.nvars(), 3);
        let p2 = Chart::product("s3xg", &[&b, &s3()]).unwrap();
        assert_eq!(p2.param().unwrap().target.nvars(), 5);
        assert_eq!(p2.rules().len(), 1);
    }

    #[test]
    fn latex_names() {
        let c = s3();
        assert_eq!(c.latex_var(1), "\\bar{z_{1}}");
        assert_eq!(latex_name("g2_1"), "g_{2,1}");
        assert_eq!(latex_name("tau"), "\\tau");
    }
}
