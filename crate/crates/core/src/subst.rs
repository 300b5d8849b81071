//! Substitutions `source variable -> target scalar`, acting by pullback.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::chart::{ensure_same, Chart};
use num::{One, Zero};

use crate::coeff::{int, Coeff};
use crate::error::{Error, Result};
use crate::form::{bits, Form};
use crate::scalar::Scalar;

fn coeff_pow(c: &Coeff, e: i32) -> Coeff {
    let base = if e < 0 { int(1) / c.clone() } else { c.clone() };
    (0..e.unsigned_abs()).fold(int(1), |acc, _| acc * base.clone())
}

#[derive(Clone, Debug)]
pub struct Substitution {
    source: Arc<Chart>,
    target: Arc<Chart>,
    images: Vec<Scalar>,
    inverses: Vec<Option<Scalar>>,
}

impl Substitution {
    /// Validated construction: Laurent variables need invertible images and
    /// every source relation must map to zero on the target.
    pub fn new(source: &Arc<Chart>, target: &Arc<Chart>, images: Vec<Scalar>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::Arity { expected: source.nvars(), got: images.len() });
        }
        let sub = Self::unchecked(source, target, images);
        for (i, v) in source.vars().iter().enumerate() {
            if v.kind.is_laurent() && sub.inverses[i].is_none() {
                return Err(Error::NotInvertible(v.name.clone()));
            }
        }
        for r in source.rules() {
            let rel = &Scalar::monomial(int(1), r.lhs.clone()) - &r.rhs;
            if !Form::scalar(target, sub.apply(&rel)).vanishes() {
                return Err(Error::RelationViolation(source.fmt_mono(&r.lhs)));
            }
        }
        Ok(sub)
    }

    pub fn unchecked(source: &Arc<Chart>, target: &Arc<Chart>, images: Vec<Scalar>) -> Self {
        let images: Vec<Scalar> = images.into_iter().map(|s| target.reduce(s)).collect();
        let inverses = images
            .iter()
            .enumerate()
            .map(|(i, s)| if source.kind(i).is_laurent() { target.inverse(s) } else { None })
            .collect();
        Substitution { source: source.clone(), target: target.clone(), images, inverses }
    }

    /// From textual images keyed by source variable name; unnamed variables
    /// map to the equally named target variable.
    pub fn parse(source: &Arc<Chart>, target: &Arc<Chart>, images: &[(&str, &str)]) -> Result<Self> {
        let mut out = Vec::with_capacity(source.nvars());
        for v in source.vars() {
            let img = match images.iter().find(|(n, _)| *n == v.name) {
                Some((_, e)) => target.parse(e)?,
                None => target.var_scalar(&v.name)?,
            };
            out.push(img);
        }
        for (n, _) in images {
            source.require(n)?;
        }
        Self::new(source, target, out)
    }

    /// Maps every source variable to the equally named target variable.
    pub fn by_name(source: &Arc<Chart>, target: &Arc<Chart>) -> Result<Self> {
        Self::parse(source, target, &[])
    }

    pub fn identity(chart: &Arc<Chart>) -> Self {
        let images = (0..chart.nvars()).map(|i| Scalar::var(chart.nvars(), i)).collect();
        Self::unchecked(chart, chart, images)
    }

    pub fn source(&self) -> &Arc<Chart> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Chart> {
        &self.target
    }

    pub fn images(&self) -> &[Scalar] {
        &self.images
    }

    pub fn image(&self, idx: usize) -> &Scalar {
        &self.images[idx]
    }

    pub fn apply(&self, s: &Scalar) -> Scalar {
        let mut cache: HashMap<(usize, i32), Scalar> = HashMap::new();
        self.apply_cached(s, &mut cache)
    }

    fn power(&self, v: usize, e: i32, cache: &mut HashMap<(usize, i32), Scalar>) -> Scalar {
        if let Some(p) = cache.get(&(v, e)) {
            return p.clone();
        }
        let base = if e > 0 {
            &self.images[v]
        } else {
            self.inverses[v].as_ref().expect("Laurent image invertible")
        };
        let p = if e.abs() == 1 {
            base.clone()
        } else {
            let prev = self.power(v, e - e.signum(), cache);
            self.target.mul(&prev, base)
        };
        cache.insert((v, e), p.clone());
        p
    }

    /// Terms are grouped by their exponents in variables with polynomial
    /// images; single-monomial images are applied by exponent arithmetic.
    fn apply_cached(&self, s: &Scalar, cache: &mut HashMap<(usize, i32), Scalar>) -> Scalar {
        let n = self.target.nvars();
        let monomial: Vec<Option<(&Vec<i32>, &Coeff)>> =
            self.images.iter().map(|img| if img.len() == 1 { img.terms().next() } else { None }).collect();
        let mut groups: BTreeMap<Vec<i32>, Scalar> = BTreeMap::new();
        for (m, c) in s.terms() {
            let mut key = vec![0; m.len()];
            let mut mono = vec![0; n];
            let mut coef = c.clone();
            for (v, &e) in m.iter().enumerate() {
                match monomial[v] {
                    Some((im, ic)) if e >= 0 || self.inverses[v].is_some() => {
                        for (slot, x) in mono.iter_mut().zip(im) {
                            *slot += e * x;
                        }
                        if !ic.is_one() {
                            coef *= coeff_pow(ic, e);
                        }
                    }
                    _ if e > 0 && self.images[v].is_zero() => {
                        coef = int(0);
                        break;
                    }
                    _ => key[v] = e,
                }
            }
            if coef.is_zero() {
                continue;
            }
            groups.entry(key).or_insert_with(Scalar::zero).add_term(mono, coef);
        }
        let mut out = Scalar::zero();
        for (key, raw) in groups {
            let mut term = self.target.reduce(raw);
            for (v, &e) in key.iter().enumerate() {
                if e == 0 || term.is_zero() {
                    continue;
                }
                let p = self.power(v, e, cache);
                term = self.target.mul(&term, &p);
            }
            out = &out + &term;
        }
        out
    }

    pub fn pullback(&self, form: &Form) -> Result<Form> {
        ensure_same(form.chart(), &self.source)?;
        let mut cache = HashMap::new();
        let mut dimg: HashMap<usize, Form> = HashMap::new();
        let mut out = Form::zero(&self.target);
        for (w, s) in form.terms() {
            let coef = self.apply_cached(s, &mut cache);
            if coef.is_zero() {
                continue;
            }
            let mut acc = Form::scalar(&self.target, coef);
            for v in bits(*w) {
                let dv = dimg
                    .entry(v)
                    .or_insert_with(|| Form::scalar(&self.target, self.images[v].clone()).exterior_d())
                    .clone();
                acc = acc.wedge(&dv)?;
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// `self` followed by `next`: pulling back along the result equals
    /// pulling back along `self` and then along `next`.
    pub fn then(&self, next: &Substitution) -> Result<Substitution> {
        ensure_same(&self.target, &next.source)?;
        let images = self.images.iter().map(|s| next.apply(s)).collect();
        Ok(Substitution::unchecked(&self.source, &next.target, images))
    }

    /// Equality as maps: images agree on the target chart.
    pub fn same_as(&self, other: &Substitution) -> bool {
        crate::chart::same_chart(&self.source, &other.source)
            && crate::chart::same_chart(&self.target, &other.target)
            && self
                .images
                .iter()
                .zip(&other.images)
                .all(|(a, b)| Form::scalar(&self.target, a - b).vanishes())
    }
}
