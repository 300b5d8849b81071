//! Getzler's complex of polynomial-valued forms on `G^p × M`, and the map 𝒥
//! from the Bott–Shulman double complex into it.

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;

use crate::action::Action;
use crate::chart::Chart;
use crate::coeff::{i_unit, int};
use crate::equivariant::EquivariantForm;
use crate::error::{Error, Result};
use crate::form::{permutation_sign, Form};
use crate::scalar::Scalar;
use crate::simplicial::SimplicialSpace;
use crate::subst::Substitution;
use crate::vector_field::VectorField;

/// A cochain of the total complex: one polynomial-valued form per level.
pub type Cochain = BTreeMap<usize, EquivariantForm>;

#[derive(Clone, Debug)]
pub struct Getzler {
    space: SimplicialSpace,
    action: Action,
    dual: Vec<String>,
    /// `fields[p][a]`: `X_a♯` acting on the `M` factor of level `p`.
    fields: Vec<Vec<VectorField>>,
}

fn sign(p: usize) -> i64 {
    if p.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn cochain_add(a: &Cochain, b: &Cochain) -> Cochain {
    let mut out = a.clone();
    for (p, w) in b {
        let sum = match out.remove(p) {
            Some(v) => &v + w,
            None => w.clone(),
        };
        out.insert(*p, sum);
    }
    out.retain(|_, w| !w.is_zero());
    out
}

pub fn cochain_scale(a: &Cochain, c: i64) -> Cochain {
    a.iter().map(|(p, w)| (*p, w.scale(&int(c)))).filter(|(_, w)| !w.is_zero()).collect()
}

pub fn cochain_vanishes(a: &Cochain) -> bool {
    a.values().all(EquivariantForm::vanishes)
}

pub fn cochain_same(a: &Cochain, b: &Cochain) -> bool {
    cochain_vanishes(&cochain_add(a, &cochain_scale(b, -1)))
}

impl Getzler {
    pub fn new(action: &Action, max: usize) -> Result<Self> {
        let space = SimplicialSpace::action(action, max)?;
        let mut fields = Vec::new();
        for p in 0..=max {
            let chart = space.level(p)?;
            let per_basis = (0..action.group.rank())
                .map(|a| action.fundamental_basis(a).transport(chart))
                .collect::<Result<Vec<_>>>()?;
            fields.push(per_basis);
        }
        let dual = action.group.algebra.dual.clone();
        Ok(Getzler { space, action: action.clone(), dual, fields })
    }

    pub fn space(&self) -> &SimplicialSpace {
        &self.space
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn dual(&self) -> &[String] {
        &self.dual
    }

    pub fn max_level(&self) -> usize {
        self.space.max_level()
    }

    pub fn level(&self, p: usize) -> Result<&Arc<Chart>> {
        self.space.level(p)
    }

    /// Forgets the group differentials, keeping only the `M` directions.
    fn restrict(&self, p: usize, w: &EquivariantForm) -> EquivariantForm {
        let mask = self.space.group_mask(p);
        w.map(|f| f.drop_generators(mask))
    }

    /// `d̄ = Σ (-1)^i ∂_i^*`, level `p` to `p + 1`.
    pub fn dbar(&self, p: usize, w: &EquivariantForm) -> Result<EquivariantForm> {
        let target = self.level(p + 1)?;
        let mut out = EquivariantForm::zero(target, &self.dual);
        for i in 0..=p + 1 {
            let pulled = w.pullback(self.space.face(p + 1, i)?)?;
            out = &out + &pulled.scale(&int(sign(i)));
        }
        Ok(self.restrict(p + 1, &out))
    }

    /// `ῑ f = Σ_{i<p} (-1)^i Σ_a X_a σ_i^*(i ∂_{g_{i+1,a}} f)`, level `p` to `p − 1`.
    pub fn iota_bar(&self, p: usize, w: &EquivariantForm) -> Result<EquivariantForm> {
        if p == 0 {
            return Err(Error::LevelUnderflow { level: 0, min: 1 });
        }
        let chart = self.level(p)?;
        let mut out = EquivariantForm::zero(self.level(p - 1)?, &self.dual);
        for i in 0..p {
            let sigma = self.space.degeneracy(p - 1, i)?;
            for a in 0..self.space.rank() {
                let g = chart.require(&self.space.slot_name(i + 1, a))?;
                let mut part = EquivariantForm::zero(chart, &self.dual);
                for (m, f) in w.components() {
                    let mut k = m.clone();
                    k.push(a);
                    let df = Form::from_map(
                        chart,
                        f.terms().map(|(wd, s)| (*wd, chart.reduce(s.derivative(g).scale(&i_unit())))).collect(),
                    );
                    part.add_component(k, df);
                }
                out = &out + &part.pullback(sigma)?.scale(&int(sign(i)));
            }
        }
        Ok(out)
    }

    /// `Σ_a X_a ι(X_a♯)` along `M`.
    pub fn iota(&self, p: usize, w: &EquivariantForm) -> Result<EquivariantForm> {
        let mut out = EquivariantForm::zero(self.level(p)?, &self.dual);
        for (a, xs) in self.fields[p].iter().enumerate() {
            for (m, f) in w.components() {
                let mut k = m.clone();
                k.push(a);
                out.add_component(k, f.contract(xs)?);
            }
        }
        Ok(out)
    }

    /// `Σ_a X_a L(X_a♯)` along `M`.
    pub fn lie(&self, p: usize, w: &EquivariantForm) -> Result<EquivariantForm> {
        let mut out = EquivariantForm::zero(self.level(p)?, &self.dual);
        for (a, xs) in self.fields[p].iter().enumerate() {
            for (m, f) in w.components() {
                let mut k = m.clone();
                k.push(a);
                out.add_component(k, self.restrict_form(p, &f.lie_derivative(xs)?));
            }
        }
        Ok(out)
    }

    fn restrict_form(&self, p: usize, f: &Form) -> Form {
        f.drop_generators(self.space.group_mask(p))
    }

    /// de Rham differential along `M`.
    pub fn d_m(&self, p: usize, w: &EquivariantForm) -> EquivariantForm {
        self.restrict(p, &w.exterior_d())
    }

    /// `d_G = d̄ + ῑ + (-1)^p (d + ι)` on a cochain.
    pub fn d_total(&self, c: &Cochain) -> Result<Cochain> {
        let mut out = Cochain::new();
        for (&p, w) in c {
            let mut parts = Cochain::new();
            if p < self.max_level() {
                parts.insert(p + 1, self.dbar(p, w)?);
            }
            if p > 0 {
                parts.insert(p - 1, self.iota_bar(p, w)?);
            }
            let cartan = &self.d_m(p, w) + &self.iota(p, w)?;
            parts.insert(p, cartan.scale(&int(sign(p))));
            out = cochain_add(&out, &parts);
        }
        Ok(out)
    }

    /// `∫_G`: keeps the terms constant in the first group slot.
    pub fn integrate_group(&self, p: usize, w: &EquivariantForm) -> Result<EquivariantForm> {
        if p == 0 {
            return Err(Error::LevelUnderflow { level: 0, min: 1 });
        }
        let chart = self.level(p)?;
        let first: Vec<usize> =
            (0..self.space.rank()).map(|a| chart.require(&self.space.slot_name(1, a))).collect::<Result<_>>()?;
        let kept = w.map(|f| {
            Form::from_map(
                chart,
                f.terms().map(|(wd, s)| (*wd, s.filter(|m| first.iter().all(|&k| m[k] == 0)))).collect(),
            )
        });
        kept.pullback(self.space.degeneracy(p - 1, 0)?)
    }

    /// `Σ_a X_a ι(ξ_a)` with `ξ_a = i g_{j,a} ∂_{g_{j,a}}` on slot `j`.
    fn contract_slot(&self, p: usize, j: usize, w: &EquivariantForm) -> Result<EquivariantForm> {
        let chart = self.level(p)?;
        let mut out = EquivariantForm::zero(chart, &self.dual);
        for a in 0..self.space.rank() {
            let name = self.space.slot_name(j, a);
            let g = chart.require(&name)?;
            let xi = VectorField::new(chart, BTreeMap::from([(g, chart.var_scalar(&name)?.scale(&-i_unit()))]))?;
            for (m, f) in w.components() {
                let mut k = m.clone();
                k.push(a);
                out.add_component(k, f.contract(&xi)?);
            }
        }
        Ok(out)
    }

    /// `G^p × M → G^k × M`, sending the selected slots to `g_1, …, g_k` in
    /// order and the others to the identity.
    fn insertion(&self, p: usize, selected: &[usize]) -> Result<Substitution> {
        let src = self.level(p)?;
        let dst = self.level(selected.len())?;
        let images = src
            .vars()
            .iter()
            .map(|v| {
                for j in 1..=p {
                    for a in 0..self.space.rank() {
                        if v.name == self.space.slot_name(j, a) {
                            return match selected.iter().position(|&s| s == j) {
                                Some(m) => dst.var_scalar(&self.space.slot_name(m + 1, a)),
                                None => Ok(dst.one()),
                            };
                        }
                    }
                }
                dst.var_scalar(&v.name)
            })
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(src, dst, images)
    }

    /// 𝒥 on a level-`p` form: for each `(k, p − k)` shuffle, contract the
    /// last `p − k` slots and insert the first `k` into `G^k × M`.
    pub fn j_map(&self, p: usize, w: &Form) -> Result<Cochain> {
        let mut out = Cochain::new();
        let base = EquivariantForm::from_form(w.clone(), &self.dual);
        for k in 0..=p {
            let mut acc = EquivariantForm::zero(self.level(k)?, &self.dual);
            for selected in (1..=p).combinations(k) {
                let rest: Vec<usize> = (1..=p).filter(|j| !selected.contains(j)).collect();
                let order: Vec<usize> = selected.iter().chain(&rest).copied().collect();
                let mut v = base.clone();
                for &j in rest.iter().rev() {
                    v = self.contract_slot(p, j, &v)?;
                }
                let v = v.pullback(&self.insertion(p, &selected)?)?;
                acc = &acc + &v.scale(&int(permutation_sign(&order)));
            }
            let acc = self.restrict(k, &acc);
            if !acc.is_zero() {
                out.insert(k, acc);
            }
        }
        Ok(out)
    }

    /// 𝒥 applied levelwise to a family of forms.
    pub fn j_map_all(&self, ws: &[Form]) -> Result<Cochain> {
        let mut out = Cochain::new();
        for (p, w) in ws.iter().enumerate() {
            out = cochain_add(&out, &self.j_map(p, w)?);
        }
        Ok(out)
    }

    /// `pr₀`: the level-zero part, as an equivariant form on `M`.
    pub fn pr0(&self, c: &Cochain) -> Result<EquivariantForm> {
        let into = Substitution::by_name(self.level(0)?, self.action.space())?;
        match c.get(&0) {
            Some(w) => w.pullback(&into),
            None => Ok(EquivariantForm::zero(self.action.space(), &self.dual)),
        }
    }

    /// The Bott–Shulman differential `δ + (-1)^p d` on a family of forms.
    pub fn double_d(&self, ws: &[Form]) -> Result<Vec<Form>> {
        let mut out: Vec<Form> = (0..ws.len()).map(|p| Ok(Form::zero(self.level(p)?))).collect::<Result<_>>()?;
        for (p, w) in ws.iter().enumerate() {
            out[p] = &out[p] + &w.exterior_d().scale(&int(sign(p)));
            if p + 1 < ws.len() {
                out[p + 1] = &out[p + 1] + &self.space.del(p, w)?;
            }
        }
        Ok(out)
    }

    /// Defect of `𝒥 D = d_G 𝒥` on a single level-`p` form, up to level `p + 1`.
    pub fn chain_map_defect(&self, p: usize, w: &Form) -> Result<Cochain> {
        if p + 1 > self.max_level() {
            return Err(Error::LevelOverflow { level: p + 1, max: self.max_level() });
        }
        let mut family: Vec<Form> = (0..=p + 1).map(|q| Ok(Form::zero(self.level(q)?))).collect::<Result<_>>()?;
        family[p] = w.clone();
        let lhs = self.j_map_all(&self.double_d(&family)?)?;
        let rhs = self.d_total(&self.j_map(p, w)?)?;
        Ok(cochain_add(&lhs, &cochain_scale(&rhs, -1)))
    }

    /// Defects of the three identities
    /// `𝒥∂ = (d̄ + (-1)^k ι)𝒥`, `𝒥((-1)^p d_M) = (-1)^k d 𝒥` and
    /// `𝒥((-1)^p d_G) = ῑ 𝒥` on a level-`p` form, where `k` is the output
    /// level and `d_M`, `d_G` differentiate along `M` and the group copies.
    pub fn identity_defects(&self, p: usize, w: &Form) -> Result<[Cochain; 3]> {
        if p + 1 > self.max_level() {
            return Err(Error::LevelOverflow { level: p + 1, max: self.max_level() });
        }
        let jw = self.j_map(p, w)?;
        let mask = self.space.group_mask(p);

        let mut rhs1 = Cochain::new();
        let mut rhs2 = Cochain::new();
        let mut rhs3 = Cochain::new();
        for (&k, v) in &jw {
            let mut part = Cochain::new();
            part.insert(k + 1, self.dbar(k, v)?);
            rhs1 = cochain_add(&rhs1, &part);
            let mut part = Cochain::new();
            part.insert(k, self.iota(k, v)?.scale(&int(sign(k))));
            rhs1 = cochain_add(&rhs1, &part);
            let mut part = Cochain::new();
            part.insert(k, self.d_m(k, v).scale(&int(sign(k))));
            rhs2 = cochain_add(&rhs2, &part);
            if k > 0 {
                let mut part = Cochain::new();
                part.insert(k - 1, self.iota_bar(k, v)?);
                rhs3 = cochain_add(&rhs3, &part);
            }
        }
        let lhs1 = self.j_map(p + 1, &self.space.del(p, w)?)?;
        let lhs2 = cochain_scale(&self.j_map(p, &w.exterior_d_along(!mask))?, sign(p));
        let lhs3 = cochain_scale(&self.j_map(p, &w.exterior_d_along(mask))?, sign(p));
        Ok([
            cochain_add(&lhs1, &cochain_scale(&rhs1, -1)),
            cochain_add(&lhs2, &cochain_scale(&rhs2, -1)),
            cochain_add(&lhs3, &cochain_scale(&rhs3, -1)),
        ])
    }

    /// Scalar helper for tests: `g_{j,a}` at level `p`.
    pub fn slot_scalar(&self, p: usize, j: usize, a: usize) -> Result<Scalar> {
        self.level(p)?.var_scalar(&self.space.slot_name(j, a))
    }
}
