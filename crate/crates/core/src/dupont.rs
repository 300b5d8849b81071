//! Dupont forms: compatible families of forms on `Δ^p × X_p`.

use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;

use crate::bundle::{Connection, PrincipalBundle};
use crate::chart::{Chart, ChartBuilder};
use crate::coeff::{from_rational, int};
use crate::error::{Error, Result};
use crate::form::{bits, permutation_sign, wedge_sign, Form, Wedge};
use crate::lie::{InvariantPolynomial, TorusGroup};
use crate::scalar::Scalar;
use crate::simplicial::{Kind, SimplicialSpace};
use crate::subst::Substitution;

/// `ω^(0), …, ω^(max)`, each on the chart of `Δ^p × X_p`.
pub type DupontForm = Vec<Form>;

#[derive(Clone, Debug)]
pub struct DupontSpace {
    base: SimplicialSpace,
    charts: Vec<Arc<Chart>>,
    /// `mixed[p] = Δ^{p-1} × X_p` for `p ≥ 1`.
    mixed: Vec<Option<Arc<Chart>>>,
}

fn simplex_chart(p: usize) -> Result<Arc<Chart>> {
    let mut b = ChartBuilder::new(&format!("D{p}"));
    for j in 1..=p {
        b = b.real(&format!("t{j}"));
    }
    b.build()
}

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `∫_{Δ^p} t_1^{a_1}⋯t_p^{a_p} dt_1⋯dt_p = Π a_i! / (p + Σ a_i)!`.
pub fn simplex_moment(exps: &[i32]) -> BigRational {
    let num = exps.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a as i64));
    let total: i64 = exps.len() as i64 + exps.iter().map(|&a| a as i64).sum::<i64>();
    BigRational::new(num, factorial(total))
}

/// Integrates over the standard simplex `{t_i ≥ 0, Σ t_i ≤ 1}` in the listed
/// variables, oriented by `dt_1∧…∧dt_p` in the listed order and placed in
/// front; the remaining variables are renamed into `target`.
pub fn integrate_simplex(w: &Form, ts: &[&str], target: &Arc<Chart>) -> Result<Form> {
    let src = w.chart();
    let idx = ts.iter().map(|t| src.require(t)).collect::<Result<Vec<_>>>()?;
    let tmask: Wedge = idx.iter().fold(0, |m, &i| m | 1 << i);
    let order_sign = permutation_sign(&idx);
    let rename: Vec<Option<usize>> =
        (0..src.nvars()).map(|v| if tmask & 1 << v != 0 { None } else { target.index(&src.var(v).name) }).collect();
    let mut out = Form::zero(target);
    for (wd, s) in w.terms() {
        if wd & tmask != tmask {
            continue;
        }
        let rest = wd & !tmask;
        let mut nw = 0;
        let mut dst_order = Vec::new();
        for b in bits(rest) {
            let t = rename[b].ok_or_else(|| Error::UnknownVariable(src.var(b).name.clone(), target.name().into()))?;
            nw |= 1 << t;
            dst_order.push(t);
        }
        let sign = order_sign * wedge_sign(tmask, rest) * permutation_sign(&dst_order);
        let mut acc = Scalar::zero();
        for (m, c) in s.terms() {
            let exps: Vec<i32> = idx.iter().map(|&i| m[i]).collect();
            if exps.iter().any(|&e| e < 0) {
                return Err(Error::NonPolynomial("barycentric coordinate".into()));
            }
            let mut nm = vec![0; target.nvars()];
            for (v, &e) in m.iter().enumerate() {
                if e != 0 && tmask & 1 << v == 0 {
                    let t = rename[v].ok_or_else(|| Error::UnknownVariable(src.var(v).name.clone(), target.name().into()))?;
                    nm[t] += e;
                }
            }
            acc.add_term(nm, c * from_rational(simplex_moment(&exps)) * int(sign));
        }
        out.add_term(nw, target.reduce(acc));
    }
    Ok(out)
}

impl DupontSpace {
    pub fn new(base: SimplicialSpace) -> Result<Self> {
        let mut charts = Vec::new();
        let mut mixed = vec![None];
        for p in 0..=base.max_level() {
            let xp = base.level(p)?;
            let dp = simplex_chart(p)?;
            let c = Chart::product(&format!("D{p}x{}", xp.name()), &[&dp, xp])?;
            if c.nvars() != p + xp.nvars() {
                return Err(Error::InvalidChart("simplex coordinates clash with the space".into()));
            }
            charts.push(c);
            if p >= 1 {
                let dq = simplex_chart(p - 1)?;
                mixed.push(Some(Chart::product(&format!("D{}x{}", p - 1, xp.name()), &[&dq, xp])?));
            }
        }
        Ok(DupontSpace { base, charts, mixed })
    }

    pub fn base(&self) -> &SimplicialSpace {
        &self.base
    }

    pub fn max_level(&self) -> usize {
        self.charts.len() - 1
    }

    pub fn chart(&self, p: usize) -> Result<&Arc<Chart>> {
        self.charts.get(p).ok_or(Error::LevelOverflow { level: p, max: self.max_level() })
    }

    /// Barycentric `t_i` at level `p`, with `t_0 = 1 - Σ t_j`.
    pub fn barycentric(&self, p: usize, i: usize) -> Result<Scalar> {
        let c = self.chart(p)?;
        if i == 0 {
            let mut s = c.one();
            for j in 1..=p {
                s = &s - &c.var_scalar(&format!("t{j}"))?;
            }
            Ok(s)
        } else {
            c.var_scalar(&format!("t{i}"))
        }
    }

    /// Bitmask of `dt_1, …, dt_p` at level `p`.
    pub fn simplex_mask(&self, p: usize) -> Wedge {
        (0..p).fold(0, |m, j| m | 1 << j)
    }

    /// Pullback along `∂^i × id: Δ^{p-1} × X_p → Δ^p × X_p`.
    pub fn coface(&self, p: usize, i: usize) -> Result<Substitution> {
        let src = self.chart(p)?;
        let dst = self.mixed.get(p).and_then(|m| m.clone()).ok_or(Error::LevelUnderflow { level: p, min: 1 })?;
        let s = |j: usize| dst.var_scalar(&format!("t{j}"));
        let mut images = Vec::with_capacity(src.nvars());
        for v in src.vars() {
            let img = match v.name.strip_prefix('t').and_then(|n| n.parse::<usize>().ok()).filter(|&j| j >= 1 && j <= p) {
                Some(j) if i == 0 => {
                    if j == 1 {
                        let mut acc = dst.one();
                        for k in 1..p {
                            acc = &acc - &s(k)?;
                        }
                        acc
                    } else {
                        s(j - 1)?
                    }
                }
                Some(j) if j < i => s(j)?,
                Some(j) if j == i => Scalar::zero(),
                Some(j) => s(j - 1)?,
                None => dst.var_scalar(&v.name)?,
            };
            images.push(img);
        }
        Substitution::new(src, &dst, images)
    }

    /// Pullback along `id × ∂_i: Δ^{p-1} × X_p → Δ^{p-1} × X_{p-1}`.
    pub fn lower(&self, p: usize, i: usize) -> Result<Substitution> {
        let src = self.chart(p - 1)?;
        let dst = self.mixed.get(p).and_then(|m| m.clone()).ok_or(Error::LevelUnderflow { level: p, min: 1 })?;
        let face = self.base.face(p, i)?;
        let into = Substitution::by_name(self.base.level(p)?, &dst)?;
        let images = src
            .vars()
            .iter()
            .map(|v| match face.source().index(&v.name) {
                Some(k) => Ok(into.apply(face.image(k))),
                None => dst.var_scalar(&v.name),
            })
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(src, &dst, images)
    }

    /// Failing `(p, i)` pairs of the face compatibility conditions.
    pub fn incompatibilities(&self, w: &DupontForm) -> Result<Vec<(usize, usize)>> {
        let mut bad = Vec::new();
        for p in 1..w.len() {
            for i in 0..=p {
                let a = self.coface(p, i)?.pullback(&w[p])?;
                let b = self.lower(p, i)?.pullback(&w[p - 1])?;
                if !a.same_as(&b) {
                    bad.push((p, i));
                }
            }
        }
        Ok(bad)
    }

    /// `∫_{Δ^p}` of a level-`p` form, positively oriented on `dt_1∧…∧dt_p`.
    pub fn integrate(&self, p: usize, w: &Form) -> Result<Form> {
        let names: Vec<String> = (1..=p).map(|j| format!("t{j}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        integrate_simplex(w, &refs, self.base.level(p)?)
    }

    pub fn integrate_all(&self, w: &DupontForm) -> Result<Vec<Form>> {
        w.iter().enumerate().map(|(p, f)| self.integrate(p, f)).collect()
    }

    /// `d` levelwise (simplex and space directions together).
    pub fn exterior_d(&self, w: &DupontForm) -> DupontForm {
        w.iter().map(Form::exterior_d).collect()
    }

    pub fn wedge(&self, a: &DupontForm, b: &DupontForm) -> Result<DupontForm> {
        a.iter().zip(b).map(|(x, y)| x.wedge(y)).collect()
    }

    /// The Dupont form that is `α` pulled back along the `i`-th vertex map and
    /// weighted by `t_i`, summed over vertices: `Σ t_i φ_i^* α`.
    pub fn barycentric_extension(&self, vertex_maps: &dyn Fn(usize, usize) -> Result<Substitution>, alpha: &Form) -> Result<DupontForm> {
        (0..=self.max_level())
            .map(|p| {
                let mut acc = Form::zero(self.chart(p)?);
                for i in 0..=p {
                    let t = self.barycentric(p, i)?;
                    acc = &acc + &vertex_maps(p, i)?.pullback(alpha)?.mul_scalar(&t);
                }
                Ok(acc)
            })
            .collect()
    }

    /// For `G^•×M`: pullback along `(g, m) ↦ g_{i+1}⋯g_p m` into level `p`.
    pub fn vertex_map(&self, p: usize, i: usize) -> Result<Substitution> {
        let Kind::Action(act) = self.base.kind() else {
            return Err(Error::Unsupported("vertex maps need an action".into()));
        };
        let c = self.chart(p)?;
        let rank = act.group.rank();
        let mut g = vec![c.one(); rank];
        for j in i + 1..=p {
            for (a, ga) in g.iter_mut().enumerate() {
                *ga = c.mul(ga, &c.var_scalar(&self.base.slot_name(j, a))?);
            }
        }
        let m: Vec<Scalar> = act.space().vars().iter().map(|v| c.var_scalar(&v.name)).collect::<Result<_>>()?;
        let images = act.act_on(c, &g, &m)?;
        Substitution::new(act.space(), c, images)
    }

    /// For `N̄K`: pullback along the projection to the `i`-th factor.
    pub fn bar_vertex_map(&self, group: &TorusGroup, p: usize, i: usize) -> Result<Substitution> {
        let c = self.chart(p)?;
        let images = group
            .vars
            .iter()
            .enumerate()
            .map(|(a, _)| c.var_scalar(&self.base.slot_name(i, a)))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(group.chart(), c, images)
    }

    /// `Θ^(p) = Σ t_i ϑ_i` on `G^•×E`, for a `G`-invariant connection.
    pub fn simplicial_connection(&self, bundle: &PrincipalBundle, theta: &Connection) -> Result<Vec<Connection>> {
        if !bundle.g_invariant(theta)? {
            return Err(Error::NotInvariant(format!("connection on `{}`", bundle.name)));
        }
        let per_component = theta
            .components
            .iter()
            .map(|c| self.barycentric_extension(&|p, i| self.vertex_map(p, i), c))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..=self.max_level())
            .map(|p| Connection::new(per_component.iter().map(|lv| lv[p].clone()).collect()))
            .collect())
    }

    /// `ϑ̄ = Σ t_i π_i^* ϑ₀` on `N̄K`, with `ϑ₀` the Maurer–Cartan form.
    pub fn universal_connection(&self, group: &TorusGroup) -> Result<Vec<Connection>> {
        let mc = group.maurer_cartan();
        let per_component = mc
            .iter()
            .map(|c| self.barycentric_extension(&|p, i| self.bar_vertex_map(group, p, i), c))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..=self.max_level())
            .map(|p| Connection::new(per_component.iter().map(|lv| lv[p].clone()).collect()))
            .collect())
    }

    /// `ω_P(Θ) = P(dΘ)` levelwise (abelian structure group).
    pub fn char_form(&self, p: &InvariantPolynomial, theta: &[Connection]) -> Result<DupontForm> {
        theta.iter().map(|c| p.evaluate_diagonal(&c.curvature())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::rotation_plane;
    use crate::coeff::frac;

    #[test]
    fn simplex_volumes() {
        let s = DupontSpace::new(SimplicialSpace::action(&rotation_plane(), 5).unwrap()).unwrap();
        let mut fact = 1;
        for p in 0..=5 {
            if p > 0 {
                fact *= p as i64;
            }
            let c = s.chart(p).unwrap();
            let gens: Vec<String> = (1..=p).map(|j| format!("dt{j}")).collect();
            let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
            let w = Form::parse_terms(c, &[("1", &refs)]).unwrap();
            let v = s.integrate(p, &w).unwrap();
            assert_eq!(v, Form::constant(s.base().level(p).unwrap(), frac(1, fact)));
        }
        let c1 = s.chart(1).unwrap();
        let t0 = Form::parse_terms(c1, &[("1 - t1", &["dt1"])]).unwrap();
        assert_eq!(s.integrate(1, &t0).unwrap(), Form::constant(s.base().level(1).unwrap(), frac(1, 2)));
    }
}
