//! Simplicial manifolds `G^•×M`, `NK`, `N̄K` in coordinates, with faces and
//! degeneracies realized as pullback substitutions.

use std::sync::Arc;

use crate::action::Action;
use crate::chart::{Chart, ChartBuilder};
use crate::error::{Error, Result};
use crate::form::{Form, Wedge};
use crate::lie::TorusGroup;
use crate::scalar::Scalar;
use crate::subst::Substitution;

#[derive(Clone, Debug)]
pub enum Kind {
    /// `G^p × M` for an action of `G` on `M`.
    Action(Box<Action>),
    /// `K^{p+1}`, the total space of the universal bundle.
    Bar(TorusGroup),
}

#[derive(Clone, Debug)]
pub struct SimplicialSpace {
    kind: Kind,
    levels: Vec<Arc<Chart>>,
    /// `faces[p][i]`: pullback along `∂_i: X_p → X_{p-1}` (source level `p-1`).
    faces: Vec<Vec<Substitution>>,
    /// `degens[p][i]`: pullback along `σ_i: X_p → X_{p+1}` (source level `p+1`).
    degens: Vec<Vec<Substitution>>,
}

/// Name of coordinate `a` of the `j`-th group copy.
pub fn slot_var(prefix: &str, j: usize, a: usize, rank: usize) -> String {
    if rank == 1 {
        format!("{prefix}{j}")
    } else {
        format!("{prefix}{j}_{}", a + 1)
    }
}

fn torus_chart(name: &str, prefix: &str, slots: impl Iterator<Item = usize>, rank: usize) -> Result<Arc<Chart>> {
    let mut b = ChartBuilder::new(name);
    for j in slots {
        for a in 0..rank {
            b = b.unit(&slot_var(prefix, j, a, rank));
        }
    }
    b.build()
}

impl SimplicialSpace {
    /// `G^•×M` up to level `max`.
    pub fn action(action: &Action, max: usize) -> Result<Self> {
        let rank = action.group.rank();
        let m = action.space();
        let mut levels = Vec::new();
        for p in 0..=max {
            let gp = torus_chart(&format!("G{p}"), "g", 1..=p, rank)?;
            let chart = Chart::product(&format!("G{p}x{}", m.name()), &[&gp, m])?;
            if chart.nvars() != gp.nvars() + m.nvars() {
                return Err(Error::InvalidChart(format!("`{}` clashes with group coordinates", m.name())));
            }
            levels.push(chart);
        }
        let mut s = SimplicialSpace { kind: Kind::Action(Box::new(action.clone())), levels, faces: vec![], degens: vec![] };
        s.build_maps()?;
        Ok(s)
    }

    /// `NK = K^•×pt`.
    pub fn nerve(group: &TorusGroup, max: usize) -> Result<Self> {
        Self::action(&Action::trivial(group, &Chart::point())?, max)
    }

    /// `N̄K`: level `p` is `K^{p+1}` with coordinates `k0, …, kp`.
    pub fn bar(group: &TorusGroup, max: usize) -> Result<Self> {
        let rank = group.rank();
        let levels = (0..=max).map(|p| torus_chart(&format!("NbarK{p}"), "k", 0..=p, rank)).collect::<Result<_>>()?;
        let mut s = SimplicialSpace { kind: Kind::Bar(group.clone()), levels, faces: vec![], degens: vec![] };
        s.build_maps()?;
        Ok(s)
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn group(&self) -> &TorusGroup {
        match &self.kind {
            Kind::Action(a) => &a.group,
            Kind::Bar(k) => k,
        }
    }

    pub fn rank(&self) -> usize {
        self.group().rank()
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, p: usize) -> Result<&Arc<Chart>> {
        self.levels.get(p).ok_or(Error::LevelOverflow { level: p, max: self.max_level() })
    }

    /// Coordinates of group copy `j` at level `p` (`1..=p` for `G^p×M`,
    /// `0..=p` for `N̄K`).
    pub fn slot(&self, p: usize, j: usize) -> Vec<Scalar> {
        let chart = &self.levels[p];
        (0..self.rank()).map(|a| chart.var_scalar(&self.slot_name(j, a)).expect("slot variable")).collect()
    }

    pub fn slot_name(&self, j: usize, a: usize) -> String {
        let prefix = if matches!(self.kind, Kind::Bar(_)) { "k" } else { "g" };
        slot_var(prefix, j, a, self.rank())
    }

    /// Bitmask of the group differentials at level `p`.
    pub fn group_mask(&self, p: usize) -> Wedge {
        let chart = &self.levels[p];
        let mut mask = 0;
        let slots: Vec<usize> = match self.kind {
            Kind::Action(_) => (1..=p).collect(),
            Kind::Bar(_) => (0..=p).collect(),
        };
        for j in slots {
            for a in 0..self.rank() {
                mask |= 1 << chart.index(&self.slot_name(j, a)).expect("slot variable");
            }
        }
        mask
    }

    /// Bitmask of the group differentials of copy `j` at level `p`.
    pub fn slot_mask(&self, p: usize, j: usize) -> Wedge {
        let chart = &self.levels[p];
        (0..self.rank()).fold(0, |m, a| m | 1 << chart.index(&self.slot_name(j, a)).expect("slot variable"))
    }

    fn mul_slots(&self, chart: &Chart, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| chart.mul(x, y)).collect()
    }

    fn space_vars(&self, p: usize) -> Vec<Scalar> {
        match &self.kind {
            Kind::Action(a) => {
                a.space().vars().iter().map(|v| self.levels[p].var_scalar(&v.name).expect("space variable")).collect()
            }
            Kind::Bar(_) => vec![],
        }
    }

    /// Substitution from level `from` to level `to`, given the images of the
    /// group copies of level `from` (in order) and of the space variables.
    fn assemble(&self, from: usize, to: usize, slots: Vec<Vec<Scalar>>, space: Vec<Scalar>) -> Result<Substitution> {
        let src = &self.levels[from];
        let dst = &self.levels[to];
        let first = match self.kind {
            Kind::Action(_) => 1,
            Kind::Bar(_) => 0,
        };
        let mut images = vec![Scalar::zero(); src.nvars()];
        for (k, img) in slots.into_iter().enumerate() {
            for (a, s) in img.into_iter().enumerate() {
                images[src.index(&self.slot_name(first + k, a)).expect("slot variable")] = s;
            }
        }
        if let Kind::Action(act) = &self.kind {
            for (v, s) in act.space().vars().iter().zip(space) {
                images[src.index(&v.name).expect("space variable")] = s;
            }
        }
        Substitution::new(src, dst, images)
    }

    fn face_map(&self, p: usize, i: usize) -> Result<Substitution> {
        let dst = &self.levels[p];
        match &self.kind {
            Kind::Action(act) => {
                let g: Vec<Vec<Scalar>> = (1..=p).map(|j| self.slot(p, j)).collect();
                let space = self.space_vars(p);
                let (slots, space) = if i == 0 {
                    (g[1..].to_vec(), space)
                } else if i == p {
                    (g[..p - 1].to_vec(), act.act_on(dst, &g[p - 1], &space)?)
                } else {
                    let mut slots = g[..i - 1].to_vec();
                    slots.push(self.mul_slots(dst, &g[i - 1], &g[i]));
                    slots.extend_from_slice(&g[i + 1..]);
                    (slots, space)
                };
                self.assemble(p - 1, p, slots, space)
            }
            Kind::Bar(_) => {
                let slots = (0..=p).filter(|&j| j != i).map(|j| self.slot(p, j)).collect();
                self.assemble(p - 1, p, slots, vec![])
            }
        }
    }

    fn degeneracy_map(&self, p: usize, i: usize) -> Result<Substitution> {
        let dst = &self.levels[p];
        let space = self.space_vars(p);
        match &self.kind {
            Kind::Action(_) => {
                // σ_i(g_1..g_p, x) = (g_1..g_i, e, g_{i+1}..g_p, x)
                let mut slots: Vec<Vec<Scalar>> = (1..=i).map(|j| self.slot(p, j)).collect();
                slots.push(vec![dst.one(); self.rank()]);
                slots.extend((i + 1..=p).map(|j| self.slot(p, j)));
                self.assemble(p + 1, p, slots, space)
            }
            Kind::Bar(_) => {
                // σ_i(k_0..k_p) = (k_0..k_i, k_i, ..k_p)
                let mut slots: Vec<Vec<Scalar>> = (0..=i).map(|j| self.slot(p, j)).collect();
                slots.extend((i..=p).map(|j| self.slot(p, j)));
                self.assemble(p + 1, p, slots, vec![])
            }
        }
    }

    fn build_maps(&mut self) -> Result<()> {
        let max = self.max_level();
        let mut faces = vec![vec![]];
        for p in 1..=max {
            faces.push((0..=p).map(|i| self.face_map(p, i)).collect::<Result<_>>()?);
        }
        let mut degens = Vec::new();
        for p in 0..max {
            degens.push((0..=p).map(|i| self.degeneracy_map(p, i)).collect::<Result<_>>()?);
        }
        self.faces = faces;
        self.degens = degens;
        Ok(())
    }

    /// Pullback along `∂_i: X_p → X_{p-1}`.
    pub fn face(&self, p: usize, i: usize) -> Result<&Substitution> {
        if p == 0 {
            return Err(Error::LevelUnderflow { level: 0, min: 1 });
        }
        self.faces.get(p).and_then(|f| f.get(i)).ok_or(Error::LevelOverflow { level: p, max: self.max_level() })
    }

    /// Pullback along `σ_i: X_p → X_{p+1}`.
    pub fn degeneracy(&self, p: usize, i: usize) -> Result<&Substitution> {
        self.degens.get(p).and_then(|d| d.get(i)).ok_or(Error::LevelOverflow { level: p + 1, max: self.max_level() })
    }

    /// `∂ω = Σ (-1)^i ∂_i^* ω` from level `p` to `p+1`.
    pub fn del(&self, p: usize, w: &Form) -> Result<Form> {
        let target = self.level(p + 1)?;
        let mut out = Form::zero(target);
        for i in 0..=p + 1 {
            let term = self.face(p + 1, i)?.pullback(w)?;
            out = if i % 2 == 0 { &out + &term } else { &out - &term };
        }
        Ok(out)
    }

    /// `D = d + (-1)^q ∂` on a single level-`p` form (all form degrees).
    pub fn total_d(&self, p: usize, w: &Form) -> Result<(Form, Form)> {
        let mut del = Form::zero(self.level(p + 1)?);
        for q in w.degrees() {
            let part = self.del(p, &w.homogeneous_part(q))?;
            del = if q % 2 == 0 { &del + &part } else { &del - &part };
        }
        Ok((w.exterior_d(), del))
    }

    /// `D²ω` as its components at levels `p`, `p+1`, `p+2`.
    pub fn double_complex_defect(&self, p: usize, w: &Form) -> Result<Vec<Form>> {
        let (a, b) = self.total_d(p, w)?;
        let (aa, ab) = self.total_d(p, &a)?;
        let (ba, bb) = self.total_d(p + 1, &b)?;
        Ok(vec![aa, &ab + &ba, bb])
    }

    /// Every simplicial identity up to the top level, as a list of failures.
    pub fn relation_failures(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let max = self.max_level();
        let mut check = |name: String, a: Result<Substitution>, b: Result<Substitution>| match (a, b) {
            (Ok(a), Ok(b)) if a.same_as(&b) => {}
            _ => bad.push(name),
        };
        for p in 2..=max {
            for j in 1..=p {
                for i in 0..j {
                    // ∂_i ∂_j = ∂_{j-1} ∂_i : X_p → X_{p-2}
                    let lhs = self.faces[p - 1][i].then(&self.faces[p][j]);
                    let rhs = self.faces[p - 1][j - 1].then(&self.faces[p][i]);
                    check(format!("d{i}d{j}@{p}"), lhs, rhs);
                }
            }
        }
        for p in 0..max.saturating_sub(1) {
            for j in 0..=p {
                for i in 0..=j {
                    // σ_i σ_j = σ_{j+1} σ_i : X_p → X_{p+2}
                    let lhs = self.degens[p + 1][i].then(&self.degens[p][j]);
                    let rhs = self.degens[p + 1][j + 1].then(&self.degens[p][i]);
                    check(format!("s{i}s{j}@{p}"), lhs, rhs);
                }
            }
        }
        for p in 0..max {
            for j in 0..=p {
                let id = Substitution::identity(&self.levels[p]);
                for i in 0..=p + 1 {
                    // ∂_i σ_j : X_p → X_p
                    let comp = self.faces[p + 1][i].then(&self.degens[p][j]);
                    let expected: Result<Substitution> = if i < j {
                        if p == 0 {
                            continue;
                        }
                        self.degens[p - 1][j - 1].then(&self.faces[p][i])
                    } else if i == j || i == j + 1 {
                        Ok(id.clone())
                    } else {
                        if p == 0 {
                            continue;
                        }
                        self.degens[p - 1][j].then(&self.faces[p][i - 1])
                    };
                    check(format!("d{i}s{j}@{p}"), comp, expected);
                }
            }
        }
        bad
    }
}

/// `γ: N̄K → NK`, `(k_0, …, k_p) ↦ (k_0 k_1^{-1}, …, k_{p-1} k_p^{-1})`, as a
/// pullback from level `p` of `NK` to level `p` of `N̄K`.
pub fn gamma(nk: &SimplicialSpace, bar: &SimplicialSpace, p: usize) -> Result<Substitution> {
    let src = nk.level(p)?;
    let dst = bar.level(p)?;
    let rank = nk.rank();
    let mut images = vec![Scalar::zero(); src.nvars()];
    for j in 1..=p {
        let a_slot = bar.slot(p, j - 1);
        let b_slot = bar.slot(p, j);
        for a in 0..rank {
            let inv = dst.inverse(&b_slot[a]).expect("unit variable");
            images[src.index(&nk.slot_name(j, a)).expect("slot")] = dst.mul(&a_slot[a], &inv);
        }
    }
    Substitution::new(src, dst, images)
}

/// `γ` commutes with all faces up to the common top level.
pub fn gamma_commutes(nk: &SimplicialSpace, bar: &SimplicialSpace) -> Result<bool> {
    let max = nk.max_level().min(bar.max_level());
    for p in 1..=max {
        for i in 0..=p {
            let lhs = nk.face(p, i)?.then(&gamma(nk, bar, p)?)?;
            let rhs = gamma(nk, bar, p - 1)?.then(bar.face(p, i)?)?;
            if !lhs.same_as(&rhs) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::rotation_plane;

    #[test]
    fn simplicial_identities_hold() {
        let s = SimplicialSpace::action(&rotation_plane(), 3).unwrap();
        assert!(s.relation_failures().is_empty(), "{:?}", s.relation_failures());
        let b = SimplicialSpace::bar(&TorusGroup::u1(), 3).unwrap();
        assert!(b.relation_failures().is_empty(), "{:?}", b.relation_failures());
        let n = SimplicialSpace::nerve(&TorusGroup::u1(), 3).unwrap();
        assert!(gamma_commutes(&n, &b).unwrap());
    }

    #[test]
    fn del_squares_to_zero_on_xdy() {
        let s = SimplicialSpace::action(&rotation_plane(), 2).unwrap();
        let w = Form::parse_terms(s.level(0).unwrap(), &[("x", &["dy"])]).unwrap();
        let dw = s.del(0, &w).unwrap();
        assert!(!dw.is_zero());
        assert!(s.del(1, &dw).unwrap().is_zero());
        assert!(matches!(s.del(2, &Form::zero(s.level(2).unwrap())), Err(Error::LevelOverflow { .. })));
    }
}
