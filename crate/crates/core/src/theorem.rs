//! The comparison `pr₀ ∘ 𝒥 ∘ ∫_Δ` between simplicial characteristic forms and
//! equivariant ones.

use crate::action::Action;
use crate::bundle::{Connection, PrincipalBundle};
use crate::coeff::i_unit;
use crate::dupont::{DupontForm, DupontSpace};
use crate::equivariant::EquivariantForm;
use crate::error::{Error, Result};
use crate::form::Form;
use crate::getzler::Getzler;
use crate::lie::{InvariantPolynomial, TorusGroup};
use crate::simplicial::SimplicialSpace;
use crate::subst::Substitution;

/// Both halves of a comparison, for reporting.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub simplicial: EquivariantForm,
    pub expected: EquivariantForm,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.simplicial.same_as(&self.expected)
    }

    /// First differing component of `simplicial − expected`, if any.
    pub fn mismatch(&self) -> Option<String> {
        let diff = (&self.simplicial - &self.expected).canonical();
        let first = diff.components().next().map(|(m, f)| {
            let key = crate::equivariant::key_string(m, diff.dual());
            format!("[{key}] {}", f.to_plain())
        });
        first
    }
}

/// `pr₀ 𝒥 ∫_Δ` for Dupont forms over `G^•×M`.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub dupont: DupontSpace,
    pub getzler: Getzler,
}

impl Pipeline {
    pub fn new(action: &Action, max: usize) -> Result<Self> {
        Ok(Pipeline {
            dupont: DupontSpace::new(SimplicialSpace::action(action, max)?)?,
            getzler: Getzler::new(action, max)?,
        })
    }

    pub fn apply(&self, w: &DupontForm) -> Result<EquivariantForm> {
        let integrated = self.dupont.integrate_all(w)?;
        let j = self.getzler.j_map_all(&integrated)?;
        self.getzler.pr0(&j)
    }
}

fn require_levels(p: &InvariantPolynomial, max: usize) -> Result<()> {
    if max < p.degree {
        return Err(Error::LevelOverflow { level: p.degree, max });
    }
    Ok(())
}

/// `ω_P(Θ)` for the simplicial connection of `θ`, checked basic levelwise.
pub fn simplicial_char_form(
    pipeline: &Pipeline,
    bundle: &PrincipalBundle,
    p: &InvariantPolynomial,
    theta: &Connection,
) -> Result<DupontForm> {
    let big_theta = pipeline.dupont.simplicial_connection(bundle, theta)?;
    let w = pipeline.dupont.char_form(p, &big_theta)?;
    for (lvl, f) in w.iter().enumerate() {
        if !is_basic(&bundle.k_action, f)? {
            return Err(Error::NotInvariant(format!("ω_P(Θ) at level {lvl} is not basic")));
        }
    }
    Ok(w)
}

/// Horizontal and infinitesimally invariant for the fundamental fields of
/// `k`, carried over by name to the chart of `f`.
pub fn is_basic(k: &Action, f: &Form) -> Result<bool> {
    for a in 0..k.group.rank() {
        let xs = k.fundamental_basis(a).transport(f.chart())?;
        if !f.contract(&xs)?.vanishes() || !f.lie_derivative(&xs)?.vanishes() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `pr₀ 𝒥 ∫_Δ ω_P(Θ)` against `P(Ω + μ)`.
pub fn classform_check(bundle: &PrincipalBundle, p: &InvariantPolynomial, theta: &Connection, max: usize) -> Result<Outcome> {
    require_levels(p, max)?;
    let pipeline = Pipeline::new(&bundle.g_total, max)?;
    let w = simplicial_char_form(&pipeline, bundle, p, theta)?;
    Ok(Outcome { simplicial: pipeline.apply(&w)?, expected: bundle.char_form(p, theta)? })
}

/// `pr₀ 𝒥 ∫_Δ (a ∧ b)` against the product of the images.
pub fn algebra_hom_check(pipeline: &Pipeline, a: &DupontForm, b: &DupontForm) -> Result<Outcome> {
    let ab = pipeline.dupont.wedge(a, b)?;
    let lhs = pipeline.apply(&ab)?;
    let rhs = pipeline.apply(a)?.wedge(&pipeline.apply(b)?)?;
    Ok(Outcome { simplicial: lhs, expected: rhs })
}

/// `K` acting on itself by left translation, with the acting copy written in
/// the coordinates of a second torus of the same rank.
pub fn left_translation(k: &TorusGroup) -> Result<Action> {
    let stem = ["u", "v", "w"].into_iter().find(|s| !k.vars.iter().any(|v| v.starts_with(s))).unwrap_or("a");
    let names: Vec<String> = (1..=k.rank()).map(|a| if k.rank() == 1 { stem.into() } else { format!("{stem}{a}") }).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let basis: Vec<&str> = k.algebra.basis.iter().map(String::as_str).collect();
    let dual: Vec<&str> = k.algebra.dual.iter().map(String::as_str).collect();
    let g = TorusGroup::new("acting", &refs, &basis, &dual)?;
    let images: Vec<(String, String)> = k.vars.iter().zip(&names).map(|(h, u)| (h.clone(), format!("{u}*{h}"))).collect();
    let pairs: Vec<(&str, &str)> = images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Action::new("left-translation", &g, k.chart(), &pairs)
}

/// `N̄K_p → G^p × K`, `(k_0, …, k_p) ↦ (k_0 k_1⁻¹, …, k_{p-1} k_p⁻¹, k_p)`,
/// written as the pullback from `N̄K` along its inverse
/// `k_i = g_{i+1}⋯g_p h`, on the Dupont charts.
pub fn bar_transport(bar: &DupontSpace, action: &DupontSpace, k: &TorusGroup, p: usize) -> Result<Substitution> {
    let src = bar.chart(p)?;
    let dst = action.chart(p)?;
    let mut images = Vec::with_capacity(src.nvars());
    for v in src.vars() {
        let img = match dst.index(&v.name) {
            Some(_) if v.name.starts_with('t') => dst.var_scalar(&v.name)?,
            _ => {
                let (i, a) = (0..=p)
                    .flat_map(|i| (0..k.rank()).map(move |a| (i, a)))
                    .find(|&(i, a)| bar.base().slot_name(i, a) == v.name)
                    .ok_or_else(|| Error::UnknownVariable(v.name.clone(), dst.name().into()))?;
                let mut s = dst.var_scalar(&k.vars[a])?;
                for j in i + 1..=p {
                    s = dst.mul(&s, &dst.var_scalar(&action.base().slot_name(j, a))?);
                }
                s
            }
        };
        images.push(img);
    }
    Substitution::new(src, dst, images)
}

/// `pr₀ 𝒥 ∫_Δ ω_P(ϑ̄)` for the universal connection, transported from `N̄K`
/// to `G^•×K`, against the constant `P(iX)`.
pub fn universal_inverse_check(k: &TorusGroup, p: &InvariantPolynomial, max: usize) -> Result<Outcome> {
    require_levels(p, max)?;
    let act = left_translation(k)?;
    let pipeline = Pipeline::new(&act, max)?;
    let bar = DupontSpace::new(SimplicialSpace::bar(k, max)?)?;
    let theta_bar = bar.universal_connection(k)?;
    let w_bar = bar.char_form(p, &theta_bar)?;
    let w = w_bar
        .iter()
        .enumerate()
        .map(|(lvl, f)| bar_transport(&bar, &pipeline.dupont, k, lvl)?.pullback(f))
        .collect::<Result<Vec<_>>>()?;
    let dual = pipeline.getzler.dual().to_vec();
    let space = act.space();
    let args: Vec<EquivariantForm> = (0..k.rank())
        .map(|a| EquivariantForm::polynomial(space, &dual, vec![a], i_unit()))
        .collect();
    let expected = p.evaluate_diagonal(&args)?;
    Ok(Outcome { simplicial: pipeline.apply(&w)?, expected })
}
