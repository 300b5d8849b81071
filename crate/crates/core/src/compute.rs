//! Named quantities of registered bundle examples, rendered as text or JSON.

use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::action::Action;
use crate::bundle::{self, BundleExample, Connection, PrincipalBundle};
use crate::config::Format;
use crate::dupont::DupontSpace;
use crate::equivariant::EquivariantForm;
use crate::error::{Error, Result};
use crate::export;
use crate::form::Form;
use crate::getzler::Cochain;
use crate::lie::InvariantPolynomial;
use crate::simplicial::SimplicialSpace;
use crate::theorem::Pipeline;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    CharForm,
    Transgression,
    MomentMap,
    Curvature,
    /// The simplicial connection `Θ` as a Dupont form.
    Theta,
    /// `𝒥∫_Δ ω_P(Θ)` in the Getzler complex.
    Cochain,
}

pub const QUANTITIES: [&str; 6] = ["char-form", "transgression", "moment-map", "curvature", "theta", "cochain"];

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "char-form" => Ok(Quantity::CharForm),
            "transgression" => Ok(Quantity::Transgression),
            "moment-map" => Ok(Quantity::MomentMap),
            "curvature" => Ok(Quantity::Curvature),
            "theta" => Ok(Quantity::Theta),
            "cochain" => Ok(Quantity::Cochain),
            other => Err(Error::Config(format!("unknown quantity `{other}`"))),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(QUANTITIES[*self as usize])
    }
}

pub const POLYNOMIALS: [&str; 2] = ["id", "X^2"];

pub fn polynomial(name: &str) -> Result<InvariantPolynomial> {
    match name {
        "id" => Ok(InvariantPolynomial::identity()),
        "X^2" | "X2" | "square" => Ok(InvariantPolynomial::square()),
        other => Err(Error::Config(format!("unknown polynomial `{other}`"))),
    }
}

/// The same bundle with `G` acting trivially on total space and base.
pub fn with_trivial_action(b: &PrincipalBundle) -> Result<PrincipalBundle> {
    let mut out = b.clone();
    out.g_total = Action::trivial(&b.g_total.group, b.total())?;
    out.g_base = Action::trivial(&b.g_base.group, b.base())?;
    Ok(out)
}

/// A second invariant connection: the flat one if registered, otherwise the
/// reference connection shifted by the pullback of `r dr` from the base.
pub fn second_connection(ex: &BundleExample) -> Result<Connection> {
    if let Some(flat) = &ex.flat {
        return Ok(flat.clone());
    }
    let base = ex.bundle.base();
    let shift = Form::parse_terms(base, &[("r", &["dr"])])?;
    Ok(Connection::single(&ex.connection.components[0] + &ex.bundle.projection.pullback(&shift)?))
}

#[derive(Clone, Debug)]
pub struct Request {
    pub example: String,
    pub polynomial: String,
    pub quantity: Quantity,
    pub trivial_action: bool,
    pub p_max: usize,
}

#[derive(Clone, Debug)]
pub enum Value {
    Forms(Vec<Form>),
    Equivariant(EquivariantForm),
    Leveled(Vec<Form>),
    Cochain(Cochain),
}

pub fn compute(req: &Request) -> Result<Value> {
    let ex = bundle::lookup(&req.example).map_err(|_| Error::Config(format!("unknown example `{}`", req.example)))?;
    let p = polynomial(&req.polynomial)?;
    let b = if req.trivial_action { with_trivial_action(&ex.bundle)? } else { ex.bundle.clone() };
    let theta = &ex.connection;
    Ok(match req.quantity {
        Quantity::CharForm => Value::Equivariant(b.char_form(&p, theta)?),
        Quantity::Transgression => Value::Equivariant(b.transgression(&p, theta, &second_connection(&ex)?)?),
        Quantity::MomentMap => Value::Equivariant(b.moment_map_poly(theta)?.remove(0)),
        Quantity::Curvature => Value::Forms(theta.curvature()),
        Quantity::Theta => {
            let d = DupontSpace::new(SimplicialSpace::action(&b.g_total, req.p_max)?)?;
            Value::Leveled(d.simplicial_connection(&b, theta)?.into_iter().map(|c| c.components[0].clone()).collect())
        }
        Quantity::Cochain => {
            let pipe = Pipeline::new(&b.g_total, req.p_max)?;
            let d = &pipe.dupont;
            let levels = d.simplicial_connection(&b, theta)?;
            let w = d.char_form(&p, &levels)?;
            Value::Cochain(pipe.getzler.j_map_all(&d.integrate_all(&w)?)?)
        }
    })
}

fn join_levels(items: impl Iterator<Item = (usize, String)>) -> String {
    items.map(|(p, s)| format!("level {p}: {s}\n")).collect()
}

/// Canonical text (sorted monomials) or a JSON document.
pub fn render(v: &Value, format: Format) -> String {
    let text = |f: &Form| match format {
        Format::Latex => f.to_latex(),
        _ => f.to_plain(),
    };
    let eq_text = |w: &EquivariantForm| match format {
        Format::Latex => w.to_latex(),
        _ => w.to_plain(),
    };
    match (v, format) {
        (Value::Forms(fs), Format::Json) => export::to_text(&json!(fs.iter().map(export::form_document).collect::<Vec<_>>())),
        (Value::Equivariant(w), Format::Json) => export::to_text(&export::equivariant_document(w)),
        (Value::Leveled(fs), Format::Json) => export::to_text(&export::leveled_forms_json(fs)),
        (Value::Cochain(c), Format::Json) => export::to_text(&export::leveled_cochain_json(c)),
        (Value::Forms(fs), _) => fs.iter().map(|f| format!("{}\n", text(f))).collect(),
        (Value::Equivariant(w), _) => format!("{}\n", eq_text(w)),
        (Value::Leveled(fs), _) => join_levels(fs.iter().map(text).enumerate()),
        (Value::Cochain(c), _) => join_levels(c.iter().map(|(p, w)| (*p, eq_text(w)))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn request(example: &str, quantity: Quantity, trivial_action: bool) -> Request {
        Request { example: example.into(), polynomial: "id".into(), quantity, trivial_action, p_max: 3 }
    }

    #[test]
    fn trivial_r2_curvature_is_area_form() {
        let v = compute(&request("trivial-r2", Quantity::Curvature, false)).unwrap();
        assert_eq!(render(&v, Format::Plain), "dx∧dy\n");
    }

    #[test]
    fn trivial_action_drops_moment_term() {
        let v = compute(&request("trivial-r2", Quantity::CharForm, true)).unwrap();
        assert_eq!(render(&v, Format::Plain), "dx∧dy\n");
    }

    #[test]
    fn unknown_example_is_config_error() {
        assert!(matches!(compute(&request("klein", Quantity::Curvature, false)), Err(Error::Config(_))));
    }
}
