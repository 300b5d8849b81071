//! The Getzler differentials and the map 𝒥 on the rotated plane.

use eqchar::action;
use eqchar::equivariant::EquivariantForm;
use eqchar::error::Result;
use eqchar::form::Form;
use eqchar::getzler::{cochain_vanishes, Getzler};

fn main() -> Result<()> {
    let gz = Getzler::new(&action::rotation_plane(), 2)?;
    let m = gz.level(0)?.clone();
    let xdy = EquivariantForm::from_form(Form::parse_terms(&m, &[("x", &["dy"])])?, gz.dual());
    println!("d̄(x dy) at level 0 = {}", gz.dbar(0, &xdy)?.to_plain());

    let g1 = gz.level(1)?.clone();
    let w = Form::parse_terms(&g1, &[("g1^3", &["dx"]), ("x*y", &["dg1"])])?;
    for (p, c) in gz.j_map(1, &w)? {
        println!("𝒥(w) level {p}: {}", c.to_plain());
    }
    for (i, defect) in gz.identity_defects(1, &w)?.iter().enumerate() {
        println!("chain-map identity {}: {}", i + 1, if cochain_vanishes(defect) { "holds" } else { "fails" });
    }
    Ok(())
}
