//! Wedge, d, contraction and Lie derivative on the plane.

use eqchar::action::{self, plane};
use eqchar::coeff::int;
use eqchar::error::Result;
use eqchar::form::Form;

fn main() -> Result<()> {
    let r2 = plane();
    let w = Form::parse_terms(&r2, &[("x^2*y", &["dx"]), ("x", &["dy"])])?;
    println!("ω      = {}", w.to_plain());
    println!("dω     = {}", w.exterior_d().to_plain());
    println!("ddω    = {}", w.exterior_d().exterior_d().to_plain());

    let rot = action::rotation_plane();
    let x = rot.fundamental_vf(&vec![int(1)])?;
    println!("ι(X)ω  = {}", w.contract(&x)?.to_plain());
    println!("L(X)ω  = {}", w.lie_derivative(&x)?.to_plain());
    println!("Cartan formula holds: {}", w.lie_derivative(&x)?.same_as(&w.cartan_formula(&x)?));
    Ok(())
}
