//! The equivariant area form of the rotated plane and the Cartan differential.

use eqchar::action;
use eqchar::equivariant::plane_area_form;
use eqchar::error::Result;

fn main() -> Result<()> {
    let rot = action::rotation_plane();
    let area = plane_area_form(&rot)?;
    println!("α     = {}", area.to_plain());
    println!("d_C α = {}", area.cartan_d(&rot)?.to_plain());
    println!("equivariant: {}", area.check_equivariance(&rot)?);
    Ok(())
}
