//! Equivariant characteristic forms, moment maps and transgressions of the
//! registered bundles.

use eqchar::bundle::{self, BUNDLES};
use eqchar::compute::second_connection;
use eqchar::error::Result;
use eqchar::lie::InvariantPolynomial;

fn main() -> Result<()> {
    for name in BUNDLES {
        let ex = bundle::lookup(name)?;
        let b = &ex.bundle;
        println!("== {name}");
        for m in b.moment_map_poly(&ex.connection)? {
            println!("μ          = {}", m.to_plain());
        }
        for p in [InvariantPolynomial::identity(), InvariantPolynomial::square()] {
            let cw = b.char_form(&p, &ex.connection)?;
            println!("{:<4} P(Ω+μ) = {}", p.name, cw.to_plain());
            println!("     basic: {}", b.is_basic(&cw)?);
            let t = b.transgression(&p, &ex.connection, &second_connection(&ex)?)?;
            println!("     transgression = {}", t.to_plain());
        }
    }
    Ok(())
}
