//! Integrating the simplicial characteristic form over simplices and mapping it
//! through 𝒥 recovers P(Ω+μ).

use eqchar::bundle::{self, BUNDLES};
use eqchar::error::Result;
use eqchar::lie::InvariantPolynomial;
use eqchar::theorem::classform_check;

fn main() -> Result<()> {
    for name in BUNDLES {
        let ex = bundle::lookup(name)?;
        for p in [InvariantPolynomial::identity(), InvariantPolynomial::square()] {
            let o = classform_check(&ex.bundle, &p, &ex.connection, 3)?;
            println!("{name} [{}]: {}", p.name, if o.passed() { "agrees" } else { "differs" });
            println!("  pr₀𝒥∫ω = {}", o.simplicial.to_plain());
        }
    }
    Ok(())
}
