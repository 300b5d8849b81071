//! The universal connection on the bar construction of a circle.

use eqchar::dupont::DupontSpace;
use eqchar::error::Result;
use eqchar::lie::{InvariantPolynomial, TorusGroup};
use eqchar::simplicial::SimplicialSpace;
use eqchar::theorem::universal_inverse_check;

fn main() -> Result<()> {
    let k = TorusGroup::new("K", &["h"], &["f"], &["Y"])?;
    let bar = DupontSpace::new(SimplicialSpace::bar(&k, 2)?)?;
    for (p, c) in bar.universal_connection(&k)?.iter().enumerate() {
        println!("ϑ̄ level {p}: {}", c.components[0].to_plain());
    }
    for p in [InvariantPolynomial::identity(), InvariantPolynomial::square()] {
        let o = universal_inverse_check(&k, &p, 3)?;
        println!("[{}] pr₀𝒥∫ω(ϑ̄) = {} ({})", p.name, o.simplicial.to_plain(), if o.passed() { "agrees" } else { "differs" });
    }
    Ok(())
}
