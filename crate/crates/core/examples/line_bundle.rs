//! Curvature and moment map of a principal connection against the associated
//! line bundle with its induced connection.

use eqchar::bundle::{self, compare, BUNDLES};
use eqchar::error::Result;

fn main() -> Result<()> {
    for name in BUNDLES {
        let ex = bundle::lookup(name)?;
        let c = compare(&ex.bundle, &ex.line_connection, &ex.line, &ex.frame)?;
        println!("{name}: R^∇ = {}", ex.line.curvature().to_plain());
        println!("  agrees with the principal side: {}", c.passed());
    }
    Ok(())
}
