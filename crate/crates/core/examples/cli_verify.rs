//! Running verification suites through the library entry point.

use eqchar::config::{Config, Format};
use eqchar::error::Result;
use eqchar::suites;

fn main() -> Result<()> {
    let cfg = Config { suites: vec!["exterior".into(), "moment-map".into()], samples: 5, ..Config::default() };
    let reports = suites::run(&cfg)?;
    print!("{}", suites::render(&reports, Format::Plain));
    std::process::exit(suites::exit_code(&reports));
}
