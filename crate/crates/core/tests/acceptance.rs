//! The acceptance criteria, one line per criterion, with wall-clock limits.

use std::time::{Duration, Instant};

use num::{BigInt, BigRational};

use eqchar::bundle;
use eqchar::chart::ChartBuilder;
use eqchar::coeff::from_rational;
use eqchar::config::Config;
use eqchar::dupont::integrate_simplex;
use eqchar::error::Result;
use eqchar::form::Form;
use eqchar::lie::{InvariantPolynomial, TorusGroup};
use eqchar::random::Generator;
use eqchar::suites;
use eqchar::theorem;

type Outcome = std::result::Result<(), String>;
type Criterion = (&'static str, Option<u64>, Box<dyn Fn() -> Outcome>);

fn suite(name: &str) -> Outcome {
    let report = suites::run_suite(name, &Config::default()).map_err(|e| e.to_string())?;
    match report.checks.iter().find(|c| c.failure.is_some()) {
        Some(c) => Err(format!("{}: {}", c.identity, c.failure.as_deref().unwrap_or_default())),
        None => Ok(()),
    }
}

fn lift(r: Result<theorem::Outcome>) -> Outcome {
    let o = r.map_err(|e| e.to_string())?;
    match o.mismatch() {
        Some(m) => Err(m),
        None => Ok(()),
    }
}

fn simplex_volumes() -> Outcome {
    let names: Vec<String> = (1..=5).map(|i| format!("t{i}")).collect();
    let chart = names.iter().fold(ChartBuilder::new("T"), |b, n| b.real(n)).build().map_err(|e| e.to_string())?;
    let point = ChartBuilder::new("pt").build().map_err(|e| e.to_string())?;
    for p in 0..=5usize {
        let ts: Vec<&str> = names[..p].iter().map(String::as_str).collect();
        let vol = ts.iter().try_fold(Form::one(&chart), |acc, t| acc.wedge(&Form::generator(&chart, t)?)).map_err(|e| e.to_string())?;
        let got = integrate_simplex(&vol, &ts, &point).map_err(|e| e.to_string())?;
        let factorial: BigInt = (1..=p as u64).product::<u64>().into();
        let want = Form::constant(&point, from_rational(BigRational::new(1.into(), factorial)));
        if got != want {
            return Err(format!("vol Δ^{p} = {}", got.to_plain()));
        }
    }
    Ok(())
}

fn main_theorem() -> Outcome {
    for (name, p) in
        [("trivial-r2", InvariantPolynomial::identity()), ("trivial-r2", InvariantPolynomial::square()), ("hopf", InvariantPolynomial::identity())]
    {
        let ex = bundle::lookup(name).map_err(|e| e.to_string())?;
        let start = Instant::now();
        lift(theorem::classform_check(&ex.bundle, &p, &ex.connection, 3)).map_err(|m| format!("[{name}, {}] {m}", p.name))?;
        if start.elapsed() > Duration::from_secs(60) {
            return Err(format!("[{name}, {}] took {:?}", p.name, start.elapsed()));
        }
    }
    Ok(())
}

fn universal() -> Outcome {
    let k = TorusGroup::new("K", &["h"], &["f"], &["Y"]).map_err(|e| e.to_string())?;
    for p in [InvariantPolynomial::identity(), InvariantPolynomial::square()] {
        lift(theorem::universal_inverse_check(&k, &p, 3)).map_err(|m| format!("[{}] {m}", p.name))?;
    }
    Ok(())
}

fn numeric_oracle() -> Outcome {
    let mut g = Generator::new(7);
    for name in ["trivial-r2", "hopf"] {
        let ex = bundle::lookup(name).map_err(|e| e.to_string())?;
        for p in [InvariantPolynomial::identity(), InvariantPolynomial::square()] {
            let r = eqchar::oracle::cross_check(&ex, &p, 50, g.rng()).map_err(|e| e.to_string())?;
            if r.curvature > 1e-6 || r.char_form > 1e-6 {
                return Err(format!("[{name}, {}] errors {:e}, {:e}", p.name, r.curvature, r.char_form));
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("exterior calculus identities", Some(10), Box::new(|| suite("exterior"))),
        ("Cartan model identities", Some(10), Box::new(|| suite("cartan"))),
        ("Bott-Shulman double complex", Some(20), Box::new(|| suite("double-complex"))),
        ("Getzler complex identities", Some(30), Box::new(|| suite("getzler"))),
        ("chain map J", Some(30), Box::new(|| suite("chain-map"))),
        ("simplex volumes 1/p!, p ≤ 5", None, Box::new(simplex_volumes)),
        ("Chern-Weil and transgression", Some(20), Box::new(|| suite("chern-weil"))),
        ("main theorem on examples", Some(180), Box::new(main_theorem)),
        ("algebra homomorphism", Some(30), Box::new(|| suite("algebra-hom"))),
        ("moment map from line bundle", Some(10), Box::new(|| suite("moment-map"))),
        ("universal inverse", Some(60), Box::new(universal)),
        ("numeric oracle", None, Box::new(numeric_oracle)),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(()), Some(s)) if elapsed > Duration::from_secs(*s) => Err(format!("exceeded {s} s")),
            (o, _) => o,
        };
        match &outcome {
            Ok(()) => println!("criterion {:>2} {name}: PASS ({:.2?})", i + 1, elapsed),
            Err(m) => {
                println!("criterion {:>2} {name}: FAIL ({:.2?}) {m}", i + 1, elapsed);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
