//! Run configuration and the named-object registry, both read from plain
//! `key = value` text.
//!
//! Run keys: `seed`, `samples`, `p_max`, `format` (`plain`, `json`, `latex`),
//! `suites` (comma separated or `all`), `example`.
//!
//! Registry keys: `algebras`, `actions`, `examples`, each a comma-separated
//! list of registered names. Lines starting with `#` are comments.

use std::fmt;
use std::str::FromStr;

use crate::action::{self, Action};
use crate::bundle::{self, BundleExample};
use crate::error::{Error, Result};
use crate::lie::{gl2, LieAlgebra, TorusGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
    Latex,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Format::Plain),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Plain => "plain",
            Format::Json => "json",
            Format::Latex => "latex",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub seed: u64,
    /// Base sample count; suites scale it to their own minimums.
    pub samples: usize,
    pub p_max: usize,
    pub format: Format,
    pub suites: Vec<String>,
    pub example: Option<String>,
    /// Test hook: flips one sign inside the Getzler suite.
    pub corrupt_sign: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 1,
            samples: 20,
            p_max: 3,
            format: Format::Plain,
            suites: vec!["all".into()],
            example: None,
            corrupt_sign: false,
        }
    }
}

/// `(key, value)` pairs of a `key = value` text, comments and blanks skipped.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", n + 1)))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn list(v: &str) -> Vec<String> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn number<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config(format!("`{key}` expects a number, got `{v}`")))
}

impl Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "seed" => self.seed = number(key, value)?,
            "samples" => self.samples = number(key, value)?,
            "p_max" | "p-max" => self.p_max = number(key, value)?,
            "format" => self.format = value.parse()?,
            "suites" | "suite" => self.suites = list(value),
            "example" => self.example = Some(value.to_string()),
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut c = Config::default();
        for (k, v) in parse_pairs(text)? {
            c.set(&k, &v)?;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Config("`samples` must be positive".into()));
        }
        if self.p_max < 2 {
            return Err(Error::Config("`p_max` must be at least 2".into()));
        }
        if let Some(e) = &self.example {
            bundle::lookup(e).map_err(|_| Error::Config(format!("unknown example `{e}`")))?;
        }
        Ok(())
    }
}

pub const ALGEBRAS: [&str; 3] = ["gl2-formal", "torus2", "u1"];

#[derive(Clone, Debug)]
pub enum AlgebraEntry {
    Torus(TorusGroup),
    Formal(LieAlgebra),
}

impl AlgebraEntry {
    pub fn algebra(&self) -> &LieAlgebra {
        match self {
            AlgebraEntry::Torus(t) => &t.algebra,
            AlgebraEntry::Formal(a) => a,
        }
    }
}

pub fn algebra(name: &str) -> Result<AlgebraEntry> {
    match name {
        "u1" => Ok(AlgebraEntry::Torus(TorusGroup::u1())),
        "torus2" => Ok(AlgebraEntry::Torus(TorusGroup::torus2())),
        "gl2-formal" => Ok(AlgebraEntry::Formal(gl2())),
        _ => Err(Error::UnknownName { kind: "algebra", name: name.into() }),
    }
}

/// Named algebras, actions and bundle examples selected by a configuration.
#[derive(Clone, Debug)]
pub struct Registry {
    pub algebras: Vec<(String, AlgebraEntry)>,
    pub actions: Vec<(String, Action)>,
    pub examples: Vec<(String, BundleExample)>,
}

impl Registry {
    /// Everything registered.
    pub fn full() -> Result<Self> {
        Self::select(&ALGEBRAS, &action::ACTIONS, &bundle::BUNDLES)
    }

    fn select<S: AsRef<str>>(algebras: &[S], actions: &[S], examples: &[S]) -> Result<Self> {
        Ok(Registry {
            algebras: algebras.iter().map(|n| Ok((n.as_ref().to_string(), algebra(n.as_ref())?))).collect::<Result<_>>()?,
            actions: actions.iter().map(|n| Ok((n.as_ref().to_string(), action::lookup(n.as_ref())?))).collect::<Result<_>>()?,
            examples: examples.iter().map(|n| Ok((n.as_ref().to_string(), bundle::lookup(n.as_ref())?))).collect::<Result<_>>()?,
        })
    }

    /// Missing keys select every registered entry of that kind.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut alg: Vec<String> = ALGEBRAS.iter().map(|s| s.to_string()).collect();
        let mut act: Vec<String> = action::ACTIONS.iter().map(|s| s.to_string()).collect();
        let mut ex: Vec<String> = bundle::BUNDLES.iter().map(|s| s.to_string()).collect();
        for (k, v) in parse_pairs(text)? {
            match k.as_str() {
                "algebras" => alg = list(&v),
                "actions" => act = list(&v),
                "examples" => ex = list(&v),
                other => return Err(Error::Config(format!("unknown registry key `{other}`"))),
            }
        }
        Self::select(&alg, &act, &ex).map_err(|e| Error::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_text() {
        let c = Config::from_text("# run\nseed = 9\nsuites = getzler, simplex\nformat = json\n").unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.suites, vec!["getzler", "simplex"]);
        assert_eq!(c.format, Format::Json);
        assert!(Config::from_text("colour = red").is_err());
        assert!(Config::from_text("example = nowhere").is_err());
    }

    #[test]
    fn registry_text() {
        let r = Registry::from_text("algebras = u1, gl2-formal\nactions = hopf\n").unwrap();
        assert_eq!(r.algebras.len(), 2);
        assert_eq!(r.actions[0].0, "hopf");
        assert_eq!(r.examples.len(), 3);
        assert!(r.algebras[1].1.algebra().jacobi_holds());
        assert!(Registry::from_text("actions = spin").is_err());
    }
}
