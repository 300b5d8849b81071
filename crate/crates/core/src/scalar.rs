//! Laurent polynomials with Gaussian-rational coefficients.
//!
//! A `Scalar` is a bare term map; reduction modulo chart relations lives on
//! [`crate::chart::Chart`].

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num::Zero;

use crate::coeff::{int, Coeff};

/// Exponent vector, one entry per chart variable.
pub type Mono = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct Scalar {
    terms: BTreeMap<Mono, Coeff>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Coeff, nvars: usize) -> Self {
        Self::monomial(c, vec![0; nvars])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(int(1), nvars)
    }

    pub fn monomial(c: Coeff, mono: Mono) -> Self {
        let mut s = Self::zero();
        s.add_term(mono, c);
        s
    }

    /// The coordinate function of variable `idx`.
    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut m = vec![0; nvars];
        m[idx] = 1;
        Self::monomial(int(1), m)
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Coeff)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (m, c) in it {
            s.add_term(m, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Coeff)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono, Coeff)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, mono: &Mono) -> Option<&Coeff> {
        self.terms.get(mono)
    }

    /// The value if this scalar has no variable dependence.
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, mono: Mono, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Scalar, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Coeff) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Product without relation reduction.
    pub fn mul_raw(&self, other: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Mono = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// Partial derivative in variable `idx` (Laurent rule `n u^(n-1)`).
    pub fn derivative(&self, idx: usize) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let e = m[idx];
            if e != 0 {
                let mut m2 = m.clone();
                m2[idx] -= 1;
                out.add_term(m2, c * int(e as i64));
            }
        }
        out
    }

    /// Exponent range `(min, max)` of a variable over all terms.
    pub fn exponent_range(&self, idx: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m[idx]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Keep the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> Scalar {
        Scalar { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Rewrite every exponent vector; colliding images are summed.
    pub fn map_monos(&self, f: impl Fn(&Mono) -> Mono) -> Scalar {
        Scalar::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> Scalar {
        Scalar::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

/// Graded order used for termination of rewrite rules: total degree, then the
/// exponent of the highest-index variable, and so on downwards.
pub fn mono_cmp(a: &Mono, b: &Mono) -> std::cmp::Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            match a[i].cmp(&b[i]) {
                std::cmp::Ordering::Equal => continue,
                o => return o,
            }
        }
        std::cmp::Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_drops_terms() {
        let x = Scalar::var(2, 0);
        assert!((&x - &x).is_zero());
        assert_eq!((&x + &x).len(), 1);
    }

    #[test]
    fn laurent_derivative() {
        let u_inv = Scalar::monomial(int(1), vec![-1]);
        assert_eq!(u_inv.derivative(0), Scalar::monomial(int(-1), vec![-2]));
    }

    #[test]
    fn order_is_graded() {
        use std::cmp::Ordering::*;
        assert_eq!(mono_cmp(&vec![0, 0, 1, 1], &vec![1, 1, 0, 0]), Greater);
        assert_eq!(mono_cmp(&vec![0, 0], &vec![1, 0]), Less);
    }
}
