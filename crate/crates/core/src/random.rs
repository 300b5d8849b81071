//! Seeded generators of small random symbolic objects for property checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chart::{Chart, VarKind};
use crate::coeff::{gauss, rat, Coeff};
use crate::dupont::{DupontForm, DupontSpace};
use crate::equivariant::EquivariantForm;
use crate::error::Result;
use crate::form::{Form, Wedge};
use crate::scalar::Scalar;
use crate::vector_field::VectorField;

/// Size limits for generated objects.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub terms: usize,
    pub degree: i32,
    pub coeff: i64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { terms: 3, degree: 2, coeff: 3 }
    }
}

pub struct Generator {
    rng: ChaCha8Rng,
    pub shape: Shape,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed), shape: Shape::default() }
    }

    pub fn with_shape(seed: u64, shape: Shape) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed), shape }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn coeff(&mut self) -> Coeff {
        let c = self.shape.coeff;
        let re = self.rng.random_range(-c..=c);
        let im = if self.rng.random_bool(0.3) { self.rng.random_range(-c..=c) } else { 0 };
        let den = self.rng.random_range(1..=2);
        let c = gauss(rat(re, den), rat(im, den));
        if c == gauss(rat(0, 1), rat(0, 1)) {
            gauss(rat(1, 1), rat(0, 1))
        } else {
            c
        }
    }

    /// A monomial; Laurent variables may get negative exponents.
    pub fn mono(&mut self, chart: &Chart, only: Option<&[usize]>) -> Vec<i32> {
        let d = self.shape.degree;
        (0..chart.nvars())
            .map(|v| {
                if only.is_some_and(|o| !o.contains(&v)) {
                    return 0;
                }
                match chart.kind(v) {
                    VarKind::Unit => self.rng.random_range(-d..=d),
                    VarKind::Formal => 0,
                    _ => self.rng.random_range(0..=d),
                }
            })
            .collect()
    }

    pub fn scalar(&mut self, chart: &Chart) -> Scalar {
        self.scalar_in(chart, None)
    }

    /// A scalar depending only on the listed variables (all if `None`).
    pub fn scalar_in(&mut self, chart: &Chart, only: Option<&[usize]>) -> Scalar {
        let n = self.rng.random_range(1..=self.shape.terms);
        let mut s = Scalar::zero();
        for _ in 0..n {
            let m = self.mono(chart, only);
            let c = self.coeff();
            s.add_term(m, c);
        }
        chart.reduce(s)
    }

    fn wedge_in(&mut self, pool: &[usize], degree: usize) -> Wedge {
        let mut chosen = 0;
        let mut avail = pool.to_vec();
        for _ in 0..degree.min(pool.len()) {
            let k = self.rng.random_range(0..avail.len());
            chosen |= 1 << avail.swap_remove(k);
        }
        chosen
    }

    fn differentials(chart: &Chart) -> Vec<usize> {
        (0..chart.nvars()).filter(|&v| chart.has_differential(v)).collect()
    }

    /// A form of mixed degree.
    pub fn form(&mut self, chart: &Arc<Chart>) -> Form {
        let pool = Self::differentials(chart);
        let mut out = Form::zero(chart);
        for _ in 0..self.rng.random_range(1..=self.shape.terms) {
            let deg = self.rng.random_range(0..=pool.len().min(3));
            let w = self.wedge_in(&pool, deg);
            let s = self.scalar(chart);
            out.add_term(w, s);
        }
        out
    }

    /// A homogeneous form of degree `deg`.
    pub fn form_of_degree(&mut self, chart: &Arc<Chart>, deg: usize) -> Form {
        self.form_with(chart, deg, &Self::differentials(chart), None)
    }

    /// Degree-`deg` form with generators from `pool` and coefficients in
    /// `only` variables.
    pub fn form_with(&mut self, chart: &Arc<Chart>, deg: usize, pool: &[usize], only: Option<&[usize]>) -> Form {
        let mut out = Form::zero(chart);
        if deg > pool.len() {
            return out;
        }
        for _ in 0..self.rng.random_range(1..=self.shape.terms) {
            let w = self.wedge_in(pool, deg);
            let s = self.scalar_in(chart, only);
            out.add_term(w, s);
        }
        out
    }

    pub fn vector_field(&mut self, chart: &Arc<Chart>) -> Result<VectorField> {
        let mut coeffs = BTreeMap::new();
        for v in Self::differentials(chart) {
            if self.rng.random_bool(0.7) {
                coeffs.insert(v, self.scalar(chart));
            }
        }
        VectorField::new(chart, coeffs)
    }

    /// A random element of `S(𝔤^∨) ⊗ Ω(M)` of polynomial degree ≤ 2.
    pub fn equivariant(&mut self, chart: &Arc<Chart>, dual: &[String]) -> EquivariantForm {
        let mut out = EquivariantForm::zero(chart, dual);
        for _ in 0..self.rng.random_range(1..=3) {
            let pdeg = self.rng.random_range(0..=2);
            let m: Vec<usize> = (0..pdeg).map(|_| self.rng.random_range(0..dual.len())).collect();
            let f = self.form(chart);
            out.add_component(m, f);
        }
        out
    }

    /// `Σ t_i φ_i^* α` and its differential over `G^•×M`, for a random
    /// form `α` on `M`.
    pub fn dupont_pair(&mut self, space: &DupontSpace, m: &Arc<Chart>) -> Result<(DupontForm, DupontForm)> {
        let alpha = self.form(m);
        let w = space.barycentric_extension(&|p, i| space.vertex_map(p, i), &alpha)?;
        let dw = space.exterior_d(&w);
        Ok((w, dw))
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.rng.random_range(0..items.len())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::plane;

    #[test]
    fn seeded_generation_is_reproducible() {
        let c = plane();
        let a = Generator::new(7).form(&c);
        let b = Generator::new(7).form(&c);
        assert_eq!(a, b);
    }
}
