//! Lie algebras by structure constants, torus groups, and invariant polynomials.

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;
use num::Zero;

use crate::chart::{Chart, ChartBuilder};
use crate::coeff::{int, Coeff};
use crate::error::{Error, Result};
use crate::form::Form;

/// Square matrix over Q(i), row-major.
pub type Matrix = Vec<Vec<Coeff>>;

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Coeff::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn trace(a: &Matrix) -> Coeff {
    (0..a.len()).fold(Coeff::zero(), |acc, i| acc + &a[i][i])
}

/// Inverse by Gauss-Jordan elimination; `None` if singular.
pub fn mat_inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m: Vec<Vec<Coeff>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { int(1) } else { Coeff::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = int(1) / m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `Σ x_k B_k = M` exactly for coordinates in the span of `basis`.
fn decompose(basis: &[Matrix], target: &Matrix) -> Option<Vec<Coeff>> {
    let n = target.len();
    let dim = basis.len();
    // rows: one equation per matrix entry, columns: unknowns then rhs
    let mut rows: Vec<Vec<Coeff>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut row: Vec<Coeff> = basis.iter().map(|b| b[i][j].clone()).collect();
            row.push(target[i][j].clone());
            rows.push(row);
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = int(1) / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[dim].is_zero()) {
        return None;
    }
    let mut x = vec![Coeff::zero(); dim];
    for (k, &col) in pivots.iter().enumerate() {
        x[col] = rows[k][dim].clone();
    }
    Some(x)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    pub name: String,
    pub basis: Vec<String>,
    pub dual: Vec<String>,
    /// `structure[i][j][k] = c^k_{ij}`, so `[e_i, e_j] = Σ_k c^k_{ij} e_k`.
    pub structure: Vec<Vec<Vec<Coeff>>>,
    /// Matrix realisation of the basis, for formal matrix models.
    pub matrices: Option<Vec<Matrix>>,
}

/// Coordinates of an algebra element in the basis.
pub type Element = Vec<Coeff>;

impl LieAlgebra {
    pub fn abelian(name: &str, basis: &[&str], dual: &[&str]) -> Self {
        let n = basis.len();
        LieAlgebra {
            name: name.into(),
            basis: basis.iter().map(|s| s.to_string()).collect(),
            dual: dual.iter().map(|s| s.to_string()).collect(),
            structure: vec![vec![vec![Coeff::zero(); n]; n]; n],
            matrices: None,
        }
    }

    /// Structure constants read off from matrix commutators.
    pub fn from_matrices(name: &str, basis: &[&str], dual: &[&str], mats: Vec<Matrix>) -> Result<Self> {
        let n = mats.len();
        let mut structure = vec![vec![vec![Coeff::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let comm = mat_sub(&mat_mul(&mats[i], &mats[j]), &mat_mul(&mats[j], &mats[i]));
                structure[i][j] = decompose(&mats, &comm)
                    .ok_or_else(|| Error::BasisMismatch(format!("{name}: not closed under brackets")))?;
            }
        }
        Ok(LieAlgebra {
            name: name.into(),
            basis: basis.iter().map(|s| s.to_string()).collect(),
            dual: dual.iter().map(|s| s.to_string()).collect(),
            structure,
            matrices: Some(mats),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().flatten().flatten().all(|c| c.is_zero())
    }

    pub fn basis_element(&self, i: usize) -> Element {
        (0..self.dim()).map(|k| if k == i { int(1) } else { Coeff::zero() }).collect()
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(Error::BasisMismatch(self.name.clone()));
        }
        let n = self.dim();
        let mut out = vec![Coeff::zero(); n];
        for (xi, row) in x.iter().zip(&self.structure) {
            if xi.is_zero() {
                continue;
            }
            for (yj, consts) in y.iter().zip(row) {
                if yj.is_zero() {
                    continue;
                }
                let f = xi * yj;
                for (o, c) in out.iter_mut().zip(consts) {
                    *o += &f * c;
                }
            }
        }
        Ok(out)
    }

    pub fn antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.structure[i][j][k] == -self.structure[j][i][k].clone())))
    }

    /// Jacobi identity on all basis triples.
    pub fn jacobi_holds(&self) -> bool {
        let n = self.dim();
        for (i, j, k) in (0..n).cartesian_product(0..n).cartesian_product(0..n).map(|((a, b), c)| (a, b, c)) {
            let e = |t| self.basis_element(t);
            let br = |a: &Element, b: &Element| self.bracket(a, b).expect("dims agree");
            let s1 = br(&e(i), &br(&e(j), &e(k)));
            let s2 = br(&e(j), &br(&e(k), &e(i)));
            let s3 = br(&e(k), &br(&e(i), &e(j)));
            if s1.iter().zip(&s2).zip(&s3).any(|((a, b), c)| !(a + b + c).is_zero()) {
                return false;
            }
        }
        true
    }

    pub fn element_matrix(&self, x: &Element) -> Option<Matrix> {
        let mats = self.matrices.as_ref()?;
        let n = mats[0].len();
        let mut out = vec![vec![Coeff::zero(); n]; n];
        for (c, m) in x.iter().zip(mats) {
            for i in 0..n {
                for j in 0..n {
                    out[i][j] += c * &m[i][j];
                }
            }
        }
        Some(out)
    }
}

/// Group element for `Ad`.
#[derive(Clone, Debug)]
pub enum GroupElement {
    Identity,
    /// A torus element; coordinates are irrelevant for `Ad`.
    Torus,
    Matrix(Matrix),
}

/// Adjoint action: identity on abelian algebras, `g X g^-1` on matrix models.
pub fn adjoint(alg: &LieAlgebra, g: &GroupElement, x: &Element) -> Result<Element> {
    match g {
        GroupElement::Identity => Ok(x.clone()),
        GroupElement::Torus if alg.is_abelian() => Ok(x.clone()),
        GroupElement::Torus => Err(Error::Unsupported(format!("torus element acting on non-abelian `{}`", alg.name))),
        GroupElement::Matrix(gm) => {
            let mats = alg
                .matrices
                .as_ref()
                .ok_or_else(|| Error::Unsupported(format!("`{}` has no matrix model", alg.name)))?;
            let inv = mat_inverse(gm).ok_or_else(|| Error::Unsupported("singular group element".into()))?;
            let xm = alg.element_matrix(x).expect("matrix model present");
            let conj = mat_mul(&mat_mul(gm, &xm), &inv);
            decompose(mats, &conj).ok_or_else(|| Error::Unsupported("Ad leaves the algebra".into()))
        }
    }
}

/// `U(1)^k` with unit coordinates; basis element `a` is `i` in the `a`-th slot.
#[derive(Clone, Debug)]
pub struct TorusGroup {
    pub vars: Vec<String>,
    pub algebra: LieAlgebra,
    chart: Arc<Chart>,
}

impl TorusGroup {
    pub fn new(name: &str, vars: &[&str], basis: &[&str], dual: &[&str]) -> Result<Self> {
        let mut b = ChartBuilder::new(name);
        for v in vars {
            b = b.unit(v);
        }
        Ok(TorusGroup {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            algebra: LieAlgebra::abelian(name, basis, dual),
            chart: b.build()?,
        })
    }

    pub fn u1() -> Self {
        Self::new("u1", &["u"], &["e"], &["X"]).expect("static chart")
    }

    pub fn torus2() -> Self {
        Self::new("torus2", &["u1", "u2"], &["e1", "e2"], &["X1", "X2"]).expect("static chart")
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    /// Maurer–Cartan form `u_a^-1 du_a` for each coordinate.
    pub fn maurer_cartan(&self) -> Vec<Form> {
        self.vars
            .iter()
            .map(|v| {
                let inv = self.chart.parse(&format!("{v}^-1")).expect("unit variable");
                Form::generator(&self.chart, v).expect("unit variable").mul_scalar(&inv)
            })
            .collect()
    }
}

/// Symmetric polynomial on a Lie algebra, stored by monomial coefficients
/// `P(ξ) = Σ_m p_m ξ^m`, optionally divided by `τ^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPolynomial {
    pub name: String,
    pub dim: usize,
    pub degree: usize,
    /// Sorted index multisets of length `degree`.
    pub coeffs: BTreeMap<Vec<usize>, Coeff>,
    pub tau_power: u32,
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn multiplicity_factor(m: &[usize]) -> i64 {
    m.iter().counts().values().map(|&c| factorial(c)).product()
}

impl InvariantPolynomial {
    pub fn from_terms(name: &str, dim: usize, degree: usize, terms: &[(Vec<usize>, Coeff)]) -> Result<Self> {
        let mut coeffs: BTreeMap<Vec<usize>, Coeff> = BTreeMap::new();
        for (m, c) in terms {
            if m.len() != degree || m.iter().any(|&i| i >= dim) {
                return Err(Error::Arity { expected: degree, got: m.len() });
            }
            let mut k = m.clone();
            k.sort_unstable();
            *coeffs.entry(k).or_insert_with(Coeff::zero) += c.clone();
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(InvariantPolynomial { name: name.into(), dim, degree, coeffs, tau_power: 0 })
    }

    /// `ξ ↦ ξ` on a rank-one algebra.
    pub fn identity() -> Self {
        Self::from_terms("id", 1, 1, &[(vec![0], int(1))]).expect("static")
    }

    /// `ξ ↦ ξ^2` on a rank-one algebra.
    pub fn square() -> Self {
        Self::from_terms("X^2", 1, 2, &[(vec![0, 0], int(1))]).expect("static")
    }

    pub fn zero(dim: usize, degree: usize) -> Self {
        InvariantPolynomial { name: "0".into(), dim, degree, coeffs: BTreeMap::new(), tau_power: 0 }
    }

    /// `tr(ξ^q)` on a matrix model.
    pub fn trace_power(alg: &LieAlgebra, q: usize) -> Result<Self> {
        let mats =
            alg.matrices.as_ref().ok_or_else(|| Error::Unsupported(format!("`{}` has no matrix model", alg.name)))?;
        let mut terms = Vec::new();
        for m in (0..alg.dim()).combinations_with_replacement(q) {
            let mut total = Coeff::zero();
            for perm in m.iter().permutations(q) {
                let prod = perm.iter().skip(1).fold(mats[*perm[0]].clone(), |acc, &&k| mat_mul(&acc, &mats[k]));
                total += trace(&prod);
            }
            // tensor entry is total/q!; monomial coefficient multiplies by q!/Π m_i!
            let c = total / int(multiplicity_factor(&m));
            if !c.is_zero() {
                terms.push((m, c));
            }
        }
        let mut p = Self::from_terms(&format!("tr^{q}"), alg.dim(), q, &terms)?;
        p.name = format!("tr{q}");
        Ok(p)
    }

    /// Divides by `τ^degree`.
    pub fn chern_normalized(&self) -> Self {
        let mut p = self.clone();
        p.tau_power += self.degree as u32;
        p.name = format!("{}/tau^{}", self.name, p.tau_power);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Symmetric tensor entry `P(e_{a_1}, …, e_{a_q})`.
    pub fn tensor(&self, args: &[usize]) -> Coeff {
        let mut k = args.to_vec();
        k.sort_unstable();
        match self.coeffs.get(&k) {
            Some(c) => c * int(multiplicity_factor(&k)) / int(factorial(self.degree)),
            None => Coeff::zero(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::BasisMismatch("polynomials on different algebras".into()));
        }
        let mut terms = Vec::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let mut m = a.clone();
                m.extend(b);
                terms.push((m, ca * cb));
            }
        }
        let mut p = Self::from_terms(&format!("{}*{}", self.name, other.name), self.dim, self.degree + other.degree, &terms)?;
        p.tau_power = self.tau_power + other.tau_power;
        Ok(p)
    }

    /// Multilinear value on numeric algebra elements.
    pub fn eval_numeric(&self, args: &[Element]) -> Result<Coeff> {
        if args.len() != self.degree {
            return Err(Error::Arity { expected: self.degree, got: args.len() });
        }
        let mut total = Coeff::zero();
        for idx in (0..self.degree).map(|_| 0..self.dim).multi_cartesian_product() {
            let w: Coeff = idx.iter().zip(args).fold(int(1), |acc, (&a, x)| acc * &x[a]);
            if !w.is_zero() {
                total += w * self.tensor(&idx);
            }
        }
        if self.degree == 0 {
            total = self.coeffs.get(&vec![]).cloned().unwrap_or_else(Coeff::zero);
        }
        Ok(total)
    }

    /// `Σ_i P(Y_1, …, [X, Y_i], …, Y_q) = 0` for all basis `X` and `Y`.
    pub fn infinitesimally_invariant(&self, alg: &LieAlgebra) -> bool {
        if alg.dim() != self.dim {
            return false;
        }
        for x in 0..self.dim {
            for ys in (0..self.degree).map(|_| 0..self.dim).multi_cartesian_product() {
                let mut total = Coeff::zero();
                for i in 0..self.degree {
                    let br = &alg.structure[x][ys[i]];
                    for (k, c) in br.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut args = ys.clone();
                        args[i] = k;
                        total += c * self.tensor(&args);
                    }
                }
                if !total.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Multilinear evaluation on algebra-valued arguments (components per basis).
    pub fn evaluate<T: Graded>(&self, args: &[Vec<T>]) -> Result<T> {
        if args.len() != self.degree {
            return Err(Error::Arity { expected: self.degree, got: args.len() });
        }
        if let Some(a) = args.iter().find(|a| a.len() != self.dim) {
            return Err(Error::Arity { expected: self.dim, got: a.len() });
        }
        let Some(first) = args.first().and_then(|a| a.first()) else {
            return Err(Error::Unsupported("degree-zero polynomial needs a unit".into()));
        };
        let mut total = first.zero_like();
        for idx in (0..self.degree).map(|_| 0..self.dim).multi_cartesian_product() {
            let c = self.tensor(&idx);
            if c.is_zero() {
                continue;
            }
            let mut acc = args[0][idx[0]].clone();
            for (j, &a) in idx.iter().enumerate().skip(1) {
                acc = acc.wedge_with(&args[j][a])?;
            }
            total = total.plus(&acc.scaled(&c));
        }
        if self.tau_power > 0 {
            total = total.times_tau_power(-(self.tau_power as i32))?;
        }
        Ok(total)
    }

    /// `P(A, …, A)`.
    pub fn evaluate_diagonal<T: Graded>(&self, arg: &[T]) -> Result<T> {
        let args: Vec<Vec<T>> = (0..self.degree).map(|_| arg.to_vec()).collect();
        self.evaluate(&args)
    }

    /// Plain rendering in the dual symbols of `alg`, e.g. `X^2`.
    pub fn to_plain(&self, dual: &[String]) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let body = self
            .coeffs
            .iter()
            .map(|(m, c)| {
                let mono = m
                    .iter()
                    .counts()
                    .into_iter()
                    .sorted()
                    .map(|(i, e)| if e == 1 { dual[*i].clone() } else { format!("{}^{}", dual[*i], e) })
                    .join("*");
                if *c == int(1) {
                    mono
                } else {
                    format!("{}*{}", crate::coeff::fmt_coeff(c), mono)
                }
            })
            .join(" + ");
        if self.tau_power > 0 {
            format!("({body})/tau^{}", self.tau_power)
        } else {
            body
        }
    }
}

/// Graded-commutative values that invariant polynomials can be evaluated on.
pub trait Graded: Clone {
    fn wedge_with(&self, other: &Self) -> Result<Self>;
    fn plus(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Coeff) -> Self;
    fn zero_like(&self) -> Self;
    fn times_tau_power(&self, n: i32) -> Result<Self>;
}

impl Graded for Form {
    fn wedge_with(&self, other: &Self) -> Result<Self> {
        self.wedge(other)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn scaled(&self, c: &Coeff) -> Self {
        self.scale(c)
    }
    fn zero_like(&self) -> Self {
        Form::zero(self.chart())
    }
    fn times_tau_power(&self, n: i32) -> Result<Self> {
        let chart = self.chart();
        let t = chart.require("tau")?;
        let mut m = vec![0; chart.nvars()];
        m[t] = n;
        Ok(self.mul_scalar(&crate::scalar::Scalar::monomial(int(1), m)))
    }
}

/// The 𝔰𝔩₂ model with `e, f, h` as 2×2 matrices.
pub fn sl2() -> LieAlgebra {
    let z = Coeff::zero;
    let e = vec![vec![z(), int(1)], vec![z(), z()]];
    let f = vec![vec![z(), z()], vec![int(1), z()]];
    let h = vec![vec![int(1), z()], vec![z(), int(-1)]];
    LieAlgebra::from_matrices("sl2", &["e", "f", "h"], &["E", "F", "H"], vec![e, f, h]).expect("closed")
}

/// 𝔤𝔩₂ with elementary matrices `E11, E12, E21, E22`.
pub fn gl2() -> LieAlgebra {
    let mut mats = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let mut m = vec![vec![Coeff::zero(); 2]; 2];
            m[i][j] = int(1);
            mats.push(m);
        }
    }
    LieAlgebra::from_matrices("gl2-formal", &["E11", "E12", "E21", "E22"], &["A11", "A12", "A21", "A22"], mats)
        .expect("closed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_bracket_ef_is_h() {
        let a = sl2();
        let ef = a.bracket(&a.basis_element(0), &a.basis_element(1)).unwrap();
        assert_eq!(ef, a.basis_element(2));
        assert!(a.jacobi_holds() && a.antisymmetric());
    }

    #[test]
    fn abelian_brackets_vanish() {
        let t = TorusGroup::torus2();
        let x = vec![int(3), int(-1)];
        let y = vec![int(2), int(5)];
        assert!(t.algebra.bracket(&x, &y).unwrap().iter().all(|c| c.is_zero()));
        assert!(t.algebra.bracket(&x, &vec![int(1)]).is_err());
    }

    #[test]
    fn adjoint_on_gl2() {
        let a = gl2();
        let g = vec![vec![int(1), int(2)], vec![int(0), int(1)]];
        let x = a.basis_element(2); // E21
        let y = adjoint(&a, &GroupElement::Matrix(g.clone()), &x).unwrap();
        let expect = mat_mul(&mat_mul(&g, &a.element_matrix(&x).unwrap()), &mat_inverse(&g).unwrap());
        assert_eq!(a.element_matrix(&y).unwrap(), expect);
        assert_eq!(adjoint(&a, &GroupElement::Identity, &x).unwrap(), x);
    }

    #[test]
    fn trace_powers_are_invariant() {
        let a = gl2();
        for q in 1..=3 {
            assert!(InvariantPolynomial::trace_power(&a, q).unwrap().infinitesimally_invariant(&a));
        }
        let s = sl2();
        assert!(InvariantPolynomial::trace_power(&s, 2).unwrap().infinitesimally_invariant(&s));
        // a non-invariant polynomial on sl2: ξ ↦ E-coordinate
        let p = InvariantPolynomial::from_terms("E", 3, 1, &[(vec![0], int(1))]).unwrap();
        assert!(!p.infinitesimally_invariant(&s));
    }

    #[test]
    fn trace_square_matches_matrix_trace() {
        let a = gl2();
        let p = InvariantPolynomial::trace_power(&a, 2).unwrap();
        let x: Element = vec![int(1), int(2), int(3), int(4)];
        let m = a.element_matrix(&x).unwrap();
        assert_eq!(p.eval_numeric(&[x.clone(), x]).unwrap(), trace(&mat_mul(&m, &m)));
    }
}
