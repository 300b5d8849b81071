//! Small hand-checkable cases for each operation.

use std::sync::Arc;

use eqchar::action::{self, plane, Action};
use eqchar::bundle::{self, Connection};
use eqchar::chart::{Chart, ChartBuilder};
use eqchar::coeff::{frac, i_unit, int};
use eqchar::compute::with_trivial_action;
use eqchar::dupont::DupontSpace;
use eqchar::equivariant::{plane_area_form, EquivariantForm};
use eqchar::form::Form;
use eqchar::getzler::Getzler;
use eqchar::lie::{adjoint, gl2, sl2, InvariantPolynomial, LieAlgebra, TorusGroup};
use eqchar::simplicial::SimplicialSpace;
use eqchar::subst::Substitution;
use eqchar::vector_field::VectorField;

fn f(chart: &Arc<Chart>, terms: &[(&str, &[&str])]) -> Form {
    Form::parse_terms(chart, terms).unwrap()
}

fn vf(chart: &Arc<Chart>, parts: &[(&str, &str)]) -> VectorField {
    VectorField::parse(chart, parts).unwrap()
}

#[test]
fn wedge_examples() {
    let c = plane();
    let dx = f(&c, &[("1", &["dx"])]);
    let dy = f(&c, &[("1", &["dy"])]);
    assert!(dx.wedge(&dx).unwrap().is_zero());
    assert_eq!(dx.wedge(&dy).unwrap(), dy.wedge(&dx).unwrap().scale(&int(-1)));
    let lhs = f(&c, &[("x", &["dy"])]).wedge(&f(&c, &[("y", &["dx"])])).unwrap();
    assert_eq!(lhs, f(&c, &[("-x*y", &["dx", "dy"])]));
}

#[test]
fn exterior_d_examples() {
    let c = plane();
    assert!(Form::one(&c).exterior_d().is_zero());
    assert_eq!(f(&c, &[("x", &["dy"])]).exterior_d(), f(&c, &[("1", &["dx", "dy"])]));
    let s3 = action::sphere3("S3", &[]);
    let radius = Form::scalar(&s3, s3.parse("z1*zb1 + z2*zb2").unwrap());
    assert_eq!(radius, Form::one(&s3));
    assert!(radius.exterior_d().vanishes());
}

#[test]
fn contraction_examples() {
    let c = plane();
    let rot = vf(&c, &[("x", "-y"), ("y", "x")]);
    assert!(Form::scalar(&c, c.parse("x^2 + y").unwrap()).contract(&rot).unwrap().is_zero());
    let area = f(&c, &[("1", &["dx", "dy"])]);
    assert_eq!(area.contract(&vf(&c, &[("x", "1")])).unwrap(), f(&c, &[("1", &["dy"])]));
    // ι(X)(dx∧dy) = dx(X) dy - dy(X) dx.
    let field = vf(&c, &[("y", "x"), ("x", "-y")]);
    assert_eq!(area.contract(&field).unwrap(), f(&c, &[("-x", &["dx"]), ("-y", &["dy"])]));
}

#[test]
fn lie_derivative_examples() {
    let c = plane();
    let rot = vf(&c, &[("x", "-y"), ("y", "x")]);
    assert!(Form::one(&c).lie_derivative(&rot).unwrap().is_zero());
    let xdy = f(&c, &[("x", &["dy"])]);
    assert_eq!(xdy.lie_derivative(&vf(&c, &[("x", "1")])).unwrap(), f(&c, &[("1", &["dy"])]));
    assert!(f(&c, &[("1", &["dx", "dy"])]).lie_derivative(&rot).unwrap().is_zero());
}

#[test]
fn pullback_examples() {
    let c = plane();
    let w = f(&c, &[("x*y", &["dx"]), ("y^2", &["dx", "dy"])]);
    assert_eq!(Substitution::identity(&c).pullback(&w).unwrap(), w);
    let constant = Substitution::parse(&c, &c, &[("x", "2"), ("y", "3")]).unwrap();
    assert!(constant.pullback(&f(&c, &[("x", &["dy"])])).unwrap().is_zero());

    let torus = ChartBuilder::new("T").unit("u").unit("v").build().unwrap();
    let circle = ChartBuilder::new("C").unit("w").build().unwrap();
    let mult = Substitution::parse(&circle, &torus, &[("w", "u*v")]).unwrap();
    let mc = f(&circle, &[("w^-1", &["dw"])]);
    assert_eq!(mult.pullback(&mc).unwrap(), f(&torus, &[("u^-1", &["du"]), ("v^-1", &["dv"])]));
}

#[test]
fn integrate_param_examples() {
    let i = ChartBuilder::new("I").real("t").real("x").real("y").build().unwrap();
    let m = plane();
    assert!(f(&i, &[("1", &["dx"])]).integrate_param("t", &m).unwrap().is_zero());
    assert_eq!(f(&i, &[("t^2", &["dt", "dx"])]).integrate_param("t", &m).unwrap(), f(&m, &[("1/3", &["dx"])]));
    assert_eq!(f(&i, &[("x", &["dt", "dy"])]).integrate_param("t", &m).unwrap(), f(&m, &[("x", &["dy"])]));
}

#[test]
fn bracket_examples() {
    let t = TorusGroup::torus2().algebra;
    let (a, b) = (t.basis_element(0), t.basis_element(1));
    assert!(t.bracket(&a, &b).unwrap().iter().all(|c| *c == int(0)));
    let s = sl2();
    let (e, fb, h) = (s.basis_element(0), s.basis_element(1), s.basis_element(2));
    assert_eq!(s.bracket(&e, &fb).unwrap(), h);
    assert!(s.bracket(&e, &e).unwrap().iter().all(|c| *c == int(0)));
}

#[test]
fn invariant_polynomial_examples() {
    let c = plane();
    let omega = f(&c, &[("1", &["dx", "dy"])]);
    assert_eq!(InvariantPolynomial::identity().evaluate_diagonal(std::slice::from_ref(&omega)).unwrap(), omega);
    assert!(InvariantPolynomial::square().evaluate_diagonal(&[omega]).unwrap().is_zero());
}

#[test]
fn trace_square_polarization() {
    let g = gl2();
    let p = InvariantPolynomial::trace_power(&g, 2).unwrap();
    let x = vec![int(1), int(2), int(-1), int(3)];
    let y = vec![int(0), int(1), int(4), int(-2)];
    let (mx, my) = (g.element_matrix(&x).unwrap(), g.element_matrix(&y).unwrap());
    let brute = (eqchar::lie::trace(&eqchar::lie::mat_mul(&mx, &my)) + eqchar::lie::trace(&eqchar::lie::mat_mul(&my, &mx))) * frac(1, 2);
    assert_eq!(p.eval_numeric(&[x, y]).unwrap(), brute);
}

#[test]
fn fundamental_field_examples() {
    let s3 = action::sphere3("S3", &[]);
    let hopf = action::hopf_on(&s3).unwrap();
    assert_eq!(hopf.fundamental_basis(0), vf(&s3, &[("z1", "i*z1"), ("zb1", "-i*zb1")]));
    let trivial = Action::trivial(&TorusGroup::u1(), &plane()).unwrap();
    assert_eq!(trivial.fundamental_basis(0), VectorField::zero(&plane()));
}

#[test]
fn adjoint_examples() {
    let t: LieAlgebra = TorusGroup::u1().algebra;
    let x = vec![int(3)];
    assert_eq!(adjoint(&t, &eqchar::lie::GroupElement::Torus, &x).unwrap(), x);
    let g = gl2();
    let x = vec![int(1), int(2), int(0), int(-1)];
    assert_eq!(adjoint(&g, &eqchar::lie::GroupElement::Identity, &x).unwrap(), x);
    let m = vec![vec![int(1), int(1)], vec![int(0), int(1)]];
    let expected = eqchar::lie::mat_mul(&eqchar::lie::mat_mul(&m, &g.element_matrix(&x).unwrap()), &eqchar::lie::mat_inverse(&m).unwrap());
    let got = adjoint(&g, &eqchar::lie::GroupElement::Matrix(m), &x).unwrap();
    assert_eq!(g.element_matrix(&got).unwrap(), expected);
}

#[test]
fn cartan_examples() {
    let rot = action::rotation_plane();
    let c = rot.space().clone();
    let dual = rot.group.algebra.dual.clone();
    let constant = EquivariantForm::from_form(Form::constant(&c, int(7)), &dual);
    assert!(constant.cartan_d(&rot).unwrap().vanishes());
    assert!(plane_area_form(&rot).unwrap().cartan_d(&rot).unwrap().vanishes());

    let xdy = EquivariantForm::from_components(&c, &dual, vec![(vec![0], f(&c, &[("x", &["dy"])]))]).unwrap();
    let x = vec![int(1)];
    let defect = xdy.cartan_d_defect(&rot, &x).unwrap();
    assert!(!defect.vanishes());
    assert_eq!(defect, xdy.lie_defect(&rot, &x).unwrap());

    let trivial = Action::trivial(&rot.group, &c).unwrap();
    assert!(xdy.cartan_d_defect(&trivial, &x).unwrap().vanishes());
}

#[test]
fn equivariant_wedge_and_degrees() {
    let rot = action::rotation_plane();
    let c = rot.space().clone();
    let dual = rot.group.algebra.dual.clone();
    let area = plane_area_form(&rot).unwrap();
    let one = EquivariantForm::from_form(Form::one(&c), &dual);
    assert_eq!(one.wedge(&area).unwrap(), area);
    let x = EquivariantForm::polynomial(&c, &dual, vec![0], int(2));
    assert_eq!(x.wedge(&x).unwrap(), EquivariantForm::polynomial(&c, &dual, vec![0, 0], int(4)));
    let a = EquivariantForm::from_components(&c, &dual, vec![(vec![0], f(&c, &[("1", &["dx"])]))]).unwrap();
    assert_eq!(a.total_degree(), Some(3));
    let p1 = EquivariantForm::polynomial(&c, &dual, vec![0], int(1));
    let two_two = EquivariantForm::from_components(&c, &dual, vec![(vec![], f(&c, &[("1", &["dx", "dy"])]))]).unwrap();
    assert_eq!(p1.wedge(&two_two).unwrap().total_degree(), Some(4));
}

#[test]
fn equivariance_examples() {
    let rot = action::rotation_plane();
    let c = rot.space().clone();
    let dual = rot.group.algebra.dual.clone();
    let area = EquivariantForm::from_form(f(&c, &[("1", &["dx", "dy"])]), &dual);
    let xdy = EquivariantForm::from_form(f(&c, &[("x", &["dy"])]), &dual);
    assert!(area.check_equivariance(&rot).unwrap());
    assert!(!xdy.check_equivariance(&rot).unwrap());
    assert!(xdy.check_equivariance(&Action::trivial(&rot.group, &c).unwrap()).unwrap());
}

#[test]
fn curvature_examples() {
    let ex = bundle::trivial_r2().unwrap();
    assert!(ex.flat.as_ref().unwrap().curvature()[0].is_zero());
    let e = ex.bundle.total().clone();
    assert_eq!(ex.non_invariant.as_ref().unwrap().curvature()[0], f(&e, &[("1", &["dx", "dy"])]));
    let hopf = bundle::hopf().unwrap();
    let s3 = hopf.bundle.total().clone();
    assert!(hopf.connection.curvature()[0].same_as(&f(&s3, &[("1", &["dzb1", "dz1"]), ("1", &["dzb2", "dz2"])])));
}

#[test]
fn moment_map_examples() {
    let hopf = bundle::hopf().unwrap();
    let s3 = hopf.bundle.total().clone();
    let mu = hopf.bundle.moment_map(&hopf.connection, &vec![int(1)]).unwrap();
    assert!(mu[0].same_as(&Form::scalar(&s3, s3.parse("i*z1*zb1").unwrap())));
    let trivial = with_trivial_action(&hopf.bundle).unwrap();
    assert!(trivial.moment_map(&hopf.connection, &vec![int(1)]).unwrap()[0].vanishes());
}

#[test]
fn char_form_and_transgression_examples() {
    let ex = bundle::trivial_r2().unwrap();
    let b = &ex.bundle;
    let id = InvariantPolynomial::identity();
    let cf = b.char_form(&id, &ex.connection).unwrap();
    assert!(cf.cartan_d(&b.g_total).unwrap().vanishes());
    let e = b.total().clone();
    assert_eq!(cf.component(&[]), f(&e, &[("1", &["dx", "dy"])]));

    let flat = ex.flat.clone().unwrap();
    let trivial = with_trivial_action(b).unwrap();
    assert!(trivial.char_form(&id, &flat).unwrap().vanishes());
    assert!(b.transgression(&id, &ex.connection, &ex.connection).unwrap().vanishes());
    let shifted = ex.non_invariant.clone().unwrap();
    let tr = trivial.transgression(&id, &flat, &shifted).unwrap();
    assert!(tr.same_as(&EquivariantForm::from_form(f(&e, &[("x", &["dy"])]), b.g_dual())));
}

#[test]
fn line_bundle_comparison_examples() {
    let ex = bundle::trivial_r2().unwrap();
    let c = bundle::compare(&ex.bundle, &ex.line_connection, &ex.line, &ex.frame).unwrap();
    assert!(c.passed());
    let e = ex.bundle.total().clone();
    let perturbed = Connection::single(&ex.line_connection.components[0] + &f(&e, &[("y", &["dx"])]));
    assert!(!bundle::compare(&ex.bundle, &perturbed, &ex.line, &ex.frame).unwrap().passed());
}

#[test]
fn simplicial_del_examples() {
    let rot = action::rotation_plane();
    let space = SimplicialSpace::action(&rot, 2).unwrap();
    let m = space.level(0).unwrap().clone();
    let g1m = space.level(1).unwrap().clone();
    let still = SimplicialSpace::action(&Action::trivial(&rot.group, rot.space()).unwrap(), 1).unwrap();
    let area = f(still.level(0).unwrap(), &[("1", &["dx", "dy"])]);
    assert!(still.del(0, &area).unwrap().vanishes());

    let r2 = rot.space().clone();
    let xdy_m = f(&r2, &[("x", &["dy"])]);
    let xdy = f(&m, &[("x", &["dy"])]);
    let rename = Substitution::parse(rot.substitution().target(), &g1m, &[("u", "g1")]).unwrap();
    let act = rot.substitution().then(&rename).unwrap();
    let pr = Substitution::by_name(&r2, &g1m).unwrap();
    let expected = &pr.pullback(&xdy_m).unwrap() - &act.pullback(&xdy_m).unwrap();
    assert!(space.del(0, &xdy).unwrap().same_as(&expected));
    assert!(space.del(1, &space.del(0, &xdy).unwrap()).unwrap().vanishes());
}

#[test]
fn simplex_integration_examples() {
    let rot = action::rotation_plane();
    let d = DupontSpace::new(SimplicialSpace::action(&rot, 1).unwrap()).unwrap();
    let w = f(d.chart(0).unwrap(), &[("x", &["dy"])]);
    assert_eq!(d.integrate(0, &w).unwrap().terms().count(), 1);
    let t0 = Form::scalar(d.chart(1).unwrap(), d.barycentric(1, 0).unwrap()).wedge(&Form::generator(d.chart(1).unwrap(), "t1").unwrap()).unwrap();
    assert_eq!(d.integrate(1, &t0).unwrap(), Form::constant(d.base().level(1).unwrap(), frac(1, 2)));
}

#[test]
fn simplicial_connection_examples() {
    let ex = bundle::trivial_r2().unwrap();
    let trivial = with_trivial_action(&ex.bundle).unwrap();
    let d = DupontSpace::new(SimplicialSpace::action(&trivial.g_total, 1).unwrap()).unwrap();
    let theta = d.simplicial_connection(&trivial, &ex.connection).unwrap();
    let up = |p: usize| Substitution::by_name(ex.bundle.total(), d.chart(p).unwrap()).unwrap();
    assert!(theta[0].components[0].same_as(&up(0).pullback(&ex.connection.components[0]).unwrap()));
    assert!(theta[1].components[0].same_as(&up(1).pullback(&ex.connection.components[0]).unwrap()));
}

fn getzler() -> Getzler {
    Getzler::new(&action::rotation_plane(), 2).unwrap()
}

#[test]
fn dbar_examples() {
    let gz = getzler();
    let m = gz.level(0).unwrap().clone();
    let area = EquivariantForm::from_form(f(&m, &[("1", &["dx", "dy"])]), gz.dual());
    assert!(gz.dbar(0, &area).unwrap().vanishes());
    let xdy = EquivariantForm::from_form(f(&m, &[("x", &["dy"])]), gz.dual());
    assert!(!gz.dbar(0, &xdy).unwrap().vanishes());
}

#[test]
fn group_average_examples() {
    let gz = getzler();
    let l1 = gz.level(1).unwrap().clone();
    let m = gz.level(0).unwrap().clone();
    let plain = EquivariantForm::from_form(f(&l1, &[("x*y", &["dx"])]), gz.dual());
    assert!(gz.integrate_group(1, &plain).unwrap().same_as(&EquivariantForm::from_form(f(&m, &[("x*y", &["dx"])]), gz.dual())));
    let character = EquivariantForm::from_form(f(&l1, &[("g1^3*x", &["dy"])]), gz.dual());
    assert!(gz.integrate_group(1, &character).unwrap().vanishes());
}

#[test]
fn iota_bar_examples() {
    let gz = getzler();
    let m = gz.level(0).unwrap().clone();
    let l1 = gz.level(1).unwrap().clone();
    let omega = EquivariantForm::from_form(f(&m, &[("x", &["dy"])]), gz.dual());
    assert!(gz.iota_bar(0, &omega).is_err());
    let n = 3;
    let character = EquivariantForm::from_form(f(&l1, &[(&format!("g1^{n}"), &["dx"])]), gz.dual());
    let expected = EquivariantForm::from_components(&m, gz.dual(), vec![(vec![0], f(&m, &[("1", &["dx"])]).scale(&(i_unit() * int(n))))]).unwrap();
    assert!(gz.iota_bar(1, &character).unwrap().same_as(&expected));
}

#[test]
fn j_map_level_zero_is_identity() {
    let gz = getzler();
    let m = gz.level(0).unwrap().clone();
    let w = f(&m, &[("x^2", &["dy"]), ("y", &[])]);
    let out = gz.j_map(0, &w).unwrap();
    assert_eq!(out.len(), 1);
    assert!(out[&0].same_as(&EquivariantForm::from_form(w, gz.dual())));
}
