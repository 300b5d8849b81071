//! Algebraic invariants on seeded random inputs.

use std::sync::Arc;

use proptest::prelude::*;

use eqchar::action::{self, plane, sphere3};
use eqchar::chart::{Chart, RuleOrder};
use eqchar::coeff::int;
use eqchar::dupont::DupontSpace;
use eqchar::export::{equivariant_from_json, equivariant_json, form_from_json, form_json};
use eqchar::form::Form;
use eqchar::getzler::Getzler;
use eqchar::random::{Generator, Shape};
use eqchar::simplicial::SimplicialSpace;
use eqchar::subst::Substitution;

fn charts() -> Vec<Arc<Chart>> {
    let rot = action::rotation_plane();
    let levels = SimplicialSpace::action(&rot, 2).unwrap();
    vec![plane(), sphere3("S3", &["tau"]), levels.level(1).unwrap().clone(), levels.level(2).unwrap().clone()]
}

fn degree(f: &Form) -> Option<usize> {
    let mut degs = f.terms().map(|(w, _)| w.count_ones() as usize);
    let d = degs.next()?;
    degs.all(|e| e == d).then_some(d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_vanishes(seed: u64, c in 0usize..4) {
        let chart = &charts()[c];
        let f = Generator::new(seed).form(chart);
        prop_assert!(f.exterior_d().exterior_d().vanishes());
    }

    #[test]
    fn contraction_squared_vanishes(seed: u64) {
        let chart = plane();
        let mut g = Generator::new(seed);
        let (f, x) = (g.form(&chart), g.vector_field(&chart).unwrap());
        prop_assert!(f.contract(&x).unwrap().contract(&x).unwrap().is_zero());
    }

    #[test]
    fn cartan_formula(seed: u64, c in 0usize..4) {
        let chart = &charts()[c];
        if chart.name() == "S3" {
            return Ok(());
        }
        let mut g = Generator::new(seed);
        let (f, x) = (g.form(chart), g.vector_field(chart).unwrap());
        prop_assert!(f.lie_derivative(&x).unwrap().same_as(&f.cartan_formula(&x).unwrap()));
    }

    #[test]
    fn leibniz_rule(seed: u64) {
        let chart = &charts()[2];
        let mut g = Generator::new(seed);
        let a = g.form_of_degree(chart, 1);
        let b = g.form(chart);
        let lhs = a.wedge(&b).unwrap().exterior_d();
        let rhs = &a.exterior_d().wedge(&b).unwrap() - &a.wedge(&b.exterior_d()).unwrap();
        prop_assert!(lhs.same_as(&rhs));
    }

    #[test]
    fn graded_commutativity(seed: u64, p in 0usize..3, q in 0usize..3) {
        let chart = &charts()[3];
        let mut g = Generator::new(seed);
        let a = g.form_of_degree(chart, p);
        let b = g.form_of_degree(chart, q);
        prop_assume!(degree(&a) == Some(p) && degree(&b) == Some(q));
        let sign = if p * q % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&int(sign)));
    }

    #[test]
    fn pullback_commutes_with_d(seed: u64) {
        let chart = plane();
        let mut g = Generator::new(seed);
        let f = g.form(&chart);
        let images = vec![g.scalar(&chart), g.scalar(&chart)];
        let phi = Substitution::new(&chart, &chart, images).unwrap();
        prop_assert!(phi.pullback(&f.exterior_d()).unwrap().same_as(&phi.pullback(&f).unwrap().exterior_d()));
    }

    #[test]
    fn reduction_is_order_independent(seed: u64) {
        let s3 = sphere3("S3", &[]);
        let mut g = Generator::new(seed);
        let raw = g.scalar(&s3).mul_raw(&g.scalar(&s3));
        prop_assert_eq!(s3.reduce_ordered(raw.clone(), RuleOrder::Forward), s3.reduce_ordered(raw, RuleOrder::Reverse));
    }

    #[test]
    fn json_round_trip(seed: u64, c in 0usize..4) {
        let chart = &charts()[c];
        let mut g = Generator::new(seed);
        let f = g.form(chart);
        prop_assert_eq!(form_from_json(chart, &form_json(&f)).unwrap(), f);
        let dual = vec!["X".to_string(), "Y".to_string()];
        let w = g.equivariant(chart, &dual);
        prop_assert_eq!(equivariant_from_json(chart, &dual, &equivariant_json(&w)).unwrap(), w);
    }

    #[test]
    fn cartan_d_squared_is_lie_derivative(seed: u64) {
        let rot = action::rotation_plane();
        let mut g = Generator::new(seed);
        let w = g.equivariant(rot.space(), &rot.group.algebra.dual);
        let x = vec![g.coeff()];
        prop_assert!(w.cartan_d_defect(&rot, &x).unwrap().same_as(&w.lie_defect(&rot, &x).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn chain_map_identities(seed: u64, p in 0usize..3) {
        let gz = Getzler::new(&action::rotation_plane(), 3).unwrap();
        let w = Generator::new(seed).form(gz.level(p).unwrap());
        for defect in gz.identity_defects(p, &w).unwrap() {
            prop_assert!(eqchar::getzler::cochain_vanishes(&defect));
        }
    }

    #[test]
    fn dupont_products_stay_compatible(seed: u64) {
        let rot = action::rotation_plane();
        let space = DupontSpace::new(SimplicialSpace::action(&rot, 2).unwrap()).unwrap();
        let mut g = Generator::with_shape(seed, Shape { terms: 2, degree: 1, coeff: 3 });
        let (a, da) = g.dupont_pair(&space, rot.space()).unwrap();
        let (b, _) = g.dupont_pair(&space, rot.space()).unwrap();
        prop_assert!(space.incompatibilities(&space.wedge(&a, &b).unwrap()).unwrap().is_empty());
        prop_assert!(space.incompatibilities(&da).unwrap().is_empty());
    }
}
