use std::collections::BTreeSet;
use std::sync::Arc;

use pronormal_core::builders::{build_psl2, j1_from_text, J1_ORDER};
use pronormal_core::gf::field_of_order;
use pronormal_core::identities::suzuki_identities;
use pronormal_core::subgroup::{centralizer, element_classes, normalizer, subgroup_classes, ConjugacyOrbit, EnumMode};
use pronormal_core::{Domain, Error, FieldElement, FiniteGroup, GroupElement, IsoLabel, SuzukiModel};
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn psl(q: u64) -> FiniteGroup {
    build_psl2(Arc::new(field_of_order(q).unwrap())).unwrap()
}

#[test]
fn psl_orders_and_axioms() {
    for (q, n) in [(4, 60), (5, 60), (7, 168), (8, 504), (9, 360), (11, 660), (13, 1092)] {
        let g = psl(q);
        assert_eq!(g.order(), n, "PSL(2,{q})");
        g.verify_axioms_sampled(2000, q).unwrap();
    }
    psl(7).verify_axioms_exhaustive().unwrap();
}

#[test]
fn canonical_form_on_random_sl2_17() {
    let f = Arc::new(field_of_order(17).unwrap());
    let d = Domain::ProjectiveSl2(f.clone());
    let mut rng = StdRng::seed_from_u64(17);
    let mut tested = 0;
    while tested < 100 {
        let (a, b, c) = (rng.gen_range(0..17u16), rng.gen_range(0..17u16), rng.gen_range(1..17u16));
        // d = (1 + b c) / a is forced when a != 0.
        if a == 0 {
            continue;
        }
        let (a, b, c) = (FieldElement(a), FieldElement(b), FieldElement(c));
        let dd = f.mul(f.add(FieldElement::ONE, f.mul(b, c)), f.inv(a).unwrap());
        let m = GroupElement::ProjMat2([a, b, c, dd]);
        d.validate(&m).unwrap();
        let neg = GroupElement::ProjMat2([f.neg(a), f.neg(b), f.neg(c), f.neg(dd)]);
        let cm = d.canonical(m.clone());
        assert_eq!(cm, d.canonical(neg));
        assert_eq!(d.canonical(cm.clone()), cm);
        assert!(cm == m || cm == GroupElement::ProjMat2([f.neg(a), f.neg(b), f.neg(c), f.neg(dd)]));
        tested += 1;
    }
}

#[test]
fn subgroup_orders_divide_group_order_and_closure_is_idempotent() {
    for q in [7, 8] {
        let g = psl(q);
        for c in subgroup_classes(&g, EnumMode::Exhaustive).unwrap() {
            let h = &c.representative;
            assert_eq!(g.order() % h.order(), 0);
            assert_eq!(&g.generate(h.members()).unwrap(), h);
            assert_eq!(&g.generate(h.generators()).unwrap(), h);
        }
    }
}

#[test]
fn orbit_stabilizer_exhaustive() {
    for q in [7, 8] {
        let g = psl(q);
        for class in element_classes(&g) {
            let cent = centralizer(&g, &g.cyclic(class[0])).unwrap();
            assert_eq!(class.len() * cent.order(), g.order());
        }
        for c in subgroup_classes(&g, EnumMode::Exhaustive).unwrap() {
            let n = normalizer(&g, &c.representative).unwrap();
            assert_eq!(c.class_size * n.order(), g.order(), "PSL(2,{q})");
        }
    }
}

/// Every subgroup of PSL(2,7) is generated by two elements, so closing all
/// pairs lists every subgroup.
#[test]
fn pair_closure_enumeration_matches_classes() {
    let g = psl(7);
    let mut all = BTreeSet::new();
    for x in g.ids() {
        for y in x..g.order() as u32 {
            all.insert(g.generate(&[x, y]).unwrap().into_members());
        }
    }
    let classes = subgroup_classes(&g, EnumMode::Exhaustive).unwrap();
    assert_eq!(all.len(), 179);
    assert_eq!(classes.len(), 15);
    assert_eq!(classes.iter().map(|c| c.class_size).sum::<usize>(), all.len());
    let from_classes: BTreeSet<Vec<u32>> = classes
        .iter()
        .flat_map(|c| ConjugacyOrbit::new(&g, &c.representative).conjugates)
        .map(|s| s.into_members())
        .collect();
    assert_eq!(from_classes, all);
}

#[test]
fn suzuki_identities_gf8_and_gf32() {
    for q in [8, 32] {
        let model = SuzukiModel::new(Arc::new(field_of_order(q).unwrap())).unwrap();
        for c in suzuki_identities(&model) {
            assert!(c.passed, "{}", c.name);
        }
    }
}

#[test]
fn suzuki_32_is_beyond_the_enumeration_cap() {
    let f = Arc::new(field_of_order(32).unwrap());
    assert!(matches!(pronormal_core::build_sz(f), Err(Error::CapExceeded(_))));
}

#[test]
fn j1_gate() {
    let text = include_str!("../data/j1_gf11.txt");
    let g = j1_from_text(text).unwrap();
    assert_eq!(g.order(), J1_ORDER);
    g.verify_axioms_sampled(5000, 11).unwrap();
    // Dropping the second generator leaves a cyclic group and must fail the gate.
    let first: String = text.lines().take(8).collect::<Vec<_>>().join("\n").replace("matrix 11 7 2", "matrix 11 7 1");
    assert!(matches!(j1_from_text(&first), Err(Error::WrongOrder { expected: J1_ORDER, .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn element_arithmetic(a in 0u32..168, b in 0u32..168, c in 0u32..168) {
        let g = psl(7);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        prop_assert_eq!(g.conj(g.mul(a, b), c), g.mul(g.conj(a, c), g.conj(b, c)));
        prop_assert_eq!(g.pow(a, g.element_order(a) as u64), g.identity());
        prop_assert_eq!(g.apply_word(g.identity(), &g.word(a)), a);
    }

    #[test]
    fn generated_subgroups_closed(a in 0u32..504, b in 0u32..504) {
        let g = psl(8);
        let h = g.generate(&[a, b]).unwrap();
        prop_assert_eq!(g.order() % h.order(), 0);
        for &x in h.members() {
            prop_assert!(h.contains(g.inv(x)));
            prop_assert!(h.contains(g.mul(x, a)));
        }
    }
}

#[test]
fn psl27_class_labels() {
    let g = psl(7);
    let mut labels: Vec<String> = subgroup_classes(&g, EnumMode::Exhaustive)
        .unwrap()
        .iter()
        .map(|c| match c.fingerprint.label {
            IsoLabel::Other(_) => format!("Other of order {}", c.order()),
            l => l.to_string(),
        })
        .collect();
    labels.sort();
    assert_eq!(
        labels,
        [
            "A4", "A4", "Cyclic(1)", "Cyclic(2)", "Cyclic(3)", "Cyclic(4)", "Cyclic(7)", "Dihedral(6)",
            "Dihedral(8)", "ElemAbelian(2,2)", "ElemAbelian(2,2)", "Frobenius(7:3)", "Other of order 168",
            "S4", "S4",
        ]
    );
}

#[test]
fn j1_bounded_orders() {
    let g = j1_from_text(include_str!("../data/j1_gf11.txt")).unwrap();
    let classes = subgroup_classes(&g, EnumMode::Bounded(8)).unwrap();
    let orders: BTreeSet<usize> = classes.iter().map(|c| c.order()).collect();
    // Elements of order 6 exist in J1, so order 6 appears alongside the rest.
    assert_eq!(orders.into_iter().collect::<Vec<_>>(), [1, 2, 3, 4, 5, 6, 7, 8]);
}
