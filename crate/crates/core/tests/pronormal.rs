use std::sync::Arc;

use pronormal_core::builders::{build_psl2, build_sz};
use pronormal_core::gf::field_of_order;
use pronormal_core::pronormal::{is_pronormal_def, is_pronormal_rose, verify_witness};
use pronormal_core::subgroup::{p_group_prime, subgroup_classes, EnumMode};
use pronormal_core::verify::targeted_classes;
use pronormal_core::{FiniteGroup, Subgroup};
use rand::{rngs::StdRng, Rng, SeedableRng};

fn psl(q: u64) -> FiniteGroup {
    build_psl2(Arc::new(field_of_order(q).unwrap())).unwrap()
}

/// The definition read literally: for each g, search `<H, H^g>` for an
/// element conjugating H onto H^g.
fn brute_force_pronormal(g: &FiniteGroup, h: &Subgroup) -> bool {
    g.ids().all(|x| {
        let k = g.conjugate_subgroup(h, x);
        let mut gens = h.generators().to_vec();
        gens.extend_from_slice(k.generators());
        let j = g.generate(&gens).unwrap();
        j.members().iter().any(|&y| g.conjugate_subgroup(h, y) == k)
    })
}

#[test]
fn definition_oracle_matches_brute_force() {
    for q in [5, 7, 8] {
        let g = psl(q);
        for c in subgroup_classes(&g, EnumMode::Exhaustive).unwrap() {
            let h = &c.representative;
            assert_eq!(is_pronormal_def(&g, h).is_pronormal(), brute_force_pronormal(&g, h), "PSL(2,{q}) order {}", h.order());
        }
    }
}

fn check_p_subgroups(g: &FiniteGroup, classes: &[Subgroup]) -> usize {
    let mut n = 0;
    for h in classes {
        if h.is_trivial() || p_group_prime(h).is_none() {
            continue;
        }
        let def = is_pronormal_def(g, h);
        let rose = is_pronormal_rose(g, h).unwrap();
        assert_eq!(def.verdict, rose.verdict, "order {}", h.order());
        for w in [def.witness, rose.witness].into_iter().flatten() {
            assert!(verify_witness(g, h, &w).unwrap());
        }
        n += 1;
    }
    n
}

#[test]
fn rose_and_definition_agree_exhaustively() {
    for q in [7, 8, 9, 11] {
        let g = psl(q);
        let reps: Vec<Subgroup> =
            subgroup_classes(&g, EnumMode::Exhaustive).unwrap().into_iter().map(|c| c.representative).collect();
        assert!(check_p_subgroups(&g, &reps) > 0);
    }
}

#[test]
fn rose_and_definition_agree_on_suzuki_two_subgroups() {
    let g = build_sz(Arc::new(field_of_order(8).unwrap())).unwrap();
    let reps: Vec<Subgroup> = targeted_classes(&g, 8).unwrap().into_iter().map(|c| c.representative).collect();
    assert!(check_p_subgroups(&g, &reps) >= 10);
}

#[test]
fn verdicts_are_conjugation_invariant() {
    let g = psl(7);
    let classes = subgroup_classes(&g, EnumMode::Exhaustive).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..50 {
        let c = &classes[rng.gen_range(0..classes.len())];
        let x = rng.gen_range(0..g.order() as u32);
        let h = &c.representative;
        let k = g.conjugate_subgroup(h, x);
        assert_eq!(is_pronormal_def(&g, h).verdict, is_pronormal_def(&g, &k).verdict);
        if p_group_prime(&k).is_some() && !k.is_trivial() {
            assert_eq!(is_pronormal_rose(&g, h).unwrap().verdict, is_pronormal_rose(&g, &k).unwrap().verdict);
        }
    }
}
