//! Targets beyond the default acceptance set.

use pronormal_core::verify::run_verification;
use pronormal_core::{GroupSpec, Suite, TargetConfig, TargetMode, VerifyConfig};

fn run(q: u64) -> pronormal_core::verify::TargetReport {
    let mut cfg = VerifyConfig::new(vec![TargetConfig::new(GroupSpec::psl2(q).unwrap(), TargetMode::Targeted)]);
    cfg.suite = Suite::Lattice;
    let mut r = run_verification(&cfg).unwrap();
    r.targets.remove(0)
}

#[test]
fn psl2_27_unipotent_classes() {
    let t = run(27);
    assert!(t.passed(), "{:?}", t.comparison);
    assert_eq!(t.non_pronormal.len(), 3);
}

#[test]
fn psl2_31_dihedral_regime() {
    let t = run(31);
    assert!(t.passed(), "{:?}", t.comparison);
    assert!(t.non_pronormal.iter().any(|s| s.starts_with("Dihedral(8)")));
}

#[test]
fn psl2_19_and_32() {
    for q in [19, 32] {
        let t = run(q);
        assert!(t.passed(), "q = {q}: {:?}", t.comparison);
    }
}

#[test]
fn unknown_regimes_rejected() {
    for q in [11, 13, 23, 25, 9] {
        assert!(GroupSpec::psl2(q).is_err(), "q = {q}");
    }
}
