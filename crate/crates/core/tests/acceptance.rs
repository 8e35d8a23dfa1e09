//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use pronormal_core::builders::build_psl2;
use pronormal_core::gf::{field_of_order, prime_power};
use pronormal_core::identities::field_axioms;
use pronormal_core::pronormal::is_pronormal_def;
use pronormal_core::subgroup::{centralizer, element_classes, normalizer, subgroup_classes, EnumMode};
use pronormal_core::verify::{run_verification, TargetReport};
use pronormal_core::{FiniteGroup, GroupSpec, Method, TargetConfig, TargetMode, Verdict, VerifyConfig};
use rand::{rngs::StdRng, Rng, SeedableRng};

type Outcome = Result<String, String>;

struct Run {
    report: Result<TargetReport, String>,
    seconds: f64,
}

fn run(spec: GroupSpec, mode: TargetMode) -> Run {
    let mut cfg = VerifyConfig::new(vec![TargetConfig::new(spec, mode)]);
    cfg.j1_generator_path = Some(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/j1_gf11.txt"));
    let start = Instant::now();
    let report = run_verification(&cfg).map(|mut r| r.targets.remove(0)).map_err(|e| e.to_string());
    Run { report, seconds: start.elapsed().as_secs_f64() }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed_check(t: &TargetReport, name: &str) -> Result<String, String> {
    let c = t.check(name).ok_or_else(|| format!("check '{name}' missing"))?;
    ensure(c.passed, || format!("{name}: {}", c.detail))?;
    Ok(c.detail.clone())
}

fn non_pronormal_labels(t: &TargetReport) -> Vec<String> {
    let mut v: Vec<String> =
        t.classes.iter().filter(|c| c.verdict == Verdict::NotPronormal).map(|c| c.label.clone()).collect();
    v.sort();
    v.dedup();
    v
}

fn common(t: &TargetReport, r: &Run, order: usize, limit: f64) -> Result<(), String> {
    ensure(t.group.order == order, || format!("order {} != {order}", t.group.order))?;
    let cmp = t.comparison.as_ref().ok_or("no table comparison")?;
    ensure(cmp.matched, || format!("table mismatch: {:?}", cmp.mismatches))?;
    ensure(r.seconds < limit, || format!("took {:.1}s, limit {limit}s", r.seconds))
}

fn criterion1(r: &Run) -> Outcome {
    let t = r.report.as_ref()?;
    common(t, r, 168, 60.0)?;
    ensure(non_pronormal_labels(t) == ["Cyclic(2)"], || format!("non-pronormal: {:?}", t.non_pronormal))?;
    let lat = t.lattice.as_ref().ok_or("no lattice results")?;
    ensure(lat.join_closed == Some(true), || "join closure failed".into())?;
    let meet = lat.meet_counterexample.as_ref().ok_or("no meet counterexample")?;
    ensure(meet.counterexample && meet.intersection_order == 2, || format!("meet: {meet:?}"))?;
    ensure(lat.lattice_verified == Some(true), || format!("lattice axioms: {:?}", lat.lattice))?;
    Ok(format!("{} meets {} in {}", meet.h, meet.k, meet.intersection))
}

fn criterion2(r: &Run) -> Outcome {
    let t = r.report.as_ref()?;
    common(t, r, 504, 300.0)?;
    ensure(non_pronormal_labels(t) == ["Cyclic(2)", "ElemAbelian(2,2)"], || format!("{:?}", t.non_pronormal))?;
    let n2 = passed_check(t, "Sylow 2-subgroup normalizer")?;
    ensure(n2.contains("of order 56 "), || n2.clone())?;
    let lat = t.lattice.as_ref().ok_or("no lattice results")?;
    ensure(lat.passed(), || format!("lattice suite: {lat:?}"))?;
    Ok(format!("N(S2): {n2}"))
}

fn criterion3(r: &Run) -> Outcome {
    let t = r.report.as_ref()?;
    common(t, r, 2448, 600.0)?;
    ensure(t.mode == TargetMode::Targeted, || "not targeted".into())?;
    let v2 = passed_check(t, "v2(|G|)")?;
    ensure(v2 == "4", || format!("v2 = {v2}"))?;
    let n2 = passed_check(t, "Sylow 2-subgroup normalizer")?;
    ensure(n2.starts_with("Dihedral(16) of order 16"), || n2.clone())?;
    ensure(non_pronormal_labels(t) == ["Cyclic(2)", "ElemAbelian(2,2)"], || format!("{:?}", t.non_pronormal))?;
    for d in [3, 9, 4, 8] {
        let ok = t.classes.iter().any(|c| c.label == format!("Cyclic({d})") && c.verdict == Verdict::Pronormal);
        ensure(ok, || format!("Cyclic({d}) not found pronormal"))?;
    }
    passed_check(t, "cyclic subgroups of order > 2 pronormal")?;
    Ok(format!("N(S2) = {n2}"))
}

fn criterion4(r: &Run) -> Outcome {
    let t = r.report.as_ref()?;
    common(t, r, 29120, 900.0)?;
    ensure(!t.identities.is_empty() && t.identities.iter().all(|c| c.passed), || "identity battery failed".into())?;
    let p2 = passed_check(t, "pronormal 2-subgroup classes")?;
    passed_check(t, "every subgroup of S classified")?;
    passed_check(t, "Z(S) = {M(0,b)}")?;
    let meet = t.lattice.as_ref().and_then(|l| l.meet_counterexample.as_ref()).ok_or("no meet counterexample")?;
    ensure(
        meet.counterexample
            && meet.h == "Frobenius(13:4)"
            && meet.k == "Frobenius(5:4)"
            && meet.intersection == "Cyclic(4)",
        || format!("meet: {meet:?}"),
    )?;
    passed_check(t, "join of two Sylow centres is G")?;
    Ok(format!("pronormal 2-classes: {p2}"))
}

fn criterion5(r: &Run) -> Outcome {
    let t = r.report.as_ref()?;
    common(t, r, 175_560, 2700.0)?;
    let n2 = passed_check(t, "Sylow 2-subgroup normalizer")?;
    ensure(n2.ends_with("of order 168"), || n2.clone())?;
    ensure(non_pronormal_labels(t) == ["Cyclic(2)", "ElemAbelian(2,2)"], || format!("{:?}", t.non_pronormal))?;
    let cross = t.classes.iter().filter(|c| c.verdict == Verdict::NotPronormal).all(|c| c.method == Method::Both);
    ensure(cross, || "non-pronormal classes not cross-validated".into())?;
    passed_check(t, "Dihedral(6) pronormal by the definition oracle")?;
    passed_check(t, "Dihedral(10) pronormal by the definition oracle")?;
    let meet = t.lattice.as_ref().and_then(|l| l.meet_counterexample.as_ref()).ok_or("no meet counterexample")?;
    ensure(meet.counterexample && meet.intersection == "Cyclic(2)", || format!("meet: {meet:?}"))?;
    Ok(format!("N(S2) = {n2}; {} classes", t.classes.len()))
}

fn criterion6(runs: &[Run]) -> Outcome {
    let mut total = 0;
    for r in runs {
        let t = r.report.as_ref()?;
        for c in &t.classes {
            if c.order > 1 && prime_power(c.order as u64).is_some() {
                ensure(c.method == Method::Both, || format!("{} {} not cross-checked", t.group.label, c.label))?;
                total += 1;
            }
        }
    }
    Ok(format!("{total} p-subgroup classes agree"))
}

fn psl(q: u64) -> FiniteGroup {
    build_psl2(Arc::new(field_of_order(q).unwrap())).unwrap()
}

fn criterion7(runs: &[Run]) -> Outcome {
    let mut fields = 0;
    for q in (2..=32).filter(|&q| prime_power(q).is_some()) {
        let f = field_of_order(q).map_err(|e| e.to_string())?;
        for c in field_axioms(&f) {
            ensure(c.passed, || c.name.clone())?;
        }
        fields += 1;
    }
    let g7 = psl(7);
    let classes7 = subgroup_classes(&g7, EnumMode::Exhaustive).map_err(|e| e.to_string())?;
    for c in &classes7 {
        let h = &c.representative;
        ensure(g7.generate(h.members()).ok().as_ref() == Some(h), || format!("closure of order {} not idempotent", h.order()))?;
    }
    let mut rng = StdRng::seed_from_u64(2026);
    for _ in 0..50 {
        let h = &classes7[rng.gen_range(0..classes7.len())].representative;
        let k = g7.conjugate_subgroup(h, rng.gen_range(0..g7.order() as u32));
        ensure(is_pronormal_def(&g7, h).verdict == is_pronormal_def(&g7, &k).verdict, || "verdict changed under conjugation".into())?;
    }
    for r in runs {
        let t = r.report.as_ref()?;
        passed_check(t, "equal-order cyclic subgroups conjugate")?;
    }
    for q in [7, 8] {
        let g = psl(q);
        for class in element_classes(&g) {
            let c = centralizer(&g, &g.cyclic(class[0])).map_err(|e| e.to_string())?;
            ensure(class.len() * c.order() == g.order(), || format!("element orbit-stabilizer fails in PSL(2,{q})"))?;
        }
        for c in subgroup_classes(&g, EnumMode::Exhaustive).map_err(|e| e.to_string())? {
            let n = normalizer(&g, &c.representative).map_err(|e| e.to_string())?;
            ensure(c.class_size * n.order() == g.order(), || format!("subgroup orbit-stabilizer fails in PSL(2,{q})"))?;
        }
    }
    Ok(format!("{fields} fields, {} classes idempotent, 50 conjugate pairs, csc on 5 targets", classes7.len()))
}

fn main() {
    let runs = vec![
        run(GroupSpec::psl2(7).unwrap(), TargetMode::Exhaustive),
        run(GroupSpec::psl2(8).unwrap(), TargetMode::Exhaustive),
        run(GroupSpec::psl2(17).unwrap(), TargetMode::Targeted),
        run(GroupSpec::sz(8).unwrap(), TargetMode::Targeted),
        run(GroupSpec::j1(), TargetMode::Targeted),
    ];
    let outcomes: Vec<(&str, Outcome)> = vec![
        ("PSL(2,7) exhaustive", criterion1(&runs[0])),
        ("PSL(2,8) exhaustive", criterion2(&runs[1])),
        ("PSL(2,17) targeted", criterion3(&runs[2])),
        ("Sz(8) targeted", criterion4(&runs[3])),
        ("J1 targeted", criterion5(&runs[4])),
        ("cross-oracle equivalence", criterion6(&runs)),
        ("property suites", criterion7(&runs)),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in outcomes.iter().enumerate() {
        let time = runs.get(i).map(|r| format!(" [{:.1}s]", r.seconds)).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}{time}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}{time}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
