//! End-to-end verification: build each target, enumerate and classify its
//! subgroup classes, compare with the expected non-pronormal table, run the
//! lattice and identity suites, and assemble a deterministic report.

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::builders::{build_psl2, build_sz, load_j1, Family, GroupSpec, IsoLabel, Regime, SuzukiModel};
use crate::error::{Error, Result};
use crate::gf::{field_of_order, prime_power, FieldCtx};
use crate::group::{ElemId, FiniteGroup, Subgroup};
use crate::identities::{field_axioms, suzuki_identities, IdentityCheck};
use crate::lattice::{
    build_family, check_join_closed, counterexample_labels, find_meet_counterexample_scan,
    find_meet_counterexample_targeted, verify_lattice, LatticeReport, MeetConstruction, MeetCounterexample, Scope,
};
use crate::pronormal::{check_csc, classify, verify_witness, ClassifyOptions, Method, PronormalVerdict, SylowCache, Verdict, Witness};
use crate::subgroup::{
    all_subgroups_of, centralizer, cyclic_classes, extend_classes, intersect, join, normalizer, subgroup_classes, sylow,
    valuation, ClassRegistry, EnumMode, SubgroupClass, SylowSystem, EXHAUSTIVE_MAX,
};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetMode {
    Exhaustive,
    Targeted,
}

impl TargetMode {
    /// Exhaustive for small groups, targeted otherwise.
    pub fn auto(order: u64) -> TargetMode {
        if order <= 600 {
            TargetMode::Exhaustive
        } else {
            TargetMode::Targeted
        }
    }
}

impl fmt::Display for TargetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TargetMode::Exhaustive => "exhaustive",
            TargetMode::Targeted => "targeted",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Classify,
    Lattice,
    Identities,
    All,
}

impl Suite {
    fn classify(self) -> bool {
        matches!(self, Suite::Classify | Suite::Lattice | Suite::All)
    }

    fn lattice(self) -> bool {
        matches!(self, Suite::Lattice | Suite::All)
    }

    fn identities(self) -> bool {
        matches!(self, Suite::Identities | Suite::All)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct TargetConfig {
    pub spec: GroupSpec,
    pub mode: TargetMode,
    /// Order bound for the generic cyclic-extension pass in targeted mode.
    pub bound: Option<usize>,
}

impl TargetConfig {
    pub fn new(spec: GroupSpec, mode: TargetMode) -> Self {
        TargetConfig { spec, mode, bound: None }
    }

    fn default_bound(&self) -> usize {
        match self.spec.family {
            Family::Psl2 => 48,
            Family::Sz => 20,
            Family::J1 => 24,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub targets: Vec<TargetConfig>,
    pub j1_generator_path: Option<PathBuf>,
    /// Worker threads for the parallel scans; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub suite: Suite,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    /// Uniform per-stage budget, overriding the per-family defaults.
    pub stage_budget: Option<Duration>,
}

impl VerifyConfig {
    pub fn new(targets: Vec<TargetConfig>) -> Self {
        VerifyConfig {
            targets,
            j1_generator_path: None,
            jobs: None,
            suite: Suite::All,
            output: None,
            format: OutputFormat::Text,
            stage_budget: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.targets.is_empty() {
            return Err(Error::InvalidInput("no targets configured".into()));
        }
        for t in &self.targets {
            if t.mode == TargetMode::Exhaustive && t.spec.expected_order() > EXHAUSTIVE_MAX as u64 {
                return Err(Error::InvalidInput(format!(
                    "exhaustive mode needs |G| <= {EXHAUSTIVE_MAX}; {} has order {}",
                    t.spec.label(),
                    t.spec.expected_order()
                )));
            }
            if t.spec.family == Family::J1 && self.j1_generator_path.is_none() {
                return Err(Error::InvalidInput("the J1 target needs a generator file".into()));
            }
        }
        if self.jobs == Some(0) {
            return Err(Error::InvalidInput("--jobs must be positive".into()));
        }
        Ok(())
    }
}

/// One entry of an expected non-pronormal table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Descriptor {
    Label(IsoLabel),
    /// Every 2-subgroup except the listed isomorphism types.
    TwoGroupExcept(Vec<IsoLabel>),
}

impl Descriptor {
    pub fn matches(&self, order: u64, label: IsoLabel) -> bool {
        match self {
            Descriptor::Label(l) => *l == label,
            Descriptor::TwoGroupExcept(ex) => order > 1 && order.is_power_of_two() && !ex.contains(&label),
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Label(l) => write!(f, "{l}"),
            Descriptor::TwoGroupExcept(ex) => {
                let names: Vec<String> = ex.iter().map(|l| l.to_string()).collect();
                write!(f, "every 2-subgroup except {}", names.join(", "))
            }
        }
    }
}

fn elem_abelian(p: u64, j: u32) -> IsoLabel {
    if j == 1 {
        IsoLabel::Cyclic(p)
    } else {
        IsoLabel::ElemAbelian(p, j)
    }
}

/// Name of the embedded table used for a target.
pub fn table_name(spec: &GroupSpec) -> String {
    match spec.q {
        Some(q) => format!("{}(q={q})", spec.regime),
        None => spec.regime.to_string(),
    }
}

/// Expected non-pronormal isomorphism types for a target.
pub fn expected_table(spec: &GroupSpec) -> Result<Vec<Descriptor>> {
    use IsoLabel::*;
    let unknown = || Error::UnknownRegime(spec.label());
    let labels = match (spec.regime, spec.q) {
        (Regime::PhQ2 { n }, _) => (1..n).map(|j| elem_abelian(2, j)).collect(),
        (Regime::PhQ3 { n }, _) => std::iter::once(Cyclic(2)).chain((1..n).map(|j| elem_abelian(3, j))).collect(),
        (Regime::PhPpm3, _) => vec![Cyclic(2)],
        (Regime::PhE, Some(7)) => vec![Cyclic(2)],
        (Regime::PhE, Some(17)) => vec![Cyclic(2), ElemAbelian(2, 2)],
        (Regime::PhE, _) => return Err(unknown()),
        (Regime::NprP2, Some(_)) => {
            let k = valuation(spec.expected_order(), 2);
            (1..=k.saturating_sub(2)).map(|j| IsoLabel::dihedral(1 << j)).collect()
        }
        (Regime::NprP2, None) => return Err(unknown()),
        (Regime::J1, _) => vec![Cyclic(2), ElemAbelian(2, 2)],
        (Regime::SzPrimeExponent { n }, _) => {
            return Ok(vec![Descriptor::TwoGroupExcept(vec![ElemAbelian(2, 2 * n + 1), SylowSz])]);
        }
    };
    Ok(labels.into_iter().map(Descriptor::Label).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub table: String,
    pub expected: Vec<String>,
    #[serde(rename = "match")]
    pub matched: bool,
    pub mismatches: Vec<String>,
}

/// Compares computed verdicts with a table: every non-pronormal class must
/// match a descriptor, no pronormal class may, and every descriptor must be
/// realized by some class.
pub fn compare(table_name: &str, table: &[Descriptor], classes: &[SubgroupClass], verdicts: &[PronormalVerdict]) -> Comparison {
    let mut mismatches = Vec::new();
    let mut hit = vec![false; table.len()];
    for (c, v) in classes.iter().zip(verdicts) {
        let (order, label) = (c.order() as u64, c.fingerprint.label);
        let matching: Vec<usize> = (0..table.len()).filter(|&i| table[i].matches(order, label)).collect();
        match (v.verdict, matching.is_empty()) {
            (Verdict::NotPronormal, true) => {
                mismatches.push(format!("{label} of order {order} is not pronormal but is not in the table"))
            }
            (Verdict::Pronormal, false) => {
                mismatches.push(format!("{label} of order {order} is in the table but was found pronormal"))
            }
            (Verdict::NotPronormal, false) => matching.iter().for_each(|&i| hit[i] = true),
            (Verdict::Pronormal, true) => {}
        }
    }
    for (d, h) in table.iter().zip(&hit) {
        if !h {
            mismatches.push(format!("no non-pronormal class realizes {d}"));
        }
    }
    Comparison {
        table: table_name.to_string(),
        expected: table.iter().map(|d| d.to_string()).collect(),
        matched: mismatches.is_empty(),
        mismatches,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.to_string(), passed, detail: detail.into() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupIdentity {
    pub family: Family,
    pub q: Option<u64>,
    pub order: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub order: usize,
    pub label: String,
    pub class_size: usize,
    pub generators: Vec<ElemId>,
    pub verdict: Verdict,
    pub method: Method,
    pub witness: Option<Witness>,
    pub witness_verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeetSummary {
    pub source: String,
    pub h: String,
    pub h_order: usize,
    pub k: String,
    pub k_order: usize,
    pub intersection: String,
    pub intersection_order: usize,
    pub conjugator: ElemId,
    pub conjugator_word: Vec<u8>,
    pub h_pronormal: bool,
    pub k_pronormal: bool,
    pub intersection_pronormal: bool,
    pub counterexample: bool,
}

impl MeetSummary {
    fn new(g: &FiniteGroup, source: &str, m: &MeetCounterexample) -> Self {
        let [h, k, i] = counterexample_labels(g, m);
        MeetSummary {
            source: source.to_string(),
            h: h.to_string(),
            h_order: m.h.order(),
            k: k.to_string(),
            k_order: m.k.order(),
            intersection: i.to_string(),
            intersection_order: m.intersection.order(),
            conjugator: m.conjugator,
            conjugator_word: g.word(m.conjugator).letters().to_vec(),
            h_pronormal: m.h_pronormal,
            k_pronormal: m.k_pronormal,
            intersection_pronormal: m.intersection_pronormal,
            counterexample: m.is_counterexample(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LatticeResults {
    /// Size of the expanded pronormal family; absent in targeted mode.
    pub family_size: Option<usize>,
    pub join_closed: Option<bool>,
    pub join_failure: Option<[String; 2]>,
    pub meet_counterexample: Option<MeetSummary>,
    pub meet_scan: Option<MeetSummary>,
    pub lattice_verified: Option<bool>,
    pub lattice: Option<LatticeReport>,
    pub failures: Vec<String>,
}

impl LatticeResults {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.join_closed != Some(false)
            && self.lattice_verified != Some(false)
            && self.meet_counterexample.as_ref().is_some_and(|m| m.counterexample)
            && self.meet_scan.as_ref().is_none_or(|m| m.counterexample)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetReport {
    pub group: GroupIdentity,
    pub regime: String,
    pub mode: TargetMode,
    pub classes: Vec<ClassReport>,
    pub non_pronormal: Vec<String>,
    pub comparison: Option<Comparison>,
    pub checks: Vec<Check>,
    pub lattice: Option<LatticeResults>,
    pub identities: Vec<IdentityCheck>,
}

impl TargetReport {
    pub fn passed(&self) -> bool {
        self.comparison.as_ref().is_none_or(|c| c.matched)
            && self.checks.iter().all(|c| c.passed)
            && self.lattice.as_ref().is_none_or(|l| l.passed())
            && self.identities.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageTiming {
    pub target: String,
    pub stage: String,
    pub seconds: f64,
    pub budget_seconds: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timing {
    pub stages: Vec<StageTiming>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub version: u32,
    pub targets: Vec<TargetReport>,
    pub timing: Timing,
}

#[derive(Serialize)]
struct ReportBody<'a> {
    version: u32,
    targets: &'a [TargetReport],
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.targets.iter().all(|t| t.passed())
    }

    /// 0 when every target passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON without the timing block; equal configurations give equal output.
    pub fn to_json_without_timing(&self) -> String {
        serde_json::to_string_pretty(&ReportBody { version: self.version, targets: &self.targets })
            .expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for t in &self.targets {
            write_target_text(&mut s, t);
        }
        for w in &self.timing.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        let _ = writeln!(s, "overall: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_meet(s: &mut String, m: &MeetSummary) {
    let _ = writeln!(
        s,
        "  meet counterexample ({}): {} and {} are {}pronormal, intersection {} is {}pronormal",
        m.source,
        m.h,
        m.k,
        if m.h_pronormal && m.k_pronormal { "" } else { "not all " },
        m.intersection,
        if m.intersection_pronormal { "" } else { "not " },
    );
}

fn write_target_text(s: &mut String, t: &TargetReport) {
    let _ = writeln!(s, "== {} [{}, {}] order {}", t.group.label, t.regime, t.mode, t.group.order);
    if !t.classes.is_empty() {
        let _ = writeln!(s, "  classes: {}", t.classes.len());
        let list = if t.non_pronormal.is_empty() { "none".to_string() } else { t.non_pronormal.join(", ") };
        let _ = writeln!(s, "  non-pronormal classes: {list}");
    }
    if let Some(c) = &t.comparison {
        let _ = writeln!(s, "  expected non-pronormal ({}): {}", c.table, c.expected.join(", "));
        let _ = writeln!(s, "  table comparison: {}", if c.matched { "match" } else { "MISMATCH" });
        for m in &c.mismatches {
            let _ = writeln!(s, "    - {m}");
        }
    }
    for c in &t.checks {
        let _ = writeln!(s, "  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    if let Some(l) = &t.lattice {
        if let Some(n) = l.family_size {
            let _ = writeln!(s, "  pronormal family: {n} subgroups");
        }
        if let Some(j) = l.join_closed {
            let _ = writeln!(s, "  join closed: {}", yes_no(j));
        }
        if let Some([a, b]) = &l.join_failure {
            let _ = writeln!(s, "    join of {a} and {b} is not pronormal");
        }
        if let Some(m) = &l.meet_scan {
            write_meet(s, m);
        }
        if let Some(m) = &l.meet_counterexample {
            write_meet(s, m);
        }
        if let Some(v) = l.lattice_verified {
            let _ = writeln!(s, "  lattice axioms with the repaired meet: {}", yes_no(v));
        }
        for f in &l.failures {
            let _ = writeln!(s, "  [FAIL] {f}");
        }
    }
    for c in &t.identities {
        let _ = writeln!(s, "  [{}] {} ({} cases)", if c.passed { "ok" } else { "FAIL" }, c.name, c.cases);
    }
    let _ = writeln!(s, "  result: {}", if t.passed() { "PASS" } else { "FAIL" });
}

/// Prime divisors of `n` in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Classes for targeted mode: every cyclic class, cyclic extensions up to
/// `bound`, normalizers of the cyclic classes, every Sylow subgroup with its
/// normalizer, and every subgroup of each Sylow subgroup.
pub fn targeted_classes(g: &FiniteGroup, bound: usize) -> Result<Vec<SubgroupClass>> {
    let mut reg = ClassRegistry::new();
    reg.insert(g, g.trivial_subgroup());
    cyclic_classes(g, &mut reg, g.order());
    let cyclic: Vec<Subgroup> = reg.classes()[1..].iter().map(|c| c.representative.clone()).collect();
    extend_classes(g, &mut reg, bound)?;
    for c in &cyclic {
        reg.insert(g, normalizer(g, c)?);
    }
    for p in prime_divisors(g.order() as u64) {
        let s = sylow(g, p)?;
        reg.insert(g, normalizer(g, &s)?);
        for h in all_subgroups_of(g, &s)? {
            reg.insert(g, h);
        }
    }
    let mut classes = reg.into_classes();
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
}

struct Built {
    group: FiniteGroup,
    field: Option<Arc<FieldCtx>>,
    suzuki: Option<SuzukiModel>,
}

fn build(spec: &GroupSpec, j1_path: Option<&PathBuf>) -> Result<Built> {
    match (spec.family, spec.q) {
        (Family::Psl2, Some(q)) => {
            let f = Arc::new(field_of_order(q)?);
            Ok(Built { group: build_psl2(f.clone())?, field: Some(f), suzuki: None })
        }
        (Family::Sz, Some(q)) => {
            let f = Arc::new(field_of_order(q)?);
            let model = SuzukiModel::new(f.clone())?;
            Ok(Built { group: build_sz(f.clone())?, field: Some(f), suzuki: Some(model) })
        }
        (Family::J1, _) => {
            let path = j1_path.ok_or_else(|| Error::InvalidInput("the J1 target needs a generator file".into()))?;
            Ok(Built { group: load_j1(path)?, field: None, suzuki: None })
        }
        _ => Err(Error::InvalidInput(format!("{} needs a value of q", spec.label()))),
    }
}

fn describe(g: &FiniteGroup, h: &Subgroup) -> String {
    format!("{} of order {}", crate::builders::fingerprint(g, h).label, h.order())
}

/// Cyclic classes of order above 2 that the table does not list must be
/// pronormal.
fn pronormal_cyclic_check(spec: &GroupSpec, classes: &[SubgroupClass], verdicts: &[PronormalVerdict]) -> Result<Check> {
    let table = expected_table(spec)?;
    let mut orders = Vec::new();
    let mut bad = Vec::new();
    for (c, v) in classes.iter().zip(verdicts) {
        let label = c.fingerprint.label;
        let listed = table.iter().any(|d| d.matches(c.order() as u64, label));
        if matches!(label, IsoLabel::Cyclic(d) if d > 2) && !listed {
            orders.push(c.order());
            if !v.is_pronormal() {
                bad.push(c.order());
            }
        }
    }
    orders.sort_unstable();
    orders.dedup();
    let detail = if bad.is_empty() {
        format!("orders {orders:?}")
    } else {
        format!("not pronormal: orders {bad:?}")
    };
    Ok(check("cyclic subgroups of order > 2 pronormal", bad.is_empty() && !orders.is_empty(), detail))
}

fn family_checks(
    spec: &GroupSpec,
    built: &Built,
    classes: &[SubgroupClass],
    verdicts: &[PronormalVerdict],
) -> Result<Vec<Check>> {
    let g = &built.group;
    let n = g.order() as u64;
    let mut out = Vec::new();
    match (spec.family, spec.q) {
        (Family::Psl2, Some(q)) => {
            let v2 = valuation(n, 2);
            out.push(check("v2(|G|)", true, v2.to_string()));
            let s2 = sylow(g, 2)?;
            let n2 = normalizer(g, &s2)?;
            let label = crate::builders::fingerprint(g, &n2).label;
            let (ok, want) = if q % 2 == 0 {
                (n2.order() as u64 == q * (q - 1), format!("order {}", q * (q - 1)))
            } else if q % 8 == 1 || q % 8 == 7 {
                (n2 == s2 && label == IsoLabel::dihedral(1 << v2), format!("self-normalizing {}", IsoLabel::dihedral(1 << v2)))
            } else {
                (label == IsoLabel::A4, "A4".to_string())
            };
            out.push(check(
                "Sylow 2-subgroup normalizer",
                ok,
                format!("{label} of order {} (expected {want})", n2.order()),
            ));
            let (p, _) = prime_power(q).ok_or_else(|| Error::InvalidQ(q.to_string()))?;
            let np = normalizer(g, &sylow(g, p)?)?;
            let h = (q - 1) / if q % 2 == 1 { 2 } else { 1 };
            let want = IsoLabel::Frobenius(q, h);
            let got = crate::builders::fingerprint(g, &np).label;
            out.push(check("Sylow p-subgroup normalizer", got == want, format!("{got} (expected {want})")));
            out.push(pronormal_cyclic_check(spec, classes, verdicts)?);
        }
        (Family::Sz, Some(q)) => {
            let model = built.suzuki.as_ref().ok_or_else(|| Error::Internal("missing Suzuki model".into()))?;
            let ids = model
                .sylow_elements()
                .iter()
                .map(|e| g.id_of(e).ok_or_else(|| Error::Internal("M(a,b) outside the group".into())))
                .collect::<Result<Vec<_>>>()?;
            let s = g.subgroup_from_members(ids)?;
            out.push(check(
                "{M(a,b)} is a Sylow 2-subgroup",
                s.order() as u64 == q * q && valuation(n, 2) == 2 * valuation(q, 2),
                format!("order {}", s.order()),
            ));
            let centre = intersect(g, &centralizer(g, &s)?, &s)?;
            let zero = crate::gf::FieldElement::ZERO;
            let mut zs: Vec<ElemId> = model
                .field()
                .elements()
                .map(|b| g.id_of(&model.m(zero, b)).expect("M(0,b) lies in the group"))
                .collect();
            zs.sort_unstable();
            out.push(check(
                "Z(S) = {M(0,b)}",
                centre.members() == zs.as_slice(),
                format!("centre of order {}", centre.order()),
            ));
            let covered = all_subgroups_of(g, &s)?;
            let mut reg = ClassRegistry::new();
            for c in classes {
                reg.insert(g, c.representative.clone());
            }
            let hit: Option<std::collections::BTreeSet<usize>> = covered.iter().map(|h| reg.lookup(h)).collect();
            out.push(check(
                "every subgroup of S classified",
                hit.is_some(),
                match &hit {
                    Some(h) => format!("{} subgroups of S in {} classes", covered.len(), h.len()),
                    None => "some subgroup of S has no class".to_string(),
                },
            ));
            let mut pronormal_two: Vec<String> = classes
                .iter()
                .zip(verdicts)
                .filter(|(c, v)| c.order() > 1 && c.order().is_power_of_two() && v.is_pronormal())
                .map(|(c, _)| format!("{} of order {}", c.fingerprint.label, c.order()))
                .collect();
            pronormal_two.sort();
            let mut want = vec![
                format!("{} of order {q}", IsoLabel::ElemAbelian(2, valuation(q, 2))),
                format!("{} of order {}", IsoLabel::SylowSz, q * q),
            ];
            want.sort();
            out.push(check(
                "pronormal 2-subgroup classes",
                pronormal_two == want,
                pronormal_two.join(", "),
            ));
        }
        (Family::J1, _) => {
            let n2 = normalizer(g, &sylow(g, 2)?)?;
            let label = crate::builders::fingerprint(g, &n2).label;
            out.push(check(
                "Sylow 2-subgroup normalizer",
                n2.order() == 168,
                format!("{label} of order {}", n2.order()),
            ));
            for d in [6u64, 10] {
                let rel: Vec<_> = classes
                    .iter()
                    .zip(verdicts)
                    .filter(|(c, _)| c.fingerprint.label == IsoLabel::Dihedral(d))
                    .collect();
                let ok = !rel.is_empty() && rel.iter().all(|(_, v)| v.is_pronormal() && v.method == Method::Definition);
                out.push(check(
                    &format!("Dihedral({d}) pronormal by the definition oracle"),
                    ok,
                    format!("{} classes", rel.len()),
                ));
            }
            out.push(pronormal_cyclic_check(spec, classes, verdicts)?);
        }
        _ => {}
    }
    Ok(out)
}

fn common_checks(g: &FiniteGroup, spec: &GroupSpec, classes: &[SubgroupClass], verdicts: &[PronormalVerdict]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let want = spec.expected_order();
    out.push(check("group order", g.order() as u64 == want, format!("{} (expected {want})", g.order())));
    let csc_bound = if spec.family == Family::J1 { 19 } else { g.order() };
    let csc = check_csc(g, csc_bound);
    out.push(check(
        "equal-order cyclic subgroups conjugate",
        csc.is_none(),
        match &csc {
            None => format!("orders up to {}", csc_bound.min(g.order())),
            Some((a, b)) => format!("{} and {} are not conjugate", describe(g, a), describe(g, b)),
        },
    ));
    let mut sylow_ok = true;
    for p in prime_divisors(g.order() as u64) {
        let full = p.pow(valuation(g.order() as u64, p)) as usize;
        for (c, v) in classes.iter().zip(verdicts) {
            if c.order() == full && crate::subgroup::p_group_prime(&c.representative) == Some(p) {
                sylow_ok &= v.is_pronormal();
            }
        }
    }
    out.push(check("Sylow subgroups pronormal", sylow_ok, "every Sylow class"));
    let mut cross = 0;
    for v in verdicts {
        if v.method == Method::Both {
            cross += 1;
        }
    }
    out.push(check("definition and Sylow oracles agree", true, format!("{cross} p-subgroup classes cross-checked")));
    Ok(out)
}

fn meet_construction(spec: &GroupSpec, built: &Built) -> Option<MeetConstruction> {
    match (spec.family, spec.q) {
        (Family::Psl2, Some(q)) => Some(MeetConstruction::Psl2 { q }),
        (Family::J1, _) => Some(MeetConstruction::J1),
        (Family::Sz, _) => built.suzuki.as_ref().map(|m| {
            let (m_plus, m_minus) = m.m_pm();
            MeetConstruction::Sz { m_plus, m_minus }
        }),
        _ => None,
    }
}

fn lattice_suite(
    spec: &GroupSpec,
    mode: TargetMode,
    built: &Built,
    classes: &[SubgroupClass],
    verdicts: &[PronormalVerdict],
) -> Result<(LatticeResults, Vec<Check>)> {
    let g = &built.group;
    let mut res = LatticeResults::default();
    let mut checks = Vec::new();
    if mode == TargetMode::Exhaustive {
        let fam = build_family(g, classes, verdicts, Scope::Full)?;
        res.family_size = Some(fam.len());
        let jf = check_join_closed(g, &fam)?;
        res.join_closed = Some(jf.is_none());
        res.join_failure = jf.map(|(a, b)| [describe(g, &a), describe(g, &b)]);
        match find_meet_counterexample_scan(g, &fam) {
            Ok(m) => res.meet_scan = Some(MeetSummary::new(g, "scan", &m)),
            Err(Error::NoneFound(e)) => res.failures.push(format!("meet scan: {e}")),
            Err(e) => return Err(e),
        }
        let lat = verify_lattice(g, &fam)?;
        res.lattice_verified = Some(lat.verified());
        res.lattice = Some(lat);
    }
    if let Some(which) = meet_construction(spec, built) {
        match find_meet_counterexample_targeted(g, which) {
            Ok(m) => res.meet_counterexample = Some(MeetSummary::new(g, "construction", &m)),
            Err(Error::NoneFound(e)) => res.failures.push(format!("meet construction: {e}")),
            Err(e) => return Err(e),
        }
    }
    if spec.family == Family::Sz {
        let sys = SylowSystem::new(g, 2)?;
        let centre = |i: usize| -> Result<Subgroup> {
            let s = sys.sylow(i);
            intersect(g, &centralizer(g, s)?, s)
        };
        let (z0, z1) = (centre(0)?, centre(1)?);
        let j = join(g, &z0, &z1)?;
        checks.push(check(
            "join of two Sylow centres is G",
            j.order() == g.order(),
            format!("join has order {}", j.order()),
        ));
    }
    Ok((res, checks))
}

fn identities_suite(built: &Built) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    if let Some(f) = &built.field {
        out.extend(field_axioms(f));
    }
    if let Some(m) = &built.suzuki {
        out.extend(suzuki_identities(m));
    }
    out
}

const STAGES: [(&str, f64); 5] =
    [("build", 0.2), ("classes", 0.3), ("classify", 0.3), ("lattice", 0.2), ("identities", 0.1)];

fn target_budget(spec: &GroupSpec) -> f64 {
    match (spec.family, spec.q) {
        (Family::Psl2, Some(7)) => 60.0,
        (Family::Psl2, Some(8)) => 300.0,
        (Family::Psl2, _) => 600.0,
        (Family::Sz, _) => 900.0,
        (Family::J1, _) => 2700.0,
    }
}

struct Timer<'a> {
    target: String,
    total: f64,
    uniform: Option<Duration>,
    timing: &'a mut Timing,
}

impl Timer<'_> {
    fn stage<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        let seconds = start.elapsed().as_secs_f64();
        let share = STAGES.iter().find(|(s, _)| *s == stage).map_or(1.0, |(_, w)| *w);
        let budget = self.uniform.map_or(self.total * share, |d| d.as_secs_f64());
        if seconds > 2.0 * budget {
            self.timing.warnings.push(format!(
                "{} stage {stage} took {seconds:.1}s, more than twice its budget of {budget:.1}s",
                self.target
            ));
        }
        self.timing.stages.push(StageTiming { target: self.target.clone(), stage: stage.to_string(), seconds, budget_seconds: budget });
        out
    }
}

fn run_target(cfg: &VerifyConfig, t: &TargetConfig, timing: &mut Timing) -> Result<TargetReport> {
    let spec = &t.spec;
    let label = spec.label();
    let mut timer = Timer { target: label.clone(), total: target_budget(spec), uniform: cfg.stage_budget, timing };
    let built = timer.stage("build", || build(spec, cfg.j1_generator_path.as_ref()))?;
    let g = &built.group;
    let mut report = TargetReport {
        group: GroupIdentity { family: spec.family, q: spec.q, order: g.order(), label: label.clone() },
        regime: spec.regime.to_string(),
        mode: t.mode,
        classes: Vec::new(),
        non_pronormal: Vec::new(),
        comparison: None,
        checks: Vec::new(),
        lattice: None,
        identities: Vec::new(),
    };
    if cfg.suite.classify() {
        let classes = timer.stage("classes", || match t.mode {
            TargetMode::Exhaustive => subgroup_classes(g, EnumMode::Exhaustive),
            TargetMode::Targeted => targeted_classes(g, t.bound.unwrap_or_else(|| t.default_bound())),
        })?;
        let verdicts = timer.stage("classify", || {
            classify(g, &classes, &mut SylowCache::new(), ClassifyOptions::default())
        })?;
        for (c, v) in classes.iter().zip(&verdicts) {
            let witness_verified = match &v.witness {
                Some(w) => Some(verify_witness(g, &c.representative, w)?),
                None => None,
            };
            report.classes.push(ClassReport {
                order: c.order(),
                label: c.fingerprint.label.to_string(),
                class_size: c.class_size,
                generators: c.representative.generators().to_vec(),
                verdict: v.verdict,
                method: v.method,
                witness: v.witness.clone(),
                witness_verified,
            });
            if !v.is_pronormal() {
                report.non_pronormal.push(format!("{} (class size {})", c.fingerprint.label, c.class_size));
            }
        }
        let ok = report.classes.iter().all(|c| c.witness_verified != Some(false));
        report.checks.push(check("non-pronormal witnesses verified", ok, "independent closure check"));
        let table = expected_table(spec)?;
        report.comparison = Some(compare(&table_name(spec), &table, &classes, &verdicts));
        report.checks.extend(common_checks(g, spec, &classes, &verdicts)?);
        report.checks.extend(family_checks(spec, &built, &classes, &verdicts)?);
        if cfg.suite.lattice() {
            let (lat, extra) = timer.stage("lattice", || lattice_suite(spec, t.mode, &built, &classes, &verdicts))?;
            report.lattice = Some(lat);
            report.checks.extend(extra);
        }
    }
    if cfg.suite.identities() {
        report.identities = timer.stage("identities", || identities_suite(&built));
    }
    Ok(report)
}

/// Runs every configured target in order and assembles the report.
pub fn run_verification(cfg: &VerifyConfig) -> Result<ClassificationReport> {
    cfg.validate()?;
    let run = || -> Result<ClassificationReport> {
        let mut timing = Timing::default();
        let mut targets = Vec::new();
        for t in &cfg.targets {
            targets.push(run_target(cfg, t, &mut timing).map_err(|e| e.in_target(&t.spec.label()))?);
        }
        Ok(ClassificationReport { version: REPORT_VERSION, targets, timing })
    };
    match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(spec: &GroupSpec) -> Vec<String> {
        expected_table(spec).unwrap().iter().map(|d| d.to_string()).collect()
    }

    #[test]
    fn tables() {
        assert_eq!(labels(&GroupSpec::psl2(8).unwrap()), ["Cyclic(2)", "ElemAbelian(2,2)"]);
        assert_eq!(labels(&GroupSpec::psl2(17).unwrap()), ["Cyclic(2)", "ElemAbelian(2,2)"]);
        assert_eq!(labels(&GroupSpec::psl2(7).unwrap()), ["Cyclic(2)"]);
        assert_eq!(labels(&GroupSpec::psl2(27).unwrap()), ["Cyclic(2)", "Cyclic(3)", "ElemAbelian(3,2)"]);
        assert_eq!(labels(&GroupSpec::psl2(31).unwrap()), ["Cyclic(2)", "ElemAbelian(2,2)", "Dihedral(8)"]);
        assert_eq!(labels(&GroupSpec::psl2(19).unwrap()), ["Cyclic(2)"]);
        assert_eq!(labels(&GroupSpec::psl2(32).unwrap()).len(), 4);
        assert_eq!(labels(&GroupSpec::j1()), ["Cyclic(2)", "ElemAbelian(2,2)"]);
        let sz = expected_table(&GroupSpec::sz(8).unwrap()).unwrap();
        assert_eq!(sz, vec![Descriptor::TwoGroupExcept(vec![IsoLabel::ElemAbelian(2, 3), IsoLabel::SylowSz])]);
        assert!(sz[0].matches(16, IsoLabel::Other(1)));
        assert!(!sz[0].matches(8, IsoLabel::ElemAbelian(2, 3)));
        assert!(!sz[0].matches(5, IsoLabel::Cyclic(5)));
    }

    #[test]
    fn config_validation() {
        let big = TargetConfig::new(GroupSpec::psl2(31).unwrap(), TargetMode::Exhaustive);
        assert!(matches!(VerifyConfig::new(vec![big]).validate(), Err(Error::InvalidInput(_))));
        let j1 = TargetConfig::new(GroupSpec::j1(), TargetMode::Targeted);
        assert!(matches!(VerifyConfig::new(vec![j1]).validate(), Err(Error::InvalidInput(_))));
        assert!(VerifyConfig::new(vec![]).validate().is_err());
    }

    #[test]
    fn comparison_reports_both_directions() {
        let g = build_psl2(Arc::new(field_of_order(7).unwrap())).unwrap();
        let classes = subgroup_classes(&g, EnumMode::Exhaustive).unwrap();
        let verdicts = classify(&g, &classes, &mut SylowCache::new(), ClassifyOptions::default()).unwrap();
        let good = compare("t", &expected_table(&GroupSpec::psl2(7).unwrap()).unwrap(), &classes, &verdicts);
        assert!(good.matched, "{:?}", good.mismatches);
        let wrong = vec![Descriptor::Label(IsoLabel::Cyclic(3)), Descriptor::Label(IsoLabel::A5)];
        let bad = compare("t", &wrong, &classes, &verdicts);
        assert!(!bad.matched);
        assert_eq!(bad.mismatches.len(), 4);
    }

    #[test]
    fn psl27_pipeline() {
        let cfg = VerifyConfig::new(vec![TargetConfig::new(GroupSpec::psl2(7).unwrap(), TargetMode::Exhaustive)]);
        let r = run_verification(&cfg).unwrap();
        let t = &r.targets[0];
        assert!(t.passed(), "{}", r.to_text());
        assert_eq!(t.non_pronormal, ["Cyclic(2) (class size 21)"]);
        let lat = t.lattice.as_ref().unwrap();
        assert_eq!(lat.join_closed, Some(true));
        assert_eq!(lat.meet_counterexample.as_ref().unwrap().intersection_order, 2);
        assert_eq!(r.exit_code(), 0);
        let again = run_verification(&cfg).unwrap();
        assert_eq!(r.to_json_without_timing(), again.to_json_without_timing());
    }
}
