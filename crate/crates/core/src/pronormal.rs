//! Two independent pronormality oracles and batch classification.
//!
//! The definition oracle works on the conjugacy class of `H`: `H` is
//! pronormal iff for every conjugate `K = H^g` the conjugate `K` lies in the
//! orbit of `H` under conjugation by `<H, K>`. The question depends only on
//! the orbit of `K` under `H`, so one representative per `H`-orbit suffices.
//!
//! The Sylow oracle applies to p-subgroups: `P` is pronormal iff `P` is
//! normal in `N_G(S)` for every Sylow p-subgroup `S` containing `P`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ClosureOutcome, ElemId, FiniteGroup, Subgroup, DEFAULT_BUDGET};
use crate::subgroup::{normalizes, p_group_prime, ClassRegistry, ConjugacyOrbit, SubgroupClass, SylowSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Pronormal,
    NotPronormal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Definition,
    Rose,
    Both,
}

/// Evidence for a non-pronormal verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Witness {
    /// No element of `<H, H^g>` conjugates `H` onto `H^g`.
    Conjugator { g: ElemId, word: Vec<u8> },
    /// `S` is a Sylow subgroup containing `P`, and `n` normalizes `S` but
    /// not `P`.
    Sylow { sylow_generators: Vec<ElemId>, n: ElemId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PronormalVerdict {
    pub verdict: Verdict,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl PronormalVerdict {
    fn pronormal(method: Method) -> Self {
        PronormalVerdict { verdict: Verdict::Pronormal, method, witness: None }
    }

    pub fn is_pronormal(&self) -> bool {
        self.verdict == Verdict::Pronormal
    }
}

/// Definition oracle over a precomputed conjugacy orbit of `h`.
pub fn is_pronormal_def_with(g: &FiniteGroup, h: &Subgroup, orbit: &ConjugacyOrbit) -> PronormalVerdict {
    if orbit.len() == 1 {
        return PronormalVerdict::pronormal(Method::Definition);
    }
    let (_, reps) = orbit.orbits_under(g, h.generators());
    let failing = reps[1..].par_iter().copied().find_first(|&r| {
        let mut gens = h.generators().to_vec();
        gens.extend_from_slice(orbit.conjugates[r].generators());
        !orbit.reachable(g, 0, r, &gens)
    });
    match failing {
        None => PronormalVerdict::pronormal(Method::Definition),
        Some(r) => {
            let x = orbit.transversal[r];
            PronormalVerdict {
                verdict: Verdict::NotPronormal,
                method: Method::Definition,
                witness: Some(Witness::Conjugator { g: x, word: g.word(x).letters().to_vec() }),
            }
        }
    }
}

pub fn is_pronormal_def(g: &FiniteGroup, h: &Subgroup) -> PronormalVerdict {
    is_pronormal_def_with(g, h, &ConjugacyOrbit::new(g, h))
}

/// Sylow-normalizer oracle against a prebuilt Sylow system.
pub fn is_pronormal_rose_with(g: &FiniteGroup, p_sub: &Subgroup, sys: &SylowSystem) -> Result<PronormalVerdict> {
    if p_sub.is_trivial() {
        return Ok(PronormalVerdict::pronormal(Method::Rose));
    }
    if p_group_prime(p_sub) != Some(sys.p) {
        return Err(Error::NotPGroup(p_sub.order()));
    }
    let containing = sys.containing(p_sub);
    if containing.is_empty() {
        return Err(Error::Internal("p-subgroup lies in no Sylow subgroup".into()));
    }
    let failing = containing.par_iter().find_map_first(|&i| {
        sys.normalizer_generators(g, i)
            .into_iter()
            .find(|&n| !normalizes(g, p_sub, n))
            .map(|n| (i, n))
    });
    Ok(match failing {
        None => PronormalVerdict::pronormal(Method::Rose),
        Some((i, n)) => PronormalVerdict {
            verdict: Verdict::NotPronormal,
            method: Method::Rose,
            witness: Some(Witness::Sylow { sylow_generators: sys.sylow(i).generators().to_vec(), n }),
        },
    })
}

pub fn is_pronormal_rose(g: &FiniteGroup, p_sub: &Subgroup) -> Result<PronormalVerdict> {
    if p_sub.is_trivial() {
        return Ok(PronormalVerdict::pronormal(Method::Rose));
    }
    let p = p_group_prime(p_sub).ok_or(Error::NotPGroup(p_sub.order()))?;
    let sys = SylowSystem::new(g, p)?;
    is_pronormal_rose_with(g, p_sub, &sys)
}

/// Sylow systems built on first use, one per prime.
#[derive(Default)]
pub struct SylowCache {
    systems: HashMap<u64, SylowSystem>,
}

impl SylowCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, g: &FiniteGroup, p: u64) -> Result<&SylowSystem> {
        match self.systems.entry(p) {
            std::collections::hash_map::Entry::Occupied(e) => Ok(e.into_mut()),
            std::collections::hash_map::Entry::Vacant(e) => Ok(e.insert(SylowSystem::new(g, p)?)),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    /// Also run the definition oracle on p-subgroup classes and require
    /// agreement.
    pub cross_validate: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { cross_validate: true }
    }
}

fn describe(class: &SubgroupClass) -> String {
    format!("{} of order {}", class.fingerprint.label, class.order())
}

/// One verdict per class: the Sylow oracle for p-groups (cross-checked by the
/// definition oracle when requested), the definition oracle otherwise.
pub fn classify(
    g: &FiniteGroup,
    classes: &[SubgroupClass],
    cache: &mut SylowCache,
    opts: ClassifyOptions,
) -> Result<Vec<PronormalVerdict>> {
    let mut out = Vec::with_capacity(classes.len());
    for class in classes {
        let h = &class.representative;
        let verdict = match p_group_prime(h) {
            Some(p) if !h.is_trivial() => {
                let rose = is_pronormal_rose_with(g, h, cache.get(g, p)?)?;
                if opts.cross_validate {
                    let def = is_pronormal_def(g, h);
                    if def.verdict != rose.verdict {
                        return Err(Error::OracleDisagreement(describe(class)));
                    }
                    PronormalVerdict { method: Method::Both, ..rose }
                } else {
                    rose
                }
            }
            _ => is_pronormal_def(g, h),
        };
        out.push(verdict);
    }
    Ok(out)
}

/// Independent check of a non-pronormal witness by explicit closure.
pub fn verify_witness(g: &FiniteGroup, h: &Subgroup, w: &Witness) -> Result<bool> {
    match w {
        Witness::Conjugator { g: x, .. } => {
            let k = g.conjugate_subgroup(h, *x);
            let mut gens = h.generators().to_vec();
            gens.extend_from_slice(k.generators());
            let hit = g.closure_search(&gens, DEFAULT_BUDGET, |y| {
                h.generators().iter().all(|&a| k.contains(g.conj(a, y)))
            })?;
            Ok(matches!(hit, ClosureOutcome::Complete(_)))
        }
        Witness::Sylow { sylow_generators, n } => {
            let s = g.generate(sylow_generators)?;
            let p = match p_group_prime(&s) {
                Some(p) => p,
                None => return Ok(false),
            };
            let full = p.pow(crate::subgroup::valuation(g.order() as u64, p)) as usize;
            Ok(s.order() == full && h.is_subgroup_of(&s) && normalizes(g, &s, *n) && !normalizes(g, h, *n))
        }
    }
}

/// Checks that cyclic subgroups of equal order (up to `max_order`) form a
/// single conjugacy class; returns a non-conjugate pair otherwise.
pub fn check_csc(g: &FiniteGroup, max_order: usize) -> Option<(Subgroup, Subgroup)> {
    let mut registry = ClassRegistry::new();
    let mut first_by_order: HashMap<usize, usize> = HashMap::new();
    for class in crate::subgroup::element_classes(g) {
        let x = class[0];
        if g.element_order(x) as usize > max_order {
            continue;
        }
        let c = g.cyclic(x);
        let (id, _) = registry.insert(g, c);
        let first = *first_by_order.entry(registry.classes()[id].order()).or_insert(id);
        if first != id {
            let cl = registry.classes();
            return Some((cl[first].representative.clone(), cl[id].representative.clone()));
        }
    }
    None
}
