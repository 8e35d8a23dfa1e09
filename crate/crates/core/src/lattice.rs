//! The family of pronormal subgroups: join closure, meet counterexamples and
//! the repaired meet (largest family member inside an intersection).

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::builders::{fingerprint, IsoLabel};
use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup, Subgroup};
use crate::pronormal::{is_pronormal_def, is_pronormal_rose, PronormalVerdict};
use crate::subgroup::{conjugators, intersect, join, normalizer, ConjugacyOrbit, SubgroupClass, EXHAUSTIVE_MAX};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Scope {
    /// Every pronormal subgroup is materialized.
    Full,
    /// Only a per-class membership summary.
    Bounded,
}

/// Class-level membership record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassMembership {
    pub label: IsoLabel,
    pub order: usize,
    pub class_size: usize,
    pub member: bool,
}

pub struct PrnFamily {
    scope: Scope,
    group_order: usize,
    members: Vec<Subgroup>,
    masks: Vec<FixedBitSet>,
    index: HashMap<Vec<ElemId>, usize>,
    summary: Vec<ClassMembership>,
}

fn mask_of(n: usize, h: &Subgroup) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(n);
    h.members().iter().for_each(|&x| m.insert(x as usize));
    m
}

impl PrnFamily {
    /// Family from explicit member subgroups, e.g. test fixtures.
    pub fn from_members(g: &FiniteGroup, mut members: Vec<Subgroup>) -> PrnFamily {
        members.sort();
        members.dedup();
        let masks = members.iter().map(|h| mask_of(g.order(), h)).collect();
        let index = members.iter().enumerate().map(|(i, h)| (h.members().to_vec(), i)).collect();
        PrnFamily { scope: Scope::Full, group_order: g.order(), members, masks, index, summary: Vec::new() }
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn summary(&self) -> &[ClassMembership] {
        &self.summary
    }

    pub fn contains(&self, h: &Subgroup) -> bool {
        self.index.contains_key(h.members())
    }

    pub fn position(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h.members()).copied()
    }

    /// Removes one member, for building broken fixtures.
    pub fn without(mut self, g: &FiniteGroup, h: &Subgroup) -> PrnFamily {
        self.members.retain(|m| m != h);
        let summary = std::mem::take(&mut self.summary);
        let mut f = PrnFamily::from_members(g, self.members);
        f.summary = summary;
        f
    }

    fn require_full(&self) -> Result<()> {
        if self.scope != Scope::Full {
            return Err(Error::ScopeExceeded("operation needs the full family".into()));
        }
        Ok(())
    }
}

/// Expands the pronormal classes into a family. Full scope needs
/// |G| <= [`EXHAUSTIVE_MAX`]; bounded scope keeps class flags only, with the
/// trivial subgroup always a member.
pub fn build_family(
    g: &FiniteGroup,
    classes: &[SubgroupClass],
    verdicts: &[PronormalVerdict],
    scope: Scope,
) -> Result<PrnFamily> {
    if classes.len() != verdicts.len() {
        return Err(Error::InvalidInput("one verdict per class is required".into()));
    }
    let summary: Vec<ClassMembership> = classes
        .iter()
        .zip(verdicts)
        .map(|(c, v)| ClassMembership {
            label: c.fingerprint.label,
            order: c.order(),
            class_size: c.class_size,
            member: v.is_pronormal(),
        })
        .collect();
    match scope {
        Scope::Full => {
            if g.order() > EXHAUSTIVE_MAX {
                return Err(Error::ScopeExceeded(format!(
                    "full family needs |G| <= {EXHAUSTIVE_MAX}, got {}",
                    g.order()
                )));
            }
            let mut members = Vec::new();
            for (c, v) in classes.iter().zip(verdicts) {
                if v.is_pronormal() {
                    members.extend(ConjugacyOrbit::new(g, &c.representative).conjugates);
                }
            }
            let mut fam = PrnFamily::from_members(g, members);
            fam.summary = summary;
            Ok(fam)
        }
        Scope::Bounded => {
            let trivial = g.trivial_subgroup();
            let index = std::iter::once((trivial.members().to_vec(), 0)).collect();
            Ok(PrnFamily {
                scope: Scope::Bounded,
                group_order: g.order(),
                masks: vec![mask_of(g.order(), &trivial)],
                members: vec![trivial],
                index,
                summary,
            })
        }
    }
}

/// First pair `(i, j)`, `i < j`, whose join is not a member.
pub fn check_join_closed(g: &FiniteGroup, fam: &PrnFamily) -> Result<Option<(Subgroup, Subgroup)>> {
    fam.require_full()?;
    let n = fam.len();
    let found = (0..n)
        .into_par_iter()
        .map(|i| -> Result<Option<usize>> {
            for j in i + 1..n {
                let jn = join(g, &fam.members[i], &fam.members[j])?;
                if !fam.contains(&jn) {
                    return Ok(Some(j));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found
        .into_iter()
        .enumerate()
        .find_map(|(i, j)| j.map(|j| (fam.members[i].clone(), fam.members[j].clone()))))
}

fn meet_index(fam: &PrnFamily, inter: &FixedBitSet, describe: impl Fn() -> String) -> Result<usize> {
    let candidates: Vec<usize> = (0..fam.len()).filter(|&i| fam.masks[i].is_subset(inter)).collect();
    let &top = candidates
        .iter()
        .max_by_key(|&&i| (fam.members[i].order(), std::cmp::Reverse(i)))
        .ok_or_else(|| Error::Internal("no family member below an intersection".into()))?;
    if let Some(&other) = candidates.iter().find(|&&i| !fam.masks[i].is_subset(&fam.masks[top])) {
        return Err(Error::UniquenessViolation(format!(
            "{}: members of orders {} and {} are both maximal",
            describe(),
            fam.members[top].order(),
            fam.members[other].order()
        )));
    }
    Ok(top)
}

/// Largest family member contained in `h ∩ k`.
pub fn prn_meet(fam: &PrnFamily, h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    fam.require_full()?;
    let mut inter = mask_of(fam.group_order, h);
    inter.intersect_with(&mask_of(fam.group_order, k));
    let i = meet_index(fam, &inter, || format!("meet of orders {} and {}", h.order(), k.order()))?;
    Ok(fam.members[i].clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub members: usize,
    pub pairs: usize,
    pub join_closed: bool,
    pub join_is_lub: bool,
    pub meet_is_glb: bool,
    pub absorption: bool,
}

impl LatticeReport {
    pub fn verified(&self) -> bool {
        self.join_closed && self.join_is_lub && self.meet_is_glb && self.absorption
    }
}

#[derive(Default, Clone, Copy)]
struct PairFlags {
    pairs: usize,
    join_closed: bool,
    lub: bool,
    glb: bool,
    absorption: bool,
}

/// Checks join as least upper bound, the repaired meet as greatest lower
/// bound, and both absorption laws over all unordered member pairs.
pub fn verify_lattice(g: &FiniteGroup, fam: &PrnFamily) -> Result<LatticeReport> {
    fam.require_full()?;
    let n = fam.len();
    let rows = (0..n)
        .into_par_iter()
        .map(|i| -> Result<PairFlags> {
            let mut f = PairFlags { join_closed: true, lub: true, glb: true, absorption: true, pairs: 0 };
            let h = &fam.members[i];
            for j in i..n {
                let k = &fam.members[j];
                f.pairs += 1;
                let jn = join(g, h, k)?;
                let Some(ji) = fam.position(&jn) else {
                    f.join_closed = false;
                    continue;
                };
                // every member above both h and k lies above the join
                f.lub &= (0..n).all(|m| {
                    !(fam.masks[i].is_subset(&fam.masks[m]) && fam.masks[j].is_subset(&fam.masks[m]))
                        || fam.masks[ji].is_subset(&fam.masks[m])
                });
                let mut inter = fam.masks[i].clone();
                inter.intersect_with(&fam.masks[j]);
                let mi = meet_index(fam, &inter, || format!("pair ({i}, {j})"))?;
                f.glb &= fam.masks[mi].is_subset(&fam.masks[i]) && fam.masks[mi].is_subset(&fam.masks[j]);
                // h v (h ^ k) = h and h ^ (h v k) = h
                let a1 = join(g, h, &fam.members[mi])? == *h;
                let mut hj = fam.masks[i].clone();
                hj.intersect_with(&fam.masks[ji]);
                let a2 = meet_index(fam, &hj, || format!("pair ({i}, {ji})"))? == i;
                f.absorption &= a1 && a2;
            }
            Ok(f)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = PairFlags { join_closed: true, lub: true, glb: true, absorption: true, pairs: 0 };
    for r in rows {
        total.pairs += r.pairs;
        total.join_closed &= r.join_closed;
        total.lub &= r.lub;
        total.glb &= r.glb;
        total.absorption &= r.absorption;
    }
    Ok(LatticeReport {
        members: n,
        pairs: total.pairs,
        join_closed: total.join_closed,
        join_is_lub: total.lub,
        meet_is_glb: total.glb,
        absorption: total.absorption,
    })
}

/// Two pronormal subgroups whose intersection is not pronormal.
#[derive(Clone, Debug)]
pub struct MeetCounterexample {
    pub h: Subgroup,
    pub k: Subgroup,
    pub intersection: Subgroup,
    /// Element `g` with the second subgroup equal to `K^g` for the
    /// constructed `K`; identity in scan mode.
    pub conjugator: ElemId,
    pub h_pronormal: bool,
    pub k_pronormal: bool,
    pub intersection_pronormal: bool,
}

impl MeetCounterexample {
    pub fn is_counterexample(&self) -> bool {
        self.h_pronormal && self.k_pronormal && !self.intersection_pronormal
    }
}

/// First member pair (in family order) whose intersection is not a member.
pub fn find_meet_counterexample_scan(g: &FiniteGroup, fam: &PrnFamily) -> Result<MeetCounterexample> {
    fam.require_full()?;
    let n = fam.len();
    let hit = (0..n).into_par_iter().find_map_first(|i| {
        (i + 1..n).find_map(|j| {
            let mut inter = fam.masks[i].clone();
            inter.intersect_with(&fam.masks[j]);
            let members: Vec<ElemId> = inter.ones().map(|x| x as ElemId).collect();
            let found = !fam.index.contains_key(&members);
            found.then_some((i, j))
        })
    });
    let (i, j) = hit.ok_or_else(|| Error::NoneFound("every intersection of members is a member".into()))?;
    let (h, k) = (fam.members[i].clone(), fam.members[j].clone());
    let intersection = intersect(g, &h, &k)?;
    Ok(MeetCounterexample {
        h,
        k,
        intersection,
        conjugator: g.identity(),
        h_pronormal: true,
        k_pronormal: true,
        intersection_pronormal: false,
    })
}

/// Which explicit construction to replay.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeetConstruction {
    /// Dihedral groups over the two tori of PSL(2,q), sharing an involution.
    Psl2 { q: u64 },
    /// D6 and D10 in J1, sharing an involution.
    J1,
    /// The Frobenius groups `Z_{m+} : Z4` and `Z_{m-} : Z4` of Sz(q),
    /// sharing a Z4.
    Sz { m_plus: u64, m_minus: u64 },
}

fn first_of_order(g: &FiniteGroup, d: u64) -> Result<ElemId> {
    g.ids()
        .find(|&x| g.element_order(x) as u64 == d)
        .ok_or_else(|| Error::NoneFound(format!("no element of order {d}")))
}

/// `<a, b>` for the first involution `b` inverting `a`.
fn dihedral_over(g: &FiniteGroup, a: ElemId) -> Result<(Subgroup, Subgroup)> {
    let ai = g.inv(a);
    let n = normalizer(g, &g.cyclic(a))?;
    let b = n
        .members()
        .iter()
        .copied()
        .find(|&b| g.element_order(b) == 2 && g.conj(a, b) == ai)
        .ok_or_else(|| Error::NoneFound(format!("no involution inverting an element of order {}", g.element_order(a))))?;
    Ok((g.generate(&[a, b])?, g.cyclic(b)))
}

/// `N_G(<x>)` with x of order d, and the first cyclic subgroup of order 4.
fn frobenius_over(g: &FiniteGroup, d: u64) -> Result<(Subgroup, Subgroup)> {
    let a = first_of_order(g, d)?;
    let n = normalizer(g, &g.cyclic(a))?;
    let y = n
        .members()
        .iter()
        .copied()
        .find(|&y| g.element_order(y) == 4)
        .ok_or_else(|| Error::NoneFound(format!("N(Z{d}) has no element of order 4")))?;
    Ok((n, g.cyclic(y)))
}

/// Replays an explicit construction: `H ⊇ B`, `K ⊇ Y` with `Y` conjugate
/// to `B`; scans the conjugators `g` with `Y^g = B` for the first one giving
/// `H ∩ K^g = B`, then decides pronormality of `H`, `K^g` and `B`.
pub fn find_meet_counterexample_targeted(g: &FiniteGroup, which: MeetConstruction) -> Result<MeetCounterexample> {
    let ((h, b), (k, y)) = match which {
        MeetConstruction::Psl2 { q } => {
            let o = if q % 2 == 1 { 2 } else { 1 };
            (
                dihedral_over(g, first_of_order(g, (q - 1) / o)?)?,
                dihedral_over(g, first_of_order(g, (q + 1) / o)?)?,
            )
        }
        MeetConstruction::J1 => (
            dihedral_over(g, first_of_order(g, 3)?)?,
            dihedral_over(g, first_of_order(g, 5)?)?,
        ),
        MeetConstruction::Sz { m_plus, m_minus } => (frobenius_over(g, m_plus)?, frobenius_over(g, m_minus)?),
    };
    let candidates = conjugators(g, &y, &b)?;
    if candidates.is_empty() {
        return Err(Error::NoneFound("the shared subgroups are not conjugate".into()));
    }
    for x in candidates {
        let kx = g.conjugate_subgroup(&k, x);
        let inter = intersect(g, &h, &kx)?;
        if inter == b {
            let h_pronormal = is_pronormal_def(g, &h).is_pronormal();
            let k_pronormal = is_pronormal_def(g, &kx).is_pronormal();
            let intersection_pronormal = is_pronormal_rose(g, &inter)?.is_pronormal();
            return Ok(MeetCounterexample {
                h,
                k: kx,
                intersection: inter,
                conjugator: x,
                h_pronormal,
                k_pronormal,
                intersection_pronormal,
            });
        }
    }
    Err(Error::NoneFound(format!(
        "no conjugate of the order-{} subgroup meets the order-{} subgroup in the shared subgroup",
        k.order(),
        h.order()
    )))
}

/// Labels of the three subgroups of a counterexample.
pub fn counterexample_labels(g: &FiniteGroup, m: &MeetCounterexample) -> [IsoLabel; 3] {
    [fingerprint(g, &m.h).label, fingerprint(g, &m.k).label, fingerprint(g, &m.intersection).label]
}
