//! Centralizers, normalizers, Sylow subgroups, conjugacy of subgroups and
//! enumeration of subgroup classes by cyclic extension.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::builders::{fingerprint, IsoFingerprint};
use crate::error::{Error, Result};
use crate::gf::{is_prime, prime_power};
use crate::group::{ElemId, FiniteGroup, Subgroup};

pub fn centralizer(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    let gens = h.generators();
    if gens.is_empty() {
        return Ok(g.whole());
    }
    let members: Vec<ElemId> = g
        .ids()
        .into_par_iter()
        .filter(|&x| gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .collect();
    from_scan(g, members)
}

/// Whether `x` normalizes `h`.
pub fn normalizes(g: &FiniteGroup, h: &Subgroup, x: ElemId) -> bool {
    let w = g.word(x);
    h.generators().iter().all(|&y| {
        let c = if g.has_cayley_table() { g.conj(y, x) } else { g.conj_by_word(y, &w) };
        h.contains(c)
    })
}

pub fn is_normal_in(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> bool {
    k.generators().iter().all(|&x| normalizes(g, h, x))
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    if h.generators().is_empty() {
        return Ok(g.whole());
    }
    let members: Vec<ElemId> = g.ids().into_par_iter().filter(|&x| normalizes(g, h, x)).collect();
    from_scan(g, members)
}

fn from_scan(g: &FiniteGroup, members: Vec<ElemId>) -> Result<Subgroup> {
    if members.len() == g.order() {
        Ok(g.whole())
    } else {
        g.subgroup_from_members(members)
    }
}

/// `v_p(n)`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

fn is_p_power(n: u64, p: u64) -> bool {
    n == 1 || matches!(prime_power(n), Some((r, _)) if r == p)
}

/// A Sylow p-subgroup, grown from the first element of order p by adjoining
/// p-elements of successive normalizers.
pub fn sylow(g: &FiniteGroup, p: u64) -> Result<Subgroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = g.order() as u64;
    if n % p != 0 {
        return Err(Error::PNotDividing(p));
    }
    let target = p.pow(valuation(n, p)) as usize;
    let first = g
        .ids()
        .find(|&x| g.element_order(x) as u64 == p)
        .ok_or_else(|| Error::Internal(format!("no element of order {p}")))?;
    let mut cur = g.cyclic(first);
    while cur.order() < target {
        let norm = normalizer(g, &cur)?;
        let y = norm
            .members()
            .iter()
            .copied()
            .find(|&y| !cur.contains(y) && is_p_power(g.element_order(y) as u64, p))
            .ok_or_else(|| Error::Internal("p-subgroup is self-normalizing below Sylow order".into()))?;
        let mut gens = cur.generators().to_vec();
        gens.push(y);
        cur = g.generate(&gens)?;
    }
    Ok(cur)
}

/// Prime p when `h` is a nontrivial p-group.
pub fn p_group_prime(h: &Subgroup) -> Option<u64> {
    prime_power(h.order() as u64).map(|(p, _)| p)
}

/// All conjugates of a subgroup, each with an element conjugating the
/// original onto it, in breadth-first order over the generators.
pub struct ConjugacyOrbit {
    pub conjugates: Vec<Subgroup>,
    pub transversal: Vec<ElemId>,
    index: HashMap<Vec<ElemId>, u32>,
    /// `action[k][i]`: index of conjugate i conjugated by letter k.
    action: Vec<Vec<u32>>,
}

impl ConjugacyOrbit {
    pub fn new(g: &FiniteGroup, h: &Subgroup) -> ConjugacyOrbit {
        let letters = g.letter_count();
        let mut conjugates = vec![h.clone()];
        let mut transversal = vec![g.identity()];
        let mut index = HashMap::new();
        index.insert(h.members().to_vec(), 0u32);
        let mut action: Vec<Vec<u32>> = vec![Vec::new(); letters];
        let mut i = 0;
        while i < conjugates.len() {
            for (k, row) in action.iter_mut().enumerate() {
                let c = g.conjugate_subgroup_letter(&conjugates[i], k);
                let j = match index.get(c.members()) {
                    Some(&j) => j,
                    None => {
                        let j = conjugates.len() as u32;
                        index.insert(c.members().to_vec(), j);
                        transversal.push(g.mul_letter(transversal[i], k));
                        conjugates.push(c);
                        j
                    }
                };
                row.push(j);
            }
            i += 1;
        }
        ConjugacyOrbit { conjugates, transversal, index, action }
    }

    pub fn len(&self) -> usize {
        self.conjugates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conjugates.is_empty()
    }

    pub fn position(&self, k: &Subgroup) -> Option<usize> {
        self.index.get(k.members()).map(|&i| i as usize)
    }

    /// Index of conjugate `i` conjugated by `x`.
    pub fn act(&self, g: &FiniteGroup, i: usize, x: ElemId) -> usize {
        g.word(x)
            .letters()
            .iter()
            .fold(i as u32, |acc, &k| self.action[k as usize][acc as usize]) as usize
    }

    /// Orbits of the conjugates under conjugation by `gens`; returns the
    /// orbit id of every conjugate and the least index in every orbit.
    pub fn orbits_under(&self, g: &FiniteGroup, gens: &[ElemId]) -> (Vec<u32>, Vec<usize>) {
        let words: Vec<_> = gens.iter().map(|&x| g.word(x)).collect();
        let n = self.len();
        let mut orbit = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if orbit[start] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(start);
            orbit[start] = id;
            stack.push(start);
            while let Some(i) = stack.pop() {
                for w in &words {
                    let j = w
                        .letters()
                        .iter()
                        .fold(i as u32, |acc, &k| self.action[k as usize][acc as usize])
                        as usize;
                    if orbit[j] == u32::MAX {
                        orbit[j] = id;
                        stack.push(j);
                    }
                }
            }
        }
        (orbit, reps)
    }

    /// Whether conjugate `target` is reachable from conjugate `from` under
    /// the group generated by `gens`.
    pub fn reachable(&self, g: &FiniteGroup, from: usize, target: usize, gens: &[ElemId]) -> bool {
        if from == target {
            return true;
        }
        let words: Vec<_> = gens.iter().map(|&x| g.word(x)).collect();
        let mut seen = FixedBitSet::with_capacity(self.len());
        seen.insert(from);
        let mut stack = vec![from as u32];
        while let Some(i) = stack.pop() {
            for w in &words {
                let j = w
                    .letters()
                    .iter()
                    .fold(i, |acc, &k| self.action[k as usize][acc as usize]);
                if j as usize == target {
                    return true;
                }
                if !seen.put(j as usize) {
                    stack.push(j);
                }
            }
        }
        false
    }
}

/// All Sylow p-subgroups with their normalizers, as one conjugacy orbit.
pub struct SylowSystem {
    pub p: u64,
    pub orbit: ConjugacyOrbit,
    normalizer: Subgroup,
    masks: Vec<FixedBitSet>,
}

impl SylowSystem {
    pub fn new(g: &FiniteGroup, p: u64) -> Result<SylowSystem> {
        let s = sylow(g, p)?;
        let normalizer = normalizer(g, &s)?;
        let orbit = ConjugacyOrbit::new(g, &s);
        let masks = orbit
            .conjugates
            .iter()
            .map(|c| {
                let mut m = FixedBitSet::with_capacity(g.order());
                c.members().iter().for_each(|&x| m.insert(x as usize));
                m
            })
            .collect();
        Ok(SylowSystem { p, orbit, normalizer, masks })
    }

    pub fn count(&self) -> usize {
        self.orbit.len()
    }

    pub fn sylow(&self, i: usize) -> &Subgroup {
        &self.orbit.conjugates[i]
    }

    pub fn base_normalizer(&self) -> &Subgroup {
        &self.normalizer
    }

    /// Generators of `N_G(S_i)`, transported from the base normalizer.
    pub fn normalizer_generators(&self, g: &FiniteGroup, i: usize) -> Vec<ElemId> {
        let t = self.orbit.transversal[i];
        self.normalizer.generators().iter().map(|&x| g.conj(x, t)).collect()
    }

    pub fn normalizer_of(&self, g: &FiniteGroup, i: usize) -> Subgroup {
        g.conjugate_subgroup(&self.normalizer, self.orbit.transversal[i])
    }

    /// Indices of the Sylow subgroups containing `h`.
    pub fn containing(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.count())
            .filter(|&i| h.members().iter().all(|&x| self.masks[i].contains(x as usize)))
            .collect()
    }
}

pub fn all_sylows_containing(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    let p = p_group_prime(h).ok_or(Error::NotPGroup(h.order()))?;
    let sys = SylowSystem::new(g, p)?;
    Ok(sys.containing(h).into_iter().map(|i| sys.sylow(i).clone()).collect())
}

pub fn join(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    if k.is_subgroup_of(h) {
        return Ok(h.clone());
    }
    if h.is_subgroup_of(k) {
        return Ok(k.clone());
    }
    let mut gens = h.generators().to_vec();
    gens.extend_from_slice(k.generators());
    g.generate(&gens)
}

pub fn intersect(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    let (a, b) = (h.members(), k.members());
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    if out.len() == h.order() {
        return Ok(h.clone());
    }
    if out.len() == k.order() {
        return Ok(k.clone());
    }
    g.subgroup_from_members(out)
}

fn order_profile(g: &FiniteGroup, h: &Subgroup) -> Vec<u32> {
    let mut v: Vec<u32> = h.members().iter().map(|&x| g.element_order(x)).collect();
    v.sort_unstable();
    v
}

/// First `x` in identifier order with `h^x = k`.
pub fn are_conjugate(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Option<ElemId> {
    if h.order() != k.order() || order_profile(g, h) != order_profile(g, k) {
        return None;
    }
    if h == k {
        return Some(g.identity());
    }
    g.ids().into_par_iter().find_first(|&x| {
        let w = g.word(x);
        h.generators().iter().all(|&y| {
            let c = if g.has_cayley_table() { g.conj(y, x) } else { g.conj_by_word(y, &w) };
            k.contains(c)
        })
    })
}

/// Elements that conjugate `h` onto `k`: a coset `N_G(h) x`.
pub fn conjugators(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<Vec<ElemId>> {
    let Some(x) = are_conjugate(g, h, k) else {
        return Ok(Vec::new());
    };
    let n = normalizer(g, h)?;
    let mut out: Vec<ElemId> = n.members().iter().map(|&m| g.mul(m, x)).collect();
    out.sort_unstable();
    Ok(out)
}

/// Conjugacy classes of elements, each listed from its least identifier.
pub fn element_classes(g: &FiniteGroup) -> Vec<Vec<ElemId>> {
    let n = g.order();
    let mut seen = FixedBitSet::with_capacity(n);
    let mut classes = Vec::new();
    for x in g.ids() {
        if seen.contains(x as usize) {
            continue;
        }
        seen.insert(x as usize);
        let mut class = vec![x];
        let mut i = 0;
        while i < class.len() {
            for k in 0..g.letter_count() {
                let y = g.conj_letter(class[i], k);
                if !seen.put(y as usize) {
                    class.push(y);
                }
            }
            i += 1;
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// One class of conjugate subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub class_size: usize,
    pub fingerprint: IsoFingerprint,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

/// Exact deduplication of subgroups up to conjugacy: every conjugate of
/// every registered class maps to its class index.
#[derive(Default)]
pub struct ClassRegistry {
    classes: Vec<SubgroupClass>,
    index: HashMap<Vec<ElemId>, usize>,
}

impl ClassRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn into_classes(self) -> Vec<SubgroupClass> {
        self.classes
    }

    pub fn lookup(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h.members()).copied()
    }

    /// Class index of `h`, registering its conjugacy class if new.
    pub fn insert(&mut self, g: &FiniteGroup, h: Subgroup) -> (usize, bool) {
        if let Some(i) = self.lookup(&h) {
            return (i, false);
        }
        let orbit = ConjugacyOrbit::new(g, &h);
        let id = self.classes.len();
        let class_size = orbit.len();
        for c in orbit.conjugates {
            self.index.insert(c.into_members(), id);
        }
        let fingerprint = fingerprint(g, &h);
        self.classes.push(SubgroupClass { representative: h, class_size, fingerprint });
        (id, true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EnumMode {
    /// Every class; requires |G| <= [`EXHAUSTIVE_MAX`].
    Exhaustive,
    /// Classes of order at most the bound.
    Bounded(usize),
}

pub const EXHAUSTIVE_MAX: usize = 3000;

/// Cyclic subgroups, one per conjugacy class, by increasing order.
pub fn cyclic_classes(g: &FiniteGroup, registry: &mut ClassRegistry, max_order: usize) {
    let mut reps: Vec<ElemId> = element_classes(g).into_iter().map(|c| c[0]).collect();
    reps.sort_by_key(|&x| (g.element_order(x), x));
    for x in reps {
        if g.element_order(x) as usize <= max_order {
            registry.insert(g, g.cyclic(x));
        }
    }
}

/// Extends every registered class, in registration order, by elements of its
/// normalizer of prime order modulo the class representative.
pub fn extend_classes(g: &FiniteGroup, registry: &mut ClassRegistry, max_order: usize) -> Result<()> {
    let mut i = 0;
    while i < registry.len() {
        let h = registry.classes()[i].representative.clone();
        i += 1;
        if h.order() * 2 > max_order {
            continue;
        }
        let norm = normalizer(g, &h)?;
        if norm.order() == h.order() {
            continue;
        }
        let mut covered = FixedBitSet::with_capacity(g.order());
        for &y in norm.members() {
            if covered.contains(y as usize) {
                continue;
            }
            for &m in h.members() {
                covered.insert(g.mul(m, y) as usize);
            }
            if h.contains(y) {
                continue;
            }
            let w = g.word(y);
            let mut k = 1usize;
            let mut z = y;
            while !h.contains(z) {
                z = g.apply_word(z, &w);
                k += 1;
            }
            if !is_prime(k as u64) || h.order() * k > max_order {
                continue;
            }
            let mut gens = h.generators().to_vec();
            gens.push(y);
            let ext = g.generate(&gens)?;
            registry.insert(g, ext);
        }
    }
    Ok(())
}

/// Subgroup classes by cyclic extension. Every solvable subgroup within the
/// bound is reached; exhaustive mode also adds the whole group.
pub fn subgroup_classes(g: &FiniteGroup, mode: EnumMode) -> Result<Vec<SubgroupClass>> {
    let mut registry = ClassRegistry::new();
    let max_order = match mode {
        EnumMode::Exhaustive => {
            if g.order() > EXHAUSTIVE_MAX {
                return Err(Error::CapExceeded(format!(
                    "exhaustive enumeration needs |G| <= {EXHAUSTIVE_MAX}, got {}",
                    g.order()
                )));
            }
            g.order()
        }
        EnumMode::Bounded(m) => m,
    };
    registry.insert(g, g.trivial_subgroup());
    cyclic_classes(g, &mut registry, max_order);
    extend_classes(g, &mut registry, max_order)?;
    if mode == EnumMode::Exhaustive {
        registry.insert(g, g.whole());
    }
    let mut classes = registry.into_classes();
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
}

/// Re-expresses a subgroup as a standalone group, with the map from its
/// identifiers back to the parent's.
pub fn as_group(g: &FiniteGroup, h: &Subgroup, label: &str) -> Result<(FiniteGroup, Vec<ElemId>)> {
    let gens: Vec<_> = if h.generators().is_empty() {
        vec![g.element(g.identity()).clone()]
    } else {
        h.generators().iter().map(|&x| g.element(x).clone()).collect()
    };
    let sub = FiniteGroup::from_generators(label, g.domain().clone(), &gens, h.order().max(1))?;
    let map = sub
        .elements()
        .iter()
        .map(|e| g.id_of(e).ok_or_else(|| Error::Internal("subgroup element missing from parent".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok((sub, map))
}

/// Every subgroup of `h` (not only up to conjugacy), as parent subgroups.
/// `h` must be solvable for the enumeration to be complete.
pub fn all_subgroups_of(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    let (sub, map) = as_group(g, h, "sub")?;
    let mut registry = ClassRegistry::new();
    registry.insert(&sub, sub.trivial_subgroup());
    cyclic_classes(&sub, &mut registry, sub.order());
    extend_classes(&sub, &mut registry, sub.order())?;
    registry.insert(&sub, sub.whole());
    let mut out = Vec::new();
    for class in registry.classes() {
        for c in ConjugacyOrbit::new(&sub, &class.representative).conjugates {
            let members: Vec<ElemId> = c.members().iter().map(|&x| map[x as usize]).collect();
            let gens: Vec<ElemId> = c.generators().iter().map(|&x| map[x as usize]).collect();
            out.push(g.subgroup_with(members, gens));
        }
    }
    out.sort();
    Ok(out)
}
