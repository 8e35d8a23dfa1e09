//! Canonical group elements, closure, and fully enumerated finite groups.
//!
//! A [`FiniteGroup`] is enumerated once from its generators by breadth-first
//! search. The search tree (a Schreier tree over the generators and their
//! inverses) gives every element a word, so any product `a * b` is computed
//! by pushing `a` through the right-multiplication tables along the word of
//! `b`. Small groups additionally cache a full Cayley table.

use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};

/// Dense identifier of an element inside one [`FiniteGroup`].
pub type ElemId = u32;

/// Default cap on the number of elements any closure may produce.
pub const DEFAULT_BUDGET: usize = 1 << 21;

/// Groups up to this order cache their multiplication table.
pub const CAYLEY_TABLE_MAX: usize = 3000;

const MAX_WORD: usize = 255;

/// A group element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Element of PSL(2, q): a determinant-one matrix `[a, b, c, d]` (row
    /// major), stored as the lexicographically least of `{M, -M}`.
    ProjMat2([FieldElement; 4]),
    /// Square matrix over the domain's field, row major.
    Mat(Box<[FieldElement]>),
    /// Permutation of `0..degree`, as the image list.
    Perm(Box<[u32]>),
}

/// The ambient structure that knows how to multiply elements.
#[derive(Clone, Debug)]
pub enum Domain {
    ProjectiveSl2(Arc<FieldCtx>),
    Matrix { field: Arc<FieldCtx>, dim: usize },
    Permutation { degree: usize },
}

fn mat_mul(f: &FieldCtx, d: usize, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::ZERO; d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..d {
                let t = f.mul(aik, b[k * d + j]);
                out[i * d + j] = f.add(out[i * d + j], t);
            }
        }
    }
    out
}

/// Gauss-Jordan inverse; `None` for singular input.
fn mat_inv(f: &FieldCtx, d: usize, a: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let mut m = a.to_vec();
    let mut inv = vec![FieldElement::ZERO; d * d];
    for i in 0..d {
        inv[i * d + i] = FieldElement::ONE;
    }
    for col in 0..d {
        let pivot = (col..d).find(|&r| !m[r * d + col].is_zero())?;
        if pivot != col {
            for j in 0..d {
                m.swap(pivot * d + j, col * d + j);
                inv.swap(pivot * d + j, col * d + j);
            }
        }
        let s = f.inv(m[col * d + col]).ok()?;
        for j in 0..d {
            m[col * d + j] = f.mul(m[col * d + j], s);
            inv[col * d + j] = f.mul(inv[col * d + j], s);
        }
        for r in 0..d {
            if r == col || m[r * d + col].is_zero() {
                continue;
            }
            let factor = m[r * d + col];
            for j in 0..d {
                let t = f.mul(factor, m[col * d + j]);
                m[r * d + j] = f.sub(m[r * d + j], t);
                let t = f.mul(factor, inv[col * d + j]);
                inv[r * d + j] = f.sub(inv[r * d + j], t);
            }
        }
    }
    Some(inv)
}

impl Domain {
    pub fn field(&self) -> Option<&Arc<FieldCtx>> {
        match self {
            Domain::ProjectiveSl2(f) | Domain::Matrix { field: f, .. } => Some(f),
            Domain::Permutation { .. } => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Domain::ProjectiveSl2(_) => GroupElement::ProjMat2([
                FieldElement::ONE,
                FieldElement::ZERO,
                FieldElement::ZERO,
                FieldElement::ONE,
            ]),
            Domain::Matrix { dim, .. } => {
                let mut e = vec![FieldElement::ZERO; dim * dim];
                for i in 0..*dim {
                    e[i * dim + i] = FieldElement::ONE;
                }
                GroupElement::Mat(e.into())
            }
            Domain::Permutation { degree } => {
                GroupElement::Perm((0..*degree as u32).collect::<Vec<_>>().into())
            }
        }
    }

    /// Reduces a projective matrix to its canonical sign representative;
    /// other variants are returned unchanged.
    pub fn canonical(&self, g: GroupElement) -> GroupElement {
        match (self, g) {
            (Domain::ProjectiveSl2(f), GroupElement::ProjMat2(m)) => {
                let neg = m.map(|x| f.neg(x));
                GroupElement::ProjMat2(if neg < m { neg } else { m })
            }
            (_, g) => g,
        }
    }

    /// Checks that `g` belongs to this domain and is invertible.
    pub fn validate(&self, g: &GroupElement) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidInput(msg.to_string()));
        match (self, g) {
            (Domain::ProjectiveSl2(f), GroupElement::ProjMat2(m)) => {
                if m.iter().any(|x| x.value() >= f.order()) {
                    return bad("matrix entry outside the field");
                }
                let det = f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]));
                if det != FieldElement::ONE {
                    return bad("PSL(2,q) element must have determinant 1");
                }
                Ok(())
            }
            (Domain::Matrix { field, dim }, GroupElement::Mat(m)) => {
                if m.len() != dim * dim || m.iter().any(|x| x.value() >= field.order()) {
                    return bad("matrix has wrong shape or entries outside the field");
                }
                if mat_inv(field, *dim, m).is_none() {
                    return bad("matrix is singular");
                }
                Ok(())
            }
            (Domain::Permutation { degree }, GroupElement::Perm(p)) => {
                let mut seen = vec![false; *degree];
                if p.len() != *degree {
                    return bad("permutation has wrong degree");
                }
                for &x in p.iter() {
                    if x as usize >= *degree || seen[x as usize] {
                        return bad("image list is not a bijection");
                    }
                    seen[x as usize] = true;
                }
                Ok(())
            }
            _ => bad("element variant does not match the domain"),
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (Domain::ProjectiveSl2(f), GroupElement::ProjMat2(x), GroupElement::ProjMat2(y)) => {
                let m = mat_mul(f, 2, x, y);
                self.canonical(GroupElement::ProjMat2([m[0], m[1], m[2], m[3]]))
            }
            (Domain::Matrix { field, dim }, GroupElement::Mat(x), GroupElement::Mat(y)) => {
                GroupElement::Mat(mat_mul(field, *dim, x, y).into())
            }
            (Domain::Permutation { .. }, GroupElement::Perm(x), GroupElement::Perm(y)) => {
                // left-to-right composition: apply x first, then y
                GroupElement::Perm(x.iter().map(|&i| y[i as usize]).collect::<Vec<_>>().into())
            }
            _ => panic!("multiplying elements of mismatched domains"),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        match (self, a) {
            (Domain::ProjectiveSl2(f), GroupElement::ProjMat2(m)) => {
                // det = 1, so the inverse is the adjugate
                let inv = [m[3], f.neg(m[1]), f.neg(m[2]), m[0]];
                Ok(self.canonical(GroupElement::ProjMat2(inv)))
            }
            (Domain::Matrix { field, dim }, GroupElement::Mat(m)) => mat_inv(field, *dim, m)
                .map(|v| GroupElement::Mat(v.into()))
                .ok_or_else(|| Error::InvalidInput("singular matrix".into())),
            (Domain::Permutation { .. }, GroupElement::Perm(p)) => {
                let mut inv = vec![0u32; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    inv[x as usize] = i as u32;
                }
                Ok(GroupElement::Perm(inv.into()))
            }
            _ => Err(Error::InvalidInput("element variant does not match the domain".into())),
        }
    }
}

/// `g^{-1} h g`.
pub fn conjugate_elem(domain: &Domain, h: &GroupElement, g: &GroupElement) -> Result<GroupElement> {
    let gi = domain.inverse(g)?;
    Ok(domain.mul(&domain.mul(&gi, h), g))
}

/// Least `k >= 1` with `g^k = 1`, failing once `k` exceeds `budget`.
pub fn element_order(domain: &Domain, g: &GroupElement, budget: usize) -> Result<u64> {
    let id = domain.identity();
    let mut x = g.clone();
    let mut k = 1u64;
    while x != id {
        x = domain.mul(&x, g);
        k += 1;
        if k as usize > budget {
            return Err(Error::ClosureBudgetExceeded(budget));
        }
    }
    Ok(k)
}

/// Smallest multiplicatively closed set containing `seeds`, by Dimino's
/// algorithm: each new generator extends the current subgroup coset by coset.
/// The output order is deterministic: identity first, then cosets in the
/// order they are discovered.
pub fn closure(domain: &Domain, seeds: &[GroupElement], budget: usize) -> Result<Vec<GroupElement>> {
    fn add_coset(
        domain: &Domain,
        elems: &mut Vec<GroupElement>,
        seen: &mut HashSet<GroupElement>,
        prev: usize,
        y: &GroupElement,
        budget: usize,
    ) -> Result<()> {
        for j in 0..prev {
            let z = domain.mul(&elems[j], y);
            seen.insert(z.clone());
            elems.push(z);
        }
        if elems.len() > budget {
            return Err(Error::ClosureBudgetExceeded(budget));
        }
        Ok(())
    }

    let mut elems = vec![domain.identity()];
    let mut seen: HashSet<GroupElement> = elems.iter().cloned().collect();
    let mut used: Vec<GroupElement> = Vec::new();
    for s in seeds {
        domain.validate(s)?;
        let s = domain.canonical(s.clone());
        if seen.contains(&s) {
            continue;
        }
        used.push(s.clone());
        let prev = elems.len();
        add_coset(domain, &mut elems, &mut seen, prev, &s, budget)?;
        let mut reps = vec![s];
        let mut r = 0;
        while r < reps.len() {
            for t in &used {
                let y = domain.mul(&reps[r], t);
                if !seen.contains(&y) {
                    add_coset(domain, &mut elems, &mut seen, prev, &y, budget)?;
                    reps.push(y);
                }
            }
            r += 1;
        }
    }
    Ok(elems)
}

/// A sorted set of element identifiers forming a subgroup of some parent
/// [`FiniteGroup`], together with a generating set.
///
/// Equality, ordering and hashing use the member set only.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<ElemId>,
    gens: Vec<ElemId>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.gens
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        if self.order() > other.order() || other.order() % self.order() != 0 {
            return false;
        }
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn into_members(self) -> Vec<ElemId> {
        self.members
    }
}

/// Result of a closure that may stop early.
#[derive(Clone, Debug)]
pub enum ClosureOutcome {
    Complete(Vec<ElemId>),
    Stopped(ElemId),
}

/// A fully enumerated finite group.
pub struct FiniteGroup {
    label: String,
    domain: Domain,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, ElemId>,
    generators: Vec<ElemId>,
    letters: Vec<ElemId>,
    right: Vec<Vec<ElemId>>,
    left: Vec<Vec<ElemId>>,
    tree: Vec<(ElemId, u8)>,
    inverse: Vec<ElemId>,
    orders: Vec<u32>,
    table: Option<Vec<ElemId>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.elements.len())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Word of an element as a sequence of letter indices, root to element.
pub struct Word {
    buf: [u8; MAX_WORD],
    len: usize,
}

impl Word {
    pub fn letters(&self) -> &[u8] {
        &self.buf[..self.len]
    }
}

impl FiniteGroup {
    /// Enumerates the group generated by `gens` inside `domain`.
    pub fn from_generators(
        label: impl Into<String>,
        domain: Domain,
        gens: &[GroupElement],
        budget: usize,
    ) -> Result<FiniteGroup> {
        if gens.is_empty() {
            return Err(Error::InvalidInput("no generators".into()));
        }
        let identity = domain.identity();
        let mut gen_elems = Vec::new();
        for g in gens {
            domain.validate(g)?;
            let g = domain.canonical(g.clone());
            gen_elems.push(g);
        }
        let mut letter_elems: Vec<GroupElement> = Vec::new();
        for g in &gen_elems {
            if *g != identity && !letter_elems.contains(g) {
                letter_elems.push(g.clone());
            }
        }
        for g in letter_elems.clone() {
            let gi = domain.inverse(&g)?;
            if !letter_elems.contains(&gi) {
                letter_elems.push(gi);
            }
        }

        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0 as ElemId);
        let mut tree = vec![(0 as ElemId, u8::MAX)];
        let mut depth = vec![0usize];
        let mut right: Vec<Vec<ElemId>> = vec![Vec::new(); letter_elems.len()];
        let mut x = 0usize;
        while x < elements.len() {
            for (k, a) in letter_elems.iter().enumerate() {
                let y = domain.mul(&elements[x], a);
                let id = match index.get(&y) {
                    Some(&id) => id,
                    None => {
                        let id = elements.len() as ElemId;
                        if elements.len() >= budget {
                            return Err(Error::ClosureBudgetExceeded(budget));
                        }
                        index.insert(y.clone(), id);
                        elements.push(y);
                        tree.push((x as ElemId, k as u8));
                        depth.push(depth[x] + 1);
                        id
                    }
                };
                right[k].push(id);
            }
            x += 1;
        }
        if depth.iter().any(|&d| d > MAX_WORD) {
            return Err(Error::CapExceeded("word length exceeds tree capacity".into()));
        }
        let n = elements.len();
        let mut inverse = vec![0 as ElemId; n];
        for (i, e) in elements.iter().enumerate() {
            let ei = domain.inverse(e)?;
            inverse[i] = *index
                .get(&ei)
                .ok_or_else(|| Error::Internal("group is not closed under inverses".into()))?;
        }
        let left: Vec<Vec<ElemId>> = right
            .iter()
            .map(|r| (0..n).map(|i| inverse[r[inverse[i] as usize] as usize]).collect())
            .collect();
        let letters = letter_elems.iter().map(|e| index[e]).collect();
        let generators = gen_elems.iter().map(|e| index[e]).collect();

        let mut group = FiniteGroup {
            label: label.into(),
            domain,
            elements,
            index,
            generators,
            letters,
            right,
            left,
            tree,
            inverse,
            orders: Vec::new(),
            table: None,
        };
        if n <= CAYLEY_TABLE_MAX {
            let mut table = vec![0 as ElemId; n * n];
            for b in 0..n as ElemId {
                let w = group.word(b);
                for a in 0..n as ElemId {
                    table[a as usize * n + b as usize] = group.apply_word(a, &w);
                }
            }
            group.table = Some(table);
        }
        group.orders = (0..n as ElemId).map(|x| group.compute_order(x)).collect();
        Ok(group)
    }

    fn compute_order(&self, x: ElemId) -> u32 {
        let w = self.word(x);
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.apply_word(y, &w);
            k += 1;
        }
        k
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn element(&self, x: ElemId) -> &GroupElement {
        &self.elements[x as usize]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Identifier of a canonical element, if it belongs to the group.
    pub fn id_of(&self, g: &GroupElement) -> Option<ElemId> {
        let g = self.domain.canonical(g.clone());
        self.index.get(&g).copied()
    }

    pub fn ids(&self) -> std::ops::Range<ElemId> {
        0..self.elements.len() as ElemId
    }

    pub fn inv(&self, x: ElemId) -> ElemId {
        self.inverse[x as usize]
    }

    pub fn element_order(&self, x: ElemId) -> u32 {
        self.orders[x as usize]
    }

    pub fn has_cayley_table(&self) -> bool {
        self.table.is_some()
    }

    /// Word of `x` in the letters, root to `x`.
    pub fn word(&self, x: ElemId) -> Word {
        let mut buf = [0u8; MAX_WORD];
        let mut len = 0;
        let mut cur = x;
        while cur != 0 {
            let (parent, letter) = self.tree[cur as usize];
            buf[len] = letter;
            len += 1;
            cur = parent;
        }
        buf[..len].reverse();
        Word { buf, len }
    }

    /// `a * w` for the element spelled by `w`.
    #[inline]
    pub fn apply_word(&self, a: ElemId, w: &Word) -> ElemId {
        w.letters()
            .iter()
            .fold(a, |acc, &k| self.right[k as usize][acc as usize])
    }

    /// `w^{-1} x w` for the element spelled by `w`.
    #[inline]
    pub fn conj_by_word(&self, x: ElemId, w: &Word) -> ElemId {
        w.letters().iter().fold(x, |acc, &k| {
            let k = k as usize;
            self.right[k][self.left[k][acc as usize] as usize]
        })
    }

    /// Conjugation by a single letter (generator or generator inverse).
    #[inline]
    pub fn conj_letter(&self, x: ElemId, k: usize) -> ElemId {
        self.right[k][self.left[k][x as usize] as usize]
    }

    /// Right multiplication by a single letter.
    #[inline]
    pub fn mul_letter(&self, x: ElemId, k: usize) -> ElemId {
        self.right[k][x as usize]
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    pub fn letter(&self, k: usize) -> ElemId {
        self.letters[k]
    }

    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.apply_word(a, &self.word(b)),
        }
    }

    /// `g^{-1} x g`.
    #[inline]
    pub fn conj(&self, x: ElemId, g: ElemId) -> ElemId {
        match &self.table {
            Some(_) => self.mul(self.mul(self.inv(g), x), g),
            None => self.conj_by_word(x, &self.word(g)),
        }
    }

    pub fn pow(&self, x: ElemId, k: u64) -> ElemId {
        let k = k % self.element_order(x) as u64;
        let w = self.word(x);
        (0..k).fold(0, |acc, _| self.apply_word(acc, &w))
    }

    /// Closure of `gens` by Dimino's algorithm over identifiers. `stop` is
    /// called on every element as it is discovered; returning `true` ends the
    /// search early.
    pub fn closure_search(
        &self,
        gens: &[ElemId],
        budget: usize,
        mut stop: impl FnMut(ElemId) -> bool,
    ) -> Result<ClosureOutcome> {
        let mut seen = FixedBitSet::with_capacity(self.order());
        let mut elems: Vec<ElemId> = vec![0];
        seen.insert(0);
        if stop(0) {
            return Ok(ClosureOutcome::Stopped(0));
        }
        let mut used: Vec<ElemId> = Vec::new();
        for &s in gens {
            if seen.contains(s as usize) {
                continue;
            }
            used.push(s);
            let prev = elems.len();
            let mut reps = vec![s];
            let mut r = 0;
            let mut pending = Some(s);
            loop {
                if let Some(y) = pending.take() {
                    let w = self.word(y);
                    for j in 0..prev {
                        let z = match &self.table {
                            Some(_) => self.mul(elems[j], y),
                            None => self.apply_word(elems[j], &w),
                        };
                        seen.insert(z as usize);
                        elems.push(z);
                        if stop(z) {
                            return Ok(ClosureOutcome::Stopped(z));
                        }
                    }
                    if elems.len() > budget {
                        return Err(Error::ClosureBudgetExceeded(budget));
                    }
                }
                // next coset representative not yet covered
                'scan: while r < reps.len() {
                    for &t in &used {
                        let y = self.mul(reps[r], t);
                        if !seen.contains(y as usize) {
                            reps.push(y);
                            pending = Some(y);
                            break 'scan;
                        }
                    }
                    r += 1;
                }
                if pending.is_none() {
                    break;
                }
            }
        }
        Ok(ClosureOutcome::Complete(elems))
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[ElemId]) -> Result<Subgroup> {
        self.generate_with_budget(gens, DEFAULT_BUDGET)
    }

    pub fn generate_with_budget(&self, gens: &[ElemId], budget: usize) -> Result<Subgroup> {
        match self.closure_search(gens, budget, |_| false)? {
            ClosureOutcome::Complete(mut members) => {
                members.sort_unstable();
                let mut g: Vec<ElemId> = Vec::new();
                for &x in gens {
                    if x != 0 && !g.contains(&x) {
                        g.push(x);
                    }
                }
                Ok(Subgroup { members, gens: g })
            }
            ClosureOutcome::Stopped(_) => unreachable!("closure without stop condition"),
        }
    }

    /// Wraps an explicit member set, checking closure and picking a small
    /// generating set greedily in identifier order.
    pub fn subgroup_from_members(&self, mut members: Vec<ElemId>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(Error::InvalidInput("subgroup must contain the identity".into()));
        }
        if members.iter().any(|&x| x as usize >= self.order()) {
            return Err(Error::InvalidInput("element id out of range".into()));
        }
        let target = members.len();
        let mut gens: Vec<ElemId> = Vec::new();
        let mut current = Subgroup { members: vec![0], gens: Vec::new() };
        // prefer high-order elements so generating sets stay short
        let mut candidates: Vec<ElemId> = members.clone();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        for x in candidates {
            if current.order() == target {
                break;
            }
            if current.contains(x) {
                continue;
            }
            gens.push(x);
            current = self.generate_with_budget(&gens, target)?;
            if current.order() > target || !current.members.iter().all(|m| members.binary_search(m).is_ok()) {
                return Err(Error::InvalidInput("member set is not closed".into()));
            }
        }
        if current.members != members {
            return Err(Error::InvalidInput("member set is not closed".into()));
        }
        Ok(Subgroup { members, gens })
    }

    /// Builds a subgroup from members and generators known to be consistent.
    pub fn subgroup_with(&self, mut members: Vec<ElemId>, gens: Vec<ElemId>) -> Subgroup {
        members.sort_unstable();
        Subgroup { members, gens }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![0], gens: Vec::new() }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { members: self.ids().collect(), gens: self.generators.clone() }
    }

    /// Cyclic subgroup generated by `x`.
    pub fn cyclic(&self, x: ElemId) -> Subgroup {
        let w = self.word(x);
        let mut members = vec![0];
        let mut y = x;
        while y != 0 {
            members.push(y);
            y = self.apply_word(y, &w);
        }
        members.sort_unstable();
        Subgroup { members, gens: if x == 0 { vec![] } else { vec![x] } }
    }

    /// `{g^{-1} h g : h in H}`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: ElemId) -> Subgroup {
        let w = self.word(g);
        let conj = |x: ElemId| match &self.table {
            Some(_) => self.conj(x, g),
            None => self.conj_by_word(x, &w),
        };
        let mut members: Vec<ElemId> = h.members.iter().map(|&x| conj(x)).collect();
        members.sort_unstable();
        let gens = h.gens.iter().map(|&x| conj(x)).collect();
        Subgroup { members, gens }
    }

    /// Conjugates by one letter.
    pub fn conjugate_subgroup_letter(&self, h: &Subgroup, k: usize) -> Subgroup {
        let mut members: Vec<ElemId> = h.members.iter().map(|&x| self.conj_letter(x, k)).collect();
        members.sort_unstable();
        let gens = h.gens.iter().map(|&x| self.conj_letter(x, k)).collect();
        Subgroup { members, gens }
    }

    /// Exhaustive check of the group axioms on the enumerated elements.
    pub fn verify_axioms_exhaustive(&self) -> Result<()> {
        for a in self.ids() {
            if self.mul(a, self.inv(a)) != 0 || self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::Internal(format!("identity/inverse law fails at {a}")));
            }
            let ea = &self.elements[a as usize];
            for b in self.ids() {
                let expect = self.domain.mul(ea, &self.elements[b as usize]);
                if self.index.get(&expect) != Some(&self.mul(a, b)) {
                    return Err(Error::Internal(format!("product {a}*{b} is wrong or not closed")));
                }
            }
        }
        Ok(())
    }

    /// Checks `count` pseudo-random products against direct multiplication.
    pub fn verify_axioms_sampled(&self, count: usize, seed: u64) -> Result<()> {
        let n = self.order() as u64;
        let mut state = seed | 1;
        let mut next = || {
            // xorshift64
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % n) as ElemId
        };
        for _ in 0..count {
            let (a, b) = (next(), next());
            let expect = self
                .domain
                .mul(&self.elements[a as usize], &self.elements[b as usize]);
            if self.index.get(&expect) != Some(&self.mul(a, b)) {
                return Err(Error::Internal(format!("product {a}*{b} is wrong or not closed")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_of_order;

    fn perm_domain(n: usize) -> Domain {
        Domain::Permutation { degree: n }
    }

    fn perm(v: &[u32]) -> GroupElement {
        GroupElement::Perm(v.to_vec().into())
    }

    #[test]
    fn closure_of_identity_is_trivial() {
        let d = perm_domain(4);
        let c = closure(&d, &[d.identity()], 100).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn closure_of_single_element_is_cyclic() {
        let d = perm_domain(5);
        let c = closure(&d, &[perm(&[1, 2, 3, 4, 0])], 100).unwrap();
        assert_eq!(c.len(), 5);
        let c = closure(&d, &[perm(&[1, 0, 3, 4, 2])], 100).unwrap();
        assert_eq!(c.len(), 6);
    }

    #[test]
    fn closure_symmetric_group() {
        let d = perm_domain(4);
        let c = closure(&d, &[perm(&[1, 2, 3, 0]), perm(&[1, 0, 2, 3])], 100).unwrap();
        assert_eq!(c.len(), 24);
        assert!(matches!(
            closure(&d, &[perm(&[1, 2, 3, 0]), perm(&[1, 0, 2, 3])], 10),
            Err(Error::ClosureBudgetExceeded(10))
        ));
    }

    #[test]
    fn id_closure_matches_element_closure() {
        let d = perm_domain(4);
        let g = FiniteGroup::from_generators("S4", d, &[perm(&[1, 2, 3, 0]), perm(&[1, 0, 2, 3])], 1000).unwrap();
        assert_eq!(g.order(), 24);
        g.verify_axioms_exhaustive().unwrap();
        let h = g.generate(&[g.id_of(&perm(&[1, 0, 3, 2])).unwrap(), g.id_of(&perm(&[2, 3, 0, 1])).unwrap()]).unwrap();
        assert_eq!(h.order(), 4);
        let a4 = g
            .generate(&[g.id_of(&perm(&[1, 2, 0, 3])).unwrap(), g.id_of(&perm(&[0, 2, 3, 1])).unwrap()])
            .unwrap();
        assert_eq!(a4.order(), 12);
    }

    #[test]
    fn orders_and_conjugation() {
        let d = perm_domain(4);
        let g = FiniteGroup::from_generators("S4", d, &[perm(&[1, 2, 3, 0]), perm(&[1, 0, 2, 3])], 1000).unwrap();
        assert_eq!(g.element_order(0), 1);
        let c4 = g.id_of(&perm(&[1, 2, 3, 0])).unwrap();
        assert_eq!(g.element_order(c4), 4);
        for x in g.ids() {
            assert_eq!(g.conj(x, 0), x);
            for y in g.ids() {
                let direct = conjugate_elem(g.domain(), g.element(x), g.element(y)).unwrap();
                assert_eq!(g.id_of(&direct), Some(g.conj(x, y)));
            }
        }
    }

    #[test]
    fn projective_canonical_form() {
        let f = Arc::new(field_of_order(7).unwrap());
        let d = Domain::ProjectiveSl2(f.clone());
        let m = [FieldElement(2), FieldElement(3), FieldElement(1), FieldElement(2)];
        // det = 4 - 3 = 1
        let a = d.canonical(GroupElement::ProjMat2(m));
        let b = d.canonical(GroupElement::ProjMat2(m.map(|x| f.neg(x))));
        assert_eq!(a, b);
        d.validate(&a).unwrap();
        assert!(d
            .validate(&GroupElement::ProjMat2([FieldElement(2), FieldElement(0), FieldElement(0), FieldElement(2)]))
            .is_err());
    }

    #[test]
    fn subgroup_from_members_rejects_non_closed() {
        let d = perm_domain(3);
        let g = FiniteGroup::from_generators("S3", d, &[perm(&[1, 2, 0]), perm(&[1, 0, 2])], 100).unwrap();
        let t = g.id_of(&perm(&[1, 0, 2])).unwrap();
        let r = g.id_of(&perm(&[1, 2, 0])).unwrap();
        assert!(g.subgroup_from_members(vec![0, t]).is_ok());
        assert!(g.subgroup_from_members(vec![0, t, r]).is_err());
        assert!(g.subgroup_from_members(vec![t]).is_err());
    }
}
