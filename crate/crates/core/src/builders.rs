//! Constructions of PSL(2,q), Sz(q) and J1, parameter regimes, and
//! isomorphism-type fingerprints of subgroups.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{field_of_order, is_prime, prime_power, FieldCtx, FieldElement};
use crate::group::{Domain, ElemId, FiniteGroup, GroupElement, Subgroup, DEFAULT_BUDGET};

/// Largest q accepted by [`build_psl2`].
pub const PSL_Q_MAX: u64 = 32;

/// Order of the first Janko group.
pub const J1_ORDER: usize = 175_560;

/// Subgroups above this order get only the cheap fingerprint invariants.
pub const FINGERPRINT_MAX: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Psl2,
    Sz,
    J1,
}

/// Parameter regime of a target, which selects the expected table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    /// q = 2^n with n prime.
    PhQ2 { n: u32 },
    /// q = 3^n with n an odd prime.
    PhQ3 { n: u32 },
    /// Prime q = ±3 mod 8 with q > 17.
    PhPpm3,
    /// q in {7, 17}.
    PhE,
    /// Prime q = ±1 mod 8 with q-1 or q+1 a power of two, q not 7 or 17.
    NprP2,
    /// Sz(2^(2n+1)) with 2n+1 prime.
    SzPrimeExponent { n: u32 },
    J1,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::PhQ2 { .. } => write!(f, "PH_Q2"),
            Regime::PhQ3 { .. } => write!(f, "PH_Q3"),
            Regime::PhPpm3 => write!(f, "PH_Ppm3"),
            Regime::PhE => write!(f, "PH_E"),
            Regime::NprP2 => write!(f, "NPr_P2"),
            Regime::SzPrimeExponent { .. } => write!(f, "Sz_prime_exponent"),
            Regime::J1 => write!(f, "J1"),
        }
    }
}

fn is_power_of_two(x: u64) -> bool {
    x != 0 && x & (x - 1) == 0
}

/// Regime of PSL(2,q); values outside every regime are rejected.
pub fn psl2_regime(q: u64) -> Result<Regime> {
    let (p, n) = prime_power(q).ok_or_else(|| Error::InvalidQ(format!("{q} is not a prime power")))?;
    if p == 2 && is_prime(n as u64) {
        return Ok(Regime::PhQ2 { n });
    }
    if p == 3 && n % 2 == 1 && is_prime(n as u64) {
        return Ok(Regime::PhQ3 { n });
    }
    if n == 1 {
        if q == 7 || q == 17 {
            return Ok(Regime::PhE);
        }
        let r = q % 8;
        if (r == 3 || r == 5) && q > 17 {
            return Ok(Regime::PhPpm3);
        }
        if (r == 1 || r == 7) && (is_power_of_two(q - 1) || is_power_of_two(q + 1)) {
            return Ok(Regime::NprP2);
        }
    }
    Err(Error::UnknownRegime(format!("PSL(2,{q})")))
}

/// Regime of Sz(q); requires q = 2^(2n+1) with 2n+1 prime.
pub fn sz_regime(q: u64) -> Result<Regime> {
    match prime_power(q) {
        Some((2, e)) if e % 2 == 1 && e >= 3 => {
            if is_prime(e as u64) {
                Ok(Regime::SzPrimeExponent { n: (e - 1) / 2 })
            } else {
                Err(Error::UnknownRegime(format!("Sz({q}): exponent {e} is not prime")))
            }
        }
        _ => Err(Error::InvalidQ(format!("Sz needs q an odd power of 2 at least 8, got {q}"))),
    }
}

/// A verification target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSpec {
    pub family: Family,
    pub q: Option<u64>,
    pub regime: Regime,
}

impl GroupSpec {
    pub fn psl2(q: u64) -> Result<Self> {
        Ok(GroupSpec { family: Family::Psl2, q: Some(q), regime: psl2_regime(q)? })
    }

    pub fn sz(q: u64) -> Result<Self> {
        Ok(GroupSpec { family: Family::Sz, q: Some(q), regime: sz_regime(q)? })
    }

    pub fn j1() -> Self {
        GroupSpec { family: Family::J1, q: None, regime: Regime::J1 }
    }

    pub fn label(&self) -> String {
        match (self.family, self.q) {
            (Family::Psl2, Some(q)) => format!("PSL(2,{q})"),
            (Family::Sz, Some(q)) => format!("Sz({q})"),
            _ => "J1".to_string(),
        }
    }

    /// Group order predicted by the standard order formulas.
    pub fn expected_order(&self) -> u64 {
        match (self.family, self.q) {
            (Family::Psl2, Some(q)) => q * (q - 1) * (q + 1) / if q % 2 == 1 { 2 } else { 1 },
            (Family::Sz, Some(q)) => q * q * (q * q + 1) * (q - 1),
            _ => J1_ORDER as u64,
        }
    }
}

fn check_order(group: FiniteGroup, expected: u64) -> Result<FiniteGroup> {
    if group.order() as u64 != expected {
        return Err(Error::WrongOrder { actual: group.order(), expected: expected as usize });
    }
    Ok(group)
}

/// Standard generators of PSL(2,q): a transvection, a torus element built
/// from the primitive element, and the Weyl element.
pub fn psl2_generators(f: &FieldCtx) -> Vec<GroupElement> {
    let (o, z) = (FieldElement::ONE, FieldElement::ZERO);
    let a = f.primitive_element();
    let ai = f.inv(a).expect("primitive element is nonzero");
    vec![
        GroupElement::ProjMat2([o, o, z, o]),
        GroupElement::ProjMat2([a, z, z, ai]),
        GroupElement::ProjMat2([z, o, f.neg(o), z]),
    ]
}

pub fn build_psl2(ctx: Arc<FieldCtx>) -> Result<FiniteGroup> {
    let q = ctx.order() as u64;
    if q > PSL_Q_MAX {
        return Err(Error::CapExceeded(format!("PSL(2,{q}) exceeds q <= {PSL_Q_MAX}")));
    }
    if q < 4 {
        return Err(Error::InvalidQ(format!("PSL(2,{q}) is not simple")));
    }
    let gens = psl2_generators(&ctx);
    let domain = Domain::ProjectiveSl2(ctx);
    let expected = q * (q - 1) * (q + 1) / if q % 2 == 1 { 2 } else { 1 };
    let g = FiniteGroup::from_generators(format!("PSL(2,{q})"), domain, &gens, DEFAULT_BUDGET)?;
    check_order(g, expected)
}

/// The 4x4 matrix model of Sz(q) over GF(q), q = 2^(2n+1).
#[derive(Clone, Debug)]
pub struct SuzukiModel {
    field: Arc<FieldCtx>,
    theta: i64,
}

impl SuzukiModel {
    pub fn new(field: Arc<FieldCtx>) -> Result<Self> {
        let (p, e) = (field.characteristic(), field.degree());
        if p != 2 || e % 2 == 0 || e < 3 {
            return Err(Error::InvalidQ(format!("Sz needs GF(2^(2n+1)), got GF({})", field.order())));
        }
        let theta = 1i64 << ((e - 1) / 2 + 1);
        Ok(SuzukiModel { field, theta })
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn theta(&self) -> i64 {
        self.theta
    }

    /// `(m+, m-) = (q + theta + 1, q - theta + 1)`.
    pub fn m_pm(&self) -> (u64, u64) {
        let q = self.q();
        (q + self.theta as u64 + 1, q - self.theta as u64 + 1)
    }

    /// Field power; panics only for a negative power of zero.
    fn pw(&self, x: FieldElement, k: i64) -> FieldElement {
        self.field.pow(x, k).expect("negative power of zero")
    }

    pub fn domain(&self) -> Domain {
        Domain::Matrix { field: self.field.clone(), dim: 4 }
    }

    fn mat(rows: [[FieldElement; 4]; 4]) -> GroupElement {
        GroupElement::Mat(rows.concat().into())
    }

    /// `M(a, b)`; in characteristic 2 every sign is a plus.
    pub fn m(&self, a: FieldElement, b: FieldElement) -> GroupElement {
        let f = &self.field;
        let t = self.theta;
        let (o, z) = (FieldElement::ONE, FieldElement::ZERO);
        let r3c1 = f.add(self.pw(a, t + 1), b);
        let r4c1 = f.add(f.add(self.pw(a, t + 2), self.pw(b, t)), f.mul(a, b));
        Self::mat([
            [o, z, z, z],
            [a, o, z, z],
            [r3c1, self.pw(a, t), o, z],
            [r4c1, b, a, o],
        ])
    }

    /// `T(x) = diag(x, x^(theta-1), x^(1-theta), x^-1)`; `x` must be nonzero.
    pub fn t(&self, x: FieldElement) -> GroupElement {
        let t = self.theta;
        let z = FieldElement::ZERO;
        Self::mat([
            [x, z, z, z],
            [z, self.pw(x, t - 1), z, z],
            [z, z, self.pw(x, 1 - t), z],
            [z, z, z, self.pw(x, -1)],
        ])
    }

    pub fn u(&self) -> GroupElement {
        let (o, z) = (FieldElement::ONE, FieldElement::ZERO);
        Self::mat([[o, z, z, z], [o, o, z, z], [o, o, o, z], [o, z, o, o]])
    }

    pub fn w(&self) -> GroupElement {
        let (o, z) = (FieldElement::ONE, FieldElement::ZERO);
        Self::mat([[z, z, z, o], [z, z, o, z], [z, o, z, z], [o, z, z, z]])
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        vec![self.t(self.field.primitive_element()), self.u(), self.w()]
    }

    /// All `M(a, b)` in lexicographic `(a, b)` order.
    pub fn sylow_elements(&self) -> Vec<GroupElement> {
        let els: Vec<FieldElement> = self.field.elements().collect();
        els.iter()
            .flat_map(|&a| els.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.m(a, b))
            .collect()
    }
}

pub fn build_sz(ctx: Arc<FieldCtx>) -> Result<FiniteGroup> {
    let model = SuzukiModel::new(ctx)?;
    let q = model.q();
    let expected = q * q * (q * q + 1) * (q - 1);
    if expected as usize > DEFAULT_BUDGET {
        return Err(Error::CapExceeded(format!("Sz({q}) has order {expected}, above the enumeration budget")));
    }
    let g = FiniteGroup::from_generators(format!("Sz({q})"), model.domain(), &model.generators(), DEFAULT_BUDGET)?;
    check_order(g, expected)
}

/// Parses a generator file.
///
/// ```text
/// matrix p d k        perm deg k
/// <k blocks of d rows> <k lines of images, 0-based>
/// ```
///
/// Matrix entries are integers reduced modulo p.
pub fn parse_generators(text: &str) -> Result<(Domain, Vec<GroupElement>)> {
    let mut tokens = text.split_whitespace();
    let kind = tokens.next().ok_or_else(|| Error::Parse("empty generator file".into()))?;
    let mut next_int = |what: &str| -> Result<i64> {
        let t = tokens.next().ok_or_else(|| Error::Parse(format!("unexpected end of file reading {what}")))?;
        t.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {t:?} for {what}")))
    };
    let parsed = match kind {
        "matrix" => {
            let p = next_int("characteristic")?;
            let d = next_int("dimension")?;
            let k = next_int("generator count")?;
            if p < 2 || !is_prime(p as u64) {
                return Err(Error::Parse(format!("characteristic {p} is not prime")));
            }
            if !(1..=16).contains(&d) || k < 1 {
                return Err(Error::Parse(format!("unsupported dimension {d} or count {k}")));
            }
            let field = Arc::new(field_of_order(p as u64)?);
            let d = d as usize;
            let mut gens = Vec::new();
            for g in 0..k {
                let mut entries = Vec::with_capacity(d * d);
                for i in 0..d * d {
                    let v = next_int(&format!("generator {g} entry {i}"))?;
                    entries.push(FieldElement(v.rem_euclid(p) as u16));
                }
                gens.push(GroupElement::Mat(entries.into()));
            }
            (Domain::Matrix { field, dim: d }, gens)
        }
        "perm" => {
            let deg = next_int("degree")?;
            let k = next_int("generator count")?;
            if deg < 1 || k < 1 {
                return Err(Error::Parse(format!("unsupported degree {deg} or count {k}")));
            }
            let mut gens = Vec::new();
            for g in 0..k {
                let mut img = Vec::with_capacity(deg as usize);
                for i in 0..deg {
                    let v = next_int(&format!("generator {g} image {i}"))?;
                    if v < 0 || v >= deg {
                        return Err(Error::Parse(format!("image {v} out of range")));
                    }
                    img.push(v as u32);
                }
                gens.push(GroupElement::Perm(img.into()));
            }
            (Domain::Permutation { degree: deg as usize }, gens)
        }
        other => return Err(Error::Parse(format!("unknown header {other:?}"))),
    };
    if tokens.next().is_some() {
        return Err(Error::Parse("trailing data after the last generator".into()));
    }
    for g in &parsed.1 {
        parsed.0.validate(g).map_err(|e| Error::Parse(e.to_string()))?;
    }
    Ok(parsed)
}

/// Builds J1 from generator text, gated on the group order.
pub fn j1_from_text(text: &str) -> Result<FiniteGroup> {
    let (domain, gens) = parse_generators(text)?;
    let g = match FiniteGroup::from_generators("J1", domain, &gens, 4 * J1_ORDER) {
        Err(Error::ClosureBudgetExceeded(_)) => {
            return Err(Error::WrongOrder { actual: 4 * J1_ORDER, expected: J1_ORDER })
        }
        other => other?,
    };
    check_order(g, J1_ORDER as u64)
}

pub fn load_j1(path: &Path) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    j1_from_text(&text)
}

/// Isomorphism-type label of a subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IsoLabel {
    Cyclic(u64),
    ElemAbelian(u64, u32),
    Dihedral(u64),
    A4,
    S4,
    A5,
    /// Sylow 2-subgroup shape of a Suzuki group, `E_q.E_q`.
    SylowSz,
    /// Frobenius group with kernel order k and complement order h.
    Frobenius(u64, u64),
    /// Split extension of a normal Hall subgroup of order k whose action
    /// has fixed points.
    SemiDirect(u64, u64),
    Other(u64),
}

impl IsoLabel {
    /// Folds degenerate dihedral orders onto their abelian names.
    pub fn dihedral(order: u64) -> IsoLabel {
        match order {
            2 => IsoLabel::Cyclic(2),
            4 => IsoLabel::ElemAbelian(2, 2),
            n => IsoLabel::Dihedral(n),
        }
    }
}

impl fmt::Display for IsoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoLabel::Cyclic(d) => write!(f, "Cyclic({d})"),
            IsoLabel::ElemAbelian(p, j) => write!(f, "ElemAbelian({p},{j})"),
            IsoLabel::Dihedral(n) => write!(f, "Dihedral({n})"),
            IsoLabel::A4 => write!(f, "A4"),
            IsoLabel::S4 => write!(f, "S4"),
            IsoLabel::A5 => write!(f, "A5"),
            IsoLabel::SylowSz => write!(f, "SylowSz"),
            IsoLabel::Frobenius(k, h) => write!(f, "Frobenius({k}:{h})"),
            IsoLabel::SemiDirect(k, h) => write!(f, "SemiDirect({k}:{h})"),
            IsoLabel::Other(h) => write!(f, "Other({h:016x})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoFingerprint {
    pub order: u64,
    pub abelian: bool,
    pub elem_orders: BTreeMap<u32, usize>,
    pub label: IsoLabel,
}

fn fnv1a(data: impl IntoIterator<Item = u64>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for x in data {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn multiset(pairs: &[(u32, usize)]) -> BTreeMap<u32, usize> {
    pairs.iter().copied().collect()
}

pub fn fingerprint(g: &FiniteGroup, h: &Subgroup) -> IsoFingerprint {
    let order = h.order() as u64;
    let mut elem_orders = BTreeMap::new();
    for &x in h.members() {
        *elem_orders.entry(g.element_order(x)).or_insert(0usize) += 1;
    }
    let gens = h.generators();
    let abelian = gens
        .iter()
        .enumerate()
        .all(|(i, &a)| gens[i + 1..].iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    let label = label_of(g, h, order, abelian, &elem_orders);
    IsoFingerprint { order, abelian, elem_orders, label }
}

fn label_of(
    g: &FiniteGroup,
    h: &Subgroup,
    order: u64,
    abelian: bool,
    elem_orders: &BTreeMap<u32, usize>,
) -> IsoLabel {
    if elem_orders.contains_key(&(order as u32)) {
        return IsoLabel::Cyclic(order);
    }
    if let Some((p, j)) = prime_power(order) {
        if abelian && elem_orders.len() == 2 && elem_orders.contains_key(&(p as u32)) {
            return IsoLabel::ElemAbelian(p, j);
        }
    }
    let other = IsoLabel::Other(fnv1a(
        std::iter::once(order).chain(elem_orders.iter().flat_map(|(&k, &v)| [k as u64, v as u64])),
    ));
    if h.order() > FINGERPRINT_MAX {
        return other;
    }
    if !abelian && order % 2 == 0 && order >= 6 {
        let d = (order / 2) as u32;
        if let Some(&a) = h.members().iter().find(|&&x| g.element_order(x) == d) {
            let rot = g.cyclic(a);
            if h.members().iter().all(|&x| rot.contains(x) || g.element_order(x) == 2) {
                return IsoLabel::Dihedral(order);
            }
        }
    }
    match order {
        12 if *elem_orders == multiset(&[(1, 1), (2, 3), (3, 8)]) => return IsoLabel::A4,
        24 if *elem_orders == multiset(&[(1, 1), (2, 9), (3, 8), (4, 6)]) => return IsoLabel::S4,
        60 if *elem_orders == multiset(&[(1, 1), (2, 15), (3, 20), (5, 24)]) => return IsoLabel::A5,
        _ => {}
    }
    if let Some((2, e)) = prime_power(order) {
        if !abelian && e % 2 == 0 && (e / 2) % 2 == 1 && e >= 6 {
            let root = 1usize << (e / 2);
            let inv = elem_orders.get(&2).copied().unwrap_or(0);
            let ord4 = elem_orders.get(&4).copied().unwrap_or(0);
            if inv == root - 1 && ord4 == h.order() - root {
                let center = h
                    .members()
                    .iter()
                    .filter(|&&x| gens_commute(g, h, x))
                    .count();
                if center == root {
                    return IsoLabel::SylowSz;
                }
            }
        }
    }
    if let Some(l) = hall_split(g, h, order) {
        return l;
    }
    other
}

fn gens_commute(g: &FiniteGroup, h: &Subgroup, x: ElemId) -> bool {
    h.generators().iter().all(|&y| g.mul(x, y) == g.mul(y, x))
}

/// Smallest normal Hall subgroup `K = {x : x^k = 1}` with `|K| = k`, then
/// Frobenius when every element outside K centralizes only the identity of K.
fn hall_split(g: &FiniteGroup, h: &Subgroup, order: u64) -> Option<IsoLabel> {
    for k in 2..order {
        let c = order / k;
        if order % k != 0 || gcd(k, c) != 1 {
            continue;
        }
        let kernel: Vec<ElemId> = h
            .members()
            .iter()
            .copied()
            .filter(|&x| k % g.element_order(x) as u64 == 0)
            .collect();
        if kernel.len() as u64 != k {
            continue;
        }
        let closed = kernel
            .iter()
            .all(|&a| kernel.iter().all(|&b| kernel.binary_search(&g.mul(a, b)).is_ok()));
        if !closed {
            continue;
        }
        let fpf = h.members().iter().filter(|x| kernel.binary_search(x).is_err()).all(|&x| {
            kernel[1..].iter().all(|&y| g.mul(x, y) != g.mul(y, x))
        });
        return Some(if fpf { IsoLabel::Frobenius(k, c) } else { IsoLabel::SemiDirect(k, c) });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regimes() {
        assert_eq!(psl2_regime(8).unwrap(), Regime::PhQ2 { n: 3 });
        assert_eq!(psl2_regime(32).unwrap(), Regime::PhQ2 { n: 5 });
        assert_eq!(psl2_regime(27).unwrap(), Regime::PhQ3 { n: 3 });
        assert_eq!(psl2_regime(7).unwrap(), Regime::PhE);
        assert_eq!(psl2_regime(17).unwrap(), Regime::PhE);
        assert_eq!(psl2_regime(19).unwrap(), Regime::PhPpm3);
        assert_eq!(psl2_regime(29).unwrap(), Regime::PhPpm3);
        assert_eq!(psl2_regime(31).unwrap(), Regime::NprP2);
        assert!(matches!(psl2_regime(13), Err(Error::UnknownRegime(_))));
        assert!(matches!(psl2_regime(16), Err(Error::UnknownRegime(_))));
        assert!(matches!(psl2_regime(9), Err(Error::UnknownRegime(_))));
        assert!(matches!(psl2_regime(12), Err(Error::InvalidQ(_))));
        assert_eq!(sz_regime(8).unwrap(), Regime::SzPrimeExponent { n: 1 });
        assert_eq!(sz_regime(32).unwrap(), Regime::SzPrimeExponent { n: 2 });
        assert!(matches!(sz_regime(512), Err(Error::UnknownRegime(_))));
        assert!(matches!(sz_regime(16), Err(Error::InvalidQ(_))));
        assert!(matches!(sz_regime(2), Err(Error::InvalidQ(_))));
    }

    #[test]
    fn psl_orders() {
        for (q, n) in [(7u64, 168usize), (8, 504), (4, 60), (5, 60)] {
            let g = build_psl2(Arc::new(field_of_order(q).unwrap())).unwrap();
            assert_eq!(g.order(), n, "q = {q}");
        }
        assert!(matches!(
            build_psl2(Arc::new(field_of_order(37).unwrap())),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn suzuki_u_is_m_1_0() {
        let m = SuzukiModel::new(Arc::new(field_of_order(8).unwrap())).unwrap();
        assert_eq!(m.u(), m.m(FieldElement::ONE, FieldElement::ZERO));
        assert_eq!(m.theta(), 4);
        assert_eq!(m.m_pm(), (13, 5));
        assert!(SuzukiModel::new(Arc::new(field_of_order(16).unwrap())).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_generators(""), Err(Error::Parse(_))));
        assert!(matches!(parse_generators("matrix 11 2 1\n1 0\n0"), Err(Error::Parse(_))));
        assert!(matches!(parse_generators("matrix 10 2 1\n1 0 0 1"), Err(Error::Parse(_))));
        assert!(matches!(parse_generators("matrix 11 2 1\n1 1 1 1"), Err(Error::Parse(_))));
        assert!(matches!(parse_generators("perm 3 1\n0 0 1"), Err(Error::Parse(_))));
        assert!(matches!(parse_generators("perm 3 1\n1 2 0 5"), Err(Error::Parse(_))));
        assert!(matches!(parse_generators("braid 3 1"), Err(Error::Parse(_))));
        let (d, g) = parse_generators("perm 3 2\n1 2 0\n1 0 2\n").unwrap();
        assert!(matches!(d, Domain::Permutation { degree: 3 }));
        assert_eq!(g.len(), 2);
        let (_, g) = parse_generators("matrix 11 2 1\n-1 0\n0 -1\n").unwrap();
        assert_eq!(g[0], GroupElement::Mat(vec![FieldElement(10), FieldElement(0), FieldElement(0), FieldElement(10)].into()));
    }

    #[test]
    fn wrong_order_gate() {
        // S3 is not J1
        assert!(matches!(
            j1_from_text("perm 3 2\n1 2 0\n1 0 2\n"),
            Err(Error::WrongOrder { actual: 6, expected: J1_ORDER })
        ));
    }

    #[test]
    fn labels_in_psl27() {
        let g = build_psl2(Arc::new(field_of_order(7).unwrap())).unwrap();
        let whole = g.whole();
        let fp = fingerprint(&g, &whole);
        assert_eq!(fp.order, 168);
        assert!(matches!(fp.label, IsoLabel::Other(_)));
        let inv = g.ids().find(|&x| g.element_order(x) == 2).unwrap();
        assert_eq!(fingerprint(&g, &g.cyclic(inv)).label, IsoLabel::Cyclic(2));
        assert_eq!(fingerprint(&g, &g.trivial_subgroup()).label, IsoLabel::Cyclic(1));
    }

    #[test]
    fn dihedral_normalization() {
        assert_eq!(IsoLabel::dihedral(2), IsoLabel::Cyclic(2));
        assert_eq!(IsoLabel::dihedral(4), IsoLabel::ElemAbelian(2, 2));
        assert_eq!(IsoLabel::dihedral(8), IsoLabel::Dihedral(8));
    }
}

