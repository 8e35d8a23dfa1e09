//! Exact arithmetic in GF(p^n) with elements stored in a polynomial basis.
//!
//! A [`FieldElement`] packs its coefficient vector `(c_0, .., c_{n-1})` into
//! the integer `c_0 + c_1 p + .. + c_{n-1} p^{n-1}`. The integer order is the
//! lexicographic order on coefficient vectors read from the highest degree
//! down, and it is the total order used everywhere a canonical choice is made
//! (default modulus, primitive element, projective canonical forms).

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest field order for which addition and multiplication tables are built.
pub const MAX_FIELD_ORDER: u32 = 1024;

/// An element of a finite field, meaningful only together with its [`FieldCtx`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn value(self) -> u32 {
        self.0 as u32
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Polynomial over GF(p), coefficients low-to-high.
type Poly = Vec<u32>;

/// A validated finite field GF(p^n).
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    n: u32,
    q: u32,
    modulus: Poly,
    primitive: FieldElement,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

/// Selects the field modulus in [`make_field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Modulus {
    /// Lexicographically least monic irreducible polynomial of the degree.
    Default,
    /// Explicit monic polynomial, coefficients low-to-high (length `n + 1`).
    Explicit(Vec<u32>),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q` as `p^n` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut m = q;
    let mut n = 0;
    while m % p == 0 {
        m /= p;
        n += 1;
    }
    (m == 1).then_some((p, n))
}

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let dm = degree(m).expect("modulus is nonzero");
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let lead = r[dr];
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = (lead as u64 * c as u64 % p as u64) as u32;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Monic polynomial of degree `d` whose lower coefficients are the base-`p`
/// digits of `index`.
fn monic_from_index(index: u64, d: usize, p: u32) -> Poly {
    let mut coeffs = Vec::with_capacity(d + 1);
    let mut v = index;
    for _ in 0..d {
        coeffs.push((v % p as u64) as u32);
        v /= p as u64;
    }
    coeffs.push(1);
    coeffs
}

/// Irreducibility by trial division against every monic polynomial of degree
/// `1..=deg/2`.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let Some(d) = degree(m) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    for dd in 1..=d / 2 {
        let count = (p as u64).pow(dd as u32);
        for idx in 0..count {
            let f = monic_from_index(idx, dd, p);
            if degree(&poly_rem(m, &f, p)).is_none() {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// All field elements in canonical (packed integer) order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(|v| FieldElement(v as u16))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut v = a.value();
        (0..self.n)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidInput(format!(
                "coefficient vector {coeffs:?} is not an element of GF({})",
                self.q
            )));
        }
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            v = v * self.p + c;
        }
        Ok(FieldElement(v as u16))
    }

    /// Embeds the integer `k` through the prime subfield.
    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(k.rem_euclid(self.p as i64) as u16)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement(self.inv[a.0 as usize]))
    }

    /// `a^k` by square-and-multiply; negative `k` goes through the inverse.
    pub fn pow(&self, a: FieldElement, k: i64) -> Result<FieldElement> {
        let base = if k < 0 { self.inv(a)? } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = FieldElement::ONE;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElement) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut x = a;
        let mut k = 1;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        Ok(k)
    }

    /// Product computed directly by polynomial multiplication and reduction,
    /// bypassing the tables.
    pub fn mul_reduce(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let prod = poly_mul(&trim(self.coeffs(a)), &trim(self.coeffs(b)), self.p);
        let r = poly_rem(&prod, &self.modulus, self.p);
        let mut v = 0u32;
        for &c in r.iter().rev() {
            v = v * self.p + c;
        }
        FieldElement(v as u16)
    }
}

/// Builds GF(p^n). See [`Modulus`] for the choice of defining polynomial; the
/// primitive element is the least element (in canonical order) of
/// multiplicative order `p^n - 1`.
pub fn make_field(p: u32, n: u32, modulus: Modulus) -> Result<FieldCtx> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if n == 0 {
        return Err(Error::InvalidInput("field degree must be positive".into()));
    }
    let q64 = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
    if q64 > MAX_FIELD_ORDER as u64 {
        return Err(Error::CapExceeded(format!(
            "field order {p}^{n} exceeds {MAX_FIELD_ORDER}"
        )));
    }
    let q = q64 as u32;
    let modulus = match modulus {
        Modulus::Default => (0..(p as u64).pow(n))
            .map(|idx| monic_from_index(idx, n as usize, p))
            .find(|m| is_irreducible(m, p))
            .ok_or(Error::ReduciblePolynomial)?,
        Modulus::Explicit(m) => {
            if m.len() != n as usize + 1 || m[n as usize] != 1 || m.iter().any(|&c| c >= p) {
                return Err(Error::InvalidInput(format!(
                    "modulus {m:?} is not a monic polynomial of degree {n} over GF({p})"
                )));
            }
            if !is_irreducible(&m, p) {
                return Err(Error::ReduciblePolynomial);
            }
            m
        }
    };

    let mut ctx = FieldCtx {
        p,
        n,
        q,
        modulus,
        primitive: FieldElement::ONE,
        add: vec![0; (q * q) as usize],
        mul: vec![0; (q * q) as usize],
        neg: vec![0; q as usize],
        inv: vec![0; q as usize],
    };
    for a in 0..q {
        let ca = ctx.coeffs(FieldElement(a as u16));
        let na: Vec<u32> = ca.iter().map(|&c| (p - c) % p).collect();
        ctx.neg[a as usize] = ctx.from_coeffs(&na)?.0;
        for b in 0..q {
            let cb = ctx.coeffs(FieldElement(b as u16));
            let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
            let idx = (a * q + b) as usize;
            ctx.add[idx] = ctx.from_coeffs(&s)?.0;
            ctx.mul[idx] = ctx.mul_reduce(FieldElement(a as u16), FieldElement(b as u16)).0;
        }
    }
    for a in 1..q {
        let inv = (1..q)
            .find(|&b| ctx.mul[(a * q + b) as usize] == 1)
            .ok_or_else(|| Error::Internal(format!("element {a} has no inverse")))?;
        ctx.inv[a as usize] = inv as u16;
    }
    ctx.primitive = (1..q)
        .map(|v| FieldElement(v as u16))
        .find(|&a| ctx.mult_order(a).ok() == Some(q - 1))
        .ok_or(Error::NoPrimitiveFound)?;
    Ok(ctx)
}

/// GF(q) with default modulus, for a prime power `q`.
pub fn field_of_order(q: u64) -> Result<FieldCtx> {
    let (p, n) = prime_power(q).ok_or_else(|| Error::InvalidQ(format!("{q} is not a prime power")))?;
    make_field(p as u32, n, Modulus::Default)
}
