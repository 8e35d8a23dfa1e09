//! Exhaustive identity checks: field axioms and the Suzuki matrix identities.

use serde::Serialize;

use crate::builders::SuzukiModel;
use crate::gf::{FieldCtx, FieldElement};
use crate::group::{conjugate_elem, GroupElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
}

fn check(name: impl Into<String>, cases: u64, passed: bool) -> IdentityCheck {
    IdentityCheck { name: name.into(), passed, cases }
}

/// Field axioms over all triples, plus inverses and Fermat's identity.
pub fn field_axioms(f: &FieldCtx) -> Vec<IdentityCheck> {
    let els: Vec<FieldElement> = f.elements().collect();
    let q = f.order() as u64;
    let (mut comm, mut assoc, mut dist) = (true, true, true);
    for &a in &els {
        for &b in &els {
            comm &= f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
            for &c in &els {
                assoc &= f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                    && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
                dist &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
            }
        }
    }
    let inverses = els.iter().all(|&a| {
        f.add(a, f.neg(a)) == FieldElement::ZERO
            && (a.is_zero() || f.mul(a, f.inv(a).unwrap()) == FieldElement::ONE)
    });
    let fermat = els
        .iter()
        .filter(|a| !a.is_zero())
        .all(|&a| f.pow(a, q as i64 - 1).unwrap() == FieldElement::ONE);
    let label = |s: &str| format!("GF({q}) {s}");
    vec![
        check(label("commutativity"), q * q, comm),
        check(label("associativity"), q * q * q, assoc),
        check(label("distributivity"), q * q * q, dist),
        check(label("inverses"), q, inverses),
        check(label("a^(q-1) = 1"), q - 1, fermat),
    ]
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The conjugation, orbit and theta identities of the Suzuki model, each
/// checked on every field element and every torus exponent.
pub fn suzuki_identities(model: &SuzukiModel) -> Vec<IdentityCheck> {
    let f = model.field();
    let d = model.domain();
    let q = model.q();
    let theta = model.theta();
    let alpha = f.primitive_element();
    let els: Vec<FieldElement> = f.elements().collect();
    let pw = |x: FieldElement, k: i64| f.pow(x, k).expect("nonzero base");
    let t_pow = |j: i64| model.t(pw(alpha, j));
    let conj = |h: &GroupElement, g: &GroupElement| conjugate_elem(&d, h, g).expect("invertible");
    let z = FieldElement::ZERO;
    let label = |s: &str| format!("Sz({q}) {s}");
    let mut out = Vec::new();

    let theta_sq = els.iter().all(|&x| pw(pw(x, theta), theta) == f.mul(x, x));
    out.push(check(label("(x^theta)^theta = x^2"), q, theta_sq));
    out.push(check(label("gcd(theta, q-1) = 1"), 1, gcd(theta as u64, q - 1) == 1));
    out.push(check(label("gcd(theta-2, q-1) = 1"), 1, gcd(theta as u64 - 2, q - 1) == 1));
    out.push(check(label("U = M(1,0)"), 1, model.u() == model.m(FieldElement::ONE, z)));

    let mut centre_conj = true;
    let mut axis_conj = true;
    for j in 0..(q as i64 - 1) {
        let t = t_pow(j);
        let scale = pw(alpha, theta * j);
        let axis = pw(alpha, j * (2 - theta));
        for &mu in &els {
            centre_conj &= conj(&model.m(z, mu), &t) == model.m(z, f.mul(mu, scale));
            axis_conj &= conj(&model.m(mu, z), &t) == model.m(f.mul(axis, mu), z);
        }
    }
    let cases = q * (q - 1);
    out.push(check(label("T(a^j)^-1 M(0,mu) T(a^j) = M(0, mu a^(theta j))"), cases, centre_conj));
    out.push(check(label("T(a^j)^-1 M(tau,0) T(a^j) = M(a^(j(2-theta)) tau, 0)"), cases, axis_conj));

    let mut punctured: Vec<GroupElement> = els.iter().filter(|b| !b.is_zero()).map(|&b| model.m(z, b)).collect();
    punctured.sort();
    let orbit_ok = (0..(q as i64 - 1)).all(|i| {
        let m = model.m(z, pw(alpha, i));
        let mut orbit: Vec<GroupElement> = (0..(q as i64 - 1)).map(|j| conj(&m, &t_pow(j))).collect();
        orbit.sort();
        orbit.dedup();
        orbit == punctured
    });
    out.push(check(label("torus orbit of M(0,a^i) = Z(S) minus identity"), (q - 1) * (q - 1), orbit_ok));

    let sylow = model.sylow_elements();
    let mut sorted = sylow.clone();
    sorted.sort();
    let closed = sylow.iter().all(|a| sylow.iter().all(|b| sorted.binary_search(&d.mul(a, b)).is_ok()));
    out.push(check(label("{M(a,b)} closed under products"), q.pow(4), closed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_of_order;
    use std::sync::Arc;

    #[test]
    fn small_fields_pass() {
        for q in [2, 3, 4, 5, 8, 9] {
            let f = field_of_order(q).unwrap();
            assert!(field_axioms(&f).iter().all(|c| c.passed), "GF({q})");
        }
    }

    #[test]
    fn suzuki_gf8() {
        let model = SuzukiModel::new(Arc::new(field_of_order(8).unwrap())).unwrap();
        for c in suzuki_identities(&model) {
            assert!(c.passed, "{}", c.name);
        }
    }
}
