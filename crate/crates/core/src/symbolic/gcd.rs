//! Multivariate gcd over Q by recursive content / primitive-part reduction.
//!
//! Inputs are Laurent polynomials; results are normalized to have trivial
//! monomial content and leading coefficient 1, so the gcd is determined up to
//! the units of the Laurent ring in which the monomial content is split off.

use super::poly::{Coeff, Poly};
use super::var::Var;

/// Gcd of the non-monomial parts of `a` and `b`, monic, with trivial monomial content.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let (a, _) = a.strip_mono_content();
    let (b, _) = b.strip_mono_content();
    gcd_stripped(&a, &b)
}

fn normalize(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let (s, _) = p.strip_mono_content();
    s.monic().0
}

fn gcd_stripped(a: &Poly, b: &Poly) -> Poly {
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Poly::one();
    }
    if a == b {
        return a.monic().0;
    }
    if a.div_exact(b).is_some() {
        return b.monic().0;
    }
    if b.div_exact(a).is_some() {
        return a.monic().0;
    }
    let va = a.vars();
    let vb = b.vars();
    let common: Vec<Var> = va.intersection(&vb).copied().collect();
    if common.is_empty() {
        return Poly::one();
    }
    // Variables private to one side can only appear in the gcd through contents.
    let only_a: Vec<Var> = va.difference(&vb).copied().collect();
    let only_b: Vec<Var> = vb.difference(&va).copied().collect();
    if !only_a.is_empty() {
        let ca = content_wrt(a, &only_a);
        return gcd(&ca, b);
    }
    if !only_b.is_empty() {
        let cb = content_wrt(b, &only_b);
        return gcd(a, &cb);
    }
    // Main variable: smallest combined degree keeps pseudo-remainders small.
    let v = *common
        .iter()
        .min_by_key(|&&v| (a.max_exp(v) + b.max_exp(v), v))
        .expect("nonempty");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, v);
    let (r, _) = c.mul(&g).strip_mono_content();
    r.monic().0
}

/// Gcd of the coefficients of `p` viewed as a polynomial in the listed variables.
fn content_wrt(p: &Poly, vars: &[Var]) -> Poly {
    let mut groups: std::collections::BTreeMap<Vec<i32>, Vec<(super::mono::Mono, Coeff)>> =
        std::collections::BTreeMap::new();
    for (m, c) in p.terms() {
        let key: Vec<i32> = vars.iter().map(|&v| m.exp(v)).collect();
        groups.entry(key).or_default().push((m.filter(|w| !vars.contains(&w)), c.clone()));
    }
    let mut g = Poly::zero();
    for (_, ts) in groups {
        g = gcd(&g, &Poly::from_terms(ts));
        if g.as_constant().is_some() {
            return Poly::one();
        }
    }
    g
}

fn content_in(p: &Poly, v: Var) -> Poly {
    let mut g = Poly::zero();
    for (_, c) in p.coefficients_in(v) {
        g = gcd(&g, &c);
        if g.as_constant().is_some() {
            return Poly::one();
        }
    }
    g
}

fn primitive_part_in(p: &Poly, v: Var) -> Poly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides")
}

fn degree_in(p: &Poly, v: Var) -> i32 {
    p.max_exp(v)
}

/// Pseudo-remainder of `a` by `b` with respect to `v` (both polynomial in `v`).
fn prem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let db = degree_in(b, v);
    let lb = b.coefficient(v, db);
    let mut r = a.clone();
    while !r.is_zero() && degree_in(&r, v) >= db {
        let dr = degree_in(&r, v);
        let lr = r.coefficient(v, dr);
        let shift = super::mono::Mono::pow_of(v, dr - db);
        r = r.mul(&lb).sub(&b.mul(&lr).mul_mono(&shift));
    }
    r
}

fn primitive_prs(a: Poly, b: Poly, v: Var) -> Poly {
    let (mut a, mut b) = if degree_in(&a, v) >= degree_in(&b, v) { (a, b) } else { (b, a) };
    loop {
        if b.is_zero() {
            return a;
        }
        if degree_in(&b, v) == 0 {
            return Poly::one();
        }
        let r = prem(&a, &b, v);
        a = b;
        b = if r.is_zero() { r } else { primitive_part_in(&r.strip_mono_content().0, v) };
    }
}
