//! Splitting denominators into factors.
//!
//! Denominators met in practice are products of Laurent binomials `1 - c*q^beta`
//! (possibly with `hbar` powers mixed in after the Toda substitution). Those
//! split completely into cyclotomic pieces which are irreducible, so numerator
//! cancellation only needs trial division. Anything else becomes an opaque
//! factor, for which cancellation goes through a full gcd.

use super::gcd::gcd;
use super::mono::Mono;
use super::poly::{Coeff, Poly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// A monic, nonconstant denominator factor with trivial monomial content.
#[derive(Clone, Debug)]
pub struct Factor {
    pub poly: Arc<Poly>,
    /// Known irreducible; otherwise only squarefree-agnostic and checked by gcd.
    pub irreducible: bool,
}

impl Factor {
    pub fn new(poly: Poly, irreducible: bool) -> Factor {
        Factor { poly: Arc::new(poly), irreducible }
    }

    pub fn same(&self, other: &Factor) -> bool {
        Arc::ptr_eq(&self.poly, &other.poly) || *self.poly == *other.poly
    }
}

/// `p = c * m * prod(f_i)` with each `f_i` monic and free of monomial content.
pub struct Split {
    pub constant: Coeff,
    pub mono: Mono,
    pub factors: Vec<Factor>,
}

pub fn split(p: &Poly) -> Split {
    assert!(!p.is_zero(), "cannot split the zero polynomial");
    let (p1, m) = p.strip_mono_content();
    if let Some(c) = p1.as_constant() {
        return Split { constant: c, mono: m, factors: Vec::new() };
    }
    let (p2, lc) = p1.monic();
    let mut factors = Vec::new();
    factor_monic(p2, &mut factors);
    Split { constant: lc, mono: m, factors }
}

fn push_normalized(p: Poly, out: &mut Vec<Factor>) -> Coeff {
    let (p1, _) = p.strip_mono_content();
    let (p2, lc) = p1.monic();
    if p2.as_constant().is_none() {
        factor_monic(p2, out);
    }
    lc
}

fn factor_monic(p: Poly, out: &mut Vec<Factor>) {
    if p.len() == 2 {
        binomial(p, out);
        return;
    }
    // Degree one in some variable: irreducible exactly when the two
    // coefficients are coprime.
    for v in p.vars() {
        if p.max_exp(v) == 1 && p.min_exp(v) == 0 {
            let a = p.coefficient(v, 1);
            let b = p.coefficient(v, 0);
            let g = gcd(&a, &b);
            if g.as_constant().is_some() {
                out.push(Factor::new(p, true));
            } else {
                let rest = p.div_exact(&g).expect("gcd divides");
                push_normalized(g, out);
                push_normalized(rest, out);
            }
            return;
        }
    }
    for v in p.vars() {
        let parts = p.coefficients_in(v);
        if parts.len() < 2 {
            continue;
        }
        let mut g = Poly::zero();
        for c in parts.values() {
            g = gcd(&g, c);
            if g.as_constant().is_some() {
                break;
            }
        }
        if g.as_constant().is_none() {
            let rest = p.div_exact(&g).expect("content divides");
            push_normalized(g, out);
            push_normalized(rest, out);
            return;
        }
    }
    out.push(Factor::new(p, false));
}

/// Factors a monic binomial `M1 + c*M2`.
fn binomial(p: Poly, out: &mut Vec<Factor>) {
    let (m1, _) = p.terms()[0].clone();
    let (m2, c2) = p.terms()[1].clone();
    // p = M1 * (1 - a*y) with y = M2/M1.
    let a = -c2;
    let gamma = m2.div(&m1);
    let d = gamma.pairs().iter().fold(0u32, |g, &(_, e)| g.gcd(&e.unsigned_abs()));
    if d <= 1 {
        out.push(Factor::new(p, true));
        return;
    }
    let z = Mono::from_pairs(gamma.pairs().iter().map(|&(v, e)| (v, e / d as i32)));
    // 1 - a z^d: split when a = b^d or a = -b^d with d odd, or a = -b^d with
    // the sum-of-powers pattern; otherwise keep the binomial whole.
    if let Some(b) = rational_root(&a, d) {
        for e in divisors(d) {
            emit_cyclotomic(e, &b, &z, out);
        }
        return;
    }
    if let Some(b) = rational_root(&(-a.clone()), d) {
        // 1 + (b z)^d = prod over e | 2d, e not dividing d, of Phi_e(b z).
        for e in divisors(2 * d) {
            if d % e != 0 {
                emit_cyclotomic(e, &b, &z, out);
            }
        }
        return;
    }
    out.push(Factor::new(p, false));
}

fn emit_cyclotomic(e: u32, b: &Coeff, z: &Mono, out: &mut Vec<Factor>) {
    let phi = cyclotomic(e);
    let mut terms = Vec::new();
    let mut bk = Coeff::one();
    for (k, c) in phi.iter().enumerate() {
        if !c.is_zero() {
            terms.push((z.pow(k as i32), BigRational::from_integer(c.clone()) * &bk));
        }
        bk *= b;
    }
    let poly = Poly::from_terms(terms);
    let (p1, _) = poly.strip_mono_content();
    let (p2, _) = p1.monic();
    // Phi_e evaluated at a primitive Laurent monomial stays irreducible.
    out.push(Factor::new(p2, true));
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Integer coefficients of the cyclotomic polynomial, lowest degree first.
pub fn cyclotomic(n: u32) -> Vec<BigInt> {
    let n = n as usize;
    // z^n - 1
    let mut poly = vec![BigInt::zero(); n + 1];
    poly[0] = -BigInt::one();
    poly[n] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            poly = div_monic(&poly, &cyclotomic(d as u32));
        }
    }
    poly
}

fn div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let dq = r.len() - 1 - db;
    let mut q = vec![BigInt::zero(); dq + 1];
    for i in (0..=dq).rev() {
        let c = r[i + db].clone();
        q[i] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

fn rational_root(a: &Coeff, d: u32) -> Option<Coeff> {
    if a.is_negative() && d % 2 == 0 {
        return None;
    }
    let root = |x: &BigInt| -> Option<BigInt> {
        let r = x.abs().nth_root(d);
        if num_traits::pow::pow(r.clone(), d as usize) == x.abs() {
            Some(if x.is_negative() { -r } else { r })
        } else {
            None
        }
    };
    Some(BigRational::new(root(a.numer())?, root(a.denom())?))
}
