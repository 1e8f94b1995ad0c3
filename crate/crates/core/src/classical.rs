//! Explicit matrices `M(chi)` and `A(chi)` for the classical families, their
//! characteristic coefficients `E_k`, the matching formula and the
//! determinant identities behind the presentations.

use crate::error::{domain, Result};
use crate::qh_stable::delta_class_shift;
use crate::report::VerifyReport;
use crate::rootdata::{Family, RootSystem, Weight};
use crate::symbolic::rat::over_one_minus;
use crate::symbolic::{Mono, Poly, RatExpr, SymMatrix, Var};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

fn hbar() -> RatExpr {
    RatExpr::var(Var::HBAR)
}

fn q(i: usize) -> Mono {
    Mono::var(Var::q(i))
}

fn qpow(pairs: &[(usize, i32)]) -> Mono {
    Mono::from_pairs(pairs.iter().map(|&(i, e)| (Var::q(i), e)))
}

/// `c * hbar / (1 - m)`.
fn hbar_over(c: i64, m: &Mono) -> RatExpr {
    over_one_minus(hbar().scale_int(c), m)
}

pub fn chi(i: usize) -> RatExpr {
    RatExpr::var(Var::chi(i))
}

/// `t_i = -eps_i`.
pub fn t(i: usize) -> RatExpr {
    RatExpr::var(Var::eps(i)).neg()
}

fn check_rank(family: Family, n: usize) -> Result<()> {
    match (family, n) {
        (_, 0) => domain("rank must be positive"),
        (Family::D, 1) => domain("type D needs rank >= 2"),
        _ => Ok(()),
    }
}

/// `M(chi) = Theta(-e_1)` with the diagonal written in the symbols `chi_i`.
pub fn m_chi(family: Family, n: usize) -> Result<SymMatrix> {
    check_rank(family, n)?;
    let upper_left = |i: usize, j: usize| if i == j { chi(i) } else { hbar_over(1, &qpow(&[(i, 1), (j, -1)])) };
    if family == Family::A {
        return Ok(SymMatrix::from_fn(n, |i, j| upper_left(i + 1, j + 1)));
    }
    let p = match family {
        Family::B => 2,
        _ => 1,
    };
    let d = family == Family::D;
    Ok(SymMatrix::from_fn(2 * n, |r, c| {
        let (top, i) = if r < n { (true, r + 1) } else { (false, r - n + 1) };
        let (left, j) = if c < n { (true, c + 1) } else { (false, c - n + 1) };
        let anti = i + j == n + 1;
        match (top, left) {
            (true, true) => upper_left(i, j),
            (true, false) if anti => {
                if d {
                    RatExpr::zero()
                } else {
                    hbar_over(p, &q(i).pow(p as i32))
                }
            }
            (true, false) => hbar_over(1, &qpow(&[(i, 1), (n + 1 - j, 1)])),
            (false, true) if anti => {
                if d {
                    RatExpr::zero()
                } else {
                    hbar_over(p, &q(j).pow(-(p as i32)))
                }
            }
            (false, true) => hbar_over(1, &qpow(&[(n + 1 - i, -1), (j, -1)])),
            (false, false) if i == j => chi(n + 1 - i).neg(),
            (false, false) => hbar_over(1, &qpow(&[(n + 1 - j, 1), (n + 1 - i, -1)])),
        }
    }))
}

/// `A(chi)` of type `D_n`, or `A(-chi)` when `negate_chi` is set.
fn a_matrix(n: usize, negate_chi: bool) -> Result<SymMatrix> {
    if n < 2 {
        return domain("A(chi) needs n >= 2");
    }
    Ok(SymMatrix::from_fn(n, |i, j| {
        let (i, j) = (i + 1, j + 1);
        if i == j {
            return if negate_chi { chi(i).neg() } else { chi(i) };
        }
        let one = Poly::one();
        let num = one.sub(&Poly::var(Var::q(i))).mul(&one.add(&Poly::var(Var::q(j))));
        let den = one
            .sub(&Poly::mono(qpow(&[(i, 1), (j, -1)])))
            .mul(&one.sub(&Poly::mono(qpow(&[(i, 1), (j, 1)]))));
        RatExpr::from_parts(num, &den).expect("nonzero denominator").mul(&hbar())
    }))
}

pub fn a_chi(n: usize) -> Result<SymMatrix> {
    a_matrix(n, false)
}

pub fn a_chi_negated(n: usize) -> Result<SymMatrix> {
    a_matrix(n, true)
}

/// `[E_1, ..., E_dim]` with `det(y + M(chi)) = y^dim + E_1 y^{dim-1} + ...`.
///
/// Memoized per process: the odd-vanishing and presentation checks share them.
pub fn elementary_e(family: Family, n: usize) -> Result<Vec<RatExpr>> {
    static MEMO: OnceLock<Mutex<HashMap<(Family, usize), Vec<RatExpr>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(es) = memo.lock().expect("memo lock").get(&(family, n)) {
        return Ok(es.clone());
    }
    let es = m_chi(family, n)?.char_poly();
    memo.lock().expect("memo lock").insert((family, n), es.clone());
    Ok(es)
}

/// An involution on a subset `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub fixed: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn is_perfect(&self) -> bool {
        self.fixed.is_empty()
    }

    pub fn apply(&self, i: usize) -> Option<usize> {
        if self.fixed.contains(&i) {
            return Some(i);
        }
        self.pairs.iter().find_map(|&(a, b)| if a == i { Some(b) } else if b == i { Some(a) } else { None })
    }
}

/// All matchings of `set`, pairing the smallest unmatched index first.
pub fn matchings(set: &[usize]) -> Vec<Matching> {
    fn go(rest: &[usize], cur: &mut Matching, out: &mut Vec<Matching>) {
        let Some((&a, tail)) = rest.split_first() else {
            out.push(cur.clone());
            return;
        };
        cur.fixed.push(a);
        go(tail, cur, out);
        cur.fixed.pop();
        for (k, &b) in tail.iter().enumerate() {
            let remaining: Vec<usize> = tail.iter().enumerate().filter(|&(m, _)| m != k).map(|(_, &x)| x).collect();
            cur.pairs.push((a, b));
            go(&remaining, cur, out);
            cur.pairs.pop();
        }
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    go(&sorted, &mut Matching { fixed: Vec::new(), pairs: Vec::new() }, &mut out);
    out
}

/// `k`-subsets of `{1..n}` in colex order.
pub fn subsets_colex(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// `hbar^2 q_i q_j / (q_i - q_j)^2`, stored as `hbar^2 (q_i/q_j) / (1 - q_i/q_j)^2`.
pub fn pair_weight(i: usize, j: usize) -> RatExpr {
    let m = qpow(&[(i, 1), (j, -1)]);
    let num = hbar().mul(&hbar()).mul(&RatExpr::mono(m.clone()));
    over_one_minus(over_one_minus(num, &m), &m)
}

/// `sum_K sum_pi J(pi) V(pi)` over `k`-subsets `K` and matchings of `K`.
pub fn matching_formula_e(n: usize, k: usize) -> Result<RatExpr> {
    if k == 0 || k > n {
        return domain(format!("k must lie in 1..={n}"));
    }
    let mut terms = Vec::new();
    for set in subsets_colex(n, k) {
        for m in matchings(&set) {
            let mut term = RatExpr::one();
            for &i in &m.fixed {
                term = term.mul(&chi(i));
            }
            for &(i, j) in &m.pairs {
                term = term.mul(&pair_weight(i, j));
            }
            terms.push(term);
        }
    }
    Ok(RatExpr::sum(terms.iter()))
}

pub fn verify_matching_theorem(n: usize) -> Result<VerifyReport> {
    VerifyReport::new("matching", &[("rank", n.to_string())]).timed(|rep| {
        let es = elementary_e(Family::A, n)?;
        for (k, e) in es.iter().enumerate() {
            if !rep.expect_eq(&format!("E_{}", k + 1), e, &matching_formula_e(n, k + 1)?) {
                break;
            }
        }
        Ok(())
    })
}

fn inv_diff(i: usize, j: usize) -> RatExpr {
    t(i).sub(&t(j)).inv().expect("distinct variables")
}

/// The zero-diagonal matrix with entries `1/(t_i - t_j)`.
pub fn anticauchy_matrix(n: usize) -> SymMatrix {
    SymMatrix::from_fn(n, |i, j| if i == j { RatExpr::zero() } else { inv_diff(i + 1, j + 1) })
}

/// `(det, perfect-matching sum, report)` for the anti-Cauchy determinant.
pub fn anticauchy_det(n: usize) -> Result<(RatExpr, RatExpr, VerifyReport)> {
    if n == 0 {
        return domain("n must be positive");
    }
    let mut out = None;
    let rep = VerifyReport::new("anticauchy", &[("rank", n.to_string())]).timed(|rep| {
        let lhs = anticauchy_matrix(n).determinant();
        let all: Vec<usize> = (1..=n).collect();
        let terms: Vec<RatExpr> = matchings(&all)
            .into_iter()
            .filter(Matching::is_perfect)
            .map(|m| m.pairs.iter().fold(RatExpr::one(), |acc, &(i, j)| acc.mul(&inv_diff(i, j).pow(2).expect("power"))))
            .collect();
        let rhs = RatExpr::sum(terms.iter());
        rep.expect_eq("determinant", &lhs, &rhs);
        out = Some((lhs, rhs));
        Ok(())
    })?;
    let (lhs, rhs) = out.expect("set by the closure");
    Ok((lhs, rhs, rep))
}

/// Heap's algorithm, deterministic order.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut a = items.to_vec();
    let n = a.len();
    let mut c = vec![0; n];
    out.push(a.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `sum_{sigma(1) = 1} prod_i 1/(t_{sigma(i)} - t_{sigma(i+1)})`, indices cyclic.
pub fn cyclic_sum(n: usize) -> Result<RatExpr> {
    if n < 2 {
        return domain("cyclic_sum needs n >= 2");
    }
    let rest: Vec<usize> = (2..=n).collect();
    let terms: Vec<RatExpr> = permutations(&rest)
        .into_iter()
        .map(|p| {
            let mut seq = vec![1];
            seq.extend(p);
            (0..n).fold(RatExpr::one(), |acc, k| acc.mul(&inv_diff(seq[k], seq[(k + 1) % n])))
        })
        .collect();
    Ok(RatExpr::sum(terms.iter()))
}

pub fn verify_cyclic_sum(n: usize) -> Result<VerifyReport> {
    VerifyReport::new("cyclic", &[("rank", n.to_string())]).timed(|rep| {
        let expected = if n == 2 { inv_diff(1, 2).pow(2)?.neg() } else { RatExpr::zero() };
        rep.expect_eq("cyclic sum", &cyclic_sum(n)?, &expected);
        Ok(())
    })
}

/// Cycle type of a permutation of `0..n` given in one-line form.
fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            c.push(i);
            i = perm[i];
        }
        out.push(c);
    }
    out
}

fn sign(perm: &[usize]) -> i64 {
    if cycles(perm).iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn leibniz(m: &SymMatrix, keep: impl Fn(&[usize]) -> bool) -> RatExpr {
    let idx: Vec<usize> = (0..m.dim()).collect();
    let terms: Vec<RatExpr> = permutations(&idx)
        .into_iter()
        .filter(|p| keep(p))
        .filter_map(|p| {
            let mut t = RatExpr::int(sign(&p));
            for (i, &j) in p.iter().enumerate() {
                let e = m.get(i, j);
                if e.is_zero() {
                    return None;
                }
                t = t.mul(e);
            }
            Some(t)
        })
        .collect();
    RatExpr::sum(terms.iter())
}

/// `(det M, det A(chi) det A(-chi))`, `(det A, even-cycle sum)` and `det A|_{hbar=0} = e_n(chi)`.
pub fn verify_type_d(n: usize) -> Result<VerifyReport> {
    VerifyReport::new("typeD", &[("rank", n.to_string())]).timed(|rep| {
        let a = a_chi(n)?;
        let det_a = a.determinant();
        // The constant term of det(y + M) is det M.
        let det_m = elementary_e(Family::D, n)?.pop().expect("nonempty");
        rep.expect_eq("det M = det A(chi) det A(-chi)", &det_m, &det_a.mul(&a_chi_negated(n)?.determinant()));
        let even = leibniz(&a, |p| cycles(p).iter().all(|c| c.len() == 1 || c.len() % 2 == 0));
        rep.expect_eq("even-cycle expansion", &det_a, &even);
        let at_zero = det_a.substitute(&HashMap::from([(Var::HBAR, RatExpr::zero())]))?;
        let e_n = (1..=n).fold(RatExpr::one(), |acc, i| acc.mul(&chi(i)));
        rep.expect_eq("det A at hbar = 0", &at_zero, &e_n);
        Ok(())
    })
}

pub fn verify_odd_vanishing(family: Family, n: usize) -> Result<VerifyReport> {
    if family == Family::A {
        return domain("odd vanishing concerns types B, C and D");
    }
    VerifyReport::new("oddvanish", &[("family", family.to_string()), ("rank", n.to_string())]).timed(|rep| {
        let es = elementary_e(family, n)?;
        for k in (0..es.len()).step_by(2) {
            if !rep.expect_eq(&format!("E_{}", k + 1), &es[k], &RatExpr::zero()) {
                break;
            }
        }
        Ok(())
    })
}

/// Tridiagonal matrix with diagonal `diag`, superdiagonal `sup` and subdiagonal `sub`.
pub fn tridiag_matrix(sub: &[RatExpr], diag: &[RatExpr], sup: &[RatExpr]) -> Result<SymMatrix> {
    let n = diag.len();
    if n == 0 || sub.len() + 1 != n || sup.len() + 1 != n {
        return domain("tridiagonal data needs n diagonal and n-1 off-diagonal entries");
    }
    Ok(SymMatrix::from_fn(n, |i, j| {
        if i == j {
            diag[i].clone()
        } else if j == i + 1 {
            sup[i].clone()
        } else if i == j + 1 {
            sub[j].clone()
        } else {
            RatExpr::zero()
        }
    }))
}

/// Determinant of a tridiagonal matrix as a sum over involutions moving
/// each index by at most one.
pub fn tridiag_det(sub: &[RatExpr], diag: &[RatExpr], sup: &[RatExpr]) -> Result<RatExpr> {
    tridiag_matrix(sub, diag, sup)?;
    fn go(i: usize, sub: &[RatExpr], diag: &[RatExpr], sup: &[RatExpr], acc: RatExpr, out: &mut Vec<RatExpr>) {
        if i >= diag.len() {
            out.push(acc);
            return;
        }
        go(i + 1, sub, diag, sup, acc.mul(&diag[i]), out);
        if i + 1 < diag.len() {
            go(i + 2, sub, diag, sup, acc.mul(&sup[i]).mul(&sub[i]).neg(), out);
        }
    }
    let mut terms = Vec::new();
    go(0, sub, diag, sup, RatExpr::one(), &mut terms);
    Ok(RatExpr::sum(terms.iter()))
}

/// `chi_i = Delta_{-e_i} = x_i + shift(-e_i)`.
pub fn chi_definition(rs: &RootSystem, i: usize) -> Result<RatExpr> {
    let w = Weight::basis(rs.dim(), i).neg();
    Ok(RatExpr::var(Var::x(i)).add(&delta_class_shift(rs, &w)?))
}

/// Elementary symmetric polynomial `e_k` of the given expressions.
pub fn elementary_symmetric(xs: &[RatExpr], k: usize) -> RatExpr {
    let mut e = vec![RatExpr::zero(); k + 1];
    e[0] = RatExpr::one();
    for x in xs {
        for j in (1..=k).rev() {
            e[j] = e[j].add(&e[j - 1].mul(x));
        }
    }
    e[k].clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// Deforms a Borel relation `f(x) - f(-t)`.
    Quantum,
    /// A relation among the equivariant parameters alone.
    CoefficientRing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub kind: RelationKind,
    /// Written in `chi_i`, `eps_i = -t_i`, `hbar` and `q_i`.
    pub expr: RatExpr,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub rs: RootSystem,
    pub generators: Vec<String>,
    /// `chi_i` in terms of the generators `x_i`.
    pub chi_defs: Vec<RatExpr>,
    pub relations: Vec<Relation>,
    pub coefficient_ring: String,
}

impl Presentation {
    /// A relation rewritten in the generators `x_i`.
    pub fn in_generators(&self, r: &Relation) -> Result<RatExpr> {
        let map: HashMap<Var, RatExpr> = self.chi_defs.iter().enumerate().map(|(i, d)| (Var::chi(i + 1), d.clone())).collect();
        Ok(r.expr.substitute(&map)?)
    }
}

pub fn emit_presentation(rs: &RootSystem) -> Result<Presentation> {
    let n = rs.dim();
    let ts: Vec<RatExpr> = (1..=n).map(t).collect();
    let mut relations = Vec::new();
    match rs.family {
        Family::A => {
            let es = elementary_e(Family::A, n)?;
            for k in 1..=n {
                relations.push(Relation {
                    label: format!("E_{k} - e_{k}(t)"),
                    kind: RelationKind::Quantum,
                    expr: es[k - 1].sub(&elementary_symmetric(&ts, k)),
                });
            }
            if rs.special_linear {
                relations.push(Relation {
                    label: "e_1(t)".into(),
                    kind: RelationKind::CoefficientRing,
                    expr: elementary_symmetric(&ts, 1),
                });
            }
        }
        family => {
            let es = elementary_e(family, n)?;
            let t2: Vec<RatExpr> = ts.iter().map(|x| x.mul(x)).collect();
            let last = if family == Family::D { n - 1 } else { n };
            for k in 1..=last {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                relations.push(Relation {
                    label: format!("E_{} - (-1)^{k} e_{k}(t^2)", 2 * k),
                    kind: RelationKind::Quantum,
                    expr: es[2 * k - 1].sub(&elementary_symmetric(&t2, k).scale_int(sign)),
                });
            }
            if family == Family::D {
                relations.push(Relation {
                    label: format!("det A(chi) - e_{n}(t)"),
                    kind: RelationKind::Quantum,
                    expr: a_chi(n)?.determinant().sub(&elementary_symmetric(&ts, n)),
                });
            }
        }
    }
    let mut generators: Vec<String> = vec!["hbar".into()];
    generators.extend((1..=n).map(|i| format!("x{i}")));
    generators.extend((1..=n).map(|i| format!("t{i}")));
    Ok(Presentation {
        rs: rs.clone(),
        generators,
        chi_defs: (1..=n).map(|i| chi_definition(rs, i)).collect::<Result<_>>()?,
        relations,
        coefficient_ring: "O(T_reg^v)[hbar]".into(),
    })
}

/// Every relation of [`emit_presentation`] reduces mod `hbar` to a Borel relation.
pub fn verify_presentation_limits(rs: &RootSystem) -> Result<VerifyReport> {
    VerifyReport::new("classical", &crate::qh_stable::rs_params(rs)).timed(|rep| {
        let p = emit_presentation(rs)?;
        // Setting hbar = 0 commutes with the chi substitution when no
        // denominator involves hbar, and it keeps the expressions small.
        let h0 = HashMap::from([(Var::HBAR, RatExpr::zero())]);
        let hbar_free = |e: &RatExpr| !e.den_poly().contains_var(Var::HBAR);
        let mut p0 = p.clone();
        if p.chi_defs.iter().all(|d| hbar_free(d)) {
            p0.chi_defs = p.chi_defs.iter().map(|d| d.substitute(&h0)).collect::<std::result::Result<_, _>>()?;
        }
        for r in p.relations.iter().filter(|r| r.kind == RelationKind::Quantum) {
            let in_gens = if hbar_free(&r.expr) && p0.chi_defs.iter().all(|d| !d.contains_var(Var::HBAR)) {
                let r0 = Relation { expr: r.expr.substitute(&h0)?, ..r.clone() };
                p0.in_generators(&r0)?
            } else {
                p.in_generators(r)?
            };
            let sub = crate::qh_stable::verify_classical_limit(rs, &in_gens, &r.label)?;
            if !sub.passed {
                rep.fail(format!("{}: {}", r.label, sub.counterexample.unwrap_or_default()));
                break;
            }
        }
        Ok(())
    })
}

/// The classical limit of `R^k_lambda`.
pub fn verify_relation_limit(g: &crate::weyl::WeylGroup, lambda: &Weight, k: u32) -> Result<VerifyReport> {
    let mut params = crate::qh_stable::rs_params(&g.rs);
    params.push(("weight", lambda.spec_string()));
    params.push(("k", k.to_string()));
    VerifyReport::new("classical", &params).timed(|rep| {
        let rel = crate::qh_stable::presentation_relation(g, lambda, k)?;
        let sub = crate::qh_stable::verify_classical_limit(&g.rs, &rel, &format!("R^{k}"))?;
        if !sub.passed {
            rep.fail(sub.counterexample.unwrap_or_default());
        }
        Ok(())
    })
}

/// `M(chi)` agrees with `Theta(-e_1)` once each `chi_i` is read as `Delta_{-e_i}`.
pub fn verify_theta_consistency(g: &crate::weyl::WeylGroup) -> Result<VerifyReport> {
    let rs = &g.rs;
    VerifyReport::new("theta-consistency", &crate::qh_stable::rs_params(rs)).timed(|rep| {
        let lambda = Weight::basis(rs.dim(), 1).neg();
        let theta = crate::qh_stable::theta_matrix(g, &lambda)?;
        let n = rs.dim();
        let via_theta = theta.instantiate(|w| {
            // u(-e_1) = -e_i or e_i.
            let i = w.0.iter().position(|c| *c != num_rational::Rational64::from_integer(0)).expect("nonzero weight") + 1;
            Ok(if w.0[i - 1] < num_rational::Rational64::from_integer(0) { chi(i) } else { chi(i).neg() })
        })?;
        let m = m_chi(rs.family, n)?;
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                if !rep.expect_eq(&format!("entry ({i}, {j})"), via_theta.get(i, j), m.get(i, j)) {
                    return Ok(());
                }
            }
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::text::parse_rat;
    use crate::weyl::{WeylGroup, DEFAULT_MAX_WEYL};

    fn r(s: &str) -> RatExpr {
        parse_rat(s).unwrap()
    }

    #[test]
    fn small_m_chi_slices() {
        let a = m_chi(Family::A, 2).unwrap();
        assert_eq!(a, SymMatrix::from_rows(vec![
            vec![r("chi1"), r("hbar/(1 - q1/q2)")],
            vec![r("hbar/(1 - q2/q1)"), r("chi2")],
        ]));
        let b = m_chi(Family::B, 1).unwrap();
        assert_eq!(b, SymMatrix::from_rows(vec![
            vec![r("chi1"), r("2*hbar/(1 - q1^2)")],
            vec![r("2*hbar/(1 - q1^-2)"), r("-chi1")],
        ]));
        let d = m_chi(Family::D, 2).unwrap();
        assert!(d.get(0, 3).is_zero() && d.get(3, 0).is_zero());
        assert_eq!(d.get(0, 2), &r("hbar/(1 - q1*q2)"));
        assert!(m_chi(Family::D, 1).is_err());
        let a0 = m_chi(Family::A, 2).unwrap().map(|x| x.substitute(&HashMap::from([(Var::HBAR, RatExpr::zero())])).unwrap());
        assert_eq!(a0.determinant(), r("chi1*chi2"));
    }

    #[test]
    fn a_chi_entries() {
        let a = a_chi(2).unwrap();
        assert_eq!(a.get(0, 1), &r("hbar*(1 - q1)*(1 + q2)/((1 - q1/q2)*(1 - q1*q2))"));
        assert_eq!(a.get(1, 1), &r("chi2"));
    }

    #[test]
    fn printed_n3_expansions() {
        let es = elementary_e(Family::A, 3).unwrap();
        assert_eq!(es[0], r("chi1 + chi2 + chi3"));
        let v = |i: usize, j: usize| format!("hbar^2*q{i}*q{j}/(q{i} - q{j})^2");
        let e2 = format!("chi1*chi2 + chi1*chi3 + chi2*chi3 + {} + {} + {}", v(1, 2), v(1, 3), v(2, 3));
        assert_eq!(es[1], r(&e2));
        let e3 = format!("chi1*chi2*chi3 + chi3*{} + chi2*{} + chi1*{}", v(1, 2), v(1, 3), v(2, 3));
        assert_eq!(es[2], r(&e3));
        assert_eq!(matching_formula_e(2, 2).unwrap(), r("chi1*chi2 + hbar^2*q1*q2/(q1 - q2)^2"));
    }

    #[test]
    fn telephone_numbers() {
        let expected = [1, 1, 2, 4, 10, 26, 76, 232, 764];
        for (k, &e) in expected.iter().enumerate() {
            let set: Vec<usize> = (1..=k).collect();
            let ms = matchings(&set);
            assert_eq!(ms.len(), e);
            for m in &ms {
                for &i in &set {
                    let j = m.apply(i).unwrap();
                    assert_eq!(m.apply(j), Some(i));
                }
            }
        }
        assert_eq!(subsets_colex(4, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 4], vec![2, 4], vec![3, 4]]);
    }

    #[test]
    fn matching_theorem_small() {
        for n in 2..=3 {
            assert!(verify_matching_theorem(n).unwrap().passed);
        }
    }

    #[test]
    fn appendix_b_small() {
        assert_eq!(cyclic_sum(2).unwrap(), r("-1/(eps1 - eps2)^2"));
        assert!(cyclic_sum(3).unwrap().is_zero());
        assert!(cyclic_sum(4).unwrap().is_zero());
        assert!(verify_cyclic_sum(2).unwrap().passed && verify_cyclic_sum(5).unwrap().passed);
        let (l, rr, rep) = anticauchy_det(2).unwrap();
        assert!(rep.passed);
        assert_eq!(l, r("1/(eps1 - eps2)^2"));
        assert_eq!(l, rr);
        let (l, _, rep) = anticauchy_det(3).unwrap();
        assert!(rep.passed && l.is_zero());
        let all: Vec<usize> = (1..=4).collect();
        assert_eq!(matchings(&all).into_iter().filter(Matching::is_perfect).count(), 3);
        assert!(anticauchy_det(4).unwrap().2.passed);
    }

    #[test]
    fn tridiagonal() {
        let xs: Vec<RatExpr> = (1..=3).map(|i| RatExpr::var(Var::x(i))).collect();
        let a: Vec<RatExpr> = (1..=2).map(|i| RatExpr::var(Var::q(i))).collect();
        let b: Vec<RatExpr> = (1..=2).map(|i| RatExpr::var(Var::p(i))).collect();
        assert_eq!(tridiag_det(&[], &xs[..1], &[]).unwrap(), r("x1"));
        assert_eq!(tridiag_det(&b[..1], &xs[..2], &a[..1]).unwrap(), r("x1*x2 - q1*p1"));
        let d3 = tridiag_det(&b, &xs, &a).unwrap();
        assert_eq!(d3, r("x1*x2*x3 - q1*p1*x3 - q2*p2*x1"));
        assert_eq!(d3, tridiag_matrix(&b, &xs, &a).unwrap().determinant());
        assert!(tridiag_det(&b, &xs[..1], &a).is_err());
    }

    #[test]
    fn type_d_small() {
        let rep = verify_type_d(2).unwrap();
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn odd_vanishing_small() {
        for f in [Family::B, Family::C, Family::D] {
            let n = if f == Family::D { 2 } else { 1 };
            assert!(verify_odd_vanishing(f, n).unwrap().passed, "{f}");
        }
        assert!(verify_odd_vanishing(Family::B, 2).unwrap().passed);
    }

    #[test]
    fn chi_shift_matches_definition() {
        let rs = RootSystem::new(Family::A, 3).unwrap();
        assert_eq!(
            chi_definition(&rs, 2).unwrap(),
            r("x2 + hbar*(q1/q2)/(1 - q1/q2) - hbar*(q2/q3)/(1 - q2/q3)")
        );
    }

    #[test]
    fn theta_consistency_all_families() {
        for (f, n) in [(Family::A, 3), (Family::B, 2), (Family::C, 2), (Family::D, 2), (Family::D, 3), (Family::C, 3)] {
            let g = WeylGroup::new(&RootSystem::new(f, n).unwrap(), DEFAULT_MAX_WEYL).unwrap();
            let rep = verify_theta_consistency(&g).unwrap();
            assert!(rep.passed, "{rep}");
        }
    }

    #[test]
    fn presentations() {
        let a = emit_presentation(&RootSystem::new(Family::A, 2).unwrap()).unwrap();
        assert_eq!(a.relations.len(), 2);
        assert_eq!(a.relations[0].expr, r("chi1 + chi2 + eps1 + eps2"));
        let sl = emit_presentation(&RootSystem::special_linear(2).unwrap()).unwrap();
        assert_eq!(sl.relations.len(), 3);
        assert_eq!(sl.relations[2].kind, RelationKind::CoefficientRing);
        let c = emit_presentation(&RootSystem::new(Family::C, 2).unwrap()).unwrap();
        assert_eq!(c.relations.len(), 2);
        let d = emit_presentation(&RootSystem::new(Family::D, 2).unwrap()).unwrap();
        assert_eq!(d.relations.len(), 2);
        assert!(d.relations[1].label.starts_with("det A"));
        assert!(verify_presentation_limits(&sl.rs).unwrap().passed);
        let g = WeylGroup::new(&sl.rs, DEFAULT_MAX_WEYL).unwrap();
        assert!(verify_relation_limit(&g, &g.rs.fundamental_weights[0].clone(), 3).unwrap().passed);
        for p in [a, c, d] {
            for rel in &p.relations {
                let x = p.in_generators(rel).unwrap();
                let rep = crate::qh_stable::verify_classical_limit(&p.rs, &x, &rel.label).unwrap();
                assert!(rep.passed, "{rep}");
            }
        }
    }
}
