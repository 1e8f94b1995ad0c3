//! Classical trigonometric Dunkl operators in `O(T_reg x t)[hbar] x| W`,
//! the radial part and the matrix `Y(lambda)`.

use crate::error::{domain, Error, Result};
use crate::qh_stable::{rs_params, theta_matrix};
use crate::report::VerifyReport;
use crate::rootdata::{RootSystem, Weight};
use crate::symbolic::rat::over_one_minus;
use crate::symbolic::{RatExpr, SymMatrix, Var, VarKind};
use crate::weyl::{root_reflection, WeylElem, WeylGroup};
use std::collections::{BTreeMap, HashMap};

const KINDS: [VarKind; 2] = [VarKind::P, VarKind::Q];

/// `sum_w f_w w`, keyed by the index of `w` in its group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewElem {
    pub terms: BTreeMap<usize, RatExpr>,
}

impl SkewElem {
    pub fn zero() -> SkewElem {
        SkewElem { terms: BTreeMap::new() }
    }

    pub fn scalar(g: &WeylGroup, f: RatExpr) -> SkewElem {
        SkewElem::term(g, &WeylElem::identity(g.rs.dim()), f)
    }

    pub fn term(g: &WeylGroup, w: &WeylElem, f: RatExpr) -> SkewElem {
        let mut out = SkewElem::zero();
        out.push(g.index_of(w), f);
        out
    }

    fn push(&mut self, idx: usize, f: RatExpr) {
        if f.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx).or_insert_with(RatExpr::zero);
        *entry = entry.add(&f);
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn add(&self, other: &SkewElem) -> SkewElem {
        let mut out = self.clone();
        for (&i, f) in &other.terms {
            out.push(i, f.clone());
        }
        out
    }

    pub fn neg(&self) -> SkewElem {
        SkewElem { terms: self.terms.iter().map(|(&i, f)| (i, f.neg())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &WeylGroup, w: &WeylElem) -> RatExpr {
        self.terms.get(&g.index_of(w)).cloned().unwrap_or_else(RatExpr::zero)
    }

    /// `sum_w f_w`.
    pub fn coefficient_sum(&self) -> RatExpr {
        RatExpr::sum(self.terms.values())
    }
}

/// `(f w)(g v) = f (w . g) wv`.
pub fn skew_mul(g: &WeylGroup, a: &SkewElem, b: &SkewElem) -> SkewElem {
    let mut out = SkewElem::zero();
    for (&i, f) in &a.terms {
        let w = g.get(i);
        for (&j, h) in &b.terms {
            let wv = g.mul(w, g.get(j));
            out.push(g.index_of(&wv), f.mul(&w.act_expr(h, &KINDS)));
        }
    }
    out
}

pub fn skew_pow(g: &WeylGroup, a: &SkewElem, k: u32) -> SkewElem {
    let mut out = SkewElem::scalar(g, RatExpr::one());
    for _ in 0..k {
        out = skew_mul(g, &out, a);
    }
    out
}

/// `q^{a}/(1 - q^{a})` for the coroot `a` of the positive root `idx`.
fn root_fraction(rs: &RootSystem, idx: usize) -> Result<RatExpr> {
    let m = rs.positive_roots[idx].coroot.q_monomial()?;
    Ok(over_one_minus(RatExpr::mono(m.clone()), &m))
}

/// `p_lambda - hbar sum_{alpha > 0} <lambda, alpha^vee> q^{alpha^vee}/(1 - q^{alpha^vee}) s_alpha`.
pub fn dunkl(g: &WeylGroup, lambda: &Weight) -> Result<SkewElem> {
    let rs = &g.rs;
    let mut out = SkewElem::scalar(g, lambda.p_form());
    for (idx, root) in rs.positive_roots.iter().enumerate() {
        let c = rs.pairing(lambda, &root.coroot)?;
        if c == 0.into() {
            continue;
        }
        let coeff = RatExpr::var(Var::HBAR).mul(&root_fraction(rs, idx)?).scale(&crate::rootdata::rational_coeff(c)).neg();
        out = out.add(&SkewElem::term(g, &root_reflection(rs, idx)?, coeff));
    }
    Ok(out)
}

fn orbit(g: &WeylGroup, lambda: &Weight) -> Result<Vec<Weight>> {
    g.min_coset_reps(lambda)?.reps.iter().map(|u| u.act_weight(lambda)).collect()
}

/// `D(f, hbar)` for `f = sum_{u in W^lambda} (u lambda)^k`.
pub fn radial_part(g: &WeylGroup, lambda: &Weight, k: u32) -> Result<RatExpr> {
    g.rs.check_pm_dominant(lambda)?;
    if k == 0 {
        return domain("k must be positive");
    }
    let mut total = SkewElem::zero();
    for mu in orbit(g, lambda)? {
        total = total.add(&skew_pow(g, &dunkl(g, &mu)?, k));
    }
    Ok(total.coefficient_sum())
}

/// `Theta(lambda)` with each `Delta_{u lambda}` replaced by `p_{u lambda}`.
pub fn y_matrix(g: &WeylGroup, lambda: &Weight) -> Result<SymMatrix> {
    theta_matrix(g, lambda)?.instantiate(|w| Ok(w.p_form()))
}

fn weight_params(rs: &RootSystem, lambda: &Weight, k: Option<u32>) -> Vec<(&'static str, String)> {
    let mut p = rs_params(rs);
    p.push(("weight", lambda.spec_string()));
    if let Some(k) = k {
        p.push(("k", k.to_string()));
    }
    p
}

pub fn verify_cm_corollary(g: &WeylGroup, lambda: &Weight, k: u32) -> Result<VerifyReport> {
    VerifyReport::new("cm", &weight_params(&g.rs, lambda, Some(k))).timed(|rep| {
        let y = y_matrix(g, lambda)?;
        rep.expect_eq("tr Y^k = D(f, hbar)", &y.pow(k).trace(), &radial_part(g, lambda, k)?);
        Ok(())
    })
}

/// `q^a - 2 + q^{-a}` for the coroot of positive root `idx`.
fn sine_square(rs: &RootSystem, idx: usize) -> Result<RatExpr> {
    let m = rs.positive_roots[idx].coroot.q_monomial()?;
    Ok(RatExpr::mono(m.clone()).add(&RatExpr::mono(m.inv())).sub(&RatExpr::int(2)))
}

/// The Hamiltonian `sum_w p_{w lambda}^2 - hbar^2 sum_{alpha>0} (sum_w <w lambda, alpha^vee>^2)/(q^a - 2 + q^{-a})`.
pub fn hamiltonian(g: &WeylGroup, lambda: &Weight) -> Result<RatExpr> {
    let rs = &g.rs;
    let images: Vec<Weight> = g.elements().iter().map(|w| w.act_weight(lambda)).collect::<Result<_>>()?;
    let mut terms: Vec<RatExpr> = images.iter().map(|mu| mu.p_form().pow(2).expect("power")).collect();
    let hbar2 = RatExpr::var(Var::HBAR).pow(2)?;
    for (idx, root) in rs.positive_roots.iter().enumerate() {
        let mut c = crate::rootdata::Q::from_integer(0);
        for mu in &images {
            let x = rs.pairing(mu, &root.coroot)?;
            c += x * x;
        }
        let t = hbar2.scale(&crate::rootdata::rational_coeff(c)).div(&sine_square(rs, idx)?)?;
        terms.push(t.neg());
    }
    Ok(RatExpr::sum(terms.iter()))
}

fn require_strictly_dominant(rs: &RootSystem, lambda: &Weight) -> Result<()> {
    if !rs.is_strictly_dominant(lambda)? {
        return Err(Error::Domain(format!("{} is not strictly dominant", lambda.spec_string())));
    }
    Ok(())
}

pub fn verify_hamiltonian(g: &WeylGroup, lambda: &Weight) -> Result<VerifyReport> {
    require_strictly_dominant(&g.rs, lambda)?;
    VerifyReport::new("hamiltonian", &weight_params(&g.rs, lambda, None)).timed(|rep| {
        let y = y_matrix(g, lambda)?;
        rep.expect_eq("tr Y^2 = Hamiltonian", &y.pow(2).trace(), &hamiltonian(g, lambda)?);
        Ok(())
    })
}

/// `p_lambda -> p_lambda + hbar sum_{alpha>0} <lambda, alpha^vee> q^{alpha^vee}/(1 - q^{alpha^vee})`, `q` fixed.
pub fn gauge_classical(x: &RatExpr, rs: &RootSystem) -> Result<RatExpr> {
    let n = rs.dim();
    let mut map = HashMap::new();
    for i in 1..=n {
        let e = Weight::basis(n, i);
        let mut image = RatExpr::var(Var::p(i));
        for (idx, root) in rs.positive_roots.iter().enumerate() {
            let c = rs.pairing(&e, &root.coroot)?;
            if c != 0.into() {
                let t = RatExpr::var(Var::HBAR).mul(&root_fraction(rs, idx)?).scale(&crate::rootdata::rational_coeff(c));
                image = image.add(&t);
            }
        }
        map.insert(Var::p(i), image);
    }
    Ok(x.substitute(&map)?)
}

/// Gauged radial part `theta^cl(D(f, hbar))`.
pub fn gauged_radial_part(g: &WeylGroup, lambda: &Weight, k: u32) -> Result<RatExpr> {
    gauge_classical(&radial_part(g, lambda, k)?, &g.rs)
}

/// Matrix of right multiplication by `x` on the left `O`-basis `W`: row `v` holds `v . x`.
pub fn regular_matrix(g: &WeylGroup, x: &SkewElem) -> SymMatrix {
    let mut m = SymMatrix::zeros(g.len());
    for (r, v) in g.elements().iter().enumerate() {
        let vx = skew_mul(g, &SkewElem::term(g, v, RatExpr::one()), x);
        for (&c, f) in &vx.terms {
            m.set(r, c, f.clone());
        }
    }
    m
}

/// `tr(sum_w Dun_{w lambda}^k - sum_w w Dun_lambda^k w^{-1}) = 0` in the regular representation.
pub fn verify_tracefree(g: &WeylGroup, lambda: &Weight, k: u32) -> Result<VerifyReport> {
    require_strictly_dominant(&g.rs, lambda)?;
    if g.rs.rank > 2 {
        return domain("the trace-free check is limited to rank <= 2");
    }
    VerifyReport::new("tracefree", &weight_params(&g.rs, lambda, Some(k))).timed(|rep| {
        let mut first = SkewElem::zero();
        let mut second = SkewElem::zero();
        let dk = skew_pow(g, &dunkl(g, lambda)?, k);
        for w in g.elements() {
            first = first.add(&skew_pow(g, &dunkl(g, &w.act_weight(lambda)?)?, k));
            let winv = w.inverse();
            let conj = skew_mul(g, &skew_mul(g, &SkewElem::term(g, w, RatExpr::one()), &dk), &SkewElem::term(g, &winv, RatExpr::one()));
            second = second.add(&conj);
        }
        let tr = regular_matrix(g, &first.add(&second.neg())).trace();
        rep.expect_eq("trace", &tr, &RatExpr::zero());
        Ok(())
    })
}

/// `[Dun_lambda, Dun_mu] = 0` for all pairs of fundamental weights.
pub fn verify_dunkl_commutativity(g: &WeylGroup) -> Result<VerifyReport> {
    VerifyReport::new("dunkl-commute", &rs_params(&g.rs)).timed(|rep| {
        let dun: Vec<SkewElem> = g.rs.fundamental_weights.iter().map(|w| dunkl(g, w)).collect::<Result<_>>()?;
        for i in 0..dun.len() {
            for j in i + 1..dun.len() {
                let c = skew_mul(g, &dun[i], &dun[j]).add(&skew_mul(g, &dun[j], &dun[i]).neg());
                if !c.is_zero() {
                    let (idx, f) = c.terms.iter().next().expect("nonzero");
                    rep.fail(format!("[Dun_{}, Dun_{}] has coefficient {f} at {}", i + 1, j + 1, g.word_string(g.get(*idx))));
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
    use crate::rootdata::Family;
    use crate::symbolic::text::parse_rat;
    use crate::weyl::DEFAULT_MAX_WEYL;

    fn r(s: &str) -> RatExpr {
        parse_rat(s).unwrap()
    }

    fn group(rs: RootSystem) -> WeylGroup {
        WeylGroup::new(&rs, DEFAULT_MAX_WEYL).unwrap()
    }

    fn sl2() -> WeylGroup {
        group(RootSystem::special_linear(2).unwrap())
    }

    #[test]
    fn dunkl_examples() {
        let g = sl2();
        let varpi = g.rs.fundamental_weights[0].clone();
        let d = dunkl(&g, &varpi).unwrap();
        let s = g.simple(1).clone();
        assert_eq!(d.coeff(&g, &WeylElem::identity(2)), varpi.p_form());
        assert_eq!(d.coeff(&g, &s), r("-hbar*(q1/q2)/(1 - q1/q2)"));
        assert!(dunkl(&g, &Weight::zero(2)).unwrap().is_zero());
        let gl2 = group(RootSystem::new(Family::A, 2).unwrap());
        let d = dunkl(&gl2, &Weight::basis(2, 1)).unwrap();
        assert_eq!(d.coeff(&gl2, gl2.simple(1)), r("-hbar*(q1/q2)/(1 - q1/q2)"));
        assert_eq!(d.coeff(&gl2, &WeylElem::identity(2)), r("p1"));
    }

    #[test]
    fn skew_products() {
        let g = sl2();
        let s = g.simple(1).clone();
        let ss = skew_mul(&g, &SkewElem::term(&g, &s, RatExpr::one()), &SkewElem::term(&g, &s, RatExpr::one()));
        assert_eq!(ss, SkewElem::scalar(&g, RatExpr::one()));
        let frac = r("(q1/q2)/(1 - q1/q2)");
        let twisted = skew_mul(&g, &SkewElem::term(&g, &s, RatExpr::one()), &SkewElem::scalar(&g, frac));
        assert_eq!(twisted, SkewElem::term(&g, &s, r("-1/(1 - q1/q2)")));
        let a = SkewElem::scalar(&g, r("p1 + hbar"));
        let b = SkewElem::scalar(&g, r("q1"));
        assert_eq!(skew_mul(&g, &a, &b), SkewElem::scalar(&g, r("(p1 + hbar)*q1")));
    }

    #[test]
    fn skew_mul_associative_gl3() {
        let g = group(RootSystem::new(Family::A, 3).unwrap());
        let a = dunkl(&g, &Weight::basis(3, 1)).unwrap();
        let b = dunkl(&g, &Weight::basis(3, 2)).unwrap().add(&SkewElem::term(&g, g.simple(2), r("q2")));
        let c = SkewElem::term(&g, g.longest(), r("p3"));
        assert_eq!(skew_mul(&g, &skew_mul(&g, &a, &b), &c), skew_mul(&g, &a, &skew_mul(&g, &b, &c)));
    }

    #[test]
    fn y_matrix_sl2() {
        let g = sl2();
        let varpi = g.rs.fundamental_weights[0].clone();
        let y = y_matrix(&g, &varpi).unwrap();
        let q = "(q1/q2)";
        assert_eq!(y.get(0, 1), &r(&format!("-hbar/(1 - {q})")));
        assert_eq!(y.get(1, 0), &r(&format!("-hbar/(1 - 1/{q})")));
        assert_eq!(y.get(0, 0), &varpi.p_form());
        assert_eq!(y.get(1, 1), &varpi.neg().p_form());
        assert!(y_matrix(&g, &Weight::zero(2)).unwrap().get(0, 0).is_zero());
    }

    #[test]
    fn radial_part_small() {
        let g = sl2();
        let varpi = g.rs.fundamental_weights[0].clone();
        let p = varpi.p_form();
        assert_eq!(radial_part(&g, &varpi, 1).unwrap(), p.add(&p.neg()));
        let two = radial_part(&g, &varpi, 2).unwrap();
        assert_eq!(two, p.mul(&p).scale_int(2).add(&r("-2*hbar^2*(q1/q2)/(1 - q1/q2)^2")));
        assert!(radial_part(&g, &Weight::zero(2), 2).unwrap().is_zero());
    }

    #[test]
    fn leading_term_condition() {
        let g = group(RootSystem::new(Family::A, 3).unwrap());
        let lambda = g.rs.rho.clone();
        for k in 1..=3 {
            let leading: Vec<RatExpr> = g.elements().iter().map(|w| w.act_weight(&lambda).unwrap().p_form().pow(k).unwrap()).collect();
            let diff = radial_part(&g, &lambda, k as u32).unwrap().sub(&RatExpr::sum(leading.iter()));
            let at_zero = diff.substitute(&HashMap::from([(Var::HBAR, RatExpr::zero())])).unwrap();
            assert!(at_zero.is_zero(), "k = {k}");
        }
    }

    #[test]
    fn corollary_small() {
        let g = sl2();
        let varpi = g.rs.fundamental_weights[0].clone();
        for k in 1..=3 {
            let rep = verify_cm_corollary(&g, &varpi, k).unwrap();
            assert!(rep.passed, "{rep}");
        }
        let g = group(RootSystem::new(Family::A, 3).unwrap());
        let rep = verify_cm_corollary(&g, &Weight::basis(3, 1).neg(), 2).unwrap();
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn hamiltonian_examples() {
        let g = sl2();
        let varpi = g.rs.fundamental_weights[0].clone();
        assert!(verify_hamiltonian(&g, &varpi).unwrap().passed);
        let p = varpi.p_form();
        let h = hamiltonian(&g, &varpi).unwrap();
        assert_eq!(h, p.mul(&p).scale_int(2).add(&r("-2*hbar^2/(q1/q2 - 2 + q2/q1)")));
        assert!(verify_hamiltonian(&g, &Weight::zero(2)).is_err());
    }

    #[test]
    fn gauge_examples() {
        let g = sl2();
        let varpi = g.rs.fundamental_weights[0].clone();
        assert_eq!(gauge_classical(&varpi.p_form(), &g.rs).unwrap(), varpi.p_form().add(&r("hbar*(q1/q2)/(1 - q1/q2)")));
        assert_eq!(gauge_classical(&r("q1/q2 + 3"), &g.rs).unwrap(), r("q1/q2 + 3"));
        let (a, b) = (r("p1*q2 + hbar"), r("p2^2 - p1/q1"));
        let ga = gauge_classical(&a, &g.rs).unwrap();
        let gb = gauge_classical(&b, &g.rs).unwrap();
        assert_eq!(gauge_classical(&a.mul(&b), &g.rs).unwrap(), ga.mul(&gb));
        assert_eq!(gauge_classical(&a.add(&b), &g.rs).unwrap(), ga.add(&gb));
    }

    #[test]
    fn tracefree_and_commutativity() {
        let g = sl2();
        let varpi = g.rs.fundamental_weights[0].clone();
        for k in 1..=2 {
            let rep = verify_tracefree(&g, &varpi, k).unwrap();
            assert!(rep.passed, "{rep}");
        }
        let gl2 = group(RootSystem::new(Family::A, 2).unwrap());
        let rep = verify_dunkl_commutativity(&gl2).unwrap();
        assert!(rep.passed, "{rep}");
    }
}
