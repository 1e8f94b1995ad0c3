use super::factor::{split, Factor};
use super::gcd::gcd;
use super::mono::Mono;
use super::poly::{coeff, Coeff, Poly};
use super::var::Var;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("limit diverges: numerator hbar-degree exceeds denominator by {gap}")]
    Divergent { gap: i32 },
    #[error("denominator vanishes under substitution")]
    SingularSubstitution,
}

/// Exact rational function in canonical form.
///
/// The denominator is `den_mono * prod f_i^{e_i}` where `den_mono` holds only
/// non-`q` variables and each `f_i` is monic with trivial monomial content, so
/// the expanded denominator has leading coefficient 1 and no `q`-monomial
/// factor (those are units and live in the Laurent numerator). The numerator
/// shares no factor with the denominator.
#[derive(Clone, Debug)]
pub struct RatExpr {
    num: Poly,
    den_mono: Mono,
    den: Vec<(Factor, u32)>,
}

type Den = Vec<(Factor, u32)>;

fn merge_factors(mut fs: Den) -> Den {
    fs.sort_by(|a, b| a.0.poly.canonical_cmp(&b.0.poly));
    let mut out: Den = Vec::with_capacity(fs.len());
    for (f, e) in fs {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.0.same(&f) => {
                last.1 += e;
                last.0.irreducible |= f.irreducible;
            }
            _ => out.push((f, e)),
        }
    }
    out
}

/// Merges two sorted factor lists, combining exponents with `op`.
fn combine(a: &Den, b: &Den, op: impl Fn(u32, u32) -> u32) -> Den {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = if i == a.len() {
            Ordering::Greater
        } else if j == b.len() {
            Ordering::Less
        } else if a[i].0.same(&b[j].0) {
            Ordering::Equal
        } else {
            a[i].0.poly.canonical_cmp(&b[j].0.poly)
        };
        match ord {
            Ordering::Less => {
                out.push((a[i].0.clone(), op(a[i].1, 0)));
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0.clone(), op(0, b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0.clone(), op(a[i].1, b[j].1)));
                i += 1;
                j += 1;
            }
        }
    }
    out.retain(|p| p.1 > 0);
    out
}

fn mono_max(a: &Mono, b: &Mono) -> Mono {
    a.inv().meet(&b.inv()).inv()
}

impl RatExpr {
    pub fn zero() -> RatExpr {
        RatExpr { num: Poly::zero(), den_mono: Mono::one(), den: Vec::new() }
    }

    pub fn one() -> RatExpr {
        RatExpr::int(1)
    }

    pub fn int(n: i64) -> RatExpr {
        RatExpr::from_coeff(coeff(n))
    }

    pub fn from_coeff(c: Coeff) -> RatExpr {
        RatExpr::from_poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> RatExpr {
        RatExpr::from_poly(Poly::var(v))
    }

    pub fn mono(m: Mono) -> RatExpr {
        RatExpr::from_poly(Poly::mono(m))
    }

    pub fn from_poly(p: Poly) -> RatExpr {
        RatExpr::build(p, Mono::one(), Vec::new())
    }

    /// `num / den` for arbitrary polynomials.
    pub fn from_parts(num: Poly, den: &Poly) -> Result<RatExpr, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let s = split(den);
        let num = num.scale(&(Coeff::one() / &s.constant));
        Ok(RatExpr::build(num, s.mono, s.factors.into_iter().map(|f| (f, 1)).collect()))
    }

    /// Canonicalizes `num / (den_mono * prod factors)`; factors must be monic
    /// and free of monomial content. `den_mono` may be any Laurent monomial.
    fn build(num: Poly, den_mono: Mono, factors: Den) -> RatExpr {
        if num.is_zero() {
            return RatExpr::zero();
        }
        let mut num = num;
        let mut keep = Vec::new();
        let mut lift = Vec::new();
        for &(v, e) in den_mono.pairs() {
            if v.is_q() || e < 0 {
                lift.push((v, -e));
            } else {
                keep.push((v, e));
            }
        }
        if !lift.is_empty() {
            num = num.mul_mono(&Mono::from_pairs(lift));
        }
        let mut shift = Vec::new();
        for v in num.vars() {
            if !v.is_q() {
                let e = num.min_exp(v);
                if e < 0 {
                    shift.push((v, -e));
                    keep.push((v, -e));
                }
            }
        }
        if !shift.is_empty() {
            num = num.mul_mono(&Mono::from_pairs(shift));
        }
        let mut dm = Mono::from_pairs(keep);
        let mut cancel = Vec::new();
        for &(v, k) in dm.pairs() {
            let t = k.min(num.min_exp(v));
            if t > 0 {
                cancel.push((v, t));
            }
        }
        if !cancel.is_empty() {
            let c = Mono::from_pairs(cancel);
            num = num.mul_mono(&c.inv());
            dm = dm.div(&c);
        }
        let den = reduce(&mut num, merge_factors(factors));
        RatExpr { num, den_mono: dm, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn den_mono(&self) -> &Mono {
        &self.den_mono
    }

    pub fn den_factors(&self) -> &[(Factor, u32)] {
        &self.den
    }

    pub fn den_poly(&self) -> Poly {
        let mut p = Poly::mono(self.den_mono.clone());
        for (f, e) in &self.den {
            p = p.mul(&f.poly.pow(*e));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.is_polynomial() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty() && self.den_mono.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den_mono.exp(v) != 0 || self.den.iter().any(|(f, _)| f.poly.contains_var(v))
    }

    fn same_den(&self, other: &RatExpr) -> bool {
        self.den_mono == other.den_mono
            && self.den.len() == other.den.len()
            && self.den.iter().zip(&other.den).all(|(a, b)| a.1 == b.1 && a.0.same(&b.0))
    }

    fn cofactor(&self, l_mono: &Mono, l_den: &Den) -> Poly {
        let mut p = Poly::mono(l_mono.div(&self.den_mono));
        let mut i = 0;
        for (f, e) in l_den {
            let mut have = 0;
            while i < self.den.len() && self.den[i].0.poly.canonical_cmp(&f.poly) == Ordering::Less {
                i += 1;
            }
            if i < self.den.len() && self.den[i].0.same(f) {
                have = self.den[i].1;
            }
            if *e > have {
                p = p.mul(&f.poly.pow(e - have));
            }
        }
        p
    }

    pub fn add(&self, other: &RatExpr) -> RatExpr {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.same_den(other) {
            let num = self.num.add(&other.num);
            if self.is_polynomial() {
                return RatExpr { num, den_mono: Mono::one(), den: Vec::new() };
            }
            return RatExpr::build(num, self.den_mono.clone(), self.den.clone());
        }
        RatExpr::sum([self, other])
    }

    pub fn sub(&self, other: &RatExpr) -> RatExpr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatExpr {
        RatExpr { num: self.num.neg(), den_mono: self.den_mono.clone(), den: self.den.clone() }
    }

    /// Sum with a single common denominator and a single reduction pass.
    pub fn sum<'a, I: IntoIterator<Item = &'a RatExpr>>(items: I) -> RatExpr {
        let items: Vec<&RatExpr> = items.into_iter().filter(|x| !x.is_zero()).collect();
        match items.len() {
            0 => return RatExpr::zero(),
            1 => return items[0].clone(),
            _ => {}
        }
        if items.iter().all(|x| x.is_polynomial()) {
            let mut p = Poly::zero();
            for x in &items {
                p = p.add(&x.num);
            }
            return RatExpr::from_poly(p);
        }
        let mut l_mono = Mono::one();
        let mut l_den: Den = Vec::new();
        for x in &items {
            l_mono = mono_max(&l_mono, &x.den_mono);
            l_den = combine(&l_den, &x.den, |a, b| a.max(b));
        }
        let mut num = Poly::zero();
        for x in &items {
            num = num.add(&x.num.mul(&x.cofactor(&l_mono, &l_den)));
        }
        RatExpr::build(num, l_mono, l_den)
    }

    pub fn mul(&self, other: &RatExpr) -> RatExpr {
        if self.is_zero() || other.is_zero() {
            return RatExpr::zero();
        }
        if self.is_polynomial() && other.is_polynomial() {
            return RatExpr { num: self.num.mul(&other.num), den_mono: Mono::one(), den: Vec::new() };
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        // Cross-cancel each numerator against the other denominator; the
        // product of the two reduced fractions is then already canonical.
        let x = RatExpr::build(self.num.clone(), other.den_mono.clone(), other.den.clone());
        let y = RatExpr::build(other.num.clone(), self.den_mono.clone(), self.den.clone());
        RatExpr {
            num: x.num.mul(&y.num),
            den_mono: x.den_mono.mul(&y.den_mono),
            den: combine(&x.den, &y.den, |a, b| a + b),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatExpr {
        self.mul(&RatExpr::from_poly(p.clone()))
    }

    pub fn scale(&self, c: &Coeff) -> RatExpr {
        if c.is_zero() {
            return RatExpr::zero();
        }
        RatExpr { num: self.num.scale(c), den_mono: self.den_mono.clone(), den: self.den.clone() }
    }

    pub fn scale_int(&self, n: i64) -> RatExpr {
        self.scale(&coeff(n))
    }

    pub fn inv(&self) -> Result<RatExpr, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let s = split(&self.num);
        let num = self.den_poly().scale(&(Coeff::one() / &s.constant));
        Ok(RatExpr::build(num, s.mono, s.factors.into_iter().map(|f| (f, 1)).collect()))
    }

    pub fn div(&self, other: &RatExpr) -> Result<RatExpr, ArithError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<RatExpr, ArithError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut result = RatExpr::one();
        for _ in 0..k {
            result = result.mul(self);
        }
        Ok(result)
    }

    /// Applies a monomial map (variable renaming, Laurent monomial scaling)
    /// to numerator and denominator and re-canonicalizes.
    pub fn map_monomials(&self, f: impl Fn(&Mono) -> (Mono, Coeff)) -> RatExpr {
        let mut num = self.num.map_monomials(&f);
        let (dm, dc) = f(&self.den_mono);
        num = num.scale(&(Coeff::one() / dc));
        let mut raw_mono = dm;
        let mut factors: Den = Vec::new();
        for (fac, e) in &self.den {
            let img = fac.poly.map_monomials(&f);
            let s = split(&img);
            let c = num_traits::pow::pow(s.constant.clone(), *e as usize);
            num = num.scale(&(Coeff::one() / c));
            raw_mono = raw_mono.mul(&s.mono.pow(*e as i32));
            factors.extend(s.factors.into_iter().map(|g| (g, *e)));
        }
        RatExpr::build(num, raw_mono, factors)
    }

    /// Substitutes rational expressions for variables.
    pub fn substitute(&self, map: &HashMap<Var, RatExpr>) -> Result<RatExpr, ArithError> {
        if !map.keys().any(|&v| self.contains_var(v)) {
            return Ok(self.clone());
        }
        let mut cache: HashMap<(Var, i32), RatExpr> = HashMap::new();
        let num = eval_poly(&self.num, map, &mut cache)?;
        let mut den = eval_poly(&Poly::mono(self.den_mono.clone()), map, &mut cache)?;
        for (f, e) in &self.den {
            let v = eval_poly(&f.poly, map, &mut cache)?;
            den = den.mul(&v.pow(*e as i32)?);
        }
        if den.is_zero() {
            return Err(ArithError::SingularSubstitution);
        }
        num.div(&den)
    }

    /// Splits by powers of `v`, which must not occur in the denominator.
    pub fn coefficients_in(&self, v: Var) -> Vec<(i32, RatExpr)> {
        assert!(
            self.den_mono.exp(v) == 0 && self.den.iter().all(|(f, _)| !f.poly.contains_var(v)),
            "variable occurs in the denominator"
        );
        self.num
            .coefficients_in(v)
            .into_iter()
            .map(|(e, c)| (e, RatExpr::build(c, self.den_mono.clone(), self.den.clone())))
            .collect()
    }

    pub fn eval(&self, point: &HashMap<Var, Coeff>) -> Option<Coeff> {
        let d = self.den_poly().eval(point)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point)? / d)
    }

    pub fn eval_f64(&self, point: &HashMap<Var, f64>) -> Option<f64> {
        let mut d = Poly::mono(self.den_mono.clone()).eval_f64(point)?;
        for (f, e) in &self.den {
            d *= f.poly.eval_f64(point)?.powi(*e as i32);
        }
        Some(self.num.eval_f64(point)? / d)
    }

    pub fn hbar_degree_gap(&self) -> i32 {
        let dn = self.num.max_exp(Var::HBAR);
        let dd: i32 = self.den_mono.exp(Var::HBAR)
            + self.den.iter().map(|(f, e)| f.poly.max_exp(Var::HBAR) * *e as i32).sum::<i32>();
        dn - dd
    }

    /// Limit as `hbar -> infinity` with all other variables fixed.
    pub fn limit_hbar_inf(&self) -> Result<RatExpr, ArithError> {
        if self.is_zero() {
            return Ok(RatExpr::zero());
        }
        let gap = self.hbar_degree_gap();
        match gap.cmp(&0) {
            Ordering::Greater => return Err(ArithError::Divergent { gap }),
            Ordering::Less => return Ok(RatExpr::zero()),
            Ordering::Equal => {}
        }
        let dn = self.num.max_exp(Var::HBAR);
        let mut result = RatExpr::from_poly(self.num.coefficient(Var::HBAR, dn));
        result = result.div(&RatExpr::mono(self.den_mono.without(Var::HBAR)))?;
        for (f, e) in &self.den {
            let lead = f.poly.coefficient(Var::HBAR, f.poly.max_exp(Var::HBAR));
            result = result.div(&RatExpr::from_poly(lead).pow(*e as i32)?)?;
        }
        Ok(result)
    }
}

/// Least common denominator of a family of expressions, kept factored.
#[derive(Clone, Debug)]
pub struct CommonDen {
    mono: Mono,
    factors: Den,
}

impl CommonDen {
    pub fn of<'a, I: IntoIterator<Item = &'a RatExpr>>(items: I) -> CommonDen {
        let mut c = CommonDen { mono: Mono::one(), factors: Vec::new() };
        for x in items {
            if !x.is_zero() {
                c.mono = mono_max(&c.mono, &x.den_mono);
                c.factors = combine(&c.factors, &x.den, |a, b| a.max(b));
            }
        }
        c
    }

    pub fn product(&self, other: &CommonDen) -> CommonDen {
        CommonDen { mono: self.mono.mul(&other.mono), factors: combine(&self.factors, &other.factors, |a, b| a + b) }
    }

    pub fn poly(&self) -> Poly {
        RatExpr { num: Poly::one(), den_mono: self.mono.clone(), den: self.factors.clone() }.den_poly()
    }

    /// `x * self` as a polynomial; `x`'s denominator must divide `self`.
    pub fn clear(&self, x: &RatExpr) -> Poly {
        if x.is_zero() {
            return Poly::zero();
        }
        x.num.mul(&x.cofactor(&self.mono, &self.factors))
    }

    /// `num / self` in canonical form.
    pub fn divide(&self, num: Poly) -> RatExpr {
        RatExpr::build(num, self.mono.clone(), self.factors.clone())
    }
}

fn eval_poly(
    p: &Poly,
    map: &HashMap<Var, RatExpr>,
    cache: &mut HashMap<(Var, i32), RatExpr>,
) -> Result<RatExpr, ArithError> {
    let mut values = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let mut fixed = Vec::new();
        let mut t = RatExpr::from_coeff(c.clone());
        for &(v, e) in m.pairs() {
            match map.get(&v) {
                None => fixed.push((v, e)),
                Some(img) => {
                    let key = (v, e);
                    if !cache.contains_key(&key) {
                        cache.insert(key, img.pow(e)?);
                    }
                    t = t.mul(&cache[&key]);
                }
            }
        }
        values.push(t.mul(&RatExpr::mono(Mono::from_pairs(fixed))));
    }
    Ok(RatExpr::sum(values.iter()))
}

/// Cancels numerator factors against the denominator factor list.
fn reduce(num: &mut Poly, factors: Den) -> Den {
    let mut out: Den = Vec::with_capacity(factors.len());
    let mut work = factors;
    while let Some((f, mut e)) = work.pop() {
        if f.irreducible {
            while e > 0 {
                match num.div_exact(&f.poly) {
                    Some(q) => {
                        *num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                out.push((f, e));
            }
            continue;
        }
        let g = gcd(num, &f.poly);
        if g.as_constant().is_some() {
            out.push((f, e));
            continue;
        }
        let h = f.poly.div_exact(&g).expect("gcd divides factor");
        *num = num.div_exact(&g).expect("gcd divides numerator");
        if e > 1 {
            work.extend(split(&g).factors.into_iter().map(|x| (x, e - 1)));
        }
        if h.as_constant().is_none() {
            work.extend(split(&h).factors.into_iter().map(|x| (x, e)));
        }
    }
    merge_factors(out)
}

impl PartialEq for RatExpr {
    fn eq(&self, other: &RatExpr) -> bool {
        if self.same_den(other) {
            return self.num == other.num;
        }
        let all_irr = |x: &RatExpr| x.den.iter().all(|(f, _)| f.irreducible);
        if self.den_mono != other.den_mono && all_irr(self) && all_irr(other) {
            return false;
        }
        // Bring both sides over a common multiple of the denominators; this
        // decides equality without gcds and keeps the products small.
        let l = mono_max(&self.den_mono, &other.den_mono);
        let lift = |x: &RatExpr, y: &RatExpr| {
            let mut p = x.num.mul(&Poly::mono(l.div(&x.den_mono)));
            for (f, e) in combine(&y.den, &x.den, |a, b| a.saturating_sub(b)) {
                p = p.mul(&f.poly.pow(e));
            }
            p
        };
        lift(self, other) == lift(other, self)
    }
}

impl Eq for RatExpr {}

impl Default for RatExpr {
    fn default() -> RatExpr {
        RatExpr::zero()
    }
}

impl From<Poly> for RatExpr {
    fn from(p: Poly) -> RatExpr {
        RatExpr::from_poly(p)
    }
}

impl From<i64> for RatExpr {
    fn from(n: i64) -> RatExpr {
        RatExpr::int(n)
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::rat_to_text(self))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&RatExpr> for &RatExpr {
            type Output = RatExpr;
            fn $m(self, rhs: &RatExpr) -> RatExpr {
                self.$f(rhs)
            }
        }
        impl std::ops::$tr<RatExpr> for RatExpr {
            type Output = RatExpr;
            fn $m(self, rhs: RatExpr) -> RatExpr {
                (&self).$f(&rhs)
            }
        }
    };
}
binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl std::ops::Neg for &RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        RatExpr::neg(self)
    }
}

impl std::ops::Neg for RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        RatExpr::neg(&self)
    }
}

/// Convenience: `hbar * q^beta / (1 - q^beta)`-style building blocks.
pub fn one_minus(m: &Mono) -> Poly {
    Poly::one().sub(&Poly::mono(m.clone()))
}

/// `c / (1 - m)` for a Laurent monomial `m`.
pub fn over_one_minus(numerator: RatExpr, m: &Mono) -> RatExpr {
    numerator.div(&RatExpr::from_poly(one_minus(m))).expect("1 - q^beta is nonzero for nontrivial beta")
}

impl RatExpr {
    pub fn is_unit_den(&self) -> bool {
        self.den.is_empty() && self.den_mono.is_one()
    }

    pub fn leading_sign_positive(&self) -> bool {
        self.num.is_positive_leading()
    }

    pub fn from_int_frac(n: i64, d: i64) -> RatExpr {
        RatExpr::from_coeff(super::poly::coeff_ratio(n, d))
    }

    pub fn zero_ref() -> &'static RatExpr {
        static ZERO: std::sync::OnceLock<RatExpr> = std::sync::OnceLock::new();
        ZERO.get_or_init(RatExpr::zero)
    }

    pub fn constant_one() -> Coeff {
        Coeff::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RatExpr {
        RatExpr::var(Var::q(1))
    }

    fn qinv() -> RatExpr {
        RatExpr::mono(Mono::pow_of(Var::q(1), -1))
    }

    #[test]
    fn clearing_negative_powers() {
        // q^-1 / (1 - q^-1) = 1 / (q - 1)
        let x = qinv().div(&(RatExpr::one() - qinv())).unwrap();
        let y = RatExpr::one().div(&(q() - RatExpr::one())).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.den_poly(), q().numer().sub(&Poly::one()));
        assert!(x.numer().is_one());
    }

    #[test]
    fn gcd_cancellation() {
        let x = (q() * q() - RatExpr::one()).div(&(q() - RatExpr::one())).unwrap();
        assert_eq!(x, q() + RatExpr::one());
        assert!(x.is_polynomial());
    }

    #[test]
    fn sum_collapses() {
        let a = RatExpr::one().div(&(RatExpr::one() - q())).unwrap();
        let b = q().div(&(q() - RatExpr::one())).unwrap();
        assert!((a + b).is_one());
    }

    #[test]
    fn hbar_limits() {
        let h = RatExpr::var(Var::HBAR);
        let x = h.mul(&h).div(&(RatExpr::one() - h.mul(&h).mul(&q()))).unwrap();
        assert_eq!(x.limit_hbar_inf().unwrap(), qinv().neg());
        let y = h.div(&(RatExpr::one() - h.mul(&h))).unwrap();
        assert!(y.limit_hbar_inf().unwrap().is_zero());
        assert_eq!(h.limit_hbar_inf(), Err(ArithError::Divergent { gap: 1 }));
    }

    #[test]
    fn negative_hbar_powers_move_to_denominator() {
        let hi = RatExpr::mono(Mono::pow_of(Var::HBAR, -2));
        assert_eq!(hi.den_mono(), &Mono::pow_of(Var::HBAR, 2));
        assert!(hi.mul(&RatExpr::var(Var::HBAR).pow(2).unwrap()).is_one());
    }

    #[test]
    fn opaque_factor_cancels_through_gcd() {
        // (x^2 + q x + 1)(x - q) / ((x^2 + q x + 1)(x + 1)) with a non-binomial factor
        let x = RatExpr::var(Var::x(1));
        let f = &(&x * &x + &q() * &x) + &RatExpr::one();
        let num = &f * &(&x - &q());
        let den = &f * &(&x + &RatExpr::one());
        let r = num.div(&den).unwrap();
        let expect = (&x - &q()).div(&(&x + &RatExpr::one())).unwrap();
        assert_eq!(r, expect);
        assert_eq!(r.numer(), expect.numer());
    }

    #[test]
    fn substitution_composes() {
        let p = RatExpr::var(Var::p(1));
        let shift = RatExpr::var(Var::HBAR).mul(&q()).div(&(RatExpr::one() - q())).unwrap();
        let mut map = HashMap::new();
        map.insert(Var::p(1), &p + &shift);
        let got = p.mul(&p).substitute(&map).unwrap();
        let two = RatExpr::int(2);
        let expect = &(&(&p * &p) + &(&(&two * &p) * &shift)) + &(&shift * &shift);
        assert_eq!(got, expect);
    }
}
