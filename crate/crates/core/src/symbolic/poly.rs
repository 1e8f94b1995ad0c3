use super::mono::Mono;
use super::var::Var;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn coeff_ratio(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse Laurent polynomial over Q, terms kept in decreasing graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Coeff)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Poly {
        Poly::term(Mono::one(), c)
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(coeff(n))
    }

    pub fn term(m: Mono, c: Coeff) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn mono(m: Mono) -> Poly {
        Poly::term(m, Coeff::one())
    }

    pub fn var(v: Var) -> Poly {
        Poly::mono(Mono::var(v))
    }

    /// Normalizes an arbitrary list of terms.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Coeff)>>(terms: I) -> Poly {
        let mut acc: HashMap<Mono, Coeff> = HashMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(x) => *x += c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: HashMap<Mono, Coeff>) -> Poly {
        let mut terms: Vec<(Mono, Coeff)> = acc.into_iter().filter(|t| !t.1.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    /// Terms already strictly sorted in decreasing order with nonzero coefficients.
    fn from_sorted(terms: Vec<(Mono, Coeff)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, Coeff)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value if this polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Mono, Coeff)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Coeff {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Coeff::zero)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect() }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let sb = |c: &Coeff| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sb(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sb(c))));
        Poly::from_sorted(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Poly { terms: self.terms.iter().map(|(x, y)| (x.mul(m), y * c)).collect() };
        }
        if self.terms.len() == 1 {
            return other.mul(self);
        }
        let mut acc: HashMap<Mono, Coeff> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Poly::from_map(acc)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.iter().flat_map(|(m, _)| m.vars()).collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) != 0)
    }

    pub fn max_exp(&self, v: Var) -> i32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_exp(&self, v: Var) -> i32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).min().unwrap_or(0)
    }

    /// Gcd of all monomials (componentwise minimum exponent).
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else { return Mono::one() };
        let mut m = first.clone();
        // no early exit: a later Laurent term can still lower the minimum
        for (x, _) in it {
            m = m.meet(x);
        }
        m
    }

    /// Splits by powers of `v`: exponent -> coefficient polynomial free of `v`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<i32, Poly> {
        let mut parts: BTreeMap<i32, Vec<(Mono, Coeff)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.exp(v)).or_default().push((m.without(v), c.clone()));
        }
        // Removing one variable preserves relative order within a fixed power.
        parts
            .into_iter()
            .map(|(e, ts)| {
                let mut ts = ts;
                ts.sort_by(|a, b| b.0.cmp(&a.0));
                (e, Poly { terms: ts })
            })
            .collect()
    }

    /// Coefficient of `v^e`.
    pub fn coefficient(&self, v: Var, e: i32) -> Poly {
        let mut ts: Vec<(Mono, Coeff)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) == e)
            .map(|(m, c)| (m.without(v), c.clone()))
            .collect();
        ts.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms: ts }
    }

    /// Applies a monomial map termwise; the map returns a coefficient multiplier.
    pub fn map_monomials(&self, f: impl Fn(&Mono) -> (Mono, Coeff)) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let (m2, k) = f(m);
            (m2, c * k)
        }))
    }

    /// Integer-normalizing content: positive rational `c` so that `self / c`
    /// has coprime integer coefficients.
    pub fn rational_content(&self) -> Coeff {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Coeff::one();
        }
        BigRational::new(num, den)
    }

    /// Evaluates at a point; `None` if a variable is missing or a negative
    /// power of zero is required.
    pub fn eval(&self, point: &HashMap<Var, Coeff>) -> Option<Coeff> {
        let mut total = Coeff::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = point.get(&v)?;
                if e < 0 && x.is_zero() {
                    return None;
                }
                let xe = num_traits::pow::pow(x.clone(), e.unsigned_abs() as usize);
                t = if e < 0 { t / xe } else { t * xe };
            }
            total += t;
        }
        Some(total)
    }

    pub fn eval_f64(&self, point: &HashMap<Var, f64>) -> Option<f64> {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut t = ratio_to_f64(c);
            for &(v, e) in m.pairs() {
                t *= point.get(&v)?.powi(e);
            }
            total += t;
        }
        Some(total)
    }

    /// Multiplies by a monomial so that every exponent is nonnegative and the
    /// monomial content is trivial; returns the normalized polynomial and the
    /// removed monomial.
    pub fn strip_mono_content(&self) -> (Poly, Mono) {
        let m = self.mono_content();
        if m.is_one() {
            return (self.clone(), m);
        }
        (self.mul_mono(&m.inv()), m)
    }

    /// Exact division in the Laurent polynomial ring, `None` if not divisible.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if divisor.terms.len() == 1 {
            let (m, c) = &divisor.terms[0];
            let inv = Coeff::one() / c;
            let mi = m.inv();
            return Some(Poly {
                terms: self.terms.iter().map(|(x, y)| (x.mul(&mi), y * &inv)).collect(),
            });
        }
        let (b, mb) = divisor.strip_mono_content();
        let (a, ma) = self.strip_mono_content();
        if a.len() < b.len() {
            return None;
        }
        // Cheap necessary conditions: per-variable degree bounds.
        for v in b.vars() {
            if a.max_exp(v) < b.max_exp(v) {
                return None;
            }
        }
        let (lb_m, lb_c) = b.terms[0].clone();
        let lb_inv = Coeff::one() / &lb_c;
        let mut rem: BTreeMap<Mono, Coeff> = a.terms.into_iter().collect();
        let mut quot: Vec<(Mono, Coeff)> = Vec::new();
        while let Some((lm, lc)) = rem.pop_last() {
            if !lb_m.divides(&lm) {
                return None;
            }
            let tm = lm.div(&lb_m);
            let tc = &lc * &lb_inv;
            for (m, c) in &b.terms[1..] {
                let key = m.mul(&tm);
                let delta = c * &tc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((tm, tc));
        }
        let shift = ma.div(&mb);
        let q = Poly::from_sorted(quot);
        Some(q.mul_mono(&shift))
    }

    /// Total-order comparison used to sort factor lists deterministically.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            let c = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }

    /// Makes the leading coefficient 1; returns the scaled polynomial and the
    /// removed leading coefficient.
    pub fn monic(&self) -> (Poly, Coeff) {
        let lc = self.leading_coeff();
        if lc.is_one() || lc.is_zero() {
            return (self.clone(), if lc.is_zero() { Coeff::one() } else { lc });
        }
        (self.scale(&(Coeff::one() / &lc)), lc)
    }

    /// Substitutes a polynomial for a variable appearing with nonnegative exponents.
    pub fn substitute_poly(&self, v: Var, image: &Poly) -> Poly {
        let parts = self.coefficients_in(v);
        let mut total = Poly::zero();
        let mut cache: HashMap<i32, Poly> = HashMap::new();
        for (e, c) in parts {
            assert!(e >= 0, "negative power of {v} in polynomial substitution");
            let p = cache.entry(e).or_insert_with(|| image.pow(e as u32)).clone();
            total = total.add(&c.mul(&p));
        }
        total
    }

    pub fn is_positive_leading(&self) -> bool {
        self.terms.first().map(|t| t.1.is_positive()).unwrap_or(true)
    }
}

pub fn ratio_to_f64(c: &Coeff) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(i: usize) -> Poly {
        Poly::var(Var::q(i))
    }

    #[test]
    fn arithmetic_basics() {
        let a = q(1).add(&Poly::one());
        let b = q(1).sub(&Poly::one());
        let p = a.mul(&b);
        assert_eq!(p, q(1).mul(&q(1)).sub(&Poly::one()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(p.div_exact(&q(2).add(&Poly::one())), None);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn content_sees_late_negative_exponents() {
        let m = Mono::from_pairs([(Var::q(1), 1), (Var::q(2), 1)]);
        let f = Poly::one().sub(&Poly::mono(m.clone()));
        let p = f.mul(&f).mul_mono(&m.inv());
        assert_eq!(p.mono_content(), m.inv());
        assert_eq!(p.div_exact(&f.mul(&f)), Some(Poly::mono(m.inv())));
    }

    #[test]
    fn laurent_division() {
        let qi = Mono::pow_of(Var::q(1), -1);
        // (q1^-1 - q1) / (1 - q1) = q1^-1 (1 + q1)
        let num = Poly::mono(qi.clone()).sub(&q(1));
        let den = Poly::one().sub(&q(1));
        let quo = num.div_exact(&den).unwrap();
        assert_eq!(quo, Poly::mono(qi).add(&Poly::one()));
    }

    #[test]
    fn content_and_coefficients() {
        let h = Poly::var(Var::HBAR);
        let p = h.mul(&q(1)).scale(&coeff(4)).add(&h.mul(&h).scale(&coeff_ratio(2, 3)));
        assert_eq!(p.rational_content(), coeff_ratio(2, 3));
        assert_eq!(p.mono_content(), Mono::var(Var::HBAR));
        let parts = p.coefficients_in(Var::HBAR);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&1], q(1).scale(&coeff(4)));
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = q(1).add(&Poly::var(Var::HBAR)).sub(&Poly::int(2));
        let mut b = Poly::one();
        for _ in 0..5 {
            b = b.mul(&a);
        }
        assert_eq!(a.pow(5), b);
    }
}
