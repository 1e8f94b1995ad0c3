use super::var::Var;
use smallvec::SmallVec;
use std::cmp::Ordering;

/// A Laurent monomial: sorted `(variable, exponent)` pairs with nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(SmallVec<[(Var, i32); 6]>);

impl Mono {
    pub fn one() -> Mono {
        Mono(SmallVec::new())
    }

    pub fn var(v: Var) -> Mono {
        Mono::pow_of(v, 1)
    }

    pub fn pow_of(v: Var, e: i32) -> Mono {
        let mut m = Mono::one();
        if e != 0 {
            m.0.push((v, e));
        }
        m
    }

    /// Builds a monomial from arbitrary pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Mono {
        let mut v: SmallVec<[(Var, i32); 6]> = pairs.into_iter().collect();
        v.sort_by_key(|p| p.0);
        let mut out: SmallVec<[(Var, i32); 6]> = SmallVec::new();
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Mono(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exp(&self, v: Var) -> i32 {
        match self.0.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|p| p.1).sum()
    }

    fn merge(&self, other: &Mono, sign: i32) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, sign * b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + sign * b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(v, e)| (v, sign * e)));
        Mono(out)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        self.merge(other, 1)
    }

    /// Laurent quotient (always defined).
    pub fn div(&self, other: &Mono) -> Mono {
        self.merge(other, -1)
    }

    pub fn inv(&self) -> Mono {
        Mono(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn pow(&self, k: i32) -> Mono {
        if k == 0 {
            return Mono::one();
        }
        Mono(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// True when `other / self` has no negative exponents.
    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().all(|&(v, e)| other.exp(v) >= e)
    }

    /// Componentwise minimum (absent variables count as exponent 0).
    pub fn meet(&self, other: &Mono) -> Mono {
        let mut pairs: SmallVec<[(Var, i32); 6]> = SmallVec::new();
        for &(v, e) in self.0.iter() {
            let m = e.min(other.exp(v));
            if m != 0 {
                pairs.push((v, m));
            }
        }
        for &(v, e) in other.0.iter() {
            if self.exp(v) == 0 && e < 0 {
                pairs.push((v, e));
            }
        }
        Mono::from_pairs(pairs)
    }

    /// Keeps only the variables satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(Var) -> bool) -> Mono {
        Mono(self.0.iter().copied().filter(|p| keep(p.0)).collect())
    }

    pub fn without(&self, v: Var) -> Mono {
        self.filter(|w| w != v)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|p| p.0)
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|p| p.1 < 0)
    }
}

impl Ord for Mono {
    /// Graded lexicographic order: total degree first, then the exponent of the
    /// largest variable, and so on downward.
    fn cmp(&self, other: &Mono) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (a.len(), b.len());
        while i > 0 || j > 0 {
            let (va, ea) = if i > 0 { (Some(a[i - 1].0), a[i - 1].1) } else { (None, 0) };
            let (vb, eb) = if j > 0 { (Some(b[j - 1].0), b[j - 1].1) } else { (None, 0) };
            let step = match (va, vb) {
                (Some(x), Some(y)) if x == y => {
                    i -= 1;
                    j -= 1;
                    ea.cmp(&eb)
                }
                (Some(x), Some(y)) if x > y => {
                    i -= 1;
                    ea.cmp(&0)
                }
                (Some(_), None) => {
                    i -= 1;
                    ea.cmp(&0)
                }
                _ => {
                    j -= 1;
                    0.cmp(&eb)
                }
            };
            if step != Ordering::Equal {
                return step;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Mono) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_then_lex() {
        let h = Mono::var(Var::HBAR);
        let q1 = Mono::var(Var::q(1));
        let q2 = Mono::var(Var::q(2));
        assert!(h < q1);
        assert!(q1 < q2);
        assert!(q2 < h.mul(&h));
        assert!(q1.mul(&q1) < q1.mul(&q2));
        assert!(Mono::one() < h);
        assert!(q1.inv() < Mono::one());
    }

    #[test]
    fn merge_cancels() {
        let a = Mono::from_pairs([(Var::q(1), 2), (Var::HBAR, 1)]);
        let b = Mono::from_pairs([(Var::q(1), -2)]);
        assert_eq!(a.mul(&b), Mono::var(Var::HBAR));
        assert_eq!(a.div(&a), Mono::one());
        assert_eq!(a.exp(Var::q(1)), 2);
    }

    #[test]
    fn min_and_divides() {
        let a = Mono::from_pairs([(Var::q(1), 2), (Var::HBAR, 1)]);
        let b = Mono::from_pairs([(Var::q(1), -1), (Var::q(2), 3)]);
        assert_eq!(a.meet(&b), Mono::pow_of(Var::q(1), -1));
        assert!(Mono::var(Var::HBAR).divides(&a));
        assert!(!a.divides(&b));
    }
}
