//! Classical root systems in the orthonormal `e_i` coordinates.

use crate::error::{domain, Error, Result};
use crate::symbolic::{Poly, RatExpr, Var};
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Q = Rational64;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn half(n: i64) -> Q {
    Q::new(n, 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s.trim() {
            "A" | "a" => Some(Family::A),
            "B" | "b" => Some(Family::B),
            "C" | "c" => Some(Family::C),
            "D" | "d" => Some(Family::D),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A weight in the `e_i` basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Q>);

/// A coroot (or cocharacter) in the dual `e_i^vee` basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coroot(pub Vec<Q>);

impl Weight {
    pub fn zero(n: usize) -> Weight {
        Weight(vec![Q::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Weight {
        Weight(v.iter().map(|&x| q(x)).collect())
    }

    /// `e_i`, 1-based.
    pub fn basis(n: usize, i: usize) -> Weight {
        let mut w = Weight::zero(n);
        w.0[i - 1] = Q::one();
        w
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: Q) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The linear form `sum_i lambda_i * v_i` for a family of variables.
    pub fn linear_form(&self, var: impl Fn(usize) -> Var) -> Poly {
        Poly::from_terms(self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
            (crate::symbolic::Mono::var(var(i + 1)), rational_coeff(*c))
        }))
    }

    /// Comma-separated coordinates, accepted back by [`RootSystem::parse_weight`].
    pub fn spec_string(&self) -> String {
        self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    /// `lambda` as an equivariant parameter `sum_i lambda_i eps_i`.
    pub fn eps_form(&self) -> RatExpr {
        RatExpr::from_poly(self.linear_form(Var::eps))
    }

    /// `p_lambda = sum_i lambda_i p_i`.
    pub fn p_form(&self) -> RatExpr {
        RatExpr::from_poly(self.linear_form(Var::p))
    }
}

impl Coroot {
    pub fn neg(&self) -> Coroot {
        Coroot(self.0.iter().map(|a| -a).collect())
    }

    pub fn add(&self, other: &Coroot) -> Coroot {
        Coroot(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `q^gamma` as a Laurent monomial in `q_1..q_n`; coordinates must be integral.
    pub fn q_monomial(&self) -> Result<crate::symbolic::Mono> {
        let mut pairs = Vec::new();
        for (i, c) in self.0.iter().enumerate() {
            if !c.is_integer() {
                return Err(Error::Invariant(format!("coroot {self} is not integral")));
            }
            pairs.push((Var::q(i + 1), c.to_integer() as i32));
        }
        Ok(crate::symbolic::Mono::from_pairs(pairs))
    }
}

pub(crate) fn rational_coeff(c: Q) -> crate::symbolic::Coeff {
    crate::symbolic::coeff_ratio(*c.numer(), *c.denom())
}

fn fmt_coords(f: &mut fmt::Formatter<'_>, v: &[Q]) -> fmt::Result {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    write!(f, "({})", parts.join(", "))
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coords(f, &self.0)
    }
}

impl fmt::Display for Coroot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coords(f, &self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub root: Weight,
    pub coroot: Coroot,
}

/// Root datum of a classical group. Type A uses the `GL_n` coordinates
/// `e_1..e_n`; the `SL_n` variant keeps the same coordinates but takes its
/// fundamental weights (and hence `rho`) orthogonal to `e_1 + ... + e_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub special_linear: bool,
    pub simple_roots: Vec<Weight>,
    pub simple_coroots: Vec<Coroot>,
    pub positive_roots: Vec<PositiveRoot>,
    pub fundamental_weights: Vec<Weight>,
    pub rho: Weight,
    pub p_param: Option<i64>,
}

fn vec_e(n: usize, entries: &[(usize, Q)]) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    for &(i, c) in entries {
        v[i] += c;
    }
    v
}

impl RootSystem {
    /// `(A, n)` is `GL_n`; `(B|C, n)` rank `n`; `(D, n)` needs `n >= 2`.
    pub fn new(family: Family, rank: usize) -> Result<RootSystem> {
        RootSystem::build(family, rank, false)
    }

    /// `SL_n` in `GL_n` coordinates.
    pub fn special_linear(n: usize) -> Result<RootSystem> {
        if n < 2 {
            return domain("SL_n needs n >= 2");
        }
        RootSystem::build(Family::A, n, true)
    }

    fn build(family: Family, n: usize, sl: bool) -> Result<RootSystem> {
        if n == 0 {
            return domain(format!("rank must be positive for family {family}"));
        }
        if family == Family::D && n < 2 {
            return domain("type D needs rank >= 2");
        }
        let one = Q::one();
        let e = |i: usize, j: usize, s: i64| vec_e(n, &[(i, one), (j, q(s))]);
        let mut pos = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pos.push(PositiveRoot { root: Weight(e(i, j, -1)), coroot: Coroot(e(i, j, -1)) });
            }
        }
        if family != Family::A {
            for i in 0..n {
                for j in i + 1..n {
                    pos.push(PositiveRoot { root: Weight(e(i, j, 1)), coroot: Coroot(e(i, j, 1)) });
                }
            }
        }
        match family {
            Family::B => {
                for i in 0..n {
                    pos.push(PositiveRoot { root: Weight(vec_e(n, &[(i, one)])), coroot: Coroot(vec_e(n, &[(i, q(2))])) });
                }
            }
            Family::C => {
                for i in 0..n {
                    pos.push(PositiveRoot { root: Weight(vec_e(n, &[(i, q(2))])), coroot: Coroot(vec_e(n, &[(i, one)])) });
                }
            }
            _ => {}
        }
        let mut simple_roots: Vec<Weight> = (0..n.saturating_sub(1)).map(|i| Weight(e(i, i + 1, -1))).collect();
        let mut simple_coroots: Vec<Coroot> = (0..n.saturating_sub(1)).map(|i| Coroot(e(i, i + 1, -1))).collect();
        let p_param = match family {
            Family::B => Some(2),
            Family::C => Some(1),
            _ => None,
        };
        match family {
            Family::A => {}
            Family::B | Family::C => {
                let p = p_param.expect("set for B/C");
                simple_roots.push(Weight(vec_e(n, &[(n - 1, Q::new(2, p))])));
                simple_coroots.push(Coroot(vec_e(n, &[(n - 1, q(p))])));
            }
            Family::D => {
                simple_roots.push(Weight(e(n - 2, n - 1, 1)));
                simple_coroots.push(Coroot(e(n - 2, n - 1, 1)));
            }
        }
        let prefix = |i: usize| Weight(vec_e(n, &(0..i).map(|k| (k, one)).collect::<Vec<_>>()));
        let fundamental_weights: Vec<Weight> = match family {
            Family::A if sl => (1..n)
                .map(|i| {
                    let shift = Q::new(i as i64, n as i64);
                    Weight((0..n).map(|k| if k < i { one - shift } else { -shift }).collect())
                })
                .collect(),
            Family::A => (1..n).map(prefix).collect(),
            Family::B => {
                let mut w: Vec<Weight> = (1..n).map(prefix).collect();
                w.push(Weight(vec![half(1); n]));
                w
            }
            Family::C => (1..=n).map(prefix).collect(),
            Family::D => {
                let mut w: Vec<Weight> = (1..n - 1).map(prefix).collect();
                let mut spin_minus = vec![half(1); n];
                spin_minus[n - 1] = half(-1);
                w.push(Weight(spin_minus));
                w.push(Weight(vec![half(1); n]));
                w
            }
        };
        let rho = fundamental_weights.iter().fold(Weight::zero(n), |acc, w| acc.add(w));
        let rs = RootSystem {
            family,
            rank: n,
            special_linear: sl,
            simple_roots,
            simple_coroots,
            positive_roots: pos,
            fundamental_weights,
            rho,
            p_param,
        };
        debug_assert_eq!(rs.rho, rs.half_sum_of_positive_roots().projected(&rs));
        Ok(rs)
    }

    /// Number of coordinates (`n`, also for `GL_n`).
    pub fn dim(&self) -> usize {
        self.rank
    }

    pub fn num_simple(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn label(&self) -> String {
        match (self.family, self.special_linear) {
            (Family::A, true) => format!("SL{}", self.rank),
            (Family::A, false) => format!("GL{}", self.rank),
            (f, _) => format!("{f}{}", self.rank),
        }
    }

    pub fn pairing(&self, lambda: &Weight, gamma: &Coroot) -> Result<Q> {
        pairing(lambda, gamma)
    }

    pub fn root(&self, idx: usize) -> Result<&PositiveRoot> {
        self.positive_roots
            .get(idx)
            .ok_or_else(|| Error::Domain(format!("root index {idx} out of range for {}", self.label())))
    }

    pub fn reflect(&self, lambda: &Weight, idx: usize) -> Result<Weight> {
        let r = self.root(idx)?;
        let c = pairing(lambda, &r.coroot)?;
        Ok(lambda.sub(&r.root.scale(c)))
    }

    pub fn simple_pairings(&self, lambda: &Weight) -> Result<Vec<Q>> {
        self.simple_coroots.iter().map(|c| pairing(lambda, c)).collect()
    }

    pub fn is_dominant(&self, lambda: &Weight) -> Result<bool> {
        Ok(self.simple_pairings(lambda)?.iter().all(|c| !c.is_negative()))
    }

    pub fn is_antidominant(&self, lambda: &Weight) -> Result<bool> {
        Ok(self.simple_pairings(lambda)?.iter().all(|c| !c.is_positive()))
    }

    pub fn is_strictly_dominant(&self, lambda: &Weight) -> Result<bool> {
        Ok(self.simple_pairings(lambda)?.iter().all(|c| c.is_positive()))
    }

    pub fn check_pm_dominant(&self, lambda: &Weight) -> Result<()> {
        if self.is_dominant(lambda)? || self.is_antidominant(lambda)? {
            Ok(())
        } else {
            domain(format!("weight {lambda} is neither dominant nor antidominant for {}", self.label()))
        }
    }

    /// Indices (0-based) of simple reflections fixing a (anti)dominant weight.
    pub fn stabilizer_generators(&self, lambda: &Weight) -> Result<Vec<usize>> {
        self.check_pm_dominant(lambda)?;
        Ok(self.simple_pairings(lambda)?.iter().enumerate().filter(|(_, c)| c.is_zero()).map(|(i, _)| i).collect())
    }

    /// Coordinates of a root in the basis of simple roots (exact solve).
    pub fn simple_root_coordinates(&self, root: &Weight) -> Result<Vec<Q>> {
        let r = self.num_simple();
        let rows = self.dim();
        // Augmented system: columns are simple roots.
        let mut m: Vec<Vec<Q>> = (0..rows)
            .map(|i| {
                let mut row: Vec<Q> = self.simple_roots.iter().map(|a| a.0[i]).collect();
                row.push(root.0[i]);
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..r {
            let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else { continue };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for x in m[row].iter_mut() {
                *x *= inv;
            }
            for i in 0..rows {
                if i != row && !m[i][col].is_zero() {
                    let f = m[i][col];
                    for j in 0..=r {
                        let v = m[row][j];
                        m[i][j] -= f * v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if m[row..].iter().any(|x| !x[r].is_zero()) {
            return domain(format!("{root} is not in the root span"));
        }
        let mut out = vec![Q::zero(); r];
        for (i, &c) in pivots.iter().enumerate() {
            out[c] = m[i][r];
        }
        Ok(out)
    }

    /// `R^+_lambda`: positive roots in the span of the simple roots fixing `lambda`.
    pub fn stabilizer_roots(&self, lambda: &Weight) -> Result<Vec<usize>> {
        let j = self.stabilizer_generators(lambda)?;
        let mut out = Vec::new();
        for (idx, r) in self.positive_roots.iter().enumerate() {
            let c = self.simple_root_coordinates(&r.root)?;
            if c.iter().enumerate().all(|(i, x)| x.is_zero() || j.contains(&i)) {
                out.push(idx);
            }
        }
        Ok(out)
    }

    fn half_sum_of_positive_roots(&self) -> Weight {
        let n = self.dim();
        let s = self.positive_roots.iter().fold(Weight::zero(n), |acc, r| acc.add(&r.root));
        s.scale(half(1))
    }

    /// Parses `-e1`, `rho`, `fund:i`, `0` or an explicit vector `a,b,c` (entries `p/q` allowed).
    pub fn parse_weight(&self, spec: &str) -> Result<Weight> {
        let n = self.dim();
        let s = spec.trim();
        if s == "rho" {
            return Ok(self.rho.clone());
        }
        if s == "0" {
            return Ok(Weight::zero(n));
        }
        if let Some(rest) = s.strip_prefix("fund:") {
            let i: usize = rest.parse().map_err(|_| Error::Domain(format!("bad fundamental index `{rest}`")))?;
            return self
                .fundamental_weights
                .get(i.wrapping_sub(1))
                .cloned()
                .ok_or_else(|| Error::Domain(format!("no fundamental weight {i} for {}", self.label())));
        }
        if let Some(rest) = s.strip_prefix("-e").or_else(|| s.strip_prefix("e")) {
            if let Ok(i) = rest.parse::<usize>() {
                if i == 0 || i > n {
                    return domain(format!("basis index {i} out of range"));
                }
                let w = Weight::basis(n, i);
                return Ok(if s.starts_with('-') { w.neg() } else { w });
            }
        }
        let parts: Vec<&str> = s.trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']').split(',').collect();
        if parts.len() != n {
            return domain(format!("weight `{spec}` needs {n} coordinates"));
        }
        let mut v = Vec::with_capacity(n);
        for p in parts {
            let p = p.trim();
            let x = match p.split_once('/') {
                Some((a, b)) => {
                    let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad(p))?, b.trim().parse().map_err(|_| bad(p))?);
                    if b == 0 {
                        return Err(bad(p));
                    }
                    Q::new(a, b)
                }
                None => q(p.parse().map_err(|_| bad(p))?),
            };
            v.push(x);
        }
        let w = Weight(v);
        self.check_lattice(&w)?;
        Ok(w)
    }

    /// Type D (and B spin) weights may be half-integral but must have integral differences.
    pub fn check_lattice(&self, w: &Weight) -> Result<()> {
        for a in &w.0 {
            for b in &w.0 {
                if !(a - b).is_integer() {
                    return domain(format!("weight {w} has non-integral coordinate differences"));
                }
            }
        }
        Ok(())
    }
}

fn bad(p: &str) -> Error {
    Error::Domain(format!("bad weight coordinate `{p}`"))
}

impl Weight {
    /// For `SL_n`, `rho` is the half-sum projected orthogonally to `sum e_i`;
    /// for the other conventions the half-sum is already `rho`, except `GL_n`
    /// whose `rho` is shifted by a multiple of `sum e_i`.
    fn projected(&self, rs: &RootSystem) -> Weight {
        if rs.family != Family::A {
            return self.clone();
        }
        let n = rs.dim() as i64;
        let mean = self.0.iter().fold(Q::zero(), |a, b| a + b) / q(n);
        let centered: Vec<Q> = self.0.iter().map(|x| x - mean).collect();
        if rs.special_linear {
            Weight(centered)
        } else {
            // rho_GL = (n-1, ..., 0) = centered + (n-1)/2 * sum e_i
            Weight(centered.iter().map(|x| x + Q::new(n - 1, 2)).collect())
        }
    }
}

pub fn pairing(lambda: &Weight, gamma: &Coroot) -> Result<Q> {
    if lambda.dim() != gamma.0.len() {
        return domain(format!("dimension mismatch: weight {} vs coroot {}", lambda.dim(), gamma.0.len()));
    }
    Ok(lambda.0.iter().zip(&gamma.0).fold(Q::zero(), |acc, (a, b)| acc + a * b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all() -> Vec<RootSystem> {
        let mut v = Vec::new();
        for n in 1..=4 {
            v.push(RootSystem::new(Family::A, n).unwrap());
            v.push(RootSystem::new(Family::B, n).unwrap());
            v.push(RootSystem::new(Family::C, n).unwrap());
            if n >= 2 {
                v.push(RootSystem::new(Family::D, n).unwrap());
                v.push(RootSystem::special_linear(n).unwrap());
            }
        }
        v
    }

    #[test]
    fn root_counts() {
        for rs in all() {
            let n = rs.rank;
            let expect = match rs.family {
                Family::A => n * (n - 1) / 2,
                Family::B | Family::C => n * n,
                Family::D => n * (n - 1),
            };
            assert_eq!(rs.positive_roots.len(), expect, "{}", rs.label());
        }
    }

    #[test]
    fn cartan_matrix() {
        for rs in all() {
            let r = rs.num_simple();
            for i in 0..r {
                for j in 0..r {
                    let a = pairing(&rs.simple_roots[i], &rs.simple_coroots[j]).unwrap();
                    assert!(a.is_integer());
                    if i == j {
                        assert_eq!(a, q(2));
                    } else {
                        assert!(a <= Q::zero());
                    }
                }
            }
            // Simple roots and fundamental weights are dual.
            for (i, w) in rs.fundamental_weights.iter().enumerate() {
                for (j, c) in rs.simple_coroots.iter().enumerate() {
                    assert_eq!(pairing(w, c).unwrap(), if i == j { Q::one() } else { Q::zero() });
                }
            }
        }
    }

    #[test]
    fn rho_pairs_to_one() {
        for rs in all() {
            for c in &rs.simple_coroots {
                assert_eq!(pairing(&rs.rho, c).unwrap(), Q::one(), "{}", rs.label());
            }
        }
        let gl = RootSystem::new(Family::A, 4).unwrap();
        assert_eq!(gl.rho, Weight::from_ints(&[3, 2, 1, 0]));
        assert_eq!(RootSystem::new(Family::C, 2).unwrap().rho, Weight::from_ints(&[2, 1]));
        assert_eq!(RootSystem::new(Family::B, 2).unwrap().rho, Weight(vec![half(3), half(1)]));
    }

    #[test]
    fn listed_examples() {
        let a = RootSystem::new(Family::A, 3).unwrap();
        let roots: Vec<Weight> = a.positive_roots.iter().map(|r| r.root.clone()).collect();
        assert_eq!(roots, vec![Weight::from_ints(&[1, -1, 0]), Weight::from_ints(&[1, 0, -1]), Weight::from_ints(&[0, 1, -1])]);
        let c = RootSystem::new(Family::C, 2).unwrap();
        assert_eq!(c.simple_coroots, vec![Coroot(vec![q(1), q(-1)]), Coroot(vec![q(0), q(1)])]);
        let d = RootSystem::new(Family::D, 2).unwrap();
        let roots: Vec<Weight> = d.positive_roots.iter().map(|r| r.root.clone()).collect();
        assert_eq!(roots, vec![Weight::from_ints(&[1, -1]), Weight::from_ints(&[1, 1])]);
        assert!(RootSystem::new(Family::D, 1).is_err());
        assert!(RootSystem::new(Family::A, 0).is_err());
    }

    #[test]
    fn pairing_examples() {
        let sl2 = RootSystem::special_linear(2).unwrap();
        let w = &sl2.fundamental_weights[0];
        assert_eq!(pairing(w, &sl2.simple_coroots[0]).unwrap(), Q::one());
        assert_eq!(sl2.reflect(w, 0).unwrap(), w.neg());
        let d = RootSystem::new(Family::D, 2).unwrap();
        assert_eq!(pairing(&Weight(vec![half(1), half(1)]), &Coroot(vec![q(1), q(1)])).unwrap(), Q::one());
        assert_eq!(d.reflect(&Weight::basis(2, 1), 0).unwrap(), Weight::basis(2, 2));
        let b = RootSystem::new(Family::B, 2).unwrap();
        let e2 = Weight::basis(2, 2);
        let idx = b.positive_roots.iter().position(|r| r.root == e2).unwrap();
        assert_eq!(b.reflect(&e2, idx).unwrap(), e2.neg());
        assert!(pairing(&e2, &Coroot(vec![q(1)])).is_err());
    }

    #[test]
    fn reflections_are_involutions_and_integral() {
        for rs in all() {
            let n = rs.dim();
            for idx in 0..rs.positive_roots.len() {
                for i in 1..=n {
                    let e = Weight::basis(n, i);
                    assert_eq!(rs.reflect(&rs.reflect(&e, idx).unwrap(), idx).unwrap(), e);
                }
                for r in &rs.positive_roots {
                    assert!(pairing(&r.root, &rs.positive_roots[idx].coroot).unwrap().is_integer());
                }
            }
        }
    }

    #[test]
    fn stabilizers() {
        let a = RootSystem::new(Family::A, 3).unwrap();
        assert_eq!(a.stabilizer_generators(&Weight::from_ints(&[-1, 0, 0])).unwrap(), vec![1]);
        assert!(a.stabilizer_generators(&a.rho).unwrap().is_empty());
        assert_eq!(a.stabilizer_generators(&Weight::zero(3)).unwrap(), vec![0, 1]);
        assert!(a.stabilizer_generators(&Weight::from_ints(&[0, 1, 0])).is_err());
    }

    #[test]
    fn stabilizer_roots_match_zero_pairing() {
        for rs in all() {
            let mut weights = vec![rs.rho.clone(), Weight::zero(rs.dim()), Weight::basis(rs.dim(), 1).neg()];
            weights.extend(rs.fundamental_weights.iter().cloned());
            for w in weights {
                if rs.check_pm_dominant(&w).is_err() {
                    continue;
                }
                let by_span = rs.stabilizer_roots(&w).unwrap();
                let by_pairing: Vec<usize> = (0..rs.positive_roots.len())
                    .filter(|&i| pairing(&w, &rs.positive_roots[i].coroot).unwrap().is_zero())
                    .collect();
                assert_eq!(by_span, by_pairing, "{} {w}", rs.label());
            }
        }
    }

    #[test]
    fn weight_specs() {
        let b = RootSystem::new(Family::B, 3).unwrap();
        assert_eq!(b.parse_weight("-e1").unwrap(), Weight::from_ints(&[-1, 0, 0]));
        assert_eq!(b.parse_weight("fund:3").unwrap(), Weight(vec![half(1); 3]));
        assert_eq!(b.parse_weight("1/2, 1/2, -1/2").unwrap(), Weight(vec![half(1), half(1), half(-1)]));
        assert!(b.parse_weight("1/2, 1, 0").is_err());
        assert!(b.parse_weight("fund:4").is_err());
    }
}
