//! Weyl groups of classical type as signed permutations.

use crate::error::{domain, Error, Result};
use crate::rootdata::{Coroot, Family, RootSystem, Weight, Q};
use crate::symbolic::{Mono, RatExpr, Var, VarKind};
use num_traits::{Signed, Zero};
use smallvec::SmallVec;
use std::collections::HashMap;
use std::fmt;

/// Default cap on `|W|` for full enumeration (`|S_8|`).
pub const DEFAULT_MAX_WEYL: usize = 40320;

/// `w(e_i) = sign * e_{|perm[i-1]|}`, stored as a signed 1-based image.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElem {
    perm: SmallVec<[i8; 8]>,
    length: u32,
}

fn first_nonzero_positive(v: &[Q]) -> Option<bool> {
    v.iter().find(|c| !c.is_zero()).map(|c| c.is_positive())
}

impl WeylElem {
    pub fn identity(n: usize) -> WeylElem {
        WeylElem { perm: (1..=n as i8).collect(), length: 0 }
    }

    /// Builds an element from its signed one-line form, checking it lies in `W(rs)`.
    pub fn from_signed_perm(rs: &RootSystem, images: &[i8]) -> Result<WeylElem> {
        let n = rs.dim();
        if images.len() != n {
            return domain(format!("signed permutation needs {n} entries"));
        }
        let mut seen = vec![false; n];
        for &x in images {
            let k = x.unsigned_abs() as usize;
            if k == 0 || k > n || seen[k - 1] {
                return domain(format!("{images:?} is not a signed permutation"));
            }
            seen[k - 1] = true;
        }
        let negatives = images.iter().filter(|&&x| x < 0).count();
        match rs.family {
            Family::A if negatives > 0 => return domain("type A elements carry no signs"),
            Family::D if negatives % 2 == 1 => return domain("type D elements have an even number of signs"),
            _ => {}
        }
        let mut w = WeylElem { perm: images.iter().copied().collect(), length: 0 };
        w.length = w.count_inversions(rs);
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn signed_perm(&self) -> &[i8] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// `#{alpha > 0 : w(alpha) < 0}`, recounted from scratch.
    pub fn count_inversions(&self, rs: &RootSystem) -> u32 {
        rs.positive_roots
            .iter()
            .filter(|r| first_nonzero_positive(&self.apply(&r.root.0)) == Some(false))
            .count() as u32
    }

    fn apply(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); v.len()];
        for (i, &x) in self.perm.iter().enumerate() {
            let k = x.unsigned_abs() as usize - 1;
            out[k] = if x < 0 { -v[i] } else { v[i] };
        }
        out
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        if d != self.rank() {
            return domain(format!("dimension mismatch: element of rank {} acting on vector of length {d}", self.rank()));
        }
        Ok(())
    }

    pub fn act_weight(&self, lambda: &Weight) -> Result<Weight> {
        self.check_dim(lambda.dim())?;
        Ok(Weight(self.apply(&lambda.0)))
    }

    pub fn act_coroot(&self, gamma: &Coroot) -> Result<Coroot> {
        self.check_dim(gamma.0.len())?;
        Ok(Coroot(self.apply(&gamma.0)))
    }

    /// Whether `w(alpha)` is a positive root, for a root in weight coordinates.
    pub fn keeps_positive(&self, alpha: &Weight) -> bool {
        first_nonzero_positive(&self.apply(&alpha.0)) == Some(true)
    }

    pub fn mul(&self, other: &WeylElem, rs: &RootSystem) -> WeylElem {
        let perm = other
            .perm
            .iter()
            .map(|&x| {
                let y = self.perm[x.unsigned_abs() as usize - 1];
                if x < 0 {
                    -y
                } else {
                    y
                }
            })
            .collect();
        let mut w = WeylElem { perm, length: 0 };
        w.length = w.count_inversions(rs);
        w
    }

    pub fn inverse(&self) -> WeylElem {
        let mut perm: SmallVec<[i8; 8]> = SmallVec::from_elem(0, self.rank());
        for (i, &x) in self.perm.iter().enumerate() {
            let k = x.unsigned_abs() as usize - 1;
            perm[k] = if x < 0 { -(i as i8 + 1) } else { i as i8 + 1 };
        }
        WeylElem { perm, length: self.length }
    }

    /// Image of a monomial: `q_i -> q^{w e_i}` multiplicatively for the listed
    /// multiplicative kinds, `v_i -> sign * v_{|w(i)|}` for the linear kinds.
    pub fn act_mono(&self, m: &Mono, kinds: &[VarKind]) -> (Mono, i64) {
        let mut sign = 1i64;
        let mut pairs = Vec::with_capacity(m.pairs().len());
        for &(v, e) in m.pairs() {
            if !kinds.contains(&v.kind()) || v.index() == 0 || v.index() > self.rank() {
                pairs.push((v, e));
                continue;
            }
            let x = self.perm[v.index() - 1];
            let target = Var::indexed(v.kind(), x.unsigned_abs() as usize);
            let negative = x < 0;
            if v.kind() == VarKind::Q {
                pairs.push((target, if negative { -e } else { e }));
            } else {
                if negative && e % 2 != 0 {
                    sign = -sign;
                }
                pairs.push((target, e));
            }
        }
        (Mono::from_pairs(pairs), sign)
    }

    /// Applies the action to the listed variable families of an expression.
    pub fn act_expr(&self, x: &RatExpr, kinds: &[VarKind]) -> RatExpr {
        x.map_monomials(|m| {
            let (m2, s) = self.act_mono(m, kinds);
            (m2, crate::symbolic::coeff(s))
        })
    }

    /// The action on the quantum parameters `q_i` only.
    pub fn act_q(&self, x: &RatExpr) -> RatExpr {
        self.act_expr(x, &[VarKind::Q])
    }
}

impl fmt::Display for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.perm.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Order of `W` for a root system.
pub fn weyl_order(rs: &RootSystem) -> u128 {
    let n = rs.dim() as u128;
    let fact: u128 = (1..=n).product();
    match rs.family {
        Family::A => fact,
        Family::B | Family::C => fact << n,
        Family::D => fact << (n - 1),
    }
}

/// Simple reflection `s_i` (1-based).
pub fn simple_reflection(rs: &RootSystem, i: usize) -> Result<WeylElem> {
    let (alpha, coroot) = match (rs.simple_roots.get(i.wrapping_sub(1)), rs.simple_coroots.get(i.wrapping_sub(1))) {
        (Some(a), Some(c)) => (a, c),
        _ => return domain(format!("no simple reflection s{i} in {}", rs.label())),
    };
    reflection_of(rs, alpha, coroot)
}

/// The reflection `s_alpha` for a positive root index.
pub fn root_reflection(rs: &RootSystem, idx: usize) -> Result<WeylElem> {
    let r = rs.root(idx)?;
    reflection_of(rs, &r.root, &r.coroot)
}

fn reflection_of(rs: &RootSystem, alpha: &Weight, coroot: &Coroot) -> Result<WeylElem> {
    let n = rs.dim();
    let mut images = Vec::with_capacity(n);
    for i in 1..=n {
        let e = Weight::basis(n, i);
        let c = crate::rootdata::pairing(&e, coroot)?;
        let img = e.sub(&alpha.scale(c));
        let nz: Vec<(usize, &Q)> = img.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        match nz.as_slice() {
            [(k, x)] if x.abs() == Q::from_integer(1) => {
                let k = *k as i8 + 1;
                images.push(if x.is_positive() { k } else { -k });
            }
            _ => return Err(Error::Invariant(format!("reflection image of e{i} is not a signed basis vector"))),
        }
    }
    WeylElem::from_signed_perm(rs, &images)
}

/// The whole group, enumerated once and indexed for matrix layouts.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub rs: RootSystem,
    elements: Vec<WeylElem>,
    words: Vec<Vec<usize>>,
    index: HashMap<WeylElem, usize>,
    simple: Vec<WeylElem>,
}

impl WeylGroup {
    /// Enumerates `W` ordered by length, then lexicographically by the reduced
    /// word built from the smallest left descent at every step.
    pub fn new(rs: &RootSystem, max_size: usize) -> Result<WeylGroup> {
        let order = weyl_order(rs);
        if order > max_size as u128 {
            return Err(Error::Resource { what: format!("Weyl group of {}", rs.label()), size: order.min(usize::MAX as u128) as usize, bound: max_size });
        }
        let simple: Vec<WeylElem> = (1..=rs.num_simple()).map(|i| simple_reflection(rs, i)).collect::<Result<_>>()?;
        // Breadth-first by length: every element of length l+1 is s_i w with l(w) = l.
        let id = WeylElem::identity(rs.dim());
        let mut word_of: HashMap<WeylElem, Vec<usize>> = HashMap::new();
        word_of.insert(id.clone(), Vec::new());
        let mut layer = vec![id];
        let mut all: Vec<(WeylElem, Vec<usize>)> = vec![(layer[0].clone(), Vec::new())];
        while !layer.is_empty() {
            let mut next: HashMap<WeylElem, Vec<usize>> = HashMap::new();
            for w in &layer {
                for (i, s) in simple.iter().enumerate() {
                    let sw = s.mul(w, rs);
                    if sw.length != w.length + 1 {
                        continue;
                    }
                    let mut word = vec![i + 1];
                    word.extend_from_slice(&word_of[w]);
                    next.entry(sw)
                        .and_modify(|cur| {
                            if word < *cur {
                                *cur = word.clone();
                            }
                        })
                        .or_insert(word);
                }
            }
            let mut layer_items: Vec<(WeylElem, Vec<usize>)> = next.into_iter().collect();
            layer_items.sort_by(|a, b| a.1.cmp(&b.1));
            layer = layer_items.iter().map(|(w, _)| w.clone()).collect();
            for (w, word) in layer_items {
                word_of.insert(w.clone(), word.clone());
                all.push((w, word));
            }
        }
        if all.len() as u128 != order {
            return Err(Error::Invariant(format!("enumerated {} elements, expected {order}", all.len())));
        }
        let index = all.iter().enumerate().map(|(i, (w, _))| (w.clone(), i)).collect();
        let (elements, words) = all.into_iter().unzip();
        Ok(WeylGroup { rs: rs.clone(), elements, words, index, simple })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElem] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &WeylElem {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &WeylElem) -> usize {
        self.index[w]
    }

    pub fn simple(&self, i: usize) -> &WeylElem {
        &self.simple[i - 1]
    }

    /// Reduced word `[i_1, ..., i_k]` meaning `s_{i_1} ... s_{i_k}`.
    pub fn word(&self, w: &WeylElem) -> &[usize] {
        &self.words[self.index_of(w)]
    }

    pub fn word_string(&self, w: &WeylElem) -> String {
        format_word(self.word(w))
    }

    pub fn mul(&self, u: &WeylElem, v: &WeylElem) -> WeylElem {
        u.mul(v, &self.rs)
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElem> {
        let mut w = WeylElem::identity(self.rs.dim());
        for &i in word {
            let s = self.simple.get(i.wrapping_sub(1)).ok_or_else(|| Error::Domain(format!("no simple reflection s{i}")))?;
            w = self.mul(&w, s);
        }
        Ok(w)
    }

    pub fn longest(&self) -> &WeylElem {
        self.elements.last().expect("group is nonempty")
    }

    /// `w s_j < w`.
    pub fn is_right_descent(&self, w: &WeylElem, j: usize) -> bool {
        !w.keeps_positive(&self.rs.simple_roots[j])
    }

    /// Minimal-length element of `w W_lambda`.
    pub fn coset_min_rep(&self, w: &WeylElem, lambda: &Weight) -> Result<WeylElem> {
        let stab = self.rs.stabilizer_generators(lambda)?;
        Ok(self.min_rep_with(w, &stab))
    }

    fn min_rep_with(&self, w: &WeylElem, stab: &[usize]) -> WeylElem {
        let mut cur = w.clone();
        while let Some(&j) = stab.iter().find(|&&j| self.is_right_descent(&cur, j)) {
            cur = self.mul(&cur, &self.simple[j]);
        }
        cur
    }

    pub fn min_coset_reps(&self, lambda: &Weight) -> Result<CosetList> {
        let stab = self.rs.stabilizer_generators(lambda)?;
        let mut reps: Vec<WeylElem> =
            self.elements.iter().filter(|w| stab.iter().all(|&j| !self.is_right_descent(w, j))).cloned().collect();
        let n = self.rs.dim();
        let minus_e1 = Weight::basis(n, 1).neg();
        let order_tag = if *lambda == minus_e1 && n >= 2 {
            // Order by u(e_1) along e_1, ..., e_n, -e_n, ..., -e_1.
            let key = |u: &WeylElem| {
                let x = u.perm[0];
                if x > 0 {
                    x as i32
                } else {
                    2 * n as i32 + 1 + x as i32
                }
            };
            reps.sort_by_key(key);
            match self.rs.family {
                Family::A => OrderTag::PaperA,
                Family::B | Family::C => OrderTag::PaperBC,
                Family::D => OrderTag::PaperD,
            }
        } else {
            OrderTag::Generic
        };
        let expected = self.len() / self.stabilizer_order(&stab);
        if reps.len() != expected {
            return Err(Error::Invariant(format!("found {} coset representatives, expected {expected}", reps.len())));
        }
        Ok(CosetList { reps, lambda: lambda.clone(), order_tag })
    }

    fn stabilizer_order(&self, stab: &[usize]) -> usize {
        self.elements.iter().filter(|w| self.words[self.index_of(w)].iter().all(|i| stab.contains(&(i - 1)))).count()
    }

    /// The unique positive root `alpha` outside `R^+_lambda` with `min_rep(u s_alpha) = v`.
    pub fn offdiag_root(&self, u: &WeylElem, v: &WeylElem, lambda: &Weight) -> Result<Option<usize>> {
        if u == v {
            return domain("offdiag_root needs u != v");
        }
        let stab = self.rs.stabilizer_generators(lambda)?;
        let mut found = None;
        for (idx, r) in self.rs.positive_roots.iter().enumerate() {
            if crate::rootdata::pairing(lambda, &r.coroot)?.is_zero() {
                continue;
            }
            let s = root_reflection(&self.rs, idx)?;
            if self.min_rep_with(&self.mul(u, &s), &stab) == *v {
                if let Some(prev) = found {
                    return Err(Error::Invariant(format!(
                        "roots {prev} and {idx} both connect {} to {} for weight {lambda}",
                        self.word_string(u),
                        self.word_string(v)
                    )));
                }
                found = Some(idx);
            }
        }
        Ok(found)
    }
}

pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        "id".to_string()
    } else {
        word.iter().map(|i| format!("s{i}")).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderTag {
    PaperA,
    PaperBC,
    PaperD,
    Generic,
}

/// Minimal coset representatives `W^lambda` in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetList {
    pub reps: Vec<WeylElem>,
    pub lambda: Weight,
    pub order_tag: OrderTag,
}

impl CosetList {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn position(&self, w: &WeylElem) -> Option<usize> {
        self.reps.iter().position(|r| r == w)
    }
}
