//! Quantum multiplication in the stable basis: Chevalley operators, quantum
//! Demazure-Lusztig transforms, `Theta(lambda)` and its trace relations.

use crate::error::{domain, Error, Result};
use crate::report::VerifyReport;
use crate::rootdata::{pairing, rational_coeff, Family, RootSystem, Weight};
use crate::symbolic::rat::over_one_minus;
use crate::symbolic::{coeff, Mono, RatExpr, SymMatrix, Var, VarKind};
use crate::weyl::{CosetList, WeylElem, WeylGroup};
use std::collections::HashMap;

/// `hbar * sum_{alpha > 0} <lambda, alpha^vee> q^{alpha^vee} / (1 - q^{alpha^vee})`, so that
/// `Delta_lambda = D_lambda + shift`.
pub fn delta_class_shift(rs: &RootSystem, lambda: &Weight) -> Result<RatExpr> {
    let mut terms = Vec::new();
    for r in &rs.positive_roots {
        let c = pairing(lambda, &r.coroot)?;
        if c.is_integer() && c.to_integer() == 0 {
            continue;
        }
        let m = r.coroot.q_monomial()?;
        let num = RatExpr::mono(m.clone()).scale(&rational_coeff(c));
        terms.push(over_one_minus(num, &m));
    }
    Ok(RatExpr::sum(terms.iter()).mul(&RatExpr::var(Var::HBAR)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// The divisor class `D_lambda`.
    D,
    /// The shifted class `Delta_lambda = D_lambda + shift`.
    Delta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpLabel {
    MultD(Weight),
    MultDelta(Weight),
    Derived,
}

/// Matrix of a quantum multiplication operator in the basis `Stab_-(w)`,
/// ordered as [`WeylGroup::elements`]. Column `w` is the image of `Stab_-(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpMatrix {
    pub label: OpLabel,
    pub matrix: SymMatrix,
}

impl OpMatrix {
    pub fn derived(matrix: SymMatrix) -> OpMatrix {
        OpMatrix { label: OpLabel::Derived, matrix }
    }

    pub fn mul(&self, other: &OpMatrix) -> OpMatrix {
        OpMatrix::derived(self.matrix.mul(&other.matrix))
    }

    pub fn apply(&self, v: &StableVec) -> StableVec {
        let n = self.matrix.dim();
        let coeffs = (0..n)
            .map(|i| {
                let terms: Vec<RatExpr> = (0..n)
                    .filter(|&j| !v.coeffs[j].is_zero() && !self.matrix.get(i, j).is_zero())
                    .map(|j| self.matrix.get(i, j).mul(&v.coeffs[j]))
                    .collect();
                RatExpr::sum(terms.iter())
            })
            .collect();
        StableVec { coeffs }
    }
}

/// Entry for `Stab_-(ws_alpha)` in column `w` of `Delta_lambda`.
fn chevalley_coefficient(c: &RatExpr, q_alpha: &Mono, w_keeps_alpha_positive: bool) -> RatExpr {
    let num = if w_keeps_alpha_positive { c.neg() } else { c.neg().mul(&RatExpr::mono(q_alpha.clone())) };
    over_one_minus(num, q_alpha)
}

pub fn chevalley_operator(g: &WeylGroup, lambda: &Weight, variant: Variant) -> Result<OpMatrix> {
    let rs = &g.rs;
    let n = g.len();
    let mut m = SymMatrix::zeros(n);
    let hbar = RatExpr::var(Var::HBAR);
    let mut root_data = Vec::new();
    for (idx, r) in rs.positive_roots.iter().enumerate() {
        let c = pairing(lambda, &r.coroot)?;
        if c == num_rational::Rational64::from_integer(0) {
            continue;
        }
        let refl = crate::weyl::root_reflection(rs, idx)?;
        root_data.push((r, hbar.scale(&rational_coeff(c)), r.coroot.q_monomial()?, refl));
    }
    let shift = match variant {
        Variant::D => delta_class_shift(rs, lambda)?,
        Variant::Delta => RatExpr::zero(),
    };
    for (col, w) in g.elements().iter().enumerate() {
        m.set(col, col, w.act_weight(lambda)?.eps_form().sub(&shift));
        for (r, c, q_alpha, refl) in &root_data {
            let row = g.index_of(&g.mul(w, refl));
            let entry = chevalley_coefficient(c, q_alpha, w.keeps_positive(&r.root));
            let cur = m.get(row, col).add(&entry);
            m.set(row, col, cur);
        }
    }
    let label = match variant {
        Variant::D => OpLabel::MultD(lambda.clone()),
        Variant::Delta => OpLabel::MultDelta(lambda.clone()),
    };
    Ok(OpMatrix { label, matrix: m })
}

/// `sum_w c_w Stab_-(w)`, dense in the group order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableVec {
    pub coeffs: Vec<RatExpr>,
}

impl StableVec {
    pub fn zero(g: &WeylGroup) -> StableVec {
        StableVec { coeffs: vec![RatExpr::zero(); g.len()] }
    }

    pub fn basis(g: &WeylGroup, w: &WeylElem) -> StableVec {
        let mut v = StableVec::zero(g);
        v.coeffs[g.index_of(w)] = RatExpr::one();
        v
    }

    pub fn scale(&self, c: &RatExpr) -> StableVec {
        StableVec { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn add(&self, other: &StableVec) -> StableVec {
        StableVec { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }
}

/// `T_u`: coefficients through the action of `u` on `q`, basis `w -> (-1)^{l(u)} w u^{-1}`.
pub fn dl_transform(g: &WeylGroup, u: &WeylElem, v: &StableVec) -> StableVec {
    let mut out = StableVec::zero(g);
    let u_inv = u.inverse();
    let odd = u.length() % 2 == 1;
    for (i, c) in v.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let target = g.index_of(&g.mul(g.get(i), &u_inv));
        let img = u.act_q(c);
        out.coeffs[target] = if odd { img.neg() } else { img };
    }
    out
}

/// `T_u M T_u^{-1}` for an operator matrix.
pub fn dl_conjugate(g: &WeylGroup, u: &WeylElem, m: &OpMatrix) -> OpMatrix {
    let u_inv = u.inverse();
    let perm: Vec<usize> = g.elements().iter().map(|w| g.index_of(&g.mul(w, &u_inv))).collect();
    let mut out = SymMatrix::zeros(g.len());
    for i in 0..g.len() {
        for j in 0..g.len() {
            let x = m.matrix.get(i, j);
            if !x.is_zero() {
                out.set(perm[i], perm[j], u.act_q(x));
            }
        }
    }
    OpMatrix::derived(out)
}

/// Elements of the stabilizer `W_lambda` (in group order).
pub fn stabilizer_elements(g: &WeylGroup, lambda: &Weight) -> Result<Vec<WeylElem>> {
    g.rs.check_pm_dominant(lambda)?;
    Ok(g.elements().iter().filter(|w| w.act_weight(lambda).map(|x| x == *lambda).unwrap_or(false)).cloned().collect())
}

/// `varsigma_lambda = sum_{w in W_lambda} (-1)^{l(w)} Stab_-(w)`.
pub fn averaging_class(g: &WeylGroup, lambda: &Weight) -> Result<StableVec> {
    let mut v = StableVec::zero(g);
    for w in stabilizer_elements(g, lambda)? {
        v.coeffs[g.index_of(&w)] = RatExpr::int(if w.length() % 2 == 0 { 1 } else { -1 });
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaBlock {
    /// `Delta_{u lambda}` for the weight `u lambda`.
    Delta(Weight),
    Scalar(RatExpr),
    Zero,
}

#[derive(Clone, Debug)]
pub struct ThetaMatrix {
    pub lambda: Weight,
    pub reps: CosetList,
    pub blocks: Vec<Vec<ThetaBlock>>,
}

impl ThetaMatrix {
    pub fn dim(&self) -> usize {
        self.blocks.len()
    }

    /// Replaces each diagonal `Delta_{u lambda}` by `diag(u lambda)` and keeps the scalars.
    pub fn instantiate(&self, diag: impl Fn(&Weight) -> Result<RatExpr>) -> Result<SymMatrix> {
        let m = self.dim();
        let mut out = SymMatrix::zeros(m);
        for i in 0..m {
            for j in 0..m {
                let v = match &self.blocks[i][j] {
                    ThetaBlock::Delta(w) => diag(w)?,
                    ThetaBlock::Scalar(s) => s.clone(),
                    ThetaBlock::Zero => continue,
                };
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// The scalar skeleton: off-diagonal entries only.
    pub fn scalar_skeleton(&self) -> Result<SymMatrix> {
        self.instantiate(|_| Ok(RatExpr::zero()))
    }
}

pub fn theta_matrix(g: &WeylGroup, lambda: &Weight) -> Result<ThetaMatrix> {
    let reps = g.min_coset_reps(lambda)?;
    let m = reps.len();
    let hbar = RatExpr::var(Var::HBAR);
    let mut blocks = vec![vec![ThetaBlock::Zero; m]; m];
    for (i, u) in reps.reps.iter().enumerate() {
        blocks[i][i] = ThetaBlock::Delta(u.act_weight(lambda)?);
        for (j, v) in reps.reps.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some(idx) = g.offdiag_root(u, v, lambda)? {
                let r = &g.rs.positive_roots[idx];
                let c = pairing(lambda, &r.coroot)?;
                let q_ua = u.act_coroot(&r.coroot)?.q_monomial()?;
                blocks[i][j] = ThetaBlock::Scalar(over_one_minus(hbar.scale(&rational_coeff(-c)), &q_ua));
            }
        }
    }
    Ok(ThetaMatrix { lambda: lambda.clone(), reps, blocks })
}

/// A block of `Theta` realized on the stable basis.
#[derive(Clone, Debug)]
enum Block {
    Zero,
    Scalar(RatExpr),
    Op(SymMatrix),
}

impl Block {
    fn mul(&self, other: &Block) -> Block {
        match (self, other) {
            (Block::Zero, _) | (_, Block::Zero) => Block::Zero,
            (Block::Scalar(a), Block::Scalar(b)) => Block::Scalar(a.mul(b)),
            (Block::Scalar(a), Block::Op(m)) | (Block::Op(m), Block::Scalar(a)) => Block::Op(m.scale(a)),
            (Block::Op(a), Block::Op(b)) => Block::Op(a.mul(b)),
        }
    }

    fn add(&self, other: &Block, n: usize) -> Block {
        match (self, other) {
            (Block::Zero, x) | (x, Block::Zero) => x.clone(),
            (Block::Scalar(a), Block::Scalar(b)) => Block::Scalar(a.add(b)),
            (Block::Scalar(a), Block::Op(m)) | (Block::Op(m), Block::Scalar(a)) => Block::Op(m.add(&SymMatrix::scalar(n, a))),
            (Block::Op(a), Block::Op(b)) => Block::Op(a.add(b)),
        }
    }

    fn into_matrix(self, n: usize) -> SymMatrix {
        match self {
            Block::Zero => SymMatrix::zeros(n),
            Block::Scalar(a) => SymMatrix::scalar(n, &a),
            Block::Op(m) => m,
        }
    }
}

fn realize_theta(g: &WeylGroup, theta: &ThetaMatrix) -> Result<Vec<Vec<Block>>> {
    let mut ops: HashMap<Weight, SymMatrix> = HashMap::new();
    let mut out = Vec::with_capacity(theta.dim());
    for row in &theta.blocks {
        let mut r = Vec::with_capacity(row.len());
        for b in row {
            r.push(match b {
                ThetaBlock::Zero => Block::Zero,
                ThetaBlock::Scalar(s) => Block::Scalar(s.clone()),
                ThetaBlock::Delta(w) => {
                    if !ops.contains_key(w) {
                        ops.insert(w.clone(), chevalley_operator(g, w, Variant::Delta)?.matrix);
                    }
                    Block::Op(ops[w].clone())
                }
            });
        }
        out.push(r);
    }
    Ok(out)
}

fn block_matmul(a: &[Vec<Block>], b: &[Vec<Block>], n: usize) -> Vec<Vec<Block>> {
    let m = a.len();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..m).fold(Block::Zero, |acc, k| acc.add(&a[i][k].mul(&b[k][j]), n)))
                .collect()
        })
        .collect()
}

fn weight_params(rs: &RootSystem, lambda: &Weight) -> Vec<(&'static str, String)> {
    let mut p = rs_params(rs);
    p.push(("weight", lambda.spec_string()));
    p
}

/// `(flag, value)` pairs identifying a root system on the command line.
pub fn rs_params(rs: &RootSystem) -> Vec<(&'static str, String)> {
    let mut p = vec![("family", rs.family.to_string()), ("rank", rs.rank.to_string())];
    if rs.special_linear {
        p.push(("special-linear", "true".into()));
    }
    p
}

/// Checks `sum_u (Theta^k)_{u,u} = (sum_u (u lambda)^k) * Id` on the stable basis.
pub fn verify_trace_relation(g: &WeylGroup, lambda: &Weight, k: u32) -> Result<VerifyReport> {
    if k == 0 {
        return domain("k must be positive");
    }
    let mut params = weight_params(&g.rs, lambda);
    params.push(("k", k.to_string()));
    VerifyReport::new("traces", &params).timed(|rep| {
        let theta = theta_matrix(g, lambda)?;
        let blocks = realize_theta(g, &theta)?;
        let n = g.len();
        let mut power = blocks.clone();
        for _ in 1..k {
            power = block_matmul(&power, &blocks, n);
        }
        let trace = (0..theta.dim()).fold(Block::Zero, |acc, i| acc.add(&power[i][i], n)).into_matrix(n);
        let expected_scalar = RatExpr::sum(
            theta
                .reps
                .reps
                .iter()
                .map(|u| u.act_weight(lambda).map(|w| w.eps_form().pow(k as i32).expect("nonnegative power")))
                .collect::<Result<Vec<_>>>()?
                .iter(),
        );
        compare_matrices(rep, "trace", &trace, &SymMatrix::scalar(n, &expected_scalar));
        Ok(())
    })
}

fn compare_matrices(rep: &mut VerifyReport, what: &str, lhs: &SymMatrix, rhs: &SymMatrix) {
    for i in 0..lhs.dim() {
        for j in 0..lhs.dim() {
            if !rep.expect_eq(&format!("{what} entry ({i}, {j})"), lhs.get(i, j), rhs.get(i, j)) {
                return;
            }
        }
    }
}

fn compare_vectors(rep: &mut VerifyReport, what: &str, g: &WeylGroup, lhs: &StableVec, rhs: &StableVec) {
    for i in 0..lhs.coeffs.len() {
        let loc = format!("{what} coefficient of Stab({})", g.word_string(g.get(i)));
        if !rep.expect_eq(&loc, &lhs.coeffs[i], &rhs.coeffs[i]) {
            return;
        }
    }
}

/// `sum_w Theta_{u,w} * T_w(varsigma) = lambda * T_u(varsigma)` for every `u in W^lambda`.
pub fn verify_eigencolumn(g: &WeylGroup, lambda: &Weight) -> Result<VerifyReport> {
    VerifyReport::new("eigencolumn", &weight_params(&g.rs, lambda)).timed(|rep| {
        let theta = theta_matrix(g, lambda)?;
        let sigma = averaging_class(g, lambda)?;
        let cols: Vec<StableVec> = theta.reps.reps.iter().map(|u| dl_transform(g, u, &sigma)).collect();
        let blocks = realize_theta(g, &theta)?;
        let lam = lambda.eps_form();
        for (i, u) in theta.reps.reps.iter().enumerate() {
            let mut acc = StableVec::zero(g);
            for (j, b) in blocks[i].iter().enumerate() {
                let term = match b {
                    Block::Zero => continue,
                    Block::Scalar(s) => cols[j].scale(s),
                    Block::Op(m) => OpMatrix::derived(m.clone()).apply(&cols[j]),
                };
                acc = acc.add(&term);
            }
            compare_vectors(rep, &format!("row {}", g.word_string(u)), g, &acc, &cols[i].scale(&lam));
            if !rep.passed {
                break;
            }
        }
        Ok(())
    })
}

/// `T_u(Delta_lambda * Stab_-(w)) = Delta_{u lambda} * T_u(Stab_-(w))`.
pub fn verify_automorphism(g: &WeylGroup, u: &WeylElem, lambda: &Weight, w: &WeylElem) -> Result<VerifyReport> {
    let mut params = weight_params(&g.rs, lambda);
    params.push(("u", g.word_string(u)));
    params.push(("w", g.word_string(w)));
    VerifyReport::new("automorphism", &params).timed(|rep| {
        let op = chevalley_operator(g, lambda, Variant::Delta)?;
        let op_u = chevalley_operator(g, &u.act_weight(lambda)?, Variant::Delta)?;
        let stab = StableVec::basis(g, w);
        let lhs = dl_transform(g, u, &op.apply(&stab));
        let rhs = op_u.apply(&dl_transform(g, u, &stab));
        compare_vectors(rep, "image", g, &lhs, &rhs);
        Ok(())
    })
}

/// `T_u Op(Delta_lambda) T_u^{-1} = Op(Delta_{u lambda})`.
pub fn verify_conjugation_law(g: &WeylGroup, u: &WeylElem, lambda: &Weight) -> Result<VerifyReport> {
    let mut params = weight_params(&g.rs, lambda);
    params.push(("u", g.word_string(u)));
    VerifyReport::new("conjugation", &params).timed(|rep| {
        let lhs = dl_conjugate(g, u, &chevalley_operator(g, lambda, Variant::Delta)?);
        let rhs = chevalley_operator(g, &u.act_weight(lambda)?, Variant::Delta)?;
        compare_matrices(rep, "conjugate", &lhs.matrix, &rhs.matrix);
        Ok(())
    })
}

/// `D_mu = -sum_i mu_i x_i`, writing `x_i` for the generator `D_{-e_i}`.
pub fn divisor_symbol(mu: &Weight) -> RatExpr {
    RatExpr::from_poly(mu.neg().linear_form(Var::x))
}

/// `R^k_lambda = tr(Theta^k) - sum_u (u lambda)^k` with commuting symbols
/// `Delta_{u lambda} = D_{u lambda} + shift(u lambda)`.
pub fn presentation_relation(g: &WeylGroup, lambda: &Weight, k: u32) -> Result<RatExpr> {
    if k == 0 {
        return domain("k must be positive");
    }
    let theta = theta_matrix(g, lambda)?;
    let m = theta.instantiate(|w| Ok(divisor_symbol(w).add(&delta_class_shift(&g.rs, w)?)))?;
    let trace = m.pow(k).trace();
    let weights: Vec<RatExpr> = theta
        .reps
        .reps
        .iter()
        .map(|u| Ok(u.act_weight(lambda)?.eps_form().pow(k as i32)?))
        .collect::<Result<_>>()?;
    Ok(trace.sub(&RatExpr::sum(weights.iter())))
}

/// Sends every `q^beta` with `beta` a positive coroot combination to zero by
/// scaling `q^beta -> tau^{<2 rho, beta>} q^beta` and setting `tau = 0`.
pub fn q_to_zero(rs: &RootSystem, x: &RatExpr) -> Result<RatExpr> {
    let two_rho = rs.rho.scale(num_rational::Rational64::from_integer(2));
    let mut weights = Vec::new();
    for c in &two_rho.0 {
        if !c.is_integer() {
            return Err(Error::Invariant(format!("2 rho = {two_rho} is not integral")));
        }
        weights.push(c.to_integer() as i32);
    }
    let scaled = x.map_monomials(|m| {
        let tau: i32 = m.pairs().iter().filter(|(v, _)| v.is_q()).map(|(v, e)| e * weights[v.index() - 1]).sum();
        (m.mul(&Mono::pow_of(Var::Y, tau)), coeff(1))
    });
    let map = HashMap::from([(Var::Y, RatExpr::zero())]);
    Ok(scaled.substitute(&map)?)
}

/// `Op(D_lambda)` with the quantum parameters sent to zero.
pub fn classical_operator(g: &WeylGroup, lambda: &Weight) -> Result<OpMatrix> {
    let m = chevalley_operator(g, lambda, Variant::D)?;
    Ok(OpMatrix::derived(m.matrix.try_map(|x| q_to_zero(&g.rs, x))?))
}

/// Sets `hbar = 0` and `chi_i = x_i`, then checks the result is `G(x) - G(-eps)`
/// with `G` invariant under the signed-permutation action of `W` on `x`.
pub fn verify_classical_limit(rs: &RootSystem, relation: &RatExpr, label: &str) -> Result<VerifyReport> {
    let mut params = rs_params(rs);
    params.push(("relation", label.to_string()));
    VerifyReport::new("classical-limit", &params).timed(|rep| {
        let n = rs.dim();
        let mut map: HashMap<Var, RatExpr> = HashMap::from([(Var::HBAR, RatExpr::zero())]);
        for i in 1..=n {
            map.insert(Var::chi(i), RatExpr::var(Var::x(i)));
        }
        let r0 = relation.substitute(&map)?;
        let eps_zero: HashMap<Var, RatExpr> = (1..=n).map(|i| (Var::eps(i), RatExpr::zero())).collect();
        let g_x = r0.substitute(&eps_zero)?;
        let x_to_eps: HashMap<Var, RatExpr> = (1..=n).map(|i| (Var::x(i), RatExpr::var(Var::eps(i)).neg())).collect();
        let rhs = g_x.sub(&g_x.substitute(&x_to_eps)?);
        rep.expect_eq("mod hbar", &r0, &rhs);
        for i in 1..=rs.num_simple() {
            let s = crate::weyl::simple_reflection(rs, i)?;
            let moved = s.act_expr(&g_x, &[VarKind::X]);
            if !rep.expect_eq(&format!("invariance under s{i}"), &moved, &g_x) {
                break;
            }
        }
        Ok(())
    })
}

/// The relation polynomial `f(D) - f(lambda)` reduces to, for reports.
pub fn leading_classical_part(relation: &RatExpr) -> Result<RatExpr> {
    Ok(relation.substitute(&HashMap::from([(Var::HBAR, RatExpr::zero())]))?)
}

/// Whether `rs` is the rank-one `SL_2` datum used by the worked examples.
pub fn is_sl2(rs: &RootSystem) -> bool {
    rs.family == Family::A && rs.special_linear && rs.rank == 2
}

/// `q = q^{alpha^vee}` for the simple coroot of `SL_2`.
pub fn sl2_q() -> RatExpr {
    RatExpr::mono(Mono::from_pairs([(Var::q(1), 1), (Var::q(2), -1)]))
}

fn require_sl2(g: &WeylGroup) -> Result<Weight> {
    if !is_sl2(&g.rs) {
        return domain("this check is specific to SL_2");
    }
    Ok(g.rs.fundamental_weights[0].clone())
}

/// `Op(D_w) Op(D_{-w}) = Op(D_w D_{-w} + hbar q/(1-q) (D_w - D_{-w} - hbar))` on `SL_2`.
pub fn verify_sl2_product(g: &WeylGroup) -> Result<VerifyReport> {
    let w = require_sl2(g)?;
    VerifyReport::new("sl2-product", &rs_params(&g.rs)).timed(|rep| {
        let dp = chevalley_operator(g, &w, Variant::D)?;
        let dm = chevalley_operator(g, &w.neg(), Variant::D)?;
        let hbar = RatExpr::var(Var::HBAR);
        let frac = over_one_minus(hbar.mul(&sl2_q()), &sl2_q_mono());
        // The cup product D_w D_{-w}.
        let classical = classical_operator(g, &w)?.mul(&classical_operator(g, &w.neg())?).matrix;
        let corr = dp.matrix.sub(&dm.matrix).sub(&SymMatrix::scalar(2, &hbar)).scale(&frac);
        compare_matrices(rep, "product", &dp.mul(&dm).matrix, &classical.add(&corr));
        Ok(())
    })
}

fn sl2_q_mono() -> Mono {
    Mono::from_pairs([(Var::q(1), 1), (Var::q(2), -1)])
}

/// `R^2_w = 2 (D^2 + 2 hbar q/(1-q) D - hbar^2 q/(1-q) - w^2)`, the same relation on
/// operators, and the hypertoric form `x y = q (h - x)(h - y)`.
pub fn verify_sl2_relation(g: &WeylGroup) -> Result<VerifyReport> {
    let w = require_sl2(g)?;
    VerifyReport::new("sl2-relation", &rs_params(&g.rs)).timed(|rep| {
        let hbar = RatExpr::var(Var::HBAR);
        let q = sl2_q();
        let frac = q.div(&RatExpr::one().sub(&q))?;
        let w2 = w.eps_form().pow(2)?;
        let d = divisor_symbol(&w);
        let expected = d
            .mul(&d)
            .add(&hbar.scale_int(2).mul(&frac).mul(&d))
            .sub(&hbar.mul(&hbar).mul(&frac))
            .sub(&w2);
        let rel = presentation_relation(g, &w, 2)?;
        if !rep.expect_eq("relation", &rel, &expected.scale_int(2)) {
            return Ok(());
        }
        let dm = chevalley_operator(g, &w, Variant::D)?.matrix;
        let scalar = |x: &RatExpr| SymMatrix::scalar(2, x);
        let on_ops = dm
            .mul(&dm)
            .add(&dm.scale(&hbar.scale_int(2).mul(&frac)))
            .sub(&scalar(&hbar.mul(&hbar).mul(&frac)))
            .sub(&scalar(&w2));
        compare_matrices(rep, "operator relation", &on_ops, &SymMatrix::zeros(2));
        let x = scalar(&w.eps_form().neg()).sub(&dm);
        let y = scalar(&w.eps_form()).sub(&dm);
        let h = scalar(&hbar.neg());
        let rhs = h.sub(&x).mul(&h.sub(&y)).scale(&q);
        compare_matrices(rep, "hypertoric", &x.mul(&y), &rhs);
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::text::parse_rat;
    use crate::weyl::DEFAULT_MAX_WEYL;

    fn r(s: &str) -> RatExpr {
        parse_rat(s).unwrap()
    }

    fn sl2() -> WeylGroup {
        WeylGroup::new(&RootSystem::special_linear(2).unwrap(), DEFAULT_MAX_WEYL).unwrap()
    }

    fn gl(n: usize) -> WeylGroup {
        WeylGroup::new(&RootSystem::new(Family::A, n).unwrap(), DEFAULT_MAX_WEYL).unwrap()
    }

    fn group(f: Family, n: usize) -> WeylGroup {
        WeylGroup::new(&RootSystem::new(f, n).unwrap(), DEFAULT_MAX_WEYL).unwrap()
    }

    #[test]
    fn shift_examples() {
        let g = sl2();
        let w = &g.rs.fundamental_weights[0];
        assert_eq!(delta_class_shift(&g.rs, w).unwrap(), r("hbar*(q1/q2)/(1 - q1/q2)"));
        assert!(delta_class_shift(&g.rs, &Weight::zero(2)).unwrap().is_zero());
        let a = gl(3);
        let e2 = Weight::basis(3, 2).neg();
        assert_eq!(
            delta_class_shift(&a.rs, &e2).unwrap(),
            r("hbar*(q1/q2)/(1 - q1/q2) - hbar*(q2/q3)/(1 - q2/q3)")
        );
    }

    #[test]
    fn sl2_chevalley_column() {
        let g = sl2();
        let w = g.rs.fundamental_weights[0].clone();
        let op = chevalley_operator(&g, &w, Variant::Delta).unwrap();
        assert_eq!(op.matrix.get(0, 0), &r("1/2*eps1 - 1/2*eps2"));
        assert_eq!(op.matrix.get(1, 0), &r("-hbar/(1 - q1/q2)"));
        // Column s: s(alpha) < 0.
        assert_eq!(op.matrix.get(0, 1), &r("-hbar*(q1/q2)/(1 - q1/q2)"));
        assert!(chevalley_operator(&g, &Weight::zero(2), Variant::D).unwrap().matrix.is_zero());
    }

    #[test]
    fn operators_commute_and_are_linear() {
        for g in [sl2(), gl(3), group(Family::B, 2), group(Family::C, 2), group(Family::D, 2)] {
            let ws = g.rs.fundamental_weights.clone();
            let ops: Vec<OpMatrix> = ws.iter().map(|w| chevalley_operator(&g, w, Variant::Delta).unwrap()).collect();
            for a in &ops {
                for b in &ops {
                    assert_eq!(a.mul(b).matrix, b.mul(a).matrix, "{}", g.rs.label());
                }
            }
            if ws.len() >= 2 {
                let sum = chevalley_operator(&g, &ws[0].add(&ws[1]), Variant::D).unwrap();
                let d0 = chevalley_operator(&g, &ws[0], Variant::D).unwrap();
                let d1 = chevalley_operator(&g, &ws[1], Variant::D).unwrap();
                assert_eq!(sum.matrix, d0.matrix.add(&d1.matrix));
            }
        }
    }

    #[test]
    fn dl_transform_examples_and_group_law() {
        let g = sl2();
        let id = WeylElem::identity(2);
        let s = g.simple(1).clone();
        let v = StableVec::basis(&g, &id);
        assert_eq!(dl_transform(&g, &id, &v), v);
        let mut expected = StableVec::zero(&g);
        expected.coeffs[1] = RatExpr::int(-1);
        assert_eq!(dl_transform(&g, &s, &v), expected);
        let mut coeffv = StableVec::zero(&g);
        coeffv.coeffs[0] = r("(q1/q2)/(1 - q1/q2)");
        assert_eq!(dl_transform(&g, &s, &coeffv).coeffs[1], r("1/(1 - q1/q2)"));
        for g in [gl(3), group(Family::B, 2)] {
            let mut v = StableVec::zero(&g);
            v.coeffs[0] = r("q1/(1 - q1*q2)");
            v.coeffs[2] = r("hbar + q2");
            for u in g.elements() {
                for w in g.elements() {
                    assert_eq!(dl_transform(&g, u, &dl_transform(&g, w, &v)), dl_transform(&g, &g.mul(u, w), &v));
                }
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let g = sl2();
        let w = g.rs.fundamental_weights[0].clone();
        let c = dl_conjugate(&g, g.simple(1), &chevalley_operator(&g, &w, Variant::Delta).unwrap());
        assert_eq!(c.matrix, chevalley_operator(&g, &w.neg(), Variant::Delta).unwrap().matrix);
        let a = gl(3);
        let e1 = Weight::basis(3, 1).neg();
        let c = dl_conjugate(&a, a.simple(1), &chevalley_operator(&a, &e1, Variant::Delta).unwrap());
        assert_eq!(c.matrix, chevalley_operator(&a, &Weight::basis(3, 2).neg(), Variant::Delta).unwrap().matrix);
    }

    #[test]
    fn averaging_classes() {
        let g = sl2();
        let v = averaging_class(&g, &Weight::zero(2)).unwrap();
        assert_eq!(v.coeffs, vec![RatExpr::one(), RatExpr::int(-1)]);
        let a = gl(3);
        let v = averaging_class(&a, &Weight::basis(3, 1).neg()).unwrap();
        assert_eq!(v.support(), vec![0, a.index_of(a.simple(2))]);
        assert_eq!(v.coeffs[a.index_of(a.simple(2))], RatExpr::int(-1));
        let rho = averaging_class(&a, &a.rs.rho.clone()).unwrap();
        assert_eq!(rho.support(), vec![0]);
        // Fixed by T_z for z in the stabilizer.
        for z in stabilizer_elements(&a, &Weight::basis(3, 1).neg()).unwrap() {
            assert_eq!(dl_transform(&a, &z, &v), v);
        }
    }

    #[test]
    fn sl2_theta() {
        let g = sl2();
        let w = g.rs.fundamental_weights[0].clone();
        let t = theta_matrix(&g, &w).unwrap();
        assert_eq!(t.blocks[0][0], ThetaBlock::Delta(w.clone()));
        assert_eq!(t.blocks[0][1], ThetaBlock::Scalar(r("-hbar/(1 - q1/q2)")));
        assert_eq!(t.blocks[1][0], ThetaBlock::Scalar(r("-hbar/(1 - q2/q1)")));
        let zero = theta_matrix(&g, &Weight::zero(2)).unwrap();
        assert_eq!(zero.dim(), 1);
        assert_eq!(zero.blocks[0][0], ThetaBlock::Delta(Weight::zero(2)));
    }

    #[test]
    fn gl3_theta_skeleton() {
        let a = gl(3);
        let t = theta_matrix(&a, &Weight::basis(3, 1).neg()).unwrap();
        let sk = t.scalar_skeleton().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { RatExpr::zero() } else { r(&format!("hbar/(1 - q{}/q{})", i + 1, j + 1)) };
                assert_eq!(sk.get(i, j), &expect, "({i}, {j})");
            }
        }
    }

    #[test]
    fn sl2_product_rule() {
        let g = sl2();
        let w = g.rs.fundamental_weights[0].clone();
        let dp = chevalley_operator(&g, &w, Variant::D).unwrap().matrix;
        let dm = chevalley_operator(&g, &w.neg(), Variant::D).unwrap().matrix;
        let w2 = w.eps_form().mul(&w.eps_form());
        // Classically D_w D_{-w} = -D_w^2 = -w^2.
        let cp = classical_operator(&g, &w).unwrap().matrix;
        let cm = classical_operator(&g, &w.neg()).unwrap().matrix;
        assert_eq!(cp.mul(&cm), SymMatrix::scalar(2, &w2.neg()));
        let corr = dp.sub(&dm).sub(&SymMatrix::scalar(2, &RatExpr::var(Var::HBAR)));
        let q = sl2_q();
        let factor = over_one_minus(RatExpr::var(Var::HBAR).mul(&q), &Mono::from_pairs([(Var::q(1), 1), (Var::q(2), -1)]));
        assert_eq!(dp.mul(&dm), SymMatrix::scalar(2, &w2.neg()).add(&corr.scale(&factor)));
    }

    #[test]
    fn small_trace_relations() {
        let g = sl2();
        let w = g.rs.fundamental_weights[0].clone();
        for k in 1..=3 {
            let rep = verify_trace_relation(&g, &w, k).unwrap();
            assert!(rep.passed, "{rep}");
        }
        assert!(verify_trace_relation(&g, &Weight::zero(2), 2).unwrap().passed);
        let a = gl(3);
        assert!(verify_trace_relation(&a, &Weight::basis(3, 1).neg(), 2).unwrap().passed);
    }

    #[test]
    fn broken_theta_is_detected() {
        // Perturbing Delta by hbar must break the k = 2 trace relation.
        let g = sl2();
        let w = g.rs.fundamental_weights[0].clone();
        let theta = theta_matrix(&g, &w).unwrap();
        let mut blocks = realize_theta(&g, &theta).unwrap();
        if let Block::Op(m) = &blocks[0][0] {
            blocks[0][0] = Block::Op(m.add(&SymMatrix::scalar(2, &RatExpr::var(Var::HBAR))));
        }
        let p = block_matmul(&blocks, &blocks, 2);
        let tr = p[0][0].add(&p[1][1], 2).into_matrix(2);
        let expected = w.eps_form().pow(2).unwrap().scale_int(2);
        assert_ne!(tr, SymMatrix::scalar(2, &expected));
    }

    #[test]
    fn eigencolumn_small() {
        let g = sl2();
        let w = g.rs.fundamental_weights[0].clone();
        assert!(verify_eigencolumn(&g, &w).unwrap().passed);
        assert!(verify_eigencolumn(&g, &Weight::zero(2)).unwrap().passed);
        let a = gl(3);
        let rep = verify_eigencolumn(&a, &Weight::basis(3, 1).neg()).unwrap();
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn automorphism_and_conjugation_law_small() {
        let a = gl(3);
        for lambda in a.rs.fundamental_weights.clone() {
            for u in a.elements() {
                assert!(verify_conjugation_law(&a, u, &lambda).unwrap().passed);
                for w in a.elements() {
                    assert!(verify_automorphism(&a, u, &lambda, w).unwrap().passed);
                }
            }
        }
    }

    #[test]
    fn sl2_relation_matches_worked_example() {
        let g = sl2();
        let w = g.rs.fundamental_weights[0].clone();
        let rel = presentation_relation(&g, &w, 2).unwrap();
        let d = divisor_symbol(&w);
        let q = sl2_q();
        let frac = q.div(&RatExpr::one().sub(&q)).unwrap();
        let hbar = RatExpr::var(Var::HBAR);
        let halved_trace_form = d
            .mul(&d)
            .add(&hbar.scale_int(2).mul(&frac).mul(&d))
            .sub(&hbar.mul(&hbar).mul(&frac))
            .sub(&w.eps_form().pow(2).unwrap());
        assert_eq!(rel, halved_trace_form.scale_int(2));
        assert!(verify_sl2_relation(&g).unwrap().passed);
        assert!(verify_sl2_product(&g).unwrap().passed);
        assert!(verify_sl2_product(&gl(3)).is_err());
        assert!(presentation_relation(&g, &Weight::zero(2), 2).unwrap().is_zero());
        assert!(verify_classical_limit(&g.rs, &rel, "R2").unwrap().passed);
    }

    #[test]
    fn classical_limit_rejects_non_invariant() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let bad = r("x1 + eps1");
        assert!(!verify_classical_limit(&rs, &bad, "bad").unwrap().passed);
        let good = r("x1 + x2 + eps1 + eps2 + hbar*q1");
        assert!(verify_classical_limit(&rs, &good, "good").unwrap().passed);
    }
}
