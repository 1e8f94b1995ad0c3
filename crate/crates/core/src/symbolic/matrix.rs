use super::poly::{coeff_ratio, Poly};
use super::rat::{CommonDen, RatExpr};
use super::var::Var;
use std::fmt;

/// Dense square matrix over [`RatExpr`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<RatExpr>,
}

/// Largest dimension for the memoized Laplace expansion (`2^n` minors).
const LAPLACE_MAX: usize = 10;

impl SymMatrix {
    pub fn zeros(n: usize) -> SymMatrix {
        assert!(n > 0, "matrix dimension must be positive");
        SymMatrix { n, data: vec![RatExpr::zero(); n * n] }
    }

    pub fn identity(n: usize) -> SymMatrix {
        SymMatrix::scalar(n, &RatExpr::one())
    }

    pub fn scalar(n: usize, c: &RatExpr) -> SymMatrix {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn diagonal(entries: Vec<RatExpr>) -> SymMatrix {
        let mut m = SymMatrix::zeros(entries.len());
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> RatExpr) -> SymMatrix {
        let mut f = f;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        assert!(n > 0, "matrix dimension must be positive");
        SymMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<RatExpr>>) -> SymMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        SymMatrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RatExpr {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatExpr) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[RatExpr]> {
        self.data.chunks(self.n)
    }

    pub fn entries(&self) -> &[RatExpr] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(&RatExpr) -> RatExpr) -> SymMatrix {
        SymMatrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<E>(&self, f: impl Fn(&RatExpr) -> Result<RatExpr, E>) -> Result<SymMatrix, E> {
        Ok(SymMatrix { n: self.n, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, other.n);
        SymMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, other.n);
        SymMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> SymMatrix {
        self.map(RatExpr::neg)
    }

    pub fn scale(&self, c: &RatExpr) -> SymMatrix {
        self.map(|x| x.mul(c))
    }

    pub fn mul(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let terms: Vec<RatExpr> = (0..n)
                    .filter(|&k| !self.get(i, k).is_zero() && !other.get(k, j).is_zero())
                    .map(|k| self.get(i, k).mul(other.get(k, j)))
                    .collect();
                data.push(RatExpr::sum(terms.iter()));
            }
        }
        SymMatrix { n, data }
    }

    pub fn pow(&self, k: u32) -> SymMatrix {
        let mut r = SymMatrix::identity(self.n);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn trace(&self) -> RatExpr {
        let diag: Vec<&RatExpr> = (0..self.n).map(|i| self.get(i, i)).collect();
        RatExpr::sum(diag)
    }

    pub fn transpose(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatExpr::is_zero)
    }

    /// Cofactor expansion below dimension 4. Larger polynomial matrices use
    /// fraction-free Bareiss; larger rational ones use a Laplace expansion
    /// memoized over column subsets, because clearing denominators first
    /// makes the Bareiss intermediates explode.
    pub fn determinant(&self) -> RatExpr {
        if self.n < 4 {
            return self.cofactor_det();
        }
        if self.n <= LAPLACE_MAX && !self.data.iter().all(RatExpr::is_polynomial) {
            return self.laplace_det();
        }
        let mut total_den: Option<CommonDen> = None;
        let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(self.n);
        for row in self.rows() {
            let d = CommonDen::of(row.iter());
            rows.push(row.iter().map(|x| d.clear(x)).collect());
            total_den = Some(match total_den {
                None => d,
                Some(t) => t.product(&d),
            });
        }
        let det = bareiss(rows);
        total_den.expect("nonempty").divide(det)
    }

    /// `D(S)` = minor on the last `|S|` rows and the columns in `S`, built up
    /// from the bottom row.
    fn laplace_det(&self) -> RatExpr {
        let n = self.n;
        let mut dets: Vec<Option<RatExpr>> = vec![None; 1 << n];
        dets[0] = Some(RatExpr::one());
        for mask in 1usize..(1 << n) {
            let size = mask.count_ones() as usize;
            let row = n - size;
            let mut terms = Vec::new();
            for (pos, col) in (0..n).filter(|c| mask & (1 << c) != 0).enumerate() {
                let a = self.get(row, col);
                let rest = dets[mask & !(1 << col)].as_ref().expect("smaller subsets come first");
                if a.is_zero() || rest.is_zero() {
                    continue;
                }
                let t = a.mul(rest);
                terms.push(if pos % 2 == 1 { t.neg() } else { t });
            }
            dets[mask] = Some(RatExpr::sum(terms.iter()));
        }
        dets.pop().flatten().expect("full set")
    }

    fn cofactor_det(&self) -> RatExpr {
        match self.n {
            1 => self.get(0, 0).clone(),
            2 => self.get(0, 0).mul(self.get(1, 1)).sub(&self.get(0, 1).mul(self.get(1, 0))),
            _ => {
                let mut terms = Vec::new();
                for j in 0..self.n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let minor = self.minor(0, j).cofactor_det();
                    let t = a.mul(&minor);
                    terms.push(if j % 2 == 1 { t.neg() } else { t });
                }
                RatExpr::sum(terms.iter())
            }
        }
    }

    pub fn minor(&self, r: usize, c: usize) -> SymMatrix {
        let n = self.n;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != r) {
            for j in (0..n).filter(|&j| j != c) {
                data.push(self.get(i, j).clone());
            }
        }
        SymMatrix { n: n - 1, data }
    }

    /// Coefficients `[E_1, ..., E_n]` of `det(y + M) = y^n + E_1 y^{n-1} + ... + E_n`.
    /// Rational matrices of moderate size expand `det(y + M)` directly with `y`
    /// symbolic; otherwise Faddeev-LeVerrier on `-M` (only integer divisions).
    pub fn char_poly(&self) -> Vec<RatExpr> {
        let n = self.n;
        if (4..=LAPLACE_MAX).contains(&n) && !self.data.iter().all(RatExpr::is_polynomial) {
            return self.char_poly_laplace();
        }
        self.char_poly_faddeev()
    }

    fn char_poly_laplace(&self) -> Vec<RatExpr> {
        let n = self.n;
        let shifted = self.add(&SymMatrix::scalar(n, &RatExpr::var(Var::Y)));
        let mut e = vec![RatExpr::zero(); n];
        for (k, c) in shifted.laplace_det().coefficients_in(Var::Y) {
            let k = k as usize;
            if k < n {
                e[n - k - 1] = c;
            }
        }
        e
    }

    fn char_poly_faddeev(&self) -> Vec<RatExpr> {
        let n = self.n;
        let a = self.neg();
        let mut e = Vec::with_capacity(n);
        let mut m = SymMatrix::zeros(n);
        let mut c_prev = RatExpr::one();
        for k in 1..=n {
            let mut next = a.mul(&m);
            for i in 0..n {
                let d = next.get(i, i).add(&c_prev);
                next.set(i, i, d);
            }
            m = next;
            let c = a.mul(&m).trace().scale(&coeff_ratio(-1, k as i64));
            e.push(c.clone());
            c_prev = c;
        }
        e
    }
}

fn bareiss(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::text::parse_rat;

    fn m(rows: &[&[&str]]) -> SymMatrix {
        SymMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| parse_rat(s).unwrap()).collect()).collect())
    }

    #[test]
    fn char_poly_methods_agree() {
        let a = SymMatrix::from_fn(4, |i, j| parse_rat(&format!("(hbar*q{} + eps{})/(1 - q{})", i + 1, j + 1, (i + j) % 3 + 1)).unwrap());
        assert_eq!(a.char_poly_laplace(), a.char_poly_faddeev());
    }

    #[test]
    fn laplace_agrees_with_bareiss() {
        let a = SymMatrix::from_fn(5, |i, j| {
            parse_rat(&format!("{}*eps{} + q{}*hbar - {}", i + 2 * j, j + 1, (i * j) % 3 + 1, (i + j) % 4)).unwrap()
        });
        assert!(a.data.iter().all(RatExpr::is_polynomial));
        assert_eq!(a.laplace_det(), a.determinant());
        let b = a.map(|x| x.div(&parse_rat("1 - q1").unwrap()).unwrap());
        assert_eq!(b.determinant(), a.determinant().div(&parse_rat("(1 - q1)^5").unwrap()).unwrap());
    }

    #[test]
    fn antidiagonal_det() {
        let a = m(&[&["0", "1/(eps1 - eps2)"], &["1/(eps2 - eps1)", "0"]]);
        assert_eq!(a.determinant(), parse_rat("1/(eps1 - eps2)^2").unwrap());
    }

    #[test]
    fn bareiss_agrees_with_cofactor() {
        let a = m(&[
            &["chi1", "hbar/(1 - q1/q2)", "0", "1"],
            &["hbar/(1 - q2/q1)", "chi2", "q1", "0"],
            &["2", "0", "chi3", "hbar*q3/(1 - q3)"],
            &["0", "x1", "1/(1 - q3)", "chi4"],
        ]);
        assert_eq!(a.determinant(), a.cofactor_det());
    }

    #[test]
    fn char_poly_of_diagonal_and_nilpotent() {
        let d = m(&[&["eps1", "0"], &["0", "eps2"]]);
        assert_eq!(d.char_poly(), vec![parse_rat("eps1 + eps2").unwrap(), parse_rat("eps1*eps2").unwrap()]);
        let n = m(&[&["0", "1"], &["0", "0"]]);
        assert!(n.char_poly().iter().all(RatExpr::is_zero));
    }
}
