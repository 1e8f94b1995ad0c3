use std::fmt;

/// Variable families, listed in increasing term-order priority.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    Hbar = 0,
    Eps = 1,
    P = 2,
    Q = 3,
    Chi = 4,
    X = 5,
    Y = 6,
}

/// A polynomial variable. Ordering follows `hbar < eps_i < p_i < q_i < chi_i < x_i < y`,
/// with indices increasing inside each family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u16);

impl Var {
    const fn pack(kind: VarKind, index: u8) -> Var {
        Var(((kind as u16) << 8) | index as u16)
    }

    pub const HBAR: Var = Var::pack(VarKind::Hbar, 0);
    /// Auxiliary spectral variable used for characteristic polynomials.
    pub const Y: Var = Var::pack(VarKind::Y, 0);

    /// Equivariant parameter `eps_i` (1-based).
    pub fn eps(i: usize) -> Var {
        Var::indexed(VarKind::Eps, i)
    }
    pub fn p(i: usize) -> Var {
        Var::indexed(VarKind::P, i)
    }
    pub fn q(i: usize) -> Var {
        Var::indexed(VarKind::Q, i)
    }
    pub fn chi(i: usize) -> Var {
        Var::indexed(VarKind::Chi, i)
    }
    pub fn x(i: usize) -> Var {
        Var::indexed(VarKind::X, i)
    }

    pub fn indexed(kind: VarKind, i: usize) -> Var {
        assert!((1..=255).contains(&i), "variable index {i} out of range");
        Var::pack(kind, i as u8)
    }

    pub fn kind(self) -> VarKind {
        match self.0 >> 8 {
            0 => VarKind::Hbar,
            1 => VarKind::Eps,
            2 => VarKind::P,
            3 => VarKind::Q,
            4 => VarKind::Chi,
            5 => VarKind::X,
            _ => VarKind::Y,
        }
    }

    /// 1-based index inside the family (0 for `hbar` and `y`).
    pub fn index(self) -> usize {
        (self.0 & 0xff) as usize
    }

    pub fn is_q(self) -> bool {
        self.kind() == VarKind::Q
    }

    pub fn name(self) -> String {
        let i = self.index();
        match self.kind() {
            VarKind::Hbar => "hbar".into(),
            VarKind::Y => "y".into(),
            VarKind::Eps => format!("eps{i}"),
            VarKind::P => format!("p{i}"),
            VarKind::Q => format!("q{i}"),
            VarKind::Chi => format!("chi{i}"),
            VarKind::X => format!("x{i}"),
        }
    }

    pub fn parse(name: &str) -> Option<Var> {
        match name {
            "hbar" => return Some(Var::HBAR),
            "y" => return Some(Var::Y),
            _ => {}
        }
        let split = name.find(|c: char| c.is_ascii_digit())?;
        let (head, tail) = name.split_at(split);
        let i: usize = tail.parse().ok()?;
        if i == 0 || i > 255 {
            return None;
        }
        let kind = match head {
            "eps" => VarKind::Eps,
            "p" => VarKind::P,
            "q" => VarKind::Q,
            "chi" => VarKind::Chi,
            "x" => VarKind::X,
            _ => return None,
        };
        Some(Var::indexed(kind, i))
    }

    pub fn latex(self) -> String {
        let i = self.index();
        match self.kind() {
            VarKind::Hbar => "\\hbar".into(),
            VarKind::Y => "y".into(),
            VarKind::Eps => format!("\\varepsilon_{{{i}}}"),
            VarKind::P => format!("p_{{{i}}}"),
            VarKind::Q => format!("q_{{{i}}}"),
            VarKind::Chi => format!("\\chi_{{{i}}}"),
            VarKind::X => format!("x_{{{i}}}"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_follows_families() {
        assert!(Var::HBAR < Var::eps(3));
        assert!(Var::eps(9) < Var::p(1));
        assert!(Var::p(2) < Var::q(1));
        assert!(Var::q(1) < Var::q(2));
        assert!(Var::q(7) < Var::chi(1));
        assert!(Var::x(4) < Var::Y);
    }

    #[test]
    fn names_round_trip() {
        for v in [Var::HBAR, Var::Y, Var::eps(2), Var::p(11), Var::q(3), Var::chi(5), Var::x(1)] {
            assert_eq!(Var::parse(&v.name()), Some(v));
        }
        assert_eq!(Var::parse("q0"), None);
        assert_eq!(Var::parse("z1"), None);
    }
}
