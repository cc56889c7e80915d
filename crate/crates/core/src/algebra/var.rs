use std::cmp::Ordering;
use std::fmt;

/// Variable identifiers of the polynomial universe.
///
/// `Ord` encodes term-order precedence: a *smaller* variable ranks higher,
/// so `p1 < p2 < t < zeta < z1 < … < zb1 < … < wb1 < …`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Var {
    /// Jet variable `p_j = ∂z_n/∂z_j` (1-based).
    P(u8),
    /// Segre-family parameter.
    T,
    /// Circle parameter of algebraically parametrized families.
    Zeta,
    /// Holomorphic coordinate `z_j` (1-based).
    Z(u8),
    /// Conjugate coordinate `z̄_j`.
    Zb(u8),
    /// Conjugate of the complexified second point, `w̄_j`.
    Wb(u8),
}

impl Var {
    fn rank(&self) -> (u8, u8) {
        match *self {
            Var::P(j) => (0, j),
            Var::T => (1, 0),
            Var::Zeta => (2, 0),
            Var::Z(j) => (3, j),
            Var::Zb(j) => (4, j),
            Var::Wb(j) => (5, j),
        }
    }

    /// Order of factors inside a printed monomial: coordinates first,
    /// then parameters, then jet variables (`z3*p1`, `z1*t`).
    pub(crate) fn print_rank(&self) -> (u8, u8) {
        match *self {
            Var::Z(j) => (0, j),
            Var::Zb(j) => (1, j),
            Var::Wb(j) => (2, j),
            Var::T => (3, 0),
            Var::Zeta => (4, 0),
            Var::P(j) => (5, j),
        }
    }

    /// 1-based index for indexed variables.
    pub fn index(&self) -> Option<u8> {
        match *self {
            Var::P(j) | Var::Z(j) | Var::Zb(j) | Var::Wb(j) => Some(j),
            Var::T | Var::Zeta => None,
        }
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::P(j) => write!(f, "p{j}"),
            Var::T => write!(f, "t"),
            Var::Zeta => write!(f, "zeta"),
            Var::Z(j) => write!(f, "z{j}"),
            Var::Zb(j) => write!(f, "zb{j}"),
            Var::Wb(j) => write!(f, "wb{j}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_order() {
        let mut v = vec![Var::Wb(1), Var::Z(2), Var::T, Var::Zb(1), Var::P(2), Var::Zeta, Var::Z(1), Var::P(1)];
        v.sort();
        assert_eq!(
            v,
            vec![Var::P(1), Var::P(2), Var::T, Var::Zeta, Var::Z(1), Var::Z(2), Var::Zb(1), Var::Wb(1)]
        );
    }
}
