use std::fmt;

/// A ring variable. The derived order is the global variable order:
/// `x1 < .. < xn < u1 < .. < un < x_i^(j) by (i, j) < c_{l,j} by (l, j) < aux`.
///
/// `X(i)` doubles as the zeroth derivative of coordinate `i`; use
/// [`Var::deriv`] to build derivative variables so that identification holds.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X(u32),
    U(u32),
    /// `x_index^(order)` with `order >= 1`.
    D { index: u32, order: u32 },
    /// Fresh transcendental of the generic-type tower.
    C { level: u32, index: u32 },
    /// Auxiliary variable for saturation and parametrizations; never printed
    /// in user-facing output.
    Aux(u32),
}

impl Var {
    pub fn deriv(index: u32, order: u32) -> Var {
        if order == 0 {
            Var::X(index)
        } else {
            Var::D { index, order }
        }
    }

    /// Coordinate index and derivative order, for `X` and `D` only.
    pub fn as_derivative(self) -> Option<(u32, u32)> {
        match self {
            Var::X(i) => Some((i, 0)),
            Var::D { index, order } => Some((index, order)),
            _ => None,
        }
    }

    /// The variable one derivative higher, for `X` and `D` only.
    pub fn next_derivative(self) -> Option<Var> {
        self.as_derivative().map(|(i, j)| Var::deriv(i, j + 1))
    }

    pub fn is_x(self) -> bool {
        matches!(self, Var::X(_))
    }

    pub fn is_u(self) -> bool {
        matches!(self, Var::U(_))
    }

    pub fn index(self) -> u32 {
        match self {
            Var::X(i) | Var::U(i) | Var::Aux(i) => i,
            Var::D { index, .. } | Var::C { index, .. } => index,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::X(i) => write!(f, "x{}", i),
            Var::U(i) => write!(f, "u{}", i),
            Var::D { index, order } => match order {
                1 => write!(f, "x{}'", index),
                2 => write!(f, "x{}''", index),
                k => write!(f, "x{}^({})", index, k),
            },
            Var::C { level, index } => write!(f, "c{}_{}", level, index),
            Var::Aux(i) => write!(f, "_y{}", i),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `x1..xn`.
pub fn x_vars(n: u32) -> Vec<Var> {
    (1..=n).map(Var::X).collect()
}

/// `u1..un`.
pub fn u_vars(n: u32) -> Vec<Var> {
    (1..=n).map(Var::U).collect()
}
