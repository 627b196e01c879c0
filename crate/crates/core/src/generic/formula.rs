use crate::diff::DiffPolynomial;

/// Quantifier-free formula over atoms `f = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QFFormula {
    Atom(DiffPolynomial),
    Not(Box<QFFormula>),
    And(Box<QFFormula>, Box<QFFormula>),
    Or(Box<QFFormula>, Box<QFFormula>),
}

impl QFFormula {
    pub fn atom(f: DiffPolynomial) -> Self {
        QFFormula::Atom(f)
    }

    pub fn not(f: QFFormula) -> Self {
        QFFormula::Not(Box::new(f))
    }

    pub fn and(a: QFFormula, b: QFFormula) -> Self {
        QFFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: QFFormula, b: QFFormula) -> Self {
        QFFormula::Or(Box::new(a), Box::new(b))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            QFFormula::Atom(_) => 1,
            QFFormula::Not(a) => 1 + a.size(),
            QFFormula::And(a, b) | QFFormula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn atoms(&self) -> Vec<&DiffPolynomial> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a QFFormula, out: &mut Vec<&'a DiffPolynomial>) {
            match f {
                QFFormula::Atom(p) => out.push(p),
                QFFormula::Not(a) => walk(a, out),
                QFFormula::And(a, b) | QFFormula::Or(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }

    pub fn map_atoms(&self, f: &impl Fn(&DiffPolynomial) -> DiffPolynomial) -> QFFormula {
        match self {
            QFFormula::Atom(p) => QFFormula::Atom(f(p)),
            QFFormula::Not(a) => QFFormula::not(a.map_atoms(f)),
            QFFormula::And(a, b) => QFFormula::and(a.map_atoms(f), b.map_atoms(f)),
            QFFormula::Or(a, b) => QFFormula::or(a.map_atoms(f), b.map_atoms(f)),
        }
    }

    /// Evaluates with a truth assignment for atoms.
    pub fn evaluate<E>(&self, atom: &mut impl FnMut(&DiffPolynomial) -> Result<bool, E>) -> Result<bool, E> {
        Ok(match self {
            QFFormula::Atom(p) => atom(p)?,
            QFFormula::Not(a) => !a.evaluate(atom)?,
            QFFormula::And(a, b) => a.evaluate(atom)? && b.evaluate(atom)?,
            QFFormula::Or(a, b) => a.evaluate(atom)? || b.evaluate(atom)?,
        })
    }
}

impl std::fmt::Display for QFFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::io::print::formula_to_string(self))
    }
}
