use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rat::{gcd_of, lcm_of_denominators, Rat};

/// Relation of a normalized constraint `Σ cᵢ xᵢ ⋈ k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Lt,
    Le,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
        }
    }
}

/// A linear condition `Σ cᵢ xᵢ ⋈ k` with integer coefficients of gcd 1.
///
/// Equalities have their first non-zero coefficient positive. The canonical
/// false constraint is `0 < 0`; true constraints never survive normalization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinConstraint {
    coeffs: Vec<BigInt>,
    relation: Relation,
    constant: Rat,
}

/// Outcome of normalizing a raw constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    True,
    False,
    Constraint(LinConstraint),
}

impl LinConstraint {
    /// Normalizes `Σ coeffs[i]·xᵢ ⋈ constant`.
    pub fn new(coeffs: &[Rat], relation: Relation, constant: Rat) -> Normalized {
        if coeffs.iter().all(Zero::is_zero) {
            let holds = match relation {
                Relation::Lt => Rat::zero() < constant,
                Relation::Le => Rat::zero() <= constant,
                Relation::Eq => constant.is_zero(),
            };
            return if holds {
                Normalized::True
            } else {
                Normalized::False
            };
        }
        let l = lcm_of_denominators(coeffs.iter());
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let g = gcd_of(ints.iter());
        let mut sign = BigInt::one();
        if relation == Relation::Eq {
            if let Some(first) = ints.iter().find(|c| !c.is_zero()) {
                if first.is_negative() {
                    sign = -BigInt::one();
                }
            }
        }
        let factor = &sign * &g;
        let coeffs: Vec<BigInt> = ints.iter().map(|c| c / &factor).collect();
        let constant = constant * Rat::from_integer(l) / Rat::from_integer(factor);
        Normalized::Constraint(LinConstraint {
            coeffs,
            relation,
            constant,
        })
    }

    pub fn falsum(dim: usize) -> LinConstraint {
        LinConstraint {
            coeffs: vec![BigInt::zero(); dim],
            relation: Relation::Lt,
            constant: Rat::zero(),
        }
    }

    pub fn is_falsum(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn rat_coeffs(&self) -> Vec<Rat> {
        self.coeffs.iter().cloned().map(Rat::from_integer).collect()
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn constant(&self) -> &Rat {
        &self.constant
    }

    pub fn lhs_value(&self, point: &[Rat]) -> Rat {
        self.coeffs
            .iter()
            .zip(point)
            .map(|(c, x)| Rat::from_integer(c.clone()) * x)
            .fold(Rat::zero(), |a, b| a + b)
    }

    pub fn holds_at(&self, point: &[Rat]) -> bool {
        let v = self.lhs_value(point);
        match self.relation {
            Relation::Lt => v < self.constant,
            Relation::Le => v <= self.constant,
            Relation::Eq => v == self.constant,
        }
    }

    /// Complement as a disjunction of constraints.
    pub fn negate(&self) -> Vec<Normalized> {
        let neg: Vec<Rat> = self.rat_coeffs().into_iter().map(|c| -c).collect();
        let pos = self.rat_coeffs();
        match self.relation {
            Relation::Lt => vec![LinConstraint::new(&neg, Relation::Le, -self.constant.clone())],
            Relation::Le => vec![LinConstraint::new(&neg, Relation::Lt, -self.constant.clone())],
            Relation::Eq => vec![
                LinConstraint::new(&pos, Relation::Lt, self.constant.clone()),
                LinConstraint::new(&neg, Relation::Lt, -self.constant.clone()),
            ],
        }
    }

    /// Embeds into `total` variables, placing the old variables at `offset`.
    pub fn lift(&self, offset: usize, total: usize) -> LinConstraint {
        let mut coeffs = vec![BigInt::zero(); total];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[offset + i] = c.clone();
        }
        LinConstraint {
            coeffs,
            relation: self.relation,
            constant: self.constant.clone(),
        }
    }

    /// Variables with a non-zero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }
}

impl PartialOrd for LinConstraint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LinConstraint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .cmp(&other.coeffs)
            .then(self.relation.cmp(&other.relation))
            .then(self.constant.cmp(&other.constant))
    }
}

impl fmt::Display for LinConstraint {
    /// Prints with generic variable names `x0, x1, …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.dim()).map(|i| format!("x{i}")).collect();
        f.write_str(&render_constraint(self, &names))
    }
}

/// Renders `Σ cᵢ xᵢ ⋈ k` as `lhs ⋈ rhs` with only positive terms on each side.
pub fn render_constraint(c: &LinConstraint, names: &[String]) -> String {
    let mut lhs: Vec<String> = Vec::new();
    let mut rhs: Vec<String> = Vec::new();
    for (coef, name) in c.coeffs.iter().zip(names) {
        if coef.is_zero() {
            continue;
        }
        let term = render_term(&Rat::from_integer(coef.abs()), name);
        if coef.is_positive() {
            lhs.push(term);
        } else {
            rhs.push(term);
        }
    }
    if c.constant.is_negative() {
        lhs.push((-c.constant.clone()).to_string());
    } else if !c.constant.is_zero() {
        rhs.push(c.constant.to_string());
    }
    let side = |v: Vec<String>| if v.is_empty() { "0".to_string() } else { v.join(" + ") };
    format!("{} {} {}", side(lhs), c.relation.symbol(), side(rhs))
}

/// `name`, or `k*name` for a positive coefficient `k ≠ 1`.
pub fn render_term(coef: &Rat, name: &str) -> String {
    if coef.is_one() {
        name.to_string()
    } else {
        format!("{coef}*{name}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn c(n: Normalized) -> LinConstraint {
        match n {
            Normalized::Constraint(c) => c,
            other => panic!("expected constraint, got {other:?}"),
        }
    }

    #[test]
    fn clears_denominators_and_gcd() {
        // x/2 < 1/4  ->  x < 1/2
        let k = c(LinConstraint::new(&[rat(1, 2)], Relation::Lt, rat(1, 4)));
        assert_eq!(k.coeffs(), &[BigInt::from(1)]);
        assert_eq!(k.constant(), &rat(1, 2));
        // 4x - 6y <= 2  ->  2x - 3y <= 1
        let k = c(LinConstraint::new(&[int(4), int(-6)], Relation::Le, int(2)));
        assert_eq!(k.coeffs(), &[BigInt::from(2), BigInt::from(-3)]);
        assert_eq!(k.constant(), &int(1));
    }

    #[test]
    fn equalities_get_positive_leading_coefficient() {
        let a = c(LinConstraint::new(&[int(-1), int(1)], Relation::Eq, int(3)));
        let b = c(LinConstraint::new(&[int(2), int(-2)], Relation::Eq, int(-6)));
        assert_eq!(a, b);
    }

    #[test]
    fn constant_constraints_fold() {
        assert_eq!(LinConstraint::new(&[int(0)], Relation::Lt, int(0)), Normalized::False);
        assert_eq!(LinConstraint::new(&[int(0)], Relation::Le, int(0)), Normalized::True);
        assert_eq!(LinConstraint::new(&[], Relation::Eq, int(2)), Normalized::False);
    }

    #[test]
    fn negation_is_complement() {
        let k = c(LinConstraint::new(&[int(1)], Relation::Eq, int(1)));
        let parts: Vec<LinConstraint> = k.negate().into_iter().map(c).collect();
        for x in [int(0), int(1), int(2), rat(3, 2)] {
            let inside = k.holds_at(std::slice::from_ref(&x));
            let outside = parts.iter().any(|p| p.holds_at(std::slice::from_ref(&x)));
            assert_ne!(inside, outside);
        }
    }

    #[test]
    fn renders_with_positive_sides() {
        let k = c(LinConstraint::new(&[int(1), int(-1)], Relation::Lt, rat(1, 2)));
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(render_constraint(&k, &names), "x < y + 1/2");
        let k = c(LinConstraint::new(&[int(-1)], Relation::Lt, rat(-1, 2)));
        assert_eq!(render_constraint(&k, &names[..1]), "1/2 < x");
        let k = c(LinConstraint::new(&[int(-1)], Relation::Lt, int(0)));
        assert_eq!(render_constraint(&k, &names[..1]), "0 < x");
    }
}
