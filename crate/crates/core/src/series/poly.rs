use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::Coeff;

/// Exponents `(a, b, c)` of `x^a y^b z^c`.
pub type Exponent = (u32, u32, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

/// Polynomial in `x, y, z` with exact integer coefficients. No zero
/// coefficient is ever stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TriPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl TriPoly {
    pub fn monomial(coeff: impl Into<BigInt>, exp: Exponent) -> Self {
        let mut p = TriPoly::default();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, (0, 0, 0))
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Self::monomial(1, (1, 0, 0)),
            Var::Y => Self::monomial(1, (0, 1, 0)),
            Var::Z => Self::monomial(1, (0, 0, 1)),
        }
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn y() -> Self {
        Self::var(Var::Y)
    }

    pub fn z() -> Self {
        Self::var(Var::Z)
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, a: u32, b: u32, c: u32) -> BigInt {
        self.terms.get(&(a, b, c)).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return TriPoly::default();
        }
        TriPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Exchanges the exponents of `x` and `z`.
    pub fn swap_xz(&self) -> Self {
        TriPoly {
            terms: self.terms.iter().map(|(&(a, b, c), v)| ((c, b, a), v.clone())).collect(),
        }
    }

    /// Substitutes an integer for one variable, leaving the others symbolic.
    pub fn substitute(&self, var: Var, value: &BigInt) -> Self {
        let mut out = TriPoly::default();
        for (&(a, b, c), v) in &self.terms {
            let (e, rest) = match var {
                Var::X => (a, (0, b, c)),
                Var::Y => (b, (a, 0, c)),
                Var::Z => (c, (a, b, 0)),
            };
            out.add_term(rest, v * num_traits::pow(value.clone(), e as usize));
        }
        out
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational, z: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&(a, b, c), v)| {
                BigRational::from_integer(v.clone())
                    * num_traits::pow(x.clone(), a as usize)
                    * num_traits::pow(y.clone(), b as usize)
                    * num_traits::pow(z.clone(), c as usize)
            })
            .fold(<BigRational as Zero>::zero(), |acc, t| acc + t)
    }

    /// Sum of coefficients, i.e. the value at `x = y = z = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|&(a, b, c)| a + b + c == degree)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|v| !v.is_negative())
    }
}

impl Coeff for TriPoly {
    fn zero() -> Self {
        TriPoly::default()
    }

    fn one() -> Self {
        TriPoly::constant(1)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_assign_ref(&mut self, other: &Self) {
        for (e, v) in &other.terms {
            self.add_term(*e, v.clone());
        }
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        for (e, v) in &other.terms {
            self.add_term(*e, -v);
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = TriPoly::default();
        for (&(a1, b1, c1), v1) in &self.terms {
            for (&(a2, b2, c2), v2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2, c1 + c2), v1 * v2);
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        TriPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, -v)).collect(),
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, (a, b, c): Exponent, coeff: &BigInt) -> fmt::Result {
    let mut factors = Vec::new();
    for (name, e) in [("x", a), ("y", b), ("z", c)] {
        match e {
            0 => {}
            1 => factors.push(name.to_string()),
            _ => factors.push(format!("{name}^{e}")),
        }
    }
    if factors.is_empty() {
        write!(f, "{coeff}")
    } else if coeff.is_one() {
        write!(f, "{}", factors.join("*"))
    } else {
        write!(f, "{coeff}*{}", factors.join("*"))
    }
}

/// Canonical form: terms in descending lexicographic exponent order,
/// e.g. `3*x^2 + 4*x*y + 2*x*z + 3*y^2`.
impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, v)) in self.terms.iter().rev().enumerate() {
            let magnitude = v.abs();
            match (i, v.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_monomial(f, e, &magnitude)?;
        }
        Ok(())
    }
}

/// One term of the JSON rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub n: usize,
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub coeff: String,
}

impl TriPoly {
    pub(crate) fn json_terms(&self, n: usize) -> impl Iterator<Item = TermJson> + '_ {
        self.terms.iter().rev().map(move |(&(x, y, z), v)| TermJson {
            n,
            x,
            y,
            z,
            coeff: v.to_string(),
        })
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        let mut p = TriPoly::default();
        p.add_term((2, 0, 0), 3.into());
        p.add_term((1, 1, 0), 4.into());
        p.add_term((1, 0, 1), 2.into());
        p.add_term((0, 2, 0), 3.into());
        assert_eq!(p.to_string(), "3*x^2 + 4*x*y + 2*x*z + 3*y^2");
        let mut q = TriPoly::constant(1);
        q.sub_assign_ref(&TriPoly::x());
        assert_eq!(q.to_string(), "-x + 1");
        assert_eq!(TriPoly::default().to_string(), "0");
    }

    #[test]
    fn zero_terms_are_dropped() {
        let mut p = TriPoly::x();
        p.sub_assign_ref(&TriPoly::x());
        assert!(p.is_empty());
        assert_eq!(p, TriPoly::default());
    }

    #[test]
    fn substitution_and_swap() {
        let p = TriPoly::x().mul_ref(&TriPoly::z()).mul_ref(&TriPoly::z());
        assert_eq!(p.swap_xz(), TriPoly::x().mul_ref(&TriPoly::x()).mul_ref(&TriPoly::z()));
        let s = p.substitute(Var::Z, &BigInt::from(-2));
        assert_eq!(s, TriPoly::monomial(4, (1, 0, 0)));
    }
}
