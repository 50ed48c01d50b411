//! Truncated power series in `t` with exact coefficients, and the solvers
//! for every functional equation of the generating-function theory.
//!
//! A [`Series`] of order `N` stores coefficients `t^0 ..= t^N`. Binary
//! operations truncate to the smaller order. Coefficients are either
//! trivariate integer polynomials ([`TriSeries`]) or exact rationals
//! ([`UniSeries`], the result of numeric substitution).

mod identities;
mod poly;
mod render;
mod solve;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

pub use identities::{verify_identities, IdentityCheck, IdentityReport};
pub use poly::{Exponent, TermJson, TriPoly, Var};
pub use render::{render_json, render_numeric, render_text};
pub use solve::{
    solve_fixed_point, solve_master, solve_star, solve_star_pattern, solve_ternary_gf, solve_ud_du,
    solve_uu_dd, solve_uudd, CoupledPairs, Family, PairSolution, Solutions, StarPattern, DEFAULT_ORDER,
};

/// Coefficient ring of a series.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

pub type TriSeries = Series<TriPoly>;
pub type UniSeries = Series<BigRational>;

impl<C: Coeff> Series<C> {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, C::one())
    }

    pub fn constant(order: usize, c: C) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * t^power`, truncated to `order`.
    pub fn monomial(order: usize, power: usize, c: C) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least t^0");
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// `[t^n]`.
    pub fn coeff(&self, n: usize) -> Result<&C> {
        self.coeffs.get(n).ok_or(Error::OrderExceeded {
            index: n,
            order: self.order(),
        })
    }

    pub(crate) fn coeff_mut(&mut self, n: usize) -> &mut C {
        &mut self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Series {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Same coefficients, padded with zeros up to `order`.
    pub fn extend(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(self.order()) + 1, C::zero());
        Series { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = self.truncate(order);
        for (o, c) in out.coeffs.iter_mut().zip(&other.coeffs) {
            o.add_assign_ref(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = self.truncate(order);
        for (o, c) in out.coeffs.iter_mut().zip(&other.coeffs) {
            o.sub_assign_ref(c);
        }
        out
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j].add_assign_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(C::neg_ref).collect(),
        }
    }

    /// Coefficientwise multiplication by a ring element.
    pub fn scale(&self, k: &C) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.mul_ref(k)).collect(),
        }
    }

    /// Multiplication by `t`; the top coefficient falls off.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(C::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Series { coeffs }
    }

    /// `self + c` for a constant `c`.
    pub fn add_constant(&self, c: &C) -> Self {
        let mut out = self.clone();
        out.coeffs[0].add_assign_ref(c);
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse of a series with constant term one.
    pub fn invert(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm { expected: "1" });
        }
        let mut g = vec![C::one()];
        for n in 1..=self.order() {
            let mut acc = C::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() {
                    acc.add_assign_ref(&self.coeffs[i].mul_ref(&g[n - i]));
                }
            }
            g.push(acc.neg_ref());
        }
        Ok(Series { coeffs: g })
    }

    /// `C(f)`: the unique series `c` with `c = 1 + f c^2`, for `f` without
    /// constant term. Equals the Catalan generating function composed
    /// with `f`.
    pub fn catalan_compose(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        let f = self;
        let sol = solve_fixed_point(self.order(), 1, |u| {
            let c = &u[0];
            vec![f.mul(&c.mul(c)).add_constant(&C::one())]
        });
        Ok(sol.into_iter().next().expect("one unknown"))
    }
}

impl TriSeries {
    pub fn swap_xz(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(TriPoly::swap_xz).collect(),
        }
    }

    pub fn substitute(&self, var: Var, value: impl Into<BigInt>) -> Self {
        let value = value.into();
        Series {
            coeffs: self.coeffs.iter().map(|p| p.substitute(var, &value)).collect(),
        }
    }

    /// Exact substitution of rationals for all three variables.
    pub fn eval_numeric(&self, x: &BigRational, y: &BigRational, z: &BigRational) -> UniSeries {
        Series {
            coeffs: self.coeffs.iter().map(|p| p.eval(x, y, z)).collect(),
        }
    }

    /// Substitution of integers; the result has integer coefficients.
    pub fn eval_int(&self, x: i64, y: i64, z: i64) -> Vec<BigInt> {
        let s = self
            .substitute(Var::X, x)
            .substitute(Var::Y, y)
            .substitute(Var::Z, z);
        s.coeffs.iter().map(|p| p.coeff(0, 0, 0)).collect()
    }

    /// `[t^n x^a y^b z^c]`.
    pub fn coeff_of(&self, n: usize, a: u32, b: u32, c: u32) -> Result<BigInt> {
        Ok(self.coeff(n)?.coeff(a, b, c))
    }

    /// Every `[t^n]` homogeneous of degree `n` with nonnegative coefficients.
    pub fn is_homogeneous_nonnegative(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(n, p)| p.is_homogeneous(n as u32) && p.is_nonnegative())
    }
}

impl UniSeries {
    pub fn from_integers(values: &[i64]) -> Self {
        Series {
            coeffs: values.iter().map(|&v| BigRational::from_integer(v.into())).collect(),
        }
    }

    /// Coefficients as integers, or `None` if any is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl<C: Coeff> Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: Self) -> Series<C> {
        Series::add(self, rhs)
    }
}

impl<C: Coeff> Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: Self) -> Series<C> {
        Series::sub(self, rhs)
    }
}

impl<C: Coeff> Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: Self) -> Series<C> {
        Series::mul(self, rhs)
    }
}

impl<C: Coeff> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series::neg(self)
    }
}
