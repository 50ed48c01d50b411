//! Degree-by-degree solvers.
//!
//! Every right-hand side below is `1` plus terms carrying an explicit factor
//! of `t`, so `[t^n]` of the right-hand side depends only on coefficients
//! `< n` of the unknowns. Coupled twin systems carry the `x <-> z` swapped
//! unknown as a second series.

use super::{Coeff, Series, TriPoly, TriSeries};

pub const DEFAULT_ORDER: usize = 12;

/// Solves `u = rhs(u)` for a vector of unknowns, one coefficient at a time.
///
/// At step `n` the unknowns are padded to order `n` with a zero top
/// coefficient and `[t^n]` of the right-hand side is taken. `rhs` must
/// return series of order at least that of its inputs.
pub fn solve_fixed_point<C: Coeff>(
    order: usize,
    unknowns: usize,
    rhs: impl Fn(&[Series<C>]) -> Vec<Series<C>>,
) -> Vec<Series<C>> {
    let mut sol: Vec<Series<C>> = vec![Series::zero(0); unknowns];
    let start = rhs(&sol);
    for (s, f) in sol.iter_mut().zip(&start) {
        *s.coeff_mut(0) = f.coeffs()[0].clone();
    }
    for n in 1..=order {
        let mut padded: Vec<Series<C>> = sol.iter().map(|s| s.extend(n)).collect();
        let next = rhs(&padded);
        for (s, f) in padded.iter_mut().zip(&next) {
            debug_assert!(
                f.coeffs()[..n] == s.coeffs()[..n],
                "right-hand side changed a settled coefficient"
            );
            *s.coeff_mut(n) = f.coeffs()[n].clone();
        }
        sol = padded;
    }
    sol
}

/// Ingredients shared by every trivariate equation.
struct Ctx {
    order: usize,
    /// `T_{0,y,0}(t)^2`.
    w2: TriSeries,
    y: TriPoly,
}

impl Ctx {
    fn new(order: usize) -> Self {
        let w = solve_ternary_gf(order);
        Ctx {
            order,
            w2: w.mul(&w),
            y: TriPoly::y(),
        }
    }

    fn one(&self, like: &TriSeries) -> TriSeries {
        TriSeries::one(like.order())
    }

    /// `k * t * f`.
    fn kt(&self, k: &TriPoly, f: &TriSeries) -> TriSeries {
        f.scale(k).shift()
    }

    /// `1 + y t W^2 f`.
    fn level_factor(&self, f: &TriSeries) -> TriSeries {
        self.kt(&self.y, &self.w2.mul(f)).add_constant(&TriPoly::one())
    }

    /// `1 - a t W^2`, truncated like `like`.
    fn ascent_factor(&self, a: &TriPoly, like: &TriSeries) -> TriSeries {
        self.one(like).sub(&self.kt(a, &self.w2.truncate(like.order())))
    }

    fn y_minus(&self, a: &TriPoly) -> TriPoly {
        let mut k = self.y.clone();
        k.sub_assign_ref(a);
        k
    }

    /// `1 + (y - a) t W^2 s + 2 a t s^2 o`: the shape shared by the
    /// master equation and by the `dd` and `du` equations.
    fn master_form(&self, s: &TriSeries, o: &TriSeries, a: &TriPoly) -> TriSeries {
        let lin = self.kt(&self.y_minus(a), &self.w2.mul(s));
        let quad = self.kt(&a.scaled(&2.into()), &s.mul(s).mul(o));
        lin.add(&quad).add_constant(&TriPoly::one())
    }

    /// `(1 - a t W^2 + 2 a t s o)(1 + y t W^2 s)`: the `uu` equation.
    fn uu_form(&self, s: &TriSeries, o: &TriSeries, a: &TriPoly) -> TriSeries {
        let first = self
            .ascent_factor(a, s)
            .add(&self.kt(&a.scaled(&2.into()), &s.mul(o)));
        first.mul(&self.level_factor(s))
    }

    /// `1 + (y - a) t W^2 s + 2 a t s^2 (1 + y t W^2 o)`: the `ud` equation.
    fn ud_form(&self, s: &TriSeries, o: &TriSeries, a: &TriPoly) -> TriSeries {
        let lin = self.kt(&self.y_minus(a), &self.w2.mul(s));
        let quad = self.kt(&a.scaled(&2.into()), &s.mul(s).mul(&self.level_factor(o)));
        lin.add(&quad).add_constant(&TriPoly::one())
    }

    /// `(1 + y t W^2 s)(1 - a t W^2 + 2 a t o s)`: the `{uu, dd}` equation.
    fn alternating_form(&self, s: &TriSeries, o: &TriSeries, a: &TriPoly) -> TriSeries {
        let second = self
            .ascent_factor(a, s)
            .add(&self.kt(&a.scaled(&2.into()), &o.mul(s)));
        self.level_factor(s).mul(&second)
    }

    /// `S = 1 + x t K (2S - 1)`: the common shape of every starred
    /// equation, `K` being the product of the subtrees below the root edge.
    fn starred(&self, kernel: &TriSeries) -> TriSeries {
        let x = TriPoly::x();
        let two = TriPoly::constant(2);
        let mut sol = solve_fixed_point(self.order, 1, |u| {
            let s = &u[0];
            let twice = s.scale(&two).sub(&TriSeries::one(s.order()));
            vec![self.kt(&x, &kernel.mul(&twice)).add_constant(&TriPoly::one())]
        });
        sol.remove(0)
    }
}

type Form = fn(&Ctx, &TriSeries, &TriSeries, &TriPoly) -> TriSeries;

/// Solves `A = f(A, B; x)` jointly with `B = g(B, A; z)`.
fn solve_twins(ctx: &Ctx, f: Form, g: Form) -> PairSolution {
    let (x, z) = (TriPoly::x(), TriPoly::z());
    let mut sol = solve_fixed_point(ctx.order, 2, |u| {
        vec![f(ctx, &u[0], &u[1], &x), g(ctx, &u[1], &u[0], &z)]
    });
    let twin = sol.pop().expect("two unknowns");
    let main = sol.pop().expect("two unknowns");
    PairSolution { main, twin }
}

/// A solved series together with the `x <-> z` swap of its coupled
/// partner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSolution {
    pub main: TriSeries,
    pub twin: TriSeries,
}

/// `W = T_{0,y,0} = 1 + y t W^3`; `[t^n] = ternary(n) y^n`.
pub fn solve_ternary_gf(order: usize) -> TriSeries {
    let y = TriPoly::y();
    solve_fixed_point(order, 1, |u| {
        let w = &u[0];
        vec![w.mul(w).mul(w).scale(&y).shift().add_constant(&TriPoly::one())]
    })
    .remove(0)
}

/// `T = 1 + (y - x) t W^2 T + 2 x t T^2 U` with `U = T_{z,y,x}`.
pub fn solve_master(order: usize) -> PairSolution {
    let ctx = Ctx::new(order);
    solve_twins(&ctx, Ctx::master_form, Ctx::master_form)
}

/// `T* = 1 + x t T U (2T* - 1)` from the master pair.
pub fn solve_star(order: usize) -> TriSeries {
    let ctx = Ctx::new(order);
    let m = solve_twins(&ctx, Ctx::master_form, Ctx::master_form);
    ctx.starred(&m.main.mul(&m.twin))
}

/// Two coupled systems: `(first, first_twin)` and `(second, second_twin)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoupledPairs {
    pub first: PairSolution,
    pub second: PairSolution,
}

/// `uu` and `dd`: `first = (T^{uu}, T^{dd}_{z,y,x})`,
/// `second = (T^{dd}, T^{uu}_{z,y,x})`.
pub fn solve_uu_dd(order: usize) -> CoupledPairs {
    let ctx = Ctx::new(order);
    CoupledPairs {
        first: solve_twins(&ctx, Ctx::uu_form, Ctx::master_form),
        second: solve_twins(&ctx, Ctx::master_form, Ctx::uu_form),
    }
}

/// `ud` and `du`: `first = (T^{ud}, T^{du}_{z,y,x})`,
/// `second = (T^{du}, T^{ud}_{z,y,x})`.
pub fn solve_ud_du(order: usize) -> CoupledPairs {
    let ctx = Ctx::new(order);
    CoupledPairs {
        first: solve_twins(&ctx, Ctx::ud_form, Ctx::master_form),
        second: solve_twins(&ctx, Ctx::master_form, Ctx::ud_form),
    }
}

/// `P = {uu, dd}`: `(T^P, T^P_{z,y,x})`.
pub fn solve_uudd(order: usize) -> PairSolution {
    let ctx = Ctx::new(order);
    solve_twins(&ctx, Ctx::alternating_form, Ctx::alternating_form)
}

/// Pattern classes with a starred series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StarPattern {
    Uu,
    Dd,
    Ud,
    Du,
    UuDd,
}

impl StarPattern {
    pub const ALL: [StarPattern; 5] = [
        StarPattern::Uu,
        StarPattern::Dd,
        StarPattern::Ud,
        StarPattern::Du,
        StarPattern::UuDd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StarPattern::Uu => "uu",
            StarPattern::Dd => "dd",
            StarPattern::Ud => "ud",
            StarPattern::Du => "du",
            StarPattern::UuDd => "uu,dd",
        }
    }
}

/// Starred series `T^{*σ}` solved from its defining equation.
pub fn solve_star_pattern(order: usize, sigma: StarPattern) -> TriSeries {
    Solutions::new(order).star_pattern(sigma).clone()
}

/// Named series families exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Master,
    UuDd,
    UdDu,
    Uudd,
    Ternary,
    Star,
}

impl std::str::FromStr for Family {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        Ok(match s {
            "master" => Family::Master,
            "uu-dd" => Family::UuDd,
            "ud-du" => Family::UdDu,
            "uudd" => Family::Uudd,
            "ternary" => Family::Ternary,
            "star" => Family::Star,
            other => {
                return Err(crate::error::Error::Unsupported(format!(
                    "unknown series family {other:?} (expected master, uu-dd, ud-du, uudd, ternary, star)"
                )))
            }
        })
    }
}

/// Every series of the theory, solved once to a common order.
#[derive(Clone, Debug)]
pub struct Solutions {
    pub order: usize,
    /// `T_{0,y,0}`.
    pub ternary: TriSeries,
    pub master: PairSolution,
    pub star: TriSeries,
    pub uu_dd: CoupledPairs,
    pub ud_du: CoupledPairs,
    pub uudd: PairSolution,
    pub star_uu: TriSeries,
    pub star_dd: TriSeries,
    pub star_ud: TriSeries,
    pub star_du: TriSeries,
    pub star_uudd: TriSeries,
}

impl Solutions {
    pub fn new(order: usize) -> Self {
        let ctx = Ctx::new(order);
        let master = solve_twins(&ctx, Ctx::master_form, Ctx::master_form);
        let uu_dd = CoupledPairs {
            first: solve_twins(&ctx, Ctx::uu_form, Ctx::master_form),
            second: solve_twins(&ctx, Ctx::master_form, Ctx::uu_form),
        };
        let ud_du = CoupledPairs {
            first: solve_twins(&ctx, Ctx::ud_form, Ctx::master_form),
            second: solve_twins(&ctx, Ctx::master_form, Ctx::ud_form),
        };
        let uudd = solve_twins(&ctx, Ctx::alternating_form, Ctx::alternating_form);

        let star = ctx.starred(&master.main.mul(&master.twin));
        // uu: K = T^{dd}_{z,y,x} (1 + y t W^2 T^{uu})
        let star_uu = ctx.starred(&uu_dd.first.twin.mul(&ctx.level_factor(&uu_dd.first.main)));
        // dd: K = T^{uu}_{z,y,x} T^{dd}
        let star_dd = ctx.starred(&uu_dd.second.twin.mul(&uu_dd.second.main));
        // ud: K = T^{ud} (1 + y t W^2 T^{du}_{z,y,x})
        let star_ud = ctx.starred(&ud_du.first.main.mul(&ctx.level_factor(&ud_du.first.twin)));
        // du: K = T^{du} T^{ud}_{z,y,x}
        let star_du = ctx.starred(&ud_du.second.main.mul(&ud_du.second.twin));
        // {uu, dd}: K = T^P_{z,y,x} (1 + y t W^2 T^P)
        let star_uudd = ctx.starred(&uudd.twin.mul(&ctx.level_factor(&uudd.main)));

        Solutions {
            order,
            ternary: solve_ternary_gf(order),
            master,
            star,
            uu_dd,
            ud_du,
            uudd,
            star_uu,
            star_dd,
            star_ud,
            star_du,
            star_uudd,
        }
    }

    pub fn star_pattern(&self, sigma: StarPattern) -> &TriSeries {
        match sigma {
            StarPattern::Uu => &self.star_uu,
            StarPattern::Dd => &self.star_dd,
            StarPattern::Ud => &self.star_ud,
            StarPattern::Du => &self.star_du,
            StarPattern::UuDd => &self.star_uudd,
        }
    }

    pub fn uu(&self) -> &TriSeries {
        &self.uu_dd.first.main
    }

    pub fn dd(&self) -> &TriSeries {
        &self.uu_dd.second.main
    }

    pub fn ud(&self) -> &TriSeries {
        &self.ud_du.first.main
    }

    pub fn du(&self) -> &TriSeries {
        &self.ud_du.second.main
    }

    /// The unstarred series counting avoiders of one length-two class
    /// (`None` = no length-two pattern).
    pub fn avoider_series(&self, sigma: Option<StarPattern>) -> &TriSeries {
        match sigma {
            None => &self.master.main,
            Some(StarPattern::Uu) => self.uu(),
            Some(StarPattern::Dd) => self.dd(),
            Some(StarPattern::Ud) => self.ud(),
            Some(StarPattern::Du) => self.du(),
            Some(StarPattern::UuDd) => &self.uudd.main,
        }
    }

    pub fn starred_series(&self, sigma: Option<StarPattern>) -> &TriSeries {
        match sigma {
            None => &self.star,
            Some(s) => self.star_pattern(s),
        }
    }
}
