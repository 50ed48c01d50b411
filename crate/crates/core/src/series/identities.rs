//! Residual checks of every unsimplified equation, composition form and
//! specialization against the solved series.

use serde::Serialize;

use super::{Coeff, Solutions, TriPoly, TriSeries, Var};

/// Residual of one identity `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub id: String,
    pub description: String,
    /// Residual vanishes to the checked order.
    pub zero: bool,
    /// Lowest order of a nonzero residual coefficient.
    pub first_nonzero: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub order: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_zero(&self) -> bool {
        self.checks.iter().all(|c| c.zero)
    }

    pub fn get(&self, id: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.id == id)
    }
}

fn k(c: i64) -> TriPoly {
    TriPoly::constant(c)
}

/// `c * t * f` for a polynomial `c`.
fn ct(c: &TriPoly, f: &TriSeries) -> TriSeries {
    f.scale(c).shift()
}

fn plus(f: &TriSeries, c: i64) -> TriSeries {
    f.add_constant(&k(c))
}

/// `2f - 1`.
fn twice_minus_one(f: &TriSeries) -> TriSeries {
    plus(&f.scale(&k(2)), -1)
}

fn one(order: usize) -> TriSeries {
    TriSeries::one(order)
}

fn inv(f: &TriSeries) -> TriSeries {
    f.invert().expect("constant term one")
}

fn cat(f: &TriSeries) -> TriSeries {
    f.catalan_compose().expect("no constant term")
}

fn at(f: &TriSeries, x: i64, y: i64, z: i64) -> TriSeries {
    f.substitute(Var::X, x).substitute(Var::Y, y).substitute(Var::Z, z)
}

struct Checker {
    order: usize,
    checks: Vec<IdentityCheck>,
}

impl Checker {
    fn push(&mut self, id: &str, description: &str, lhs: &TriSeries, rhs: &TriSeries) {
        let residual = lhs.sub(rhs);
        assert!(residual.order() >= self.order, "identity {id} lost precision");
        let residual = residual.truncate(self.order);
        let first_nonzero = residual.first_nonzero();
        self.checks.push(IdentityCheck {
            id: id.to_string(),
            description: description.to_string(),
            zero: first_nonzero.is_none(),
            first_nonzero,
        });
    }
}

/// The unsimplified decomposition equation shared by the plain and
/// pattern-avoiding families:
/// `S = 1 + y t W^2 S + y t W (S - W)(2S* - 1) + x t R (2S* - 1)`.
fn decomposition(w: &TriSeries, s: &TriSeries, star: &TriSeries, root_term: &TriSeries) -> TriSeries {
    let (x, y) = (TriPoly::x(), TriPoly::y());
    let st = twice_minus_one(star);
    let w2 = w.mul(w);
    let level = ct(&y, &w2.mul(s));
    let mixed = ct(&y, &w.mul(&s.sub(w)).mul(&st));
    let ascent = ct(&x, &root_term.mul(&st));
    plus(&level.add(&mixed).add(&ascent), 1)
}

/// `S* = 1 + x t K (2S* - 1)`, written with `S*` eliminated:
/// `(1 - x t K) / (1 - 2 x t K)`.
fn starred_closed(kernel: &TriSeries) -> TriSeries {
    let x = TriPoly::x();
    let xtk = ct(&x, kernel);
    let n = kernel.order();
    one(n).sub(&xtk).mul(&inv(&one(n).sub(&xtk.scale(&k(2)))))
}

/// Checks every identity to order `order` (at least 2).
pub fn verify_identities(order: usize) -> IdentityReport {
    let order = order.max(2);
    let s = Solutions::new(order);
    let n = order;
    let mut c = Checker {
        order,
        checks: Vec::new(),
    };
    let (x, y, z) = (TriPoly::x(), TriPoly::y(), TriPoly::z());
    let w = &s.ternary;
    let w2 = w.mul(w);
    let t_series = TriSeries::monomial(n, 1, TriPoly::constant(1));
    let level = |f: &TriSeries| plus(&ct(&y, &w2.mul(f)), 1);

    let t = &s.master.main;
    let u = &s.master.twin;

    // Plain family.
    c.push(
        "plain-unsimplified",
        "unsimplified decomposition of T through T*",
        t,
        &decomposition(w, t, &s.star, &t.mul(&u.scale(&k(2)).sub(w))),
    );
    c.push(
        "plain-star",
        "T* = 1 + x t T T_{z,y,x} (2T* - 1)",
        &s.star,
        &starred_closed(&t.mul(u)),
    );
    let eq23 = {
        let a = one(n).sub(&ct(&y, &w2));
        let b = ct(&x, &t.mul(w));
        let cc = ct(&y, &w.mul(&plus(w, 1)).mul(t));
        let d = ct(&x.scaled(&2.into()), &one(n).sub(&ct(&y, &w2)).mul(&t.mul(t)).mul(u));
        a.sub(&b).add(&cc).add(&d)
    };
    c.push("plain-eliminated", "T after eliminating T*", t, &eq23);
    c.push(
        "ternary",
        "W = 1 + y t W^3",
        w,
        &plus(&ct(&y, &w2.mul(w)), 1),
    );
    let xz_zero = t.substitute(Var::X, 0).substitute(Var::Z, 0);
    c.push("plain-at-x0-z0", "T at x = z = 0 equals W", &xz_zero, w);

    let yx = {
        let mut p = y.clone();
        p.sub_assign_ref(&x);
        p
    };
    let yz = {
        let mut p = y.clone();
        p.sub_assign_ref(&z);
        p
    };
    let alpha = inv(&one(n).sub(&ct(&yx, &w2)));
    let beta = inv(&one(n).sub(&ct(&yz, &w2)));
    c.push(
        "plain-catalan-form",
        "T = alpha C(2 x t T_{z,y,x} alpha^2)",
        t,
        &alpha.mul(&cat(&ct(&x.scaled(&2.into()), &u.mul(&alpha).mul(&alpha)))),
    );
    let inner = cat(&ct(&z.scaled(&2.into()), &beta.mul(&beta).mul(t)));
    c.push(
        "plain-nested-catalan",
        "T = alpha C(2 x t alpha^2 beta C(2 z t beta^2 T))",
        t,
        &alpha.mul(&cat(&ct(
            &x.scaled(&2.into()),
            &alpha.mul(&alpha).mul(&beta).mul(&inner),
        ))),
    );
    let t111 = at(t, 1, 1, 1);
    let w1 = at(w, 1, 1, 1);
    let alpha1 = one(n);
    let beta1 = one(n);
    c.push(
        "plain-nested-catalan-111",
        "composition identity at x = y = z = 1",
        &t111,
        &alpha1.mul(&cat(&ct(&k(2), &beta1.mul(&cat(&ct(&k(2), &t111)))))),
    );

    // Specializations of the plain family.
    let t101 = at(t, 1, 0, 1);
    c.push(
        "h-avoiding-cubic",
        "T_{1,0,1} = 1 - t T_{1,0,1} + 2 t T_{1,0,1}^3",
        &t101,
        &plus(&ct(&k(-1), &t101).add(&ct(&k(2), &t101.mul(&t101).mul(&t101))), 1),
    );
    let ty0 = t.substitute(Var::Y, 0);
    let uy0 = u.substitute(Var::Y, 0);
    c.push(
        "h-avoiding-master",
        "T_{x,0,z} = 1 - x t T + 2 x t T^2 T_{z,0,x}",
        &ty0,
        &plus(&ct(&x, &ty0).neg().add(&ct(&x.scaled(&2.into()), &ty0.mul(&ty0).mul(&uy0))), 1),
    );
    c.push(
        "u-avoiding",
        "T_{0,y,z} = W",
        &t.substitute(Var::X, 0),
        w,
    );
    c.push(
        "d-avoiding-case-i",
        "T_{1,1,0} = C(2 t W_1)",
        &at(t, 1, 1, 0),
        &cat(&ct(&k(2), &w1)),
    );
    {
        let t_y1z0 = t.substitute(Var::Y, 1).substitute(Var::Z, 0);
        let w3 = w1.mul(&w1).mul(&w1);
        let denom = inv(&plus(&ct(&x, &w3), 1));
        let arg = ct(&x.scaled(&2.into()), &w3.mul(&denom).mul(&denom));
        c.push(
            "d-avoiding-case-ii",
            "T_{x,1,0} = W_1/(1 + x t W_1^3) C(2 x t W_1^3/(1 + x t W_1^3)^2)",
            &t_y1z0,
            &w1.mul(&denom).mul(&cat(&arg)),
        );
    }
    {
        let d = inv(&plus(&t_series, 1));
        c.push(
            "d-avoiding-case-iii",
            "T_{1,0,0} = 1/(1+t) C(2t/(1+t)^2)",
            &at(t, 1, 0, 0),
            &d.mul(&cat(&ct(&k(2), &d.mul(&d)))),
        );
    }

    // uu and dd.
    let (a, b) = (&s.uu_dd.first.main, &s.uu_dd.first.twin);
    let (cs, ds) = (&s.uu_dd.second.main, &s.uu_dd.second.twin);
    c.push(
        "uu-unsimplified",
        "unsimplified decomposition of T^{uu}",
        a,
        &decomposition(w, a, &s.star_uu, &b.scale(&k(2)).sub(w).mul(&level(a))),
    );
    c.push(
        "uu-star",
        "T^{*uu} = 1 + x t T^{dd}_{z,y,x} (1 + y t W^2 T^{uu}) (2T^{*uu} - 1)",
        &s.star_uu,
        &starred_closed(&b.mul(&level(a))),
    );
    c.push(
        "dd-unsimplified",
        "unsimplified decomposition of T^{dd}",
        cs,
        &decomposition(w, cs, &s.star_dd, &ds.scale(&k(2)).sub(w).mul(cs)),
    );
    c.push(
        "dd-star",
        "T^{*dd} = 1 + x t T^{uu}_{z,y,x} T^{dd} (2T^{*dd} - 1)",
        &s.star_dd,
        &starred_closed(&ds.mul(cs)),
    );
    let uu1 = at(a, 1, 1, 1);
    let dd1 = at(cs, 1, 1, 1);
    c.push(
        "uu-111",
        "T^{uu}_{1,1,1} = (1 - t W_1^2 + 2 t T^{uu} T^{dd})(1 + t W_1^2 T^{uu})",
        &uu1,
        &plus(&ct(&k(-1), &w1.mul(&w1)).add(&ct(&k(2), &uu1.mul(&dd1))), 1)
            .mul(&plus(&ct(&k(1), &w1.mul(&w1).mul(&uu1)), 1)),
    );
    c.push(
        "dd-111",
        "T^{dd}_{1,1,1} = 1 + 2 t (T^{dd})^2 T^{uu}",
        &dd1,
        &plus(&ct(&k(2), &dd1.mul(&dd1).mul(&uu1)), 1),
    );
    let uu0 = at(a, 1, 0, 1);
    let dd0 = at(cs, 1, 0, 1);
    let t0 = &t101;
    c.push(
        "uu-101",
        "T^{uu}_{1,0,1} = 1 - t + 2 t T^{uu} T^{dd}",
        &uu0,
        &one(n).sub(&t_series).add(&ct(&k(2), &uu0.mul(&dd0))),
    );
    c.push(
        "dd-101",
        "T^{dd}_{1,0,1} = 1 - t T^{dd} + 2 t (T^{dd})^2 T^{uu}",
        &dd0,
        &plus(&ct(&k(-1), &dd0).add(&ct(&k(2), &dd0.mul(&dd0).mul(&uu0))), 1),
    );
    c.push(
        "uu-101-ratio",
        "T^{uu}_{1,0,1} = (1 - t)/(1 - 2 t T^{dd}_{1,0,1})",
        &uu0,
        &one(n).sub(&t_series).mul(&inv(&one(n).sub(&ct(&k(2), &dd0)))),
    );
    c.push(
        "dd-101-quadratic",
        "T^{dd}_{1,0,1} = 1 - 3 t T^{dd} + 4 t (T^{dd})^2",
        &dd0,
        &plus(&ct(&k(-3), &dd0).add(&ct(&k(4), &dd0.mul(&dd0))), 1),
    );
    {
        let d = inv(&plus(&ct(&k(3), &one(n)), 1));
        c.push(
            "dd-101-closed",
            "T^{dd}_{1,0,1} = 1/(1+3t) C(4t/(1+3t)^2)",
            &dd0,
            &d.mul(&cat(&ct(&k(4), &d.mul(&d)))),
        );
        let r = inv(&one(n).sub(&t_series));
        c.push(
            "uu-101-closed",
            "T^{uu}_{1,0,1} = 1 - t + 2 t C(2t/(1-t))",
            &uu0,
            &one(n).sub(&t_series).add(&ct(&k(2), &cat(&ct(&k(2), &r)))),
        );
    }
    let _ = t0;

    // ud and du.
    let (e, f) = (&s.ud_du.first.main, &s.ud_du.first.twin);
    let (g, h) = (&s.ud_du.second.main, &s.ud_du.second.twin);
    {
        let inner = plus(&ct(&y, &w2.mul(&f.scale(&k(2)).sub(w))), 1);
        c.push(
            "ud-unsimplified",
            "unsimplified decomposition of T^{ud}",
            e,
            &decomposition(w, e, &s.star_ud, &e.mul(&inner)),
        );
    }
    c.push(
        "ud-star",
        "T^{*ud} = 1 + x t T^{ud} (1 + y t W^2 T^{du}_{z,y,x}) (2T^{*ud} - 1)",
        &s.star_ud,
        &starred_closed(&e.mul(&level(f))),
    );
    c.push(
        "du-unsimplified",
        "unsimplified decomposition of T^{du}",
        g,
        &decomposition(w, g, &s.star_du, &g.mul(&h.scale(&k(2)).sub(w))),
    );
    c.push(
        "du-star",
        "T^{*du} = 1 + x t T^{du} T^{ud}_{z,y,x} (2T^{*du} - 1)",
        &s.star_du,
        &starred_closed(&g.mul(h)),
    );
    let ud1 = at(e, 1, 1, 1);
    let du1 = at(g, 1, 1, 1);
    c.push(
        "ud-111",
        "T^{ud}_{1,1,1} = 1 + 2 t (T^{ud})^2 (1 + t W_1^2 T^{du})",
        &ud1,
        &plus(
            &ct(&k(2), &ud1.mul(&ud1).mul(&plus(&ct(&k(1), &w1.mul(&w1).mul(&du1)), 1))),
            1,
        ),
    );
    c.push(
        "du-111",
        "T^{du}_{1,1,1} = 1 + 2 t (T^{du})^2 T^{ud}",
        &du1,
        &plus(&ct(&k(2), &du1.mul(&du1).mul(&ud1)), 1),
    );
    let ud0 = at(e, 1, 0, 1);
    let du0 = at(g, 1, 0, 1);
    let d1 = inv(&plus(&t_series, 1));
    c.push(
        "ud-101",
        "T^{ud}_{1,0,1} = 1 - t T^{ud} + 2 t (T^{ud})^2",
        &ud0,
        &plus(&ct(&k(-1), &ud0).add(&ct(&k(2), &ud0.mul(&ud0))), 1),
    );
    c.push(
        "ud-101-closed",
        "T^{ud}_{1,0,1} = 1/(1+t) C(2t/(1+t)^2)",
        &ud0,
        &d1.mul(&cat(&ct(&k(2), &d1.mul(&d1)))),
    );
    c.push(
        "du-101",
        "T^{du}_{1,0,1} = 1 - t T^{du} + 2 t (T^{du})^2 T^{ud}",
        &du0,
        &plus(&ct(&k(-1), &du0).add(&ct(&k(2), &du0.mul(&du0).mul(&ud0))), 1),
    );
    c.push(
        "du-101-closed",
        "T^{du}_{1,0,1} = 1/(1+t) C(2 t R/(1+t)^2), R = T^{ud}_{1,0,1}",
        &du0,
        &d1.mul(&cat(&ct(&k(2), &ud0.mul(&d1).mul(&d1)))),
    );

    // {uu, dd}.
    let (p, q) = (&s.uudd.main, &s.uudd.twin);
    c.push(
        "uudd-unsimplified",
        "unsimplified decomposition of T^P",
        p,
        &decomposition(w, p, &s.star_uudd, &q.scale(&k(2)).sub(w).mul(&level(p))),
    );
    c.push(
        "uudd-star",
        "T^{*P} = 1 + x t T^P_{z,y,x} (1 + y t W^2 T^P) (2T^{*P} - 1)",
        &s.star_uudd,
        &starred_closed(&q.mul(&level(p))),
    );
    let p1 = at(p, 1, 1, 1);
    c.push(
        "uudd-111",
        "T^P_{1,1,1} = (1 + t W_1^2 T^P)(1 - t W_1^2 + 2 t (T^P)^2)",
        &p1,
        &plus(&ct(&k(1), &w1.mul(&w1).mul(&p1)), 1)
            .mul(&plus(&ct(&k(-1), &w1.mul(&w1)).add(&ct(&k(2), &p1.mul(&p1))), 1)),
    );
    let py0 = p.substitute(Var::Y, 0);
    let qy0 = q.substitute(Var::Y, 0);
    c.push(
        "uudd-y0",
        "T^P_{x,0,z} = 1 - x t + 2 x t T^P_{z,0,x} T^P_{x,0,z}",
        &py0,
        &one(n).sub(&ct(&x, &one(n))).add(&ct(&x.scaled(&2.into()), &qy0.mul(&py0))),
    );
    c.push(
        "uudd-y0-swapped",
        "T^P_{z,0,x} = 1 - z t + 2 z t T^P_{x,0,z} T^P_{z,0,x}",
        &qy0,
        &one(n).sub(&ct(&z, &one(n))).add(&ct(&z.scaled(&2.into()), &py0.mul(&qy0))),
    );
    let mut zx = z.clone();
    zx.sub_assign_ref(&x);
    c.push(
        "uudd-quadratic",
        "T^P_{x,0,z} = 1 - x t - 2 (z - x) t T^P + 2 z t (T^P)^2",
        &py0,
        &one(n)
            .sub(&ct(&x, &one(n)))
            .sub(&ct(&zx.scaled(&2.into()), &py0))
            .add(&ct(&z.scaled(&2.into()), &py0.mul(&py0))),
    );
    {
        let one_minus_xt = one(n).sub(&ct(&x, &one(n)));
        let d = inv(&plus(&ct(&zx.scaled(&2.into()), &one(n)), 1));
        let closed = one_minus_xt
            .mul(&d)
            .mul(&cat(&ct(&z.scaled(&2.into()), &one_minus_xt.mul(&d).mul(&d))));
        c.push(
            "uudd-y0-catalan-form",
            "T^P_{x,0,z} = (1 - x t)/(1 + 2(z - x) t) C(2 z t (1 - x t)/(1 + 2(z - x) t)^2)",
            &py0,
            &closed,
        );
    }
    let one_minus_t = one(n).sub(&t_series);
    c.push(
        "uudd-101",
        "T^P_{1,0,1} = (1 - t) C(2 t (1 - t))",
        &at(p, 1, 0, 1),
        &one_minus_t.mul(&cat(&ct(&k(2), &one_minus_t))),
    );
    c.push(
        "uudd-parity",
        "T^P_{-1,0,1} = 1 - t C(-2 t^2)",
        &at(p, -1, 0, 1),
        &one(n).sub(&ct(&k(1), &cat(&ct(&k(-2), &t_series)))),
    );

    IdentityReport {
        order,
        checks: c.checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_identity_vanishes() {
        let report = verify_identities(8);
        for check in &report.checks {
            assert!(check.zero, "{} failed at t^{:?}", check.id, check.first_nonzero);
        }
        assert!(report.checks.len() >= 40);
    }

    #[test]
    fn unsquared_ud_relation_fails() {
        let s = Solutions::new(4);
        let ud = at(s.ud(), 1, 1, 1);
        let du = at(s.du(), 1, 1, 1);
        let w = at(&s.ternary, 1, 1, 1);
        let printed = plus(&ct(&k(2), &ud.mul(&plus(&ct(&k(1), &w.mul(&w).mul(&du)), 1))), 1);
        assert_eq!(ud.sub(&printed).first_nonzero(), Some(2));
    }
}
