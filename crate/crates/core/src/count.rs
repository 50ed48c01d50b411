//! Counting avoiders of a pattern set by enumeration, closed form, or
//! series coefficient.

use std::fmt;
use std::str::FromStr;

use crate::combinat::{gnc_total, little_schroeder, ternary, BigCount};
use crate::error::{Error, Result};
use crate::formulas::{alternating, d_avoiding, dd_h, du_h, h_avoiding, uu_h};
use crate::patterns::{census_sharded, Pattern, PatternSet};
use crate::series::{Solutions, StarPattern, TriSeries};
use crate::trees::{EdgeClass, Limits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Brute,
    Formula,
    Series,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Brute, Method::Formula, Method::Series];
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Method::Brute),
            "formula" => Ok(Method::Formula),
            "series" => Ok(Method::Series),
            other => Err(Error::Unsupported(format!(
                "unknown method {other:?} (expected brute, formula, series)"
            ))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::Formula => "formula",
            Method::Series => "series",
        })
    }
}

/// Pattern sets with a closed form, as canonical strings.
pub const FORMULA_CLASSES: [&str; 10] = ["", "u", "h", "d", "h,d", "uu,h", "h,dd", "ud,h", "h,du", "uu,h,dd"];

/// A pattern set split into forbidden letters and at most one
/// length-two family, with patterns implied by a forbidden letter dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub forbid_u: bool,
    pub forbid_h: bool,
    pub forbid_d: bool,
    pub family: Option<StarPattern>,
}

impl Reduced {
    pub fn new(set: &PatternSet) -> Result<Self> {
        let letters: Vec<EdgeClass> = set
            .patterns()
            .iter()
            .filter(|p| p.len() == 1)
            .map(|p| p.letters()[0])
            .collect();
        let forbid = |c| letters.contains(&c);
        let remaining: Vec<&Pattern> = set
            .patterns()
            .iter()
            .filter(|p| p.len() > 1 && !p.letters().iter().any(|c| letters.contains(c)))
            .collect();
        let words: Vec<String> = remaining.iter().map(|p| p.to_string()).collect();
        let words: Vec<&str> = words.iter().map(String::as_str).collect();
        let family = match words.as_slice() {
            [] => None,
            ["uu"] => Some(StarPattern::Uu),
            ["dd"] => Some(StarPattern::Dd),
            ["ud"] => Some(StarPattern::Ud),
            ["du"] => Some(StarPattern::Du),
            ["uu", "dd"] => Some(StarPattern::UuDd),
            _ => {
                return Err(Error::Unsupported(format!(
                    "no series for {set:?}; supported: any subset of u,h,d together with at most one of uu, dd, ud, du, {{uu,dd}}",
                    set = set.to_string()
                )))
            }
        };
        Ok(Reduced {
            forbid_u: forbid(EdgeClass::Ascent),
            forbid_h: forbid(EdgeClass::Level),
            forbid_d: forbid(EdgeClass::Descent),
            family,
        })
    }

    /// Substitution point `(x, y, z)`: zero for a forbidden letter.
    pub fn point(&self) -> (i64, i64, i64) {
        let v = |forbid: bool| if forbid { 0 } else { 1 };
        (v(self.forbid_u), v(self.forbid_h), v(self.forbid_d))
    }

    /// The trivariate series whose coefficients count the avoiders before
    /// substitution.
    pub fn series<'a>(&self, solutions: &'a Solutions, star_only: bool) -> &'a TriSeries {
        if star_only {
            solutions.starred_series(self.family)
        } else {
            solutions.avoider_series(self.family)
        }
    }
}

/// Closed-form count, if the class has one.
pub fn formula_count(n: u64, set: &PatternSet) -> Result<BigCount> {
    Ok(match set.to_string().as_str() {
        "" => gnc_total(n),
        "u" => ternary(n),
        "h" => h_avoiding(n),
        "d" => d_avoiding(n),
        "h,d" | "ud,h" => little_schroeder(n),
        "uu,h" => uu_h(n),
        "h,dd" => dd_h(n),
        "h,du" => du_h(n),
        "uu,h,dd" => alternating(n),
        other => {
            return Err(Error::Unsupported(format!(
                "no closed form for {{{other}}}; supported: {}",
                FORMULA_CLASSES.map(|c| format!("{{{c}}}")).join(" ")
            )))
        }
    })
}

/// Series count: `[t^n]` of the solved series at the substitution point.
pub fn series_count(n: usize, set: &PatternSet, solutions: &Solutions) -> Result<BigCount> {
    if n > solutions.order {
        return Err(Error::OrderExceeded {
            index: n,
            order: solutions.order,
        });
    }
    let reduced = Reduced::new(set)?;
    let (x, y, z) = reduced.point();
    Ok(reduced.series(solutions, false).eval_int(x, y, z)[n].clone())
}

/// Counts `GNC_n(set)` by the chosen method.
pub fn count(n: usize, set: &PatternSet, method: Method, limits: &Limits, jobs: usize) -> Result<BigCount> {
    match method {
        Method::Brute => Ok(census_sharded(n, set, false, limits, jobs)?.total()),
        Method::Formula => formula_count(n as u64, set),
        Method::Series => {
            Reduced::new(set)?;
            series_count(n, set, &Solutions::new(n))
        }
    }
}
