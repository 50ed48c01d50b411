//! Exact integer kernels: binomials, Catalan, ternary and little Schröder
//! numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Every count in the crate is an exact signed big integer.
pub type BigCount = BigInt;

/// `C(n, k)`; zero outside `0 <= k <= n`. Negative `n` is rejected.
pub fn binomial(n: i64, k: i64) -> Result<BigCount> {
    if n < 0 {
        return Err(Error::NegativeArgument(n));
    }
    Ok(choose(n as u64, k))
}

/// Infallible binomial for nonnegative `n`.
pub fn choose(n: u64, k: i64) -> BigCount {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn catalan(n: u64) -> BigCount {
    choose(2 * n, n as i64) / (n + 1)
}

/// `C(3n, n) / (2n + 1)`: NC-trees on `n + 1` points.
pub fn ternary(n: u64) -> BigCount {
    choose(3 * n, n as i64) / (2 * n + 1)
}

/// `|GNC_n| = 2^n * ternary(n)`: every gap may or may not carry a bar.
pub fn gnc_total(n: u64) -> BigCount {
    ternary(n) << n
}

/// Little Schröder numbers `R_0..=R_n`, read off the series solution of
/// `R = 1 - tR + 2tR^2` one degree at a time.
pub fn little_schroeder_prefix(n: u64) -> Vec<BigCount> {
    let mut r: Vec<BigCount> = vec![BigInt::one()];
    for m in 1..=n as usize {
        let conv: BigInt = (0..m).map(|i| &r[i] * &r[m - 1 - i]).sum();
        let next = -&r[m - 1] + conv * 2;
        r.push(next);
    }
    r
}

pub fn little_schroeder(n: u64) -> BigCount {
    little_schroeder_prefix(n).pop().expect("prefix is never empty")
}

/// `[t^j] T(t)^i` where `T` is the ternary generating function:
/// `i/(3j+i) * C(3j+i, j)`, and `[t^j] 1` when `i = 0`.
pub fn ternary_power_coeff(i: u64, j: u64) -> BigCount {
    if i == 0 {
        return if j == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let top = 3 * j + i;
    choose(top, j as i64) * i / top
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn pascal(n: usize) -> Vec<Vec<BigInt>> {
        let mut rows = vec![vec![big(1)]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![big(1); i + 1];
            for k in 1..i {
                row[k] = &prev[k - 1] + &prev[k];
            }
            rows.push(row);
        }
        rows
    }

    /// Dyck words of semilength `n`, counted by brute force over bit strings.
    fn dyck_brute(n: u32) -> u64 {
        (0u64..1 << (2 * n))
            .filter(|w| {
                let mut h = 0i32;
                for i in 0..2 * n {
                    h += if w >> i & 1 == 1 { 1 } else { -1 };
                    if h < 0 {
                        return false;
                    }
                }
                h == 0
            })
            .count() as u64
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2).unwrap(), big(6));
        assert_eq!(binomial(5, -1).unwrap(), big(0));
        assert_eq!(binomial(5, 6).unwrap(), big(0));
        assert_eq!(binomial(-1, 0), Err(Error::NegativeArgument(-1)));
        // frozen from the Pascal-triangle oracle below
        assert_eq!(binomial(21, 7).unwrap(), big(116280));
    }

    #[test]
    fn binomial_matches_pascal_and_is_symmetric() {
        let rows = pascal(100);
        for n in 0..=100u64 {
            for k in 0..=n {
                let v = choose(n, k as i64);
                assert_eq!(v, rows[n as usize][k as usize]);
                assert_eq!(v, choose(n, (n - k) as i64));
            }
        }
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), big(1));
        assert_eq!(catalan(3), big(dyck_brute(3) as i64));
        assert_eq!(catalan(3), big(5));
        // convolution recurrence oracle
        let mut c = vec![big(1)];
        for m in 0..10 {
            let next: BigInt = (0..=m).map(|i| &c[i] * &c[m - i]).sum();
            c.push(next);
        }
        assert_eq!(c[10], big(16796));
        for (n, v) in c.iter().enumerate().take(11) {
            assert_eq!(&catalan(n as u64), v);
        }
    }

    #[test]
    fn ternary_and_totals() {
        assert_eq!(ternary(0), big(1));
        assert_eq!(ternary(2), big(3));
        assert_eq!(ternary(7), big(7752));
        assert_eq!(gnc_total(0), big(1));
        assert_eq!(gnc_total(2), big(12));
        assert_eq!(gnc_total(6), big(91392));
    }

    #[test]
    fn ternary_from_cubic_fixed_point() {
        // W = 1 + t W^3 solved by plain convolution, independent of the formula.
        let n = 30;
        let mut w: Vec<BigInt> = vec![big(1)];
        for m in 1..=n {
            let mut cube = BigInt::zero();
            for i in 0..m {
                for j in 0..m - i {
                    let k = m - 1 - i - j;
                    cube += &w[i] * &w[j] * &w[k];
                }
            }
            w.push(cube);
        }
        for (m, v) in w.iter().enumerate() {
            assert_eq!(&ternary(m as u64), v);
        }
    }

    #[test]
    fn little_schroeder_values() {
        assert_eq!(little_schroeder(0), big(1));
        assert_eq!(little_schroeder(3), big(11));
        assert_eq!(little_schroeder(6), big(903));
    }

    #[test]
    fn little_schroeder_satisfies_quadratic() {
        // 2t R^2 - (1+t) R + 1 = 0 to order 20
        let r = little_schroeder_prefix(20);
        for m in 0..=20usize {
            let sq_prev: BigInt = if m == 0 {
                BigInt::zero()
            } else {
                (0..m).map(|i| &r[i] * &r[m - 1 - i]).sum()
            };
            let prev = if m == 0 { BigInt::zero() } else { r[m - 1].clone() };
            let one = if m == 0 { big(1) } else { big(0) };
            let residual: BigInt = sq_prev * 2 - &r[m] - prev + one;
            assert!(residual.is_zero(), "order {m}");
        }
    }

    #[test]
    fn ternary_power_coeff_examples() {
        assert_eq!(ternary_power_coeff(0, 0), big(1));
        assert_eq!(ternary_power_coeff(0, 3), big(0));
        assert_eq!(ternary_power_coeff(1, 2), big(3));
        assert_eq!(ternary_power_coeff(2, 1), big(2));
    }

    #[test]
    fn ternary_power_coeff_matches_convolution_powers() {
        let len = 13;
        let base: Vec<BigInt> = (0..len).map(|n| ternary(n as u64)).collect();
        let mut power = vec![BigInt::zero(); len];
        power[0] = big(1);
        for i in 0..=8u64 {
            for (j, v) in power.iter().enumerate() {
                assert_eq!(&ternary_power_coeff(i, j as u64), v, "i={i} j={j}");
            }
            let mut next = vec![BigInt::zero(); len];
            for a in 0..len {
                for b in 0..len - a {
                    next[a + b] += &power[a] * &base[b];
                }
            }
            power = next;
        }
    }
}
