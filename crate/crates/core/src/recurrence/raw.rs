//! Scalar recurrence for `a_{p,t}(n)` and `psi_j(n)`, derived directly from
//! the coefficient comparison of the functional equation rather than from
//! the symbolic recurrence. It works with `n` fixed and `2^n` substituted,
//! so it is an independent path to the values `A_{p,t}(n, 2^n)`.

use rug::{Integer, Rational};

use crate::arith::gen_binom;
use crate::error::{Error, Result};

/// Values `a_{p,t}(n)` and `psi_j(n)` up to order `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct RawTable {
    pub n: u32,
    pub order: usize,
    pub grid: Vec<Vec<Rational>>,
    pub psi: Vec<Rational>,
}

fn binom(m: i64, r: i64) -> Rational {
    Rational::from(gen_binom(m, r))
}

/// `(-1)^e / 2^k`
fn sign_over_pow2(odd: bool, k: i64) -> Rational {
    let mut q = if k >= 0 {
        Rational::from((Integer::from(1), Integer::from(1) << k as u32))
    } else {
        Rational::from(Integer::from(1) << (-k) as u32)
    };
    if odd {
        q = -q;
    }
    q
}

/// Runs the scalar recurrence for fixed `n >= 1` up to order `order`.
pub fn raw_recurrence(n: u32, order: usize) -> Result<RawTable> {
    if n == 0 {
        return Err(Error::Domain("raw recurrence needs n >= 1".into()));
    }
    let ni = i64::from(n);
    let mut grid = vec![vec![Rational::new(); order + 1]; order + 1];
    let mut psi = vec![Rational::new(); order + 1];
    grid[0][0] = Rational::from(1);
    psi[0] = Rational::from((Integer::from(1) << (n + 1)) - 2u32);

    for big_p in 0..=order {
        for t in (0..=order).filter(|&t| !(big_p == 0 && t == 0)) {
            let (p, ti) = (big_p as i64, t as i64);
            let mut rest = Rational::new();
            let mut self_coeff = Rational::from(1);
            let mut psi_coeff = Rational::new();

            for j in 0..=p {
                for k in 0..=p - j {
                    for i in 0..=ti - j {
                        let w = binom(ni + p - i - j, p - j - k)
                            * binom(ni + k - i - 1, ti - i - j)
                            * sign_over_pow2((k - i).rem_euclid(2) == 1, ni + p + 1 - i - j);
                        if w == 0 {
                            continue;
                        }
                        let (ju, ku, iu) = (j as usize, k as usize, i as usize);
                        if ju == big_p && big_p == t {
                            // the unknown psi_P
                            psi_coeff += w * &grid[ku][iu];
                        } else if ku == big_p && iu == t {
                            self_coeff -= w * &psi[ju];
                        } else {
                            rest += w * &psi[ju] * &grid[ku][iu];
                        }
                    }
                }
            }
            for k in 0..=p {
                for i in 0..=ti {
                    let w = binom(ni + p - i, p - k)
                        * binom(p - k, p + i - k - ti)
                        * sign_over_pow2((p - k) % 2 == 1, ni + p - i);
                    if w == 0 {
                        continue;
                    }
                    if k == p && i == ti {
                        self_coeff -= w;
                    } else {
                        rest += w * &grid[k as usize][i as usize];
                    }
                }
            }
            for k in 0..p {
                for i in 0..ti {
                    let w = binom(ni + p - i - 1, p - k - 1)
                        * binom(p - k - 1, p + i - k - ti)
                        * sign_over_pow2((p - k - 1) % 2 == 1, ni + p - i);
                    if w != 0 {
                        rest += w * &grid[k as usize][i as usize];
                    }
                }
            }

            if big_p == t {
                if self_coeff != 0 {
                    return Err(Error::InternalInconsistency(format!(
                        "raw self coefficient at ({big_p},{t}) is {self_coeff}"
                    )));
                }
                if psi_coeff == 0 {
                    return Err(Error::InternalInconsistency(format!(
                        "raw series coefficient vanishes at ({big_p},{t})"
                    )));
                }
                // 0 = -a + rest + psi_coeff * psi_P with a = 0
                psi[big_p] = -rest / psi_coeff;
                grid[big_p][t] = Rational::new();
            } else {
                if self_coeff == 0 {
                    return Err(Error::Pole);
                }
                grid[big_p][t] = rest / self_coeff;
            }
        }
    }
    Ok(RawTable {
        n,
        order,
        grid,
        psi,
    })
}
