//! Truncated matrix of the Gauss-Kuzmin-Wirsing operator in the basis
//! `(x - 1)^l`, and its eigenvalues.
//!
//! `T[k][l]` is the `k`-th Taylor coefficient at 1 of the image of
//! `(t - 1)^l`:
//!
//! ```text
//! T[k][l] = sum_{r<=l} C(l,r) (-1)^(l-r) (-1)^k C(k+r+1, k) (zeta(2+r+k) - 1)
//! ```
//!
//! Eigenvalues come from balancing, elimination to Hessenberg form and the
//! Francis double-shift QR iteration, all in MPFR floats.

// the QR sweeps read and write several rows per index; iterators obscure them
#![allow(clippy::needless_range_loop)]

use rayon::prelude::*;
use rug::{Complex, Float, Integer};

use super::zeta::zeta_minus_one;
use crate::error::{Error, Result};

/// Iterations allowed per eigenvalue before giving up.
pub const QR_ITERATION_CAP: u32 = 200;

#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    dim: usize,
    prec: u32,
    entries: Vec<Vec<Float>>,
}

impl OperatorMatrix {
    /// Assembles the `dim x dim` matrix. Entries are alternating sums
    /// with large binomials, so they are formed with extra bits and then
    /// rounded to `prec`.
    pub fn new(dim: usize, prec: u32) -> Self {
        let wp = prec + 4 * dim as u32 + 64;
        let zetas: Vec<Float> = (0..2 * dim + 2)
            .into_par_iter()
            .map(|n| {
                if n < 2 {
                    Float::new(wp)
                } else {
                    zeta_minus_one(n as u32, wp)
                }
            })
            .collect();
        let entries = (0..dim)
            .into_par_iter()
            .map(|k| {
                (0..dim)
                    .map(|l| {
                        let mut acc = Float::with_val(wp, 0);
                        for r in 0..=l {
                            let c = Integer::from(Integer::binomial_u(l as u32, r as u32))
                                * Integer::from(Integer::binomial_u((k + r + 1) as u32, k as u32));
                            let term = Float::with_val(wp, &zetas[2 + r + k] * &c);
                            if (l - r + k) % 2 == 1 {
                                acc -= term;
                            } else {
                                acc += term;
                            }
                        }
                        Float::with_val(prec, acc)
                    })
                    .collect()
            })
            .collect();
        OperatorMatrix { dim, prec, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn entry(&self, k: usize, l: usize) -> &Float {
        &self.entries[k][l]
    }

    pub fn trace(&self) -> Float {
        let mut t = Float::with_val(self.prec, 0);
        for k in 0..self.dim {
            t += &self.entries[k][k];
        }
        t
    }

    /// All eigenvalues, sorted by decreasing modulus.
    pub fn eigenvalues(&self) -> Result<Vec<Complex>> {
        let mut a = self.entries.clone();
        balance(&mut a);
        hessenberg(&mut a);
        let mut ev = hqr(&mut a, self.prec)?;
        ev.sort_by(|x, y| {
            let ax = Float::with_val(self.prec, x.abs_ref());
            let ay = Float::with_val(self.prec, y.abs_ref());
            ay.partial_cmp(&ax).expect("finite eigenvalues")
        });
        Ok(ev)
    }
}

/// The `count` eigenvalues of largest modulus of the `dim`-truncated
/// operator. Eigenvalues of interest are real; for a complex pair the real
/// part is returned, which keeps the sum over all `dim` values equal to the
/// trace.
pub fn gkw_eigenvalues(dim: usize, prec: u32, count: usize) -> Result<Vec<Float>> {
    if dim < 8 {
        return Err(Error::Domain("matrix dimension must be at least 8".into()));
    }
    if count > dim {
        return Err(Error::Domain(format!(
            "cannot extract {count} of {dim} eigenvalues"
        )));
    }
    let m = OperatorMatrix::new(dim, prec);
    let ev = m.eigenvalues()?;
    Ok(ev
        .into_iter()
        .take(count)
        .map(|z| Float::with_val(prec, z.real()))
        .collect())
}

fn abs_f64(x: &Float) -> f64 {
    x.to_f64().abs()
}

/// Diagonal similarity by powers of two so that row and column norms are
/// comparable.
fn balance(a: &mut [Vec<Float>]) {
    let n = a.len();
    loop {
        let mut done = true;
        for i in 0..n {
            let (mut c, mut r) = (0.0f64, 0.0f64);
            for j in 0..n {
                if j != i {
                    c += abs_f64(&a[j][i]);
                    r += abs_f64(&a[i][j]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut shift = 0i32;
            let mut g = r / 2.0;
            while c < g {
                shift += 1;
                c *= 4.0;
            }
            g = r * 2.0;
            while c > g {
                shift -= 1;
                c /= 4.0;
            }
            let f = (shift as f64).exp2();
            if (c + r) / f < 0.95 * s {
                done = false;
                for x in a[i].iter_mut() {
                    *x >>= shift;
                }
                for row in a.iter_mut() {
                    row[i] <<= shift;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Gaussian elimination with pivoting to upper Hessenberg form.
fn hessenberg(a: &mut [Vec<Float>]) {
    let n = a.len();
    for m in 1..n.saturating_sub(1) {
        let mut piv = m;
        for j in m + 1..n {
            if a[j][m - 1].clone().abs() > a[piv][m - 1].clone().abs() {
                piv = j;
            }
        }
        if piv != m {
            a.swap(piv, m);
            for row in a.iter_mut() {
                row.swap(piv, m);
            }
        }
        if a[m][m - 1].is_zero() {
            continue;
        }
        let x = a[m][m - 1].clone();
        for i in m + 1..n {
            if a[i][m - 1].is_zero() {
                continue;
            }
            let y = Float::with_val(x.prec(), &a[i][m - 1] / &x);
            a[i][m - 1] = Float::new(x.prec());
            let (head, tail) = a.split_at_mut(i);
            let (rm, ri) = (&head[m], &mut tail[0]);
            for j in m..n {
                ri[j] -= Float::with_val(x.prec(), &y * &rm[j]);
            }
            for row in a.iter_mut() {
                let add = Float::with_val(x.prec(), &y * &row[i]);
                row[m] += add;
            }
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix; destroys `a`.
fn hqr(a: &mut [Vec<Float>], prec: u32) -> Result<Vec<Complex>> {
    let n = a.len();
    let f = |v: f64| Float::with_val(prec, v);
    let eps = Float::with_val(prec, 1) >> (prec as i32 - 2);
    let mut wr = vec![f(0.0); n];
    let mut wi = vec![f(0.0); n];

    let mut anorm = f(0.0);
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[i][j].clone().abs();
        }
    }

    // indices follow the classical 1-based formulation via `nn`
    let mut nn = n as isize - 1;
    let mut t = f(0.0);
    while nn >= 0 {
        let mut its = 0u32;
        loop {
            let nu = nn as usize;
            // look for a single small subdiagonal element
            let mut l = nu;
            while l >= 1 {
                let mut s =
                    Float::with_val(prec, a[l - 1][l - 1].abs_ref()) + a[l][l].clone().abs();
                if s.is_zero() {
                    s = anorm.clone();
                }
                if a[l][l - 1].clone().abs() <= Float::with_val(prec, &s * &eps) {
                    a[l][l - 1] = f(0.0);
                    break;
                }
                l -= 1;
            }
            let mut x = a[nu][nu].clone();
            if l == nu {
                wr[nu] = Float::with_val(prec, &x + &t);
                wi[nu] = f(0.0);
                nn -= 1;
                break;
            }
            let mut y = a[nu - 1][nu - 1].clone();
            let mut w = Float::with_val(prec, &a[nu][nu - 1] * &a[nu - 1][nu]);
            if l == nu - 1 {
                let p = Float::with_val(prec, &y - &x) / 2u32;
                let q = Float::with_val(prec, p.square_ref()) + &w;
                let z = Float::with_val(prec, q.clone().abs().sqrt());
                x += &t;
                if q >= 0 {
                    let z = if p >= 0 {
                        Float::with_val(prec, &p + &z)
                    } else {
                        Float::with_val(prec, &p - &z)
                    };
                    wr[nu - 1] = Float::with_val(prec, &x + &z);
                    wr[nu] = wr[nu - 1].clone();
                    if !z.is_zero() {
                        wr[nu] = Float::with_val(prec, &x - Float::with_val(prec, &w / &z));
                    }
                    wi[nu - 1] = f(0.0);
                    wi[nu] = f(0.0);
                } else {
                    wr[nu - 1] = Float::with_val(prec, &x + &p);
                    wr[nu] = wr[nu - 1].clone();
                    wi[nu - 1] = Float::with_val(prec, -&z);
                    wi[nu] = z;
                }
                nn -= 2;
                break;
            }
            if its >= QR_ITERATION_CAP {
                return Err(Error::ConvergenceFailure(format!(
                    "QR iteration exceeded {QR_ITERATION_CAP} steps"
                )));
            }
            if its > 0 && its.is_multiple_of(10) {
                // exceptional shift
                t += &x;
                for i in 0..=nu {
                    a[i][i] -= &x;
                }
                let s = Float::with_val(prec, a[nu][nu - 1].abs_ref())
                    + a[nu - 1][nu - 2].clone().abs();
                x = Float::with_val(prec, &s * 0.75);
                y = x.clone();
                w = Float::with_val(prec, s.square_ref()) * -0.4375;
            }
            its += 1;

            // look for two consecutive small subdiagonal elements
            let mut m = nu - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a[m][m].clone();
                let rr = Float::with_val(prec, &x - &z);
                let ss = Float::with_val(prec, &y - &z);
                p = (Float::with_val(prec, &rr * &ss) - &w) / &a[m + 1][m] + &a[m][m + 1];
                q = Float::with_val(prec, &a[m + 1][m + 1] - &z) - &rr - &ss;
                r = a[m + 2][m + 1].clone();
                let s = Float::with_val(prec, p.abs_ref()) + q.clone().abs() + r.clone().abs();
                p /= &s;
                q /= &s;
                r /= &s;
                if m == l {
                    break;
                }
                let u = Float::with_val(prec, a[m][m - 1].abs_ref())
                    * (Float::with_val(prec, q.abs_ref()) + r.clone().abs());
                let v = Float::with_val(prec, p.abs_ref())
                    * (Float::with_val(prec, a[m - 1][m - 1].abs_ref())
                        + z.abs()
                        + a[m + 1][m + 1].clone().abs());
                if u <= Float::with_val(prec, &v * &eps) {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nu {
                a[i][i - 2] = f(0.0);
                if i != m + 2 {
                    a[i][i - 3] = f(0.0);
                }
            }

            // double QR step on rows l..nn and columns m..nn
            let mut xk = f(0.0);
            for k in m..nu {
                if k != m {
                    p = a[k][k - 1].clone();
                    q = a[k + 1][k - 1].clone();
                    r = if k != nu - 1 {
                        a[k + 2][k - 1].clone()
                    } else {
                        f(0.0)
                    };
                    xk = Float::with_val(prec, p.abs_ref()) + q.clone().abs() + r.clone().abs();
                    if !xk.is_zero() {
                        p /= &xk;
                        q /= &xk;
                        r /= &xk;
                    }
                }
                let mut s = (Float::with_val(prec, p.square_ref())
                    + Float::with_val(prec, q.square_ref())
                    + Float::with_val(prec, r.square_ref()))
                .sqrt();
                if p < 0 {
                    s = -s;
                }
                if s.is_zero() {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[k][k - 1] = Float::with_val(prec, -&a[k][k - 1]);
                    }
                } else {
                    a[k][k - 1] = Float::with_val(prec, -(Float::with_val(prec, &s * &xk)));
                }
                p += &s;
                let x1 = Float::with_val(prec, &p / &s);
                let y1 = Float::with_val(prec, &q / &s);
                let z1 = Float::with_val(prec, &r / &s);
                q /= &p;
                r /= &p;
                for j in k..=nu {
                    let mut pp = Float::with_val(prec, &q * &a[k + 1][j]) + &a[k][j];
                    if k != nu - 1 {
                        pp += Float::with_val(prec, &r * &a[k + 2][j]);
                        let d = Float::with_val(prec, &pp * &z1);
                        a[k + 2][j] -= d;
                    }
                    let d = Float::with_val(prec, &pp * &y1);
                    a[k + 1][j] -= d;
                    let d = Float::with_val(prec, &pp * &x1);
                    a[k][j] -= d;
                }
                let mmin = nu.min(k + 3);
                for i in l..=mmin {
                    let mut pp = Float::with_val(prec, &x1 * &a[i][k])
                        + Float::with_val(prec, &y1 * &a[i][k + 1]);
                    if k != nu - 1 {
                        pp += Float::with_val(prec, &z1 * &a[i][k + 2]);
                        let d = Float::with_val(prec, &pp * &r);
                        a[i][k + 2] -= d;
                    }
                    let d = Float::with_val(prec, &pp * &q);
                    a[i][k + 1] -= d;
                    a[i][k] -= &pp;
                }
            }
        }
    }
    Ok(wr
        .into_iter()
        .zip(wi)
        .map(|(re, im)| Complex::with_val(prec, (re, im)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn companion(roots: &[f64], prec: u32) -> Vec<Vec<Float>> {
        // companion matrix of prod (x - r)
        let mut c = vec![1.0f64];
        for &r in roots {
            let mut next = vec![0.0; c.len() + 1];
            for (i, v) in c.iter().enumerate() {
                next[i + 1] += v;
                next[i] -= r * v;
            }
            c = next;
        }
        let n = roots.len();
        let mut a = vec![vec![Float::new(prec); n]; n];
        for i in 1..n {
            a[i][i - 1] = Float::with_val(prec, 1);
        }
        for i in 0..n {
            a[i][n - 1] = Float::with_val(prec, -c[i]);
        }
        a
    }

    #[test]
    fn qr_recovers_known_roots() {
        let roots = [3.0, -2.0, 1.5, 0.5, -0.25, 0.125];
        let mut a = companion(&roots, 128);
        balance(&mut a);
        hessenberg(&mut a);
        let mut ev: Vec<f64> = hqr(&mut a, 128)
            .unwrap()
            .iter()
            .map(|z| {
                assert!(z.imag().to_f64().abs() < 1e-20);
                z.real().to_f64()
            })
            .collect();
        ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
        let mut expect = roots.to_vec();
        expect.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (e, r) in ev.iter().zip(expect) {
            assert!((e - r).abs() < 1e-25, "{e} vs {r}");
        }
    }

    #[test]
    fn qr_finds_complex_pairs() {
        // rotation-like block: eigenvalues 1 +- 2i, and 5
        let p = 128;
        let v = |x: f64| Float::with_val(p, x);
        let mut a = vec![
            vec![v(1.0), v(-2.0), v(0.3)],
            vec![v(2.0), v(1.0), v(-0.7)],
            vec![v(0.0), v(0.0), v(5.0)],
        ];
        hessenberg(&mut a);
        let ev = hqr(&mut a, p).unwrap();
        let mut found = ev
            .iter()
            .map(|z| (z.real().to_f64(), z.imag().to_f64()))
            .collect::<Vec<_>>();
        found.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let expect = [(1.0, -2.0), (1.0, 2.0), (5.0, 0.0)];
        for (f, e) in found.iter().zip(expect) {
            assert!(
                (f.0 - e.0).abs() < 1e-25 && (f.1 - e.1).abs() < 1e-25,
                "{f:?}"
            );
        }
    }

    #[test]
    fn first_column_is_closed_form() {
        let m = OperatorMatrix::new(12, 128);
        for k in 0..12 {
            let z = zeta_minus_one(k as u32 + 2, 128) * (k as u32 + 1);
            let expect = if k % 2 == 1 { -z } else { z };
            let diff = Float::with_val(128, m.entry(k, 0) - &expect).abs();
            assert!(diff < Float::with_val(128, 1) >> 120u32);
        }
    }
}
