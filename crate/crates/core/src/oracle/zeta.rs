//! `zeta(k) - 1` for integer `k >= 2` by Euler-Maclaurin summation.

use std::sync::Mutex;

use rug::{Float, Integer, Rational};

use crate::arith::GUARD_BITS;

/// `B_0, B_2, B_4, ..., B_{2m}`.
pub fn bernoulli_even(m: usize) -> Vec<Rational> {
    // sum_{i=0}^{n} C(n+1, i) B_i = 0 for n >= 1
    let top = 2 * m;
    let mut b: Vec<Rational> = Vec::with_capacity(top + 1);
    b.push(Rational::from(1));
    for n in 1..=top {
        let mut s = Rational::new();
        for (i, bi) in b.iter().enumerate() {
            s += Rational::from(bi * Integer::from(Integer::binomial_u(n as u32 + 1, i as u32)));
        }
        b.push(-s / Rational::from(n + 1));
    }
    b.into_iter().step_by(2).collect()
}

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Cached `B_0, B_2, ..., B_{2m}`.
fn bernoulli_cached(m: usize) -> Vec<Rational> {
    let mut cache = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    if cache.len() <= m {
        *cache = bernoulli_even(m.max(2 * cache.len()));
    }
    cache[..=m].to_vec()
}

/// `zeta(k) - 1 = sum_{m>=2} m^-k` to `prec` bits.
///
/// The head `2..n` is summed directly; the tail uses the integral, the
/// half-endpoint term and Bernoulli corrections until they drop below the
/// working precision.
pub fn zeta_minus_one(k: u32, prec: u32) -> Float {
    assert!(k >= 2, "zeta(k) needs k >= 2");
    let wp = prec + GUARD_BITS + 16;
    // direct summation already converges when 2^-k is tiny relative to 3^-k
    // cutoff: m^-k < 2^-wp * 2^-k, i.e. m > 2^((wp + k) / k)
    let direct_cutoff = ((wp + k) as f64 / k as f64).exp2();
    if direct_cutoff < 64.0 {
        let mut s = Float::with_val(wp, 0);
        for m in 2..=direct_cutoff.ceil() as u32 + 1 {
            s += Float::with_val(wp, Float::u_pow_u(m, k)).recip();
        }
        return Float::with_val(prec, s);
    }

    // head up to n - 1, tail from n
    let n: u32 = (wp / 2).max(16) + 2 * k;
    let kf = f64::from(k);
    let mut head = Float::with_val(wp, 0);
    for m in 2..n {
        head += Float::with_val(wp, Float::u_pow_u(m, k)).recip();
    }
    let nf = Float::with_val(wp, n);
    let n_pow = Float::with_val(wp, Float::u_pow_u(n, k)); // n^k
    let mut tail = Float::with_val(wp, &nf / &n_pow) / (k - 1); // n^(1-k)/(k-1)
    tail += Float::with_val(wp, n_pow.recip_ref()) / 2u32;

    // sum_j B_2j/(2j)! * k(k+1)...(k+2j-2) * n^(-k-2j+1)
    let bern = bernoulli_cached(wp as usize / 4 + 8);
    let threshold = Float::with_val(wp, &tail) >> wp;
    let mut rising = Float::with_val(wp, k); // k (k+1) ... (k+2j-2)
    let mut npow = Float::with_val(wp, &n_pow * &nf); // n^(k+1)
    let n2 = Float::with_val(wp, nf.square_ref());
    let mut fact = Integer::from(2); // (2j)!
    for (j, b) in bern.iter().enumerate().skip(1) {
        let term = Float::with_val(wp, b) * &rising / &npow / Float::with_val(wp, &fact);
        if term.clone().abs() < threshold {
            break;
        }
        tail += &term;
        let j2 = 2 * j as u32;
        rising *= (kf as u32 + j2 - 1) * (kf as u32 + j2);
        npow *= &n2;
        fact *= (j2 + 1) * (j2 + 2);
    }
    Float::with_val(prec, head + tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_even(4);
        let expect = [(1, 1), (1, 6), (-1, 30), (1, 42), (-1, 30)];
        for (v, (n, d)) in b.iter().zip(expect) {
            assert_eq!(*v, Rational::from((n, d)));
        }
    }

    #[test]
    fn matches_mpfr_zeta() {
        for prec in [64u32, 256, 512] {
            for k in [2u32, 3, 4, 7, 10, 33, 64, 65, 128] {
                let ours = zeta_minus_one(k, prec);
                // zeta(k) = 1 + 2^-k + ..., so the reference needs k extra bits
                let rp = prec + k + 64;
                let reference = Float::with_val(rp, Float::with_val(rp, k).zeta()) - 1u32;
                let err = Float::with_val(rp, &reference - &ours).abs() / &reference;
                assert!(
                    err < Float::with_val(prec, 1) >> (prec - 2),
                    "k={k} prec={prec} err={err}"
                );
            }
        }
    }

    #[test]
    fn classical_values() {
        let z2 = zeta_minus_one(2, 128).to_f64();
        assert!((z2 - 0.644_934_066_848_226_4).abs() < 1e-15);
        let z3 = zeta_minus_one(3, 128).to_f64();
        assert!((z3 - 0.202_056_903_159_594_3).abs() < 1e-15);
    }

    #[test]
    fn leading_term_dominates_for_large_k() {
        let k = 64;
        let z = zeta_minus_one(k, 256);
        let lead = Float::with_val(256, 1) >> k;
        let bound = Float::with_val(256, Float::u_pow_u(3, k)).recip() * 2u32;
        assert!(Float::with_val(256, &z - &lead).abs() < bound);
    }
}
