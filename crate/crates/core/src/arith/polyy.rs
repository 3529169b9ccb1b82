//! Univariate integer polynomials in `Y`, used as denominators.

use std::fmt;

use rug::{Complex, Integer, Rational};

/// Helpers on dense integer polynomials stored with ascending degree.
pub(crate) mod upoly {
    use rug::{Integer, Rational};

    pub fn trim(p: &mut Vec<Integer>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn content(p: &[Integer]) -> Integer {
        let mut g = Integer::ZERO;
        for c in p {
            g.gcd_mut(c);
            if g == 1 {
                break;
            }
        }
        g
    }

    pub fn mul(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Integer::ZERO; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    pub fn derivative(p: &[Integer]) -> Vec<Integer> {
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(d, c)| Integer::from(c * d as u32))
            .collect()
    }

    /// Divides by the content and makes the leading coefficient positive.
    /// Returns the signed factor that was removed.
    pub fn make_primitive(p: &mut [Integer]) -> Integer {
        let Some(lead) = p.last() else {
            return Integer::from(1);
        };
        let mut g = content(p);
        if lead.is_negative() {
            g = -g;
        }
        if g != 1 {
            for c in p.iter_mut() {
                c.div_exact_mut(&g);
            }
        }
        g
    }

    /// Exact quotient `a / b` over `Z`, or `None` if `b` does not divide `a`.
    pub fn div_exact(a: &[Integer], b: &[Integer]) -> Option<Vec<Integer>> {
        let db = b.len().checked_sub(1).expect("division by zero polynomial");
        if a.is_empty() {
            return Some(Vec::new());
        }
        if a.len() < b.len() {
            return None;
        }
        let lead = &b[db];
        let mut rem = a.to_vec();
        let mut q = vec![Integer::ZERO; a.len() - db];
        for k in (0..q.len()).rev() {
            let top = &rem[k + db];
            if top.is_zero() {
                continue;
            }
            if !top.is_divisible(lead) {
                return None;
            }
            let c = Integer::from(top.div_exact_ref(lead));
            for (i, bi) in b.iter().enumerate() {
                rem[k + i] -= &c * bi;
            }
            q[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(q)
    }

    /// Primitive greatest common divisor with positive leading coefficient.
    pub fn gcd(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
        let to_q = |p: &[Integer]| p.iter().map(Rational::from).collect::<Vec<_>>();
        let mut x = to_q(a);
        let mut y = to_q(b);
        trim_q(&mut x);
        trim_q(&mut y);
        while !y.is_empty() {
            let r = rem_q(&x, &y);
            x = y;
            y = r;
        }
        if x.is_empty() {
            return Vec::new();
        }
        // clear denominators, then primitive
        let mut l = Integer::from(1);
        for c in &x {
            l.lcm_mut(c.denom());
        }
        let mut out: Vec<Integer> = x
            .iter()
            .map(|c| c.numer() * Integer::from(&l / c.denom()))
            .collect();
        make_primitive(&mut out);
        out
    }

    fn trim_q(p: &mut Vec<Rational>) {
        while p.last().is_some_and(|c| *c == 0) {
            p.pop();
        }
    }

    fn rem_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let inv = Rational::from(b[db].recip_ref());
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = Rational::from(&r[r.len() - 1] * &inv);
            for (i, bi) in b.iter().enumerate() {
                r[k + i] -= Rational::from(&c * bi);
            }
            r.pop();
            trim_q(&mut r);
        }
        r
    }

    pub fn eval_rational(p: &[Integer], y: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in p.iter().rev() {
            acc *= y;
            acc += c;
        }
        acc
    }
}

/// Primitive linear factor `a Y + b` with `a > 0` and `gcd(a, b) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Linear {
    a: Integer,
    b: Integer,
}

impl Linear {
    /// Splits `alpha Y + beta` (with `alpha != 0`) into `kappa * (a Y + b)`
    /// with `a Y + b` primitive and `a > 0`.
    pub fn from_rational(alpha: &Rational, beta: &Rational) -> (Rational, Linear) {
        assert!(*alpha != 0, "linear factor needs a nonzero Y coefficient");
        let mut l = Integer::from(alpha.denom());
        l.lcm_mut(beta.denom());
        let mut a = alpha.numer() * Integer::from(&l / alpha.denom());
        let mut b = beta.numer() * Integer::from(&l / beta.denom());
        let mut g = Integer::from(a.gcd_ref(&b));
        if a.is_negative() {
            g = -g;
        }
        a.div_exact_mut(&g);
        b.div_exact_mut(&g);
        (Rational::from((g, l)), Linear { a, b })
    }

    pub fn a(&self) -> &Integer {
        &self.a
    }

    pub fn b(&self) -> &Integer {
        &self.b
    }

    pub fn coeffs(&self) -> Vec<Integer> {
        vec![self.b.clone(), self.a.clone()]
    }
}

impl fmt::Display for Linear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 1 {
            write!(f, "Y")?;
        } else {
            write!(f, "{}Y", self.a)?;
        }
        match self.b.cmp0() {
            std::cmp::Ordering::Greater => write!(f, "+{}", self.b),
            std::cmp::Ordering::Less => write!(f, "{}", self.b),
            std::cmp::Ordering::Equal => Ok(()),
        }
    }
}

/// Denominator polynomial in `Y`: integer coefficients, content 1 and
/// positive leading coefficient, with an optional factored view as a
/// product of primitive linear factors.
#[derive(Clone, Debug)]
pub struct PolyY {
    coeffs: Vec<Integer>,
    factors: Option<Vec<(Linear, u32)>>,
}

impl PartialEq for PolyY {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for PolyY {}

impl PolyY {
    pub fn one() -> Self {
        PolyY {
            coeffs: vec![Integer::from(1)],
            factors: Some(Vec::new()),
        }
    }

    pub fn from_linear(l: Linear) -> Self {
        PolyY {
            coeffs: l.coeffs(),
            factors: Some(vec![(l, 1)]),
        }
    }

    /// Builds from a factored description; the expansion is computed here.
    pub fn from_factors(mut factors: Vec<(Linear, u32)>) -> Self {
        factors.retain(|(_, m)| *m > 0);
        factors.sort();
        let mut merged: Vec<(Linear, u32)> = Vec::with_capacity(factors.len());
        for (l, m) in factors {
            match merged.last_mut() {
                Some((last, lm)) if *last == l => *lm += m,
                _ => merged.push((l, m)),
            }
        }
        let coeffs = expand(&merged);
        PolyY {
            coeffs,
            factors: Some(merged),
        }
    }

    /// Wraps an already primitive, positive-leading polynomial without a
    /// factored view.
    pub(crate) fn from_primitive(coeffs: Vec<Integer>) -> Self {
        debug_assert!(coeffs.last().is_some_and(|c| c.is_positive()));
        if coeffs.len() == 1 {
            return PolyY::one();
        }
        PolyY {
            coeffs,
            factors: None,
        }
    }

    /// Ascending integer coefficients.
    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn factors(&self) -> Option<&[(Linear, u32)]> {
        self.factors.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn mul(&self, other: &PolyY) -> PolyY {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        match (&self.factors, &other.factors) {
            (Some(a), Some(b)) => {
                let mut all = a.clone();
                all.extend(b.iter().cloned());
                PolyY::from_factors(all)
            }
            _ => PolyY {
                coeffs: upoly::mul(&self.coeffs, &other.coeffs),
                factors: None,
            },
        }
    }

    pub fn mul_linear(&self, l: Linear) -> PolyY {
        self.mul(&PolyY::from_linear(l))
    }

    /// Raises every factor multiplicity (or the expansion) to the power `k`.
    pub fn pow(&self, k: u32) -> PolyY {
        match &self.factors {
            Some(f) => PolyY::from_factors(f.iter().map(|(l, m)| (l.clone(), m * k)).collect()),
            None => {
                let mut acc = vec![Integer::from(1)];
                for _ in 0..k {
                    acc = upoly::mul(&acc, &self.coeffs);
                }
                PolyY {
                    coeffs: acc,
                    factors: None,
                }
            }
        }
    }

    /// Least common multiple together with the cofactors `lcm / self` and
    /// `lcm / other`.
    pub(crate) fn lcm_with_cofactors(&self, other: &PolyY) -> (PolyY, Vec<Integer>, Vec<Integer>) {
        if self == other {
            let one = vec![Integer::from(1)];
            return (self.clone(), one.clone(), one);
        }
        if let (Some(a), Some(b)) = (&self.factors, &other.factors) {
            let mut lcm: Vec<(Linear, u32)> = Vec::new();
            let mut cof_a: Vec<(Linear, u32)> = Vec::new();
            let mut cof_b: Vec<(Linear, u32)> = Vec::new();
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                let ord = match (a.get(i), b.get(j)) {
                    (Some(x), Some(y)) => x.0.cmp(&y.0),
                    (Some(_), None) => std::cmp::Ordering::Less,
                    _ => std::cmp::Ordering::Greater,
                };
                match ord {
                    std::cmp::Ordering::Less => {
                        lcm.push(a[i].clone());
                        cof_b.push(a[i].clone());
                        i += 1;
                    }
                    std::cmp::Ordering::Greater => {
                        lcm.push(b[j].clone());
                        cof_a.push(b[j].clone());
                        j += 1;
                    }
                    std::cmp::Ordering::Equal => {
                        let (ma, mb) = (a[i].1, b[j].1);
                        lcm.push((a[i].0.clone(), ma.max(mb)));
                        if mb > ma {
                            cof_a.push((a[i].0.clone(), mb - ma));
                        } else if ma > mb {
                            cof_b.push((a[i].0.clone(), ma - mb));
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
            return (PolyY::from_factors(lcm), expand(&cof_a), expand(&cof_b));
        }
        let g = upoly::gcd(&self.coeffs, &other.coeffs);
        let ca = upoly::div_exact(&other.coeffs, &g).expect("gcd divides");
        let cb = upoly::div_exact(&self.coeffs, &g).expect("gcd divides");
        let lcm = upoly::mul(&self.coeffs, &ca);
        (PolyY::from_primitive(lcm), ca, cb)
    }

    /// Attempts to recover a factored view by dividing out the given
    /// candidate linear factors. Leaves the view absent if a non-linear
    /// residue remains.
    pub fn factor_with(&self, candidates: &[Linear]) -> PolyY {
        if self.factors.is_some() {
            return self.clone();
        }
        let mut rest = self.coeffs.clone();
        let mut found = Vec::new();
        for l in candidates {
            let lc = l.coeffs();
            let mut m = 0;
            while rest.len() > 1 {
                match upoly::div_exact(&rest, &lc) {
                    Some(q) => {
                        rest = q;
                        m += 1;
                    }
                    None => break,
                }
            }
            if m > 0 {
                found.push((l.clone(), m));
            }
        }
        if rest.len() == 1 {
            PolyY::from_factors(found)
        } else {
            self.clone()
        }
    }

    pub fn eval_rational(&self, y: &Rational) -> Rational {
        upoly::eval_rational(&self.coeffs, y)
    }

    pub fn eval_complex(&self, y: &Complex) -> Complex {
        let mut acc = Complex::new(y.prec());
        for c in self.coeffs.iter().rev() {
            acc *= y;
            acc += c;
        }
        acc
    }

    /// Sum of absolute coefficients weighted by `|y|^k`, the scale used
    /// for the near-pole test.
    pub(crate) fn abs_scale(&self, y_abs: &rug::Float) -> rug::Float {
        let mut acc = rug::Float::new(y_abs.prec());
        for c in self.coeffs.iter().rev() {
            acc *= y_abs;
            acc += c.clone().abs();
        }
        acc
    }
}

fn expand(factors: &[(Linear, u32)]) -> Vec<Integer> {
    let mut acc = vec![Integer::from(1)];
    for (l, m) in factors {
        let lc = l.coeffs();
        for _ in 0..*m {
            acc = upoly::mul(&acc, &lc);
        }
    }
    acc
}

impl fmt::Display for PolyY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.factors {
            Some(fs) if !fs.is_empty() => {
                for (l, m) in fs {
                    if *m == 1 {
                        write!(f, "({l})")?;
                    } else {
                        write!(f, "({l})^{m}")?;
                    }
                }
                Ok(())
            }
            Some(_) => write!(f, "1"),
            None => write!(f, "({})", upoly_display(&self.coeffs)),
        }
    }
}

pub(crate) fn upoly_display(p: &[Integer]) -> String {
    let mut s = String::new();
    for (d, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = Integer::from(c.abs_ref());
        if c.is_negative() {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if d == 0 || mag != 1 {
            s.push_str(&mag.to_string());
        }
        match d {
            0 => {}
            1 => s.push('Y'),
            _ => s.push_str(&format!("Y^{d}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(a: i64, b: i64) -> Linear {
        Linear::from_rational(&Rational::from(a), &Rational::from(b)).1
    }

    #[test]
    fn linear_is_normalized() {
        let (k, l) = Linear::from_rational(&Rational::from(-6), &Rational::from(4));
        assert_eq!(k, -2);
        assert_eq!(l, lin(3, -2));
        assert_eq!(l.to_string(), "3Y-2");
        let (k, l) = Linear::from_rational(&Rational::from((3, 2)), &Rational::from(-1));
        assert_eq!(k, Rational::from((1, 2)));
        assert_eq!(l.to_string(), "3Y-2");
    }

    #[test]
    fn factored_expansion_matches() {
        let p = PolyY::from_factors(vec![(lin(3, -4), 1), (lin(3, -2), 1)]);
        // 9Y^2 - 18Y + 8
        let expected: Vec<Integer> = [8, -18, 9].iter().map(|&c| Integer::from(c)).collect();
        assert_eq!(p.coeffs(), &expected[..]);
        assert_eq!(p.to_string(), "(3Y-4)(3Y-2)");
    }

    #[test]
    fn lcm_factored_and_generic_agree() {
        let a = PolyY::from_factors(vec![(lin(3, -4), 2), (lin(3, -2), 1)]);
        let b = PolyY::from_factors(vec![(lin(3, -2), 3), (lin(9, -2), 1)]);
        let (l1, ca1, cb1) = a.lcm_with_cofactors(&b);
        let ag = PolyY::from_primitive(a.coeffs().to_vec());
        let bg = PolyY::from_primitive(b.coeffs().to_vec());
        let (l2, ca2, cb2) = ag.lcm_with_cofactors(&bg);
        assert_eq!(l1, l2);
        assert_eq!(ca1, ca2);
        assert_eq!(cb1, cb2);
        assert_eq!(upoly::mul(a.coeffs(), &ca1), l1.coeffs().to_vec());
    }

    #[test]
    fn factor_with_candidates() {
        let a = PolyY::from_factors(vec![(lin(3, -4), 2), (lin(1, 0), 1)]);
        let g = PolyY::from_primitive(a.coeffs().to_vec());
        let f = g.factor_with(&[lin(1, 0), lin(3, -2), lin(3, -4)]);
        assert_eq!(f.factors().unwrap(), a.factors().unwrap());
        let h = g.factor_with(&[lin(3, -2)]);
        assert!(h.factors().is_none());
    }

    #[test]
    fn gcd_of_products() {
        let a = upoly::mul(&lin(3, -4).coeffs(), &lin(2, 1).coeffs());
        let b = upoly::mul(&lin(3, -4).coeffs(), &lin(5, 7).coeffs());
        assert_eq!(upoly::gcd(&a, &b), lin(3, -4).coeffs());
    }
}
