//! Bivariate polynomials in `X`, `Y` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use rug::ops::Pow;
use rug::{Complex, Integer, Rational};

/// Polynomial in `X`, `Y` over `Q`.
///
/// Stored as a dense integer grid `rows[degX][degY]` scaled by a common
/// positive denominator, with `gcd(content(rows), den) = 1`. This form is
/// unique, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    rows: Vec<Vec<Integer>>,
    den: Integer,
}

impl Default for BiPoly {
    fn default() -> Self {
        BiPoly::zero()
    }
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly {
            rows: Vec::new(),
            den: Integer::from(1),
        }
    }

    pub fn one() -> Self {
        BiPoly::constant(&Rational::from(1))
    }

    pub fn constant(c: &Rational) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        BiPoly::monomial(&Rational::from(1), 1, 0)
    }

    pub fn y() -> Self {
        BiPoly::monomial(&Rational::from(1), 0, 1)
    }

    pub fn monomial(c: &Rational, dx: u32, dy: u32) -> Self {
        if *c == 0 {
            return BiPoly::zero();
        }
        let mut rows = vec![Vec::new(); dx as usize + 1];
        let mut row = vec![Integer::ZERO; dy as usize + 1];
        row[dy as usize] = c.numer().clone();
        rows[dx as usize] = row;
        BiPoly {
            rows,
            den: c.denom().clone(),
        }
    }

    /// Builds from `(degX, degY) -> coefficient` pairs; repeated exponents
    /// are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), Rational)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let mut den = Integer::from(1);
        for (_, c) in &terms {
            den.lcm_mut(c.denom());
        }
        let mut rows: Vec<Vec<Integer>> = Vec::new();
        for ((dx, dy), c) in terms {
            let (dx, dy) = (dx as usize, dy as usize);
            if rows.len() <= dx {
                rows.resize(dx + 1, Vec::new());
            }
            let row = &mut rows[dx];
            if row.len() <= dy {
                row.resize(dy + 1, Integer::ZERO);
            }
            row[dy] += c.numer() * Integer::from(&den / c.denom());
        }
        let mut p = BiPoly { rows, den };
        p.normalize();
        p
    }

    /// Polynomial in `X` alone, ascending coefficients.
    pub fn from_x_coeffs(coeffs: &[Rational]) -> Self {
        BiPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| ((d as u32, 0), c.clone())),
        )
    }

    /// Polynomial in `Y` alone with integer ascending coefficients.
    pub fn from_y_integers(coeffs: &[Integer]) -> Self {
        let mut p = BiPoly {
            rows: vec![coeffs.to_vec()],
            den: Integer::from(1),
        };
        p.normalize();
        p
    }

    pub(crate) fn from_parts(rows: Vec<Vec<Integer>>, den: Integer) -> Self {
        let mut p = BiPoly { rows, den };
        p.normalize();
        p
    }

    /// Common denominator of all coefficients.
    pub fn denom(&self) -> &Integer {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The constant value if this polynomial has no `X` or `Y` terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.rows.len() {
            0 => Some(Rational::new()),
            1 if self.rows[0].len() == 1 => {
                Some(Rational::from((self.rows[0][0].clone(), self.den.clone())))
            }
            _ => None,
        }
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.rows
            .iter()
            .filter_map(|r| r.len().checked_sub(1))
            .max()
    }

    /// True if no term involves `X`.
    pub fn is_y_only(&self) -> bool {
        self.rows.len() <= 1
    }

    pub fn num_terms(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.iter().filter(|c| !c.is_zero()).count())
            .sum()
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> Rational {
        self.rows
            .get(dx as usize)
            .and_then(|r| r.get(dy as usize))
            .map(|c| Rational::from((c.clone(), self.den.clone())))
            .unwrap_or_default()
    }

    /// Nonzero terms in descending `(degX, degY)` lexicographic order.
    pub fn terms(&self) -> Vec<((u32, u32), Rational)> {
        let mut out = Vec::with_capacity(self.num_terms());
        for (dx, row) in self.rows.iter().enumerate().rev() {
            for (dy, c) in row.iter().enumerate().rev() {
                if !c.is_zero() {
                    out.push((
                        (dx as u32, dy as u32),
                        Rational::from((c.clone(), self.den.clone())),
                    ));
                }
            }
        }
        out
    }

    pub fn term_map(&self) -> BTreeMap<(u32, u32), Rational> {
        self.terms().into_iter().collect()
    }

    fn normalize(&mut self) {
        for row in self.rows.iter_mut() {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.rows.last().is_some_and(|r| r.is_empty()) {
            self.rows.pop();
        }
        if self.rows.is_empty() {
            self.den = Integer::from(1);
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in self.rows.iter_mut().flatten() {
                *c = -std::mem::take(c);
            }
        }
        if self.den == 1 {
            return;
        }
        let mut g = self.den.clone();
        for c in self.rows.iter().flatten() {
            if !c.is_zero() {
                g.gcd_mut(c);
                if g == 1 {
                    return;
                }
            }
        }
        self.den.div_exact_mut(&g);
        for c in self.rows.iter_mut().flatten() {
            c.div_exact_mut(&g);
        }
    }

    /// Returns the integer grid scaled to the denominator `target`, which
    /// must be a multiple of `self.den`.
    fn scaled_rows(&self, target: &Integer) -> Vec<Vec<Integer>> {
        if *target == self.den {
            return self.rows.clone();
        }
        let f = Integer::from(target / &self.den);
        self.rows
            .iter()
            .map(|r| r.iter().map(|c| Integer::from(c * &f)).collect())
            .collect()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        self.add_scaled(other, false)
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add_scaled(other, true)
    }

    fn add_scaled(&self, other: &BiPoly, negate: bool) -> BiPoly {
        let den = Integer::from(self.den.lcm_ref(&other.den));
        let mut rows = self.scaled_rows(&den);
        let f = Integer::from(&den / &other.den);
        if rows.len() < other.rows.len() {
            rows.resize(other.rows.len(), Vec::new());
        }
        for (dst, src) in rows.iter_mut().zip(other.rows.iter()) {
            if dst.len() < src.len() {
                dst.resize(src.len(), Integer::ZERO);
            }
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if negate {
                    *d -= s * &f;
                } else {
                    *d += s * &f;
                }
            }
        }
        BiPoly::from_parts(rows, den)
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|c| Integer::from(-c)).collect())
                .collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero();
        }
        let mut rows: Vec<Vec<Integer>> = vec![Vec::new(); self.rows.len() + other.rows.len() - 1];
        for (i, ra) in self.rows.iter().enumerate() {
            if ra.is_empty() {
                continue;
            }
            for (j, rb) in other.rows.iter().enumerate() {
                if rb.is_empty() {
                    continue;
                }
                let dst = &mut rows[i + j];
                let need = ra.len() + rb.len() - 1;
                if dst.len() < need {
                    dst.resize(need, Integer::ZERO);
                }
                for (k, a) in ra.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (l, b) in rb.iter().enumerate() {
                        dst[k + l] += a * b;
                    }
                }
            }
        }
        BiPoly::from_parts(rows, Integer::from(&self.den * &other.den))
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        if *c == 0 || self.is_zero() {
            return BiPoly::zero();
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| Integer::from(x * c.numer())).collect())
            .collect();
        BiPoly::from_parts(rows, Integer::from(&self.den * c.denom()))
    }

    /// Multiplies by an integer polynomial in `Y` (ascending coefficients).
    pub fn mul_upoly(&self, p: &[Integer]) -> BiPoly {
        if p.len() == 1 && p[0] == 1 {
            return self.clone();
        }
        let rows = self
            .rows
            .iter()
            .map(|r| super::polyy::upoly::mul(r, p))
            .collect();
        BiPoly::from_parts(rows, self.den.clone())
    }

    /// Exact division by an integer polynomial in `Y`; `None` if some row
    /// is not divisible.
    pub fn div_upoly_exact(&self, p: &[Integer]) -> Option<BiPoly> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            rows.push(super::polyy::upoly::div_exact(r, p)?);
        }
        Some(BiPoly::from_parts(rows, self.den.clone()))
    }

    /// Exact division by the primitive linear polynomial `a Y + b`.
    pub fn div_linear_y(&self, a: &Integer, b: &Integer) -> Option<BiPoly> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            if r.is_empty() {
                rows.push(Vec::new());
                continue;
            }
            if r.len() == 1 {
                return None;
            }
            if b.is_zero() {
                if !r[0].is_zero() {
                    return None;
                }
                let mut q: Vec<Integer> = r[1..].to_vec();
                if *a != 1 {
                    for c in q.iter_mut() {
                        if !c.is_divisible(a) {
                            return None;
                        }
                        c.div_exact_mut(a);
                    }
                }
                rows.push(q);
                continue;
            }
            // synthetic division from the top
            let d = r.len() - 1;
            let mut q = vec![Integer::ZERO; d];
            let mut carry = r[d].clone();
            for k in (0..d).rev() {
                if !carry.is_divisible(a) {
                    return None;
                }
                let qk = Integer::from(carry.div_exact_ref(a));
                carry = Integer::from(&r[k] - &qk * b);
                q[k] = qk;
            }
            if !carry.is_zero() {
                return None;
            }
            rows.push(q);
        }
        Some(BiPoly::from_parts(rows, self.den.clone()))
    }

    pub fn partial_x(&self) -> BiPoly {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .skip(1)
            .map(|(d, r)| r.iter().map(|c| Integer::from(c * d as u32)).collect())
            .collect();
        BiPoly::from_parts(rows, self.den.clone())
    }

    pub fn partial_y(&self) -> BiPoly {
        let rows = self
            .rows
            .iter()
            .map(|r| super::polyy::upoly::derivative(r))
            .collect();
        BiPoly::from_parts(rows, self.den.clone())
    }

    /// Coefficient polynomials in `Y` of each power of `X` (integer,
    /// relative to [`BiPoly::denom`]).
    pub(crate) fn y_rows(&self) -> impl Iterator<Item = &Vec<Integer>> {
        self.rows.iter()
    }

    /// Exact evaluation using integer Horner schemes.
    pub fn eval_rational(&self, x: &Rational, y: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::new();
        }
        let dy = self.deg_y().unwrap_or(0) as u32;
        let dx = self.rows.len() - 1;
        let (yn, yd) = (y.numer(), y.denom());
        let (xn, xd) = (x.numer(), x.denom());
        // each row: sum c_b yn^b yd^(dy-b)
        let row_vals: Vec<Integer> = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = Integer::ZERO;
                let mut pw = Integer::from(1);
                // Horner from the top of the full degree range dy
                for b in (0..=dy as usize).rev() {
                    acc *= yn;
                    if let Some(c) = r.get(b) {
                        acc += c * &pw;
                    }
                    if b > 0 {
                        // multiply the remaining lower coefficients by yd
                        pw *= yd;
                    }
                }
                acc
            })
            .collect();
        let mut acc = Integer::ZERO;
        let mut pw = Integer::from(1);
        for a in (0..=dx).rev() {
            acc *= xn;
            acc += &row_vals[a] * &pw;
            if a > 0 {
                pw *= xd;
            }
        }
        let den =
            (&self.den * Integer::from(Pow::pow(yd, dy))) * Integer::from(Pow::pow(xd, dx as u32));
        Rational::from((acc, den))
    }

    /// Evaluation at a complex point; rounding follows `x`'s precision.
    pub fn eval_complex(&self, x: &Complex, y: &Complex) -> Complex {
        let prec = x.prec();
        let mut acc = Complex::new(prec);
        for r in self.rows.iter().rev() {
            let mut rv = Complex::new(prec);
            for c in r.iter().rev() {
                rv *= y;
                rv += c;
            }
            acc *= x;
            acc += &rv;
        }
        acc / &self.den
    }
}

impl fmt::Display for BiPoly {
    /// Expanded form, e.g. `-3XY^3+9Y^3+1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((dx, dy), c)) in terms.iter().enumerate() {
            let mag = Rational::from(c.abs_ref());
            if *c < 0 {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let unit = mag == 1 && (*dx > 0 || *dy > 0);
            if !unit {
                write!(f, "{mag}")?;
            }
            match dx {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{dx}")?,
            }
            match dy {
                0 => {}
                1 => write!(f, "Y")?,
                _ => write!(f, "Y^{dy}")?,
            }
        }
        Ok(())
    }
}
