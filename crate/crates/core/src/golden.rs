//! Published reference tables and parsers for their printed forms.
//!
//! The data files under `golden/` hold the six tables as printed:
//! rational functions as an expanded numerator over a factored
//! denominator (`12(3Y-4)^3(3Y-2)^3`), exact values as a numerator over a
//! factored integer (`-74439/(2^2*5^6*17^2)`), and truncated series as
//! decimals carrying their printed number of places.

use rug::ops::Pow;
use rug::{Complete, Integer, Rational};

use crate::arith::{BiPoly, Linear, PolyY, RatFunc2};
use crate::error::{Error, Result};

const TABLE1: &str = include_str!("../golden/table1.txt");
const TABLE2: &str = include_str!("../golden/table2.txt");
const TABLE3: &str = include_str!("../golden/table3.txt");
const TABLE4: &str = include_str!("../golden/table4.txt");
const TABLE5: &str = include_str!("../golden/table5.txt");
const TABLE6: &str = include_str!("../golden/table6.txt");

/// One printed decimal of a series table.
#[derive(Clone, Debug, PartialEq)]
pub struct DecimalCell {
    /// Truncation order `N`.
    pub order: usize,
    /// `n` for `S_N(n)`, `s` for `L_N(s)`.
    pub point: Rational,
    pub printed: String,
    pub value: Rational,
    /// Number of printed decimal places.
    pub places: u32,
}

impl DecimalCell {
    /// One unit in the last printed place.
    pub fn unit(&self) -> Rational {
        Rational::from((1, Integer::u_pow_u(10, self.places).complete()))
    }

    /// `|x - printed|` in units of the last printed place.
    pub fn units_off(&self, x: &Rational) -> Rational {
        let d = Rational::from(x - &self.value).abs();
        d / self.unit()
    }
}

/// A parsed reference table.
#[derive(Clone, Debug)]
pub enum GoldenTable {
    /// Tables 1 and 4, rows `j = 0..`.
    Functions(Vec<RatFunc2>),
    /// Tables 3 and 6, rows `j = 0..`.
    Exact(Vec<Rational>),
    /// Tables 2 and 5, row-major by order.
    Decimal(Vec<DecimalCell>),
}

/// Loads table `id` (1..=6).
pub fn load(id: u8) -> Result<GoldenTable> {
    match id {
        1 => functions(TABLE1).map(GoldenTable::Functions),
        4 => functions(TABLE4).map(GoldenTable::Functions),
        3 => exact_values(TABLE3).map(GoldenTable::Exact),
        6 => exact_values(TABLE6).map(GoldenTable::Exact),
        2 => decimals(TABLE2).map(GoldenTable::Decimal),
        5 => decimals(TABLE5).map(GoldenTable::Decimal),
        _ => Err(Error::Domain(format!("no table {id}; tables are 1..=6"))),
    }
}

/// `Psi_0..Psi_3`.
pub fn table1() -> Result<Vec<RatFunc2>> {
    functions(TABLE1)
}

/// `S_N(n)` for `N` in 5, 10, 20, 40 and `n` in 2..=5.
pub fn table2() -> Result<Vec<DecimalCell>> {
    decimals(TABLE2)
}

/// `Psi_j(2, 4)` for `j <= 9`.
pub fn table3() -> Result<Vec<Rational>> {
    exact_values(TABLE3)
}

/// `Lambda_0..Lambda_3`.
pub fn table4() -> Result<Vec<RatFunc2>> {
    functions(TABLE4)
}

/// `L_N(s)` for `N` in 5, 10, 20 and `s` in 5/2, 3, 4, 18.
pub fn table5() -> Result<Vec<DecimalCell>> {
    decimals(TABLE5)
}

/// `Lambda_j(3, 8)` for `j <= 9`.
pub fn table6() -> Result<Vec<Rational>> {
    exact_values(TABLE6)
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Non-comment, non-blank lines with their 1-based numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn functions(text: &str) -> Result<Vec<RatFunc2>> {
    let mut out = Vec::new();
    for (line, l) in data_lines(text) {
        let (j, rest) = l
            .split_once('|')
            .ok_or_else(|| parse_err(line, 1, "expected `j | numerator | denominator`"))?;
        check_index(j.trim(), out.len(), line)?;
        out.push(parse_function_row(rest).map_err(|e| relocate(e, line))?);
    }
    Ok(out)
}

/// `numerator | factored denominator`, as stored in tables 1 and 4.
pub fn parse_function_row(text: &str) -> Result<RatFunc2> {
    let (num, den) = text
        .split_once('|')
        .ok_or_else(|| parse_err(1, 1, "expected `numerator | denominator`"))?;
    let num = parse_poly(num.trim())?;
    let (c, den) = parse_factored_den(den.trim())?;
    let mut f = RatFunc2::from_factored(num.scale(&Rational::from((1, c))), den);
    f.reduce();
    Ok(f)
}

/// Stored text of row `j` of table 1 or 4, without the index.
pub fn function_row_text(id: u8, j: usize) -> Option<&'static str> {
    let text = match id {
        1 => TABLE1,
        4 => TABLE4,
        _ => return None,
    };
    data_lines(text)
        .nth(j)
        .and_then(|(_, l)| l.split_once('|'))
        .map(|(_, rest)| rest.trim())
}

fn exact_values(text: &str) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    for (line, l) in data_lines(text) {
        let (j, v) = l
            .split_once(' ')
            .ok_or_else(|| parse_err(line, 1, "expected `j value`"))?;
        check_index(j, out.len(), line)?;
        out.push(parse_factored_rational(v.trim()).map_err(|e| relocate(e, line))?);
    }
    Ok(out)
}

fn decimals(text: &str) -> Result<Vec<DecimalCell>> {
    let mut out = Vec::new();
    for (line, l) in data_lines(text) {
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 3 {
            return Err(parse_err(line, 1, "expected `N point value`"));
        }
        let order = f[0].parse().map_err(|_| parse_err(line, 1, "bad order"))?;
        let point = Rational::parse(f[1])
            .map(Rational::from)
            .map_err(|_| parse_err(line, 1, "bad point"))?;
        let (value, places) = parse_decimal(f[2]).map_err(|e| relocate(e, line))?;
        out.push(DecimalCell {
            order,
            point,
            printed: f[2].to_owned(),
            value,
            places,
        });
    }
    Ok(out)
}

fn check_index(text: &str, expected: usize, line: usize) -> Result<()> {
    match text.parse::<usize>() {
        Ok(j) if j == expected => Ok(()),
        _ => Err(parse_err(line, 1, format!("expected row index {expected}"))),
    }
}

fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::Parse {
            column, message, ..
        } => Error::Parse {
            line,
            column,
            message,
        },
        other => other,
    }
}

/// Byte cursor over a single-line expression.
struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            s: s.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn done(&self) -> bool {
        self.pos == self.s.len()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        parse_err(1, self.pos + 1, message)
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).expect("ascii"))
    }

    fn integer(&mut self) -> Result<Integer> {
        let d = self.digits().ok_or_else(|| self.error("expected digits"))?;
        Ok(d.parse().expect("digits parse"))
    }

    fn exponent(&mut self) -> Result<u32> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let d = self
            .digits()
            .ok_or_else(|| self.error("expected an exponent"))?;
        d.parse().map_err(|_| self.error("exponent too large"))
    }
}

/// Expanded polynomial such as `-3XY^3+9Y^3+1/2`.
pub fn parse_poly(text: &str) -> Result<BiPoly> {
    let mut c = Cursor::new(text);
    let mut terms = Vec::new();
    if c.done() {
        return Err(c.error("empty polynomial"));
    }
    while !c.done() {
        let negative = if c.eat(b'-') {
            true
        } else {
            c.eat(b'+');
            false
        };
        let digits = c.digits();
        let has_digits = digits.is_some();
        let mut coeff = match digits {
            Some(d) => {
                let n: Integer = d.parse().expect("digits parse");
                if c.eat(b'/') {
                    let den = c.integer()?;
                    if den == 0 {
                        return Err(c.error("zero denominator"));
                    }
                    Rational::from((n, den))
                } else {
                    Rational::from(n)
                }
            }
            None => Rational::from(1),
        };
        let (mut dx, mut dy, mut any) = (0, 0, false);
        loop {
            if c.eat(b'X') {
                dx += c.exponent()?;
            } else if c.eat(b'Y') {
                dy += c.exponent()?;
            } else {
                break;
            }
            any = true;
        }
        if !any && !has_digits {
            return Err(c.error("expected a coefficient or variable"));
        }
        if negative {
            coeff = -coeff;
        }
        terms.push(((dx, dy), coeff));
    }
    Ok(BiPoly::from_terms(terms))
}

/// Factored denominator such as `12(3Y-4)^3(3Y-2)^3`, returned as the
/// constant and the primitive product. Factors must be linear in `Y`.
pub fn parse_factored_den(text: &str) -> Result<(Integer, PolyY)> {
    let mut c = Cursor::new(text);
    let mut constant = match c.digits() {
        Some(d) => d.parse().expect("digits parse"),
        None => Integer::from(1),
    };
    if constant == 0 {
        return Err(c.error("zero denominator"));
    }
    let mut factors: Vec<(Linear, u32)> = Vec::new();
    while c.eat(b'(') {
        let inner_start = c.pos;
        while c.peek().is_some_and(|b| b != b')') {
            c.pos += 1;
        }
        let inner = std::str::from_utf8(&c.s[inner_start..c.pos]).expect("ascii");
        c.expect(b')')?;
        let m = c.exponent()?;
        let p = parse_poly(inner).map_err(|_| parse_err(1, inner_start + 1, "bad factor"))?;
        let (alpha, beta) = (p.coeff(0, 1), p.coeff(0, 0));
        if alpha == 0 || p.num_terms() != usize::from(beta != 0) + 1 {
            return Err(parse_err(1, inner_start + 1, "factor must be `aY+b`"));
        }
        let (kappa, l) = Linear::from_rational(&alpha, &beta);
        // kappa is a positive integer for integer input
        constant *= Integer::from(kappa.numer()).pow(m);
        factors.push((l, m));
    }
    if !c.done() {
        return Err(c.error("unexpected trailing input"));
    }
    Ok((constant, PolyY::from_factors(factors)))
}

/// Exact value such as `-74439/(2^2*5^6*17^2)`, `13/5` or `6`.
pub fn parse_factored_rational(text: &str) -> Result<Rational> {
    let mut c = Cursor::new(text);
    let negative = c.eat(b'-');
    let num = c.integer()?;
    let mut den = Integer::from(1);
    if c.eat(b'/') {
        let paren = c.eat(b'(');
        loop {
            let p = c.integer()?;
            let e = c.exponent()?;
            den *= p.pow(e);
            if !c.eat(b'*') {
                break;
            }
        }
        if paren {
            c.expect(b')')?;
        }
    }
    if !c.done() {
        return Err(c.error("unexpected trailing input"));
    }
    if den == 0 {
        return Err(c.error("zero denominator"));
    }
    let q = Rational::from((num, den));
    Ok(if negative { -q } else { q })
}

/// Decimal such as `-0.0000863940590`, with its number of places.
pub fn parse_decimal(text: &str) -> Result<(Rational, u32)> {
    let mut c = Cursor::new(text);
    let negative = c.eat(b'-');
    let int = c.integer()?;
    let (frac, places) = if c.eat(b'.') {
        let d = c.digits().ok_or_else(|| c.error("expected decimals"))?;
        (d.parse::<Integer>().expect("digits parse"), d.len() as u32)
    } else {
        (Integer::new(), 0)
    };
    if !c.done() {
        return Err(c.error("unexpected trailing input"));
    }
    let scale = Integer::from(Integer::u_pow_u(10, places));
    let q = Rational::from((int * &scale + frac, scale));
    Ok((if negative { -q } else { q }, places))
}

/// `q` with its denominator written as a prime factorization, in the form
/// accepted by [`parse_factored_rational`]. Factors beyond trial division
/// by primes below 10^5 are printed as one cofactor.
pub fn render_factored(q: &Rational) -> String {
    let den = q.denom();
    if *den == 1 {
        return q.numer().to_string();
    }
    let mut rest = den.clone();
    let mut parts = Vec::new();
    let mut p = 2u32;
    while p < 100_000 && rest > 1 {
        let mut e = 0;
        while rest.is_divisible_u(p) {
            rest.div_exact_u_mut(p);
            e += 1;
        }
        if e == 1 {
            parts.push(p.to_string());
        } else if e > 1 {
            parts.push(format!("{p}^{e}"));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        parts.push(rest.to_string());
    }
    if parts.len() == 1 && !parts[0].contains('^') {
        format!("{}/{}", q.numer(), parts[0])
    } else {
        format!("{}/({})", q.numer(), parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_parser_reads_signs_powers_and_fractions() {
        let p = parse_poly("-3XY^3+9Y^3+X^2-Y+1/2").unwrap();
        assert_eq!(p.coeff(1, 3), -3);
        assert_eq!(p.coeff(0, 3), 9);
        assert_eq!(p.coeff(2, 0), 1);
        assert_eq!(p.coeff(0, 1), -1);
        assert_eq!(p.coeff(0, 0), Rational::from((1, 2)));
        assert_eq!(parse_poly("1").unwrap(), BiPoly::one());
        assert!(parse_poly("3Z").is_err());
        assert!(parse_poly("").is_err());
    }

    #[test]
    fn factored_denominator_expands() {
        let (c, d) = parse_factored_den("12(3Y-4)^3(3Y-2)").unwrap();
        assert_eq!(c, 12);
        assert_eq!(d.degree(), 4);
        assert_eq!(d.eval_rational(&Rational::from(2)), 8 * 4);
        let (c, d) = parse_factored_den("1").unwrap();
        assert_eq!(c, 1);
        assert!(d.is_one());
        assert!(parse_factored_den("(XY-1)").is_err());
        // a non-primitive factor moves its content into the constant
        let (c, _) = parse_factored_den("(6Y-4)^2").unwrap();
        assert_eq!(c, 4);
    }

    #[test]
    fn factored_rationals_round_trip() {
        let q = parse_factored_rational("-74439/(2^2*5^6*17^2)").unwrap();
        assert_eq!(q, Rational::from((-74439, 4 * 15625 * 289)));
        assert_eq!(render_factored(&q), "-74439/(2^2*5^6*17^2)");
        assert_eq!(
            parse_factored_rational("13/5").unwrap(),
            Rational::from((13, 5))
        );
        assert_eq!(render_factored(&Rational::from((13, 5))), "13/5");
        assert_eq!(render_factored(&Rational::from(6)), "6");
        for row in table3().unwrap().iter().chain(&table6().unwrap()) {
            assert_eq!(
                &parse_factored_rational(&render_factored(row)).unwrap(),
                row
            );
        }
    }

    #[test]
    fn decimals_keep_their_places() {
        let (q, places) = parse_decimal("-0.0000863940590").unwrap();
        assert_eq!(places, 13);
        assert_eq!(q, Rational::from((-863940590, 10i64.pow(13))));
        assert!(parse_decimal("0.1x").is_err());
    }

    #[test]
    fn tables_have_their_published_shapes() {
        assert_eq!(table1().unwrap().len(), 4);
        assert_eq!(table4().unwrap().len(), 4);
        assert_eq!(table3().unwrap().len(), 10);
        assert_eq!(table6().unwrap().len(), 10);
        assert_eq!(table2().unwrap().len(), 16);
        let t5 = table5().unwrap();
        assert_eq!(t5.len(), 12);
        assert_eq!(t5[3].places, 13);
        assert_eq!(t5[0].point, Rational::from((5, 2)));
        assert!(load(7).is_err());
    }

    #[test]
    fn first_rows_are_the_simple_closed_forms() {
        let two_y_minus_two = parse_poly("2Y-2").unwrap().into();
        assert_eq!(table1().unwrap()[0], two_y_minus_two);
        assert_eq!(table4().unwrap()[0], two_y_minus_two);
        assert_eq!(table3().unwrap()[0], 6);
        assert_eq!(table6().unwrap()[0], 14);
    }
}
