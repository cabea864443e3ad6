//! Object-expression grammar.
//!
//! ```text
//! expr    ::= atom suffix*
//! atom    ::= "O_S" | "O_x" | "O_f" | "O_C0" | "O_S(" divisor ")" | "p*(" int "," int ")"
//! suffix  ::= "(" divisor ")"        twist by a line bundle
//!           | "[" int "]"            shift
//! divisor ::= signed sum of terms k*C0, k*f (k optional, "*" optional), or "0"
//! ```
//!
//! Whitespace is ignored and the `*` in `p*` is optional. Divisors inside
//! object expressions must have integer coefficients; [`parse_divisor`]
//! also accepts rational coefficients `p/q` for polarizations and B-fields.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::lattice::DivisorClass;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Character offset in the input.
    pub position: usize,
    pub expected: Vec<String>,
    pub found: Option<char>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let found = match self.found {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        write!(
            f,
            "at position {}: expected one of [{}], found {}",
            self.position,
            self.expected.join(", "),
            found
        )
    }
}

impl std::error::Error for ParseError {}

/// Divisor with integer coefficients, `c0 C0 + f f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntDivisor {
    pub c0: i64,
    pub f: i64,
}

impl IntDivisor {
    pub fn new(c0: i64, f: i64) -> Self {
        Self { c0, f }
    }

    pub fn to_class<T: Scalar>(self) -> DivisorClass<T> {
        DivisorClass::from_ints(self.c0, self.f)
    }
}

impl fmt::Display for IntDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = DivisorClass::new(Ratio::from_integer(self.c0), Ratio::from_integer(self.f));
        f.write_str(&format_divisor::<Ratio<i64>>(&d))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `O_S`
    StructureSheaf,
    /// `O_x`, a skyscraper sheaf.
    Point,
    /// `O_f`, structure sheaf of a fiber.
    Fiber,
    /// `O_C0`, structure sheaf of the section.
    Section,
    /// `O_S(D)`
    LineBundle(IntDivisor),
    /// `p*(rank, deg)`: pullback of a curve class.
    Pullback { rank: i64, deg: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Suffix {
    Twist(IntDivisor),
    Shift(i64),
}

/// Parsed object expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ObjectSpec {
    pub atom: Atom,
    pub suffixes: Vec<Suffix>,
}

impl ObjectSpec {
    pub fn atom(atom: Atom) -> Self {
        Self { atom, suffixes: Vec::new() }
    }

    pub fn twisted(mut self, d: IntDivisor) -> Self {
        self.suffixes.push(Suffix::Twist(d));
        self
    }

    pub fn shifted(mut self, n: i64) -> Self {
        self.suffixes.push(Suffix::Shift(n));
        self
    }

    pub fn total_shift(&self) -> i64 {
        self.suffixes
            .iter()
            .map(|s| match s {
                Suffix::Shift(n) => *n,
                Suffix::Twist(_) => 0,
            })
            .sum()
    }

    /// `O_S` twisted by `D` prints as the line bundle `O_S(D)`; fold it
    /// into that atom so printing and parsing are mutually inverse.
    pub fn canonical(&self) -> Self {
        match (&self.atom, self.suffixes.first()) {
            (Atom::StructureSheaf, Some(Suffix::Twist(d))) => Self {
                atom: Atom::LineBundle(*d),
                suffixes: self.suffixes[1..].to_vec(),
            },
            _ => self.clone(),
        }
    }

    /// The same expression with every shift removed. Twists commute with
    /// shifts, so the object is `self.unshifted()[self.total_shift()]`.
    pub fn unshifted(&self) -> Self {
        Self {
            atom: self.atom.clone(),
            suffixes: self
                .suffixes
                .iter()
                .filter(|s| matches!(s, Suffix::Twist(_)))
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for ObjectSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.atom {
            Atom::StructureSheaf => f.write_str("O_S")?,
            Atom::Point => f.write_str("O_x")?,
            Atom::Fiber => f.write_str("O_f")?,
            Atom::Section => f.write_str("O_C0")?,
            Atom::LineBundle(d) => write!(f, "O_S({d})")?,
            Atom::Pullback { rank, deg } => write!(f, "p*({rank},{deg})")?,
        }
        for s in &self.suffixes {
            match s {
                Suffix::Twist(d) => write!(f, "({d})")?,
                Suffix::Shift(n) => write!(f, "[{n}]")?,
            }
        }
        Ok(())
    }
}

/// Canonical text of a divisor: `2*C0-f`, `1/2*C0`, `f`, `0`.
pub fn format_divisor<T: Scalar>(d: &DivisorClass<T>) -> String {
    let mut out = String::new();
    for (coeff, name) in [(&d.c0, "C0"), (&d.f, "f")] {
        if coeff.is_zero() {
            continue;
        }
        let negative = coeff.is_neg();
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = coeff.abs();
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn parse_object(text: &str) -> Result<ObjectSpec, ParseError> {
    let mut p = Parser::new(text);
    let spec = p.expr()?;
    p.end()?;
    Ok(spec)
}

/// Parse a divisor with rational coefficients.
pub fn parse_divisor<T: Scalar>(text: &str) -> Result<DivisorClass<T>, ParseError> {
    let mut p = Parser::new(text);
    let (c0, f) = p.divisor()?;
    p.end()?;
    let conv = |r: Ratio<i128>| {
        T::from_i128(*r.numer()).expect("scalar from integer")
            / T::from_i128(*r.denom()).expect("scalar from integer")
    };
    Ok(DivisorClass::new(conv(c0), conv(f)))
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

type Coeff = Ratio<i128>;

impl Parser {
    fn new(text: &str) -> Self {
        Self { chars: text.chars().collect(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&mut self, expected: &[&str]) -> ParseError {
        let found = self.peek();
        ParseError {
            position: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    /// Consume a literal keyword (no interior whitespace).
    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let k: Vec<char> = kw.chars().collect();
        if self.chars[self.pos..].starts_with(&k) {
            self.pos += k.len();
            true
        } else {
            false
        }
    }

    fn expect_char(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error(&["end of input"])),
        }
    }

    fn expr(&mut self) -> Result<ObjectSpec, ParseError> {
        let atom = self.atom()?;
        let mut spec = ObjectSpec::atom(atom);
        loop {
            match self.peek() {
                Some('(') => {
                    self.pos += 1;
                    let d = self.int_divisor()?;
                    self.expect_char(')')?;
                    spec.suffixes.push(Suffix::Twist(d));
                }
                Some('[') => {
                    self.pos += 1;
                    let n = self.integer()?;
                    self.expect_char(']')?;
                    spec.suffixes.push(Suffix::Shift(n));
                }
                _ => return Ok(spec),
            }
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        const ATOMS: &[&str] = &["O_S", "O_x", "O_f", "O_C0", "p*("];
        if self.keyword("O_C0") {
            return Ok(Atom::Section);
        }
        if self.keyword("O_S") {
            if self.peek() == Some('(') {
                self.pos += 1;
                let d = self.int_divisor()?;
                self.expect_char(')')?;
                return Ok(Atom::LineBundle(d));
            }
            return Ok(Atom::StructureSheaf);
        }
        if self.keyword("O_x") {
            return Ok(Atom::Point);
        }
        if self.keyword("O_f") {
            return Ok(Atom::Fiber);
        }
        if self.keyword("p") {
            if self.peek() == Some('*') {
                self.pos += 1;
            }
            if self.peek() != Some('(') {
                return Err(self.error(&["'('", "'*'"]));
            }
            self.pos += 1;
            let rank = self.integer()?;
            self.expect_char(',')?;
            let deg = self.integer()?;
            self.expect_char(')')?;
            return Ok(Atom::Pullback { rank, deg });
        }
        Err(self.error(ATOMS))
    }

    fn digits(&mut self) -> Option<i128> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let neg = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let here = self.pos;
        let v = self.digits().ok_or_else(|| self.error(&["integer"]))?;
        let v = i64::try_from(v).map_err(|_| ParseError {
            position: here,
            expected: vec!["integer in range".into()],
            found: None,
        })?;
        Ok(if neg { -v } else { v })
    }

    fn unsigned_rational(&mut self) -> Result<Option<Coeff>, ParseError> {
        let Some(num) = self.digits() else { return Ok(None) };
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.digits().ok_or_else(|| self.error(&["denominator"]))?;
            if den == 0 {
                return Err(self.error(&["nonzero denominator"]));
            }
            return Ok(Some(Ratio::new(num, den)));
        }
        Ok(Some(Ratio::from_integer(num)))
    }

    fn divisor(&mut self) -> Result<(Coeff, Coeff), ParseError> {
        let mut c0 = Coeff::zero();
        let mut f = Coeff::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') if !first => {
                    self.pos += 1;
                    Coeff::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -Coeff::one()
                }
                _ if first => Coeff::one(),
                _ => break,
            };
            let coeff = self.unsigned_rational()?;
            let had_coeff = coeff.is_some();
            let coeff = coeff.unwrap_or_else(Coeff::one) * sign;
            if had_coeff && self.peek() == Some('*') {
                self.pos += 1;
            }
            if self.keyword("C0") {
                c0 += coeff;
            } else if self.keyword("f") {
                f += coeff;
            } else if had_coeff && coeff.is_zero() {
                // bare "0"
            } else {
                let mut expected = vec!["'C0'", "'f'"];
                if !had_coeff {
                    expected.insert(0, "coefficient");
                }
                return Err(self.error(&expected));
            }
            first = false;
            if !matches!(self.peek(), Some('+') | Some('-')) {
                break;
            }
        }
        Ok((c0, f))
    }

    fn int_divisor(&mut self) -> Result<IntDivisor, ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let (c0, f) = self.divisor()?;
        let as_int = |r: Coeff| -> Option<i64> {
            if r.is_integer() {
                i64::try_from(r.to_integer()).ok()
            } else {
                None
            }
        };
        match (as_int(c0), as_int(f)) {
            (Some(c0), Some(f)) => Ok(IntDivisor::new(c0, f)),
            _ => Err(ParseError {
                position: start,
                expected: vec!["integer coefficients".into()],
                found: self.chars.get(start).copied(),
            }),
        }
    }
}
