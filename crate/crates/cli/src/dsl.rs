//! The set-description language: a small expression grammar, its parser,
//! printer, and evaluator down to `GroundSet`.
//!
//! Grammar (whitespace-insensitive, `&` binds tighter than `|`):
//!
//! ```text
//! expr  := inter ("|" inter)*
//! inter := term ("&" term)*
//! term  := atom ("+" NAT)?
//! atom  := "{}" | "{" NAT ("," NAT)* "}"
//!        | "up(" BITS ";" NAT ";" NAT ("," NAT)* ")"
//!        | "evens" | "odds" | "nat"
//!        | "diff(" expr ")"
//!        | "shift(" expr ";" NAT ("," NAT)* ")"
//!        | "(" expr ")"
//! ```
//!
//! `up(bits; period; residues...)` writes an ultimately periodic set: a
//! block of preperiod bits (possibly empty), the tail period, and the
//! residues the tail keeps. `up(;2;0)` is the even numbers.

use fekit_core::{FiniteSet, GroundSet, SetError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedSet {
    Evens,
    Odds,
    Naturals,
}

/// Abstract syntax of a set expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    Literal(Vec<u64>),
    Periodic { bits: Vec<bool>, period: u64, pattern: Vec<u64> },
    Named(NamedSet),
    Translate(Box<SetExpr>, u64),
    Union(Box<SetExpr>, Box<SetExpr>),
    Intersect(Box<SetExpr>, Box<SetExpr>),
    ShiftIntersect(Box<SetExpr>, Vec<u64>),
    DiffSet(Box<SetExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub line: u32,
    pub column: u32,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), text, pos: 0 }
    }

    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        let mut line = 1u32;
        let mut column = 1u32;
        for b in self.text.bytes().take(at) {
            if b == b'\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        ParseError { message: message.into(), line, column }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(self.error(self.pos, format!("expected '{}'", byte as char)))
        }
    }

    fn parse_nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u64 = 0;
        let mut any = false;
        while let Some(&b) = self.src.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            any = true;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or_else(|| self.error(start, "number too large"))?;
            self.pos += 1;
        }
        if !any {
            return Err(self.error(self.pos, "expected a number"));
        }
        Ok(value)
    }

    fn parse_nat_list(&mut self) -> Result<Vec<u64>, ParseError> {
        let mut out = vec![self.parse_nat()?];
        while self.eat(b',') {
            out.push(self.parse_nat()?);
        }
        Ok(out)
    }

    fn parse_word(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        while let Some(&b) = self.src.get(self.pos) {
            if b.is_ascii_lowercase() {
                self.pos += 1;
            } else {
                break;
            }
        }
        (start, self.text[start..self.pos].to_string())
    }

    fn parse_union(&mut self) -> Result<SetExpr, ParseError> {
        let mut lhs = self.parse_inter()?;
        while self.eat(b'|') {
            let rhs = self.parse_inter()?;
            lhs = SetExpr::Union(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_inter(&mut self) -> Result<SetExpr, ParseError> {
        let mut lhs = self.parse_term()?;
        while self.eat(b'&') {
            let rhs = self.parse_term()?;
            lhs = SetExpr::Intersect(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_term(&mut self) -> Result<SetExpr, ParseError> {
        let atom = self.parse_atom()?;
        if self.eat(b'+') {
            let k = self.parse_nat()?;
            return Ok(SetExpr::Translate(Box::new(atom), k));
        }
        Ok(atom)
    }

    fn parse_atom(&mut self) -> Result<SetExpr, ParseError> {
        match self.peek() {
            Some(b'{') => {
                self.pos += 1;
                if self.eat(b'}') {
                    return Ok(SetExpr::Literal(Vec::new()));
                }
                let elems = self.parse_nat_list()?;
                self.expect(b'}')?;
                Ok(SetExpr::Literal(elems))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.parse_union()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b) if b.is_ascii_lowercase() => {
                let (start, word) = self.parse_word();
                match word.as_str() {
                    "evens" => Ok(SetExpr::Named(NamedSet::Evens)),
                    "odds" => Ok(SetExpr::Named(NamedSet::Odds)),
                    "nat" => Ok(SetExpr::Named(NamedSet::Naturals)),
                    "up" => self.parse_up(start),
                    "diff" => {
                        self.expect(b'(')?;
                        let e = self.parse_union()?;
                        self.expect(b')')?;
                        Ok(SetExpr::DiffSet(Box::new(e)))
                    }
                    "shift" => {
                        self.expect(b'(')?;
                        let e = self.parse_union()?;
                        self.expect(b';')?;
                        let shifts = self.parse_nat_list()?;
                        self.expect(b')')?;
                        Ok(SetExpr::ShiftIntersect(Box::new(e), shifts))
                    }
                    other => Err(self.error(start, format!("unknown name '{other}'"))),
                }
            }
            _ => Err(self.error(self.pos, "expected a set expression")),
        }
    }

    fn parse_up(&mut self, start: usize) -> Result<SetExpr, ParseError> {
        self.expect(b'(')?;
        self.skip_ws();
        let mut bits = Vec::new();
        while let Some(&b) = self.src.get(self.pos) {
            match b {
                b'0' => {
                    bits.push(false);
                    self.pos += 1;
                }
                b'1' => {
                    bits.push(true);
                    self.pos += 1;
                }
                _ => break,
            }
        }
        self.skip_ws();
        if self.src.get(self.pos) != Some(&b';') {
            return Err(self.error(self.pos, "malformed preperiod bits: expected 0s, 1s, then ';'"));
        }
        self.pos += 1;
        let period_at = self.pos;
        let period = self.parse_nat()?;
        if period == 0 {
            return Err(self.error(period_at, "period must be at least 1"));
        }
        self.expect(b';')?;
        let pattern_at = self.pos;
        let pattern = self.parse_nat_list()?;
        if let Some(&r) = pattern.iter().find(|&&r| r >= period) {
            return Err(self.error(pattern_at, format!("residue {r} is not below period {period}")));
        }
        self.expect(b')')?;
        let _ = start;
        Ok(SetExpr::Periodic { bits, period, pattern })
    }
}

/// Parses a set expression; errors carry line and column.
pub fn parse(text: &str) -> Result<SetExpr, ParseError> {
    let mut p = Parser::new(text);
    let e = p.parse_union()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error(p.pos, "unexpected trailing input"));
    }
    Ok(e)
}

// Printing: `&` over `|`, translates over both; parentheses restore any
// other shape, so printing and reparsing is structurally the identity.
fn rank(e: &SetExpr) -> u8 {
    match e {
        SetExpr::Union(..) => 0,
        SetExpr::Intersect(..) => 1,
        SetExpr::Translate(..) => 2,
        _ => 3,
    }
}

fn fmt_prec(e: &SetExpr, min: u8, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
    let need_parens = rank(e) < min;
    if need_parens {
        write!(f, "(")?;
    }
    match e {
        SetExpr::Literal(elems) => {
            write!(f, "{{")?;
            for (i, x) in elems.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        SetExpr::Periodic { bits, period, pattern } => {
            write!(f, "up(")?;
            for &b in bits {
                write!(f, "{}", if b { '1' } else { '0' })?;
            }
            write!(f, ";{period};")?;
            for (i, r) in pattern.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{r}")?;
            }
            write!(f, ")")?;
        }
        SetExpr::Named(NamedSet::Evens) => write!(f, "evens")?,
        SetExpr::Named(NamedSet::Odds) => write!(f, "odds")?,
        SetExpr::Named(NamedSet::Naturals) => write!(f, "nat")?,
        SetExpr::Translate(inner, k) => {
            fmt_prec(inner, 3, f)?;
            write!(f, " + {k}")?;
        }
        SetExpr::Union(l, r) => {
            fmt_prec(l, 0, f)?;
            write!(f, " | ")?;
            fmt_prec(r, 1, f)?;
        }
        SetExpr::Intersect(l, r) => {
            fmt_prec(l, 1, f)?;
            write!(f, " & ")?;
            fmt_prec(r, 2, f)?;
        }
        SetExpr::ShiftIntersect(inner, shifts) => {
            write!(f, "shift(")?;
            fmt_prec(inner, 0, f)?;
            write!(f, ";")?;
            for (i, t) in shifts.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{t}")?;
            }
            write!(f, ")")?;
        }
        SetExpr::DiffSet(inner) => {
            write!(f, "diff(")?;
            fmt_prec(inner, 0, f)?;
            write!(f, ")")?;
        }
    }
    if need_parens {
        write!(f, ")")?;
    }
    Ok(())
}

impl std::fmt::Display for SetExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt_prec(self, 0, f)
    }
}

/// Largest translate or shift offset the evaluator accepts; ultimately
/// periodic translates materialize `k` preperiod bits.
pub const MAX_OFFSET: u64 = 1 << 20;
/// Largest input period; combining sets multiplies periods, and the
/// canonicalizer walks them.
pub const MAX_PERIOD: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    Set(SetError),
    OffsetTooLarge { offset: u64 },
    PeriodTooLarge { period: u64 },
}

impl std::fmt::Display for EvalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvalError::Set(e) => write!(f, "{e}"),
            EvalError::OffsetTooLarge { offset } => {
                write!(f, "offset {offset} exceeds the evaluator limit {MAX_OFFSET}")
            }
            EvalError::PeriodTooLarge { period } => {
                write!(f, "period {period} exceeds the evaluator limit {MAX_PERIOD}")
            }
        }
    }
}

impl std::error::Error for EvalError {}

impl From<SetError> for EvalError {
    fn from(e: SetError) -> Self {
        EvalError::Set(e)
    }
}

/// Evaluates an expression to a ground set.
///
/// Every atom of the current grammar is exact, so results are exact and
/// `horizon` only bounds the windows of operations that would become
/// horizon-limited on sampled operands (the difference set). The only
/// errors beyond malformed sets are resource limits on offsets and
/// periods.
pub fn eval(e: &SetExpr, horizon: u64) -> Result<GroundSet, EvalError> {
    Ok(match e {
        SetExpr::Literal(elems) => GroundSet::finite(elems.clone()),
        SetExpr::Periodic { bits, period, pattern } => {
            if *period > MAX_PERIOD {
                return Err(EvalError::PeriodTooLarge { period: *period });
            }
            GroundSet::periodic(bits.clone(), *period, pattern.iter().copied())?.normalize()
        }
        SetExpr::Named(NamedSet::Evens) => GroundSet::evens(),
        SetExpr::Named(NamedSet::Odds) => GroundSet::odds(),
        SetExpr::Named(NamedSet::Naturals) => GroundSet::naturals(),
        SetExpr::Translate(inner, k) => {
            if *k > MAX_OFFSET {
                return Err(EvalError::OffsetTooLarge { offset: *k });
            }
            eval(inner, horizon)?.translate(*k)
        }
        SetExpr::Union(l, r) => eval(l, horizon)?.union(&eval(r, horizon)?),
        SetExpr::Intersect(l, r) => eval(l, horizon)?.intersect(&eval(r, horizon)?),
        SetExpr::ShiftIntersect(inner, shifts) => {
            if let Some(&t) = shifts.iter().find(|&&t| t > MAX_OFFSET) {
                return Err(EvalError::OffsetTooLarge { offset: t });
            }
            eval(inner, horizon)?.shift_down_intersect(&FiniteSet::new(shifts.clone()))?
        }
        SetExpr::DiffSet(inner) => eval(inner, horizon)?.difference_set(horizon),
    })
}
