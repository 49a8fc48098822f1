//! Parsers for the line-oriented tower description format, subfield
//! presentations, infix polynomial expressions, and basis specifications,
//! plus the inverse renderer used by round-trip tests.
//!
//! Expression grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('-' | '+')* power
//! power  := atom ('^' INT)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//!
//! Division requires a divisor free of the indeterminate (so rational
//! literals `p/q` and coefficient quotients work, but polynomial division
//! is rejected). `X` is reserved for the query indeterminate and cannot be
//! declared as a variable or generator symbol.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{BuildError, ParseError, QueryError};
use crate::rational::Rational;
use crate::tower::basis::{basis_label, NiceBasis};
use crate::tower::subfield::SubfieldSpec;
use crate::tower::{FieldTower, TowerElement};
use crate::unipoly::UniPoly;

/// Input-layer error. Syntax problems carry positions; mathematical
/// problems with otherwise well-formed input (reducible minimal polynomial,
/// embedding images violating relations) carry engine detail. The CLI maps
/// the classes to distinct exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum InputError {
    Parse(ParseError),
    Build(BuildError),
    Query(QueryError),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Parse(e) => write!(f, "{e}"),
            InputError::Build(e) => write!(f, "{e}"),
            InputError::Query(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for InputError {}

impl From<ParseError> for InputError {
    fn from(e: ParseError) -> Self {
        InputError::Parse(e)
    }
}

impl From<BuildError> for InputError {
    fn from(e: BuildError) -> Self {
        InputError::Build(e)
    }
}

impl From<QueryError> for InputError {
    fn from(e: QueryError) -> Self {
        InputError::Query(e)
    }
}

// ---------------------------------------------------------------- lexer ----

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Colon,
    Semi,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("`{s}`"),
            Tok::Plus => "`+`".to_string(),
            Tok::Minus => "`-`".to_string(),
            Tok::Star => "`*`".to_string(),
            Tok::Slash => "`/`".to_string(),
            Tok::Caret => "`^`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
            Tok::Comma => "`,`".to_string(),
            Tok::Colon => "`:`".to_string(),
            Tok::Semi => "`;`".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, expected: Vec<String>, found: String) -> ParseError {
    ParseError {
        line,
        col,
        expected,
        found,
    }
}

/// Lexes one source line. The `#` character starts a comment running to the
/// end of the line. `col_offset` shifts reported columns (used when a
/// leading delimiter was stripped before lexing).
fn lex_line(line: &str, line_no: usize, col_offset: usize) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1 + col_offset;
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
            }
            '+' => {
                out.push(Lexed { tok: Tok::Plus, line: line_no, col });
                i += 1;
            }
            '-' => {
                out.push(Lexed { tok: Tok::Minus, line: line_no, col });
                i += 1;
            }
            '*' => {
                out.push(Lexed { tok: Tok::Star, line: line_no, col });
                i += 1;
            }
            '/' => {
                out.push(Lexed { tok: Tok::Slash, line: line_no, col });
                i += 1;
            }
            '^' => {
                out.push(Lexed { tok: Tok::Caret, line: line_no, col });
                i += 1;
            }
            '(' => {
                out.push(Lexed { tok: Tok::LParen, line: line_no, col });
                i += 1;
            }
            ')' => {
                out.push(Lexed { tok: Tok::RParen, line: line_no, col });
                i += 1;
            }
            ',' => {
                out.push(Lexed { tok: Tok::Comma, line: line_no, col });
                i += 1;
            }
            ':' => {
                out.push(Lexed { tok: Tok::Colon, line: line_no, col });
                i += 1;
            }
            ';' => {
                out.push(Lexed { tok: Tok::Semi, line: line_no, col });
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Lexed { tok: Tok::Int(text), line: line_no, col });
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Lexed { tok: Tok::Ident(text), line: line_no, col });
            }
            other => {
                return Err(err(
                    line_no,
                    col,
                    vec!["valid token".to_string()],
                    format!("`{other}`"),
                ));
            }
        }
    }
    Ok(out)
}

/// Lexes a possibly multi-line snippet; every line contributes tokens.
fn lex_text(text: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        out.extend(lex_line(line, idx + 1, 0)?);
    }
    Ok(out)
}

// ----------------------------------------------------- expression parser ----

/// Exponents above this are rejected to keep memory bounded.
const MAX_EXPONENT: usize = 4096;

struct ExprParser<'a> {
    toks: &'a [Lexed],
    pos: usize,
    tower: &'a FieldTower,
    /// Symbol treated as the polynomial indeterminate, if any.
    active: Option<&'a str>,
    /// Position reported for unexpected end of input.
    end: (usize, usize),
}

impl<'a> ExprParser<'a> {
    fn new(toks: &'a [Lexed], tower: &'a FieldTower, active: Option<&'a str>) -> Self {
        let end = toks
            .last()
            .map(|t| (t.line, t.col + 1))
            .unwrap_or((1, 1));
        ExprParser { toks, pos: 0, tower, active, end }
    }

    fn peek(&self) -> Option<&Lexed> {
        self.toks.get(self.pos)
    }

    fn eof_err(&self, expected: Vec<String>) -> ParseError {
        err(self.end.0, self.end.1, expected, "end of input".to_string())
    }

    fn parse_all(mut self) -> Result<UniPoly<TowerElement>, ParseError> {
        let p = self.expr()?;
        if let Some(t) = self.peek() {
            return Err(err(
                t.line,
                t.col,
                vec!["operator".to_string(), "end of input".to_string()],
                t.tok.describe(),
            ));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<UniPoly<TowerElement>, ParseError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t.tok {
                Tok::Plus => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<UniPoly<TowerElement>, ParseError> {
        let mut acc = self.factor()?;
        while let Some(t) = self.peek() {
            match t.tok {
                Tok::Star => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    let (line, col) = (t.line, t.col);
                    self.pos += 1;
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(err(
                            line,
                            col,
                            vec!["nonzero divisor".to_string()],
                            "zero".to_string(),
                        ));
                    }
                    if rhs.degree() > 0 {
                        return Err(err(
                            line,
                            col,
                            vec!["divisor free of the indeterminate".to_string()],
                            format!("polynomial of degree {}", rhs.degree()),
                        ));
                    }
                    let c = rhs.coeff(0);
                    let inv = c.inv().map_err(|_| {
                        err(
                            line,
                            col,
                            vec!["nonzero divisor".to_string()],
                            "zero".to_string(),
                        )
                    })?;
                    acc = acc.mul_scalar(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<UniPoly<TowerElement>, ParseError> {
        let mut negate = false;
        loop {
            match self.peek().map(|t| &t.tok) {
                Some(Tok::Minus) => {
                    negate = !negate;
                    self.pos += 1;
                }
                Some(Tok::Plus) => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let p = self.power()?;
        Ok(if negate { p.neg() } else { p })
    }

    fn power(&mut self) -> Result<UniPoly<TowerElement>, ParseError> {
        let base = self.atom()?;
        if let Some(t) = self.peek() {
            if t.tok == Tok::Caret {
                self.pos += 1;
                let e = match self.peek() {
                    Some(Lexed { tok: Tok::Int(s), line, col }) => {
                        let (line, col) = (*line, *col);
                        let v: usize = s.parse().map_err(|_| {
                            err(
                                line,
                                col,
                                vec!["nonnegative integer exponent".to_string()],
                                format!("`{s}`"),
                            )
                        })?;
                        if v > MAX_EXPONENT {
                            return Err(err(
                                line,
                                col,
                                vec![format!("exponent at most {MAX_EXPONENT}")],
                                format!("`{s}`"),
                            ));
                        }
                        self.pos += 1;
                        v
                    }
                    Some(t) => {
                        return Err(err(
                            t.line,
                            t.col,
                            vec!["nonnegative integer exponent".to_string()],
                            t.tok.describe(),
                        ));
                    }
                    None => {
                        return Err(
                            self.eof_err(vec!["nonnegative integer exponent".to_string()])
                        );
                    }
                };
                return Ok(base.pow(e as u32));
            }
        }
        Ok(base)
    }

    fn known_symbols(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        if let Some(a) = self.active {
            names.push(format!("`{a}`"));
        }
        for v in self.tower.delta().names() {
            names.push(format!("`{v}`"));
        }
        for g in self.tower.gen_symbols() {
            names.push(format!("`{g}`"));
        }
        if names.is_empty() {
            names.push("rational constant".to_string());
        }
        names
    }

    fn atom(&mut self) -> Result<UniPoly<TowerElement>, ParseError> {
        let expected = || {
            let mut e = vec!["expression".to_string()];
            e.push("`(`".to_string());
            e
        };
        let t = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.eof_err(expected())),
        };
        match &t.tok {
            Tok::Int(s) => {
                self.pos += 1;
                let n = BigInt::from_str(s).map_err(|_| {
                    err(
                        t.line,
                        t.col,
                        vec!["integer".to_string()],
                        format!("`{s}`"),
                    )
                })?;
                let r = Rational::new(n, BigInt::one()).map_err(|_| {
                    err(
                        t.line,
                        t.col,
                        vec!["integer".to_string()],
                        format!("`{s}`"),
                    )
                })?;
                Ok(UniPoly::constant(self.tower.from_rational(r)))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                if self.active == Some(name.as_str()) {
                    return Ok(UniPoly::x(&self.tower.one()));
                }
                if let Some(i) = self.tower.delta().index_of(name) {
                    return Ok(UniPoly::constant(self.tower.var(i)));
                }
                if let Some(i) = self
                    .tower
                    .gen_symbols()
                    .iter()
                    .position(|g| *g == name.as_str())
                {
                    return Ok(UniPoly::constant(self.tower.gen(i)));
                }
                Err(err(
                    t.line,
                    t.col,
                    self.known_symbols(),
                    format!("`{name}`"),
                ))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(t2) if t2.tok == Tok::RParen => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(t2) => Err(err(
                        t2.line,
                        t2.col,
                        vec!["`)`".to_string()],
                        t2.tok.describe(),
                    )),
                    None => Err(self.eof_err(vec!["`)`".to_string()])),
                }
            }
            other => Err(err(t.line, t.col, expected(), other.describe())),
        }
    }
}

/// Parses an infix polynomial expression over the tower in the reserved
/// indeterminate `X`.
pub fn parse_poly(
    text: &str,
    tower: &FieldTower,
) -> Result<UniPoly<TowerElement>, ParseError> {
    let toks = lex_text(text)?;
    ExprParser::new(&toks, tower, Some("X")).parse_all()
}

/// Parses an expression that must denote a single tower element (no
/// indeterminate available).
pub fn parse_element(text: &str, tower: &FieldTower) -> Result<TowerElement, ParseError> {
    let toks = lex_text(text)?;
    let p = ExprParser::new(&toks, tower, None).parse_all()?;
    poly_as_element(p, tower)
}

fn poly_as_element(
    p: UniPoly<TowerElement>,
    tower: &FieldTower,
) -> Result<TowerElement, ParseError> {
    if p.is_zero() {
        return Ok(tower.zero());
    }
    // With no indeterminate in scope the result is always constant; the
    // guard protects against future grammar extensions.
    if p.degree() > 0 {
        return Err(err(
            1,
            1,
            vec!["constant expression".to_string()],
            format!("polynomial of degree {}", p.degree()),
        ));
    }
    Ok(p.coeff(0))
}

// ------------------------------------------------------------ file parser ----

/// Reserved indeterminate: declaring it as a symbol is always an error.
const RESERVED: &str = "X";

fn check_symbol(name: &str, line: usize, col: usize) -> Result<(), ParseError> {
    if name == RESERVED {
        return Err(err(
            line,
            col,
            vec![format!("symbol other than reserved `{RESERVED}`")],
            format!("`{name}`"),
        ));
    }
    Ok(())
}

struct Presentation {
    tower: FieldTower,
    embeds: Vec<(String, TowerElement, usize, usize)>,
}

/// Shared engine for tower files and subfield files. `ambient` enables
/// `embed` directives, whose expressions are read over the ambient tower.
fn parse_presentation(
    text: &str,
    ambient: Option<&FieldTower>,
) -> Result<Presentation, InputError> {
    let mut saw_field = false;
    let mut delta: Vec<String> = Vec::new();
    let mut tower: Option<FieldTower> = None;
    let mut embeds: Vec<(String, TowerElement, usize, usize)> = Vec::new();
    let mut directives = vec!["`field`".to_string()];

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks = lex_line(raw, line_no, 0)?;
        if toks.is_empty() {
            continue;
        }
        let head = &toks[0];
        let word = match &head.tok {
            Tok::Ident(w) => w.clone(),
            other => {
                return Err(err(
                    line_no,
                    head.col,
                    directives.clone(),
                    other.describe(),
                )
                .into());
            }
        };
        if !saw_field && word != "field" {
            return Err(err(
                line_no,
                head.col,
                vec!["`field Q` as the first directive".to_string()],
                format!("`{word}`"),
            )
            .into());
        }
        match word.as_str() {
            "field" => {
                if saw_field {
                    return Err(err(
                        line_no,
                        head.col,
                        directives.clone(),
                        "`field`".to_string(),
                    )
                    .into());
                }
                match toks.get(1).map(|t| &t.tok) {
                    Some(Tok::Ident(name)) if name == "Q" => {}
                    Some(other) => {
                        let t = &toks[1];
                        return Err(err(
                            line_no,
                            t.col,
                            vec!["`Q`".to_string()],
                            other.describe(),
                        )
                        .into());
                    }
                    None => {
                        return Err(err(
                            line_no,
                            head.col + 5,
                            vec!["`Q`".to_string()],
                            "end of line".to_string(),
                        )
                        .into());
                    }
                }
                if let Some(extra) = toks.get(2) {
                    return Err(err(
                        line_no,
                        extra.col,
                        vec!["end of line".to_string()],
                        extra.tok.describe(),
                    )
                    .into());
                }
                saw_field = true;
                directives = vec!["`var`".to_string(), "`gen`".to_string()];
                if ambient.is_some() {
                    directives.push("`embed`".to_string());
                }
            }
            "var" => {
                if tower.is_some() {
                    let mut exp = vec!["`gen`".to_string()];
                    if ambient.is_some() {
                        exp.push("`embed`".to_string());
                    }
                    return Err(err(line_no, head.col, exp, "`var`".to_string()).into());
                }
                let mut i = 1;
                loop {
                    match toks.get(i) {
                        Some(Lexed { tok: Tok::Ident(name), line, col }) => {
                            check_symbol(name, *line, *col)?;
                            delta.push(name.clone());
                            i += 1;
                        }
                        Some(t) => {
                            return Err(err(
                                t.line,
                                t.col,
                                vec!["symbol".to_string()],
                                t.tok.describe(),
                            )
                            .into());
                        }
                        None => {
                            return Err(err(
                                line_no,
                                head.col + 4,
                                vec!["symbol".to_string()],
                                "end of line".to_string(),
                            )
                            .into());
                        }
                    }
                    match toks.get(i) {
                        Some(Lexed { tok: Tok::Comma, .. }) => {
                            i += 1;
                        }
                        Some(t) => {
                            return Err(err(
                                t.line,
                                t.col,
                                vec!["`,`".to_string(), "end of line".to_string()],
                                t.tok.describe(),
                            )
                            .into());
                        }
                        None => break,
                    }
                }
            }
            "gen" => {
                if !embeds.is_empty() {
                    return Err(err(
                        line_no,
                        head.col,
                        vec!["`embed`".to_string()],
                        "`gen`".to_string(),
                    )
                    .into());
                }
                let (sym, rest) = directive_symbol_colon(&toks, line_no, head.col + 3)?;
                check_symbol(&sym.0, sym.1, sym.2)?;
                let base = match &tower {
                    Some(t) => t.clone(),
                    None => FieldTower::rational(delta.clone())?,
                };
                if rest.is_empty() {
                    return Err(err(
                        line_no,
                        raw.chars().count() + 1,
                        vec!["polynomial expression".to_string()],
                        "end of line".to_string(),
                    )
                    .into());
                }
                let poly = ExprParser::new(rest, &base, Some(&sym.0)).parse_all()?;
                tower = Some(base.extend(&sym.0, &poly)?);
            }
            "embed" if ambient.is_some() => {
                if tower.is_none() {
                    tower = Some(FieldTower::rational(delta.clone())?);
                }
                let amb = ambient.expect("guarded by match arm");
                let (sym, rest) = directive_symbol_colon(&toks, line_no, head.col + 5)?;
                if rest.is_empty() {
                    return Err(err(
                        line_no,
                        raw.chars().count() + 1,
                        vec!["element expression".to_string()],
                        "end of line".to_string(),
                    )
                    .into());
                }
                let p = ExprParser::new(rest, amb, None).parse_all()?;
                let elem = poly_as_element(p, amb)?;
                embeds.push((sym.0, elem, sym.1, sym.2));
            }
            other => {
                return Err(err(
                    line_no,
                    head.col,
                    directives.clone(),
                    format!("`{other}`"),
                )
                .into());
            }
        }
    }

    if !saw_field {
        return Err(err(
            1,
            1,
            vec!["`field Q`".to_string()],
            "end of input".to_string(),
        )
        .into());
    }
    let tower = match tower {
        Some(t) => t,
        None => FieldTower::rational(delta)?,
    };
    Ok(Presentation { tower, embeds })
}

/// Splits `gen a : <rest>` / `embed u : <rest>` after the directive word:
/// returns the symbol (with its position) and the token slice after `:`.
fn directive_symbol_colon<'a>(
    toks: &'a [Lexed],
    line_no: usize,
    after_head_col: usize,
) -> Result<((String, usize, usize), &'a [Lexed]), ParseError> {
    let sym = match toks.get(1) {
        Some(Lexed { tok: Tok::Ident(name), line, col }) => (name.clone(), *line, *col),
        Some(t) => {
            return Err(err(
                t.line,
                t.col,
                vec!["symbol".to_string()],
                t.tok.describe(),
            ));
        }
        None => {
            return Err(err(
                line_no,
                after_head_col + 1,
                vec!["symbol".to_string()],
                "end of line".to_string(),
            ));
        }
    };
    match toks.get(2) {
        Some(Lexed { tok: Tok::Colon, .. }) => {}
        Some(t) => {
            return Err(err(
                t.line,
                t.col,
                vec!["`:`".to_string()],
                t.tok.describe(),
            ));
        }
        None => {
            return Err(err(
                line_no,
                sym.2 + sym.0.chars().count(),
                vec!["`:`".to_string()],
                "end of line".to_string(),
            ));
        }
    }
    Ok((sym, &toks[3..]))
}

/// Parses a tower description:
///
/// ```text
/// field Q
/// var s, t
/// gen a : a^2 - 2
/// ```
///
/// Minimal polynomials are validated (monic, correct symbol usage,
/// irreducible over the tower below).
pub fn parse_tower_source(text: &str) -> Result<FieldTower, InputError> {
    let p = parse_presentation(text, None)?;
    debug_assert!(p.embeds.is_empty());
    Ok(p.tower)
}

/// Parses a subfield presentation over an ambient tower: the same grammar
/// as tower descriptions plus one `embed <sym> : <expr>` line per subfield
/// symbol, with expressions read over the ambient tower.
pub fn parse_subfield_source(
    text: &str,
    ambient: &FieldTower,
) -> Result<SubfieldSpec, InputError> {
    let p = parse_presentation(text, Some(ambient))?;
    let mut by_symbol: BTreeMap<String, (TowerElement, usize, usize)> = BTreeMap::new();
    let mut known: Vec<String> = p.tower.delta().names().to_vec();
    known.extend(p.tower.gen_symbols().iter().map(|s| s.to_string()));
    let total_lines = text.lines().count().max(1);
    for (sym, elem, line, col) in p.embeds {
        if !known.iter().any(|k| *k == sym) {
            return Err(err(
                line,
                col,
                known.iter().map(|k| format!("`{k}`")).collect(),
                format!("`{sym}`"),
            )
            .into());
        }
        if by_symbol.insert(sym.clone(), (elem, line, col)).is_some() {
            return Err(err(
                line,
                col,
                vec!["a single `embed` line per symbol".to_string()],
                format!("second `embed {sym}`"),
            )
            .into());
        }
    }
    let mut delta_images = Vec::new();
    for v in p.tower.delta().names() {
        match by_symbol.remove(v) {
            Some((e, _, _)) => delta_images.push(e),
            None => {
                return Err(err(
                    total_lines,
                    1,
                    vec![format!("`embed {v} : <expr>`")],
                    "end of input".to_string(),
                )
                .into());
            }
        }
    }
    let mut gen_images = Vec::new();
    for g in p.tower.gen_symbols() {
        match by_symbol.remove(g) {
            Some((e, _, _)) => gen_images.push(e),
            None => {
                return Err(err(
                    total_lines,
                    1,
                    vec![format!("`embed {g} : <expr>`")],
                    "end of input".to_string(),
                )
                .into());
            }
        }
    }
    Ok(SubfieldSpec::new(
        p.tower,
        delta_images,
        gen_images,
        ambient.clone(),
    )?)
}

// ------------------------------------------------------------- basis spec ----

/// Parses a basis specification `"Δ′ ; A"`: two `;`-separated lists of
/// comma-separated element expressions over the tower (optionally wrapped
/// in `<` `>`). Either list may be empty.
pub fn parse_basis_spec(text: &str, tower: &FieldTower) -> Result<NiceBasis, ParseError> {
    let trimmed = text.trim();
    let (inner, offset) = if trimmed.starts_with('<') && trimmed.ends_with('>') && trimmed.len() >= 2
    {
        let start = text.find('<').expect("checked prefix");
        (&trimmed[1..trimmed.len() - 1], start + 1)
    } else {
        let start = text.len() - text.trim_start().len();
        (trimmed, start)
    };
    let toks = lex_line(inner, 1, offset)?;
    let semi = toks.iter().position(|t| t.tok == Tok::Semi).ok_or_else(|| {
        err(
            1,
            offset + inner.chars().count() + 1,
            vec!["`;` separating the transcendence part from the linear part".to_string()],
            "end of input".to_string(),
        )
    })?;
    let delta_prime = parse_element_list(&toks[..semi], tower)?;
    let a_list = parse_element_list(&toks[semi + 1..], tower)?;
    let label = basis_label(&delta_prime);
    Ok(NiceBasis { delta_prime, a_list, label })
}

fn parse_element_list(
    toks: &[Lexed],
    tower: &FieldTower,
) -> Result<Vec<TowerElement>, ParseError> {
    if toks.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    loop {
        if i == toks.len() || toks[i].tok == Tok::Comma {
            let group = &toks[start..i];
            if group.is_empty() {
                let (line, col) = if i < toks.len() {
                    (toks[i].line, toks[i].col)
                } else if let Some(last) = toks.last() {
                    (last.line, last.col + 1)
                } else {
                    (1, 1)
                };
                return Err(err(
                    line,
                    col,
                    vec!["element expression".to_string()],
                    if i < toks.len() {
                        "`,`".to_string()
                    } else {
                        "end of input".to_string()
                    },
                ));
            }
            let p = ExprParser::new(group, tower, None).parse_all()?;
            out.push(poly_as_element(p, tower)?);
            if i == toks.len() {
                break;
            }
            start = i + 1;
        }
        if i == toks.len() {
            break;
        }
        i += 1;
    }
    Ok(out)
}

// --------------------------------------------------------------- renderer ----

/// Renders a tower back into the description format; parsing the result
/// yields an equal tower.
pub fn render_tower_source(tower: &FieldTower) -> String {
    let mut out = String::from("field Q\n");
    let vars = tower.delta().names();
    if !vars.is_empty() {
        out.push_str("var ");
        out.push_str(&vars.join(", "));
        out.push('\n');
    }
    for i in 0..tower.num_gens() {
        let sym = tower.gen_info(i).symbol().to_string();
        let mp = tower.minpoly_lifted(i);
        out.push_str("gen ");
        out.push_str(&sym);
        out.push_str(" : ");
        out.push_str(&mp.render(&sym));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::subfield::degree_over_subfield;

    fn tower_qt_sqrt2() -> FieldTower {
        parse_tower_source("field Q\nvar t\ngen a : a^2 - 2").expect("valid tower")
    }

    #[test]
    fn parses_simple_tower() {
        let t = tower_qt_sqrt2();
        assert_eq!(t.delta().names(), &["t".to_string()]);
        assert_eq!(t.gen_symbols(), vec!["a"]);
        assert_eq!(t.degree(), 2);
    }

    #[test]
    fn reducible_minpoly_is_a_build_error() {
        let e = parse_tower_source("field Q\nvar t\ngen a : a^2 - 4").unwrap_err();
        match e {
            InputError::Build(BuildError::ReducibleMinPoly { symbol, .. }) => {
                assert_eq!(symbol, "a");
            }
            other => panic!("expected ReducibleMinPoly, got {other}"),
        }
    }

    #[test]
    fn poly_in_reserved_indeterminate() {
        let t = parse_tower_source("field Q\nvar t").unwrap();
        let p = parse_poly("X^3 + X - (t^3 + t)", &t).unwrap();
        assert_eq!(p.degree(), 3);
        // Built by hand: X^3 + X - (t^3 + t).
        let tt = t.var(0);
        let c0 = tt.pow(3).add(&tt).unwrap().neg();
        let expect = UniPoly::from_coeffs(vec![c0, t.one(), t.zero(), t.one()]);
        assert_eq!(p, expect);
    }

    #[test]
    fn expression_precedence_and_rationals() {
        let t = parse_tower_source("field Q\nvar t").unwrap();
        // 3/2*t parses as (3/2)*t; -t^2 as -(t^2); 2^10 as 1024.
        let a = parse_element("3/2*t", &t).unwrap();
        let b = t.var(0).mul_rational(&Rational::new(3.into(), 2.into()).unwrap());
        assert_eq!(a, b);
        let c = parse_element("-t^2 + 2^10", &t).unwrap();
        let d = t
            .var(0)
            .pow(2)
            .neg()
            .add(&t.from_rational(Rational::from_int(1024)))
            .unwrap();
        assert_eq!(c, d);
        // 1/t is a quotient of constants (degree 0 in the indeterminate).
        let e = parse_element("1/t", &t).unwrap();
        assert_eq!(e, t.var(0).inv().unwrap());
    }

    #[test]
    fn division_rules() {
        let t = parse_tower_source("field Q\nvar t").unwrap();
        let e = parse_poly("1/(t - t)", &t).unwrap_err();
        assert_eq!(e.expected, vec!["nonzero divisor".to_string()]);
        let e = parse_poly("1/X", &t).unwrap_err();
        assert_eq!(
            e.expected,
            vec!["divisor free of the indeterminate".to_string()]
        );
        let e = parse_poly("t^-2", &t).unwrap_err();
        assert_eq!(e.expected, vec!["nonnegative integer exponent".to_string()]);
    }

    #[test]
    fn error_positions_are_reported() {
        let e = parse_tower_source("field Q\nvar t\ngen a : a^^2").unwrap_err();
        match e {
            InputError::Parse(p) => {
                assert_eq!(p.line, 3);
                assert_eq!(p.col, 11);
                assert_eq!(p.found, "`^`");
            }
            other => panic!("expected parse error, got {other}"),
        }
        let e = parse_tower_source("vaar t").unwrap_err();
        match e {
            InputError::Parse(p) => {
                assert_eq!(p.line, 1);
                assert_eq!(p.found, "`vaar`");
            }
            other => panic!("expected parse error, got {other}"),
        }
        let e = parse_tower_source("# empty\n").unwrap_err();
        match e {
            InputError::Parse(p) => assert_eq!(p.found, "end of input"),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn reserved_symbol_rejected_in_declarations() {
        let e = parse_tower_source("field Q\nvar X").unwrap_err();
        match e {
            InputError::Parse(p) => assert_eq!(p.found, "`X`"),
            other => panic!("expected parse error, got {other}"),
        }
        let e = parse_tower_source("field Q\ngen X : X^2 - 2").unwrap_err();
        assert!(matches!(e, InputError::Parse(_)));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let src = "# header\nfield Q  # trailing\n\nvar t\n# middle\ngen a : a^2 - 2\n";
        let t = parse_tower_source(src).unwrap();
        assert_eq!(t.degree(), 2);
    }

    #[test]
    fn round_trips_through_render() {
        let sources = [
            "field Q",
            "field Q\nvar t",
            "field Q\nvar t\ngen a : a^2 - 2\ngen b : b^2 - t",
            "field Q\nvar s, t\ngen a : a^2 - s*t",
            "field Q\ngen a : a^2 - 2\ngen b : b^2 - a",
            "field Q\nvar t\ngen a : a^3 - t^2 - 1/2",
        ];
        for src in sources {
            let t1 = parse_tower_source(src).expect(src);
            let rendered = render_tower_source(&t1);
            let t2 = parse_tower_source(&rendered)
                .unwrap_or_else(|e| panic!("re-parse of {rendered:?} failed: {e}"));
            assert_eq!(t1, t2, "round trip changed the tower for {src}");
        }
    }

    #[test]
    fn subfield_presentation_with_embedding() {
        let ambient = parse_tower_source("field Q\nvar t").unwrap();
        let sub =
            parse_subfield_source("field Q\nvar u\nembed u : t^3 + t", &ambient).unwrap();
        assert!(sub.is_complete());
        assert_eq!(degree_over_subfield(&sub).unwrap(), 3);
        // Missing embed line.
        let e = parse_subfield_source("field Q\nvar u", &ambient).unwrap_err();
        match e {
            InputError::Parse(p) => {
                assert_eq!(p.expected, vec!["`embed u : <expr>`".to_string()]);
            }
            other => panic!("expected parse error, got {other}"),
        }
        // Embedding image violating a relation is a mathematical error.
        let bad = parse_subfield_source(
            "field Q\ngen c : c^2 - 2\nembed c : t",
            &ambient,
        )
        .unwrap_err();
        assert!(matches!(bad, InputError::Query(_) | InputError::Build(_)));
    }

    #[test]
    fn basis_specs() {
        let t = tower_qt_sqrt2();
        let b = parse_basis_spec("t; 1, a", &t).unwrap();
        assert_eq!(b.label, "{t}");
        assert_eq!(b.delta_prime, vec![t.var(0)]);
        assert_eq!(b.a_list, vec![t.one(), t.gen(0)]);
        let b2 = parse_basis_spec("<t; 1, a>", &t).unwrap();
        assert_eq!(b2.label, b.label);
        assert_eq!(b2.a_list, b.a_list);
        let e = parse_basis_spec("t", &t).unwrap_err();
        assert!(e.expected[0].contains("`;`"));
        let empty = parse_basis_spec(";", &t).unwrap();
        assert!(empty.delta_prime.is_empty());
        assert!(empty.a_list.is_empty());
        let e = parse_basis_spec("t; 1,, a", &t).unwrap_err();
        assert_eq!(e.expected, vec!["element expression".to_string()]);
    }
}
