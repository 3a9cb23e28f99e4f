//! Line-oriented text format for presentations.
//!
//! ```text
//! field Q                     # or: field GF 5
//! gens x y
//! power y 2 = 0
//! swap y x : sigma = 2*x, theta = 0
//! leftswap x y : sigma = 1/2*x
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::poly::{Monomial, NCPoly};
use super::presentation::{OrePresentation, PowerRule, SwapRule};
use super::PresentationError;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> PresentationError {
    PresentationError::SyntaxError { line, column, message: message.into() }
}

fn tokenize(line_no: usize, line: &str) -> Result<Vec<Token>, PresentationError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..k].iter().collect()), col });
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            out.push(Token { tok: Tok::Number(chars[start..k].iter().collect()), col });
        } else if "*^+-=:,/".contains(c) || c == '\u{2212}' {
            let c = if c == '\u{2212}' { '-' } else { c };
            out.push(Token { tok: Tok::Sym(c), col });
            k += 1;
        } else {
            return Err(syntax(line_no, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn err(&self, message: impl Into<String>) -> PresentationError {
        syntax(self.line, self.col(), message)
    }

    fn ident(&mut self, what: &str) -> Result<&'a str, PresentationError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn number(&mut self, what: &str) -> Result<&'a str, PresentationError> {
        match self.peek() {
            Some(Tok::Number(s)) => {
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn sym(&mut self, c: char) -> Result<(), PresentationError> {
        match self.peek() {
            Some(Tok::Sym(d)) if *d == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected '{c}'"))),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

struct Ctx<'a> {
    field: Field,
    names: &'a [String],
}

impl Ctx<'_> {
    fn lookup(&self, line: usize, col: usize, name: &str) -> Result<usize, PresentationError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| syntax(line, col, format!("unknown generator '{name}'")))
    }

    fn gen(&self, cur: &mut Cursor<'_>) -> Result<usize, PresentationError> {
        let col = cur.col();
        let name = cur.ident("a generator")?;
        self.lookup(cur.line, col, name)
    }

    /// Parses a polynomial up to a `,` or the end of the line.
    fn poly(&self, cur: &mut Cursor<'_>) -> Result<NCPoly, PresentationError> {
        let n = self.names.len();
        let mut out = NCPoly::zero(self.field, n);
        let mut first = true;
        loop {
            let mut negative = false;
            match cur.peek() {
                Some(Tok::Sym('-')) => {
                    negative = true;
                    cur.pos += 1;
                }
                Some(Tok::Sym('+')) if !first => cur.pos += 1,
                _ if first => {}
                _ => return Err(cur.err("expected '+' or '-'")),
            }
            first = false;
            let (m, mut c) = self.term(cur)?;
            if negative {
                c = -c;
            }
            out.add_term(m, c);
            match cur.peek() {
                None | Some(Tok::Sym(',')) => return Ok(out),
                Some(Tok::Sym('+' | '-')) => {}
                _ => return Err(cur.err("expected '+', '-' or end of polynomial")),
            }
        }
    }

    fn term(&self, cur: &mut Cursor<'_>) -> Result<(Monomial, crate::scalar::Scalar), PresentationError> {
        let mut exps = vec![0u32; self.names.len()];
        let mut coeff = self.field.one();
        let mut last: Option<usize> = None;
        loop {
            match cur.peek() {
                Some(Tok::Number(num)) => {
                    let col = cur.col();
                    cur.pos += 1;
                    let mut text = num.clone();
                    if let Some(Tok::Sym('/')) = cur.peek() {
                        cur.pos += 1;
                        text.push('/');
                        text.push_str(cur.number("denominator")?);
                    }
                    let s = self.field.parse_scalar(&text).map_err(|e| syntax(cur.line, col, e.to_string()))?;
                    coeff = &coeff * &s;
                }
                Some(Tok::Ident(name)) => {
                    let col = cur.col();
                    cur.pos += 1;
                    let g = self.lookup(cur.line, col, name)?;
                    let mut e = 1u32;
                    if let Some(Tok::Sym('^')) = cur.peek() {
                        cur.pos += 1;
                        let col = cur.col();
                        e = cur.number("exponent")?.parse().map_err(|_| syntax(cur.line, col, "exponent too large"))?;
                    }
                    if last.is_some_and(|l| l > g) {
                        return Err(syntax(cur.line, col, "generators in a term must appear in generator order"));
                    }
                    last = Some(g);
                    exps[g] += e;
                }
                _ => return Err(cur.err("expected a number or a generator")),
            }
            match cur.peek() {
                Some(Tok::Sym('*')) => cur.pos += 1,
                _ => return Ok((Monomial(exps), coeff)),
            }
        }
    }
}

/// Parses the presentation text format. Pairs without a `swap` line
/// commute. A left datum is present as soon as one `leftswap` line
/// appears; missing pairs in it commute as well.
pub fn parse_presentation(text: &str) -> Result<OrePresentation, PresentationError> {
    let mut field: Option<Field> = None;
    let mut names: Option<Vec<String>> = None;
    let mut right: Vec<Vec<Option<SwapRule>>> = Vec::new();
    let mut left: Vec<Vec<Option<SwapRule>>> = Vec::new();
    let mut any_left = false;
    let mut power: Vec<Option<PowerRule>> = Vec::new();
    // line numbers of rules, for error reporting after validation
    let mut rule_lines: Vec<(usize, usize, usize)> = Vec::new();
    let mut power_lines: Vec<(usize, usize)> = Vec::new();
    let mut last_line = 0;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let toks = tokenize(line, raw)?;
        if toks.is_empty() {
            continue;
        }
        let end_col = raw.chars().count() + 1;
        let mut cur = Cursor { toks: &toks, pos: 0, line, end_col };
        let keyword = cur.ident("a keyword")?;
        match keyword {
            "field" => {
                if field.is_some() {
                    return Err(syntax(line, 1, "field declared twice"));
                }
                let col = cur.col();
                let f = match cur.ident("Q or GF")? {
                    "Q" => Field::Rationals,
                    "GF" => {
                        let col = cur.col();
                        let p: u64 =
                            cur.number("a prime")?.parse().map_err(|_| syntax(line, col, "prime too large"))?;
                        Field::prime(p).map_err(|e| syntax(line, col, e.to_string()))?
                    }
                    other => return Err(syntax(line, col, format!("unknown field '{other}'"))),
                };
                field = Some(f);
            }
            "gens" => {
                if field.is_none() {
                    return Err(syntax(line, 1, "'field' must come before 'gens'"));
                }
                if names.is_some() {
                    return Err(syntax(line, 1, "generators declared twice"));
                }
                let mut list: Vec<String> = Vec::new();
                while !cur.at_end() {
                    let col = cur.col();
                    let name = cur.ident("a generator name")?;
                    if list.iter().any(|n| n == name) {
                        return Err(syntax(line, col, format!("duplicate generator '{name}'")));
                    }
                    list.push(name.to_string());
                }
                let n = list.len();
                right = (0..n).map(|j| vec![None; j]).collect();
                left = (0..n).map(|j| vec![None; j]).collect();
                power = vec![None; n];
                names = Some(list);
            }
            "power" | "swap" | "leftswap" => {
                let (Some(f), Some(names)) = (field, names.as_ref()) else {
                    return Err(syntax(line, 1, "'field' and 'gens' must come first"));
                };
                let ctx = Ctx { field: f, names };
                if keyword == "power" {
                    let g = ctx.gen(&mut cur)?;
                    let col = cur.col();
                    let bound: u32 =
                        cur.number("a bound")?.parse().map_err(|_| syntax(line, col, "bound too large"))?;
                    cur.sym('=')?;
                    let reduction = ctx.poly(&mut cur)?;
                    if !cur.at_end() {
                        return Err(cur.err("trailing input"));
                    }
                    if power[g].is_some() {
                        return Err(syntax(line, 1, "power relation given twice"));
                    }
                    power[g] = Some(PowerRule { bound, reduction });
                    power_lines.push((g, line));
                    continue;
                }
                let a_col = cur.col();
                let a = ctx.gen(&mut cur)?;
                let b = ctx.gen(&mut cur)?;
                let (hi, lo) = if keyword == "swap" { (a, b) } else { (b, a) };
                if hi <= lo {
                    let order = if keyword == "swap" { "higher generator first" } else { "lower generator first" };
                    return Err(syntax(line, a_col, format!("{keyword} expects the {order}")));
                }
                cur.sym(':')?;
                let mut sigma = None;
                let mut theta = None;
                loop {
                    let col = cur.col();
                    let key = cur.ident("'sigma' or 'theta'")?;
                    cur.sym('=')?;
                    let poly = ctx.poly(&mut cur)?;
                    let slot = match key {
                        "sigma" => &mut sigma,
                        "theta" => &mut theta,
                        other => return Err(syntax(line, col, format!("unknown key '{other}'"))),
                    };
                    if slot.replace(poly).is_some() {
                        return Err(syntax(line, col, format!("'{key}' given twice")));
                    }
                    if cur.at_end() {
                        break;
                    }
                    cur.sym(',')?;
                }
                let sigma = sigma.ok_or_else(|| syntax(line, cur.end_col, "missing 'sigma'"))?;
                let theta = theta.unwrap_or_else(|| NCPoly::zero(f, names.len()));
                let table = if keyword == "swap" { &mut right } else { &mut left };
                if table[hi][lo].replace(SwapRule { sigma, theta }).is_some() {
                    return Err(syntax(line, 1, "rule for this pair given twice"));
                }
                any_left |= keyword == "leftswap";
                rule_lines.push((hi, lo, line));
            }
            other => return Err(syntax(line, 1, format!("unknown keyword '{other}'"))),
        }
        if !cur.at_end() {
            return Err(cur.err("trailing input"));
        }
    }

    let field = field.ok_or_else(|| syntax(last_line.max(1), 1, "missing 'field' line"))?;
    let names = names.ok_or_else(|| syntax(last_line.max(1), 1, "missing 'gens' line"))?;
    let n = names.len();
    let fill = |table: Vec<Vec<Option<SwapRule>>>| -> Vec<Vec<SwapRule>> {
        table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .map(|(i, r)| {
                        r.unwrap_or_else(|| SwapRule {
                            sigma: NCPoly::generator(field, n, i),
                            theta: NCPoly::zero(field, n),
                        })
                    })
                    .collect()
            })
            .collect()
    };
    let right = fill(right);
    let left = any_left.then(|| fill(left));
    let index = |name: &str| names.iter().position(|n| n == name);
    let line_of_rule = |hi: &str, lo: &str| {
        let (h, l) = (index(hi), index(lo));
        rule_lines.iter().find(|r| Some(r.0) == h && Some(r.1) == l).map_or(0, |r| r.2)
    };
    let line_of_power = |g: &str| power_lines.iter().find(|r| Some(r.0) == index(g)).map_or(0, |r| r.1);
    OrePresentation::new(field, names.clone(), right, left, power).map_err(|e| match e {
        PresentationError::IndexViolation { hi, lo, generator, .. } => {
            PresentationError::IndexViolation { line: line_of_rule(&hi, &lo), hi, lo, generator }
        }
        PresentationError::PowerViolation { generator, reason, .. } => {
            PresentationError::PowerViolation { line: line_of_power(&generator), generator, reason }
        }
        other => other,
    })
}

/// Parses an expression in the generators of `p` and returns its normal
/// form. Unlike presentation lines, factors may come in any order and may
/// be separated by `*` or whitespace, so `y x` and `y*x` both mean the word
/// `y·x`.
pub fn parse_expression(p: &OrePresentation, text: &str) -> Result<NCPoly, PresentationError> {
    let toks = tokenize(1, text)?;
    let mut cur = Cursor { toks: &toks, pos: 0, line: 1, end_col: text.chars().count() + 1 };
    let ctx = Ctx { field: p.field(), names: p.names() };
    let mut rw = p.rewriter();
    let mut out = p.zero();
    let mut first = true;
    while !cur.at_end() || first {
        let mut negative = false;
        match cur.peek() {
            Some(Tok::Sym('-')) => {
                negative = true;
                cur.pos += 1;
            }
            Some(Tok::Sym('+')) if !first => cur.pos += 1,
            _ if first => {}
            _ => return Err(cur.err("expected '+' or '-'")),
        }
        first = false;
        let mut term = p.one();
        let mut factors = 0;
        loop {
            match cur.peek() {
                Some(Tok::Number(num)) => {
                    let col = cur.col();
                    cur.pos += 1;
                    let mut text = num.clone();
                    if let Some(Tok::Sym('/')) = cur.peek() {
                        cur.pos += 1;
                        text.push('/');
                        text.push_str(cur.number("denominator")?);
                    }
                    let c = p.field().parse_scalar(&text).map_err(|e| syntax(1, col, e.to_string()))?;
                    term = term.scale(&c);
                }
                Some(Tok::Ident(_)) => {
                    let g = ctx.gen(&mut cur)?;
                    let mut e = 1u32;
                    if let Some(Tok::Sym('^')) = cur.peek() {
                        cur.pos += 1;
                        let col = cur.col();
                        e = cur.number("exponent")?.parse().map_err(|_| syntax(1, col, "exponent too large"))?;
                    }
                    for _ in 0..e {
                        term = rw.mul(&term, &p.gen(g));
                    }
                }
                _ => return Err(cur.err("expected a number or a generator")),
            }
            factors += 1;
            match cur.peek() {
                Some(Tok::Sym('*')) => cur.pos += 1,
                Some(Tok::Number(_) | Tok::Ident(_)) => {}
                _ => break,
            }
        }
        debug_assert!(factors > 0);
        if negative {
            term = term.scale(&-p.field().one());
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Writes a presentation in the text format. Every pair gets an explicit
/// rule, so `parse_presentation(&to_dsl(p)) == p`.
pub fn to_dsl(p: &OrePresentation) -> String {
    let names = p.names();
    let mut out = String::new();
    match p.field() {
        Field::Rationals => out.push_str("field Q\n"),
        Field::Prime(q) => out.push_str(&format!("field GF {q}\n")),
    }
    out.push_str(&format!("gens {}\n", names.join(" ")));
    for i in 0..p.ngens() {
        if let Some(rule) = p.power_rule(i) {
            out.push_str(&format!("power {} {} = {}\n", names[i], rule.bound, rule.reduction.display_with(names)));
        }
    }
    let rule_text = |r: &SwapRule| {
        let mut s = format!("sigma = {}", r.sigma.display_with(names));
        if !r.theta.is_zero() {
            s.push_str(&format!(", theta = {}", r.theta.display_with(names)));
        }
        s
    };
    for hi in 0..p.ngens() {
        for lo in 0..hi {
            let r = p.right_rule(hi, lo);
            out.push_str(&format!("swap {} {} : {}\n", names[hi], names[lo], rule_text(r)));
        }
    }
    if p.has_left_datum() {
        for hi in 0..p.ngens() {
            for lo in 0..hi {
                let r = p.left_rule(hi, lo).expect("left datum present");
                out.push_str(&format!("leftswap {} {} : {}\n", names[lo], names[hi], rule_text(r)));
            }
        }
    }
    out
}
