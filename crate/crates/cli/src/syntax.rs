//! Session language: statements, ring expressions and their printer.

use std::fmt;

/// 1-based line and column.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for SyntaxError {}

/// `coeff * X^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub exp: u32,
}

/// Polynomial literal in `X` with integer coefficients, kept as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyLit(pub Vec<Term>);

impl fmt::Display for PolyLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            let c = if i == 0 {
                if t.coeff < 0 {
                    f.write_str("-")?;
                }
                t.coeff.unsigned_abs()
            } else {
                f.write_str(if t.coeff < 0 { "-" } else { "+" })?;
                t.coeff.unsigned_abs()
            };
            match (t.exp, c) {
                (0, c) => write!(f, "{c}")?,
                (_, 1) => f.write_str("X")?,
                (_, c) => write!(f, "{c}*X")?,
            }
            if t.exp > 1 {
                write!(f, "^{}", t.exp)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Name(String),
    Zmod(u64),
    Gf(u64),
    PolyQuot(Box<Expr>, PolyLit),
    Product(Box<Expr>, Box<Expr>),
    Quot(Box<Expr>, Box<Expr>),
    Ideal(Box<Expr>, Vec<PolyLit>),
    Canon(Box<Expr>, Box<Expr>),
    Hom(Box<Expr>, Box<Expr>, Vec<(PolyLit, PolyLit)>),
    Amalgam(Box<Expr>, Box<Expr>),
    Dup(Box<Expr>, Box<Expr>),
    Trivext(Box<Expr>, Box<Expr>),
    /// The ring as a module over itself.
    ModRing(Box<Expr>),
    /// An ideal as a module over its ring.
    ModIdeal(Box<Expr>),
    /// `R/I` as an `R`-module.
    ModQuot(Box<Expr>, Box<Expr>),
    ModProd(Box<Expr>, Box<Expr>),
    /// Restriction of scalars along a homomorphism.
    ModVia(Box<Expr>, Box<Expr>),
}

/// An expression and where it starts. Equality ignores the position.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Let { name: String, expr: Expr },
    Check { predicate: String, target: Expr },
    Zsets(Expr),
    Spec(Expr),
    Verify { claim: String, targets: Vec<Expr> },
    Search { profile: String, max_size: Option<usize> },
    Infer { entry: Option<String> },
    Explain { entry: String, atom: String },
    /// A bare expression, evaluated and described.
    Show(Expr),
}

pub const KEYWORDS: &[&str] = &["let", "check", "zsets", "spec", "verify", "search", "infer", "explain"];

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ExprKind::*;
        match &self.kind {
            Name(n) => f.write_str(n),
            Zmod(n) => write!(f, "zmod({n})"),
            Gf(p) => write!(f, "gf({p})"),
            PolyQuot(b, p) => write!(f, "polyquot({b}, {p})"),
            Product(a, b) => write!(f, "product({a}, {b})"),
            Quot(a, b) => write!(f, "quot({a}, {b})"),
            Ideal(r, elems) => {
                let items: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
                write!(f, "ideal({r}, [{}])", items.join(", "))
            }
            Canon(a, b) => write!(f, "canon({a}, {b})"),
            Hom(a, b, map) => {
                let items: Vec<String> = map.iter().map(|(x, y)| format!("{x} -> {y}")).collect();
                write!(f, "hom({a}, {b}, [{}])", items.join(", "))
            }
            Amalgam(a, b) => write!(f, "amalgam({a}, {b})"),
            Dup(a, b) => write!(f, "dup({a}, {b})"),
            Trivext(a, b) => write!(f, "trivext({a}, {b})"),
            ModRing(a) => write!(f, "modring({a})"),
            ModIdeal(a) => write!(f, "modideal({a})"),
            ModQuot(a, b) => write!(f, "modquot({a}, {b})"),
            ModProd(a, b) => write!(f, "modprod({a}, {b})"),
            ModVia(a, b) => write!(f, "modvia({a}, {b})"),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Let { name, expr } => write!(f, "let {name} = {expr}"),
            Stmt::Check { predicate, target } => write!(f, "check {predicate} {target}"),
            Stmt::Zsets(e) => write!(f, "zsets {e}"),
            Stmt::Spec(e) => write!(f, "spec {e}"),
            Stmt::Verify { claim, targets } => {
                write!(f, "verify {claim}")?;
                for t in targets {
                    write!(f, " {t}")?;
                }
                Ok(())
            }
            Stmt::Search { profile, max_size } => {
                write!(f, "search {profile}")?;
                if let Some(m) = max_size {
                    write!(f, " --max-size {m}")?;
                }
                Ok(())
            }
            Stmt::Infer { entry: None } => f.write_str("infer"),
            Stmt::Infer { entry: Some(e) } => write!(f, "infer {e}"),
            Stmt::Explain { entry, atom } => write!(f, "explain {entry} {atom}"),
            Stmt::Show(e) => write!(f, "{e}"),
        }
    }
}

/// One statement per line.
pub fn print_program(stmts: &[Stmt]) -> String {
    stmts.iter().map(|s| format!("{s}\n")).collect()
}

struct Parser {
    chars: Vec<char>,
    i: usize,
    line: usize,
    col: usize,
}

type PResult<T> = std::result::Result<T, SyntaxError>;

fn is_word_char(c: char) -> bool {
    !c.is_whitespace() && c != ';' && c != '#'
}

impl Parser {
    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(SyntaxError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Skips blanks, comments and statement separators.
    fn skip_separators(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() || c == ';' {
                self.bump();
            } else {
                return;
            }
        }
    }

    fn ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace() && c != '\n') {
            self.bump();
        }
    }

    fn at_stmt_end(&mut self) -> bool {
        self.ws();
        match self.peek() {
            None | Some('\n') | Some(';') | Some('#') => true,
            _ => {
                let w = self.lookahead_ident();
                KEYWORDS.contains(&w.as_str())
            }
        }
    }

    fn lookahead_ident(&self) -> String {
        self.chars[self.i..]
            .iter()
            .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
            .collect()
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        self.ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.err(format!("expected '{c}', found '{found}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> PResult<String> {
        self.ws();
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            return self.err("expected a name");
        }
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
            s.push(c);
            self.bump();
        }
        Ok(s)
    }

    /// A run of non-blank characters, for claim ids, profiles and entry names.
    fn word(&mut self, what: &str) -> PResult<String> {
        self.ws();
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| is_word_char(*c)) {
            s.push(c);
            self.bump();
        }
        if s.is_empty() {
            return self.err(format!("expected {what}"));
        }
        Ok(s)
    }

    fn int(&mut self) -> PResult<u64> {
        self.ws();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return self.err("expected an integer");
        }
        let start = self.pos();
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s.parse().map_err(|_| SyntaxError {
            pos: start,
            message: format!("integer {s} is too large"),
        })
    }

    fn program(&mut self) -> PResult<Vec<Stmt>> {
        let mut out = Vec::new();
        loop {
            self.skip_separators();
            if self.peek().is_none() {
                return Ok(out);
            }
            out.push(self.stmt()?);
            self.ws();
            match self.peek() {
                None | Some('\n') | Some(';') | Some('#') => {}
                _ if KEYWORDS.contains(&self.lookahead_ident().as_str()) => {}
                Some(c) => return self.err(format!("unexpected '{c}' after statement")),
            }
        }
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let start = (self.i, self.line, self.col);
        let kw = self.ident()?;
        Ok(match kw.as_str() {
            "let" => {
                let name = self.binding_name()?;
                self.expect('=')?;
                Stmt::Let {
                    name,
                    expr: self.expr()?,
                }
            }
            "check" => {
                let predicate = self.word("a predicate")?;
                Stmt::Check {
                    predicate,
                    target: self.expr()?,
                }
            }
            "zsets" => Stmt::Zsets(self.expr()?),
            "spec" => Stmt::Spec(self.expr()?),
            "verify" => {
                let claim = self.word("a claim id")?;
                let mut targets = vec![self.expr()?];
                while !self.at_stmt_end() {
                    targets.push(self.expr()?);
                }
                Stmt::Verify { claim, targets }
            }
            "search" => {
                let profile = self.word("a profile")?;
                let mut max_size = None;
                while !self.at_stmt_end() {
                    let opt = self.word("an option")?;
                    match opt.as_str() {
                        "--max-size" => max_size = Some(self.int()? as usize),
                        _ => return self.err(format!("unknown search option '{opt}'")),
                    }
                }
                Stmt::Search { profile, max_size }
            }
            "infer" => {
                let entry = if self.at_stmt_end() {
                    None
                } else {
                    Some(self.word("an entry name")?)
                };
                Stmt::Infer { entry }
            }
            "explain" => {
                let entry = self.word("an entry name")?;
                let atom = self.word("an attribute")?;
                Stmt::Explain { entry, atom }
            }
            _ => {
                (self.i, self.line, self.col) = start;
                Stmt::Show(self.expr()?)
            }
        })
    }

    fn binding_name(&mut self) -> PResult<String> {
        self.ws();
        let pos = self.pos();
        let name = self.ident()?;
        if KEYWORDS.contains(&name.as_str()) || CONSTRUCTORS.contains(&name.as_str()) {
            return Err(SyntaxError {
                pos,
                message: format!("'{name}' is reserved"),
            });
        }
        Ok(name)
    }

    fn args(&mut self, n: usize) -> PResult<Vec<Expr>> {
        self.expect('(')?;
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if k > 0 {
                self.expect(',')?;
            }
            out.push(self.expr()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn two(&mut self) -> PResult<(Box<Expr>, Box<Expr>)> {
        let mut v = self.args(2)?;
        let b = v.pop().expect("two");
        let a = v.pop().expect("two");
        Ok((Box::new(a), Box::new(b)))
    }

    fn one(&mut self) -> PResult<Box<Expr>> {
        Ok(Box::new(self.args(1)?.pop().expect("one")))
    }

    fn expr(&mut self) -> PResult<Expr> {
        self.ws();
        let pos = self.pos();
        let name = self.ident()?;
        self.ws();
        let call = self.peek() == Some('(');
        if !call {
            if KEYWORDS.contains(&name.as_str()) {
                return Err(SyntaxError {
                    pos,
                    message: format!("expected an expression, found '{name}'"),
                });
            }
            return Ok(Expr {
                kind: ExprKind::Name(name),
                pos,
            });
        }
        use ExprKind::*;
        let kind = match name.as_str() {
            "zmod" | "gf" => {
                self.expect('(')?;
                let n = self.int()?;
                self.expect(')')?;
                if name == "zmod" {
                    Zmod(n)
                } else {
                    Gf(n)
                }
            }
            "polyquot" => {
                self.expect('(')?;
                let base = self.expr()?;
                self.expect(',')?;
                let p = self.poly()?;
                self.expect(')')?;
                PolyQuot(Box::new(base), p)
            }
            "product" => {
                let (a, b) = self.two()?;
                Product(a, b)
            }
            "quot" => {
                let (a, b) = self.two()?;
                Quot(a, b)
            }
            "ideal" => {
                self.expect('(')?;
                let r = self.expr()?;
                self.expect(',')?;
                self.expect('[')?;
                let mut elems = Vec::new();
                if !self.eat(']') {
                    loop {
                        elems.push(self.poly()?);
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                self.expect(')')?;
                Ideal(Box::new(r), elems)
            }
            "canon" => {
                let (a, b) = self.two()?;
                Canon(a, b)
            }
            "hom" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(',')?;
                self.expect('[')?;
                let mut map = Vec::new();
                if !self.eat(']') {
                    loop {
                        let x = self.poly()?;
                        self.expect('-')?;
                        if self.peek() != Some('>') {
                            return self.err("expected '->'");
                        }
                        self.bump();
                        let y = self.poly()?;
                        map.push((x, y));
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                self.expect(')')?;
                Hom(Box::new(a), Box::new(b), map)
            }
            "amalgam" => {
                let (a, b) = self.two()?;
                Amalgam(a, b)
            }
            "dup" => {
                let (a, b) = self.two()?;
                Dup(a, b)
            }
            "trivext" => {
                let (a, b) = self.two()?;
                Trivext(a, b)
            }
            "modring" => ModRing(self.one()?),
            "modideal" => ModIdeal(self.one()?),
            "modquot" => {
                let (a, b) = self.two()?;
                ModQuot(a, b)
            }
            "modprod" => {
                let (a, b) = self.two()?;
                ModProd(a, b)
            }
            "modvia" => {
                let (a, b) = self.two()?;
                ModVia(a, b)
            }
            _ => {
                return Err(SyntaxError {
                    pos,
                    message: format!("unknown constructor '{name}'"),
                })
            }
        };
        Ok(Expr { kind, pos })
    }

    fn poly(&mut self) -> PResult<PolyLit> {
        let mut terms = Vec::new();
        self.ws();
        let mut negative = self.eat('-');
        loop {
            let mut t = self.term()?;
            if negative {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            self.ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    negative = false;
                }
                // `->` ends a map entry
                Some('-') if self.chars.get(self.i + 1) != Some(&'>') => {
                    self.bump();
                    negative = true;
                }
                _ => return Ok(PolyLit(terms)),
            }
        }
    }

    fn term(&mut self) -> PResult<Term> {
        self.ws();
        let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.int()?;
            let c = i64::try_from(c).map_err(|_| SyntaxError {
                pos: self.pos(),
                message: "coefficient is too large".into(),
            })?;
            self.ws();
            if self.peek() == Some('*') {
                self.bump();
                self.ws();
                if self.peek() != Some('X') {
                    return self.err("expected 'X' after '*'");
                }
            } else if self.peek() != Some('X') {
                return Ok(Term { coeff: c, exp: 0 });
            }
            c
        } else {
            1
        };
        self.ws();
        if self.peek() != Some('X') {
            return match self.peek() {
                Some(c) => self.err(format!("expected a polynomial term, found '{c}'")),
                None => self.err("expected a polynomial term, found end of input"),
            };
        }
        self.bump();
        let exp = if self.eat('^') {
            let e = self.int()?;
            u32::try_from(e).map_err(|_| SyntaxError {
                pos: self.pos(),
                message: "exponent is too large".into(),
            })?
        } else {
            1
        };
        Ok(Term { coeff, exp })
    }
}

pub const CONSTRUCTORS: &[&str] = &[
    "zmod", "gf", "polyquot", "product", "quot", "ideal", "canon", "hom", "amalgam", "dup", "trivext", "modring",
    "modideal", "modquot", "modprod", "modvia",
];

/// Parses a session. Statements are separated by newlines or `;`, or simply
/// follow each other; `#` starts a comment.
pub fn parse(source: &str) -> Result<Vec<Stmt>, SyntaxError> {
    Parser {
        chars: source.chars().collect(),
        i: 0,
        line: 1,
        col: 1,
    }
    .program()
}
