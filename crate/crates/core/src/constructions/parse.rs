//! Group expressions and group files.
//!
//! ```text
//! expr    := IDENT [ "(" args ")" ]
//! args    := numbers for atoms, expressions for DirectProduct,
//!            expr "," autspec {"," autspec} for SemidirectByAut,
//!            expr "," NUMBER for ShiftProduct, STRING for File
//! autspec := "[" [ GEN "->" word {"," GEN "->" word} ] "]"
//! word    := "1" | GEN ["^" ["-"] NUMBER] {"*" GEN ["^" ["-"] NUMBER]}
//! GEN     := "g" | "g1" | "g2" | ...
//! ```

use std::path::{Path, PathBuf};

use super::expr::{AutSpec, GroupExpr, Word};
use crate::error::{Error, Result};
use crate::perm_core::{Perm, PermGroup};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    Str(String),
    Punct(char),
    Arrow,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

impl Lexer {
    fn new(text: &str) -> Result<Self> {
        let mut toks = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let (mut line, mut col) = (1, 1);
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (l0, c0) = (line, col);
            let mut advance = |i: &mut usize, n: usize| {
                for _ in 0..n {
                    if chars[*i] == '\n' {
                        line += 1;
                        col = 1;
                    } else {
                        col += 1;
                    }
                    *i += 1;
                }
            };
            if c.is_whitespace() {
                advance(&mut i, 1);
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                toks.push((Tok::Ident(chars[start..j].iter().collect()), l0, c0));
                advance(&mut i, j - start);
            } else if c.is_ascii_digit() {
                let start = i;
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[start..j].iter().collect();
                let n = s.parse().map_err(|_| syntax(l0, c0, "number too large"))?;
                toks.push((Tok::Num(n), l0, c0));
                advance(&mut i, j - start);
            } else if c == '"' {
                let mut j = i + 1;
                while j < chars.len() && chars[j] != '"' {
                    j += 1;
                }
                if j == chars.len() {
                    return Err(syntax(l0, c0, "unterminated string"));
                }
                toks.push((Tok::Str(chars[i + 1..j].iter().collect()), l0, c0));
                let n = j + 1 - i;
                advance(&mut i, n);
            } else if c == '-' && chars.get(i + 1) == Some(&'>') {
                toks.push((Tok::Arrow, l0, c0));
                advance(&mut i, 2);
            } else if "()[],^*-".contains(c) {
                toks.push((Tok::Punct(c), l0, c0));
                advance(&mut i, 1);
            } else {
                return Err(syntax(l0, c0, format!("unexpected character {c:?}")));
            }
        }
        toks.push((Tok::End, line, col));
        Ok(Lexer { toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        let (_, l, c) = &self.toks[self.pos];
        (*l, *c)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let name = match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                s
            }
            _ => return Err(self.err("expected a group expression")),
        };
        match name.as_str() {
            "DirectProduct" => {
                self.expect('(')?;
                let mut factors = vec![self.expr()?];
                while self.eat(',') {
                    factors.push(self.expr()?);
                }
                self.expect(')')?;
                Ok(GroupExpr::DirectProduct(factors))
            }
            "SemidirectByAut" => {
                self.expect('(')?;
                let base = Box::new(self.expr()?);
                let mut auts = Vec::new();
                while self.eat(',') {
                    auts.push(self.aut_spec()?);
                }
                if auts.is_empty() {
                    return Err(self.err("expected an automorphism list"));
                }
                self.expect(')')?;
                Ok(GroupExpr::SemidirectByAut { base, auts })
            }
            "ShiftProduct" => {
                self.expect('(')?;
                let factor = Box::new(self.expr()?);
                self.expect(',')?;
                let copies = self.number()? as usize;
                self.expect(')')?;
                Ok(GroupExpr::ShiftProduct { factor, copies })
            }
            "File" => {
                self.expect('(')?;
                let path = match self.peek().clone() {
                    Tok::Str(s) => {
                        self.pos += 1;
                        PathBuf::from(s)
                    }
                    _ => return Err(self.err("expected a quoted path")),
                };
                self.expect(')')?;
                Ok(GroupExpr::FromFile(path))
            }
            _ => {
                let mut params = Vec::new();
                if self.eat('(') {
                    if !self.eat(')') {
                        params.push(self.number()?);
                        while self.eat(',') {
                            params.push(self.number()?);
                        }
                        self.expect(')')?;
                    }
                }
                Ok(GroupExpr::Atom { name, params })
            }
        }
    }

    fn generator(&mut self) -> Result<usize> {
        if let Tok::Ident(s) = self.peek().clone() {
            if s == "g" {
                self.pos += 1;
                return Ok(0);
            }
            if let Some(n) = s.strip_prefix('g').and_then(|d| d.parse::<usize>().ok()) {
                if n >= 1 {
                    self.pos += 1;
                    return Ok(n - 1);
                }
            }
        }
        Err(self.err("expected a generator name g, g1, g2, ..."))
    }

    fn word(&mut self) -> Result<Word> {
        if *self.peek() == Tok::Num(1) {
            self.pos += 1;
            return Ok(Word::default());
        }
        let mut factors = Vec::new();
        loop {
            let g = self.generator()?;
            let mut e = 1i64;
            if self.eat('^') {
                let neg = self.eat('-');
                let n = self.number()? as i64;
                e = if neg { -n } else { n };
            }
            factors.push((g, e));
            if !self.eat('*') {
                return Ok(Word(factors));
            }
        }
    }

    fn aut_spec(&mut self) -> Result<AutSpec> {
        self.expect('[')?;
        let mut images = Vec::new();
        if !self.eat(']') {
            loop {
                let g = self.generator()?;
                if *self.peek() != Tok::Arrow {
                    return Err(self.err("expected '->'"));
                }
                self.pos += 1;
                images.push((g, self.word()?));
                if !self.eat(',') {
                    break;
                }
            }
            self.expect(']')?;
        }
        Ok(AutSpec { images })
    }
}

pub fn parse_group_expr(text: &str) -> Result<GroupExpr> {
    let mut lx = Lexer::new(text)?;
    let e = lx.expr()?;
    if *lx.peek() != Tok::End {
        return Err(lx.err("trailing input"));
    }
    Ok(e)
}

/// A group given by explicit generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl GroupFile {
    pub fn to_group(&self) -> Result<PermGroup> {
        PermGroup::new(self.degree, self.generators.clone())
    }
}

pub fn parse_group_file_text(text: &str) -> Result<GroupFile> {
    let mut name = None;
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap();
        let trimmed = content.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (key, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_col = indent + key.len() + 2;
        match key {
            "name" => {
                let n = rest.trim();
                if n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(syntax(line_no, rest_col, "expected an identifier"));
                }
                name = Some(n.to_string());
            }
            "degree" => {
                if degree.is_some() {
                    return Err(syntax(line_no, indent + 1, "duplicate degree line"));
                }
                let d: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| syntax(line_no, rest_col, "expected a positive integer"))?;
                if d == 0 {
                    return Err(syntax(line_no, rest_col, "degree must be positive"));
                }
                degree = Some(d);
            }
            "gen" => {
                let d = degree
                    .ok_or_else(|| syntax(line_no, indent + 1, "gen before degree"))?;
                let p = Perm::parse_cycles(d, rest.trim()).map_err(|e| match e {
                    Error::PointOutOfRange { point, degree } => Error::Semantic(format!(
                        "line {line_no}: cycle touches point {point} beyond degree {degree}"
                    )),
                    other => syntax(line_no, rest_col, other.to_string()),
                })?;
                generators.push(p);
            }
            _ => {
                return Err(syntax(
                    line_no,
                    indent + 1,
                    format!("unknown directive {key:?}"),
                ))
            }
        }
    }
    let degree = degree.ok_or_else(|| syntax(1, 1, "missing degree line"))?;
    Ok(GroupFile {
        name,
        degree,
        generators,
    })
}

pub fn read_group_file(path: &Path) -> Result<GroupFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_group_file_text(&text)
}

/// Validates the file and returns the expression referring to it.
pub fn parse_group_file(path: &Path) -> Result<GroupExpr> {
    read_group_file(path)?;
    Ok(GroupExpr::FromFile(path.to_path_buf()))
}

pub fn write_group_file(file: &GroupFile) -> String {
    let mut out = String::new();
    if let Some(n) = &file.name {
        out.push_str(&format!("name {n}\n"));
    }
    out.push_str(&format!("degree {}\n", file.degree));
    for g in &file.generators {
        out.push_str(&format!("gen {}\n", g.to_cycle_string()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_atoms_and_composites() {
        assert_eq!(parse_group_expr("Sym(4)").unwrap(), GroupExpr::atom("Sym", &[4]));
        assert_eq!(parse_group_expr(" GL(3, 2) ").unwrap(), GroupExpr::atom("GL", &[3, 2]));
        let e = parse_group_expr("SemidirectByAut(Cyclic(7), [g -> g^3])").unwrap();
        assert_eq!(
            e,
            GroupExpr::SemidirectByAut {
                base: Box::new(GroupExpr::atom("Cyclic", &[7])),
                auts: vec![AutSpec {
                    images: vec![(0, Word(vec![(0, 3)]))]
                }],
            }
        );
        let e = parse_group_expr("ShiftProduct(DirectProduct(Sym(3),Alt(4)), 5)").unwrap();
        assert!(matches!(e, GroupExpr::ShiftProduct { copies: 5, .. }));
        let e = parse_group_expr("SemidirectByAut(Dihedral(2), [g1 -> g2, g2 -> g1*g2^-1], [])")
            .unwrap();
        assert!(matches!(e, GroupExpr::SemidirectByAut { ref auts, .. } if auts.len() == 2));
    }

    #[test]
    fn round_trips_through_printer() {
        for text in [
            "Sym(4)",
            "GL32Duality",
            "DirectProduct(Sym(3), Sym(3))",
            "SemidirectByAut(Cyclic(7), [g -> g^3])",
            "SemidirectByAut(DirectProduct(Cyclic(2), Cyclic(2)), [g1 -> g2, g2 -> g1*g2])",
            "ShiftProduct(GL(3,2), 5)",
            "File(\"x/y.grp\")",
            "SemidirectByAut(Cyclic(5), [g -> 1])",
        ] {
            let e = parse_group_expr(text).unwrap();
            assert_eq!(parse_group_expr(&e.to_string()).unwrap(), e, "{text}");
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_group_expr("DirectProduct(Sym(3),\n  Alt(4)") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 9)),
            other => panic!("{other:?}"),
        }
        match parse_group_expr("Sym(4) x") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 8)),
            other => panic!("{other:?}"),
        }
        assert!(parse_group_expr("SemidirectByAut(Cyclic(7), [h -> g])").is_err());
        assert!(parse_group_expr("Sym(4").is_err());
        assert!(parse_group_expr("").is_err());
        assert!(parse_group_expr("Sym(@)").is_err());
    }

    #[test]
    fn group_files() {
        let text = "# a comment\nname s4\ndegree 4\ngen (1 2)\ngen (1 2 3 4)  # 4-cycle\n";
        let f = parse_group_file_text(text).unwrap();
        assert_eq!(f.name.as_deref(), Some("s4"));
        assert_eq!(f.to_group().unwrap().order(), 24);
        assert_eq!(parse_group_file_text(&write_group_file(&f)).unwrap(), f);

        assert!(matches!(
            parse_group_file_text("degree 4\ngen (1 5)\n"),
            Err(Error::Semantic(_))
        ));
        match parse_group_file_text("gen (1 2)\ndegree 4\n") {
            Err(Error::Syntax { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_group_file_text("degree 4\nfoo bar\n") {
            Err(Error::Syntax { line: 2, column: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_group_file_text("name s4\n").is_err());
    }
}
