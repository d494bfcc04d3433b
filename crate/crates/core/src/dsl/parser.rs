use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::group::{is_prime, GroupSpec};
use crate::maps::AffineMap;
use crate::rat::{int, Rat};
use crate::sets::{Cell, LinConstraint, Normalized, Relation, SemiSet};

use super::ast::*;
use super::error::{DslError, NameErrorKind};
use super::lexer::{lex, Tok, Token};

const KEYWORDS: [&str; 15] = [
    "group",
    "set",
    "sum",
    "map",
    "on",
    "to",
    "from",
    "check",
    "empty",
    "equal",
    "bijection",
    "class",
    "derive",
    "witness",
    "pt",
];

/// Largest accepted localizing prime.
const MAX_PRIME: u64 = u32::MAX as u64;

#[derive(Clone, Debug)]
enum Entry {
    Set(usize),
    /// Component labels and dimensions.
    Sum(Vec<(String, usize)>),
    Map,
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    names: HashMap<String, Entry>,
}

type PResult<T> = Result<T, DslError>;

/// Parses a complete script.
pub fn parse(src: &str) -> PResult<Script> {
    let mut p = Parser::new(src)?;
    p.script()
}

/// Parses a group literal such as `Z`, `Q` or `Z[1/2, 1/3]`.
pub fn parse_group(src: &str) -> PResult<GroupSpec> {
    let mut p = Parser::new(src)?;
    let g = p.group_spec()?;
    p.expect_eof()?;
    Ok(g)
}

/// Parses a set literal `{ (x) : … } | …`.
pub fn parse_set_literal(src: &str) -> PResult<SemiSet> {
    let mut p = Parser::new(src)?;
    let (_, set) = p.set_body()?;
    p.expect_eof()?;
    Ok(set)
}

fn rat_of(s: &str) -> Rat {
    Rat::from_integer(s.parse::<BigInt>().expect("digits"))
}

impl Parser {
    fn new(src: &str) -> PResult<Parser> {
        Ok(Parser {
            toks: lex(src)?,
            i: 0,
            names: HashMap::new(),
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.i]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if t.tok != Tok::Eof {
            self.i += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        let t = self.peek();
        Err(DslError::Parse {
            pos: t.pos,
            expected: expected.into(),
            found: t.text.clone(),
        })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek().tok, Tok::Sym(x) if x == s)
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(x) if x == k)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> PResult<Token> {
        if self.is_sym(s) {
            Ok(self.bump())
        } else {
            self.error(&format!("`{s}`"))
        }
    }

    fn expect_kw(&mut self, k: &str) -> PResult<Token> {
        if self.is_kw(k) {
            Ok(self.bump())
        } else {
            self.error(&format!("`{k}`"))
        }
    }

    fn expect_eof(&mut self) -> PResult<()> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    /// A non-keyword identifier.
    fn ident(&mut self, what: &str) -> PResult<(String, Pos)> {
        match &self.peek().tok {
            Tok::Ident(x) if !KEYWORDS.contains(&x.as_str()) => {
                let t = self.bump();
                Ok((t.text, t.pos))
            }
            _ => self.error(what),
        }
    }

    fn nat(&mut self, what: &str) -> PResult<(String, Pos)> {
        match &self.peek().tok {
            Tok::Nat(_) => {
                let t = self.bump();
                Ok((t.text, t.pos))
            }
            _ => self.error(what),
        }
    }

    fn declare(&mut self, name: &str, pos: Pos, entry: Entry) -> PResult<()> {
        if self.names.contains_key(name) {
            return Err(DslError::Name {
                pos,
                name: name.into(),
                kind: NameErrorKind::Duplicate,
            });
        }
        self.names.insert(name.into(), entry);
        Ok(())
    }

    fn lookup(&self, name: &str, pos: Pos) -> PResult<&Entry> {
        self.names.get(name).ok_or_else(|| DslError::Name {
            pos,
            name: name.into(),
            kind: NameErrorKind::Undeclared,
        })
    }

    fn script(&mut self) -> PResult<Script> {
        self.expect_kw("group")?;
        let (group_name, _) = self.ident("a group name")?;
        self.expect_sym("=")?;
        let group = self.group_spec()?;
        let mut statements = Vec::new();
        let mut positions = Vec::new();
        while self.peek().tok != Tok::Eof {
            positions.push(self.peek().pos);
            statements.push(self.statement()?);
        }
        Ok(Script {
            group_name,
            group,
            statements,
            positions,
        })
    }

    fn group_spec(&mut self) -> PResult<GroupSpec> {
        if self.is_kw("Q") {
            self.bump();
            return Ok(GroupSpec::Rationals);
        }
        self.expect_kw("Z").or_else(|_| self.error("`Z`, `Q` or `Z[1/p, ...]`"))?;
        if !self.eat_sym("[") {
            return Ok(GroupSpec::Integers);
        }
        let mut primes = BTreeSet::new();
        loop {
            let (one, _) = self.nat("`1`")?;
            if one != "1" {
                self.i -= 1;
                return self.error("`1`");
            }
            self.expect_sym("/")?;
            let (p, pos) = self.nat("a prime")?;
            let value = p.parse::<u64>().ok().filter(|&v| v <= MAX_PRIME).ok_or_else(|| DslError::Semantic {
                pos,
                message: format!("prime {p} too large"),
            })?;
            if !is_prime(value) {
                return Err(DslError::Semantic {
                    pos,
                    message: format!("{p} is not prime"),
                });
            }
            if !primes.insert(value) {
                return Err(DslError::Semantic {
                    pos,
                    message: format!("prime {p} repeated"),
                });
            }
            if !self.eat_sym(",") {
                break;
            }
        }
        self.expect_sym("]")?;
        GroupSpec::localized(primes).map_err(|e| DslError::Semantic {
            pos: self.peek().pos,
            message: e.to_string(),
        })
    }

    fn statement(&mut self) -> PResult<Stmt> {
        match &self.peek().tok {
            Tok::Ident(k) if k == "set" => self.set_decl().map(Stmt::Set),
            Tok::Ident(k) if k == "sum" => self.sum_decl().map(Stmt::Sum),
            Tok::Ident(k) if k == "map" => self.map_decl().map(Stmt::Map),
            Tok::Ident(k) if k == "check" => self.check().map(Stmt::Check),
            Tok::Ident(k) if k == "derive" => {
                self.bump();
                self.expect_kw("witness")?;
                Ok(Stmt::DeriveWitness)
            }
            _ => self.error("a statement (`set`, `sum`, `map`, `check` or `derive`)"),
        }
    }

    fn rational(&mut self) -> PResult<Rat> {
        let (n, _) = self.nat("a number")?;
        if self.eat_sym("/") {
            let (d, pos) = self.nat("a denominator")?;
            let d = rat_of(&d);
            if d.is_zero() {
                return Err(DslError::Semantic {
                    pos,
                    message: "zero denominator".into(),
                });
            }
            return Ok(rat_of(&n) / d);
        }
        Ok(rat_of(&n))
    }

    fn var_index(&self, vars: &[String], name: &str, pos: Pos) -> PResult<usize> {
        vars.iter().position(|v| v == name).ok_or_else(|| DslError::Name {
            pos,
            name: name.into(),
            kind: NameErrorKind::Undeclared,
        })
    }

    /// `coef·x + k` as (coefficients, constant).
    fn linexpr(&mut self, vars: &[String]) -> PResult<(Vec<Rat>, Rat)> {
        let mut coeffs = vec![Rat::zero(); vars.len()];
        let mut k = Rat::zero();
        let mut negative = self.eat_sym("-");
        loop {
            let sign = if negative { int(-1) } else { int(1) };
            match self.peek().tok.clone() {
                Tok::Nat(_) => {
                    let r = self.rational()?;
                    if self.eat_sym("*") {
                        let (v, pos) = self.ident("a variable")?;
                        let idx = self.var_index(vars, &v, pos)?;
                        coeffs[idx] += sign * r;
                    } else {
                        k += sign * r;
                    }
                }
                Tok::Ident(x) if !KEYWORDS.contains(&x.as_str()) => {
                    let (v, pos) = self.ident("a variable")?;
                    let idx = self.var_index(vars, &v, pos)?;
                    coeffs[idx] += sign;
                }
                _ => return self.error("a term"),
            }
            if self.eat_sym("+") {
                negative = false;
            } else if self.eat_sym("-") {
                negative = true;
            } else {
                return Ok((coeffs, k));
            }
        }
    }

    fn constraint(&mut self, vars: &[String]) -> PResult<Normalized> {
        let (a, ka) = self.linexpr(vars)?;
        let rel = if self.eat_sym("<=") {
            Relation::Le
        } else if self.eat_sym("<") {
            Relation::Lt
        } else if self.eat_sym("=") {
            Relation::Eq
        } else {
            return self.error("`<`, `<=` or `=`");
        };
        let (b, kb) = self.linexpr(vars)?;
        let coeffs: Vec<Rat> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        Ok(LinConstraint::new(&coeffs, rel, kb - ka))
    }

    /// `( x, y, … )`; commas may be left out when not required.
    fn var_list(&mut self, commas_required: bool) -> PResult<Vec<String>> {
        self.expect_sym("(")?;
        let mut vars: Vec<String> = Vec::new();
        if self.eat_sym(")") {
            return Ok(vars);
        }
        loop {
            let (v, pos) = self.ident("a variable name")?;
            if vars.contains(&v) {
                return Err(DslError::Name {
                    pos,
                    name: v,
                    kind: NameErrorKind::Duplicate,
                });
            }
            vars.push(v);
            if self.eat_sym(")") {
                return Ok(vars);
            }
            if !self.eat_sym(",") && commas_required {
                return self.error("`,` or `)`");
            }
        }
    }

    fn cell(&mut self) -> PResult<(Vec<String>, Cell)> {
        self.expect_sym("{")?;
        let vars = self.var_list(true)?;
        self.expect_sym(":")?;
        let mut cs = vec![self.constraint(&vars)?];
        while self.eat_sym(",") {
            cs.push(self.constraint(&vars)?);
        }
        self.expect_sym("}")?;
        Ok((vars.clone(), Cell::new(vars.len(), cs)))
    }

    fn set_body(&mut self) -> PResult<(Vec<String>, SemiSet)> {
        let pos = self.peek().pos;
        let (vars, first) = self.cell()?;
        let mut cells = vec![first];
        while self.is_sym("|") {
            self.bump();
            let pos = self.peek().pos;
            let (vs, c) = self.cell()?;
            if vs.len() != vars.len() {
                return Err(DslError::Semantic {
                    pos,
                    message: format!("cell has {} variables, expected {}", vs.len(), vars.len()),
                });
            }
            cells.push(c);
        }
        let set = SemiSet::new(vars.len(), cells).map_err(|e| DslError::Semantic {
            pos,
            message: e.to_string(),
        })?;
        Ok((vars, set))
    }

    fn set_decl(&mut self) -> PResult<SetDecl> {
        self.expect_kw("set")?;
        let (name, pos) = self.ident("a set name")?;
        self.expect_sym("=")?;
        let (vars, set) = self.set_body()?;
        self.declare(&name, pos, Entry::Set(set.dim()))?;
        Ok(SetDecl { name, vars, set })
    }

    fn summand(&mut self) -> PResult<(Summand, usize)> {
        let mut count = 1u32;
        if let Tok::Nat(_) = self.peek().tok {
            let (n, pos) = self.nat("a count")?;
            count = n.parse().ok().filter(|&c| c > 0).ok_or_else(|| DslError::Semantic {
                pos,
                message: "count must be a positive integer".into(),
            })?;
            self.expect_sym("*")?;
        }
        if self.is_kw("pt") {
            self.bump();
            return Ok((
                Summand {
                    count,
                    name: "pt".into(),
                },
                0,
            ));
        }
        let (name, pos) = self.ident("a set name or `pt`")?;
        match self.lookup(&name, pos)? {
            Entry::Set(d) => Ok((Summand { count, name }, *d)),
            _ => Err(DslError::Semantic {
                pos,
                message: format!("`{name}` is not a set"),
            }),
        }
    }

    fn sum_decl(&mut self) -> PResult<SumDecl> {
        self.expect_kw("sum")?;
        let (name, pos) = self.ident("a sum name")?;
        self.expect_sym("=")?;
        let mut summands = vec![];
        let mut dims = HashMap::new();
        loop {
            let (s, d) = self.summand()?;
            dims.insert(s.name.clone(), d);
            summands.push(s);
            if !self.eat_sym("+") {
                break;
            }
        }
        let decl = SumDecl { name, summands };
        let labels = decl.labels().into_iter().map(|(l, set)| (l, dims[&set])).collect();
        self.declare(&decl.name, pos, Entry::Sum(labels))?;
        Ok(decl)
    }

    /// Components of a map end: a sum's labels, or a set as one component.
    fn components(&self, name: &str, pos: Pos) -> PResult<Vec<(String, usize)>> {
        match self.lookup(name, pos)? {
            Entry::Set(d) => Ok(vec![(name.to_string(), *d)]),
            Entry::Sum(ls) => Ok(ls.clone()),
            Entry::Map => Err(DslError::Semantic {
                pos,
                message: format!("`{name}` is a map, expected a set or sum"),
            }),
        }
    }

    fn map_decl(&mut self) -> PResult<MapDecl> {
        self.expect_kw("map")?;
        let (name, pos) = self.ident("a map name")?;
        self.expect_sym(":")?;
        let (domain, dpos) = self.ident("a set or sum name")?;
        let dom = self.components(&domain, dpos)?;
        self.expect_sym("->")?;
        let (codomain, cpos) = self.ident("a set or sum name")?;
        let cod = self.components(&codomain, cpos)?;
        self.expect_sym("{")?;
        let mut pieces = vec![self.piece(&dom, &cod)?];
        while !self.eat_sym("}") {
            if !self.is_kw("on") {
                return self.error("`on` or `}`");
            }
            pieces.push(self.piece(&dom, &cod)?);
        }
        self.declare(&name, pos, Entry::Map)?;
        Ok(MapDecl {
            name,
            domain,
            codomain,
            pieces,
        })
    }

    fn label(&mut self, comps: &[(String, usize)]) -> PResult<String> {
        let t = self.peek().clone();
        let name = match &t.tok {
            Tok::Ident(x) if x == "pt" || !KEYWORDS.contains(&x.as_str()) => x.clone(),
            _ => return self.error("a component label"),
        };
        self.bump();
        if comps.iter().any(|(l, _)| *l == name) {
            Ok(name)
        } else {
            Err(DslError::Name {
                pos: t.pos,
                name,
                kind: NameErrorKind::Undeclared,
            })
        }
    }

    fn piece(&mut self, dom: &[(String, usize)], cod: &[(String, usize)]) -> PResult<PieceDecl> {
        self.expect_kw("on")?;
        let t = self.peek().clone();
        let on = match &t.tok {
            Tok::Ident(x) if x == "pt" => x.clone(),
            Tok::Ident(x) if !KEYWORDS.contains(&x.as_str()) => {
                let is_set = matches!(self.names.get(x), Some(Entry::Set(_)));
                if !is_set && !dom.iter().any(|(l, _)| l == x) {
                    return Err(DslError::Name {
                        pos: t.pos,
                        name: x.clone(),
                        kind: NameErrorKind::Undeclared,
                    });
                }
                x.clone()
            }
            _ => return self.error("a set name or component label"),
        };
        self.bump();
        let from = if self.is_kw("from") {
            self.bump();
            Some(self.label(dom)?)
        } else {
            None
        };
        let to = if self.is_kw("to") {
            self.bump();
            Some(self.label(cod)?)
        } else {
            None
        };
        self.expect_sym(":")?;
        let vars = self.var_list(false)?;
        self.expect_sym("->")?;
        self.expect_sym("(")?;
        let mut rows = Vec::new();
        let mut offset = Vec::new();
        if !self.eat_sym(")") {
            loop {
                let (a, k) = self.linexpr(&vars)?;
                rows.push(a);
                offset.push(k);
                if self.eat_sym(")") {
                    break;
                }
                self.expect_sym(",").or_else(|_| self.error("`,` or `)`"))?;
            }
        }
        let map = AffineMap::new(vars.len(), rows, offset).expect("rows sized by vars");
        Ok(PieceDecl {
            on,
            from,
            to,
            vars,
            map,
        })
    }

    fn check(&mut self) -> PResult<CheckDecl> {
        self.expect_kw("check")?;
        let kind = self.peek().clone();
        match &kind.tok {
            Tok::Ident(k) if k == "empty" => {
                self.bump();
                Ok(CheckDecl::Empty(self.set_ref()?))
            }
            Tok::Ident(k) if k == "equal" => {
                self.bump();
                let a = self.set_ref()?;
                let b = self.set_ref()?;
                Ok(CheckDecl::Equal(a, b))
            }
            Tok::Ident(k) if k == "class" => {
                self.bump();
                let (name, pos) = self.ident("a set or sum name")?;
                match self.lookup(&name, pos)? {
                    Entry::Map => Err(DslError::Semantic {
                        pos,
                        message: format!("`{name}` is a map, expected a set or sum"),
                    }),
                    _ => Ok(CheckDecl::Class(name)),
                }
            }
            Tok::Ident(k) if k == "bijection" => {
                self.bump();
                let (name, pos) = self.ident("a map name")?;
                match self.lookup(&name, pos)? {
                    Entry::Map => Ok(CheckDecl::Bijection(name)),
                    _ => Err(DslError::Semantic {
                        pos,
                        message: format!("`{name}` is not a map"),
                    }),
                }
            }
            _ => self.error("`empty`, `equal`, `bijection` or `class`"),
        }
    }

    fn set_ref(&mut self) -> PResult<String> {
        let (name, pos) = self.ident("a set name")?;
        match self.lookup(&name, pos)? {
            Entry::Set(_) => Ok(name),
            _ => Err(DslError::Semantic {
                pos,
                message: format!("`{name}` is not a set"),
            }),
        }
    }
}
