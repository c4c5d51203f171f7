//! The textual interchange format.
//!
//! ```text
//! signature { f/1; c/0 }
//! vars { x y }
//! algebra A { carrier { a b }; op f(a) = b; op f(b) = a; op c = a; dist a b = 1 }
//! theory T { [x =[1] y] |- f(x) =[1] f(y); |- f(f(x)) =[0] x }
//! structure M { carrier { a b }; op f(a) = b; op f(b) = a; op c = a; pair a b : bound 1 open }
//! formula H { forall x y . (x =[1] y) -> (f(x) =[1] f(y)) }
//! proof P { 0: Refl [] :: |- x =[0] x }
//! ```
//!
//! Names that are not plain identifiers are written in double quotes.
//! Distances and thresholds must be given for every pair of distinct
//! elements; `pair a b` also fixes `pair b a` unless that is listed too.
//! `#` starts a comment.

mod lexer;
mod print;

use std::collections::BTreeMap;
use std::fmt;

use indexmap::IndexMap;

use crate::algebra::{DistanceMatrix, OpTable, Operations, QuantAlgebra};
use crate::logic::{ConditionalEquation, Proof, ProofStep, QuantEquation, Rule};
use crate::qfo::{Atom, HornFormula, Threshold, ThresholdStructure};
use crate::scalar::Extended;
use crate::term::{Name, Signature, Substitution, Term};
use crate::{Algebra, Conditional, Equation, Rational};

use lexer::{tokenize, Tok};
pub use print::{format_name, print_algebra, print_structure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DslError {
    pub pos: Pos,
    pub message: String,
}

impl DslError {
    pub(crate) fn new(pos: Pos, message: impl Into<String>) -> Self {
        DslError {
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.pos.line, self.pos.column, self.message)
    }
}

impl std::error::Error for DslError {}

/// Everything a source file declares, keyed by name within each kind.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Workspace {
    pub signature: Signature,
    pub algebras: IndexMap<Name, Algebra>,
    pub theories: IndexMap<Name, Vec<Conditional>>,
    pub structures: IndexMap<Name, ThresholdStructure<Rational>>,
    pub formulas: IndexMap<Name, HornFormula<Rational>>,
    pub proofs: IndexMap<Name, Proof<Rational>>,
}

impl Workspace {
    pub fn parse(src: &str) -> Result<Workspace, DslError> {
        let mut p = Parser::new(src, Signature::default())?;
        let ws = p.workspace()?;
        p.end()?;
        Ok(ws)
    }

    pub fn parse_term(&self, src: &str) -> Result<Term, DslError> {
        self.parse_with(src, |p| p.term())
    }

    pub fn parse_equation(&self, src: &str) -> Result<Equation, DslError> {
        self.parse_with(src, |p| p.equation())
    }

    /// `[h1 ; h2] |- s =[e] t`, with the bracket optional when empty.
    pub fn parse_conditional(&self, src: &str) -> Result<Conditional, DslError> {
        self.parse_with(src, |p| p.conditional())
    }

    pub fn parse_formula(&self, src: &str) -> Result<HornFormula<Rational>, DslError> {
        self.parse_with(src, |p| p.formula())
    }

    pub fn parse_proof(&self, src: &str) -> Result<Proof<Rational>, DslError> {
        self.parse_with(src, |p| p.proof_steps(|t| matches!(t, Tok::Eof)))
    }

    fn parse_with<T>(
        &self,
        src: &str,
        f: impl FnOnce(&mut Parser) -> Result<T, DslError>,
    ) -> Result<T, DslError> {
        let mut p = Parser::new(src, self.signature.clone())?;
        let out = f(&mut p)?;
        p.end()?;
        Ok(out)
    }
}

/// `n` or `n/d` with `d > 0`.
pub fn parse_rational(src: &str) -> Option<Rational> {
    let (n, d) = match src.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (src.trim(), "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(n) || !digits(d) {
        return None;
    }
    let (n, d): (i64, i64) = (n.parse().ok()?, d.parse().ok()?);
    (d != 0).then(|| Rational::new(n, d))
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    sig: Signature,
    /// Variables bound by the formula being parsed.
    bound: Vec<Name>,
}

type Res<T> = Result<T, DslError>;

impl Parser {
    fn new(src: &str, sig: Signature) -> Res<Self> {
        Ok(Parser {
            toks: tokenize(src)?,
            at: 0,
            sig,
            bound: Vec::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Res<T> {
        Err(DslError::new(self.pos(), message))
    }

    fn unexpected<T>(&self, wanted: &str) -> Res<T> {
        self.err(format!(
            "expected {wanted}, found {}",
            self.peek().describe()
        ))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        self.eat(&Tok::Punct(c))
    }

    fn expect(&mut self, t: &Tok) -> Res<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.unexpected(&t.describe())
        }
    }

    fn expect_punct(&mut self, c: char) -> Res<()> {
        self.expect(&Tok::Punct(c))
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(s) if s == kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Res<()> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            self.unexpected(&format!("`{kw}`"))
        }
    }

    fn skip_separators(&mut self) {
        while self.eat_punct(';') {}
    }

    fn end(&mut self) -> Res<()> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => self.unexpected("end of input"),
        }
    }

    fn ident(&mut self) -> Res<(Name, Pos)> {
        match self.peek().clone() {
            Tok::Ident(s) => Ok((Name::from(s.as_str()), self.bump().1)),
            _ => self.unexpected("an identifier"),
        }
    }

    /// An object or element name: identifier, number or quoted string.
    fn name(&mut self) -> Res<(Name, Pos)> {
        match self.peek().clone() {
            Tok::Ident(s) | Tok::Quoted(s) | Tok::Int(s) => {
                Ok((Name::from(s.as_str()), self.bump().1))
            }
            _ => self.unexpected("a name"),
        }
    }

    fn natural(&mut self) -> Res<usize> {
        match self.peek().clone() {
            Tok::Int(s) => match s.parse() {
                Ok(n) => {
                    self.bump();
                    Ok(n)
                }
                Err(_) => self.err(format!("`{s}` is too large")),
            },
            _ => self.unexpected("a number"),
        }
    }

    fn rational(&mut self) -> Res<Rational> {
        let pos = self.pos();
        let Tok::Int(n) = self.peek().clone() else {
            return self.unexpected("a non-negative rational");
        };
        self.bump();
        let mut text = n;
        if self.eat_punct('/') {
            match self.peek().clone() {
                Tok::Int(d) => {
                    self.bump();
                    text = format!("{text}/{d}");
                }
                _ => return self.unexpected("a denominator"),
            }
        }
        parse_rational(&text)
            .ok_or_else(|| DslError::new(pos, format!("`{text}` is not a representable rational")))
    }

    fn distance(&mut self) -> Res<Extended<Rational>> {
        if self.eat_keyword("inf") {
            Ok(Extended::Infinite)
        } else {
            Ok(Extended::Finite(self.rational()?))
        }
    }

    fn is_variable(&self, name: &str) -> bool {
        self.sig.is_variable(name) || self.bound.iter().any(|v| &**v == name)
    }

    fn term(&mut self) -> Res<Term> {
        let (name, pos) = self.ident()?;
        if let Some(arity) = self.sig.arity(&name) {
            let mut args = Vec::new();
            if self.eat_punct('(') && !self.eat_punct(')') {
                loop {
                    args.push(self.term()?);
                    if self.eat_punct(')') {
                        break;
                    }
                    self.expect_punct(',')?;
                }
            }
            if args.len() != arity {
                return Err(DslError::new(
                    pos,
                    format!(
                        "`{name}` has arity {arity} but is applied to {} arguments",
                        args.len()
                    ),
                ));
            }
            Ok(Term::App(name, args))
        } else if self.is_variable(&name) {
            if matches!(self.peek(), Tok::Punct('(')) {
                return self.err(format!("variable `{name}` cannot be applied"));
            }
            Ok(Term::Var(name))
        } else {
            Err(DslError::new(
                pos,
                format!("`{name}` is neither a declared symbol nor a variable"),
            ))
        }
    }

    fn equation(&mut self) -> Res<Equation> {
        let left = self.term()?;
        self.expect(&Tok::EqBracket)?;
        let bound = self.rational()?;
        self.expect_punct(']')?;
        let right = self.term()?;
        Ok(QuantEquation { left, right, bound })
    }

    fn conditional(&mut self) -> Res<Conditional> {
        let mut hyps = Vec::new();
        if self.eat_punct('[') && !self.eat_punct(']') {
            loop {
                hyps.push(self.equation()?);
                if self.eat_punct(']') {
                    break;
                }
                self.expect_punct(';')?;
            }
        }
        self.expect(&Tok::Turnstile)?;
        Ok(ConditionalEquation::new(hyps, self.equation()?))
    }

    fn atom(&mut self) -> Res<Atom<Rational>> {
        self.expect_punct('(')?;
        let left = self.term()?;
        let atom = if self.eat(&Tok::EqBracket) {
            let bound = self.rational()?;
            self.expect_punct(']')?;
            Atom::Within(QuantEquation {
                left,
                right: self.term()?,
                bound,
            })
        } else {
            self.expect_punct('=')?;
            Atom::Equal(left, self.term()?)
        };
        self.expect_punct(')')?;
        Ok(atom)
    }

    fn formula(&mut self) -> Res<HornFormula<Rational>> {
        self.expect_keyword("forall")?;
        let mut vars = Vec::new();
        while let Tok::Ident(_) = self.peek() {
            let (v, pos) = self.ident()?;
            if self.sig.arity(&v).is_some() {
                return Err(DslError::new(pos, format!("`{v}` is an operation symbol")));
            }
            if vars.contains(&v) {
                return Err(DslError::new(
                    pos,
                    format!("variable `{v}` is quantified twice"),
                ));
            }
            vars.push(v);
        }
        self.expect_punct('.')?;
        self.bound = vars.clone();
        let mut atoms = vec![self.atom()?];
        while self.eat_punct('&') {
            atoms.push(self.atom()?);
        }
        let head = if self.eat(&Tok::Arrow) {
            self.atom()?
        } else if atoms.len() == 1 {
            atoms.pop().unwrap()
        } else {
            return self.unexpected("`->`");
        };
        self.bound.clear();
        Ok(HornFormula {
            vars,
            body: atoms,
            head,
        })
    }

    fn substitution(&mut self) -> Res<Substitution> {
        let mut sigma = Substitution::new();
        if self.eat_punct('}') {
            return Ok(sigma);
        }
        loop {
            let (v, pos) = self.ident()?;
            if !self.is_variable(&v) {
                return Err(DslError::new(pos, format!("`{v}` is not a variable")));
            }
            self.expect(&Tok::Assign)?;
            sigma.insert(v, self.term()?);
            if self.eat_punct('}') {
                return Ok(sigma);
            }
            self.expect_punct(',')?;
        }
    }

    fn proof_steps(&mut self, stop: impl Fn(&Tok) -> bool) -> Res<Proof<Rational>> {
        let mut steps = Vec::new();
        while !stop(self.peek()) {
            let pos = self.pos();
            let index = self.natural()?;
            if index != steps.len() {
                return Err(DslError::new(
                    pos,
                    format!("expected step {}, found step {index}", steps.len()),
                ));
            }
            self.expect_punct(':')?;
            let (rule_name, rule_pos) = self.ident()?;
            let rule = Rule::from_name(&rule_name)
                .ok_or_else(|| DslError::new(rule_pos, format!("unknown rule `{rule_name}`")))?;
            self.expect_punct('[')?;
            let mut premises = Vec::new();
            if !self.eat_punct(']') {
                loop {
                    premises.push(self.natural()?);
                    if self.eat_punct(']') {
                        break;
                    }
                    self.expect_punct(',')?;
                }
            }
            let mut step = ProofStep::new(
                rule,
                premises,
                Vec::new(),
                QuantEquation {
                    left: Term::var("_"),
                    right: Term::var("_"),
                    bound: Rational::from_integer(0),
                },
            );
            if self.eat_keyword("ax") {
                self.expect_punct('=')?;
                step.axiom = Some(self.natural()?);
            }
            if self.eat_punct('{') {
                step.substitution = Some(self.substitution()?);
            }
            self.expect(&Tok::DoubleColon)?;
            if !matches!(self.peek(), Tok::Turnstile) {
                loop {
                    step.context.push(self.equation()?);
                    if !self.eat_punct(';') {
                        break;
                    }
                }
            }
            self.expect(&Tok::Turnstile)?;
            step.conclusion = self.equation()?;
            steps.push(step);
        }
        Ok(Proof { steps })
    }

    fn workspace(&mut self) -> Res<Workspace> {
        let mut symbols = Vec::new();
        let mut variables = Vec::new();
        let header_pos = self.pos();
        if self.eat_keyword("signature") {
            self.expect_punct('{')?;
            self.skip_separators();
            while !self.eat_punct('}') {
                let (f, _) = self.ident()?;
                self.expect_punct('/')?;
                symbols.push((f, self.natural()?));
                if !self.eat_punct(',') {
                    self.skip_separators();
                }
            }
        }
        self.skip_separators();
        if self.eat_keyword("vars") {
            self.expect_punct('{')?;
            while !self.eat_punct('}') {
                variables.push(self.ident()?.0);
            }
        }
        self.sig = Signature::new(symbols, variables)
            .map_err(|e| DslError::new(header_pos, e.to_string()))?;
        let mut ws = Workspace {
            signature: self.sig.clone(),
            ..Workspace::default()
        };
        loop {
            self.skip_separators();
            let (kw, kw_pos) = match self.peek() {
                Tok::Eof => return Ok(ws),
                Tok::Ident(_) => self.ident()?,
                _ => return self.unexpected("a declaration"),
            };
            let (name, pos) = self.name()?;
            let fresh = match &*kw {
                "algebra" => {
                    let a = self.algebra_body(pos)?;
                    ws.algebras.insert(name.clone(), a).is_none()
                }
                "structure" => {
                    let m = self.structure_body(pos)?;
                    ws.structures.insert(name.clone(), m).is_none()
                }
                "theory" => {
                    let t = self.theory_body()?;
                    ws.theories.insert(name.clone(), t).is_none()
                }
                "formula" => {
                    self.expect_punct('{')?;
                    let phi = self.formula()?;
                    self.skip_separators();
                    self.expect_punct('}')?;
                    ws.formulas.insert(name.clone(), phi).is_none()
                }
                "proof" => {
                    self.expect_punct('{')?;
                    let proof = self.proof_steps(|t| matches!(t, Tok::Punct('}') | Tok::Eof))?;
                    self.expect_punct('}')?;
                    ws.proofs.insert(name.clone(), proof).is_none()
                }
                "signature" | "vars" => {
                    return Err(DslError::new(
                        kw_pos,
                        format!("`{kw}` must come before every other declaration"),
                    ))
                }
                _ => {
                    return Err(DslError::new(
                        kw_pos,
                        format!("unknown declaration kind `{kw}`"),
                    ))
                }
            };
            if !fresh {
                return Err(DslError::new(
                    pos,
                    format!("{kw} `{name}` is declared twice"),
                ));
            }
        }
    }

    fn theory_body(&mut self) -> Res<Vec<Conditional>> {
        self.expect_punct('{')?;
        let mut axioms = Vec::new();
        self.skip_separators();
        while !self.eat_punct('}') {
            axioms.push(self.conditional()?);
            self.skip_separators();
        }
        Ok(axioms)
    }

    /// `carrier { ... }` followed by the operation tables; `extra` handles
    /// any other item keyword and reports whether it consumed one.
    fn carrier_block(
        &mut self,
        decl: Pos,
        mut extra: impl FnMut(&mut Self, &str, &IndexMap<Name, Pos>) -> Res<bool>,
    ) -> Res<Operations> {
        self.expect_punct('{')?;
        self.skip_separators();
        let carrier_pos = self.pos();
        self.expect_keyword("carrier")?;
        self.expect_punct('{')?;
        let mut carrier: IndexMap<Name, Pos> = IndexMap::new();
        while !self.eat_punct('}') {
            let (e, pos) = self.name()?;
            if carrier.insert(e.clone(), pos).is_some() {
                return Err(DslError::new(pos, format!("element `{e}` is listed twice")));
            }
        }
        let mut entries: BTreeMap<(Name, Vec<usize>), usize> = BTreeMap::new();
        loop {
            self.skip_separators();
            if self.eat_punct('}') {
                break;
            }
            let item_pos = self.pos();
            if self.eat_keyword("op") {
                let (f, fpos) = self.ident()?;
                let Some(arity) = self.sig.arity(&f) else {
                    return Err(DslError::new(
                        fpos,
                        format!("unknown operation symbol `{f}`"),
                    ));
                };
                let mut args = Vec::new();
                if self.eat_punct('(') && !self.eat_punct(')') {
                    loop {
                        args.push(self.element(&carrier)?);
                        if self.eat_punct(')') {
                            break;
                        }
                        self.expect_punct(',')?;
                    }
                }
                if args.len() != arity {
                    return Err(DslError::new(
                        fpos,
                        format!(
                            "`{f}` has arity {arity} but is given {} arguments",
                            args.len()
                        ),
                    ));
                }
                self.expect_punct('=')?;
                let value = self.element(&carrier)?;
                if entries.insert((f.clone(), args), value).is_some() {
                    return Err(DslError::new(
                        item_pos,
                        format!("entry for `{f}` is given twice"),
                    ));
                }
            } else {
                let Tok::Ident(kw) = self.peek().clone() else {
                    return self.unexpected("an item");
                };
                if !extra(self, &kw, &carrier)? {
                    return self.unexpected("`op` or another item");
                }
            }
        }
        let names: Vec<Name> = carrier.keys().cloned().collect();
        let n = names.len();
        let mut tables = Vec::new();
        for (f, arity) in self.sig.symbols() {
            let mut values = Vec::with_capacity(n.pow(arity as u32));
            let mut missing = None;
            crate::logic::for_each_map(arity, n, |args| {
                match entries.get(&(f.clone(), args.to_vec())) {
                    Some(&v) => {
                        values.push(v);
                        true
                    }
                    None => {
                        missing = Some(args.to_vec());
                        false
                    }
                }
            });
            if let Some(args) = missing {
                let shown: Vec<String> = args
                    .iter()
                    .map(|&a| format_name(&names[a]).into_owned())
                    .collect();
                let entry = if arity == 0 {
                    f.to_string()
                } else {
                    format!("{f}({})", shown.join(", "))
                };
                return Err(DslError::new(decl, format!("no value given for `{entry}`")));
            }
            tables.push((
                f.clone(),
                OpTable::new(arity, n, values).expect("complete table"),
            ));
        }
        Operations::new(names, tables).map_err(|e| DslError::new(carrier_pos, e.to_string()))
    }

    fn element(&mut self, carrier: &IndexMap<Name, Pos>) -> Res<usize> {
        let (e, pos) = self.name()?;
        carrier
            .get_index_of(&e)
            .ok_or_else(|| DslError::new(pos, format!("`{e}` is not in the carrier")))
    }

    fn algebra_body(&mut self, decl: Pos) -> Res<Algebra> {
        let mut dist: BTreeMap<(usize, usize), (Extended<Rational>, Pos)> = BTreeMap::new();
        let ops = self.carrier_block(decl, |p, kw, carrier| {
            if kw != "dist" {
                return Ok(false);
            }
            let pos = p.bump().1;
            let (a, b) = (p.element(carrier)?, p.element(carrier)?);
            p.expect_punct('=')?;
            let d = p.distance()?;
            if a == b && !d.is_zero() {
                return Err(DslError::new(
                    pos,
                    "the distance from an element to itself is 0",
                ));
            }
            if dist.insert((a.min(b), a.max(b)), (d, pos)).is_some() {
                return Err(DslError::new(pos, "this distance is given twice"));
            }
            Ok(true)
        })?;
        let n = ops.size();
        let mut matrix = DistanceMatrix::new(n);
        for i in 0..n {
            for j in i + 1..n {
                match dist.get(&(i, j)) {
                    Some((d, _)) => matrix.set(i, j, *d),
                    None => {
                        let (a, b) = (format_name(ops.element(i)), format_name(ops.element(j)));
                        return Err(DslError::new(
                            decl,
                            format!("missing distance `dist {a} {b}`"),
                        ));
                    }
                }
            }
        }
        QuantAlgebra::new(ops, matrix).map_err(|e| DslError::new(decl, e.to_string()))
    }

    fn structure_body(&mut self, decl: Pos) -> Res<ThresholdStructure<Rational>> {
        let mut pairs: BTreeMap<(usize, usize), Threshold<Rational>> = BTreeMap::new();
        let ops = self.carrier_block(decl, |p, kw, carrier| {
            if kw != "pair" {
                return Ok(false);
            }
            let pos = p.bump().1;
            let (a, b) = (p.element(carrier)?, p.element(carrier)?);
            p.expect_punct(':')?;
            let t = if p.eat_keyword("infinite") {
                Threshold::Never
            } else {
                p.expect_keyword("bound")?;
                let bound = p.rational()?;
                let closed = if p.eat_keyword("closed") {
                    true
                } else if p.eat_keyword("open") {
                    false
                } else {
                    return p.unexpected("`closed` or `open`");
                };
                Threshold::From { bound, closed }
            };
            if pairs.insert((a, b), t).is_some() {
                return Err(DslError::new(pos, "this pair is given twice"));
            }
            Ok(true)
        })?;
        let n = ops.size();
        let mut relation = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let t = match (pairs.get(&(i, j)), pairs.get(&(j, i))) {
                    (Some(t), _) | (None, Some(t)) => t.clone(),
                    (None, None) if i == j => Threshold::closed(Rational::from_integer(0)),
                    (None, None) => {
                        let (a, b) = (format_name(ops.element(i)), format_name(ops.element(j)));
                        return Err(DslError::new(
                            decl,
                            format!("missing threshold `pair {a} {b}`"),
                        ));
                    }
                };
                relation.push(t);
            }
        }
        ThresholdStructure::new(ops, relation).map_err(|e| DslError::new(decl, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = "
        signature { f/1; c/0 }
        vars { x y }
        algebra A { carrier { a b }; op f(a) = b; op f(b) = a; op c = a; dist a b = 1 }
        theory T { [x =[1] y] |- f(x) =[1] f(y); |- f(f(x)) =[0] x }
        structure M {
            carrier { a b }
            op f(a) = b; op f(b) = a; op c() = a
            pair a b : bound 1 open
        }
        formula H { forall x y . (x =[1] y) -> (f(x) =[1] f(y)) }
        proof P { 0: Refl [] :: |- x =[0] x 1: Max [0] :: |- x =[1/2] x }
    ";

    #[test]
    fn demo_parses() {
        let ws = Workspace::parse(DEMO).unwrap();
        assert_eq!(ws.algebras["A"].size(), 2);
        assert!(ws.algebras["A"].is_valid());
        assert_eq!(ws.theories["T"].len(), 2);
        assert_eq!(
            *ws.structures["M"].get(1, 0),
            Threshold::open(Rational::from_integer(1))
        );
        assert_eq!(ws.formulas["H"].body.len(), 1);
        assert_eq!(ws.proofs["P"].steps.len(), 2);
    }

    #[test]
    fn minimal_workspace() {
        let ws = Workspace::parse("algebra A { carrier { a } }").unwrap();
        assert_eq!(ws.algebras.len(), 1);
        assert_eq!(ws.algebras["A"].size(), 1);
    }

    #[test]
    fn missing_distance_names_the_pair() {
        let err = Workspace::parse("algebra A { carrier { a b c }; dist a b = 1; dist b c = 1 }")
            .unwrap_err();
        assert_eq!(err.to_string(), "1:9: missing distance `dist a c`");
    }

    #[test]
    fn missing_operation_entry_names_it() {
        let err = Workspace::parse(
            "signature { f/1 } algebra A { carrier { a b }; op f(a) = a; dist a b = 1 }",
        )
        .unwrap_err();
        assert!(err.message.contains("`f(b)`"), "{err}");
    }

    #[test]
    fn half_is_exact() {
        let ws = Workspace::parse("vars { x y }").unwrap();
        let e = ws.parse_equation("x =[1/2] y").unwrap();
        assert_eq!(e.bound, Rational::new(1, 2));
        assert_eq!(ws.parse_equation("x =[2/4] y").unwrap(), e);
        assert!(ws.parse_equation("x =[1/0] y").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let err = Workspace::parse("vars { x }\ntheory T {\n  |- x =[1] z\n}").unwrap_err();
        assert_eq!(
            err.pos,
            Pos {
                line: 3,
                column: 13
            }
        );
        let err = Workspace::parse("algebra A { carrier { a } }\nalgebra A { carrier { a } }")
            .unwrap_err();
        assert_eq!(err.to_string(), "2:9: algebra `A` is declared twice");
    }

    #[test]
    fn goals_and_formulas_outside_a_file() {
        let ws = Workspace::parse("signature { f/1 } vars { x y z }").unwrap();
        let ce = ws
            .parse_conditional("[x =[1] y ; y =[2] z] |- x =[3] z")
            .unwrap();
        assert_eq!(ce.hypotheses.len(), 2);
        assert!(ws.parse_conditional("|- f(x) =[0] x").is_ok());
        let phi = ws.parse_formula("forall u . (f(u) = u)").unwrap();
        assert!(phi.body.is_empty());
        assert!(ws.parse_term("u").is_err());
        assert!(ws.parse_term("f(x, y)").is_err());
    }
}
