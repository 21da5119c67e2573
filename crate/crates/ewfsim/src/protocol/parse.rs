//! Line-oriented protocol grammar: lexer and recursive-descent parser.
//!
//! Statements (`#` starts a comment):
//!
//! ```text
//! register <name> { <label> … } [ready <label>]
//! init <name> = <scalar>|<label>> [+ <scalar>|<label>> …]
//! basis <name> on <reg>[,<reg>…] { <vec> = <scalar>|<lbl,…>> [± …] ; … }
//! step <id> measure <basis-or-register> recorder <reg> outcomes { <vec> -> <label>; … }
//! step <id> prepare <target> by <control> { <label> -> <scalar>|<label>> [+ …]; … }
//! step <id> postselect <event>
//! perspective <name> { <step-id> collapse <vec>; … }
//! query at <step-id> probability <event>
//! ```
//!
//! Event atoms are `<reg>=<label>` or `<basis>:<vec>`, joined by `&`. Scalar
//! literals are signed rationals `p/q`, `sqrt(n)`, products and monomial
//! quotients, with sums in parentheses. Naming a register in a `measure` step
//! means its computational basis over the labels listed in `outcomes`.
//! Registers must be declared before any other statement kind.

use std::sync::Arc;

use thiserror::Error;

use crate::basis::{Basis, BasisVector};
use crate::event::{Event, EventAtom};
use crate::scalar::RadicalScalar;
use crate::state::StateVector;
use crate::system::{RegisterSpec, SystemSpec};

use super::{Perspective, ProtocolSpec, Query, Step, StepKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("semantic error at line {line}: {message}")]
    Semantic { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Pipe,
    Gt,
    Comma,
    Semi,
    Eq,
    Arrow,
    Plus,
    Minus,
    Star,
    Slash,
    Colon,
    Amp,
    Newline,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        macro_rules! push {
            ($tok:expr) => {
                toks.push(Token {
                    tok: $tok,
                    line: tline,
                    col: tcol,
                })
            };
        }
        match c {
            '\n' => {
                push!(Tok::Newline);
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            ' ' | '\t' | '\r' => {}
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '{' => push!(Tok::LBrace),
            '}' => push!(Tok::RBrace),
            '(' => push!(Tok::LParen),
            ')' => push!(Tok::RParen),
            '|' => push!(Tok::Pipe),
            '>' => push!(Tok::Gt),
            ',' => push!(Tok::Comma),
            ';' => push!(Tok::Semi),
            '=' => push!(Tok::Eq),
            '+' => push!(Tok::Plus),
            '*' => push!(Tok::Star),
            '/' => push!(Tok::Slash),
            ':' => push!(Tok::Colon),
            '&' => push!(Tok::Amp),
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    push!(Tok::Arrow);
                    i += 2;
                    col += 2;
                    continue;
                }
                push!(Tok::Minus);
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let start_alpha = c.is_ascii_alphabetic();
                let mut word = String::new();
                while i < chars.len() {
                    let ch = chars[i];
                    if ch.is_ascii_alphanumeric() || ch == '_' {
                        word.push(ch);
                        i += 1;
                        col += 1;
                    } else if ch == '-'
                        && start_alpha
                        && chars
                            .get(i + 1)
                            .map(|n| n.is_ascii_alphanumeric() || *n == '_')
                            .unwrap_or(false)
                    {
                        // hyphenated identifiers like `fbar-collapse`; `->` and
                        // numeric subtraction never match this rule
                        word.push('-');
                        i += 1;
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push(Token {
                    tok: Tok::Word(word),
                    line: tline,
                    col: tcol,
                });
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    message: format!("unexpected character `{}`", other),
                });
            }
        }
        i += 1;
        col += 1;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    last_line: usize,
}

impl Parser {
    fn new(toks: Vec<Token>) -> Self {
        let last_line = toks.last().map(|t| t.line).unwrap_or(1);
        Self {
            toks,
            pos: 0,
            last_line,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn position(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or((self.last_line, 1))
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.position();
        ParseError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }

    fn semantic(&self, message: impl Into<String>) -> ParseError {
        let (line, _) = self.position();
        ParseError::Semantic {
            line,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected {}", what)))
        }
    }

    fn expect_word(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.syntax(format!("expected {}", what))),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let w = self.expect_word(&format!("keyword `{}`", kw))?;
        if w == kw {
            Ok(())
        } else {
            Err(self.syntax(format!("expected keyword `{}`, found `{}`", kw, w)))
        }
    }

    fn skip_newlines(&mut self) {
        while self.peek() == Some(&Tok::Newline) {
            self.pos += 1;
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    // ---- scalar literals -------------------------------------------------

    fn parse_int(&mut self) -> Result<u64, ParseError> {
        let w = self.expect_word("integer")?;
        w.parse::<u64>()
            .map_err(|_| self.syntax(format!("expected integer, found `{}`", w)))
    }

    fn parse_atom(&mut self) -> Result<RadicalScalar, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.parse_atom()?)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let s = self.parse_sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(s)
            }
            Some(Tok::Word(w)) if w == "sqrt" => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(` after sqrt")?;
                let n = self.parse_int()?;
                if n == 0 {
                    return Err(self.semantic("sqrt radicand must be positive".to_string()));
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(RadicalScalar::sqrt_int(n))
            }
            Some(Tok::Word(_)) => {
                let n = self.parse_int()?;
                Ok(RadicalScalar::from_int(n as i64))
            }
            _ => Err(self.syntax("expected scalar")),
        }
    }

    fn parse_product(&mut self) -> Result<RadicalScalar, ParseError> {
        let mut acc = self.parse_atom()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.parse_atom()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let divisor = self.parse_atom()?;
                    let inv = divisor
                        .invert_monomial()
                        .map_err(|e| self.semantic(e.to_string()))?;
                    acc = &acc * &inv;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_sum(&mut self) -> Result<RadicalScalar, ParseError> {
        let mut acc = self.parse_product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.parse_product()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.parse_product()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // ---- kets and superpositions ----------------------------------------

    fn parse_ket(&mut self) -> Result<Vec<String>, ParseError> {
        self.expect(Tok::Pipe, "`|`")?;
        let mut labels = vec![self.expect_word("label")?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            labels.push(self.expect_word("label")?);
        }
        self.expect(Tok::Gt, "`>`")?;
        Ok(labels)
    }

    /// `[coeff]|lbl,…> [± [coeff]|lbl,…> …]`, coefficient defaulting to 1.
    fn parse_components(&mut self) -> Result<Vec<(Vec<String>, RadicalScalar)>, ParseError> {
        let mut out = Vec::new();
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            negate = true;
        }
        loop {
            let coeff = if self.peek() == Some(&Tok::Pipe) {
                RadicalScalar::one()
            } else {
                self.parse_product()?
            };
            let coeff = if negate { -coeff } else { coeff };
            let labels = self.parse_ket()?;
            out.push((labels, coeff));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    negate = false;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(out)
    }
}

struct Builder {
    system: Option<Arc<SystemSpec>>,
    registers: Vec<RegisterSpec>,
    inits: Vec<(usize, Vec<(u16, RadicalScalar)>)>,
    bases: Vec<Basis>,
    steps: Vec<Step>,
    perspectives: Vec<Perspective>,
    queries: Vec<Query>,
}

impl Builder {
    fn freeze(&mut self, p: &Parser) -> Result<Arc<SystemSpec>, ParseError> {
        if let Some(sys) = &self.system {
            return Ok(sys.clone());
        }
        if self.registers.is_empty() {
            return Err(p.semantic("no registers declared"));
        }
        let sys = Arc::new(
            SystemSpec::new(self.registers.clone()).map_err(|e| p.semantic(e.to_string()))?,
        );
        self.system = Some(sys.clone());
        Ok(sys)
    }

    fn register_index(&self, p: &Parser, name: &str) -> Result<usize, ParseError> {
        self.registers
            .iter()
            .position(|r| r.name() == name)
            .ok_or_else(|| p.semantic(format!("unknown register `{}`", name)))
    }
}

fn resolve_superposition(
    p: &Parser,
    reg: &RegisterSpec,
    components: Vec<(Vec<String>, RadicalScalar)>,
) -> Result<Vec<(u16, RadicalScalar)>, ParseError> {
    let mut out = Vec::new();
    for (labels, coeff) in components {
        if labels.len() != 1 {
            return Err(p.semantic(format!("register `{}` takes single-label kets", reg.name())));
        }
        let idx = reg
            .label_index(&labels[0])
            .map_err(|e| p.semantic(e.to_string()))?;
        out.push((idx, coeff));
    }
    Ok(out)
}

fn parse_event_atoms(p: &mut Parser, b: &Builder) -> Result<Event, ParseError> {
    let mut atoms = Vec::new();
    loop {
        let name = p.expect_word("event atom")?;
        match p.peek() {
            Some(Tok::Eq) => {
                p.pos += 1;
                let label = p.expect_word("label")?;
                let register = b.register_index(p, &name)?;
                let label = b.registers[register]
                    .label_index(&label)
                    .map_err(|e| p.semantic(e.to_string()))?;
                atoms.push(EventAtom::Label { register, label });
            }
            Some(Tok::Colon) => {
                p.pos += 1;
                let vector = p.expect_word("basis vector")?;
                let basis = b
                    .bases
                    .iter()
                    .find(|x| x.name() == name)
                    .ok_or_else(|| p.semantic(format!("unknown basis `{}`", name)))?;
                let idx = basis.vector_index(&vector).ok_or_else(|| {
                    p.semantic(format!("basis `{}` has no vector `{}`", name, vector))
                })?;
                atoms.push(EventAtom::Vector {
                    basis: basis.clone(),
                    vector: idx,
                });
            }
            _ => return Err(p.syntax("expected `=` or `:` in event atom")),
        }
        if p.peek() == Some(&Tok::Amp) {
            p.pos += 1;
        } else {
            break;
        }
    }
    Event::new(atoms).map_err(|e| p.semantic(e.to_string()))
}

/// Separator inside a `{ … }` block: `;` or newline, repeated.
fn skip_separators(p: &mut Parser) {
    while matches!(p.peek(), Some(Tok::Semi) | Some(Tok::Newline)) {
        p.pos += 1;
    }
}

fn parse_register_stmt(p: &mut Parser, b: &mut Builder) -> Result<(), ParseError> {
    if b.system.is_some() {
        return Err(p.semantic("registers must be declared before other statements"));
    }
    let name = p.expect_word("register name")?;
    p.expect(Tok::LBrace, "`{`")?;
    let mut labels = Vec::new();
    while let Some(Tok::Word(_)) = p.peek() {
        labels.push(p.expect_word("label")?);
    }
    p.expect(Tok::RBrace, "`}`")?;
    let ready = if matches!(p.peek(), Some(Tok::Word(w)) if w == "ready") {
        p.pos += 1;
        Some(p.expect_word("ready label")?)
    } else {
        None
    };
    let reg = RegisterSpec::new(name.clone(), labels, ready.as_deref())
        .map_err(|e| p.semantic(e.to_string()))?;
    if b.registers.iter().any(|r| r.name() == name) {
        return Err(p.semantic(format!("duplicate register name `{}`", name)));
    }
    b.registers.push(reg);
    Ok(())
}

fn parse_init_stmt(p: &mut Parser, b: &mut Builder) -> Result<(), ParseError> {
    b.freeze(p)?;
    let name = p.expect_word("register name")?;
    let register = b.register_index(p, &name)?;
    if b.inits.iter().any(|(r, _)| *r == register) {
        return Err(p.semantic(format!("register `{}` initialized twice", name)));
    }
    p.expect(Tok::Eq, "`=`")?;
    let components = p.parse_components()?;
    let sup = resolve_superposition(p, &b.registers[register], components)?;
    b.inits.push((register, sup));
    Ok(())
}

fn parse_basis_stmt(p: &mut Parser, b: &mut Builder) -> Result<(), ParseError> {
    let sys = b.freeze(p)?;
    let name = p.expect_word("basis name")?;
    if b.bases.iter().any(|x| x.name() == name) {
        return Err(p.semantic(format!("duplicate basis name `{}`", name)));
    }
    p.expect_keyword("on")?;
    let first = p.expect_word("register name")?;
    let mut subsystems = vec![b.register_index(p, &first)?];
    while p.peek() == Some(&Tok::Comma) {
        p.pos += 1;
        let next = p.expect_word("register name")?;
        subsystems.push(b.register_index(p, &next)?);
    }
    p.expect(Tok::LBrace, "`{`")?;
    let mut vectors = Vec::new();
    loop {
        skip_separators(p);
        if p.peek() == Some(&Tok::RBrace) {
            p.pos += 1;
            break;
        }
        let vec_name = p.expect_word("basis vector name")?;
        p.expect(Tok::Eq, "`=`")?;
        let components = p.parse_components()?;
        let mut resolved = Vec::new();
        for (labels, coeff) in components {
            if labels.len() != subsystems.len() {
                return Err(p.semantic(format!(
                    "basis `{}` vector `{}`: ket arity {} does not match {} subsystems",
                    name,
                    vec_name,
                    labels.len(),
                    subsystems.len()
                )));
            }
            let tuple: Vec<u16> = labels
                .iter()
                .zip(&subsystems)
                .map(|(l, &reg)| {
                    b.registers[reg]
                        .label_index(l)
                        .map_err(|e| p.semantic(e.to_string()))
                })
                .collect::<Result<_, _>>()?;
            resolved.push((tuple, coeff));
        }
        vectors.push(BasisVector {
            name: vec_name,
            components: resolved,
        });
    }
    let basis =
        Basis::new(name, &sys, subsystems, vectors).map_err(|e| p.semantic(e.to_string()))?;
    b.bases.push(basis);
    Ok(())
}

fn parse_step_stmt(p: &mut Parser, b: &mut Builder) -> Result<(), ParseError> {
    let sys = b.freeze(p)?;
    let id = p.expect_word("step id")?;
    if b.steps.iter().any(|s| s.id == id) {
        return Err(p.semantic(format!("duplicate step id `{}`", id)));
    }
    let kind_word = p.expect_word("step kind")?;
    let kind = match kind_word.as_str() {
        "measure" => {
            let basis_name = p.expect_word("basis or register name")?;
            p.expect_keyword("recorder")?;
            let recorder_name = p.expect_word("recorder register")?;
            let recorder = b.register_index(p, &recorder_name)?;
            p.expect_keyword("outcomes")?;
            p.expect(Tok::LBrace, "`{`")?;
            let mut entries: Vec<(String, String)> = Vec::new();
            loop {
                skip_separators(p);
                if p.peek() == Some(&Tok::RBrace) {
                    p.pos += 1;
                    break;
                }
                let vec_name = p.expect_word("outcome name")?;
                p.expect(Tok::Arrow, "`->`")?;
                let label = p.expect_word("recorder label")?;
                entries.push((vec_name, label));
            }
            let (basis, computational) = match b.bases.iter().find(|x| x.name() == basis_name) {
                Some(basis) => (basis.clone(), false),
                None => {
                    // a register name: computational basis over the labels
                    // named in the outcome map, in listed order
                    let reg = b.register_index(p, &basis_name).map_err(|_| {
                        p.semantic(format!(
                            "`{}` is neither a declared basis nor a register",
                            basis_name
                        ))
                    })?;
                    let labels: Vec<u16> = entries
                        .iter()
                        .map(|(l, _)| {
                            b.registers[reg]
                                .label_index(l)
                                .map_err(|e| p.semantic(e.to_string()))
                        })
                        .collect::<Result<_, _>>()?;
                    let basis = Basis::computational(basis_name.clone(), &sys, reg, &labels)
                        .map_err(|e| p.semantic(e.to_string()))?;
                    (basis, true)
                }
            };
            let mut outcomes = Vec::new();
            for (vec_name, label) in &entries {
                let vi = basis.vector_index(vec_name).ok_or_else(|| {
                    p.semantic(format!(
                        "basis `{}` has no vector `{}`",
                        basis.name(),
                        vec_name
                    ))
                })?;
                let li = b.registers[recorder]
                    .label_index(label)
                    .map_err(|e| p.semantic(e.to_string()))?;
                outcomes.push((vi, li));
            }
            for (vi, v) in basis.vectors().iter().enumerate() {
                if !outcomes.iter().any(|(o, _)| *o == vi) {
                    return Err(p.semantic(format!(
                        "outcome map for step `{}` misses basis vector `{}`",
                        id, v.name
                    )));
                }
            }
            StepKind::Measure {
                basis,
                computational,
                recorder,
                outcomes,
            }
        }
        "prepare" => {
            let target_name = p.expect_word("target register")?;
            let target = b.register_index(p, &target_name)?;
            p.expect_keyword("by")?;
            let control_name = p.expect_word("control register")?;
            let control = b.register_index(p, &control_name)?;
            p.expect(Tok::LBrace, "`{`")?;
            let mut rules = Vec::new();
            loop {
                skip_separators(p);
                if p.peek() == Some(&Tok::RBrace) {
                    p.pos += 1;
                    break;
                }
                let label = p.expect_word("control label")?;
                let li = b.registers[control]
                    .label_index(&label)
                    .map_err(|e| p.semantic(e.to_string()))?;
                p.expect(Tok::Arrow, "`->`")?;
                let components = p.parse_components()?;
                let sup = resolve_superposition(p, &b.registers[target], components)?;
                rules.push((li, sup));
            }
            StepKind::Prepare {
                target,
                control,
                rules,
            }
        }
        "postselect" => StepKind::Postselect(parse_event_atoms(p, b)?),
        other => return Err(p.syntax(format!("unknown step kind `{}`", other))),
    };
    b.steps.push(Step { id, kind });
    Ok(())
}

fn parse_perspective_stmt(p: &mut Parser, b: &mut Builder) -> Result<(), ParseError> {
    let name = p.expect_word("perspective name")?;
    if b.perspectives.iter().any(|x| x.name == name) {
        return Err(p.semantic(format!("duplicate perspective name `{}`", name)));
    }
    p.expect(Tok::LBrace, "`{`")?;
    let mut overrides = Vec::new();
    loop {
        skip_separators(p);
        if p.peek() == Some(&Tok::RBrace) {
            p.pos += 1;
            break;
        }
        let step_id = p.expect_word("step id")?;
        p.expect_keyword("collapse")?;
        let vector = p.expect_word("outcome name")?;
        let step =
            b.steps.iter().find(|s| s.id == step_id).ok_or_else(|| {
                p.semantic(format!("override references unknown step `{}`", step_id))
            })?;
        match &step.kind {
            StepKind::Measure { basis, .. } => {
                if basis.vector_index(&vector).is_none() {
                    return Err(p.semantic(format!(
                        "step `{}` basis `{}` has no outcome `{}`",
                        step_id,
                        basis.name(),
                        vector
                    )));
                }
            }
            _ => {
                return Err(p.semantic(format!("override targets non-measure step `{}`", step_id)));
            }
        }
        overrides.push((step_id, vector));
    }
    b.perspectives.push(Perspective { name, overrides });
    Ok(())
}

fn parse_query_stmt(p: &mut Parser, b: &mut Builder) -> Result<(), ParseError> {
    p.expect_keyword("at")?;
    let at = p.expect_word("step id")?;
    if !b.steps.iter().any(|s| s.id == at) {
        return Err(p.semantic(format!("query references unknown step `{}`", at)));
    }
    p.expect_keyword("probability")?;
    let event = parse_event_atoms(p, b)?;
    b.queries.push(Query { at, event });
    Ok(())
}

/// Parses and fully validates a protocol text.
pub fn parse_protocol(text: &str) -> Result<ProtocolSpec, ParseError> {
    let mut p = Parser::new(lex(text)?);
    let mut b = Builder {
        system: None,
        registers: Vec::new(),
        inits: Vec::new(),
        bases: Vec::new(),
        steps: Vec::new(),
        perspectives: Vec::new(),
        queries: Vec::new(),
    };
    let mut statements = 0usize;
    loop {
        p.skip_newlines();
        if p.at_end() {
            break;
        }
        let kw = p.expect_word("statement keyword")?;
        match kw.as_str() {
            "register" => parse_register_stmt(&mut p, &mut b)?,
            "init" => parse_init_stmt(&mut p, &mut b)?,
            "basis" => parse_basis_stmt(&mut p, &mut b)?,
            "step" => parse_step_stmt(&mut p, &mut b)?,
            "perspective" => parse_perspective_stmt(&mut p, &mut b)?,
            "query" => parse_query_stmt(&mut p, &mut b)?,
            other => return Err(p.syntax(format!("unknown statement `{}`", other))),
        }
        statements += 1;
        if !p.at_end() {
            if p.peek() == Some(&Tok::Newline) {
                p.pos += 1;
            } else {
                return Err(p.syntax("expected end of line"));
            }
        }
    }
    if statements == 0 {
        return Err(ParseError::Syntax {
            line: 1,
            col: 1,
            message: "empty protocol".to_string(),
        });
    }
    let system = b.freeze(&p)?;
    // dry-build the initial state so init errors surface at parse time
    StateVector::build_initial(system.clone(), &b.inits).map_err(|e| ParseError::Semantic {
        line: 1,
        message: e.to_string(),
    })?;
    Ok(ProtocolSpec {
        system,
        inits: b.inits,
        bases: b.bases,
        steps: b.steps,
        perspectives: b.perspectives,
        queries: b.queries,
    })
}

/// Parses a standalone event string (e.g. a CLI flag) against a spec.
pub fn parse_event(spec: &ProtocolSpec, text: &str) -> Result<Event, ParseError> {
    let mut p = Parser::new(lex(text)?);
    let b = Builder {
        system: Some(spec.system.clone()),
        registers: spec.system.registers().to_vec(),
        inits: Vec::new(),
        bases: spec.bases.clone(),
        steps: Vec::new(),
        perspectives: Vec::new(),
        queries: Vec::new(),
    };
    p.skip_newlines();
    let event = parse_event_atoms(&mut p, &b)?;
    p.skip_newlines();
    if !p.at_end() {
        return Err(p.syntax("trailing input after event"));
    }
    Ok(event)
}
