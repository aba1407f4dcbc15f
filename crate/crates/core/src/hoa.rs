//! Reading and writing automata in the HOA v1 format.
//!
//! Only Büchi acceptance (`Acceptance: 1 Inf(0)`) is supported. Letters are
//! valuations of the declared atomic propositions, so an automaton with `k`
//! propositions has `2^k` letters. Acceptance marks on states and on edges
//! are both kept.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::automaton::{Alphabet, Ba, BaBuilder, Symbol};

/// Propositions beyond this count would make the letter set unmanageable.
pub const MAX_PROPS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HoaError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unsupported acceptance condition: {0}")]
    UnsupportedAcceptance(String),
    #[error("{line}:{col}: proposition {index} is not declared")]
    UndeclaredAp { line: usize, col: usize, index: u64 },
    #[error("{line}:{col}: state {state} is out of range (States: {declared})")]
    StateOutOfRange {
        line: usize,
        col: usize,
        state: u64,
        declared: usize,
    },
    #[error("{line}:{col}: {what} is not supported")]
    Unsupported { line: usize, col: usize, what: String },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Header(String),
    Ident(String),
    Int(u64),
    Str(String),
    Alias(String),
    Punct(char),
    Body,
    End,
    Abort,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> HoaError {
    HoaError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, HoaError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
        if chars[*i] == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
        *i += 1;
    };
    let is_ident_start = |c: char| c.is_ascii_alphabetic() || c == '_';
    let is_ident = |c: char| c.is_ascii_alphanumeric() || c == '_' || c == '-';

    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
        } else if c == '/' && chars.get(i + 1) == Some(&'*') {
            let mut depth = 0;
            loop {
                if i + 1 >= chars.len() {
                    return Err(syntax(tl, tc, "unterminated comment"));
                }
                if chars[i] == '/' && chars[i + 1] == '*' {
                    depth += 1;
                    advance(&mut i, &mut line, &mut col);
                    advance(&mut i, &mut line, &mut col);
                } else if chars[i] == '*' && chars[i + 1] == '/' {
                    depth -= 1;
                    advance(&mut i, &mut line, &mut col);
                    advance(&mut i, &mut line, &mut col);
                    if depth == 0 {
                        break;
                    }
                } else {
                    advance(&mut i, &mut line, &mut col);
                }
            }
        } else if c == '"' {
            advance(&mut i, &mut line, &mut col);
            let mut s = String::new();
            loop {
                let Some(&d) = chars.get(i) else {
                    return Err(syntax(tl, tc, "unterminated string"));
                };
                advance(&mut i, &mut line, &mut col);
                match d {
                    '"' => break,
                    '\\' => {
                        let Some(&e) = chars.get(i) else {
                            return Err(syntax(tl, tc, "unterminated string"));
                        };
                        advance(&mut i, &mut line, &mut col);
                        s.push(e);
                    }
                    _ => s.push(d),
                }
            }
            out.push(Token { tok: Tok::Str(s), line: tl, col: tc });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                advance(&mut i, &mut line, &mut col);
            }
            let v = s.parse().map_err(|_| syntax(tl, tc, "integer too large"))?;
            out.push(Token { tok: Tok::Int(v), line: tl, col: tc });
        } else if c == '@' {
            advance(&mut i, &mut line, &mut col);
            let mut s = String::new();
            while i < chars.len() && is_ident(chars[i]) {
                s.push(chars[i]);
                advance(&mut i, &mut line, &mut col);
            }
            if s.is_empty() {
                return Err(syntax(tl, tc, "empty alias name"));
            }
            out.push(Token { tok: Tok::Alias(s), line: tl, col: tc });
        } else if c == '-' && chars.get(i + 1) == Some(&'-') {
            let mut s = String::new();
            while i < chars.len() && (chars[i] == '-' || chars[i].is_ascii_uppercase()) {
                s.push(chars[i]);
                advance(&mut i, &mut line, &mut col);
            }
            let tok = match s.as_str() {
                "--BODY--" => Tok::Body,
                "--END--" => Tok::End,
                "--ABORT--" => Tok::Abort,
                _ => return Err(syntax(tl, tc, format!("unknown marker `{s}`"))),
            };
            out.push(Token { tok, line: tl, col: tc });
        } else if is_ident_start(c) {
            let mut s = String::new();
            while i < chars.len() && is_ident(chars[i]) {
                s.push(chars[i]);
                advance(&mut i, &mut line, &mut col);
            }
            let tok = if chars.get(i) == Some(&':') {
                advance(&mut i, &mut line, &mut col);
                Tok::Header(s)
            } else {
                Tok::Ident(s)
            };
            out.push(Token { tok, line: tl, col: tc });
        } else if "!&|()[]{}".contains(c) {
            advance(&mut i, &mut line, &mut col);
            out.push(Token { tok: Tok::Punct(c), line: tl, col: tc });
        } else {
            return Err(syntax(tl, tc, format!("unexpected character `{c}`")));
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

#[derive(Clone, Debug)]
enum Label {
    Const(bool),
    Prop(usize),
    Alias(String, usize, usize),
    Not(Box<Label>),
    And(Box<Label>, Box<Label>),
    Or(Box<Label>, Box<Label>),
}

impl Label {
    fn eval(&self, v: usize, aliases: &HashMap<String, Label>, depth: usize) -> Result<bool, HoaError> {
        Ok(match self {
            Label::Const(b) => *b,
            Label::Prop(i) => v >> i & 1 == 1,
            Label::Alias(name, line, col) => {
                let body = aliases
                    .get(name)
                    .ok_or_else(|| syntax(*line, *col, format!("undefined alias @{name}")))?;
                if depth > aliases.len() {
                    return Err(syntax(*line, *col, format!("alias @{name} is recursive")));
                }
                body.eval(v, aliases, depth + 1)?
            }
            Label::Not(a) => !a.eval(v, aliases, depth)?,
            Label::And(a, b) => a.eval(v, aliases, depth)? && b.eval(v, aliases, depth)?,
            Label::Or(a, b) => a.eval(v, aliases, depth)? || b.eval(v, aliases, depth)?,
        })
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    num_props: Option<usize>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: impl Into<String>) -> HoaError {
        let t = self.peek();
        syntax(t.line, t.col, msg)
    }

    fn expect_punct(&mut self, c: char) -> Result<(), HoaError> {
        if self.peek().tok == Tok::Punct(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err_here(format!("expected `{c}`")))
        }
    }

    fn expect_int(&mut self) -> Result<(u64, usize, usize), HoaError> {
        let t = self.bump();
        match t.tok {
            Tok::Int(v) => Ok((v, t.line, t.col)),
            _ => Err(syntax(t.line, t.col, "expected an integer")),
        }
    }

    fn label_or(&mut self) -> Result<Label, HoaError> {
        let mut l = self.label_and()?;
        while self.peek().tok == Tok::Punct('|') {
            self.bump();
            l = Label::Or(Box::new(l), Box::new(self.label_and()?));
        }
        Ok(l)
    }

    fn label_and(&mut self) -> Result<Label, HoaError> {
        let mut l = self.label_not()?;
        while self.peek().tok == Tok::Punct('&') {
            self.bump();
            l = Label::And(Box::new(l), Box::new(self.label_not()?));
        }
        Ok(l)
    }

    fn label_not(&mut self) -> Result<Label, HoaError> {
        if self.peek().tok == Tok::Punct('!') {
            self.bump();
            return Ok(Label::Not(Box::new(self.label_not()?)));
        }
        let t = self.bump();
        match t.tok {
            Tok::Ident(ref s) if s == "t" => Ok(Label::Const(true)),
            Tok::Ident(ref s) if s == "f" => Ok(Label::Const(false)),
            Tok::Int(i) => {
                let declared = self.num_props.unwrap_or(0);
                if i as usize >= declared || i >= MAX_PROPS as u64 {
                    return Err(HoaError::UndeclaredAp {
                        line: t.line,
                        col: t.col,
                        index: i,
                    });
                }
                Ok(Label::Prop(i as usize))
            }
            Tok::Alias(name) => Ok(Label::Alias(name, t.line, t.col)),
            Tok::Punct('(') => {
                let l = self.label_or()?;
                self.expect_punct(')')?;
                Ok(l)
            }
            _ => Err(syntax(t.line, t.col, "expected a label expression")),
        }
    }

    fn bracket_label(&mut self) -> Result<Option<Label>, HoaError> {
        if self.peek().tok != Tok::Punct('[') {
            return Ok(None);
        }
        self.bump();
        let l = self.label_or()?;
        self.expect_punct(']')?;
        Ok(Some(l))
    }

    /// Parses `{i j ...}` and reports whether set 0 occurs.
    fn acc_sig(&mut self) -> Result<bool, HoaError> {
        if self.peek().tok != Tok::Punct('{') {
            return Ok(false);
        }
        self.bump();
        let mut marked = false;
        while self.peek().tok != Tok::Punct('}') {
            let (v, line, col) = self.expect_int()?;
            if v != 0 {
                return Err(syntax(line, col, format!("acceptance set {v} is not declared")));
            }
            marked = true;
        }
        self.bump();
        Ok(marked)
    }

    fn state_index(&mut self) -> Result<(u64, usize, usize), HoaError> {
        let r = self.expect_int()?;
        if self.peek().tok == Tok::Punct('&') {
            let t = self.peek();
            return Err(HoaError::Unsupported {
                line: t.line,
                col: t.col,
                what: "universal branching".into(),
            });
        }
        Ok(r)
    }
}

struct RawEdge {
    label: Option<Label>,
    target: (u64, usize, usize),
    accepting: bool,
}

struct RawState {
    index: (u64, usize, usize),
    label: Option<Label>,
    name: Option<String>,
    accepting: bool,
    edges: Vec<RawEdge>,
}

/// Parses a single HOA automaton.
pub fn parse_hoa(text: &str) -> Result<Ba, HoaError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        num_props: None,
    };

    match p.bump() {
        Token { tok: Tok::Header(h), .. } if h == "HOA" => {}
        t => return Err(syntax(t.line, t.col, "expected `HOA:`")),
    }
    match p.bump() {
        Token { tok: Tok::Ident(v), .. } if v == "v1" => {}
        t => return Err(syntax(t.line, t.col, "expected version `v1`")),
    }

    let mut declared_states: Option<usize> = None;
    let mut starts: Vec<(u64, usize, usize)> = Vec::new();
    let mut props: Vec<String> = Vec::new();
    let mut aliases: HashMap<String, Label> = HashMap::new();
    let mut saw_acceptance = false;

    loop {
        let t = p.bump();
        let name = match t.tok {
            Tok::Body => break,
            Tok::Header(name) => name,
            Tok::Eof => return Err(syntax(t.line, t.col, "missing `--BODY--`")),
            _ => return Err(syntax(t.line, t.col, "expected a header item")),
        };
        match name.as_str() {
            "States" => declared_states = Some(p.expect_int()?.0 as usize),
            "Start" => starts.push(p.state_index()?),
            "AP" => {
                let (k, line, col) = p.expect_int()?;
                if k as usize > MAX_PROPS {
                    return Err(HoaError::Unsupported {
                        line,
                        col,
                        what: format!("{k} propositions (at most {MAX_PROPS})"),
                    });
                }
                for _ in 0..k {
                    match p.bump() {
                        Token { tok: Tok::Str(s), .. } => props.push(s),
                        t => return Err(syntax(t.line, t.col, "expected a proposition name")),
                    }
                }
                p.num_props = Some(k as usize);
            }
            "Alias" => {
                let t = p.bump();
                let Tok::Alias(name) = t.tok else {
                    return Err(syntax(t.line, t.col, "expected an alias name"));
                };
                let l = p.label_or()?;
                aliases.insert(name, l);
            }
            "Acceptance" => {
                let mut parts = Vec::new();
                while !matches!(p.peek().tok, Tok::Header(_) | Tok::Body | Tok::Eof) {
                    parts.push(p.bump().tok);
                }
                let buchi = [
                    Tok::Int(1),
                    Tok::Ident("Inf".into()),
                    Tok::Punct('('),
                    Tok::Int(0),
                    Tok::Punct(')'),
                ];
                if parts != buchi {
                    return Err(HoaError::UnsupportedAcceptance(render(&parts)));
                }
                saw_acceptance = true;
            }
            "acc-name" => {
                let mut parts = Vec::new();
                while !matches!(p.peek().tok, Tok::Header(_) | Tok::Body | Tok::Eof) {
                    parts.push(p.bump().tok);
                }
                if parts != [Tok::Ident("Buchi".into())] {
                    return Err(HoaError::UnsupportedAcceptance(render(&parts)));
                }
            }
            other if other.starts_with(|c: char| c.is_ascii_uppercase()) && !KNOWN.contains(&other) => {
                return Err(HoaError::Unsupported {
                    line: t.line,
                    col: t.col,
                    what: format!("header `{other}:`"),
                });
            }
            _ => {
                while !matches!(p.peek().tok, Tok::Header(_) | Tok::Body | Tok::Eof) {
                    p.bump();
                }
            }
        }
    }
    if !saw_acceptance {
        return Err(HoaError::UnsupportedAcceptance("missing `Acceptance:` header".into()));
    }
    if p.num_props.is_none() {
        p.num_props = Some(0);
    }

    let mut states: Vec<RawState> = Vec::new();
    loop {
        let t = p.bump();
        match t.tok {
            Tok::End => break,
            Tok::Abort => return Err(syntax(t.line, t.col, "automaton was aborted")),
            Tok::Header(ref h) if h == "State" => {}
            _ => return Err(syntax(t.line, t.col, "expected `State:` or `--END--`")),
        }
        let label = p.bracket_label()?;
        let index = p.expect_int()?;
        let name = match p.peek().tok {
            Tok::Str(_) => match p.bump().tok {
                Tok::Str(s) => Some(s),
                _ => unreachable!(),
            },
            _ => None,
        };
        let accepting = p.acc_sig()?;
        let mut edges = Vec::new();
        while matches!(p.peek().tok, Tok::Int(_) | Tok::Punct('[')) {
            let label = p.bracket_label()?;
            let target = p.state_index()?;
            let accepting = p.acc_sig()?;
            edges.push(RawEdge {
                label,
                target,
                accepting,
            });
        }
        states.push(RawState {
            index,
            label,
            name,
            accepting,
            edges,
        });
    }
    match p.peek().tok {
        Tok::Eof => {}
        _ => return Err(p.err_here("trailing input after `--END--`")),
    }

    let n = declared_states.unwrap_or_else(|| {
        let mut m = 0;
        for s in &states {
            m = m.max(s.index.0 as usize + 1);
            for e in &s.edges {
                m = m.max(e.target.0 as usize + 1);
            }
        }
        for s in &starts {
            m = m.max(s.0 as usize + 1);
        }
        m
    });
    let check = |(v, line, col): (u64, usize, usize)| -> Result<usize, HoaError> {
        if (v as usize) < n {
            Ok(v as usize)
        } else {
            Err(HoaError::StateOutOfRange {
                line,
                col,
                state: v,
                declared: n,
            })
        }
    };

    let k = p.num_props.unwrap_or(0);
    let alphabet = Alphabet::from_props(props);
    let letters = 1usize << k;
    let mut b = BaBuilder::new(alphabet, n);
    for s in &starts {
        b.add_initial(check(*s)?);
    }
    for s in states {
        let q = check(s.index)?;
        if s.accepting {
            b.set_accepting(q);
        }
        if let Some(name) = s.name {
            b.set_name(q, name);
        }
        let implicit = s.label.is_none() && s.edges.iter().all(|e| e.label.is_none());
        if implicit && !s.edges.is_empty() && s.edges.len() != letters {
            let (_, line, col) = s.index;
            return Err(syntax(
                line,
                col,
                format!("implicit labels need {letters} edges, found {}", s.edges.len()),
            ));
        }
        for (i, e) in s.edges.iter().enumerate() {
            let target = check(e.target)?;
            let label = match (&s.label, &e.label) {
                (Some(_), Some(_)) => {
                    let (_, line, col) = e.target;
                    return Err(syntax(line, col, "edge label inside a labelled state"));
                }
                (Some(l), None) | (None, Some(l)) => l,
                (None, None) if implicit => {
                    b.add_edge(q, Symbol(i as u32), target, e.accepting);
                    continue;
                }
                (None, None) => {
                    let (_, line, col) = e.target;
                    return Err(syntax(line, col, "edge without a label"));
                }
            };
            for v in 0..letters {
                if label.eval(v, &aliases, 0)? {
                    b.add_edge(q, Symbol(v as u32), target, e.accepting);
                }
            }
        }
    }
    Ok(b.build())
}

const KNOWN: &[&str] = &["HOA", "States", "Start", "AP", "Alias", "Acceptance"];

fn render(parts: &[Tok]) -> String {
    parts
        .iter()
        .map(|t| match t {
            Tok::Int(v) => v.to_string(),
            Tok::Ident(s) | Tok::Header(s) => s.clone(),
            Tok::Punct(c) => c.to_string(),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Alias(s) => format!("@{s}"),
            _ => String::new(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn cube(v: usize, k: usize) -> String {
    (0..k)
        .map(|j| if v >> j & 1 == 1 { j.to_string() } else { format!("!{j}") })
        .collect::<Vec<_>>()
        .join("&")
}

/// Writes `ba` in HOA v1 format.
///
/// Alphabets built from propositions keep their proposition names. Other
/// alphabets are encoded with `⌈log2 |Σ|⌉` fresh propositions `p0, p1, ...`,
/// letter `i` being valuation `i`.
pub fn serialize_hoa(ba: &Ba) -> String {
    let m = ba.num_symbols();
    let props: Vec<String> = match ba.alphabet().props() {
        Some(ps) if 1usize << ps.len() == m => ps.to_vec(),
        _ => {
            let k = (usize::BITS - (m - 1).leading_zeros()) as usize;
            (0..k).map(|j| format!("p{j}")).collect()
        }
    };
    let k = props.len();

    let mut out = String::new();
    out.push_str("HOA: v1\n");
    let _ = writeln!(out, "States: {}", ba.num_states());
    for q in ba.initial() {
        let _ = writeln!(out, "Start: {q}");
    }
    let _ = write!(out, "AP: {k}");
    for p in &props {
        let _ = write!(out, " {}", quote(p));
    }
    out.push('\n');
    out.push_str("acc-name: Buchi\nAcceptance: 1 Inf(0)\nproperties: trans-labels explicit-labels\n");
    out.push_str("--BODY--\n");
    for q in ba.states() {
        let _ = write!(out, "State: {q}");
        if let Some(name) = ba.name(q) {
            let _ = write!(out, " {}", quote(name));
        }
        if ba.is_accepting(q) {
            out.push_str(" {0}");
        }
        out.push('\n');
        let mut groups: BTreeMap<(usize, bool), Vec<usize>> = BTreeMap::new();
        for a in ba.symbols() {
            for e in ba.edges(q, a) {
                groups.entry((e.target, e.accepting)).or_default().push(a.index());
            }
        }
        for ((target, accepting), letters) in groups {
            let label = if letters.len() == 1usize << k {
                "t".to_string()
            } else {
                letters.iter().map(|&v| cube(v, k)).collect::<Vec<_>>().join(" | ")
            };
            let _ = write!(out, "[{label}] {target}");
            if accepting {
                out.push_str(" {0}");
            }
            out.push('\n');
        }
    }
    out.push_str("--END--\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_mixed_acceptance() {
        let text = r#"HOA: v1
States: 2
Start: 0
AP: 1 "a"
acc-name: Buchi
Acceptance: 1 Inf(0)
--BODY--
State: 0
[0] 0
[!0] 1 {0}
State: 1 {0}
[t] 1
--END--
"#;
        let ba = parse_hoa(text).unwrap();
        assert_eq!(ba.num_symbols(), 2);
        assert_eq!(ba.transition(0, Symbol(1), 0), Some(false));
        assert_eq!(ba.transition(0, Symbol(0), 1), Some(true));
        assert!(ba.is_accepting(1));
        assert_eq!(ba.edges(1, Symbol(0)).len(), 1);
    }

    #[test]
    fn aliases_comments_and_implicit_labels() {
        let text = r#"HOA: v1 /* outer /* nested */ */
States: 1
Start: 0
AP: 2 "a" "b"
Alias: @both 0 & 1
Acceptance: 1 Inf(0)
--BODY--
State: 0 "only" {0}
0 0 0 0
--END--"#;
        let ba = parse_hoa(text).unwrap();
        assert_eq!(ba.num_transitions(), 4);
        assert_eq!(ba.name(0), Some("only"));
        let with_alias = text.replace("0 0 0 0", "[@both | !0] 0");
        let ba = parse_hoa(&with_alias).unwrap();
        assert_eq!(ba.num_transitions(), 3);
        assert!(ba.edges(0, Symbol(1)).is_empty());
    }

    #[test]
    fn rejects_other_acceptance() {
        let text = "HOA: v1\nStates: 1\nAcceptance: 2 Inf(0) & Inf(1)\n--BODY--\n--END--\n";
        assert!(matches!(parse_hoa(text), Err(HoaError::UnsupportedAcceptance(_))));
        let text = "HOA: v1\nStates: 1\nacc-name: generalized-Buchi 2\nAcceptance: 1 Inf(0)\n--BODY--\n--END--\n";
        assert!(matches!(parse_hoa(text), Err(HoaError::UnsupportedAcceptance(_))));
    }

    #[test]
    fn rejects_alternation_and_bad_references() {
        let base = "HOA: v1\nStates: 2\nStart: 0\nAP: 1 \"a\"\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0\n";
        assert!(matches!(
            parse_hoa(&format!("{base}[0] 0&1\n--END--\n")),
            Err(HoaError::Unsupported { .. })
        ));
        assert!(matches!(
            parse_hoa(&format!("{base}[1] 0\n--END--\n")),
            Err(HoaError::UndeclaredAp { index: 1, .. })
        ));
        assert!(matches!(
            parse_hoa(&format!("{base}[0] 5\n--END--\n")),
            Err(HoaError::StateOutOfRange { state: 5, .. })
        ));
        let err = parse_hoa(&format!("{base}[0 0\n--END--\n")).unwrap_err();
        assert!(matches!(err, HoaError::Syntax { line: 8, .. }), "{err:?}");
    }

    #[test]
    fn multiple_start_lines() {
        let text = "HOA: v1\nStates: 2\nStart: 0\nStart: 1\nAP: 0\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0\n[t] 1\nState: 1\n--END--\n";
        let ba = parse_hoa(text).unwrap();
        assert_eq!(ba.initial().len(), 2);
        assert_eq!(ba.num_symbols(), 1);
    }

    #[test]
    fn round_trip_fixtures() {
        for ba in [
            fixtures::running_example(),
            fixtures::mixed_example(),
            fixtures::elevator_chain(),
            fixtures::dataflow_example(),
        ] {
            let text = serialize_hoa(&ba);
            let back = parse_hoa(&text).unwrap();
            assert!(back.same_structure(&ba), "{text}");
        }
    }

    #[test]
    fn single_letter_uses_no_props() {
        let text = serialize_hoa(&fixtures::dataflow_example());
        assert!(text.contains("AP: 0\n"));
        assert!(text.contains("[t] 0"));
    }
}
