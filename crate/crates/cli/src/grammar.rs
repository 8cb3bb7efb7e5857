//! The element text grammar.
//!
//! ```text
//! bv{n=<n>, r=<r>, H=<name>; domain: <forest>; braid: <word>; labels: [<w1>, …]; range: <forest>}
//! ```
//!
//! Trees are `.` or `(t1 … tn)`, forests are space separated trees, braid
//! tokens are `s<k>` / `S<k>` and an empty label is `-`. `#` starts a comment
//! running to the end of the line.

use std::sync::Arc;

use bvn_core::{BraidWord, Element, Forest, GeneratorTable, GeneratorWord, LabelWord, Node, SubgroupSpec};

use crate::error::CliError;

/// Resolves the `H=` field of an element to a subgroup of `B_n`.
pub trait SpecResolver {
    fn resolve(&self, name: &str, n: usize) -> Result<Arc<SubgroupSpec>, String>;
}

/// Knows `Id`, `B<n>`, fixed specs and subgroup files.
#[derive(Clone, Debug, Default)]
pub struct Specs {
    fixed: Vec<Arc<SubgroupSpec>>,
    files: Vec<(String, String)>,
}

impl Specs {
    pub fn new() -> Self {
        Specs::default()
    }

    pub fn with(mut self, spec: Arc<SubgroupSpec>) -> Self {
        self.fixed.push(spec);
        self
    }

    /// A subgroup file named `stem`, built for whichever `n` asks for it.
    pub fn with_file(mut self, stem: &str, text: &str) -> Self {
        self.files.push((stem.into(), text.into()));
        self
    }
}

impl SpecResolver for Specs {
    fn resolve(&self, name: &str, n: usize) -> Result<Arc<SubgroupSpec>, String> {
        if let Some(s) = self.fixed.iter().find(|s| s.name() == name) {
            if s.arity() != n {
                return Err(format!("subgroup {name} lives in B_{}, element has n={n}", s.arity()));
            }
            return Ok(s.clone());
        }
        if let Some((stem, text)) = self.files.iter().find(|(s, _)| s == name) {
            return parse_subgroup(text, stem, n).map(Arc::new).map_err(|e| format!("subgroup file {stem}: {e}"));
        }
        builtin(name, n)
    }
}

/// `Id` or `B<n>`.
pub fn builtin(name: &str, n: usize) -> Result<Arc<SubgroupSpec>, String> {
    if name == "Id" {
        return Ok(Arc::new(SubgroupSpec::identity(n)));
    }
    if let Some(k) = name.strip_prefix('B').and_then(|k| k.parse::<usize>().ok()) {
        if k != n {
            return Err(format!("{name} does not match n={n}"));
        }
        return Ok(Arc::new(SubgroupSpec::braid_group(n)));
    }
    Err(format!("unknown subgroup `{name}`"))
}

/// Canonical text of an element.
pub fn format_element(v: &Element) -> String {
    let spec = v.spec();
    let labels: Vec<String> = v.labels().iter().map(|l| l.display(spec).to_string()).collect();
    format!(
        "bv{{n={}, r={}, H={}; domain: {}; braid: {}; labels: [{}]; range: {}}}",
        v.arity(),
        v.roots(),
        spec.name(),
        v.domain(),
        v.braid(),
        labels.join(", "),
        v.range()
    )
}

pub fn parse_element(text: &str, specs: &dyn SpecResolver) -> Result<Element, CliError> {
    let mut p = Scanner::new(text);
    let v = p.element(specs)?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("trailing input after element"));
    }
    Ok(v)
}

/// Parses a generator word: names separated by whitespace, each with an
/// optional `^-1`.
pub fn parse_word(text: &str, table: &GeneratorTable) -> Result<GeneratorWord, CliError> {
    let mut p = Scanner::new(text);
    let mut w = GeneratorWord::empty();
    loop {
        p.skip_ws();
        if p.at_end() {
            return Ok(w);
        }
        let (line, col) = (p.line, p.col);
        let tok = p.token();
        let (name, inverse) = match tok.strip_suffix("^-1") {
            Some(base) => (base, true),
            None => (tok.as_str(), false),
        };
        let g = table
            .lookup(name)
            .map_err(|e| CliError::Syntax { line, col, msg: e.to_string() })?;
        let l = bvn_core::GenLetter::new(g);
        w.push(if inverse { l.inv() } else { l });
    }
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Scanner {
    fn new(text: &str) -> Self {
        Scanner { chars: text.chars().collect(), pos: 0, line: 1, col: 1 }
    }

    fn error(&self, msg: impl Into<String>) -> CliError {
        CliError::Syntax { line: self.line, col: self.col, msg: msg.into() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        self.skip_ws();
        match self.peek() {
            Some(d) if d == c => {
                self.bump();
                Ok(())
            }
            Some(d) => Err(self.error(format!("expected `{c}`, found `{d}`"))),
            None => Err(self.error(format!("expected `{c}`, found end of input"))),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), CliError> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let got = self.token_while(|c| c.is_ascii_alphanumeric());
        if got != word {
            return Err(CliError::Syntax { line, col, msg: format!("expected `{word}`, found `{got}`") });
        }
        Ok(())
    }

    fn token_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|&c| f(c)) {
            s.push(c);
            self.bump();
        }
        s
    }

    /// A run of characters up to whitespace or punctuation of the grammar.
    fn token(&mut self) -> String {
        self.token_while(|c| !c.is_whitespace() && !matches!(c, ',' | ';' | '[' | ']' | '{' | '}' | '#'))
    }

    fn number(&mut self) -> Result<usize, CliError> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let digits = self.token_while(|c| c.is_ascii_digit());
        digits
            .parse()
            .map_err(|_| CliError::Syntax { line, col, msg: "expected a number".into() })
    }

    fn field(&mut self, name: &str) -> Result<(), CliError> {
        self.keyword(name)?;
        self.expect(':')
    }

    fn element(&mut self, specs: &dyn SpecResolver) -> Result<Element, CliError> {
        self.keyword("bv")?;
        self.expect('{')?;
        self.keyword("n")?;
        self.expect('=')?;
        let (nl, nc) = (self.line, self.col);
        let n = self.number()?;
        if n < 2 {
            return Err(CliError::Syntax { line: nl, col: nc, msg: format!("arity must be at least 2, got {n}") });
        }
        self.expect(',')?;
        self.keyword("r")?;
        self.expect('=')?;
        let (rl, rc) = (self.line, self.col);
        let r = self.number()?;
        if r < 1 {
            return Err(CliError::Syntax { line: rl, col: rc, msg: "r must be at least 1".into() });
        }
        self.expect(',')?;
        self.keyword("H")?;
        self.expect('=')?;
        self.skip_ws();
        let (hl, hc) = (self.line, self.col);
        let name = self.token();
        let spec = specs.resolve(&name, n).map_err(|msg| CliError::Syntax { line: hl, col: hc, msg })?;
        self.expect(';')?;

        self.field("domain")?;
        let domain = self.forest(n, r)?;
        self.expect(';')?;
        let l = domain.leaf_count();

        self.field("braid")?;
        let braid = self.braid(l)?;
        self.expect(';')?;

        self.field("labels")?;
        let labels = self.labels(&spec, l)?;
        self.expect(';')?;

        self.field("range")?;
        let range = self.forest(n, r)?;
        self.expect('}')?;
        Ok(Element::make(spec, domain, braid, labels, range)?)
    }

    fn forest(&mut self, n: usize, r: usize) -> Result<Forest, CliError> {
        let mut roots = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some('.' | '(') => roots.push(self.node(n)?),
                _ => break,
            }
        }
        if roots.len() != r {
            return Err(self.error(format!("forest has {} trees, expected r={r}", roots.len())));
        }
        Ok(Forest { arity: n, roots })
    }

    fn node(&mut self, n: usize) -> Result<Node, CliError> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        match self.bump() {
            Some('.') => Ok(Node::Leaf),
            Some('(') => {
                let mut ch = Vec::new();
                loop {
                    self.skip_ws();
                    if self.peek() == Some(')') {
                        self.bump();
                        break;
                    }
                    if self.at_end() {
                        return Err(self.error("unclosed caret"));
                    }
                    ch.push(self.node(n)?);
                }
                if ch.len() != n {
                    return Err(CliError::Syntax {
                        line,
                        col,
                        msg: format!("caret has {} children, expected {n}", ch.len()),
                    });
                }
                Ok(Node::Caret(ch))
            }
            Some(c) => Err(CliError::Syntax { line, col, msg: format!("expected `.` or `(`, found `{c}`") }),
            None => Err(self.error("expected a tree, found end of input")),
        }
    }

    fn braid(&mut self, l: usize) -> Result<BraidWord, CliError> {
        let mut letters = Vec::new();
        loop {
            self.skip_ws();
            if matches!(self.peek(), None | Some(';')) {
                break;
            }
            let (line, col) = (self.line, self.col);
            let tok = self.token();
            let bad = |msg: String| CliError::Syntax { line, col, msg };
            let (sign, digits) = match tok.chars().next() {
                Some('s') => (1, &tok[1..]),
                Some('S') => (-1, &tok[1..]),
                _ => return Err(bad(format!("expected a braid token s<k> or S<k>, found `{tok}`"))),
            };
            let k: usize = digits.parse().map_err(|_| bad(format!("bad braid token `{tok}`")))?;
            if k == 0 || k >= l {
                return Err(bad(format!("{tok} needs at least {} strands, the trees have {l} leaves", k + 1)));
            }
            letters.push(sign * k as i32);
        }
        Ok(BraidWord::new(l.max(1), letters)?)
    }

    fn labels(&mut self, spec: &SubgroupSpec, l: usize) -> Result<Vec<LabelWord>, CliError> {
        self.expect('[')?;
        let mut out = Vec::new();
        loop {
            let (line, col) = (self.line, self.col);
            let mut tokens = Vec::new();
            loop {
                self.skip_ws();
                if matches!(self.peek(), None | Some(',' | ']')) {
                    break;
                }
                let (tl, tc) = (self.line, self.col);
                let tok = self.token();
                if tok.is_empty() {
                    return Err(self.error("unexpected character in label"));
                }
                if tok != "-" {
                    let letter = spec
                        .letter(&tok)
                        .map_err(|e| CliError::Syntax { line: tl, col: tc, msg: e.to_string() })?;
                    tokens.push(letter);
                }
            }
            out.push(LabelWord::from_letters(tokens));
            self.skip_ws();
            match self.bump() {
                Some(',') => continue,
                Some(']') => break,
                _ => return Err(CliError::Syntax { line, col, msg: "unterminated label list".into() }),
            }
        }
        if out.len() != l {
            return Err(self.error(format!("{} labels, expected one per leaf ({l})", out.len())));
        }
        Ok(out)
    }
}

/// Reads a subgroup file: one `name = <braid word>` per line, `#` comments.
/// The subgroup is named after `stem`.
pub fn parse_subgroup(text: &str, stem: &str, n: usize) -> Result<SubgroupSpec, CliError> {
    let mut gens = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some((name, word)) = line.split_once('=') else {
            let col = raw.len() - raw.trim_start().len() + 1;
            return Err(CliError::Syntax { line: k + 1, col, msg: "expected `name = <braid word>`".into() });
        };
        let col = name.len() + 2;
        let mut p = Scanner::new(word);
        let b = p.braid(n).map_err(|e| match e {
            CliError::Syntax { col: c, msg, .. } => CliError::Syntax { line: k + 1, col: col + c - 1, msg },
            e => e,
        })?;
        gens.push((name.trim().to_string(), b));
    }
    Ok(SubgroupSpec::custom(stem, n, gens)?)
}
