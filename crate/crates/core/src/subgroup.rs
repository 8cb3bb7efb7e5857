//! Subgroups `H ≤ B_n` given by named generators, and label words over them.

use std::fmt;

use thiserror::Error;

use crate::braid::{free_reduce, BraidWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubgroupError {
    #[error("generator `{0}` is bound to a braid on {1} strands, expected {2}")]
    Strands(String, usize, usize),
    #[error("invalid generator name `{0}`")]
    Name(String),
    #[error("duplicate generator `{0}`")]
    Duplicate(String),
    #[error("unknown generator `{0}`")]
    Unknown(String),
    #[error("arity must be at least 2, got {0}")]
    Arity(usize),
}

/// A named generating set `S_H` with each generator bound to a braid in `B_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupSpec {
    name: String,
    arity: usize,
    gens: Vec<(String, BraidWord)>,
}

impl SubgroupSpec {
    /// The trivial subgroup, written `Id`.
    pub fn identity(n: usize) -> Self {
        SubgroupSpec { name: "Id".into(), arity: n, gens: Vec::new() }
    }

    /// All of `B_n`, with generators `s1 … s{n-1}` bound to the Artin generators.
    pub fn braid_group(n: usize) -> Self {
        let gens = (1..n as i32).map(|i| (format!("s{i}"), BraidWord::sigma(n, i))).collect();
        SubgroupSpec { name: format!("B{n}"), arity: n, gens }
    }

    pub fn custom(name: &str, n: usize, gens: Vec<(String, BraidWord)>) -> Result<Self, SubgroupError> {
        if n < 2 {
            return Err(SubgroupError::Arity(n));
        }
        if !valid_name(name) {
            return Err(SubgroupError::Name(name.into()));
        }
        for (k, (g, w)) in gens.iter().enumerate() {
            if !valid_name(g) || inverse_alias(g).is_some() {
                return Err(SubgroupError::Name(g.clone()));
            }
            if w.strands() != n {
                return Err(SubgroupError::Strands(g.clone(), w.strands(), n));
            }
            if gens[..k].iter().any(|(h, _)| h == g) {
                return Err(SubgroupError::Duplicate(g.clone()));
            }
        }
        Ok(SubgroupSpec { name: name.into(), arity: n, gens })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[(String, BraidWord)] {
        &self.gens
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|(g, _)| g == name)
    }

    pub fn generator_name(&self, k: usize) -> &str {
        &self.gens[k].0
    }

    pub fn generator_braid(&self, k: usize) -> &BraidWord {
        &self.gens[k].1
    }

    /// Resolves a label token: a generator name, `name^-1`, or for names of
    /// the form `s<k>` the capitalised `S<k>`.
    pub fn letter(&self, token: &str) -> Result<LabelLetter, SubgroupError> {
        if let Some(k) = self.index_of(token) {
            return Ok(LabelLetter { generator: k, inverse: false });
        }
        let base = token.strip_suffix("^-1").map(str::to_string).or_else(|| inverse_alias(token));
        match base.and_then(|b| self.index_of(&b)) {
            Some(k) => Ok(LabelLetter { generator: k, inverse: true }),
            None => Err(SubgroupError::Unknown(token.into())),
        }
    }

    pub fn letter_text(&self, l: LabelLetter) -> String {
        let name = self.generator_name(l.generator);
        if !l.inverse {
            name.to_string()
        } else if is_sigma_name(name) {
            format!("S{}", &name[1..])
        } else {
            format!("{name}^-1")
        }
    }

    /// Parses whitespace-separated tokens; `-` or an empty string is the empty word.
    pub fn label(&self, text: &str) -> Result<LabelWord, SubgroupError> {
        let t = text.trim();
        if t == "-" {
            return Ok(LabelWord::empty());
        }
        let letters = t.split_whitespace().map(|tok| self.letter(tok)).collect::<Result<Vec<_>, _>>()?;
        Ok(LabelWord::from_letters(letters))
    }

    /// Label consisting of the single generator `name`.
    pub fn generator(&self, name: &str) -> Result<LabelWord, SubgroupError> {
        let k = self.index_of(name).ok_or_else(|| SubgroupError::Unknown(name.into()))?;
        Ok(LabelWord::from_letters(vec![LabelLetter { generator: k, inverse: false }]))
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s != "-"
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

fn is_sigma_name(s: &str) -> bool {
    s.len() > 1 && s.starts_with('s') && s[1..].bytes().all(|b| b.is_ascii_digit())
}

fn inverse_alias(s: &str) -> Option<String> {
    if s.len() > 1 && s.starts_with('S') && s[1..].bytes().all(|b| b.is_ascii_digit()) {
        Some(format!("s{}", &s[1..]))
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelLetter {
    pub generator: usize,
    pub inverse: bool,
}

/// A freely reduced word over the generators of a [`SubgroupSpec`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LabelWord(Vec<LabelLetter>);

impl LabelWord {
    pub fn empty() -> Self {
        LabelWord(Vec::new())
    }

    pub fn from_letters(letters: Vec<LabelLetter>) -> Self {
        let mut w = LabelWord(Vec::with_capacity(letters.len()));
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: LabelLetter) {
        match self.0.last() {
            Some(&last) if last.generator == l.generator && last.inverse != l.inverse => {
                self.0.pop();
            }
            _ => self.0.push(l),
        }
    }

    pub fn letters(&self) -> &[LabelLetter] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `self` followed by `other` along the strand.
    pub fn concat(&self, other: &LabelWord) -> LabelWord {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> LabelWord {
        LabelWord(self.0.iter().rev().map(|l| LabelLetter { generator: l.generator, inverse: !l.inverse }).collect())
    }

    pub fn is_valid_for(&self, spec: &SubgroupSpec) -> bool {
        self.0.iter().all(|l| l.generator < spec.generator_count())
    }

    /// Artin expansion in `B_n`.
    pub fn to_braid(&self, spec: &SubgroupSpec) -> BraidWord {
        let mut letters = Vec::new();
        for l in &self.0 {
            let b = spec.generator_braid(l.generator);
            if l.inverse {
                letters.extend(b.letters().iter().rev().map(|x| -x));
            } else {
                letters.extend_from_slice(b.letters());
            }
        }
        BraidWord::new(spec.arity(), free_reduce(&letters)).expect("generators live in B_n")
    }

    pub fn is_trivial(&self, spec: &SubgroupSpec) -> bool {
        self.is_empty() || self.to_braid(spec).is_trivial()
    }

    pub fn braid_equal(&self, other: &LabelWord, spec: &SubgroupSpec) -> bool {
        self == other || self.to_braid(spec).equals(&other.to_braid(spec))
    }

    pub fn display<'a>(&'a self, spec: &'a SubgroupSpec) -> LabelDisplay<'a> {
        LabelDisplay { word: self, spec }
    }
}

pub struct LabelDisplay<'a> {
    word: &'a LabelWord,
    spec: &'a SubgroupSpec,
}

impl fmt::Display for LabelDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("-");
        }
        for (k, &l) in self.word.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.spec.letter_text(l))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_group_spec() {
        let b3 = SubgroupSpec::braid_group(3);
        assert_eq!(b3.name(), "B3");
        assert_eq!(b3.generator_count(), 2);
        let w = b3.label("s1 S2 s2 s1").unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.display(&b3).to_string(), "s1 s1");
        assert_eq!(w.inverse().display(&b3).to_string(), "S1 S1");
        assert!(b3.label("s3").is_err());
        assert!(b3.label("-").unwrap().is_empty());
        assert_eq!(SubgroupSpec::identity(2).generator_count(), 0);
    }

    #[test]
    fn custom_spec() {
        let a = BraidWord::new(3, vec![1, 2, -1]).unwrap();
        let spec = SubgroupSpec::custom("P", 3, vec![("a".into(), a.clone())]).unwrap();
        let w = spec.label("a a^-1 a").unwrap();
        assert_eq!(w.display(&spec).to_string(), "a");
        assert_eq!(w.inverse().display(&spec).to_string(), "a^-1");
        assert!(w.to_braid(&spec).equals(&a));
        assert!(SubgroupSpec::custom("P", 3, vec![("a".into(), BraidWord::identity(2))]).is_err());
        assert!(SubgroupSpec::custom("P", 3, vec![("a".into(), a.clone()), ("a".into(), a)]).is_err());
    }

    #[test]
    fn braid_equality_of_spellings() {
        let b3 = SubgroupSpec::braid_group(3);
        let u = b3.label("s1 s2 s1").unwrap();
        let v = b3.label("s2 s1 s2").unwrap();
        assert!(u.braid_equal(&v, &b3));
        assert!(u.concat(&v.inverse()).is_trivial(&b3));
        assert!(!u.is_trivial(&b3));
    }
}
