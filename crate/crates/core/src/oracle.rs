//! Brute-force semantics used to cross-check the matrix evaluations.
//!
//! * Path sums: every orientation- and label-preserving map of the chain
//!   graph `I(ω)` or the circle graph `𝕊(ω)` into the automaton's graph,
//!   enumerated vertex by vertex.
//! * Regular expressions matched by Brzozowski derivatives. Syntax: letters
//!   (single characters), juxtaposition, `+` for union, postfix `*`,
//!   parentheses, and the keywords `eps` and `empty`.

use std::fmt;
use std::rc::Rc;

use crate::automaton::Nfa;
use crate::error::{Error, Result};
use crate::semiring::Semiring;
use crate::word::Word;

/// Limits on brute-force enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_len: usize,
    pub max_states: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_len: 8,
            max_states: 8,
        }
    }
}

impl Caps {
    fn check(&self, nfa: &Nfa, w: &Word) -> Result<()> {
        if w.len() > self.max_len {
            return Err(Error::Capacity(format!(
                "oracle word length {} exceeds {}",
                w.len(),
                self.max_len
            )));
        }
        if nfa.num_states() > self.max_states {
            return Err(Error::Capacity(format!(
                "oracle automaton has {} states, limit {}",
                nfa.num_states(),
                self.max_states
            )));
        }
        Ok(())
    }
}

/// Count maps `I(ω) → Γ(Q)` that start in `Q_in` and end in `Q_t`.
pub fn chain_map_sum<S: Semiring>(nfa: &Nfa, w: &Word) -> Result<S> {
    chain_map_sum_capped(nfa, w, Caps::default())
}

pub fn chain_map_sum_capped<S: Semiring>(nfa: &Nfa, w: &Word, caps: Caps) -> Result<S> {
    caps.check(nfa, w)?;
    let letters = nfa.resolve(w)?;
    let mut total = S::ZERO;
    let mut path = Vec::with_capacity(letters.len() + 1);
    for v0 in 0..nfa.num_states() {
        path.push(v0);
        extend_chain(nfa, &letters, &mut path, &mut |p: &[usize]| {
            let ok = nfa.initial().contains(&p[0]) && nfa.accepting().contains(p.last().expect("non-empty"));
            if ok {
                total = total.add(S::ONE);
            }
        });
        path.pop();
    }
    Ok(total)
}

fn extend_chain(nfa: &Nfa, letters: &[usize], path: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    let i = path.len() - 1;
    if i == letters.len() {
        visit(path);
        return;
    }
    let here = path[i];
    for next in 0..nfa.num_states() {
        if nfa.has_transition(here, letters[i], next) {
            path.push(next);
            extend_chain(nfa, letters, path, visit);
            path.pop();
        }
    }
}

/// Count maps `𝕊(ω) → Γ(Q)`. The undecorated circle has one vertex and
/// no edges, so it contributes `|Q|`.
pub fn circle_map_sum<S: Semiring>(nfa: &Nfa, w: &Word) -> Result<S> {
    circle_map_sum_at(nfa, w, 0)
}

/// As [`circle_map_sum`], with the enumeration starting at vertex
/// `basepoint` of the circle graph (taken mod `|ω|`).
pub fn circle_map_sum_at<S: Semiring>(nfa: &Nfa, w: &Word, basepoint: usize) -> Result<S> {
    Caps::default().check(nfa, w)?;
    let letters = nfa.resolve(w)?;
    if letters.is_empty() {
        return Ok((0..nfa.num_states()).fold(S::ZERO, |acc, _| acc.add(S::ONE)));
    }
    let n = letters.len();
    let b = basepoint % n;
    // the circle read from the basepoint is the chain of the rotated word
    let rotated: Vec<usize> = (0..n).map(|i| letters[(b + i) % n]).collect();
    let mut total = S::ZERO;
    let mut path = Vec::with_capacity(n + 1);
    for v0 in 0..nfa.num_states() {
        path.push(v0);
        extend_chain(nfa, &rotated, &mut path, &mut |p: &[usize]| {
            if p[0] == p[n] {
                total = total.add(S::ONE);
            }
        });
        path.pop();
    }
    Ok(total)
}

/// Regular expression syntax tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regex {
    Empty,
    Eps,
    Letter(String),
    Cat(Rc<Regex>, Rc<Regex>),
    Alt(Rc<Regex>, Rc<Regex>),
    Star(Rc<Regex>),
}

impl Regex {
    pub fn parse(pattern: &str) -> Result<Regex> {
        let mut p = RegexParser {
            chars: pattern.chars().collect(),
            pos: 0,
        };
        let re = p.alt()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
        }
        Ok(re)
    }

    fn cat(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, _) | (_, Regex::Empty) => Regex::Empty,
            (Regex::Eps, r) | (r, Regex::Eps) => r,
            (a, b) => Regex::Cat(Rc::new(a), Rc::new(b)),
        }
    }

    fn alt(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, r) | (r, Regex::Empty) => r,
            (a, b) if a == b => a,
            (a, b) => {
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                Regex::Alt(Rc::new(a), Rc::new(b))
            }
        }
    }

    fn star(a: Regex) -> Regex {
        match a {
            Regex::Empty | Regex::Eps => Regex::Eps,
            s @ Regex::Star(_) => s,
            a => Regex::Star(Rc::new(a)),
        }
    }

    pub fn nullable(&self) -> bool {
        match self {
            Regex::Empty | Regex::Letter(_) => false,
            Regex::Eps | Regex::Star(_) => true,
            Regex::Cat(a, b) => a.nullable() && b.nullable(),
            Regex::Alt(a, b) => a.nullable() || b.nullable(),
        }
    }

    /// Brzozowski derivative by one letter.
    pub fn derivative(&self, letter: &str) -> Regex {
        match self {
            Regex::Empty | Regex::Eps => Regex::Empty,
            Regex::Letter(l) => {
                if l == letter {
                    Regex::Eps
                } else {
                    Regex::Empty
                }
            }
            Regex::Cat(a, b) => {
                let left = Regex::cat(a.derivative(letter), (**b).clone());
                if a.nullable() {
                    Regex::alt(left, b.derivative(letter))
                } else {
                    left
                }
            }
            Regex::Alt(a, b) => Regex::alt(a.derivative(letter), b.derivative(letter)),
            Regex::Star(a) => Regex::cat(a.derivative(letter), self.clone()),
        }
    }

    pub fn is_match(&self, w: &Word) -> bool {
        let mut r = self.clone();
        for l in w.letters() {
            r = r.derivative(l);
            if r == Regex::Empty {
                return false;
            }
        }
        r.nullable()
    }

    /// Some rotation of `w` matches.
    pub fn is_match_circular(&self, w: &Word) -> bool {
        w.rotations().any(|r| self.is_match(&r))
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regex::Empty => f.write_str("empty"),
            Regex::Eps => f.write_str("eps"),
            Regex::Letter(l) => f.write_str(l),
            Regex::Cat(a, b) => write!(f, "({a}{b})"),
            Regex::Alt(a, b) => write!(f, "({a}+{b})"),
            Regex::Star(a) => write!(f, "({a})*"),
        }
    }
}

struct RegexParser {
    chars: Vec<char>,
    pos: usize,
}

impl RegexParser {
    fn error(&self, message: String) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn alt(&mut self) -> Result<Regex> {
        let mut r = self.cat()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            r = Regex::alt(r, self.cat()?);
        }
        Ok(r)
    }

    fn cat(&mut self) -> Result<Regex> {
        let mut r = self.star()?;
        while matches!(self.peek(), Some(c) if c == '(' || c.is_alphanumeric() || c == 'ε' || c == '∅') {
            r = Regex::cat(r, self.star()?);
        }
        Ok(r)
    }

    fn star(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn keyword(&self, kw: &str) -> bool {
        let end = self.pos + kw.chars().count();
        end <= self.chars.len()
            && self.chars[self.pos..end].iter().copied().eq(kw.chars())
            && !self.chars.get(end).is_some_and(|c| c.is_alphanumeric())
    }

    fn atom(&mut self) -> Result<Regex> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let r = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`".into()));
                }
                self.pos += 1;
                Ok(r)
            }
            Some('ε') => {
                self.pos += 1;
                Ok(Regex::Eps)
            }
            Some('∅') => {
                self.pos += 1;
                Ok(Regex::Empty)
            }
            Some(_) if self.keyword("empty") => {
                self.pos += 5;
                Ok(Regex::Empty)
            }
            Some(_) if self.keyword("eps") => {
                self.pos += 3;
                Ok(Regex::Eps)
            }
            Some(c) if c.is_alphanumeric() => {
                self.pos += 1;
                Ok(Regex::Letter(c.to_string()))
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of pattern".into())),
        }
    }
}

pub fn regex_match(pattern: &str, w: &Word) -> Result<bool> {
    Ok(Regex::parse(pattern)?.is_match(w))
}

/// Membership in the circular closure: some rotation of `w` matches.
pub fn regex_match_circular(pattern: &str, w: &Word) -> Result<bool> {
    Ok(Regex::parse(pattern)?.is_match_circular(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::all_words;

    fn a2() -> Nfa {
        Nfa::new(
            &["q1", "q2"],
            &["a", "b"],
            &[("q1", "a", "q2"), ("q2", "a", "q1"), ("q2", "b", "q2")],
            &["q1"],
            &["q2"],
        )
        .unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s)
    }

    #[test]
    fn regex_examples() {
        assert!(regex_match("(a a)*", &w("aaaa")).unwrap());
        assert!(!regex_match("(ab*a)*ab*", &w("aa")).unwrap());
        assert!(regex_match("(ba*b)* + (a*+bb)*bb(a*+bb)*", &w("bb")).unwrap());
        assert!(regex_match("eps", &Word::empty()).unwrap());
        assert!(!regex_match("empty", &Word::empty()).unwrap());
        assert!(!regex_match("empty*a", &w("b")).unwrap());
        assert!(regex_match("empty*a", &w("a")).unwrap());
        assert!(regex_match("(a+eps)b", &w("b")).unwrap());
        // `e`, `p`, `s` remain letters outside the keywords
        assert!(regex_match("epsa", &w("epsa")).unwrap());
        assert!(regex_match("eps a", &w("a")).unwrap());
    }

    #[test]
    fn regex_parse_errors() {
        for bad in ["(a", "a)", "*a", "a+", "", "a$"] {
            assert!(matches!(Regex::parse(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn circular_membership() {
        let r = Regex::parse("ab").unwrap();
        assert!(r.is_match_circular(&w("ba")));
        assert!(!r.is_match(&w("ba")));
    }

    #[test]
    fn chain_sums() {
        let a = a2();
        assert_eq!(chain_map_sum::<u64>(&a, &w("a")).unwrap(), 1);
        assert_eq!(chain_map_sum::<u64>(&a, &Word::empty()).unwrap(), 0);
        let loopy = Nfa::new(&["p", "q"], &["a"], &[], &["p", "q"], &["q"]).unwrap();
        assert_eq!(chain_map_sum::<u64>(&loopy, &Word::empty()).unwrap(), 1);
        for word in all_words(a.alphabet(), 5) {
            assert_eq!(chain_map_sum::<bool>(&a, &word).unwrap(), a.interval_eval(&word).unwrap());
        }
        assert!(matches!(
            chain_map_sum::<bool>(&a, &w("aaaaaaaaa")),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn circle_sums() {
        let a = a2();
        assert_eq!(circle_map_sum::<u64>(&a, &Word::empty()).unwrap(), 2);
        assert_eq!(circle_map_sum::<u64>(&a, &w("aba")).unwrap(), 1);
        for word in all_words(a.alphabet(), 5) {
            let at0 = circle_map_sum::<u64>(&a, &word).unwrap();
            let at1 = circle_map_sum_at::<u64>(&a, &word, 1).unwrap();
            assert_eq!(at0, at1, "{word}");
            assert_eq!(at0, a.trace_value::<u64>(&word).unwrap(), "{word}");
        }
    }
}
