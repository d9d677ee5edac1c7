//! Layered diagrams for decorated cobordisms and one-foams.
//!
//! A [`Diagram`] is a list of slices read bottom to top: the domain sits at
//! the bottom and each slice consumes the current boundary left to right.
//! Text syntax: generators separated by whitespace, slices by `;`.
//!
//! ```text
//! birth+ ; dot(a)+ ; death+
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// An object of the cobordism category: a sequence of signs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSeq(pub Vec<Sign>);

impl SignSeq {
    pub fn empty() -> Self {
        SignSeq(Vec::new())
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| {
                Sign::from_char(c).ok_or_else(|| Error::Parse {
                    line: 1,
                    column: i + 1,
                    message: format!("expected `+` or `-`, found `{c}`"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(SignSeq)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn concat(&self, other: &SignSeq) -> SignSeq {
        SignSeq(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl From<Vec<Sign>> for SignSeq {
    fn from(v: Vec<Sign>) -> Self {
        SignSeq(v)
    }
}

/// Generating morphisms. Cups and caps are named by their left sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "gen", rename_all = "lowercase", deny_unknown_fields)]
pub enum Gen {
    Id {
        sign: Sign,
    },
    /// `∅ → (s, −s)`.
    Cup {
        sign: Sign,
    },
    /// `(s, −s) → ∅`.
    Cap {
        sign: Sign,
    },
    /// `(l, r) → (r, l)`.
    Swap {
        left: Sign,
        right: Sign,
    },
    Dot {
        letter: String,
        sign: Sign,
    },
    /// Inner endpoint starting a strand; with a label, the state- or
    /// point-labelled endpoint.
    Birth {
        sign: Sign,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    /// Inner endpoint ending a strand.
    Death {
        sign: Sign,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    /// `(+, +) → +`.
    Merge,
    /// `+ → (+, +)`.
    Split,
    /// `∅ → +`.
    Unit,
    /// `+ → ∅`.
    Counit,
}

use Sign::{Minus, Plus};

impl Gen {
    pub fn id(sign: Sign) -> Gen {
        Gen::Id { sign }
    }

    pub fn cup(sign: Sign) -> Gen {
        Gen::Cup { sign }
    }

    pub fn cap(sign: Sign) -> Gen {
        Gen::Cap { sign }
    }

    pub fn swap(left: Sign, right: Sign) -> Gen {
        Gen::Swap { left, right }
    }

    pub fn dot(letter: impl Into<String>, sign: Sign) -> Gen {
        Gen::Dot {
            letter: letter.into(),
            sign,
        }
    }

    pub fn birth(sign: Sign) -> Gen {
        Gen::Birth { sign, label: None }
    }

    pub fn death(sign: Sign) -> Gen {
        Gen::Death { sign, label: None }
    }

    pub fn birth_at(sign: Sign, label: impl Into<String>) -> Gen {
        Gen::Birth {
            sign,
            label: Some(label.into()),
        }
    }

    pub fn death_at(sign: Sign, label: impl Into<String>) -> Gen {
        Gen::Death {
            sign,
            label: Some(label.into()),
        }
    }

    pub fn inputs(&self) -> Vec<Sign> {
        match self {
            Gen::Id { sign } | Gen::Dot { sign, .. } | Gen::Death { sign, .. } => vec![*sign],
            Gen::Cup { .. } | Gen::Birth { .. } | Gen::Unit => vec![],
            Gen::Cap { sign } => vec![*sign, sign.flip()],
            Gen::Swap { left, right } => vec![*left, *right],
            Gen::Merge => vec![Plus, Plus],
            Gen::Split | Gen::Counit => vec![Plus],
        }
    }

    pub fn outputs(&self) -> Vec<Sign> {
        match self {
            Gen::Id { sign } | Gen::Dot { sign, .. } | Gen::Birth { sign, .. } => vec![*sign],
            Gen::Cap { .. } | Gen::Death { .. } | Gen::Counit => vec![],
            Gen::Cup { sign } => vec![*sign, sign.flip()],
            Gen::Swap { left, right } => vec![*right, *left],
            Gen::Split => vec![Plus, Plus],
            Gen::Merge | Gen::Unit => vec![Plus],
        }
    }

    pub fn is_foam_vertex(&self) -> bool {
        matches!(self, Gen::Merge | Gen::Split | Gen::Unit | Gen::Counit)
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Gen::Id { .. })
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Id { sign } => write!(f, "id{sign}"),
            Gen::Cup { sign } => write!(f, "cup{sign}"),
            Gen::Cap { sign } => write!(f, "cap{sign}"),
            Gen::Swap { left, right } => write!(f, "swap({left}{right})"),
            Gen::Dot { letter, sign } => write!(f, "dot({letter}){sign}"),
            Gen::Birth { sign, label: None } => write!(f, "birth{sign}"),
            Gen::Birth { sign, label: Some(l) } => write!(f, "birth{sign}({l})"),
            Gen::Death { sign, label: None } => write!(f, "death{sign}"),
            Gen::Death { sign, label: Some(l) } => write!(f, "death{sign}({l})"),
            Gen::Merge => f.write_str("merge"),
            Gen::Split => f.write_str("split"),
            Gen::Unit => f.write_str("unit"),
            Gen::Counit => f.write_str("counit"),
        }
    }
}

pub type Slice = Vec<Gen>;

fn slice_inputs(slice: &[Gen]) -> SignSeq {
    SignSeq(slice.iter().flat_map(Gen::inputs).collect())
}

fn slice_outputs(slice: &[Gen]) -> SignSeq {
    SignSeq(slice.iter().flat_map(Gen::outputs).collect())
}

/// A well-typed morphism `domain → codomain`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    domain: SignSeq,
    codomain: SignSeq,
    slices: Vec<Slice>,
}

/// Thread `domain` through `slices`, returning the codomain.
pub fn typecheck(domain: &SignSeq, slices: &[Slice]) -> Result<SignSeq> {
    let mut boundary = domain.clone();
    for (i, slice) in slices.iter().enumerate() {
        let wanted = slice_inputs(slice);
        if wanted != boundary {
            return Err(Error::Type {
                slice: Some(i),
                expected: boundary.to_string(),
                found: wanted.to_string(),
            });
        }
        boundary = slice_outputs(slice);
    }
    Ok(boundary)
}

impl Diagram {
    /// Typecheck and build. Empty slices are dropped.
    pub fn new(domain: SignSeq, slices: Vec<Slice>) -> Result<Self> {
        let slices: Vec<Slice> = slices.into_iter().filter(|s| !s.is_empty()).collect();
        let codomain = typecheck(&domain, &slices)?;
        Ok(Diagram {
            domain,
            codomain,
            slices,
        })
    }

    /// Domain inferred from the first slice.
    pub fn from_slices(slices: Vec<Slice>) -> Result<Self> {
        let domain = slices
            .iter()
            .find(|s| !s.is_empty())
            .map(|s| slice_inputs(s))
            .unwrap_or_default();
        Diagram::new(domain, slices)
    }

    pub fn identity(signs: SignSeq) -> Self {
        Diagram {
            domain: signs.clone(),
            codomain: signs,
            slices: Vec::new(),
        }
    }

    /// A single slice.
    pub fn layer(slice: Slice) -> Result<Self> {
        Diagram::from_slices(vec![slice])
    }

    pub fn domain(&self) -> &SignSeq {
        &self.domain
    }

    pub fn codomain(&self) -> &SignSeq {
        &self.codomain
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn is_closed(&self) -> bool {
        self.domain.is_empty() && self.codomain.is_empty()
    }

    pub fn typecheck(&self) -> Result<(SignSeq, SignSeq)> {
        let cod = typecheck(&self.domain, &self.slices)?;
        Ok((self.domain.clone(), cod))
    }

    pub fn generators(&self) -> impl Iterator<Item = &Gen> {
        self.slices.iter().flatten()
    }

    /// Widest boundary met while reading the diagram.
    pub fn max_width(&self) -> usize {
        self.slices
            .iter()
            .map(|s| slice_outputs(s).len())
            .chain([self.domain.len()])
            .max()
            .unwrap_or(0)
    }

    /// `self` followed by `next` (stacked on top).
    pub fn compose(&self, next: &Diagram) -> Result<Diagram> {
        if self.codomain != next.domain {
            return Err(Error::Type {
                slice: None,
                expected: self.codomain.to_string(),
                found: next.domain.to_string(),
            });
        }
        let mut slices = self.slices.clone();
        slices.extend(next.slices.iter().cloned());
        Ok(Diagram {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            slices,
        })
    }

    /// Side by side, `self` on the left. The shorter diagram is padded with
    /// identity slices on its boundary.
    pub fn tensor(&self, right: &Diagram) -> Diagram {
        let height = self.slices.len().max(right.slices.len());
        let pad = |d: &Diagram, i: usize| -> Slice {
            d.slices
                .get(i)
                .cloned()
                .unwrap_or_else(|| d.codomain.0.iter().map(|&s| Gen::id(s)).collect())
        };
        let slices = (0..height)
            .map(|i| {
                let mut s = pad(self, i);
                s.extend(pad(right, i));
                s
            })
            .collect();
        Diagram::new(self.domain.concat(&right.domain), slices)
            .expect("tensor of well-typed diagrams is well typed")
    }

    /// Parse the slice language.
    pub fn parse(text: &str) -> Result<Diagram> {
        let slices = parse_slices(text)?;
        Diagram::from_slices(slices)
    }

    pub fn from_json(text: &str) -> Result<Diagram> {
        let spec: DiagramSpec = serde_json::from_str(text)?;
        spec.into_diagram()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DiagramSpec {
            domain: Some(self.domain.to_string().replace('∅', "")),
            slices: self.slices.clone(),
        })
        .expect("diagram serializes")
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slices: Vec<String> = self
            .slices
            .iter()
            .map(|s| s.iter().map(Gen::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        f.write_str(&slices.join(" ; "))
    }
}

/// JSON form: `{"slices": [[{"gen": "dot", "letter": "a", "sign": "+"}]]}`,
/// with an optional `"domain"` sign string for diagrams without slices.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    pub slices: Vec<Slice>,
}

impl DiagramSpec {
    pub fn into_diagram(self) -> Result<Diagram> {
        match self.domain {
            Some(d) => Diagram::new(SignSeq::parse(&d)?, self.slices),
            None => Diagram::from_slices(self.slices),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
}

impl Lexer<'_> {
    fn position(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }

    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.position(offset);
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn parse_slices(text: &str) -> Result<Vec<Slice>> {
    let mut lx = Lexer {
        chars: text.char_indices().peekable(),
        text,
    };
    let mut slices = vec![Vec::new()];
    while let Some(&(start, c)) = lx.chars.peek() {
        if c.is_whitespace() {
            lx.chars.next();
            continue;
        }
        if c == ';' {
            lx.chars.next();
            slices.push(Vec::new());
            continue;
        }
        if c == '#' {
            while lx.chars.next_if(|&(_, c)| c != '\n').is_some() {}
            continue;
        }
        if !is_word_char(c) {
            return Err(lx.error(start, format!("unexpected character `{c}`")));
        }
        let gen = parse_gen(&mut lx, start)?;
        slices.last_mut().expect("at least one slice").push(gen);
    }
    Ok(slices)
}

fn parse_gen(lx: &mut Lexer<'_>, start: usize) -> Result<Gen> {
    let mut name = String::new();
    while let Some((_, c)) = lx.chars.next_if(|&(_, c)| is_word_char(c)) {
        name.push(c);
    }
    let sign = |lx: &mut Lexer<'_>| -> Result<Sign> {
        match lx.chars.peek().copied() {
            Some((_, c)) if Sign::from_char(c).is_some() => {
                lx.chars.next();
                Ok(Sign::from_char(c).expect("checked"))
            }
            Some((o, c)) => Err(lx.error(o, format!("expected `+` or `-` after `{name}`, found `{c}`"))),
            None => Err(lx.error(lx.text.len(), format!("expected `+` or `-` after `{name}`"))),
        }
    };
    let gen = match name.as_str() {
        "id" => Gen::id(sign(lx)?),
        "cup" => Gen::cup(sign(lx)?),
        "cap" => Gen::cap(sign(lx)?),
        "merge" => Gen::Merge,
        "split" => Gen::Split,
        "unit" => Gen::Unit,
        "counit" => Gen::Counit,
        "swap" => {
            let arg = parse_arg(lx, "swap")?;
            let signs: Vec<Sign> = arg.0.chars().filter_map(Sign::from_char).collect();
            if signs.len() != 2 || arg.0.chars().count() != 2 {
                return Err(lx.error(arg.1, format!("swap expects two signs, found `{}`", arg.0)));
            }
            Gen::swap(signs[0], signs[1])
        }
        "dot" => {
            let (letter, _) = parse_arg(lx, "dot")?;
            Gen::dot(letter, sign(lx)?)
        }
        "birth" | "death" => {
            let s = sign(lx)?;
            let label = match lx.chars.peek() {
                Some(&(_, '(')) => Some(parse_arg(lx, &name)?.0),
                _ => None,
            };
            if name == "birth" {
                Gen::Birth { sign: s, label }
            } else {
                Gen::Death { sign: s, label }
            }
        }
        _ => return Err(lx.error(start, format!("unknown generator `{name}`"))),
    };
    if let Some(&(o, c)) = lx.chars.peek() {
        if !(c.is_whitespace() || c == ';' || c == '#') {
            return Err(lx.error(o, format!("unexpected `{c}` after `{gen}`")));
        }
    }
    Ok(gen)
}

/// Parenthesized argument: non-empty, no whitespace or delimiters.
fn parse_arg(lx: &mut Lexer<'_>, what: &str) -> Result<(String, usize)> {
    match lx.chars.next() {
        Some((_, '(')) => {}
        Some((o, c)) => return Err(lx.error(o, format!("expected `(` after `{what}`, found `{c}`"))),
        None => return Err(lx.error(lx.text.len(), format!("expected `(` after `{what}`"))),
    }
    let arg_start = lx.chars.peek().map_or(lx.text.len(), |&(o, _)| o);
    let mut arg = String::new();
    loop {
        match lx.chars.next() {
            Some((_, ')')) => break,
            Some((o, c)) if c.is_whitespace() || matches!(c, '(' | ';' | '#') => {
                return Err(lx.error(o, format!("unexpected `{}` in `{what}(…)`", c.escape_default())))
            }
            Some((_, c)) => arg.push(c),
            None => return Err(lx.error(lx.text.len(), format!("unterminated `{what}(`"))),
        }
    }
    if arg.is_empty() {
        return Err(lx.error(arg_start, format!("empty argument in `{what}()`")));
    }
    Ok((arg, arg_start))
}

/// Ready-made composites.
pub mod shapes {
    use super::*;

    fn ids(signs: &[Sign]) -> Slice {
        signs.iter().map(|&s| Gen::id(s)).collect()
    }

    fn dots(w: &Word, sign: Sign) -> Vec<Slice> {
        w.letters().iter().map(|l| vec![Gen::dot(l.clone(), sign)]).collect()
    }

    /// Floating interval `birth+ ; dot(a1)+ ; … ; death+`.
    pub fn interval(w: &Word) -> Diagram {
        let mut slices = vec![vec![Gen::birth(Plus)]];
        slices.extend(dots(w, Plus));
        slices.push(vec![Gen::death(Plus)]);
        Diagram::new(SignSeq::empty(), slices).expect("interval typechecks")
    }

    /// Circle decorated by `w` on its `+` strand: `cup+ ; dot(ai)+ id- ; cap+`.
    pub fn circle(w: &Word) -> Diagram {
        let mut slices = vec![vec![Gen::cup(Plus)]];
        slices.extend(w.letters().iter().map(|l| vec![Gen::dot(l.clone(), Plus), Gen::id(Minus)]));
        slices.push(vec![Gen::cap(Plus)]);
        Diagram::new(SignSeq::empty(), slices).expect("circle typechecks")
    }

    /// Strand of sign `s` decorated by `w`.
    pub fn strand(w: &Word, sign: Sign) -> Diagram {
        Diagram::new(SignSeq(vec![sign]), dots(w, sign)).expect("strand typechecks")
    }

    /// The two zig-zags on a strand of sign `s`: bending right first
    /// (`id cup ; cap id`) and bending left first (`cup id ; id cap`).
    pub fn zigzags(sign: Sign) -> [Diagram; 2] {
        let f = sign.flip();
        let right = Diagram::new(
            SignSeq(vec![sign]),
            vec![vec![Gen::id(sign), Gen::cup(f)], vec![Gen::cap(sign), Gen::id(sign)]],
        )
        .expect("zig-zag typechecks");
        let left = Diagram::new(
            SignSeq(vec![sign]),
            vec![vec![Gen::cup(sign), Gen::id(sign)], vec![Gen::id(sign), Gen::cap(f)]],
        )
        .expect("zig-zag typechecks");
        [right, left]
    }

    /// Merge on two `−` strands, rotated from `split` through cups and caps.
    pub fn merge_minus() -> Diagram {
        Diagram::new(
            SignSeq(vec![Minus, Minus]),
            vec![
                vec![Gen::id(Minus), Gen::id(Minus), Gen::cup(Plus)],
                vec![Gen::id(Minus), Gen::id(Minus), Gen::Split, Gen::id(Minus)],
                vec![Gen::id(Minus), Gen::cap(Minus), Gen::id(Plus), Gen::id(Minus)],
                vec![Gen::cap(Minus), Gen::id(Minus)],
            ],
        )
        .expect("rotated merge typechecks")
    }

    /// Split on a `−` strand, rotated from `merge`.
    pub fn split_minus() -> Diagram {
        Diagram::new(
            SignSeq(vec![Minus]),
            vec![
                vec![Gen::id(Minus), Gen::cup(Plus)],
                vec![Gen::id(Minus), Gen::id(Plus), Gen::cup(Plus), Gen::id(Minus)],
                vec![Gen::id(Minus), Gen::Merge, Gen::id(Minus), Gen::id(Minus)],
                vec![Gen::cap(Minus), Gen::id(Minus), Gen::id(Minus)],
            ],
        )
        .expect("rotated split typechecks")
    }

    /// Unit on a `−` strand: the counit bent down by a cup.
    pub fn unit_minus() -> Diagram {
        Diagram::new(SignSeq::empty(), vec![vec![Gen::cup(Plus)], vec![Gen::Counit, Gen::id(Minus)]])
            .expect("rotated unit typechecks")
    }

    /// Counit on a `−` strand: the unit bent up by a cap.
    pub fn counit_minus() -> Diagram {
        Diagram::new(SignSeq(vec![Minus]), vec![vec![Gen::id(Minus), Gen::Unit], vec![Gen::cap(Minus)]])
            .expect("rotated counit typechecks")
    }

    /// Identity slice on a boundary.
    pub fn id_slice(signs: &SignSeq) -> Slice {
        ids(signs.signs())
    }

    /// The text of the `−` foam vertices as composites, for printing.
    pub fn minus_vertex_texts() -> Vec<(&'static str, String)> {
        vec![
            ("merge-", merge_minus().to_string()),
            ("split-", split_minus().to_string()),
            ("unit-", unit_minus().to_string()),
            ("counit-", counit_minus().to_string()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> SignSeq {
        SignSeq::parse(s).unwrap()
    }

    #[test]
    fn cup_typechecks() {
        let d = Diagram::from_slices(vec![vec![Gen::cup(Plus)]]).unwrap();
        assert_eq!(d.typecheck().unwrap(), (seq(""), seq("+-")));
    }

    #[test]
    fn zigzag_typechecks() {
        for s in [Plus, Minus] {
            for z in shapes::zigzags(s) {
                assert_eq!(z.typecheck().unwrap(), (SignSeq(vec![s]), SignSeq(vec![s])));
            }
        }
    }

    #[test]
    fn ill_typed_slice_reports_index() {
        let err = Diagram::new(seq("+"), vec![vec![Gen::id(Plus)], vec![Gen::dot("a", Minus)]]).unwrap_err();
        match err {
            Error::Type { slice, expected, found } => {
                assert_eq!(slice, Some(1));
                assert_eq!(expected, "+");
                assert_eq!(found, "-");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn compose_and_tensor() {
        let d = shapes::strand(&Word::parse("ab"), Plus);
        let id = Diagram::identity(seq("+"));
        let c = d.compose(&id).unwrap();
        assert_eq!(c.typecheck().unwrap(), d.typecheck().unwrap());
        let circle = shapes::circle(&Word::parse("a"));
        assert!(circle.tensor(&shapes::interval(&Word::empty())).is_closed());
        assert!(matches!(d.compose(&Diagram::identity(seq("-"))), Err(Error::Type { slice: None, .. })));
        let t = d.tensor(&Diagram::layer(vec![Gen::cup(Minus)]).unwrap());
        assert_eq!(t.domain(), &seq("+"));
        assert_eq!(t.codomain(), &seq("+-+"));
        assert_eq!(t.slices().len(), 2);
    }

    #[test]
    fn floating_interval_from_half_intervals() {
        let birth = Diagram::layer(vec![Gen::birth(Plus)]).unwrap();
        let death = Diagram::layer(vec![Gen::death(Plus)]).unwrap();
        assert!(birth.compose(&death).unwrap().is_closed());
    }

    #[test]
    fn parse_examples() {
        let d = Diagram::parse("cup+ ;").unwrap();
        assert_eq!(d.slices(), &[vec![Gen::cup(Plus)]]);
        let d = Diagram::parse("birth+ ; dot(a)+ ; death+").unwrap();
        assert_eq!(d, shapes::interval(&Word::parse("a")));
        assert!(d.is_closed());
        let d = Diagram::parse("swap(+-) ;\n  merge").unwrap_err();
        assert!(matches!(d, Error::Type { slice: Some(1), .. }));
        let d = Diagram::parse("birth+(x) birth-(y) ; death+(x) id-").unwrap();
        assert_eq!(d.slices()[0][0], Gen::birth_at(Plus, "x"));
        assert_eq!(Diagram::parse("").unwrap(), Diagram::identity(SignSeq::empty()));
        let d = Diagram::parse("dot(ab)+ # a comment\n; id+").unwrap();
        assert_eq!(d.slices()[0][0], Gen::dot("ab", Plus));
    }

    #[test]
    fn parse_errors_carry_position() {
        let cases = [
            ("dot()+", 1, 5),
            ("cup+ ;\n  frob", 2, 3),
            ("id*", 1, 3),
            ("swap(+)", 1, 6),
            ("dot(a", 1, 6),
            ("cup+ id+x", 1, 9),
            ("dot(a)", 1, 7),
        ];
        for (text, line, column) in cases {
            match Diagram::parse(text) {
                Err(Error::Parse { line: l, column: c, .. }) => {
                    assert_eq!((l, c), (line, column), "{text}");
                }
                other => panic!("{text}: unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn print_parse_roundtrip() {
        let d = Diagram::parse("cup+ birth-(q1) ; dot(a)+ swap(--) ; cap+ id- ; death-").unwrap();
        assert_eq!(Diagram::parse(&d.to_string()).unwrap(), d);
        assert_eq!(d.to_string(), "cup+ birth-(q1) ; dot(a)+ swap(--) ; cap+ id- ; death-");
    }

    #[test]
    fn json_mirror() {
        let text = r#"{"slices":[[{"gen":"birth","sign":"+"}],[{"gen":"dot","letter":"a","sign":"+"}],[{"gen":"death","sign":"+"}]]}"#;
        let d = Diagram::from_json(text).unwrap();
        assert_eq!(d, shapes::interval(&Word::parse("a")));
        assert_eq!(Diagram::from_json(&d.to_json()).unwrap(), d);
        let id = Diagram::identity(seq("+-"));
        assert_eq!(Diagram::from_json(&id.to_json()).unwrap(), id);
        assert!(Diagram::from_json(r#"{"slices":[[{"gen":"frob"}]]}"#).is_err());
    }

    #[test]
    fn minus_vertices_have_expected_types() {
        assert_eq!(shapes::merge_minus().typecheck().unwrap(), (seq("--"), seq("-")));
        assert_eq!(shapes::split_minus().typecheck().unwrap(), (seq("-"), seq("--")));
        assert_eq!(shapes::unit_minus().typecheck().unwrap(), (seq(""), seq("-")));
        assert_eq!(shapes::counit_minus().typecheck().unwrap(), (seq("-"), seq("")));
    }
}
