//! Words and circular words over string-named letters.

use std::fmt;

/// A finite word. Letters are arbitrary non-empty strings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<String>);

impl Word {
    pub fn new<I, S>(letters: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Word(letters.into_iter().map(Into::into).collect())
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Command-line word syntax: a string of single-character letters, or a
    /// comma-separated list when letters are longer than one character.
    /// The empty string is the empty word.
    pub fn parse(s: &str) -> Self {
        let s = s.trim();
        if s.is_empty() {
            Word::empty()
        } else if s.contains(',') {
            Word::new(s.split(',').map(str::trim).filter(|l| !l.is_empty()))
        } else {
            Word::new(s.chars().map(String::from))
        }
    }

    pub fn letters(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn pow(&self, n: usize) -> Word {
        Word((0..n).flat_map(|_| self.0.iter().cloned()).collect())
    }

    /// Rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut v = self.0.clone();
        v.rotate_left(k % self.0.len());
        Word(v)
    }

    /// All rotations, starting with the word itself. The empty word has one.
    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.0.len().max(1)).map(move |k| self.rotate(k))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        if self.0.iter().all(|l| l.chars().count() == 1) {
            for l in &self.0 {
                f.write_str(l)?;
            }
            Ok(())
        } else {
            f.write_str(&self.0.join(","))
        }
    }
}

impl<S: Into<String>> FromIterator<S> for Word {
    fn from_iter<T: IntoIterator<Item = S>>(iter: T) -> Self {
        Word::new(iter)
    }
}

/// A word up to rotation, stored in its lexicographically least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircularWord(Word);

impl CircularWord {
    pub fn new(word: Word) -> Self {
        let canonical = word.rotations().min().unwrap_or_default();
        CircularWord(canonical)
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Word> for CircularWord {
    fn from(w: Word) -> Self {
        CircularWord::new(w)
    }
}

impl fmt::Display for CircularWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

/// Every word over `alphabet` of length at most `max_len`, shortest first and
/// lexicographic (in alphabet order) within a length.
pub fn all_words(alphabet: &[String], max_len: usize) -> impl Iterator<Item = Word> + '_ {
    (0..=max_len).flat_map(move |len| words_of_length(alphabet, len))
}

pub fn words_of_length(alphabet: &[String], len: usize) -> impl Iterator<Item = Word> + '_ {
    let k = alphabet.len();
    let total = if len == 0 {
        1
    } else if k == 0 {
        0
    } else {
        k.checked_pow(len as u32).expect("word enumeration too large")
    };
    (0..total).map(move |mut code| {
        let mut letters = vec![String::new(); len];
        for slot in letters.iter_mut().rev() {
            *slot = alphabet[code % k].clone();
            code /= k;
        }
        Word(letters)
    })
}
