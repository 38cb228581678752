use std::fmt;

use crate::expr::{Alphabet, Letter};

use super::SemanticsError;

/// An ultimately periodic word `stem · loop^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPWord {
    stem: Vec<Letter>,
    cycle: Vec<Letter>,
    alphabet: Alphabet,
}

impl UPWord {
    pub fn new(stem: Vec<Letter>, cycle: Vec<Letter>, alphabet: &Alphabet) -> Result<Self, SemanticsError> {
        if cycle.is_empty() {
            return Err(SemanticsError::BadWord("loop must be nonempty".into()));
        }
        if let Some(a) = stem.iter().chain(&cycle).find(|a| !alphabet.contains(**a)) {
            return Err(SemanticsError::BadWord(format!("letter `{a}` is not in the alphabet")));
        }
        Ok(UPWord { stem, cycle, alphabet: alphabet.clone() })
    }

    /// Parses `stem(loop)^w`; `^ω` is accepted too, and the stem may be
    /// empty.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self, SemanticsError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_suffix("^w")
            .or_else(|| compact.strip_suffix("^ω"))
            .ok_or_else(|| SemanticsError::BadWord(format!("`{text}` does not end in `^w`")))?;
        let (stem, rest) =
            body.split_once('(').ok_or_else(|| SemanticsError::BadWord(format!("`{text}` has no `(loop)`")))?;
        let cycle =
            rest.strip_suffix(')').ok_or_else(|| SemanticsError::BadWord(format!("`{text}` has no closing `)`")))?;
        let letters = |s: &str| -> Result<Vec<Letter>, SemanticsError> {
            s.chars()
                .map(|c| {
                    if c.is_ascii_lowercase() {
                        Ok(Letter(c))
                    } else {
                        Err(SemanticsError::BadWord(format!("unexpected `{c}` in `{text}`")))
                    }
                })
                .collect()
        };
        UPWord::new(letters(stem)?, letters(cycle)?, alphabet)
    }

    pub fn stem(&self) -> &[Letter] {
        &self.stem
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Number of distinct offsets after reduction: `|stem| + |loop|`.
    pub fn offsets(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    /// The letter at position `i` of the infinite word.
    pub fn letter_at(&self, i: usize) -> Letter {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    /// The offset following `i`, reduced into `0..offsets()`.
    pub fn next_offset(&self, i: usize) -> usize {
        if i + 1 < self.offsets() {
            i + 1
        } else {
            self.stem.len()
        }
    }

    /// The suffix starting at position 1.
    pub fn tail(&self) -> UPWord {
        if self.stem.is_empty() {
            let mut cycle = self.cycle.clone();
            cycle.rotate_left(1);
            UPWord { stem: vec![], cycle, alphabet: self.alphabet.clone() }
        } else {
            UPWord { stem: self.stem[1..].to_vec(), cycle: self.cycle.clone(), alphabet: self.alphabet.clone() }
        }
    }

    /// The same infinite word with the first loop letter moved into the
    /// stem and the loop rotated.
    pub fn rotate(&self) -> UPWord {
        let mut stem = self.stem.clone();
        stem.push(self.cycle[0]);
        let mut cycle = self.cycle.clone();
        cycle.rotate_left(1);
        UPWord { stem, cycle, alphabet: self.alphabet.clone() }
    }

    /// The same infinite word with `k` copies of the loop appended to the
    /// stem.
    pub fn unroll(&self, k: usize) -> UPWord {
        let mut stem = self.stem.clone();
        for _ in 0..k {
            stem.extend_from_slice(&self.cycle);
        }
        UPWord { stem, cycle: self.cycle.clone(), alphabet: self.alphabet.clone() }
    }

    /// All words with `|stem| ≤ max_stem` and `1 ≤ |loop| ≤ max_loop`, in
    /// a fixed order.
    pub fn enumerate(alphabet: &Alphabet, max_stem: usize, max_loop: usize) -> Vec<UPWord> {
        let strings = |max: usize, min: usize| {
            let mut all: Vec<Vec<Letter>> = vec![vec![]];
            let mut layer: Vec<Vec<Letter>> = vec![vec![]];
            for _ in 0..max {
                layer = layer
                    .iter()
                    .flat_map(|s| {
                        alphabet.letters().iter().map(move |&a| {
                            let mut t = s.clone();
                            t.push(a);
                            t
                        })
                    })
                    .collect();
                all.extend(layer.iter().cloned());
            }
            all.retain(|s| s.len() >= min);
            all
        };
        let mut out = vec![];
        for stem in strings(max_stem, 0) {
            for cycle in strings(max_loop, 1) {
                out.push(UPWord { stem: stem.clone(), cycle, alphabet: alphabet.clone() });
            }
        }
        out
    }
}

impl fmt::Display for UPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.stem {
            write!(f, "{a}")?;
        }
        f.write_str("(")?;
        for a in &self.cycle {
            write!(f, "{a}")?;
        }
        f.write_str(")^w")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    #[test]
    fn parse_and_print() {
        let w = UPWord::parse("ab(ba)^w", &ab()).unwrap();
        assert_eq!(w.stem(), &[Letter('a'), Letter('b')]);
        assert_eq!(w.to_string(), "ab(ba)^w");
        assert_eq!(UPWord::parse("(a)^ω", &ab()).unwrap().to_string(), "(a)^w");
        assert!(UPWord::parse("a()^w", &ab()).is_err());
        assert!(UPWord::parse("(c)^w", &ab()).is_err());
        assert!(UPWord::parse("(a)", &ab()).is_err());
    }

    #[test]
    fn letters_and_offsets() {
        let w = UPWord::parse("b(ab)^w", &ab()).unwrap();
        let got: String = (0..7).map(|i| w.letter_at(i).0).collect();
        assert_eq!(got, "bababab");
        assert_eq!(w.next_offset(0), 1);
        assert_eq!(w.next_offset(2), 1);
    }

    #[test]
    fn tail_rotate_unroll_preserve_letters() {
        let w = UPWord::parse("a(abb)^w", &ab()).unwrap();
        for v in [w.rotate(), w.unroll(2)] {
            for i in 0..20 {
                assert_eq!(v.letter_at(i), w.letter_at(i));
            }
        }
        let t = w.tail().tail();
        for i in 0..20 {
            assert_eq!(t.letter_at(i), w.letter_at(i + 2));
        }
    }

    #[test]
    fn enumeration_counts() {
        // stems: 1 + 2 + 4, loops: 2 + 4
        assert_eq!(UPWord::enumerate(&ab(), 2, 2).len(), 7 * 6);
    }
}
