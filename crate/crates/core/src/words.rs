//! Words in a free group `F_r` with basis `a, b, c, ...`.
//!
//! A letter is stored as a *slot*: generator `g` (0-based) occupies slot `2g`
//! and its inverse slot `2g + 1`. Slot order (`a < A < b < B < ...`) is the
//! letter order behind every lexicographic comparison in the crate.
//!
//! Text syntax: generators render as `a`..`z`, inverses as `A`..`Z`, and the
//! empty word as `1`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{input, Error, Result};

/// Largest rank whose letters have a one-character rendering.
pub const MAX_RENDER_RANK: usize = 26;

/// The ambient basis `{a_1, ..., a_r}` of `F_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    rank: usize,
}

impl Alphabet {
    pub fn new(rank: usize) -> Result<Self> {
        if !(2..=MAX_RENDER_RANK).contains(&rank) {
            return input(format!("rank must be in 2..={MAX_RENDER_RANK}, got {rank}"));
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Number of signed letters, `2r`.
    pub fn size(self) -> usize {
        2 * self.rank
    }

    pub fn contains(self, letter: Letter) -> bool {
        letter.generator() < self.rank
    }

    /// All signed letters in slot order.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.size()).map(Letter::from_slot)
    }

    pub fn check_word(self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|l| !self.contains(**l)) {
            Some(l) => input(format!("letter {l} is outside the rank-{} alphabet", self.rank)),
            None => Ok(()),
        }
    }
}

/// A signed generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        assert!(generator < 128, "generator index {generator} too large");
        Letter((2 * generator + inverse as usize) as u8)
    }

    pub const fn from_slot(slot: usize) -> Letter {
        Letter(slot as u8)
    }

    pub fn slot(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a'..='z' => Some(Letter::new(c as usize - 'a' as usize, false)),
            'A'..='Z' => Some(Letter::new(c as usize - 'A' as usize, true)),
            _ => None,
        }
    }

    pub fn to_char(self) -> Option<char> {
        let g = self.generator();
        if g >= MAX_RENDER_RANK {
            return None;
        }
        let base = if self.is_inverse() { b'A' } else { b'a' };
        Some((base + g as u8) as char)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_char() {
            Some(c) => write!(f, "{c}"),
            None if self.is_inverse() => write!(f, "X{}", self.generator()),
            None => write!(f, "x{}", self.generator()),
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Free reduction with an alphabet range check.
pub fn free_reduce(seq: &[Letter], alphabet: Alphabet) -> Result<Word> {
    if let Some(l) = seq.iter().find(|l| !alphabet.contains(**l)) {
        return input(format!("letter {l} is outside the rank-{} alphabet", alphabet.rank()));
    }
    Ok(Word::reduce(seq.iter().copied()))
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(seq: I) -> Word {
        let mut letters: Vec<Letter> = Vec::new();
        for l in seq {
            if letters.last() == Some(&l.inverse()) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Word { letters }
    }

    pub fn letter(l: Letter) -> Word {
        Word { letters: vec![l] }
    }

    /// Parses a word and checks it against `alphabet`. Input need not be reduced.
    pub fn parse(s: &str, alphabet: Alphabet) -> Result<Word> {
        let w: Word = s.parse()?;
        alphabet.check_word(&w)?;
        Ok(w)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let reps = k.unsigned_abs() as usize;
        Word::reduce(std::iter::repeat_n(base.letters.iter().copied(), reps).flatten())
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.concat(self).concat(&g.inverse())
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator()).max()
    }

    /// Sorted distinct generator indices that occur in the word.
    pub fn generators_used(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = self.letters.iter().map(|l| l.generator()).collect();
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(first), Some(last)) => self.len() == 1 || *first != last.inverse(),
            _ => true,
        }
    }

    /// Cyclic rotation starting at position `i`. Only meaningful for
    /// cyclically reduced words.
    pub fn rotate(&self, i: usize) -> Word {
        let n = self.len();
        if n == 0 {
            return Word::identity();
        }
        let i = i % n;
        let mut letters = Vec::with_capacity(n);
        letters.extend_from_slice(&self.letters[i..]);
        letters.extend_from_slice(&self.letters[..i]);
        Word { letters }
    }

    /// Splits into `(conjugator, core)` with `self = conjugator · core · conjugator⁻¹`
    /// and `core` cyclically reduced, without rotating the core.
    pub fn strip(&self) -> (Word, Word) {
        let n = self.len();
        let (mut i, mut j) = (0, n);
        while j > i + 1 && self.letters[i] == self.letters[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        (
            Word { letters: self.letters[..i].to_vec() },
            Word { letters: self.letters[i..j].to_vec() },
        )
    }

    /// Returns the canonical cyclic core and a conjugator `c` with
    /// `self = c · core.rep() · c⁻¹`.
    pub fn cyclic_reduce(&self) -> (CyclicWord, Word) {
        let (c, u) = self.strip();
        let t = least_rotation_offset(u.letters());
        let rep = u.rotate(t);
        let conj = c.concat(&Word { letters: u.letters[..t].to_vec() });
        (CyclicWord { rep }, conj)
    }

    /// `Some((root, k))` with `self = root^k`, `k ≥ 2` maximal; `None` if not
    /// a proper power.
    pub fn is_proper_power(&self) -> Result<Option<(Word, usize)>> {
        if self.is_empty() {
            return input("the identity has no root");
        }
        let (c, u) = self.strip();
        let n = u.len();
        let period = (1..n)
            .filter(|p| n % p == 0)
            .find(|&p| (0..n - p).all(|i| u.letters[i] == u.letters[i + p]));
        Ok(period.map(|p| {
            let root = Word { letters: u.letters[..p].to_vec() }.conjugate_by(&c);
            (root, n / p)
        }))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        if s == "1" {
            return Ok(Word::identity());
        }
        if s.is_empty() {
            return input("empty word string (write the identity as `1`)");
        }
        let letters = s
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::Input(format!("invalid character {c:?} in word {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::reduce(letters))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Offset of the lexicographically least rotation (smallest such offset).
pub(crate) fn least_rotation_offset(letters: &[Letter]) -> usize {
    let n = letters.len();
    let mut best = 0;
    for t in 1..n {
        let cand = letters[t..].iter().chain(&letters[..t]);
        let cur = letters[best..].iter().chain(&letters[..best]);
        if cand.lt(cur) {
            best = t;
        }
    }
    best
}

/// A conjugacy class, represented by its lexicographically least cyclically
/// reduced rotation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CyclicWord {
    rep: Word,
}

impl CyclicWord {
    pub fn new(w: &Word) -> CyclicWord {
        w.cyclic_reduce().0
    }

    pub fn rep(&self) -> &Word {
        &self.rep
    }

    /// Cyclically reduced length `||w||`.
    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord::new(&self.rep.inverse())
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl Serialize for CyclicWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Key identifying `w` up to rotation and inversion.
pub fn class_key(w: &Word) -> CyclicWord {
    let c = CyclicWord::new(w);
    let ci = c.inverse();
    c.min(ci)
}

/// Number of distinct words among the rotations of `w` and of `w⁻¹`
/// (`w` cyclically reduced).
pub fn class_size(w: &Word) -> usize {
    let inv = w.inverse();
    let mut all: Vec<Word> = (0..w.len()).flat_map(|i| [w.rotate(i), inv.rotate(i)]).collect();
    all.sort();
    all.dedup();
    all.len().max(1)
}

/// True iff every reduced two-letter word occurs as a contiguous subword of
/// `w`; with `cyclic`, the wrap-around pair also counts.
pub fn contains_all_two_letter_subwords(w: &Word, alphabet: Alphabet, cyclic: bool) -> bool {
    let k = alphabet.size();
    let mut seen = vec![false; k * k];
    let letters = w.letters();
    let mut mark = |x: Letter, y: Letter| {
        if x.slot() < k && y.slot() < k {
            seen[x.slot() * k + y.slot()] = true;
        }
    };
    for pair in letters.windows(2) {
        mark(pair[0], pair[1]);
    }
    if cyclic && letters.len() >= 2 {
        mark(letters[letters.len() - 1], letters[0]);
    }
    (0..k).all(|x| (0..k).all(|y| x ^ 1 == y || seen[x * k + y]))
}

/// Uniform sample from the length-`n` sphere of `F_r` (a non-backtracking
/// walk); with `cyclic`, uniform over cyclically reduced words of length `n`.
pub fn sample_word(alphabet: Alphabet, n: usize, cyclic: bool, seed: u64) -> Result<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_word_with(alphabet, n, cyclic, &mut rng)
}

pub fn sample_word_with<R: Rng + ?Sized>(alphabet: Alphabet, n: usize, cyclic: bool, rng: &mut R) -> Result<Word> {
    if n == 0 {
        return input("sample length must be at least 1");
    }
    let k = alphabet.size();
    loop {
        let mut letters = Vec::with_capacity(n);
        let mut prev = Letter::from_slot(rng.gen_range(0..k));
        letters.push(prev);
        for _ in 1..n {
            let mut s = rng.gen_range(0..k - 1);
            if s >= prev.inverse().slot() {
                s += 1;
            }
            prev = Letter::from_slot(s);
            letters.push(prev);
        }
        let w = Word { letters };
        if !cyclic || w.is_cyclically_reduced() {
            return Ok(w);
        }
    }
}

/// Lexicographic enumeration of the reduced (or cyclically reduced) words of
/// length exactly `n`.
pub fn enumerate_words(alphabet: Alphabet, n: usize, cyclic: bool) -> Sphere {
    Sphere {
        k: alphabet.size(),
        cyclic,
        current: Some(vec![0; n]),
    }
}

/// Iterator returned by [`enumerate_words`].
pub struct Sphere {
    k: usize,
    cyclic: bool,
    current: Option<Vec<u8>>,
}

impl Sphere {
    fn advance(&mut self) {
        let Some(cur) = self.current.as_mut() else { return };
        let k = self.k as u8;
        let min_after = |prev: u8| if prev == 1 { 1 } else { 0 };
        for i in (0..cur.len()).rev() {
            let mut s = cur[i] + 1;
            if i > 0 && s == cur[i - 1] ^ 1 {
                s += 1;
            }
            if s < k {
                cur[i] = s;
                for j in i + 1..cur.len() {
                    cur[j] = min_after(cur[j - 1]);
                }
                return;
            }
        }
        self.current = None;
    }
}

impl Iterator for Sphere {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            let cur = self.current.as_ref()?;
            let w = Word {
                letters: cur.iter().map(|&s| Letter::from_slot(s as usize)).collect(),
            };
            self.advance();
            if !self.cyclic || w.is_cyclically_reduced() {
                return Some(w);
            }
        }
    }
}

/// An automorphism of `F_r` that permutes and inverts basis letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterMap {
    images: Vec<Letter>,
}

impl LetterMap {
    pub fn new(images: Vec<Letter>) -> Result<LetterMap> {
        let mut gens: Vec<usize> = images.iter().map(|l| l.generator()).collect();
        gens.sort_unstable();
        if gens != (0..images.len()).collect::<Vec<_>>() {
            return input("letter map must permute the generators");
        }
        Ok(LetterMap { images })
    }

    pub fn random<R: Rng + ?Sized>(alphabet: Alphabet, rng: &mut R) -> LetterMap {
        use rand::seq::SliceRandom;
        let mut gens: Vec<usize> = (0..alphabet.rank()).collect();
        gens.shuffle(rng);
        LetterMap {
            images: gens.into_iter().map(|g| Letter::new(g, rng.gen())).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn apply_letter(&self, l: Letter) -> Letter {
        let img = self.images[l.generator()];
        if l.is_inverse() {
            img.inverse()
        } else {
            img
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        Word::reduce(w.letters().iter().map(|&l| self.apply_letter(l)))
    }
}
