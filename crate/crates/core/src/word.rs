//! Reduced words in a free group of rank at most 26.
//!
//! Generator `i` (1-based) is written as the `i`-th lowercase ASCII letter and
//! its inverse as the matching uppercase letter. Internally a letter is a
//! signed index: `+i` for the generator, `-i` for its inverse.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ambient rank (one ASCII letter per generator).
pub const MAX_RANK: usize = 26;

/// Free reduction of a signed-index sequence. Zero entries are dropped.
pub(crate) fn free_reduce<I: IntoIterator<Item = i32>>(letters: I) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for x in letters {
        if x == 0 {
            continue;
        }
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// A freely reduced word over the alphabet `x_1, ..., x_rank`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<i32>,
}

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::InvalidRank(rank));
    }
    Ok(())
}

/// Reduce a raw letter sequence into a [`Word`].
pub fn reduce(raw: &[i32], rank: usize) -> Result<Word> {
    Word::new(rank, raw.iter().copied())
}

/// Parse a word expression (see [`Word::parse`]).
pub fn parse_word(text: &str, rank: usize) -> Result<Word> {
    Word::parse(text, rank)
}

impl Word {
    pub fn new<I: IntoIterator<Item = i32>>(rank: usize, raw: I) -> Result<Word> {
        check_rank(rank)?;
        let mut letters = Vec::new();
        for x in raw {
            if x == 0 || x.unsigned_abs() as usize > rank {
                return Err(Error::InvalidLetter { letter: x, rank });
            }
            letters.push(x);
        }
        Ok(Word {
            rank,
            letters: free_reduce(letters),
        })
    }

    /// Caller guarantees the letters are in range and reduced.
    pub(crate) fn from_reduced(rank: usize, letters: Vec<i32>) -> Word {
        debug_assert!(letters.windows(2).all(|p| p[0] != -p[1]));
        debug_assert!(letters.iter().all(|&x| x != 0 && x.unsigned_abs() as usize <= rank));
        Word { rank, letters }
    }

    pub fn identity(rank: usize) -> Result<Word> {
        check_rank(rank)?;
        Ok(Word {
            rank,
            letters: Vec::new(),
        })
    }

    /// The generator `x_i`, 1-based.
    pub fn generator(rank: usize, i: usize) -> Result<Word> {
        Word::new(rank, [i as i32])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn same_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.same_rank(other)?;
        Ok(Word {
            rank: self.rank,
            letters: free_reduce(self.letters.iter().chain(&other.letters).copied()),
        })
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|x| -x).collect(),
        }
    }

    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word {
            rank: self.rank,
            letters: free_reduce(letters),
        }
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        self.same_rank(other)?;
        let u = &self.letters;
        let v = &other.letters;
        let inv = |w: &[i32]| w.iter().rev().map(|x| -x).collect::<Vec<_>>();
        let raw = u
            .iter()
            .copied()
            .chain(v.iter().copied())
            .chain(inv(u))
            .chain(inv(v));
        Ok(Word {
            rank: self.rank,
            letters: free_reduce(raw),
        })
    }

    /// The same word viewed in a free group of larger rank.
    pub fn embed(&self, rank: usize) -> Result<Word> {
        check_rank(rank)?;
        if rank < self.rank {
            return Err(Error::RankMismatch(self.rank, rank));
        }
        Ok(Word {
            rank,
            letters: self.letters.clone(),
        })
    }

    /// Apply the homomorphism sending generator `i` to `images[i-1]`.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        if images.len() != self.rank {
            return Err(Error::RankMismatch(self.rank, images.len()));
        }
        let target = images.first().map(|w| w.rank).ok_or(Error::InvalidRank(0))?;
        let mut raw = Vec::new();
        for &x in &self.letters {
            let img = &images[x.unsigned_abs() as usize - 1];
            if img.rank != target {
                return Err(Error::RankMismatch(target, img.rank));
            }
            if x > 0 {
                raw.extend_from_slice(&img.letters);
            } else {
                raw.extend(img.letters.iter().rev().map(|y| -y));
            }
        }
        Ok(Word {
            rank: target,
            letters: free_reduce(raw),
        })
    }

    /// Exponent-sum vector: entry `i` is the total exponent of `x_{i+1}`.
    pub fn sigma(&self) -> Result<IntVector> {
        let mut v = vec![0i64; self.rank];
        for &x in &self.letters {
            let slot = &mut v[x.unsigned_abs() as usize - 1];
            *slot = slot.checked_add(x.signum() as i64).ok_or(Error::Overflow)?;
        }
        Ok(IntVector(v))
    }

    /// Parse a word expression.
    ///
    /// ```text
    /// expr   := term { term } ;
    /// term   := atom [ '^' int ] ;
    /// atom   := letter | '[' expr ',' expr ']' | '(' expr ')' ;
    /// ```
    ///
    /// Whitespace between tokens is ignored and the empty string denotes the
    /// identity.
    pub fn parse(text: &str, rank: usize) -> Result<Word> {
        check_rank(rank)?;
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            rank,
        };
        p.skip_ws();
        if p.peek().is_none() {
            return Word::identity(rank);
        }
        let w = p.expr()?;
        p.skip_ws();
        if let Some(c) = p.peek() {
            return Err(p.error(format!("unexpected `{}`", c as char)));
        }
        Ok(w)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    rank: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: String) -> Error {
        Error::Syntax {
            position: self.pos,
            message,
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn starts_atom(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == b'[' || c == b'(')
    }

    fn expr(&mut self) -> Result<Word> {
        let mut acc = self.term()?;
        while self.starts_atom() {
            acc = acc.multiply(&self.term()?)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.int()?;
            Ok(atom.power(k))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                let index = (c.to_ascii_lowercase() - b'a') as usize + 1;
                if index > self.rank {
                    return Err(Error::InvalidLetter {
                        letter: index as i32,
                        rank: self.rank,
                    });
                }
                self.pos += 1;
                let x = if c.is_ascii_lowercase() {
                    index as i32
                } else {
                    -(index as i32)
                };
                Ok(Word::from_reduced(self.rank, vec![x]))
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.expr()?;
                self.expect(b',')?;
                let v = self.expr()?;
                self.expect(b']')?;
                u.commutator(&v)
            }
            Some(b'(') => {
                self.pos += 1;
                let u = self.expr()?;
                self.expect(b')')?;
                Ok(u)
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.error("expected an integer exponent".into()));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse::<i64>().ok())
            .ok_or(Error::Syntax {
                position: start,
                message: "exponent out of range".into(),
            })
    }
}

pub(crate) fn letter_char(x: i32) -> char {
    let c = (b'a' + (x.unsigned_abs() as u8 - 1)) as char;
    if x > 0 {
        c
    } else {
        c.to_ascii_uppercase()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.letters {
            write!(f, "{}", letter_char(x))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({}, \"{}\")", self.rank, self)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Integer vector with checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn zero(len: usize) -> IntVector {
        IntVector(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn checked_add(&self, other: &IntVector) -> Result<IntVector> {
        if self.len() != other.len() {
            return Err(Error::RankMismatch(self.len(), other.len()));
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }

    pub fn add_assign_checked(&mut self, other: &IntVector) -> Result<()> {
        *self = self.checked_add(other)?;
        Ok(())
    }

    /// gcd of the absolute values of the entries; the zero vector has gcd 0.
    pub fn gcd(&self) -> u64 {
        self.0.iter().fold(0u64, |g, &x| gcd(g, x.unsigned_abs()))
    }

    /// Coordinate gcd equals one, i.e. the vector belongs to a basis of Z^len.
    pub fn is_visible(&self) -> bool {
        self.gcd() == 1
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector(v)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
