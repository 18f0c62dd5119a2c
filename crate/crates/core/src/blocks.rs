//! Weighted blocks, words and multisets of blocks, and their orderings.
//!
//! Text forms: a block is `b<weight>.<index>`, a word joins blocks with `-`,
//! a multiset joins them with `+` in decreasing order, and `e` is the empty
//! word or multiset.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A connected block: the `index`-th block of weight `weight`.
///
/// The derived order is weight-major, index-minor, so `b1.1` is the least
/// block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    weight: u32,
    index: u32,
}

impl Block {
    pub fn new(weight: u32, index: u32) -> Result<Self> {
        if weight == 0 || index == 0 {
            return Err(Error::InvalidParameter(format!(
                "block weight and index must be positive, got b{weight}.{index}"
            )));
        }
        Ok(Block { weight, index })
    }

    /// `b<weight>.1`; panics on weight 0.
    pub fn first(weight: u32) -> Self {
        Block::new(weight, 1).expect("block weight must be positive")
    }

    /// The least block, `b1.1`.
    pub fn least() -> Self {
        Block::first(1)
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn index(&self) -> u32 {
        self.index
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}.{}", self.weight, self.index)
    }
}

impl FromStr for Block {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad block token {s:?}"));
        let body = s.trim().strip_prefix('b').ok_or_else(bad)?;
        let (w, i) = body.split_once('.').ok_or_else(bad)?;
        let w = w.parse().map_err(|_| bad())?;
        let i = i.parse().map_err(|_| bad())?;
        Block::new(w, i).map_err(|_| bad())
    }
}

/// A finite sequence of blocks. The derived order is `<lex`, with a proper
/// prefix less than its extensions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Block>);

impl Word {
    pub fn new(letters: Vec<Block>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(b: Block) -> Self {
        Word(vec![b])
    }

    /// `b` repeated `count` times.
    pub fn repeat(b: Block, count: usize) -> Self {
        Word(vec![b; count])
    }

    pub fn letters(&self) -> &[Block] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(Block::weight).sum()
    }

    /// Concatenation `self ⊕ other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, b: Block) {
        self.0.push(b);
    }

    /// The multiset of letters `[self]`.
    pub fn content(&self) -> BlockMultiset {
        BlockMultiset::from_blocks(self.0.clone())
    }

    /// Rotation by `k` positions to the left.
    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }
}

impl From<Vec<Block>> for Word {
    fn from(v: Vec<Block>) -> Self {
        Word(v)
    }
}

impl FromIterator<Block> for Word {
    fn from_iter<I: IntoIterator<Item = Block>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, blocks: &[Block], sep: &str) -> fmt::Result {
    if blocks.is_empty() {
        return f.write_str("e");
    }
    for (i, b) in blocks.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{b}")?;
    }
    Ok(())
}

fn parse_joined(s: &str, sep: char) -> Result<Vec<Block>> {
    let s = s.trim();
    if s == "e" {
        return Ok(Vec::new());
    }
    if s.is_empty() {
        return Err(Error::Parse("empty orbit key (use `e`)".into()));
    }
    s.split(sep).map(str::parse).collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0, "-")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains('+') {
            return Err(Error::Parse(format!(
                "{s:?} is a multiset, expected a word"
            )));
        }
        parse_joined(s, '-').map(Word)
    }
}

/// A finite multiset of blocks, stored as `seq(M)`: decreasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockMultiset(Vec<Block>);

impl BlockMultiset {
    pub fn from_blocks(mut blocks: Vec<Block>) -> Self {
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        BlockMultiset(blocks)
    }

    pub fn empty() -> Self {
        BlockMultiset(Vec::new())
    }

    /// The canonical decreasing sequence `seq(M)`.
    pub fn seq(&self) -> &[Block] {
        &self.0
    }

    pub fn as_word(&self) -> Word {
        Word(self.0.clone())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(Block::weight).sum()
    }

    /// Multiset sum `self + other`.
    pub fn sum(&self, other: &BlockMultiset) -> BlockMultiset {
        // merge two decreasing sequences
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] >= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        BlockMultiset(out)
    }

    /// Removes `other` from `self` if it is a submultiset.
    pub fn checked_sub(&self, other: &BlockMultiset) -> Option<BlockMultiset> {
        let mut out = Vec::with_capacity(self.len());
        let mut j = 0;
        for &x in &self.0 {
            if j < other.0.len() && other.0[j] == x {
                j += 1;
            } else {
                if j < other.0.len() && other.0[j] > x {
                    return None;
                }
                out.push(x);
            }
        }
        (j == other.0.len()).then_some(BlockMultiset(out))
    }
}

impl fmt::Display for BlockMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0, "+")
    }
}

impl FromStr for BlockMultiset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains('-') {
            return Err(Error::Parse(format!(
                "{s:?} is a word, expected a multiset"
            )));
        }
        parse_joined(s, '+').map(BlockMultiset::from_blocks)
    }
}

/// The combinatorial image of an orbit on finite sets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitKey {
    Word(Word),
    Multiset(BlockMultiset),
}

impl OrbitKey {
    pub fn weight(&self) -> u32 {
        match self {
            OrbitKey::Word(w) => w.weight(),
            OrbitKey::Multiset(m) => m.weight(),
        }
    }

    /// Letters in stored order (word order, or decreasing for multisets).
    pub fn blocks(&self) -> &[Block] {
        match self {
            OrbitKey::Word(w) => w.letters(),
            OrbitKey::Multiset(m) => m.seq(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.blocks().is_empty()
    }

    pub fn content(&self) -> BlockMultiset {
        match self {
            OrbitKey::Word(w) => w.content(),
            OrbitKey::Multiset(m) => m.clone(),
        }
    }

    pub fn as_word(&self) -> Option<&Word> {
        match self {
            OrbitKey::Word(w) => Some(w),
            OrbitKey::Multiset(_) => None,
        }
    }
}

impl From<Word> for OrbitKey {
    fn from(w: Word) -> Self {
        OrbitKey::Word(w)
    }
}

impl From<BlockMultiset> for OrbitKey {
    fn from(m: BlockMultiset) -> Self {
        OrbitKey::Multiset(m)
    }
}

impl fmt::Display for OrbitKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitKey::Word(w) => w.fmt(f),
            OrbitKey::Multiset(m) => m.fmt(f),
        }
    }
}

pub fn compare_blocks(a: &Block, b: &Block) -> Ordering {
    a.cmp(b)
}

/// `x <lex y`: first differing letter decides, and a proper prefix is less.
pub fn compare_lex(x: &Word, y: &Word) -> Ordering {
    x.letters().cmp(y.letters())
}

/// `M1 <lex M2` iff `seq(M1) <lex seq(M2)`.
pub fn compare_multiset_lex(a: &BlockMultiset, b: &BlockMultiset) -> Ordering {
    a.seq().cmp(b.seq())
}

/// Order on words used for the ordered case: contents compared by
/// multiset-lex first, then *reversed* `<lex` among words with equal
/// content.
pub fn compare_words_a(x: &Word, y: &Word) -> Ordering {
    let (cx, cy) = (x.content(), y.content());
    compare_multiset_lex(&cx, &cy).then_with(|| compare_lex(y, x))
}
