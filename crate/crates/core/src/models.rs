//! Wreath-like group models: an alphabet profile plus a split table.
//!
//! A split entry `(L | R, m)` of a block `B` says that among the subsets `Z`
//! of a representative of `B`, exactly `m` have image `L` while their
//! complement has image `R`. Products and suborbit counts are convolutions
//! of these entries across the blocks of an orbit key: concatenation in the
//! ordered (`wreath_A`) case, multiset sum in the unordered (`wreath_S`)
//! case.
//!
//! Split table text format:
//!
//! ```text
//! # comment
//! kind = wreath_A          # or wreath_S; defaults to wreath_A
//! maxweight = 6            # optional: the alphabet is truncated above this weight
//! weight 1 = 1
//! weight 2 = 1
//! b1.1 : b1.1 | e * 1
//! b1.1 : e | b1.1 * 1
//! b2.1 : b1.1 | b1.1 * 2
//! ```

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::blocks::{compare_multiset_lex, compare_words_a, Block, BlockMultiset, OrbitKey, Word};
use crate::error::{Error, Result};
use crate::shuffle::words_of_weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Orbits are multisets of blocks.
    WreathS,
    /// Orbits are words of blocks.
    WreathA,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::WreathS => "wreath_S",
            GroupKind::WreathA => "wreath_A",
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Number of blocks of each weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlphabetProfile {
    counts: BTreeMap<u32, u32>,
}

impl AlphabetProfile {
    pub fn new(counts: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (w, c) in counts {
            if w == 0 {
                return Err(Error::InvalidParameter("profile weights start at 1".into()));
            }
            if c > 0 {
                out.insert(w, c);
            }
        }
        Ok(AlphabetProfile { counts: out })
    }

    pub fn count(&self, weight: u32) -> u32 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    pub fn max_block_weight(&self) -> u32 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn contains(&self, b: &Block) -> bool {
        b.index() <= self.count(b.weight())
    }

    /// All blocks, ascending.
    pub fn blocks(&self) -> Vec<Block> {
        self.counts
            .iter()
            .flat_map(|(&w, &c)| (1..=c).map(move |i| Block::new(w, i).expect("positive")))
            .collect()
    }

    /// `(weight, count)` pairs with positive count.
    pub fn counts(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.counts.iter().map(|(&w, &c)| (w, c))
    }
}

/// One way of splitting a block into a chosen part and its complement.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplitEntry {
    pub left: Word,
    pub right: Word,
    pub multiplicity: u64,
}

impl SplitEntry {
    fn mirrored(&self) -> SplitEntry {
        SplitEntry {
            left: self.right.clone(),
            right: self.left.clone(),
            multiplicity: self.multiplicity,
        }
    }
}

impl fmt::Display for SplitEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} * {}", self.left, self.right, self.multiplicity)
    }
}

type ProductCache = Mutex<HashMap<(OrbitKey, OrbitKey), Arc<Vec<(OrbitKey, BigInt)>>>>;

/// A wreath-like group described by its blocks and split table.
pub struct GroupModel {
    name: String,
    kind: GroupKind,
    profile: AlphabetProfile,
    max_weight: Option<u32>,
    table: BTreeMap<Block, Vec<SplitEntry>>,
    products: ProductCache,
}

impl fmt::Debug for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupModel")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("profile", &self.profile)
            .field("max_weight", &self.max_weight)
            .finish_non_exhaustive()
    }
}

impl Clone for GroupModel {
    fn clone(&self) -> Self {
        GroupModel {
            name: self.name.clone(),
            kind: self.kind,
            profile: self.profile.clone(),
            max_weight: self.max_weight,
            table: self.table.clone(),
            products: Mutex::default(),
        }
    }
}

/// Structural equality; the name and product cache are ignored.
impl PartialEq for GroupModel {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.profile == other.profile
            && self.max_weight == other.max_weight
            && self.table == other.table
    }
}

impl Eq for GroupModel {}

fn binomial_splits(k: u32) -> BTreeMap<Block, Vec<SplitEntry>> {
    let part = |i: u32| {
        if i == 0 {
            Word::empty()
        } else {
            Word::letter(Block::first(i))
        }
    };
    (1..=k)
        .map(|j| {
            let entries = (0..=j)
                .map(|i| SplitEntry {
                    left: part(i),
                    right: part(j - i),
                    multiplicity: binomial(j as u64, i as u64),
                })
                .collect();
            (Block::first(j), entries)
        })
        .collect()
}

impl GroupModel {
    /// Builds and validates a model.
    pub fn new(
        name: impl Into<String>,
        kind: GroupKind,
        profile: AlphabetProfile,
        max_weight: Option<u32>,
        table: BTreeMap<Block, Vec<SplitEntry>>,
    ) -> Result<Self> {
        let mut model = GroupModel {
            name: name.into(),
            kind,
            profile,
            max_weight,
            table,
            products: Mutex::default(),
        };
        model.canonicalize();
        model.validate()?;
        Ok(model)
    }

    /// `S_k Wr S`: one block per weight `1..=k`, binomial splits.
    pub fn sk_wr_s(k: u32) -> Result<Self> {
        Self::binomial("sk-wr-s", GroupKind::WreathS, k, None)
    }

    /// `S_k Wr A`: one block per weight `1..=k`, binomial splits.
    pub fn sk_wr_a(k: u32) -> Result<Self> {
        Self::binomial("sk-wr-a", GroupKind::WreathA, k, None)
    }

    /// `A Wr A` with its alphabet truncated at `max_weight`.
    pub fn a_wr_a(max_weight: u32) -> Result<Self> {
        Self::binomial("a-wr-a", GroupKind::WreathA, max_weight, Some(max_weight))
    }

    fn binomial(prefix: &str, kind: GroupKind, k: u32, max_weight: Option<u32>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter(format!(
                "{prefix} needs a parameter >= 1"
            )));
        }
        let profile = AlphabetProfile::new((1..=k).map(|w| (w, 1)))?;
        Self::new(
            format!("{prefix}:{k}"),
            kind,
            profile,
            max_weight,
            binomial_splits(k),
        )
    }

    /// Resolves `sk-wr-s:K`, `sk-wr-a:K` or `a-wr-a:W` (underscores accepted).
    pub fn builtin(spec: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown model {spec:?}"));
        let (name, param) = spec.split_once(':').ok_or_else(bad)?;
        let param: u32 = param.trim().parse().map_err(|_| bad())?;
        match name.trim().replace('_', "-").as_str() {
            "sk-wr-s" => Self::sk_wr_s(param),
            "sk-wr-a" => Self::sk_wr_a(param),
            "a-wr-a" => Self::a_wr_a(param),
            _ => Err(bad()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn profile(&self) -> &AlphabetProfile {
        &self.profile
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.max_weight
    }

    pub fn blocks(&self) -> Vec<Block> {
        self.profile.blocks()
    }

    pub fn splits(&self, b: &Block) -> &[SplitEntry] {
        self.table.get(b).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Rejects weights the truncated alphabet cannot fully describe.
    pub fn check_weight(&self, weight: u32) -> Result<()> {
        match self.max_weight {
            Some(max) if weight > max => Err(Error::WeightOverflow { weight, max }),
            _ => Ok(()),
        }
    }

    /// The Ramsey order on orbit keys: multiset-lex for `wreath_S`, the
    /// content-then-reversed-lex order for `wreath_A`.
    pub fn ramsey_cmp(&self, a: &OrbitKey, b: &OrbitKey) -> Ordering {
        match (a, b) {
            (OrbitKey::Word(x), OrbitKey::Word(y)) => compare_words_a(x, y),
            (OrbitKey::Multiset(x), OrbitKey::Multiset(y)) => compare_multiset_lex(x, y),
            _ => a.cmp(b),
        }
    }

    /// The orbit key of this model's kind with the given letters.
    pub fn key(&self, letters: Vec<Block>) -> OrbitKey {
        match self.kind {
            GroupKind::WreathA => OrbitKey::Word(Word::new(letters)),
            GroupKind::WreathS => OrbitKey::Multiset(BlockMultiset::from_blocks(letters)),
        }
    }

    pub fn empty_key(&self) -> OrbitKey {
        self.key(Vec::new())
    }

    pub fn parse_key(&self, s: &str) -> Result<OrbitKey> {
        let key = match self.kind {
            GroupKind::WreathA => OrbitKey::Word(s.parse()?),
            GroupKind::WreathS => OrbitKey::Multiset(s.parse()?),
        };
        self.check_key(&key)?;
        Ok(key)
    }

    /// Checks that a key has this model's kind and uses only its blocks.
    pub fn check_key(&self, key: &OrbitKey) -> Result<()> {
        let kind_ok = matches!(
            (self.kind, key),
            (GroupKind::WreathA, OrbitKey::Word(_)) | (GroupKind::WreathS, OrbitKey::Multiset(_))
        );
        if !kind_ok {
            return Err(Error::WrongKind(self.kind.name()));
        }
        if let Some(b) = key.blocks().iter().find(|b| !self.profile.contains(b)) {
            return Err(Error::InvalidParameter(format!(
                "block {b} is not in model {}",
                self.name
            )));
        }
        Ok(())
    }

    /// `key ⊕ (b1.1, …)` (or `key + [b1.1, …]`) with `count` padding letters.
    pub fn pad(&self, key: &OrbitKey, count: usize) -> Result<OrbitKey> {
        let least = Block::least();
        if !self.profile.contains(&least) {
            return Err(Error::NoPaddingBlock);
        }
        let mut letters = key.blocks().to_vec();
        letters.extend(std::iter::repeat_n(least, count));
        Ok(self.key(letters))
    }

    /// All orbits on `n`-sets, ascending in the Ramsey order.
    pub fn orbits_of_weight(&self, n: u32) -> Result<Vec<OrbitKey>> {
        self.check_weight(n)?;
        let alphabet: Vec<Block> = self
            .blocks()
            .into_iter()
            .filter(|b| b.weight() <= n)
            .collect();
        let mut keys: Vec<OrbitKey> = match self.kind {
            GroupKind::WreathA => words_of_weight(&alphabet, n)
                .into_iter()
                .map(OrbitKey::Word)
                .collect(),
            GroupKind::WreathS => multisets_of_weight(&alphabet, n)
                .into_iter()
                .map(OrbitKey::Multiset)
                .collect(),
        };
        keys.sort_by(|a, b| self.ramsey_cmp(a, b));
        Ok(keys)
    }

    /// For each orbit `v` of weight `k`, the number of `k`-subsets of a
    /// representative of `u` lying in `v`.
    pub fn suborbit_counts(&self, u: &OrbitKey, k: u32) -> Result<BTreeMap<OrbitKey, BigInt>> {
        self.check_key(u)?;
        let total = u.weight();
        if k > total {
            return Err(Error::InvalidParameter(format!(
                "k = {k} exceeds weight {total} of {u}"
            )));
        }
        // partial left images, keyed by letters in order of choice
        let mut states: BTreeMap<Vec<Block>, (u32, BigInt)> = BTreeMap::new();
        states.insert(Vec::new(), (0, BigInt::one()));
        let mut processed = 0;
        for b in u.blocks() {
            processed += b.weight();
            let mut next: BTreeMap<Vec<Block>, (u32, BigInt)> = BTreeMap::new();
            for (left, (lw, count)) in &states {
                for s in self.splits(b) {
                    let nw = lw + s.left.weight();
                    // the chosen part can't exceed k, the complement can't exceed total - k
                    if nw > k || processed - nw > total - k {
                        continue;
                    }
                    let mut key = left.clone();
                    key.extend_from_slice(s.left.letters());
                    if self.kind == GroupKind::WreathS {
                        key.sort_unstable_by(|x, y| y.cmp(x));
                    }
                    let e = next.entry(key).or_insert_with(|| (nw, BigInt::zero()));
                    e.1 += count * BigInt::from(s.multiplicity);
                }
            }
            states = next;
        }
        Ok(states
            .into_iter()
            .filter(|(_, (w, _))| *w == k)
            .map(|(letters, (_, c))| (self.key(letters), c))
            .collect())
    }

    /// Number of subsets `Y` of a representative of `u` with image `v` whose
    /// complement has image `w`.
    pub fn structure_constant(&self, u: &OrbitKey, v: &OrbitKey, w: &OrbitKey) -> BigInt {
        if u.weight() != v.weight() + w.weight() {
            return BigInt::zero();
        }
        match self.kind {
            GroupKind::WreathA => self.word_constant(u.blocks(), v.blocks(), w.blocks()),
            GroupKind::WreathS => self.multiset_constant(u.blocks(), &v.content(), &w.content()),
        }
    }

    fn word_constant(&self, u: &[Block], v: &[Block], w: &[Block]) -> BigInt {
        // states: positions reached in v and w
        let mut states: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        states.insert((0, 0), BigInt::one());
        for b in u {
            let mut next: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
            for (&(i, j), count) in &states {
                for s in self.splits(b) {
                    let (l, r) = (s.left.letters(), s.right.letters());
                    if v[i..].starts_with(l) && w[j..].starts_with(r) {
                        *next
                            .entry((i + l.len(), j + r.len()))
                            .or_insert_with(BigInt::zero) += count * BigInt::from(s.multiplicity);
                    }
                }
            }
            if next.is_empty() {
                return BigInt::zero();
            }
            states = next;
        }
        states.remove(&(v.len(), w.len())).unwrap_or_default()
    }

    fn multiset_constant(&self, u: &[Block], v: &BlockMultiset, w: &BlockMultiset) -> BigInt {
        let mut states: BTreeMap<(BlockMultiset, BlockMultiset), BigInt> = BTreeMap::new();
        states.insert((v.clone(), w.clone()), BigInt::one());
        for b in u {
            let mut next: BTreeMap<(BlockMultiset, BlockMultiset), BigInt> = BTreeMap::new();
            for ((rv, rw), count) in &states {
                for s in self.splits(b) {
                    let nv = rv.checked_sub(&s.left.content());
                    let nw = rw.checked_sub(&s.right.content());
                    if let (Some(nv), Some(nw)) = (nv, nw) {
                        *next.entry((nv, nw)).or_insert_with(BigInt::zero) +=
                            count * BigInt::from(s.multiplicity);
                    }
                }
            }
            if next.is_empty() {
                return BigInt::zero();
            }
            states = next;
        }
        states
            .into_iter()
            .filter(|((rv, rw), _)| rv.is_empty() && rw.is_empty())
            .map(|(_, c)| c)
            .sum()
    }

    /// Structure constants of `χ_v · χ_w`, nonzero terms only, ascending in
    /// the Ramsey order. Memoized.
    pub fn basis_product(
        &self,
        v: &OrbitKey,
        w: &OrbitKey,
    ) -> Result<Arc<Vec<(OrbitKey, BigInt)>>> {
        let cache_key = (v.clone(), w.clone());
        if let Some(hit) = self.products.lock().expect("cache lock").get(&cache_key) {
            return Ok(Arc::clone(hit));
        }
        self.check_key(v)?;
        self.check_key(w)?;
        let terms: Vec<(OrbitKey, BigInt)> = self
            .orbits_of_weight(v.weight() + w.weight())?
            .into_iter()
            .filter_map(|u| {
                let c = self.structure_constant(&u, v, w);
                (!c.is_zero()).then_some((u, c))
            })
            .collect();
        let terms = Arc::new(terms);
        self.products
            .lock()
            .expect("cache lock")
            .insert(cache_key, Arc::clone(&terms));
        Ok(terms)
    }

    fn canonicalize(&mut self) {
        let kind = self.kind;
        for entries in self.table.values_mut() {
            if kind == GroupKind::WreathS {
                for e in entries.iter_mut() {
                    e.left = e.left.content().as_word();
                    e.right = e.right.content().as_word();
                }
            }
            entries.sort();
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some(max) = self.max_weight {
            if self.profile.max_block_weight() > max {
                return Err(Error::InvalidModel(format!(
                    "profile has blocks above the declared maximum weight {max}"
                )));
            }
        }
        for b in self.blocks() {
            if !self.table.contains_key(&b) {
                return Err(Error::MissingTrivialSplit(b.to_string()));
            }
        }
        for (b, entries) in &self.table {
            let bname = b.to_string();
            if !self.profile.contains(b) {
                return Err(Error::InvalidModel(format!(
                    "split table mentions unknown block {b}"
                )));
            }
            let whole = Word::letter(*b);
            let has = |l: &Word, r: &Word| entries.iter().any(|e| &e.left == l && &e.right == r);
            if !has(&whole, &Word::empty()) || !has(&Word::empty(), &whole) {
                return Err(Error::MissingTrivialSplit(bname));
            }
            let mut seen = std::collections::HashSet::new();
            for e in entries {
                let ename = e.to_string();
                if e.multiplicity == 0 {
                    return Err(Error::InvalidModel(format!(
                        "split {ename} of {b} has multiplicity 0"
                    )));
                }
                if let Some(x) = e
                    .left
                    .letters()
                    .iter()
                    .chain(e.right.letters())
                    .find(|x| !self.profile.contains(x))
                {
                    return Err(Error::InvalidModel(format!(
                        "split {ename} of {b} uses unknown block {x}"
                    )));
                }
                if e.left.weight() + e.right.weight() != b.weight() {
                    return Err(Error::WeightMismatch {
                        block: bname,
                        entry: ename,
                    });
                }
                if !seen.insert((e.left.clone(), e.right.clone())) {
                    return Err(Error::DuplicateSplit {
                        block: bname,
                        entry: ename,
                    });
                }
                let trivial_shape = e.left.is_empty() || e.right.is_empty();
                let is_trivial = (e.left == whole || e.right == whole) && e.multiplicity == 1;
                if trivial_shape && !is_trivial {
                    return Err(Error::InvalidModel(format!(
                        "split {ename} of {b}: the whole block must split only as itself with multiplicity 1"
                    )));
                }
                if !entries.contains(&e.mirrored()) {
                    return Err(Error::AsymmetricSplit {
                        block: bname,
                        entry: ename,
                    });
                }
            }
        }
        Ok(())
    }

    /// Parses and validates the split-table text format.
    pub fn load_custom(text: &str) -> Result<Self> {
        let mut kind = GroupKind::WreathA;
        let mut max_weight = None;
        let mut counts = Vec::new();
        let mut table: BTreeMap<Block, Vec<SplitEntry>> = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let err = |msg: String| Error::Table { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("kind") {
                let value = rest.trim().trim_start_matches('=').trim();
                kind = match value.to_ascii_lowercase().as_str() {
                    "wreath_a" | "wreath-a" | "a" => GroupKind::WreathA,
                    "wreath_s" | "wreath-s" | "s" => GroupKind::WreathS,
                    other => return Err(err(format!("unknown kind {other:?}"))),
                };
            } else if let Some(rest) = line.strip_prefix("maxweight") {
                let value = rest.trim().trim_start_matches('=').trim();
                max_weight = Some(
                    value
                        .parse()
                        .map_err(|_| err(format!("bad maxweight {value:?}")))?,
                );
            } else if let Some(rest) = line.strip_prefix("weight") {
                let (w, c) = rest
                    .split_once('=')
                    .ok_or_else(|| err("expected `weight <i> = <count>`".into()))?;
                let w: u32 = w
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad weight {w:?}")))?;
                let c: u32 = c
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad count {c:?}")))?;
                if w == 0 {
                    return Err(err("weights start at 1".into()));
                }
                counts.push((w, c));
            } else {
                let (block, rest) = line
                    .split_once(':')
                    .ok_or_else(|| err(format!("unrecognized line {line:?}")))?;
                let block: Block = block
                    .trim()
                    .parse()
                    .map_err(|e: Error| err(e.to_string()))?;
                let (parts, mult) = match rest.split_once('*') {
                    Some((p, m)) => (
                        p,
                        m.trim()
                            .parse()
                            .map_err(|_| err(format!("bad multiplicity {m:?}")))?,
                    ),
                    None => (rest, 1),
                };
                let (l, r) = parts
                    .split_once('|')
                    .ok_or_else(|| err("expected `<left> | <right>`".into()))?;
                let parse_part = |s: &str| -> Result<Word> {
                    let s = s.trim();
                    // multiset parts may be written with `+`
                    let s = s.replace('+', "-");
                    s.parse::<Word>().map_err(|e| err(e.to_string()))
                };
                table.entry(block).or_default().push(SplitEntry {
                    left: parse_part(l)?,
                    right: parse_part(r)?,
                    multiplicity: mult,
                });
            }
        }
        let profile = AlphabetProfile::new(counts)?;
        Self::new("custom", kind, profile, max_weight, table)
    }

    /// Serializes to the split-table text format.
    pub fn to_table_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.name);
        let _ = writeln!(out, "kind = {}", self.kind);
        if let Some(m) = self.max_weight {
            let _ = writeln!(out, "maxweight = {m}");
        }
        for (w, c) in self.profile.counts() {
            let _ = writeln!(out, "weight {w} = {c}");
        }
        for (b, entries) in &self.table {
            for e in entries {
                let _ = writeln!(out, "{b} : {e}");
            }
        }
        out
    }
}

/// All multisets of total weight `n` over `alphabet`, ascending.
pub fn multisets_of_weight(alphabet: &[Block], n: u32) -> Vec<BlockMultiset> {
    let mut letters = alphabet.to_vec();
    letters.sort_unstable_by(|a, b| b.cmp(a));
    letters.dedup();
    let mut out = Vec::new();
    // nonincreasing sequences: each letter at or after the previous index
    fn go(
        letters: &[Block],
        start: usize,
        left: u32,
        cur: &mut Vec<Block>,
        out: &mut Vec<BlockMultiset>,
    ) {
        if left == 0 {
            out.push(BlockMultiset::from_blocks(cur.clone()));
            return;
        }
        for (i, &b) in letters.iter().enumerate().skip(start) {
            if b.weight() <= left {
                cur.push(b);
                go(letters, i, left - b.weight(), cur, out);
                cur.pop();
            }
        }
    }
    go(&letters, 0, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> OrbitKey {
        OrbitKey::Word(s.parse().unwrap())
    }

    fn entry(l: &str, r: &str, m: u64) -> SplitEntry {
        SplitEntry {
            left: l.parse().unwrap(),
            right: r.parse().unwrap(),
            multiplicity: m,
        }
    }

    #[test]
    fn sk_wr_a_2_split_table() {
        let m = GroupModel::sk_wr_a(2).unwrap();
        let mut got = m.splits(&Block::first(2)).to_vec();
        got.sort();
        let mut want = vec![
            entry("b2.1", "e", 1),
            entry("e", "b2.1", 1),
            entry("b1.1", "b1.1", 2),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn a_wr_a_3_split() {
        let m = GroupModel::a_wr_a(3).unwrap();
        assert!(m
            .splits(&Block::first(3))
            .contains(&entry("b1.1", "b2.1", 3)));
    }

    #[test]
    fn weight_one_splits_trivially() {
        for m in [
            GroupModel::sk_wr_a(3).unwrap(),
            GroupModel::sk_wr_s(2).unwrap(),
            GroupModel::a_wr_a(4).unwrap(),
        ] {
            let mut got = m.splits(&Block::least()).to_vec();
            got.sort();
            let mut want = vec![entry("b1.1", "e", 1), entry("e", "b1.1", 1)];
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn builtin_rejects_bad_parameters() {
        assert!(GroupModel::sk_wr_a(0).is_err());
        assert!(GroupModel::a_wr_a(0).is_err());
        assert!(GroupModel::builtin("nope:3").is_err());
        assert!(GroupModel::builtin("sk-wr-a").is_err());
        assert_eq!(
            GroupModel::builtin("sk_wr_a:2").unwrap(),
            GroupModel::sk_wr_a(2).unwrap()
        );
    }

    #[test]
    fn table_text_round_trip() {
        for m in [
            GroupModel::sk_wr_a(2).unwrap(),
            GroupModel::sk_wr_s(3).unwrap(),
            GroupModel::a_wr_a(4).unwrap(),
        ] {
            let text = m.to_table_text();
            assert_eq!(GroupModel::load_custom(&text).unwrap(), m, "{text}");
        }
    }

    #[test]
    fn table_line_grammar() {
        let text = "weight 1 = 1\nweight 2 = 1\n\
                    b1.1 : b1.1 | e * 1\nb1.1 : e | b1.1\n\
                    b2.1 : b2.1 | e * 1\nb2.1 : e | b2.1 * 1\n\
                    b2.1 : b1.1 | b1.1 * 2   # two one-point subsets\n";
        let m = GroupModel::load_custom(text).unwrap();
        assert_eq!(m, GroupModel::sk_wr_a(2).unwrap());
        assert!(m
            .splits(&Block::first(2))
            .contains(&entry("b1.1", "b1.1", 2)));
    }

    #[test]
    fn table_validation_errors() {
        let base = "weight 1 = 1\nweight 3 = 1\nb1.1 : b1.1 | e\nb1.1 : e | b1.1\nb3.1 : b3.1 | e\nb3.1 : e | b3.1\n";
        let mismatch = format!("{base}b3.1 : b1.1 | b1.1 * 2\n");
        assert!(matches!(
            GroupModel::load_custom(&mismatch),
            Err(Error::WeightMismatch { .. })
        ));

        let missing = "weight 1 = 1\nb1.1 : b1.1 | e\n";
        assert!(matches!(
            GroupModel::load_custom(missing),
            Err(Error::MissingTrivialSplit(_))
        ));
        let missing_block = "weight 1 = 1\nweight 2 = 1\nb1.1 : b1.1 | e\nb1.1 : e | b1.1\n";
        assert!(matches!(
            GroupModel::load_custom(missing_block),
            Err(Error::MissingTrivialSplit(_))
        ));

        let text = "weight 1 = 2\nweight 2 = 1\n\
                    b1.1 : b1.1 | e\nb1.1 : e | b1.1\nb1.2 : b1.2 | e\nb1.2 : e | b1.2\n\
                    b2.1 : b2.1 | e\nb2.1 : e | b2.1\n";
        let asym = format!("{text}b2.1 : b1.1 | b1.2 * 1\n");
        assert!(matches!(
            GroupModel::load_custom(&asym),
            Err(Error::AsymmetricSplit { .. })
        ));
        let dup = format!("{text}b2.1 : b1.1 | b1.1 * 1\nb2.1 : b1.1 | b1.1 * 1\n");
        assert!(matches!(
            GroupModel::load_custom(&dup),
            Err(Error::DuplicateSplit { .. })
        ));
        assert!(GroupModel::load_custom(&format!(
            "{text}b2.1 : b1.1 | b1.2 * 1\nb2.1 : b1.2 | b1.1 * 1\n"
        ))
        .is_ok());

        assert!(matches!(
            GroupModel::load_custom("weight 1 = 1\nbogus"),
            Err(Error::Table { line: 2, .. })
        ));
        assert!(GroupModel::load_custom("kind = wreath_Q\n").is_err());
    }

    #[test]
    fn orbit_enumeration() {
        let m = GroupModel::sk_wr_a(2).unwrap();
        assert_eq!(
            m.orbits_of_weight(2).unwrap(),
            vec![w("b1.1-b1.1"), w("b2.1")]
        );
        assert_eq!(m.orbits_of_weight(0).unwrap(), vec![w("e")]);
        assert_eq!(m.orbits_of_weight(4).unwrap().len(), 5);
        let s = GroupModel::sk_wr_s(2).unwrap();
        assert_eq!(
            s.orbits_of_weight(0).unwrap(),
            vec![OrbitKey::Multiset(BlockMultiset::empty())]
        );
        // partitions of 4 into parts 1, 2: 1111, 211, 22
        assert_eq!(s.orbits_of_weight(4).unwrap().len(), 3);
        let a = GroupModel::a_wr_a(3).unwrap();
        assert!(matches!(
            a.orbits_of_weight(4),
            Err(Error::WeightOverflow { weight: 4, max: 3 })
        ));
    }

    #[test]
    fn suborbit_examples() {
        let m = GroupModel::sk_wr_a(2).unwrap();
        let counts = m.suborbit_counts(&w("b2.1"), 1).unwrap();
        assert_eq!(counts, BTreeMap::from([(w("b1.1"), BigInt::from(2))]));
        let u = w("b2.1-b1.1-b2.1");
        assert_eq!(
            m.suborbit_counts(&u, 5).unwrap(),
            BTreeMap::from([(u.clone(), BigInt::one())])
        );
        assert_eq!(
            m.suborbit_counts(&u, 0).unwrap(),
            BTreeMap::from([(w("e"), BigInt::one())])
        );
        assert!(m.suborbit_counts(&u, 6).is_err());
    }

    #[test]
    fn structure_constants() {
        let m = GroupModel::sk_wr_a(2).unwrap();
        let prod = m.basis_product(&w("b1.1"), &w("b1.1")).unwrap();
        assert_eq!(
            *prod,
            vec![
                (w("b1.1-b1.1"), BigInt::from(2)),
                (w("b2.1"), BigInt::from(2))
            ]
        );
        let s = GroupModel::sk_wr_s(2).unwrap();
        let one = OrbitKey::Multiset("b1.1".parse().unwrap());
        let prod = s.basis_product(&one, &one).unwrap();
        // two ways to pick a point out of two loose points; two out of a column
        assert_eq!(
            *prod,
            vec![
                (
                    OrbitKey::Multiset("b1.1+b1.1".parse().unwrap()),
                    BigInt::from(2)
                ),
                (OrbitKey::Multiset("b2.1".parse().unwrap()), BigInt::from(2))
            ]
        );
    }

    #[test]
    fn multisets_sorted() {
        let alpha = [Block::first(1), Block::first(2), Block::new(1, 2).unwrap()];
        let ms = multisets_of_weight(&alpha, 4);
        assert!(ms.windows(2).all(|p| p[0] < p[1]));
        assert!(ms.iter().all(|m| m.weight() == 4));
    }
}
