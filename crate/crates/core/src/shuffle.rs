//! Shuffle products, greatest shuffles and Lyndon words.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::blocks::{compare_lex, Block, Word};
use crate::error::{Error, Result};

/// Integer combination of words. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordPolynomial {
    terms: BTreeMap<Word, BigInt>,
}

impl WordPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(w: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(w, BigInt::one());
        p
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Terms in ascending `<lex` order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Bilinear extension of [`shuffle`].
    pub fn shuffle_with(&self, other: &WordPolynomial) -> WordPolynomial {
        let mut out = WordPolynomial::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                for (w, c) in shuffle(u, v).terms {
                    out.add_term(w, a * b * c);
                }
            }
        }
        out
    }

    /// Parses the `<int> <word>` line format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = WordPolynomial::zero();
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let (c, w) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::Parse(format!("bad polynomial line {line:?}")))?;
            let c: BigInt = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            p.add_term(w.trim().parse()?, c);
        }
        Ok(p)
    }
}

impl fmt::Display for WordPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, c) in &self.terms {
            writeln!(f, "{c} {w}")?;
        }
        Ok(())
    }
}

/// Shuffle product `u ⧢ v`: every interleaving of the two letter sequences,
/// counted with multiplicity.
pub fn shuffle(u: &Word, v: &Word) -> WordPolynomial {
    let (a, b) = (u.letters(), v.letters());
    // suffix shuffles, filled from the back: table[i][j] = a[i..] ⧢ b[j..]
    let mut table: Vec<Vec<BTreeMap<Vec<Block>, BigInt>>> =
        vec![vec![BTreeMap::new(); b.len() + 1]; a.len() + 1];
    for i in (0..=a.len()).rev() {
        for j in (0..=b.len()).rev() {
            let mut cell = BTreeMap::new();
            if i == a.len() && j == b.len() {
                cell.insert(Vec::new(), BigInt::one());
            }
            if i < a.len() {
                prepend_into(&mut cell, a[i], &table[i + 1][j]);
            }
            if j < b.len() {
                prepend_into(&mut cell, b[j], &table[i][j + 1]);
            }
            table[i][j] = cell;
        }
    }
    let mut out = WordPolynomial::zero();
    for (w, c) in std::mem::take(&mut table[0][0]) {
        out.add_term(Word::new(w), c);
    }
    out
}

fn prepend_into(
    cell: &mut BTreeMap<Vec<Block>, BigInt>,
    x: Block,
    from: &BTreeMap<Vec<Block>, BigInt>,
) {
    for (w, c) in from {
        let mut k = Vec::with_capacity(w.len() + 1);
        k.push(x);
        k.extend_from_slice(w);
        *cell.entry(k).or_insert_with(BigInt::zero) += c;
    }
}

/// The `<lex`-greatest shuffle of `beta` and `gamma`. Merges by taking the
/// larger next letter; on equal letters the side whose remaining suffix is
/// `<lex`-greater goes first.
pub fn greatest_shuffle(beta: &Word, gamma: &Word) -> Word {
    let (d, e) = (beta.letters(), gamma.letters());
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(d.len() + e.len());
    while i < d.len() || j < e.len() {
        if i >= d.len() || (j < e.len() && e[j..] >= d[i..]) {
            out.push(e[j]);
            j += 1;
        } else {
            out.push(d[i]);
            i += 1;
        }
    }
    Word::new(out)
}

/// The plain merge: take from `gamma` whenever `E_j >= Δ_i`. Agrees with
/// [`greatest_shuffle`] unless equal letters meet, where it can fall
/// short, e.g. on `(b1.1-b2.1, b1.1)`.
pub fn merge_sort(beta: &Word, gamma: &Word) -> Word {
    let (d, e) = (beta.letters(), gamma.letters());
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(d.len() + e.len());
    while i < d.len() || j < e.len() {
        if i >= d.len() || (j < e.len() && e[j] >= d[i]) {
            out.push(e[j]);
            j += 1;
        } else {
            out.push(d[i]);
            i += 1;
        }
    }
    Word::new(out)
}

/// Nonempty and strictly `<lex`-smaller than every nontrivial proper right
/// factor.
pub fn is_lyndon(w: &Word) -> bool {
    let l = w.letters();
    !l.is_empty() && (1..l.len()).all(|i| l < &l[i..])
}

/// Nonempty and strictly smaller than every nontrivial rotation.
pub fn rotation_lyndon_check(w: &Word) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| compare_lex(w, &w.rotate(k)).is_lt())
}

/// Factorizes `w` as `l1^r1 … lk^rk` with `l1 > … > lk` Lyndon (Duval).
pub fn lyndon_factorization(w: &Word) -> Result<Vec<(Word, usize)>> {
    let s = w.letters();
    if s.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut factors: Vec<(Word, usize)> = Vec::new();
    let n = s.len();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && s[k] <= s[j] {
            k = if s[k] < s[j] { i } else { k + 1 };
            j += 1;
        }
        let period = j - k;
        while i <= k {
            let f = Word::new(s[i..i + period].to_vec());
            match factors.last_mut() {
                Some((last, r)) if *last == f => *r += 1,
                _ => factors.push((f, 1)),
            }
            i += period;
        }
    }
    Ok(factors)
}

/// `w = uv` with `v` the `<lex`-smallest nontrivial proper right factor.
pub fn standard_factorization(w: &Word) -> Result<(Word, Word)> {
    if w.len() < 2 || !is_lyndon(w) {
        return Err(Error::NotLyndon(w.to_string()));
    }
    let l = w.letters();
    let cut = (1..l.len())
        .min_by(|&a, &b| l[a..].cmp(&l[b..]))
        .expect("length >= 2");
    Ok((w.slice(0, cut), w.slice(cut, l.len())))
}

/// All words of total weight `n` over `alphabet` (duplicates in the
/// alphabet are ignored), in ascending `<lex` order.
pub fn words_of_weight(alphabet: &[Block], n: u32) -> Vec<Word> {
    let mut letters = alphabet.to_vec();
    letters.sort_unstable();
    letters.dedup();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(letters: &[Block], left: u32, cur: &mut Vec<Block>, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(Word::new(cur.clone()));
            return;
        }
        for &b in letters {
            if b.weight() <= left {
                cur.push(b);
                go(letters, left - b.weight(), cur, out);
                cur.pop();
            }
        }
    }
    go(&letters, n, &mut cur, &mut out);
    // DFS over sorted letters with the empty-suffix case emitted first
    // already yields ascending <lex order.
    out
}

/// Lyndon words of total weight `n`, ascending `<lex`.
pub fn lyndon_words_of_weight(alphabet: &[Block], n: u32) -> Vec<Word> {
    words_of_weight(alphabet, n)
        .into_iter()
        .filter(is_lyndon)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(w: u32, i: u32) -> Block {
        Block::new(w, i).unwrap()
    }

    fn word(letters: &[Block]) -> Word {
        Word::new(letters.to_vec())
    }

    // a < b < c as distinct weight-1 letters
    fn abc() -> (Block, Block, Block) {
        (b(1, 1), b(1, 2), b(1, 3))
    }

    #[test]
    fn shuffle_worked_example() {
        let (a, bb, c) = abc();
        let p = shuffle(&word(&[a, bb]), &word(&[a, c]));
        let mut expect = WordPolynomial::zero();
        expect.add_term(word(&[a, bb, a, c]), 1.into());
        expect.add_term(word(&[a, a, bb, c]), 2.into());
        expect.add_term(word(&[a, a, c, bb]), 2.into());
        expect.add_term(word(&[a, c, a, bb]), 1.into());
        assert_eq!(p, expect);
    }

    #[test]
    fn shuffle_identity_and_square() {
        let (a, bb, _) = abc();
        let u = word(&[a, bb]);
        assert_eq!(
            shuffle(&u, &Word::empty()),
            WordPolynomial::monomial(u.clone())
        );
        assert_eq!(shuffle(&Word::empty(), &u), WordPolynomial::monomial(u));
        let p = shuffle(&word(&[a]), &word(&[a]));
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coefficient(&word(&[a, a])), 2.into());
    }

    #[test]
    fn greatest_shuffle_examples() {
        let (d1, d2) = (b(1, 1), b(2, 1));
        assert_eq!(
            greatest_shuffle(&word(&[d2, d1]), &word(&[d1])),
            word(&[d2, d1, d1])
        );
        let g = word(&[d2, d1, d2]);
        assert_eq!(greatest_shuffle(&Word::empty(), &g), g);
        assert_eq!(greatest_shuffle(&g, &Word::empty()), g);
        assert_eq!(
            greatest_shuffle(&word(&[b(1, 1)]), &word(&[b(1, 2)])),
            word(&[b(1, 2), b(1, 1)])
        );
        let (x, y) = (word(&[d1, d2]), word(&[d1]));
        assert_eq!(greatest_shuffle(&x, &y), word(&[d1, d2, d1]));
        assert_eq!(merge_sort(&x, &y), word(&[d1, d1, d2]));
        assert_eq!(
            merge_sort(&word(&[d2, d1]), &word(&[d1])),
            word(&[d2, d1, d1])
        );
    }

    #[test]
    fn lyndon_examples() {
        let (a, bb, _) = abc();
        assert!(is_lyndon(&word(&[a])));
        assert!(!is_lyndon(&word(&[a, a])));
        assert!(is_lyndon(&word(&[a, a, bb])));
        assert!(!is_lyndon(&Word::empty()));
        assert!(rotation_lyndon_check(&word(&[a, a, bb])));
        assert!(!rotation_lyndon_check(&word(&[a, bb, a])));
        assert!(rotation_lyndon_check(&word(&[a])));
    }

    #[test]
    fn factorization_examples() {
        let (a, bb, _) = abc();
        assert_eq!(
            lyndon_factorization(&word(&[a, a, bb])).unwrap(),
            vec![(word(&[a, a, bb]), 1)]
        );
        assert_eq!(
            lyndon_factorization(&word(&[bb, a, a, bb])).unwrap(),
            vec![(word(&[bb]), 1), (word(&[a, a, bb]), 1)]
        );
        assert_eq!(
            lyndon_factorization(&word(&[a, a, a])).unwrap(),
            vec![(word(&[a]), 3)]
        );
        assert_eq!(lyndon_factorization(&Word::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn standard_factorization_examples() {
        let (a, bb, _) = abc();
        // right factors of aab are ab and b, and ab <lex b
        assert_eq!(
            standard_factorization(&word(&[a, a, bb])).unwrap(),
            (word(&[a]), word(&[a, bb]))
        );
        assert_eq!(
            standard_factorization(&word(&[a, bb])).unwrap(),
            (word(&[a]), word(&[bb]))
        );
        assert_eq!(
            standard_factorization(&word(&[a, a, bb, a, bb])).unwrap(),
            (word(&[a, a, bb]), word(&[a, bb]))
        );
        assert!(standard_factorization(&word(&[a])).is_err());
        assert!(standard_factorization(&word(&[bb, a])).is_err());
    }

    #[test]
    fn lyndon_enumeration_examples() {
        let (d1, d2) = (b(1, 1), b(2, 1));
        let five = lyndon_words_of_weight(&[d1, d2], 5);
        assert_eq!(five, vec![word(&[d1, d1, d1, d2]), word(&[d1, d2, d2])]);
        assert_eq!(lyndon_words_of_weight(&[d1], 1), vec![word(&[d1])]);
        assert!(lyndon_words_of_weight(&[d1], 4).is_empty());
    }

    #[test]
    fn words_of_weight_sorted() {
        let alpha = [b(2, 1), b(1, 1), b(1, 2)];
        for n in 0..6 {
            let ws = words_of_weight(&alpha, n);
            assert!(ws.windows(2).all(|p| p[0] < p[1]));
            assert!(ws.iter().all(|w| w.weight() == n));
        }
    }

    #[test]
    fn polynomial_text_round_trip() {
        let (a, bb, c) = abc();
        let p = shuffle(&word(&[a, bb]), &word(&[a, c]));
        let text = p.to_string();
        assert!(text.starts_with("2 b1.1-b1.1-b1.2-b1.3\n"));
        assert_eq!(WordPolynomial::parse(&text).unwrap(), p);
    }
}
