//! Binary words, compositions, and the shuffle algebra.
//!
//! A word is a finite sequence over the letters L0/L1, packed into a u32
//! bit field (bit k = letter at position k from the left). Compositions
//! are sequences of parts >= 1. Two word/composition maps coexist:
//!
//! - [`composition_to_word`] builds `L0^{m_k-1} L1 ... L0^{m_1-1} L1`,
//!   i.e. the LAST part's block comes first. This is the order the
//!   associator table is indexed by.
//! - the classical map (first part's block first) drives the nested-sum
//!   MZV engine and duality; the two differ by reversing the composition.

use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_LEN: u32 = 30;

/// Packed binary word. Empty word allowed. Ordered by (length, bits),
/// which makes BTreeMap iteration weight-graded and deterministic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    len: u8,
    bits: u32,
}

impl Word {
    pub fn empty() -> Self {
        Word { len: 0, bits: 0 }
    }

    pub fn from_bits(len: u32, bits: u32) -> Self {
        assert!(len <= MAX_LEN, "word too long");
        assert!(len == 32 || bits < (1u32 << len), "stray bits");
        Word {
            len: len as u8,
            bits,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = 0u32;
        let mut len = 0u32;
        for ch in s.chars() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << len,
                _ => return Err(Error::BadWord(s.to_string())),
            }
            len += 1;
            if len > MAX_LEN {
                return Err(Error::BadWord(s.to_string()));
            }
        }
        Ok(Word {
            len: len as u8,
            bits,
        })
    }

    pub fn len(&self) -> u32 {
        self.len as u32
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn weight(&self) -> u32 {
        self.len()
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Letter at position i (0 = leftmost); true = L1.
    pub fn letter(&self, i: u32) -> bool {
        debug_assert!(i < self.len());
        (self.bits >> i) & 1 == 1
    }

    /// Number of L1 letters.
    pub fn depth(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn push(&self, one: bool) -> Self {
        assert!(self.len() < MAX_LEN);
        Word {
            len: self.len + 1,
            bits: self.bits | ((one as u32) << self.len),
        }
    }

    /// New word with `one` prepended on the left.
    pub fn push_front(&self, one: bool) -> Self {
        assert!(self.len() < MAX_LEN);
        Word {
            len: self.len + 1,
            bits: (self.bits << 1) | (one as u32),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        assert!(self.len() + other.len() <= MAX_LEN);
        Word {
            len: self.len + other.len,
            bits: self.bits | (other.bits << self.len),
        }
    }

    pub fn reverse(&self) -> Self {
        let mut bits = 0u32;
        for i in 0..self.len() {
            if self.letter(i) {
                bits |= 1 << (self.len() - 1 - i);
            }
        }
        Word {
            len: self.len,
            bits,
        }
    }

    pub fn complement(&self) -> Self {
        let mask = if self.len == 0 {
            0
        } else {
            (1u32 << self.len) - 1
        };
        Word {
            len: self.len,
            bits: !self.bits & mask,
        }
    }

    /// Reverse-complement, the word-level duality involution.
    pub fn dual(&self) -> Self {
        self.reverse().complement()
    }

    pub fn first(&self) -> Option<bool> {
        (self.len > 0).then(|| self.letter(0))
    }

    pub fn last(&self) -> Option<bool> {
        (self.len > 0).then(|| self.letter(self.len() - 1))
    }

    /// Prefix of length n.
    pub fn prefix(&self, n: u32) -> Self {
        assert!(n <= self.len());
        let mask = if n == 0 { 0 } else { (1u32 << n) - 1 };
        Word {
            len: n as u8,
            bits: self.bits & mask,
        }
    }

    /// Suffix starting at position n.
    pub fn suffix(&self, n: u32) -> Self {
        assert!(n <= self.len());
        Word {
            len: (self.len() - n) as u8,
            bits: self.bits >> n,
        }
    }

    /// Convergent iff starts with L0 and ends with L1.
    pub fn is_convergent(&self) -> bool {
        self.len > 0 && self.first() == Some(false) && self.last() == Some(true)
    }

    /// All words of the given length, in bit order.
    pub fn all_of_len(len: u32) -> impl Iterator<Item = Word> {
        assert!(len <= MAX_LEN);
        (0u32..(1u32 << len)).map(move |bits| Word::from_bits(len, bits))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.letter(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{}\")", self)
    }
}

/// Composition: parts m_1, ..., m_k, all >= 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::ZeroPart);
        }
        Ok(Composition(parts))
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse {
                pos: 0,
                msg: format!("bad composition {s:?}: {e}"),
            })?;
        Composition::new(parts)
    }

    /// Convergence of the associated iterated integral: the word must
    /// start with L0, i.e. the last part is >= 2.
    pub fn is_convergent(&self) -> bool {
        composition_to_word(self).is_convergent()
    }

    /// Convergence in the classical nested-sum order (first part >= 2).
    pub fn is_classical_convergent(&self) -> bool {
        !self.0.is_empty() && self.0[0] >= 2
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&strs.join(","))
    }
}

/// Word for a composition with the last part's block leftmost:
/// `L0^{m_k-1} L1 L0^{m_{k-1}-1} L1 ... L0^{m_1-1} L1`.
pub fn composition_to_word(c: &Composition) -> Word {
    let mut w = Word::empty();
    for &m in c.0.iter().rev() {
        for _ in 0..m - 1 {
            w = w.push(false);
        }
        w = w.push(true);
    }
    w
}

/// Inverse of [`composition_to_word`]. The word must end with L1.
pub fn word_to_composition(w: &Word) -> Result<Composition> {
    if w.last() == Some(false) {
        return Err(Error::BadWord(format!("{w} does not end with L1")));
    }
    // Blocks read left to right are (m_k, ..., m_1); reverse them.
    let mut parts_rev = Vec::new();
    let mut zeros = 0u32;
    for i in 0..w.len() {
        if w.letter(i) {
            parts_rev.push(zeros + 1);
            zeros = 0;
        } else {
            zeros += 1;
        }
    }
    parts_rev.reverse();
    Composition::new(parts_rev)
}

/// Classical word map: first part's block leftmost
/// (`L0^{m_1-1} L1 ... L0^{m_k-1} L1`). Used by the MZV engine.
pub fn classical_word(c: &Composition) -> Word {
    let mut rev = c.clone();
    rev.0.reverse();
    composition_to_word(&rev)
}

/// Inverse of [`classical_word`].
pub fn classical_composition(w: &Word) -> Result<Composition> {
    let mut c = word_to_composition(w)?;
    c.0.reverse();
    Ok(c)
}

/// Classical duality: reverse-complement the classical word and read it
/// back classically. Involution on convergent compositions.
pub fn dual_composition(c: &Composition) -> Result<Composition> {
    if !c.is_classical_convergent() {
        return Err(Error::DivergentComposition(c.0.clone()));
    }
    classical_composition(&classical_word(c).dual())
}

/// Finitely supported formal sum of words with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WordSum {
    terms: BTreeMap<Word, BigRational>,
}

impl WordSum {
    pub fn new() -> Self {
        WordSum {
            terms: BTreeMap::new(),
        }
    }

    pub fn singleton(w: Word) -> Self {
        let mut s = WordSum::new();
        s.add_word(w, BigRational::from_integer(1.into()));
        s
    }

    pub fn add_word(&mut self, w: Word, coeff: BigRational) {
        use num_traits::Zero;
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> BigRational {
        use num_traits::Zero;
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Sum of all multiplicities.
    pub fn total_multiplicity(&self) -> BigRational {
        use num_traits::Zero;
        let mut acc = BigRational::zero();
        for v in self.terms.values() {
            acc += v;
        }
        acc
    }
}

/// Shuffle product: sum over all order-preserving interleavings.
pub fn shuffle(u: &Word, v: &Word) -> WordSum {
    let n = u.len() + v.len();
    assert!(n <= MAX_LEN);
    let mut out = WordSum::new();
    let one = BigRational::from_integer(1.into());
    // Choose the positions of u's letters among n slots.
    let mut positions: Vec<u32> = (0..u.len()).collect();
    loop {
        let mut bits = 0u32;
        let mut ui = 0u32;
        let mut vi = 0u32;
        let mut pos_iter = positions.iter().peekable();
        for slot in 0..n {
            let from_u = pos_iter.peek() == Some(&&slot);
            let letter = if from_u {
                pos_iter.next();
                let l = u.letter(ui);
                ui += 1;
                l
            } else {
                let l = v.letter(vi);
                vi += 1;
                l
            };
            if letter {
                bits |= 1 << slot;
            }
        }
        out.add_word(Word::from_bits(n, bits), one.clone());
        // Next combination in lexicographic order.
        if u.len() == 0 {
            break;
        }
        let k = u.len() as usize;
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if positions[i] < n - (k as u32 - i as u32) {
                positions[i] += 1;
                for j in i + 1..k {
                    positions[j] = positions[j - 1] + 1;
                }
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn word_roundtrip_and_accessors() {
        let x = w("01001");
        assert_eq!(x.to_string(), "01001");
        assert_eq!(x.len(), 5);
        assert_eq!(x.depth(), 2);
        assert!(x.is_convergent());
        assert_eq!(x.reverse().to_string(), "10010");
        assert_eq!(x.complement().to_string(), "10110");
        assert_eq!(x.dual().to_string(), "01101");
        assert_eq!(x.prefix(2).to_string(), "01");
        assert_eq!(x.suffix(2).to_string(), "001");
        assert!(Word::parse("012").is_err());
    }

    #[test]
    fn shuffle_unit() {
        let s = shuffle(&Word::empty(), &w("0101"));
        assert_eq!(s.len(), 1);
        assert!(s.coeff(&w("0101")).is_one());
    }

    #[test]
    fn shuffle_01_01() {
        let s = shuffle(&w("01"), &w("01"));
        assert_eq!(s.coeff(&w("0101")), r(2));
        assert_eq!(s.coeff(&w("0011")), r(4));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn shuffle_0_1() {
        let s = shuffle(&w("0"), &w("1"));
        assert_eq!(s.coeff(&w("01")), r(1));
        assert_eq!(s.coeff(&w("10")), r(1));
    }

    #[test]
    fn shuffle_total_multiplicity() {
        // binom(|u|+|v|, |u|) for all pairs of total weight <= 8
        fn binom(n: u64, k: u64) -> u64 {
            let mut acc = 1u64;
            for i in 0..k {
                acc = acc * (n - i) / (i + 1);
            }
            acc
        }
        for total in 0..=8u32 {
            for lu in 0..=total {
                let lv = total - lu;
                for u in Word::all_of_len(lu) {
                    for v in Word::all_of_len(lv) {
                        let s = shuffle(&u, &v);
                        assert_eq!(
                            s.total_multiplicity(),
                            r(binom(total as u64, lu as u64) as i64),
                            "u={u} v={v}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn shuffle_commutative_associative() {
        // Exhaustive on small weights; shuffles are collected maps so
        // commutativity is map equality.
        for total in 0..=6u32 {
            for lu in 0..=total {
                for u in Word::all_of_len(lu) {
                    for v in Word::all_of_len(total - lu) {
                        assert_eq!(shuffle(&u, &v), shuffle(&v, &u));
                    }
                }
            }
        }
        // associativity spot checks on weight <= 8 triples
        let triples = [
            ("0", "1", "01"),
            ("01", "0", "10"),
            ("01", "01", "0"),
            ("001", "01", "1"),
            ("11", "00", "01"),
        ];
        for (a, b, c) in triples {
            let (a, b, c) = (w(a), w(b), w(c));
            let mut left = WordSum::new();
            for (x, cx) in shuffle(&a, &b).iter() {
                for (y, cy) in shuffle(x, &c).iter() {
                    left.add_word(*y, cx * cy);
                }
            }
            let mut right = WordSum::new();
            for (x, cx) in shuffle(&b, &c).iter() {
                for (y, cy) in shuffle(&a, x).iter() {
                    right.add_word(*y, cx * cy);
                }
            }
            assert_eq!(left, right);
        }
    }

    #[test]
    fn composition_word_maps() {
        assert_eq!(composition_to_word(&Composition::new(vec![2]).unwrap()), w("01"));
        assert_eq!(
            composition_to_word(&Composition::new(vec![3, 2]).unwrap()),
            w("01001")
        );
        assert_eq!(composition_to_word(&Composition::new(vec![1]).unwrap()), w("1"));
        // round trip
        for weight in 1..=12u32 {
            for word in Word::all_of_len(weight) {
                if word.last() == Some(true) {
                    let c = word_to_composition(&word).unwrap();
                    assert_eq!(composition_to_word(&c), word);
                }
            }
        }
    }

    #[test]
    fn classical_map_is_reversed_paper_map() {
        let c = Composition::new(vec![3, 2]).unwrap();
        assert_eq!(classical_word(&c), w("00101"));
        assert_eq!(classical_composition(&w("00101")).unwrap(), c);
    }

    #[test]
    fn duality_examples() {
        let d = dual_composition(&Composition::new(vec![3]).unwrap()).unwrap();
        assert_eq!(d, Composition::new(vec![2, 1]).unwrap());
        let c2 = Composition::new(vec![2]).unwrap();
        assert_eq!(dual_composition(&c2).unwrap(), c2);
        let c42 = Composition::new(vec![4, 2]).unwrap();
        assert_eq!(
            dual_composition(&dual_composition(&c42).unwrap()).unwrap(),
            c42
        );
        assert!(dual_composition(&Composition::new(vec![1, 2]).unwrap()).is_err());
    }

    #[test]
    fn injectivity_of_paper_map() {
        use std::collections::BTreeSet;
        // all compositions of weight <= 12 map to distinct words
        fn compositions(weight: u32) -> Vec<Vec<u32>> {
            if weight == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 1..=weight {
                for rest in compositions(weight - first) {
                    let mut c = vec![first];
                    c.extend(rest);
                    out.push(c);
                }
            }
            out
        }
        for weight in 1..=12u32 {
            let mut seen = BTreeSet::new();
            for parts in compositions(weight) {
                if parts.is_empty() {
                    continue;
                }
                let word = composition_to_word(&Composition::new(parts).unwrap());
                assert_eq!(word.weight(), weight);
                assert!(seen.insert(word));
            }
        }
    }
}
