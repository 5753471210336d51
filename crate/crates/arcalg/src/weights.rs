//! Diagrammatic weights, blocks, the Bruhat order and position statistics.
//!
//! Positions are 1-based throughout the public API, matching the way weights
//! are written: `"^^vv"` has an up at positions 1 and 2.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Symbol {
    Down,
    Up,
    Cross,
    Nought,
}

impl Symbol {
    pub fn to_char(self) -> char {
        match self {
            Symbol::Down => 'v',
            Symbol::Up => '^',
            Symbol::Cross => 'x',
            Symbol::Nought => 'o',
        }
    }

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            'v' | '∨' => Some(Symbol::Down),
            '^' | '∧' => Some(Symbol::Up),
            'x' | '×' => Some(Symbol::Cross),
            'o' | '∘' => Some(Symbol::Nought),
            _ => None,
        }
    }

    pub fn is_free(self) -> bool {
        matches!(self, Symbol::Down | Symbol::Up)
    }

    /// Swap up and down; crosses and noughts are fixed.
    pub fn flipped(self) -> Symbol {
        match self {
            Symbol::Down => Symbol::Up,
            Symbol::Up => Symbol::Down,
            s => s,
        }
    }
}

/// A weight, stored densely up to its last non-nought position.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(Vec<Symbol>);

impl Weight {
    pub fn new(mut symbols: Vec<Symbol>) -> Weight {
        while symbols.last() == Some(&Symbol::Nought) {
            symbols.pop();
        }
        Weight(symbols)
    }

    /// Number of stored positions (the last non-nought position).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    /// Symbol at a 1-based position; noughts beyond the stored range.
    pub fn get(&self, pos: usize) -> Symbol {
        if pos == 0 {
            return Symbol::Nought;
        }
        self.0.get(pos - 1).copied().unwrap_or(Symbol::Nought)
    }

    pub fn with(&self, pos: usize, s: Symbol) -> Weight {
        let mut v = self.0.clone();
        if v.len() < pos {
            v.resize(pos, Symbol::Nought);
        }
        v[pos - 1] = s;
        Weight::new(v)
    }

    pub fn ups(&self) -> usize {
        self.0.iter().filter(|&&s| s == Symbol::Up).count()
    }

    pub fn free_positions(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&p| self.get(p).is_free()).collect()
    }

    /// The block this weight lies in.
    pub fn block(&self) -> Block {
        let theta = self
            .0
            .iter()
            .map(|s| match s {
                Symbol::Down | Symbol::Up => Slot::Diamond,
                Symbol::Cross => Slot::Cross,
                Symbol::Nought => Slot::Nought,
            })
            .collect();
        Block::new(theta, Parity::of(self.ups()))
    }

    /// Append symbols after the stored range (used by the ray closure).
    pub fn padded(&self, len: usize, tail: &[Symbol]) -> Weight {
        let mut v = self.0.clone();
        v.resize(len, Symbol::Nought);
        v.extend_from_slice(tail);
        Weight::new(v)
    }

    pub fn truncated(&self, len: usize) -> Weight {
        Weight::new(self.0.iter().take(len).copied().collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({self})")
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Weight> {
        let syms: Option<Vec<Symbol>> = s.trim().chars().map(Symbol::from_char).collect();
        syms.map(Weight::new).ok_or_else(|| Error::Parse {
            what: "weight",
            input: s.to_string(),
        })
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Weight, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Slot {
    Diamond,
    Cross,
    Nought,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip_by(self, n: usize) -> Parity {
        if n.is_multiple_of(2) {
            self
        } else {
            match self {
                Parity::Even => Parity::Odd,
                Parity::Odd => Parity::Even,
            }
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Parity> {
        match s {
            "even" | "0" => Ok(Parity::Even),
            "odd" | "1" => Ok(Parity::Odd),
            _ => Err(Error::Parse {
                what: "parity",
                input: s.to_string(),
            }),
        }
    }
}

/// A block: a block diagram over diamond/cross/nought plus a parity of ups.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Block {
    theta: Vec<Slot>,
    parity: Parity,
}

impl Block {
    pub fn new(mut theta: Vec<Slot>, parity: Parity) -> Block {
        while theta.last() == Some(&Slot::Nought) {
            theta.pop();
        }
        Block { theta, parity }
    }

    /// The principal block with diamonds at 1..=k.
    pub fn principal(k: usize, parity: Parity) -> Block {
        Block::new(vec![Slot::Diamond; k], parity)
    }

    /// Parse a block diagram written over `b` (diamond), `x`, `o`.
    pub fn from_theta(theta: &str, parity: Parity) -> Result<Block> {
        let slots: Option<Vec<Slot>> = theta
            .trim()
            .chars()
            .map(|c| match c {
                'b' | '◆' => Some(Slot::Diamond),
                'x' | '×' => Some(Slot::Cross),
                'o' | '∘' => Some(Slot::Nought),
                _ => None,
            })
            .collect();
        slots.map(|s| Block::new(s, parity)).ok_or_else(|| Error::Parse {
            what: "block diagram",
            input: theta.to_string(),
        })
    }

    pub fn theta(&self) -> &[Slot] {
        &self.theta
    }

    pub fn theta_string(&self) -> String {
        self.theta
            .iter()
            .map(|s| match s {
                Slot::Diamond => 'b',
                Slot::Cross => 'x',
                Slot::Nought => 'o',
            })
            .collect()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn slot(&self, pos: usize) -> Slot {
        if pos == 0 {
            return Slot::Nought;
        }
        self.theta.get(pos - 1).copied().unwrap_or(Slot::Nought)
    }

    pub fn diamonds(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&p| self.slot(p) == Slot::Diamond).collect()
    }

    pub fn rank(&self) -> usize {
        self.theta.iter().filter(|&&s| s == Slot::Diamond).count()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        w.len() <= self.len().max(w.len())
            && (1..=self.len().max(w.len())).all(|p| match (self.slot(p), w.get(p)) {
                (Slot::Diamond, s) => s.is_free(),
                (Slot::Cross, s) => s == Symbol::Cross,
                (Slot::Nought, s) => s == Symbol::Nought,
            })
            && Parity::of(w.ups()) == self.parity
    }

    /// The number of diamond positions weakly left of `pos`.
    pub fn p(&self, pos: usize) -> Result<usize> {
        if self.slot(pos) != Slot::Diamond {
            return Err(Error::NotDiamond(pos));
        }
        Ok((1..=pos).filter(|&q| self.slot(q) == Slot::Diamond).count())
    }

    /// Fill the diamond positions with the given free symbols, in order.
    pub fn weight_from_free(&self, free: &[Symbol]) -> Weight {
        let mut it = free.iter();
        let syms = self
            .theta
            .iter()
            .map(|s| match s {
                Slot::Diamond => *it.next().expect("too few free symbols"),
                Slot::Cross => Symbol::Cross,
                Slot::Nought => Symbol::Nought,
            })
            .collect();
        Weight::new(syms)
    }

    /// The same block diagram with `s` extra diamonds placed directly after
    /// the last diamond or cross, and the parity shifted by `s`.
    pub fn extended(&self, s: usize) -> Block {
        let mut theta = self.theta.clone();
        theta.extend(std::iter::repeat_n(Slot::Diamond, s));
        Block::new(theta, self.parity.flip_by(s))
    }

    /// All weights of the block in canonical order.
    pub fn enumerate(&self) -> Vec<Weight> {
        self.poset().weights.clone()
    }

    pub fn poset(&self) -> Arc<BlockPoset> {
        static CACHE: OnceLock<Mutex<HashMap<Block, Arc<BlockPoset>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(p) = cache.lock().unwrap().get(self) {
            return p.clone();
        }
        let p = Arc::new(BlockPoset::build(self));
        cache.lock().unwrap().insert(self.clone(), p.clone());
        p
    }

    pub fn describe(&self) -> String {
        format!("{}/{}", self.theta_string(), self.parity)
    }
}

/// Weights of one block with their Bruhat order, ranks and canonical order.
#[derive(Debug)]
pub struct BlockPoset {
    pub weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
    rank: Vec<usize>,
    below: Vec<Vec<u64>>,
    down: Vec<Vec<usize>>,
}

impl BlockPoset {
    fn build(block: &Block) -> BlockPoset {
        let m = block.rank();
        let mut raw = Vec::new();
        for bits in 0..(1u64 << m) {
            if Parity::of(bits.count_ones() as usize) != block.parity {
                continue;
            }
            let free: Vec<Symbol> = (0..m)
                .map(|i| if bits >> i & 1 == 1 { Symbol::Up } else { Symbol::Down })
                .collect();
            raw.push(block.weight_from_free(&free));
        }
        let diamonds = block.diamonds();
        let idx: HashMap<Weight, usize> = raw.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let down: Vec<Vec<usize>> = raw
            .iter()
            .map(|w| down_moves(w, &diamonds).iter().map(|v| idx[v]).collect())
            .collect();
        let n = raw.len();
        // longest chain from a maximal element
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, ds) in down.iter().enumerate() {
            for &j in ds {
                up[j].push(i);
            }
        }
        let mut depth = vec![usize::MAX; n];
        fn depth_of(i: usize, up: &[Vec<usize>], depth: &mut [usize]) -> usize {
            if depth[i] != usize::MAX {
                return depth[i];
            }
            let d = up[i].iter().map(|&j| depth_of(j, up, depth) + 1).max().unwrap_or(0);
            depth[i] = d;
            d
        }
        for i in 0..n {
            depth_of(i, &up, &mut depth);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| depth[a].cmp(&depth[b]).then_with(|| tie_break(&raw[a], &raw[b], &diamonds)));
        let weights: Vec<Weight> = order.iter().map(|&i| raw[i].clone()).collect();
        let pos_of: Vec<usize> = {
            let mut p = vec![0; n];
            for (new, &old) in order.iter().enumerate() {
                p[old] = new;
            }
            p
        };
        let index = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let rank = order.iter().map(|&i| depth[i]).collect();
        let down: Vec<Vec<usize>> = order.iter().map(|&i| down[i].iter().map(|&j| pos_of[j]).collect()).collect();
        let words = n.div_ceil(64);
        let mut below = vec![vec![0u64; words]; n];
        for (i, row) in below.iter_mut().enumerate() {
            let mut queue = VecDeque::from([i]);
            row[i / 64] |= 1 << (i % 64);
            while let Some(x) = queue.pop_front() {
                for &y in &down[x] {
                    if row[y / 64] >> (y % 64) & 1 == 0 {
                        row[y / 64] |= 1 << (y % 64);
                        queue.push_back(y);
                    }
                }
            }
        }
        BlockPoset {
            weights,
            index,
            rank,
            below,
            down,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn index(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Longest-chain distance below the maximum.
    pub fn rank_of(&self, i: usize) -> usize {
        self.rank[i]
    }

    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.below[b][a / 64] >> (a % 64) & 1 == 1
    }

    /// Weights reachable from `i` by a single basic move making it smaller.
    pub fn basic_moves_down(&self, i: usize) -> &[usize] {
        &self.down[i]
    }
}

/// Canonical tie-break: at the first differing diamond position, down sorts first.
fn tie_break(a: &Weight, b: &Weight, diamonds: &[usize]) -> std::cmp::Ordering {
    for &p in diamonds {
        let (x, y) = (a.get(p), b.get(p));
        if x != y {
            return if x == Symbol::Down {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            };
        }
    }
    std::cmp::Ordering::Equal
}

/// Basic linkage moves that make a weight smaller.
fn down_moves(w: &Weight, diamonds: &[usize]) -> Vec<Weight> {
    let mut out = Vec::new();
    for pair in diamonds.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if w.get(a) == Symbol::Up && w.get(b) == Symbol::Down {
            out.push(w.with(a, Symbol::Down).with(b, Symbol::Up));
        }
    }
    if diamonds.len() >= 2 {
        let (a, b) = (diamonds[0], diamonds[1]);
        if w.get(a) == Symbol::Down && w.get(b) == Symbol::Down {
            out.push(w.with(a, Symbol::Up).with(b, Symbol::Up));
        }
    }
    out
}

pub fn enumerate_block(block: &Block) -> Vec<Weight> {
    block.enumerate()
}

pub fn same_block(a: &Weight, b: &Weight) -> bool {
    a.block() == b.block()
}

/// `a <= b` in the Bruhat order; false across blocks.
pub fn bruhat_leq(a: &Weight, b: &Weight) -> bool {
    if !same_block(a, b) {
        return false;
    }
    let poset = a.block().poset();
    match (poset.index(a), poset.index(b)) {
        (Some(i), Some(j)) => poset.leq_idx(i, j),
        _ => false,
    }
}

pub fn p_statistic(block: &Block, pos: usize) -> Result<usize> {
    block.p(pos)
}

/// The simple reflection `s_i` acting on a principal weight.
pub fn apply_reflection(w: &Weight, i: usize) -> Weight {
    let (a, b) = if i == 0 { (1, 2) } else { (i, i + 1) };
    let (x, y) = (w.get(a), w.get(b));
    if !x.is_free() || !y.is_free() {
        return w.clone();
    }
    let swap = match i {
        0 => x == y,
        1 => x != y,
        _ => true,
    };
    if !swap {
        return w.clone();
    }
    if i == 0 {
        w.with(a, x.flipped()).with(b, y.flipped())
    } else {
        w.with(a, y).with(b, x)
    }
}

/// Apply a word `s_{i1} s_{i2} ...` from left to right.
pub fn apply_word(w: &Weight, word: &[usize]) -> Weight {
    word.iter().fold(w.clone(), |acc, &i| apply_reflection(&acc, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn even_k4_order() {
        let got: Vec<String> = Block::principal(4, Parity::Even).enumerate().iter().map(|w| w.to_string()).collect();
        assert_eq!(got, ["vvvv", "^^vv", "^v^v", "v^^v", "^vv^", "v^v^", "vv^^", "^^^^"]);
    }

    #[test]
    fn small_blocks() {
        assert_eq!(Block::principal(1, Parity::Even).enumerate(), vec![w("v")]);
        assert_eq!(Block::principal(6, Parity::Even).enumerate().len(), 32);
        for k in 1..=10 {
            assert_eq!(Block::principal(k, Parity::Odd).enumerate().len(), 1 << (k - 1));
        }
    }

    #[test]
    fn empty_diamond_set() {
        let b = Block::from_theta("xxo", Parity::Even).unwrap();
        assert_eq!(b.enumerate(), vec![w("xx")]);
        let b = Block::from_theta("xxo", Parity::Odd).unwrap();
        assert!(b.enumerate().is_empty());
    }

    #[test]
    fn trailing_noughts_ignored() {
        assert_eq!(w("^^vvooo"), w("^^vv"));
        assert_eq!(w("^^vv").get(7), Symbol::Nought);
    }

    #[test]
    fn linkage_example() {
        let lam = w("v^^^^vvvv^");
        assert!(same_block(&lam, &w("vv^v^vvvv^")));
        assert!(same_block(&lam, &lam));
        assert!(!same_block(&lam, &w("vv^^^vvvv^")));
    }

    #[test]
    fn bruhat_extremes() {
        assert!(bruhat_leq(&w("^^^^"), &w("vvvv")));
        assert!(!bruhat_leq(&w("vvvv"), &w("^^^^")));
        assert!(bruhat_leq(&w("v^v^"), &w("v^v^")));
        assert!(!bruhat_leq(&w("v^^v"), &w("^vv^")));
    }

    #[test]
    fn p_counts_diamonds() {
        let b = Block::from_theta("bbxo", Parity::Even).unwrap();
        assert_eq!(b.p(2), Ok(2));
        assert_eq!(Block::principal(4, Parity::Even).p(3), Ok(3));
        let b = Block::from_theta("bxbbo", Parity::Even).unwrap();
        assert_eq!(b.p(4), Ok(3));
        assert_eq!(b.p(2), Err(Error::NotDiamond(2)));
    }

    #[test]
    fn reflections() {
        assert_eq!(apply_reflection(&w("vvvv"), 0), w("^^vv"));
        assert_eq!(apply_reflection(&w("vvvv"), 2), w("vvvv"));
        assert_eq!(apply_word(&w("vvvv"), &[0, 2, 1]), w("v^^v"));
        let listed = [
            (vec![], "vvvv"),
            (vec![0], "^^vv"),
            (vec![0, 2], "^v^v"),
            (vec![0, 2, 1], "v^^v"),
            (vec![0, 2, 3], "^vv^"),
            (vec![0, 2, 3, 1], "v^v^"),
            (vec![0, 2, 1, 3, 2], "vv^^"),
            (vec![0, 2, 1, 3, 2, 0], "^^^^"),
        ];
        for (word, expect) in listed {
            assert_eq!(apply_word(&w("vvvv"), &word), w(expect), "{word:?}");
        }
    }
}
