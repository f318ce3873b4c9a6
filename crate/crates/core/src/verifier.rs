//! Alternation measurement and Davenport–Schinzel conformance checks.
//!
//! The alternation length of a pair `{a, b}` is the length of the sequence
//! left after deleting every other symbol and collapsing runs of equal
//! entries. A sequence has order `s` iff every pair alternates at most
//! `s + 1` times, so its minimal order is `max alternation - 1`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::sequence::{alphabet_size, first_repetition, DsParams, Symbol};

/// Alphabets up to this size use a dense triangular pair table.
pub const DENSE_PAIR_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternationReport {
    pub length: usize,
    pub alphabet: usize,
    pub max_alternation: u64,
    /// Lexicographically smallest pair attaining `max_alternation`; `None`
    /// for single-symbol input.
    pub witness_pair: Option<(Symbol, Symbol)>,
    pub minimal_order: u64,
}

/// Longest `a,b,a,b,...` or `b,a,b,a,...` subsequence of `seq`.
pub fn longest_alternation(seq: &[Symbol], a: Symbol, b: Symbol) -> Result<u64> {
    if a == b {
        return Err(Error::InvalidPair(a.get()));
    }
    let mut last = None;
    let mut count = 0;
    for &x in seq.iter().filter(|&&x| x == a || x == b) {
        if last != Some(x) {
            count += 1;
            last = Some(x);
        }
    }
    Ok(count)
}

/// Alternation counts for pairs of dense symbol indices `i < j`. Pairs never
/// touched read as 1: at least one of the two symbols has been seen.
trait PairTable {
    fn bump(&mut self, i: usize, j: usize);
    /// Largest count and the smallest `(i, j)` attaining it.
    fn max_pair(&self) -> Option<(u32, usize, usize)>;
    fn get(&self, i: usize, j: usize) -> u32;
}

struct DenseTable {
    m: usize,
    counts: Vec<u32>,
}

impl DenseTable {
    fn new(m: usize) -> Self {
        DenseTable {
            m,
            counts: vec![1; m * m.saturating_sub(1) / 2],
        }
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        // row-major upper triangle without the diagonal
        i * (2 * self.m - i - 1) / 2 + (j - i - 1)
    }
}

impl PairTable for DenseTable {
    #[inline]
    fn bump(&mut self, i: usize, j: usize) {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let k = self.index(i, j);
        self.counts[k] += 1;
    }

    fn get(&self, i: usize, j: usize) -> u32 {
        self.counts[self.index(i, j)]
    }

    fn max_pair(&self) -> Option<(u32, usize, usize)> {
        let mut best: Option<(u32, usize, usize)> = None;
        let mut k = 0;
        for i in 0..self.m {
            for j in i + 1..self.m {
                let c = self.counts[k];
                k += 1;
                if best.is_none_or(|(b, _, _)| c > b) {
                    best = Some((c, i, j));
                }
            }
        }
        best
    }
}

struct SparseTable {
    m: usize,
    counts: HashMap<(u32, u32), u32>,
}

impl PairTable for SparseTable {
    fn bump(&mut self, i: usize, j: usize) {
        let key = if i < j {
            (i as u32, j as u32)
        } else {
            (j as u32, i as u32)
        };
        *self.counts.entry(key).or_insert(1) += 1;
    }

    fn get(&self, i: usize, j: usize) -> u32 {
        self.counts.get(&(i as u32, j as u32)).copied().unwrap_or(1)
    }

    fn max_pair(&self) -> Option<(u32, usize, usize)> {
        if self.m < 2 {
            return None;
        }
        let best = self
            .counts
            .iter()
            .map(|(&(i, j), &c)| (c, i as usize, j as usize))
            .min_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
        // every stored count is >= 2, so an empty map means all pairs read 1
        Some(best.unwrap_or((1, 0, 1)))
    }
}

/// Most-recently-used order of the symbols seen so far.
struct RecencyList {
    next: Vec<usize>,
    prev: Vec<usize>,
    seen: Vec<bool>,
    head: usize,
}

const NIL: usize = usize::MAX;

impl RecencyList {
    fn new(m: usize) -> Self {
        RecencyList {
            next: vec![NIL; m],
            prev: vec![NIL; m],
            seen: vec![false; m],
            head: NIL,
        }
    }

    fn move_to_front(&mut self, x: usize) {
        if self.head == x {
            return;
        }
        if self.seen[x] {
            let (p, n) = (self.prev[x], self.next[x]);
            if p != NIL {
                self.next[p] = n;
            }
            if n != NIL {
                self.prev[n] = p;
            }
        }
        self.seen[x] = true;
        self.prev[x] = NIL;
        self.next[x] = self.head;
        if self.head != NIL {
            self.prev[self.head] = x;
        }
        self.head = x;
    }
}

fn scan<T: PairTable>(dense: &[usize], table: &mut T, m: usize) {
    let mut recency = RecencyList::new(m);
    for &x in dense {
        // every symbol used since x's previous occurrence now alternates
        // once more with x
        let mut c = recency.head;
        while c != NIL && c != x {
            table.bump(x, c);
            c = recency.next[c];
        }
        recency.move_to_front(x);
    }
}

enum Table {
    Dense(DenseTable),
    Sparse(SparseTable),
}

/// Result of one pass over a sequence: distinct letters in increasing order
/// and the alternation count of every pair of them.
struct PairScan {
    letters: Vec<Symbol>,
    table: Table,
}

impl PairScan {
    fn run(seq: &[Symbol]) -> PairScan {
        Self::run_with_limit(seq, DENSE_PAIR_LIMIT)
    }

    fn run_with_limit(seq: &[Symbol], dense_limit: usize) -> PairScan {
        let mut letters: Vec<Symbol> = seq.to_vec();
        letters.sort_unstable();
        letters.dedup();
        let m = letters.len();
        let max_value = letters.last().map_or(0, |s| s.get() as usize);
        let dense: Vec<usize> = if max_value <= 4 * m + 64 {
            let mut lookup = vec![usize::MAX; max_value + 1];
            for (i, s) in letters.iter().enumerate() {
                lookup[s.get() as usize] = i;
            }
            seq.iter().map(|s| lookup[s.get() as usize]).collect()
        } else {
            let lookup: HashMap<Symbol, usize> =
                letters.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            seq.iter().map(|s| lookup[s]).collect()
        };
        let table = if m <= dense_limit {
            let mut t = DenseTable::new(m);
            scan(&dense, &mut t, m);
            Table::Dense(t)
        } else {
            let mut t = SparseTable {
                m,
                counts: HashMap::new(),
            };
            scan(&dense, &mut t, m);
            Table::Sparse(t)
        };
        PairScan { letters, table }
    }

    fn table(&self) -> &dyn PairTable {
        match &self.table {
            Table::Dense(t) => t,
            Table::Sparse(t) => t,
        }
    }
}

/// Full pair scan: maximum alternation, its witness and the minimal order.
///
/// Work is `O(n * m)` in the worst case; each step only touches the symbols
/// used since the previous occurrence of the current symbol.
pub fn analyze(seq: &[Symbol]) -> Result<AlternationReport> {
    if seq.is_empty() {
        return Err(Error::EmptyInput);
    }
    let scan = PairScan::run(seq);
    let (max_alternation, witness_pair) = match scan.table().max_pair() {
        Some((c, i, j)) => (u64::from(c), Some((scan.letters[i], scan.letters[j]))),
        None => (1, None),
    };
    Ok(AlternationReport {
        length: seq.len(),
        alphabet: scan.letters.len(),
        max_alternation,
        witness_pair,
        minimal_order: max_alternation.saturating_sub(1).max(1),
    })
}

/// Alternation length of every pair `a < b` of letters present in `seq`,
/// from the same single pass as [`analyze`]. Lexicographic order.
pub fn pair_alternations(seq: &[Symbol]) -> Vec<((Symbol, Symbol), u64)> {
    let scan = PairScan::run(seq);
    let table = scan.table();
    let m = scan.letters.len();
    let mut out = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            out.push((
                (scan.letters[i], scan.letters[j]),
                u64::from(table.get(i, j)),
            ));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// 1-based position of the repeated symbol.
    ImmediateRepetition {
        position: usize,
    },
    AlphabetTooLarge {
        found: usize,
        allowed: u64,
    },
    Alternation {
        pair: (Symbol, Symbol),
        length: u64,
        order: u64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ImmediateRepetition { position } => {
                write!(f, "immediate repetition at position {position}")
            }
            Violation::AlphabetTooLarge { found, allowed } => {
                write!(f, "alphabet has {found} symbols, at most {allowed} allowed")
            }
            Violation::Alternation {
                pair: (a, b),
                length,
                order,
            } => write!(
                f,
                "pair ({a},{b}) alternates {length} times, order {order} allows at most {}",
                order + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DsCheck {
    Pass,
    Fail(Violation),
}

impl DsCheck {
    pub fn passed(&self) -> bool {
        matches!(self, DsCheck::Pass)
    }
}

/// Is `seq` a DS sequence of order `params.order` over at most
/// `params.alphabet` letters?
pub fn check_ds(seq: &[Symbol], params: DsParams) -> DsCheck {
    if let Some(position) = first_repetition(seq) {
        return DsCheck::Fail(Violation::ImmediateRepetition { position });
    }
    let Ok(found) = alphabet_size(seq) else {
        return DsCheck::Pass;
    };
    if found as u64 > params.alphabet {
        return DsCheck::Fail(Violation::AlphabetTooLarge {
            found,
            allowed: params.alphabet,
        });
    }
    let report = analyze(seq).expect("nonempty");
    match report.witness_pair {
        Some(pair) if report.max_alternation > params.order + 1 => {
            DsCheck::Fail(Violation::Alternation {
                pair,
                length: report.max_alternation,
                order: params.order,
            })
        }
        _ => DsCheck::Pass,
    }
}
