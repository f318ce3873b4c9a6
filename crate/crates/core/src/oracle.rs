//! Exact `λ(s, m)` by depth-first branch and bound.
//!
//! Sequences are extended one symbol at a time. Appending `a` lengthens the
//! alternation of `{a, c}` by one for exactly those `c` used since the
//! previous `a`, so the alternation table is updated in `O(m)` per node.
//!
//! Each appended symbol (after the first) lengthens at least one pair whose
//! alternation is already at least 1, and no pair may exceed `s + 1`. The
//! remaining slack `Σ (s + 1 - max(alt, 1))` therefore bounds how many more
//! symbols can follow, which is the pruning bound. Depth is also capped by
//! the pigeonhole bound `C(m, 2)(s + 1)`.
//!
//! Symmetry reduction: a new letter may only be the smallest unused one.
//! Nothing from the constructions seeds the search.

use crate::error::{Error, Result};
use crate::rs::binom2;
use crate::sequence::{Sequence, Symbol};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Largest alphabet the search accepts.
pub const MAX_ORACLE_ALPHABET: u64 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Best length found; exact only when `exhausted`.
    pub value: u64,
    pub witness: Sequence,
    pub nodes_explored: u64,
    pub exhausted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub node_budget: u64,
    /// Only introduce letters in first-appearance order `1, 2, 3, ...`.
    pub symmetry_reduction: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            symmetry_reduction: true,
        }
    }
}

pub fn lambda_exact(s: u64, m: u64, node_budget: u64) -> Result<OracleResult> {
    lambda_exact_with(
        s,
        m,
        SearchOptions {
            node_budget,
            ..SearchOptions::default()
        },
    )
}

pub fn lambda_exact_with(s: u64, m: u64, options: SearchOptions) -> Result<OracleResult> {
    if s == 0 || m == 0 {
        return Err(Error::domain(format!(
            "lambda(s, m) needs s >= 1 and m >= 1 (got s = {s}, m = {m})"
        )));
    }
    if m > MAX_ORACLE_ALPHABET || s > u64::from(u32::MAX) - 2 {
        return Err(Error::domain(format!(
            "exhaustive search is limited to m <= {MAX_ORACLE_ALPHABET} (got s = {s}, m = {m})"
        )));
    }
    let m_us = m as usize;
    let pairs = binom2(m).expect("small m");
    // a single letter is a valid sequence even though C(1, 2) = 0
    let depth_cap = pairs.saturating_mul(s + 1).max(1);

    let mut search = Search {
        m: m_us,
        limit: s as u32 + 1,
        depth_cap,
        symmetry: options.symmetry_reduction,
        budget: options.node_budget,
        nodes: 0,
        aborted: false,
        seq: Vec::new(),
        last_pos: vec![None; m_us],
        alt: vec![0; m_us * m_us],
        used: 0,
        slack: pairs.saturating_mul(s),
        best: Vec::new(),
        bumped: Vec::new(),
    };
    search.dfs();

    let witness = Sequence::from_symbols_unchecked(
        search
            .best
            .iter()
            .map(|&x| Symbol::new_unchecked(x as u32 + 1))
            .collect(),
    );
    Ok(OracleResult {
        value: witness.len() as u64,
        witness,
        nodes_explored: search.nodes,
        exhausted: !search.aborted,
    })
}

struct Search {
    m: usize,
    /// Maximum permitted alternation, `s + 1`.
    limit: u32,
    depth_cap: u64,
    symmetry: bool,
    budget: u64,
    nodes: u64,
    aborted: bool,
    seq: Vec<u8>,
    last_pos: Vec<Option<usize>>,
    /// Symmetric `m × m` alternation table; unseen pairs hold 0.
    alt: Vec<u32>,
    used: usize,
    /// `Σ over pairs of (s + 1 - max(alt, 1))`.
    slack: u64,
    best: Vec<u8>,
    /// Stack of letters whose pair with the appended symbol was bumped.
    bumped: Vec<u8>,
}

impl Search {
    fn dfs(&mut self) {
        if self.seq.len() > self.best.len() {
            self.best.clone_from(&self.seq);
        }
        if self.seq.len() as u64 >= self.depth_cap || self.upper() <= self.best.len() as u64 {
            return;
        }
        let last = self.seq.last().copied();
        let top = if self.symmetry {
            (self.used + 1).min(self.m)
        } else {
            self.m
        };
        for a in 0..top {
            if Some(a as u8) == last {
                continue;
            }
            if self.aborted {
                return;
            }
            if self.nodes >= self.budget {
                self.aborted = true;
                return;
            }
            self.nodes += 1;
            if let Some(mark) = self.push(a) {
                self.dfs();
                self.pop(a, mark);
            }
            if self.upper() <= self.best.len() as u64 {
                return;
            }
        }
    }

    /// Longest length any extension of the current prefix could reach.
    fn upper(&self) -> u64 {
        let first = u64::from(self.seq.is_empty());
        self.seq.len() as u64 + self.slack + first
    }

    /// Appends `a` if no pair would exceed the limit. Returns the stack mark
    /// for undo.
    fn push(&mut self, a: usize) -> Option<(usize, Option<usize>)> {
        let m = self.m;
        let since = self.last_pos[a];
        let mark = self.bumped.len();
        for c in 0..m {
            if c == a {
                continue;
            }
            let newer = match (self.last_pos[c], since) {
                (Some(pc), Some(pa)) => pc > pa,
                (Some(_), None) => true,
                (None, _) => false,
            };
            if newer {
                if self.alt[a * m + c] >= self.limit {
                    self.bumped.truncate(mark);
                    return None;
                }
                self.bumped.push(c as u8);
            }
        }
        for &c in &self.bumped[mark..] {
            let c = c as usize;
            // pairs with a still unseen read as 1
            let v = self.alt[a * m + c].max(1) + 1;
            self.alt[a * m + c] = v;
            self.alt[c * m + a] = v;
        }
        self.slack -= (self.bumped.len() - mark) as u64;
        if since.is_none() {
            self.used += 1;
        }
        self.last_pos[a] = Some(self.seq.len());
        self.seq.push(a as u8);
        Some((mark, since))
    }

    fn pop(&mut self, a: usize, (mark, since): (usize, Option<usize>)) {
        let m = self.m;
        self.seq.pop();
        self.last_pos[a] = since;
        if since.is_none() {
            self.used -= 1;
        }
        self.slack += (self.bumped.len() - mark) as u64;
        for &c in &self.bumped[mark..] {
            let c = c as usize;
            let v = self.alt[a * m + c] - 1;
            let v = if v == 1 && since.is_none() { 0 } else { v };
            self.alt[a * m + c] = v;
            self.alt[c * m + a] = v;
        }
        self.bumped.truncate(mark);
    }
}
