//! The Roselle–Stanton sequences `RS(s, m)`.
//!
//! * `RS(s, 2)` alternates `1, 2, 1, 2, ...` for `s + 1` symbols.
//! * `RS(2, m)` is `1, 2, 1, 3, ..., 1, m, 1`.
//! * Otherwise `RS(s, m) = Alt(s, m) · RS(s - 1, m - 1)` with the recursive
//!   copy relabeled by `k ↦ m - k + 1`, so its letters first appear in the
//!   order `m, m - 1, ..., 2`.
//!
//! `Alt(s, m)` is `⌈(s - 2)/2⌉` copies of the pair `1, k` for each
//! `k = 2, ..., m`, then a single `1`.

use crate::error::{Error, Result};
use crate::sequence::{Sequence, Symbol};
use crate::DEFAULT_LENGTH_BUDGET;

/// Order `s >= 2` and alphabet `m >= 2` of a Roselle–Stanton sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RsParams {
    s: u64,
    m: u64,
}

impl RsParams {
    pub fn new(s: u64, m: u64) -> Result<Self> {
        if s < 2 || m < 2 {
            return Err(Error::domain(format!(
                "RS(s, m) needs s >= 2 and m >= 2 (got s = {s}, m = {m})"
            )));
        }
        Ok(RsParams { s, m })
    }

    pub fn s(self) -> u64 {
        self.s
    }

    pub fn m(self) -> u64 {
        self.m
    }
}

#[inline]
fn pairs_per_letter(s: u64) -> u64 {
    (s - 2).div_ceil(2)
}

fn check_symbol_width(m: u64) -> Result<()> {
    if m > u64::from(u32::MAX) {
        return Err(Error::domain(format!(
            "alphabet {m} exceeds the symbol range"
        )));
    }
    Ok(())
}

/// Emits `Alt(s, m)` with every symbol passed through `map`.
fn push_alt(out: &mut Vec<Symbol>, s: u64, m: u64, map: impl Fn(u64) -> u64) {
    let one = Symbol::new_unchecked(map(1) as u32);
    for k in 2..=m {
        let sk = Symbol::new_unchecked(map(k) as u32);
        for _ in 0..pairs_per_letter(s) {
            out.push(one);
            out.push(sk);
        }
    }
    out.push(one);
}

pub fn alt_block(s: u64, m: u64) -> Result<Sequence> {
    if s < 3 || m < 2 {
        return Err(Error::domain(format!(
            "Alt(s, m) needs s >= 3 and m >= 2 (got s = {s}, m = {m})"
        )));
    }
    check_symbol_width(m)?;
    let len = alt_length(s, m).ok_or(Error::Overflow("Alt block length"))?;
    check_budget(len, DEFAULT_LENGTH_BUDGET)?;
    let mut out = Vec::with_capacity(len as usize);
    push_alt(&mut out, s, m, |k| k);
    Ok(Sequence::from_symbols_unchecked(out))
}

/// `2(m - 1)⌈(s - 2)/2⌉ + 1`.
fn alt_length(s: u64, m: u64) -> Option<u64> {
    2u64.checked_mul(m - 1)?
        .checked_mul(pairs_per_letter(s))?
        .checked_add(1)
}

/// Maps each symbol `k` to `m - k + 1`. Symbols must lie in `[m]`.
pub fn relabel_reverse(seq: &Sequence, m: u32) -> Result<Sequence> {
    let out = seq
        .iter()
        .map(|s| {
            let k = s.get();
            if k > m {
                Err(Error::SymbolRange {
                    value: i64::from(k),
                    max: u64::from(m),
                })
            } else {
                Ok(Symbol::new_unchecked(m - k + 1))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sequence::from_symbols_unchecked(out))
}

/// Affine relabeling `k ↦ sign·k + offset` accumulated over recursion levels.
#[derive(Clone, Copy)]
struct Relabel {
    sign: i64,
    offset: i64,
}

impl Relabel {
    fn apply(self, k: u64) -> u64 {
        (self.sign * k as i64 + self.offset) as u64
    }

    /// Composes with the reversal `k ↦ m - k + 1` applied first.
    fn then_reverse(self, m: u64) -> Relabel {
        Relabel {
            sign: -self.sign,
            offset: self.sign * (m as i64 + 1) + self.offset,
        }
    }
}

pub fn generate_rs(s: u64, m: u64) -> Result<Sequence> {
    generate_rs_with_budget(s, m, DEFAULT_LENGTH_BUDGET)
}

/// Materializes `RS(s, m)`, refusing when its length exceeds `budget`.
///
/// The recursion is unrolled: level `i` emits `Alt(s - i, m - i)` through
/// the composition of the `i` reversals above it.
pub fn generate_rs_with_budget(s: u64, m: u64, budget: u64) -> Result<Sequence> {
    let params = RsParams::new(s, m)?;
    check_symbol_width(m)?;
    let len = rs_length(params.s, params.m)?;
    check_budget(len, budget)?;

    let mut out = Vec::with_capacity(len as usize);
    let (mut s, mut m) = (s, m);
    let mut map = Relabel { sign: 1, offset: 0 };
    loop {
        if m == 2 {
            for i in 0..=s {
                out.push(Symbol::new_unchecked(map.apply(1 + i % 2) as u32));
            }
            break;
        }
        if s == 2 {
            let one = Symbol::new_unchecked(map.apply(1) as u32);
            for k in 2..=m {
                out.push(one);
                out.push(Symbol::new_unchecked(map.apply(k) as u32));
            }
            out.push(one);
            break;
        }
        push_alt(&mut out, s, m, |k| map.apply(k));
        map = map.then_reverse(m);
        s -= 1;
        m -= 1;
    }
    debug_assert_eq!(out.len() as u64, len);
    Ok(Sequence::from_symbols_unchecked(out))
}

pub(crate) fn check_budget(len: u64, budget: u64) -> Result<()> {
    if len > budget {
        return Err(Error::BudgetExceeded {
            needed: len,
            budget,
        });
    }
    Ok(())
}

/// Exact `L(s, m) = |RS(s, m)|` without materializing the sequence.
///
/// Sums the recurrence `L(s, m) = 2(m - 1)⌈(s - 2)/2⌉ + 1 + L(s - 1, m - 1)`
/// down to a base case: `min(s, m) - 2` steps.
pub fn rs_length(s: u64, m: u64) -> Result<u64> {
    let params = RsParams::new(s, m)?;
    let overflow = Error::Overflow("RS length");
    let (mut s, mut m) = (params.s, params.m);
    let mut total: u64 = 0;
    while s > 2 && m > 2 {
        let alt = alt_length(s, m).ok_or(overflow.clone())?;
        total = total.checked_add(alt).ok_or(overflow.clone())?;
        s -= 1;
        m -= 1;
    }
    let base = if m == 2 {
        s.checked_add(1)
    } else {
        m.checked_mul(2).map(|x| x - 1)
    };
    base.and_then(|b| total.checked_add(b)).ok_or(overflow)
}

/// `C(m, 2)(s - m) + m`, a lower bound on `L(s, m)` for `s >= m >= 2`.
pub fn rs_lower_bound(s: u64, m: u64) -> Result<u64> {
    if m < 2 || s < m {
        return Err(Error::domain(format!(
            "RS lower bound needs s >= m >= 2 (got s = {s}, m = {m})"
        )));
    }
    let overflow = Error::Overflow("RS lower bound");
    binom2(m)
        .and_then(|c| c.checked_mul(s - m))
        .and_then(|x| x.checked_add(m))
        .ok_or(overflow)
}

/// `C(m, 2)`, or `None` on overflow.
pub(crate) fn binom2(m: u64) -> Option<u64> {
    // one of m, m - 1 is even
    if m.is_multiple_of(2) {
        (m / 2).checked_mul(m.saturating_sub(1))
    } else {
        m.checked_mul((m - 1) / 2)
    }
}
