//! Two-level incidence construction `S₂(ŝ, q)`.
//!
//! Every row `i` of the incidence system contributes a copy of `RS(ŝ, q)`
//! written over its column support `C_i`. The copies are concatenated in
//! row order and a symbol is dropped wherever two copies would meet on the
//! same letter. Because two rows share at most one column, any pair of
//! columns alternates at most `ŝ + 1` times inside a shared row plus once
//! per other row, giving order at most `ŝ + 2q - 2` over `q²` letters.

use crate::error::{Error, Result};
use crate::field::{build_incidence, is_prime, largest_prime_leq};
use crate::rs::{binom2, check_budget, generate_rs, rs_length};
use crate::sequence::{Sequence, Symbol};
use crate::DEFAULT_LENGTH_BUDGET;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct S2Params {
    s_hat: u64,
    q: u64,
}

impl S2Params {
    pub fn new(s_hat: u64, q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if s_hat < q {
            return Err(Error::domain(format!(
                "inner order must satisfy s_hat >= q (got s_hat = {s_hat}, q = {q})"
            )));
        }
        Ok(S2Params { s_hat, q })
    }

    pub fn s_hat(self) -> u64 {
        self.s_hat
    }

    pub fn q(self) -> u64 {
        self.q
    }
}

/// Parameters picked for a target `(s, m)`: `q` the largest prime at most
/// `⌊√m⌋` and `ŝ = s - 2q + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct S2Plan {
    pub q: u64,
    pub s_hat: u64,
    pub source: Option<(u64, u64)>,
}

impl S2Plan {
    pub fn params(&self) -> S2Params {
        S2Params {
            s_hat: self.s_hat,
            q: self.q,
        }
    }
}

impl From<S2Params> for S2Plan {
    fn from(p: S2Params) -> Self {
        S2Plan {
            q: p.q,
            s_hat: p.s_hat,
            source: None,
        }
    }
}

pub fn choose_parameters(s: u64, m: u64) -> Result<S2Plan> {
    if m < 4 {
        return Err(Error::domain(format!(
            "S2 needs an alphabet of at least 4 (got m = {m})"
        )));
    }
    let q = largest_prime_leq(m.isqrt())?;
    let needed = 3 * q - 2;
    if s < needed {
        return Err(Error::OrderTooSmall { s, q, needed });
    }
    Ok(S2Plan {
        q,
        s_hat: s - 2 * q + 2,
        source: Some((s, m)),
    })
}

/// The assembled sequence plus how many boundary symbols were dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S2Assembly {
    pub sequence: Sequence,
    pub boundary_deletions: u64,
}

pub fn generate_s2(params: S2Params) -> Result<Sequence> {
    Ok(assemble_s2(params, DEFAULT_LENGTH_BUDGET)?.sequence)
}

/// Builds `S₂(ŝ, q)` in canonical row order. Column `c` (0-based) becomes
/// symbol `c + 1`; RS letter `j` maps to the `j`-th smallest column of the
/// row's support.
pub fn assemble_s2(params: S2Params, budget: u64) -> Result<S2Assembly> {
    let q = params.q;
    let inner_len = rs_length(params.s_hat, q)?;
    let total = (q * q)
        .checked_mul(inner_len)
        .ok_or(Error::Overflow("S2 length"))?;
    check_budget(total, budget)?;

    let sys = build_incidence(q)?;
    let inner = generate_rs(params.s_hat, q)?;
    let mut out: Vec<Symbol> = Vec::with_capacity(total as usize);
    let mut boundary_deletions = 0;
    for support in sys.row_supports() {
        let block = inner
            .iter()
            .map(|s| Symbol::new_unchecked(support[s.get() as usize - 1] + 1));
        let mut block = block.peekable();
        if let (Some(last), Some(first)) = (out.last(), block.peek()) {
            if last == first {
                block.next();
                boundary_deletions += 1;
            }
        }
        out.extend(block);
    }
    Ok(S2Assembly {
        sequence: Sequence::from_symbols_unchecked(out),
        boundary_deletions,
    })
}

/// `ŝ + 2q - 2`.
pub fn s2_order_bound(params: S2Params) -> Result<u64> {
    params
        .s_hat
        .checked_add(2 * params.q - 2)
        .ok_or(Error::Overflow("S2 order bound"))
}

/// Certified length floor `q²·(C(q, 2)(ŝ - q) + q) - (q² - 1)`: the RS
/// lower bound per row, minus one possible deletion per boundary.
pub fn s2_length_bound(params: S2Params) -> Result<u64> {
    let q = params.q;
    let q2 = q * q;
    binom2(q)
        .and_then(|c| c.checked_mul(params.s_hat - q))
        .and_then(|x| x.checked_add(q))
        .and_then(|x| x.checked_mul(q2))
        .map(|x| x - (q2 - 1))
        .ok_or(Error::Overflow("S2 length bound"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::analyze;

    fn params(s_hat: u64, q: u64) -> S2Params {
        S2Params::new(s_hat, q).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(S2Params::new(2, 2).is_ok());
        assert_eq!(S2Params::new(5, 4), Err(Error::NotPrime(4)));
        assert!(S2Params::new(2, 3).is_err());
    }

    #[test]
    fn choose_parameters_examples() {
        let p = choose_parameters(1000, 100).unwrap();
        assert_eq!((p.q, p.s_hat, p.source), (7, 988, Some((1000, 100))));
        let p = choose_parameters(10_000, 10_000).unwrap();
        assert_eq!((p.q, p.s_hat), (97, 9808));
        assert_eq!(
            choose_parameters(10, 100),
            Err(Error::OrderTooSmall {
                s: 10,
                q: 7,
                needed: 19
            })
        );
        assert!(choose_parameters(19, 100).is_ok());
        assert!(choose_parameters(100, 3).is_err());
        // m just below a square: isqrt(99) = 9 -> q = 7
        assert_eq!(choose_parameters(100, 99).unwrap().q, 7);
        assert_eq!(choose_parameters(4, 4).unwrap().q, 2);
    }

    #[test]
    fn q2_golden() {
        let a = assemble_s2(params(2, 2), DEFAULT_LENGTH_BUDGET).unwrap();
        assert_eq!(a.sequence.to_values(), [1, 2, 1, 3, 4, 3, 1, 4, 1, 2, 3, 2]);
        assert_eq!(a.boundary_deletions, 0);
        let r = analyze(&a.sequence).unwrap();
        assert_eq!(r.minimal_order, 4);
        assert_eq!(r.minimal_order, s2_order_bound(params(2, 2)).unwrap());
    }

    #[test]
    fn q3_length() {
        let s = generate_s2(params(7, 3)).unwrap();
        assert!(s.len() as u64 >= 9 * 20 - 8);
        assert_eq!(s.alphabet_size().unwrap(), 9);
    }

    #[test]
    fn order_bound_examples() {
        assert_eq!(s2_order_bound(params(2, 2)).unwrap(), 4);
        assert_eq!(s2_order_bound(params(988, 7)).unwrap(), 1000);
        for q in [2, 3, 5, 7, 11] {
            assert_eq!(s2_order_bound(params(q, q)).unwrap(), 3 * q - 2);
        }
    }

    #[test]
    fn length_bound_examples() {
        assert_eq!(s2_length_bound(params(2, 2)).unwrap(), 5);
        assert_eq!(
            s2_length_bound(params(9808, 97)).unwrap(),
            9409 * 45_214_513 - 9408
        );
        for q in [2u64, 3, 5, 7, 11, 13] {
            assert_eq!(
                s2_length_bound(params(q, q)).unwrap(),
                q * q * q - q * q + 1
            );
        }
        assert!(s2_length_bound(params(u64::MAX / 2, 65_521)).is_err());
    }

    #[test]
    fn round_trip_from_plan() {
        for (s, m) in [(1000, 100), (10_000, 10_000), (50, 30), (19, 49)] {
            let plan = choose_parameters(s, m).unwrap();
            assert_eq!(s2_order_bound(plan.params()).unwrap(), s);
            assert!(plan.q * plan.q <= m);
        }
    }

    #[test]
    fn deterministic() {
        let a = generate_s2(params(6, 3)).unwrap();
        let b = generate_s2(params(6, 3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget() {
        assert!(matches!(
            assemble_s2(params(2, 2), 11),
            Err(Error::BudgetExceeded {
                needed: 12,
                budget: 11
            })
        ));
    }
}
