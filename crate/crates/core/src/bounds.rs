//! Closed-form bounds on `λ(s, m)` and convergence tables.
//!
//! All bound values are exact integers. Ratios are kept as exact fractions
//! and only rounded when rendered; threshold comparisons cross-multiply.

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::rs::{binom2, rs_length, rs_lower_bound};
use crate::s2::{choose_parameters, s2_length_bound};

/// Pigeonhole upper bound `C(m, 2)(s + 1)`.
pub fn pigeonhole_ub(s: u64, m: u64) -> Result<u64> {
    if s == 0 || m == 0 {
        return Err(Error::domain(format!(
            "pigeonhole bound needs s >= 1 and m >= 1 (got s = {s}, m = {m})"
        )));
    }
    binom2(m)
        .zip(s.checked_add(1))
        .and_then(|(c, s1)| c.checked_mul(s1))
        .ok_or(Error::Overflow("pigeonhole bound"))
}

/// Which construction certified a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSource {
    S2 {
        q: u64,
        s_hat: u64,
    },
    /// Exact length of `RS(s, m)`.
    Rs,
    /// `C(m', 2)(s - m') + m'` with `m' = min(s, m)`.
    RsLemma,
    /// No construction applies; `λ(1, m) = m` and `λ(s, 1) = 1`.
    Trivial,
}

impl BoundSource {
    pub fn tag(&self) -> &'static str {
        match self {
            BoundSource::S2 { .. } => "S2",
            BoundSource::Rs => "RS",
            BoundSource::RsLemma => "RS-lemma",
            BoundSource::Trivial => "trivial",
        }
    }
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifiedBound {
    pub value: u64,
    pub source: BoundSource,
}

/// Best constructive lower bound on `λ(s, m)` among RS, its closed-form
/// floor and `S₂` with parameters from [`choose_parameters`].
pub fn certified_lower_bound(s: u64, m: u64) -> Result<CertifiedBound> {
    if s == 0 || m == 0 {
        return Err(Error::domain(format!(
            "lower bound needs s >= 1 and m >= 1 (got s = {s}, m = {m})"
        )));
    }
    if s == 1 || m == 1 {
        return Ok(CertifiedBound {
            value: if s == 1 { m } else { 1 },
            source: BoundSource::Trivial,
        });
    }

    let mut best = CertifiedBound {
        value: rs_length(s, m)?,
        source: BoundSource::Rs,
    };
    let mut consider = |value: u64, source: BoundSource| {
        if value > best.value {
            best = CertifiedBound { value, source };
        }
    };
    consider(rs_lower_bound(s, s.min(m))?, BoundSource::RsLemma);
    if let Ok(plan) = choose_parameters(s, m) {
        let value = s2_length_bound(plan.params())?;
        consider(
            value,
            BoundSource::S2 {
                q: plan.q,
                s_hat: plan.s_hat,
            },
        );
    }
    Ok(best)
}

/// An exact nonnegative fraction, rendered with six decimal places.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactRatio {
    pub num: u128,
    pub den: u128,
}

impl ExactRatio {
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den > 0, "zero denominator");
        ExactRatio { num, den }
    }

    /// `self >= p / q`, by cross-multiplication.
    pub fn at_least(&self, p: u128, q: u128) -> bool {
        self.num * q >= p * self.den
    }

    /// `self <= p / q`.
    pub fn at_most(&self, p: u128, q: u128) -> bool {
        self.num * q <= p * self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SCALE: u128 = 1_000_000;
        // round half up
        let scaled = (2 * self.num * SCALE + self.den) / (2 * self.den);
        write!(f, "{}.{:06}", scaled / SCALE, scaled % SCALE)
    }
}

/// How `(s, m)` is derived from the scale `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioMode {
    /// `s = m = n`.
    Diagonal,
    /// `s = ⌊a·n⌋`, `m = ⌊b·n⌋`.
    Linear { a: Ratio<u64>, b: Ratio<u64> },
    /// `s = ⌊n^α⌋`, `m = n`, with `α > 1/2`.
    Power { alpha: Ratio<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioQuery {
    mode: RatioMode,
    n_values: Vec<u64>,
}

impl RatioQuery {
    pub fn new(mode: RatioMode, mut n_values: Vec<u64>) -> Result<Self> {
        match mode {
            RatioMode::Diagonal => {}
            RatioMode::Linear { a, b } => {
                if *a.numer() == 0 || *b.numer() == 0 {
                    return Err(Error::domain("linear mode needs a > 0 and b > 0"));
                }
            }
            RatioMode::Power { alpha } => {
                if alpha <= Ratio::new(1, 2) {
                    return Err(Error::domain(format!(
                        "power mode needs alpha > 1/2 (got {alpha})"
                    )));
                }
            }
        }
        n_values.sort_unstable();
        n_values.dedup();
        Ok(RatioQuery { mode, n_values })
    }

    pub fn mode(&self) -> RatioMode {
        self.mode
    }

    pub fn n_values(&self) -> &[u64] {
        &self.n_values
    }
}

/// One line of a convergence table. `q` and `s_hat` are set when the
/// lower bound came from `S₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsRow {
    pub n: u64,
    pub s: u64,
    pub m: u64,
    pub q: Option<u64>,
    pub s_hat: Option<u64>,
    pub lb: u64,
    pub ub: u64,
    /// `lb / (s·C(m, 2))`.
    pub rho_lb: ExactRatio,
    /// `lb / n³`.
    pub rho_cubic: ExactRatio,
    pub source: BoundSource,
}

/// A row whose `(s, m)` violated a precondition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    pub n: u64,
    pub s: Option<u64>,
    pub m: Option<u64>,
    pub error: Error,
}

pub type TableRow = std::result::Result<BoundsRow, RowError>;

fn floor_mul(r: Ratio<u64>, n: u64) -> Option<u64> {
    let v = u128::from(*r.numer()) * u128::from(n) / u128::from(*r.denom());
    u64::try_from(v).ok()
}

/// `⌊n^(p/d)⌋`: the largest `k` with `k^d <= n^p`.
pub fn floor_rational_power(n: u64, alpha: Ratio<u64>) -> Option<u64> {
    let p = u32::try_from(*alpha.numer()).ok()?;
    let d = u32::try_from(*alpha.denom()).ok()?;
    let target = u128::from(n).checked_pow(p)?;
    let le = |k: u64| u128::from(k).checked_pow(d).is_some_and(|v| v <= target);
    let mut k = (n as f64).powf(p as f64 / d as f64).floor() as u64;
    while k > 0 && !le(k) {
        k -= 1;
    }
    while le(k + 1) {
        k += 1;
    }
    Some(k)
}

fn instantiate(mode: RatioMode, n: u64) -> std::result::Result<(u64, u64), Error> {
    match mode {
        RatioMode::Diagonal => Ok((n, n)),
        RatioMode::Linear { a, b } => floor_mul(a, n)
            .zip(floor_mul(b, n))
            .ok_or(Error::Overflow("linear scaling")),
        RatioMode::Power { alpha } => floor_rational_power(n, alpha)
            .map(|s| (s, n))
            .ok_or(Error::Overflow("power scaling")),
    }
}

pub fn bounds_row(n: u64, s: u64, m: u64) -> Result<BoundsRow> {
    if s < 2 || m < 2 || n == 0 {
        return Err(Error::domain(format!(
            "table rows need s >= 2 and m >= 2 (got s = {s}, m = {m})"
        )));
    }
    let lb = certified_lower_bound(s, m)?;
    let ub = pigeonhole_ub(s, m)?;
    let (q, s_hat) = match lb.source {
        BoundSource::S2 { q, s_hat } => (Some(q), Some(s_hat)),
        _ => (None, None),
    };
    let pairs = u128::from(binom2(m).ok_or(Error::Overflow("C(m, 2)"))?);
    let n3 = u128::from(n).checked_pow(3).ok_or(Error::Overflow("n^3"))?;
    Ok(BoundsRow {
        n,
        s,
        m,
        q,
        s_hat,
        lb: lb.value,
        ub,
        rho_lb: ExactRatio::new(u128::from(lb.value), u128::from(s) * pairs),
        rho_cubic: ExactRatio::new(u128::from(lb.value), n3),
        source: lb.source,
    })
}

/// One row per `n` in increasing order; bad rows are reported in place.
pub fn ratio_table(query: &RatioQuery) -> Vec<TableRow> {
    query
        .n_values
        .iter()
        .map(|&n| {
            let (s, m) = instantiate(query.mode, n).map_err(|error| RowError {
                n,
                s: None,
                m: None,
                error,
            })?;
            bounds_row(n, s, m).map_err(|error| RowError {
                n,
                s: Some(s),
                m: Some(m),
                error,
            })
        })
        .collect()
}

pub const CSV_HEADER: &str = "n,s,m,q,s_hat,lb,ub,rho_lb,rho_cubic";

/// CSV text with header. Failed rows keep `n` (and `s`, `m` when known)
/// and leave the remaining columns empty.
pub fn table_to_csv(rows: &[TableRow]) -> String {
    fn opt(v: Option<u64>) -> String {
        v.map(|x| x.to_string()).unwrap_or_default()
    }
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let line = match row {
            Ok(r) => format!(
                "{},{},{},{},{},{},{},{},{}",
                r.n,
                r.s,
                r.m,
                opt(r.q),
                opt(r.s_hat),
                r.lb,
                r.ub,
                r.rho_lb,
                r.rho_cubic
            ),
            Err(e) => format!("{},{},{},,,,,,", e.n, opt(e.s), opt(e.m)),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Parses `3`, `3/4` or `0.75` into an exact fraction.
pub fn parse_ratio(text: &str) -> Result<Ratio<u64>> {
    let bad = || Error::domain(format!("invalid rational `{text}`"));
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        let d: u64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let den = 10u64.pow(frac.len() as u32);
        let frac: u64 = frac.parse().map_err(|_| bad())?;
        let num = int
            .checked_mul(den)
            .and_then(|x| x.checked_add(frac))
            .ok_or_else(bad)?;
        return Ok(Ratio::new(num, den));
    }
    text.parse::<u64>()
        .map(Ratio::from_integer)
        .map_err(|_| bad())
}
