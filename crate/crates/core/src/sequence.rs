//! Sequence data model and the whitespace-separated text format.
//!
//! A file is UTF-8 text holding base-10 symbols separated by arbitrary
//! whitespace. Lines whose first non-blank character is `#` are comments.
//! Generators emit a header comment such as `# s=3 m=3 len=8`; it is for
//! display only and the parser ignores it.

use std::collections::HashSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter of the alphabet `[m] = {1, ..., m}`. Always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Symbol(u32);

impl Symbol {
    pub const fn new(value: u32) -> Option<Symbol> {
        if value == 0 {
            None
        } else {
            Some(Symbol(value))
        }
    }

    /// Caller guarantees `value >= 1`.
    pub(crate) const fn new_unchecked(value: u32) -> Symbol {
        debug_assert!(value >= 1);
        Symbol(value)
    }

    #[inline]
    pub const fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The order `s` and alphabet size `m` a sequence is claimed to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DsParams {
    pub order: u64,
    pub alphabet: u64,
}

impl DsParams {
    pub fn new(order: u64, alphabet: u64) -> Result<Self> {
        if order == 0 || alphabet == 0 {
            return Err(Error::domain(format!(
                "order and alphabet must be positive (s = {order}, m = {alphabet})"
            )));
        }
        Ok(DsParams { order, alphabet })
    }
}

/// An ordered list of symbols with no immediate repetitions.
///
/// The empty sequence is representable; operations that need content
/// reject it with [`Error::EmptyInput`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Sequence {
    symbols: Vec<Symbol>,
    declared_alphabet: Option<u32>,
}

impl Sequence {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if let Some(position) = first_repetition(&symbols) {
            return Err(Error::ImmediateRepetition { position });
        }
        Ok(Sequence {
            symbols,
            declared_alphabet: None,
        })
    }

    /// Builds a sequence from raw values, rejecting zeros and repetitions.
    pub fn from_values<I: IntoIterator<Item = u32>>(values: I) -> Result<Self> {
        let symbols = values
            .into_iter()
            .map(|v| {
                Symbol::new(v).ok_or(Error::SymbolRange {
                    value: 0,
                    max: u64::from(u32::MAX),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Sequence::new(symbols)
    }

    /// Generators use this for output they construct repetition-free.
    pub(crate) fn from_symbols_unchecked(symbols: Vec<Symbol>) -> Self {
        debug_assert_eq!(first_repetition(&symbols), None);
        Sequence {
            symbols,
            declared_alphabet: None,
        }
    }

    /// Attaches a declared alphabet size `m`; every symbol must be `<= m`.
    pub fn with_alphabet(mut self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("declared alphabet must be positive"));
        }
        if let Some(bad) = self.symbols.iter().find(|s| s.get() > m) {
            return Err(Error::SymbolRange {
                value: i64::from(bad.get()),
                max: u64::from(m),
            });
        }
        self.declared_alphabet = Some(m);
        Ok(self)
    }

    pub fn declared_alphabet(&self) -> Option<u32> {
        self.declared_alphabet
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn values(&self) -> impl Iterator<Item = u32> + '_ {
        self.symbols.iter().map(|s| s.get())
    }

    pub fn to_values(&self) -> Vec<u32> {
        self.values().collect()
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    /// Number of distinct symbols. Fails on the empty sequence.
    pub fn alphabet_size(&self) -> Result<usize> {
        alphabet_size(&self.symbols)
    }

    pub fn max_symbol(&self) -> Option<Symbol> {
        self.symbols.iter().copied().max()
    }
}

impl Deref for Sequence {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.symbols
    }
}

impl AsRef<[Symbol]> for Sequence {
    fn as_ref(&self) -> &[Symbol] {
        &self.symbols
    }
}

/// 1-based position of the first symbol equal to its predecessor.
pub fn first_repetition(symbols: &[Symbol]) -> Option<usize> {
    symbols.windows(2).position(|w| w[0] == w[1]).map(|i| i + 2)
}

pub fn alphabet_size(symbols: &[Symbol]) -> Result<usize> {
    if symbols.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(symbols.iter().collect::<HashSet<_>>().len())
}

pub fn parse_sequence(text: &str) -> Result<Sequence> {
    let mut symbols = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        for (column, token) in tokens_with_columns(line) {
            let value: i64 = token.parse().map_err(|_| Error::Parse {
                line: line_no + 1,
                column,
                token: token.to_string(),
            })?;
            if value <= 0 || value > i64::from(u32::MAX) {
                return Err(Error::SymbolRange {
                    value,
                    max: u64::from(u32::MAX),
                });
            }
            symbols.push(Symbol::new_unchecked(value as u32));
        }
    }
    Sequence::new(symbols)
}

/// Whitespace-separated tokens with their 1-based character column.
fn tokens_with_columns(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let skipped = rest.len() - rest.trim_start().len();
        offset += rest[..skipped].chars().count();
        rest = &rest[skipped..];
        if rest.is_empty() {
            return None;
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let (token, tail) = rest.split_at(end);
        let column = offset + 1;
        offset += token.chars().count();
        rest = tail;
        Some((column, token))
    })
}

/// Space-separated symbols on one line with a trailing newline; `""` for the
/// empty sequence.
pub fn serialize_sequence(seq: &Sequence) -> String {
    if seq.is_empty() {
        return String::new();
    }
    let mut out = seq.to_string();
    out.push('\n');
    out
}

/// The `# s=<s> m=<m> len=<n>` comment written ahead of generated output.
pub fn header_comment(s: u64, m: u64, len: usize) -> String {
    format!("# s={s} m={m} len={len}\n")
}

impl FromStr for Sequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_sequence(s)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut it = self.symbols.iter();
        if let Some(first) = it.next() {
            write!(f, "{first}")?;
            for s in it {
                write!(f, " {s}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(v: &[u32]) -> Sequence {
        Sequence::from_values(v.iter().copied()).unwrap()
    }

    #[test]
    fn alphabet_size_counts_distinct() {
        assert_eq!(seq(&[1, 2, 1, 3, 1]).alphabet_size().unwrap(), 3);
        assert_eq!(seq(&[1]).alphabet_size().unwrap(), 1);
        assert_eq!(seq(&[1, 2, 1, 3, 1, 3, 2, 3]).alphabet_size().unwrap(), 3);
        assert_eq!(Sequence::default().alphabet_size(), Err(Error::EmptyInput));
    }

    #[test]
    fn parse_basic_and_comments() {
        assert_eq!(
            parse_sequence("1 2 1 3 1").unwrap().to_values(),
            [1, 2, 1, 3, 1]
        );
        assert_eq!(
            parse_sequence("# comment\n1 2\n1 2").unwrap().to_values(),
            [1, 2, 1, 2]
        );
        assert_eq!(
            parse_sequence("# s=2 m=2 len=3\n  # indented comment\n\t1\t2 \n\n1\n")
                .unwrap()
                .to_values(),
            [1, 2, 1]
        );
        assert!(parse_sequence("").unwrap().is_empty());
    }

    #[test]
    fn parse_rejects_repetition() {
        let err = parse_sequence("1 1 2").unwrap_err();
        assert_eq!(err, Error::ImmediateRepetition { position: 2 });
        assert_eq!(err.to_string(), "immediate repetition at position 2");
        // repetition across a line break still counts
        assert_eq!(
            parse_sequence("1 2\n2 1").unwrap_err(),
            Error::ImmediateRepetition { position: 3 }
        );
    }

    #[test]
    fn parse_reports_line_and_column() {
        let err = parse_sequence("1 2\n3  x4 1").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 4,
                token: "x4".into()
            }
        );
        assert!(matches!(
            parse_sequence("1 0 1"),
            Err(Error::SymbolRange { value: 0, .. })
        ));
        assert!(matches!(
            parse_sequence("-3"),
            Err(Error::SymbolRange { value: -3, .. })
        ));
        assert!(matches!(parse_sequence("1.5"), Err(Error::Parse { .. })));
    }

    #[test]
    fn serialize_examples() {
        assert_eq!(serialize_sequence(&seq(&[1, 2, 1])), "1 2 1\n");
        assert_eq!(serialize_sequence(&Sequence::default()), "");
        assert_eq!(
            serialize_sequence(&seq(&[1, 2, 1, 3, 1, 4, 1])),
            "1 2 1 3 1 4 1\n"
        );
    }

    #[test]
    fn declared_alphabet_bounds_symbols() {
        assert!(seq(&[1, 2, 3]).with_alphabet(3).is_ok());
        assert!(matches!(
            seq(&[1, 4]).with_alphabet(3),
            Err(Error::SymbolRange { value: 4, max: 3 })
        ));
    }

    #[test]
    fn ds_params_positive() {
        assert!(DsParams::new(1, 1).is_ok());
        assert!(DsParams::new(0, 3).is_err());
        assert!(DsParams::new(3, 0).is_err());
    }

    fn repetition_free() -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(1u32..12, 0..60).prop_map(|mut v| {
            v.dedup();
            v
        })
    }

    proptest! {
        #[test]
        fn parse_serialize_round_trip(values in repetition_free()) {
            let s = Sequence::from_values(values).unwrap();
            let back = parse_sequence(&serialize_sequence(&s)).unwrap();
            prop_assert_eq!(back, s);
        }

        #[test]
        fn alphabet_size_at_most_max_symbol(values in repetition_free()) {
            prop_assume!(!values.is_empty());
            let s = Sequence::from_values(values).unwrap();
            prop_assert!(s.alphabet_size().unwrap() as u32 <= s.max_symbol().unwrap().get());
        }
    }
}
