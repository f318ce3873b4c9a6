//! Cross-module properties: constructions checked by the verifier, the
//! oracle checked against bounds, and tables checked against golden CSV.

use std::fs;
use std::path::Path;

use dsseq::bounds::{
    certified_lower_bound, pigeonhole_ub, ratio_table, table_to_csv, RatioMode, RatioQuery,
};
use dsseq::oracle::{lambda_exact, OracleResult, DEFAULT_NODE_BUDGET};
use dsseq::rs::{generate_rs, rs_length};
use dsseq::s2::{assemble_s2, choose_parameters, s2_length_bound, s2_order_bound, S2Params};
use dsseq::sequence::parse_sequence;
use dsseq::verifier::{analyze, check_ds};
use dsseq::{DsParams, DEFAULT_LENGTH_BUDGET};
use num_rational::Ratio;

fn golden(name: &str) -> String {
    fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

/// Exact values from the exhaustive search, s + m <= 9. Rows s = 2..7,
/// columns m = 2..7; 0 marks points outside the grid.
const LAMBDA: [[u64; 6]; 6] = [
    [3, 5, 7, 9, 11, 13],
    [4, 8, 12, 17, 22, 0],
    [5, 10, 16, 22, 0, 0],
    [6, 14, 23, 0, 0, 0],
    [7, 16, 0, 0, 0, 0],
    [8, 0, 0, 0, 0, 0],
];

fn exact(s: u64, m: u64) -> OracleResult {
    let r = lambda_exact(s, m, DEFAULT_NODE_BUDGET).unwrap();
    assert!(r.exhausted, "lambda({s},{m}) not exhausted");
    r
}

/// Unpruned DFS over every DS(s, m) prefix, checking each prefix from
/// scratch by restriction-and-collapse. Shares no code with the oracle.
fn brute_force_lambda(s: u64, m: u32) -> u64 {
    fn alternation(seq: &[u32], a: u32, b: u32) -> u64 {
        let mut r: Vec<u32> = seq.iter().copied().filter(|&x| x == a || x == b).collect();
        r.dedup();
        r.len() as u64
    }
    fn go(seq: &mut Vec<u32>, s: u64, m: u32, best: &mut u64) {
        *best = (*best).max(seq.len() as u64);
        for x in 1..=m {
            if seq.last() == Some(&x) {
                continue;
            }
            seq.push(x);
            let ok = (1..=m)
                .filter(|&y| y != x)
                .all(|y| alternation(seq, x, y) <= s + 1);
            if ok {
                go(seq, s, m, best);
            }
            seq.pop();
        }
    }
    let mut best = 0;
    go(&mut Vec::new(), s, m, &mut best);
    best
}

#[test]
fn oracle_matches_brute_force() {
    for m in 1..=4u64 {
        for s in 1..=(7 - m) {
            assert_eq!(
                exact(s, m).value,
                brute_force_lambda(s, m as u32),
                "lambda({s},{m})"
            );
        }
    }
}

#[test]
fn oracle_grid_values_and_bounds() {
    for s in 2..=7u64 {
        for m in 2..=(9 - s) {
            let r = exact(s, m);
            assert_eq!(
                r.value,
                LAMBDA[s as usize - 2][m as usize - 2],
                "lambda({s},{m})"
            );
            assert!(check_ds(&r.witness, DsParams::new(s, m).unwrap()).passed());
            assert!(r.value <= pigeonhole_ub(s, m).unwrap());
            assert!(r.value >= rs_length(s, m).unwrap());
            let lb = certified_lower_bound(s, m).unwrap();
            assert!(lb.value <= r.value);
        }
    }
}

#[test]
fn oracle_is_monotone() {
    for s in 1..=6u64 {
        for m in 1..=(8 - s) {
            let here = exact(s, m).value;
            if s + 1 + m <= 8 {
                assert!(exact(s + 1, m).value >= here);
            }
            if s + m < 8 {
                assert!(exact(s, m + 1).value >= here);
            }
        }
    }
}

#[test]
fn s2_grid_properties() {
    for q in [2u64, 3, 5, 7] {
        for s_hat in [q, q + 1, 2 * q, 50] {
            let params = S2Params::new(s_hat, q).unwrap();
            let a = assemble_s2(params, DEFAULT_LENGTH_BUDGET).unwrap();
            let report = analyze(&a.sequence).unwrap();
            let len = a.sequence.len() as u64;
            let q2 = q * q;
            assert!(report.alphabet as u64 <= q2);
            assert!(report.minimal_order <= s2_order_bound(params).unwrap());
            assert!(a.boundary_deletions < q2);
            let floor = q2 * rs_length(s_hat, q).unwrap() - (q2 - 1);
            assert!(len >= floor);
            assert!(floor >= s2_length_bound(params).unwrap());
            assert_eq!(
                len,
                q2 * rs_length(s_hat, q).unwrap() - a.boundary_deletions
            );
            assert!(check_ds(
                &a.sequence,
                DsParams::new(s2_order_bound(params).unwrap(), q2).unwrap()
            )
            .passed());
            let again = assemble_s2(params, DEFAULT_LENGTH_BUDGET).unwrap();
            assert_eq!(again.sequence.to_string(), a.sequence.to_string());
        }
    }
}

#[test]
fn s2_from_plans_respects_target() {
    for (s, m) in [(19, 49), (25, 50), (40, 30), (13, 25), (4, 4), (7, 9)] {
        let plan = choose_parameters(s, m).unwrap();
        let seq = assemble_s2(plan.params(), DEFAULT_LENGTH_BUDGET)
            .unwrap()
            .sequence;
        assert!(
            check_ds(&seq, DsParams::new(s, m).unwrap()).passed(),
            "({s},{m})"
        );
    }
}

#[test]
fn golden_sequences_parse_back() {
    for (name, s, m) in [
        ("rs_2_4.txt", 2, 4),
        ("rs_3_3.txt", 3, 3),
        ("rs_4_4.txt", 4, 4),
    ] {
        let parsed = parse_sequence(&golden(name)).unwrap();
        assert_eq!(parsed, generate_rs(s, m).unwrap());
    }
    let s2 = parse_sequence(&golden("s2_2_2.txt")).unwrap();
    assert_eq!(s2.to_values(), [1, 2, 1, 3, 4, 3, 1, 4, 1, 2, 3, 2]);
}

#[test]
fn tables_match_golden_csv() {
    let cases = [
        (
            RatioMode::Diagonal,
            vec![1000, 10_000, 100_000, 1_000_000],
            "diagonal.csv",
        ),
        (
            RatioMode::Linear {
                a: Ratio::from_integer(2),
                b: Ratio::from_integer(1),
            },
            vec![1000, 10_000],
            "linear_a2_b1.csv",
        ),
        (
            RatioMode::Linear {
                a: Ratio::new(1, 2),
                b: Ratio::from_integer(3),
            },
            vec![1000, 10_000],
            "linear_a0.5_b3.csv",
        ),
        (
            RatioMode::Power {
                alpha: Ratio::new(3, 4),
            },
            vec![1000, 10_000],
            "power_0.75.csv",
        ),
        (
            RatioMode::Power {
                alpha: Ratio::new(3, 2),
            },
            vec![1000, 10_000],
            "power_1.5.csv",
        ),
    ];
    for (mode, ns, file) in cases {
        let rows = ratio_table(&RatioQuery::new(mode, ns).unwrap());
        assert_eq!(table_to_csv(&rows), golden(file), "{file}");
        for r in rows.iter().map(|r| r.as_ref().unwrap()) {
            assert!(r.lb <= r.ub);
            assert!(r.rho_lb.at_most(u128::from(r.s) + 1, u128::from(r.s)));
        }
    }
}
