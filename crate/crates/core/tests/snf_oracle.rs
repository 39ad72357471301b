//! Smith normal form against determinantal divisors: `d_k` is the gcd of all
//! `k × k` minors and the invariant factors are `d_k / d_{k-1}`.

use nilhom_core::snf::{rank_mod_prime, smith_normal_form};
use nilhom_core::SparseMatrix;
use num_bigint::BigUint;
use proptest::prelude::*;

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors, all of them (units included).
fn invariant_factors(m: &[Vec<i64>]) -> Vec<u128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev: i128 = 1;
    for k in 1..=rows.min(cols) {
        let mut d = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect()).collect();
                d = gcd(d, det(&minor));
            }
        }
        if d == 0 {
            break;
        }
        out.push((d / prev) as u128);
        prev = d;
    }
    out
}

fn matrix(max_rows: usize, max_cols: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-range..=range, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn agrees_with_determinantal_divisors(m in matrix(5, 5, 6)) {
        let snf = smith_normal_form(&SparseMatrix::from_dense(&m));
        let oracle = invariant_factors(&m);
        prop_assert_eq!(snf.rank(), oracle.len());
        let mut got: Vec<BigUint> = snf.divisors();
        got.sort();
        let mut want: Vec<BigUint> = oracle.iter().map(|&d| BigUint::from(d)).collect();
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn sparse_zero_one_matrices(m in matrix(5, 6, 1)) {
        let snf = smith_normal_form(&SparseMatrix::from_dense(&m));
        let oracle = invariant_factors(&m);
        prop_assert_eq!(snf.unit_count, oracle.iter().filter(|&&d| d == 1).count());
        prop_assert_eq!(snf.rank(), oracle.len());
    }

    #[test]
    fn rank_mod_p_counts_units_mod_p(m in matrix(5, 5, 9), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let oracle = invariant_factors(&m);
        let expected = oracle.iter().filter(|&&d| d % p as u128 != 0).count();
        prop_assert_eq!(rank_mod_prime(&SparseMatrix::from_dense(&m), p), expected);
    }
}

#[test]
fn large_entries_fall_back_to_big_integers() {
    let big = i64::MAX / 3;
    let m = vec![vec![big, big - 1], vec![big - 1, big - 2]];
    let snf = smith_normal_form(&SparseMatrix::from_dense(&m));
    // det = (big)(big-2) - (big-1)^2 = -1
    assert_eq!(snf.rank(), 2);
    assert_eq!(snf.unit_count, 2);
}

#[test]
fn diagonal_torsion() {
    let m = vec![vec![2, 0, 0], vec![0, 4, 0], vec![0, 0, 0]];
    let snf = smith_normal_form(&SparseMatrix::from_dense(&m));
    assert_eq!(snf.divisors(), vec![BigUint::from(2u32), BigUint::from(4u32)]);
}
