//! Finite-rank combinatorics: classical Pieri sets, strips, Weyl dimensions, Kostka numbers and
//! the Pieri lattice operations, each with a brute-force counterpart.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::OracleError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FKind {
    Sym,
    Ext,
}

pub fn is_dominant(w: &[i64]) -> bool {
    w.windows(2).all(|p| p[0] >= p[1])
}

/// `a ⪯ b`: `b − a` is a non-negative combination of positive roots.
pub fn dominance_leq(a: &[i64], b: &[i64]) -> bool {
    let mut acc = 0;
    for (x, y) in a.iter().zip(b) {
        acc += y - x;
        if acc < 0 {
            return false;
        }
    }
    acc == 0
}

fn prefix_sums(w: &[i64]) -> Vec<i64> {
    w.iter()
        .scan(0, |s, &x| {
            *s += x;
            Some(*s)
        })
        .collect()
}

fn from_prefix_sums(s: &[i64]) -> Vec<i64> {
    let mut prev = 0;
    s.iter()
        .map(|&x| {
            let d = x - prev;
            prev = x;
            d
        })
        .collect()
}

/// Weights of `S^d V` or `Λ^d V` on `n` indices, in decreasing lexicographic order.
pub fn f_support(kind: FKind, n: usize, d: u32) -> Vec<Vec<i64>> {
    fn go(kind: FKind, n: usize, left: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if acc.len() == n {
            if left == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let top = match kind {
            FKind::Sym => left,
            FKind::Ext => left.min(1),
        };
        for c in (0..=top).rev() {
            acc.push(c);
            go(kind, n, left - c, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(kind, n, d as i64, &mut Vec::new(), &mut out);
    out
}

pub fn f_dim(kind: FKind, n: usize, d: u32) -> BigUint {
    let (top, k) = match kind {
        FKind::Sym => ((n + d as usize).saturating_sub(1), d as usize),
        FKind::Ext => (n, d as usize),
    };
    if k > top {
        return BigUint::from(0u32);
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(top - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// The classical Pieri set, by the inequality form of the rule.
pub fn pieri_finite(lambda: &[i64], kind: FKind, d: u32) -> Vec<Vec<i64>> {
    f_support(kind, lambda.len(), d)
        .into_iter()
        .filter(|g| pieri_member(lambda, kind, g))
        .collect()
}

pub fn pieri_member(lambda: &[i64], kind: FKind, g: &[i64]) -> bool {
    let n = lambda.len();
    match kind {
        FKind::Sym => (1..n).all(|i| g[i] <= lambda[i - 1] - lambda[i]),
        FKind::Ext => (1..n).all(|i| lambda[i - 1] + g[i - 1] >= lambda[i] + g[i]),
    }
}

/// Whether `μ/λ` is a horizontal (Sym) or vertical (Ext) strip, checked cell by cell.
pub fn strip_check(lambda: &[i64], mu: &[i64], kind: FKind) -> Result<bool, OracleError> {
    if lambda.len() != mu.len() || lambda.iter().zip(mu).any(|(l, m)| m < l) {
        return Err(OracleError::NotContaining);
    }
    if !is_dominant(mu) {
        return Err(OracleError::NotDominant(mu.to_vec()));
    }
    let shift = lambda.iter().chain(mu).copied().min().unwrap_or(0).min(0);
    let mut cells: Vec<(usize, i64)> = Vec::new();
    for (row, (&l, &m)) in lambda.iter().zip(mu).enumerate() {
        cells.extend((l - shift..m - shift).map(|col| (row, col)));
    }
    let clash = |a: &(usize, i64), b: &(usize, i64)| match kind {
        FKind::Sym => a.1 == b.1,
        FKind::Ext => a.0 == b.0,
    };
    Ok(cells
        .iter()
        .enumerate()
        .all(|(i, a)| cells[i + 1..].iter().all(|b| !clash(a, b))))
}

pub fn weyl_dim(lambda: &[i64]) -> BigUint {
    let n = lambda.len();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= BigUint::from((lambda[i] - lambda[j] + (j - i) as i64) as u64);
            den *= BigUint::from((j - i) as u64);
        }
    }
    num / den
}

/// Multiplicity of the weight `mu` in `L(lambda)`, counted by Gelfand-Tsetlin patterns.
pub fn kostka(lambda: &[i64], mu: &[i64]) -> u64 {
    fn go(top: &[i64], mu: &[i64]) -> u64 {
        let n = top.len();
        if n == 0 {
            return 1;
        }
        let removed = mu[n - 1];
        let total: i64 = top.iter().sum();
        let mut count = 0;
        let mut row = vec![0i64; n - 1];
        fn fill(
            top: &[i64],
            mu: &[i64],
            row: &mut Vec<i64>,
            i: usize,
            left: i64,
            count: &mut u64,
        ) {
            if i == row.len() {
                if left == 0 {
                    *count += go(row, &mu[..row.len()]);
                }
                return;
            }
            for v in top[i + 1]..=top[i] {
                if v > left {
                    break;
                }
                row[i] = v;
                fill(top, mu, row, i + 1, left - v, count);
            }
        }
        fill(top, mu, &mut row, 0, total - removed, &mut count);
        count
    }
    if lambda.len() != mu.len() || lambda.iter().sum::<i64>() != mu.iter().sum::<i64>() {
        return 0;
    }
    let shift = lambda.iter().copied().min().unwrap_or(0);
    let l: Vec<i64> = lambda.iter().map(|x| x - shift).collect();
    let m: Vec<i64> = mu.iter().map(|x| x - shift).collect();
    if m.iter().any(|&x| x < 0) {
        return 0;
    }
    go(&l, &m)
}

/// Greatest lower bound in the Pieri lattice: pointwise minimum of prefix sums.
pub fn pieri_meet(lambda: &[i64], kind: FKind, d: u32, a: &[i64], b: &[i64]) -> Vec<i64> {
    let s: Vec<i64> = prefix_sums(a).iter().zip(prefix_sums(b)).map(|(x, y)| (*x).min(y)).collect();
    let m = from_prefix_sums(&s);
    if pieri_member(lambda, kind, &m) && m.iter().all(|&x| x >= 0) {
        m
    } else {
        brute_meet(&pieri_finite(lambda, kind, d), a, b).expect("Pieri sets are lattices")
    }
}

/// Least upper bound: pointwise maximum of prefix sums.
pub fn pieri_join(lambda: &[i64], kind: FKind, d: u32, a: &[i64], b: &[i64]) -> Vec<i64> {
    let s: Vec<i64> = prefix_sums(a).iter().zip(prefix_sums(b)).map(|(x, y)| (*x).max(y)).collect();
    let m = from_prefix_sums(&s);
    if pieri_member(lambda, kind, &m) && m.iter().all(|&x| x >= 0) {
        m
    } else {
        brute_join(&pieri_finite(lambda, kind, d), a, b).expect("Pieri sets are lattices")
    }
}

/// `γ′`: the least Pieri element above `γ`, as the meet of everything above it.
pub fn least_above(lambda: &[i64], kind: FKind, d: u32, gamma: &[i64]) -> Result<Vec<i64>, OracleError> {
    pieri_finite(lambda, kind, d)
        .into_iter()
        .filter(|p| dominance_leq(gamma, p))
        .reduce(|a, b| pieri_meet(lambda, kind, d, &a, &b))
        .ok_or(OracleError::NoneAbove)
}

pub fn brute_meet(set: &[Vec<i64>], a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let lower: Vec<&Vec<i64>> = set.iter().filter(|p| dominance_leq(p, a) && dominance_leq(p, b)).collect();
    lower.iter().find(|c| lower.iter().all(|o| dominance_leq(o, c))).map(|c| (*c).clone())
}

pub fn brute_join(set: &[Vec<i64>], a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let upper: Vec<&Vec<i64>> = set.iter().filter(|p| dominance_leq(a, p) && dominance_leq(b, p)).collect();
    upper.iter().find(|c| upper.iter().all(|o| dominance_leq(c, o))).map(|c| (*c).clone())
}

pub fn brute_least_above(set: &[Vec<i64>], gamma: &[i64]) -> Option<Vec<i64>> {
    let upper: Vec<&Vec<i64>> = set.iter().filter(|p| dominance_leq(gamma, p)).collect();
    upper.iter().find(|c| upper.iter().all(|o| dominance_leq(c, o))).map(|c| (*c).clone())
}

/// Non-increasing integer vectors of length `n` with entries in `lo..=hi`.
pub fn dominant_weights(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, lo: i64, cap: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        for v in (lo..=cap).rev() {
            acc.push(v);
            go(n, lo, v, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, lo, hi, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_finite(&[2, 1], FKind::Sym, 2), vec![vec![2, 0], vec![1, 1]]);
        assert_eq!(
            pieri_finite(&[2, 1, 0], FKind::Ext, 2),
            vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]
        );
        for d in 1..=3 {
            let mut top = vec![0; 4];
            top[..d as usize].iter_mut().for_each(|x| *x = 1);
            assert_eq!(pieri_finite(&[0, 0, 0, 0], FKind::Ext, d), vec![top]);
        }
    }

    #[test]
    fn strip_examples() {
        assert_eq!(strip_check(&[3, 1], &[4, 2], FKind::Sym), Ok(true));
        assert_eq!(strip_check(&[3, 1], &[3, 3], FKind::Sym), Ok(true));
        assert_eq!(strip_check(&[3, 1], &[5, 1], FKind::Sym), Ok(true));
        assert_eq!(strip_check(&[1, 1], &[3, 1], FKind::Ext), Ok(false));
        assert_eq!(strip_check(&[2, 0], &[3, 1], FKind::Ext), Ok(true));
        assert_eq!(strip_check(&[2, 0], &[2, 2], FKind::Ext), Ok(false));
        assert_eq!(strip_check(&[3, 1], &[2, 2], FKind::Sym), Err(OracleError::NotContaining));
        assert_eq!(strip_check(&[2, 2], &[2, 3], FKind::Sym), Err(OracleError::NotDominant(vec![2, 3])));
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_dim(&[1, 0, 0]), big(3));
        assert_eq!(weyl_dim(&[1, 1, 0]), big(3));
        assert_eq!(weyl_dim(&[2, 1, 0]), big(8));
        assert_eq!(weyl_dim(&[2, 2, 2]), big(1));
        assert_eq!(weyl_dim(&[-1, -3]), big(3));
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&[2, 1, 0], &[1, 1, 1]), 2);
        assert_eq!(kostka(&[2, 1, 0], &[2, 1, 0]), 1);
        assert_eq!(kostka(&[2, 1, 0], &[0, 1, 2]), 1);
        assert_eq!(kostka(&[2, 1, 0], &[3, 0, 0]), 0);
        let lam = [3, 1, 0];
        let mut sum = 0u64;
        for a in 0..=4 {
            for b in 0..=4 {
                let c = 4 - a - b;
                if c >= 0 {
                    sum += kostka(&lam, &[a, b, c]);
                }
            }
        }
        assert_eq!(BigUint::from(sum), weyl_dim(&lam));
    }

    #[test]
    fn lattice_examples() {
        let lam = [3, 1, 0];
        assert_eq!(least_above(&lam, FKind::Sym, 2, &[0, 0, 2]), Ok(vec![0, 1, 1]));
        assert_eq!(least_above(&lam, FKind::Sym, 2, &[0, 2, 0]), Ok(vec![0, 2, 0]));
        assert_eq!(pieri_meet(&lam, FKind::Sym, 3, &[1, 2, 0], &[2, 0, 1]), vec![1, 1, 1]);
        let set = pieri_finite(&lam, FKind::Sym, 3);
        let top = set.iter().skip(1).fold(set[0].clone(), |a, b| pieri_join(&lam, FKind::Sym, 3, &a, b));
        assert_eq!(top, vec![3, 0, 0]);
    }

    proptest! {
        #[test]
        fn meet_join_match_brute(
            lam in proptest::collection::vec(0i64..4, 1..5),
            d in 1u32..4,
            ext in any::<bool>(),
            i in 0usize..64,
            j in 0usize..64,
        ) {
            let mut lam = lam;
            lam.sort_unstable_by(|a, b| b.cmp(a));
            let kind = if ext { FKind::Ext } else { FKind::Sym };
            let set = pieri_finite(&lam, kind, d);
            prop_assume!(!set.is_empty());
            let (a, b) = (&set[i % set.len()], &set[j % set.len()]);
            prop_assert_eq!(Some(pieri_meet(&lam, kind, d, a, b)), brute_meet(&set, a, b));
            prop_assert_eq!(Some(pieri_join(&lam, kind, d, a, b)), brute_join(&set, a, b));
        }
    }
}
