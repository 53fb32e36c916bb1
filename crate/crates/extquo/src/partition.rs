//! Integer partitions and symmetric-group characters by Murnaghan–Nakayama.

use std::collections::HashMap;

pub type Partition = Vec<usize>;

/// All partitions of n, in reverse lexicographic order: (n), (n-1,1), ..., (1^n).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn partition_count(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            p[m] += p[m - k];
        }
    }
    p[n]
}

pub fn conjugate(lambda: &[usize]) -> Partition {
    let m = lambda.first().copied().unwrap_or(0);
    (1..=m).map(|i| lambda.iter().filter(|&&p| p >= i).count()).collect()
}

/// Cycle type of a permutation of 0..n (parts sorted decreasingly).
pub fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// χ^λ(μ) by the Murnaghan–Nakayama rule on beta-sets.
pub fn mn_character(lambda: &[usize], mu: &[usize]) -> i64 {
    let n: usize = lambda.iter().sum();
    assert_eq!(n, mu.iter().sum::<usize>(), "partition sizes differ");
    let len = lambda.len();
    // beta numbers: λ_i + (len - 1 - i), strictly decreasing
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + len - 1 - i).collect();
    let mut memo = HashMap::new();
    mn_rec(beta, mu, &mut memo)
}

fn mn_rec(beta: Vec<usize>, mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (beta.clone(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu[0];
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[idx] = b - r;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        total += sign * mn_rec(nb, &mu[1..], memo);
    }
    memo.insert(key, total);
    total
}

/// Size of the conjugacy class of cycle type μ in S_n.
pub fn class_size(mu: &[usize]) -> u128 {
    let n: usize = mu.iter().sum();
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    let mut denom: u128 = 1;
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &p in mu {
        *counts.entry(p).or_insert(0) += 1;
    }
    for (&p, &m) in &counts {
        denom *= (p as u128).pow(m as u32) * fact(m);
    }
    fact(n) / denom
}

/// Dominance order: λ ≤ μ iff every partial sum of λ is at most that of μ.
pub fn dominated_by(lambda: &[usize], mu: &[usize]) -> bool {
    let mut a = 0;
    let mut b = 0;
    for i in 0..lambda.len().max(mu.len()) {
        a += lambda.get(i).copied().unwrap_or(0);
        b += mu.get(i).copied().unwrap_or(0);
        if a > b {
            return false;
        }
    }
    true
}

/// Dimension of the GL_n unipotent class with Jordan type λ: n² − Σ (λ'_i)².
pub fn gl_orbit_dim(lambda: &[usize]) -> usize {
    let n: usize = lambda.iter().sum();
    n * n - conjugate(lambda).iter().map(|c| c * c).sum::<usize>()
}

pub fn format_partition(p: &[usize]) -> String {
    let inner: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(","))
}

pub fn parse_partition(s: &str) -> Option<Partition> {
    let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let mut p: Vec<usize> = t.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
    if p.contains(&0) {
        return None;
    }
    p.sort_unstable_by(|a, b| b.cmp(a));
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partition_count(5), 7);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(conjugate(&[3, 1]), vec![2, 1, 1]);
    }

    #[test]
    fn s3_table() {
        // rows (3),(2,1),(1,1,1); columns (1,1,1),(2,1),(3)
        let cols = [vec![1, 1, 1], vec![2, 1], vec![3]];
        let rows = [[1, 1, 1], [2, 0, -1], [1, -1, 1]];
        for (lam, row) in partitions(3).iter().zip(rows) {
            for (mu, &v) in cols.iter().zip(row.iter()) {
                assert_eq!(mn_character(lam, mu), v, "{lam:?} {mu:?}");
            }
        }
    }

    #[test]
    fn degrees_square_sum() {
        for n in 1..=7 {
            let id = vec![1; n];
            let s: i64 = partitions(n).iter().map(|l| mn_character(l, &id).pow(2)).sum();
            assert_eq!(s as u128, (1..=n as u128).product::<u128>());
        }
    }
}
