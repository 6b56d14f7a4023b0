//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

/// Angle index reduced to its absolute value mod N, so R(x) and R(−x)
/// compare equal.
fn fold(x: i64, n: i64) -> i64 {
    let r = x.rem_euclid(n);
    r.min(n - r)
}

/// Whether some `θ = 2πk/N ≠ 0` puts `diag(I₂, R(p₁θ), R(p₂θ), R(p₃θ))` in the
/// same SO(8) class as a G2 torus element `diag(I₂, R(a), R(b), R(a+b))`
/// with a, b on the same grid. Classes are compared through the multiset of
/// rotation angles up to sign; the shared I₂ block makes O(8) and SO(8)
/// classes agree.
pub fn s1_g2_free_grid(p: [i64; 3], n: i64) -> bool {
    for k in 1..n {
        let mut left = [0, fold(p[0] * k, n), fold(p[1] * k, n), fold(p[2] * k, n)];
        left.sort_unstable();
        // a and b must occur among the left angles up to sign.
        let cands: Vec<i64> = left.iter().flat_map(|&x| [x, -x]).collect();
        for &a in &cands {
            for &b in &cands {
                let mut right = [0, fold(a, n), fold(b, n), fold(a + b, n)];
                right.sort_unstable();
                if right == left {
                    return false;
                }
            }
        }
    }
    true
}

fn multiset(v: impl Iterator<Item = i64>) -> HashMap<i64, usize> {
    let mut m = HashMap::new();
    for x in v {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

/// The circle acts freely iff no `z ≠ 1` has `{z^{q1}, z^{q2}}` inside the
/// eigenvalues `{z^{p_i}}` (the U(n−1) block soaks up the rest). z runs over
/// the `roots`-th roots of unity, exponents mod `roots`.
pub fn eschenburg_free_roots(p: &[i64], q: [i64; 2], roots: i64) -> bool {
    for k in 1..roots {
        let left = multiset(p.iter().map(|&x| (x * k).rem_euclid(roots)));
        let right = multiset(q.iter().map(|&x| (x * k).rem_euclid(roots)));
        if right.iter().all(|(e, c)| left.get(e).copied().unwrap_or(0) >= *c) {
            return false;
        }
    }
    true
}

/// Signed permutations of (0, 0, 1).
pub fn signed_perms_001() -> Vec<[i64; 3]> {
    let mut v = Vec::new();
    for pos in 0..3 {
        for s in [1, -1] {
            let mut p = [0; 3];
            p[pos] = s;
            v.push(p);
        }
    }
    v
}
