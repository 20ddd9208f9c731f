//! Permutation enumeration and determinant-style weighted sums.

use std::sync::Arc;

use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::ncalg::{Context, NcPoly};

/// All permutations of `{0, .., n-1}` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// Number of inversions: pairs `a < b` with `perm[a] > perm[b]`.
pub fn inversions(perm: &[usize]) -> usize {
    let mut count = 0;
    for a in 0..perm.len() {
        for b in (a + 1)..perm.len() {
            if perm[a] > perm[b] {
                count += 1;
            }
        }
    }
    count
}

#[allow(clippy::manual_is_multiple_of)]
pub fn sign(perm: &[usize]) -> i64 {
    if inversions(perm) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `sum over permutations s of weight(s) * m[1, s(1)+1] * ... * m[n, s(n)+1]`,
/// normalized. `entries` is row-major `n x n`.
pub fn weighted_perm_sum(
    ctx: &Arc<Context>,
    n: usize,
    entries: &[NcPoly],
    weight: impl Fn(&[usize]) -> LaurentPoly,
) -> Result<NcPoly> {
    let mut acc = NcPoly::zero(ctx);
    for perm in all_permutations(n) {
        let mut prod = NcPoly::scalar(ctx, weight(&perm));
        for (row, &col) in perm.iter().enumerate() {
            prod = prod.checked_mul(&entries[row * n + col])?;
        }
        acc = acc.checked_add(&prod)?;
    }
    ctx.normal_form(&acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_counts_for_s3() {
        let perms = all_permutations(3);
        assert_eq!(perms.len(), 6);
        let got: Vec<usize> = perms.iter().map(|p| inversions(p)).collect();
        assert_eq!(got, vec![0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn sign_matches_inversion_parity() {
        for p in all_permutations(4) {
            assert_eq!(sign(&p), if inversions(&p) % 2 == 0 { 1 } else { -1 });
        }
    }
}
