//! Small combinatorial helpers: factorials, binomials, signed permutation
//! enumeration, increasing index sequences.

use num_bigint::BigInt;
use num_traits::One;

pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n as u64 {
        acc *= i;
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// Calls `f` with every permutation of `0..n` together with its sign.
/// Heap's algorithm: consecutive permutations differ by one transposition,
/// so the sign just alternates after the identity.
pub fn for_each_permutation_signed<F: FnMut(&[usize], i64)>(n: usize, mut f: F) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1i64;
    f(&perm, sign);
    if n < 2 {
        return;
    }
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            f(&perm, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// All monomial exponent maps of exact total degree `deg` over variables
/// `0..vars`, in a fixed deterministic order.
pub fn monomials_of_degree(vars: u32, deg: u32) -> Vec<crate::multi_index::MultiIndex> {
    use crate::multi_index::MultiIndex;
    fn rec(vars: u32, next: u32, deg: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<MultiIndex>) {
        if next + 1 == vars {
            cur.push((next, deg));
            out.push(MultiIndex::from_pairs(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=deg {
            cur.push((next, e));
            rec(vars, next + 1, deg - e, cur, out);
            cur.pop();
        }
    }
    assert!(vars > 0);
    let mut out = Vec::new();
    rec(vars, 0, deg, &mut Vec::new(), &mut out);
    out
}

/// All strictly increasing sequences of the given length with entries in
/// `1..=n`, in lexicographic order.
pub fn increasing_sequences(n: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if len == 0 || len as u32 > n {
        return out;
    }
    let mut cur: Vec<u32> = (1..=len as u32).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (len - 1 - i) as u32 {
                cur[i] += 1;
                for j in i + 1..len {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(4, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(0), BigInt::from(1));
    }

    #[test]
    fn signed_permutations_cover_sn() {
        let mut seen = std::collections::HashSet::new();
        let mut sign_sum = 0i64;
        for_each_permutation_signed(4, |p, s| {
            // verify the reported sign against an inversion count
            let mut inv = 0;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            assert_eq!(s, if inv % 2 == 0 { 1 } else { -1 });
            sign_sum += s;
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 24);
        assert_eq!(sign_sum, 0);
    }

    #[test]
    fn increasing_sequences_enumerate_subsets() {
        let seqs = increasing_sequences(4, 3);
        assert_eq!(
            seqs,
            vec![
                vec![1, 2, 3],
                vec![1, 2, 4],
                vec![1, 3, 4],
                vec![2, 3, 4]
            ]
        );
        assert_eq!(increasing_sequences(3, 4).len(), 0);
        assert_eq!(increasing_sequences(5, 1).len(), 5);
    }
}
