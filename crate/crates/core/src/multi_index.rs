//! Sparse exponent maps for monomials.

use std::cmp::Ordering;

/// Sparse multi-index: `(variable id, exponent)` pairs sorted by variable,
/// with no explicit zero exponents stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct MultiIndex {
    pairs: Vec<(u32, u32)>,
}

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex { pairs: Vec::new() }
    }

    pub fn single(var: u32, exp: u32) -> Self {
        if exp == 0 {
            return Self::empty();
        }
        MultiIndex {
            pairs: vec![(var, exp)],
        }
    }

    /// Builds an index from arbitrary pairs, merging duplicates and
    /// dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut pairs: Vec<(u32, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        pairs.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        MultiIndex { pairs: merged }
    }

    pub fn exponent(&self, var: u32) -> u32 {
        self.pairs
            .binary_search_by_key(&var, |&(v, _)| v)
            .map(|i| self.pairs[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.pairs.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.pairs.iter().copied()
    }

    /// Product of monomials: componentwise exponent sum.
    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        let mut out = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.pairs.len() && j < other.pairs.len() {
            let (va, ea) = self.pairs[i];
            let (vb, eb) = other.pairs[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.pairs[i..]);
        out.extend_from_slice(&other.pairs[j..]);
        MultiIndex { pairs: out }
    }

    /// Componentwise exponent difference; `None` if any component would
    /// go negative.
    pub fn try_div(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let mut out = Vec::with_capacity(self.pairs.len());
        let mut i = 0;
        for &(vb, eb) in &other.pairs {
            loop {
                if i >= self.pairs.len() {
                    return None;
                }
                let (va, ea) = self.pairs[i];
                if va < vb {
                    out.push((va, ea));
                    i += 1;
                } else if va == vb {
                    if ea < eb {
                        return None;
                    }
                    if ea > eb {
                        out.push((va, ea - eb));
                    }
                    i += 1;
                    break;
                } else {
                    return None;
                }
            }
        }
        out.extend_from_slice(&self.pairs[i..]);
        Some(MultiIndex { pairs: out })
    }

    /// Lexicographic comparison of the dense exponent vectors, ascending:
    /// at the first variable (by id) where the exponents differ, the
    /// smaller exponent wins.
    pub fn lex_cmp(&self, other: &MultiIndex) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.pairs.get(i), other.pairs.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // `self` has a positive exponent at an earlier variable.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_zero_drop() {
        let m = MultiIndex::from_pairs([(3, 1), (0, 2), (3, 1), (5, 0)]);
        assert_eq!(m.exponent(0), 2);
        assert_eq!(m.exponent(3), 2);
        assert_eq!(m.exponent(5), 0);
        assert_eq!(m.total_degree(), 4);
    }

    #[test]
    fn mul_and_div() {
        let a = MultiIndex::from_pairs([(0, 1), (2, 3)]);
        let b = MultiIndex::from_pairs([(2, 1), (4, 2)]);
        let ab = a.mul(&b);
        assert_eq!(ab, MultiIndex::from_pairs([(0, 1), (2, 4), (4, 2)]));
        assert_eq!(ab.try_div(&b), Some(a.clone()));
        assert_eq!(a.try_div(&b), None);
        assert_eq!(
            ab.try_div(&a),
            Some(MultiIndex::from_pairs([(2, 1), (4, 2)]))
        );
    }

    #[test]
    fn lex_order_is_dense() {
        // (0,0,0,1) < (1,0,0,0) in dense lex.
        let late = MultiIndex::single(3, 1);
        let early = MultiIndex::single(0, 1);
        assert_eq!(late.lex_cmp(&early), Ordering::Less);
        assert_eq!(early.lex_cmp(&late), Ordering::Greater);
        assert_eq!(early.lex_cmp(&early), Ordering::Equal);
        // (1,0,0,1) vs (0,1,1,0)
        let a = MultiIndex::from_pairs([(0, 1), (3, 1)]);
        let b = MultiIndex::from_pairs([(1, 1), (2, 1)]);
        assert_eq!(b.lex_cmp(&a), Ordering::Less);
    }
}
