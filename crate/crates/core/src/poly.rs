//! Sparse exact polynomials over a declared commutative variable set.
//! These carry the symbol images of Weyl and enveloping-algebra elements
//! and the point evaluations of the geometric vanishing checks.

use crate::multi_index::MultiIndex;
use crate::render;
use crate::scalar::Rat;
use crate::weyl::Shape;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// The commutative variable sets in play. Variable ids are dense
/// `0..var_count()`; names are fixed per set for printing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarSet {
    /// Symbols of a Weyl algebra: x-block `0..pairs`, then d-block.
    WeylSymbols { shape: Shape },
    /// Entries of an n-by-n generic matrix, row-major: `M[i,j]`.
    MatrixGl { n: u32 },
    /// Entries above the diagonal of an n-by-n skew matrix, lex order on
    /// (i, j) with i < j; `M[j,i]` is resolved to `-M[i,j]`.
    MatrixSkew { n: u32 },
    /// Two symbolic n-by-k blocks: X entries first, then Y entries.
    XY { n: u32, k: u32 },
}

impl VarSet {
    pub fn var_count(&self) -> u32 {
        match *self {
            VarSet::WeylSymbols { shape } => 2 * shape.pairs(),
            VarSet::MatrixGl { n } => n * n,
            VarSet::MatrixSkew { n } => n * (n - 1) / 2,
            VarSet::XY { n, k } => 2 * n * k,
        }
    }

    pub fn var_name(&self, id: u32) -> String {
        match *self {
            VarSet::WeylSymbols { shape } => {
                let pairs = shape.pairs();
                if id < pairs {
                    let (i, a) = shape.var_pos(id);
                    format!("x[{i},{a}]")
                } else {
                    let (i, a) = shape.var_pos(id - pairs);
                    format!("d[{i},{a}]")
                }
            }
            VarSet::MatrixGl { n } => {
                format!("M[{},{}]", id / n + 1, id % n + 1)
            }
            VarSet::MatrixSkew { n } => {
                let (i, j) = skew_pos(n, id);
                format!("M[{i},{j}]")
            }
            VarSet::XY { n: _, k } => {
                let block = self.var_count() / 2;
                if id < block {
                    format!("X[{},{}]", id / k + 1, id % k + 1)
                } else {
                    let id = id - block;
                    format!("Y[{},{}]", id / k + 1, id % k + 1)
                }
            }
        }
    }
}

/// 0-based id of the skew variable `M[i,j]`, `1 <= i < j <= n`.
pub fn skew_id(n: u32, i: u32, j: u32) -> u32 {
    assert!(1 <= i && i < j && j <= n, "skew index out of range");
    let i0 = i - 1;
    // entries above the diagonal in rows 0..i0, then offset in row i0
    i0 * n - i0 * (i0 + 1) / 2 + (j - i - 1)
}

/// Inverse of [`skew_id`]; returns 1-based (i, j) with i < j.
pub fn skew_pos(n: u32, id: u32) -> (u32, u32) {
    let mut rem = id;
    for i0 in 0..n {
        let row = n - i0 - 1;
        if rem < row {
            return (i0 + 1, i0 + 2 + rem);
        }
        rem -= row;
    }
    panic!("skew variable id out of range");
}

/// Exact sparse multivariate polynomial over a fixed variable set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommutativePolynomial {
    vars: VarSet,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl CommutativePolynomial {
    pub fn zero(vars: VarSet) -> Self {
        CommutativePolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarSet, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(MultiIndex::empty(), c);
        p
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, Rat::from_integer(1.into()))
    }

    pub fn var(vars: VarSet, id: u32) -> Self {
        assert!(id < vars.var_count(), "variable id out of range");
        let mut p = Self::zero(vars);
        p.add_term(MultiIndex::single(id, 1), Rat::from_integer(1.into()));
        p
    }

    pub fn var_set(&self) -> VarSet {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: MultiIndex, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable set mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.vars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        let mut out = Self::zero(self.vars);
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable set mismatch");
        let mut out = Self::zero(self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Largest total degree among the terms; zero polynomial reports 0.
    pub fn degree(&self) -> u64 {
        self.terms
            .keys()
            .map(MultiIndex::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// The homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, degree: u64) -> Self {
        let mut out = Self::zero(self.vars);
        for (m, c) in &self.terms {
            if m.total_degree() == degree {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(MultiIndex::total_degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Exact evaluation at a full point, indexed by variable id.
    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        assert_eq!(
            point.len(),
            self.vars.var_count() as usize,
            "point dimension mismatch"
        );
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.iter() {
                for _ in 0..e {
                    term *= &point[v as usize];
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitutes every variable by a polynomial over `target` variables.
    pub fn substitute(
        &self,
        target: VarSet,
        image: impl Fn(u32) -> CommutativePolynomial,
    ) -> CommutativePolynomial {
        let mut acc = CommutativePolynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = CommutativePolynomial::constant(target, c.clone());
            for (v, e) in m.iter() {
                let img = image(v);
                assert_eq!(img.var_set(), target, "substitution image set mismatch");
                term = term.mul(&img.pow(e));
            }
            acc = acc.add(&term);
        }
        acc
    }

    fn render_monomial(&self, m: &MultiIndex) -> String {
        m.iter()
            .map(|(v, e)| render::power(&self.vars.var_name(v), e))
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for CommutativePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&MultiIndex, &Rat)> = self.terms.iter().collect();
        terms.sort_by(|(ma, ca), (mb, cb)| {
            mb.total_degree()
                .cmp(&ma.total_degree())
                .then_with(|| ca.is_negative().cmp(&cb.is_negative()))
                .then_with(|| ma.lex_cmp(mb))
        });
        let rendered = terms
            .into_iter()
            .map(|(m, c)| (self.render_monomial(m), c.clone()));
        f.write_str(&render::join_terms(rendered))
    }
}

impl std::ops::Add for &CommutativePolynomial {
    type Output = CommutativePolynomial;
    fn add(self, rhs: Self) -> CommutativePolynomial {
        CommutativePolynomial::add(self, rhs)
    }
}

impl std::ops::Sub for &CommutativePolynomial {
    type Output = CommutativePolynomial;
    fn sub(self, rhs: Self) -> CommutativePolynomial {
        CommutativePolynomial::sub(self, rhs)
    }
}

impl std::ops::Mul for &CommutativePolynomial {
    type Output = CommutativePolynomial;
    fn mul(self, rhs: Self) -> CommutativePolynomial {
        CommutativePolynomial::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn skew_ids_round_trip() {
        let n = 5;
        let mut seen = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let id = skew_id(n, i, j);
                assert_eq!(skew_pos(n, id), (i, j));
                seen.push(id);
            }
        }
        seen.sort_unstable();
        assert_eq!(seen, (0..n * (n - 1) / 2).collect::<Vec<_>>());
    }

    #[test]
    fn arithmetic_and_eval() {
        let vs = VarSet::MatrixGl { n: 2 };
        let a = CommutativePolynomial::var(vs, 0); // M[1,1]
        let b = CommutativePolynomial::var(vs, 3); // M[2,2]
        let p = (&(&a * &b) - &CommutativePolynomial::one(vs)).add(&a);
        // p = M11*M22 + M11 - 1 at M11 = 2, M22 = 3 -> 7
        let point = vec![rat(2), rat(0), rat(0), rat(3)];
        assert_eq!(p.evaluate(&point), rat(7));
        assert_eq!(p.degree(), 2);
        assert!(!p.is_homogeneous());
        assert_eq!(p.homogeneous_part(2), &a * &b);
    }

    #[test]
    fn display_orders_by_degree_then_lex() {
        let vs = VarSet::MatrixGl { n: 2 };
        let m11 = CommutativePolynomial::var(vs, 0);
        let m22 = CommutativePolynomial::var(vs, 3);
        let p = (&m22 - &m11).add(&(&m11 * &m22));
        assert_eq!(p.to_string(), "M[1,1]*M[2,2] + M[2,2] - M[1,1]");
        assert_eq!(CommutativePolynomial::zero(vs).to_string(), "0");
    }
}
