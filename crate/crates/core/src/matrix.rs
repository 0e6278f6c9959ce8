//! Rectangular matrices over a noncommutative entry algebra, with the
//! row-by-column convention (A*B)_{ij} = sum_l A_{il} * B_{lj} and
//! left-to-right entry products.

use crate::poly::CommutativePolynomial;
use crate::scalar::Rat;
use crate::uea::UEAElement;
use crate::weyl::WeylElement;
use num_traits::Zero;

/// The operations a matrix entry algebra must provide. Contexts (shape,
/// algebra, variable set) travel with the elements, so fresh zeros and
/// units are derived from an existing entry.
pub trait RingElem: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_scale(&self, c: &Rat) -> Self;
    fn ring_is_zero(&self) -> bool;
}

impl RingElem for WeylElement {
    fn zero_like(&self) -> Self {
        WeylElement::zero(self.shape())
    }
    fn one_like(&self) -> Self {
        WeylElement::one(self.shape())
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_scale(&self, c: &Rat) -> Self {
        self.scale(c)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl RingElem for UEAElement {
    fn zero_like(&self) -> Self {
        UEAElement::zero(self.algebra())
    }
    fn one_like(&self) -> Self {
        UEAElement::one(self.algebra())
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_scale(&self, c: &Rat) -> Self {
        self.scale(c)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl RingElem for CommutativePolynomial {
    fn zero_like(&self) -> Self {
        CommutativePolynomial::zero(self.var_set())
    }
    fn one_like(&self) -> Self {
        CommutativePolynomial::one(self.var_set())
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_scale(&self, c: &Rat) -> Self {
        self.scale(c)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct OpMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: RingElem> OpMatrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        OpMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity_like(sample: &T, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                sample.one_like()
            } else {
                sample.zero_like()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 0-based entry access.
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "dimension mismatch"
        );
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).ring_add(other.at(i, j))
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j).ring_scale(c))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::from_integer(1.into())))
    }

    /// A + c*I on a square matrix.
    pub fn shift_diag(&self, c: &Rat) -> Self {
        assert_eq!(self.rows, self.cols, "non-square input");
        Self::from_fn(self.rows, self.cols, |i, j| {
            if i == j {
                self.at(i, j)
                    .ring_add(&self.at(i, j).one_like().ring_scale(c))
            } else {
                self.at(i, j).clone()
            }
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = self.at(i, 0).ring_mul(other.at(0, j));
            for l in 1..self.cols {
                acc = acc.ring_add(&self.at(i, l).ring_mul(other.at(l, j)));
            }
            acc
        })
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols, "non-square input");
        let mut acc = self.at(0, 0).clone();
        for i in 1..self.rows {
            acc = acc.ring_add(self.at(i, i));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.rows, self.cols, "non-square input");
        let mut acc = Self::identity_like(self.at(0, 0), self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// p(A) for p given by coefficients c_0..c_d (constant term first);
    /// the scalar term contributes c_0 * I.
    pub fn poly_eval(&self, coeffs: &[Rat]) -> Self {
        assert_eq!(self.rows, self.cols, "non-square input");
        let mut acc = Self::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).zero_like()
        });
        let mut power = Self::identity_like(self.at(0, 0), self.rows);
        for (d, c) in coeffs.iter().enumerate() {
            if d > 0 {
                power = power.mul(self);
            }
            if !c.is_zero() {
                acc = acc.add(&power.scale(c));
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use crate::uea::{LieAlgebraSpec, UEAElement};

    #[test]
    fn identity_and_definition_unfolding() {
        let gl2 = LieAlgebraSpec::gl(2);
        let e = OpMatrix::from_fn(2, 2, |i, j| {
            UEAElement::gen_entry(&gl2, i as u32 + 1, j as u32 + 1)
        });
        let id = OpMatrix::identity_like(e.at(0, 0), 2);
        assert_eq!(id.mul(&e), e);
        // (E^2)_{11} = E11 E11 + E12 E21
        let e2 = e.mul(&e);
        let expected = e
            .at(0, 0)
            .mul(e.at(0, 0))
            .add(&e.at(0, 1).mul(e.at(1, 0)));
        assert_eq!(*e2.at(0, 0), expected);
    }

    #[test]
    fn f_squared_skew_defect() {
        // (F^2)_{ij} - (F^2)_{ji} = (N-2) F_{ij} in U(o_N)
        for n in [3u32, 4, 5] {
            let o = LieAlgebraSpec::o(n);
            let f = OpMatrix::from_fn(n as usize, n as usize, |i, j| {
                UEAElement::gen_entry(&o, i as u32 + 1, j as u32 + 1)
            });
            let f2 = f.mul(&f);
            for i in 0..n as usize {
                for j in 0..n as usize {
                    let lhs = f2.at(i, j).sub(f2.at(j, i));
                    let rhs = f.at(i, j).scale(&rat(n as i64 - 2));
                    assert_eq!(lhs, rhs, "defect law fails at N={n}, ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn poly_eval_and_trace() {
        let gl2 = LieAlgebraSpec::gl(2);
        let e = OpMatrix::from_fn(2, 2, |i, j| {
            UEAElement::gen_entry(&gl2, i as u32 + 1, j as u32 + 1)
        });
        // p(u) = u returns the matrix itself
        assert_eq!(e.poly_eval(&[rat(0), rat(1)]), e);
        // trace(E) = E11 + E22
        let tr = e.trace();
        let expected = UEAElement::gen_entry(&gl2, 1, 1).add(&UEAElement::gen_entry(&gl2, 2, 2));
        assert_eq!(tr, expected);
        // p(F) symmetric for p(u) = u^2 - (N/2 - 1) u
        let n = 4u32;
        let o = LieAlgebraSpec::o(n);
        let f = OpMatrix::from_fn(n as usize, n as usize, |i, j| {
            UEAElement::gen_entry(&o, i as u32 + 1, j as u32 + 1)
        });
        let p_f = f.poly_eval(&[rat(0), -ratio(n as i64 - 2, 2), rat(1)]);
        assert!(p_f.is_symmetric());
    }
}
