//! Exact linear algebra over Q: elimination with deterministic pivoting,
//! kernels, and span-membership certificates.

use crate::scalar::Rat;
use num_traits::Zero;
use std::ops::{Index, IndexMut};

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(
            rows.iter().all(|row| row.len() == c),
            "ragged rows in matrix"
        );
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        Elimination::reduce(self.clone()).pivots.len()
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Row operations recorded during elimination, replayable on vectors.
#[derive(Clone, Debug)]
enum RowOp {
    Swap(usize, usize),
    Scale(usize, Rat),
    /// row[dst] += factor * row[src]
    AddMul(usize, usize, Rat),
}

/// Reduced row echelon form with the operation log and pivot positions.
struct Elimination {
    rref: QMatrix,
    ops: Vec<RowOp>,
    /// (row, col) of each pivot, in column order.
    pivots: Vec<(usize, usize)>,
}

impl Elimination {
    /// Deterministic reduction: scan columns left to right, pick the first
    /// row with a nonzero entry as the pivot.
    fn reduce(mut m: QMatrix) -> Elimination {
        let mut ops = Vec::new();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row >= m.rows {
                break;
            }
            let Some(pivot_row) = (next_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if pivot_row != next_row {
                for j in 0..m.cols {
                    let a = m[(pivot_row, j)].clone();
                    let b = m[(next_row, j)].clone();
                    m[(pivot_row, j)] = b;
                    m[(next_row, j)] = a;
                }
                ops.push(RowOp::Swap(pivot_row, next_row));
            }
            let inv = {
                let p = m[(next_row, col)].clone();
                Rat::new(p.denom().clone(), p.numer().clone())
            };
            if m[(next_row, col)] != Rat::from_integer(1.into()) {
                for j in col..m.cols {
                    let v = m[(next_row, j)].clone() * &inv;
                    m[(next_row, j)] = v;
                }
                ops.push(RowOp::Scale(next_row, inv));
            }
            for r in 0..m.rows {
                if r == next_row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = -m[(r, col)].clone();
                for j in col..m.cols {
                    let add = &m[(next_row, j)] * &factor;
                    let v = m[(r, j)].clone() + add;
                    m[(r, j)] = v;
                }
                ops.push(RowOp::AddMul(r, next_row, factor));
            }
            pivots.push((next_row, col));
            next_row += 1;
        }
        Elimination {
            rref: m,
            ops,
            pivots,
        }
    }

    fn apply_ops(&self, v: &mut [Rat]) {
        for op in &self.ops {
            match op {
                RowOp::Swap(a, b) => v.swap(*a, *b),
                RowOp::Scale(r, f) => {
                    let nv = &v[*r] * f;
                    v[*r] = nv;
                }
                RowOp::AddMul(dst, src, f) => {
                    if !v[*src].is_zero() {
                        let add = &v[*src] * f;
                        let nv = v[*dst].clone() + add;
                        v[*dst] = nv;
                    }
                }
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveOutcome {
    /// One exact solution (the one with all free variables set to zero,
    /// which is determined by the fixed pivot order).
    Solution(Vec<Rat>),
    Inconsistent,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum UniqueOutcome {
    Unique(Vec<Rat>),
    /// System solvable but underdetermined; carries one witness solution.
    NonUnique(Vec<Rat>),
    Inconsistent,
}

/// Solves `m * x = rhs` exactly.
pub fn solve_linear_system(m: &QMatrix, rhs: &[Rat]) -> SolveOutcome {
    match solve_with_uniqueness(m, rhs) {
        UniqueOutcome::Unique(x) | UniqueOutcome::NonUnique(x) => SolveOutcome::Solution(x),
        UniqueOutcome::Inconsistent => SolveOutcome::Inconsistent,
    }
}

/// Solves and reports whether the solution was unique.
pub fn solve_with_uniqueness(m: &QMatrix, rhs: &[Rat]) -> UniqueOutcome {
    assert_eq!(rhs.len(), m.rows(), "dimension mismatch");
    let elim = Elimination::reduce(m.clone());
    let mut b = rhs.to_vec();
    elim.apply_ops(&mut b);
    let pivot_rows: Vec<usize> = elim.pivots.iter().map(|&(r, _)| r).collect();
    for r in 0..m.rows() {
        if !pivot_rows.contains(&r) && !b[r].is_zero() {
            return UniqueOutcome::Inconsistent;
        }
    }
    let mut x = vec![Rat::zero(); m.cols()];
    for &(r, c) in &elim.pivots {
        x[c] = b[r].clone();
    }
    if elim.pivots.len() == m.cols() {
        UniqueOutcome::Unique(x)
    } else {
        UniqueOutcome::NonUnique(x)
    }
}

/// Basis of the exact kernel of `m`, one vector per free column, in
/// column order.
pub fn nullspace_basis(m: &QMatrix) -> Vec<Vec<Rat>> {
    let elim = Elimination::reduce(m.clone());
    let pivot_cols: Vec<usize> = elim.pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..m.cols() {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); m.cols()];
        v[free] = Rat::from_integer(1.into());
        for &(r, c) in &elim.pivots {
            v[c] = -elim.rref[(r, free)].clone();
        }
        basis.push(v);
    }
    basis
}

/// Precomputed elimination of a fixed candidate family, supporting many
/// membership queries against the same span.
pub struct SpanSolver {
    elim: Elimination,
    dim: usize,
    count: usize,
}

impl SpanSolver {
    /// `candidates` are coefficient vectors over a common basis.
    pub fn new(candidates: &[Vec<Rat>]) -> Self {
        let dim = candidates.first().map_or(0, |c| c.len());
        assert!(
            candidates.iter().all(|c| c.len() == dim),
            "mismatched index sets"
        );
        // columns = candidates
        let mut m = QMatrix::zero(dim, candidates.len());
        for (j, c) in candidates.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        SpanSolver {
            elim: Elimination::reduce(m),
            dim,
            count: candidates.len(),
        }
    }

    /// Exact decomposition `target = sum c_i * candidate_i`, or `None` when
    /// the target is outside the span.
    pub fn decompose(&self, target: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(target.len(), self.dim, "mismatched index sets");
        let mut b = target.to_vec();
        self.elim.apply_ops(&mut b);
        let pivot_rows: Vec<usize> = self.elim.pivots.iter().map(|&(r, _)| r).collect();
        for r in 0..self.dim {
            if !pivot_rows.contains(&r) && !b[r].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rat::zero(); self.count];
        for &(r, c) in &self.elim.pivots {
            x[c] = b[r].clone();
        }
        Some(x)
    }
}

/// One-shot span membership: coefficients `c` with `sum c_i candidate_i =
/// target`, or `None`.
pub fn span_membership(candidates: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    SpanSolver::new(candidates).decompose(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Lcg;
    use crate::scalar::{rat, ratio};

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn one_by_one() {
        let out = solve_linear_system(&m(&[&[2]]), &[rat(1)]);
        assert_eq!(out, SolveOutcome::Solution(vec![ratio(1, 2)]));
    }

    #[test]
    fn identity_returns_rhs() {
        let rhs = vec![rat(3), rat(-7), ratio(5, 3)];
        let out = solve_linear_system(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), &rhs);
        assert_eq!(out, SolveOutcome::Solution(rhs));
    }

    #[test]
    fn contradictory_rows() {
        let out = solve_linear_system(&m(&[&[1, 1], &[1, 1]]), &[rat(0), rat(1)]);
        assert_eq!(out, SolveOutcome::Inconsistent);
    }

    #[test]
    fn random_solves_reproduce_rhs() {
        let mut rng = Lcg::new(0xda7a);
        for _ in 0..100 {
            let rows = rng.int_between(1, 5) as usize;
            let cols = rng.int_between(1, 5) as usize;
            let mat = QMatrix::from_rows(
                (0..rows)
                    .map(|_| (0..cols).map(|_| rat(rng.int_between(-5, 5))).collect())
                    .collect(),
            );
            // build a consistent rhs from a known x
            let x: Vec<Rat> = (0..cols).map(|_| rat(rng.int_between(-5, 5))).collect();
            let rhs = mat.mul_vec(&x);
            match solve_linear_system(&mat, &rhs) {
                SolveOutcome::Solution(sol) => assert_eq!(mat.mul_vec(&sol), rhs),
                SolveOutcome::Inconsistent => panic!("consistent system reported inconsistent"),
            }
        }
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace_basis(&m(&[&[0, 0], &[0, 0]])).len(), 2);
        assert_eq!(nullspace_basis(&m(&[&[1, 0], &[0, 1]])).len(), 0);
        let ns = nullspace_basis(&m(&[&[1, 1]]));
        assert_eq!(ns.len(), 1);
        // proportional to (1, -1)
        assert_eq!(ns[0][0], -ns[0][1].clone());
    }

    #[test]
    fn nullspace_vectors_annihilated_and_counted() {
        let mut rng = Lcg::new(0xbead);
        for _ in 0..50 {
            let rows = rng.int_between(1, 4) as usize;
            let cols = rng.int_between(1, 5) as usize;
            let mat = QMatrix::from_rows(
                (0..rows)
                    .map(|_| (0..cols).map(|_| rat(rng.int_between(-3, 3))).collect())
                    .collect(),
            );
            let ns = nullspace_basis(&mat);
            assert_eq!(ns.len(), cols - mat.rank());
            for v in &ns {
                assert!(mat.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn span_membership_cases() {
        let c1 = vec![rat(1), rat(0), rat(0)];
        let c2 = vec![rat(0), rat(1), rat(0)];
        // target = candidate 1
        assert_eq!(
            span_membership(&[c1.clone(), c2.clone()], &c1),
            Some(vec![rat(1), rat(0)])
        );
        // zero target
        assert_eq!(
            span_membership(&[c1.clone(), c2.clone()], &[rat(0), rat(0), rat(0)]),
            Some(vec![rat(0), rat(0)])
        );
        // outside the span of two independent vectors in 3-space
        assert_eq!(
            span_membership(&[c1, c2], &[rat(0), rat(0), rat(1)]),
            None
        );
    }
}
