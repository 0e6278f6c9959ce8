//! Partitions and nilpotent orbits, the column-prepend lifting of orbit
//! closures, small-orbit classification, and vanishing checks of symbol
//! ideals on orbit-closure points.

use crate::linalg::{nullspace_basis, solve_linear_system, QMatrix, SolveOutcome};
use crate::multi_index::MultiIndex;
use crate::poly::{CommutativePolynomial, VarSet};
use crate::rng::Lcg;
use crate::scalar::{rat, Rat};
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AlgebraType {
    Gl,
    O,
    Sp,
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraType::Gl => write!(f, "gl"),
            AlgebraType::O => write!(f, "o"),
            AlgebraType::Sp => write!(f, "sp"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("parts must be positive and non-increasing")]
    MalformedPartition,
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("rank {rank} out of range 1..={max}")]
    RankOutOfRange { rank: u32, max: u32 },
    #[error("stable range violated: large size {large} < 2 * {small}")]
    StableRange { large: u32, small: u32 },
}

/// Jordan-type partition of a nilpotent orbit, validated against the
/// parity condition of its algebra type: symplectic orbits need odd parts
/// with even multiplicity, orthogonal orbits need even parts with even
/// multiplicity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    parts: Vec<u32>,
    typ: AlgebraType,
}

impl Partition {
    pub fn new(parts: Vec<u32>, typ: AlgebraType) -> Result<Self, GeometryError> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(GeometryError::MalformedPartition);
        }
        let p = Partition { parts, typ };
        p.check_parity()?;
        Ok(p)
    }

    /// The zero orbit of an algebra with defining module dimension `size`.
    pub fn zero_orbit(typ: AlgebraType, size: u32) -> Result<Self, GeometryError> {
        Self::new(vec![1; size as usize], typ)
    }

    fn check_parity(&self) -> Result<(), GeometryError> {
        let odd_multiplicity = |pred: fn(u32) -> bool| -> Option<u32> {
            let distinct: BTreeSet<u32> =
                self.parts.iter().copied().filter(|&p| pred(p)).collect();
            distinct
                .into_iter()
                .find(|&p| self.parts.iter().filter(|&&q| q == p).count() % 2 != 0)
        };
        match self.typ {
            AlgebraType::Gl => Ok(()),
            AlgebraType::Sp => match odd_multiplicity(|p| p % 2 == 1) {
                Some(p) => Err(GeometryError::Parity(format!(
                    "odd part {p} has odd multiplicity in a symplectic partition"
                ))),
                None => Ok(()),
            },
            AlgebraType::O => match odd_multiplicity(|p| p % 2 == 0) {
                Some(p) => Err(GeometryError::Parity(format!(
                    "even part {p} has odd multiplicity in an orthogonal partition"
                ))),
                None => Ok(()),
            },
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn algebra_type(&self) -> AlgebraType {
        self.typ
    }

    /// Ambient size: sum of parts.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn largest_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Length of the second column of the Young diagram, i.e. the rank of
    /// any matrix in the orbit.
    pub fn rank(&self) -> u32 {
        self.parts.iter().filter(|&&p| p >= 2).count() as u32
    }

    /// Conjugate diagram (column lengths).
    pub fn transpose_parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut col = 1;
        loop {
            let len = self.parts.iter().filter(|&&p| p >= col).count() as u32;
            if len == 0 {
                return out;
            }
            out.push(len);
            col += 1;
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.parts
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// A nilpotent orbit named by its partition, with the small-orbit data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitLabel {
    pub partition: Partition,
    pub rank: u32,
    pub small: bool,
}

impl OrbitLabel {
    pub fn from_partition(partition: Partition) -> Self {
        let rank = partition.rank();
        let small = partition.largest_part() <= 2;
        OrbitLabel {
            partition,
            rank,
            small,
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} rank={}{}",
            self.partition,
            self.rank,
            if self.small { " small" } else { "" }
        )
    }
}

/// Kraft-Procesi lifting on diagrams: prepend one column of length
/// `large_size - |partition|`. Small-side gl orbits lift into gl, sp
/// orbits into o. Requires the stable range `large_size >= 2 |partition|`.
pub fn kp_lift(
    small_side: &Partition,
    large_size: u32,
) -> Result<Partition, GeometryError> {
    let small_size = small_side.size();
    if large_size < 2 * small_size {
        return Err(GeometryError::StableRange {
            large: large_size,
            small: small_size,
        });
    }
    let large_type = match small_side.algebra_type() {
        AlgebraType::Gl => AlgebraType::Gl,
        AlgebraType::Sp => AlgebraType::O,
        AlgebraType::O => AlgebraType::Sp,
    };
    let new_col = large_size - small_size;
    let mut cols = small_side.transpose_parts();
    debug_assert!(cols.first().copied().unwrap_or(0) <= new_col);
    cols.insert(0, new_col);
    // transpose back to row lengths
    let lifted = Partition {
        parts: cols.clone(),
        typ: large_type,
    }
    .transpose_parts();
    Partition::new(lifted, large_type)
}

/// The small orbit of the given rank: partition (2^rank, 1^(size-2rank)).
/// Orthogonal small orbits must have even rank.
pub fn small_orbit(typ: AlgebraType, size: u32, rank: u32) -> Result<OrbitLabel, GeometryError> {
    if rank < 1 || 2 * rank > size {
        return Err(GeometryError::RankOutOfRange {
            rank,
            max: size / 2,
        });
    }
    if typ == AlgebraType::O && rank % 2 != 0 {
        return Err(GeometryError::Parity(format!(
            "small orthogonal orbits have even rank, got {rank}"
        )));
    }
    let mut parts = vec![2u32; rank as usize];
    parts.extend(std::iter::repeat(1).take((size - 2 * rank) as usize));
    Ok(OrbitLabel::from_partition(Partition::new(parts, typ)?))
}

/// Closure order on small orbits of a common algebra: the rank-r closure
/// contains the rank-r' orbit exactly when r' <= r.
pub fn closure_contains(outer: &OrbitLabel, inner: &OrbitLabel) -> bool {
    assert!(outer.small && inner.small, "chain order is for small orbits");
    assert_eq!(
        outer.partition.algebra_type(),
        inner.partition.algebra_type()
    );
    assert_eq!(outer.partition.size(), inner.partition.size());
    inner.rank <= outer.rank
}

/// Outcome of the pointwise gl vanishing check.
pub struct GlVanishingReport {
    pub trials: u32,
    /// (trial, symbol index, value) for every nonzero evaluation
    pub failures: Vec<(u32, usize, Rat)>,
    /// some symbol evaluated nonzero at the unconstrained control point
    pub negative_control_nonzero: bool,
}

impl GlVanishingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.negative_control_nonzero
    }
}

/// Evaluates the generator symbols at `trials` seeded points M = A B^t
/// with B^t A = 0 (A of full rank k) and asserts exact vanishing, plus a
/// negative control with unconstrained B.
///
/// Entries of A are small integers (|entry| <= 10), rank k enforced by
/// rejection; columns of B are small random combinations of a nullspace
/// basis of A^t.
pub fn vanishing_check_gl(
    n: u32,
    k: u32,
    symbols: &[CommutativePolynomial],
    trials: u32,
    seed: u64,
) -> GlVanishingReport {
    for s in symbols {
        assert_eq!(
            s.var_set(),
            VarSet::MatrixGl { n },
            "symbols must live in the n^2 matrix variables"
        );
    }
    let mut rng = Lcg::new(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let a = random_full_rank(&mut rng, n as usize, k as usize);
        let ns = nullspace_basis(&a.transpose());
        debug_assert_eq!(ns.len(), (n - k) as usize);
        // B columns: random small-integer combinations of the nullspace basis
        let mut b_cols: Vec<Vec<Rat>> = Vec::new();
        for _ in 0..k {
            let mut col = vec![Rat::zero(); n as usize];
            for basis_vec in &ns {
                let c = rat(rng.int_between(-10, 10));
                for (i, v) in basis_vec.iter().enumerate() {
                    col[i] += v * &c;
                }
            }
            b_cols.push(col);
        }
        let point = product_point(&a, &b_cols, n);
        for (idx, s) in symbols.iter().enumerate() {
            let v = s.evaluate(&point);
            if !v.is_zero() {
                failures.push((trial, idx, v));
            }
        }
    }
    // negative control: generic B, expect some symbol nonzero
    let a = random_full_rank(&mut rng, n as usize, k as usize);
    let b_cols: Vec<Vec<Rat>> = (0..k as usize)
        .map(|_| {
            (0..n as usize)
                .map(|_| rat(rng.int_between(-10, 10)))
                .collect()
        })
        .collect();
    let point = product_point(&a, &b_cols, n);
    let negative_control_nonzero = symbols.iter().any(|s| !s.evaluate(&point).is_zero());
    GlVanishingReport {
        trials,
        failures,
        negative_control_nonzero,
    }
}

fn random_full_rank(rng: &mut Lcg, n: usize, k: usize) -> QMatrix {
    loop {
        let m = QMatrix::from_rows(
            (0..n)
                .map(|_| (0..k).map(|_| rat(rng.int_between(-10, 10))).collect())
                .collect(),
        );
        if m.rank() == k {
            return m;
        }
    }
}

/// Row-major point M = A B^t with B given by columns.
fn product_point(a: &QMatrix, b_cols: &[Vec<Rat>], n: u32) -> Vec<Rat> {
    let k = b_cols.len();
    let mut point = Vec::with_capacity((n * n) as usize);
    for i in 0..n as usize {
        for j in 0..n as usize {
            let mut acc = Rat::zero();
            for (c, col) in b_cols.iter().enumerate().take(k) {
                acc += &a[(i, c)] * &col[j];
            }
            point.push(acc);
        }
    }
    point
}

/// Names of the constraint matrices whose entries generate the o-sp
/// vanishing ideal.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConstraintMatrix {
    XtX,
    XtY,
    YtX,
    YtY,
}

impl fmt::Display for ConstraintMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintMatrix::XtX => write!(f, "XtX"),
            ConstraintMatrix::XtY => write!(f, "XtY"),
            ConstraintMatrix::YtX => write!(f, "YtX"),
            ConstraintMatrix::YtY => write!(f, "YtY"),
        }
    }
}

/// A factorization certificate for one symbol under M = X Y^t - Y X^t.
pub enum SpoCertificate {
    /// The substituted polynomial is the zero polynomial outright (the
    /// rank bound needs no constraints).
    IdenticallyZero,
    /// symbol = sum of cofactor * constraint-entry products, verified by
    /// exact re-expansion.
    Combination(Vec<(ConstraintMatrix, u32, u32, CommutativePolynomial)>),
    /// No certificate found; carries the uncertified remainder.
    Failed(CommutativePolynomial),
}

pub struct SpoVanishingReport {
    pub certificates: Vec<SpoCertificate>,
}

impl SpoVanishingReport {
    pub fn all_certified(&self) -> bool {
        self.certificates
            .iter()
            .all(|c| !matches!(c, SpoCertificate::Failed(_)))
    }
}

/// Formal o-sp vanishing check: substitutes M_{ij} by the entries of
/// X Y^t - Y X^t for symbolic N-by-k blocks X, Y and certifies each
/// symbol as a combination of entries of X^t X, X^t Y, Y^t X, Y^t Y.
pub fn vanishing_check_spo(
    big_n: u32,
    k: u32,
    symbols: &[CommutativePolynomial],
) -> SpoVanishingReport {
    for s in symbols {
        assert_eq!(
            s.var_set(),
            VarSet::MatrixSkew { n: big_n },
            "symbols must live in the skew matrix variables"
        );
    }
    let xy = VarSet::XY { n: big_n, k };
    let block = big_n * k;
    let xv = |i: u32, b: u32| CommutativePolynomial::var(xy, (i - 1) * k + (b - 1));
    let yv = |i: u32, b: u32| CommutativePolynomial::var(xy, block + (i - 1) * k + (b - 1));

    // M_{ij} = sum_b X_{ib} Y_{jb} - Y_{ib} X_{jb}
    let m_sub = |id: u32| -> CommutativePolynomial {
        let (i, j) = crate::poly::skew_pos(big_n, id);
        let mut acc = CommutativePolynomial::zero(xy);
        for b in 1..=k {
            acc = acc.add(&(&xv(i, b) * &yv(j, b)));
            acc = acc.sub(&(&yv(i, b) * &xv(j, b)));
        }
        acc
    };

    // constraint entries, deduplicated by polynomial equality
    let mut constraints: Vec<(ConstraintMatrix, u32, u32, CommutativePolynomial)> = Vec::new();
    {
        let mut push = |m: ConstraintMatrix, a: u32, b: u32, p: CommutativePolynomial| {
            if !constraints.iter().any(|(_, _, _, q)| *q == p) {
                constraints.push((m, a, b, p));
            }
        };
        for a in 1..=k {
            for b in 1..=k {
                let mut xtx = CommutativePolynomial::zero(xy);
                let mut xty = CommutativePolynomial::zero(xy);
                let mut ytx = CommutativePolynomial::zero(xy);
                let mut yty = CommutativePolynomial::zero(xy);
                for i in 1..=big_n {
                    xtx = xtx.add(&(&xv(i, a) * &xv(i, b)));
                    xty = xty.add(&(&xv(i, a) * &yv(i, b)));
                    ytx = ytx.add(&(&yv(i, a) * &xv(i, b)));
                    yty = yty.add(&(&yv(i, a) * &yv(i, b)));
                }
                push(ConstraintMatrix::XtX, a, b, xtx);
                push(ConstraintMatrix::XtY, a, b, xty);
                push(ConstraintMatrix::YtX, a, b, ytx);
                push(ConstraintMatrix::YtY, a, b, yty);
            }
        }
    }

    let mut certificates = Vec::new();
    for s in symbols {
        let expanded = s.substitute(xy, m_sub);
        if expanded.is_zero() {
            certificates.push(SpoCertificate::IdenticallyZero);
            continue;
        }
        certificates.push(certify_combination(&expanded, &constraints, xy));
    }
    SpoVanishingReport { certificates }
}

/// Finds cofactors q_m with `target = sum q_m * c_m` by exact linear
/// solving over a restricted cofactor-monomial basis (divisors of the
/// target support by constraint-term monomials), then verifies the
/// combination by re-expansion.
fn certify_combination(
    target: &CommutativePolynomial,
    constraints: &[(ConstraintMatrix, u32, u32, CommutativePolynomial)],
    xy: VarSet,
) -> SpoCertificate {
    // candidate cofactor monomials per constraint
    let mut unknowns: Vec<(usize, MultiIndex)> = Vec::new();
    for (ci, (_, _, _, cpoly)) in constraints.iter().enumerate() {
        let mut seen: BTreeSet<MultiIndex> = BTreeSet::new();
        for (tmono, _) in target.terms() {
            for (cmono, _) in cpoly.terms() {
                if let Some(q) = tmono.try_div(cmono) {
                    seen.insert(q);
                }
            }
        }
        for q in seen {
            unknowns.push((ci, q));
        }
    }
    if unknowns.is_empty() {
        return SpoCertificate::Failed(target.clone());
    }
    // equation rows: every monomial in the union of supports
    let mut rows: BTreeSet<MultiIndex> = target.terms().map(|(m, _)| m.clone()).collect();
    for (ci, q) in &unknowns {
        for (cmono, _) in constraints[*ci].3.terms() {
            rows.insert(q.mul(cmono));
        }
    }
    let rows: Vec<MultiIndex> = rows.into_iter().collect();
    let row_index = |m: &MultiIndex| rows.binary_search(m).expect("row present");
    let mut mat = QMatrix::zero(rows.len(), unknowns.len());
    for (u, (ci, q)) in unknowns.iter().enumerate() {
        for (cmono, coeff) in constraints[*ci].3.terms() {
            let r = row_index(&q.mul(cmono));
            let v = mat[(r, u)].clone() + coeff;
            mat[(r, u)] = v;
        }
    }
    let mut rhs = vec![Rat::zero(); rows.len()];
    for (m, c) in target.terms() {
        rhs[row_index(m)] = c.clone();
    }
    match solve_linear_system(&mat, &rhs) {
        SolveOutcome::Inconsistent => SpoCertificate::Failed(target.clone()),
        SolveOutcome::Solution(x) => {
            // assemble cofactor polynomials and close the loop
            let mut cofactors: Vec<CommutativePolynomial> =
                vec![CommutativePolynomial::zero(xy); constraints.len()];
            for (u, (ci, q)) in unknowns.iter().enumerate() {
                if !x[u].is_zero() {
                    cofactors[*ci].add_term(q.clone(), x[u].clone());
                }
            }
            let mut recomputed = CommutativePolynomial::zero(xy);
            for (ci, q) in cofactors.iter().enumerate() {
                recomputed = recomputed.add(&q.mul(&constraints[ci].3));
            }
            if &recomputed != target {
                return SpoCertificate::Failed(target.sub(&recomputed));
            }
            SpoCertificate::Combination(
                cofactors
                    .into_iter()
                    .enumerate()
                    .filter(|(_, q)| !q.is_zero())
                    .map(|(ci, q)| {
                        let (m, a, b, _) = &constraints[ci];
                        (*m, *a, *b, q)
                    })
                    .collect(),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::skew_id;

    #[test]
    fn kp_lift_examples() {
        // zero orbit of gl_2 into gl_5 -> (2,2,1)
        let zero_gl2 = Partition::zero_orbit(AlgebraType::Gl, 2).unwrap();
        let lifted = kp_lift(&zero_gl2, 5).unwrap();
        assert_eq!(lifted.parts(), &[2, 2, 1]);
        assert_eq!(lifted.algebra_type(), AlgebraType::Gl);

        // zero orbit of sp_2 into o_6 -> (2,2,1,1), rank 2
        let zero_sp2 = Partition::zero_orbit(AlgebraType::Sp, 2).unwrap();
        let lifted = kp_lift(&zero_sp2, 6).unwrap();
        assert_eq!(lifted.parts(), &[2, 2, 1, 1]);
        assert_eq!(lifted.algebra_type(), AlgebraType::O);
        assert_eq!(lifted.rank(), 2);

        // lifts of zero are always small
        for (size, big) in [(1u32, 4u32), (2, 4), (3, 7), (4, 9)] {
            let z = Partition::zero_orbit(AlgebraType::Gl, size).unwrap();
            assert!(kp_lift(&z, big).unwrap().largest_part() <= 2);
        }

        // stable-range violation
        let z = Partition::zero_orbit(AlgebraType::Gl, 3).unwrap();
        assert!(matches!(
            kp_lift(&z, 5),
            Err(GeometryError::StableRange { .. })
        ));
    }

    #[test]
    fn small_orbit_classification() {
        let o = small_orbit(AlgebraType::Gl, 5, 2).unwrap();
        assert_eq!(o.partition.parts(), &[2, 2, 1]);
        assert!(o.small);
        assert_eq!(o.rank, 2);

        // parity rejection for odd orthogonal rank
        assert!(matches!(
            small_orbit(AlgebraType::O, 8, 3),
            Err(GeometryError::Parity(_))
        ));
        assert!(small_orbit(AlgebraType::O, 8, 2).is_ok());

        // chain order
        let big = small_orbit(AlgebraType::Gl, 4, 2).unwrap();
        let little = small_orbit(AlgebraType::Gl, 4, 1).unwrap();
        assert!(closure_contains(&big, &little));
        assert!(!closure_contains(&little, &big));
    }

    #[test]
    fn partition_parity_validation() {
        // sp: odd parts must pair up
        assert!(Partition::new(vec![3, 3, 2], AlgebraType::Sp).is_ok());
        assert!(Partition::new(vec![3, 2, 1], AlgebraType::Sp).is_err());
        // o: even parts must pair up
        assert!(Partition::new(vec![2, 2, 1], AlgebraType::O).is_ok());
        assert!(Partition::new(vec![2, 1, 1], AlgebraType::O).is_err());
        // malformed
        assert!(Partition::new(vec![1, 2], AlgebraType::Gl).is_err());
        assert!(Partition::new(vec![2, 0], AlgebraType::Gl).is_err());
    }

    #[test]
    fn gl_vanishing_trace_and_square() {
        // tr M and entries of M^2 vanish on M = A B^t with B^t A = 0
        let n = 3u32;
        let vs = VarSet::MatrixGl { n };
        let mv = |i: u32, j: u32| CommutativePolynomial::var(vs, (i - 1) * n + (j - 1));
        let mut symbols = Vec::new();
        let mut tr = CommutativePolynomial::zero(vs);
        for i in 1..=n {
            tr = tr.add(&mv(i, i));
        }
        symbols.push(tr);
        for i in 1..=n {
            for j in 1..=n {
                let mut sq = CommutativePolynomial::zero(vs);
                for l in 1..=n {
                    sq = sq.add(&(&mv(i, l) * &mv(l, j)));
                }
                symbols.push(sq);
            }
        }
        let report = vanishing_check_gl(n, 1, &symbols, 25, 12345);
        assert!(report.passed());
        assert!(report.failures.is_empty());
        assert!(report.negative_control_nonzero);
    }

    #[test]
    fn spo_m_squared_certificate() {
        // entries of M^2 in skew variables get a middle-factor certificate
        let n = 4u32;
        let k = 1u32;
        let vs = VarSet::MatrixSkew { n };
        let mv = |i: u32, j: u32| -> CommutativePolynomial {
            use std::cmp::Ordering;
            match i.cmp(&j) {
                Ordering::Less => CommutativePolynomial::var(vs, skew_id(n, i, j)),
                Ordering::Greater => CommutativePolynomial::var(vs, skew_id(n, j, i))
                    .scale(&rat(-1)),
                Ordering::Equal => CommutativePolynomial::zero(vs),
            }
        };
        let mut symbols = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let mut sq = CommutativePolynomial::zero(vs);
                for l in 1..=n {
                    sq = sq.add(&(&mv(i, l) * &mv(l, j)));
                }
                symbols.push(sq);
            }
        }
        let report = vanishing_check_spo(n, k, &symbols);
        assert!(report.all_certified());
        assert!(report
            .certificates
            .iter()
            .any(|c| matches!(c, SpoCertificate::Combination(_))));
    }

    #[test]
    fn spo_pfaffian_symbols_identically_zero() {
        // classical pfaffians of order k+1 vanish under the rank bound
        let n = 4u32;
        let vs = VarSet::MatrixSkew { n };
        let mv = |i: u32, j: u32| CommutativePolynomial::var(vs, skew_id(n, i, j));
        let pf = (&mv(1, 2) * &mv(3, 4))
            .sub(&(&mv(1, 3) * &mv(2, 4)))
            .add(&(&mv(1, 4) * &mv(2, 3)));
        let report = vanishing_check_spo(n, 1, &[pf]);
        assert!(matches!(
            report.certificates[0],
            SpoCertificate::IdenticallyZero
        ));
        // the zero polynomial passes vacuously
        let report = vanishing_check_spo(n, 1, &[CommutativePolynomial::zero(vs)]);
        assert!(report.all_certified());
    }
}
