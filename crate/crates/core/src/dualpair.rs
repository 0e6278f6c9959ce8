//! Realizations of the dual-pair homomorphisms L and R into the Weyl
//! algebra.
//!
//! For (gl_n, gl_k) on the n-by-k variable matrix, the unnormalized maps
//! send the generator matrices to
//!
//! ```text
//! R(E) = X D^t,   L(E') = X^t D,
//! ```
//!
//! and the normalized maps add k/2 I_n and n/2 I_k respectively.
//!
//! For (o_N, sp_2k) on the N-by-k variable matrix, with P = [X D] and
//! P* = [D^t; -X^t],
//!
//! ```text
//! R(F) = P P* + k I_N,   L(F') = P^t (P*)^t + (N/2) I_2k,
//! ```
//!
//! which is the one (normalized) form the maps take for this pair.

use crate::linalg::SpanSolver;
use crate::matrix::OpMatrix;
use crate::scalar::{ratio, Rat};
use crate::uea::{LieAlgebraSpec, UEAElement};
use crate::weyl::{Shape, WeylElement, WeylMonomial};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairKind {
    /// (gl_n, gl_k)
    GlGl,
    /// (o_N, sp_2k)
    OSp,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Normalization {
    Normalized,
    Unnormalized,
}

impl Normalization {
    pub fn as_str(&self) -> &'static str {
        match self {
            Normalization::Normalized => "normalized",
            Normalization::Unnormalized => "unnormalized",
        }
    }
}

#[derive(Debug, Error)]
pub enum PairError {
    #[error("sizes must be positive (got large={large}, k={k})")]
    NonpositiveSize { large: u32, k: u32 },
    #[error("the o-sp pair is only realized in normalized form")]
    UnnormalizedOSp,
}

/// A constructed dual pair: parameters plus the realized generator
/// matrices. Immutable after construction.
#[derive(Debug)]
pub struct DualPairContext {
    kind: PairKind,
    /// n for gl-gl, N for o-sp
    large: u32,
    k: u32,
    normalization: Normalization,
    shape: Shape,
    large_alg: Arc<LieAlgebraSpec>,
    /// gl_k for the gl-gl pair; the o-sp small side has no structure table
    small_alg: Option<Arc<LieAlgebraSpec>>,
    r_image: OpMatrix<WeylElement>,
    l_image: OpMatrix<WeylElement>,
    /// o-sp block matrices P, P^t, P*, (P*)^t, J; None for gl-gl
    blocks: Option<OspBlocks>,
    stable_range: bool,
}

#[derive(Debug)]
pub struct OspBlocks {
    pub p: OpMatrix<WeylElement>,
    pub p_t: OpMatrix<WeylElement>,
    pub p_star: OpMatrix<WeylElement>,
    pub p_star_t: OpMatrix<WeylElement>,
    pub j: OpMatrix<WeylElement>,
}

impl DualPairContext {
    pub fn gl_gl(n: u32, k: u32, normalization: Normalization) -> Result<Self, PairError> {
        if n < 1 || k < 1 {
            return Err(PairError::NonpositiveSize { large: n, k });
        }
        let shape = Shape::new(n, k);
        let x = |i, a| WeylElement::x(shape, i, a);
        let d = |i, a| WeylElement::d(shape, i, a);
        let normalized = normalization == Normalization::Normalized;

        // R(E)_{ij} = sum_a x_{ia} d_{ja}  (+ k/2 on the diagonal)
        let r_image = OpMatrix::from_fn(n as usize, n as usize, |i0, j0| {
            let (i, j) = (i0 as u32 + 1, j0 as u32 + 1);
            let mut e = WeylElement::zero(shape);
            for a in 1..=k {
                e = e.add(&x(i, a).mul(&d(j, a)));
            }
            if normalized && i == j {
                e = e.add_scalar(&ratio(k as i64, 2));
            }
            e
        });
        // L(E')_{ab} = sum_i x_{ia} d_{ib}  (+ n/2 on the diagonal)
        let l_image = OpMatrix::from_fn(k as usize, k as usize, |a0, b0| {
            let (a, b) = (a0 as u32 + 1, b0 as u32 + 1);
            let mut e = WeylElement::zero(shape);
            for i in 1..=n {
                e = e.add(&x(i, a).mul(&d(i, b)));
            }
            if normalized && a == b {
                e = e.add_scalar(&ratio(n as i64, 2));
            }
            e
        });

        Ok(DualPairContext {
            kind: PairKind::GlGl,
            large: n,
            k,
            normalization,
            shape,
            large_alg: LieAlgebraSpec::gl(n),
            small_alg: Some(LieAlgebraSpec::gl(k)),
            r_image,
            l_image,
            blocks: None,
            stable_range: n >= 2 * k,
        })
    }

    pub fn o_sp(big_n: u32, k: u32) -> Result<Self, PairError> {
        if big_n < 2 || k < 1 {
            return Err(PairError::NonpositiveSize { large: big_n, k });
        }
        let shape = Shape::new(big_n, k);
        let n = big_n as usize;
        let x = |i, a| WeylElement::x(shape, i, a);
        let d = |i, a| WeylElement::d(shape, i, a);
        let zero = WeylElement::zero(shape);
        let one = WeylElement::one(shape);

        // P = [X D], N x 2k
        let p = OpMatrix::from_fn(n, 2 * k as usize, |i0, b0| {
            let i = i0 as u32 + 1;
            let b = b0 as u32;
            if b < k {
                x(i, b + 1)
            } else {
                d(i, b - k + 1)
            }
        });
        // P* = [D^t; -X^t], 2k x N
        let p_star = OpMatrix::from_fn(2 * k as usize, n, |b0, j0| {
            let j = j0 as u32 + 1;
            let b = b0 as u32;
            if b < k {
                d(j, b + 1)
            } else {
                x(j, b - k + 1).neg()
            }
        });
        let p_t = p.transpose();
        let p_star_t = p_star.transpose();
        // J = [[0, -I_k], [I_k, 0]]
        let j_mat = OpMatrix::from_fn(2 * k as usize, 2 * k as usize, |a0, b0| {
            let (a, b) = (a0 as u32, b0 as u32);
            if a < k && b == a + k {
                one.neg()
            } else if a >= k && b + k == a {
                one.clone()
            } else {
                zero.clone()
            }
        });

        // R(F) = P P* + k I_N, L(F') = P^t (P*)^t + (N/2) I_2k
        let r_image = p.mul(&p_star).shift_diag(&ratio(k as i64, 1));
        let l_image = p_t
            .mul(&p_star_t)
            .shift_diag(&ratio(big_n as i64, 2));

        Ok(DualPairContext {
            kind: PairKind::OSp,
            large: big_n,
            k,
            normalization: Normalization::Normalized,
            shape,
            large_alg: LieAlgebraSpec::o(big_n),
            small_alg: None,
            r_image,
            l_image,
            blocks: Some(OspBlocks {
                p,
                p_t,
                p_star,
                p_star_t,
                j: j_mat,
            }),
            stable_range: big_n >= 4 * k,
        })
    }

    /// Builds the context named by pair kind, sizes, and normalization.
    pub fn make(
        kind: PairKind,
        large: u32,
        k: u32,
        normalization: Normalization,
    ) -> Result<Self, PairError> {
        match kind {
            PairKind::GlGl => Self::gl_gl(large, k, normalization),
            PairKind::OSp => {
                if normalization == Normalization::Unnormalized {
                    return Err(PairError::UnnormalizedOSp);
                }
                Self::o_sp(large, k)
            }
        }
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    /// n for gl-gl, N for o-sp.
    pub fn large_size(&self) -> u32 {
        self.large
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn large_algebra(&self) -> &Arc<LieAlgebraSpec> {
        &self.large_alg
    }

    pub fn small_algebra(&self) -> Option<&Arc<LieAlgebraSpec>> {
        self.small_alg.as_ref()
    }

    /// R(E) or R(F) as a matrix over the Weyl algebra.
    pub fn r_matrix(&self) -> &OpMatrix<WeylElement> {
        &self.r_image
    }

    /// L(E') or L(F') as a matrix over the Weyl algebra.
    pub fn l_matrix(&self) -> &OpMatrix<WeylElement> {
        &self.l_image
    }

    pub fn blocks(&self) -> Option<&OspBlocks> {
        self.blocks.as_ref()
    }

    /// Whether the pair is in the stable range (n >= 2k, resp. N >= 4k).
    pub fn stable_range(&self) -> bool {
        self.stable_range
    }

    /// Image of one large-algebra basis generator under R.
    pub fn realize_generator(&self, idx: u16) -> WeylElement {
        let (i, j) = self.large_alg.label(idx);
        self.r_image.at(i as usize - 1, j as usize - 1).clone()
    }

    /// Multiplicative substitution of generators by their R-images,
    /// extended over PBW monomials left to right. Well-definedness rests
    /// on the homomorphism property, which `check_structure_closure`
    /// certifies exactly.
    pub fn realize_right(&self, a: &UEAElement) -> WeylElement {
        assert_eq!(
            a.algebra().kind(),
            self.large_alg.kind(),
            "algebra/context mismatch"
        );
        let mut out = WeylElement::zero(self.shape);
        for (word, c) in a.terms() {
            let mut acc = WeylElement::scalar(self.shape, c.clone());
            for &g in word {
                acc = acc.mul(&self.realize_generator(g));
            }
            out = out.add(&acc);
        }
        out
    }

    /// The (a, b) entry of L(E') or L(F'), 1-based.
    pub fn realize_left(&self, a: u32, b: u32) -> WeylElement {
        let rows = self.l_image.rows() as u32;
        assert!(
            1 <= a && a <= rows && 1 <= b && b <= rows,
            "index out of range"
        );
        self.l_image.at(a as usize - 1, b as usize - 1).clone()
    }

    /// Exhaustive exact check that R preserves brackets on generator
    /// pairs, and that the small-side image closes: for gl-gl via the
    /// gl_k structure table, for o-sp via span membership of commutators
    /// in span{L(F')_{ef}} + constants.
    pub fn check_structure_closure(&self) -> ClosureReport {
        let mut large_failures = Vec::new();
        let dim = self.large_alg.dim();
        for x in 0..dim as u16 {
            for y in 0..dim as u16 {
                let lhs = self
                    .realize_generator(x)
                    .commutator(&self.realize_generator(y));
                let mut rhs = WeylElement::zero(self.shape);
                for (g, c) in self.large_alg.bracket(x, y) {
                    rhs = rhs.add(&self.realize_generator(*g).scale(c));
                }
                let diff = lhs.sub(&rhs);
                if !diff.is_zero() {
                    large_failures.push(GeneratorPairFailure {
                        x,
                        y,
                        witness: diff.to_string(),
                    });
                }
            }
        }
        let small = match (&self.small_alg, self.kind) {
            (Some(small), _) => {
                let mut failures = Vec::new();
                let dim = small.dim();
                for x in 0..dim as u16 {
                    for y in 0..dim as u16 {
                        let (xa, xb) = small.label(x);
                        let (ya, yb) = small.label(y);
                        let lhs = self
                            .realize_left(xa, xb)
                            .commutator(&self.realize_left(ya, yb));
                        let mut rhs = WeylElement::zero(self.shape);
                        for (g, c) in small.bracket(x, y) {
                            let (ga, gb) = small.label(*g);
                            rhs = rhs.add(&self.realize_left(ga, gb).scale(c));
                        }
                        let diff = lhs.sub(&rhs);
                        if !diff.is_zero() {
                            failures.push(GeneratorPairFailure {
                                x,
                                y,
                                witness: diff.to_string(),
                            });
                        }
                    }
                }
                SmallSideClosure::Bracket { failures }
            }
            (None, _) => self.small_span_closure(),
        };
        ClosureReport {
            large_failures,
            small,
        }
    }

    /// o-sp small side: each commutator of L(F') entries must decompose
    /// exactly over the entries plus the unit.
    fn small_span_closure(&self) -> SmallSideClosure {
        let two_k = self.l_image.rows();
        let mut candidates: Vec<WeylElement> = Vec::with_capacity(two_k * two_k + 1);
        for a in 0..two_k {
            for b in 0..two_k {
                candidates.push(self.l_image.at(a, b).clone());
            }
        }
        candidates.push(WeylElement::one(self.shape));

        let mut commutators = Vec::new();
        for a in 0..two_k {
            for b in 0..two_k {
                for c in 0..two_k {
                    for e in 0..two_k {
                        commutators.push((
                            (a, b, c, e),
                            self.l_image.at(a, b).commutator(self.l_image.at(c, e)),
                        ));
                    }
                }
            }
        }

        // common monomial index over candidates and targets
        let mut index: BTreeMap<WeylMonomial, usize> = BTreeMap::new();
        for e in candidates.iter().chain(commutators.iter().map(|(_, e)| e)) {
            for (m, _) in e.terms() {
                let next = index.len();
                index.entry(m.clone()).or_insert(next);
            }
        }
        let dim = index.len();
        let vectorize = |e: &WeylElement| -> Vec<Rat> {
            let mut v = vec![Rat::zero(); dim];
            for (m, c) in e.terms() {
                v[index[m]] = c.clone();
            }
            v
        };
        let solver = SpanSolver::new(&candidates.iter().map(&vectorize).collect::<Vec<_>>());
        let mut certificates = Vec::new();
        let mut failures = Vec::new();
        for ((a, b, c, e), comm) in commutators {
            match solver.decompose(&vectorize(&comm)) {
                Some(coeffs) => certificates.push(SpanCertificate {
                    pair: (a, b, c, e),
                    coefficients: coeffs,
                }),
                None => failures.push(GeneratorPairFailure {
                    x: (a * two_k + b) as u16,
                    y: (c * two_k + e) as u16,
                    witness: comm.to_string(),
                }),
            }
        }
        SmallSideClosure::Span {
            certificates,
            failures,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorPairFailure {
    pub x: u16,
    pub y: u16,
    pub witness: String,
}

/// Coefficients expressing [L_{ab}, L_{cd}] over the L entries followed by
/// the unit, in row-major candidate order.
#[derive(Clone, Debug)]
pub struct SpanCertificate {
    pub pair: (usize, usize, usize, usize),
    pub coefficients: Vec<Rat>,
}

pub enum SmallSideClosure {
    Bracket {
        failures: Vec<GeneratorPairFailure>,
    },
    Span {
        certificates: Vec<SpanCertificate>,
        failures: Vec<GeneratorPairFailure>,
    },
}

pub struct ClosureReport {
    pub large_failures: Vec<GeneratorPairFailure>,
    pub small: SmallSideClosure,
}

impl ClosureReport {
    pub fn all_pass(&self) -> bool {
        self.large_failures.is_empty()
            && match &self.small {
                SmallSideClosure::Bracket { failures } => failures.is_empty(),
                SmallSideClosure::Span { failures, .. } => failures.is_empty(),
            }
    }

    pub fn first_witness(&self) -> Option<&str> {
        self.large_failures
            .first()
            .map(|f| f.witness.as_str())
            .or(match &self.small {
                SmallSideClosure::Bracket { failures } => {
                    failures.first().map(|f| f.witness.as_str())
                }
                SmallSideClosure::Span { failures, .. } => {
                    failures.first().map(|f| f.witness.as_str())
                }
            })
    }
}
