//! The distinguished ad-invariant elements: quantum minors of U(gl_n)
//! (row and column forms, with a uniform twist parameter), quantum
//! pfaffians of U(o_N), and the transfer generator sets built from them.
//!
//! Row-form minor over index sequences I, J of common length m:
//!
//! ```text
//! E_IJ(s) = sum_sigma sgn(sigma)
//!           (E + s + m - 1)_{i_sigma(1) j_1} ... (E + s)_{i_sigma(m) j_m}
//! ```
//!
//! with scalars meaning multiples of the identity added to diagonal
//! entries. The column form shifts 0..m-1 left to right and permutes the
//! column indices; both expansions agree, which the tests check exactly.
//!
//! The quantum pfaffian over an index sequence of even length 2k+2:
//!
//! ```text
//! Pf_I = 1/(2^(k+1) (k+1)!) sum_sigma sgn(sigma)
//!        F_{i_sigma(1) i_sigma(2)} ... F_{i_sigma(2k+1) i_sigma(2k+2)}
//! ```

use crate::combinatorics::{factorial, for_each_permutation_signed, increasing_sequences};
use crate::dualpair::Normalization;
use crate::scalar::{rat, ratio, Rat};
use crate::uea::{AlgebraKind, LieAlgebraSpec, UEAElement};
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SequenceRole {
    Row,
    Column,
    Pfaffian,
}

/// Ordered list of 1-based generator indices with a role tag.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IndexSequence {
    entries: Vec<u32>,
    role: SequenceRole,
}

#[derive(Debug, Error)]
pub enum TransferError {
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: u32, max: u32 },
    #[error("row and column sequences have different lengths ({rows} vs {cols})")]
    LengthMismatch { rows: usize, cols: usize },
    #[error("empty index sequence")]
    Empty,
    #[error("pfaffian sequence must have even length, got {len}")]
    OddLength { len: usize },
    #[error("sizes must be positive")]
    NonpositiveSize,
}

impl IndexSequence {
    pub fn new(entries: Vec<u32>, role: SequenceRole, max: u32) -> Result<Self, TransferError> {
        if entries.is_empty() {
            return Err(TransferError::Empty);
        }
        if let Some(&bad) = entries.iter().find(|&&i| i < 1 || i > max) {
            return Err(TransferError::IndexOutOfRange { index: bad, max });
        }
        if role == SequenceRole::Pfaffian && entries.len() % 2 != 0 {
            return Err(TransferError::OddLength {
                len: entries.len(),
            });
        }
        Ok(IndexSequence { entries, role })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn role(&self) -> SequenceRole {
        self.role
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for IndexSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.entries
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MinorForm {
    Row,
    Column,
}

/// The twisted quantum minor E_IJ(shift) in U(gl_n).
pub fn quantum_minor(
    alg: &Arc<LieAlgebraSpec>,
    rows: &IndexSequence,
    cols: &IndexSequence,
    shift: &Rat,
    form: MinorForm,
) -> Result<UEAElement, TransferError> {
    let n = match alg.kind() {
        AlgebraKind::Gl { n } => n,
        AlgebraKind::O { .. } => panic!("quantum minors live in U(gl_n)"),
    };
    if rows.len() != cols.len() {
        return Err(TransferError::LengthMismatch {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    for &i in rows.entries().iter().chain(cols.entries()) {
        if i < 1 || i > n {
            return Err(TransferError::IndexOutOfRange { index: i, max: n });
        }
    }
    let m = rows.len();
    // shifted entry (E + c)_{ij}
    let entry = |i: u32, j: u32, c: Rat| {
        let mut e = UEAElement::gen_entry(alg, i, j);
        if i == j {
            e = e.add_scalar(&c);
        }
        e
    };
    let mut acc = UEAElement::zero(alg);
    for_each_permutation_signed(m, |perm, sign| {
        let mut prod = UEAElement::scalar(alg, rat(sign));
        for p in 0..m {
            let factor = match form {
                // position p (0-based) carries shift s + m - 1 - p
                MinorForm::Row => entry(
                    rows.entries()[perm[p]],
                    cols.entries()[p],
                    shift + rat((m - 1 - p) as i64),
                ),
                // column type: factor p carries shift s + p
                MinorForm::Column => entry(
                    rows.entries()[p],
                    cols.entries()[perm[p]],
                    shift + rat(p as i64),
                ),
            };
            prod = prod.mul(&factor);
        }
        acc = acc.add(&prod);
    });
    Ok(acc)
}

/// The quantum pfaffian Pf_I of order |I|/2 in U(o_N).
pub fn quantum_pfaffian(
    alg: &Arc<LieAlgebraSpec>,
    idx: &IndexSequence,
) -> Result<UEAElement, TransferError> {
    let n = match alg.kind() {
        AlgebraKind::O { n } => n,
        AlgebraKind::Gl { .. } => panic!("quantum pfaffians live in U(o_N)"),
    };
    if idx.len() % 2 != 0 {
        return Err(TransferError::OddLength { len: idx.len() });
    }
    for &i in idx.entries() {
        if i < 1 || i > n {
            return Err(TransferError::IndexOutOfRange { index: i, max: n });
        }
    }
    let len = idx.len();
    let half = (len / 2) as u32;
    let mut acc = UEAElement::zero(alg);
    for_each_permutation_signed(len, |perm, sign| {
        let mut prod = UEAElement::scalar(alg, rat(sign));
        for r in 0..len / 2 {
            let a = idx.entries()[perm[2 * r]];
            let b = idx.entries()[perm[2 * r + 1]];
            prod = prod.mul(&UEAElement::gen_entry(alg, a, b));
        }
        acc = acc.add(&prod);
    });
    // 1 / (2^half * half!)
    let denom = BigInt::from(2).pow(half) * factorial(half);
    Ok(acc.scale(&Rat::new(BigInt::one(), denom)))
}

/// One labeled element of a generator set.
pub struct NamedElement {
    pub name: String,
    pub element: UEAElement,
}

/// Parameters a generator set was built from.
#[derive(Clone, Debug)]
pub enum GeneratorParams {
    Gl {
        n: u32,
        k: u32,
        /// t for the unnormalized set, alpha for the normalized one
        character: Rat,
        normalization: Normalization,
        /// quadratic polynomial used, as coefficients [c0, c1, 1]
        quadratic: [Rat; 3],
        minor_shift: Rat,
    },
    Spo {
        big_n: u32,
        k: u32,
        quadratic: [Rat; 3],
    },
}

pub struct GeneratorSet {
    pub label: String,
    pub params: GeneratorParams,
    pub elements: Vec<NamedElement>,
    pub stable_range: bool,
    pub algebra: Arc<LieAlgebraSpec>,
}

impl GeneratorSet {
    pub fn elements(&self) -> impl Iterator<Item = &UEAElement> {
        self.elements.iter().map(|e| &e.element)
    }
}

/// Generator matrix of the large algebra as an operator matrix.
pub fn generator_matrix(alg: &Arc<LieAlgebraSpec>) -> crate::matrix::OpMatrix<UEAElement> {
    let n = match alg.kind() {
        AlgebraKind::Gl { n } | AlgebraKind::O { n } => n as usize,
    };
    crate::matrix::OpMatrix::from_fn(n, n, |i, j| {
        UEAElement::gen_entry(alg, i as u32 + 1, j as u32 + 1)
    })
}

/// Transfer generator set for (gl_n, gl_k).
///
/// Unnormalized (character E' -> -t d_ab): the trace element tr E + k t,
/// the entries of p(E) with p(u) = u^2 + (k - n + t) u, and all order
/// (k+1) quantum minors with shift 0 over strictly increasing sequences.
///
/// Normalized (character E' -> alpha d_ab): tr E - k alpha, entries of
/// p(E) with p(u) = (u - k/2)(u - (n - k + alpha)/2) unless an explicit
/// quadratic is supplied, and the twisted minors E_IJ(-k/2).
pub fn transfer_generators_gl(
    n: u32,
    k: u32,
    character: &Rat,
    normalization: Normalization,
    quadratic_override: Option<[Rat; 3]>,
) -> Result<GeneratorSet, TransferError> {
    if n < 1 || k < 1 {
        return Err(TransferError::NonpositiveSize);
    }
    let alg = LieAlgebraSpec::gl(n);
    let e_mat = generator_matrix(&alg);
    let mut elements = Vec::new();

    let (constant, quadratic, minor_shift) = match normalization {
        Normalization::Unnormalized => {
            let t = character.clone();
            // tr E + k t; p(u) = u^2 + (k - n + t) u
            let c1 = rat(k as i64) - rat(n as i64) + &t;
            (
                rat(k as i64) * &t,
                [rat(0), c1, rat(1)],
                rat(0),
            )
        }
        Normalization::Normalized => {
            let alpha = character.clone();
            // tr E - k alpha; p(u) = (u - k/2)(u - (n - k + alpha)/2)
            let r1 = ratio(k as i64, 2);
            let r2 = (rat(n as i64) - rat(k as i64) + &alpha) / rat(2);
            let quadratic = quadratic_override.unwrap_or([&r1 * &r2, -(&r1 + &r2), rat(1)]);
            (
                -(rat(k as i64) * &alpha),
                quadratic,
                -ratio(k as i64, 2),
            )
        }
    };

    elements.push(NamedElement {
        name: "trace".to_string(),
        element: e_mat.trace().add_scalar(&constant),
    });
    let p_e = e_mat.poly_eval(&quadratic);
    for i in 0..n as usize {
        for j in 0..n as usize {
            elements.push(NamedElement {
                name: format!("p(E)[{},{}]", i + 1, j + 1),
                element: p_e.at(i, j).clone(),
            });
        }
    }
    let order = k as usize + 1;
    for rows in increasing_sequences(n, order) {
        for cols in increasing_sequences(n, order) {
            let ri = IndexSequence::new(rows.clone(), SequenceRole::Row, n)?;
            let ci = IndexSequence::new(cols.clone(), SequenceRole::Column, n)?;
            let minor = quantum_minor(&alg, &ri, &ci, &minor_shift, MinorForm::Row)?;
            elements.push(NamedElement {
                name: format!("minor I={ri} J={ci}"),
                element: minor,
            });
        }
    }

    Ok(GeneratorSet {
        label: format!(
            "transfer generators gl, n={n}, k={k}, {}",
            normalization.as_str()
        ),
        params: GeneratorParams::Gl {
            n,
            k,
            character: character.clone(),
            normalization,
            quadratic,
            minor_shift,
        },
        elements,
        stable_range: n >= 2 * k,
        algebra: alg,
    })
}

/// Transfer generator set for (o_N, sp_2k): the entries of p(F) with
/// p(u) = (u - k)(u - (N/2 - k - 1)) and all order (k+1) quantum
/// pfaffians over strictly increasing sequences of length 2k+2.
pub fn transfer_generators_spo(big_n: u32, k: u32) -> Result<GeneratorSet, TransferError> {
    if big_n < 2 || k < 1 {
        return Err(TransferError::NonpositiveSize);
    }
    let alg = LieAlgebraSpec::o(big_n);
    let f_mat = generator_matrix(&alg);
    // p(u) = (u - k)(u - (N/2 - k - 1)) = u^2 - (N/2 - 1) u + k (N/2 - k - 1)
    let r1 = rat(k as i64);
    let r2 = ratio(big_n as i64, 2) - rat(k as i64) - rat(1);
    let quadratic = [&r1 * &r2, -(&r1 + &r2), rat(1)];
    let p_f = f_mat.poly_eval(&quadratic);

    let mut elements = Vec::new();
    for i in 0..big_n as usize {
        for j in 0..big_n as usize {
            elements.push(NamedElement {
                name: format!("p(F)[{},{}]", i + 1, j + 1),
                element: p_f.at(i, j).clone(),
            });
        }
    }
    let len = 2 * k as usize + 2;
    for idx in increasing_sequences(big_n, len) {
        let seq = IndexSequence::new(idx, SequenceRole::Pfaffian, big_n)?;
        let pf = quantum_pfaffian(&alg, &seq)?;
        elements.push(NamedElement {
            name: format!("Pf {seq}"),
            element: pf,
        });
    }

    Ok(GeneratorSet {
        label: format!("transfer generators o-sp, N={big_n}, k={k}"),
        params: GeneratorParams::Spo {
            big_n,
            k,
            quadratic,
        },
        elements,
        stable_range: big_n >= 4 * k,
        algebra: alg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualpair::DualPairContext;
    use crate::poly::{skew_id, CommutativePolynomial, VarSet};

    fn seq(entries: &[u32], role: SequenceRole, max: u32) -> IndexSequence {
        IndexSequence::new(entries.to_vec(), role, max).unwrap()
    }

    #[test]
    fn order_one_minor_is_generator() {
        let gl3 = LieAlgebraSpec::gl(3);
        for i in 1..=3 {
            for j in 1..=3 {
                let m = quantum_minor(
                    &gl3,
                    &seq(&[i], SequenceRole::Row, 3),
                    &seq(&[j], SequenceRole::Column, 3),
                    &rat(0),
                    MinorForm::Row,
                )
                .unwrap();
                assert_eq!(m, UEAElement::gen_entry(&gl3, i, j));
            }
        }
    }

    #[test]
    fn order_two_minor_gl2() {
        // (E + 1)_{sigma(1) 1} E_{sigma(2) 2} summed: (E11+1)E22 - E21 E12
        let gl2 = LieAlgebraSpec::gl(2);
        let e = |i, j| UEAElement::gen_entry(&gl2, i, j);
        let m = quantum_minor(
            &gl2,
            &seq(&[1, 2], SequenceRole::Row, 2),
            &seq(&[1, 2], SequenceRole::Column, 2),
            &rat(0),
            MinorForm::Row,
        )
        .unwrap();
        let expected = e(1, 1)
            .add_scalar(&rat(1))
            .mul(&e(2, 2))
            .sub(&e(2, 1).mul(&e(1, 2)));
        assert_eq!(m, expected);
    }

    #[test]
    fn row_equals_column_small() {
        let gl3 = LieAlgebraSpec::gl(3);
        for order in 1..=3usize {
            for rows in increasing_sequences(3, order) {
                for cols in increasing_sequences(3, order) {
                    let ri = seq(&rows, SequenceRole::Row, 3);
                    let ci = seq(&cols, SequenceRole::Column, 3);
                    for shift in [rat(0), ratio(-1, 2)] {
                        let row =
                            quantum_minor(&gl3, &ri, &ci, &shift, MinorForm::Row).unwrap();
                        let col =
                            quantum_minor(&gl3, &ri, &ci, &shift, MinorForm::Column).unwrap();
                        assert_eq!(row, col, "row/col differ at I={ri} J={ci}");
                    }
                }
            }
        }
    }

    #[test]
    fn minor_antisymmetry_in_rows_and_columns() {
        let gl3 = LieAlgebraSpec::gl(3);
        let shift = rat(0);
        let base = quantum_minor(
            &gl3,
            &seq(&[1, 2], SequenceRole::Row, 3),
            &seq(&[1, 3], SequenceRole::Column, 3),
            &shift,
            MinorForm::Row,
        )
        .unwrap();
        let row_swapped = quantum_minor(
            &gl3,
            &seq(&[2, 1], SequenceRole::Row, 3),
            &seq(&[1, 3], SequenceRole::Column, 3),
            &shift,
            MinorForm::Row,
        )
        .unwrap();
        let col_swapped = quantum_minor(
            &gl3,
            &seq(&[1, 2], SequenceRole::Row, 3),
            &seq(&[3, 1], SequenceRole::Column, 3),
            &shift,
            MinorForm::Row,
        )
        .unwrap();
        assert_eq!(row_swapped, base.neg());
        assert_eq!(col_swapped, base.neg());
        // repeated row index kills the minor
        let repeated = quantum_minor(
            &gl3,
            &seq(&[2, 2], SequenceRole::Row, 3),
            &seq(&[1, 3], SequenceRole::Column, 3),
            &shift,
            MinorForm::Row,
        )
        .unwrap();
        assert!(repeated.is_zero());
    }

    #[test]
    fn minor_symbol_is_classical_minor() {
        let gl3 = LieAlgebraSpec::gl(3);
        let m = quantum_minor(
            &gl3,
            &seq(&[1, 2], SequenceRole::Row, 3),
            &seq(&[2, 3], SequenceRole::Column, 3),
            &rat(0),
            MinorForm::Row,
        )
        .unwrap();
        // ordinary minor: M12 M23 - M22 M13  (rows {1,2}, cols {2,3})
        let vs = VarSet::MatrixGl { n: 3 };
        let mv = |i: u32, j: u32| CommutativePolynomial::var(vs, (i - 1) * 3 + (j - 1));
        let classical = (&mv(1, 2) * &mv(2, 3)).sub(&(&mv(2, 2) * &mv(1, 3)));
        assert_eq!(m.symbol(), classical);
    }

    #[test]
    fn pfaffian_symbol_and_antisymmetry() {
        let o4 = LieAlgebraSpec::o(4);
        let pf = quantum_pfaffian(&o4, &seq(&[1, 2, 3, 4], SequenceRole::Pfaffian, 4)).unwrap();
        // classical pfaffian M12 M34 - M13 M24 + M14 M23
        let vs = VarSet::MatrixSkew { n: 4 };
        let mv = |i: u32, j: u32| CommutativePolynomial::var(vs, skew_id(4, i, j));
        let classical = (&mv(1, 2) * &mv(3, 4))
            .sub(&(&mv(1, 3) * &mv(2, 4)))
            .add(&(&mv(1, 4) * &mv(2, 3)));
        assert_eq!(pf.symbol(), classical);
        // swapping two indices flips the sign
        let swapped =
            quantum_pfaffian(&o4, &seq(&[2, 1, 3, 4], SequenceRole::Pfaffian, 4)).unwrap();
        assert_eq!(swapped, pf.neg());
        // repeated index kills it
        let repeated =
            quantum_pfaffian(&o4, &seq(&[1, 1, 3, 4], SequenceRole::Pfaffian, 4)).unwrap();
        assert!(repeated.is_zero());
    }

    #[test]
    fn pfaffian_realizes_to_zero_o4_sp2() {
        let ctx = DualPairContext::o_sp(4, 1).unwrap();
        let o4 = ctx.large_algebra();
        let pf = quantum_pfaffian(o4, &seq(&[1, 2, 3, 4], SequenceRole::Pfaffian, 4)).unwrap();
        assert!(ctx.realize_right(&pf).is_zero());
    }

    #[test]
    fn gl_generator_set_contents() {
        let set = transfer_generators_gl(
            2,
            1,
            &rat(0),
            Normalization::Unnormalized,
            None,
        )
        .unwrap();
        // trace + 4 quadratic entries + 1 order-2 minor
        assert_eq!(set.elements.len(), 1 + 4 + 1);
        assert!(set.stable_range);
        // trace element is E11 + E22 (t = 0)
        let gl2 = LieAlgebraSpec::gl(2);
        let expected =
            UEAElement::gen_entry(&gl2, 1, 1).add(&UEAElement::gen_entry(&gl2, 2, 2));
        assert_eq!(set.elements[0].element, expected);
        // p(E) = E^2 - E at n=2, k=1, t=0
        match &set.params {
            GeneratorParams::Gl { quadratic, .. } => {
                assert_eq!(quadratic, &[rat(0), rat(-1), rat(1)]);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn spo_generator_set_contents() {
        let set = transfer_generators_spo(4, 1).unwrap();
        // 16 quadratic entries + 1 pfaffian
        assert_eq!(set.elements.len(), 16 + 1);
        match &set.params {
            GeneratorParams::Spo { quadratic, .. } => {
                // p(u) = (u-1)(u-0) = u^2 - u
                assert_eq!(quadratic, &[rat(0), rat(-1), rat(1)]);
            }
            _ => unreachable!(),
        }
    }
}
