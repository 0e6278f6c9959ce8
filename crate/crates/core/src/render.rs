//! Shared canonical text rendering.
//!
//! Terms are printed sorted by (total degree descending, dense-lex
//! ascending on the exponent vector), coefficients as reduced rationals,
//! `1` for the unit and `0` for the zero element. This is the exact
//! grammar the expression parser accepts back.

use crate::scalar::Rat;
use num_traits::{One, Signed};

/// Renders one power factor, e.g. `x[1,2]^3`.
pub(crate) fn power(name: &str, exp: u32) -> String {
    if exp == 1 {
        name.to_string()
    } else {
        format!("{name}^{exp}")
    }
}

/// Joins pre-sorted `(monomial, coefficient)` terms. An empty monomial
/// string stands for the constant term.
pub(crate) fn join_terms<I: IntoIterator<Item = (String, Rat)>>(terms: I) -> String {
    let mut out = String::new();
    for (mon, coeff) in terms {
        let neg = coeff.is_negative();
        let abs = coeff.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mon.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mon);
        } else {
            out.push_str(&format!("{abs}*{mon}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
