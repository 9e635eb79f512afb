//! Canonical text and JSON renderings.
//!
//! Text: terms in increasing degree, `c*L^k` joined by ` + `, negative
//! coefficients written with a binary minus, unit coefficients and `^1`
//! elided. Truncated series carry a trailing `+ O(L^N)`.
//!
//! JSON: `{"coeffs": [...], "order": N}` with `order` null for polynomials.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{LPolynomial, TruncatedLSeries};

fn monomial(abs: &BigInt, k: usize, var: &str) -> String {
    let power = match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    };
    if k == 0 {
        abs.to_string()
    } else if abs.is_one() {
        power
    } else {
        format!("{abs}*{power}")
    }
}

/// Renders the nonzero terms of a dense coefficient list, or `"0"` when none.
pub fn render_terms(coeffs: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = monomial(&c.abs(), k, var);
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn render_series(coeffs: &[BigInt], order: usize, var: &str) -> String {
    let body = render_terms(coeffs, var);
    let tail = match order {
        0 => "O(1)".to_string(),
        1 => format!("O({var})"),
        _ => format!("O({var}^{order})"),
    };
    if body == "0" {
        tail
    } else {
        format!("{body} + {tail}")
    }
}

fn bigint_json(c: &BigInt) -> Value {
    // arbitrary_precision keeps integers of any size exact
    serde_json::from_str(&c.to_string()).expect("integer literal is valid JSON")
}

pub fn coeffs_json(coeffs: &[BigInt]) -> Value {
    Value::Array(coeffs.iter().map(bigint_json).collect())
}

impl LPolynomial {
    pub fn render_in(&self, var: &str) -> String {
        render_terms(self.coeffs(), var)
    }

    pub fn to_json(&self) -> Value {
        json!({ "coeffs": coeffs_json(self.coeffs()), "order": Value::Null })
    }
}

impl TruncatedLSeries {
    pub fn render_in(&self, var: &str) -> String {
        render_series(self.coeffs(), self.order(), var)
    }

    pub fn to_json(&self) -> Value {
        json!({ "coeffs": coeffs_json(self.coeffs()), "order": self.order() })
    }
}
