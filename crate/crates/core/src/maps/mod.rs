//! Piecewise-affine maps between tagged sums and their verification.

mod affine;
mod piecewise;
mod verify;

pub use affine::AffineMap;
pub use piecewise::{Piece, PiecewiseMap};
pub use verify::{verify_bijection, BijectionCertificate, Check, CheckResult, Failure};

use num_traits::{Signed, Zero};

use crate::rat::Rat;
use crate::sets::render_term;

/// Renders `Σ row[i]·names[i] + t`, e.g. `x - 2*y + 1/2`.
pub fn render_expr(row: &[Rat], t: &Rat, names: &[String]) -> String {
    let mut s = String::new();
    let mut push = |mag: String, neg: bool| {
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        s.push_str(&mag);
    };
    for (a, n) in row.iter().zip(names) {
        if !a.is_zero() {
            push(render_term(&a.abs(), n), a.is_negative());
        }
    }
    if !t.is_zero() {
        push(t.abs().to_string(), t.is_negative());
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
