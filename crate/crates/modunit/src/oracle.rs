//! Direct lattice-sum evaluation of `℘(z; Zτ + Z)`, independent of any
//! q-expansion.
//!
//! Rows `m` of the lattice are summed for `|m| ≤ M`. Within a row the sum over
//! `n` is taken for `|n| ≤ N` and the remaining tails `Σ_{n>N} 1/(a+n)²` are
//! added by Euler–Maclaurin. Each completed row decays like `e^{−2π|m| Im τ}`,
//! so the outer cutoff is harmless.

use num_complex::Complex64;

pub const ROWS: i64 = 200;
pub const COLUMNS: i64 = 200;

/// `Σ_{n ≥ N+1} 1/(a+n)²`.
fn row_tail(a: Complex64, n: i64) -> Complex64 {
    let b = a + n as f64;
    let inv = b.inv();
    let inv2 = inv * inv;
    let inv3 = inv2 * inv;
    let inv5 = inv3 * inv2;
    inv + inv2 * 0.5 + inv3 / 6.0 - inv5 / 30.0 - inv2
}

/// `℘(z; Zτ + Z)` with the default cutoffs.
pub fn weierstrass_p(z: Complex64, tau: Complex64) -> Complex64 {
    weierstrass_p_with(z, tau, ROWS, COLUMNS)
}

pub fn weierstrass_p_with(z: Complex64, tau: Complex64, rows: i64, columns: i64) -> Complex64 {
    let mut total = z.powi(-2);
    for m in -rows..=rows {
        let shift = tau * m as f64;
        let w = z - shift;
        let mut row = Complex64::new(0.0, 0.0);
        for n in -columns..=columns {
            let omega = shift + n as f64;
            row += (w - n as f64).powi(-2);
            if m != 0 || n != 0 {
                row -= omega.powi(-2);
            }
        }
        if m == 0 {
            row -= z.powi(-2);
        }
        row += row_tail(-w, columns) + row_tail(w, columns);
        row -= row_tail(shift, columns) + row_tail(-shift, columns);
        total += row;
    }
    total
}

/// `℘_[r;s](τ) = ℘(rτ + s; Zτ + Z)`.
pub fn wp_value(r: f64, s: f64, tau: Complex64) -> Complex64 {
    weierstrass_p(tau * r + s, tau)
}
