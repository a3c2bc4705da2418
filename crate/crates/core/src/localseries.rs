//! Truncated power-series solutions with one symbolic initial coordinate.
//!
//! The solution through `(a, c)` (x-axis mode) or `(c, a)` (y-axis mode) is
//! expanded as `x(t) = sum a_i t^i`, `y(t) = sum b_i t^i` with every
//! coefficient a polynomial in the symbol `a`. The fixed coordinate `c` is an
//! optional rational offset, zero by default.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{BiPoly, Rational, UPoly};
use crate::sysparse::SystemSpec;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 6;

/// Which initial coordinate is symbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    /// Initial point `(a0, c)`.
    #[serde(rename = "x")]
    XAxis,
    /// Initial point `(c, b0)`.
    #[serde(rename = "y")]
    YAxis,
}

impl Axis {
    /// Base point for the symbolic value `a` and offset `c`.
    pub fn base_point(self, a: &Rational, c: &Rational) -> (Rational, Rational) {
        match self {
            Axis::XAxis => (a.clone(), c.clone()),
            Axis::YAxis => (c.clone(), a.clone()),
        }
    }

    /// Name of the symbolic coordinate.
    pub fn symbol(self) -> &'static str {
        match self {
            Axis::XAxis => "a0",
            Axis::YAxis => "b0",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series order must be at least 4, got {0}")]
    OrderTooSmall(usize),
}

/// Truncated series solution; coefficients are polynomials in the symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSolution {
    pub axis: Axis,
    pub offset: Rational,
    pub n: usize,
    pub xcoeffs: Vec<UPoly>,
    pub ycoeffs: Vec<UPoly>,
}

/// Truncated product of two series with polynomial coefficients.
pub(crate) fn series_mul(a: &[UPoly], b: &[UPoly], n: usize) -> Vec<UPoly> {
    let mut out = vec![UPoly::zero(); n + 1];
    for (i, ai) in a.iter().enumerate().take(n + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

fn series_powers(s: &[UPoly], max: usize, n: usize) -> Vec<Vec<UPoly>> {
    let mut one = vec![UPoly::zero(); n + 1];
    one[0] = UPoly::one();
    let mut out = vec![one];
    for k in 0..max {
        let next = series_mul(&out[k], s, n);
        out.push(next);
    }
    out
}

/// Substitutes two series into a bivariate polynomial, truncating at `t^n`.
pub(crate) fn compose_series(p: &BiPoly, xs: &[UPoly], ys: &[UPoly], n: usize) -> Vec<UPoly> {
    use crate::exactalg::Var;
    let dx = p.degree_in(Var::First).unwrap_or(0) as usize;
    let dy = p.degree_in(Var::Second).unwrap_or(0) as usize;
    let px = series_powers(xs, dx, n);
    let py = series_powers(ys, dy, n);
    let mut out = vec![UPoly::zero(); n + 1];
    for (&(i, j), c) in p.terms() {
        let prod = series_mul(&px[i as usize], &py[j as usize], n);
        for (k, v) in prod.iter().enumerate() {
            out[k] = out[k].add(&v.scale(c));
        }
    }
    out
}

fn solve_from(sys: &SystemSpec, x0: UPoly, y0: UPoly, n: usize) -> (Vec<UPoly>, Vec<UPoly>) {
    let mut xs = vec![x0];
    let mut ys = vec![y0];
    for k in 0..n {
        // coefficient of t^k in P(x, y) only needs terms up to t^k
        let pk = compose_series(&sys.p, &xs, &ys, k);
        let qk = compose_series(&sys.q, &xs, &ys, k);
        let inv = Rational::new(1.into(), ((k + 1) as i64).into());
        xs.push(pk[k].scale(&inv));
        ys.push(qk[k].scale(&inv));
    }
    (xs, ys)
}

/// Order-`n` series through `(a0, offset)` or `(offset, b0)` with `a0`/`b0`
/// symbolic.
pub fn solve_series(sys: &SystemSpec, axis: Axis, n: usize) -> Result<SeriesSolution, SeriesError> {
    solve_series_offset(sys, axis, &Rational::zero(), n)
}

pub fn solve_series_offset(
    sys: &SystemSpec,
    axis: Axis,
    offset: &Rational,
    n: usize,
) -> Result<SeriesSolution, SeriesError> {
    if n < 4 {
        return Err(SeriesError::OrderTooSmall(n));
    }
    let sym = UPoly::x();
    let fixed = UPoly::constant(offset.clone());
    let (x0, y0) = match axis {
        Axis::XAxis => (sym, fixed),
        Axis::YAxis => (fixed, sym),
    };
    let (xcoeffs, ycoeffs) = solve_from(sys, x0, y0, n);
    Ok(SeriesSolution {
        axis,
        offset: offset.clone(),
        n,
        xcoeffs,
        ycoeffs,
    })
}

/// Series through a fully numeric initial point; coefficients are constants.
pub fn solve_series_numeric(sys: &SystemSpec, start: (&Rational, &Rational), n: usize) -> (Vec<Rational>, Vec<Rational>) {
    let (xs, ys) = solve_from(
        sys,
        UPoly::constant(start.0.clone()),
        UPoly::constant(start.1.clone()),
        n,
    );
    (
        xs.iter().map(|p| p.coeff(0)).collect(),
        ys.iter().map(|p| p.coeff(0)).collect(),
    )
}

impl SeriesSolution {
    /// Coefficients of `t^0 .. t^(n-1)` in `x' - P(x, y)` and `y' - Q(x, y)`.
    pub fn residual(&self, sys: &SystemSpec) -> (Vec<UPoly>, Vec<UPoly>) {
        let n = self.n;
        let p = compose_series(&sys.p, &self.xcoeffs, &self.ycoeffs, n);
        let q = compose_series(&sys.q, &self.xcoeffs, &self.ycoeffs, n);
        let deriv = |s: &[UPoly], k: usize| s[k + 1].scale(&Rational::from_integer(((k + 1) as i64).into()));
        let rx = (0..n).map(|k| deriv(&self.xcoeffs, k).sub(&p[k])).collect();
        let ry = (0..n).map(|k| deriv(&self.ycoeffs, k).sub(&q[k])).collect();
        (rx, ry)
    }

    /// Coefficients after substituting a value for the symbol.
    pub fn specialize(&self, value: &Rational) -> (Vec<Rational>, Vec<Rational>) {
        (
            self.xcoeffs.iter().map(|p| p.eval(value)).collect(),
            self.ycoeffs.iter().map(|p| p.eval(value)).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use crate::sysparse::parse_system;
    use std::collections::BTreeMap;

    fn sys(text: &str) -> SystemSpec {
        parse_system(text, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn harmonic_cosine_sine() {
        let s = solve_series(&sys("dx = y; dy = -x"), Axis::XAxis, 6).unwrap();
        let a = |c: Rational, k| UPoly::monomial(c, k);
        assert_eq!(s.xcoeffs[0], a(int(1), 1));
        assert_eq!(s.xcoeffs[2], a(rat(-1, 2), 1));
        assert_eq!(s.xcoeffs[4], a(rat(1, 24), 1));
        assert_eq!(s.ycoeffs[1], a(int(-1), 1));
        assert_eq!(s.ycoeffs[3], a(rat(1, 6), 1));
        assert!(s.xcoeffs[1].is_zero() && s.xcoeffs[3].is_zero());
    }

    #[test]
    fn residual_vanishes() {
        let sy = sys("dx = y - (x^3/3 - x); dy = -x");
        let s = solve_series(&sy, Axis::XAxis, 7).unwrap();
        let (rx, ry) = s.residual(&sy);
        assert!(rx.iter().chain(ry.iter()).all(|c| c.is_zero()));
    }

    #[test]
    fn order_precondition() {
        assert_eq!(
            solve_series(&sys("dx = y; dy = -x"), Axis::XAxis, 3).unwrap_err(),
            SeriesError::OrderTooSmall(3)
        );
    }
}
