//! Gluing a conic to a series solution, conic classification and the
//! rational parametrization by the pencil of lines through the base point.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{
    isolate_real_roots, sign_of, sturm_count, BiPoly, Bound, Isolation, RatFunc, Rational, UPoly,
    Var,
};
use crate::localseries::{series_mul, Axis, SeriesSolution};
use crate::sysparse::ConicForm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConicError {
    #[error("the glued quadratic part vanishes identically")]
    DegenerateFit,
    #[error("series of order {have} is too short, order {need} required")]
    SeriesTooShort { have: usize, need: usize },
    #[error("the glued coefficients have a pole at {0}")]
    SingularParameter(String),
    #[error("the conic is degenerate (line pair, double line or no quadratic part)")]
    DegenerateConic,
    #[error("the base point does not lie on the conic")]
    BasePointNotOnConic,
}

/// Names of the five coefficients of `1 + s1 x + s2 y + s3 x^2 + s4 xy + s5 y^2`.
pub const COEFF_NAMES: [&str; 5] = ["s1", "s2", "s3", "s4", "s5"];

/// Conic family with coefficients in `Q(a0)` produced by gluing.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicFamily {
    pub form: ConicForm,
    pub axis: Axis,
    pub offset: Rational,
    /// `s1 .. s5` as rational functions of the symbolic coordinate.
    pub s: [RatFunc; 5],
    /// `f(x(t), y(t)) = O(t^achieved_order)`.
    pub achieved_order: usize,
    /// True when every available Taylor coefficient vanished, so the true
    /// order may be higher.
    pub order_is_lower_bound: bool,
    /// True when the accepted equations did not determine every unknown;
    /// free unknowns are set to zero.
    pub rank_deficient: bool,
    pub series_order: usize,
}

/// Elimination state: reduced rows `coeffs . s = rhs` with distinct pivots.
struct Echelon {
    rows: Vec<(Vec<RatFunc>, RatFunc, usize)>,
}

enum AddOutcome {
    NewPivot,
    Redundant,
    Inconsistent,
}

impl Echelon {
    fn add(&mut self, mut coeffs: Vec<RatFunc>, mut rhs: RatFunc) -> AddOutcome {
        for (row, r, piv) in &self.rows {
            let c = coeffs[*piv].clone();
            if c.is_zero() {
                continue;
            }
            for (k, v) in row.iter().enumerate() {
                coeffs[k] = coeffs[k].sub(&c.mul(v));
            }
            rhs = rhs.sub(&c.mul(r));
        }
        let piv = match coeffs.iter().position(|c| !c.is_zero()) {
            Some(p) => p,
            None => {
                return if rhs.is_zero() {
                    AddOutcome::Redundant
                } else {
                    AddOutcome::Inconsistent
                }
            }
        };
        let inv = RatFunc::one().div(&coeffs[piv]).expect("nonzero pivot");
        let coeffs: Vec<RatFunc> = coeffs.iter().map(|c| c.mul(&inv)).collect();
        let rhs = rhs.mul(&inv);
        for (row, r, _) in &mut self.rows {
            let c = row[piv].clone();
            if c.is_zero() {
                continue;
            }
            for k in 0..row.len() {
                row[k] = row[k].sub(&c.mul(&coeffs[k]));
            }
            *r = r.sub(&c.mul(&rhs));
        }
        self.rows.push((coeffs, rhs, piv));
        AddOutcome::NewPivot
    }
}

/// Chooses the conic coefficients so that the Taylor coefficients
/// `c0, c1, ...` of `f(x(t), y(t))` vanish in order, stopping at the first
/// equation inconsistent with the earlier ones.
pub fn glue_conic(series: &SeriesSolution, form: ConicForm) -> Result<ConicFamily, ConicError> {
    let n = series.n;
    let unknowns: Vec<usize> = match form {
        ConicForm::Centered => vec![2, 3, 4],
        ConicForm::General => vec![0, 1, 2, 3, 4],
    };
    let need = match form {
        ConicForm::Centered => 3,
        ConicForm::General => 5,
    };
    if n < need {
        return Err(ConicError::SeriesTooShort { have: n, need });
    }
    let xs = &series.xcoeffs;
    let ys = &series.ycoeffs;
    let columns: [Vec<UPoly>; 5] = [
        xs.clone(),
        ys.clone(),
        series_mul(xs, xs, n),
        series_mul(xs, ys, n),
        series_mul(ys, ys, n),
    ];
    let coeff_row = |k: usize| -> (Vec<RatFunc>, RatFunc) {
        let row = unknowns
            .iter()
            .map(|&u| RatFunc::from_poly(columns[u][k].clone()))
            .collect();
        let rhs = if k == 0 { RatFunc::one().neg() } else { RatFunc::zero() };
        (row, rhs)
    };
    let mut ech = Echelon { rows: Vec::new() };
    for k in 0..=n {
        let (row, rhs) = coeff_row(k);
        if let AddOutcome::Inconsistent = ech.add(row, rhs) {
            break;
        }
    }
    let rank_deficient = ech.rows.len() < unknowns.len();
    let mut s: [RatFunc; 5] = std::array::from_fn(|_| RatFunc::zero());
    for (row, rhs, piv) in &ech.rows {
        // free unknowns are zero, so each pivot equals its right-hand side
        debug_assert!(row[*piv] == RatFunc::one());
        s[unknowns[*piv]] = rhs.clone();
    }
    if s[2].is_zero() && s[3].is_zero() && s[4].is_zero() {
        return Err(ConicError::DegenerateFit);
    }
    // achieved order from the actual Taylor coefficients
    let mut order = 0;
    for k in 0..=n {
        let mut c = if k == 0 { RatFunc::one() } else { RatFunc::zero() };
        for (i, col) in columns.iter().enumerate() {
            c = c.add(&s[i].mul(&RatFunc::from_poly(col[k].clone())));
        }
        if !c.is_zero() {
            break;
        }
        order = k + 1;
    }
    Ok(ConicFamily {
        form,
        axis: series.axis,
        offset: series.offset.clone(),
        s,
        achieved_order: order,
        order_is_lower_bound: order == n + 1,
        rank_deficient,
        series_order: n,
    })
}

impl ConicFamily {
    /// The conic at a rational value of the symbolic coordinate.
    pub fn specialize(&self, a: &Rational) -> Result<Conic, ConicError> {
        let mut s: [Rational; 5] = std::array::from_fn(|_| Rational::zero());
        for (i, c) in self.s.iter().enumerate() {
            s[i] = c
                .eval(a)
                .ok_or_else(|| ConicError::SingularParameter(crate::exactalg::rational_string(a)))?;
        }
        let base = self.axis.base_point(a, &self.offset);
        Conic::new(s, base)
    }

    /// Human-readable `f(x, y)` with the symbolic coordinate named `sym`.
    pub fn display_f(&self, sym: &str) -> String {
        let mons = ["x", "y", "x^2", "x*y", "y^2"];
        let mut out = String::from("1");
        for (c, m) in self.s.iter().zip(mons) {
            if c.is_zero() {
                continue;
            }
            out.push_str(&format!(" + ({})*{m}", c.display_in(sym)));
        }
        out
    }

    /// Common denominator of the coefficients (monic), as a polynomial in the symbol.
    pub fn common_denominator(&self) -> UPoly {
        let mut l = UPoly::one();
        for c in &self.s {
            let g = l.gcd(c.den());
            l = l.mul(&c.den().div_rem(&g).0);
        }
        l.monic()
    }
}

/// `f(x, y) = 1 + s1 x + s2 y + s3 x^2 + s4 xy + s5 y^2` with a base point on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    pub s: [Rational; 5],
    pub base: (Rational, Rational),
}

impl Conic {
    pub fn new(s: [Rational; 5], base: (Rational, Rational)) -> Result<Conic, ConicError> {
        let c = Conic { s, base };
        if !c.eval(&c.base.0, &c.base.1).is_zero() {
            return Err(ConicError::BasePointNotOnConic);
        }
        Ok(c)
    }

    pub fn f(&self) -> BiPoly {
        let s = &self.s;
        BiPoly::from_terms([
            ((0, 0), Rational::one()),
            ((1, 0), s[0].clone()),
            ((0, 1), s[1].clone()),
            ((2, 0), s[2].clone()),
            ((1, 1), s[3].clone()),
            ((0, 2), s[4].clone()),
        ])
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let s = &self.s;
        Rational::one()
            + &s[0] * x
            + &s[1] * y
            + &s[2] * x * x
            + &s[3] * x * y
            + &s[4] * y * y
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let s: Vec<f64> = self.s.iter().map(crate::exactalg::rational_to_f64).collect();
        1.0 + s[0] * x + s[1] * y + s[2] * x * x + s[3] * x * y + s[4] * y * y
    }

    /// `s4^2 - 4 s3 s5`: negative for ellipses, zero for parabolas.
    pub fn discriminant(&self) -> Rational {
        let s = &self.s;
        &s[3] * &s[3] - Rational::from_integer(4.into()) * &s[2] * &s[4]
    }

    /// Determinant of the symmetric matrix of the homogenized conic, scaled by 8.
    pub fn projective_determinant(&self) -> Rational {
        let s = &self.s;
        let two = Rational::from_integer(2.into());
        let m = [
            [&two * &s[2], s[3].clone(), s[0].clone()],
            [s[3].clone(), &two * &s[4], s[1].clone()],
            [s[0].clone(), s[1].clone(), two.clone()],
        ];
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn is_degenerate(&self) -> bool {
        let quad_zero = self.s[2].is_zero() && self.s[3].is_zero() && self.s[4].is_zero();
        quad_zero || self.projective_determinant().is_zero()
    }

    /// `v^2 f(u/v, 1/v)`, the conic in the chart `x = u/v, y = 1/v`.
    pub fn to_chart_u2(&self) -> BiPoly {
        let s = &self.s;
        BiPoly::from_terms([
            ((0, 2), Rational::one()),
            ((1, 1), s[0].clone()),
            ((0, 1), s[1].clone()),
            ((2, 0), s[2].clone()),
            ((1, 0), s[3].clone()),
            ((0, 0), s[4].clone()),
        ])
    }

    /// `v^2 f(1/v, u/v)`, the conic in the chart `x = 1/v, y = u/v`.
    pub fn to_chart_u1(&self) -> BiPoly {
        let s = &self.s;
        BiPoly::from_terms([
            ((0, 2), Rational::one()),
            ((0, 1), s[0].clone()),
            ((1, 1), s[1].clone()),
            ((0, 0), s[2].clone()),
            ((1, 0), s[3].clone()),
            ((2, 0), s[4].clone()),
        ])
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConicKind {
    Ellipse,
    Parabola,
    Hyperbola,
    Degenerate,
}

/// Type of a conic read off the denominator of its parametrization.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicClass {
    pub kind: ConicKind,
    /// Real roots of `d(m) = s3 + s4 m + s5 m^2`.
    pub infinity_roots: Isolation,
    /// Multiplicity of the vertical direction `m = infinity` as a root of the
    /// homogenized denominator (`2 - deg d`).
    pub vertical_multiplicity: usize,
    pub discriminant: Rational,
}

/// Pencil denominator `d(m) = s3 + s4 m + s5 m^2`.
pub fn pencil_denominator(conic: &Conic) -> UPoly {
    UPoly::new(vec![conic.s[2].clone(), conic.s[3].clone(), conic.s[4].clone()])
}

/// Classifies by the real roots of the homogenized pencil denominator and
/// cross-checks against the sign of the discriminant.
pub fn classify(conic: &Conic) -> Result<ConicClass, ConicError> {
    if conic.is_degenerate() {
        return Err(ConicError::DegenerateConic);
    }
    let d = pencil_denominator(conic);
    let vertical = 2 - d.deg();
    let iso = isolate_real_roots(&d).expect("d is nonzero for a non-degenerate conic");
    let real_roots: usize = iso.multiplicities().iter().sum::<usize>() + vertical;
    let distinct = iso.len() + usize::from(vertical > 0);
    let kind = match (real_roots, distinct) {
        (0, _) => ConicKind::Ellipse,
        (2, 1) => ConicKind::Parabola,
        (2, 2) => ConicKind::Hyperbola,
        _ => unreachable!("a quadratic form has 0 or 2 real projective roots"),
    };
    let disc = conic.discriminant();
    let by_disc = match sign_of(&disc) {
        -1 => ConicKind::Ellipse,
        0 => ConicKind::Parabola,
        _ => ConicKind::Hyperbola,
    };
    assert_eq!(kind, by_disc, "denominator roots disagree with the discriminant");
    Ok(ConicClass {
        kind,
        infinity_roots: iso,
        vertical_multiplicity: vertical,
        discriminant: disc,
    })
}

/// `m -> (pi1(m) / d(m), pi2(m) / d(m))`, the second intersection of the conic
/// with the line of slope `m` through the base point.
#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization {
    pub pi1: UPoly,
    pub pi2: UPoly,
    pub d: UPoly,
    pub base: (Rational, Rational),
    /// `L(m) = f_x(base) + m f_y(base)`.
    pub tangent: UPoly,
    /// Parameter of the base point; `None` if it is reached at `m = infinity`.
    pub base_param: Option<Rational>,
    /// The point reached by the vertical line, if it lies on the affine curve.
    pub vertical_point: Option<(Rational, Rational)>,
    /// Real roots of `d`, where the construction degenerates.
    pub excluded: Isolation,
}

pub fn parametrize(conic: &Conic) -> Result<Parametrization, ConicError> {
    if conic.is_degenerate() {
        return Err(ConicError::DegenerateConic);
    }
    let (x0, y0) = conic.base.clone();
    if !conic.eval(&x0, &y0).is_zero() {
        return Err(ConicError::BasePointNotOnConic);
    }
    let f = conic.f();
    let fx = f.derivative(Var::First).eval(&x0, &y0);
    let fy = f.derivative(Var::Second).eval(&x0, &y0);
    let d = pencil_denominator(conic);
    let l = UPoly::new(vec![fx.clone(), fy.clone()]);
    let pi1 = d.scale(&x0).sub(&l);
    let pi2 = d.scale(&y0).sub(&l.mul(&UPoly::x()));
    let base_param = (!fy.is_zero()).then(|| -(&fx / &fy));
    let vertical_point = (!conic.s[4].is_zero()).then(|| (x0.clone(), &y0 - &fy / &conic.s[4]));
    let excluded = if d.deg() == 0 {
        Isolation::default()
    } else {
        isolate_real_roots(&d).expect("nonzero")
    };
    let par = Parametrization {
        pi1,
        pi2,
        d,
        base: (x0, y0),
        tangent: l,
        base_param,
        vertical_point,
        excluded,
    };
    if !par.is_regular() {
        return Err(ConicError::DegenerateConic);
    }
    Ok(par)
}

impl Parametrization {
    /// `d^2 f(pi1/d, pi2/d)`, identically zero for a valid parametrization.
    pub fn substitution_residual(&self, conic: &Conic) -> UPoly {
        let s = &conic.s;
        let (p1, p2, d) = (&self.pi1, &self.pi2, &self.d);
        d.mul(d)
            .add(&p1.mul(d).scale(&s[0]))
            .add(&p2.mul(d).scale(&s[1]))
            .add(&p1.mul(p1).scale(&s[2]))
            .add(&p1.mul(p2).scale(&s[3]))
            .add(&p2.mul(p2).scale(&s[4]))
    }

    /// The derivative of `pi/d` vanishes at no real parameter outside the
    /// roots of `d`.
    pub fn is_regular(&self) -> bool {
        let d = &self.d;
        let n1 = self.pi1.derivative().mul(d).sub(&self.pi1.mul(&d.derivative()));
        let n2 = self.pi2.derivative().mul(d).sub(&self.pi2.mul(&d.derivative()));
        if n1.is_zero() && n2.is_zero() {
            return false;
        }
        let mut g = n1.gcd(&n2);
        if g.deg() == 0 {
            return true;
        }
        // discard factors shared with d (points at infinity)
        loop {
            let h = g.gcd(d);
            if h.deg() == 0 {
                break;
            }
            g = g.div_rem(&h).0;
        }
        g.deg() == 0 || sturm_count(&g, &Bound::NegInf, &Bound::PosInf).unwrap_or(1) == 0
    }

    /// The affine point at a rational parameter, `None` at a root of `d`.
    pub fn point(&self, m: &Rational) -> Option<(Rational, Rational)> {
        let dv = self.d.eval(m);
        if dv.is_zero() {
            return None;
        }
        Some((self.pi1.eval(m) / &dv, self.pi2.eval(m) / &dv))
    }

    pub fn point_f64(&self, m: f64) -> Option<(f64, f64)> {
        let dv = self.d.eval_f64(m);
        if dv == 0.0 || !dv.is_finite() {
            return None;
        }
        Some((self.pi1.eval_f64(m) / dv, self.pi2.eval_f64(m) / dv))
    }

    /// Sample points along the conic, in order of increasing parameter, with
    /// parameters spaced geometrically so both bounded and far parts are covered.
    pub fn sample_f64(&self, count: usize, span: f64) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(count + 2);
        for k in 0..count {
            let m = -span + 2.0 * span * (k as f64) / ((count - 1).max(1) as f64);
            if let Some(p) = self.point_f64(m) {
                out.push(p);
            }
        }
        out
    }
}
