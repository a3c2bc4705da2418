//! Floating-point cross-checks: orbit integration, numeric limit cycles and
//! dense sign sampling. Nothing here feeds a certificate.

use std::cell::RefCell;
use std::io::Write;
use std::rc::Rc;

use ode_solvers::{Dopri5, OutputType, System, Vector2};
use thiserror::Error;

use crate::conicfit::{Conic, Parametrization};
use crate::exactalg::{rational_to_f64, BiPoly};
use crate::localseries::Axis;
use crate::sysparse::SystemSpec;

pub const DEFAULT_TOL: f64 = 1e-10;
/// Orbits leaving this box are treated as escaping to infinity.
pub const ESCAPE_RADIUS: f64 = 1e6;
const CYCLE_RESIDUAL: f64 = 1e-9;
const CYCLE_TOL: f64 = 1e-12;
const MAX_RETURN_TIME: f64 = 1000.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("step budget exhausted at t = {t}")]
    TooManySteps { t: f64 },
    #[error("orbit left the box of radius {ESCAPE_RADIUS} at t = {t}")]
    Escaped { t: f64 },
    #[error("the orbit did not return to the section")]
    NoReturn,
    #[error("return map iteration did not converge: {0}")]
    NotConverged(String),
    #[error("tolerance must be positive")]
    BadTolerance,
}

/// The vector field with floating-point coefficients.
#[derive(Clone, Debug)]
pub struct FloatField {
    p: Vec<(i32, i32, f64)>,
    q: Vec<(i32, i32, f64)>,
}

fn float_terms(g: &BiPoly) -> Vec<(i32, i32, f64)> {
    g.terms()
        .iter()
        .map(|(&(i, j), c)| (i as i32, j as i32, rational_to_f64(c)))
        .collect()
}

fn eval_terms(t: &[(i32, i32, f64)], x: f64, y: f64) -> f64 {
    t.iter().map(|&(i, j, c)| c * x.powi(i) * y.powi(j)).sum()
}

impl FloatField {
    pub fn new(sys: &SystemSpec) -> Self {
        FloatField {
            p: float_terms(&sys.p),
            q: float_terms(&sys.q),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        (eval_terms(&self.p, x, y), eval_terms(&self.q, x, y))
    }
}

/// A numerically integrated trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct Orbit {
    /// `(t, x, y)` at every accepted step; `t` is the physical time, negative
    /// for backward orbits.
    pub samples: Vec<(f64, f64, f64)>,
    pub accepted_steps: u32,
    pub rejected_steps: u32,
    pub evaluations: u32,
}

impl Orbit {
    pub fn last(&self) -> (f64, f64) {
        let &(_, x, y) = self.samples.last().expect("an orbit has a start point");
        (x, y)
    }
}

/// Writes `orbit,t,x,y` rows with a header, numbering orbits from 0.
pub fn write_csv<W: Write>(orbits: &[Orbit], w: W) -> csv::Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["orbit", "t", "x", "y"])?;
    for (k, o) in orbits.iter().enumerate() {
        for &(t, x, y) in &o.samples {
            wr.serialize((k, t, x, y))?;
        }
    }
    wr.flush()?;
    Ok(())
}

/// Stop condition watched after every accepted step.
#[derive(Clone, Copy, Debug)]
enum Watch {
    Escape,
    Section(Section),
}

#[derive(Default, Debug)]
struct WatchState {
    prev: Option<(f64, f64, f64)>,
    escaped: Option<f64>,
    crossing: Option<(f64, f64, f64)>,
}

struct Flow {
    field: FloatField,
    direction: f64,
    watch: Watch,
    crossing_sign: f64,
    state: Rc<RefCell<WatchState>>,
}

impl System<f64, Vector2<f64>> for Flow {
    fn system(&self, _t: f64, s: &Vector2<f64>, ds: &mut Vector2<f64>) {
        let (p, q) = self.field.eval(s[0], s[1]);
        ds[0] = self.direction * p;
        ds[1] = self.direction * q;
    }

    fn solout(&mut self, t: f64, s: &Vector2<f64>, _ds: &Vector2<f64>) -> bool {
        let mut st = self.state.borrow_mut();
        let (x, y) = (s[0], s[1]);
        if !(x.abs() < ESCAPE_RADIUS && y.abs() < ESCAPE_RADIUS) {
            st.escaped = Some(t);
            return true;
        }
        let prev = st.prev.replace((t, x, y));
        if let (Watch::Section(sec), Some((t0, x0, y0))) = (self.watch, prev) {
            let (a0, c0) = sec.split(x0, y0);
            let (a, c) = sec.split(x, y);
            let crossed = t0 > 0.0 && c0 * self.crossing_sign < 0.0 && c * self.crossing_sign >= 0.0;
            if crossed && sec.sign() * a > 0.0 && sec.sign() * a0 > 0.0 {
                st.crossing = Some((t0, x0, y0));
                return true;
            }
        }
        false
    }
}

fn run(
    flow: Flow,
    start: (f64, f64),
    tmax: f64,
    tol: f64,
) -> Result<(Vec<f64>, Vec<Vector2<f64>>, ode_solvers::dop_shared::Stats), OracleError> {
    if !(tol > 0.0) {
        return Err(OracleError::BadTolerance);
    }
    let mut solver = Dopri5::from_param(
        flow,
        0.0,
        tmax,
        tmax,
        Vector2::new(start.0, start.1),
        tol,
        tol,
        0.9,
        0.04,
        0.2,
        10.0,
        tmax,
        0.0,
        5_000_000,
        1000,
        OutputType::Sparse,
    );
    let stats = solver.integrate().map_err(|e| match e {
        ode_solvers::dop_shared::IntegrationError::StepSizeUnderflow { x } => OracleError::StepUnderflow { t: x },
        ode_solvers::dop_shared::IntegrationError::MaxNumStepReached { x, .. } => OracleError::TooManySteps { t: x },
        _ => OracleError::StepUnderflow { t: f64::NAN },
    })?;
    Ok((solver.x_out().clone(), solver.y_out().clone(), stats))
}

/// Integrates forward (or backward when `reverse`) for time `tmax`.
pub fn integrate_dir(
    sys: &SystemSpec,
    start: (f64, f64),
    tmax: f64,
    tol: f64,
    reverse: bool,
) -> Result<Orbit, OracleError> {
    let state = Rc::new(RefCell::new(WatchState::default()));
    let flow = Flow {
        field: FloatField::new(sys),
        direction: if reverse { -1.0 } else { 1.0 },
        watch: Watch::Escape,
        crossing_sign: 1.0,
        state: state.clone(),
    };
    let (ts, ys, stats) = run(flow, start, tmax, tol)?;
    if let Some(t) = state.borrow().escaped {
        return Err(OracleError::Escaped { t });
    }
    let sgn = if reverse { -1.0 } else { 1.0 };
    Ok(Orbit {
        samples: ts.iter().zip(&ys).map(|(t, s)| (sgn * t, s[0], s[1])).collect(),
        accepted_steps: stats.accepted_steps,
        rejected_steps: stats.rejected_steps,
        evaluations: stats.num_eval,
    })
}

/// Forward orbit from `start` over `[0, tmax]`.
pub fn integrate(sys: &SystemSpec, start: (f64, f64), tmax: f64, tol: f64) -> Result<Orbit, OracleError> {
    integrate_dir(sys, start, tmax, tol, false)
}

/// A half-axis used as a Poincaré section.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Section {
    pub axis: Axis,
    pub positive: bool,
}

impl Section {
    fn sign(self) -> f64 {
        if self.positive {
            1.0
        } else {
            -1.0
        }
    }

    /// Coordinates along the ray and across it.
    fn split(self, x: f64, y: f64) -> (f64, f64) {
        match self.axis {
            Axis::XAxis => (x, y),
            Axis::YAxis => (y, x),
        }
    }

    fn join(self, a: f64, c: f64) -> (f64, f64) {
        match self.axis {
            Axis::XAxis => (a, c),
            Axis::YAxis => (c, a),
        }
    }
}

/// Integrates `(a, t)` against the transverse coordinate `c` to land exactly on the section.
struct ToSection {
    field: FloatField,
    section: Section,
}

impl System<f64, Vector2<f64>> for ToSection {
    fn system(&self, c: f64, s: &Vector2<f64>, ds: &mut Vector2<f64>) {
        let (x, y) = self.section.join(s[0], c);
        let (p, q) = self.field.eval(x, y);
        let (adot, cdot) = self.section.split(p, q);
        ds[0] = adot / cdot;
        ds[1] = 1.0 / cdot;
    }
}

/// One application of the return map: distance along the ray at the next
/// crossing in the same direction, and the elapsed time.
pub fn return_map(sys: &SystemSpec, section: Section, s: f64) -> Result<(f64, f64), OracleError> {
    let field = FloatField::new(sys);
    let (x0, y0) = section.join(section.sign() * s, 0.0);
    let (_, cdot) = {
        let (p, q) = field.eval(x0, y0);
        section.split(p, q)
    };
    if cdot == 0.0 {
        return Err(OracleError::NoReturn);
    }
    let state = Rc::new(RefCell::new(WatchState::default()));
    let flow = Flow {
        field: field.clone(),
        direction: 1.0,
        watch: Watch::Section(section),
        crossing_sign: cdot.signum(),
        state: state.clone(),
    };
    run(flow, (x0, y0), MAX_RETURN_TIME, CYCLE_TOL)?;
    let st = state.borrow();
    if st.escaped.is_some() {
        return Err(OracleError::NoReturn);
    }
    let (t0, x, y) = st.crossing.ok_or(OracleError::NoReturn)?;
    let (a, c) = section.split(x, y);
    let mut henon = Dopri5::from_param(
        ToSection { field, section },
        c,
        0.0,
        -c,
        Vector2::new(a, t0),
        CYCLE_TOL,
        CYCLE_TOL,
        0.9,
        0.04,
        0.2,
        10.0,
        c.abs(),
        0.0,
        100_000,
        1000,
        OutputType::Sparse,
    );
    henon.integrate().map_err(|_| OracleError::NoReturn)?;
    let end = henon.y_out().last().ok_or(OracleError::NoReturn)?;
    Ok((section.sign() * end[0], end[1]))
}

/// A numerically located periodic orbit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CycleEstimate {
    /// Distance from the origin of the crossing with the section ray.
    pub crossing: f64,
    pub period: f64,
    pub residual: f64,
    /// Derivative of the return map at the crossing; below 1 for stable cycles.
    pub multiplier: f64,
    pub iterations: usize,
}

/// Fixed point of the return map by secant iteration started at `guess`.
pub fn find_cycle(sys: &SystemSpec, section: Section, guess: f64) -> Result<CycleEstimate, OracleError> {
    let g = |s: f64| return_map(sys, section, s).map(|(r, t)| (r - s, t));
    let mut s0 = guess;
    let mut s1 = guess * (1.0 - 1e-4);
    let (mut g0, _) = g(s0)?;
    let (mut g1, mut period) = g(s1)?;
    for it in 0..60 {
        if g1.abs() < CYCLE_RESIDUAL {
            let h = 1e-5 * s1.max(1e-3);
            let (gp, _) = g(s1 + h)?;
            let (gm, _) = g(s1 - h)?;
            let slope = (gp - gm) / (2.0 * h);
            if slope.abs() < 1e-6 {
                return Err(OracleError::NotConverged(
                    "the return map is the identity near the guess (no isolated cycle)".into(),
                ));
            }
            return Ok(CycleEstimate {
                crossing: s1,
                period,
                residual: g1.abs(),
                multiplier: 1.0 + slope,
                iterations: it,
            });
        }
        if g1 == g0 {
            return Err(OracleError::NotConverged("flat secant".into()));
        }
        let mut s2 = s1 - g1 * (s1 - s0) / (g1 - g0);
        // damp steps that leave the ray or reach orbits that escape
        let mut next = None;
        for _ in 0..30 {
            if s2 > 0.0 && s2.is_finite() {
                if let Ok(v) = g(s2) {
                    next = Some(v);
                    break;
                }
            }
            s2 = 0.5 * (s1 + s2);
        }
        let Some(v) = next else {
            return Err(OracleError::NotConverged(format!("no admissible step from {s1}")));
        };
        s0 = s1;
        g0 = g1;
        s1 = s2;
        (g1, period) = v;
    }
    Err(OracleError::NotConverged(format!("residual {g1:e} after 60 iterations")))
}

/// Outcome of evaluating the derivative along the flow at many conic points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignSample {
    pub points: usize,
    pub positive: usize,
    pub negative: usize,
    /// Values within rounding error of zero.
    pub near_zero: usize,
    /// Values of the wrong sign beyond rounding error.
    pub strict_violations: usize,
}

/// Evaluates `fdot` in floating point at `n` points of the conic spread
/// over the whole parameter line and counts disagreements with `expected`.
pub fn sample_fdot_signs(sys: &SystemSpec, conic: &Conic, par: &Parametrization, n: usize, expected: i8) -> SignSample {
    let fdot = float_terms(&sys.lie_derivative(&conic.f()));
    let mut out = SignSample {
        points: 0,
        positive: 0,
        negative: 0,
        near_zero: 0,
        strict_violations: 0,
    };
    for k in 0..n {
        let theta = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (k as f64 + 0.5) / n as f64;
        let Some((x, y)) = par.point_f64(theta.tan()) else { continue };
        let v = eval_terms(&fdot, x, y);
        let scale: f64 = fdot
            .iter()
            .map(|&(i, j, c)| (c * x.powi(i) * y.powi(j)).abs())
            .sum::<f64>()
            .max(f64::MIN_POSITIVE);
        out.points += 1;
        if v.abs() <= 1e-9 * scale {
            out.near_zero += 1;
        } else if v > 0.0 {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        if v * f64::from(expected) < -1e-9 * scale {
            out.strict_violations += 1;
        }
    }
    out
}
