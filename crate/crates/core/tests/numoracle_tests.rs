//! Numeric oracle checked against a fixed-step Runge–Kutta integrator and
//! known bounds on the van der Pol cycle.

mod common;

use common::load;
use pbconic::localseries::Axis;
use pbconic::numoracle::{find_cycle, integrate, write_csv, FloatField, Section, DEFAULT_TOL};
use pbconic::sysparse::SystemSpec;

fn rk4_step(f: &FloatField, (x, y): (f64, f64), h: f64) -> (f64, f64) {
    let k1 = f.eval(x, y);
    let k2 = f.eval(x + h / 2.0 * k1.0, y + h / 2.0 * k1.1);
    let k3 = f.eval(x + h / 2.0 * k2.0, y + h / 2.0 * k2.1);
    let k4 = f.eval(x + h * k3.0, y + h * k3.1);
    (x + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0), y + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1))
}

/// Crossings of the positive x-axis after settling for `settle` time units,
/// located by bisection on the last step.
fn rk4_crossings(sys: &SystemSpec, start: (f64, f64), settle: f64, total: f64, h: f64) -> Vec<f64> {
    let f = FloatField::new(sys);
    let mut p = start;
    let mut t = 0.0;
    let mut out = Vec::new();
    while t < total {
        let next = rk4_step(&f, p, h);
        if t > settle && p.0 > 0.0 && p.1 != 0.0 && p.1.signum() != next.1.signum() {
            let (mut lo, mut hi) = (0.0, h);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let q = rk4_step(&f, p, mid);
                if q.1.signum() == p.1.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(rk4_step(&f, p, lo).0);
        }
        p = next;
        t += h;
    }
    out
}

const POSITIVE_X: Section = Section { axis: Axis::XAxis, positive: true };

#[test]
fn van_der_pol_crossing_lies_in_the_analytic_interval() {
    let s = load("vdp", &["e=2"]);
    let c = find_cycle(&s, POSITIVE_X, 2.0).unwrap();
    let r3 = 3f64.sqrt();
    let upper = r3 + r3 / 16.0 - 17.0 / (512.0 * r3) + 1.0 / 1152.0 + 1.0 / 320.0;
    assert!(r3 < c.crossing && c.crossing < upper, "crossing {} outside ({r3}, {upper})", c.crossing);
    assert!(c.multiplier < 1.0, "the van der Pol cycle attracts");
}

#[test]
fn cycle_matches_fixed_step_integration() {
    for (e, start) in [("e=1", (3.0, 0.0)), ("e=2", (0.5, 0.0)), ("e=1/10", (1.0, 0.0))] {
        let s = load("vdp", &[e]);
        let c = find_cycle(&s, POSITIVE_X, 2.0).unwrap();
        let crossings = rk4_crossings(&s, start, 150.0, 200.0, 1e-3);
        assert!(!crossings.is_empty(), "{e}");
        for x in crossings {
            assert!((x - c.crossing).abs() < 1e-5, "{e}: oracle {x}, cycle {}", c.crossing);
        }
    }
    let s = load("vdp", &["e=1"]);
    let c = find_cycle(&s, POSITIVE_X, 3.0).unwrap();
    assert!(3f64.sqrt() < c.crossing && c.crossing < 2.1);
}

#[test]
fn adaptive_orbit_agrees_with_fixed_step_orbit() {
    let s = load("rychkov", &["d=1/10"]);
    let f = FloatField::new(&s);
    let o = integrate(&s, (0.5, 0.0), 10.0, DEFAULT_TOL).unwrap();
    let &(t_end, x, y) = o.samples.last().unwrap();
    assert!((t_end - 10.0).abs() < 1e-12);
    let h: f64 = 1e-4;
    let mut p = (0.5, 0.0);
    for _ in 0..(10.0 / h).round() as usize {
        p = rk4_step(&f, p, h);
    }
    assert!((p.0 - x).hypot(p.1 - y) < 1e-7, "adaptive ({x}, {y}), fixed {p:?}");
}

#[test]
fn quadratic_orbit_settles_between_the_glued_ellipses() {
    let s = load("quad", &["d=1/10"]);
    let o = integrate(&s, (0.0, -0.2), 300.0, DEFAULT_TOL).unwrap();
    let (x, y) = o.last();
    let (_, fam) = common::setup("quad", &["d=1/10"], Axis::YAxis);
    let inner = fam.specialize(&common::q("-1/11")).unwrap();
    let outer = fam.specialize(&common::q("-613/2000")).unwrap();
    assert!(inner.eval_f64(x, y) < 0.0 && outer.eval_f64(x, y) > 0.0, "end point ({x}, {y})");
}

#[test]
fn csv_rows_follow_the_header() {
    let s = load("vdp", &["e=1"]);
    let a = integrate(&s, (1.0, 0.0), 1.0, DEFAULT_TOL).unwrap();
    let b = integrate(&s, (2.0, 0.0), 1.0, DEFAULT_TOL).unwrap();
    let mut buf = Vec::new();
    write_csv(&[a.clone(), b.clone()], &mut buf).unwrap();
    let mut rd = csv::Reader::from_reader(buf.as_slice());
    assert_eq!(rd.headers().unwrap(), vec!["orbit", "t", "x", "y"]);
    let rows: Vec<(usize, f64, f64, f64)> = rd.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.len(), a.samples.len() + b.samples.len());
    assert_eq!(rows[0], (0, 0.0, 1.0, 0.0));
    let second = &rows[a.samples.len()];
    assert_eq!((second.0, second.2), (1, 2.0));
}
