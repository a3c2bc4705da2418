//! Transversality certificates checked against direct evaluation of the
//! derivative along the flow at points of the conic.

mod common;

use common::{certificate, q, setup, verdict, CORPUS, REFUTED};
use pbconic::conicfit::{parametrize, Conic};
use pbconic::exactalg::{int, rat, rational_to_f64, sign_of, Rational};
use pbconic::localseries::Axis;
use pbconic::numoracle::{sample_fdot_signs, FloatField};
use pbconic::sysparse::SystemSpec;
use pbconic::transversal::{certify, FdotSign, TransversalError, Verdict};

/// `P f_x + Q f_y` evaluated exactly, with the gradient written out from the
/// conic coefficients instead of taken from the crate.
fn fdot_exact(sys: &SystemSpec, c: &Conic, x: &Rational, y: &Rational) -> Rational {
    let s = &c.s;
    let fx = &s[0] + &(int(2) * &s[2] * x) + &s[3] * y;
    let fy = &s[1] + &(&s[3] * x) + int(2) * &s[4] * y;
    sys.p.eval(x, y) * fx + sys.q.eval(x, y) * fy
}

/// Floating-point `P f_x + Q f_y` together with the sum of absolute values
/// of its terms, used to tell rounding noise from a real sign.
fn fdot_f64(field: &FloatField, abs_field: &FloatField, s: &[f64; 5], x: f64, y: f64) -> (f64, f64) {
    let (p, qv) = field.eval(x, y);
    let (pa, qa) = abs_field.eval(x.abs(), y.abs());
    let fx = s[0] + 2.0 * s[2] * x + s[3] * y;
    let fy = s[1] + s[3] * x + 2.0 * s[4] * y;
    let fxa = s[0].abs() + 2.0 * (s[2] * x).abs() + (s[3] * y).abs();
    let fya = s[1].abs() + (s[3] * x).abs() + 2.0 * (s[4] * y).abs();
    (p * fx + qv * fy, pa * fxa + qa * fya)
}

fn abs_system(sys: &SystemSpec) -> SystemSpec {
    let abs = |g: &pbconic::exactalg::BiPoly| {
        pbconic::exactalg::BiPoly::from_terms(g.terms().iter().map(|(&k, c)| (k, num_traits::Signed::abs(c))))
    };
    SystemSpec::new(abs(&sys.p), abs(&sys.q)).unwrap_or_else(|_| sys.clone())
}

/// Signs of the derivative at `n` equispaced parameters in `[-span, span]`
/// and at the base point: `(positive, negative)` counts beyond rounding.
fn equispaced_signs(sys: &SystemSpec, conic: &Conic, n: usize, span: f64) -> (usize, usize, usize) {
    let par = parametrize(conic).unwrap();
    let field = FloatField::new(sys);
    let abs_field = FloatField::new(&abs_system(sys));
    let s: [f64; 5] = std::array::from_fn(|i| rational_to_f64(&conic.s[i]));
    let mut points: Vec<(f64, f64)> = (0..n)
        .filter_map(|k| par.point_f64(-span + 2.0 * span * k as f64 / (n - 1) as f64))
        .collect();
    points.push((rational_to_f64(&conic.base.0), rational_to_f64(&conic.base.1)));
    let (mut pos, mut neg) = (0, 0);
    for &(x, y) in &points {
        let (v, scale) = fdot_f64(&field, &abs_field, &s, x, y);
        if v > 1e-10 * scale {
            pos += 1;
        } else if v < -1e-10 * scale {
            neg += 1;
        }
    }
    (points.len(), pos, neg)
}

#[test]
fn closed_form_derivative_sign_for_symmetric_quadratic_conics() {
    for d in ["1/10", "1/2", "9/10"] {
        let delta = q(d);
        let b0 = -(&delta / &(&delta + int(1)));
        let (s, fam) = setup("quad", &[&format!("d={d}")], Axis::YAxis);
        let c = certificate(&s, &fam, &pbconic::exactalg::rational_string(&b0));
        assert_eq!(c.sign, FdotSign::NonPositive, "d = {d}");
        assert!(c.base_contact);
        let finite: Vec<_> = c.contact_points.iter().filter(|p| p.param.is_some()).collect();
        assert_eq!(finite.len(), 1, "d = {d}: finite contacts {finite:?}");
        // the conic is symmetric about the y-axis
        assert_eq!(c.conic.s[0], int(0));
        assert_eq!(c.conic.s[3], int(0));
        let par = parametrize(&c.conic).unwrap();
        let sign_poly = c.evidence.pulled_back.sign_polynomial();
        for k in -200..=200 {
            let m = rat(k, 7);
            let dl = &delta;
            let closed = int(16) * (dl - &(dl * dl * dl)) * m.clone().pow(4)
                / ((dl * dl - int(1)) * &m * &m - int(1)).pow(3);
            assert!(sign_of(&closed) <= 0);
            if k == 0 {
                assert_eq!(closed, int(0));
            }
            let ours = sign_poly.eval_sign(&m);
            assert!(ours <= 0, "d = {d}, m = {m}");
            if let Some((x, y)) = par.point(&m) {
                assert!(sign_of(&fdot_exact(&s.sys, &c.conic, &x, &y)) <= 0);
            }
        }
    }
}

#[test]
fn far_quadratic_conic_is_refuted_and_sampling_sees_both_signs() {
    let (s, fam) = setup("quad", &["d=1/10"], Axis::YAxis);
    let Verdict::Failure(w) = verdict(&s, &fam, "-1/2") else { panic!("-1/2 certified") };
    assert_eq!(w.multiplicity % 2, 1);
    let par = parametrize(&w.conic).unwrap();
    let (mut pos, mut neg) = (0, 0);
    for k in -5000..5000 {
        let Some((x, y)) = par.point(&rat(k, 10)) else { continue };
        match sign_of(&fdot_exact(&s.sys, &w.conic, &x, &y)) {
            1 => pos += 1,
            -1 => neg += 1,
            _ => {}
        }
    }
    assert!(pos > 0 && neg > 0, "positive {pos}, negative {neg}");
    // the witness point lies on the conic where the sign flips
    let (x, y) = w.approx_point.unwrap();
    assert!(w.conic.eval_f64(x, y).abs() < 1e-9);
}

#[test]
fn base_point_is_always_a_contact() {
    for g in CORPUS {
        let (s, fam) = g.setup();
        for v in g.values {
            let conic = fam.specialize(&q(v)).unwrap();
            let (x, y) = &conic.base;
            assert_eq!(fdot_exact(&s.sys, &conic, x, y), int(0), "{} at {v}", g.label);
        }
    }
}

#[test]
fn corpus_certificates_agree_with_floating_point_sampling() {
    for g in CORPUS {
        let (s, fam) = g.setup();
        for v in g.values {
            if (g.system, *v) == REFUTED {
                continue;
            }
            let c = certificate(&s, &fam, v);
            let (n, pos, neg) = equispaced_signs(&s.sys, &c.conic, 10_000, 1000.0);
            let violations = if c.sign == FdotSign::NonNegative { neg } else { pos };
            assert_eq!(violations, 0, "{} at {v}: {pos} positive, {neg} negative of {n}", g.label);
            let par = parametrize(&c.conic).unwrap();
            let spread = sample_fdot_signs(&s.sys, &c.conic, &par, 10_000, c.sign.as_i8());
            assert_eq!(spread.strict_violations, 0, "{} at {v}", g.label);
        }
    }
}

#[test]
fn refuted_corpus_conic_changes_sign_exactly() {
    let g = CORPUS.iter().find(|g| g.system == REFUTED.0).unwrap();
    let (s, fam) = g.setup();
    let Verdict::Failure(w) = verdict(&s, &fam, REFUTED.1) else { panic!("refuted value certified") };
    let par = parametrize(&w.conic).unwrap();
    let root = w.root.to_f64();
    let (lo, hi) = (Rational::from_float(root - 0.5).unwrap(), Rational::from_float(root + 0.5).unwrap());
    let signs: Vec<i8> = [lo, hi]
        .iter()
        .map(|m| {
            let (x, y) = par.point(m).unwrap();
            sign_of(&fdot_exact(&s.sys, &w.conic, &x, &y))
        })
        .collect();
    assert_eq!(signs[0] * signs[1], -1, "signs {signs:?} around m = {root}");
}

#[test]
fn certificate_does_not_depend_on_the_base_point() {
    for g in CORPUS {
        let (s, fam) = g.setup();
        for v in g.values {
            if (g.system, *v) == REFUTED {
                continue;
            }
            let c = certificate(&s, &fam, v);
            let a = q(v);
            let (i, j) = if g.axis == Axis::XAxis { (0, 2) } else { (1, 4) };
            let (si, sj) = (&c.conic.s[i], &c.conic.s[j]);
            if sj == &int(0) {
                continue;
            }
            // 1 + si t + sj t^2 has roots a and 1 / (sj a)
            assert_eq!(int(1) + si * &a + sj * &a * &a, int(0));
            let other = int(1) / (sj * &a);
            let base = if g.axis == Axis::XAxis { (other, int(0)) } else { (int(0), other) };
            let moved = Conic::new(c.conic.s.clone(), base).unwrap();
            let Verdict::Certified(c2) = certify(&s.sys, &moved).unwrap() else {
                panic!("{} at {v}: refuted from the other base point", g.label)
            };
            assert_eq!(c2.sign, c.sign, "{} at {v}", g.label);
            let close = |p: (f64, f64), set: &[(f64, f64)]| set.iter().any(|r| (r.0 - p.0).hypot(r.1 - p.1) < 1e-6);
            let p1: Vec<_> = c.contact_points.iter().map(|p| p.approx).collect();
            let p2: Vec<_> = c2.contact_points.iter().map(|p| p.approx).collect();
            for p in &p1 {
                assert!(close(*p, &p2), "{} at {v}: contact {p:?} missing from {p2:?}", g.label);
            }
            for p in &p2 {
                assert!(close(*p, &p1), "{} at {v}: contact {p:?} missing from {p1:?}", g.label);
            }
        }
    }
}

#[test]
fn invariant_circle_is_rejected() {
    let sys = pbconic::sysparse::parse_system("dx = y; dy = -x", &Default::default()).unwrap();
    let circle = Conic::new([int(0), int(0), int(-1), int(0), int(-1)], (int(1), int(0))).unwrap();
    assert_eq!(certify(&sys, &circle), Err(TransversalError::IdenticallyZero));
}
