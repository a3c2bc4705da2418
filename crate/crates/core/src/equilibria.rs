//! Exact real equilibria of a polynomial system and the invariant-curve
//! cofactor check.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conicfit::Conic;
use crate::exactalg::poly::Poly;
use crate::exactalg::subres::{resultant as poly_resultant, subresultant};
use crate::exactalg::{
    isolate_real_roots, rat, rational_to_f64, sign_of, AlgebraicReal, BiPoly, Rational, UPoly, Var,
};
use crate::sysparse::SystemSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquilibriumError {
    #[error("the equilibrium set is not finite (P and Q share a common factor)")]
    PositiveDimensional,
    #[error("no admissible elimination direction found")]
    Unresolved,
}

/// Linearization type, decided exactly from the signs of the Jacobian's
/// determinant, trace and discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EquilibriumKind {
    Saddle,
    StableNode,
    UnstableNode,
    StableFocus,
    UnstableFocus,
    /// Zero trace with positive determinant: linear center, weak focus or center.
    CenterOrWeakFocus,
    /// Zero determinant.
    Degenerate,
}

/// A real equilibrium `x = t - k y`, `y = ynum(t) / yden(t)` with `t` algebraic.
#[derive(Clone, Debug, PartialEq)]
pub struct Equilibrium {
    pub t: AlgebraicReal,
    pub shear: Rational,
    pub ynum: UPoly,
    pub yden: UPoly,
    /// Multiplicity of `t` as a root of the eliminant.
    pub multiplicity: usize,
}

impl Equilibrium {
    /// Exact sign of `g(x, y)` at the equilibrium.
    pub fn sign_of(&self, g: &BiPoly) -> i8 {
        if g.is_zero() {
            return 0;
        }
        if let Some((x, y)) = self.rational_coords() {
            return sign_of(&g.eval(&x, &y));
        }
        let mut w = rat(1, 1 << 10);
        for _ in 0..4 {
            let (bx, by) = self.bounding_box(&w);
            let (lo, hi) = box_eval(g, &bx, &by);
            if lo > Rational::zero() {
                return 1;
            }
            if hi < Rational::zero() {
                return -1;
            }
            w = &w * &w;
        }
        let deg = g.total_degree().unwrap_or(0);
        // yden^deg g((t yden - k ynum)/yden, ynum/yden)
        let xn = UPoly::x().mul(&self.yden).sub(&self.ynum.scale(&self.shear));
        let pow = |p: &UPoly, e: u32| p.pow(e as usize);
        let mut h = UPoly::zero();
        for (&(i, j), c) in g.terms() {
            let t = pow(&xn, i).mul(&pow(&self.ynum, j)).mul(&pow(&self.yden, deg - i - j)).scale(c);
            h = h.add(&t);
        }
        let s = self.t.sign_of(&h);
        let den_sign = self.t.sign_of(&self.yden);
        if deg % 2 == 1 {
            s * den_sign
        } else {
            s
        }
    }

    pub fn approx(&self) -> (f64, f64) {
        let t = self.t.to_f64();
        let y = self.ynum.eval_f64(t) / self.yden.eval_f64(t);
        (t - rational_to_f64(&self.shear) * y, y)
    }

    /// Exact coordinates when the equilibrium is rational.
    pub fn rational_coords(&self) -> Option<(Rational, Rational)> {
        let t = self.t.exact_rational()?;
        let y = self.ynum.eval(&t) / self.yden.eval(&t);
        Some((t - &self.shear * &y, y))
    }

    pub fn is_origin(&self) -> bool {
        self.sign_of(&BiPoly::var(Var::First)) == 0 && self.sign_of(&BiPoly::var(Var::Second)) == 0
    }

    /// Rational box `[x_lo, x_hi] x [y_lo, y_hi]` of width at most `w`.
    pub fn bounding_box(&self, w: &Rational) -> ((Rational, Rational), (Rational, Rational)) {
        let mut t = self.t.clone();
        loop {
            let tiv = (t.lo().clone(), t.hi().clone());
            let num = interval_eval(&self.ynum, &tiv);
            let den = interval_eval(&self.yden, &tiv);
            if den.0.is_zero() || den.1.is_zero() || (den.0 < Rational::zero()) != (den.1 < Rational::zero()) {
                t.bisect();
                continue;
            }
            let quots = [&num.0 / &den.0, &num.0 / &den.1, &num.1 / &den.0, &num.1 / &den.1];
            let ylo = quots.iter().min().expect("four").clone();
            let yhi = quots.iter().max().expect("four").clone();
            let ky = if self.shear >= Rational::zero() {
                (&self.shear * &ylo, &self.shear * &yhi)
            } else {
                (&self.shear * &yhi, &self.shear * &ylo)
            };
            let xlo = &tiv.0 - &ky.1;
            let xhi = &tiv.1 - &ky.0;
            if &xhi - &xlo <= *w && &yhi - &ylo <= *w {
                return ((xlo, xhi), (ylo, yhi));
            }
            if t.as_rational().is_some() {
                return ((xlo, xhi), (ylo, yhi));
            }
            t.bisect();
        }
    }
}

/// Range enclosure of a polynomial over a rational interval (Horner form).
fn interval_eval(p: &UPoly, iv: &(Rational, Rational)) -> (Rational, Rational) {
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for c in p.coeffs().iter().rev() {
        let prods = [&lo * &iv.0, &lo * &iv.1, &hi * &iv.0, &hi * &iv.1];
        lo = prods.iter().min().expect("four").clone() + c;
        hi = prods.iter().max().expect("four").clone() + c;
    }
    (lo, hi)
}

fn interval_mul(a: &(Rational, Rational), b: &(Rational, Rational)) -> (Rational, Rational) {
    let prods = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    (
        prods.iter().min().expect("four").clone(),
        prods.iter().max().expect("four").clone(),
    )
}

fn interval_pow(a: &(Rational, Rational), e: u32) -> (Rational, Rational) {
    let mut acc = (Rational::one(), Rational::one());
    for _ in 0..e {
        acc = interval_mul(&acc, a);
    }
    acc
}

/// Range enclosure of `g` over a rational box, term by term.
fn box_eval(g: &BiPoly, bx: &(Rational, Rational), by: &(Rational, Rational)) -> (Rational, Rational) {
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for (&(i, j), c) in g.terms() {
        let m = interval_mul(&interval_pow(bx, i), &interval_pow(by, j));
        let t = interval_mul(&m, &(c.clone(), c.clone()));
        lo += t.0;
        hi += t.1;
    }
    (lo, hi)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumSet {
    pub points: Vec<Equilibrium>,
    /// Eliminant in `t = x + k y`.
    pub eliminant: UPoly,
    pub shear: Rational,
}

impl EquilibriumSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn shears() -> impl Iterator<Item = Rational> {
    let mut v = vec![rat(0, 1)];
    for n in 1..12i64 {
        v.push(rat(n, 1));
        v.push(rat(-n, 1));
        v.push(rat(1, n + 1));
        v.push(rat(-1, n + 1));
    }
    v.into_iter()
}

/// `g(t - k y, y)` as a polynomial in `y` with coefficients in `Q[t]`.
fn sheared(g: &BiPoly, k: &Rational) -> Poly<UPoly> {
    let x = BiPoly::from_terms([((1, 0), Rational::one()), ((0, 1), -k.clone())]);
    g.compose(&x, &BiPoly::var(Var::Second)).to_recursive(Var::Second)
}

/// All real solutions of `P = Q = 0`.
pub fn solve_equilibria(sys: &SystemSpec) -> Result<EquilibriumSet, EquilibriumError> {
    for k in shears() {
        let p = sheared(&sys.p, &k);
        let q = sheared(&sys.q, &k);
        if p.deg() == 0 || q.deg() == 0 || !p.lc().is_constant() || !q.lc().is_constant() {
            continue;
        }
        let r = poly_resultant(&p, &q);
        if r.is_zero() {
            return Err(EquilibriumError::PositiveDimensional);
        }
        // y as a rational function of t
        let (ynum, yden, s11) = if p.deg() == 1 || q.deg() == 1 {
            let lin = if p.deg() == 1 { &p } else { &q };
            (lin.coeff(0).neg(), lin.coeff(1), None)
        } else {
            let s1 = subresultant(&p, &q, 1);
            if s1.deg() < 1 {
                continue;
            }
            (s1.coeff(0).neg(), s1.coeff(1), Some(s1.coeff(1)))
        };
        let iso = isolate_real_roots(&r).expect("nonzero");
        let ok = iso.roots.iter().all(|root| match &s11 {
            Some(s) => root.root.sign_of(s) != 0,
            None => true,
        });
        if !ok {
            continue;
        }
        let points = iso
            .roots
            .into_iter()
            .map(|mut root| {
                root.root.collapse_if_rational();
                root
            })
            .map(|root| Equilibrium {
                t: root.root,
                shear: k.clone(),
                ynum: ynum.clone(),
                yden: yden.clone(),
                multiplicity: root.multiplicity,
            })
            .collect();
        return Ok(EquilibriumSet {
            points,
            eliminant: r,
            shear: k,
        });
    }
    Err(EquilibriumError::Unresolved)
}

/// Jacobian data at an equilibrium, with exact signs.
#[derive(Clone, Debug, PartialEq)]
pub struct Linearization {
    pub det_sign: i8,
    pub trace_sign: i8,
    pub discriminant_sign: i8,
    pub kind: EquilibriumKind,
}

pub fn linearize(sys: &SystemSpec, eq: &Equilibrium) -> Linearization {
    let px = sys.p.derivative(Var::First);
    let py = sys.p.derivative(Var::Second);
    let qx = sys.q.derivative(Var::First);
    let qy = sys.q.derivative(Var::Second);
    let det = px.mul(&qy).sub(&py.mul(&qx));
    let tr = px.add(&qy);
    let disc = tr.mul(&tr).sub(&det.scale(&rat(4, 1)));
    let (ds, ts, qs) = (eq.sign_of(&det), eq.sign_of(&tr), eq.sign_of(&disc));
    let kind = match (ds, ts) {
        (0, _) => EquilibriumKind::Degenerate,
        (-1, _) => EquilibriumKind::Saddle,
        (_, 0) => EquilibriumKind::CenterOrWeakFocus,
        (_, t) if qs >= 0 => {
            if t < 0 {
                EquilibriumKind::StableNode
            } else {
                EquilibriumKind::UnstableNode
            }
        }
        (_, t) => {
            if t < 0 {
                EquilibriumKind::StableFocus
            } else {
                EquilibriumKind::UnstableFocus
            }
        }
    };
    Linearization {
        det_sign: ds,
        trace_sign: ts,
        discriminant_sign: qs,
        kind,
    }
}

/// Position of a point relative to a conic, with inside meaning `f > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Inside,
    OnBoundary,
    Outside,
}

pub fn point_in_region(eq: &Equilibrium, conic: &Conic) -> Side {
    match eq.sign_of(&conic.f()) {
        1 => Side::Inside,
        0 => Side::OnBoundary,
        _ => Side::Outside,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CofactorResult {
    pub is_invariant: bool,
    pub cofactor: Option<BiPoly>,
}

/// Exact division of `P f_x + Q f_y` by `f`.
pub fn cofactor_check(sys: &SystemSpec, f: &BiPoly) -> CofactorResult {
    let fdot = sys.lie_derivative(f);
    match fdot.div_exact(f) {
        Some(k) => CofactorResult {
            is_invariant: true,
            cofactor: Some(k),
        },
        None => CofactorResult {
            is_invariant: false,
            cofactor: None,
        },
    }
}

/// Sign of `f` at a rational point.
pub fn sign_at_point(f: &BiPoly, x: &Rational, y: &Rational) -> i8 {
    sign_of(&f.eval(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;
    use crate::sysparse::parse_system;

    fn sys(text: &str) -> SystemSpec {
        parse_system(text, &Default::default()).unwrap()
    }

    #[test]
    fn linear_center_has_only_origin() {
        let s = solve_equilibria(&sys("dx = y; dy = -x")).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.points[0].is_origin());
        assert_eq!(linearize(&sys("dx = y; dy = -x"), &s.points[0]).kind, EquilibriumKind::CenterOrWeakFocus);
    }

    #[test]
    fn two_points_on_a_vertical_line() {
        // x = 0, y (y - 1) = 0 ... plus a shifted copy: equilibria (0,0), (0,1)
        let s = sys("dx = x; dy = y^2 - y");
        let e = solve_equilibria(&s).unwrap();
        assert_eq!(e.len(), 2);
        let mut pts: Vec<(Rational, Rational)> = e.points.iter().map(|p| p.rational_coords().unwrap()).collect();
        pts.sort();
        assert_eq!(pts, vec![(int(0), int(0)), (int(0), int(1))]);
        let kinds: Vec<EquilibriumKind> = e.points.iter().map(|p| linearize(&s, p).kind).collect();
        assert!(kinds.contains(&EquilibriumKind::Saddle));
        assert!(kinds.contains(&EquilibriumKind::UnstableNode));
    }

    #[test]
    fn irrational_equilibria() {
        // y = x with x in {0, -sqrt 2, sqrt 2}
        let s = sys("dx = y - x; dy = x^3 - 2*x");
        let e = solve_equilibria(&s).unwrap();
        assert_eq!(e.len(), 3);
        for p in &e.points {
            assert_eq!(p.sign_of(&s.p), 0);
            assert_eq!(p.sign_of(&s.q), 0);
            let ((xl, xh), (yl, yh)) = p.bounding_box(&rat(1, 1000));
            let (x, y) = p.approx();
            assert!(rational_to_f64(&xl) <= x + 1e-12 && x <= rational_to_f64(&xh) + 1e-12);
            assert!(rational_to_f64(&yl) <= y + 1e-12 && y <= rational_to_f64(&yh) + 1e-12);
        }
    }

    #[test]
    fn invariant_axes_cofactor_zero() {
        let s = sys("dx = x; dy = -y");
        let r = cofactor_check(&s, &BiPoly::monomial(int(1), 1, 1));
        assert!(r.is_invariant);
        assert!(r.cofactor.unwrap().is_zero());
    }
}
