//! Poincaré compactification in the chart `x = u/v, y = 1/v`, equilibria on
//! the equator and the conic in chart coordinates.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::conicfit::Conic;
use crate::exactalg::{isolate_real_roots, sign_of, AlgebraicReal, BiPoly, Rational, UPoly, Var};
use crate::sysparse::SystemSpec;

/// Chart of the Poincaré sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    /// `x = 1/v, y = u/v`.
    U1,
    /// `x = u/v, y = 1/v`.
    U2,
}

/// The system in chart coordinates after multiplying by `v^(d-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartSystem {
    pub chart: Chart,
    pub udot: BiPoly,
    pub vdot: BiPoly,
    pub time_rescale_power: u32,
    /// True when a common factor `v` was removed (the equator would
    /// otherwise consist of equilibria).
    pub divided_by_v: bool,
}

/// `v^d g(u/v, 1/v)` (chart U2) or `v^d g(1/v, u/v)` (chart U1).
fn chart_homogenize(g: &BiPoly, d: u32, chart: Chart) -> BiPoly {
    let mut out = BiPoly::zero();
    for (&(i, j), c) in g.terms() {
        match chart {
            Chart::U2 => out.add_term(i, d - i - j, c.clone()),
            Chart::U1 => out.add_term(j, d - i - j, c.clone()),
        }
    }
    out
}

/// Transforms the system to a chart of the compactification.
pub fn compactify(sys: &SystemSpec, chart: Chart) -> ChartSystem {
    let d = sys.degree();
    let (num, den) = match chart {
        Chart::U2 => (&sys.p, &sys.q),
        Chart::U1 => (&sys.q, &sys.p),
    };
    let u = BiPoly::var(Var::First);
    let v = BiPoly::var(Var::Second);
    let hn = chart_homogenize(num, d, chart);
    let hd = chart_homogenize(den, d, chart);
    let mut udot = hn.sub(&u.mul(&hd));
    let mut vdot = v.mul(&hd).neg();
    let mut divided = false;
    if let (Some(a), Some(b)) = (udot.div_exact(&v), vdot.div_exact(&v)) {
        if !udot.is_zero() {
            udot = a;
            vdot = b;
            divided = true;
        }
    }
    ChartSystem {
        chart,
        udot,
        vdot,
        time_rescale_power: d.saturating_sub(1),
        divided_by_v: divided,
    }
}

/// The chart used for the analysis at infinity.
pub fn compactify_chart(sys: &SystemSpec) -> ChartSystem {
    compactify(sys, Chart::U2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InfinityKind {
    HyperbolicStableNode,
    HyperbolicUnstableNode,
    HyperbolicSaddle,
    /// Exactly one zero eigenvalue; needs a center-manifold analysis.
    SemiHyperbolic,
    /// Both eigenvalues zero; needs a blow-up.
    NonElementary,
}

impl InfinityKind {
    pub fn is_hyperbolic(self) -> bool {
        matches!(
            self,
            InfinityKind::HyperbolicStableNode
                | InfinityKind::HyperbolicUnstableNode
                | InfinityKind::HyperbolicSaddle
        )
    }

    pub fn is_sink_or_source(self) -> bool {
        matches!(
            self,
            InfinityKind::HyperbolicStableNode | InfinityKind::HyperbolicUnstableNode
        )
    }
}

fn classify_eigen(l1: i8, l2: i8) -> InfinityKind {
    match (l1, l2) {
        (0, 0) => InfinityKind::NonElementary,
        (0, _) | (_, 0) => InfinityKind::SemiHyperbolic,
        (a, b) if a != b => InfinityKind::HyperbolicSaddle,
        (a, _) if a < 0 => InfinityKind::HyperbolicStableNode,
        _ => InfinityKind::HyperbolicUnstableNode,
    }
}

/// An equilibrium `(u, 0)` on the equator.
#[derive(Clone, Debug, PartialEq)]
pub struct EquatorPoint {
    pub u: AlgebraicReal,
    pub multiplicity: usize,
    /// Signs of `d/du (du/dt)` and `(dv/dt)/v` at the point.
    pub eigen_signs: (i8, i8),
    pub kind: InfinityKind,
    /// Sign of the chart conic at the point, if a conic was supplied.
    pub ftilde_sign: Option<i8>,
}

/// The point at the end of the x-axis, seen in chart U1.
#[derive(Clone, Debug, PartialEq)]
pub struct XDirection {
    pub singular: bool,
    pub kind: Option<InfinityKind>,
    pub ftilde_sign: Option<i8>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InfinityReport {
    pub chart: ChartSystem,
    pub equator_points: Vec<EquatorPoint>,
    pub x_direction: XDirection,
    pub ftilde: Option<BiPoly>,
}

impl InfinityReport {
    /// Equator points where the chart conic is positive (same side as the origin).
    pub fn inside_points(&self) -> impl Iterator<Item = &EquatorPoint> {
        self.equator_points.iter().filter(|p| p.ftilde_sign == Some(1))
    }
}

fn equator_data(cs: &ChartSystem) -> (UPoly, UPoly, UPoly) {
    let g = cs.udot.specialize(Var::Second, &Rational::zero());
    let h = cs
        .vdot
        .div_exact(&BiPoly::var(Var::Second))
        .map(|q| q.specialize(Var::Second, &Rational::zero()))
        .unwrap_or_else(UPoly::zero);
    (g.clone(), g.derivative(), h)
}

/// Equilibria on the equator in chart U2 plus the U1 probe of the x-direction.
pub fn equator_equilibria(sys: &SystemSpec, conic: Option<&Conic>) -> InfinityReport {
    let cs = compactify(sys, Chart::U2);
    let (g, dg, h) = equator_data(&cs);
    let ftilde = conic.map(Conic::to_chart_u2);
    let fe = ftilde
        .as_ref()
        .map(|f| f.specialize(Var::Second, &Rational::zero()));
    let mut points = Vec::new();
    if !g.is_zero() {
        let iso = isolate_real_roots(&g).expect("nonzero");
        for r in iso.roots {
            let l1 = r.root.sign_of(&dg);
            let l2 = r.root.sign_of(&h);
            let ftilde_sign = fe.as_ref().map(|f| r.root.sign_of(f));
            points.push(EquatorPoint {
                u: r.root,
                multiplicity: r.multiplicity,
                eigen_signs: (l1, l2),
                kind: classify_eigen(l1, l2),
                ftilde_sign,
            });
        }
    }
    let c1 = compactify(sys, Chart::U1);
    let (g1, dg1, h1) = equator_data(&c1);
    let zero = Rational::zero();
    let singular = g1.eval(&zero).is_zero();
    let kind = singular.then(|| classify_eigen(sign_of(&dg1.eval(&zero)), sign_of(&h1.eval(&zero))));
    let x_direction = XDirection {
        singular,
        kind,
        ftilde_sign: conic.map(|c| sign_of(&c.s[2])),
    };
    InfinityReport {
        chart: cs,
        equator_points: points,
        x_direction,
        ftilde,
    }
}

/// `v^2 f(u/v, 1/v)`.
pub fn conic_to_chart(conic: &Conic) -> BiPoly {
    conic.to_chart_u2()
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
    fn harmonic_chart() {
        let cs = compactify_chart(&sys("dx = y; dy = -x"));
        assert_eq!(cs.udot, BiPoly::from_terms([((0, 0), int(1)), ((2, 0), int(1))]));
        assert_eq!(cs.vdot, BiPoly::from_terms([((1, 1), int(1))]));
        assert!(equator_equilibria(&sys("dx = y; dy = -x"), None).equator_points.is_empty());
    }

    #[test]
    fn circle_negative_at_infinity() {
        let c = Conic::new([int(0), int(0), int(-1), int(0), int(-1)], (int(1), int(0))).unwrap();
        let ft = conic_to_chart(&c);
        assert_eq!(ft, BiPoly::from_terms([((0, 2), int(1)), ((2, 0), int(-1)), ((0, 0), int(-1))]));
    }
}
