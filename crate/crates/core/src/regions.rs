//! Poincaré–Bendixson regions bounded by certified transversal conics.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conicfit::{parametrize, Conic, ConicKind, Parametrization};
use crate::equilibria::{linearize, solve_equilibria, EquilibriumError, EquilibriumKind, Equilibrium, Side};
use crate::exactalg::{isolate_real_roots, sign_of, Rational, UPoly};
use crate::infinity::InfinityReport;
use crate::sysparse::SystemSpec;
use crate::transversal::{Certificate, FdotSign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("boundary conic must be an ellipse around the origin")]
    NotEllipseAroundOrigin,
    #[error("outer boundary must be a hyperbola or a parabola")]
    NotUnbounded,
    #[error("inner and outer boundaries coincide")]
    DegenerateBoundary,
    #[error("the origin is a saddle")]
    OriginIsSaddle,
    #[error(transparent)]
    Equilibria(#[from] EquilibriumError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stability {
    Stable,
    Unstable,
}

/// Why a candidate region fails the hypotheses of the Poincaré–Bendixson theorem.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum InvalidReason {
    /// The inner boundary is not contained in the outer region; `witness`
    /// approximates a parameter on the inner conic where the check fails.
    NotNested { witness: f64 },
    SameDirectionCrossing,
    EquilibriumInside { point: (f64, f64) },
    EquilibriumOnBoundary { point: (f64, f64) },
    SinkOrSourceAtInfinity { u: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Conclusion {
    /// An odd number of limit cycles counted with multiplicity, so at least one.
    AtLeastOneLimitCycle { stability: Stability },
    /// The hypotheses hold up to the listed points (non-hyperbolic equator
    /// points inside the region, or a degenerate origin) that need a manual analysis.
    ConditionalOnInfinity { stability: Stability, flags: Vec<String> },
    InvalidRegion { reason: InvalidReason },
}

impl Conclusion {
    pub fn is_valid(&self) -> bool {
        !matches!(self, Conclusion::InvalidRegion { .. })
    }

    pub fn stability(&self) -> Option<Stability> {
        match self {
            Conclusion::AtLeastOneLimitCycle { stability } => Some(*stability),
            Conclusion::ConditionalOnInfinity { stability, .. } => Some(*stability),
            Conclusion::InvalidRegion { .. } => None,
        }
    }
}

/// Exact proof that a conic takes one sign along another conic's parametrization.
#[derive(Clone, Debug, PartialEq)]
pub struct SignAlongConic {
    /// `d^2 g(pi1/d, pi2/d)`.
    pub poly: UPoly,
    pub real_roots: usize,
    pub sample_sign: i8,
    /// Sign at the point of the conic missed by finite parameters, if any.
    pub missed_point_sign: Option<i8>,
}

impl SignAlongConic {
    pub fn holds(&self, wanted: i8) -> bool {
        self.real_roots == 0
            && self.sample_sign == wanted
            && self.missed_point_sign.is_none_or(|s| s == wanted)
    }
}

/// Sign of the conic `g` along the parametrized conic `par`.
pub fn sign_along(g: &Conic, par: &Parametrization) -> (SignAlongConic, Option<f64>) {
    let f = g.f();
    let mut poly = UPoly::zero();
    for (&(i, j), c) in f.terms() {
        let t = par
            .pi1
            .pow(i as usize)
            .mul(&par.pi2.pow(j as usize))
            .mul(&par.d.pow((2 - i - j) as usize))
            .scale(c);
        poly = poly.add(&t);
    }
    let (real_roots, witness) = if poly.is_zero() {
        (usize::MAX, Some(0.0))
    } else if poly.deg() == 0 {
        (0, None)
    } else {
        let iso = isolate_real_roots(&poly).expect("nonzero");
        let w = iso.approximations().first().copied();
        (iso.len(), w)
    };
    let sample = (0..50)
        .map(|k| Rational::from_integer(k.into()))
        .map(|m| sign_of(&poly.eval(&m)))
        .find(|s| *s != 0)
        .unwrap_or(0);
    let missed = par
        .vertical_point
        .as_ref()
        .map(|(x, y)| sign_of(&f.eval(x, y)));
    (
        SignAlongConic {
            poly,
            real_roots,
            sample_sign: sample,
            missed_point_sign: missed,
        },
        witness,
    )
}

/// Both containment checks of an annulus.
#[derive(Clone, Debug, PartialEq)]
pub struct NestednessProof {
    /// `f_outer > 0` along the inner conic.
    pub outer_on_inner: SignAlongConic,
    /// `f_inner < 0` along the outer conic (ellipse outer boundaries only).
    pub inner_on_outer: Option<SignAlongConic>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditEntry {
    pub approx: (f64, f64),
    pub kind: EquilibriumKind,
    pub is_origin: bool,
    pub in_region: bool,
    pub on_boundary: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum InnerBoundary {
    Conic(Box<Certificate>),
    /// The origin itself, with its linearization type.
    Origin(EquilibriumKind),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PBRegionReport {
    pub inner: InnerBoundary,
    pub outer: Box<Certificate>,
    pub nestedness: Option<NestednessProof>,
    pub equilibrium_audit: Vec<AuditEntry>,
    pub infinity: Option<InfinityReport>,
    pub conclusion: Conclusion,
    pub narrative: String,
}

fn is_ellipse_around_origin(c: &Certificate) -> bool {
    c.conic_class == ConicKind::Ellipse && c.conic.s[2] < Rational::from_integer(0.into())
}

fn audit(
    sys: &SystemSpec,
    in_region: impl Fn(&Equilibrium) -> (bool, bool),
) -> Result<Vec<AuditEntry>, RegionError> {
    let eqs = solve_equilibria(sys)?;
    Ok(eqs
        .points
        .iter()
        .map(|e| {
            let (inside, boundary) = in_region(e);
            AuditEntry {
                approx: e.approx(),
                kind: linearize(sys, e).kind,
                is_origin: e.is_origin(),
                in_region: inside,
                on_boundary: boundary,
            }
        })
        .collect())
}

fn side(e: &Equilibrium, c: &Conic) -> Side {
    crate::equilibria::point_in_region(e, c)
}

fn audit_failure(entries: &[AuditEntry]) -> Option<InvalidReason> {
    if let Some(e) = entries.iter().find(|e| e.on_boundary) {
        return Some(InvalidReason::EquilibriumOnBoundary { point: e.approx });
    }
    entries
        .iter()
        .find(|e| e.in_region)
        .map(|e| InvalidReason::EquilibriumInside { point: e.approx })
}

fn stability_of(inner_enters: bool, outer_enters: bool) -> Option<Stability> {
    match (inner_enters, outer_enters) {
        (true, true) => Some(Stability::Stable),
        (false, false) => Some(Stability::Unstable),
        _ => None,
    }
}

fn narrative(conclusion: &Conclusion, what: &str) -> String {
    match conclusion {
        Conclusion::AtLeastOneLimitCycle { stability } => format!(
            "The {what} is a Poincaré–Bendixson region free of equilibria; the flow crosses both boundaries {}. It contains an odd number of limit cycles counted with multiplicity, hence at least one, and the outermost and innermost are {}.",
            if *stability == Stability::Stable { "inwards" } else { "outwards" },
            if *stability == Stability::Stable { "stable from outside and inside respectively" } else { "unstable from outside and inside respectively" }
        ),
        Conclusion::ConditionalOnInfinity { flags, .. } => format!(
            "The {what} satisfies the remaining hypotheses; the conclusion is conditional on a manual analysis of {}.",
            flags.join(", ")
        ),
        Conclusion::InvalidRegion { reason } => match reason {
            InvalidReason::EquilibriumInside { point } => format!(
                "The {what} contains the equilibrium ({:.6}, {:.6}); the flow still crosses the boundaries consistently, so the region holds a limit cycle or a polycycle through the equilibria, but no limit cycle is certified.",
                point.0, point.1
            ),
            other => format!("The {what} is not a Poincaré–Bendixson region: {other:?}."),
        },
    }
}

/// Region between two nested transversal ellipses.
pub fn assemble_annulus(
    sys: &SystemSpec,
    inner: &Certificate,
    outer: &Certificate,
) -> Result<PBRegionReport, RegionError> {
    if !is_ellipse_around_origin(inner) || !is_ellipse_around_origin(outer) {
        return Err(RegionError::NotEllipseAroundOrigin);
    }
    if inner.conic.s == outer.conic.s {
        return Err(RegionError::DegenerateBoundary);
    }
    let pin = parametrize(&inner.conic).map_err(|_| RegionError::NotEllipseAroundOrigin)?;
    let pout = parametrize(&outer.conic).map_err(|_| RegionError::NotEllipseAroundOrigin)?;
    let (a, wa) = sign_along(&outer.conic, &pin);
    let (b, wb) = sign_along(&inner.conic, &pout);
    let nested = a.holds(1) && b.holds(-1);
    let proof = NestednessProof {
        outer_on_inner: a,
        inner_on_outer: Some(b),
    };
    let entries = audit(sys, |e| {
        let si = side(e, &inner.conic);
        let so = side(e, &outer.conic);
        (
            si == Side::Outside && so == Side::Inside,
            si == Side::OnBoundary || so == Side::OnBoundary,
        )
    })?;
    let inner_enters = inner.sign == FdotSign::NonPositive;
    let outer_enters = outer.sign == FdotSign::NonNegative;
    let conclusion = if !nested {
        Conclusion::InvalidRegion {
            reason: InvalidReason::NotNested {
                witness: wa.or(wb).unwrap_or(f64::NAN),
            },
        }
    } else if let Some(reason) = audit_failure(&entries) {
        Conclusion::InvalidRegion { reason }
    } else {
        match stability_of(inner_enters, outer_enters) {
            Some(stability) => Conclusion::AtLeastOneLimitCycle { stability },
            None => Conclusion::InvalidRegion {
                reason: InvalidReason::SameDirectionCrossing,
            },
        }
    };
    let narrative = narrative(&conclusion, "annulus between the two ellipses");
    Ok(PBRegionReport {
        inner: InnerBoundary::Conic(Box::new(inner.clone())),
        outer: Box::new(outer.clone()),
        nestedness: Some(proof),
        equilibrium_audit: entries,
        infinity: None,
        conclusion,
        narrative,
    })
}

/// Region bounded by a transversal hyperbola or parabola, part of the
/// equator, and either an inner ellipse or the origin.
pub fn assemble_unbounded(
    sys: &SystemSpec,
    inner: Option<&Certificate>,
    outer: &Certificate,
    inf: &InfinityReport,
) -> Result<PBRegionReport, RegionError> {
    if !matches!(outer.conic_class, ConicKind::Hyperbola | ConicKind::Parabola) {
        return Err(RegionError::NotUnbounded);
    }
    let outer_enters = outer.sign == FdotSign::NonNegative;
    let mut origin_flag = None;
    let (inner_boundary, inner_enters, nestedness) = match inner {
        Some(c) => {
            if !is_ellipse_around_origin(c) {
                return Err(RegionError::NotEllipseAroundOrigin);
            }
            let pin = parametrize(&c.conic).map_err(|_| RegionError::NotEllipseAroundOrigin)?;
            let (a, w) = sign_along(&outer.conic, &pin);
            let ok = a.holds(1);
            (
                InnerBoundary::Conic(Box::new(c.clone())),
                c.sign == FdotSign::NonPositive,
                Some((
                    NestednessProof {
                        outer_on_inner: a,
                        inner_on_outer: None,
                    },
                    ok,
                    w,
                )),
            )
        }
        None => {
            let eqs = solve_equilibria(sys)?;
            let origin = eqs
                .points
                .iter()
                .find(|e| e.is_origin())
                .expect("the origin is an equilibrium");
            let lin = linearize(sys, origin);
            if lin.det_sign < 0 {
                return Err(RegionError::OriginIsSaddle);
            }
            if lin.det_sign == 0 || lin.trace_sign == 0 {
                // stability comes from higher-order terms, which are not analysed
                origin_flag = Some(format!(
                    "origin ({:?}; must be {} for the region to hold)",
                    lin.kind,
                    if outer_enters { "unstable" } else { "stable" }
                ));
                (InnerBoundary::Origin(lin.kind), outer_enters, None)
            } else {
                // an unstable origin lets orbits enter the region from inside
                (InnerBoundary::Origin(lin.kind), lin.trace_sign > 0, None)
            }
        }
    };
    let entries = audit(sys, |e| {
        let so = side(e, &outer.conic);
        let (inside_inner, on_inner) = match inner {
            Some(c) => {
                let si = side(e, &c.conic);
                (si != Side::Outside, si == Side::OnBoundary)
            }
            None => (e.is_origin(), false),
        };
        (so == Side::Inside && !inside_inner, on_inner || so == Side::OnBoundary)
    })?;
    let mut flags: Vec<String> = origin_flag.into_iter().collect();
    let mut sink_source = None;
    for p in inf.inside_points() {
        if p.kind.is_sink_or_source() {
            sink_source = Some(p.u.to_f64());
        } else if !p.kind.is_hyperbolic() {
            flags.push(format!("u = {:.6} ({:?})", p.u.to_f64(), p.kind));
        }
    }
    let x = &inf.x_direction;
    if x.singular && x.ftilde_sign == Some(1) {
        match x.kind {
            Some(k) if k.is_sink_or_source() => sink_source = Some(f64::INFINITY),
            Some(k) if !k.is_hyperbolic() => flags.push(format!("x-direction ({k:?})")),
            _ => {}
        }
    }
    let conclusion = if let Some((_, false, w)) = &nestedness {
        Conclusion::InvalidRegion {
            reason: InvalidReason::NotNested {
                witness: w.unwrap_or(f64::NAN),
            },
        }
    } else if let Some(reason) = audit_failure(&entries) {
        Conclusion::InvalidRegion { reason }
    } else if let Some(u) = sink_source {
        Conclusion::InvalidRegion {
            reason: InvalidReason::SinkOrSourceAtInfinity { u },
        }
    } else {
        match stability_of(inner_enters, outer_enters) {
            None => Conclusion::InvalidRegion {
                reason: InvalidReason::SameDirectionCrossing,
            },
            Some(stability) if flags.is_empty() => Conclusion::AtLeastOneLimitCycle { stability },
            Some(stability) => Conclusion::ConditionalOnInfinity { stability, flags },
        }
    };
    let what = match inner {
        Some(_) => "region between the ellipse, the unbounded conic and the equator",
        None => "region between the origin, the unbounded conic and the equator",
    };
    let narrative = narrative(&conclusion, what);
    Ok(PBRegionReport {
        inner: inner_boundary,
        outer: Box::new(outer.clone()),
        nestedness: nestedness.map(|(p, _, _)| p),
        equilibrium_audit: entries,
        infinity: Some(inf.clone()),
        conclusion,
        narrative,
    })
}

/// Orders two certified ellipses so the first lies inside the second, if they are nested.
pub fn order_nested<'a>(a: &'a Certificate, b: &'a Certificate) -> (&'a Certificate, &'a Certificate) {
    let inside = |inner: &Certificate, outer: &Certificate| {
        parametrize(&inner.conic)
            .map(|p| sign_along(&outer.conic, &p).0.holds(1))
            .unwrap_or(false)
    };
    if inside(a, b) || !inside(b, a) {
        (a, b)
    } else {
        (b, a)
    }
}
