//! Poincaré–Bendixson regions: published annuli and unbounded regions, with
//! numeric checks that trajectories respect the certified orientation.

mod common;

use common::{certificate, q, setup};
use pbconic::conicfit::{parametrize, Conic};
use pbconic::infinity::equator_equilibria;
use pbconic::localseries::Axis;
use pbconic::numoracle::integrate_dir;
use pbconic::pipeline::{PipelineError, Setup};
use pbconic::regions::{assemble_annulus, assemble_unbounded, Conclusion, InnerBoundary, PBRegionReport, RegionError, Stability};
use pbconic::sysparse::SystemSpec;

struct Annulus {
    system: &'static str,
    binding: Option<&'static str>,
    axis: Axis,
    pair: (&'static str, &'static str),
    stability: Stability,
}

const ANNULI: &[Annulus] = &[
    Annulus { system: "quad", binding: Some("d=1/10"), axis: Axis::YAxis, pair: ("-1/11", "-613/2000"), stability: Stability::Stable },
    Annulus { system: "quad", binding: Some("d=9/10"), axis: Axis::YAxis, pair: ("-9/19", "-1646850590977/3435973836800"), stability: Stability::Stable },
    Annulus { system: "vdp", binding: Some("e=1"), axis: Axis::XAxis, pair: ("1", "2007/1000"), stability: Stability::Stable },
    Annulus { system: "vdp", binding: Some("e=1/10"), axis: Axis::XAxis, pair: ("1", "39/10"), stability: Stability::Stable },
    Annulus { system: "rychkov", binding: Some("d=-1"), axis: Axis::XAxis, pair: ("159/125", "646747/500000"), stability: Stability::Stable },
    Annulus { system: "rychkov", binding: Some("d=1/10"), axis: Axis::XAxis, pair: ("67/200", "937/1000"), stability: Stability::Unstable },
    Annulus { system: "rychkov", binding: Some("d=1/10"), axis: Axis::XAxis, pair: ("937/1000", "1081/1000"), stability: Stability::Stable },
    Annulus { system: "quintic2", binding: None, axis: Axis::XAxis, pair: ("1015/1000", "1019/1000"), stability: Stability::Stable },
    Annulus { system: "quintic2", binding: None, axis: Axis::XAxis, pair: ("196531/100000", "196665/100000"), stability: Stability::Unstable },
];

fn region(s: &Setup, fam: &pbconic::conicfit::ConicFamily, values: &[&str]) -> Result<PBRegionReport, PipelineError> {
    let a: Vec<_> = values.iter().map(|v| q(v)).collect();
    let certs = s.certify_all(fam, &a)?;
    s.region(&certs)
}

fn boundary_conics(rep: &PBRegionReport) -> (Conic, Conic) {
    let InnerBoundary::Conic(inner) = &rep.inner else { panic!("annulus expected") };
    (inner.conic.clone(), rep.outer.conic.clone())
}

/// Integrates from 16 points on each boundary, forwards for a stable region
/// and backwards for an unstable one, and checks the orbit never leaves.
fn assert_orbits_stay_inside(sys: &SystemSpec, inner: &Conic, outer: &Conic, stability: Stability, label: &str) {
    let reverse = stability == Stability::Unstable;
    for c in [inner, outer] {
        let par = parametrize(c).unwrap();
        for k in 0..16 {
            let theta = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (k as f64 + 0.5) / 16.0;
            let start = par.point_f64(theta.tan()).unwrap();
            let orbit = integrate_dir(sys, start, 50.0, 1e-10, reverse).unwrap();
            for &(t, x, y) in &orbit.samples {
                let fi = inner.eval_f64(x, y);
                let fo = outer.eval_f64(x, y);
                assert!(fi <= 1e-6 && fo >= -1e-6, "{label}: orbit from {start:?} left the annulus at t = {t}: f_inner {fi}, f_outer {fo}");
            }
        }
    }
}

#[test]
fn published_annuli_are_valid_with_the_expected_stability() {
    for a in ANNULI {
        let b: Vec<&str> = a.binding.into_iter().collect();
        let (s, fam) = setup(a.system, &b, a.axis);
        let label = format!("{} {:?} {:?}", a.system, a.binding, a.pair);
        let rep = region(&s, &fam, &[a.pair.0, a.pair.1]).unwrap();
        assert_eq!(rep.conclusion, Conclusion::AtLeastOneLimitCycle { stability: a.stability }, "{label}");
        assert_eq!(rep.equilibrium_audit.len(), 1, "{label}: only the origin");
        assert!(rep.equilibrium_audit[0].is_origin && !rep.equilibrium_audit[0].in_region);
        let (inner, outer) = boundary_conics(&rep);
        // nestedness: the inner ellipse lies inside the outer one
        let par = parametrize(&inner).unwrap();
        for k in 0..1000 {
            let theta = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (k as f64 + 0.5) / 1000.0;
            let (x, y) = par.point_f64(theta.tan()).unwrap();
            assert!(outer.eval_f64(x, y) > 0.0, "{label}: inner point ({x}, {y}) outside the outer ellipse");
        }
        assert_orbits_stay_inside(&s.sys, &inner, &outer, a.stability, &label);
    }
}

#[test]
fn rychkov_table_pairs_alternate_in_stability() {
    for (d, vals) in [
        ("d=15/100", ["2143/5000", "22097/25000", "10687/10000"]),
        ("d=18/100", ["1213/2500", "80337/100000", "26529/25000"]),
    ] {
        let (s, fam) = setup("rychkov", &[d], Axis::XAxis);
        let lower = region(&s, &fam, &vals[..2]).unwrap().conclusion;
        let upper = region(&s, &fam, &vals[1..]).unwrap().conclusion;
        assert!(lower.is_valid() && upper.is_valid(), "{d}");
        assert_ne!(lower.stability(), upper.stability(), "{d}");
    }
}

#[test]
fn refuted_boundary_is_reported_as_not_transversal() {
    let (s, fam) = setup("quintic2", &[], Axis::XAxis);
    match region(&s, &fam, &["1015/1000", "10189/10000"]) {
        Err(PipelineError::NotTransversal(v)) => assert_eq!(v, "10189/10000"),
        other => panic!("expected NotTransversal, got {other:?}"),
    }
}

#[test]
fn hyperbola_regions_are_conditional_on_the_equator() {
    let (s, fam) = setup("cubic", &["d=-2"], Axis::YAxis);
    let rep = region(&s, &fam, &["1"]).unwrap();
    assert!(matches!(rep.inner, InnerBoundary::Origin(_)));
    let Conclusion::ConditionalOnInfinity { stability, flags } = &rep.conclusion else {
        panic!("conditional conclusion expected, got {:?}", rep.conclusion)
    };
    assert_eq!(*stability, Stability::Unstable);
    assert!(flags.iter().any(|f| f.contains("0.618034")), "{flags:?}");
    let inf = rep.infinity.as_ref().unwrap();
    let node = inf.equator_points.iter().find(|p| p.u.to_f64() == 0.0).unwrap();
    assert_eq!(node.ftilde_sign, Some(-1), "the stable node at infinity stays outside");

    for (b, vals) in [("b=1/2", ["2239/5000", "51/25"]), ("b=65349/100000", ["107/200", "859/500"])] {
        let (s, fam) = setup("quintic", &[b], Axis::YAxis);
        let rep = region(&s, &fam, &vals).unwrap();
        assert!(matches!(rep.inner, InnerBoundary::Conic(_)));
        let Conclusion::ConditionalOnInfinity { stability, flags } = &rep.conclusion else {
            panic!("{b}: conditional conclusion expected, got {:?}", rep.conclusion)
        };
        assert_eq!(*stability, Stability::Stable);
        assert!(flags.iter().any(|f| f.contains("x-direction")), "{flags:?}");
        let inf = rep.infinity.as_ref().unwrap();
        assert!(inf.equator_points.iter().all(|p| p.ftilde_sign == Some(-1)), "{b}: y-direction outside");
    }
}

#[test]
fn precondition_errors() {
    let (qs, qfam) = setup("quad", &["d=1/10"], Axis::YAxis);
    let c = certificate(&qs, &qfam, "-1/11");
    assert_eq!(assemble_annulus(&qs.sys, &c, &c).unwrap_err(), RegionError::DegenerateBoundary);
    let inf = equator_equilibria(&qs.sys, Some(&c.conic));
    assert_eq!(assemble_unbounded(&qs.sys, None, &c, &inf).unwrap_err(), RegionError::NotUnbounded);
    let e = certificate(&qs, &qfam, "-613/2000");
    let (cs, cfam) = setup("cubic", &["d=-2"], Axis::YAxis);
    let h = certificate(&cs, &cfam, "1");
    assert_eq!(assemble_annulus(&cs.sys, &e, &h).unwrap_err(), RegionError::NotEllipseAroundOrigin);
}

#[test]
fn certified_cycles_never_share_a_region_with_an_equilibrium() {
    for a in ANNULI {
        let b: Vec<&str> = a.binding.into_iter().collect();
        let (s, fam) = setup(a.system, &b, a.axis);
        let rep = region(&s, &fam, &[a.pair.0, a.pair.1]).unwrap();
        if matches!(rep.conclusion, Conclusion::AtLeastOneLimitCycle { .. }) {
            assert!(rep.equilibrium_audit.iter().all(|e| !e.in_region && !e.on_boundary));
        }
    }
}
