//! Band sweeps: published values fall in certified bands, witnesses
//! re-certify, and band ends are genuine changes of behaviour.

mod common;

use common::{q, setup};
use pbconic::bandsearch::{find_bands, Band, BandEnd, BandError};
use pbconic::conicfit::{parametrize, ConicFamily, ConicKind};
use pbconic::exactalg::{rat, Rational};
use pbconic::localseries::Axis;
use pbconic::numoracle::sample_fdot_signs;
use pbconic::pipeline::Setup;
use pbconic::transversal::{certify_at, Verdict};

fn sweep(s: &Setup, fam: &ConicFamily, lo: &str, hi: &str, res: &str) -> Vec<Band> {
    find_bands(&s.sys, fam, (&q(lo), &q(hi)), &q(res)).unwrap().0
}

/// True when `v` lies in a band, counting a rational breakpoint end where
/// the conic itself certifies with the band's sign.
fn covered(s: &Setup, fam: &ConicFamily, bands: &[Band], v: &Rational) -> bool {
    bands.iter().any(|b| {
        if b.contains(v) {
            return true;
        }
        let at_end = [&b.lo, &b.hi]
            .into_iter()
            .any(|e| matches!(e, BandEnd::Breakpoint(r) if r.exact_rational().as_ref() == Some(v)));
        at_end
            && matches!(certify_at(&s.sys, fam, v), Ok(Verdict::Certified(c)) if c.sign == b.sign && c.conic_class == b.class)
    })
}

fn assert_sound(s: &Setup, fam: &ConicFamily, bands: &[Band]) {
    for b in bands {
        assert!(b.contains(&b.witness));
        let Ok(Verdict::Certified(c)) = certify_at(&s.sys, fam, &b.witness) else {
            panic!("witness {} does not re-certify", b.witness)
        };
        assert_eq!(c.sign, b.sign);
        assert_eq!(c.conic_class, b.class);
        let par = parametrize(&c.conic).unwrap();
        assert_eq!(sample_fdot_signs(&s.sys, &c.conic, &par, 2000, c.sign.as_i8()).strict_violations, 0);
    }
    for w in bands.windows(2) {
        assert!(w[0].hi.to_f64() <= w[1].lo.to_f64(), "bands overlap");
    }
}

/// A rational just beyond a breakpoint end on the side away from the band.
fn probe_beyond(end: &BandEnd, upward: bool, res: &Rational) -> Option<Rational> {
    match end {
        BandEnd::SearchLimit(_) => None,
        BandEnd::Breakpoint(r) => {
            let mut r = r.clone();
            r.refine_to_width(&(res / Rational::from_integer(4.into())));
            Some(if upward { r.hi() + res / Rational::from_integer(2.into()) } else { r.lo() - res / Rational::from_integer(2.into()) })
        }
    }
}

fn assert_boundaries_change(s: &Setup, fam: &ConicFamily, bands: &[Band], res: &Rational) {
    for b in bands {
        for (end, upward) in [(&b.lo, false), (&b.hi, true)] {
            let Some(p) = probe_beyond(end, upward, res) else { continue };
            let changed = match certify_at(&s.sys, fam, &p) {
                Ok(Verdict::Certified(c)) => c.sign != b.sign || c.conic_class != b.class,
                Ok(Verdict::Failure(_)) | Err(_) => true,
            };
            assert!(changed, "probe {p} beyond a band end behaves like the band around {}", b.witness);
        }
    }
}

#[test]
fn rychkov_table_values_lie_in_three_bands() {
    let (s, fam) = setup("rychkov", &["d=1/10"], Axis::XAxis);
    let bands = sweep(&s, &fam, "0", "2", "1/1000");
    assert!(bands.len() >= 3);
    let mut hit = Vec::new();
    for v in ["67/200", "937/1000", "1081/1000"] {
        let i = bands.iter().position(|b| b.contains(&q(v))).unwrap_or_else(|| panic!("{v} in no band"));
        assert_eq!(bands[i].class, ConicKind::Ellipse);
        hit.push(i);
    }
    hit.dedup();
    assert_eq!(hit.len(), 3, "values must fall in distinct bands");
    assert_sound(&s, &fam, &bands);
    assert_boundaries_change(&s, &fam, &bands, &q("1/1000"));
}

#[test]
fn quadratic_bands_bracket_published_values() {
    let (s, fam) = setup("quad", &["d=1/10"], Axis::YAxis);
    let bands = sweep(&s, &fam, "-1", "0", "1/1000");
    for v in ["-1/11", "-613/2000"] {
        assert!(covered(&s, &fam, &bands, &q(v)), "{v}");
    }
    // -613/2000 sits between two breakpoints of its band
    let b = bands.iter().find(|b| b.contains(&q("-613/2000"))).unwrap();
    assert!(matches!(b.lo, BandEnd::Breakpoint(_)) && matches!(b.hi, BandEnd::Breakpoint(_)));
    assert_sound(&s, &fam, &bands);
    assert_boundaries_change(&s, &fam, &bands, &q("1/1000"));

    let (s, fam) = setup("quad", &["d=9/10"], Axis::YAxis);
    let bands = sweep(&s, &fam, "-1", "0", "1/100000");
    for v in ["-9/19", "-1646850590977/3435973836800"] {
        assert!(covered(&s, &fam, &bands, &q(v)), "{v}");
    }
    let narrow = bands.iter().find(|b| b.contains(&q("-1646850590977/3435973836800"))).unwrap();
    assert!(narrow.hi.to_f64() - narrow.lo.to_f64() < 1e-3, "band should be narrow");
    assert_sound(&s, &fam, &bands);
}

#[test]
fn van_der_pol_band_near_two() {
    let (s, fam) = setup("vdp", &["e=1"], Axis::XAxis);
    let bands = sweep(&s, &fam, "1", "10", "1/1000");
    let b = bands.iter().find(|b| b.contains(&q("2007/1000"))).expect("band with 2007/1000");
    assert!(b.lo.to_f64() > 2.0 && b.hi.to_f64() < 2.05);
    assert!(covered(&s, &fam, &bands, &q("9/2")));
    assert_sound(&s, &fam, &bands);
    assert_boundaries_change(&s, &fam, &bands, &q("1/1000"));
}

#[test]
fn refining_the_resolution_keeps_every_witness() {
    let (s, fam) = setup("rychkov", &["d=15/100"], Axis::XAxis);
    let coarse = sweep(&s, &fam, "1/10", "2", "1/100");
    let fine = sweep(&s, &fam, "1/10", "2", "1/100000");
    for b in &coarse {
        assert!(fine.iter().any(|f| f.contains(&b.witness)), "witness {} lost", b.witness);
    }
    for v in ["2143/5000", "22097/25000", "10687/10000"] {
        assert!(covered(&s, &fam, &fine, &q(v)), "{v}");
    }
}

#[test]
fn cubic_hyperbola_bands_certify_on_both_sides_of_the_threshold() {
    for d in ["d=-2", "d=-11/5"] {
        let (s, fam) = setup("cubic", &[d], Axis::YAxis);
        let bands = sweep(&s, &fam, "1/2", "10", "1/1000");
        assert!(bands.iter().any(|b| b.class == ConicKind::Hyperbola), "{d}");
        assert_sound(&s, &fam, &bands);
    }
    let (s, fam) = setup("cubic", &["d=-2"], Axis::YAxis);
    assert!(covered(&s, &fam, &sweep(&s, &fam, "1/2", "10", "1/1000"), &rat(1, 1)));
}

#[test]
fn sweep_errors() {
    let (s, fam) = setup("quad", &["d=1/10"], Axis::YAxis);
    assert_eq!(find_bands(&s.sys, &fam, (&q("1"), &q("1")), &q("1/100")).unwrap_err(), BandError::EmptyInterval);
    // far from the origin every conic fails
    assert_eq!(find_bands(&s.sys, &fam, (&q("-3"), &q("-2")), &q("1/100")).unwrap_err(), BandError::NoBands);
}
