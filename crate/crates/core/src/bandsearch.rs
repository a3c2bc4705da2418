//! Bands of transversal conics: the elimination polynomial in the symbolic
//! coordinate, its real roots, and certification of one rational probe per
//! gap between consecutive roots.

use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::conicfit::{ConicFamily, ConicKind};
use crate::exactalg::poly::Poly;
use crate::exactalg::roots::separate;
use crate::exactalg::subres::resultant as poly_resultant;
use crate::exactalg::upoly::squarefree_generic;
use crate::exactalg::zpoly::{to_primitive_z, to_rational_poly};
use crate::exactalg::{
    isolate_real_roots_in, simplest_between, AlgebraicReal, BiPoly, IsolatedRoot, Isolation,
    Rational, UPoly, Var, ZPoly,
};
use crate::localseries::Axis;
use crate::sysparse::SystemSpec;
use crate::transversal::{certify_at, Certificate, FdotSign, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BandError {
    #[error("no certifiable band in the search interval")]
    NoBands,
    #[error("empty search interval")]
    EmptyInterval,
    #[error("the pulled-back numerator vanishes identically in m")]
    ZeroNumerator,
}

/// Numerator of the pulled-back derivative as a polynomial in `m` with
/// coefficients in `Z[a0]`, for the whole family at once.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyNumerator {
    /// Primitive part in `m`.
    pub numerator: Poly<ZPoly>,
    /// Content: a polynomial in the symbol whose roots make the numerator vanish identically.
    pub content: ZPoly,
    /// Pencil denominator `d(m)` with polynomial coefficients.
    pub d: Poly<ZPoly>,
    /// Remaining power of `d` in the denominator.
    pub power: usize,
}

/// A named factor of the breakpoint set.
#[derive(Clone, Debug, PartialEq)]
pub struct BreakpointFactor {
    pub label: String,
    pub poly: UPoly,
}

/// Elimination data: `R(a0) = Res_m(N, dN/dm)` split into factors.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultantProfile {
    pub family: FamilyNumerator,
    /// Square-free factors of the numerator in `m` over `Q(a0)` with multiplicities.
    pub numerator_factors: Vec<(Poly<ZPoly>, usize)>,
    /// True when the numerator has a repeated factor, so `Res_m(N, N')` is
    /// identically zero and the profile is built on the square-free part.
    pub zero_resultant: bool,
    /// Leading coefficient of the numerator in `m`.
    pub leading_coeff: UPoly,
    /// Factors whose real roots are the breakpoint candidates.
    pub factors: Vec<BreakpointFactor>,
    /// Pairwise coprime square-free polynomials covering every factor.
    pub coprime_base: Vec<UPoly>,
}

impl ResultantProfile {
    /// Product of the coprime base: a square-free polynomial vanishing at every
    /// breakpoint candidate.
    pub fn r(&self) -> UPoly {
        self.coprime_base.iter().fold(UPoly::one(), |acc, p| acc.mul(p))
    }

    /// Breakpoints in the open interval `(lo, hi)`.
    pub fn roots_in(&self, lo: &Rational, hi: &Rational) -> Isolation {
        let mut roots = Vec::new();
        for p in &self.coprime_base {
            let iso = isolate_real_roots_in(p, lo, hi).expect("nonzero");
            roots.extend(iso.roots);
        }
        Isolation {
            roots: separate(roots),
        }
    }
}

fn upoly_to_bi(p: &UPoly, v: Var) -> BiPoly {
    let mut out = BiPoly::zero();
    for (j, c) in p.coeffs().iter().enumerate() {
        match v {
            Var::First => out.add_term(j as u32, 0, c.clone()),
            Var::Second => out.add_term(0, j as u32, c.clone()),
        }
    }
    out
}

/// `d^D fdot(pi1/d, pi2/d)` for the whole family, as a polynomial in
/// `(m, a0)`, with full powers of `d` divided out.
pub fn family_numerator(sys: &SystemSpec, family: &ConicFamily) -> FamilyNumerator {
    let l = family.common_denominator();
    // polynomial coefficients: L(a0) f = L + n1 x + n2 y + n3 x^2 + n4 xy + n5 y^2
    let n: Vec<UPoly> = family
        .s
        .iter()
        .map(|c| {
            let q = l.div_rem(c.den()).0;
            c.num().mul(&q)
        })
        .collect();
    let a = |p: &UPoly| upoly_to_bi(p, Var::Second);
    let m = BiPoly::var(Var::First);
    let sym = BiPoly::var(Var::Second);
    let off = BiPoly::constant(family.offset.clone());
    let (x0, y0) = match family.axis {
        Axis::XAxis => (sym, off),
        Axis::YAxis => (off, sym),
    };
    let two = BiPoly::constant(Rational::from_integer(2.into()));
    let fx = a(&n[0]).add(&two.mul(&a(&n[2])).mul(&x0)).add(&a(&n[3]).mul(&y0));
    let fy = a(&n[1]).add(&a(&n[3]).mul(&x0)).add(&two.mul(&a(&n[4])).mul(&y0));
    let d = a(&n[2]).add(&a(&n[3]).mul(&m)).add(&a(&n[4]).mul(&m).mul(&m));
    let lm = fx.add(&fy.mul(&m));
    let pi1 = x0.mul(&d).sub(&lm);
    let pi2 = y0.mul(&d).sub(&m.mul(&lm));
    let dd = sys.degree() as usize;
    let homog = |g: &BiPoly| -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in g.terms() {
            let t = pi1
                .pow(i)
                .mul(&pi2.pow(j))
                .mul(&d.pow((dd - (i + j) as usize) as u32))
                .scale(c);
            out = out.add(&t);
        }
        out
    };
    let hp = homog(&sys.p);
    let hq = homog(&sys.q);
    let fxd = a(&n[0]).mul(&d).add(&two.mul(&a(&n[2])).mul(&pi1)).add(&a(&n[3]).mul(&pi2));
    let fyd = a(&n[1]).mul(&d).add(&a(&n[3]).mul(&pi1)).add(&two.mul(&a(&n[4])).mul(&pi2));
    let mut num = hp.mul(&fxd).add(&hq.mul(&fyd));
    let mut power = dd + 1;
    while power > 0 && !num.is_zero() {
        match num.div_exact(&d) {
            Some(q) => {
                num = q;
                power -= 1;
            }
            None => break,
        }
    }
    let (_, z) = num.to_recursive_z(Var::First);
    let (_, dz) = d.to_recursive_z(Var::First);
    let content = if z.is_zero() { ZPoly::zero() } else { z.content() };
    let numerator = if z.is_zero() { z } else { z.primitive_part() };
    FamilyNumerator {
        numerator,
        content,
        d: dz,
        power,
    }
}

fn zpoly_to_u(p: &ZPoly) -> UPoly {
    to_rational_poly(p)
}

/// Computes the breakpoint factors of the family.
pub fn resultant_profile(sys: &SystemSpec, family: &ConicFamily) -> Result<ResultantProfile, BandError> {
    let fam = family_numerator(sys, family);
    if fam.numerator.is_zero() {
        return Err(BandError::ZeroNumerator);
    }
    let mut factors = Vec::new();
    let mut push = |label: String, p: UPoly| {
        if p.deg() > 0 {
            factors.push(BreakpointFactor { label, poly: p });
        }
    };
    push("content".into(), zpoly_to_u(&fam.content));
    let leading = zpoly_to_u(&fam.numerator.lc());
    push("leading coefficient".into(), leading.clone());
    let sqf = squarefree_generic(&fam.numerator);
    let zero_resultant = sqf.iter().any(|(_, k)| *k > 1);
    // factors of degree 0 in m only carry content in a0
    let parts: Vec<&Poly<ZPoly>> = sqf.iter().map(|(g, _)| g).filter(|g| g.deg() > 0).collect();
    let jobs: Vec<(String, Poly<ZPoly>, Poly<ZPoly>)> = {
        let mut v = Vec::new();
        for (i, g) in parts.iter().enumerate() {
            if g.deg() > 1 {
                v.push((format!("discriminant of factor {i}"), (*g).clone(), g.derivative()));
            }
            push(format!("leading coefficient of factor {i}"), zpoly_to_u(&g.lc()));
            for (j, h) in parts.iter().enumerate().skip(i + 1) {
                v.push((format!("resultant of factors {i} and {j}"), (*g).clone(), (*h).clone()));
            }
            if fam.d.deg() > 0 {
                v.push((format!("resultant of factor {i} with d"), (*g).clone(), fam.d.clone()));
            }
        }
        v
    };
    let results: Vec<(String, ZPoly)> = jobs
        .into_par_iter()
        .map(|(label, a, b)| (label, poly_resultant(&a, &b)))
        .collect();
    for (label, r) in results {
        push(label, zpoly_to_u(&r));
    }
    // conic class changes and degeneracies
    let dc = fam.d.coeffs();
    let get = |k: usize| dc.get(k).cloned().unwrap_or_else(ZPoly::zero);
    let (d0, d1, d2) = (get(0), get(1), get(2));
    let disc = d1.mul(&d1).sub(&d0.mul(&d2).scale(&BigInt::from(4)));
    push("conic discriminant".into(), zpoly_to_u(&disc));
    push("coefficient of y^2".into(), zpoly_to_u(&d2));
    push("coefficient of x^2".into(), zpoly_to_u(&d0));
    push("common denominator".into(), family.common_denominator());
    for c in &family.s {
        push("coefficient numerator".into(), c.num().clone());
    }
    let coprime_base = coprime_base(factors.iter().map(|f| f.poly.clone()));
    Ok(ResultantProfile {
        family: fam,
        numerator_factors: sqf,
        zero_resultant,
        leading_coeff: leading,
        factors,
        coprime_base,
    })
}

/// Pairwise coprime square-free polynomials with the same real roots as the inputs.
pub fn coprime_base(polys: impl IntoIterator<Item = UPoly>) -> Vec<UPoly> {
    let mut base: Vec<UPoly> = Vec::new();
    for p in polys {
        if p.deg() == 0 {
            continue;
        }
        let mut p = to_rational_poly(&to_primitive_z(&p.squarefree_part()));
        let mut next = Vec::with_capacity(base.len() + 2);
        for q in base {
            if p.deg() == 0 {
                next.push(q);
                continue;
            }
            let g = p.gcd(&q);
            if g.deg() == 0 {
                next.push(q);
                continue;
            }
            let rest = q.div_rem(&g).0;
            if rest.deg() > 0 {
                next.push(rest);
            }
            p = p.div_rem(&g).0;
            next.push(g.monic());
        }
        if p.deg() > 0 {
            next.push(p.monic());
        }
        base = next;
    }
    base
}

/// End of a band: a breakpoint or an end of the search interval.
#[derive(Clone, Debug, PartialEq)]
pub enum BandEnd {
    Breakpoint(AlgebraicReal),
    SearchLimit(Rational),
}

impl BandEnd {
    pub fn to_f64(&self) -> f64 {
        match self {
            BandEnd::Breakpoint(r) => r.to_f64(),
            BandEnd::SearchLimit(q) => crate::exactalg::rational_to_f64(q),
        }
    }

    fn upper_rational(&self) -> Rational {
        match self {
            BandEnd::Breakpoint(r) => r.hi().clone(),
            BandEnd::SearchLimit(q) => q.clone(),
        }
    }

    fn lower_rational(&self) -> Rational {
        match self {
            BandEnd::Breakpoint(r) => r.lo().clone(),
            BandEnd::SearchLimit(q) => q.clone(),
        }
    }
}

/// Bisects breakpoint intervals until consecutive ends leave a nonempty gap.
fn separate_ends(ends: &mut [BandEnd]) {
    for i in 1..ends.len() {
        while ends[i - 1].upper_rational() >= ends[i].lower_rational() {
            let mut moved = false;
            for k in [i - 1, i] {
                if let BandEnd::Breakpoint(r) = &mut ends[k] {
                    if r.as_rational().is_none() {
                        r.bisect();
                        moved = true;
                    }
                }
            }
            assert!(moved, "distinct breakpoints always separate");
        }
    }
}

/// A maximal run of certified gaps with the same conic class and sign.
#[derive(Clone, Debug, PartialEq)]
pub struct Band {
    pub axis: Axis,
    pub lo: BandEnd,
    pub hi: BandEnd,
    /// Rational interval strictly inside the band (between the refined ends).
    pub inner: (Rational, Rational),
    pub witness: Rational,
    pub certificate: Box<Certificate>,
    pub class: ConicKind,
    pub sign: FdotSign,
    /// Number of breakpoint gaps merged into this band; every gap was certified.
    pub gaps: usize,
}

impl Band {
    /// True if `v` lies strictly between the band's ends.
    pub fn contains(&self, v: &Rational) -> bool {
        let above_lo = match &self.lo {
            BandEnd::Breakpoint(r) => r.cmp_rational(v).is_lt(),
            BandEnd::SearchLimit(q) => q < v,
        };
        let below_hi = match &self.hi {
            BandEnd::Breakpoint(r) => r.cmp_rational(v).is_gt(),
            BandEnd::SearchLimit(q) => v < q,
        };
        above_lo && below_hi
    }
}

/// Outcome of probing one gap.
#[derive(Clone, Debug)]
struct Probe {
    value: Rational,
    verdict: Option<Verdict>,
}

/// Statistics of a sweep.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepStats {
    pub breakpoints: usize,
    pub gaps: usize,
    pub certified_gaps: usize,
    pub elapsed_ms: u128,
}

fn denominator_size(q: &Rational) -> (BigInt, BigInt) {
    (q.denom().clone(), num_traits::Signed::abs(q.numer()))
}

/// Certifiable bands in the open interval `(lo, hi)`; ends are refined to
/// width `resolution`.
pub fn find_bands(
    sys: &SystemSpec,
    family: &ConicFamily,
    interval: (&Rational, &Rational),
    resolution: &Rational,
) -> Result<(Vec<Band>, SweepStats), BandError> {
    if interval.0 >= interval.1 {
        return Err(BandError::EmptyInterval);
    }
    let profile = resultant_profile(sys, family)?;
    find_bands_with(sys, family, &profile, interval, resolution)
}

/// As [`find_bands`], reusing a precomputed breakpoint profile.
pub fn find_bands_with(
    sys: &SystemSpec,
    family: &ConicFamily,
    profile: &ResultantProfile,
    interval: (&Rational, &Rational),
    resolution: &Rational,
) -> Result<(Vec<Band>, SweepStats), BandError> {
    let start = Instant::now();
    let (lo, hi) = interval;
    if lo >= hi {
        return Err(BandError::EmptyInterval);
    }
    let mut iso = profile.roots_in(lo, hi);
    iso.refine_to_width(resolution);
    let roots: Vec<IsolatedRoot> = iso.roots;
    let mut ends = vec![BandEnd::SearchLimit(lo.clone())];
    ends.extend(roots.into_iter().map(|r| BandEnd::Breakpoint(r.root)));
    ends.push(BandEnd::SearchLimit(hi.clone()));
    separate_ends(&mut ends);
    let probes: Vec<Probe> = ends
        .windows(2)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|w| {
            let a = w[0].upper_rational();
            let b = w[1].lower_rational();
            let value = simplest_between(&a, &b);
            let verdict = certify_at(sys, family, &value).ok();
            Probe { value, verdict }
        })
        .collect();
    let mut bands: Vec<Band> = Vec::new();
    let mut certified_gaps = 0;
    let mut prev_certified = false;
    for (i, probe) in probes.iter().enumerate() {
        let cert = match probe.verdict.as_ref().and_then(Verdict::certificate) {
            Some(c) => c,
            None => {
                prev_certified = false;
                continue;
            }
        };
        certified_gaps += 1;
        let extend = prev_certified
            && bands
                .last()
                .is_some_and(|b| b.class == cert.conic_class && b.sign == cert.sign);
        prev_certified = true;
        if extend {
            let band = bands.last_mut().expect("checked");
            band.hi = ends[i + 1].clone();
            band.inner.1 = ends[i + 1].lower_rational();
            band.gaps += 1;
            if denominator_size(&probe.value) < denominator_size(&band.witness) {
                band.witness = probe.value.clone();
                band.certificate = Box::new(cert.clone());
            }
            continue;
        }
        bands.push(Band {
            axis: family.axis,
            lo: ends[i].clone(),
            hi: ends[i + 1].clone(),
            inner: (ends[i].upper_rational(), ends[i + 1].lower_rational()),
            witness: probe.value.clone(),
            certificate: Box::new(cert.clone()),
            class: cert.conic_class,
            sign: cert.sign,
            gaps: 1,
        });
    }
    let stats = SweepStats {
        breakpoints: ends.len() - 2,
        gaps: probes.len(),
        certified_gaps,
        elapsed_ms: start.elapsed().as_millis(),
    };
    if bands.is_empty() {
        return Err(BandError::NoBands);
    }
    Ok((bands, stats))
}
