//! Exact certification that the derivative of a conic along the flow keeps
//! one sign on the whole conic.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conicfit::{classify, parametrize, Conic, ConicError, ConicFamily, ConicKind, Parametrization};
use crate::exactalg::{
    isolate_real_roots, rat, sign_of, AlgebraicReal, Bound, Rational, SturmChain, UPoly,
};
use crate::sysparse::SystemSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransversalError {
    #[error("the derivative along the flow vanishes on the whole conic (invariant conic)")]
    IdenticallyZero,
    #[error(transparent)]
    Conic(#[from] ConicError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FdotSign {
    NonNegative,
    NonPositive,
}

impl FdotSign {
    pub fn as_i8(self) -> i8 {
        match self {
            FdotSign::NonNegative => 1,
            FdotSign::NonPositive => -1,
        }
    }
}

/// A point of the conic where the derivative along the flow vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactPoint {
    /// Pencil parameter, or `None` for the point reached at `m = infinity`.
    pub param: Option<AlgebraicReal>,
    pub multiplicity: usize,
    pub approx: (f64, f64),
}

/// The pulled-back derivative `phi(m) = numerator(m) / d(m)^power`.
#[derive(Clone, Debug, PartialEq)]
pub struct PulledBack {
    pub numerator: UPoly,
    pub d: UPoly,
    pub power: usize,
}

impl PulledBack {
    /// A polynomial with the sign of `phi` wherever `d` does not vanish.
    pub fn sign_polynomial(&self) -> UPoly {
        if self.power % 2 == 1 {
            self.numerator.mul(&self.d)
        } else {
            self.numerator.clone()
        }
    }
}

/// Exact evidence backing a sign verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Evidence {
    pub pulled_back: PulledBack,
    /// Square-free factors of the sign polynomial with multiplicities.
    pub factors: Vec<(UPoly, usize)>,
    /// Product of the factors of odd multiplicity.
    pub odd_part: UPoly,
    /// Sturm sign variations of the odd part at minus and plus infinity.
    pub sturm_variations: (usize, usize),
    /// Rational parameter where the sign was read off.
    pub sample: Rational,
    pub sample_sign: i8,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub conic: Conic,
    pub conic_class: ConicKind,
    pub sign: FdotSign,
    pub contact_points: Vec<ContactPoint>,
    /// The derivative vanishes at the base point.
    pub base_contact: bool,
    /// Sign of the derivative at the point reached at `m = infinity`, if affine.
    pub vertical_sign: Option<i8>,
    pub evidence: Evidence,
}

impl Certificate {
    /// True when the only contact point is the base point.
    pub fn contact_only_at_base(&self) -> bool {
        self.base_contact && self.contact_points.len() == 1
    }
}

/// A real parameter where the derivative changes sign.
#[derive(Clone, Debug, PartialEq)]
pub struct FailureWitness {
    pub conic: Conic,
    pub root: AlgebraicReal,
    pub multiplicity: usize,
    pub approx_point: Option<(f64, f64)>,
    pub pulled_back: PulledBack,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Certified(Box<Certificate>),
    Failure(Box<FailureWitness>),
}

impl Verdict {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Certified(c) => Some(c),
            Verdict::Failure(_) => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified(_))
    }
}

/// `d^D fdot(pi1/d, pi2/d)` with full powers of `d` divided out.
pub fn pull_back(fdot: &crate::exactalg::BiPoly, par: &Parametrization) -> PulledBack {
    let deg = fdot.total_degree().unwrap_or(0) as usize;
    let d_pows: Vec<UPoly> = std::iter::successors(Some(UPoly::one()), |p| Some(p.mul(&par.d)))
        .take(deg + 1)
        .collect();
    let max_i = fdot.terms().keys().map(|k| k.0).max().unwrap_or(0) as usize;
    let max_j = fdot.terms().keys().map(|k| k.1).max().unwrap_or(0) as usize;
    let p1: Vec<UPoly> = std::iter::successors(Some(UPoly::one()), |p| Some(p.mul(&par.pi1)))
        .take(max_i + 1)
        .collect();
    let p2: Vec<UPoly> = std::iter::successors(Some(UPoly::one()), |p| Some(p.mul(&par.pi2)))
        .take(max_j + 1)
        .collect();
    let mut n = UPoly::zero();
    for (&(i, j), c) in fdot.terms() {
        let (i, j) = (i as usize, j as usize);
        let t = p1[i].mul(&p2[j]).mul(&d_pows[deg - i - j]).scale(c);
        n = n.add(&t);
    }
    let mut power = deg;
    if par.d.deg() > 0 {
        while power > 0 && !n.is_zero() {
            let (q, r) = n.div_rem(&par.d);
            if !r.is_zero() {
                break;
            }
            n = q;
            power -= 1;
        }
    } else {
        // constant d only rescales
        power = 0;
        n = n.scale(&(Rational::from_integer(1.into()) / par.d.coeff(0).clone()).pow(deg as i32));
    }
    PulledBack {
        numerator: n,
        d: par.d.clone(),
        power,
    }
}

/// Rational parameters tried in order when reading off a sign.
fn sample_params() -> impl Iterator<Item = Rational> {
    let mut v = vec![rat(0, 1)];
    for k in 1..200i64 {
        v.push(rat(k, 1));
        v.push(rat(-k, 1));
        v.push(rat(1, k + 1));
        v.push(rat(-1, k + 1));
    }
    v.into_iter()
}

fn strip_common(mut p: UPoly, d: &UPoly) -> UPoly {
    if d.deg() == 0 {
        return p;
    }
    loop {
        let g = p.gcd(d);
        if g.deg() == 0 {
            return p;
        }
        p = p.div_rem(&g).0;
    }
}

/// Decides the sign of the derivative along the flow on the conic.
pub fn certify(sys: &SystemSpec, conic: &Conic) -> Result<Verdict, TransversalError> {
    let class = classify(conic)?;
    let par = parametrize(conic)?;
    let fdot = sys.lie_derivative(&conic.f());
    let pb = pull_back(&fdot, &par);
    if pb.numerator.is_zero() {
        return Err(TransversalError::IdenticallyZero);
    }
    let s = pb.sign_polynomial();
    let (_, factors) = s.squarefree_decompose().expect("nonzero");
    let mut odd = UPoly::one();
    for (f, m) in &factors {
        if m % 2 == 1 {
            odd = odd.mul(f);
        }
    }
    let chain = SturmChain::new(&odd).expect("nonzero");
    let vars = (chain.variations(&Bound::NegInf), chain.variations(&Bound::PosInf));
    if vars.0 != vars.1 {
        let iso = isolate_real_roots(&odd).expect("nonzero");
        let root = iso.roots[0].root.clone();
        let mult = factors
            .iter()
            .find(|(f, _)| root.sign_of(f) == 0)
            .map(|(_, m)| *m)
            .unwrap_or(1);
        let approx_point = par.point_f64(root.to_f64());
        return Ok(Verdict::Failure(Box::new(FailureWitness {
            conic: conic.clone(),
            root,
            multiplicity: mult,
            approx_point,
            pulled_back: pb,
        })));
    }
    let (sample, sample_sign) = sample_params()
        .map(|m| {
            let sg = sign_of(&s.eval(&m));
            (m, sg)
        })
        .find(|(_, sg)| *sg != 0)
        .expect("a nonzero polynomial is nonzero at some small rational");
    let sign = if sample_sign > 0 {
        FdotSign::NonNegative
    } else {
        FdotSign::NonPositive
    };
    let (x0, y0) = &conic.base;
    let base_contact = fdot.eval(x0, y0).is_zero();
    let vertical_sign = par
        .vertical_point
        .as_ref()
        .map(|(x, y)| sign_of(&fdot.eval(x, y)));
    let mut contact_points = Vec::new();
    let contacts = strip_common(pb.numerator.clone(), &par.d);
    if contacts.deg() > 0 {
        let iso = isolate_real_roots(&contacts).expect("nonzero");
        for r in iso.roots {
            let approx = par.point_f64(r.root.to_f64()).unwrap_or((f64::NAN, f64::NAN));
            contact_points.push(ContactPoint {
                param: Some(r.root),
                multiplicity: r.multiplicity,
                approx,
            });
        }
    }
    if let (Some(0), Some((x, y))) = (vertical_sign, par.vertical_point.as_ref()) {
        // the point at m = infinity is missed by the finite parameters
        // order of vanishing at m = infinity of the degree-2*power form
        let multiplicity = (2 * pb.power).saturating_sub(pb.numerator.deg()).max(1);
        contact_points.push(ContactPoint {
            param: None,
            multiplicity,
            approx: (
                crate::exactalg::rational_to_f64(x),
                crate::exactalg::rational_to_f64(y),
            ),
        });
    }
    Ok(Verdict::Certified(Box::new(Certificate {
        conic: conic.clone(),
        conic_class: class.kind,
        sign,
        contact_points,
        base_contact,
        vertical_sign,
        evidence: Evidence {
            pulled_back: pb,
            factors,
            odd_part: odd,
            sturm_variations: vars,
            sample,
            sample_sign,
        },
    })))
}

/// Specializes the family at `a0` and certifies the resulting conic.
pub fn certify_at(sys: &SystemSpec, family: &ConicFamily, a0: &Rational) -> Result<Verdict, TransversalError> {
    let conic = family.specialize(a0)?;
    certify(sys, &conic)
}
