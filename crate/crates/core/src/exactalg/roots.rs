//! Sturm chains, real-root isolation and real algebraic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ring::{sign_of, sign_of_int, Rational};
use super::upoly::{rational_to_f64, UPoly};
use super::zpoly::{self, to_primitive_z, to_rational_poly, ZPoly};
use super::ExactError;

/// Interval endpoint that may be infinite.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

/// Sturm chain of a square-free integer polynomial, every member scaled by a
/// positive constant so that sign variations are preserved.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<ZPoly>,
}

impl SturmChain {
    /// Chain of the square-free part of `p`.
    pub fn new(p: &UPoly) -> Result<Self, ExactError> {
        if p.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let z = to_primitive_z(&p.squarefree_part());
        Ok(Self::from_squarefree_z(z))
    }

    pub(crate) fn from_squarefree_z(p: ZPoly) -> Self {
        let mut seq = vec![p.clone()];
        if p.deg() == 0 {
            return SturmChain { seq };
        }
        let d = p.derivative().primitive_part();
        seq.push(d);
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            if b.deg() == 0 {
                break;
            }
            let delta = a.deg() - b.deg();
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            // -rem(a, b) up to a positive factor
            let lc_sign = sign_of_int(&b.lc());
            let flip = if lc_sign < 0 && (delta + 1) % 2 == 1 { 1 } else { -1 };
            let mut next = r.primitive_part();
            // primitive_part forces a positive leading coefficient, restore the sign
            if sign_of_int(&r.lc()) * flip < 0 {
                next = next.neg();
            }
            seq.push(next);
        }
        SturmChain { seq }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn base(&self) -> &ZPoly {
        &self.seq[0]
    }

    pub fn variations(&self, at: &Bound) -> usize {
        let signs = self.seq.iter().map(|p| match at {
            Bound::Finite(x) => zpoly::sign_at(p, x),
            Bound::PosInf => sign_of_int(&p.lc()),
            Bound::NegInf => {
                let s = sign_of_int(&p.lc());
                if p.deg() % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        });
        count_variations(signs)
    }

    /// Number of distinct roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        let a = self.variations(lo);
        let b = self.variations(hi);
        a.saturating_sub(b)
    }
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
pub fn sturm_count(p: &UPoly, lo: &Bound, hi: &Bound) -> Result<usize, ExactError> {
    let chain = SturmChain::new(p)?;
    Ok(chain.count(lo, hi))
}

/// Power of two strictly larger than the absolute value of every root.
pub fn root_bound(p: &ZPoly) -> Rational {
    let lc_bits = p.lc().abs().bits() as i64;
    let max_bits = p
        .coeffs()
        .iter()
        .map(|c| c.abs().bits() as i64)
        .max()
        .unwrap_or(0);
    let e = (max_bits - lc_bits + 2).max(1) as usize;
    Rational::from_integer(BigInt::one() << e)
}

/// A real algebraic number: the unique root of a square-free polynomial in
/// `(lo, hi]`, or an exact rational when `lo == hi`.
#[derive(Clone)]
pub struct AlgebraicReal {
    poly: ZPoly,
    lo: Rational,
    hi: Rational,
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraicReal")
            .field("poly", &to_rational_poly(&self.poly).display_in("t"))
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .finish()
    }
}

impl AlgebraicReal {
    pub fn rational(r: Rational) -> Self {
        let p = to_primitive_z(&UPoly::linear_root(&r));
        AlgebraicReal {
            poly: p,
            lo: r.clone(),
            hi: r,
        }
    }

    /// `poly` must be square-free with exactly one root in `(lo, hi]`.
    pub(crate) fn from_parts(poly: ZPoly, lo: Rational, hi: Rational) -> Self {
        let mut a = AlgebraicReal { poly, lo, hi };
        a.normalize();
        a
    }

    /// Builds the root of `p` lying in `(lo, hi]`, checking uniqueness.
    pub fn new(p: &UPoly, lo: Rational, hi: Rational) -> Result<Self, ExactError> {
        let z = to_primitive_z(&p.squarefree_part());
        let chain = SturmChain::from_squarefree_z(z.clone());
        let n = chain.count(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()));
        if n != 1 {
            return Err(ExactError::NotIsolating(n));
        }
        Ok(Self::from_parts(z, lo, hi))
    }

    fn normalize(&mut self) {
        if self.lo != self.hi && zpoly::sign_at(&self.poly, &self.hi) == 0 {
            self.lo = self.hi.clone();
        }
        if self.lo == self.hi {
            // exact rational root: replace the defining polynomial by the linear one
            let r = self.hi.clone();
            self.poly = to_primitive_z(&UPoly::linear_root(&r));
        }
    }

    pub fn defining_poly(&self) -> UPoly {
        to_rational_poly(&self.poly)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.lo == self.hi).then_some(&self.hi)
    }

    /// The value when it is rational (collapsed interval or linear defining polynomial).
    pub fn exact_rational(&self) -> Option<Rational> {
        if let Some(r) = self.as_rational() {
            return Some(r.clone());
        }
        // a rational root n/q of the primitive integer polynomial has q | lc,
        // so lc * root is an integer
        let lc = Rational::from_integer(self.poly.lc().abs());
        let mut a = self.clone();
        a.refine_to_width(&(Rational::one() / (&lc * Rational::from_integer(BigInt::from(2)))));
        if let Some(r) = a.as_rational() {
            return Some(r.clone());
        }
        let n = (&a.hi * &lc).floor();
        let cand = &n / &lc;
        // the root lies in (lo, hi], so a candidate equal to lo is another root
        (cand > a.lo && cand <= a.hi && zpoly::sign_at(&self.poly, &cand) == 0).then_some(cand)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// One bisection step.
    pub fn bisect(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let mid = (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2));
        let s_mid = zpoly::sign_at(&self.poly, &mid);
        if s_mid == 0 {
            self.lo = mid.clone();
            self.hi = mid;
            self.normalize();
            return;
        }
        let s_hi = zpoly::sign_at(&self.poly, &self.hi);
        if s_mid == s_hi {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refine_to_width(&mut self, w: &Rational) {
        while self.width() > *w {
            self.bisect();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut a = self.clone();
        let tol = Rational::new(BigInt::one(), BigInt::one() << 60);
        let scale = self.hi.abs().max(self.lo.abs()).max(Rational::one());
        a.refine_to_width(&(tol * scale));
        rational_to_f64(&a.hi)
    }

    /// Exact sign of `q` at this number.
    pub fn sign_of(&self, q: &UPoly) -> i8 {
        if q.is_zero() {
            return 0;
        }
        let mut a = self.clone();
        // cheap rigorous enclosures first; exact Sturm counting only near zeros of q
        for _ in 0..8 {
            if let Some(r) = a.as_rational() {
                return sign_of(&q.eval(r));
            }
            let (lo, hi) = horner_enclosure(q, &a.lo, &a.hi);
            if lo > Rational::zero() {
                return 1;
            }
            if hi < Rational::zero() {
                return -1;
            }
            for _ in 0..8 {
                a.bisect();
            }
        }
        if let Some(r) = a.as_rational() {
            return sign_of(&q.eval(r));
        }
        let qz = to_primitive_z(q);
        let scale_sign = sign_of(&q.lc()) * sign_of_int(&qz.lc());
        let g = zpoly::zgcd_primitive(&self.poly, &qz);
        if g.deg() > 0 {
            let gchain = SturmChain::from_squarefree_z(g);
            if gchain.count(&Bound::Finite(a.lo.clone()), &Bound::Finite(a.hi.clone())) > 0 {
                return 0;
            }
        }
        let qchain = SturmChain::from_squarefree_z(
            zpoly::to_primitive_z(&to_rational_poly(&qz).squarefree_part()),
        );
        loop {
            if let Some(r) = a.as_rational() {
                return sign_of_int(&zpoly::homogeneous_eval(&qz, r)) * scale_sign;
            }
            let n = qchain.count(&Bound::Finite(a.lo.clone()), &Bound::Finite(a.hi.clone()));
            if n == 0 {
                return zpoly::sign_at(&qz, &a.hi) * scale_sign;
            }
            a.bisect();
        }
    }

    /// Replaces the isolating interval by the exact value when it is rational.
    pub fn collapse_if_rational(&mut self) {
        if let Some(r) = self.exact_rational() {
            self.lo = r.clone();
            self.hi = r;
        }
    }

    /// Compares with a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        if let Some(x) = self.as_rational() {
            return x.cmp(r);
        }
        if *r <= self.lo {
            return Ordering::Greater;
        }
        if *r > self.hi {
            return Ordering::Less;
        }
        if zpoly::sign_at(&self.poly, r) == 0 {
            return Ordering::Equal;
        }
        let mut a = self.clone();
        loop {
            a.bisect();
            if let Some(x) = a.as_rational() {
                return x.cmp(r);
            }
            if *r <= a.lo {
                return Ordering::Greater;
            }
            if *r >= a.hi {
                return Ordering::Less;
            }
        }
    }

    /// True if both describe the same real number.
    pub fn same_as(&self, other: &AlgebraicReal) -> bool {
        if let Some(r) = other.as_rational() {
            return self.cmp_rational(r) == Ordering::Equal;
        }
        if let Some(r) = self.as_rational() {
            return other.cmp_rational(r) == Ordering::Equal;
        }
        let g = zpoly::zgcd_primitive(&self.poly, &other.poly);
        if g.deg() == 0 {
            return false;
        }
        let gc = SturmChain::from_squarefree_z(g);
        let on_g = |a: &AlgebraicReal| {
            gc.count(&Bound::Finite(a.lo.clone()), &Bound::Finite(a.hi.clone())) > 0
        };
        if !on_g(self) || !on_g(other) {
            return false;
        }
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi <= b.lo || b.hi <= a.lo {
                return false;
            }
            let l = (&a.lo).min(&b.lo).clone();
            let h = (&a.hi).max(&b.hi).clone();
            if gc.count(&Bound::Finite(l), &Bound::Finite(h)) == 1 {
                return true;
            }
            a.bisect();
            b.bisect();
        }
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

/// One isolated root with its multiplicity in the queried polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct IsolatedRoot {
    pub root: AlgebraicReal,
    pub multiplicity: usize,
}

/// Disjoint isolating intervals for the distinct real roots, in increasing order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Isolation {
    pub roots: Vec<IsolatedRoot>,
}

impl Isolation {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn intervals(&self) -> Vec<(Rational, Rational)> {
        self.roots
            .iter()
            .map(|r| (r.root.lo.clone(), r.root.hi.clone()))
            .collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.roots.iter().map(|r| r.multiplicity).collect()
    }

    pub fn refine_to_width(&mut self, w: &Rational) {
        for r in &mut self.roots {
            r.root.refine_to_width(w);
        }
    }

    pub fn approximations(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.root.to_f64()).collect()
    }
}

/// Isolates the roots of a square-free primitive integer polynomial in `(lo, hi]`.
pub(crate) fn isolate_squarefree_in(p: &ZPoly, lo: &Rational, hi: &Rational) -> Vec<AlgebraicReal> {
    let mut out = Vec::new();
    if p.deg() == 0 {
        return out;
    }
    let chain = SturmChain::from_squarefree_z(p.clone());
    let mut stack = vec![(lo.clone(), hi.clone(), None::<usize>)];
    let two = Rational::from_integer(BigInt::from(2));
    while let Some((a, b, known)) = stack.pop() {
        let n = known.unwrap_or_else(|| {
            chain.count(&Bound::Finite(a.clone()), &Bound::Finite(b.clone()))
        });
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(AlgebraicReal::from_parts(p.clone(), a, b));
            continue;
        }
        let mid = (&a + &b) / &two;
        let left = chain.count(&Bound::Finite(a.clone()), &Bound::Finite(mid.clone()));
        stack.push((mid.clone(), b, Some(n - left)));
        stack.push((a, mid, Some(left)));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

fn isolate_squarefree(p: &ZPoly) -> Vec<AlgebraicReal> {
    if p.deg() == 0 {
        return Vec::new();
    }
    let b = root_bound(p);
    isolate_squarefree_in(p, &-b.clone(), &b)
}

pub(crate) fn separate(mut roots: Vec<IsolatedRoot>) -> Vec<IsolatedRoot> {
    // roots of coprime factors are distinct; bisect overlapping intervals apart
    loop {
        roots.sort_by(|x, y| x.root.lo.cmp(&y.root.lo));
        let mut clash = None;
        for i in 1..roots.len() {
            let (a, b) = (&roots[i - 1].root, &roots[i].root);
            let disjoint = a.hi < b.lo || (a.hi == b.lo && a.lo != a.hi && b.lo != b.hi)
                || (a.hi == b.lo && a.as_rational().is_some() && b.as_rational().is_none())
                || (a.hi == b.lo && a.as_rational().is_none() && b.as_rational().is_none());
            if !disjoint || (a.lo == b.lo && a.hi == b.hi) {
                clash = Some(i);
                break;
            }
        }
        match clash {
            None => return roots,
            Some(i) => {
                roots[i - 1].root.bisect();
                roots[i].root.bisect();
            }
        }
    }
}

/// Isolates all distinct real roots of `p`, with multiplicities.
pub fn isolate_real_roots(p: &UPoly) -> Result<Isolation, ExactError> {
    let (_, factors) = p.squarefree_decompose()?;
    let mut roots = Vec::new();
    for (f, k) in factors {
        for r in isolate_squarefree(&to_primitive_z(&f)) {
            roots.push(IsolatedRoot {
                root: r,
                multiplicity: k,
            });
        }
    }
    Ok(Isolation {
        roots: separate(roots),
    })
}

/// Isolates the distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn isolate_real_roots_in(p: &UPoly, lo: &Rational, hi: &Rational) -> Result<Isolation, ExactError> {
    let (_, factors) = p.squarefree_decompose()?;
    let mut roots = Vec::new();
    for (f, k) in factors {
        let z = to_primitive_z(&f);
        for r in isolate_squarefree_in(&z, lo, hi) {
            if r.as_rational() == Some(hi) {
                continue;
            }
            roots.push(IsolatedRoot {
                root: r,
                multiplicity: k,
            });
        }
    }
    Ok(Isolation {
        roots: separate(roots),
    })
}

/// A point at which a sign is requested.
#[derive(Clone, Debug)]
pub enum SignPoint {
    Rational(Rational),
    Algebraic(AlgebraicReal),
    /// An interval without a defining polynomial; decidable only if the
    /// polynomial has no root in `[lo, hi]`.
    Interval(Rational, Rational),
}

/// Exact sign of `p` at a rational or algebraic point.
pub fn sign_at(p: &UPoly, point: &SignPoint) -> Result<i8, ExactError> {
    match point {
        SignPoint::Rational(r) => Ok(sign_of(&p.eval(r))),
        SignPoint::Algebraic(a) => Ok(a.sign_of(p)),
        SignPoint::Interval(lo, hi) => {
            if p.is_zero() {
                return Ok(0);
            }
            let s_lo = sign_of(&p.eval(lo));
            let n = sturm_count(p, &Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()))?;
            if n == 0 && s_lo != 0 {
                Ok(s_lo)
            } else {
                Err(ExactError::UndecidableWithoutDefiningPoly)
            }
        }
    }
}

/// The rational with the smallest denominator (then numerator) in the open
/// interval `(lo, hi)`.
/// Enclosure of `p` over `[lo, hi]` by interval Horner evaluation.
fn horner_enclosure(p: &UPoly, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    for c in p.coeffs().iter().rev() {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        a = prods.iter().min().expect("four").clone() + c;
        b = prods.iter().max().expect("four").clone() + c;
    }
    (a, b)
}

pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "empty interval");
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !lo.is_negative() {
        return simplest_positive(lo, hi);
    }
    -simplest_positive(&-hi.clone(), &-lo.clone())
}

// 0 <= lo < hi, open interval
fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    let candidate = &fl + Rational::one();
    if candidate < *hi {
        return candidate;
    }
    // lo and hi share the integer part (hi may equal fl + 1)
    let frac_lo = lo - &fl;
    let frac_hi = hi - &fl;
    if frac_lo.is_zero() {
        // interval (fl, fl + frac_hi): take fl + 1/n with 1/n < frac_hi
        let n = (Rational::one() / &frac_hi).floor() + Rational::one();
        return fl + Rational::one() / n;
    }
    // recurse on reciprocals: (1/frac_hi, 1/frac_lo)
    let inner = simplest_positive(&(Rational::one() / frac_hi), &(Rational::one() / frac_lo));
    fl + Rational::one() / inner
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::{int, rat};

    #[test]
    fn sturm_count_examples() {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &Bound::Finite(int(0)), &Bound::Finite(int(2))).unwrap(), 1);
        let q = UPoly::from_ints(&[1, 0, 1]);
        assert_eq!(sturm_count(&q, &Bound::NegInf, &Bound::PosInf).unwrap(), 0);
        // (x-1)^2 (x+3)
        let r = UPoly::from_ints(&[-1, 1]).pow(2).mul(&UPoly::from_ints(&[3, 1]));
        assert_eq!(sturm_count(&r, &Bound::NegInf, &Bound::PosInf).unwrap(), 2);
        assert_eq!(
            sturm_count(&UPoly::zero(), &Bound::NegInf, &Bound::PosInf).unwrap_err(),
            ExactError::ZeroPolynomial
        );
    }

    #[test]
    fn half_open_convention() {
        // root at 1 counted in (0, 1] but not in (1, 2]
        let p = UPoly::from_ints(&[-1, 1]);
        assert_eq!(sturm_count(&p, &Bound::Finite(int(0)), &Bound::Finite(int(1))).unwrap(), 1);
        assert_eq!(sturm_count(&p, &Bound::Finite(int(1)), &Bound::Finite(int(2))).unwrap(), 0);
    }

    #[test]
    fn isolates_sqrt_two() {
        let iso = isolate_real_roots(&UPoly::from_ints(&[-2, 0, 1])).unwrap();
        assert_eq!(iso.len(), 2);
        assert_eq!(iso.multiplicities(), vec![1, 1]);
        let v = iso.approximations();
        assert!((v[0] + 2f64.sqrt()).abs() < 1e-12);
        assert!((v[1] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn cubic_at_delta_minus_two() {
        // u^3 + 2u^2 - 1 = (u + 1)(u^2 + u - 1)
        let p = UPoly::from_ints(&[-1, 0, 2, 1]);
        // independent check by direct evaluation at -2, -3/2, -1, 0, 1
        let pts = [int(-2), rat(-3, 2), int(-1), int(0), int(1)];
        let signs: Vec<i8> = pts.iter().map(|x| p.eval_sign(x)).collect();
        assert_eq!(signs, vec![-1, 1, 0, -1, 1]);
        let iso = isolate_real_roots(&p).unwrap();
        assert_eq!(iso.len(), 3);
        assert!(iso.roots.iter().any(|r| r.root.as_rational() == Some(&int(-1))));
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&UPoly::from_ints(&[1, 1, 1])).unwrap().is_empty());
    }

    #[test]
    fn sign_at_examples() {
        let p = UPoly::from_ints(&[-3, 0, 1]);
        assert_eq!(sign_at(&p, &SignPoint::Rational(int(2))).unwrap(), 1);
        let l = UPoly::from_ints(&[-1, 1]);
        assert_eq!(sign_at(&l, &SignPoint::Rational(int(1))).unwrap(), 0);
        // f~(u, 0) = -1 + 2u + u^2 at the root of u^3 + 2u^2 - 1 in (0, 1)
        let cubic = UPoly::from_ints(&[-1, 0, 2, 1]);
        let u1 = AlgebraicReal::new(&cubic, int(0), int(1)).unwrap();
        let ft = UPoly::from_ints(&[-1, 2, 1]);
        assert_eq!(sign_at(&ft, &SignPoint::Algebraic(u1.clone())).unwrap(), 1);
        // exact zero through the gcd test
        let fac = UPoly::from_ints(&[-1, 1, 1]);
        assert_eq!(u1.sign_of(&fac), 0);
        assert_eq!(
            sign_at(&p, &SignPoint::Interval(int(1), int(2))).unwrap_err(),
            ExactError::UndecidableWithoutDefiningPoly
        );
        assert_eq!(sign_at(&p, &SignPoint::Interval(int(2), int(3))).unwrap(), 1);
    }

    #[test]
    fn compare_with_rational() {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        let s = AlgebraicReal::new(&p, int(1), int(2)).unwrap();
        assert_eq!(s.cmp_rational(&rat(141, 100)), Ordering::Greater);
        assert_eq!(s.cmp_rational(&rat(142, 100)), Ordering::Less);
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(2, 5));
        assert_eq!(simplest_between(&rat(-7, 2), &rat(-3, 1)), rat(-10, 3));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 3)), int(0));
        assert_eq!(simplest_between(&rat(2, 1), &rat(7, 2)), int(3));
        assert_eq!(simplest_between(&rat(3, 1), &rat(31, 10)), rat(34, 11));
        let s = simplest_between(&rat(937, 1000), &rat(938, 1000));
        assert!(s > rat(937, 1000) && s < rat(938, 1000));
        assert!(s.denom() <= &BigInt::from(1000));
    }

    #[test]
    fn same_number_two_ways() {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        let q = UPoly::from_ints(&[-2, 0, 1]).mul(&UPoly::from_ints(&[-5, 1]));
        let a = AlgebraicReal::new(&p, int(1), int(2)).unwrap();
        let b = AlgebraicReal::new(&q, rat(13, 10), int(3)).unwrap();
        assert!(a.same_as(&b));
        let c = AlgebraicReal::new(&UPoly::from_ints(&[-3, 0, 1]), int(1), int(2)).unwrap();
        assert!(!a.same_as(&c));
    }
}
