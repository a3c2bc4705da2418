//! Integer polynomials: the fraction-free workhorse behind gcds, Sturm
//! chains and resultants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::ring::{self, sign_of_int, Rational};

pub type ZPoly = Poly<BigInt>;

impl ring::GcdRing for ZPoly {
    fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return normalize_sign(other.clone());
        }
        if other.is_zero() {
            return normalize_sign(self.clone());
        }
        let c = Integer::gcd(&self.content(), &other.content());
        let g = zgcd_primitive(&self.primitive_part(), &other.primitive_part());
        g.scale(&c)
    }

    fn leading_sign(&self) -> i8 {
        sign_of_int(&self.lc())
    }
}

fn normalize_sign(p: ZPoly) -> ZPoly {
    if p.lc().is_negative() {
        p.neg()
    } else {
        p
    }
}

fn max_norm(p: &ZPoly) -> BigInt {
    p.coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

/// Gcd of two primitive integer polynomials, primitive with positive leading
/// coefficient. Heuristic evaluation gcd first, subresultant PRS as fallback.
pub fn zgcd_primitive(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    if a.deg() == 0 || b.deg() == 0 {
        return ZPoly::one();
    }
    if let Some(g) = heuristic_gcd(a, b) {
        return g;
    }
    a.gcd_subresultant(b)
}

/// Evaluate at a large integer, take the integer gcd and read the polynomial
/// gcd back off its balanced base-`xi` digits. Accepted only if the
/// candidate divides both inputs.
fn heuristic_gcd(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let norm = max_norm(a).min(max_norm(b));
    let mut xi: BigInt = norm * 2 + 29;
    for _ in 0..6 {
        let va = a.eval(&xi);
        let vb = b.eval(&xi);
        let h = va.gcd(&vb);
        if !h.is_zero() {
            let cand = balanced_digits(&h, &xi).primitive_part();
            if !cand.is_zero()
                && a.div_exact_poly(&cand).is_some()
                && b.div_exact_poly(&cand).is_some()
            {
                return Some(cand);
            }
        }
        xi = (&xi * 73794u32) / 27011u32 + 1u32;
    }
    None
}

fn balanced_digits(h: &BigInt, xi: &BigInt) -> ZPoly {
    let mut digits = Vec::new();
    let mut rest = h.clone();
    let half = xi / 2u32;
    while !rest.is_zero() {
        let mut d = rest.mod_floor(xi);
        if d > half {
            d -= xi;
        }
        rest = (&rest - &d) / xi;
        digits.push(d);
    }
    ZPoly::new(digits)
}

/// Clears denominators: returns `(scale, z)` with `p = z / scale`, `scale > 0`
/// and `z` having integer coefficients (not necessarily primitive).
pub fn clear_denominators(p: &Poly<Rational>) -> (BigInt, ZPoly) {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    let z = ZPoly::new(
        p.coeffs()
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect(),
    );
    (l, z)
}

/// Primitive integer polynomial with the same roots and the same sign pattern
/// (the scale factor is positive).
pub fn to_primitive_z(p: &Poly<Rational>) -> ZPoly {
    let (_, z) = clear_denominators(p);
    if z.is_zero() {
        return z;
    }
    let c = z.content();
    z.div_scalar_exact(&c).expect("content divides")
}

pub fn to_rational_poly(z: &ZPoly) -> Poly<Rational> {
    z.map(|c| Rational::from_integer(c.clone()))
}

/// `sign(p(n/d))` for `d > 0`, computed without fractions.
pub fn sign_at(p: &ZPoly, x: &Rational) -> i8 {
    sign_of_int(&homogeneous_eval(p, x))
}

/// `d^deg * p(n/d)` where `x = n/d` in lowest terms with `d > 0`.
pub fn homogeneous_eval(p: &ZPoly, x: &Rational) -> BigInt {
    let n = x.numer();
    let d = x.denom();
    let cs = p.coeffs();
    if cs.is_empty() {
        return BigInt::zero();
    }
    let deg = cs.len() - 1;
    let mut acc = cs[deg].clone();
    let mut dpow = BigInt::one();
    for i in (0..deg).rev() {
        dpow *= d;
        acc = acc * n + &cs[i] * &dpow;
    }
    acc
}

/// `p(x + s)` for integer `s`.
pub fn taylor_shift(p: &ZPoly, s: &BigInt) -> ZPoly {
    let mut c: Vec<BigInt> = p.coeffs().to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = &c[j + 1] * s;
            c[j] += t;
        }
    }
    ZPoly::new(c)
}
