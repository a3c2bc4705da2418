//! Univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::ring::{sign_of, GcdRing, Rational};
use super::zpoly::{self, to_primitive_z, to_rational_poly, ZPoly};
use super::ExactError;

pub type UPoly = Poly<Rational>;

impl Poly<Rational> {
    pub fn from_ints(v: &[i64]) -> UPoly {
        UPoly::new(v.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn from_rationals(v: &[Rational]) -> UPoly {
        UPoly::new(v.to_vec())
    }

    /// `(x - r)`
    pub fn linear_root(r: &Rational) -> UPoly {
        UPoly::new(vec![-r.clone(), Rational::one()])
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let l = self.lc();
        UPoly::new(self.coeffs().iter().map(|c| c / &l).collect())
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.deg() < d.deg() {
            return (UPoly::zero(), self.clone());
        }
        let dd = d.deg();
        let inv = Rational::one() / d.lc();
        let mut r = self.coeffs().to_vec();
        let mut q = vec![Rational::zero(); self.deg() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs().iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let g = zpoly::zgcd_primitive(&to_primitive_z(self), &to_primitive_z(other));
        to_rational_poly(&g).monic()
    }

    pub fn eval_sign(&self, x: &Rational) -> i8 {
        sign_of(&self.eval(x))
    }

    /// Square-free decomposition by Yun's algorithm.
    ///
    /// Returns `(c, [(f_i, k_i)])` with `self = c * prod f_i^k_i`, every `f_i`
    /// monic, square-free, non-constant and pairwise coprime, `k_i` increasing.
    pub fn squarefree_decompose(&self) -> Result<(Rational, Vec<(UPoly, usize)>), ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let lc = self.lc();
        if self.deg() == 0 {
            return Ok((lc, Vec::new()));
        }
        let z = to_primitive_z(self);
        let factors = squarefree_z(&z);
        let out = factors
            .into_iter()
            .map(|(f, k)| (to_rational_poly(&f).monic(), k))
            .collect();
        Ok((lc, out))
    }

    /// Monic square-free part (product of the distinct irreducible factors).
    pub fn squarefree_part(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        if self.deg() == 0 {
            return UPoly::one();
        }
        let z = to_primitive_z(self);
        let g = zpoly::zgcd_primitive(&z, &z.derivative().primitive_part());
        to_rational_poly(&z.div_exact_poly(&g).expect("gcd divides")).monic()
    }

    /// `x -> -x`
    pub fn reflect(&self) -> UPoly {
        UPoly::new(
            self.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs().iter().map(rational_to_f64).collect()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs().iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    }

    /// Pretty form in the variable `var`, parseable by the system parser.
    pub fn display_in(&self, var: &str) -> String {
        let terms: Vec<(Rational, Vec<(String, usize)>)> = self
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), vec![(var.to_string(), i)]))
            .collect();
        format_terms(&terms)
    }
}

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

/// Square-free decomposition over `Z[x]` of a primitive polynomial.
pub(crate) fn squarefree_z(a: &ZPoly) -> Vec<(ZPoly, usize)> {
    squarefree_generic(a)
}

/// Yun's algorithm over `D[x]` for a gcd domain `D` of characteristic zero.
/// Factors are primitive; the input's content is dropped.
pub(crate) fn squarefree_generic<D: GcdRing>(a: &Poly<D>) -> Vec<(Poly<D>, usize)>
where
    Poly<D>: PolyGcd,
{
    let mut out = Vec::new();
    if a.is_zero() || a.deg() == 0 {
        return out;
    }
    let a = a.primitive_part();
    let b = a.derivative();
    let c = a.poly_gcd(&b);
    let mut w = a.div_exact_poly(&c).expect("gcd divides");
    let mut y = b.div_exact_poly(&c).expect("gcd divides derivative");
    let mut z = y.sub(&w.derivative());
    let mut i = 1;
    while w.deg() > 0 {
        let g = w.poly_gcd(&z);
        if g.deg() > 0 {
            out.push((g.clone(), i));
        }
        w = w.div_exact_poly(&g).expect("gcd divides");
        y = z.div_exact_poly(&g).expect("gcd divides");
        z = y.sub(&w.derivative());
        i += 1;
    }
    out
}

/// Primitive gcd with a per-domain fast path.
pub(crate) trait PolyGcd: Sized {
    fn poly_gcd(&self, other: &Self) -> Self;
}

impl PolyGcd for ZPoly {
    fn poly_gcd(&self, other: &Self) -> Self {
        zpoly::zgcd_primitive(&self.primitive_part(), &other.primitive_part())
    }
}

impl PolyGcd for Poly<ZPoly> {
    fn poly_gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        if self.deg() == 0 || other.deg() == 0 {
            return Poly::one();
        }
        self.gcd_subresultant(other)
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => {
            // scale down huge numerators/denominators before converting
            let nb = q.numer().bits() as i64;
            let db = q.denom().bits() as i64;
            let shift = (nb.max(db) - 900).max(0) as usize;
            let n = q.numer() >> shift;
            let d = q.denom() >> shift;
            let nf = n.to_f64().unwrap_or(0.0);
            let df = d.to_f64().unwrap_or(1.0);
            if df == 0.0 {
                if q.is_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            } else {
                nf / df
            }
        }
    }
}

/// Exact rational from a finite double.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Canonical `p/q` (or `p`) string.
pub fn rational_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Formats a sum of `coeff * var^exp * ...` terms in the parser's syntax.
pub(crate) fn format_terms(terms: &[(Rational, Vec<(String, usize)>)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (idx, (c, vars)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mons: Vec<String> = vars
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if mons.is_empty() {
            s.push_str(&rational_string(&a));
        } else if a.is_one() {
            s.push_str(&mons.join("*"));
        } else {
            s.push_str(&rational_string(&a));
            s.push('*');
            s.push_str(&mons.join("*"));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::{int, rat};

    #[test]
    fn div_rem_reconstructs() {
        let a = UPoly::from_ints(&[1, 2, 3, 4, 5]);
        let b = UPoly::from_ints(&[-1, 0, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn squarefree_of_repeated_root() {
        // (x-1)^2 (x+2)
        let p = UPoly::from_ints(&[-1, 1])
            .pow(2)
            .mul(&UPoly::from_ints(&[2, 1]));
        let (c, fs) = p.squarefree_decompose().unwrap();
        assert_eq!(c, int(1));
        assert_eq!(
            fs,
            vec![(UPoly::from_ints(&[2, 1]), 1), (UPoly::from_ints(&[-1, 1]), 2)]
        );
    }

    #[test]
    fn squarefree_irreducible_quadratic() {
        let p = UPoly::from_ints(&[1, 0, 1]);
        let (_, fs) = p.squarefree_decompose().unwrap();
        assert_eq!(fs, vec![(p.clone(), 1)]);
    }

    #[test]
    fn squarefree_m4_times_quadratic() {
        // m^4 (m^2 + 1), checked by expanding the product back
        let m4 = UPoly::monomial(int(1), 4);
        let p = m4.mul(&UPoly::from_ints(&[1, 0, 1])).scale(&rat(3, 7));
        let (c, fs) = p.squarefree_decompose().unwrap();
        assert_eq!(
            fs,
            vec![(UPoly::from_ints(&[1, 0, 1]), 1), (UPoly::from_ints(&[0, 1]), 4)]
        );
        let mut prod = UPoly::constant(c);
        for (f, k) in &fs {
            prod = prod.mul(&f.pow(*k));
        }
        assert_eq!(prod, p);
    }

    #[test]
    fn zero_has_no_decomposition() {
        assert_eq!(
            UPoly::zero().squarefree_decompose().unwrap_err(),
            ExactError::ZeroPolynomial
        );
    }

    #[test]
    fn gcd_is_monic() {
        let a = UPoly::from_ints(&[-2, 2]).mul(&UPoly::from_ints(&[3, 1]));
        let b = UPoly::from_ints(&[-3, 3]).mul(&UPoly::from_ints(&[5, 1]));
        assert_eq!(a.gcd(&b), UPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn display_is_readable() {
        let p = UPoly::new(vec![rat(-1, 2), int(0), int(3)]);
        assert_eq!(p.display_in("m"), "3*m^2 - 1/2");
    }
}
