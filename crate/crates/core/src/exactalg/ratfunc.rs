//! Univariate rational functions over the rationals, kept in lowest terms.

use std::fmt;

use num_traits::{One, Zero};

use super::ring::{self, Rational};
use super::upoly::UPoly;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.deg() > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        let l = d.lc();
        if !l.is_one() {
            let inv = Rational::one() / l;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFunc {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::from_poly(UPoly::constant(c))
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(UPoly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(UPoly::one())
    }

    /// The indeterminate.
    pub fn var() -> Self {
        RatFunc::from_poly(UPoly::x())
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone())
    }

    /// `None` when dividing by zero.
    pub fn div(&self, o: &RatFunc) -> Option<RatFunc> {
        if o.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.num.mul(&o.den), self.den.mul(&o.num)))
    }

    /// Value at a rational; `None` at a pole.
    pub fn eval(&self, a: &Rational) -> Option<Rational> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(a) / d)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den == UPoly::one() {
            return self.num.display_in(var);
        }
        let den = if self.den.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
            && self.den.coeff(self.den.deg()).is_one()
        {
            let d = self.den.deg();
            if d == 1 {
                var.to_string()
            } else {
                format!("{var}^{d}")
            }
        } else {
            format!("({})", self.den.display_in(var))
        };
        format!("({})/{}", self.num.display_in(var), den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("a0"))
    }
}

impl ring::Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.div(other)
    }
    fn from_i64(n: i64) -> Self {
        RatFunc::constant(ring::int(n))
    }
}
