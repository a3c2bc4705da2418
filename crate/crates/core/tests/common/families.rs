//! Glued conic families derived by hand for the corpus systems, with the
//! symbolic axis intercept written `a`.

use pbconic::conicfit::ConicFamily;
use pbconic::exactalg::{int, rat, RatFunc, Rational, UPoly};

/// Polynomial in the symbolic coordinate from ascending coefficients.
pub fn up(c: &[Rational]) -> UPoly {
    UPoly::from_rationals(c)
}

pub fn rf(num: &[Rational], den: &[Rational]) -> RatFunc {
    RatFunc::new(up(num), up(den))
}

pub fn z() -> Rational {
    int(0)
}

/// `c / a^2` as a rational function.
pub fn over_sq(num: &[Rational]) -> RatFunc {
    rf(num, &[z(), z(), int(1)])
}

pub fn assert_family(fam: &ConicFamily, expected: [RatFunc; 5]) {
    for (k, (got, want)) in fam.s.iter().zip(&expected).enumerate() {
        assert_eq!(got, want, "s{} differs: got {}, want {}", k + 1, got, want);
    }
}

pub fn vdp_expected(e: &Rational) -> [RatFunc; 5] {
    let e2 = e * e;
    [
        RatFunc::zero(),
        RatFunc::zero(),
        over_sq(&[int(-1)]),
        // -2 (3 - a^2) e / (3 a^2)
        over_sq(&[-(e * int(2)), z(), e * rat(2, 3)]),
        // (-9 - 9 e^2 + a^4 e^2) / (9 a^2)
        over_sq(&[int(-1) - &e2, z(), z(), z(), &e2 / int(9)]),
    ]
}

pub fn rychkov_expected(d: &Rational) -> [RatFunc; 5] {
    [
        RatFunc::zero(),
        RatFunc::zero(),
        over_sq(&[int(-1)]),
        over_sq(&[d * int(2), z(), int(-2), z(), int(2)]),
        over_sq(&[int(-1) - d * d, z(), z(), z(), int(1) + d * int(2), z(), int(-4), z(), int(3)]),
    ]
}

pub fn quintic_expected(b: &Rational) -> [RatFunc; 5] {
    let b2 = b * b;
    let b4 = &b2 * &b2;
    [
        RatFunc::zero(),
        RatFunc::zero(),
        over_sq(&[-(&b4) - int(1), z(), z(), z(), b4.clone()]),
        over_sq(&[&b2 * int(2), z(), &b2 * int(2)]),
        over_sq(&[int(-1)]),
    ]
}

pub fn quintic2_expected() -> [RatFunc; 5] {
    [
        RatFunc::zero(),
        RatFunc::zero(),
        over_sq(&[int(-1)]),
        over_sq(&[int(8), z(), rat(-49, 5), z(), int(2)]),
        over_sq(&[int(-33), z(), int(38), z(), rat(147, 100), z(), rat(-101, 10), z(), int(2)]),
    ]
}

pub fn quadratic_expected(d: &Rational) -> [RatFunc; 5] {
    let b = up(&[z(), int(1)]);
    let one = up(&[int(1)]);
    let c = |v: Rational| up(&[v]);
    let d2 = d * d;
    let bp1_2 = b.add(&one).pow(2);
    // b0 d + b0 + d
    let lin = b.scale(&(d + int(1))).add(&c(d.clone()));
    let den_inner = up(&[
        &d2 * int(2) - int(9),
        &d2 * int(4) - d * int(14) - int(18),
        &d2 * int(2) - d * int(14) - int(25),
    ]);
    let den = b.pow(2).mul(&den_inner);
    let s1 = b.mul(&bp1_2).mul(&lin).scale(&int(12));
    let s2_inner = up(&[
        z(),
        &d2 * int(2),
        &d2 * int(4) - d * int(14) + int(9),
        &d2 * int(2) - d * int(14) + int(2),
        int(9),
    ]);
    let s2 = s2_inner.scale(&int(-2));
    let s3 = bp1_2.pow(2).scale(&int(9));
    let s4 = bp1_2.mul(&lin).scale(&int(-12));
    let s5 = up(&[
        &d2 * int(2) + int(9),
        &d2 * int(4) - d * int(14) + int(36),
        &d2 * int(2) - d * int(14) + int(29),
        int(18),
    ]);
    [s1, s2, s3, s4, s5].map(|n| RatFunc::new(n, den.clone()))
}
