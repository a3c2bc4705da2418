//! Resultants and subresultants.

use super::poly::Poly;
use super::ring::Ring;

/// `Res(a, b)` by the subresultant remainder sequence (fraction-free over any
/// integral domain with exact division).
pub fn resultant<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> R {
    if a.is_zero() || b.is_zero() {
        return R::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = R::one();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = s.neg();
        }
    }
    if b.deg() == 0 {
        return s.mul(&b.lc().pow(a.deg()));
    }
    let mut g = R::one();
    let mut h = R::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = s.neg();
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor = g.mul(&h.pow(delta));
        b = r
            .div_scalar_exact(&divisor)
            .expect("subresultant division is exact");
        g = a.lc();
        if delta > 0 {
            h = g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update is exact");
        }
        if b.is_zero() {
            return R::zero();
        }
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg();
    let last = if da == 0 {
        R::one()
    } else {
        b.lc()
            .pow(da)
            .div_exact(&h.pow(da - 1))
            .expect("final subresultant step is exact")
    };
    s.mul(&last)
}

/// Determinant by fraction-free Gaussian elimination (Bareiss).
pub fn det_bareiss<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut sign = false;
    let mut prev = R::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// The `j`-th subresultant polynomial `S_j(a, b)` for `j < min(deg a, deg b)`
/// (determinantal definition).
pub fn subresultant<R: Ring>(a: &Poly<R>, b: &Poly<R>, j: usize) -> Poly<R> {
    let (a, b) = if a.deg() >= b.deg() { (a, b) } else { (b, a) };
    let n = a.deg();
    let m = b.deg();
    assert!(j < m, "subresultant index must be below both degrees");
    let cols = n + m - j;
    let mut rows: Vec<Vec<R>> = Vec::new();
    let push_rows = |rows: &mut Vec<Vec<R>>, p: &Poly<R>, count: usize| {
        for k in 0..count {
            // coefficients of x^(count-1-k) * p
            let shift = count - 1 - k;
            let mut row = vec![R::zero(); cols];
            for (e, c) in p.coeffs().iter().enumerate() {
                let exp = e + shift;
                row[cols - 1 - exp] = c.clone();
            }
            rows.push(row);
        }
    };
    push_rows(&mut rows, a, m - j);
    push_rows(&mut rows, b, n - j);
    let size = n + m - 2 * j;
    let mut out = Vec::with_capacity(j + 1);
    for i in 0..=j {
        let col_i = cols - 1 - i;
        let mat: Vec<Vec<R>> = rows
            .iter()
            .map(|r| {
                let mut v: Vec<R> = r[..size - 1].to_vec();
                v.push(r[col_i].clone());
                v
            })
            .collect();
        out.push(det_bareiss(mat));
    }
    Poly::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::int;
    use crate::exactalg::upoly::UPoly;
    use crate::exactalg::zpoly::ZPoly;
    use num_bigint::BigInt;

    fn z(v: &[i64]) -> ZPoly {
        ZPoly::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn sylvester_det(a: &ZPoly, b: &ZPoly) -> BigInt {
        let n = a.deg();
        let m = b.deg();
        let size = n + m;
        let mut rows = Vec::new();
        for k in 0..m {
            let mut row = vec![BigInt::from(0); size];
            for (e, c) in a.coeffs().iter().enumerate() {
                row[size - 1 - (e + m - 1 - k)] = c.clone();
            }
            rows.push(row);
        }
        for k in 0..n {
            let mut row = vec![BigInt::from(0); size];
            for (e, c) in b.coeffs().iter().enumerate() {
                row[size - 1 - (e + n - 1 - k)] = c.clone();
            }
            rows.push(row);
        }
        det_bareiss(rows)
    }

    #[test]
    fn common_root_gives_zero() {
        assert_eq!(resultant(&z(&[-1, 0, 1]), &z(&[-1, 1])), BigInt::from(0));
    }

    #[test]
    fn matches_sylvester_determinant() {
        let cases = [
            (z(&[1, 2, 3, 4]), z(&[5, -1, 2])),
            (z(&[-7, 0, 0, 0, 1]), z(&[3, 1, 0, 2])),
            (z(&[2, -3, 1]), z(&[4, 0, 0, 0, -1, 1])),
            (z(&[1, 1]), z(&[2, 0, 1])),
        ];
        for (a, b) in cases {
            assert_eq!(resultant(&a, &b), sylvester_det(&a, &b), "{a:?} {b:?}");
        }
    }

    #[test]
    fn swap_sign_rule() {
        let a = z(&[1, 2, 3]);
        let b = z(&[5, -1, 2, 7]);
        // Res(b, a) = (-1)^(deg a * deg b) Res(a, b)
        assert_eq!(resultant(&a, &b), resultant(&b, &a));
        let c = z(&[1, 1, 0, 1]);
        assert_eq!(resultant(&b, &c), -resultant(&c, &b));
    }

    #[test]
    fn rational_coefficients() {
        let a = UPoly::from_ints(&[-2, 0, 1]);
        let b = UPoly::from_ints(&[0, 1]);
        // Res(x^2 - 2, x) = -2 up to the sign convention (-1)^(2*1) = 1
        assert_eq!(resultant(&a, &b), int(-2));
    }

    #[test]
    fn first_subresultant_recovers_common_root() {
        // a = (x - 3)(x + 1), b = (x - 3)(x - 5): S_1 is proportional to x - 3
        let a = z(&[-3, -2, 1]);
        let b = z(&[15, -8, 1]);
        let s1 = subresultant(&a, &b, 1);
        assert_eq!(s1.primitive_part(), z(&[-3, 1]));
        // S_0 is the resultant
        assert_eq!(subresultant(&a, &b, 0).coeff(0), resultant(&a, &b));
    }
}
