use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntPoly, RatPoly};
use crate::error::{domain, Error, Result};
use crate::factorize;

/// Determinant of a square integer matrix by fraction-free elimination.
pub(crate) fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Sylvester resultant `Res(a, b)`.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (m, n) = (a.degree(), b.degree());
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.coeffs().iter().rev().enumerate() {
            s[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.coeffs().iter().rev().enumerate() {
            s[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(s)
}

type Mat = Vec<Vec<BigInt>>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut c = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                c[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    c
}

fn mat_pow(a: &Mat, mut e: usize) -> Mat {
    let n = a.len();
    let mut result: Mat = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    result
}

/// Elementary symmetric functions `e_0..e_d` of `gamma_i^n`, where the
/// `gamma_i = lc * alpha_i` are the (integral) roots of the scaled monic
/// polynomial. Computed from traces of powers of the companion matrix.
fn scaled_power_symmetric(m: &IntPoly, n: usize) -> Vec<BigInt> {
    let d = m.degree();
    let lc = m.lc();
    // monic polynomial with roots lc * alpha_i: coefficients a_k lc^(d-1-k)
    let mut lpow = BigInt::one();
    let mut b = vec![BigInt::zero(); d];
    for k in (0..d).rev() {
        b[k] = &m.coeffs()[k] * &lpow;
        lpow *= &lc;
    }
    let mut comp = vec![vec![BigInt::zero(); d]; d];
    for i in 0..d {
        comp[i][d - 1] = -&b[i];
        if i + 1 < d {
            comp[i + 1][i] = BigInt::one();
        }
    }
    let cn = mat_pow(&comp, n);
    let mut power_sums = Vec::with_capacity(d);
    let mut acc = cn.clone();
    for k in 1..=d {
        power_sums.push((0..d).map(|i| acc[i][i].clone()).sum::<BigInt>());
        if k < d {
            acc = mat_mul(&acc, &cn);
        }
    }
    let mut e = vec![BigInt::one()];
    for k in 1..=d {
        let mut s = BigInt::zero();
        for i in 1..=k {
            let t = &e[k - i] * &power_sums[i - 1];
            if i % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        let (q, r) = s.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        e.push(q);
    }
    e
}

/// The monic polynomial `prod (x - alpha_i^n)` over all roots of `m`.
pub fn power_map_charpoly(m: &IntPoly, n: usize) -> Result<RatPoly> {
    if m.degree() == 0 || n == 0 {
        return domain("power map needs a nonconstant polynomial and n >= 1");
    }
    let d = m.degree();
    let e = scaled_power_symmetric(m, n);
    let lcn = m.lc().pow(n as u32);
    let mut coeffs = vec![BigRational::zero(); d + 1];
    let mut den = BigInt::one();
    for (k, ek) in e.iter().enumerate() {
        let v = BigRational::new(ek.clone(), den.clone());
        coeffs[d - k] = if k % 2 == 1 { -v } else { v };
        den *= &lcn;
    }
    Ok(RatPoly::new(coeffs))
}

/// `Res_y(m(y), x - y^n) = lc(m)^n prod (x - alpha_i^n)`, an integer polynomial.
pub fn power_resultant(m: &IntPoly, n: usize) -> Result<IntPoly> {
    let q = power_map_charpoly(m, n)?;
    let lcn = BigRational::from_integer(m.lc().pow(n as u32));
    q.scale(&lcn)
        .to_int()
        .ok_or_else(|| Error::Internal("power resultant is not integral".into()))
}

/// Minimal polynomial of `alpha^n` for a root `alpha` of the irreducible `m`.
///
/// All conjugates of `alpha` share this polynomial, so no root is needed.
/// The factor is singled out exactly: it is the unique irreducible factor
/// `f` of the power resultant with `m(y) | f(y^n)`.
pub fn power_map_minpoly(m: &IntPoly, n: usize) -> Result<IntPoly> {
    let m = m.primitive_normalized();
    let r = power_resultant(&m, n)?;
    let sq = r.squarefree_part()?;
    let mut found = None;
    for (f, _) in factorize::factor_over_q(&sq)? {
        if f.compose_power(n).div_exact(&m).is_some() {
            if found.is_some() {
                return Err(Error::Domain("input is not irreducible".into()));
            }
            found = Some(f);
        }
    }
    let f = found.ok_or_else(|| Error::Internal("no factor vanishes at alpha^n".into()))?;
    Ok(f.primitive_normalized())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn resultant_small() {
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-2, 1])), BigInt::from(-1));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-1, 0, 1])), BigInt::from(4));
        assert!(resultant(&p(&[-1, 0, 1]), &p(&[-1, 1])).is_zero());
    }

    #[test]
    fn power_resultant_matches_sylvester() {
        let m = p(&[2, -2, 3, -2, 3, -2, 2]);
        for n in 1..5usize {
            let r = power_resultant(&m, n).unwrap();
            for x in -3i64..=3 {
                let mut b = vec![BigInt::zero(); n + 1];
                b[0] = BigInt::from(x);
                b[n] = BigInt::from(-1);
                let direct = resultant(&m, &IntPoly::new(b));
                assert_eq!(r.eval(&BigInt::from(x)), direct, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn minpoly_examples() {
        assert_eq!(power_map_minpoly(&p(&[2, -2, 1]), 2).unwrap(), p(&[4, 0, 1]));
        assert_eq!(power_map_minpoly(&p(&[2, 0, 1]), 2).unwrap(), p(&[2, 1]));
        let eight = p(&[2, 4, 2, -4, -7, -4, 2, 4, 2]);
        assert_eq!(power_map_minpoly(&eight, 8).unwrap(), p(&[16, 8, 1, 8, 16]));
    }
}
