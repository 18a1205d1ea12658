//! Reciprocal polynomials and their trace polynomials.
//!
//! A reciprocal polynomial of degree `d = 2n` is determined by its half
//! coefficients `c_0..c_n`. Substituting `y = x + 1/x` into `x^-n p(x)`
//! gives the trace polynomial `g(y) = sum c_j T*_{n-j}(y)`, where
//! `T*_k(x + 1/x) = x^k + x^-k`. Every root of `p` lies on the unit circle
//! exactly when every root of `g` is real and lies in `[-2, 2]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::intpoly::{count_real_roots_closed, IntPoly};

/// Half coefficients `(c_0, ..., c_{d/2})` of a reciprocal polynomial of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfCoeffs {
    d: usize,
    #[serde(with = "crate::serde_big::vec")]
    coeffs: Vec<BigInt>,
}

impl HalfCoeffs {
    pub fn new(d: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        if d == 0 || d % 2 == 1 {
            return domain(format!("degree must be even and positive, got {d}"));
        }
        if coeffs.len() != d / 2 + 1 {
            return domain(format!(
                "degree {d} needs {} half coefficients, got {}",
                d / 2 + 1,
                coeffs.len()
            ));
        }
        if coeffs[0].is_zero() {
            return domain("leading half coefficient must be nonzero");
        }
        Ok(HalfCoeffs { d, coeffs })
    }

    pub fn from_i64s(d: usize, c: &[i64]) -> Result<Self> {
        Self::new(d, c.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Half coefficients of a reciprocal polynomial of even degree.
    pub fn of_reciprocal(p: &IntPoly) -> Result<Self> {
        if p.is_zero() || p.degree() % 2 == 1 || !p.is_reciprocal()? {
            return domain("expected a reciprocal polynomial of even degree");
        }
        let n = p.degree() / 2;
        Self::new(p.degree(), p.coeffs()[..=n].to_vec())
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn lead(&self) -> &BigInt {
        &self.coeffs[0]
    }
}

/// Chebyshev-type recurrence with `T*_0 = 2` inside the recurrence, so that
/// `T*_k(x + 1/x) = x^k + x^-k` for every `k >= 1`.
fn cheb_table(n: usize) -> Vec<IntPoly> {
    let y = IntPoly::from_i64s(&[0, 1]);
    let mut t = vec![IntPoly::from_i64s(&[2]), y.clone()];
    for k in 2..=n {
        let next = &(&y * &t[k - 1]) - &t[k - 2];
        t.push(next);
    }
    t.truncate(n + 1);
    t
}

/// `T*_n`: `1` for `n = 0`, otherwise the monic polynomial with
/// `T*_n(x + 1/x) = x^n + x^-n`.
pub fn cheb_star(n: usize) -> IntPoly {
    if n == 0 {
        return IntPoly::one();
    }
    cheb_table(n).pop().expect("table has n + 1 entries")
}

/// `c_n x^n + sum_{j<n} c_j (x^j + x^(d-j))`.
pub fn expand_reciprocal(h: &HalfCoeffs) -> IntPoly {
    let n = h.d / 2;
    let mut v = vec![BigInt::zero(); h.d + 1];
    for (j, c) in h.coeffs.iter().enumerate() {
        v[j] = c.clone();
        v[h.d - j] = c.clone();
    }
    debug_assert_eq!(v[n], h.coeffs[n]);
    IntPoly::new(v)
}

/// `g(y) = sum_j c_j T*_{n-j}(y)`.
pub fn trace_poly(h: &HalfCoeffs) -> IntPoly {
    let n = h.d / 2;
    let table = cheb_table(n);
    let mut g = IntPoly::zero();
    for (j, c) in h.coeffs.iter().enumerate() {
        let t = if j == n {
            IntPoly::one()
        } else {
            table[n - j].clone()
        };
        g = &g + &t.scale(c);
    }
    g
}

/// Trace polynomial of a reciprocal polynomial of even degree.
pub fn trace_of_reciprocal(p: &IntPoly) -> Result<IntPoly> {
    Ok(trace_poly(&HalfCoeffs::of_reciprocal(p)?))
}

/// Roots of `g` in `[-2, 2]` counted with multiplicity.
pub fn circle_root_count(h: &HalfCoeffs) -> usize {
    let g = trace_poly(h);
    let two = BigRational::from_integer(2.into());
    let mut count = 0;
    for (f, mult) in g.squarefree_decomposition().expect("g is nonzero") {
        let k = count_real_roots_closed(&f, &-two.clone(), &two).expect("f is nonzero");
        count += k * mult;
    }
    count
}

/// True iff every root of the reciprocal polynomial lies on the unit circle.
pub fn all_roots_on_circle(h: &HalfCoeffs) -> bool {
    circle_root_count(h) == h.d / 2
}

/// Trace polynomials for small coefficients, in machine integers.
///
/// Holds the `T*` table for one half degree so that the survey can screen
/// candidates without allocating big integers.
#[derive(Clone, Debug)]
pub struct SmallTrace {
    n: usize,
    table: Vec<Vec<i128>>,
}

impl SmallTrace {
    pub fn new(n: usize) -> Self {
        let mut table: Vec<Vec<i128>> = Vec::with_capacity(n + 1);
        for (k, t) in cheb_table(n).into_iter().enumerate() {
            let row = if k == 0 {
                vec![1]
            } else {
                t.coeffs()
                    .iter()
                    .map(|c| i128::try_from(c).expect("Chebyshev coefficients fit i128"))
                    .collect()
            };
            table.push(row);
        }
        SmallTrace { n, table }
    }

    /// Coefficients of `g`, ascending, from half coefficients `c_0..c_n`.
    pub fn trace(&self, c: &[i64]) -> Vec<i128> {
        debug_assert_eq!(c.len(), self.n + 1);
        let mut g = vec![0i128; self.n + 1];
        for (j, &cj) in c.iter().enumerate() {
            for (i, t) in self.table[self.n - j].iter().enumerate() {
                g[i] += cj as i128 * t;
            }
        }
        g
    }

    /// Necessary condition for all roots of `g` to lie in `[-2, 2]`:
    /// `g(y + 2)` has no sign changes and `g(y - 2)` strictly alternates
    /// (zeros allowed). Real-rootedness is not checked here.
    pub fn passes_interval_screen(g: &[i128]) -> bool {
        let n = g.len() - 1;
        let lead_pos = g[n] > 0;
        let plus = taylor_shift_small(g, 2);
        if plus.iter().any(|&v| v != 0 && (v > 0) != lead_pos) {
            return false;
        }
        let minus = taylor_shift_small(g, -2);
        minus
            .iter()
            .enumerate()
            .all(|(j, &v)| v == 0 || ((v > 0) == lead_pos) == (n - j).is_multiple_of(2))
    }
}

fn taylor_shift_small(g: &[i128], a: i128) -> Vec<i128> {
    let mut c = g.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            c[j] += c[j + 1] * a;
        }
    }
    c
}

/// Full circle test on small half coefficients: machine-integer screen,
/// then exact Sturm counting.
pub fn all_roots_on_circle_small(tr: &SmallTrace, c: &[i64]) -> bool {
    let g = tr.trace(c);
    if !SmallTrace::passes_interval_screen(&g) {
        return false;
    }
    let h = HalfCoeffs::from_i64s(2 * (c.len() - 1), c).expect("valid half coefficients");
    all_roots_on_circle(&h)
}

/// Circle roots of `p` via its trace polynomial, `p` reciprocal of even degree.
pub fn reciprocal_circle_count(p: &IntPoly) -> Result<usize> {
    let h = HalfCoeffs::of_reciprocal(p)?;
    Ok(2 * circle_root_count(&h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheb_examples() {
        assert_eq!(cheb_star(0), IntPoly::from_i64s(&[1]));
        assert_eq!(cheb_star(1), IntPoly::from_i64s(&[0, 1]));
        assert_eq!(cheb_star(2), IntPoly::from_i64s(&[-2, 0, 1]));
        assert_eq!(cheb_star(3), IntPoly::from_i64s(&[0, -3, 0, 1]));
    }

    #[test]
    fn expansion_examples() {
        let h = HalfCoeffs::from_i64s(2, &[2, 3]).unwrap();
        assert_eq!(expand_reciprocal(&h), IntPoly::from_i64s(&[2, 3, 2]));
        assert_eq!(trace_poly(&h), IntPoly::from_i64s(&[3, 2]));
        let h = HalfCoeffs::from_i64s(2, &[1, -1]).unwrap();
        assert_eq!(expand_reciprocal(&h), IntPoly::from_i64s(&[1, -1, 1]));
        assert_eq!(trace_poly(&h), IntPoly::from_i64s(&[-1, 1]));
        let h = HalfCoeffs::from_i64s(6, &[2, -2, 3, -2]).unwrap();
        assert_eq!(
            expand_reciprocal(&h),
            IntPoly::from_i64s(&[2, -2, 3, -2, 3, -2, 2])
        );
    }

    #[test]
    fn circle_examples() {
        let t = |d, c: &[i64]| all_roots_on_circle(&HalfCoeffs::from_i64s(d, c).unwrap());
        assert!(t(2, &[2, 3]));
        assert!(!t(2, &[2, 5]));
        assert!(t(6, &[2, -2, 3, -2]));
        // (x+1)^2 and (x-1)^2: endpoint roots count
        assert!(t(2, &[1, 2]));
        assert!(t(2, &[1, -2]));
    }

    #[test]
    fn invalid_half_coeffs() {
        assert!(HalfCoeffs::from_i64s(3, &[1, 1]).is_err());
        assert!(HalfCoeffs::from_i64s(4, &[1, 1]).is_err());
        assert!(HalfCoeffs::from_i64s(2, &[0, 1]).is_err());
    }

    #[test]
    fn small_trace_agrees() {
        let tr = SmallTrace::new(3);
        let c = [2i64, -2, 3, -2];
        let g = tr.trace(&c);
        let h = HalfCoeffs::from_i64s(6, &c).unwrap();
        let exact: Vec<i128> = trace_poly(&h)
            .coeffs()
            .iter()
            .map(|v| i128::try_from(v).unwrap())
            .collect();
        assert_eq!(g, exact);
        assert!(all_roots_on_circle_small(&tr, &c));
    }
}
