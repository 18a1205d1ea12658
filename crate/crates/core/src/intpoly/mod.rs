//! Dense univariate polynomials over Z and Q.
//!
//! Coefficients are stored in ascending order: index `j` holds the
//! coefficient of `x^j`. The zero polynomial is the empty vector.

mod powermap;
mod ratpoly;
mod schur;
mod sturm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

pub(crate) use powermap::bareiss_det;
pub use powermap::{power_map_charpoly, power_map_minpoly, power_resultant, resultant};
pub use ratpoly::RatPoly;
pub use schur::{schur_cohn_partition, Partition};
pub use sturm::{count_real_roots, count_real_roots_closed, sturm_chain, sturm_count_real_roots};

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type RatScalar = BigRational;

/// Integer polynomial in ascending coefficient order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::serde_big::vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(IntPoly::new(crate::serde_big::vec::deserialize(d)?))
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x - r`
    pub fn linear_root(r: &BigInt) -> Self {
        IntPoly {
            coeffs: vec![-r, BigInt::one()],
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// `den^deg * p(num/den)`, an integer with the sign of `p(num/den)` when `den > 0`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &dpow;
            dpow *= den;
        }
        acc
    }

    /// Sign of `p(x)` for rational `x`.
    pub fn sign_at(&self, x: &BigRational) -> Sign {
        self.eval_homogeneous(x.numer(), x.denom()).sign()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * BigInt::from(j))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: v }
    }

    /// Number of trailing zero coefficients, i.e. the multiplicity of the root 0.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide by `x^k`; the low `k` coefficients are discarded.
    pub fn unshift(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// `p(x^m)`
    pub fn compose_power(&self, m: usize) -> Self {
        assert!(m >= 1);
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.degree() * m + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[j * m] = c.clone();
        }
        Self::new(v)
    }

    /// `p(-x)`
    pub fn negate_variable(&self) -> Self {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// `p(x + a)` for integer `a`.
    pub fn taylor_shift(&self, a: &BigInt) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// gcd of the absolute values of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `(content, p / content)`. The primitive part keeps the sign of `p`.
    pub fn content_and_primitive(&self) -> Result<(BigInt, IntPoly)> {
        if self.is_zero() {
            return domain("content of the zero polynomial");
        }
        let g = self.content();
        Ok((g.clone(), self.div_scalar_exact(&g)))
    }

    /// Primitive part with positive leading coefficient; zero maps to zero.
    pub fn primitive_normalized(&self) -> IntPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        self.div_scalar_exact(&g)
    }

    pub fn div_scalar_exact(&self, k: &BigInt) -> IntPoly {
        if k.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / k).collect(),
        }
    }

    /// `x^deg p(1/x)`: the reversed coefficient vector.
    pub fn reciprocal_adjoint(&self) -> Result<IntPoly> {
        if self.is_zero() {
            return domain("reciprocal adjoint of the zero polynomial");
        }
        let mut v = self.coeffs.clone();
        v.reverse();
        Ok(Self::new(v))
    }

    pub fn is_reciprocal(&self) -> Result<bool> {
        if self.is_zero() {
            return domain("reciprocal test on the zero polynomial");
        }
        let n = self.coeffs.len();
        Ok((0..n / 2).all(|j| self.coeffs[j] == self.coeffs[n - 1 - j]))
    }

    /// Largest `m >= 2` with `p(x) = g(x^m)`, together with `g`.
    pub fn detect_composed_power(&self) -> Option<(usize, IntPoly)> {
        let mut m = 0usize;
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                m = m.gcd(&j);
            }
        }
        if m < 2 {
            return None;
        }
        let g = Self::new(self.coeffs.iter().step_by(m).cloned().collect());
        Some((m, g))
    }

    /// Euclidean division by a polynomial whose leading coefficient divides
    /// every intermediate leading term. Returns `None` if some step is inexact.
    pub fn div_rem_exact_lc(&self, d: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dn = d.degree();
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        if r.len() <= dn {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - dn];
        for i in (0..q.len()).rev() {
            let top = &r[i + dn];
            if top.is_zero() {
                continue;
            }
            let (qi, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &qi * dc;
                r[i + j] -= t;
            }
            q[i] = qi;
        }
        Some((Self::new(q), Self::new(r)))
    }

    /// Exact quotient `self / d` in `Z[x]`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_exact_lc(d)?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero(), "pseudo-remainder by zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return self.clone();
        }
        let dn = d.degree();
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let steps = r.len() - dn;
        for i in (0..steps).rev() {
            let top = r[i + dn].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            if top.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &top * dc;
                r[i + j] -= t;
            }
        }
        Self::new(r)
    }

    /// Primitive gcd with positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_normalized();
        let mut b = other.primitive_normalized();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                return Self::one();
            }
            let r = a.pseudo_rem(&b).primitive_normalized();
            a = b;
            b = r;
        }
        a
    }

    /// Yun's algorithm. Factors are primitive with positive leading coefficient;
    /// their product with multiplicities is the primitive part of `p` up to sign.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(IntPoly, usize)>> {
        if self.is_zero() {
            return domain("squarefree decomposition of the zero polynomial");
        }
        let p = self.primitive_normalized();
        let mut out = Vec::new();
        if p.is_constant() {
            return Ok(out);
        }
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        let mut b = p.div_exact(&a0).expect("gcd divides p");
        let mut c = dp.div_exact(&a0).expect("gcd divides p'");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides b");
            c = d.div_exact(&a).expect("gcd divides d");
            d = &c - &b.derivative();
            i += 1;
        }
        Ok(out)
    }

    /// Primitive squarefree part with positive leading coefficient.
    pub fn squarefree_part(&self) -> Result<IntPoly> {
        let mut acc = IntPoly::one();
        for (f, _) in self.squarefree_decomposition()? {
            acc = &acc * &f;
        }
        Ok(acc)
    }

    /// Monic cyclotomic test: primitive, all roots are roots of unity.
    pub fn is_cyclotomic_product(&self) -> bool {
        if self.is_zero() || self.degree() == 0 || !self.lc().abs().is_one() {
            return false;
        }
        if !self.coeffs[0].abs().is_one() {
            return false;
        }
        matches!(schur_cohn_partition(self), Ok(part) if part.on == self.degree())
    }

    /// Smallest `m` with `self | x^m - 1`, for cyclotomic products.
    pub fn root_of_unity_order(&self) -> Option<usize> {
        if !self.is_cyclotomic_product() {
            return None;
        }
        // phi(m) <= d implies m <= 2 d^2
        let d = self.degree();
        (1..=2 * d * d + 2).find(|&m| {
            let mut v = vec![BigInt::zero(); m + 1];
            v[0] = -BigInt::one();
            v[m] = BigInt::one();
            IntPoly::new(v).div_exact(self).is_some()
        })
    }

    /// Canonical comma-separated coefficient list without spaces.
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[{}]", self.to_coeff_string())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_mag = j == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match j {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{j}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|j| match (self.coeffs.get(j), rhs.coeffs.get(j)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl IntPoly {
    pub fn pow(&self, e: usize) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert_eq!(p(&[0, 0, 0]), IntPoly::zero());
        assert_eq!(p(&[1, 2, 0]).degree(), 1);
    }

    #[test]
    fn content_examples() {
        let (c, q) = p(&[2, 4, 6]).content_and_primitive().unwrap();
        assert_eq!(c, BigInt::from(2));
        assert_eq!(q, p(&[1, 2, 3]));
        let six = p(&[2, -2, 3, -2, 3, -2, 2]);
        let (c, q) = six.content_and_primitive().unwrap();
        assert!(c.is_one());
        assert_eq!(q, six);
        let (c, q) = p(&[5]).content_and_primitive().unwrap();
        assert_eq!(c, BigInt::from(5));
        assert_eq!(q, p(&[1]));
        let (_, q) = p(&[-2, 0, -4]).content_and_primitive().unwrap();
        assert_eq!(q, p(&[-1, 0, -2]));
        assert!(IntPoly::zero().content_and_primitive().is_err());
    }

    #[test]
    fn reciprocal_examples() {
        let a = p(&[2, 3, 2]);
        assert_eq!(a.reciprocal_adjoint().unwrap(), a);
        assert!(a.is_reciprocal().unwrap());
        let b = p(&[-1, -1, 1]);
        assert_eq!(b.reciprocal_adjoint().unwrap(), p(&[1, -1, -1]));
        assert!(!b.is_reciprocal().unwrap());
        let c = p(&[2, 4, 2, -4, -7, -4, 2, 4, 2]);
        assert!(c.is_reciprocal().unwrap());
        assert!(IntPoly::zero().is_reciprocal().is_err());
    }

    #[test]
    fn squarefree_examples() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(
            f.squarefree_decomposition().unwrap(),
            vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]
        );
        assert_eq!(
            p(&[-2, 0, 1]).squarefree_decomposition().unwrap(),
            vec![(p(&[-2, 0, 1]), 1)]
        );
        assert_eq!(
            p(&[4, 0, -4, 0, 1]).squarefree_decomposition().unwrap(),
            vec![(p(&[-2, 0, 1]), 2)]
        );
    }

    #[test]
    fn composed_power_examples() {
        assert_eq!(p(&[4, 0, 0, 0, 1]).detect_composed_power(), Some((4, p(&[4, 1]))));
        assert_eq!(
            p(&[3, 0, 0, 2, 0, 0, 1]).detect_composed_power(),
            Some((3, p(&[3, 2, 1])))
        );
        assert_eq!(p(&[16, 8, 1, 8, 16]).detect_composed_power(), None);
        assert_eq!(p(&[7]).detect_composed_power(), None);
    }

    #[test]
    fn gcd_and_division() {
        let a = &p(&[1, 1]) * &p(&[2, 0, 1]);
        let b = &p(&[1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[2, 0, 1])));
        assert_eq!(a.div_exact(&p(&[3, 1])), None);
        assert_eq!(p(&[2, 4]).gcd(&p(&[3, 6])), p(&[1, 2]));
    }

    #[test]
    fn taylor_shift_matches_eval() {
        let f = p(&[3, -1, 4, 1, -5]);
        let g = f.taylor_shift(&BigInt::from(-2));
        for x in -3..4 {
            let x = BigInt::from(x);
            assert_eq!(g.eval(&x), f.eval(&(&x - 2)));
        }
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[-1, -1, 1]).to_string(), "-1 - x + x^2");
        assert_eq!(p(&[0, 2]).to_string(), "2x");
        assert_eq!(p(&[2, -2, 3]).to_coeff_string(), "2,-2,3");
    }
}
