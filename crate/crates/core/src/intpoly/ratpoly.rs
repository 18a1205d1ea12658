use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntPoly;

/// Polynomial over Q, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    /// Field division: `(quotient, remainder)`.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let dn = d.degree();
        let inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); r.len() - dn];
        for i in (0..q.len()).rev() {
            let qi = &r[i + dn] * &inv;
            if qi.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &qi * dc;
                r[i + j] -= t;
            }
            q[i] = qi;
        }
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        self.div_rem(d).1
    }

    /// `(den, q)` with `self = q / den`, `q` integral, `den > 0` minimal.
    pub fn clear_denominators(&self) -> (BigInt, IntPoly) {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let q = IntPoly::new(self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect());
        (l, q)
    }

    /// Integer polynomial if every coefficient is integral.
    pub fn to_int(&self) -> Option<IntPoly> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(IntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }
}

impl From<&IntPoly> for RatPoly {
    fn from(p: &IntPoly) -> Self {
        RatPoly {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigRational::zero();
        RatPoly::new(
            (0..n)
                .map(|j| self.coeffs.get(j).unwrap_or(&z) + rhs.coeffs.get(j).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        RatPoly::new(v)
    }
}
