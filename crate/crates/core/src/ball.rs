//! Mid-radius ball arithmetic on fixed-point integers.
//!
//! A real ball at precision `p` is `(mid ± rad) * 2^-p`. Every operation
//! returns a ball that contains all results of the operation applied to
//! points of its inputs; rounding error is absorbed into the radius.

use std::sync::Mutex;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBall {
    pub mid: BigInt,
    pub rad: BigInt,
    pub prec: u64,
}

fn shr_floor(x: &BigInt, k: u64) -> BigInt {
    x >> k as usize
}

fn shr_ceil(x: &BigInt, k: u64) -> BigInt {
    -((-x) >> k as usize)
}

fn div_ceil_pos(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Rounded-to-nearest integer quotient.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two_a = a << 1usize;
    let q: BigInt = two_a.div_floor(b) + 1;
    q.div_floor(&BigInt::from(2))
}

impl RBall {
    pub fn exact_int(n: &BigInt, prec: u64) -> Self {
        RBall {
            mid: n << prec as usize,
            rad: BigInt::zero(),
            prec,
        }
    }

    pub fn from_i64(n: i64, prec: u64) -> Self {
        Self::exact_int(&BigInt::from(n), prec)
    }

    pub fn zero(prec: u64) -> Self {
        RBall {
            mid: BigInt::zero(),
            rad: BigInt::zero(),
            prec,
        }
    }

    /// Ball around `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u64) -> Self {
        assert!(!den.is_zero());
        let scaled = num << prec as usize;
        let (q, r) = scaled.div_rem(den);
        RBall {
            mid: q,
            rad: BigInt::from(u8::from(!r.is_zero())),
            prec,
        }
    }

    /// Exact dyadic `m * 2^-e`, widened if `e > prec`.
    pub fn from_dyadic(m: &BigInt, e: u64, prec: u64) -> Self {
        if e <= prec {
            RBall {
                mid: m << (prec - e) as usize,
                rad: BigInt::zero(),
                prec,
            }
        } else {
            let k = e - prec;
            let lo = shr_floor(m, k);
            let exact = (&lo << k as usize) == *m;
            RBall {
                mid: lo,
                rad: BigInt::from(u8::from(!exact)),
                prec,
            }
        }
    }

    pub fn from_f64(x: f64, prec: u64) -> Self {
        let scaled = x * (2f64).powi(53);
        let m = BigInt::from(scaled as i128);
        Self::from_dyadic(&m, 53, prec)
    }

    /// Same value with radius dropped.
    pub fn center(&self) -> Self {
        RBall {
            mid: self.mid.clone(),
            rad: BigInt::zero(),
            prec: self.prec,
        }
    }

    pub fn with_prec(&self, prec: u64) -> Self {
        if prec >= self.prec {
            let k = (prec - self.prec) as usize;
            RBall {
                mid: &self.mid << k,
                rad: &self.rad << k,
                prec,
            }
        } else {
            let k = self.prec - prec;
            RBall {
                mid: shr_floor(&self.mid, k),
                rad: shr_ceil(&self.rad, k) + 1,
                prec,
            }
        }
    }

    pub fn lo(&self) -> BigInt {
        &self.mid - &self.rad
    }

    pub fn hi(&self) -> BigInt {
        &self.mid + &self.rad
    }

    pub fn is_positive(&self) -> bool {
        self.lo().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi().is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    /// Upper bound on `|x|` in ulps.
    pub fn abs_hi(&self) -> BigInt {
        self.mid.abs() + &self.rad
    }

    /// Lower bound on `|x|` in ulps (zero if the ball straddles zero).
    pub fn abs_lo(&self) -> BigInt {
        let v = self.mid.abs() - &self.rad;
        if v.is_negative() {
            BigInt::zero()
        } else {
            v
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mid.bits();
        if bits > 900 {
            let k = bits - 900;
            let m = (&self.mid >> k as usize).to_f64().unwrap_or(f64::NAN);
            m * (2f64).powi(k as i32 - self.prec as i32)
        } else {
            let m = self.mid.to_f64().unwrap_or(f64::NAN);
            m * (2f64).powi(-(self.prec.min(1_000_000) as i32))
        }
    }

    /// Radius as an approximate base-2 logarithm of its value.
    pub fn log2_rad(&self) -> f64 {
        if self.rad.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.rad.bits() as f64 - self.prec as f64
    }

    pub fn neg(&self) -> Self {
        RBall {
            mid: -&self.mid,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        RBall {
            mid: &self.mid + &o.mid,
            rad: &self.rad + &o.rad,
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        RBall {
            mid: &self.mid - &o.mid,
            rad: &self.rad + &o.rad,
            prec: self.prec,
        }
    }

    pub fn add_int(&self, n: &BigInt) -> Self {
        RBall {
            mid: &self.mid + (n << self.prec as usize),
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        RBall {
            mid: &self.mid * n,
            rad: &self.rad * n.abs(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        let p = self.prec;
        let prod = &self.mid * &o.mid;
        let mid = shr_floor(&prod, p);
        let exact = (&mid << p as usize) == prod;
        let mut rad = BigInt::zero();
        if !o.rad.is_zero() {
            rad += self.mid.abs() * &o.rad;
        }
        if !self.rad.is_zero() {
            rad += o.mid.abs() * &self.rad;
            if !o.rad.is_zero() {
                rad += &self.rad * &o.rad;
            }
        }
        let rad = shr_ceil(&rad, p) + BigInt::from(u8::from(!exact));
        RBall { mid, rad, prec: p }
    }

    pub fn sqr(&self) -> Self {
        self.mul(self)
    }

    /// Multiply by `2^k`.
    pub fn mul_2exp(&self, k: u64) -> Self {
        RBall {
            mid: &self.mid << k as usize,
            rad: &self.rad << k as usize,
            prec: self.prec,
        }
    }

    /// Division; `None` if the divisor ball contains zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        debug_assert_eq!(self.prec, o.prec);
        let dl = o.abs_lo();
        if dl.is_zero() {
            return None;
        }
        let p = self.prec as usize;
        let m2a = o.mid.abs();
        let mid = div_round(&(&self.mid << p), &o.mid);
        let num = (&self.rad * &m2a + self.mid.abs() * &o.rad) << p;
        let den = &m2a * &dl;
        let rad = div_ceil_pos(&num, &den) + 1;
        Some(RBall {
            mid,
            rad,
            prec: self.prec,
        })
    }

    pub fn div_int(&self, n: &BigInt) -> Self {
        assert!(!n.is_zero());
        let mid = div_round(&self.mid, n);
        let rad = div_ceil_pos(&self.rad, &n.abs()) + 1;
        RBall {
            mid,
            rad,
            prec: self.prec,
        }
    }

    /// Square root of a ball with positive lower end.
    pub fn sqrt(&self) -> Option<Self> {
        let lo = self.lo();
        if !lo.is_positive() {
            return None;
        }
        let p = self.prec as usize;
        let mid = (&self.mid << p).sqrt();
        let slo = (&lo << p).sqrt();
        if slo.is_zero() {
            return None;
        }
        // |sqrt(a) - sqrt(b)| <= |a - b| / (2 sqrt(min))
        let rad = div_ceil_pos(&(&self.rad << p), &(slo << 1usize)) + 2;
        Some(RBall {
            mid,
            rad,
            prec: self.prec,
        })
    }

    /// Union hull with another ball at the same precision.
    pub fn hull(&self, o: &Self) -> Self {
        let lo = self.lo().min(o.lo());
        let hi = self.hi().max(o.hi());
        let mid: BigInt = (&lo + &hi) >> 1usize;
        let rad = (&hi - &mid).max(&mid - &lo);
        RBall {
            mid,
            rad,
            prec: self.prec,
        }
    }

    /// Widen the radius by `k` ulps.
    pub fn widen(&self, k: &BigInt) -> Self {
        RBall {
            mid: self.mid.clone(),
            rad: &self.rad + k,
            prec: self.prec,
        }
    }

    pub fn sign(&self) -> Option<Sign> {
        if self.is_positive() {
            Some(Sign::Plus)
        } else if self.is_negative() {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

/// Complex ball: independent real and imaginary balls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CBall {
    pub re: RBall,
    pub im: RBall,
}

impl CBall {
    pub fn new(re: RBall, im: RBall) -> Self {
        debug_assert_eq!(re.prec, im.prec);
        CBall { re, im }
    }

    pub fn zero(prec: u64) -> Self {
        CBall::new(RBall::zero(prec), RBall::zero(prec))
    }

    pub fn one(prec: u64) -> Self {
        CBall::new(RBall::from_i64(1, prec), RBall::zero(prec))
    }

    pub fn from_int(n: &BigInt, prec: u64) -> Self {
        CBall::new(RBall::exact_int(n, prec), RBall::zero(prec))
    }

    pub fn prec(&self) -> u64 {
        self.re.prec
    }

    pub fn center(&self) -> Self {
        CBall::new(self.re.center(), self.im.center())
    }

    pub fn with_prec(&self, prec: u64) -> Self {
        CBall::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    pub fn add(&self, o: &Self) -> Self {
        CBall::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        CBall::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> Self {
        CBall::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        CBall::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        CBall::new(re, im)
    }

    pub fn sqr(&self) -> Self {
        let re = self.re.sqr().sub(&self.im.sqr());
        let im = self.re.mul(&self.im).mul_2exp(1);
        CBall::new(re, im)
    }

    pub fn mul_real(&self, r: &RBall) -> Self {
        CBall::new(self.re.mul(r), self.im.mul(r))
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        CBall::new(self.re.mul_int(n), self.im.mul_int(n))
    }

    pub fn add_int(&self, n: &BigInt) -> Self {
        CBall::new(self.re.add_int(n), self.im.clone())
    }

    pub fn norm_sqr(&self) -> RBall {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        let n = o.norm_sqr();
        let num = self.mul(&o.conj());
        Some(CBall::new(num.re.div(&n)?, num.im.div(&n)?))
    }

    pub fn powi(&self, mut e: u64) -> Self {
        let mut acc = CBall::one(self.prec());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Upper bound on `|z|^2` scaled by `2^(2 prec)`.
    pub fn abs_sqr_hi(&self) -> BigInt {
        let a = self.re.abs_hi();
        let b = self.im.abs_hi();
        &a * &a + &b * &b
    }

    /// Lower bound on `|z|^2` scaled by `2^(2 prec)`.
    pub fn abs_sqr_lo(&self) -> BigInt {
        let a = self.re.abs_lo();
        let b = self.im.abs_lo();
        &a * &a + &b * &b
    }

    /// Upper bound on the radius of a disc around the center containing the ball, in ulps.
    pub fn rad_hi(&self) -> BigInt {
        &self.re.rad + &self.im.rad
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// Horner evaluation of an integer polynomial at a complex ball.
pub fn eval_poly(coeffs: &[BigInt], z: &CBall) -> CBall {
    let prec = z.prec();
    let mut acc = CBall::zero(prec);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add_int(c);
    }
    acc
}

/// Value and derivative by a double Horner pass.
pub fn eval_poly_deriv(coeffs: &[BigInt], z: &CBall) -> (CBall, CBall) {
    let prec = z.prec();
    let mut f = CBall::zero(prec);
    let mut df = CBall::zero(prec);
    for c in coeffs.iter().rev() {
        df = df.mul(z).add(&f);
        f = f.mul(z).add_int(c);
    }
    (f, df)
}

/// Series `atan(t) = sum (-1)^i t^(2i+1) / (2i+1)` for `|t| <= 1/4`.
fn atan_series(t: &RBall) -> RBall {
    let prec = t.prec;
    let t2 = t.sqr();
    let mut term = t.clone();
    let mut sum = RBall::zero(prec);
    let mut i: u64 = 0;
    // |t| <= 1/4 so each term shrinks by at least 16
    let tbits = (t.abs_hi().bits() as i64) - prec as i64;
    let step = (-2 * tbits).max(4) as u64;
    let terms = prec / step + 2;
    while i <= terms {
        let k = BigInt::from(2 * i + 1);
        let q = term.div_int(&k);
        sum = if i.is_multiple_of(2) {
            sum.add(&q)
        } else {
            sum.sub(&q)
        };
        term = term.mul(&t2);
        i += 1;
    }
    // tail bounded by the next term magnitude
    let tail = term.abs_hi() / BigInt::from(2 * i + 1) + 1;
    sum.widen(&tail)
}

/// `atan` of a real ball by angle halving and a series.
///
/// Eight halvings bring any angle below `pi/512`, inside the series range.
pub fn atan(t: &RBall) -> RBall {
    let prec = t.prec;
    let halvings: u64 = 8;
    let work = prec + halvings + 16;
    let mut u = t.with_prec(work);
    let one = RBall::from_i64(1, work);
    for _ in 0..halvings {
        // atan(u) = 2 atan(u / (1 + sqrt(1 + u^2)))
        let s = one.add(&u.sqr()).sqrt().expect("1 + u^2 is positive");
        u = u.div(&one.add(&s)).expect("denominator exceeds 1");
    }
    atan_series(&u).mul_2exp(halvings).with_prec(prec)
}

static PI_CACHE: Mutex<Option<RBall>> = Mutex::new(None);

/// Ball around pi by Machin's formula.
pub fn pi(prec: u64) -> RBall {
    if let Some(c) = PI_CACHE.lock().expect("pi cache").as_ref() {
        if c.prec >= prec {
            return c.with_prec(prec);
        }
    }
    let work = prec + 16;
    let five = RBall::from_ratio(&BigInt::one(), &BigInt::from(5), work);
    let n239 = RBall::from_ratio(&BigInt::one(), &BigInt::from(239), work);
    let v = atan_series(&five)
        .mul_int(&BigInt::from(16))
        .sub(&atan_series(&n239).mul_int(&BigInt::from(4)));
    *PI_CACHE.lock().expect("pi cache") = Some(v.clone());
    v.with_prec(prec)
}

/// Argument of `x + iy` in `[0, 2pi)`, as a ball. Returns `None` if the
/// ball around the point may contain zero. A point on or straddling the
/// positive real axis yields a ball around 0 that should be read modulo 2pi.
pub fn arg(x: &RBall, y: &RBall) -> Option<RBall> {
    let prec = x.prec;
    let work = prec + 8;
    let x = x.with_prec(work);
    let y = y.with_prec(work);
    let pi = pi(work);
    let ax = x.mid.abs();
    let ay = y.mid.abs();
    let r = if ax >= ay {
        if x.contains_zero() {
            return None;
        }
        let base = atan(&y.div(&x)?);
        if x.is_negative() {
            pi.add(&base)
        } else if y.is_negative() {
            pi.mul_2exp(1).add(&base)
        } else {
            base
        }
    } else {
        if y.contains_zero() {
            return None;
        }
        let base = atan(&x.div(&y)?);
        let half_pi = pi.div_int(&BigInt::from(2));
        if y.is_positive() {
            half_pi.sub(&base)
        } else {
            half_pi.mul_int(&BigInt::from(3)).sub(&base)
        }
    };
    Some(r.with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(b: &RBall, v: f64) -> bool {
        let lo = RBall {
            mid: b.lo(),
            rad: BigInt::zero(),
            prec: b.prec,
        }
        .to_f64();
        let hi = RBall {
            mid: b.hi(),
            rad: BigInt::zero(),
            prec: b.prec,
        }
        .to_f64();
        lo - 1e-12 <= v && v <= hi + 1e-12
    }

    #[test]
    fn pi_digits() {
        let p = pi(200);
        assert!(contains(&p, std::f64::consts::PI));
        assert!(p.rad < BigInt::from(64));
        // 3.14159265358979323846264338327950288 scaled
        let known = BigInt::parse_bytes(b"314159265358979323846264338327950288419716939937510", 10).unwrap();
        let scale = BigInt::from(10).pow(50);
        let exact = RBall::from_ratio(&known, &scale, 160);
        let diff = p.with_prec(160).sub(&exact);
        assert!(diff.abs_hi() < BigInt::from(1u64 << 20));
    }

    #[test]
    fn atan_values() {
        for &t in &[0.0, 0.3, -0.7, 1.0, 2.5, -40.0, 1e-9] {
            let b = atan(&RBall::from_f64(t, 120));
            assert!(contains(&b, f64::atan(t)), "t={t}");
            assert!(b.log2_rad() < -100.0);
        }
    }

    #[test]
    fn arg_quadrants() {
        let cases = [
            (1.0, 1.0),
            (-1.0, 1.0),
            (-1.0, -1.0),
            (1.0, -1.0),
            (0.0, 1.0),
            (-1.0, 0.0),
            (0.2, -3.0),
        ];
        for &(x, y) in &cases {
            let a = arg(&RBall::from_f64(x, 100), &RBall::from_f64(y, 100)).unwrap();
            let mut want = f64::atan2(y, x);
            if want < 0.0 {
                want += 2.0 * std::f64::consts::PI;
            }
            assert!(contains(&a, want), "({x},{y})");
        }
    }

    #[test]
    fn mul_div_enclose() {
        let a = RBall::from_f64(1.75, 64).widen(&BigInt::from(1000));
        let b = RBall::from_f64(-0.3, 64).widen(&BigInt::from(500));
        assert!(contains(&a.mul(&b), 1.75 * -0.3));
        assert!(contains(&a.div(&b).unwrap(), 1.75 / -0.3));
        assert!(contains(&a.sqrt().unwrap(), 1.75f64.sqrt()));
    }
}
