//! Certified complex root isolation.
//!
//! Approximations come from the Aberth–Ehrlich iteration, first in `f64`
//! and then in fixed-point ball arithmetic. They are certified with the
//! Weierstrass inclusion theorem: for distinct points `z_i` and the
//! corrections `W_i = f(z_i) / (lc * prod_{j != i} (z_i - z_j))`, every
//! connected component of the discs `D(z_i, n|W_i|)` holds as many roots as
//! discs, so pairwise disjoint discs each hold exactly one root.
//!
//! Refining a single root uses Newton steps and a Rouché test on the disc
//! `D(z, r)`: if `|f(z)| + r^2 T < |f'(z)| r`, where `T` bounds the higher
//! Taylor coefficients, the disc holds exactly one root.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::ball::{self, eval_poly, eval_poly_deriv, CBall, RBall};
use crate::error::{domain, Error, Result};
use crate::intpoly::{count_real_roots, IntPoly};

/// Default starting precision in bits.
pub const DEFAULT_BITS: u64 = 128;

/// Starting precision, overridable through `HRP_PRECISION_BITS`.
pub fn default_bits() -> u64 {
    std::env::var("HRP_PRECISION_BITS")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&b| (16..=1 << 24).contains(&b))
        .unwrap_or(DEFAULT_BITS)
}

/// Dyadic rational `mant * 2^-exp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dyadic {
    #[serde(with = "crate::serde_big")]
    pub mant: BigInt,
    pub exp: u64,
}

impl Dyadic {
    pub fn to_f64(&self) -> f64 {
        RBall {
            mid: self.mant.clone(),
            rad: BigInt::zero(),
            prec: self.exp,
        }
        .to_f64()
    }
}

/// Disc with exact center `(re + i im) * 2^-prec` and radius `rad * 2^-prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Disc {
    re: BigInt,
    im: BigInt,
    rad: BigInt,
    prec: u64,
}

impl Disc {
    fn center(&self) -> CBall {
        CBall::new(
            RBall {
                mid: self.re.clone(),
                rad: BigInt::zero(),
                prec: self.prec,
            },
            RBall {
                mid: self.im.clone(),
                rad: BigInt::zero(),
                prec: self.prec,
            },
        )
    }

    fn ball(&self) -> CBall {
        let mut c = self.center();
        c.re.rad = self.rad.clone();
        c.im.rad = self.rad.clone();
        c
    }

    fn at_prec(&self, prec: u64) -> Disc {
        if prec >= self.prec {
            let k = (prec - self.prec) as usize;
            Disc {
                re: &self.re << k,
                im: &self.im << k,
                rad: &self.rad << k,
                prec,
            }
        } else {
            let k = (self.prec - prec) as usize;
            Disc {
                re: &self.re >> k,
                im: &self.im >> k,
                rad: (&self.rad >> k) + 2,
                prec,
            }
        }
    }

    /// Radius at most `2^-bits`.
    fn fine_enough(&self, bits: u64) -> bool {
        if bits >= self.prec {
            return self.rad.is_zero();
        }
        self.rad <= BigInt::one() << (self.prec - bits) as usize
    }

    fn contains_disc(&self, inner: &Disc) -> bool {
        let p = self.prec.max(inner.prec);
        let a = self.at_prec(p);
        let b = inner.at_prec(p);
        if b.rad > a.rad {
            return false;
        }
        let dx = &a.re - &b.re;
        let dy = &a.im - &b.im;
        let slack = &a.rad - &b.rad;
        &dx * &dx + &dy * &dy <= &slack * &slack
    }

    fn disjoint(&self, o: &Disc) -> bool {
        let p = self.prec.max(o.prec);
        let a = self.at_prec(p);
        let b = o.at_prec(p);
        let dx = &a.re - &b.re;
        let dy = &a.im - &b.im;
        let s = &a.rad + &b.rad;
        &dx * &dx + &dy * &dy > &s * &s
    }
}

/// Isolating box around exactly one distinct root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBox {
    pub re_lo: Dyadic,
    pub re_hi: Dyadic,
    pub im_lo: Dyadic,
    pub im_hi: Dyadic,
    pub multiplicity: usize,
    source: IntPoly,
    factor: IntPoly,
    disc: Disc,
}

impl RootBox {
    fn from_disc(source: &IntPoly, factor: &IntPoly, multiplicity: usize, disc: Disc) -> Self {
        let e = disc.prec;
        let d = |m: BigInt| Dyadic { mant: m, exp: e };
        RootBox {
            re_lo: d(&disc.re - &disc.rad),
            re_hi: d(&disc.re + &disc.rad),
            im_lo: d(&disc.im - &disc.rad),
            im_hi: d(&disc.im + &disc.rad),
            multiplicity,
            source: source.clone(),
            factor: factor.clone(),
            disc,
        }
    }

    /// The polynomial whose root this box isolates.
    pub fn source(&self) -> &IntPoly {
        &self.source
    }

    /// Squarefree factor of the source that vanishes at the root.
    pub fn factor(&self) -> &IntPoly {
        &self.factor
    }

    /// Center approximation as a float pair.
    pub fn approx(&self) -> Complex64 {
        self.disc.center().to_c64()
    }

    /// Ball containing the root.
    pub fn ball(&self) -> CBall {
        self.disc.ball()
    }

    /// Radius bound `log2` of the enclosing disc.
    pub fn log2_radius(&self) -> f64 {
        if self.disc.rad.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.disc.rad.bits() as f64 - self.disc.prec as f64
    }

    pub fn width_at_most(&self, bits: u64) -> bool {
        self.disc.fine_enough(bits)
    }

    /// Shrink to radius `2^-bits`. The new box lies inside the old one.
    pub fn refine(&self, bits: u64) -> RootBox {
        if self.disc.fine_enough(bits) {
            return self.clone();
        }
        let disc = refine_disc(&self.factor, &self.disc, bits);
        RootBox::from_disc(&self.source, &self.factor, self.multiplicity, disc)
    }

    /// Imaginary part certainly positive / negative / undecided.
    fn im_sign(&self) -> Option<bool> {
        if self.im_lo.mant.is_positive() {
            Some(true)
        } else if self.im_hi.mant.is_negative() {
            Some(false)
        } else {
            None
        }
    }

    /// Root certainly inside / outside the unit circle; `None` if undecided.
    pub fn inside_unit_circle(&self) -> Option<bool> {
        let d = &self.disc;
        let one = BigInt::one() << d.prec as usize;
        let n2 = &d.re * &d.re + &d.im * &d.im;
        let inner = &one - &d.rad;
        if inner.is_positive() && n2 < &inner * &inner {
            return Some(true);
        }
        let outer = &one + &d.rad;
        if n2 > &outer * &outer {
            return Some(false);
        }
        None
    }

    /// True if the disc certainly meets the unit circle on both sides,
    /// i.e. its nearest point is inside and farthest point outside.
    pub fn straddles_unit_circle(&self) -> bool {
        let d = &self.disc;
        let one = BigInt::one() << d.prec as usize;
        let n2 = &d.re * &d.re + &d.im * &d.im;
        let inner = &one - &d.rad;
        let outer = &one + &d.rad;
        (!inner.is_positive() || n2 > &inner * &inner) && n2 < &outer * &outer
    }
}

/// Argument of a root in `[0, 2pi)` with a certified error bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedArg {
    ball: RBall,
}

impl CertifiedArg {
    pub fn from_ball(ball: RBall) -> Self {
        CertifiedArg { ball }
    }

    /// `2pi` to within `2^-bits`.
    pub fn two_pi(bits: u64) -> Self {
        CertifiedArg {
            ball: ball::pi(bits + 4).mul_2exp(1).with_prec(bits + 4),
        }
    }

    pub fn ball(&self) -> &RBall {
        &self.ball
    }

    pub fn value(&self) -> f64 {
        self.ball.to_f64()
    }

    /// Error bound as a dyadic.
    pub fn error_bound(&self) -> Dyadic {
        Dyadic {
            mant: self.ball.rad.clone(),
            exp: self.ball.prec,
        }
    }

    /// Certified `floor(c * value)`, or `None` if the ball straddles an integer.
    pub fn floor_scaled(&self, c: &BigInt) -> Option<BigInt> {
        let p = self.ball.prec as usize;
        let lo = (self.ball.lo() * c) >> p;
        let hi = (self.ball.hi() * c) >> p;
        (lo == hi).then_some(lo)
    }
}

/// All distinct roots with multiplicities, each box of radius at most `2^-bits`.
///
/// The zero polynomial and constants have no roots.
pub fn isolate_roots(p: &IntPoly, bits: u64) -> Vec<RootBox> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let factors = p.squarefree_decomposition().expect("nonzero");
    let mut bits = bits;
    loop {
        let mut out = Vec::new();
        for (f, mult) in &factors {
            for disc in isolate_squarefree(f, bits) {
                out.push(RootBox::from_disc(p, f, *mult, disc));
            }
        }
        let ok = (0..out.len()).all(|i| (i + 1..out.len()).all(|j| out[i].disc.disjoint(&out[j].disc)));
        if ok {
            return out;
        }
        bits += bits / 2 + 16;
    }
}

/// Roots in the open upper half plane sorted by increasing real part.
pub fn upper_half_sorted(p: &IntPoly, bits: u64) -> Result<Vec<RootBox>> {
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    if count_real_roots(p)? > 0 {
        return domain("polynomial has a real root");
    }
    let mut upper = Vec::new();
    for mut b in isolate_roots(p, bits) {
        let mut bb = bits;
        loop {
            match b.im_sign() {
                Some(true) => {
                    upper.push(b);
                    break;
                }
                Some(false) => break,
                None => {
                    bb *= 2;
                    b = b.refine(bb);
                }
            }
        }
    }
    sort_by_real_part(&mut upper, bits);
    Ok(upper)
}

fn sort_by_real_part(v: &mut [RootBox], bits: u64) {
    let cap = bits + 1024;
    loop {
        v.sort_by(|a, b| a.disc.re_cmp_center(&b.disc));
        let mut clash = None;
        for i in 0..v.len().saturating_sub(1) {
            if v[i].re_hi.mant_at(v[i + 1].re_lo.exp) >= v[i + 1].re_lo.mant {
                clash = Some(i);
                break;
            }
        }
        match clash {
            None => return,
            Some(i) => {
                let cur = -v[i].log2_radius().ceil() as i64;
                let nb = (cur.max(bits as i64) as u64) * 2;
                if nb > cap {
                    // equal real parts: keep the center order
                    return;
                }
                v[i] = v[i].refine(nb);
                v[i + 1] = v[i + 1].refine(nb);
            }
        }
    }
}

impl Disc {
    fn re_cmp_center(&self, o: &Disc) -> std::cmp::Ordering {
        let p = self.prec.max(o.prec);
        self.at_prec(p).re.cmp(&o.at_prec(p).re)
    }
}

impl Dyadic {
    fn mant_at(&self, exp: u64) -> BigInt {
        if exp >= self.exp {
            &self.mant << (exp - self.exp) as usize
        } else {
            // round up: used for upper ends only
            -((-&self.mant) >> (self.exp - exp) as usize)
        }
    }
}

/// Argument in `[0, 2pi)` to within `2^-bits`.
pub fn argument_of(r: &RootBox, bits: u64) -> Result<CertifiedArg> {
    if r.factor.degree() == 1 && r.factor.coeffs()[0].is_zero() {
        return domain("argument of the root 0");
    }
    let mut rb = bits + 12;
    loop {
        let b = r.refine(rb);
        let z = b.ball();
        if let Some(a) = ball::arg(&z.re, &z.im) {
            let a = a.with_prec(bits + 8);
            if a.log2_rad() <= -(bits as f64) {
                return Ok(CertifiedArg { ball: a });
            }
        }
        rb += rb / 2 + 8;
        if rb > bits + (1 << 20) {
            return Err(Error::Precision("argument refinement".into()));
        }
    }
}

/// Arguments of several roots at a common precision.
pub fn arguments(roots: &[RootBox], bits: u64) -> Result<Vec<CertifiedArg>> {
    roots.iter().map(|r| argument_of(r, bits)).collect()
}

/// Roots strictly inside the unit circle of a polynomial with no root on it.
pub(crate) fn count_inside_certified(q: &IntPoly) -> usize {
    let mut count = 0;
    for (f, mult) in q.squarefree_decomposition().expect("nonzero") {
        for disc in isolate_squarefree(&f, 32) {
            let mut b = RootBox::from_disc(q, &f, mult, disc);
            let mut bits = 64;
            loop {
                match b.inside_unit_circle() {
                    Some(true) => {
                        count += mult;
                        break;
                    }
                    Some(false) => break,
                    None => {
                        bits *= 2;
                        b = b.refine(bits);
                    }
                }
            }
        }
    }
    count
}

fn to_f64_coeffs(f: &IntPoly) -> Option<Vec<f64>> {
    let v: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    v.iter().all(|x| x.is_finite()).then_some(v)
}

fn horner_c(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut f = Complex64::new(0.0, 0.0);
    let mut df = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        df = df * z + f;
        f = f * z + a;
    }
    (f, df)
}

fn initial_points(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let a0 = c[0].abs();
    let an = c[n].abs();
    let r = if a0 > 0.0 {
        (a0 / an).powf(1.0 / n as f64)
    } else {
        1.0
    };
    (0..n)
        .map(|k| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect()
}

/// Aberth–Ehrlich in double precision. Returns the final iterates even if
/// they did not fully converge.
fn aberth_f64(f: &IntPoly) -> Option<Vec<Complex64>> {
    let c = to_f64_coeffs(f)?;
    let n = c.len() - 1;
    let mut z = initial_points(&c);
    for _ in 0..500 {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let (fv, dfv) = horner_c(&c, z[i]);
            if fv.norm() == 0.0 {
                continue;
            }
            let w = fv / dfv;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let corr = w / (Complex64::new(1.0, 0.0) - w * s);
            if corr.is_finite() {
                z[i] -= corr;
                worst = worst.max(corr.norm() / (1.0 + z[i].norm()));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    z.iter().all(|v| v.is_finite()).then_some(z)
}

fn cball_from_c64(z: Complex64, prec: u64) -> CBall {
    CBall::new(RBall::from_f64(z.re, prec), RBall::from_f64(z.im, prec)).center()
}

/// Aberth iterations on exact centers at `prec`.
fn aberth_polish(f: &IntPoly, z: &mut [CBall], prec: u64, max_iter: usize) {
    let n = z.len();
    let coeffs = f.coeffs();
    let tol_bits = prec.saturating_sub(12);
    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..n {
            let (fv, dfv) = eval_poly_deriv(coeffs, &z[i]);
            let (fv, dfv) = (fv.center(), dfv.center());
            if fv.re.mid.is_zero() && fv.im.mid.is_zero() {
                continue;
            }
            let Some(w) = fv.div(&dfv) else {
                converged = false;
                continue;
            };
            let w = w.center();
            let mut s = CBall::zero(prec);
            let mut ok = true;
            for j in 0..n {
                if j == i {
                    continue;
                }
                let diff = z[i].sub(&z[j]);
                match CBall::one(prec).div(&diff) {
                    Some(inv) => s = s.add(&inv.center()),
                    None => ok = false,
                }
            }
            let corr = if ok {
                let den = CBall::one(prec).sub(&w.mul(&s).center());
                w.div(&den)
            } else {
                Some(w.clone())
            };
            let Some(corr) = corr else {
                converged = false;
                continue;
            };
            let corr = corr.center();
            z[i] = z[i].sub(&corr).center();
            // converged once every correction is below 2^-tol_bits relative to 1 + |z|
            let mag = corr.re.mid.abs().max(corr.im.mid.abs());
            let scale = BigInt::one() + (z[i].re.mid.abs().max(z[i].im.mid.abs()) >> prec as usize);
            if mag.bits() as i64 > (prec as i64 - tol_bits as i64) + scale.bits() as i64 {
                converged = false;
            }
        }
        if converged {
            return;
        }
    }
}

/// Inclusion discs if pairwise disjoint.
fn certify(f: &IntPoly, z: &[CBall], prec: u64) -> Option<Vec<Disc>> {
    let n = z.len();
    let coeffs = f.coeffs();
    let lc = f.lc();
    let mut discs = Vec::with_capacity(n);
    for i in 0..n {
        let mut prod = CBall::from_int(&lc, prec);
        for j in 0..n {
            if j != i {
                prod = prod.mul(&z[i].sub(&z[j]));
            }
        }
        let fv = eval_poly(coeffs, &z[i]);
        let w = fv.div(&prod)?;
        let bound = w.abs_sqr_hi();
        let r = (bound.sqrt() + 2) * BigInt::from(n);
        discs.push(Disc {
            re: z[i].re.mid.clone(),
            im: z[i].im.mid.clone(),
            rad: r,
            prec,
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            if !discs[i].disjoint(&discs[j]) {
                return None;
            }
        }
    }
    Some(discs)
}

/// Isolating discs of radius at most `2^-bits` for a squarefree polynomial.
fn isolate_squarefree(f: &IntPoly, bits: u64) -> Vec<Disc> {
    let n = f.degree();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        let prec = bits + 8;
        let b = RBall::from_ratio(&-&f.coeffs()[0], &f.coeffs()[1], prec);
        return vec![Disc {
            re: b.mid,
            im: BigInt::zero(),
            rad: BigInt::from(2),
            prec,
        }];
    }
    let mut prec = (bits + 24).max(96);
    let mut z: Vec<CBall> = match aberth_f64(f) {
        Some(v) => v.into_iter().map(|c| cball_from_c64(c, prec)).collect(),
        None => {
            let c: Vec<f64> = vec![1.0; n + 1];
            initial_points(&c)
                .into_iter()
                .map(|c| cball_from_c64(c, prec))
                .collect()
        }
    };
    let mut iters = 60;
    loop {
        aberth_polish(f, &mut z, prec, iters);
        if let Some(discs) = certify(f, &z, prec) {
            if discs.iter().all(|d| d.fine_enough(bits)) {
                return discs;
            }
        }
        prec = prec * 3 / 2 + 32;
        iters += 20;
        z = z.iter().map(|c| c.with_prec(prec).center()).collect();
    }
}

/// Higher Taylor coefficient bound `sum_{k>=2} |f^(k)(z)| / k!` for `|z| <= rho`.
fn taylor_tail_bound(f: &IntPoly, rho: &BigInt) -> BigInt {
    let n = f.degree();
    let mut total = BigInt::zero();
    for k in 2..=n {
        let mut s = BigInt::zero();
        let mut binom = BigInt::one();
        let mut rpow = BigInt::one();
        for j in k..=n {
            if j > k {
                binom = binom * BigInt::from(j) / BigInt::from(j - k);
                rpow *= rho;
            }
            s += f.coeffs()[j].abs() * &binom * &rpow;
        }
        total += s;
    }
    total
}

/// Rouché disc after Newton refinement, if the test succeeds.
fn rouche_disc(f: &IntPoly, z: &CBall, tail: &BigInt) -> Option<Disc> {
    let prec = z.prec();
    let (fv, dfv) = eval_poly_deriv(f.coeffs(), z);
    let a = fv.abs_sqr_hi().sqrt() + 1;
    let b = dfv.abs_sqr_lo().sqrt();
    if b.is_zero() {
        return None;
    }
    let scaled_a = &a << prec as usize;
    let r = &scaled_a * 2 / &b + 2;
    // in units of 2^-2prec: A 2^p + T R^2 < B R, with r = R 2^-p <= 1
    if r > (BigInt::one() << prec as usize) {
        return None;
    }
    if scaled_a + tail * &r * &r < &b * &r {
        Some(Disc {
            re: z.re.mid.clone(),
            im: z.im.mid.clone(),
            rad: r,
            prec,
        })
    } else {
        None
    }
}

fn newton_step(f: &IntPoly, z: &CBall) -> Option<CBall> {
    let (fv, dfv) = eval_poly_deriv(f.coeffs(), z);
    let corr = fv.center().div(&dfv.center())?;
    Some(z.sub(&corr).center())
}

/// Shrink a certified disc around one root of the squarefree `f`.
fn refine_disc(f: &IntPoly, disc: &Disc, bits: u64) -> Disc {
    let c = disc.center();
    let mod_bound = (c.re.mid.abs() + c.im.mid.abs() + &disc.rad) >> disc.prec as usize;
    let rho = mod_bound + 2;
    let tail = taylor_tail_bound(f, &rho);
    let mut target = bits + 32 + tail.bits();
    for _attempt in 0..6 {
        let mut prec = disc.prec.max(64);
        let mut z = disc.center().with_prec(prec);
        let mut ok = true;
        while prec < target {
            prec = (prec * 2).min(target);
            z = z.with_prec(prec);
            match newton_step(f, &z) {
                Some(nz) => z = nz,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            if let Some(nz) = newton_step(f, &z) {
                z = nz;
            }
            if let Some(d) = rouche_disc(f, &z, &tail) {
                if d.fine_enough(bits) && disc.contains_disc(&d) {
                    return d;
                }
            }
        }
        target += target / 2 + 32;
    }
    // global fallback: the unique new disc inside the old one
    let mut b = bits;
    loop {
        for d in isolate_squarefree(f, b) {
            if disc.contains_disc(&d) {
                return d;
            }
        }
        b += b / 2 + 32;
    }
}
