//! Height reducing property: classification, dominant-term multiples and
//! finite-digit expansions.
//!
//! An algebraic number `alpha` has the height reducing property when
//! `Z[alpha] = F[alpha]` for a finite digit set `F`. Expanding numbers get
//! digits `|eps| < |c_0|` from a multiple `C` with strictly dominant constant
//! term. Roots of unity get digits in `{0, +-1}`. Unimodular non-roots of
//! unity go through a heuristic reducer whose output is always verified.

use std::collections::HashSet;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::factorize;
use crate::intpoly::{power_map_charpoly, schur_cohn_partition, IntPoly, RatPoly};
use crate::mdep;
use crate::roots::upper_half_sorted;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    HrpProven,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HrpStatus {
    RootOfUnity,
    Expanding,
    UnitCircle { m_alpha: usize, verdict: Verdict },
    MixedNoHrp,
}

impl HrpStatus {
    /// Whether the property is known to hold.
    pub fn has_hrp(&self) -> Option<bool> {
        match self {
            HrpStatus::RootOfUnity | HrpStatus::Expanding => Some(true),
            HrpStatus::UnitCircle {
                verdict: Verdict::HrpProven,
                ..
            } => Some(true),
            HrpStatus::UnitCircle { .. } => None,
            HrpStatus::MixedNoHrp => Some(false),
        }
    }
}

fn irreducible_primitive(p: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() || p.degree() == 0 {
        return domain("expected a nonconstant polynomial");
    }
    let p = p.primitive_normalized();
    if !factorize::is_irreducible(&p)? {
        return domain(format!("{} is reducible", p.to_coeff_string()));
    }
    Ok(p)
}

/// Classifies a root of the irreducible `p`. Every conjugate shares the
/// answer, so no particular root is selected.
pub fn classify_hrp(p: &IntPoly) -> Result<HrpStatus> {
    let p = irreducible_primitive(p)?;
    let d = p.degree();
    let part = schur_cohn_partition(&p)?;
    if part.on == d {
        if p.lc().abs().is_one() {
            return Ok(HrpStatus::RootOfUnity);
        }
        let (m, _) = mdep::m_alpha(&p)?;
        let verdict = if 2 * m + 2 >= d || m == 1 {
            Verdict::HrpProven
        } else {
            Verdict::Unknown
        };
        return Ok(HrpStatus::UnitCircle { m_alpha: m, verdict });
    }
    if part.outside == d {
        return Ok(HrpStatus::Expanding);
    }
    Ok(HrpStatus::MixedNoHrp)
}

/// `|c_k| > sum_{j != k} |c_j|`, or `>=` when not strict.
pub fn has_dominant_term(p: &IntPoly, k: usize, strict: bool) -> bool {
    if p.is_zero() || k > p.degree() {
        return false;
    }
    let ck = p.coeff(k).abs();
    let rest = p.l1_norm() - &ck;
    if strict {
        ck > rest
    } else {
        ck >= rest
    }
}

/// Default ceiling for the power search in [`construct_dominant`].
pub const DOMINANT_MAX_POWER: usize = 1 << 16;

/// Integer multiple of the irreducible `p` with a dominant `k`-th term.
pub fn construct_dominant(p: &IntPoly, k: usize, strict: bool) -> Result<IntPoly> {
    construct_dominant_with(p, k, strict, DOMINANT_MAX_POWER)
}

/// [`construct_dominant`] with an explicit ceiling on the power `N`.
///
/// Searches `N = 1, 2, ...` for `Q_N = prod (x - alpha_j^N)` with a strictly
/// dominant `l`-th term, `l` the number of conjugates inside the disk. Then
/// `v Q_N(x^N)` has its dominant term at `l N`, and a factor `x^(k - l N)`
/// moves it to `k`. Roots of unity of order `N` use `x^(2N+k) + x^(N+k) - 2x^k`.
pub fn construct_dominant_with(p: &IntPoly, k: usize, strict: bool, max_power: usize) -> Result<IntPoly> {
    let p = irreducible_primitive(p)?;
    let part = schur_cohn_partition(&p)?;
    if part.on > 0 {
        let Some(n) = p.root_of_unity_order() else {
            return domain("a conjugate lies on the unit circle but alpha is not a root of unity");
        };
        if strict {
            return domain("a root of unity has no multiple with a strictly dominant term");
        }
        let mut c = vec![BigInt::zero(); 2 * n + k + 1];
        c[k] = BigInt::from(-2);
        c[n + k] = BigInt::one();
        c[2 * n + k] = BigInt::one();
        return Ok(IntPoly::new(c));
    }
    let l = part.inside;
    if k < l {
        return domain(format!(
            "alpha has {l} conjugates inside the disk, more than k = {k}"
        ));
    }
    let top = k.checked_div(l).map_or(max_power, |q| max_power.min(q));
    for n in 1..=top {
        let q = power_map_charpoly(&p, n)?;
        let (_, qi) = q.clear_denominators();
        if !has_dominant_term(&qi, l, true) {
            continue;
        }
        let r = qi.primitive_normalized().compose_power(n).shift(k - l * n);
        debug_assert!(has_dominant_term(&r, k, strict));
        if r.div_exact(&p).is_none() {
            return Err(Error::Internal("dominant multiple is not divisible by p".into()));
        }
        return Ok(r);
    }
    if l > 0 && top < max_power {
        return Err(Error::Unsupported(format!(
            "no power N <= {top} gives a dominant term at k = {k}; try a larger k"
        )));
    }
    Err(Error::SearchLimit(format!(
        "no dominant power map up to N = {top}"
    )))
}

/// Digits `eps_j` with `sum eps_j alpha^j` equal to a given element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitExpansion {
    #[serde(with = "crate::serde_big::vec")]
    pub digits: Vec<BigInt>,
    #[serde(with = "crate::serde_big")]
    pub digit_bound: BigInt,
    pub base: IntPoly,
}

impl DigitExpansion {
    fn new(mut digits: Vec<BigInt>, digit_bound: BigInt, base: IntPoly) -> Self {
        while digits.last().is_some_and(|x| x.is_zero()) {
            digits.pop();
        }
        DigitExpansion {
            digits,
            digit_bound,
            base,
        }
    }

    /// The digits as a polynomial in `alpha`.
    pub fn as_poly(&self) -> IntPoly {
        IntPoly::new(self.digits.clone())
    }

    pub fn max_digit(&self) -> BigInt {
        self.digits.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Exact check: digits within the bound and `base | digits - value` over Q.
    pub fn verify(&self, value: &IntPoly) -> bool {
        if self.max_digit() > self.digit_bound {
            return false;
        }
        let diff = &self.as_poly() - value;
        RatPoly::from(&diff).rem(&RatPoly::from(&self.base)).is_zero()
    }
}

/// One substitution step of the expanding reducer: coefficient L1 norm
/// before and after.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L1Step {
    pub before: BigInt,
    pub after: BigInt,
}

#[derive(Clone, Debug)]
pub struct ExpandingReduction {
    pub expansion: DigitExpansion,
    pub dominant: IntPoly,
    pub l1_trace: Vec<L1Step>,
}

/// Expansion of `value(alpha)` over `{0, +-1, .., +-(|c_0| - 1)}`.
pub fn reduce_expanding(p: &IntPoly, value: &IntPoly) -> Result<DigitExpansion> {
    Ok(reduce_expanding_traced(p, value)?.expansion)
}

/// [`reduce_expanding`] together with the multiple `C` it used and the L1
/// norms around every substitution.
pub fn reduce_expanding_traced(p: &IntPoly, value: &IntPoly) -> Result<ExpandingReduction> {
    if classify_hrp(p)? != HrpStatus::Expanding {
        return domain("reduce_expanding needs all conjugates outside the unit circle");
    }
    let c = construct_dominant(p, 0, true)?;
    let c0 = c.coeff(0);
    let abs_c0 = c0.abs();
    let s0 = sign(&c0);
    let mut a: Vec<BigInt> = value.coeffs().to_vec();
    let mut digits = Vec::new();
    let mut trace = Vec::new();
    while a.iter().any(|x| !x.is_zero()) {
        let a0 = a[0].clone();
        if a0.abs() < abs_c0 {
            digits.push(a0);
            a.remove(0);
            continue;
        }
        let before: BigInt = a.iter().map(|x| x.abs()).sum();
        let (q, eps) = a0.abs().div_rem(&abs_c0);
        let sa = sign(&a0);
        digits.push(&eps * sa);
        let len = (a.len() - 1).max(c.degree());
        let f = BigInt::from(s0 * sa) * &q;
        let next: Vec<BigInt> = (0..len)
            .map(|j| a.get(j + 1).cloned().unwrap_or_default() - &f * c.coeff(j + 1))
            .collect();
        let after: BigInt = next.iter().map(|x| x.abs()).sum();
        trace.push(L1Step { before, after });
        a = next;
        while a.last().is_some_and(|x| x.is_zero()) {
            a.pop();
        }
    }
    let expansion = DigitExpansion::new(digits, &abs_c0 - 1, p.primitive_normalized());
    if !expansion.verify(value) {
        return Err(Error::Internal(
            "expanding reduction failed to re-evaluate".into(),
        ));
    }
    Ok(ExpandingReduction {
        expansion,
        dominant: c,
        l1_trace: trace,
    })
}

fn sign(x: &BigInt) -> i32 {
    if x.is_negative() {
        -1
    } else {
        1
    }
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: usize) -> Result<IntPoly> {
    if n == 0 {
        return domain("cyclotomic polynomial of order 0");
    }
    let mut v = vec![BigInt::zero(); n + 1];
    v[0] = -BigInt::one();
    v[n] = BigInt::one();
    let mut q = IntPoly::new(v);
    for e in 1..n {
        if n.is_multiple_of(e) {
            q = q
                .div_exact(&cyclotomic(e)?)
                .ok_or_else(|| Error::Internal("cyclotomic division".into()))?;
        }
    }
    Ok(q)
}

/// Expansion of `value(zeta)`, `zeta` a primitive `n`-th root of unity, with
/// digits in `{0, +-1}`.
///
/// Each coefficient `a_j` becomes `|a_j|` copies of `sgn(a_j)` at exponents
/// `j + n (k + sum_{l<j} |a_l|)` for `k = 1..|a_j|`, using `zeta^n = 1`.
pub fn reduce_root_of_unity(n: usize, value: &IntPoly) -> Result<DigitExpansion> {
    let base = cyclotomic(n)?;
    let mut digits: Vec<BigInt> = Vec::new();
    let mut offset = 0usize;
    for (j, a) in value.coeffs().iter().enumerate() {
        let count = a
            .abs()
            .to_usize()
            .ok_or_else(|| Error::Unsupported("coefficient too large to expand".into()))?;
        let s = BigInt::from(sign(a));
        for k in 1..=count {
            let e = j + n * (offset + k);
            if digits.len() <= e {
                digits.resize(e + 1, BigInt::zero());
            }
            digits[e] = s.clone();
        }
        offset += count;
    }
    let exp = DigitExpansion::new(digits, BigInt::one(), base);
    debug_assert!(exp.verify(value));
    Ok(exp)
}

/// Settings of the unimodular reducer. `khat` stands in for the alignment
/// constant `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitCircleConfig {
    pub khat: u64,
    pub khat_max: u64,
    pub max_steps: usize,
    pub precision_bits: u64,
}

impl Default for UnitCircleConfig {
    fn default() -> Self {
        UnitCircleConfig {
            khat: 8,
            khat_max: 1 << 14,
            max_steps: 100_000,
            precision_bits: 64,
        }
    }
}

impl UnitCircleConfig {
    pub fn big_digit_lo(&self, c: &BigInt) -> BigInt {
        c * BigInt::from(5 * self.khat)
    }

    pub fn big_digit_hi(&self, c: &BigInt) -> BigInt {
        c * BigInt::from(5 * self.khat + 1)
    }

    pub fn remainder_radius(&self, c: &BigInt) -> BigInt {
        c * BigInt::from(43 * self.khat + 10)
    }
}

/// State of the unimodular reducer on `beta = A(alpha)`.
struct Walker<'a> {
    c: BigInt,
    tail: Vec<BigInt>,
    alphas: &'a [Complex64],
}

impl Walker<'_> {
    /// `beta -> (beta - digit) / alpha` with `digit = d_lo + (A_0 mod c)`.
    fn step(&self, a: &mut Vec<BigInt>, d_lo: &BigInt) -> BigInt {
        let a0 = a.first().cloned().unwrap_or_default();
        let digit = d_lo + a0.mod_floor(&self.c);
        let q = (&a0 - &digit) / &self.c;
        let len = (a.len().max(1) - 1).max(self.tail.len());
        let next: Vec<BigInt> = (0..len)
            .map(|j| {
                let t = self.tail.get(j).map(|x| x * &q).unwrap_or_default();
                a.get(j + 1).cloned().unwrap_or_default() - t
            })
            .collect();
        *a = next;
        while a.last().is_some_and(|x| x.is_zero()) {
            a.pop();
        }
        digit
    }

    fn embed(&self, a: &[BigInt]) -> Vec<Complex64> {
        self.alphas
            .iter()
            .map(|z| {
                a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, x| {
                    acc * z + Complex64::new(x.to_f64().unwrap_or(f64::INFINITY), 0.0)
                })
            })
            .collect()
    }

    /// Smallest `l <= khat` with `|arg(beta_j / alpha_j^l)| <= 2 pi / 5` for
    /// every upper conjugate.
    fn alignment(&self, phi: &[Complex64], khat: u64) -> Option<u64> {
        (0..=khat).find(|&l| {
            phi.iter().zip(self.alphas).all(|(b, z)| {
                let w = b * z.conj().powu(l as u32);
                w.arg().abs() <= 2.0 * PI / 5.0
            })
        })
    }
}

/// Heuristic expansion of `value(alpha)` for unimodular non-roots of unity.
///
/// Iterates `T: beta -> (beta - d) / alpha` with small digits `0 <= d < c`.
/// When the largest conjugate of the remainder exceeds `R = (43 khat + 10) c`,
/// it looks for `l <= khat` aligning every conjugate within `2 pi / 5` of
/// `alpha_j^l`, takes `l` small steps and then one big digit in
/// `[5 khat c, (5 khat + 1) c)`. It stops when a remainder repeats and places
/// that remainder's coefficients after the digits. Alignment failure doubles
/// `khat` up to `khat_max`. Returns `None` when `max_steps` runs out.
pub fn reduce_unit_circle(
    p: &IntPoly,
    value: &IntPoly,
    cfg: &UnitCircleConfig,
) -> Result<Option<DigitExpansion>> {
    let p = irreducible_primitive(p)?;
    match classify_hrp(&p)? {
        HrpStatus::UnitCircle { .. } => {}
        _ => return domain("reduce_unit_circle needs a unimodular non-root of unity"),
    }
    let c = p.coeff(0);
    let alphas: Vec<Complex64> = upper_half_sorted(&p, cfg.precision_bits)?
        .iter()
        .map(|r| r.approx())
        .collect();
    let walker = Walker {
        tail: p.coeffs()[1..].to_vec(),
        c: c.clone(),
        alphas: &alphas,
    };
    let mut khat = cfg.khat.max(1);
    while khat <= cfg.khat_max {
        let run = UnitCircleConfig { khat, ..cfg.clone() };
        match unit_circle_run(&walker, &p, value, &run) {
            Run::Done(e) => return Ok(Some(e)),
            Run::Exhausted => return Ok(None),
            Run::Misaligned => khat *= 2,
        }
    }
    Ok(None)
}

enum Run {
    Done(DigitExpansion),
    Exhausted,
    Misaligned,
}

fn unit_circle_run(w: &Walker, p: &IntPoly, value: &IntPoly, cfg: &UnitCircleConfig) -> Run {
    let c = &w.c;
    let radius = cfg.remainder_radius(c).to_f64().unwrap_or(f64::INFINITY);
    let big_lo = cfg.big_digit_lo(c);
    let zero = BigInt::zero();
    let mut a: Vec<BigInt> = value.coeffs().to_vec();
    let mut digits: Vec<BigInt> = Vec::new();
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut steps = 0usize;
    while seen.insert(a.clone()) {
        if steps >= cfg.max_steps {
            return Run::Exhausted;
        }
        let phi = w.embed(&a);
        let norm = phi.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if norm > radius {
            let Some(l) = w.alignment(&phi, cfg.khat) else {
                return Run::Misaligned;
            };
            for _ in 0..l {
                digits.push(w.step(&mut a, &zero));
            }
            digits.push(w.step(&mut a, &big_lo));
            steps += l as usize + 1;
        } else {
            digits.push(w.step(&mut a, &zero));
            steps += 1;
        }
    }
    let tail_height = a.iter().map(|x| x.abs()).max().unwrap_or_default();
    digits.extend(a);
    let bound = cfg.big_digit_hi(c).max(tail_height);
    let e = DigitExpansion::new(digits, bound, p.clone());
    debug_assert!(e.verify(value));
    Run::Done(e)
}

/// Remainders visited by [`reduce_unit_circle`] up to the first repeat, with
/// the index where the cycle starts.
pub fn unit_circle_orbit(
    p: &IntPoly,
    value: &IntPoly,
    cfg: &UnitCircleConfig,
) -> Result<Option<(Vec<IntPoly>, usize)>> {
    let p = irreducible_primitive(p)?;
    let c = p.coeff(0);
    let alphas: Vec<Complex64> = upper_half_sorted(&p, cfg.precision_bits)?
        .iter()
        .map(|r| r.approx())
        .collect();
    let w = Walker {
        tail: p.coeffs()[1..].to_vec(),
        c: c.clone(),
        alphas: &alphas,
    };
    let radius = cfg.remainder_radius(&c).to_f64().unwrap_or(f64::INFINITY);
    let big_lo = cfg.big_digit_lo(&c);
    let zero = BigInt::zero();
    let mut a: Vec<BigInt> = value.coeffs().to_vec();
    let mut orbit: Vec<Vec<BigInt>> = Vec::new();
    for _ in 0..cfg.max_steps {
        if let Some(i) = orbit.iter().position(|x| *x == a) {
            return Ok(Some((orbit.into_iter().map(IntPoly::new).collect(), i)));
        }
        orbit.push(a.clone());
        let phi = w.embed(&a);
        let norm = phi.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if norm > radius {
            let Some(l) = w.alignment(&phi, cfg.khat) else {
                return Ok(None);
            };
            for _ in 0..l {
                w.step(&mut a, &zero);
            }
            w.step(&mut a, &big_lo);
        } else {
            w.step(&mut a, &zero);
        }
    }
    Ok(None)
}

/// Characteristic polynomial of multiplication by `a(alpha)` on `Q(alpha)`.
pub fn element_charpoly(p: &IntPoly, a: &IntPoly) -> Result<RatPoly> {
    let p = irreducible_primitive(p)?;
    let d = p.degree();
    let pr = RatPoly::from(&p);
    let ar = RatPoly::from(a).rem(&pr);
    // column i holds x^i a(x) mod p
    let mut m = vec![vec![BigRational::zero(); d]; d];
    let mut col = ar.clone();
    let x = RatPoly::from(&IntPoly::monomial(BigInt::one(), 1));
    for i in 0..d {
        for (r, v) in col.coeffs().iter().enumerate() {
            m[r][i] = v.clone();
        }
        col = (&col * &x).rem(&pr);
    }
    // Faddeev-LeVerrier
    let mut coeffs = vec![BigRational::zero(); d + 1];
    coeffs[d] = BigRational::one();
    let mut mk = vec![vec![BigRational::zero(); d]; d];
    for k in 1..=d {
        let mut next = vec![vec![BigRational::zero(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let mut s = BigRational::zero();
                for t in 0..d {
                    s += &m[i][t] * &mk[t][j];
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[d - k + 1];
        }
        mk = next;
        let mut tr = BigRational::zero();
        for i in 0..d {
            for t in 0..d {
                tr += &m[i][t] * &mk[t][i];
            }
        }
        coeffs[d - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    Ok(RatPoly::new(coeffs))
}

/// Whether `a(alpha)` is an algebraic integer.
pub fn is_algebraic_integer(p: &IntPoly, a: &IntPoly) -> Result<bool> {
    Ok(element_charpoly(p, a)?.coeffs().iter().all(|c| c.is_integer()))
}

/// The contraction inequality `|z + r (w - 5)| < |z|` behind the big-digit
/// step, for `|arg z| <= 2 pi / 5`, `|w| <= 1` and `0 < r < 4 |z| / 145`.
pub fn big_digit_contracts(z: Complex64, w: Complex64, r: f64) -> bool {
    (z + r * (w - 5.0)).norm() < z.norm()
}

/// Whether `(z, w, r)` satisfies the hypotheses of [`big_digit_contracts`].
pub fn big_digit_admissible(z: Complex64, w: Complex64, r: f64) -> bool {
    z.norm() > 0.0
        && z.arg().abs() <= 2.0 * PI / 5.0
        && w.norm() <= 1.0
        && r > 0.0
        && r < 4.0 * z.norm() / 145.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn digits(e: &DigitExpansion) -> Vec<i64> {
        e.digits.iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_hrp(&p(&[1, 1, 1])).unwrap(), HrpStatus::RootOfUnity);
        assert_eq!(classify_hrp(&p(&[3, -3, 1])).unwrap(), HrpStatus::Expanding);
        assert_eq!(classify_hrp(&p(&[-1, -1, 1])).unwrap(), HrpStatus::MixedNoHrp);
        assert_eq!(
            classify_hrp(&p(&[3, 0, -3, 2, 3, 0, -1, 0, 3, 2, -3, 0, 3])).unwrap(),
            HrpStatus::UnitCircle {
                m_alpha: 3,
                verdict: Verdict::Unknown
            }
        );
        assert_eq!(
            classify_hrp(&p(&[2, 3, 2])).unwrap(),
            HrpStatus::UnitCircle {
                m_alpha: 1,
                verdict: Verdict::HrpProven
            }
        );
        assert!(classify_hrp(&p(&[-1, 0, 1])).is_err());
    }

    #[test]
    fn dominant_examples() {
        assert_eq!(
            construct_dominant(&p(&[2, -2, 1]), 0, true).unwrap(),
            p(&[4, 0, 0, 0, 1])
        );
        assert_eq!(construct_dominant(&p(&[-2, 1]), 0, true).unwrap(), p(&[-2, 1]));
        assert_eq!(
            construct_dominant(&p(&[1, 1, 1]), 0, false).unwrap(),
            p(&[-2, 0, 0, 1, 0, 0, 1])
        );
        assert!(construct_dominant(&p(&[1, 1, 1]), 0, true).is_err());
        assert!(construct_dominant(&p(&[2, 3, 2]), 0, false).is_err());
    }

    #[test]
    fn dominant_with_inside_roots() {
        // 1 + 5x + 2x^2: one root inside, one outside
        let q = p(&[1, 5, 2]);
        for k in 1..4 {
            let r = construct_dominant(&q, k, true).unwrap();
            assert!(has_dominant_term(&r, k, true));
            assert!(r.div_exact(&q).is_some());
        }
        assert!(construct_dominant(&q, 0, true).is_err());
    }

    #[test]
    fn expanding_examples() {
        assert_eq!(
            digits(&reduce_expanding(&p(&[-2, 1]), &p(&[-7])).unwrap()),
            [-1, -1, -1]
        );
        assert_eq!(digits(&reduce_expanding(&p(&[-2, 1]), &p(&[3])).unwrap()), [1, 1]);
        let e = reduce_expanding(&p(&[2, -2, 1]), &p(&[5])).unwrap();
        assert_eq!(digits(&e), [1, 0, 0, 0, -1]);
        assert_eq!(e.digit_bound, BigInt::from(3));
    }

    #[test]
    fn expanding_l1_decreases() {
        let r = reduce_expanding_traced(&p(&[3, -3, 1]), &p(&[123456, -98765, 4321])).unwrap();
        assert!(!r.l1_trace.is_empty());
        assert!(r.l1_trace.iter().all(|s| s.after < s.before));
        assert!(r.expansion.verify(&p(&[123456, -98765, 4321])));
    }

    #[test]
    fn root_of_unity_examples() {
        let e = reduce_root_of_unity(4, &p(&[3])).unwrap();
        let want: Vec<i64> = (0..=12).map(|j| i64::from(j > 0 && j % 4 == 0)).collect();
        assert_eq!(digits(&e), want);
        let e = reduce_root_of_unity(4, &p(&[-2])).unwrap();
        assert_eq!(digits(&e), [0, 0, 0, 0, -1, 0, 0, 0, -1]);
        assert!(reduce_root_of_unity(5, &IntPoly::zero())
            .unwrap()
            .digits
            .is_empty());
        assert!(reduce_root_of_unity(0, &p(&[1])).is_err());
        let v = p(&[2, -3, 0, 1]);
        assert!(reduce_root_of_unity(6, &v).unwrap().verify(&v));
    }

    #[test]
    fn unit_circle_examples() {
        let q = p(&[2, 3, 2]);
        let cfg = UnitCircleConfig::default();
        assert!(reduce_unit_circle(&q, &IntPoly::zero(), &cfg)
            .unwrap()
            .unwrap()
            .digits
            .is_empty());
        assert_eq!(
            digits(&reduce_unit_circle(&q, &p(&[1]), &cfg).unwrap().unwrap()),
            [1]
        );
        let e = reduce_unit_circle(&q, &p(&[7]), &cfg).unwrap().unwrap();
        assert!(e.verify(&p(&[7])));
        assert!(e.max_digit() <= BigInt::from((5 * 8 + 1) * 2).max(e.digit_bound.clone()));
        assert!(reduce_unit_circle(&p(&[-2, 1]), &p(&[1]), &cfg).is_err());
    }

    #[test]
    fn cycle_remainders_are_integral() {
        let q = p(&[2, 3, 2]);
        let cfg = UnitCircleConfig::default();
        for v in [7i64, -40, 1000, 12345] {
            let (orbit, start) = unit_circle_orbit(&q, &p(&[v, 3]), &cfg).unwrap().unwrap();
            for r in &orbit[start..] {
                assert!(is_algebraic_integer(&q, r).unwrap(), "{v}: {r}");
            }
        }
        // alpha itself is not integral
        assert!(!is_algebraic_integer(&q, &p(&[0, 1])).unwrap());
        assert!(is_algebraic_integer(&q, &p(&[0, 2])).unwrap());
    }

    #[test]
    fn charpoly_of_alpha_is_monic_minpoly() {
        let cp = element_charpoly(&p(&[2, 3, 2]), &p(&[0, 1])).unwrap();
        let half = BigRational::new(BigInt::from(3), BigInt::from(2));
        assert_eq!(cp.coeffs()[1], half);
    }
}
