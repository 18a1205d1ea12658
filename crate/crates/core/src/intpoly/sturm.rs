use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::IntPoly;
use crate::error::{domain, Result};

/// Sturm chain of a squarefree polynomial with integer members.
///
/// Each remainder is a positive multiple of the true negated remainder, so
/// sign patterns are exactly those of the rational chain.
pub fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone()];
    if p.is_constant() {
        return chain;
    }
    chain.push(p.derivative());
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.is_constant() {
            break;
        }
        let delta = a.degree() - b.degree();
        let r = a.pseudo_rem(b);
        if r.is_zero() {
            break;
        }
        // prem = lc(b)^(delta+1) * rem
        let flip = b.lc().is_negative() && (delta + 1) % 2 == 1;
        let next = if flip { r } else { -&r };
        let g = next.content();
        chain.push(next.div_scalar_exact(&g));
    }
    chain
}

fn variations_at(chain: &[IntPoly], x: &BigRational) -> usize {
    let mut last = Sign::NoSign;
    let mut v = 0;
    for s in chain {
        let sg = s.sign_at(x);
        if sg == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && sg != last {
            v += 1;
        }
        last = sg;
    }
    v
}

/// Distinct real roots of `p` in the half-open interval `(lo, hi]`.
pub fn sturm_count_real_roots(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    if p.is_zero() {
        return domain("Sturm count of the zero polynomial");
    }
    if lo >= hi {
        return domain("Sturm count needs lo < hi");
    }
    if p.is_constant() {
        return Ok(0);
    }
    let q = p.squarefree_part()?;
    let chain = sturm_chain(&q);
    Ok(variations_at(&chain, lo) - variations_at(&chain, hi))
}

/// Distinct real roots in the closed interval `[lo, hi]`.
pub fn count_real_roots_closed(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    let open = sturm_count_real_roots(p, lo, hi)?;
    Ok(open + usize::from(p.sign_at(lo) == Sign::NoSign))
}

/// Cauchy bound: every complex root has modulus below `1 + max|c_j / c_n|`.
pub(crate) fn cauchy_bound(p: &IntPoly) -> BigInt {
    let lc = p.lc().abs();
    let m = p.coeffs()[..p.degree()]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    BigInt::one() + (m + &lc - 1u32) / lc
}

/// All distinct real roots.
pub fn count_real_roots(p: &IntPoly) -> Result<usize> {
    if p.is_zero() {
        return domain("root count of the zero polynomial");
    }
    if p.is_constant() {
        return Ok(0);
    }
    let b = BigRational::from_integer(cauchy_bound(p));
    sturm_count_real_roots(p, &-b.clone(), &b)
}
