//! Factorization over Q for degrees up to 24.
//!
//! Roots are isolated with certified discs, grouped into real roots and
//! complex-conjugate pairs, and subsets of these groups are recombined into
//! candidate factors. A candidate is `lc(f) * prod (x - r)` with coefficients
//! rounded from balls of width below 1/4, and it is accepted only after exact
//! trial division.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::ball::CBall;
use crate::error::{domain, Error, Result};
use crate::intpoly::{count_real_roots, IntPoly};
use crate::roots::{isolate_roots, RootBox};

/// Largest supported degree.
pub const MAX_DEGREE: usize = 24;

/// Irreducible primitive factors with positive leading coefficient and their
/// multiplicities, sorted by degree then coefficients.
pub fn factor_over_q(p: &IntPoly) -> Result<Vec<(IntPoly, usize)>> {
    if p.degree() == 0 {
        return domain("factorization needs degree at least 1");
    }
    if p.degree() > MAX_DEGREE {
        return Err(Error::Unsupported(format!(
            "factorization is limited to degree {MAX_DEGREE}, got {}",
            p.degree()
        )));
    }
    let mut out = Vec::new();
    let z = p.low_order();
    if z > 0 {
        out.push((IntPoly::from_i64s(&[0, 1]), z));
    }
    for (f, mult) in p.unshift(z).squarefree_decomposition()? {
        for g in factor_squarefree(&f)? {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(out)
}

/// True iff `p` has exactly one irreducible factor, of multiplicity one and
/// full degree. A nontrivial content does not count against this.
pub fn is_irreducible(p: &IntPoly) -> Result<bool> {
    let f = factor_over_q(p)?;
    Ok(f.len() == 1 && f[0].1 == 1 && f[0].0.degree() == p.degree())
}

/// Number of distinct irreducible factors.
pub fn distinct_factor_count(p: &IntPoly) -> Result<usize> {
    Ok(factor_over_q(p)?.len())
}

/// A conjugation-closed group: one real root or a conjugate pair.
struct Unit {
    roots: Vec<RootBox>,
}

fn straddles_real_axis(b: &RootBox) -> bool {
    !b.im_lo.mant.is_positive() && !b.im_hi.mant.is_negative()
}

/// Groups roots into real roots and conjugate pairs. Precision rises until
/// exactly the real roots (counted by Sturm) straddle the real axis and
/// every upper box meets the mirror image of exactly one lower box.
fn units_of(f: &IntPoly, bits: u64) -> Result<Vec<Unit>> {
    let nreal = count_real_roots(f)?;
    let mut b = bits;
    'outer: loop {
        let boxes = isolate_roots(f, b);
        b *= 2;
        let (real, rest): (Vec<_>, Vec<_>) = boxes.into_iter().partition(straddles_real_axis);
        if real.len() != nreal {
            continue;
        }
        let (upper, lower): (Vec<_>, Vec<_>) = rest.into_iter().partition(|r| r.im_lo.mant.is_positive());
        if upper.len() != lower.len() {
            continue;
        }
        let mut units: Vec<Unit> = real.into_iter().map(|r| Unit { roots: vec![r] }).collect();
        let mut taken = vec![false; lower.len()];
        for u in upper {
            let mirror = u.ball().conj();
            let hits: Vec<usize> = (0..lower.len())
                .filter(|&j| !taken[j] && balls_meet(&mirror, &lower[j].ball()))
                .collect();
            if hits.len() != 1 {
                continue 'outer;
            }
            taken[hits[0]] = true;
            units.push(Unit {
                roots: vec![u, lower[hits[0]].clone()],
            });
        }
        return Ok(units);
    }
}

fn balls_meet(a: &CBall, b: &CBall) -> bool {
    let p = a.prec().max(b.prec());
    let (a, b) = (a.with_prec(p), b.with_prec(p));
    let gap = |x: &crate::ball::RBall, y: &crate::ball::RBall| (&x.mid - &y.mid).abs() <= &x.rad + &y.rad;
    gap(&a.re, &b.re) && gap(&a.im, &b.im)
}

/// Rounded integer coefficients of `lc * prod (x - r)` if every ball is
/// narrower than 1/4, `None` otherwise.
fn candidate(lc: &BigInt, roots: &[&RootBox], prec: u64) -> Option<IntPoly> {
    let mut poly: Vec<CBall> = vec![CBall::from_int(lc, prec)];
    for r in roots {
        let z = r.ball().with_prec(prec);
        let mut next = vec![CBall::zero(prec); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.mul(&z));
        }
        poly = next;
    }
    let quarter = BigInt::one() << (prec - 2) as usize;
    let mut out = Vec::with_capacity(poly.len());
    for c in &poly {
        if c.re.rad >= quarter || c.im.rad >= quarter {
            return None;
        }
        if !c.im.contains_zero() {
            return Some(IntPoly::zero());
        }
        let half = BigInt::one() << (prec - 1) as usize;
        let k = (&c.re.mid + &half) >> prec as usize;
        let diff = &c.re.mid - (&k << prec as usize);
        if diff.abs() > c.re.rad {
            // no integer in the ball: not a factor
            return Some(IntPoly::zero());
        }
        out.push(k);
    }
    Some(IntPoly::new(out))
}

fn factor_squarefree(f: &IntPoly) -> Result<Vec<IntPoly>> {
    let f = f.primitive_normalized();
    if f.degree() <= 1 {
        return Ok(vec![f]);
    }
    let lc = f.lc();
    let mag_bits = 2 + lc.bits() + f.height().bits() + f.degree() as u64;
    let mut bits = 64 + mag_bits;
    loop {
        match recombine(&f, &lc, bits) {
            Some(factors) => return Ok(factors),
            None => bits *= 2,
        }
        if bits > 1 << 16 {
            return Err(Error::Internal("factor recombination did not settle".into()));
        }
    }
}

/// Returns `None` if the precision was too low to round some candidate.
///
/// Subsets are tried by increasing size, so each accepted factor is
/// irreducible; a split always has a side with at most half the groups.
fn recombine(f: &IntPoly, lc: &BigInt, bits: u64) -> Option<Vec<IntPoly>> {
    let prec = bits + 16;
    let mut units = units_of(f, bits).ok()?;
    let mut rest = f.clone();
    let mut factors = Vec::new();
    let mut size = 1;
    while 2 * size <= units.len() {
        let mut found = None;
        for subset in Subsets::new(units.len(), size) {
            let roots: Vec<&RootBox> = subset.iter().flat_map(|&i| units[i].roots.iter()).collect();
            let cand = candidate(lc, &roots, prec)?;
            if cand.is_zero() {
                continue;
            }
            let g = cand.primitive_normalized();
            if g.degree() != roots.len() {
                continue;
            }
            if let Some(q) = rest.div_exact(&g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                factors.push(g);
                rest = q.primitive_normalized();
                let mut idx = subset;
                idx.sort_unstable_by(|a, b| b.cmp(a));
                for i in idx {
                    units.remove(i);
                }
            }
            None => size += 1,
        }
    }
    factors.push(rest);
    Some(factors)
}

/// Lexicographic `k`-subsets of `0..n`.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
