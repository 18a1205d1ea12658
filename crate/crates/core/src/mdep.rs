//! Multiplicative dependence among the conjugates of a unimodular algebraic
//! number.
//!
//! Conjugates are indexed by the roots in the open upper half plane sorted
//! by real part. A relation is an exponent vector `k` with
//! `prod alpha_j^k_j = zeta`, `zeta` a root of unity. Since every conjugate
//! has modulus 1, `alpha^-1 = conj(alpha)` and the lower half plane adds
//! nothing new.
//!
//! Candidates come from LLL on the argument lattice and are proven exactly.
//! For a candidate with root-of-unity order `N`, support `s` among `n`
//! upper conjugates and `M = max |k_j|`, put `E = N M` and let `c` be the
//! leading coefficient. Every conjugate of `beta = prod alpha_j^k_j` is a
//! product of roots of `p` in which each root occurs at most `M` times, so
//! the symmetric functions of those conjugates have denominators dividing
//! `c^M` per factor and `c^M beta` is integral. Then
//! `delta = c^E (beta^N - 1)` is an algebraic integer of degree at most
//! `D = 2^s n! / (n - s)!` whose conjugates are bounded by `2 c^E`, so
//! `delta != 0` forces `|beta^N - 1| >= c^-E (2 c^E)^-(D-1)`. An enclosure
//! below that bound
//! proves `beta^N = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::ball::{self, CBall, RBall};
use crate::cheb::{all_roots_on_circle, HalfCoeffs};
use crate::error::{domain, Error, Result};
use crate::intpoly::{power_map_minpoly, IntPoly};
use crate::lll::{self, integer_kernel, normalize_sign, rank, saturate, SearchConfig};
use crate::roots::{self, upper_half_sorted, RootBox};

/// `zeta = exp(2 pi i power / order)` with `gcd(power, order) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootOfUnity {
    pub order: u64,
    pub power: u64,
}

impl RootOfUnity {
    fn reduced(power: u64, order: u64) -> Self {
        let g = power.gcd(&order).max(1);
        RootOfUnity {
            order: order / g,
            power: power / g,
        }
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    /// Numerical value.
    pub fn approx(&self) -> num_complex::Complex64 {
        let t = std::f64::consts::TAU * self.power as f64 / self.order as f64;
        num_complex::Complex64::new(t.cos(), t.sin())
    }
}

/// A proven relation `prod alpha_j^k_j = zeta` with
/// `sum k_j theta_j + 2 pi w = 2 pi power / order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    #[serde(with = "crate::serde_big::vec")]
    exponents: Vec<BigInt>,
    #[serde(with = "crate::serde_big")]
    two_pi_multiple: BigInt,
    cofactor: RootOfUnity,
}

impl Relation {
    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn two_pi_multiple(&self) -> &BigInt {
        &self.two_pi_multiple
    }

    pub fn cofactor(&self) -> RootOfUnity {
        self.cofactor
    }

    /// Indices with a nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exponents.len())
            .filter(|&j| !self.exponents[j].is_zero())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IndependenceMode {
    Certified,
    Heuristic,
}

/// `alpha^b` has the strictly smaller degree minimal polynomial `minpoly`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerReduction {
    pub b: u64,
    pub minpoly: IntPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DependenceReport {
    pub m_alpha: usize,
    pub relations: Vec<Relation>,
    pub power_reducible: Option<PowerReduction>,
    pub independence_mode: IndependenceMode,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdepConfig {
    pub search: SearchConfig,
    /// Largest root-of-unity order tried for a cofactor.
    pub order_bound: u64,
    /// Precision used to locate the cofactor.
    pub start_bits: u64,
    /// Ceiling for the separation proof.
    pub max_bits: u64,
    /// Treat `search.bound_b` as a proven independence bound.
    pub trust_bound: bool,
}

impl Default for MdepConfig {
    fn default() -> Self {
        MdepConfig {
            search: SearchConfig::default(),
            order_bound: 120,
            start_bits: roots::default_bits(),
            max_bits: 1 << 22,
            trust_bound: false,
        }
    }
}

fn check_input(p: &IntPoly) -> Result<()> {
    let h = HalfCoeffs::of_reciprocal(p)?;
    if !all_roots_on_circle(&h) {
        return domain("not every root lies on the unit circle");
    }
    Ok(())
}

/// `prod z_j^k_j` as a ball, using `conj` for negative powers.
fn product_ball(roots: &[RootBox], k: &[BigInt], bits: u64) -> Result<CBall> {
    let mut acc = CBall::one(bits);
    for (r, e) in roots.iter().zip(k) {
        if e.is_zero() {
            continue;
        }
        let mag = e
            .magnitude()
            .to_u64()
            .ok_or_else(|| Error::Unsupported("exponent too large".into()))?;
        let z = r.refine(bits).ball().with_prec(bits);
        let z = if e.is_negative() { z.conj() } else { z };
        acc = acc.mul(&z.powi(mag));
    }
    Ok(acc)
}

/// `sum k_j theta_j / 2pi` as a ball.
fn turns(roots: &[RootBox], k: &[BigInt], bits: u64) -> Result<RBall> {
    let args = roots::arguments(roots, bits)?;
    let mut s = RBall::zero(bits + 8);
    for (a, e) in args.iter().zip(k) {
        s = s.add(&a.ball().with_prec(bits + 8).mul_int(e));
    }
    let two_pi = ball::pi(bits + 8).mul_2exp(1);
    s.div(&two_pi)
        .ok_or_else(|| Error::Internal("division by 2pi".into()))
}

/// Builds the relation once `beta^m = 1` is known: reads off the exponent
/// of `zeta` from a certified argument sum.
fn relation_with_order(roots: &[RootBox], k: &[BigInt], m: u64) -> Result<Relation> {
    let mb = BigInt::from(m);
    let mut bits = 96 + 2 * mb.bits();
    loop {
        let t = turns(roots, k, bits)?.mul_int(&mb);
        // t encloses the integer J = m * sum k theta / 2pi; radius below 1/2 pins it
        if t.rad < BigInt::one() << (t.prec - 1) as usize {
            let half = BigInt::one() << (t.prec - 1) as usize;
            let j = (&t.mid + half) >> t.prec as usize;
            let a = j.mod_floor(&mb);
            let w = (&a - &j) / &mb;
            let a = a.to_u64().expect("a < m");
            return Ok(Relation {
                exponents: k.to_vec(),
                two_pi_multiple: w,
                cofactor: RootOfUnity::reduced(a, m),
            });
        }
        bits *= 2;
        if bits > 1 << 20 {
            return Err(Error::Precision("cofactor identification".into()));
        }
    }
}

/// Smallest `N <= bound` with `|beta^N - 1| < 2^-tol`.
fn probable_order(roots: &[RootBox], k: &[BigInt], bound: u64, tol: u64) -> Result<Option<u64>> {
    let beta = product_ball(roots, k, 2 * tol + 64)?;
    let mut pw = beta.clone();
    for n in 1..=bound {
        let diff = pw.sub(&CBall::one(pw.prec()));
        let lim = BigInt::one() << (2 * (pw.prec() - tol)) as usize;
        if diff.abs_sqr_hi() < lim {
            return Ok(Some(n));
        }
        pw = pw.mul(&beta);
    }
    Ok(None)
}

fn factorial_ratio(n: usize, s: usize) -> BigInt {
    ((n - s + 1)..=n).fold(BigInt::one(), |acc, v| acc * BigInt::from(v))
}

/// Exact decision whether `prod alpha_j^k_j` is a root of unity of order at
/// most the configured bound. `None` means it is not.
pub fn verify_relation_with(
    p: &IntPoly,
    roots: &[RootBox],
    k: &[BigInt],
    cfg: &MdepConfig,
) -> Result<Option<Relation>> {
    verify_candidate(p, roots, k, cfg, cfg.start_bits.max(96) / 2)
}

/// As [`verify_relation_with`]; `tol` sets how close to a root of unity the
/// product must be before the separation proof is attempted.
fn verify_candidate(
    p: &IntPoly,
    roots: &[RootBox],
    k: &[BigInt],
    cfg: &MdepConfig,
    tol: u64,
) -> Result<Option<Relation>> {
    if k.len() != roots.len() {
        return domain(format!("expected {} exponents, got {}", roots.len(), k.len()));
    }
    if k.iter().all(Zero::is_zero) {
        return domain("the zero vector is not a relation");
    }
    let Some(n_ord) = probable_order(roots, k, cfg.order_bound, tol)? else {
        return Ok(None);
    };
    let n = roots.len();
    let s = k.iter().filter(|x| !x.is_zero()).count();
    let d = (BigInt::one() << s) * factorial_ratio(n, s);
    let d = d
        .to_u64()
        .ok_or_else(|| Error::Precision("degree bound too large".into()))?;
    let top = k.iter().map(|x| x.abs()).max().unwrap_or_default();
    let e = (top * n_ord)
        .to_u64()
        .ok_or_else(|| Error::Unsupported("exponent too large".into()))?;
    let c = p.lc().abs();
    // |beta^N - 1|^2 c^(2ED) 2^(2(D-1)) < 1 proves beta^N = 1
    let log2c = c.to_f64().map_or(c.bits() as f64, f64::log2);
    let need = (e as f64 * d as f64 * log2c + (d - 1) as f64).ceil() as u64;
    let mut bits = need + 64 + 2 * (64 - e.leading_zeros() as u64);
    if need > cfg.max_bits {
        return Err(Error::Precision(format!(
            "separation proof needs about {need} bits"
        )));
    }
    let cpow = num_traits::pow(c, (2 * e * d) as usize);
    loop {
        let beta = product_ball(roots, k, bits)?;
        let diff = beta.powi(n_ord).sub(&CBall::one(bits));
        let p2 = 2 * diff.prec();
        let shift = p2 as i64 - 2 * (d as i64 - 1);
        if shift > 0 && diff.abs_sqr_hi() * &cpow < BigInt::one() << shift as usize {
            return relation_with_order(roots, k, n_ord).map(Some);
        }
        if diff.abs_sqr_lo().is_positive() {
            let lo_ok = shift <= 0 || diff.abs_sqr_lo() * &cpow >= BigInt::one() << shift as usize;
            if lo_ok {
                return Ok(None);
            }
        }
        bits += bits / 2;
        if bits > cfg.max_bits + 4096 {
            return Err(Error::Precision(
                "relation undecided at the precision ceiling".into(),
            ));
        }
    }
}

/// Exact check of a candidate exponent vector against the roots of `p`.
pub fn verify_relation_exact(p: &IntPoly, candidate: &[BigInt]) -> Result<Option<Relation>> {
    check_input(p)?;
    let cfg = MdepConfig::default();
    let roots = upper_half_sorted(p, cfg.start_bits)?;
    verify_relation_with(p, &roots, candidate, &cfg)
}

/// Relation for a vector in the rational span of proven relations: some
/// multiple `t k` is an integer combination of them, so `beta^(t L) = 1`
/// with `L` the lcm of their orders.
fn derived_relation(roots: &[RootBox], k: &[BigInt], basis: &[Relation]) -> Result<Relation> {
    let r = basis.len();
    let n = k.len();
    // columns: basis relations and -k; kernel vectors (x, t) with sum x_i R_i = t k
    let a: Vec<Vec<BigInt>> = (0..n)
        .map(|c| {
            let mut row: Vec<BigInt> = basis.iter().map(|b| b.exponents[c].clone()).collect();
            row.push(-&k[c]);
            row
        })
        .collect();
    let ker = integer_kernel(&a, r + 1);
    let t = ker
        .iter()
        .map(|v| v[r].abs())
        .filter(|t| !t.is_zero())
        .min()
        .ok_or_else(|| Error::Internal("vector is outside the span of the relations".into()))?;
    let l = basis
        .iter()
        .fold(BigInt::one(), |acc, b| acc.lcm(&BigInt::from(b.cofactor.order)));
    let m = (t * l)
        .to_u64()
        .ok_or_else(|| Error::Unsupported("cofactor order too large".into()))?;
    let rel = relation_with_order(roots, k, m)?;
    Ok(rel)
}

/// Computes relations, `m(alpha)` and power reducibility.
pub fn analyze(p: &IntPoly, cfg: &MdepConfig) -> Result<DependenceReport> {
    check_input(p)?;
    let p = p.primitive_normalized();
    let roots = upper_half_sorted(&p, cfg.start_bits)?;
    let n = roots.len();
    let mut diagnostics = Vec::new();
    if p.lc().is_one() {
        return cyclotomic_report(&p, &roots);
    }
    let mut proven: Vec<Relation> = Vec::new();
    let mut settled = false;
    for c in cfg.search.scales(n) {
        // near-relations at this scale miss a root of unity by about 1/C
        let tol = 3 * c.bits();
        let red = lll::reduced_dependence_lattice(&roots, &c)?;
        let mut rejected = false;
        let mut survivors = Vec::new();
        for (v, coords) in &red {
            if !cfg.search.is_short(n, v) {
                continue;
            }
            let e = normalize_sign(primitive(&coords[..n]));
            if e.iter().all(Zero::is_zero) || in_span(&proven, &e) {
                continue;
            }
            if probable_order(&roots, &e, cfg.order_bound, tol)?.is_some() {
                survivors.push(e);
            } else {
                rejected = true;
                diagnostics.push(format!("C={c}: candidate {} rejected", fmt_vec(&e)));
            }
        }
        if !survivors.is_empty() {
            let mut rows: Vec<Vec<BigInt>> = proven.iter().map(|r| r.exponents.clone()).collect();
            rows.extend(survivors);
            let target = saturate(&rows, n);
            for v in sparse_pool(&target) {
                if proven.len() == target.len() {
                    break;
                }
                if in_span(&proven, &v) {
                    continue;
                }
                match verify_candidate(&p, &roots, &v, cfg, tol) {
                    Ok(Some(rel)) => proven.push(rel),
                    Ok(None) => diagnostics.push(format!("C={c}: {} is not a relation", fmt_vec(&v))),
                    Err(err) if err.is_limit() => {
                        diagnostics.push(format!("C={c}: {} undecided: {err}", fmt_vec(&v)))
                    }
                    Err(err) => return Err(err),
                }
            }
            if proven.len() < target.len() {
                rejected = true;
            }
        }
        if !rejected {
            settled = true;
            break;
        }
    }
    if !settled {
        diagnostics.push("short non-relations remained at every scale".into());
    }
    let exps: Vec<Vec<BigInt>> = proven.iter().map(|r| r.exponents.clone()).collect();
    let mut relations = Vec::new();
    for v in saturate(&exps, n) {
        relations.push(derived_relation(&roots, &normalize_sign(v), &proven)?);
    }
    let rank = relations.len();
    let m_alpha = n - rank;
    let independence_mode = if rank + 1 == n || (cfg.trust_bound && settled) {
        IndependenceMode::Certified
    } else {
        IndependenceMode::Heuristic
    };
    let power_reducible = power_reduction(&p, &roots, &relations)?;
    Ok(DependenceReport {
        m_alpha,
        relations,
        power_reducible,
        independence_mode,
        diagnostics,
    })
}

/// Every conjugate is a root of unity: the relation lattice is everything.
fn cyclotomic_report(p: &IntPoly, roots: &[RootBox]) -> Result<DependenceReport> {
    let m = p
        .root_of_unity_order()
        .ok_or_else(|| Error::Internal("monic unimodular polynomial is not cyclotomic".into()))?
        as u64;
    let n = roots.len();
    let mut relations = Vec::new();
    for j in 0..n {
        let e: Vec<BigInt> = (0..n).map(|i| BigInt::from((i == j) as u8)).collect();
        relations.push(relation_with_order(roots, &e, m)?);
    }
    Ok(DependenceReport {
        m_alpha: 0,
        relations,
        power_reducible: None,
        independence_mode: IndependenceMode::Certified,
        diagnostics: vec![format!("all conjugates are {m}-th roots of unity")],
    })
}

/// Smallest `b` such that two conjugates, not a complex-conjugate pair,
/// satisfy `alpha_i^b = alpha_j^(+-b)`, read off the relation lattice.
fn power_reduction(p: &IntPoly, roots: &[RootBox], rels: &[Relation]) -> Result<Option<PowerReduction>> {
    let n = roots.len();
    let r = rels.len();
    let mut best: Option<u64> = None;
    for i in 0..n {
        for j in i + 1..n {
            let a: Vec<Vec<BigInt>> = (0..n)
                .filter(|&c| c != i && c != j)
                .map(|c| rels.iter().map(|rel| rel.exponents[c].clone()).collect())
                .collect();
            let ker = if a.is_empty() {
                (0..r)
                    .map(|t| (0..r).map(|u| BigInt::from((t == u) as u8)).collect())
                    .collect()
            } else {
                integer_kernel(&a, r)
            };
            let Some(x) = ker.first() else { continue };
            let mut v = vec![BigInt::zero(); n];
            for (xt, rel) in x.iter().zip(rels) {
                for (vc, ec) in v.iter_mut().zip(&rel.exponents) {
                    *vc += xt * ec;
                }
            }
            let v = normalize_sign(primitive(&v));
            if v[i].is_zero() || v[j].is_zero() {
                continue;
            }
            let rel = derived_relation(roots, &v, rels)?;
            let b = (v[i].abs() * rel.cofactor.order)
                .to_u64()
                .ok_or_else(|| Error::Unsupported("power too large".into()))?;
            best = Some(best.map_or(b, |x| x.min(b)));
        }
    }
    let Some(b) = best else { return Ok(None) };
    let minpoly = power_map_minpoly(p, b as usize)?;
    if minpoly.degree() >= p.degree() {
        return Err(Error::Internal(format!("alpha^{b} does not drop the degree")));
    }
    Ok(Some(PowerReduction { b, minpoly }))
}

/// Relation lattice basis of the conjugates of `p`.
pub fn relation_lattice(p: &IntPoly) -> Result<Vec<Relation>> {
    Ok(analyze(p, &MdepConfig::default())?.relations)
}

/// `m(alpha)` with the full report.
pub fn m_alpha(p: &IntPoly) -> Result<(usize, DependenceReport)> {
    let rep = analyze(p, &MdepConfig::default())?;
    Ok((rep.m_alpha, rep))
}

/// Power reducibility of an irreducible unimodular `p`.
pub fn power_reducibility(p: &IntPoly) -> Result<Option<PowerReduction>> {
    Ok(analyze(p, &MdepConfig::default())?.power_reducible)
}

/// Basis vectors with their pairwise sums and differences, sparsest first.
fn sparse_pool(basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut pool: Vec<Vec<BigInt>> = basis.iter().map(|v| normalize_sign(v.clone())).collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            for sign in [1i8, -1] {
                let v: Vec<BigInt> = basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(a, b)| if sign > 0 { a + b } else { a - b })
                    .collect();
                pool.push(normalize_sign(primitive(&v)));
            }
        }
    }
    let cost = |v: &Vec<BigInt>| {
        let s = v.iter().filter(|x| !x.is_zero()).count();
        let t: BigInt = v.iter().map(|x| x.abs()).sum();
        (s, t)
    };
    pool.sort_by_key(cost);
    pool.dedup();
    pool.retain(|v| v.iter().any(|x| !x.is_zero()));
    pool
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

fn in_span(rels: &[Relation], e: &[BigInt]) -> bool {
    if rels.is_empty() {
        return false;
    }
    let mut rows: Vec<Vec<BigInt>> = rels.iter().map(|r| r.exponents.clone()).collect();
    let before = rank(&rows);
    rows.push(e.to_vec());
    rank(&rows) == before
}

fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn verify_examples() {
        let r = verify_relation_exact(&p(&[1, 0, 1]), &big(&[4]))
            .unwrap()
            .unwrap();
        assert!(r.cofactor().is_one());
        let r = verify_relation_exact(&p(&[2, -2, 3, -2, 3, -2, 2]), &big(&[1, -1, 1]))
            .unwrap()
            .unwrap();
        assert_eq!(r.cofactor(), RootOfUnity { order: 4, power: 1 });
        let d12 = p(&[3, -3, 1, 1, -2, 2, -1, 2, -2, 1, 1, -3, 3]);
        let r = verify_relation_exact(&d12, &big(&[1, -1, 0, 0, 0, 1]))
            .unwrap()
            .unwrap();
        assert_eq!(r.cofactor(), RootOfUnity { order: 6, power: 1 });
        assert!(verify_relation_exact(&p(&[2, 3, 2]), &big(&[1]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn quadratic_is_independent() {
        let (m, rep) = m_alpha(&p(&[2, 3, 2])).unwrap();
        assert_eq!(m, 1);
        assert!(rep.relations.is_empty());
        assert!(rep.power_reducible.is_none());
    }

    #[test]
    fn sextic_example() {
        let (m, rep) = m_alpha(&p(&[2, -2, 3, -2, 3, -2, 2])).unwrap();
        assert_eq!(m, 2);
        assert_eq!(rep.relations.len(), 1);
        assert_eq!(rep.relations[0].exponents(), &big(&[1, -1, 1])[..]);
        assert_eq!(rep.independence_mode, IndependenceMode::Heuristic);
        assert!(rep.power_reducible.is_none());
    }

    #[test]
    fn octic_power_reducible() {
        let f = p(&[2, 4, 2, -4, -7, -4, 2, 4, 2]);
        let pr = power_reducibility(&f).unwrap().unwrap();
        assert_eq!(pr.b, 8);
        assert_eq!(pr.minpoly, p(&[16, 8, 1, 8, 16]));
    }

    #[test]
    fn cyclotomic_short_circuit() {
        let (m, rep) = m_alpha(&p(&[1, 1, 1])).unwrap();
        assert_eq!(m, 0);
        assert_eq!(rep.relations[0].cofactor(), RootOfUnity { order: 3, power: 1 });
    }
}
