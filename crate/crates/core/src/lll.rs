//! Exact LLL reduction and the dependence lattice of root arguments.
//!
//! Reduction follows the integral variant of LLL: Gram–Schmidt data is kept
//! as the integers `d_i` (leading Gram minors) and `lambda_ij = d_j mu_ij`,
//! so no rationals appear inside the loop. The result is checked afterwards
//! with rational Gram–Schmidt.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::intpoly::RatScalar;
use crate::roots::{arguments, CertifiedArg, RootBox};

/// Integer row vectors of equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    rows: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(first) = rows.first() {
            let n = first.len();
            if rows.iter().any(|r| r.len() != n) {
                return domain("rows have different lengths");
            }
        }
        Ok(LatticeBasis { rows })
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Determinant of the Gram matrix; positive iff the rows are independent.
    pub fn gram_determinant(&self) -> BigInt {
        let g: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|a| self.rows.iter().map(|b| dot(a, b)).collect())
            .collect();
        crate::intpoly::bareiss_det(g)
    }

    pub fn is_independent(&self) -> bool {
        self.gram_determinant().is_positive()
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm_sqr(a: &[BigInt]) -> BigInt {
    dot(a, a)
}

/// Reduced basis and the unimodular matrix `U` with `reduced = U * input`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub basis: LatticeBasis,
    pub transform: Vec<Vec<BigInt>>,
}

/// The usual parameter `3/4`.
pub fn default_delta() -> RatScalar {
    BigRational::new(3.into(), 4.into())
}

/// `delta`-LLL reduction of independent rows.
pub fn lll_reduce(b: &LatticeBasis, delta: &RatScalar) -> Result<Reduction> {
    let quarter = BigRational::new(1.into(), 4.into());
    if *delta <= quarter || *delta >= BigRational::one() {
        return domain("delta must lie strictly between 1/4 and 1");
    }
    let n = b.len();
    let mut rows = b.rows.clone();
    let mut h: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
        .collect();
    if n == 0 {
        return Ok(Reduction {
            basis: b.clone(),
            transform: h,
        });
    }
    let (p, q) = (delta.numer().clone(), delta.denom().clone());
    // d[0] = 1 and d[i + 1] belongs to row i; lam[k][j] for j < k
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    d[0] = BigInt::one();
    d[1] = norm_sqr(&rows[0]);
    if d[1].is_zero() {
        return domain("rows are linearly dependent");
    }
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&rows[k], &rows[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return domain("rows are linearly dependent");
                    }
                    d[k + 1] = u;
                }
            }
        }
        loop {
            size_reduce(&mut rows, &mut h, &mut lam, &d, k, k - 1);
            let l = &lam[k][k - 1];
            let lhs = &q * &d[k + 1] * &d[k - 1];
            let rhs = &p * &d[k] * &d[k] - &q * l * l;
            if lhs < rhs {
                swap(&mut rows, &mut h, &mut lam, &mut d, k, kmax);
                if k > 1 {
                    k -= 1;
                }
            } else {
                for l in (0..k - 1).rev() {
                    size_reduce(&mut rows, &mut h, &mut lam, &d, k, l);
                }
                k += 1;
                break;
            }
        }
    }
    let basis = LatticeBasis { rows };
    if !is_lll_reduced(&basis, delta) {
        return Err(Error::Internal("LLL output failed the reducedness check".into()));
    }
    Ok(Reduction { basis, transform: h })
}

fn size_reduce(
    rows: &mut [Vec<BigInt>],
    h: &mut [Vec<BigInt>],
    lam: &mut [Vec<BigInt>],
    d: &[BigInt],
    k: usize,
    l: usize,
) {
    let dl = &d[l + 1];
    if (&lam[k][l] << 1usize).abs() <= *dl {
        return;
    }
    // nearest integer to lam / d
    let r: BigInt = Integer::div_floor(&((&lam[k][l] << 1usize) + dl), &(dl << 1usize));
    let (lo, hi) = rows.split_at_mut(k);
    for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
        *x -= &r * y;
    }
    let (lo, hi) = h.split_at_mut(k);
    for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
        *x -= &r * y;
    }
    lam[k][l] -= &r * dl;
    for i in 0..l {
        let t = &r * &lam[l][i];
        lam[k][i] -= t;
    }
}

fn swap(
    rows: &mut [Vec<BigInt>],
    h: &mut [Vec<BigInt>],
    lam: &mut [Vec<BigInt>],
    d: &mut [BigInt],
    k: usize,
    kmax: usize,
) {
    rows.swap(k, k - 1);
    h.swap(k, k - 1);
    for j in 0..k - 1 {
        let t = std::mem::take(&mut lam[k][j]);
        lam[k][j] = std::mem::replace(&mut lam[k - 1][j], t);
    }
    let l = lam[k][k - 1].clone();
    let b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
        lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &d[k + 1];
    }
    d[k] = b;
}

/// Rational Gram–Schmidt: `mu[i][j]` for `j < i` and squared norms of `b*_i`.
pub fn gram_schmidt(b: &LatticeBasis) -> (Vec<Vec<RatScalar>>, Vec<RatScalar>) {
    let n = b.len();
    let m = b.dim();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut bn: Vec<BigRational> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let bi: Vec<BigRational> = b.rows[i]
            .iter()
            .map(|v| BigRational::from_integer(v.clone()))
            .collect();
        let mut s = bi.clone();
        for j in 0..i {
            if bn[j].is_zero() {
                continue;
            }
            let num: BigRational = bi.iter().zip(&star[j]).map(|(x, y)| x * y).sum();
            let c = num / &bn[j];
            for t in 0..m {
                let v = &c * &star[j][t];
                s[t] -= v;
            }
            mu[i][j] = c;
        }
        bn.push(s.iter().map(|x| x * x).sum());
        star.push(s);
    }
    (mu, bn)
}

/// Size reduction `|mu_ij| <= 1/2` and the Lovász condition at every index.
pub fn is_lll_reduced(b: &LatticeBasis, delta: &RatScalar) -> bool {
    let (mu, bn) = gram_schmidt(b);
    let half = BigRational::new(1.into(), 2.into());
    for i in 0..b.len() {
        if bn[i].is_zero() {
            return false;
        }
        if (0..i).any(|j| mu[i][j].abs() > half) {
            return false;
        }
        if i > 0 {
            let m = &mu[i][i - 1];
            if bn[i] < (delta - m * m) * &bn[i - 1] {
                return false;
            }
        }
    }
    true
}

/// Rows `e_i | floor(C theta_i)` for `i <= m` and `0 | floor(C 2pi)`.
pub fn build_dependence_lattice(
    args: &[CertifiedArg],
    two_pi: &CertifiedArg,
    c: &BigInt,
) -> Result<LatticeBasis> {
    if !c.is_positive() {
        return domain("scale must be positive");
    }
    let m = args.len();
    let mut rows = Vec::with_capacity(m + 1);
    for (i, a) in args.iter().chain(std::iter::once(two_pi)).enumerate() {
        let f = a
            .floor_scaled(c)
            .ok_or_else(|| Error::Precision(format!("floor of C*theta_{} is ambiguous", i + 1)))?;
        let mut row = vec![BigInt::zero(); m + 1];
        if i < m {
            row[i] = BigInt::one();
        }
        row[m] = f;
        rows.push(row);
    }
    LatticeBasis::new(rows)
}

/// Escalation schedule for the dependence search.
///
/// Round `k` uses the scale `C = B^((m + 2) 2^k)`; a reduced vector is short
/// if its norm is at most `2^(m/2) sqrt(m^2 + 5m + 4) B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub bound_b: BigInt,
    pub rounds: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            bound_b: BigInt::from(100),
            rounds: 3,
        }
    }
}

impl SearchConfig {
    pub fn scales(&self, m: usize) -> Vec<BigInt> {
        (0..self.rounds)
            .map(|k| num_traits::pow(self.bound_b.clone(), (m + 2) << k))
            .collect()
    }

    /// True iff `|v|^2 <= 2^m (m^2 + 5m + 4) B^2`.
    pub fn is_short(&self, m: usize, v: &[BigInt]) -> bool {
        let lim = (BigInt::one() << m) * BigInt::from(m * m + 5 * m + 4) * &self.bound_b * &self.bound_b;
        norm_sqr(v) <= lim
    }
}

/// Reduced dependence lattice for the arguments of `roots` at scale `c`.
/// Rows come with their coordinates `(k_1..k_m, k_{m+1})` in the input basis.
pub fn reduced_dependence_lattice(roots: &[RootBox], c: &BigInt) -> Result<Vec<(Vec<BigInt>, Vec<BigInt>)>> {
    let mut bits = c.bits() + 32;
    loop {
        let args = arguments(roots, bits)?;
        match build_dependence_lattice(&args, &CertifiedArg::two_pi(bits), c) {
            Ok(lat) => {
                let red = lll_reduce(&lat, &default_delta())?;
                return Ok(red.basis.into_rows().into_iter().zip(red.transform).collect());
            }
            Err(Error::Precision(_)) if bits < c.bits() + 4096 => bits += bits / 2,
            Err(e) => return Err(e),
        }
    }
}

/// Candidate multiplicative relation among unimodular roots: the coordinates
/// of the first reduced vector if it is short for some scale, normalized so
/// the first nonzero exponent is positive.
pub fn search_relation(roots: &[RootBox], cfg: &SearchConfig) -> Option<Vec<BigInt>> {
    let m = roots.len();
    for c in cfg.scales(m) {
        let red = reduced_dependence_lattice(roots, &c).ok()?;
        let (v, k) = &red[0];
        if cfg.is_short(m, v) && k[..m].iter().any(|x| !x.is_zero()) {
            return Some(normalize_sign(k.clone()));
        }
    }
    None
}

/// Flip the sign so the first nonzero entry is positive.
pub fn normalize_sign(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut v {
            *x = -&*x;
        }
    }
    v
}

/// Rank of a list of integer vectors, by fraction-free elimination.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let (f, g) = (a[r][col].clone(), a[i][col].clone());
            for j in col..ncols {
                a[i][j] = &f * &a[i][j] - &g * &a[r][j];
            }
            let cnt = a[i][col..].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if cnt > BigInt::one() {
                for x in &mut a[i][col..] {
                    *x /= &cnt;
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of `{x in Z^n : A x = 0}`, LLL-reduced.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    // columns of A and of the unimodular U, updated together
    let mut ca: Vec<Vec<BigInt>> = (0..n).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect();
    let mut cu: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..n).map(|i| BigInt::from((i == j) as u8)).collect())
        .collect();
    let mut piv = 0;
    for i in 0..a.len() {
        if piv == n {
            break;
        }
        for j in piv + 1..n {
            if ca[j][i].is_zero() {
                continue;
            }
            let (x, y) = (ca[piv][i].clone(), ca[j][i].clone());
            let e = x.extended_gcd(&y);
            let (xg, yg) = (&x / &e.gcd, &y / &e.gcd);
            combine(&mut ca, piv, j, &e.x, &e.y, &xg, &yg);
            combine(&mut cu, piv, j, &e.x, &e.y, &xg, &yg);
        }
        if !ca[piv][i].is_zero() {
            piv += 1;
        }
    }
    let ker: Vec<Vec<BigInt>> = cu.drain(piv..).collect();
    if ker.is_empty() {
        return ker;
    }
    let lat = LatticeBasis { rows: ker };
    match lll_reduce(&lat, &default_delta()) {
        Ok(r) => r.basis.rows,
        Err(_) => lat.rows,
    }
}

/// `col_p <- s col_p + t col_j`, `col_j <- -yg col_p + xg col_j`; determinant 1.
fn combine(cols: &mut [Vec<BigInt>], p: usize, j: usize, s: &BigInt, t: &BigInt, xg: &BigInt, yg: &BigInt) {
    let (lo, hi) = cols.split_at_mut(j);
    let (cp, cj) = (&mut lo[p], &mut hi[0]);
    for (u, v) in cp.iter_mut().zip(cj.iter_mut()) {
        let nu = s * &*u + t * &*v;
        let nv = xg * &*v - yg * &*u;
        *u = nu;
        *v = nv;
    }
}

/// `Z^n` intersected with the rational span of `rows`, LLL-reduced.
pub fn saturate(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let k = integer_kernel(rows, n);
    if k.is_empty() {
        return (0..n)
            .map(|j| (0..n).map(|i| BigInt::from((i == j) as u8)).collect())
            .collect();
    }
    integer_kernel(&k, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_is_reduced() {
        let b = LatticeBasis::from_i64s(&[&[1, 0], &[0, 1]]).unwrap();
        let r = lll_reduce(&b, &default_delta()).unwrap();
        assert_eq!(r.basis, b);
    }

    #[test]
    fn small_example() {
        let b = LatticeBasis::from_i64s(&[&[4, 1], &[3, 1]]).unwrap();
        let r = lll_reduce(&b, &default_delta()).unwrap();
        assert_eq!(norm_sqr(&r.basis.rows()[0]), BigInt::one());
        assert_eq!(norm_sqr(&r.basis.rows()[1]), BigInt::one());
        assert_eq!(r.basis.gram_determinant(), b.gram_determinant());
    }

    #[test]
    fn dependent_rows_rejected() {
        let b = LatticeBasis::from_i64s(&[&[1, 2], &[2, 4]]).unwrap();
        assert!(matches!(lll_reduce(&b, &default_delta()), Err(Error::Domain(_))));
        let bad = BigRational::new(1.into(), 5.into());
        let b = LatticeBasis::from_i64s(&[&[1, 0]]).unwrap();
        assert!(lll_reduce(&b, &bad).is_err());
    }

    #[test]
    fn transform_maps_input_to_output() {
        let b = LatticeBasis::from_i64s(&[&[201, 37], &[1648, 297]]).unwrap();
        let r = lll_reduce(&b, &default_delta()).unwrap();
        for (row, t) in r.basis.rows().iter().zip(&r.transform) {
            for c in 0..2 {
                let v: BigInt = (0..2).map(|i| &t[i] * &b.rows()[i][c]).sum();
                assert_eq!(v, row[c]);
            }
        }
    }

    #[test]
    fn kernel_and_saturation() {
        let a = vec![big(&[1, 1, 1])];
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot(v, &a[0]).is_zero());
        }
        let s = saturate(&[big(&[4, -4, 4])], 3);
        assert_eq!(s.len(), 1);
        assert_eq!(normalize_sign(s[0].clone()), big(&[1, -1, 1]));
        assert_eq!(rank(&[big(&[1, 2]), big(&[2, 4])]), 1);
        assert_eq!(rank(&[big(&[1, 2]), big(&[2, 5])]), 2);
    }

    #[test]
    fn dependence_lattice_examples() {
        let bits = 96;
        let pi = crate::ball::pi(bits);
        let two_pi = CertifiedArg::two_pi(bits);
        let half = CertifiedArg::from_ball(pi.div_int(&BigInt::from(2)));
        let b = build_dependence_lattice(&[half], &two_pi, &BigInt::from(1_000_000)).unwrap();
        assert_eq!(
            b,
            LatticeBasis::from_i64s(&[&[1, 1570796], &[0, 6283185]]).unwrap()
        );
        let whole = CertifiedArg::from_ball(pi);
        let b = build_dependence_lattice(&[whole], &two_pi, &BigInt::from(10)).unwrap();
        assert_eq!(b, LatticeBasis::from_i64s(&[&[1, 31], &[0, 62]]).unwrap());
        let b = build_dependence_lattice(&[], &two_pi, &BigInt::from(10)).unwrap();
        assert_eq!(b, LatticeBasis::from_i64s(&[&[62]]).unwrap());
    }

    #[test]
    fn search_examples() {
        use crate::intpoly::IntPoly;
        use crate::roots::upper_half_sorted;
        let cfg = SearchConfig::default();
        let roots = |c: &[i64]| upper_half_sorted(&IntPoly::from_i64s(c), 128).unwrap();
        assert_eq!(search_relation(&roots(&[1, 0, 1]), &cfg), Some(big(&[4, -1])));
        let k = search_relation(&roots(&[2, -2, 3, -2, 3, -2, 2]), &cfg).unwrap();
        assert_eq!(k[..3], big(&[4, -4, 4])[..]);
        assert_eq!(search_relation(&roots(&[2, 3, 2]), &cfg), None);
    }
}
