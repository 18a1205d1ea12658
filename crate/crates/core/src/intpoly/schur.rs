use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{count_real_roots_closed, IntPoly};
use crate::cheb;
use crate::error::{domain, Result};
use crate::roots;

/// Root counts relative to the unit circle, with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub inside: usize,
    pub on: usize,
    pub outside: usize,
}

impl Partition {
    pub fn total(&self) -> usize {
        self.inside + self.on + self.outside
    }
}

/// Counts roots inside, on and outside the unit circle.
///
/// Each squarefree factor `f` is split as `gcd(f, f*)` times a circle-free
/// cofactor. Circle roots of the gcd are counted through its trace
/// polynomial; the cofactor goes through the Schur–Cohn chain.
pub fn schur_cohn_partition(p: &IntPoly) -> Result<Partition> {
    if p.is_zero() {
        return domain("circle partition of the zero polynomial");
    }
    let z = p.low_order();
    let mut part = Partition {
        inside: z,
        on: 0,
        outside: 0,
    };
    let q = p.unshift(z);
    for (f, mult) in q.squarefree_decomposition()? {
        let fp = partition_squarefree(&f)?;
        part.inside += mult * fp.inside;
        part.on += mult * fp.on;
        part.outside += mult * fp.outside;
    }
    debug_assert_eq!(part.total(), p.degree());
    Ok(part)
}

/// `f` squarefree, primitive, `f(0) != 0`.
fn partition_squarefree(f: &IntPoly) -> Result<Partition> {
    let n = f.degree();
    let g = f.gcd(&f.reciprocal_adjoint()?);
    let mut on = 0;
    let mut inside = 0;
    let mut h = g.clone();
    for r in [1i64, -1] {
        let lin = IntPoly::linear_root(&BigInt::from(r));
        if let Some(q) = h.div_exact(&lin) {
            h = q;
            on += 1;
        }
    }
    if h.degree() > 0 {
        // h is now reciprocal of even degree with no roots at +-1
        let e = h.degree() / 2;
        let t = cheb::trace_of_reciprocal(&h)?;
        let two = BigRational::from_integer(2.into());
        let k = count_real_roots_closed(&t, &-two.clone(), &two)?;
        on += 2 * k;
        inside += e - k;
    }
    let rest = f.div_exact(&g).expect("gcd divides f");
    inside += count_inside_circle_free(&rest)?;
    Ok(Partition {
        inside,
        on,
        outside: n - inside - on,
    })
}

/// Roots strictly inside the unit disk of a polynomial without unimodular
/// roots, by the Schur–Cohn reduction.
///
/// With `q*` the reversed polynomial, Rouché on the unit circle gives:
/// if `|a_n| > |a_0|`, `q` and `(a_n q - a_0 q*) / x` differ by exactly one
/// interior root; if `|a_0| > |a_n|`, `q` and `a_0 q - a_n q*` share their
/// interior root count. Equal end moduli fall back to certified isolation.
fn count_inside_circle_free(q: &IntPoly) -> Result<usize> {
    let mut q = q.primitive_normalized();
    let mut extra = 0;
    loop {
        if q.degree() == 0 {
            return Ok(extra);
        }
        let z = q.low_order();
        if z > 0 {
            extra += z;
            q = q.unshift(z);
            continue;
        }
        let a0 = q.coeffs()[0].clone();
        let an = q.lc();
        let qs = q.reciprocal_adjoint()?;
        let (ma0, man) = (a0.abs(), an.abs());
        if man > ma0 {
            let t = &q.scale(&an) - &qs.scale(&a0);
            debug_assert!(t.coeffs()[0].is_zero());
            q = t.unshift(1).primitive_normalized();
            extra += 1;
        } else if ma0 > man {
            let t = &q.scale(&a0) - &qs.scale(&an);
            q = t.primitive_normalized();
        } else {
            return Ok(extra + roots::count_inside_certified(&q));
        }
    }
}
