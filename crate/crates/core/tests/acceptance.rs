//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::f64::consts::PI;
use std::time::Instant;

use hrp_core::factorize::factor_over_q;
use hrp_core::hrp::{
    big_digit_admissible, big_digit_contracts, classify_hrp, construct_dominant, has_dominant_term,
    reduce_expanding_traced, reduce_unit_circle, HrpStatus, UnitCircleConfig, Verdict,
};
use hrp_core::intpoly::{schur_cohn_partition, IntPoly};
use hrp_core::lll::{default_delta, is_lll_reduced, lll_reduce, rank, LatticeBasis};
use hrp_core::mdep::{m_alpha, verify_relation_exact};
use hrp_core::survey::{run_survey, SurveyOptions, SurveyParams};
use hrp_core::Error;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_rows() -> Outcome {
    let rows: [(usize, i64, i64, [u64; 9]); 6] = [
        (6, 2, 50, [287, 71, 62, 58, 8, 8, 8, 0, 0]),
        (6, 3, 50, [805, 325, 318, 310, 22, 22, 22, 0, 0]),
        (8, 2, 12, [1069, 210, 200, 182, 16, 10, 10, 0, 0]),
        (8, 3, 12, [3991, 1565, 1558, 1502, 42, 40, 40, 0, 0]),
        (10, 2, 6, [2931, 518, 516, 512, 8, 8, 8, 0, 0]),
        (12, 2, 4, [6557, 1386, 1380, 1310, 32, 24, 20, 2, 2]),
    ];
    let mut notes = Vec::new();
    let mut bad = Vec::new();
    for (d, c, h, want) in rows {
        let t = Instant::now();
        let o = run_survey(&SurveyParams::new(d, c, h).unwrap(), &SurveyOptions::default())
            .map_err(|e| e.to_string())?;
        let r = &o.row;
        let got = [
            r.circle, r.irred, r.prim, r.non_xm, r.dep, r.npr, r.m1, r.m2, r.m3,
        ];
        let poly_ok = r.poly == (2 * h as u64 + 1).pow((d / 2) as u32);
        if got != want || !poly_ok || !o.violations.is_empty() || !o.unpaired.is_empty() {
            bad.push(format!("({d},{c},{h}) got {}", r.short()));
        }
        notes.push(format!("({d},{c},{h}) {:.0}s", t.elapsed().as_secs_f64()));
    }
    if bad.is_empty() {
        Ok(format!(
            "6 rows exact, pairing and chain invariants hold [{}]",
            notes.join(", ")
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn lattice_matches(p: &[i64], m: usize, expected: &[&[i64]]) -> Result<(), String> {
    let (got_m, rep) = m_alpha(&poly(p)).map_err(|e| e.to_string())?;
    ensure(got_m == m, || format!("{p:?}: m = {got_m}, expected {m}"))?;
    let got: Vec<Vec<BigInt>> = rep.relations.iter().map(|r| r.exponents().to_vec()).collect();
    let want: Vec<Vec<BigInt>> = expected.iter().map(|v| big(v)).collect();
    let mut both = got.clone();
    both.extend(want.iter().cloned());
    ensure(rank(&got) == want.len() && rank(&both) == want.len(), || {
        format!("{p:?}: relation span differs")
    })?;
    for w in &want {
        let ok = verify_relation_exact(&poly(p), w)
            .map_err(|e| e.to_string())?
            .is_some();
        ensure(ok, || format!("{p:?}: {w:?} does not verify"))?;
    }
    Ok(())
}

fn named_examples() -> Outcome {
    let d6 = [2, -2, 3, -2, 3, -2, 2];
    let (m, rep) = m_alpha(&poly(&d6)).map_err(|e| e.to_string())?;
    ensure(m == 2 && rep.relations.len() == 1, || format!("deg 6: m = {m}"))?;
    let z = rep.relations[0].cofactor();
    let k: Vec<i64> = rep.relations[0]
        .exponents()
        .iter()
        .map(|x| x.to_i64().unwrap())
        .collect();
    ensure(k == [1, -1, 1] && z.order == 4, || {
        format!("deg 6: {k:?} -> {z:?}")
    })?;

    let d8 = [2, 4, 2, -4, -7, -4, 2, 4, 2];
    let (_, rep) = m_alpha(&poly(&d8)).map_err(|e| e.to_string())?;
    let pr = rep.power_reducible.ok_or("deg 8: not power reducible")?;
    ensure(pr.b == 8 && pr.minpoly == poly(&[16, 8, 1, 8, 16]), || {
        format!("deg 8: b = {}, {}", pr.b, pr.minpoly)
    })?;

    lattice_matches(
        &[2, 4, 4, 2, 1, 0, 0, 0, 1, 2, 4, 4, 2],
        4,
        &[&[-1, 0, 0, 1, 1, 0], &[0, -1, 1, 0, 0, 1]],
    )?;
    lattice_matches(
        &[3, -3, 1, 1, -2, 2, -1, 2, -2, 1, 1, -3, 3],
        4,
        &[&[1, -1, 0, 0, 0, 1], &[0, 0, 1, -1, 1, 0]],
    )?;
    lattice_matches(
        &[3, 0, 3, 0, -1, -2, -3, -2, -1, 0, 3, 0, 3],
        4,
        &[&[1, 0, 1, -1, 0, 0], &[0, 1, 0, 0, 1, -1]],
    )?;
    lattice_matches(
        &[2, -2, -1, 1, 1, 0, -2, 1, 1, 1, -2, 0, 1, 1, -1, -2, 2],
        6,
        &[&[1, 0, 1, -1, 0, 0, 0, -1], &[0, 1, 0, 0, 1, -1, 1, 0]],
    )?;
    let m3a = [2, 4, 4, 3, 3, 2, 1, 2, 3, 3, 4, 4, 2];
    let m3b = [3, 0, -3, 2, 3, 0, -1, 0, 3, 2, -3, 0, 3];
    lattice_matches(
        &m3a,
        3,
        &[&[0, 1, 1, 1, 0, 0], &[1, 0, 1, 0, 1, 0], &[0, 0, 0, 1, -1, -1]],
    )?;
    lattice_matches(
        &m3b,
        3,
        &[&[-1, 0, 1, 1, 0, 0], &[0, -1, 1, 0, 1, 0], &[-1, 1, 0, 0, 0, 1]],
    )?;
    for p in [&m3a, &m3b] {
        let s = classify_hrp(&poly(p)).map_err(|e| e.to_string())?;
        let want = HrpStatus::UnitCircle {
            m_alpha: 3,
            verdict: Verdict::Unknown,
        };
        ensure(s == want, || format!("{p:?}: {s:?}"))?;
    }
    Ok("deg 6 cofactor i, deg 8 b = 8, deg 12/16 generator pairs, two m = d/2-3 sets".into())
}

/// Random irreducible expanding polynomial of degree at most 6.
fn random_expanding(rng: &mut StdRng) -> IntPoly {
    loop {
        let d = rng.gen_range(1..=6);
        let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-5..=5)).collect();
        c[0] = rng.gen_range(2..=30) * if rng.gen() { 1 } else { -1 };
        c[d] = rng.gen_range(1..=3);
        let p = poly(&c);
        let Ok(factors) = factor_over_q(&p) else { continue };
        for (f, _) in factors {
            if classify_hrp(&f).ok() == Some(HrpStatus::Expanding) {
                return f;
            }
        }
    }
}

fn expanding_round_trips() -> Outcome {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let (mut inputs, mut subs, mut nontrivial) = (0usize, 0usize, 0usize);
    while inputs < 500 {
        let p = random_expanding(&mut rng);
        for _ in 0..5 {
            let deg = rng.gen_range(0..6);
            let v: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect();
            let value = poly(&v);
            let r = reduce_expanding_traced(&p, &value).map_err(|e| format!("{p}: {e}"))?;
            ensure(r.expansion.verify(&value), || {
                format!("{p}: {value} does not re-evaluate")
            })?;
            let c0 = r.dominant.coeff(0).abs();
            ensure(
                r.expansion.digit_bound == &c0 - 1 && r.expansion.max_digit() < c0,
                || format!("{p}: digit bound"),
            )?;
            ensure(r.l1_trace.iter().all(|s| s.after < s.before), || {
                format!("{p}: L1 did not decrease")
            })?;
            subs += r.l1_trace.len();
            if r.dominant != p.primitive_normalized() {
                nontrivial += 1;
            }
            inputs += 1;
        }
    }
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!(
        "{inputs} inputs exact, {subs} substitutions all L1-decreasing, {nontrivial} via a power map, {secs:.1}s"
    ))
}

fn dominant_properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let (mut factors, mut raised) = (0usize, 0usize);
    for _ in 0..200 {
        let d = rng.gen_range(1..=8);
        let k = rng.gen_range(0..=d);
        let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-9..=9)).collect();
        if c[d] == 0 {
            c[d] = 1;
        }
        let rest: i64 = c
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, v)| v.abs())
            .sum();
        c[k] = (rest + rng.gen_range(1..5)) * if rng.gen() { 1 } else { -1 };
        let p = poly(&c);
        let part = schur_cohn_partition(&p).map_err(|e| e.to_string())?;
        ensure((part.inside, part.on, part.outside) == (k, 0, d - k), || {
            format!("{p}: partition {part:?} for k = {k}")
        })?;
        for (f, _) in factor_over_q(&p).map_err(|e| e.to_string())? {
            let l = schur_cohn_partition(&f).map_err(|e| e.to_string())?.inside;
            let mut kk = l;
            let r = loop {
                match construct_dominant(&f, kk, true) {
                    Ok(r) => break r,
                    Err(Error::Unsupported(_)) if kk < 64 * l.max(1) => kk += l.max(1),
                    Err(e) => return Err(format!("{f}: {e}")),
                }
            };
            if kk > l {
                raised += 1;
            }
            ensure(r.div_exact(&f).is_some(), || format!("{f}: {r} not divisible"))?;
            let rest = r.l1_norm() - r.coeff(kk).abs();
            ensure(
                has_dominant_term(&r, kk, true) && r.coeff(kk).abs() > rest,
                || format!("{f}: {r} not dominant at {kk}"),
            )?;
            let rp = schur_cohn_partition(&r).map_err(|e| e.to_string())?;
            ensure((rp.inside, rp.on) == (kk, 0), || format!("{r}: partition {rp:?}"))?;
            factors += 1;
        }
    }
    Ok(format!(
        "200 polynomials partition as (k,0,d-k); {factors} factor multiples divide and dominate ({raised} needed k above the inside count)"
    ))
}

/// Shortest nonzero vector norm by enumeration inside the dual-basis box.
fn brute_force_min(b: &LatticeBasis, radius2: &BigInt) -> BigInt {
    let rows = b.rows();
    let m = rows.len();
    let g: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    rows[i]
                        .iter()
                        .zip(&rows[j])
                        .map(|(x, y)| (x * y).to_f64().unwrap())
                        .sum()
                })
                .collect()
        })
        .collect();
    let inv = invert(&g);
    let r = radius2.to_f64().unwrap().sqrt();
    let bounds: Vec<i64> = (0..m)
        .map(|i| (r * inv[i][i].sqrt()).floor() as i64 + 1)
        .collect();
    let mut best = radius2.clone();
    let mut x = vec![0i64; m];
    enumerate(0, &bounds, &mut x, rows, &mut best);
    best
}

fn enumerate(i: usize, bounds: &[i64], x: &mut Vec<i64>, rows: &[Vec<BigInt>], best: &mut BigInt) {
    if i == bounds.len() {
        if x.iter().all(|&v| v == 0) {
            return;
        }
        let dim = rows[0].len();
        let v: Vec<BigInt> = (0..dim)
            .map(|j| rows.iter().zip(x.iter()).map(|(r, &c)| &r[j] * c).sum())
            .collect();
        let n: BigInt = v.iter().map(|t| t * t).sum();
        if n < *best {
            *best = n;
        }
        return;
    }
    for c in -bounds[i]..=bounds[i] {
        x[i] = c;
        enumerate(i + 1, bounds, x, rows, best);
    }
}

fn invert(g: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut a: Vec<Vec<f64>> = g
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| f64::from(u8::from(i == j))));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))
            .unwrap();
        a.swap(c, p);
        let pv = a[c][c];
        for v in a[c].iter_mut() {
            *v /= pv;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                let pivot = a[c].clone();
                for (v, q) in a[r].iter_mut().zip(pivot) {
                    *v -= f * q;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn lll_correctness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let delta = default_delta();
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < 100 {
        let m = rng.gen_range(2..=3);
        let dim = rng.gen_range(m..=3);
        let rows: Vec<Vec<BigInt>> = (0..m)
            .map(|_| {
                (0..dim)
                    .map(|_| BigInt::from(rng.gen_range(-1000..=1000)))
                    .collect()
            })
            .collect();
        let b = LatticeBasis::new(rows).map_err(|e| e.to_string())?;
        if !b.is_independent() {
            continue;
        }
        let red = lll_reduce(&b, &delta).map_err(|e| e.to_string())?;
        ensure(is_lll_reduced(&red.basis, &delta), || {
            format!("{:?} not reduced", red.basis)
        })?;
        ensure(red.basis.gram_determinant() == b.gram_determinant(), || {
            "lattice changed".into()
        })?;
        let b1: BigInt = red.basis.rows()[0].iter().map(|t| t * t).sum();
        let min = brute_force_min(&red.basis, &b1);
        ensure(min.is_positive() && b1 <= (&min << m), || {
            format!("|b1|^2 = {b1}, minimum {min}")
        })?;
        worst = worst.max(b1.to_f64().unwrap() / min.to_f64().unwrap());
        done += 1;
    }
    Ok(format!(
        "100 lattices reduced and verified, worst |b1|^2/lambda1^2 = {worst:.3} (limit 2^m)"
    ))
}

fn contraction_sampling() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let mut violations = 0usize;
    for _ in 0..100_000 {
        let rho = 10f64.powf(rng.gen_range(-3.0..3.0));
        let z = Complex64::from_polar(rho, rng.gen_range(-2.0 * PI / 5.0..=2.0 * PI / 5.0));
        let w = Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI));
        let r = rng.gen_range(0.0..1.0) * 4.0 * rho / 145.0;
        if r == 0.0 || !big_digit_admissible(z, w, r) {
            continue;
        }
        if !big_digit_contracts(z, w, r) {
            violations += 1;
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok("100000 admissible triples, 0 violations".into())
}

fn unit_circle_soundness() -> Outcome {
    let p = poly(&[2, 3, 2]);
    let cfg = UnitCircleConfig::default();
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let (mut returned, mut longest, mut widest) = (0usize, 0usize, BigInt::zero());
    for _ in 0..100 {
        let deg = rng.gen_range(0..=3);
        let v: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-10_000..=10_000)).collect();
        let value = poly(&v);
        if let Some(e) = reduce_unit_circle(&p, &value, &cfg).map_err(|e| e.to_string())? {
            ensure(e.verify(&value), || format!("{value} does not re-evaluate"))?;
            returned += 1;
            longest = longest.max(e.digits.len());
            widest = widest.max(e.max_digit());
        }
    }
    Ok(format!(
        "termination {returned}/100, every returned expansion exact; longest {longest} digits, largest digit {widest}"
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 table rows", table_rows),
        ("2 named examples", named_examples),
        ("3 expanding round trips", expanding_round_trips),
        ("4 dominant terms", dominant_properties),
        ("5 LLL correctness", lll_correctness),
        ("6 contraction sampling", contraction_sampling),
        ("7 unit-circle soundness", unit_circle_soundness),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|x| name.contains(x.as_str())) {
            continue;
        }
        match f() {
            Ok(msg) => println!("criterion {name}: PASS ({msg})"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({msg})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
