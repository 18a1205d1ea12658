use hrp_core::intpoly::IntPoly;
use hrp_core::lll::rank;
use hrp_core::mdep::{m_alpha, verify_relation_exact, RootOfUnity};
use num_bigint::BigInt;

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// The report's relation lattice equals the span of `expected`.
fn assert_lattice(poly: &[i64], m: usize, expected: &[&[i64]]) {
    let (got_m, rep) = m_alpha(&p(poly)).unwrap();
    assert_eq!(got_m, m, "m(alpha) for {poly:?}");
    let got: Vec<Vec<BigInt>> = rep.relations.iter().map(|r| r.exponents().to_vec()).collect();
    let want: Vec<Vec<BigInt>> = expected.iter().map(|v| big(v)).collect();
    let mut both = got.clone();
    both.extend(want.iter().cloned());
    assert_eq!(rank(&got), want.len());
    assert_eq!(rank(&both), want.len());
    // both saturated: equal rational spans give equal lattices
    for w in &want {
        assert!(verify_relation_exact(&p(poly), w).unwrap().is_some());
    }
}

fn cofactor_of(poly: &[i64], k: &[i64]) -> RootOfUnity {
    verify_relation_exact(&p(poly), &big(k))
        .unwrap()
        .unwrap()
        .cofactor()
}

const D12A: [i64; 13] = [2, 4, 4, 2, 1, 0, 0, 0, 1, 2, 4, 4, 2];
const D12B: [i64; 13] = [3, -3, 1, 1, -2, 2, -1, 2, -2, 1, 1, -3, 3];
const D12C: [i64; 13] = [3, 0, 3, 0, -1, -2, -3, -2, -1, 0, 3, 0, 3];
const D16: [i64; 17] = [2, -2, -1, 1, 1, 0, -2, 1, 1, 1, -2, 0, 1, 1, -1, -2, 2];
const M3A: [i64; 13] = [2, 4, 4, 3, 3, 2, 1, 2, 3, 3, 4, 4, 2];
const M3B: [i64; 13] = [3, 0, -3, 2, 3, 0, -1, 0, 3, 2, -3, 0, 3];

#[test]
fn degree_12_generator_pairs() {
    assert_lattice(&D12A, 4, &[&[-1, 0, 0, 1, 1, 0], &[0, -1, 1, 0, 0, 1]]);
    assert_lattice(&D12B, 4, &[&[1, -1, 0, 0, 0, 1], &[0, 0, 1, -1, 1, 0]]);
    assert_lattice(&D12C, 4, &[&[1, 0, 1, -1, 0, 0], &[0, 1, 0, 0, 1, -1]]);
}

#[test]
fn degree_12_cofactors() {
    let six = RootOfUnity { order: 6, power: 1 };
    assert_eq!(cofactor_of(&D12B, &[1, -1, 0, 0, 0, 1]), six);
    assert_eq!(cofactor_of(&D12B, &[0, 0, 1, -1, 1, 0]), six);
    let minus_one = RootOfUnity { order: 2, power: 1 };
    assert_eq!(cofactor_of(&D12C, &[1, 0, 1, -1, 0, 0]), minus_one);
    assert_eq!(cofactor_of(&D12C, &[0, 1, 0, 0, 1, -1]), minus_one);
}

#[test]
fn degree_16_generator_pair() {
    assert_lattice(
        &D16,
        6,
        &[&[1, 0, 1, -1, 0, 0, 0, -1], &[0, 1, 0, 0, 1, -1, 1, 0]],
    );
}

#[test]
fn three_relation_examples() {
    assert_lattice(
        &M3A,
        3,
        &[&[0, 1, 1, 1, 0, 0], &[1, 0, 1, 0, 1, 0], &[0, 0, 0, 1, -1, -1]],
    );
    assert_lattice(
        &M3B,
        3,
        &[&[-1, 0, 1, 1, 0, 0], &[0, -1, 1, 0, 1, 0], &[-1, 1, 0, 0, 0, 1]],
    );
}
