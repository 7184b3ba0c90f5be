//! Seeded random symbols for the verification suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lie::{momentum, LieElement};
use crate::poly::{rat, Exponent, Poly, Rational};

/// Independent stream for case `index` under `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A nonzero rational `a/b` with `|a| ≤ 4`, `1 ≤ b ≤ 3`.
pub fn random_coefficient(rng: &mut impl Rng) -> Rational {
    let mut num = rng.gen_range(1..=4i64);
    if rng.gen_bool(0.5) {
        num = -num;
    }
    rat(num, rng.gen_range(1..=3))
}

fn spread(rng: &mut impl Rng, slots: usize, total: u32) -> Vec<u32> {
    let mut v = vec![0u32; slots];
    if slots > 0 {
        for _ in 0..total {
            v[rng.gen_range(0..slots)] += 1;
        }
    }
    v
}

/// A monomial exponent with given u-degree and ξ-degree.
pub fn random_exponent(rng: &mut impl Rng, n: usize, u_degree: u32, xi_degree: u32) -> Exponent {
    Exponent::from_parts(&spread(rng, n, u_degree), &spread(rng, n, xi_degree))
}

/// Up to `max_terms` random terms of total degree `≤ max_degree`.
pub fn random_poly(rng: &mut impl Rng, n: usize, max_degree: u32, max_terms: usize) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let total = rng.gen_range(0..=max_degree);
        let xi = rng.gen_range(0..=total);
        p.add_term(random_exponent(rng, n, total - xi, xi), random_coefficient(rng));
    }
    p
}

/// Random element of `C[u]`.
pub fn random_u_poly(rng: &mut impl Rng, n: usize, max_degree: u32, max_terms: usize) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let d = rng.gen_range(0..=max_degree);
        p.add_term(random_exponent(rng, n, d, 0), random_coefficient(rng));
    }
    p
}

/// Random element of `C[ξ]`.
pub fn random_xi_poly(rng: &mut impl Rng, n: usize, max_degree: u32, max_terms: usize) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let d = rng.gen_range(0..=max_degree);
        p.add_term(random_exponent(rng, n, 0, d), random_coefficient(rng));
    }
    p
}

/// Random symbol homogeneous of ξ-degree `xi_degree`, nonzero.
pub fn random_homogeneous(
    rng: &mut impl Rng,
    n: usize,
    xi_degree: u32,
    max_u_degree: u32,
    max_terms: usize,
) -> Poly {
    loop {
        let mut p = Poly::zero(n);
        for _ in 0..rng.gen_range(1..=max_terms) {
            let d = rng.gen_range(0..=max_u_degree);
            p.add_term(random_exponent(rng, n, d, xi_degree), random_coefficient(rng));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random element of the basis returned by [`LieElement::sl_basis`].
pub fn random_basis_element(rng: &mut impl Rng, n: usize) -> LieElement {
    let basis = LieElement::sl_basis(n);
    basis[rng.gen_range(0..basis.len())].clone()
}

/// Sum of one or two products of at most three momentum functions.
pub fn random_momentum_product(rng: &mut impl Rng, n: usize) -> Poly {
    let mut out = Poly::zero(n);
    for _ in 0..rng.gen_range(1..=2) {
        let mut term = Poly::constant(n, random_coefficient(rng));
        for _ in 0..rng.gen_range(1..=3) {
            term = &term * &momentum(&random_basis_element(rng, n)).poly;
        }
        out += &term;
    }
    out
}
