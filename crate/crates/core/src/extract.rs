//! Recovering a bidifferential operator from a black-box bilinear map.
//!
//! For a bidifferential operator `B = Σ c_ab ∂^a ⊗ ∂^b` of order `≤ r`,
//! the coefficients are forced by the values on monomial pairs:
//!
//! ```text
//! c_ab(x) = 1/(a! b!) · B((y − x)^a, (y − x)^b) |_{y = x}
//! ```
//!
//! Expanding the binomials gives an exact triangular solve from the values
//! `B(y^a', y^b')` with `|a'| + |b'| ≤ r`. The candidate is then compared
//! against the black box on every monomial pair up to a larger check degree
//! and on random held-out pairs; any disagreement proves that no
//! bidifferential operator within the bounds reproduces the map.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diffop::{deriv_string, BiDiffOp};
use crate::error::{Error, Result};
use crate::poly::{Exponent, Poly, Rational};

#[derive(Debug, Clone)]
pub struct ExtractBounds {
    /// Bound on the total order `|a| + |b|`.
    pub order: u32,
    /// Bound on the total degree of every coefficient polynomial.
    pub coeff_degree: u32,
    /// Every monomial pair with `|α| + |β| ≤ check_degree` is cross-checked.
    pub check_degree: u32,
    /// Number of random held-out monomial pairs above `check_degree`.
    pub random_checks: usize,
    pub seed: u64,
}

impl ExtractBounds {
    pub fn new(order: u32, coeff_degree: u32) -> Self {
        ExtractBounds {
            order,
            coeff_degree,
            check_degree: order + 3,
            random_checks: 24,
            seed: 0x5eed,
        }
    }
}

/// Proof that the black box is not bidifferential within the bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The unique candidate disagrees with the black box on this pair.
    Mismatch {
        left: Poly,
        right: Poly,
        black_box: Poly,
        candidate: Poly,
    },
    /// The unique candidate needs a coefficient of too high degree.
    CoefficientDegree {
        left_deriv: Exponent,
        right_deriv: Exponent,
        degree: u32,
        bound: u32,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Mismatch {
                left,
                right,
                black_box,
                candidate,
            } => write!(
                f,
                "on ({left}, {right}) the map gives `{black_box}` but the forced candidate gives `{candidate}`"
            ),
            Witness::CoefficientDegree {
                left_deriv,
                right_deriv,
                degree,
                bound,
            } => write!(
                f,
                "coefficient of {} ⊗ {} has degree {degree} > {bound}",
                deriv_string(left_deriv),
                deriv_string(right_deriv)
            ),
        }
    }
}

const CHECK_CHUNK: usize = 256;

fn pairs_up_to(n: usize, degree: u32) -> Vec<(Exponent, Exponent)> {
    let all = Exponent::all_up_to(n, degree);
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            if a.total_degree() + b.total_degree() <= degree {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn mono(e: &Exponent) -> Poly {
    Poly::monomial(e.clone(), Rational::one())
}

fn random_exponent(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> Exponent {
    let mut v = vec![0u32; 2 * n];
    for _ in 0..degree {
        v[rng.gen_range(0..2 * n)] += 1;
    }
    Exponent::from_parts(&v[..n], &v[n..])
}

pub fn extract_bidiff<F>(n: usize, black_box: F, bounds: &ExtractBounds) -> Result<BiDiffOp>
where
    F: Fn(&Poly, &Poly) -> Result<Poly> + Sync,
{
    let construction = pairs_up_to(n, bounds.order);
    let values: Vec<Poly> = construction
        .par_iter()
        .map(|(a, b)| black_box(&mono(a), &mono(b)))
        .collect::<Result<_>>()?;
    let table: HashMap<(Exponent, Exponent), Poly> = construction.iter().cloned().zip(values).collect();

    let terms: Vec<((Exponent, Exponent), Poly)> = construction
        .par_iter()
        .map(|(a, b)| {
            let mut c = Poly::zero(n);
            for a1 in a.divisors() {
                let da = a.checked_sub(&a1).unwrap();
                let ka = a.binomial(&a1);
                for b1 in b.divisors() {
                    let v = &table[&(a1.clone(), b1.clone())];
                    if v.is_zero() {
                        continue;
                    }
                    let db = b.checked_sub(&b1).unwrap();
                    let shift = da.add(&db);
                    let mut k = Rational::from_integer(&ka * b.binomial(&b1));
                    if shift.total_degree() % 2 == 1 {
                        k = -k;
                    }
                    c = c + v.mul_monomial(&shift, &k);
                }
            }
            let norm = Rational::new(BigInt::one(), a.factorial() * b.factorial());
            ((a.clone(), b.clone()), c.scale(&norm))
        })
        .collect();

    let mut candidate = BiDiffOp::zero(n);
    for ((a, b), c) in terms {
        if let Some(deg) = c.total_degree() {
            if deg > bounds.coeff_degree {
                return Err(Error::NotBidifferential(Box::new(Witness::CoefficientDegree {
                    left_deriv: a,
                    right_deriv: b,
                    degree: deg,
                    bound: bounds.coeff_degree,
                })));
            }
        }
        candidate.add_term(a, b, c);
    }

    let mut checks: Vec<(Exponent, Exponent)> = pairs_up_to(n, bounds.check_degree)
        .into_iter()
        .filter(|(a, b)| a.total_degree() + b.total_degree() > bounds.order)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    for _ in 0..bounds.random_checks {
        let total = bounds.check_degree + 1 + rng.gen_range(0..4);
        let left_deg = rng.gen_range(0..=total);
        checks.push((
            random_exponent(&mut rng, n, left_deg),
            random_exponent(&mut rng, n, total - left_deg),
        ));
    }

    checks.sort_by_key(|(a, b)| a.total_degree() + b.total_degree());
    let mut first_failure = None;
    for chunk in checks.chunks(CHECK_CHUNK) {
        first_failure = chunk
            .par_iter()
            .map(|(a, b)| -> Result<Option<Witness>> {
                let (pa, pb) = (mono(a), mono(b));
                let expected = black_box(&pa, &pb)?;
                let got = candidate.apply(&pa, &pb)?;
                Ok((expected != got).then(|| Witness::Mismatch {
                    left: pa,
                    right: pb,
                    black_box: expected,
                    candidate: got,
                }))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .next();
        if first_failure.is_some() {
            break;
        }
    }

    match first_failure {
        Some(w) => Err(Error::NotBidifferential(Box::new(w))),
        None => Ok(candidate),
    }
}

/// Convenience wrapper mapping a `NotBidifferential` error to `Ok(Err(witness))`.
pub fn extract_or_witness<F>(
    n: usize,
    black_box: F,
    bounds: &ExtractBounds,
) -> Result<std::result::Result<BiDiffOp, Witness>>
where
    F: Fn(&Poly, &Poly) -> Result<Poly> + Sync,
{
    match extract_bidiff(n, black_box, bounds) {
        Ok(b) => Ok(Ok(b)),
        Err(Error::NotBidifferential(w)) => Ok(Err(*w)),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::DiffOp;
    use crate::poly::rat;
    use crate::quantization::c_p;

    #[test]
    fn recovers_product() {
        let b = extract_bidiff(1, |a, b| Ok(a * b), &ExtractBounds::new(3, 3)).unwrap();
        assert_eq!(b, BiDiffOp::product(1));
    }

    #[test]
    fn recovers_poisson() {
        let b = extract_bidiff(2, |a, b| a.poisson(b), &ExtractBounds::new(3, 2)).unwrap();
        assert_eq!(b, BiDiffOp::poisson(2));
    }

    #[test]
    fn recovers_variable_coefficients() {
        let f = DiffOp::euler(1).compose(&DiffOp::divergence(1));
        let g = DiffOp::multiplication(Poly::u(1, 0).pow(2));
        let op = BiDiffOp::tensor(&f, &g).unwrap();
        let got = extract_bidiff(1, |a, b| op.apply(a, b), &ExtractBounds::new(4, 3)).unwrap();
        assert_eq!(got, op);
    }

    #[test]
    fn order_too_small_gives_witness() {
        let op = BiDiffOp::normal_ordering(1, 2);
        let r = extract_or_witness(1, |a, b| op.apply(a, b), &ExtractBounds::new(2, 2)).unwrap();
        assert!(matches!(r, Err(Witness::Mismatch { .. })));
    }

    #[test]
    fn coefficient_bound_gives_witness() {
        let op = BiDiffOp::tensor(&DiffOp::multiplication(Poly::u(1, 0).pow(3)), &DiffOp::identity(1)).unwrap();
        let r = extract_or_witness(1, |a, b| op.apply(a, b), &ExtractBounds::new(1, 2)).unwrap();
        assert!(matches!(r, Err(Witness::CoefficientDegree { degree: 3, .. })));
    }

    #[test]
    fn c2_half_is_not_bidifferential() {
        let r = extract_or_witness(1, |a, b| c_p(&rat(1, 2), a, b, 2), &ExtractBounds::new(8, 8)).unwrap();
        assert!(r.is_err(), "expected a witness, got {r:?}");
    }
}
