//! The normal-ordering product `#`, the correctors `b_h`, `b_g`, and the
//! equivariant star product `φ ⋆_λ ψ = b_g(b_h φ # b_h ψ)`.
//!
//! The formal parameter `t` is never materialized: every stage lowers the
//! ξ-degree by exactly its power of `t`, so for `φ ∈ A^j`, `ψ ∈ A^k` the
//! coefficient `C_p(φ,ψ)` is the ξ-degree `j+k−p` component of the result.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::euler::{g_d, h_d, EulerRational};
use crate::poly::{Exponent, Poly, Rational};

/// The coefficients `C_p^λ(φ,ψ)` of one star product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarExpansion {
    pub lambda: Rational,
    pub n: usize,
    pub coefficients: BTreeMap<u32, Poly>,
}

impl StarExpansion {
    pub fn coefficient(&self, p: u32) -> Poly {
        self.coefficients
            .get(&p)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.n))
    }

    /// Highest `p` that can carry a nonzero coefficient.
    pub fn max_p(&self) -> u32 {
        self.coefficients.keys().copied().max().unwrap_or(0)
    }

    /// JSON with coefficients `0..=p_max` (zeros included).
    pub fn to_json(&self, p_max: u32) -> Value {
        let mut coeffs = Map::new();
        for p in 0..=p_max {
            coeffs.insert(p.to_string(), Value::String(self.coefficient(p).to_string()));
        }
        json!({
            "lambda": self.lambda.to_string(),
            "n": self.n,
            "coefficients": coeffs,
        })
    }
}

/// `N_k(φ,ψ) = Σ_{|β|=k} (1/β!) ∂_ξ^β φ ∂_u^β ψ`.
pub fn n_k_apply(a: &Poly, b: &Poly, k: u32) -> Poly {
    let n = a.n();
    let mut out = Poly::zero(n);
    for beta in Exponent::all_up_to(n, k)
        .into_iter()
        .filter(|e| e.total_degree() == k && e.u_degree() == 0)
    {
        let zeros = vec![0; n];
        let left = Exponent::from_parts(&zeros, beta.xi());
        let da = a.derivative(&left);
        if da.is_zero() {
            continue;
        }
        let right = Exponent::from_parts(beta.xi(), &zeros);
        let db = b.derivative(&right);
        if db.is_zero() {
            continue;
        }
        let inv = Rational::new(BigInt::one(), left.factorial());
        out += &(&da * &db).scale(&inv);
    }
    out
}

/// The terms `N_k(a,b)` of `a # b`, `k = 0..=deg_ξ(a)`.
pub fn normal_star(a: &Poly, b: &Poly) -> Result<Vec<Poly>> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let top = a.max_xi_degree().unwrap_or(0);
    Ok((0..=top).map(|k| n_k_apply(a, b, k)).collect())
}

fn corrector(a: &Poly, family: impl Fn(u32) -> EulerRational) -> Poly {
    let mut out = a.clone();
    let mut cur = a.clone();
    for d in 1.. {
        cur = cur.divergence();
        if cur.is_zero() {
            break;
        }
        let term = family(d)
            .apply(&cur)
            .expect("corrector denominators are positive on every degree");
        out += &term;
    }
    out
}

/// `b_h(a) = a + Σ_{d≥1} h_d(E) D^d a`.
pub fn bh(lambda: &Rational, a: &Poly) -> Poly {
    let n = a.n();
    corrector(a, |d| h_d(lambda, n, d))
}

/// `b_g(a) = a + Σ_{d≥1} g_d(E) D^d a`, the inverse of `b_h`.
pub fn bg(lambda: &Rational, a: &Poly) -> Poly {
    let n = a.n();
    corrector(a, |d| g_d(lambda, n, d))
}

/// `φ ⋆_λ ψ`, split into its coefficients `C_p^λ(φ,ψ)`.
pub fn star(lambda: &Rational, a: &Poly, b: &Poly) -> Result<StarExpansion> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let n = a.n();
    let mut coefficients: BTreeMap<u32, Poly> = BTreeMap::new();
    let gb = b.grade();
    for (j, ca) in a.grade().iter() {
        let ha = bh(lambda, ca);
        for (k, cb) in gb.iter() {
            let hb = bh(lambda, cb);
            let mut prod = Poly::zero(n);
            for term in normal_star(&ha, &hb)? {
                prod += &term;
            }
            let full = bg(lambda, &prod);
            for (e, comp) in full.grade().iter() {
                debug_assert!(e <= j + k);
                let p = j + k - e;
                *coefficients.entry(p).or_insert_with(|| Poly::zero(n)) += comp;
            }
        }
    }
    coefficients.retain(|_, v| !v.is_zero());
    Ok(StarExpansion {
        lambda: lambda.clone(),
        n,
        coefficients,
    })
}

/// `C_p^λ(a, b)`.
pub fn c_p(lambda: &Rational, a: &Poly, b: &Poly, p: u32) -> Result<Poly> {
    Ok(star(lambda, a, b)?.coefficient(p))
}

/// `b_g(a·b)` for `a ∈ C[u]`, `b ∈ C[ξ]`, which equals `a ⋆_λ b`.
pub fn special_value(lambda: &Rational, a: &Poly, b: &Poly) -> Result<Poly> {
    if !a.is_u_only() {
        return Err(Error::Precondition(format!("left argument `{a}` must not involve xi")));
    }
    if !b.is_xi_only() {
        return Err(Error::Precondition(format!("right argument `{b}` must not involve u")));
    }
    Ok(bg(lambda, &a.checked_mul(b)?))
}

/// `Σ_{p+q=r} C_p(C_q(a,b), c) − C_p(a, C_q(b,c))`, the order-`r` part of
/// `(a ⋆ b) ⋆ c − a ⋆ (b ⋆ c)`.
pub fn associativity_residual(lambda: &Rational, a: &Poly, b: &Poly, c: &Poly, r: u32) -> Result<Poly> {
    let ab = star(lambda, a, b)?;
    let bc = star(lambda, b, c)?;
    let mut out = Poly::zero(a.n());
    for q in 0..=r {
        let p = r - q;
        out += &c_p(lambda, &ab.coefficient(q), c, p)?;
        out -= &c_p(lambda, a, &bc.coefficient(q), p)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use num_traits::Zero;

    fn u1() -> Poly {
        Poly::u(1, 0)
    }
    fn xi1() -> Poly {
        Poly::xi(1, 0)
    }
    fn half() -> Rational {
        rat(1, 2)
    }

    #[test]
    fn normal_star_examples() {
        let terms = normal_star(&xi1().pow(2), &u1()).unwrap();
        assert_eq!(terms[0], &u1() * &xi1().pow(2));
        assert_eq!(terms[1], xi1().scale(&int(2)));
        let s: Poly = normal_star(&u1(), &xi1()).unwrap().into_iter().fold(Poly::zero(1), |a, b| a + b);
        assert_eq!(s, &u1() * &xi1());
        let s: Poly = normal_star(&Poly::xi(2, 0), &Poly::xi(2, 1))
            .unwrap()
            .into_iter()
            .fold(Poly::zero(2), |a, b| a + b);
        assert_eq!(s, &Poly::xi(2, 0) * &Poly::xi(2, 1));
    }

    #[test]
    fn corrector_examples() {
        let a = &u1().pow(2) * &xi1();
        assert_eq!(bh(&half(), &a), &a + &u1());

        let xi_only = &Poly::xi(2, 0).pow(3) * &Poly::xi(2, 1);
        assert_eq!(bh(&rat(1, 3), &xi_only), xi_only);

        let a = &(&u1().pow(2) * &xi1().pow(2)) + &(&u1() * &xi1());
        let expected = &(&(&u1().pow(2) * &xi1().pow(2)) - &(&u1() * &xi1())) + &Poly::constant(1, rat(1, 6));
        assert_eq!(bg(&half(), &a), expected);
    }

    #[test]
    fn star_examples() {
        for l in [Rational::zero(), rat(1, 4), rat(1, 3), half(), int(1)] {
            let s = star(&l, &u1(), &xi1()).unwrap();
            assert_eq!(s.coefficient(0), &u1() * &xi1());
            assert_eq!(s.coefficient(1), Poly::constant(1, -l.clone()));
        }

        let s = star(&half(), &(&u1().pow(2) * &xi1()), &xi1()).unwrap();
        assert_eq!(s.coefficient(0), &u1().pow(2) * &xi1().pow(2));
        assert_eq!(s.coefficient(1), -(&u1() * &xi1()));
        assert_eq!(s.coefficient(2), Poly::constant(1, rat(1, 6)));
        assert_eq!(s.max_p(), 2);

        let a = &Poly::xi(2, 0).pow(2) * &Poly::xi(2, 1);
        let b = Poly::xi(2, 1).pow(3);
        let s = star(&rat(1, 3), &a, &b).unwrap();
        assert_eq!(s.coefficients.len(), 1);
        assert_eq!(s.coefficient(0), &a * &b);
    }

    #[test]
    fn c_p_examples() {
        let v = c_p(&half(), &u1(), &xi1().pow(2), 1).unwrap();
        assert_eq!(v, -xi1());
        assert_eq!(v, u1().poisson(&xi1().pow(2)).unwrap().scale(&half()));
    }

    #[test]
    fn special_value_examples() {
        let v = special_value(&half(), &u1(), &xi1().pow(2)).unwrap();
        assert_eq!(v, &(&u1() * &xi1().pow(2)) - &xi1());
        assert_eq!(special_value(&rat(1, 3), &u1(), &Poly::one(1)).unwrap(), u1());
        assert_eq!(special_value(&rat(1, 3), &Poly::one(1), &xi1().pow(3)).unwrap(), xi1().pow(3));
        assert!(matches!(
            special_value(&half(), &xi1(), &xi1()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            special_value(&half(), &u1(), &u1()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn associativity_example() {
        let a = &u1().pow(2) * &xi1();
        let b = &u1() * &xi1().pow(2);
        let c = &u1().pow(3) + &xi1();
        for l in [Rational::zero(), rat(1, 3), half()] {
            for r in 0..=4 {
                assert!(associativity_residual(&l, &a, &b, &c, r).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn json_shape() {
        let s = star(&half(), &(&u1().pow(2) * &xi1()), &xi1()).unwrap();
        assert_eq!(
            s.to_json(2).to_string(),
            r#"{"lambda":"1/2","n":1,"coefficients":{"0":"u1^2*xi1^2","1":"-u1*xi1","2":"1/6"}}"#
        );
    }
}
