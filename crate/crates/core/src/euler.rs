//! Rational functions of the fiberwise Euler operator `E`, acting diagonally
//! on ξ-homogeneous components, and the operator families built from them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::poly::{factorial, int, rat, Poly, Rational};

/// `scalar · ∏(E + a) / ∏(E + b)`.
///
/// Roots are stored relative to `E` itself. `shift` is only a presentation
/// hint: with `shift = n/2` the factors print as `(E' + a - n/2)`.
#[derive(Clone)]
pub struct EulerRational {
    scalar: Rational,
    num: Vec<Rational>,
    den: Vec<Rational>,
    shift: Rational,
}

impl EulerRational {
    pub fn identity() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        EulerRational {
            scalar: c,
            num: Vec::new(),
            den: Vec::new(),
            shift: Rational::zero(),
        }
    }

    /// Builds `scalar · ∏(E + shift + r) / ∏(E + shift + s)` from roots
    /// relative to `E + shift`.
    pub fn from_roots(scalar: Rational, num: &[Rational], den: &[Rational], shift: Rational) -> Self {
        let mut r = EulerRational {
            scalar,
            num: num.iter().map(|x| x + &shift).collect(),
            den: den.iter().map(|x| x + &shift).collect(),
            shift,
        };
        r.normalize();
        r
    }

    /// The single factor `E + r`.
    pub fn linear(r: Rational) -> Self {
        Self::from_roots(Rational::one(), &[r], &[], Rational::zero())
    }

    /// The single factor `E' + r` with `E' = E + n/2`.
    pub fn shifted_linear(n: usize, r: Rational) -> Self {
        Self::from_roots(Rational::one(), &[r], &[], half_n(n))
    }

    fn normalize(&mut self) {
        if self.scalar.is_zero() {
            self.num.clear();
            self.den.clear();
            return;
        }
        self.num.sort();
        self.den.sort();
        let (mut i, mut j) = (0, 0);
        let mut num = Vec::with_capacity(self.num.len());
        let mut den = Vec::with_capacity(self.den.len());
        while i < self.num.len() && j < self.den.len() {
            match self.num[i].cmp(&self.den[j]) {
                std::cmp::Ordering::Less => {
                    num.push(self.num[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    den.push(self.den[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        num.extend_from_slice(&self.num[i..]);
        den.extend_from_slice(&self.den[j..]);
        self.num = num;
        self.den = den;
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    /// Numerator roots `a` of the factors `E + a`.
    pub fn numerator_roots(&self) -> &[Rational] {
        &self.num
    }

    pub fn denominator_roots(&self) -> &[Rational] {
        &self.den
    }

    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn with_shift(mut self, shift: Rational) -> Self {
        self.shift = shift;
        self
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn mul(&self, other: &EulerRational) -> EulerRational {
        let mut r = EulerRational {
            scalar: &self.scalar * &other.scalar,
            num: self.num.iter().chain(&other.num).cloned().collect(),
            den: self.den.iter().chain(&other.den).cloned().collect(),
            shift: self.shift.clone(),
        };
        r.normalize();
        r
    }

    pub fn scale(&self, c: &Rational) -> EulerRational {
        let mut r = self.clone();
        r.scalar *= c;
        r.normalize();
        r
    }

    /// Multiplicative inverse, swapping the root lists.
    ///
    /// Panics on the zero function.
    pub fn inverse(&self) -> EulerRational {
        assert!(!self.scalar.is_zero(), "inverse of zero Euler operator");
        EulerRational {
            scalar: self.scalar.recip(),
            num: self.den.clone(),
            den: self.num.clone(),
            shift: self.shift.clone(),
        }
    }

    /// `R(E + k)`.
    pub fn shift_argument(&self, k: &Rational) -> EulerRational {
        EulerRational {
            scalar: self.scalar.clone(),
            num: self.num.iter().map(|r| r + k).collect(),
            den: self.den.iter().map(|r| r + k).collect(),
            shift: self.shift.clone(),
        }
    }

    /// Value on a ξ-homogeneous component of degree `d`.
    pub fn eval(&self, d: u32) -> Result<Rational> {
        let e = int(d as i64);
        let mut den = Rational::one();
        for r in &self.den {
            let f = &e + r;
            if f.is_zero() {
                return Err(Error::SingularComponent {
                    degree: d,
                    root: r.clone(),
                });
            }
            den *= f;
        }
        let mut num = self.scalar.clone();
        for r in &self.num {
            num *= &e + r;
        }
        Ok(num / den)
    }

    pub fn apply(&self, a: &Poly) -> Result<Poly> {
        let mut out = Poly::zero(a.n());
        for (d, comp) in a.grade().iter() {
            let v = self.eval(d)?;
            out += &comp.scale(&v);
        }
        Ok(out)
    }

    /// Expands `scalar · ∏(E + a)` into a normal-form differential operator.
    pub fn to_diffop(&self, n: usize) -> Result<DiffOp> {
        if !self.is_polynomial() {
            return Err(Error::NotPolynomial(self.den.len()));
        }
        let e = DiffOp::euler(n);
        let mut op = DiffOp::scalar(n, self.scalar.clone());
        for r in &self.num {
            op = op.compose(&e.add(&DiffOp::scalar(n, r.clone())));
        }
        Ok(op)
    }

    pub fn to_json(&self) -> Value {
        let rel = |v: &[Rational]| -> Vec<String> { v.iter().map(|r| (r - &self.shift).to_string()).collect() };
        json!({
            "scalar": self.scalar.to_string(),
            "shift": self.shift.to_string(),
            "numerator_roots": rel(&self.num),
            "denominator_roots": rel(&self.den),
            "text": self.to_string(),
        })
    }
}

impl PartialEq for EulerRational {
    fn eq(&self, other: &Self) -> bool {
        self.scalar == other.scalar && self.num == other.num && self.den == other.den
    }
}

impl Eq for EulerRational {}

impl fmt::Debug for EulerRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EulerRational({self})")
    }
}

impl fmt::Display for EulerRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = if self.shift.is_zero() { "E" } else { "E'" };
        let factor = |r: &Rational| {
            let r = r - &self.shift;
            if r.is_zero() {
                format!("({var})")
            } else if r.is_negative() {
                format!("({var}-{})", -r)
            } else {
                format!("({var}+{r})")
            }
        };
        let num: String = self.num.iter().map(factor).collect();
        let den: String = self.den.iter().map(factor).collect();
        let has_factors = !num.is_empty() || !den.is_empty();
        if !has_factors || !self.scalar.is_one() {
            write!(f, "{}", self.scalar)?;
            if !num.is_empty() {
                f.write_str(" * ")?;
            }
        }
        if num.is_empty() && !den.is_empty() && self.scalar.is_one() {
            f.write_str("1")?;
        }
        f.write_str(&num)?;
        if !den.is_empty() {
            write!(f, " / {den}")?;
        }
        Ok(())
    }
}

pub fn half_n(n: usize) -> Rational {
    rat(n as i64, 2)
}

fn inv_factorial(d: u32) -> Rational {
    Rational::new(BigInt::one(), factorial(d))
}

fn floor_half(k: u32) -> u32 {
    k / 2
}

/// `h_d = (1/d!) ∏_{j<d} (E + j + λ(n+1)) / (2E + j + n + d)`.
pub fn h_d(lambda: &Rational, n: usize, d: u32) -> EulerRational {
    let l = lambda * int(n as i64 + 1);
    let mut scalar = inv_factorial(d);
    let mut num = Vec::new();
    let mut den = Vec::new();
    for j in 0..d {
        num.push(int(j as i64) + &l);
        scalar /= int(2);
        den.push(rat((j as usize + n + d as usize) as i64, 2));
    }
    EulerRational::from_roots(scalar, &num, &den, Rational::zero())
}

/// `g_d = (1/d!) ∏_{j<d} (−E − j − λ(n+1)) / (2E + j + n + 1)`.
pub fn g_d(lambda: &Rational, n: usize, d: u32) -> EulerRational {
    let l = lambda * int(n as i64 + 1);
    let mut scalar = inv_factorial(d);
    let mut num = Vec::new();
    let mut den = Vec::new();
    for j in 0..d {
        scalar = -scalar / int(2);
        num.push(int(j as i64) + &l);
        den.push(rat((j as usize + n + 1) as i64, 2));
    }
    EulerRational::from_roots(scalar, &num, &den, Rational::zero())
}

/// `T_p = ∏_{i=1}^{⌊p/2⌋} (E' + i)`.
pub fn t_p(n: usize, p: u32) -> EulerRational {
    let roots: Vec<Rational> = (1..=floor_half(p)).map(|i| int(i as i64)).collect();
    EulerRational::from_roots(Rational::one(), &roots, &[], half_n(n))
}

/// `S_p = ∏_{i=1}^{⌊p/2⌋} (E' − i)`.
pub fn s_p(n: usize, p: u32) -> EulerRational {
    let roots: Vec<Rational> = (1..=floor_half(p)).map(|i| int(-(i as i64))).collect();
    EulerRational::from_roots(Rational::one(), &roots, &[], half_n(n))
}

/// `U_d = 1/(2^d d!) ∏_{i=1}^{⌊d/2⌋} (E' + i − 1/2)`.
pub fn u_d(n: usize, d: u32) -> EulerRational {
    let roots: Vec<Rational> = (1..=floor_half(d)).map(|i| rat(2 * i as i64 - 1, 2)).collect();
    let scalar = inv_factorial(d) / Rational::from_integer(BigInt::from(2).pow(d));
    EulerRational::from_roots(scalar, &roots, &[], half_n(n))
}

/// `V_d = ∏_{i=⌊(d+1)/2⌋}^{d−1} (E' + i)`.
pub fn v_d(n: usize, d: u32) -> EulerRational {
    let roots: Vec<Rational> = (floor_half(d + 1)..d).map(|i| int(i as i64)).collect();
    EulerRational::from_roots(Rational::one(), &roots, &[], half_n(n))
}

/// `F_d = (−1)^d/(2^d d!) ∏_{i=⌊(d+1)/2⌋}^{d−1} (E' + i + 1/2)`, so that
/// `g_d = T_d^{-1} F_d` at `λ = 1/2`.
pub fn f_d(n: usize, d: u32) -> EulerRational {
    let roots: Vec<Rational> = (floor_half(d + 1)..d)
        .map(|i| rat(2 * i as i64 + 1, 2))
        .collect();
    let mut scalar = inv_factorial(d) / Rational::from_integer(BigInt::from(2).pow(d));
    if d % 2 == 1 {
        scalar = -scalar;
    }
    EulerRational::from_roots(scalar, &roots, &[], half_n(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rational {
        rat(1, 2)
    }

    #[test]
    fn apply_examples() {
        let xi2 = Poly::xi(1, 0).pow(2);
        let r = EulerRational::linear(int(1)).inverse();
        assert_eq!(r.apply(&xi2).unwrap(), xi2.scale(&rat(1, 3)));

        let r = EulerRational::shifted_linear(1, int(-1));
        assert_eq!(r.apply(&Poly::xi(1, 0)).unwrap(), Poly::xi(1, 0).scale(&half()));

        let r = EulerRational::shifted_linear(2, int(-1)).inverse();
        match r.apply(&Poly::u(2, 0)) {
            Err(Error::SingularComponent { degree: 0, .. }) => {}
            other => panic!("expected singular component, got {other:?}"),
        }
    }

    #[test]
    fn h_and_g_examples() {
        assert_eq!(h_d(&half(), 1, 1), EulerRational::constant(half()));
        assert_eq!(h_d(&rat(1, 3), 2, 0), EulerRational::identity());
        assert_eq!(h_d(&Rational::zero(), 1, 1).eval(1).unwrap(), rat(1, 4));

        assert_eq!(g_d(&half(), 1, 1), EulerRational::constant(-half()));
        for n in 1..4 {
            for l in [rat(0, 1), rat(1, 4), rat(1, 3), half(), int(1)] {
                assert_eq!(g_d(&l, n, 1).eval(0).unwrap(), -l);
            }
        }
        assert_eq!(g_d(&half(), 1, 2).eval(0).unwrap(), rat(1, 6));
    }

    #[test]
    fn t_s_examples() {
        for p in 0..2 {
            assert_eq!(t_p(3, p), EulerRational::identity());
            assert_eq!(s_p(3, p), EulerRational::identity());
        }
        assert_eq!(s_p(1, 2).apply(&Poly::xi(1, 0)).unwrap(), Poly::xi(1, 0).scale(&half()));
        // n odd: E' - i never vanishes on integer degrees
        for n in [1usize, 3, 5] {
            let inv = s_p(n, 6).inverse();
            for d in 0..12 {
                assert!(inv.eval(d).is_ok());
            }
        }
    }

    #[test]
    fn u_v_f_examples() {
        assert_eq!(u_d(1, 1), EulerRational::constant(half()));
        assert_eq!(u_d(1, 0), EulerRational::identity());
        assert_eq!(f_d(1, 0), EulerRational::identity());
        assert_eq!(v_d(3, 1), EulerRational::identity());
    }

    #[test]
    fn to_diffop_examples() {
        let op = EulerRational::shifted_linear(1, int(1)).to_diffop(1).unwrap();
        let expected = DiffOp::euler(1).add(&DiffOp::scalar(1, rat(3, 2)));
        assert_eq!(op, expected);

        let ratio = t_p(1, 2).mul(&t_p(1, 1).inverse());
        assert_eq!(ratio.to_diffop(1).unwrap(), expected);

        assert!(matches!(
            s_p(1, 2).inverse().to_diffop(1),
            Err(Error::NotPolynomial(1))
        ));
    }

    #[test]
    fn rendering() {
        assert_eq!(t_p(1, 4).to_string(), "(E'+1)(E'+2)");
        assert_eq!(s_p(1, 2).inverse().to_string(), "1 / (E'-1)");
        assert_eq!(h_d(&Rational::zero(), 1, 1).to_string(), "1/2 * (E) / (E+1)");
        assert_eq!(EulerRational::constant(rat(-1, 2)).to_string(), "-1/2");
    }
}
