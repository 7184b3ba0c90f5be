//! `gl(n+1)` elements acting on the big cell by infinitesimal
//! fractional-linear transformations, and their momentum functions.

use std::fmt;

use num_traits::{One, Zero};

use crate::poly::{Poly, Rational};

/// Global sign in `{μ^x, μ^y} = ε μ^{[x,y]}` for the chart formula of
/// [`vector_field`] and the bracket convention of [`Poly::poisson`].
pub const MOMENTUM_BRACKET_SIGN: i64 = -1;

/// An `(n+1)×(n+1)` rational matrix, indices `0..=n`. Scalar matrices act trivially.
#[derive(Clone, PartialEq, Eq)]
pub struct LieElement {
    n: usize,
    matrix: Vec<Vec<Rational>>,
}

impl LieElement {
    pub fn zero(n: usize) -> Self {
        LieElement {
            n,
            matrix: vec![vec![Rational::zero(); n + 1]; n + 1],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut x = Self::zero(n);
        for i in 0..=n {
            x.matrix[i][i] = Rational::one();
        }
        x
    }

    /// The matrix unit `e_{row,col}`.
    pub fn unit(n: usize, row: usize, col: usize) -> Self {
        assert!(row <= n && col <= n, "matrix unit index out of range");
        let mut x = Self::zero(n);
        x.matrix[row][col] = Rational::one();
        x
    }

    pub fn from_matrix(matrix: Vec<Vec<Rational>>) -> Self {
        let size = matrix.len();
        assert!(size >= 2, "need at least a 2x2 matrix");
        assert!(matrix.iter().all(|r| r.len() == size), "matrix must be square");
        LieElement {
            n: size - 1,
            matrix,
        }
    }

    /// All `(n+1)²` matrix units.
    pub fn gl_basis(n: usize) -> Vec<LieElement> {
        (0..=n)
            .flat_map(|a| (0..=n).map(move |b| Self::unit(n, a, b)))
            .collect()
    }

    /// The `(n+1)² − 1` elements `e_ab` (`a ≠ b`) and `e_aa − e_{a+1,a+1}`.
    pub fn sl_basis(n: usize) -> Vec<LieElement> {
        let mut out = Vec::new();
        for a in 0..=n {
            for b in 0..=n {
                if a != b {
                    out.push(Self::unit(n, a, b));
                }
            }
        }
        for a in 0..n {
            out.push(Self::unit(n, a, a).sub(&Self::unit(n, a + 1, a + 1)));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.matrix[row][col]
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Zero::is_zero)
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = self.clone();
        for (row, orow) in out.matrix.iter_mut().zip(&other.matrix) {
            for (v, o) in row.iter_mut().zip(orow) {
                *v += o;
            }
        }
        out
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> LieElement {
        let mut out = self.clone();
        for v in out.matrix.iter_mut().flatten() {
            *v *= c;
        }
        out
    }

    fn matmul(&self, other: &LieElement) -> LieElement {
        let size = self.n + 1;
        let mut out = Self::zero(self.n);
        for i in 0..size {
            for k in 0..size {
                if self.matrix[i][k].is_zero() {
                    continue;
                }
                for j in 0..size {
                    out.matrix[i][j] += &self.matrix[i][k] * &other.matrix[k][j];
                }
            }
        }
        out
    }

    /// `[x, y] = xy − yx`.
    pub fn bracket(&self, other: &LieElement) -> LieElement {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.matmul(other).sub(&other.matmul(self))
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (a, row) in self.matrix.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let name = if self.n < 10 {
                    format!("e{a}{b}")
                } else {
                    format!("e{a}_{b}")
                };
                if v.is_one() {
                    parts.push(name);
                } else {
                    parts.push(format!("{v}*{name}"));
                }
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement[n={}]({self})", self.n)
    }
}

/// Coefficients `a_i(u) = (x ũ)_i − u_i (x ũ)_0` of the vector field on the
/// big cell, with `ũ = (1, u_1, …, u_n)`.
pub fn vector_field(x: &LieElement) -> Vec<Poly> {
    let n = x.n;
    let homog: Vec<Poly> = (0..=n)
        .map(|j| if j == 0 { Poly::one(n) } else { Poly::u(n, j - 1) })
        .collect();
    let image: Vec<Poly> = (0..=n)
        .map(|i| {
            let mut acc = Poly::zero(n);
            for (j, h) in homog.iter().enumerate() {
                acc += &h.scale(&x.matrix[i][j]);
            }
            acc
        })
        .collect();
    (1..=n)
        .map(|i| &image[i] - &(&Poly::u(n, i - 1) * &image[0]))
        .collect()
}

/// Principal symbol `μ^x` of the vector field of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentumFunction {
    pub source: LieElement,
    pub poly: Poly,
}

pub fn momentum(x: &LieElement) -> MomentumFunction {
    let n = x.n;
    let mut poly = Poly::zero(n);
    for (i, a) in vector_field(x).iter().enumerate() {
        poly += &(a * &Poly::xi(n, i));
    }
    MomentumFunction {
        source: x.clone(),
        poly,
    }
}

/// `{μ^x, μ^y} − ε μ^{[x,y]}`; identically zero.
pub fn check_homomorphism(x: &LieElement, y: &LieElement) -> Poly {
    let lhs = momentum(x)
        .poly
        .poisson(&momentum(y).poly)
        .expect("same dimension");
    let rhs = momentum(&x.bracket(y))
        .poly
        .scale(&Rational::from_integer(MOMENTUM_BRACKET_SIGN.into()));
    &lhs - &rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn vector_field_examples() {
        let f = vector_field(&LieElement::unit(1, 0, 1));
        assert_eq!(f, vec![-Poly::u(1, 0).pow(2)]);
        assert!(vector_field(&LieElement::identity(3)).iter().all(Poly::is_zero));
        assert_eq!(vector_field(&LieElement::unit(1, 1, 0)), vec![Poly::one(1)]);
    }

    #[test]
    fn momentum_examples() {
        assert_eq!(momentum(&LieElement::unit(1, 1, 0)).poly, Poly::xi(1, 0));
        assert_eq!(
            momentum(&LieElement::unit(1, 0, 1)).poly,
            -(&Poly::u(1, 0).pow(2) * &Poly::xi(1, 0))
        );
        assert!(momentum(&LieElement::identity(2)).poly.is_zero());
    }

    #[test]
    fn momentum_shape() {
        for n in 1..4 {
            for x in LieElement::gl_basis(n) {
                let mu = momentum(&x).poly;
                if mu.is_zero() {
                    continue;
                }
                assert_eq!(mu.xi_degrees(), vec![1]);
                assert!(mu.max_u_degree().unwrap() <= 2);
            }
        }
    }

    #[test]
    fn homomorphism_examples() {
        let x = LieElement::unit(1, 1, 0);
        let y = LieElement::unit(1, 0, 1);
        assert!(check_homomorphism(&x, &y).is_zero());
        assert!(check_homomorphism(&y, &y).is_zero());
        let t1 = LieElement::unit(2, 1, 0);
        let t2 = LieElement::unit(2, 2, 0);
        assert!(check_homomorphism(&t1, &t2).is_zero());
        assert!(momentum(&t1).poly.poisson(&momentum(&t2).poly).unwrap().is_zero());
    }

    #[test]
    fn sl_basis_size_and_linearity() {
        for n in 1..4 {
            assert_eq!(LieElement::sl_basis(n).len(), (n + 1) * (n + 1) - 1);
        }
        let x = LieElement::unit(2, 0, 1);
        let y = LieElement::unit(2, 2, 1);
        let combo = x.scale(&int(3)).add(&y.scale(&int(-2)));
        let expected = &momentum(&x).poly.scale(&int(3)) - &momentum(&y).poly.scale(&int(2));
        assert_eq!(momentum(&combo).poly, expected);
    }
}
