//! Sparse exact-rational polynomials in the Darboux coordinates
//! `u_1..u_n, ξ_1..ξ_n` of the big cell, graded by ξ-degree.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// One of the `2n` coordinates. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    U(usize),
    Xi(usize),
}

impl Var {
    fn slot(self, n: usize) -> usize {
        match self {
            Var::U(i) => i,
            Var::Xi(i) => n + i,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::U(i) => write!(f, "u{}", i + 1),
            Var::Xi(i) => write!(f, "xi{}", i + 1),
        }
    }
}

/// Exponent vector over `u_1..u_n, ξ_1..ξ_n`, stored contiguously as `[u.., ξ..]`.
///
/// Also used as a derivative multi-index `∂_u^a ∂_ξ^b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exponent(SmallVec<[u32; 8]>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(SmallVec::from_elem(0, 2 * n))
    }

    pub fn from_parts(u: &[u32], xi: &[u32]) -> Self {
        assert_eq!(u.len(), xi.len(), "u and xi exponent lengths differ");
        let mut v = SmallVec::with_capacity(2 * u.len());
        v.extend_from_slice(u);
        v.extend_from_slice(xi);
        Exponent(v)
    }

    pub fn var(n: usize, var: Var) -> Self {
        let mut e = Self::zero(n);
        e.0[var.slot(n)] = 1;
        e
    }

    pub fn n(&self) -> usize {
        self.0.len() / 2
    }

    pub fn u(&self) -> &[u32] {
        &self.0[..self.n()]
    }

    pub fn xi(&self) -> &[u32] {
        &self.0[self.n()..]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, var: Var) -> u32 {
        self.0[var.slot(self.n())]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn u_degree(&self) -> u32 {
        self.u().iter().sum()
    }

    pub fn xi_degree(&self) -> u32 {
        self.xi().iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, or `None` if `other` does not divide `self`.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Exponent(out))
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `∏ e_i!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&e| factorial(e)).product()
    }

    /// `∏ binom(self_i, sub_i)`; zero unless `sub` divides `self`.
    pub fn binomial(&self, sub: &Exponent) -> BigInt {
        self.0
            .iter()
            .zip(&sub.0)
            .map(|(&a, &b)| binomial(a, b))
            .product()
    }

    /// All exponents `e` with `e ≤ self` componentwise.
    pub fn divisors(&self) -> Vec<Exponent> {
        let mut out = vec![Exponent(SmallVec::new())];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |k| {
                        let mut e = prefix.clone();
                        e.0.push(k);
                        e
                    })
                })
                .collect();
        }
        out
    }

    /// Every exponent over `2n` variables with total degree at most `max_degree`,
    /// in ascending order.
    pub fn all_up_to(n: usize, max_degree: u32) -> Vec<Exponent> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; 2 * n];
        fn rec(slot: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
            if slot == cur.len() {
                out.push(Exponent(cur.iter().copied().collect()));
                return;
            }
            for k in 0..=left {
                cur[slot] = k;
                rec(slot + 1, left - k, cur, out);
            }
            cur[slot] = 0;
        }
        rec(0, max_degree, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{:?}xi{:?}", self.u(), self.xi())
    }
}

pub(crate) fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

pub(crate) fn binomial(a: u32, b: u32) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

/// Falling factorial `a (a-1) … (a-k+1)`.
pub(crate) fn falling(a: u32, k: u32) -> BigInt {
    if k > a {
        return BigInt::zero();
    }
    (0..k).map(|i| BigInt::from(a - i)).product()
}

/// Exact polynomial symbol on `T*R^n` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(Exponent::zero(n), c)
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let n = exp.n();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { n, terms }
    }

    pub fn var(n: usize, var: Var) -> Self {
        Self::monomial(Exponent::var(n, var), Rational::one())
    }

    pub fn u(n: usize, i: usize) -> Self {
        Self::var(n, Var::U(i))
    }

    pub fn xi(n: usize, i: usize) -> Self {
        Self::var(n, Var::Xi(i))
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = Poly::zero(n);
        for (e, c) in terms {
            assert_eq!(e.n(), n, "exponent dimension");
            p.add_term(e, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exponent, Rational> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &Exponent) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, exp: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &Exponent, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.add(exp), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(self.n), |acc, _| &acc * self)
    }

    /// Exact partial derivative `∂/∂var`.
    pub fn partial(&self, var: Var) -> Poly {
        self.derivative(&Exponent::var(self.n, var))
    }

    /// Mixed partial derivative `∂^β` for a derivative multi-index `β`.
    pub fn derivative(&self, beta: &Exponent) -> Poly {
        if beta.is_zero() {
            return self.clone();
        }
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            if let Some(rest) = e.checked_sub(beta) {
                let f: BigInt = e
                    .as_slice()
                    .iter()
                    .zip(beta.as_slice())
                    .map(|(&a, &k)| falling(a, k))
                    .product();
                out.add_term(rest, c * Rational::from_integer(f));
            }
        }
        out
    }

    /// `D = Σ_i ∂²/∂u_i∂ξ_i` applied once.
    pub fn divergence(&self) -> Poly {
        let mut out = Poly::zero(self.n);
        for i in 0..self.n {
            let d = Exponent::from_parts(&unit(self.n, i), &unit(self.n, i));
            out += &self.derivative(&d);
        }
        out
    }

    /// Poisson bracket `Σ_i ∂a/∂ξ_i ∂b/∂u_i − ∂a/∂u_i ∂b/∂ξ_i`, so that `{ξ_i, u_j} = δ_ij`.
    pub fn poisson(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = Poly::zero(self.n);
        for i in 0..self.n {
            out += &(&self.partial(Var::Xi(i)) * &other.partial(Var::U(i)));
            out -= &(&self.partial(Var::U(i)) * &other.partial(Var::Xi(i)));
        }
        Ok(out)
    }

    /// Decomposition by total ξ-degree.
    pub fn grade(&self) -> GradedPoly {
        let mut components: BTreeMap<u32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            components
                .entry(e.xi_degree())
                .or_insert_with(|| Poly::zero(self.n))
                .terms
                .insert(e.clone(), c.clone());
        }
        GradedPoly {
            n: self.n,
            components,
        }
    }

    /// The ξ-degree-`d` component.
    pub fn component(&self, d: u32) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.xi_degree() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// `φ ↦ (−1)^d φ` on `A^d`.
    pub fn alpha(&self) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    if e.xi_degree() % 2 == 1 {
                        (e.clone(), -c)
                    } else {
                        (e.clone(), c.clone())
                    }
                })
                .collect(),
        }
    }

    pub fn is_xi_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Exponent::xi_degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn xi_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(Exponent::xi_degree).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn max_xi_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::xi_degree).max()
    }

    pub fn max_u_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::u_degree).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::total_degree).max()
    }

    /// True if no term involves any `ξ`.
    pub fn is_u_only(&self) -> bool {
        self.terms.keys().all(|e| e.xi_degree() == 0)
    }

    /// True if no term involves any `u`.
    pub fn is_xi_only(&self) -> bool {
        self.terms.keys().all(|e| e.u_degree() == 0)
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = Poly::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponent) -> fmt::Result {
    let n = e.n();
    let mut first = true;
    for (slot, &k) in e.as_slice().iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        let var = if slot < n { Var::U(slot) } else { Var::Xi(slot - n) };
        if k == 1 {
            write!(f, "{var}")?;
        } else {
            write!(f, "{var}^{k}")?;
        }
    }
    Ok(())
}

/// Canonical rendering: terms in descending graded-lex order, e.g. `5/3*u1^2*xi1 - xi2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[n={}]({})", self.n, self)
    }
}

/// A polynomial split into ξ-homogeneous components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly {
    n: usize,
    components: BTreeMap<u32, Poly>,
}

impl GradedPoly {
    pub fn components(&self) -> &BTreeMap<u32, Poly> {
        &self.components
    }

    pub fn get(&self, d: u32) -> Option<&Poly> {
        self.components.get(&d)
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.components.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Poly)> {
        self.components.iter().map(|(d, p)| (*d, p))
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn reassemble(&self) -> Poly {
        let mut out = Poly::zero(self.n);
        for p in self.components.values() {
            out += p;
        }
        out
    }
}
