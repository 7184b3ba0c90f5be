//! Differential and bidifferential operators with polynomial coefficients,
//! kept in normal form (coefficients left of derivatives).
//!
//! Text rendering grammar, used by the CLI:
//!
//! ```text
//! diffop   := term (" + " term)*  |  "0"
//! term     := coeff " * " deriv  |  deriv  |  coeff
//! bidiff   := biterm (" + " biterm)*  |  "0"
//! biterm   := (coeff " * ")? deriv " ⊗ " deriv
//! coeff    := poly  |  "(" poly ")"          -- parenthesised when it has several terms
//! deriv    := "1"  |  "d" order "/" ("d" var ("^" k)?)+
//! ```
//!
//! e.g. `-1/16*xi1 * d2/du1dxi1 ⊗ d/dxi1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{unit, Exponent, Poly, Rational, Var};

/// `Σ c_β(u,ξ) ∂^β`, keyed by the derivative multi-index `β`.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp {
    n: usize,
    terms: BTreeMap<Exponent, Poly>,
}

impl DiffOp {
    pub fn zero(n: usize) -> Self {
        DiffOp {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::multiplication(Poly::one(n))
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        Self::multiplication(Poly::constant(n, c))
    }

    pub fn multiplication(p: Poly) -> Self {
        let n = p.n();
        Self::term(Exponent::zero(n), p)
    }

    pub fn term(beta: Exponent, coeff: Poly) -> Self {
        let mut op = DiffOp::zero(coeff.n());
        op.add_term(beta, coeff);
        op
    }

    /// Pure derivative `∂^β`.
    pub fn derivative(beta: Exponent) -> Self {
        let n = beta.n();
        Self::term(beta, Poly::one(n))
    }

    pub fn partial(n: usize, var: Var) -> Self {
        Self::derivative(Exponent::var(n, var))
    }

    /// Fiberwise Euler field `E = Σ ξ_i ∂/∂ξ_i`.
    pub fn euler(n: usize) -> Self {
        let mut op = DiffOp::zero(n);
        for i in 0..n {
            op.add_term(Exponent::var(n, Var::Xi(i)), Poly::xi(n, i));
        }
        op
    }

    /// `D = Σ ∂²/∂u_i∂ξ_i`.
    pub fn divergence(n: usize) -> Self {
        let mut op = DiffOp::zero(n);
        for i in 0..n {
            op.add_term(Exponent::from_parts(&unit(n, i), &unit(n, i)), Poly::one(n));
        }
        op
    }

    /// `D^m` in normal form.
    pub fn divergence_pow(n: usize, m: u32) -> Self {
        let d = Self::divergence(n);
        (0..m).fold(Self::identity(n), |acc, _| acc.compose(&d))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, beta: Exponent, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(beta) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: n,
            });
        }
        Ok(())
    }

    /// Max `|β|` over stored terms; `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::total_degree).max()
    }

    /// Max total degree of the coefficient polynomials.
    pub fn coefficient_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(Poly::total_degree).max()
    }

    /// Terms of maximal order.
    pub fn principal_part(&self) -> DiffOp {
        let mut out = DiffOp::zero(self.n);
        if let Some(ord) = self.order() {
            for (b, c) in &self.terms {
                if b.total_degree() == ord {
                    out.terms.insert(b.clone(), c.clone());
                }
            }
        }
        out
    }

    pub fn apply(&self, a: &Poly) -> Result<Poly> {
        self.check_dim(a.n())?;
        let mut out = Poly::zero(self.n);
        for (beta, c) in &self.terms {
            let d = a.derivative(beta);
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        Ok(out)
    }

    /// Normal form of `self ∘ other`, reordering via Leibniz.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = DiffOp::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                for gamma in a.divisors() {
                    let dd = d.derivative(&gamma);
                    if dd.is_zero() {
                        continue;
                    }
                    let k = Rational::from_integer(a.binomial(&gamma));
                    let rest = a.checked_sub(&gamma).unwrap().add(b);
                    out.add_term(rest, (c * &dd).scale(&k));
                }
            }
        }
        out
    }

    pub fn checked_compose(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_dim(other.n)?;
        Ok(self.compose(other))
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        let mut out = DiffOp::zero(self.n);
        for (b, p) in &self.terms {
            out.add_term(b.clone(), p.scale(c));
        }
        out
    }

    /// Left multiplication by a polynomial.
    pub fn premultiply(&self, p: &Poly) -> DiffOp {
        let mut out = DiffOp::zero(self.n);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), p * c);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(b, c)| {
                json!({
                    "coeff": c.to_string(),
                    "deriv": deriv_string(b),
                    "u": b.u(),
                    "xi": b.xi(),
                })
            })
            .collect();
        json!({
            "n": self.n,
            "order": self.order(),
            "coefficient_degree": self.coefficient_degree(),
            "terms": terms,
        })
    }
}

pub(crate) fn deriv_string(b: &Exponent) -> String {
    let ord = b.total_degree();
    if ord == 0 {
        return "1".to_string();
    }
    let mut s = if ord == 1 {
        "d/".to_string()
    } else {
        format!("d{ord}/")
    };
    let n = b.n();
    for (slot, &k) in b.as_slice().iter().enumerate() {
        if k == 0 {
            continue;
        }
        let var = if slot < n { Var::U(slot) } else { Var::Xi(slot - n) };
        if k == 1 {
            s.push_str(&format!("d{var}"));
        } else {
            s.push_str(&format!("d{var}^{k}"));
        }
    }
    s
}

fn coeff_string(c: &Poly) -> String {
    if c.len() > 1 {
        format!("({c})")
    } else {
        c.to_string()
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(b, c)| {
                if b.is_zero() {
                    coeff_string(c)
                } else if c.as_constant().is_some_and(|k| k.is_one()) {
                    deriv_string(b)
                } else {
                    format!("{} * {}", coeff_string(c), deriv_string(b))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp[n={}]({})", self.n, self)
    }
}

/// `(φ,ψ) ↦ Σ c(u,ξ) (∂^a φ)(∂^b ψ)`, keyed by `(a, b)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiDiffOp {
    n: usize,
    terms: BTreeMap<(Exponent, Exponent), Poly>,
}

impl BiDiffOp {
    pub fn zero(n: usize) -> Self {
        BiDiffOp {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Plain multiplication `(φ,ψ) ↦ φψ`.
    pub fn product(n: usize) -> Self {
        let mut b = Self::zero(n);
        b.add_term(Exponent::zero(n), Exponent::zero(n), Poly::one(n));
        b
    }

    /// The Poisson bracket as a bidifferential operator.
    pub fn poisson(n: usize) -> Self {
        let mut b = Self::zero(n);
        for i in 0..n {
            let u = Exponent::var(n, Var::U(i));
            let xi = Exponent::var(n, Var::Xi(i));
            b.add_term(xi.clone(), u.clone(), Poly::one(n));
            b.add_term(u, xi, -Poly::one(n));
        }
        b
    }

    /// Normal-ordering coefficient `N_k(φ,ψ) = Σ_{|β|=k} (1/β!) ∂_ξ^β φ ∂_u^β ψ`.
    pub fn normal_ordering(n: usize, k: u32) -> Self {
        let mut b = Self::zero(n);
        for beta in Exponent::all_up_to(n, k)
            .into_iter()
            .filter(|e| e.total_degree() == k && e.u().iter().all(|&x| x == 0))
        {
            let xi = beta.xi().to_vec();
            let zeros = vec![0; n];
            let left = Exponent::from_parts(&zeros, &xi);
            let right = Exponent::from_parts(&xi, &zeros);
            let inv = Rational::new(BigInt::one(), left.factorial());
            b.add_term(left, right, Poly::constant(n, inv));
        }
        b
    }

    /// `(φ,ψ) ↦ (fφ)(gψ)`.
    pub fn tensor(f: &DiffOp, g: &DiffOp) -> Result<Self> {
        f.check_dim(g.n)?;
        let mut b = Self::zero(f.n);
        for (a, c) in &f.terms {
            for (bb, d) in &g.terms {
                b.add_term(a.clone(), bb.clone(), c * d);
            }
        }
        Ok(b)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(Exponent, Exponent), Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: Exponent, right: Exponent, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((left, right)) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: n,
            });
        }
        Ok(())
    }

    /// Max `|a| + |b|`.
    pub fn order(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|(a, b)| a.total_degree() + b.total_degree())
            .max()
    }

    pub fn left_order(&self) -> Option<u32> {
        self.terms.keys().map(|(a, _)| a.total_degree()).max()
    }

    pub fn right_order(&self) -> Option<u32> {
        self.terms.keys().map(|(_, b)| b.total_degree()).max()
    }

    pub fn coefficient_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(Poly::total_degree).max()
    }

    pub fn apply(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.check_dim(a.n())?;
        self.check_dim(b.n())?;
        let mut left_cache: BTreeMap<&Exponent, Poly> = BTreeMap::new();
        let mut right_cache: BTreeMap<&Exponent, Poly> = BTreeMap::new();
        let mut out = Poly::zero(self.n);
        for ((l, r), c) in &self.terms {
            let da = left_cache.entry(l).or_insert_with(|| a.derivative(l));
            if da.is_zero() {
                continue;
            }
            let db = right_cache.entry(r).or_insert_with(|| b.derivative(r));
            if db.is_zero() {
                continue;
            }
            out += &(&(c * da) * db);
        }
        Ok(out)
    }

    pub fn add(&self, other: &BiDiffOp) -> Result<BiDiffOp> {
        self.check_dim(other.n)?;
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BiDiffOp) -> Result<BiDiffOp> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> BiDiffOp {
        let mut out = BiDiffOp::zero(self.n);
        for ((l, r), p) in &self.terms {
            out.add_term(l.clone(), r.clone(), p.scale(c));
        }
        out
    }

    /// Normal form of `(φ,ψ) ↦ f(B(φ,ψ))`, pushing each derivative of `f`
    /// through the product by the Leibniz coproduct.
    pub fn left_compose(f: &DiffOp, b: &BiDiffOp) -> Result<BiDiffOp> {
        f.check_dim(b.n)?;
        let mut out = BiDiffOp::zero(b.n);
        for (gamma, cf) in &f.terms {
            for ((l, r), c) in &b.terms {
                for g1 in gamma.divisors() {
                    let dc = c.derivative(&g1);
                    if dc.is_zero() {
                        continue;
                    }
                    let rest = gamma.checked_sub(&g1).unwrap();
                    let k1 = gamma.binomial(&g1);
                    let coeff = cf * &dc;
                    for g2 in rest.divisors() {
                        let g3 = rest.checked_sub(&g2).unwrap();
                        let k = Rational::from_integer(&k1 * rest.binomial(&g2));
                        out.add_term(l.add(&g2), r.add(&g3), coeff.scale(&k));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Normal form of `(φ,ψ) ↦ B(fφ, gψ)`.
    pub fn compose_inputs(&self, f: &DiffOp, g: &DiffOp) -> Result<BiDiffOp> {
        self.check_dim(f.n)?;
        self.check_dim(g.n)?;
        let mut left_cache: BTreeMap<&Exponent, DiffOp> = BTreeMap::new();
        let mut right_cache: BTreeMap<&Exponent, DiffOp> = BTreeMap::new();
        let mut out = BiDiffOp::zero(self.n);
        for ((l, r), c) in &self.terms {
            let lf = left_cache
                .entry(l)
                .or_insert_with(|| DiffOp::derivative(l.clone()).compose(f));
            let rg = right_cache
                .entry(r)
                .or_insert_with(|| DiffOp::derivative(r.clone()).compose(g));
            for (a, ca) in &lf.terms {
                let cca = c * ca;
                for (bb, cb) in &rg.terms {
                    out.add_term(a.clone(), bb.clone(), &cca * cb);
                }
            }
        }
        Ok(out)
    }

    /// The differential operator `ψ ↦ B(φ, ψ)`.
    pub fn plug_left(&self, a: &Poly) -> Result<DiffOp> {
        self.check_dim(a.n())?;
        let mut out = DiffOp::zero(self.n);
        for ((l, r), c) in &self.terms {
            let da = a.derivative(l);
            if !da.is_zero() {
                out.add_term(r.clone(), c * &da);
            }
        }
        Ok(out)
    }

    /// The differential operator `φ ↦ B(φ, ψ)`.
    pub fn plug_right(&self, b: &Poly) -> Result<DiffOp> {
        self.check_dim(b.n())?;
        let mut out = DiffOp::zero(self.n);
        for ((l, r), c) in &self.terms {
            let db = b.derivative(r);
            if !db.is_zero() {
                out.add_term(l.clone(), c * &db);
            }
        }
        Ok(out)
    }

    /// `(φ,ψ) ↦ B(ψ,φ)`.
    pub fn swap(&self) -> BiDiffOp {
        let mut out = BiDiffOp::zero(self.n);
        for ((l, r), c) in &self.terms {
            out.add_term(r.clone(), l.clone(), c.clone());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|((l, r), c)| {
                json!({
                    "coeff": c.to_string(),
                    "left": deriv_string(l),
                    "right": deriv_string(r),
                    "left_u": l.u(), "left_xi": l.xi(),
                    "right_u": r.u(), "right_xi": r.xi(),
                })
            })
            .collect();
        json!({
            "n": self.n,
            "order": self.order(),
            "left_order": self.left_order(),
            "right_order": self.right_order(),
            "coefficient_degree": self.coefficient_degree(),
            "terms": terms,
        })
    }
}

impl fmt::Display for BiDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|((l, r), c)| {
                let d = format!("{} ⊗ {}", deriv_string(l), deriv_string(r));
                if c.as_constant().is_some_and(|k| k.is_one()) {
                    d
                } else {
                    format!("{} * {d}", coeff_string(c))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for BiDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiDiffOp[n={}]({})", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn u(n: usize, i: usize) -> Poly {
        Poly::u(n, i)
    }
    fn xi(n: usize, i: usize) -> Poly {
        Poly::xi(n, i)
    }

    #[test]
    fn apply_examples() {
        let d = DiffOp::divergence(1);
        assert_eq!(d.apply(&(&u(1, 0) * &xi(1, 0))).unwrap(), Poly::one(1));

        let p = &(&u(2, 0) * &xi(2, 0)) * &xi(2, 1).pow(2);
        assert_eq!(DiffOp::euler(2).apply(&p).unwrap(), p.scale(&int(3)));

        let op = DiffOp::partial(1, Var::U(0)).compose(&DiffOp::partial(1, Var::Xi(0)));
        assert!(op.apply(&xi(1, 0).pow(2)).unwrap().is_zero());

        assert!(DiffOp::euler(1).apply(&Poly::u(2, 0)).is_err());
    }

    #[test]
    fn compose_leibniz() {
        let du = DiffOp::partial(1, Var::U(0));
        let mu = DiffOp::multiplication(u(1, 0));
        let expected = DiffOp::term(Exponent::var(1, Var::U(0)), u(1, 0)).add(&DiffOp::identity(1));
        assert_eq!(du.compose(&mu), expected);

        let e = DiffOp::euler(2);
        let d = DiffOp::divergence(2);
        assert_eq!(e.compose(&d).sub(&d.compose(&e)), d.scale(&int(-1)));

        assert_eq!(e.compose(&DiffOp::identity(2)), e);
    }

    #[test]
    fn euler_and_divergence() {
        assert_eq!(
            DiffOp::euler(1).apply(&xi(1, 0).pow(3)).unwrap(),
            xi(1, 0).pow(3).scale(&int(3))
        );
        assert!(DiffOp::euler(2).apply(&u(2, 0).pow(5)).unwrap().is_zero());
        let p = &(&xi(3, 0) * &xi(3, 1)) * &xi(3, 2);
        assert_eq!(DiffOp::euler(3).apply(&p).unwrap(), p.scale(&int(3)));

        let q = &u(1, 0).pow(2) * &xi(1, 0).pow(2);
        assert_eq!(
            DiffOp::divergence(1).apply(&q).unwrap(),
            (&u(1, 0) * &xi(1, 0)).scale(&int(4))
        );
        assert!(DiffOp::divergence(2)
            .apply(&(&u(2, 0) * &xi(2, 1)))
            .unwrap()
            .is_zero());
        assert!(DiffOp::divergence(1).apply(&xi(1, 0).pow(4)).unwrap().is_zero());
    }

    #[test]
    fn normal_ordering_examples() {
        let n1 = BiDiffOp::normal_ordering(1, 1);
        assert_eq!(
            n1.apply(&xi(1, 0).pow(2), &u(1, 0)).unwrap(),
            xi(1, 0).scale(&int(2))
        );
        assert!(n1.apply(&u(1, 0), &xi(1, 0)).unwrap().is_zero());
        let n2 = BiDiffOp::normal_ordering(1, 2);
        assert_eq!(
            n2.apply(&xi(1, 0).pow(2), &u(1, 0).pow(2)).unwrap(),
            Poly::constant(1, int(2))
        );
        assert_eq!(BiDiffOp::normal_ordering(2, 0), BiDiffOp::product(2));
        // 1/2! Σ_{α∈{1,2}²} has 3 distinct multi-indices at n = 2
        assert_eq!(BiDiffOp::normal_ordering(2, 2).terms().len(), 3);
    }

    #[test]
    fn tensor_and_apply() {
        let t = BiDiffOp::tensor(&DiffOp::divergence(1), &DiffOp::identity(1)).unwrap();
        assert_eq!(t.apply(&(&u(1, 0) * &xi(1, 0)), &xi(1, 0)).unwrap(), xi(1, 0));

        let prod = BiDiffOp::tensor(&DiffOp::identity(1), &DiffOp::identity(1)).unwrap();
        let a = &u(1, 0) + &xi(1, 0).pow(2);
        let b = &u(1, 0) * &xi(1, 0);
        assert_eq!(prod.apply(&a, &b).unwrap(), &a * &b);

        let a = &(&u(1, 0).pow(2) * &xi(1, 0)) + &u(1, 0);
        assert!(BiDiffOp::normal_ordering(1, 1)
            .apply(&a, &xi(1, 0))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn left_compose_examples() {
        let b = BiDiffOp::poisson(2);
        assert_eq!(BiDiffOp::left_compose(&DiffOp::identity(2), &b).unwrap(), b);

        let lc = BiDiffOp::left_compose(&DiffOp::partial(1, Var::U(0)), &BiDiffOp::product(1)).unwrap();
        assert_eq!(lc.apply(&u(1, 0), &u(1, 0)).unwrap(), u(1, 0).scale(&int(2)));

        let lc = BiDiffOp::left_compose(&DiffOp::divergence(1), &BiDiffOp::normal_ordering(1, 0)).unwrap();
        assert_eq!(
            lc.apply(&(&u(1, 0) * &xi(1, 0)), &Poly::one(1)).unwrap(),
            Poly::one(1)
        );
    }

    #[test]
    fn compose_inputs_matches_pointwise() {
        let b = BiDiffOp::normal_ordering(1, 1);
        let f = DiffOp::euler(1).add(&DiffOp::scalar(1, rat(1, 2)));
        let g = DiffOp::divergence(1);
        let c = b.compose_inputs(&f, &g).unwrap();
        let a = &u(1, 0).pow(2) * &xi(1, 0).pow(3);
        let bb = &u(1, 0).pow(3) * &xi(1, 0);
        assert_eq!(
            c.apply(&a, &bb).unwrap(),
            b.apply(&f.apply(&a).unwrap(), &g.apply(&bb).unwrap()).unwrap()
        );
    }

    #[test]
    fn rendering() {
        let d = DiffOp::divergence(1).premultiply(&xi(1, 0).scale(&rat(-1, 16)));
        assert_eq!(d.to_string(), "-1/16*xi1 * d2/du1dxi1");
        let b = BiDiffOp::tensor(&d, &DiffOp::partial(1, Var::Xi(0))).unwrap();
        assert_eq!(b.to_string(), "-1/16*xi1 * d2/du1dxi1 ⊗ d/dxi1");
        assert_eq!(
            DiffOp::derivative(Exponent::from_parts(&[2], &[1])).to_string(),
            "d3/du1^2dxi1"
        );
        assert_eq!(DiffOp::zero(1).to_string(), "0");
        assert_eq!(BiDiffOp::product(1).to_string(), "1 ⊗ 1");
    }

    #[test]
    fn order_and_degree() {
        let l = DiffOp::euler(2).compose(&DiffOp::divergence(2));
        assert_eq!(l.order(), Some(3));
        assert_eq!(l.coefficient_degree(), Some(1));
        assert_eq!(BiDiffOp::poisson(3).order(), Some(2));
        assert_eq!(DiffOp::zero(1).order(), None);
    }
}
