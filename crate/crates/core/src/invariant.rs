//! The invariant bidifferential operators `Z_p` at `λ = 1/2`, the operators
//! `L^x = (2/n) Z_2(μ^x, ·)`, and the residual checks built on them.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::diffop::{BiDiffOp, DiffOp};
use crate::error::{Error, Result};
use crate::euler::{f_d, half_n, s_p, t_p, u_d, EulerRational};
use crate::lie::{momentum, LieElement};
use crate::poly::{int, rat, Exponent, Poly, Rational, Var};
use crate::quantization::c_p;

fn half() -> Rational {
    rat(1, 2)
}

/// `Z_p = Σ_{i+j+k+m=p} T_{p;m} F_m D^m ∘ N_k(U_i D^i S_{p;i} ⊗ U_j D^j S_{p;j})`.
pub fn z_p_direct(p: u32, n: usize) -> BiDiffOp {
    let tp = t_p(n, p);
    let sp = s_p(n, p);
    let inner_factor = |i: u32| -> DiffOp {
        let s_rest = s_p(n, i).inverse().mul(&sp);
        u_d(n, i)
            .to_diffop(n)
            .expect("U_i is polynomial")
            .compose(&DiffOp::divergence_pow(n, i))
            .compose(&s_rest.to_diffop(n).expect("S_p / S_i is polynomial"))
    };
    let factors: Vec<DiffOp> = (0..=p).map(inner_factor).collect();

    let mut z = BiDiffOp::zero(n);
    for m in 0..=p {
        let mut inner = BiDiffOp::zero(n);
        for k in 0..=(p - m) {
            let nk = BiDiffOp::normal_ordering(n, k);
            for i in 0..=(p - m - k) {
                let j = p - m - k - i;
                let piece = nk
                    .compose_inputs(&factors[i as usize], &factors[j as usize])
                    .expect("same dimension");
                inner = inner.add(&piece).expect("same dimension");
            }
        }
        let outer = tp
            .mul(&t_p(n, m).inverse())
            .mul(&f_d(n, m))
            .to_diffop(n)
            .expect("T_p / T_m is polynomial")
            .compose(&DiffOp::divergence_pow(n, m));
        let piece = BiDiffOp::left_compose(&outer, &inner).expect("same dimension");
        z = z.add(&piece).expect("same dimension");
    }
    z
}

/// `Z_p(a, b) = T_p C_p(S_p a, S_p b)` at `λ = 1/2`.
pub fn z_p_defining(p: u32, n: usize, a: &Poly, b: &Poly) -> Result<Poly> {
    let sp = s_p(n, p);
    let c = c_p(&half(), &sp.apply(a)?, &sp.apply(b)?, p)?;
    t_p(n, p).apply(&c)
}

/// `C_p(a, b) = T_p^{-1} Z_p(S_p^{-1} a, S_p^{-1} b)` with a prebuilt `Z_p`.
pub fn c_p_via_zp_with(z: &BiDiffOp, p: u32, a: &Poly, b: &Poly) -> Result<Poly> {
    let n = z.n();
    let inv = s_p(n, p).inverse();
    let v = z.apply(&inv.apply(a)?, &inv.apply(b)?)?;
    t_p(n, p).inverse().apply(&v)
}

pub fn c_p_via_zp(p: u32, n: usize, a: &Poly, b: &Poly) -> Result<Poly> {
    c_p_via_zp_with(&z_p_direct(p, n), p, a, b)
}

/// Smallest ξ-degree on which `c_p_via_zp` is defined for even `n`:
/// `⌊p/2⌋ − n/2 + 1`.
pub fn domain_bound(p: u32, n: usize) -> Rational {
    int((p / 2) as i64) - half_n(n) + Rational::one()
}

/// `L^x = (2/n) Z_2(μ^x, ·)` from a prebuilt `Z_2`.
pub fn l_x_with(z2: &BiDiffOp, x: &LieElement) -> DiffOp {
    let n = z2.n();
    z2.plug_left(&momentum(x).poly)
        .expect("same dimension")
        .scale(&rat(2, n as i64))
}

pub fn l_x(x: &LieElement, n: usize) -> DiffOp {
    l_x_with(&z_p_direct(2, n), x)
}

fn shifted_euler(n: usize) -> DiffOp {
    DiffOp::euler(n).add(&DiffOp::scalar(n, half_n(n)))
}

/// `L^{(m)} = −1/16 (ξ_m D − 2E′ ∂u_m) D`, `m` in `1..=n`.
pub fn l_m_closed(m: usize, n: usize) -> DiffOp {
    assert!((1..=n).contains(&m), "coordinate index out of range");
    let d = DiffOp::divergence(n);
    let xi_d = d.premultiply(&Poly::xi(n, m - 1));
    let e_du = shifted_euler(n)
        .compose(&DiffOp::partial(n, Var::U(m - 1)))
        .scale(&int(2));
    xi_d.sub(&e_du).compose(&d).scale(&rat(-1, 16))
}

/// `−1/16 · (E′(E′+1))^{-1} ξ_m D² a + 1/8 · (E′+1)^{-1} ∂u_m D a`, which
/// equals `C_2(a, ξ_m)` at `λ = 1/2`.
pub fn c2_closed_form(a: &Poly, m: usize, n: usize) -> Result<Poly> {
    if !(1..=n).contains(&m) {
        return Err(Error::Precondition(format!("coordinate index {m} outside 1..={n}")));
    }
    let e0 = EulerRational::shifted_linear(n, Rational::zero());
    let e1 = EulerRational::shifted_linear(n, Rational::one());
    let da = a.divergence();
    let first = &Poly::xi(n, m - 1) * &da.divergence();
    let first = e0.mul(&e1).inverse().apply(&first)?.scale(&rat(-1, 16));
    let second = da.partial(Var::U(m - 1));
    let second = e1.inverse().apply(&second)?.scale(&rat(1, 8));
    Ok(first + second)
}

/// `C_p(a, b) − [∏_{i=1}^{⌊p/2⌋}(E′+i)(E′−i+p−d)]^{-1} Z_p(S_p^{-1} a, b)`
/// for `a` homogeneous of ξ-degree `d`.
pub fn cor_last_check_with(z: &BiDiffOp, p: u32, a: &Poly, b: &Poly) -> Result<Poly> {
    let n = z.n();
    if n % 2 == 0 {
        return Err(Error::Precondition(format!("dimension {n} must be odd")));
    }
    let d = match a.xi_degrees().as_slice() {
        [] => 0,
        [d] => *d,
        _ => {
            return Err(Error::Precondition(format!(
                "left argument `{a}` must be xi-homogeneous"
            )))
        }
    };
    let mut roots = Vec::new();
    for i in 1..=(p / 2) {
        roots.push(int(i as i64));
        roots.push(int(p as i64 - i as i64) - int(d as i64));
    }
    let r = EulerRational::from_roots(Rational::one(), &[], &roots, half_n(n));
    let inner = z.apply(&s_p(n, p).inverse().apply(a)?, b)?;
    let rhs = r.apply(&inner)?;
    Ok(c_p(&half(), a, b, p)? - rhs)
}

pub fn cor_last_check(p: u32, n: usize, a: &Poly, b: &Poly) -> Result<Poly> {
    cor_last_check_with(&z_p_direct(p, n), p, a, b)
}

/// `{μ^x, C_p(a,b)} − C_p({μ^x,a}, b) − C_p(a, {μ^x,b})`.
pub fn equivariance_check(lambda: &Rational, p: u32, x: &LieElement, a: &Poly, b: &Poly) -> Result<Poly> {
    let mu = momentum(x).poly;
    let lhs = mu.poisson(&c_p(lambda, a, b, p)?)?;
    let r1 = c_p(lambda, &mu.poisson(a)?, b, p)?;
    let r2 = c_p(lambda, a, &mu.poisson(b)?, p)?;
    Ok(lhs - r1 - r2)
}

/// The same residual with `Z_p` in place of `C_p`.
pub fn bidiff_equivariance_check(z: &BiDiffOp, x: &LieElement, a: &Poly, b: &Poly) -> Result<Poly> {
    let mu = momentum(x).poly;
    let lhs = mu.poisson(&z.apply(a, b)?)?;
    let r1 = z.apply(&mu.poisson(a)?, b)?;
    let r2 = z.apply(a, &mu.poisson(b)?)?;
    Ok(lhs - r1 - r2)
}

/// Symbol key `[ξ.., η.., u.., ∂u..]` where `η_i` stands for `∂ξ_i`.
fn symbol_of(op: &DiffOp, order: u32) -> BTreeMap<Vec<u32>, Rational> {
    let mut out = BTreeMap::new();
    for (beta, coeff) in op.terms() {
        if beta.total_degree() != order {
            continue;
        }
        for (e, c) in coeff.terms() {
            let key: Vec<u32> = e
                .xi()
                .iter()
                .chain(beta.xi())
                .chain(e.u())
                .chain(beta.u())
                .copied()
                .collect();
            out.insert(key, c.clone());
        }
    }
    out
}

fn op_of_symbol(n: usize, sym: &BTreeMap<Vec<u32>, Rational>) -> DiffOp {
    let mut op = DiffOp::zero(n);
    for (key, c) in sym {
        let (xi, rest) = key.split_at(n);
        let (eta, rest) = rest.split_at(n);
        let (u, du) = rest.split_at(n);
        op.add_term(
            Exponent::from_parts(du, eta),
            Poly::monomial(Exponent::from_parts(u, xi), c.clone()),
        );
    }
    op
}

/// Exact division of a symbol by `Σ ξ_i η_i`, lex order with `ξ_1` largest.
fn divide_by_euler_symbol(
    n: usize,
    mut sym: BTreeMap<Vec<u32>, Rational>,
) -> Option<BTreeMap<Vec<u32>, Rational>> {
    let mut quotient = BTreeMap::new();
    while let Some((key, c)) = sym.pop_last() {
        if key[0] == 0 || key[n] == 0 {
            return None;
        }
        let mut q = key.clone();
        q[0] -= 1;
        q[n] -= 1;
        for i in 1..n {
            let mut t = q.clone();
            t[i] += 1;
            t[n + i] += 1;
            let entry = sym.entry(t.clone()).or_insert_with(Rational::zero);
            *entry -= &c;
            if entry.is_zero() {
                sym.remove(&t);
            }
        }
        quotient.insert(q, c);
    }
    Some(quotient)
}

/// Solves `(E′ + c) ∘ Q = op` exactly, or returns `None` when no such
/// differential operator `Q` exists.
pub fn left_divide_by_shifted_euler(op: &DiffOp, c: &Rational) -> Option<DiffOp> {
    let n = op.n();
    let factor = shifted_euler(n).add(&DiffOp::scalar(n, c.clone()));
    let mut rest = op.clone();
    let mut quotient = DiffOp::zero(n);
    while let Some(order) = rest.order() {
        if order == 0 {
            return None;
        }
        let q_sym = divide_by_euler_symbol(n, symbol_of(&rest, order))?;
        let q = op_of_symbol(n, &q_sym);
        rest = rest.sub(&factor.compose(&q));
        quotient = quotient.add(&q);
    }
    Some(quotient)
}
