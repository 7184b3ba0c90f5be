//! Named verification suites over seeded random cases, with JSON and text
//! reports. Cases are generated sequentially from the seed and evaluated in
//! parallel; failures are collected in case order.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::diffop::{BiDiffOp, DiffOp};
use crate::error::{Error, Result};
use crate::euler::EulerRational;
use crate::extract::{extract_or_witness, ExtractBounds};
use crate::invariant::{
    bidiff_equivariance_check, c2_closed_form, c_p_via_zp_with, cor_last_check_with, domain_bound, l_m_closed,
    l_x_with, left_divide_by_shifted_euler, z_p_defining, z_p_direct,
};
use crate::lie::{check_homomorphism, momentum, LieElement, MOMENTUM_BRACKET_SIGN};
use crate::poly::{int, rat, Exponent, Poly, Rational};
use crate::quantization::{associativity_residual, bg, bh, c_p, special_value, star};
use crate::sample::{
    case_rng, random_basis_element, random_coefficient, random_homogeneous, random_momentum_product, random_poly,
    random_u_poly, random_xi_poly,
};

pub const SUITES: &[&str] = &[
    "parity",
    "duality",
    "inverse",
    "prop4",
    "cor4-witness",
    "zp-consistency",
    "c2-closed",
    "lx-order",
    "cor-last",
    "equivariance",
    "lie-homomorphism",
    "n-even-domain",
    "parity-on-R",
    "associativity",
];

const MAX_TERMS: usize = 3;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub n: usize,
    pub lambda: Rational,
    /// Largest coefficient index `p` exercised.
    pub p: u32,
    pub max_degree: u32,
    pub seed: u64,
    /// Number of random cases for suites that sample.
    pub cases: usize,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n: 1,
            lambda: rat(1, 2),
            p: 3,
            max_degree: 4,
            seed: 0,
            cases: 64,
            jobs: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub case: usize,
    pub check: String,
    pub inputs: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

impl Failure {
    pub fn to_json(&self) -> Value {
        let mut inputs = Map::new();
        for (k, v) in &self.inputs {
            inputs.insert(k.clone(), Value::String(v.clone()));
        }
        json!({
            "case": self.case,
            "check": self.check,
            "inputs": inputs,
            "lhs": self.lhs,
            "rhs": self.rhs,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub suite: String,
    pub n: usize,
    pub lambda: Rational,
    pub p: u32,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub status: Status,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "n": self.n,
            "lambda": self.lambda.to_string(),
            "p": self.p,
            "seed": self.seed,
            "cases": self.cases,
            "failures": self.failures.iter().map(Failure::to_json).collect::<Vec<_>>(),
            "notes": self.notes,
            "status": self.status.as_str(),
            "elapsed_ms": self.elapsed_ms,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "suite {} (n={}, lambda={}, p={}, seed={}): {} cases, {} failures, {} [{} ms]\n",
            self.suite,
            self.n,
            self.lambda,
            self.p,
            self.seed,
            self.cases,
            self.failures.len(),
            self.status.as_str(),
            self.elapsed_ms
        );
        for note in &self.notes {
            s.push_str(&format!("  note: {note}\n"));
        }
        for f in &self.failures {
            s.push_str(&format!("  FAIL case {} [{}]\n", f.case, f.check));
            for (k, v) in &f.inputs {
                s.push_str(&format!("    {k} = {v}\n"));
            }
            s.push_str(&format!("    lhs = {}\n    rhs = {}\n", f.lhs, f.rhs));
        }
        s
    }
}

struct Outcome {
    cases: usize,
    failures: Vec<Failure>,
    notes: Vec<String>,
}

type Inputs = Vec<(String, String)>;

fn inputs(pairs: &[(&str, &dyn std::fmt::Display)]) -> Inputs {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn render(r: &Result<Poly>) -> String {
    match r {
        Ok(p) => p.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn compare(case: usize, inputs: &Inputs, check: String, lhs: Result<Poly>, rhs: Result<Poly>) -> Option<Failure> {
    match (&lhs, &rhs) {
        (Ok(a), Ok(b)) if a == b => None,
        _ => Some(Failure {
            case,
            check,
            inputs: inputs.clone(),
            lhs: render(&lhs),
            rhs: render(&rhs),
        }),
    }
}

fn expect_zero(case: usize, inputs: &Inputs, check: String, residual: Result<Poly>) -> Option<Failure> {
    match &residual {
        Ok(r) if r.is_zero() => None,
        _ => Some(Failure {
            case,
            check,
            inputs: inputs.clone(),
            lhs: render(&residual),
            rhs: "0".into(),
        }),
    }
}

fn run_cases<T, F>(items: &[T], f: F) -> Vec<Failure>
where
    T: Sync,
    F: Fn(usize, &T) -> Vec<Failure> + Sync,
{
    items
        .par_iter()
        .enumerate()
        .map(|(i, t)| f(i, t))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn sign(p: u32) -> Rational {
    if p % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn random_pairs(cfg: &SuiteConfig) -> Vec<(Poly, Poly)> {
    (0..cfg.cases)
        .map(|i| {
            let mut rng = case_rng(cfg.seed, i as u64);
            (
                random_poly(&mut rng, cfg.n, cfg.max_degree, MAX_TERMS),
                random_poly(&mut rng, cfg.n, cfg.max_degree, MAX_TERMS),
            )
        })
        .collect()
}

fn parity_cases(cfg: &SuiteConfig, pairs: Vec<(Poly, Poly)>) -> Outcome {
    let lambda = &cfg.lambda;
    let failures = run_cases(&pairs, |case, (a, b)| {
        let inp = inputs(&[("phi", a), ("psi", b)]);
        let (sa, sb) = match (star(lambda, a, b), star(lambda, b, a)) {
            (Ok(x), Ok(y)) => (x, y),
            (x, y) => {
                let err = x.err().or(y.err()).unwrap();
                return vec![Failure {
                    case,
                    check: "star".into(),
                    inputs: inp,
                    lhs: format!("error: {err}"),
                    rhs: String::new(),
                }];
            }
        };
        (0..=cfg.p)
            .filter_map(|p| {
                compare(
                    case,
                    &inp,
                    format!("C_{p}(phi,psi) = (-1)^{p} C_{p}(psi,phi)"),
                    Ok(sa.coefficient(p)),
                    Ok(sb.coefficient(p).scale(&sign(p))),
                )
            })
            .collect()
    });
    Outcome {
        cases: pairs.len(),
        failures,
        notes: Vec::new(),
    }
}

fn parity(cfg: &SuiteConfig) -> Result<Outcome> {
    let n = cfg.n;
    let mut pairs = vec![(Poly::u(n, 0), Poly::xi(n, 0))];
    pairs.extend(random_pairs(cfg));
    let mut out = parity_cases(cfg, pairs);
    let c1 = c_p(&cfg.lambda, &Poly::u(n, 0), &Poly::xi(n, 0), 1)?;
    let c1_swapped = c_p(&cfg.lambda, &Poly::xi(n, 0), &Poly::u(n, 0), 1)?;
    out.notes.push(format!(
        "C_1(u1, xi1) = {c1}, C_1(xi1, u1) = {c1_swapped}, {{u1, xi1}} = {}",
        Poly::u(n, 0).poisson(&Poly::xi(n, 0))?
    ));
    Ok(out)
}

fn duality(cfg: &SuiteConfig) -> Result<Outcome> {
    let pairs = random_pairs(cfg);
    let dual = Rational::one() - &cfg.lambda;
    let failures = run_cases(&pairs, |case, (a, b)| {
        let inp = inputs(&[("phi", a), ("psi", b)]);
        let sa = star(&cfg.lambda, a, b);
        let sb = star(&dual, b, a);
        match (sa, sb) {
            (Ok(sa), Ok(sb)) => (0..=cfg.p)
                .filter_map(|p| {
                    compare(
                        case,
                        &inp,
                        format!("C_{p}^lambda(phi,psi) = (-1)^{p} C_{p}^(1-lambda)(psi,phi)"),
                        Ok(sa.coefficient(p)),
                        Ok(sb.coefficient(p).scale(&sign(p))),
                    )
                })
                .collect(),
            (x, y) => vec![Failure {
                case,
                check: "star".into(),
                inputs: inp,
                lhs: format!("{:?}", x.err()),
                rhs: format!("{:?}", y.err()),
            }],
        }
    });
    Ok(Outcome {
        cases: pairs.len(),
        failures,
        notes: Vec::new(),
    })
}

fn inverse(cfg: &SuiteConfig) -> Result<Outcome> {
    let symbols: Vec<Poly> = (0..cfg.cases)
        .map(|i| random_poly(&mut case_rng(cfg.seed, i as u64), cfg.n, cfg.max_degree, MAX_TERMS))
        .collect();
    let l = &cfg.lambda;
    let failures = run_cases(&symbols, |case, a| {
        let inp = inputs(&[("phi", a)]);
        [
            compare(case, &inp, "b_g(b_h(phi)) = phi".into(), Ok(bg(l, &bh(l, a))), Ok(a.clone())),
            compare(case, &inp, "b_h(b_g(phi)) = phi".into(), Ok(bh(l, &bg(l, a))), Ok(a.clone())),
        ]
        .into_iter()
        .flatten()
        .collect()
    });
    Ok(Outcome {
        cases: symbols.len(),
        failures,
        notes: Vec::new(),
    })
}

fn split_product(cfg: &SuiteConfig) -> Result<Outcome> {
    let pairs: Vec<(Poly, Poly)> = (0..cfg.cases)
        .map(|i| {
            let mut rng = case_rng(cfg.seed, i as u64);
            (
                random_u_poly(&mut rng, cfg.n, cfg.max_degree, MAX_TERMS),
                random_xi_poly(&mut rng, cfg.n, cfg.max_degree, MAX_TERMS),
            )
        })
        .collect();
    let l = &cfg.lambda;
    let failures = run_cases(&pairs, |case, (a, b)| {
        let inp = inputs(&[("phi", a), ("psi", b)]);
        let lhs = star(l, a, b).map(|s| s.coefficients.values().fold(Poly::zero(cfg.n), |acc, c| acc + c.clone()));
        compare(case, &inp, "phi * psi = b_g(phi psi)".into(), lhs, special_value(l, a, b))
            .into_iter()
            .collect()
    });
    Ok(Outcome {
        cases: pairs.len(),
        failures,
        notes: Vec::new(),
    })
}

fn bidifferential_witnesses(cfg: &SuiteConfig) -> Result<Outcome> {
    let n = cfg.n;
    let exceptional = |p: u32| p == 1 && cfg.lambda == rat(1, 2);
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for p in 1..=cfg.p {
        let mut bounds = ExtractBounds::new(p + 2, 2 * p + 2);
        bounds.seed ^= cfg.seed;
        let lambda = cfg.lambda.clone();
        let result = extract_or_witness(n, move |a, b| c_p(&lambda, a, b, p), &bounds)?;
        let inp = vec![("p".to_string(), p.to_string())];
        let case = (p - 1) as usize;
        match (exceptional(p), result) {
            (true, Ok(op)) => {
                let half_poisson = BiDiffOp::poisson(n).scale(&rat(1, 2));
                notes.push(format!("p={p}: bidifferential, {op}"));
                if op != half_poisson {
                    failures.push(Failure {
                        case,
                        check: "extracted operator is half the Poisson bracket".into(),
                        inputs: inp,
                        lhs: op.to_string(),
                        rhs: half_poisson.to_string(),
                    });
                }
            }
            (true, Err(w)) => failures.push(Failure {
                case,
                check: "extracted operator is half the Poisson bracket".into(),
                inputs: inp,
                lhs: format!("witness: {w}"),
                rhs: BiDiffOp::poisson(n).scale(&rat(1, 2)).to_string(),
            }),
            (false, Err(w)) => notes.push(format!("p={p}: witness {w}")),
            (false, Ok(op)) => failures.push(Failure {
                case,
                check: "C_p is not bidifferential".into(),
                inputs: inp,
                lhs: op.to_string(),
                rhs: "a non-bidifferential witness".into(),
            }),
        }
    }
    Ok(Outcome {
        cases: cfg.p as usize,
        failures,
        notes,
    })
}

fn zp_consistency(cfg: &SuiteConfig) -> Result<Outcome> {
    let n = cfg.n;
    let zs: Vec<BiDiffOp> = (1..=cfg.p).map(|p| z_p_direct(p, n)).collect();
    let mut notes = Vec::new();
    for (i, z) in zs.iter().enumerate() {
        let p = i + 1;
        notes.push(format!(
            "Z_{p}: {} terms, order {}, coefficient degree {}, Poisson bracket power order (2p) {}",
            z.terms().len(),
            z.order().map_or("-".into(), |o| o.to_string()),
            z.coefficient_degree().map_or("-".into(), |o| o.to_string()),
            2 * p
        ));
    }
    let cases: Vec<(Poly, Poly, LieElement)> = (0..cfg.cases)
        .map(|i| {
            let mut rng = case_rng(cfg.seed, i as u64);
            let a = random_poly(&mut rng, n, cfg.max_degree, MAX_TERMS);
            let b = random_poly(&mut rng, n, cfg.max_degree, MAX_TERMS);
            (a, b, random_basis_element(&mut rng, n))
        })
        .collect();
    let half = rat(1, 2);
    let failures = run_cases(&cases, |case, (a, b, x)| {
        let inp = inputs(&[("phi", a), ("psi", b), ("x", x)]);
        let mut out = Vec::new();
        for (i, z) in zs.iter().enumerate() {
            let p = i as u32 + 1;
            out.extend(compare(
                case,
                &inp,
                format!("Z_{p} direct = Z_{p} defining"),
                z.apply(a, b),
                z_p_defining(p, n, a, b),
            ));
            if n % 2 == 1 {
                out.extend(compare(
                    case,
                    &inp,
                    format!("C_{p} via Z_{p} = C_{p}"),
                    c_p_via_zp_with(z, p, a, b),
                    c_p(&half, a, b, p),
                ));
            }
            out.extend(expect_zero(
                case,
                &inp,
                format!("Z_{p} is invariant under x"),
                bidiff_equivariance_check(z, x, a, b),
            ));
        }
        out
    });
    Ok(Outcome {
        cases: cases.len(),
        failures,
        notes,
    })
}

fn c2_closed(cfg: &SuiteConfig) -> Result<Outcome> {
    let n = cfg.n;
    let half = rat(1, 2);
    let monomials: Vec<Poly> = Exponent::all_up_to(n, cfg.max_degree)
        .into_iter()
        .map(|e| Poly::monomial(e, Rational::one()))
        .collect();
    let mut failures = run_cases(&monomials, |case, a| {
        let inp = inputs(&[("phi", a)]);
        (1..=n)
            .filter_map(|m| {
                compare(
                    case,
                    &inp,
                    format!("closed form = C_2(phi, xi{m})"),
                    c2_closed_form(a, m, n),
                    c_p(&half, a, &Poly::xi(n, m - 1), 2),
                )
            })
            .collect()
    });
    let mut cases = monomials.len();
    if n == 1 {
        let a = &Poly::u(1, 0).pow(2) * &Poly::xi(1, 0);
        let inp = inputs(&[("phi", &a), ("psi", &Poly::xi(1, 0))]);
        failures.extend(compare(
            cases,
            &inp,
            "C_2(u1^2*xi1, xi1) = 1/6".into(),
            c_p(&half, &a, &Poly::xi(1, 0), 2),
            Ok(Poly::constant(1, rat(1, 6))),
        ));
        cases += 1;
    }
    Ok(Outcome {
        cases,
        failures,
        notes: Vec::new(),
    })
}

fn op_failure(case: usize, check: &str, inp: Inputs, lhs: &DiffOp, rhs: &DiffOp) -> Option<Failure> {
    (lhs != rhs).then(|| Failure {
        case,
        check: check.into(),
        inputs: inp,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

fn lx_order(cfg: &SuiteConfig) -> Result<Outcome> {
    let n = cfg.n;
    let z2 = z_p_direct(2, n);
    let basis = LieElement::sl_basis(n);
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let mut case = 0usize;

    let ops: Vec<DiffOp> = basis.par_iter().map(|x| l_x_with(&z2, x)).collect();
    for (x, op) in basis.iter().zip(&ops) {
        if op.order() != Some(4) {
            failures.push(Failure {
                case,
                check: "order of L^x is 4".into(),
                inputs: inputs(&[("x", x)]),
                lhs: format!("{:?}", op.order()),
                rhs: "Some(4)".into(),
            });
        }
        case += 1;
    }
    notes.push(format!("orders of L^x over the basis: {:?}", ops.iter().map(DiffOp::order).collect::<Vec<_>>()));

    for m in 1..=n {
        let x = LieElement::unit(n, m, 0);
        let op = l_x_with(&z2, &x);
        failures.extend(op_failure(case, "L^x of a translation matches the closed form", inputs(&[("x", &x)]), &op, &l_m_closed(m, n)));
        case += 1;
    }

    let mut rng = case_rng(cfg.seed, 0);
    for w in basis.windows(2) {
        let (s, t) = (random_coefficient(&mut rng), random_coefficient(&mut rng));
        let combo = w[0].scale(&s).add(&w[1].scale(&t));
        let lhs = l_x_with(&z2, &combo);
        let rhs = l_x_with(&z2, &w[0]).scale(&s).add(&l_x_with(&z2, &w[1]).scale(&t));
        failures.extend(op_failure(case, "L^x is linear in x", inputs(&[("x", &combo)]), &lhs, &rhs));
        case += 1;
    }

    let e0 = EulerRational::shifted_linear(n, Rational::zero());
    let e1 = EulerRational::shifted_linear(n, Rational::one());
    let scalar = e0.mul(&e1).inverse();
    let samples: Vec<(LieElement, Poly)> = (0..cfg.cases)
        .map(|i| {
            let mut rng = case_rng(cfg.seed, 1 + i as u64);
            (
                random_basis_element(&mut rng, n),
                random_poly(&mut rng, n, cfg.max_degree, MAX_TERMS),
            )
        })
        .collect();
    let half = rat(1, 2);
    let base = case;
    failures.extend(run_cases(&samples, |i, (x, psi)| {
        let inp = inputs(&[("x", x), ("psi", psi)]);
        let mu = momentum(x).poly;
        let lhs = c_p(&half, &mu, psi, 2);
        let rhs = l_x_with(&z2, x).apply(psi).and_then(|v| scalar.apply(&v));
        compare(base + i, &inp, "C_2(mu^x, psi) = (E'(E'+1))^-1 L^x psi".into(), lhs, rhs)
            .into_iter()
            .collect()
    }));
    case += samples.len();

    let probes = [int(0), int(1), int(-1), int(2), rat(1, 2), rat(-1, 2), rat(3, 2), rat(1, 3), rat(-5, 2)];
    let l1 = l_m_closed(1, n);
    for c in &probes {
        let quotient = left_divide_by_shifted_euler(&l1, c);
        let expected_factor = n == 1 && *c == rat(1, 2);
        let inp = vec![("c".to_string(), c.to_string())];
        match (expected_factor, quotient) {
            (true, Some(q)) => {
                let target = DiffOp::derivative(Exponent::from_parts(&[2], &[1])).scale(&rat(1, 16));
                notes.push(format!("L^(1) = (E'+1/2) o ({q})"));
                failures.extend(op_failure(case, "quotient by E'+1/2", inp, &q, &target));
            }
            (true, None) => failures.push(Failure {
                case,
                check: "E'+1/2 is a left factor at n=1".into(),
                inputs: inp,
                lhs: "not divisible".into(),
                rhs: "divisible".into(),
            }),
            (false, Some(q)) => failures.push(Failure {
                case,
                check: "no left factor E'+c".into(),
                inputs: inp,
                lhs: format!("quotient {q}"),
                rhs: "not divisible".into(),
            }),
            (false, None) => {}
        }
        case += 1;
    }
    Ok(Outcome {
        cases: case,
        failures,
        notes,
    })
}

fn cor_last(cfg: &SuiteConfig) -> Result<Outcome> {
    let n = cfg.n;
    if n % 2 == 0 {
        return Err(Error::Precondition(format!("cor-last needs odd n, got {n}")));
    }
    let zs: Vec<BiDiffOp> = (1..=cfg.p).map(|p| z_p_direct(p, n)).collect();
    let cases: Vec<(Poly, Poly)> = (0..cfg.cases)
        .map(|i| {
            let mut rng = case_rng(cfg.seed, i as u64);
            let d = rng.gen_range(0..=cfg.max_degree.min(3));
            let a = random_homogeneous(&mut rng, n, d, cfg.max_degree - d, MAX_TERMS);
            (a, random_poly(&mut rng, n, cfg.max_degree, MAX_TERMS))
        })
        .collect();
    let failures = run_cases(&cases, |case, (a, b)| {
        let inp = inputs(&[("phi", a), ("psi", b)]);
        zs.iter()
            .enumerate()
            .filter_map(|(i, z)| {
                let p = i as u32 + 1;
                expect_zero(case, &inp, format!("C_{p} factored form"), cor_last_check_with(z, p, a, b))
            })
            .collect()
    });
    Ok(Outcome {
        cases: cases.len(),
        failures,
        notes: Vec::new(),
    })
}

fn equivariance(cfg: &SuiteConfig) -> Result<Outcome> {
    let n = cfg.n;
    let basis: Vec<(LieElement, Poly)> = LieElement::sl_basis(n)
        .into_iter()
        .map(|x| {
            let mu = momentum(&x).poly;
            (x, mu)
        })
        .collect();
    let pairs = random_pairs(cfg);
    let l = &cfg.lambda;
    let failures = run_cases(&pairs, |case, (a, b)| {
        let inp = inputs(&[("phi", a), ("psi", b)]);
        let run = || -> Result<Vec<Failure>> {
            let sab = star(l, a, b)?;
            let mut out = Vec::new();
            for (x, mu) in &basis {
                let s1 = star(l, &mu.poisson(a)?, b)?;
                let s2 = star(l, a, &mu.poisson(b)?)?;
                for p in 0..=cfg.p {
                    let residual = mu.poisson(&sab.coefficient(p))? - s1.coefficient(p) - s2.coefficient(p);
                    let mut with_x = inp.clone();
                    with_x.push(("x".into(), x.to_string()));
                    out.extend(expect_zero(case, &with_x, format!("C_{p} is invariant"), Ok(residual)));
                }
            }
            Ok(out)
        };
        run().unwrap_or_else(|e| {
            vec![Failure {
                case,
                check: "evaluation".into(),
                inputs: inp.clone(),
                lhs: format!("error: {e}"),
                rhs: String::new(),
            }]
        })
    });
    Ok(Outcome {
        cases: pairs.len(),
        failures,
        notes: Vec::new(),
    })
}

fn lie_homomorphism(cfg: &SuiteConfig) -> Result<Outcome> {
    let basis = LieElement::gl_basis(cfg.n);
    let pairs: Vec<(LieElement, LieElement)> = basis
        .iter()
        .flat_map(|x| basis.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let failures = run_cases(&pairs, |case, (x, y)| {
        let inp = inputs(&[("x", x), ("y", y)]);
        expect_zero(case, &inp, "{mu^x, mu^y} = eps mu^[x,y]".into(), Ok(check_homomorphism(x, y)))
            .into_iter()
            .collect()
    });
    Ok(Outcome {
        cases: pairs.len(),
        failures,
        notes: vec![format!("eps = {MOMENTUM_BRACKET_SIGN}")],
    })
}

fn mixed_degree_poly(rng: &mut impl Rng, n: usize, max_degree: u32) -> Poly {
    let mut out = Poly::zero(n);
    for _ in 0..rng.gen_range(1..=2) {
        let d = rng.gen_range(0..=max_degree.min(3));
        out += &random_homogeneous(rng, n, d, max_degree - d, 2);
    }
    out
}

fn n_even_domain(cfg: &SuiteConfig) -> Result<Outcome> {
    let n = cfg.n;
    let ps: Vec<u32> = (2..=cfg.p).collect();
    let zs: Vec<BiDiffOp> = ps.iter().map(|&p| z_p_direct(p, n)).collect();
    let cases: Vec<(Poly, Poly)> = (0..cfg.cases)
        .map(|i| {
            let mut rng = case_rng(cfg.seed, i as u64);
            (
                mixed_degree_poly(&mut rng, n, cfg.max_degree),
                mixed_degree_poly(&mut rng, n, cfg.max_degree),
            )
        })
        .collect();
    let half = rat(1, 2);
    let singular = AtomicUsize::new(0);
    let defined = AtomicUsize::new(0);
    let failures = run_cases(&cases, |case, (a, b)| {
        let inp = inputs(&[("phi", a), ("psi", b)]);
        let mut out = Vec::new();
        for (&p, z) in ps.iter().zip(&zs) {
            let bound = domain_bound(p, n);
            let below = a
                .xi_degrees()
                .into_iter()
                .chain(b.xi_degrees())
                .any(|d| int(d as i64) < bound);
            let expect_singular = n % 2 == 0 && below;
            let got = c_p_via_zp_with(z, p, a, b);
            if expect_singular {
                singular.fetch_add(1, Ordering::Relaxed);
            } else {
                defined.fetch_add(1, Ordering::Relaxed);
            }
            match (expect_singular, got) {
                (true, Err(Error::SingularComponent { .. })) => {}
                (false, Ok(v)) => out.extend(compare(
                    case,
                    &inp,
                    format!("C_{p} via Z_{p} = C_{p} on the domain"),
                    Ok(v),
                    c_p(&half, a, b, p),
                )),
                (true, other) => out.push(Failure {
                    case,
                    check: format!("C_{p} via Z_{p} is singular below degree {bound}"),
                    inputs: inp.clone(),
                    lhs: render(&other),
                    rhs: "SingularComponent".into(),
                }),
                (false, Err(e)) => out.push(Failure {
                    case,
                    check: format!("C_{p} via Z_{p} is defined from degree {bound}"),
                    inputs: inp.clone(),
                    lhs: format!("error: {e}"),
                    rhs: render(&c_p(&half, a, b, p)),
                }),
            }
        }
        out
    });
    let mut notes: Vec<String> = ps
        .iter()
        .map(|&p| format!("p={p}: domain starts at xi-degree {}", domain_bound(p, n)))
        .collect();
    notes.push(format!(
        "singular evaluations: {}, defined evaluations: {}",
        singular.into_inner(),
        defined.into_inner()
    ));
    Ok(Outcome {
        cases: cases.len(),
        failures,
        notes,
    })
}

fn parity_on_r(cfg: &SuiteConfig) -> Result<Outcome> {
    let pairs: Vec<(Poly, Poly)> = (0..cfg.cases)
        .map(|i| {
            let mut rng = case_rng(cfg.seed, i as u64);
            (
                random_momentum_product(&mut rng, cfg.n),
                random_momentum_product(&mut rng, cfg.n),
            )
        })
        .collect();
    let mut out = parity_cases(cfg, pairs);
    out.notes.push("exploratory: symbols drawn from the algebra generated by momentum functions".into());
    Ok(out)
}

fn associativity(cfg: &SuiteConfig) -> Result<Outcome> {
    let triples: Vec<(Poly, Poly, Poly)> = (0..cfg.cases)
        .map(|i| {
            let mut rng = case_rng(cfg.seed, i as u64);
            (
                random_poly(&mut rng, cfg.n, cfg.max_degree, 2),
                random_poly(&mut rng, cfg.n, cfg.max_degree, 2),
                random_poly(&mut rng, cfg.n, cfg.max_degree, 2),
            )
        })
        .collect();
    let l = &cfg.lambda;
    let failures = run_cases(&triples, |case, (a, b, c)| {
        let inp = inputs(&[("phi", a), ("psi", b), ("chi", c)]);
        (0..=cfg.p)
            .filter_map(|r| {
                expect_zero(
                    case,
                    &inp,
                    format!("associativity at order {r}"),
                    associativity_residual(l, a, b, c, r),
                )
            })
            .collect()
    });
    Ok(Outcome {
        cases: triples.len(),
        failures,
        notes: Vec::new(),
    })
}

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<VerificationReport> {
    if config.n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let runner: fn(&SuiteConfig) -> Result<Outcome> = match name {
        "parity" => parity,
        "duality" => duality,
        "inverse" => inverse,
        "prop4" => split_product,
        "cor4-witness" => bidifferential_witnesses,
        "zp-consistency" => zp_consistency,
        "c2-closed" => c2_closed,
        "lx-order" => lx_order,
        "cor-last" => cor_last,
        "equivariance" => equivariance,
        "lie-homomorphism" => lie_homomorphism,
        "n-even-domain" => n_even_domain,
        "parity-on-R" => parity_on_r,
        "associativity" => associativity,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?;
    let start = Instant::now();
    let outcome = pool.install(|| runner(config))?;
    let status = if outcome.failures.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(VerificationReport {
        suite: name.to_string(),
        n: config.n,
        lambda: config.lambda.clone(),
        p: config.p,
        seed: config.seed,
        cases: outcome.cases,
        failures: outcome.failures,
        notes: outcome.notes,
        status,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
