//! Parsing of symbols, rationals and matrix specs, and the command bodies
//! behind the `equistar` binary.

use std::fmt;
use std::str::FromStr;

use equistar_core::invariant::{l_x, left_divide_by_shifted_euler, z_p_direct};
use equistar_core::{
    run_suite, star, DiffOp, Error, LieElement, Poly, Rational, SuiteConfig, VerificationReport, SUITES,
};
use num_traits::{One, Zero};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

type ParseResult<T> = Result<T, ParseError>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, n: usize) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            n,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> ParseResult<T> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> ParseResult<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an unsigned integer");
        }
        Ok((start, String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()))
    }

    fn expr(&mut self) -> ParseResult<Poly> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> ParseResult<Poly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> ParseResult<Poly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let (start, digits) = self.uint()?;
            let k: u32 = digits.parse().map_err(|_| ParseError {
                position: start,
                message: "exponent too large".into(),
            })?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn var_index(&mut self) -> ParseResult<usize> {
        let (start, digits) = self.uint()?;
        match digits.parse::<usize>() {
            Ok(i) if (1..=self.n).contains(&i) => Ok(i - 1),
            _ => Err(ParseError {
                position: start,
                message: format!("variable index {digits} out of range 1..={}", self.n),
            }),
        }
    }

    fn atom(&mut self) -> ParseResult<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(b'u') => {
                self.pos += 1;
                let i = self.var_index()?;
                Ok(Poly::u(self.n, i))
            }
            Some(b'x') => {
                if self.src.get(self.pos + 1) != Some(&b'i') {
                    return self.err("expected 'xi'");
                }
                self.pos += 2;
                let i = self.var_index()?;
                Ok(Poly::xi(self.n, i))
            }
            Some(c) if c.is_ascii_digit() => {
                let (_, num) = self.uint()?;
                let mut value = Rational::from_str(&num).expect("digits");
                if self.eat(b'/') {
                    let (start, den) = self.uint()?;
                    let den = Rational::from_str(&den).expect("digits");
                    if den.is_zero() {
                        return Err(ParseError {
                            position: start,
                            message: "zero denominator".into(),
                        });
                    }
                    value /= den;
                }
                Ok(Poly::constant(self.n, value))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a symbol in the variables `u1..un`, `xi1..xin`.
pub fn parse_poly(input: &str, n: usize) -> ParseResult<Poly> {
    if n == 0 {
        return Err(ParseError {
            position: 0,
            message: "n must be at least 1".into(),
        });
    }
    let mut p = Parser::new(input, n);
    let value = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(value)
}

/// Parses an exact rational such as `1/2`, `-3` or `0`.
pub fn parse_rational(input: &str) -> ParseResult<Rational> {
    Rational::from_str(input.trim()).map_err(|e| ParseError {
        position: 0,
        message: format!("invalid rational `{input}`: {e}"),
    })
}

/// Parses a matrix spec: a signed sum of terms `[c*]eAB` or `[c*]eA_B`,
/// or `id` for the identity.
pub fn parse_lie(input: &str, n: usize) -> ParseResult<LieElement> {
    let mut out = LieElement::zero(n);
    let src = input.trim();
    if src.is_empty() {
        return Err(ParseError {
            position: 0,
            message: "empty matrix spec".into(),
        });
    }
    let mut pos = 0usize;
    let bytes = src.as_bytes();
    let mut first = true;
    while pos < bytes.len() {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let mut sign = Rational::one();
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
        } else if !first {
            return Err(ParseError {
                position: pos,
                message: "expected '+' or '-'".into(),
            });
        }
        first = false;
        let start = pos;
        while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
            pos += 1;
        }
        let chunk = src[start..pos].trim();
        let (coeff, name) = match chunk.rsplit_once('*') {
            Some((c, name)) => (parse_rational(c).map_err(|e| ParseError { position: start, ..e })?, name.trim()),
            None => (Rational::one(), chunk),
        };
        let unit = if name == "id" {
            LieElement::identity(n)
        } else {
            let idx = name.strip_prefix('e').ok_or_else(|| ParseError {
                position: start,
                message: format!("expected a matrix unit like e10, got `{name}`"),
            })?;
            let (a, b) = match idx.split_once('_') {
                Some((a, b)) => (a.parse::<usize>().ok(), b.parse::<usize>().ok()),
                None if idx.len() == 2 => (idx[..1].parse().ok(), idx[1..].parse().ok()),
                None => (None, None),
            };
            match (a, b) {
                (Some(a), Some(b)) if a <= n && b <= n => LieElement::unit(n, a, b),
                _ => {
                    return Err(ParseError {
                        position: start,
                        message: format!("matrix unit `{name}` out of range 0..={n}"),
                    })
                }
            }
        };
        out = out.add(&unit.scale(&(sign * coeff)));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Output of one command: rendered report and whether it counts as success.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub rendered: String,
    pub success: bool,
}

#[derive(Debug)]
pub enum CliError {
    Parse(String, ParseError),
    Core(Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(what, e) => write!(f, "cannot parse {what} {e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

fn parse_named(what: &str, input: &str, n: usize) -> Result<Poly, CliError> {
    parse_poly(input, n).map_err(|e| CliError::Parse(what.to_string(), e))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// All coefficients `C_0..=C_{p_max}`; `p_max` defaults to the largest
/// index that can be nonzero.
pub fn cmd_star(
    n: usize,
    lambda: &Rational,
    phi: &str,
    psi: &str,
    p_max: Option<u32>,
    format: Format,
) -> Result<CommandOutput, CliError> {
    let a = parse_named("--phi", phi, n)?;
    let b = parse_named("--psi", psi, n)?;
    let s = star(lambda, &a, &b)?;
    let top = p_max.unwrap_or(a.max_xi_degree().unwrap_or(0) + b.max_xi_degree().unwrap_or(0));
    let rendered = match format {
        Format::Json => pretty(&s.to_json(top)),
        Format::Text => (0..=top).map(|p| format!("C_{p} = {}\n", s.coefficient(p))).collect(),
    };
    Ok(CommandOutput { rendered, success: true })
}

pub fn cmd_coeff(n: usize, lambda: &Rational, phi: &str, psi: &str, p: u32, format: Format) -> Result<CommandOutput, CliError> {
    let a = parse_named("--phi", phi, n)?;
    let b = parse_named("--psi", psi, n)?;
    let c = star(lambda, &a, &b)?.coefficient(p);
    let rendered = match format {
        Format::Json => pretty(&json!({
            "lambda": lambda.to_string(),
            "n": n,
            "p": p,
            "coefficient": c.to_string(),
        })),
        Format::Text => format!("C_{p} = {c}\n"),
    };
    Ok(CommandOutput { rendered, success: true })
}

fn opt(v: Option<u32>) -> Value {
    v.map_or(Value::Null, Value::from)
}

fn opt_text(v: Option<u32>) -> String {
    v.map_or("-".into(), |x| x.to_string())
}

pub fn cmd_zp(n: usize, p: u32, format: Format) -> Result<CommandOutput, CliError> {
    if p == 0 {
        return Err(CliError::Usage("--p must be at least 1".into()));
    }
    let z = z_p_direct(p, n);
    let rendered = match format {
        Format::Json => pretty(&json!({
            "n": n,
            "p": p,
            "order": opt(z.order()),
            "left_order": opt(z.left_order()),
            "right_order": opt(z.right_order()),
            "coefficient_degree": opt(z.coefficient_degree()),
            "terms": z.terms().len(),
            "poisson_power_order": 2 * p,
            "operator": z.to_json(),
        })),
        Format::Text => format!(
            "Z_{p} (n={n}) = {z}\norder: {}\nleft order: {}\nright order: {}\ncoefficient degree: {}\nterms: {}\norder of the Poisson bracket power (2p): {}\n",
            opt_text(z.order()),
            opt_text(z.left_order()),
            opt_text(z.right_order()),
            opt_text(z.coefficient_degree()),
            z.terms().len(),
            2 * p
        ),
    };
    Ok(CommandOutput { rendered, success: true })
}

/// Left factor `E' + c` with `c` in a small grid of half-integers, if any.
fn find_left_factor(op: &DiffOp) -> Option<(Rational, DiffOp)> {
    (-8i64..=8)
        .map(|k| Rational::new(k.into(), 2.into()))
        .find_map(|c| left_divide_by_shifted_euler(op, &c).map(|q| (c, q)))
}

pub fn cmd_lx(n: usize, x: &str, format: Format) -> Result<CommandOutput, CliError> {
    let elem = parse_lie(x, n).map_err(|e| CliError::Parse("--x".into(), e))?;
    let op = l_x(&elem, n);
    let factor = if op.is_zero() { None } else { find_left_factor(&op) };
    let factor_text = factor.as_ref().map(|(c, q)| {
        let c = if c.is_zero() {
            "(E')".to_string()
        } else if *c < Rational::zero() {
            format!("(E'-{})", -c)
        } else {
            format!("(E'+{c})")
        };
        format!("{c} o ({q})")
    });
    let rendered = match format {
        Format::Json => pretty(&json!({
            "n": n,
            "x": elem.to_string(),
            "order": opt(op.order()),
            "coefficient_degree": opt(op.coefficient_degree()),
            "left_factor": factor_text,
            "operator": op.to_json(),
        })),
        Format::Text => {
            let mut s = format!(
                "L^x (x = {elem}, n={n}) = {op}\norder: {}\ncoefficient degree: {}\n",
                opt_text(op.order()),
                opt_text(op.coefficient_degree())
            );
            match factor_text {
                Some(f) => s.push_str(&format!("factored: {f}\n")),
                None => s.push_str("factored: no left factor E'+c for c in {-4, -7/2, ..., 4}\n"),
            }
            s
        }
    };
    Ok(CommandOutput { rendered, success: true })
}

fn render_report(r: &VerificationReport, format: Format, timing: bool) -> (Value, String) {
    let mut v = r.to_json();
    let mut text = r.to_text();
    if !timing {
        v["elapsed_ms"] = Value::from(0);
        text = text.replace(&format!("[{} ms]", r.elapsed_ms), "[0 ms]");
    }
    match format {
        Format::Json => (v.clone(), pretty(&v)),
        Format::Text => (v, text),
    }
}

pub fn cmd_verify(suite: &str, config: &SuiteConfig, format: Format, timing: bool) -> Result<CommandOutput, CliError> {
    let report = run_suite(suite, config)?;
    let (_, rendered) = render_report(&report, format, timing);
    Ok(CommandOutput {
        rendered,
        success: report.passed(),
    })
}

/// Runs every suite; suites whose preconditions exclude the configuration
/// are listed as skipped.
pub fn cmd_suite_all(config: &SuiteConfig, format: Format, timing: bool) -> Result<CommandOutput, CliError> {
    let mut values = Vec::new();
    let mut text = String::new();
    let mut success = true;
    for name in SUITES {
        match run_suite(name, config) {
            Ok(r) => {
                success &= r.passed();
                let (v, t) = render_report(&r, Format::Text, timing);
                values.push(v);
                text.push_str(&t);
            }
            Err(Error::Precondition(why)) => {
                values.push(json!({"suite": name, "status": "skipped", "reason": why}));
                text.push_str(&format!("suite {name}: skipped ({why})\n"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let rendered = match format {
        Format::Json => pretty(&Value::Array(values)),
        Format::Text => text,
    };
    Ok(CommandOutput { rendered, success })
}
