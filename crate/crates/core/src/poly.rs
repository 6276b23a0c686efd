//! Multivariate polynomials with exact coefficients.
//!
//! Monomials are dense exponent vectors. Their `Ord` is the deglex order with
//! `x1 > x2 > ... > xn`; polynomials store terms in that order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::geometry::Point;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    /// The square-free monomial `prod_{j in set} x_j` (0-based indices).
    pub fn square_free(nvars: usize, set: &[usize]) -> Self {
        let mut e = vec![0; nvars];
        for &j in set {
            e[j] = 1;
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_square_free(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Variables with positive exponent (0-based).
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    pub fn eval(&self, p: &Point) -> Scalar {
        let field = p.coords()[0].field();
        let mut acc = field.one();
        for (c, &e) in p.coords().iter().zip(&self.0) {
            for _ in 0..e {
                acc = &acc * c;
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        TermOrder::Deglex.compare(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{e}", i + 1)?;
            }
        }
        Ok(())
    }
}

/// Monomial orders with variable precedence `x1 > x2 > ... > xn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TermOrder {
    /// Total degree first, ties broken lexicographically.
    #[default]
    Deglex,
    Lex,
}

impl TermOrder {
    /// Panics if the monomials live in different rings; see [`try_compare`](Self::try_compare).
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        assert_eq!(a.nvars(), b.nvars(), "monomials from different rings");
        match self {
            TermOrder::Deglex => a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)),
            TermOrder::Lex => a.0.cmp(&b.0),
        }
    }

    pub fn try_compare(self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::DimensionMismatch { expected: a.nvars(), got: b.nvars() });
        }
        Ok(self.compare(a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Polynomial { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: Scalar) -> Self {
        Polynomial::term(field, Monomial::one(nvars), c)
    }

    pub fn term(field: FieldSpec, m: Monomial, c: Scalar) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { field, nvars, terms }
    }

    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        Polynomial::term(field, Monomial::var(nvars, i), field.one())
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms(field: FieldSpec, nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Self> {
        let mut p = Polynomial::zero(field, nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: m.nvars() });
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing deglex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Maximum total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// `(lm(f), lc(f))` under `order`.
    pub fn leading_term(&self, order: TermOrder) -> Result<(Monomial, Scalar)> {
        let (m, c) = match order {
            TermOrder::Deglex => self.terms.iter().next_back(),
            TermOrder::Lex => self.terms.iter().max_by(|a, b| order.compare(a.0, b.0)),
        }
        .ok_or(Error::ZeroPolynomial)?;
        Ok((m.clone(), c.clone()))
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<Polynomial> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), c.field().to_string()));
        }
        if c.is_zero() {
            return Ok(Polynomial::zero(self.field, self.nvars));
        }
        Ok(Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    /// `c * m * self`.
    fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.field, self.nvars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    pub fn eval(&self, p: &Point) -> Result<Scalar> {
        if p.dim() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: p.dim() });
        }
        if let Some(c) = p.coords().iter().find(|c| c.field() != self.field) {
            return Err(Error::FieldMismatch(self.field.to_string(), c.field().to_string()));
        }
        Ok(self.terms.iter().fold(self.field.zero(), |acc, (m, c)| &acc + &(c * &m.eval(p))))
    }

    /// Parses the rendering produced by `Display`, e.g. `x1*x2 - 2*x2 + 1`.
    pub fn parse(field: FieldSpec, nvars: usize, text: &str) -> Result<Polynomial> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Polynomial::zero(field, nvars);
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..=bytes.len() {
            let boundary = i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
            if boundary {
                let (m, c) = parse_term(field, nvars, &compact[start..i])?;
                out.add_term(m, &c);
                start = i;
            }
        }
        Ok(out)
    }
}

fn parse_term(field: FieldSpec, nvars: usize, term: &str) -> Result<(Monomial, Scalar)> {
    let bad = || Error::Parse(format!("invalid term `{term}`"));
    let (negative, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let mut coeff = field.one();
    let mut exps = vec![0u32; nvars];
    for factor in body.split('*') {
        if let Some(var) = factor.strip_prefix('x') {
            let (idx, exp) = match var.split_once('^') {
                Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad())?),
                None => (var, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad())?;
            if idx == 0 || idx > nvars {
                return Err(Error::Parse(format!("variable x{idx} out of range 1..={nvars}")));
            }
            exps[idx - 1] += exp;
        } else {
            coeff = &coeff * &field.parse_scalar(factor).map_err(|_| bad())?;
        }
    }
    if negative {
        coeff = -coeff;
    }
    Ok((Monomial(exps), coeff))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (i == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Normal form of `f` modulo `divisors`.
///
/// Repeatedly rewrites the largest reducible monomial using the first divisor
/// whose leading monomial divides it, replacing `w` by
/// `u * (lm(g) - g / lc(g))` where `w = u * lm(g)`. Under a degree-compatible
/// order the result never has larger degree than `f`.
pub fn reduce(f: &Polynomial, divisors: &[Polynomial], order: TermOrder) -> Result<Polynomial> {
    let mut leads = Vec::with_capacity(divisors.len());
    for g in divisors {
        f.check(g)?;
        let (m, c) = g.leading_term(order)?;
        leads.push((m, c.inv().expect("leading coefficient nonzero")));
    }
    let mut rest = f.clone();
    let mut out = Polynomial::zero(f.field, f.nvars);
    while !rest.is_zero() {
        let (m, c) = rest.leading_term(order)?;
        let hit = leads.iter().enumerate().find_map(|(i, (lm, inv))| lm.quotient(&m).map(|u| (i, u, inv)));
        match hit {
            Some((i, u, inv)) => {
                let factor = &c * inv;
                rest = rest.sub(&divisors[i].mul_term(&u, &factor))?;
            }
            None => {
                rest.terms.remove(&m);
                out.terms.insert(m, c);
            }
        }
    }
    Ok(out)
}
