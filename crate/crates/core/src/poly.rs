//! Sparse multivariate polynomials over an exact field, tied to a ring
//! context that fixes the variables, weights, and active monomial order.
//!
//! Terms are stored strictly descending in the active order with no zero
//! coefficients, so equal polynomials are structurally equal.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Coef, FieldSpec};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;

/// The ambient polynomial ring context P = k[X_1..X_n] with positive weights
/// and an active monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub weights: Vec<u64>,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: FieldSpec, vars: Vec<String>, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != vars.len() {
            return Err(Error::InvalidArgument(format!(
                "{} weights for {} variables",
                weights.len(),
                vars.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidArgument("weights must be positive".into()));
        }
        // Degree arithmetic stays inside u64 for any realistic exponent.
        if weights.iter().any(|&w| w > 1_000_000) {
            return Err(Error::InvalidArgument(
                "weights larger than 10^6 are not supported".into(),
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{v}`")));
            }
        }
        let order = MonomialOrder::wgrevlex(weights.clone());
        Ok(PolyRing {
            field,
            vars,
            weights,
            order,
        })
    }

    /// Standard grading: all weights 1.
    pub fn standard(field: FieldSpec, vars: &[&str]) -> Self {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let weights = vec![1; vars.len()];
        PolyRing::new(field, vars, weights).expect("valid standard ring")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same ring with a different active order. Polynomials must be
    /// re-sorted with [`Polynomial::resorted`] when moving between contexts.
    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing {
            field: self.field,
            vars: self.vars.clone(),
            weights: self.weights.clone(),
            order,
        }
    }

    /// Ring extended by fresh variables (used for tag-variable tricks).
    /// New variables are appended with weight 1.
    pub fn extended(&self, extra: &[&str]) -> PolyRing {
        let mut vars = self.vars.clone();
        let mut weights = self.weights.clone();
        for e in extra {
            vars.push(e.to_string());
            weights.push(1);
        }
        let order = MonomialOrder::wgrevlex(weights.clone());
        PolyRing {
            field: self.field,
            vars,
            weights,
            order,
        }
    }
}

/// A polynomial in canonical form for its ring context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, Coef)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one(ring: &PolyRing) -> Self {
        Polynomial {
            terms: vec![(Monomial::one(ring.nvars()), ring.field.one())],
        }
    }

    pub fn constant(ring: &PolyRing, c: Coef) -> Self {
        if ring.field.is_zero(&c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: vec![(Monomial::one(ring.nvars()), c)],
        }
    }

    pub fn var(ring: &PolyRing, i: usize) -> Self {
        Polynomial {
            terms: vec![(Monomial::var(ring.nvars(), i), ring.field.one())],
        }
    }

    pub fn monomial(ring: &PolyRing, m: Monomial, c: Coef) -> Self {
        if ring.field.is_zero(&c) {
            return Polynomial::zero();
        }
        let _ = ring;
        Polynomial { terms: vec![(m, c)] }
    }

    /// Normalizes an arbitrary term list: sorts, merges, drops zeros.
    pub fn from_terms(ring: &PolyRing, mut terms: Vec<(Monomial, Coef)>) -> Self {
        terms.sort_by(|a, b| ring.order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coef)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = ring.field.add(&last.1, &c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !ring.field.is_zero(c));
        Polynomial { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Coef)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Coef)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero scalar (degree-zero) polynomial, i.e. a unit of P.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn add(&self, ring: &PolyRing, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match ring.order.cmp(&self.terms[i].0, &other.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ring.field.add(&self.terms[i].1, &other.terms[j].1);
                    if !ring.field.is_zero(&c) {
                        terms.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Polynomial { terms }
    }

    pub fn neg(&self, ring: &PolyRing) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), ring.field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &PolyRing, other: &Polynomial) -> Polynomial {
        self.add(ring, &other.neg(ring))
    }

    pub fn scalar_mul(&self, ring: &PolyRing, c: &Coef) -> Polynomial {
        if ring.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), ring.field.mul(k, c)))
                .collect(),
        }
    }

    /// Multiplies by the single term `c * m`.
    pub fn term_mul(&self, ring: &PolyRing, m: &Monomial, c: &Coef) -> Polynomial {
        if ring.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), ring.field.mul(k, c)))
                .collect(),
        }
    }

    pub fn mul(&self, ring: &PolyRing, other: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (m, c) in &self.terms {
            acc = acc.add(ring, &other.term_mul(ring, m, c));
        }
        acc
    }

    pub fn pow(&self, ring: &PolyRing, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(ring);
        for _ in 0..e {
            acc = acc.mul(ring, self);
        }
        acc
    }

    /// Partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, ring: &PolyRing, var: usize) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[var] -= 1;
            let factor = ring.field.from_i64(e as i64);
            let nc = ring.field.mul(c, &factor);
            if !ring.field.is_zero(&nc) {
                terms.push((Monomial::from_exps(exps), nc));
            }
        }
        Polynomial::from_terms(ring, terms)
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self, ring: &PolyRing) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some((_, c)) => {
                let inv = ring.field.inv(c);
                self.scalar_mul(ring, &inv)
            }
        }
    }

    /// Re-sorts the terms for a context with a different order.
    pub fn resorted(&self, target: &PolyRing) -> Polynomial {
        Polynomial::from_terms(target, self.terms.clone())
    }

    /// Maps into an extension ring with the same leading variables
    /// (new variables appended).
    pub fn extend_vars(&self, target_nvars: usize, target: &PolyRing) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exps.clone();
                exps.resize(target_nvars, 0);
                (Monomial::from_exps(exps), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Drops trailing variables (they must not occur); `None` if any term
    /// uses a dropped variable.
    pub fn restrict_vars(&self, target_nvars: usize, target: &PolyRing) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.exps[target_nvars..].iter().any(|&e| e > 0) {
                return None;
            }
            terms.push((Monomial::from_exps(m.exps[..target_nvars].to_vec()), c.clone()));
        }
        Some(Polynomial::from_terms(target, terms))
    }

    /// Maximum weighted degree over the terms (`None` for zero).
    pub fn weighted_degree(&self, ring: &PolyRing) -> Option<u64> {
        self.terms
            .iter()
            .map(|(m, _)| m.weighted_degree(&ring.weights))
            .max()
    }

    /// True when all terms share one weighted degree (zero counts as
    /// homogeneous).
    pub fn is_weighted_homogeneous(&self, ring: &PolyRing) -> bool {
        let mut degs = self
            .terms
            .iter()
            .map(|(m, _)| m.weighted_degree(&ring.weights));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Exact division by `divisor`; `None` when not divisible.
    pub fn exact_div(&self, ring: &PolyRing, divisor: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot_terms = Vec::new();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = dm.quotient_into(rm);
            let qc = ring.field.div(rc, dc);
            rem = rem.sub(ring, &divisor.term_mul(ring, &qm, &qc));
            quot_terms.push((qm, qc));
        }
        Some(Polynomial::from_terms(ring, quot_terms))
    }

    /// Renders in the input grammar; `parse(render(f)) == f`.
    pub fn render(&self, ring: &PolyRing) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = ring.field.is_display_negative(c);
            let abs = ring.field.display_abs(c);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coef_str = ring.field.render(&abs);
            let mono_str = render_monomial(ring, m);
            match (coef_str.as_str(), mono_str.as_str()) {
                (_, "") => out.push_str(&coef_str),
                ("1", ms) => out.push_str(ms),
                (cs, ms) => {
                    out.push_str(cs);
                    out.push('*');
                    out.push_str(ms);
                }
            }
        }
        out
    }
}

fn render_monomial(ring: &PolyRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.vars[i].clone()),
            _ => parts.push(format!("{}^{}", ring.vars[i], e)),
        }
    }
    parts.join("*")
}

/// Parses the polynomial grammar: integer or `a/b` coefficients, explicit
/// `*`, `^` with positive integer exponents, `+`, `-`, parentheses,
/// whitespace-insensitive.
pub fn parse_polynomial(ring: &PolyRing, text: &str) -> Result<Polynomial> {
    let mut p = Parser {
        ring,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let poly = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(Error::Parse {
            offset: p.pos,
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(poly)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            msg: msg.into(),
        })
    }

    fn parse_expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.parse_term()?.neg(self.ring)
            }
            Some(b'+') => {
                self.pos += 1;
                self.parse_term()?
            }
            _ => self.parse_term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = acc.add(self.ring, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = acc.sub(self.ring, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Polynomial> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.parse_factor()?;
            acc = acc.mul(self.ring, &f);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Polynomial> {
        let base = self.parse_atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.parse_uint()?;
            if e.is_zero() {
                return self.err("exponent must be a positive integer");
            }
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::Parse {
                    offset: self.pos,
                    msg: "exponent too large".into(),
                })?;
            return Ok(base.pow(self.ring, e));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.parse_expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_uint()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.parse_uint()?;
                    let c = self.ring.field.from_big_ratio(&num, &den)?;
                    Ok(Polynomial::constant(self.ring, c))
                } else {
                    let c = self.ring.field.from_big_ratio(&num, &num_traits::One::one())?;
                    Ok(Polynomial::constant(self.ring, c))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::UnknownVariable(name.to_string())),
                }
            }
            _ => self.err("expected coefficient, variable, or `(`"),
        }
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().expect("digits form an integer"))
    }
}
