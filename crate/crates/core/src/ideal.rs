//! Monomial ideals of `S = K[x_1, …, x_n]` and the Artinian quotients
//! `R = S/I` they define.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{default_var_names, Monomial};

/// A monomial ideal held by its minimal generating set.
///
/// The empty generating set is the zero ideal; a generator equal to `1`
/// makes it the unit ideal. Both are representable; only the parsers refuse
/// them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialIdeal {
    vars: Vec<String>,
    gens: Vec<Monomial>,
}

/// Canonical structured form: `{"vars": ["x","y"], "generators": [[3,0],[0,3],[1,1]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealRecord {
    pub vars: Vec<String>,
    pub generators: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    pub fn new(vars: Vec<String>, gens: Vec<Monomial>) -> Result<Self> {
        let n = vars.len();
        for g in &gens {
            if g.arity() != n {
                return Err(Error::ArityMismatch { expected: n, found: g.arity() });
            }
        }
        Ok(MonomialIdeal { vars, gens: minimalize(gens) })
    }

    /// Ideal in `n` variables with default variable names.
    pub fn from_generators(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        Self::new(default_var_names(n), gens)
    }

    pub fn from_exponents(n: usize, rows: &[&[u32]]) -> Result<Self> {
        Self::from_generators(n, rows.iter().map(|r| Monomial::new(r.to_vec())).collect())
    }

    pub fn zero(vars: Vec<String>) -> Self {
        MonomialIdeal { vars, gens: Vec::new() }
    }

    pub fn unit(vars: Vec<String>) -> Self {
        let n = vars.len();
        MonomialIdeal { vars, gens: vec![Monomial::one(n)] }
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn with_vars(mut self, vars: Vec<String>) -> Result<Self> {
        if vars.len() != self.vars.len() {
            return Err(Error::ArityMismatch { expected: self.vars.len(), found: vars.len() });
        }
        self.vars = vars;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Exponent of the pure power of `x_i` among the generators.
    pub fn pure_power_exponent(&self, i: usize) -> Option<u32> {
        self.gens
            .iter()
            .filter(|g| g.pure_power_index() == Some(i))
            .map(|g| g.exps()[i])
            .min()
    }

    pub fn is_artinian(&self) -> bool {
        self.is_unit() || (0..self.arity()).all(|i| self.pure_power_exponent(i).is_some())
    }

    fn require_artinian(&self) -> Result<()> {
        for i in 0..self.arity() {
            if !self.is_unit() && self.pure_power_exponent(i).is_none() {
                return Err(Error::NotArtinian(self.vars[i].clone()));
            }
        }
        Ok(())
    }

    /// The monomials outside the ideal, in graded order.
    ///
    /// Grows the set upward from `1` one variable at a time; the set is
    /// closed under division, so every standard monomial is reached.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        self.require_artinian()?;
        let n = self.arity();
        let one = Monomial::one(n);
        if self.contains(&one) {
            return Ok(Vec::new());
        }
        // u is standard, so a generator dividing x_i·u has x_i-exponent
        // exactly u_i + 1
        let mut by_slot: HashMap<(usize, u32), Vec<&Monomial>> = HashMap::new();
        for g in &self.gens {
            for i in g.support() {
                by_slot.entry((i, g.exps()[i])).or_default().push(g);
            }
        }
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut frontier = vec![one.clone()];
        seen.insert(one);
        let mut out = Vec::new();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for u in frontier {
                for i in 0..n {
                    let v = u.times_var(i);
                    let blocked =
                        by_slot.get(&(i, v.exps()[i])).is_some_and(|gs| gs.iter().any(|g| g.divides(&v)));
                    if !blocked && seen.insert(v.clone()) {
                        next.push(v);
                    }
                }
                out.push(u);
            }
            frontier = next;
        }
        out.sort();
        Ok(out)
    }

    /// Monomials `u ∉ I` with `x_i u ∈ I` for every `i`.
    pub fn socle_monomials(&self) -> Result<Vec<Monomial>> {
        let n = self.arity();
        Ok(self
            .standard_monomials()?
            .into_iter()
            .filter(|u| (0..n).all(|i| self.contains(&u.times_var(i))))
            .collect())
    }

    /// `(I : J) = {u : uJ ⊆ I}`, computed as the intersection over the
    /// generators `g` of `J` of `(I : g)`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_arity(other)?;
        let mut acc = MonomialIdeal::unit(self.vars.clone());
        for g in &other.gens {
            let quotient: Vec<Monomial> = self
                .gens
                .iter()
                .map(|f| {
                    Monomial::new(f.exps().iter().zip(g.exps()).map(|(a, b)| a.saturating_sub(*b)).collect())
                })
                .collect();
            let q = MonomialIdeal { vars: self.vars.clone(), gens: minimalize(quotient) };
            acc = acc.intersect(&q)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_arity(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(MonomialIdeal { vars: self.vars.clone(), gens: minimalize(gens) })
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_arity(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(MonomialIdeal { vars: self.vars.clone(), gens: minimalize(gens) })
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_arity(other)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ok(MonomialIdeal { vars: self.vars.clone(), gens: minimalize(gens) })
    }

    fn check_arity(&self, other: &MonomialIdeal) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: other.arity() });
        }
        Ok(())
    }

    pub fn to_record(&self) -> IdealRecord {
        IdealRecord {
            vars: self.vars.clone(),
            generators: self.gens.iter().map(|g| g.exps().to_vec()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("ideal record serializes")
    }

    /// Comma-separated string form, `x^3, y^3, x*y`.
    pub fn to_expr(&self) -> String {
        if self.gens.is_empty() {
            return "0".to_string();
        }
        self.gens.iter().map(|g| g.display_with(&self.vars)).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_expr())
    }
}

/// Drops duplicates and every generator divisible by another one.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    // graded order: a divisor always sorts before its multiples
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Generators of `𝔪^k`: all exponent vectors of total degree `k`.
pub fn power_of_maximal_ideal(n: usize, k: u32) -> Result<MonomialIdeal> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("power of the maximal ideal needs k >= 1, got {k}")));
    }
    let mut gens = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if n > 0 {
        rec(0, k, &mut cur, &mut gens);
    }
    MonomialIdeal::from_generators(n, gens)
}

impl IdealRecord {
    pub fn into_ideal(self) -> Result<MonomialIdeal> {
        let n = self.vars.len();
        if self.generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for row in self.generators {
            if row.len() != n {
                return Err(Error::ArityMismatch { expected: n, found: row.len() });
            }
            gens.push(Monomial::new(row));
        }
        let ideal = MonomialIdeal::new(self.vars, gens)?;
        if ideal.is_unit() {
            return Err(Error::UnitIdeal);
        }
        Ok(ideal)
    }
}

/// Parses the structured JSON form. Negative exponents are reported as
/// such rather than as a generic decode failure.
pub fn parse_ideal_json(text: &str) -> Result<MonomialIdeal> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if let Some(rows) = value.get("generators").and_then(|g| g.as_array()) {
        for row in rows {
            if let Some(entries) = row.as_array() {
                if entries.iter().any(|e| e.as_i64().is_some_and(|v| v < 0)) {
                    return Err(Error::NegativeExponent(row.to_string()));
                }
            }
        }
    }
    let record: IdealRecord = serde_json::from_value(value)?;
    record.into_ideal()
}

/// Parses `x^3, y^3, x*y` over the declared variables. Juxtaposition is
/// multiplication (`x^2y` is `x^2*y`) unless the whole factor is a declared
/// name. With `vars = None` the variables are taken in order of first
/// appearance.
pub fn parse_ideal_expr(text: &str, vars: Option<&[String]>) -> Result<MonomialIdeal> {
    let text = text.trim();
    let text = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(text);
    let terms = parse_terms(text, vars)?;
    if terms.is_empty() {
        return Err(Error::NoGenerators);
    }
    let vars: Vec<String> = match vars {
        Some(v) => v.to_vec(),
        None => {
            let mut seen: Vec<String> = Vec::new();
            for term in &terms {
                for (name, _) in term {
                    if !seen.contains(name) {
                        seen.push(name.clone());
                    }
                }
            }
            seen
        }
    };
    let n = vars.len();
    let mut gens = Vec::with_capacity(terms.len());
    for term in terms {
        let mut e = vec![0u32; n];
        for (name, k) in term {
            let i = vars
                .iter()
                .position(|v| *v == name)
                .ok_or_else(|| Error::Malformed(format!("undeclared variable `{name}`")))?;
            e[i] += k;
        }
        gens.push(Monomial::new(e));
    }
    let ideal = MonomialIdeal::new(vars, gens)?;
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(ideal)
}

/// Accepts either form: JSON when the text starts with `{`.
pub fn parse_ideal(text: &str, vars: Option<&[String]>) -> Result<MonomialIdeal> {
    if text.trim_start().starts_with('{') {
        parse_ideal_json(text)
    } else {
        parse_ideal_expr(text, vars)
    }
}

type Term = Vec<(String, u32)>;

fn parse_exponent(factor: &str, exp: Option<&str>) -> Result<u32> {
    match exp.map(str::trim) {
        None => Ok(1),
        Some(s) if s.starts_with('-') => Err(Error::NegativeExponent(factor.to_string())),
        Some(s) => s.parse::<u32>().map_err(|_| Error::Malformed(format!("bad exponent in `{factor}`"))),
    }
}

/// Splits a juxtaposed factor such as `x^2y` or `x1x2^3` into atoms, each a
/// letter followed by an optional (underscored) index.
fn split_atoms(factor: &str) -> Result<Term> {
    let bad = || Error::Malformed(format!("bad token `{factor}`"));
    let b = factor.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        if !b[i].is_ascii_alphabetic() {
            return Err(bad());
        }
        let start = i;
        i += 1;
        if i + 1 < b.len() && b[i] == b'_' && b[i + 1].is_ascii_digit() {
            i += 1;
        }
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        let name = &factor[start..i];
        while i < b.len() && b[i] == b' ' {
            i += 1;
        }
        let mut exp = None;
        if i < b.len() && b[i] == b'^' {
            i += 1;
            let from = i;
            while i < b.len() && (b[i] == b' ' || (i == from && b[i] == b'-')) {
                i += 1;
            }
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            exp = Some(&factor[from..i]);
            while i < b.len() && b[i] == b' ' {
                i += 1;
            }
        }
        out.push((name.to_string(), parse_exponent(factor, exp)?));
    }
    Ok(out)
}

fn parse_terms(text: &str, vars: Option<&[String]>) -> Result<Vec<Term>> {
    let mut terms = Vec::new();
    for raw in text.split(',') {
        let raw = raw.trim();
        if raw.is_empty() {
            return Err(Error::Malformed(format!("empty generator in `{text}`")));
        }
        let mut term = Vec::new();
        for factor in raw.split('*') {
            let factor = factor.trim();
            if factor == "1" {
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((name, exp)) => (name.trim(), Some(exp)),
                None => (factor, None),
            };
            if vars.is_some_and(|v| v.iter().any(|d| d == name)) {
                term.push((name.to_string(), parse_exponent(factor, exp)?));
            } else {
                term.extend(split_atoms(factor)?);
            }
        }
        terms.push(term);
    }
    Ok(terms)
}
