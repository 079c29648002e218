//! Finite posets, their distributive lattices of order ideals, and the order
//! complexes of those lattices.
//!
//! Elements of a poset are indexed `0..n` with `n ≤ 64`; an order ideal is a
//! `u64` bitmask over those indices.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hom;
use crate::monomial::Monomial;
use crate::poset::{DivisorPoset, PosetIdealView};
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `below[b]` has bit `a` set iff `a < b`.
    below: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    #[serde(default)]
    pub relations: Vec<(String, String)>,
}

impl FinitePoset {
    /// `relations` are pairs `(a, b)` meaning `a < b`; the order is their
    /// transitive closure.
    pub fn new(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n > 64 {
            return Err(Error::InvalidArgument(format!("at most 64 elements, got {n}")));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidArgument(format!("duplicate element {l}")));
            }
        }
        let mut below = vec![0u64; n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidArgument(format!("relation ({a}, {b}) out of range")));
            }
            below[b] |= 1 << a;
        }
        loop {
            let mut changed = false;
            for b in 0..n {
                let mut acc = below[b];
                for a in 0..n {
                    if below[b] >> a & 1 == 1 {
                        acc |= below[a];
                    }
                }
                if acc != below[b] {
                    below[b] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if let Some(a) = (0..n).find(|&a| below[a] >> a & 1 == 1) {
            return Err(Error::InvalidArgument(format!("relations contain a cycle through {}", labels[a])));
        }
        Ok(FinitePoset { labels, below })
    }

    pub fn from_spec(spec: &PosetSpec) -> Result<Self> {
        let index: HashMap<&str, usize> = spec.elements.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let lookup = |l: &str| {
            index.get(l).copied().ok_or_else(|| Error::InvalidArgument(format!("unknown element {l}")))
        };
        let mut rel = Vec::new();
        for (a, b) in &spec.relations {
            rel.push((lookup(a)?, lookup(b)?));
        }
        Self::new(spec.elements.clone(), &rel)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: PosetSpec = serde_json::from_str(text)?;
        Self::from_spec(&spec)
    }

    pub fn chain(n: usize) -> Result<Self> {
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new((1..=n).map(|i| format!("a{i}")).collect(), &rel)
    }

    pub fn antichain(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("a{i}")).collect(), &[])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b] >> a & 1 == 1
    }

    /// Order ideals sorted by size, then by their sorted member indices.
    pub fn ideals(&self) -> Vec<u64> {
        let n = self.len();
        let mut out = vec![0u64];
        let mut k = 0;
        while k < out.len() {
            let cur = out[k];
            for x in 0..n {
                let bit = 1u64 << x;
                if cur & bit == 0 && self.below[x] & !cur == 0 {
                    let next = cur | bit;
                    if !out.contains(&next) {
                        out.push(next);
                    }
                }
            }
            k += 1;
        }
        out.sort_by_key(|&m| (m.count_ones(), members(m)));
        out
    }

    /// Linear extensions as index permutations, in lexicographic order.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.extend(0, &mut Vec::new(), &mut out);
        out
    }

    fn extend(&self, placed: u64, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == self.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..self.len() {
            if placed >> x & 1 == 0 && self.below[x] & !placed == 0 {
                prefix.push(x);
                self.extend(placed | 1 << x, prefix, out);
                prefix.pop();
            }
        }
    }

    pub fn is_linear_extension(&self, pi: &[usize]) -> bool {
        if pi.len() != self.len() {
            return false;
        }
        let mut placed = 0u64;
        for &x in pi {
            if x >= self.len() || placed >> x & 1 == 1 || self.below[x] & !placed != 0 {
                return false;
            }
            placed |= 1 << x;
        }
        true
    }

    /// The maximal chain `∅ ⊂ {π₁} ⊂ {π₁, π₂} ⊂ … ⊂ P` of `𝒥(P)`.
    pub fn maximal_chain(&self, pi: &[usize]) -> Result<Vec<u64>> {
        if !self.is_linear_extension(pi) {
            return Err(Error::NotLinearExtension(format!("{pi:?}")));
        }
        let mut acc = 0u64;
        let mut chain = vec![0];
        for &x in pi {
            acc |= 1 << x;
            chain.push(acc);
        }
        Ok(chain)
    }

    /// Splits `π` into maximal runs `π_j < π_{j+1} < …` (strict in `P`) and
    /// returns the prefixes ending each run except the last.
    pub fn c_sharp(&self, pi: &[usize]) -> Result<Vec<u64>> {
        if !self.is_linear_extension(pi) {
            return Err(Error::NotLinearExtension(format!("{pi:?}")));
        }
        let mut out = Vec::new();
        let mut acc = 0u64;
        for (j, &x) in pi.iter().enumerate() {
            acc |= 1 << x;
            let run_ends = pi.get(j + 1).is_some_and(|&y| !self.less(x, y));
            if run_ends {
                out.push(acc);
            }
        }
        Ok(out)
    }

    pub fn ideal_label(&self, ideal: u64) -> String {
        let names: Vec<&str> = members(ideal).into_iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn to_spec(&self) -> PosetSpec {
        let mut relations = Vec::new();
        for b in 0..self.len() {
            for a in 0..self.len() {
                if self.less(a, b) {
                    relations.push((self.labels[a].clone(), self.labels[b].clone()));
                }
            }
        }
        PosetSpec { elements: self.labels.clone(), relations }
    }
}

pub fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// `𝒥(P)` ordered by inclusion, together with the ideal masks that index it.
pub fn lattice_of_ideals(p: &FinitePoset) -> Result<(FinitePoset, Vec<u64>)> {
    let ideals = p.ideals();
    if ideals.len() > 64 {
        return Err(Error::InvalidArgument(format!("lattice has {} elements, more than 64", ideals.len())));
    }
    let mut rel = Vec::new();
    for (i, &a) in ideals.iter().enumerate() {
        for (j, &b) in ideals.iter().enumerate() {
            if a != b && a & b == a {
                rel.push((i, j));
            }
        }
    }
    let labels = ideals.iter().map(|&m| p.ideal_label(m)).collect();
    Ok((FinitePoset::new(labels, &rel)?, ideals))
}

/// Order complex of `𝒥(P)`: vertex `k + 1` is the `k`-th ideal of
/// [`FinitePoset::ideals`], faces are chains.
#[derive(Clone, Debug)]
pub struct OrderComplex {
    pub poset: FinitePoset,
    pub ideals: Vec<u64>,
    pub complex: SimplicialComplex,
}

impl OrderComplex {
    pub fn build(p: &FinitePoset) -> Result<Self> {
        let ideals = p.ideals();
        if ideals.len() > 64 {
            return Err(Error::InvalidArgument(format!("lattice has {} elements, more than 64", ideals.len())));
        }
        let mut facets = Vec::new();
        for pi in p.linear_extensions() {
            let chain = p.maximal_chain(&pi)?;
            facets.push(chain_face(&ideals, &chain));
        }
        let complex = SimplicialComplex::from_masks(ideals.len(), facets)?;
        Ok(OrderComplex { poset: p.clone(), ideals, complex })
    }

    pub fn face(&self, chain: &[u64]) -> u64 {
        chain_face(&self.ideals, chain)
    }

    /// `u_{C♯}` for every linear extension, deduplicated, in graded order.
    pub fn trace_gens(&self) -> Result<Vec<Monomial>> {
        let mut out: Vec<Monomial> = Vec::new();
        for pi in self.poset.linear_extensions() {
            let m = self.complex.monomial(self.face(&self.poset.c_sharp(&pi)?));
            if !out.contains(&m) {
                out.push(m);
            }
        }
        out.sort();
        Ok(out)
    }

    /// The intervals `[u_{C♯}, u_{C_π}]` in the divisor poset of `K{Δ(L)}`, one per
    /// linear extension.
    pub fn interval_decomposition(&self, dp: &DivisorPoset) -> Result<Vec<Interval>> {
        let mut out = Vec::new();
        for pi in self.poset.linear_extensions() {
            let bottom = self.complex.monomial(self.face(&self.poset.c_sharp(&pi)?));
            let top = self.complex.monomial(self.face(&self.poset.maximal_chain(&pi)?));
            let view = dp.view(std::slice::from_ref(&bottom))?;
            out.push(Interval { extension: pi, bottom, top, view });
        }
        Ok(out)
    }
}

fn chain_face(ideals: &[u64], chain: &[u64]) -> u64 {
    chain.iter().fold(0u64, |acc, m| {
        let k = ideals.iter().position(|x| x == m).expect("chain element is an ideal");
        acc | 1 << k
    })
}

#[derive(Clone, Debug)]
pub struct Interval {
    pub extension: Vec<usize>,
    pub bottom: Monomial,
    pub top: Monomial,
    pub view: PosetIdealView,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub intervals: usize,
    pub disjoint: bool,
    pub covers_trace: bool,
    pub all_symmetric: bool,
    pub socles_are_facets: bool,
}

/// Checks that the intervals partition the trace of `K{Δ(L)}` into symmetric
/// pieces whose socles are the facets.
pub fn check_decomposition(oc: &OrderComplex) -> Result<DecompositionReport> {
    let dp = DivisorPoset::build(&oc.complex.kdelta_ideal())?;
    check_decomposition_in(oc, &dp)
}

/// As [`check_decomposition`], reusing the divisor poset of `K{Δ(L)}`.
pub fn check_decomposition_in(oc: &OrderComplex, dp: &DivisorPoset) -> Result<DecompositionReport> {
    let intervals = oc.interval_decomposition(dp)?;
    let trace = hom::trace_view(dp);
    let mut hits = vec![0usize; dp.len()];
    let mut all_symmetric = true;
    let mut socles_are_facets = true;
    for iv in &intervals {
        for k in iv.view.member_indices() {
            hits[k] += 1;
        }
        all_symmetric &= hom::is_symmetric(dp, &iv.view)?.is_some();
        socles_are_facets &= iv.view.soc_monomials(dp) == vec![iv.top.clone()];
    }
    let disjoint = hits.iter().all(|&h| h <= 1);
    let covers_trace = (0..dp.len()).all(|k| (hits[k] > 0) == trace.contains(k));
    Ok(DecompositionReport { intervals: intervals.len(), disjoint, covers_trace, all_symmetric, socles_are_facets })
}
