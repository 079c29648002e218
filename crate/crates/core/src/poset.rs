//! The divisor poset `𝒫` of `R = S/I`.
//!
//! Order orientation: `u ≼ v` iff `v | u`, so `1` is the top element and the
//! socle monomials are the bottom. A poset ideal is closed downward, i.e.
//! under multiplication inside `𝒫`. `Gen` of a poset ideal is its set of
//! divisibility-minimal members, `Soc` its divisibility-maximal ones.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

#[derive(Clone, Debug)]
pub struct DivisorPoset {
    ideal: MonomialIdeal,
    elements: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    times: Vec<Vec<Option<usize>>>,
    divided: Vec<Vec<Option<usize>>>,
    socle: Vec<usize>,
    fingerprint: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetRecord {
    pub elements: Vec<Vec<u32>>,
    pub upper_covers: Vec<Vec<usize>>,
}

impl DivisorPoset {
    pub fn build(ideal: &MonomialIdeal) -> Result<Self> {
        let elements = ideal.standard_monomials()?;
        let n = ideal.arity();
        let index: HashMap<Monomial, usize> =
            elements.iter().enumerate().map(|(k, u)| (u.clone(), k)).collect();
        let mut times = Vec::with_capacity(elements.len());
        let mut divided = Vec::with_capacity(elements.len());
        for u in &elements {
            times.push((0..n).map(|i| index.get(&u.times_var(i)).copied()).collect::<Vec<_>>());
            divided.push((0..n).map(|i| u.div_var(i).and_then(|v| index.get(&v).copied())).collect::<Vec<_>>());
        }
        let socle = (0..elements.len())
            .filter(|&k| times[k].iter().all(Option::is_none))
            .collect();
        let mut h = DefaultHasher::new();
        ideal.generators().hash(&mut h);
        n.hash(&mut h);
        Ok(DivisorPoset { ideal: ideal.clone(), elements, index, times, divided, socle, fingerprint: h.finish() })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn arity(&self) -> usize {
        self.ideal.arity()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &Monomial {
        &self.elements[k]
    }

    pub fn index_of(&self, u: &Monomial) -> Option<usize> {
        self.index.get(u).copied()
    }

    /// Index of `u·x_i` when it lies in `𝒫`.
    pub fn times(&self, k: usize, i: usize) -> Option<usize> {
        self.times[k][i]
    }

    /// Index of `u/x_i` when `x_i | u`.
    pub fn divided(&self, k: usize, i: usize) -> Option<usize> {
        self.divided[k][i]
    }

    /// Elements `v` with `u = v·x_i`, i.e. the neighbours above `u`.
    pub fn upper_covers(&self, k: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.divided[k].iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// Elements `u·x_i` inside `𝒫`.
    pub fn lower_covers(&self, k: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.times[k].iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// Indices of the minimal elements, which are the socle monomials.
    pub fn socle(&self) -> &[usize] {
        &self.socle
    }

    pub fn socle_monomials(&self) -> Vec<Monomial> {
        self.socle.iter().map(|&k| self.elements[k].clone()).collect()
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socle.len() == 1
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn cover_count(&self) -> usize {
        self.times.iter().map(|row| row.iter().flatten().count()).sum()
    }

    pub fn monomial_name(&self, k: usize) -> String {
        self.elements[k].display_with(self.ideal.vars())
    }

    fn lookup(&self, u: &Monomial) -> Result<usize> {
        if u.arity() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: u.arity() });
        }
        self.index_of(u).ok_or_else(|| Error::NotInPoset(u.display_with(self.ideal.vars())))
    }

    /// Poset ideal generated by the given monomials.
    pub fn view(&self, gens: &[Monomial]) -> Result<PosetIdealView> {
        let idx = gens.iter().map(|g| self.lookup(g)).collect::<Result<Vec<_>>>()?;
        Ok(self.view_of_indices(&idx))
    }

    pub fn view_of_indices(&self, gens: &[usize]) -> PosetIdealView {
        let mut members = vec![false; self.len()];
        let mut list: Vec<usize> = Vec::new();
        for &g in gens {
            if !members[g] {
                members[g] = true;
                list.push(g);
            }
        }
        let mut next = 0;
        while next < list.len() {
            let k = list[next];
            next += 1;
            for &t in self.times[k].iter().flatten() {
                if !members[t] {
                    members[t] = true;
                    list.push(t);
                }
            }
        }
        list.sort_unstable();
        self.view_from_list(members, &list)
    }

    /// View of an already downward-closed member set.
    pub fn view_of_members(&self, members: Vec<bool>) -> Result<PosetIdealView> {
        if members.len() != self.len() {
            return Err(Error::InvalidArgument("member mask has the wrong length".into()));
        }
        for k in 0..self.len() {
            if members[k] && self.times[k].iter().flatten().any(|&t| !members[t]) {
                return Err(Error::InvalidArgument(format!(
                    "member set is not a poset ideal: {} is missing a multiple",
                    self.monomial_name(k)
                )));
            }
        }
        Ok(self.view_of_closed(members))
    }

    fn view_of_closed(&self, members: Vec<bool>) -> PosetIdealView {
        let list: Vec<usize> = (0..self.len()).filter(|&k| members[k]).collect();
        self.view_from_list(members, &list)
    }

    /// `list` holds the members in ascending order.
    fn view_from_list(&self, members: Vec<bool>, list: &[usize]) -> PosetIdealView {
        let mut gen = Vec::new();
        let mut soc = Vec::new();
        for &k in list {
            if !self.divided[k].iter().flatten().any(|&d| members[d]) {
                gen.push(k);
            }
            if self.times[k].iter().all(Option::is_none) {
                soc.push(k);
            }
        }
        PosetIdealView { fingerprint: self.fingerprint, members, gen, soc }
    }

    /// The unit ideal of `R`, all of `𝒫`.
    pub fn whole(&self) -> PosetIdealView {
        self.view_of_closed(vec![true; self.len()])
    }

    pub fn check_view(&self, view: &PosetIdealView) -> Result<()> {
        if view.fingerprint != self.fingerprint || view.members.len() != self.len() {
            return Err(Error::ForeignView);
        }
        Ok(())
    }

    /// Hasse diagram in DOT. Edges point from each element to its upper
    /// covers; nodes of equal total degree share a rank.
    pub fn to_dot(&self, highlight: Option<&PosetIdealView>) -> Result<String> {
        if let Some(v) = highlight {
            self.check_view(v)?;
        }
        let mut out = String::from("digraph divisor_poset {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        let top = self.elements.last().map_or(0, Monomial::degree);
        for d in 0..=top {
            let ranked: Vec<usize> = (0..self.len()).filter(|&k| self.elements[k].degree() == d).collect();
            if ranked.is_empty() {
                continue;
            }
            out.push_str("  { rank=same;");
            for k in ranked {
                let _ = write!(out, " n{k};");
            }
            out.push_str(" }\n");
        }
        for k in 0..self.len() {
            let styled = highlight.is_some_and(|v| v.members[k]);
            let style = if styled { ", shape=box, style=filled, fillcolor=lightblue" } else { "" };
            let _ = writeln!(out, "  n{k} [label=\"{}\"{style}];", self.monomial_name(k));
        }
        for k in 0..self.len() {
            for up in self.upper_covers(k) {
                let _ = writeln!(out, "  n{k} -> n{up};");
            }
        }
        out.push_str("}\n");
        Ok(out)
    }

    pub fn to_record(&self) -> PosetRecord {
        PosetRecord {
            elements: self.elements.iter().map(|u| u.exps().to_vec()).collect(),
            upper_covers: (0..self.len()).map(|k| self.upper_covers(k)).collect(),
        }
    }
}

/// A monomial ideal of `R` seen as a poset ideal of `𝒫`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetIdealView {
    fingerprint: u64,
    members: Vec<bool>,
    gen: Vec<usize>,
    soc: Vec<usize>,
}

impl PosetIdealView {
    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, k: usize) -> bool {
        self.members[k]
    }

    pub fn member_indices(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&k| self.members[k]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.gen.is_empty()
    }

    pub fn gen(&self) -> &[usize] {
        &self.gen
    }

    pub fn soc(&self) -> &[usize] {
        &self.soc
    }

    pub fn gen_monomials(&self, p: &DivisorPoset) -> Vec<Monomial> {
        self.gen.iter().map(|&k| p.element(k).clone()).collect()
    }

    pub fn soc_monomials(&self, p: &DivisorPoset) -> Vec<Monomial> {
        self.soc.iter().map(|&k| p.element(k).clone()).collect()
    }

    pub fn member_monomials(&self, p: &DivisorPoset) -> Vec<Monomial> {
        self.member_indices().into_iter().map(|k| p.element(k).clone()).collect()
    }

    /// The ideal of `R` lifted to `S`: generated by `Gen` in the ring's
    /// variables. The empty view gives the zero ideal.
    pub fn to_ideal(&self, p: &DivisorPoset) -> MonomialIdeal {
        MonomialIdeal::new(p.ideal().vars().to_vec(), self.gen_monomials(p)).expect("view arity matches poset")
    }

    pub fn union(&self, p: &DivisorPoset, other: &PosetIdealView) -> Result<PosetIdealView> {
        p.check_view(self)?;
        p.check_view(other)?;
        let members = self.members.iter().zip(&other.members).map(|(a, b)| *a || *b).collect();
        Ok(p.view_of_closed(members))
    }
}
