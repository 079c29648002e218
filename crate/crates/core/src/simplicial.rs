//! Simplicial complexes on `[n]`, their squarefree algebras
//! `K{Δ} = S/(I_Δ, x_1², …, x_n²)`, and independence complexes of paths and
//! cycles.
//!
//! Faces are bitmasks: vertex `v` (1-based) is bit `v − 1`, so `n ≤ 64`.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

pub type Face = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

pub fn face_of(vertices: &[usize]) -> Face {
    vertices.iter().fold(0, |acc, &v| acc | 1 << (v - 1))
}

pub fn vertices_of(face: Face) -> Vec<usize> {
    (0..64).filter(|&b| face >> b & 1 == 1).map(|b| b + 1).collect()
}

fn sort_faces(faces: &mut [Face]) {
    faces.sort_by_key(|&f| (f.count_ones(), vertices_of(f)));
}

impl SimplicialComplex {
    /// Keeps the inclusion-maximal sets among `facets`.
    pub fn from_facets(n: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::InvalidArgument(format!("vertex count must be in 1..=64, got {n}")));
        }
        let mut masks = Vec::with_capacity(facets.len());
        for f in facets {
            if let Some(&v) = f.iter().find(|&&v| v < 1 || v > n) {
                return Err(Error::InvalidArgument(format!("vertex {v} is outside [1, {n}]")));
            }
            masks.push(face_of(f));
        }
        Self::from_masks(n, masks)
    }

    pub fn from_masks(n: usize, masks: Vec<Face>) -> Result<Self> {
        let covered = masks.iter().fold(0, |acc, f| acc | f);
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if covered & !full != 0 {
            return Err(Error::InvalidArgument("vertex outside the vertex set".into()));
        }
        if covered != full {
            let missing = vertices_of(full & !covered);
            return Err(Error::InvalidArgument(format!("vertices {missing:?} lie in no facet")));
        }
        let mut kept: Vec<Face> = Vec::new();
        for &f in &masks {
            let dominated = masks.iter().any(|&g| g != f && f & g == f);
            if !dominated && !kept.contains(&f) {
                kept.push(f);
            }
        }
        sort_faces(&mut kept);
        Ok(SimplicialComplex { n, facets: kept })
    }

    pub fn simplex(n: usize) -> Result<Self> {
        Self::from_facets(n, &[(1..=n).collect()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn contains(&self, face: Face) -> bool {
        self.facets.iter().any(|&f| face & f == face)
    }

    /// All faces, including the empty one, in (size, vertices) order.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen: HashSet<Face> = HashSet::new();
        for &f in &self.facets {
            // enumerate submasks of f
            let mut sub = f;
            loop {
                seen.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        let mut out: Vec<Face> = seen.into_iter().collect();
        sort_faces(&mut out);
        out
    }

    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        let mut out: BTreeSet<Face> = BTreeSet::new();
        for f in self.faces() {
            for v in 0..self.n {
                let bit = 1u64 << v;
                if f & bit != 0 {
                    continue;
                }
                let g = f | bit;
                if self.contains(g) {
                    continue;
                }
                let minimal = vertices_of(g).into_iter().all(|w| self.contains(g & !(1 << (w - 1))));
                if minimal {
                    out.insert(g);
                }
            }
        }
        let mut v: Vec<Face> = out.into_iter().collect();
        sort_faces(&mut v);
        v
    }

    pub fn is_flag(&self) -> bool {
        self.minimal_nonfaces().iter().all(|f| f.count_ones() == 2)
    }

    pub fn monomial(&self, face: Face) -> Monomial {
        Monomial::squarefree(self.n, vertices_of(face).into_iter().map(|v| v - 1))
    }

    /// `(I_Δ, x_1², …, x_n²)` in variables `x1 … xn`.
    pub fn kdelta_ideal(&self) -> MonomialIdeal {
        let mut gens: Vec<Monomial> = (0..self.n).map(|i| Monomial::pure_power(self.n, i, 2)).collect();
        gens.extend(self.minimal_nonfaces().into_iter().map(|f| self.monomial(f)));
        let vars = (1..=self.n).map(|i| format!("x{i}")).collect();
        MonomialIdeal::new(vars, gens).expect("arity is consistent")
    }

    /// Faces lying in exactly one facet.
    pub fn free_faces(&self) -> Vec<Face> {
        self.faces()
            .into_iter()
            .filter(|&f| self.facets.iter().filter(|&&g| f & g == f).count() == 1)
            .collect()
    }

    pub fn minimal_free_faces(&self) -> Vec<Face> {
        let free = self.free_faces();
        free.iter()
            .copied()
            .filter(|&f| !free.iter().any(|&g| g != f && g & f == g))
            .collect()
    }

    /// Monomials of the minimal free faces; the trace generators when `Δ` is flag.
    pub fn flag_trace_gens(&self) -> Result<Vec<Monomial>> {
        if !self.is_flag() {
            return Err(Error::NotFlag);
        }
        Ok(self.minimal_free_faces().into_iter().map(|f| self.monomial(f)).collect())
    }

    pub fn to_record(&self) -> ComplexRecord {
        ComplexRecord { n: self.n, facets: self.facets.iter().map(|&f| vertices_of(f)).collect() }
    }

    pub fn from_record(rec: &ComplexRecord) -> Result<Self> {
        Self::from_facets(rec.n, &rec.facets)
    }
}

/// Complex of independent sets of a simple graph on `[n]`.
pub fn independence_complex(n: usize, edges: &[(usize, usize)]) -> Result<SimplicialComplex> {
    if n == 0 || n > 64 {
        return Err(Error::InvalidArgument(format!("vertex count must be in 1..=64, got {n}")));
    }
    let mut adj = vec![0u64; n];
    for &(a, b) in edges {
        if a < 1 || b < 1 || a > n || b > n {
            return Err(Error::InvalidArgument(format!("edge ({a}, {b}) leaves [1, {n}]")));
        }
        if a == b {
            return Err(Error::InvalidArgument(format!("loop at vertex {a}")));
        }
        if adj[a - 1] >> (b - 1) & 1 == 1 {
            return Err(Error::InvalidArgument(format!("repeated edge ({a}, {b})")));
        }
        adj[a - 1] |= 1 << (b - 1);
        adj[b - 1] |= 1 << (a - 1);
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // maximal independent sets = maximal cliques of the complement graph
    let non_adj: Vec<u64> = (0..n).map(|v| all & !adj[v] & !(1 << v)).collect();
    let mut facets = Vec::new();
    bron_kerbosch(0, all, 0, &non_adj, &mut facets);
    SimplicialComplex::from_masks(n, facets)
}

fn bron_kerbosch(r: u64, mut p: u64, mut x: u64, nbr: &[u64], out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut candidates = p & !nbr[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u64 << v;
        bron_kerbosch(r | bit, p & nbr[v], x & nbr[v], nbr, out);
        p &= !bit;
        x |= bit;
        candidates &= !bit;
    }
}

pub fn path_graph(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i, i + 1)).collect()
}

pub fn cycle_graph(n: usize) -> Vec<(usize, usize)> {
    let mut e = path_graph(n);
    if n >= 3 {
        e.push((1, n));
    }
    e
}

/// All increasing sequences in `[n]`, shortest first, then lexicographic.
fn all_sequences(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u64..1 << n).map(vertices_of).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn padded(seq: &[usize], n: usize) -> Vec<i64> {
    let mut a = vec![-1i64];
    a.extend(seq.iter().map(|&x| x as i64));
    a.push(n as i64 + 2);
    a
}

pub fn is_permissible(seq: &[usize], n: usize) -> bool {
    padded(seq, n).windows(2).all(|w| matches!(w[1] - w[0], 2 | 3))
}

pub fn is_tau_permissible(seq: &[usize], n: usize) -> bool {
    let a = padded(seq, n);
    a.windows(2).all(|w| matches!(w[1] - w[0], 2..=4))
        && a.windows(3).all(|w| !(w[1] - w[0] == 2 && w[2] - w[1] == 2))
}

/// Two lists of vertex sets, e.g. socle sets and trace generator sets.
pub type SetLists = (Vec<Vec<usize>>, Vec<Vec<usize>>);

/// Permissible and τ-permissible sequences for the path `P_n`.
pub fn path_sequences(n: usize) -> Result<SetLists> {
    if !(2..=24).contains(&n) {
        return Err(Error::InvalidArgument(format!("path length must be in 2..=24, got {n}")));
    }
    let all = all_sequences(n);
    let perm = all.iter().filter(|s| is_permissible(s, n)).cloned().collect();
    let tau = all.iter().filter(|s| is_tau_permissible(s, n)).cloned().collect();
    Ok((perm, tau))
}

/// Arc lengths from each element of `F` to the next one around the cycle.
fn arcs(set: &[usize], n: usize) -> Vec<usize> {
    if set.len() == 1 {
        return vec![n];
    }
    (0..set.len())
        .map(|k| {
            let (a, b) = (set[k], set[(k + 1) % set.len()]);
            (b + n - a) % n
        })
        .collect()
}

pub fn is_cycle_socle_set(set: &[usize], n: usize) -> bool {
    if set.is_empty() {
        return false;
    }
    arcs(set, n).iter().all(|g| matches!(g, 2 | 3))
}

pub fn is_cycle_trace_set(set: &[usize], n: usize) -> bool {
    match set.len() {
        0 => false,
        1 => n == 3 || n == 4,
        _ => {
            let g = arcs(set, n);
            let window = g.iter().all(|x| matches!(x, 2..=4));
            // no element whose arcs on both sides have length 2
            let s = g.len();
            let pinched = (0..s).any(|k| g[k] == 2 && g[(k + s - 1) % s] == 2);
            window && !pinched
        }
    }
}

/// Facet sets and trace-generator sets for the cycle `C_n`.
pub fn cycle_sequences(n: usize) -> Result<SetLists> {
    if !(3..=24).contains(&n) {
        return Err(Error::InvalidArgument(format!("cycle length must be in 3..=24, got {n}")));
    }
    let all = all_sequences(n);
    let soc = all.iter().filter(|s| is_cycle_socle_set(s, n)).cloned().collect();
    let gen = all.iter().filter(|s| is_cycle_trace_set(s, n)).cloned().collect();
    Ok((soc, gen))
}
