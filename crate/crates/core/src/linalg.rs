//! Homomorphism spaces `ω_R → R` by plain linear algebra over `F_p`.
//!
//! The unknowns are the coefficients `c(v, w)` of `w` in `φ(v*)`. For every
//! `v, t ∈ 𝒫` and every variable `x_i`, comparing the coefficient of `t` in
//! `φ(x_i·v*)` and `x_i·φ(v*)` gives one linear equation
//!
//! `[x_i | v]·c(v/x_i, t) − [x_i | t]·c(v, t/x_i) = 0`.
//!
//! Nothing here looks at the component rules of [`crate::hom`]; the two are
//! compared in tests. This module also owns the graded and local Teter-type
//! decisions, made by sampling random homomorphisms.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::poset::DivisorPoset;

pub const DEFAULT_PRIME: u64 = 2_147_483_647;
pub const DEFAULT_TRIALS: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomSense {
    Full,
    /// Total degree `deg v + deg w`.
    Graded(u32),
    /// Multidegree `v·w`.
    Multigraded(Monomial),
}

impl HomSense {
    fn admits(&self, v: &Monomial, w: &Monomial) -> bool {
        match self {
            HomSense::Full => true,
            HomSense::Graded(d) => v.degree() + w.degree() == *d,
            HomSense::Multigraded(m) => v.mul(w) == *m,
        }
    }
}

/// A homomorphism given by its nonzero coefficients `(v, w, c(v, w))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearHom {
    pub entries: Vec<(usize, usize, u64)>,
}

#[derive(Clone, Debug)]
pub struct HomSolutionSpace {
    pub sense: HomSense,
    pub prime: u64,
    pub basis: Vec<LinearHom>,
}

impl HomSolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::CompositeModulus(p))
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Kernel basis of a dense system mod `p`, one vector per free column.
fn kernel(rows: Vec<Vec<u64>>, width: usize, p: u64) -> Vec<Vec<u64>> {
    let mut rows = rows;
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][col] != 0) else { continue };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][col], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            let f = row[col];
            if k != r && f != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - mul_mod(f, y, p)) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; width];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - rows[row][free]) % p;
        }
        out.push(v);
    }
    out
}

/// Basis of the degree-filtered homomorphism space.
pub fn hom_basis(p: &DivisorPoset, sense: &HomSense, prime: u64) -> Result<HomSolutionSpace> {
    check_prime(prime)?;
    let n = p.arity();
    let els = p.elements();
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let mut slot: HashMap<(usize, usize), usize> = HashMap::new();
    for v in 0..els.len() {
        for w in 0..els.len() {
            if sense.admits(&els[v], &els[w]) {
                slot.insert((v, w), unknowns.len());
                unknowns.push((v, w));
            }
        }
    }

    // each equation touches at most two unknowns: (index, coefficient)
    let mut equations: Vec<Vec<(usize, u64)>> = Vec::new();
    for v in 0..els.len() {
        for i in 0..n {
            let vd = p.divided(v, i);
            for t in 0..els.len() {
                let mut eq = Vec::with_capacity(2);
                if let Some(vd) = vd {
                    if let Some(&k) = slot.get(&(vd, t)) {
                        eq.push((k, 1));
                    }
                }
                if let Some(td) = p.divided(t, i) {
                    if let Some(&k) = slot.get(&(v, td)) {
                        eq.push((k, prime - 1));
                    }
                }
                if !eq.is_empty() {
                    equations.push(eq);
                }
            }
        }
    }

    let mut parent: Vec<usize> = (0..unknowns.len()).collect();
    for eq in &equations {
        if eq.len() == 2 {
            let (a, b) = (find(&mut parent, eq[0].0), find(&mut parent, eq[1].0));
            parent[a] = b;
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..unknowns.len() {
        let root = find(&mut parent, k);
        blocks.entry(root).or_default().push(k);
    }
    let mut block_eqs: HashMap<usize, Vec<&Vec<(usize, u64)>>> = HashMap::new();
    for eq in &equations {
        let root = find(&mut parent, eq[0].0);
        block_eqs.entry(root).or_default().push(eq);
    }

    let mut basis = Vec::new();
    for (root, members) in &blocks {
        let local: HashMap<usize, usize> = members.iter().enumerate().map(|(j, &k)| (k, j)).collect();
        let rows: Vec<Vec<u64>> = block_eqs
            .get(root)
            .map(|eqs| {
                eqs.iter()
                    .map(|eq| {
                        let mut row = vec![0; members.len()];
                        for &(k, c) in eq.iter() {
                            row[local[&k]] = (row[local[&k]] + c) % prime;
                        }
                        row
                    })
                    .collect()
            })
            .unwrap_or_default();
        for vec in kernel(rows, members.len(), prime) {
            let mut entries: Vec<(usize, usize, u64)> = vec
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(j, &c)| (unknowns[members[j]].0, unknowns[members[j]].1, c))
                .collect();
            entries.sort_unstable();
            basis.push(LinearHom { entries });
        }
    }
    basis.sort_by(|a, b| a.entries.cmp(&b.entries));
    Ok(HomSolutionSpace { sense: sense.clone(), prime, basis })
}

/// Checks `φ(x_i·v*) = x_i·φ(v*)` for every `v` and `i` by direct substitution.
pub fn satisfies_relations(p: &DivisorPoset, phi: &LinearHom, prime: u64) -> bool {
    let len = p.len();
    let mut images = vec![vec![0u64; len]; len];
    for &(v, w, c) in &phi.entries {
        images[v][w] = (images[v][w] + c) % prime;
    }
    for v in 0..len {
        for i in 0..p.arity() {
            let lhs = match p.divided(v, i) {
                Some(vd) => images[vd].clone(),
                None => vec![0; len],
            };
            let rhs = times_var(p, &images[v], i);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn times_var(p: &DivisorPoset, vec: &[u64], i: usize) -> Vec<u64> {
    let mut out = vec![0; vec.len()];
    for (w, &c) in vec.iter().enumerate() {
        if c != 0 {
            if let Some(t) = p.times(w, i) {
                out[t] = c;
            }
        }
    }
    out
}

/// Row-echelon span over `F_p` of vectors indexed by `𝒫`, grown into the
/// submodule they generate.
struct ModuleSpan<'a> {
    poset: &'a DivisorPoset,
    prime: u64,
    rows: BTreeMap<usize, Vec<u64>>,
}

impl<'a> ModuleSpan<'a> {
    fn new(poset: &'a DivisorPoset, prime: u64) -> Self {
        ModuleSpan { poset, prime, rows: BTreeMap::new() }
    }

    fn insert(&mut self, vec: Vec<u64>) {
        let mut queue = vec![vec];
        while let Some(mut v) = queue.pop() {
            for col in 0..v.len() {
                if v[col] == 0 {
                    continue;
                }
                match self.rows.get(&col) {
                    Some(row) => {
                        let f = v[col];
                        for (x, &r) in v.iter_mut().zip(row) {
                            *x = (*x + self.prime - mul_mod(f, r, self.prime)) % self.prime;
                        }
                    }
                    None => {
                        let inv = inv_mod(v[col], self.prime);
                        for x in v.iter_mut() {
                            *x = mul_mod(*x, inv, self.prime);
                        }
                        for i in 0..self.poset.arity() {
                            queue.push(times_var(self.poset, &v, i));
                        }
                        self.rows.insert(col, v);
                        break;
                    }
                }
            }
        }
    }

    fn dimension(&self) -> usize {
        self.rows.len()
    }

    fn support(&self) -> Vec<bool> {
        let mut s = vec![false; self.poset.len()];
        for row in self.rows.values() {
            for (slot, &c) in s.iter_mut().zip(row) {
                *slot |= c != 0;
            }
        }
        s
    }
}

fn image_vectors(p: &DivisorPoset, coeffs: &HashMap<(usize, usize), u64>, prime: u64) -> Vec<Vec<u64>> {
    let mut images = vec![vec![0u64; p.len()]; p.len()];
    for (&(v, w), &c) in coeffs {
        images[v][w] = (images[v][w] + c) % prime;
    }
    images.retain(|row| row.iter().any(|&c| c != 0));
    images
}

fn trace_span<'a>(p: &'a DivisorPoset, space: &HomSolutionSpace) -> ModuleSpan<'a> {
    let mut span = ModuleSpan::new(p, space.prime);
    for phi in &space.basis {
        let coeffs = phi.entries.iter().map(|&(v, w, c)| ((v, w), c)).collect();
        for vec in image_vectors(p, &coeffs, space.prime) {
            span.insert(vec);
        }
    }
    span
}

/// Trace recomputed from a basis of the full homomorphism space.
pub fn trace_oracle(p: &DivisorPoset, prime: u64) -> Result<MonomialIdeal> {
    let space = hom_basis(p, &HomSense::Full, prime)?;
    let span = trace_span(p, &space);
    let support = span.support();
    let size = support.iter().filter(|&&b| b).count();
    if size != span.dimension() {
        return Err(Error::Inconsistent(format!(
            "trace span has dimension {} but support of size {size}",
            span.dimension()
        )));
    }
    Ok(p.view_of_members(support)?.to_ideal(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RandomSense {
    Graded,
    Local,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomVerdict {
    Yes,
    ProbablyNo,
    Gorenstein,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomizedReport {
    pub sense: RandomSense,
    pub verdict: RandomVerdict,
    pub witness_total_degree: Option<u32>,
    pub prime: u64,
    pub trials: u32,
    pub seed: u64,
}

/// Samples random homomorphisms and answers `yes` as soon as one of them
/// maps onto the trace. In the graded sense each total degree is tried in
/// ascending order; in the local sense the whole space is sampled.
pub fn teter_type_randomized(
    p: &DivisorPoset,
    sense: RandomSense,
    prime: u64,
    trials: u32,
    seed: u64,
) -> Result<RandomizedReport> {
    check_prime(prime)?;
    if trials < 1 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let report = |verdict, witness_total_degree| RandomizedReport {
        sense,
        verdict,
        witness_total_degree,
        prime,
        trials,
        seed,
    };
    if p.is_gorenstein() {
        return Ok(report(RandomVerdict::Gorenstein, None));
    }
    let full = hom_basis(p, &HomSense::Full, prime)?;
    let target = trace_span(p, &full).dimension();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spaces: Vec<(Option<u32>, HomSolutionSpace)> = match sense {
        RandomSense::Local => vec![(None, full)],
        RandomSense::Graded => {
            let top = 2 * p.elements().last().map_or(0, Monomial::degree);
            let mut v = Vec::new();
            for d in 0..=top {
                let space = hom_basis(p, &HomSense::Graded(d), prime)?;
                if space.dimension() > 0 {
                    v.push((Some(d), space));
                }
            }
            v
        }
    };
    for (degree, space) in &spaces {
        for _ in 0..trials {
            let mut coeffs: HashMap<(usize, usize), u64> = HashMap::new();
            for phi in &space.basis {
                let r = rng.gen_range(0..prime);
                for &(v, w, c) in &phi.entries {
                    let e = coeffs.entry((v, w)).or_insert(0);
                    *e = (*e + mul_mod(r, c, prime)) % prime;
                }
            }
            let mut span = ModuleSpan::new(p, prime);
            for vec in image_vectors(p, &coeffs, prime) {
                span.insert(vec);
            }
            if span.dimension() == target {
                let witness = match sense {
                    RandomSense::Graded => *degree,
                    RandomSense::Local => None,
                };
                return Ok(report(RandomVerdict::Yes, witness));
            }
        }
    }
    Ok(report(RandomVerdict::ProbablyNo, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poset(rows: &[&[u32]]) -> DivisorPoset {
        DivisorPoset::build(&MonomialIdeal::from_exponents(rows[0].len(), rows).unwrap()).unwrap()
    }

    fn ideal(rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(rows[0].len(), rows).unwrap()
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(DEFAULT_PRIME));
        assert!(!is_prime(1) && !is_prime(0) && !is_prime(91) && !is_prime(3_215_031_751));
        assert!(is_prime(18_446_744_073_709_551_557));
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn kernel_dimensions() {
        let p = poset(&[&[3, 0], &[0, 3], &[1, 1]]);
        let s = hom_basis(&p, &HomSense::Multigraded(Monomial::new(vec![3, 0])), DEFAULT_PRIME).unwrap();
        assert_eq!(s.dimension(), 1);
        let s = hom_basis(&p, &HomSense::Multigraded(Monomial::new(vec![2, 2])), DEFAULT_PRIME).unwrap();
        assert_eq!(s.dimension(), 2);
        let g = poset(&[&[2, 0], &[0, 2]]);
        let s = hom_basis(&g, &HomSense::Full, DEFAULT_PRIME).unwrap();
        assert_eq!(s.dimension(), 4);
        assert!(s.basis.iter().all(|phi| satisfies_relations(&g, phi, DEFAULT_PRIME)));
        assert!(matches!(hom_basis(&g, &HomSense::Full, 15), Err(Error::CompositeModulus(15))));
    }

    #[test]
    fn relation_check_rejects_non_homs() {
        let p = poset(&[&[2, 0], &[0, 2]]);
        // 1* ↦ 1 alone is not linear: x·1* = 0 but x·1 ≠ 0
        let bad = LinearHom { entries: vec![(0, 0, 1)] };
        assert!(!satisfies_relations(&p, &bad, 7));
    }

    #[test]
    fn oracle_traces() {
        let p = poset(&[&[4, 0], &[0, 4], &[2, 2]]);
        assert_eq!(trace_oracle(&p, DEFAULT_PRIME).unwrap(), ideal(&[&[2, 0], &[0, 2]]));
        let p = poset(&[&[3, 0], &[0, 3], &[1, 1]]);
        assert_eq!(trace_oracle(&p, DEFAULT_PRIME).unwrap(), ideal(&[&[1, 0], &[0, 1]]));
        let p = poset(&[&[2, 0], &[0, 2]]);
        assert_eq!(trace_oracle(&p, DEFAULT_PRIME).unwrap(), ideal(&[&[0, 0]]));
    }

    #[test]
    fn randomized_senses() {
        let p = poset(&[&[3, 0], &[0, 3], &[1, 1]]);
        let r = teter_type_randomized(&p, RandomSense::Graded, DEFAULT_PRIME, 8, 0).unwrap();
        assert_eq!((r.verdict, r.witness_total_degree), (RandomVerdict::Yes, Some(3)));

        let q = poset(&[&[3, 0], &[0, 4], &[1, 1]]);
        let r = teter_type_randomized(&q, RandomSense::Graded, DEFAULT_PRIME, 8, 0).unwrap();
        assert_eq!(r.verdict, RandomVerdict::ProbablyNo);
        let r = teter_type_randomized(&q, RandomSense::Local, DEFAULT_PRIME, 8, 0).unwrap();
        assert_eq!(r.verdict, RandomVerdict::Yes);

        let g = poset(&[&[2, 0], &[0, 2]]);
        let r = teter_type_randomized(&g, RandomSense::Local, DEFAULT_PRIME, 8, 0).unwrap();
        assert_eq!(r.verdict, RandomVerdict::Gorenstein);
        assert!(teter_type_randomized(&p, RandomSense::Local, DEFAULT_PRIME, 0, 0).is_err());
        assert!(teter_type_randomized(&p, RandomSense::Local, 100, 8, 0).is_err());
    }

    #[test]
    fn verdict_json() {
        let p = poset(&[&[3, 0], &[0, 3], &[1, 1]]);
        let r = teter_type_randomized(&p, RandomSense::Graded, DEFAULT_PRIME, 8, 0).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"sense":"graded","verdict":"yes","witness_total_degree":3,"prime":2147483647,"trials":8,"seed":0}"#
        );
        assert_eq!(serde_json::from_str::<RandomizedReport>(&text).unwrap(), r);
    }
}
