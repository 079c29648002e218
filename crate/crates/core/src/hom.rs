//! Multigraded homomorphisms `ω_R → R` on the divisor poset.
//!
//! `ω_R` has basis `v*` (`v ∈ 𝒫`) with `x_i·v* = (v/x_i)*` when `x_i | v`
//! and `0` otherwise. A homomorphism of degree `m` sends `u* ↦ c_u·m/u`.
//! Linearity in each `x_i` ties the scalars of neighbouring sources
//! together or forces them to vanish:
//!
//! * `c_u = c_{u·x_i}` when both `u` and `u·x_i` are live (`u | m` and
//!   `m/u ∈ 𝒫`);
//! * (A) `c_u = 0` when `u·x_i ∈ 𝒫` is not live;
//! * (B) `c_u = 0` when `x_i ∤ u` but `(m/u)·x_i ∈ 𝒫`.
//!
//! A source/target pair `(u, m/u)` is identified by two poset indices, so
//! none of the walks below needs the degree `m` itself.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::cover::{min_cover, CoverOutcome};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::poset::{DivisorPoset, PosetIdealView};

/// Dominance-reduced degree count above which the Teter number is not computed.
pub const COVER_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomComponent {
    /// Source indices `u`, ascending.
    pub support: Vec<usize>,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomComponentSet {
    pub degree: Monomial,
    pub live: Vec<usize>,
    pub components: Vec<HomComponent>,
}

impl HomComponentSet {
    pub fn nonzero(&self) -> impl Iterator<Item = &HomComponent> {
        self.components.iter().filter(|c| !c.zero)
    }

    /// Dimension of the space of degree-`m` homomorphisms.
    pub fn dimension(&self) -> usize {
        self.nonzero().count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TeterVerdict {
    Yes,
    No,
    Gorenstein,
}

impl TeterVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            TeterVerdict::Yes => "yes",
            TeterVerdict::No => "no",
            TeterVerdict::Gorenstein => "gorenstein",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeImage {
    pub degree: Monomial,
    pub generators: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub trace_generators: Vec<Monomial>,
    pub degree_images: Vec<DegreeImage>,
    pub gorenstein: bool,
    pub nearly_gorenstein: bool,
    pub teter_type_multigraded: TeterVerdict,
    pub witness_degree: Option<Monomial>,
    pub teter_number_multigraded: Option<usize>,
}

impl TraceReport {
    pub fn trace(&self, vars: &[String]) -> MonomialIdeal {
        MonomialIdeal::new(vars.to_vec(), self.trace_generators.clone()).expect("trace generators share the ring arity")
    }
}

/// Set of index pairs: a bitmap when `|𝒫|²` is small, a hash set otherwise.
enum PairSet {
    Dense { len: usize, bits: Vec<u64> },
    Sparse(HashSet<(usize, usize)>),
}

impl PairSet {
    const DENSE_LIMIT: usize = 1 << 27;

    fn new(len: usize) -> Self {
        if len * len <= Self::DENSE_LIMIT {
            PairSet::Dense { len, bits: vec![0; (len * len).div_ceil(64)] }
        } else {
            PairSet::Sparse(HashSet::new())
        }
    }

    fn contains(&self, (u, w): (usize, usize)) -> bool {
        match self {
            PairSet::Dense { len, bits } => {
                let k = u * len + w;
                bits[k / 64] >> (k % 64) & 1 == 1
            }
            PairSet::Sparse(set) => set.contains(&(u, w)),
        }
    }

    fn insert(&mut self, (u, w): (usize, usize)) -> bool {
        match self {
            PairSet::Dense { len, bits } => {
                let k = u * *len + w;
                let fresh = bits[k / 64] >> (k % 64) & 1 == 0;
                bits[k / 64] |= 1 << (k % 64);
                fresh
            }
            PairSet::Sparse(set) => set.insert((u, w)),
        }
    }
}

/// Walks the component of the pair `(u, w)`; returns its pairs and
/// whether rule (A) or (B) fires anywhere on it.
fn explore(p: &DivisorPoset, seed: (usize, usize), visited: &mut PairSet) -> (Vec<(usize, usize)>, bool) {
    let n = p.arity();
    let mut pairs = vec![seed];
    let mut stack = vec![seed];
    visited.insert(seed);
    let mut zero = false;
    while let Some((u, w)) = stack.pop() {
        for i in 0..n {
            if let Some(up) = p.times(u, i) {
                match p.divided(w, i) {
                    Some(wd) => {
                        if visited.insert((up, wd)) {
                            pairs.push((up, wd));
                            stack.push((up, wd));
                        }
                    }
                    None => zero = true,
                }
            }
            match p.divided(u, i) {
                Some(ud) => {
                    if let Some(wt) = p.times(w, i) {
                        if visited.insert((ud, wt)) {
                            pairs.push((ud, wt));
                            stack.push((ud, wt));
                        }
                    }
                }
                None => {
                    if p.times(w, i).is_some() {
                        zero = true;
                    }
                }
            }
        }
    }
    (pairs, zero)
}

/// All products `u·w` with `u, w ∈ 𝒫`, in graded order.
pub fn candidate_degrees(p: &DivisorPoset) -> Vec<Monomial> {
    let mut out: HashSet<Monomial> = HashSet::new();
    for u in p.elements() {
        for w in p.elements() {
            out.insert(u.mul(w));
        }
    }
    let mut v: Vec<Monomial> = out.into_iter().collect();
    v.sort();
    v
}

pub fn hom_components(p: &DivisorPoset, m: &Monomial) -> HomComponentSet {
    let mut live = Vec::new();
    let mut target = Vec::new();
    for (k, u) in p.elements().iter().enumerate() {
        if let Some(w) = m.div(u).and_then(|w| p.index_of(&w)) {
            live.push(k);
            target.push(w);
        }
    }
    let mut visited = PairSet::Sparse(HashSet::new());
    let mut components = Vec::new();
    for (&u, &w) in live.iter().zip(&target) {
        if visited.contains((u, w)) {
            continue;
        }
        let (pairs, zero) = explore(p, (u, w), &mut visited);
        let mut support: Vec<usize> = pairs.into_iter().map(|(u, _)| u).collect();
        support.sort_unstable();
        components.push(HomComponent { support, zero });
    }
    components.sort_by(|a, b| a.support.cmp(&b.support));
    HomComponentSet { degree: m.clone(), live, components }
}

/// Image of the generic degree-`m` homomorphism, as a view of `𝒫`.
pub fn degree_image_view(p: &DivisorPoset, m: &Monomial) -> PosetIdealView {
    let set = hom_components(p, m);
    let targets: Vec<usize> = set
        .nonzero()
        .flat_map(|c| c.support.iter().map(|&u| p.index_of(&m.div(p.element(u)).expect("live source divides m")).expect("live target")))
        .collect();
    p.view_of_indices(&targets)
}

pub fn degree_image(p: &DivisorPoset, m: &Monomial) -> MonomialIdeal {
    degree_image_view(p, m).to_ideal(p)
}

/// Every degree with a nonzero image, mapped to that image.
///
/// The image of a nonflagged component is itself a poset ideal, so it
/// contains a socle monomial `s`; seeding the walk from every pair
/// `(u, s)` therefore reaches every nonzero component without scanning all
/// candidate degrees.
pub fn nonzero_degree_images(p: &DivisorPoset) -> BTreeMap<Monomial, PosetIdealView> {
    let mut visited = PairSet::new(p.len());
    let mut targets: BTreeMap<Monomial, Vec<usize>> = BTreeMap::new();
    for &s in p.socle() {
        for u in 0..p.len() {
            if visited.contains((u, s)) {
                continue;
            }
            let (pairs, zero) = explore(p, (u, s), &mut visited);
            if zero {
                continue;
            }
            let m = p.element(u).mul(p.element(s));
            targets.entry(m).or_default().extend(pairs.into_iter().map(|(_, w)| w));
        }
    }
    targets.into_iter().map(|(m, ws)| (m, p.view_of_indices(&ws))).collect()
}

/// The trace as a poset ideal: the union of all degree images.
pub fn trace_view(p: &DivisorPoset) -> PosetIdealView {
    trace_from_images(p, &nonzero_degree_images(p))
}

fn trace_from_images(p: &DivisorPoset, images: &BTreeMap<Monomial, PosetIdealView>) -> PosetIdealView {
    let mut members = vec![false; p.len()];
    for v in images.values() {
        for (slot, &b) in members.iter_mut().zip(v.members()) {
            *slot |= b;
        }
    }
    p.view_of_members(members).expect("a union of poset ideals is a poset ideal")
}

pub fn trace_multigraded(p: &DivisorPoset) -> Result<TraceReport> {
    let images = nonzero_degree_images(p);
    let trace = trace_from_images(p, &images);
    let gorenstein = p.is_gorenstein();
    let vars_in_trace = (0..p.arity()).all(|i| {
        let x = Monomial::var(p.arity(), i);
        p.ideal().contains(&x) || p.index_of(&x).is_some_and(|k| trace.contains(k))
    });

    let (verdict, witness) = verdict_from_images(p, &images, &trace)?;
    let number = if gorenstein {
        None
    } else {
        cover_from_images(&images, &trace)?.map(|(k, _)| k)
    };

    Ok(TraceReport {
        trace_generators: trace.gen_monomials(p),
        degree_images: images
            .iter()
            .map(|(m, v)| DegreeImage { degree: m.clone(), generators: v.gen_monomials(p) })
            .collect(),
        gorenstein,
        nearly_gorenstein: vars_in_trace,
        teter_type_multigraded: verdict,
        witness_degree: witness,
        teter_number_multigraded: number,
    })
}

fn verdict_from_images(
    p: &DivisorPoset,
    images: &BTreeMap<Monomial, PosetIdealView>,
    trace: &PosetIdealView,
) -> Result<(TeterVerdict, Option<Monomial>)> {
    if p.is_gorenstein() {
        return Ok((TeterVerdict::Gorenstein, None));
    }
    let witness = images.iter().find(|(_, v)| v.members() == trace.members()).map(|(m, _)| m.clone());
    let symmetric = is_symmetric(p, trace)?;
    if witness != symmetric {
        return Err(Error::Inconsistent(format!(
            "degree-image witness {witness:?} disagrees with the symmetric degree {symmetric:?} of the trace"
        )));
    }
    Ok(match witness {
        Some(m) => (TeterVerdict::Yes, Some(m)),
        None => (TeterVerdict::No, None),
    })
}

pub fn teter_type_multigraded(p: &DivisorPoset) -> Result<(TeterVerdict, Option<Monomial>)> {
    let images = nonzero_degree_images(p);
    let trace = trace_from_images(p, &images);
    verdict_from_images(p, &images, &trace)
}

fn cover_from_images(
    images: &BTreeMap<Monomial, PosetIdealView>,
    trace: &PosetIdealView,
) -> Result<Option<(usize, Vec<Monomial>)>> {
    let gens = trace.gen();
    let degrees: Vec<&Monomial> = images.keys().collect();
    let sets: Vec<Vec<usize>> = images
        .values()
        .map(|v| (0..gens.len()).filter(|&g| v.contains(gens[g])).collect())
        .collect();
    match min_cover(gens.len(), &sets, COVER_CAP) {
        CoverOutcome::Cover(chosen) => {
            let ws: Vec<Monomial> = chosen.into_iter().map(|i| degrees[i].clone()).collect();
            Ok(Some((ws.len(), ws)))
        }
        CoverOutcome::TooLarge { .. } => Ok(None),
        CoverOutcome::Uncoverable => Err(Error::Inconsistent("degree images do not cover the trace".into())),
    }
}

/// Fewest multigraded homomorphisms whose images sum to the trace, with
/// their degrees. `None` when the reduced search exceeds [`COVER_CAP`].
pub fn teter_number_multigraded(p: &DivisorPoset) -> Result<Option<(usize, Vec<Monomial>)>> {
    if p.is_gorenstein() {
        return Err(Error::Gorenstein);
    }
    let images = nonzero_degree_images(p);
    let trace = trace_from_images(p, &images);
    cover_from_images(&images, &trace)
}

/// The degree `m` with `u ↦ m/u` a bijection `Gen(V) → Soc(V)`, if any.
pub fn is_symmetric(p: &DivisorPoset, v: &PosetIdealView) -> Result<Option<Monomial>> {
    are_companions(p, v, v)
}

/// The degree `m` making `V2` a companion of `V1`: `d ↦ m/d` maps
/// `Soc(V2)` onto `Gen(V1)` and `c ↦ m/c` maps `Gen(V2)` onto `Soc(V1)`.
pub fn are_companions(p: &DivisorPoset, v1: &PosetIdealView, v2: &PosetIdealView) -> Result<Option<Monomial>> {
    p.check_view(v1)?;
    p.check_view(v2)?;
    if v1.is_empty() || v2.is_empty() {
        return Ok(None);
    }
    let a0 = p.element(v1.gen()[0]);
    for &d in v2.soc() {
        let m = a0.mul(p.element(d));
        if companions_in_degree(p, v1, v2, &m) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Whether `V2` is a companion of `V1` in the given degree.
pub fn are_companions_in_degree(
    p: &DivisorPoset,
    v1: &PosetIdealView,
    v2: &PosetIdealView,
    m: &Monomial,
) -> Result<bool> {
    p.check_view(v1)?;
    p.check_view(v2)?;
    Ok(!v1.is_empty() && !v2.is_empty() && companions_in_degree(p, v1, v2, m))
}

fn companions_in_degree(p: &DivisorPoset, v1: &PosetIdealView, v2: &PosetIdealView, m: &Monomial) -> bool {
    if v1.gen().len() != v2.soc().len() || v1.soc().len() != v2.gen().len() {
        return false;
    }
    let soc1: HashSet<usize> = v1.soc().iter().copied().collect();
    let soc2: HashSet<usize> = v2.soc().iter().copied().collect();
    let hits = |from: &[usize], onto: &HashSet<usize>| {
        from.iter().all(|&k| {
            m.div(p.element(k)).and_then(|q| p.index_of(&q)).is_some_and(|q| onto.contains(&q))
        })
    };
    hits(v1.gen(), &soc2) && hits(v2.gen(), &soc1)
}

/// A companion of `V` and its degree. A companion of degree `m` must be
/// `{m/u : u ∈ V}`, and `m = a·d` with `a ∈ Gen(V)` and `d` a socle
/// monomial, so those are the only candidates.
pub fn is_tau_ideal(p: &DivisorPoset, v: &PosetIdealView) -> Result<Option<(PosetIdealView, Monomial)>> {
    if let Some(m) = is_symmetric(p, v)? {
        return Ok(Some((v.clone(), m)));
    }
    if v.is_empty() {
        return Ok(None);
    }
    let a0 = p.element(v.gen()[0]);
    let members = v.member_indices();
    'candidates: for &s in p.socle() {
        let m = a0.mul(p.element(s));
        let mut mask = vec![false; p.len()];
        for &u in &members {
            match m.div(p.element(u)).and_then(|q| p.index_of(&q)) {
                Some(q) => mask[q] = true,
                None => continue 'candidates,
            }
        }
        let Ok(companion) = p.view_of_members(mask) else { continue };
        if are_companions(p, v, &companion)?.as_ref() == Some(&m) {
            return Ok(Some((companion, m)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalTau {
    /// Defining ideal of `R = S/((x^c) + J)`.
    pub ring: MonomialIdeal,
    /// Image of `((x^c) : J)` in `R`, lifted to `S` by its generators in `𝒫`.
    pub ideal: MonomialIdeal,
    /// `J·J ⊆ (x^c)`, i.e. `J ⊆ 0 :_G J`.
    pub symmetric_claimed: bool,
}

/// For `G = S/(x_1^{c_1}, …, x_n^{c_n})` and `J ⊂ G`, the image of
/// `0 :_G J` in `R = G/J`.
pub fn natural_tau_ideal(c: &[u32], j: &MonomialIdeal) -> Result<NaturalTau> {
    let n = c.len();
    if j.arity() != n {
        return Err(Error::ArityMismatch { expected: n, found: j.arity() });
    }
    if c.contains(&0) {
        return Err(Error::InvalidArgument("pure-power exponents must be at least 1".into()));
    }
    if j.is_zero() {
        return Err(Error::InvalidArgument("J must be nonzero".into()));
    }
    if j.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let g = MonomialIdeal::new(j.vars().to_vec(), (0..n).map(|i| Monomial::pure_power(n, i, c[i])).collect())?;
    if g.contains_ideal(j) {
        return Err(Error::InvalidArgument("J is zero in G".into()));
    }
    let ring = g.sum(j)?;
    let colon = g.colon(j)?;
    let p = DivisorPoset::build(&ring)?;
    let inside: Vec<usize> = colon.generators().iter().filter_map(|u| p.index_of(u)).collect();
    let ideal = p.view_of_indices(&inside).to_ideal(&p);
    let symmetric_claimed = g.contains_ideal(&j.product(j)?);
    Ok(NaturalTau { ring, ideal, symmetric_claimed })
}
