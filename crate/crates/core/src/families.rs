//! Closed-form traces for named families of monomial algebras.
//!
//! Every formula here is evaluated without touching the engine. The
//! `verify_*` helpers run the engine separately and compare.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hom::{trace_multigraded, TeterVerdict};
use crate::ideal::{minimalize, power_of_maximal_ideal, MonomialIdeal};
use crate::monomial::Monomial;
use crate::poset::DivisorPoset;

/// `I = (x_1^{a_1}, …, x_n^{a_n}, x^b)` with `b_i < a_i` and at least two
/// positive `b_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AciSpec {
    a: Vec<u32>,
    b: Vec<u32>,
}

impl AciSpec {
    pub fn new(a: Vec<u32>, b: Vec<u32>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::ArityMismatch { expected: a.len(), found: b.len() });
        }
        if a.iter().zip(&b).any(|(ai, bi)| bi >= ai) {
            return Err(Error::InvalidArgument("need b_i < a_i for every i".into()));
        }
        if b.iter().filter(|&&bi| bi > 0).count() < 2 {
            return Err(Error::InvalidArgument("need at least two positive b_i".into()));
        }
        Ok(AciSpec { a, b })
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    pub fn ideal(&self) -> MonomialIdeal {
        let n = self.a.len();
        let mut gens: Vec<Monomial> = (0..n).map(|i| Monomial::pure_power(n, i, self.a[i])).collect();
        gens.push(Monomial::new(self.b.clone()));
        MonomialIdeal::from_generators(n, gens).expect("arity is consistent")
    }
}

/// Trace `(x_i^{a_i−b_i}, w/x_i^{b_i} : b_i > 0)` and whether two indices
/// satisfy `2b_j ≥ a_j`.
pub fn aci_trace_and_type(spec: &AciSpec) -> (MonomialIdeal, bool) {
    let n = spec.a.len();
    let w = Monomial::new(spec.b.clone());
    let mut gens = Vec::new();
    for i in (0..n).filter(|&i| spec.b[i] > 0) {
        gens.push(Monomial::pure_power(n, i, spec.a[i] - spec.b[i]));
        gens.push(w.div(&Monomial::pure_power(n, i, spec.b[i])).expect("x_i^{b_i} divides w"));
    }
    let heavy = (0..n).filter(|&i| 2 * spec.b[i] >= spec.a[i] && spec.b[i] > 0).count();
    let trace = MonomialIdeal::from_generators(n, gens).expect("arity is consistent");
    (trace, heavy >= 2)
}

/// `G = S/(x_1^{a_1+1}, …, x_n^{a_n+1})` and a power `k` of its maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerQuotientSpec {
    a: Vec<u32>,
    k: u32,
    /// Variable indices in ascending order of `a_i`.
    order: Vec<usize>,
}

impl PowerQuotientSpec {
    pub fn new(a: Vec<u32>, k: u32) -> Result<Self> {
        if a.is_empty() || a.iter().any(|&ai| ai < 1) {
            return Err(Error::InvalidArgument("need a_i >= 1".into()));
        }
        if k < 1 {
            return Err(Error::InvalidArgument("need k >= 1".into()));
        }
        if k > a.iter().sum::<u32>() {
            return Err(Error::InvalidArgument(format!("n^{k} is zero in G")));
        }
        let mut order: Vec<usize> = (0..a.len()).collect();
        order.sort_by_key(|&i| (a[i], i));
        Ok(PowerQuotientSpec { a, k, order })
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn min_a(&self) -> u32 {
        self.a[self.order[0]]
    }
}

/// Defining ideal of `G/(0 : 𝔫^k)`, i.e. `(x^{a+1}) : 𝔪^k`.
pub fn power_quotient_ideal(spec: &PowerQuotientSpec) -> Result<MonomialIdeal> {
    let n = spec.a.len();
    let g = MonomialIdeal::from_generators(n, (0..n).map(|i| Monomial::pure_power(n, i, spec.a[i] + 1)).collect())?;
    g.colon(&power_of_maximal_ideal(n, spec.k)?)
}

/// Exponent vectors `b` with `0 ≤ b_i ≤ bound_i` and `Σ b_i = k`.
fn bounded_compositions(bound: &[u32], k: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, bound: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == bound.len() {
            if left == 0 {
                out.push(Monomial::new(cur.clone()));
            }
            return;
        }
        for e in 0..=left.min(bound[i]) {
            cur.push(e);
            rec(i + 1, left - e, bound, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, bound, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Generators of the trace for `1 ≤ k ≤ min a_i`: all `b ≤ a` of total degree `k`.
/// One variable is rejected: that quotient is Gorenstein.
pub fn chopin_trace(spec: &PowerQuotientSpec) -> Result<Vec<Monomial>> {
    if spec.a.len() < 2 {
        return Err(Error::InvalidArgument("need at least two variables".into()));
    }
    if spec.k > spec.min_a() {
        return Err(Error::InvalidArgument(format!("need k <= min a_i = {}", spec.min_a())));
    }
    Ok(bounded_compositions(&spec.a, spec.k))
}

/// Squarefree case `a = (1, …, 1)`: generators of degree `min(k, n−k)` and
/// the Teter flag `k ≤ n−k`.
pub fn mozart(n: usize, k: u32) -> Result<(Vec<Monomial>, bool)> {
    if n < 2 || k < 1 || k as usize > n - 1 {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n-1, got n={n}, k={k}")));
    }
    let rest = n as u32 - k;
    let k0 = k.min(rest);
    Ok((bounded_compositions(&vec![1; n], k0), k <= rest))
}

pub fn mozart_spec(n: usize, k: u32) -> Result<PowerQuotientSpec> {
    PowerQuotientSpec::new(vec![1; n], k)
}

fn ci2_check(a: u32, b: u32, k: u32) -> Result<()> {
    if a < 2 || a > b || k < 1 || k + 2 > a + b {
        return Err(Error::InvalidArgument(format!("need 2 <= a <= b and 1 <= k <= a+b-2, got a={a}, b={b}, k={k}")));
    }
    Ok(())
}

/// `e` with `tr(ω_R) = 𝔪_R^e` for `R = K[x,y]/(x^a, y^b, 𝔪^k)`.
pub fn ci2_trace(a: u32, b: u32, k: u32) -> Result<u32> {
    ci2_check(a, b, k)?;
    Ok(if k <= a {
        k - 1
    } else if k <= b {
        a - 1
    } else {
        a + b - 1 - k
    })
}

pub fn ci2_ideal(a: u32, b: u32, k: u32) -> Result<MonomialIdeal> {
    ci2_check(a, b, k)?;
    let pure = MonomialIdeal::from_exponents(2, &[&[a, 0], &[0, b]])?;
    pure.sum(&power_of_maximal_ideal(2, k)?)
}

/// Generators of `𝔪_R^e` inside `R`, i.e. the degree-`e` standard monomials.
pub fn maximal_power_in_ring(ring: &MonomialIdeal, e: u32) -> Result<Vec<Monomial>> {
    let n = ring.arity();
    if e == 0 {
        return Ok(vec![Monomial::one(n)]);
    }
    Ok(power_of_maximal_ideal(n, e)?.generators().iter().filter(|u| !ring.contains(u)).cloned().collect())
}

fn check_beethoven(n: usize, w0: &Monomial) -> Result<()> {
    if w0.arity() != n {
        return Err(Error::ArityMismatch { expected: n, found: w0.arity() });
    }
    if !w0.is_squarefree() || w0.degree() < 2 {
        return Err(Error::InvalidArgument("w0 must be squarefree of degree at least 2".into()));
    }
    Ok(())
}

/// Variable indices (0-based) dividing `w0`.
pub fn beethoven_trace(n: usize, w0: &Monomial) -> Result<Vec<usize>> {
    check_beethoven(n, w0)?;
    Ok(w0.support())
}

pub fn beethoven_ideal(n: usize, w0: &Monomial) -> Result<MonomialIdeal> {
    check_beethoven(n, w0)?;
    let mut gens: Vec<Monomial> = (0..n).map(|i| Monomial::pure_power(n, i, 2)).collect();
    gens.push(w0.clone());
    MonomialIdeal::from_generators(n, gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: String,
    pub trace_generators: Vec<Monomial>,
    pub teter_type: bool,
    pub verified: Option<bool>,
}

/// Runs the engine on `ring` and compares its trace generators and verdict
/// with a formula's prediction. A Gorenstein verdict matches only a
/// predicted trace of `(1)`.
pub fn verify_against_engine(ring: &MonomialIdeal, predicted: &[Monomial], teter: bool) -> Result<bool> {
    let p = DivisorPoset::build(ring)?;
    let report = trace_multigraded(&p)?;
    let mut expected = minimalize(predicted.to_vec());
    expected.sort();
    let mut actual = report.trace_generators.clone();
    actual.sort();
    let verdict_ok = match report.teter_type_multigraded {
        TeterVerdict::Yes => teter,
        TeterVerdict::No => !teter,
        TeterVerdict::Gorenstein => expected.len() == 1 && expected[0].is_one(),
    };
    Ok(actual == expected && verdict_ok)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    /// `|Gen(I_1)|, …, |Gen(I_k)|`.
    pub generator_counts: Vec<usize>,
    pub strictly_increasing: bool,
    pub engine_trace: Vec<Monomial>,
    pub candidate: Vec<Monomial>,
    pub engine_verdict: TeterVerdict,
    /// Engine trace equals `I_k` and the engine says Teter type.
    pub agree: bool,
}

/// Gathers evidence on the open question of whether strictly growing
/// `|Gen(I_j)|` forces trace `= I_k` and Teter type. Reports; never asserts.
pub fn conjecture_probe(spec: &PowerQuotientSpec) -> Result<ProbeReport> {
    let counts: Vec<usize> = (1..=spec.k).map(|j| bounded_compositions(&spec.a, j).len()).collect();
    let increasing = counts.windows(2).all(|w| w[0] < w[1]);
    let ring = power_quotient_ideal(spec)?;
    let p = DivisorPoset::build(&ring)?;
    let report = trace_multigraded(&p)?;
    let candidate = bounded_compositions(&spec.a, spec.k);
    let mut engine = report.trace_generators.clone();
    engine.sort();
    let agree = engine == candidate && report.teter_type_multigraded == TeterVerdict::Yes;
    Ok(ProbeReport {
        generator_counts: counts,
        strictly_increasing: increasing,
        engine_trace: engine,
        candidate,
        engine_verdict: report.teter_type_multigraded,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(rows[0].len(), rows).unwrap()
    }

    #[test]
    fn aci_examples() {
        let (t, teter) = aci_trace_and_type(&AciSpec::new(vec![4, 4], vec![2, 2]).unwrap());
        assert_eq!(t, ideal(&[&[2, 0], &[0, 2]]));
        assert!(teter);
        let (t, teter) = aci_trace_and_type(&AciSpec::new(vec![3, 3], vec![1, 1]).unwrap());
        assert_eq!(t, ideal(&[&[1, 0], &[0, 1]]));
        assert!(!teter);
        let spec = AciSpec::new(vec![3, 4], vec![1, 1]).unwrap();
        let (t, teter) = aci_trace_and_type(&spec);
        assert_eq!(t, ideal(&[&[1, 0], &[0, 1]]));
        assert!(!teter);
        assert!(verify_against_engine(&spec.ideal(), t.generators(), teter).unwrap());
        assert!(AciSpec::new(vec![3, 3], vec![1, 0]).is_err());
        assert!(AciSpec::new(vec![3, 3], vec![3, 1]).is_err());
    }

    /// Brute-force colon over the box `[0, a_i+1]`.
    fn colon_scan(a: &[u32], k: u32) -> MonomialIdeal {
        let n = a.len();
        let g = MonomialIdeal::from_generators(n, (0..n).map(|i| Monomial::pure_power(n, i, a[i] + 1)).collect()).unwrap();
        let mk = power_of_maximal_ideal(n, k).unwrap();
        let mut gens = Vec::new();
        let sizes: Vec<u32> = a.iter().map(|&x| x + 2).collect();
        let total: u32 = sizes.iter().product();
        for code in 0..total {
            let mut c = code;
            let mut e = Vec::with_capacity(n);
            for &s in &sizes {
                e.push(c % s);
                c /= s;
            }
            let u = Monomial::new(e);
            if mk.generators().iter().all(|q| g.contains(&u.mul(q))) {
                gens.push(u);
            }
        }
        MonomialIdeal::from_generators(n, gens).unwrap()
    }

    #[test]
    fn power_quotients() {
        let spec = PowerQuotientSpec::new(vec![3, 3], 2).unwrap();
        assert_eq!(power_quotient_ideal(&spec).unwrap(), colon_scan(&[3, 3], 2));
        let spec = PowerQuotientSpec::new(vec![1, 1, 1], 1).unwrap();
        let expected = ideal(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 1]]);
        assert_eq!(power_quotient_ideal(&spec).unwrap(), expected);
        assert_eq!(colon_scan(&[1, 1, 1], 1), expected);
        assert!(PowerQuotientSpec::new(vec![1, 1], 2).is_ok());
        assert!(PowerQuotientSpec::new(vec![1, 1], 3).is_err());
        let spec = PowerQuotientSpec::new(vec![3, 1, 2], 1).unwrap();
        assert_eq!(spec.order(), &[1, 2, 0]);
        assert_eq!(spec.min_a(), 1);
    }

    #[test]
    fn chopin_examples() {
        let g = chopin_trace(&PowerQuotientSpec::new(vec![2, 2], 2).unwrap()).unwrap();
        assert_eq!(g, vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
        let g = chopin_trace(&PowerQuotientSpec::new(vec![3, 3], 1).unwrap()).unwrap();
        assert_eq!(g, vec![m(&[1, 0]), m(&[0, 1])]);
        let spec = PowerQuotientSpec::new(vec![2, 3], 2).unwrap();
        let g = chopin_trace(&spec).unwrap();
        assert_eq!(g, vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
        assert!(verify_against_engine(&power_quotient_ideal(&spec).unwrap(), &g, true).unwrap());
        assert!(chopin_trace(&PowerQuotientSpec::new(vec![1, 3], 2).unwrap()).is_err());
        assert!(chopin_trace(&PowerQuotientSpec::new(vec![2], 1).unwrap()).is_err());
    }

    #[test]
    fn mozart_examples() {
        let (g, t) = mozart(4, 2).unwrap();
        assert_eq!((g.len(), t), (6, true));
        let (g, t) = mozart(5, 3).unwrap();
        assert_eq!((g.len(), t), (10, false));
        assert!(g.iter().all(|u| u.degree() == 2));
        let (g, t) = mozart(3, 2).unwrap();
        assert_eq!(g, vec![m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])]);
        assert!(!t);
        assert!(mozart(3, 3).is_err() && mozart(3, 0).is_err());
    }

    #[test]
    fn ci2_examples() {
        assert_eq!(ci2_trace(3, 4, 2).unwrap(), 1);
        assert_eq!(ci2_trace(3, 4, 4).unwrap(), 2);
        assert_eq!(ci2_trace(3, 4, 5).unwrap(), 1);
        assert!(ci2_trace(3, 4, 6).is_err());
        assert!(ci2_trace(4, 3, 2).is_err());
        let ring = ci2_ideal(3, 4, 4).unwrap();
        let gens = maximal_power_in_ring(&ring, 2).unwrap();
        assert!(verify_against_engine(&ring, &gens, true).unwrap());
        let ring = ci2_ideal(2, 2, 1).unwrap();
        assert!(verify_against_engine(&ring, &maximal_power_in_ring(&ring, 0).unwrap(), true).unwrap());
    }

    #[test]
    fn beethoven_examples() {
        assert_eq!(beethoven_trace(4, &m(&[0, 0, 1, 1])).unwrap(), vec![2, 3]);
        assert_eq!(beethoven_trace(3, &m(&[1, 1, 1])).unwrap(), vec![0, 1, 2]);
        let w0 = m(&[1, 1, 0, 0, 0]);
        assert_eq!(beethoven_trace(5, &w0).unwrap(), vec![0, 1]);
        let ring = beethoven_ideal(5, &w0).unwrap();
        let gens: Vec<Monomial> = vec![Monomial::var(5, 0), Monomial::var(5, 1)];
        assert!(verify_against_engine(&ring, &gens, true).unwrap());
        assert!(beethoven_trace(3, &m(&[2, 1, 0])).is_err());
        assert!(beethoven_trace(3, &m(&[1, 0, 0])).is_err());
    }

    #[test]
    fn probes() {
        let r = conjecture_probe(&PowerQuotientSpec::new(vec![2, 2, 2], 3).unwrap()).unwrap();
        assert!(r.strictly_increasing && r.agree);
        let r = conjecture_probe(&PowerQuotientSpec::new(vec![3, 3], 2).unwrap()).unwrap();
        assert!(r.agree);
        let r = conjecture_probe(&PowerQuotientSpec::new(vec![1; 5], 3).unwrap()).unwrap();
        assert!(!r.agree);
        assert!(!r.strictly_increasing);
        assert_eq!(r.generator_counts, vec![5, 10, 10]);
    }
}
