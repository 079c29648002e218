//! Seeded random corpora and differential checks of the combinatorial engine
//! against the linear-algebra oracle and against its own structural laws.

use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::hom::{self, TeterVerdict};
use crate::ideal::MonomialIdeal;
use crate::linalg::{self, HomSense};
use crate::monomial::Monomial;
use crate::poset::{DivisorPoset, PosetIdealView};
use crate::simplicial::{independence_complex, SimplicialComplex};

/// Posets up to this size get the exhaustive poset-ideal checks.
pub const EXHAUSTIVE_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfcheckConfig {
    pub samples: usize,
    pub max_vars: usize,
    pub max_exp: u32,
    pub seed: u64,
    pub prime: u64,
}

impl Default for SelfcheckConfig {
    fn default() -> Self {
        SelfcheckConfig { samples: 200, max_vars: 3, max_exp: 4, seed: 0, prime: linalg::DEFAULT_PRIME }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub sample: usize,
    pub input: String,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SampleStats {
    pub checks: usize,
    pub companion_pairs: usize,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfcheckReport {
    pub config: SelfcheckConfig,
    pub ideals: usize,
    pub complexes: usize,
    pub checks: usize,
    pub exhaustive_samples: usize,
    pub companion_pairs: usize,
    pub mismatches: Vec<Mismatch>,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// A random Artinian monomial ideal: one pure power per variable plus up to
/// three mixed generators below those powers.
pub fn random_ideal(rng: &mut impl Rng, max_vars: usize, max_exp: u32) -> MonomialIdeal {
    let n = rng.gen_range(1..=max_vars.max(1));
    let a: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=max_exp.max(1))).collect();
    let mut gens: Vec<Monomial> = (0..n).map(|i| Monomial::pure_power(n, i, a[i])).collect();
    for _ in 0..rng.gen_range(0..=3) {
        let e: Vec<u32> = a.iter().map(|&ai| rng.gen_range(0..ai)).collect();
        let u = Monomial::new(e);
        if !u.is_one() {
            gens.push(u);
        }
    }
    MonomialIdeal::from_generators(n, gens).expect("arity is consistent")
}

pub fn ideal_corpus(samples: usize, max_vars: usize, max_exp: u32, seed: u64) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| random_ideal(&mut rng, max_vars, max_exp)).collect()
}

/// Independence complexes of random graphs on at most `max_vertices`
/// vertices, which are exactly the flag complexes.
pub fn flag_corpus(samples: usize, max_vertices: usize, seed: u64) -> Vec<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let n = rng.gen_range(1..=max_vertices.max(1));
            let mut edges = Vec::new();
            for a in 1..=n {
                for b in a + 1..=n {
                    if rng.gen_bool(0.4) {
                        edges.push((a, b));
                    }
                }
            }
            independence_complex(n, &edges).expect("simple graph")
        })
        .collect()
}

/// All poset ideals of `p`, including the empty one.
pub fn all_poset_ideals(p: &DivisorPoset) -> Vec<PosetIdealView> {
    assert!(p.len() <= 20, "exhaustive enumeration is limited to small posets");
    (0u32..1 << p.len())
        .filter_map(|mask| p.view_of_members((0..p.len()).map(|k| mask >> k & 1 == 1).collect()).ok())
        .collect()
}

struct Recorder<'a> {
    sample: usize,
    input: &'a str,
    stats: SampleStats,
    out: Vec<Mismatch>,
}

impl Recorder<'_> {
    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.stats.checks += 1;
        if !ok {
            self.out.push(Mismatch {
                sample: self.sample,
                input: self.input.to_string(),
                check: name.to_string(),
                detail: detail(),
            });
        }
    }

    fn fail(&mut self, name: &str, err: crate::Error) {
        self.check(name, false, || err.to_string());
    }
}

fn sorted(mut v: Vec<Monomial>) -> Vec<Monomial> {
    v.sort();
    v
}

/// Runs every ideal-level check on one sample.
pub fn check_ideal(sample: usize, ideal: &MonomialIdeal, prime: u64) -> (SampleStats, Vec<Mismatch>) {
    let input = ideal.to_expr();
    let mut rec = Recorder { sample, input: &input, stats: SampleStats::default(), out: Vec::new() };
    if let Err(e) = check_ideal_inner(&mut rec, ideal, prime) {
        rec.fail("engine_error", e);
    }
    (rec.stats, rec.out)
}

fn check_ideal_inner(rec: &mut Recorder, ideal: &MonomialIdeal, prime: u64) -> Result<()> {
    let p = DivisorPoset::build(ideal)?;
    let report = hom::trace_multigraded(&p)?;
    let engine = sorted(report.trace_generators.clone());

    match linalg::trace_oracle(&p, prime) {
        Ok(oracle) => {
            let oracle = sorted(oracle.generators().to_vec());
            rec.check("trace_oracle", oracle == engine, || format!("engine {engine:?}, oracle {oracle:?}"));
        }
        Err(e) => rec.fail("trace_oracle", e),
    }

    let trace = hom::trace_view(&p);
    let mut union = vec![false; p.len()];
    for m in hom::candidate_degrees(&p) {
        let set = hom::hom_components(&p, &m);
        let slice = linalg::hom_basis(&p, &HomSense::Multigraded(m.clone()), prime)?.dimension();
        let comps = set.dimension();
        rec.check("slice_dimension", slice == comps, || format!("degree {m:?}: kernel {slice}, components {comps}"));
        for k in hom::degree_image_view(&p, &m).member_indices() {
            union[k] = true;
        }
    }
    rec.check("candidate_route", union == trace.members(), || "candidate-degree union differs from trace".into());

    let symmetric = hom::is_symmetric(&p, &trace)?;
    match report.teter_type_multigraded {
        TeterVerdict::Gorenstein => {
            rec.check("gorenstein_trace", trace.len() == p.len(), || "Gorenstein ring with proper trace".into());
        }
        verdict => {
            let yes = verdict == TeterVerdict::Yes;
            rec.check("teter_symmetric", yes == symmetric.is_some(), || {
                format!("verdict {verdict:?}, symmetric degree {symmetric:?}")
            });
            if let Some(number) = report.teter_number_multigraded {
                rec.check("teter_number", yes == (number == 1), || format!("verdict {verdict:?}, number {number}"));
            }
        }
    }

    if p.len() <= EXHAUSTIVE_LIMIT {
        rec.stats.exhaustive = true;
        let ideals = all_poset_ideals(&p);
        let mut sym_union = vec![false; p.len()];
        for v in &ideals {
            if v.is_empty() {
                continue;
            }
            if hom::is_symmetric(&p, v)?.is_some() {
                for k in v.member_indices() {
                    sym_union[k] = true;
                }
            }
            if let Some((companion, m)) = hom::is_tau_ideal(&p, v)? {
                rec.stats.companion_pairs += 1;
                let both = v.union(&p, &companion)?;
                let ok = hom::are_companions_in_degree(&p, &both, &both, &m)?;
                rec.check("companion_union", ok, || {
                    format!("{:?} and {:?} in degree {m:?}", v.gen_monomials(&p), companion.gen_monomials(&p))
                });
                let inside = companion.member_indices().iter().all(|&k| trace.contains(k));
                rec.check("companion_in_trace", inside, || format!("companion of {:?}", v.gen_monomials(&p)));
            }
        }
        rec.check("symmetric_union", sym_union == trace.members(), || "union of symmetric ideals differs from trace".into());
    }
    Ok(())
}

/// Checks the free-face description of the trace on one flag complex.
pub fn check_flag_complex(sample: usize, c: &SimplicialComplex) -> (SampleStats, Vec<Mismatch>) {
    let input = serde_json::to_string(&c.to_record()).expect("record serializes");
    let mut rec = Recorder { sample, input: &input, stats: SampleStats::default(), out: Vec::new() };
    let run = |rec: &mut Recorder| -> Result<()> {
        let p = DivisorPoset::build(&c.kdelta_ideal())?;
        let engine = sorted(hom::trace_multigraded(&p)?.trace_generators);
        let formula = sorted(c.flag_trace_gens()?);
        rec.check("flag_free_faces", engine == formula, || format!("engine {engine:?}, free faces {formula:?}"));
        Ok(())
    };
    if let Err(e) = run(&mut rec) {
        rec.fail("engine_error", e);
    }
    (rec.stats, rec.out)
}

fn parallel_map<T: Sync, R: Send>(items: &[T], f: impl Fn(usize, &T) -> R + Sync) -> Vec<R> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                let f = &f;
                s.spawn(move || part.iter().enumerate().map(|(i, x)| f(c * chunk + i, x)).collect::<Vec<R>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Random ideals from `config`, plus a flag-complex corpus derived from the
/// same seed.
pub fn run(config: &SelfcheckConfig) -> Result<SelfcheckReport> {
    linalg::check_prime(config.prime)?;
    let ideals = ideal_corpus(config.samples, config.max_vars, config.max_exp, config.seed);
    let complexes = flag_corpus(config.samples.div_ceil(4), 6, config.seed ^ 0x5eed);
    let ideal_results = parallel_map(&ideals, |i, ideal| check_ideal(i, ideal, config.prime));
    let complex_results = parallel_map(&complexes, |i, c| check_flag_complex(ideals.len() + i, c));

    let mut report = SelfcheckReport {
        config: config.clone(),
        ideals: ideals.len(),
        complexes: complexes.len(),
        checks: 0,
        exhaustive_samples: 0,
        companion_pairs: 0,
        mismatches: Vec::new(),
    };
    for (stats, mism) in ideal_results.into_iter().chain(complex_results) {
        report.checks += stats.checks;
        report.exhaustive_samples += usize::from(stats.exhaustive);
        report.companion_pairs += stats.companion_pairs;
        report.mismatches.extend(mism);
    }
    Ok(report)
}
