//! Acceptance gate: prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use teter_core::families::{self, AciSpec, PowerQuotientSpec};
use teter_core::hom::{self, TeterVerdict};
use teter_core::lattice::{FinitePoset, OrderComplex};
use teter_core::linalg::{self, RandomSense, RandomVerdict, DEFAULT_PRIME, DEFAULT_TRIALS};
use teter_core::selfcheck::{self, Mismatch};
use teter_core::simplicial::{self, face_of, SimplicialComplex};
use teter_core::{DivisorPoset, Monomial, MonomialIdeal};

type Outcome = Result<String, String>;

fn m(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

fn poset(rows: &[&[u32]]) -> DivisorPoset {
    DivisorPoset::build(&MonomialIdeal::from_exponents(rows[0].len(), rows).unwrap()).unwrap()
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn engine_trace(ring: &MonomialIdeal) -> (Vec<Monomial>, TeterVerdict) {
    let p = DivisorPoset::build(ring).unwrap();
    let r = hom::trace_multigraded(&p).unwrap();
    (sorted(r.trace_generators), r.teter_type_multigraded)
}

fn criterion_1() -> Outcome {
    let p = poset(&[&[4, 0], &[0, 4], &[2, 2]]);
    let r = hom::trace_multigraded(&p).map_err(|e| e.to_string())?;
    ensure(sorted(r.trace_generators.clone()) == vec![m(&[2, 0]), m(&[0, 2])], || {
        format!("trace of (x^4,y^4,x^2y^2) is {:?}", r.trace_generators)
    })?;
    ensure(r.teter_type_multigraded == TeterVerdict::Yes && r.witness_degree == Some(m(&[3, 3])), || {
        format!("verdict {:?} witness {:?}", r.teter_type_multigraded, r.witness_degree)
    })?;
    let p = poset(&[&[3, 0], &[0, 3], &[1, 1]]);
    let r = hom::trace_multigraded(&p).map_err(|e| e.to_string())?;
    ensure(sorted(r.trace_generators.clone()) == vec![m(&[1, 0]), m(&[0, 1])], || {
        format!("trace of (x^3,y^3,xy) is {:?}", r.trace_generators)
    })?;
    ensure(r.teter_type_multigraded == TeterVerdict::No, || format!("verdict {:?}", r.teter_type_multigraded))?;
    Ok("(x^2,y^2) yes at x^3y^3; (x,y) no".into())
}

fn criterion_2() -> Outcome {
    let a = poset(&[&[3, 0], &[0, 3], &[1, 1]]);
    let b = poset(&[&[3, 0], &[0, 4], &[1, 1]]);
    let (v, _) = hom::teter_type_multigraded(&a).unwrap();
    ensure(v == TeterVerdict::No, || format!("(x^3,y^3,xy) multigraded {v:?}"))?;
    for seed in 0..=4 {
        let g = linalg::teter_type_randomized(&a, RandomSense::Graded, DEFAULT_PRIME, DEFAULT_TRIALS, seed).unwrap();
        ensure(g.verdict == RandomVerdict::Yes && g.witness_total_degree == Some(3), || {
            format!("seed {seed}: (x^3,y^3,xy) graded {:?} at {:?}", g.verdict, g.witness_total_degree)
        })?;
        let g = linalg::teter_type_randomized(&b, RandomSense::Graded, DEFAULT_PRIME, DEFAULT_TRIALS, seed).unwrap();
        ensure(g.verdict == RandomVerdict::ProbablyNo, || format!("seed {seed}: (x^3,y^4,xy) graded {:?}", g.verdict))?;
        let l = linalg::teter_type_randomized(&b, RandomSense::Local, DEFAULT_PRIME, DEFAULT_TRIALS, seed).unwrap();
        ensure(l.verdict == RandomVerdict::Yes, || format!("seed {seed}: (x^3,y^4,xy) local {:?}", l.verdict))?;
    }
    Ok("multi no / graded yes(3); graded probably_no / local yes; seeds 0-4".into())
}

struct CorpusRun {
    samples: usize,
    exhaustive: usize,
    companion_pairs: usize,
    mismatches: Vec<Mismatch>,
}

fn corpus_run() -> CorpusRun {
    let ideals = selfcheck::ideal_corpus(200, 3, 4, 0);
    let mut run = CorpusRun { samples: ideals.len(), exhaustive: 0, companion_pairs: 0, mismatches: Vec::new() };
    for (i, ideal) in ideals.iter().enumerate() {
        let (stats, mism) = selfcheck::check_ideal(i, ideal, DEFAULT_PRIME);
        run.exhaustive += usize::from(stats.exhaustive);
        run.companion_pairs += stats.companion_pairs;
        run.mismatches.extend(mism);
    }
    run
}

fn filtered(run: &CorpusRun, checks: &[&str]) -> Vec<String> {
    run.mismatches
        .iter()
        .filter(|x| checks.contains(&x.check.as_str()) || x.check == "engine_error")
        .map(|x| format!("sample {} {} [{}]: {}", x.sample, x.input, x.check, x.detail))
        .collect()
}

fn criterion_3(run: &CorpusRun) -> Outcome {
    let bad = filtered(run, &["trace_oracle", "slice_dimension", "candidate_route"]);
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} random ideals, 0 mismatches", run.samples))
}

fn criterion_4(run: &CorpusRun) -> Outcome {
    let bad = filtered(run, &["symmetric_union", "teter_symmetric", "teter_number", "gorenstein_trace"]);
    ensure(bad.is_empty(), || bad.join("; "))?;
    ensure(run.exhaustive > 0, || "no instance small enough for exhaustive enumeration".into())?;
    Ok(format!("{} instances with |P| <= 12", run.exhaustive))
}

fn criterion_5() -> Outcome {
    let mut tested = 0;
    for n in 2..=3usize {
        let a_space = product(n, 2, 4);
        for a in &a_space {
            let b_space: Vec<Vec<u32>> =
                product(n, 0, 3).into_iter().filter(|b| b.iter().zip(a).all(|(bi, ai)| bi < ai)).collect();
            for b in b_space {
                if b.iter().filter(|&&x| x > 0).count() < 2 {
                    continue;
                }
                let spec = AciSpec::new(a.clone(), b.clone()).unwrap();
                let (trace, teter) = families::aci_trace_and_type(&spec);
                let (engine, verdict) = engine_trace(&spec.ideal());
                let formula = sorted(trace.generators().to_vec());
                ensure(formula == engine, || format!("a={a:?} b={b:?}: formula {formula:?}, engine {engine:?}"))?;
                ensure(teter == (verdict == TeterVerdict::Yes), || {
                    format!("a={a:?} b={b:?}: flag {teter}, engine {verdict:?}")
                })?;
                tested += 1;
            }
        }
    }
    Ok(format!("{tested} specs"))
}

fn product(n: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (lo..=hi).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn criterion_6() -> Outcome {
    let mut counts = [0; 3];
    for n in 2..=3usize {
        for a in product(n, 1, 3) {
            let min = *a.iter().min().unwrap();
            for k in 1..=min {
                let spec = PowerQuotientSpec::new(a.clone(), k).unwrap();
                let ring = families::power_quotient_ideal(&spec).unwrap();
                let trace = families::chopin_trace(&spec).unwrap();
                let ok = families::verify_against_engine(&ring, &trace, true).unwrap();
                ensure(ok, || format!("chopin a={a:?} k={k}"))?;
                counts[0] += 1;
            }
        }
    }
    for n in 2..=6usize {
        for k in 1..n as u32 {
            let (trace, teter) = families::mozart(n, k).unwrap();
            let ring = families::power_quotient_ideal(&families::mozart_spec(n, k).unwrap()).unwrap();
            ensure(teter == (k as usize <= n - k as usize), || format!("mozart n={n} k={k} flag {teter}"))?;
            let (engine, verdict) = engine_trace(&ring);
            ensure(sorted(trace.clone()) == engine, || format!("mozart n={n} k={k} trace"))?;
            ensure(teter == (verdict == TeterVerdict::Yes), || format!("mozart n={n} k={k}: engine {verdict:?}"))?;
            counts[1] += 1;
        }
    }
    for a in 2..=4 {
        for b in a..=4 {
            for k in 1..=a + b - 2 {
                let e = families::ci2_trace(a, b, k).unwrap();
                let ring = families::ci2_ideal(a, b, k).unwrap();
                let trace = families::maximal_power_in_ring(&ring, e).unwrap();
                let ok = families::verify_against_engine(&ring, &trace, true).unwrap();
                ensure(ok, || format!("ci2 a={a} b={b} k={k} e={e}"))?;
                counts[2] += 1;
            }
        }
    }
    Ok(format!("chopin {}, mozart {}, ci2 {} cases", counts[0], counts[1], counts[2]))
}

fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::from_facets(n, &facets.iter().map(|f| f.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn face_monomials(c: &SimplicialComplex, faces: &[Vec<usize>]) -> Vec<Monomial> {
    sorted(faces.iter().map(|f| c.monomial(face_of(f))).collect())
}

fn criterion_7() -> Outcome {
    let cycle = |n: usize| {
        let facets: Vec<Vec<usize>> = (1..n).map(|i| vec![i, i + 1]).chain([vec![1, n]]).collect();
        SimplicialComplex::from_facets(n, &facets).unwrap()
    };
    let golden: Vec<(&str, SimplicialComplex, Vec<Vec<usize>>)> = vec![
        ("(a)", cx(4, &[&[1, 2, 3], &[3, 4]]), vec![vec![1], vec![2], vec![4]]),
        ("(b)", cx(4, &[&[1, 2, 3], &[1, 2, 4]]), vec![vec![3], vec![4]]),
        ("(f)", cx(4, &[&[1, 2], &[3, 4]]), vec![vec![1], vec![2], vec![3], vec![4]]),
        ("(g) n=4", cycle(4), vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]),
        ("(g) n=5", cycle(5), vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![1, 5]]),
        ("Δ_3", cycle(3), vec![vec![1], vec![2], vec![3]]),
        (
            "RP^2",
            cx(
                6,
                &[
                    &[1, 2, 4], &[1, 3, 4], &[2, 4, 5], &[3, 4, 6], &[4, 5, 6],
                    &[2, 3, 5], &[1, 3, 5], &[1, 5, 6], &[1, 2, 6], &[2, 3, 6],
                ],
            ),
            (1..=6).flat_map(|i| (i + 1..=6).map(move |j| vec![i, j])).collect(),
        ),
    ];
    for (name, c, gens) in &golden {
        let (engine, _) = engine_trace(&c.kdelta_ideal());
        let expected = face_monomials(c, gens);
        ensure(engine == expected, || format!("{name}: engine {engine:?}, expected {expected:?}"))?;
    }
    ensure(!golden[5].1.is_flag() && !golden[6].1.is_flag(), || "Δ_3 and RP^2 should not be flag".into())?;
    let d3 = &golden[5].1;
    let free: Vec<Monomial> = sorted(d3.minimal_free_faces().into_iter().map(|f| d3.monomial(f)).collect());
    ensure(free != engine_trace(&d3.kdelta_ideal()).0, || "Δ_3 free faces coincide with its trace".into())?;

    let mut corpus: Vec<SimplicialComplex> = golden.into_iter().map(|(_, c, _)| c).collect();
    corpus.push(cx(5, &[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5]]));
    corpus.push(cx(6, &[&[1, 4, 5], &[2, 5, 6], &[3, 4, 6], &[4, 5, 6]]));
    corpus.push(cx(6, &[&[1, 4], &[2, 5], &[3, 6], &[4, 5, 6]]));
    corpus.extend(selfcheck::flag_corpus(60, 6, 7));
    let mut flag = 0;
    for (i, c) in corpus.iter().enumerate().filter(|(_, c)| c.is_flag()) {
        let (_, mism) = selfcheck::check_flag_complex(i, c);
        ensure(mism.is_empty(), || format!("{:?}", mism))?;
        flag += 1;
    }
    Ok(format!("7 golden complexes, free-face law on {flag} flag complexes"))
}

fn engine_sets(c: &SimplicialComplex) -> (BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>) {
    let p = DivisorPoset::build(&c.kdelta_ideal()).unwrap();
    let sets = |ms: Vec<Monomial>| ms.iter().map(|m| m.support().into_iter().map(|i| i + 1).collect()).collect();
    (sets(p.socle_monomials()), sets(hom::trace_view(&p).gen_monomials(&p)))
}

fn criterion_8() -> Outcome {
    let (perm, tau) = simplicial::path_sequences(7).unwrap();
    let perm7: BTreeSet<Vec<usize>> = [
        vec![1, 3, 5, 7], vec![1, 3, 6], vec![1, 4, 6], vec![1, 4, 7], vec![2, 4, 6], vec![2, 4, 7], vec![2, 5, 7],
    ]
    .into_iter()
    .collect();
    let tau7: BTreeSet<Vec<usize>> = [
        vec![1, 5], vec![3, 5], vec![3, 7], vec![3, 6], vec![1, 4, 6], vec![1, 4, 7], vec![2, 6], vec![2, 4, 7],
        vec![2, 5],
    ]
    .into_iter()
    .collect();
    ensure(perm.len() == 7 && perm.iter().cloned().collect::<BTreeSet<_>>() == perm7, || format!("n=7 permissible {perm:?}"))?;
    ensure(tau.len() == 9 && tau.iter().cloned().collect::<BTreeSet<_>>() == tau7, || format!("n=7 τ-permissible {tau:?}"))?;
    for n in 2..=9 {
        let (perm, tau) = simplicial::path_sequences(n).unwrap();
        let c = simplicial::independence_complex(n, &simplicial::path_graph(n)).unwrap();
        let (soc, gen) = engine_sets(&c);
        ensure(soc == perm.into_iter().collect(), || format!("path n={n}: socle"))?;
        ensure(gen == tau.into_iter().collect(), || format!("path n={n}: trace generators"))?;
    }
    for n in 3..=9 {
        let (socs, gens) = simplicial::cycle_sequences(n).unwrap();
        let c = simplicial::independence_complex(n, &simplicial::cycle_graph(n)).unwrap();
        let (soc, gen) = engine_sets(&c);
        ensure(soc == socs.into_iter().collect(), || format!("cycle n={n}: socle"))?;
        ensure(gen == gens.into_iter().collect(), || format!("cycle n={n}: trace generators"))?;
    }
    Ok("n=7 lists exact; paths 2..9 and cycles 3..9 match the engine".into())
}

/// Naturally labeled posets on `n` elements, one per isomorphism class.
fn posets_up_to_iso(n: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let rel: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p).collect();
        let closed = rel.iter().all(|&(a, b)| rel.iter().filter(|&&(c, _)| c == b).all(|&(_, d)| rel.contains(&(a, d))));
        if !closed {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| sorted(rel.iter().map(|&(a, b)| (p[a], p[b])).collect::<Vec<_>>()))
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(FinitePoset::new((1..=n).map(|i| format!("a{i}")).collect(), &rel).unwrap());
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let p = FinitePoset::from_json(
        r#"{"elements":["a1","a2","a3","a4"],"relations":[["a1","a3"],["a2","a3"],["a2","a4"]]}"#,
    )
    .unwrap();
    let words: Vec<String> =
        p.linear_extensions().iter().map(|pi| pi.iter().map(|x| (x + 1).to_string()).collect()).collect();
    ensure(words == ["1234", "1243", "2134", "2143", "2413"], || format!("extensions {words:?}"))?;
    let expected: [&[&str]; 5] = [
        &["{a1}", "{a1,a2,a3}"],
        &["{a1}", "{a1,a2,a4}"],
        &["{a2}", "{a1,a2,a3}"],
        &["{a2}", "{a1,a2}", "{a1,a2,a4}"],
        &["{a2,a4}"],
    ];
    for (pi, want) in p.linear_extensions().iter().zip(expected) {
        let got: Vec<String> = p.c_sharp(pi).unwrap().into_iter().map(|m| p.ideal_label(m)).collect();
        ensure(got == want, || format!("C♯ of {pi:?}: {got:?}"))?;
    }

    let mut tested = 0;
    for n in 1..=5 {
        for q in posets_up_to_iso(n) {
            let oc = OrderComplex::build(&q).unwrap();
            let formula = oc.trace_gens().unwrap();
            let dp = DivisorPoset::build(&oc.complex.kdelta_ideal()).unwrap();
            let engine = sorted(hom::trace_view(&dp).gen_monomials(&dp));
            ensure(formula == engine, || format!("{:?}: formula {formula:?}, engine {engine:?}", q.to_spec()))?;
            let d = teter_core::lattice::check_decomposition_in(&oc, &dp).unwrap();
            ensure(d.disjoint && d.covers_trace && d.all_symmetric && d.socles_are_facets, || {
                format!("{:?}: decomposition {d:?}", q.to_spec())
            })?;
            // C_π is the only facet over C♯, and every free face lies over some C♯
            let sharps: Vec<u64> = q
                .linear_extensions()
                .iter()
                .map(|pi| {
                    let s = oc.face(&q.c_sharp(pi).unwrap());
                    let facet = oc.face(&q.maximal_chain(pi).unwrap());
                    let over: Vec<u64> = oc.complex.facets().iter().copied().filter(|&f| f & s == s).collect();
                    assert_eq!(over, vec![facet]);
                    s
                })
                .collect();
            let all_free_covered = oc.complex.free_faces().iter().all(|&f| sharps.iter().any(|&s| s & !f == 0));
            ensure(all_free_covered, || format!("{:?}: free face without C♯", q.to_spec()))?;
            tested += 1;
        }
    }
    Ok(format!("N-shaped poset exact; {tested} posets with <= 5 elements"))
}

fn criterion_10(run: &CorpusRun) -> Outcome {
    let p = poset(&[&[3, 0], &[0, 4], &[1, 2]]);
    let i = p.view(&[m(&[1, 0])]).unwrap();
    let j = p.view(&[m(&[0, 2])]).unwrap();
    ensure(hom::is_symmetric(&p, &i).unwrap() == Some(m(&[3, 1])), || "homomorphism: I".into())?;
    ensure(hom::is_symmetric(&p, &j).unwrap() == Some(m(&[0, 5])), || "homomorphism: J".into())?;
    let u = i.union(&p, &j).unwrap();
    ensure(hom::is_tau_ideal(&p, &u).unwrap().is_none(), || "homomorphism: union accepted".into())?;

    let z = poset(&[&[5, 0], &[0, 4], &[2, 2], &[4, 1]]);
    let v1 = z.view(&[m(&[3, 0])]).unwrap();
    let v2 = z.view(&[m(&[1, 2]), m(&[0, 3])]).unwrap();
    ensure(hom::are_companions(&z, &v1, &v2).unwrap() == Some(m(&[4, 3])), || "Z: companion degree".into())?;
    ensure(hom::is_symmetric(&z, &v1).unwrap().is_none() && v1.gen().len() != v1.soc().len(), || {
        "Z: single ideal symmetric".into()
    })?;

    let q = poset(&[&[6, 0], &[4, 2], &[2, 4], &[1, 5], &[0, 6]]);
    let a = q.view(&[m(&[5, 0]), m(&[4, 1]), m(&[2, 2])]).unwrap();
    let b = q.view(&[m(&[2, 2]), m(&[0, 4])]).unwrap();
    ensure(hom::are_companions(&q, &a, &b).unwrap() == Some(m(&[5, 5])), || "I and J: companion degree".into())?;
    ensure(hom::is_symmetric(&q, &a.union(&q, &b).unwrap()).unwrap() == Some(m(&[5, 5])), || "I ∪ J".into())?;

    let bad = filtered(run, &["companion_union", "companion_in_trace"]);
    ensure(bad.is_empty(), || bad.join("; "))?;
    ensure(run.companion_pairs > 0, || "no companion pairs found".into())?;
    Ok(format!("3 examples; union law on {} companion pairs", run.companion_pairs))
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, std::time::Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn main() {
    let start = Instant::now();
    let (run, corpus_time) = {
        let t = Instant::now();
        (corpus_run(), t.elapsed())
    };
    println!("random corpus checked in {corpus_time:.1?}");
    let results: Vec<(usize, &str, (Outcome, std::time::Duration))> = vec![
        (1, "worked example traces", timed(criterion_1)),
        (2, "sense separation", timed(criterion_2)),
        (3, "oracle agreement", timed(|| criterion_3(&run))),
        (4, "symmetric-union law", timed(|| criterion_4(&run))),
        (5, "almost complete intersections", timed(criterion_5)),
        (6, "family formulas", timed(criterion_6)),
        (7, "simplicial golden vectors", timed(criterion_7)),
        (8, "paths and cycles", timed(criterion_8)),
        (9, "distributive lattices", timed(criterion_9)),
        (10, "companion algebra", timed(|| criterion_10(&run))),
    ];
    let mut failed = 0;
    for (k, name, (outcome, took)) in &results {
        match outcome {
            Ok(detail) => println!("criterion {k:>2} PASS  {name}: {detail} ({took:.1?})"),
            Err(why) => {
                failed += 1;
                println!("criterion {k:>2} FAIL  {name}: {why} ({took:.1?})");
            }
        }
    }
    println!("acceptance: {}/{} passed in {:.1?}", results.len() - failed, results.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
