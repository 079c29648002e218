//! The `teter` command line.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::families::{self, AciSpec, FamilyReport, PowerQuotientSpec};
use crate::hom;
use crate::ideal::{parse_ideal, parse_ideal_expr, MonomialIdeal};
use crate::lattice::{self, FinitePoset, OrderComplex};
use crate::linalg::{self, RandomSense};
use crate::monomial::Monomial;
use crate::poset::{DivisorPoset, PosetIdealView};
use crate::selfcheck::{self, SelfcheckConfig};
use crate::simplicial::{self, ComplexRecord, SimplicialComplex};

#[derive(Parser, Debug)]
#[command(name = "teter", version, about = "Canonical traces and Teter type of Artinian monomial algebras")]
pub struct Cli {
    /// Output format; `dot` only applies to `poset`.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct IdealArg {
    /// File path, `-` for stdin, or an inline ideal such as `x^3,y^3,x*y`.
    pub ideal: String,

    /// Comma-separated variable names for expression input.
    #[arg(long)]
    pub vars: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sense {
    Multi,
    Graded,
    Local,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Trace of the canonical module with the multigraded verdicts.
    Trace {
        #[command(flatten)]
        input: IdealArg,
    },
    /// Decide Teter type in the multigraded, graded or local sense.
    TeterType {
        #[command(flatten)]
        input: IdealArg,
        #[arg(long, value_enum, default_value_t = Sense::Multi)]
        sense: Sense,
        #[arg(long, default_value_t = linalg::DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = linalg::DEFAULT_TRIALS)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fewest multigraded homomorphisms whose images sum to the trace.
    TeterNumber {
        #[command(flatten)]
        input: IdealArg,
    },
    /// The divisor poset of standard monomials.
    Poset {
        #[command(flatten)]
        input: IdealArg,
        /// Emit Graphviz DOT (same as `--format dot`).
        #[arg(long)]
        dot: bool,
        /// Highlight the trace in DOT output.
        #[arg(long)]
        highlight_trace: bool,
    },
    /// Whether the poset ideal generated by `--gens` is symmetric.
    Symmetric {
        #[command(flatten)]
        input: IdealArg,
        #[arg(long)]
        gens: String,
    },
    /// Whether two poset ideals are companions; without `--j`, searches for one.
    Companion {
        #[command(flatten)]
        input: IdealArg,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: Option<String>,
    },
    /// Closed-form traces of named families.
    Family {
        #[command(subcommand)]
        family: Family,
    },
    /// Evidence on growing generator counts of `(x^{a+1}) : 𝔪^j`.
    ProbeConjecture {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u32>,
        #[arg(long)]
        k: u32,
    },
    /// Differential checks against the linear-algebra oracle on a random corpus.
    Selfcheck {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
        #[arg(long, default_value_t = 4)]
        max_exp: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = linalg::DEFAULT_PRIME)]
        prime: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Family {
    /// `(x_1^{a_1}, …, x_n^{a_n}, x^b)`.
    Aci {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u32>,
        #[arg(long)]
        verify: bool,
    },
    /// `(x^{a+1}) : 𝔪^k` and its engine trace.
    PowerQuotient {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u32>,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        verify: bool,
    },
    /// Trace of `(x^{a+1}) : 𝔪^k` for `k ≤ min a`.
    Chopin {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u32>,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        verify: bool,
    },
    /// Squarefree case `a = (1, …, 1)`.
    Mozart {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        verify: bool,
    },
    /// `K[x,y]/(x^a, y^b, 𝔪^k)`.
    Ci2 {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        verify: bool,
    },
    /// `(x_1², …, x_n², w0)` with `w0` squarefree, given as a 0/1 vector.
    Beethoven {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        w0: Vec<u32>,
        #[arg(long)]
        verify: bool,
    },
    /// Free-face trace of a flag complex given as `{"n":…,"facets":[…]}`.
    Flag {
        complex: String,
        #[arg(long)]
        verify: bool,
    },
    /// Permissible and τ-permissible sequences of the path `P_n`.
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Socle and trace-generator sets of the cycle `C_n`.
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Trace of the order complex of `𝒥(P)` for a poset `{"elements":…,"relations":…}`.
    Lattice {
        poset: String,
        #[arg(long)]
        verify: bool,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status: 0 on success, 1 on a domain error or failed check, 2 on
/// a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(Outcome { body, ok }) => {
            let _ = writeln!(out, "{body}");
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let record = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            let _ = writeln!(err, "{record}");
            1
        }
    }
}

struct Outcome {
    body: String,
    ok: bool,
}

impl Outcome {
    fn pass(body: String) -> Self {
        Outcome { body, ok: true }
    }
}

fn read_source(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    if Path::new(arg).is_file() {
        return Ok(std::fs::read_to_string(arg)?);
    }
    Ok(arg.to_string())
}

fn split_vars(vars: &Option<String>) -> Option<Vec<String>> {
    vars.as_ref().map(|v| v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
}

fn load_ideal(input: &IdealArg) -> Result<MonomialIdeal> {
    let text = read_source(&input.ideal)?;
    let vars = split_vars(&input.vars);
    parse_ideal(&text, vars.as_deref())
}

fn load_view(p: &DivisorPoset, gens: &str) -> Result<PosetIdealView> {
    let ideal = parse_ideal_expr(gens, Some(p.ideal().vars()))?;
    p.view(ideal.generators())
}

fn render(value: &impl Serialize, format: Format) -> Result<String> {
    let value = serde_json::to_value(value)?;
    Ok(match format {
        Format::Text => text_lines(&value),
        _ => serde_json::to_string(&value)?,
    })
}

fn text_lines(value: &Value) -> String {
    match value {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn names(ideal: &MonomialIdeal, ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(|m| m.display_with(ideal.vars())).collect()
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let format = cli.format;
    match &cli.command {
        Command::Trace { input } => {
            let ideal = load_ideal(input)?;
            let p = DivisorPoset::build(&ideal)?;
            let report = hom::trace_multigraded(&p)?;
            if format == Format::Text {
                let number = report.teter_number_multigraded.map_or("not computed".to_string(), |k| k.to_string());
                let witness = report.witness_degree.as_ref().map_or("none".to_string(), |m| m.display_with(ideal.vars()));
                let body = [
                    format!("ideal: {ideal}"),
                    format!("standard monomials: {}", p.len()),
                    format!("trace: {}", report.trace(ideal.vars())),
                    format!("gorenstein: {}", report.gorenstein),
                    format!("nearly gorenstein: {}", report.nearly_gorenstein),
                    format!("teter type (multigraded): {}", report.teter_type_multigraded.as_str()),
                    format!("witness degree: {witness}"),
                    format!("teter number (multigraded): {number}"),
                ]
                .join("\n");
                return Ok(Outcome::pass(body));
            }
            let mut value = serde_json::to_value(&report)?;
            value["ideal"] = json!(ideal.to_record());
            value["trace"] = json!(report.trace(ideal.vars()).to_string());
            Ok(Outcome::pass(serde_json::to_string(&value)?))
        }
        Command::TeterType { input, sense, prime, trials, seed } => {
            let ideal = load_ideal(input)?;
            let p = DivisorPoset::build(&ideal)?;
            let body = match sense {
                Sense::Multi => {
                    let (verdict, witness) = hom::teter_type_multigraded(&p)?;
                    render(&json!({ "sense": "multi", "verdict": verdict, "witness_degree": witness }), format)?
                }
                Sense::Graded | Sense::Local => {
                    let s = if *sense == Sense::Graded { RandomSense::Graded } else { RandomSense::Local };
                    render(&linalg::teter_type_randomized(&p, s, *prime, *trials, *seed)?, format)?
                }
            };
            Ok(Outcome::pass(body))
        }
        Command::TeterNumber { input } => {
            let ideal = load_ideal(input)?;
            let p = DivisorPoset::build(&ideal)?;
            let value = match hom::teter_number_multigraded(&p)? {
                Some((k, degrees)) => json!({ "sense": "multi", "teter_number": k, "degrees": degrees }),
                None => json!({ "sense": "multi", "teter_number": null, "note": "not computed: cover search exceeds cap" }),
            };
            Ok(Outcome::pass(render(&value, format)?))
        }
        Command::Poset { input, dot, highlight_trace } => {
            let ideal = load_ideal(input)?;
            let p = DivisorPoset::build(&ideal)?;
            if *dot || format == Format::Dot {
                let trace = highlight_trace.then(|| hom::trace_view(&p));
                return Ok(Outcome::pass(p.to_dot(trace.as_ref())?));
            }
            Ok(Outcome::pass(render(&p.to_record(), format)?))
        }
        Command::Symmetric { input, gens } => {
            let ideal = load_ideal(input)?;
            let p = DivisorPoset::build(&ideal)?;
            let v = load_view(&p, gens)?;
            let m = hom::is_symmetric(&p, &v)?;
            let value = json!({
                "generators": names(&ideal, &v.gen_monomials(&p)),
                "socle": names(&ideal, &v.soc_monomials(&p)),
                "symmetric": m.is_some(),
                "degree": m,
            });
            Ok(Outcome::pass(render(&value, format)?))
        }
        Command::Companion { input, i, j } => {
            let ideal = load_ideal(input)?;
            let p = DivisorPoset::build(&ideal)?;
            let vi = load_view(&p, i)?;
            let (vj, m) = match j {
                Some(j) => {
                    let vj = load_view(&p, j)?;
                    let m = hom::are_companions(&p, &vi, &vj)?;
                    (Some(vj), m)
                }
                None => match hom::is_tau_ideal(&p, &vi)? {
                    Some((c, m)) => (Some(c), Some(m)),
                    None => (None, None),
                },
            };
            let union_symmetric = match (&vj, &m) {
                (Some(vj), Some(m)) => {
                    let both = vi.union(&p, vj)?;
                    Some(hom::are_companions_in_degree(&p, &both, &both, m)?)
                }
                _ => None,
            };
            let value = json!({
                "i": names(&ideal, &vi.gen_monomials(&p)),
                "j": vj.as_ref().map(|v| names(&ideal, &v.gen_monomials(&p))),
                "companions": m.is_some(),
                "degree": m,
                "union_symmetric": union_symmetric,
            });
            Ok(Outcome::pass(render(&value, format)?))
        }
        Command::Family { family } => run_family(family, format),
        Command::ProbeConjecture { a, k } => {
            let spec = PowerQuotientSpec::new(a.clone(), *k)?;
            Ok(Outcome::pass(render(&families::conjecture_probe(&spec)?, format)?))
        }
        Command::Selfcheck { samples, max_vars, max_exp, seed, prime } => {
            let config =
                SelfcheckConfig { samples: *samples, max_vars: *max_vars, max_exp: *max_exp, seed: *seed, prime: *prime };
            let report = selfcheck::run(&config)?;
            let ok = report.passed();
            Ok(Outcome { body: render(&report, format)?, ok })
        }
    }
}

fn family_outcome(
    family: &str,
    ring: &MonomialIdeal,
    predicted: Vec<Monomial>,
    teter: bool,
    verify: bool,
    format: Format,
) -> Result<Outcome> {
    let verified = if verify { Some(families::verify_against_engine(ring, &predicted, teter)?) } else { None };
    let report = FamilyReport { family: family.to_string(), trace_generators: predicted, teter_type: teter, verified };
    Ok(Outcome { body: render(&report, format)?, ok: verified != Some(false) })
}

fn engine_sets(c: &SimplicialComplex) -> Result<simplicial::SetLists> {
    let p = DivisorPoset::build(&c.kdelta_ideal())?;
    let to_sets = |ms: Vec<Monomial>| -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = ms.iter().map(|m| m.support().into_iter().map(|i| i + 1).collect()).collect();
        v.sort();
        v
    };
    let trace = hom::trace_view(&p);
    Ok((to_sets(p.socle_monomials()), to_sets(trace.gen_monomials(&p))))
}

fn sorted_sets(mut v: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    v.sort();
    v
}

fn run_family(family: &Family, format: Format) -> Result<Outcome> {
    match family {
        Family::Aci { a, b, verify } => {
            let spec = AciSpec::new(a.clone(), b.clone())?;
            let (trace, teter) = families::aci_trace_and_type(&spec);
            family_outcome("aci", &spec.ideal(), trace.generators().to_vec(), teter, *verify, format)
        }
        Family::PowerQuotient { a, k, verify } => {
            let spec = PowerQuotientSpec::new(a.clone(), *k)?;
            let ring = families::power_quotient_ideal(&spec)?;
            let mut value = json!({ "family": "power-quotient", "ring": ring.to_record() });
            if *verify {
                let report = hom::trace_multigraded(&DivisorPoset::build(&ring)?)?;
                value["trace_generators"] = json!(report.trace_generators);
                value["teter_type_multigraded"] = json!(report.teter_type_multigraded);
            }
            Ok(Outcome::pass(render(&value, format)?))
        }
        Family::Chopin { a, k, verify } => {
            let spec = PowerQuotientSpec::new(a.clone(), *k)?;
            let trace = families::chopin_trace(&spec)?;
            let ring = families::power_quotient_ideal(&spec)?;
            family_outcome("chopin", &ring, trace, true, *verify, format)
        }
        Family::Mozart { n, k, verify } => {
            let (trace, teter) = families::mozart(*n, *k)?;
            let ring = families::power_quotient_ideal(&families::mozart_spec(*n, *k)?)?;
            family_outcome("mozart", &ring, trace, teter, *verify, format)
        }
        Family::Ci2 { a, b, k, verify } => {
            let e = families::ci2_trace(*a, *b, *k)?;
            let ring = families::ci2_ideal(*a, *b, *k)?;
            let trace = families::maximal_power_in_ring(&ring, e)?;
            family_outcome("ci2", &ring, trace, true, *verify, format)
        }
        Family::Beethoven { n, w0, verify } => {
            let w0 = Monomial::new(w0.clone());
            let support = families::beethoven_trace(*n, &w0)?;
            let ring = families::beethoven_ideal(*n, &w0)?;
            let trace: Vec<Monomial> = support.iter().map(|&i| Monomial::var(*n, i)).collect();
            family_outcome("beethoven", &ring, trace, true, *verify, format)
        }
        Family::Flag { complex, verify } => {
            let rec: ComplexRecord = serde_json::from_str(&read_source(complex)?)?;
            let c = SimplicialComplex::from_record(&rec)?;
            let trace = c.flag_trace_gens()?;
            let faces: Vec<Vec<usize>> = c.minimal_free_faces().into_iter().map(simplicial::vertices_of).collect();
            let verified = if *verify {
                let p = DivisorPoset::build(&c.kdelta_ideal())?;
                let mut actual = hom::trace_multigraded(&p)?.trace_generators;
                actual.sort();
                let mut expected = trace.clone();
                expected.sort();
                Some(actual == expected)
            } else {
                None
            };
            let value = json!({
                "family": "flag",
                "complex": c.to_record(),
                "minimal_free_faces": faces,
                "trace_generators": trace,
                "verified": verified,
            });
            Ok(Outcome { body: render(&value, format)?, ok: verified != Some(false) })
        }
        Family::Path { n, verify } => {
            let (perm, tau) = simplicial::path_sequences(*n)?;
            let verified = if *verify {
                let c = simplicial::independence_complex(*n, &simplicial::path_graph(*n))?;
                let (soc, gen) = engine_sets(&c)?;
                Some(soc == sorted_sets(perm.clone()) && gen == sorted_sets(tau.clone()))
            } else {
                None
            };
            let value = json!({ "family": "path", "n": n, "permissible": perm, "tau_permissible": tau, "verified": verified });
            Ok(Outcome { body: render(&value, format)?, ok: verified != Some(false) })
        }
        Family::Cycle { n, verify } => {
            let (soc, gen) = simplicial::cycle_sequences(*n)?;
            let verified = if *verify {
                let c = simplicial::independence_complex(*n, &simplicial::cycle_graph(*n))?;
                let (esoc, egen) = engine_sets(&c)?;
                Some(esoc == sorted_sets(soc.clone()) && egen == sorted_sets(gen.clone()))
            } else {
                None
            };
            let value = json!({ "family": "cycle", "n": n, "socle_sets": soc, "trace_gen_sets": gen, "verified": verified });
            Ok(Outcome { body: render(&value, format)?, ok: verified != Some(false) })
        }
        Family::Lattice { poset, verify } => {
            let p = FinitePoset::from_json(&read_source(poset)?)?;
            let oc = OrderComplex::build(&p)?;
            let trace = oc.trace_gens()?;
            let labels: Vec<String> = oc.ideals.iter().map(|&m| p.ideal_label(m)).collect();
            let chains: Vec<Value> = p
                .linear_extensions()
                .iter()
                .map(|pi| -> Result<Value> {
                    let sharp: Vec<String> = p.c_sharp(pi)?.into_iter().map(|m| p.ideal_label(m)).collect();
                    let word: Vec<&str> = pi.iter().map(|&x| p.labels()[x].as_str()).collect();
                    Ok(json!({ "extension": word, "c_sharp": sharp }))
                })
                .collect::<Result<_>>()?;
            let (verified, decomposition) = if *verify {
                let dp = DivisorPoset::build(&oc.complex.kdelta_ideal())?;
                let mut actual = hom::trace_multigraded(&dp)?.trace_generators;
                actual.sort();
                let d = lattice::check_decomposition(&oc)?;
                let ok = actual == trace && d.disjoint && d.covers_trace && d.all_symmetric && d.socles_are_facets;
                (Some(ok), Some(d))
            } else {
                (None, None)
            };
            let value = json!({
                "family": "lattice",
                "lattice_elements": labels,
                "extensions": chains,
                "trace_generators": trace,
                "interval_decomposition": decomposition,
                "verified": verified,
            });
            Ok(Outcome { body: render(&value, format)?, ok: verified != Some(false) })
        }
    }
}
