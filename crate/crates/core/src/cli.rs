//! Batch command-line front end: input parsing, job dispatch and reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::{compare, Arrangement};
use crate::chromatic::{chromatic_polynomial, compare_with_matroid, ChromaticComplex};
use crate::cohomology::{BigradedComplex, CohomologyTable};
use crate::exactlin::{Field, IntMatrix, PresentedModule};
use crate::graph::Graph;
use crate::matroid::Matroid;
use crate::quasirep::QuasiRep;
use crate::subset::Subset;
use crate::verify::{self, Generator, Verdict};

#[derive(Parser, Debug)]
#[command(name = "matcoh", version, about = "Characteristic cohomology of matroids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cohomology table of a matroid with a quasi-representation.
    Compute(JobArgs),
    /// Run a verification suite on an input or on seeded random instances.
    Verify(JobArgs),
    /// Chromatic complex of a graph compared with its graphic matroid.
    Chromatic(JobArgs),
    /// Arrangement complex compared with the matroid complex over ℚ.
    Arrangement(JobArgs),
}

#[derive(Args, Debug, Clone)]
pub struct JobArgs {
    /// JSON input file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Quasi-representation name, or a JSON file with explicit flats.
    #[arg(long)]
    pub quasirep: Option<String>,
    /// Coefficients: z, q or zp:P.
    #[arg(long, default_value = "z")]
    pub ring: String,
    /// Largest exterior degree, or "auto".
    #[arg(long, default_value = "auto")]
    pub jmax: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Verification suite: all, euler, ses, coloop, les, identities,
    /// permutation, random.
    #[arg(long, default_value = "all")]
    pub suite: String,
}

/// Outcome of a job: exit code 0 pass, 1 failed property, 2 bad input.
#[derive(Debug)]
pub enum Failure {
    Property(String),
    Input(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Property(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

#[derive(Deserialize, Debug)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MatroidInput {
    Uniform { k: usize, n: usize },
    Graph { vertices: usize, edges: Vec<(usize, usize)> },
    Matrix { entries: Vec<Vec<i64>> },
    RankTable { n: usize, ranks: Vec<u8> },
    Pappus,
    NonPappus,
    U22Diagonal { a: i64, b: i64 },
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum QuasiRepInput {
    Name(String),
    Explicit(ExplicitQuasiRep),
}

#[derive(Deserialize, Debug)]
pub struct AmbientInput {
    pub gens: usize,
    /// Relation columns, given as `gens` rows.
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
}

/// `{"ambient": {...}, "flats": {"<bitmask>": rows}}`; generator matrices
/// are given row by row with one row per ambient generator.
#[derive(Deserialize, Debug)]
pub struct ExplicitQuasiRep {
    pub ambient: Option<AmbientInput>,
    pub flats: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Deserialize, Debug)]
pub struct InstanceInput {
    #[serde(flatten)]
    pub matroid: MatroidInput,
    pub quasirep: Option<QuasiRepInput>,
    /// Circuit-hyperplane to relax before building the quasi-representation.
    pub relax: Option<Vec<usize>>,
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum ArrangementInput {
    Normals { dim: usize, normals: Vec<Vec<i64>> },
    Instance(InstanceInput),
}

fn rows_to_matrix(rows: &[Vec<i64>], nrows: usize) -> Result<IntMatrix, Failure> {
    if rows.len() != nrows {
        return Err(Failure::Input(format!("expected {nrows} rows, got {}", rows.len())));
    }
    let cols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Failure::Input("ragged matrix".into()));
    }
    Ok(IntMatrix::from_rows(rows, cols))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn build_matroid(m: &MatroidInput) -> Result<Matroid, Failure> {
    Ok(match m {
        MatroidInput::Uniform { k, n } => Matroid::uniform(*k, *n).map_err(input_err)?,
        MatroidInput::Graph { vertices, edges } => Matroid::from_graph(&Graph::new(*vertices, edges).map_err(input_err)?),
        MatroidInput::Matrix { entries } => {
            Matroid::from_matrix(&rows_to_matrix(entries, entries.len())?).map_err(input_err)?
        }
        MatroidInput::RankTable { n, ranks } => Matroid::from_rank_table(*n, ranks.clone()).map_err(input_err)?,
        MatroidInput::Pappus => Matroid::pappus(),
        MatroidInput::NonPappus => Matroid::non_pappus(),
        MatroidInput::U22Diagonal { .. } => Matroid::uniform(2, 2).map_err(input_err)?,
    })
}

fn explicit_quasirep(m: &Matroid, e: &ExplicitQuasiRep) -> Result<QuasiRep, Failure> {
    let ambient = match &e.ambient {
        Some(a) => {
            let rel = if a.relations.is_empty() {
                IntMatrix::zeros(a.gens, 0)
            } else {
                rows_to_matrix(&a.relations, a.gens)?
            };
            PresentedModule::new(a.gens, rel)
        }
        None => {
            let gens = e.flats.values().map(|r| r.len()).max().unwrap_or(0);
            PresentedModule::free(gens)
        }
    };
    let mut asg = BTreeMap::new();
    for (k, rows) in &e.flats {
        let bits: u32 = k.parse().map_err(|_| Failure::Input(format!("flat key {k:?} is not a bitmask")))?;
        let g = if rows.iter().all(|r| r.is_empty()) {
            IntMatrix::zeros(ambient.gens, 0)
        } else {
            rows_to_matrix(rows, ambient.gens)?
        };
        asg.insert(Subset(bits), g);
    }
    asg.entry(m.closure(Subset(0))).or_insert_with(|| IntMatrix::zeros(ambient.gens, 0));
    QuasiRep::from_flats(m.clone(), ambient, asg, "explicit").map_err(input_err)
}

fn named_quasirep(m: &Matroid, src: &MatroidInput, name: &str) -> Result<QuasiRep, Failure> {
    let q = match (name, src) {
        ("free_default", _) => QuasiRep::free_default(m),
        ("canonical" | "graphic", MatroidInput::Graph { vertices, edges }) => {
            QuasiRep::graphic(&Graph::new(*vertices, edges).map_err(input_err)?).map_err(input_err)?
        }
        ("canonical", MatroidInput::Matrix { entries }) => {
            QuasiRep::canonical_from_matrix(m, &rows_to_matrix(entries, entries.len())?).map_err(input_err)?
        }
        ("canonical", MatroidInput::Uniform { k, n }) => QuasiRep::canonical_uniform(*k, *n).map_err(input_err)?,
        ("u22_diagonal" | "canonical", MatroidInput::U22Diagonal { a, b }) => {
            QuasiRep::diagonal_u22(*a, *b).map_err(input_err)?
        }
        _ => return Err(Failure::Input(format!("quasi-representation {name:?} does not apply to this input"))),
    };
    Ok(q)
}

fn default_quasirep_name(src: &MatroidInput) -> &'static str {
    match src {
        MatroidInput::Uniform { .. } | MatroidInput::Matrix { .. } | MatroidInput::U22Diagonal { .. } => "canonical",
        MatroidInput::Graph { .. } => "graphic",
        _ => "free_default",
    }
}

/// Builds the quasi-representation of an instance; `--quasirep` wins over
/// the field in the file.
pub fn build_instance(inst: &InstanceInput, flag: Option<&str>) -> Result<QuasiRep, Failure> {
    let mut m = build_matroid(&inst.matroid)?;
    if let Some(s0) = &inst.relax {
        let s0 = Subset::from_elements(s0);
        if !m.is_circuit_hyperplane(s0) {
            return Err(Failure::Input(format!("{} is not a circuit-hyperplane", s0.display())));
        }
        m = m.relax(s0).map_err(input_err)?;
    }
    let from_flag = match flag {
        Some(f) if Path::new(f).is_file() => Some(QuasiRepInput::Explicit(read_json(Path::new(f))?)),
        Some(f) => Some(QuasiRepInput::Name(f.to_string())),
        None => None,
    };
    let q = match from_flag.as_ref().or(inst.quasirep.as_ref()) {
        Some(QuasiRepInput::Explicit(e)) => explicit_quasirep(&m, e)?,
        Some(QuasiRepInput::Name(n)) => named_quasirep(&m, &inst.matroid, n)?,
        None => named_quasirep(&m, &inst.matroid, default_quasirep_name(&inst.matroid))?,
    };
    if inst.relax.is_some() && q.matroid() != &m {
        return Err(Failure::Input("relaxation needs free_default or an explicit quasi-representation".into()));
    }
    if let Err(v) = q.validate() {
        let w: Vec<String> = v.witness().iter().map(|s| s.display()).collect();
        return Err(Failure::Input(format!("not a quasi-representation: {v:?} at {}", w.join(", "))));
    }
    Ok(q)
}

pub fn parse_ring(s: &str) -> Result<Option<Field>, Failure> {
    match s {
        "z" | "Z" => Ok(None),
        "q" | "Q" => Ok(Some(Field::Rational)),
        _ => {
            let p = s
                .strip_prefix("zp:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| Failure::Input(format!("unknown ring {s:?}")))?;
            if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
                return Err(Failure::Input(format!("{p} is not prime")));
            }
            Ok(Some(Field::Prime(p)))
        }
    }
}

pub fn parse_jmax(s: &str) -> Result<Option<usize>, Failure> {
    if s == "auto" {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| Failure::Input(format!("--jmax must be a number or auto, got {s:?}")))
}

/// Writes via a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

fn emit(args: &JobArgs, json: &str) -> Result<(), Failure> {
    if let Some(p) = &args.out {
        write_atomic(p, json).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn load_instance(args: &JobArgs) -> Result<QuasiRep, Failure> {
    let path = args.input.as_ref().ok_or_else(|| Failure::Input("--input is required".into()))?;
    build_instance(&read_json(path)?, args.quasirep.as_deref())
}

fn table_for(q: &QuasiRep, args: &JobArgs) -> Result<CohomologyTable, Failure> {
    let field = parse_ring(&args.ring)?;
    let c = BigradedComplex::new(q, parse_jmax(&args.jmax)?).map_err(input_err)?;
    let t = match field {
        None => c.cohomology_table(),
        Some(f) => c.dimension_table(f),
    };
    t.map_err(input_err)
}

pub fn run_compute(args: &JobArgs, out: &mut String) -> Result<(), Failure> {
    let q = load_instance(args)?;
    let t = table_for(&q, args)?;
    let want = verify::expected_euler(q.matroid());
    let _ = writeln!(out, "matroid: n = {}, rank = {}, quasi-rep = {}", t.n, t.rank, t.quasirep);
    let _ = writeln!(out, "H^{{i,j}} over {}:", t.ring);
    out.push_str(&t.render());
    let _ = writeln!(out, "graded Euler characteristic: {}", t.euler.format("q"));
    let _ = writeln!(out, "chi(M; 1+q):                 {}", want.format("q"));
    emit(args, &t.to_json())?;
    // cells beyond jmax are not computed, so only compare a complete table
    let complete = t.jmax >= BigradedComplex::new(&q, None).map_err(input_err)?.auto_jmax();
    if t.euler != want {
        let _ = writeln!(out, "euler check: FAIL");
        return Err(Failure::Property("Euler characteristic of the chain groups differs from chi(M; 1+q)".into()));
    }
    if complete && t.ring == "Z" && t.euler_from_cells() != want {
        let _ = writeln!(out, "euler check: FAIL");
        return Err(Failure::Property("Euler characteristic of the cohomology differs from chi(M; 1+q)".into()));
    }
    let _ = writeln!(out, "euler check: pass");
    Ok(())
}

fn instance_verdicts(q: &QuasiRep, suite: &str, seed: u64) -> Result<Vec<Verdict>, Failure> {
    let m = q.matroid();
    let mut out = Vec::new();
    let err = |e: verify::VerifyError| Failure::Input(e.to_string());
    let all = suite == "all";
    if all || suite == "euler" {
        out.push(verify::verify_euler(q).map_err(err)?);
    }
    for e in 0..m.size() {
        let coloop = m.is_coloop(e);
        if (all || suite == "ses") && !coloop {
            out.push(verify::verify_ses(q, e).map_err(err)?);
        }
        if (all || suite == "les") && !coloop {
            out.push(verify::verify_les_ranks(q, e).map_err(err)?);
        }
        if (all || suite == "coloop") && coloop {
            out.push(verify::verify_coloop(q, e).map_err(err)?);
        }
    }
    if all || suite == "identities" {
        let mut v = verify::verify_identities(q).map_err(err)?;
        if !all {
            out.append(&mut v);
        } else {
            // the Euler identity is already in the bundle
            out.extend(v.into_iter().filter(|x| x.property != "euler"));
        }
    }
    if all || suite == "permutation" {
        let mut perm: Vec<usize> = (0..m.size()).collect();
        perm.shuffle(Generator::new(seed).rng());
        out.push(verify::verify_permutation(q, &perm).map_err(err)?);
    }
    if out.is_empty() && !["all", "euler", "ses", "les", "coloop", "identities", "permutation"].contains(&suite) {
        return Err(Failure::Input(format!("unknown suite {suite:?}")));
    }
    Ok(out)
}

/// Without an input file: `euler` checks 100 random graphs on at most five
/// vertices, `random` runs the bundle on 100 random quasi-representations.
fn random_verdicts(suite: &str, seed: u64) -> Result<Vec<Verdict>, Failure> {
    let mut g = Generator::new(seed);
    let mut out = Vec::new();
    for k in 0..100 {
        let q = match suite {
            "euler" => {
                let v = g.rng().gen_range(1..=5);
                let graph = g.graph(v);
                QuasiRep::graphic(&graph).map_err(input_err)?
            }
            "random" | "all" => g.quasirep(6),
            _ => return Err(Failure::Input(format!("suite {suite:?} needs --input"))),
        };
        let sub = if suite == "euler" { "euler" } else { "all" };
        for mut v in instance_verdicts(&q, sub, seed.wrapping_add(k))? {
            v.property = format!("#{k} {}: {}", q.descriptor(), v.property);
            out.push(v);
        }
    }
    Ok(out)
}

pub fn run_verify(args: &JobArgs, out: &mut String) -> Result<(), Failure> {
    let verdicts = match &args.input {
        Some(_) => instance_verdicts(&load_instance(args)?, &args.suite, args.seed)?,
        None => random_verdicts(&args.suite, args.seed)?,
    };
    let passed = verdicts.iter().filter(|v| v.pass).count();
    for v in verdicts.iter().filter(|v| !v.pass) {
        let kind = if v.hypothesis_failure { "HYPOTHESIS" } else { "FAIL" };
        let _ = writeln!(out, "{kind} {}: {}", v.property, v.witness.as_deref().unwrap_or(""));
    }
    let _ = writeln!(out, "{passed}/{} checks passed", verdicts.len());
    emit(args, &serde_json::to_string_pretty(&verdicts).expect("verdicts serialize"))?;
    match verdicts.iter().find(|v| !v.pass) {
        Some(v) => Err(Failure::Property(format!("{}: {}", v.property, v.witness.as_deref().unwrap_or("")))),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct ChromaticOutput {
    chromatic: CohomologyTable,
    matroid: CohomologyTable,
    chromatic_polynomial: crate::poly::Poly,
    report: crate::chromatic::ChromaticReport,
}

fn load_graph(args: &JobArgs) -> Result<Graph, Failure> {
    let path = args.input.as_ref().ok_or_else(|| Failure::Input("--input is required".into()))?;
    match read_json::<InstanceInput>(path)?.matroid {
        MatroidInput::Graph { vertices, edges } => Graph::new(vertices, &edges).map_err(input_err),
        _ => Err(Failure::Input("chromatic expects a graph input".into())),
    }
}

pub fn run_chromatic(args: &JobArgs, out: &mut String) -> Result<(), Failure> {
    let g = load_graph(args)?;
    let report = compare_with_matroid(&g).map_err(input_err)?;
    let chrom = ChromaticComplex::new(&g).cohomology_table();
    let mat = BigradedComplex::new(&QuasiRep::graphic(&g).map_err(input_err)?, None)
        .and_then(|c| c.cohomology_table())
        .map_err(input_err)?;
    let p = chromatic_polynomial(&g);
    let _ = writeln!(out, "chromatic cohomology:");
    out.push_str(&chrom.render());
    let _ = writeln!(out, "graphic matroid cohomology:");
    out.push_str(&mat.render());
    let _ = writeln!(out, "graded Euler characteristic: {}", chrom.euler.format("q"));
    let _ = writeln!(out, "P(G; 1+q):                   {}", p.shift(1).format("q"));
    let mut fails = Vec::new();
    let mut line = |name: &str, ok: bool, w: Option<&crate::chromatic::ComparisonWitness>| {
        let _ = match w {
            Some(w) => writeln!(out, "{name}: FAIL at ({},{}): {}", w.i, w.j, w.detail),
            None => writeln!(out, "{name}: {}", if ok { "pass" } else { "FAIL" }),
        };
        if !ok || w.is_some() {
            fails.push(name.to_string());
        }
    };
    line("euler", report.euler_matches, None);
    line("d^2 = 0", report.d_squared_zero, None);
    line("theta chain map", true, report.theta_chain_map.as_ref());
    line("tau chain map", true, report.tau_chain_map.as_ref());
    line("theta tau = 0", true, report.theta_tau_zero.as_ref());
    line("ses exact", true, report.ses_exact.as_ref());
    line("chain rank identity", report.chain_rank_identity, None);
    line("les ranks", true, report.les_consistent.as_ref());
    let _ = writeln!(out, "H^{{i,j}}(M(G)) = H^{{i+1,j-1}}(M(G)) for i + j < {}", report.corollary_range);
    let json = ChromaticOutput { chromatic: chrom, matroid: mat, chromatic_polynomial: p, report };
    emit(args, &serde_json::to_string_pretty(&json).expect("report serializes"))?;
    if fails.is_empty() {
        Ok(())
    } else {
        Err(Failure::Property(format!("failed: {}", fails.join(", "))))
    }
}

pub fn run_arrangement(args: &JobArgs, out: &mut String) -> Result<(), Failure> {
    let path = args.input.as_ref().ok_or_else(|| Failure::Input("--input is required".into()))?;
    let a = match read_json::<ArrangementInput>(path)? {
        ArrangementInput::Normals { dim, normals } => Arrangement::new(dim, normals).map_err(input_err)?,
        ArrangementInput::Instance(InstanceInput { matroid: MatroidInput::Graph { vertices, edges }, .. }) => {
            Arrangement::graphic(&Graph::new(vertices, &edges).map_err(input_err)?)
        }
        ArrangementInput::Instance(InstanceInput { matroid: MatroidInput::Uniform { k, n }, .. }) if k == n => {
            Arrangement::boolean(n)
        }
        _ => return Err(Failure::Input("expected {\"dim\", \"normals\"}, a graph, or a Boolean uniform".into())),
    };
    let c = compare(&a).map_err(input_err)?;
    let show = |t: &Vec<Vec<usize>>, out: &mut String| {
        for (i, row) in t.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(out, "{i:>4}  {}", cells.join(" "));
        }
    };
    let _ = writeln!(out, "arrangement complex, dim H^{{i,j}} over Q (rows i, columns j):");
    show(&c.arrangement, out);
    let _ = writeln!(out, "matroid complex:");
    show(&c.matroid, out);
    emit(args, &serde_json::to_string_pretty(&c).expect("comparison serializes"))?;
    if !c.d_squared_zero {
        return Err(Failure::Property("d^2 != 0 on the arrangement complex".into()));
    }
    if let Some((i, j)) = c.mismatch {
        let _ = writeln!(out, "comparison: FAIL at ({i},{j})");
        return Err(Failure::Property(format!("tables differ at ({i},{j})")));
    }
    let _ = writeln!(out, "comparison: pass");
    Ok(())
}

/// Runs one command, printing to stdout and errors to stderr; returns the
/// exit code.
pub fn run(cli: Cli) -> i32 {
    let mut out = String::new();
    let r = match &cli.command {
        Command::Compute(a) => run_compute(a, &mut out),
        Command::Verify(a) => run_verify(a, &mut out),
        Command::Chromatic(a) => run_chromatic(a, &mut out),
        Command::Arrangement(a) => run_arrangement(a, &mut out),
    };
    print!("{out}");
    match r {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                Failure::Property(m) => eprintln!("failure: {m}"),
                Failure::Input(m) => eprintln!("input error: {m}"),
            }
            f.code()
        }
    }
}
