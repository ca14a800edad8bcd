//! Command-line front end: reads an input document, runs one computation and
//! renders the result as text or as a JSON document.
//!
//! Exit codes: 0 success, 1 unreadable input file, 2 parse, validation or
//! precondition error, 3 a verification failed, 4 size guard exceeded.

pub mod input;

use crate::barcomplex::{BarError, BarOptions, CoefficientModule, GroupCohomology};
use crate::cochain::{SizeGuard, SizeGuardExceeded};
use crate::cosimplicial::{verify_ez, CosimplicialBicomplex, CosimplicialError, ShuffleSign};
use crate::exactlin::{check_modulus, LinAlgError};
use crate::fingroup::{FiniteGroup, GroupMatchedPair};
use crate::kac::{verify_kac_exactness_with, KacError, KacOptions, PsiConvention};
use crate::liecohomology::{method6, LieError, Method6Input};
use crate::mpcomplex::{build_double_complex_with, iterated_group_cohomology, MPError};
use clap::{Parser, ValueEnum};
use input::{InputDocument, InputError};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    GroupCohomology,
    MpCohomology,
    Bidegree,
    KacVerify,
    Method6,
    EzVerify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::GroupCohomology => "group-cohomology",
            Command::MpCohomology => "mp-cohomology",
            Command::Bidegree => "bidegree",
            Command::KacVerify => "kac-verify",
            Command::Method6 => "method6",
            Command::EzVerify => "ez-verify",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Human,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    A,
    B,
}

/// Cohomology of finite groups and matched pairs with ℤ/m coefficients.
#[derive(Clone, Debug, Parser)]
#[command(name = "kacseq", version)]
pub struct Args {
    pub command: Command,
    /// input document
    pub input: PathBuf,
    /// coefficient modulus m (default 6)
    #[arg(long)]
    pub modulus: Option<u64>,
    /// highest degree to compute (default 2)
    #[arg(long = "max-degree")]
    pub max_degree: Option<usize>,
    /// double complex bounds p_max q_max
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    pub bound: Option<Vec<usize>>,
    /// ψ argument order for kac-verify, shuffle sign for ez-verify
    #[arg(long, value_enum)]
    pub convention: Option<Convention>,
    /// lift the size guard on dense matrices
    #[arg(long)]
    pub force: bool,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
    /// block to run the command on
    #[arg(long)]
    pub target: Option<String>,
}

impl Args {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        Args {
            command,
            input: input.into(),
            modulus: None,
            max_degree: None,
            bound: None,
            convention: None,
            force: false,
            format: Format::Human,
            target: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Usage(String),
    #[error("{message}")]
    Precondition { code: &'static str, message: String },
    #[error(transparent)]
    SizeGuard(#[from] SizeGuardExceeded),
    #[error("{message}")]
    Verification { code: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Input(_) | CliError::Usage(_) | CliError::Precondition { .. } => 2,
            CliError::Verification { .. } => 3,
            CliError::SizeGuard(_) => 4,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "IoError",
            CliError::Input(e) => e.code(),
            CliError::Usage(_) => "UsageError",
            CliError::Precondition { code, .. } | CliError::Verification { code, .. } => code,
            CliError::SizeGuard(_) => "SizeGuard",
        }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({ "code": self.code(), "message": self.to_string(), "exit_code": self.exit_code() });
        if let CliError::Input(e) = self {
            let p = e.position();
            v["line"] = json!(p.line);
            v["column"] = json!(p.column);
            v["witness"] = json!(e.witness());
        }
        if let CliError::SizeGuard(g) = self {
            v["rows"] = json!(g.rows);
            v["cols"] = json!(g.cols);
            v["limit"] = json!(g.limit);
        }
        json!({ "error": v })
    }
}

fn precondition(code: &'static str, e: impl std::fmt::Display) -> CliError {
    CliError::Precondition { code, message: e.to_string() }
}

fn from_linalg(e: LinAlgError) -> CliError {
    match e {
        LinAlgError::ModulusOutOfRange(_) => precondition("ModulusOutOfRange", e),
        LinAlgError::CompositionNotZero { .. } => CliError::Verification { code: "CompositionNotZero", message: e.to_string() },
        _ => precondition("LinAlgError", e),
    }
}

fn from_bar(e: BarError) -> CliError {
    match e {
        BarError::SizeGuard(g) => CliError::SizeGuard(g),
        BarError::LinAlg(l) => from_linalg(l),
        other => precondition("BarError", other),
    }
}

fn from_mp(e: MPError) -> CliError {
    match e {
        MPError::SizeGuard(g) => CliError::SizeGuard(g),
        MPError::LinAlg(l) => from_linalg(l),
        MPError::Bar(b) => from_bar(b),
        MPError::InsufficientBounds { .. } => precondition("InsufficientBounds", e),
        MPError::NonTrivialRightAction => precondition("NonTrivialRightAction", e),
        MPError::DegreeOutOfRange => precondition("DegreeOutOfRange", e),
        MPError::IdentityFailed(_) => CliError::Verification { code: "IdentityFailed", message: e.to_string() },
    }
}

fn from_kac(e: KacError) -> CliError {
    match e {
        KacError::SizeGuard(g) => CliError::SizeGuard(g),
        KacError::LinAlg(l) => from_linalg(l),
        KacError::Bar(b) => from_bar(b),
        KacError::MP(m) => from_mp(m),
        KacError::NotACocycle(_) | KacError::DegreeOutOfRange(_) => precondition("KacPrecondition", e),
        KacError::OutputCocycleCheckFailed(_) => CliError::Verification { code: "OutputCocycleCheckFailed", message: e.to_string() },
        KacError::CompatibilityFailed(_) => CliError::Verification { code: "CompatibilityFailed", message: e.to_string() },
        KacError::IdentityFailed(_) => CliError::Verification { code: "IdentityFailed", message: e.to_string() },
    }
}

fn from_cos(e: CosimplicialError) -> CliError {
    match e {
        CosimplicialError::SizeGuard(g) => CliError::SizeGuard(g),
        CosimplicialError::LinAlg(l) => from_linalg(l),
        CosimplicialError::OutOfBounds { .. } => precondition("OutOfBounds", e),
        CosimplicialError::IdentityFailed(_) => CliError::Verification { code: "IdentityFailed", message: e.to_string() },
        CosimplicialError::SplittingFailed(_) => CliError::Verification { code: "SplittingFailed", message: e.to_string() },
        CosimplicialError::NotChainMap { .. } => CliError::Verification { code: "NotChainMap", message: e.to_string() },
    }
}

fn from_lie(e: LieError) -> CliError {
    match e {
        LieError::Bar(b) => from_bar(b),
        LieError::ActionsIncompatible(_) => precondition("ActionsIncompatible", e),
        other => precondition("LieError", other),
    }
}

/// Renders ⊕ℤ/d as text.
pub fn render_group(orders: &[u64]) -> String {
    if orders.is_empty() {
        "0".to_string()
    } else {
        orders.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + ")
    }
}

struct Settings {
    modulus: u64,
    max_degree: usize,
    bound: Option<(usize, usize)>,
    convention: Convention,
    guard: SizeGuard,
    target: Option<String>,
}

impl Settings {
    fn resolve(args: &Args, doc: &InputDocument) -> Result<Self, CliError> {
        let modulus = args.modulus.or(doc.task.modulus).unwrap_or(6);
        check_modulus(modulus).map_err(from_linalg)?;
        let bound = match &args.bound {
            Some(v) => Some((v[0], v[1])),
            None => doc.task.bound,
        };
        let convention = match (args.convention, doc.task.convention.as_deref()) {
            (Some(c), _) => c,
            (None, None) | (None, Some("a")) => Convention::A,
            (None, Some("b")) => Convention::B,
            (None, Some(other)) => return Err(CliError::Usage(format!("unknown convention `{other}`"))),
        };
        Ok(Settings {
            modulus,
            max_degree: args.max_degree.or(doc.task.max_degree).unwrap_or(2),
            bound,
            convention,
            guard: if args.force { SizeGuard::unlimited() } else { SizeGuard::default() },
            target: args.target.clone().or_else(|| doc.task.target.clone()),
        })
    }

    fn pick<'a, T>(&self, what: &str, items: &'a std::collections::BTreeMap<String, T>) -> Result<(String, &'a T), CliError> {
        match &self.target {
            Some(name) => items
                .get(name)
                .map(|v| (name.clone(), v))
                .ok_or_else(|| CliError::Usage(format!("no {what} named `{name}`"))),
            None if items.len() == 1 => {
                let (k, v) = items.iter().next().expect("one item");
                Ok((k.clone(), v))
            }
            None if items.is_empty() => Err(CliError::Usage(format!("the document defines no {what}"))),
            None => Err(CliError::Usage(format!("several {what}s defined; choose one with --target"))),
        }
    }
}

/// Runs a command on the file named in `args`.
pub fn run(args: &Args) -> Outcome {
    match std::fs::read_to_string(&args.input) {
        Ok(src) => run_source(args, &src),
        Err(e) => {
            let err = CliError::Io { path: args.input.display().to_string(), message: e.to_string() };
            failure(args.format, &err)
        }
    }
}

fn failure(format: Format, err: &CliError) -> Outcome {
    match format {
        Format::Structured => Outcome {
            exit_code: err.exit_code(),
            stdout: serde_json::to_string_pretty(&err.to_json()).expect("json") + "\n",
            stderr: String::new(),
        },
        Format::Human => {
            Outcome { exit_code: err.exit_code(), stdout: String::new(), stderr: format!("error[{}]: {err}\n", err.code()) }
        }
    }
}

/// One computed report: the structured value, its text rendering and
/// whether every verification in it passed.
struct Report {
    value: Value,
    text: String,
    ok: bool,
}

/// Runs a command on document text already in memory.
pub fn run_source(args: &Args, src: &str) -> Outcome {
    let start = Instant::now();
    let result = InputDocument::parse(src)
        .map_err(CliError::from)
        .and_then(|doc| Settings::resolve(args, &doc).map(|s| (doc, s)))
        .and_then(|(doc, s)| dispatch(args.command, &doc, &s));
    let report = match result {
        Ok(r) => r,
        Err(e) => return failure(args.format, &e),
    };
    let exit_code = if report.ok { 0 } else { 3 };
    let stdout = match args.format {
        Format::Structured => {
            let doc = json!({ "command": args.command.name(), "ok": report.ok, "result": report.value });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        Format::Human => {
            let verdict = if report.ok { "ok" } else { "FAILED" };
            format!("{}\nverdict: {verdict}\ntime: {:.3} s\n", report.text.trim_end(), start.elapsed().as_secs_f64())
        }
    };
    Outcome { exit_code, stdout, stderr: String::new() }
}

fn dispatch(cmd: Command, doc: &InputDocument, s: &Settings) -> Result<Report, CliError> {
    match cmd {
        Command::Validate => Ok(validate(doc)),
        Command::GroupCohomology => group_cohomology(doc, s),
        Command::MpCohomology => mp_cohomology(doc, s),
        Command::Bidegree => bidegree(doc, s),
        Command::KacVerify => kac_verify(doc, s),
        Command::Method6 => run_method6(doc, s),
        Command::EzVerify => ez_verify(doc, s),
    }
}

fn validate(doc: &InputDocument) -> Report {
    let mut blocks = Vec::new();
    let mut text = String::new();
    for (kind, name) in &doc.order {
        let detail = match kind.as_str() {
            "group" => {
                let g = &doc.groups[name];
                json!({ "order": g.order(), "abelian": g.is_abelian() })
            }
            "pair" | "factorization" => {
                let p = &doc.pairs[name];
                json!({
                    "order_t": p.t().order(),
                    "order_n": p.n().order(),
                    "left_trivial": p.left_is_trivial(),
                    "right_trivial": p.right_is_trivial(),
                })
            }
            "lie" => json!({ "dim": doc.lies[name].dim() }),
            "lie-action" => json!({ "lie": doc.actions[name].lie, "group_order": doc.actions[name].action.group().order() }),
            "method6" => json!({ "pair": doc.method6[name].pair, "lie": doc.method6[name].lie }),
            _ => json!({}),
        };
        text.push_str(&format!("{kind} {name}: {detail}\n"));
        blocks.push(json!({ "kind": kind, "name": name, "detail": detail }));
    }
    text.push_str("all blocks valid\n");
    Report { value: json!({ "blocks": blocks }), text, ok: true }
}

fn group_target(doc: &InputDocument, s: &Settings) -> Result<(String, FiniteGroup), CliError> {
    if let Some(name) = &s.target {
        if let Some(p) = doc.pairs.get(name) {
            return Ok((name.clone(), p.bismash().group().clone()));
        }
    }
    let (name, g) = s.pick("group", &doc.groups)?;
    Ok((name, g.clone()))
}

fn group_cohomology(doc: &InputDocument, s: &Settings) -> Result<Report, CliError> {
    let (name, g) = group_target(doc, s)?;
    let m = s.modulus;
    let module = CoefficientModule::trivial_cyclic(m, g.order());
    let opts = BarOptions { normalized: true, guard: s.guard };
    let mut degrees = Vec::new();
    let mut text = format!("H^n({name}, Z/{m}), |G| = {}\n", g.order());
    for n in 0..=s.max_degree {
        let h = GroupCohomology::compute_with(&g, &module, n, opts).map_err(from_bar)?;
        text.push_str(&format!("  H^{n} = {}\n", render_group(h.invariant_factors())));
        degrees.push(json!({ "degree": n, "invariant_factors": h.invariant_factors() }));
    }
    Ok(Report {
        value: json!({ "target": name, "modulus": m, "order": g.order(), "degrees": degrees }),
        text,
        ok: true,
    })
}

fn pair_target<'a>(doc: &'a InputDocument, s: &Settings) -> Result<(String, &'a GroupMatchedPair), CliError> {
    s.pick("pair", &doc.pairs)
}

fn mp_cohomology(doc: &InputDocument, s: &Settings) -> Result<Report, CliError> {
    let (name, pair) = pair_target(doc, s)?;
    let m = s.modulus;
    let top = s.max_degree.max(1);
    let (p, q) = s.bound.unwrap_or((top + 1, top + 1));
    let dc = build_double_complex_with(pair, m, p, q, s.guard).map_err(from_mp)?;
    let mut degrees = Vec::new();
    let mut text = format!("MP-H^i({name}, Z/{m}), bounds ({p}, {q})\n");
    for i in 1..=top {
        let h = dc.cohomology(i).map_err(from_mp)?;
        text.push_str(&format!("  MP-H^{i} = {}\n", render_group(h.invariant_factors())));
        let mut parts = Vec::new();
        for block in 1..=i {
            let r = dc.restricted_subgroup(&h, block).map_err(from_mp)?;
            text.push_str(&format!("    p = {block}: {}\n", render_group(r.presentation.invariant_factors())));
            parts.push(json!({ "p": block, "invariant_factors": r.presentation.invariant_factors() }));
        }
        degrees.push(json!({ "degree": i, "invariant_factors": h.invariant_factors(), "restricted": parts }));
    }
    Ok(Report { value: json!({ "target": name, "modulus": m, "bound": [p, q], "degrees": degrees }), text, ok: true })
}

fn bidegree(doc: &InputDocument, s: &Settings) -> Result<Report, CliError> {
    let (name, pair) = pair_target(doc, s)?;
    let m = s.modulus;
    let top = s.max_degree.max(1);
    let (p, q) = s.bound.unwrap_or((top + 1, top + 1));
    let dc = build_double_complex_with(pair, m, p, q, s.guard).map_err(from_mp)?;
    let mut entries = Vec::new();
    let mut ok = true;
    let mut text = format!("H^(i,j)({name}, Z/{m}) against H^i(T, H^j(N))\n");
    for i in 1..=top {
        for j in 1..=top + 1 - i {
            let bid = dc.bidegree_cohomology(i, j).map_err(from_mp)?;
            let it = iterated_group_cohomology(pair, m, i, j).map_err(from_mp)?;
            let same = bid.presentation.invariant_factors() == it.invariant_factors();
            ok &= same;
            text.push_str(&format!(
                "  ({i}, {j}): {} vs {}{}\n",
                render_group(bid.presentation.invariant_factors()),
                render_group(it.invariant_factors()),
                if same { "" } else { "  MISMATCH" }
            ));
            entries.push(json!({
                "i": i,
                "j": j,
                "bidegree": bid.presentation.invariant_factors(),
                "iterated": it.invariant_factors(),
                "isomorphic": same,
            }));
        }
    }
    Ok(Report { value: json!({ "target": name, "modulus": m, "bound": [p, q], "entries": entries }), text, ok })
}

fn kac_verify(doc: &InputDocument, s: &Settings) -> Result<Report, CliError> {
    let (name, pair) = pair_target(doc, s)?;
    let convention = match s.convention {
        Convention::A => PsiConvention::A,
        Convention::B => PsiConvention::B,
    };
    let opts = KacOptions { convention, guard: s.guard, ..KacOptions::default() };
    let r = verify_kac_exactness_with(pair, s.modulus, opts).map_err(from_kac)?;
    let ok = r.all_exact() && r.all_composites_zero();
    let mut text = format!("Kac sequence for {name} (|T| = {}, |N| = {}), Z/{}\n", r.order_t, r.order_n, r.modulus);
    for g in &r.groups {
        let shown = g.invariant_factors.as_deref().map_or_else(|| "(not computed)".to_string(), render_group);
        text.push_str(&format!("  {:<14} {shown}\n", g.label));
    }
    text.push_str(&format!("  res1 injective: {}\n", r.first_map_injective));
    for p in &r.positions {
        text.push_str(&format!("  position {} at {}: {}\n", p.position, p.label, if p.verdict.exact { "exact" } else { "NOT exact" }));
    }
    let value = json!({ "target": name, "report": serde_json::to_value(&r).expect("json") });
    Ok(Report { value, text, ok })
}

fn run_method6(doc: &InputDocument, s: &Settings) -> Result<Report, CliError> {
    let (name, block) = s.pick("method6 block", &doc.method6)?;
    let input = Method6Input {
        pair: &doc.pairs[&block.pair],
        lie: &doc.lies[&block.lie],
        side: block.side,
        action_t: &doc.actions[&block.action_t].action,
        action_n: &doc.actions[&block.action_n].action,
        modulus: s.modulus,
    };
    let r = method6(&input).map_err(from_lie)?;
    let mut text = format!("method6 {name} (Lie side {:?}), Z/{}\n", r.lie_side, r.modulus);
    text.push_str(&format!(
        "  dim H2(g) = {}; invariant dims under G(T), G(N), G: ({}, {}, {})\n",
        r.h2_lie_dim, r.h2_lie_invariant_t, r.h2_lie_invariant_n, r.h2_lie_invariant_all
    ));
    text.push_str(&format!(
        "  H2(G_other) = {}, fixed {}, quotient {}\n",
        render_group(&r.h2_other),
        render_group(&r.h2_other_invariant),
        render_group(&r.other_quotient)
    ));
    for step in &r.steps {
        text.push_str(&format!("  - {step}\n"));
    }
    text.push_str(&format!("  {}\n", r.summary()));
    let value = json!({ "target": name, "report": serde_json::to_value(&r).expect("json") });
    Ok(Report { value, text, ok: true })
}

fn ez_verify(doc: &InputDocument, s: &Settings) -> Result<Report, CliError> {
    let (name, pair) = pair_target(doc, s)?;
    let top = s.max_degree;
    let sign = match s.convention {
        Convention::A => ShuffleSign::Parity,
        Convention::B => ShuffleSign::Unsigned,
    };
    let x = CosimplicialBicomplex::from_matched_pair(pair, s.modulus, top + 1, s.guard).map_err(from_cos)?;
    let r = verify_ez(&x, top, sign).map_err(from_cos)?;
    let norm = x.diag().and_then(|d| d.normalize()).map_err(from_cos)?;
    let mut dold_kan = Vec::new();
    let mut ok = r.all_isomorphisms();
    let mut text = format!("Eilenberg-Zilber for {name}, Z/{}, shuffle sign {:?}\n", s.modulus, sign);
    for d in &r.degrees {
        text.push_str(&format!(
            "  n = {}: Tot {} | Diag {} | {}\n",
            d.degree,
            render_group(&d.tot),
            render_group(&d.diag),
            if d.mutually_inverse { "g*, f* inverse" } else { "NOT inverse" }
        ));
    }
    for d in &norm.degrees[..top + 1] {
        let iso = norm.inclusion_map(d.degree).map_err(from_cos)?.is_isomorphism();
        ok &= iso;
        text.push_str(&format!(
            "  Diag^{} rank {} = normalized {} + degenerate {}; H(N) -> H(C) iso: {iso}\n",
            d.degree, d.rank, d.normalized_rank, d.degenerate_rank
        ));
        dold_kan.push(json!({ "degree": d.degree, "normalized": d, "inclusion_iso": iso }));
    }
    Ok(Report {
        value: json!({ "target": name, "ez": serde_json::to_value(&r).expect("json"), "dold_kan": dold_kan }),
        text,
        ok,
    })
}
