//! Command implementations behind the `monolin` binary.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use monolin::betti::{multigraded_betti_with, summarize, BettiConfig, Convention};
use monolin::clutter::{circuit_ideal, corollary_last_delta_with, Clutter};
use monolin::complex::{
    alexander_dual_ideal, is_cohen_macaulay_with, shelled_over_search, stanley_reisner_ideal,
    SimplicialComplex,
};
use monolin::explore::{explore, ExploreConfig, FindingClass};
use monolin::format::{ideal_to_json, parse_ideal, parse_monomial};
use monolin::linearity::{
    find_critical_base_with, has_linear_quotients_with_cap, is_critical_linear_with,
    is_quasi_linear, is_strongly_linear, strongly_linear_chain, ChainFile,
};
use monolin::monomial::monomials_of_degree;
use monolin::random::RandomKind;
use monolin::stable::stable_chain_to_power;
use monolin::{Error, FieldSpec, MonomialIdeal, VariableSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "monolin", version, about = "Linearity of monomial ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Field characteristic; repeat for several fields
    #[arg(long = "field", value_name = "P")]
    pub fields: Vec<u32>,
    /// Print a JSON report
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    /// Generator cap for Betti computations and ordering searches
    #[arg(long = "max-gens", value_name = "M")]
    pub max_gens: Option<usize>,
    /// Give up after this many seconds (exit code 3)
    #[arg(long, value_name = "SECS")]
    pub timeout: Option<u64>,
    /// Input file; standard input when absent or `-`
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multigraded and graded Betti numbers
    Betti {
        #[command(flatten)]
        common: Common,
        /// Report β(R/I) instead of β(I)
        #[arg(long)]
        quotient: bool,
    },
    /// Quasi-linearity with witnesses
    Quasilinear {
        #[command(flatten)]
        common: Common,
    },
    /// Linear quotients with a witness order
    Linquot {
        #[command(flatten)]
        common: Common,
    },
    /// Critical linearity and a critical base
    Critical {
        #[command(flatten)]
        common: Common,
    },
    /// Strongly linear monomials of degree d - 1
    Stronglin {
        #[command(flatten)]
        common: Common,
        /// Check a single monomial, e.g. `x1*x2`
        #[arg(long)]
        u: Option<String>,
    },
    /// Replay a strongly linear chain file
    Extend {
        #[command(flatten)]
        common: Common,
    },
    /// Chain of special monomials from a stable ideal to the maximal power
    StableChain {
        #[command(flatten)]
        common: Common,
    },
    /// Simplicial maximal subcircuits of a uniform clutter
    Clutter {
        #[command(flatten)]
        common: Common,
        /// Subcircuit e as 1-based comma-separated vertices
        #[arg(long)]
        e: Option<String>,
        /// Circuit to remove (comma-separated); repeatable
        #[arg(long = "remove")]
        remove: Vec<String>,
    },
    /// Shellability, duality and Cohen–Macaulayness of a complex
    Complex {
        #[command(flatten)]
        common: Common,
    },
    /// Sample random ideals and check the linearity hierarchy
    Explore {
        #[command(flatten)]
        common: Common,
        #[arg(long = "max-n", default_value_t = 5)]
        max_n: usize,
        #[arg(long = "max-d", default_value_t = 4)]
        max_d: u32,
        /// Ideal kinds to sample; repeatable
        #[arg(long = "kind")]
        kinds: Vec<String>,
        /// Append findings as JSON lines to this file
        #[arg(long)]
        log: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Betti { .. } => "betti",
            Command::Quasilinear { .. } => "quasilinear",
            Command::Linquot { .. } => "linquot",
            Command::Critical { .. } => "critical",
            Command::Stronglin { .. } => "stronglin",
            Command::Extend { .. } => "extend",
            Command::StableChain { .. } => "stable-chain",
            Command::Clutter { .. } => "clutter",
            Command::Complex { .. } => "complex",
            Command::Explore { .. } => "explore",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Betti { common, .. }
            | Command::Quasilinear { common }
            | Command::Linquot { common }
            | Command::Critical { common }
            | Command::Stronglin { common, .. }
            | Command::Extend { common }
            | Command::StableChain { common }
            | Command::Clutter { common, .. }
            | Command::Complex { common }
            | Command::Explore { common, .. } => common,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Timeout(u64),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Invariant(_)) => EXIT_INVARIANT,
            CliError::Core(Error::Resource { .. }) | CliError::Timeout(_) => EXIT_RESOURCE,
            CliError::Core(_) | CliError::Io(_) => EXIT_INPUT,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Timeout(s) => write!(f, "timed out after {s} s"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// A finished command: the JSON report and its human-readable form.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub text: String,
}

struct RunConfig {
    fields: Vec<FieldSpec>,
    betti: BettiConfig,
    cap: usize,
}

impl RunConfig {
    fn from_common(common: &Common) -> Result<Self, CliError> {
        let fields = if common.fields.is_empty() {
            vec![FieldSpec::default()]
        } else {
            common
                .fields
                .iter()
                .map(|&p| FieldSpec::new(p))
                .collect::<Result<_, _>>()?
        };
        let cap = common.max_gens.unwrap_or(monolin::betti::DEFAULT_GENERATOR_CAP);
        Ok(RunConfig {
            fields,
            betti: BettiConfig::default().with_max_gens(cap),
            cap,
        })
    }
}

fn read_input(common: &Common) -> Result<String, CliError> {
    match &common.file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn read_json(common: &Common) -> Result<Value, CliError> {
    let text = read_input(common)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Core(Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }))
}

fn parse_set(text: &str, n: usize) -> Result<VariableSet, CliError> {
    let mut out = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let i: usize = tok
            .parse()
            .map_err(|_| CliError::Core(Error::Domain(format!("`{tok}` is not a vertex"))))?;
        if i == 0 || i > n {
            return Err(CliError::Core(Error::Domain(format!("vertex {i} out of range 1..={n}"))));
        }
        out.push(i);
    }
    Ok(VariableSet::from_one_based(&out))
}

/// Run one command to completion. Input comes from the command's file
/// argument or standard input.
pub fn run_command(command: &Command) -> Result<Report, CliError> {
    let common = command.common();
    let config = RunConfig::from_common(common)?;
    let start = Instant::now();
    let (results, text) = match command {
        Command::Betti { quotient, .. } => betti(&parse_ideal(&read_input(common)?)?, &config, *quotient)?,
        Command::Quasilinear { .. } => quasilinear(&parse_ideal(&read_input(common)?)?),
        Command::Linquot { .. } => linquot(&parse_ideal(&read_input(common)?)?, &config)?,
        Command::Critical { .. } => critical(&parse_ideal(&read_input(common)?)?, &config)?,
        Command::Stronglin { u, .. } => stronglin(&parse_ideal(&read_input(common)?)?, u.as_deref())?,
        Command::Extend { .. } => extend(&ChainFile::from_json(&read_json(common)?)?)?,
        Command::StableChain { .. } => stable_chain(&parse_ideal(&read_input(common)?)?)?,
        Command::Clutter { e, remove, .. } => {
            clutter(&Clutter::from_json(&read_json(common)?)?, e.as_deref(), remove, &config)?
        }
        Command::Complex { .. } => complex(&SimplicialComplex::from_json(&read_json(common)?)?, &config)?,
        Command::Explore { max_n, max_d, kinds, log, .. } => {
            explore_cmd(common, &config, *max_n, *max_d, kinds, log.as_ref())?
        }
    };
    let json = json!({
        "command": command.name(),
        "fields": config.fields.iter().map(|f| f.characteristic()).collect::<Vec<_>>(),
        "results": results,
        "wall_time_ms": start.elapsed().as_secs_f64() * 1000.0,
    });
    Ok(Report { json, text })
}

type Output = (Value, String);

fn betti(ideal: &MonomialIdeal, config: &RunConfig, quotient: bool) -> Result<Output, CliError> {
    let convention = if quotient { Convention::Quotient } else { Convention::Ideal };
    let mut per_field = Vec::new();
    let mut text = format!("ideal: {ideal}\n");
    for &f in &config.fields {
        let table = multigraded_betti_with(ideal, f, convention, &config.betti)?;
        let ideal_table = if quotient {
            multigraded_betti_with(ideal, f, Convention::Ideal, &config.betti)?
        } else {
            table.clone()
        };
        let summary = (!ideal.is_zero()).then(|| summarize(ideal, &ideal_table));
        let _ = writeln!(text, "\nfield GF({}), beta({}):", f.characteristic(), convention.label());
        text.push_str(&table.render());
        if let Some(s) = &summary {
            let _ = writeln!(
                text,
                "reg(I) = {}, pd(I) = {}, linear resolution: {}",
                s.regularity,
                s.projective_dimension,
                yes_no(s.linear)
            );
        }
        per_field.push(json!({
            "field": f.characteristic(),
            "table": table.to_json(),
            "summary": summary.map(|s| s.to_json()),
        }));
    }
    Ok((json!({"ideal": ideal_to_json(ideal), "per_field": per_field}), text))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn quasilinear(ideal: &MonomialIdeal) -> Output {
    let r = is_quasi_linear(ideal);
    let mut text = format!("ideal: {ideal}\nquasi-linear: {}\n", yes_no(r.verdict));
    for (u, w) in &r.witnesses {
        let _ = writeln!(text, "  (I \\ {u}) : {u} has the generator {w}");
    }
    (json!({"ideal": ideal_to_json(ideal), "report": r.to_json()}), text)
}

fn linquot(ideal: &MonomialIdeal, config: &RunConfig) -> Result<Output, CliError> {
    let r = has_linear_quotients_with_cap(ideal, config.cap)?;
    let mut text = format!("ideal: {ideal}\nlinear quotients: {}\n", yes_no(r.verdict));
    if let Some(order) = &r.order {
        let names: Vec<String> = order.iter().map(|m| m.to_string()).collect();
        let _ = writeln!(text, "order: {}", names.join(", "));
    }
    Ok((json!({"ideal": ideal_to_json(ideal), "report": r.to_json()}), text))
}

fn critical(ideal: &MonomialIdeal, config: &RunConfig) -> Result<Output, CliError> {
    let mut per_field = Vec::new();
    let mut text = format!("ideal: {ideal}\n");
    for &f in &config.fields {
        let is_critical = is_critical_linear_with(ideal, f, &config.betti)?;
        let linear = monolin::betti::has_linear_resolution_with(ideal, f, &config.betti)?;
        let base = if linear {
            Some(find_critical_base_with(ideal, f, &config.betti)?)
        } else {
            None
        };
        let _ = writeln!(text, "field GF({}): critical linear: {}", f.characteristic(), yes_no(is_critical));
        if let Some(b) = &base {
            let _ = writeln!(text, "  critical base: {}", b.base);
        }
        per_field.push(json!({
            "field": f.characteristic(),
            "linear": linear,
            "critical": is_critical,
            "critical_base": base.as_ref().map(|b| ideal_to_json(&b.base)),
            "order": base.as_ref().map(|b| b.order.iter().map(|m| m.to_string()).collect::<Vec<_>>()),
        }));
    }
    Ok((json!({"ideal": ideal_to_json(ideal), "per_field": per_field}), text))
}

fn stronglin(ideal: &MonomialIdeal, u: Option<&str>) -> Result<Output, CliError> {
    let candidates = match u {
        Some(tok) => vec![parse_monomial(tok, ideal.n(), 1, 1)?],
        None => {
            let d = ideal
                .equigenerated_degree()
                .ok_or_else(|| Error::Domain(format!("{ideal} is not generated in a single degree")))?;
            monomials_of_degree(ideal.n(), d - 1)
        }
    };
    let mut rows = Vec::new();
    let mut text = format!("ideal: {ideal}\n");
    for v in &candidates {
        let sl = is_strongly_linear(v, ideal)?;
        if u.is_none() && !sl.verdict {
            continue;
        }
        let _ = match &sl.colon_support {
            Some(b) => writeln!(text, "{v}: strongly linear, colon support {b}"),
            None => writeln!(
                text,
                "{v}: not strongly linear, colon generator {}",
                sl.witness.as_ref().expect("failure has a witness")
            ),
        };
        rows.push(json!({
            "u": v.exponents(),
            "u_text": v.to_string(),
            "strongly_linear": sl.verdict,
            "colon_support": sl.colon_support.as_ref().map(VariableSet::to_one_based),
            "conditions": sl.conditions,
            "witness": sl.witness.as_ref().map(|w| w.to_string()),
        }));
    }
    if rows.is_empty() {
        text.push_str("no strongly linear monomials\n");
    }
    Ok((json!({"ideal": ideal_to_json(ideal), "monomials": rows}), text))
}

fn extend(file: &ChainFile) -> Result<Output, CliError> {
    let r = strongly_linear_chain(&file.base, file.d, &file.steps)?;
    let mut text = format!("base: {}\n", file.base);
    for (k, step) in file.steps.iter().enumerate() {
        let status = if r.verified[k] {
            "ok"
        } else if r.first_failure == Some(k) {
            "NOT strongly linear"
        } else {
            "not applied"
        };
        let _ = writeln!(text, "step {}: u = {}, A = {}: {status}", k + 1, step.u, step.vars);
    }
    let _ = writeln!(text, "final: {}", r.final_ideal);
    Ok((
        json!({
            "verified": r.verified,
            "first_failure": r.first_failure.map(|k| k + 1),
            "intermediates": r.intermediates.iter().map(ideal_to_json).collect::<Vec<_>>(),
            "final": ideal_to_json(&r.final_ideal),
        }),
        text,
    ))
}

fn stable_chain(ideal: &MonomialIdeal) -> Result<Output, CliError> {
    let steps = stable_chain_to_power(ideal)?;
    let d = ideal.equigenerated_degree().expect("checked by the chain");
    let mut text = format!("stable ideal: {ideal}\n");
    for (k, s) in steps.iter().enumerate() {
        let _ = writeln!(text, "step {}: v = {}, colon support {}", k + 1, s.v, s.colon_support);
    }
    let _ = writeln!(text, "{} steps to m^{d}", steps.len());
    let chain = ChainFile {
        d,
        base: ideal.clone(),
        steps: steps.iter().map(|s| s.chain_step()).collect(),
    };
    Ok((
        json!({
            "steps": steps.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            "chain": chain.to_json(),
        }),
        text,
    ))
}

fn clutter(
    c: &Clutter,
    e: Option<&str>,
    remove: &[String],
    config: &RunConfig,
) -> Result<Output, CliError> {
    let simp = c.simp_set();
    let comp = circuit_ideal(&c.complement());
    let mut text = format!("complement ideal: {comp}\nsimplicial maximal subcircuits:");
    for s in &simp {
        let _ = write!(text, " {s}");
    }
    text.push('\n');
    let mut out = json!({
        "clutter": c.to_json(),
        "complement_ideal": ideal_to_json(&comp),
        "simp_set": simp.iter().map(VariableSet::to_one_based).collect::<Vec<_>>(),
    });
    if let Some(e) = e {
        let e = parse_set(e, c.n())?;
        let removed = remove
            .iter()
            .map(|r| parse_set(r, c.n()))
            .collect::<Result<Vec<_>, _>>()?;
        let field = config.fields[0];
        let delta = corollary_last_delta_with(c, &e, &removed, field, &config.betti)?;
        let agree = delta.predicted == delta.measured;
        let _ = writeln!(text, "removing circuits around {e}: predicted delta matches measured: {}", yes_no(agree));
        out["delta"] = json!({
            "e": e.to_one_based(),
            "predicted": delta.predicted.to_json(),
            "measured": delta.measured.to_json(),
            "agree": agree,
        });
    }
    Ok((out, text))
}

fn complex(cx: &SimplicialComplex, config: &RunConfig) -> Result<Output, CliError> {
    let void = SimplicialComplex::new(cx.n(), [])?;
    let shelling = shelled_over_search(cx, &void)?;
    let dual = alexander_dual_ideal(cx);
    let sr = stanley_reisner_ideal(cx)?;
    let mut cm = Vec::new();
    for &f in &config.fields {
        cm.push(json!({"field": f.characteristic(), "cohen_macaulay": is_cohen_macaulay_with(cx, f, &config.betti)?}));
    }
    let mut text = format!(
        "dimension: {}\npure: {}\nshellable: {}\n",
        cx.dimension().map_or("void".to_string(), |d| d.to_string()),
        yes_no(cx.is_pure()),
        yes_no(shelling.is_some())
    );
    if let Some(order) = &shelling {
        let names: Vec<String> = order.iter().map(|f| f.to_string()).collect();
        let _ = writeln!(text, "shelling order: {}", names.join(" "));
    }
    let _ = writeln!(text, "Alexander dual ideal: {dual}\nStanley-Reisner ideal: {sr}");
    for v in &cm {
        let _ = writeln!(text, "Cohen-Macaulay over GF({}): {}", v["field"], yes_no(v["cohen_macaulay"] == true));
    }
    Ok((
        json!({
            "complex": cx.to_json(),
            "dimension": cx.dimension(),
            "pure": cx.is_pure(),
            "shelling_order": shelling.map(|o| o.iter().map(VariableSet::to_one_based).collect::<Vec<_>>()),
            "alexander_dual_ideal": ideal_to_json(&dual),
            "stanley_reisner_ideal": ideal_to_json(&sr),
            "cohen_macaulay": cm,
        }),
        text,
    ))
}

fn explore_cmd(
    common: &Common,
    config: &RunConfig,
    max_n: usize,
    max_d: u32,
    kinds: &[String],
    log: Option<&PathBuf>,
) -> Result<Output, CliError> {
    let kinds = if kinds.is_empty() {
        RandomKind::ALL.to_vec()
    } else {
        kinds.iter().map(|k| k.parse()).collect::<Result<_, _>>()?
    };
    let fields = if common.fields.is_empty() {
        vec![FieldSpec::two(), FieldSpec::default()]
    } else {
        config.fields.clone()
    };
    let explore_config = ExploreConfig {
        seed: common.seed,
        samples: common.samples,
        kinds,
        max_n,
        max_d,
        max_gens: common.max_gens.unwrap_or(8),
        fields,
        betti: config.betti,
    };
    let report = explore(&explore_config)?;
    if let Some(path) = log {
        use std::io::Write;
        let mut f = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        f.write_all(report.to_json_lines().as_bytes())
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let classes = [
        FindingClass::QuasiLinearNotLinear,
        FindingClass::LinearWithoutLinearQuotients,
        FindingClass::CharacteristicDependent,
        FindingClass::PolarizationDisagreement,
    ];
    let mut text = format!(
        "{} samples evaluated, {} skipped; hierarchy held on every sample\n",
        report.outcomes.len(),
        report.skipped.len()
    );
    let mut counts = serde_json::Map::new();
    for c in classes {
        let k = report.count(c);
        let _ = writeln!(text, "  {}: {k}", c.tag());
        counts.insert(c.tag().to_string(), json!(k));
    }
    let mut out = report.to_json();
    out["counts"] = Value::Object(counts);
    Ok((out, text))
}
