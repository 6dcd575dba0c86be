//! Command-line front end. [`run`] takes the arguments after the program name and returns
//! the exit code with captured output, so the binary is a thin wrapper and tests need no
//! subprocesses.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::census::{empirical_ratio, round_half_even, summarize, to_csv, CensusError, QuarticDensities};
use crate::classifier::{verify_case_analysis, Signature, ADMISSIBLE_SEXTIC};
use crate::lmfdb::{census_entries, fixtures, Cache, Client, LmfdbError, LmfdbRecord, QuerySpec};
use crate::numfield::{classify_field, identify_galois, signature, IntegerPolynomial, NumfieldError};
use crate::permgroup::{reference_group, subgroup_lattice, PermutationGroup, TransitiveLabel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "cmfield",
    version,
    about = "Classify totally imaginary quartic and sextic fields as CM, CM-type or TR-type"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Signature, Galois group and field type of the field defined by a polynomial.
    Classify(PolyArg),
    /// Galois group of an irreducible quartic or sextic.
    Galois(PolyArg),
    /// Signature (r1, r2) of a squarefree polynomial.
    Signature(PolyArg),
    /// Subgroup lattice of D4, D6, S4 or a transitive group nTk.
    Lattice {
        #[arg(long)]
        group: String,
        /// Graphviz output instead of a table.
        #[arg(long)]
        dot: bool,
    },
    /// Re-derive the sextic case analysis for one label or for all admissible labels.
    TheoremCheck {
        #[arg(long, conflicts_with = "all")]
        label: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Proportion of S4 fields among totally imaginary quartic fields.
    Bayes(BayesArgs),
    /// CM-type ratio among totally imaginary fields with bounded discriminant.
    Census {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["4", "6"]))]
        degree: String,
        #[arg(long)]
        xmax: u64,
        /// Number of evenly spaced bounds up to `--xmax`.
        #[arg(long, default_value_t = 10)]
        steps: u64,
        /// Use the committed corpus instead of the fetch cache.
        #[arg(long)]
        offline: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Query the number field database and store the rows in the cache.
    Fetch(FetchArgs),
}

#[derive(Args, Debug)]
struct PolyArg {
    /// Polynomial such as `x^4 - x + 1` or ascending coefficients `1,-1,0,0,1`.
    #[arg(long)]
    poly: String,
}

#[derive(Args, Debug)]
struct BayesArgs {
    #[arg(long = "pD4", default_value = "0.17111")]
    p_d4: String,
    #[arg(long = "pS4", default_value = "0.82889")]
    p_s4: String,
    #[arg(long = "pTIS4", default_value = "0.30")]
    p_ti_s4: String,
    #[arg(long = "pTID4", default_value = "0.71747")]
    p_ti_d4: String,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Flag {
    True,
    False,
}

#[derive(Args, Debug)]
struct FetchArgs {
    #[arg(long)]
    degree: Option<usize>,
    /// Signature as `r1,r2`.
    #[arg(long)]
    signature: Option<String>,
    #[arg(long)]
    galois: Option<String>,
    #[arg(long)]
    cm: Option<Flag>,
    #[arg(long)]
    xmax: Option<u64>,
    /// Fetch a single field by label instead of a query.
    #[arg(long, conflicts_with_all = ["degree", "signature", "galois", "cm", "xmax"])]
    label: Option<String>,
    #[arg(long, default_value_t = 100)]
    page_size: usize,
    #[arg(long, default_value_t = 1)]
    pages: usize,
    /// Allow network access; without it only the cache is consulted.
    #[arg(long)]
    online: bool,
}

/// A failure inside a command, reported with exit code 1.
#[derive(Debug)]
struct DomainError {
    kind: &'static str,
    message: String,
}

impl DomainError {
    fn new(kind: &'static str, message: impl ToString) -> Self {
        DomainError { kind, message: message.to_string() }
    }
}

impl From<NumfieldError> for DomainError {
    fn from(e: NumfieldError) -> Self {
        DomainError::new("numfield", e)
    }
}

impl From<LmfdbError> for DomainError {
    fn from(e: LmfdbError) -> Self {
        DomainError::new("lmfdb", e)
    }
}

impl From<CensusError> for DomainError {
    fn from(e: CensusError) -> Self {
        DomainError::new("census", e)
    }
}

/// Output of a successful command: human text and the JSON document, plus the exit code
/// (theorem checks exit 1 when any check fails).
struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: EXIT_OK }
    }
}

pub fn run<I, S>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = std::iter::once("cmfield".to_string()).chain(args.into_iter().map(Into::into)).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome { exit_code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                CommandOutcome { exit_code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let json = cli.json;
    match dispatch(cli.command) {
        Ok(out) => {
            let stdout =
                if json { format!("{}\n", serde_json::to_string_pretty(&out.json).expect("json")) } else { out.text };
            CommandOutcome { exit_code: out.code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stderr = if json {
                format!("{}\n", json!({ "error": { "kind": e.kind, "message": e.message } }))
            } else {
                format!("error: {}\n", e.message)
            };
            CommandOutcome { exit_code: EXIT_DOMAIN, stdout: String::new(), stderr }
        }
    }
}

fn dispatch(cmd: Command) -> Result<Output, DomainError> {
    match cmd {
        Command::Classify(a) => classify(&a.poly),
        Command::Galois(a) => galois(&a.poly),
        Command::Signature(a) => signature_cmd(&a.poly),
        Command::Lattice { group, dot } => lattice(&group, dot),
        Command::TheoremCheck { label, all: _ } => theorem_check(label.as_deref()),
        Command::Bayes(a) => bayes(&a),
        Command::Census { degree, xmax, steps, offline, csv } => {
            census(degree.parse().expect("restricted to 4 or 6"), xmax, steps, offline, csv)
        }
        Command::Fetch(a) => fetch(&a),
    }
}

fn parse_poly(s: &str) -> Result<IntegerPolynomial, DomainError> {
    s.parse().map_err(DomainError::from)
}

fn classify(poly: &str) -> Result<Output, DomainError> {
    let f = parse_poly(poly)?;
    let r = classify_field(&f)?;
    let mut text = String::new();
    let _ = writeln!(text, "polynomial     {}", r.polynomial);
    let _ = writeln!(text, "signature      {}", r.signature);
    let _ = writeln!(text, "discriminant   {}", r.discriminant);
    let _ = writeln!(text, "galois group   {} ({} primes)", r.galois.label, r.galois.primes_used);
    if let Some(c) = r.cubic_subfield {
        let _ = writeln!(text, "cubic subfield {}", serde_json::to_value(c).expect("json").as_str().unwrap_or(""));
    }
    for q in &r.quadratic_subfields {
        let _ = writeln!(text, "quadratic      {} {}", q.polynomial, q.signature);
    }
    let _ = writeln!(text, "verdict        {}", r.verdict.category);
    if r.verdict.beyond_paper_table {
        let _ = writeln!(text, "note           refined from the subfield structure");
    }
    Ok(Output::ok(text, serde_json::to_value(&r).expect("json")))
}

fn galois(poly: &str) -> Result<Output, DomainError> {
    let f = parse_poly(poly)?;
    let g = identify_galois(&f)?;
    let types: Vec<String> = g.observed_cycle_types.iter().map(|t| t.to_string()).collect();
    let text = format!(
        "{}\nmethod {:?}, {} primes, discriminant square: {}\nobserved cycle types: {}\n",
        g.label,
        g.method,
        g.primes_used,
        g.disc_is_square,
        types.join(" ")
    );
    Ok(Output::ok(text, serde_json::to_value(&g).expect("json")))
}

fn signature_cmd(poly: &str) -> Result<Output, DomainError> {
    let f = parse_poly(poly)?;
    let s = signature(&f)?;
    Ok(Output::ok(format!("{s}\n"), json!({ "polynomial": f.to_string(), "r1": s.r1, "r2": s.r2 })))
}

fn named_group(name: &str) -> Result<(String, PermutationGroup), DomainError> {
    let label = match name.to_ascii_lowercase().as_str() {
        "d4" => "4T3".to_string(),
        "d6" => "6T3".to_string(),
        "s4" => "4T5".to_string(),
        _ => name.to_string(),
    };
    let parsed: TransitiveLabel =
        label.parse().map_err(|_| DomainError::new("usage", format!("unknown group {name}; use d4, d6, s4 or nTk")))?;
    let known = crate::permgroup::transitive_labels(parsed.degree).map_err(|e| DomainError::new("group", e))?;
    if !known.contains(&parsed) {
        return Err(DomainError::new("group", format!("no transitive group {parsed}")));
    }
    Ok((parsed.to_string(), reference_group(parsed).clone()))
}

fn lattice(name: &str, dot: bool) -> Result<Output, DomainError> {
    let (label, g) = named_group(name)?;
    let l = subgroup_lattice(&g).map_err(|e| DomainError::new("group", e))?;
    let text = if dot {
        l.to_dot(&label)
    } else {
        let mut t = format!("{label}: {} subgroups, {} covering edges\n", l.nodes.len(), l.edges.len());
        for (i, k) in l.nodes.iter().enumerate() {
            let gens: Vec<String> = k.generators().iter().map(|p| p.to_string()).collect();
            let below: Vec<String> = l.below(i).iter().map(|j| j.to_string()).collect();
            let _ = writeln!(t, "{i:>3}  order {:>3}  <{}>  covers [{}]", k.order(), gens.join(", "), below.join(", "));
        }
        t
    };
    let mut doc = l.to_json();
    doc["group"] = json!(label);
    Ok(Output::ok(text, doc))
}

fn theorem_check(label: Option<&str>) -> Result<Output, DomainError> {
    let labels: Vec<TransitiveLabel> = match label {
        Some(l) => vec![l.parse().map_err(|_| DomainError::new("usage", format!("not a transitive label: {l}")))?],
        None => ADMISSIBLE_SEXTIC.iter().map(|&k| TransitiveLabel { degree: 6, index: k }).collect(),
    };
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut all_pass = true;
    for l in labels {
        let r = verify_case_analysis(l).map_err(|e| DomainError::new("classifier", e))?;
        let pass = r.passed();
        all_pass &= pass;
        let _ = writeln!(text, "[{}] {l}: {} checks", if pass { "PASS" } else { "FAIL" }, r.checks.len());
        for c in r.failures() {
            let _ = writeln!(text, "    {}: expected {}, observed {}", c.name, c.expected, c.observed);
        }
        reports.push(r.to_json());
    }
    Ok(Output {
        text,
        json: json!({ "passed": all_pass, "reports": reports }),
        code: if all_pass { EXIT_OK } else { EXIT_DOMAIN },
    })
}

fn bayes(a: &BayesArgs) -> Result<Output, DomainError> {
    let d = QuarticDensities::from_decimals(&a.p_d4, &a.p_s4, &a.p_ti_s4, &a.p_ti_d4)?;
    let r = crate::census::bayes_posterior(&d)?;
    let (s4, cm) = r.rounded(5);
    let text = format!("P(S4 | TI) = {s4}  (TR-type)\nP(CM-type) = {cm}\n");
    let json = json!({
        "inputs": d,
        "p_s4_given_ti": s4,
        "p_cm": cm,
        "exact": { "p_s4_given_ti": r.p_s4_given_ti.to_string(), "p_cm": r.p_cm.to_string() },
    });
    Ok(Output::ok(text, json))
}

fn census_records(degree: usize, xmax: u64, offline: bool) -> Result<Vec<LmfdbRecord>, DomainError> {
    if offline {
        return Ok(if degree == 4 { fixtures::quartics() } else { fixtures::sextics() });
    }
    let client = Client::from_env(false);
    let mut q = QuerySpec::totally_imaginary(degree);
    q.max_abs_disc = Some(xmax);
    q.page_size = crate::lmfdb::MAX_PAGE_SIZE;
    let mut out = Vec::new();
    loop {
        let page = client.fetch(&q).map_err(|e| match e {
            LmfdbError::Offline(url) => DomainError::new(
                "lmfdb",
                format!("{url} is not cached; run `cmfield fetch --degree {degree} --signature 0,{} --xmax {xmax} --page-size {} --pages N --online` or pass --offline", degree / 2, q.page_size),
            ),
            e => e.into(),
        })?;
        let n = page.records.len();
        out.extend(page.records);
        if n < q.page_size {
            return Ok(out);
        }
        q = q.next_page();
    }
}

fn census(degree: usize, xmax: u64, steps: u64, offline: bool, csv: bool) -> Result<Output, DomainError> {
    if xmax == 0 || steps == 0 {
        return Err(DomainError::new("usage", "--xmax and --steps must be positive"));
    }
    let records = census_records(degree, xmax, offline)?;
    let (entries, failed) = census_entries(&records);
    let grid: Vec<u64> = (1..=steps).map(|i| (xmax * i).div_ceil(steps)).collect();
    let counts = empirical_ratio(&entries, &grid)?;
    let summary = summarize(degree, counts);
    let text = if csv {
        to_csv(&summary.counts)?
    } else {
        let mut t = format!("degree {degree}, {} totally imaginary records", entries.len());
        if !failed.is_empty() {
            let _ = write!(t, " ({} failed to classify)", failed.len());
        }
        t.push('\n');
        let _ = writeln!(t, "{:>10} {:>8} {:>8} {:>8}", "X", "n_TI", "n_CM", "ratio");
        for c in &summary.counts {
            let r = c.ratio.as_ref().map(|r| round_half_even(r, 5)).unwrap_or_else(|| "-".into());
            let _ = writeln!(t, "{:>10} {:>8} {:>8} {:>8}", c.bound, c.n_ti, c.n_cm, r);
        }
        if let (Some(limit), Some(dir)) = (&summary.asymptotic_cm, summary.direction) {
            let _ = writeln!(t, "asymptotic CM-type proportion {limit}; largest-X ratio is {dir:?}");
        }
        let _ = writeln!(t, "note: {}", summary.note);
        t
    };
    let mut json = serde_json::to_value(&summary).expect("json");
    json["unclassified"] = json!(failed);
    Ok(Output::ok(text, json))
}

fn parse_signature(s: &str) -> Result<Signature, DomainError> {
    let bad = || DomainError::new("usage", format!("signature must be r1,r2: {s}"));
    let (a, b) = s.trim_matches(['[', ']', '(', ')']).split_once(',').ok_or_else(bad)?;
    Ok(Signature::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn fetch(a: &FetchArgs) -> Result<Output, DomainError> {
    let client = Client::from_env(a.online);
    let pages = if let Some(label) = &a.label {
        vec![client.fetch_label(label)?]
    } else {
        let degree = a.degree.ok_or_else(|| DomainError::new("usage", "--degree or --label is required"))?;
        let mut q = QuerySpec::new(degree);
        q.signature = a.signature.as_deref().map(parse_signature).transpose()?;
        q.galois_label = a
            .galois
            .as_deref()
            .map(|g| g.parse().map_err(|_| DomainError::new("usage", format!("not a transitive label: {g}"))))
            .transpose()?;
        q.cm = a.cm.map(|f| matches!(f, Flag::True));
        q.max_abs_disc = a.xmax;
        q.page_size = a.page_size;
        client.fetch_all(&q, a.pages.max(1))?
    };
    let cache: &Cache = &client.cache;
    let mut text = String::new();
    let mut docs = Vec::new();
    for p in &pages {
        let _ = writeln!(
            text,
            "{} records ({}) -> {}\n  {}",
            p.records.len(),
            if p.from_cache { "cached" } else { "fetched" },
            cache.path_for(&p.url).display(),
            p.url
        );
        for s in &p.skipped {
            let _ = writeln!(text, "  skipped {s}");
        }
        docs.push(json!({
            "url": p.url,
            "records": p.records.len(),
            "from_cache": p.from_cache,
            "skipped": p.skipped,
            "cache_file": cache.path_for(&p.url).display().to_string(),
        }));
    }
    Ok(Output::ok(text, json!({ "pages": docs })))
}
