use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use poset_koszul::algebra::{build_graded, hilbert_direct, hilbert_via_cohomology};
use poset_koszul::criteria::{verify_theorems, KPolicy};
use poset_koszul::exactlin::{Field, FieldSpec};
use poset_koszul::harness::{
    analyze, describe, full_check, search_witness, sweep, EnumerationSpec, HarnessError, PosetDocument, Predicate,
    REPORT_SCHEMA,
};
use poset_koszul::poset::{fixture, fixture_names, RankedPoset};
use poset_koszul::topology::{reduced_cohomology, spectral_sequence};
use poset_koszul::with_field;

#[derive(Parser)]
#[command(name = "poset-koszul", version, about = "Koszulity and Cohen-Macaulay checks for ranked posets")]
struct Cli {
    /// Field to compute over: `rational` or `gf:<p>`. Repeatable, or comma separated.
    #[arg(long = "field", visible_alias = "fields", global = true, value_delimiter = ',')]
    fields: Vec<FieldSpec>,
    /// Range of k in the weakly Cohen-Macaulay test.
    #[arg(long, global = true, default_value_t = KPolicy::Derived)]
    k_policy: KPolicy,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct Bounds {
    #[arg(long, default_value_t = 7)]
    max_elements: usize,
    #[arg(long, default_value_t = 6)]
    max_rank: usize,
    #[arg(long, default_value_t = 1)]
    min_rank: usize,
    /// Keep isomorphic copies in the stream.
    #[arg(long)]
    keep_isomorphs: bool,
    /// Largest number of cover bits per level profile.
    #[arg(long, default_value_t = 24)]
    budget_bits: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a poset file describes a ranked poset.
    Validate { input: String },
    /// Full report: verdicts, Hilbert series, annihilators, witnesses.
    Analyze { input: String },
    /// Reduced cohomology of the order complex and of every interval (*, x).
    Cohomology { input: String },
    /// Pages of the filtration spectral sequence and its checks.
    Spectral { input: String },
    /// Hilbert series by words and by interval cohomology.
    Hilbert { input: String },
    /// Every theorem cross-check on one poset.
    Verify { input: String },
    /// Exhaustive sweep over small cyclic posets.
    EnumerateVerify {
        #[command(flatten)]
        bounds: Bounds,
        /// Worker threads; the report does not depend on this.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Seed recorded in the report (the sweep itself is exhaustive).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// First enumerated poset satisfying a predicate such as `weakly_cm & !uniform`.
    Search {
        predicate: String,
        #[command(flatten)]
        bounds: Bounds,
    },
}

impl Bounds {
    fn spec(&self, fields: Vec<FieldSpec>) -> EnumerationSpec {
        EnumerationSpec {
            max_elements: self.max_elements,
            max_rank: self.max_rank,
            min_rank: self.min_rank,
            profile: None,
            reject_isomorphs: !self.keep_isomorphs,
            fields,
            budget_bits: self.budget_bits,
        }
    }
}

/// A document plus the poset it describes. `builtin:NAME` selects a shipped fixture.
fn load(input: &str) -> Result<(PosetDocument, RankedPoset), HarnessError> {
    if let Some(name) = input.strip_prefix("builtin:") {
        let p = fixture(name).ok_or_else(|| {
            HarnessError::Usage(format!("unknown builtin `{name}` (known: {})", fixture_names().join(", ")))
        })?;
        return Ok((PosetDocument::from_poset(name, FieldSpec::Rational, &p), p));
    }
    let text = fs::read_to_string(input).map_err(|e| HarnessError::Usage(format!("cannot read `{input}`: {e}")))?;
    let doc = PosetDocument::parse(&text)?;
    let p = doc.to_poset()?;
    Ok((doc, p))
}

/// Explicit `--field` values win; otherwise the document's own field.
fn fields_for(cli: &[FieldSpec], doc: &PosetDocument) -> Vec<FieldSpec> {
    if cli.is_empty() {
        vec![doc.field]
    } else {
        cli.to_vec()
    }
}

fn per_field(fields: &[FieldSpec], mut f: impl FnMut(FieldSpec) -> Result<Value, HarnessError>) -> Result<Value, HarnessError> {
    let mut out: Vec<Value> = fields.iter().map(|&s| f(s)).collect::<Result<_, _>>()?;
    Ok(if out.len() == 1 { out.pop().unwrap() } else { Value::Array(out) })
}

fn cohomology_in<F: Field>(p: &RankedPoset, field: &F) -> Value {
    let plus: Vec<usize> = p.plus().collect();
    let intervals: Vec<Value> = p
        .plus()
        .map(|x| {
            let h = reduced_cohomology(p, &p.open_interval(0, x).members, field);
            json!({ "upper": p.name(x), "reduced": h })
        })
        .collect();
    json!({ "order_complex": reduced_cohomology(p, &plus, field), "intervals": intervals })
}

/// Runs a command; the flag says whether a theorem violation turned up.
fn run(cli: &Cli) -> Result<(Value, bool), HarnessError> {
    let policy = cli.k_policy;
    match &cli.command {
        Command::Validate { input } => {
            let (doc, p) = load(input)?;
            Ok((
                json!({
                    "schema": REPORT_SCHEMA,
                    "name": doc.name,
                    "valid": true,
                    "elements": p.len(),
                    "rank": p.max_rank(),
                    "cyclic": p.is_cyclic(),
                    "pure": p.is_pure(),
                }),
                false,
            ))
        }
        Command::Analyze { input } => {
            let (doc, p) = load(input)?;
            let mut bad = false;
            let v = per_field(&fields_for(&cli.fields, &doc), |f| {
                let r = analyze(&p, &doc.name, f, policy)?;
                bad |= !r.consistent;
                Ok(serde_json::to_value(r)?)
            })?;
            Ok((v, bad))
        }
        Command::Cohomology { input } => {
            let (doc, p) = load(input)?;
            let v = per_field(&fields_for(&cli.fields, &doc), |f| {
                let body = with_field!(f, k => cohomology_in(&p, &k))?;
                Ok(json!({ "schema": REPORT_SCHEMA, "name": doc.name, "field": f, "cohomology": body }))
            })?;
            Ok((v, false))
        }
        Command::Spectral { input } => {
            let (doc, p) = load(input)?;
            let mut bad = false;
            let v = per_field(&fields_for(&cli.fields, &doc), |f| {
                let s = with_field!(f, k => spectral_sequence(&p, &k)?.summary(&p, &k))?;
                bad |= !s.all_checks_pass();
                Ok(json!({ "schema": REPORT_SCHEMA, "name": doc.name, "field": f, "spectral": s }))
            })?;
            Ok((v, bad))
        }
        Command::Hilbert { input } => {
            let (doc, p) = load(input)?;
            let mut bad = false;
            let v = per_field(&fields_for(&cli.fields, &doc), |f| {
                let (direct, via) = with_field!(f, k => (hilbert_direct(&build_graded(&p, &k)), hilbert_via_cohomology(&p, &k)))?;
                bad |= direct != via;
                Ok(json!({
                    "schema": REPORT_SCHEMA,
                    "name": doc.name,
                    "field": f,
                    "direct": direct,
                    "via_cohomology": via,
                    "agree": direct == via,
                }))
            })?;
            Ok((v, bad))
        }
        Command::Verify { input } => {
            let (doc, p) = load(input)?;
            let mut bad = false;
            let v = per_field(&fields_for(&cli.fields, &doc), |f| {
                let (theorems, check) = with_field!(f, k => {
                    let t = verify_theorems(&p, &k, policy)?;
                    let c = if p.is_cyclic() { Some(full_check(&p, &k, policy)?) } else { None };
                    (t, c)
                })?;
                let mut violations = theorems.violations.clone();
                if let Some(c) = &check {
                    for m in &c.violations {
                        if !violations.contains(m) {
                            violations.push(m.clone());
                        }
                    }
                }
                bad |= !violations.is_empty();
                Ok(json!({
                    "schema": REPORT_SCHEMA,
                    "name": doc.name,
                    "field": f,
                    "poset": describe(&p),
                    "theorems": theorems,
                    "violations": violations,
                }))
            })?;
            Ok((v, bad))
        }
        Command::EnumerateVerify { bounds, jobs, seed } => {
            let fields = if cli.fields.is_empty() {
                vec![FieldSpec::Rational]
            } else {
                cli.fields.clone()
            };
            let report = sweep(&bounds.spec(fields), policy, *jobs)?;
            let bad = !report.clean();
            let mut v = serde_json::to_value(report)?;
            if let Some(s) = seed {
                v["seed"] = json!(s);
            }
            Ok((v, bad))
        }
        Command::Search { predicate, bounds } => {
            let pred: Predicate = predicate.parse()?;
            let field = cli.fields.first().copied().unwrap_or(FieldSpec::Rational);
            let out = search_witness(&pred, &bounds.spec(vec![field]), field, policy)?;
            let bad = out.witness.as_ref().is_some_and(|w| !w.report.consistent);
            Ok((serde_json::to_value(out)?, bad))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let (value, violation) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let mut text = serde_json::to_string_pretty(&value).expect("report serializes");
    text.push('\n');
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: cannot write `{}`: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if violation {
        eprintln!("theorem violation detected");
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
