use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use basewright::actions::{build_action, degree_formula, ActionKind, ActionSpec, Point, DEFAULT_CAP};
use basewright::audit::{
    affine_generators, affine_order, audit_degrees, base_size, degree_suite, table_suite, theorem_sweep,
    verify_table, witness_report, VerificationReport, Verdict, VerifyOptions, ALGEBRA_LIMIT,
};
use basewright::bsgs::{schreier_sims_known_order, DEFAULT_BUDGET};
use basewright::clgroups::{load_permgroup, Family};
use basewright::error::Error;
use basewright::forms::{ClassicalForm, Sign};
use basewright::gf::{Elt, Field};
use basewright::linalg::Subspace;
use basewright::tables::{table_n1_base, TableId};

#[derive(Parser)]
#[command(name = "basewright", version, about = "Base sizes of primitive permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree of an action by closed formula, optionally checked by enumeration
    Degree {
        #[command(flatten)]
        action: ActionArgs,
        /// also enumerate the orbit
        #[arg(long)]
        enumerate: bool,
        /// write the orbit (points, then generator images) to this file
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Check that a table's candidate is a base
    VerifyTable {
        /// 1, 2, n1, 3, 4 or 6
        #[arg(long)]
        table: Option<String>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        sign: Option<String>,
        /// run the whole verification suite
        #[arg(long)]
        all: bool,
        /// largest orbit the permutation route enumerates
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        no_perm: bool,
        #[arg(long)]
        no_algebra: bool,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Exact minimum base size
    BaseSize {
        /// M11, M12, M23, M24, or AGL<d> for AGL_d(2)
        #[arg(long)]
        group: Option<String>,
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Non-scalar isometry fixing d-2 one-spaces of an even-dimensional quadratic space
    Witness {
        #[arg(long)]
        family: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: usize,
        /// the one-spaces as `v1;v2;...`, each `c1,c2,...` in field codes
        #[arg(long)]
        seed_point: Option<String>,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Sweep small primitive groups for b >= log2 n + 1
    Sweep {
        #[arg(long, default_value_t = 2000)]
        max_degree: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Compare degree formulas with orbit enumeration
    AuditDegrees {
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ActionArg {
    Singular,
    Nondeg,
    Nonsingular,
    Coset,
    Partitions,
}

#[derive(Args)]
struct ActionArgs {
    #[arg(long)]
    family: Option<String>,
    /// dimension; l for partitions, 2m for the coset action
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// subspace dimension; block size t for partitions
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    sign: Option<String>,
    #[arg(long, value_enum, default_value_t = ActionArg::Singular)]
    action: ActionArg,
    /// orbit seed as `r1;r2;...`, rows in field codes
    #[arg(long)]
    seed_point: Option<String>,
}

/// Usage problems exit with 2, failed checks with 1.
enum Fail {
    Usage(String),
    Check(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::Inadmissible { .. }
            | Error::BadParams(_)
            | Error::BadShape(_)
            | Error::SeedTagMismatch(_)
            | Error::NoFormula(_)
            | Error::Parse(_)
            | Error::OddQ
            | Error::OrbitTooLarge { .. }
            | Error::DimensionMismatch(_) => Fail::Usage(e.to_string()),
            _ => Fail::Check(e.to_string()),
        }
    }
}

type Out<T> = std::result::Result<T, Fail>;

fn usage(msg: impl Into<String>) -> Fail {
    Fail::Usage(msg.into())
}

fn parse_family(s: &str) -> Out<Family> {
    Family::parse(s).ok_or_else(|| usage(format!("--family: unknown family {:?} (GL, GU, Sp, GO+, GO-, GO)", s)))
}

fn parse_sign(s: Option<&str>) -> Out<Option<Sign>> {
    s.map(|s| Sign::parse(s).ok_or_else(|| usage(format!("--sign: expected +, - or o, got {:?}", s)))).transpose()
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Out<T> {
    v.ok_or_else(|| usage(format!("{} is required", flag)))
}

fn parse_rows(text: &str) -> Out<Vec<Vec<Elt>>> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    t.split(';')
        .map(|r| {
            r.split(',')
                .map(|c| c.trim().parse::<Elt>().map_err(|_| usage(format!("--seed-point: bad coordinate {:?}", c))))
                .collect()
        })
        .collect()
}

fn field_of(family: Family, q: usize) -> Out<Field> {
    Ok(if family == Family::GU { Field::quadratic(q)? } else { Field::new(q)? })
}

fn subspace_from_rows(f: &Field, d: usize, rows: &[Vec<Elt>]) -> Out<Subspace> {
    if rows.iter().any(|r| r.len() != d || r.iter().any(|&c| c as usize >= f.order())) {
        return Err(usage(format!("--seed-point: rows need {} coordinates below {}", d, f.order())));
    }
    Ok(Subspace::span(f, d, rows))
}

impl ActionArgs {
    fn spec(&self) -> Out<ActionSpec> {
        let sign = parse_sign(self.sign.as_deref())?;
        let d = need(self.d, "--d")?;
        Ok(match self.action {
            ActionArg::Partitions => {
                let t = self.k;
                if t == 0 || d % t != 0 {
                    return Err(usage("--k must divide --d for partitions"));
                }
                ActionSpec::partitions(d, d / t, t)
            }
            ActionArg::Coset => {
                if d % 2 == 1 {
                    return Err(usage("--d must be even (2m) for the coset action"));
                }
                let sign = sign.ok_or_else(|| usage("--sign + or - is required for the coset action"))?;
                ActionSpec::coset(d / 2, need(self.q, "--q")?, sign)
            }
            a => {
                let family = parse_family(self.family.as_deref().ok_or_else(|| usage("--family is required"))?)?;
                let q = need(self.q, "--q")?;
                let kind = match a {
                    ActionArg::Singular => ActionKind::Singular,
                    ActionArg::Nonsingular => ActionKind::Nonsingular1,
                    _ => ActionKind::Nondeg(sign.unwrap_or(if family.is_orthogonal() { Sign::Circ } else { Sign::None })),
                };
                ActionSpec::subspaces(family, d, q, self.k, kind)
            }
        })
    }

    fn seed(&self, spec: &ActionSpec) -> Out<Option<Point>> {
        let Some(text) = &self.seed_point else { return Ok(None) };
        if matches!(spec.kind, ActionKind::Partitions { .. }) {
            return Err(usage("--seed-point is not supported for partitions"));
        }
        let (family, d) = match spec.kind {
            ActionKind::CosetSpGo(_) => (Family::GOcirc, spec.d + 1),
            _ => (spec.family, spec.d),
        };
        let f = field_of(family, spec.q)?;
        Ok(Some(Point::Subspace(subspace_from_rows(&f, d, &parse_rows(text)?)?)))
    }
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Out<()> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(value).expect("report serializes");
        if p.as_os_str() == "-" {
            println!("{}", text);
        } else {
            std::fs::write(p, text).map_err(|e| Fail::Check(format!("writing {}: {}", p.display(), e)))?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct DegreeOut {
    instance: String,
    spec: ActionSpec,
    formula: Option<String>,
    enumerated: Option<usize>,
}

fn cmd_degree(action: &ActionArgs, enumerate: bool, dump: &Option<PathBuf>, json: &Option<PathBuf>) -> Out<bool> {
    let spec = action.spec()?;
    let formula = degree_formula(&spec);
    match &formula {
        Ok(n) => println!("{}: n = {}", spec, n),
        Err(e) => println!("{}: {}", spec, e),
    }
    let mut enumerated = None;
    if enumerate || dump.is_some() || action.seed_point.is_some() {
        let a = build_action(&spec, action.seed(&spec)?, DEFAULT_CAP)?;
        println!("enumerated orbit: {} points", a.degree());
        if let Some(p) = dump {
            std::fs::write(p, a.orbit.dump()).map_err(|e| Fail::Check(format!("writing {}: {}", p.display(), e)))?;
        }
        enumerated = Some(a.degree());
    }
    let agree = match (&formula, enumerated) {
        (Ok(n), Some(e)) => *n == BigUint::from(e),
        _ => true,
    };
    write_json(
        json,
        &DegreeOut {
            instance: spec.to_string(),
            spec: spec.clone(),
            formula: formula.as_ref().ok().map(|n| n.to_string()),
            enumerated,
        },
    )?;
    if formula.is_err() && enumerated.is_none() {
        return Err(usage(formula.unwrap_err().to_string()));
    }
    if !agree {
        println!("MISMATCH between formula and enumeration");
    }
    Ok(agree)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    table: &Option<String>,
    family: &Option<String>,
    d: Option<usize>,
    q: Option<usize>,
    sign: &Option<String>,
    all: bool,
    opts: VerifyOptions,
    json: &Option<PathBuf>,
) -> Out<bool> {
    let mut reports: Vec<VerificationReport> = Vec::new();
    if all {
        for r in table_suite() {
            let rep = verify_table(r.table, r.family, r.d, r.q, r.sign, &opts)?;
            println!("{}", rep.summary());
            reports.push(rep);
        }
    } else {
        let t = table.as_deref().ok_or_else(|| usage("--table is required (or --all)"))?;
        let table = TableId::parse(t).ok_or_else(|| usage(format!("--table: unknown table {:?}", t)))?;
        let family = match family {
            Some(f) => parse_family(f)?,
            None if table == TableId::T6 => Family::Sp,
            None => return Err(usage("--family is required")),
        };
        let sign = parse_sign(sign.as_deref())?.unwrap_or(Sign::None);
        let rep = verify_table(table, family, need(d, "--d")?, need(q, "--q")?, sign, &opts)?;
        println!("{}", rep.summary());
        for (i, p) in rep.candidate.iter().enumerate() {
            println!("  B{} = {}", i + 1, p.rendered);
        }
        for s in &rep.skipped {
            println!("  skipped: {}", s);
        }
        reports.push(rep);
    }
    let pass = reports.iter().all(|r| r.verdict == Verdict::Base);
    if reports.len() == 1 {
        write_json(json, &reports[0])?;
    } else {
        write_json(json, &reports)?;
        println!("{} of {} candidates verified", reports.iter().filter(|r| r.verdict == Verdict::Base).count(), reports.len());
    }
    Ok(pass)
}

fn cmd_base_size(group: &Option<String>, action: &ActionArgs, budget: u64, json: &Option<PathBuf>) -> Out<bool> {
    let (name, chain) = match group {
        Some(g) if g.starts_with('M') => {
            let (set, chain) = load_permgroup(g)?;
            (set.name, chain)
        }
        Some(g) if g.starts_with("AGL") => {
            let d: usize = g[3..].parse().map_err(|_| usage(format!("--group: bad affine group {:?}", g)))?;
            if !(2..=16).contains(&d) {
                return Err(usage("--group AGL<d> needs 2 <= d <= 16"));
            }
            let chain = schreier_sims_known_order(1 << d, &affine_generators(d), &[], &affine_order(d), 2000)?;
            (format!("AGL({},2)", d), chain)
        }
        Some(g) => return Err(usage(format!("--group: unknown group {:?}", g))),
        None => {
            let spec = action.spec()?;
            let a = build_action(&spec, action.seed(&spec)?, DEFAULT_CAP)?;
            (spec.to_string(), a.chain()?)
        }
    };
    let rep = base_size(&name, &chain, budget);
    println!("{}", rep.line());
    write_json(json, &rep)?;
    Ok(rep.exact.is_some())
}

fn cmd_witness(family: &str, d: usize, q: usize, seed: &Option<String>, json: &Option<PathBuf>) -> Out<bool> {
    let family = parse_family(family)?;
    if !matches!(family, Family::GOplus | Family::GOminus) {
        return Err(usage("--family must be GO+ or GO-"));
    }
    let f = field_of(family, q)?;
    let form = ClassicalForm::standard(family.kind(), family.sign(), d, &f)?;
    let spaces: Vec<Subspace> = match seed {
        Some(text) => {
            parse_rows(text)?.into_iter().map(|r| subspace_from_rows(&f, d, &[r])).collect::<Out<Vec<_>>>()?
        }
        None => {
            let sign = if q % 2 == 0 { Sign::None } else { Sign::Circ };
            let c = table_n1_base(family, d, q, sign)?;
            c.points.into_iter().take(d.saturating_sub(2)).collect()
        }
    };
    let rep = witness_report(family, q, &form, &spaces)?;
    for (i, s) in rep.spaces.iter().enumerate() {
        println!("  <v{}> = {}", i + 1, s.rendered);
    }
    println!("g =");
    for row in &rep.matrix {
        println!("  [{}]", row.join(" "));
    }
    println!("isometry={} stabilizes_all={} non_scalar={}", rep.isometry, rep.stabilizes_all, rep.non_scalar);
    write_json(json, &rep)?;
    Ok(rep.ok())
}

fn cmd_sweep(max_degree: usize, budget: u64, json: &Option<PathBuf>) -> Out<bool> {
    let rep = theorem_sweep(max_degree, budget)?;
    for r in &rep.rows {
        let b = match r.b_exact {
            Some(b) => b.to_string(),
            None if r.excluded.is_some() => "-".into(),
            None => format!("{}..{}", r.b_lower, r.b_upper),
        };
        let tag = match (&r.excluded, r.exceptional) {
            (Some(why), _) => format!("excluded: {}", why),
            (None, Some(true)) => "EXCEPTIONAL".into(),
            (None, Some(false)) => String::new(),
            (None, None) => "undetermined".into(),
        };
        println!("{:<50} n={:<5} b={:<6} ceil(log n)+1={:<3} {}", r.instance, r.degree, b, r.ceil_log_n_plus_1, tag);
    }
    println!("exceptional: {}", rep.exceptional.join(", "));
    for (label, list) in [
        ("unexpected exceptional rows", &rep.unexpected),
        ("expected rows not exceptional", &rep.missing),
        ("bound violations", &rep.bound_violations),
        ("undetermined rows", &rep.undetermined),
    ] {
        if !list.is_empty() {
            println!("{}: {}", label, list.join(", "));
        }
    }
    println!("sweep {}", if rep.pass { "PASS" } else { "FAIL" });
    write_json(json, &rep)?;
    Ok(rep.pass)
}

fn cmd_audit(cap: usize, json: &Option<PathBuf>) -> Out<bool> {
    let rep = audit_degrees(&degree_suite(), cap)?;
    for r in &rep.rows {
        println!("{:<50} formula={:<8} enumerated={:<8} {}", r.instance, r.formula, r.enumerated, if r.agree { "ok" } else { "MISMATCH" });
    }
    write_json(json, &rep)?;
    Ok(rep.pass)
}

fn run(cli: Cli) -> Out<bool> {
    match &cli.command {
        Command::Degree { action, enumerate, dump, json } => cmd_degree(action, *enumerate, dump, json),
        Command::VerifyTable { table, family, d, q, sign, all, cap, no_perm, no_algebra, json } => {
            let opts = VerifyOptions { cap: *cap, algebra_limit: ALGEBRA_LIMIT, algebra: !no_algebra, perm: !no_perm };
            cmd_verify(table, family, *d, *q, sign, *all, opts, json)
        }
        Command::BaseSize { group, action, budget, json } => cmd_base_size(group, action, *budget, json),
        Command::Witness { family, d, q, seed_point, json } => cmd_witness(family, *d, *q, seed_point, json),
        Command::Sweep { max_degree, budget, json } => cmd_sweep(*max_degree, *budget, json),
        Command::AuditDegrees { cap, json } => cmd_audit(*cap, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail::Check(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("usage error: {}", msg);
            ExitCode::from(2)
        }
    }
}
