//! Command-line front end. [`run`] parses arguments, computes, and renders
//! one [`OutputRecord`] as a table, JSON or CSV.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::dims::DimensionTable;
use crate::error::{Error, Result};
use crate::ext::{self, LocalFieldParams};
use crate::hall;
use crate::hp::{self, DemushkinRelation, FInvariant, GroupFamily, RelationCase};
use crate::local;
use crate::pgroup::{self, GroupSpec};
use crate::series::TruncatedSeries;
use crate::verify;

/// Truncation orders above this need `--unsafe-order`.
pub const ORDER_CAP: usize = 64;
/// Environment variable holding the worker-thread count.
pub const THREADS_ENV: &str = "ZASSENHAUS_THREADS";

#[derive(Parser, Debug)]
#[command(name = "zassenhaus", version, about = "Zassenhaus filtrations and p-extension counts")]
struct Cli {
    /// Emit one JSON object.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (header and rows).
    #[arg(long, global = true)]
    csv: bool,
    /// Allow truncation orders above 64.
    #[arg(long, global = true)]
    unsafe_order: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert-Poincaré series of a group family.
    Series {
        #[command(flatten)]
        family: FamilyArgs,
        /// Truncation order.
        #[arg(long, default_value = "10", value_parser = big)]
        order: BigInt,
    },
    /// The b, w and c tables of a group family.
    Dims {
        #[command(flatten)]
        family: FamilyArgs,
        /// Largest n to tabulate.
        #[arg(long, default_value = "8", value_parser = big)]
        upto: BigInt,
    },
    /// Hall commutators of a given weight, or a Zassenhaus basis with `--p`.
    Hall {
        #[arg(long, value_parser = big)]
        rank: BigInt,
        #[arg(long, value_parser = big)]
        weight: BigInt,
        /// List the elements, not just the count.
        #[arg(long)]
        list: bool,
        /// Give the basis of the Zassenhaus quotient at this prime instead.
        #[arg(long, value_parser = big)]
        p: Option<BigInt>,
    },
    /// Möbius function of the subgroup lattice of a built-in group.
    Mobius {
        /// e.g. d4, klein, cyclic:8, abelian:2,2,2, dihedral:8, unipotent:3:3, semidirect:2:1
        #[arg(long)]
        group: GroupSpec,
    },
    /// Zassenhaus filtration of a built-in p-group.
    Pgroup {
        #[arg(long)]
        group: GroupSpec,
        /// Prime; defaults to the prime dividing the group order.
        #[arg(long, value_parser = big)]
        p: Option<BigInt>,
        /// Number of levels; defaults to the depth of the filtration.
        #[arg(long, value_parser = big)]
        levels: Option<BigInt>,
    },
    /// Extension counts.
    #[command(subcommand)]
    Count(CountCommand),
    /// Runs the built-in cross-checks.
    Verify {
        /// Run every check (the default).
        #[arg(long)]
        all: bool,
        /// Run a single check by number.
        #[arg(long, conflicts_with = "all", value_parser = big)]
        check: Option<BigInt>,
    },
}

#[derive(Subcommand, Debug)]
enum CountCommand {
    /// ν(K, G) for a degree-n field without p-th roots of unity.
    Shafarevich {
        #[arg(long, value_parser = big)]
        p: BigInt,
        #[arg(long, value_parser = big)]
        n: BigInt,
        #[arg(long)]
        group: GroupSpec,
    },
    /// ν(K, G) from the subgroup-lattice sum over relation solutions.
    Yamagishi {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        group: GroupSpec,
    },
    /// ν(K, U_3(F_p)) by closed form and by isotropic pairs.
    U3 {
        #[arg(long, value_parser = big)]
        p: BigInt,
        #[arg(long, value_parser = big)]
        n: BigInt,
        #[arg(long, value_parser = big)]
        q: BigInt,
    },
    /// D_4-extensions of a SAP field with n orderings.
    Sap {
        #[arg(long, value_parser = big)]
        n: BigInt,
    },
    /// D_4-extensions of Q_p from Hilbert symbols.
    D4Local {
        #[arg(long, value_parser = big)]
        p: BigInt,
    },
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[arg(long, value_parser = big)]
    p: BigInt,
    /// Rank (free, demushkin, cyclic-free) or d (superpythagorean).
    #[arg(long, value_parser = big)]
    rank: Option<BigInt>,
    /// Number of cyclic factors (free-product-cyclic).
    #[arg(long, value_parser = big)]
    copies: Option<BigInt>,
    /// Comma-separated Demushkin ranks (mixed).
    #[arg(long, value_delimiter = ',', value_parser = big)]
    demushkin_ranks: Vec<BigInt>,
    /// Free rank (mixed).
    #[arg(long, value_parser = big)]
    free_rank: Option<BigInt>,
    /// Demushkin relation case; recorded but not needed for the series.
    #[arg(long, value_enum, requires = "q")]
    case: Option<CaseArg>,
    #[arg(long, value_parser = big)]
    q: Option<BigInt>,
    /// The f invariant: an integer at least 2, or `inf`.
    #[arg(long, default_value = "2")]
    f: String,
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long, value_parser = big)]
    p: BigInt,
    /// Degree over Q_p.
    #[arg(long, value_parser = big)]
    n: BigInt,
    /// Largest p-power root of unity in K; omit when K has none.
    #[arg(long, value_parser = big)]
    q: Option<BigInt>,
    /// Relation case; chosen from (n, q) when omitted.
    #[arg(long, value_enum, requires = "q")]
    case: Option<CaseArg>,
    /// The f invariant: an integer at least 2, or `inf`.
    #[arg(long, default_value = "2")]
    f: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyKind {
    Free,
    Demushkin,
    #[value(alias = "cyclic-free-product")]
    FreeProductCyclic,
    #[value(alias = "superpyth")]
    Superpythagorean,
    Mixed,
    CyclicFree,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CaseArg {
    R1,
    R2,
    R3,
    R4,
}

impl From<CaseArg> for RelationCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::R1 => RelationCase::R1,
            CaseArg::R2 => RelationCase::R2,
            CaseArg::R3 => RelationCase::R3,
            CaseArg::R4 => RelationCase::R4,
        }
    }
}

fn big(s: &str) -> std::result::Result<BigInt, String> {
    s.trim().parse::<BigInt>().map_err(|_| format!("'{s}' is not an integer"))
}

/// One named exact value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultEntry {
    pub name: String,
    pub value: String,
}

/// Structured output of one command. Numbers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub results: Vec<ResultEntry>,
    pub provenance: Vec<String>,
}

/// A record plus the rows shown in table and CSV form.
struct Report {
    record: OutputRecord,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    /// Set by `verify` when some check failed.
    failed: bool,
}

impl Report {
    fn new(command: &str, columns: Vec<&'static str>) -> Self {
        Report {
            record: OutputRecord {
                command: command.to_string(),
                parameters: BTreeMap::new(),
                results: Vec::new(),
                provenance: Vec::new(),
            },
            columns,
            rows: Vec::new(),
            failed: false,
        }
    }

    fn param(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.record.parameters.insert(key.to_string(), value.to_string());
        self
    }

    fn result(&mut self, name: impl Into<String>, value: impl Display) {
        self.record.results.push(ResultEntry { name: name.into(), value: value.to_string() });
    }

    fn source(&mut self, s: impl Into<String>) {
        self.record.provenance.push(s.into());
    }

    fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    /// Adds a `name, value` row and the matching result entry.
    fn pair(&mut self, name: &str, value: impl Display) {
        let value = value.to_string();
        self.rows.push(vec![name.to_string(), value.clone()]);
        self.result(name, value);
    }
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

fn small<T: for<'a> TryFrom<&'a BigInt>>(flag: &str, v: &BigInt) -> Result<T> {
    T::try_from(v).map_err(|_| Error::Contract(format!("--{flag} = {v} is out of the supported range")))
}

fn capped_order(flag: &str, v: &BigInt, unsafe_order: bool) -> CliResult<usize> {
    let n: usize = small(flag, v)?;
    if n > ORDER_CAP && !unsafe_order {
        return usage(format!("--{flag} {n} exceeds {ORDER_CAP}; pass --unsafe-order to allow it"));
    }
    Ok(n)
}

fn parse_f(s: &str) -> Result<FInvariant> {
    match s.trim() {
        "inf" | "infinity" | "∞" => Ok(FInvariant::Infinite),
        t => t
            .parse::<u32>()
            .map(FInvariant::Finite)
            .map_err(|_| Error::Contract(format!("--f must be an integer or 'inf', got '{s}'"))),
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    if let Err(msg) = configure_threads() {
        let _ = writeln!(err, "error: {msg}");
        return 2;
    }
    match execute(&cli) {
        Ok(report) => {
            let rendered = if cli.json {
                serde_json::to_string_pretty(&report.record).expect("records serialise") + "\n"
            } else if cli.csv {
                render_csv(&report)
            } else {
                render_table(&report)
            };
            if out.write_all(rendered.as_bytes()).is_err() {
                return 1;
            }
            i32::from(report.failed)
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| format!("{THREADS_ENV} must be an integer >= 1, got '{raw}'"))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn execute(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Series { family, order } => {
            let order = capped_order("order", order, cli.unsafe_order)?;
            series_report(family, order)
        }
        Command::Dims { family, upto } => {
            let upto = capped_order("upto", upto, cli.unsafe_order)?;
            dims_report(family, upto)
        }
        Command::Hall { rank, weight, list, p } => hall_report(rank, weight, *list, p.as_ref()),
        Command::Mobius { group } => mobius_report(group),
        Command::Pgroup { group, p, levels } => {
            let levels = levels.as_ref().map(|l| capped_order("levels", l, cli.unsafe_order)).transpose()?;
            pgroup_report(group, p.as_ref(), levels)
        }
        Command::Count(c) => count_report(c),
        Command::Verify { check, .. } => verify_report(check.as_ref()),
    }
}

fn build_family(args: &FamilyArgs) -> CliResult<(GroupFamily, u64)> {
    let p: u64 = small("p", &args.p)?;
    let rank = |what: &str| -> CliResult<u32> {
        match &args.rank {
            Some(r) => Ok(small("rank", r)?),
            None => usage(format!("--rank is required for the {what} family")),
        }
    };
    let family = match args.family {
        FamilyKind::Free => GroupFamily::free(rank("free")?),
        FamilyKind::Demushkin => {
            let relation = match (&args.case, &args.q) {
                (Some(case), Some(q)) => {
                    Some(DemushkinRelation { case: (*case).into(), q: small("q", q)?, f: parse_f(&args.f)? })
                }
                _ => None,
            };
            GroupFamily::Demushkin { rank: rank("demushkin")?, relation }
        }
        FamilyKind::FreeProductCyclic => {
            let Some(copies) = &args.copies else {
                return usage("--copies is required for the free-product-cyclic family");
            };
            GroupFamily::FreeProdCyclicP { p, copies: small("copies", copies)? }
        }
        FamilyKind::Superpythagorean => GroupFamily::SuperPyth { d: rank("superpythagorean")? },
        FamilyKind::Mixed => {
            let ranks =
                args.demushkin_ranks.iter().map(|r| small("demushkin-ranks", r)).collect::<Result<_>>()?;
            let free_rank = match &args.free_rank {
                Some(f) => small("free-rank", f)?,
                None => 0,
            };
            GroupFamily::MixedFreeProd { demushkin_ranks: ranks, free_rank }
        }
        FamilyKind::CyclicFree => GroupFamily::CyclicPFree { p, free_rank: rank("cyclic-free")? },
    };
    family.validate(p)?;
    Ok((family, p))
}

fn family_params(report: &mut Report, family: &GroupFamily, p: u64) {
    report.param("family", family.tag()).param("p", p);
    match family {
        GroupFamily::FreeProP { rank } | GroupFamily::Demushkin { rank, .. } => {
            report.param("rank", rank);
        }
        GroupFamily::FreeProdCyclicP { copies, .. } => {
            report.param("copies", copies);
        }
        GroupFamily::SuperPyth { d } => {
            report.param("rank", d);
        }
        GroupFamily::MixedFreeProd { demushkin_ranks, free_rank } => {
            let ranks: Vec<String> = demushkin_ranks.iter().map(|r| r.to_string()).collect();
            report.param("demushkin_ranks", ranks.join(",")).param("free_rank", free_rank);
        }
        GroupFamily::CyclicPFree { free_rank, .. } => {
            report.param("rank", free_rank);
        }
    }
    if let GroupFamily::Demushkin { relation: Some(r), .. } = family {
        report.param("case", r.case).param("q", r.q).param("f", r.f);
    }
}

fn closed_form(family: &GroupFamily) -> String {
    let (num, den) = family.rational_function();
    let poly = |c: &[BigInt]| TruncatedSeries::from_integers(c, c.len().max(1) - 1).to_string();
    format!("({}) / ({})", poly(&num), poly(&den))
}

fn series_report(args: &FamilyArgs, order: usize) -> CliResult<Report> {
    let (family, p) = build_family(args)?;
    let series = hp::family_series(&family, p, order)?;
    let mut report = Report::new("series", vec!["n", "coefficient"]);
    family_params(&mut report, &family, p);
    report.param("order", order);
    report.source(format!("closed form {}", closed_form(&family)));
    for (n, c) in series.coeffs().iter().enumerate() {
        report.row(vec![n.to_string(), c.to_string()]);
        report.result(format!("a_{n}"), c);
    }
    Ok(report)
}

fn dims_report(args: &FamilyArgs, upto: usize) -> CliResult<Report> {
    let (family, p) = build_family(args)?;
    let table = DimensionTable::for_family(&family, p, upto)?;
    let mut report = Report::new("dims", vec!["n", "b", "w", "c"]);
    family_params(&mut report, &family, p);
    report.param("upto", upto);
    report.source(format!("closed form {}", closed_form(&family)));
    report.source("b_n: log coefficients; w_n: Möbius inversion; c_n: accumulation over p-powers");
    for n in 1..=upto {
        let (b, w, c) = (&table.b[n - 1], &table.w[n - 1], &table.c[n - 1]);
        report.row(vec![n.to_string(), b.to_string(), w.to_string(), c.to_string()]);
        report.result(format!("b_{n}"), b);
        report.result(format!("w_{n}"), w);
        report.result(format!("c_{n}"), c);
    }
    Ok(report)
}

fn hall_report(rank: &BigInt, weight: &BigInt, list: bool, p: Option<&BigInt>) -> CliResult<Report> {
    let d: u32 = small("rank", rank)?;
    let n: u32 = small("weight", weight)?;
    if n == 0 {
        return Err(Error::Contract("--weight must be positive".into()).into());
    }
    match p {
        None => {
            let mut report = Report::new("hall", vec!["name", "value"]);
            report.param("rank", d).param("weight", n);
            report.source("Hall commutators, weight first then lexicographic");
            if list {
                report.columns = vec!["index", "commutator"];
                let levels = hall::hall_levels(d, n)?;
                let terms = &levels[n as usize - 1];
                report.result("count", terms.len());
                for (i, t) in terms.iter().enumerate() {
                    report.row(vec![(i + 1).to_string(), t.to_string()]);
                    report.result(format!("term_{}", i + 1), t);
                }
            } else {
                report.pair("count", hall::hall_count(d, n)?);
                report.pair("witt", hall::witt_number(d, n));
            }
            Ok(report)
        }
        Some(p) => {
            let p: u64 = small("p", p)?;
            let basis = hall::zassenhaus_basis(d, p, n)?;
            let mut report = Report::new("hall", vec!["index", "element"]);
            report.param("rank", d).param("weight", n).param("p", p);
            report.source("p-powers of Hall commutators of weight n / p^j");
            report.result("count", basis.len());
            if list {
                for (i, (t, e)) in basis.iter().enumerate() {
                    let s = hall::format_power(t, e);
                    report.row(vec![(i + 1).to_string(), s.clone()]);
                    report.result(format!("term_{}", i + 1), s);
                }
            } else {
                report.columns = vec!["name", "value"];
                report.rows.push(vec!["count".into(), basis.len().to_string()]);
            }
            Ok(report)
        }
    }
}

/// `g.describe(h)`, falling back to the order when the element list is long.
fn short_describe(g: &pgroup::FiniteGroup, h: &pgroup::Subgroup) -> String {
    let full = g.describe(h);
    if full.chars().count() <= 48 {
        full
    } else {
        format!("subgroup of order {}", h.order())
    }
}

fn mobius_report(spec: &GroupSpec) -> CliResult<Report> {
    let g = spec.build()?;
    let (lattice, mu) = pgroup::subgroup_mobius(&g)?;
    let prime = g.prime();
    let phi = prime.map(|p| pgroup::frattini(&g, p)).transpose()?;
    let mut report = Report::new("mobius", vec!["subgroup", "order", "index", "mu", "closed_form"]);
    report.param("group", spec).param("order", g.order());
    report.source("Möbius function of the subgroup lattice, computed upward from G");
    if prime.is_some() {
        report.source("closed form: (-1)^k p^(k(k-1)/2) at index p^k above the Frattini subgroup, else 0");
    }
    for (i, (h, m)) in lattice.subgroups.iter().zip(&mu).enumerate() {
        let index = g.order() / h.order();
        let closed = match (prime, &phi) {
            (Some(p), Some(phi)) => pgroup::mobius_closed_form(p, index, phi.is_subgroup_of(h)).to_string(),
            _ => "-".to_string(),
        };
        report.row(vec![
            short_describe(&g, h),
            h.order().to_string(),
            index.to_string(),
            m.to_string(),
            closed,
        ]);
        report.result(format!("mu_{}", i + 1), m);
    }
    Ok(report)
}

fn pgroup_report(spec: &GroupSpec, p: Option<&BigInt>, levels: Option<usize>) -> CliResult<Report> {
    let g = spec.build()?;
    let p = match p {
        Some(p) => small("p", p)?,
        None => g.prime().ok_or_else(|| Error::Contract(format!("{spec} is not a p-group")))?,
    };
    let max_n = levels.unwrap_or(g.order().min(ORDER_CAP));
    let chain = pgroup::zassenhaus_chain(&g, p, max_n)?;
    let shown = match levels {
        Some(l) => l,
        None => chain.depth().unwrap_or(max_n).max(1),
    };
    let mut report = Report::new("pgroup", vec!["n", "order", "c", "level"]);
    report.param("group", spec).param("order", g.order()).param("p", p);
    report.source("G_(n) = G_(ceil(n/p))^p * prod_{i+j=n} [G_(i), G_(j)]");
    for n in 1..=shown {
        let h = chain.level(n);
        let c = chain.dims[n - 1];
        report.row(vec![n.to_string(), h.order().to_string(), c.to_string(), short_describe(&g, h)]);
        report.result(format!("order_{n}"), h.order());
        report.result(format!("c_{n}"), c);
    }
    if let Some(depth) = chain.depth() {
        report.result("depth", depth);
    }
    Ok(report)
}

fn field_params(args: &FieldArgs) -> CliResult<LocalFieldParams> {
    let p = small("p", &args.p)?;
    let n = small("n", &args.n)?;
    let q = args.q.as_ref().map(|q| small("q", q)).transpose()?;
    let params = LocalFieldParams::new(p, n, q)?;
    let (ext::RelationKind::Demushkin(default_case), Some(_)) = (params.kind, q) else {
        return Ok(params);
    };
    let case = args.case.map_or(default_case, RelationCase::from);
    Ok(params.with_case(case, parse_f(&args.f)?)?)
}

fn count_report(cmd: &CountCommand) -> CliResult<Report> {
    let mut report = Report::new("count", vec!["name", "value"]);
    match cmd {
        CountCommand::Shafarevich { p, n, group } => {
            let (p, n): (u64, u32) = (small("p", p)?, small("n", n)?);
            let g = group.build()?;
            report.param("method", "shafarevich").param("p", p).param("n", n).param("group", group);
            report.source("(1/|Aut G|) (|G|/p^d)^(n+1) prod_{i<d} (p^(n+1) - p^i)");
            report.pair("automorphisms", pgroup::automorphism_count(&g)?);
            report.pair("nu", ext::nu_shafarevich(p, n, &g)?);
        }
        CountCommand::Yamagishi { field, group } => {
            let params = field_params(field)?;
            let g = group.build()?;
            report
                .param("method", "yamagishi")
                .param("p", params.p)
                .param("n", params.n)
                .param("group", group);
            if let Some(q) = params.q {
                report.param("q", q).param("f", params.f).param("case", params.kind);
            }
            report.source("(1/|Aut G|) sum over H >= Frattini of mu(H) * #solutions of the relation in H");
            report.pair("automorphisms", pgroup::automorphism_count(&g)?);
            report.pair("alpha", ext::alpha_bruteforce(&params, &g)?);
            report.pair("nu", ext::nu_yamagishi(&params, &g)?);
        }
        CountCommand::U3 { p, n, q } => {
            let (p, n, q): (u64, u32, u64) = (small("p", p)?, small("n", n)?, small("q", q)?);
            report.param("method", "u3").param("p", p).param("n", n).param("q", q);
            report.source("closed form in p, n and q");
            report.source("isotropic pair count * p^(n+2) / |Aut U_3(F_p)|");
            report.pair("nu", ext::nu_u3(p, n, q)?);
            report.pair("nu_via_pairs", ext::nu_u3_via_pairs(p, n, q)?);
        }
        CountCommand::Sap { n } => {
            let n: u32 = small("n", n)?;
            report.param("method", "sap").param("n", n);
            report.source("2^(n-3) (3^n - 2^(n+1) + 1)");
            report.pair("pairs", ext::sap_pair_count(n)?);
            report.pair("nu", ext::sap_d4_count(n)?);
        }
        CountCommand::D4Local { p } => {
            let p: u64 = small("p", p)?;
            report.param("method", "d4-local").param("p", p);
            report.source("pairs of nontrivial square classes {a, b} with Hilbert symbol (a, b)_p = 1, times |Q_p^x / Q_p^x2| / 4");
            report.pair("nu", local::d4_extension_count_qp(p)?);
        }
    }
    Ok(report)
}

fn verify_report(check: Option<&BigInt>) -> CliResult<Report> {
    let reports = match check {
        Some(id) => {
            let id: u32 = small("check", id)?;
            match verify::run_check(id) {
                Some(r) => vec![r],
                None => {
                    return usage(format!(
                        "no check numbered {id}; valid ids are 1..={}",
                        verify::CHECK_COUNT
                    ))
                }
            }
        }
        None => verify::run_all(),
    };
    let mut report = Report::new("verify", vec!["id", "status", "check", "detail"]);
    report.param("checks", reports.len());
    for r in &reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        report.row(vec![r.id.to_string(), status.into(), r.title.into(), r.detail.clone()]);
        report.result(format!("check_{}", r.id), status);
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    report.result("passed", passed);
    report.result("failed", reports.len() - passed);
    report.failed = passed != reports.len();
    Ok(report)
}

fn render_table(report: &Report) -> String {
    let mut s = format!("# {}", report.record.command);
    for (k, v) in &report.record.parameters {
        s.push_str(&format!(" {k}={v}"));
    }
    s.push('\n');
    let widths: Vec<usize> = (0..report.columns.len())
        .map(|i| {
            report
                .rows
                .iter()
                .map(|r| r[i].chars().count())
                .chain([report.columns[i].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[&str]| -> String {
        let last = cells.len() - 1;
        let mut l = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i == last {
                l.push_str(c);
            } else {
                l.push_str(&format!("{c:<w$}  ", w = widths[i]));
            }
        }
        l.trim_end().to_string() + "\n"
    };
    s.push_str(&line(&report.columns));
    for row in &report.rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        s.push_str(&line(&cells));
    }
    s
}

fn csv_field(f: &str) -> String {
    if f.contains([',', '"', '\n']) {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

fn render_csv(report: &Report) -> String {
    let mut s = report.columns.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",") + "\n";
    for row in &report.rows {
        s.push_str(&(row.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",") + "\n"));
    }
    s
}
