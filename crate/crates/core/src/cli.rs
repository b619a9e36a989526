//! Command-line front end. Every command prints JSON (one object per line for
//! grids) or CSV, and exits with 0 on success, 1 when a verification fails
//! and 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::exactnum::{decimal_hint, fraction_string, identity_check, int, BigInt, BigRational, IdentityTag, RationalInterval};
use crate::ffgroups::oracle_compare;
use crate::measures::{
    aut_order, distribution_table, lambda_measure, limit_measure, sample, Family, MeasureParams, SampleOutcome,
    SamplerConfig,
};
use crate::partitions::Partition;
use crate::tvdist::{tv_refined, Method};

/// Digits in every `decimal_hint`.
const HINT_DIGITS: usize = 12;
/// Interval endpoints are widened to multiples of `2^-OUTPUT_BITS` for printing.
const OUTPUT_BITS: u32 = 128;

#[derive(Debug, Parser)]
#[command(name = "clp", version, about = "Cohen-Lenstra type measures for finite classical groups")]
struct Cli {
    /// Output format; CSV is available for tabular commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for parallel computations.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Proposition,
    Direct,
    Both,
}

/// Comma-separated values and inclusive ranges, e.g. `1..4`, `2,3,5`, `1..3,7`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct List(Vec<u64>);

impl FromStr for List {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            let bad = || format!("invalid list item {item:?}");
            if let Some((a, b)) = item.split_once("..") {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(format!("empty range {item:?}"));
                }
                out.extend(a..=b);
            } else {
                out.push(item.parse().map_err(|_| bad())?);
            }
        }
        Ok(List(out))
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let bad = || format!("expected an integer or num/den, got {s:?}");
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

#[derive(Debug, Subcommand)]
enum Command {
    /// |Aut(λ)| for the family's formula.
    Aut {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        q: u64,
        /// Parts as "3,1,1", or "-" for the empty partition.
        #[arg(long, allow_hyphen_values = true)]
        partition: Partition,
    },
    /// Certified interval for the (deformed) limit measure of one partition.
    LimitMeasure {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        partition: Partition,
        /// Deformation parameter in [0, 1].
        #[arg(long, value_parser = parse_rational, default_value = "1")]
        u: BigRational,
        #[arg(long, default_value_t = 64)]
        truncation: u32,
    },
    /// Exact rank-n probability of one partition.
    Lambda {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        partition: Partition,
    },
    /// Exact rank-n distribution tables; fails unless each has mass 1.
    Distribution {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: List,
        #[arg(long)]
        q: List,
    },
    /// Certified total variation distance to the limit measure.
    Tv {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: List,
        #[arg(long)]
        q: List,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        /// Target interval width.
        #[arg(long, value_parser = parse_rational, default_value = "1/1000000000")]
        width: BigRational,
    },
    /// Checks the theorem bounds on the total variation distance.
    VerifyBounds {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: List,
        #[arg(long)]
        q: List,
    },
    /// Coefficient checks of the product expansions.
    Identities {
        /// Identity tags, comma separated; all when omitted.
        #[arg(long, value_delimiter = ',')]
        tag: Vec<IdentityTag>,
        #[arg(long, default_value = "2..5")]
        q: List,
        #[arg(long, default_value_t = 30)]
        degree: usize,
    },
    /// Enumerates the groups and compares with the exact tables.
    Oracle {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: List,
        #[arg(long)]
        q: List,
    },
    /// Draws from the limit measure with a seeded generator.
    Sample {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_rational, default_value = "1")]
        u: BigRational,
        /// Mass left to the overflow outcome.
        #[arg(long, value_parser = parse_rational, default_value = "1/1000000")]
        epsilon: BigRational,
        #[arg(long, default_value_t = SamplerConfig::default().size_cap)]
        size_cap: u32,
    },
}

#[derive(Serialize)]
struct IntervalOut {
    lo: String,
    hi: String,
    decimal_hint: String,
}

impl From<&RationalInterval> for IntervalOut {
    fn from(iv: &RationalInterval) -> Self {
        let iv = iv.round_outward(OUTPUT_BITS);
        Self {
            lo: fraction_string(iv.lo()),
            hi: fraction_string(iv.hi()),
            decimal_hint: decimal_hint(&iv.midpoint(), HINT_DIGITS),
        }
    }
}

#[derive(Serialize)]
struct ValueOut<'a> {
    partition: &'a Partition,
    value: String,
}

#[derive(Serialize)]
struct IntervalValueOut<'a> {
    partition: &'a Partition,
    interval: IntervalOut,
}

#[derive(Serialize)]
struct TableOut<'a> {
    family: Family,
    n: u32,
    q: u64,
    mass: String,
    entries: Vec<ValueOut<'a>>,
}

#[derive(Serialize)]
struct TableRow {
    family: Family,
    n: u32,
    q: u64,
    partition: String,
    value: String,
    decimal_hint: String,
}

#[derive(Serialize)]
struct TvOut {
    family: Family,
    n: u32,
    q: u64,
    method: Method,
    interval: IntervalOut,
    cut: u32,
    product_trunc: u32,
}

#[derive(Serialize)]
struct TvRow {
    family: Family,
    n: u32,
    q: u64,
    method: Method,
    lo: String,
    hi: String,
    decimal_hint: String,
}

#[derive(Serialize)]
struct BoundOut {
    family: Family,
    n: u32,
    q: u64,
    lower_bound: String,
    upper_bound: String,
    interval: IntervalOut,
    verdict: crate::tvdist::Verdict,
}

#[derive(Serialize)]
struct BoundRow {
    family: Family,
    n: u32,
    q: u64,
    lower_bound: String,
    upper_bound: String,
    lo: String,
    hi: String,
    verdict: crate::tvdist::Verdict,
}

#[derive(Serialize)]
struct IdentityOut {
    tag: IdentityTag,
    q: u64,
    degree: usize,
    passed: bool,
    mismatched_degrees: Vec<usize>,
    outside_enclosure: Vec<usize>,
}

#[derive(Serialize)]
struct IdentityRow {
    tag: IdentityTag,
    q: u64,
    degree: usize,
    passed: bool,
    mismatches: usize,
}

#[derive(Serialize)]
struct GroupOut {
    group: String,
    order: String,
    formula_order: String,
}

#[derive(Serialize)]
struct OracleOut<'a> {
    family: Family,
    n: u32,
    q: u64,
    status: &'static str,
    groups: Vec<GroupOut>,
    compared: usize,
    mismatches: &'a [crate::ffgroups::OracleMismatch],
    distribution: Vec<ValueOut<'a>>,
}

#[derive(Serialize)]
struct ExcludedOut {
    family: Family,
    n: u32,
    q: u64,
    status: &'static str,
    reason: String,
}

#[derive(Serialize)]
struct CountOut<'a> {
    partition: Option<&'a Partition>,
    count: usize,
}

#[derive(Serialize)]
struct SampleOut<'a> {
    family: Family,
    q: u64,
    u: String,
    count: usize,
    seed: u64,
    overflow_mass: String,
    overflow_count: usize,
    counts: Vec<CountOut<'a>>,
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(std::io::Error::other(e))
    }
}

type Outcome = Result<bool, Failure>;

fn to_u32(v: u64, flag: &str) -> Result<u32, Failure> {
    u32::try_from(v).map_err(|_| Failure::Usage(format!("--{flag} value {v} is too large")))
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value).map_err(std::io::Error::other)?;
    writeln!(out)?;
    Ok(())
}

fn cells(family: Family, n: &List, q: &List) -> Result<Vec<(u32, u64)>, Failure> {
    let mut out = Vec::new();
    for &qv in &q.0 {
        family.check_q(qv)?;
        for &nv in &n.0 {
            out.push((to_u32(nv, "n")?, qv));
        }
    }
    Ok(out)
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // the global pool can only be configured once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn require_json(cli: &Cli, command: &str) -> Result<(), Failure> {
    if cli.format == Format::Csv {
        return Err(Failure::Usage(format!("--format csv is not available for {command}")));
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let csv_mode = cli.format == Format::Csv;
    match &cli.command {
        Command::Aut { family, q, partition } => {
            require_json(cli, "aut")?;
            let v = aut_order(*family, partition, *q)?;
            json_line(out, &ValueOut { partition, value: fraction_string(&v) })?;
            Ok(true)
        }
        Command::LimitMeasure {
            family,
            q,
            partition,
            u,
            truncation,
        } => {
            require_json(cli, "limit-measure")?;
            let params = MeasureParams::new(*family, *q).with_u(u.clone());
            let iv = limit_measure(&params, partition, *truncation)?;
            json_line(out, &IntervalValueOut { partition, interval: (&iv).into() })?;
            Ok(true)
        }
        Command::Lambda { family, n, q, partition } => {
            require_json(cli, "lambda")?;
            let v = lambda_measure(*family, *n, *q, partition)?;
            json_line(out, &ValueOut { partition, value: fraction_string(&v) })?;
            Ok(true)
        }
        Command::Distribution { family, n, q } => {
            let mut ok = true;
            let mut writer = csv_mode.then(|| csv::Writer::from_writer(Vec::new()));
            for (n, q) in cells(*family, n, q)? {
                let table = distribution_table(*family, n, q)?;
                let mass = table.mass();
                ok &= mass == int(1);
                if let Some(w) = writer.as_mut() {
                    for (l, v) in &table.entries {
                        w.serialize(TableRow {
                            family: *family,
                            n,
                            q,
                            partition: l.to_string(),
                            value: fraction_string(v),
                            decimal_hint: decimal_hint(v, HINT_DIGITS),
                        })?;
                    }
                } else {
                    let entries = table
                        .entries
                        .iter()
                        .map(|(partition, v)| ValueOut { partition, value: fraction_string(v) })
                        .collect();
                    json_line(
                        out,
                        &TableOut {
                            family: *family,
                            n,
                            q,
                            mass: fraction_string(&mass),
                            entries,
                        },
                    )?;
                }
            }
            flush_csv(writer, out)?;
            Ok(ok)
        }
        Command::Tv {
            family,
            n,
            q,
            method,
            width,
        } => {
            let methods: &[Method] = match method {
                MethodArg::Proposition => &[Method::Proposition],
                MethodArg::Direct => &[Method::Direct],
                MethodArg::Both => &[Method::Proposition, Method::Direct],
            };
            let mut writer = csv_mode.then(|| csv::Writer::from_writer(Vec::new()));
            for (n, q) in cells(*family, n, q)? {
                for &m in methods {
                    let tv = tv_refined(*family, n, q, m, width)?;
                    if let Some(w) = writer.as_mut() {
                        let iv = IntervalOut::from(&tv.interval);
                        w.serialize(TvRow {
                            family: *family,
                            n,
                            q,
                            method: m,
                            lo: iv.lo,
                            hi: iv.hi,
                            decimal_hint: iv.decimal_hint,
                        })?;
                    } else {
                        json_line(
                            out,
                            &TvOut {
                                family: *family,
                                n,
                                q,
                                method: m,
                                interval: (&tv.interval).into(),
                                cut: tv.cut,
                                product_trunc: tv.product_trunc,
                            },
                        )?;
                    }
                }
            }
            flush_csv(writer, out)?;
            Ok(true)
        }
        Command::VerifyBounds { family, n, q } => {
            let cells = cells(*family, n, q)?;
            let grid: Vec<(Family, u32, u64)> = cells.iter().map(|&(n, q)| (*family, n, q)).collect();
            let checks = crate::tvdist::verify_grid(&grid)?;
            let mut ok = true;
            let mut writer = csv_mode.then(|| csv::Writer::from_writer(Vec::new()));
            for c in &checks {
                ok &= c.verdict == crate::tvdist::Verdict::Contained;
                let iv = IntervalOut::from(&c.tv.interval);
                if let Some(w) = writer.as_mut() {
                    w.serialize(BoundRow {
                        family: c.family,
                        n: c.n,
                        q: c.q,
                        lower_bound: fraction_string(&c.lower_bound),
                        upper_bound: fraction_string(&c.upper_bound),
                        lo: iv.lo,
                        hi: iv.hi,
                        verdict: c.verdict,
                    })?;
                } else {
                    json_line(
                        out,
                        &BoundOut {
                            family: c.family,
                            n: c.n,
                            q: c.q,
                            lower_bound: fraction_string(&c.lower_bound),
                            upper_bound: fraction_string(&c.upper_bound),
                            interval: iv,
                            verdict: c.verdict,
                        },
                    )?;
                }
            }
            flush_csv(writer, out)?;
            Ok(ok)
        }
        Command::Identities { tag, q, degree } => {
            let tags: Vec<IdentityTag> = if tag.is_empty() { IdentityTag::ALL.to_vec() } else { tag.clone() };
            let mut ok = true;
            let mut writer = csv_mode.then(|| csv::Writer::from_writer(Vec::new()));
            for &qv in &q.0 {
                for &t in &tags {
                    let r = identity_check(t, &int(qv as i64), *degree)?;
                    ok &= r.passed();
                    if let Some(w) = writer.as_mut() {
                        w.serialize(IdentityRow {
                            tag: t,
                            q: qv,
                            degree: *degree,
                            passed: r.passed(),
                            mismatches: r.mismatches.len(),
                        })?;
                    } else {
                        json_line(
                            out,
                            &IdentityOut {
                                tag: t,
                                q: qv,
                                degree: *degree,
                                passed: r.passed(),
                                mismatched_degrees: r.mismatches.iter().map(|m| m.degree).collect(),
                                outside_enclosure: r.outside_enclosure.clone(),
                            },
                        )?;
                    }
                }
            }
            flush_csv(writer, out)?;
            Ok(ok)
        }
        Command::Oracle { family, n, q } => {
            require_json(cli, "oracle")?;
            let mut ok = true;
            for (n, q) in cells(*family, n, q)? {
                let report = match oracle_compare(*family, n, q) {
                    Ok(r) => r,
                    Err(e @ Error::BudgetExceeded { .. }) => {
                        json_line(
                            out,
                            &ExcludedOut {
                                family: *family,
                                n,
                                q,
                                status: "excluded",
                                reason: e.to_string(),
                            },
                        )?;
                        continue;
                    }
                    Err(e) => return Err(e.into()),
                };
                ok &= report.passed();
                let groups = report
                    .orders
                    .iter()
                    .map(|(g, a, b)| GroupOut {
                        group: g.to_string(),
                        order: a.to_string(),
                        formula_order: b.to_string(),
                    })
                    .collect();
                let distribution = report
                    .distribution
                    .iter()
                    .map(|(partition, v)| ValueOut { partition, value: fraction_string(v) })
                    .collect();
                json_line(
                    out,
                    &OracleOut {
                        family: *family,
                        n,
                        q,
                        status: if report.passed() { "equal" } else { "mismatch" },
                        groups,
                        compared: report.compared,
                        mismatches: &report.mismatches,
                        distribution,
                    },
                )?;
            }
            Ok(ok)
        }
        Command::Sample {
            family,
            q,
            count,
            seed,
            u,
            epsilon,
            size_cap,
        } => {
            require_json(cli, "sample")?;
            let params = MeasureParams::new(*family, *q).with_u(u.clone());
            let config = SamplerConfig {
                size_cap: *size_cap,
                ..SamplerConfig::default()
            };
            let run = sample(&params, *count, *seed, epsilon, config)?;
            let mut counts: Vec<CountOut> = run
                .table
                .iter()
                .map(|(l, _)| CountOut {
                    partition: Some(l),
                    count: run.draws.iter().filter(|d| matches!(d, SampleOutcome::Partition(x) if x == l)).count(),
                })
                .filter(|c| c.count > 0)
                .collect();
            if run.overflow_count() > 0 {
                counts.push(CountOut {
                    partition: None,
                    count: run.overflow_count(),
                });
            }
            json_line(
                out,
                &SampleOut {
                    family: *family,
                    q: *q,
                    u: fraction_string(u),
                    count: *count,
                    seed: *seed,
                    overflow_mass: decimal_hint(&run.overflow_mass, HINT_DIGITS),
                    overflow_count: run.overflow_count(),
                    counts,
                },
            )?;
            Ok(true)
        }
    }
}

fn flush_csv(writer: Option<csv::Writer<Vec<u8>>>, out: &mut dyn Write) -> Result<(), Failure> {
    if let Some(w) = writer {
        let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
        out.write_all(&bytes)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["clp"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn lambda_json() {
        let (code, out, _) = call(&["lambda", "--family", "gl", "--n", "2", "--q", "2", "--partition", "1,1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "{\"partition\":[1,1],\"value\":\"1/6\"}\n");
    }

    #[test]
    fn parity_mismatch_is_a_usage_error() {
        let (code, _, err) = call(&["lambda", "--family", "o-odd", "--n", "1", "--q", "2", "--partition", "-"]);
        assert_eq!(code, 2);
        assert!(err.contains("odd"), "{err}");
    }

    #[test]
    fn unknown_flag_rejected() {
        let (code, _, err) = call(&["aut", "--family", "gl", "--q", "2", "--partition", "1", "--bogus"]);
        assert_eq!(code, 2);
        assert!(err.contains("--bogus"));
    }

    #[test]
    fn verify_bounds_grid() {
        let (code, out, _) = call(&["verify-bounds", "--family", "gl", "--n", "1..4", "--q", "2,3"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 8);
        assert!(out.lines().all(|l| l.contains("\"verdict\":\"contained\"")));
    }

    #[test]
    fn distribution_csv() {
        let (code, out, _) = call(&["--format", "csv", "distribution", "--family", "gl", "--n", "2", "--q", "2"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "family,n,q,partition,value,decimal_hint");
        assert_eq!(lines[1], "gl,2,2,-,1/3,0.333333333333");
        assert_eq!(lines[3], "gl,2,2,2,1/2,0.500000000000");
        assert_eq!(lines[4], "gl,2,2,\"1,1\",1/6,0.166666666666");
    }

    #[test]
    fn output_is_repeatable() {
        let args = ["sample", "--family", "sp", "--q", "3", "--count", "50", "--seed", "4"];
        assert_eq!(call(&args), call(&args));
    }

    #[test]
    fn lists_and_ranges() {
        assert_eq!("1..3,7".parse::<List>().unwrap(), List(vec![1, 2, 3, 7]));
        assert!("3..1".parse::<List>().is_err());
        assert_eq!(parse_rational("6/4").unwrap(), crate::exactnum::ratio(3, 2));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn limit_measure_interval() {
        let (code, out, _) = call(&["limit-measure", "--family", "gl", "--q", "2", "--partition", "-"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"decimal_hint\":\"0.288788095086\""), "{out}");
    }
}
