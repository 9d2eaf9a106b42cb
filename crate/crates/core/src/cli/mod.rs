//! The `divorder` command line. Every subcommand prints machine-readable
//! output on stdout; rationals are always `p/q` strings.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 usage or input
//! error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{divisor_set, factorize, parse_rat, Rat};
use crate::error::{Error, Result};
use crate::functions::{
    catalog, classify, from_prime_power_values, parse_function, ArithmeticFunction, ExtensionKind,
};
use crate::metrics::{
    build_table, verify_indiscernibles, verify_pseudometric, Combinator, PseudometricSpec,
};
use crate::orders::{
    class_count_checks, coprime_squarefree_transfer, extend_to_window, permutation_invariance,
    preorder_of, preorder_of_unchecked, quotient_by_metric, quotient_by_preorder,
    triple_equivalence,
};
use crate::scanners::{
    partition_bounds, partition_census, scan_collisions, scan_multiperfect, ScanMode, ScanOptions,
};

const FUNCTION_HELP: &str = "Function names: bigomega, omega, bigupsilon (sopfr), upsilon (sopf), ld, deriv, zero, \
x_minus_1, s0_unit, nd (tau), sigma, phi, pillai, id (x), one, unit (epsilon), mu2, log, chi:K, chi_over_x:K, \
recip, sigma_over_x, sigma_over_x2, phi_over_x, phi_over_x2, nd_over_x, nd_over_x2, mu2_over_x, \
pillai_normalized, and the reciprocals x_over_sigma, x2_over_sigma, x_over_phi, x2_over_phi, x_over_nd, \
x2_over_nd, xnd_over_pillai, recip_nd, recip_sigma, recip_phi, recip_pillai. \
Combine with a+b, a*b, or prefixes exp:, expneg:, log:, neglog:, inv:, pow2neg: (e.g. pow2neg:bigomega). \
A JSON object {\"class\": \"multiplicative\", \"n\": 12, \"values\": {\"2\": \"1/2\", ...}} defines a \
function by its values on the prime powers dividing n.";

#[derive(Parser, Debug)]
#[command(name = "divorder", version, about = "Divisor-based pseudometrics, preorders and partitions of the integers", after_help = FUNCTION_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SpecArgs {
    #[arg(long)]
    func: String,
    #[arg(long, value_parser = parse_comb)]
    comb: Combinator,
    #[arg(long)]
    n: u64,
    /// Skip the class requirement of the combinator.
    #[arg(long)]
    unchecked: bool,
}

fn parse_comb(s: &str) -> std::result::Result<Combinator, String> {
    s.parse::<Combinator>().map_err(|e| e.to_string())
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PartitionBy {
    Preorder,
    Metric,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prime factorization.
    Factor { n: u64 },
    /// Divisors and prime-power divisors.
    Divisors { n: u64 },
    /// Evaluate a function.
    Eval { func: String, x: u64 },
    /// Class membership, declared or checked on the divisors of N.
    Classify {
        func: String,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Distance table on the divisors of N.
    Table {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
    },
    /// Check the pseudometric axioms (and with --metric, indiscernibles).
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        metric: bool,
    },
    /// Induced preorder on the divisors of N.
    Preorder {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Quotient partition of the divisors, optionally pulled back to [A, B].
    Partition {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
        window: Option<Vec<i64>>,
        #[arg(long, value_enum, default_value = "preorder")]
        by: PartitionBy,
    },
    /// Compare the preorders induced by -ln h, 1/h and h on the divisors of N.
    Triple {
        #[arg(long)]
        h: String,
        #[arg(long)]
        n: u64,
    },
    /// Permute prime-power values of a multiplicative function and compare partitions.
    Permute {
        #[arg(long)]
        n: u64,
        /// JSON object from prime power to value, e.g. {"2":"3/10","3":"3/5"}.
        #[arg(long)]
        values: String,
        /// JSON object from value to value; unlisted values stay fixed.
        #[arg(long)]
        perm: String,
    },
    /// Class-count statements for the value partition of h.
    ClassCounts {
        #[arg(long)]
        h: String,
        #[arg(long)]
        n: u64,
    },
    /// Coprime pair (s/g, t/g) from squarefree s, t with equal values.
    Transfer {
        #[arg(long)]
        h: String,
        s: u64,
        t: u64,
    },
    /// Range scanners.
    Scan {
        #[command(subcommand)]
        which: ScanCommand,
    },
    /// p(nd(N) - 1) and p(Omega(N) - 1).
    Bounds { n: u64 },
    /// Distinct quotient partitions realised by a list of functions.
    Census {
        #[arg(long)]
        n: u64,
        /// Comma-separated names, or `catalog`.
        #[arg(long, default_value = "catalog")]
        funcs: String,
    },
}

#[derive(Subcommand, Debug)]
enum ScanCommand {
    /// Exact value collisions on [start, max].
    Collisions {
        #[arg(long)]
        func: String,
        #[arg(long)]
        max: u64,
        #[arg(long, value_parser = parse_mode, default_value = "all")]
        mode: ScanMode,
        #[arg(long, default_value_t = 1)]
        start: u64,
        /// Worker threads; 0 picks the number of cores.
        #[arg(long, env = "DIVORDER_JOBS", default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = 1 << 16)]
        chunk_size: u64,
        #[arg(long, default_value_t = 10_000)]
        pair_limit: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
        /// Exit with status 1 if any collision is found.
        #[arg(long)]
        expect_none: bool,
    },
    /// Multiply perfect numbers up to max.
    Multiperfect {
        #[arg(long)]
        max: u64,
    },
}

fn parse_mode(s: &str) -> std::result::Result<ScanMode, String> {
    s.parse::<ScanMode>().map_err(|e| e.to_string())
}

/// Parse `args` (program name first) and run, writing to `out` and `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let _ = write!(err, "{}", e.render());
            return 2;
        }
    };
    match execute(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Run with the process arguments on stdout/stderr and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

fn json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn build_spec(a: &SpecArgs) -> Result<PseudometricSpec> {
    let f = parse_function(&a.func)?;
    if a.unchecked {
        PseudometricSpec::unchecked(f, a.comb, a.n)
    } else {
        PseudometricSpec::new(f, a.comb, a.n)
    }
}

fn preorder_for(a: &SpecArgs) -> Result<crate::orders::Preorder> {
    let f = parse_function(&a.func)?;
    if a.unchecked {
        preorder_of_unchecked(&f, a.comb, a.n)
    } else {
        preorder_of(&f, a.comb, a.n)
    }
}

fn functions_list(spec: &str, n: u64) -> Result<Vec<ArithmeticFunction>> {
    if spec.trim() == "catalog" {
        return Ok(catalog(&[n]));
    }
    spec.split(',').map(|s| parse_function(s.trim())).collect()
}

#[derive(Serialize)]
struct FactorOut {
    n: u64,
    factors: Vec<(u64, u32)>,
}

#[derive(Serialize)]
struct DivisorsOut<'a> {
    n: u64,
    divisors: &'a [u64],
    prime_powers: &'a [u64],
}

#[derive(Serialize)]
struct ClassifyOut {
    function: String,
    labels: Vec<&'static str>,
    #[serde(flatten)]
    membership: crate::functions::ClassMembership,
}

#[derive(Serialize)]
struct TransferOut {
    s: u64,
    t: u64,
    pair: (u64, u64),
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<bool> {
    match cmd {
        Command::Factor { n } => {
            let fac = factorize(n)?;
            json(
                out,
                &FactorOut {
                    n,
                    factors: fac.iter().collect(),
                },
            )?;
        }
        Command::Divisors { n } => {
            let ds = divisor_set(n)?;
            json(
                out,
                &DivisorsOut {
                    n,
                    divisors: &ds.divisors,
                    prime_powers: &ds.prime_powers,
                },
            )?;
        }
        Command::Eval { func, x } => {
            writeln!(out, "{}", parse_function(&func)?.evaluate(x)?)?;
        }
        Command::Classify { func, n } => {
            let f = parse_function(&func)?;
            let membership = classify(&f, n)?;
            json(
                out,
                &ClassifyOut {
                    function: f.name().to_string(),
                    labels: membership.labels(),
                    membership,
                },
            )?;
        }
        Command::Table { spec, format } => {
            let t = build_table(&build_spec(&spec)?);
            match format {
                TableFormat::Json => json(out, &t.to_json())?,
                TableFormat::Csv => write!(out, "{}", t.to_csv())?,
                TableFormat::Text => write!(out, "{}", t.to_text())?,
            }
        }
        Command::Verify { spec, metric } => {
            let t = build_table(&build_spec(&spec)?);
            let mut r = verify_pseudometric(&t);
            if metric {
                r.indiscernibles_ok = verify_indiscernibles(&t).indiscernibles_ok;
            }
            json(out, &r)?;
            return Ok(r.is_pseudometric() && (!metric || r.is_metric()));
        }
        Command::Preorder { spec } => {
            json(out, &preorder_for(&spec)?.to_json())?;
        }
        Command::Partition { spec, window, by } => {
            let p = match by {
                PartitionBy::Preorder => quotient_by_preorder(&preorder_for(&spec)?),
                PartitionBy::Metric => quotient_by_metric(&build_table(&build_spec(&spec)?)),
            };
            match window {
                Some(w) => json(out, &extend_to_window(&p, w[0], w[1])?)?,
                None => json(out, &p)?,
            }
        }
        Command::Triple { h, n } => {
            let r = triple_equivalence(&parse_function(&h)?, n)?;
            json(out, &r)?;
            return Ok(r.identical);
        }
        Command::Permute { n, values, perm } => {
            let raw: BTreeMap<String, String> = serde_json::from_str(&values)?;
            let vals: BTreeMap<u64, Rat> = raw
                .iter()
                .map(|(k, v)| {
                    let q = k
                        .trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Invalid(format!("bad prime power `{k}`")))?;
                    Ok((q, parse_rat(v)?))
                })
                .collect::<Result<_>>()?;
            let raw: BTreeMap<String, String> = serde_json::from_str(&perm)?;
            let perm: BTreeMap<Rat, Rat> = raw
                .iter()
                .map(|(a, b)| Ok((parse_rat(a)?, parse_rat(b)?)))
                .collect::<Result<_>>()?;
            let h1 = from_prime_power_values(vals, ExtensionKind::Multiplicative, n)?;
            let r = permutation_invariance(&h1, &perm, n)?;
            json(out, &r)?;
            return Ok(r.partitions_equal);
        }
        Command::ClassCounts { h, n } => {
            let r = class_count_checks(&parse_function(&h)?, n)?;
            json(out, &r)?;
            return Ok(r.all_hold());
        }
        Command::Transfer { h, s, t } => {
            let pair = coprime_squarefree_transfer(&parse_function(&h)?, s, t)?;
            json(out, &TransferOut { s, t, pair })?;
        }
        Command::Scan { which } => match which {
            ScanCommand::Collisions {
                func,
                max,
                mode,
                start,
                jobs,
                chunk_size,
                pair_limit,
                checkpoint,
                format,
                expect_none,
            } => {
                let opts = ScanOptions {
                    mode,
                    start,
                    jobs,
                    chunk_size,
                    pair_limit,
                    checkpoint,
                    stop_after_chunks: None,
                };
                let r = scan_collisions(&parse_function(&func)?, max, &opts)?;
                match format {
                    ReportFormat::Json => writeln!(out, "{}", r.to_json())?,
                    ReportFormat::Csv => write!(out, "{}", r.to_csv())?,
                }
                return Ok(!expect_none || r.is_empty());
            }
            ScanCommand::Multiperfect { max } => {
                let r = scan_multiperfect(max)?;
                json(out, &r)?;
                return Ok(r.all_even);
            }
        },
        Command::Bounds { n } => {
            writeln!(out, "{}", partition_bounds(n)?.to_json())?;
        }
        Command::Census { n, funcs } => {
            let r = partition_census(n, &functions_list(&funcs, n)?)?;
            json(out, &r)?;
            return Ok(r.within_bound);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("divorder").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn eval_and_bounds() {
        assert_eq!(
            run_capture(&["eval", "sigma", "6"]),
            (0, "12\n".into(), String::new())
        );
        assert_eq!(run_capture(&["eval", "sigma_over_x", "30"]).1, "12/5\n");
        assert_eq!(
            run_capture(&["bounds", "12"]).1,
            "{\"p_nd\": 7, \"p_omega\": 2}\n"
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            run_capture(&["verify", "--func", "recip", "--comb", "addh", "--n", "360"]).0,
            0
        );
        assert_eq!(
            run_capture(&["verify", "--func", "recip", "--comb", "addh", "--n", "360", "--metric"])
                .0,
            0
        );
        assert_eq!(
            run_capture(&["verify", "--func", "one", "--comb", "addh", "--n", "12", "--metric"]).0,
            1
        );
        assert_eq!(
            run_capture(&[
                "verify",
                "--func",
                "id",
                "--comb",
                "delta-addg",
                "--n",
                "24"
            ])
            .0,
            2
        );
        assert_eq!(
            run_capture(&[
                "verify",
                "--func",
                "id",
                "--comb",
                "delta-addg",
                "--n",
                "24",
                "--unchecked"
            ])
            .0,
            1
        );
        let (code, _, err) = run_capture(&["eval", "nosuch", "3"]);
        assert_eq!(code, 2);
        assert!(err.contains("unknown function"));
        assert_eq!(
            run_capture(&["table", "--func", "sigma", "--comb", "addh", "--n", "6"]).0,
            2
        );
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn structured_outputs() {
        let (_, s, _) = run_capture(&["table", "--func", "recip", "--comb", "mulh", "--n", "6"]);
        let t: crate::metrics::TableJson = serde_json::from_str(&s).unwrap();
        // Row 2, column 3 of the 4x4 table.
        assert_eq!(t.entries[6], "5/6");
        let (_, s, _) = run_capture(&[
            "partition",
            "--func",
            "chi:12",
            "--comb",
            "addh",
            "--n",
            "12",
        ]);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["blocks"], serde_json::json!([[1], [2, 3, 4, 6, 12]]));
        let (_, s, _) = run_capture(&[
            "partition",
            "--func",
            "recip",
            "--comb",
            "addh",
            "--n",
            "6",
            "--window",
            "-6",
            "6",
            "--by",
            "metric",
        ]);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["a"], -6);
        assert_eq!(v["block_id"].as_array().unwrap().len(), 13);
        let (code, s, _) = run_capture(&[
            "permute",
            "--n",
            "6",
            "--values",
            r#"{"2":"3/10","3":"6/10"}"#,
            "--perm",
            r#"{"3/10":"3/5","3/5":"3/10"}"#,
        ]);
        assert_eq!(code, 0);
        assert!(s.contains("\"partitions_equal\": true"));
        let (code, s, _) = run_capture(&[
            "scan",
            "collisions",
            "--func",
            "phi_over_x",
            "--max",
            "100",
            "--mode",
            "all",
        ]);
        assert_eq!(code, 0);
        assert!(s.contains("\"1/3\""));
        assert_eq!(
            run_capture(&[
                "scan",
                "collisions",
                "--func",
                "phi_over_x",
                "--max",
                "100",
                "--expect-none"
            ])
            .0,
            1
        );
        assert_eq!(run_capture(&["triple", "--h", "recip", "--n", "30"]).0, 0);
        assert_eq!(run_capture(&["scan", "multiperfect", "--max", "1000"]).0, 0);
        assert_eq!(
            run_capture(&["transfer", "--h", "pow2neg:bigomega", "6", "10"])
                .1
                .contains("[\n    3,\n    5\n  ]"),
            true
        );
    }
}
