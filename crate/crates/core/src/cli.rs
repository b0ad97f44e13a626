//! Command-line frontend. Every command produces a JSON document carrying
//! `schema_version`; `--format text` prints a short rendering of it instead.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::braid::{
    insert_framing_twist, insert_full_twist, invariants, reframe, union_writhe, BraidWord,
};
use crate::curves::{
    curve_ech_index, curve_j0, curve_j_plus, dot, fredholm_index, index_inequality_report,
    j_plus_pipeline, j_union_slack, union_index_slack, CurveDataDoc,
};
use crate::cz::{cz_at, cz_sum, cz_sum_prime};
use crate::error::{Error, Result};
use crate::model::{
    MonodromyAngle, OrbitKind, OrbitSetDoc, OrbitTable, RelClassDoc, Trivialization,
};
use crate::partitions::{p_in_kind, p_out_kind};
use crate::relindex::{
    abs_grading, ech_index, j_indices, size_measure, transform_relclass, GradingContext,
    GradingInput, GradingKind, IndexValue,
};
use crate::verify::{self, SweepReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "ech-index",
    version,
    about = "Exact index computations for orbit sets, braids and curves"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conley-Zehnder index of an iterate, with its partial sums.
    Cz {
        /// Orbit as JSON, e.g. {"kind":"elliptic","p":3,"q":10,"k_max":9}
        #[arg(long)]
        orbit: String,
        #[arg(long)]
        k: u32,
        /// Shift of the trivialization relative to the reference.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        offset: i64,
    },
    /// Outgoing and incoming partitions of a multiplicity.
    Partitions {
        /// Orbit as JSON; alternative to --theta.
        #[arg(long, conflicts_with = "theta")]
        orbit: Option<String>,
        /// Monodromy angle p/q of an elliptic orbit, horizon q-1.
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        #[arg(long)]
        m: u32,
    },
    /// Writhe, linking and winding of a braid word.
    Braid {
        /// Braid as JSON or a path to a JSON file.
        #[arg(long)]
        input: String,
        /// Append a full twist of the strands (negative with --negative).
        #[arg(long)]
        full_twist: bool,
        /// Append a full twist including the axis.
        #[arg(long)]
        framing_twist: bool,
        #[arg(long)]
        negative: bool,
        /// Report the invariants in the trivialization shifted by this much.
        #[arg(long, allow_hyphen_values = true)]
        reframe: Option<i64>,
    },
    /// ECH and J indices of a relative class.
    Index {
        #[arg(long)]
        input: String,
    },
    /// Absolute gradings of an orbit set.
    Grade {
        #[arg(long)]
        input: String,
    },
    /// Index bounds for curves.
    Curve {
        #[command(subcommand)]
        command: CurveCommand,
    },
    /// Sweeps and randomized checks.
    Verify {
        #[command(subcommand)]
        check: Check,
        #[command(flatten)]
        args: VerifyArgs,
    },
}

#[derive(Subcommand, Debug)]
enum CurveCommand {
    /// Indices of a curve and the index inequality when it is simple.
    Report {
        #[arg(long)]
        input: String,
    },
    /// J+ induction over the simple pieces of a curve in a symplectization.
    Jplus {
        #[arg(long)]
        input: String,
    },
    /// Union inequalities for two curves.
    Union {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Check {
    Ce1,
    Pick,
    Cli,
    CliStrict,
    NegHyp,
    Jbound,
    Huge,
    JUnion,
    Oracle,
    Duality,
    /// Every randomized check, seeded by --seed.
    Random,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, global = true, default_value_t = 10)]
    m_max: u32,
    /// Comma-separated angles p/q; overrides --denominators.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    thetas: Vec<String>,
    /// Every p/q in (0,1) in lowest terms for these q.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = vec![11i64, 13])]
    denominators: Vec<i64>,
    #[arg(long, global = true, default_value_t = -5, allow_hyphen_values = true)]
    n_min: i64,
    #[arg(long, global = true, default_value_t = 5, allow_hyphen_values = true)]
    n_max: i64,
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
}

/// Input for `grade`: an orbit set with its braid data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeDoc {
    pub orbits: OrbitTable,
    pub set: OrbitSetDoc,
    pub p: IndexValue,
    #[serde(default)]
    pub writhes: BTreeMap<String, i64>,
    #[serde(default)]
    pub offsets: BTreeMap<String, i64>,
    #[serde(default = "all_kinds")]
    pub kinds: Vec<GradingKind>,
    pub context: GradingContext,
}

fn all_kinds() -> Vec<GradingKind> {
    vec![
        GradingKind::Ech,
        GradingKind::J0,
        GradingKind::JPlus,
        GradingKind::JMinus,
    ]
}

struct Output {
    command: &'static str,
    result: Value,
    text: String,
    failed: bool,
}

impl Output {
    fn ok(command: &'static str, result: impl Serialize, text: String) -> Result<Self> {
        Ok(Output {
            command,
            result: to_value(result)?,
            text,
            failed: false,
        })
    }
}

fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Invalid(e.to_string()))
}

/// Inline JSON when the argument starts with `{` or `[`, a file path
/// otherwise.
fn payload<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Invalid(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| {
        // validation errors raised while deserializing keep their message
        Error::Invalid(e.to_string())
    })
}

fn angles(args: &VerifyArgs) -> Result<Vec<MonodromyAngle>> {
    if args.thetas.is_empty() {
        return verify::theta_grid(&args.denominators);
    }
    args.thetas
        .iter()
        .map(|s| {
            let (p, q) = crate::model::parse_fraction(s)?;
            MonodromyAngle::with_max_horizon(p, q)
        })
        .collect()
}

fn kinds(args: &VerifyArgs) -> Result<Vec<OrbitKind>> {
    let mut out: Vec<OrbitKind> = angles(args)?.into_iter().map(OrbitKind::Elliptic).collect();
    out.extend(verify::hyperbolic_grid(args.n_min, args.n_max));
    Ok(out)
}

fn report_text(r: &SweepReport) -> String {
    let mut s = format!(
        "{}: {} instances, {} violations, {} equality cases",
        r.name, r.instances_checked, r.violation_count, r.equality_count
    );
    for v in r.violations.iter().take(20) {
        s.push_str("\n  violation: ");
        s.push_str(v);
    }
    s
}

fn sweep_output(reports: Vec<SweepReport>) -> Result<Output> {
    let failed = reports.iter().any(|r| !r.ok());
    let text = reports
        .iter()
        .map(report_text)
        .collect::<Vec<_>>()
        .join("\n");
    let result = if reports.len() == 1 {
        to_value(&reports[0])?
    } else {
        to_value(&reports)?
    };
    Ok(Output {
        command: "verify",
        result,
        text,
        failed,
    })
}

fn run_verify(check: Check, args: &VerifyArgs, seed: u64) -> Result<Output> {
    let m = args.m_max;
    let r = match check {
        Check::Ce1 => verify::sweep_ce1(m, &angles(args)?)?,
        Check::Pick => verify::sweep_pick(m, &angles(args)?)?,
        Check::Cli => verify::sweep_cli(m, &kinds(args)?)?,
        Check::CliStrict => verify::sweep_cli_strict(m, &kinds(args)?)?,
        Check::NegHyp => verify::sweep_neg_hyp(m)?,
        Check::Jbound => verify::sweep_jbound_cases(m, &angles(args)?)?,
        Check::Huge => verify::sweep_huge(m, &kinds(args)?)?,
        Check::JUnion => verify::sweep_j_union(m, &kinds(args)?)?,
        Check::Oracle => verify::sweep_oracle(m, &angles(args)?)?,
        Check::Duality => verify::sweep_duality(m, &angles(args)?)?,
        Check::Random => {
            let n = args.samples;
            return sweep_output(vec![
                verify::check_tau_invariance(seed, n)?,
                verify::check_braids(seed.wrapping_add(1), n)?,
                verify::check_index_equivalence(seed.wrapping_add(2), n)?,
                verify::check_j_plus(seed.wrapping_add(3), n)?,
                verify::check_size_identity(seed.wrapping_add(4), n)?,
                verify::check_abs_rel(seed.wrapping_add(5), n)?,
            ]);
        }
    };
    sweep_output(vec![r])
}

fn run_curve(cmd: &CurveCommand) -> Result<Output> {
    match cmd {
        CurveCommand::Report { input } => {
            let curve = payload::<CurveDataDoc>(input)?.resolve()?;
            let tau = Trivialization::reference(curve.orbits());
            let simple = curve.components.iter().all(|c| c.degree == 1);
            let report = if simple {
                Some(index_inequality_report(&curve, &tau)?)
            } else {
                None
            };
            let ind: BTreeMap<String, i64> = curve
                .components
                .iter()
                .map(|c| Ok((c.component.id.clone(), fredholm_index(&c.component, &tau)?)))
                .collect::<Result<_>>()?;
            let i = curve_ech_index(&curve, &tau)?;
            let j0 = curve_j0(&curve, &tau)?;
            let jp = curve_j_plus(&curve, &tau)?;
            let mut text = format!("I {i}, J0 {j0}, J+ {jp}");
            for (id, v) in &ind {
                text.push_str(&format!("\nind({id}) {v}"));
            }
            if let Some(r) = &report {
                text.push_str(&format!(
                    "\nind <= I - 2 delta: {} (ind {}, I {}, delta {}, slack {})",
                    r.holds, r.ind, r.ech_index, r.delta, r.slack
                ));
            }
            Output::ok(
                "curve report",
                json!({ "ech_index": i, "j0": j0, "j_plus": jp, "fredholm": ind, "inequality": report }),
                text,
            )
        }
        CurveCommand::Jplus { input } => {
            let curve = payload::<CurveDataDoc>(input)?.resolve()?;
            let tau = Trivialization::reference(curve.orbits());
            let r = j_plus_pipeline(&curve, &tau)?;
            let text = format!(
                "J+ {} over {} blocks, holds {}",
                r.j_plus,
                r.blocks.len(),
                r.holds
            );
            Output::ok("curve jplus", r, text)
        }
        CurveCommand::Union { left, right } => {
            let a = payload::<CurveDataDoc>(left)?.resolve()?;
            let b = payload::<CurveDataDoc>(right)?.resolve()?;
            let tau = Trivialization::reference(a.orbits().chain(b.orbits()));
            let d = dot(&a, &b, &tau)?;
            let s = union_index_slack(&a, &b, &tau)?;
            let j = j_union_slack(&a, &b, &tau)?;
            let text = format!(
                "C.C' {d}, index union slack {s}, J0 union slack {} (E {}, N {})",
                j.slack,
                j.e(),
                j.n()
            );
            Output::ok(
                "curve union",
                json!({ "dot": d, "index_slack": s, "j0": j }),
                text,
            )
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Cz { orbit, k, offset } => {
            let kind: OrbitKind = payload(orbit)?;
            let v = cz_at(&kind, *offset, *k)?;
            let sum = cz_sum(&kind, *offset, *k)?;
            let prime = cz_sum_prime(&kind, *offset, *k)?;
            Output::ok(
                "cz",
                json!({ "orbit": kind, "k": k, "offset": offset, "cz": v, "sum": sum, "sum_prime": prime }),
                v.to_string(),
            )
        }
        Command::Partitions { orbit, theta, m } => {
            let kind = match (orbit, theta) {
                (Some(o), _) => payload::<OrbitKind>(o)?,
                (None, Some(t)) => {
                    let (p, q) = crate::model::parse_fraction(t)?;
                    OrbitKind::Elliptic(MonodromyAngle::with_max_horizon(p, q)?)
                }
                (None, None) => {
                    return Err(Error::Invalid("one of --orbit, --theta is required".into()))
                }
            };
            let (out, out_path) = p_out_kind(&kind, *m)?;
            let (inn, in_path) = p_in_kind(&kind, *m)?;
            Output::ok(
                "partitions",
                json!({
                    "orbit": kind,
                    "m": m,
                    "p_out": out,
                    "p_in": inn,
                    "out_corners": out_path.map(|p| p.corners()),
                    "in_corners": in_path.map(|p| p.corners()),
                }),
                format!("P_out {out}\nP_in {inn}"),
            )
        }
        Command::Braid {
            input,
            full_twist,
            framing_twist,
            negative,
            reframe: delta,
        } => {
            let mut b: BraidWord = payload(input)?;
            b.validate()?;
            if *full_twist {
                b = insert_full_twist(&b, !negative);
            }
            if *framing_twist {
                b = insert_framing_twist(&b, !negative);
            }
            let mut inv = invariants(&b)?;
            if let Some(d) = delta {
                inv = reframe(&inv, &b.strand_counts(), *d);
            }
            let names: Vec<&String> = b.components.keys().collect();
            let mut unions = BTreeMap::new();
            let mut text = String::new();
            for (i, a) in names.iter().enumerate() {
                text.push_str(&format!(
                    "{a}: writhe {}, winding {}\n",
                    inv.writhe_of(a),
                    inv.winding_of(a)
                ));
                for c in &names[i + 1..] {
                    let w = union_writhe(&inv, a, c);
                    text.push_str(&format!(
                        "{a}+{c}: linking {}, union writhe {w}\n",
                        inv.link(a, c)
                    ));
                    unions.insert(format!("{a}+{c}"), w);
                }
            }
            Output::ok(
                "braid",
                json!({ "braid": b, "invariants": inv, "union_writhe": unions }),
                text.trim_end().to_string(),
            )
        }
        Command::Index { input } => {
            let (z, tau) = payload::<RelClassDoc>(input)?.resolve()?;
            let (c, q) = transform_relclass(&z, &tau)?;
            let i = ech_index(&z, &tau)?;
            let j = j_indices(&z, &tau)?;
            let text = format!("I {i}\nJ0 {}\nJ+ {}\nJ- {}", j.j0, j.j_plus, j.j_minus);
            Output::ok(
                "index",
                json!({
                    "c_tau": c,
                    "q_tau": q,
                    "ech_index": i,
                    "j": j,
                    "size_alpha": size_measure(&z.alpha),
                    "size_beta": size_measure(&z.beta),
                }),
                text,
            )
        }
        Command::Grade { input } => {
            let doc: GradeDoc = payload(input)?;
            let orbits = doc.set.resolve(&doc.orbits)?;
            let tau = Trivialization::new(doc.offsets.clone()).filled(orbits.orbits());
            let g = GradingInput {
                orbits,
                p: doc.p,
                writhes: doc.writhes.clone(),
                tau,
            };
            let classes = doc
                .kinds
                .iter()
                .map(|k| abs_grading(&g, *k, &doc.context))
                .collect::<Result<Vec<_>>>()?;
            let text = classes
                .iter()
                .map(|c| {
                    format!(
                        "{:?} {} mod {}",
                        c.kind,
                        c.offset.value(),
                        c.offset.modulus()
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Output::ok("grade", classes, text)
        }
        Command::Curve { command } => run_curve(command),
        Command::Verify { check, args } => run_verify(*check, args, cli.seed),
    }
}

/// Runs the command line `args` (program name first); returns the exit
/// code: 0 on success, 1 on bad input, 2 when a verification fails.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let output = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let body = match cli.format {
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": output.command,
                "ok": !output.failed,
                "result": output.result,
            });
            serde_json::to_string_pretty(&doc).expect("json values serialize")
        }
        Format::Text => output.text,
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, format!("{body}\n")),
        None => writeln!(out, "{body}"),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    if output.failed {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("ech-index").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn cz_examples() {
        let (code, out, _) = call(&[
            "cz",
            "--orbit",
            r#"{"kind":"elliptic","p":3,"q":10,"k_max":9}"#,
            "--k",
            "4",
        ]);
        assert_eq!((code, out.trim()), (0, "3"));
        let (code, _, err) = call(&[
            "cz",
            "--orbit",
            r#"{"kind":"elliptic","p":1,"q":2,"k_max":3}"#,
            "--k",
            "1",
        ]);
        assert_eq!(code, 1);
        assert!(err.contains("rational at multiplicity"), "{err}");
    }

    #[test]
    fn verify_exit_codes() {
        let (code, out, _) = call(&[
            "verify", "ce1", "--m-max", "4", "--thetas", "3/10", "--format", "json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["result"]["violation_count"], 0);
        // a single negative hyperbolic strand on both sides breaks the J0 union bound
        let (code, _, _) = call(&[
            "verify", "j-union", "--m-max", "2", "--thetas", "3/10", "--n-min", "1", "--n-max", "1",
        ]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["verify", "nonsense"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn json_round_trips() {
        let (code, out, _) = call(&[
            "partitions",
            "--theta",
            "3/10",
            "--m",
            "4",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["p_out"], json!([4]));
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(v, again);
        let kind: OrbitKind = serde_json::from_value(v["result"]["orbit"].clone()).unwrap();
        assert_eq!(kind, OrbitKind::elliptic(3, 10, 9).unwrap());
    }
}
