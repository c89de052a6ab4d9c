//! Command-line front end: exact verification runs with streaming reports.
//!
//! Subcommands map onto the library's verification operations; `--json`
//! emits one JSON object per check. With a fixed configuration and seed the
//! JSON stream is byte-identical across runs except for the timing fields.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qmorris::aflt::{
    build_integrand, verify_addpoint_1, verify_addpoint_2, verify_aflt, verify_qmorris,
    verify_recursion, verify_roots, AfltParams,
};
use qmorris::macdonald;
use qmorris::partition::Partition;
use qmorris::report::{summarize, CheckRecord};
use qmorris::suites;
use qmorris::Error;

#[derive(Parser)]
#[command(
    name = "qmorris",
    about = "Exact verification of q-Morris type constant term identities",
    version
)]
struct Cli {
    /// Emit one JSON object per check instead of human-readable lines.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized exact evaluations (fixed default for
    /// reproducibility).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for independent checks (defaults to the core count).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Print the fully expanded integrand before verifying.
    #[arg(long, global = true)]
    dump_integrand: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify a single identity instance.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Run a property suite.
    Props {
        #[command(subcommand)]
        what: PropsCmd,
    },
    /// Sweep the main identity over a parameter box.
    Sweep(SweepArgs),
    /// Inspect Macdonald polynomial expansions.
    Mac {
        #[command(subcommand)]
        what: MacCmd,
    },
}

#[derive(Args)]
struct PointArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, default_value_t = 0)]
    b: i64,
    #[arg(long, default_value_t = 0)]
    c: i64,
    /// Partition literal, e.g. "2,1"; empty or "0" for the zero partition.
    #[arg(long, default_value = "")]
    lambda: String,
    #[arg(long, default_value = "")]
    mu: String,
}

impl PointArgs {
    fn to_params(&self) -> Result<AfltParams, String> {
        let lambda: Partition = self.lambda.parse().map_err(|e| format!("{e}"))?;
        let mu: Partition = self.mu.parse().map_err(|e| format!("{e}"))?;
        Ok(AfltParams::new(self.n, self.a, self.b, self.c, lambda, mu))
    }
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Both pipelines of the main identity at one parameter point.
    Aflt(PointArgs),
    /// The q-Morris specialization (empty partitions).
    Qmorris(PointArgs),
    /// Interpolation degree and root vanishing (ignores --a).
    Roots(PointArgs),
    /// The recursion in n.
    Recursion(PointArgs),
    /// The two additional-point identities (ignores --a).
    Addpoints(PointArgs),
}

#[derive(Subcommand)]
enum PropsCmd {
    /// Run one named suite.
    Run {
        #[arg(long)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Mac,
    Symfunc,
    Cai,
    Keylemma,
    Vanish,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 2)]
    max_n: usize,
    #[arg(long, default_value_t = 2)]
    max_a: i64,
    #[arg(long, default_value_t = 2)]
    max_b: i64,
    #[arg(long, default_value_t = 2)]
    max_c: i64,
    /// Bound on |lambda| and |mu|.
    #[arg(long, default_value_t = 1)]
    max_wt: i64,
}

#[derive(Subcommand)]
enum MacCmd {
    /// Render the expansion of P_lambda in a chosen basis.
    Show {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "m")]
        basis: Basis,
        /// Diagnostic power-sum rendering (same as --basis p).
        #[arg(long)]
        dump_p_basis: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    M,
    P,
    G,
}

fn emit(json: bool, rec: &CheckRecord) {
    if json {
        println!("{}", serde_json::to_string(rec).expect("serializable"));
    } else {
        let status = if rec.refused {
            "REFUSED"
        } else if rec.equal {
            "ok"
        } else {
            "FAIL"
        };
        let params: Vec<String> = rec.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut line = format!("[{status}] {} {}", rec.check, params.join(" "));
        if !rec.lhs.is_empty() {
            line.push_str(&format!("  lhs = {}  rhs = {}", rec.lhs, rec.rhs));
        }
        if !rec.notes.is_empty() {
            line.push_str(&format!("  ({})", rec.notes));
        }
        println!("{line}");
    }
}

fn emit_all(json: bool, records: &[CheckRecord]) -> bool {
    for rec in records {
        emit(json, rec);
    }
    let (pass, fail, refused) = summarize(records);
    if !json {
        println!("summary: {pass} passed, {fail} failed, {refused} refused");
    }
    fail == 0
}

fn refusal_record(check: &str, params: BTreeMap<String, String>, err: &Error) -> CheckRecord {
    match err {
        Error::Refused(msg) | Error::Pole(msg) => CheckRecord::refused(check, params, msg.clone()),
        other => {
            let mut rec = CheckRecord::new(check, params);
            rec.notes = format!("error: {other}");
            rec
        }
    }
}

fn dump_integrand(p: &AfltParams, json: bool) {
    match build_integrand(p) {
        Ok(f) => {
            if json {
                println!(
                    "{}",
                    serde_json::json!({"integrand": f.to_string(), "terms": f.num_terms()})
                );
            } else {
                println!("integrand ({} terms): {f}", f.num_terms());
            }
        }
        Err(e) => {
            if json {
                println!("{}", serde_json::json!({"integrand_error": e.to_string()}));
            } else {
                println!("integrand unavailable: {e}");
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build_global()
            .ok();
    }
    if let Ok(v) = std::env::var("CT_MACD_CACHE_MAX") {
        if let Ok(d) = v.parse::<i64>() {
            macdonald::set_cache_max_degree(d);
        }
    }
    let json = cli.json;
    let ok = match cli.cmd {
        Cmd::Verify { what } => {
            let (check, args) = match &what {
                VerifyCmd::Aflt(a) => ("aflt", a),
                VerifyCmd::Qmorris(a) => ("qmorris", a),
                VerifyCmd::Roots(a) => ("roots", a),
                VerifyCmd::Recursion(a) => ("recursion", a),
                VerifyCmd::Addpoints(a) => ("addpoints", a),
            };
            let p = match args.to_params() {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if cli.dump_integrand {
                dump_integrand(&p, json);
            }
            let records: Vec<CheckRecord> = match what {
                VerifyCmd::Aflt(_) => vec![match verify_aflt(&p) {
                    Ok(v) => CheckRecord::from_verify(check, &v),
                    Err(e) => refusal_record(check, p.params_map(), &e),
                }],
                VerifyCmd::Qmorris(_) => {
                    vec![match verify_qmorris(p.n, p.a, p.b, p.c) {
                        Ok(v) => CheckRecord::from_verify(check, &v),
                        Err(e) => refusal_record(check, p.params_map(), &e),
                    }]
                }
                VerifyCmd::Roots(_) => vec![match verify_roots(&p) {
                    Ok(rep) => {
                        let mut rec = CheckRecord::new(check, p.params_map());
                        rec.equal = rep.passed();
                        rec.lhs = format!("degree {}", rep.actual_degree);
                        rec.rhs = format!("degree bound {}", rep.degree_bound);
                        rec.notes = if rep.failures.is_empty() {
                            format!(
                                "{} roots vanish; disjoint={} distinct={}",
                                rep.roots.union().len(),
                                rep.pairwise_disjoint,
                                rep.all_distinct
                            )
                        } else {
                            rep.failures.join("; ")
                        };
                        rec
                    }
                    Err(e) => refusal_record(check, p.params_map(), &e),
                }],
                VerifyCmd::Recursion(_) => vec![match verify_recursion(&p) {
                    Ok(v) => CheckRecord::from_verify(check, &v),
                    Err(e) => refusal_record(check, p.params_map(), &e),
                }],
                VerifyCmd::Addpoints(_) => vec![
                    match verify_addpoint_1(&p) {
                        Ok(v) => CheckRecord::from_verify("addpoint-1", &v),
                        Err(e) => refusal_record("addpoint-1", p.params_map(), &e),
                    },
                    match verify_addpoint_2(&p) {
                        Ok(v) => CheckRecord::from_verify("addpoint-2", &v),
                        Err(e) => refusal_record("addpoint-2", p.params_map(), &e),
                    },
                ],
            };
            emit_all(json, &records)
        }
        Cmd::Props { what } => {
            let PropsCmd::Run { suite } = what;
            let records = match suite {
                Suite::Mac => suites::suite_macdonald(4, cli.seed),
                Suite::Symfunc => suites::suite_symfunc(cli.seed),
                Suite::Cai => suites::suite_cai(cli.seed),
                Suite::Keylemma => suites::suite_keylemma(),
                Suite::Vanish => suites::suite_vanishing(),
            };
            emit_all(json, &records)
        }
        Cmd::Sweep(args) => {
            let ns: Vec<usize> = (1..=args.max_n).collect();
            let grid = suites::aflt_grid(&ns, args.max_a, args.max_b, args.max_c, args.max_wt, None);
            let mut records = suites::suite_aflt(&grid);
            records.extend(suites::suite_recursion_addpoints(&grid));
            emit_all(json, &records)
        }
        Cmd::Mac { what } => {
            let MacCmd::Show {
                lambda,
                basis,
                dump_p_basis,
            } = what;
            let lam: Partition = match lambda.parse() {
                Ok(l) => l,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let basis = if dump_p_basis { Basis::P } else { basis };
            let lines: Vec<String> = match basis {
                Basis::P => macdonald::mac_P(&lam).render_p_basis(),
                Basis::M => qmorris::symfunc::m_coords(&macdonald::mac_P(&lam))
                    .iter()
                    .map(|(mu, c)| format!("({c}) * m[{mu}]"))
                    .collect(),
                Basis::G => macdonald::g_expansion(&lam)
                    .iter()
                    .map(|(mu, c)| format!("({c}) * g[{mu}]"))
                    .collect(),
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({"lambda": lam.to_string(), "expansion": lines})
                );
            } else {
                for line in &lines {
                    println!("{line}");
                }
            }
            true
        }
    };
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
