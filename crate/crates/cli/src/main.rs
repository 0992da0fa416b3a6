use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use setramsey::chains::extract_chain;
use setramsey::constructions::{
    construct_choose, construct_f, construct_prop2, verify_construction, NamedConstruction,
};
use setramsey::embed::{count_embeddings, find_embedding};
use setramsey::extremal::{
    furedi_tuza_exhaustive, lemma94_exhaustive, search_s, skew_pairs_max, theorem4_exhaustive,
    theorem4_witness, ExtremalQuery, SearchOptions,
};
use setramsey::patterns::generate;
use setramsey::ramsey::{ramsey_verify, theorem3_pipeline};
use setramsey::reduction::reduce;
use setramsey::{Error, PatternKind, PatternMatrix, SetFamily};

const EXIT_NOT_FOUND: u8 = 3;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 1;

#[derive(Parser)]
#[command(
    name = "setramsey",
    version,
    about = "Forbidden incidence patterns in set families"
)]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FamilyInput {
    /// Family file, or `-` for stdin.
    #[arg(value_name = "FILE", required_unless_present = "family")]
    path: Option<String>,
    #[arg(long = "family", value_name = "FILE", conflicts_with = "path")]
    family: Option<String>,
}

#[derive(Args)]
struct Threads {
    /// Worker threads; SETRAMSEY_THREADS takes precedence when set.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Look for a pattern in a family.
    FindPattern {
        #[command(flatten)]
        input: FamilyInput,
        /// `singleton:N`, `cosingleton:N`, `monotone:N`, `increasing:K`,
        /// `decreasing:K`, or a pattern file over 0, 1 and `?`.
        #[arg(long)]
        pattern: String,
        /// Count every occurrence instead of reporting the least one.
        #[arg(long)]
        count: bool,
    },
    /// Extract an increasing or decreasing sequence.
    Lemma1 {
        #[command(flatten)]
        input: FamilyInput,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Find a singleton, co-singleton or monotone pattern through Ramsey's theorem.
    Theorem3 {
        #[command(flatten)]
        input: FamilyInput,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Report which of the three size-split conditions holds.
    Theorem4 {
        #[command(flatten)]
        input: FamilyInput,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Delete useless elements.
    Reduce {
        #[command(flatten)]
        input: FamilyInput,
        /// Also report the deleted and kept elements.
        #[arg(long)]
        trace: bool,
    },
    /// Print a named avoiding family.
    Construct {
        #[command(subcommand)]
        which: Construction,
        /// Re-check the size and avoidance claims instead of printing the family.
        #[arg(long, global = true)]
        verify: bool,
    },
    /// Compute S(k, l) exactly, or bracket it when the budget runs out.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[command(flatten)]
        threads: Threads,
        /// Write the largest avoiding family found to this file.
        #[arg(long, value_name = "FILE")]
        emit_witness: Option<String>,
    },
    /// Exhaustive checks of finite statements.
    Verify {
        #[command(subcommand)]
        which: Check,
    },
    /// Check every 2-colouring of K_R(r) and a clique-free colouring of K_(R(r)-1).
    RamseyVerify {
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[command(flatten)]
        threads: Threads,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// All L-subsets of [N].
    Choose { n: usize, l: usize },
    /// The eight-member family over four elements.
    #[command(name = "F")]
    F,
    /// The family over [2L] with C(2L, L) + C(2L-3, L-1) members.
    Prop2 { l: usize },
}

#[derive(Subcommand)]
enum Check {
    /// Nine distinct subsets of [4] always contain an order-3 pattern.
    Lemma94 {
        #[command(flatten)]
        threads: Threads,
    },
    /// Every family of C(k+l, l) + 1 subsets of [k+l] meets a condition.
    Theorem4 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        threads: Threads,
    },
    /// Families of small sets above the bound contain Singleton(k+1).
    FurediTuza {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Universe size, at most k + l + 2.
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        threads: Threads,
    },
    /// Longest skew cross-intersecting pair sequence over [cap].
    Skew {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        cap: usize,
    },
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Soundness(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message,
    }
}

type Outcome = Result<u8, Failure>;

fn threads(t: &Threads) -> usize {
    std::env::var("SETRAMSEY_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .or(t.threads)
        .unwrap_or_else(|| SearchOptions::default().threads)
}

fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
    }
}

fn read_family(input: &FamilyInput) -> Result<SetFamily, Failure> {
    let path = input
        .family
        .as_deref()
        .or(input.path.as_deref())
        .unwrap_or("-");
    let text = read_text(path)?;
    SetFamily::parse(&text).map_err(|e| usage(format!("{path}: {e}")))
}

fn read_pattern(spec: &str) -> Result<PatternMatrix, Failure> {
    if let Ok(kind) = spec.parse::<PatternKind>() {
        return Ok(generate(kind));
    }
    if !std::path::Path::new(spec).is_file() {
        return Err(Error::from(setramsey::ParseError::UnknownPattern(spec.into())).into());
    }
    let text = read_text(spec)?;
    PatternMatrix::parse(&text).map_err(|e| usage(format!("{spec}: {e}")))
}

fn emit(json_mode: bool, value: &Value, human: impl FnOnce() -> String) {
    if json_mode {
        println!("{value}");
    } else {
        print!("{}", human());
    }
}

fn found(yes: bool) -> u8 {
    if yes {
        0
    } else {
        EXIT_NOT_FOUND
    }
}

fn run(cli: Cli) -> Outcome {
    let js = cli.json;
    match cli.command {
        Command::FindPattern {
            input,
            pattern,
            count,
        } => {
            let family = read_family(&input)?;
            let p = read_pattern(&pattern)?;
            if count {
                let n = count_embeddings(&family, &p)?;
                emit(
                    js,
                    &json!({"pattern": pattern, "count": n.to_string()}),
                    || format!("{n}\n"),
                );
                return Ok(found(n > 0));
            }
            match find_embedding(&family, &p) {
                Some(e) => {
                    let v = e.to_json(&pattern);
                    emit(js, &v, || {
                        let r: Vec<String> = e.rows.iter().map(|r| (r + 1).to_string()).collect();
                        let c: Vec<String> = e.cols.iter().map(|c| (c + 1).to_string()).collect();
                        format!(
                            "found {pattern}\nrows {}\ncols {}\n",
                            r.join(" "),
                            c.join(" ")
                        )
                    });
                    Ok(0)
                }
                None => {
                    emit(js, &json!({"pattern": pattern, "found": false}), || {
                        format!("{pattern} not found\n")
                    });
                    Ok(EXIT_NOT_FOUND)
                }
            }
        }
        Command::Lemma1 { input, k, l } => {
            let family = read_family(&input)?;
            let w = extract_chain(&family, k, l)?;
            emit(js, &w.to_json(), || {
                let idx: Vec<String> = w.indices.iter().map(|i| (i + 1).to_string()).collect();
                format!("{:?} sequence: {}\n", w.direction, idx.join(" ")).to_lowercase()
            });
            Ok(0)
        }
        Command::Theorem3 { input, k, l } => {
            let family = read_family(&input)?;
            let r = theorem3_pipeline(&family, k, l)?;
            let name = r.kind.to_string();
            let mut v = r.embedding.to_json(&name);
            v["chain"] = r.chain.to_json();
            v["notes"] = json!(r.notes);
            emit(js, &v, || {
                let rows: Vec<String> = r
                    .embedding
                    .rows
                    .iter()
                    .map(|x| (x + 1).to_string())
                    .collect();
                let cols: Vec<String> = r
                    .embedding
                    .cols
                    .iter()
                    .map(|x| (x + 1).to_string())
                    .collect();
                let mut s = format!(
                    "found {name}\nrows {}\ncols {}\n",
                    rows.join(" "),
                    cols.join(" ")
                );
                for n in &r.notes {
                    s.push_str(&format!("note: {n}\n"));
                }
                s
            });
            Ok(0)
        }
        Command::Theorem4 { input, k, l } => {
            let family = read_family(&input)?;
            let w = theorem4_witness(&family, k, l)?;
            let v = w.to_json(k, l);
            emit(js, &v, || {
                format!("condition {} holds: {}\n", w.condition(), v)
            });
            Ok(0)
        }
        Command::Reduce { input, trace } => {
            let family = read_family(&input)?;
            let r = reduce(&family);
            let deleted: Vec<usize> = r.deleted.iter().map(|e| e.id()).collect();
            let kept: Vec<usize> = r.kept.iter().map(|p| p + 1).collect();
            if js || trace {
                let mut v = json!({"family": r.family.lines()});
                if trace {
                    v["deleted"] = json!(deleted);
                    v["kept"] = json!(kept);
                }
                println!("{v}");
            } else {
                print!("{}", r.family.render());
            }
            Ok(0)
        }
        Command::Construct { which, verify } => {
            let c: NamedConstruction = match which {
                Construction::Choose { n, l } => construct_choose(n, l)?,
                Construction::F => construct_f(),
                Construction::Prop2 { l } => construct_prop2(l)?,
            };
            if verify {
                let report = verify_construction(&c);
                let v = serde_json::to_value(&report).expect("report serializes");
                emit(js, &v, || {
                    let mut s = format!("{} ({} members)\n", report.name, report.size);
                    for check in &report.checks {
                        let mark = if check.passed { "ok  " } else { "FAIL" };
                        s.push_str(&format!("{mark} {}\n", check.claim));
                    }
                    s
                });
                return Ok(if report.passed { 0 } else { EXIT_INTERNAL });
            }
            let v = json!({
                "name": c.name,
                "parameters": c.parameters,
                "claimed_size": c.claimed_size as u64,
                "avoids": c.avoided.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "family": c.family.lines(),
            });
            emit(js, &v, || c.family.render());
            Ok(0)
        }
        Command::Search {
            k,
            l,
            budget_nodes,
            threads: t,
            emit_witness,
        } => {
            let options = SearchOptions {
                budget_nodes,
                threads: threads(&t),
                ..SearchOptions::default()
            };
            let r = search_s(ExtremalQuery::new(k, l), &options)?;
            if let Some(path) = emit_witness {
                fs::write(&path, r.witness.render()).map_err(|e| usage(format!("{path}: {e}")))?;
            }
            emit(js, &r.to_json(), || {
                let head = match (r.value, r.bracket) {
                    (Some(v), _) => format!("S({k},{l}) = {v}"),
                    (None, Some((lo, Some(hi)))) => format!("{lo} <= S({k},{l}) <= {hi}"),
                    (None, _) => format!("S({k},{l}) >= {}", r.lower_bound()),
                };
                format!(
                    "{head}\nexhausted {}, nodes {}, canonical rejects {}, universe cap {}\n{}",
                    r.exhausted,
                    r.nodes,
                    r.canonical_rejects,
                    r.universe_cap,
                    r.witness.render()
                )
            });
            Ok(found(r.exhausted))
        }
        Command::Verify { which } => {
            let (v, ok) = match which {
                Check::Lemma94 { threads: t } => {
                    let r = lemma94_exhaustive(threads(&t))?;
                    (serde_json::to_value(&r).unwrap(), r.all_embed)
                }
                Check::Theorem4 { k, l, threads: t } => {
                    let r = theorem4_exhaustive(k, l, threads(&t))?;
                    (serde_json::to_value(&r).unwrap(), r.holds)
                }
                Check::FurediTuza {
                    k,
                    l,
                    cap,
                    threads: t,
                } => {
                    let r = furedi_tuza_exhaustive(k, l, cap, threads(&t))?;
                    (serde_json::to_value(&r).unwrap(), r.holds)
                }
                Check::Skew { k, l, cap } => {
                    let m = skew_pairs_max(k, l, cap)?;
                    let bound = setramsey::binom(k + l, l);
                    let ok = m as u128 <= bound;
                    (
                        json!({"k": k, "l": l, "cap": cap, "max": m, "bound": bound as u64, "within_bound": ok}),
                        ok,
                    )
                }
            };
            emit(js, &v, || {
                format!("{}\n{}\n", if ok { "holds" } else { "FAILS" }, v)
            });
            Ok(if ok { 0 } else { EXIT_INTERNAL })
        }
        Command::RamseyVerify { r, threads: t } => {
            let cert = ramsey_verify(r, threads(&t))?;
            let v = serde_json::to_value(&cert).unwrap();
            emit(js, &v, || {
                format!(
                    "R({r}) = {}: {} of {} colourings of K_{} have a monochromatic K_{r}; witness on {} vertices clique-free: {}\n",
                    cert.n, cert.colorings_with_clique, cert.colorings, cert.n, cert.n - 1, cert.lower_holds
                )
            });
            Ok(if cert.verified { 0 } else { EXIT_INTERNAL })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
