//! `pi1`: normalize path expressions with printed rewrite traces, decide
//! rewrite equality, read off fundamental groups, build pushouts, solve
//! word problems, and audit local confluence.
//!
//! Exit codes: 0 success / positive verdict, 1 negative verdict,
//! 2 usage or input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pi1_core::catalog::{make_space, SpaceTag};
use pi1_core::confluence::check_local_confluence;
use pi1_core::group::{
    solver_normalize, GroupPresentation, Pi1Presentation, Trilean, Word,
};
use pi1_core::pushout::{RoundTripBounds, SvkInstance};
use pi1_core::rewrite::{normalize, rw_eq_decide, RuleSet, RwEqOutcome};
use pi1_core::space::SpacePresentation;

use pi1_cli::exprtext::{parse_path_expr, print_path_expr};
use pi1_cli::schema::{PushoutFile, SpaceFile};
use pi1_cli::trace::format_trace;

#[derive(Parser)]
#[command(name = "pi1", version, about = "Rewrite-trace equality and fundamental group calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize an expression; with --trace, print one rewrite per line.
    Normalize {
        /// Space presentation (JSON file).
        #[arg(long)]
        space: PathBuf,
        /// Expression text, e.g. "(loop . inv(loop))".
        #[arg(long)]
        expr: String,
        #[arg(long)]
        trace: bool,
    },
    /// Decide rewrite equality of two expressions (exit 0 equal, 1 not).
    Eq {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        /// Print the replayable witness.
        #[arg(long)]
        trace: bool,
    },
    /// Print the spanning-tree presentation of the fundamental group.
    Pi1 {
        #[arg(long)]
        space: PathBuf,
    },
    /// Build a pushout and print its presentation and round-trip report.
    Svk {
        /// Pushout gluing description (JSON file).
        #[arg(long)]
        spec: PathBuf,
    },
    /// Solve a word in a group family.
    Word {
        /// trivial | free | integers | cyclic | klein | surface | nonorientable
        #[arg(long)]
        family: String,
        /// Family parameters, comma separated (e.g. the genus).
        #[arg(long, default_value = "")]
        params: String,
        /// Letters a..z with optional ^-1 suffix, whitespace separated.
        #[arg(long)]
        word: String,
        /// Exit 1 unless the word is the identity.
        #[arg(long)]
        assert_identity: bool,
    },
    /// Enumerate critical pairs and check joinability (exit 0 iff all join).
    CheckConfluence,
    /// Emit the space presentation JSON for a catalog entry.
    Catalog {
        #[arg(long)]
        tag: String,
        /// Comma-separated numeric parameters (e.g. "5,2" for lens spaces).
        #[arg(long, default_value = "")]
        params: String,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load_space(path: &PathBuf) -> Result<SpacePresentation, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: SpaceFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    file.to_space()
}

fn parse_params(text: &str) -> Result<Vec<u64>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad parameter `{p}`: {e}"))
        })
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Normalize { space, expr, trace } => {
            let space = load_space(&space)?;
            let expr = parse_path_expr(&expr, &space).map_err(|e| e.to_string())?;
            let (nf, derivation) = normalize(&space, &expr).map_err(|e| e.to_string())?;
            if trace {
                for line in format_trace(&space, &derivation)? {
                    println!("{line}");
                }
            }
            println!("{}", print_path_expr(nf.expr()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Eq {
            space,
            lhs,
            rhs,
            trace,
        } => {
            let space = load_space(&space)?;
            let lhs = parse_path_expr(&lhs, &space).map_err(|e| e.to_string())?;
            let rhs = parse_path_expr(&rhs, &space).map_err(|e| e.to_string())?;
            match rw_eq_decide(&space, &lhs, &rhs).map_err(|e| e.to_string())? {
                RwEqOutcome::Equal(witness) => {
                    if trace {
                        for line in format_trace(&space, &witness)? {
                            println!("{line}");
                        }
                    }
                    println!("equal");
                    Ok(ExitCode::SUCCESS)
                }
                RwEqOutcome::Distinct {
                    lhs_normal,
                    rhs_normal,
                } => {
                    println!(
                        "distinct: {} vs {}",
                        print_path_expr(lhs_normal.expr()),
                        print_path_expr(rhs_normal.expr())
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Pi1 { space } => {
            let space = load_space(&space)?;
            let pi1 = pi1_core::group::presentation_of_pi1(&space).map_err(|e| e.to_string())?;
            print_presentation(&pi1);
            Ok(ExitCode::SUCCESS)
        }
        Command::Svk { spec } => {
            let text = fs::read_to_string(&spec).map_err(|e| format!("{}: {e}", spec.display()))?;
            let file: PushoutFile =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", spec.display()))?;
            let spec = file.to_spec()?;
            let pi1 = pi1_core::pushout::svk_presentation(&spec).map_err(|e| e.to_string())?;
            let built = pi1.space();
            println!(
                "pushout: {} points, {} edges, {} relators",
                built.points().len(),
                built.edges().len(),
                built.relators().len()
            );
            print_presentation(&pi1);
            match SvkInstance::new(spec) {
                Ok(inst) => {
                    let report = inst
                        .round_trip_check(&RoundTripBounds::default())
                        .map_err(|e| e.to_string())?;
                    println!("round-trip: {report}");
                    if !report.all_passed() {
                        return Ok(ExitCode::from(1));
                    }
                }
                Err(e) => println!("round-trip: not available ({e})"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Word {
            family,
            params,
            word,
            assert_identity,
        } => {
            let params = parse_params(&params)?;
            let pres = family_presentation(&family, &params)?;
            let word = parse_word(&word, pres.generators())?;
            let verdict = solver_normalize(&pres, &word).map_err(|e| e.to_string())?;
            println!("canonical: {}", verdict.canonical);
            let identity = match verdict.identity {
                Trilean::Yes => "yes",
                Trilean::No => "no",
                Trilean::Unknown => "unknown",
            };
            println!("identity: {identity}");
            if assert_identity && verdict.identity != Trilean::Yes {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckConfluence => {
            let report = check_local_confluence(&RuleSet::full());
            println!("critical pairs: {}", report.total_pairs);
            println!("joinable: {}", report.joinable_pairs);
            println!(
                "locally confluent: {}",
                if report.is_locally_confluent() {
                    "yes"
                } else {
                    "no"
                }
            );
            for cex in &report.counterexamples {
                println!(
                    "non-joinable: peak {} splits to {} vs {}",
                    print_path_expr(&cex.pair.peak),
                    print_path_expr(&cex.left_normal),
                    print_path_expr(&cex.right_normal)
                );
            }
            if report.is_locally_confluent() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Catalog { tag, params } => {
            let tag = SpaceTag::from_name(&tag).ok_or_else(|| format!("unknown tag `{tag}`"))?;
            let params = parse_params(&params)?;
            let entry = make_space(tag, &params).map_err(|e| e.to_string())?;
            let file = SpaceFile::from_space(&entry.space);
            println!(
                "{}",
                serde_json::to_string_pretty(&file).map_err(|e| e.to_string())?
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_presentation(pi1: &Pi1Presentation) {
    let pres = pi1.presentation();
    let names: Vec<String> = (0..pres.generators())
        .map(|g| pi1.generator_edge(g).to_string())
        .collect();
    println!("generators: {} ({})", pres.generators(), names.join(", "));
    println!("relators: {}", pres.relators().len());
    for r in pres.relators() {
        let rendered: Vec<String> = r
            .0
            .iter()
            .map(|l| {
                let name = pi1.generator_edge(l.gen);
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.to_string()
                }
            })
            .collect();
        println!("  {}", rendered.join(" "));
    }
    println!("family: {}", pres.family());
    let simplified = pi1_core::group::simplify_presentation(pres);
    if &simplified != pres {
        println!(
            "simplified: {} generator(s), {} relator(s), family: {}",
            simplified.generators(),
            simplified.relators().len(),
            simplified.family()
        );
    }
}

fn family_presentation(family: &str, params: &[u64]) -> Result<GroupPresentation, String> {
    let need = |n: usize| -> Result<(), String> {
        if params.len() == n {
            Ok(())
        } else {
            Err(format!("family `{family}` needs {n} parameter(s)"))
        }
    };
    match family {
        "trivial" => {
            need(0)?;
            Ok(GroupPresentation::trivial())
        }
        "integers" => {
            need(0)?;
            Ok(GroupPresentation::free(1))
        }
        "free" => {
            need(1)?;
            Ok(GroupPresentation::free(params[0] as usize))
        }
        "cyclic" => {
            need(1)?;
            if params[0] == 0 {
                return Err("cyclic needs p >= 1".to_string());
            }
            Ok(GroupPresentation::cyclic(params[0]))
        }
        "klein" => {
            need(0)?;
            Ok(GroupPresentation::klein())
        }
        "surface" => {
            need(1)?;
            GroupPresentation::orientable_surface(params[0] as u32).map_err(|e| e.to_string())
        }
        "nonorientable" => {
            need(1)?;
            GroupPresentation::non_orientable_surface(params[0] as u32).map_err(|e| e.to_string())
        }
        other => Err(format!("unknown family `{other}`")),
    }
}

fn parse_word(text: &str, generators: usize) -> Result<Word, String> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let (name, inverse) = match token.strip_suffix("^-1") {
            Some(name) => (name, true),
            None => (token, false),
        };
        let mut chars = name.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return Err(format!("letter `{token}` is not a single generator name"));
        };
        if !c.is_ascii_lowercase() {
            return Err(format!("letter `{token}` must be a-z"));
        }
        let gen = (c as u8 - b'a') as usize;
        if gen >= generators {
            return Err(format!(
                "letter `{token}` is out of range for {generators} generator(s)"
            ));
        }
        letters.push(pi1_core::group::GenLetter { gen, inverse });
    }
    Ok(Word(letters))
}
