use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use opacity::opacity::format_word;
use opacity::report::{to_json, CorpusRowJson, OracleJson, ReportJson};
use opacity::{aut, corpus, dot, oracle, Dfao, Exec, Validated};

/// Opacity of automatic sequences given by finite automata with output.
#[derive(Debug, Parser)]
#[command(name = "opacity", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Opacity, complexity and homogeneity of the sequence an automaton generates.
    Analyze {
        file: PathBuf,
        /// Confirm the opacity by exhaustive enumeration.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Write the intrinsic automaton and print the factor map onto it.
    Minimize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the first N terms of the generated sequence.
    Generate {
        file: PathBuf,
        #[arg(short = 'n', value_name = "N")]
        terms: u64,
        #[arg(long, default_value = ",")]
        sep: String,
    },
    /// Graphviz rendering of an automaton.
    Dot {
        file: PathBuf,
        /// Highlight a shortest inhomogeneous path.
        #[arg(long)]
        witness: bool,
    },
    /// Check every built-in automaton against its expected results.
    Corpus {
        #[arg(long)]
        json: bool,
        /// Also write each entry as `<name>.aut` into this directory.
        #[arg(long, value_name = "DIR")]
        export: Option<PathBuf>,
    },
    /// Decide whether two automata produce the same output on every word.
    Equiv { first: PathBuf, second: PathBuf },
}

fn load(path: &Path) -> anyhow::Result<Dfao> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let Validated { dfao, pruned, .. } = aut::parse(&text).with_context(|| path.display().to_string())?;
    if !pruned.is_empty() {
        eprintln!(
            "warning: {}: pruned unreachable states: {}",
            path.display(),
            pruned.join(" ")
        );
    }
    Ok(dfao)
}

fn analyze(file: &Path, with_oracle: bool, json: bool) -> anyhow::Result<bool> {
    let dfao = load(file)?;
    let report = opacity::analyze_sequence(&dfao);
    let a = report.intrinsic.automaton();
    let oracle_run = with_oracle.then(|| {
        let len = oracle::oracle_bound(a);
        (len, oracle::brute_force_opacity(a, len))
    });
    let agrees = match &oracle_run {
        Some((_, Ok(value))) => *value == report.opacity.distance(),
        _ => true,
    };

    if json {
        let oracle_json = oracle_run.as_ref().map(|(len, r)| OracleJson::new(*len, r));
        println!("{}", to_json(&ReportJson::new(None, &report, oracle_json)));
        return Ok(agrees);
    }

    let yes_no = |b: bool| if b { "yes" } else { "no" };
    println!("{:<22}{}", "k", report.k);
    println!("{:<22}{}", "states", report.states_count);
    println!("{:<22}{}", "minimized states", report.minimized_states());
    println!("{:<22}{}", "strictly accessible", yes_no(report.strictly_accessible));
    println!("{:<22}{}", "classification", report.classification);
    println!("{:<22}{}", "opacity", report.opacity);
    println!("{:<22}{}", "complexity", report.complexity);
    match &report.witness {
        Some(w) => println!(
            "{:<22}{} (state {}, edges {} and {})",
            "witness",
            format_word(&w.word, report.k),
            a.state_name(w.collide_state),
            w.position_a,
            w.position_b
        ),
        None => println!("{:<22}none", "witness"),
    }
    let inhom = report.inhomogeneous_states();
    println!(
        "{:<22}{}",
        "inhomogeneous states",
        if inhom.is_empty() { "none".to_string() } else { inhom.join(" ") }
    );
    if let Some((len, result)) = &oracle_run {
        let label = format!("oracle (L={len})");
        match result {
            Ok(v) if agrees => println!("{label:<22}{v} (agrees)"),
            Ok(v) => println!("{label:<22}{v} (DISAGREES)"),
            Err(e) => println!("{label:<22}skipped: {e}"),
        }
    }
    Ok(agrees)
}

fn minimize(file: &Path, output: Option<&Path>) -> anyhow::Result<bool> {
    let dfao = load(file)?;
    let factor = opacity::intrinsic_automaton(&dfao);
    let (src, dst) = (factor.source.automaton(), factor.target.automaton());
    let map: Vec<String> = (0..src.num_states())
        .map(|s| format!("{} -> {}", src.state_name(s), dst.state_name(factor.map[s])))
        .collect();
    let text = aut::serialize(&factor.target);
    match output {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
            for line in map {
                println!("{line}");
            }
        }
        None => {
            for line in map {
                println!("# {line}");
            }
            print!("{text}");
        }
    }
    Ok(true)
}

fn corpus_cmd(json: bool, export: Option<&Path>) -> anyhow::Result<bool> {
    if let Some(dir) = export {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for name in corpus::names() {
            let path = dir.join(format!("{name}.aut"));
            fs::write(&path, aut::serialize(&corpus::build(name)?))
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
    }
    let rows = corpus::run(Exec::available());
    let all_pass = rows.iter().all(|r| r.passed());
    if json {
        let rows: Vec<CorpusRowJson> = rows.iter().map(CorpusRowJson::from).collect();
        println!("{}", to_json(&rows));
        return Ok(all_pass);
    }
    println!(
        "{:<18} {:>2} {:>6} {:>8} {:>10} {:<13} {:<8} {:<10} {:<9} result",
        "name", "k", "states", "opacity", "complexity", "class", "witness", "oracle", "sequence"
    );
    for row in &rows {
        let r = &row.report;
        let witness = r
            .witness
            .as_ref()
            .map_or("-".to_string(), |w| format_word(&w.word, r.k));
        let oracle = match &row.oracle {
            Ok(v) => v.to_string(),
            Err(_) => "too large".to_string(),
        };
        let sequence = match row.sequence {
            Some(true) => "ok",
            Some(false) => "MISMATCH",
            None => "-",
        };
        println!(
            "{:<18} {:>2} {:>6} {:>8} {:>10} {:<13} {:<8} {:<10} {:<9} {}",
            row.entry.name,
            r.k,
            r.minimized_states(),
            r.opacity.to_string(),
            r.complexity.to_string(),
            r.classification.to_string(),
            witness,
            oracle,
            sequence,
            if row.passed() { "PASS" } else { "FAIL" }
        );
        for c in row.checks.iter().filter(|c| !c.passed()) {
            println!("    {}: expected {}, got {}", c.field, c.expected, c.actual);
        }
    }
    Ok(all_pass)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Analyze { file, oracle, json } => analyze(&file, oracle, json),
        Command::Minimize { file, output } => minimize(&file, output.as_deref()),
        Command::Generate { file, terms, sep } => {
            let dfao = load(&file)?;
            if usize::try_from(terms).is_err() {
                bail!("{terms} terms do not fit in memory");
            }
            println!("{}", dfao.generate(terms).join(&sep));
            Ok(true)
        }
        Command::Dot { file, witness } => {
            let dfao = load(&file)?;
            let w = if witness {
                opacity::shortest_inhomogeneous_path(dfao.automaton())
            } else {
                None
            };
            print!("{}", dot::to_dot(&dfao, w.as_ref()));
            Ok(true)
        }
        Command::Corpus { json, export } => corpus_cmd(json, export.as_deref()),
        Command::Equiv { first, second } => {
            let (a, b) = (load(&first)?, load(&second)?);
            let same = a.are_equivalent(&b)?;
            println!("{}", if same { "equivalent" } else { "not equivalent" });
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
