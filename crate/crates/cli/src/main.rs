mod config;

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sorani_core::error::read_utf8;
use sorani_core::eval::{accuracy, alpha_sweep, hit_at_k, load_gold};
use sorani_core::lexicon::{load_templates, AffixInventory, Lexicon};
use sorani_core::ngram::{read_corpus, tokenize};
use sorani_core::{
    build_index, BuildParams, Checker, ConfusionGroups, EditCost, Error, Lemmatizer, Mode,
    NGramIndex, NormalizationTable, Params, Resources,
};

use config::{parse_list, Config, DataFiles};

#[derive(Parser)]
#[command(
    name = "sorani",
    version,
    about = "Lemmatizer and spell checker for Sorani Kurdish"
)]
struct Cli {
    /// key = value config file; without one the built-in data is used
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an n-gram model from a corpus directory or file
    Build {
        corpus: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Gram sizes, comma separated
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        min_freq: Option<u64>,
    },
    /// Print the lemma of each word
    Lemmatize {
        #[command(flatten)]
        input: Input,
        /// Also print the noun analysis tree
        #[arg(long)]
        tree: bool,
        #[arg(long)]
        json: bool,
    },
    /// Report whether each word is flagged and its culprit gram
    Check {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        spell: SpellArgs,
    },
    /// Print ranked suggestions for each word
    Correct {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        spell: SpellArgs,
    },
    /// Score a gold file
    Eval {
        gold: PathBuf,
        #[arg(long, value_enum, default_value_t = Task::Correct)]
        task: Task,
        /// Comma separated alphas for a sweep
        #[arg(long)]
        sweep_alpha: Option<String>,
        /// Prediction counts for hit@k, comma separated
        #[arg(long, default_value = "1,2,5,10")]
        ks: String,
        /// Write the per-item report as TSV
        #[arg(long)]
        tsv: Option<PathBuf>,
        #[command(flatten)]
        spell: SpellArgs,
    },
    /// Check every data file and list all violations
    Validate,
}

#[derive(Args)]
struct Input {
    /// Words to process; read from --input or stdin when empty
    words: Vec<String>,
    #[arg(short, long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct SpellArgs {
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    topk: Option<usize>,
    #[arg(long)]
    mode: Option<String>,
    /// Restrict the model to these gram sizes, comma separated
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    passes: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Task {
    Lemma,
    Correct,
}

/// Usage and validation problems exit 1, file problems exit 2.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::Io { .. } | Error::InvalidUtf8 { .. } => 2,
                _ => 1,
            };
        }
        if cause.downcast_ref::<io::Error>().is_some() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}

/// The error chain, skipping causes already spelled out by their parent.
fn describe(err: &anyhow::Error) -> String {
    let mut parts: Vec<String> = Vec::new();
    for cause in err.chain() {
        let text = cause.to_string();
        if !parts.last().is_some_and(|p| p.contains(&text)) {
            parts.push(text);
        }
    }
    parts.join(": ")
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match cli.command {
        Command::Validate => return validate(&cfg, &mut out),
        Command::Build {
            corpus,
            output,
            n,
            min_freq,
        } => build(&cfg, &corpus, output, n, min_freq, &mut out)?,
        Command::Lemmatize { input, tree, json } => {
            let data = load_data(&cfg)?;
            let lz = data.lemmatizer.context("lemmatize needs a lexicon")?;
            for word in read_items(&input, &data.table)? {
                lemmatize_one(&lz, &word, tree, json, &mut out)?;
            }
        }
        Command::Check { input, spell } => {
            let (checker, table) = checker(&cfg, &spell)?;
            for word in read_words(&input, &table)? {
                let r = checker.detect(&word);
                if spell.json {
                    writeln!(out, "{}", serde_json::to_string(&r)?)?;
                } else {
                    let culprit = r.culprit.as_ref().map(|c| c.gram.as_str()).unwrap_or("");
                    writeln!(out, "{word}\t{}\t{culprit}", r.flagged)?;
                }
            }
        }
        Command::Correct { input, spell } => {
            let (checker, table) = checker(&cfg, &spell)?;
            let words = read_words(&input, &table)?;
            let all = checker.correct_batch(&words);
            for (word, suggestions) in words.iter().zip(all) {
                let flagged = checker.detect(word).flagged;
                if spell.json {
                    let c = if flagged {
                        checker.candidates(word)
                    } else {
                        Vec::new()
                    };
                    let doc = serde_json::json!({
                        "word": word, "flagged": flagged, "suggestions": suggestions, "candidates": c,
                    });
                    writeln!(out, "{doc}")?;
                } else {
                    writeln!(out, "{word}\t{flagged}\t{}", suggestions.join("|"))?;
                }
            }
        }
        Command::Eval {
            gold,
            task,
            sweep_alpha,
            ks,
            tsv,
            spell,
        } => {
            eval(&cfg, &gold, task, sweep_alpha, &ks, tsv, &spell, &mut out)?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

struct Data {
    table: NormalizationTable,
    groups: ConfusionGroups,
    lemmatizer: Option<Arc<Lemmatizer>>,
}

fn load_data(cfg: &Config) -> Result<Data> {
    let Some(files) = &cfg.data else {
        let r = Resources::starter();
        return Ok(Data {
            table: r.table,
            groups: (*r.groups).clone(),
            lemmatizer: Some(r.lemmatizer),
        });
    };
    cfg.check_files()?;
    let table = match &files.orthography {
        Some(p) => NormalizationTable::load(p)?,
        None => NormalizationTable::identity(),
    };
    let groups = match &files.confusion {
        Some(p) => ConfusionGroups::load(p, &table)?,
        None => ConfusionGroups::empty(),
    };
    let lemmatizer = match &files.lexicon {
        None => None,
        Some(p) => {
            let mut lex = Lexicon::load(p, &table)?;
            if let Some(e) = &files.exceptions {
                lex = lex.with_exceptions_file(e, &table)?;
            }
            let affixes = match &files.affixes {
                Some(p) => AffixInventory::load(p, &table)?,
                None => AffixInventory::new(Vec::new()),
            };
            let templates = match &files.templates {
                Some(p) => load_templates(p, &table)?,
                None => Vec::new(),
            };
            Some(Arc::new(Lemmatizer::new(lex, affixes, templates)))
        }
    };
    Ok(Data {
        table,
        groups,
        lemmatizer,
    })
}

fn read_text(input: &Input) -> Result<String> {
    if !input.words.is_empty() {
        return Ok(input.words.join("\n"));
    }
    if let Some(p) = &input.input {
        return Ok(read_utf8(p)?);
    }
    let mut bytes = Vec::new();
    io::stdin().lock().read_to_end(&mut bytes)?;
    Ok(String::from_utf8(bytes).map_err(|_| Error::InvalidUtf8 {
        path: "<stdin>".into(),
    })?)
}

/// Running text split into normalized tokens.
fn read_words(input: &Input, table: &NormalizationTable) -> Result<Vec<String>> {
    let text = table.normalize(&read_text(input)?);
    Ok(tokenize(&text).map(str::to_string).collect())
}

/// One item per argument or line, so compound verbs keep their space.
fn read_items(input: &Input, table: &NormalizationTable) -> Result<Vec<String>> {
    let text = read_text(input)?;
    Ok(text
        .lines()
        .map(|l| table.normalize(l.trim()))
        .filter(|l| !l.is_empty())
        .collect())
}

fn lemmatize_one(
    lz: &Lemmatizer,
    word: &str,
    tree: bool,
    json: bool,
    out: &mut impl Write,
) -> Result<()> {
    let lemma = lz.lemmatize(word);
    if json {
        let doc = serde_json::json!({
            "word": word,
            "lemma": lemma,
            "tree": if tree { Some(lz.noun(word).analysis) } else { None },
        });
        writeln!(out, "{doc}")?;
        return Ok(());
    }
    match &lemma.verb {
        Some(f) => writeln!(out, "{word}\t{}\t{f}", lemma.root)?,
        None => writeln!(out, "{word}\t{}", lemma.root)?,
    }
    if tree {
        if let Some(t) = lz.noun(word).analysis {
            write!(out, "{}", t.render())?;
        }
    }
    Ok(())
}

fn build(
    cfg: &Config,
    corpus: &Path,
    output: Option<PathBuf>,
    n: Option<String>,
    min_freq: Option<u64>,
    out: &mut impl Write,
) -> Result<()> {
    let output = output
        .or_else(|| cfg.model.clone())
        .context("no output path: pass --output or set model in the config")?;
    let n_values = match n {
        Some(s) => parse_list(&s)?,
        None => cfg.n_values.iter().copied().collect(),
    };
    let params = BuildParams::new(n_values, min_freq.unwrap_or(cfg.min_word_freq))?;
    let data = load_data(cfg)?;
    let docs = read_corpus(corpus)?;
    if docs.is_empty() {
        eprintln!(
            "warning: {} holds no documents; writing an empty model",
            corpus.display()
        );
    }
    let index = build_index(docs.into_iter().map(Ok), &params, &data.table)?;
    index.save(&output)?;
    let s = index.stats();
    writeln!(out, "model\t{}", output.display())?;
    writeln!(out, "tokens\t{}", s.tokens)?;
    writeln!(out, "distinct_words\t{}", s.distinct_words)?;
    writeln!(out, "dropped_words\t{}", s.dropped_words)?;
    for (n, count) in &s.grams_per_n {
        writeln!(out, "grams_{n}\t{count}")?;
    }
    Ok(())
}

fn checker(cfg: &Config, spell: &SpellArgs) -> Result<(Checker, NormalizationTable)> {
    let data = load_data(cfg)?;
    let model = spell
        .model
        .clone()
        .or_else(|| cfg.model.clone())
        .context("no model: pass --model or set model in the config")?;
    let mut index = NGramIndex::load(&model)?;
    if index.orthography_checksum() != &data.table.checksum() {
        eprintln!("warning: model was built with a different orthography table");
    }
    if let Some(n) = &spell.n {
        let ns: Vec<usize> = parse_list(n)?;
        if let Some(bad) = ns.iter().find(|n| !index.n_values().contains(n)) {
            bail!("model has no {bad}-grams");
        }
        index = index.with_n_values(ns);
    }
    let mode = match &spell.mode {
        Some(m) => Mode::parse(m).with_context(|| format!("unknown mode {m:?}"))?,
        None => cfg.mode,
    };
    let lemmatizer = match mode {
        Mode::NgramOnly => None,
        Mode::WithLexicon => Some(
            data.lemmatizer
                .clone()
                .context("with_lexicon mode needs a lexicon file")?,
        ),
    };
    let max_distance = EditCost::from_halves((cfg.max_distance * 2.0).round() as u32);
    let params = Params::new(
        spell.alpha.unwrap_or(cfg.alpha),
        max_distance,
        spell.topk.unwrap_or(cfg.top_k),
    )?;
    let checker = Checker::new(
        Arc::new(index),
        Arc::new(data.groups),
        params,
        mode,
        lemmatizer,
    )?
    .with_passes(spell.passes.unwrap_or(cfg.passes));
    Ok((checker, data.table))
}

#[allow(clippy::too_many_arguments)]
fn eval(
    cfg: &Config,
    gold: &Path,
    task: Task,
    sweep_alpha: Option<String>,
    ks: &str,
    tsv: Option<PathBuf>,
    spell: &SpellArgs,
    out: &mut impl Write,
) -> Result<()> {
    let ks: Vec<usize> = parse_list(ks)?;
    if ks.is_empty() || ks.contains(&0) {
        bail!("--ks needs positive values");
    }
    let report = match task {
        Task::Lemma => {
            let data = load_data(cfg)?;
            let lz = data
                .lemmatizer
                .context("lemma evaluation needs a lexicon")?;
            let gold = load_gold(gold, &data.table)?;
            accuracy(&gold, |w| lz.lemmatize(w).root)?
        }
        Task::Correct => {
            let (checker, table) = checker(cfg, spell)?;
            let gold = load_gold(gold, &table)?;
            if let Some(alphas) = sweep_alpha {
                let alphas: Vec<f64> = parse_list(&alphas)?;
                let label = format!(
                    "{}-gram",
                    checker
                        .index()
                        .n_values()
                        .iter()
                        .map(|n| n.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                let m = alpha_sweep(&gold, &checker, &alphas, &ks)?;
                write!(out, "{}", m.to_tsv(&label))?;
                return Ok(());
            }
            let r = accuracy(&gold, |w| {
                checker.correct(w).into_iter().next().unwrap_or_default()
            })?;
            for &k in &ks {
                let h = hit_at_k(&gold, |w| checker.correct(w), k)?;
                writeln!(out, "hit@{k}\t{:.4}", h.accuracy)?;
            }
            r
        }
    };
    write!(out, "{}", report.render_table())?;
    if let Some(p) = tsv {
        std::fs::write(&p, report.to_tsv()).map_err(|e| Error::io(&p, e))?;
    }
    Ok(())
}

fn validate(cfg: &Config, out: &mut impl Write) -> Result<ExitCode> {
    let files = cfg.data.clone().unwrap_or_else(|| {
        DataFiles::from(sorani_core::DataPaths::in_dir(Resources::starter_dir()))
    });
    let mut problems = Vec::new();
    let mut note = |what: &str, r: std::result::Result<(), Error>| {
        if let Err(e) = r {
            problems.push(format!("{what}: {e}"));
        }
    };
    let table = match &files.orthography {
        Some(p) => match NormalizationTable::load(p) {
            Ok(t) => t,
            Err(e) => {
                note("orthography", Err(e));
                NormalizationTable::identity()
            }
        },
        None => NormalizationTable::identity(),
    };
    if let Some(p) = &files.confusion {
        note(
            "confusion groups",
            ConfusionGroups::load(p, &table).map(drop),
        );
    }
    if let Some(p) = &files.affixes {
        note("affixes", AffixInventory::load(p, &table).map(drop));
    }
    if let Some(p) = &files.lexicon {
        note("lexicon", Lexicon::load(p, &table).map(drop));
    }
    if let Some(p) = &files.exceptions {
        note("exceptions", read_utf8(p).map(drop));
    }
    if let Some(p) = &files.templates {
        note("templates", load_templates(p, &table).map(drop));
    }
    if problems.is_empty() {
        writeln!(out, "ok")?;
        out.flush()?;
        return Ok(ExitCode::SUCCESS);
    }
    for p in &problems {
        writeln!(out, "{p}")?;
    }
    out.flush()?;
    Ok(ExitCode::from(1))
}
