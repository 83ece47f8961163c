//! Command-line front end for the hexameter scansion engine.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use hexameter::config::load_config;
use hexameter::metrics::{compare_annotations, evaluate_against_gold, LabeledVerse};
use hexameter::pipeline::{
    parse_input, parse_records, record_to_structured, record_to_tsv, scan_corpus, Engine,
    VerseStatus,
};
use hexameter::syllable::syllabify_with;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Structured,
}

#[derive(Parser)]
#[command(name = "hexameter", version, about = "Scansion of Classical Greek hexameter")]
struct Cli {
    /// Configuration file (key = value lines); defaults apply when absent.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan verses (one per line, optional leading id<TAB>) into annotations.
    Scan {
        /// Input file; '-' or absent reads stdin.
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
        /// Print summary statistics to stderr.
        #[arg(long)]
        stats: bool,
        /// Print the local-search state trace per verse to stderr.
        #[arg(long)]
        trace: bool,
        /// Forbid corrections of determined marks in global analysis.
        #[arg(long)]
        strict: bool,
        /// Worker threads; output order is input order regardless.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Split verses into syllables: verse TAB pipe-separated syllables.
    Syllabify {
        /// Input file; '-' or absent reads stdin.
        input: Option<PathBuf>,
    },
    /// Score a scan against a gold annotation (both in scan TSV format).
    Evaluate {
        predictions: PathBuf,
        gold: PathBuf,
    },
    /// Quantify agreement between two annotations of the same verses.
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
    },
    /// Print the global-analysis transducer as a textual edge list.
    DumpFst,
}

fn open_input(path: Option<&Path>) -> Result<Box<dyn BufRead>> {
    match path {
        Some(p) if p != Path::new("-") => {
            let file = File::open(p).with_context(|| format!("cannot open {}", p.display()))?;
            Ok(Box::new(BufReader::new(file)))
        }
        _ => Ok(Box::new(BufReader::new(io::stdin()))),
    }
}

fn read_records_file(path: &Path) -> Result<Vec<hexameter::VerseRecord>> {
    let mut text = String::new();
    File::open(path)
        .with_context(|| format!("cannot open {}", path.display()))?
        .read_to_string(&mut text)?;
    parse_records(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn label_or(label: &Option<String>, fallback: &str) -> String {
    label.clone().unwrap_or_else(|| fallback.to_string())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut cfg = load_config(cli.config.as_deref())?;

    match cli.command {
        Command::Scan {
            input,
            format,
            stats,
            trace,
            strict,
            workers,
        } => {
            if strict {
                cfg.weights.allow_corrections = false;
            }
            let engine = Engine::new(cfg)?;
            let stdout = io::stdout();
            let mut out = stdout.lock();
            let records = if trace {
                let lines = parse_input(open_input(input.as_deref())?)?;
                let mut records = Vec::with_capacity(lines.len());
                for (id, raw) in &lines {
                    let (record, states) = engine.scan_verse_traced(id, raw);
                    let rendered: Vec<String> = states.iter().map(|s| s.to_string()).collect();
                    eprintln!("{id}\t{}", rendered.join(" > "));
                    records.push(record);
                }
                records
            } else {
                let (records, _) = scan_corpus(&engine, open_input(input.as_deref())?, workers)?;
                records
            };
            match format {
                Format::Tsv => {
                    writeln!(out, "id\tstatus\tvariant\tmarks\tsyllables\tstage\tnotes")?;
                    for r in &records {
                        writeln!(out, "{}", record_to_tsv(r))?;
                    }
                }
                Format::Structured => {
                    let blocks: Vec<String> = records.iter().map(record_to_structured).collect();
                    write!(out, "{}", blocks.join("\n"))?;
                }
            }
            if stats {
                let summary = hexameter::pipeline::CorpusSummary::from_records(&records);
                eprint!("{}", summary.render());
            }
            let unprocessable = records
                .iter()
                .any(|r| r.status == VerseStatus::Unprocessable);
            Ok(if unprocessable {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }

        Command::Syllabify { input } => {
            let engine = Engine::new(cfg)?;
            let lines = parse_input(open_input(input.as_deref())?)?;
            let stdout = io::stdout();
            let mut out = stdout.lock();
            let mut failed = false;
            for (_, raw) in &lines {
                match hexameter::normalize(raw)
                    .and_then(|v| syllabify_with(&v, &engine.config().diphthongs))
                {
                    Ok(syllables) => {
                        let texts: Vec<String> = syllables.iter().map(|s| s.text()).collect();
                        writeln!(out, "{raw}\t{}", texts.join("|"))?;
                    }
                    Err(e) => {
                        failed = true;
                        writeln!(out, "{raw}\tERROR: {e}")?;
                    }
                }
            }
            Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }

        Command::Evaluate { predictions, gold } => {
            let pred = read_records_file(&predictions)?;
            let gold = read_records_file(&gold)?;
            let report = evaluate_against_gold(&pred, &gold);
            println!("verses evaluated: {}", gold.len());
            println!(
                "true positives: {}  false positives: {}  false negatives: {}",
                report.counts.true_positives,
                report.counts.false_positives,
                report.counts.false_negatives
            );
            match &report.prf {
                Some(prf) => {
                    println!("precision: {:.4}", prf.precision);
                    println!("recall: {:.4}", prf.recall);
                    match prf.f_measure {
                        Some(f) => println!("f-measure: {f:.4}"),
                        None => println!("f-measure: undefined"),
                    }
                }
                None => println!("precision/recall: undefined"),
            }
            println!("verse accuracy: {:.4}", report.verse_accuracy);
            println!("syllable accuracy: {:.4}", report.syllable_accuracy);
            for d in &report.diffs {
                println!(
                    "diff\t{}\tpredicted={}\tgold={}",
                    d.id,
                    label_or(&d.a, "(none)"),
                    label_or(&d.b, "(none)")
                );
            }
            // machine-readable summary
            println!("# summary");
            println!("tp={}", report.counts.true_positives);
            println!("fp={}", report.counts.false_positives);
            println!("fn={}", report.counts.false_negatives);
            if let Some(prf) = &report.prf {
                println!("precision={}", prf.precision);
                println!("recall={}", prf.recall);
                if let Some(f) = prf.f_measure {
                    println!("f_measure={f}");
                }
            }
            println!("verse_accuracy={}", report.verse_accuracy);
            println!("syllable_accuracy={}", report.syllable_accuracy);
            Ok(ExitCode::SUCCESS)
        }

        Command::Compare { file_a, file_b } => {
            let a: Vec<LabeledVerse> = read_records_file(&file_a)?
                .iter()
                .map(LabeledVerse::from_record)
                .collect();
            let b: Vec<LabeledVerse> = read_records_file(&file_b)?
                .iter()
                .map(LabeledVerse::from_record)
                .collect();
            let report = compare_annotations(&a, &b, cfg.include_rejections_in_agreement);
            println!("paired verses: {}", report.table.pairs.len());
            println!("observed agreement: {:.4}", report.table.observed_agreement());
            println!("expected agreement: {:.4}", report.table.expected_agreement());
            match report.kappa {
                Some(k) => println!("kappa: {k:.4}"),
                None => println!("kappa: undefined"),
            }
            if !report.only_in_a.is_empty() || !report.only_in_b.is_empty() {
                eprintln!(
                    "warning: {} verse(s) only in {}, {} only in {}",
                    report.only_in_a.len(),
                    file_a.display(),
                    report.only_in_b.len(),
                    file_b.display()
                );
            }
            for d in &report.diffs {
                println!(
                    "diff\t{}\ta={}\tb={}",
                    d.id,
                    label_or(&d.a, "rejected"),
                    label_or(&d.b, "rejected")
                );
            }
            println!("# summary");
            println!("pairs={}", report.table.pairs.len());
            println!("observed={}", report.table.observed_agreement());
            println!("expected={}", report.table.expected_agreement());
            if let Some(k) = report.kappa {
                println!("kappa={k}");
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::DumpFst => {
            let engine = Engine::new(cfg)?;
            print!("{}", engine.transducer().dump_text());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
