mod args;
mod json;
mod verify;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::Parser;
use ltl2nba::oracle::{lasso_count, Sampler};
use ltl2nba::{export_dot, export_hoa, parse, translate, Formula, Mode, TranslateError};

use args::{Args, Format};
use verify::GridConfig;

const EXIT_PARSE: u8 = 1;
const EXIT_MODE: u8 = 2;
const EXIT_VERIFY: u8 = 3;
// sysexits.h
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

/// Lassos checked per formula before `--verify` refuses to run.
const MAX_LASSOS: u128 = 4_000_000;

enum Failure {
    Parse(String),
    Mode(TranslateError),
    Verify(String),
    Usage(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Mode(_) => EXIT_MODE,
            Failure::Verify(_) => EXIT_VERIFY,
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Parse(msg)
                | Failure::Verify(msg)
                | Failure::Usage(msg)
                | Failure::Io(msg) => {
                    eprintln!("{msg}")
                }
                Failure::Mode(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn read_formula(args: &Args) -> Result<(String, Formula), Failure> {
    let (origin, text) = match (&args.formula, &args.file) {
        (Some(text), _) => (String::new(), text.clone()),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Io(format!("error: cannot read {}: {e}", path.display())))?;
            (format!("{}: ", path.display()), text.trim_end().to_string())
        }
        (None, None) => unreachable!("clap requires a formula source"),
    };
    let f = parse(&text).map_err(|e| Failure::Parse(format!("{origin}{}", e.render(&text))))?;
    let f = if args.no_occurrence_tags {
        f.without_occurrences()
    } else {
        f
    };
    Ok((text, f))
}

fn emit(args: &Args, out: &str) -> Result<(), Failure> {
    match &args.output {
        Some(path) => fs::write(path, out)
            .map_err(|e| Failure::Io(format!("error: cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Io(format!("error: {e}")))
        }
    }
}

fn run(args: &Args) -> Result<(), Failure> {
    if args.verify {
        return run_verify(args);
    }
    let (text, f) = read_formula(args)?;
    let t = translate(&f, args.mode.into(), &args.options()).map_err(Failure::Mode)?;
    let out = match args.format {
        Format::Hoa => export_hoa(&t.automaton, text.trim()),
        Format::Dot => export_dot(&t.automaton),
        Format::Stats => format!("{}\n", t.automaton.stats()),
        Format::Json => {
            let doc = json::automaton(&f, &t);
            serde_json::to_string_pretty(&doc).expect("automaton serializes") + "\n"
        }
    };
    emit(args, &out)
}

fn run_verify(args: &Args) -> Result<(), Failure> {
    let (formulas, ap): (Vec<Formula>, Vec<Arc<str>>) = match args.sample {
        Some(n) => {
            let mut s = Sampler::new(args.seed, args.ap as usize);
            let formulas: Vec<Formula> = (0..n)
                .map(|_| s.formula(args.max_size as usize))
                .map(|f| {
                    if args.no_occurrence_tags {
                        f.without_occurrences()
                    } else {
                        f
                    }
                })
                .collect();
            let ap = ltl2nba::oracle::proposition_names(args.ap as usize)
                .into_iter()
                .map(Arc::from)
                .collect();
            (formulas, ap)
        }
        None => {
            let (_, f) = read_formula(args)?;
            let ap = f.propositions();
            (vec![f], ap)
        }
    };
    let grid = GridConfig {
        max_stem: args.max_stem,
        max_loop: args.max_loop as usize,
    };
    let lassos = lasso_count(ap.len(), grid.max_stem, grid.max_loop);
    if lassos > MAX_LASSOS {
        return Err(Failure::Usage(format!(
            "error: {lassos} lassos per formula over {} propositions; lower --max-stem or --max-loop",
            ap.len()
        )));
    }
    let mode: Mode = args.mode.into();
    if args.sample.is_none() {
        // a single formula must fit the requested construction
        translate(&formulas[0], mode, &args.options()).map_err(Failure::Mode)?;
    }
    let report = verify::verify(&formulas, &ap, mode, &args.options(), grid);
    let out = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    emit(args, &out)?;
    if report.summary.failed > 0 {
        return Err(Failure::Verify(format!(
            "verification failed for {} of {} formulas",
            report.summary.failed, report.summary.formulas
        )));
    }
    Ok(())
}
