//! `oag`: check `.oag` scripts, derive collapse witnesses, compute classes
//! over `Q` and sample-check piecewise bijections.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use oag_core::dsl::{self, DslError, Env};
use oag_core::kring::{class_of, class_of_sum, RingClass};
use oag_core::scissors::{check_pigeonhole, derive_witness, round_trip_check, Congruence, Provenance, WITNESS_TARGET};
use oag_core::sets::SemiSet;
use oag_core::{Error, GroupSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use report::{ClassEntry, CheckEntry, Component, Report, Sampling, WitnessEntry};

#[derive(Parser)]
#[command(name = "oag", version, about = "Scissors congruences over ordered abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run every `check` statement of a script.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Derive and verify a set X with X + pt congruent to X.
    DeriveWitness {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the witness as a re-checkable script.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Class in Z[S]/(S^2 + S) of a set literal or of every set in a script (group Q).
    Class {
        /// A script path, or a set literal such as `{ (x) : 0 < x, x < 1 }`.
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verify a map of a script and check sampled round trips exactly.
    SampleVerify {
        file: PathBuf,
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Aborts with exit status 2.
struct Fatal(String);

impl From<DslError> for Fatal {
    fn from(e: DslError) -> Fatal {
        Fatal(e.to_string())
    }
}

impl From<Error> for Fatal {
    fn from(e: Error) -> Fatal {
        Fatal(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    std::fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn parse_file(path: &Path) -> Result<dsl::Script, Fatal> {
    let text = read(path)?;
    dsl::parse(&text).map_err(|e| Fatal(format!("{}:{e}", path.display())))
}

fn shape(set: &SemiSet) -> String {
    let names: Vec<String> = match set.dim() {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        n => (1..=n).map(|i| format!("x{i}")).collect(),
    };
    if set.dim() == 0 {
        return "pt".into();
    }
    set.cells()
        .iter()
        .map(|c| format!("{{ ({}) : {} }}", names.join(", "), c.render(&names)))
        .collect::<Vec<_>>()
        .join(" | ")
}

fn cmd_check(file: &Path) -> Result<Report, Fatal> {
    let script = parse_file(file)?;
    let mut report = Report::new(format!("check {}", file.display()), script.group.to_string());
    for o in dsl::run(&script)? {
        report.push(o.statement, o.passed, o.detail, o.witness);
    }
    Ok(report)
}

fn cmd_derive_witness(group: &str, samples: usize, seed: u64, emit: Option<&Path>) -> Result<Report, Fatal> {
    let g = dsl::parse_group(group).map_err(|e| Fatal(format!("group `{group}`: {e}")))?;
    let mut command = format!("derive-witness --group {g} --samples {samples} --seed {seed}");
    if let Some(p) = emit {
        command.push_str(&format!(" --emit {}", p.display()));
    }
    let mut report = Report::new(command, g.to_string());
    let w = derive_witness(&g)?;
    let cert = w.congruence.certificate();
    let detail = match cert.failure() {
        None => format!("{} pieces, {} checks passed", w.congruence.map().pieces().len(), cert.checks().len()),
        Some(f) => f.to_string(),
    };
    report.push("bijection X + pt -> X", cert.passed(), detail, None);
    report.push(
        "pigeonhole",
        check_pigeonhole(&g, &w.x, &w.congruence),
        "domain is X + pt, codomain is X",
        None,
    );
    if let Some((a, b)) = w.multiplicities {
        let detail = if w.meets_target() {
            format!("achieved ({a}, {b}) equals target ({}, {})", WITNESS_TARGET.0, WITNESS_TARGET.1)
        } else {
            format!("achieved ({a}, {b}) differs from target ({}, {})", WITNESS_TARGET.0, WITNESS_TARGET.1)
        };
        report.push("multiplicities", w.meets_target(), detail, None);
    }
    report.witness = Some(WitnessEntry {
        components: w
            .x
            .components()
            .iter()
            .map(|(l, s)| Component {
                label: l.clone(),
                shape: shape(s),
            })
            .collect(),
        multiplicities: w.multiplicities.map_or_else(Vec::new, |(a, b)| vec![a, b]),
        target: vec![WITNESS_TARGET.0, WITNESS_TARGET.1],
        pieces: w.congruence.map().pieces().len(),
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rt = round_trip_check(&w.congruence, samples, &mut rng)?;
    report.sampling = Some(Sampling {
        seed,
        count: rt.count,
        failures: rt.failures,
    });
    if let Some(path) = emit {
        let text = dsl::print(&dsl::emit_witness(&w));
        std::fs::write(path, text).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}

fn class_entry(name: &str, class: RingClass) -> CheckEntry {
    CheckEntry {
        name: format!("class {name}"),
        passed: true,
        detail: format!("({}, {}), euler_char {}", class.s, class.c, class.euler_char()),
        witness: None,
        class: Some(ClassEntry {
            s_coeff: class.s,
            constant: class.c,
            euler_char: class.euler_char(),
        }),
    }
}

fn cmd_class(input: &str) -> Result<Report, Fatal> {
    let path = Path::new(input);
    if !path.is_file() {
        let set = dsl::parse_set_literal(input).map_err(|e| Fatal(format!("set literal: {e}")))?;
        let mut report = Report::new(format!("class {input}"), GroupSpec::Rationals.to_string());
        report.checks.push(class_entry(input.trim(), class_of(&GroupSpec::Rationals, &set)?));
        return Ok(report);
    }
    let script = parse_file(path)?;
    let g = script.group.clone();
    if g != GroupSpec::Rationals {
        return Err(Fatal(format!("class needs the group Q, script declares {g}")));
    }
    let env = Env::build(&script)?;
    let mut report = Report::new(format!("class {input}"), g.to_string());
    for st in &script.statements {
        match st {
            dsl::Stmt::Set(d) => report.checks.push(class_entry(&d.name, class_of(&g, &env.sets[&d.name])?)),
            dsl::Stmt::Sum(d) => report
                .checks
                .push(class_entry(&d.name, class_of_sum(&g, &env.sums[&d.name])?)),
            _ => {}
        }
    }
    Ok(report)
}

fn cmd_sample_verify(file: &Path, map: &str, samples: usize, seed: u64) -> Result<Report, Fatal> {
    let script = parse_file(file)?;
    let g = script.group.clone();
    let env = Env::build(&script)?;
    let f = env
        .maps
        .get(map)
        .ok_or_else(|| Fatal(format!("no map named `{map}` in {}", file.display())))?
        .clone();
    let mut report = Report::new(
        format!("sample-verify {} --map {map} --samples {samples} --seed {seed}", file.display()),
        g.to_string(),
    );
    let c = match Congruence::verified(&g, f.clone(), Provenance::Pieces(f)) {
        Ok(c) => c,
        Err(Error::UnsupportedDiscreteCell) => return Err(Fatal(Error::UnsupportedDiscreteCell.to_string())),
        Err(e) => {
            report.push(format!("bijection {map}"), false, e.to_string(), None);
            return Ok(report);
        }
    };
    report.push(format!("bijection {map}"), true, format!("{} pieces", c.map().pieces().len()), None);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rt = round_trip_check(&c, samples, &mut rng)?;
    report.sampling = Some(Sampling {
        seed,
        count: rt.count,
        failures: rt.failures,
    });
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format) = match &cli.command {
        Command::Check { file, format } => (cmd_check(file), *format),
        Command::DeriveWitness {
            group,
            samples,
            seed,
            emit,
            format,
        } => (cmd_derive_witness(group, *samples, *seed, emit.as_deref()), *format),
        Command::Class { input, format } => (cmd_class(input), *format),
        Command::SampleVerify {
            file,
            map,
            samples,
            seed,
            format,
        } => (cmd_sample_verify(file, map, *samples, *seed), *format),
    };
    match result {
        Ok(mut report) => {
            let code = report.finish();
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            ExitCode::from(code)
        }
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
