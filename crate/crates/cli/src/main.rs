use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use opetope::io::{self, Loaded, Structure};
use opetope::render::{self, Format, Labels};
use opetope::{
    check_iota_corollaries, check_omega_laws, dualize_complex, dualize_complex_morphism,
    dualize_iota_epi, dualize_opetope, enumerate_complexes, epsilon_iso, eta_iso, fixtures,
    EnumSpec, Error, IotaReading, Mode, ValidationReport,
};

#[derive(Parser)]
#[command(
    name = "opetope",
    version,
    about = "Positive opetopes, cardinals and their dual complexes"
)]
struct Cli {
    /// Suppress output on success.
    #[arg(long, global = true)]
    quiet: bool,
    /// How diagnostics are printed on standard error.
    #[arg(long, global = true, value_enum, default_value_t = Diagnostics::Text)]
    diagnostics: Diagnostics,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Diagnostics {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tree,
    Thicket,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Ascii,
    Dot,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelStyle {
    Own,
    Gamma,
}

#[derive(Clone, Copy, ValueEnum)]
enum Iota {
    FaceWise,
    SetLevel,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and run its validator.
    Validate { file: PathBuf },
    /// Dualize a complex or an opetope/cardinal.
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dualize a ι-epi or a complex morphism.
    DualMap {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dualize twice and report the η or ε witness.
    Roundtrip { file: PathBuf },
    /// Validate a morphism document and report its structure.
    CheckMap { file: PathBuf },
    /// Stream every complex within the bounds, one JSON record per line.
    Enumerate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        max_nodes: usize,
        #[arg(long)]
        dim: Option<usize>,
        /// Emit the dual opetopes or cardinals instead.
        #[arg(long)]
        dualize: bool,
    },
    /// Draw consecutive constellations.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
        #[arg(long, value_enum, default_value_t = LabelStyle::Own)]
        labels: LabelStyle,
    },
    /// Check the ω-category laws on the cells of a cardinal.
    Omega {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_level: usize,
        #[arg(long, value_enum, default_value_t = Iota::FaceWise)]
        iota: Iota,
    },
    /// List or print the built-in fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    Dump { name: String },
}

/// Ends a command: 1 for a failed validation, 2 for unreadable input.
enum Failure {
    Invalid(ValidationReport),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Invalid(r) => Failure::Invalid(r),
            other => Failure::Input(other),
        }
    }
}

struct Ctx {
    quiet: bool,
    diagnostics: Diagnostics,
}

impl Ctx {
    fn out(&self, text: &str) {
        if !self.quiet {
            let mut lock = std::io::stdout().lock();
            let nl = if text.ends_with('\n') { "" } else { "\n" };
            // A closed pipe only means the reader has seen enough.
            let _ = write!(lock, "{text}{nl}");
        }
    }

    fn notes(&self, notes: &[String]) {
        if self.quiet {
            return;
        }
        for n in notes {
            match self.diagnostics {
                Diagnostics::Text => eprintln!("note: {n}"),
                Diagnostics::Json => eprintln!("{}", json!({ "note": n })),
            }
        }
    }

    fn report(&self, r: &ValidationReport) {
        match self.diagnostics {
            Diagnostics::Text => eprint!("{r}"),
            Diagnostics::Json => {
                eprintln!("{}", serde_json::to_string(r).expect("reports serialize"))
            }
        }
    }

    fn error(&self, e: &Error) {
        match self.diagnostics {
            Diagnostics::Text => eprintln!("error: {e}"),
            Diagnostics::Json => eprintln!("{}", json!({ "error": e.to_string() })),
        }
    }
}

/// Reads `path`, or a built-in fixture when it is spelled `fixture:NAME`.
fn load(path: &Path, ctx: &Ctx) -> Result<Loaded, Failure> {
    if let Some(name) = path.to_str().and_then(|p| p.strip_prefix("fixture:")) {
        let text = io::fixture_document(name)
            .ok_or_else(|| Error::UnknownElement(format!("fixture {name}")))?;
        return Ok(io::load(&text, None)?);
    }
    let l = io::load_file(path)?;
    ctx.notes(&l.notes);
    Ok(l)
}

fn emit(ctx: &Ctx, text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Input(Error::Io(format!("{}: {e}", p.display())))),
        None => {
            ctx.out(text);
            Ok(())
        }
    }
}

fn checked(r: ValidationReport) -> Result<ValidationReport, Failure> {
    if r.passed() {
        Ok(r)
    } else {
        Err(Failure::Invalid(r))
    }
}

fn run(cmd: Command, ctx: &Ctx) -> Result<(), Failure> {
    match cmd {
        Command::Validate { file } => {
            let l = load(&file, ctx)?;
            let r = checked(io::validate_structure(&l.structure))?;
            ctx.notes(&r.notes);
            ctx.out(&format!("valid {}", l.structure.describe()));
        }
        Command::Dual { file, output } => {
            let l = load(&file, ctx)?;
            let dual = match &l.structure {
                Structure::Complex(x) => Structure::Hypergraph(dualize_complex(x)?),
                Structure::Hypergraph(h) => Structure::Complex(dualize_opetope(h)?),
                _ => {
                    return Err(Failure::Input(Error::KindMismatch(
                        "`dual` takes a complex or a hypergraph".into(),
                    )))
                }
            };
            emit(ctx, &io::serialize(&dual), output.as_deref())?;
        }
        Command::DualMap { file, output } => {
            let l = load(&file, ctx)?;
            let dual = match &l.structure {
                Structure::Iota(m) => Structure::ComplexMorphism(dualize_iota_epi(m)?),
                Structure::ComplexMorphism(m) => Structure::Iota(dualize_complex_morphism(m)?),
                _ => {
                    return Err(Failure::Input(Error::KindMismatch(
                        "`dual-map` takes a ι-epi or a complex morphism".into(),
                    )))
                }
            };
            emit(ctx, &io::serialize(&dual), output.as_deref())?;
        }
        Command::Roundtrip { file } => {
            let l = load(&file, ctx)?;
            let w = match &l.structure {
                Structure::Complex(x) => eta_iso(x)?,
                Structure::Hypergraph(h) => epsilon_iso(h)?,
                _ => {
                    return Err(Failure::Input(Error::KindMismatch(
                        "`roundtrip` takes a complex or a hypergraph".into(),
                    )))
                }
            };
            let components: Vec<serde_json::Map<String, serde_json::Value>> = w
                .components
                .iter()
                .map(|c| c.iter().map(|(a, b)| (a.clone(), json!(b))).collect())
                .collect();
            let doc = json!({ "components": components, "witness": format!("{:?}", w.kind).to_lowercase() });
            ctx.out(&serde_json::to_string_pretty(&doc).expect("json"));
        }
        Command::CheckMap { file } => {
            let l = load(&file, ctx)?;
            let mut r = checked(io::validate_structure(&l.structure))?;
            if let Structure::Iota(m) = &l.structure {
                r.absorb("corollaries", check_iota_corollaries(m));
                r = checked(r)?;
            }
            ctx.notes(&r.notes);
            ctx.out(&format!("valid {}", l.structure.describe()));
        }
        Command::Enumerate {
            kind,
            max_nodes,
            dim,
            dualize,
        } => {
            let mode = match kind {
                Kind::Tree => Mode::Tree,
                Kind::Thicket => Mode::Thicket,
            };
            let mut spec = EnumSpec::new(mode, max_nodes);
            spec.dimension = dim;
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            for x in enumerate_complexes(&spec) {
                let s = if dualize {
                    Structure::Hypergraph(dualize_complex(&x)?)
                } else {
                    Structure::Complex(x)
                };
                if !ctx.quiet {
                    match writeln!(lock, "{}", io::serialize_compact(&s)) {
                        Ok(()) => {}
                        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => break,
                        Err(e) => return Err(Failure::Input(Error::Io(e.to_string()))),
                    }
                }
            }
        }
        Command::Render {
            file,
            format,
            labels,
        } => {
            let l = load(&file, ctx)?;
            let format = match format {
                RenderFormat::Ascii => Format::Ascii,
                RenderFormat::Dot => Format::Dot,
                RenderFormat::Svg => Format::Svg,
            };
            let labels = match labels {
                LabelStyle::Own => Labels::Own,
                LabelStyle::Gamma => Labels::Gamma,
            };
            let text = match &l.structure {
                Structure::Complex(x) => {
                    checked(io::validate_structure(&l.structure))?;
                    render::render_complex(x, format, labels)?
                }
                Structure::Hypergraph(h) => render::render_hypergraph(h, format, labels)?,
                _ => {
                    return Err(Failure::Input(Error::KindMismatch(
                        "`render` takes a complex or a hypergraph".into(),
                    )))
                }
            };
            ctx.out(&text);
        }
        Command::Omega {
            file,
            max_level,
            iota,
        } => {
            let l = load(&file, ctx)?;
            let Structure::Hypergraph(h) = &l.structure else {
                return Err(Failure::Input(Error::KindMismatch(
                    "`omega` takes a cardinal".into(),
                )));
            };
            let reading = match iota {
                Iota::FaceWise => IotaReading::FaceWise,
                Iota::SetLevel => IotaReading::SetLevel,
            };
            let r = checked(check_omega_laws(h, max_level, reading)?)?;
            ctx.notes(&r.notes);
            ctx.out(&format!("ω-laws hold up to level {max_level}"));
        }
        Command::Fixtures {
            action: FixtureAction::List,
        } => ctx.out(&fixtures::NAMES.join("\n")),
        Command::Fixtures {
            action: FixtureAction::Dump { name },
        } => {
            let doc = io::fixture_document(&name)
                .ok_or_else(|| Error::UnknownElement(format!("fixture {name}")))?;
            ctx.out(&doc);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        quiet: cli.quiet,
        diagnostics: cli.diagnostics,
    };
    match run(cli.command, &ctx) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(r)) => {
            ctx.report(&r);
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            ctx.error(&e);
            ExitCode::from(2)
        }
    }
}
