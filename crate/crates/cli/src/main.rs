use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use persmod::constructions::{self, Side};
use persmod::io;
use persmod::{Barcode, Field, Presentation, PresentationMorphism, StreamState};

#[derive(Parser)]
#[command(
    name = "persmod",
    version,
    about = "Persistence modules as graded k[t]-module presentations"
)]
struct Cli {
    /// Coefficient field, `Q` or `Zp:<p>`. Defaults to the file's `field` line, else Q.
    #[arg(long, global = true)]
    field: Option<Field>,

    /// Drop zero-length bars from barcode output.
    #[arg(long, global = true)]
    drop_ephemeral: bool,

    /// Write output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Persistent homology of a filtered complex.
    Barcode { complex: PathBuf },
    /// Barcode of a presented module.
    PresentationBarcode { presentation: PathBuf },
    /// Smith normal form: prints the minimal presentation.
    Snf {
        presentation: PathBuf,
        /// Also print the change-of-basis matrices and the reduced matrix.
        #[arg(long)]
        dump: bool,
        /// Keep generators that die immediately.
        #[arg(long)]
        keep_ephemeral: bool,
    },
    /// Relative persistence of a complex with removal grades.
    Relative { complex: PathBuf },
    /// Feed simplices in file order to the streaming reduction.
    Stream {
        complex: PathBuf,
        /// Print each barcode change as it happens.
        #[arg(long)]
        emit_events: bool,
    },
    /// Apply a module construction and print the resulting presentation.
    Op {
        /// kernel, cokernel, image, pullback, pushout, tensor, tensor-k, dual, hom, wedge:<m>, sym:<m>, dsum
        op: String,
        inputs: Vec<PathBuf>,
        /// Which factor `t` acts on for tensor-k.
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        /// Replace the result by its minimal presentation.
        #[arg(long)]
        minimize: bool,
        /// With --minimize, keep generators that die immediately.
        #[arg(long)]
        keep_ephemeral: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn field_for(cli: &Cli, texts: &[&str]) -> Result<Field> {
    if let Some(f) = cli.field {
        return Ok(f);
    }
    let mut found: Option<Field> = None;
    for t in texts {
        if let Some(f) = io::declared_field(t)? {
            if found.is_some_and(|g| g != f) {
                bail!(persmod::Error::FieldMismatch(
                    found.unwrap().to_string(),
                    f.to_string()
                ));
            }
            found = Some(f);
        }
    }
    Ok(found.unwrap_or_default())
}

fn bars(cli: &Cli, b: Barcode) -> String {
    let b = if cli.drop_ephemeral {
        b.without_ephemeral()
    } else {
        b
    };
    io::write_barcode(&b)
}

fn load_presentation(cli: &Cli, path: &Path) -> Result<(Presentation, Field)> {
    let text = read(path)?;
    let field = field_for(cli, &[&text])?;
    let p = io::parse_presentation(&text, field).with_context(|| path.display().to_string())?;
    Ok((p, field))
}

fn load_morphism(cli: &Cli, path: &Path) -> Result<PresentationMorphism> {
    let text = read(path)?;
    let field = field_for(cli, &[&text])?;
    io::parse_morphism(&text, field).with_context(|| path.display().to_string())
}

fn dump(out: &mut String, title: &str, m: &persmod::GradedMatrix) {
    out.push_str(&format!(
        "# {title}: {} -> {}\n",
        m.source().labels().join(" "),
        m.target().labels().join(" ")
    ));
    for line in m.to_string().lines() {
        out.push_str(&format!("# {line}\n"));
    }
}

fn op(cli: &Cli, name: &str, inputs: &[PathBuf], side: SideArg) -> Result<Presentation> {
    let arity = |n: usize| -> Result<()> {
        if inputs.len() != n {
            bail!(persmod::Error::InvalidArgument(format!(
                "`{name}` takes {n} input file(s), got {}",
                inputs.len()
            )));
        }
        Ok(())
    };
    let pres2 = || -> Result<(Presentation, Presentation)> {
        arity(2)?;
        let (a, b) = (read(&inputs[0])?, read(&inputs[1])?);
        let field = field_for(cli, &[&a, &b])?;
        Ok((
            io::parse_presentation(&a, field)?,
            io::parse_presentation(&b, field)?,
        ))
    };
    let power = |prefix: &str| -> Result<usize> {
        name[prefix.len()..]
            .parse()
            .map_err(|_| persmod::Error::InvalidArgument(format!("bad power in `{name}`")).into())
    };
    Ok(match name {
        "kernel" | "cokernel" | "image" => {
            arity(1)?;
            let f = load_morphism(cli, &inputs[0])?;
            match name {
                "kernel" => constructions::kernel(&f)?.0,
                "cokernel" => constructions::cokernel(&f)?,
                _ => constructions::image(&f)?,
            }
        }
        "pullback" | "pushout" => {
            arity(2)?;
            let f = load_morphism(cli, &inputs[0])?;
            let g = load_morphism(cli, &inputs[1])?;
            if name == "pullback" {
                constructions::pullback(&f, &g)?.0
            } else {
                constructions::pushout(&f, &g)?
            }
        }
        "tensor" => {
            let (a, b) = pres2()?;
            constructions::tensor(&a, &b)?
        }
        "hom" => {
            let (a, b) = pres2()?;
            constructions::hom(&a, &b)?
        }
        "dsum" => {
            let (a, b) = pres2()?;
            constructions::direct_sum(&a, &b)?
        }
        "tensor-k" => {
            let (a, b) = pres2()?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            constructions::tensor_over_k(&a, &b, side)?
        }
        "dual" => {
            arity(1)?;
            constructions::dual(&load_presentation(cli, &inputs[0])?.0)
        }
        _ if name.starts_with("wedge:") => {
            arity(1)?;
            constructions::exterior_power(&load_presentation(cli, &inputs[0])?.0, power("wedge:")?)?
        }
        _ if name.starts_with("sym:") => {
            arity(1)?;
            constructions::symmetric_power(&load_presentation(cli, &inputs[0])?.0, power("sym:")?)?
        }
        _ => bail!(persmod::Error::InvalidArgument(format!(
            "unknown operation `{name}`"
        ))),
    })
}

fn run(cli: &Cli) -> Result<String> {
    let mut out = String::new();
    match &cli.command {
        Command::Barcode { complex } => {
            let list = io::parse_simplices(&read(complex)?)?;
            let field = field_for(cli, &[])?;
            out.push_str(&list.value_comments());
            out.push_str(&bars(
                cli,
                persmod::persistent_homology(&list.complex()?, field)?,
            ));
        }
        Command::PresentationBarcode { presentation } => {
            let (p, _) = load_presentation(cli, presentation)?;
            out.push_str(&bars(cli, p.barcode()));
        }
        Command::Snf {
            presentation,
            dump: show,
            keep_ephemeral,
        } => {
            let (p, _) = load_presentation(cli, presentation)?;
            if *show {
                let s = p.snf();
                dump(&mut out, "S", &s.row_change);
                dump(&mut out, "S^-1", &s.row_change_inv);
                dump(&mut out, "T", &s.col_change);
                dump(&mut out, "T^-1", &s.col_change_inv);
                dump(&mut out, "S*A*T", &s.reduced);
            }
            out.push_str(&io::write_presentation(&p.minimize(*keep_ephemeral)));
        }
        Command::Relative { complex } => {
            let list = io::parse_simplices(&read(complex)?)?;
            let field = field_for(cli, &[])?;
            out.push_str(&list.value_comments());
            out.push_str(&bars(
                cli,
                persmod::torsion::relative_persistence(&list.complex()?, field)?,
            ));
        }
        Command::Stream {
            complex,
            emit_events,
        } => {
            let list = io::parse_simplices(&read(complex)?)?;
            let field = field_for(cli, &[])?;
            out.push_str(&list.value_comments());
            let mut state = StreamState::new(field);
            for s in &list.simplices {
                if s.removal.is_some() {
                    bail!(persmod::Error::Stream(format!(
                        "[{s}] has a removal grade; streaming takes births only"
                    )));
                }
                let delta = state.add_simplex(s.vertices.clone(), s.birth)?;
                if *emit_events {
                    out.push_str(&format!("# add {} {}\n", s.label(), s.birth));
                    for i in &delta.removed {
                        out.push_str(&format!("# - {i}\n"));
                    }
                    for i in &delta.added {
                        out.push_str(&format!("# + {i}\n"));
                    }
                }
            }
            out.push_str(&bars(cli, state.current_barcode()));
        }
        Command::Op {
            op: name,
            inputs,
            side,
            minimize,
            keep_ephemeral,
        } => {
            let p = op(cli, name, inputs, *side)?;
            let p = if *minimize {
                p.minimize(*keep_ephemeral)
            } else {
                p
            };
            out.push_str(&io::write_presentation(&p));
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| match &cli.output {
        Some(path) => fs::write(path, out).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout()
            .write_all(out.as_bytes())
            .context("writing output"),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let parse = e.chain().any(|c| {
                c.downcast_ref::<persmod::Error>()
                    .is_some_and(persmod::Error::is_parse)
                    || c.is::<std::io::Error>()
            });
            ExitCode::from(if parse { 1 } else { 2 })
        }
    }
}
