use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use homorder::enumeration::DEFAULT_SEED;
use homorder::families::FamilyParams;
use homorder::{
    are_isomorphic, canonical_antichain, classify, enumerate_structures, find_antichain,
    find_epimorphism, homomorphic_images, ideal_members, verify_antichain, verify_proposition,
    write_dot, write_text, Family, Kind, Mapping, Model, Outcome, PropositionTag, Shape, Strength,
    Structure, StructureClass, TypedStructure, Verdict,
};

#[derive(Parser)]
#[command(name = "homorder", version, about = "Homomorphic image orders on graphs, digraphs and tournaments")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Ordering to use.
    #[arg(long, global = true, default_value = "standard", value_parser = parse_from_str::<Strength>)]
    strength: Strength,
    /// Ambient class (defaults to the class of the input file).
    #[arg(long, global = true, value_parser = parse_from_str::<StructureClass>)]
    class: Option<StructureClass>,
    /// Emit structures as DOT instead of the text format.
    #[arg(long, global = true)]
    dot: bool,
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Size bound for enumeration-backed commands.
    #[arg(long, global = true)]
    bound: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Record,
}

#[derive(Subcommand)]
enum Command {
    /// Compare two structures; exit 0 if comparable, 1 if incomparable.
    Compare { a: PathBuf, b: PathBuf },
    /// Classify the avoidance class of an obstruction.
    Classify {
        obstruction: PathBuf,
        /// Append this many verified antichain members.
        #[arg(long, default_value_t = 0)]
        witness: usize,
    },
    /// Build a member of a named family.
    Family {
        #[arg(value_parser = parse_from_str::<Family>)]
        name: Family,
        n: usize,
        k: Option<usize>,
        #[arg(long, default_value = "reflexive", value_parser = parse_from_str::<Model>)]
        model: Model,
    },
    /// List all structures of a kind on `n` vertices, up to isomorphism.
    Enumerate {
        n: usize,
        #[arg(long, value_parser = parse_from_str::<Shape>)]
        shape: Option<Shape>,
        #[arg(long, value_parser = parse_from_str::<Model>)]
        model: Option<Model>,
    },
    /// List the enumerated structures avoiding an obstruction (sizes up to --bound).
    Ideal { obstruction: PathBuf },
    /// Check that the given structures form an antichain, or search one of --size members.
    Antichain {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        size: Option<usize>,
    },
    /// Run an exhaustive check; exit 0 on pass, 1 on fail.
    Verify { tag: String },
    /// List the homomorphic images of a structure inside its class.
    Images { file: PathBuf },
}

fn parse_from_str<T: std::str::FromStr<Err = String>>(s: &str) -> Result<T, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_structure(path: &Path) -> Result<TypedStructure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    TypedStructure::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn class_of(kind: Kind) -> Result<StructureClass> {
    StructureClass::ALL
        .into_iter()
        .find(|c| c.kind() == kind)
        .with_context(|| format!("no structure class for {kind}"))
}

struct Out<'a> {
    g: &'a Global,
}

impl Out<'_> {
    fn structure(&self, kind: Kind, s: &Structure) -> String {
        if self.g.dot {
            write_dot(kind, s)
        } else {
            write_text(kind, s)
        }
    }

    fn structure_record(&self, kind: Kind, s: &Structure) -> Value {
        json!({
            "kind": kind.shape.as_str(),
            "model": kind.model.as_str(),
            "vertices": s.n(),
            "edges": s.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
        })
    }

    fn list(&self, kind: Kind, xs: &[Structure]) {
        match self.g.format {
            Format::Record => {
                let records: Vec<Value> = xs.iter().map(|s| self.structure_record(kind, s)).collect();
                println!("{}", json!({ "count": xs.len(), "structures": records }));
            }
            Format::Text => {
                for (i, s) in xs.iter().enumerate() {
                    if i > 0 {
                        println!();
                    }
                    println!("# {} of {}", i + 1, xs.len());
                    print!("{}", self.structure(kind, s));
                }
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let g = &cli.global;
    let out = Out { g };
    match &cli.command {
        Command::Compare { a, b } => compare(g, &read_structure(a)?, &read_structure(b)?),
        Command::Classify { obstruction, witness } => {
            let t = read_structure(obstruction)?;
            let class = match g.class {
                Some(c) => c,
                None => class_of(t.kind)?,
            };
            let verdict = classify(class, g.strength, &t.structure)?;
            let members = if *witness > 0 && verdict.outcome == Outcome::NotWqo {
                canonical_antichain(class, g.strength, &t.structure, *witness)?
            } else {
                Vec::new()
            };
            print_verdict(&out, class, &verdict, &members);
            Ok(ExitCode::SUCCESS)
        }
        Command::Family { name, n, k, model } => {
            let (kind, s) = name.build(FamilyParams {
                n: *n,
                k: k.unwrap_or(0),
                model: *model,
            })?;
            match g.format {
                Format::Record => println!("{}", out.structure_record(kind, &s)),
                Format::Text => print!("{}", out.structure(kind, &s)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { n, shape, model } => {
            let kind = match (g.class, shape, model) {
                (Some(c), None, None) => c.kind(),
                (None, Some(s), m) => Kind::new(*s, m.unwrap_or(Model::Plain)),
                (None, None, _) => bail!("give --class or --shape"),
                (Some(_), _, _) => bail!("--class cannot be combined with --shape or --model"),
            };
            out.list(kind, &enumerate_structures(kind, *n)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Ideal { obstruction } => {
            let t = read_structure(obstruction)?;
            let class = match g.class {
                Some(c) => c,
                None => class_of(t.kind)?,
            };
            t.structure.validate(class.kind())?;
            let bound = g.bound.unwrap_or(4);
            out.list(class.kind(), &ideal_members(class.kind(), g.strength, &t.structure, bound)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Antichain { files, size } => {
            let typed: Vec<TypedStructure> = files.iter().map(|p| read_structure(p)).collect::<Result<_>>()?;
            let xs: Vec<Structure> = typed.iter().map(|t| t.structure.clone()).collect();
            match size {
                None => {
                    let ok = verify_antichain(&xs, g.strength)?;
                    match g.format {
                        Format::Record => println!("{}", json!({ "antichain": ok, "members": xs.len() })),
                        Format::Text => println!("{}", if ok { "antichain" } else { "not an antichain" }),
                    }
                    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
                }
                Some(size) => {
                    let found = find_antichain(&xs, g.strength, *size)?;
                    let indices: Option<Vec<usize>> = found.members.as_ref().map(|ms| {
                        ms.iter()
                            .map(|m| xs.iter().position(|x| x == m).expect("member comes from input"))
                            .collect()
                    });
                    match g.format {
                        Format::Record => println!(
                            "{}",
                            json!({
                                "found": indices.is_some(),
                                "greedy": found.greedy,
                                "members": indices.as_ref().map(|is| is.iter().map(|&i| files[i].display().to_string()).collect::<Vec<_>>()),
                            })
                        ),
                        Format::Text => match &indices {
                            Some(is) => {
                                println!("antichain of size {size}{}:", if found.greedy { " (greedy)" } else { "" });
                                for &i in is {
                                    println!("  {}", files[i].display());
                                }
                            }
                            None => println!("no antichain of size {size}{}", if found.greedy { " found (greedy search)" } else { "" }),
                        },
                    }
                    Ok(if indices.is_some() { ExitCode::SUCCESS } else { ExitCode::from(1) })
                }
            }
        }
        Command::Verify { tag } => {
            let tag = PropositionTag::lookup(tag)?;
            let bound = g.bound.unwrap_or_else(|| tag.max_bound().min(5));
            let report = verify_proposition(tag, bound, g.seed)?;
            match g.format {
                Format::Record => println!("{}", serde_json::to_string(&report)?),
                Format::Text => {
                    println!(
                        "{} ({}) bound {}: {} [{} instances, {:.2}s]",
                        tag.as_str(),
                        tag.code(),
                        bound,
                        if report.passed() { "pass" } else { "FAIL" },
                        report.checked,
                        report.elapsed
                    );
                    if let Some(c) = &report.counterexample {
                        println!("counterexample:\n{c}");
                    }
                }
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Images { file } => {
            let t = read_structure(file)?;
            let kind = match g.class {
                Some(c) => c.kind(),
                None => t.kind,
            };
            t.structure.validate(kind)?;
            out.list(kind, &homomorphic_images(&t.structure, kind, g.strength)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn compare(g: &Global, a: &TypedStructure, b: &TypedStructure) -> Result<ExitCode> {
    let (sa, sb) = (&a.structure, &b.structure);
    let down = find_epimorphism(sb, sa, g.strength); // B onto A
    let up = find_epimorphism(sa, sb, g.strength); // A onto B
    let (relation, witness): (&str, Option<(&str, Mapping)>) = if are_isomorphic(sa, sb) {
        ("A = B (isomorphic)", down.map(|m| ("B -> A", m)))
    } else if let Some(m) = down {
        ("A < B", Some(("B -> A", m)))
    } else if let Some(m) = up {
        ("B < A", Some(("A -> B", m)))
    } else {
        ("incomparable", None)
    };
    match g.format {
        Format::Record => println!(
            "{}",
            json!({
                "strength": g.strength.as_str(),
                "relation": relation,
                "witness": witness.as_ref().map(|(dir, m)| json!({ "direction": dir, "values": m.values() })),
            })
        ),
        Format::Text => {
            println!("{relation}");
            if let Some((dir, m)) = &witness {
                println!("witness {dir}: {m}");
            }
        }
    }
    Ok(if witness.is_some() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn print_verdict(out: &Out, class: StructureClass, v: &Verdict, members: &[Structure]) {
    let kind = class.kind();
    match out.g.format {
        Format::Record => {
            let mut record = serde_json::to_value(v).expect("verdicts serialize");
            if !members.is_empty() {
                record["witnesses"] = members.iter().map(|s| Value::String(write_text(kind, s))).collect();
            }
            println!("{record}");
        }
        Format::Text => {
            println!("class: {class}");
            println!("strength: {}", out.g.strength);
            println!("outcome: {}", v.outcome);
            if v.outcome == Outcome::Wqo {
                println!("finite_ideal: {}", v.finite_ideal);
            }
            if let Some(f) = &v.witness_family {
                println!("witness_family: {} from {}", f.name, f.start);
            }
            println!("theorem_tag: {}", v.theorem_tag);
            for (i, s) in members.iter().enumerate() {
                println!();
                println!("# witness {}", i + 1);
                print!("{}", out.structure(kind, s));
            }
        }
    }
}
