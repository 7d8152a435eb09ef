use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cyclic_flats::constructions::{
    catalog, excluded_minor_pn, gimenez_family, realize_lattice, uniform, Realization,
};
use cyclic_flats::format::{emit_matroid, emit_polynomial, parse_lattice, parse_matroid};
use cyclic_flats::freeprod::free_product;
use cyclic_flats::minors::{
    direct_sum, dual, has_minor_with_cap, higgs_lift, isomorphism_with_cap, minor, relax, truncate,
    DEFAULT_ISO_CAP, DEFAULT_MINOR_CAP,
};
use cyclic_flats::nested::{nested_from_sequence, nested_sequence_of, uniform_minor_from_chain};
use cyclic_flats::random::{random_cw2_matroid, random_matroid, random_nested, seeded};
use cyclic_flats::transversal::{
    bitransversal_cert, cyclic_width, ingleton_transversal, IngletonReport,
};
use cyclic_flats::tutte::{
    rank_gen_brute, rank_gen_convolution, tutte_from_rank_gen, tutte_polynomial,
};
use cyclic_flats::{validate, Error, Matroid, MinorSpec, Subset};

#[derive(Parser)]
#[command(
    name = "cyflat",
    version,
    about = "Matroids as lattices of cyclic flats"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the cyclic-flat axioms
    Validate {
        file: PathBuf,
    },
    /// Rank of a set
    Rank {
        file: PathBuf,
        /// Comma-separated labels; empty for the empty set
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Whether a set is independent
    Independent {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// List all circuits
    Circuits {
        file: PathBuf,
    },
    /// Recompute the cyclic flats from the rank function
    CyclicFlats {
        file: PathBuf,
    },
    /// Rank, nullity, loops, isthmuses and cyclic width
    Stats {
        file: PathBuf,
    },
    Dual {
        file: PathBuf,
    },
    Minor {
        file: PathBuf,
        #[arg(long, default_value = "")]
        contract: String,
        #[arg(long, default_value = "")]
        delete: String,
    },
    /// Drop a cyclic flat comparable only to the least and greatest ones
    Relax {
        file: PathBuf,
        #[arg(long)]
        flat: String,
    },
    Directsum {
        m: PathBuf,
        n: PathBuf,
    },
    Freeprod {
        m: PathBuf,
        n: PathBuf,
    },
    Truncate {
        file: PathBuf,
    },
    /// Higgs lift
    Lift {
        file: PathBuf,
    },
    /// Tutte polynomial; with two files, of their free product
    Tutte {
        m: PathBuf,
        n: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = TutteMethod::Brute)]
        method: TutteMethod,
    },
    /// Width of the lattice of cyclic flats
    Width {
        file: PathBuf,
    },
    /// Test whether the matroid is nested and print its i/f sequence
    Nested {
        file: PathBuf,
    },
    /// Search for a minor of M isomorphic to N
    MinorTest {
        m: PathBuf,
        n: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MINOR_CAP)]
        max_elements: usize,
    },
    Iso {
        m: PathBuf,
        n: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ISO_CAP)]
        max_elements: usize,
    },
    /// Matroid whose cyclic flats realize a lattice file
    Realize {
        lattice: PathBuf,
        #[arg(long)]
        sublattice: bool,
    },
    Gen {
        #[command(subcommand)]
        kind: Gen,
    },
    /// Inclusion-exclusion test over antichains of cyclic flats
    Ingleton {
        file: PathBuf,
    },
    /// Ingleton test on the matroid and its dual
    Bitransversal {
        file: PathBuf,
    },
    /// Uniform minor read off a chain of cyclic flats
    ChainMinor {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum Gen {
    Uniform {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        size: usize,
    },
    /// Truncation to rank n of two copies of U_{n-1,n}
    Pn {
        #[arg(long)]
        n: usize,
    },
    Gimenez {
        #[arg(long)]
        n: usize,
        /// One-line permutation of 1..=n, comma-separated; identity if omitted
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Nested matroid from an i/f word, or a random one with --seed
    Nested {
        #[arg(long, conflicts_with = "seed")]
        sequence: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 8)]
        max_elements: usize,
    },
    Catalog {
        name: String,
    },
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_elements: usize,
        /// Chain of cyclic flats plus one incomparable member
        #[arg(long)]
        width2: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TutteMethod {
    Brute,
    Convolution,
}

enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Axiom(v) => Failure::Violation(format!("invalid: {v}")),
            e => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Matroid, Failure> {
    let fam = parse_matroid(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    validate(&fam).map_err(|v| Failure::Violation(format!("invalid: {}", v.describe(fam.ground()))))
}

fn set_arg(m: &Matroid, spec: &str) -> Result<Subset, Failure> {
    let labels: Vec<&str> = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    Ok(m.ground().subset(&labels)?)
}

fn doc(m: &Matroid) -> Outcome {
    Ok((emit_matroid(m), true))
}

fn answer(text: impl Into<String>, ok: bool) -> Outcome {
    let mut text = text.into();
    text.push('\n');
    Ok((text, ok))
}

fn list(lines: impl IntoIterator<Item = String>) -> String {
    lines.into_iter().map(|l| l + "\n").collect()
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => {
            let m = load(&file)?;
            answer(format!("valid, rank {}", m.rank()), true)
        }
        Command::Rank { file, set } => {
            let m = load(&file)?;
            answer(m.rank_of(set_arg(&m, &set)?).to_string(), true)
        }
        Command::Independent { file, set } => {
            let m = load(&file)?;
            let ind = m.is_independent(set_arg(&m, &set)?);
            answer(ind.to_string(), ind)
        }
        Command::Circuits { file } => {
            let m = load(&file)?;
            Ok((
                list(m.circuits().into_iter().map(|c| m.ground().format(c))),
                true,
            ))
        }
        Command::CyclicFlats { file } => {
            let m = load(&file)?;
            let fam = m.cyclic_flats_recompute()?;
            let mut out = list(
                fam.entries()
                    .map(|(f, r)| format!("{} rank {r}", m.ground().format(f))),
            );
            let fixpoint = fam == m.to_family();
            out.push_str(if fixpoint {
                "fixpoint: yes\n"
            } else {
                "fixpoint: no\n"
            });
            Ok((out, fixpoint))
        }
        Command::Stats { file } => {
            let m = load(&file)?;
            let s = m.basic_stats();
            let g = m.ground();
            Ok((
                list([
                    format!("elements {}", m.size()),
                    format!("rank {}", s.rank),
                    format!("nullity {}", s.nullity),
                    format!("loops {}", g.format(s.loops)),
                    format!("isthmuses {}", g.format(s.isthmuses)),
                    format!("cyclic flats {}", s.cyclic_flats),
                    format!("cyclic width {}", cyclic_width(&m)),
                ]),
                true,
            ))
        }
        Command::Dual { file } => doc(&dual(&load(&file)?)),
        Command::Minor {
            file,
            contract,
            delete,
        } => {
            let m = load(&file)?;
            let spec = MinorSpec::new(set_arg(&m, &contract)?, set_arg(&m, &delete)?)?;
            doc(&minor(&m, &spec)?)
        }
        Command::Relax { file, flat } => {
            let m = load(&file)?;
            doc(&relax(&m, set_arg(&m, &flat)?)?)
        }
        Command::Directsum { m, n } => doc(&direct_sum(&load(&m)?, &load(&n)?)?),
        Command::Freeprod { m, n } => doc(&free_product(&load(&m)?, &load(&n)?)?),
        Command::Truncate { file } => doc(&truncate(&load(&file)?)?),
        Command::Lift { file } => doc(&higgs_lift(&load(&file)?)?),
        Command::Tutte { m, n, method } => {
            let m = load(&m)?;
            let n = n.map(|p| load(&p)).transpose()?;
            let t = match (method, n) {
                (TutteMethod::Brute, None) => tutte_polynomial(&m)?,
                (TutteMethod::Brute, Some(n)) => tutte_polynomial(&free_product(&m, &n)?)?,
                (TutteMethod::Convolution, Some(n)) => {
                    m.ground().disjoint_union(n.ground())?;
                    let r =
                        rank_gen_convolution(&rank_gen_brute(&m)?, m.rank(), &rank_gen_brute(&n)?)?;
                    tutte_from_rank_gen(&r)
                }
                (TutteMethod::Convolution, None) => {
                    return Err(Failure::Input(
                        "the convolution method needs two matroid files".into(),
                    ))
                }
            };
            Ok((emit_polynomial(&t), true))
        }
        Command::Width { file } => answer(cyclic_width(&load(&file)?).to_string(), true),
        Command::Nested { file } => match nested_sequence_of(&load(&file)?) {
            Ok(s) => answer(format!("nested {s}"), true),
            Err(Error::NotNested) => answer("not nested", false),
            Err(e) => Err(e.into()),
        },
        Command::MinorTest { m, n, max_elements } => {
            let m = load(&m)?;
            match has_minor_with_cap(&m, &load(&n)?, max_elements)? {
                Some(spec) => answer(format!("minor: {}", spec.describe(m.ground())), true),
                None => answer("no minor", false),
            }
        }
        Command::Iso { m, n, max_elements } => {
            let (m, n) = (load(&m)?, load(&n)?);
            match isomorphism_with_cap(&m, &n, max_elements)? {
                Some(map) => {
                    let pairs: Vec<String> = map
                        .iter()
                        .enumerate()
                        .map(|(i, &j)| {
                            format!("{} -> {}", m.ground().label(i), n.ground().label(j))
                        })
                        .collect();
                    Ok((format!("isomorphic\n{}", list(pairs)), true))
                }
                None => answer("not isomorphic", false),
            }
        }
        Command::Realize {
            lattice,
            sublattice,
        } => {
            let l = parse_lattice(&read(&lattice)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", lattice.display())))?;
            let variant = if sublattice {
                Realization::Sublattice
            } else {
                Realization::Plain
            };
            doc(&realize_lattice(&l, variant)?.0)
        }
        Command::Gen { kind } => doc(&generate(kind)?),
        Command::Ingleton { file } => {
            let m = load(&file)?;
            match ingleton_transversal(&m)? {
                IngletonReport::Holds => answer("holds", true),
                IngletonReport::Violated {
                    antichain,
                    lhs,
                    rhs,
                } => {
                    let sets: Vec<String> =
                        antichain.iter().map(|&s| m.ground().format(s)).collect();
                    answer(
                        format!("violated on {}: {lhs} > {rhs}", sets.join(" ")),
                        false,
                    )
                }
            }
        }
        Command::Bitransversal { file } => {
            let ok = bitransversal_cert(&load(&file)?)?;
            answer(ok.to_string(), ok)
        }
        Command::ChainMinor { file, k } => {
            let m = load(&file)?;
            let um = uniform_minor_from_chain(&m, k)?;
            let g = m.ground();
            let mut out = list([
                format!("minor {}", um.spec.describe(g)),
                format!("rank {} nullity {}", um.rank, um.nullity),
                format!("uniform U{k},{} {}", k + 2, um.trimmed.describe(g)),
            ]);
            out.push_str(&emit_matroid(&minor(&m, &um.trimmed)?));
            Ok((out, true))
        }
    }
}

fn generate(kind: Gen) -> Result<Matroid, Failure> {
    Ok(match kind {
        Gen::Uniform { rank, size } => uniform(rank, size)?,
        Gen::Pn { n } => excluded_minor_pn(n)?,
        Gen::Gimenez { n, sigma } => {
            let sigma: Vec<usize> = match sigma {
                None => (1..=n).collect(),
                Some(s) => s
                    .split(',')
                    .map(|x| x.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| Failure::Input(format!("--sigma: {e}")))?,
            };
            gimenez_family(n, &sigma)?
        }
        Gen::Nested {
            sequence: Some(s), ..
        } => nested_from_sequence(&s.parse()?),
        Gen::Nested {
            seed, max_elements, ..
        } => random_nested(&mut seeded(seed.unwrap_or(0)), max_elements),
        Gen::Catalog { name } => catalog(&name)?,
        Gen::Random {
            seed,
            max_elements,
            width2,
        } => {
            let mut rng = seeded(seed);
            if width2 {
                random_cw2_matroid(&mut rng, max_elements)
            } else {
                random_matroid(&mut rng, max_elements)
            }
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, ok)) => {
            print!("{out}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Violation(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
