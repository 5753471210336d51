use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use arcalg::algebra::{multiply, multiply_reference, Algebra, BasisVector};
use arcalg::cache::cached;
use arcalg::cellstruct::{audit_dimension, cartan_matrix, decomposition_matrix, graded_dimension, type_b_decomposition, type_b_label};
use arcalg::diagrams::{circle_diagram, cup_diagram, half_degree, orientations, parse_arcs, weight_of, CupDiagram};
use arcalg::poly::{PolyMatrix, QPoly};
use arcalg::quiver::{arrow_checks, diamonds, lambda_pairs, quiver, triple_status, verify_braden_in};
use arcalg::verify::{self, Check};
use arcalg::weights::{Block, Parity, Weight};
use arcalg::Error;

#[derive(Parser)]
#[command(name = "arcalg", version, about = "Generalized Khovanov arc algebras of type D")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Rank of the principal block.
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true, default_value = "even")]
    parity: String,
    /// Block diagram over b (diamond), x, o; overrides --k.
    #[arg(long, global = true)]
    theta: Option<String>,
    /// Output format; the default depends on the command.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Largest padding tried when completing diamonds.
    #[arg(long, global = true, default_value_t = 2)]
    max_extension: usize,
    /// Random samples for checks that are not exhaustive.
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Check every case instead of sampling.
    #[arg(long, global = true)]
    exhaustive: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Assoc,
    SurgeryOrder,
    Cellular,
    Braden,
    Degree,
    Quiver,
    Reference,
    Generation,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weights of the block in canonical order.
    Enumerate,
    /// Cup diagram of a weight.
    Cup { weight: String },
    /// Weight of a cup diagram such as "cup(1,4) cup(2,3)"; needs a block.
    Weightof { arcs: String },
    /// Weights orienting a cup diagram, or the middles orienting a circle diagram.
    Orientations { lambda: String, mu: Option<String> },
    /// Degree of a basis vector "λ;ν;μ".
    Degree { basis: String },
    /// Product of two basis vectors.
    Multiply {
        left: String,
        right: String,
        #[arg(long)]
        reference: bool,
    },
    /// Image of a basis vector under the anti-automorphism.
    Star { basis: String },
    /// Graded Cartan matrix.
    Cartan,
    /// Graded decomposition matrix, rows by orienting weight.
    Decomp,
    /// Graded dimension; with --claimed, compare against a stated polynomial.
    Dim {
        #[arg(long)]
        claimed: Option<String>,
    },
    /// Ext quiver of the block; --dot prints Graphviz.
    Quiver {
        #[arg(long)]
        dot: bool,
    },
    /// Lambda-pairs of a weight with their targets.
    Lambdapairs { weight: String },
    /// Diamonds of the block, or the status of one triple "a,b,c".
    Diamonds {
        #[arg(long)]
        triple: Option<String>,
    },
    /// Type B decomposition numbers for sequences of length k, or one label.
    Typeb {
        #[arg(long)]
        label: Option<String>,
    },
    /// Run a property suite; exits 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

enum Failure {
    Usage(String),
    Input(Error),
    Io(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            Error::Io(s) => Failure::Io(s),
            e => Failure::Input(e),
        }
    }
}

type Out = Result<String, Failure>;

impl Opts {
    fn block(&self) -> Result<Block, Failure> {
        let parity: Parity = self.parity.parse()?;
        match (&self.theta, self.k) {
            (Some(t), _) => Ok(Block::from_theta(t, parity)?),
            (None, Some(k)) => Ok(Block::principal(k, parity)),
            (None, None) => Err(Failure::Usage("give --k or --theta".into())),
        }
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn weight(s: &str) -> Result<Weight, Failure> {
    Ok(s.parse()?)
}

fn basis_vector(s: &str) -> Result<BasisVector, Failure> {
    Ok(s.parse()?)
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string() + "\n").collect()
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn matrix(m: &PolyMatrix, f: Format) -> String {
    match f {
        Format::Text => m.to_table(),
        Format::Csv => m.to_csv(),
        Format::Json => m.to_json() + "\n",
    }
}

fn checks_report(o: &Opts, suite: &str, block: &Block, checks: Vec<Check>, started: Instant) -> Out {
    let passed = checks.iter().all(|c| c.passed);
    let text = match o.format(Format::Text) {
        Format::Json => to_json(&json!({
            "command": "verify",
            "parameters": {
                "suite": suite,
                "block": block.describe(),
                "samples": o.samples,
                "seed": o.seed,
                "exhaustive": o.exhaustive,
                "max_extension": o.max_extension,
            },
            "timing_ms": started.elapsed().as_millis() as u64,
            "passed": passed,
            "checks": checks,
        })),
        _ => lines(&checks),
    };
    if passed {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn verify_suite(o: &Opts, suite: Suite) -> Out {
    let started = Instant::now();
    let block = o.block()?;
    let alg = Algebra::new(&block);
    let (name, checks) = match suite {
        Suite::Assoc => (
            "assoc",
            vec![if o.exhaustive {
                verify::assoc_exhaustive(&alg)
            } else {
                verify::assoc_random(&alg, o.samples, o.seed)
            }],
        ),
        Suite::SurgeryOrder => (
            "surgery-order",
            vec![if o.exhaustive {
                verify::surgery_order(&alg, 3, o.seed)
            } else {
                verify::surgery_order_sampled(&alg, o.samples, o.seed)
            }],
        ),
        Suite::Cellular => (
            "cellular",
            vec![
                verify::cellularity(&alg),
                verify::cellularity_twisted(&alg),
                verify::triangularity(&alg),
                verify::star_antiautomorphism(&alg),
            ],
        ),
        Suite::Braden => {
            if block != Block::principal(block.rank(), block.parity()) || block.parity() != Parity::Even {
                return Err(Failure::Input(Error::InvalidGenerator(
                    "Braden's presentation is checked on even principal blocks".into(),
                )));
            }
            let r = verify_braden_in(&alg, o.max_extension);
            let mut checks = r.checks;
            checks.push(Check {
                name: "triples undecided at the extension bound".into(),
                checked: r.undecided_triples,
                passed: true,
                witness: None,
            });
            ("braden", checks)
        }
        Suite::Degree => (
            "degree",
            vec![
                verify::degree_additive(&alg),
                verify::circle_degree_law(&block),
                verify::orientation_count(&block),
            ],
        ),
        Suite::Quiver => ("quiver", arrow_checks(&block)),
        Suite::Reference => ("reference", vec![verify::reference_oracle(&alg)]),
        Suite::Generation => ("generation", vec![verify::generation(&alg)]),
    };
    checks_report(o, name, &block, checks, started)
}

fn run(cli: Cli) -> Out {
    let o = &cli.opts;
    match cli.cmd {
        Cmd::Enumerate => {
            let ws = o.block()?.enumerate();
            Ok(match o.format(Format::Text) {
                Format::Json => to_json(&ws),
                _ => lines(&ws),
            })
        }
        Cmd::Cup { weight: w } => {
            let c = cup_diagram(&weight(&w)?);
            Ok(match o.format(Format::Text) {
                Format::Json => to_json(&c.arcs()),
                _ => format!("{c}\n"),
            })
        }
        Cmd::Weightof { arcs } => {
            let block = o.block()?;
            let c = CupDiagram::from_arcs(block.theta(), &parse_arcs(arcs.trim_matches(|ch| ch == '{' || ch == '}'))?)?;
            Ok(format!("{}\n", weight_of(&c)?))
        }
        Cmd::Orientations { lambda, mu } => {
            let lam = weight(&lambda)?;
            let rows: Vec<(String, u32)> = match mu {
                None => {
                    let c = cup_diagram(&lam);
                    lam.block()
                        .enumerate()
                        .into_iter()
                        .filter_map(|m| half_degree(&c, &m).map(|d| (m.to_string(), d)))
                        .collect()
                }
                Some(m) => {
                    let m = weight(&m)?;
                    let d = circle_diagram(&lam, &m)?;
                    orientations(&d)
                        .into_iter()
                        .map(|l| {
                            let b = BasisVector::new(lam.clone(), l[0].clone(), m.clone())?;
                            Ok((l[0].to_string(), b.degree()))
                        })
                        .collect::<Result<_, Error>>()?
                }
            };
            Ok(match o.format(Format::Text) {
                Format::Json => to_json(&rows.iter().map(|(w, d)| json!({"weight": w, "degree": d})).collect::<Vec<_>>()),
                _ => lines(rows.iter().map(|(w, d)| format!("{w} {d}"))),
            })
        }
        Cmd::Degree { basis } => Ok(format!("{}\n", basis_vector(&basis)?.degree())),
        Cmd::Multiply { left, right, reference } => {
            let (x, y) = (basis_vector(&left)?, basis_vector(&right)?);
            if x.block() != y.block() {
                return Err(Failure::Input(Error::BlockMismatch(left, right)));
            }
            let p = if reference { multiply_reference(&x, &y)? } else { multiply(&x, &y)? };
            Ok(match o.format(Format::Json) {
                Format::Json => serde_json::to_string(&p.to_json()).expect("json") + "\n",
                _ => format!("{p}\n"),
            })
        }
        Cmd::Star { basis } => Ok(format!("{}\n", basis_vector(&basis)?.star())),
        Cmd::Cartan | Cmd::Decomp => {
            let block = o.block()?;
            let f = o.format(Format::Text);
            let (kind, build): (&str, fn(&Block) -> PolyMatrix) = match cli.cmd {
                Cmd::Cartan => ("cartan", cartan_matrix),
                _ => ("decomp", decomposition_matrix),
            };
            let tag = match f {
                Format::Text => "txt",
                Format::Csv => "csv",
                Format::Json => "json",
            };
            Ok(cached(&block, &format!("{kind}-{tag}"), || matrix(&build(&block), f))?)
        }
        Cmd::Dim { claimed } => {
            let block = o.block()?;
            match claimed {
                None => {
                    let p = graded_dimension(&block);
                    Ok(match o.format(Format::Text) {
                        Format::Json => to_json(&json!({"polynomial": p.to_string(), "coefficients": p.coeffs(), "total": p.at_one()})),
                        _ => format!("{p}\n"),
                    })
                }
                Some(c) => {
                    let claim: QPoly = c.parse()?;
                    let a = audit_dimension(&block, &claim);
                    let text = match o.format(Format::Text) {
                        Format::Json => to_json(&a),
                        _ => format!(
                            "counted {} (total {})\ncartan sum {}\nclaimed {} (total {})\nmismatched degrees {:?}\n",
                            a.counted,
                            a.counted.at_one(),
                            a.cartan_sum,
                            a.claimed,
                            a.claimed.at_one(),
                            a.mismatched_degrees
                        ),
                    };
                    if a.consistent() && a.claim_holds() {
                        Ok(text)
                    } else {
                        Err(Failure::Verification(text))
                    }
                }
            }
        }
        Cmd::Quiver { dot } => {
            let q = quiver(&o.block()?);
            if dot {
                return Ok(q.to_dot());
            }
            Ok(match o.format(Format::Text) {
                Format::Json => to_json(&q),
                _ => lines(q.arrows.iter().map(|&(a, b)| format!("{} -> {}", q.vertices[a], q.vertices[b]))),
            })
        }
        Cmd::Lambdapairs { weight: w } => {
            let ps = lambda_pairs(&weight(&w)?);
            Ok(match o.format(Format::Text) {
                Format::Json => to_json(&ps),
                _ => lines(&ps),
            })
        }
        Cmd::Diamonds { triple } => match triple {
            Some(t) => {
                let ws: Vec<Weight> = t.split(',').map(weight).collect::<Result<_, _>>()?;
                let [a, b, c] = ws.as_slice() else {
                    return Err(Failure::Usage("--triple takes three comma separated weights".into()));
                };
                Ok(format!("{:?}\n", triple_status(a, b, c, o.max_extension)?))
            }
            None => {
                let ds = diamonds(&o.block()?);
                Ok(match o.format(Format::Text) {
                    Format::Json => to_json(&ds),
                    _ => lines(ds.iter().map(|d| d.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" "))),
                })
            }
        },
        Cmd::Typeb { label } => match label {
            Some(s) => Ok(format!("{}\n", type_b_label(&weight(&s)?)?)),
            None => {
                let k = o.k.ok_or_else(|| Failure::Usage("typeb needs --k".into()))?;
                Ok(matrix(&type_b_decomposition(k), o.format(Format::Text)))
            }
        },
        Cmd::Verify { suite } => verify_suite(o, suite),
    }
}

fn emit(out: &Option<std::path::PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.opts.out.clone();
    let (text, code) = match run(cli) {
        Ok(t) => (t, 0),
        Err(Failure::Verification(t)) => (t, 1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(4);
        }
    };
    if let Err(m) = emit(&out, &text) {
        eprintln!("error: {m}");
        return ExitCode::from(4);
    }
    ExitCode::from(code)
}
