//! Command-line interface for exact computation in the bosonic extension
//! of a finite-type quantum group.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
//! 3 resource guardrail.

use clap::{Parser, Subcommand, ValueEnum};
use qbext::algebra::text::parse_elem;
use qbext::pbw::PbwDatum;
use qbext::{Algebra, CartanDatum, QbError};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qbext", version, about = "Exact computation in bosonic extensions of quantum groups")]
struct Cli {
    /// Cartan type, e.g. A2, B3, F4, G2.
    #[arg(long = "type", global = true, default_value = "A2")]
    ctype: String,

    /// Slice-basis cache directory (also via QBEXT_CACHE_DIR). Advisory:
    /// deleting it never changes results, only speed.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Height cap for on-demand weight-space enumeration.
    #[arg(long, global = true)]
    max_ht: Option<i64>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Subcommand)]
enum Cmd {
    /// Canonical normal form of an element.
    Nf {
        /// Element text, e.g. "f[1,0] f[1,1]" or "q^2 f[2,1] - 1".
        element: String,
    },
    /// The bilinear form ⟨⟨x, y⟩⟩.
    Pair { x: String, y: String },
    /// Apply the braid-group operators T along a word.
    Act {
        /// Comma-separated 1-based node indices, leftmost acts last.
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<usize>,
        /// The element acted on.
        #[arg(long)]
        on: String,
        /// Use the inverse operators T_i^{-1}.
        #[arg(long)]
        inverse: bool,
    },
    /// Positive-braid (Garside) commands.
    Braid {
        #[command(subcommand)]
        cmd: BraidCmd,
    },
    /// PBW root vectors, Gram matrices, and straightening.
    Pbw {
        #[command(subcommand)]
        cmd: PbwCmd,
    },
    /// Run a verification suite: braid-relations, example-a2, garside.
    Verify {
        suite: String,
        /// Brute-force word length for the garside suite.
        #[arg(long, default_value_t = 4)]
        len: usize,
    },
}

#[derive(Subcommand)]
enum BraidCmd {
    /// Left-weighted normal form Delta^r | w1 | w2 | ...
    Nf {
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum PbwCmd {
    /// The PBW root vectors of a datum.
    Vectors {
        #[arg(long, value_delimiter = ',', required = true)]
        seq: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        xi: i32,
        /// Use the ∗-twisted family (inverse braid operators).
        #[arg(long)]
        starred: bool,
    },
    /// Diagonal Gram entries over all exponent vectors of total ≤ max-deg
    /// (orthogonality and the closed-form diagonal are certified).
    Gram {
        #[arg(long, value_delimiter = ',', required = true)]
        seq: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        xi: i32,
        #[arg(long, default_value_t = 2)]
        max_deg: u32,
    },
    /// Straighten F_k F_t − q^{-(wt k, wt t)} F_t F_k over inner monomials.
    Straighten {
        #[arg(long, value_delimiter = ',', required = true)]
        seq: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        xi: i32,
        /// 1-based positions, k < t.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                QbError::Usage(_) => ExitCode::from(2),
                QbError::Guardrail(_) => ExitCode::from(3),
                QbError::Internal(_) => ExitCode::from(1),
            }
        }
    }
}

fn algebra(cli: &Cli) -> Result<Algebra, QbError> {
    let ctype = cli.ctype.parse()?;
    let cache = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("QBEXT_CACHE_DIR").map(PathBuf::from));
    let mut a = Algebra::new(CartanDatum::new(ctype)?).with_cache_dir(cache);
    if let Some(cap) = cli.max_ht {
        a = a.with_max_slice_ht(cap);
    }
    Ok(a)
}

/// Convert a 1-based CLI word to 0-based node indices.
fn word_0(a: &Algebra, word: &[usize]) -> Result<Vec<usize>, QbError> {
    word.iter()
        .map(|&i| {
            if i == 0 || i > a.cd.rank() {
                Err(QbError::Usage(format!(
                    "node index {i} out of range 1..={}",
                    a.cd.rank()
                )))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn parse(a: &Algebra, text: &str) -> Result<qbext::Elem, QbError> {
    let e = parse_elem(text).map_err(QbError::Usage)?;
    for (w, _) in e.terms() {
        for l in w {
            if usize::from(l.i) >= a.cd.rank() {
                return Err(QbError::Usage(format!(
                    "node index {} exceeds the rank {}",
                    l.i + 1,
                    a.cd.rank()
                )));
            }
        }
    }
    Ok(e)
}

fn emit_element(cli: &Cli, label: Option<&str>, e: &qbext::Elem) {
    match cli.format {
        Format::Text => match label {
            Some(l) => println!("{l} = {e}"),
            None => println!("{e}"),
        },
        Format::JsonLines => {
            let mut obj = serde_json::Map::new();
            if let Some(l) = label {
                obj.insert("label".into(), l.into());
            }
            obj.insert("element".into(), e.to_string().into());
            println!("{}", serde_json::Value::Object(obj));
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, QbError> {
    let a = algebra(cli)?;
    match &cli.cmd {
        Cmd::Nf { element } => {
            let e = a.normal_form(&parse(&a, element)?)?;
            emit_element(cli, None, &e);
        }
        Cmd::Pair { x, y } => {
            let v = a.form(&parse(&a, x)?, &parse(&a, y)?)?;
            match cli.format {
                Format::Text => println!("{v}"),
                Format::JsonLines => {
                    println!("{}", serde_json::json!({ "pair": v.to_string() }));
                }
            }
        }
        Cmd::Act { word, on, inverse } => {
            let w = word_0(&a, word)?;
            let e = a.t_word(&w, &parse(&a, on)?, *inverse)?;
            emit_element(cli, None, &e);
        }
        Cmd::Braid { cmd: BraidCmd::Nf { word } } => {
            let w = word_0(&a, word)?;
            let nf = qbext::braid::garside_normal_form(&a.cd, &w);
            match cli.format {
                Format::Text => println!("{}", nf.display(&a.cd)),
                Format::JsonLines => {
                    let factors: Vec<Vec<usize>> = nf
                        .factor_words(&a.cd)
                        .into_iter()
                        .map(|f| f.into_iter().map(|i| i + 1).collect())
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({ "delta_power": nf.delta_power, "factors": factors })
                    );
                }
            }
        }
        Cmd::Pbw { cmd } => run_pbw(cli, &a, cmd)?,
        Cmd::Verify { suite, len } => {
            let checks = qbext::verify::run_suite(suite, &a.cd, *len)?;
            let mut failed = false;
            for c in &checks {
                failed |= !c.passed;
                match cli.format {
                    Format::Text => {
                        let status = if c.passed { "PASS" } else { "FAIL" };
                        match &c.detail {
                            Some(d) if !c.passed => println!("{status}  {}: {d}", c.name),
                            _ => println!("{status}  {}", c.name),
                        }
                    }
                    Format::JsonLines => println!(
                        "{}",
                        serde_json::json!({
                            "check": c.name,
                            "passed": c.passed,
                            "detail": c.detail,
                        })
                    ),
                }
            }
            if failed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_pbw(cli: &Cli, a: &Algebra, cmd: &PbwCmd) -> Result<(), QbError> {
    match cmd {
        PbwCmd::Vectors { seq, xi, starred } => {
            let pd = PbwDatum::new(word_0(a, seq)?, *xi)?;
            let vs = if *starred {
                qbext::pbw::pbw_root_vectors_starred(a, &pd)?
            } else {
                qbext::pbw::pbw_root_vectors(a, &pd)?
            };
            let tag = if *starred { "*F" } else { "F" };
            for (k, v) in vs.iter().enumerate() {
                emit_element(cli, Some(&format!("{tag}{}", k + 1)), v);
            }
        }
        PbwCmd::Gram { seq, xi, max_deg } => {
            let pd = PbwDatum::new(word_0(a, seq)?, *xi)?;
            let indices = qbext::pbw::exponent_vectors(pd.seq.len(), *max_deg);
            let gram = qbext::pbw::gram_matrix(a, &pd, &indices)?;
            for (r, d) in indices.iter().enumerate() {
                match cli.format {
                    Format::Text => println!("{d:?} -> {}", gram[r][r]),
                    Format::JsonLines => println!(
                        "{}",
                        serde_json::json!({ "d": d, "entry": gram[r][r].to_string() })
                    ),
                }
            }
        }
        PbwCmd::Straighten { seq, xi, k, t } => {
            let pd = PbwDatum::new(word_0(a, seq)?, *xi)?;
            if *k == 0 || *t == 0 {
                return Err(QbError::Usage("positions k, t are 1-based".into()));
            }
            let table = qbext::pbw::straighten(a, &pd, k - 1, t - 1)?;
            for (d, coeff) in &table {
                match cli.format {
                    Format::Text => println!("{d:?} -> {coeff}"),
                    Format::JsonLines => println!(
                        "{}",
                        serde_json::json!({ "d": d, "coeff": coeff.to_string() })
                    ),
                }
            }
        }
    }
    Ok(())
}
