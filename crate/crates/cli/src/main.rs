use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use skewlines::detect::{detect, DetectResult, NO_SPINDLE_MESSAGE};
use skewlines::enumerate::{self as en, CountReport, EnumOptions};
use skewlines::euler::{euler_orient, euler_tree, tree_series};
use skewlines::isotopy::{build_family, certify_skew};
use skewlines::surface::{glue, v_polynomial};
use skewlines::{canon, equivalent, spindle_equivalent, Error, LinkMatrix, Perm, SignedPerm};

#[derive(Parser, Debug)]
#[command(name = "skewlines", version, about = "Skew-line configurations and spindles")]
struct Cli {
    /// Print a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Linking matrix of a spindle permutation, e.g. "1 4 2 5 3".
    Lk { perm: String },
    /// Canonical key of the switching class of a matrix file.
    Canon { matrix: PathBuf },
    /// Whether two matrices (or two permutations with --perms) are equivalent.
    Equiv {
        a: String,
        b: String,
        #[arg(long)]
        perms: bool,
    },
    Charpoly { matrix: PathBuf },
    Chirality { matrix: PathBuf },
    /// Product of the upper entries of an odd-order matrix.
    Signature { matrix: PathBuf },
    /// Eulerian representative of an odd-order matrix.
    EulerOrient { matrix: PathBuf },
    /// Euler tree of an even-order matrix.
    EulerTree { matrix: PathBuf },
    /// Coefficients α_0.. and β_0.. of the Euler-tree series.
    Series { len: usize },
    /// Searches the switching class for a spindle.
    Detect { matrix: PathBuf },
    /// Glued surface of a (signed) permutation, e.g. "-2 3 1".
    Genus {
        #[arg(allow_hyphen_values = true)]
        perm: String,
    },
    /// Spindle-genus histogram over normalized permutations.
    GenusTable {
        n: usize,
        #[arg(long)]
        extended: bool,
    },
    Vpoly { perm: String },
    /// Certified skew isotopy between two equivalent spindles.
    Witness { sigma: String, mu: String },
    Enumerate(EnumArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true)
    .args(["spindles", "switching", "charpolys", "genus", "census"])))]
struct EnumArgs {
    #[arg(long, value_name = "N")]
    spindles: Option<usize>,
    #[arg(long, value_name = "N")]
    switching: Option<usize>,
    #[arg(long, value_name = "N")]
    charpolys: Option<usize>,
    #[arg(long, value_name = "N")]
    genus: Option<usize>,
    #[arg(long, value_name = "N")]
    census: Option<usize>,
    /// Lift the default order limits.
    #[arg(long)]
    extended: bool,
    /// Worker threads; 0 uses all cores.
    #[arg(long, env = "SKEWLINES_WORKERS", default_value_t = 0)]
    workers: usize,
    /// Store finished spindle shards here and reuse them on rerun.
    #[arg(long)]
    checkpoint_dir: Option<PathBuf>,
}

struct Output {
    text: String,
    json: Value,
}

fn read_matrix(path: &PathBuf) -> Result<LinkMatrix, Error> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
    };
    text.parse()
}

fn matrix_rows(x: &LinkMatrix) -> Value {
    (0..x.order()).map(|i| x.row(i).to_vec()).collect()
}

fn one_based(rows: &[usize]) -> Vec<usize> {
    rows.iter().map(|r| r + 1).collect()
}

fn run(cmd: Cmd) -> Result<Output, Error> {
    let out = match cmd {
        Cmd::Lk { perm } => {
            let p: Perm = perm.parse()?;
            let x = LinkMatrix::from_spindle(&p);
            Output {
                text: x.to_string(),
                json: json!({ "perm": p.to_one_based(), "matrix": matrix_rows(&x) }),
            }
        }
        Cmd::Canon { matrix } => {
            let key = canon(&read_matrix(&matrix)?);
            Output {
                text: format!("{key}\n"),
                json: json!({ "order": key.order(), "key": key.to_hex() }),
            }
        }
        Cmd::Equiv { a, b, perms } => {
            let eq = if perms {
                spindle_equivalent(&a.parse()?, &b.parse()?)?
            } else {
                equivalent(&read_matrix(&a.into())?, &read_matrix(&b.into())?)?
            };
            let word = if eq { "equivalent" } else { "not equivalent" };
            Output {
                text: format!("{word}\n"),
                json: json!({ "equivalent": eq }),
            }
        }
        Cmd::Charpoly { matrix } => {
            let poly = read_matrix(&matrix)?.char_poly();
            let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
            Output {
                text: format!("{poly}\n"),
                json: json!({ "poly": poly.to_string(), "coeffs": coeffs }),
            }
        }
        Cmd::Chirality { matrix } => {
            let ch = read_matrix(&matrix)?.chirality();
            Output {
                text: format!(
                    "gamma_plus={} gamma_minus={} c={}\n",
                    ch.gamma_plus, ch.gamma_minus, ch.c
                ),
                json: json!({ "gamma_plus": ch.gamma_plus, "gamma_minus": ch.gamma_minus, "c": ch.c }),
            }
        }
        Cmd::Signature { matrix } => {
            let eps = read_matrix(&matrix)?.odd_signature()?;
            Output {
                text: format!("{eps:+}\n"),
                json: json!({ "signature": eps }),
            }
        }
        Cmd::EulerOrient { matrix } => {
            let o = euler_orient(&read_matrix(&matrix)?)?;
            Output {
                text: o.matrix.to_string(),
                json: json!({ "matrix": matrix_rows(&o.matrix), "flips": one_based(&o.flips) }),
            }
        }
        Cmd::EulerTree { matrix } => {
            let tree = euler_tree(&read_matrix(&matrix)?)?;
            let leaves: Vec<Value> = tree
                .leaves()
                .iter()
                .map(|l| json!({ "path": l.path, "rows": one_based(&l.rows), "signature": l.signature }))
                .collect();
            Output {
                text: format!("{tree}\n"),
                json: json!({ "tree": tree.to_string(), "leaves": leaves }),
            }
        }
        Cmd::Series { len } => {
            let s = tree_series(len);
            let alpha: Vec<String> = s.alpha.iter().map(|v| v.to_string()).collect();
            let beta: Vec<String> = s.beta.iter().map(|v| v.to_string()).collect();
            Output {
                text: format!("alpha {}\nbeta {}\n", alpha.join(" "), beta.join(" ")),
                json: json!({ "alpha": alpha, "beta": beta }),
            }
        }
        Cmd::Detect { matrix } => match detect(&read_matrix(&matrix)?) {
            DetectResult::Found { sigma, gamma } => Output {
                text: format!("FOUND sigma={sigma} gamma={gamma}\n"),
                json: json!({ "found": true, "sigma": sigma.to_one_based(), "gamma": gamma.to_one_based() }),
            },
            DetectResult::NoSpindle => Output {
                text: format!("{NO_SPINDLE_MESSAGE}\n"),
                json: json!({ "found": false }),
            },
        },
        Cmd::Genus { perm } => {
            let sp: SignedPerm = perm.parse()?;
            let s = glue(&sp);
            Output {
                text: format!(
                    "v={} chi={} orientable={} genus={}\n",
                    s.v, s.euler_char, s.orientable, s.genus
                ),
                json: json!({
                    "v": s.v, "euler_char": s.euler_char,
                    "orientable": s.orientable, "genus": s.genus,
                }),
            }
        }
        Cmd::GenusTable { n, extended } => {
            let opts = EnumOptions {
                extended,
                ..Default::default()
            };
            let hist = en::genus_histogram(n, &opts)?;
            let text: String = hist.iter().map(|(g, c)| format!("{g} {c}\n")).collect();
            Output {
                text,
                json: json!({ "n": n, "histogram": hist }),
            }
        }
        Cmd::Vpoly { perm } => {
            let v = v_polynomial(&perm.parse()?)?;
            let terms: Vec<Value> = v
                .terms
                .iter()
                .map(|(&(t, z), &c)| json!({ "t": t, "z": z, "coeff": c }))
                .collect();
            Output {
                text: format!("{v}\n"),
                json: json!({ "poly": v.to_string(), "terms": terms }),
            }
        }
        Cmd::Witness { sigma, mu } => {
            let f = build_family(&sigma.parse()?, &mu.parse()?)?;
            let cert = certify_skew(&f)?;
            let mut text = format!(
                "CERTIFIED sigma={} mu={} correspondence={}\n",
                f.sigma, f.mu, f.correspondence
            );
            for p in &cert.pairs {
                text.push_str(&format!(
                    "{} {} A={} B={} p(t)={}{:+}t{:+}t^2 disc={}\n",
                    p.i, p.j, p.a, p.b, p.coeffs[0], p.coeffs[1], p.coeffs[2], p.discriminant
                ));
            }
            let pairs: Vec<Value> = cert
                .pairs
                .iter()
                .map(|p| json!({ "i": p.i, "j": p.j, "a": p.a, "b": p.b, "coeffs": p.coeffs, "discriminant": p.discriminant }))
                .collect();
            Output {
                text,
                json: json!({
                    "sigma": f.sigma.to_one_based(),
                    "mu": f.mu.to_one_based(),
                    "correspondence": f.correspondence.to_one_based(),
                    "pairs": pairs,
                }),
            }
        }
        Cmd::Enumerate(args) => enumerate(args)?,
    };
    Ok(out)
}

fn enumerate(args: EnumArgs) -> Result<Output, Error> {
    let opts = EnumOptions {
        workers: args.workers,
        extended: args.extended,
        checkpoint_dir: args.checkpoint_dir,
    };
    let report: CountReport = if let Some(n) = args.spindles {
        en::count_spindle_classes(n, &opts)?
    } else if let Some(n) = args.switching {
        en::count_switching_classes(n, &opts)?
    } else if let Some(n) = args.charpolys {
        en::count_charpolys(n, &opts)?
    } else if let Some(n) = args.genus {
        en::genus_report(n, &opts)?
    } else if let Some(n) = args.census {
        en::census_report(n, &opts)?
    } else {
        unreachable!("clap requires one mode")
    };
    eprintln!("runtime {:.3}s", report.runtime_secs);
    let mut text = format!("n {}\n", report.n);
    let counts = [
        ("spindle_classes", report.spindle_classes),
        ("amphicheiral", report.amphicheiral),
        ("switching_classes", report.switching_classes),
        ("distinct_charpolys", report.distinct_charpolys),
    ];
    for (name, v) in counts {
        if let Some(v) = v {
            text.push_str(&format!("{name} {v}\n"));
        }
    }
    if let Some(h) = &report.genus_histogram {
        for (g, c) in h {
            text.push_str(&format!("genus {g} {c}\n"));
        }
    }
    if let Some(c) = &report.census {
        text.push_str(&format!(
            "with_spindle {}\nwithout {}\nverified {}\nconsistent {}\n",
            c.with_spindle, c.without, c.verified, c.consistent_with_spindles
        ));
    }
    let json = serde_json::to_value(&report).map_err(|e| Error::Io(e.to_string()))?;
    Ok(Output { text, json })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_malformed_input() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
