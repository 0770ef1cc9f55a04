//! Batch driver. Every subcommand produces a [`RunReport`]; the text output is
//! rendered from the same JSON value as the `--format json` output.
//!
//! Exit codes: 0 for success (including vanishing obstructions), 1 when a
//! nonvanishing obstruction is reported by `toda`, `extend` or `bntower`, and
//! 2 for invalid input.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::chain::{mapping_cone, ChainComplex};
use crate::error::{Error, Result};
use crate::exactla::{format_q, rank};
use crate::freesimp::{abelianize, gamma_truncation, surrogate_counterexample, window_verdict, ClassFate};
use crate::groupcyc::{cyclic_homology, nerve, FiniteGroup};
use crate::io::{parse_group_table, read_document, write_document, Document};
use crate::obstruct::{bn_totalization_tower, extend_full, extend_tower, gr2_map, toda_bracket, Extension, HomotopyChainObject, HomotopySimplicialMap, TowerVerdict};
use crate::simpfilt::{alternating_sum, FilteredComplex};
use crate::specseq::{abutment_check, pages, ProbeComplex, Variance};

#[derive(Parser, Debug)]
#[command(name = "simptot", version, about = "Exact obstruction calculus for totalizations over the rationals")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VarianceArg {
    Co,
    Contra,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homology of a chain complex.
    Homology {
        #[arg(long)]
        input: PathBuf,
    },
    /// Mapping cone of a chain map and whether the map is a quasi-isomorphism.
    Cone {
        #[arg(long)]
        map: PathBuf,
    },
    /// Homology of the totalization of a bicomplex or simplicial object.
    Tot {
        #[arg(long)]
        input: PathBuf,
    },
    /// The two-column map built from a stage-1 witness.
    Gr {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        position: usize,
    },
    /// The bracket of a given order at a given column.
    Toda {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        position: usize,
    },
    /// Extension over a window of `order` columns from `position`, or over all
    /// columns when neither is given.
    Extend {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, requires = "position")]
        order: Option<usize>,
        #[arg(long, requires = "order")]
        position: Option<usize>,
    },
    /// The cone tower of a homotopy chain complex or bicomplex.
    Bntower {
        #[arg(long)]
        input: PathBuf,
    },
    /// Spectral sequence pages of a filtered complex or bicomplex.
    Ss {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        pages: usize,
        /// A chain complex file used as the probe; the unit probe by default.
        #[arg(long)]
        probe: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "co")]
        variance: VarianceArg,
    },
    /// Hochschild, cyclic and component homology of a finite group algebra.
    Group {
        #[command(subcommand)]
        which: GroupCommand,
    },
    /// Ranks and identities of the free simplicial group `Γ(m)`.
    Gamma {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long)]
        truncation: usize,
    },
    /// Built-in examples.
    Example {
        #[command(subcommand)]
        which: ExampleCommand,
    },
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long)]
    table: PathBuf,
    /// Inclusive degree range `a..b`.
    #[arg(long, default_value = "0..4")]
    degrees: String,
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    Hh(GroupArgs),
    Hc(GroupArgs),
    Burghelea(GroupArgs),
}

#[derive(Subcommand, Debug)]
enum ExampleCommand {
    /// The tracked class in the windowed pair for `m = 2`.
    Window {
        #[arg(long, default_value_t = 3)]
        window: usize,
        #[arg(long, default_value_t = 4)]
        truncation: usize,
    },
    /// The three-column pair with a nonvanishing first bracket.
    Surrogate {
        /// Writes the pair as a homotopy simplicial map file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub results: Value,
    pub verdict: String,
    pub exit_code: i32,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render(&serde_json::to_value(self).expect("report serializes"), 0, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Object(o) if o.values().all(|x| !x.is_array() && !x.is_object()) => {
            Some(o.iter().map(|(k, x)| format!("{k}={}", scalar(x).expect("scalar"))).collect::<Vec<_>>().join(" "))
        }
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) if !x.is_object() => out.push_str(&format!("{pad}{k}: {s}\n")),
                    _ => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).expect("scalar"))),
    }
}

struct Outcome {
    results: Value,
    verdict: String,
    exit_code: i32,
}

fn ok(results: Value, verdict: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { results, verdict: verdict.into(), exit_code: 0 })
}

struct Inputs(Vec<InputDigest>);

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<Vec<u8>> {
        let bytes = std::fs::read(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        let digest = Sha256::digest(&bytes);
        let sha256 = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.0.push(InputDigest { path: path.display().to_string(), sha256 });
        Ok(bytes)
    }

    fn document(&mut self, path: &Path) -> Result<Document> {
        self.read(path)?;
        read_document(path)
    }

    fn group(&mut self, path: &Path) -> Result<FiniteGroup> {
        let bytes = self.read(path)?;
        let text = String::from_utf8(bytes).map_err(|_| Error::Parse(format!("{}: not UTF-8", path.display())))?;
        parse_group_table(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

fn wrong_kind<T>(path: &Path, doc: &Document, wanted: &str) -> Result<T> {
    Err(Error::Input(format!("{}: expected {wanted}, found {}", path.display(), doc.kind())))
}

fn homotopy_map(inputs: &mut Inputs, path: &Path) -> Result<HomotopySimplicialMap> {
    match inputs.document(path)? {
        Document::HomotopyMap(m) => Ok(m),
        other => wrong_kind(path, &other, "homotopy_simplicial_map"),
    }
}

fn filtered(inputs: &mut Inputs, path: &Path) -> Result<FilteredComplex> {
    match inputs.document(path)? {
        Document::Filtered(f) => Ok(f),
        Document::Bicomplex(b) => Ok(b.totalize()),
        Document::Simplicial(x) => Ok(alternating_sum(&x).totalize()),
        other => wrong_kind(path, &other, "filtered_complex, bicomplex or simplicial_object"),
    }
}

fn homology_table(c: &ChainComplex) -> Value {
    Value::Array(c.degrees().map(|n| json!({"degree": n, "dim": c.betti(n)})).collect())
}

fn parse_degrees(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Input(format!("degree range must look like a..b, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn fate(f: &ClassFate) -> Value {
    json!({
        "cell": [f.cell.0, f.cell.1],
        "alive_on_pages": f.alive,
        "killed_on_page": f.killed_on_page,
        "killed_from": f.killed_from.map(|(p, q)| vec![p, q]),
    })
}

fn execute(cmd: &Command, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        Command::Homology { input } => match inputs.document(input)? {
            Document::Complex(c) => ok(json!({"homology": homology_table(&c)}), "ok"),
            other => wrong_kind(input, &other, "chain_complex"),
        },
        Command::Cone { map } => match inputs.document(map)? {
            Document::ChainMap(f) => {
                let cone = mapping_cone(&f);
                let acyclic = cone.complex.is_acyclic();
                let results = json!({
                    "cone_dims": cone.complex.degrees().map(|n| json!({"degree": n, "dim": cone.complex.dim(n)})).collect::<Vec<_>>(),
                    "cone_homology": homology_table(&cone.complex),
                    "quasi_isomorphism": acyclic,
                });
                ok(results, if acyclic { "quasi-isomorphism" } else { "not a quasi-isomorphism" })
            }
            other => wrong_kind(map, &other, "chain_map"),
        },
        Command::Tot { input } => {
            let f = filtered(inputs, input)?;
            ok(json!({"homology": homology_table(f.total())}), "ok")
        }
        Command::Gr { map, position } => {
            let m = homotopy_map(inputs, map)?;
            let g = gr2_map(&m, *position)?;
            let (lo, hi) = g.source().joint_range(g.target());
            let ranks: Vec<Value> =
                (lo..=hi).map(|n| json!({"degree": n, "rank": rank(&g.induced_on_homology(n))})).collect();
            let qi = g.is_quasi_iso();
            let results = json!({"position": position, "induced_ranks": ranks, "quasi_isomorphism": qi});
            ok(results, if qi { "quasi-isomorphism" } else { "not a quasi-isomorphism" })
        }
        Command::Toda { map, order, position } => {
            let m = homotopy_map(inputs, map)?;
            let t = toda_bracket(&m, *order, *position)?;
            let vanishes = t.vanishes();
            let results = json!({
                "order": order,
                "position": position,
                "space_dim": t.space.dim(),
                "indeterminacy_dim": t.indeterminacy.dim(),
                "class": (0..t.space.dim()).map(|i| format_q(&t.class.get(i))).collect::<Vec<_>>(),
                "vanishes": vanishes,
            });
            Ok(Outcome {
                results,
                verdict: if vanishes { "vanishing" } else { "nonvanishing" }.into(),
                exit_code: if vanishes { 0 } else { 1 },
            })
        }
        Command::Extend { map, order, position } => {
            let m = homotopy_map(inputs, map)?;
            let ext = match (order, position) {
                (Some(k), Some(n)) => extend_tower(&m, *k, *n)?,
                _ => extend_full(&m)?,
            };
            Ok(match ext {
                Extension::Extended { map, corrections } => Outcome {
                    results: json!({
                        "extended": true,
                        "tot_homology_source": homology_table(map.source()),
                        "tot_homology_target": homology_table(map.target()),
                        "corrections": corrections.keys().map(|(q, c)| vec![q, c]).collect::<Vec<_>>(),
                    }),
                    verdict: "extended".into(),
                    exit_code: 0,
                },
                Extension::Obstructed(t) => Outcome {
                    results: json!({
                        "extended": false,
                        "obstruction": {
                            "order": t.order,
                            "position": t.position,
                            "space_dim": t.space.dim(),
                            "indeterminacy_dim": t.indeterminacy.dim(),
                        },
                    }),
                    verdict: "nonvanishing".into(),
                    exit_code: 1,
                },
            })
        }
        Command::Bntower { input } => {
            let x = match inputs.document(input)? {
                Document::HomotopyChain(x) => x,
                Document::Bicomplex(b) => HomotopyChainObject::from_bicomplex(&b),
                other => return wrong_kind(input, &other, "homotopy_chain_object or bicomplex"),
            };
            let tower = bn_totalization_tower(&x);
            let brackets: Vec<Value> =
                tower.brackets.iter().map(|b| json!({"n": b.n, "vanishes": b.vanishes})).collect();
            Ok(match &tower.verdict {
                TowerVerdict::Totalizable(t) => Outcome {
                    results: json!({"brackets": brackets, "totalizable": true, "homology": homology_table(t)}),
                    verdict: "totalizable".into(),
                    exit_code: 0,
                },
                TowerVerdict::Obstructed { n } => Outcome {
                    results: json!({"brackets": brackets, "totalizable": false, "first_nonvanishing": n}),
                    verdict: "nonvanishing".into(),
                    exit_code: 1,
                },
            })
        }
        Command::Ss { input, pages: r_max, probe, variance } => {
            let f = filtered(inputs, input)?;
            let variance = match variance {
                VarianceArg::Co => Variance::Covariant,
                VarianceArg::Contra => Variance::Contravariant,
            };
            let probe = match probe {
                None => ProbeComplex { variance, ..ProbeComplex::unit() },
                Some(p) => match inputs.document(p)? {
                    Document::Complex(s) => ProbeComplex::new(s, variance),
                    other => return wrong_kind(p, &other, "chain_complex"),
                },
            };
            if *r_max == 0 {
                return Err(Error::Input("--pages must be at least 1".into()));
            }
            let ss = pages(&f, &probe, *r_max);
            let report = abutment_check(&ss);
            let mismatches: Vec<Value> = report
                .mismatches
                .iter()
                .map(|(n, e, h)| json!({"degree": n, "e_infinity": e, "homology": h}))
                .collect();
            let results = json!({"pages": ss.rows(), "abutment_mismatches": mismatches});
            ok(results, if report.is_ok() { "abutment holds" } else { "abutment fails" })
        }
        Command::Group { which } => {
            let (args, what) = match which {
                GroupCommand::Hh(a) => (a, "hh"),
                GroupCommand::Hc(a) => (a, "hc"),
                GroupCommand::Burghelea(a) => (a, "burghelea"),
            };
            let g = inputs.group(&args.table)?;
            let (a, b) = parse_degrees(&args.degrees)?;
            let ch = cyclic_homology(&g, b + 1);
            let pick = |v: &[usize]| v[a..=b].to_vec();
            if what != "burghelea" {
                let dims = pick(if what == "hh" { &ch.hh } else { &ch.hc });
                return ok(json!({"degrees": (a..=b).collect::<Vec<_>>(), "dims": dims}), "ok");
            }
            let mut classes = Vec::new();
            let mut consistent = true;
            let mut sum = vec![0; b + 1];
            for (k, class) in g.conjugacy_classes().iter().enumerate() {
                let y = class[0];
                let comp = ch.ncy.set.hochschild(&ch.ncy.component(k));
                let (bc, _) = nerve(&g, &g.centralizer(y), b + 1);
                let component: Vec<usize> = (0..=b).map(|n| comp.betti(n as i64)).collect();
                let centralizer: Vec<usize> = (0..=b).map(|n| bc.betti(n as i64)).collect();
                consistent &= component == centralizer;
                for n in 0..=b {
                    sum[n] += component[n];
                }
                classes.push(json!({
                    "representative": y,
                    "class_size": class.len(),
                    "centralizer_order": g.centralizer(y).len(),
                    "component_dims": pick(&component),
                    "centralizer_homology_dims": pick(&centralizer),
                }));
            }
            consistent &= sum == ch.hh[..=b];
            let results = json!({"degrees": (a..=b).collect::<Vec<_>>(), "classes": classes, "total_dims": pick(&ch.hh)});
            ok(results, if consistent { "decomposition holds" } else { "decomposition fails" })
        }
        Command::Gamma { m, truncation } => {
            let g = gamma_truncation(*m, *truncation)?;
            let a = abelianize(&g).alternating_complex();
            let results = json!({
                "m": m,
                "ranks": (0..=*truncation).map(|n| g.rank(n)).collect::<Vec<_>>(),
                "simplicial_identities": true,
                "abelianized_homology": homology_table(&a),
                "top_degree_truncated": truncation,
            });
            ok(results, "ok")
        }
        Command::Example { which: ExampleCommand::Window { window, truncation } } => {
            let v = window_verdict(2, *truncation, *window)?;
            let results = json!({
                "m": 2,
                "window": window,
                "truncation": truncation,
                "source_class": fate(&v.c_fate),
                "target_class": fate(&v.d_fate),
                "separates": v.separates(),
            });
            ok(results, if v.separates() { "separates" } else { "does not separate" })
        }
        Command::Example { which: ExampleCommand::Surrogate { output } } => {
            let m = surrogate_counterexample();
            if let Some(p) = output {
                write_document(p, &Document::HomotopyMap(m.clone()))?;
            }
            let t = toda_bracket(&m, 2, 0)?;
            let results = json!({
                "degreewise_quasi_isomorphism": m.is_degreewise_quasi_iso(),
                "bracket": {"order": 2, "position": 0, "vanishes": t.vanishes(), "indeterminacy_dim": t.indeterminacy.dim()},
                "tot_homology_source": homology_table(m.source().totalize().total()),
                "tot_homology_target": homology_table(m.target().totalize().total()),
            });
            ok(results, if t.vanishes() { "vanishing" } else { "nonvanishing" })
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> RunReport
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let command: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let failed = |inputs: Vec<InputDigest>, msg: String| RunReport {
        command: command.clone(),
        inputs,
        results: json!({"error": msg}),
        verdict: "invalid input".into(),
        exit_code: 2,
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => return failed(Vec::new(), e.to_string().trim_end().to_string()),
    };
    let mut inputs = Inputs(Vec::new());
    match execute(&cli.command, &mut inputs) {
        Ok(o) => RunReport { command, inputs: inputs.0, results: o.results, verdict: o.verdict, exit_code: o.exit_code },
        Err(e) => failed(inputs.0, e.to_string()),
    }
}

/// Runs and renders in the requested format; returns the text to print and
/// the exit code. Help and version requests print clap's own output.
pub fn main_with_args<I, T>(argv: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    if let Err(e) = Cli::try_parse_from(&argv) {
        use clap::error::ErrorKind;
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
            let code = if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    }
    let json_out = Cli::try_parse_from(&argv).map_or(false, |c| c.format == Format::Json);
    let report = run(argv);
    let text = if json_out { report.to_json() } else { report.to_text() };
    (text, report.exit_code)
}
