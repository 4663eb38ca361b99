//! The `mlab` command line: argument parsing, input loading and dispatch.
//!
//! Every subcommand loads its structure files, makes one library call and
//! serializes the result into a [`ResultDocument`].

use std::path::Path;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, DEFAULT_ENUM_BOUND};
use crate::initiality::{algebra_family, is_C_initial_bounded, terminal_C_initial_bounded, unique_map_to_dual};
use crate::laws::run_laws;
use crate::measuring::{compose_measurings, convolution_algebra, enumerate_measurings, is_measuring, Measuring};
use crate::mixed_gf::{gf_convolution, gf_measuring_count, MooreCoalgebra};
use crate::report::ResultDocument;
use crate::structures::{
    lazy_saturation, quotient_algebras, subcoalgebras, FinAlgebra, PointedSuccAlgebra, StepCoalgebra,
    DEFAULT_QUOTIENT_BOUND, DEFAULT_SUBCOALGEBRA_BOUND,
};
use crate::text::{
    coalgebra_dot, measuring_document, parse_phi, print_algebra, print_coalgebra, print_gf_algebra, Code, Diagnostic,
    Kind, MeasuringDocument, Structure, Workspace,
};
use crate::universal::{
    classify_universal, dual_algebra, dual_coalgebra_classified, measuring_graph, measuring_tensor,
};

#[derive(Parser, Debug)]
#[command(name = "mlab", version, about = "Measurings between finite algebras and coalgebras")]
pub struct Cli {
    /// Largest carrier size for families and law checks.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_size: usize,
    /// Cap on enumeration search spaces; larger requests are refused.
    #[arg(long, global = true, env = "MLAB_ENUM_BOUND", default_value_t = DEFAULT_ENUM_BOUND)]
    pub enum_bound: u64,
    /// Add wall-clock timing to the output (breaks byte stability).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Index of a state of a coalgebra.
    Index { coalgebra: String, element: String },
    /// Subcoalgebra and quotient posets.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Check, enumerate and compose measurings.
    #[command(subcommand)]
    Measure(MeasureCmd),
    /// The convolution algebra [C, B].
    Conv { coalgebra: String, algebra: String },
    /// Universal measurings between chains and algebras.
    #[command(subcommand)]
    Umeas(UmeasCmd),
    /// Duals into and out of the naturals.
    #[command(subcommand)]
    Dual(DualCmd),
    /// The measuring tensor C▷A.
    Tensor {
        coalgebra: String,
        algebra: String,
        /// List the homomorphisms into this algebra as measurings.
        #[arg(long)]
        homs_into: Option<String>,
    },
    /// C-initiality on bounded families.
    #[command(subcommand)]
    Cinitial(CinitialCmd),
    /// Automata measuring algebras of (2 × X^Σ) + 1.
    #[command(subcommand)]
    Gf(GfCmd),
    /// Run every law suite and print the pass/fail matrix.
    Laws {
        /// Replace the lax structure map by a broken one (negative control).
        #[arg(long)]
        corrupt_nabla: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum PosetCmd {
    Sub {
        coalgebra: String,
        #[arg(long, default_value_t = DEFAULT_SUBCOALGEBRA_BOUND)]
        bound: usize,
    },
    Quot {
        algebra: String,
        #[arg(long, default_value_t = DEFAULT_QUOTIENT_BOUND)]
        bound: usize,
    },
}

#[derive(Args, Debug)]
pub struct Triple {
    pub coalgebra: String,
    pub source: String,
    pub target: String,
}

#[derive(Subcommand, Debug)]
pub enum MeasureCmd {
    Check {
        #[command(flatten)]
        triple: Triple,
        phi: String,
    },
    Enum {
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        count_only: bool,
    },
    Compose {
        g: String,
        f: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum UmeasCmd {
    Classify {
        source: String,
        target: String,
    },
    Graph {
        source: String,
        target: String,
        /// Print the graph in DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum DualCmd {
    /// The chain of [C, N].
    Alg { coalgebra: String },
    /// The universal measuring from A into N.
    Coalg {
        algebra: String,
        /// Print the coalgebra state graph in DOT.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum CinitialCmd {
    Check {
        algebra: String,
        coalgebra: String,
    },
    Terminal {
        coalgebra: String,
        #[arg(long, default_value_t = 4)]
        size_bound: usize,
    },
    Dualmap {
        algebra: String,
        coalgebra: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum GfCmd {
    Conv {
        automaton: String,
        algebra: String,
    },
    Count {
        automaton: String,
        source: String,
        target: String,
    },
}

/// Everything a run produces; the binary only copies it out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Diagnostic(Diagnostic),
    Library(Error),
    Io(String),
}

impl From<Diagnostic> for Failure {
    fn from(d: Diagnostic) -> Self {
        Failure::Diagnostic(d)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

enum Rendered {
    Json(Value),
    Dot(String),
}

/// Loaded inputs, keyed by their command-line spelling.
struct Inputs {
    ws: Workspace,
    digests: Vec<(String, Vec<u8>)>,
}

impl Inputs {
    fn read(&mut self, arg: &str) -> Result<String, Failure> {
        let text = if Path::new(arg).exists() || !arg.contains('{') {
            std::fs::read_to_string(arg).map_err(|e| Failure::Io(format!("{arg}: {e}")))?
        } else {
            arg.to_string()
        };
        self.digests.push((arg.to_string(), text.as_bytes().to_vec()));
        Ok(text)
    }

    fn load(&mut self, arg: &str, kind: Kind) -> Result<Structure, Failure> {
        if let Some(s) = self.ws.get(kind, arg) {
            return Ok(s.clone());
        }
        let text = self.read(arg)?;
        let got = self.ws.load(arg, &text)?;
        if got != kind {
            return Err(Diagnostic::new(
                Code::Syntax,
                format!("expected {} {}, found {}", article(kind), kind.keyword(), got.keyword()),
                1,
                1,
            )
            .in_source(arg)
            .into());
        }
        Ok(self.ws.get(kind, arg).expect("just loaded").clone())
    }

    fn algebra(&mut self, arg: &str) -> Result<PointedSuccAlgebra, Failure> {
        match self.load(arg, Kind::Algebra)? {
            Structure::Algebra(a) => Ok(a),
            _ => unreachable!("kind checked"),
        }
    }

    fn coalgebra(&mut self, arg: &str) -> Result<StepCoalgebra, Failure> {
        match self.load(arg, Kind::Coalgebra)? {
            Structure::Coalgebra(c) => Ok(c),
            _ => unreachable!("kind checked"),
        }
    }

    fn automaton(&mut self, arg: &str) -> Result<MooreCoalgebra, Failure> {
        match self.load(arg, Kind::Automaton)? {
            Structure::Automaton(m) => Ok(m),
            _ => unreachable!("kind checked"),
        }
    }

    fn gf_algebra(&mut self, arg: &str) -> Result<FinAlgebra, Failure> {
        match self.load(arg, Kind::GfAlgebra)? {
            Structure::GfAlgebra(a) => Ok(a),
            _ => unreachable!("kind checked"),
        }
    }
}

fn article(k: Kind) -> &'static str {
    match k {
        Kind::Algebra | Kind::Automaton => "an",
        _ => "a",
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let command: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut inputs = Inputs {
        ws: Workspace::new(),
        digests: Vec::new(),
    };
    let start = Instant::now();
    match dispatch(&cli, &mut inputs) {
        Ok(Rendered::Dot(dot)) => Outcome {
            code: 0,
            stdout: dot,
            stderr: String::new(),
        },
        Ok(Rendered::Json(output)) => {
            let mut doc = ResultDocument::new(command, output);
            for (name, bytes) in &inputs.digests {
                doc = doc.with_input(name.clone(), bytes);
            }
            if cli.timing {
                doc = doc.with_timing(start.elapsed());
            }
            Outcome {
                code: 0,
                stdout: doc.render() + "\n",
                stderr: String::new(),
            }
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Diagnostic(d) => (1, d.to_string()),
                Failure::Io(m) => (1, format!("error: {m}")),
                Failure::Library(e) if e.is_refusal() => (2, format!("refused: {e}")),
                Failure::Library(e) => (1, format!("error: {e}")),
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: msg + "\n",
            }
        }
    }
}

fn dispatch(cli: &Cli, inp: &mut Inputs) -> Result<Rendered, Failure> {
    let bound = cli.enum_bound;
    let saturation = usize::try_from(bound).unwrap_or(usize::MAX);
    let out = match &cli.command {
        Command::Index { coalgebra, element } => {
            let c = inp.coalgebra(coalgebra)?;
            let s = c.carrier().position_of_name(element).ok_or_else(|| {
                Diagnostic::new(Code::UnknownElement, format!("unknown state `{element}`"), 1, 1).in_source(coalgebra)
            })?;
            json!({ "element": element, "index": c.index(s) })
        }
        Command::Poset(PosetCmd::Sub { coalgebra, bound }) => {
            let c = inp.coalgebra(coalgebra)?;
            to_value(&subcoalgebras(&c, *bound)?.view())
        }
        Command::Poset(PosetCmd::Quot { algebra, bound }) => {
            let a = inp.algebra(algebra)?;
            to_value(&quotient_algebras(&a, *bound)?.view(a.carrier()))
        }
        Command::Measure(MeasureCmd::Check { triple, phi }) => {
            let (c, a, b) = load_triple(inp, triple)?;
            let text = inp.read(phi)?;
            let table = parse_phi(&text, c.carrier(), a.carrier(), b.carrier()).map_err(|d| d.in_source(phi))?;
            to_value(&is_measuring(&c.to_fin(), &a.to_fin(), &b.to_fin(), &table)?)
        }
        Command::Measure(MeasureCmd::Enum { triple, count_only }) => {
            let (c, a, b) = load_triple(inp, triple)?;
            let ms = enumerate_measurings(&c.to_fin(), &a.to_fin(), &b.to_fin(), bound)?;
            if *count_only {
                json!({ "count": ms.len() })
            } else {
                json!({ "count": ms.len(), "measurings": ms.iter().map(Measuring::to_json).collect::<Vec<_>>() })
            }
        }
        Command::Measure(MeasureCmd::Compose { g, f }) => {
            let gm = measuring_doc(inp, g)?;
            let fm = measuring_doc(inp, f)?;
            measuring_document(&compose_measurings(&gm, &fm)?)?
        }
        Command::Conv { coalgebra, algebra } => {
            let c = inp.coalgebra(coalgebra)?;
            let b = inp.algebra(algebra)?;
            let conv = PointedSuccAlgebra::from_fin(&convolution_algebra(&c.to_fin(), &b.to_fin(), bound)?)?;
            json!({ "size": conv.len(), "algebra": print_algebra(&conv).trim_end() })
        }
        Command::Umeas(UmeasCmd::Classify { source, target }) => {
            let a = inp.algebra(source)?;
            let b = inp.algebra(target)?;
            let cl = classify_universal(&a, &b)?;
            json!({ "name": cl.name.to_string(), "classification": cl })
        }
        Command::Umeas(UmeasCmd::Graph { source, target, dot }) => {
            let a = inp.algebra(source)?;
            let b = inp.algebra(target)?;
            let g = measuring_graph(&a, &b, bound)?;
            if *dot {
                return Ok(Rendered::Dot(g.to_dot()));
            }
            json!({
                "graph": g.view(),
                "loops": g.loops(),
                "longest_path_to_terminal": g.longest_path_to_terminal(),
            })
        }
        Command::Dual(DualCmd::Alg { coalgebra }) => {
            let c = inp.coalgebra(coalgebra)?;
            let chain = lazy_saturation(&dual_algebra(&c), saturation)?;
            json!({ "prefix": chain.prefix, "cycle": chain.cycle(), "top": chain.top(), "chain": chain.elements })
        }
        Command::Dual(DualCmd::Coalg { algebra, dot }) => {
            let a = inp.algebra(algebra)?;
            let name = dual_coalgebra_classified(&a)?;
            let coalgebra = name.to_coalgebra();
            if *dot {
                let c = coalgebra.ok_or_else(|| Error::Precondition(format!("{name} has no finite coalgebra")))?;
                return Ok(Rendered::Dot(coalgebra_dot(&c)));
            }
            json!({
                "name": name.to_string(),
                "kind": name,
                "coalgebra": coalgebra.map(|c| print_coalgebra(&c).trim_end().to_string()),
            })
        }
        Command::Tensor {
            coalgebra,
            algebra,
            homs_into,
        } => {
            let c = inp.coalgebra(coalgebra)?;
            let a = inp.algebra(algebra)?;
            let t = measuring_tensor(&c, &a);
            let mut out = json!({ "tensor": t.view(), "critical_pairs": t.critical_pairs() });
            if let Some(b_arg) = homs_into {
                let b = inp.algebra(b_arg)?;
                let homs = t.homs_into(&b, bound)?;
                let ms: Vec<Value> = homs
                    .iter()
                    .map(|h| {
                        Measuring::new(c.to_fin(), a.to_fin(), b.to_fin(), t.hom_to_measuring(h)).map(|m| m.to_json())
                    })
                    .collect::<Result<_, _>>()?;
                out["homs"] = json!({ "count": homs.len(), "measurings": ms });
            }
            out
        }
        Command::Cinitial(CinitialCmd::Check { algebra, coalgebra }) => {
            let a = inp.algebra(algebra)?;
            let c = inp.coalgebra(coalgebra)?;
            to_value(&is_C_initial_bounded(&a, &c, &algebra_family(cli.max_size), bound)?)
        }
        Command::Cinitial(CinitialCmd::Terminal { coalgebra, size_bound }) => {
            let c = inp.coalgebra(coalgebra)?;
            let r = terminal_C_initial_bounded(&c, *size_bound, bound)?;
            let text = r.algebra.as_ref().map(|a| print_algebra(a).trim_end().to_string());
            json!({ "search": r, "algebra": text })
        }
        Command::Cinitial(CinitialCmd::Dualmap { algebra, coalgebra }) => {
            let a = inp.algebra(algebra)?;
            let c = inp.coalgebra(coalgebra)?;
            let d = unique_map_to_dual(&a, &c, saturation)?;
            let images: serde_json::Map<String, Value> = a
                .carrier()
                .iter()
                .zip(&d.images)
                .map(|(x, v)| (x.to_string(), json!(v)))
                .collect();
            json!({ "images": images, "chain": d.chain, "homs_into_reachable": d.homs_into_reachable })
        }
        Command::Gf(GfCmd::Conv { automaton, algebra }) => {
            let m = inp.automaton(automaton)?;
            let a = inp.gf_algebra(algebra)?;
            let conv = gf_convolution(&m, &a, bound)?;
            json!({ "size": conv.len(), "algebra": print_gf_algebra(&conv).map(|s| s.trim_end().to_string()) })
        }
        Command::Gf(GfCmd::Count {
            automaton,
            source,
            target,
        }) => {
            let m = inp.automaton(automaton)?;
            let a = inp.gf_algebra(source)?;
            let b = inp.gf_algebra(target)?;
            json!({ "count": gf_measuring_count(&m, &a, &b, bound)? })
        }
        Command::Laws { corrupt_nabla } => to_value(&run_laws(cli.max_size, *corrupt_nabla)),
    };
    Ok(Rendered::Json(out))
}

fn load_triple(
    inp: &mut Inputs,
    t: &Triple,
) -> Result<(StepCoalgebra, PointedSuccAlgebra, PointedSuccAlgebra), Failure> {
    Ok((
        inp.coalgebra(&t.coalgebra)?,
        inp.algebra(&t.source)?,
        inp.algebra(&t.target)?,
    ))
}

fn measuring_doc(inp: &mut Inputs, arg: &str) -> Result<Measuring, Failure> {
    let text = inp.read(arg)?;
    let doc = MeasuringDocument::parse(&text).map_err(|d| {
        let source = match &d.source {
            Some(field) => format!("{arg}#{field}"),
            None => arg.to_string(),
        };
        d.in_source(source)
    })?;
    Ok(doc.to_measuring()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_structures_and_exit_codes() {
        let out = run([
            "mlab",
            "index",
            "coalgebra idsucc { elements 0 1; step 0->stop 1->0 }",
            "1",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["output"]["index"], 1);

        let bad = run(["mlab", "index", "coalgebra idsucc { elements 0; step 0->1 }", "0"]);
        assert_eq!(bad.code, 1);
        assert!(bad.stderr.contains("UNKNOWN_ELEMENT"), "{}", bad.stderr);

        let refused = run([
            "mlab",
            "--enum-bound",
            "2",
            "conv",
            "coalgebra idsucc { elements 0 1; step 0->stop 1->0 }",
            "algebra idsucc { elements 0 1; zero 0; succ 0->1 1->1 }",
        ]);
        assert_eq!(refused.code, 2, "{}", refused.stderr);
    }

    #[test]
    fn wrong_kind_is_a_diagnostic() {
        let out = run([
            "mlab",
            "dual",
            "alg",
            "algebra idsucc { elements 0; zero 0; succ 0->0 }",
        ]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("expected a coalgebra"), "{}", out.stderr);
    }
}
