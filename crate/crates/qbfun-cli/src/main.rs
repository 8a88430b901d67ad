use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qbfun::bfun::{a_function, b_multivariate, b_one_variable, superposed_diagram, LinearForm};
use qbfun::invariant::{enumerate_invariants, index, InvariantIndex};
use qbfun::json::{AFunctionJson, BFunctionJson, DiagramJson, RanksJson, SliceJson};
use qbfun::lace::{complete_diagram, diagram_to_matrices, exact_diagram};
use qbfun::oracle::{a_function_check, apply_bernstein_multi, grad_log_check, verify_one_variable, Budget};
use qbfun::quiver::{DimVector, QuiverA};
use qbfun::rank::rank_parameter;
use qbfun::render::{render_ascii, render_svg, LabeledDiagram};
use qbfun::slice::{restricted_invariant_shape, slice_representation, Restriction};
use qbfun::Error;

#[derive(Parser)]
#[command(name = "qbfun", version, about = "b-functions of type-A quiver representation spaces")]
struct Cli {
    /// Output format; `svg` applies to `diagram` only.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Args)]
struct Instance {
    /// Orientation, e.g. "1->2<-3" or "R,L".
    #[arg(long)]
    quiver: String,
    /// Dimension vector, e.g. "2,5,7".
    #[arg(long)]
    dims: String,
}

#[derive(Subcommand)]
enum Command {
    /// List the fundamental invariants as (p,q) pairs.
    Invariants(Instance),
    /// One-variable b-function of a single invariant.
    Bfun {
        #[command(flatten)]
        instance: Instance,
        /// Invariant as "p,q".
        #[arg(long)]
        pq: String,
    },
    /// Several-variable b-function of all fundamental invariants.
    BfunMulti(Instance),
    /// a-function, symbolic in m or at a given m.
    Afun {
        #[command(flatten)]
        instance: Instance,
        /// Evaluate at this exponent vector, e.g. "1,0".
        #[arg(long)]
        m: Option<String>,
    },
    /// Exact, complete or superposed lace diagram.
    Diagram {
        #[command(flatten)]
        instance: Instance,
        /// Exact diagram of this invariant, "p,q".
        #[arg(long, conflicts_with_all = ["complete", "superposed"])]
        pq: Option<String>,
        #[arg(long)]
        complete: bool,
        #[arg(long, conflicts_with = "complete")]
        superposed: bool,
    },
    /// Rank parameter of an exact diagram (or of the complete one).
    Ranks {
        #[command(flatten)]
        instance: Instance,
        /// Exact diagram of this invariant; the complete diagram when omitted.
        #[arg(long)]
        pq: Option<String>,
    },
    /// Slice representation at an invariant's closed orbit.
    Slice {
        #[command(flatten)]
        instance: Instance,
        /// Invariant whose closed orbit carries the slice, "p,q".
        #[arg(long)]
        pq: String,
        /// Also restrict this invariant to the slice.
        #[arg(long)]
        restrict: Option<String>,
    },
    /// Symbolic checks of the closed formulas.
    Verify {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
        /// Restrict one-variable and gradient checks to this invariant.
        #[arg(long)]
        pq: Option<String>,
        /// Exponent vector for the several-variable check; defaults to each unit vector.
        #[arg(long)]
        m: Option<String>,
        /// f_terms[,intermediate[,matrix_size]]; overrides QBFUN_BUDGET.
        #[arg(long)]
        budget: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Bfun,
    Multi,
    Gradlog,
    Afun,
    All,
}

enum Failure {
    Lib(Error),
    Io(String),
    Verification(Output, Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Output {
    json: Value,
    text: String,
    svg: Option<String>,
}

impl Output {
    fn new(json: Value, text: String) -> Output {
        Output { json, text, svg: None }
    }
}

fn parse_list(text: &str, what: &str) -> Result<Vec<u64>, Error> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad {what} entry '{t}'")))
        })
        .collect()
}

fn parse_pq(text: &str) -> Result<(usize, usize), Error> {
    match parse_list(text, "pq")?.as_slice() {
        &[p, q] => Ok((p as usize, q as usize)),
        _ => Err(Error::Parse(format!("expected p,q but got '{text}'"))),
    }
}

fn load(instance: &Instance) -> Result<(QuiverA, DimVector), Error> {
    let quiver = QuiverA::parse(&instance.quiver)?;
    let dims = DimVector::for_quiver(&quiver, DimVector::parse(&instance.dims)?.entries().to_vec())?;
    Ok((quiver, dims))
}

fn load_index(quiver: &QuiverA, n: &DimVector, pq: &str) -> Result<InvariantIndex, Error> {
    let (p, q) = parse_pq(pq)?;
    index(quiver, n, p, q)
}

fn pq_json(idx: &InvariantIndex) -> Value {
    json!([idx.p, idx.q])
}

fn render_forms(forms: &std::collections::BTreeMap<LinearForm, u64>) -> String {
    if forms.is_empty() {
        return "1".into();
    }
    forms
        .iter()
        .map(|(f, e)| {
            let base = if f.coeffs.len() > 1 || f.constant != 0 {
                format!("({})", f.render(false))
            } else {
                f.render(false)
            };
            if *e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    if cli.format == Format::Svg && !matches!(cli.command, Command::Diagram { .. }) {
        return Err(Error::Parse("--format svg applies to the diagram subcommand only".into()).into());
    }
    match &cli.command {
        Command::Invariants(inst) => {
            let (q, n) = load(inst)?;
            let list = enumerate_invariants(&q, &n);
            let text = list.iter().map(|i| format!("({},{})", i.p, i.q)).collect::<Vec<_>>().join("\n");
            Ok(Output::new(Value::Array(list.iter().map(pq_json).collect()), text))
        }
        Command::Bfun { instance, pq } => {
            let (q, n) = load(instance)?;
            let idx = load_index(&q, &n, pq)?;
            let b = b_one_variable(&q, &n, &idx)?;
            Ok(Output::new(json!(BFunctionJson::from(&b)), b.render()))
        }
        Command::BfunMulti(inst) => {
            let (q, n) = load(inst)?;
            let b = b_multivariate(&q, &n)?;
            let labels: Vec<String> = enumerate_invariants(&q, &n)
                .iter()
                .enumerate()
                .map(|(k, i)| format!("s{} = ({},{})", k + 1, i.p, i.q))
                .collect();
            let mut value = json!(BFunctionJson::from(&b));
            value["invariants"] = Value::Array(enumerate_invariants(&q, &n).iter().map(pq_json).collect());
            Ok(Output::new(value, format!("{}\n{}", labels.join(", "), b.render())))
        }
        Command::Afun { instance, m } => {
            let (q, n) = load(instance)?;
            let a = a_function(&q, &n)?;
            match m {
                None => Ok(Output::new(json!(AFunctionJson::from(&a)), a.render())),
                Some(m) => {
                    let m = parse_list(m, "m")?;
                    let forms = a.at(&m)?;
                    let value = json!({
                        "m": m,
                        "forms": forms
                            .iter()
                            .map(|(f, e)| json!({"form": qbfun::json::FormJson::from_form(f, false), "exponent": e}))
                            .collect::<Vec<_>>(),
                    });
                    Ok(Output::new(value, render_forms(&forms)))
                }
            }
        }
        Command::Diagram {
            instance,
            pq,
            complete,
            superposed,
        } => {
            let (q, n) = load(instance)?;
            let labeled = if *superposed {
                let (d, labels) = superposed_diagram(&q, &n)?;
                LabeledDiagram::new(q, d, labels)?
            } else if *complete {
                let d = complete_diagram(&q, &n)?;
                LabeledDiagram::unlabeled(q, d)?
            } else {
                let pq = pq
                    .as_deref()
                    .ok_or_else(|| Error::Parse("diagram needs --pq, --complete or --superposed".into()))?;
                let idx = load_index(&q, &n, pq)?;
                let d = exact_diagram(&q, &n, &idx)?;
                LabeledDiagram::unlabeled(q, d)?
            };
            let mut out = Output::new(json!(DiagramJson::from(&labeled)), render_ascii(&labeled));
            out.svg = Some(render_svg(&labeled));
            Ok(out)
        }
        Command::Ranks { instance, pq } => {
            let (q, n) = load(instance)?;
            let d = match pq {
                Some(pq) => exact_diagram(&q, &n, &load_index(&q, &n, pq)?)?,
                None => complete_diagram(&q, &n)?,
            };
            let ranks = rank_parameter(&q, &n, &diagram_to_matrices(&q, &n, &d)?)?;
            let text = ranks
                .rows()
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new(json!(RanksJson::from(&ranks)), text))
        }
        Command::Slice { instance, pq, restrict } => {
            let (q, n) = load(instance)?;
            let idx = load_index(&q, &n, pq)?;
            let slice = slice_representation(&q, &n, &idx)?;
            let mut value = json!(SliceJson::from(&slice));
            let mut lines: Vec<String> = slice
                .vertices
                .iter()
                .enumerate()
                .map(|(k, v)| format!("v{k} {} mult {}", v.interval, v.mult))
                .collect();
            lines.extend(slice.arrows.iter().map(|a| format!("v{} -> v{} x{}", a.from, a.to, a.count)));
            if let Some(other) = restrict {
                let idx_f = load_index(&q, &n, other)?;
                let restriction = restricted_invariant_shape(&q, &n, &idx, &idx_f)?;
                let b = restriction.b_function()?;
                let shape = match &restriction {
                    Restriction::Constant => json!("constant"),
                    Restriction::Reduced { quiver, dims, vertices, .. } => json!({
                        "quiver": quiver.to_string(),
                        "dims": dims.entries(),
                        "vertices": vertices.iter().map(|v| [v.i, v.j]).collect::<Vec<_>>(),
                    }),
                };
                value["restriction"] = json!({"shape": shape, "bfun": BFunctionJson::from(&b)});
                lines.push(format!("restricted ({},{}): {}", idx_f.p, idx_f.q, b.render()));
            }
            Ok(Output::new(value, lines.join("\n")))
        }
        Command::Verify {
            instance,
            check,
            pq,
            m,
            budget,
        } => {
            let (q, n) = load(instance)?;
            let budget = match budget {
                Some(b) => Budget::parse(b)?,
                None => Budget::from_env()?,
            };
            verify(&q, &n, *check, pq.as_deref(), m.as_deref(), &budget)
        }
    }
}

fn verify(
    q: &QuiverA,
    n: &DimVector,
    check: Check,
    pq: Option<&str>,
    m: Option<&str>,
    budget: &Budget,
) -> Result<Output, Failure> {
    let invariants = match pq {
        Some(pq) => vec![load_index(q, n, pq)?],
        None => enumerate_invariants(q, n),
    };
    let wants = |c: Check| check == c || check == Check::All;
    let mut results = Vec::new();
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    let mut record = |name: &str, target: String, passed: bool, detail: Value, summary: String| {
        let line = format!("{} {name} {target}: {summary}", if passed { "PASS" } else { "FAIL" });
        if !passed {
            failures.push(line.clone());
        }
        lines.push(line);
        results.push(json!({"check": name, "target": target, "passed": passed, "detail": detail}));
    };

    if wants(Check::Bfun) {
        for idx in &invariants {
            let c = verify_one_variable(q, n, idx, budget)?;
            let summary = format!("oracle {} engine {}", c.oracle.b.render(), c.engine.render());
            let detail = json!({
                "oracle": BFunctionJson::from(&c.oracle.b),
                "engine": BFunctionJson::from(&c.engine),
                "constant": c.oracle.constant.to_string(),
            });
            record("bfun", format!("({},{})", idx.p, idx.q), c.matches, detail, summary);
        }
    }
    if wants(Check::Multi) {
        let l = enumerate_invariants(q, n).len();
        let ms: Vec<Vec<u64>> = match m {
            Some(m) => vec![parse_list(m, "m")?],
            None => (0..l).map(|i| (0..l).map(|j| u64::from(i == j)).collect()).collect(),
        };
        for m in ms {
            let c = apply_bernstein_multi(q, n, &m, budget)?;
            let (o, e) = (c.vars.render(&c.oracle), c.vars.render(&c.engine));
            let summary = if c.matches { o.clone() } else { format!("oracle {o} engine {e}") };
            let detail = json!({"oracle": o, "engine": e, "constant": c.constant.to_string()});
            record("multi", format!("m={m:?}"), c.matches, detail, summary);
        }
    }
    if wants(Check::Gradlog) {
        for idx in &invariants {
            let c = grad_log_check(q, n, idx)?;
            let detail = json!({"edges": c.gradient.maps.len()});
            let summary = if c.matches {
                "gradient equals the exact diagram".to_string()
            } else {
                "gradient differs from the exact diagram".to_string()
            };
            record("gradlog", format!("({},{})", idx.p, idx.q), c.matches, detail, summary);
        }
    }
    if wants(Check::Afun) {
        let c = a_function_check(q, n, budget)?;
        for (k, l) in c.labels.iter().enumerate() {
            let (o, e) = (c.vars.render(&l.oracle), c.vars.render(&l.engine));
            let summary = if l.matches { o.clone() } else { format!("oracle {o} engine {e}") };
            let detail = json!({"oracle": o, "engine": e, "constant": l.constant.to_string()});
            record("afun", format!("s{}", k + 1), l.matches, detail, summary);
        }
    }
    let passed = failures.is_empty();
    let out = Output::new(json!({"passed": passed, "checks": results}), lines.join("\n"));
    if passed {
        Ok(out)
    } else {
        Err(Failure::Verification(out, failures))
    }
}

fn emit(out: &Output, format: Format, path: Option<&str>) -> Result<(), Failure> {
    let body = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json).expect("values serialize")),
        Format::Text => {
            let mut t = out.text.clone();
            if !t.ends_with('\n') {
                t.push('\n');
            }
            t
        }
        Format::Svg => out.svg.clone().expect("svg output checked earlier"),
    };
    match path {
        Some(p) => fs::write(p, body).map_err(|e| Failure::Io(format!("{p}: {e}"))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Budget { .. } => 4,
        Error::IdentityFailed(_) => 1,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| emit(&out, cli.format, cli.out.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Verification(out, lines)) => {
            if let Err(Failure::Io(msg)) = emit(&out, cli.format, cli.out.as_deref()) {
                eprintln!("error: {msg}");
            }
            for l in lines {
                eprintln!("{l}");
            }
            ExitCode::from(1)
        }
    }
}
