use std::cmp::Ordering;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use bmwsq::bijection::{compare, forward, inverse};
use bmwsq::diagrams::{in_gamma, in_lambda, predecessors, star};
use bmwsq::images::{classify_image, default_budget, verify_image, GroupDescriptor, Verdict};
use bmwsq::invariants::{bracket_oracle, bracket_to_jones, jones, kauffman_special, lickorish_check, BraidWord, InvariantValue, ORACLE_CAP};
use bmwsq::pathmodel::{generic_model, root_model, verify_tl, RelationReport};
use bmwsq::squares::{dim_audit, verify_bmw_relations};
use bmwsq::suite::run_all;
use bmwsq::tableaux::{count_osc, count_tableaux, enum_osc, enum_tableaux, OscTableau, Tableau2Row};
use bmwsq::{Diagram, Level};

/// Exact Temperley-Lieb and BMW computations.
#[derive(Parser)]
#[command(name = "bmwsq", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Young diagram queries.
    #[command(subcommand)]
    Yd(YdCmd),
    /// Standard two-row tableaux.
    #[command(subcommand)]
    Tab(TabCmd),
    /// Oscillating tableaux.
    #[command(subcommand)]
    Osc(OscCmd),
    /// Tableau-pair bijection.
    #[command(subcommand)]
    Bij(BijCmd),
    /// Temperley-Lieb path model.
    #[command(subcommand)]
    Tl(TlCmd),
    /// Square realization of the BMW generators.
    #[command(subcommand)]
    Square(SquareCmd),
    /// Jones polynomial of a braid closure.
    Jones(WordArgs),
    /// Specialized Kauffman polynomial of a braid closure.
    Kauffman(WordArgs),
    /// Compare the Kauffman value with the squared Jones value.
    Lickorish(WordArgs),
    /// Kauffman bracket by state sum.
    Oracle {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = ORACLE_CAP)]
        cap: usize,
    },
    /// Projective braid images.
    #[command(subcommand)]
    Image(ImageCmd),
    /// Run every acceptance check.
    VerifyAll {
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Args)]
struct ShapeLevel {
    #[arg(long)]
    shape: Diagram,
    #[arg(long)]
    ell: Level,
}

#[derive(Subcommand)]
enum YdCmd {
    /// Membership in Lambda(size, ell), or in Gamma(ell) without --size.
    Member {
        #[command(flatten)]
        d: ShapeLevel,
        #[arg(long)]
        size: Option<usize>,
    },
    /// The star reflection on Gamma(ell).
    Star(ShapeLevel),
    /// Diagrams one step before the shape in the level-m Bratteli graph.
    Predecessors {
        #[command(flatten)]
        d: ShapeLevel,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum TabCmd {
    Count(ShapeLevel),
    Enum(ShapeLevel),
}

#[derive(Args)]
struct OscArgs {
    #[arg(long)]
    length: usize,
    #[command(flatten)]
    d: ShapeLevel,
}

#[derive(Subcommand)]
enum OscCmd {
    Count(OscArgs),
    Enum(OscArgs),
}

#[derive(Subcommand)]
enum BijCmd {
    Forward {
        #[arg(long)]
        ell: Level,
        #[arg(long)]
        t1: Tableau2Row,
        #[arg(long)]
        t2: Tableau2Row,
    },
    Inverse {
        #[arg(long)]
        ell: Level,
        #[arg(long)]
        osc: OscTableau,
    },
    Compare {
        #[arg(long)]
        t1: Tableau2Row,
        #[arg(long)]
        t2: Tableau2Row,
    },
}

#[derive(Args)]
struct WordArgs {
    #[arg(long)]
    strands: usize,
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    word: String,
}

impl WordArgs {
    fn braid(&self) -> bmwsq::Result<BraidWord> {
        BraidWord::parse(self.strands, &self.word)
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    ell: Level,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum TlCmd {
    /// Markov trace of a braid word.
    Trace {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        ell: Level,
    },
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum SquareCmd {
    Audit {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        ell: Level,
    },
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ImageArgs {
    #[arg(long)]
    m: usize,
    #[command(flatten)]
    d: ShapeLevel,
}

#[derive(Subcommand)]
enum ImageCmd {
    Classify(ImageArgs),
    Verify {
        #[command(flatten)]
        a: ImageArgs,
        #[arg(long)]
        budget: Option<usize>,
    },
}

/// Text and JSON renderings of one result, plus whether it counts as a pass.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            ok: true,
        }
    }

    fn status(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

fn lines<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\n")
}

fn strings<T: ToString>(items: &[T]) -> Value {
    Value::from(items.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn report(r: &RelationReport) -> Output {
    let text = r.iter().map(|(k, v)| format!("{k}: {}", if *v { "ok" } else { "FAILED" }));
    Output::new(text.collect::<Vec<_>>().join("\n"), json!(r)).status(r.values().all(|v| *v))
}

fn invariant(kind: &str, v: &InvariantValue) -> Value {
    json!({
        "invariant": kind,
        "value": v.value.to_json(),
        "text": v.value.to_string(),
        "strands": v.strands,
        "exponent_sum": v.exponent_sum,
        "components": v.components,
    })
}

fn descriptor(m: usize, shape: &Diagram, ell: Level, d: &GroupDescriptor) -> Value {
    json!({
        "m": m,
        "shape": shape.to_string(),
        "ell": ell.to_string(),
        "group": d.kind.to_string(),
        "provenance": d.provenance.to_string(),
        "finite": d.is_finite(),
        "order": d.order().map(|o| o.to_string()),
    })
}

fn run(cmd: Cmd) -> bmwsq::Result<Output> {
    Ok(match cmd {
        Cmd::Yd(YdCmd::Member { d, size }) => {
            let member = match size {
                Some(j) => in_lambda(&d.shape, j, d.ell),
                None => in_gamma(&d.shape, d.ell)?,
            };
            let set = match size {
                Some(j) => format!("Lambda({j},{})", d.ell),
                None => format!("Gamma({})", d.ell),
            };
            Output::new(member.to_string(), json!({"shape": d.shape.to_string(), "set": set, "member": member}))
        }
        Cmd::Yd(YdCmd::Star(d)) => {
            let s = star(&d.shape, d.ell)?;
            Output::new(s.to_string(), json!({"shape": d.shape.to_string(), "ell": d.ell.to_string(), "star": s.to_string()}))
        }
        Cmd::Yd(YdCmd::Predecessors { d, m }) => {
            let p = predecessors(m, &d.shape, d.ell)?;
            Output::new(lines(&p), json!({"shape": d.shape.to_string(), "m": m, "predecessors": strings(&p)}))
        }
        Cmd::Tab(TabCmd::Count(d)) => {
            let n = count_tableaux(&d.shape, d.ell)?;
            Output::new(n.to_string(), json!({"count": n.to_string()}))
        }
        Cmd::Tab(TabCmd::Enum(d)) => {
            let t = enum_tableaux(&d.shape, d.ell)?;
            Output::new(lines(&t), json!({"count": t.len().to_string(), "items": strings(&t)}))
        }
        Cmd::Osc(OscCmd::Count(a)) => {
            let n = count_osc(a.length, &a.d.shape, a.d.ell)?;
            Output::new(n.to_string(), json!({"count": n.to_string()}))
        }
        Cmd::Osc(OscCmd::Enum(a)) => {
            let t = enum_osc(a.length, &a.d.shape, a.d.ell)?;
            Output::new(lines(&t), json!({"count": t.len().to_string(), "items": strings(&t)}))
        }
        Cmd::Bij(BijCmd::Forward { ell, t1, t2 }) => {
            let o = forward(&t1, &t2, ell)?;
            Output::new(o.to_string(), json!({"osc": o.to_string()}))
        }
        Cmd::Bij(BijCmd::Inverse { ell, osc }) => {
            let (t1, t2) = inverse(&osc, ell)?;
            Output::new(format!("{t1} {t2}"), json!({"t1": t1.to_string(), "t2": t2.to_string()}))
        }
        Cmd::Bij(BijCmd::Compare { t1, t2 }) => {
            let c = match compare(&t1, &t2)? {
                Ordering::Less => "LT",
                Ordering::Equal => "EQ",
                Ordering::Greater => "GT",
            };
            Output::new(c, json!({"order": c}))
        }
        Cmd::Tl(TlCmd::Trace { word, ell }) => {
            let w = word.braid()?;
            let text = match ell {
                Level::Infinite => {
                    let t = generic_model(w.strands())?;
                    t.markov_trace(&t.represent_word(w.letters())?).to_string()
                }
                Level::Finite(l) => {
                    let t = root_model(w.strands(), l)?;
                    t.markov_trace(&t.represent_word(w.letters())?).to_string()
                }
            };
            Output::new(text.clone(), json!({"strands": w.strands(), "ell": ell.to_string(), "word": w.to_string(), "trace": text}))
        }
        Cmd::Tl(TlCmd::Verify(a)) => report(&verify_tl(a.m, a.ell, a.samples, a.seed)?),
        Cmd::Square(SquareCmd::Verify(a)) => report(&verify_bmw_relations(a.m, a.ell, a.samples, a.seed)?),
        Cmd::Square(SquareCmd::Audit { m, ell }) => {
            let a = dim_audit(m, ell)?;
            let mut text = vec![
                format!("oscillating: {}", a.oscillating),
                format!("sum of squared TL dims: {}", a.from_tl_dims),
                format!("sum over blocks: {}", a.from_blocks),
            ];
            let blocks: Vec<Value> = a
                .blocks
                .iter()
                .map(|b| {
                    text.push(format!("{} {} {} {}", b.label, b.source, b.dim, b.count_osc));
                    json!({
                        "label": b.label.to_string(),
                        "source": b.source.to_string(),
                        "dim": b.dim,
                        "count_osc": b.count_osc.to_string(),
                    })
                })
                .collect();
            let v = json!({
                "m": m,
                "ell": ell.to_string(),
                "oscillating": a.oscillating.to_string(),
                "from_tl_dims": a.from_tl_dims.to_string(),
                "from_blocks": a.from_blocks.to_string(),
                "consistent": a.consistent(),
                "blocks": blocks,
            });
            Output::new(text.join("\n"), v).status(a.consistent())
        }
        Cmd::Jones(w) => {
            let v = jones(&w.braid()?)?;
            Output::new(v.value.to_string(), invariant("jones", &v))
        }
        Cmd::Kauffman(w) => {
            let v = kauffman_special(&w.braid()?)?;
            Output::new(v.value.to_string(), invariant("kauffman", &v))
        }
        Cmd::Lickorish(w) => {
            let c = lickorish_check(&w.braid()?)?;
            let v = json!({
                "equal": c.equal,
                "kauffman": c.lhs.value.to_json(),
                "jones_squared": c.rhs.to_json(),
                "kauffman_text": c.lhs.value.to_string(),
                "jones_squared_text": c.rhs.to_string(),
                "components": c.components,
            });
            Output::new(v.to_string(), v).status(c.equal)
        }
        Cmd::Oracle { word, cap } => {
            let w = word.braid()?;
            let f = bracket_oracle(&w, cap)?;
            let j = bracket_to_jones(&f);
            let agrees = j.as_ref().map(|j| *j == jones(&w).map(|v| v.value).unwrap_or_default());
            let v = json!({
                "bracket": f.to_json(),
                "bracket_text": f.render("A"),
                "jones": j.as_ref().map(|j| j.to_json()),
                "agrees": agrees,
            });
            Output::new(f.render("A"), v).status(agrees != Some(false))
        }
        Cmd::Image(ImageCmd::Classify(a)) => {
            let d = classify_image(a.m, &a.d.shape, a.d.ell)?;
            let text = format!("{} ({})", d.kind, d.provenance);
            Output::new(text, descriptor(a.m, &a.d.shape, a.d.ell, &d))
        }
        Cmd::Image(ImageCmd::Verify { a, budget }) => {
            let budget = budget.unwrap_or_else(default_budget);
            let c = verify_image(a.m, &a.d.shape, a.d.ell, budget)?;
            let e = &c.enumeration;
            let text = format!(
                "{}: enumerated {}{} (budget {budget}), predicted {}",
                c.verdict,
                e.order,
                if e.hit_cap { "+" } else { "" },
                c.descriptor.kind
            );
            let v = json!({
                "descriptor": descriptor(a.m, &a.d.shape, a.d.ell, &c.descriptor),
                "budget": budget,
                "enumerated": e.order,
                "hit_cap": e.hit_cap,
                "dim": e.dim,
                "verdict": c.verdict.to_string(),
            });
            Output::new(text, v).status(c.verdict != Verdict::Mismatch)
        }
        Cmd::VerifyAll { quick } => {
            let results = run_all(quick, |r| eprintln!("{r}"));
            let items: Vec<Value> = results
                .iter()
                .map(|r| {
                    json!({
                        "id": r.id,
                        "title": r.title,
                        "passed": r.passed(),
                        "failures": r.failures,
                        "unattainable": r.unattainable,
                        "detail": r.detail,
                        "seconds": r.elapsed.as_secs_f64(),
                    })
                })
                .collect();
            let passed = results.iter().filter(|r| r.passed()).count();
            let text = format!("{passed}/{} criteria pass", results.len());
            Output::new(text, json!({"quick": quick, "criteria": items})).status(passed == results.len())
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else if !out.text.is_empty() {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
