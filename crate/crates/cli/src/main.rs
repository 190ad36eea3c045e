mod input;
mod report;

use std::process::ExitCode;

use anyhow::{anyhow, bail};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ratgit::endo;
use ratgit::g2::{self, Convention, Coweight, RootSystem, Strategy, Word};
use ratgit::limit::{self, flatten, ConjugationModel};
use ratgit::orbit::{self, Budget, FlagModel, OrbitModel};
use ratgit::poly;
use ratgit::tuple;
use ratgit::{Field, Matrix};
use serde_json::{json, Value};

use report::{Format, Report};

#[derive(Parser)]
#[command(name = "ratgit", version, about = "Cocharacter limits and closed orbits over arbitrary fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Field descriptor, e.g. Q, GF(5), GF(2^4), "Fp(t):p=2", "ext(Q;X^2-2;r)".
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized kernels.
    #[arg(long, global = true, default_value_t = tuple::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true)]
    max_group: Option<usize>,
    #[arg(long, global = true)]
    max_nodes: Option<usize>,
    #[arg(long, global = true)]
    max_subspaces: Option<usize>,
    #[arg(long, global = true)]
    max_chains: Option<usize>,
}

impl Common {
    fn budget(&self) -> anyhow::Result<Budget> {
        let d = Budget::default();
        let pick = |v: Option<usize>, dflt: usize, name: &str| match v {
            Some(0) => Err(anyhow!("--{name} must be positive")),
            Some(x) => Ok(x),
            None => Ok(dflt),
        };
        Ok(Budget {
            max_group: pick(self.max_group, d.max_group, "max-group")?,
            max_nodes: pick(self.max_nodes, d.max_nodes, "max-nodes")?,
            max_subspaces: pick(self.max_subspaces, d.max_subspaces, "max-subspaces")?,
            max_chains: pick(self.max_chains, d.max_chains, "max-chains")?,
        })
    }

    fn field(&self) -> Option<&str> {
        self.field.as_deref()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Square-freeness and factorization of polynomials.
    Poly {
        #[command(subcommand)]
        op: PolyOp,
        #[command(flatten)]
        common: Common,
    },
    /// Endomorphisms of k^n under conjugation.
    Endo {
        #[command(subcommand)]
        op: EndoOp,
        #[command(flatten)]
        common: Common,
    },
    /// Accessibility graphs and antisymmetry checks.
    Graph {
        #[command(subcommand)]
        op: GraphOp,
        #[command(flatten)]
        common: Common,
    },
    /// Tuples of matrices under simultaneous conjugation.
    Tuple {
        #[command(subcommand)]
        op: TupleOp,
        #[command(flatten)]
        common: Common,
    },
    /// Root-group words in G2.
    G2 {
        #[command(subcommand)]
        op: G2Op,
        #[command(flatten)]
        common: Common,
    },
    /// Worked examples.
    Demo {
        #[command(subcommand)]
        op: DemoOp,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum PolyOp {
    Squarefree {
        /// Polynomial literal, JSON document, or file.
        #[arg(long)]
        poly: String,
    },
    Factor {
        #[arg(long)]
        poly: String,
    },
}

#[derive(Args)]
struct MatrixArg {
    /// Matrix JSON {"descriptor", "rows"}, a bare rows list, or a file.
    #[arg(long)]
    matrix: String,
}

#[derive(Args)]
struct CocharArg {
    /// Cocharacter JSON {"weights", "conjugator"} or a file.
    #[arg(long)]
    cocharacter: Option<String>,
    /// Diagonal weights, e.g. 1,0,-1.
    #[arg(long, allow_hyphen_values = true)]
    weights: Option<String>,
}

#[derive(Subcommand)]
enum EndoOp {
    Analyze {
        #[command(flatten)]
        m: MatrixArg,
    },
    Limit {
        #[command(flatten)]
        m: MatrixArg,
        #[command(flatten)]
        c: CocharArg,
    },
    Semisimplify {
        #[command(flatten)]
        m: MatrixArg,
    },
    Witness {
        #[command(flatten)]
        m: MatrixArg,
    },
    RuConjugate {
        #[command(flatten)]
        m: MatrixArg,
        /// Target matrix; defaults to the witness limit.
        #[arg(long)]
        limit: Option<String>,
        #[command(flatten)]
        c: CocharArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Endo,
    Tuple,
    Rsquares,
    Pgl2,
    Fromf4,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: ModelKind,
    /// Matrix size for the endo and tuple models.
    #[arg(long)]
    n: Option<usize>,
    /// Tuple length for the tuple model.
    #[arg(long)]
    r: Option<usize>,
}

#[derive(Subcommand)]
enum GraphOp {
    Access {
        #[command(flatten)]
        model: ModelArgs,
        /// Seed point: comma-separated coordinates, or matrix / tuple JSON.
        #[arg(long, allow_hyphen_values = true)]
        seed_point: String,
    },
    Antisymmetry {
        #[command(flatten)]
        model: ModelArgs,
        /// Corpus size bound for exhaustive enumeration.
        #[arg(long, default_value_t = 1 << 12)]
        limit: usize,
    },
}

#[derive(Subcommand)]
enum TupleOp {
    Semisimple {
        /// Tuple JSON {"descriptor", "matrices"} or a file.
        #[arg(long)]
        tuple: String,
    },
    Gcr {
        #[arg(long)]
        tuple: String,
    },
}

#[derive(Args)]
struct G2Field {
    /// Characteristic; the field is GF(p). Without it, --field or Q.
    #[arg(long)]
    p: Option<u64>,
    /// Signs on the four extraspecial pairs, e.g. 1,-1,1,1.
    #[arg(long, allow_hyphen_values = true)]
    convention: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Leftmost,
    Rightmost,
}

#[derive(Subcommand)]
enum G2Op {
    Limit {
        #[command(flatten)]
        g: G2Field,
        #[arg(long)]
        word: String,
        /// Coweight x,y in the coroot basis.
        #[arg(long, allow_hyphen_values = true)]
        coweight: Option<String>,
        /// Coroot of a root literal such as 3a+2b.
        #[arg(long, allow_hyphen_values = true)]
        coroot: Option<String>,
    },
    Collect {
        #[command(flatten)]
        g: G2Field,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Leftmost)]
        strategy: StrategyArg,
    },
    Figure {
        #[command(flatten)]
        g: G2Field,
    },
}

#[derive(Subcommand)]
enum DemoOp {
    Rsquares,
    Pgl2,
    Fromf4,
    Insepext,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => match err.downcast_ref::<ratgit::Error>() {
            Some(e) => {
                let obj = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
                println!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
                ExitCode::from(2)
            }
            None => {
                eprintln!("error: {err:#}");
                ExitCode::from(1)
            }
        },
    }
}

fn run(cmd: Command) -> anyhow::Result<String> {
    let (name, common, report) = match cmd {
        Command::Poly { op, common } => {
            let r = poly_cmd(op, &common)?;
            ("poly", common, r)
        }
        Command::Endo { op, common } => {
            let r = endo_cmd(op, &common)?;
            ("endo", common, r)
        }
        Command::Graph { op, common } => {
            let r = graph_cmd(op, &common)?;
            ("graph", common, r)
        }
        Command::Tuple { op, common } => {
            let r = tuple_cmd(op, &common)?;
            ("tuple", common, r)
        }
        Command::G2 { op, common } => {
            let r = g2_cmd(op, &common)?;
            ("g2", common, r)
        }
        Command::Demo { op, common } => {
            let r = demo_cmd(op, &common)?;
            ("demo", common, r)
        }
    };
    report.render(name, common.format, common.seed)
}

fn poly_cmd(op: PolyOp, c: &Common) -> anyhow::Result<Report> {
    match op {
        PolyOp::Squarefree { poly: arg } => {
            let (f, p) = input::poly(&arg, c.field())?;
            let sf = poly::squarefree_test(&p)?;
            let parts = poly::squarefree_decomposition(&p)?;
            let result = json!({
                "poly": p.to_string(),
                "squarefree": sf,
                "separable": poly::is_separable(&p)?,
                "radical": poly::radical(&p)?.to_string(),
                "decomposition": parts.iter().map(|(g, m)| json!({"factor": g.to_string(), "multiplicity": m})).collect::<Vec<_>>(),
            });
            let text = format!("{p}: square-free {sf}\n");
            Ok(Report::new("squarefree", &f, json!({"poly": arg}), result, text))
        }
        PolyOp::Factor { poly: arg } => {
            let (f, p) = input::poly(&arg, c.field())?;
            let fr = poly::factor(&p)?;
            let mut text = format!("{p} =");
            text += &format!(" {}", f.format(&fr.unit));
            for (g, m) in &fr.factors {
                text += &if *m == 1 { format!(" ({g})") } else { format!(" ({g})^{m}") };
            }
            text.push('\n');
            let mut result = fr.to_json(&f);
            result["poly"] = json!(p.to_string());
            result["irreducible"] = json!(fr.is_irreducible());
            Ok(Report::new("factor", &f, json!({"poly": arg}), result, text))
        }
    }
}

fn endo_cmd(op: EndoOp, c: &Common) -> anyhow::Result<Report> {
    match op {
        EndoOp::Analyze { m } => {
            let l = input::matrix(&m.matrix, c.field())?;
            let f = &l.value;
            let verdict = endo::is_cocharacter_closed(f)?;
            let geo = endo::is_geometrically_closed(f)?;
            let cls = endo::invariant_factors(f)?;
            let ss = endo::semisimplification(f)?;
            let result = json!({
                "cocharacter_closed": verdict.closed,
                "geometrically_closed": geo,
                "verdict": verdict.to_json(),
                "invariant_factors": cls.to_json(),
                "orbit_key": cls.key(),
                "orbit_dimension": cls.orbit_dimension(),
                "semisimplification": ss.key(),
            });
            let text = format!(
                "cocharacter-closed: {}\ngeometrically closed: {}\nminimal polynomial: {}\ninvariant factors: {}\n",
                verdict.closed,
                geo,
                verdict.min_poly,
                cls.key()
            );
            Ok(Report::new("analyze", &l.field, json!({"matrix": l.raw}), result, text))
        }
        EndoOp::Limit { m, c: ch } => {
            let l = input::matrix(&m.matrix, c.field())?;
            let n = l.value.rows;
            if !l.value.is_square() {
                return Err(ratgit::Error::NonSquare.into());
            }
            let lambda = input::cocharacter(&l.field, ch.cocharacter.as_deref(), ch.weights.as_deref())?;
            let model = ConjugationModel::endo(&l.field, n);
            let r = limit::limit(&l.value.data, &lambda, &model)?;
            let value = match &r.value {
                Some(v) => Some(limit::unflatten(&l.field, n, v)?.remove(0)),
                None => None,
            };
            let result = json!({
                "exists": r.exists,
                "limit": value.as_ref().map(|m| matrix_json(m)),
                "classification": r.classification.as_str(),
            });
            let text = match &value {
                Some(m) => format!("limit:\n{}\n", m.to_text()),
                None => "limit does not exist\n".into(),
            };
            Ok(Report::new(
                "limit",
                &l.field,
                json!({"matrix": l.raw, "cocharacter": lambda.to_json()}),
                result,
                text,
            ))
        }
        EndoOp::Semisimplify { m } => {
            let l = input::matrix(&m.matrix, c.field())?;
            let ss = endo::semisimplification(&l.value)?;
            let text = format!("{}\n{}\n", ss.key(), ss.representative.to_text());
            let mut result = ss.to_json();
            result["orbit_key"] = json!(ss.key());
            result["matrix"] = matrix_json(&ss.representative);
            Ok(Report::new("semisimplify", &l.field, json!({"matrix": l.raw}), result, text))
        }
        EndoOp::Witness { m } => {
            let l = input::matrix(&m.matrix, c.field())?;
            let (lambda, lim) = endo::witness_cocharacter(&l.value)?;
            let text = format!("cocharacter {:?}\nlimit:\n{}\n", lambda.weights, lim.to_text());
            let result = json!({"cocharacter": lambda.to_json(), "limit": matrix_json(&lim)});
            Ok(Report::new("witness", &l.field, json!({"matrix": l.raw}), result, text))
        }
        EndoOp::RuConjugate { m, limit: target, c: ch } => {
            let l = input::matrix(&m.matrix, c.field())?;
            let (lambda, lim) = match (target, ch.cocharacter.is_some() || ch.weights.is_some()) {
                (Some(t), true) => {
                    let lambda = input::cocharacter(&l.field, ch.cocharacter.as_deref(), ch.weights.as_deref())?;
                    (lambda, input::matrix(&t, Some(&l.field.descriptor()))?.value)
                }
                (None, false) => endo::witness_cocharacter(&l.value)?,
                _ => bail!("--limit and a cocharacter go together"),
            };
            let u = endo::ru_conjugator(&l.value, &lim, &lambda)?;
            let text = format!("u =\n{}\n", u.to_text());
            let result = json!({
                "conjugator": matrix_json(&u),
                "limit": matrix_json(&lim),
                "cocharacter": lambda.to_json(),
            });
            Ok(Report::new("ru-conjugate", &l.field, json!({"matrix": l.raw}), result, text))
        }
    }
}

pub fn matrix_json(m: &Matrix) -> Value {
    json!({"descriptor": m.field.descriptor(), "rows": m.to_string_rows()})
}

fn default_field(c: &Common, kind: ModelKind) -> anyhow::Result<Field> {
    let fallback = match kind {
        ModelKind::Fromf4 => "GF(5)",
        ModelKind::Pgl2 => "Fp(t):p=2",
        ModelKind::Endo | ModelKind::Tuple => "GF(2)",
        ModelKind::Rsquares => "Q",
    };
    input::resolve_field(c.field(), Some(fallback))
}

fn build_model(kind: ModelKind, f: &Field, n: usize, r: usize, budget: &Budget) -> anyhow::Result<Box<dyn OrbitModel>> {
    Ok(match kind {
        ModelKind::Endo => Box::new(FlagModel::new(f, n, 1, *budget)?),
        ModelKind::Tuple => Box::new(FlagModel::new(f, n, r, *budget)?),
        ModelKind::Rsquares => Box::new(orbit::SquaresLineModel::new(f)?),
        ModelKind::Pgl2 => Box::new(orbit::Pgl2Model::new(f)?),
        ModelKind::Fromf4 => Box::new(orbit::sl2_gm_model(f, budget)?),
    })
}

fn graph_cmd(op: GraphOp, c: &Common) -> anyhow::Result<Report> {
    let budget = c.budget()?;
    match op {
        GraphOp::Access { model, seed_point } => {
            let (field, point, n, r) = match model.model {
                ModelKind::Endo => {
                    let l = input::matrix(&seed_point, c.field().or(Some("GF(2)")))?;
                    let n = l.value.rows;
                    (l.field, flatten(&[l.value]), n, 1)
                }
                ModelKind::Tuple => {
                    let l = input::tuple(&seed_point, c.field().or(Some("GF(2)")))?;
                    let (n, r) = (l.value[0].rows, l.value.len());
                    (l.field, flatten(&l.value), n, r)
                }
                kind => {
                    let f = default_field(c, kind)?;
                    let p = input::point(&f, &seed_point)?;
                    (f, p, 0, 0)
                }
            };
            let m = build_model(model.model, &field, n, r, &budget)?;
            let g = orbit::accessibility_graph(&point, m.as_ref(), &budget)?;
            let mut text = String::new();
            for node in &g.nodes {
                text += &format!("{} depth {}{}: {}\n", node.id, node.depth, if node.closed { " closed" } else { "" }, node.rendered);
            }
            for e in &g.edges {
                text += &format!("{} -> {} via {:?}\n", e.from, e.to, e.cocharacter.weights);
            }
            let dot = orbit::export_dot(&g);
            Ok(Report::new("access", &field, json!({"model": m.name(), "seed_point": seed_point}), g.to_json(), text).with_dot(dot))
        }
        GraphOp::Antisymmetry { model, limit: cap } => {
            let field = default_field(c, model.model)?;
            let (n, r) = (model.n.unwrap_or(2), model.r.unwrap_or(1));
            let m = build_model(model.model, &field, n, r, &budget)?;
            let corpus: Vec<Vec<ratgit::Elem>> = match model.model {
                ModelKind::Endo | ModelKind::Tuple => orbit::all_vectors(&field, n * n * r, cap)?,
                _ => orbit::all_vectors(&field, m.action().dim(), cap)?,
            };
            let rep = orbit::check_antisymmetry(m.as_ref(), &corpus, &budget)?;
            let text = format!(
                "{} points, {} orbits, antisymmetric: {}\n",
                rep.points,
                rep.orbits,
                rep.holds()
            );
            Ok(Report::new(
                "antisymmetry",
                &field,
                json!({"model": m.name(), "n": n, "r": r, "limit": cap}),
                rep.to_json(),
                text,
            ))
        }
    }
}

fn tuple_cmd(op: TupleOp, c: &Common) -> anyhow::Result<Report> {
    match op {
        TupleOp::Semisimple { tuple: arg } => {
            let l = input::tuple(&arg, c.field())?;
            let rep = tuple::is_semisimple_seeded(&l.value, c.seed)?;
            let text = format!(
                "semisimple: {}\nalgebra dimension {}, radical dimension {}\n",
                rep.semisimple, rep.algebra_dim, rep.radical_dim
            );
            let mut result = rep.to_json();
            let graded = tuple::semisimplify_tuple(&l.value)?;
            result["semisimplification"] = json!({
                "descriptor": l.field.descriptor(),
                "matrices": graded.iter().map(|m| m.to_string_rows()).collect::<Vec<_>>(),
            });
            Ok(Report::new("semisimple", &l.field, json!({"tuple": l.raw}), result, text))
        }
        TupleOp::Gcr { tuple: arg } => {
            let l = input::tuple(&arg, c.field())?;
            let rep = tuple::gcr_over_k(&l.value)?;
            let text = format!("G-completely reducible over k: {}\n", rep.gcr);
            let result = json!({"gcr": rep.gcr, "module": rep.module.to_json()});
            Ok(Report::new("gcr", &l.field, json!({"tuple": l.raw}), result, text))
        }
    }
}

fn g2_setup(g: &G2Field, c: &Common) -> anyhow::Result<(Field, RootSystem)> {
    let field = match (g.p, c.field()) {
        (Some(p), None) => g2::figure_field(p)?,
        (None, f) => input::resolve_field(f, None)?,
        (Some(_), Some(_)) => bail!("--p and --field are exclusive"),
    };
    let convention = match &g.convention {
        Some(s) => {
            let v = input::weights(s)?;
            let signs: [i64; 4] = v.try_into().map_err(|_| anyhow!("a convention has four signs"))?;
            Convention { signs }
        }
        None => Convention::default(),
    };
    Ok((field, RootSystem::new(convention)?))
}

fn g2_cmd(op: G2Op, c: &Common) -> anyhow::Result<Report> {
    match op {
        G2Op::Limit { g, word, coweight, coroot } => {
            let (field, sys) = g2_setup(&g, c)?;
            let l = match (coweight, coroot) {
                (Some(s), None) => Coweight::parse(&s)?,
                (None, Some(s)) => Coweight::parse_coroot(&s)?,
                _ => bail!("give exactly one of --coweight and --coroot"),
            };
            let w = Word::parse(&field, &word)?;
            let collected = sys.collect(&w, Strategy::LeftmostFirst)?;
            let lim = sys.word_limit(&w, l)?;
            let text = match &lim {
                Some(v) => format!("{v}\n"),
                None => "limit does not exist\n".into(),
            };
            let result = json!({
                "collected": collected.to_string(),
                "exists": lim.is_some(),
                "limit": lim.map(|v| v.to_string()),
                "coweight": [l.x, l.y],
            });
            Ok(Report::new(
                "limit",
                &field,
                json!({"word": word, "convention": sys.convention().to_json()}),
                result,
                text,
            ))
        }
        G2Op::Collect { g, word, strategy } => {
            let (field, sys) = g2_setup(&g, c)?;
            let st = match strategy {
                StrategyArg::Leftmost => Strategy::LeftmostFirst,
                StrategyArg::Rightmost => Strategy::RightmostFirst,
            };
            let w = Word::parse(&field, &word)?;
            let out = sys.collect(&w, st)?;
            let result = json!({"normal_form": out.to_string(), "letters": out.letters.len()});
            Ok(Report::new(
                "collect",
                &field,
                json!({"word": word, "convention": sys.convention().to_json()}),
                result,
                format!("{out}\n"),
            ))
        }
        G2Op::Figure { g } => {
            let p = g.p.ok_or_else(|| anyhow!("g2 figure needs --p"))?;
            let (field, sys) = g2_setup(&g, c)?;
            let rep = g2::figure_edges(p, sys.convention())?;
            Ok(Report::new("figure", &field, json!({"p": p, "convention": sys.convention().to_json()}), rep.to_json(), rep.to_text())
                .with_dot(rep.to_dot()))
        }
    }
}

fn demo_cmd(op: DemoOp, c: &Common) -> anyhow::Result<Report> {
    let budget = c.budget()?;
    match op {
        DemoOp::Rsquares => report::demo_rsquares(&budget),
        DemoOp::Pgl2 => report::demo_pgl2(),
        DemoOp::Fromf4 => report::demo_fromf4(&budget),
        DemoOp::Insepext => report::demo_insepext(),
    }
}
