use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use resgroupoid::construct::{
    basic_from_filter_involutions, basic_from_ideal_involutions, basic_from_oml, basic_of_groupoid,
    cpg_from_lrpg, groupoid_of_basic, lrpg_from_cpg, roundtrip_check, BasicTables, ConstructError, Structure,
};
use resgroupoid::continuum::{check_monotone_grid, witness_no_right_residuum, TOLERANCE};
use resgroupoid::laws::{catalog_names, failing_assignments, parse_formula, Formula, Interpretation, LawBook};
use resgroupoid::search::{search_models, NamedLaw, SearchClass, SearchMode, SearchSpec, StopReason};
use resgroupoid::{load_model, load_model_raw, Model, ModelClass, SectionKind};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "resgroupoid", version, about = "Finite basic algebras and left-residuated po-groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a model file against its declared class.
    Validate { file: PathBuf },
    /// Check named laws or a formula on a model.
    Check {
        file: PathBuf,
        /// Catalog or law-file names; repeat or separate with commas.
        #[arg(long = "law", value_delimiter = ',', required_unless_present = "formula")]
        laws: Vec<String>,
        #[arg(long, conflicts_with = "laws")]
        formula: Option<String>,
        /// Extra `name : formula` definitions.
        #[arg(long)]
        laws_file: Option<PathBuf>,
        /// Print every failing assignment instead of the first.
        #[arg(long)]
        all_witnesses: bool,
        /// Skip validation (basic files only).
        #[arg(long)]
        raw: bool,
    },
    /// Translate a model into another class.
    Construct {
        recipe: Recipe,
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run A -> G(A) -> A or G -> A(G) -> G and compare tables.
    Roundtrip { file: PathBuf },
    /// Exhaustive model search up to isomorphism.
    Search(SearchArgs),
    /// Grid checks on the unit-interval example.
    Continuum {
        /// Defaults to 0.1, 0.2, ..., 0.9.
        #[arg(long)]
        x: Vec<f64>,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// List the built-in laws.
    Laws,
}

#[derive(Clone, Copy, ValueEnum)]
enum Recipe {
    GOfA,
    AOfG,
    FromFilterInv,
    FromIdealInv,
    FromOml,
    CpgOfLrpg,
    LrpgOfCpg,
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    class: Option<SearchClass>,
    #[arg(long, value_delimiter = ',')]
    require: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    forbid: Vec<String>,
    /// Fix the order to the one of this model file.
    #[arg(long)]
    poset: Option<PathBuf>,
    #[arg(long)]
    limit: Option<usize>,
    /// Seconds; 0 disables the budget.
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Directory for the summary and one file per model.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// `key = value` search spec; other flags override it.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    laws_file: Option<PathBuf>,
    /// Enumerate whole tables without propagation (small sizes only).
    #[arg(long)]
    naive: bool,
}

/// An error with a chosen exit code.
struct Exit(u8, anyhow::Error);

fn usage(e: impl Into<anyhow::Error>) -> Exit {
    Exit(EXIT_USAGE, e.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Check {
            file,
            laws,
            formula,
            laws_file,
            all_witnesses,
            raw,
        } => check(&file, &laws, formula.as_deref(), laws_file.as_deref(), all_witnesses, raw),
        Command::Construct { recipe, file, output } => construct(recipe, &file, output.as_deref()),
        Command::Roundtrip { file } => roundtrip(&file),
        Command::Search(args) => search(args),
        Command::Continuum { x, step } => continuum(&x, step),
        Command::Laws => {
            for name in catalog_names() {
                println!("{name}");
            }
            Ok(0)
        }
    };
    match r {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn load(path: &Path) -> Result<Model, Exit> {
    load_model(path).with_context(|| format!("loading {}", path.display())).map_err(usage)
}

fn validate(path: &Path) -> Result<u8, Exit> {
    match load_model(path) {
        Ok(m) => {
            println!("valid {} of size {}", m.class(), m.size());
            Ok(0)
        }
        Err(e) => {
            eprintln!("invalid: {e}");
            Ok(EXIT_FAIL)
        }
    }
}

fn law_book(path: Option<&Path>) -> Result<LawBook, Exit> {
    match path {
        None => Ok(LawBook::new()),
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display())).map_err(usage)?;
            LawBook::with_file(&text).map_err(usage)
        }
    }
}

/// The structure laws are evaluated in. Ortholattices and involution
/// families are checked through the basic algebra they induce.
enum Subject {
    Model(Model),
    Raw(BasicTables),
}

impl Subject {
    fn interpretation(&self) -> Result<&dyn Interpretation, Exit> {
        match self {
            Subject::Raw(t) => Ok(t),
            Subject::Model(Model::Basic(a)) => Ok(a),
            Subject::Model(Model::Lrpg(g)) => Ok(g),
            Subject::Model(Model::Cpg(c)) => Ok(c),
            Subject::Model(m) => Err(usage(anyhow!("a {} model has no operations to check", m.class()))),
        }
    }
}

fn subject(path: &Path, raw: bool) -> Result<Subject, Exit> {
    if raw {
        let f = load_model_raw(path).with_context(|| format!("loading {}", path.display())).map_err(usage)?;
        if f.class != ModelClass::Basic {
            return Err(usage(anyhow!("--raw supports basic files only")));
        }
        return Ok(Subject::Raw(BasicTables {
            oplus: f.oplus.expect("required section"),
            neg: f.neg.expect("required section"),
        }));
    }
    let m = load(path)?;
    let induced = match &m {
        Model::Ortho(o) => basic_from_oml(o),
        Model::Involutions(f) if f.kind() == SectionKind::Filters => basic_from_filter_involutions(f),
        Model::Involutions(f) => basic_from_ideal_involutions(f),
        _ => return Ok(Subject::Model(m)),
    };
    let a = induced.map_err(|e| Exit(EXIT_FAIL, anyhow!("no induced basic algebra: {e}")))?;
    eprintln!("note: checking the basic algebra induced by the {} model", m.class());
    Ok(Subject::Model(Model::Basic(a)))
}

fn check(
    path: &Path,
    laws: &[String],
    formula: Option<&str>,
    laws_file: Option<&Path>,
    all: bool,
    raw: bool,
) -> Result<u8, Exit> {
    let book = law_book(laws_file)?;
    let targets: Vec<(String, Formula)> = match formula {
        Some(text) => vec![(text.to_string(), parse_formula(text).map_err(usage)?)],
        None => laws
            .iter()
            .map(|n| Ok((n.clone(), book.resolve(n)?)))
            .collect::<Result<_, resgroupoid::laws::LawError>>()
            .map_err(usage)?,
    };
    let s = subject(path, raw)?;
    let m = s.interpretation()?;
    let mut code = 0;
    for (name, f) in &targets {
        let fails = failing_assignments(f, m).map_err(usage)?;
        match fails.first() {
            None => println!("{name}: holds"),
            Some(first) => {
                code = EXIT_FAIL;
                println!("{name}: fails at {first} ({} failing assignments)", fails.len());
                if all {
                    for a in &fails[1..] {
                        println!("  {a}");
                    }
                }
            }
        }
    }
    Ok(code)
}

fn construct(recipe: Recipe, path: &Path, out: Option<&Path>) -> Result<u8, Exit> {
    let m = load(path)?;
    let fail = |e: ConstructError| Exit(EXIT_FAIL, e.into());
    let wrong = |want: &str| usage(anyhow!("this recipe expects a {want} model, got {}", m.class()));
    let text = match (recipe, &m) {
        (Recipe::GOfA, Model::Basic(a)) => Model::Lrpg(groupoid_of_basic(a)).to_text(),
        (Recipe::AOfG, Model::Lrpg(g)) => {
            let t = basic_of_groupoid(g);
            if let Err(e) = t.validate() {
                eprintln!("note: the result is not a basic algebra: {e}");
            }
            t.to_file().to_text()
        }
        (Recipe::FromFilterInv, Model::Involutions(f)) => {
            Model::Basic(basic_from_filter_involutions(f).map_err(fail)?).to_text()
        }
        (Recipe::FromIdealInv, Model::Involutions(f)) => {
            Model::Basic(basic_from_ideal_involutions(f).map_err(fail)?).to_text()
        }
        (Recipe::FromOml, Model::Ortho(o)) => Model::Basic(basic_from_oml(o).map_err(fail)?).to_text(),
        (Recipe::CpgOfLrpg, Model::Lrpg(g)) => Model::Cpg(cpg_from_lrpg(g).map_err(fail)?).to_text(),
        (Recipe::LrpgOfCpg, Model::Cpg(c)) => Model::Lrpg(lrpg_from_cpg(c).map_err(fail)?).to_text(),
        (Recipe::GOfA, _) => return Err(wrong("basic")),
        (Recipe::AOfG | Recipe::CpgOfLrpg, _) => return Err(wrong("lrpg")),
        (Recipe::FromFilterInv | Recipe::FromIdealInv, _) => return Err(wrong("involutions")),
        (Recipe::FromOml, _) => return Err(wrong("ortho")),
        (Recipe::LrpgOfCpg, _) => return Err(wrong("cpg")),
    };
    match out {
        Some(p) => fs::write(p, text)
            .with_context(|| format!("writing {}", p.display()))
            .map_err(usage)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn roundtrip(path: &Path) -> Result<u8, Exit> {
    let m = load(path)?;
    let s = match &m {
        Model::Basic(a) => Structure::Basic(a),
        Model::Lrpg(g) => Structure::Groupoid(g),
        _ => return Err(usage(anyhow!("roundtrip expects a basic or lrpg model, got {}", m.class()))),
    };
    let r = match roundtrip_check(s) {
        Ok(r) => r,
        Err(e) => {
            println!("hypotheses fail: {e}");
            return Ok(EXIT_FAIL);
        }
    };
    for l in &r.laws {
        match &l.witness {
            None => println!("{}: holds", l.law),
            Some(w) => println!("{}: fails at {w}", l.law),
        }
    }
    println!("div and jk: {}", yes(r.theorem1));
    println!("dneg and w: {}", yes(r.theorem2));
    println!("tables identical: {}", yes(r.identical));
    println!("orders coincide: {}", yes(r.orders_coincide));
    Ok(if r.identical && r.orders_coincide { 0 } else { EXIT_FAIL })
}

fn resolve(book: &LawBook, names: &[String]) -> Result<Vec<NamedLaw>, Exit> {
    names
        .iter()
        .map(|n| {
            Ok(NamedLaw {
                name: n.clone(),
                formula: book.resolve(n).map_err(usage)?,
            })
        })
        .collect()
}

fn search(a: SearchArgs) -> Result<u8, Exit> {
    let book = law_book(a.laws_file.as_deref())?;
    let mut spec = match &a.spec {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display())).map_err(usage)?;
            SearchSpec::parse(&text, &book, p.parent()).map_err(usage)?
        }
        None => SearchSpec::new(a.size.ok_or_else(|| usage(anyhow!("--size or --spec is required")))?, SearchClass::Lrpg),
    };
    if let Some(n) = a.size {
        spec.size = n;
    }
    if let Some(c) = a.class {
        spec.class = c;
    }
    spec.require.extend(resolve(&book, &a.require)?);
    spec.forbid.extend(resolve(&book, &a.forbid)?);
    if let Some(p) = &a.poset {
        spec.poset = Some(resgroupoid::search::model_poset(&load(p)?).clone());
    }
    if a.limit.is_some() {
        spec.limit = a.limit;
    }
    if let Some(b) = a.budget {
        if !(b >= 0.0 && b.is_finite()) {
            return Err(usage(anyhow!("invalid budget {b}")));
        }
        spec.budget = (b > 0.0).then(|| Duration::from_secs_f64(b));
    }
    if let Some(j) = a.jobs {
        spec.jobs = j.max(1);
    }
    if a.naive {
        spec.mode = SearchMode::Naive;
    }
    let r = search_models(&spec).map_err(usage)?;

    let names = |ls: &[NamedLaw]| ls.iter().map(|l| l.name.as_str()).collect::<Vec<_>>().join(",");
    let mut summary = format!(
        "size {} class {} require [{}] forbid [{}]\nposets {} leaves {} pruned {} models {}\nexhaustive {} elapsed {:.3}s\n",
        spec.size,
        spec.class,
        names(&spec.require),
        names(&spec.forbid),
        r.stats.posets_tried,
        r.stats.leaves,
        r.stats.pruned,
        r.models.len(),
        yes(r.exhausted),
        r.elapsed.as_secs_f64(),
    );
    if let Some(s) = r.stop {
        summary.push_str(match s {
            StopReason::Budget => "stopped: budget exceeded\n",
            StopReason::Limit => "stopped: limit reached\n",
        });
    }
    let width = r.models.len().to_string().len().max(3);
    for (i, f) in r.models.iter().enumerate() {
        summary.push_str(&format!("model-{:0width$} {}\n", i + 1, f.form.digest()));
    }
    print!("{summary}");
    if let Some(dir) = &a.output {
        let io = |e: std::io::Error| usage(anyhow::Error::from(e).context(format!("writing to {}", dir.display())));
        fs::create_dir_all(dir).map_err(io)?;
        fs::write(dir.join("summary.txt"), &summary).map_err(io)?;
        for (i, f) in r.models.iter().enumerate() {
            let file = dir.join(format!("model-{:0width$}.{}", i + 1, f.model.class()));
            fs::write(file, f.model.to_text()).map_err(io)?;
        }
    }
    Ok(match r.stop {
        Some(StopReason::Budget) => EXIT_BUDGET,
        _ => 0,
    })
}

fn continuum(xs: &[f64], step: f64) -> Result<u8, Exit> {
    let xs: Vec<f64> = if xs.is_empty() {
        (1..=9).map(|k| k as f64 / 10.0).collect()
    } else {
        xs.to_vec()
    };
    let mut ok = true;
    for &x in &xs {
        let w = witness_no_right_residuum(x, step).map_err(usage)?;
        println!(
            "x={} y={:.12} x*1={} samples={} max(x*z - y)={:.3e} certificate {}",
            w.x,
            w.y,
            w.x_times_one,
            w.samples,
            w.max_excess,
            if w.is_valid() { "valid" } else { "INVALID" }
        );
        ok &= w.is_valid();
    }
    let r = check_monotone_grid(step).map_err(usage)?;
    println!(
        "monotone grid step {step}: {} points, {} triples, max violation {:.3e}, {} above {TOLERANCE:e}",
        r.points, r.triples, r.max_violation, r.violations
    );
    ok &= r.violations == 0;
    Ok(if ok { 0 } else { EXIT_FAIL })
}
