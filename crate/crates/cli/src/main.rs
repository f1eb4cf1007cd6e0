use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permratio::enumeration::{search, DEFAULT_ENUMERATION_CAP};
use permratio::report::EdgeListJson;
use permratio::{
    broom, broom_pd, broom_permanent, rational_to_string, theorem_bound, verify, BigInt,
    BigRational, Claim, Error, ExtremalReport, FamilySpec, Graph, Objective, PermanentEngine,
    SearchOptions, Tree, VerifyOptions, VerifySummary, DEFAULT_ORDER_CAP,
};
use serde::Serialize;

mod decimal;

const DECIMAL_DIGITS: u32 = 12;

#[derive(Parser)]
#[command(
    name = "permratio",
    version,
    about = "Exact Laplacian permanents and ratios of trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// per L(G), PD(G) and pi(G) = per L(G) / PD(G).
    Ratio {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// per L(G) alone.
    Permanent {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// Check one of the identities or inequalities on a corpus of trees or
    /// seeded random instances.
    Verify {
        /// Claim tag: 2.2 2.3 2.4 2.5 2.6 2.7 2.8i 2.8ii 2.8iii 2.9 2.10 2.11 thm1.1 cat
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        instances: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Directory for counterexample JSON files, written only on failure.
        #[arg(long, default_value = "counterexamples")]
        out: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive minimum over trees of order n with diameter at least k.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Ratio)]
        objective: ObjectiveArg,
        #[command(flatten)]
        common: Common,
    },
    /// Broom permanents, degree products and ratios over a grid of (n, k).
    Table {
        /// Only this order.
        #[arg(long, conflicts_with = "n_max")]
        n: Option<usize>,
        /// Orders 3..=N.
        #[arg(long)]
        n_max: Option<usize>,
        /// Only this diameter.
        #[arg(long, conflicts_with = "k_max")]
        k: Option<usize>,
        /// Diameters 2..=K.
        #[arg(long)]
        k_max: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Input {
    /// Family spec such as `broom:5,3`, `path:5`, `star:7`, `dstar:3,4`, `cat:1,0,2`.
    #[arg(conflicts_with_all = ["edges", "family"])]
    spec: Option<String>,
    /// Edge-list file: the vertex count on the first line, then one `u v` per line.
    #[arg(long, conflicts_with = "family")]
    edges: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Largest matrix order handed to the general permanent engine.
    #[arg(long, env = "PERMRATIO_CAP", default_value_t = DEFAULT_ORDER_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Ratio,
    Permanent,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooLarge { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn run(command: Command) -> CliResult<Output> {
    match command {
        Command::Ratio { input, common } => cmd_ratio(&input, &common).map(Output::ok),
        Command::Permanent { input, common } => cmd_permanent(&input, &common).map(Output::ok),
        Command::Verify {
            lemma,
            n_max,
            instances,
            seed,
            out,
            common,
        } => {
            let claim: Claim = lemma.parse()?;
            let opts = VerifyOptions {
                n_max,
                instances,
                seed,
                jobs: common.jobs,
                order_cap: common.cap,
                enumeration_cap: DEFAULT_ENUMERATION_CAP,
            };
            cmd_verify(claim, &opts, &out, common.format)
        }
        Command::Extremal {
            n,
            k,
            objective,
            common,
        } => {
            let objective = match objective {
                ObjectiveArg::Ratio => Objective::Ratio,
                ObjectiveArg::Permanent => Objective::Permanent,
            };
            cmd_extremal(objective, n, k, &common).map(Output::ok)
        }
        Command::Table {
            n,
            n_max,
            k,
            k_max,
            common,
        } => cmd_table(n, n_max, k, k_max, common.format).map(Output::ok),
    }
}

enum Loaded {
    Tree(Tree),
    Graph(Graph),
}

impl Loaded {
    fn graph(&self) -> &Graph {
        match self {
            Loaded::Tree(t) => t.graph(),
            Loaded::Graph(g) => g,
        }
    }
}

fn load(input: &Input) -> CliResult<Loaded> {
    if let Some(path) = &input.edges {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        let g = Graph::parse_edge_list(&text)?;
        return Ok(match Tree::new(g.clone()) {
            Ok(t) => Loaded::Tree(t),
            Err(_) => Loaded::Graph(g),
        });
    }
    let spec = input
        .family
        .as_deref()
        .or(input.spec.as_deref())
        .ok_or_else(|| usage("give a family spec or --edges FILE"))?;
    let spec: FamilySpec = spec.parse()?;
    Ok(Loaded::Tree(spec.build()?))
}

/// `per L(G)`: the matching recurrence for trees, Ryser for anything else.
fn permanent_of(loaded: &Loaded, cap: usize) -> CliResult<BigInt> {
    Ok(match loaded {
        Loaded::Tree(t) => permratio::tree_permanent(t),
        Loaded::Graph(g) => PermanentEngine::with_cap(cap).graph(g)?,
    })
}

#[derive(Serialize)]
struct RatioRow {
    n: usize,
    tree: bool,
    per: String,
    pd: String,
    pi: String,
    pi_decimal: String,
}

fn cmd_ratio(input: &Input, common: &Common) -> CliResult<String> {
    let loaded = load(input)?;
    let g = loaded.graph();
    let pd = g.product_of_degrees()?;
    let per = permanent_of(&loaded, common.cap)?;
    let pi = BigRational::new(per.clone(), pd.clone());
    let row = RatioRow {
        n: g.order(),
        tree: matches!(loaded, Loaded::Tree(_)),
        per: per.to_string(),
        pd: pd.to_string(),
        pi: rational_to_string(&pi),
        pi_decimal: decimal::render(&pi, DECIMAL_DIGITS),
    };
    Ok(match common.format {
        Format::Table => format!(
            "per={} PD={} pi={} (~{})\n",
            row.per, row.pd, row.pi, row.pi_decimal
        ),
        Format::Json => json(&row),
        Format::Csv => format!(
            "n,tree,per,pd,pi,pi_decimal\n{},{},{},{},{},{}\n",
            row.n, row.tree, row.per, row.pd, row.pi, row.pi_decimal
        ),
    })
}

fn cmd_permanent(input: &Input, common: &Common) -> CliResult<String> {
    let loaded = load(input)?;
    let per = permanent_of(&loaded, common.cap)?;
    Ok(match common.format {
        Format::Table => format!("per={per}\n"),
        Format::Json => json(&serde_json::json!({
            "n": loaded.graph().order(),
            "per": per.to_string(),
        })),
        Format::Csv => format!("n,per\n{},{per}\n", loaded.graph().order()),
    })
}

fn cmd_verify(
    claim: Claim,
    opts: &VerifyOptions,
    out_dir: &Path,
    format: Format,
) -> CliResult<Output> {
    eprintln!("verifying {claim}: {}", claim.description());
    let summary = verify(claim, opts)?;
    if !summary.counterexamples.is_empty() {
        write_counterexamples(&summary, out_dir)?;
    }
    let text = match format {
        Format::Table => verify_table(&summary),
        Format::Json => json(&summary),
        Format::Csv => {
            let mut s = String::from("lemma,instances,passed,failed,seed,prng\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                summary.lemma,
                summary.instances,
                summary.passed,
                summary.failed,
                summary.seed.map(|x| x.to_string()).unwrap_or_default(),
                summary.prng.as_deref().unwrap_or(""),
            );
            s
        }
    };
    Ok(Output {
        text,
        code: if summary.ok() { 0 } else { 1 },
    })
}

fn verify_table(s: &VerifySummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lemma {}: {}", s.lemma, s.description);
    if let (Some(seed), Some(prng)) = (s.seed, &s.prng) {
        let _ = writeln!(out, "seed {seed} ({prng})");
    }
    let _ = writeln!(
        out,
        "n_max {}: {} instances, {} passed, {} failed",
        s.n_max, s.instances, s.passed, s.failed
    );
    for (label, count) in &s.breakdown {
        let _ = writeln!(out, "  {label}: {count}");
    }
    for c in &s.counterexamples {
        let _ = writeln!(
            out,
            "  counterexample #{}: {} [{}]",
            c.instance,
            c.detail,
            c.ratios.join(", ")
        );
    }
    let _ = writeln!(out, "{}", if s.ok() { "PASS" } else { "FAIL" });
    out
}

fn write_counterexamples(s: &VerifySummary, dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    for c in &s.counterexamples {
        let path = dir.join(format!("{}-{}.json", c.lemma, c.instance));
        fs::write(&path, json(c))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_extremal(objective: Objective, n: usize, k: usize, common: &Common) -> CliResult<String> {
    if n >= 12 {
        eprintln!("enumerating trees of order {n}");
    }
    let opts = SearchOptions {
        jobs: common.jobs,
        enumeration_cap: DEFAULT_ENUMERATION_CAP,
    };
    let report = search(objective, n, k, &opts)?;
    Ok(match common.format {
        Format::Table => extremal_table(&report)?,
        Format::Json => {
            let broom_tree = broom(n, k)?;
            json(&serde_json::json!({
                "report": report,
                "broom_edges": EdgeListJson::from(broom_tree.graph()),
                "minimum_decimal": decimal::render(&report.minimum, DECIMAL_DIGITS),
            }))
        }
        Format::Csv => format!(
            "objective,n,k,trees_total,trees_examined,minimum,minimum_decimal,expected,minimizers,agreement\n{},{},{},{},{},{},{},{},{},{}\n",
            objective_name(report.objective),
            report.n,
            report.k,
            report.trees_total,
            report.trees_examined,
            rational_to_string(&report.minimum),
            decimal::render(&report.minimum, DECIMAL_DIGITS),
            rational_to_string(&report.expected),
            report.minimizers.len(),
            report.agreement,
        ),
    })
}

fn objective_name(o: Objective) -> &'static str {
    match o {
        Objective::Ratio => "ratio",
        Objective::Permanent => "permanent",
    }
}

fn extremal_table(r: &ExtremalReport) -> CliResult<String> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n={} k={} objective={}",
        r.n,
        r.k,
        objective_name(r.objective)
    );
    let _ = writeln!(
        out,
        "trees: {} total, {} with diameter >= {}",
        r.trees_total, r.trees_examined, r.k
    );
    let _ = writeln!(
        out,
        "minimum: {} (~{})",
        rational_to_string(&r.minimum),
        decimal::render(&r.minimum, DECIMAL_DIGITS)
    );
    let _ = writeln!(
        out,
        "B({},{}) value: {}",
        r.n,
        r.k,
        rational_to_string(&r.expected)
    );
    let _ = writeln!(out, "minimizers: {}", r.minimizers.len());
    for code in &r.minimizers {
        let tag = if *code == r.broom {
            format!("  B({},{})", r.n, r.k)
        } else {
            String::new()
        };
        let _ = writeln!(out, "  {code}{tag}");
    }
    let b = broom(r.n, r.k)?;
    let _ = writeln!(out, "B({},{}) edges: {:?}", r.n, r.k, b.edges());
    let _ = writeln!(
        out,
        "agreement: {}",
        if r.agreement {
            "yes, unique minimizer B(n,k)"
        } else {
            "NO"
        }
    );
    Ok(out)
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    k: usize,
    perm: String,
    pd: String,
    pi: String,
    pi_decimal: String,
}

fn table_rows(
    n: Option<usize>,
    n_max: Option<usize>,
    k: Option<usize>,
    k_max: Option<usize>,
) -> CliResult<Vec<TableRow>> {
    let orders = match n {
        Some(n) => n..=n,
        None => 3..=n_max.unwrap_or(12),
    };
    let mut rows = Vec::new();
    for n in orders {
        let ks = match k {
            Some(k) => k..=k,
            None => 2..=k_max.unwrap_or(n - 1).min(n.saturating_sub(1)),
        };
        for k in ks {
            if k < 2 || k >= n {
                return Err(usage(format!("need 2 <= k <= n-1, got n={n}, k={k}")));
            }
            let pi = theorem_bound(n, k)?;
            rows.push(TableRow {
                n,
                k,
                perm: broom_permanent(n, k)?.to_string(),
                pd: broom_pd(n, k)?.to_string(),
                pi: rational_to_string(&pi),
                pi_decimal: decimal::render(&pi, DECIMAL_DIGITS),
            });
        }
    }
    if rows.is_empty() {
        return Err(usage("the (n, k) range is empty"));
    }
    Ok(rows)
}

fn cmd_table(
    n: Option<usize>,
    n_max: Option<usize>,
    k: Option<usize>,
    k_max: Option<usize>,
    format: Format,
) -> CliResult<String> {
    let rows = table_rows(n, n_max, k, k_max)?;
    Ok(match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("n,k,perm,pd,pi,pi_decimal\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.n, r.k, r.perm, r.pd, r.pi, r.pi_decimal
                );
            }
            s
        }
        Format::Table => {
            let header = ["n", "k", "perm", "pd", "pi", "pi_decimal"];
            let cells: Vec<[String; 6]> = rows
                .iter()
                .map(|r| {
                    [
                        r.n.to_string(),
                        r.k.to_string(),
                        r.perm.clone(),
                        r.pd.clone(),
                        r.pi.clone(),
                        r.pi_decimal.clone(),
                    ]
                })
                .collect();
            let widths: Vec<usize> = (0..6)
                .map(|i| {
                    cells
                        .iter()
                        .map(|c| c[i].len())
                        .max()
                        .unwrap_or(0)
                        .max(header[i].len())
                })
                .collect();
            let mut s = String::new();
            let line = |s: &mut String, cols: &[&str]| {
                let parts: Vec<String> = cols
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                let _ = writeln!(s, "{}", parts.join("  "));
            };
            line(&mut s, &header);
            for c in &cells {
                line(&mut s, &c.iter().map(String::as_str).collect::<Vec<_>>());
            }
            s
        }
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
