use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use kmcrystal::crystal::{explore, Direction, ExploreOptions, DEFAULT_BUDGET};
use kmcrystal::lattice::{bl_factorization_check, check_ell_condition, verify_lattice_embedding, LatticeFunctionals};
use kmcrystal::monomial::{good_monomial_violation, CMatrix, Monomial, MonomialCrystal, MonomialRule};
use kmcrystal::scan::{
    psi_duality_random, run_scan, scan_verdict, semi_normal_random, shift_random, verdict_counts, CChoice, RuleChoice,
    ScanConfig,
};
use kmcrystal::verify::{
    check_component_is_blam, check_crystal_axioms, check_normal, check_semi_normal, phi_rank2_random,
    stembridge_check, CheckReport, Verdict,
};
use kmcrystal::{CartanSpec, CrystalGraph, Weight};

/// Exit code for usage and input errors.
const EXIT_ERROR: u8 = 3;
const DEFAULT_SEED: u64 = 20240601;

#[derive(Parser)]
#[command(name = "kmcrystal", version, about = "Monomial and lattice crystal experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Explore a monomial crystal from one seed and write the graph.
    Generate(GenerateArgs),
    /// Run the crystal checks on a graph file or a freshly generated graph.
    Check(CheckArgs),
    /// Sweep types, dominant weights and rules, comparing each component with B(lambda).
    ScanConjecture(ScanArgs),
    /// Pair condition, embedding test and factorization for a lattice crystal.
    Lattice(LatticeArgs),
    /// Random test of the psi duality between M_c and M_{c^T}.
    DualPsiTest(RandomArgs),
    /// Random test of the shift isomorphism M_c -> M_{c'}.
    ShiftTest(RandomArgs),
    /// Random test of semi-normality and e/f round trips in M_c.
    SemiNormalTest(RandomArgs),
    /// Random test of the rank-two morphism from K into M_c.
    PhiTest(RandomArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Original,
    Variant,
}

#[derive(Args, Clone)]
struct CrystalArgs {
    /// Cartan type (`A2`, `G2`, `A1~`, ...) or an inline GCM such as `[[2,-1],[-3,2]]`.
    #[arg(long)]
    cartan: Option<String>,
    #[arg(long, value_enum, default_value_t = RuleArg::Original)]
    rule: RuleArg,
    /// `c` for the variant rule, as `i,j:value;...` over labels or as JSON.
    #[arg(long)]
    c: Option<String>,
    /// Accept `c_ij + c_ji >= 1` instead of `= 1`.
    #[arg(long)]
    relaxed: bool,
    /// Seed monomial, e.g. `Y1(0) Y2(1)^-1`.
    #[arg(long, conflicts_with = "hw")]
    seed_monomial: Option<String>,
    /// Seed `prod_i Y_i(0)^{a_i}` for the weight `a_1,a_2,...`.
    #[arg(long)]
    hw: Option<String>,
    /// Depth bound; required for non-finite types.
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long, env = "KMCRYSTAL_NODE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    crystal: CrystalArgs,
    /// Graph JSON output; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Graph JSON written by `generate`. Without it the graph is generated.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[command(flatten)]
    crystal: CrystalArgs,
    /// Compare with B(lambda) for this weight instead of the graph's highest weight.
    #[arg(long)]
    lam: Option<String>,
    /// Report JSON output; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Comma-separated Cartan types.
    #[arg(long, default_value = "A1,A2,A3,B2,G2")]
    types: String,
    #[arg(long, value_enum, default_value_t = RuleArg::Original)]
    rule: RuleArg,
    /// One fixed `c` (variant rule).
    #[arg(long, conflicts_with = "c_range")]
    c: Option<String>,
    /// All `c` with entries in `lo,hi` (variant rule). Default: entries in {0, 1}.
    #[arg(long, allow_hyphen_values = true)]
    c_range: Option<String>,
    #[arg(long)]
    relaxed: bool,
    /// Largest pairing `<h_i, lambda>` in the sweep.
    #[arg(long, default_value_t = 2)]
    max_pairing: i64,
    /// Depth bound for non-finite types.
    #[arg(long, default_value_t = 5)]
    depth: usize,
    #[arg(long, env = "KMCRYSTAL_NODE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long)]
    skip_zero: bool,
    /// CSV output; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for the graphs and reports of failing rows.
    #[arg(long)]
    dump_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// `l_i(alpha_j) = -delta_ij + delta_{i+1,j}`, indices mod the rank.
    Cyclic,
    /// `-1` on the diagonal, `1` elsewhere.
    PlusMinusOne,
    /// `-A` off the diagonal, `-1` on it.
    NegGcm,
    /// `L = -identity`.
    MinusIdentity,
}

#[derive(Args)]
struct LatticeArgs {
    #[arg(long)]
    cartan: String,
    /// `{"L": [[...]]}`, a bare matrix, or a path to a file holding either.
    #[arg(long = "L", conflicts_with = "preset")]
    l: Option<String>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    cartan: String,
    /// `c` as for `generate`; the standard `c_ij = [i > j]` when omitted.
    #[arg(long)]
    c: Option<String>,
    #[arg(long, default_value_t = 500)]
    count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_cartan(s: &str) -> Result<CartanSpec> {
    CartanSpec::parse(s).with_context(|| format!("cannot parse Cartan data `{s}`"))
}

fn parse_weight(s: &str, cartan: &CartanSpec) -> Result<Weight> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("weight `{s}` is not a comma-separated list of integers"))?;
    let w = Weight(v);
    cartan.check_weight(&w)?;
    Ok(w)
}

fn parse_c(s: &str, cartan: &CartanSpec, relaxed: bool) -> Result<CMatrix> {
    let c = if s.trim_start().starts_with('{') {
        CMatrix::from_json(s, cartan)?
    } else {
        CMatrix::parse_cli(s, cartan, relaxed)?
    };
    Ok(c)
}

fn split_types(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let (mut depth, mut cur) = (0i32, String::new());
    for ch in s.chars() {
        match ch {
            '[' | '{' => depth += 1,
            ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out.into_iter().map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// JSON to `out` (or stdout), summary to stderr.
fn emit_report(report: &CheckReport, out: Option<&Path>) -> Result<ExitCode> {
    let mut json = report.to_json();
    json.push('\n');
    write_or_print(out, &json)?;
    eprint!("{}", report.summary());
    Ok(ExitCode::from(report.verdict.exit_code() as u8))
}

struct Generated {
    graph: CrystalGraph,
    monomials: Vec<Monomial>,
    over_budget: bool,
}

fn generate(args: &CrystalArgs) -> Result<(CartanSpec, Generated)> {
    let Some(cartan) = &args.cartan else {
        bail!("--cartan is required");
    };
    let cartan = parse_cartan(cartan)?;
    let rule = match args.rule {
        RuleArg::Original => {
            if args.c.is_some() {
                bail!("--c only applies to the variant rule");
            }
            MonomialRule::Original
        }
        RuleArg::Variant => MonomialRule::Variant(match &args.c {
            Some(c) => parse_c(c, &cartan, args.relaxed)?,
            None => CMatrix::standard(cartan.rank()),
        }),
    };
    let crystal = MonomialCrystal::new(cartan.clone(), rule)?;
    let seed = match (&args.seed_monomial, &args.hw) {
        (Some(m), _) => crystal.parse(m)?,
        (None, Some(hw)) => Monomial::highest(&parse_weight(hw, &cartan)?),
        (None, None) => bail!("give --seed-monomial or --hw"),
    };
    if !cartan.is_finite() && args.depth.is_none() {
        bail!("{} is not of finite type; give --depth", cartan);
    }
    let mut opts = ExploreOptions::default().direction(Direction::Both).budget(args.budget);
    if let Some(d) = args.depth {
        opts = opts.depth(d);
    }
    Ok(match explore(&crystal, &[seed], opts) {
        Ok(ex) => (
            cartan,
            Generated {
                graph: ex.graph,
                monomials: ex.elements,
                over_budget: false,
            },
        ),
        Err(over) => {
            let ex = *over.partial;
            (
                cartan,
                Generated {
                    graph: ex.graph,
                    monomials: ex.elements,
                    over_budget: true,
                },
            )
        }
    })
}

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode> {
    let (cartan, gen) = generate(&args.crystal)?;
    let g = &gen.graph;
    let mut json = g.to_json();
    json.push('\n');
    write_or_print(args.out.as_deref(), &json)?;
    if let Some(dot) = &args.dot {
        fs::write(dot, g.to_dot()).with_context(|| format!("cannot write {}", dot.display()))?;
    }
    let hw: Vec<&str> = g.hw_elements().into_iter().map(|h| g.nodes[h].label.as_str()).collect();
    eprintln!("type: {cartan}");
    eprintln!("nodes: {}", g.len());
    eprintln!("edges: {}", g.edges().count());
    eprintln!("highest weight elements: {}", if hw.is_empty() { "none".into() } else { hw.join("; ") });
    match good_monomial_violation(&gen.monomials) {
        None => eprintln!("all monomials good"),
        Some(v) => eprintln!(
            "not good: {} has y_i(n) > 0 > y_i(n+1) at (i, n) = ({}, {})",
            g.nodes[v.node].label,
            cartan.label(v.i),
            v.n
        ),
    }
    eprintln!(
        "truncated: {}{}",
        g.truncated,
        if gen.over_budget { " (node budget exceeded)" } else { "" }
    );
    Ok(if g.truncated || gen.over_budget { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode> {
    let (g, over_budget) = match &args.graph {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            (CrystalGraph::from_json(&text).with_context(|| format!("invalid graph in {}", path.display()))?, false)
        }
        None => {
            let (_, gen) = generate(&args.crystal)?;
            (gen.graph, gen.over_budget)
        }
    };
    let mut r = CheckReport::new("check");
    r.stats.nodes = g.len();
    r.stats.depth = g.depth_bound;
    if over_budget {
        r.inconclusive("node budget exceeded; partial graph checked");
    }
    let axioms = check_crystal_axioms(&g);
    let axioms_ok = axioms.verdict == Verdict::Pass;
    r.push_child(axioms);
    if !axioms_ok {
        r.note("the remaining checks need a graph satisfying the crystal axioms and were skipped");
        return emit_report(&r, args.out.as_deref());
    }
    r.push_child(check_semi_normal(&g));
    let lam = match &args.lam {
        Some(s) => Some(parse_weight(s, &g.cartan)?),
        None => {
            let hw = g.hw_elements();
            (hw.len() == 1 && g.components().len() == 1).then(|| g.nodes[hw[0]].wt.clone())
        }
    };
    match lam {
        Some(lam) if g.cartan.is_finite() || args.lam.is_some() => {
            r.note(format!("compared with B{lam}"));
            r.push_child(check_component_is_blam(&g, &lam));
        }
        _ => {
            r.push_child(check_normal(&g));
            if g.cartan.is_simply_laced() && !g.truncated {
                r.push_child(stembridge_check(&g));
            }
            if !g.cartan.is_finite() {
                r.inconclusive(format!("{} type: no B(lambda) oracle", g.cartan.kind()));
            }
        }
    }
    emit_report(&r, args.out.as_deref())
}

fn cmd_scan(args: ScanArgs) -> Result<ExitCode> {
    let types = split_types(&args.types)
        .iter()
        .map(|t| parse_cartan(t))
        .collect::<Result<Vec<_>>>()?;
    if types.is_empty() {
        bail!("--types is empty");
    }
    if args.max_pairing < 0 {
        bail!("--max-pairing must be nonnegative");
    }
    let rule = match args.rule {
        RuleArg::Original => {
            if args.c.is_some() || args.c_range.is_some() {
                bail!("--c and --c-range only apply to the variant rule");
            }
            RuleChoice::Original
        }
        RuleArg::Variant => RuleChoice::Variant(match (&args.c, &args.c_range) {
            (Some(c), _) => {
                for t in &types {
                    parse_c(c, t, args.relaxed)?;
                }
                CChoice::Fixed { spec: c.clone(), relaxed: args.relaxed }
            }
            (None, Some(range)) => {
                let (lo, hi) = range
                    .split_once(',')
                    .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                    .with_context(|| format!("--c-range `{range}` should be `lo,hi`"))?;
                if lo > hi {
                    bail!("--c-range `{range}` is empty");
                }
                CChoice::Range { lo, hi, relaxed: args.relaxed }
            }
            (None, None) if args.relaxed => CChoice::Range { lo: 0, hi: 1, relaxed: true },
            (None, None) => CChoice::AllBinary,
        }),
    };
    let mut cfg = ScanConfig::new(types, rule);
    cfg.max_pairing = args.max_pairing;
    cfg.depth = args.depth;
    cfg.budget = args.budget;
    cfg.skip_zero = args.skip_zero;
    let rows = run_scan(&cfg)?;

    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r)?;
    }
    let table = String::from_utf8(w.into_inner()?)?;
    write_or_print(args.out.as_deref(), &table)?;

    if let Some(dir) = &args.dump_dir {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for (k, r) in rows.iter().enumerate().filter(|(_, r)| r.verdict == Verdict::Fail) {
            if let Some(g) = &r.graph {
                fs::write(dir.join(format!("row{k}.json")), g.to_json())?;
            }
            if let Some(rep) = &r.report {
                fs::write(dir.join(format!("row{k}.report.json")), rep.to_json())?;
            }
        }
    }

    let counts: Vec<String> = verdict_counts(&rows).iter().map(|(v, n)| format!("{v} {n}")).collect();
    let good = rows.iter().filter(|r| r.has_good_violation() && r.good_violation != "-").count();
    eprintln!("{} rows: {}", rows.len(), counts.join(", "));
    eprintln!("rows with a non-good monomial: {good}");
    for (k, r) in rows.iter().enumerate().filter(|(_, r)| r.verdict == Verdict::Fail) {
        eprintln!("FAIL row {k}: {} {} c={} lambda={}", r.cartan, r.rule, r.c, r.lambda);
        if let Some(rep) = &r.report {
            eprint!("{}", rep.summary());
        }
    }
    let verdict = scan_verdict(&rows);
    eprintln!("scan verdict: {verdict}");
    Ok(ExitCode::from(verdict.exit_code() as u8))
}

fn parse_functionals(s: &str) -> Result<LatticeFunctionals> {
    let text = if Path::new(s).is_file() {
        fs::read_to_string(s).with_context(|| format!("cannot read {s}"))?
    } else {
        s.to_string()
    };
    let t = text.trim();
    let l = if t.starts_with('[') {
        let m: Vec<Vec<i64>> = serde_json::from_str(t).context("L is not an integer matrix")?;
        LatticeFunctionals::new(m)?
    } else {
        LatticeFunctionals::from_json(t)?
    };
    Ok(l)
}

fn cmd_lattice(args: LatticeArgs) -> Result<ExitCode> {
    let cartan = parse_cartan(&args.cartan)?;
    let r = cartan.rank();
    let l = match (&args.l, args.preset) {
        (Some(s), _) => parse_functionals(s)?,
        (None, Some(Preset::Cyclic)) => LatticeFunctionals::cyclic(r),
        (None, Some(Preset::PlusMinusOne)) => LatticeFunctionals::plus_minus_one(r),
        (None, Some(Preset::NegGcm)) => LatticeFunctionals::negated_gcm(&cartan),
        (None, Some(Preset::MinusIdentity)) => LatticeFunctionals::minus_identity(r),
        (None, None) => bail!("give --L or --preset"),
    };
    let ell = check_ell_condition(&cartan, &l);
    let mut report = CheckReport::new("lattice");
    report.note(format!("L = {}", l.to_json()));
    report.note(format!(
        "pair condition {}: {}",
        if ell.holds { "holds" } else { "fails" },
        serde_json::to_string(&ell.pairs)?
    ));
    let embedding = verify_lattice_embedding(&cartan, &l, args.depth)
        .with_context(|| format!("embedding test for {cartan} at depth {}", args.depth))?;
    report.push_child(embedding);
    if r == 2 {
        let fac = bl_factorization_check(&cartan, &l)?;
        report.note(format!("factorization into B_i (x) B_j: {}", serde_json::to_string(&fac)?));
    }
    emit_report(&report, args.out.as_deref())
}

fn random_c(args: &RandomArgs, cartan: &CartanSpec) -> Result<CMatrix> {
    match &args.c {
        Some(c) => parse_c(c, cartan, false),
        None => Ok(CMatrix::standard(cartan.rank())),
    }
}

fn cmd_random(args: RandomArgs, which: &str) -> Result<ExitCode> {
    let cartan = parse_cartan(&args.cartan)?;
    let report = match which {
        "psi" => psi_duality_random(&cartan, &random_c(&args, &cartan)?, args.count, args.seed),
        "shift" => shift_random(&cartan, &random_c(&args, &cartan)?, args.count, args.seed),
        "semi-normal" => semi_normal_random(&cartan, &random_c(&args, &cartan)?, args.count, 8, args.seed),
        _ => {
            if cartan.rank() != 2 {
                bail!("phi-test needs rank-two Cartan data");
            }
            if args.c.is_some() {
                bail!("phi-test uses c_12 = 0, c_21 = 1");
            }
            phi_rank2_random(&cartan, args.count, args.seed)
        }
    };
    emit_report(&report, args.out.as_deref())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Generate(a) => cmd_generate(a),
        Cmd::Check(a) => cmd_check(a),
        Cmd::ScanConjecture(a) => cmd_scan(a),
        Cmd::Lattice(a) => cmd_lattice(a),
        Cmd::DualPsiTest(a) => cmd_random(a, "psi"),
        Cmd::ShiftTest(a) => cmd_random(a, "shift"),
        Cmd::SemiNormalTest(a) => cmd_random(a, "semi-normal"),
        Cmd::PhiTest(a) => cmd_random(a, "phi"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
