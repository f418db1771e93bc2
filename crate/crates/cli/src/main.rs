//! `ellrank`: constructions, fibre tables, heights and point counts for
//! elliptic surfaces over Q(t), plus a one-shot reproduction run.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use ellrank_core::algebra::parse::{parse_rat, parse_rat_list, parse_ratfunc};
use ellrank_core::algebra::{Field, QuadExt, Qt, Rat, RatFunc, Ring};
use ellrank_core::ellcurve::{
    base_change, minimal_model, minimal_model_descended, pullback_square, quartic_to_weierstrass, specialize,
    CurvePoint, QuarticPoint, WeierstrassCurve,
};
use ellrank_core::heights::{norm_map, theorem1_certificate, HeightContext};
use ellrank_core::io::{
    format_coeff, parse_point, parse_quartic_point, CurveFile, Document, PointsFile, QuarticFile,
};
use ellrank_core::kodaira::{fibre_configuration, lattice_name, shioda_tate_rank};
use ellrank_core::mestre::nagao::NagaoModels;
use ellrank_core::mestre::{
    build_quartic, conic_parametrize, derive_scale, match_parametrization, raw_split, registry, search_b6, MestreSeed,
};
use ellrank_core::qsearch::find_extra_point;
use ellrank_core::surfcount::{
    count_surface, eigen_ledger, ns_rank_bound, rank_conclusion, Budget, SurfaceModel, Verdict,
};
use ellrank_core::verify::{run_verify_paper, VerifyBudget, VerifyOptions, DEFAULT_SEED, GROUPS};

mod report;

use report::{Format, Report};

#[derive(Parser)]
#[command(name = "ellrank", version, about = "Rank computations for elliptic surfaces over Q(t)")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Worker threads for point counting; ELLRANK_THREADS takes precedence.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mestre's construction from a seed b1..b6.
    #[command(subcommand)]
    Mestre(MestreCmd),
    /// Conic parametrizations.
    #[command(subcommand)]
    Conic(ConicCmd),
    /// Weierstrass models.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Singular fibres of a minimal model.
    Fibres {
        curve: PathBuf,
        /// Picard number to feed into the Shioda-Tate formula.
        #[arg(long)]
        rank_ns: Option<i64>,
    },
    /// Canonical height of one section.
    Height {
        curve: PathBuf,
        /// `x, y` in polynomial syntax; may involve sqrt(D).
        #[arg(long)]
        point: String,
    },
    /// Gram matrix of the height pairing on a points file.
    Gram {
        curve: PathBuf,
        #[arg(long)]
        points: PathBuf,
    },
    /// Independence certificate for a quadratic point on the u-line model.
    Theorem1 {
        curve: PathBuf,
        /// A point or a points file holding it as its first entry.
        #[arg(long)]
        q: String,
        /// Points on the t-line model whose norms span the rational part.
        #[arg(long)]
        generators: Option<PathBuf>,
    },
    /// Search for a section of height 3/2 with quadratic coefficients.
    Q14 { curve: PathBuf },
    /// Point count of the surface over F_{p^n}.
    Count {
        curve: PathBuf,
        #[command(flatten)]
        surface: SurfaceArgs,
        /// A prime of good reduction.
        #[arg(long)]
        p: u64,
        /// Count over F_{p^n}.
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Lift the work budget (n = 3 at p = 53 takes about half an hour).
        #[arg(long)]
        extended: bool,
    },
    /// Eigenvalue ledger and the bound on the Picard number at p.
    Nsbound {
        curve: PathBuf,
        #[command(flatten)]
        surface: SurfaceArgs,
        /// A prime of good reduction.
        #[arg(long)]
        p: u64,
        /// Eigenvalues known to equal p (sections and fibre components).
        #[arg(long, default_value_t = 17)]
        known: usize,
    },
    /// Recompute the reference values and compare.
    VerifyPaper {
        /// Include the count over F_{53^3}.
        #[arg(long)]
        extended: bool,
        /// Restrict to one group of checks.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(GROUPS))]
        only: Option<String>,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct SurfaceArgs {
    /// The file is a model over Q(u); count on its pullback along u = t^2.
    #[arg(long)]
    square: bool,
}

#[derive(Subcommand)]
enum MestreCmd {
    /// The quartic y^2 = r(x) over Q(t) and its 24 marked points.
    Construct {
        /// Six distinct rationals, comma separated.
        #[arg(long, value_parser = rat_list)]
        b: RatList,
        /// `auto`, or a rational function in t multiplying the raw split.
        #[arg(long, default_value = "auto")]
        scale: String,
        /// Quartic file to derive the automatic scale against.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Rational b6 making s vanish.
    Search {
        /// Five distinct rationals; the sixth is solved for.
        #[arg(long, value_parser = rat_list)]
        b5: RatList,
    },
}

#[derive(Subcommand)]
enum ConicCmd {
    /// Parametrize u^2 = A + B t^2 through a base point.
    Param {
        /// Constant coefficient.
        #[arg(long = "A", value_parser = rat)]
        a: Rat,
        /// Coefficient of t^2.
        #[arg(long = "B", value_parser = rat)]
        b: Rat,
        /// `t0,u0`.
        #[arg(long, value_parser = rat_list)]
        base: RatList,
        /// Match against a published parametrization: nagao or mestre.
        #[arg(long)]
        compare: Option<String>,
    },
}

#[derive(Subcommand)]
enum CurveCmd {
    /// Weierstrass model of a quartic with a chosen zero point.
    Jacobian {
        quartic: PathBuf,
        /// A point `x, y` or `inf, w`, or the name of a point in the file.
        #[arg(long)]
        zero: String,
    },
    /// Globally minimal model over Q(t).
    Minimal {
        curve: PathBuf,
        /// Also descend along u = t^2 when the model is even in t.
        #[arg(long)]
        descend: bool,
    },
    /// Fibre at a rational t, or base change along t = f(z).
    Specialize {
        curve: PathBuf,
        /// A rational value, or a rational function in z for a base change.
        #[arg(long)]
        t: String,
    },
}

fn rat(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

/// A comma-separated list taken as one argument.
#[derive(Clone, Debug)]
struct RatList(Vec<Rat>);

fn rat_list(s: &str) -> Result<RatList, String> {
    parse_rat_list(s).map(RatList).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_curve(path: &Path) -> Result<CurveFile> {
    CurveFile::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    match std::env::var("ELLRANK_THREADS") {
        Ok(v) if !v.trim().is_empty() => {
            let n: usize = v.trim().parse().with_context(|| format!("ELLRANK_THREADS = {v}"))?;
            Ok(Some(n))
        }
        _ => Ok(flag),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(n) = thread_count(cli.threads)? {
        if n == 0 {
            bail!("thread count must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let fmt = cli.format;
    let out = match cli.command {
        Command::Mestre(MestreCmd::Construct { b, scale, target }) => construct(b.0, &scale, target.as_deref())?,
        Command::Mestre(MestreCmd::Search { b5 }) => {
            let b5 = b5.0;
            let mut r = Report::new();
            let roots = search_b6(&b5)?;
            r.row("solutions", roots.len());
            for (i, b6) in roots.iter().enumerate() {
                let seed: Vec<String> = b5.iter().chain([b6]).map(|x| x.to_string()).collect();
                r.row(format!("b6.{}", i + 1), b6).row(format!("seed.{}", i + 1), seed.join(","));
            }
            r.render(fmt)
        }
        Command::Conic(ConicCmd::Param { a, b, base, compare }) => conic(a, b, base.0, compare.as_deref())?.render(fmt),
        Command::Curve(CurveCmd::Jacobian { quartic, zero }) => {
            let f = QuarticFile::parse(&read(&quartic)?)?;
            let p = match f.points.iter().find(|(n, _)| *n == zero) {
                Some((_, p)) => p.clone(),
                None => parse_quartic_point(&zero)?,
            };
            let (e, _) = quartic_to_weierstrass(&f.r, &p)?;
            CurveFile::new(&f.var, e).serialize()
        }
        Command::Curve(CurveCmd::Minimal { curve, descend }) => {
            let f = read_curve(&curve)?;
            if descend {
                let (m, _) = minimal_model_descended(&f.curve)?;
                CurveFile::new("u", m).serialize()
            } else {
                let (m, _) = minimal_model(&f.curve)?;
                CurveFile::new(&f.var, m).serialize()
            }
        }
        Command::Curve(CurveCmd::Specialize { curve, t }) => {
            let f = read_curve(&curve)?;
            match parse_rat(&t) {
                Ok(t0) => {
                    let s = specialize(&f.curve, &t0)?;
                    let mut r = Report::new();
                    r.row(&f.var, &t0)
                        .row("a1", &s.a1)
                        .row("a2", &s.a2)
                        .row("a3", &s.a3)
                        .row("a4", &s.a4)
                        .row("a6", &s.a6)
                        .row("discriminant", s.discriminant());
                    r.render(fmt)
                }
                Err(_) => {
                    let phi: Qt = parse_ratfunc(&t).map_err(|e| anyhow!("--t: {e}"))?;
                    CurveFile::new("z", base_change(&f.curve, &phi)).serialize()
                }
            }
        }
        Command::Fibres { curve, rank_ns } => fibres(&read_curve(&curve)?, rank_ns)?.render(fmt),
        Command::Height { curve, point } => height(&read_curve(&curve)?.curve, &point)?.render(fmt),
        Command::Gram { curve, points } => gram(&read_curve(&curve)?.curve, &read(&points)?)?.render(fmt),
        Command::Theorem1 { curve, q, generators } => {
            theorem1(&read_curve(&curve)?.curve, &q, generators.as_deref())?.render(fmt)
        }
        Command::Q14 { curve } => q14(&read_curve(&curve)?.curve)?.render(fmt),
        Command::Count { curve, surface, p, n, extended } => {
            let m = surface_model(&curve, &surface)?;
            let budget = if extended { Budget::unlimited() } else { Budget::default() };
            let start = Instant::now();
            let c = count_surface(&m, p, n, budget)?;
            eprintln!("counted in {:.2?}", start.elapsed());
            let mut r = Report::new();
            r.lines("", &c.to_string());
            r.render(fmt)
        }
        Command::Nsbound { curve, surface, p, known } => nsbound(&surface_model(&curve, &surface)?, p, known)?.render(fmt),
        Command::VerifyPaper { extended, only, seed } => {
            let opts = VerifyOptions {
                budget: if extended { VerifyBudget::Extended } else { VerifyBudget::Standard },
                only,
                seed,
            };
            let report = run_verify_paper(&opts);
            print!("{}", verify_report(&report, fmt));
            return Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    };
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn construct(b: Vec<Rat>, scale: &str, target: Option<&Path>) -> Result<String> {
    let seed = MestreSeed::new(b)?;
    let (_, raw) = raw_split(&seed);
    let scale: Qt = if scale == "auto" {
        match target {
            Some(path) => derive_scale(&raw, &QuarticFile::parse(&read(path)?)?.r)?,
            None if seed == registry::nagao_seed() => derive_scale(&raw, &registry::nagao_quartic())?,
            None if seed == registry::mestre_seed() => registry::mestre_scale(),
            None => Qt::one(),
        }
    } else {
        parse_ratfunc(scale).map_err(|e| anyhow!("--scale: {e}"))?
    };
    let m = build_quartic(&seed, &scale)?;
    let mut points = Vec::new();
    for (i, (x, y)) in m.plus_points().iter().enumerate() {
        points.push((format!("P{}", i + 1), QuarticPoint::Affine(x.clone(), y.clone())));
    }
    for (i, (x, y)) in m.minus_points().iter().enumerate() {
        points.push((format!("M{}", i + 1), QuarticPoint::Affine(x.clone(), y.clone())));
    }
    let file = QuarticFile { var: "t".into(), r: m.r, points };
    Ok(format!("# scale = {}\n{}", format_coeff(&scale), file.serialize()))
}

fn conic(a: Rat, b: Rat, base: Vec<Rat>, compare: Option<&str>) -> Result<Report> {
    let [t0, u0]: [Rat; 2] = base.try_into().map_err(|_| anyhow!("--base takes two values t0,u0"))?;
    let c = conic_parametrize(&a, &b, (t0, u0))?;
    let mut r = Report::new();
    r.row("t", format_coeff(&c.t_of_z))
        .row("u", format_coeff(&c.u_of_z))
        .row("defect", format_coeff(&c.defect()));
    if let Some(name) = compare {
        let published = match name {
            "nagao" => registry::nagao_conic(),
            "mestre" => registry::mestre_conic(),
            other => bail!("unknown parametrization `{other}`"),
        };
        if published.a != a || published.b != b {
            bail!("the {name} parametrization is for A = {}, B = {}", published.a, published.b);
        }
        match match_parametrization(&c, &published.t_of_z, &published.u_of_z) {
            Some(m) => r.row("mobius", format_coeff(&m)),
            None => r.row("mobius", "none"),
        };
    }
    Ok(r)
}

fn fibres(f: &CurveFile, rank_ns: Option<i64>) -> Result<Report> {
    let config = fibre_configuration(&f.curve, true)?;
    let mut r = Report::new();
    for (i, (place, ft)) in config.entries.iter().enumerate() {
        let split = match ft.split {
            Some(true) => "split",
            Some(false) => "nonsplit",
            None => "-",
        };
        r.row(
            format!("fibre.{}", i + 1),
            format!(
                "place = {place}; degree = {}; type = {}; m = {}; e = {}; {split}",
                place.degree(),
                ft.symbol,
                ft.components(),
                ft.euler()
            ),
        );
    }
    r.row("chi", config.chi)
        .row("euler_sum", config.euler_sum())
        .row("rational", if config.rational_surface { "yes" } else { "no" })
        .row("trivial_lattice_rank", 2 + config.trivial_excess());
    if let Some(name) = lattice_name(&config) {
        r.row("lattice", name);
    }
    if let Some(rho) = rank_ns {
        r.row("rank_ns", rho).row("mordell_weil_rank", shioda_tate_rank(&config, rho)?);
    }
    Ok(r)
}

/// The quadratic field of a point's coefficients, if any.
fn field_of(p: &CurvePoint<RatFunc<QuadExt>>) -> Option<i64> {
    let (x, y) = (p.x()?, p.y()?);
    [x.num(), x.den(), y.num(), y.den()]
        .iter()
        .flat_map(|c| c.coeffs().iter())
        .map(QuadExt::d)
        .find(|&d| d != 0 && d != 1)
}

fn tag(p: &CurvePoint<RatFunc<QuadExt>>, d: i64) -> CurvePoint<RatFunc<QuadExt>> {
    p.map(|c| c.map(|a| a.clone().with_field(d)))
}

fn height_rows<F: Field>(r: &mut Report, ctx: &HeightContext<F>, p: &CurvePoint<RatFunc<F>>) -> Result<()> {
    if !ctx.curve().contains(p) {
        bail!("point is not on the curve");
    }
    let h = ctx.height(p)?;
    r.row("height", &h)
        .row("intersection_with_zero", ctx.intersection_with_zero(p))
        .row("fibre_corrections", ctx.contributions(p)?);
    match ctx.canonical_height_limit(p) {
        Ok(l) => r.row("height_by_limit", l),
        Err(e) => r.row("height_by_limit", format!("unavailable ({e})")),
    };
    Ok(())
}

fn height(e: &WeierstrassCurve<Qt>, point: &str) -> Result<Report> {
    let mut r = Report::new();
    if let Ok(p) = parse_point::<Rat>(point) {
        r.row("field", "Q");
        height_rows(&mut r, &HeightContext::new(e)?, &p)?;
        return Ok(r);
    }
    let p = parse_point::<QuadExt>(point)?;
    let d = field_of(&p).ok_or_else(|| anyhow!("cannot read the point"))?;
    r.row("field", format!("Q(sqrt({d}))"));
    height_rows(&mut r, &HeightContext::new(&registry::to_quadratic(e, d))?, &tag(&p, d))?;
    Ok(r)
}

fn gram(e: &WeierstrassCurve<Qt>, text: &str) -> Result<Report> {
    let doc = Document::parse(text)?;
    let mut r = Report::new();
    let g = match doc.field()? {
        None => {
            let f: PointsFile<Rat> = PointsFile::from_document(&doc)?;
            let pts: Vec<_> = f.points.into_iter().map(|(_, p)| p).collect();
            HeightContext::new(e)?.gram(&pts)?
        }
        Some(d) => {
            let f: PointsFile<QuadExt> = PointsFile::from_document(&doc)?;
            let pts: Vec<_> = f.points.iter().map(|(_, p)| tag(p, d)).collect();
            HeightContext::new(&registry::to_quadratic(e, d))?.gram(&pts)?
        }
    };
    for (i, row) in g.entries.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        r.row(format!("row.{}", i + 1), format!("[{}]", cells.join(", ")));
    }
    r.row("size", g.len()).row("rank", g.rank()).row("det", g.det());
    Ok(r)
}

fn theorem1(e: &WeierstrassCurve<Qt>, q: &str, generators: Option<&Path>) -> Result<Report> {
    let (q, d) = match fs::read_to_string(q) {
        Ok(text) => {
            let f: PointsFile<QuadExt> = PointsFile::parse(&text)?;
            let d = f.field.ok_or_else(|| anyhow!("the points file must be over a quadratic field"))?;
            let p = f.points.first().ok_or_else(|| anyhow!("empty points file"))?.1.clone();
            (p, d)
        }
        Err(_) => {
            let p = parse_point::<QuadExt>(q)?;
            let d = field_of(&p).ok_or_else(|| anyhow!("Q has rational coefficients"))?;
            (p, d)
        }
    };
    let q = tag(&q, d);
    let gens = match generators {
        Some(path) => PointsFile::<Rat>::parse(&read(path)?)?.points.into_iter().map(|(_, p)| p).collect(),
        None => registry::generators(),
    };
    let t_curve = pullback_square(e);
    let norms = gens.iter().map(|p| norm_map(e, &t_curve, p)).collect::<Result<Vec<_>, _>>()?;
    // the Q(z) rank is only known for the Nagao family
    let models = NagaoModels::build()?;
    let rank_z = if models.u_curve == *e && generators.is_none() {
        let z = models.z_models()?;
        Some(HeightContext::new(&z.curve)?.gram(&z.generators(&models)?)?.rank())
    } else {
        None
    };
    let c = theorem1_certificate(e, &q, &norms, rank_z)?;
    let mut r = Report::new();
    r.row("field", format!("Q(sqrt({d}))"))
        .row("sigma_q_differs", "yes")
        .row("height_q", &c.height_q)
        .row("height_q_minus_sigma_q", &c.height_difference)
        .row("rank_norms", c.rank_norms)
        .row("rank_norms_with_q", c.rank_with_q);
    match (c.rank_over_z, c.rank_lower_bound()) {
        (Some(z), Some(lb)) => r.row("rank_over_qz", z).row("rank_lower_bound", lb),
        _ => r.row("rank_over_qz", "not available for this curve"),
    };
    Ok(r)
}

fn q14(e: &WeierstrassCurve<Qt>) -> Result<Report> {
    let found = find_extra_point(e)?;
    let mut r = Report::new();
    r.row("solutions", found.len());
    for (i, s) in found.iter().enumerate() {
        let k = i + 1;
        let p = s.point();
        let lifted = registry::to_quadratic(e, s.d);
        let on = lifted.contains(&p);
        let h = HeightContext::new(&lifted).and_then(|ctx| ctx.height(&p));
        let certified = on && matches!(&h, Ok(v) if v.value == Rat::new(3, 2));
        r.row(format!("{k}.D"), s.d)
            .row(format!("{k}.X"), format_coeff(&RatFunc::from_poly(s.x.clone())))
            .row(format!("{k}.Y"), format_coeff(&RatFunc::from_poly(s.y.clone())))
            .row(format!("{k}.height"), h.map_or_else(|e| format!("error ({e})"), |v| v.to_string()))
            .row(format!("{k}.certified"), if certified { "yes" } else { "no" });
    }
    Ok(r)
}

fn surface_model(path: &Path, args: &SurfaceArgs) -> Result<SurfaceModel> {
    let f = read_curve(path)?;
    let e = if args.square { pullback_square(&f.curve) } else { f.curve };
    Ok(SurfaceModel::new(&e)?)
}

fn nsbound(m: &SurfaceModel, p: u64, known: usize) -> Result<Report> {
    let check = m.good_prime(p);
    if !check.good {
        bail!("{p} is a bad prime: {}", check.reason.unwrap_or_default());
    }
    let counts = [
        count_surface(m, p, 1, Budget::default())?.total,
        count_surface(m, p, 2, Budget::default())?.total,
    ];
    let ledger = eigen_ledger(p, m.b2(), known, counts);
    let ns = ns_rank_bound(&ledger);
    let mut r = Report::new();
    r.lines("ledger.", &ledger.to_string());
    for (i, o) in ns.outcomes.iter().enumerate() {
        r.row(format!("hypothesis.{:02}", i + 1), o);
    }
    for o in &ns.outcomes {
        if let Verdict::Consistent { charpoly, .. } = &o.verdict {
            r.row(
                format!("charpoly.{}{}", o.zeta_order, if o.det_sign > 0 { '+' } else { '-' }),
                ellrank_core::surfcount::factor_display(charpoly),
            );
        }
    }
    // the generator and certificate inputs exist for the Nagao surface only
    let models = NagaoModels::build()?;
    if m.curve == models.t_curve {
        let gens = HeightContext::new(&models.t_curve)?.gram(&registry::generators())?.rank();
        let norms = registry::generators()
            .iter()
            .map(|g| norm_map(&models.u_curve, &models.t_curve, g))
            .collect::<Result<Vec<_>, _>>()?;
        let cert = theorem1_certificate(&models.u_curve, &registry::q_point(), &norms, None)?;
        let c = rank_conclusion(&m.config, ns.bound, gens, &cert);
        r.row("generators_rank", gens).lines("", &c.to_string());
    } else {
        r.row("rank_ns_bound", ns.bound);
    }
    Ok(r)
}

fn verify_report(report: &ellrank_core::verify::VerificationReport, fmt: Format) -> String {
    let mut r = Report::new();
    for c in &report.checks {
        let k = format!("check.{:02}", c.id);
        match fmt {
            Format::Text => {
                r.row(
                    k.clone(),
                    format!(
                        "{} {} [{}] ({}, {:.2?})",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.name,
                        c.group,
                        c.provenance,
                        c.runtime
                    ),
                );
                if !c.pass {
                    r.row(format!("{k}.expected"), &c.expected).row(format!("{k}.computed"), &c.computed);
                }
            }
            Format::Kv => {
                r.row(format!("{k}.name"), c.name)
                    .row(format!("{k}.group"), c.group)
                    .row(format!("{k}.provenance"), c.provenance)
                    .row(format!("{k}.expected"), &c.expected)
                    .row(format!("{k}.computed"), &c.computed)
                    .row(format!("{k}.pass"), if c.pass { "yes" } else { "no" })
                    .row(format!("{k}.seconds"), format!("{:.3}", c.runtime.as_secs_f64()));
            }
        }
    }
    for (id, name, why) in &report.skipped {
        r.row(format!("skipped.{id:02}"), format!("{name}: {why}"));
    }
    let passed = report.checks.iter().filter(|c| c.pass).count();
    r.row("passed", format!("{passed}/{}", report.checks.len()));
    r.render(fmt)
}
