mod figure;
mod svg;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pbconic::equilibria::solve_equilibria;
use pbconic::exactalg::{rational_string, Rational};
use pbconic::infinity::equator_equilibria;
use pbconic::localseries::Axis;
use pbconic::conicfit::Conic;
use pbconic::numoracle::{find_cycle, integrate, write_csv, Orbit, Section, DEFAULT_TOL};
use pbconic::pipeline::{load_system, PipelineError, Setup};
use pbconic::regions::Conclusion;
use pbconic::report;
use pbconic::sysparse::{parse_binding, parse_rational, ConicForm};
use pbconic::transversal::{Certificate, Verdict};

#[derive(Parser)]
#[command(name = "pbconic", version, about = "Transversal conics and Poincaré–Bendixson regions for planar polynomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a system file and print it in normal form.
    Parse(Common),
    /// Glue a conic family to the local series at the symbolic base point.
    Glue(Common),
    /// Certify the conic of the family at `--a0`.
    Certify(Common),
    /// Find every certifiable band of `a0` values in `--interval`.
    Sweep(Common),
    /// Assemble a Poincaré–Bendixson region from one or two `--a0` values.
    Region(Common),
    /// Solve for all finite equilibria exactly.
    Equilibria(Common),
    /// Analyse the equator of the Poincaré compactification.
    Infinity(Common),
    /// Draw conics, equilibria and numeric cycles as SVG.
    Plot(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    X,
    Y,
}

#[derive(Args, Clone)]
struct Common {
    /// System file.
    system: Option<PathBuf>,
    /// Parameter binding `name=value`, repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Coordinate axis carrying the symbolic base point.
    #[arg(long, value_enum, default_value = "x")]
    axis: AxisArg,
    /// Fixed value of the other base-point coordinate.
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    offset: String,
    /// Value of the symbolic coordinate; repeatable for `region` and `plot`.
    #[arg(long = "a0", allow_hyphen_values = true)]
    a0: Vec<String>,
    /// Search interval `lo,hi` for `sweep`.
    #[arg(long, allow_hyphen_values = true, default_value = "0,10")]
    interval: String,
    /// Width to which band ends are refined.
    #[arg(long, default_value = "1/1000")]
    resolution: String,
    /// Fit the family without linear terms.
    #[arg(long, conflicts_with = "general")]
    centered: bool,
    /// Fit the family with linear terms.
    #[arg(long)]
    general: bool,
    /// Output file: JSON document, or SVG for `plot`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG picture of the region for `region`.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Print the JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Seed for a numeric cycle on the `--axis` ray, repeatable; the sign selects the half-axis.
    #[arg(long, allow_hyphen_values = true)]
    cycle: Vec<f64>,
    /// Plot window `xmin,xmax,ymin,ymax`.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Figure configuration file for `plot`.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV dump of the numeric cycles for `plot`.
    #[arg(long)]
    csv: Option<PathBuf>,
}

/// A command's result: text for humans, a JSON document, and an exit code.
struct Outcome {
    text: String,
    doc: Value,
    code: u8,
}

fn usage(msg: impl Into<String>) -> PipelineError {
    PipelineError::Usage(msg.into())
}

fn rational_arg(text: &str, what: &str) -> Result<Rational, PipelineError> {
    parse_rational(text).map_err(|_| usage(format!("invalid rational for {what}: `{text}`")))
}

impl Common {
    fn setup(&self) -> Result<Setup, PipelineError> {
        let path = self.system.as_ref().ok_or_else(|| usage("a system file is required"))?;
        let mut bindings = BTreeMap::new();
        for b in &self.params {
            let (k, v) = parse_binding(b).map_err(|_| usage(format!("invalid binding `{b}`, expected name=value")))?;
            bindings.insert(k, v);
        }
        let sys = load_system(path, &bindings)?;
        let axis = match self.axis {
            AxisArg::X => Axis::XAxis,
            AxisArg::Y => Axis::YAxis,
        };
        let mut setup = Setup::new(sys, axis);
        setup.offset = rational_arg(&self.offset, "--offset")?;
        if self.centered {
            setup.form = ConicForm::Centered;
        } else if self.general {
            setup.form = ConicForm::General;
        }
        Ok(setup)
    }

    fn a0_values(&self) -> Result<Vec<Rational>, PipelineError> {
        self.a0.iter().map(|a| rational_arg(a, "--a0")).collect()
    }

    fn interval(&self) -> Result<(Rational, Rational), PipelineError> {
        let (lo, hi) = self
            .interval
            .split_once(',')
            .ok_or_else(|| usage("--interval expects lo,hi"))?;
        Ok((rational_arg(lo.trim(), "--interval")?, rational_arg(hi.trim(), "--interval")?))
    }

    fn window(&self) -> Result<Option<svg::Window>, PipelineError> {
        self.window.as_deref().map(parse_window).transpose()
    }
}

fn parse_window(text: &str) -> Result<svg::Window, PipelineError> {
    let v: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage("--window expects four numbers"))?;
    match v[..] {
        [a, b, c, d] if a < b && c < d => Ok((a, b, c, d)),
        _ => Err(usage("--window expects xmin,xmax,ymin,ymax with min < max")),
    }
}

fn describe_certificate(c: &Certificate) -> String {
    let mut s = format!(
        "certified: {:?}, derivative {:?} on the whole conic\nf = {}\n",
        c.conic_class,
        c.sign,
        c.conic.f()
    );
    for p in &c.contact_points {
        s.push_str(&format!(
            "  contact point ({:.6}, {:.6}) of multiplicity {}\n",
            p.approx.0, p.approx.1, p.multiplicity
        ));
    }
    s
}

fn cmd_parse(args: &Common) -> Result<Outcome, PipelineError> {
    let setup = args.setup()?;
    Ok(Outcome {
        text: setup.sys.pretty(),
        doc: report::document("system", report::system(&setup.sys)),
        code: 0,
    })
}

fn cmd_glue(args: &Common) -> Result<Outcome, PipelineError> {
    let setup = args.setup()?;
    let fam = setup.family()?;
    let text = format!(
        "f = {}\nachieved order: {}{}\n",
        fam.display_f(setup.axis.symbol()),
        fam.achieved_order,
        if fam.order_is_lower_bound { " (lower bound)" } else { "" }
    );
    let doc = report::document(
        "family",
        json!({"system": report::system(&setup.sys), "family": report::family(&fam)}),
    );
    Ok(Outcome { text, doc, code: 0 })
}

fn cmd_certify(args: &Common) -> Result<Outcome, PipelineError> {
    let setup = args.setup()?;
    let a0 = match args.a0_values()?[..] {
        [ref a] => a.clone(),
        _ => return Err(usage("certify needs exactly one --a0")),
    };
    let fam = setup.family()?;
    let verdict = setup.certify(&fam, &a0)?;
    let (text, code) = match &verdict {
        Verdict::Certified(c) => (describe_certificate(c), 0),
        Verdict::Failure(w) => (
            format!(
                "not transversal: the derivative changes sign at m ≈ {:.9} (multiplicity {}), point ≈ {:?}\n",
                w.root.to_f64(),
                w.multiplicity,
                w.approx_point
            ),
            1,
        ),
    };
    let doc = report::document(
        "certificate",
        json!({"system": report::system(&setup.sys), "a0": report::rational(&a0), "result": report::verdict(&verdict)}),
    );
    Ok(Outcome { text, doc, code })
}

fn cmd_sweep(args: &Common) -> Result<Outcome, PipelineError> {
    let setup = args.setup()?;
    let (lo, hi) = args.interval()?;
    let res = rational_arg(&args.resolution, "--resolution")?;
    if res <= Rational::from_integer(0.into()) {
        return Err(usage("--resolution must be positive"));
    }
    let fam = setup.family()?;
    let (bands, stats, profile) = setup.sweep(&fam, (&lo, &hi), &res)?;
    let mut text = format!(
        "{} band(s) in ({}, {}); {} breakpoints, {} of {} gaps certified\n",
        bands.len(),
        rational_string(&lo),
        rational_string(&hi),
        stats.breakpoints,
        stats.certified_gaps,
        stats.gaps
    );
    for b in &bands {
        text.push_str(&format!(
            "  ({:.6}, {:.6})  {:?} {:?}  witness {}\n",
            b.lo.to_f64(),
            b.hi.to_f64(),
            b.class,
            b.sign,
            rational_string(&b.witness)
        ));
    }
    let doc = report::document(
        "sweep",
        json!({
            "system": report::system(&setup.sys),
            "interval": [report::rational(&lo), report::rational(&hi)],
            "resolution": report::rational(&res),
            "result": report::sweep(&bands, &stats, &profile, setup.axis.symbol()),
        }),
    );
    Ok(Outcome { text, doc, code: 0 })
}

fn certified(setup: &Setup, a0: &[Rational]) -> Result<Vec<Certificate>, PipelineError> {
    setup.certify_all(&setup.family()?, a0)
}

/// Conics to draw, flagged by whether they were certified.
type Drawn = Vec<(Conic, bool)>;

fn draw(setup: &Setup, conics: &Drawn, window: Option<svg::Window>, cycles: &[f64], title: &str) -> Result<(String, Vec<Orbit>), PipelineError> {
    let samples: Vec<Vec<(f64, f64)>> = conics.iter().map(|(c, _)| svg::conic_samples(c, 2000)).collect();
    let window = window.unwrap_or_else(|| auto_window(&samples));
    let mut plot = svg::Plot::new(window, title);
    for (pts, (_, ok)) in samples.into_iter().zip(conics) {
        plot.path(pts, if *ok { "blue" } else { "orange" }, 1.5);
    }
    if let Ok(eqs) = solve_equilibria(&setup.sys) {
        for e in &eqs.points {
            plot.marker(e.approx(), "black");
        }
    }
    let mut orbits = Vec::new();
    for &seed in cycles {
        let (orbit, stable) = numeric_cycle(setup, seed)?;
        let pts = orbit.samples.iter().map(|&(_, x, y)| (x, y)).collect();
        plot.path(pts, if stable { "red" } else { "green" }, 1.5);
        orbits.push(orbit);
    }
    Ok((plot.render(), orbits))
}

fn auto_window(conics: &[Vec<(f64, f64)>]) -> svg::Window {
    let mut r: f64 = 0.0;
    for p in conics.iter().flatten() {
        if p.0.is_finite() && p.1.is_finite() && p.0.abs().max(p.1.abs()) < 50.0 {
            r = r.max(p.0.abs()).max(p.1.abs());
        }
    }
    let r = if r > 0.0 { 1.15 * r } else { 3.0 };
    (-r, r, -r, r)
}

/// One period of the numeric cycle seeded on the `--axis` ray, and whether it attracts.
fn numeric_cycle(setup: &Setup, seed: f64) -> Result<(Orbit, bool), PipelineError> {
    let section = Section {
        axis: setup.axis,
        positive: seed > 0.0,
    };
    let c = find_cycle(&setup.sys, section, seed.abs())?;
    let s = seed.signum() * c.crossing;
    let start = match setup.axis {
        Axis::XAxis => (s, 0.0),
        Axis::YAxis => (0.0, s),
    };
    let orbit = integrate(&setup.sys, start, c.period, DEFAULT_TOL)?;
    Ok((orbit, c.multiplier < 1.0))
}

fn cmd_region(args: &Common) -> Result<Outcome, PipelineError> {
    let setup = args.setup()?;
    let a0 = args.a0_values()?;
    if a0.is_empty() || a0.len() > 2 {
        return Err(usage("region needs one --a0 (origin inside) or two"));
    }
    let certs = certified(&setup, &a0)?;
    let rep = setup.region(&certs)?;
    let code = if rep.conclusion.is_valid() { 0 } else { 1 };
    let headline = match &rep.conclusion {
        Conclusion::AtLeastOneLimitCycle { stability } => format!("valid region: at least one limit cycle ({stability:?})"),
        Conclusion::ConditionalOnInfinity { stability, .. } => format!("conditionally valid region ({stability:?}), see flags"),
        Conclusion::InvalidRegion { reason } => format!("invalid region: {reason:?}"),
    };
    if let Some(path) = &args.svg {
        let drawn: Drawn = certs.iter().map(|c| (c.conic.clone(), true)).collect();
        let (pic, _) = draw(&setup, &drawn, args.window()?, &args.cycle, &headline)?;
        write_file(path, &pic)?;
    }
    let text = format!("{headline}\n{}\n", rep.narrative);
    let doc = report::document("region", json!({"system": report::system(&setup.sys), "region": report::region(&rep)}));
    Ok(Outcome { text, doc, code })
}

fn cmd_equilibria(args: &Common) -> Result<Outcome, PipelineError> {
    let setup = args.setup()?;
    let set = solve_equilibria(&setup.sys)?;
    let doc_body = report::equilibria(&setup.sys, &set);
    let mut text = format!("{} equilibria\n", set.len());
    for p in doc_body["points"].as_array().into_iter().flatten() {
        text.push_str(&format!("  ({:.9}, {:.9})  {}\n", p["approx"][0], p["approx"][1], p["kind"].as_str().unwrap_or("")));
    }
    let doc = report::document("equilibria", json!({"system": report::system(&setup.sys), "equilibria": doc_body}));
    Ok(Outcome { text, doc, code: 0 })
}

fn cmd_infinity(args: &Common) -> Result<Outcome, PipelineError> {
    let setup = args.setup()?;
    let conic = match args.a0_values()?[..] {
        [] => None,
        [ref a] => Some(setup.family()?.specialize(a)?),
        _ => return Err(usage("infinity takes at most one --a0")),
    };
    let rep = equator_equilibria(&setup.sys, conic.as_ref());
    let mut text = format!(
        "u' = {}\nv' = {}\n{} equator equilibria\n",
        rep.chart.udot.display_with(("u", "v")),
        rep.chart.vdot.display_with(("u", "v")),
        rep.equator_points.len()
    );
    for p in &rep.equator_points {
        text.push_str(&format!("  u = {:.9}  {:?}  f~ sign {:?}\n", p.u.to_f64(), p.kind, p.ftilde_sign));
    }
    if rep.x_direction.singular {
        text.push_str(&format!("  x-direction  {:?}\n", rep.x_direction.kind));
    }
    let doc = report::document("infinity", json!({"system": report::system(&setup.sys), "infinity": report::infinity(&rep)}));
    Ok(Outcome { text, doc, code: 0 })
}

fn cmd_plot(args: &Common) -> Result<Outcome, PipelineError> {
    let (args, title) = match &args.config {
        Some(path) => {
            let fig = figure::load(path)?;
            let title = fig.title.clone();
            (fig.into_args(path, args), title)
        }
        None => (args.clone(), String::new()),
    };
    let setup = args.setup()?;
    let a0 = args.a0_values()?;
    let mut conics = Drawn::new();
    let mut rows = Vec::new();
    if !a0.is_empty() {
        let fam = setup.family()?;
        for a in &a0 {
            let verdict = setup.certify(&fam, a)?;
            let conic = match &verdict {
                Verdict::Certified(c) => c.conic.clone(),
                Verdict::Failure(w) => w.conic.clone(),
            };
            rows.push(json!({"a0": report::rational(a), "certified": verdict.is_certified()}));
            conics.push((conic, verdict.is_certified()));
        }
    }
    let (picture, orbits) = draw(&setup, &conics, args.window()?, &args.cycle, &title)?;
    if let Some(path) = &args.csv {
        let file = std::fs::File::create(path).map_err(|source| PipelineError::Io {
            path: path.display().to_string(),
            source,
        })?;
        write_csv(&orbits, file).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let out = args.out.clone().unwrap_or_else(|| PathBuf::from("plot.svg"));
    write_file(&out, &picture)?;
    let mut text = format!("wrote {}\n", out.display());
    for (a, (_, ok)) in a0.iter().zip(&conics) {
        if !ok {
            text.push_str(&format!("warning: the conic at a0 = {} is not transversal (drawn in orange)\n", rational_string(a)));
        }
    }
    Ok(Outcome {
        text,
        doc: report::document("plot", json!({"svg": out.display().to_string(), "conics": rows, "cycles": orbits.len()})),
        code: 0,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), PipelineError> {
    std::fs::write(path, text).map_err(|source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn run(cli: Cli) -> Result<(Outcome, Common, bool), PipelineError> {
    let (args, is_plot) = match &cli.command {
        Command::Plot(a) => (a, true),
        Command::Parse(a)
        | Command::Glue(a)
        | Command::Certify(a)
        | Command::Sweep(a)
        | Command::Region(a)
        | Command::Equilibria(a)
        | Command::Infinity(a) => (a, false),
    };
    let outcome = match &cli.command {
        Command::Parse(a) => cmd_parse(a),
        Command::Glue(a) => cmd_glue(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Region(a) => cmd_region(a),
        Command::Equilibria(a) => cmd_equilibria(a),
        Command::Infinity(a) => cmd_infinity(a),
        Command::Plot(a) => cmd_plot(a),
    }?;
    Ok((outcome, args.clone(), is_plot))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok((outcome, args, is_plot)) => {
            if args.json {
                print!("{}", report::render(&outcome.doc));
            } else {
                print!("{}", outcome.text);
            }
            if let (Some(path), false) = (&args.out, is_plot) {
                if let Err(e) = write_file(path, &report::render(&outcome.doc)) {
                    eprintln!("error: {e}");
                    return ExitCode::from(3);
                }
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
