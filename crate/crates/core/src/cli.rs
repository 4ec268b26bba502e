//! The `rauzy` command line. Every subcommand maps to one library
//! operation; exit codes are 0 (success), 1 (usage or parameter error),
//! 2 (verification failed) and 3 (precision exhausted).

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use crate::approx::{
    best_approx_scan, closest_lattice, estimate_c, theorem_verify, write_records_csv, ApproxRecord, CEstimate,
    VerifyOptions,
};
use crate::cubic::{isolate_roots, validate_params, CubicParams, DEFAULT_PRECISION};
use crate::error::{Error, Result};
use crate::geometry::{
    cloud_e, for_each_r_point, ppm::bounding_box, ppm::Canvas, scan_report, write_csv_row, zero_interior_probe,
    CloudKind, CubicSystem, InteriorProbe, RSearch, RauzyNormCtx, ScanReport, CSV_HEADER,
};
use crate::numeration::{
    akiyama_classify, decode, greedy_encode, renyi_expansion_of_one, Classification, DigitString, TSequence,
};
use crate::output::{fmt17, sig17};

#[derive(Parser, Debug)]
#[command(
    name = "rauzy",
    version,
    about = "Cubic Pisot units without property (F): numeration, Rauzy fractals, best approximations"
)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    #[arg(long)]
    a: i64,
    #[arg(long, allow_negative_numbers = true)]
    b: i64,
    /// Working precision in bits.
    #[arg(long = "precision", default_value_t = DEFAULT_PRECISION)]
    precision_bits: u32,
    /// Print a note on stderr when the neighbour index K is at least 2.
    #[arg(long)]
    warn_neighbors: bool,
}

#[derive(Args, Debug, Clone, Default)]
struct OutArgs {
    /// Output file (default: stdout).
    #[arg(long = "out")]
    out_path: Option<String>,
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Ppm,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "E")]
    E,
    #[value(name = "R")]
    R,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// β, α, |α| and κ.
    Roots {
        #[command(flatten)]
        p: ParamArgs,
        #[command(flatten)]
        o: OutArgs,
    },
    /// T_n for n = from, …, from + n - 1.
    Seq {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        from: i64,
    },
    /// Greedy T-representation of N, most significant digit first.
    Encode {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long)]
        n: BigUint,
    },
    /// Integer with the given comma-separated T-digits.
    Decode {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long)]
        digits: String,
    },
    /// Rényi expansion of 1 in base β.
    Expand {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, default_value_t = 30)]
        count: usize,
    },
    /// Akiyama case and finiteness property of (a, b).
    Classify {
        #[arg(long)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[command(flatten)]
        o: OutArgs,
    },
    /// Point cloud of the Rauzy fractal as CSV or a P6 image.
    Fractal {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, value_enum, ignore_case = true)]
        kind: Kind,
        /// Digit depth for kind R.
        #[arg(long)]
        depth: Option<usize>,
        /// Number of δ(N) for kind E.
        #[arg(long)]
        count: Option<usize>,
        #[command(flatten)]
        o: OutArgs,
    },
    /// Lattice points p + qα near the Rauzy fractal.
    Scan {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, default_value_t = 14)]
        depth: usize,
        #[arg(long, default_value_t = 4)]
        window: i64,
        /// Fixed hit threshold instead of the calibrated one.
        #[arg(long)]
        eps: Option<f64>,
        /// Random points probed near 0.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        o: OutArgs,
    },
    /// Closest lattice point to qv (--q) or the record list up to --qmax.
    Approx {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, conflicts_with = "q_max", required_unless_present = "q_max")]
        q: Option<u64>,
        #[arg(long = "qmax")]
        q_max: Option<u64>,
        #[command(flatten)]
        o: OutArgs,
    },
    /// Checks the best-approximation records against T_n; JSON report.
    Verify {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long = "qmax", default_value_t = 100_000)]
        q_max: u64,
        #[arg(long = "c-count", default_value_t = 10_000)]
        c_count: usize,
        #[command(flatten)]
        o: OutArgs,
    },
    /// Sampled distance from E to Z² ∖ {(0,0), (1,1)}.
    EstimateC {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        window: i64,
        #[command(flatten)]
        o: OutArgs,
    },
}

/// Validated settings for one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub params: CubicParams,
    pub precision_bits: u32,
    pub out_path: Option<String>,
    pub format: Format,
    pub warn_neighbors: bool,
}

impl RunConfig {
    fn new(p: &ParamArgs, o: &OutArgs, default: Format, allowed: &[Format]) -> Result<Self> {
        let params = validate_params(p.a, p.b)?;
        if p.precision_bits < 64 {
            return Err(Error::InvalidArgument(format!("precision {} is below 64 bits", p.precision_bits)));
        }
        let format = o.format.unwrap_or(default);
        if !allowed.contains(&format) {
            return Err(Error::InvalidArgument(format!("format {format:?} not supported here")));
        }
        let cfg = RunConfig {
            params,
            precision_bits: p.precision_bits,
            out_path: o.out_path.clone(),
            format,
            warn_neighbors: p.warn_neighbors,
        };
        if cfg.warn_neighbors && params.neighbor_warning() {
            eprintln!(
                "note: K = {} >= 2; the fractal has at least {} neighbours and the 6-neighbour assumption behind the theorems does not hold",
                params.neighbor_index(),
                6 + 2 * (params.neighbor_index() - 1)
            );
        }
        Ok(cfg)
    }

    fn plain(p: &ParamArgs) -> Result<Self> {
        Self::new(p, &OutArgs::default(), Format::Text, &[Format::Text])
    }

    fn ctx(&self) -> Result<RauzyNormCtx> {
        RauzyNormCtx::from_params(self.params, self.precision_bits)
    }
}

fn writer(out_path: Option<&str>) -> Result<Box<dyn Write>> {
    Ok(match out_path {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Error::InvalidArgument(format!("cannot create {path}: {e}")))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_err(e: io::Error) -> Error {
    Error::InvalidArgument(format!("write failed: {e}"))
}

fn emit(cfg: &RunConfig, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    emit_to(cfg.out_path.as_deref(), body)
}

fn emit_to(out_path: Option<&str>, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    let mut w = writer(out_path)?;
    body(&mut w).and_then(|_| w.flush()).map_err(io_err)
}

fn emit_json<T: Serialize>(cfg: &RunConfig, value: &T) -> Result<()> {
    emit_json_to(cfg.out_path.as_deref(), value)
}

fn emit_json_to<T: Serialize>(out_path: Option<&str>, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    emit_to(out_path, |w| w.write_all(text.as_bytes()))
}

/// Parses `argv`, runs the subcommand and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            let msg = e.to_string();
            let text: Vec<&str> = msg
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:"))
                .filter(|l| !l.is_empty() && !l.starts_with("tip:"))
                .collect();
            eprintln!("Usage: {}", text.join(" ").trim_start_matches("error: "));
            return 1;
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("InvalidArgument: --threads must be at least 1");
            return 1;
        }
        // fails only if a pool already exists, e.g. when run is called twice
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_string().replace('\n', " "));
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::VerificationFailed(_) => 2,
        Error::PrecisionExhausted { .. } => 3,
        _ => 1,
    }
}

#[derive(Serialize)]
struct RootsOut {
    a: i64,
    b: i64,
    precision_bits: u32,
    #[serde(serialize_with = "sig17")]
    beta: f64,
    #[serde(serialize_with = "sig17")]
    alpha_re: f64,
    #[serde(serialize_with = "sig17")]
    alpha_im: f64,
    #[serde(serialize_with = "sig17")]
    abs_alpha: f64,
    #[serde(serialize_with = "sig17")]
    kappa: f64,
    discriminant: String,
    neighbor_index: i64,
}

#[derive(Serialize)]
struct ClassifyOut {
    a: i64,
    b: i64,
    #[serde(flatten)]
    classification: Classification,
}

#[derive(Serialize)]
struct ClosestOut {
    q: u64,
    #[serde(serialize_with = "sig17")]
    value: f64,
    g1: i64,
    g2: i64,
    certified: bool,
}

#[derive(Serialize)]
struct RecordsOut<'a> {
    schema: u32,
    records: &'a [ApproxRecord],
}

#[derive(Serialize)]
struct EstimateOut {
    schema: u32,
    a: i64,
    b: i64,
    estimate: CEstimate,
}

#[derive(Serialize)]
struct ScanOut {
    schema: u32,
    #[serde(flatten)]
    report: ScanReport,
    interior: InteriorProbe,
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Roots { p, o } => {
            let cfg = RunConfig::new(&p, &o, Format::Text, &[Format::Text, Format::Json])?;
            let ctx = cfg.ctx()?;
            let emb = ctx.emb();
            let (re, im) = emb.alpha().to_f64();
            let out = RootsOut {
                a: cfg.params.a(),
                b: cfg.params.b(),
                precision_bits: cfg.precision_bits,
                beta: emb.beta().to_f64(),
                alpha_re: re,
                alpha_im: im,
                abs_alpha: emb.abs_alpha().to_f64(),
                kappa: ctx.kappa().to_f64(),
                discriminant: cfg.params.discriminant().to_string(),
                neighbor_index: cfg.params.neighbor_index(),
            };
            if cfg.format == Format::Json {
                return emit_json(&cfg, &out);
            }
            emit(&cfg, |w| {
                writeln!(w, "beta {}", fmt17(out.beta))?;
                writeln!(w, "alpha {} {}", fmt17(out.alpha_re), fmt17(out.alpha_im))?;
                writeln!(w, "abs_alpha {}", fmt17(out.abs_alpha))?;
                writeln!(w, "kappa {}", fmt17(out.kappa))?;
                writeln!(w, "discriminant {}", out.discriminant)?;
                writeln!(w, "neighbor_index {}", out.neighbor_index)
            })
        }
        Command::Seq { p, n, from } => {
            let cfg = RunConfig::plain(&p)?;
            let seq = TSequence::new(cfg.params);
            let rows = (from..from + n as i64).map(|k| Ok((k, seq.get(k)?))).collect::<Result<Vec<_>>>()?;
            emit(&cfg, |w| rows.iter().try_for_each(|(k, t)| writeln!(w, "{k},{t}")))
        }
        Command::Encode { p, n } => {
            let cfg = RunConfig::plain(&p)?;
            let d = greedy_encode(&n, &TSequence::new(cfg.params));
            emit(&cfg, |w| writeln!(w, "{d}"))
        }
        Command::Decode { p, digits } => {
            let cfg = RunConfig::plain(&p)?;
            let d = DigitString::parse(&digits, cfg.params)?;
            let n = decode(d.digits(), &TSequence::new(cfg.params))?;
            emit(&cfg, |w| writeln!(w, "{n}"))
        }
        Command::Expand { p, count } => {
            let cfg = RunConfig::plain(&p)?;
            let emb = isolate_roots(cfg.params, cfg.precision_bits)?;
            let d = renyi_expansion_of_one(count, &emb)?;
            let text: Vec<String> = d.iter().map(u32::to_string).collect();
            emit(&cfg, |w| writeln!(w, "{}", text.join(",")))
        }
        Command::Classify { a, b, o } => {
            let c = akiyama_classify(a, b);
            let out = o.out_path.as_deref();
            match o.format.unwrap_or(Format::Text) {
                Format::Json => emit_json_to(out, &ClassifyOut { a, b, classification: c }),
                Format::Text => emit_to(out, |w| writeln!(w, "{} finiteness={}", c.case, c.finiteness)),
                f => Err(Error::InvalidArgument(format!("format {f:?} not supported here"))),
            }
        }
        Command::Fractal { p, kind, depth, count, o } => {
            let cfg = RunConfig::new(&p, &o, Format::Csv, &[Format::Csv, Format::Ppm])?;
            let emb = isolate_roots(cfg.params, cfg.precision_bits)?;
            match kind {
                Kind::E => {
                    let count = count.ok_or_else(|| Error::InvalidArgument("--count is required for kind E".into()))?;
                    if count == 0 {
                        return Err(Error::InvalidArgument("--count must be at least 1".into()));
                    }
                    let cloud = cloud_e(count, &CubicSystem::new(cfg.params), &emb);
                    match cfg.format {
                        Format::Ppm => emit(&cfg, |w| w.write_all(&crate::geometry::ppm::render_ppm(&cloud.points))),
                        _ => emit(&cfg, |w| cloud.write_csv(&mut { w })),
                    }
                }
                Kind::R => {
                    let depth = depth.ok_or_else(|| Error::InvalidArgument("--depth is required for kind R".into()))?;
                    if depth < 2 {
                        return Err(Error::InvalidArgument("--depth must be at least 2".into()));
                    }
                    let alpha = emb.alpha().to_f64();
                    let params = cfg.params;
                    match cfg.format {
                        Format::Ppm => {
                            // two streaming passes: window, then pixels
                            let mut pts = Vec::new();
                            let mut bbox = None;
                            for_each_r_point(depth, &params, alpha, |_, z| {
                                pts.push(z);
                                if pts.len() == 4096 {
                                    bbox = merge_box(bbox, bounding_box(pts.drain(..)));
                                }
                            });
                            bbox = merge_box(bbox, bounding_box(pts.drain(..)));
                            let mut canvas = Canvas::fit(bbox.unwrap_or((0.0, 0.0, 0.0, 0.0)));
                            for_each_r_point(depth, &params, alpha, |_, z| canvas.plot(z));
                            emit(&cfg, |w| canvas.write_p6(&mut { w }))
                        }
                        _ => emit(&cfg, |mut w| {
                            writeln!(w, "{CSV_HEADER}")?;
                            let mut index = 0;
                            let mut res = Ok(());
                            for_each_r_point(depth, &params, alpha, |_, z| {
                                if res.is_ok() {
                                    res = write_csv_row(&mut w, CloudKind::R, index, z);
                                }
                                index += 1;
                            });
                            res
                        }),
                    }
                }
            }
        }
        Command::Scan { p, depth, window, eps, samples, seed, o } => {
            let cfg = RunConfig::new(&p, &o, Format::Json, &[Format::Json])?;
            if depth < 2 || window < 1 {
                return Err(Error::InvalidArgument("--depth must be >= 2 and --window >= 1".into()));
            }
            let emb = isolate_roots(cfg.params, cfg.precision_bits)?;
            let search = RSearch::new(depth, &cfg.params, emb.alpha().to_f64());
            let mut report = scan_report(&search, window);
            if let Some(eps) = eps {
                let all = search.lattice_distances(window);
                report.eps = eps;
                report.hits = all.into_iter().filter(|h| h.distance < eps).collect();
            }
            let radius = 0.5 * report.nearest_others.first().map_or(0.0, |h| h.distance);
            let interior = zero_interior_probe(&search, radius, samples, seed);
            let conclusive = report.conclusive;
            emit_json(&cfg, &ScanOut { schema: 1, report, interior })?;
            if conclusive {
                Ok(())
            } else {
                Err(Error::VerificationFailed(vec!["lattice scan is not conclusive".into()]))
            }
        }
        Command::Approx { p, q, q_max, o } => {
            let ctx_cfg = |f| RunConfig::new(&p, &o, f, &[Format::Text, Format::Csv, Format::Json]);
            match (q, q_max) {
                (Some(q), _) => {
                    let cfg = ctx_cfg(Format::Text)?;
                    let ctx = cfg.ctx()?;
                    let m = closest_lattice(q, &ctx)?;
                    let out = ClosestOut { q, value: m.value_f64(), g1: m.g.0, g2: m.g.1, certified: m.certified };
                    match cfg.format {
                        Format::Json => emit_json(&cfg, &out),
                        _ => emit(&cfg, |w| writeln!(w, "{q},{},{},{}", fmt17(m.value_f64()), m.g.0, m.g.1)),
                    }
                }
                (None, Some(q_max)) => {
                    let cfg = ctx_cfg(Format::Csv)?;
                    let ctx = cfg.ctx()?;
                    let records = best_approx_scan(q_max, &ctx)?;
                    match cfg.format {
                        Format::Json => emit_json(&cfg, &RecordsOut { schema: 1, records: &records }),
                        _ => emit(&cfg, |w| write_records_csv(&records, &mut { w })),
                    }
                }
                (None, None) => Err(Error::InvalidArgument("one of --q or --qmax is required".into())),
            }
        }
        Command::Verify { p, q_max, c_count, o } => {
            let cfg = RunConfig::new(&p, &o, Format::Json, &[Format::Json])?;
            let ctx = cfg.ctx()?;
            let mut opts = VerifyOptions::new(q_max);
            opts.c_cloud_count = c_count;
            let report = theorem_verify(&opts, &ctx)?;
            emit(&cfg, |w| w.write_all(report.to_json().as_bytes()))?;
            report.check()
        }
        Command::EstimateC { p, count, window, o } => {
            let cfg = RunConfig::new(&p, &o, Format::Json, &[Format::Json])?;
            let ctx = cfg.ctx()?;
            let c = estimate_c(count, window, &ctx)?;
            emit_json(&cfg, &EstimateOut { schema: 1, a: cfg.params.a(), b: cfg.params.b(), estimate: c })
        }
    }
}

fn merge_box(
    x: Option<crate::geometry::ppm::BoundingBox>,
    y: Option<crate::geometry::ppm::BoundingBox>,
) -> Option<crate::geometry::ppm::BoundingBox> {
    match (x, y) {
        (Some(p), Some(q)) => Some((p.0.min(q.0), p.1.max(q.1), p.2.min(q.2), p.3.max(q.3))),
        (p, q) => p.or(q),
    }
}
