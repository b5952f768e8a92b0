//! The `pinwheel-forge` command line.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use pinwheel_core::analysis::{
    detect_pinwheel_like, orientation_stats, tile_frequencies, upf_probe, weyl_ratio,
    DetectOptions, SampleStats, UpfOptions,
};
use pinwheel_core::angle::{Angle, GeneratorRegistry};
use pinwheel_core::tiling::{verify_rule, SubstitutionRule};

use crate::error::{ForgeError, Result};
use crate::generate::supertile_par;
use crate::load_rule;
use crate::patchfile::{read_patch, write_patch, PatchFile};
use crate::rulefile::{export_rule, from_json, import_rule, to_json};
use crate::svg::{render_svg, ColorBy, SvgStyle};

pub const THREADS_ENV: &str = "PINWHEEL_FORGE_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "pinwheel-forge",
    version,
    about = "Substitution tilings: generate, verify, render, analyze"
)]
pub struct Cli {
    /// Worker threads (falls back to PINWHEEL_FORGE_THREADS, then all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct RuleArg {
    /// Family spec (`pythagoras:3,1`, `pythia:3,1`, `tipi:3,1`, `pinwheel`) or a rule file.
    #[arg(long)]
    pub rule: String,
    /// Load rule files even when verification fails.
    #[arg(long)]
    pub allow_unverified: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the supertile sigma^level(T_root) as a patch file.
    Gen {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a patch file as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long, value_enum, default_value_t = ColorBy::Type)]
        color_by: ColorBy,
        #[arg(long, default_value_t = 800.0)]
        width: f64,
        #[arg(long)]
        allow_empty: bool,
    },
    /// Check that every inflated prototile is tiled by its children.
    Verify {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    #[command(subcommand)]
    Analyze(Analyze),
    /// Search supertiles for same-type tiles rotated by an irrational angle.
    Detect {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long, default_value_t = 6)]
        max_depth: usize,
        #[arg(long)]
        accept_numeric: bool,
    },
    /// Asymptotic tile-type frequencies.
    Frequencies {
        #[command(flatten)]
        rule: RuleArg,
    },
    #[command(subcommand)]
    Rule(RuleCmd),
}

#[derive(Debug, Subcommand)]
pub enum Analyze {
    /// Orientation histogram, star discrepancy and Weyl sums of a patch.
    Orientations {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 5)]
        tmax: usize,
        #[arg(long, default_value_t = 360)]
        bins: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Decay of |M(t)^r| / S^r.
    Weyl {
        #[command(flatten)]
        rule: RuleArg,
        /// A frequency `t` or an inclusive range `a..b`.
        #[arg(long, default_value = "1..5")]
        t: String,
        #[arg(long, default_value_t = 12)]
        r: u32,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Radius within which every ball holds a near-translate of the probe.
    Upf {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long)]
        probe: PathBuf,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long, default_value_t = 6)]
        level: usize,
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(long, default_value_t = 8)]
        grid: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum RuleCmd {
    /// Write a rule file.
    Export {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Load and verify a rule file.
    Import {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        allow_unverified: bool,
    },
}

pub fn main() -> ! {
    let code = run(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    std::process::exit(code)
}

/// Parses `argv` (including the program name) and executes it. Returns 0,
/// 1 when the operation fails, or 2 on a usage error.
pub fn run<I, T>(argv: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{}", text)
            } else {
                write!(err, "{}", text)
            };
            return code;
        }
    };
    let threads = match thread_count(cli.threads) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: IoError: {}", e);
            return 1;
        }
    };
    match pool.install(|| execute(&cli.command, out, err)) {
        Ok(()) => 0,
        Err(ForgeError::Usage(m)) => {
            let _ = writeln!(err, "error: {}", m);
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}: {}", e.name(), e);
            1
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<usize> {
    if let Some(n) = flag {
        return if n == 0 {
            Err(ForgeError::Usage("--threads must be at least 1".into()))
        } else {
            Ok(n)
        };
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(ForgeError::Usage(format!(
                "{} must be a positive integer, got '{}'",
                THREADS_ENV, v
            ))),
        },
        Err(_) => Ok(0),
    }
}

fn rule_of(arg: &RuleArg) -> Result<SubstitutionRule> {
    load_rule(&arg.rule, arg.allow_unverified)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn open_patch(path: &Path) -> Result<PatchFile> {
    read_patch(BufReader::new(File::open(path)?))
}

fn execute(
    cmd: &Command,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Result<()> {
    match cmd {
        Command::Gen {
            rule,
            root,
            level,
            out: path,
        } => {
            let r = rule_of(rule)?;
            let p = supertile_par(&r, *root, *level)?;
            match path {
                Some(path) => {
                    let mut w = create(path)?;
                    write_patch(&mut w, &r, &p)?;
                    w.flush()?;
                    writeln!(
                        out,
                        "ok command=gen rule={} root={} level={} tiles={} out={}",
                        r.name(),
                        root,
                        level,
                        p.len(),
                        path.display()
                    )?;
                }
                None => {
                    let mut w = BufWriter::new(&mut *out);
                    write_patch(&mut w, &r, &p)?;
                    w.flush()?;
                    drop(w);
                    writeln!(
                        err,
                        "ok command=gen rule={} root={} level={} tiles={} out=-",
                        r.name(),
                        root,
                        level,
                        p.len()
                    )?;
                }
            }
        }
        Command::Render {
            input,
            svg,
            color_by,
            width,
            allow_empty,
        } => {
            let f = open_patch(input)?;
            let doc = render_svg(
                &f,
                &SvgStyle {
                    color_by: *color_by,
                    width: *width,
                    allow_empty: *allow_empty,
                },
            )?;
            std::fs::write(svg, doc)?;
            writeln!(
                out,
                "ok command=render polygons={} svg={}",
                f.patch.len(),
                svg.display()
            )?;
        }
        Command::Verify { rule, tol } => {
            let r = rule_of(rule)?;
            let rep = verify_rule(&r, *tol);
            writeln!(
                out,
                "rule {}: area_defect={:.3e} containment_defect={:.3e} overlap_defect={:.3e} worst_prototile={}",
                r.name(),
                rep.area_defect,
                rep.containment_defect,
                rep.overlap_defect,
                rep.worst_prototile
            )?;
            if !rep.pass {
                return Err(pinwheel_core::Error::VerifyFailed(format!(
                    "{} at tol {:e}",
                    r.name(),
                    tol
                ))
                .into());
            }
            writeln!(out, "ok command=verify rule={} pass=true", r.name())?;
        }
        Command::Analyze(a) => analyze(a, out)?,
        Command::Detect {
            rule,
            max_depth,
            accept_numeric,
        } => {
            let r = rule_of(rule)?;
            let mut opts = DetectOptions::depth(*max_depth);
            opts.accept_numeric = *accept_numeric;
            let v = detect_pinwheel_like(&r, &opts)?;
            match &v.witness {
                Some(w) => {
                    writeln!(
                        out,
                        "pinwheel-like: depth {} root {} tiles {} and {} of type {} ({}), rotated by {} [{}]",
                        w.depth,
                        w.root,
                        w.tiles.0,
                        w.tiles.1,
                        w.prototile,
                        if w.reflect { "reflected" } else { "direct" },
                        format_angle(&w.delta, r.registry()),
                        w.class.name()
                    )?;
                    writeln!(
                        out,
                        "ok command=detect rule={} found=true class={}",
                        r.name(),
                        w.class.name()
                    )?;
                }
                None => {
                    let rational = v.deltas.iter().all(Angle::is_rational_pi);
                    writeln!(
                        out,
                        "not pinwheel-like up to depth {}: {} orientation classes{}",
                        v.depth_reached,
                        v.class_count(),
                        if rational {
                            ", all rational multiples of pi"
                        } else {
                            ""
                        }
                    )?;
                    writeln!(
                        out,
                        "ok command=detect rule={} found=false classes={}",
                        r.name(),
                        v.class_count()
                    )?;
                }
            }
        }
        Command::Frequencies { rule } => {
            let r = rule_of(rule)?;
            let f = tile_frequencies(&r)?;
            for (k, v) in f.iter().enumerate() {
                writeln!(out, "T{} {:.15}", k, v)?;
            }
            writeln!(
                out,
                "ok command=frequencies rule={} types={}",
                r.name(),
                f.len()
            )?;
        }
        Command::Rule(RuleCmd::Export { rule, out: path }) => {
            let r = rule_of(rule)?;
            let text = to_json(&export_rule(&r))?;
            match path {
                Some(path) => {
                    std::fs::write(path, text)?;
                    writeln!(
                        out,
                        "ok command=rule-export rule={} out={}",
                        r.name(),
                        path.display()
                    )?;
                }
                None => {
                    out.write_all(text.as_bytes())?;
                    writeln!(err, "ok command=rule-export rule={} out=-", r.name())?;
                }
            }
        }
        Command::Rule(RuleCmd::Import {
            input,
            allow_unverified,
        }) => {
            let file = from_json(&std::fs::read_to_string(input)?)?;
            let imp = import_rule(&file, *allow_unverified)?;
            if !imp.report.pass {
                writeln!(
                    err,
                    "warning: rule '{}' fails verification, loaded anyway",
                    imp.rule.name()
                )?;
            }
            writeln!(out, "matrix {:?}", imp.rule.substitution_matrix())?;
            writeln!(
                out,
                "ok command=rule-import rule={} prototiles={} verified={}",
                imp.rule.name(),
                imp.rule.prototile_count(),
                imp.report.pass
            )?;
        }
    }
    Ok(())
}

fn analyze(a: &Analyze, out: &mut (dyn Write + Send)) -> Result<()> {
    match a {
        Analyze::Orientations {
            input,
            tmax,
            bins,
            csv,
        } => {
            let f = open_patch(input)?;
            let st = orientation_stats(&f.registry, &f.patch, *tmax, *bins)?;
            let mut header = vec![
                "level".to_string(),
                "sample".into(),
                "n".into(),
                "dstar".into(),
            ];
            header.extend((1..=*tmax).map(|t| format!("w{}", t)));
            let rows = [
                ("pooled", &st.pooled),
                ("direct", &st.direct),
                ("reflected", &st.reflected),
            ];
            let to_row = |name: &str, s: &SampleStats| {
                let mut r = vec![
                    st.level.to_string(),
                    name.to_string(),
                    s.n.to_string(),
                    format!("{:.12e}", s.star_discrepancy),
                ];
                r.extend(s.weyl.iter().map(|w| format!("{:.12e}", w)));
                r
            };
            write_csv(
                csv.as_deref(),
                out,
                &header,
                rows.iter().map(|(n, s)| to_row(n, s)),
            )?;
            writeln!(
                out,
                "ok command=analyze-orientations n={} dstar={:.6e} w1={:.6e}",
                st.pooled.n,
                st.pooled.star_discrepancy,
                st.pooled.weyl.first().copied().unwrap_or(f64::NAN)
            )?;
        }
        Analyze::Weyl { rule, t, r, csv } => {
            let rl = rule_of(rule)?;
            let (t0, t1) = parse_range(t)?;
            if *r == 0 {
                return Err(ForgeError::Usage("--r must be at least 1".into()));
            }
            let mut rows = Vec::new();
            let mut last = 0.0;
            for tt in t0..=t1 {
                for rr in 1..=*r {
                    last = weyl_ratio(&rl, tt, rr)?;
                    rows.push(vec![
                        tt.to_string(),
                        rr.to_string(),
                        format!("{:.12e}", last),
                    ]);
                }
            }
            write_csv(
                csv.as_deref(),
                out,
                &["t".into(), "r".into(), "ratio".into()],
                rows.into_iter(),
            )?;
            writeln!(
                out,
                "ok command=analyze-weyl rule={} t={}..{} r={} last_ratio={:.6e}",
                rl.name(),
                t0,
                t1,
                r,
                last
            )?;
        }
        Analyze::Upf {
            rule,
            probe,
            eps,
            level,
            root,
            grid,
        } => {
            let rl = rule_of(rule)?;
            let pf = open_patch(probe)?;
            if pf.rule != rl.name() {
                return Err(ForgeError::Schema(format!(
                    "probe comes from rule '{}', not '{}'",
                    pf.rule,
                    rl.name()
                )));
            }
            let opts = UpfOptions {
                eps_rot: *eps,
                level: *level,
                root: *root,
                grid_per_inradius: *grid,
            };
            let res = upf_probe(&rl, &pf.patch, &opts)?;
            match res.r_estimate {
                Some(r) => writeln!(
                    out,
                    "r_estimate {:.9} (grid spacing {:.6}, {} centres, {} occurrences)",
                    r, res.grid_spacing, res.centers, res.occurrences
                )?,
                None => writeln!(
                    out,
                    "not_found ({} centres, {} occurrences)",
                    res.centers, res.occurrences
                )?,
            }
            writeln!(
                out,
                "ok command=analyze-upf rule={} found={} r_estimate={}",
                rl.name(),
                res.r_estimate.is_some(),
                res.r_estimate
                    .map_or("none".to_string(), |r| format!("{:.9}", r))
            )?;
        }
    }
    Ok(())
}

/// Writes to `path`, or to `out` when no path is given.
fn write_csv(
    path: Option<&Path>,
    out: &mut (dyn Write + Send),
    header: &[String],
    rows: impl Iterator<Item = Vec<String>>,
) -> Result<()> {
    let sink: Box<dyn Write + Send + '_> = match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(&mut *out),
    };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.flush()?;
    Ok(())
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || ForgeError::Usage(format!("expected an integer or a range a..b, got '{}'", s));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn format_angle(a: &Angle, reg: &GeneratorRegistry) -> String {
    let pi = a.pi_part();
    let mut s = if *pi.numer() == 0 {
        String::new()
    } else {
        format!("{}/{}*pi", pi.numer(), pi.denom())
    };
    for (g, &k) in reg.entries().iter().zip(a.gens()) {
        if k != 0 {
            let sign = if k < 0 {
                "-"
            } else if s.is_empty() {
                ""
            } else {
                "+"
            };
            s.push_str(&format!("{}{}*{}", sign, k.abs(), g.name));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
