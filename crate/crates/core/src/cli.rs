//! Command-line front end. Exit codes: 0 success, 1 engine error, 2 usage or
//! parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::contfrac::{canonical_class, cf_expand, convergents, step_trace, CfClass};
use crate::error::Error;
use crate::exactnum::ExactReal;
use crate::packing::{enumerate, Bound, Circle, EnumSpec, Label, PackingContext, Shape, Window};
use crate::render::{render_svg, RenderSpec, TRACE_FILL};
use crate::replacement::replace_trace;
use crate::symmetry::{
    orientation_reversing_exists, similar, similarity_orientations, symm_group, Matrix2,
    Orientations, Similarity, SymmDescription,
};

#[derive(Parser, Debug)]
#[command(
    name = "apollonian-cf",
    version,
    about = "Exact half-plane Apollonian packings and their continued fractions"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Step limit for `steps` and `replace`.
    #[arg(long, global = true, value_name = "N", default_value_t = 1000)]
    max_steps: usize,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Allow `--approx`.
    #[arg(long, global = true)]
    unsafe_approx: bool,
    /// Use the simplest rational near this decimal as alpha.
    #[arg(
        long,
        global = true,
        value_name = "DECIMAL",
        allow_hyphen_values = true
    )]
    approx: Option<String>,
    /// Decimal places kept by `--approx`.
    #[arg(long, global = true, value_name = "K", default_value_t = 6)]
    digits: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Depth {
    /// Enumerate this many generations.
    #[arg(long, value_name = "N", conflicts_with = "min_radius")]
    generations: Option<u32>,
    /// Enumerate every circle of at least this radius in the window.
    #[arg(long, value_name = "R")]
    min_radius: Option<String>,
    /// Horizontal extent of the window.
    #[arg(long, num_args = 2, value_names = ["XMIN", "XMAX"], allow_hyphen_values = true)]
    window: Option<Vec<String>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Continued fraction with its period.
    Cf {
        #[arg(allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Letters A, B, C of the continued-fraction algorithm.
    Steps {
        #[arg(allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Convergents p/q.
    Convergents {
        #[arg(allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(short, long, default_value_t = 10)]
        n: usize,
    },
    /// Circles of the packing.
    Circles {
        #[arg(allow_hyphen_values = true)]
        alpha: Option<String>,
        #[command(flatten)]
        depth: Depth,
        /// Upper limit on center heights; with --offline and irrational alpha
        /// it defaults to the window width.
        #[arg(long, value_name = "Y")]
        ymax: Option<String>,
        /// Include circles not tangent to the base line.
        #[arg(long)]
        offline: bool,
    },
    /// Similarity of two packings, with a witness matrix.
    Similar {
        /// First number, or the only one (BETA) with --approx.
        #[arg(allow_hyphen_values = true, value_name = "ALPHA")]
        first: String,
        #[arg(allow_hyphen_values = true, value_name = "BETA")]
        second: Option<String>,
    },
    /// Self-similarity group.
    Symm {
        #[arg(allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Similarity class: least rotation of the period, or strip.
    Class {
        #[arg(allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Circle-replacement run.
    Replace {
        #[arg(allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Number of steps; defaults to --max-steps.
        #[arg(long)]
        steps: Option<usize>,
        /// One line per step.
        #[arg(long)]
        trace: bool,
    },
    /// SVG drawing.
    Render {
        #[arg(allow_hyphen_values = true)]
        alpha: Option<String>,
        #[command(flatten)]
        depth: Depth,
        /// Image width in pixels.
        #[arg(long, default_value_t = 800)]
        width: u32,
        /// Shade the circles visited by this many replacement steps.
        #[arg(long, value_name = "K")]
        highlight: Option<usize>,
        /// Draw only circles tangent to the base line.
        #[arg(long)]
        lines_only: bool,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
enum Fail {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax(_) => Fail::Usage(e.to_string()),
            e => Fail::Engine(e),
        }
    }
}

/// `body` goes to `--out` or stdout; `note` always goes to stdout.
struct Emit {
    body: String,
    note: Option<String>,
}

impl From<String> for Emit {
    fn from(body: String) -> Self {
        Emit { body, note: None }
    }
}

type Outcome = std::result::Result<Emit, Fail>;

/// Runs the CLI on `args` (program name first), writing to the given
/// streams. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("error: bad arguments");
            let _ = writeln!(stderr, "{first}");
            return 2;
        }
    };
    let result = dispatch(&cli, stderr).and_then(|emit| match &cli.out {
        Some(path) => std::fs::write(path, emit.body.as_bytes())
            .map(|_| emit.note.unwrap_or_default())
            .map_err(|e| Fail::Engine(Error::Io(format!("{}: {e}", path.display())))),
        None => Ok(emit.body),
    });
    match result {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(Fail::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            2
        }
        Err(Fail::Engine(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn number(text: &str) -> std::result::Result<ExactReal, Fail> {
    ExactReal::parse(text).map_err(|e| Fail::Usage(format!("{text:?}: {e}")))
}

fn alpha_of(
    cli: &Cli,
    given: &Option<String>,
    stderr: &mut dyn Write,
) -> std::result::Result<ExactReal, Fail> {
    match (&cli.approx, given) {
        (Some(_), Some(_)) => Err(Fail::Usage(
            "give either a number or --approx, not both".into(),
        )),
        (None, None) => Err(Fail::Usage("missing number argument".into())),
        (None, Some(t)) => number(t),
        (Some(d), None) => {
            if !cli.unsafe_approx {
                return Err(Fail::Usage(
                    "--approx is disabled: classification is discontinuous in alpha; pass --unsafe-approx to snap a decimal to a rational anyway".into(),
                ));
            }
            let x = snap_decimal(d, cli.digits)?;
            let _ = writeln!(
                stderr,
                "warning: using {x} for {d}; a rational alpha always gives a strip packing"
            );
            Ok(x)
        }
    }
}

/// The simplest rational within half a unit of the `digits`-th decimal
/// place of `text`.
fn snap_decimal(text: &str, digits: u32) -> std::result::Result<ExactReal, Fail> {
    let bad = || Fail::Usage(format!("{text:?} is not a decimal number"));
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits_all: BigInt = format!("{int}{frac}0").parse().map_err(|_| bad())?;
    let scale = BigInt::from(10).pow(frac.len() as u32 + 1);
    let mut v = BigRational::new(digits_all, scale);
    if neg {
        v = -v;
    }
    let half = BigRational::new(
        BigInt::one(),
        BigInt::from(2) * BigInt::from(10).pow(digits),
    );
    Ok(ExactReal::from(simplest_between(
        &(&v - &half),
        &(&v + &half),
    )))
}

/// Smallest-denominator rational in `[lo, hi]`.
fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    if !lo.is_positive() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if &fl + BigRational::one() <= *hi {
        return fl + BigRational::one();
    }
    // same integer part: recurse on the reciprocals of the fractional parts
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

fn int(b: &BigInt) -> Value {
    serde_json::from_str(&b.to_string()).expect("integer literal")
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn label_json(l: &Label) -> Value {
    json!([int(&l.a), int(&l.b)])
}

fn matrix_json(m: &Matrix2) -> Value {
    let [[a, b], [c, d]] = m.rows();
    json!([[int(a), int(b)], [int(c), int(d)]])
}

fn class_json(c: &CfClass) -> Value {
    match c {
        CfClass::StripClass => json!("strip"),
        CfClass::Sequence(s) => ints(s),
    }
}

fn lines(v: impl IntoIterator<Item = String>) -> String {
    v.into_iter().map(|l| l + "\n").collect()
}

fn one_json(v: Value) -> String {
    format!("{v}\n")
}

fn dispatch(cli: &Cli, stderr: &mut dyn Write) -> Outcome {
    if let Command::Render { .. } = cli.command {
        return render_command(cli, stderr);
    }
    text_command(cli, stderr).map(Emit::from)
}

fn text_command(cli: &Cli, stderr: &mut dyn Write) -> std::result::Result<String, Fail> {
    match &cli.command {
        Command::Cf { alpha } => {
            let a = alpha_of(cli, alpha, stderr)?;
            let e = cf_expand(&a)?;
            Ok(if cli.json {
                one_json(json!({
                    "alpha": a.to_string(),
                    "expansion": e.to_string(),
                    "head": ints(e.head()),
                    "period": e.period().map(ints),
                }))
            } else {
                lines([e.to_string()])
            })
        }
        Command::Steps { alpha } => {
            let a = alpha_of(cli, alpha, stderr)?;
            let t = step_trace(&a, cli.max_steps)?;
            let halted = t.ends_with('C');
            Ok(if cli.json {
                one_json(json!({"alpha": a.to_string(), "trace": t, "halted": halted}))
            } else {
                lines([t])
            })
        }
        Command::Convergents { alpha, n } => {
            let a = alpha_of(cli, alpha, stderr)?;
            let cs = convergents(&cf_expand(&a)?, *n)?;
            Ok(if cli.json {
                let rows: Vec<Value> = cs
                    .iter()
                    .map(|c| {
                        json!({"index": c.index, "p": int(&c.p), "q": int(&c.q), "value": c.value().to_string()})
                    })
                    .collect();
                one_json(json!({"alpha": a.to_string(), "convergents": rows}))
            } else {
                lines(
                    std::iter::once("n\tp\tq".to_string())
                        .chain(cs.iter().map(|c| format!("{}\t{}\t{}", c.index, c.p, c.q))),
                )
            })
        }
        Command::Circles {
            alpha,
            depth,
            ymax,
            offline,
        } => {
            let a = alpha_of(cli, alpha, stderr)?;
            let ctx = PackingContext::new(&a)?;
            let bound = bound_of(depth, 5)?;
            let window = match (&depth.window, ymax) {
                (Some(w), y) => {
                    let (lo, hi) = (number(&w[0])?, number(&w[1])?);
                    let top = match y {
                        Some(y) => Some(number(y)?),
                        None if *offline && !a.is_rational() => Some(&hi - &lo),
                        None => None,
                    };
                    Some(Window::new(lo, hi, top)?)
                }
                (None, Some(_)) => {
                    return Err(Fail::Usage("--ymax needs --window".into()));
                }
                (None, None) => None,
            };
            let spec = EnumSpec {
                bound,
                offline: *offline,
                window,
                exec: Default::default(),
            };
            let cs = enumerate(&ctx, &spec)?;
            Ok(if cli.json {
                lines(cs.iter().map(|c| circle_json(c).to_string()))
            } else {
                lines(
                    std::iter::once("gen\tlabel\tsqrt_curv\tshape".to_string())
                        .chain(cs.iter().map(circle_row)),
                )
            })
        }
        Command::Similar { first, second } => {
            let (alpha, beta) = match (second, &cli.approx) {
                (None, Some(_)) => (None, first),
                (Some(b), _) => (Some(first.clone()), b),
                (None, None) => return Err(Fail::Usage("similar needs two numbers".into())),
            };
            let a = alpha_of(cli, &alpha, stderr)?;
            let b = number(beta)?;
            let sim = similar(&a, &b)?;
            let orient = similarity_orientations(&a, &b)?;
            let orient_name = match orient {
                Orientations::None => "none",
                Orientations::Both => "both",
                Orientations::OnlyPreserving => "only-preserving",
                Orientations::OnlyReversing => "only-reversing",
            };
            Ok(match (&sim, cli.json) {
                (Similarity::Similar(w), true) => one_json(json!({
                    "similar": true,
                    "witness": matrix_json(w),
                    "det": w.det(),
                    "orientations": orient_name,
                })),
                (Similarity::NotSimilar, true) => one_json(json!({
                    "similar": false,
                    "witness": null,
                    "det": null,
                    "orientations": orient_name,
                })),
                (Similarity::Similar(w), false) => lines([
                    "similar".to_string(),
                    format!("witness: {w} (det {})", w.det()),
                    format!("orientations: {orient_name}"),
                ]),
                (Similarity::NotSimilar, false) => lines(["not similar".to_string()]),
            })
        }
        Command::Symm { alpha } => {
            let a = alpha_of(cli, alpha, stderr)?;
            symm_output(&a, cli.json)
        }
        Command::Class { alpha } => {
            let a = alpha_of(cli, alpha, stderr)?;
            let c = canonical_class(&cf_expand(&a)?);
            Ok(if cli.json {
                one_json(json!({"alpha": a.to_string(), "class": class_json(&c)}))
            } else {
                lines([c.to_string()])
            })
        }
        Command::Replace {
            alpha,
            steps,
            trace,
        } => {
            let a = alpha_of(cli, alpha, stderr)?;
            let ctx = PackingContext::new(&a)?;
            let (letters, states) = replace_trace(&ctx, steps.unwrap_or(cli.max_steps));
            let halted = letters.ends_with('C');
            if cli.json {
                let rows: Vec<Value> = letters
                    .chars()
                    .zip(&states)
                    .enumerate()
                    .map(|(n, (l, s))| {
                        json!({
                            "n": n,
                            "step": l.to_string(),
                            "x_label": label_json(&s.x_label),
                            "y_label": label_json(&s.y_label),
                            "ratio": s.ratio().to_string(),
                            "ratio_f64": s.ratio().to_f64(),
                        })
                    })
                    .collect();
                return Ok(one_json(json!({
                    "alpha": a.to_string(),
                    "trace": letters,
                    "halted": halted,
                    "steps": rows,
                })));
            }
            if *trace {
                return Ok(lines(letters.chars().zip(&states).enumerate().map(
                    |(n, (l, s))| {
                        let r = s.ratio();
                        format!(
                            "{n}  {l}  {}  {}  {r}  {}",
                            s.x_label,
                            s.y_label,
                            r.to_f64()
                        )
                    },
                )));
            }
            let last = states.last().expect("initial state");
            Ok(lines([
                letters,
                format!("X = {}  Y = {}", last.x_label, last.y_label),
            ]))
        }
        Command::Render { .. } => unreachable!("handled by render_command"),
    }
}

fn render_command(cli: &Cli, stderr: &mut dyn Write) -> Outcome {
    let Command::Render {
        alpha,
        depth,
        width,
        highlight,
        lines_only,
    } = &cli.command
    else {
        unreachable!("render only");
    };
    let a = alpha_of(cli, alpha, stderr)?;
    let mut spec = RenderSpec::new(a, bound_of(depth, 8)?);
    spec.width_px = *width;
    spec.highlight_trace = *highlight;
    spec.include_offline_gasket = !lines_only;
    spec.window = match &depth.window {
        Some(w) => Some((number(&w[0])?, number(&w[1])?)),
        None => None,
    };
    let svg = render_svg(&spec)?;
    if !cli.json {
        return Ok(svg.into());
    }
    let summary = json!({
        "circles": svg.matches("<circle ").count(),
        "lines": svg.matches("<line ").count(),
        "gray": svg.matches(TRACE_FILL).count(),
        "bytes": svg.len(),
    });
    // with --out the SVG goes to the file and the summary to stdout
    if cli.out.is_some() {
        return Ok(Emit {
            body: svg,
            note: Some(one_json(summary)),
        });
    }
    let mut v = summary;
    v["svg"] = json!(svg);
    Ok(one_json(v).into())
}

fn bound_of(depth: &Depth, default_generations: u32) -> std::result::Result<Bound, Fail> {
    Ok(match (&depth.generations, &depth.min_radius) {
        (_, Some(r)) => Bound::MinRadius(number(r)?),
        (Some(n), None) => Bound::MaxGeneration(*n),
        (None, None) => Bound::MaxGeneration(default_generations),
    })
}

pub fn circle_json(c: &Circle) -> Value {
    let (center, radius, height) = match &c.shape {
        Shape::Round { center, radius } => (
            json!([center.0.to_f64(), center.1.to_f64()]),
            json!(radius.to_f64()),
            Value::Null,
        ),
        Shape::Line { height } => (Value::Null, Value::Null, json!(height.to_f64())),
    };
    let sqrt_curv = match (&c.sqrt_curv, &c.shape) {
        (Some(s), _) => json!(s.to_string()),
        (None, Shape::Line { .. }) => json!("0"),
        (None, Shape::Round { .. }) => Value::Null,
    };
    json!({
        "label": c.label.as_ref().map(label_json),
        "sqrt_curv": sqrt_curv,
        "curv_f64": c.curvature.to_f64(),
        "center": center,
        "radius": radius,
        "line_height": height,
        "generation": c.generation,
    })
}

fn circle_row(c: &Circle) -> String {
    let gen = c.generation.map_or("-".into(), |g| g.to_string());
    let label = c.label.as_ref().map_or("-".into(), |l| l.to_string());
    let s = c.sqrt_curv.as_ref().map_or("-".into(), |s| s.to_string());
    let shape = match &c.shape {
        Shape::Round { center, radius } => {
            format!(
                "circle center ({}, {}) radius {}",
                center.0, center.1, radius
            )
        }
        Shape::Line { height } => format!("line y = {height}"),
    };
    format!("{gen}\t{label}\t{s}\t{shape}")
}

fn symm_output(a: &ExactReal, as_json: bool) -> std::result::Result<String, Fail> {
    let desc = symm_group(a)?;
    let reversing = orientation_reversing_exists(a)?;
    let class = canonical_class(&cf_expand(a)?);
    let kind = match &desc {
        SymmDescription::Trivial => "trivial",
        SymmDescription::Strip => "strip",
        SymmDescription::Cyclic { .. } => "cyclic",
    };
    if as_json {
        let (generator, det, scale_sq, pell) = match &desc {
            SymmDescription::Cyclic {
                generator,
                scale_sq,
                pell,
                ..
            } => (
                matrix_json(generator),
                json!(generator.det()),
                json!(scale_sq.to_string()),
                json!({"x": int(&pell.x), "y": int(&pell.y), "rhs": pell.rhs}),
            ),
            _ => (Value::Null, Value::Null, Value::Null, Value::Null),
        };
        return Ok(one_json(json!({
            "kind": kind,
            "generator": generator,
            "det": det,
            "scale_sq": scale_sq,
            "pell": pell,
            "orientation_reversing": reversing,
            "class": class_json(&class),
        })));
    }
    let mut out = vec![];
    match &desc {
        SymmDescription::Strip => out.push("group: D_inf x Z/2 (strip)".to_string()),
        SymmDescription::Trivial => out.push("group: trivial".to_string()),
        SymmDescription::Cyclic {
            generator,
            scale_sq,
            pell,
            ..
        } => {
            out.push("group: Z".to_string());
            out.push(format!("generator: {generator} (det {})", generator.det()));
            out.push(format!("scale_sq: {scale_sq}"));
            out.push(format!(
                "pell: x = {}, y = {}, rhs = {}",
                pell.x, pell.y, pell.rhs
            ));
        }
    }
    out.push(format!("orientation-reversing: {reversing}"));
    out.push(format!("class: {class}"));
    Ok(lines(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = vec![];
        let mut err = vec![];
        let code = run(
            std::iter::once("apollonian-cf").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn simplest_rationals() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(simplest_between(&r(3, 10), &r(4, 10)), r(1, 3));
        assert_eq!(simplest_between(&r(-4, 10), &r(-3, 10)), r(-1, 3));
        assert_eq!(simplest_between(&r(-1, 10), &r(1, 10)), r(0, 1));
        assert_eq!(simplest_between(&r(7, 5), &r(7, 5)), r(7, 5));
        assert_eq!(
            snap_decimal("1.6180339887", 6).unwrap(),
            "1597/987".parse().unwrap()
        );
        assert!(snap_decimal("1.2.3", 3).is_err());
        assert!(snap_decimal(".", 3).is_err());
    }

    #[test]
    fn approx_needs_opt_in() {
        let (code, _, err) = run_args(&["cf", "--approx", "1.5"]);
        assert_eq!(code, 2);
        assert!(err.contains("--unsafe-approx"));
        let (code, out, err) = run_args(&["cf", "--approx", "1.5", "--unsafe-approx"]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(out, "[1; 2]\n");
        assert!(err.starts_with("warning:"));
        let (code, _, _) = run_args(&["cf", "2", "--approx", "1.5", "--unsafe-approx"]);
        assert_eq!(code, 2);
    }
}
