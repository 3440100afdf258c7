//! SVG drawings of a packing window.
//!
//! Geometry is emitted in packing coordinates inside one group that flips the
//! y axis, so every `cx`, `cy`, `r` in the file is the exact value rounded to
//! 12 significant digits.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactnum::{cmp_hinted, ExactReal};
use crate::packing::{enumerate, Bound, Circle, EnumSpec, Label, PackingContext, Shape, Window};
use crate::par::Exec;
use crate::replacement::replace_trace;

pub const TRACE_FILL: &str = "#c0c0c0";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub alpha: ExactReal,
    /// `(x_min, x_max)`; `None` frames every enumerated circle.
    pub window: Option<(ExactReal, ExactReal)>,
    pub depth: Bound,
    pub width_px: u32,
    /// Shade the circles visited by this many replacement steps.
    pub highlight_trace: Option<usize>,
    pub include_offline_gasket: bool,
    pub exec: Exec,
}

impl RenderSpec {
    pub fn new(alpha: ExactReal, depth: Bound) -> Self {
        RenderSpec {
            alpha,
            window: None,
            depth,
            width_px: 800,
            highlight_trace: None,
            include_offline_gasket: true,
            exec: Exec::default(),
        }
    }
}

/// A drawn element; `gray` marks replacement-trace members.
#[derive(Clone, Debug)]
struct Item {
    circle: Circle,
    gray: bool,
    key: [f64; 3],
}

/// Circles visited by the first `k` replacement steps, initial pair included.
pub fn trace_labels(ctx: &PackingContext, k: usize) -> Vec<Label> {
    let (_, states) = replace_trace(ctx, k);
    let mut seen = HashSet::new();
    let mut out = vec![];
    for s in &states {
        for l in [&s.x_label, &s.y_label] {
            if seen.insert(l.clone()) {
                out.push(l.clone());
            }
        }
    }
    out
}

fn validate(spec: &RenderSpec) -> Result<()> {
    if spec.width_px == 0 {
        return Err(Error::InvalidWindow("width must be positive".into()));
    }
    if let Some((lo, hi)) = &spec.window {
        Window::new(lo.clone(), hi.clone(), None)?;
    }
    Ok(())
}

fn enum_spec(spec: &RenderSpec) -> Result<EnumSpec> {
    let e = match &spec.depth {
        Bound::MaxGeneration(n) => EnumSpec::generations(*n),
        Bound::MinRadius(r) => {
            let window = match &spec.window {
                Some((lo, hi)) => {
                    let y_max = spec.include_offline_gasket.then(|| hi - lo);
                    Window::new(lo.clone(), hi.clone(), y_max)?
                }
                None => Window::default_for(&spec.alpha),
            };
            EnumSpec::min_radius(r.clone(), Some(window))
        }
    };
    Ok(e.with_offline(spec.include_offline_gasket)
        .with_exec(spec.exec))
}

fn meets_window(c: &Circle, window: &Option<(ExactReal, ExactReal)>) -> bool {
    let (Some((lo, hi)), Shape::Round { center, radius }) = (window, &c.shape) else {
        return true;
    };
    &(&center.0 - radius) <= hi && &(&center.0 + radius) >= lo
}

fn item_key(c: &Circle) -> [f64; 3] {
    match &c.shape {
        Shape::Line { height } => [height.to_f64(), 0.0, 0.0],
        Shape::Round { center, radius } => [center.0.to_f64(), center.1.to_f64(), radius.to_f64()],
    }
}

/// Lines first by height, then circles by generation and abscissa.
fn item_order(a: &Item, b: &Item) -> Ordering {
    let gen = |i: &Item| i.circle.generation.unwrap_or(u32::MAX);
    match (&a.circle.shape, &b.circle.shape) {
        (Shape::Line { height: h1 }, Shape::Line { height: h2 }) => {
            cmp_hinted(h1, a.key[0], h2, b.key[0])
        }
        (Shape::Line { .. }, _) => Ordering::Less,
        (_, Shape::Line { .. }) => Ordering::Greater,
        (
            Shape::Round {
                center: c1,
                radius: r1,
            },
            Shape::Round {
                center: c2,
                radius: r2,
            },
        ) => gen(a)
            .cmp(&gen(b))
            .then_with(|| cmp_hinted(&c1.0, a.key[0], &c2.0, b.key[0]))
            .then_with(|| cmp_hinted(&c1.1, a.key[1], &c2.1, b.key[1]))
            .then_with(|| cmp_hinted(r1, a.key[2], r2, b.key[2])),
    }
}

/// Rounds to 12 significant digits and prints without an exponent.
pub fn fmt_coord(v: f64) -> String {
    let r: f64 = format!("{v:.11e}").parse().expect("float text");
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

pub fn render_svg(spec: &RenderSpec) -> Result<String> {
    validate(spec)?;
    let ctx = PackingContext::new(&spec.alpha)?;
    let circles = enumerate(&ctx, &enum_spec(spec)?)?;

    let trace: Vec<Label> = spec
        .highlight_trace
        .map(|k| trace_labels(&ctx, k))
        .unwrap_or_default();
    let gray: HashSet<&Label> = trace.iter().collect();
    let mut items: Vec<Item> = spec
        .exec
        .map(&circles, |c| {
            meets_window(c, &spec.window).then(|| Item {
                circle: c.clone(),
                gray: c.label.as_ref().is_some_and(|l| gray.contains(l)),
                key: item_key(c),
            })
        })
        .into_iter()
        .flatten()
        .collect();
    // trace members beyond the enumeration bound are still drawn
    let present: HashSet<&Label> = items
        .iter()
        .filter_map(|i| i.circle.label.as_ref())
        .collect();
    let mut missing = vec![];
    for l in &trace {
        if !present.contains(l) {
            let c = ctx.circle(l)?;
            if meets_window(&c, &spec.window) {
                missing.push(Item {
                    key: item_key(&c),
                    circle: c,
                    gray: true,
                });
            }
        }
    }
    items.extend(missing);
    if !items.iter().any(|i| !i.circle.is_line()) {
        return Err(Error::EmptyWindow);
    }
    items.sort_by(item_order);
    Ok(draw(spec, &items))
}

fn draw(spec: &RenderSpec, items: &[Item]) -> String {
    let rounds = items.iter().filter(|i| !i.circle.is_line());
    let (x_min, x_max) = match &spec.window {
        Some((lo, hi)) => (lo.to_f64(), hi.to_f64()),
        None => rounds.clone().fold((f64::MAX, f64::MIN), |(lo, hi), i| {
            (lo.min(i.key[0] - i.key[2]), hi.max(i.key[0] + i.key[2]))
        }),
    };
    let span = x_max - x_min;
    let mut y_top = items.iter().fold(0.0f64, |top, i| match i.circle.shape {
        Shape::Line { .. } => top.max(i.key[0]),
        Shape::Round { .. } => top.max(i.key[1] + i.key[2]),
    });
    if spec.window.is_some() {
        y_top = y_top.min(span);
    }
    let margin = 0.02 * span;
    let (left, right) = (x_min - margin, x_max + margin);
    let scale = f64::from(spec.width_px) / (right - left);
    let height_px = ((y_top + 2.0 * margin) * scale).ceil().max(1.0) as u64;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{height_px}\" viewBox=\"0 0 {w} {height_px}\">",
        w = spec.width_px
    );
    s.push_str("<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    // packing (x, y) lands at pixel ((x - left) * scale, (y_top + margin - y) * scale)
    let _ = writeln!(
        s,
        "<g transform=\"matrix({sc} 0 0 {nsc} {tx} {ty})\" fill=\"none\" stroke=\"black\" stroke-width=\"{sw}\">",
        sc = fmt_coord(scale),
        nsc = fmt_coord(-scale),
        tx = fmt_coord(-left * scale),
        ty = fmt_coord((y_top + margin) * scale),
        sw = fmt_coord(1.0 / scale),
    );
    for i in items {
        match &i.circle.shape {
            Shape::Line { .. } => {
                let h = fmt_coord(i.key[0]);
                let stroke = if i.gray {
                    format!(" stroke=\"{TRACE_FILL}\"")
                } else {
                    String::new()
                };
                let _ = writeln!(
                    s,
                    "<line x1=\"{}\" y1=\"{h}\" x2=\"{}\" y2=\"{h}\"{stroke}/>",
                    fmt_coord(left),
                    fmt_coord(right)
                );
            }
            Shape::Round { .. } => {
                let fill = if i.gray {
                    format!(" fill=\"{TRACE_FILL}\"")
                } else {
                    String::new()
                };
                let _ = writeln!(
                    s,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"{fill}/>",
                    fmt_coord(i.key[0]),
                    fmt_coord(i.key[1]),
                    fmt_coord(i.key[2])
                );
            }
        }
    }
    s.push_str("</g>\n</svg>\n");
    s
}
