//! Generation-wise construction of the packing.
//!
//! Every generalized circle is tracked by its augmented curvature-center
//! coordinates `(k', k, k x, k y)`, where `k' = k |c|^2 - 1/k` is the
//! curvature of the image under inversion in the unit circle. Lines get
//! `(2h, 0, n_x, n_y)` with `n` the unit normal pointing into the excluded
//! side. In these coordinates the second circle tangent to three mutually
//! tangent ones is `2 (A + B + C) - D`, coordinate by coordinate, so every
//! fill is a handful of exact additions.

use std::cmp::Ordering;

use num_traits::Signed;

use super::{Circle, Label, PackingContext, Shape};
use crate::error::{Error, Result};
use crate::exactnum::{cmp_hinted, ExactReal};
use crate::par::Exec;

/// When to stop enumerating.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    /// Everything up to and including this generation.
    MaxGeneration(u32),
    /// Every circle of at least this radius whose center lies in the window.
    MinRadius(ExactReal),
}

/// Selection rectangle `[x_min, x_max] x [0, y_max]`; a missing `y_max`
/// means no vertical limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub x_min: ExactReal,
    pub x_max: ExactReal,
    pub y_max: Option<ExactReal>,
}

impl Window {
    pub fn new(x_min: ExactReal, x_max: ExactReal, y_max: Option<ExactReal>) -> Result<Self> {
        let ordered = x_min
            .try_cmp(&x_max)
            .map_err(|e| Error::InvalidWindow(e.to_string()))?
            == Ordering::Less;
        if !ordered {
            return Err(Error::InvalidWindow(format!(
                "need x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if let Some(y) = &y_max {
            if !y.is_positive() {
                return Err(Error::InvalidWindow(format!("need y_max > 0, got {y}")));
            }
        }
        Ok(Window {
            x_min,
            x_max,
            y_max,
        })
    }

    /// `[-1/alpha^2, 4]`, as tall as it is wide.
    pub fn default_for(alpha: &ExactReal) -> Self {
        let x_min = -alpha.square().inv();
        let x_max = ExactReal::from(4);
        let y_max = Some(&x_max - &x_min);
        Window {
            x_min,
            x_max,
            y_max,
        }
    }

    fn contains_center(&self, cx: &ExactReal, cy: &ExactReal) -> bool {
        *cx >= self.x_min && *cx <= self.x_max && self.y_max.as_ref().is_none_or(|y| cy <= y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumSpec {
    pub bound: Bound,
    /// Also produce the circles that do not touch `L`.
    pub offline: bool,
    /// Restricts output to centers inside the window. Required in spirit by
    /// `MinRadius`; `None` then means [`Window::default_for`].
    pub window: Option<Window>,
    pub exec: Exec,
}

impl EnumSpec {
    pub fn generations(n: u32) -> Self {
        EnumSpec {
            bound: Bound::MaxGeneration(n),
            offline: false,
            window: None,
            exec: Exec::default(),
        }
    }

    pub fn min_radius(r: ExactReal, window: Option<Window>) -> Self {
        EnumSpec {
            bound: Bound::MinRadius(r),
            offline: false,
            window,
            exec: Exec::default(),
        }
    }

    pub fn with_offline(mut self, offline: bool) -> Self {
        self.offline = offline;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}

type Coords = [ExactReal; 4];

#[derive(Clone, Debug)]
enum Geo {
    Round {
        cx: ExactReal,
        cy: ExactReal,
        r: ExactReal,
    },
    Line {
        h: ExactReal,
    },
}

#[derive(Clone, Debug)]
struct Node {
    coords: Coords,
    geo: Geo,
    label: Option<Label>,
    generation: u32,
}

/// Three mutually tangent members and the fourth one already touching all
/// three; the fill is the other solution.
#[derive(Clone, Copy, Debug)]
struct Interstice {
    tri: [usize; 3],
    opp: usize,
}

const BASE: usize = 0;

fn decode(c: &Coords) -> Geo {
    if c[1].is_zero() {
        Geo::Line {
            h: &c[0] / &ExactReal::from(2),
        }
    } else {
        let r = c[1].inv();
        Geo::Round {
            cx: &c[2] * &r,
            cy: &c[3] * &r,
            r,
        }
    }
}

fn reflect(tri: [&Coords; 3], opp: &Coords) -> Coords {
    let two = ExactReal::from(2);
    std::array::from_fn(|i| &(&two * &(&(&tri[0][i] + &tri[1][i]) + &tri[2][i])) - &opp[i])
}

impl PackingContext {
    fn labelled_coords(&self, l: &Label) -> Result<Coords> {
        let s = self.sqrt_curvature(l)?;
        if s.is_zero() {
            let c = self.circle(l)?;
            let Shape::Line { height } = c.shape else {
                unreachable!()
            };
            return Ok([
                &ExactReal::from(2) * &height,
                ExactReal::zero(),
                ExactReal::zero(),
                ExactReal::one(),
            ]);
        }
        let k = s.square();
        let t = &ExactReal::from(2 * l.b.clone()) / &(&self.alpha * &s);
        Ok([&(&t * &t) * &k, k.clone(), &t * &k, ExactReal::one()])
    }

    fn labelled_node(&self, l: &Label, generation: u32) -> Result<Node> {
        let coords = self.labelled_coords(l)?;
        Ok(Node {
            geo: decode(&coords),
            coords,
            label: Some(l.clone()),
            generation,
        })
    }
}

fn base_node() -> Node {
    let z = ExactReal::zero;
    let coords = [z(), z(), z(), -ExactReal::one()];
    Node {
        geo: Geo::Line { h: z() },
        coords,
        label: None,
        generation: 0,
    }
}

/// Enumerates from the generating triple `X`, `Y`, `L`.
pub fn enumerate(ctx: &PackingContext, spec: &EnumSpec) -> Result<Vec<Circle>> {
    enumerate_from(ctx, [&Label::new(1, 0), &Label::new(0, 1)], spec)
}

/// Enumerates from `L` and two tangent labelled circles; generations count
/// from that triple.
pub fn enumerate_from(
    ctx: &PackingContext,
    seeds: [&Label; 2],
    spec: &EnumSpec,
) -> Result<Vec<Circle>> {
    let (p, q) = (seeds[0], seeds[1]);
    if p.det(q).abs() != num_bigint::BigInt::from(1) {
        return Err(Error::NotTangent);
    }
    let window = match (&spec.window, &spec.bound) {
        (Some(w), _) => Some(w.clone()),
        (None, Bound::MinRadius(_)) => Some(Window::default_for(ctx.alpha())),
        (None, Bound::MaxGeneration(_)) => None,
    };
    if let (Some(w), Bound::MinRadius(r)) = (&window, &spec.bound) {
        if !r.is_positive() {
            return Err(Error::InvalidWindow(format!(
                "minimum radius must be positive, got {r}"
            )));
        }
        // only one line bounds the packing, so the column is infinite
        if spec.offline && w.y_max.is_none() && !ctx.alpha().is_rational() {
            return Err(Error::InvalidWindow(
                "off-line circles by radius need y_max for irrational alpha".into(),
            ));
        }
        for v in [&w.x_min, &w.x_max, r] {
            v.try_cmp(ctx.alpha())
                .map_err(|e| Error::InvalidWindow(e.to_string()))?;
        }
    }
    let mut g = Gasket {
        ctx,
        spec,
        window: window.as_ref(),
        nodes: vec![base_node()],
    };
    g.nodes.push(ctx.labelled_node(p, 0)?);
    g.nodes.push(ctx.labelled_node(q, 0)?);
    let max_gen = match spec.bound {
        Bound::MaxGeneration(n) => Some(n),
        Bound::MinRadius(_) => None,
    };
    // the two fills of the generating triple are each other's opposite; seed
    // with a placeholder opposite built from the label rule
    let fill = ctx.normalize(&(p + q));
    let other = ctx.normalize(&(p - q));
    let mut frontier = Vec::new();
    if max_gen != Some(0) {
        for l in [&fill, &other] {
            let node = ctx.labelled_node(l, 1)?;
            let idx = g.nodes.len();
            let seed_opp = if l == &fill { &other } else { &fill };
            let opp_node = ctx.labelled_node(seed_opp, 1)?;
            let tri = Interstice {
                tri: [1, 2, BASE],
                opp: usize::MAX,
            };
            if g.pruned(&tri, &node, Some(&opp_node)) {
                continue;
            }
            g.nodes.push(node);
            frontier.extend(children(idx, &tri));
        }
    }
    let mut generation = 1;
    while !frontier.is_empty() && max_gen.is_none_or(|n| generation < n) {
        generation += 1;
        let work: Vec<Interstice> = frontier
            .into_iter()
            .filter(|i| spec.offline || i.tri.contains(&BASE))
            .collect();
        let fills = spec.exec.map(&work, |i| g.fill(i, generation));
        frontier = Vec::new();
        for (i, node) in work.iter().zip(fills) {
            let node = node?;
            if g.pruned(i, &node, None) {
                continue;
            }
            let idx = g.nodes.len();
            g.nodes.push(node);
            frontier.extend(children(idx, i));
        }
    }
    Ok(g.finish())
}

fn children(new: usize, parent: &Interstice) -> [Interstice; 3] {
    let [a, b, c] = parent.tri;
    [
        Interstice {
            tri: [new, a, b],
            opp: c,
        },
        Interstice {
            tri: [new, a, c],
            opp: b,
        },
        Interstice {
            tri: [new, b, c],
            opp: a,
        },
    ]
}

struct Gasket<'a> {
    ctx: &'a PackingContext,
    spec: &'a EnumSpec,
    window: Option<&'a Window>,
    nodes: Vec<Node>,
}

impl Gasket<'_> {
    fn fill(&self, i: &Interstice, generation: u32) -> Result<Node> {
        let n = |k: usize| &self.nodes[k];
        let coords = reflect(
            [
                &n(i.tri[0]).coords,
                &n(i.tri[1]).coords,
                &n(i.tri[2]).coords,
            ],
            &n(i.opp).coords,
        );
        let label = if i.tri.contains(&BASE) {
            let mut it = i
                .tri
                .iter()
                .filter(|&&k| k != BASE)
                .map(|&k| n(k).label.as_ref().expect("tangent to L"));
            let (p, q) = (it.next().unwrap(), it.next().unwrap());
            let sum = p + q;
            let opp = n(i.opp).label.as_ref().expect("tangent to L");
            Some(if *opp == sum {
                self.ctx.normalize(&(p - q))
            } else {
                sum
            })
        } else {
            None
        };
        Ok(Node {
            geo: decode(&coords),
            coords,
            label,
            generation,
        })
    }

    /// True when neither the fill of `i` nor anything inside the interstice
    /// can meet a `MinRadius` bound. `opp` overrides the stored opposite.
    fn pruned(&self, i: &Interstice, fill: &Node, opp: Option<&Node>) -> bool {
        let (Bound::MinRadius(min_r), Some(w)) = (&self.spec.bound, self.window) else {
            return false;
        };
        let opp = opp.unwrap_or_else(|| &self.nodes[i.opp]);
        let fill_small = matches!(&fill.geo, Geo::Round { r, .. } if r < min_r);
        let others: Vec<&Node> = i
            .tri
            .iter()
            .filter(|&&k| k != BASE)
            .map(|&k| &self.nodes[k])
            .collect();
        if !i.tri.contains(&BASE) {
            return fill_small || !self.triangle_meets(&others, w);
        }
        let (p, q) = (others[0], others[1]);
        match (&p.geo, &q.geo) {
            (Geo::Round { cx: tp, .. }, Geo::Round { cx: tq, .. }) => {
                let (lo, hi, lo_node, hi_node) = if tp < tq {
                    (tp, tq, p, q)
                } else {
                    (tq, tp, q, p)
                };
                let opp_inside = match &opp.geo {
                    Geo::Round { cx, .. } => cx > lo && cx < hi,
                    Geo::Line { .. } => false,
                };
                if opp_inside {
                    // the unbounded side: everything outside [lo, hi] on L. For
                    // rational alpha it ends in the second line after finitely
                    // many fills, and that line crosses every window.
                    let inside = w.x_min > *lo && w.x_max < *hi;
                    !self.ctx.alpha().is_rational()
                        && inside
                        && (!self.spec.offline || covers(lo_node, hi_node, w))
                } else {
                    fill_small || *hi <= w.x_min || *lo >= w.x_max
                }
            }
            (Geo::Round { cx, .. }, Geo::Line { .. })
            | (Geo::Line { .. }, Geo::Round { cx, .. }) => {
                let rightward = match &opp.geo {
                    Geo::Round { cx: co, .. } => co < cx,
                    Geo::Line { .. } => {
                        unreachable!("two lines and a circle have one more neighbor")
                    }
                };
                if rightward {
                    *cx >= w.x_max
                } else {
                    *cx <= w.x_min
                }
            }
            (Geo::Line { .. }, Geo::Line { .. }) => unreachable!("L is excluded from the pair"),
        }
    }

    /// Whether the straight triangle on the three contact points meets the
    /// window. The curvilinear gap lies inside it.
    fn triangle_meets(&self, tri: &[&Node], w: &Window) -> bool {
        let pts: Vec<(ExactReal, ExactReal)> = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .filter_map(|&(a, b)| contact(&tri[a].geo, &tri[b].geo))
            .collect();
        let below = |v: &ExactReal, bound: &ExactReal| v < bound;
        let all_left = pts.iter().all(|p| below(&p.0, &w.x_min));
        let all_right = pts.iter().all(|p| below(&w.x_max, &p.0));
        let all_above = w
            .y_max
            .as_ref()
            .is_some_and(|y| pts.iter().all(|p| below(y, &p.1)));
        !(all_left || all_right || all_above)
    }

    fn finish(self) -> Vec<Circle> {
        let max_gen = match self.spec.bound {
            Bound::MaxGeneration(n) => n,
            Bound::MinRadius(_) => u32::MAX,
        };
        let (ctx, bound, window) = (self.ctx, &self.spec.bound, self.window);
        let mut out: Vec<Circle> = self
            .nodes
            .into_iter()
            .enumerate()
            .filter(|(i, n)| *i == BASE || n.generation <= max_gen)
            .filter(|(_, n)| keep(n, bound, window))
            .map(|(_, n)| to_circle(ctx, n))
            .collect();
        sort_circles(&mut out);
        out
    }
}

fn to_circle(ctx: &PackingContext, n: Node) -> Circle {
    let curvature = n.coords[1].clone();
    let sqrt_curv = n.label.as_ref().map(|l| ctx.raw_sqrt_curv(l));
    let shape = match n.geo {
        Geo::Round { cx, cy, r } => Shape::Round {
            center: (cx, cy),
            radius: r,
        },
        Geo::Line { h } => Shape::Line { height: h },
    };
    Circle {
        label: n.label,
        sqrt_curv,
        curvature,
        shape,
        generation: Some(n.generation),
    }
}

fn keep(n: &Node, bound: &Bound, window: Option<&Window>) -> bool {
    match &n.geo {
        Geo::Line { .. } => true,
        Geo::Round { cx, cy, r } => {
            window.is_none_or(|w| w.contains_center(cx, cy))
                && match bound {
                    Bound::MinRadius(min_r) => r >= min_r,
                    Bound::MaxGeneration(_) => true,
                }
        }
    }
}

/// Contact point of two tangent generalized circles; `None` for two lines.
fn contact(a: &Geo, b: &Geo) -> Option<(ExactReal, ExactReal)> {
    match (a, b) {
        (
            Geo::Round {
                cx: x1,
                cy: y1,
                r: r1,
            },
            Geo::Round {
                cx: x2,
                cy: y2,
                r: r2,
            },
        ) => {
            // weights are the curvatures: (k1 c1 + k2 c2) / (k1 + k2)
            let s = r1 + r2;
            Some((
                &(&(x1 * r2) + &(x2 * r1)) / &s,
                &(&(y1 * r2) + &(y2 * r1)) / &s,
            ))
        }
        (Geo::Round { cx, .. }, Geo::Line { h }) | (Geo::Line { h }, Geo::Round { cx, .. }) => {
            Some((cx.clone(), h.clone()))
        }
        (Geo::Line { .. }, Geo::Line { .. }) => None,
    }
}

/// Whether the disks of two tangent circles on `L` hide the whole window
/// from the unbounded gap above them: every column of the window must pass
/// through a disk whose radius reaches the top of the window.
fn covers(left: &Node, right: &Node, w: &Window) -> bool {
    let Some(top) = &w.y_max else { return false };
    let span = |n: &Node| match &n.geo {
        Geo::Round { cx, r, .. } if r >= top => Some((cx - r, cx + r)),
        _ => None,
    };
    let contains = |s: &(ExactReal, ExactReal)| s.0 <= w.x_min && s.1 >= w.x_max;
    match (span(left), span(right)) {
        (Some(a), Some(b)) => {
            contains(&a) || contains(&b) || (a.0 <= w.x_min && a.1 >= b.0 && b.1 >= w.x_max)
        }
        (Some(a), None) | (None, Some(a)) => contains(&a),
        (None, None) => false,
    }
}

/// Sorts lines first by height, then round circles by center abscissa,
/// height and radius, deciding by floats where they are far apart
/// and exactly otherwise.
pub(crate) fn sort_circles(cs: &mut Vec<Circle>) {
    let mut keyed: Vec<(Circle, [f64; 3])> = cs
        .drain(..)
        .map(|c| {
            let k = sort_key(&c);
            (c, k)
        })
        .collect();
    keyed.sort_by(|(a, ka), (b, kb)| compare_keys((a, ka), (b, kb)));
    cs.extend(keyed.into_iter().map(|(c, _)| c));
}

fn sort_key(c: &Circle) -> [f64; 3] {
    match &c.shape {
        Shape::Line { height } => [height.to_f64(), 0.0, 0.0],
        Shape::Round { center, radius } => [center.0.to_f64(), center.1.to_f64(), radius.to_f64()],
    }
}

fn compare_keys(a: (&Circle, &[f64; 3]), b: (&Circle, &[f64; 3])) -> Ordering {
    let cmp = cmp_hinted;
    let (ka, kb) = (a.1, b.1);
    match (&a.0.shape, &b.0.shape) {
        (Shape::Line { height: h1 }, Shape::Line { height: h2 }) => cmp(h1, ka[0], h2, kb[0]),
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
        ) => cmp(&c1.0, ka[0], &c2.0, kb[0])
            .then_with(|| cmp(&c1.1, ka[1], &c2.1, kb[1]))
            .then_with(|| cmp(r1, ka[2], r2, kb[2])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::{descartes_check, make_packing};
    use std::collections::HashSet;

    fn x(s: &str) -> ExactReal {
        s.parse().unwrap()
    }

    fn ctx(s: &str) -> PackingContext {
        make_packing(&x(s)).unwrap()
    }

    fn labels(cs: &[Circle]) -> Vec<Option<Label>> {
        cs.iter().map(|c| c.label.clone()).collect()
    }

    #[test]
    fn generation_zero_is_the_generators() {
        let cs = enumerate(&ctx("(1+sqrt(5))/2"), &EnumSpec::generations(0)).unwrap();
        assert_eq!(
            labels(&cs),
            vec![None, Some(Label::new(1, 0)), Some(Label::new(0, 1))]
        );
    }

    #[test]
    fn unit_alpha_first_generation() {
        let c = ctx("1");
        let cs = enumerate(&c, &EnumSpec::generations(1)).unwrap();
        let want = vec![
            None,
            Some(Label::new(1, -1)),
            Some(Label::new(1, 0)),
            Some(Label::new(1, 1)),
            Some(Label::new(0, 1)),
        ];
        assert_eq!(labels(&cs), want);
        assert_eq!(cs[1].shape, Shape::Line { height: x("2") });
        assert_eq!(cs[1].generation, Some(1));
    }

    #[test]
    fn generation_counts() {
        for a in ["1", "7/5", "(1+sqrt(5))/2"] {
            let c = ctx(a);
            for n in 0..=5u32 {
                let on_line = enumerate(&c, &EnumSpec::generations(n)).unwrap();
                assert_eq!(
                    on_line.len(),
                    3 + (1..=n).map(|k| 1usize << k).sum::<usize>(),
                    "{a} gen {n}"
                );
                let full = enumerate(&c, &EnumSpec::generations(n).with_offline(true)).unwrap();
                assert_eq!(
                    full.len(),
                    3 + (1..=n).map(|k| 2 * 3usize.pow(k - 1)).sum::<usize>(),
                    "{a} gen {n}"
                );
            }
        }
    }

    #[test]
    fn labelled_fills_match_reflection() {
        // the label route and the coordinate route must describe the same circle
        for a in ["7/5", "(1+sqrt(5))/2", "1+sqrt(2)", "1"] {
            let c = ctx(a);
            for circle in enumerate(&c, &EnumSpec::generations(6)).unwrap() {
                let Some(l) = &circle.label else { continue };
                let mut want = c.circle(l).unwrap();
                want.generation = circle.generation;
                assert_eq!(circle, want, "{a} {l}");
            }
        }
    }

    #[test]
    fn offline_circles_touch_their_parents() {
        let c = ctx("1+sqrt(2)");
        let cs = enumerate(&c, &EnumSpec::generations(4).with_offline(true)).unwrap();
        for circle in cs.iter().filter(|c| c.label.is_none() && !c.is_line()) {
            let touching = cs
                .iter()
                .filter(|o| o.generation < circle.generation && o.touches(circle))
                .count();
            assert!(touching >= 3);
            let ks: Vec<&ExactReal> = cs
                .iter()
                .filter(|o| o.generation < circle.generation && o.touches(circle))
                .map(|o| &o.curvature)
                .collect();
            let mut found = false;
            for i in 0..ks.len() {
                for j in i + 1..ks.len() {
                    for k in j + 1..ks.len() {
                        found |= descartes_check([ks[i], ks[j], ks[k], &circle.curvature]);
                    }
                }
            }
            assert!(found);
        }
    }

    fn min_radius_oracle(
        c: &PackingContext,
        r: &ExactReal,
        w: &Window,
        gens: u32,
        offline: bool,
    ) -> Vec<Circle> {
        let spec = EnumSpec::generations(gens).with_offline(offline);
        let mut all: Vec<Circle> = enumerate(c, &spec)
            .unwrap()
            .into_iter()
            .filter(|k| match &k.shape {
                Shape::Line { .. } => true,
                Shape::Round { center, radius } => {
                    radius >= r && w.contains_center(&center.0, &center.1)
                }
            })
            .collect();
        for k in &mut all {
            k.generation = None;
        }
        all
    }

    fn deepest(cs: &[Circle]) -> u32 {
        cs.iter().filter_map(|k| k.generation).max().unwrap()
    }

    fn strip_gen(mut cs: Vec<Circle>) -> Vec<Circle> {
        for k in &mut cs {
            k.generation = None;
        }
        cs
    }

    #[test]
    fn min_radius_matches_exhaustive_expansion() {
        for (a, r) in [("(1+sqrt(5))/2", "1/100"), ("7/5", "1/40"), ("1", "1/40")] {
            let c = ctx(a);
            let r = x(r);
            let w = Window::default_for(c.alpha());
            let got = enumerate(&c, &EnumSpec::min_radius(r.clone(), None)).unwrap();
            // three generations past the deepest hit must add nothing
            let depth = deepest(&got) + 3;
            let got = strip_gen(got);
            let want = min_radius_oracle(&c, &r, &w, depth, false);
            assert_eq!(got, want, "{a}");
            assert!(got.iter().all(|k| k.radius().is_none_or(|rad| rad >= &r)));
        }
    }

    #[test]
    fn min_radius_offline_matches_exhaustive_expansion() {
        let c = ctx("(1+sqrt(5))/2");
        let r = x("1/20");
        let w = Window::new(x("0"), x("3"), Some(x("3"))).unwrap();
        let spec = EnumSpec::min_radius(r.clone(), Some(w.clone())).with_offline(true);
        let got = enumerate(&c, &spec).unwrap();
        let depth = deepest(&got) + 2;
        let got = strip_gen(got);
        let want = min_radius_oracle(&c, &r, &w, depth, true);
        assert_eq!(got.len(), want.len());
        assert_eq!(got, want);
    }

    #[test]
    fn exec_modes_agree() {
        let c = ctx("(3+sqrt(13))/2");
        let spec = EnumSpec::generations(6).with_offline(true);
        let a = enumerate(&c, &spec.clone().with_exec(Exec::Sequential)).unwrap();
        let b = enumerate(&c, &spec.with_exec(Exec::Parallel)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn alternative_triple_gives_same_circles() {
        let c = ctx("(1+sqrt(5))/2");
        let r = x("1/200");
        let w = Window::new(x("0"), x("3"), None).unwrap();
        let spec = EnumSpec::min_radius(r, Some(w));
        let a: HashSet<Option<Label>> = enumerate(&c, &spec)
            .unwrap()
            .into_iter()
            .map(|k| k.label)
            .collect();
        let b: HashSet<Option<Label>> =
            enumerate_from(&c, [&Label::new(0, 1), &Label::new(1, 1)], &spec)
                .unwrap()
                .into_iter()
                .map(|k| k.label)
                .collect();
        assert_eq!(a, b);
        assert!(a.len() > 20);
    }

    #[test]
    fn unbounded_offline_column_is_rejected() {
        let w = Window::new(x("0"), x("2"), None).unwrap();
        let spec = EnumSpec::min_radius(x("1/10"), Some(w)).with_offline(true);
        assert!(matches!(
            enumerate(&ctx("sqrt(2)"), &spec),
            Err(Error::InvalidWindow(_))
        ));
        assert!(enumerate(&ctx("7/5"), &spec).is_ok());
    }

    #[test]
    fn bad_inputs() {
        let c = ctx("2");
        assert!(matches!(
            enumerate_from(
                &c,
                [&Label::new(1, 0), &Label::new(1, 2)],
                &EnumSpec::generations(1)
            ),
            Err(Error::NotTangent)
        ));
        assert!(Window::new(x("1"), x("1"), None).is_err());
        assert!(Window::new(x("0"), x("sqrt(2)"), None).is_ok());
        let w = Window::new(x("0"), x("sqrt(2)"), None).unwrap();
        assert!(enumerate(&ctx("sqrt(3)"), &EnumSpec::min_radius(x("1/10"), Some(w))).is_err());
    }
}
