//! Exact consistency checks over an enumerated set of circles.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{descartes_check, Circle, Label, PackingContext};
use crate::exactnum::ExactReal;
use crate::par::Exec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateLabel(Label),
    OppositeLabels(Label),
    CurvatureLaw(Label),
    TangencyMismatch(Label, Label),
    OrderMismatch(Label, Label),
    TangencyGap(Label, Label),
    Overlap(usize, usize),
    Descartes(Label, Label, Label),
    NegativeInWedge(Label),
    RepeatedCurvature(Label, Label),
}

/// Outcome of [`audit`]: how much was checked and what failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Audit {
    pub pairs: usize,
    pub tangent_pairs: usize,
    pub quadruples: usize,
    pub violations: Vec<Violation>,
}

impl Audit {
    pub fn count(&self, pred: impl Fn(&Violation) -> bool) -> usize {
        self.violations.iter().filter(|v| pred(v)).count()
    }
}

/// Checks labels, curvatures, pairwise tangency against determinants,
/// contact gaps, disjoint interiors, Descartes quadruples with `L`, the sign
/// of labels between `X` and `Y`, and distinct curvatures for irrational
/// `alpha`.
pub fn audit(ctx: &PackingContext, circles: &[Circle], exec: Exec) -> Audit {
    let mut out = Audit::default();
    let labelled: Vec<(&Label, &Circle)> = circles
        .iter()
        .filter_map(|c| c.label.as_ref().map(|l| (l, c)))
        .collect();

    let mut seen = HashSet::new();
    for (l, _) in &labelled {
        if !seen.insert((*l).clone()) {
            out.violations.push(Violation::DuplicateLabel((*l).clone()));
        }
    }
    for (l, _) in &labelled {
        if seen.contains(&-*l) {
            out.violations.push(Violation::OppositeLabels((*l).clone()));
        }
    }

    let one = ExactReal::one();
    let y_abscissa = ctx.y_circle().abscissa().cloned().expect("round");
    for (l, c) in &labelled {
        let s = c.sqrt_curv.as_ref().expect("labelled");
        if let Some(r) = c.radius() {
            if r * &s.square() != one {
                out.violations.push(Violation::CurvatureLaw((*l).clone()));
            }
            let t = c.abscissa().expect("labelled round");
            if t.is_positive() && t < &y_abscissa && (l.a.is_negative() || l.b.is_negative()) {
                out.violations
                    .push(Violation::NegativeInWedge((*l).clone()));
            }
        }
    }

    if !ctx.alpha().is_rational() {
        let mut by_curv: HashMap<&ExactReal, &Label> = HashMap::new();
        for (l, c) in &labelled {
            if let Some(prev) = by_curv.insert(&c.curvature, l) {
                out.violations
                    .push(Violation::RepeatedCurvature(prev.clone(), (*l).clone()));
            }
        }
    }

    // pairwise checks over labelled circles
    let n = labelled.len();
    let per_row = exec.map_range(n, |i| {
        let mut v = Vec::new();
        let mut tangent = 0;
        let (li, ci) = labelled[i];
        for &(lj, cj) in &labelled[i + 1..] {
            let det = li.det(lj);
            let unit = det.abs().is_one();
            let touching = ci.touches(cj);
            if touching != unit {
                v.push(Violation::TangencyMismatch(li.clone(), lj.clone()));
            }
            if !unit {
                continue;
            }
            tangent += 1;
            if let (Some(ti), Some(tj)) = (ci.abscissa(), cj.abscissa()) {
                if (det.is_positive()) != (ti < tj) {
                    v.push(Violation::OrderMismatch(li.clone(), lj.clone()));
                }
                let si = ci.sqrt_curv.as_ref().expect("labelled");
                let sj = cj.sqrt_curv.as_ref().expect("labelled");
                if &(ti - tj).abs() * &(si * sj) != ExactReal::from(2) {
                    v.push(Violation::TangencyGap(li.clone(), lj.clone()));
                }
            }
        }
        (v, tangent)
    });
    out.pairs += n * n.saturating_sub(1) / 2;
    for (v, t) in per_row {
        out.violations.extend(v);
        out.tangent_pairs += t;
    }

    // every pair of circles, labelled or not, must have disjoint interiors
    let m = circles.len();
    let overlaps = exec.flat_map_range(m, |i| {
        (i + 1..m)
            .filter(|&j| circles[i].overlaps(&circles[j]))
            .map(|j| Violation::Overlap(i, j))
            .collect()
    });
    out.violations.extend(overlaps);

    // Descartes for L, two tangent parents and each child present
    let index: HashMap<&Label, &Circle> = labelled.iter().copied().collect();
    let zero = ExactReal::zero();
    for (i, (li, ci)) in labelled.iter().enumerate() {
        for (lj, cj) in &labelled[i + 1..] {
            if li.det(lj).abs() != BigInt::one() {
                continue;
            }
            for child in [ctx.normalize(&(*li + *lj)), ctx.normalize(&(*li - *lj))] {
                if let Some(ck) = index.get(&child) {
                    out.quadruples += 1;
                    if !descartes_check([&zero, &ci.curvature, &cj.curvature, &ck.curvature]) {
                        out.violations.push(Violation::Descartes(
                            (*li).clone(),
                            (*lj).clone(),
                            child,
                        ));
                    }
                }
            }
        }
    }
    out
}
