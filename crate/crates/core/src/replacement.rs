//! The circle-replacement run on a tangent pair `(X_n, Y_n)`.
//!
//! While `X_n` is at least as curved as `Y_n`, it is replaced by the circle in
//! the unbounded gap of the pair (step A); otherwise the two swap roles
//! (step B); a line in the `X` slot halts the run (step C). The ratio of
//! square-root curvatures follows the continued-fraction algorithm exactly.

use crate::contfrac::Step;
use crate::error::{Error, Result};
use crate::exactnum::ExactReal;
use crate::packing::{Label, PackingContext};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplacementState {
    pub step_index: usize,
    pub x_label: Label,
    pub y_label: Label,
    pub x_sqrt_curv: ExactReal,
    pub y_sqrt_curv: ExactReal,
    /// The step that produced this state.
    pub last_step: Option<Step>,
}

impl ReplacementState {
    /// The starting pair `X_0 = (1,0)`, `Y_0 = (0,1)`.
    pub fn initial(ctx: &PackingContext) -> Self {
        ReplacementState {
            step_index: 0,
            x_label: Label::new(1, 0),
            y_label: Label::new(0, 1),
            x_sqrt_curv: ctx.alpha().clone(),
            y_sqrt_curv: ExactReal::one(),
            last_step: None,
        }
    }

    pub fn ratio(&self) -> ExactReal {
        &self.x_sqrt_curv / &self.y_sqrt_curv
    }

    /// The step that applies to this state.
    pub fn next_step(&self) -> Step {
        if self.x_sqrt_curv.is_zero() {
            Step::C
        } else if self.x_sqrt_curv >= self.y_sqrt_curv {
            Step::A
        } else {
            Step::B
        }
    }

    pub fn is_halted(&self) -> bool {
        self.last_step == Some(Step::C)
    }
}

/// Applies one step. Stepping a state that already halted is an error.
pub fn replace_step(ctx: &PackingContext, s: &ReplacementState) -> Result<ReplacementState> {
    if s.is_halted() {
        return Err(Error::Halted);
    }
    let step = s.next_step();
    let mut next = s.clone();
    next.step_index += 1;
    next.last_step = Some(step);
    match step {
        Step::C => {}
        Step::A => {
            next.x_label = ctx.normalize(&(&s.x_label - &s.y_label));
            next.x_sqrt_curv = &s.x_sqrt_curv - &s.y_sqrt_curv;
        }
        Step::B => {
            std::mem::swap(&mut next.x_label, &mut next.y_label);
            std::mem::swap(&mut next.x_sqrt_curv, &mut next.y_sqrt_curv);
        }
    }
    Ok(next)
}

/// Runs at most `max_steps` steps from the initial pair. `states[n]` is the
/// state the `n`-th letter was applied to; a halted run also keeps its final
/// state, so `states` has one more entry than the trace has letters.
pub fn replace_trace(ctx: &PackingContext, max_steps: usize) -> (String, Vec<ReplacementState>) {
    let mut states = vec![ReplacementState::initial(ctx)];
    let mut letters = String::new();
    while letters.len() < max_steps {
        let cur = states.last().expect("nonempty");
        let Ok(next) = replace_step(ctx, cur) else {
            break;
        };
        letters.push(next.last_step.expect("stepped").letter());
        states.push(next);
    }
    (letters, states)
}

/// The first `k` distinct circles in the `Y` slot.
pub fn distinct_y_circles(ctx: &PackingContext, k: usize) -> Result<Vec<Label>> {
    let mut out = vec![Label::new(0, 1)];
    let mut s = ReplacementState::initial(ctx);
    while out.len() < k {
        if s.is_halted() {
            return Err(Error::ExhaustedRun {
                available: out.len(),
                requested: k,
            });
        }
        s = replace_step(ctx, &s)?;
        if s.y_label != *out.last().expect("nonempty") {
            out.push(s.y_label.clone());
        }
    }
    out.truncate(k);
    Ok(out)
}
