//! Continued fractions of positive rationals and quadratic irrationals.
//!
//! Expansion runs the exact algorithm `a_n = floor(x_n)`,
//! `x_{n+1} = 1 / (x_n - a_n)` and stops either on a zero remainder or on the
//! first state that repeats. Because each state determines everything after
//! it, the first repeat yields the shortest head and the minimal period
//! directly.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::ExactReal;

/// Tail of an expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    Finite,
    Periodic(Vec<BigInt>),
}

/// `[head..., (period)...]` in normal form: minimal period, shortest head,
/// and finite expansions never ending in 1 unless they are exactly `[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CfExpansion {
    head: Vec<BigInt>,
    tail: Tail,
}

/// The `n`-th convergent `p / q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
    pub index: usize,
}

impl Convergent {
    pub fn value(&self) -> ExactReal {
        ExactReal::ratio(self.p.clone(), self.q.clone()).expect("q > 0")
    }
}

/// Similarity class of a tail: all finite expansions form one class,
/// periodic ones are keyed by the least rotation of their period.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CfClass {
    StripClass,
    Sequence(Vec<BigInt>),
}

impl fmt::Display for CfClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfClass::StripClass => write!(f, "strip"),
            CfClass::Sequence(s) => write!(f, "({})", join(s)),
        }
    }
}

/// One letter of the unbatched algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// `x >= 1`: subtract one.
    A,
    /// `0 < x < 1`: invert.
    B,
    /// `x = 0`: halt.
    C,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::A => 'A',
            Step::B => 'B',
            Step::C => 'C',
        }
    }
}

/// Letters of the unbatched run together with the state each letter was
/// applied to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRun {
    pub steps: Vec<Step>,
    pub states: Vec<ExactReal>,
}

impl StepRun {
    pub fn letters(&self) -> String {
        self.steps.iter().map(|s| s.letter()).collect()
    }
}

fn join(xs: &[BigInt]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn check_positive(alpha: &ExactReal) -> Result<()> {
    if !alpha.is_positive() {
        return Err(Error::NonPositiveInput(alpha.to_string()));
    }
    Ok(())
}

/// Expands `alpha > 0`. Rationals give a finite tail, quadratics a periodic
/// one.
pub fn cf_expand(alpha: &ExactReal) -> Result<CfExpansion> {
    check_positive(alpha)?;
    let mut quotients = Vec::new();
    let mut seen: HashMap<ExactReal, usize> = HashMap::new();
    let mut x = alpha.clone();
    loop {
        if !x.is_rational() {
            if let Some(&start) = seen.get(&x) {
                let period = quotients.split_off(start);
                return Ok(CfExpansion {
                    head: quotients,
                    tail: Tail::Periodic(period),
                });
            }
            seen.insert(x.clone(), quotients.len());
        }
        let a = x.floor();
        let frac = &x - &ExactReal::from(a.clone());
        quotients.push(a);
        if frac.is_zero() {
            let mut e = CfExpansion {
                head: quotients,
                tail: Tail::Finite,
            };
            e.normalize_finite();
            return Ok(e);
        }
        x = frac.inv();
    }
}

/// The per-letter run of the algorithm, at most `max_steps` letters. A
/// rational input ends with `C` if the budget allows.
pub fn step_run(alpha: &ExactReal, max_steps: usize) -> Result<StepRun> {
    check_positive(alpha)?;
    let mut run = StepRun {
        steps: Vec::new(),
        states: Vec::new(),
    };
    let mut x = alpha.clone();
    let one = ExactReal::one();
    while run.steps.len() < max_steps {
        if x.is_zero() {
            run.steps.push(Step::C);
            run.states.push(x);
            break;
        }
        if x >= one {
            run.steps.push(Step::A);
            run.states.push(x.clone());
            x = &x - &one;
        } else {
            run.steps.push(Step::B);
            run.states.push(x.clone());
            x = x.inv();
        }
    }
    Ok(run)
}

/// Letters only. Runs of `A` are batched through `floor`, so large partial
/// quotients cost nothing beyond the output itself.
pub fn step_trace(alpha: &ExactReal, max_steps: usize) -> Result<String> {
    check_positive(alpha)?;
    let mut out = String::new();
    let mut left = max_steps;
    let mut x = alpha.clone();
    while left > 0 {
        if x.is_zero() {
            out.push('C');
            break;
        }
        let n = x.floor();
        if n.is_zero() {
            out.push('B');
            left -= 1;
            x = x.inv();
            continue;
        }
        let take = n.to_usize().map_or(left, |n| n.min(left));
        out.extend(std::iter::repeat_n('A', take));
        left -= take;
        x = &x - &ExactReal::from(n);
    }
    Ok(out)
}

/// First `n + 1` convergents of `e`.
pub fn convergents(e: &CfExpansion, n: usize) -> Result<Vec<Convergent>> {
    if let Some(len) = e.finite_len() {
        if n >= len {
            return Err(Error::IndexOutOfRange { index: n, len });
        }
    }
    let (mut p2, mut q2) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let a = e.quotient(i).expect("index checked");
        let p = &p2 + &a * &p1;
        let q = &q2 + &a * &q1;
        out.push(Convergent {
            p: p.clone(),
            q: q.clone(),
            index: i,
        });
        (p2, q2, p1, q1) = (p1, q1, p, q);
    }
    Ok(out)
}

/// Finite vs finite is always true; periodic tails must agree up to
/// rotation.
pub fn eventually_equal(e1: &CfExpansion, e2: &CfExpansion) -> bool {
    match (&e1.tail, &e2.tail) {
        (Tail::Finite, Tail::Finite) => true,
        (Tail::Periodic(a), Tail::Periodic(b)) => rotation_offset(a, b).is_some(),
        _ => false,
    }
}

/// Smallest `k` with `a` rotated left by `k` equal to `b`.
pub fn rotation_offset(a: &[BigInt], b: &[BigInt]) -> Option<usize> {
    if a.len() != b.len() {
        return None;
    }
    (0..a.len()).find(|&k| a[k..].iter().chain(&a[..k]).eq(b.iter()))
}

pub fn canonical_class(e: &CfExpansion) -> CfClass {
    match &e.tail {
        Tail::Finite => CfClass::StripClass,
        Tail::Periodic(p) => {
            let best = (0..p.len())
                .map(|k| p[k..].iter().chain(&p[..k]).cloned().collect::<Vec<_>>())
                .min()
                .expect("nonempty period");
            CfClass::Sequence(best)
        }
    }
}

/// `[[a, 1], [1, 0]]` products: the matrix `[[p_n, p_{n-1}], [q_n, q_{n-1}]]`
/// of the given quotients, identity for an empty slice.
pub fn quotient_matrix(qs: &[BigInt]) -> [[BigInt; 2]; 2] {
    let mut m = [
        [BigInt::one(), BigInt::zero()],
        [BigInt::zero(), BigInt::one()],
    ];
    for a in qs {
        let c0 = [&m[0][0] * a + &m[0][1], &m[1][0] * a + &m[1][1]];
        m = [
            [c0[0].clone(), m[0][0].clone()],
            [c0[1].clone(), m[1][0].clone()],
        ];
    }
    m
}

impl CfExpansion {
    /// Builds an expansion from raw parts and brings it to normal form.
    pub fn new(head: Vec<BigInt>, tail: Tail) -> Result<Self> {
        let bad = |what: &str| Err(Error::Syntax(what.to_string()));
        if let Some(first) = head.first() {
            if first.is_negative() {
                return bad("leading quotient must be nonnegative");
            }
        }
        if head.iter().skip(1).any(|a| !a.is_positive()) {
            return bad("partial quotients after the first must be positive");
        }
        let mut e = match tail {
            Tail::Finite => {
                if head.is_empty() {
                    return bad("empty expansion");
                }
                CfExpansion {
                    head,
                    tail: Tail::Finite,
                }
            }
            Tail::Periodic(period) => {
                if period.is_empty() {
                    return bad("empty period");
                }
                if period.iter().any(|a| !a.is_positive()) {
                    return bad("period entries must be positive");
                }
                CfExpansion {
                    head,
                    tail: Tail::Periodic(period),
                }
            }
        };
        e.normalize();
        Ok(e)
    }

    fn normalize(&mut self) {
        match &mut self.tail {
            Tail::Finite => self.normalize_finite(),
            Tail::Periodic(period) => {
                let n = period.len();
                if let Some(l) =
                    (1..n).find(|&l| n % l == 0 && (l..n).all(|i| period[i] == period[i - l]))
                {
                    period.truncate(l);
                }
                while self.head.last().is_some_and(|h| Some(h) == period.last()) {
                    self.head.pop();
                    period.rotate_right(1);
                }
            }
        }
    }

    fn normalize_finite(&mut self) {
        if self.head.len() > 1 && self.head.last().is_some_and(|a| a.is_one()) {
            self.head.pop();
            *self.head.last_mut().expect("len > 1") += 1;
        }
    }

    pub fn head(&self) -> &[BigInt] {
        &self.head
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn period(&self) -> Option<&[BigInt]> {
        match &self.tail {
            Tail::Periodic(p) => Some(p),
            Tail::Finite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.tail == Tail::Finite
    }

    pub fn finite_len(&self) -> Option<usize> {
        self.is_finite().then_some(self.head.len())
    }

    /// The `i`-th partial quotient, `None` past the end of a finite
    /// expansion.
    pub fn quotient(&self, i: usize) -> Option<BigInt> {
        if i < self.head.len() {
            return Some(self.head[i].clone());
        }
        let p = self.period()?;
        Some(p[(i - self.head.len()) % p.len()].clone())
    }

    /// Exact value, solving the fixed-point quadratic for periodic tails.
    pub fn value(&self) -> ExactReal {
        let h = quotient_matrix(&self.head);
        let tail = match &self.tail {
            Tail::Finite => {
                // [p_n, p_{n-1}; q_n, q_{n-1}] sends infinity to p_n / q_n
                return ExactReal::ratio(h[0][0].clone(), h[1][0].clone()).expect("q_n > 0");
            }
            Tail::Periodic(period) => {
                let m = quotient_matrix(period);
                let (pp, pp1, qq, qq1) = (&m[0][0], &m[0][1], &m[1][0], &m[1][1]);
                let diff = qq1 - pp;
                let disc = &diff * &diff + BigInt::from(4) * qq * pp1;
                ExactReal::surd(pp - qq1, 1, disc, BigInt::from(2) * qq)
                    .expect("positive discriminant")
            }
        };
        let num = &(&ExactReal::from(&h[0][0]) * &tail) + &ExactReal::from(&h[0][1]);
        let den = &(&ExactReal::from(&h[1][0]) * &tail) + &ExactReal::from(&h[1][1]);
        &num / &den
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.head.iter().map(|a| a.to_string()).collect();
        if let Tail::Periodic(p) = &self.tail {
            parts.push(format!("({})", join(p)));
        }
        match parts.split_first() {
            Some((first, [])) => write!(f, "[{first}]"),
            Some((first, rest)) => write!(f, "[{first}; {}]", rest.join(", ")),
            None => write!(f, "[]"),
        }
    }
}

impl FromStr for CfExpansion {
    type Err = Error;

    /// Accepts the display form; `,` may stand in for the `;`.
    fn from_str(s: &str) -> Result<Self> {
        let syntax = |m: &str| Error::Syntax(format!("{m} in {s:?}"));
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| syntax("expected [...]"))?;
        let (body, period) = match body.find('(') {
            Some(open) => {
                let close = body.rfind(')').ok_or_else(|| syntax("unclosed period"))?;
                if !body[close + 1..].trim().is_empty() {
                    return Err(syntax("period must come last"));
                }
                (&body[..open], Some(&body[open + 1..close]))
            }
            None => (body, None),
        };
        let ints = |t: &str| -> Result<Vec<BigInt>> {
            t.split([',', ';'])
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| {
                    x.parse::<BigInt>()
                        .map_err(|_| syntax(&format!("bad integer {x:?}")))
                })
                .collect()
        };
        let head = ints(body)?;
        let tail = match period {
            Some(p) => Tail::Periodic(ints(p)?),
            None => Tail::Finite,
        };
        CfExpansion::new(head, tail)
    }
}
