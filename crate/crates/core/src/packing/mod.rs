//! The labelled half-plane packing generated by the x-axis `L`, the circle
//! `X` of curvature `alpha^2` touching `L` at the origin, and the unit circle
//! `Y` touching both on the right.
//!
//! A circle tangent to `L` carries a coprime label `(a, b)`; its curvature is
//! `(a*alpha + b)^2` and it touches `L` at `t = 2b / (alpha (a*alpha + b))`.
//! Filling the bounded gap between two tangent labelled circles adds labels,
//! filling the unbounded one subtracts them.

mod audit;
mod gasket;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::ExactReal;

pub use audit::{audit, Audit, Violation};
pub use gasket::{enumerate, enumerate_from, Bound, EnumSpec, Window};

/// Coprime integer pair naming a circle tangent to `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub a: BigInt,
    pub b: BigInt,
}

impl Label {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Label {
            a: a.into(),
            b: b.into(),
        }
    }

    /// `det [self; other] = a d - b c`.
    pub fn det(&self, other: &Label) -> BigInt {
        &self.a * &other.b - &self.b * &other.a
    }

    pub fn is_coprime(&self) -> bool {
        self.a.gcd(&self.b).is_one()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Add for &Label {
    type Output = Label;
    fn add(self, o: &Label) -> Label {
        Label {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl Sub for &Label {
    type Output = Label;
    fn sub(self, o: &Label) -> Label {
        Label {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl Neg for &Label {
    type Output = Label;
    fn neg(self) -> Label {
        Label {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

/// Exact shape of a generalized circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Round {
        center: (ExactReal, ExactReal),
        radius: ExactReal,
    },
    /// Horizontal line; height 0 is `L`.
    Line { height: ExactReal },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    /// Present exactly for members tangent to `L` other than `L` itself.
    pub label: Option<Label>,
    /// `a*alpha + b` for labelled circles.
    pub sqrt_curv: Option<ExactReal>,
    pub curvature: ExactReal,
    pub shape: Shape,
    pub generation: Option<u32>,
}

impl Circle {
    pub fn is_line(&self) -> bool {
        matches!(self.shape, Shape::Line { .. })
    }

    pub fn radius(&self) -> Option<&ExactReal> {
        match &self.shape {
            Shape::Round { radius, .. } => Some(radius),
            Shape::Line { .. } => None,
        }
    }

    pub fn center(&self) -> Option<&(ExactReal, ExactReal)> {
        match &self.shape {
            Shape::Round { center, .. } => Some(center),
            Shape::Line { .. } => None,
        }
    }

    /// Point of contact with `L` for labelled round circles.
    pub fn abscissa(&self) -> Option<&ExactReal> {
        self.label.as_ref()?;
        self.center().map(|c| &c.0)
    }

    /// Exact tangency of two generalized circles with disjoint interiors.
    pub fn touches(&self, other: &Circle) -> bool {
        match (&self.shape, &other.shape) {
            (
                Shape::Round {
                    center: c1,
                    radius: r1,
                },
                Shape::Round {
                    center: c2,
                    radius: r2,
                },
            ) => {
                let dx = &c1.0 - &c2.0;
                let dy = &c1.1 - &c2.1;
                let s = r1 + r2;
                &(&dx * &dx) + &(&dy * &dy) == &s * &s
            }
            (Shape::Round { center, radius }, Shape::Line { height })
            | (Shape::Line { height }, Shape::Round { center, radius }) => {
                (&center.1 - height).abs() == *radius
            }
            (Shape::Line { .. }, Shape::Line { .. }) => false,
        }
    }

    /// True when the closed disks share more than a boundary point.
    pub fn overlaps(&self, other: &Circle) -> bool {
        match (&self.shape, &other.shape) {
            (
                Shape::Round {
                    center: c1,
                    radius: r1,
                },
                Shape::Round {
                    center: c2,
                    radius: r2,
                },
            ) => {
                let dx = &c1.0 - &c2.0;
                let dy = &c1.1 - &c2.1;
                let s = r1 + r2;
                &(&dx * &dx) + &(&dy * &dy) < &s * &s
            }
            (Shape::Round { center, radius }, Shape::Line { height })
            | (Shape::Line { height }, Shape::Round { center, radius }) => {
                (&center.1 - height).abs() < *radius
            }
            (Shape::Line { height: h1 }, Shape::Line { height: h2 }) => h1 == h2,
        }
    }
}

/// Which side of a tangent pair an unbounded fill lands on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Relative position of two labelled circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tangency {
    NotTangent,
    TangentLeftOf,
    TangentRightOf,
}

/// Side of the generating pair for [`invert_label`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InversionSide {
    LeftOfX,
    RightOfY,
}

/// The packing for one value of `alpha`.
#[derive(Clone, Debug)]
pub struct PackingContext {
    alpha: ExactReal,
}

pub fn make_packing(alpha: &ExactReal) -> Result<PackingContext> {
    PackingContext::new(alpha)
}

impl PackingContext {
    pub fn new(alpha: &ExactReal) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::NonPositiveInput(alpha.to_string()));
        }
        Ok(PackingContext {
            alpha: alpha.clone(),
        })
    }

    pub fn alpha(&self) -> &ExactReal {
        &self.alpha
    }

    /// `a*alpha + b` without the sign check.
    pub fn raw_sqrt_curv(&self, l: &Label) -> ExactReal {
        &(&ExactReal::from(&l.a) * &self.alpha) + &ExactReal::from(&l.b)
    }

    /// Brings `l` or `-l` to the admissible sign: `a*alpha + b > 0`, or
    /// `a > 0` when it vanishes.
    pub fn normalize(&self, l: &Label) -> Label {
        let s = self.raw_sqrt_curv(l).signum();
        if s < 0 || (s == 0 && l.a.is_negative()) {
            -l
        } else {
            l.clone()
        }
    }

    pub fn sqrt_curvature(&self, l: &Label) -> Result<ExactReal> {
        let s = self.raw_sqrt_curv(l);
        if s.is_negative() || (s.is_zero() && !l.a.is_positive()) {
            return Err(Error::UnnormalizedLabel(l.a.to_string(), l.b.to_string()));
        }
        Ok(s)
    }

    /// The member of the packing named by `l`, without a generation.
    pub fn circle(&self, l: &Label) -> Result<Circle> {
        let s = self.sqrt_curvature(l)?;
        let curvature = s.square();
        let shape = if s.is_zero() {
            // a*alpha + b = 0 forces alpha = -b/a; the second line sits at
            // twice the radius 1/s^2 of the circles tangent to both lines
            Shape::Line {
                height: ExactReal::from(BigInt::from(2) * &l.a * &l.a),
            }
        } else {
            let radius = curvature.inv();
            let t = &ExactReal::from(BigInt::from(2) * &l.b) / &(&self.alpha * &s);
            Shape::Round {
                center: (t, radius.clone()),
                radius,
            }
        };
        Ok(Circle {
            label: Some(l.clone()),
            sqrt_curv: Some(s),
            curvature,
            shape,
            generation: None,
        })
    }

    pub fn base_line(&self) -> Circle {
        Circle {
            label: None,
            sqrt_curv: None,
            curvature: ExactReal::zero(),
            shape: Shape::Line {
                height: ExactReal::zero(),
            },
            generation: Some(0),
        }
    }

    pub fn x_circle(&self) -> Circle {
        self.generator(&Label::new(1, 0))
    }

    pub fn y_circle(&self) -> Circle {
        self.generator(&Label::new(0, 1))
    }

    fn generator(&self, l: &Label) -> Circle {
        let mut c = self.circle(l).expect("generator labels are admissible");
        c.generation = Some(0);
        c
    }

    fn round_pair(&self, left: &Label, right: &Label) -> Result<(ExactReal, ExactReal)> {
        let sl = self.sqrt_curvature(left)?;
        let sr = self.sqrt_curvature(right)?;
        if sl.is_zero() || sr.is_zero() {
            return Err(Error::LineOperand);
        }
        if !left.det(right).is_one() {
            return Err(Error::NotTangent);
        }
        Ok((sl, sr))
    }

    /// Fills the bounded gap between `left` and `right` (`det = 1`).
    pub fn fill_bounded(&self, left: &Label, right: &Label) -> Result<Circle> {
        self.round_pair(left, right)?;
        self.circle(&(left + right))
    }

    /// Fills the unbounded gap of a tangent pair. The new label is the
    /// difference in whichever sign is admissible; `side` must agree with
    /// where that circle actually lands unless it is a line.
    pub fn fill_unbounded(&self, left: &Label, right: &Label, side: Side) -> Result<Circle> {
        self.round_pair(left, right)?;
        let candidate = match side {
            Side::Left => left - right,
            Side::Right => right - left,
        };
        let c = self.circle(&self.normalize(&candidate))?;
        if let Some(t) = c.abscissa() {
            let tl = self.circle(left)?.abscissa().cloned().expect("round");
            let actual = if *t < tl { Side::Left } else { Side::Right };
            if actual != side {
                return Err(Error::WrongSide {
                    requested: side.name(),
                    actual: actual.name(),
                });
            }
        }
        Ok(c)
    }
}

/// Position of `l1` relative to `l2` from the sign of their determinant.
pub fn tangent(l1: &Label, l2: &Label) -> Tangency {
    let d = l1.det(l2);
    if d.is_one() {
        Tangency::TangentLeftOf
    } else if d == -BigInt::one() {
        Tangency::TangentRightOf
    } else {
        Tangency::NotTangent
    }
}

/// The unique `(u, v)` with `a u - b v = 1`, `0 < u <= b`, `0 <= v < a`.
pub fn unique_bezout(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt)> {
    let g = a.extended_gcd(b);
    if !a.is_positive() || !b.is_positive() || !g.gcd.is_one() {
        return Err(Error::NotCoprime(a.to_string(), b.to_string()));
    }
    // g.x * a + g.y * b = 1, so u = g.x mod b in (0, b]
    let mut u = g.x.mod_floor(b);
    if u.is_zero() {
        u = b.clone();
    }
    let v = (a * &u - BigInt::one()) / b;
    Ok((u, v))
}

/// The tangent pair `(A, B)` with `det [A; B] = 1` whose bounded gap the
/// circle `l` fills.
pub fn parents(l: &Label) -> Result<(Label, Label)> {
    let (u, v) = unique_bezout(&l.a, &l.b)?;
    let b = Label {
        a: v.clone(),
        b: u.clone(),
    };
    let a = Label {
        a: &l.a - v,
        b: &l.b - u,
    };
    Ok((a, b))
}

/// Label of the image of `l` under the inversion fixing `L`, `X` and `Y`.
pub fn invert_label(l: &Label, side: InversionSide) -> Label {
    let out = match side {
        InversionSide::LeftOfX => Label {
            a: l.a.clone(),
            b: -&l.b,
        },
        InversionSide::RightOfY => Label {
            a: -&l.a,
            b: l.b.clone(),
        },
    };
    if (out.a.is_zero() && out.b.is_negative()) || (out.b.is_zero() && out.a.is_negative()) {
        -&out
    } else {
        out
    }
}

/// `2 (k1^2 + k2^2 + k3^2 + k4^2) = (k1 + k2 + k3 + k4)^2`, exactly.
pub fn descartes_check(k: [&ExactReal; 4]) -> bool {
    let sum = &(&(k[0] + k[1]) + k[2]) + k[3];
    let sq = &(&(&k[0].square() + &k[1].square()) + &k[2].square()) + &k[3].square();
    &ExactReal::from(2) * &sq == sum.square()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(s: &str) -> ExactReal {
        s.parse().unwrap()
    }

    fn l(a: i64, b: i64) -> Label {
        Label::new(a, b)
    }

    fn ctx(s: &str) -> PackingContext {
        make_packing(&x(s)).unwrap()
    }

    #[test]
    fn generators() {
        let c = ctx("1");
        assert_eq!(
            c.x_circle().shape,
            Shape::Round {
                center: (x("0"), x("1")),
                radius: x("1")
            }
        );
        assert_eq!(
            c.y_circle().shape,
            Shape::Round {
                center: (x("2"), x("1")),
                radius: x("1")
            }
        );
        let c = ctx("7/5");
        assert_eq!(c.x_circle().radius(), Some(&x("25/49")));
        assert_eq!(c.y_circle().center().unwrap().0, x("10/7"));
        let c = ctx("(1+sqrt(5))/2");
        assert_eq!(c.x_circle().curvature, x("(3+sqrt(5))/2"));
        assert!(c.x_circle().touches(&c.y_circle()));
        assert!(c.x_circle().touches(&c.base_line()));
        assert!(matches!(
            make_packing(&x("0")),
            Err(Error::NonPositiveInput(_))
        ));
    }

    #[test]
    fn sqrt_curvatures() {
        let c = ctx("(1+sqrt(5))/2");
        assert_eq!(c.sqrt_curvature(&l(1, 0)).unwrap(), *c.alpha());
        assert_eq!(c.sqrt_curvature(&l(0, 1)).unwrap(), x("1"));
        assert_eq!(c.sqrt_curvature(&l(1, 1)).unwrap(), c.alpha() + &x("1"));
        assert!(matches!(
            c.sqrt_curvature(&l(-1, 1)),
            Err(Error::UnnormalizedLabel(..))
        ));
        let c = ctx("1");
        assert!(matches!(
            c.sqrt_curvature(&l(-1, 1)),
            Err(Error::UnnormalizedLabel(..))
        ));
        assert!(c.circle(&l(1, -1)).unwrap().is_line());
    }

    #[test]
    fn bounded_fills() {
        let c = ctx("7/5");
        let f = c.fill_bounded(&l(1, 0), &l(0, 1)).unwrap();
        assert_eq!(f.label, Some(l(1, 1)));
        assert_eq!(f.radius(), Some(&x("25/144")));
        let g = c.fill_bounded(&l(1, 1), &l(0, 1)).unwrap();
        assert_eq!(g.label, Some(l(1, 2)));
        assert_eq!(g.sqrt_curv, Some(c.alpha() + &x("2")));
        assert!(g.touches(&c.circle(&l(1, 1)).unwrap()));
        assert!(g.touches(&c.y_circle()));
        assert!(g.touches(&c.base_line()));
        // Descartes with the base line as oracle
        let k = [
            &ExactReal::zero(),
            &c.x_circle().curvature,
            &c.y_circle().curvature,
            &f.curvature,
        ];
        assert!(descartes_check(k));
        assert_eq!(c.fill_bounded(&l(0, 1), &l(1, 0)), Err(Error::NotTangent));
    }

    #[test]
    fn bounded_fill_sits_at_weighted_mediant() {
        let c = ctx("(1+sqrt(5))/2");
        for (p, q) in [(l(1, 0), l(0, 1)), (l(1, 1), l(0, 1)), (l(2, 1), l(1, 1))] {
            let (cp, cq) = (c.circle(&p).unwrap(), c.circle(&q).unwrap());
            let (sp, sq) = (cp.sqrt_curv.clone().unwrap(), cq.sqrt_curv.clone().unwrap());
            let mediant =
                &(&(&sp * cp.abscissa().unwrap()) + &(&sq * cq.abscissa().unwrap())) / &(&sp + &sq);
            let f = c.fill_bounded(&p, &q).unwrap();
            assert_eq!(f.abscissa(), Some(&mediant));
        }
    }

    #[test]
    fn unbounded_fills() {
        let c = ctx("7/5");
        let u = c.fill_unbounded(&l(1, 0), &l(0, 1), Side::Left).unwrap();
        assert_eq!(u.label, Some(l(1, -1)));
        assert_eq!(u.sqrt_curv, Some(x("2/5")));
        assert!(u.touches(&c.x_circle()) && u.touches(&c.y_circle()) && u.touches(&c.base_line()));
        assert!(matches!(
            c.fill_unbounded(&l(1, 0), &l(0, 1), Side::Right),
            Err(Error::WrongSide {
                requested: "right",
                actual: "left"
            })
        ));
        let c = ctx("1");
        let u = c.fill_unbounded(&l(1, 0), &l(0, 1), Side::Left).unwrap();
        assert_eq!(u.label, Some(l(1, -1)));
        assert_eq!(u.shape, Shape::Line { height: x("2") });
        assert!(u.touches(&c.x_circle()) && u.touches(&c.y_circle()));
        // alpha < 1: the unit circle is the larger one and the fill goes right
        let c = ctx("2/3");
        let u = c.fill_unbounded(&l(1, 0), &l(0, 1), Side::Right).unwrap();
        assert_eq!(u.label, Some(l(-1, 1)));
        assert!(u.touches(&c.x_circle()) && u.touches(&c.y_circle()));
        assert!(matches!(
            c.fill_unbounded(&l(1, -1), &l(0, 1), Side::Left),
            Err(Error::UnnormalizedLabel(..))
        ));
    }

    #[test]
    fn strip_line_height() {
        let c = ctx("7/5");
        let line = c.circle(&l(5, -7)).unwrap();
        assert_eq!(line.shape, Shape::Line { height: x("50") });
        // (0,1) - 3 (... ) the last circles before the line touch both lines
        let y = c.circle(&l(-2, 3)).unwrap();
        assert!(y.touches(&line) && y.touches(&c.base_line()));
    }

    #[test]
    fn tangency_by_determinant() {
        assert_eq!(tangent(&l(1, 0), &l(0, 1)), Tangency::TangentLeftOf);
        assert_eq!(tangent(&l(0, 1), &l(1, 0)), Tangency::TangentRightOf);
        assert_eq!(tangent(&l(1, 1), &l(1, 2)), Tangency::TangentLeftOf);
        assert_eq!(tangent(&l(1, 0), &l(1, 2)), Tangency::NotTangent);
        let c = ctx("(1+sqrt(5))/2");
        let (a, b, d) = (
            c.circle(&l(1, 1)).unwrap(),
            c.circle(&l(1, 2)).unwrap(),
            c.circle(&l(1, 0)).unwrap(),
        );
        assert!(a.touches(&b));
        assert!(!d.touches(&b) && !d.overlaps(&b));
        assert!(a.abscissa().unwrap() < b.abscissa().unwrap());
    }

    fn bezout_oracle(a: i64, b: i64) -> Option<(i64, i64)> {
        (1..=b)
            .flat_map(|u| (0..a).map(move |v| (u, v)))
            .find(|&(u, v)| a * u - b * v == 1)
    }

    #[test]
    fn bezout_examples() {
        let bz = |a: i64, b: i64| unique_bezout(&a.into(), &b.into());
        assert_eq!(bz(3, 5).unwrap(), (2.into(), 1.into()));
        assert_eq!(bz(1, 1).unwrap(), (1.into(), 0.into()));
        assert_eq!(bz(5, 3).unwrap(), (2.into(), 3.into()));
        assert!(matches!(bz(4, 6), Err(Error::NotCoprime(..))));
        for a in 1..25 {
            for b in 1..25 {
                let got = bz(a, b)
                    .ok()
                    .map(|(u, v)| (i64::try_from(u).unwrap(), i64::try_from(v).unwrap()));
                assert_eq!(got, bezout_oracle(a, b), "({a},{b})");
            }
        }
    }

    #[test]
    fn parent_examples() {
        assert_eq!(parents(&l(3, 5)).unwrap(), (l(2, 3), l(1, 2)));
        assert_eq!(parents(&l(1, 1)).unwrap(), (l(1, 0), l(0, 1)));
        assert_eq!(parents(&l(1, 2)).unwrap(), (l(1, 1), l(0, 1)));
        assert!(matches!(parents(&l(2, 4)), Err(Error::NotCoprime(..))));
    }

    #[test]
    fn inversion_labels() {
        assert_eq!(invert_label(&l(1, 1), InversionSide::LeftOfX), l(1, -1));
        assert_eq!(invert_label(&l(1, 1), InversionSide::RightOfY), l(-1, 1));
        for side in [InversionSide::LeftOfX, InversionSide::RightOfY] {
            assert_eq!(invert_label(&l(1, 0), side), l(1, 0));
            assert_eq!(invert_label(&l(0, 1), side), l(0, 1));
        }
    }

    #[test]
    fn descartes_examples() {
        let a = x("7/5");
        let one = ExactReal::one();
        let z = ExactReal::zero();
        assert!(descartes_check([
            &z,
            &a.square(),
            &one,
            &(&a + &one).square()
        ]));
        assert!(descartes_check([&z, &z, &one, &one]));
        assert!(!descartes_check([
            &z,
            &a.square(),
            &one,
            &(&a + &x("2")).square()
        ]));
    }

    proptest! {
        #[test]
        fn parents_reassemble(a in 1i64..400, b in 1i64..400) {
            let lbl = l(a, b);
            prop_assume!(lbl.is_coprime());
            let (p, q) = parents(&lbl).unwrap();
            prop_assert_eq!(&p + &q, lbl);
            prop_assert!(p.det(&q).is_one());
            prop_assert!(!p.a.is_negative() && !p.b.is_negative() && !q.a.is_negative() && !q.b.is_negative());
        }

        #[test]
        fn inversion_is_involutive_and_keeps_tangency(a in 0i64..50, b in 0i64..50, c in 0i64..50, d in 0i64..50) {
            let (p, q) = (l(a, b), l(c, d));
            prop_assume!(p.is_coprime() && q.is_coprime());
            for side in [InversionSide::LeftOfX, InversionSide::RightOfY] {
                let ip = invert_label(&p, side);
                prop_assert_eq!(invert_label(&ip, side), p.clone());
                let iq = invert_label(&q, side);
                prop_assert_eq!(ip.det(&iq).abs() == BigInt::one(), p.det(&q).abs() == BigInt::one());
            }
        }
    }
}
