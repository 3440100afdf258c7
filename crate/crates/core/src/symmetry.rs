//! Similarity between packings, their self-similarity groups and the Pell
//! equations behind them.
//!
//! A packing for `alpha` is similar to the one for `beta` exactly when some
//! `[[a, b], [c, d]]` in `PGL2(Z)` sends `alpha` to `beta` by
//! `x -> (a x + b) / (c x + d)`; the orientation of the similarity is the sign
//! of the determinant.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::contfrac::{cf_expand, quotient_matrix, rotation_offset, CfExpansion, Tail};
use crate::error::{Error, Result};
use crate::exactnum::{ExactReal, IntPoly2};
use crate::packing::{Label, PackingContext};
use crate::replacement::replace_trace;

/// An element of `PGL2(Z)`, stored with its first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Matrix2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = Matrix2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        let det = &m.a * &m.d - &m.b * &m.c;
        if !det.abs().is_one() {
            return Err(Error::BadDeterminant(det.to_string()));
        }
        Ok(m.normalized())
    }

    fn from_rows(m: [[BigInt; 2]; 2]) -> Result<Self> {
        let [[a, b], [c, d]] = m;
        Matrix2::new(a, b, c, d)
    }

    fn normalized(self) -> Self {
        let first = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .find(|v| !v.is_zero())
            .expect("unimodular");
        if first.is_negative() {
            Matrix2 {
                a: -self.a,
                b: -self.b,
                c: -self.c,
                d: -self.d,
            }
        } else {
            self
        }
    }

    pub fn identity() -> Self {
        Matrix2::new(1, 0, 0, 1).expect("unimodular")
    }

    pub fn rows(&self) -> [[&BigInt; 2]; 2] {
        [[&self.a, &self.b], [&self.c, &self.d]]
    }

    /// `+1` or `-1`.
    pub fn det(&self) -> i32 {
        if (&self.a * &self.d - &self.b * &self.c).is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        Matrix2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
        .normalized()
    }

    /// The adjugate, which is the inverse up to sign.
    pub fn inverse(&self) -> Matrix2 {
        Matrix2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
        .normalized()
    }

    /// Row vector `l` times the matrix.
    pub fn act_on_label(&self, l: &Label) -> Label {
        Label {
            a: &l.a * &self.a + &l.b * &self.c,
            b: &l.a * &self.b + &l.b * &self.d,
        }
    }

    /// `c x + d`, the derivative factor of the map at `x` up to squaring.
    pub fn denominator_at(&self, x: &ExactReal) -> ExactReal {
        &(&ExactReal::from(&self.c) * x) + &ExactReal::from(&self.d)
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// `(a x + b) / (c x + d)`.
pub fn apply_moebius(m: &Matrix2, x: &ExactReal) -> Result<ExactReal> {
    let den = m.denominator_at(x);
    if den.is_zero() {
        return Err(Error::PoleInput);
    }
    let num = &(&ExactReal::from(&m.a) * x) + &ExactReal::from(&m.b);
    Ok(&num / &den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Similarity {
    NotSimilar,
    Similar(Matrix2),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientations {
    None,
    Both,
    OnlyPreserving,
    OnlyReversing,
}

/// Decides similarity from the continued-fraction tails and, when similar,
/// returns a witness sending `alpha` to `beta`. An orientation-preserving
/// witness is preferred whenever one exists.
pub fn similar(alpha: &ExactReal, beta: &ExactReal) -> Result<Similarity> {
    let ea = cf_expand(alpha)?;
    let eb = cf_expand(beta)?;
    let w = match (ea.tail(), eb.tail()) {
        (Tail::Finite, Tail::Finite) => {
            // both are images of infinity under their convergent matrices
            let ma = Matrix2::from_rows(quotient_matrix(ea.head()))?;
            let mb = Matrix2::from_rows(quotient_matrix(eb.head()))?;
            let mut w = mb.mul(&ma.inverse());
            if w.det() < 0 {
                // x -> -x fixes infinity and flips orientation
                let flip = Matrix2::new(-1, 0, 0, 1)?;
                w = mb.mul(&flip).mul(&ma.inverse());
            }
            w
        }
        (Tail::Periodic(pa), Tail::Periodic(pb)) => {
            let Some(k) = rotation_offset(pa, pb) else {
                return Ok(Similarity::NotSimilar);
            };
            periodic_witness(&ea, &eb, pa, k)?
        }
        _ => return Ok(Similarity::NotSimilar),
    };
    if apply_moebius(&w, alpha)? != *beta {
        return Err(Error::InternalInconsistency(format!(
            "witness {w} does not send {alpha} to {beta}"
        )));
    }
    Ok(Similarity::Similar(w))
}

/// `alpha = H_a P[..k] (t)` and `beta = H_b (t)` for the common purely
/// periodic tail `t`, so `H_b (H_a P[..k])^-1` sends `alpha` to `beta`.
fn periodic_witness(
    ea: &CfExpansion,
    eb: &CfExpansion,
    period: &[BigInt],
    k: usize,
) -> Result<Matrix2> {
    let mut to_tail: Vec<BigInt> = ea.head().to_vec();
    to_tail.extend_from_slice(&period[..k]);
    let ma = Matrix2::from_rows(quotient_matrix(&to_tail))?;
    let mb = Matrix2::from_rows(quotient_matrix(eb.head()))?;
    let w = mb.mul(&ma.inverse());
    if w.det() > 0 || period.len().is_multiple_of(2) {
        return Ok(w);
    }
    // one more full period on the beta side flips the determinant
    let mut longer = eb.head().to_vec();
    longer.extend_from_slice(eb.period().expect("periodic"));
    Ok(Matrix2::from_rows(quotient_matrix(&longer))?.mul(&ma.inverse()))
}

/// Which orientations the similarities from `alpha` to `beta` can have.
pub fn similarity_orientations(alpha: &ExactReal, beta: &ExactReal) -> Result<Orientations> {
    let w = match similar(alpha, beta)? {
        Similarity::NotSimilar => return Ok(Orientations::None),
        Similarity::Similar(w) => w,
    };
    if orientation_reversing_exists(alpha)? {
        Ok(Orientations::Both)
    } else if w.det() > 0 {
        Ok(Orientations::OnlyPreserving)
    } else {
        Ok(Orientations::OnlyReversing)
    }
}

/// A positive solution of `x^2 - D y^2 = rhs` with `rhs = 4` or `-4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PellSolution {
    pub x: BigInt,
    pub y: BigInt,
    pub rhs: i32,
}

impl PellSolution {
    /// The product `(x + y sqrt D)/2 * (x' + y' sqrt D)/2`.
    pub fn compose(&self, o: &PellSolution, disc: &BigInt) -> PellSolution {
        PellSolution {
            x: (&self.x * &o.x + disc * &self.y * &o.y) / 2,
            y: (&self.x * &o.y + &o.x * &self.y) / 2,
            rhs: self.rhs * o.rhs / 4,
        }
    }
}

/// Fundamental solutions for discriminant `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellFundamental {
    /// Present exactly when `x^2 - D y^2 = -4` is solvable.
    pub minus: Option<PellSolution>,
    pub plus: PellSolution,
}

impl PellFundamental {
    /// The fundamental unit: the `-4` solution when it exists.
    pub fn unit(&self) -> &PellSolution {
        self.minus.as_ref().unwrap_or(&self.plus)
    }
}

fn check_discriminant(disc: &BigInt) -> Result<()> {
    let four = BigInt::from(4);
    let r = disc.mod_floor(&four);
    let square = !disc.is_negative() && {
        let s = disc.sqrt();
        &s * &s == *disc
    };
    if !disc.is_positive() || !(r.is_zero() || r.is_one()) || square {
        return Err(Error::BadDiscriminant(disc.to_string()));
    }
    Ok(())
}

/// Reads the fundamental unit off the period of `(b + sqrt D)/2`, the reduced
/// generator of the order of discriminant `D`.
pub fn pell_fundamental(disc: &BigInt) -> Result<PellFundamental> {
    check_discriminant(disc)?;
    let two = BigInt::from(2);
    let root = disc.sqrt();
    let mut b = root.clone();
    if (&b - disc).is_odd() {
        b -= 1;
    }
    if b == root && &b * &b == *disc {
        b -= 2;
    }
    let d = u64::try_from(disc).map_err(|_| Error::BadDiscriminant(disc.to_string()))?;
    let omega = &(&ExactReal::from(&b) + &ExactReal::sqrt_int(d)?) / &ExactReal::from(2);
    let e = cf_expand(&omega)?;
    debug_assert!(e.head().is_empty(), "reduced surds are purely periodic");
    let period = e.period().expect("quadratic");
    // the period matrix fixes omega; its eigenvalue q omega + q' is the unit
    let m = quotient_matrix(period);
    let (q, q1) = (&m[1][0], &m[1][1]);
    let unit = PellSolution {
        x: q * &b + &two * q1,
        y: q.clone(),
        rhs: if period.len() % 2 == 1 { -4 } else { 4 },
    };
    debug_assert_eq!(
        &unit.x * &unit.x - disc * &unit.y * &unit.y,
        BigInt::from(unit.rhs)
    );
    Ok(if unit.rhs < 0 {
        PellFundamental {
            plus: unit.compose(&unit, disc),
            minus: Some(unit),
        }
    } else {
        PellFundamental {
            minus: None,
            plus: unit,
        }
    })
}

/// `[[(x - y q)/2, -y r], [y p, (x + y q)/2]]` for `p t^2 + q t + r`.
pub fn gamma(poly: &IntPoly2, s: &PellSolution) -> Result<Matrix2> {
    let yq = &s.y * &poly.q;
    if (&s.x - &yq).is_odd() {
        return Err(Error::ParityViolation);
    }
    Matrix2::new(
        (&s.x - &yq) / 2,
        -&s.y * &poly.r,
        &s.y * &poly.p,
        (&s.x + &yq) / 2,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmDescription {
    /// Reserved for inputs of degree three or more, which cannot be
    /// represented here.
    Trivial,
    /// A strip packing, with group `D_inf x Z/2`.
    Strip,
    /// Infinite cyclic, generated by a map that scales by `sqrt(scale_sq)`.
    Cyclic {
        generator: Matrix2,
        scale_sq: ExactReal,
        generator_reverses: bool,
        pell: PellSolution,
    },
}

fn check_positive(alpha: &ExactReal) -> Result<()> {
    if !alpha.is_positive() {
        return Err(Error::NonPositiveInput(alpha.to_string()));
    }
    Ok(())
}

pub fn symm_group(alpha: &ExactReal) -> Result<SymmDescription> {
    check_positive(alpha)?;
    if alpha.is_rational() {
        return Ok(SymmDescription::Strip);
    }
    let poly = alpha.minimal_polynomial()?;
    let pell = pell_fundamental(&poly.disc)?.unit().clone();
    let mut generator = gamma(&poly, &pell)?;
    let mut scale_sq = generator.denominator_at(alpha).square();
    if scale_sq < ExactReal::one() {
        generator = generator.inverse();
        scale_sq = generator.denominator_at(alpha).square();
    }
    let generator_reverses = generator.det() < 0;
    if generator_reverses != (pell.rhs < 0) || apply_moebius(&generator, alpha)? != *alpha {
        return Err(Error::InternalInconsistency(format!(
            "generator {generator} does not match Pell solution for {alpha}"
        )));
    }
    Ok(SymmDescription::Cyclic {
        generator,
        scale_sq,
        generator_reverses,
        pell,
    })
}

/// Whether the packing has an orientation-reversing self-similarity,
/// decided both by the parity of the period and by solvability of the `-4`
/// Pell equation. The two must agree.
pub fn orientation_reversing_exists(alpha: &ExactReal) -> Result<bool> {
    check_positive(alpha)?;
    if alpha.is_rational() {
        return Ok(true);
    }
    let e = cf_expand(alpha)?;
    let odd_period = e.period().expect("quadratic").len() % 2 == 1;
    let disc = alpha.minimal_polynomial()?.disc;
    let minus_solvable = pell_fundamental(&disc)?.minus.is_some();
    if odd_period != minus_solvable {
        return Err(Error::InternalInconsistency(format!(
            "period parity and Pell -4 solvability disagree for {alpha}"
        )));
    }
    Ok(odd_period)
}

/// Runs the replacement algorithm over one full period of a reduced `alpha`
/// and checks that the contracting generator of the symmetry group carries
/// the starting pair `(1,0), (0,1)` to the pair reached.
pub fn generator_action_check(alpha: &ExactReal) -> Result<bool> {
    if alpha.is_rational() || !alpha.is_reduced()? {
        return Err(Error::NotReduced(alpha.to_string()));
    }
    let SymmDescription::Cyclic { generator, .. } = symm_group(alpha)? else {
        return Err(Error::NotReduced(alpha.to_string()));
    };
    let e = cf_expand(alpha)?;
    let period = e.period().expect("quadratic");
    let n = period
        .iter()
        .fold(BigInt::from(period.len()), |acc, a| acc + a);
    let n =
        usize::try_from(&n).map_err(|_| Error::InternalInconsistency("period too long".into()))?;
    let ctx = PackingContext::new(alpha)?;
    let (_, states) = replace_trace(&ctx, n);
    let end = &states[n];
    let contracting = generator.inverse();
    let image = |l: &Label| ctx.normalize(&contracting.act_on_label(l));
    Ok(image(&Label::new(1, 0)) == end.x_label && image(&Label::new(0, 1)) == end.y_label)
}
