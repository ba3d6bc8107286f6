//! The residue and transfer maps on sign-function groups, and their
//! compatibility with the Witt-side maps.

use std::cmp::Ordering;

use serde::Serialize;

use crate::arith::RealAlgebraic;
use crate::error::{Error, Result};
use crate::spectrum::{
    zeta, Base, BasisToken, Body, Cut, FieldDesc, FieldElem, Place, RationalFunction, SignVector, StepFunction,
    TwistedClass,
};
use crate::witt::residue::{
    check_uniformizer, function_field_base, twisted_second_residue_with, unit_part_residue, Curve,
};
use crate::witt::transfer::base_of;
use crate::witt::{scharlau_transfer, total_signature, TwistedForm};

/// A discrete valuation ring of `k(t)` at a place of `A^1` or `P^1`, with a chosen uniformizer.
#[derive(Clone, Debug)]
pub struct DVRPoint {
    pub curve: Curve,
    pub base: Base,
    pub place: Place,
    pub uniformizer: RationalFunction,
}

impl DVRPoint {
    /// The place with its canonical uniformizer.
    pub fn new(curve: Curve, base: Base, place: Place) -> Result<Self> {
        let uniformizer = place.uniformizer();
        Self::with_uniformizer(curve, base, place, uniformizer)
    }

    pub fn with_uniformizer(curve: Curve, base: Base, place: Place, uniformizer: RationalFunction) -> Result<Self> {
        if curve == Curve::A1 && place == Place::Infinity {
            return Err(Error::UnsupportedScheme("the affine line has no point at infinity".into()));
        }
        if let Place::Point(p) = &place {
            if p.base() != base {
                return Err(Error::FieldMismatch(format!("point {p} is not a point over {}", base.name())));
            }
        }
        if !uniformizer.base_compatible(base) {
            return Err(Error::FieldMismatch(format!("{uniformizer} is not defined over {}", base.name())));
        }
        check_uniformizer(&place, &uniformizer)?;
        Ok(DVRPoint { curve, base, place, uniformizer })
    }

    pub fn residue_field(&self) -> FieldDesc {
        self.place.residue_field(self.base)
    }
}

/// Sign of `f` on the open interval immediately right of `a`.
fn sign_right_of(f: &RationalFunction, a: &RealAlgebraic) -> i8 {
    let roots = f.real_roots(false);
    let next = roots.iter().find(|r| r.compare(a) == Ordering::Greater);
    let x = match next {
        Some(r) => a.rational_between(r),
        None => a.rational_above(),
    };
    f.sign_at_rational(&x)
}

/// Sign of `f` on the open interval immediately left of `a`.
fn sign_left_of(f: &RationalFunction, a: &RealAlgebraic) -> i8 {
    let roots = f.real_roots(false);
    let prev = roots.iter().rev().find(|r| r.compare(a) == Ordering::Less);
    let x = match prev {
        Some(r) => r.rational_between(a),
        None => a.rational_below(),
    };
    f.sign_at_rational(&x)
}

/// `s(xi_+) - s(xi_-)` at every ordering of the residue field, `xi_+` being
/// the half-branch on which the uniformizer is positive.
pub fn residue_beta(s: &StepFunction, d: &DVRPoint) -> Result<SignVector> {
    let field = d.residue_field();
    let pi = &d.uniformizer;
    let entries = match &d.place {
        Place::Infinity => {
            let (pos, neg) = (pi.sign_at_infinity(true), pi.sign_at_infinity(false));
            debug_assert_eq!(pos, -neg);
            let (plus, minus) = if pos > 0 { (Cut::PosInf, Cut::NegInf) } else { (Cut::NegInf, Cut::PosInf) };
            vec![s.evaluate(&plus) - s.evaluate(&minus)]
        }
        Place::Point(p) => p
            .real_points()
            .iter()
            .map(|a| {
                let (r, l) = (sign_right_of(pi, a), sign_left_of(pi, a));
                debug_assert_eq!(r, -l, "uniformizer changes sign at a simple zero");
                let (above, below) = (s.evaluate(&Cut::Above(a.clone())), s.evaluate(&Cut::Below(a.clone())));
                if r > 0 {
                    above - below
                } else {
                    below - above
                }
            })
            .collect(),
    };
    SignVector::new(field, entries)
}

/// The twisted residue with values in the cotangent dual `pi_0*` at the point.
///
/// When the twist's section has order `m` at the point a `mediator` with
/// valuation `m` there must be supplied: the section is rewritten as
/// `mediator * (local generator)` before taking the residue.
pub fn twisted_residue(c: &TwistedClass, d: &DVRPoint, mediator: Option<&RationalFunction>) -> Result<TwistedClass> {
    let base = function_field_base(&c.field)?;
    if base != d.base {
        return Err(Error::FieldMismatch(format!("{} vs {}(t)", c.field, d.base.name())));
    }
    let c = c.normalize()?;
    let m = c.basis.order_at(&d.place);
    let mut body = c.body.clone();
    if m != 0 {
        let u = mediator.ok_or_else(|| Error::TwistNotTrivializable(d.place.key()))?;
        if u.ord_at(&d.place) as i64 != m {
            return Err(Error::TwistNotTrivializable(format!(
                "{}: mediator {u} has order {} but the section has order {m}",
                d.place.key(),
                u.ord_at(&d.place)
            )));
        }
        body = body.mul(&zeta(&c.field, &FieldElem::Function(u.clone()))?)?;
    }
    let step = body.as_step().ok_or_else(|| Error::FieldMismatch("expected a step function".into()))?;
    let beta = residue_beta(step, d)?;
    let field = d.residue_field();
    let pi0 = d.place.uniformizer();
    let basis = BasisToken::pi_star(&d.place).tensor(&c.basis.localized(&d.place));
    let mut out = TwistedClass::new(field.clone(), Body::Sign(beta), basis);
    if d.uniformizer != pi0 {
        // pi = u pi_0 gives pi* = u^-1 pi_0*
        let u = unit_part_residue(&d.uniformizer.mul(&pi0.inv()), &d.place, &pi0, base)?;
        out.scale = field.inv(&u)?;
        out = out.normalize()?;
    }
    Ok(out)
}

/// `t(phi)(P) = sum of phi(R)` over the orderings `R` extending `P`.
pub fn transfer_real(phi: &SignVector) -> Result<SignVector> {
    let base = base_of(&phi.field)?;
    // over either base field every ordering of the extension restricts to the unique ordering
    SignVector::new(base, vec![phi.entries.iter().sum()])
}

/// The twisted transfer: rewrite `trace@K/k ⊗ H` by the trace trivialization to `H`, then sum.
pub fn twisted_transfer(phi: &TwistedClass) -> Result<TwistedClass> {
    let base = base_of(&phi.field)?;
    let basis = phi.basis.strip_trace(&phi.field, &base)?;
    let phi = phi.normalize()?;
    let v = phi.body.as_sign().ok_or_else(|| Error::FieldMismatch("expected a sign vector".into()))?;
    Ok(TwistedClass::new(base, Body::Sign(transfer_real(v)?), basis))
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareReport {
    pub left: TwistedClass,
    pub right: TwistedClass,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderReport {
    pub place: String,
    /// `beta(Sign q)` against `2 Sign(delta_2 q)`.
    pub residue_square: SquareReport,
    /// `t(Sign w)` against `Sign(tr_* w)` for the residue form `w`.
    pub transfer_square: SquareReport,
    pub passed: bool,
}

/// Checks both squares of the ladder on one form and one point.
pub fn ladder_check(q: &TwistedForm, d: &DVRPoint) -> Result<LadderReport> {
    let w = twisted_second_residue_with(q, &d.place, &d.uniformizer)?;
    let sig = total_signature(q)?;
    let mediator = match q.basis.order_at(&d.place) {
        0 => None,
        m => Some(d.place.uniformizer().pow(m as i32)),
    };
    let left = twisted_residue(&sig, d, mediator.as_ref())?;
    let right = total_signature(&w)?.scale_int(2);
    let ok1 = left.same_class(&right)?;

    let k = base_of(&w.form.field)?;
    let traced = TwistedForm::new(w.form.clone(), BasisToken::trace(&w.form.field, &k).tensor(&w.basis));
    let tl = twisted_transfer(&total_signature(&traced)?)?;
    let tr = total_signature(&scharlau_transfer(&traced)?)?;
    let ok2 = tl.same_class(&tr)?;
    Ok(LadderReport {
        place: d.place.key(),
        residue_square: SquareReport { left, right, ok: ok1 },
        transfer_square: SquareReport { left: tl, right: tr, ok: ok2 },
        passed: ok1 && ok2,
    })
}
