//! The complex `C(X_r, K)`, its differential and cohomology, and the proper push-forward.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::scheme::{DualizingData, SchemeSpec};
use crate::abelian::{FPAbGroup, IntMatrix, Lattice};
use crate::arith::{factor_over_q, RealAlgebraic};
use crate::error::{Error, Result};
use crate::real::{twisted_residue, twisted_transfer, DVRPoint};
use crate::spectrum::{
    orderings_of, zeta, Base, BasisToken, Body, ClosedPoint, FieldElem, Place, SignVector, StepFunction, TwistedClass,
};

/// A degree-0 cochain: a class over the generic point, in the gauge of the fixed section.
pub type Cochain0 = TwistedClass;

/// A degree-1 cochain: finitely many classes over residue fields of closed points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cochain1 {
    pub entries: BTreeMap<Place, TwistedClass>,
}

impl Cochain1 {
    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|c| c.body.is_zero())
    }

    pub fn single(place: Place, class: TwistedClass) -> Self {
        Cochain1 { entries: BTreeMap::from([(place, class)]) }
    }
}

impl Serialize for Cochain1 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.entries.len()))?;
        for (p, c) in &self.entries {
            m.serialize_entry(&p.key(), c)?;
        }
        m.end()
    }
}

/// A degree-0 cochain with the given body, in the section gauge.
pub fn cochain0(x: &SchemeSpec, d: &DualizingData, body: Body) -> Result<Cochain0> {
    Ok(TwistedClass::new(x.generic_field(), body, d.section_basis(x)?))
}

/// The closed point of `A^1` over `base` at which the real point `alpha` lies.
pub fn point_of_real(alpha: &RealAlgebraic, base: Base) -> Result<ClosedPoint> {
    match base {
        Base::RealClosure => Ok(ClosedPoint::Real(alpha.clone())),
        Base::Q => {
            let f = factor_over_q(alpha.defining())?;
            f.factors
                .into_iter()
                .map(|(g, _)| g.monic())
                .find(|g| alpha.sign_of(g) == 0)
                .map(ClosedPoint::Poly)
                .ok_or_else(|| Error::Invalid(format!("no rational factor vanishes at {alpha}")))
        }
    }
}

fn require_curve(x: &SchemeSpec) -> Result<crate::witt::residue::Curve> {
    x.curve().ok_or_else(|| Error::UnsupportedScheme(format!("{x} has no closed points of codimension one")))
}

/// The differential at one place (the mediator is the power of the canonical
/// uniformizer given by the section's order there).
pub fn differential_at(c: &Cochain0, x: &SchemeSpec, place: &Place) -> Result<TwistedClass> {
    let curve = require_curve(x)?;
    let dvr = DVRPoint::new(curve, x.base(), place.clone())?;
    let m = c.basis.order_at(place);
    let mediator = (m != 0).then(|| place.uniformizer().pow(m as i32));
    twisted_residue(c, &dvr, mediator.as_ref())
}

/// Places at which the differential of `c` can be nonzero.
pub fn differential_support(c: &Cochain0, x: &SchemeSpec) -> Result<BTreeSet<Place>> {
    let mut places = BTreeSet::new();
    if x.dimension() == 0 {
        return Ok(places);
    }
    if let Body::Step(s) = &c.body {
        for a in s.breakpoints() {
            places.insert(Place::Point(point_of_real(a, x.base())?));
        }
    }
    places.extend(c.basis.divisor().keys().cloned());
    if let SchemeSpec::P1(_) = x {
        places.insert(Place::Infinity);
    }
    Ok(places)
}

pub fn differential(c: &Cochain0, x: &SchemeSpec, d: &DualizingData) -> Result<Cochain1> {
    let expected = d.section_basis(x)?;
    if c.basis != expected {
        return Err(Error::BasisMismatch(c.basis.name(), expected.name()));
    }
    if c.field != x.generic_field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", c.field, x.generic_field())));
    }
    let mut out = Cochain1::default();
    for place in differential_support(c, x)? {
        let r = differential_at(c, x, &place)?;
        if !r.body.is_zero() {
            out.entries.insert(place, r);
        }
    }
    Ok(out)
}

/// The cotangent token `pi*` at a point, expressed through the trace token in
/// the gauge `dt`: `pi* = u * trace` with `u = 1/g'(theta)` at a rational
/// point `g(theta) = 0`, and `u = -1` at infinity since `dt = -pi^-2 d pi`.
fn cotangent_to_trace(place: &Place, base: Base) -> Result<FieldElem> {
    let field = place.residue_field(base);
    let u = match place {
        Place::Infinity => field.from_rational(&crate::arith::int(-1))?,
        Place::Point(ClosedPoint::Poly(g)) if g.deg() > 1 => field.inv(&FieldElem::Algebraic(g.derivative().rem(g)))?,
        Place::Point(_) => field.one(),
    };
    Ok(u)
}

/// `sum_P t_{k(P)/k}` of a degree-1 cochain on the projective line. Classes
/// written in a cotangent basis `π*@P ⊗ H` are first rewritten in the trace
/// basis; any other class is read as already trace-trivialized.
pub fn pushforward_proper(c: &Cochain1, x: &SchemeSpec) -> Result<SignVector> {
    let base = match x {
        SchemeSpec::P1(b) => *b,
        SchemeSpec::A1(_) => return Err(Error::NotProper),
        other => return Err(Error::UnsupportedScheme(format!("push-forward from {other}"))),
    };
    let k = base.field();
    let mut total = SignVector::zero(&k)?;
    for (place, class) in &c.entries {
        let field = place.residue_field(base);
        if class.field != field {
            return Err(Error::FieldMismatch(format!("{} at {place}", class.field)));
        }
        let normal = class.normalize()?;
        let body = match normal.basis.strip_pi_star(place) {
            Some(_) => normal.body.mul(&zeta(&field, &cotangent_to_trace(place, base)?)?)?,
            None => normal.body.clone(),
        };
        let traced = TwistedClass::new(field.clone(), body, BasisToken::trace(&field, &k));
        let pushed = twisted_transfer(&traced)?;
        let v = pushed.body.as_sign().ok_or_else(|| Error::FieldMismatch("expected a sign vector".into()))?;
        total = total.add(v)?;
    }
    Ok(total)
}

/// The differential restricted to step functions with breakpoints at the real
/// points of a finite support set, as an integer matrix.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub support: Vec<Place>,
    /// Sorted real points of the finite places of the support.
    pub breakpoints: Vec<RealAlgebraic>,
    /// `(place, ordering)` per row.
    pub rows: Vec<(Place, usize)>,
    /// `rows x (breakpoints + 1)`; column `k` is the differential of the indicator of the `k`-th interval.
    pub matrix: IntMatrix,
}

impl Assembly {
    pub fn cols(&self) -> usize {
        self.breakpoints.len() + 1
    }

    pub fn indicator(&self, k: usize) -> StepFunction {
        let values = (0..self.cols()).map(|i| i64::from(i == k)).collect();
        StepFunction::new(self.breakpoints.clone(), values).expect("sorted distinct breakpoints")
    }

    pub fn h0(&self) -> FPAbGroup {
        FPAbGroup::free(Lattice::kernel(self.cols(), &self.matrix).rank())
    }

    pub fn h1(&self) -> FPAbGroup {
        FPAbGroup::cokernel(self.rows.len(), &self.matrix)
    }

    /// Row indices belonging to the given places.
    pub fn rows_at(&self, places: &BTreeSet<Place>) -> Vec<usize> {
        (0..self.rows.len()).filter(|&i| places.contains(&self.rows[i].0)).collect()
    }
}

/// A support set: the divisor of the section, the origin, and infinity on the projective line.
pub fn default_support(x: &SchemeSpec, d: &DualizingData) -> Result<Vec<Place>> {
    require_curve(x)?;
    let mut s: BTreeSet<Place> = d.divisor(x)?.keys().cloned().collect();
    s.insert(Place::Point(ClosedPoint::parse("t", x.base())?));
    if let SchemeSpec::P1(_) = x {
        s.insert(Place::Infinity);
    }
    Ok(s.into_iter().collect())
}

/// Points added by `stabilization_support` to test independence of the support set.
pub fn extra_points(base: Base) -> Vec<Place> {
    let keys: &[&str] = match base {
        Base::Q => &["t - 1", "t + 1", "t^2 - 2", "t^3 - 3*t - 1", "t^2 + 1"],
        Base::RealClosure => &["t - 1", "t + 1", "t^2 - 2@0", "t^2 - 2@1", "t^2 + 1", "t - 1/3"],
    };
    keys.iter().map(|k| Place::Point(ClosedPoint::parse(k, base).expect("valid point"))).collect()
}

pub fn assemble(x: &SchemeSpec, d: &DualizingData, support: &[Place]) -> Result<Assembly> {
    require_curve(x)?;
    let mut set: BTreeSet<Place> = support.iter().cloned().collect();
    set.extend(d.divisor(x)?.keys().cloned());
    if let SchemeSpec::P1(_) = x {
        set.insert(Place::Infinity);
    }
    if set.contains(&Place::Infinity) && matches!(x, SchemeSpec::A1(_)) {
        return Err(Error::UnsupportedScheme("the affine line has no point at infinity".into()));
    }
    let support: Vec<Place> = set.into_iter().collect();
    let mut breakpoints = Vec::new();
    for p in &support {
        if let Place::Point(cp) = p {
            if cp.base() != x.base() {
                return Err(Error::FieldMismatch(format!("point {cp} is not a point of {x}")));
            }
            breakpoints.extend(cp.real_points());
        }
    }
    breakpoints.sort();
    breakpoints.dedup();
    let rows: Vec<(Place, usize)> =
        support.iter().flat_map(|p| (0..p.ordering_count()).map(move |i| (p.clone(), i))).collect();
    let index: BTreeMap<(Place, usize), usize> = rows.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let mut asm = Assembly { support, breakpoints, rows, matrix: Vec::new() };
    let cols = asm.cols();
    let mut matrix = vec![vec![BigInt::from(0); cols]; asm.rows.len()];
    for k in 0..cols {
        let c = cochain0(x, d, Body::Step(asm.indicator(k)))?;
        for (place, class) in differential(&c, x, d)?.entries {
            let v = class.body.as_sign().expect("residues are sign vectors");
            for (i, e) in v.entries.iter().enumerate() {
                let row = index
                    .get(&(place.clone(), i))
                    .ok_or_else(|| Error::Invalid(format!("differential leaves the support at {place}")))?;
                matrix[*row][k] = BigInt::from(*e);
            }
        }
    }
    asm.matrix = matrix;
    Ok(asm)
}

/// `(h0, h1)` computed over the given support set.
pub fn cohomology_with_support(x: &SchemeSpec, d: &DualizingData, support: &[Place]) -> Result<(FPAbGroup, FPAbGroup)> {
    if x.dimension() == 0 {
        d.divisor(x)?;
        let n = orderings_of(&x.generic_field())?.len();
        return Ok((FPAbGroup::free(n), FPAbGroup::zero()));
    }
    let a = assemble(x, d, support)?;
    Ok((a.h0(), a.h1()))
}

pub fn cohomology(x: &SchemeSpec, d: &DualizingData) -> Result<(FPAbGroup, FPAbGroup)> {
    let support = if x.dimension() == 0 { Vec::new() } else { default_support(x, d)? };
    cohomology_with_support(x, d, &support)
}

pub fn h0(x: &SchemeSpec, d: &DualizingData) -> Result<FPAbGroup> {
    Ok(cohomology(x, d)?.0)
}

pub fn h1(x: &SchemeSpec, d: &DualizingData) -> Result<FPAbGroup> {
    Ok(cohomology(x, d)?.1)
}

/// Recomputes the groups over the default support enlarged by `extra_points`
/// and reports whether they agree.
pub fn stabilization_check(x: &SchemeSpec, d: &DualizingData) -> Result<bool> {
    if x.dimension() == 0 {
        return Ok(true);
    }
    let small = default_support(x, d)?;
    let mut big = small.clone();
    big.extend(extra_points(x.base()));
    Ok(cohomology_with_support(x, d, &small)? == cohomology_with_support(x, d, &big)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Polynomial;
    use crate::spectrum::{zeta_function, FieldDesc, RationalFunction};

    fn ralg_p1() -> SchemeSpec {
        SchemeSpec::P1(Base::RealClosure)
    }

    #[test]
    fn differential_examples() {
        let a1 = SchemeSpec::A1(Base::RealClosure);
        let triv = DualizingData::trivial();
        let c = cochain0(&a1, &triv, Body::Step(zeta_function(&RationalFunction::t()))).unwrap();
        let d = differential(&c, &a1, &triv).unwrap();
        assert_eq!(d.entries.len(), 1);
        let (p, v) = d.entries.iter().next().unwrap();
        assert_eq!(p.key(), "t");
        assert_eq!(v.body.as_sign().unwrap().entries, vec![2]);

        let c = cochain0(&ralg_p1(), &triv, Body::Step(StepFunction::constant(1))).unwrap();
        assert!(differential(&c, &ralg_p1(), &triv).unwrap().is_zero());

        let o1 = DualizingData::o(1);
        let c = cochain0(&ralg_p1(), &o1, Body::Step(StepFunction::constant(1))).unwrap();
        let d = differential(&c, &ralg_p1(), &o1).unwrap();
        assert_eq!(d.entries.len(), 1);
        assert_eq!(d.entries[&Place::Infinity].body.as_sign().unwrap().entries[0].abs(), 2);

        let wrong = cochain0(&ralg_p1(), &triv, Body::Step(StepFunction::constant(1))).unwrap();
        assert!(matches!(differential(&wrong, &ralg_p1(), &o1), Err(Error::BasisMismatch(..))));
    }

    #[test]
    fn groups() {
        let z = FPAbGroup::free(1);
        assert_eq!(
            cohomology(&SchemeSpec::SpecBase(Base::Q), &DualizingData::trivial()).unwrap(),
            (z.clone(), FPAbGroup::zero())
        );
        assert_eq!(
            cohomology(&SchemeSpec::A1(Base::RealClosure), &DualizingData::trivial()).unwrap(),
            (z.clone(), FPAbGroup::zero())
        );
        assert_eq!(cohomology(&ralg_p1(), &DualizingData::o(0)).unwrap(), (z.clone(), z.clone()));
        assert_eq!(cohomology(&ralg_p1(), &DualizingData::o(1)).unwrap(), (FPAbGroup::zero(), FPAbGroup::cyclic(2)));
        assert_eq!(
            cohomology(&SchemeSpec::P1(Base::Q), &DualizingData::o(-3)).unwrap(),
            (FPAbGroup::zero(), FPAbGroup::cyclic(2))
        );
        let cubic = SchemeSpec::spec_finite_ext(Base::Q, &Polynomial::from_i64(&[-1, -3, 0, 1])).unwrap();
        assert_eq!(h0(&cubic, &DualizingData::trivial()).unwrap(), FPAbGroup::free(3));
        let gauss = SchemeSpec::spec_finite_ext(Base::Q, &Polynomial::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(h0(&gauss, &DualizingData::trivial()).unwrap(), FPAbGroup::zero());
        for n in -3..=3 {
            assert!(stabilization_check(&SchemeSpec::P1(Base::Q), &DualizingData::o(n)).unwrap());
        }
    }

    #[test]
    fn pushforward_examples() {
        let p1q = SchemeSpec::P1(Base::Q);
        let one = TwistedClass::new(FieldDesc::Q, Body::constant(&FieldDesc::Q, 1).unwrap(), BasisToken::unit());
        let t = Place::Point(ClosedPoint::parse("t", Base::Q).unwrap());
        assert_eq!(pushforward_proper(&Cochain1::single(t, one), &p1q).unwrap().entries, vec![1]);
        let g = Polynomial::from_i64(&[-2, 0, 1]);
        let k = FieldDesc::finite_ext(Base::Q, &g).unwrap();
        let p = Place::Point(ClosedPoint::Poly(g));
        let c = TwistedClass::new(k.clone(), Body::Sign(SignVector::new(k, vec![1, 1]).unwrap()), BasisToken::unit());
        assert_eq!(pushforward_proper(&Cochain1::single(p.clone(), c.clone()), &p1q).unwrap().entries, vec![2]);
        // in the basis pi* the class is rewritten by the sign of g'(x) = 2x first
        let c = c.with_basis(BasisToken::pi_star(&p));
        assert_eq!(pushforward_proper(&Cochain1::single(p, c), &p1q).unwrap().entries, vec![0]);
        assert!(matches!(pushforward_proper(&Cochain1::default(), &SchemeSpec::A1(Base::Q)), Err(Error::NotProper)));
        let c = cochain0(
            &p1q,
            &DualizingData::trivial(),
            Body::Step(zeta_function(&RationalFunction::parse("(t^2-2)*(t-1)/(t^3-3*t-1)").unwrap())),
        )
        .unwrap();
        let d = differential(&c, &p1q, &DualizingData::trivial()).unwrap();
        assert!(!d.is_zero());
        assert!(pushforward_proper(&d, &p1q).unwrap().is_zero());
    }
}
