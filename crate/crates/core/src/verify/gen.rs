//! Seeded random inputs for the batteries.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{int, is_irreducible, Polynomial, Rational};
use crate::spectrum::{Base, ClosedPoint, Place, RationalFunction, StepFunction};

pub type Rng8 = ChaCha8Rng;

pub fn rational(rng: &mut Rng8, h: i64) -> Rational {
    Rational::new(rng.gen_range(-h..=h).into(), rng.gen_range(1..=h).into())
}

pub fn nonzero_rational(rng: &mut Rng8, h: i64) -> Rational {
    loop {
        let q = rational(rng, h);
        if q != int(0) {
            return q;
        }
    }
}

/// A polynomial of exact degree `deg` with integer coefficients in `[-h, h]`.
pub fn polynomial(rng: &mut Rng8, deg: usize, h: i64) -> Polynomial {
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-h..=h)).collect();
    while c[deg] == 0 {
        c[deg] = rng.gen_range(-h..=h);
    }
    Polynomial::from_i64(&c)
}

pub fn irreducible(rng: &mut Rng8, min_deg: usize, max_deg: usize, h: i64) -> Polynomial {
    loop {
        let deg = rng.gen_range(min_deg..=max_deg);
        let p = polynomial(rng, deg, h).monic();
        if is_irreducible(&p) {
            return p;
        }
    }
}

pub fn closed_point(rng: &mut Rng8, base: Base) -> ClosedPoint {
    match base {
        Base::Q => ClosedPoint::Poly(irreducible(rng, 1, 3, 4)),
        Base::RealClosure => {
            let roll = rng.gen_range(0..10);
            if roll < 4 {
                return ClosedPoint::Real(crate::arith::RealAlgebraic::from_rational(&rational(rng, 6)));
            }
            let want_real = roll < 8;
            loop {
                let g = irreducible(rng, 2, 3, 4);
                let pick: Vec<ClosedPoint> = ClosedPoint::over_real_closure(&g)
                    .into_iter()
                    .filter(|p| matches!(p, ClosedPoint::Real(_)) == want_real)
                    .collect();
                if !pick.is_empty() {
                    return pick[rng.gen_range(0..pick.len())].clone();
                }
            }
        }
    }
}

/// A place of the curve: a closed point, or infinity with probability 1/6 on the projective line.
pub fn place(rng: &mut Rng8, base: Base, with_infinity: bool) -> Place {
    if with_infinity && rng.gen_range(0..6) == 0 {
        Place::Infinity
    } else {
        Place::Point(closed_point(rng, base))
    }
}

/// `c * prod g_i^{e_i}` over random points, `e_i` nonzero in `[-2, 2]`.
pub fn rational_function(rng: &mut Rng8, base: Base, max_factors: usize) -> RationalFunction {
    let mut f = RationalFunction::constant(nonzero_rational(rng, 5)).expect("nonzero");
    for _ in 0..rng.gen_range(0..=max_factors) {
        let g = closed_point(rng, base).generator();
        let e = [-2, -1, 1, 2][rng.gen_range(0..4)];
        f = f.mul(&g.pow(e));
    }
    f
}

/// A rational function of order zero at `place`.
pub fn unit_at(rng: &mut Rng8, base: Base, place: &Place) -> RationalFunction {
    let f = rational_function(rng, base, 2);
    let m = f.ord_at(place);
    f.mul(&place.uniformizer().pow(-m))
}

/// Breakpoints at the real points of a few random closed points, values in `[-3, 3]`.
pub fn step_function(rng: &mut Rng8, base: Base, max_points: usize) -> StepFunction {
    let mut breaks = Vec::new();
    for _ in 0..rng.gen_range(0..=max_points) {
        breaks.extend(closed_point(rng, base).real_points());
    }
    breaks.sort();
    breaks.dedup();
    let values = (0..=breaks.len()).map(|_| rng.gen_range(-3..=3)).collect();
    StepFunction::new(breaks, values).expect("sorted distinct breakpoints")
}
