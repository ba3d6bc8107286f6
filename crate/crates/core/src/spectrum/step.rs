//! Locally constant integer functions on the real spectrum of `k(t)`.
//!
//! A function is stored by its finitely many algebraic breakpoints and its
//! values on the open intervals between them. Values at the breakpoints are
//! never stored: the breakpoints themselves are not orderings of `k(t)`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{Rational, RealAlgebraic};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct StepFunction {
    breakpoints: Vec<RealAlgebraic>,
    values: Vec<i64>,
}

/// Where a step function is evaluated.
#[derive(Clone, Debug)]
pub enum Cut {
    NegInf,
    /// The open interval immediately left of the point.
    Below(RealAlgebraic),
    /// The open interval immediately right of the point.
    Above(RealAlgebraic),
    PosInf,
}

impl StepFunction {
    /// Builds and normalizes; breakpoints must be strictly increasing.
    pub fn new(breakpoints: Vec<RealAlgebraic>, values: Vec<i64>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::Invalid(format!("{} values for {} breakpoints", values.len(), breakpoints.len())));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("breakpoints must be strictly increasing".into()));
        }
        Ok(Self::normalized(breakpoints, values))
    }

    pub fn constant(c: i64) -> Self {
        StepFunction { breakpoints: Vec::new(), values: vec![c] }
    }

    pub(crate) fn normalized(breakpoints: Vec<RealAlgebraic>, values: Vec<i64>) -> Self {
        let mut b = Vec::with_capacity(breakpoints.len());
        let mut v = Vec::with_capacity(values.len());
        v.push(values[0]);
        for (p, x) in breakpoints.into_iter().zip(values.into_iter().skip(1)) {
            if *v.last().unwrap() != x {
                b.push(p);
                v.push(x);
            }
        }
        StepFunction { breakpoints: b, values: v }
    }

    pub fn breakpoints(&self) -> &[RealAlgebraic] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_constant(&self) -> Option<i64> {
        if self.breakpoints.is_empty() {
            Some(self.values[0])
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() == Some(0)
    }

    /// Number of breakpoints strictly below `a`, and whether `a` is one of them.
    fn locate(&self, a: &RealAlgebraic) -> (usize, bool) {
        let mut lo = 0;
        let mut hi = self.breakpoints.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.breakpoints[mid].compare(a) {
                Ordering::Less => lo = mid + 1,
                Ordering::Equal => return (mid, true),
                Ordering::Greater => hi = mid,
            }
        }
        (lo, false)
    }

    pub fn evaluate(&self, cut: &Cut) -> i64 {
        match cut {
            Cut::NegInf => self.values[0],
            Cut::PosInf => *self.values.last().unwrap(),
            Cut::Below(a) => self.values[self.locate(a).0],
            Cut::Above(a) => {
                let (i, hit) = self.locate(a);
                self.values[if hit { i + 1 } else { i }]
            }
        }
    }

    /// Value at a rational point that is not a breakpoint.
    pub fn value_at_rational(&self, x: &Rational) -> Option<i64> {
        let a = RealAlgebraic::from_rational(x);
        let (i, hit) = self.locate(&a);
        if hit {
            None
        } else {
            Some(self.values[i])
        }
    }

    /// Pointwise combination.
    pub fn zip_with(&self, other: &StepFunction, f: impl Fn(i64, i64) -> i64) -> StepFunction {
        let mut merged: Vec<RealAlgebraic> = Vec::with_capacity(self.breakpoints.len() + other.breakpoints.len());
        let (mut i, mut j) = (0, 0);
        let mut values = vec![f(self.values[0], other.values[0])];
        while i < self.breakpoints.len() || j < other.breakpoints.len() {
            let ord = match (self.breakpoints.get(i), other.breakpoints.get(j)) {
                (Some(a), Some(b)) => a.compare(b),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Less => {
                    merged.push(self.breakpoints[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    merged.push(other.breakpoints[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    merged.push(self.breakpoints[i].clone());
                    i += 1;
                    j += 1;
                }
            }
            values.push(f(self.values[i], other.values[j]));
        }
        Self::normalized(merged, values)
    }

    pub fn map(&self, f: impl Fn(i64) -> i64) -> StepFunction {
        Self::normalized(self.breakpoints.clone(), self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn add(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn neg(&self) -> StepFunction {
        self.map(|v| -v)
    }

    pub fn scale(&self, c: i64) -> StepFunction {
        self.map(|v| c * v)
    }

    /// Jump `s(a+) - s(a-)` at `a`, zero away from the breakpoints.
    pub fn jump(&self, a: &RealAlgebraic) -> i64 {
        self.evaluate(&Cut::Above(a.clone())) - self.evaluate(&Cut::Below(a.clone()))
    }
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.values[0])?;
        for (b, v) in self.breakpoints.iter().zip(&self.values[1..]) {
            write!(f, " |{b}| {v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StepFunction({self})")
    }
}

#[derive(Deserialize)]
struct StepJson {
    breakpoints: Vec<RealAlgebraic>,
    values: Vec<i64>,
}

impl<'de> Deserialize<'de> for StepFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = StepJson::deserialize(d)?;
        StepFunction::new(j.breakpoints, j.values).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, isolate_real_roots, Polynomial};

    fn ra(q: i64) -> RealAlgebraic {
        RealAlgebraic::from_rational(&int(q))
    }

    #[test]
    fn normal_form_drops_redundant_breakpoints() {
        let s = StepFunction::new(vec![ra(0), ra(1), ra(2)], vec![1, 1, 2, 2]).unwrap();
        assert_eq!(s.breakpoints().len(), 1);
        assert_eq!(s.values(), &[1, 2]);
        assert!(StepFunction::new(vec![ra(1), ra(0)], vec![0, 1, 0]).is_err());
    }

    #[test]
    fn evaluation_at_cuts() {
        let r = isolate_real_roots(&Polynomial::from_i64(&[-2, 0, 1])).unwrap();
        let s = StepFunction::new(r.clone(), vec![1, -1, 1]).unwrap();
        assert_eq!(s.evaluate(&Cut::Above(r[1].clone())), 1);
        assert_eq!(s.evaluate(&Cut::Below(r[1].clone())), -1);
        assert_eq!(s.evaluate(&Cut::Above(ra(0))), -1);
        assert_eq!(s.evaluate(&Cut::NegInf), 1);
        assert_eq!(s.jump(&r[0]), -2);
        assert_eq!(s.jump(&ra(5)), 0);
    }

    #[test]
    fn pointwise_sum() {
        let r = isolate_real_roots(&Polynomial::from_i64(&[-2, 0, 1])).unwrap();
        let a = StepFunction::new(vec![ra(0)], vec![-1, 1]).unwrap();
        let b = StepFunction::new(r, vec![1, -1, 1]).unwrap();
        let c = a.add(&b);
        assert_eq!(c.values(), &[0, -2, 0, 2]);
        assert_eq!(a.add(&a.neg()), StepFunction::constant(0));
        assert_eq!(a.mul(&a), StepFunction::constant(1));
    }
}
