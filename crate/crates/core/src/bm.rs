//! Borel–Moore homology of the real points of a curve or a point, with
//! coefficients in the orientation local system of a line bundle, from a cell
//! decomposition.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::abelian::{FPAbGroup, IntMatrix, Lattice};
use crate::arith::RealAlgebraic;
use crate::error::{Error, Result};
use crate::gersten::{Bundle, DualizingData, SchemeSpec};
use crate::spectrum::{orderings_of, Base, ClosedPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Line,
    Circle,
    Points,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Vertex {
    Real(RealAlgebraic),
    /// The point at infinity of the projective line.
    Infinity,
    /// A real point of a zero-dimensional scheme.
    Isolated(usize),
    /// Added by subdivision.
    Barycenter(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Real(a) => write!(f, "{a}"),
            Vertex::Infinity => f.write_str("inf"),
            Vertex::Isolated(i) => write!(f, "p{i}"),
            Vertex::Barycenter(i) => write!(f, "b{i}"),
        }
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Compact,
    /// Missing its tail: the tail end goes off to `-inf` on the line.
    OpenTail,
    /// Missing its head.
    OpenHead,
    /// Both ends missing: the whole line.
    Open,
    /// A loop from a vertex back to itself.
    ClosedUpAtInfinity,
}

/// An oriented 1-cell `tail -> head`; the local system is trivialized on the
/// cell and the monodromy is the sign of the gluing at its head.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub tail: Option<usize>,
    pub head: Option<usize>,
    pub kind: EdgeKind,
    pub monodromy: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealCell1Complex {
    pub shape: Shape,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

/// Real points where the bundle's local system flips, with their multiplicity parity.
fn twist_points(x: &SchemeSpec, d: &DualizingData) -> Result<(Vec<(RealAlgebraic, i64)>, i64)> {
    let mut finite = Vec::new();
    let mut at_inf = 0;
    match &d.bundle {
        Bundle::O(n) => {
            if let SchemeSpec::P1(_) = x {
                at_inf = *n;
            }
        }
        Bundle::Divisor(div) => {
            if x.dimension() == 0 && div.values().any(|m| *m != 0) {
                return Err(Error::UnsupportedScheme(format!("a divisor on the point {x}")));
            }
            for (p, m) in div {
                if p.base() != x.base() {
                    return Err(Error::FieldMismatch(format!("point {p} is not a point of {x}")));
                }
                for a in p.real_points() {
                    finite.push((a, *m));
                }
            }
        }
    }
    Ok((finite, at_inf))
}

fn sign_of_mult(m: i64) -> i8 {
    if m % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Triangulates `X(R)`; `extra` adds untwisted vertices at further real points.
pub fn build_cell_complex_refined(
    x: &SchemeSpec,
    d: &DualizingData,
    extra: &[RealAlgebraic],
) -> Result<RealCell1Complex> {
    let (mut marks, at_inf) = twist_points(x, d)?;
    if x.dimension() == 0 {
        let n = match x {
            SchemeSpec::SpecBase(_) => 1,
            SchemeSpec::SpecFiniteExt(Base::Q, p) => crate::arith::real_root_count(p),
            SchemeSpec::SpecFiniteExt(Base::RealClosure, p) => {
                // a point over the real closure is real exactly when it has degree one
                usize::from(p.deg() == 1)
            }
            _ => unreachable!(),
        };
        debug_assert_eq!(n, orderings_of(&x.generic_field()).map(|o| o.len()).unwrap_or(n));
        return Ok(RealCell1Complex {
            shape: Shape::Points,
            vertices: (0..n).map(Vertex::Isolated).collect(),
            edges: Vec::new(),
        });
    }
    marks.extend(extra.iter().map(|a| (a.clone(), 0)));
    marks.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(RealAlgebraic, i64)> = Vec::new();
    for (a, m) in marks {
        match merged.last_mut() {
            Some((b, k)) if *b == a => *k += m,
            _ => merged.push((a, m)),
        }
    }
    let mut vertices: Vec<Vertex> = merged.iter().map(|(a, _)| Vertex::Real(a.clone())).collect();
    let mono: Vec<i8> = merged.iter().map(|(_, m)| sign_of_mult(*m)).collect();
    let k = vertices.len();
    let mut edges = Vec::new();
    match x {
        SchemeSpec::A1(_) => {
            if k == 0 {
                edges.push(Edge { tail: None, head: None, kind: EdgeKind::Open, monodromy: 1 });
            } else {
                edges.push(Edge { tail: None, head: Some(0), kind: EdgeKind::OpenTail, monodromy: mono[0] });
                for i in 0..k - 1 {
                    edges.push(Edge {
                        tail: Some(i),
                        head: Some(i + 1),
                        kind: EdgeKind::Compact,
                        monodromy: mono[i + 1],
                    });
                }
                edges.push(Edge { tail: Some(k - 1), head: None, kind: EdgeKind::OpenHead, monodromy: 1 });
            }
            Ok(RealCell1Complex { shape: Shape::Line, vertices, edges })
        }
        SchemeSpec::P1(_) => {
            vertices.push(Vertex::Infinity);
            let inf = k;
            let mono_inf = sign_of_mult(at_inf);
            if k == 0 {
                edges.push(Edge {
                    tail: Some(inf),
                    head: Some(inf),
                    kind: EdgeKind::ClosedUpAtInfinity,
                    monodromy: mono_inf,
                });
            } else {
                edges.push(Edge { tail: Some(inf), head: Some(0), kind: EdgeKind::Compact, monodromy: mono[0] });
                for i in 0..k - 1 {
                    edges.push(Edge {
                        tail: Some(i),
                        head: Some(i + 1),
                        kind: EdgeKind::Compact,
                        monodromy: mono[i + 1],
                    });
                }
                edges.push(Edge { tail: Some(k - 1), head: Some(inf), kind: EdgeKind::Compact, monodromy: mono_inf });
            }
            Ok(RealCell1Complex { shape: Shape::Circle, vertices, edges })
        }
        _ => Err(Error::UnsupportedScheme(x.to_string())),
    }
}

pub fn build_cell_complex(x: &SchemeSpec, d: &DualizingData) -> Result<RealCell1Complex> {
    build_cell_complex_refined(x, d, &[])
}

impl RealCell1Complex {
    /// Product of the monodromies; on a circle this is the total twist.
    pub fn total_monodromy(&self) -> i8 {
        self.edges.iter().map(|e| e.monodromy).product()
    }

    pub fn is_compact(&self) -> bool {
        self.edges.iter().all(|e| matches!(e.kind, EdgeKind::Compact | EdgeKind::ClosedUpAtInfinity))
    }

    /// Locally finite cellular boundary, `vertices x edges`: `d e = m_e [head] - [tail]`
    /// with missing ends dropped.
    pub fn boundary(&self) -> IntMatrix {
        let mut m = vec![vec![BigInt::from(0); self.edges.len()]; self.vertices.len()];
        for (j, e) in self.edges.iter().enumerate() {
            if let Some(h) = e.head {
                m[h][j] += BigInt::from(e.monodromy);
            }
            if let Some(t) = e.tail {
                m[t][j] -= BigInt::from(1);
            }
        }
        m
    }

    /// Barycentric subdivision of every compact edge.
    pub fn subdivided(&self) -> RealCell1Complex {
        let mut vertices = self.vertices.clone();
        let mut edges = Vec::new();
        for e in &self.edges {
            if matches!(e.kind, EdgeKind::Compact | EdgeKind::ClosedUpAtInfinity) {
                let mid = vertices.len();
                vertices.push(Vertex::Barycenter(mid));
                edges.push(Edge { tail: e.tail, head: Some(mid), kind: EdgeKind::Compact, monodromy: 1 });
                edges.push(Edge { tail: Some(mid), head: e.head, kind: EdgeKind::Compact, monodromy: e.monodromy });
            } else {
                edges.push(e.clone());
            }
        }
        RealCell1Complex { shape: self.shape.clone(), vertices, edges }
    }
}

/// `(H0, H1)` of the locally finite cellular chain complex.
pub fn bm_homology(c: &RealCell1Complex) -> (FPAbGroup, FPAbGroup) {
    let d = c.boundary();
    let h1 = FPAbGroup::free(Lattice::kernel(c.edges.len(), &d).rank());
    let h0 = FPAbGroup::cokernel(c.vertices.len(), &d);
    (h0, h1)
}

/// Ordinary cellular homology, computed on the barycentric subdivision;
/// defined for compact complexes only.
pub fn compact_homology(c: &RealCell1Complex) -> Result<(FPAbGroup, FPAbGroup)> {
    if !c.is_compact() {
        return Err(Error::Invalid("compact homology of a non-compact cell complex".into()));
    }
    Ok(bm_homology(&c.subdivided()))
}

/// Rational points used to refine cell structures in tests and batteries.
pub fn refinement_points() -> Vec<RealAlgebraic> {
    ["t - 1/2", "t + 3", "t^2 - 3"]
        .iter()
        .flat_map(|k| ClosedPoint::parse(k, Base::Q).expect("point").real_points())
        .collect()
}
