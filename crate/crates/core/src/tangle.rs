//! Four-ended tangles and their algebra.
//!
//! Boundary points are numbered NW = 0, NE = 1, SW = 2, SE = 3.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{EdgeId, PlanarDiagram};
use crate::net::{Net, Port};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Corner {
    NW,
    NE,
    SW,
    SE,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::NW, Corner::NE, Corner::SW, Corner::SE];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flow {
    In,
    Out,
}

/// How the two strands pair up the boundary points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// NW–SW and NE–SE: the even type.
    Vertical,
    /// NW–NE and SW–SE.
    Horizontal,
    /// NW–SE and NE–SW.
    Diagonal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TangleError {
    #[error("boundary orientations do not match")]
    OrientationMismatch,
    #[error("KT tangle needs n >= 3, got {0}")]
    BadParameter(i64),
    #[error("malformed tangle: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug)]
pub struct Tangle {
    pub(crate) net: Net,
    orientation: Option<[Flow; 4]>,
}

impl Tangle {
    pub(crate) fn from_net(net: Net) -> Self {
        debug_assert_eq!(net.open.len(), 4);
        Tangle { net, orientation: None }
    }

    /// T(0/1): two horizontal strands.
    pub fn zero() -> Self {
        Self::from_net(Net {
            open: vec![Port::Open(1), Port::Open(0), Port::Open(3), Port::Open(2)],
            ..Default::default()
        })
    }

    /// T(1/0): two vertical strands.
    pub fn infinity() -> Self {
        Self::from_net(Net {
            open: vec![Port::Open(2), Port::Open(3), Port::Open(0), Port::Open(1)],
            ..Default::default()
        })
    }

    /// The tangle `[1]` (over-strand from SW to NE) or `[-1]`.
    pub fn crossing(positive: bool) -> Self {
        // counterclockwise from an under end
        let ends = if positive {
            [Corner::SE, Corner::NE, Corner::NW, Corner::SW]
        } else {
            [Corner::SW, Corner::SE, Corner::NE, Corner::NW]
        };
        let mut net = Net {
            slots: vec![[Port::Open(0); 4]],
            tags: vec![Default::default()],
            open: vec![Port::Open(0); 4],
            loops: 0,
        };
        for (p, c) in ends.iter().enumerate() {
            net.slots[0][p] = Port::Open(c.index());
            net.open[c.index()] = Port::Slot(0, p as u8);
        }
        Self::from_net(net)
    }

    /// Horizontal twist `[n]`.
    pub fn twist(n: i64) -> Self {
        let mut t = Self::zero();
        for _ in 0..n.unsigned_abs() {
            t = t.sum_unchecked(&Self::crossing(n > 0));
        }
        t
    }

    /// Vertical twist `1/[n]`.
    pub fn vertical_twist(n: i64) -> Self {
        let mut t = Self::infinity();
        for _ in 0..n.unsigned_abs() {
            t = t.stack(&Self::crossing(n > 0));
        }
        t
    }

    /// Rational tangle from a continued fraction `[a1, ..., ak]` whose slope
    /// is `ak + 1/(a(k-1) + 1/(... + 1/a1))`. Terms alternate between
    /// horizontal and vertical twisting, ending with a horizontal one.
    pub fn rational(terms: &[i64]) -> Self {
        let k = terms.len();
        let mut t = if k % 2 == 1 || k == 0 {
            Self::zero()
        } else {
            Self::infinity()
        };
        for (j, &a) in terms.iter().enumerate() {
            let horizontal = (k - 1 - j).is_multiple_of(2);
            for _ in 0..a.unsigned_abs() {
                let x = Self::crossing(a > 0);
                t = if horizontal { t.sum_unchecked(&x) } else { t.stack(&x) };
            }
        }
        t
    }

    /// KT tangle: a vertical twist region with `n` crossings beside one
    /// with `n - 1` crossings of the opposite handedness.
    pub fn kt(n: i64) -> Result<Self, TangleError> {
        if n < 3 {
            return Err(TangleError::BadParameter(n));
        }
        Ok(Self::vertical_twist(n).sum_unchecked(&Self::vertical_twist(-(n - 1))))
    }

    pub fn crossing_count(&self) -> usize {
        self.net.crossing_count()
    }

    pub fn orientation(&self) -> Option<[Flow; 4]> {
        self.orientation
    }

    pub fn with_orientation(mut self, flows: [Flow; 4]) -> Result<Self, TangleError> {
        for c in Corner::ALL {
            let other = self.net.trace_open(c.index());
            if flows[c.index()] == flows[other] {
                return Err(TangleError::OrientationMismatch);
            }
        }
        self.orientation = Some(flows);
        Ok(self)
    }

    /// Boundary point joined to `c` by a strand.
    pub fn partner(&self, c: Corner) -> Corner {
        Corner::ALL[self.net.trace_open(c.index())]
    }

    pub fn pairing(&self) -> Pairing {
        match self.partner(Corner::NW) {
            Corner::SW => Pairing::Vertical,
            Corner::NE => Pairing::Horizontal,
            Corner::SE => Pairing::Diagonal,
            Corner::NW => unreachable!(),
        }
    }

    pub fn is_even_type(&self) -> bool {
        self.pairing() == Pairing::Vertical
    }

    /// Closed components that never reach the boundary.
    pub fn closed_components(&self) -> usize {
        self.net.closed_component_count()
    }

    fn glue(&self, other: &Self, joins: [(usize, usize); 2], keep: [usize; 4]) -> Self {
        let mut net = self.net.clone();
        net.absorb(&other.net);
        for (a, b) in joins {
            net.join(a, b);
        }
        net.compact(&keep);
        let orientation = match (self.orientation, other.orientation) {
            (Some(a), Some(b)) => {
                let all: Vec<Flow> = a.iter().chain(b.iter()).copied().collect();
                Some(keep.map(|i| all[i]))
            }
            _ => None,
        };
        Tangle { net, orientation }
    }

    fn sum_unchecked(&self, other: &Self) -> Self {
        self.glue(other, [(1, 4), (3, 6)], [0, 5, 2, 7])
    }

    /// Horizontal sum: `self` on the left, `other` on the right.
    pub fn sum(&self, other: &Self) -> Result<Self, TangleError> {
        if let (Some(a), Some(b)) = (self.orientation, other.orientation) {
            if a[Corner::NE.index()] == b[Corner::NW.index()]
                || a[Corner::SE.index()] == b[Corner::SW.index()]
            {
                return Err(TangleError::OrientationMismatch);
            }
        }
        Ok(self.sum_unchecked(other))
    }

    /// Vertical product: `self` on top of `other`.
    pub fn stack(&self, other: &Self) -> Self {
        self.glue(other, [(2, 4), (3, 5)], [0, 1, 6, 7])
    }

    /// Rotation by π in the plane.
    pub fn rotate_pi(&self) -> Self {
        let mut net = self.net.clone();
        net.compact(&[3, 2, 1, 0]);
        Tangle {
            net,
            orientation: self.orientation.map(|[a, b, c, d]| [d, c, b, a]),
        }
    }

    /// Reflection in a vertical line: left and right swap, and every
    /// crossing changes handedness.
    pub fn reflect(&self) -> Self {
        let mut net = self.net.clone();
        net.reflect();
        net.compact(&[1, 0, 3, 2]);
        Tangle {
            net,
            orientation: self.orientation.map(|[a, b, c, d]| [b, a, d, c]),
        }
    }

    /// The tangle with every crossing changed.
    pub fn mirror(&self) -> Self {
        let mut net = self.net.clone();
        net.flip_crossings();
        Tangle {
            net,
            orientation: self.orientation,
        }
    }

    fn close(&self, joins: [(usize, usize); 2]) -> PlanarDiagram {
        let mut net = self.net.clone();
        for (a, b) in joins {
            net.join(a, b);
        }
        net.compact(&[]);
        net.to_diagram(&[]).diagram
    }

    /// Closure joining NW–NE and SW–SE.
    pub fn numerator(&self) -> PlanarDiagram {
        self.close([(0, 1), (2, 3)])
    }

    /// Closure joining NW–SW and NE–SE.
    pub fn denominator(&self) -> PlanarDiagram {
        self.close([(0, 2), (1, 3)])
    }

    pub fn to_doc(&self) -> TangleDoc {
        let num = self.net.number_edges(&[]);
        let crossings = num.crossings().iter().map(|c| c.edges).collect();
        let edge = |c: Corner| num.open_edge[c.index()];
        TangleDoc::Explicit {
            crossings,
            boundary: Boundary {
                nw: edge(Corner::NW),
                ne: edge(Corner::NE),
                sw: edge(Corner::SW),
                se: edge(Corner::SE),
            },
            orientation: self.orientation.map(|f| {
                Corner::ALL
                    .iter()
                    .map(|c| (*c, f[c.index()]))
                    .collect()
            }),
        }
    }

    pub fn from_doc(doc: &TangleDoc) -> Result<Self, TangleError> {
        match doc {
            TangleDoc::Kt { kt } => Self::kt(*kt),
            TangleDoc::Rational { rational } => {
                let mut terms = Vec::new();
                for t in rational {
                    match t {
                        RationalTerm::Int(n) => terms.push(*n),
                        RationalTerm::Marker(m) if m == "inf" && rational.len() == 1 => {
                            return Ok(Self::infinity())
                        }
                        RationalTerm::Marker(m) => {
                            return Err(TangleError::Malformed(format!("unknown rational term `{m}`")))
                        }
                    }
                }
                Ok(Self::rational(&terms))
            }
            TangleDoc::Sum { sum } => {
                let mut parts = sum.iter().map(Self::from_doc);
                let mut acc = parts
                    .next()
                    .ok_or_else(|| TangleError::Malformed("empty sum".into()))??;
                for p in parts {
                    acc = acc.sum(&p?)?;
                }
                Ok(acc)
            }
            TangleDoc::Stack { stack } => {
                let mut parts = stack.iter().map(Self::from_doc);
                let mut acc = parts
                    .next()
                    .ok_or_else(|| TangleError::Malformed("empty stack".into()))??;
                for p in parts {
                    acc = acc.stack(&p?);
                }
                Ok(acc)
            }
            TangleDoc::Rotate { rotate } => Ok(Self::from_doc(rotate)?.rotate_pi()),
            TangleDoc::Mirror { mirror } => Ok(Self::from_doc(mirror)?.mirror()),
            TangleDoc::Explicit {
                crossings,
                boundary,
                orientation,
            } => {
                let t = Self::from_explicit(crossings, boundary)?;
                match orientation {
                    None => Ok(t),
                    Some(map) => {
                        let mut flows = [Flow::In; 4];
                        for c in Corner::ALL {
                            flows[c.index()] = *map.get(&c).ok_or_else(|| {
                                TangleError::Malformed(format!("orientation missing {c:?}"))
                            })?;
                        }
                        t.with_orientation(flows)
                    }
                }
            }
        }
    }

    fn from_explicit(crossings: &[[EdgeId; 4]], b: &Boundary) -> Result<Self, TangleError> {
        let mut ends: BTreeMap<EdgeId, Vec<Port>> = BTreeMap::new();
        for (x, t) in crossings.iter().enumerate() {
            for (p, &e) in t.iter().enumerate() {
                ends.entry(e).or_default().push(Port::Slot(x, p as u8));
            }
        }
        for (i, e) in [b.nw, b.ne, b.sw, b.se].into_iter().enumerate() {
            ends.entry(e).or_default().push(Port::Open(i));
        }
        let mut net = Net {
            slots: vec![[Port::Open(usize::MAX); 4]; crossings.len()],
            tags: vec![Default::default(); crossings.len()],
            open: vec![Port::Open(usize::MAX); 4],
            loops: 0,
        };
        for (e, ports) in &ends {
            let [a, b] = ports[..] else {
                return Err(TangleError::Malformed(format!(
                    "edge {e} has {} ends",
                    ports.len()
                )));
            };
            for (from, to) in [(a, b), (b, a)] {
                match from {
                    Port::Slot(x, p) => net.slots[x][p as usize] = to,
                    Port::Open(i) => net.open[i] = to,
                }
            }
        }
        Ok(Self::from_net(net))
    }
}

/// Continued-fraction value `p/q` of a rational tangle term list, in lowest
/// terms with `q >= 0`. `[]` is `0/1`.
pub fn rational_slope(terms: &[i64]) -> (i64, i64) {
    let (mut p, mut q) = (0i64, 1i64);
    let mut first = true;
    for &a in terms {
        if first {
            (p, q) = (a, 1);
            first = false;
        } else {
            // a + 1/(p/q) = (a p + q) / p
            (p, q) = (a * p + q, p);
        }
    }
    if q < 0 {
        (p, q) = (-p, -q);
    }
    let g = gcd(p.abs(), q.abs()).max(1);
    (p / g, q / g)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundary {
    #[serde(rename = "NW")]
    pub nw: EdgeId,
    #[serde(rename = "NE")]
    pub ne: EdgeId,
    #[serde(rename = "SW")]
    pub sw: EdgeId,
    #[serde(rename = "SE")]
    pub se: EdgeId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalTerm {
    Int(i64),
    Marker(String),
}

/// Serialized tangle: explicit crossings or one of the shorthand forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TangleDoc {
    Kt {
        kt: i64,
    },
    Rational {
        rational: Vec<RationalTerm>,
    },
    Sum {
        sum: Vec<TangleDoc>,
    },
    Stack {
        stack: Vec<TangleDoc>,
    },
    Rotate {
        rotate: Box<TangleDoc>,
    },
    Mirror {
        mirror: Box<TangleDoc>,
    },
    Explicit {
        crossings: Vec<[EdgeId; 4]>,
        boundary: Boundary,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        orientation: Option<BTreeMap<Corner, Flow>>,
    },
}
