//! Oriented planar diagrams in PD notation.
//!
//! A crossing `X[a,b,c,d]` lists its four edges counterclockwise starting
//! at the incoming under-edge `a`. The crossing is positive when the
//! over-strand runs from `d` to `b`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;


pub type EdgeId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed PD code: {0}")]
    MalformedPD(String),
    #[error("inconsistent edges: {0}")]
    InconsistentEdges(String),
    #[error("no consistent orientation: {0}")]
    OrientationError(String),
    #[error("diagram is disconnected")]
    DisconnectedDiagram,
    #[error("rotation system is not planar: {faces} faces for {crossings} crossings")]
    NonPlanar { faces: usize, crossings: usize },
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("operation needs a single-component diagram")]
    MultiComponentInput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub edges: [EdgeId; 4],
    pub sign: i8,
}

impl Crossing {
    /// Whether PD position `p` is where its edge enters the crossing.
    pub fn is_incoming(&self, p: usize) -> bool {
        match p {
            0 => true,
            2 => false,
            3 => self.sign > 0,
            1 => self.sign < 0,
            _ => unreachable!(),
        }
    }

    pub fn over_in(&self) -> EdgeId {
        if self.sign > 0 {
            self.edges[3]
        } else {
            self.edges[1]
        }
    }

    pub fn over_out(&self) -> EdgeId {
        if self.sign > 0 {
            self.edges[1]
        } else {
            self.edges[3]
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// A region of the diagram, as the cyclic list of edge sides bounding it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub sides: Vec<(EdgeId, Side)>,
}

impl Face {
    pub fn contains(&self, edge: EdgeId, side: Side) -> bool {
        self.sides.contains(&(edge, side))
    }

    pub fn touches(&self, edge: EdgeId) -> bool {
        self.sides.iter().any(|(e, _)| *e == edge)
    }
}

/// Faces of a diagram together with the face of every crossing corner.
#[derive(Clone, Debug)]
pub struct FaceMap {
    pub faces: Vec<Face>,
    /// `corners[x][k]` is the face index of the corner between PD positions
    /// `k` and `k + 1` of crossing `x`.
    pub corners: Vec<[usize; 4]>,
}

#[derive(Clone, Debug)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    edge_count: u32,
    component_starts: Vec<EdgeId>,
    labels: BTreeMap<EdgeId, String>,
    /// Per edge (index `e - 1`): slot where it ends, slot where it starts.
    heads: Vec<Option<(usize, u8)>>,
    tails: Vec<Option<(usize, u8)>>,
}

impl PartialEq for PlanarDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings
            && self.edge_count == other.edge_count
            && self.component_starts == other.component_starts
            && self.labels == other.labels
    }
}

impl Eq for PlanarDiagram {}

/// Structured document form of a diagram.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdDoc {
    #[serde(default)]
    pub crossings: Vec<[EdgeId; 4]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<EdgeId, String>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub free_loops: usize,
    /// Alternative to `crossings`: PD text.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd: Option<String>,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl PlanarDiagram {
    /// The crossingless unknot.
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn unlink(components: usize) -> Self {
        Self::from_oriented(
            Vec::new(),
            components as u32,
            (1..=components as u32).collect(),
        )
    }

    /// Builds a diagram from crossings whose signs are already known.
    /// Free loops are the edges above `2 * crossings.len()`.
    pub(crate) fn from_oriented(
        crossings: Vec<Crossing>,
        edge_count: u32,
        component_starts: Vec<EdgeId>,
    ) -> Self {
        let mut heads = vec![None; edge_count as usize];
        let mut tails = vec![None; edge_count as usize];
        for (x, c) in crossings.iter().enumerate() {
            for p in 0..4 {
                let slot = Some((x, p as u8));
                let e = c.edges[p] as usize - 1;
                if c.is_incoming(p) {
                    debug_assert!(heads[e].is_none());
                    heads[e] = slot;
                } else {
                    debug_assert!(tails[e].is_none());
                    tails[e] = slot;
                }
            }
        }
        PlanarDiagram {
            crossings,
            edge_count,
            component_starts,
            labels: BTreeMap::new(),
            heads,
            tails,
        }
    }

    /// Validates raw PD tuples and infers the orientation of every edge.
    ///
    /// Under-strands fix their edges' directions; over-strands on a
    /// component that never passes under follow the labelling convention
    /// (ids increase along the orientation, wrapping once per component).
    pub fn from_tuples(tuples: Vec<[EdgeId; 4]>, free_loops: usize) -> Result<Self, DiagramError> {
        let c = tuples.len();
        let mut occurrences: HashMap<EdgeId, Vec<(usize, usize)>> = HashMap::new();
        for (x, t) in tuples.iter().enumerate() {
            for (p, &e) in t.iter().enumerate() {
                if e == 0 {
                    return Err(DiagramError::MalformedPD("edge ids start at 1".into()));
                }
                occurrences.entry(e).or_default().push((x, p));
            }
        }
        let max = occurrences.keys().copied().max().unwrap_or(0);
        if max as usize != 2 * c {
            return Err(DiagramError::InconsistentEdges(format!(
                "{c} crossings need edge ids 1..{}, found maximum {max}",
                2 * c
            )));
        }
        for e in 1..=max {
            match occurrences.get(&e).map(Vec::len) {
                Some(2) => {}
                n => {
                    return Err(DiagramError::InconsistentEdges(format!(
                        "edge {e} appears {} times",
                        n.unwrap_or(0)
                    )))
                }
            }
        }
        // incoming[x][p]: Some(true) if the edge at (x, p) enters x.
        let mut incoming: Vec<[Option<bool>; 4]> = vec![[None; 4]; c];
        let mut stack = Vec::new();
        for x in 0..c {
            stack.push((x, 0, true));
            stack.push((x, 2, false));
        }
        let other_end = |x: usize, p: usize| -> (usize, usize) {
            let occ = &occurrences[&tuples[x][p]];
            if occ[0] == (x, p) {
                occ[1]
            } else {
                occ[0]
            }
        };
        let mut next_free = 0usize;
        loop {
            while let Some((x, p, inc)) = stack.pop() {
                match incoming[x][p] {
                    Some(v) if v == inc => continue,
                    Some(_) => {
                        return Err(DiagramError::OrientationError(format!(
                            "edge {} is forced both ways",
                            tuples[x][p]
                        )))
                    }
                    None => incoming[x][p] = Some(inc),
                }
                let (ox, op) = other_end(x, p);
                stack.push((ox, op, !inc));
                if p % 2 == 1 {
                    stack.push((x, (p + 2) % 4, !inc));
                }
            }
            // pick an undetermined over-strand and apply the labelling rule
            while next_free < c && incoming[next_free][1].is_some() {
                next_free += 1;
            }
            if next_free == c {
                break;
            }
            let t = tuples[next_free];
            let (b, d) = (t[1], t[3]);
            let d_to_b = b == d + 1 || (d > b + 1);
            stack.push((next_free, 3, d_to_b));
        }
        let crossings: Vec<Crossing> = tuples
            .iter()
            .zip(&incoming)
            .map(|(t, inc)| Crossing {
                edges: *t,
                sign: if inc[3] == Some(true) { 1 } else { -1 },
            })
            .collect();
        let edge_count = (2 * c + free_loops) as u32;
        let mut d = Self::from_oriented(crossings, edge_count, Vec::new());
        d.component_starts = d.compute_component_starts();
        Ok(d)
    }

    fn compute_component_starts(&self) -> Vec<EdgeId> {
        let mut seen = vec![false; self.edge_count as usize];
        let mut starts = Vec::new();
        for e in 1..=self.edge_count {
            if seen[e as usize - 1] {
                continue;
            }
            starts.push(e);
            for f in self.component_edges(e) {
                seen[f as usize - 1] = true;
            }
        }
        starts
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> u32 {
        self.edge_count
    }

    pub fn component_starts(&self) -> &[EdgeId] {
        &self.component_starts
    }

    pub fn component_count(&self) -> usize {
        self.component_starts.len()
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    pub fn labels(&self) -> &BTreeMap<EdgeId, String> {
        &self.labels
    }

    pub fn label(&self, e: EdgeId) -> Option<&str> {
        self.labels.get(&e).map(String::as_str)
    }

    pub fn with_labels(mut self, labels: BTreeMap<EdgeId, String>) -> Self {
        self.labels = labels;
        self
    }

    /// Number of components without crossings.
    pub fn free_loop_count(&self) -> usize {
        self.edge_count as usize - 2 * self.crossings.len()
    }

    /// Slot `(crossing, position)` where edge `e` ends.
    pub fn head(&self, e: EdgeId) -> Option<(usize, u8)> {
        self.heads.get(e as usize - 1).copied().flatten()
    }

    /// Slot `(crossing, position)` where edge `e` starts.
    pub fn tail(&self, e: EdgeId) -> Option<(usize, u8)> {
        self.tails.get(e as usize - 1).copied().flatten()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        e >= 1 && e <= self.edge_count
    }

    /// The edge following `e` along the orientation.
    pub fn successor(&self, e: EdgeId) -> EdgeId {
        match self.head(e) {
            None => e,
            Some((x, p)) => self.crossings[x].edges[(p as usize + 2) % 4],
        }
    }

    /// Edges of the component through `e`, in orientation order from `e`.
    pub fn component_edges(&self, e: EdgeId) -> Vec<EdgeId> {
        let mut out = vec![e];
        let mut cur = self.successor(e);
        while cur != e {
            out.push(cur);
            cur = self.successor(cur);
        }
        out
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Reflection of the diagram in a line of the plane. Crossing signs
    /// flip; the orientation of every strand is kept.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                Crossing {
                    edges: [a, d, cc, b],
                    sign: -c.sign,
                }
            })
            .collect();
        let mut m = Self::from_oriented(crossings, self.edge_count, self.component_starts.clone());
        m.labels = self
            .labels
            .iter()
            .map(|(e, l)| {
                let toggled = match l.strip_suffix('*') {
                    Some(base) => base.to_string(),
                    None => format!("{l}*"),
                };
                (*e, toggled)
            })
            .collect();
        m
    }

    /// Same diagram with every strand's orientation reversed.
    pub fn reverse(&self) -> Self {
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                Crossing {
                    edges: [cc, d, a, b],
                    sign: c.sign,
                }
            })
            .collect();
        let mut r = Self::from_oriented(crossings, self.edge_count, Vec::new());
        r.component_starts = r.compute_component_starts();
        r.labels = self.labels.clone();
        r
    }

    /// Connected sum splicing the midpoints of `arc1` in `self` and `arc2`
    /// in `other`. Edges are renumbered along the orientation starting
    /// with the edge that leaves `self` into `other`.
    pub fn connected_sum(&self, arc1: EdgeId, other: &Self, arc2: EdgeId) -> Result<Self, DiagramError> {
        if !self.is_knot() || !other.is_knot() {
            return Err(DiagramError::MultiComponentInput);
        }
        for (d, e) in [(self, arc1), (other, arc2)] {
            if !d.contains_edge(e) {
                return Err(DiagramError::UnknownEdge(e));
            }
        }
        if self.crossings.is_empty() {
            return Ok(other.relabeled_from(arc2));
        }
        if other.crossings.is_empty() {
            return Ok(self.relabeled_from(arc1));
        }
        let mut net = self.to_net();
        let off = self.crossings.len();
        net.absorb(&other.to_net());
        let slot = |d: &Self, e: EdgeId, head: bool, off: usize| {
            let (x, p) = if head { d.head(e) } else { d.tail(e) }.expect("crossing edge");
            crate::net::Port::Slot(x + off, p)
        };
        let tail1 = slot(self, arc1, false, 0);
        // open points: 0 = tail side of arc1, 1 = head side of arc1
        net.cut(tail1);
        // 2 = head side of arc2, 3 = tail side of arc2
        net.cut(slot(other, arc2, true, off));
        net.join(0, 2);
        net.join(1, 3);
        net.compact(&[]);
        let oriented = net.to_diagram(&[tail1]);
        Ok(oriented.diagram)
    }

    /// Renumbers edges along the orientation starting from `start`.
    pub fn relabeled_from(&self, start: EdgeId) -> Self {
        if self.crossings.is_empty() {
            return self.clone();
        }
        let seed = match self.tail(start) {
            Some((x, p)) => crate::net::Port::Slot(x, p),
            None => return self.clone(),
        };
        let mut seeds = vec![seed];
        for e in 1..=self.edge_count {
            if let Some((x, p)) = self.tail(e) {
                seeds.push(crate::net::Port::Slot(x, p));
            }
        }
        let oriented = self.to_net().to_diagram(&seeds);
        let mut out = oriented.diagram;
        let mut labels = BTreeMap::new();
        for e in 1..=self.edge_count {
            if let (Some(l), Some((x, p))) = (self.labels.get(&e), self.tail(e)) {
                labels.insert(oriented.edge_at[x][p as usize], l.clone());
            }
        }
        out.labels = labels;
        out
    }

    /// Faces of the rotation system and the face of every crossing corner.
    ///
    /// The walk leaves a crossing along an edge and, on arriving at the next
    /// crossing, turns to the counterclockwise-next position; the face traced
    /// lies to the walker's right.
    pub fn face_map(&self) -> FaceMap {
        let n = self.crossings.len();
        let mut face_of = vec![[usize::MAX; 4]; n];
        let mut faces = Vec::new();
        for x in 0..n {
            for p in 0..4u8 {
                if face_of[x][p as usize] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut sides = Vec::new();
                let (mut cx, mut cp) = (x, p);
                while face_of[cx][cp as usize] == usize::MAX {
                    face_of[cx][cp as usize] = id;
                    let c = &self.crossings[cx];
                    let e = c.edges[cp as usize];
                    let outgoing = !c.is_incoming(cp as usize);
                    sides.push((e, if outgoing { Side::Right } else { Side::Left }));
                    let (nx, np) = if outgoing { self.head(e) } else { self.tail(e) }.unwrap();
                    cx = nx;
                    cp = (np + 1) % 4;
                }
                faces.push(Face { sides });
            }
        }
        // corner between k and k+1 lies in the face of the dart leaving via k+1
        let corners = face_of
            .iter()
            .map(|row| [row[1], row[2], row[3], row[0]])
            .collect();
        FaceMap { faces, corners }
    }

    pub fn faces(&self) -> Vec<Face> {
        if self.crossings.is_empty() {
            return (1..=self.edge_count)
                .flat_map(|e| [Face { sides: vec![(e, Side::Left)] }, Face { sides: vec![(e, Side::Right)] }])
                .collect();
        }
        self.face_map().faces
    }

    /// Number of connected pieces of the crossing graph (free loops excluded).
    pub fn crossing_graph_components(&self) -> usize {
        let n = self.crossings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in 1..=self.edge_count {
            if let (Some((a, _)), Some((b, _))) = (self.head(e), self.tail(e)) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Checks the Euler relation `faces = crossings + 2` per connected piece.
    pub fn euler_check(&self) -> Result<(), DiagramError> {
        if self.crossings.is_empty() {
            return Ok(());
        }
        let pieces = self.crossing_graph_components();
        let faces = self.face_map().faces.len();
        let c = self.crossings.len();
        if faces != c + 2 * pieces {
            return Err(DiagramError::NonPlanar { faces, crossings: c });
        }
        if pieces > 1 || self.free_loop_count() > 0 {
            return Err(DiagramError::DisconnectedDiagram);
        }
        Ok(())
    }

    pub fn to_pd_text(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.crossings.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let [a, b, cc, d] = c.edges;
            let _ = write!(s, "X[{a},{b},{cc},{d}]");
        }
        s
    }

    pub fn to_doc(&self) -> PdDoc {
        PdDoc {
            crossings: self.crossings.iter().map(|c| c.edges).collect(),
            labels: self.labels.clone(),
            free_loops: self.free_loop_count(),
            pd: None,
        }
    }

    pub fn from_doc(doc: &PdDoc) -> Result<Self, DiagramError> {
        let tuples = match &doc.pd {
            Some(text) if doc.crossings.is_empty() => parse_pd_terms(text)?,
            Some(_) => {
                return Err(DiagramError::MalformedPD(
                    "document has both `pd` and `crossings`".into(),
                ))
            }
            None => doc.crossings.clone(),
        };
        // an empty crossing list is the unknot, not the empty link
        let loops = if tuples.is_empty() { doc.free_loops.max(1) } else { doc.free_loops };
        let d = Self::from_tuples(tuples, loops)?;
        for e in doc.labels.keys() {
            if !d.contains_edge(*e) {
                return Err(DiagramError::UnknownEdge(*e));
            }
        }
        Ok(d.with_labels(doc.labels.clone()))
    }

    /// Canonical crossing list: the lexicographically smallest tuple list over
    /// all renumberings that start a component at any of its edges.
    /// Two knot diagrams are isomorphic as oriented planar diagrams iff their
    /// canonical forms agree.
    pub fn canonical_form(&self) -> Vec<[EdgeId; 4]> {
        let mut best: Option<Vec<[EdgeId; 4]>> = None;
        if self.crossings.is_empty() {
            return Vec::new();
        }
        let comps: Vec<Vec<EdgeId>> = self
            .component_starts
            .iter()
            .map(|&s| self.component_edges(s))
            .collect();
        for perm in permutations(comps.len()) {
            let mut choices = vec![0usize; comps.len()];
            loop {
                let mut rename = vec![0 as EdgeId; self.edge_count as usize + 1];
                let mut next = 1;
                for &ci in &perm {
                    let comp = &comps[ci];
                    let k = choices[ci];
                    for i in 0..comp.len() {
                        rename[comp[(k + i) % comp.len()] as usize] = next;
                        next += 1;
                    }
                }
                let mut tuples: Vec<[EdgeId; 4]> = self
                    .crossings
                    .iter()
                    .map(|c| c.edges.map(|e| rename[e as usize]))
                    .collect();
                tuples.sort();
                if best.as_ref().is_none_or(|b| tuples < *b) {
                    best = Some(tuples);
                }
                // advance mixed-radix counter
                let mut i = 0;
                while i < comps.len() {
                    choices[i] += 1;
                    if choices[i] < comps[i].len() {
                        break;
                    }
                    choices[i] = 0;
                    i += 1;
                }
                if i == comps.len() {
                    break;
                }
            }
        }
        best.unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.crossings.len() == other.crossings.len()
            && self.component_count() == other.component_count()
            && self.free_loop_count() == other.free_loop_count()
            && self.canonical_form() == other.canonical_form()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

fn parse_pd_terms(text: &str) -> Result<Vec<[EdgeId; 4]>, DiagramError> {
    let mut body = text.trim();
    if let Some(inner) = body.strip_prefix("PD[") {
        body = inner
            .strip_suffix(']')
            .ok_or_else(|| DiagramError::MalformedPD("unterminated PD[".into()))?;
    }
    let mut out = Vec::new();
    let mut rest = body.trim_start_matches([' ', ',', '\n', '\t', '\r']);
    while !rest.is_empty() {
        let after = rest
            .strip_prefix("X[")
            .ok_or_else(|| DiagramError::MalformedPD(format!("expected X[ at `{rest}`")))?;
        let close = after
            .find(']')
            .ok_or_else(|| DiagramError::MalformedPD("unterminated X[".into()))?;
        let nums: Result<Vec<EdgeId>, _> =
            after[..close].split(',').map(|s| s.trim().parse::<EdgeId>()).collect();
        let nums = nums.map_err(|e| DiagramError::MalformedPD(e.to_string()))?;
        let tuple: [EdgeId; 4] = nums
            .try_into()
            .map_err(|_| DiagramError::MalformedPD("crossing needs four edges".into()))?;
        out.push(tuple);
        rest = after[close + 1..].trim_start_matches([' ', ',', '\n', '\t', '\r']);
    }
    Ok(out)
}

/// Parses PD text (`X[1,4,2,5] X[3,6,4,1] ...`) or a JSON document.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let doc: PdDoc =
            serde_json::from_str(trimmed).map_err(|e| DiagramError::MalformedPD(e.to_string()))?;
        return PlanarDiagram::from_doc(&doc);
    }
    let tuples = parse_pd_terms(trimmed)?;
    let loops = usize::from(tuples.is_empty());
    PlanarDiagram::from_tuples(tuples, loops)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    pub(crate) const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

    #[test]
    fn parses_standard_knots() {
        let t = parse_pd(TREFOIL).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.edge_count(), 6);
        assert!(t.is_knot());
        assert_eq!(t.writhe(), -3);
        let f = parse_pd(FIGURE_EIGHT).unwrap();
        assert_eq!(f.crossing_count(), 4);
        assert_eq!(f.writhe(), 0);
        assert!(f.is_knot());
        assert_eq!(t.to_pd_text(), TREFOIL);
        assert_eq!(parse_pd("").unwrap(), PlanarDiagram::unknot());
        assert_eq!(parse_pd("{}").unwrap(), PlanarDiagram::unknot());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(parse_pd("X[1,2,3,4]"), Err(DiagramError::InconsistentEdges(_))));
        assert!(matches!(parse_pd("X[1,1,1,2]"), Err(DiagramError::InconsistentEdges(_))));
        assert!(matches!(parse_pd("X[1,2,3]"), Err(DiagramError::MalformedPD(_))));
        assert!(matches!(parse_pd("Y[1,2,3,4]"), Err(DiagramError::MalformedPD(_))));
        // both under-strands force edge 1 to enter
        assert!(matches!(
            parse_pd("X[1,3,2,4] X[1,4,2,3]"),
            Err(DiagramError::OrientationError(_))
        ));
    }

    #[test]
    fn kinks_are_legal() {
        for pd in ["X[1,2,2,1]", "X[1,1,2,2]"] {
            let k = parse_pd(pd).unwrap();
            assert!(k.is_knot());
            assert_eq!(k.faces().len(), 3, "{pd}");
            k.euler_check().unwrap();
        }
        let k = parse_pd("X[1,2,2,1]").unwrap();
        let faces = k.faces();
        assert!(faces.iter().any(|f| f.sides.len() == 1));
    }

    #[test]
    fn face_counts() {
        for (pd, n) in [(TREFOIL, 5), (FIGURE_EIGHT, 6)] {
            let d = parse_pd(pd).unwrap();
            let faces = d.faces();
            assert_eq!(faces.len(), n);
            d.euler_check().unwrap();
            // each edge side lies in exactly one face
            let mut all: Vec<(EdgeId, Side)> = faces.iter().flat_map(|f| f.sides.clone()).collect();
            all.sort();
            let expect: Vec<(EdgeId, Side)> = (1..=d.edge_count())
                .flat_map(|e| [(e, Side::Left), (e, Side::Right)])
                .collect();
            assert_eq!(all, expect);
        }
    }

    #[test]
    fn mirror_is_involution() {
        let t = parse_pd(TREFOIL).unwrap();
        let m = t.mirror();
        assert_eq!(m.writhe(), 3);
        assert_eq!(m.mirror(), t);
        assert!(m.mirror().is_isomorphic(&t));
        m.euler_check().unwrap();
    }

    #[test]
    fn reverse_keeps_signs() {
        let t = parse_pd(FIGURE_EIGHT).unwrap();
        let r = t.reverse();
        assert_eq!(r.writhe(), t.writhe());
        assert_eq!(r.reverse(), t);
    }

    #[test]
    fn connected_sum_counts() {
        let t = parse_pd(TREFOIL).unwrap();
        let s = t.connected_sum(1, &t.mirror(), 4).unwrap();
        assert_eq!(s.crossing_count(), 6);
        assert!(s.is_knot());
        s.euler_check().unwrap();
        assert_eq!(s.writhe(), 0);
        let u = PlanarDiagram::unknot().connected_sum(1, &t, 2).unwrap();
        assert!(u.is_isomorphic(&t));
        let hopf = PlanarDiagram::from_tuples(vec![[1, 3, 2, 4], [3, 1, 4, 2]], 0).unwrap();
        assert_eq!(hopf.component_count(), 2);
        assert_eq!(t.connected_sum(1, &hopf, 1), Err(DiagramError::MultiComponentInput));
    }

    #[test]
    fn doc_round_trip() {
        let t = parse_pd(TREFOIL).unwrap();
        let mut labels = BTreeMap::new();
        labels.insert(1, "x1".to_string());
        let t = t.with_labels(labels);
        let text = serde_json::to_string(&t.to_doc()).unwrap();
        assert_eq!(parse_pd(&text).unwrap(), t);
        let m = t.mirror();
        assert_eq!(m.label(1), Some("x1*"));
    }

    #[test]
    fn canonical_form_ignores_numbering() {
        let t = parse_pd(TREFOIL).unwrap();
        for e in 1..=6 {
            assert!(t.relabeled_from(e).is_isomorphic(&t));
        }
        assert!(!t.is_isomorphic(&t.mirror()));
    }
}
