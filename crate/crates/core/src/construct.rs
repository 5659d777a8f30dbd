//! Symmetric unions with several tangle regions.
//!
//! `D` is drawn with the chosen face `F` facing a vertical axis and its
//! reflection `D*` on the other side. The arcs `e_0, ..., e_n` on the
//! boundary of `F` are cut; the ends of `e_0` and `e_0*` are joined by a
//! band, and the ends of `e_i`, `e_i*` are joined through the tangle `T_i`
//! (NW/SW towards `D`, NE/SE towards `D*`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{DiagramError, EdgeId, PdDoc, PlanarDiagram, Side};
use crate::group::arcs;
use crate::invariant::VerificationReport;
use crate::net::{Net, Port, Tag};
use crate::tangle::{Corner, Flow, Tangle, TangleDoc, TangleError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("NotEvenType: tangle {0} does not join its left ends and its right ends")]
    NotEvenType(usize),
    #[error("NotAKnot: {0}")]
    NotAKnot(String),
    #[error("ClosedComponentInTangle: tangle {0} contains a closed component")]
    ClosedComponentInTangle(usize),
    #[error("UnknownRegion: {0}")]
    UnknownRegion(usize),
    #[error("BoundaryMismatch: replacement orientation does not match region {0}")]
    BoundaryMismatch(usize),
    #[error("bad marked arcs: {0}")]
    BadMarkedArcs(String),
    #[error("no face of the partial diagram meets every marked arc (face choice {0})")]
    NoCommonFace(usize),
    #[error("partial diagram has no crossings")]
    NoCrossings,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Tangle(#[from] TangleError),
}

#[derive(Clone, Debug)]
pub struct SymUnionSpec {
    pub partial: PlanarDiagram,
    pub marked_arcs: Vec<EdgeId>,
    pub tangles: Vec<Tangle>,
    /// Index among the faces of `partial` that meet every marked arc.
    pub face: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecDoc {
    pub partial: PdDoc,
    pub marked_arcs: Vec<EdgeId>,
    pub tangles: Vec<TangleDoc>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub face: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl SymUnionSpec {
    pub fn new(partial: PlanarDiagram, marked_arcs: Vec<EdgeId>, tangles: Vec<Tangle>) -> Self {
        SymUnionSpec {
            partial,
            marked_arcs,
            tangles,
            face: 0,
        }
    }

    pub fn from_doc(doc: &SpecDoc) -> Result<Self, ConstructError> {
        let partial = PlanarDiagram::from_doc(&doc.partial)?;
        let tangles = doc
            .tangles
            .iter()
            .map(Tangle::from_doc)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SymUnionSpec {
            partial,
            marked_arcs: doc.marked_arcs.clone(),
            tangles,
            face: doc.face,
        })
    }

    pub fn to_doc(&self) -> SpecDoc {
        SpecDoc {
            partial: self.partial.to_doc(),
            marked_arcs: self.marked_arcs.clone(),
            tangles: self.tangles.iter().map(Tangle::to_doc).collect(),
            face: self.face,
        }
    }

    pub fn validate(&self) -> Result<(), ConstructError> {
        if !self.partial.is_knot() {
            return Err(ConstructError::NotAKnot(format!(
                "partial diagram has {} components",
                self.partial.component_count()
            )));
        }
        if self.partial.crossing_count() == 0 {
            return Err(ConstructError::NoCrossings);
        }
        if self.marked_arcs.is_empty() {
            return Err(ConstructError::BadMarkedArcs("no marked arcs".into()));
        }
        if self.tangles.len() + 1 != self.marked_arcs.len() {
            return Err(ConstructError::BadMarkedArcs(format!(
                "{} marked arcs need {} tangles, got {}",
                self.marked_arcs.len(),
                self.marked_arcs.len() - 1,
                self.tangles.len()
            )));
        }
        for (i, e) in self.marked_arcs.iter().enumerate() {
            if !self.partial.contains_edge(*e) {
                return Err(DiagramError::UnknownEdge(*e).into());
            }
            if self.marked_arcs[..i].contains(e) {
                return Err(ConstructError::BadMarkedArcs(format!("edge {e} marked twice")));
            }
        }
        for (i, t) in self.tangles.iter().enumerate() {
            if !t.is_even_type() {
                return Err(ConstructError::NotEvenType(i + 1));
            }
            if t.closed_components() > 0 {
                return Err(ConstructError::ClosedComponentInTangle(i + 1));
            }
        }
        Ok(())
    }

    /// Faces of the partial diagram bordering every marked arc, with the
    /// side of each marked arc that faces them.
    pub fn candidate_faces(&self) -> Vec<(usize, Vec<Side>)> {
        let faces = self.partial.faces();
        faces
            .iter()
            .enumerate()
            .filter_map(|(f, face)| {
                let sides: Option<Vec<Side>> = self
                    .marked_arcs
                    .iter()
                    .map(|&e| {
                        if face.contains(e, Side::Right) {
                            Some(Side::Right)
                        } else if face.contains(e, Side::Left) {
                            Some(Side::Left)
                        } else {
                            None
                        }
                    })
                    .collect();
                sides.map(|s| (f, s))
            })
            .collect()
    }
}

/// Boundary data of one tangle region in the assembled diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    /// Crossing indices of the tangle in the built diagram.
    pub crossings: std::ops::Range<usize>,
    /// Edges of the built diagram at the NW, NE, SW, SE corners.
    pub corner_edges: [EdgeId; 4],
    /// Whether the strand at each corner flows into the tangle.
    pub flows: [Flow; 4],
}

/// A built symmetric union and the bookkeeping needed to take it apart.
#[derive(Clone, Debug)]
pub struct SymmetricUnion {
    pub diagram: PlanarDiagram,
    pub spec: SymUnionSpec,
    pub regions: Vec<Region>,
    /// Band edges: `[flowing D to D*, flowing D* to D]`.
    pub band: [EdgeId; 2],
}

/// Cut points of a marked arc: the slots at its upper and lower ends in
/// the partial diagram.
#[derive(Clone, Copy, Debug)]
struct Ends {
    upper: Port,
    lower: Port,
}

struct Layout {
    ends: Vec<Ends>,
    crossings: usize,
}

fn layout(spec: &SymUnionSpec) -> Result<Layout, ConstructError> {
    spec.validate()?;
    let d = &spec.partial;
    let cands = spec.candidate_faces();
    let (_, sides) = cands
        .get(spec.face)
        .ok_or(ConstructError::NoCommonFace(spec.face))?;
    let ends = spec
        .marked_arcs
        .iter()
        .zip(sides)
        .map(|(&e, side)| {
            let (hx, hp) = d.head(e).expect("crossing edge");
            let (tx, tp) = d.tail(e).expect("crossing edge");
            let (h, t) = (Port::Slot(hx, hp), Port::Slot(tx, tp));
            // with the face to the east, an edge with the face on its right
            // runs north
            match side {
                Side::Right => Ends { upper: h, lower: t },
                Side::Left => Ends { upper: t, lower: h },
            }
        })
        .collect();
    Ok(Layout {
        ends,
        crossings: d.crossing_count(),
    })
}

fn mirror_slot(p: Port, offset: usize) -> Port {
    match p {
        Port::Slot(x, s) => Port::Slot(x + offset, (4 - s) % 4),
        o => o,
    }
}

struct Assembly {
    net: Net,
    /// Slots on the D / D* side at each region corner (NW, NE, SW, SE);
    /// index 0 holds the band: `[upper, upper*, lower, lower*]`.
    corner_slots: Vec<[Port; 4]>,
    region_crossings: Vec<std::ops::Range<usize>>,
}

/// Glues `D`, `D*` and the given region contents. Region `open` (if any) is
/// left empty and its
/// four ends become open points in the order `[lower, lower*, upper, upper*]`.
fn assemble(spec: &SymUnionSpec, lay: &Layout, contents: &[Tangle], open: Option<usize>) -> Assembly {
    let d = &spec.partial;
    let c = lay.crossings;
    let mut net = d.to_net();
    for (x, cr) in d.crossings().iter().enumerate() {
        net.tags[x] = cr.edges.map(Tag::Partial);
    }
    let mut star = net.clone();
    for (x, cr) in d.crossings().iter().enumerate() {
        star.tags[x] = cr.edges.map(Tag::Mirror);
    }
    star.reflect();
    net.absorb(&star);
    let mut cut_points = Vec::new();
    let mut corner_slots = Vec::new();
    for ends in &lay.ends {
        let (u, l) = net.cut(ends.upper);
        let (us, ls) = net.cut(mirror_slot(ends.upper, c));
        cut_points.push([u, us, l, ls]);
        corner_slots.push([
            ends.upper,
            mirror_slot(ends.upper, c),
            ends.lower,
            mirror_slot(ends.lower, c),
        ]);
    }
    let [u0, u0s, l0, l0s] = cut_points[0];
    net.join(u0, u0s);
    net.join(l0, l0s);
    let mut keep = Vec::new();
    let mut region_crossings = Vec::new();
    for (i, t) in contents.iter().enumerate() {
        let [u, us, l, ls] = cut_points[i + 1];
        if open == Some(i + 1) {
            keep = vec![l, ls, u, us];
            region_crossings.push(usize::MAX..usize::MAX);
            continue;
        }
        let start = net.crossing_count();
        let mut tn = t.net.clone();
        tn.retag(Tag::Region(i + 1));
        let off = net.absorb(&tn);
        net.join(u, off + Corner::NW.index());
        net.join(l, off + Corner::SW.index());
        net.join(us, off + Corner::NE.index());
        net.join(ls, off + Corner::SE.index());
        region_crossings.push(start..net.crossing_count());
    }
    net.compact(&keep);
    Assembly {
        net,
        corner_slots,
        region_crossings,
    }
}

/// Orients the closed assembly along `D` and names every arc.
fn close(spec: &SymUnionSpec, asm: &Assembly, name_arcs: bool) -> (PlanarDiagram, Vec<Region>, [EdgeId; 2]) {
    let d = &spec.partial;
    let e0 = spec.marked_arcs[0];
    let mut seeds = Vec::new();
    let (tx, tp) = d.tail(e0).unwrap();
    seeds.push(Port::Slot(tx, tp));
    for e in 1..=d.edge_count() {
        if let Some((x, p)) = d.tail(e) {
            seeds.push(Port::Slot(x, p));
        }
    }
    let oriented = asm.net.to_diagram(&seeds);
    let k = oriented.diagram;
    let edge_at = |p: Port| match p {
        Port::Slot(x, s) => oriented.edge_at[x][s as usize],
        Port::Open(_) => unreachable!(),
    };
    let is_tail = |p: Port| match p {
        Port::Slot(x, s) => !oriented.head_at[x][s as usize],
        Port::Open(_) => false,
    };
    let band_slots = asm.corner_slots[0];
    // the band edge leaving the tail end of e0 flows from D to D*
    let (out_slot, in_slot) = if is_tail(band_slots[0]) {
        (band_slots[0], band_slots[2])
    } else {
        (band_slots[2], band_slots[0])
    };
    let band = [edge_at(out_slot), edge_at(in_slot)];
    let regions = region_data(asm, &oriented.edge_at, &oriented.head_at);
    let k = if name_arcs {
        let labels = arc_labels(spec, asm, &oriented.edge_at, &k, band);
        k.with_labels(labels)
    } else {
        k
    };
    (k, regions, band)
}

fn region_data(asm: &Assembly, edge_at: &[[EdgeId; 4]], head_at: &[[bool; 4]]) -> Vec<Region> {
    let at = |p: Port| match p {
        Port::Slot(x, s) => edge_at[x][s as usize],
        Port::Open(_) => unreachable!(),
    };
    asm.region_crossings
        .iter()
        .enumerate()
        .map(|(i, range)| {
            let slots = asm.corner_slots[i + 1];
            let flows = slots.map(|s| match s {
                Port::Slot(x, p) if !head_at[x][p as usize] => Flow::In,
                _ => Flow::Out,
            });
            Region {
                crossings: range.clone(),
                corner_edges: slots.map(at),
                flows,
            }
        })
        .collect()
}

/// Arc names: `a0`/`a1` for the band arcs, `s{i}_{k}` for arcs of region
/// `i` (k = 1..4 at the NW, NE, SW, SE corners, 5.. inside), and `x{j}` /
/// `x{j}*` for the remaining arcs of `D` and `D*`, numbered as the arcs of
/// the partial diagram.
fn arc_labels(
    spec: &SymUnionSpec,
    asm: &Assembly,
    edge_at: &[[EdgeId; 4]],
    k: &PlanarDiagram,
    band: [EdgeId; 2],
) -> BTreeMap<EdgeId, String> {
    let (d_arc, _) = arcs(&spec.partial);
    let (k_arc, n_arcs) = arcs(k);
    let m = k.edge_count() as usize;
    // per-edge role, best first
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
    enum Role {
        Band(u8),
        Corner(usize, usize),
        Inner(usize),
        Side(usize),
        Star(usize),
        None,
    }
    let mut role = vec![Role::None; m];
    let set = |e: EdgeId, r: Role, role: &mut Vec<Role>| {
        let slot = &mut role[e as usize - 1];
        if r < *slot {
            *slot = r;
        }
    };
    set(band[0], Role::Band(0), &mut role);
    set(band[1], Role::Band(1), &mut role);
    for (i, slots) in asm.corner_slots.iter().enumerate().skip(1) {
        for (c, s) in slots.iter().enumerate() {
            if let Port::Slot(x, p) = *s {
                set(edge_at[x][p as usize], Role::Corner(i, c + 1), &mut role);
            }
        }
    }
    for (x, tags) in asm.net.tags.iter().enumerate() {
        for (p, tag) in tags.iter().enumerate() {
            let e = edge_at[x][p];
            let r = match tag {
                Tag::Partial(de) => Role::Side(d_arc[*de as usize - 1]),
                Tag::Mirror(de) => Role::Star(d_arc[*de as usize - 1]),
                Tag::Region(i) => Role::Inner(*i),
                Tag::None => Role::None,
            };
            set(e, r, &mut role);
        }
    }
    let mut arc_role = vec![Role::None; n_arcs];
    for e in 0..m {
        let a = k_arc[e];
        if role[e] < arc_role[a] {
            arc_role[a] = role[e];
        }
    }
    let mut inner_count: BTreeMap<usize, usize> = BTreeMap::new();
    let names: Vec<String> = arc_role
        .iter()
        .map(|r| match *r {
            Role::Band(b) => format!("a{b}"),
            Role::Corner(i, c) => format!("s{i}_{c}"),
            Role::Inner(i) => {
                let n = inner_count.entry(i).or_insert(4);
                *n += 1;
                format!("s{i}_{n}")
            }
            Role::Side(j) => format!("x{}", j + 1),
            Role::Star(j) => format!("x{}*", j + 1),
            Role::None => "?".to_string(),
        })
        .collect();
    (1..=k.edge_count())
        .map(|e| (e, names[k_arc[e as usize - 1]].clone()))
        .collect()
}

pub fn build_symmetric_union(spec: &SymUnionSpec) -> Result<SymmetricUnion, ConstructError> {
    let lay = layout(spec)?;
    let asm = assemble(spec, &lay, &spec.tangles, None);
    let (diagram, regions, band) = close(spec, &asm, true);
    if !diagram.is_knot() {
        return Err(ConstructError::NotAKnot(format!(
            "construction produced {} components",
            diagram.component_count()
        )));
    }
    diagram.euler_check()?;
    Ok(SymmetricUnion {
        diagram,
        spec: spec.clone(),
        regions,
        band,
    })
}

impl SymmetricUnion {
    /// Generator of the partial diagram that the arcs of region `i` fold
    /// onto (region 0 is the band).
    pub fn region_arc(&self, i: usize) -> usize {
        let (d_arc, _) = arcs(&self.spec.partial);
        d_arc[self.spec.marked_arcs[i] as usize - 1]
    }

    /// Compares the orientation stated on each tangle (if any) with the
    /// flows at its corners in the built knot.
    pub fn verify_orientations(&self) -> VerificationReport {
        let mut r = VerificationReport::new("orientation");
        for (i, (t, region)) in self.spec.tangles.iter().zip(&self.regions).enumerate() {
            let Some(stated) = t.orientation() else { continue };
            r.value(&format!("T{}", i + 1), format!("{:?}", region.flows));
            if stated != region.flows {
                r.fail(format!(
                    "tangle {} states {:?} but its region has {:?}",
                    i + 1,
                    stated,
                    region.flows
                ));
            }
        }
        r.finish()
    }

    /// The diagram with region `i` (1-based) holding `r` instead of `T_i`.
    pub fn replace_tangle(&self, i: usize, r: &Tangle) -> Result<PlanarDiagram, ConstructError> {
        if i == 0 || i > self.regions.len() {
            return Err(ConstructError::UnknownRegion(i));
        }
        if let Some(flows) = r.orientation() {
            if flows != self.regions[i - 1].flows {
                return Err(ConstructError::BoundaryMismatch(i));
            }
        }
        let mut contents = self.spec.tangles.clone();
        contents[i - 1] = r.clone();
        Ok(self.assemble_with(&contents))
    }

    fn assemble_with(&self, contents: &[Tangle]) -> PlanarDiagram {
        let lay = layout(&self.spec).expect("spec validated at build");
        let asm = assemble(&self.spec, &lay, contents, None);
        close(&self.spec, &asm, false).0
    }

    /// The rest of the diagram seen from region `i`: a tangle `T_0` with
    /// `N(rotate_pi(T_i) + T_0)` equal to the built knot.
    pub fn complement(&self, i: usize) -> Result<Tangle, ConstructError> {
        if i == 0 || i > self.regions.len() {
            return Err(ConstructError::UnknownRegion(i));
        }
        let lay = layout(&self.spec).expect("spec validated at build");
        let asm = assemble(&self.spec, &lay, &self.spec.tangles, Some(i));
        Ok(Tangle::from_net(asm.net))
    }
}

/// The link obtained by putting `T(0/1)` in every tangle region.
pub fn build_all_zero_replacement(spec: &SymUnionSpec) -> Result<PlanarDiagram, ConstructError> {
    let lay = layout(spec)?;
    let zeros = vec![Tangle::zero(); spec.tangles.len()];
    let asm = assemble(spec, &lay, &zeros, None);
    Ok(close(spec, &asm, false).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    fn spec(tangles: Vec<Tangle>, marked: Vec<EdgeId>) -> SymUnionSpec {
        SymUnionSpec::new(parse_pd(TREFOIL).unwrap(), marked, tangles)
    }

    fn trefoil_marks(n: usize) -> Vec<EdgeId> {
        let s = spec(vec![], vec![1]);
        // pick arcs around one face
        let faces = s.partial.faces();
        let f = faces.iter().find(|f| f.sides.len() >= n).unwrap();
        f.sides.iter().take(n).map(|(e, _)| *e).collect()
    }

    #[test]
    fn connected_sum_case() {
        let s = spec(vec![], vec![1]);
        let k = build_symmetric_union(&s).unwrap();
        assert_eq!(k.diagram.crossing_count(), 6);
        assert!(k.diagram.is_knot());
        assert_eq!(k.diagram.writhe(), 0);
    }

    #[test]
    fn one_region() {
        let marks = trefoil_marks(2);
        let s = spec(vec![Tangle::rational(&[2, 0])], marks);
        let k = build_symmetric_union(&s).unwrap();
        assert_eq!(k.diagram.crossing_count(), 8);
        assert_eq!(k.regions.len(), 1);
        assert_eq!(k.regions[0].crossings, 6..8);
        let labels: Vec<&str> = k.diagram.labels().values().map(String::as_str).collect();
        for name in ["a0", "a1", "s1_1", "s1_2", "s1_3", "s1_4"] {
            assert!(labels.contains(&name), "{name} missing from {labels:?}");
        }
        let l0 = k.replace_tangle(1, &Tangle::zero()).unwrap();
        assert_eq!(l0.component_count(), 2);
        let sum = k.replace_tangle(1, &Tangle::infinity()).unwrap();
        assert!(sum.is_knot());
        assert_eq!(sum.crossing_count(), 6);
        assert_eq!(k.replace_tangle(2, &Tangle::zero()).unwrap_err(), ConstructError::UnknownRegion(2));
        let t0 = k.complement(1).unwrap();
        let again = k.spec.tangles[0].rotate_pi().sum(&t0).unwrap().numerator();
        assert!(again.is_isomorphic(&k.diagram));
    }

    #[test]
    fn rejects_bad_specs() {
        let marks = trefoil_marks(2);
        let s = spec(vec![Tangle::zero()], marks.clone());
        assert_eq!(build_symmetric_union(&s).unwrap_err(), ConstructError::NotEvenType(1));
        let s = spec(vec![], marks.clone());
        assert!(matches!(build_symmetric_union(&s), Err(ConstructError::BadMarkedArcs(_))));
        let s = spec(vec![Tangle::infinity()], vec![1, 1]);
        assert!(matches!(build_symmetric_union(&s), Err(ConstructError::BadMarkedArcs(_))));
        let hopf = PlanarDiagram::from_tuples(vec![[1, 3, 2, 4], [3, 1, 4, 2]], 0).unwrap();
        let s = SymUnionSpec::new(hopf, vec![1], vec![]);
        assert!(matches!(build_symmetric_union(&s), Err(ConstructError::NotAKnot(_))));
        let with_loop = Tangle::infinity().sum(&Tangle::infinity()).unwrap();
        assert!(with_loop.is_even_type());
        let s = spec(vec![with_loop], marks);
        assert_eq!(build_symmetric_union(&s).unwrap_err(), ConstructError::ClosedComponentInTangle(1));
    }

    #[test]
    fn all_zero_replacement_components() {
        let marks = trefoil_marks(3);
        let s = spec(vec![Tangle::rational(&[2, 0]), Tangle::infinity()], marks);
        let l = build_all_zero_replacement(&s).unwrap();
        assert_eq!(l.component_count(), 3);
    }
}
