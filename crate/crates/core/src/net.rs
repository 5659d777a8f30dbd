//! Unoriented planar 4-valent nets with open boundary points.
//!
//! A net is the working representation behind tangles and diagram surgery.
//! Each crossing has four slots listed counterclockwise, slots 0-2 forming
//! the under strand and 1-3 the over strand. Every slot and every open point
//! is joined to exactly one other port by an edge.

use crate::diagram::{Crossing, EdgeId, PlanarDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Port {
    Slot(usize, u8),
    Open(usize),
}

/// Provenance of the half-edge attached at a port.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) enum Tag {
    #[default]
    None,
    Partial(EdgeId),
    Mirror(EdgeId),
    Region(usize),
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Net {
    pub slots: Vec<[Port; 4]>,
    pub tags: Vec<[Tag; 4]>,
    pub open: Vec<Port>,
    pub loops: usize,
}

impl Net {
    pub fn crossing_count(&self) -> usize {
        self.slots.len()
    }

    pub fn partner(&self, port: Port) -> Port {
        match port {
            Port::Slot(x, p) => self.slots[x][p as usize],
            Port::Open(i) => self.open[i],
        }
    }

    fn set_partner(&mut self, port: Port, to: Port) {
        match port {
            Port::Slot(x, p) => self.slots[x][p as usize] = to,
            Port::Open(i) => self.open[i] = to,
        }
    }

    fn link(&mut self, a: Port, b: Port) {
        self.set_partner(a, b);
        self.set_partner(b, a);
    }

    pub fn retag(&mut self, tag: Tag) {
        for t in &mut self.tags {
            *t = [tag; 4];
        }
    }

    /// Appends `other`; its crossings and open points are offset. Returns the
    /// offset applied to `other`'s open point indices.
    pub fn absorb(&mut self, other: &Net) -> usize {
        let xoff = self.slots.len();
        let ooff = self.open.len();
        let shift = |p: Port| match p {
            Port::Slot(x, s) => Port::Slot(x + xoff, s),
            Port::Open(i) => Port::Open(i + ooff),
        };
        self.slots
            .extend(other.slots.iter().map(|row| row.map(shift)));
        self.tags.extend(other.tags.iter().copied());
        self.open.extend(other.open.iter().map(|&p| shift(p)));
        self.loops += other.loops;
        ooff
    }

    /// Joins open points `a` and `b` into one edge. The open points stay
    /// allocated as dead entries until `compact`.
    pub fn join(&mut self, a: usize, b: usize) {
        let pa = self.open[a];
        let pb = self.open[b];
        if pa == Port::Open(b) {
            self.loops += 1;
        } else {
            self.link(pa, pb);
        }
        self.open[a] = Port::Open(usize::MAX);
        self.open[b] = Port::Open(usize::MAX);
    }

    /// Keeps the open points listed in `keep`, renumbered in that order.
    pub fn compact(&mut self, keep: &[usize]) {
        let mut remap = vec![usize::MAX; self.open.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let fix = |p: Port| match p {
            Port::Open(i) if i != usize::MAX => Port::Open(remap[i]),
            other => other,
        };
        for row in &mut self.slots {
            for p in row.iter_mut() {
                *p = fix(*p);
            }
        }
        let open: Vec<Port> = keep.iter().map(|&i| fix(self.open[i])).collect();
        debug_assert!(open.iter().all(|p| *p != Port::Open(usize::MAX)));
        self.open = open;
    }

    /// Cuts the edge attached at `slot`; returns `(near, far)` open points,
    /// `near` attached to `slot` and `far` to the other end.
    pub fn cut(&mut self, slot: Port) -> (usize, usize) {
        let other = self.partner(slot);
        let near = self.open.len();
        self.open.push(Port::Open(usize::MAX));
        let far = self.open.len();
        self.open.push(Port::Open(usize::MAX));
        self.link(slot, Port::Open(near));
        if other == slot {
            unreachable!("edge cannot join a slot to itself");
        }
        self.link(other, Port::Open(far));
        (near, far)
    }

    /// Planar reflection: reverses the cyclic order at every crossing.
    pub fn reflect(&mut self) {
        let sigma = |p: u8| (4 - p) % 4;
        let fix = |port: Port| match port {
            Port::Slot(x, p) => Port::Slot(x, sigma(p)),
            o => o,
        };
        for row in &mut self.slots {
            let old = *row;
            for p in 0..4u8 {
                row[sigma(p) as usize] = fix(old[p as usize]);
            }
        }
        for t in &mut self.tags {
            let old = *t;
            for p in 0..4u8 {
                t[sigma(p) as usize] = old[p as usize];
            }
        }
        for p in &mut self.open {
            *p = fix(*p);
        }
    }

    /// The open point reached by following the strand entering at open
    /// point `start`, or `None` if the net is malformed.
    pub fn trace_open(&self, start: usize) -> usize {
        let mut port = self.open[start];
        loop {
            match port {
                Port::Open(i) => return i,
                Port::Slot(x, p) => {
                    port = self.slots[x][((p + 2) % 4) as usize];
                }
            }
        }
    }

    /// Crossings not visited by any strand starting at an open point.
    pub fn closed_component_count(&self) -> usize {
        let mut seen = vec![[false; 4]; self.slots.len()];
        for start in 0..self.open.len() {
            let mut port = self.open[start];
            while let Port::Slot(x, p) = port {
                seen[x][p as usize] = true;
                let q = (p + 2) % 4;
                seen[x][q as usize] = true;
                port = self.slots[x][q as usize];
            }
        }
        let mut comps = 0;
        for x in 0..self.slots.len() {
            for p in 0..4u8 {
                if seen[x][p as usize] {
                    continue;
                }
                comps += 1;
                let (mut cx, mut cp) = (x, p);
                loop {
                    seen[cx][cp as usize] = true;
                    let q = (cp + 2) % 4;
                    seen[cx][q as usize] = true;
                    match self.slots[cx][q as usize] {
                        Port::Slot(nx, np) => {
                            if seen[nx][np as usize] {
                                break;
                            }
                            cx = nx;
                            cp = np;
                        }
                        Port::Open(_) => break,
                    }
                }
            }
        }
        comps + self.loops
    }

    /// Crossing change at every crossing (over and under strands swap).
    pub fn flip_crossings(&mut self) {
        let rot = |port: Port| match port {
            Port::Slot(x, p) => Port::Slot(x, (p + 3) % 4),
            o => o,
        };
        for row in &mut self.slots {
            let old = *row;
            for p in 0..4 {
                row[p] = rot(old[(p + 1) % 4]);
            }
        }
        for t in &mut self.tags {
            t.rotate_left(1);
        }
        for p in &mut self.open {
            *p = rot(*p);
        }
    }

    /// Orients and numbers every edge.
    ///
    /// Strands starting at open points come first, in open point order.
    /// Then `seeds` (slots whose edge is traversed leaving that slot) fix
    /// the orientation of closed components; remaining components start at
    /// their smallest slot. Edges are numbered consecutively along strands.
    pub fn number_edges(&self, seeds: &[Port]) -> Numbering {
        let n = self.slots.len();
        let mut num = Numbering {
            edge_at: vec![[0; 4]; n],
            head_at: vec![[false; 4]; n],
            open_edge: vec![0; self.open.len()],
            open_inward: vec![false; self.open.len()],
            edge_count: 0,
            starts: Vec::new(),
        };
        let mut visited = vec![[false; 4]; n];
        let mut open_done = vec![false; self.open.len()];
        let mut next_id: EdgeId = 1;
        for i in 0..self.open.len() {
            if open_done[i] {
                continue;
            }
            open_done[i] = true;
            num.open_inward[i] = true;
            num.starts.push(next_id);
            let mut port = self.open[i];
            loop {
                match port {
                    Port::Open(j) => {
                        open_done[j] = true;
                        num.open_edge[j] = next_id;
                        if j == i {
                            // an open point joined to itself cannot happen
                            unreachable!();
                        }
                        break;
                    }
                    Port::Slot(x, p) => {
                        if num.open_edge[i] == 0 {
                            num.open_edge[i] = next_id;
                        }
                        visited[x][p as usize] = true;
                        num.edge_at[x][p as usize] = next_id;
                        num.head_at[x][p as usize] = true;
                        next_id += 1;
                        let q = (p + 2) % 4;
                        visited[x][q as usize] = true;
                        num.edge_at[x][q as usize] = next_id;
                        port = self.slots[x][q as usize];
                    }
                }
            }
            if num.open_edge[i] == 0 {
                num.open_edge[i] = next_id;
            }
            next_id += 1;
        }
        let all_slots = (0..n).flat_map(|x| (0..4u8).map(move |p| Port::Slot(x, p)));
        let candidates: Vec<Port> = seeds.iter().copied().chain(all_slots).collect();
        for start in candidates {
            let Port::Slot(sx, sp) = start else { continue };
            if visited[sx][sp as usize] {
                continue;
            }
            num.starts.push(next_id);
            let (mut x, mut p) = (sx, sp);
            loop {
                visited[x][p as usize] = true;
                num.edge_at[x][p as usize] = next_id;
                let Port::Slot(nx, np) = self.slots[x][p as usize] else {
                    unreachable!("closed component reaches an open point")
                };
                visited[nx][np as usize] = true;
                num.edge_at[nx][np as usize] = next_id;
                num.head_at[nx][np as usize] = true;
                next_id += 1;
                let q = (np + 2) % 4;
                if (nx, q) == (sx, sp) {
                    break;
                }
                x = nx;
                p = q;
            }
        }
        for _ in 0..self.loops {
            num.starts.push(next_id);
            next_id += 1;
        }
        num.edge_count = next_id - 1;
        num
    }

    /// Orients and numbers a closed net.
    pub fn to_diagram(&self, seeds: &[Port]) -> Oriented {
        assert!(self.open.is_empty(), "closing a net with open points");
        let num = self.number_edges(seeds);
        let crossings = num.crossings();
        let diagram = PlanarDiagram::from_oriented(crossings, num.edge_count, num.starts);
        Oriented {
            diagram,
            edge_at: num.edge_at,
            head_at: num.head_at,
        }
    }
}

pub(crate) struct Numbering {
    pub edge_at: Vec<[EdgeId; 4]>,
    pub head_at: Vec<[bool; 4]>,
    pub open_edge: Vec<EdgeId>,
    /// Whether the strand at each open point enters the net there.
    pub open_inward: Vec<bool>,
    pub edge_count: EdgeId,
    pub starts: Vec<EdgeId>,
}

impl Numbering {
    /// PD tuples, rotated to start at the incoming under-edge.
    pub fn crossings(&self) -> Vec<Crossing> {
        (0..self.edge_at.len())
            .map(|x| {
                let rot = if self.head_at[x][0] { 0 } else { 2 };
                let e = |k: usize| self.edge_at[x][(k + rot) % 4];
                Crossing {
                    edges: [e(0), e(1), e(2), e(3)],
                    sign: if self.head_at[x][(3 + rot) % 4] { 1 } else { -1 },
                }
            })
            .collect()
    }
}

pub(crate) struct Oriented {
    pub diagram: PlanarDiagram,
    /// Edge id attached at each net slot.
    pub edge_at: Vec<[EdgeId; 4]>,
    /// Whether the edge at each net slot ends there. PD positions in
    /// `diagram` may be rotated against the slots, so use this rather than
    /// `diagram.tail`.
    pub head_at: Vec<[bool; 4]>,
}

impl PlanarDiagram {
    /// The unoriented net of this diagram, with slot `p` of crossing `x`
    /// holding the edge at PD position `p`.
    pub(crate) fn to_net(&self) -> Net {
        let n = self.crossings().len();
        let mut net = Net {
            slots: vec![[Port::Open(usize::MAX); 4]; n],
            tags: vec![[Tag::None; 4]; n],
            open: Vec::new(),
            loops: self.free_loop_count(),
        };
        for e in 1..=self.edge_count() {
            if let (Some((hx, hp)), Some((tx, tp))) = (self.head(e), self.tail(e)) {
                net.slots[hx][hp as usize] = Port::Slot(tx, tp);
                net.slots[tx][tp as usize] = Port::Slot(hx, hp);
            }
        }
        net
    }
}
