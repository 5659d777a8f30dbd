//! Alexander polynomials (region matrix and Fox calculus) and the Jones
//! polynomial.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::{build_all_zero_replacement, build_symmetric_union, ConstructError, SymUnionSpec};
use crate::diagram::{DiagramError, EdgeId, PlanarDiagram, Side};
use crate::group::{wirtinger, GroupError, WirtingerPresentation};
use crate::poly::{conway_from_alexander, normalize_alexander, ConwayPoly, LaurentPoly, PolyError};
use crate::tangle::{Tangle, TangleError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("diagram has no crossings")]
    NoCrossings,
    #[error("state space too large: boundary width {width} exceeds {limit}")]
    TooLarge { width: usize, limit: usize },
    #[error("cancelled")]
    Cancelled,
    #[error("Jones polynomial has fractional exponents")]
    FractionalExponent,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("UnsupportedLinkCase: {0}")]
    UnsupportedLinkCase(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Tangle(#[from] TangleError),
}

/// Outcome of one verification: named inputs and computed values as text,
/// and the failed conditions. Passes iff nothing failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub pass: bool,
    pub inputs: BTreeMap<String, String>,
    pub values: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    /// Wall time, only filled in when the caller asks for it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(check: &str) -> Self {
        VerificationReport {
            check: check.to_string(),
            pass: true,
            inputs: BTreeMap::new(),
            values: BTreeMap::new(),
            failures: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn input(&mut self, key: &str, v: impl fmt::Display) {
        self.inputs.insert(key.to_string(), v.to_string());
    }

    pub fn value(&mut self, key: &str, v: impl fmt::Display) {
        self.values.insert(key.to_string(), v.to_string());
    }

    pub fn fail(&mut self, msg: String) {
        self.failures.push(msg);
        self.pass = false;
    }

    pub fn finish(mut self) -> Self {
        self.pass = self.failures.is_empty();
        self
    }

    /// Folds a sub-check into this report, prefixing its keys.
    pub fn absorb(&mut self, sub: VerificationReport) {
        for (k, v) in sub.inputs {
            self.inputs.entry(format!("{}.{k}", sub.check)).or_insert(v);
        }
        for (k, v) in sub.values {
            self.values.insert(format!("{}.{k}", sub.check), v);
        }
        for f in sub.failures {
            self.fail(format!("{}: {f}", sub.check));
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.check, if self.pass { "PASS" } else { "FAIL" })?;
        for (k, v) in &self.inputs {
            writeln!(f, "  input {k} = {v}")?;
        }
        for (k, v) in &self.values {
            writeln!(f, "  {k} = {v}")?;
        }
        for m in &self.failures {
            writeln!(f, "  failed: {m}")?;
        }
        if let Some(ms) = self.elapsed_ms {
            writeln!(f, "  elapsed_ms = {ms}")?;
        }
        Ok(())
    }
}

/// Cooperative cancellation flag shared with long-running evaluations.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }

    fn check(&self) -> Result<(), InvariantError> {
        if self.is_cancelled() {
            Err(InvariantError::Cancelled)
        } else {
            Ok(())
        }
    }
}

/// Dense polynomial in `t` with nonnegative exponents, used inside
/// determinants.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct Dense(Vec<BigInt>);

impl Dense {
    fn from_terms(terms: &[(usize, i64)]) -> Self {
        let mut v = Vec::new();
        for &(e, c) in terms {
            if v.len() <= e {
                v.resize(e + 1, BigInt::zero());
            }
            v[e] += c;
        }
        let mut d = Dense(v);
        d.trim();
        d
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, o: &Dense) -> Dense {
        if self.is_zero() || o.is_zero() {
            return Dense::default();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        let mut d = Dense(v);
        d.trim();
        d
    }

    fn sub(&self, o: &Dense) -> Dense {
        let n = self.0.len().max(o.0.len());
        let mut v = self.0.clone();
        v.resize(n, BigInt::zero());
        for (i, b) in o.0.iter().enumerate() {
            v[i] -= b;
        }
        let mut d = Dense(v);
        d.trim();
        d
    }

    fn neg(&self) -> Dense {
        Dense(self.0.iter().map(|c| -c).collect())
    }

    /// Exact division; panics if `o` does not divide `self`.
    fn div_exact(&self, o: &Dense) -> Dense {
        if self.is_zero() {
            return Dense::default();
        }
        let mut rem = self.0.clone();
        let dl = o.0.len();
        assert!(rem.len() >= dl, "inexact polynomial division");
        let lead = o.0.last().unwrap();
        let mut q = vec![BigInt::zero(); rem.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dl - 1];
            if c.is_zero() {
                continue;
            }
            let (qk, r) = (c / lead, c % lead);
            assert!(r.is_zero(), "inexact polynomial division");
            for (j, b) in o.0.iter().enumerate() {
                rem[k + j] -= &qk * b;
            }
            q[k] = qk;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        let mut d = Dense(q);
        d.trim();
        d
    }

    fn to_laurent(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in self.0.iter().enumerate() {
            p.add_term(e as i64, c.clone());
        }
        p
    }
}

/// Fraction-free Gaussian elimination (Bareiss).
fn determinant(mut m: Vec<Vec<Dense>>, cancel: &CancelToken) -> Result<Dense, InvariantError> {
    let n = m.len();
    if n == 0 {
        return Ok(Dense(vec![BigInt::one()]));
    }
    let mut negate = false;
    let mut prev = Dense(vec![BigInt::one()]);
    for k in 0..n {
        cancel.check()?;
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(Dense::default());
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
            m[i][k] = Dense::default();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Crossing-by-region matrix with entries in `{t, -t, 1, -1}` at the four
/// corners of each crossing.
#[derive(Clone, Debug)]
pub struct RegionMatrix {
    /// `rows[x]` lists `(face, coefficient of 1, coefficient of t)`.
    entries: Vec<Vec<(usize, i64, i64)>>,
    pub face_count: usize,
}

/// Corner labels `(constant, t)` for the corners following PD positions
/// 0..3 counterclockwise. Walking along the under-strand, the corners on the
/// right carry `t` (behind) and `-t` (ahead); those on the left carry `1`
/// (ahead) and `-1` (behind).
const CORNER_LABELS: [(i64, i64); 4] = [(0, 1), (0, -1), (1, 0), (-1, 0)];

impl RegionMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    /// Entry at `(crossing, face)` as a Laurent polynomial.
    pub fn entry(&self, x: usize, face: usize) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &(f, c0, c1) in &self.entries[x] {
            if f == face {
                p.add_term(0, c0.into());
                p.add_term(1, c1.into());
            }
        }
        p
    }

    fn dense_minor(&self, drop: [usize; 2]) -> Vec<Vec<Dense>> {
        let cols: Vec<usize> = (0..self.face_count).filter(|f| !drop.contains(f)).collect();
        let mut index = vec![usize::MAX; self.face_count];
        for (i, &f) in cols.iter().enumerate() {
            index[f] = i;
        }
        self.entries
            .iter()
            .map(|row| {
                let mut terms: Vec<Vec<(usize, i64)>> = vec![Vec::new(); cols.len()];
                for &(f, c0, c1) in row {
                    if index[f] != usize::MAX {
                        terms[index[f]].push((0, c0));
                        terms[index[f]].push((1, c1));
                    }
                }
                terms.iter().map(|t| Dense::from_terms(t)).collect()
            })
            .collect()
    }

    /// Determinant after deleting the columns of two faces.
    pub fn reduced_determinant(&self, drop: [usize; 2], cancel: &CancelToken) -> Result<LaurentPoly, InvariantError> {
        Ok(determinant(self.dense_minor(drop), cancel)?.to_laurent())
    }
}

pub fn region_matrix(d: &PlanarDiagram) -> Result<RegionMatrix, InvariantError> {
    if d.crossing_count() == 0 {
        return Err(InvariantError::NoCrossings);
    }
    let fm = d.face_map();
    let entries = fm
        .corners
        .iter()
        .map(|corners| {
            (0..4)
                .map(|k| (corners[k], CORNER_LABELS[k].0, CORNER_LABELS[k].1))
                .collect()
        })
        .collect();
    Ok(RegionMatrix {
        entries,
        face_count: fm.faces.len(),
    })
}

/// The two faces on either side of edge `e`.
pub fn faces_beside(d: &PlanarDiagram, e: EdgeId) -> [usize; 2] {
    let fm = d.face_map();
    let find = |s: Side| fm.faces.iter().position(|f| f.contains(e, s)).unwrap();
    [find(Side::Left), find(Side::Right)]
}

/// Split diagrams (free loops or a disconnected crossing graph) have
/// vanishing Alexander polynomial.
fn is_split(d: &PlanarDiagram) -> bool {
    d.free_loop_count() > 0 && (d.crossing_count() > 0 || d.free_loop_count() > 1)
        || d.crossing_graph_components() > 1
}

pub fn alexander_region(d: &PlanarDiagram) -> Result<LaurentPoly, InvariantError> {
    alexander_region_with(d, 1, &CancelToken::new())
}

/// Region-matrix Alexander polynomial, deleting the faces beside `edge`.
pub fn alexander_region_with(d: &PlanarDiagram, edge: EdgeId, cancel: &CancelToken) -> Result<LaurentPoly, InvariantError> {
    if d.crossing_count() == 0 {
        return Ok(if d.free_loop_count() == 1 {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        });
    }
    if is_split(d) {
        return Ok(LaurentPoly::zero());
    }
    let m = region_matrix(d)?;
    let det = m.reduced_determinant(faces_beside(d, edge), cancel)?;
    Ok(normalize(&det, d.is_knot())?)
}

fn normalize(p: &LaurentPoly, knot: bool) -> Result<LaurentPoly, PolyError> {
    if knot {
        normalize_alexander(p)
    } else {
        // links: strip the unit without the |p(1)| = 1 requirement
        match normalize_alexander(p) {
            Ok(q) => Ok(q),
            Err(PolyError::NotNormalizable(_)) => {
                let low = p.min_exp().unwrap_or(0);
                let q = p.shift(-low);
                let lead = q.coeff(0);
                Ok(if lead < BigInt::zero() { -q } else { q })
            }
            Err(e) => Err(e),
        }
    }
}

/// Alexander polynomial from the abelianized Fox Jacobian, deleting the
/// last relator and the column of the meridian.
pub fn alexander_fox(w: &WirtingerPresentation) -> Result<LaurentPoly, InvariantError> {
    alexander_fox_with(w, &CancelToken::new())
}

pub fn alexander_fox_with(w: &WirtingerPresentation, cancel: &CancelToken) -> Result<LaurentPoly, InvariantError> {
    let n = w.generators.len();
    let components = n - w.abelian_rank();
    if w.relators.is_empty() {
        return Err(InvariantError::NoCrossings);
    }
    let mut rows: Vec<Vec<Vec<(usize, i64)>>> = Vec::new();
    for r in &w.relators {
        let l = r.letters();
        let (i, o, k, eps) = (l[0].generator, l[1].generator, l[2].generator, l[1].exp);
        let mut row = vec![Vec::new(); n];
        if eps > 0 {
            row[i].push((0, 1));
            row[o].extend([(1, 1), (0, -1)]);
            row[k].push((1, -1));
        } else {
            row[i].push((1, 1));
            row[o].extend([(0, 1), (1, -1)]);
            row[k].push((0, -1));
        }
        rows.push(row);
    }
    let keep_cols: Vec<usize> = (0..n).filter(|&g| g != w.meridian).collect();
    let m: Vec<Vec<Dense>> = rows[..rows.len() - 1]
        .iter()
        .map(|row| keep_cols.iter().map(|&g| Dense::from_terms(&row[g])).collect())
        .collect();
    // A knot diagram gives a square minor; other counts only arise for links
    // whose relators are fewer than generators, never in practice.
    let det = if m.len() == keep_cols.len() {
        determinant(m, cancel)?
    } else {
        Dense::default()
    };
    Ok(normalize(&det.to_laurent(), components == 1)?)
}

/// Polynomial in `A` with small integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct APoly {
    low: i64,
    c: Vec<i128>,
}

impl APoly {
    fn monomial(e: i64) -> Self {
        APoly { low: e, c: vec![1] }
    }

    fn add_shifted(&mut self, o: &APoly, shift: i64, scale: i128) {
        if o.c.is_empty() {
            return;
        }
        let olow = o.low + shift;
        if self.c.is_empty() {
            self.low = olow;
        }
        let lo = self.low.min(olow);
        let hi = (self.low + self.c.len() as i64).max(olow + o.c.len() as i64);
        if lo < self.low {
            let mut v = vec![0; (self.low - lo) as usize];
            v.extend_from_slice(&self.c);
            self.c = v;
            self.low = lo;
        }
        self.c.resize((hi - self.low) as usize, 0);
        for (i, x) in o.c.iter().enumerate() {
            self.c[(olow - self.low) as usize + i] += scale * x;
        }
    }

    /// Multiplies by `d^k` with `d = -A^2 - A^-2`.
    fn times_loop_power(&self, k: usize) -> APoly {
        let mut p = self.clone();
        for _ in 0..k {
            let mut q = APoly::default();
            q.add_shifted(&p, 2, -1);
            q.add_shifted(&p, -2, -1);
            p = q;
        }
        p
    }

    fn to_laurent(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (i, x) in self.c.iter().enumerate() {
            p.add_term(self.low + i as i64, BigInt::from(*x));
        }
        p
    }
}

/// Options for the Jones evaluator.
#[derive(Clone, Debug)]
pub struct JonesOptions {
    /// Largest allowed number of open boundary points.
    pub max_width: usize,
    pub cancel: CancelToken,
}

impl Default for JonesOptions {
    fn default() -> Self {
        JonesOptions {
            max_width: 16,
            cancel: CancelToken::new(),
        }
    }
}

/// Kauffman bracket via a boundary state space: crossings are added one at a
/// time and each state records how the open edge ends are paired.
fn bracket(d: &PlanarDiagram, opts: &JonesOptions) -> Result<APoly, InvariantError> {
    let cs = d.crossings();
    let n = cs.len();
    let order = crossing_order(d);
    // boundary edges, in insertion order; states key on partner positions
    let mut boundary: Vec<EdgeId> = Vec::new();
    let mut states: HashMap<Vec<u8>, APoly> = HashMap::new();
    states.insert(Vec::new(), APoly::monomial(0));
    let mut done = vec![false; n];
    for &x in &order {
        opts.cancel.check()?;
        done[x] = true;
        let edges = cs[x].edges;
        // classify each position: closing an open end, new end, or kink
        let pos_in_boundary: Vec<Option<usize>> =
            edges.iter().map(|e| boundary.iter().position(|b| b == e)).collect();
        let mut new_boundary: Vec<EdgeId> = boundary
            .iter()
            .copied()
            .filter(|e| !edges.contains(e))
            .collect();
        for (p, &e) in edges.iter().enumerate() {
            let twice = edges.iter().filter(|&&f| f == e).count() == 2;
            if pos_in_boundary[p].is_none() && !twice && !new_boundary.contains(&e) {
                new_boundary.push(e);
            }
        }
        if new_boundary.len() > opts.max_width {
            return Err(InvariantError::TooLarge {
                width: new_boundary.len(),
                limit: opts.max_width,
            });
        }
        let mut next: HashMap<Vec<u8>, APoly> = HashMap::new();
        for (key, poly) in &states {
            for (smoothing, aexp) in [([(0usize, 1usize), (2, 3)], 1i64), ([(0, 3), (1, 2)], -1)] {
                let (new_key, loops) = merge(&boundary, key, &edges, &smoothing, &new_boundary);
                let contrib = poly.times_loop_power(loops);
                next.entry(new_key)
                    .or_default()
                    .add_shifted(&contrib, aexp, 1);
            }
        }
        next.retain(|_, p| p.c.iter().any(|&c| c != 0));
        states = next;
        boundary = new_boundary;
    }
    debug_assert!(boundary.is_empty());
    let total = states.remove(&Vec::<u8>::new()).unwrap_or_default();
    // every closed loop contributed a factor d; the normalization asks for
    // one fewer
    let total = total.times_loop_power(d.free_loop_count());
    let dpoly = APoly {
        low: -2,
        c: vec![-1, 0, 0, 0, -1],
    };
    let q = total
        .to_laurent()
        .div_exact(&dpoly.to_laurent())
        .expect("bracket divisible by the loop value");
    let mut out = APoly::default();
    for (e, c) in q.terms() {
        out.add_shifted(&APoly::monomial(e), 0, i128::try_from(c).expect("bracket coefficient fits"));
    }
    Ok(out)
}

/// Combines a boundary pairing with one smoothing of a crossing.
/// Returns the pairing of the new boundary and the number of closed loops.
fn merge(
    boundary: &[EdgeId],
    key: &[u8],
    edges: &[EdgeId; 4],
    smoothing: &[(usize, usize); 2],
    new_boundary: &[EdgeId],
) -> (Vec<u8>, usize) {
    // vertices: old boundary positions 0..b, then crossing positions b..b+4
    let b = boundary.len();
    let mut adj: Vec<[usize; 2]> = vec![[usize::MAX; 2]; b + 4];
    let add = |adj: &mut Vec<[usize; 2]>, u: usize, v: usize| {
        let slot = if adj[u][0] == usize::MAX { 0 } else { 1 };
        adj[u][slot] = v;
        let slot = if adj[v][0] == usize::MAX { 0 } else { 1 };
        adj[v][slot] = u;
    };
    for (i, &j) in key.iter().enumerate().take(b) {
        let j = j as usize;
        if i < j {
            add(&mut adj, i, j);
        }
    }
    for &(p, q) in smoothing {
        add(&mut adj, b + p, b + q);
    }
    // identify crossing positions with the same edge (closing or kink)
    for p in 0..4 {
        if let Some(i) = boundary.iter().position(|&e| e == edges[p]) {
            add(&mut adj, b + p, i);
        }
        for q in p + 1..4 {
            if edges[p] == edges[q] && !boundary.contains(&edges[p]) {
                add(&mut adj, b + p, b + q);
            }
        }
    }
    // endpoint vertex of each new boundary edge
    let end_vertex: Vec<usize> = new_boundary
        .iter()
        .map(|e| match boundary.iter().position(|b| b == e) {
            Some(i) => i,
            None => b + edges.iter().position(|f| f == e).unwrap(),
        })
        .collect();
    let mut seen = vec![false; b + 4];
    let mut key_out = vec![0u8; new_boundary.len()];
    let mut vertex_to_slot = vec![usize::MAX; b + 4];
    for (s, &v) in end_vertex.iter().enumerate() {
        vertex_to_slot[v] = s;
    }
    for (s, &v) in end_vertex.iter().enumerate() {
        if seen[v] {
            continue;
        }
        // walk the path from v to the other end
        let (mut prev, mut cur) = (usize::MAX, v);
        loop {
            seen[cur] = true;
            let nxt = if adj[cur][0] != prev && adj[cur][0] != usize::MAX {
                adj[cur][0]
            } else {
                adj[cur][1]
            };
            if nxt == usize::MAX {
                break;
            }
            prev = cur;
            cur = nxt;
            if vertex_to_slot[cur] != usize::MAX {
                seen[cur] = true;
                break;
            }
        }
        let t = vertex_to_slot[cur];
        key_out[s] = t as u8;
        key_out[t] = s as u8;
    }
    // remaining unseen vertices lie on closed loops
    let mut loops = 0;
    for v in 0..b + 4 {
        if seen[v] || adj[v][0] == usize::MAX {
            continue;
        }
        loops += 1;
        let (mut prev, mut cur) = (usize::MAX, v);
        while !seen[cur] {
            seen[cur] = true;
            let nxt = if adj[cur][0] != prev { adj[cur][0] } else { adj[cur][1] };
            prev = cur;
            cur = nxt;
        }
    }
    (key_out, loops)
}

/// Greedy order: start at crossing 0, then repeatedly take the crossing
/// sharing the most edges with those already placed.
fn crossing_order(d: &PlanarDiagram) -> Vec<usize> {
    let cs = d.crossings();
    let n = cs.len();
    let mut placed = vec![false; n];
    let mut open: HashMap<EdgeId, usize> = HashMap::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let score = |x: usize| -> (i64, i64) {
            let shared = cs[x].edges.iter().filter(|e| open.contains_key(e)).count() as i64;
            (shared, -(x as i64))
        };
        let x = (0..n).filter(|&x| !placed[x]).max_by_key(|&x| score(x)).unwrap();
        placed[x] = true;
        order.push(x);
        for &e in &cs[x].edges {
            *open.entry(e).or_default() += 1;
            if open[&e] == 2 {
                open.remove(&e);
            }
        }
    }
    order
}

/// Jones polynomial `V(t)` from the Kauffman bracket with `A = t^(-1/4)`.
pub fn jones(d: &PlanarDiagram) -> Result<LaurentPoly, InvariantError> {
    jones_with(d, &JonesOptions::default())
}

pub fn jones_with(d: &PlanarDiagram, opts: &JonesOptions) -> Result<LaurentPoly, InvariantError> {
    let br = if d.crossing_count() == 0 {
        APoly::monomial(0).times_loop_power(d.free_loop_count().saturating_sub(1))
    } else {
        bracket(d, opts)?
    };
    bracket_to_jones(&br, d.writhe())
}

fn bracket_to_jones(br: &APoly, writhe: i64) -> Result<LaurentPoly, InvariantError> {
    // (-A^3)^(-w)
    let sign: i128 = if writhe % 2 == 0 { 1 } else { -1 };
    let mut f = APoly::default();
    f.add_shifted(br, -3 * writhe, sign);
    let mut v = LaurentPoly::zero();
    for (i, c) in f.c.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let e = f.low + i as i64;
        if e % 4 != 0 {
            return Err(InvariantError::FractionalExponent);
        }
        v.add_term(-e / 4, BigInt::from(*c));
    }
    Ok(v)
}

/// Plain state sum over all `2^c` smoothings.
pub fn jones_state_sum(d: &PlanarDiagram) -> Result<LaurentPoly, InvariantError> {
    let cs = d.crossings();
    let n = cs.len();
    if n > 20 {
        return Err(InvariantError::TooLarge { width: n, limit: 20 });
    }
    let m = d.edge_count() as usize;
    let mut total = APoly::default();
    for mask in 0u32..(1u32 << n) {
        // union-find over edge ends: each crossing joins pairs of edges
        let mut parent: Vec<usize> = (0..=m).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut aexp = 0i64;
        for (x, c) in cs.iter().enumerate() {
            let a_smoothing = mask & (1 << x) == 0;
            let pairs = if a_smoothing { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
            aexp += if a_smoothing { 1 } else { -1 };
            for (p, q) in pairs {
                let (u, v) = (find(&mut parent, c.edges[p] as usize), find(&mut parent, c.edges[q] as usize));
                parent[u] = v;
            }
        }
        let loops = (1..=m).filter(|&e| find(&mut parent, e) == e).count();
        total.add_shifted(&APoly::monomial(0).times_loop_power(loops - 1), aexp, 1);
    }
    bracket_to_jones(&total, d.writhe())
}

/// Region-matrix Alexander polynomial, cross-checked against Fox calculus
/// when the diagram has crossings. A disagreement is recorded in `r`.
fn alexander_checked(d: &PlanarDiagram, name: &str, r: &mut VerificationReport) -> Result<LaurentPoly, InvariantError> {
    let region = alexander_region(d)?;
    if d.crossing_count() > 0 && d.free_loop_count() == 0 {
        let fox = alexander_fox(&wirtinger(d)?)?;
        if fox != region {
            r.fail(format!("{name}: region matrix gives {region}, Fox calculus gives {fox}"));
        }
    }
    Ok(region)
}

/// Builds `K` from `spec` and compares `Δ_K` with
/// `Δ_N(T_1) ... Δ_N(T_n) · Δ_D^2`. Both Alexander methods are run on every
/// diagram involved.
pub fn verify_product_formula(spec: &SymUnionSpec) -> Result<VerificationReport, InvariantError> {
    let k = build_symmetric_union(spec)?;
    let mut r = VerificationReport::new("product_formula");
    r.input("crossings", k.diagram.crossing_count());
    r.input("regions", spec.tangles.len());
    let dk = alexander_checked(&k.diagram, "K", &mut r)?;
    let dhat = alexander_checked(&spec.partial, "partial", &mut r)?;
    r.value("delta_K", &dk);
    r.value("delta_partial", &dhat);
    let mut product = &dhat * &dhat;
    for (i, t) in spec.tangles.iter().enumerate() {
        let name = format!("delta_N(T{})", i + 1);
        let n = alexander_checked(&t.numerator(), &name, &mut r)?;
        r.value(&name, &n);
        product = &product * &n;
    }
    let product = normalize_alexander(&product)?;
    r.value("product", &product);
    if product != dk {
        r.fail(format!("Δ_K = {dk} but the product is {product}"));
    }
    Ok(r.finish())
}

/// With `T(0/1)` in every region the diagram is a link with `Δ = 0`.
pub fn verify_lemma(spec: &SymUnionSpec) -> Result<VerificationReport, InvariantError> {
    let l = build_all_zero_replacement(spec)?;
    let mut r = VerificationReport::new("lemma");
    r.input("crossings", l.crossing_count());
    r.value("components", l.component_count());
    let delta = alexander_region(&l)?;
    r.value("delta", &delta);
    if !delta.is_zero() {
        r.fail(format!("all-zero replacement has Δ = {delta}"));
    }
    Ok(r.finish())
}

/// Conway polynomial of a closure, or `None` for a link with nonzero
/// Alexander polynomial (outside what the conversion supports).
fn closure_conway(d: &PlanarDiagram) -> Result<Option<ConwayPoly>, InvariantError> {
    let delta = alexander_region(d)?;
    if d.is_knot() {
        return Ok(Some(conway_from_alexander(&delta, true)?));
    }
    Ok(delta.is_zero().then(ConwayPoly::zero))
}

fn conway_term(a: &Option<ConwayPoly>, b: &Option<ConwayPoly>, what: &str) -> Result<ConwayPoly, InvariantError> {
    match (a, b) {
        (Some(x), Some(y)) => Ok(x * y),
        (Some(x), None) | (None, Some(x)) if x.is_zero() => Ok(ConwayPoly::zero()),
        _ => Err(InvariantError::UnsupportedLinkCase(format!(
            "{what}: a link closure with nonzero Alexander polynomial"
        ))),
    }
}

fn show(c: &Option<ConwayPoly>) -> String {
    c.as_ref().map_or_else(|| "link".to_string(), ConwayPoly::to_string)
}

/// Checks `∇_N(T1+T0) = ∇_N(T1) ∇_D(T0) + ∇_D(T1) ∇_N(T0)` through the
/// Alexander polynomials of the five closures.
pub fn verify_fraction_formula(t1: &Tangle, t0: &Tangle) -> Result<VerificationReport, InvariantError> {
    let sum = t1.sum(t0)?;
    let mut r = VerificationReport::new("fraction_formula");
    r.input("T1_crossings", t1.crossing_count());
    r.input("T0_crossings", t0.crossing_count());
    let lhs = closure_conway(&sum.numerator())?;
    let n1 = closure_conway(&t1.numerator())?;
    let d1 = closure_conway(&t1.denominator())?;
    let n0 = closure_conway(&t0.numerator())?;
    let d0 = closure_conway(&t0.denominator())?;
    for (k, v) in [("N(T1+T0)", &lhs), ("N(T1)", &n1), ("D(T1)", &d1), ("N(T0)", &n0), ("D(T0)", &d0)] {
        r.value(&format!("conway_{k}"), show(v));
    }
    let lhs = lhs.ok_or_else(|| InvariantError::UnsupportedLinkCase("N(T1+T0)".to_string()))?;
    let rhs = &conway_term(&n1, &d0, "N(T1) D(T0)")? + &conway_term(&d1, &n0, "D(T1) N(T0)")?;
    r.value("rhs", &rhs);
    if lhs != rhs {
        r.fail(format!("left side {lhs}, right side {rhs}"));
    }
    Ok(r.finish())
}
