//! Wirtinger presentations, free-group words, and the folding map onto the
//! partial knot's group.

use std::fmt;

use thiserror::Error;

use crate::construct::{SymUnionSpec, SymmetricUnion};
use crate::diagram::{EdgeId, PlanarDiagram};
use crate::invariant::VerificationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("diagram has no crossings")]
    NoCrossings,
    #[error("not a symmetric-union diagram: {0}")]
    MissingMetadata(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub exp: i8,
}

impl Letter {
    pub fn new(generator: usize, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Letter { generator, exp }
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.generator, -self.exp)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        GroupWord(vec![Letter::new(g, 1)])
    }

    pub fn from_pairs(pairs: &[(usize, i8)]) -> Self {
        GroupWord(pairs.iter().map(|&(g, e)| Letter::new(g, e)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend(&mut self, other: &GroupWord) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn exponent_sum(&self) -> i64 {
        self.0.iter().map(|l| l.exp as i64).sum()
    }

    /// Single generator with exponent +1, if the word is one.
    pub fn as_generator(&self) -> Option<usize> {
        match self.0[..] {
            [Letter { generator, exp: 1 }] => Some(generator),
            _ => None,
        }
    }

    /// Substitutes `images[g]` for each generator `g`.
    pub fn apply(&self, images: &[GroupWord]) -> GroupWord {
        let mut out = GroupWord::empty();
        for l in &self.0 {
            let w = &images[l.generator];
            if l.exp > 0 {
                out.extend(w);
            } else {
                out.extend(&w.inverse());
            }
        }
        out
    }

    /// Cyclically reduced form of the freely reduced word.
    pub fn cyclic_reduce(&self) -> GroupWord {
        let mut w = free_reduce(self).0;
        while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
            w.pop();
            w.remove(0);
        }
        GroupWord(w)
    }

    /// Whether `other` equals this word up to cyclic rotation and inversion,
    /// after cyclic reduction of both.
    pub fn conjugate_match(&self, other: &GroupWord) -> bool {
        let a = self.cyclic_reduce();
        let b = other.cyclic_reduce();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let b_inv = b.inverse();
        let n = a.len();
        (0..n).any(|r| {
            (0..n).all(|i| a.0[(i + r) % n] == b.0[i]) || (0..n).all(|i| a.0[(i + r) % n] == b_inv.0[i])
        })
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a GroupWord,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.names[l.generator])?;
            if l.exp < 0 {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// Free reduction by cancelling adjacent inverse pairs.
pub fn free_reduce(w: &GroupWord) -> GroupWord {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    GroupWord(out)
}

#[derive(Clone, Debug)]
pub struct WirtingerPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<GroupWord>,
    pub meridian: usize,
    /// Crossing of each relator.
    pub crossing_index: Vec<usize>,
    /// Generator (arc) of every edge, indexed by `edge - 1`.
    pub arc_of_edge: Vec<usize>,
}

impl WirtingerPresentation {
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn arc(&self, e: EdgeId) -> usize {
        self.arc_of_edge[e as usize - 1]
    }

    /// Rank of the abelianized relator matrix over the rationals.
    pub fn abelian_rank(&self) -> usize {
        let n = self.generators.len();
        let mut rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| {
                let mut v = vec![0i64; n];
                for l in r.letters() {
                    v[l.generator] += l.exp as i64;
                }
                v
            })
            .collect();
        // fraction-free elimination on small integer rows
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
            rows.swap(rank, p);
            for i in 0..rows.len() {
                if i != rank && rows[i][col] != 0 {
                    let (a, b) = (rows[rank][col], rows[i][col]);
                    let pivot = rows[rank].clone();
                    for (x, &y) in rows[i].iter_mut().zip(&pivot) {
                        *x = *x * a - y * b;
                    }
                    let g = rows[i].iter().fold(0i64, |g, &x| gcd(g, x.abs()));
                    if g > 1 {
                        rows[i].iter_mut().for_each(|x| *x /= g);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Text export: generators, meridian, then one relator per line.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "generators: {}\nmeridian: {}\n",
            self.generators.join(" "),
            self.generators[self.meridian]
        );
        for r in &self.relators {
            s.push_str(&r.display_with(&self.generators).to_string());
            s.push('\n');
        }
        s
    }

    /// Parses a word such as `x1 x2 x3^-1` over this presentation's names.
    pub fn parse_word(&self, text: &str) -> Result<GroupWord, GroupError> {
        let mut w = GroupWord::empty();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.strip_suffix("^-1") {
                Some(n) => (n, -1),
                None => (tok, 1),
            };
            let g = self
                .generator_index(name)
                .ok_or_else(|| GroupError::UnknownGenerator(name.to_string()))?;
            w.push(Letter::new(g, exp));
        }
        Ok(w)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Arc index of every edge: arcs are numbered from 0 in order of first
/// appearance walking each component from its start edge. An arc begins on
/// the edge leaving an undercrossing.
pub fn arcs(d: &PlanarDiagram) -> (Vec<usize>, usize) {
    let mut arc = vec![usize::MAX; d.edge_count() as usize];
    let mut raw = vec![usize::MAX; d.edge_count() as usize];
    let mut raw_count = 0;
    // raw partition: walk each component from an edge that starts an arc
    for &s in d.component_starts() {
        let comp = d.component_edges(s);
        let begins = |e: EdgeId| matches!(d.tail(e), Some((_, 2)));
        let Some(k) = comp.iter().position(|&e| begins(e)) else {
            for &e in &comp {
                raw[e as usize - 1] = raw_count;
            }
            raw_count += 1;
            continue;
        };
        for i in 0..comp.len() {
            let e = comp[(k + i) % comp.len()];
            if begins(e) {
                raw_count += 1;
            }
            raw[e as usize - 1] = raw_count - 1;
        }
    }
    let mut rename = vec![usize::MAX; raw_count];
    let mut next = 0;
    for &s in d.component_starts() {
        for e in d.component_edges(s) {
            let r = raw[e as usize - 1];
            if rename[r] == usize::MAX {
                rename[r] = next;
                next += 1;
            }
            arc[e as usize - 1] = rename[r];
        }
    }
    (arc, next)
}

/// Wirtinger presentation with one generator per arc. Generator names come
/// from edge labels where present, else `x1, x2, ...` by arc order. The
/// meridian is the arc of the first component's start edge.
pub fn wirtinger(d: &PlanarDiagram) -> Result<WirtingerPresentation, GroupError> {
    if d.crossing_count() == 0 {
        return Err(GroupError::NoCrossings);
    }
    let (arc_of_edge, n) = arcs(d);
    let mut generators: Vec<Option<String>> = vec![None; n];
    for e in 1..=d.edge_count() {
        let a = arc_of_edge[e as usize - 1];
        if generators[a].is_none() {
            if let Some(l) = d.label(e) {
                generators[a] = Some(l.to_string());
            }
        }
    }
    let generators: Vec<String> = generators
        .into_iter()
        .enumerate()
        .map(|(i, g)| g.unwrap_or_else(|| format!("x{}", i + 1)))
        .collect();
    let mut relators = Vec::new();
    let mut crossing_index = Vec::new();
    for (x, c) in d.crossings().iter().enumerate() {
        let arc = |e: EdgeId| arc_of_edge[e as usize - 1];
        let (i, o, k) = (arc(c.edges[0]), arc(c.over_in()), arc(c.edges[2]));
        let eps = c.sign;
        relators.push(GroupWord::from_pairs(&[(i, 1), (o, eps), (k, -1), (o, -eps)]));
        crossing_index.push(x);
    }
    let meridian = arc_of_edge[d.component_starts()[0] as usize - 1];
    Ok(WirtingerPresentation {
        generators,
        relators,
        meridian,
        crossing_index,
        arc_of_edge,
    })
}

/// Image word of every source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    pub images: Vec<GroupWord>,
}

impl GroupMap {
    pub fn identity(n: usize) -> Self {
        GroupMap {
            images: (0..n).map(GroupWord::generator).collect(),
        }
    }

    pub fn apply(&self, w: &GroupWord) -> GroupWord {
        w.apply(&self.images)
    }
}

/// Target arc named by a construction label, given the partial-diagram
/// arc of each marked edge.
fn folded_arc(name: &str, marked_arc: &[usize]) -> Option<usize> {
    if name == "a0" || name == "a1" {
        return marked_arc.first().copied();
    }
    if let Some(rest) = name.strip_prefix('s') {
        let (i, k) = rest.split_once('_')?;
        let i: usize = i.parse().ok()?;
        k.parse::<usize>().ok()?;
        return if i == 0 { None } else { marked_arc.get(i).copied() };
    }
    let j: usize = name.strip_prefix('x')?.trim_end_matches('*').parse().ok()?;
    j.checked_sub(1)
}

/// The folding map `G(K) -> G(K^)`: `x_j` and `x_j*` go to arc `j` of the
/// partial diagram, the band arcs `a0`, `a1` to the arc of the first marked
/// edge, and every arc `s{i}_k` of region `i` to the arc of marked edge `i`.
/// `src` must carry the construction's arc labels.
pub fn build_epimorphism(
    spec: &SymUnionSpec,
    src: &WirtingerPresentation,
    khat: &WirtingerPresentation,
) -> Result<GroupMap, GroupError> {
    let marked_arc: Vec<usize> = spec.marked_arcs.iter().map(|&e| khat.arc(e)).collect();
    let images = src
        .generators
        .iter()
        .map(|name| {
            let a = folded_arc(name, &marked_arc).ok_or_else(|| GroupError::MissingMetadata(format!("arc label `{name}`")))?;
            if a >= khat.generators.len() {
                return Err(GroupError::UnknownGenerator(name.clone()));
            }
            Ok(GroupWord::generator(a))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupMap { images })
}

/// The longitude word `γ = γ_- γ_+` read from the arc labels of a built
/// symmetric union. Starting on `a0`, `γ_+` runs forward through `D*` to
/// `a1` and records `u_in^-ε z^ε` at each undercrossing (`u_in` the incoming
/// under-arc, `z` the over-arc); `γ_-` continues through `D` back to `a0` and
/// records `z^ε u_out^-ε`. Both readings are the blackboard pushoff with the
/// framing twist taken next to each undercrossing, so the word has exponent
/// sum zero.
pub fn longitude_word(d: &PlanarDiagram) -> Result<GroupWord, GroupError> {
    let find = |name: &str| {
        (1..=d.edge_count())
            .find(|&e| d.label(e) == Some(name))
            .ok_or_else(|| GroupError::MissingMetadata(format!("no arc labelled {name}")))
    };
    let p = find("a0")?;
    find("a1")?;
    let (arc_of, _) = arcs(d);
    let arc = |e: EdgeId| arc_of[e as usize - 1];
    let mut plus = GroupWord::empty();
    let mut minus = GroupWord::empty();
    let mut on_plus = true;
    let mut e = p;
    for _ in 0..d.edge_count() {
        if on_plus && d.label(e) == Some("a1") {
            on_plus = false;
        }
        let (x, pos) = d.head(e).expect("knot diagram edge");
        if pos == 0 {
            let c = &d.crossings()[x];
            let z = arc(c.over_in());
            let eps = c.sign;
            if on_plus {
                plus.push(Letter::new(arc(e), -eps));
                plus.push(Letter::new(z, eps));
            } else {
                minus.push(Letter::new(z, eps));
                minus.push(Letter::new(arc(c.edges[2]), -eps));
            }
        }
        e = d.successor(e);
    }
    debug_assert_eq!(e, p);
    minus.extend(&plus);
    Ok(minus)
}

/// Images of the source relators: each must reduce to the empty word or to
/// a target relator up to rotation and inversion.
pub fn verify_homomorphism(phi: &GroupMap, src: &WirtingerPresentation, dst: &WirtingerPresentation) -> VerificationReport {
    let mut r = VerificationReport::new("homomorphism");
    r.input("source_generators", src.generators.len());
    r.input("target_generators", dst.generators.len());
    if phi.images.len() != src.generators.len() {
        r.fail(format!(
            "map covers {} of {} source generators",
            phi.images.len(),
            src.generators.len()
        ));
        return r.finish();
    }
    let mut trivial = 0;
    let mut matched = 0;
    for (i, rel) in src.relators.iter().enumerate() {
        let img = phi.apply(rel).cyclic_reduce();
        if img.is_empty() {
            trivial += 1;
        } else if dst.relators.iter().any(|t| img.conjugate_match(t)) {
            matched += 1;
        } else {
            r.fail(format!(
                "relator {} `{}` maps to `{}`",
                i + 1,
                rel.display_with(&src.generators),
                img.display_with(&dst.generators)
            ));
        }
    }
    r.value("trivial_images", trivial);
    r.value("matched_images", matched);
    r.finish()
}

/// Whether every target generator is the image of some source generator.
pub fn verify_surjective(phi: &GroupMap, dst: &WirtingerPresentation) -> bool {
    (0..dst.generators.len()).all(|g| phi.images.iter().any(|w| w.as_generator() == Some(g)))
}

pub fn verify_longitude_trivial(phi: &GroupMap, gamma: &GroupWord) -> VerificationReport {
    let mut r = VerificationReport::new("longitude");
    let img = free_reduce(&phi.apply(gamma));
    r.value("gamma_length", gamma.len());
    r.value("gamma_exponent_sum", gamma.exponent_sum());
    r.value("image_length", img.len());
    if !img.is_empty() {
        r.fail(format!("image of the longitude has length {}", img.len()));
    }
    r.finish()
}

pub fn meridian_image(phi: &GroupMap, src: &WirtingerPresentation) -> GroupWord {
    free_reduce(&phi.images[src.meridian])
}

/// The whole second-claim certificate for a built symmetric union.
pub fn verify_epimorphism(su: &SymmetricUnion) -> Result<VerificationReport, GroupError> {
    let src = wirtinger(&su.diagram)?;
    let dst = wirtinger(&su.spec.partial)?;
    let phi = build_epimorphism(&su.spec, &src, &dst)?;
    let gamma = longitude_word(&su.diagram)?;
    let mut r = VerificationReport::new("epimorphism");
    r.input("crossings", su.diagram.crossing_count());
    r.absorb(verify_homomorphism(&phi, &src, &dst));
    if !verify_surjective(&phi, &dst) {
        r.fail("map is not onto the partial knot group".to_string());
    }
    let m = meridian_image(&phi, &src);
    r.value("meridian", src.generators[src.meridian].clone());
    r.value("meridian_image", m.display_with(&dst.generators).to_string());
    if m.as_generator().is_none() {
        r.fail("meridian does not map to a generator".to_string());
    }
    r.absorb(verify_longitude_trivial(&phi, &gamma));
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use proptest::prelude::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

    #[test]
    fn reduction_examples() {
        let w = GroupWord::from_pairs(&[(0, 1), (0, -1)]);
        assert!(free_reduce(&w).is_empty());
        let w = GroupWord::from_pairs(&[(0, 1), (1, 1), (1, -1), (0, 1)]);
        assert_eq!(free_reduce(&w), GroupWord::from_pairs(&[(0, 1), (0, 1)]));
        let w = GroupWord::from_pairs(&[(0, 1), (1, 1), (1, -1), (0, -1)]);
        assert!(free_reduce(&w).is_empty());
    }

    #[test]
    fn presentations() {
        let t = wirtinger(&parse_pd(TREFOIL).unwrap()).unwrap();
        assert_eq!(t.generators.len(), 3);
        assert_eq!(t.relators.len(), 3);
        assert_eq!(t.abelian_rank(), 2);
        assert!(t.relators.iter().all(|r| r.len() == 4 && r.exponent_sum() == 0));
        let f = wirtinger(&parse_pd(FIGURE_EIGHT).unwrap()).unwrap();
        assert_eq!(f.generators.len(), 4);
        assert_eq!(f.relators.len(), 4);
        assert_eq!(f.abelian_rank(), 3);
        assert_eq!(wirtinger(&PlanarDiagram::unknot()).unwrap_err(), GroupError::NoCrossings);
    }

    #[test]
    fn text_export_round_trip() {
        let t = wirtinger(&parse_pd(TREFOIL).unwrap()).unwrap();
        let text = t.to_text();
        assert!(text.starts_with("generators: x1 x2 x3\nmeridian: x1\n"));
        for (line, r) in text.lines().skip(2).zip(&t.relators) {
            assert_eq!(&t.parse_word(line).unwrap(), r);
        }
    }

    #[test]
    fn conjugate_matching() {
        let r = GroupWord::from_pairs(&[(0, 1), (1, 1), (2, -1), (1, -1)]);
        let rot = GroupWord::from_pairs(&[(1, 1), (2, -1), (1, -1), (0, 1)]);
        assert!(r.conjugate_match(&rot));
        assert!(r.conjugate_match(&r.inverse()));
        let other = GroupWord::from_pairs(&[(0, 1), (2, 1), (1, -1), (2, -1)]);
        assert!(!r.conjugate_match(&other));
    }

    fn word() -> impl Strategy<Value = GroupWord> {
        prop::collection::vec((0usize..3, prop::bool::ANY), 0..30).prop_map(|v| {
            GroupWord(v.into_iter().map(|(g, s)| Letter::new(g, if s { 1 } else { -1 })).collect())
        })
    }

    proptest! {
        #[test]
        fn free_reduce_is_idempotent(w in word()) {
            let r = free_reduce(&w);
            prop_assert!(r.len() <= w.len());
            prop_assert_eq!(free_reduce(&r), r.clone());
            prop_assert!(r.0.windows(2).all(|p| p[0] != p[1].inverse()));
            prop_assert_eq!(r.exponent_sum(), w.exponent_sum());
        }

        #[test]
        fn word_times_inverse_is_trivial(w in word()) {
            let mut ww = w.clone();
            ww.extend(&w.inverse());
            prop_assert!(free_reduce(&ww).is_empty());
        }
    }
}
