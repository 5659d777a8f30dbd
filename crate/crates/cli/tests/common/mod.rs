//! Seeded random symmetric-union specs: a partial knot with at most six
//! crossings and one to three even-type tangles with at most four crossings
//! each, all built from rational tangles.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use symunion::construct::{build_symmetric_union, SymUnionSpec};
use symunion::diagram::{EdgeId, PlanarDiagram};
use symunion::tangle::Tangle;

fn random_terms(rng: &mut ChaCha8Rng, budget: i64) -> Vec<i64> {
    let mut left = budget;
    let mut terms = Vec::new();
    while left > 0 && (terms.is_empty() || rng.gen_bool(0.6)) {
        let a = rng.gen_range(1..=left.min(3));
        left -= a;
        terms.push(if rng.gen_bool(0.5) { a } else { -a });
    }
    terms
}

fn random_partial(rng: &mut ChaCha8Rng) -> PlanarDiagram {
    loop {
        let d = Tangle::rational(&random_terms(rng, 6)).numerator();
        if d.is_knot() && d.crossing_count() > 0 && d.crossing_count() <= 6 {
            return if rng.gen_bool(0.5) { d.mirror() } else { d };
        }
    }
}

fn random_even_tangle(rng: &mut ChaCha8Rng) -> Tangle {
    loop {
        let mut t = Tangle::rational(&random_terms(rng, 4));
        if rng.gen_bool(0.5) {
            t = t.rotate_pi();
        }
        if rng.gen_bool(0.3) {
            t = t.mirror();
        }
        if t.is_even_type() && t.crossing_count() > 0 && t.crossing_count() <= 4 {
            return t;
        }
    }
}

/// Picks a face with enough distinct edges and marks them in random order.
fn place(rng: &mut ChaCha8Rng, partial: PlanarDiagram, tangles: Vec<Tangle>) -> Option<SymUnionSpec> {
    let n = tangles.len() + 1;
    let faces = partial.faces();
    let usable: Vec<(usize, Vec<EdgeId>)> = faces
        .iter()
        .enumerate()
        .map(|(f, face)| {
            let mut es: Vec<EdgeId> = Vec::new();
            for (e, _) in &face.sides {
                if !es.contains(e) {
                    es.push(*e);
                }
            }
            (f, es)
        })
        .filter(|(_, es)| es.len() >= n)
        .collect();
    let (f, es) = usable.choose(rng)?;
    let marked: Vec<EdgeId> = es.choose_multiple(rng, n).copied().collect();
    let mut spec = SymUnionSpec::new(partial, marked, tangles);
    spec.face = spec.candidate_faces().iter().position(|(g, _)| g == f)?;
    Some(spec)
}

/// `count` specs that build, plus the number of draws that did not.
pub fn random_specs(seed: u64, count: usize) -> (Vec<SymUnionSpec>, usize) {
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut rejected = 0;
    while out.len() < count {
        let partial = random_partial(&mut rng);
        let k = rng.gen_range(1..=3);
        let tangles = (0..k).map(|_| random_even_tangle(&mut rng)).collect();
        match place(&mut rng, partial, tangles) {
            Some(spec) if build_symmetric_union(&spec).is_ok() => out.push(spec),
            _ => rejected += 1,
        }
    }
    (out, rejected)
}
