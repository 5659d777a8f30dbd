//! Properties of built symmetric unions over randomly generated specs:
//! both claims of the construction, the all-zero lemma, and the tangle
//! decomposition used by the fraction formula.

use proptest::prelude::*;
use symunion::construct::{build_symmetric_union, ConstructError, SymUnionSpec};
use symunion::diagram::{EdgeId, PlanarDiagram};
use symunion::group::{build_epimorphism, longitude_word, verify_epimorphism, wirtinger};
use symunion::invariant::{jones, jones_state_sum, verify_fraction_formula, verify_lemma, verify_product_formula};
use symunion::tangle::{Corner, Tangle};

fn rational_knot(terms: &[i64]) -> Option<PlanarDiagram> {
    let d = Tangle::rational(terms).numerator();
    (d.is_knot() && d.crossing_count() > 0).then_some(d)
}

fn even_tangle(terms: &[i64], rotate: bool) -> Option<Tangle> {
    let t = Tangle::rational(terms);
    let t = if rotate { t.rotate_pi() } else { t };
    (t.is_even_type() && t.crossing_count() > 0).then_some(t)
}

/// Marks `n + 1` distinct edges of one face, chosen by `seed`.
fn place(partial: PlanarDiagram, tangles: Vec<Tangle>, seed: u64) -> Option<SymUnionSpec> {
    let n = tangles.len() + 1;
    let usable: Vec<(usize, Vec<EdgeId>)> = partial
        .faces()
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
    if usable.is_empty() {
        return None;
    }
    let (f, es) = &usable[seed as usize % usable.len()];
    let start = (seed / 7) as usize;
    let marked: Vec<EdgeId> = (0..n).map(|i| es[(start + i) % es.len()]).collect();
    let mut spec = SymUnionSpec::new(partial, marked, tangles);
    spec.face = spec.candidate_faces().iter().position(|(g, _)| g == f)?;
    Some(spec)
}

fn terms(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![-2i64..=-1, 1i64..=2], 1..=max_len)
}

fn spec_strategy() -> impl Strategy<Value = Option<SymUnionSpec>> {
    (terms(3), prop::collection::vec((terms(2), any::<bool>()), 1..=3), any::<u64>()).prop_map(|(p, ts, seed)| {
        let partial = rational_knot(&p)?;
        let tangles: Vec<Tangle> = ts.iter().filter_map(|(t, r)| even_tangle(t, *r)).collect();
        if tangles.is_empty() {
            return None;
        }
        place(partial, tangles, seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn built_knots_satisfy_both_claims(spec in spec_strategy()) {
        let Some(spec) = spec else { return Ok(()) };
        let su = match build_symmetric_union(&spec) {
            Ok(su) => su,
            Err(ConstructError::NoCommonFace(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("build failed: {e}"))),
        };
        let c = su.diagram.crossing_count();
        let expected = 2 * spec.partial.crossing_count() + spec.tangles.iter().map(Tangle::crossing_count).sum::<usize>();
        prop_assert_eq!(c, expected);
        let p = verify_product_formula(&spec).unwrap();
        prop_assert!(p.pass, "{}", p);
        let l = verify_lemma(&spec).unwrap();
        prop_assert!(l.pass, "{}", l);
        // even tangles pair NW with SW, so each strand enters once and leaves once
        for r in &su.regions {
            prop_assert!(r.flows[Corner::NW.index()] != r.flows[Corner::SW.index()], "{:?}", r.flows);
            prop_assert!(r.flows[Corner::NE.index()] != r.flows[Corner::SE.index()], "{:?}", r.flows);
        }
        let e = verify_epimorphism(&su).unwrap();
        prop_assert!(e.pass, "{}", e);

        // the longitude is null-homologous, also after folding
        let gamma = longitude_word(&su.diagram).unwrap();
        prop_assert_eq!(gamma.exponent_sum(), 0);
        let src = wirtinger(&su.diagram).unwrap();
        let dst = wirtinger(&spec.partial).unwrap();
        let phi = build_epimorphism(&spec, &src, &dst).unwrap();
        let img = phi.apply(&gamma);
        for g in 0..dst.generators.len() {
            let s: i64 = img.letters().iter().filter(|l| l.generator == g).map(|l| l.exp as i64).sum();
            prop_assert_eq!(s, 0);
        }

        for i in 1..=spec.tangles.len() {
            let t0 = su.complement(i).unwrap();
            let t1 = spec.tangles[i - 1].rotate_pi();
            let closed = t1.sum(&t0).unwrap().numerator();
            prop_assert!(closed.is_isomorphic(&su.diagram) || closed.reverse().is_isomorphic(&su.diagram), "region {i}: {} vs {}", closed.to_pd_text(), su.diagram.to_pd_text());
            let f = verify_fraction_formula(&t1, &t0).unwrap();
            prop_assert!(f.pass, "{}", f);
        }
        if c <= 14 {
            prop_assert_eq!(jones(&su.diagram).unwrap(), jones_state_sum(&su.diagram).unwrap());
        }
    }

    #[test]
    fn odd_tangles_are_rejected(p in terms(3), t in terms(3), seed in any::<u64>()) {
        let Some(partial) = rational_knot(&p) else { return Ok(()) };
        let tangle = Tangle::rational(&t);
        prop_assume!(!tangle.is_even_type());
        let Some(spec) = place(partial, vec![tangle], seed) else { return Ok(()) };
        prop_assert_eq!(build_symmetric_union(&spec).unwrap_err(), ConstructError::NotEvenType(1));
    }
}
