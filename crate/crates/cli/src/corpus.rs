//! Bundled fixtures: knot diagrams, the Kinoshita–Terasaka tangles and the
//! symmetric-union specs of the worked examples.
//!
//! `T_n^KT` is `vertical_twist(n) + vertical_twist(-(n - 1))`. With this
//! handedness and the marked arcs below, the built K_A, K_B and K_C
//! reproduce their published Jones polynomials without mirroring.

use symunion::construct::{SpecDoc, SymUnionSpec};
use symunion::diagram::{parse_pd, PlanarDiagram};
use symunion::tangle::{Tangle, TangleDoc};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Knot,
    Tangle,
    Spec,
}

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub kind: Kind,
    pub source: &'static str,
}

macro_rules! fixture {
    ($name:literal, $kind:ident, $file:literal) => {
        Fixture {
            name: $name,
            kind: Kind::$kind,
            source: include_str!(concat!("../fixtures/", $file)),
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("3_1", Knot, "3_1.json"),
    fixture!("4_1", Knot, "4_1.json"),
    fixture!("5_2", Knot, "5_2.json"),
    fixture!("11n42", Knot, "11n42.json"),
    fixture!("kt3", Tangle, "kt3.tangle.json"),
    fixture!("kt4", Tangle, "kt4.tangle.json"),
    fixture!("kt_11n42", Spec, "kt_11n42.spec.json"),
    fixture!("k_a", Spec, "k_a.spec.json"),
    fixture!("k_b", Spec, "k_b.spec.json"),
    fixture!("k_c", Spec, "k_c.spec.json"),
    fixture!("k_d", Spec, "k_d.spec.json"),
    fixture!("k_d_prime", Spec, "k_d_prime.spec.json"),
    fixture!("k_e", Spec, "k_e.spec.json"),
];

pub fn get(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

pub fn names(kind: Kind) -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().filter(move |f| f.kind == kind).map(|f| f.name)
}

fn source(name: &str, kind: Kind) -> &'static str {
    match get(name) {
        Some(f) if f.kind == kind => f.source,
        _ => panic!("no {kind:?} fixture named {name}"),
    }
}

/// Panics on unknown names or broken fixtures; the fixtures are tested.
pub fn knot(name: &str) -> PlanarDiagram {
    parse_pd(source(name, Kind::Knot)).expect("bundled knot fixture")
}

pub fn tangle(name: &str) -> Tangle {
    let doc: TangleDoc = serde_json::from_str(source(name, Kind::Tangle)).expect("bundled tangle fixture");
    Tangle::from_doc(&doc).expect("bundled tangle fixture")
}

pub fn spec(name: &str) -> SymUnionSpec {
    let doc: SpecDoc = serde_json::from_str(source(name, Kind::Spec)).expect("bundled spec fixture");
    SymUnionSpec::from_doc(&doc).expect("bundled spec fixture")
}
