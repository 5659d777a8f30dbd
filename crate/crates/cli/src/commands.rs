//! The three subcommands as functions from input text to output text and an
//! exit code, so they can be tested without spawning the binary.

use std::fmt::Write as _;
use std::time::Instant;

use serde_json::{json, Value};
use symunion::construct::{build_symmetric_union, SpecDoc, SymUnionSpec};
use symunion::diagram::{parse_pd, PlanarDiagram};
use symunion::group::{verify_epimorphism, wirtinger};
use symunion::invariant::{
    alexander_fox, alexander_region, jones_with, verify_fraction_formula, verify_lemma, verify_product_formula,
    InvariantError, JonesOptions, VerificationReport,
};
use symunion::poly::conway_from_alexander;

use crate::corpus;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Doc,
}

#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

/// A command that could not run; `code` is 2 for bad input, 3 for a
/// resource limit.
#[derive(Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        let code = match e {
            InvariantError::TooLarge { .. } | InvariantError::Cancelled => EXIT_LIMIT,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Reads a path, or the bundled fixture for `corpus:NAME`.
pub fn load(path: &str) -> Result<String, Failure> {
    if let Some(name) = path.strip_prefix("corpus:") {
        return corpus::get(name)
            .map(|f| f.source.to_string())
            .ok_or_else(|| Failure::input(format!("no fixture named {name}")));
    }
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))
}

pub fn parse_spec(text: &str) -> Result<SymUnionSpec, Failure> {
    let doc: SpecDoc = serde_json::from_str(text).map_err(|e| Failure::input(format!("spec: {e}")))?;
    SymUnionSpec::from_doc(&doc).map_err(Failure::input)
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn build(spec_text: &str, format: Format) -> Result<String, Failure> {
    let spec = parse_spec(spec_text)?;
    let k = build_symmetric_union(&spec).map_err(Failure::input)?;
    Ok(match format {
        Format::Text => format!("{}\n", k.diagram.to_pd_text()),
        Format::Doc => format!("{}\n", serde_json::to_string(&k.diagram.to_doc()).expect("serializable")),
    })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct InvariantFlags {
    pub alexander: bool,
    pub conway: bool,
    pub jones: bool,
}

impl InvariantFlags {
    fn or_all(self) -> Self {
        if self.alexander || self.conway || self.jones {
            self
        } else {
            InvariantFlags {
                alexander: true,
                conway: true,
                jones: true,
            }
        }
    }
}

pub fn invariants(pd_text: &str, flags: InvariantFlags, opts: &JonesOptions, format: Format) -> Result<Outcome, Failure> {
    let d = parse_pd(pd_text).map_err(Failure::input)?;
    let flags = flags.or_all();
    let mut fields: Vec<(&str, Value)> = vec![
        ("crossings", json!(d.crossing_count())),
        ("components", json!(d.component_count())),
    ];
    let mut code = EXIT_OK;
    let needs_delta = flags.alexander || flags.conway;
    let delta = if needs_delta { Some(alexander_region(&d)?) } else { None };
    if flags.alexander {
        let delta = delta.as_ref().unwrap();
        fields.push(("alexander", json!(delta.to_string())));
        if let Some(fox) = fox_delta(&d)? {
            fields.push(("alexander_fox", json!(fox.to_string())));
            if &fox != delta {
                code = EXIT_FAILED;
            }
        }
    }
    if flags.conway {
        let c = if d.is_knot() {
            conway_from_alexander(delta.as_ref().unwrap(), true)
                .map_err(Failure::input)?
                .to_string()
        } else {
            "unsupported for links".to_string()
        };
        fields.push(("conway", json!(c)));
    }
    if flags.jones {
        fields.push(("jones", json!(jones_with(&d, opts)?.to_string())));
    }
    let stdout = match format {
        Format::Text => fields.iter().fold(String::new(), |mut s, (k, v)| {
            let v = v.as_str().map_or_else(|| v.to_string(), str::to_string);
            let _ = writeln!(s, "{k}: {v}");
            s
        }),
        Format::Doc => pretty(&fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<serde_json::Map<_, _>>()),
    };
    Ok(Outcome { stdout, code })
}

fn fox_delta(d: &PlanarDiagram) -> Result<Option<symunion::poly::LaurentPoly>, Failure> {
    if d.crossing_count() == 0 || d.free_loop_count() > 0 {
        return Ok(None);
    }
    let w = wirtinger(d).map_err(Failure::input)?;
    Ok(Some(alexander_fox(&w)?))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyFlags {
    pub theorem1: bool,
    pub theorem2: bool,
    pub lemma: bool,
    pub fraction: bool,
    pub timing: bool,
}

/// Runs the selected checks (all of them if none is selected).
pub fn verify(spec_text: &str, flags: VerifyFlags, format: Format) -> Result<Outcome, Failure> {
    let spec = parse_spec(spec_text)?;
    let all = !(flags.theorem1 || flags.theorem2 || flags.lemma || flags.fraction);
    let su = build_symmetric_union(&spec).map_err(Failure::input)?;
    let mut reports = Vec::new();
    let timed = |f: &mut dyn FnMut() -> Result<VerificationReport, Failure>| -> Result<VerificationReport, Failure> {
        let start = Instant::now();
        let mut r = f()?;
        if flags.timing {
            r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        Ok(r)
    };
    if all || flags.theorem1 {
        reports.push(timed(&mut || Ok(verify_product_formula(&spec)?))?);
    }
    if all || flags.theorem2 {
        reports.push(timed(&mut || verify_epimorphism(&su).map_err(Failure::input))?);
    }
    if all || flags.lemma {
        reports.push(timed(&mut || Ok(verify_lemma(&spec)?))?);
    }
    if all || flags.fraction {
        for i in 1..=spec.tangles.len() {
            let t0 = su.complement(i).map_err(Failure::input)?;
            let t1 = spec.tangles[i - 1].rotate_pi();
            let mut r = timed(&mut || Ok(verify_fraction_formula(&t1, &t0)?))?;
            r.check = format!("fraction_formula[{i}]");
            reports.push(r);
        }
    }
    if spec.tangles.iter().any(|t| t.orientation().is_some()) {
        reports.push(su.verify_orientations());
    }
    let pass = reports.iter().all(|r| r.pass);
    let stdout = match format {
        Format::Text => {
            let mut s: String = reports.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(s, "overall: {}", if pass { "PASS" } else { "FAIL" });
            s
        }
        Format::Doc => pretty(&json!({ "pass": pass, "reports": reports })),
    };
    Ok(Outcome {
        stdout,
        code: if pass { EXIT_OK } else { EXIT_FAILED },
    })
}
