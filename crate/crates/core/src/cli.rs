//! Request dispatch for the command-line front end.
//!
//! `run` is pure apart from reading the input path; writing `--out` and
//! `--svg` is the caller's job, so reports stay byte-identical across runs.

use std::fmt;
use std::io::Read;

use serde_json::{json, Value};

use crate::bilinfrac::{classify, classify_with, topview_map, verify_witness, BilinError, Classification};
use crate::codec::{self, CodecError, SurfaceDoc};
use crate::polyring::{Axis, PolyError, RPoly};
use crate::projgeom::GeomError;
use crate::rng::{InstanceRng, DEFAULT_SEED};
use crate::scalar::rat;
use crate::selftest::{selftest, Scale};
use crate::surface::{
    classify_isocurve, compose_pythagorean, compose_tparam, decompose_tparam, isocurve_sample, normalize_for_parabolas,
    CurveKind, CylinderTuple, Isoparametric, SurfaceError,
};
use crate::topview::svg::{render, Scene};
use crate::topview::{
    dual_conic_param1, envelope_cyclic, family_product, family_sum, top2_pipeline, CircleFamily,
    SumEnvelope, TopviewError,
};

/// Members drawn per family in SVG output.
const SVG_MEMBERS: usize = 12;
/// Pole-free sample pairs used by `verify` on a map.
const VERIFY_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Construct,
    Lift,
    Decompose,
    Normalize,
    ClassifyMap,
    DualConic,
    Topview,
    Envelope,
    Verify,
    RenderSvg,
    Selftest,
}

impl Command {
    pub const ALL: [Command; 11] = [
        Command::Construct,
        Command::Lift,
        Command::Decompose,
        Command::Normalize,
        Command::ClassifyMap,
        Command::DualConic,
        Command::Topview,
        Command::Envelope,
        Command::Verify,
        Command::RenderSvg,
        Command::Selftest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Construct => "construct",
            Command::Lift => "lift",
            Command::Decompose => "decompose",
            Command::Normalize => "normalize",
            Command::ClassifyMap => "classify-map",
            Command::DualConic => "dual-conic",
            Command::Topview => "topview",
            Command::Envelope => "envelope",
            Command::Verify => "verify",
            Command::RenderSvg => "render-svg",
            Command::Selftest => "selftest",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Request {
    pub command: Command,
    /// A path, `-` for stdin, or inline JSON. For `selftest`, the scale.
    pub input: Option<String>,
    pub mode: Mode,
    pub tol: f64,
    pub seed: u64,
}

impl Request {
    pub fn new(command: Command, input: Option<String>) -> Self {
        Self { command, input, mode: Mode::Exact, tol: 1e-9, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Malformed request or input; exit code 2.
    Parse { tag: String, message: String },
    /// The input is well-formed but the operation is undefined on it; exit code 1.
    Domain { tag: String, message: String },
}

impl Failure {
    fn parse(tag: &str, message: impl fmt::Display) -> Self {
        Failure::Parse { tag: tag.to_string(), message: message.to_string() }
    }

    fn domain(tag: &str, message: impl fmt::Display) -> Self {
        Failure::Domain { tag: tag.to_string(), message: message.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse { .. } => 2,
            Failure::Domain { .. } => 1,
        }
    }

    pub fn tag(&self) -> &str {
        match self {
            Failure::Parse { tag, .. } | Failure::Domain { tag, .. } => tag,
        }
    }
}

impl From<CodecError> for Failure {
    fn from(e: CodecError) -> Self {
        Failure::parse(e.tag(), e)
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::domain(e.tag(), e)
            }
        }
    )*};
}
domain_from!(SurfaceError, BilinError, TopviewError, PolyError);

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        let tag = match e {
            GeomError::ZeroPoint => "projgeom.zero_point",
            GeomError::OnProjectionLine => "projgeom.on_projection_line",
            GeomError::NotOnCylinder => "projgeom.not_on_cylinder",
        };
        Failure::domain(tag, e)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: Command,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    pub failure: Option<Failure>,
    /// SVG text, written by the caller to `--svg`.
    pub svg: Option<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }

    pub fn exit_code(&self) -> i32 {
        self.failure.as_ref().map_or(0, Failure::exit_code)
    }

    pub fn to_json(&self) -> Value {
        let error = match &self.failure {
            None => Value::Null,
            Some(Failure::Parse { tag, message } | Failure::Domain { tag, message }) => {
                json!({"tag": tag, "message": message})
            }
        };
        json!({
            "command": self.command.name(),
            "status": if self.ok() { "ok" } else { "error" },
            "payload": self.payload,
            "diagnostics": self.diagnostics,
            "error": error,
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        s.push('\n');
        s
    }
}

struct Out {
    payload: Value,
    diagnostics: Vec<String>,
    svg: Option<String>,
}

impl Out {
    fn new(payload: Value) -> Self {
        Self { payload, diagnostics: Vec::new(), svg: None }
    }
}

fn read_input(input: Option<&str>) -> Result<Value, Failure> {
    let text = match input {
        None => return Err(Failure::parse("cli.usage", "missing input (path, '-' or inline JSON)")),
        Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::parse("cli.io", e))?;
            s
        }
        Some(s) if s.trim_start().starts_with(['{', '[']) => s.to_string(),
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::parse("cli.io", format!("{path}: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| Failure::parse("codec.json", e))
}

pub fn run(req: &Request) -> Report {
    let result = validate(req).and_then(|()| match req.command {
        Command::Selftest => cmd_selftest(req),
        _ => plain(read_input(req.input.as_deref())).and_then(|v| dispatch(req, &v)),
    });
    report(req.command, result)
}

/// Runs a request on an already-parsed input document.
pub fn run_value(req: &Request, input: &Value) -> Report {
    let result = validate(req).and_then(|()| match req.command {
        Command::Selftest => cmd_selftest(req),
        _ => dispatch(req, input),
    });
    report(req.command, result)
}

fn report(command: Command, result: CmdResult) -> Report {
    match result {
        Ok(out) => Report { command, payload: out.payload, diagnostics: out.diagnostics, failure: None, svg: out.svg },
        Err((failure, out)) => Report { command, payload: out.payload, diagnostics: out.diagnostics, failure: Some(failure), svg: None },
    }
}

/// Failures keep whatever payload and diagnostics were produced.
type CmdResult = Result<Out, (Failure, Out)>;

fn validate(req: &Request) -> Result<(), (Failure, Out)> {
    if !(req.tol.is_finite() && req.tol > 0.0) {
        return plain(Err(Failure::parse("cli.usage", format!("--tol must be a positive real, got {}", req.tol))));
    }
    Ok(())
}

fn plain<T>(r: Result<T, Failure>) -> Result<T, (Failure, Out)> {
    r.map_err(|f| (f, Out::new(Value::Null)))
}

fn dispatch(req: &Request, v: &Value) -> CmdResult {
    let mut out = match req.command {
        Command::Construct => plain(cmd_construct(v)),
        Command::Lift => plain(cmd_lift(v)),
        Command::Decompose => plain(cmd_decompose(v)),
        Command::Normalize => plain(cmd_normalize(v)),
        Command::ClassifyMap => plain(cmd_classify(req, v)),
        Command::DualConic => plain(cmd_dual(v)),
        Command::Topview => cmd_topview(req, v),
        Command::Envelope => plain(cmd_envelope(v, false)),
        Command::Verify => cmd_verify(req, v),
        Command::RenderSvg => plain(cmd_envelope(v, true)),
        Command::Selftest => cmd_selftest(req),
    }?;
    if req.mode == Mode::Float && req.command != Command::ClassifyMap && req.command != Command::Verify {
        out.diagnostics.push(format!("mode float has no effect on {}; computed exactly", req.command.name()));
    }
    Ok(out)
}

fn surface(v: &Value) -> Result<SurfaceDoc, Failure> {
    Ok(codec::dec_surface(v)??)
}

fn tuple(v: &Value) -> Result<CylinderTuple, Failure> {
    Ok(CylinderTuple::new(codec::dec_tuple_parts(v)?)?)
}

fn poly_field(v: &Value, key: &str) -> Result<RPoly, Failure> {
    Ok(codec::dec_rpoly(codec::field(v, key)?).map_err(|e| CodecError(format!("{key}: {}", e.0)))?)
}

fn poly_or(v: &Value, key: &str, default: RPoly) -> Result<RPoly, Failure> {
    match v.get(key) {
        Some(_) => poly_field(v, key),
        None => Ok(default),
    }
}

fn tuple_payload(t: &CylinderTuple) -> Value {
    json!({
        "tuple": codec::enc_tuple(t),
        "on_cylinder": t.residual().is_zero(),
        "degeneracy": t.degeneracy().map(|d| d.to_string()),
    })
}

/// `{"kind": "tparam", "P", "Q", "R", "T"?}` or
/// `{"kind": "pythagorean", "P0".."P3", "T"?}`; `T` defaults to 1, an
/// optional `X3` replaces the zero third coordinate.
fn cmd_construct(v: &Value) -> Result<Out, Failure> {
    let kind = codec::field(v, "kind")?.as_str().unwrap_or("");
    let t = poly_or(v, "T", RPoly::one())?;
    let mut tup = match kind {
        "tparam" => compose_tparam(&poly_field(v, "P")?, &poly_field(v, "Q")?, &poly_field(v, "R")?, &t)?,
        "pythagorean" => compose_pythagorean(
            &poly_field(v, "P0")?,
            &poly_field(v, "P1")?,
            &poly_field(v, "P2")?,
            &poly_field(v, "P3")?,
            &t,
        )?,
        _ => return Err(CodecError(format!("construct kind must be \"tparam\" or \"pythagorean\", got {kind:?}")).into()),
    };
    if v.get("X3").is_some() {
        tup = tup.with_x3(poly_field(v, "X3")?)?;
    }
    let mut out = Out::new(tuple_payload(&tup));
    if let Some(d) = tup.degeneracy() {
        out.diagnostics.push(format!("degenerate tuple: {d}"));
    }
    Ok(out)
}

fn cmd_lift(v: &Value) -> Result<Out, Failure> {
    let t = match surface(v)? {
        SurfaceDoc::Param1(s) => s.lift(),
        SurfaceDoc::Param2(s) => s.lift(),
    };
    Ok(Out::new(tuple_payload(&t)))
}

fn cmd_decompose(v: &Value) -> Result<Out, Failure> {
    let t = tuple(v)?;
    let w = decompose_tparam(&t)?;
    let back = w.compose()?;
    Ok(Out::new(json!({"witness": codec::enc_witness(&w), "recomposes": back.parts() == t.parts()})))
}

fn cmd_normalize(v: &Value) -> Result<Out, Failure> {
    let t = tuple(v)?;
    let (n, chart) = normalize_for_parabolas(&t)?;
    let w = decompose_tparam(&n)?;
    Ok(Out::new(json!({"chart": chart.name(), "tuple": codec::enc_tuple(&n), "witness": codec::enc_witness(&w)})))
}

/// A map document, or a `param2` surface whose top-view map is classified.
fn bilinfrac_input(v: &Value) -> Result<crate::bilinfrac::BilinFrac<crate::scalar::GaussianRational>, Failure> {
    if v.get("kind").is_some() {
        return match surface(v)? {
            SurfaceDoc::Param2(s) => Ok(topview_map(&s)),
            SurfaceDoc::Param1(_) => Err(CodecError("a map or a param2 surface is required".into()).into()),
        };
    }
    Ok(codec::dec_bilinfrac(v)??)
}

fn classification(req: &Request, f: &crate::bilinfrac::BilinFrac<crate::scalar::GaussianRational>) -> Classification {
    match req.mode {
        Mode::Exact => classify(f),
        Mode::Float => Classification::Float(
            classify_with(&f.to_c64(), req.tol).expect("complex eigenvalues always exist in floating point"),
        ),
    }
}

fn class_payload(c: &Classification) -> Value {
    let mut v = match c {
        Classification::Exact(k) => codec::enc_class(k),
        Classification::Float(k) => codec::enc_class(k),
    };
    v["exact"] = json!(c.is_exact());
    v
}

fn cmd_classify(req: &Request, v: &Value) -> Result<Out, Failure> {
    let f = bilinfrac_input(v)?;
    let c = classification(req, &f);
    let mut out = Out::new(json!({"map": codec::enc_bilinfrac(&f), "class": class_payload(&c)}));
    out.diagnostics.extend(c.diagnostics().iter().cloned());
    Ok(out)
}

fn cmd_dual(v: &Value) -> Result<Out, Failure> {
    match surface(v)? {
        SurfaceDoc::Param1(s) => Ok(Out::new(codec::enc_dual(&dual_conic_param1(&s)?))),
        SurfaceDoc::Param2(_) => Err(CodecError("dual-conic needs a param1 surface".into()).into()),
    }
}

fn cmd_topview(req: &Request, v: &Value) -> CmdResult {
    let s = match plain(surface(v))? {
        SurfaceDoc::Param2(s) => s,
        SurfaceDoc::Param1(_) => return plain(Err(CodecError("topview needs a param2 surface".into()).into())),
    };
    let rep = plain(top2_pipeline(&s, req.tol).map_err(Failure::from))?;
    let mut scene = Scene::default();
    scene.envelopes.extend(rep.envelope1.iter().chain(rep.envelope2.iter()).cloned());
    let out = Out { payload: codec::enc_top2(&rep), diagnostics: rep.diagnostics.clone(), svg: Some(render(&scene)) };
    if rep.same_cyclic == Some(false) {
        let msg = format!("envelopes differ: worst residual {:e} exceeds tol {:e}", rep.max_residual.unwrap_or(f64::NAN), req.tol);
        return Err((Failure::domain("topview.envelope_mismatch", msg), out));
    }
    Ok(out)
}

/// `{"omega1": circle, "omega2": circle | {"moebius": matrix}, "family": "product" | "sum"}`.
/// A circle `omega2` is converted to its parametrization.
fn family_input(v: &Value) -> Result<(CircleFamily, bool), Failure> {
    let w1 = codec::dec_circle(codec::field(v, "omega1")?)??;
    let w2 = codec::field(v, "omega2")?;
    let data = match w2.get("moebius") {
        Some(m) => crate::bilinfrac::Moebius::new(codec::dec_mat(m)?)?,
        None => codec::dec_circle(w2)??.parametrization()?,
    };
    let kind = v.get("family").and_then(Value::as_str).unwrap_or("product");
    match kind {
        "product" => Ok((family_product(&w1, &data), false)),
        "sum" => Ok((family_sum(&w1, &data)?, true)),
        _ => Err(CodecError(format!("family must be \"product\" or \"sum\", got {kind:?}")).into()),
    }
}

fn cmd_envelope(v: &Value, svg_only: bool) -> Result<Out, Failure> {
    let (fam, is_sum) = family_input(v)?;
    let mut scene = Scene::default();
    scene.add_family(&fam, SVG_MEMBERS);
    let mut payload = json!({
        "A": codec::enc_hermform(&fam.a),
        "B": codec::enc_hermform(&fam.b),
        "C": codec::enc_hermform(&fam.c),
    });
    let mut diagnostics = Vec::new();
    let cyclic = if is_sum {
        let env = SumEnvelope::of(&fam);
        if let Ok(e) = &env {
            payload["shape"] = json!(e.shape.name());
        }
        env.map(|e| e.cyclic)
    } else {
        envelope_cyclic(&fam)
    };
    match cyclic {
        Ok(c) => {
            payload["cyclic"] = codec::enc_cyclic(&c);
            scene.envelopes.push(c);
        }
        Err(e @ (TopviewError::NoEnvelope | TopviewError::LinearFamily)) if svg_only => {
            diagnostics.push(format!("no envelope drawn: {}", e.tag()));
        }
        Err(e) => return Err(e.into()),
    }
    let svg = render(&scene);
    if svg_only {
        payload = json!({"members": SVG_MEMBERS, "envelopes": scene.envelopes.len(), "svg": svg});
    }
    Ok(Out { payload, diagnostics, svg: Some(svg) })
}

fn isocurve_kinds<S: Isoparametric>(s: &S) -> Vec<Value> {
    let mut kinds = Vec::new();
    for axis in [Axis::U, Axis::V] {
        for k in -2..=2 {
            let kind = isocurve_sample(s, axis, &rat(k), 9).and_then(|p| classify_isocurve(&p));
            let name = kind.map(CurveKind::name).unwrap_or_else(|e| e.tag());
            kinds.push(json!({"axis": axis.to_string(), "value": k, "kind": name}));
        }
    }
    kinds
}

/// Checks a tuple for the cylinder identity, a surface for its lift and
/// isocurve shapes, or a map for its classification witness.
fn cmd_verify(req: &Request, v: &Value) -> CmdResult {
    let fail = |tag: &str, msg: String, payload: Value, diagnostics: Vec<String>| {
        Err((Failure::domain(tag, msg), Out { payload, diagnostics, svg: None }))
    };
    if v.is_array() || v.get("tuple").is_some() {
        let t = plain(CylinderTuple::new(plain(codec::dec_tuple_parts(v).map_err(Failure::from))?).map_err(Failure::from))?;
        return Ok(Out::new(tuple_payload(&t)));
    }
    if v.get("kind").and_then(Value::as_str) == Some("param1") {
        let SurfaceDoc::Param1(s) = plain(surface(v))? else { unreachable!() };
        let t = s.lift();
        let kinds = isocurve_kinds(&s);
        let bad = kinds.iter().find(|k| k["kind"] == CurveKind::IsotropicEllipse.name() || k["kind"] == CurveKind::Other.name());
        let payload = json!({"lift": tuple_payload(&t), "isocurves": kinds});
        if let Some(b) = bad {
            let msg = format!("isocurve {b} is not a vertical parabola");
            return fail("verify.not_parabolic", msg, payload, Vec::new());
        }
        return Ok(Out::new(payload));
    }
    if v.get("kind").and_then(Value::as_str) == Some("param2") {
        let SurfaceDoc::Param2(s) = plain(surface(v))? else { unreachable!() };
        let t = s.lift();
        return Ok(Out::new(json!({"lift": tuple_payload(&t), "isocurves": isocurve_kinds(&s)})));
    }
    let f = plain(bilinfrac_input(v))?;
    let c = classification(req, &f);
    let mut rng = InstanceRng::new(req.seed);
    let (res, used) = match &c {
        Classification::Exact(k) => verify_witness(&f, k, VERIFY_SAMPLES, &mut rng),
        Classification::Float(k) => verify_witness(&f.to_c64(), k, VERIFY_SAMPLES, &mut rng),
    };
    let diags: Vec<String> = c.diagnostics().to_vec();
    let payload = json!({"class": class_payload(&c), "max_residual": res, "samples": used});
    if let Some(expected) = v.get("tag") {
        let want = plain(codec::dec_canonical(expected).map_err(Failure::from))?;
        if want != c.tag() {
            let msg = format!("expected {}, classified as {}", want.name(), c.tag().name());
            return fail("verify.tag_mismatch", msg, payload, diags);
        }
    }
    let limit = if c.is_exact() { 0.0 } else { req.tol };
    if res > limit {
        return fail("verify.witness_residual", format!("witness residual {res:e} exceeds {limit:e}"), payload, diags);
    }
    Ok(Out { payload, diagnostics: diags, svg: None })
}

fn cmd_selftest(req: &Request) -> CmdResult {
    let name = req.input.as_deref().unwrap_or("smoke");
    let scale = plain(Scale::parse(name).ok_or_else(|| Failure::parse("cli.usage", format!("selftest scale must be smoke or full, got {name:?}"))))?;
    let outcomes = selftest(scale, req.seed);
    let payload = json!({
        "scale": scale.name(),
        "seed": req.seed,
        "properties": outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
    });
    match outcomes.iter().find(|o| !o.passed()) {
        None => Ok(Out::new(payload)),
        Some(o) => {
            let (input, msg) = o.failure.clone().expect("failed");
            let message = format!("{} failed on {:?}: {}", o.name, input, msg);
            Err((Failure::domain("selftest.property_failed", message), Out::new(payload)))
        }
    }
}
