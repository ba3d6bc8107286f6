//! One handler per subcommand; each returns the report payload.

use real_gersten::abelian::FPAbGroup;
use real_gersten::arith::{format_rational, parse_polynomial};
use real_gersten::bm::{bm_homology, build_cell_complex};
use real_gersten::gersten::{
    cohomology, realize_in_colimit, realize_sign_pattern, support_cohomology, DualizingData, SchemeSpec,
};
use real_gersten::real::{ladder_check, residue_beta, transfer_real, DVRPoint};
use real_gersten::spectrum::{BasisToken, Body, ClosedPoint, FieldDesc, Place, RationalFunction, SignVector};
use real_gersten::verify::{self, Battery, BatteryReport};
use real_gersten::witt::rational::{discriminant, relevant_places};
use real_gersten::witt::residue::{function_field_base, residue_support, twisted_second_residue_with, Curve};
use real_gersten::witt::transfer::base_of;
use real_gersten::witt::{
    anisotropic_part_q, hasse_invariant, is_isotropic_q, isometric_q, pfister_signature, scharlau_transfer,
    total_signature, witt_equivalent_q, witt_product, witt_sum, QPlace, TwistedForm,
};
use real_gersten::{Error, Result};
use serde_json::{json, Map, Value};

use crate::{
    input, Command, Failure, Outcome, RealizeArgs, ResidueArgs, SchemeArgs, SupportArgs, TransferArgs, VerifyArgs,
    WittArgs, WittOp,
};

type Handled = std::result::Result<Outcome, Failure>;

pub fn dispatch(cmd: &Command) -> Handled {
    match cmd {
        Command::Witt(a) => witt(a),
        Command::Residue(a) => residue(a),
        Command::Transfer(a) => transfer(a),
        Command::Complex(a) => complex(a),
        Command::Support(a) => support(a),
        Command::Bm(a) => bm(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Realize(a) => realize(a),
    }
}

/// The arguments as given, so a report can be replayed.
struct Request(Map<String, Value>);

impl Request {
    fn new(command: &str) -> Self {
        let mut m = Map::new();
        m.insert("command".into(), command.into());
        Request(m)
    }

    fn set(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.0.insert(key.into(), v.into());
        self
    }

    fn opt(self, key: &str, v: &Option<String>) -> Self {
        match v {
            Some(s) => self.set(key, s.clone()),
            None => self,
        }
    }

    fn scheme(self, a: &SchemeArgs) -> Self {
        self.set("scheme", a.scheme.clone())
            .set("base", a.base.clone())
            .opt("ext", &a.ext)
            .set("bundle", a.bundle.clone())
            .set("shift", a.shift)
    }

    fn payload(self, mut body: Map<String, Value>) -> Value {
        body.insert("request".into(), Value::Object(self.0));
        Value::Object(body)
    }
}

fn value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("library types serialize")
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("payload bodies are objects"),
    }
}

fn place_name(p: QPlace) -> String {
    match p {
        QPlace::Prime(p) => p.to_string(),
        QPlace::Infinity => "inf".into(),
    }
}

fn witt(a: &WittArgs) -> Handled {
    let field = a.field.as_deref().map(FieldDesc::parse).transpose()?;
    let q = input::form(&a.form, field.clone())?;
    let other = || -> Result<TwistedForm> {
        let src = a.other.as_deref().ok_or_else(|| Error::Invalid(format!("--op {:?} needs --other", a.op)))?;
        input::form(src, field.clone())
    };
    let req = Request::new("witt")
        .opt("field", &a.field)
        .set("form", a.form.clone())
        .set("op", value(&a.op))
        .opt("other", &a.other);
    let body = match a.op {
        WittOp::Signature => json!({
            "form": q,
            "rank": q.form.rank(),
            "signature": total_signature(&q)?,
        }),
        WittOp::Isotropic => json!({ "form": q, "isotropic": is_isotropic_q(&q.form)? }),
        WittOp::Anisotropic => {
            let r = TwistedForm::new(anisotropic_part_q(&q.form)?, q.basis.clone());
            json!({ "form": q, "anisotropic": r })
        }
        WittOp::Hasse => {
            let hasse: Vec<Value> = relevant_places(&q.form)?
                .into_iter()
                .map(|p| Ok(json!({ "place": place_name(p), "value": hasse_invariant(&q.form, p)? })))
                .collect::<Result<_>>()?;
            json!({ "form": q, "discriminant": format_rational(&discriminant(&q.form)?), "hasse": hasse })
        }
        WittOp::Sum => {
            let b = other()?;
            if b.basis != q.basis {
                return Err(Error::BasisMismatch(q.basis.to_string(), b.basis.to_string()).into());
            }
            json!({ "result": TwistedForm::new(witt_sum(&q.form, &b.form)?, q.basis.clone()) })
        }
        WittOp::Product => {
            let b = other()?;
            json!({ "result": TwistedForm::new(witt_product(&q.form, &b.form)?, q.basis.tensor(&b.basis)) })
        }
        WittOp::Isometric => json!({ "isometric": isometric_q(&q.form, &other()?.form)? }),
        WittOp::Equivalent => json!({ "equivalent": witt_equivalent_q(&q.form, &other()?.form)? }),
    };
    Ok(Outcome::ok(req.payload(object(body))))
}

fn curve(src: &str) -> Result<Curve> {
    match src.trim().to_ascii_lowercase().as_str() {
        "a1" => Ok(Curve::A1),
        "p1" => Ok(Curve::P1),
        other => Err(Error::UnsupportedScheme(format!("residues are taken on a1 or p1, not {other:?}"))),
    }
}

fn residue(a: &ResidueArgs) -> Handled {
    let field = FieldDesc::parse(&a.field)?;
    let base = function_field_base(&field)?;
    let c = curve(&a.scheme)?;
    let point = a.point.as_deref().map(|p| Place::parse(p, base)).transpose()?;
    let dvr = |place: &Place| -> Result<DVRPoint> {
        match (&a.uniformizer, point.as_ref() == Some(place)) {
            (Some(u), true) => DVRPoint::with_uniformizer(c, base, place.clone(), RationalFunction::parse(u)?),
            _ => DVRPoint::new(c, base, place.clone()),
        }
    };
    let req = Request::new("residue")
        .set("field", a.field.clone())
        .opt("form", &a.form)
        .opt("step", &a.step)
        .set("scheme", a.scheme.clone())
        .opt("point", &a.point)
        .opt("uniformizer", &a.uniformizer);
    let req = if a.ladder { req.set("ladder", true) } else { req };
    let mut body = Map::new();
    if let Some(src) = &a.step {
        let s = input::step(src)?;
        let place = point.clone().ok_or_else(|| Error::Invalid("--step needs --point".into()))?;
        let beta = residue_beta(&s, &dvr(&place)?)?;
        body.insert("residue".into(), json!({ place.key(): beta }));
        return Ok(Outcome::ok(req.payload(body)));
    }
    let q = input::form(a.form.as_deref().expect("clap requires --form or --step"), Some(field.clone()))?;
    let places = match &point {
        Some(p) => vec![p.clone()],
        None => residue_support(&q, c)?.into_iter().filter(|p| !(c == Curve::A1 && *p == Place::Infinity)).collect(),
    };
    let mut residues = Map::new();
    let mut ladders = Vec::new();
    for place in &places {
        let d = dvr(place)?;
        let r = twisted_second_residue_with(&q, place, &d.uniformizer)?;
        if point.is_some() || r.form.rank() > 0 {
            residues.insert(place.key(), value(&r));
        }
        if a.ladder {
            let report = ladder_check(&q, &d)?;
            if !report.passed {
                return Err(Failure::Invariant(format!("ladder fails at {}: {}", place.key(), value(&report))));
            }
            ladders.push(value(&report));
        }
    }
    body.insert("residue".into(), Value::Object(residues));
    if a.ladder {
        body.insert("ladder".into(), Value::Array(ladders));
    }
    Ok(Outcome::ok(req.payload(body)))
}

fn transfer(a: &TransferArgs) -> Handled {
    let b = input::base(&a.base)?;
    let field = FieldDesc::finite_ext(b, &parse_polynomial(&a.ext)?)?;
    let req = Request::new("transfer")
        .set("ext", a.ext.clone())
        .set("base", a.base.clone())
        .opt("phi", &a.phi)
        .opt("form", &a.form);
    let body = if let Some(src) = &a.phi {
        let phi = SignVector::new(field, input::int_vector(src, "phi")?)?;
        let t = transfer_real(&phi)?;
        json!({ "field": t.field, "result": t.entries })
    } else {
        let q = input::form(a.form.as_deref().expect("clap requires --phi or --form"), Some(field.clone()))?;
        let k = base_of(&field)?;
        let q = if q.basis.is_unit() { TwistedForm::new(q.form, BasisToken::trace(&field, &k)) } else { q };
        let t = scharlau_transfer(&q)?;
        json!({ "field": k, "result": t, "signature": total_signature(&t)? })
    };
    Ok(Outcome::ok(req.payload(object(body))))
}

fn bm_labels(x: &SchemeSpec) -> Value {
    match x.dimension() {
        0 => json!({ "h0": "H^BM_0", "h1": "H^BM_-1" }),
        _ => json!({ "h0": "H^BM_1", "h1": "H^BM_0" }),
    }
}

fn groups_body(x: &SchemeSpec, d: &DualizingData, h0: &FPAbGroup, h1: &FPAbGroup) -> Map<String, Value> {
    object(json!({
        "scheme": x,
        "dualizing": d,
        "h0": h0,
        "h1": h1,
        "bm_labels": bm_labels(x),
    }))
}

fn complex(a: &SchemeArgs) -> Handled {
    let (x, d) = input::scheme(a)?;
    let (h0, h1) = cohomology(&x, &d)?;
    Ok(Outcome::ok(Request::new("complex").scheme(a).payload(groups_body(&x, &d, &h0, &h1))))
}

fn bm(a: &SchemeArgs) -> Handled {
    let (x, d) = input::scheme(a)?;
    let cells = build_cell_complex(&x, &d)?;
    let (bm0, bm1) = bm_homology(&cells);
    let (h0, h1) = match x.dimension() {
        0 => (bm0, FPAbGroup::zero()),
        _ => (bm1, bm0),
    };
    let mut body = groups_body(&x, &d, &h0, &h1);
    body.insert("cells".into(), value(&cells));
    Ok(Outcome::ok(Request::new("bm").scheme(a).payload(body)))
}

fn support(a: &SupportArgs) -> Handled {
    let (x, d) = input::scheme(&a.scheme)?;
    let points = input::string_vector(&a.points, "points")?
        .iter()
        .map(|k| ClosedPoint::parse(k, x.base()))
        .collect::<Result<Vec<_>>>()?;
    let s = support_cohomology(&x, &points, &d)?;
    if !s.is_exact() {
        return Err(Failure::Invariant(format!("localization sequence is not exact: {}", value(&s.exact))));
    }
    let mut body = object(value(&s));
    body.insert("scheme".into(), value(&x));
    body.insert("dualizing".into(), value(&d));
    let req = Request::new("support").scheme(&a.scheme).set("points", a.points.clone());
    Ok(Outcome::ok(req.payload(body)))
}

fn verify_cmd(a: &VerifyArgs) -> Handled {
    let reports: Vec<BatteryReport> = match a.battery.as_str() {
        "all" => verify::run_all(a.seed, a.cases),
        name => vec![verify::run(name.parse::<Battery>()?, a.seed, a.cases)],
    };
    let passed = reports.iter().all(|r| r.passed);
    let failed: usize = reports.iter().map(|r| r.checks.values().filter(|t| t.failures > 0).count()).sum();
    let counterexamples: Vec<Value> = reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().flat_map(move |(check, t)| {
                t.examples.iter().map(move |e| json!({ "battery": r.battery, "check": check, "case": e }))
            })
        })
        .collect();
    let req = Request::new("verify").set("battery", a.battery.clone()).set("seed", a.seed).set("cases", a.cases);
    let body = object(json!({
        "passed": passed,
        "failed": failed,
        "counterexamples": counterexamples,
        "batteries": reports,
    }));
    Ok(Outcome { payload: req.payload(body), exit: if passed { 0 } else { 1 } })
}

fn realize(a: &RealizeArgs) -> Handled {
    let field = FieldDesc::parse(&a.field)?;
    let w = SignVector::new(field.clone(), input::int_vector(&a.w, "w")?)?;
    let (e, target) = if a.colimit {
        (realize_in_colimit(&field, &w)?, w.scale(2))
    } else {
        (realize_sign_pattern(&field, &w)?, w.clone())
    };
    let sig = pfister_signature(&e)?.normalize()?;
    if sig.body != Body::Sign(target) {
        return Err(Failure::Invariant(format!("realized element has signature {}", value(&sig))));
    }
    let req = Request::new("realize").set("field", a.field.clone()).set("w", a.w.clone());
    let req = if a.colimit { req.set("colimit", true) } else { req };
    let body = object(json!({ "element": e, "j": e.j, "signature": sig }));
    Ok(Outcome::ok(req.payload(body)))
}
