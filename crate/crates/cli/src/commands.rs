//! One function per subcommand. Each returns the records to print and the
//! exit code implied by the verdict.

use std::fmt;

use clap::ValueEnum;
use serde_json::{json, Value};
use skewid::algebra::{is_torsion, parse_literal, sample_tuple, AlgebraError, Element};
use skewid::freeness::{
    build_witnesses, relation_search, torsion_partner_scan, FreenessCertificate, FreenessError, Provenance, SearchLimits, Verdict,
};
use skewid::identity::{
    check_ggi, check_gpcgi, is_nontrivial, locally_finite_exponent, radical_over_center, reduce_to_full_group,
    retarget_endpoints, CheckLimits, GroupScope, IdentityError,
};
use skewid::laurent::{
    bad_beta as find_bad_beta, check_central_pipeline, expand_monomial, invert_algebraic, invert_general,
    invert_geometric, LaurentError, TruncatedLaurentSeries,
};
use skewid::words::{build_c, build_u, parse_monomial, Monomial, SeriesDescriptor, WordError};

use crate::config::SessionConfig;

/// A failure that ends the command without a verdict.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or inputs the operation rejects.
    Usage(String),
    /// A size cap or search budget was hit.
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Budget(_) => "budget",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Budget(m) => f.write_str(m),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::SamplingExhausted(_) => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::TooLong(_) => CliError::Budget(e.to_string()),
            WordError::Algebra(a) => a.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        match e {
            IdentityError::EnumerationCapExceeded { .. } => CliError::Budget(e.to_string()),
            IdentityError::Word(w) => w.into(),
            IdentityError::Algebra(a) => a.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<LaurentError> for CliError {
    fn from(e: LaurentError) -> Self {
        match e {
            LaurentError::RootSearchUnsupported(_) => CliError::Budget(e.to_string()),
            LaurentError::Word(w) => w.into(),
            LaurentError::Algebra(a) => a.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<FreenessError> for CliError {
    fn from(e: FreenessError) -> Self {
        match e {
            FreenessError::Budget { .. } => CliError::Budget(e.to_string()),
            FreenessError::Word(w) => w.into(),
            FreenessError::Algebra(a) => a.into(),
            FreenessError::Precondition(_) => CliError::Usage(e.to_string()),
        }
    }
}

/// Records in output order and the exit code.
pub struct Outcome {
    pub records: Vec<(String, Value)>,
    pub code: u8,
}

impl Outcome {
    fn single(record: &str, body: Value, code: u8) -> Self {
        Self { records: vec![(record.to_string(), body)], code }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Scope {
    /// Every unit of a finite algebra.
    Exhaustive,
    /// The subgroup generated by `--gen` elements.
    Generated,
    /// Seeded random tuples of units.
    Sampled,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    /// `Σ (−a)^i t^i`.
    Geometric,
    /// Rational form from the minimal polynomial, expanded.
    Algebraic,
    /// Degree-by-degree solve on the series `1 + a t`.
    General,
}

/// `@name` for a configured constant, otherwise an element literal.
fn element(cfg: &SessionConfig, text: &str) -> Result<Element, CliError> {
    let text = text.trim();
    if let Some(name) = text.strip_prefix('@') {
        return cfg.constants.get(name).cloned().ok_or_else(|| CliError::Usage(format!("unknown constant @{name}")));
    }
    parse_literal(&cfg.algebra, text).map_err(|e| CliError::Usage(format!("{text:?}: {e}")))
}

fn word(cfg: &SessionConfig, text: &str) -> Result<Monomial, CliError> {
    parse_monomial(&cfg.algebra, text, &cfg.constants).map_err(|e| match e {
        WordError::Syntax { .. } => CliError::Usage(format!("{text:?}: {e}")),
        other => other.into(),
    })
}

fn series(text: &str) -> Result<SeriesDescriptor, CliError> {
    text.parse::<SeriesDescriptor>().map_err(CliError::from)
}

fn series_json(s: &TruncatedLaurentSeries) -> Value {
    json!({
        "order": s.order(),
        "valuation": s.valuation(),
        "terms": s.machine_terms(),
        "display": s.to_string(),
    })
}

pub fn check(
    cfg: &SessionConfig,
    power_central: bool,
    w: &str,
    scope: Scope,
    gens: &[String],
    count: u64,
) -> Result<Outcome, CliError> {
    let w = word(cfg, w)?;
    if !gens.is_empty() && !matches!(scope, Scope::Generated) {
        return Err(CliError::Usage("--gen is only used with --scope generated".into()));
    }
    let scope = match scope {
        Scope::Exhaustive => GroupScope::FullGroup,
        Scope::Generated => {
            if gens.is_empty() {
                return Err(CliError::Usage("--scope generated needs at least one --gen".into()));
            }
            GroupScope::Generated(gens.iter().map(|g| element(cfg, g)).collect::<Result<_, _>>()?)
        }
        Scope::Sampled => GroupScope::Sampler { count, seed: cfg.seed, height: cfg.limits.height },
    };
    let limits = CheckLimits { p_max: cfg.limits.p_max, enum_cap: cfg.limits.enum_cap };
    let report = if power_central { check_gpcgi(&w, &scope, &limits)? } else { check_ggi(&w, &scope, &limits)? };
    let mut body = serde_json::to_value(report.record()).expect("records serialize");
    body["w"] = Value::String(w.to_dsl(&cfg.constants));
    Ok(Outcome::single("identity", body, if report.holds() { 0 } else { 1 }))
}

pub fn nontrivial(cfg: &SessionConfig, w: &str) -> Result<Outcome, CliError> {
    let w = word(cfg, w)?;
    let r = is_nontrivial(&w, cfg.limits.p_max)?;
    let body = json!({
        "w": w.to_dsl(&cfg.constants),
        "nontrivial": r.nontrivial,
        "certificate": r.certificate,
    });
    Ok(Outcome::single("nontrivial", body, if r.nontrivial { 0 } else { 1 }))
}

pub fn retarget(cfg: &SessionConfig, w: &str) -> Result<Outcome, CliError> {
    let w = word(cfg, w)?;
    let input = w.to_dsl(&cfg.constants);
    match retarget_endpoints(&w) {
        Ok(r) => {
            let body = json!({
                "w": input,
                "status": "retargeted",
                "result": r.to_dsl(&cfg.constants),
                "unchanged": r == w,
            });
            Ok(Outcome::single("retarget", body, 0))
        }
        Err(IdentityError::TransformFailed(msg)) => {
            let body = json!({ "w": input, "status": "transform-failed", "reason": msg });
            Ok(Outcome::single("retarget", body, 1))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn reduce(cfg: &SessionConfig, w: &str, a: &str, s: &str) -> Result<Outcome, CliError> {
    let w = word(cfg, w)?;
    let a = element(cfg, a)?;
    let s = series(s)?;
    let r = reduce_to_full_group(&w, &a, &s)?;
    let body = json!({
        "w": w.to_dsl(&cfg.constants),
        "a": a.to_string(),
        "series": s.to_string(),
        "result": r.to_dsl(&cfg.constants),
        "letters": r.letter_count(),
    });
    Ok(Outcome::single("reduce", body, 0))
}

pub fn build(cfg: &SessionConfig, a: &str, s: &str, u: bool) -> Result<Outcome, CliError> {
    let a = element(cfg, a)?;
    let s = series(s)?;
    let built = if u { build_u(&a, &s)? } else { build_c(&a, &s)? };
    let body = json!({
        "word": if u { "u" } else { "c" },
        "a": a.to_string(),
        "series": s.to_string(),
        "result": built.word.to_dsl(&cfg.constants),
        "letters": built.word.letter_count(),
        "degenerate": built.degenerate,
        "trace": built.trace,
    });
    Ok(Outcome::single("build", body, 0))
}

pub fn expand(cfg: &SessionConfig, w: &str, args: &[String], order: Option<i64>) -> Result<Outcome, CliError> {
    let w = word(cfg, w)?;
    let args: Vec<Element> = args.iter().map(|a| element(cfg, a)).collect::<Result<_, _>>()?;
    if args.len() != w.arity() {
        return Err(CliError::Usage(format!("the word needs {} --arg values, got {}", w.arity(), args.len())));
    }
    let s = expand_monomial(&w, &args, order.unwrap_or(cfg.limits.order))?;
    let mut body = series_json(&s);
    body["w"] = Value::String(w.to_dsl(&cfg.constants));
    body["args"] = json!(args.iter().map(Element::to_string).collect::<Vec<_>>());
    Ok(Outcome::single("expand", body, 0))
}

pub fn series_invert(cfg: &SessionConfig, a: &str, order: Option<i64>, method: Method) -> Result<Outcome, CliError> {
    let a = element(cfg, a)?;
    let order = order.unwrap_or(cfg.limits.order);
    let alg = a.algebra();
    let (s, rational) = match method {
        Method::Geometric => (invert_geometric(&a, order)?, None),
        Method::Algebraic => {
            let form = invert_algebraic(&a)?;
            (form.to_series(order)?, Some(form))
        }
        Method::General => {
            let base = TruncatedLaurentSeries::polynomial(alg, &[Element::one(alg), a.clone()], order);
            (invert_general(&base)?, None)
        }
    };
    let mut body = series_json(&s);
    body["a"] = Value::String(a.to_string());
    body["method"] = Value::String(format!("{method:?}").to_lowercase());
    if let Some(form) = rational {
        body["numerator"] = json!(form.numerator.iter().map(Element::to_string).collect::<Vec<_>>());
        body["denominator"] = json!(form.denominator.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    }
    Ok(Outcome::single("series-invert", body, 0))
}

pub fn bad_beta(cfg: &SessionConfig, a: &str) -> Result<Outcome, CliError> {
    let a = element(cfg, a)?;
    let r = find_bad_beta(&a)?;
    let mut body = serde_json::to_value(&r).expect("records serialize");
    body["a"] = Value::String(a.to_string());
    Ok(Outcome::single("bad-beta", body, 0))
}

pub fn pipeline(
    cfg: &SessionConfig,
    w: &str,
    count: u64,
    m: u64,
    alpha: u64,
    order: Option<i64>,
) -> Result<Outcome, CliError> {
    let w = word(cfg, w)?;
    let samples: Vec<Vec<Element>> = (0..count)
        .map(|k| sample_tuple(&cfg.algebra, w.arity(), cfg.seed, k, cfg.limits.height, false))
        .collect::<Result<_, _>>()?;
    let r = check_central_pipeline(&w, &samples, m, alpha, order.unwrap_or(cfg.limits.order))?;
    let mut body = serde_json::to_value(&r).expect("records serialize");
    body["w"] = Value::String(w.to_dsl(&cfg.constants));
    body["seed"] = json!(cfg.seed);
    if let Some(k) = r.witness {
        body["witness_args"] = json!(samples[k].iter().map(Element::to_string).collect::<Vec<_>>());
    }
    body["status"] = Value::String(
        match (r.i0, r.witness) {
            (None, _) => "no-nonzero-coefficient",
            (Some(_), None) => "all-central",
            (Some(_), Some(_)) => "not-central",
        }
        .into(),
    );
    let code = if r.witness.is_some() { 1 } else { 0 };
    Ok(Outcome::single("pipeline", body, code))
}

pub fn torsion(cfg: &SessionConfig, x: &str) -> Result<Outcome, CliError> {
    let x = element(cfg, x)?;
    let order = if x.is_unit() { is_torsion(&x, cfg.limits.n_max) } else { None };
    let body = json!({ "x": x.to_string(), "bound": cfg.limits.n_max, "unit": x.is_unit(), "order": order });
    Ok(Outcome::single("torsion", body, 0))
}

pub fn radical(cfg: &SessionConfig, x: &str) -> Result<Outcome, CliError> {
    let x = element(cfg, x)?;
    let n = radical_over_center(&x, cfg.limits.n_max);
    let body = json!({
        "x": x.to_string(),
        "bound": cfg.limits.n_max,
        "n": n,
        "power": n.map(|n| x.pow(n as i64).expect("units have powers").to_string()),
    });
    Ok(Outcome::single("radical", body, 0))
}

fn certificate_json(c: &FreenessCertificate) -> Value {
    serde_json::to_value(c).expect("records serialize")
}

pub fn free_search(
    cfg: &SessionConfig,
    u: &str,
    v: Option<&str>,
    height: u64,
    s: &str,
    length: Option<u32>,
) -> Result<Outcome, CliError> {
    let u = element(cfg, u)?;
    let s = series(s)?;
    let limits = SearchLimits {
        max_length: length.unwrap_or(cfg.limits.length),
        word_cap: cfg.limits.word_cap,
        bit_cap: cfg.limits.bit_cap,
    };
    match v {
        Some(v) => {
            let v = element(cfg, v)?;
            let w = build_witnesses(&u, &v, &s)?;
            let mut cert = relation_search(&w.x, &w.y, &limits)?;
            cert.degenerate |= w.commute;
            let code = match cert.verdict {
                Verdict::NoRelationUpTo { .. } => 0,
                Verdict::RelationFound { .. } => 1,
                Verdict::BudgetTruncated { .. } => 3,
            };
            cert.provenance = Some(Provenance { u: u.to_string(), v: v.to_string(), series: s.to_string() });
            Ok(Outcome::single("freeness", certificate_json(&cert), code))
        }
        None => {
            let certs = torsion_partner_scan(&u, height, &s, &limits)?;
            let free = certs.iter().filter(|c| matches!(c.verdict, Verdict::NoRelationUpTo { .. })).count();
            let related = certs.iter().filter(|c| matches!(c.verdict, Verdict::RelationFound { .. })).count();
            let truncated = certs.len() - free - related;
            let mut records: Vec<(String, Value)> =
                certs.iter().map(|c| ("freeness".to_string(), certificate_json(c))).collect();
            records.push((
                "scan-summary".into(),
                json!({
                    "u": u.to_string(),
                    "height": height,
                    "series": s.to_string(),
                    "certificates": certs.len(),
                    "no_relation": free,
                    "relation_found": related,
                    "budget_truncated": truncated,
                    "degenerate": certs.iter().filter(|c| c.degenerate).count(),
                }),
            ));
            let code = if free > 0 { 0 } else if truncated > 0 { 3 } else { 1 };
            Ok(Outcome { records, code })
        }
    }
}

pub fn exponent(cfg: &SessionConfig, a: &str) -> Result<Outcome, CliError> {
    let a = element(cfg, a)?;
    let r = locally_finite_exponent(&a)?;
    let mut body = serde_json::to_value(&r).expect("records serialize");
    body["a"] = Value::String(a.to_string());
    Ok(Outcome::single("exponent", body, 0))
}
