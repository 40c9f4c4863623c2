//! One function per verb, each producing an [`Outcome`].

use serde_json::{json, Map, Value};
use varj::bounds::{self, BoundResult};
use varj::datasets;
use varj::estimation::{empirical_measures, kde_with, KdeOptions};
use varj::exec::Exec;
use varj::genfun;
use varj::gof::{compare_models, CandidateReport, CandidateSpec, CompareConfig, ComparisonReport, Decision, KsMethod, KsResult, Preferred};
use varj::measures::Evaluator;
use varj::montecarlo;
use varj::order_stats::{self, OrderStatSpec};
use varj::{DensityLike, Distribution, Family, Measure, MeasureReport, Sample};

use crate::config::{Candidate, Command, Example, KdeConfig, MeasureSel, RunConfig, Target};
use crate::data::{load_dataset, DataSource};
use crate::error::{CliError, CliResult};
use crate::plot::{Curve, DensityPlot};
use crate::report::{num, opt_num, Cell, Output, Table};

/// A rendered-to-be report, an optional plot, and the first computation
/// that did not complete (the run still reports everything else).
#[derive(Debug)]
pub struct Outcome {
    pub output: Output,
    pub plot: Option<DensityPlot>,
    pub failure: Option<CliError>,
}

/// Collects per-item failures into the report.
struct Failures {
    items: Vec<Value>,
    first: Option<CliError>,
    notes: Vec<String>,
}

impl Failures {
    fn new() -> Self {
        Failures {
            items: Vec::new(),
            first: None,
            notes: Vec::new(),
        }
    }

    fn push(&mut self, item: &str, e: CliError) {
        self.items.push(json!({
            "item": item,
            "category": e.category(),
            "message": e.to_string(),
        }));
        self.notes.push(format!("failed: {item} [{}] {e}", e.category()));
        self.first.get_or_insert(e);
    }

    fn finish(self, mut output: Output, plot: Option<DensityPlot>) -> Outcome {
        output.json.insert("failures".into(), Value::Array(self.items));
        output.notes.extend(self.notes);
        Outcome {
            output,
            plot,
            failure: self.first,
        }
    }
}

pub fn execute(cfg: &RunConfig) -> CliResult<Outcome> {
    let mut out = match &cfg.command {
        Command::Measures {
            target,
            select,
            weighted,
            mc_draws,
            seed,
        } => measures(cfg.tol, target, select, *weighted, *mc_draws, *seed),
        Command::Compare {
            data,
            candidates,
            kde,
            ks,
        } => {
            let specs = candidates
                .iter()
                .map(|c| match c {
                    Candidate::Fit(f) => CandidateSpec::Fit(*f),
                    Candidate::Fixed(d) => CandidateSpec::Fixed(*d),
                })
                .collect::<Vec<_>>();
            compare(Output::new("compare"), data, &specs, kde, *ks, cfg.plot.is_some())
        }
        Command::Bounds {
            x,
            y,
            series_n,
            cheb_eps,
        } => Ok(bounds(cfg.tol, x, y, *series_n, *cheb_eps)),
        Command::Genfun { x, t } => genfun(cfg.tol, x, t),
        Command::OrderStats { x, n, i } => Ok(order_stats(x, *n, *i)),
        Command::Repro { example } => repro(*example, cfg.plot.is_some()),
    }?;
    let tol = cfg.tol;
    out.output.json.insert("tol".into(), num(tol));
    Ok(out)
}

pub fn dist_json(d: &Distribution) -> Value {
    let params: Map<String, Value> = d
        .family()
        .param_names()
        .iter()
        .zip(d.params())
        .map(|(n, v)| (n.to_string(), num(*v)))
        .collect();
    json!({ "family": d.family().name(), "params": params })
}

fn dist_label(d: &Distribution) -> String {
    let ps: Vec<String> = d.params().iter().map(|p| crate::report::fmt_num(*p)).collect();
    format!("{}({})", d.family().name(), ps.join(", "))
}

fn measure_entry(r: &MeasureReport) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("symbol".into(), Value::String(r.name.symbol(r.weighted)));
    m.insert("value".into(), num(r.value));
    m.insert("abs_error".into(), num(r.abs_error));
    m.insert("method".into(), Value::String(r.method.to_string()));
    m
}

// ---------------------------------------------------------------- measures

fn default_selection(pair: bool, weighted: bool) -> Vec<MeasureSel> {
    let base = Measure::ALL.into_iter().filter(|m| pair || !m.needs_pair());
    let mut v: Vec<MeasureSel> = base.clone().map(|measure| MeasureSel { measure, weighted: false }).collect();
    if weighted {
        v.extend(
            base.filter(|m| m.supports_weighting())
                .map(|measure| MeasureSel { measure, weighted: true }),
        );
    }
    v
}

type Phi = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// The random variable whose mean or variance a measure is.
fn functional(sel: MeasureSel, x: Distribution, y: Option<Distribution>) -> Phi {
    let y = y.unwrap_or(x);
    let base: Phi = match sel.measure {
        Measure::Extropy | Measure::Varextropy => Box::new(move |t| -0.5 * x.pdf(t)),
        Measure::Inaccuracy | Measure::VarjInaccuracy => Box::new(move |t| -0.5 * y.pdf(t)),
        Measure::Discrimination | Measure::VarjDivergence => Box::new(move |t| 0.5 * (x.pdf(t) - y.pdf(t))),
        Measure::Entropy | Measure::Varentropy => Box::new(move |t| -x.ln_pdf(t)),
        Measure::Kl | Measure::VarKl => Box::new(move |t| x.ln_pdf(t) - y.ln_pdf(t)),
    };
    if sel.weighted {
        Box::new(move |t| t * base(t))
    } else {
        base
    }
}

fn measures(
    tol: f64,
    target: &Target,
    select: &[MeasureSel],
    weighted: bool,
    mc_draws: Option<usize>,
    seed: u64,
) -> CliResult<Outcome> {
    let mut out = Output::new("measures");
    let mut fails = Failures::new();
    let mut results = Map::new();
    match target {
        Target::Pair { x, y } => {
            let ev = Evaluator::with_tol(tol)?;
            out.json.insert("x".into(), dist_json(x));
            out.json.insert("y".into(), y.as_ref().map_or(Value::Null, dist_json));
            out.preamble.push(format!("X ~ {}", dist_label(x)));
            if let Some(y) = y {
                out.preamble.push(format!("Y ~ {}", dist_label(y)));
            }
            let select = if select.is_empty() {
                default_selection(y.is_some(), weighted)
            } else {
                select.to_vec()
            };
            let mut header = vec!["measure", "symbol", "value", "abs error", "method"];
            if mc_draws.is_some() {
                header.extend(["MC estimate", "MC std error", "z"]);
                out.json.insert("seed".into(), Value::from(seed));
                out.json.insert("mc_draws".into(), Value::from(mc_draws));
            }
            let mut table = Table::new("measures", "Measures", &header);
            for sel in select {
                let key = sel.measure.key(sel.weighted);
                let dy = y.as_ref().map(|d| d as &dyn DensityLike);
                let r = match ev.evaluate(sel.measure, x, dy, sel.weighted) {
                    Ok(r) => r,
                    Err(e) => {
                        fails.push(&key, e.into());
                        continue;
                    }
                };
                let mut entry = measure_entry(&r);
                let mut row: Vec<Cell> = vec![
                    key.clone().into(),
                    r.name.symbol(r.weighted).into(),
                    r.value.into(),
                    r.abs_error.into(),
                    r.method.to_string().into(),
                ];
                if let Some(n) = mc_draws {
                    let phi = functional(sel, *x, *y);
                    match montecarlo::moments(x, phi, n, seed, Exec::Auto) {
                        Ok(m) => {
                            let (est, se) = if sel.measure.is_variance() {
                                (m.variance(), m.variance_se())
                            } else {
                                (m.mean, m.mean_se)
                            };
                            let z = if se > 0.0 { (r.value - est) / se } else { f64::NAN };
                            entry.insert(
                                "monte_carlo".into(),
                                json!({ "estimate": num(est), "std_error": num(se), "z": num(z) }),
                            );
                            row.extend([est.into(), se.into(), if z.is_finite() { z.into() } else { Cell::Empty }]);
                        }
                        Err(e) => {
                            fails.push(&format!("{key} (monte carlo)"), e.into());
                            row.extend([Cell::Empty, Cell::Empty, Cell::Empty]);
                        }
                    }
                }
                results.insert(key, Value::Object(entry));
                table.row(row);
            }
            out.tables.push(table);
        }
        Target::Sample { data, y, kde } => {
            if weighted || select.iter().any(|s| s.weighted) {
                return Err(CliError::Usage("weighted measures are not available for sample estimates".into()));
            }
            let sample = load_dataset(data)?;
            let est = kde_with(&sample, &kde_options(kde))?;
            out.json.insert("data".into(), json!({ "source": data.to_string(), "n": sample.len() }));
            out.json.insert("y".into(), dist_json(y));
            out.json.insert("bandwidth".into(), num(est.bandwidth));
            out.json.insert("gridpoints".into(), Value::from(kde.gridpoints));
            out.json.insert("truncate_below".into(), opt_num(kde.truncate_below));
            out.preamble.push(format!("data: {data} (n = {})", sample.len()));
            out.preamble.push(format!("Y ~ {}", dist_label(y)));
            out.preamble.push(format!("KDE bandwidth = {}", crate::report::fmt_num(est.bandwidth)));
            let reports = empirical_measures(&est, y)?;
            if let Some(s) = select.iter().find(|s| !reports.iter().any(|r| r.name == s.measure)) {
                return Err(CliError::Usage(format!("{} is not available for sample estimates", s.measure)));
            }
            let mut table = Table::new("measures", "Measures (KDE of the sample as X)", &["measure", "symbol", "value", "method"]);
            for r in reports.iter().filter(|r| select.is_empty() || select.iter().any(|s| s.measure == r.name)) {
                let mut entry = measure_entry(r);
                entry.remove("abs_error");
                table.row(vec![
                    r.key().into(),
                    r.name.symbol(false).into(),
                    r.value.into(),
                    r.method.to_string().into(),
                ]);
                results.insert(r.key(), Value::Object(entry));
            }
            out.tables.push(table);
        }
    }
    out.json.insert("measures".into(), Value::Object(results));
    Ok(fails.finish(out, None))
}

// ----------------------------------------------------------------- compare

fn kde_options(k: &KdeConfig) -> KdeOptions {
    KdeOptions {
        bandwidth: k.bandwidth,
        gridpoints: k.gridpoints,
        truncate_below: k.truncate_below,
        ..KdeOptions::default()
    }
}

fn ks_json(k: &KsResult) -> Value {
    let method = match k.method {
        KsMethod::Asymptotic => "asymptotic",
        KsMethod::Exact => "exact",
        KsMethod::Auto => "auto",
    };
    json!({ "statistic": num(k.statistic), "p_value": num(k.p_value), "method": method })
}

fn preferred_name(p: Preferred) -> &'static str {
    match p {
        Preferred::Y1 => "y1",
        Preferred::Y2 => "y2",
        Preferred::Undefined => "undefined",
    }
}

fn decision_json(d: &Option<Decision>) -> Value {
    match d {
        None => Value::Null,
        Some(d) => json!({
            "y1": d.y1,
            "y2": d.y2,
            "preferred": preferred_name(d.preferred),
            "chosen": d.chosen,
            "residual": num(d.residual),
        }),
    }
}

const COMPARE_MEASURES: [Measure; 6] = [
    Measure::Discrimination,
    Measure::VarjDivergence,
    Measure::Kl,
    Measure::VarKl,
    Measure::Inaccuracy,
    Measure::VarjInaccuracy,
];

fn candidate_json(i: usize, c: &CandidateReport) -> Value {
    let mut m = Map::new();
    m.insert("index".into(), Value::from(i));
    m.insert("label".into(), Value::String(c.label.clone()));
    m.insert("family".into(), Value::String(c.family.name().into()));
    m.insert("fitted".into(), Value::Bool(c.fitted));
    match &c.result {
        Ok(f) => {
            m.insert("distribution".into(), dist_json(&f.distribution));
            m.insert("log_likelihood".into(), num(f.log_likelihood));
            m.insert("ks".into(), ks_json(&f.ks));
            m.insert("ks_exact".into(), ks_json(&f.ks_exact));
            m.insert("ad_statistic".into(), opt_num(f.ad_statistic));
            m.insert(
                "info".into(),
                f.info.map_or(Value::Null, |i| {
                    json!({ "aic": num(i.aic), "caic": num(i.caic), "bic": num(i.bic), "hqic": num(i.hqic) })
                }),
            );
            let measures: Map<String, Value> = f.measures.iter().map(|r| (r.key(), num(r.value))).collect();
            m.insert("measures".into(), Value::Object(measures));
        }
        Err(e) => {
            m.insert("error".into(), json!({ "category": e.category, "message": e.message }));
        }
    }
    Value::Object(m)
}

fn describe_decision(name: &str, d: &Option<Decision>, labels: &[String]) -> Vec<Cell> {
    match d {
        None => vec![name.into(), Cell::Empty, Cell::Empty, "n/a".into(), Cell::Empty, Cell::Empty],
        Some(d) => vec![
            name.into(),
            labels[d.y1].clone().into(),
            labels[d.y2].clone().into(),
            preferred_name(d.preferred).into(),
            labels[d.chosen].clone().into(),
            d.residual.into(),
        ],
    }
}

fn comparison_output(out: &mut Output, data: &DataSource, sample: &Sample, r: &ComparisonReport) -> Failures {
    let mut fails = Failures::new();
    out.json.insert("data".into(), json!({ "source": data.to_string(), "n": r.n }));
    out.json.insert("bandwidth".into(), num(r.bandwidth));
    out.json.insert(
        "candidates".into(),
        Value::Array(r.candidates.iter().enumerate().map(|(i, c)| candidate_json(i, c)).collect()),
    );
    out.json.insert("j_decision".into(), decision_json(&r.j_decision));
    out.json.insert("k_decision".into(), decision_json(&r.k_decision));
    let b = &r.best_info;
    out.json.insert(
        "best_info".into(),
        json!({ "aic": b.aic, "caic": b.caic, "bic": b.bic, "hqic": b.hqic }),
    );

    let names: Vec<String> = (1..=r.candidates.len()).map(|i| format!("Y{i}")).collect();
    out.preamble.push(format!(
        "data: {data} (n = {}, min = {}, max = {})",
        r.n,
        crate::report::fmt_num(sample.min()),
        crate::report::fmt_num(sample.max())
    ));
    out.preamble.push(format!("KDE bandwidth = {}", crate::report::fmt_num(r.bandwidth)));

    let mut fits = Table::new(
        "candidates",
        "Candidates",
        &["model", "candidate", "fitted", "log-lik", "KS D", "KS p", "KS p (exact)", "AD A2"],
    );
    let mut info = Table::new("information", "Information criteria", &["model", "AIC", "CAIC", "BIC", "HQIC"]);
    let mut header = vec!["model".to_string()];
    header.extend(COMPARE_MEASURES.iter().map(|m| m.symbol(false)));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut div = Table::new("measures", "Empirical measures (X = KDE)", &header_refs);
    let mut summary = Vec::new();
    for (i, c) in r.candidates.iter().enumerate() {
        let name = &names[i];
        match &c.result {
            Ok(f) => {
                fits.row(vec![
                    name.clone().into(),
                    dist_label(&f.distribution).into(),
                    if c.fitted { "mle" } else { "fixed" }.into(),
                    f.log_likelihood.into(),
                    f.ks.statistic.into(),
                    f.ks.p_value.into(),
                    f.ks_exact.p_value.into(),
                    f.ad_statistic.into(),
                ]);
                info.row(vec![
                    name.clone().into(),
                    f.info.map(|i| i.aic).into(),
                    f.info.map(|i| i.caic).into(),
                    f.info.map(|i| i.bic).into(),
                    f.info.map(|i| i.hqic).into(),
                ]);
                let mut row: Vec<Cell> = vec![name.clone().into()];
                row.extend(COMPARE_MEASURES.iter().map(|m| Cell::from(f.measure(*m))));
                div.row(row);
                for m in [Measure::Discrimination, Measure::VarjDivergence, Measure::Kl, Measure::VarKl] {
                    let sym = m.symbol(false).replace('Y', name);
                    summary.push(format!("{sym} = {}", f.measure(m).map_or("-".into(), crate::report::fmt_num)));
                }
            }
            Err(e) => {
                fits.row(vec![
                    name.clone().into(),
                    c.label.clone().into(),
                    if c.fitted { "mle" } else { "fixed" }.into(),
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Empty,
                ]);
                fails.push(
                    &format!("{name} {}", c.label),
                    CliError::Compute(varj::Error::Domain(format!("{}: {}", e.category, e.message))),
                );
            }
        }
    }
    let mut dec = Table::new(
        "decisions",
        "Preference rule (residual > 0 keeps the smaller-divergence model)",
        &["criterion", "smaller", "larger", "preferred", "chosen", "residual"],
    );
    dec.row(describe_decision("J", &r.j_decision, &names));
    dec.row(describe_decision("K", &r.k_decision, &names));
    let mut best = Table::new("best_info", "Lowest information criterion", &["criterion", "model"]);
    for (k, v) in [("AIC", b.aic), ("CAIC", b.caic), ("BIC", b.bic), ("HQIC", b.hqic)] {
        best.row(vec![k.into(), v.map_or(Cell::Empty, |i| names[i].clone().into())]);
    }
    out.tables.extend([fits, info, div, dec, best]);
    out.notes.extend(summary);
    for (crit, d) in [("J", &r.j_decision), ("K", &r.k_decision)] {
        out.notes.push(match d {
            None => format!("{crit} criterion: fewer than two usable candidates"),
            Some(d) => match d.preferred {
                Preferred::Undefined => format!(
                    "{crit} criterion: undefined (negative divergence); {} kept by default",
                    names[d.chosen]
                ),
                _ => format!(
                    "{crit} criterion: prefer {} over {} (residual {})",
                    names[d.chosen],
                    names[if d.chosen == d.y1 { d.y2 } else { d.y1 }],
                    crate::report::fmt_num(d.residual)
                ),
            },
        });
    }
    fails
}

fn compare(
    mut out: Output,
    data: &DataSource,
    specs: &[CandidateSpec],
    kde: &KdeConfig,
    ks: KsMethod,
    want_plot: bool,
) -> CliResult<Outcome> {
    let sample = load_dataset(data)?;
    let cfg = CompareConfig {
        kde: kde_options(kde),
        ks_method: ks,
    };
    let report = compare_models(&sample, specs, &cfg)?;
    let fails = comparison_output(&mut out, data, &sample, &report);
    let plot = if want_plot {
        let est = kde_with(&sample, &cfg.kde)?;
        let curves = report
            .candidates
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                c.result.as_ref().ok().map(|f| Curve {
                    label: format!("Y{} {}", i + 1, dist_label(&f.distribution)),
                    values: est.grid.iter().map(|&x| f.distribution.pdf(x)).collect(),
                })
            })
            .collect();
        Some(DensityPlot {
            grid: est.grid.clone(),
            kde: est.values.clone(),
            curves,
            data: sample.values().to_vec(),
        })
    } else {
        None
    };
    Ok(fails.finish(out, plot))
}

fn repro(example: Example, want_plot: bool) -> CliResult<Outcome> {
    let (name, specs) = match example {
        Example::Locomotive => {
            let (mu, sigma) = datasets::LOCOMOTIVE_BAYES_LOGNORMAL;
            (
                "locomotive",
                vec![
                    CandidateSpec::Fit(Family::LogNormal),
                    CandidateSpec::Fixed(Distribution::lognormal(mu, sigma)?),
                ],
            )
        }
        Example::Bearings => (
            "bearings",
            vec![CandidateSpec::Fit(Family::Weibull), CandidateSpec::Fit(Family::Gamma)],
        ),
    };
    let mut out = Output::new("repro");
    out.json.insert("example".into(), Value::String(name.into()));
    let kde = KdeConfig {
        bandwidth: None,
        gridpoints: KdeOptions::default().gridpoints,
        truncate_below: None,
    };
    compare(out, &DataSource::parse(name), &specs, &kde, KsMethod::Asymptotic, want_plot)
}

// ------------------------------------------------------------------ bounds

/// Covariance kernel `q` and index `δ` of `X` for the families that admit one.
type Kernel = Box<dyn Fn(f64) -> f64>;

fn covariance_kernel(x: &Distribution) -> Option<(Kernel, f64)> {
    let p = x.params().to_vec();
    match x.family() {
        Family::Exponential | Family::Gamma => {
            let rate = *p.last()?;
            Some((Box::new(move |t| t / rate), 0.0))
        }
        Family::Uniform => {
            let (a, b) = (p[0], p[1]);
            Some((Box::new(move |t| (t - a) * (b - t) / 2.0), -0.5))
        }
        Family::Power => {
            let a = p[0];
            Some((Box::new(move |t| t * (1.0 - t) / (a + 1.0)), -1.0 / (a + 1.0)))
        }
        Family::Weibull | Family::LogNormal => None,
    }
}

fn series_bound(x: &Distribution, y: &Distribution, n: usize) -> CliResult<BoundResult> {
    use Family::*;
    let unit_uniform = |d: &Distribution| d.family() == Uniform && d.params() == [0.0, 1.0];
    let shape = |d: &Distribution| match d.family() {
        Power => Some(d.params()[0]),
        _ if unit_uniform(d) => Some(1.0),
        _ => None,
    };
    if x.family() == Exponential && y.family() == Exponential {
        return Ok(bounds::series_bound_exponential(x.params()[0], y.params()[0], n)?);
    }
    if let (Some(a), Some(b)) = (shape(x), shape(y)) {
        return Ok(bounds::series_bound_power(a, b, n)?);
    }
    let (q, delta) = covariance_kernel(x).ok_or_else(|| {
        CliError::Compute(varj::Error::Domain(format!(
            "no covariance kernel is available for a {} X",
            x.family()
        )))
    })?;
    Ok(bounds::series_bound_numeric(x, y, &*q, delta, n)?)
}

fn chebyshev(x: &Distribution, y: &Distribution, eps: f64) -> CliResult<BoundResult> {
    if x.family() == Family::Exponential && y.family() == Family::Exponential {
        return Ok(bounds::chebyshev_bound_exponential(x.params()[0], y.params()[0], eps)?);
    }
    Ok(bounds::chebyshev_bound(x, y, eps)?)
}

fn bound_json(b: &BoundResult, varj: Option<f64>) -> Value {
    let kind = match b.kind {
        bounds::BoundKind::Series => "series",
        bounds::BoundKind::Chebyshev => "chebyshev",
    };
    json!({
        "kind": kind,
        "value": num(b.value),
        "order_n": b.order_n,
        "epsilon": opt_num(b.epsilon),
        "valid": b.valid,
        "terms": b.terms.as_ref().map(|t| t.iter().map(|v| num(*v)).collect::<Vec<_>>()),
        "method": b.method.to_string(),
        "below_varj": varj.map(|v| b.value <= v * (1.0 + 1e-9) + 1e-15),
    })
}

fn bounds(tol: f64, x: &Distribution, y: &Distribution, n: usize, eps: f64) -> Outcome {
    let mut out = Output::new("bounds");
    let mut fails = Failures::new();
    out.json.insert("x".into(), dist_json(x));
    out.json.insert("y".into(), dist_json(y));
    out.json.insert("series_n".into(), Value::from(n));
    out.json.insert("cheb_eps".into(), num(eps));
    out.preamble.push(format!("X ~ {}", dist_label(x)));
    out.preamble.push(format!("Y ~ {}", dist_label(y)));

    let varj = Evaluator::with_tol(tol)
        .and_then(|ev| ev.evaluate(Measure::VarjInaccuracy, x, Some(y), false))
        .map_err(CliError::from);
    let mut table = Table::new("bounds", "VarJ(X,Y) and its lower bounds", &["quantity", "value", "method", "valid", "<= VarJ(X,Y)"]);
    let v = match varj {
        Ok(r) => {
            out.json.insert("varj_inaccuracy".into(), Value::Object(measure_entry(&r)));
            table.row(vec!["VarJ(X,Y)".into(), r.value.into(), r.method.to_string().into(), Cell::Empty, Cell::Empty]);
            Some(r.value)
        }
        Err(e) => {
            out.json.insert("varj_inaccuracy".into(), Value::Null);
            fails.push("varj-inaccuracy", e);
            None
        }
    };
    let yes_no = |b: bool| Cell::from(if b { "yes" } else { "no" });
    for (key, label, res) in [
        ("series", format!("series bound (n = {n})"), series_bound(x, y, n)),
        ("chebyshev", format!("Chebyshev bound (eps = {})", crate::report::fmt_num(eps)), chebyshev(x, y, eps)),
    ] {
        match res {
            Ok(b) => {
                out.json.insert(key.into(), bound_json(&b, v));
                let below = v.map_or(Cell::Empty, |v| yes_no(b.value <= v * (1.0 + 1e-9) + 1e-15));
                table.row(vec![label.into(), b.value.into(), b.method.to_string().into(), yes_no(b.valid), below]);
            }
            Err(e) => {
                out.json.insert(key.into(), Value::Null);
                fails.push(key, e);
            }
        }
    }
    out.tables.push(table);
    fails.finish(out, None)
}

// ------------------------------------------------------------------ genfun

fn genfun(tol: f64, x: &Distribution, ts: &[f64]) -> CliResult<Outcome> {
    let mut out = Output::new("genfun");
    let mut fails = Failures::new();
    out.json.insert("x".into(), dist_json(x));
    out.preamble.push(format!("X ~ {}", dist_label(x)));
    let ev = Evaluator::with_tol(tol)?;

    let mut g_table = Table::new("genfun", "G(t) = E[exp(-t f(X)/2)]", &["t", "G(t)", "ln G(t)"]);
    let mut values = Vec::new();
    for &t in ts {
        match genfun::extropy_genfun_with(&ev, x, t) {
            Ok(g) => {
                values.push(json!({ "t": num(t), "value": num(g) }));
                g_table.row(vec![t.into(), g.into(), g.ln().into()]);
            }
            Err(e) => fails.push(&format!("G({t})"), e.into()),
        }
    }
    out.json.insert("genfun".into(), Value::Array(values));
    out.tables.push(g_table);

    match genfun::extropy_moments(x) {
        Ok(m) => {
            out.json.insert(
                "moments".into(),
                json!({
                    "j": num(m.j),
                    "varj": num(m.varj),
                    "skewj": num(m.skewj),
                    "kurtj": num(m.kurtj),
                    "raw": m.raw.iter().map(|v| num(*v)).collect::<Vec<_>>(),
                }),
            );
            // Cumulants of −½ f(X); the fourth is m₄ − 3m₂², not the central moment.
            let cumulants = [m.j, m.varj, m.skewj, m.kurtj - 3.0 * m.varj * m.varj];
            let names = ["J (mean)", "VarJ (variance)", "SkewJ (3rd central)", "4th cumulant"];
            let mut t = Table::new(
                "cumulants",
                "Cumulants of -f(X)/2: quadrature vs derivatives of ln G at 0",
                &["k", "quantity", "quadrature", "d^k ln G / dt^k", "difference"],
            );
            let mut checks = Map::new();
            for k in 1..=4 {
                let direct = cumulants[k - 1];
                match genfun::genfun_derivative_check(x, k) {
                    Ok(d) => {
                        checks.insert(
                            k.to_string(),
                            json!({ "quadrature": num(direct), "derivative": num(d), "difference": num(d - direct) }),
                        );
                        t.row(vec![
                            (k as f64).into(),
                            names[k - 1].into(),
                            direct.into(),
                            d.into(),
                            (d - direct).into(),
                        ]);
                    }
                    Err(e) => fails.push(&format!("derivative {k}"), e.into()),
                }
            }
            out.json.insert("cumulant_checks".into(), Value::Object(checks));
            out.tables.push(t);
        }
        Err(e) => fails.push("moments", e.into()),
    }
    Ok(fails.finish(out, None))
}

// ------------------------------------------------------------- order-stats

type OrderStatFn = fn(&OrderStatSpec) -> varj::Result<MeasureReport>;

fn order_stats(x: &Distribution, n: usize, i: Option<usize>) -> Outcome {
    let mut out = Output::new("order-stats");
    let mut fails = Failures::new();
    out.json.insert("x".into(), dist_json(x));
    out.json.insert("n".into(), Value::from(n));
    out.preamble.push(format!("X ~ {}, n = {n}", dist_label(x)));
    let mut table = Table::new(
        "order_stats",
        "Order statistics X(i:n)",
        &["i", "VarJ(Xi:n,X)", "direct", "VarJ(Xi:n|X)", "direct"],
    );
    let mut rows = Vec::new();
    let range = match i {
        Some(i) => i..=i,
        None => 1..=n,
    };
    for i in range {
        let spec = match OrderStatSpec::new(*x, i, n) {
            Ok(s) => s,
            Err(e) => {
                fails.push(&format!("i = {i}"), e.into());
                continue;
            }
        };
        let mut vals = [None; 4];
        let calls: [(&str, OrderStatFn); 4] = [
            ("varj-inaccuracy", order_stats::varj_inaccuracy_order),
            ("varj-inaccuracy direct", order_stats::varj_inaccuracy_order_direct),
            ("varj-divergence", order_stats::varj_divergence_order),
            ("varj-divergence direct", order_stats::varj_divergence_order_direct),
        ];
        for (slot, (name, f)) in vals.iter_mut().zip(calls) {
            match f(&spec) {
                Ok(r) => *slot = Some(r.value),
                Err(e) => fails.push(&format!("{name} (i = {i})"), e.into()),
            }
        }
        rows.push(json!({
            "i": i,
            "varj_inaccuracy": opt_num(vals[0]),
            "varj_inaccuracy_direct": opt_num(vals[1]),
            "varj_divergence": opt_num(vals[2]),
            "varj_divergence_direct": opt_num(vals[3]),
        }));
        table.row(vec![(i as f64).into(), vals[0].into(), vals[1].into(), vals[2].into(), vals[3].into()]);
    }
    out.json.insert("rows".into(), Value::Array(rows));
    out.tables.push(table);
    fails.finish(out, None)
}
