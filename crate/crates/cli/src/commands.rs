//! Subcommand implementations. Each returns the JSON document and a text
//! rendering of the same result.

use coxlink::chords::{enumerate_positive_orderings, incidence_graph, make_positive, obstruction, realize, MAX_CHORDS};
use coxlink::coxeter::{
    char_poly_coxeter, classify, coxeter_element, family, spectral_radius, CoxMatrix, CoxeterGraph, Family,
};
use coxlink::growth::{delta, excess, growth_rate, orbifold_chi, TupleSignature};
use coxlink::intpoly::{find_roots, is_cyclotomic_product, is_reciprocal, is_salem, mahler_measure};
use coxlink::search::{
    min_mahler_delta_with, min_spectral_radius_with, ordering_invariance_scan, GraphMode, SearchConfig, SearchReport,
};
use coxlink::seifert::{alexander, coxeter_from_link, pretzel_alexander, seifert_matrix, SeifertMatrix};
use coxlink::{Error, IntMatrix, IntPolynomial};
use serde_json::{json, Value};

use crate::input::{self, Failure, LinkInput, Outcome};
use crate::{Cli, Command, GraphArgs, SearchCommand};

/// Default tolerance outside the searches.
const DEFAULT_TOL: f64 = 1e-10;
/// Accuracy of the floating-point eigenvalue path for non-integral graphs.
const NUMERIC_EIGEN_TOL: f64 = 1e-8;

pub struct Output {
    pub json: Value,
    pub text: String,
}

fn coeffs_json(p: &IntPolynomial) -> Value {
    match p.to_i64s() {
        Some(c) => json!(c),
        None => json!(p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>()),
    }
}

fn poly_json(p: &IntPolynomial) -> Value {
    json!({"polynomial": p.to_symbolic('x'), "coeffs": coeffs_json(p)})
}

fn measured(value: f64, tol: f64) -> Value {
    json!({"value": value, "tol": tol})
}

fn matrix_json(m: &IntMatrix) -> Value {
    json!(m.rows())
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

pub fn run(cli: &Cli) -> Outcome<Output> {
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0) {
        return Err(Failure::new(Error::Domain("--tol must be positive".into()), json!({"argument": "tol"})));
    }
    match &cli.command {
        Command::Mahler { poly } => mahler(poly, tol),
        Command::Salem { poly } => salem(poly, tol),
        Command::Classify { graph } => classify_cmd(graph),
        Command::Charpoly(args) => charpoly(args),
        Command::Spectral(args) => spectral(args, tol),
        Command::Element(args) => element(args),
        Command::Delta { ps } => delta_cmd(ps, tol),
        Command::Alexander { input } => alexander_cmd(input),
        Command::Realize { graph, budget } => realize_cmd(graph, *budget),
        Command::Obstruct { graph } => obstruct(graph),
        Command::Positive { diagram } => positive(diagram),
        Command::Search(s) => search(s, cli.tol),
        Command::LehmerVerify => lehmer_verify(tol),
    }
}

fn mahler(text: &str, tol: f64) -> Outcome<Output> {
    let p = input::polynomial(text)?;
    let m = mahler_measure(&p, tol)?;
    let mut json = poly_json(&p);
    json["mahler"] = measured(m, tol);
    if p.degree().is_some_and(|d| d > 0) {
        let roots = find_roots(&p, tol)?;
        json["roots"] = json!(roots.roots().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>());
        json["root_radius"] = json!(roots.radius());
    }
    let text = format!("M({}) = {m} (+- {tol:e})", p.to_symbolic('x'));
    Ok(Output { json, text })
}

fn salem(text: &str, tol: f64) -> Outcome<Output> {
    let p = input::polynomial(text)?;
    let verdict = is_salem(&p, tol)?;
    let m = mahler_measure(&p, tol)?;
    let mut json = poly_json(&p);
    json["salem"] = json!(verdict);
    json["reciprocal"] = json!(is_reciprocal(&p));
    json["cyclotomic_product"] = json!(is_cyclotomic_product(&p)?);
    json["mahler"] = measured(m, tol);
    let text = format!(
        "{} is {}a Salem polynomial; M = {m} (+- {tol:e})",
        p.to_symbolic('x'),
        if verdict { "" } else { "not " }
    );
    Ok(Output { json, text })
}

fn classify_cmd(path: &str) -> Outcome<Output> {
    let g = input::graph(path)?;
    let c = classify(&g)?;
    let json = c.to_json();
    let text = format!("{}\ncertificate: {}", c.kind.as_str(), json["certificate"]);
    Ok(Output { json, text })
}

fn graph_and_order(args: &GraphArgs) -> Outcome<(CoxeterGraph, coxlink::coxeter::Ordering)> {
    let g = input::graph(&args.graph)?;
    let ord = input::ordering(&args.order, g.n())?;
    Ok((g, ord))
}

fn charpoly(args: &GraphArgs) -> Outcome<Output> {
    let (g, ord) = graph_and_order(args)?;
    let p = char_poly_coxeter(&g, &ord)?;
    let mut json = poly_json(&p);
    json["order"] = json!(one_based(&ord.sequence()));
    let text = p.to_symbolic('x');
    Ok(Output { json, text })
}

fn spectral(args: &GraphArgs, tol: f64) -> Outcome<Output> {
    let (g, ord) = graph_and_order(args)?;
    let r = spectral_radius(&g, &ord, tol)?;
    let tol = if g.is_integral() { tol } else { tol.max(NUMERIC_EIGEN_TOL) };
    let json = json!({"spectral_radius": measured(r, tol), "order": one_based(&ord.sequence())});
    Ok(Output { json, text: format!("{r} (+- {tol:e})") })
}

fn element(args: &GraphArgs) -> Outcome<Output> {
    let (g, ord) = graph_and_order(args)?;
    let c = coxeter_element(&g, &ord)?;
    let (exact, rows) = match &c {
        CoxMatrix::Exact(m) => (true, matrix_json(m)),
        CoxMatrix::Numeric(m) => {
            let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
            (false, json!(rows))
        }
    };
    let text = rows.as_array().into_iter().flatten().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
    let json = json!({"exact": exact, "matrix": rows, "order": one_based(&ord.sequence())});
    Ok(Output { json, text })
}

fn delta_cmd(ps: &[u32], tol: f64) -> Outcome<Output> {
    let sig = TupleSignature::new(ps).map_err(|e| Failure::at_argument(e, "ps"))?;
    let d = delta(&sig);
    let rate = growth_rate(&sig, tol)?;
    let chi = orbifold_chi(&sig);
    let mut json = poly_json(&d);
    json["signature"] = json!(sig.original());
    json["chi"] = json!(chi.to_string());
    json["excess"] = json!(excess(&sig).to_string());
    json["growth_rate"] = measured(rate.value, rate.tol);
    json["salem"] = json!(rate.salem);
    let text = format!(
        "delta{sig} = {}\ncoefficients {}\nchi = {chi}\ngrowth rate {} (+- {:e}){}",
        d.to_symbolic('x'),
        d.to_csv(),
        rate.value,
        rate.tol,
        if rate.salem { ", a Salem number" } else { "" }
    );
    Ok(Output { json, text })
}

fn alexander_cmd(arg: &str) -> Outcome<Output> {
    let (m, system): (SeifertMatrix, Option<Value>) = match input::link(arg)? {
        LinkInput::System(sys) => (seifert_matrix(&sys)?, Some(json!(sys))),
        LinkInput::Matrix(m) => (m, None),
    };
    let p = alexander(&m);
    let c = coxeter_from_link(&m)?.charpoly();
    let json = json!({
        "system": system,
        "seifert": matrix_json(m.matrix()),
        "alexander": poly_json(&p),
        "monodromy_charpoly": poly_json(&c),
    });
    let text = format!("{}\nmonodromy charpoly {}", p.to_symbolic('t'), c.to_symbolic('x'));
    Ok(Output { json, text })
}

fn realize_cmd(path: &str, budget: u64) -> Outcome<Output> {
    let g = input::graph(path)?;
    let found = realize(&g, budget)?;
    let json = match &found {
        Some(d) => json!({"realizable": true, "word": d.to_string(), "diagram": d}),
        None => json!({"realizable": false, "word": null, "diagram": null}),
    };
    let text = match &found {
        Some(d) => d.to_string(),
        None => "not realizable".to_string(),
    };
    if let Some(d) = &found {
        if incidence_graph(d) != g {
            return Err(Error::InvariantViolation("realized diagram has the wrong intersection graph".into()).into());
        }
    }
    Ok(Output { json, text })
}

fn obstruct(path: &str) -> Outcome<Output> {
    let g = input::graph(path)?;
    let w = obstruction(&g)?;
    let json = match &w {
        Some(w) => json!({"witness": {
            "hub": w.hub + 1,
            "independent": one_based(&w.independent),
            "cycle": one_based(&w.cycle),
        }}),
        None => json!({"witness": null}),
    };
    let text = match &w {
        Some(w) => format!(
            "hub {} is adjacent to {:?}, which lie on the induced cycle {:?}",
            w.hub + 1,
            one_based(&w.independent),
            one_based(&w.cycle)
        ),
        None => "no obstruction found".to_string(),
    };
    Ok(Output { json, text })
}

fn positive(arg: &str) -> Outcome<Output> {
    let d = input::diagram(arg)?;
    let sys = make_positive(&d);
    let mut json = json!({"positive_system": sys, "text": sys.to_string()});
    let mut text = format!("positive system: {sys}");
    if d.n() <= MAX_CHORDS {
        let all = enumerate_positive_orderings(&d)?;
        let classes: Vec<Value> = all
            .classes
            .iter()
            .map(|c| {
                json!({
                    "representative": c.representative,
                    "structures": c.structures.len(),
                    "orientations": c.orientations,
                    "systems": c.systems,
                })
            })
            .collect();
        text.push_str(&format!("\n{} classes of positive systems", classes.len()));
        for c in &all.classes {
            text.push_str(&format!(
                "\n  {} ({} structures, {} systems)",
                c.representative,
                c.structures.len(),
                c.systems
            ));
        }
        json["class_count"] = json!(classes.len());
        json["classes"] = json!(classes);
    }
    Ok(Output { json, text })
}

fn report_output(report: SearchReport) -> Outcome<Output> {
    let mut text = format!("{}: {} examined\nminimizer {}", report.family, report.examined, report.minimizer);
    if let Some(m) = report.min_value {
        text.push_str(&format!("\nminimum {} (+- {:e})", m.value, m.tol));
    }
    if let Some(m) = report.runner_up {
        text.push_str(&format!("\nrunner-up {} (+- {:e})", m.value, m.tol));
    }
    text.push_str(&format!("\n{} ms", report.elapsed_ms));
    let json = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(Output { json, text })
}

fn search(cmd: &SearchCommand, tol: Option<f64>) -> Outcome<Output> {
    let mut cfg = SearchConfig::from_env();
    if let Some(t) = tol {
        cfg.tol = t;
    }
    let report = match cmd {
        SearchCommand::Tuples { kmax, pmax } => min_mahler_delta_with(*kmax, *pmax, &cfg)?,
        SearchCommand::Trees { nmax } => min_spectral_radius_with(*nmax, GraphMode::Trees, &cfg)?,
        SearchCommand::Graphs { nmax } => min_spectral_radius_with(*nmax, GraphMode::AllGraphs, &cfg)?,
        SearchCommand::Orderings { diagram } => ordering_invariance_scan(&input::diagram(diagram)?)?,
    };
    report_output(report)
}

fn lehmer_verify(tol: f64) -> Outcome<Output> {
    let lehmer = IntPolynomial::lehmer();
    let sig = TupleSignature::new(&[2, 3, 7])?;
    let e10 = family(&Family::E(10))?;
    let checks = [
        ("delta_2_3_7_is_lehmer", delta(&sig) == lehmer),
        ("e10_charpoly_is_lehmer", char_poly_coxeter(&e10, &coxlink::coxeter::Ordering::identity(10))? == lehmer),
        (
            "pretzel_2_3_7_alexander_is_lehmer_of_minus_x",
            pretzel_alexander(&sig).eq_up_to_units(&lehmer.negate_variable()),
        ),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(Error::InvariantViolation(format!("{name} does not hold")).into());
    }
    let m = mahler_measure(&lehmer, tol)?;
    let mut json = poly_json(&lehmer);
    for (name, ok) in checks {
        json[name] = json!(ok);
    }
    json["mahler"] = measured(m, tol);
    let text = format!(
        "delta(2,3,7) = E10 charpoly = {}\npretzel(2,3,7) Alexander = P(-x)\nMahler measure {m} (+- {tol:e})",
        lehmer.to_symbolic('x')
    );
    Ok(Output { json, text })
}
