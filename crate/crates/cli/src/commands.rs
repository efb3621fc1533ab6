use std::collections::BTreeMap;
use std::io::Write;

use hallfrat::config::Bounds;
use hallfrat::constructions::{parse_group_expr, parse_group_file, realize, BuiltGroup, GroupExpr, Realized};
use hallfrat::corpus::{run_corpus, PiPolicy, RunConfig};
use hallfrat::frattini::{frattini_constructive, frattini_oracle, remark1_report, WitnessSummary};
use hallfrat::hall::{hall_classes, hall_classes_of_product, HallStatus, HallSummary};
use hallfrat::perm_core::{derived_subgroup, ensure_normal, is_simple, is_solvable, normal_subgroups};
use hallfrat::product_symbolic::remark2_report;
use hallfrat::{Error, Perm, PermGroup, PrimeSet, Result};
use serde::Serialize;
use serde_json::Value;

use crate::output::Document;
use crate::{
    Cli, Command, CorpusArgs, CorpusCommand, Counterexample, FrattiniArgs, GroupArgs, GroupCommand,
    HallCommand, Method, PiPolicyArg, EXIT_VIOLATION,
};

/// Runs the command and returns the exit code.
pub fn run(cli: &Cli) -> Result<u8> {
    let (doc, text) = match &cli.command {
        Command::Hall {
            command: HallCommand::Analyze { group, pi },
        } => hall_analyze(group, pi)?,
        Command::Frattini(args) => frattini(args)?,
        Command::Counterexample { which } => counterexample(*which)?,
        Command::Corpus {
            command: CorpusCommand::Run(args),
        } => corpus(args)?,
        Command::Group {
            command: GroupCommand::Info { group },
        } => group_info(group)?,
    };
    if let Some(path) = &cli.out {
        doc.write(path)?;
    }
    // a closed pipe is not an error worth reporting
    let mut stdout = std::io::stdout().lock();
    let _ = if cli.json {
        writeln!(stdout, "{}", doc.to_json())
    } else {
        write!(stdout, "{text}")
    };
    Ok(if doc.footer.violations > 0 { EXIT_VIOLATION } else { 0 })
}

fn load_expr(args: &GroupArgs) -> Result<GroupExpr> {
    match (&args.group, &args.file) {
        (Some(text), None) => parse_group_expr(text),
        (None, Some(path)) => parse_group_file(path),
        _ => Err(Error::Semantic("give exactly one of --group and --file".into())),
    }
}

fn group_flags(args: &GroupArgs) -> Vec<(&'static str, String)> {
    let mut flags = Vec::new();
    if let Some(g) = &args.group {
        flags.push(("group", g.clone()));
    }
    if let Some(f) = &args.file {
        flags.push(("file", f.display().to_string()));
    }
    flags
}

fn parse_pi(text: &str) -> Result<PrimeSet> {
    text.parse()
}

fn explicit(expr: &GroupExpr) -> Result<BuiltGroup> {
    match realize(expr)? {
        Realized::Explicit(b) => Ok(b),
        Realized::Symbolic(s) => Err(Error::BoundExceeded {
            what: "group order for explicit construction",
            value: u64::try_from(s.order).unwrap_or(u64::MAX),
            limit: Bounds::global().max_order,
        }),
    }
}

fn factors_of(b: &BuiltGroup) -> Vec<PermGroup> {
    (1..)
        .map_while(|i| b.named.get(&format!("factor_{i}")).cloned())
        .collect()
}

#[derive(Serialize)]
struct HallRecord {
    group: String,
    #[serde(flatten)]
    analysis: HallSummary,
}

#[derive(Serialize)]
struct SymbolicHallRecord {
    group: String,
    group_order: String,
    pi: PrimeSet,
    status: HallStatus,
    target_order: String,
    class_count: String,
    copies: usize,
    factor: HallSummary,
}

fn class_lines(out: &mut String, summary: &HallSummary) {
    for (i, c) in summary.classes.iter().enumerate() {
        out.push_str(&format!(
            "  class {}: order {}, {} conjugates, generated by {}\n",
            i + 1,
            c.order,
            c.class_size,
            if c.generators.is_empty() { "()".to_string() } else { c.generators.join(" ") }
        ));
    }
}

fn hall_analyze(args: &GroupArgs, pi_text: &str) -> Result<(Document, String)> {
    let expr = load_expr(args)?;
    let pi = parse_pi(pi_text)?;
    let mut flags = group_flags(args);
    flags.push(("pi", pi.to_string()));
    let mut doc = Document::new("hall analyze", &flags);
    let mut text = String::new();
    match realize(&expr)? {
        Realized::Explicit(b) => {
            let factors = factors_of(&b);
            let analysis = if b.group.order() > Bounds::global().enumeration && factors.len() > 1 {
                hall_classes_of_product(&b.group, &factors, &pi)?
            } else {
                hall_classes(&b.group, &pi)?
            };
            let summary = analysis.summary();
            text.push_str(&format!(
                "group {} of order {}\npi = {}, Hall order {}\nstatus {}, {} classes\n",
                expr,
                summary.group_order,
                pi,
                summary.target_order,
                summary.status.as_str(),
                summary.classes.len()
            ));
            class_lines(&mut text, &summary);
            doc.push(HallRecord {
                group: expr.to_string(),
                analysis: summary,
            });
        }
        Realized::Symbolic(s) if !s.shifted => {
            let factor = hall_classes(&s.factor.group, &pi)?.summary();
            let c = factor.classes.len() as u128;
            let count = c.checked_pow(s.copies as u32);
            let status = match c {
                0 => HallStatus::NotE,
                1 => HallStatus::C,
                _ => HallStatus::EOnly,
            };
            let target = (factor.target_order as u128).checked_pow(s.copies as u32);
            let show = |x: Option<u128>| x.map_or("overflow".to_string(), |v| v.to_string());
            text.push_str(&format!(
                "group {} of order {} (factor-wise)\npi = {}, Hall order {}\nstatus {}, {} classes, one per choice of factor class\n",
                expr,
                s.order,
                pi,
                show(target),
                status.as_str(),
                show(count)
            ));
            class_lines(&mut text, &factor);
            doc.push(SymbolicHallRecord {
                group: expr.to_string(),
                group_order: s.order.to_string(),
                pi,
                status,
                target_order: show(target),
                class_count: show(count),
                copies: s.copies,
                factor,
            });
        }
        Realized::Symbolic(_) => {
            explicit(&expr)?;
        }
    }
    Ok((doc, text))
}

fn select_normals(b: &BuiltGroup, selector: &str) -> Result<Vec<(String, PermGroup)>> {
    let g = &b.group;
    let sel = selector.trim();
    let out = match sel {
        "auto" => normal_subgroups(g)?
            .into_iter()
            .enumerate()
            .map(|(i, a)| (format!("#{i}"), a))
            .collect(),
        "trivial" => vec![("trivial".into(), PermGroup::trivial(g.degree()))],
        "whole" => vec![("whole".into(), g.clone())],
        "derived" => vec![("derived".into(), derived_subgroup(g)?)],
        _ if sel.starts_with('#') => {
            let i: usize = sel[1..]
                .parse()
                .map_err(|_| Error::Semantic(format!("bad normal subgroup index {sel:?}")))?;
            let normals = normal_subgroups(g)?;
            let a = normals.get(i).cloned().ok_or_else(|| {
                Error::Semantic(format!("only {} normal subgroups", normals.len()))
            })?;
            vec![(sel.to_string(), a)]
        }
        _ if sel.starts_with('(') => {
            let gens = sel
                .split(';')
                .map(|s| Perm::parse_cycles(g.degree(), s.trim()))
                .collect::<Result<Vec<_>>>()?;
            vec![(sel.to_string(), PermGroup::new(g.degree(), gens)?)]
        }
        _ => match b.named.get(sel) {
            Some(a) => vec![(sel.to_string(), a.clone())],
            None => {
                let labels: Vec<&str> = b.named.keys().map(String::as_str).collect();
                return Err(Error::Semantic(format!(
                    "unknown normal subgroup {sel:?}; named subgroups: {}",
                    if labels.is_empty() { "none".to_string() } else { labels.join(", ") }
                )));
            }
        },
    };
    for (_, a) in &out {
        ensure_normal(g, a)?;
    }
    Ok(out)
}

#[derive(Serialize)]
struct FrattiniRecord {
    group: String,
    pi: PrimeSet,
    normal: String,
    normal_order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<WitnessSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constructive: Option<WitnessSummary>,
    all_checks_pass: bool,
}

fn witness_lines(out: &mut String, label: &str, w: &WitnessSummary) {
    out.push_str(&format!(
        "  {label}: H of order {} generated by {}\n    N_G(H) of order {}; G = A N_G(H): {}; N_G(H) in E_pi: {}; Hall subgroups of N_G(H) are Hall in G: {}\n",
        w.hall_order,
        if w.hall_generators.is_empty() { "()".to_string() } else { w.hall_generators.join(" ") },
        w.normalizer_order,
        w.checks.product_covers_g,
        w.checks.normalizer_in_e_pi,
        w.checks.normalizer_hall_is_g_hall
    ));
    if !w.stable_classes.is_empty() {
        let idx: Vec<String> = w.stable_classes.iter().map(|i| (i + 1).to_string()).collect();
        out.push_str(&format!("    stable classes of A: {}\n", idx.join(", ")));
    }
    for step in &w.trace {
        out.push_str(&format!(
            "    {}{}: |G| = {}, |A| = {}{} -> order {}\n",
            "  ".repeat(step.depth),
            step.case.as_str(),
            step.group_order,
            step.normal_order,
            step.minimal_normal_order.map_or(String::new(), |m| format!(", |M| = {m}")),
            step.result_order
        ));
    }
}

fn frattini(args: &FrattiniArgs) -> Result<(Document, String)> {
    let expr = load_expr(&args.group)?;
    let pi = parse_pi(&args.pi)?;
    let mut flags = group_flags(&args.group);
    flags.push(("pi", pi.to_string()));
    flags.push(("normal", args.normal.clone()));
    flags.push(("method", format!("{:?}", args.method).to_lowercase()));
    let mut doc = Document::new("frattini", &flags);
    let b = explicit(&expr)?;
    let g = &b.group;
    if !hall_classes(g, &pi)?.status.is_e() {
        return Err(Error::NotEPi { pi: pi.to_string() });
    }
    let mut text = format!("group {expr} of order {}, pi = {pi}\n", g.order());
    let mut violations = 0;
    for (label, a) in select_normals(&b, &args.normal)? {
        let oracle = match args.method {
            Method::Constructive => None,
            _ => Some(frattini_oracle(g, &a, &pi)?.summary()),
        };
        let constructive = match args.method {
            Method::Oracle => None,
            _ => Some(frattini_constructive(g, &a, &pi)?.summary()),
        };
        let ok = oracle.iter().chain(constructive.iter()).all(|w| w.checks.all());
        violations += (!ok) as u64;
        text.push_str(&format!("A = {label} of order {}\n", a.order()));
        if let Some(w) = &oracle {
            witness_lines(&mut text, "oracle", w);
        }
        if let Some(w) = &constructive {
            witness_lines(&mut text, "constructive", w);
        }
        doc.push(FrattiniRecord {
            group: expr.to_string(),
            pi: pi.clone(),
            normal: label,
            normal_order: a.order(),
            oracle,
            constructive,
            all_checks_pass: ok,
        });
    }
    doc.footer.violations = violations;
    Ok((doc, text))
}

/// `key: value` lines for the scalar fields of a report.
fn flat_lines(out: &mut String, value: &Value) {
    if let Value::Object(map) = value {
        for (k, v) in map {
            match v {
                Value::Array(items) => out.push_str(&format!("{k}: {} entries\n", items.len())),
                Value::Object(_) => {}
                Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                other => out.push_str(&format!("{k}: {other}\n")),
            }
        }
    }
}

fn counterexample(which: Counterexample) -> Result<(Document, String)> {
    let mut text = String::new();
    let (mut doc, reproduces) = match which {
        Counterexample::Remark1 => {
            let mut doc = Document::new("counterexample remark1", &[]);
            let r = remark1_report()?;
            text.push_str("GL(3,2) and its extension by the inverse-transpose automorphism\n");
            flat_lines(&mut text, &serde_json::to_value(&r).expect("report serializes"));
            for (i, c) in r.socle_hall_classes.iter().enumerate() {
                text.push_str(&format!(
                    "socle Hall class {}: order {}, {} conjugates, generated by {}\n",
                    i + 1,
                    c.order,
                    c.class_size,
                    c.generators.join(" ")
                ));
            }
            let ok = r.reproduces();
            doc.push(r);
            (doc, ok)
        }
        Counterexample::Remark2 => {
            let mut doc = Document::new("counterexample remark2", &[]);
            let r = remark2_report()?;
            text.push_str("GL(3,2)^5 extended by the cyclic shift of the factors\n");
            flat_lines(&mut text, &serde_json::to_value(&r).expect("report serializes"));
            for c in &r.factor_classes {
                text.push_str(&format!("factor class {c}\n"));
            }
            for o in &r.orbits {
                text.push_str(&format!("orbit of {} (size {}): {}\n", o.representative, o.size, o.verdict));
            }
            for c in &r.cross_checks {
                text.push_str(&format!(
                    "cross-check {} k={} pi={}: {} classes, {} orbits, {} stable, agree {}\n",
                    c.factor, c.copies, c.pi, c.explicit_classes, c.explicit_orbits, c.explicit_stable, c.agree
                ));
            }
            for c in &r.power_checks {
                text.push_str(&format!(
                    "explicit check {} k={} pi={}: {} vectors, agree {}\n",
                    c.factor, c.copies, c.pi, c.vectors, c.agree
                ));
            }
            let ok = r.reproduces();
            doc.push(r);
            (doc, ok)
        }
    };
    text.push_str(&format!("reproduced: {}\n", if reproduces { "yes" } else { "no" }));
    doc.footer.violations = (!reproduces) as u64;
    doc.summary("reproduced", reproduces);
    Ok((doc, text))
}

fn corpus(args: &CorpusArgs) -> Result<(Document, String)> {
    let mut config = RunConfig::default();
    if let Some(m) = args.max_order {
        config = config.with_max_order(m);
    }
    config.pi_policy = match args.pi_policy {
        PiPolicyArg::All => PiPolicy::All,
        PiPolicyArg::Singletons => PiPolicy::Singletons,
    };
    let workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let flags = [
        ("max_order", config.max_order.to_string()),
        ("pi_policy", config.pi_policy.to_string()),
    ];
    let mut doc = Document::new("corpus run", &flags);
    let report = run_corpus(&config, workers)?;
    for g in &report.groups {
        doc.push(g);
    }
    doc.footer.violations = report.violations;
    doc.summary("totals", &report.totals);
    doc.summary("coprime", &report.coprime);
    doc.summary("k_values", &report.k_values);
    doc.summary("skipped", &report.skipped);

    let mut text = format!(
        "{} groups (max order {}, pi policy {}), {} skipped\n\n",
        report.groups.len(),
        config.max_order,
        config.pi_policy,
        report.skipped.len()
    );
    text.push_str(&format!("{:<20} {:>9} {:>11}\n", "suite", "checked", "violations"));
    for (suite, t) in &report.totals {
        text.push_str(&format!("{suite:<20} {:>9} {:>11}\n", t.checked, t.violations));
    }
    text.push_str(&format!("\nk values seen: {:?}\n", report.k_values));
    for v in report.all_violations() {
        text.push_str(&format!("violation: {} [{}] {}\n", v.group, v.suite, v.detail));
    }
    for c in report.coprime.iter().filter(|c| !c.ok) {
        text.push_str(&format!("violation: coprime {} {}: {:?}\n", c.group, c.automorphism, c.error));
    }
    text.push('\n');
    text.push_str(&report.timing_table());
    text.push_str(&format!("\nviolations: {}\n", report.violations));
    Ok((doc, text))
}

#[derive(Serialize)]
struct GroupInfo {
    group: String,
    order: String,
    degree: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    generators: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    named: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    abelian: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solvable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    simple: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normal_subgroup_orders: Option<Vec<u64>>,
    symbolic: bool,
}

fn group_info(args: &GroupArgs) -> Result<(Document, String)> {
    let expr = load_expr(args)?;
    let mut doc = Document::new("group info", &group_flags(args));
    let info = match realize(&expr)? {
        Realized::Explicit(b) => {
            let g = &b.group;
            let normals = if g.order() <= Bounds::global().brute_normalizer {
                Some(normal_subgroups(g)?.iter().map(|a| a.order()).collect())
            } else {
                None
            };
            GroupInfo {
                group: expr.to_string(),
                order: g.order().to_string(),
                degree: g.degree().to_string(),
                generators: g.generator_strings(),
                named: b.named.iter().map(|(k, h)| (k.clone(), h.order())).collect(),
                abelian: Some(g.is_abelian()),
                solvable: Some(is_solvable(g)?),
                simple: Some(is_simple(g)?),
                normal_subgroup_orders: normals,
                symbolic: false,
            }
        }
        Realized::Symbolic(s) => GroupInfo {
            group: expr.to_string(),
            order: s.order.to_string(),
            degree: s.degree.to_string(),
            generators: Vec::new(),
            named: BTreeMap::from([("factor".to_string(), s.factor.group.order())]),
            abelian: None,
            solvable: None,
            simple: None,
            normal_subgroup_orders: None,
            symbolic: true,
        },
    };
    let mut text = String::new();
    flat_lines(&mut text, &serde_json::to_value(&info).expect("info serializes"));
    for g in &info.generators {
        text.push_str(&format!("generator {g}\n"));
    }
    for (k, v) in &info.named {
        text.push_str(&format!("subgroup {k} of order {v}\n"));
    }
    if let Some(n) = &info.normal_subgroup_orders {
        let parts: Vec<String> = n.iter().map(u64::to_string).collect();
        text.push_str(&format!("normal subgroup orders: {}\n", parts.join(" ")));
    }
    doc.push(info);
    Ok((doc, text))
}
