use std::fmt::Write as _;

use semimed::checks::is_monotonic_m_independent_all_pairs;
use semimed::corpus::{self, NamedRule};
use semimed::{
    check, generalized_ck, strict_ck, verify_claims, verify_corollary1, verify_prop1, verify_prop3,
    verify_prop5, verify_theorem1, BoundRule, CheckReport, Flavor, GroundSet, Predicate,
    RelationSpace, SpaceOptions, Verification,
};
use serde_json::{json, Value};

use crate::args::{CheckArgs, Expect, KemenyArgs, ProfileArgs, RuleArgs, SpaceArgs, VerifyArgs, VerifyWhich};
use crate::input::{load_profile, load_rule, load_space, parse_tiebreak, CliError, CliResult, Loaded};

const PREORDERS: (Flavor, &str) = (Flavor::TotalPreorder, "x,y,z");
const LATTICE: (Flavor, &str) = (Flavor::Reflexive, "a,b,c");

/// What a command produced: a text rendering, its JSON twin and an exit code.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }

    /// Commands whose only format is JSON.
    fn json_only(json: Value, code: u8) -> Self {
        let text = serde_json::to_string_pretty(&json).expect("values serialize") + "\n";
        Output { text, json, code }
    }
}

fn element(loaded: &Loaded, i: usize) -> Value {
    json!({ "index": i, "element": loaded.render(i) })
}

fn elements(loaded: &Loaded, xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|&i| element(loaded, i)).collect())
}

fn rendered(loaded: &Loaded, xs: &[usize]) -> String {
    xs.iter().map(|&i| loaded.render(i)).collect::<Vec<_>>().join(", ")
}

pub fn space_info(args: &SpaceArgs) -> CliResult<Output> {
    let loaded = load_space(args, PREORDERS)?;
    let ctx = loaded.ctx();
    let report = ctx.report();
    let mut text = String::new();
    writeln!(text, "{}", loaded.describe()).unwrap();
    writeln!(text, "elements: {}", ctx.len()).unwrap();
    writeln!(text, "top: {}", loaded.render(ctx.top())).unwrap();
    match ctx.bottom() {
        Some(b) => writeln!(text, "bottom: {}", loaded.render(b)).unwrap(),
        None => writeln!(text, "bottom: none").unwrap(),
    }
    let flags = serde_json::to_value(report).expect("report serializes");
    for (k, v) in flags.as_object().expect("struct") {
        writeln!(text, "{}: {}", k.replace('_', " "), v).unwrap();
    }
    for (name, xs) in [
        ("meet-irreducibles", ctx.meet_irreducibles()),
        ("coatoms", ctx.coatoms()),
        ("join-irreducibles", ctx.join_irreducibles()),
        ("atoms", ctx.atoms()),
    ] {
        writeln!(text, "{name} ({}): {}", xs.len(), rendered(&loaded, xs)).unwrap();
    }
    let json = json!({
        "space": loaded.describe(),
        "elements": ctx.len(),
        "top": element(&loaded, ctx.top()),
        "bottom": ctx.bottom().map(|b| element(&loaded, b)),
        "structure": flags,
        "meet_irreducibles": elements(&loaded, ctx.meet_irreducibles()),
        "coatoms": elements(&loaded, ctx.coatoms()),
        "join_irreducibles": elements(&loaded, ctx.join_irreducibles()),
        "atoms": elements(&loaded, ctx.atoms()),
    });
    Ok(Output::ok(text, json))
}

pub fn space_enumerate(args: &SpaceArgs) -> CliResult<Output> {
    let loaded = load_space(args, PREORDERS)?;
    let ctx = loaded.ctx();
    let mut text = String::new();
    let mut rows = Vec::new();
    for i in 0..ctx.len() {
        writeln!(text, "{i}\t{}\trank {}", loaded.render(i), ctx.rank(i)).unwrap();
        let mut row = json!({ "index": i, "element": loaded.render(i), "rank": ctx.rank(i) });
        if let Some(s) = loaded.space() {
            row["pairs"] = serde_json::to_value(s.element_json(i).pairs).expect("pairs serialize");
        }
        rows.push(row);
    }
    Ok(Output::ok(text, Value::Array(rows)))
}

pub fn rule_eval(space: &SpaceArgs, rule: &RuleArgs, profile: &ProfileArgs) -> CliResult<Output> {
    let loaded = load_space(space, PREORDERS)?;
    let spec = load_rule(&loaded, rule)?;
    let p = load_profile(&loaded, profile)?;
    let out = BoundRule::new(loaded.target(), &spec, p.len())?.eval(&p)?;
    let text = format!("{}\n", loaded.render(out));
    let json = json!({
        "rule": spec.name(),
        "profile": elements(&loaded, &p),
        "outcome": element(&loaded, out),
    });
    Ok(Output::ok(text, json))
}

pub fn rule_table(space: &SpaceArgs, rule: &RuleArgs, n: usize) -> CliResult<Output> {
    let loaded = load_space(space, PREORDERS)?;
    let spec = load_rule(&loaded, rule)?;
    let table = BoundRule::new(loaded.target(), &spec, n)?.tabulate()?;
    let json = serde_json::to_value(&table).expect("table serializes");
    Ok(Output::json_only(json, 0))
}

pub fn check_cmd(args: &CheckArgs) -> CliResult<Output> {
    let loaded = load_space(&args.space, PREORDERS)?;
    let spec = load_rule(&loaded, &args.rule)?;
    let table = BoundRule::new(loaded.target(), &spec, args.n)?.tabulate()?;
    let predicates: Vec<Predicate> = if args.predicates.is_empty() {
        Predicate::all()
            .into_iter()
            .filter(|p| loaded.space().is_some() || !needs_space(*p))
            .collect()
    } else {
        args.predicates
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?
    };
    let mut reports: Vec<CheckReport> = Vec::new();
    for p in predicates {
        let r = if args.full_pairs && p == Predicate::MonotonicMIndependent {
            is_monotonic_m_independent_all_pairs(loaded.ctx(), &table)?
        } else {
            check(loaded.target(), &table, p)?
        };
        reports.push(r);
    }
    let unexpected = reports.iter().any(|r| match args.expect {
        Expect::Holds => !r.verdict,
        Expect::Fails => r.verdict,
        Expect::Any => false,
    });
    let json = serde_json::to_value(&reports).expect("reports serialize");
    Ok(Output::json_only(json, unexpected as u8))
}

fn needs_space(p: Predicate) -> bool {
    matches!(p, Predicate::Axiom(a) if a.needs_space())
}

fn as_space(loaded: &Loaded) -> CliResult<&RelationSpace> {
    loaded
        .space()
        .ok_or_else(|| CliError::Input("this harness needs a relation space, not a poset".into()))
}

fn corpus_for(loaded: &Loaded, args: &VerifyArgs) -> CliResult<Vec<NamedRule>> {
    Ok(corpus::theorem1_corpus(loaded.ctx(), args.n, args.random, args.seed)?)
}

fn builtin_claim_spaces() -> CliResult<Vec<RelationSpace>> {
    [(Flavor::TotalPreorder, 3), (Flavor::TotalPreorder, 4), (Flavor::Reflexive, 3)]
        .into_iter()
        .map(|(f, m)| Ok(RelationSpace::new(f, GroundSet::letters(m)?, SpaceOptions::default())?))
        .collect()
}

fn space_given(s: &SpaceArgs) -> bool {
    s.flavor.is_some() || s.ground.is_some() || s.space_file.is_some()
}

pub fn verify(which: &VerifyWhich) -> CliResult<Output> {
    let v: Verification = match which {
        VerifyWhich::Theorem1(a) => {
            let loaded = load_space(&a.space, PREORDERS)?;
            verify_theorem1(loaded.ctx(), &corpus_for(&loaded, a)?)?
        }
        VerifyWhich::Corollary1(a) => {
            let loaded = load_space(&a.space, PREORDERS)?;
            verify_corollary1(loaded.ctx(), &corpus_for(&loaded, a)?)?
        }
        VerifyWhich::Prop1(a) => {
            let loaded = load_space(&a.space, PREORDERS)?;
            let ctx = loaded.ctx();
            let mut rules = corpus_for(&loaded, a)?;
            let families = corpus::quota_families(ctx, a.n, 200, a.seed);
            let (quota, dropped) = corpus::sponsorship_rules(ctx, a.n, families)?;
            rules.extend(quota);
            let mut v = verify_prop1(ctx, a.n, &rules)?;
            v.notes.push(format!("{dropped} quota families with undefined meets skipped"));
            v
        }
        VerifyWhich::Prop3(a) => {
            let loaded = load_space(&a.space, PREORDERS)?;
            verify_prop3(as_space(&loaded)?, a.n, a.sample, a.seed)?
        }
        VerifyWhich::Prop5(a) => {
            let loaded = load_space(&a.space, LATTICE)?;
            verify_prop5(as_space(&loaded)?, a.n, a.sample, a.seed)?
        }
        VerifyWhich::Claims(a) => {
            if space_given(&a.space) {
                let loaded = load_space(&a.space, PREORDERS)?;
                verify_claims(&[as_space(&loaded)?])?
            } else {
                let spaces = builtin_claim_spaces()?;
                verify_claims(&spaces.iter().collect::<Vec<_>>())?
            }
        }
    };
    let mut text = format!(
        "{}: {} (expected to {})\n",
        v.name,
        if v.passed { "PASS" } else { "FAIL" },
        if v.expected { "pass" } else { "fail" }
    );
    for note in &v.notes {
        writeln!(text, "  {note}").unwrap();
    }
    for item in v.failures() {
        writeln!(text, "  failed: {}", item.subject).unwrap();
        if let Some(w) = &item.witness {
            writeln!(text, "    {}", serde_json::to_string(w).expect("witness serializes")).unwrap();
        }
    }
    let code = (!v.as_expected()) as u8;
    let json = serde_json::to_value(&v).expect("verification serializes");
    Ok(Output { text, json, code })
}

pub fn kemeny(args: &KemenyArgs) -> CliResult<Output> {
    let loaded = load_space(&args.space, PREORDERS)?;
    let ctx = loaded.ctx();
    let p = load_profile(&loaded, &args.profile)?;
    let tiebreak = parse_tiebreak(&loaded, args.tiebreak.as_deref())?;
    let out = if args.strict {
        strict_ck(as_space(&loaded)?, &p, &tiebreak)?
    } else {
        generalized_ck(ctx, &p, &tiebreak)?
    };
    let minimizers = ctx.metric_median_set(&p)?;
    let remoteness = ctx.remoteness(out, &p);
    let text = format!(
        "{}\nremoteness: {remoteness}\nminimizers: {}\n",
        loaded.render(out),
        rendered(&loaded, &minimizers)
    );
    let json = json!({
        "outcome": element(&loaded, out),
        "remoteness": remoteness,
        "minimizers": elements(&loaded, &minimizers),
        "profile": elements(&loaded, &p),
    });
    Ok(Output::ok(text, json))
}
