//! The seven commands, each producing a [`Report`].

use gsb_core::engine::{
    irr_count, irr_enumerate, reduce_with_limit, shirshov_complete, CompletionReport, CompletionStatus, EngineError,
    Limits, RewriteSystem,
};
use gsb_core::group::{brute_force_extensions, FiniteGroup, TableExtension};
use gsb_core::hnn::{
    check_extension_hnn, hnn_normal_forms, DirectProductModel, FreeProductModel, HnnAction, HnnError,
    HnnExtensionSpec, HnnFactors, HnnModel, Sampling, DEFAULT_SAMPLING_GUARD,
};
use gsb_core::order::OrderVariant;
use gsb_core::schreier::{
    check_extension_with, derive_conditions, enumerate_extensions, extension_group, ExtensionCandidate,
    SchreierError,
};
use gsb_core::word::Polynomial;

use crate::document::{serialize_document, InputDocument};
use crate::report::{Report, Verdict};
use crate::resolve::{
    b_presentation, b_table_group, extension_spec, hnn_extension_spec, kernel, render_automorphism, rewrite_system,
    Groups,
};
use crate::CliError;

/// Default bound on normal-form length for listings.
pub const DEFAULT_MAX_LEN: usize = 6;
/// Default bound on candidate count for enumeration.
pub const DEFAULT_ENUMERATION_GUARD: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Complete,
    Nf,
    Irr,
    CheckSchreier,
    Derive,
    Enumerate,
    CheckHnn,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Complete => "complete",
            Command::Nf => "nf",
            Command::Irr => "irr",
            Command::CheckSchreier => "check-schreier",
            Command::Derive => "derive",
            Command::Enumerate => "enumerate",
            Command::CheckHnn => "check-hnn",
        }
    }
}

/// Command-line settings. Each limit overrides the `[limits]` stanza.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub max_rules: Option<usize>,
    pub max_degree: Option<usize>,
    pub max_steps: Option<usize>,
    pub max_len: Option<usize>,
    pub samples: Option<usize>,
    pub context_len: Option<usize>,
    pub seed: Option<u64>,
    pub guard: Option<u128>,
    /// Words to normalize with `nf`.
    pub words: Vec<String>,
    /// Compare enumeration with the brute-force oracle.
    pub cross_check: bool,
    /// Drop one enumerated extension before the cross-check.
    pub inject_fault: bool,
}

/// Limits after merging the options, the file and the defaults.
struct Settings {
    limits: Limits,
    max_len: usize,
    sampling: Sampling,
    guard: Option<u128>,
}

impl Settings {
    fn new(doc: &InputDocument, o: &Options) -> Self {
        let l = &doc.limits;
        let d = Limits::default();
        let s = Sampling::default();
        let guard = o.guard.or(l.guard);
        Settings {
            limits: Limits {
                max_rules: o.max_rules.or(l.max_rules).unwrap_or(d.max_rules),
                max_degree: o.max_degree.or(l.max_degree).unwrap_or(d.max_degree),
                max_steps: o.max_steps.or(l.max_steps).unwrap_or(d.max_steps),
            },
            max_len: o.max_len.or(l.max_len).unwrap_or(DEFAULT_MAX_LEN),
            sampling: Sampling {
                samples: o.samples.or(l.samples).unwrap_or(s.samples),
                max_context_len: o.context_len.or(l.context_len).unwrap_or(s.max_context_len),
                seed: o.seed.or(l.seed).unwrap_or(s.seed),
                guard: guard.unwrap_or(DEFAULT_SAMPLING_GUARD),
            },
            guard,
        }
    }
}

fn engine_err(e: EngineError) -> CliError {
    match e {
        EngineError::StepLimit(_) => CliError::Limit(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn schreier_err(e: SchreierError) -> CliError {
    match e {
        SchreierError::Engine(inner) => engine_err(inner),
        SchreierError::GuardExceeded(..) => CliError::Limit(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn hnn_err(e: HnnError) -> CliError {
    match e {
        HnnError::Engine(inner) => engine_err(inner),
        HnnError::SamplingGuard(..) => CliError::Limit(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn variant(v: OrderVariant) -> &'static str {
    match v {
        OrderVariant::DegLex => "deg-lex",
        OrderVariant::Tower => "tower",
        OrderVariant::Hnn => "hnn",
    }
}

fn rules(sys: &RewriteSystem) -> Vec<String> {
    (0..sys.len()).map(|i| sys.render_rule(i)).collect()
}

/// Runs `command` on the document text.
pub fn run(command: Command, text: &str, options: &Options) -> Result<Report, CliError> {
    let doc = crate::document::parse_document(text)?;
    let settings = Settings::new(&doc, options);
    let mut report = Report::new(command.name(), serialize_document(&doc), settings.sampling.seed);
    let groups = Groups::from_document(&doc)?;
    match command {
        Command::Complete => complete(&doc, &groups, &settings, &mut report)?,
        Command::Nf => nf(&doc, &groups, &settings, options, &mut report)?,
        Command::Irr => irr(&doc, &groups, &settings, &mut report)?,
        Command::CheckSchreier => check_schreier(&doc, &groups, &mut report)?,
        Command::Derive => derive(&doc, &groups, &mut report)?,
        Command::Enumerate => enumerate(&doc, &groups, &settings, options, &mut report)?,
        Command::CheckHnn => check_hnn(&doc, &groups, &settings, &mut report)?,
    }
    Ok(report)
}

fn run_completion(
    doc: &InputDocument,
    groups: &Groups,
    settings: &Settings,
    report: &mut Report,
) -> Result<CompletionReport, CliError> {
    let sys = rewrite_system(doc, groups)?;
    let c = shirshov_complete(&sys, settings.limits).map_err(engine_err)?;
    report.fact("order", variant(sys.order().variant()));
    report.fact("input rules", sys.len());
    match &c.status {
        CompletionStatus::Complete => report.fact("status", "complete"),
        CompletionStatus::HitLimit(what) => {
            report.fact("status", format!("stopped at limit: {what}"));
            report.verdict = Verdict::LimitExceeded;
        }
    }
    report.fact("basis rules", c.basis.len());
    report.fact("rules added", c.rules_added);
    report.fact("compositions checked", c.compositions_checked);
    report.fact("compositions pruned", c.compositions_pruned);
    report.fact("unchanged", if rules(&c.basis) == rules(&sys) { "yes" } else { "no" });
    report.rules = rules(&c.basis);
    Ok(c)
}

fn complete(doc: &InputDocument, groups: &Groups, settings: &Settings, report: &mut Report) -> Result<(), CliError> {
    let c = run_completion(doc, groups, settings, report)?;
    if c.is_complete() {
        report.fact(
            &format!("irreducible words (len <= {})", settings.max_len),
            irr_count(&c.basis, settings.max_len),
        );
    }
    Ok(())
}

fn nf(
    doc: &InputDocument,
    groups: &Groups,
    settings: &Settings,
    options: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    if options.words.is_empty() {
        return Err(CliError::Input("nf needs at least one --word".into()));
    }
    let c = run_completion(doc, groups, settings, report)?;
    let al = c.basis.alphabet();
    for text in &options.words {
        let w = al.parse_word(text).map_err(|e| CliError::Input(e.to_string()))?;
        let r = reduce_with_limit(&Polynomial::monomial(w.clone()), &c.basis, settings.limits.max_steps)
            .map_err(engine_err)?;
        report.normal_forms.push(format!("{} = {}", al.render(&w), al.render_poly(&r.remainder)));
    }
    Ok(())
}

fn irr(doc: &InputDocument, groups: &Groups, settings: &Settings, report: &mut Report) -> Result<(), CliError> {
    let c = run_completion(doc, groups, settings, report)?;
    if c.is_complete() {
        let words = irr_enumerate(&c.basis, settings.max_len);
        report.fact(&format!("irreducible words (len <= {})", settings.max_len), words.len());
        report.normal_forms = words.iter().map(|w| c.basis.alphabet().render(w)).collect();
    }
    Ok(())
}

fn group_table(g: &FiniteGroup) -> Vec<String> {
    g.elements()
        .map(|x| {
            let row: Vec<&str> = g.elements().map(|y| g.name(g.mul(x, y))).collect();
            format!("{} | {}", g.name(x), row.join(", "))
        })
        .collect()
}

fn describe(g: &FiniteGroup) -> String {
    let f = g.fingerprint();
    format!(
        "order {}, {}, center {}, element orders {:?}",
        f.order,
        if f.abelian { "abelian" } else { "nonabelian" },
        f.center_size,
        f.order_profile
    )
}

fn check_schreier(doc: &InputDocument, groups: &Groups, report: &mut Report) -> Result<(), CliError> {
    let spec = extension_spec(doc, groups)?;
    let derived = derive_conditions(spec.b()).map_err(schreier_err)?;
    let r = check_extension_with(&spec, Some(&derived)).map_err(schreier_err)?;
    let a = spec.a();
    report.fact("|A|", a.order());
    report.fact("relations of B", spec.b().num_relations());
    report.fact("action identities checked", r.action_checked);
    report.fact("compositions checked", r.compositions_checked);
    report.fact("rewriting route", if r.passed { "pass" } else { "fail" });
    report.fact(
        "derived conditions",
        match r.derived_passed {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "not evaluated",
        },
    );
    report.fact("routes agree", r.routes_agree());
    let b = spec.b();
    for f in &r.action_failures {
        report.witnesses.push(format!(
            "{} a^{{v}} = a^{{h_v}} {} fails at a = {}: {} != {}",
            b.factor_name(f.relation),
            b.factor_name(f.relation),
            a.name(f.a),
            a.name(f.lhs),
            a.name(f.rhs)
        ));
    }
    for c in &r.composition_failures {
        report
            .witnesses
            .push(format!("composition at `{}` of `{}` and `{}` leaves {}", c.w, c.f, c.g, c.remainder));
    }
    report.witnesses.extend(r.derived_failures.iter().cloned());
    if !r.passed || !r.routes_agree() {
        report.fail();
        return Ok(());
    }
    match extension_group(&spec) {
        Ok(g) => {
            let s = g.structure();
            report.fact("group", describe(&g.group));
            report.fact("A normal", s.a_normal);
            report.fact("quotient", describe(&g.quotient_group));
            report.fact("structure checks", if s.passed() { "pass" } else { "fail" });
            report.table = group_table(&g.group);
            if !s.passed() {
                report.fail();
                report.witnesses.push(format!("structure check failed: {s:?}"));
            }
        }
        Err(SchreierError::InfiniteQuotient(n)) => {
            report.fact("group", format!("not built: B has normal forms of length {n}"));
        }
        Err(e) => return Err(schreier_err(e)),
    }
    Ok(())
}

fn derive(doc: &InputDocument, groups: &Groups, report: &mut Report) -> Result<(), CliError> {
    let b = b_presentation(doc, groups)?;
    let d = derive_conditions(&b).map_err(schreier_err)?;
    let eqs = d.equation_strings();
    let acts = d.action_strings();
    report.fact("relations", b.num_relations());
    report.fact("composition equations", eqs.len());
    report.fact("action identities", acts.len());
    report.fact("formally trivial compositions", d.trivial_compositions);
    report.fact("compositions implied by subwords", d.composite_compositions);
    report.rules = (0..b.num_relations()).map(|i| b.system().render_rule(i)).collect();
    report.equations = eqs.into_iter().chain(acts).collect();
    if !d.shape_failures.is_empty() {
        report.witnesses = d.shape_failures.clone();
        report.fail();
    }
    Ok(())
}

fn enumerate(
    doc: &InputDocument,
    groups: &Groups,
    settings: &Settings,
    options: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    let a = kernel(doc, groups)?;
    let b = b_presentation(doc, groups)?;
    let guard = settings.guard.unwrap_or(DEFAULT_ENUMERATION_GUARD);
    let found = enumerate_extensions(a, &b, guard).map_err(schreier_err)?;
    let al = b.alphabet();
    let (mut abelian, mut nonabelian) = (0, 0);
    for c in &found {
        let action: Vec<String> = al
            .letters()
            .map(|l| format!("{}: {}", al.name(l), render_automorphism(a, &c.action[l.index()])))
            .collect();
        let factors: Vec<String> = c
            .factors
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != a.identity())
            .map(|(i, &v)| format!("{} = {}", b.factor_name(i), a.name(v)))
            .collect();
        let group = match extension_group(&c.to_spec(a, &b).map_err(schreier_err)?) {
            Ok(g) => {
                if g.group.is_abelian() {
                    abelian += 1;
                } else {
                    nonabelian += 1;
                }
                describe(&g.group)
            }
            Err(SchreierError::InfiniteQuotient(_)) => "infinite".into(),
            Err(e) => return Err(schreier_err(e)),
        };
        let factors = if factors.is_empty() { "all 1".into() } else { factors.join(", ") };
        report.rows.push(format!("action [{}]; factors [{factors}]; {group}", action.join(", ")));
    }
    report.fact("extensions", found.len());
    report.fact("abelian groups", abelian);
    report.fact("nonabelian groups", nonabelian);
    if options.cross_check {
        let bg = b_table_group(doc, groups)?
            .ok_or_else(|| CliError::Input("--cross-check needs a table presentation of B".into()))?;
        let oracle = brute_force_extensions(a, bg, guard).map_err(|e| CliError::Limit(e.to_string()))?;
        let mut mine: Vec<TableExtension> = found.iter().map(ExtensionCandidate::to_table_extension).collect();
        if options.inject_fault {
            mine.pop();
            report.fact("injected fault", "dropped the last enumerated extension");
        }
        if mine == oracle {
            report.fact("oracle", format!("agrees ({} extensions)", oracle.len()));
        } else {
            report.fact("oracle", "disagrees");
            report.witnesses.push(format!(
                "enumeration gives {} extensions, brute force gives {}",
                mine.len(),
                oracle.len()
            ));
            report.fail();
        }
    }
    Ok(())
}

fn has_trivial_data(espec: &HnnExtensionSpec) -> bool {
    let n = espec.base().h().order();
    *espec.action() == HnnAction::trivial(espec.a(), n) && *espec.factors() == HnnFactors::trivial(espec.a(), n)
}

fn model_check<M: HnnModel>(
    espec: &HnnExtensionSpec,
    max_len: usize,
    model: &M,
    name: &str,
    report: &mut Report,
) -> Result<(), CliError> {
    match hnn_normal_forms(espec, max_len, model) {
        Ok(nf) => {
            report.fact("model", format!("{name}: injective on {} normal forms", nf.words.len()));
            report.normal_forms = nf.words;
            Ok(())
        }
        Err(HnnError::ModelCollision(u, v)) => {
            report.fact("model", format!("{name}: collision"));
            report.witnesses.push(format!("normal forms `{u}` and `{v}` have the same model value"));
            report.fail();
            Ok(())
        }
        Err(e) => Err(hnn_err(e)),
    }
}

fn check_hnn(doc: &InputDocument, groups: &Groups, settings: &Settings, report: &mut Report) -> Result<(), CliError> {
    let espec = hnn_extension_spec(doc, groups)?;
    let v = check_extension_hnn(&espec, settings.sampling).map_err(hnn_err)?;
    let a = espec.a();
    for f in &v.h_conditions.families {
        let status = if f.passed() {
            format!("pass, {} checked", f.instances)
        } else {
            format!("FAIL, {} of {} checked", f.failures.len(), f.instances)
        };
        report.fact(&format!("exact {}", f.family), status);
        for x in &f.failures {
            report
                .witnesses
                .push(format!("{} fails at {}: {} != {}", f.family, x.instance, x.lhs, x.rhs));
        }
    }
    let sampled = |passed: bool| if passed { "no witness (evidence)" } else { "witness found" };
    report.fact("condition I, sampled", sampled(v.condition_i.passed));
    report.fact("condition II, sampled", sampled(v.condition_ii.passed));
    report.fact(
        "samples per check",
        format!("{} contexts up to length {}", settings.sampling.samples, settings.sampling.max_context_len),
    );
    report.fact("routes agree", v.routes_agree());
    let es = gsb_core::hnn::build_hnn_extension_system(&espec).map_err(hnn_err)?;
    let al = es.system.alphabet();
    if let Some(w) = &v.condition_i.witness {
        report.witnesses.push(format!(
            "condition I fails for `{}` in context ({}, {})",
            es.system.render_rule(w.rule),
            al.render(&w.left),
            al.render(&w.right)
        ));
    }
    for w in &v.condition_ii.witnesses {
        report
            .witnesses
            .push(format!("condition II: composition at `{}` is not trivial", al.render(&w.composition().w)));
    }
    report.witnesses.extend(v.other_failures.iter().cloned());
    report.rules = rules(&es.system);
    if !v.passed || !v.routes_agree() {
        report.fail();
        return Ok(());
    }
    let base = espec.base();
    let h = base.h();
    let whole = base.c().members().len() == h.order() && base.phi().pairs().iter().all(|(x, y)| x == y);
    let free = base.c().members().len() == 1 && base.d().members().len() == 1;
    let max_len = settings.max_len;
    match (has_trivial_data(&espec), whole, free) {
        (true, true, _) => {
            let model = DirectProductModel { a: a.clone(), h: h.clone() };
            model_check(&espec, max_len, &model, "A x H x Z", report)?;
        }
        (true, _, true) => {
            let model = FreeProductModel { a: a.clone(), h: h.clone() };
            model_check(&espec, max_len, &model, "A x (H * Z)", report)?;
        }
        _ => {
            report.fact("model", "none for this data; normal forms listed unchecked");
            report.normal_forms = irr_enumerate(&es.system, max_len).iter().map(|w| al.render(w)).collect();
        }
    }
    Ok(())
}
