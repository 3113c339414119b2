//! End-to-end acceptance checks. Runs as a plain binary so that the
//! one-line verdict per criterion is always printed; exits nonzero if any
//! criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gsb_core::engine::{
    irr_count, irr_enumerate, reduce, reduce_randomized, shirshov_complete, ConditionIIWitness, Limits, RewriteSystem,
};
use gsb_core::group::{
    brute_force_extensions, Automorphism, Elem, FiniteGroup, PartialIso, SubgroupWithCosets, TableExtension,
};
use gsb_core::hnn::{
    build_hnn_extension_system, check_extension_hnn, check_h_conditions, hnn_normal_forms, model_ball_size,
    DirectProductModel, HFamily, HnnAction, HnnExtensionSpec, HnnFactors, HnnSpec, Sampling,
};
use gsb_core::order::{certify_monomial, random_word, OrderSpec};
use gsb_core::schreier::{
    check_extension, derive_conditions, enumerate_extensions, extension_group, normalize_equation, BPresentation,
    ExtensionCandidate, ExtensionSpec,
};
use gsb_core::word::{Alphabet, Letter, LetterClass, Polynomial, Word};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn z(n: usize, g: &str) -> FiniteGroup {
    FiniteGroup::cyclic(n, g)
}

fn letters(al: &Alphabet) -> Vec<Letter> {
    al.letters().collect()
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let al = Alphabet::uniform(["x", "y", "z"], LetterClass::Y).map_err(|e| e.to_string())?;
    let r = certify_monomial(&OrderSpec::deg_lex(3), &letters(&al), 1000, &mut rng);
    ensure!(r.passed() && r.exhaustive_max_len >= 4, "deg-lex not certified: {r:?}");
    ensure!(r.random_trials >= 1000, "deg-lex ran only {} random trials", r.random_trials);

    let tal = Alphabet::from_letters([("a", LetterClass::A), ("x", LetterClass::Y), ("y", LetterClass::Y)])
        .map_err(|e| e.to_string())?;
    let tower = OrderSpec::tower_for(&tal).map_err(|e| e.to_string())?;
    let r = certify_monomial(&tower, &letters(&tal), 1000, &mut rng);
    ensure!(r.passed() && r.exhaustive_max_len >= 4, "tower not certified: {r:?}");

    // H = Z4 with C = D = {1, h2}: the C-order and the absolute order differ.
    let h = z(4, "h");
    let c = SubgroupWithCosets::new(&h, vec![0, 2], vec![0, 1]).map_err(|e| e.to_string())?;
    let phi = PartialIso::identity_on(&h, &c);
    let base = HnnSpec::new(h, c.clone(), c, phi, None).map_err(|e| e.to_string())?;
    let espec = HnnExtensionSpec::trivial(base, z(2, "a"));
    let es = build_hnn_extension_system(&espec).map_err(|e| e.to_string())?;
    let ord = es.system.order();
    let r = certify_monomial(ord, &letters(es.system.alphabet()), 1000, &mut rng);
    ensure!(r.total_order_ok, "HNN order is not total on short words");
    let w = r.witness.ok_or("no non-monomiality witness for the HNN order")?;
    ensure!(
        ord.greater(&w.greater, &w.smaller)
            && !ord.greater(&w.greater.wrap(&w.left, &w.right), &w.smaller.wrap(&w.left, &w.right)),
        "recorded HNN witness does not replay"
    );
    let al = es.system.alphabet();
    Ok(format!(
        "deg-lex and tower certified; HNN witness {} > {} lost under context ({}, {})",
        al.render(&w.greater),
        al.render(&w.smaller),
        al.render(&w.left),
        al.render(&w.right)
    ))
}

/// `S3` as permutations of `{0, 1, 2}` with `x = (0 1)`, `y = (1 2)`.
fn s3_value(w: &Word) -> [usize; 3] {
    let mut p = [0, 1, 2];
    for l in w.letters() {
        let (i, j) = if l.index() == 0 { (0, 1) } else { (1, 2) };
        p = p.map(|v| if v == i { j } else if v == j { i } else { v });
    }
    p
}

fn s3_basis() -> Result<RewriteSystem, String> {
    let al = Alphabet::uniform(["x", "y"], LetterClass::Y).map_err(|e| e.to_string())?;
    let w = |s: &str| al.parse_word(s).unwrap();
    let polys = vec![
        Polynomial::binomial(w("x x"), w("1")),
        Polynomial::binomial(w("y y"), w("1")),
        Polynomial::binomial(w("y x y"), w("x y x")),
    ];
    let sys = RewriteSystem::new(al.clone(), OrderSpec::deg_lex(2), polys).map_err(|e| e.to_string())?;
    let report = shirshov_complete(&sys, Limits::default()).map_err(|e| e.to_string())?;
    ensure!(report.is_complete(), "S3 completion stopped: {:?}", report.status);
    Ok(report.basis)
}

fn criterion_2() -> Outcome {
    let basis = s3_basis()?;
    let count = irr_count(&basis, 6);
    ensure!(count == 6, "irreducible words: {count}");

    // Brute-force the monoid quotient: every word of length <= 6 has a
    // value in S3, and its normal form must be the unique irreducible word
    // with that value.
    let irr = irr_enumerate(&basis, 6);
    let by_value: HashMap<[usize; 3], &Word> = irr.iter().map(|w| (s3_value(w), w)).collect();
    ensure!(by_value.len() == irr.len(), "two irreducible words share a value");
    let all = gsb_core::order::words_up_to(&letters(basis.alphabet()), 6);
    let values: BTreeSet<[usize; 3]> = all.iter().map(s3_value).collect();
    ensure!(values.len() == 6, "S3 model has {} values", values.len());
    for w in &all {
        let nf = reduce(&Polynomial::monomial(w.clone()), &basis).map_err(|e| e.to_string())?.remainder;
        let expected = Polynomial::monomial(by_value[&s3_value(w)].clone());
        ensure!(nf == expected, "normal form of {} disagrees with the model", basis.render_word(w));
    }
    Ok(format!("{} rules, 6 irreducible words, {} words checked against the model", basis.len(), all.len()))
}

fn cyclic_spec(a: &FiniteGroup, n: usize, psi: Automorphism, a0: Elem) -> Result<ExtensionSpec, String> {
    let b = BPresentation::cyclic(n, "x").map_err(|e| e.to_string())?;
    ExtensionSpec::new(a.clone(), b, vec![psi], vec![a0]).map_err(|e| e.to_string())
}

fn criterion_3(passing: &mut Vec<(ExtensionSpec, FiniteGroup)>) -> Outcome {
    for n in [2, 3, 4, 5] {
        let b = BPresentation::cyclic(n, "x").map_err(|e| e.to_string())?;
        let d = derive_conditions(&b).map_err(|e| e.to_string())?;
        let power = vec!["x"; n].join(" ");
        ensure!(d.equation_strings() == ["a0 = a0^{x}"], "n = {n}: {:?}", d.equation_strings());
        ensure!(
            d.action_strings() == [format!("a a0 = a0 a^{{{power}}}")],
            "n = {n}: {:?}",
            d.action_strings()
        );
    }

    let a2 = z(2, "a");
    let spec = cyclic_spec(&a2, 2, Automorphism::identity(&a2), 1)?;
    let r = check_extension(&spec).map_err(|e| e.to_string())?;
    ensure!(r.passed && r.routes_agree(), "Z2, id, a0 = a failed");
    let g = extension_group(&spec).map_err(|e| e.to_string())?;
    ensure!(g.group.fingerprint().order_profile == [1, 2, 4, 4], "profile {:?}", g.group.fingerprint().order_profile);
    passing.push((spec, z(2, "x")));

    let a3 = z(3, "a");
    let inv = Automorphism::inversion(&a3).map_err(|e| e.to_string())?;
    let spec = cyclic_spec(&a3, 2, inv.clone(), 1)?;
    let r = check_extension(&spec).map_err(|e| e.to_string())?;
    ensure!(!r.passed && r.routes_agree(), "Z3, inversion, a0 = a was not rejected by both routes");
    ensure!(
        r.derived_failures == ["a0 = a0^{x} fails: ξ = a, ζ = a2"],
        "witness {:?}",
        r.derived_failures
    );

    let spec = cyclic_spec(&a3, 2, inv, 0)?;
    let r = check_extension(&spec).map_err(|e| e.to_string())?;
    ensure!(r.passed && r.routes_agree(), "Z3, inversion, a0 = 1 failed");
    let g = extension_group(&spec).map_err(|e| e.to_string())?;
    ensure!(g.group.order() == 6 && !g.group.is_abelian(), "expected a nonabelian group of order 6");
    ensure!(g.group.is_isomorphic(&FiniteGroup::symmetric3()), "group is not S3");
    passing.push((spec, z(2, "x")));
    Ok("two conditions derived for n = 2..5; Z4, rejected witness a0 = a0^{x}, S3 as expected".into())
}

fn criterion_4(passing: &mut Vec<(ExtensionSpec, FiniteGroup)>) -> Outcome {
    let kernels = [
        ("Z2", z(2, "a")),
        ("Z3", z(3, "a")),
        ("Z4", z(4, "a")),
        ("V4", FiniteGroup::klein_four()),
    ];
    let quotients = [("Z2", z(2, "x")), ("Z3", z(3, "x"))];
    let mut summary = Vec::new();
    for (a_name, a) in &kernels {
        for (b_name, bg) in &quotients {
            let b = BPresentation::from_table(bg, None).map_err(|e| e.to_string())?;
            let found = enumerate_extensions(a, &b, 1 << 24).map_err(|e| e.to_string())?;
            let table: Vec<TableExtension> = found.iter().map(ExtensionCandidate::to_table_extension).collect();
            let oracle = brute_force_extensions(a, bg, 1 << 24).map_err(|e| e.to_string())?;
            ensure!(table == oracle, "({a_name}, {b_name}): enumeration differs from oracle");
            for c in &found {
                passing.push((c.to_spec(a, &b).map_err(|e| e.to_string())?, bg.clone()));
            }
            summary.push(format!("({a_name},{b_name}):{}", found.len()));
        }
    }
    let count = |a: &FiniteGroup| -> Result<usize, String> {
        let b = BPresentation::from_table(&z(2, "x"), None).map_err(|e| e.to_string())?;
        Ok(enumerate_extensions(a, &b, 1 << 24).map_err(|e| e.to_string())?.len())
    };
    let (c22, c32) = (count(&kernels[0].1)?, count(&kernels[1].1)?);
    ensure!(c22 == 2 && c32 == 4, "counts (Z2,Z2) = {c22}, (Z3,Z2) = {c32}");
    Ok(format!("enumeration equals oracle; counts {}", summary.join(" ")))
}

fn gen_name(i: usize, sign: i8) -> String {
    if sign > 0 {
        format!("x{i}")
    } else {
        format!("X{i}")
    }
}

fn criterion_5() -> Outcome {
    let b = BPresentation::free_abelian(3).map_err(|e| e.to_string())?;
    let d = derive_conditions(&b).map_err(|e| e.to_string())?;
    ensure!(d.shape_failures.is_empty(), "shape failures: {:?}", d.shape_failures);

    // The five known condition families for free abelian groups, written out for
    // p > q > r over three generators.
    let g = |i: usize, s: i8| gen_name(i, s);
    let f = |p: usize, e: i8, q: usize, dl: i8| format!("({},{})", g(p, e), g(q, dl));
    let sup = |base: String, i: usize, s: i8| format!("{base}^{{{}}}", g(i, s));
    let signs = [1i8, -1];
    let pairs = [(2, 1), (3, 1), (3, 2)];
    let mut equations = BTreeSet::new();
    let mut actions = BTreeSet::new();
    let (p, q, r) = (3, 2, 1);
    for e in signs {
        for dl in signs {
            for gm in signs {
                let lhs = format!("{} {} {}", f(p, e, q, dl), sup(f(p, e, r, gm), q, dl), f(q, dl, r, gm));
                let rhs = format!("{} {} {}", sup(f(q, dl, r, gm), p, e), f(p, e, r, gm), sup(f(p, e, q, dl), r, gm));
                equations.insert(normalize_equation(&lhs, &rhs));
            }
        }
    }
    for (p, q) in pairs {
        for e in signs {
            for dl in signs {
                let two = format!("{} {}", f(p, e, q, -dl), sup(f(p, e, q, dl), q, -dl));
                equations.insert(normalize_equation(&two, "1"));
                let three = format!("{} {}", sup(f(p, e, q, dl), p, -e), f(p, -e, q, dl));
                equations.insert(normalize_equation(&three, "1"));
                let lhs = format!("a^{{{} {}}} {}", g(q, dl), g(p, e), f(p, e, q, dl));
                let rhs = format!("{} a^{{{} {}}}", f(p, e, q, dl), g(p, e), g(q, dl));
                actions.insert(normalize_equation(&lhs, &rhs));
            }
        }
    }
    for r in 1..=3 {
        for e in signs {
            actions.insert(normalize_equation(&format!("a^{{{} {}}}", g(r, e), g(r, -e)), "a"));
        }
    }
    let got_eq: BTreeSet<String> = d.equation_strings().into_iter().collect();
    let got_act: BTreeSet<String> = d.action_strings().into_iter().collect();
    ensure!(got_eq == equations, "equations differ: missing {:?}, extra {:?}",
        equations.difference(&got_eq).collect::<Vec<_>>(), got_eq.difference(&equations).collect::<Vec<_>>());
    ensure!(got_act == actions, "actions differ: missing {:?}, extra {:?}",
        actions.difference(&got_act).collect::<Vec<_>>(), got_act.difference(&actions).collect::<Vec<_>>());
    Ok(format!("{} equations and {} action identities match the five families", got_eq.len(), got_act.len()))
}

fn criterion_6(passing: &[(ExtensionSpec, FiniteGroup)]) -> Outcome {
    for (spec, bg) in passing {
        let g = extension_group(spec).map_err(|e| e.to_string())?;
        let s = g.structure();
        ensure!(s.order == spec.a().order() * bg.order(), "|G| = {} for |A| = {}", s.order, spec.a().order());
        ensure!(s.passed(), "structure check failed: {s:?}");
        ensure!(s.a_normal, "A is not normal");
        ensure!(g.quotient_group.is_isomorphic(bg), "quotient is not isomorphic to B");
        ensure!(s.quotient_isomorphic_to_b != Some(false), "quotient differs from B's table");
    }
    Ok(format!("{} passing specs: orders, normality and quotients verified", passing.len()))
}

fn criterion_7() -> Outcome {
    let (a, h) = (z(2, "a"), z(2, "h"));
    let base = HnnSpec::central(h.clone());
    let espec = HnnExtensionSpec::trivial(base.clone(), a.clone());
    let exact = check_h_conditions(&espec);
    ensure!(exact.passed() && exact.families.len() == 9, "trivial data fails {:?}", exact.failing_families());
    let sampling = Sampling { samples: 500, max_context_len: 4, seed: 0, ..Sampling::default() };
    let v = check_extension_hnn(&espec, sampling).map_err(|e| e.to_string())?;
    ensure!(v.condition_i.passed && v.condition_ii.passed && v.passed, "sampled conditions fail on trivial data");

    let model = DirectProductModel { a: a.clone(), h: h.clone() };
    let nf = hnn_normal_forms(&espec, 6, &model).map_err(|e| e.to_string())?;
    ensure!(nf.distinct_values == nf.words.len(), "normal forms collide in the model");
    let gens = build_hnn_extension_system(&espec).map_err(|e| e.to_string())?.roles().to_vec();
    let ball = model_ball_size(&model, &gens, 6);
    ensure!(nf.words.len() == ball, "{} normal forms but {ball} model elements", nf.words.len());

    let mut factors = HnnFactors::trivial(&a, 2);
    factors.t[1] = 1;
    let bad = HnnExtensionSpec::new(base, a.clone(), HnnAction::trivial(&a, 2), factors).map_err(|e| e.to_string())?;
    let exact = check_h_conditions(&bad);
    ensure!(exact.family(HFamily::CancelTTInv).failures.len() == 1, "cancellation identity not violated");
    let v = check_extension_hnn(&bad, sampling).map_err(|e| e.to_string())?;
    ensure!(!v.passed && v.routes_agree(), "routes disagree on the violating data");
    ensure!(
        v.condition_ii.witnesses.iter().any(|w| matches!(w, ConditionIIWitness::Nontrivial { .. })
            && HFamily::of_roles(&w.composition().w.letters().iter().map(|&l| {
                build_hnn_extension_system(&bad).unwrap().role(l)
            }).collect::<Vec<_>>()) == Some(HFamily::CancelTTInv)),
        "sampled route found no nontrivial h t T composition"
    );
    Ok(format!(
        "nine families pass; (I)/(II) pass on 500 samples; {} normal forms injective; violation caught by both routes",
        nf.words.len()
    ))
}

fn criterion_8(specs: &[(ExtensionSpec, FiniteGroup)]) -> Outcome {
    let mut bases: Vec<(String, RewriteSystem)> = vec![("S3".into(), s3_basis()?)];
    let fa = BPresentation::free_abelian(3).map_err(|e| e.to_string())?;
    bases.push(("free abelian".into(), fa.system().clone()));
    for (i, (spec, _)) in specs.iter().enumerate().step_by(4) {
        let es = gsb_core::schreier::build_extension_system(spec).map_err(|e| e.to_string())?;
        bases.push((format!("extension {i}"), es.system));
    }
    let h = z(2, "h");
    let espec = HnnExtensionSpec::trivial(HnnSpec::central(h), z(2, "a"));
    bases.push(("HNN".into(), build_hnn_extension_system(&espec).map_err(|e| e.to_string())?.system));

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut words = 0;
    for (name, sys) in &bases {
        let ls = letters(sys.alphabet());
        for _ in 0..100 {
            let w = random_word(&mut rng, &ls, 10);
            let f = Polynomial::monomial(w.clone());
            let fixed = reduce(&f, sys).map_err(|e| e.to_string())?.remainder;
            for s in 0..10 {
                let mut strategy = ChaCha8Rng::seed_from_u64(1000 + s);
                let other = reduce_randomized(&f, sys, &mut strategy, 100_000).map_err(|e| e.to_string())?;
                ensure!(other == fixed, "{name}: strategy {s} disagrees on {}", sys.render_word(&w));
            }
            words += 1;
        }
    }
    Ok(format!("{} bases, {words} words, 10 strategies each agree", bases.len()))
}

fn main() -> ExitCode {
    let mut passing = Vec::new();
    let results: Vec<(usize, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3(&mut passing)),
        (4, criterion_4(&mut passing)),
        (5, criterion_5()),
        (6, criterion_6(&passing)),
        (7, criterion_7()),
        (8, criterion_8(&passing)),
    ];
    let mut failed = 0;
    for (n, r) in &results {
        match r {
            Ok(msg) => println!("criterion {n}: PASS - {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL - {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
