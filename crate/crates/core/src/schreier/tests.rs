use super::symbolic::normalize_equation;
use super::*;
use crate::engine::{find_compositions, irr_count, is_trivial};
use crate::group::brute_force_extensions;

fn z(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n, "a")
}

fn cyclic_spec(a: FiniteGroup, psi: Automorphism, a0: Elem) -> ExtensionSpec {
    let b = BPresentation::cyclic(2, "x").unwrap();
    ExtensionSpec::new(a, b, vec![psi], vec![a0]).unwrap()
}

fn rules(es: &ExtensionSystem) -> Vec<String> {
    (0..es.system.len()).map(|i| es.system.render_rule(i)).collect()
}

#[test]
fn action_on_word_examples() {
    let a = z(3);
    let spec = cyclic_spec(a.clone(), Automorphism::inversion(&a).unwrap(), 0);
    let x = Word::from_ids(&[0]);
    let aa = a.lookup("a").unwrap();
    assert_eq!(action_on_word(&spec, aa, &Word::empty()).unwrap(), aa);
    assert_eq!(action_on_word(&spec, aa, &x).unwrap(), a.inv(aa));
    assert_eq!(action_on_word(&spec, aa, &x.concat(&x)).unwrap(), aa);
    assert_eq!(
        action_on_word(&spec, aa, &Word::from_ids(&[4])),
        Err(SchreierError::UnmappedLetter(4))
    );
}

#[test]
fn z4_and_klein_systems() {
    let a = z(2);
    let id = Automorphism::identity(&a);
    let es = build_extension_system(&cyclic_spec(a.clone(), id.clone(), 1)).unwrap();
    assert_eq!(rules(&es), vec!["a a -> 1", "x x -> a", "a x -> x a"]);
    assert_eq!(irr_count(&es.system, 3), 4);

    let al = es.system.alphabet();
    let p = |s: &str| Polynomial::monomial(al.parse_word(s).unwrap());
    assert_eq!(reduce(&p("a x"), &es.system).unwrap().remainder, p("x a"));
    let t = reduce(&p("x x x x"), &es.system).unwrap();
    assert_eq!(t.remainder, Polynomial::one());
    assert_eq!(t.steps.len(), 3);

    let es = build_extension_system(&cyclic_spec(a, id, 0)).unwrap();
    assert_eq!(rules(&es), vec!["a a -> 1", "x x -> 1", "a x -> x a"]);
    assert_eq!(irr_count(&es.system, 3), 4);
}

#[test]
fn cyclic_self_composition() {
    let a = z(2);
    let spec = cyclic_spec(a.clone(), Automorphism::identity(&a), 1);
    let es = build_extension_system(&spec).unwrap();
    let al = es.system.alphabet();
    let c = find_compositions(&es.system)
        .into_iter()
        .find(|c| c.f == 1 && c.g == 1)
        .unwrap();
    assert_eq!(al.render(&c.w), "x x x");
    assert_eq!(c.value.len(), 2);
    let (trivial, _) = is_trivial(&c, &es.system).unwrap();
    assert!(trivial);

    let a3 = z(3);
    let spec = cyclic_spec(a3.clone(), Automorphism::inversion(&a3).unwrap(), 1);
    let es = build_extension_system(&spec).unwrap();
    let c = find_compositions(&es.system)
        .into_iter()
        .find(|c| c.f == 4 && c.g == 4)
        .unwrap();
    let (trivial, trace) = is_trivial(&c, &es.system).unwrap();
    assert!(!trivial);
    // x(a0 − a0^x) with a0 = a, a0^x = a2
    let al = es.system.alphabet();
    let mut expected = Polynomial::monomial(al.parse_word("x a").unwrap());
    expected = expected.sub(&Polynomial::monomial(al.parse_word("x a2").unwrap()));
    assert!(trace.remainder == expected || trace.remainder == expected.neg());
}

#[test]
fn action_condition_examples() {
    let a = z(3);
    let spec = cyclic_spec(a.clone(), Automorphism::inversion(&a).unwrap(), 1);
    assert!(check_action_condition(&spec).iter().all(ActionCheck::holds));
    let a2 = z(2);
    for a0 in [0, 1] {
        let spec = cyclic_spec(a2.clone(), Automorphism::identity(&a2), a0);
        assert!(check_action_condition(&spec).iter().all(ActionCheck::holds));
    }
}

#[test]
fn check_extension_examples() {
    let a2 = z(2);
    let r = check_extension(&cyclic_spec(a2.clone(), Automorphism::identity(&a2), 1)).unwrap();
    assert!(r.passed && r.routes_agree());

    let a3 = z(3);
    let inv = Automorphism::inversion(&a3).unwrap();
    let r = check_extension(&cyclic_spec(a3.clone(), inv.clone(), 1)).unwrap();
    assert!(!r.passed && r.routes_agree());
    assert!(r.action_failures.is_empty());
    assert!(!r.composition_failures.is_empty());
    assert_eq!(r.derived_failures, vec!["a0 = a0^{x} fails: ξ = a, ζ = a2"]);

    let r = check_extension(&cyclic_spec(a3, inv, 0)).unwrap();
    assert!(r.passed && r.routes_agree());
}

#[test]
fn extension_groups() {
    let a2 = z(2);
    let g = extension_group(&cyclic_spec(a2.clone(), Automorphism::identity(&a2), 1)).unwrap();
    assert_eq!(g.group.fingerprint().order_profile, vec![1, 2, 4, 4]);
    assert!(g.structure().passed());
    let g = extension_group(&cyclic_spec(a2.clone(), Automorphism::identity(&a2), 0)).unwrap();
    assert_eq!(g.group.fingerprint().order_profile, vec![1, 2, 2, 2]);

    let a3 = z(3);
    let inv = Automorphism::inversion(&a3).unwrap();
    let g = extension_group(&cyclic_spec(a3.clone(), inv.clone(), 0)).unwrap();
    assert_eq!(g.group.order(), 6);
    assert!(!g.group.is_abelian());
    assert!(g.structure().passed());
    assert_eq!(
        extension_group(&cyclic_spec(a3, inv, 1)).unwrap_err(),
        SchreierError::CheckFailed
    );
}

#[test]
fn trivial_data_gives_direct_product() {
    let a = z(2);
    let bg = FiniteGroup::cyclic(3, "b");
    let b = BPresentation::from_table(&bg, None).unwrap();
    let g = extension_group(&ExtensionSpec::trivial(a.clone(), b)).unwrap();
    assert!(g.group.is_isomorphic(&FiniteGroup::direct_product(&a, &bg)));
    let s = g.structure();
    assert!(s.passed());
    assert_eq!(s.quotient_isomorphic_to_b, Some(true));
}

#[test]
fn derive_cyclic() {
    for n in [2, 3, 5] {
        let b = BPresentation::cyclic(n, "x").unwrap();
        let d = derive_conditions(&b).unwrap();
        assert_eq!(d.equation_strings(), vec!["a0 = a0^{x}"]);
        let power = vec!["x"; n].join(" ");
        assert_eq!(d.action_strings(), vec![format!("a a0 = a0 a^{{{power}}}")]);
        assert!(d.shape_failures.is_empty());
        assert_eq!(d.composite_compositions, n - 2);
    }
}

#[test]
fn derive_table_gives_cocycle_identity() {
    let bg = FiniteGroup::cyclic(3, "b");
    let b = BPresentation::from_table(&bg, None).unwrap();
    let d = derive_conditions(&b).unwrap();
    assert!(d.shape_failures.is_empty());
    // (b,b'b'')(b',b'') = (bb',b'')(b,b')^{b''}, identity arguments dropped
    let name = |e: Elem| bg.name(e).to_string();
    let factor = |x: Elem, y: Elem, sup: Option<Elem>| -> Option<String> {
        if x == 0 || y == 0 || y == bg.inv(x) && x != y {
            return None;
        }
        Some(match sup {
            Some(s) => format!("({},{})^{{{}}}", name(x), name(y), name(s)),
            None => format!("({},{})", name(x), name(y)),
        })
    };
    let product = |parts: Vec<Option<String>>| {
        let v: Vec<String> = parts.into_iter().flatten().collect();
        if v.is_empty() {
            "1".to_string()
        } else {
            v.join(" ")
        }
    };
    let mut expected = Vec::new();
    for x in bg.non_identity() {
        for y in bg.non_identity() {
            for w in bg.non_identity() {
                let lhs = product(vec![factor(x, bg.mul(y, w), None), factor(y, w, None)]);
                let rhs = product(vec![factor(bg.mul(x, y), w, None), factor(x, y, Some(w))]);
                if lhs != rhs {
                    expected.push(normalize_equation(&lhs, &rhs));
                }
            }
        }
    }
    let mut got = d.equation_strings();
    got.sort();
    expected.sort();
    expected.dedup();
    assert_eq!(got, expected);
}

#[test]
fn forced_factors_rejected() {
    let bg = FiniteGroup::cyclic(3, "b");
    let b = BPresentation::from_table(&bg, None).unwrap();
    // relation 1 is b·b2 = 1
    assert!(b.is_forced(1) && !b.is_forced(0));
    let a = z(2);
    let action = vec![Automorphism::identity(&a); 2];
    let err = ExtensionSpec::new(a.clone(), b.clone(), action.clone(), vec![0, 1, 0, 0]);
    assert!(matches!(err, Err(SchreierError::ForcedFactor(_))));
    assert!(ExtensionSpec::new(a, b, action, vec![1, 0, 0, 0]).is_ok());

    // an involution's relation x x = 1 stays free
    let b2 = BPresentation::from_table(&FiniteGroup::cyclic(2, "b"), None).unwrap();
    assert!(!b2.is_forced(0));
}

#[test]
fn enumeration_matches_oracle() {
    for (a, bg, count) in [(z(2), FiniteGroup::cyclic(2, "b"), Some(2)), (z(3), FiniteGroup::cyclic(2, "b"), Some(4)), (z(2), FiniteGroup::cyclic(3, "b"), None)] {
        let b = BPresentation::from_table(&bg, None).unwrap();
        let found: Vec<TableExtension> = enumerate_extensions(&a, &b, 1 << 20)
            .unwrap()
            .iter()
            .map(ExtensionCandidate::to_table_extension)
            .collect();
        let oracle = brute_force_extensions(&a, &bg, 1 << 20).unwrap();
        assert_eq!(found, oracle);
        if let Some(c) = count {
            assert_eq!(found.len(), c);
        }
    }
}

#[test]
fn guard_and_letter_clash() {
    let a = z(2);
    let b = BPresentation::from_table(&FiniteGroup::cyclic(3, "b"), None).unwrap();
    assert!(matches!(enumerate_extensions(&a, &b, 3), Err(SchreierError::GuardExceeded(_, 3))));
    let clash = BPresentation::cyclic(2, "a").unwrap();
    let spec = ExtensionSpec::trivial(a, clash);
    assert!(matches!(build_extension_system(&spec), Err(SchreierError::LetterClash(_))));
}

#[test]
fn non_gsb_presentations_rejected() {
    let al = Alphabet::uniform(["x", "y"], LetterClass::Y).unwrap();
    let w = |s: &str| al.parse_word(s).unwrap();
    let err = BPresentation::new(
        al.clone(),
        OrderSpec::deg_lex(2),
        vec![(w("x y"), w("y")), (w("y x"), w("x"))],
        vec![],
        vec![None; 2],
    );
    assert!(matches!(err, Err(SchreierError::NotGsb(_, _))));
    let err = BPresentation::new(
        al.clone(),
        OrderSpec::deg_lex(2),
        vec![(w("x x"), w("1")), (w("x x y"), w("y"))],
        vec![],
        vec![None; 2],
    );
    assert!(matches!(err, Err(SchreierError::NotMinimal(_, _))));
}
