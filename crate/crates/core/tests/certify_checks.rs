use envelope_core::certify::*;
use envelope_core::{Category, ExtensionField, Field, FlavorKind, Rationals};

fn brauer(t: i64) -> Category<Rationals> {
    Category::new(Rationals, FlavorKind::Brauer, Rationals.from_int(t))
}

fn walled(t: i64) -> Category<Rationals> {
    Category::new(Rationals, FlavorKind::WalledBrauer, Rationals.from_int(t))
}

#[test]
fn e_of_u_has_two_terms() {
    let cat = brauer(3);
    let u = cat.word("+").unwrap();
    let e = make_e(&cat, &u);
    let terms = &e.entry(0, 0).terms;
    assert_eq!(terms.len(), 2);
    let mut coeffs: Vec<String> = terms.values().map(|c| Rationals.render(c)).collect();
    coeffs.sort();
    assert_eq!(coeffs, vec!["-1", "1"]);
    let g = make_gamma(&cat, &u, None).unwrap();
    assert!(cat.compose(&g.q, &g.p).unwrap().is_zero());
}

#[test]
fn e_of_unit_is_zero() {
    let cat = brauer(3);
    assert!(make_e(&cat, &cat.unit()).is_zero());
}

#[test]
fn witnesses_verify() {
    for t in [1, 3, 5] {
        let cat = brauer(t);
        let u = cat.word("+").unwrap();
        witness_ev_split(&cat, &u).unwrap();
        witness_e_split(&cat, &u).unwrap();
        witness_dim_invertible(&cat, &u).unwrap();
    }
    for t in [2, 3] {
        let cat = walled(t);
        let v = cat.word("+").unwrap();
        witness_ev_split(&cat, &v).unwrap();
        witness_e_split(&cat, &v).unwrap();
        witness_dim_invertible(&cat, &v).unwrap();
    }
}

#[test]
fn dim_witness_needs_nonzero_dim() {
    let cat = brauer(0);
    let u = cat.word("+").unwrap();
    assert!(witness_dim_invertible(&cat, &u).is_err());
}

#[test]
fn dim_witness_for_vv_at_three() {
    let cat = walled(3);
    let vv = cat.word("++").unwrap();
    let w = witness_dim_invertible(&cat, &vv).unwrap();
    assert_eq!(Rationals.render(&w.dim), "9");
}

#[test]
fn explicit_witness_passes_solver_path() {
    let cat = brauer(3);
    let u = cat.word("+").unwrap();
    let [(f, g), _] = witness_ev_split(&cat, &u).unwrap();
    assert!(verify_split(&cat, &f, &g).unwrap());
    assert!(split_solve(&cat, &f).unwrap().is_some());
}

#[test]
fn split_solve_trivial() {
    let cat = brauer(3);
    let x = cat.word("++").unwrap();
    let id = cat.identity(&x);
    let g = split_solve(&cat, &id).unwrap().unwrap();
    assert!(verify_split(&cat, &id, &g).unwrap());
    let z = cat.zero_morphism(&x, &x);
    assert!(split_solve(&cat, &z).unwrap().is_some());
}

#[test]
fn e_split_search_finds_splitter() {
    let cat = brauer(3);
    let u = cat.word("+").unwrap();
    let e = make_e(&cat, &u);
    let (found, tried) = split_search(&cat, &e, 2, &[]).unwrap();
    let found = found.expect("𝓔 splits at degree 2");
    assert!(found.splitter.degree() <= 2);
    assert!(!tried.is_empty());
}

#[test]
fn faithful_controls() {
    let cat = brauer(3);
    let u = cat.word("+").unwrap();
    let fam = words_up_to(&cat, 3);
    assert_eq!(check_faithful(&cat, &u, &fam).unwrap().verdict, Verdict::Certified);
    assert_eq!(check_faithful(&cat, &cat.unit(), &fam).unwrap().verdict, Verdict::Certified);
    let z = cat.zero_object();
    let c = check_faithful(&cat, &z, &[cat.unit()]).unwrap();
    assert_eq!(c.verdict, Verdict::Refuted);
}

#[test]
fn strongly_faithful_u3() {
    let cat = brauer(3);
    let u = cat.word("+").unwrap();
    let fam = words_up_to(&cat, 4);
    let c = check_strongly_faithful_homform(&cat, &u, &fam).unwrap();
    assert_eq!(c.verdict, Verdict::Certified, "{}", c.to_json());
    let c = check_strongly_faithful_homform(&cat, &cat.unit(), &fam).unwrap();
    assert_eq!(c.verdict, Verdict::Certified);
}

#[test]
fn mnform_vt_at_two() {
    let cat = walled(2);
    let v = cat.word("+").unwrap();
    let pairs = vec![(cat.unit(), cat.unit())];
    let c = check_strongly_faithful_mnform(&cat, &v, &pairs).unwrap();
    assert_eq!(c.verdict, Verdict::Certified);
}

#[test]
fn restricted_counterexample() {
    let k = ExtensionField::new(&[-2, 0, 1]).unwrap();
    let cat = Category::new(k.clone(), FlavorKind::WalledBrauer, k.zero()).restrict_end_unit().unwrap();
    let v = cat.word("+").unwrap();
    let fam = words_up_to(&cat, 4);
    let c = check_faithful(&cat, &v, &fam).unwrap();
    assert_eq!(c.verdict, Verdict::Certified);
    let c = check_strongly_faithful_homform(&cat, &v, &[cat.unit()]).unwrap();
    assert_eq!(c.verdict, Verdict::Refuted);
    assert_eq!(c.cases[0].defect, 1);
    let c = check_strongly_faithful_mnform(&cat, &v, &[(cat.unit(), cat.unit())]).unwrap();
    assert_eq!(c.verdict, Verdict::Refuted);
    let case = &c.cases[0];
    assert_eq!(case.dims, vec![1, 2, 4]);
    assert_eq!(case.ranks, vec![1, 0]);
    assert_eq!(case.defect, 1);
}

#[test]
fn gamma_xx_split_exact() {
    for t in [0, 1, 3, 5] {
        let cat = brauer(t);
        let u = cat.word("+").unwrap();
        let c = check_gamma_xx_splitexact(&cat, &u).unwrap();
        assert_eq!(c.verdict, Verdict::Certified, "O_{t}");
    }
    for t in [0, 2, 3] {
        let cat = walled(t);
        let v = cat.word("+").unwrap();
        let c = check_gamma_xx_splitexact(&cat, &v).unwrap();
        assert_eq!(c.verdict, Verdict::Certified, "GL_{t}");
    }
    let cat = brauer(3);
    assert_eq!(check_gamma_xx_splitexact(&cat, &cat.unit()).unwrap().verdict, Verdict::Certified);
}

#[test]
fn summand_lemma() {
    let cat = brauer(3);
    let u = cat.word("+").unwrap();
    let (z, incl, proj) = canonical_summand(&cat, &u);
    let c = check_lem_eo(&cat, &u, &u, &z, &incl, &proj).unwrap();
    assert_eq!(c.verdict, Verdict::Certified);
    assert!(!c.cases[0].ranks.is_empty());
}

#[test]
fn certificate_roundtrip() {
    let cat = brauer(3);
    let u = cat.word("+").unwrap();
    let c = witness_certificate(&cat, &u).unwrap();
    let s = c.to_json();
    let back: Certificate = serde_json::from_str(&s).unwrap();
    assert_eq!(back, c);
    assert_eq!(back.schema, "v1");
}
