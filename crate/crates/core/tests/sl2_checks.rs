use std::collections::BTreeMap;

use envelope_core::certify::Verdict;
use envelope_core::diagrams::{catalan, Caps};
use envelope_core::homspace::HomBasis;
use envelope_core::sl2::rep::eval_morlin;
use envelope_core::sl2::*;
use envelope_core::Error;

fn caps() -> Caps {
    Caps::default()
}

#[test]
fn small_examples() {
    let d = tilting_decompose(1, 3, &caps()).unwrap();
    assert_eq!(d.multiplicities, BTreeMap::from([(1, 1)]));
    let d = tilting_decompose(2, 3, &caps()).unwrap();
    assert_eq!(d.multiplicities, BTreeMap::from([(0, 1), (2, 1)]));
    let d = tilting_decompose(3, 3, &caps()).unwrap();
    assert_eq!(d.multiplicities, BTreeMap::from([(1, 1), (3, 1)]));
}

#[test]
fn routes_agree_up_to_eight() {
    for p in [3, 5, 7] {
        for n in 0..=8 {
            let d = tilting_decompose(n, p, &caps()).unwrap();
            assert!(d.agrees(), "p = {p}, n = {n}");
            let total: i64 = d.summands.iter().map(|s| s.character.dim()).sum();
            assert_eq!(total, 1 << n);
        }
    }
}

// Σ m_i m_j dim Hom(T_i, T_j) must recover the Catalan dimension of End(V^{⊗n}).
#[test]
fn multiplicities_recover_catalan() {
    for p in [3, 5, 7] {
        for n in 0..=8 {
            let d = tilting_decompose(n, p, &caps()).unwrap();
            let mut sum = 0i64;
            for (&i, &a) in &d.multiplicities {
                for (&j, &b) in &d.multiplicities {
                    sum += a as i64 * b as i64 * hom_pairing(&tilting_character(i, p), &tilting_character(j, p));
                }
            }
            assert_eq!(sum as u128, catalan(n), "p = {p}, n = {n}");
        }
    }
}

#[test]
fn semisimple_range_is_weyl() {
    let d = tilting_decompose(6, 7, &caps()).unwrap();
    let weyl = tensor_power_character(6).weyl_coefficients();
    for (i, &c) in weyl.iter().enumerate() {
        assert_eq!(d.multiplicities.get(&i).copied().unwrap_or(0) as i64, c);
    }
}

#[test]
fn idempotents_are_orthogonal() {
    let p = 3;
    let d = tilting_decompose(5, p, &caps()).unwrap();
    for (a, x) in d.summands.iter().enumerate() {
        for (b, y) in d.summands.iter().enumerate() {
            let xy = x.idempotent.compose(&y.idempotent, p);
            if a == b {
                assert_eq!(xy, x.idempotent);
            } else {
                assert!(xy.is_zero());
            }
        }
    }
}

#[test]
fn steinberg_is_a_weyl_character() {
    for (p, j) in [(3u64, 1u32), (3, 2), (5, 1)] {
        let n = (p.pow(j) - 1) as usize;
        let t = top_tilting(n, p, &caps()).unwrap();
        assert_eq!(t.character, weyl_character(n));
        assert_eq!(t.character, simple_character(n, p));
    }
}

#[test]
fn realized_hom_dims_match_characters() {
    let p = 3;
    let cat = tilt_category(p).unwrap();
    let objs: Vec<_> = (0..=5).map(|i| tilting_object(&cat, i).unwrap()).collect();
    for a in &objs {
        for b in &objs {
            let hb = HomBasis::new(&cat, &a.realization, &b.realization).unwrap();
            assert_eq!(
                hb.dim() as i64,
                hom_pairing(&a.character, &b.character),
                "T_{} → T_{}",
                a.label,
                b.label
            );
        }
    }
}

#[test]
fn lifted_idempotent_evaluates_back() {
    let p = 3;
    let t = top_tilting(6, p, &caps()).unwrap();
    let e = rep::lift(&t.idempotent, p, &caps()).unwrap();
    assert_eq!(eval_morlin(&e, p), t.idempotent);
}

#[test]
fn linkage_gap() {
    for p in [3u64, 5, 7] {
        for j in [1u32, 2] {
            let a = p.pow(j) - 1;
            let bound = 4 * p.pow(j + 1);
            let gap = 2 * p.pow(j + 1) - p.pow(j) - 1;
            let orbit = linkage_orbit(a, p, bound);
            assert!(orbit.contains(&a));
            assert!(orbit.iter().all(|&x| x == a || x >= gap), "p = {p}, j = {j}: {orbit:?}");
            assert!(orbit.contains(&gap), "the gap bound is attained");
        }
        assert_eq!(linkage_orbit(p - 1, p, p).into_iter().collect::<Vec<_>>(), vec![p - 1]);
    }
}

#[test]
fn tilting_char_examples() {
    for i in [0, 4, 8] {
        let c = check_tilting_char_necessary(i, 2, 3).unwrap();
        assert_eq!(c.verdict, Verdict::Certified, "i = {i}");
    }
    assert!(matches!(check_tilting_char_necessary(9, 2, 3), Err(Error::Precondition(_))));
}

#[test]
fn st_lemma_guards_and_trivial_case() {
    assert!(matches!(verify_st_strongly_faithful(2, 2, caps()), Err(Error::Precondition(_))));
    let c = verify_st_strongly_faithful(3, 1, caps()).unwrap();
    assert_eq!(c.verdict, Verdict::Certified);
}

#[test]
fn envelope_sample_variants() {
    let q = TiltQuotient::new(3, 2, caps()).unwrap();
    let c = certify_envelope_in(&q, Some(vec![]), 4).unwrap();
    assert!(c.cases.is_empty());
    assert_eq!(c.verdict, c.sections[0].verdict);
    let unit = q.cat.unit();
    let id = q.cat.identity(&unit);
    let c = certify_envelope_in(&q, Some(vec![("id".into(), id)]), 4).unwrap();
    assert_eq!(c.cases[0].note.as_deref(), Some("split by 1"));
    assert_eq!(c.verdict, Verdict::Certified);
}
