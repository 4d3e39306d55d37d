//! End-to-end acceptance run: one line per criterion, nonzero exit on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use envelope_core::certify::*;
use envelope_core::diagrams::{Caps, FlavorKind, Word};
use envelope_core::ideals::{factor_through_slice, slice_dims};
use envelope_core::scalars::parse_rational;
use envelope_core::sl2::*;
use envelope_core::{Category, ExtensionField, Field, Rationals};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn rational_cat(kind: FlavorKind, t: &str) -> Category<Rationals> {
    let f = Rationals;
    let t = f.from_rational(&parse_rational(t).unwrap()).unwrap();
    Category::new(f, kind, t)
}

fn witness_set() -> Vec<(String, Category<Rationals>)> {
    let mut out = Vec::new();
    for t in ["1", "3", "5"] {
        out.push((format!("U in O_{t}"), rational_cat(FlavorKind::Brauer, t)));
    }
    for t in ["2", "3"] {
        out.push((format!("V in GL_{t}"), rational_cat(FlavorKind::WalledBrauer, t)));
    }
    out
}

// ---------------------------------------------------------------- criteria

fn c1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let kinds = [FlavorKind::Brauer, FlavorKind::WalledBrauer, FlavorKind::Partition, FlavorKind::TemperleyLieb];
    for kind in kinds {
        for _ in 0..1000 {
            let inst = common::seeded_instance(&mut rng);
            catch_unwind(AssertUnwindSafe(|| common::check_axioms(kind, &inst)))
                .map_err(|_| format!("{kind}: axiom failure on {inst:?}"))?;
        }
    }
    Ok("snakes, σ² = id, interchange, naturality, associativity on 1000 instances per flavor".into())
}

fn c2() -> Outcome {
    catch_unwind(common::check_hom_counts).map_err(|_| "closed count mismatch".to_string())?;
    Ok("Brauer (2n−1)!!, TL Catalan, walled Brauer k!, partition Bell for all boundaries ≤ 8".into())
}

fn c3() -> Outcome {
    for (name, cat) in witness_set() {
        let x = cat.word("+").map_err(err)?;
        witness_ev_split(&cat, &x).map_err(|e| format!("{name}: ev split: {e}"))?;
        witness_e_split(&cat, &x).map_err(|e| format!("{name}: 𝓔 split: {e}"))?;
        witness_dim_invertible(&cat, &x).map_err(|e| format!("{name}: dimension witness: {e}"))?;
    }
    Ok("ev, 𝓔 and dimension witnesses verify for U in O_1,3,5 and V in GL_2,3".into())
}

fn random_rationals() -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut out = Vec::new();
    while out.len() < 3 {
        let d: i64 = rng.gen_range(2..=9);
        let n: i64 = rng.gen_range(-30..=30);
        if n % d != 0 {
            let q = parse_rational(&format!("{n}/{d}")).unwrap();
            out.push(envelope_core::scalars::render_rational(&q));
        }
    }
    out
}

fn strong_faithfulness_certificates() -> Result<Vec<Certificate>, String> {
    let mut ts: Vec<String> = vec!["2".into(), "3".into()];
    ts.extend(random_rationals());
    let mut out = Vec::new();
    for t in &ts {
        for kind in [FlavorKind::Brauer, FlavorKind::WalledBrauer] {
            let cat = rational_cat(kind, t);
            let x = cat.word("+").map_err(err)?;
            let fam = words_up_to(&cat, 4);
            out.push(check_strongly_faithful_homform(&cat, &x, &fam).map_err(err)?);
        }
    }
    Ok(out)
}

fn c4(store: &mut Vec<String>) -> Outcome {
    let certs = strong_faithfulness_certificates()?;
    for c in &certs {
        ensure(c.verdict == Verdict::Certified, format!("not certified: {}", c.claim))?;
    }
    store.extend(certs.iter().map(|c| c.to_json()));
    Ok(format!("{} certificates at degree 4, t ∈ {{2, 3}} ∪ {:?}", certs.len(), random_rationals()))
}

fn c5() -> Outcome {
    let k = ExtensionField::new(&[-2, 0, 1]).map_err(err)?;
    let cat = Category::new(k.clone(), FlavorKind::WalledBrauer, k.zero()).restrict_end_unit().map_err(err)?;
    let v = cat.word("+").map_err(err)?;
    let fam = words_up_to(&cat, 4);
    let faithful = check_faithful(&cat, &v, &fam).map_err(err)?;
    ensure(faithful.verdict == Verdict::Certified, "V_0 should be faithful")?;
    let c = check_strongly_faithful_mnform(&cat, &v, &[(cat.unit(), cat.unit())]).map_err(err)?;
    ensure(c.verdict == Verdict::Refuted, "V_0 should not be strongly faithful")?;
    let case = &c.cases[0];
    ensure(case.dims == vec![1, 2, 4], format!("dims {:?}", case.dims))?;
    ensure(case.defect == 1, format!("defect {}", case.defect))?;
    Ok("faithful; sequence k → K → K S_2 has dims [1, 2, 4] and a 1-dimensional defect".into())
}

fn c6() -> Outcome {
    let mut set = witness_set();
    set.push(("U in O_0".into(), rational_cat(FlavorKind::Brauer, "0")));
    set.push(("V in GL_0".into(), rational_cat(FlavorKind::WalledBrauer, "0")));
    for (name, cat) in &set {
        let x = cat.word("+").map_err(err)?;
        let c = check_gamma_xx_splitexact(cat, &x).map_err(err)?;
        ensure(c.verdict == Verdict::Certified, format!("{name}: not split exact"))?;
    }
    Ok(format!("X∨ ⊗ X ⊗ γ_X split exact for {} objects including t = 0", set.len()))
}

fn c7() -> Outcome {
    for p in [3u64, 5, 7] {
        for j in [1u32, 2] {
            let a = p.pow(j) - 1;
            let gap = 2 * p.pow(j + 1) - p.pow(j) - 1;
            let orbit = linkage_orbit(a, p, 4 * p.pow(j + 1));
            ensure(orbit.contains(&a), format!("p={p} j={j}: orbit misses a"))?;
            ensure(
                orbit.iter().all(|&x| x == a || x >= gap),
                format!("p={p} j={j}: element inside the gap in {orbit:?}"),
            )?;
        }
    }
    Ok("Steinberg weights p^j − 1 have no linked weight below 2p^{j+1} − p^j − 1".into())
}

fn c8() -> Outcome {
    let caps = Caps::default();
    for n in 0..=8 {
        let d = tilting_decompose(n, 3, &caps).map_err(err)?;
        ensure(d.agrees(), format!("n = {n}: routes disagree"))?;
    }
    let two = tilting_decompose(2, 3, &caps).map_err(err)?;
    let three = tilting_decompose(3, 3, &caps).map_err(err)?;
    ensure(two.multiplicities.keys().copied().collect::<Vec<_>>() == vec![0, 2], "V^2")?;
    ensure(three.multiplicities.keys().copied().collect::<Vec<_>>() == vec![1, 3], "V^3")?;
    let eight = tilting_decompose(8, 3, &caps).map_err(err)?;
    Ok(format!("idempotent route = character route for n ≤ 8; V^8 at p = 3: {:?}", eight.multiplicities))
}

fn c9() -> Outcome {
    let q = TiltQuotient::new(3, 2, Caps::default()).map_err(err)?;
    let amb = tilt_category(3).map_err(err)?;
    let mids: Vec<_> = (8..=10)
        .map(|k| tilting_object(&amb, k).map(|t| t.realization))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let mut nonzero = Vec::new();
    for m in 0..=8 {
        for n in 0..=8 {
            if (m + n) % 2 == 1 {
                continue;
            }
            let a = amb.object(&Word::plain(m)).map_err(err)?;
            let b = amb.object(&Word::plain(n)).map_err(err)?;
            let j = q.cat.word_slice(&Word::plain(m), &Word::plain(n)).map_err(err)?.len();
            let f = factor_through_slice(&amb, &a, &b, &mids).map_err(err)?.dim();
            ensure(j == f, format!("({m}, {n}): principal {j}, factoring {f}"))?;
            if j > 0 {
                nonzero.push(format!("J(V^{m}, V^{n}) = {j}"));
            }
        }
    }
    let unit = q.cat.unit();
    for i in 0..8 {
        let t = q.tilting(i).map_err(err)?;
        let d = slice_dims(&q.cat, &unit, &t.realization).map_err(err)?;
        ensure(d.dim_ideal == 0, format!("J_2(1, T_{i}) = {}", d.dim_ideal))?;
    }
    Ok(format!("<id St_2> = factoring through T_8..T_10 on words ≤ 8 ({}); J_2(1, T_i) = 0 for i < 8", nonzero.join(", ")))
}

fn headline() -> Result<Certificate, String> {
    verify_st_strongly_faithful(3, 2, Caps::default()).map_err(err)
}

fn envelope() -> Result<Certificate, String> {
    certify_envelope_hypothesis_sl2(3, 2, None, 4, Caps::default()).map_err(err)
}

fn c10(store: &mut Vec<String>) -> Outcome {
    let c = headline()?;
    let labels: Vec<&str> = c.cases.iter().filter(|k| !k.dims.is_empty()).map(|k| k.object.as_str()).collect();
    ensure(labels == ["T_0", "T_1", "T_2", "T_3", "T_4", "T_5", "T_6", "T_7"], format!("cases {labels:?}"))?;
    ensure(c.verdict == Verdict::Certified, format!("failure at {:?}", c.first_failure()))?;
    store.push(c.to_json());
    Ok("C(γ_{St_1}, T_i) exact for i = 0..7 in Tilt SL_2 / J_2 at p = 3".into())
}

fn c11(store: &mut Vec<String>) -> Outcome {
    let c = envelope()?;
    ensure(c.verdict == Verdict::Certified, format!("failure at {:?}", c.first_failure()))?;
    store.push(c.to_json());
    Ok(format!("St_1 strongly faithful and splits all {} basis morphisms T_i → T_j, i, j ≤ 4", c.cases.len()))
}

fn c12(first: &[String]) -> Outcome {
    let mut again: Vec<String> = strong_faithfulness_certificates()?.iter().map(|c| c.to_json()).collect();
    again.push(headline()?.to_json());
    again.push(envelope()?.to_json());
    ensure(again.len() == first.len(), "certificate count changed")?;
    for (a, b) in first.iter().zip(&again) {
        ensure(a == b, "certificate bytes differ between runs")?;
    }
    Ok(format!("{} certificates byte-identical on rerun", first.len()))
}

fn main() {
    let mut store = Vec::new();
    let mut failed = 0;
    let mut run = |n: usize, what: &str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {n:>2} PASS  {what}: {detail} [{secs:.1}s]"),
            Err(e) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {what}: {e} [{secs:.1}s]");
            }
        }
    };
    run(1, "diagram-calculus axioms", &mut c1);
    run(2, "hom-dimension oracles", &mut c2);
    run(3, "explicit witnesses", &mut c3);
    run(4, "strong faithfulness controls", &mut || c4(&mut store));
    run(5, "restricted-unit counterexample", &mut c5);
    run(6, "γ split-exactness", &mut c6);
    run(7, "SL_2 linkage gap", &mut c7);
    run(8, "tilting decompositions", &mut c8);
    run(9, "J_2 ideal cross-check", &mut c9);
    run(10, "St_1 strongly faithful mod J_2", &mut || c10(&mut store));
    run(11, "envelope hypothesis certificate", &mut || c11(&mut store));
    let first = store.clone();
    run(12, "determinism", &mut || c12(&first));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
