//! Characteristic-p SL₂: characters, linkage, the Temperley–Lieb model of
//! tilting modules, the ideals `𝒥_r = ⟨id_{St_r}⟩` and certificates for the
//! quotients `Tilt SL₂ / 𝒥_r`.

pub mod characters;
pub mod rep;
pub mod tilting;

use rayon::prelude::*;
use serde_json::json;

pub use characters::{
    decompose_tilting, hom_pairing, linkage_orbit, simple_character, tensor_power_character, tilting_character,
    weyl_character, Character,
};
pub use tilting::{tilting_decompose, top_tilting, DecompositionRow, Summand, TiltingDecomposition};

use crate::category::{Category, KObject, Morphism};
use crate::certify::{
    hom_gamma_exactness, make_gamma, split_solve, Bound, Case, CategoryInfo, Certificate, Verdict,
};
use crate::diagrams::{Caps, Word};
use crate::error::{Error, Result};
use crate::homspace::HomBasis;
use crate::ideals::{slice_dims, IdealSpec};
use crate::scalars::{Field, PrimeField};

pub type TiltCategory = Category<PrimeField>;

/// `T_i` realized on `V^{⊗i}`.
#[derive(Clone, Debug)]
pub struct TiltingObject {
    pub label: usize,
    pub character: Character,
    pub realization: KObject<PrimeField>,
}

/// Temperley–Lieb over F_p at loop −2.
pub fn tilt_category(p: u64) -> Result<TiltCategory> {
    Ok(Category::temperley_lieb(PrimeField::new(p)?))
}

fn prime_of(cat: &TiltCategory) -> u64 {
    cat.field().characteristic()
}

/// `T_i` as an object of `cat` (any quotient of the TL category over F_p).
pub fn tilting_object(cat: &TiltCategory, i: usize) -> Result<TiltingObject> {
    let p = prime_of(cat);
    let top = top_tilting(i, p, &cat.caps)?;
    let w = Word::plain(i);
    let realization = if i <= 1 {
        cat.object(&w)?
    } else {
        let e = rep::lift(&top.idempotent, p, &cat.caps)?;
        cat.object_with_verified_idempotent(&w, e)?
    };
    Ok(TiltingObject { label: i, character: top.character.clone(), realization })
}

/// `St_j = T_{p^j − 1}`.
pub fn steinberg(cat: &TiltCategory, j: u32) -> Result<TiltingObject> {
    let p = prime_of(cat);
    tilting_object(cat, (p.pow(j) - 1) as usize)
}

/// `Tilt SL₂ / 𝒥_r`, together with the Steinberg objects it is built from.
#[derive(Clone, Debug)]
pub struct TiltQuotient {
    pub p: u64,
    pub r: u32,
    pub cat: TiltCategory,
    /// `St_r`, generating the ideal.
    pub st_r: TiltingObject,
    /// `St_{r−1}`, the candidate splitting object.
    pub st_prev: TiltingObject,
}

impl TiltQuotient {
    pub fn new(p: u64, r: u32, caps: Caps) -> Result<Self> {
        if r == 0 {
            return Err(Error::Precondition("r must be at least 1".into()));
        }
        let base = tilt_category(p)?.with_caps(caps);
        let st_r = steinberg(&base, r)?;
        let cat = base.quotient(IdealSpec::Principal(st_r.realization.clone()));
        let st_prev = steinberg(&cat, r - 1)?;
        Ok(TiltQuotient { p, r, cat, st_r, st_prev })
    }

    pub fn tilting(&self, i: usize) -> Result<TiltingObject> {
        tilting_object(&self.cat, i)
    }

    /// `p^r − 1`: every `T_i` with smaller `i` survives in the quotient.
    pub fn top(&self) -> usize {
        (self.p.pow(self.r) - 1) as usize
    }

    fn info(&self) -> CategoryInfo {
        let mut info = CategoryInfo::of(&self.cat);
        info.ideal = format!("J_{} = <id St_{}>", self.r, self.r);
        info
    }
}

fn check_p(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::Precondition("the Steinberg strong-faithfulness argument needs p > 2".into()));
    }
    if !crate::scalars::is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    Ok(())
}

/// Character-level necessary condition for `L_i ⊗ St_{r−1}` to be tilting:
/// its character is a nonnegative combination of tilting characters.
pub fn check_tilting_char_necessary(i: usize, r: u32, p: u64) -> Result<Certificate> {
    if !crate::scalars::is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    let top = p.pow(r) - 1;
    if i as u64 > top {
        return Err(Error::Precondition(format!("need i ≤ p^r − 1 = {top}")));
    }
    let st = (p.pow(r - 1) - 1) as usize;
    let ch = simple_character(i, p).product(&simple_character(st, p));
    let mut cert = Certificate::new(
        json!({ "check": "tilting-char-necessary", "i": i, "r": r, "p": p }),
        None,
    );
    let dec = decompose_tilting(&ch, p);
    let note = match &dec {
        Some(d) => {
            let parts: Vec<String> = d.iter().map(|(k, m)| format!("{m}·T_{k}")).collect();
            format!("ch L_{i} · ch St_{} = {}", r - 1, parts.join(" + "))
        }
        None => format!("ch L_{i} · ch St_{} has a negative tilting coefficient", r - 1),
    };
    cert.cases.push(Case::note(format!("L_{i} ⊗ St_{}", r - 1), dec.is_some(), note));
    cert.tables = Some(json!({ "weyl_coefficients": ch.weyl_coefficients(), "tilting": dec }));
    cert.settle_by_cases();
    Ok(cert)
}

/// Exactness of `0 → C(𝟙, T_i) → C(St⊗St, T_i) → C(St⊗St⊗St⊗St, T_i)`
/// in `C = Tilt SL₂ / 𝒥_r` with `St = St_{r−1}`, for every `i < p^r − 1`,
/// plus the vanishing of `𝒥_r` on the relevant slices for small `i`.
pub fn verify_st_strongly_faithful(p: u64, r: u32, caps: Caps) -> Result<Certificate> {
    check_p(p)?;
    let q = TiltQuotient::new(p, r, caps)?;
    verify_in(&q)
}

fn verify_in(q: &TiltQuotient) -> Result<Certificate> {
    let cat = &q.cat;
    let st = &q.st_prev.realization;
    let g = make_gamma(cat, st, None)?;
    let unit = cat.unit();
    let labels: Vec<usize> = (0..q.top()).collect();
    let cases: Vec<Case> = labels
        .par_iter()
        .map(|&i| {
            let t = q.tilting(i)?;
            let e = hom_gamma_exactness(cat, &g, &unit, &t.realization)?;
            Ok(Case::from_exactness(format!("T_{i}"), &e))
        })
        .collect::<Result<_>>()?;

    // 𝒥_r(⊗^k St_{r−1}, T_i) for k ∈ {0, 2, 4} and i < p^{r−1} − 1
    let st2 = cat.tensor_objects(st, st);
    let st4 = cat.tensor_objects(&st2, &st2);
    let sources = [("1", unit.clone()), ("St⊗St", st2), ("St⊗St⊗St⊗St", st4)];
    let small = (q.p.pow(q.r - 1) - 1) as usize;
    let mut aux = Vec::new();
    let mut aux_cases = Vec::new();
    for i in 0..small {
        let t = q.tilting(i)?;
        for (name, s) in &sources {
            let d = slice_dims(cat, s, &t.realization)?;
            aux_cases.push(Case::note(
                format!("J_{}({name}, T_{i})", q.r),
                d.dim_ideal == 0,
                format!("dim = {}", d.dim_ideal),
            ));
            aux.push(json!({ "source": name, "target": format!("T_{i}"), "dim_hom": d.dim_hom, "dim_ideal": d.dim_ideal }));
        }
    }

    let mut cert = Certificate::new(
        json!({
            "check": "st-strongly-faithful",
            "p": q.p,
            "r": q.r,
            "object": format!("St_{}", q.r - 1),
        }),
        Some(q.info()),
    );
    cert.bound = Some(Bound { degree: Some(q.top() - 1), family: labels.iter().map(|i| format!("T_{i}")).collect() });
    cert.cases = cases;
    cert.cases.extend(aux_cases);
    cert.tables = Some(json!({ "ideal_dims": aux }));
    cert.settle_by_cases();
    Ok(cert)
}

/// Basis morphisms `T_i → T_j` of the quotient for `i, j ≤ max_label`.
pub fn default_samples(q: &TiltQuotient, max_label: usize) -> Result<Vec<(String, Morphism<PrimeField>)>> {
    let top = max_label.min(q.top().saturating_sub(1));
    let objs: Vec<TiltingObject> = (0..=top).map(|i| q.tilting(i)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for a in &objs {
        for b in &objs {
            let hb = HomBasis::new(&q.cat, &a.realization, &b.realization)?;
            for (k, f) in hb.vectors().iter().enumerate() {
                out.push((format!("T_{} → T_{} #{k}", a.label, b.label), f.clone()));
            }
        }
    }
    Ok(out)
}

/// Envelope-theorem splitting hypothesis for `Tilt SL₂ / 𝒥_r` on a sample:
/// `St_{r−1}` is strongly faithful and splits every sampled morphism.
/// Without explicit samples, all basis morphisms `T_i → T_j` with
/// `i, j ≤ max_label` are used.
pub fn certify_envelope_hypothesis_sl2(
    p: u64,
    r: u32,
    samples: Option<Vec<(String, Morphism<PrimeField>)>>,
    max_label: usize,
    caps: Caps,
) -> Result<Certificate> {
    check_p(p)?;
    let q = TiltQuotient::new(p, r, caps)?;
    certify_envelope_in(&q, samples, max_label)
}

/// As [`certify_envelope_hypothesis_sl2`] on an existing quotient, so that
/// sample morphisms can be built in it first.
pub fn certify_envelope_in(
    q: &TiltQuotient,
    samples: Option<Vec<(String, Morphism<PrimeField>)>>,
    max_label: usize,
) -> Result<Certificate> {
    let section = verify_in(q)?;
    let samples = match samples {
        Some(s) => s,
        None => default_samples(q, max_label)?,
    };
    let cat = &q.cat;
    let st = &q.st_prev.realization;
    let cases: Vec<Case> = samples
        .par_iter()
        .map(|(name, f)| {
            if split_solve(cat, f)?.is_some() {
                return Ok(Case::note(name.clone(), true, "split by 1"));
            }
            let sf = cat.left(st, f);
            let ok = split_solve(cat, &sf)?.is_some();
            let note = if ok { format!("split by St_{}", q.r - 1) } else { format!("St_{} ⊗ f has no splitting", q.r - 1) };
            Ok(Case::note(name.clone(), ok, note))
        })
        .collect::<Result<_>>()?;

    let mut cert = Certificate::new(
        json!({
            "check": "envelope-hypothesis-sl2",
            "p": q.p,
            "r": q.r,
            "splitter": format!("St_{}", q.r - 1),
        }),
        Some(q.info()),
    );
    cert.bound = Some(Bound { degree: Some(max_label), family: samples.iter().map(|(n, _)| n.clone()).collect() });
    cert.cases = cases;
    cert.settle_by_cases();
    cert.verdict = Verdict::combine([section.verdict, cert.verdict]);
    cert.sections.push(section);
    Ok(cert)
}

/// Decomposition table rows for `n ≤ max_n`.
pub fn decomposition_table(max_n: usize, p: u64, caps: &Caps) -> Result<Vec<DecompositionRow>> {
    (0..=max_n).map(|n| Ok(DecompositionRow::from(tilting_decompose(n, p, caps)?.as_ref()))).collect()
}
