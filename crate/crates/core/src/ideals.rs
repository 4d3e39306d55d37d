//! Tensor ideals as hom subspaces: the trace radical, principal ideals
//! `⟨id_X⟩`, explicit families, and quotient hom spaces.
//!
//! Membership in `⟨id_X⟩(A, B)` is decided by the rigidity criterion: `f`
//! lies in the ideal iff `f = h ∘ (co_X ⊗ A)` for some
//! `h : X ⊗ X∨ ⊗ A → B`. Any `f = v ∘ (X ⊗ u)`-type factorization through
//! `X ⊗ Y` can be rewritten in this form by a snake, so one linear system
//! replaces a search over middle objects.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{Category, KObject, Morphism};
use crate::diagrams::{planar_basis_avoiding, FlavorKind, MorLin, Pairing, Word};
use crate::error::{Error, Result};
use crate::homspace::{map_between, HomBasis, LinMap};
use crate::linalg::{self, Span};
use crate::scalars::Field;

/// Word-level slice given explicitly: `J(source, target)` is spanned by
/// `vectors`; unlisted pairs are zero.
#[derive(Clone, Debug)]
pub struct WordSlice<F: Field> {
    pub source: Word,
    pub target: Word,
    pub vectors: Vec<MorLin<F>>,
}

#[derive(Clone, Debug)]
pub enum IdealSpec<F: Field> {
    Zero,
    Negligible,
    Principal(KObject<F>),
    Explicit(Arc<Vec<WordSlice<F>>>),
}

impl<F: Field> IdealSpec<F> {
    pub fn name(&self) -> String {
        match self {
            IdealSpec::Zero => "zero".into(),
            IdealSpec::Negligible => "negligible".into(),
            IdealSpec::Principal(x) => format!("principal({x})"),
            IdealSpec::Explicit(v) => format!("explicit({} slices)", v.len()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, IdealSpec::Zero)
    }
}

/// `J(A, B)` inside `Hom(A, B)`.
#[derive(Clone, Debug)]
pub struct IdealSlice<F: Field> {
    pub source: KObject<F>,
    pub target: KObject<F>,
    pub dim_hom: usize,
    pub vectors: Vec<Morphism<F>>,
}

impl<F: Field> IdealSlice<F> {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// One row of an ideal dimension table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceDims {
    pub source: String,
    pub target: String,
    pub dim_hom: usize,
    pub dim_ideal: usize,
    pub dim_quotient: usize,
}

/// A generator of a principal-ideal word slice: the diagram `D` applied
/// after `co_X ⊗ a` restricted to the `(i, j)` summand of `X ⊗ X∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorTerm<F: Field> {
    pub coeff: F::Elem,
    pub x_pair: (usize, usize),
    pub source_index: usize,
    pub target_index: usize,
    pub diagram: Pairing,
}

/// Result of a principal-ideal membership test.
#[derive(Clone, Debug)]
pub struct Membership<F: Field> {
    pub member: bool,
    /// `h` as a combination of diagram generators.
    pub witness: Option<Vec<FactorTerm<F>>>,
}

impl<F: Field> Category<F> {
    /// Same category without any ideal.
    pub fn ambient(&self) -> Category<F> {
        if self.ideal.is_zero() {
            self.clone()
        } else {
            self.quotient(IdealSpec::Zero)
        }
    }

    /// Spanning morphisms of `J(A, B)` for the category's ideal.
    pub fn ideal_spanning(&self, a: &KObject<F>, b: &KObject<F>) -> Result<Vec<Morphism<F>>> {
        match &self.ideal {
            IdealSpec::Zero => Ok(vec![]),
            IdealSpec::Negligible => Ok(negligible_slice(&self.ambient(), a, b)?.vectors),
            IdealSpec::Principal(_) | IdealSpec::Explicit(_) => {
                let mut out = Vec::new();
                for (i, bw) in b.words().iter().enumerate() {
                    for (j, aw) in a.words().iter().enumerate() {
                        for s in self.word_slice(aw, bw)?.iter() {
                            out.push(self.matrix_unit(a, b, i, j, s.clone())?);
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Basis of `J(a, b)` for words, cached.
    pub fn word_slice(&self, a: &Word, b: &Word) -> Result<Arc<Vec<MorLin<F>>>> {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.slice_cache.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = match &self.ideal {
            IdealSpec::Zero => vec![],
            IdealSpec::Negligible => {
                let amb = self.ambient();
                let (oa, ob) = (amb.object(a)?, amb.object(b)?);
                negligible_slice(&amb, &oa, &ob)?
                    .vectors
                    .into_iter()
                    .map(|m| m.entries[0][0].clone())
                    .collect()
            }
            IdealSpec::Explicit(slices) => slices
                .iter()
                .filter(|s| &s.source == a && &s.target == b)
                .flat_map(|s| s.vectors.iter().cloned())
                .collect(),
            IdealSpec::Principal(x) => {
                let gens = principal_generators(&self.ambient(), x, a, b)?;
                independent_morlins(self, a, b, gens.into_iter().map(|(_, m)| m))?
            }
        };
        let v = Arc::new(v);
        self.slice_cache.write().unwrap().insert(key, v.clone());
        Ok(v)
    }
}

fn independent_morlins<F: Field>(
    cat: &Category<F>,
    a: &Word,
    b: &Word,
    ms: impl Iterator<Item = MorLin<F>>,
) -> Result<Vec<MorLin<F>>> {
    let diagrams = cat.hom_diagrams(a, b)?;
    let index: std::collections::HashMap<&Pairing, usize> =
        diagrams.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let f = cat.field();
    let mut span = Span::new(f.clone(), diagrams.len(), false);
    let mut out = Vec::new();
    for m in ms {
        let mut v = vec![f.zero(); diagrams.len()];
        for (p, c) in &m.terms {
            let k = index
                .get(p)
                .ok_or_else(|| Error::Inconsistent("ideal generator uses an illegal diagram".into()))?;
            v[*k] = c.clone();
        }
        if span.insert(&v) {
            out.push(m);
        }
    }
    Ok(out)
}

/// True when `e` is killed by every adjacent cap on both sides, so that any
/// planar diagram with a cap inside an `e`-block annihilates it.
fn killed_by_caps<F: Field>(cat: &Category<F>, w: &Word, e: &MorLin<F>) -> Result<bool> {
    let calc = &cat.calc;
    let n = w.len();
    if n < 2 {
        return Ok(false);
    }
    for k in 0..n - 1 {
        let g = calc.tl_generator(n, k);
        if !calc.compose(&g, e)?.is_zero() || !calc.compose(e, &g)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Spanning set of `⟨id_X⟩(a, b)`: every `D ∘ ((co_X)_{(i,j)} ⊗ a)`, with
/// the generator it came from.
fn principal_generators<F: Field>(
    cat: &Category<F>,
    x: &KObject<F>,
    a: &Word,
    b: &Word,
) -> Result<Vec<(((usize, usize), Pairing), MorLin<F>)>> {
    let calc = &cat.calc;
    let co = cat.co(x);
    let nx = x.len();
    let id_a = calc.identity(a);
    let mut out = Vec::new();
    for i in 0..nx {
        for j in 0..nx {
            let idx = i * nx + j;
            let leg = &co.entries[idx][0];
            if leg.is_zero() {
                continue;
            }
            let start = calc.tensor(leg, &id_a);
            let mid = start.target.clone();
            let (xi, xj) = (x.words()[i].len(), x.words()[j].len());
            let prune = cat.kind() == FlavorKind::TemperleyLieb
                && i == j
                && killed_by_caps(cat, &x.words()[i], x.idem(i, i))?;
            // A cap across the X | X∨ boundary is a partial trace of the leg;
            // when that vanishes, no X point may pair with an X∨ point.
            let trace_killed = prune && xi > 0 && {
                let t = &leg.target.0;
                let left = calc.identity(&Word(t[..xi - 1].to_vec()));
                let right = calc.identity(&Word(t[xi + 1..].to_vec()));
                let cap = calc.tensor(&calc.tensor(&left, &calc.ev(&Word(t[xi..xi + 1].to_vec()))), &right);
                calc.compose(&cap, leg)?.is_zero()
            };
            let diagrams: Vec<Pairing> = if prune {
                let m = mid.len();
                // every X and X∨ point must then reach an A or B point
                let free = a.len() + b.len();
                if trace_killed && xi + xj > free {
                    continue;
                }
                let counted = if trace_killed { free } else { m + b.len() };
                if counted > cat.caps.max_points {
                    return Err(Error::CapExceeded {
                        what: format!("boundary points of {mid} → {b}"),
                        needed: (m + b.len()) as u128,
                        cap: cat.caps.max_points as u128,
                    });
                }
                let block = |p: usize| {
                    if p < xi {
                        0
                    } else if p < xi + xj {
                        1
                    } else {
                        2
                    }
                };
                planar_basis_avoiding(m, b.len(), &|p, q| {
                    p < m && q < m && ((block(p) == block(q) && block(p) < 2) || (trace_killed && block(p) + block(q) == 1))
                })
            } else {
                cat.hom_diagrams(&mid, b)?.as_ref().clone()
            };
            for d in diagrams {
                let dm = calc.from_pairing(&mid, b, d.clone());
                let v = calc.compose(&dm, &start)?;
                if !v.is_zero() {
                    out.push((((i, j), d), v));
                }
            }
        }
    }
    Ok(out)
}

/// Radical of the trace pairing `Hom(A,B) × Hom(B,A) → k`.
pub fn negligible_slice<F: Field>(cat: &Category<F>, a: &KObject<F>, b: &KObject<F>) -> Result<IdealSlice<F>> {
    let amb = cat.ambient();
    let hab = HomBasis::new(&amb, a, b)?;
    let hba = HomBasis::new(&amb, b, a)?;
    let f = amb.field();
    // gram[k][l] = tr(g_l ∘ f_k); radical = {x : Σ_k x_k gram[k][l] = 0}
    let rows: Vec<Vec<F::Elem>> = hba
        .vectors()
        .iter()
        .map(|g| {
            hab.vectors()
                .iter()
                .map(|fk| amb.trace(&amb.compose(g, fk)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let ker = linalg::kernel(f, &rows, hab.dim());
    let vectors = ker
        .iter()
        .map(|x| hab.combination(&amb, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealSlice { source: a.clone(), target: b.clone(), dim_hom: hab.dim(), vectors })
}

/// The slice `J(A, B)` of the category's ideal.
pub fn ideal_slice<F: Field>(cat: &Category<F>, a: &KObject<F>, b: &KObject<F>) -> Result<IdealSlice<F>> {
    let amb = cat.ambient();
    let hb = HomBasis::new(&amb, a, b)?;
    let mut span = Span::new(cat.field().clone(), hb.dim(), false);
    let mut vectors = Vec::new();
    for m in cat.ideal_spanning(a, b)? {
        if span.insert(&hb.coordinates(&m)?) {
            vectors.push(m);
        }
    }
    Ok(IdealSlice { source: a.clone(), target: b.clone(), dim_hom: hb.dim(), vectors })
}

/// `⟨id_X⟩(A, B)` membership with a factorization witness.
pub fn principal_membership<F: Field>(
    cat: &Category<F>,
    f: &Morphism<F>,
    x: &KObject<F>,
) -> Result<Membership<F>> {
    let amb = cat.ambient();
    let (a, b) = (&f.source, &f.target);
    let hb = HomBasis::new(&amb, a, b)?;
    let target = hb.coordinates(f)?;
    let mut gens: Vec<FactorTerm<F>> = Vec::new();
    let mut columns: Vec<Vec<F::Elem>> = Vec::new();
    for (ti, bw) in b.words().iter().enumerate() {
        for (si, aw) in a.words().iter().enumerate() {
            for ((pair, d), m) in principal_generators(&amb, x, aw, bw)? {
                let full = amb.matrix_unit(a, b, ti, si, m)?;
                columns.push(hb.coordinates(&full)?);
                gens.push(FactorTerm {
                    coeff: amb.field().one(),
                    x_pair: pair,
                    source_index: si,
                    target_index: ti,
                    diagram: d,
                });
            }
        }
    }
    let fld = amb.field();
    let l = LinMap::from_columns(fld, hb.dim(), columns);
    match crate::homspace::solve(fld, &l, &target) {
        None => Ok(Membership { member: false, witness: None }),
        Some(sol) => {
            let witness = gens
                .into_iter()
                .zip(sol)
                .filter(|(_, c)| !fld.is_zero(c))
                .map(|(mut g, c)| {
                    g.coeff = c;
                    g
                })
                .collect();
            Ok(Membership { member: true, witness: Some(witness) })
        }
    }
}

/// Build `h : X ⊗ X∨ ⊗ A → B` from factor terms.
pub fn materialize_witness<F: Field>(
    cat: &Category<F>,
    x: &KObject<F>,
    a: &KObject<F>,
    b: &KObject<F>,
    terms: &[FactorTerm<F>],
) -> Result<Morphism<F>> {
    let xxd = cat.tensor_objects(x, &cat.dual_object(x));
    let src = cat.tensor_objects(&xxd, a);
    let calc = &cat.calc;
    let mut h = cat.zero_morphism(&src, b);
    let nx = x.len();
    let na = a.len();
    for t in terms {
        let (i, j) = t.x_pair;
        let col = (i * nx + j) * na + t.source_index;
        let mid = src.words()[col].clone();
        let d = calc.from_pairing(&mid, &b.words()[t.target_index], t.diagram.clone());
        calc.add_assign(&mut h.entries[t.target_index][col], &d, &t.coeff);
    }
    // h ↦ E_B ∘ h ∘ (X ⊗ X∨ ⊗ E_A)
    let tail = cat.tensor(&cat.identity(&cat.plain_sum(xxd.words())?), &cat.identity(a));
    let h = cat.compose(&h, &tail)?;
    if b.is_plain() {
        Ok(h)
    } else {
        cat.compose(&cat.identity(b), &h)
    }
}

/// Span of composites `A → T → B` over the given middle objects.
pub fn factor_through_slice<F: Field>(
    cat: &Category<F>,
    a: &KObject<F>,
    b: &KObject<F>,
    middles: &[KObject<F>],
) -> Result<IdealSlice<F>> {
    let amb = cat.ambient();
    let hab = HomBasis::new(&amb, a, b)?;
    let mut span = Span::new(amb.field().clone(), hab.dim(), false);
    let mut vectors = Vec::new();
    for t in middles {
        let hat = HomBasis::new(&amb, a, t)?;
        if hat.dim() == 0 {
            continue;
        }
        let htb = HomBasis::new(&amb, t, b)?;
        for g in hat.vectors() {
            let l = map_between(&htb, &hab, |h| amb.compose(h, g))?;
            for c in 0..l.cols {
                let col: Vec<F::Elem> = l.matrix.iter().map(|r| r[c].clone()).collect();
                if span.insert(&col) {
                    vectors.push(hab.combination(&amb, &col)?);
                }
            }
        }
    }
    Ok(IdealSlice { source: a.clone(), target: b.clone(), dim_hom: hab.dim(), vectors })
}

/// The quotient hom basis `Hom(A,B)/J(A,B)`.
pub fn quotient_hom_basis<F: Field>(
    cat: &Category<F>,
    a: &KObject<F>,
    b: &KObject<F>,
    ideal: IdealSpec<F>,
) -> Result<HomBasis<F>> {
    HomBasis::new(&cat.quotient(ideal), a, b)
}

/// Dimension table row for `(A, B)` in a quotient category.
pub fn slice_dims<F: Field>(cat: &Category<F>, a: &KObject<F>, b: &KObject<F>) -> Result<SliceDims> {
    let hb = HomBasis::new(cat, a, b)?;
    Ok(SliceDims {
        source: a.to_string(),
        target: b.to_string(),
        dim_hom: hb.upstairs_dim(),
        dim_ideal: hb.ideal_dim(),
        dim_quotient: hb.dim(),
    })
}
