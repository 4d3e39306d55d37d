//! Hom spaces as explicit vector spaces: bases, coordinates, induced maps,
//! exactness and solvability.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::category::{Category, KObject, Morphism};
use crate::diagrams::{MorLin, Pairing};
use crate::error::{Error, Result};
use crate::linalg::{self, Span};
use crate::scalars::Field;

#[derive(Clone, Debug)]
struct EntryLayout {
    i: usize,
    j: usize,
    diagrams: Arc<Vec<Pairing>>,
    index: HashMap<Pairing, usize>,
    offset: usize,
    // coordinates per diagram: [K:k] in a restricted category, 1 otherwise
    width: usize,
    // the End(𝟙) entry of a restricted category: coefficients must lie in k
    unit_only: bool,
}

#[derive(Clone, Debug)]
enum Upstairs<F: Field> {
    /// Ambient coordinates are the coordinates.
    Standard,
    /// Tracked span of the accepted vectors.
    Tracked(Span<F>, Vec<Vec<F::Elem>>),
}

/// Basis of `Hom(source, target)`, modulo the category's ideal.
#[derive(Clone, Debug)]
pub struct HomBasis<F: Field> {
    pub source: KObject<F>,
    pub target: KObject<F>,
    field: F,
    restricted: bool,
    layout: Vec<EntryLayout>,
    ambient: usize,
    upstairs: Upstairs<F>,
    upstairs_dim: usize,
    // ideal in upstairs coordinates, reduced echelon rows and pivots
    ideal_rows: Vec<Vec<F::Elem>>,
    ideal_pivots: Vec<usize>,
    reps: Vec<usize>,
    vectors: Vec<Morphism<F>>,
}

impl<F: Field> HomBasis<F> {
    pub fn new(cat: &Category<F>, source: &KObject<F>, target: &KObject<F>) -> Result<Self> {
        let f = cat.field().clone();
        let ext = if cat.is_restricted() { f.ext_degree() } else { 1 };
        let mut layout = Vec::new();
        let mut ambient = 0usize;
        for (i, b) in target.words().iter().enumerate() {
            for (j, a) in source.words().iter().enumerate() {
                let diagrams = cat.hom_diagrams(a, b)?;
                let index = diagrams.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();
                let unit_only = cat.is_restricted() && a.is_empty() && b.is_empty();
                let width = if unit_only { 1 } else { ext };
                let n = diagrams.len() * width;
                layout.push(EntryLayout { i, j, diagrams, index, offset: ambient, width, unit_only });
                ambient += n;
            }
        }
        if ambient > cat.caps.max_hom_dim {
            return Err(Error::CapExceeded {
                what: format!("hom space {source} → {target}"),
                needed: ambient as u128,
                cap: cat.caps.max_hom_dim as u128,
            });
        }
        let mut hb = HomBasis {
            source: source.clone(),
            target: target.clone(),
            field: f.clone(),
            restricted: cat.is_restricted(),
            layout,
            ambient,
            upstairs: Upstairs::Standard,
            upstairs_dim: ambient,
            ideal_rows: Vec::new(),
            ideal_pivots: Vec::new(),
            reps: Vec::new(),
            vectors: Vec::new(),
        };
        if !(source.is_plain() && target.is_plain()) {
            hb.build_compressed(cat)?;
        }
        let ideal = cat.ideal_spanning(source, target)?;
        if !ideal.is_empty() {
            let rows: Vec<Vec<F::Elem>> =
                ideal.iter().map(|m| hb.upstairs_coordinates(m)).collect::<Result<_>>()?;
            let (red, piv) = linalg::rref(&f, &rows, hb.upstairs_dim);
            hb.ideal_rows = red;
            hb.ideal_pivots = piv;
        }
        let mut is_piv = vec![false; hb.upstairs_dim];
        for &p in &hb.ideal_pivots {
            is_piv[p] = true;
        }
        hb.reps = (0..hb.upstairs_dim).filter(|&k| !is_piv[k]).collect();
        hb.vectors = hb
            .reps
            .iter()
            .map(|&k| hb.upstairs_vector(cat, k))
            .collect::<Result<_>>()?;
        Ok(hb)
    }

    /// Images of ambient unit vectors under `m ↦ post ∘ m ∘ pre`, as
    /// columns, reduced to a tracked basis of the image.
    fn build_compressed(&mut self, cat: &Category<F>) -> Result<()> {
        let f = self.field.clone();
        let units: Vec<usize> = (0..self.ambient).collect();
        let mut current: Vec<Vec<F::Elem>> = Vec::new();
        let src_id = cat.identity(&self.source);
        let tgt_id = cat.identity(&self.target);
        // right multiplication by E_source on unit vectors
        if !self.source.is_plain() {
            let cols: Vec<Vec<F::Elem>> = units
                .par_iter()
                .map(|&u| {
                    let m = self.unit_morphism(cat, u);
                    self.flatten(&cat.compose(&m, &src_id)?)
                })
                .collect::<Result<_>>()?;
            let mut span = Span::new(f.clone(), self.ambient, false);
            for c in cols {
                if span.insert(&c) {
                    current.push(c);
                }
            }
        } else {
            current = units.iter().map(|&u| self.unit_vec(u)).collect();
        }
        if !self.target.is_plain() {
            // post-composition matrix, column by column
            let post: Vec<Vec<F::Elem>> = units
                .par_iter()
                .map(|&u| {
                    let m = self.unit_morphism(cat, u);
                    self.flatten(&cat.compose(&tgt_id, &m)?)
                })
                .collect::<Result<_>>()?;
            current = current
                .par_iter()
                .map(|v| {
                    let mut out = vec![f.zero(); self.ambient];
                    for (u, c) in v.iter().enumerate() {
                        if f.is_zero(c) {
                            continue;
                        }
                        for (o, x) in out.iter_mut().zip(&post[u]) {
                            if !f.is_zero(x) {
                                *o = f.add(o, &f.mul(c, x));
                            }
                        }
                    }
                    out
                })
                .collect();
        }
        let mut span = Span::new(f.clone(), self.ambient, true);
        let mut kept = Vec::new();
        for v in current {
            if span.insert(&v) {
                kept.push(v);
            }
        }
        self.upstairs_dim = kept.len();
        self.upstairs = Upstairs::Tracked(span, kept);
        Ok(())
    }

    fn unit_vec(&self, u: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.ambient];
        v[u] = self.field.one();
        v
    }

    fn locate(&self, u: usize) -> (&EntryLayout, usize, usize) {
        let e = self
            .layout
            .iter()
            .rev()
            .find(|e| e.offset <= u)
            .expect("coordinate inside layout");
        let local = u - e.offset;
        (e, local / e.width, local % e.width)
    }

    /// Raw (uncompressed) matrix unit for ambient coordinate `u`.
    fn unit_morphism(&self, cat: &Category<F>, u: usize) -> Morphism<F> {
        let (e, d, r) = self.locate(u);
        let mut m = cat.zero_morphism(&self.source, &self.target);
        let a = &self.source.words()[e.j];
        let b = &self.target.words()[e.i];
        let one = cat.calc.from_pairing(a, b, e.diagrams[d].clone());
        m.entries[e.i][e.j] = if r == 0 { one } else { cat.calc.scale(&one, &self.field.power_basis(r)) };
        m
    }

    /// Morphism with the given ambient coordinates.
    pub fn unflatten(&self, cat: &Category<F>, v: &[F::Elem]) -> Morphism<F> {
        let f = &self.field;
        let mut m = cat.zero_morphism(&self.source, &self.target);
        for e in &self.layout {
            let a = &self.source.words()[e.j];
            let b = &self.target.words()[e.i];
            let mut acc = MorLin::zero(a.clone(), b.clone());
            for (d, p) in e.diagrams.iter().enumerate() {
                let mut c = f.zero();
                for r in 0..e.width {
                    let x = &v[e.offset + d * e.width + r];
                    if !f.is_zero(x) {
                        c = f.add(&c, &f.mul(x, &f.power_basis(r)));
                    }
                }
                if !f.is_zero(&c) {
                    acc.terms.insert(p.clone(), c);
                }
            }
            m.entries[e.i][e.j] = acc;
        }
        m
    }

    /// Ambient coordinates of a morphism with the right shape.
    pub fn flatten(&self, m: &Morphism<F>) -> Result<Vec<F::Elem>> {
        if m.source.words() != self.source.words() || m.target.words() != self.target.words() {
            return Err(Error::Shape(format!(
                "morphism {} → {} in hom basis {} → {}",
                m.source, m.target, self.source, self.target
            )));
        }
        let f = &self.field;
        let mut v = vec![f.zero(); self.ambient];
        for e in &self.layout {
            for (p, c) in &m.entries[e.i][e.j].terms {
                let d = *e.index.get(p).ok_or_else(|| {
                    Error::NotInHomSpace("diagram illegal for this flavor".into())
                })?;
                let base = e.offset + d * e.width;
                if !self.restricted {
                    v[base] = c.clone();
                } else if e.unit_only {
                    let coords = f.subfield_coordinates(c)?;
                    if coords[1..].iter().any(|x| !f.is_zero(x)) {
                        return Err(Error::NotInHomSpace(
                            "endomorphism of the unit outside the base field".into(),
                        ));
                    }
                    v[base] = coords[0].clone();
                } else {
                    for (r, x) in f.subfield_coordinates(c)?.into_iter().enumerate() {
                        v[base + r] = x;
                    }
                }
            }
        }
        Ok(v)
    }

    fn upstairs_coordinates(&self, m: &Morphism<F>) -> Result<Vec<F::Elem>> {
        let v = self.flatten(m)?;
        match &self.upstairs {
            Upstairs::Standard => Ok(v),
            Upstairs::Tracked(span, _) => span
                .coordinates(&v)
                .ok_or_else(|| Error::NotInHomSpace(format!("not in Hom({}, {})", self.source, self.target))),
        }
    }

    fn upstairs_vector(&self, cat: &Category<F>, k: usize) -> Result<Morphism<F>> {
        Ok(match &self.upstairs {
            Upstairs::Standard => self.unflatten(cat, &self.unit_vec(k)),
            Upstairs::Tracked(_, vs) => self.unflatten(cat, &vs[k]),
        })
    }

    /// Dimension of the (quotient) hom space.
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Dimension before quotienting by the ideal.
    pub fn upstairs_dim(&self) -> usize {
        self.upstairs_dim
    }

    /// Dimension of the ideal slice.
    pub fn ideal_dim(&self) -> usize {
        self.ideal_pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Basis morphisms (coset representatives in a quotient).
    pub fn vectors(&self) -> &[Morphism<F>] {
        &self.vectors
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Coordinates of (the class of) `m`.
    pub fn coordinates(&self, m: &Morphism<F>) -> Result<Vec<F::Elem>> {
        let mut u = self.upstairs_coordinates(m)?;
        let f = &self.field;
        for (row, &p) in self.ideal_rows.iter().zip(&self.ideal_pivots) {
            if f.is_zero(&u[p]) {
                continue;
            }
            let c = u[p].clone();
            for (x, y) in u.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        Ok(self.reps.iter().map(|&k| u[k].clone()).collect())
    }

    /// True when `m` is zero in the (quotient) hom space.
    pub fn is_zero_class(&self, m: &Morphism<F>) -> Result<bool> {
        Ok(self.coordinates(m)?.iter().all(|x| self.field.is_zero(x)))
    }

    /// True when `m` lies in the ideal slice (zero ideal: `m = 0`).
    pub fn in_ideal(&self, m: &Morphism<F>) -> Result<bool> {
        self.is_zero_class(m)
    }

    pub fn combination(&self, cat: &Category<F>, coords: &[F::Elem]) -> Result<Morphism<F>> {
        if coords.len() != self.dim() {
            return Err(Error::Shape("coordinate vector has the wrong length".into()));
        }
        let terms: Vec<(F::Elem, &Morphism<F>)> =
            coords.iter().cloned().zip(self.vectors.iter()).collect();
        cat.linear_combination(&self.source, &self.target, &terms)
    }
}

/// Matrix of a linear map between hom spaces; column `j` is the image of
/// the `j`-th domain basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct LinMap<F: Field> {
    pub rows: usize,
    pub cols: usize,
    pub matrix: Vec<Vec<F::Elem>>,
}

impl<F: Field> LinMap<F> {
    pub fn from_columns(f: &F, rows: usize, columns: Vec<Vec<F::Elem>>) -> Self {
        let cols = columns.len();
        let matrix = (0..rows)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect::<Vec<Vec<F::Elem>>>();
        let _ = f;
        LinMap { rows, cols, matrix }
    }

    pub fn identity(f: &F, n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        LinMap { rows: n, cols: n, matrix }
    }

    pub fn zero(f: &F, rows: usize, cols: usize) -> Self {
        LinMap { rows, cols, matrix: vec![vec![f.zero(); cols]; rows] }
    }

    pub fn rank(&self, f: &F) -> usize {
        linalg::rank(f, &self.matrix, self.cols)
    }

    pub fn apply(&self, f: &F, x: &[F::Elem]) -> Vec<F::Elem> {
        linalg::mat_vec(f, &self.matrix, x)
    }

    /// `self ∘ other`
    pub fn after(&self, f: &F, other: &LinMap<F>) -> LinMap<F> {
        LinMap {
            rows: self.rows,
            cols: other.cols,
            matrix: linalg::mat_mul(f, &self.matrix, &other.matrix, other.cols),
        }
    }

    pub fn is_zero(&self, f: &F) -> bool {
        self.matrix.iter().flatten().all(|x| f.is_zero(x))
    }
}

/// Matrix of `m ↦ op(m)` from `dom` to `cod`.
pub fn map_between<F, G>(dom: &HomBasis<F>, cod: &HomBasis<F>, op: G) -> Result<LinMap<F>>
where
    F: Field,
    G: Fn(&Morphism<F>) -> Result<Morphism<F>> + Sync,
{
    let cols: Vec<Vec<F::Elem>> = dom
        .vectors()
        .par_iter()
        .map(|v| cod.coordinates(&op(v)?))
        .collect::<Result<_>>()?;
    Ok(LinMap::from_columns(dom.field(), cod.dim(), cols))
}

/// Matrix of `f ↦ post ∘ f ∘ pre`.
pub fn induced_map<F: Field>(
    cat: &Category<F>,
    pre: Option<&Morphism<F>>,
    post: Option<&Morphism<F>>,
    dom: &HomBasis<F>,
    cod: &HomBasis<F>,
) -> Result<LinMap<F>> {
    map_between(dom, cod, |m| {
        let mut out = m.clone();
        if let Some(p) = pre {
            out = cat.compose(&out, p)?;
        }
        if let Some(q) = post {
            out = cat.compose(q, &out)?;
        }
        Ok(out)
    })
}

/// Rank data of `A →f B →g C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exactness {
    pub dims: [usize; 3],
    pub ranks: [usize; 2],
    /// `dim ker g − dim im f`
    pub defect: usize,
    /// `dim ker f` when injectivity of `f` was required, else 0.
    pub left_defect: usize,
    pub exact: bool,
}

/// Compare `ker g` with `im f`. A nonzero composite is an error, not a
/// verdict.
pub fn exactness_check<F: Field>(f: &F, g: &LinMap<F>, fm: &LinMap<F>, require_left_injective: bool) -> Result<Exactness> {
    if g.cols != fm.rows {
        return Err(Error::Shape(format!(
            "maps do not compose: {}×{} after {}×{}",
            g.rows, g.cols, fm.rows, fm.cols
        )));
    }
    if !g.after(f, fm).is_zero(f) {
        return Err(Error::Inconsistent("composite of the two maps is nonzero".into()));
    }
    let rf = fm.rank(f);
    let rg = g.rank(f);
    let dim_b = fm.rows;
    let defect = dim_b - rg - rf;
    let left_defect = if require_left_injective { fm.cols - rf } else { 0 };
    Ok(Exactness {
        dims: [fm.cols, dim_b, g.rows],
        ranks: [rf, rg],
        defect,
        left_defect,
        exact: defect == 0 && left_defect == 0,
    })
}

/// Some `x` with `L x = target`, or `None` when the rank test fails.
pub fn solve<F: Field>(f: &F, l: &LinMap<F>, target: &[F::Elem]) -> Option<Vec<F::Elem>> {
    linalg::solve(f, &l.matrix, l.cols, target)
}
