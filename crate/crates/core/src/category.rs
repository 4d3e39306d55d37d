//! Karoubi envelope of the additive closure of a diagram calculus: objects
//! are idempotents on formal direct sums of words, morphisms are matrices
//! of diagram combinations.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::diagrams::{hom_basis, Calculus, Caps, FlavorKind, MorLin, Pairing, Word};
use crate::error::{Error, Result};
use crate::ideals::IdealSpec;
use crate::scalars::Field;

/// `⊕ words` cut down by an idempotent matrix; entry `(i, j)` of the
/// matrix maps `words[j]` to `words[i]`.
#[derive(Clone)]
pub struct KObject<F: Field>(Arc<KInner<F>>);

struct KInner<F: Field> {
    words: Vec<Word>,
    idem: Vec<Vec<MorLin<F>>>,
    plain: bool,
}

impl<F: Field> PartialEq for KObject<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.words == other.0.words
                && (self.0.plain && other.0.plain || self.0.idem == other.0.idem))
    }
}

impl<F: Field> fmt::Debug for KObject<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for KObject<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.words.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.words.iter().map(|w| w.to_string()).collect();
        if self.0.plain {
            write!(f, "{}", parts.join(" ⊕ "))
        } else {
            write!(f, "e({})", parts.join(" ⊕ "))
        }
    }
}

impl<F: Field> KObject<F> {
    pub fn words(&self) -> &[Word] {
        &self.0.words
    }

    pub fn len(&self) -> usize {
        self.0.words.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.words.is_empty()
    }

    /// True when the idempotent is the identity matrix.
    pub fn is_plain(&self) -> bool {
        self.0.plain
    }

    pub fn idem(&self, i: usize, j: usize) -> &MorLin<F> {
        &self.0.idem[i][j]
    }

    /// Largest word length among the summands.
    pub fn degree(&self) -> usize {
        self.0.words.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn idem_matrix(&self) -> &Vec<Vec<MorLin<F>>> {
        &self.0.idem
    }
}

/// Matrix morphism between Karoubi objects.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism<F: Field> {
    pub source: KObject<F>,
    pub target: KObject<F>,
    /// `entries[i][j] : source.words[j] → target.words[i]`
    pub entries: Vec<Vec<MorLin<F>>>,
}

impl<F: Field> Morphism<F> {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|m| m.is_zero())
    }

    pub fn entry(&self, i: usize, j: usize) -> &MorLin<F> {
        &self.entries[i][j]
    }
}

/// Image of an idempotent with its inclusion and projection.
#[derive(Clone, Debug)]
pub struct Split<F: Field> {
    pub object: KObject<F>,
    pub incl: Morphism<F>,
    pub proj: Morphism<F>,
}

type SliceCache<F> = RwLock<HashMap<(Word, Word), Arc<Vec<MorLin<F>>>>>;

/// A category handle: calculus, caps, optional unit restriction and
/// optional tensor ideal. Caches are shared between clones.
pub struct Category<F: Field> {
    pub calc: Arc<Calculus<F>>,
    pub caps: Caps,
    restricted_unit: bool,
    pub(crate) ideal: IdealSpec<F>,
    diagram_cache: Arc<RwLock<HashMap<(Word, Word), Arc<Vec<Pairing>>>>>,
    pub(crate) slice_cache: Arc<SliceCache<F>>,
}

impl<F: Field> Clone for Category<F> {
    fn clone(&self) -> Self {
        Category {
            calc: self.calc.clone(),
            caps: self.caps,
            restricted_unit: self.restricted_unit,
            ideal: self.ideal.clone(),
            diagram_cache: self.diagram_cache.clone(),
            slice_cache: self.slice_cache.clone(),
        }
    }
}

impl<F: Field> fmt::Debug for Category<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Category({}, loop = {}, restricted = {}, ideal = {})",
            self.calc.kind,
            self.field().render(&self.calc.loop_value),
            self.restricted_unit,
            self.ideal.name()
        )
    }
}

impl<F: Field> Category<F> {
    pub fn new(field: F, kind: FlavorKind, loop_value: F::Elem) -> Self {
        Category::from_calculus(Calculus::new(field, kind, loop_value))
    }

    pub fn from_calculus(calc: Calculus<F>) -> Self {
        Category {
            calc: Arc::new(calc),
            caps: Caps::default(),
            restricted_unit: false,
            ideal: IdealSpec::Zero,
            diagram_cache: Default::default(),
            slice_cache: Default::default(),
        }
    }

    /// Temperley–Lieb model of tilting modules (loop −2).
    pub fn temperley_lieb(field: F) -> Self {
        Category::from_calculus(Calculus::temperley_lieb(field))
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn field(&self) -> &F {
        &self.calc.field
    }

    pub fn kind(&self) -> FlavorKind {
        self.calc.kind
    }

    pub fn is_restricted(&self) -> bool {
        self.restricted_unit
    }

    pub fn ideal(&self) -> &IdealSpec<F> {
        &self.ideal
    }

    /// The quotient by a tensor ideal (replaces any previous ideal).
    pub fn quotient(&self, ideal: IdealSpec<F>) -> Self {
        let mut c = self.clone();
        c.ideal = ideal;
        c.slice_cache = Default::default();
        c
    }

    /// View in which End(𝟙) is cut down to the base field k of an extension
    /// pair k ⊂ K while every other hom space is its K-space regarded over k.
    /// Closure under composition needs a vanishing loop value.
    pub fn restrict_end_unit(&self) -> Result<Self> {
        if self.field().ext_degree() < 2 {
            return Err(Error::NotExtension);
        }
        if !self.field().is_zero(&self.calc.loop_value) {
            return Err(Error::Precondition(
                "restricting End(1) needs loop value 0, otherwise composites leave k".into(),
            ));
        }
        let mut c = self.clone();
        c.restricted_unit = true;
        Ok(c)
    }

    pub fn hom_diagrams(&self, a: &Word, b: &Word) -> Result<Arc<Vec<Pairing>>> {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.diagram_cache.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(hom_basis(self.kind(), a, b, &self.caps)?);
        self.diagram_cache.write().unwrap().insert(key, v.clone());
        Ok(v)
    }

    // ------------------------------------------------------------ objects

    pub fn zero_object(&self) -> KObject<F> {
        KObject(Arc::new(KInner { words: vec![], idem: vec![], plain: true }))
    }

    pub fn plain_sum(&self, words: &[Word]) -> Result<KObject<F>> {
        for w in words {
            self.calc.check_word(w)?;
        }
        let idem = (0..words.len())
            .map(|i| (0..words.len()).map(|j| self.raw_identity_entry(words, i, j)).collect())
            .collect();
        Ok(KObject(Arc::new(KInner { words: words.to_vec(), idem, plain: true })))
    }

    fn raw_identity_entry(&self, words: &[Word], i: usize, j: usize) -> MorLin<F> {
        if i == j {
            self.calc.identity(&words[i])
        } else {
            MorLin::zero(words[j].clone(), words[i].clone())
        }
    }

    pub fn object(&self, w: &Word) -> Result<KObject<F>> {
        self.plain_sum(std::slice::from_ref(w))
    }

    pub fn word(&self, s: &str) -> Result<KObject<F>> {
        self.object(&Word::parse(s)?)
    }

    pub fn unit(&self) -> KObject<F> {
        self.object(&Word::unit()).expect("unit word is legal")
    }

    /// `(w, e)` for an idempotent `e` on the word `w`.
    pub fn object_with_idempotent(&self, w: &Word, e: MorLin<F>) -> Result<KObject<F>> {
        self.object_with_matrix(vec![w.clone()], vec![vec![e]])
    }

    /// As [`Self::object_with_idempotent`] for an `e` whose idempotency was
    /// already checked elsewhere (e.g. in a faithful representation).
    pub(crate) fn object_with_verified_idempotent(&self, w: &Word, e: MorLin<F>) -> Result<KObject<F>> {
        self.calc.check_word(w)?;
        if e.source != *w || e.target != *w {
            return Err(Error::Shape("idempotent has the wrong words".into()));
        }
        let plain = e == self.calc.identity(w);
        Ok(KObject(Arc::new(KInner { words: vec![w.clone()], idem: vec![vec![e]], plain })))
    }

    /// Object cut out by an idempotent matrix on `⊕ words`.
    pub fn object_with_matrix(&self, words: Vec<Word>, idem: Vec<Vec<MorLin<F>>>) -> Result<KObject<F>> {
        let n = words.len();
        if idem.len() != n || idem.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("idempotent matrix has the wrong size".into()));
        }
        for (i, row) in idem.iter().enumerate() {
            for (j, m) in row.iter().enumerate() {
                if m.source != words[j] || m.target != words[i] {
                    return Err(Error::Shape(format!("idempotent entry ({i},{j}) has wrong words")));
                }
            }
        }
        let plain = self.plain_sum(&words)?;
        let e = Morphism { source: plain.clone(), target: plain, entries: idem.clone() };
        if self.compose(&e, &e)? != e {
            return Err(Error::NotIdempotent);
        }
        let is_id = (0..n).all(|i| (0..n).all(|j| idem[i][j] == self.raw_identity_entry(&words, i, j)));
        Ok(KObject(Arc::new(KInner { words, idem, plain: is_id })))
    }

    pub fn direct_sum(&self, parts: &[KObject<F>]) -> KObject<F> {
        let words: Vec<Word> = parts.iter().flat_map(|p| p.words().iter().cloned()).collect();
        let mut idem: Vec<Vec<MorLin<F>>> = Vec::with_capacity(words.len());
        let mut plain = true;
        let mut offset = 0;
        for p in parts {
            plain &= p.is_plain();
            for i in 0..p.len() {
                let row = (0..words.len())
                    .map(|j| {
                        if j >= offset && j < offset + p.len() {
                            p.idem(i, j - offset).clone()
                        } else {
                            MorLin::zero(words[j].clone(), words[offset + i].clone())
                        }
                    })
                    .collect();
                idem.push(row);
            }
            offset += p.len();
        }
        KObject(Arc::new(KInner { words, idem, plain }))
    }

    pub fn tensor_objects(&self, x: &KObject<F>, y: &KObject<F>) -> KObject<F> {
        let mut words = Vec::with_capacity(x.len() * y.len());
        for a in x.words() {
            for b in y.words() {
                words.push(a.concat(b));
            }
        }
        let (nx, ny) = (x.len(), y.len());
        let mut idem = Vec::with_capacity(words.len());
        for i1 in 0..nx {
            for i2 in 0..ny {
                let mut row = Vec::with_capacity(words.len());
                for j1 in 0..nx {
                    for j2 in 0..ny {
                        row.push(self.calc.tensor(x.idem(i1, j1), y.idem(i2, j2)));
                    }
                }
                idem.push(row);
            }
        }
        let plain = x.is_plain() && y.is_plain();
        KObject(Arc::new(KInner { words, idem, plain }))
    }

    pub fn tensor_all(&self, objs: &[KObject<F>]) -> KObject<F> {
        objs.iter().fold(self.unit(), |acc, o| self.tensor_objects(&acc, o))
    }

    pub fn dual_object(&self, x: &KObject<F>) -> KObject<F> {
        let words: Vec<Word> = x.words().iter().map(|w| self.kind().dual_word(w)).collect();
        let n = x.len();
        let idem = (0..n)
            .map(|i| (0..n).map(|j| self.calc.dual(x.idem(j, i))).collect())
            .collect();
        KObject(Arc::new(KInner { words, idem, plain: x.is_plain() }))
    }

    // ------------------------------------------------------------ morphisms

    pub fn identity(&self, x: &KObject<F>) -> Morphism<F> {
        Morphism { source: x.clone(), target: x.clone(), entries: x.idem_matrix().clone() }
    }

    pub fn zero_morphism(&self, x: &KObject<F>, y: &KObject<F>) -> Morphism<F> {
        let entries = y
            .words()
            .iter()
            .map(|t| x.words().iter().map(|s| MorLin::zero(s.clone(), t.clone())).collect())
            .collect();
        Morphism { source: x.clone(), target: y.clone(), entries }
    }

    /// `E_y ∘ raw ∘ E_x` for a raw matrix between the underlying sums.
    pub fn compress(&self, x: &KObject<F>, y: &KObject<F>, entries: Vec<Vec<MorLin<F>>>) -> Result<Morphism<F>> {
        if entries.len() != y.len() || entries.iter().any(|r| r.len() != x.len()) {
            return Err(Error::Shape("entry matrix has the wrong size".into()));
        }
        let raw = Morphism { source: x.clone(), target: y.clone(), entries };
        let mut m = raw;
        if !x.is_plain() {
            m = self.compose(&m, &self.identity(x))?;
        }
        if !y.is_plain() {
            m = self.compose(&self.identity(y), &m)?;
        }
        Ok(m)
    }

    /// Morphism between single-word objects from one diagram combination.
    pub fn from_morlin(&self, x: &KObject<F>, y: &KObject<F>, m: MorLin<F>) -> Result<Morphism<F>> {
        if x.len() != 1 || y.len() != 1 {
            return Err(Error::Shape("from_morlin needs single-summand objects".into()));
        }
        if m.source != x.words()[0] || m.target != y.words()[0] {
            return Err(Error::Shape("diagram words do not match the objects".into()));
        }
        self.compress(x, y, vec![vec![m]])
    }

    /// Single-summand morphism with one nonzero entry at `(i, j)`, compressed.
    pub fn matrix_unit(&self, x: &KObject<F>, y: &KObject<F>, i: usize, j: usize, m: MorLin<F>) -> Result<Morphism<F>> {
        let mut z = self.zero_morphism(x, y);
        if m.source != x.words()[j] || m.target != y.words()[i] {
            return Err(Error::Shape("diagram words do not match the summands".into()));
        }
        z.entries[i][j] = m;
        self.compress(x, y, z.entries)
    }

    fn check_same(&self, a: &Morphism<F>, b: &Morphism<F>) -> Result<()> {
        if a.source != b.source || a.target != b.target {
            return Err(Error::Shape(format!(
                "morphisms {} → {} and {} → {} differ in shape",
                a.source, a.target, b.source, b.target
            )));
        }
        Ok(())
    }

    pub fn compose(&self, g: &Morphism<F>, f: &Morphism<F>) -> Result<Morphism<F>> {
        if f.target.words() != g.source.words() {
            return Err(Error::Shape(format!(
                "cannot compose {} → {} after {} → {}",
                g.source, g.target, f.source, f.target
            )));
        }
        let (ni, nj, nk) = (g.target.len(), f.target.len(), f.source.len());
        let mut entries = Vec::with_capacity(ni);
        for i in 0..ni {
            let mut row = Vec::with_capacity(nk);
            for k in 0..nk {
                let mut acc = MorLin::zero(f.source.words()[k].clone(), g.target.words()[i].clone());
                for j in 0..nj {
                    let (a, b) = (&g.entries[i][j], &f.entries[j][k]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let c = self.calc.compose(a, b)?;
                    self.calc.add_assign(&mut acc, &c, &self.field().one());
                }
                row.push(acc);
            }
            entries.push(row);
        }
        Ok(Morphism { source: f.source.clone(), target: g.target.clone(), entries })
    }

    pub fn compose_all(&self, chain: &[&Morphism<F>]) -> Result<Morphism<F>> {
        let (last, rest) = chain.split_last().ok_or_else(|| Error::Shape("empty chain".into()))?;
        let mut acc = (*last).clone();
        for m in rest.iter().rev() {
            acc = self.compose(m, &acc)?;
        }
        Ok(acc)
    }

    pub fn tensor(&self, f: &Morphism<F>, g: &Morphism<F>) -> Morphism<F> {
        let source = self.tensor_objects(&f.source, &g.source);
        let target = self.tensor_objects(&f.target, &g.target);
        let mut entries = Vec::with_capacity(target.len());
        for i1 in 0..f.target.len() {
            for i2 in 0..g.target.len() {
                let mut row = Vec::with_capacity(source.len());
                for j1 in 0..f.source.len() {
                    for j2 in 0..g.source.len() {
                        row.push(self.calc.tensor(&f.entries[i1][j1], &g.entries[i2][j2]));
                    }
                }
                entries.push(row);
            }
        }
        Morphism { source, target, entries }
    }

    pub fn tensor_many(&self, ms: &[&Morphism<F>]) -> Morphism<F> {
        let mut acc = self.identity(&self.unit());
        for m in ms {
            acc = self.tensor(&acc, m);
        }
        acc
    }

    /// `id_x ⊗ f`
    pub fn left(&self, x: &KObject<F>, f: &Morphism<F>) -> Morphism<F> {
        self.tensor(&self.identity(x), f)
    }

    /// `f ⊗ id_x`
    pub fn right(&self, f: &Morphism<F>, x: &KObject<F>) -> Morphism<F> {
        self.tensor(f, &self.identity(x))
    }

    pub fn add(&self, a: &Morphism<F>, b: &Morphism<F>) -> Result<Morphism<F>> {
        self.combine(a, b, &self.field().one())
    }

    pub fn sub(&self, a: &Morphism<F>, b: &Morphism<F>) -> Result<Morphism<F>> {
        self.combine(a, b, &self.field().from_int(-1))
    }

    /// `a + c·b`
    pub fn combine(&self, a: &Morphism<F>, b: &Morphism<F>, c: &F::Elem) -> Result<Morphism<F>> {
        self.check_same(a, b)?;
        let mut out = a.clone();
        for (ro, rb) in out.entries.iter_mut().zip(&b.entries) {
            for (o, x) in ro.iter_mut().zip(rb) {
                self.calc.add_assign(o, x, c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, a: &Morphism<F>, c: &F::Elem) -> Morphism<F> {
        let mut out = a.clone();
        for row in out.entries.iter_mut() {
            for m in row.iter_mut() {
                *m = self.calc.scale(m, c);
            }
        }
        out
    }

    /// `Σ c_i · m_i`, all of the given shape.
    pub fn linear_combination(&self, x: &KObject<F>, y: &KObject<F>, terms: &[(F::Elem, &Morphism<F>)]) -> Result<Morphism<F>> {
        let mut acc = self.zero_morphism(x, y);
        for (c, m) in terms {
            acc = self.combine(&acc, m, c)?;
        }
        Ok(acc)
    }

    // ------------------------------------------------------------ rigid structure

    /// `ev_x : x∨ ⊗ x → 𝟙`
    pub fn ev(&self, x: &KObject<F>) -> Morphism<F> {
        let xd = self.dual_object(x);
        let source = self.tensor_objects(&xd, x);
        let n = x.len();
        let row: Vec<MorLin<F>> = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                if i == j {
                    self.calc.ev(&x.words()[i])
                } else {
                    MorLin::zero(source.words()[idx].clone(), Word::unit())
                }
            })
            .collect();
        self.compress(&source, &self.unit(), vec![row]).expect("shapes agree")
    }

    /// `co_x : 𝟙 → x ⊗ x∨`
    pub fn co(&self, x: &KObject<F>) -> Morphism<F> {
        let xd = self.dual_object(x);
        let target = self.tensor_objects(x, &xd);
        let n = x.len();
        let col: Vec<Vec<MorLin<F>>> = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                vec![if i == j {
                    self.calc.co(&x.words()[i])
                } else {
                    MorLin::zero(Word::unit(), target.words()[idx].clone())
                }]
            })
            .collect();
        self.compress(&self.unit(), &target, col).expect("shapes agree")
    }

    /// `σ_{x,y} : x ⊗ y → y ⊗ x`
    pub fn braiding(&self, x: &KObject<F>, y: &KObject<F>) -> Morphism<F> {
        let source = self.tensor_objects(x, y);
        let target = self.tensor_objects(y, x);
        let (nx, ny) = (x.len(), y.len());
        let mut entries: Vec<Vec<MorLin<F>>> = target
            .words()
            .iter()
            .map(|t| source.words().iter().map(|s| MorLin::zero(s.clone(), t.clone())).collect())
            .collect();
        for i in 0..nx {
            for j in 0..ny {
                entries[j * nx + i][i * ny + j] = self.calc.braiding(&x.words()[i], &y.words()[j]);
            }
        }
        self.compress(&source, &target, entries).expect("shapes agree")
    }

    /// `f : x → y` gives `f∨ : y∨ → x∨`.
    pub fn dual(&self, f: &Morphism<F>) -> Morphism<F> {
        let source = self.dual_object(&f.target);
        let target = self.dual_object(&f.source);
        let entries = (0..f.source.len())
            .map(|i| (0..f.target.len()).map(|j| self.calc.dual(&f.entries[j][i])).collect())
            .collect();
        Morphism { source, target, entries }
    }

    pub fn trace(&self, f: &Morphism<F>) -> Result<F::Elem> {
        if f.source.words() != f.target.words() {
            return Err(Error::Shape("trace of a non-endomorphism".into()));
        }
        let mut acc = self.field().zero();
        for i in 0..f.source.len() {
            acc = self.field().add(&acc, &self.calc.trace(&f.entries[i][i])?);
        }
        Ok(acc)
    }

    pub fn dim(&self, x: &KObject<F>) -> F::Elem {
        self.trace(&self.identity(x)).expect("identity is an endomorphism")
    }

    /// Scalar of an endomorphism of 𝟙 (zero for the zero object).
    pub fn unit_scalar(&self, f: &Morphism<F>) -> F::Elem {
        if f.entries.len() == 1 && f.entries[0].len() == 1 {
            self.calc.unit_scalar(&f.entries[0][0])
        } else {
            self.field().zero()
        }
    }

    /// Image of an idempotent endomorphism.
    pub fn karoubi_split(&self, e: &Morphism<F>) -> Result<Split<F>> {
        if e.source != e.target {
            return Err(Error::Shape("idempotent must be an endomorphism".into()));
        }
        if self.compose(e, e)? != *e {
            return Err(Error::NotIdempotent);
        }
        let x = &e.source;
        let keep: Vec<usize> = (0..x.len())
            .filter(|&i| (0..x.len()).any(|j| !e.entries[i][j].is_zero() || !e.entries[j][i].is_zero()))
            .collect();
        let words: Vec<Word> = keep.iter().map(|&i| x.words()[i].clone()).collect();
        let idem: Vec<Vec<MorLin<F>>> =
            keep.iter().map(|&i| keep.iter().map(|&j| e.entries[i][j].clone()).collect()).collect();
        let n = words.len();
        let plain = (0..n).all(|i| (0..n).all(|j| idem[i][j] == self.raw_identity_entry(&words, i, j)));
        let object = KObject(Arc::new(KInner { words, idem, plain }));
        let incl = Morphism {
            source: object.clone(),
            target: x.clone(),
            entries: (0..x.len()).map(|i| keep.iter().map(|&j| e.entries[i][j].clone()).collect()).collect(),
        };
        let proj = Morphism {
            source: x.clone(),
            target: object.clone(),
            entries: keep.iter().map(|&i| e.entries[i].clone()).collect(),
        };
        Ok(Split { object, incl, proj })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rationals;
    use num_rational::BigRational;

    fn brauer(t: i64) -> Category<Rationals> {
        Category::new(Rationals, FlavorKind::Brauer, BigRational::from_integer(t.into()))
    }

    #[test]
    fn dim_of_generator_is_t() {
        let c = brauer(3);
        assert_eq!(c.dim(&c.word("+").unwrap()), BigRational::from_integer(3.into()));
        assert_eq!(c.dim(&c.unit()), BigRational::from_integer(1.into()));
    }

    #[test]
    fn rank_one_summand() {
        let c = brauer(3);
        let uu = c.word("++").unwrap();
        let u = c.word("+").unwrap();
        // (1/3) co ∘ ev on U⊗U
        let e = c.compose(&c.co(&u), &c.ev(&u)).unwrap();
        let e = c.scale(&e, &BigRational::new(1.into(), 3.into()));
        assert_eq!(e.source, uu);
        let s = c.karoubi_split(&e).unwrap();
        assert_eq!(c.dim(&s.object), BigRational::from_integer(1.into()));
        assert_eq!(c.compose(&s.proj, &s.incl).unwrap(), c.identity(&s.object));
        assert_eq!(c.compose(&s.incl, &s.proj).unwrap(), e);
    }

    #[test]
    fn zero_split() {
        let c = brauer(3);
        let uu = c.word("++").unwrap();
        let s = c.karoubi_split(&c.zero_morphism(&uu, &uu)).unwrap();
        assert!(s.object.is_zero());
    }
}
