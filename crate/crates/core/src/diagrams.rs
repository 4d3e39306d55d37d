//! String diagrams for the Brauer, walled Brauer, partition and
//! Temperley–Lieb flavors, and their linear combinations.
//!
//! Boundary points of a diagram `a → b` are numbered source first, then
//! target, each left to right. A [`Pairing`] assigns every point a block
//! label; labels are canonical (blocks numbered by their smallest point).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    Pos,
    Neg,
}

impl Letter {
    pub fn dual(self) -> Letter {
        match self {
            Letter::Pos => Letter::Neg,
            Letter::Neg => Letter::Pos,
        }
    }
}

/// Object word; the empty word is the tensor unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn unit() -> Word {
        Word(Vec::new())
    }

    /// `n` copies of the positive letter.
    pub fn plain(n: usize) -> Word {
        Word(vec![Letter::Pos; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dual(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.dual()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `"+-+"` style; `""` or `"1"` is the unit.
    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::unit());
        }
        s.chars()
            .map(|c| match c {
                '+' => Ok(Letter::Pos),
                '-' => Ok(Letter::Neg),
                _ => Err(Error::Invalid(format!("bad letter {c:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// All words of length ≤ `max` over the flavor's alphabet, ordered by
    /// length then lexicographically.
    pub fn all_up_to(kind: FlavorKind, max: usize) -> Vec<Word> {
        let mut out = vec![Word::unit()];
        let mut layer = vec![Word::unit()];
        for _ in 0..max {
            let mut next = Vec::new();
            for w in &layer {
                for l in kind.alphabet() {
                    let mut v = w.0.clone();
                    v.push(*l);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", if *l == Letter::Pos { '+' } else { '-' })?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlavorKind {
    Brauer,
    WalledBrauer,
    Partition,
    TemperleyLieb,
}

impl FlavorKind {
    pub fn alphabet(self) -> &'static [Letter] {
        match self {
            FlavorKind::WalledBrauer => &[Letter::Pos, Letter::Neg],
            _ => &[Letter::Pos],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FlavorKind::Brauer => "brauer",
            FlavorKind::WalledBrauer => "walled-brauer",
            FlavorKind::Partition => "partition",
            FlavorKind::TemperleyLieb => "temperley-lieb",
        }
    }

    /// Dual word: reversed, with letters flipped in the walled flavor.
    pub fn dual_word(self, w: &Word) -> Word {
        match self {
            FlavorKind::WalledBrauer => w.dual(),
            _ => Word(w.0.iter().rev().copied().collect()),
        }
    }
}

impl fmt::Display for FlavorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Canonically labeled set partition of the boundary points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing(Vec<u8>);

impl Pairing {
    /// Relabel arbitrary block labels canonically.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Pairing {
        let mut map: HashMap<T, u8> = HashMap::new();
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let n = map.len() as u8;
            out.push(*map.entry(*l).or_insert(n));
        }
        Pairing(out)
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Pairing> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            for &i in block {
                if i >= n || labels[i] != usize::MAX {
                    return Err(Error::Invalid(format!("point {i} missing or repeated")));
                }
                labels[i] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::Invalid("uncovered boundary point".into()));
        }
        Ok(Pairing::from_labels(&labels))
    }

    /// Relabel small integer labels canonically (fast path).
    fn from_small(labels: &[usize]) -> Pairing {
        let max = labels.iter().copied().max().map_or(0, |x| x + 1);
        let mut map = vec![u8::MAX; max];
        let mut next = 0u8;
        let out = labels
            .iter()
            .map(|&l| {
                if map[l] == u8::MAX {
                    map[l] = next;
                    next += 1;
                }
                map[l]
            })
            .collect();
        Pairing(out)
    }

    /// Perfect matching from a partner array.
    fn from_partners(partner: &[usize]) -> Pairing {
        let labels: Vec<usize> = partner.iter().enumerate().map(|(i, &j)| i.min(j)).collect();
        Pairing::from_small(&labels)
    }

    pub fn labels(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.0.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// Blocks as sorted point lists, ordered by smallest point.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &l) in self.0.iter().enumerate() {
            out[l as usize].push(i);
        }
        out
    }

    /// Partner array for a perfect matching.
    pub fn partners(&self) -> Option<Vec<usize>> {
        let mut first = vec![usize::MAX; self.num_blocks()];
        let mut partner = vec![usize::MAX; self.len()];
        for (i, &l) in self.0.iter().enumerate() {
            let l = l as usize;
            if first[l] == usize::MAX {
                first[l] = i;
            } else {
                if partner[first[l]] != usize::MAX {
                    return None;
                }
                partner[first[l]] = i;
                partner[i] = first[l];
            }
        }
        partner.iter().all(|&p| p != usize::MAX).then_some(partner)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Stack `g` (on `n + k` points) on top of `f` (on `m + n` points). Returns
/// the number of closed components and the composite on `m + k` points.
pub fn compose_pairings(f: &Pairing, m: usize, g: &Pairing, k: usize) -> (usize, Pairing) {
    let n = f.len() - m;
    debug_assert_eq!(g.len(), n + k);
    let bf = f.num_blocks();
    let bg = g.num_blocks();
    let mut uf = UnionFind::new(bf + bg);
    for j in 0..n {
        uf.union(f.0[m + j] as usize, bf + g.0[j] as usize);
    }
    let mut touched = vec![false; bf + bg];
    let mut labels = Vec::with_capacity(m + k);
    for i in 0..m {
        let r = uf.find(f.0[i] as usize);
        touched[r] = true;
        labels.push(r);
    }
    for l in 0..k {
        let r = uf.find(bf + g.0[n + l] as usize);
        touched[r] = true;
        labels.push(r);
    }
    let mut closed = 0;
    for x in 0..bf + bg {
        if uf.find(x) == x && !touched[x] {
            closed += 1;
        }
    }
    (closed, Pairing::from_small(&labels))
}

/// Juxtapose `f` (on `m1 + n1` points) left of `g` (on `m2 + n2` points).
pub fn tensor_pairings(f: &Pairing, m1: usize, g: &Pairing, m2: usize) -> Pairing {
    let n1 = f.len() - m1;
    let n2 = g.len() - m2;
    let off = f.num_blocks();
    let mut labels = Vec::with_capacity(f.len() + g.len());
    labels.extend(f.0[..m1].iter().map(|&l| l as usize));
    labels.extend(g.0[..m2].iter().map(|&l| l as usize + off));
    labels.extend(f.0[m1..m1 + n1].iter().map(|&l| l as usize));
    labels.extend(g.0[m2..m2 + n2].iter().map(|&l| l as usize + off));
    Pairing::from_small(&labels)
}

/// 180° rotation: `f: a → b` becomes `f∨: b∨ → a∨`.
pub fn rotate_pairing(f: &Pairing, m: usize) -> Pairing {
    let n = f.len() - m;
    let mut labels = Vec::with_capacity(f.len());
    for s in 0..n {
        labels.push(f.0[m + n - 1 - s]);
    }
    for t in 0..m {
        labels.push(f.0[m - 1 - t]);
    }
    Pairing::from_labels(&labels)
}

/// Vertical reflection: `f: a → b` becomes `b → a`.
pub fn flip_pairing(f: &Pairing, m: usize) -> Pairing {
    let mut labels = f.0[m..].to_vec();
    labels.extend_from_slice(&f.0[..m]);
    Pairing::from_labels(&labels)
}

/// Position of a boundary point on the circle bounding the rectangle
/// (source left to right, then target right to left).
fn circle_pos(i: usize, m: usize, n: usize) -> usize {
    if i < m {
        i
    } else {
        m + n - 1 - (i - m)
    }
}

fn point_of_circle(c: usize, m: usize, n: usize) -> usize {
    if c < m {
        c
    } else {
        m + (m + n - 1 - c)
    }
}

/// Point class for the walled flavor: an edge must join different classes.
fn walled_class(i: usize, source: &Word, target: &Word) -> bool {
    let m = source.len();
    if i < m {
        source.0[i] == Letter::Pos
    } else {
        target.0[i - m] == Letter::Neg
    }
}

/// Check that `pairing` is a legal diagram `source → target` for `kind`.
pub fn check_legal(kind: FlavorKind, source: &Word, target: &Word, pairing: &Pairing) -> Result<()> {
    let illegal = |reason: &str| Error::IllegalDiagram {
        flavor: kind.name().into(),
        reason: reason.into(),
    };
    let (m, n) = (source.len(), target.len());
    if pairing.len() != m + n {
        return Err(illegal("point count does not match the words"));
    }
    check_word(kind, source)?;
    check_word(kind, target)?;
    if kind == FlavorKind::Partition {
        return Ok(());
    }
    let partner = pairing.partners().ok_or_else(|| illegal("not a perfect matching"))?;
    match kind {
        FlavorKind::WalledBrauer => {
            for (i, &j) in partner.iter().enumerate() {
                if walled_class(i, source, target) == walled_class(j, source, target) {
                    return Err(illegal("edge violates strand orientation"));
                }
            }
        }
        FlavorKind::TemperleyLieb => {
            let mut stack = Vec::new();
            for c in 0..m + n {
                let i = point_of_circle(c, m, n);
                let pc = circle_pos(partner[i], m, n);
                if pc > c {
                    stack.push(c);
                } else if stack.pop() != Some(pc) {
                    return Err(illegal("crossing"));
                }
            }
        }
        _ => {}
    }
    Ok(())
}

pub fn check_word(kind: FlavorKind, w: &Word) -> Result<()> {
    if kind != FlavorKind::WalledBrauer && w.0.contains(&Letter::Neg) {
        return Err(Error::FlavorMismatch(format!(
            "word {w} uses a dual letter, but {kind} is self-dual on one letter"
        )));
    }
    Ok(())
}

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_points: usize,
    pub max_hom_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_points: 24, max_hom_dim: 200_000 }
    }
}

fn double_factorial_odd(n: usize) -> u128 {
    // (n-1)!! for even n
    let mut acc: u128 = 1;
    let mut k = n as u128;
    while k > 1 {
        acc = acc.saturating_mul(k - 1);
        k -= 2;
    }
    acc
}

pub fn catalan(n: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            let v = next.last().unwrap().saturating_add(*x);
            next.push(v);
        }
        row = next;
    }
    row[0]
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b))
}

/// Closed-form count of diagrams `source → target`.
pub fn hom_count(kind: FlavorKind, source: &Word, target: &Word) -> u128 {
    let n = source.len() + target.len();
    match kind {
        FlavorKind::Brauer => {
            if n % 2 == 0 {
                double_factorial_odd(n)
            } else {
                0
            }
        }
        FlavorKind::TemperleyLieb => {
            if n % 2 == 0 {
                catalan(n / 2)
            } else {
                0
            }
        }
        FlavorKind::Partition => bell(n),
        FlavorKind::WalledBrauer => {
            let a = (0..n).filter(|&i| walled_class(i, source, target)).count();
            if 2 * a == n {
                factorial(a)
            } else {
                0
            }
        }
    }
}

fn edge_sort(v: &mut [Pairing]) {
    v.sort_by_cached_key(|p| p.blocks());
}

/// All legal diagrams `source → target`, ordered by sorted edge list.
pub fn hom_basis(kind: FlavorKind, source: &Word, target: &Word, caps: &Caps) -> Result<Vec<Pairing>> {
    check_word(kind, source)?;
    check_word(kind, target)?;
    let n = source.len() + target.len();
    if n > caps.max_points {
        return Err(Error::CapExceeded {
            what: format!("boundary points of {source} → {target}"),
            needed: n as u128,
            cap: caps.max_points as u128,
        });
    }
    let count = hom_count(kind, source, target);
    if count > caps.max_hom_dim as u128 {
        return Err(Error::CapExceeded {
            what: format!("diagrams {source} → {target}"),
            needed: count,
            cap: caps.max_hom_dim as u128,
        });
    }
    let mut out = match kind {
        FlavorKind::Partition => enumerate_partitions(n),
        FlavorKind::TemperleyLieb => enumerate_planar(source.len(), target.len(), &|_, _| false),
        FlavorKind::Brauer => enumerate_matchings(n, &|_, _| true),
        FlavorKind::WalledBrauer => enumerate_matchings(n, &|i, j| {
            walled_class(i, source, target) != walled_class(j, source, target)
        }),
    };
    edge_sort(&mut out);
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

/// Planar diagrams `V^m → V^n` avoiding every edge for which `forbid`
/// holds, ordered by sorted edge list.
pub fn planar_basis_avoiding(m: usize, n: usize, forbid: &dyn Fn(usize, usize) -> bool) -> Vec<Pairing> {
    let mut out = enumerate_planar(m, n, forbid);
    edge_sort(&mut out);
    out
}

fn enumerate_matchings(n: usize, allowed: &dyn Fn(usize, usize) -> bool) -> Vec<Pairing> {
    fn rec(partner: &mut Vec<usize>, allowed: &dyn Fn(usize, usize) -> bool, out: &mut Vec<Pairing>) {
        let Some(i) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(Pairing::from_partners(partner));
            return;
        };
        for j in i + 1..partner.len() {
            if partner[j] == usize::MAX && allowed(i, j) {
                partner[i] = j;
                partner[j] = i;
                rec(partner, allowed, out);
                partner[i] = usize::MAX;
                partner[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    if n % 2 == 0 {
        rec(&mut vec![usize::MAX; n], allowed, &mut out);
    }
    out
}

fn enumerate_planar(m: usize, n: usize, forbid: &dyn Fn(usize, usize) -> bool) -> Vec<Pairing> {
    // non-crossing matchings of circle positions, pruned by `forbid`
    fn rec(
        lo: usize,
        hi: usize,
        m: usize,
        n: usize,
        forbid: &dyn Fn(usize, usize) -> bool,
        partner: &mut Vec<usize>,
        k: &mut dyn FnMut(&mut Vec<usize>),
    ) {
        if lo >= hi {
            k(partner);
            return;
        }
        let mut q = lo + 1;
        while q < hi {
            let (a, b) = (point_of_circle(lo, m, n), point_of_circle(q, m, n));
            if !forbid(a.min(b), a.max(b)) {
                partner[a] = b;
                partner[b] = a;
                rec(lo + 1, q, m, n, forbid, partner, &mut |p: &mut Vec<usize>| {
                    rec(q + 1, hi, m, n, forbid, p, k)
                });
            }
            q += 2;
        }
    }
    let total = m + n;
    let mut out = Vec::new();
    if total % 2 == 0 {
        let mut partner = vec![usize::MAX; total];
        rec(0, total, m, n, forbid, &mut partner, &mut |p: &mut Vec<usize>| {
            out.push(Pairing::from_partners(p))
        });
    }
    out
}

fn enumerate_partitions(n: usize) -> Vec<Pairing> {
    fn rec(labels: &mut Vec<u8>, n: usize, max: u8, out: &mut Vec<Pairing>) {
        if labels.len() == n {
            out.push(Pairing(labels.clone()));
            return;
        }
        for l in 0..=max {
            labels.push(l);
            rec(labels, n, if l == max { max + 1 } else { max }, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), n, 0, &mut out);
    out
}

/// A single diagram with its boundary words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    pub source: Word,
    pub target: Word,
    pub pairing: Pairing,
}

/// Finite linear combination of diagrams `source → target`. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorLin<F: Field> {
    pub source: Word,
    pub target: Word,
    pub terms: BTreeMap<Pairing, F::Elem>,
}

impl<F: Field> MorLin<F> {
    pub fn zero(source: Word, target: Word) -> Self {
        MorLin { source, target, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Pairing) -> Option<&F::Elem> {
        self.terms.get(p)
    }
}

/// Diagram calculus for one flavor over one field and loop value.
#[derive(Debug)]
pub struct Calculus<F: Field> {
    pub field: F,
    pub kind: FlavorKind,
    pub loop_value: F::Elem,
    loop_pows: Vec<F::Elem>,
    braid_cache: RwLock<HashMap<(Word, Word), Arc<MorLin<F>>>>,
}

impl<F: Field> Clone for Calculus<F> {
    fn clone(&self) -> Self {
        Calculus::new(self.field.clone(), self.kind, self.loop_value.clone())
    }
}

impl<F: Field> Calculus<F> {
    pub fn new(field: F, kind: FlavorKind, loop_value: F::Elem) -> Self {
        let mut loop_pows = vec![field.one()];
        for i in 1..=64 {
            let next = field.mul(&loop_pows[i - 1], &loop_value);
            loop_pows.push(next);
        }
        Calculus { field, kind, loop_value, loop_pows, braid_cache: RwLock::new(HashMap::new()) }
    }

    /// Temperley–Lieb over 𝔽_p-like fields with loop value −2.
    pub fn temperley_lieb(field: F) -> Self {
        let d = field.from_int(-2);
        Calculus::new(field, FlavorKind::TemperleyLieb, d)
    }

    fn loop_pow(&self, k: usize) -> F::Elem {
        if k < self.loop_pows.len() {
            self.loop_pows[k].clone()
        } else {
            self.field.pow(&self.loop_value, k as u64)
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        check_word(self.kind, w)
    }

    fn single(&self, source: Word, target: Word, p: Pairing, c: F::Elem) -> MorLin<F> {
        let mut m = MorLin::zero(source, target);
        if !self.field.is_zero(&c) {
            m.terms.insert(p, c);
        }
        m
    }

    pub fn diagram(&self, d: &Diagram) -> Result<MorLin<F>> {
        check_legal(self.kind, &d.source, &d.target, &d.pairing)?;
        Ok(self.single(d.source.clone(), d.target.clone(), d.pairing.clone(), self.field.one()))
    }

    /// Unchecked: the caller guarantees legality.
    pub fn from_pairing(&self, source: &Word, target: &Word, p: Pairing) -> MorLin<F> {
        self.single(source.clone(), target.clone(), p, self.field.one())
    }

    pub fn identity_pairing(n: usize) -> Pairing {
        let labels: Vec<usize> = (0..2 * n).map(|i| i % n.max(1)).collect();
        Pairing::from_labels(&labels)
    }

    pub fn identity(&self, w: &Word) -> MorLin<F> {
        self.from_pairing(w, w, Self::identity_pairing(w.len()))
    }

    pub fn add(&self, a: &MorLin<F>, b: &MorLin<F>) -> Result<MorLin<F>> {
        self.same_shape(a, b)?;
        let mut out = a.clone();
        self.add_assign(&mut out, b, &self.field.one());
        Ok(out)
    }

    pub fn sub(&self, a: &MorLin<F>, b: &MorLin<F>) -> Result<MorLin<F>> {
        self.same_shape(a, b)?;
        let mut out = a.clone();
        self.add_assign(&mut out, b, &self.field.from_int(-1));
        Ok(out)
    }

    /// `acc += c · b` (shapes assumed equal).
    pub fn add_assign(&self, acc: &mut MorLin<F>, b: &MorLin<F>, c: &F::Elem) {
        let f = &self.field;
        if f.is_zero(c) {
            return;
        }
        for (p, x) in &b.terms {
            let add = f.mul(c, x);
            self.add_term(acc, p.clone(), add);
        }
    }

    fn add_term(&self, acc: &mut MorLin<F>, p: Pairing, c: F::Elem) {
        let f = &self.field;
        use std::collections::btree_map::Entry;
        match acc.terms.entry(p) {
            Entry::Vacant(v) => {
                if !f.is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = f.add(o.get(), &c);
                if f.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, a: &MorLin<F>, c: &F::Elem) -> MorLin<F> {
        let f = &self.field;
        if f.is_zero(c) {
            return MorLin::zero(a.source.clone(), a.target.clone());
        }
        MorLin {
            source: a.source.clone(),
            target: a.target.clone(),
            terms: a.terms.iter().map(|(p, x)| (p.clone(), f.mul(c, x))).collect(),
        }
    }

    pub fn neg(&self, a: &MorLin<F>) -> MorLin<F> {
        self.scale(a, &self.field.from_int(-1))
    }

    fn same_shape(&self, a: &MorLin<F>, b: &MorLin<F>) -> Result<()> {
        if a.source != b.source || a.target != b.target {
            return Err(Error::Shape(format!(
                "cannot add {} → {} and {} → {}",
                a.source, a.target, b.source, b.target
            )));
        }
        Ok(())
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &MorLin<F>, f: &MorLin<F>) -> Result<MorLin<F>> {
        if f.target != g.source {
            return Err(Error::Shape(format!(
                "cannot compose {} → {} after {} → {}",
                g.source, g.target, f.source, f.target
            )));
        }
        let m = f.source.len();
        let k = g.target.len();
        let mut out = MorLin::zero(f.source.clone(), g.target.clone());
        for (pf, cf) in &f.terms {
            for (pg, cg) in &g.terms {
                let (loops, p) = compose_pairings(pf, m, pg, k);
                let c = self.field.mul(&self.field.mul(cf, cg), &self.loop_pow(loops));
                self.add_term(&mut out, p, c);
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, a: &MorLin<F>, b: &MorLin<F>) -> MorLin<F> {
        let (m1, m2) = (a.source.len(), b.source.len());
        let mut out = MorLin::zero(a.source.concat(&b.source), a.target.concat(&b.target));
        for (pa, ca) in &a.terms {
            for (pb, cb) in &b.terms {
                let p = tensor_pairings(pa, m1, pb, m2);
                self.add_term(&mut out, p, self.field.mul(ca, cb));
            }
        }
        out
    }

    /// `ev_w : w∨ ⊗ w → 𝟙` (nested caps).
    pub fn ev(&self, w: &Word) -> MorLin<F> {
        let n = w.len();
        let partner: Vec<usize> = (0..2 * n).map(|i| 2 * n - 1 - i).collect();
        self.from_pairing(&self.kind.dual_word(w).concat(w), &Word::unit(), Pairing::from_partners(&partner))
    }

    /// `co_w : 𝟙 → w ⊗ w∨` (nested cups).
    pub fn co(&self, w: &Word) -> MorLin<F> {
        let n = w.len();
        let partner: Vec<usize> = (0..2 * n).map(|i| 2 * n - 1 - i).collect();
        self.from_pairing(&Word::unit(), &w.concat(&self.kind.dual_word(w)), Pairing::from_partners(&partner))
    }

    /// Permutation diagram sending source point `i` to target position
    /// `perm[i]`.
    pub fn permutation(&self, source: &Word, perm: &[usize]) -> MorLin<F> {
        let n = source.len();
        let mut target = vec![Letter::Pos; n];
        let mut labels = vec![0usize; 2 * n];
        for i in 0..n {
            target[perm[i]] = source.0[i];
            labels[i] = i;
            labels[n + perm[i]] = i;
        }
        self.from_pairing(source, &Word(target), Pairing::from_labels(&labels))
    }

    /// TL generator `e_k` (cap then cup at positions k, k+1) on `V^n`.
    pub fn tl_generator(&self, n: usize, k: usize) -> MorLin<F> {
        let mut labels: Vec<usize> = (0..2 * n).map(|i| i % n).collect();
        labels[k + 1] = k;
        labels[n + k] = n + k;
        labels[n + k + 1] = n + k;
        let w = Word::plain(n);
        self.from_pairing(&w, &w, Pairing::from_labels(&labels))
    }

    /// Symmetry `σ_{a,b} : a ⊗ b → b ⊗ a`. In the TL flavor each crossing
    /// is `id + e`.
    pub fn braiding(&self, a: &Word, b: &Word) -> MorLin<F> {
        let key = (a.clone(), b.clone());
        if let Some(m) = self.braid_cache.read().unwrap().get(&key) {
            return (**m).clone();
        }
        let (na, nb) = (a.len(), b.len());
        let perm: Vec<usize> = (0..na).map(|i| nb + i).chain(0..nb).collect();
        let src = a.concat(b);
        let out = if self.kind == FlavorKind::TemperleyLieb {
            self.planar_crossings(&src, &perm)
        } else {
            self.permutation(&src, &perm)
        };
        self.braid_cache.write().unwrap().insert(key, Arc::new(out.clone()));
        out
    }

    /// Permutation built from adjacent transpositions `id + e_k`.
    fn planar_crossings(&self, src: &Word, perm: &[usize]) -> MorLin<F> {
        let n = src.len();
        let mut cur: Vec<usize> = (0..n).collect();
        let mut acc = self.identity(src);
        loop {
            let mut swapped = false;
            for k in 0..n.saturating_sub(1) {
                if perm[cur[k]] > perm[cur[k + 1]] {
                    cur.swap(k, k + 1);
                    let mut s = self.identity(src);
                    self.add_assign(&mut s, &self.tl_generator(n, k), &self.field.one());
                    acc = self.compose(&s, &acc).expect("same word");
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        acc
    }

    /// Mate under the rigid structure: `f : a → b` gives `f∨ : b∨ → a∨`.
    pub fn dual(&self, f: &MorLin<F>) -> MorLin<F> {
        let m = f.source.len();
        MorLin {
            source: self.kind.dual_word(&f.target),
            target: self.kind.dual_word(&f.source),
            terms: f.terms.iter().map(|(p, c)| (rotate_pairing(p, m), c.clone())).collect(),
        }
    }

    /// Categorical (symmetric) trace of an endomorphism.
    pub fn trace(&self, f: &MorLin<F>) -> Result<F::Elem> {
        if f.source != f.target {
            return Err(Error::Shape("trace of a non-endomorphism".into()));
        }
        let n = f.source.len();
        let mut acc = self.field.zero();
        for (p, c) in &f.terms {
            let mut uf = UnionFind::new(p.num_blocks());
            for i in 0..n {
                uf.union(p.0[i] as usize, p.0[n + i] as usize);
            }
            let comps = (0..p.num_blocks()).filter(|&x| uf.find(x) == x).count();
            let v = self.field.mul(c, &self.loop_pow(comps));
            acc = self.field.add(&acc, &v);
        }
        // the twist on a TL strand is −1
        if self.kind == FlavorKind::TemperleyLieb && n % 2 == 1 {
            acc = self.field.neg(&acc);
        }
        Ok(acc)
    }

    /// Scalar of an endomorphism of the unit.
    pub fn unit_scalar(&self, f: &MorLin<F>) -> F::Elem {
        f.terms.values().next().cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Vertical reflection of a diagram combination.
    pub fn flip(&self, f: &MorLin<F>) -> MorLin<F> {
        let m = f.source.len();
        MorLin {
            source: f.target.clone(),
            target: f.source.clone(),
            terms: f.terms.iter().map(|(p, c)| (flip_pairing(p, m), c.clone())).collect(),
        }
    }
}
