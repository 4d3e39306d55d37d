//! The Temperley–Lieb action on `V^{⊗n}`, `V = F_p²` with basis `x, y`,
//! cap `⟨x,y⟩ = 1 = −⟨y,x⟩` and cup `y⊗x − x⊗y` (so the loop is −2).
//!
//! Maps preserve the weight (#x − #y), so they are stored block by block,
//! indexed by the number of `y` letters in the source basis word. Bit `k`
//! of a basis index is the letter at position `k` (1 = y).

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use crate::diagrams::{hom_basis, Caps, FlavorKind, MorLin, Pairing, Word};
use crate::error::{Error, Result};
use crate::scalars::PrimeField;

/// Basis words of length n grouped by y-count.
pub(crate) struct Layout {
    index: Vec<u32>,
    strings: Vec<Vec<u32>>,
}

pub(crate) fn layout(n: usize) -> Arc<Layout> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Layout>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(l) = cache.lock().unwrap().get(&n) {
        return l.clone();
    }
    let mut strings = vec![Vec::new(); n + 1];
    let mut index = vec![0u32; 1 << n];
    for s in 0..(1u32 << n) {
        let c = s.count_ones() as usize;
        index[s as usize] = strings[c].len() as u32;
        strings[c].push(s);
    }
    let l = Arc::new(Layout { index, strings });
    cache.lock().unwrap().insert(n, l.clone());
    l
}

fn reduce(v: i64, p: u64) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// Dense matrix mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Dense {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, data: vec![0; rows * cols] }
    }

    fn at(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    fn mul(&self, other: &Dense, p: u64) -> Dense {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Dense::zero(self.rows, other.cols);
        if self.rows == 0 || other.cols == 0 || self.cols == 0 {
            return out;
        }
        // products below p², summed in u64 with periodic reduction
        let chunk = ((u64::MAX / ((p - 1) * (p - 1)).max(1)) as usize).clamp(1, usize::MAX);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0usize;
            for k in 0..self.cols {
                let a = self.at(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (x, &b) in acc.iter_mut().zip(row) {
                    *x += a * b as u64;
                }
                pending += 1;
                if pending + 1 >= chunk {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (j, x) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (x % p) as u32;
            }
        }
        out
    }
}

/// Weight-preserving linear map `V^{⊗m} → V^{⊗n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WMat {
    pub m: usize,
    pub n: usize,
    blocks: Vec<Dense>,
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl WMat {
    fn target_count(m: usize, n: usize, j: usize) -> Option<usize> {
        let t = j as i64 + (n as i64 - m as i64) / 2;
        (t >= 0 && t as usize <= n).then_some(t as usize)
    }

    pub fn zero(m: usize, n: usize) -> Self {
        assert_eq!(m % 2, n % 2, "weight-preserving maps need equal parity");
        let blocks = (0..=m)
            .map(|j| {
                let rows = WMat::target_count(m, n, j).map_or(0, |t| binom(n, t));
                Dense::zero(rows, binom(m, j))
            })
            .collect();
        WMat { m, n, blocks }
    }

    pub fn identity(n: usize) -> Self {
        let mut e = WMat::zero(n, n);
        for b in &mut e.blocks {
            for i in 0..b.rows {
                b.data[i * b.cols + i] = 1;
            }
        }
        e
    }

    /// Build from the images of basis words: `f(s)` lists `(t, coefficient)`.
    pub fn from_fn(m: usize, n: usize, p: u64, mut f: impl FnMut(u32) -> Vec<(u32, i64)>) -> Self {
        let mut out = WMat::zero(m, n);
        let (lm, ln) = (layout(m), layout(n));
        for j in 0..=m {
            for (col, &s) in lm.strings[j].iter().enumerate() {
                for (t, c) in f(s) {
                    debug_assert_eq!(WMat::target_count(m, n, j), Some(t.count_ones() as usize));
                    let b = &mut out.blocks[j];
                    let row = ln.index[t as usize] as usize;
                    let cell = &mut b.data[row * b.cols + col];
                    *cell = ((*cell as u64 + reduce(c, p) as u64) % p) as u32;
                }
            }
        }
        out
    }

    /// Matrix entry `⟨t | f | s⟩`.
    pub fn get(&self, t: u32, s: u32) -> u32 {
        let j = s.count_ones() as usize;
        match WMat::target_count(self.m, self.n, j) {
            Some(c) if c == t.count_ones() as usize => {
                let (lm, ln) = (layout(self.m), layout(self.n));
                self.blocks[j].at(ln.index[t as usize] as usize, lm.index[s as usize] as usize)
            }
            _ => 0,
        }
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &WMat, p: u64) -> WMat {
        assert_eq!(f.n, self.m, "composable shapes");
        let mut out = WMat::zero(f.m, self.n);
        for j in 0..=f.m {
            if let Some(mid) = WMat::target_count(f.m, f.n, j) {
                out.blocks[j] = self.blocks[mid].mul(&f.blocks[j], p);
            }
        }
        out
    }

    fn zip(&self, other: &WMat, p: u64, op: impl Fn(u64, u64) -> u64) -> WMat {
        assert_eq!((self.m, self.n), (other.m, other.n));
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| Dense {
                rows: a.rows,
                cols: a.cols,
                data: a.data.iter().zip(&b.data).map(|(&x, &y)| (op(x as u64, y as u64) % p) as u32).collect(),
            })
            .collect();
        WMat { m: self.m, n: self.n, blocks }
    }

    pub fn add(&self, other: &WMat, p: u64) -> WMat {
        self.zip(other, p, |x, y| x + y)
    }

    pub fn sub(&self, other: &WMat, p: u64) -> WMat {
        self.zip(other, p, move |x, y| x + p - y)
    }

    pub fn scale(&self, c: u64, p: u64) -> WMat {
        self.zip(self, p, move |x, _| x * (c % p))
    }

    pub fn axpy(&mut self, c: u64, other: &WMat, p: u64) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            for (x, &y) in a.data.iter_mut().zip(&b.data) {
                *x = ((*x as u64 + c * y as u64) % p) as u32;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.data.iter().all(|&x| x == 0))
    }

    /// `self ⊗ id_V`, the new letter sitting at position n.
    pub fn tensor_id(&self, p: u64) -> WMat {
        let (m, n) = (self.m, self.n);
        let ln = layout(n);
        WMat::from_fn(m + 1, n + 1, p, |s| {
            let low = s & ((1 << m) - 1);
            let top = s >> m;
            let j = low.count_ones() as usize;
            let Some(t) = WMat::target_count(m, n, j) else { return vec![] };
            let b = &self.blocks[j];
            let col = layout(m).index[low as usize] as usize;
            ln.strings[t]
                .iter()
                .enumerate()
                .filter_map(|(row, &u)| {
                    let v = b.at(row, col);
                    (v != 0).then(|| (u | (top << n), v as i64))
                })
                .collect()
        })
    }

    /// All entries, block after block.
    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data.iter().copied()).collect()
    }

    /// Ranks of the weight blocks, by source y-count.
    pub fn block_ranks(&self, p: u64) -> Vec<usize> {
        self.blocks.iter().map(|b| rank_dense(b, p)).collect()
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rank_dense(b: &Dense, p: u64) -> usize {
    let mut s = ModSpan::new(p);
    for i in 0..b.rows {
        s.insert(b.data[i * b.cols..(i + 1) * b.cols].to_vec());
    }
    s.dim()
}

/// Incremental row echelon form mod p, optionally tracking how each stored
/// row combines the inserted vectors.
pub(crate) struct ModSpan {
    p: u64,
    rows: Vec<(usize, Vec<u32>, Vec<u32>)>,
    inserted: usize,
}

impl ModSpan {
    pub fn new(p: u64) -> Self {
        ModSpan { p, rows: Vec::new(), inserted: 0 }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v`; returns the residue and the combination of inserted
    /// vectors that was subtracted.
    fn reduce(&self, mut v: Vec<u32>) -> (Vec<u32>, Vec<u32>) {
        let p = self.p;
        let mut combo = vec![0u32; self.inserted + 1];
        for (piv, row, rc) in &self.rows {
            let c = v[*piv] as u64;
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                if y != 0 {
                    *x = ((*x as u64 + (p - c) * y as u64) % p) as u32;
                }
            }
            for (x, &y) in combo.iter_mut().zip(rc) {
                if y != 0 {
                    *x = ((*x as u64 + c * y as u64) % p) as u32;
                }
            }
        }
        (v, combo)
    }

    /// Insert `v`; if it is dependent, returns its coordinates in terms of
    /// the previously inserted vectors.
    pub fn insert(&mut self, v: Vec<u32>) -> Option<Vec<u32>> {
        let p = self.p;
        let (r, combo) = self.reduce(v);
        let k = self.inserted;
        self.inserted += 1;
        match r.iter().position(|&x| x != 0) {
            None => Some(combo[..k].to_vec()),
            Some(piv) => {
                let inv = inv_mod(r[piv] as u64, p);
                let row: Vec<u32> = r.iter().map(|&x| (x as u64 * inv % p) as u32).collect();
                // row = inv·(v − Σ combo·inserted)
                let mut rc: Vec<u32> = combo.iter().map(|&x| ((p - x as u64) % p * inv % p) as u32).collect();
                rc.resize(self.inserted, 0);
                rc[k] = inv as u32;
                for (_, _, other) in &mut self.rows {
                    other.resize(self.inserted, 0);
                }
                self.rows.push((piv, row, rc));
                None
            }
        }
    }
}

/// Keep a linearly independent subfamily, in order.
pub(crate) fn independent(ms: Vec<WMat>, p: u64) -> Vec<WMat> {
    let mut span = ModSpan::new(p);
    ms.into_iter().filter(|m| span.insert(m.flatten()).is_none()).collect()
}

// ---------------------------------------------------------------- diagrams

fn partners(d: &Pairing) -> Vec<usize> {
    d.partners().expect("Temperley–Lieb diagrams are perfect matchings")
}

/// `⟨t | ρ(D) | s⟩` for a diagram `D : m → n` (points: sources, then targets).
pub(crate) fn diagram_entry(part: &[usize], m: usize, s: u32, t: u32) -> i64 {
    let bit = |w: u32, k: usize| (w >> k) & 1;
    let mut val = 1i64;
    for (a, &q) in part.iter().enumerate() {
        if a > q {
            continue;
        }
        val *= match (a < m, q < m) {
            (true, true) => match (bit(s, a), bit(s, q)) {
                (0, 1) => 1,
                (1, 0) => -1,
                _ => 0,
            },
            (true, false) => (bit(s, a) == bit(t, q - m)) as i64,
            (false, false) => match (bit(t, a - m), bit(t, q - m)) {
                (1, 0) => 1,
                (0, 1) => -1,
                _ => 0,
            },
            (false, true) => unreachable!(),
        };
        if val == 0 {
            return 0;
        }
    }
    val
}

/// `ρ(D)` for a Temperley–Lieb diagram `D : V^{⊗m} → V^{⊗n}`.
pub fn eval_diagram(d: &Pairing, m: usize, n: usize, p: u64) -> WMat {
    let part = partners(d);
    let cups: Vec<(usize, usize)> = (m..m + n)
        .filter(|&a| part[a] > a)
        .map(|a| (a - m, part[a] - m))
        .collect();
    WMat::from_fn(m, n, p, |s| {
        let mut sign = 1i64;
        let mut base = 0u32;
        for a in 0..m {
            let q = part[a];
            if q < m {
                if a < q {
                    sign *= match ((s >> a) & 1, (s >> q) & 1) {
                        (0, 1) => 1,
                        (1, 0) => -1,
                        _ => 0,
                    };
                }
            } else if (s >> a) & 1 == 1 {
                base |= 1 << (q - m);
            }
        }
        if sign == 0 {
            return vec![];
        }
        (0..1u32 << cups.len())
            .map(|mask| {
                let mut t = base;
                let mut c = sign;
                for (k, &(l, r)) in cups.iter().enumerate() {
                    if (mask >> k) & 1 == 1 {
                        t |= 1 << l; // y ⊗ x
                    } else {
                        t |= 1 << r; // −x ⊗ y
                        c = -c;
                    }
                }
                (t, c)
            })
            .collect()
    })
}

/// `ρ` of a diagram combination.
pub fn eval_morlin(f: &MorLin<PrimeField>, p: u64) -> WMat {
    let (m, n) = (f.source.len(), f.target.len());
    let mut out = WMat::zero(m, n);
    for (d, c) in &f.terms {
        out.axpy(*c, &eval_diagram(d, m, n, p), p);
    }
    out
}

/// Position of a boundary point in circle order (sources left to right,
/// then targets right to left).
fn circle_pos(point: usize, m: usize, n: usize) -> usize {
    if point < m {
        point
    } else {
        m + (n - 1 - (point - m))
    }
}

/// Recover the diagram coordinates of `e ∈ ρ(TL)`.
///
/// Index rows by circle words with the target letters swapped; a diagram is
/// nonzero at such a word exactly when each of its arcs joins two different
/// letters. Writing `w(D)` for the word with `x` at the first end of every
/// arc, a nonzero entry at `w` forces `w ≥ w(D)` lexicographically with
/// equality only for `w = w(D)`, so the system is unitriangular up to sign.
pub fn lift(e: &WMat, p: u64, caps: &Caps) -> Result<MorLin<PrimeField>> {
    let (m, n) = (e.m, e.n);
    let diagrams = hom_basis(FlavorKind::TemperleyLieb, &Word::plain(m), &Word::plain(n), caps)?;
    let len = m + n;
    let decode = |w: u32| -> (u32, u32) {
        let s = w & ((1u32 << m) - 1);
        let mut t = 0u32;
        for c in 0..n {
            if (w >> (m + n - 1 - c)) & 1 == 0 {
                t |= 1 << c;
            }
        }
        (s, t)
    };
    let lex_key = |w: u32| -> u32 { (0..len).fold(0u32, |acc, k| (acc << 1) | ((w >> k) & 1)) };
    struct Item {
        arcs: Vec<(usize, usize)>,
        part: Vec<usize>,
        word: u32,
    }
    let items: Vec<Item> = diagrams
        .iter()
        .map(|d| {
            let part = partners(d);
            let mut arcs = Vec::new();
            let mut word = 0u32;
            for (a, &q) in part.iter().enumerate() {
                if a < q {
                    let (x, y) = {
                        let (u, v) = (circle_pos(a, m, n), circle_pos(q, m, n));
                        (u.min(v), u.max(v))
                    };
                    arcs.push((x, y));
                    word |= 1 << y;
                }
            }
            Item { arcs, part, word }
        })
        .collect();
    let dyck: HashSet<u32> = items.iter().map(|it| it.word).collect();
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&k| lex_key(items[k].word));
    let mut acc: HashMap<u32, u64> = HashMap::new();
    let mut terms = std::collections::BTreeMap::new();
    for k in order {
        let it = &items[k];
        let (s, t) = decode(it.word);
        let diag = reduce(diagram_entry(&it.part, m, s, t), p) as u64;
        if diag == 0 {
            return Err(Error::Inconsistent("lifting system is not unitriangular".into()));
        }
        let rhs = (e.get(t, s) as u64 + p - acc.get(&it.word).copied().unwrap_or(0)) % p;
        let c = rhs * inv_mod(diag, p) % p;
        if c == 0 {
            continue;
        }
        terms.insert(diagrams[k].clone(), c);
        for mask in 1u32..(1 << it.arcs.len()) {
            let mut w = it.word;
            for (b, &(x, y)) in it.arcs.iter().enumerate() {
                if (mask >> b) & 1 == 1 {
                    w ^= (1 << x) | (1 << y);
                }
            }
            if !dyck.contains(&w) {
                continue;
            }
            let (s2, t2) = decode(w);
            let v = reduce(diagram_entry(&it.part, m, s2, t2), p) as u64;
            if v != 0 {
                let slot = acc.entry(w).or_insert(0);
                *slot = (*slot + c * v) % p;
            }
        }
    }
    let out = MorLin { source: Word::plain(m), target: Word::plain(n), terms };
    if eval_morlin(&out, p) != *e {
        return Err(Error::Inconsistent("matrix is not in the image of the diagram algebra".into()));
    }
    Ok(out)
}

/// Diagrams `V^{⊗k} → V^{⊗n}` whose sources all go through.
pub(crate) fn cup_diagrams(k: usize, n: usize, caps: &Caps) -> Result<Vec<Pairing>> {
    Ok(hom_basis(FlavorKind::TemperleyLieb, &Word::plain(k), &Word::plain(n), caps)?
        .into_iter()
        .filter(|d| partners(d)[..k].iter().all(|&q| q >= k))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::Calculus;

    #[test]
    fn snake_and_loop() {
        let p = 7;
        let cap = Pairing::from_blocks(2, &[vec![0, 1]]).unwrap();
        let cup = cap.clone();
        let loop_ = eval_diagram(&cap, 2, 0, p).compose(&eval_diagram(&cup, 0, 2, p), p);
        assert_eq!(loop_.get(0, 0), 5); // −2 mod 7
        let calc = Calculus::temperley_lieb(PrimeField::new(p).unwrap());
        let e = calc.tl_generator(3, 0);
        let f = calc.tl_generator(3, 1);
        let efe = calc.compose(&e, &calc.compose(&f, &e).unwrap()).unwrap();
        assert_eq!(eval_morlin(&efe, p), eval_morlin(&e, p));
    }

    #[test]
    fn functorial_on_random_products() {
        let p = 3;
        let calc = Calculus::temperley_lieb(PrimeField::new(p).unwrap());
        let gens: Vec<_> = (0..4).map(|k| calc.tl_generator(5, k)).collect();
        let mut a = calc.identity(&Word::plain(5));
        for k in [0, 2, 1, 3, 2, 0] {
            let b = calc.add(&a, &calc.compose(&gens[k], &a).unwrap()).unwrap();
            assert_eq!(eval_morlin(&b, p), eval_morlin(&a, p).add(&eval_morlin(&gens[k], p).compose(&eval_morlin(&a, p), p), p));
            a = b;
        }
        assert_eq!(lift(&eval_morlin(&a, p), p, &Caps::default()).unwrap(), a);
    }

    #[test]
    fn lift_rectangular() {
        let p = 5;
        let calc = Calculus::temperley_lieb(PrimeField::new(p).unwrap());
        let co = calc.co(&Word::plain(2));
        let x = calc.tensor(&co, &calc.identity(&Word::plain(2)));
        assert_eq!(lift(&eval_morlin(&x, p), p, &Caps::default()).unwrap(), x);
    }
}
