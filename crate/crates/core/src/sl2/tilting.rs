//! Primitive idempotent decompositions of `V^{⊗n}` over F_p.
//!
//! Work happens in the faithful weight-graded model of `rep`. A primitive
//! decomposition of `V^{⊗(n−1)}` is tensored with `V`, and each `e ⊗ 1` is
//! split inside its corner algebra `(e⊗1)·TL_n·(e⊗1)`. That corner is
//! computed exactly: every diagram factors as `ι_M ∘ π_M'` through its
//! through-strands, so the corner is spanned by products of
//! `(e⊗1)ι_M` and `π_M'(e⊗1)`. Splitting uses generalized eigenspaces of
//! corner elements, and an idempotent is declared primitive only with a
//! certificate: a codimension-one nilpotent ideal in its corner.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::characters::{decompose_tilting, tensor_power_character, tilting_character, Character};
use super::rep::{cup_diagrams, eval_diagram, independent, inv_mod, ModSpan, WMat};
use crate::diagrams::{flip_pairing, Caps};
use crate::error::{Error, Result};

/// One indecomposable summand `e·V^{⊗n}`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub label: usize,
    pub character: Character,
    pub idempotent: WMat,
}

#[derive(Clone, Debug)]
pub struct TiltingDecomposition {
    pub n: usize,
    pub p: u64,
    pub summands: Vec<Summand>,
    /// Labels counted from the idempotents.
    pub multiplicities: BTreeMap<usize, u64>,
    /// Labels from greedy subtraction of tilting characters.
    pub character_route: BTreeMap<usize, u64>,
}

impl TiltingDecomposition {
    pub fn agrees(&self) -> bool {
        self.multiplicities == self.character_route
    }
}

/// Table row for reports.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionRow {
    pub n: usize,
    pub idempotent_route: BTreeMap<usize, u64>,
    pub character_route: BTreeMap<usize, u64>,
    pub agree: bool,
}

impl From<&TiltingDecomposition> for DecompositionRow {
    fn from(d: &TiltingDecomposition) -> Self {
        DecompositionRow {
            n: d.n,
            idempotent_route: d.multiplicities.clone(),
            character_route: d.character_route.clone(),
            agree: d.agrees(),
        }
    }
}

// ---------------------------------------------------------------- polynomials mod p

type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &Poly, b: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn poly_sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p).collect())
}

fn poly_divrem(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly) {
    let b = trim(b.clone());
    let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p);
    let mut r = trim(a.clone());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![0; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * lead_inv % p;
        q[shift] = c;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * y % p) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

/// `(g, u, v)` with `u·a + v·b = g = gcd(a, b)`.
fn poly_ext_gcd(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (trim(a.clone()), trim(b.clone()));
    let (mut s0, mut s1) = (vec![1], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = poly_sub(&t0, &poly_mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    (r0, s0, t0)
}

fn poly_eval(a: &Poly, x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, c| (acc * x + c) % p)
}

/// Roots in F_p with multiplicity.
fn roots(a: &Poly, p: u64) -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    for x in 0..p {
        let lin = vec![(p - x) % p, 1];
        let mut rest = a.clone();
        let mut k = 0;
        while rest.len() > 1 && poly_eval(&rest, x, p) == 0 {
            rest = poly_divrem(&rest, &lin, p).0;
            k += 1;
        }
        if k > 0 {
            out.push((x, k));
        }
    }
    out
}

// ---------------------------------------------------------------- corner algebras

struct Ctx {
    p: u64,
    caps: Caps,
}

type HalfMaps = Arc<Vec<(WMat, WMat)>>;

fn half_maps(k: usize, n: usize, ctx: &Ctx) -> Result<HalfMaps> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize, usize), HalfMaps>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (ctx.p, k, n);
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v: Vec<(WMat, WMat)> = cup_diagrams(k, n, &ctx.caps)?
        .iter()
        .map(|d| (eval_diagram(d, k, n, ctx.p), eval_diagram(&flip_pairing(d, k), n, k, ctx.p)))
        .collect();
    let v = Arc::new(v);
    cache.lock().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Basis of `e·TL_n·e`.
fn corner_basis(e: &WMat, ctx: &Ctx) -> Result<Vec<WMat>> {
    let p = ctx.p;
    let n = e.n;
    let mut out = ModSpan::new(p);
    let mut basis = Vec::new();
    let mut k = n % 2;
    while k <= n {
        let maps = half_maps(k, n, ctx)?;
        let xs = independent(maps.iter().map(|(i, _)| e.compose(i, p)).collect(), p);
        let ys = independent(maps.iter().map(|(_, q)| q.compose(e, p)).collect(), p);
        for x in &xs {
            for y in &ys {
                let b = x.compose(y, p);
                if out.insert(b.flatten()).is_none() {
                    basis.push(b);
                }
            }
        }
        k += 2;
    }
    Ok(basis)
}

/// Minimal polynomial of `r` in the algebra with unit `e` (monic, constant first).
fn min_poly(r: &WMat, e: &WMat, p: u64) -> Poly {
    let mut span = ModSpan::new(p);
    let mut pow = e.clone();
    let mut k = 0;
    loop {
        if let Some(c) = span.insert(pow.flatten()) {
            let mut poly: Poly = c.iter().map(|&x| (p - x as u64) % p).collect();
            poly.truncate(k);
            poly.push(1);
            return poly;
        }
        pow = pow.compose(r, p);
        k += 1;
    }
}

fn poly_at(a: &Poly, r: &WMat, e: &WMat, p: u64) -> WMat {
    let mut acc = WMat::zero(e.m, e.n);
    for c in a.iter().rev() {
        acc = acc.compose(r, p);
        acc.axpy(*c, e, p);
    }
    acc
}

/// Projection onto the generalized eigenspace of the first root, when that
/// is a proper nonzero piece.
fn fitting_split(r: &WMat, e: &WMat, p: u64) -> Option<WMat> {
    let mp = min_poly(r, e, p);
    let rs = roots(&mp, p);
    let &(lambda, k) = rs.first()?;
    let mut q: Poly = vec![1];
    for _ in 0..k {
        q = poly_mul(&q, &vec![(p - lambda) % p, 1], p);
    }
    let (s, rem) = poly_divrem(&mp, &q, p);
    debug_assert!(rem.is_empty());
    if s.len() <= 1 {
        return None;
    }
    let (g, _, v) = poly_ext_gcd(&q, &s, p);
    debug_assert_eq!(g.len(), 1);
    let ginv = inv_mod(g[0], p);
    let proj = poly_mul(&poly_mul(&v, &s, p), &vec![ginv], p);
    Some(poly_at(&proj, r, e, p))
}

/// Is `e·TL·e` local? Every basis element must be a scalar plus a nilpotent,
/// and the nilpotent parts must span a nilpotent ideal.
fn locality_certificate(basis: &[WMat], e: &WMat, p: u64) -> bool {
    let mut nil = Vec::new();
    for b in basis {
        let mp = min_poly(b, e, p);
        let rs = roots(&mp, p);
        if rs.len() != 1 || rs[0].1 != mp.len() - 1 {
            return false;
        }
        let mut n = b.clone();
        n.axpy(p - rs[0].0, e, p);
        nil.push(n);
    }
    let nil = independent(nil, p);
    if nil.len() + 1 != basis.len() {
        return false;
    }
    // N ⊋ N² ⊋ … must reach 0
    let mut power = nil.clone();
    for _ in 0..=basis.len() {
        if power.is_empty() {
            return true;
        }
        let mut next = Vec::new();
        for a in &nil {
            for b in &power {
                next.push(a.compose(b, p));
            }
        }
        let next = independent(next.into_iter().filter(|m| !m.is_zero()).collect(), p);
        if next.len() >= power.len() {
            return false;
        }
        power = next;
    }
    false
}

const RANDOM_TRIES: usize = 200;

fn split_primitive(e: WMat, ctx: &Ctx, rng: &mut ChaCha8Rng, out: &mut Vec<WMat>) -> Result<()> {
    let p = ctx.p;
    let basis = corner_basis(&e, ctx)?;
    if basis.len() <= 1 {
        out.push(e);
        return Ok(());
    }
    let mut candidates: Vec<WMat> = basis.clone();
    let mut tried_local = false;
    let mut tries = 0;
    loop {
        let r = match candidates.pop() {
            Some(r) => r,
            None => {
                if !tried_local {
                    tried_local = true;
                    if locality_certificate(&basis, &e, p) {
                        out.push(e);
                        return Ok(());
                    }
                }
                tries += 1;
                if tries > RANDOM_TRIES {
                    return Err(Error::Inconsistent("no splitting element found in a non-local corner".into()));
                }
                let mut r = WMat::zero(e.m, e.n);
                for b in &basis {
                    r.axpy(rng.gen_range(0..p), b, p);
                }
                r
            }
        };
        if let Some(f) = fitting_split(&r, &e, p) {
            if f.is_zero() || f == e || f.compose(&f, p) != f {
                continue;
            }
            let g = e.sub(&f, p);
            split_primitive(f, ctx, rng, out)?;
            split_primitive(g, ctx, rng, out)?;
            return Ok(());
        }
    }
}

/// Character of `e·V^{⊗n}` from the ranks of its weight blocks.
pub fn idempotent_character(e: &WMat, p: u64) -> Character {
    let n = e.n;
    let ranks = e.block_ranks(p);
    Character::from_weights(ranks.iter().enumerate().map(|(j, &r)| (n as i64 - 2 * j as i64, r as i64)))
}

fn summand(e: WMat, p: u64) -> Result<Summand> {
    let character = idempotent_character(&e, p);
    let label = character
        .highest_weight()
        .ok_or_else(|| Error::Inconsistent("zero idempotent in a decomposition".into()))?;
    Ok(Summand { label, character, idempotent: e })
}

fn check_prime(p: u64) -> Result<()> {
    if !crate::scalars::is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::InvalidField(format!("{p} is not a supported prime")));
    }
    Ok(())
}

fn ensure_cap(n: usize, caps: &Caps) -> Result<()> {
    let needed = crate::diagrams::catalan(n);
    if 2 * n > caps.max_points || needed > caps.max_hom_dim as u128 {
        return Err(Error::CapExceeded { what: format!("End(V^⊗{n})"), needed, cap: caps.max_hom_dim as u128 });
    }
    Ok(())
}

/// Full primitive decomposition of `id_{V^{⊗n}}`, with the label multiset
/// cross-checked against greedy character subtraction.
pub fn tilting_decompose(n: usize, p: u64, caps: &Caps) -> Result<Arc<TiltingDecomposition>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u64), Arc<TiltingDecomposition>>>> = OnceLock::new();
    check_prime(p)?;
    ensure_cap(n, caps)?;
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap().get(&(n, p)) {
        return Ok(d.clone());
    }
    let ctx = Ctx { p, caps: caps.clone() };
    let idems: Vec<WMat> = if n == 0 {
        vec![WMat::identity(0)]
    } else {
        let prev = tilting_decompose(n - 1, p, caps)?;
        let mut rng = ChaCha8Rng::seed_from_u64(p * 1000 + n as u64);
        let mut out = Vec::new();
        for s in &prev.summands {
            split_primitive(s.idempotent.tensor_id(p), &ctx, &mut rng, &mut out)?;
        }
        out
    };
    let summands = idems.into_iter().map(|e| summand(e, p)).collect::<Result<Vec<_>>>()?;
    // Σ e = id and idempotency; with ranks adding up this forces orthogonality
    let mut total = WMat::zero(n, n);
    for s in &summands {
        if s.idempotent.compose(&s.idempotent, p) != s.idempotent {
            return Err(Error::Inconsistent("decomposition piece is not idempotent".into()));
        }
        total = total.add(&s.idempotent, p);
    }
    if total != WMat::identity(n) {
        return Err(Error::Inconsistent("idempotents do not sum to the identity".into()));
    }
    let ch = summands.iter().fold(Character::zero(), |acc, s| acc.add(&s.character));
    if ch != tensor_power_character(n) {
        return Err(Error::Inconsistent("summand ranks do not add up".into()));
    }
    let mut multiplicities = BTreeMap::new();
    for s in &summands {
        if s.character != tilting_character(s.label, p) {
            return Err(Error::Inconsistent(format!(
                "summand with highest weight {} does not have the tilting character",
                s.label
            )));
        }
        *multiplicities.entry(s.label).or_insert(0) += 1;
    }
    let character_route = decompose_tilting(&tensor_power_character(n), p)
        .ok_or_else(|| Error::Inconsistent("tensor power character is not a sum of tilting characters".into()))?;
    let d = Arc::new(TiltingDecomposition { n, p, summands, multiplicities, character_route });
    if !d.agrees() {
        return Err(Error::Inconsistent(format!("idempotent and character routes disagree at n = {n}")));
    }
    cache.lock().unwrap().insert((n, p), d.clone());
    Ok(d)
}

/// The summand `T_n ⊂ V^{⊗n}`, found along the chain `T_k ⊗ V ⊃ T_{k+1}`
/// without decomposing the rest.
pub fn top_tilting(n: usize, p: u64, caps: &Caps) -> Result<Arc<Summand>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u64), Arc<Summand>>>> = OnceLock::new();
    check_prime(p)?;
    ensure_cap(n, caps)?;
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&(n, p)) {
        return Ok(s.clone());
    }
    let ctx = Ctx { p, caps: caps.clone() };
    let e = if n == 0 {
        WMat::identity(0)
    } else {
        let prev = top_tilting(n - 1, p, caps)?;
        let mut rng = ChaCha8Rng::seed_from_u64(p * 1000 + n as u64 + 500);
        let mut pieces = Vec::new();
        split_primitive(prev.idempotent.tensor_id(p), &ctx, &mut rng, &mut pieces)?;
        pieces
            .into_iter()
            .find(|f| idempotent_character(f, p).highest_weight() == Some(n))
            .ok_or_else(|| Error::Inconsistent(format!("no summand of highest weight {n}")))?
    };
    let s = summand(e, p)?;
    if s.label != n || s.character != tilting_character(n, p) {
        return Err(Error::Inconsistent(format!("T_{n} realization has the wrong character")));
    }
    let s = Arc::new(s);
    cache.lock().unwrap().insert((n, p), s.clone());
    Ok(s)
}
