//! SL₂ characters, stored by their dominant weight multiplicities.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

/// A (possibly virtual) W-invariant character; `mult[i]` is the
/// multiplicity of the weight `iω`, and the weight `−iω` has the same.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    mult: Vec<i64>,
}

impl Character {
    pub fn zero() -> Self {
        Character::default()
    }

    /// From dominant multiplicities (index = weight).
    pub fn from_dominant(mult: Vec<i64>) -> Self {
        let mut c = Character { mult };
        c.trim();
        c
    }

    /// From a list of all weights (not only dominant) with multiplicity.
    pub fn from_weights(weights: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut m: BTreeMap<i64, i64> = BTreeMap::new();
        for (w, c) in weights {
            *m.entry(w).or_insert(0) += c;
        }
        let top = m.keys().map(|w| w.unsigned_abs() as usize).max().unwrap_or(0);
        let mut mult = vec![0; top + 1];
        for (w, c) in m {
            if w >= 0 {
                mult[w as usize] += c;
            }
        }
        Character::from_dominant(mult)
    }

    /// From coefficients in the Weyl basis `χ(0), χ(1), …`.
    pub fn from_weyl(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut mult = vec![0; n];
        for i in (0..n).rev() {
            mult[i] = coeffs[i] + if i + 2 < n { mult[i + 2] } else { 0 };
        }
        Character::from_dominant(mult)
    }

    fn trim(&mut self) {
        while self.mult.last() == Some(&0) {
            self.mult.pop();
        }
    }

    pub fn dominant(&self) -> &[i64] {
        &self.mult
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.mult.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn highest_weight(&self) -> Option<usize> {
        self.mult.iter().rposition(|&m| m != 0)
    }

    pub fn dim(&self) -> i64 {
        self.mult.iter().enumerate().map(|(i, m)| if i == 0 { *m } else { 2 * m }).sum()
    }

    /// All weights with multiplicity, negative ones included.
    pub fn weights(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for (i, &m) in self.mult.iter().enumerate() {
            if m != 0 {
                out.push((i as i64, m));
                if i > 0 {
                    out.push((-(i as i64), m));
                }
            }
        }
        out
    }

    /// Coefficients in the Weyl basis.
    pub fn weyl_coefficients(&self) -> Vec<i64> {
        (0..self.mult.len()).map(|i| self.weight(i) - self.weight(i + 2)).collect()
    }

    pub fn add(&self, other: &Character) -> Character {
        let n = self.mult.len().max(other.mult.len());
        Character::from_dominant((0..n).map(|i| self.weight(i) + other.weight(i)).collect())
    }

    pub fn sub(&self, other: &Character) -> Character {
        let n = self.mult.len().max(other.mult.len());
        Character::from_dominant((0..n).map(|i| self.weight(i) - other.weight(i)).collect())
    }

    pub fn scale(&self, c: i64) -> Character {
        Character::from_dominant(self.mult.iter().map(|m| m * c).collect())
    }

    pub fn product(&self, other: &Character) -> Character {
        let a = self.weights();
        let b = other.weights();
        Character::from_weights(a.iter().flat_map(|&(w, m)| b.iter().map(move |&(v, k)| (w + v, m * k))))
    }

    /// Frobenius-type twist: every weight multiplied by `q`.
    pub fn twist(&self, q: u64) -> Character {
        Character::from_weights(self.weights().into_iter().map(|(w, m)| (w * q as i64, m)))
    }

    pub fn is_effective(&self) -> bool {
        self.mult.iter().all(|&m| m >= 0)
    }
}

/// `χ(n)`: weights `n, n−2, …, −n`, each once.
pub fn weyl_character(n: usize) -> Character {
    let mut mult = vec![0; n + 1];
    let mut i = n as i64;
    while i >= 0 {
        mult[i as usize] = 1;
        i -= 2;
    }
    Character::from_dominant(mult)
}

fn digits(mut n: usize, p: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % p as usize);
        n /= p as usize;
    }
    out
}

/// `ch L_n = ∏_a (ch L_{n_a})^{[a]}` over the base-p digits of n, with
/// `L_b = Δ_b` for `b < p`.
pub fn simple_character(n: usize, p: u64) -> Character {
    let mut ch = weyl_character(0);
    let mut q = 1u64;
    for d in digits(n, p) {
        ch = ch.product(&weyl_character(d).twist(q));
        q *= p;
    }
    ch
}

/// Tilting characters by the tensor product formula
/// `T(p−1+a+pm) = T(p−1+a) ⊗ T(m)^{[1]}` for `0 ≤ a ≤ p−1`, with
/// `T(p−1+a) = χ(p−1+a) + χ(p−1−a)` for `a ≥ 1` and `T(n) = χ(n)` for `n ≤ p−1`.
pub fn tilting_character(n: usize, p: u64) -> Character {
    let p = p as usize;
    if n < p {
        return weyl_character(n);
    }
    let rest = n - (p - 1);
    let (m, a) = (rest / p, rest % p);
    let base = if a == 0 {
        weyl_character(p - 1)
    } else {
        weyl_character(p - 1 + a).add(&weyl_character(p - 1 - a))
    };
    if m == 0 {
        base
    } else {
        base.product(&tilting_character(m, p as u64).twist(p as u64))
    }
}

/// `ch V^{⊗n}`.
pub fn tensor_power_character(n: usize) -> Character {
    (0..n).fold(weyl_character(0), |acc, _| acc.product(&weyl_character(1)))
}

/// Greedy decomposition into tilting characters from the top weight down;
/// `None` when some step would need a negative coefficient.
pub fn decompose_tilting(ch: &Character, p: u64) -> Option<BTreeMap<usize, u64>> {
    let mut rest = ch.clone();
    let mut out = BTreeMap::new();
    while let Some(top) = rest.highest_weight() {
        let m = rest.weight(top);
        if m < 0 {
            return None;
        }
        rest = rest.sub(&tilting_character(top, p).scale(m));
        out.insert(top, m as u64);
    }
    Some(out)
}

/// `dim Hom(T, T') = Σ_k (T : Δ_k)(T' : ∇_k)` for modules with good and
/// Weyl filtrations, read off the Weyl-basis coefficients.
pub fn hom_pairing(a: &Character, b: &Character) -> i64 {
    a.weyl_coefficients().iter().zip(b.weyl_coefficients()).map(|(x, y)| x * y).sum()
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Block of `a` in Rep SL₂ intersected with `[0, bound]`, generated by the
/// ρ-shifted reflections `μ+1 ↦ 2m·p^{v+1} − (μ+1)`, `v = v_p(μ+1)`.
pub fn linkage_orbit(a: u64, p: u64, bound: u64) -> BTreeSet<u64> {
    let mut seen = BTreeSet::new();
    if a > bound {
        return seen;
    }
    let mut stack = vec![a];
    seen.insert(a);
    while let Some(y) = stack.pop() {
        let x = y + 1;
        let level = p.pow(valuation(x, p) + 1);
        let mut m = 1u64;
        loop {
            let r = 2 * m * level;
            if r <= x {
                m += 1;
                continue;
            }
            let z = r - x;
            if z > bound + 1 {
                break;
            }
            if seen.insert(z - 1) {
                stack.push(z - 1);
            }
            m += 1;
        }
    }
    seen
}
