//! Dense exact linear algebra over a [`Field`]. Pivoting always takes the
//! first nonzero entry, so results are deterministic.

use crate::scalars::Field;

/// Reduced row echelon form. Returns the nonzero rows (pivot entries
/// normalized to one) and the pivot columns.
pub fn rref<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for i in 0..m.len() {
            if i == r || f.is_zero(&m[i][c]) {
                continue;
            }
            let factor = m[i][c].clone();
            axpy(f, &mut m[i], &factor, &pivot_row, c);
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// `row -= factor * other`, touching columns from `start` on.
fn axpy<F: Field>(f: &F, row: &mut [F::Elem], factor: &F::Elem, other: &[F::Elem], start: usize) {
    for (x, y) in row[start..].iter_mut().zip(&other[start..]) {
        if !f.is_zero(y) {
            *x = f.sub(x, &f.mul(factor, y));
        }
    }
}

pub fn rank<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> usize {
    let mut span = Span::new(f.clone(), ncols, false);
    for r in rows {
        span.insert(r);
    }
    span.dim()
}

/// Basis of {x : A x = 0} where A has the given rows.
pub fn kernel<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let (red, pivots) = rref(f, rows, ncols);
    let mut is_pivot = vec![None; ncols];
    for (i, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    let mut out = Vec::new();
    for free in 0..ncols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = f.neg(&red[i][free]);
        }
        out.push(v);
    }
    out
}

/// Some x with A x = b, or `None` if the system is inconsistent.
pub fn solve<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize, rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(rows.len(), rhs.len());
    let aug: Vec<Vec<F::Elem>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let (red, pivots) = rref(f, &aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![f.zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = red[i][ncols].clone();
    }
    Some(x)
}

pub fn mat_vec<F: Field>(f: &F, rows: &[Vec<F::Elem>], x: &[F::Elem]) -> Vec<F::Elem> {
    rows.iter().map(|r| dot(f, r, x)).collect()
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_zero(x) && !f.is_zero(y) {
            acc = f.add(&acc, &f.mul(x, y));
        }
    }
    acc
}

pub fn mat_mul<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>], bcols: usize) -> Vec<Vec<F::Elem>> {
    a.iter()
        .map(|row| {
            let mut out = vec![f.zero(); bcols];
            for (k, x) in row.iter().enumerate() {
                if f.is_zero(x) {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !f.is_zero(y) {
                        *o = f.add(o, &f.mul(x, y));
                    }
                }
            }
            out
        })
        .collect()
}

/// Incrementally built subspace of F^n. With tracking enabled, every
/// accepted vector is remembered and [`Span::coordinates`] expresses members
/// in terms of the accepted vectors.
#[derive(Clone, Debug)]
pub struct Span<F: Field> {
    field: F,
    ambient: usize,
    tracked: bool,
    // echelon rows: (pivot column, row with 1 at pivot, combination of accepted vectors)
    rows: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)>,
}

impl<F: Field> Span<F> {
    pub fn new(field: F, ambient: usize, tracked: bool) -> Self {
        Span { field, ambient, tracked, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduce `v`; returns the residue and (if tracked) the combination of
    /// accepted vectors that was subtracted.
    fn reduce(&self, v: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let mut v = v.to_vec();
        let mut combo = if self.tracked { vec![f.zero(); self.rows.len()] } else { Vec::new() };
        for (p, row, c) in &self.rows {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let factor = v[*p].clone();
            axpy(f, &mut v, &factor, row, 0);
            if self.tracked {
                for (x, y) in combo.iter_mut().zip(c) {
                    if !f.is_zero(y) {
                        *x = f.add(x, &f.mul(&factor, y));
                    }
                }
            }
        }
        (v, combo)
    }

    /// Insert `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.field.clone();
        let (res, combo) = self.reduce(v);
        let Some(p) = res.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&res[p]).unwrap();
        let row: Vec<F::Elem> = res.iter().map(|x| f.mul(x, &inv)).collect();
        let comb = if self.tracked {
            // res = v - Σ combo_i u_i, so row = inv·(new - Σ combo_i u_i)
            let n = self.rows.len();
            for (_, _, c) in self.rows.iter_mut() {
                c.push(f.zero());
            }
            let mut comb: Vec<F::Elem> = combo.iter().map(|x| f.neg(&f.mul(x, &inv))).collect();
            comb.resize(n, f.zero());
            comb.push(inv);
            comb
        } else {
            Vec::new()
        };
        self.rows.push((p, row, comb));
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let (res, _) = self.reduce(v);
        res.iter().all(|x| self.field.is_zero(x))
    }

    /// Coefficients expressing `v` in the accepted vectors, in insertion
    /// order; `None` if `v` is outside the span. Requires tracking.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert!(self.tracked, "coordinates need a tracked span");
        let (res, combo) = self.reduce(v);
        if res.iter().all(|x| self.field.is_zero(x)) {
            Some(combo)
        } else {
            None
        }
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _, _)| *p).collect()
    }

    /// Residue of `v` modulo the span (zero exactly when `v` is a member).
    pub fn residue(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.reduce(v).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::PrimeField;

    #[test]
    fn rank_and_kernel() {
        let f = PrimeField::new(5).unwrap();
        let a = vec![vec![1, 2, 3], vec![0, 1, 1], vec![1, 3, 4]];
        // row3 = row1 + row2 mod 5
        assert_eq!(rank(&f, &a, 3), 2);
        let k = kernel(&f, &a, 3);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&f, &a, &k[0]).iter().all(|x| *x == 0));
    }

    #[test]
    fn solve_inconsistent() {
        let f = PrimeField::new(7).unwrap();
        let a = vec![vec![1, 1], vec![2, 2]];
        assert!(solve(&f, &a, 2, &[1, 3]).is_none());
        let x = solve(&f, &a, 2, &[1, 2]).unwrap();
        assert_eq!(mat_vec(&f, &a, &x), vec![1, 2]);
    }

    #[test]
    fn tracked_coordinates() {
        let f = PrimeField::new(11).unwrap();
        let mut s = Span::new(f.clone(), 3, true);
        assert!(s.insert(&[1, 2, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[2, 5, 1]));
        let c = s.coordinates(&[3, 7, 1]).unwrap();
        assert_eq!(c, vec![3, 1]);
        assert!(s.coordinates(&[0, 0, 1]).is_none());
    }
}
