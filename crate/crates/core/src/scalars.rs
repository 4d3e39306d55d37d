//! Exact coefficient fields: ℚ, 𝔽_p, and simple extensions ℚ(α) given by a
//! monic irreducible integer polynomial.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A runtime field context. Elements are plain values; all arithmetic goes
/// through the context so that 𝔽_p and ℚ(α) can carry their modulus.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    fn characteristic(&self) -> u64;
    fn render(&self, a: &Self::Elem) -> String;
    fn spec(&self) -> FieldSpec;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Canonical representative. Elements produced by the field are already
    /// canonical, so this is the identity unless overridden.
    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        a.clone()
    }

    /// [K:k] for an extension pair, 1 otherwise.
    fn ext_degree(&self) -> usize {
        1
    }

    /// Coordinates of `a` over the base field in the power basis, each
    /// returned as an element of `self` lying in the base field.
    fn subfield_coordinates(&self, _a: &Self::Elem) -> Result<Vec<Self::Elem>> {
        Err(Error::NotExtension)
    }

    /// α^j in the power basis.
    fn power_basis(&self, j: usize) -> Self::Elem {
        assert_eq!(j, 0, "power basis of a prime field has a single element");
        self.one()
    }
}

/// Parse `"a"` or `"a/b"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn render_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

// ---------------------------------------------------------------- ℚ

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &BigRational) -> String {
        render_rational(a)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::rationals()
    }
    fn normalize(&self, a: &BigRational) -> BigRational {
        BigRational::new(a.numer().clone(), a.denom().clone())
    }
}

// ---------------------------------------------------------------- 𝔽_p

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("prime {p} too large")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let m = n.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("residue fits")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let d = self.reduce_big(q.denom());
        let inv = self.inv(&d).ok_or_else(|| {
            Error::Invalid(format!(
                "denominator of {} vanishes mod {}",
                render_rational(q),
                self.p
            ))
        })?;
        Ok(self.mul(&self.reduce_big(q.numer()), &inv))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::prime(self.p)
    }
    fn normalize(&self, a: &u64) -> u64 {
        a % self.p
    }
}

// ---------------------------------------------------------------- ℚ(α)

/// ℚ[x]/(m) for a monic irreducible integer polynomial m, coefficients
/// listed constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionField {
    minpoly: Vec<BigInt>,
}

fn poly_eval(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    let mut res = Vec::with_capacity(out.len() * 2);
    for d in out {
        res.push(BigInt::from(d));
        res.push(-BigInt::from(d));
    }
    Some(res)
}

/// Exact division of integer polynomials (both constant-first); `None` if
/// the remainder is nonzero or the quotient is not integral.
fn poly_divides(num: &[BigInt], den: &[BigInt]) -> bool {
    let mut r: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    while r.len() > dd {
        let top = r.last().unwrap().clone();
        if top.is_zero() {
            r.pop();
            continue;
        }
        if !(&top % lead).is_zero() {
            return false;
        }
        let q = &top / lead;
        let shift = r.len() - 1 - dd;
        for (i, c) in den.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r.pop();
    }
    r.iter().all(|c| c.is_zero())
}

/// Kronecker's method restricted to monic factors (Gauss's lemma makes this
/// complete for monic input).
fn is_irreducible_monic(m: &[BigInt]) -> Result<bool> {
    let deg = m.len() - 1;
    if deg == 1 {
        return Ok(true);
    }
    // evaluation points 0, 1, -1, 2, -2, ...
    let points: Vec<BigInt> = (0..=deg as i64)
        .map(|i| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) })
        .map(BigInt::from)
        .collect();
    let values: Vec<BigInt> = points.iter().map(|x| poly_eval(m, x)).collect();
    if values.iter().any(|v| v.is_zero()) {
        return Ok(false);
    }
    for k in 1..=deg / 2 {
        let pts = &points[..k];
        let mut divs = Vec::with_capacity(k);
        let mut combos: u128 = 1;
        for v in &values[..k] {
            let d = divisors(v).ok_or_else(|| {
                Error::InvalidField("minimal polynomial values too large to certify".into())
            })?;
            combos = combos.saturating_mul(d.len() as u128);
            divs.push(d);
        }
        if combos > 2_000_000 {
            return Err(Error::InvalidField(
                "irreducibility certification exceeds search budget".into(),
            ));
        }
        let mut idx = vec![0usize; k];
        loop {
            // monic g of degree k with g(x_i) = d_i: interpolate h = g - x^k
            let target: Vec<BigRational> = (0..k)
                .map(|i| {
                    let xk = num_traits::pow(pts[i].clone(), k);
                    BigRational::from_integer(&divs[i][idx[i]] - xk)
                })
                .collect();
            let h = lagrange(pts, &target);
            if h.iter().all(|c| c.is_integer()) {
                let mut g: Vec<BigInt> = h.iter().map(|c| c.to_integer()).collect();
                g.resize(k, BigInt::zero());
                g.push(BigInt::one());
                if poly_divides(m, &g) {
                    return Ok(false);
                }
            }
            let mut pos = 0;
            loop {
                if pos == k {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < divs[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    Ok(true)
}

/// Coefficients (constant first) of the unique polynomial of degree < n
/// through the n given points.
fn lagrange(xs: &[BigInt], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut out = vec![BigRational::zero(); n];
    for i in 0..n {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let xj = BigRational::from_integer(xs[j].clone());
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (t, c) in basis.iter().enumerate() {
                next[t + 1] += c;
                next[t] -= c * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer(&xs[i] - &xs[j]);
        }
        let scale = &ys[i] / denom;
        for (t, c) in basis.iter().enumerate() {
            out[t] += c * &scale;
        }
    }
    out
}

impl ExtensionField {
    pub fn new(minpoly: &[i64]) -> Result<Self> {
        let m: Vec<BigInt> = minpoly.iter().map(|&c| BigInt::from(c)).collect();
        if m.len() < 2 {
            return Err(Error::InvalidField("minimal polynomial must have degree ≥ 1".into()));
        }
        if !m.last().unwrap().is_one() {
            return Err(Error::InvalidField(
                "minimal polynomial must be monic (coefficients are constant term first)".into(),
            ));
        }
        if !is_irreducible_monic(&m)? {
            return Err(Error::InvalidField(format!(
                "polynomial {minpoly:?} is reducible over Q"
            )));
        }
        Ok(ExtensionField { minpoly: m })
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> Vec<i64> {
        self.minpoly.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    pub fn from_coords(&self, c: &[BigRational]) -> Vec<BigRational> {
        let mut v = c.to_vec();
        v.resize(self.degree(), BigRational::zero());
        v
    }

    fn embed(&self, q: BigRational) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.degree()];
        v[0] = q;
        v
    }
}

impl Field for ExtensionField {
    type Elem = Vec<BigRational>;

    fn zero(&self) -> Self::Elem {
        vec![BigRational::zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.embed(BigRational::one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| -x).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let d = self.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        // x^d = -Σ m_i x^i
        for top in (d..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[top], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                prod[top - d + i] -= &c * BigRational::from_integer(self.minpoly[i].clone());
            }
        }
        prod.truncate(d);
        prod
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.iter().all(|c| c.is_zero()) {
            return None;
        }
        // columns: a·α^j; solve M c = e_0
        let d = self.degree();
        let q = Rationals;
        let mut cols = Vec::with_capacity(d);
        let mut cur = a.clone();
        for _ in 0..d {
            cols.push(cur.clone());
            cur = self.mul(&cur, &self.power_basis(1));
        }
        let rows: Vec<Vec<BigRational>> =
            (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
        let mut rhs = vec![BigRational::zero(); d];
        rhs[0] = BigRational::one();
        crate::linalg::solve(&q, &rows, d, &rhs)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.embed(BigRational::from_integer(n.into()))
    }
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem> {
        Ok(self.embed(q.clone()))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &Self::Elem) -> String {
        let parts: Vec<String> = a.iter().map(render_rational).collect();
        format!("[{}]", parts.join(", "))
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::extension(&self.minpoly())
    }
    fn ext_degree(&self) -> usize {
        self.degree()
    }
    fn subfield_coordinates(&self, a: &Self::Elem) -> Result<Vec<Self::Elem>> {
        Ok(a.iter().map(|c| self.embed(c.clone())).collect())
    }
    fn power_basis(&self, j: usize) -> Self::Elem {
        let d = self.degree();
        if d == 1 {
            // α is the rational root of x + m_0
            let root = BigRational::from_integer(-self.minpoly[0].clone());
            return self.embed(num_traits::pow(root, j));
        }
        if j < d {
            let mut v = self.zero();
            v[j] = BigRational::one();
            v
        } else {
            self.pow(&self.power_basis(1), j as u64)
        }
    }
}

// ---------------------------------------------------------------- dynamic

/// Element of a field chosen at runtime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(u64),
    Ext(Vec<BigRational>),
}

/// Field chosen at runtime from a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DynField {
    Q(Rationals),
    Fp(PrimeField),
    Ext(ExtensionField),
}

macro_rules! dispatch_bin {
    ($self:ident, $a:ident, $b:ident, $op:ident) => {
        match ($self, $a, $b) {
            (DynField::Q(f), Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(f.$op(x, y)),
            (DynField::Fp(f), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(f.$op(x, y)),
            (DynField::Ext(f), Scalar::Ext(x), Scalar::Ext(y)) => Scalar::Ext(f.$op(x, y)),
            _ => panic!("scalar from a different field"),
        }
    };
}

impl Field for DynField {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        match self {
            DynField::Q(f) => Scalar::Q(f.zero()),
            DynField::Fp(f) => Scalar::Fp(f.zero()),
            DynField::Ext(f) => Scalar::Ext(f.zero()),
        }
    }
    fn one(&self) -> Scalar {
        match self {
            DynField::Q(f) => Scalar::Q(f.one()),
            DynField::Fp(f) => Scalar::Fp(f.one()),
            DynField::Ext(f) => Scalar::Ext(f.one()),
        }
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        dispatch_bin!(self, a, b, add)
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        dispatch_bin!(self, a, b, sub)
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        dispatch_bin!(self, a, b, mul)
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (DynField::Q(f), Scalar::Q(x)) => Scalar::Q(f.neg(x)),
            (DynField::Fp(f), Scalar::Fp(x)) => Scalar::Fp(f.neg(x)),
            (DynField::Ext(f), Scalar::Ext(x)) => Scalar::Ext(f.neg(x)),
            _ => panic!("scalar from a different field"),
        }
    }
    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (DynField::Q(f), Scalar::Q(x)) => f.inv(x).map(Scalar::Q),
            (DynField::Fp(f), Scalar::Fp(x)) => f.inv(x).map(Scalar::Fp),
            (DynField::Ext(f), Scalar::Ext(x)) => f.inv(x).map(Scalar::Ext),
            _ => panic!("scalar from a different field"),
        }
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(x) => x.is_zero(),
            Scalar::Fp(x) => *x == 0,
            Scalar::Ext(x) => x.iter().all(|c| c.is_zero()),
        }
    }
    fn from_int(&self, n: i64) -> Scalar {
        match self {
            DynField::Q(f) => Scalar::Q(f.from_int(n)),
            DynField::Fp(f) => Scalar::Fp(f.from_int(n)),
            DynField::Ext(f) => Scalar::Ext(f.from_int(n)),
        }
    }
    fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        Ok(match self {
            DynField::Q(f) => Scalar::Q(f.from_rational(q)?),
            DynField::Fp(f) => Scalar::Fp(f.from_rational(q)?),
            DynField::Ext(f) => Scalar::Ext(f.from_rational(q)?),
        })
    }
    fn characteristic(&self) -> u64 {
        match self {
            DynField::Fp(f) => f.p(),
            _ => 0,
        }
    }
    fn render(&self, a: &Scalar) -> String {
        match (self, a) {
            (DynField::Q(f), Scalar::Q(x)) => f.render(x),
            (DynField::Fp(f), Scalar::Fp(x)) => f.render(x),
            (DynField::Ext(f), Scalar::Ext(x)) => f.render(x),
            _ => panic!("scalar from a different field"),
        }
    }
    fn spec(&self) -> FieldSpec {
        match self {
            DynField::Q(f) => f.spec(),
            DynField::Fp(f) => f.spec(),
            DynField::Ext(f) => f.spec(),
        }
    }
    fn normalize(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (DynField::Q(f), Scalar::Q(x)) => Scalar::Q(f.normalize(x)),
            (DynField::Fp(f), Scalar::Fp(x)) => Scalar::Fp(f.normalize(x)),
            (DynField::Ext(_), Scalar::Ext(x)) => Scalar::Ext(x.clone()),
            _ => panic!("scalar from a different field"),
        }
    }
    fn ext_degree(&self) -> usize {
        match self {
            DynField::Ext(f) => f.degree(),
            _ => 1,
        }
    }
    fn subfield_coordinates(&self, a: &Scalar) -> Result<Vec<Scalar>> {
        match (self, a) {
            (DynField::Ext(f), Scalar::Ext(x)) => {
                Ok(f.subfield_coordinates(x)?.into_iter().map(Scalar::Ext).collect())
            }
            _ => Err(Error::NotExtension),
        }
    }
    fn power_basis(&self, j: usize) -> Scalar {
        match self {
            DynField::Ext(f) => Scalar::Ext(f.power_basis(j)),
            _ => {
                assert_eq!(j, 0);
                self.one()
            }
        }
    }
}

// ---------------------------------------------------------------- specs

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldKind {
    Q,
    Fp,
    #[serde(rename = "ext")]
    Ext,
}

/// Serialized field description, e.g. `{"kind":"Fp","p":3}` or
/// `{"kind":"ext","minpoly":[-2,0,1],"t":"0"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: FieldKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { kind: FieldKind::Q, p: None, minpoly: None, t: None }
    }
    pub fn prime(p: u64) -> Self {
        FieldSpec { kind: FieldKind::Fp, p: Some(p), minpoly: None, t: None }
    }
    pub fn extension(minpoly: &[i64]) -> Self {
        FieldSpec { kind: FieldKind::Ext, p: None, minpoly: Some(minpoly.to_vec()), t: None }
    }
    pub fn with_t(mut self, t: &str) -> Self {
        self.t = Some(t.to_string());
        self
    }

    /// The evaluation point for t, if any.
    pub fn t_value(&self) -> Result<Option<BigRational>> {
        self.t.as_deref().map(parse_rational).transpose()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Q => write!(f, "Q")?,
            FieldKind::Fp => write!(f, "F_{}", self.p.unwrap_or(0))?,
            FieldKind::Ext => write!(f, "Q[x]/({:?})", self.minpoly.clone().unwrap_or_default())?,
        }
        if let Some(t) = &self.t {
            write!(f, " at t = {t}")?;
        }
        Ok(())
    }
}

pub fn field_make(spec: &FieldSpec) -> Result<DynField> {
    spec.t_value()?;
    match spec.kind {
        FieldKind::Q => Ok(DynField::Q(Rationals)),
        FieldKind::Fp => {
            let p = spec
                .p
                .ok_or_else(|| Error::InvalidField("prime field needs \"p\"".into()))?;
            Ok(DynField::Fp(PrimeField::new(p)?))
        }
        FieldKind::Ext => {
            let m = spec
                .minpoly
                .as_ref()
                .ok_or_else(|| Error::InvalidField("extension needs \"minpoly\"".into()))?;
            Ok(DynField::Ext(ExtensionField::new(m)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_sum() {
        let f = Rationals;
        assert_eq!(f.add(&q(1, 2), &q(1, 3)), q(5, 6));
    }

    #[test]
    fn mod_three() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(f.add(&2, &2), 1);
        assert_eq!(f.inv(&2), Some(2));
        assert_eq!(f.from_rational(&q(1, 2)).unwrap(), 2);
        assert!(f.from_rational(&q(1, 3)).is_err());
    }

    #[test]
    fn rejects_composite() {
        assert!(PrimeField::new(9).is_err());
        assert!(field_make(&FieldSpec::prime(1)).is_err());
    }

    #[test]
    fn sqrt_two() {
        let f = ExtensionField::new(&[-2, 0, 1]).unwrap();
        let a = f.add(&f.one(), &f.power_basis(1));
        let b = f.sub(&f.one(), &f.power_basis(1));
        assert_eq!(f.mul(&a, &b), f.from_int(-1));
        assert_eq!(f.subfield_coordinates(&a).unwrap(), vec![f.one(), f.one()]);
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), f.one());
        assert_eq!(
            f.subfield_coordinates(&f.from_int(3)).unwrap(),
            vec![f.from_int(3), f.zero()]
        );
    }

    #[test]
    fn reducible_rejected() {
        assert!(ExtensionField::new(&[-1, 0, 1]).is_err()); // (x-1)(x+1)
        assert!(ExtensionField::new(&[4, 0, 0, 0, 1]).is_err()); // (x²+2x+2)(x²-2x+2)
        assert!(ExtensionField::new(&[1, 0, 1, 0, 1]).is_err()); // (x²+x+1)(x²-x+1)
        assert!(ExtensionField::new(&[-2, 0, 1, 0]).is_err()); // not monic
        assert!(ExtensionField::new(&[1, 1, 1]).is_ok());
        assert!(ExtensionField::new(&[-2, 0, 0, 1]).is_ok());
        assert!(ExtensionField::new(&[1, 0, 0, 0, 1]).is_ok());
    }

    #[test]
    fn spec_roundtrip() {
        let s: FieldSpec =
            serde_json::from_str(r#"{"kind":"ext","minpoly":[-2,0,1],"t":"0"}"#).unwrap();
        assert_eq!(s.kind, FieldKind::Ext);
        assert_eq!(s.t_value().unwrap(), Some(q(0, 1)));
        let f = field_make(&s).unwrap();
        assert_eq!(f.ext_degree(), 2);
        let s2: FieldSpec = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(s, s2);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"kind":"R"}"#).is_err());
        assert!(field_make(&FieldSpec::rationals().with_t("1/0")).is_err());
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("x").is_err());
    }
}
