//! Exact smallest-eigenvalue certification.
//!
//! The special matrix of a Hoffman graph is indexed by slim vertices, with
//! `−|N^f(x)|` on the diagonal and `A(x, y) − |N^f(x) ∩ N^f(y)|` off it. Its
//! characteristic polynomial is computed exactly (Berkowitz), and roots are
//! located with Sturm sequences over the rationals. Comparison with
//! `θ = −1 − √2` evaluates the Sturm sequence in `Q(√2)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::count;
use crate::graph::HoffmanGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("graph has no slim vertices")]
    EmptyGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialMatrix {
    pub n: usize,
    /// Row-major entries.
    pub entries: Vec<i64>,
}

impl SpecialMatrix {
    pub fn of(g: &HoffmanGraph) -> Self {
        let n = g.slim_count();
        let mut entries = vec![0i64; n * n];
        for x in 0..n {
            for y in 0..n {
                let shared = count(g.fat_neighbours(x) & g.fat_neighbours(y)) as i64;
                entries[x * n + y] = if x == y { -shared } else { g.adjacent(x, y) as i64 - shared };
            }
        }
        SpecialMatrix { n, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Largest absolute row sum; every eigenvalue lies within it.
    pub fn gershgorin_radius(&self) -> i64 {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).abs()).sum()).max().unwrap_or(0)
    }
}

/// Integer polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPoly(#[serde(with = "decimal_vec")] pub Vec<BigInt>);

impl IntPoly {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    fn to_rational(&self) -> Poly {
        Poly::new(self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn coefficients_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let coef = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            let var = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            if first {
                write!(f, "{sign}{coef}{var}")?;
            } else {
                write!(f, " {sign} {coef}{var}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `det(xI − M)` by Berkowitz's division-free algorithm.
pub fn char_poly(m: &SpecialMatrix) -> IntPoly {
    let n = m.n;
    let a = |i: usize, j: usize| BigInt::from(m.get(i, j));
    // coefficients highest degree first
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        // t = [1, −a_rr, −R·C, −R·A·C, …] for the leading (r+1)×(r+1) block
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-a(r, r));
        let mut v: Vec<BigInt> = (0..r).map(|i| a(i, r)).collect();
        for _ in 0..r {
            let rc: BigInt = (0..r).map(|j| a(r, j) * &v[j]).sum();
            t.push(-rc);
            v = (0..r).map(|i| (0..r).map(|j| a(i, j) * &v[j]).sum()).collect();
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, ni) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    *ni += &t[i - j] * pj;
                }
            }
        }
        p = next;
    }
    p.reverse();
    IntPoly(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    fn derivative(&self) -> Poly {
        Poly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect())
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let mut r = self.0.clone();
        if self.0.len() < d.0.len() {
            return (Poly(Vec::new()), self.clone());
        }
        let mut q = vec![BigRational::zero(); self.0.len() - d.0.len() + 1];
        let dl = d.lead().clone();
        for k in (0..q.len()).rev() {
            let c = &r[k + d.degree()] / &dl;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(d.degree());
        (Poly::new(q), Poly::new(r))
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        let l = a.lead().clone();
        Poly::new(a.0.into_iter().map(|c| c / &l).collect())
    }

    fn square_free(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }
}

/// Sturm chain of a square-free polynomial.
struct Sturm(Vec<Poly>);

impl Sturm {
    fn new(p: &Poly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        while !chain.last().unwrap().is_zero() {
            let k = chain.len();
            let r = chain[k - 2].div_rem(&chain[k - 1]).1;
            chain.push(Poly::new(r.0.into_iter().map(|c| -c).collect()));
        }
        chain.pop();
        Sturm(chain)
    }

    fn changes<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut n = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
        n
    }

    fn at(&self, x: &BigRational) -> usize {
        Self::changes(self.0.iter().map(|p| sign_of(&p.eval(x))))
    }

    fn at_neg_infinity(&self) -> usize {
        Self::changes(self.0.iter().map(|p| {
            let s = sign_of(p.lead());
            if p.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    fn at_threshold(&self) -> usize {
        Self::changes(self.0.iter().map(|p| QSqrt2::eval_threshold(p).sign()))
    }

    /// Distinct roots in `(−∞, x]`.
    fn roots_up_to(&self, x: &BigRational) -> usize {
        self.at_neg_infinity() - self.at(x)
    }
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// `a + b√2` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct QSqrt2 {
    a: BigRational,
    b: BigRational,
}

impl QSqrt2 {
    /// The threshold `−1 − √2`.
    fn threshold() -> Self {
        QSqrt2 { a: -BigRational::one(), b: -BigRational::one() }
    }

    fn mul(&self, o: &QSqrt2) -> QSqrt2 {
        let two = BigRational::from_integer(2.into());
        QSqrt2 { a: &self.a * &o.a + two * &self.b * &o.b, b: &self.a * &o.b + &self.b * &o.a }
    }

    fn eval_threshold(p: &Poly) -> QSqrt2 {
        let t = Self::threshold();
        p.0.iter().rev().fold(QSqrt2 { a: BigRational::zero(), b: BigRational::zero() }, |acc, c| {
            let m = acc.mul(&t);
            QSqrt2 { a: m.a + c, b: m.b }
        })
    }

    fn sign(&self) -> i8 {
        let (sa, sb) = (sign_of(&self.a), sign_of(&self.b));
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        let two = BigRational::from_integer(2.into());
        match (&self.a * &self.a).cmp(&(two * &self.b * &self.b)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("√2 is irrational"),
        }
    }
}

/// Rational bracket of the smallest eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenInterval {
    #[serde(with = "ratio_string")]
    pub lower: BigRational,
    #[serde(with = "ratio_string")]
    pub upper: BigRational,
    /// The smallest eigenvalue is the integer `lower == upper`.
    pub exact: bool,
    pub char_poly: IntPoly,
}

impl EigenInterval {
    pub fn lower_f64(&self) -> f64 {
        self.lower.to_f64().unwrap_or(f64::NAN)
    }

    pub fn upper_f64(&self) -> f64 {
        self.upper.to_f64().unwrap_or(f64::NAN)
    }

    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: f64, slack: f64) -> bool {
        self.lower_f64() - slack <= x && x <= self.upper_f64() + slack
    }
}

/// Position of the smallest eigenvalue relative to `−1 − √2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Threshold {
    Below,
    AtOrAbove { equal: bool },
}

impl Threshold {
    pub fn label(self) -> &'static str {
        match self {
            Threshold::Below => "below",
            Threshold::AtOrAbove { equal: true } => "equal",
            Threshold::AtOrAbove { equal: false } => "above",
        }
    }
}

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Smallest eigenvalue of the adjacency matrix (slim input) or special
/// matrix (fat input), bracketed to within `tolerance`.
pub fn smallest_eigenvalue_with(g: &HoffmanGraph, tolerance: f64) -> Result<EigenInterval, SpectralError> {
    if g.slim_count() == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    let m = SpecialMatrix::of(g);
    let cp = char_poly(&m);
    let p = cp.to_rational().square_free();
    let sturm = Sturm::new(&p);
    let r = m.gershgorin_radius() + 1;
    let mut lo = BigRational::from_integer((-r).into());
    let mut hi = BigRational::from_integer(r.into());
    let tol = BigRational::from_float(tolerance).expect("finite tolerance");
    let two = BigRational::from_integer(2.into());
    // invariant: no root ≤ lo, some root ≤ hi
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / &two;
        if sturm.roots_up_to(&mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // integer roots are reported exactly
    let mut k = hi.floor();
    while k > lo {
        if p.eval(&k).is_zero() && sturm.roots_up_to(&k) == 1 {
            return Ok(EigenInterval { lower: k.clone(), upper: k, exact: true, char_poly: cp });
        }
        k -= BigRational::one();
    }
    Ok(EigenInterval { lower: lo, upper: hi, exact: false, char_poly: cp })
}

pub fn smallest_eigenvalue(g: &HoffmanGraph) -> Result<EigenInterval, SpectralError> {
    smallest_eigenvalue_with(g, DEFAULT_TOLERANCE)
}

/// Exact comparison of the smallest root of `e.char_poly` with `−1 − √2`.
pub fn compare_threshold(e: &EigenInterval) -> Threshold {
    let theta_poly = Poly::new(vec![-BigRational::one(), BigRational::from_integer(2.into()), BigRational::one()]);
    let mut p = e.char_poly.to_rational().square_free();
    let mut equal = false;
    // remove the factor x² + 2x − 1 when θ is a root
    while !p.is_zero() && p.degree() >= 2 && QSqrt2::eval_threshold(&p).sign() == 0 {
        equal = true;
        p = p.div_rem(&theta_poly).0;
    }
    let below = if p.degree() == 0 {
        0
    } else {
        let s = Sturm::new(&p);
        s.at_neg_infinity() - s.at_threshold()
    };
    if below > 0 {
        Threshold::Below
    } else {
        Threshold::AtOrAbove { equal }
    }
}

/// Smallest eigenvalue and its threshold position in one call.
pub fn certify(g: &HoffmanGraph) -> Result<(EigenInterval, Threshold), SpectralError> {
    let e = smallest_eigenvalue(g)?;
    let t = compare_threshold(&e);
    Ok((e, t))
}

mod decimal_vec {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| c.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter().map(|c| c.parse().map_err(D::Error::custom)).collect()
    }
}

mod ratio_string {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let v = String::deserialize(d)?;
        v.parse().map_err(D::Error::custom)
    }
}
