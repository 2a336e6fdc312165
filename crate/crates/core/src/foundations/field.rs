//! Cyclotomic fields Q(ζ_m) with rational coordinates.
//!
//! An element of order `m` is a coefficient vector of length φ(m) in the power
//! basis 1, ζ, ..., ζ^{φ(m)-1}. Elements whose only nonzero coordinate is the
//! constant one are stored as plain rationals, so equality between elements of
//! different orders can be decided by embedding into the least common order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;

use super::rational::Rat;
use crate::error::{EmaError, Result};

type Poly = Vec<Rat>;

/// Reduction data for Q(ζ_m).
#[derive(Debug)]
pub struct CycloTable {
    pub m: u32,
    pub phi: usize,
    /// Φ_m, lowest degree first, monic.
    pub poly: Poly,
    /// `red[j]` is x^j mod Φ_m as a length-φ coefficient vector.
    red: Vec<Poly>,
}

fn poly_trim(p: &mut Poly) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rat::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    poly_trim(&mut out);
    out
}

fn poly_is_zero(p: &Poly) -> bool {
    p.iter().all(Rat::is_zero)
}

/// Quotient and remainder of polynomial division; `b` must be nonzero.
fn poly_divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].inv();
    if r.len() < b.len() {
        return (vec![Rat::ZERO], r);
    }
    let mut q = vec![Rat::ZERO; r.len() - db];
    while r.len() >= b.len() && !poly_is_zero(&r) {
        let shift = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&c * bj);
        }
        q[shift] = c;
        r.pop();
        poly_trim(&mut r);
    }
    poly_trim(&mut q);
    (q, r)
}

fn cyclotomic_poly(m: u32) -> Poly {
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![Rat::ZERO; m as usize + 1];
    p[0] = Rat::from_int(-1);
    p[m as usize] = Rat::ONE;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let (q, r) = poly_divrem(&p, &cyclotomic_poly(d));
            debug_assert!(poly_is_zero(&r));
            p = q;
        }
    }
    p
}

impl CycloTable {
    fn build(m: u32) -> CycloTable {
        let poly = cyclotomic_poly(m);
        let phi = poly.len() - 1;
        let len = (m as usize).max(2 * phi);
        let mut red = Vec::with_capacity(len);
        let mut cur = vec![Rat::ZERO; phi];
        cur[0] = Rat::ONE;
        if phi == 1 {
            // Q(ζ_1) = Q(ζ_2) = Q, ζ is the root of the linear Φ
            let root = -&poly[0];
            let mut v = Rat::ONE;
            for _ in 0..len {
                red.push(vec![v.clone()]);
                v = &v * &root;
            }
            return CycloTable { m, phi, poly, red };
        }
        for _ in 0..len {
            red.push(cur.clone());
            // multiply by x and reduce with the monic Φ
            let top = cur[phi - 1].clone();
            let mut next = vec![Rat::ZERO; phi];
            for i in (1..phi).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for (i, c) in next.iter_mut().enumerate() {
                    *c = &*c - &(&top * &poly[i]);
                }
            }
            cur = next;
        }
        CycloTable { m, phi, poly, red }
    }

    /// The global shared table for order `m`.
    pub fn get(m: u32) -> Arc<CycloTable> {
        static TABLES: OnceLock<RwLock<HashMap<u32, Arc<CycloTable>>>> = OnceLock::new();
        let tables = TABLES.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(t) = tables.read().expect("table lock").get(&m) {
            return t.clone();
        }
        let t = Arc::new(CycloTable::build(m));
        tables.write().expect("table lock").entry(m).or_insert(t).clone()
    }

    fn power(&self, j: usize) -> &Poly {
        &self.red[j % self.m as usize]
    }
}

pub fn euler_phi(m: u32) -> usize {
    CycloTable::get(m).phi
}

/// An element of a cyclotomic field. See the module docs for the normal form.
#[derive(Clone, Debug)]
pub enum FieldElement {
    Q(Rat),
    Cyc(Box<Cyclo>),
}

#[derive(Clone, Debug)]
pub struct Cyclo {
    m: u32,
    c: Vec<Rat>,
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Q(Rat::ZERO)
    }

    pub fn one() -> Self {
        FieldElement::Q(Rat::ONE)
    }

    pub fn int(n: i64) -> Self {
        FieldElement::Q(Rat::from_int(n))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        FieldElement::Q(Rat::new(n, d))
    }

    /// ζ_m^k.
    pub fn zeta(m: u32, k: i64) -> Self {
        assert!(m >= 1);
        let t = CycloTable::get(m);
        let j = k.rem_euclid(m as i64) as usize;
        Self::from_coeffs(m, t.power(j).clone())
    }

    /// Builds an element from power-basis coordinates of length φ(m).
    pub fn from_coeffs(m: u32, c: Vec<Rat>) -> Self {
        debug_assert_eq!(c.len(), euler_phi(m));
        if c.iter().skip(1).all(Rat::is_zero) {
            return FieldElement::Q(c.into_iter().next().unwrap_or_default());
        }
        FieldElement::Cyc(Box::new(Cyclo { m, c }))
    }

    /// Order of the smallest field in the representation (1 for rationals).
    pub fn order(&self) -> u32 {
        match self {
            FieldElement::Q(_) => 1,
            FieldElement::Cyc(c) => c.m,
        }
    }

    /// Coordinates in the power basis of Q(ζ_m); `m` must be a multiple of
    /// `self.order()`.
    pub fn coeffs_in(&self, m: u32) -> Vec<Rat> {
        let t = CycloTable::get(m);
        match self {
            FieldElement::Q(r) => {
                let mut v = vec![Rat::ZERO; t.phi];
                v[0] = r.clone();
                v
            }
            FieldElement::Cyc(c) if c.m == m => c.c.clone(),
            FieldElement::Cyc(c) => {
                assert!(m.is_multiple_of(c.m), "cannot embed order {} into {}", c.m, m);
                let step = (m / c.m) as usize;
                let mut v = vec![Rat::ZERO; t.phi];
                for (k, a) in c.c.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (i, r) in t.power(k * step).iter().enumerate() {
                        v[i] = &v[i] + &(a * r);
                    }
                }
                v
            }
        }
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            FieldElement::Q(r) => Some(r),
            FieldElement::Cyc(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Q(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElement::Q(r) if r.is_one())
    }

    fn common_order(a: &Self, b: &Self) -> u32 {
        a.order().lcm(&b.order())
    }

    pub fn checked_inv(&self) -> Result<Self> {
        match self {
            FieldElement::Q(r) => Ok(FieldElement::Q(r.checked_inv()?)),
            FieldElement::Cyc(c) => {
                let t = CycloTable::get(c.m);
                // extended Euclid: find s with s*a = 1 mod Φ
                let mut a0 = t.poly.clone();
                let mut a1 = c.c.clone();
                poly_trim(&mut a1);
                let mut s0: Poly = vec![Rat::ZERO];
                let mut s1: Poly = vec![Rat::ONE];
                while a1.len() != 1 {
                    let (q, r) = poly_divrem(&a0, &a1);
                    let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
                    a0 = std::mem::replace(&mut a1, r);
                    s0 = std::mem::replace(&mut s1, s2);
                }
                // a1 is a nonzero constant since Φ is irreducible
                let k = a1[0].checked_inv()?;
                let mut out = vec![Rat::ZERO; t.phi];
                let (_, rem) = poly_divrem(&s1, &t.poly);
                for (i, x) in rem.iter().enumerate() {
                    out[i] = x * &k;
                }
                Ok(Self::from_coeffs(c.m, out))
            }
        }
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().expect("division by zero")
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Total order used for canonical sorting (points, table keys).
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldElement::Q(a), FieldElement::Q(b)) => a.cmp(b),
            (FieldElement::Q(_), FieldElement::Cyc(_)) => Ordering::Less,
            (FieldElement::Cyc(_), FieldElement::Q(_)) => Ordering::Greater,
            _ => {
                let m = Self::common_order(self, other);
                self.coeffs_in(m).cmp(&other.coeffs_in(m))
            }
        }
    }

    /// Parses integers, `p/q`, `zeta`, `zeta^k`, `zeta_d^k`, products
    /// `c*zeta^k` and sums of those. Bare `zeta` means ζ_m for the given `m`.
    pub fn parse_with_order(s: &str, m: u32) -> Result<Self> {
        Parser { s: s.as_bytes(), pos: 0, m, src: s }.expr()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    m: u32,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> EmaError {
        EmaError::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("expected integer"))
    }

    fn factor(&mut self) -> Result<FieldElement> {
        match self.peek() {
            Some(b'z') => {
                if !self.s[self.pos..].starts_with(b"zeta") {
                    return Err(self.err("unknown symbol"));
                }
                self.pos += 4;
                let mut order = self.m;
                if self.peek() == Some(b'_') {
                    self.pos += 1;
                    let d = self.int()?;
                    if d < 1 {
                        return Err(self.err("root order must be positive"));
                    }
                    order = d as u32;
                }
                let mut k = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    k = self.int()?;
                }
                Ok(FieldElement::zeta(order, k))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr_inner()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.int()?;
                    if d == 0 {
                        return Err(EmaError::DivisionByZero);
                    }
                    return Ok(FieldElement::rat(n, d));
                }
                Ok(FieldElement::int(n))
            }
            _ => Err(self.err("expected number or zeta")),
        }
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut v = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            v = &v * &self.factor()?;
        }
        Ok(v)
    }

    fn expr_inner(&mut self) -> Result<FieldElement> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        }
        let mut v = self.term()?;
        if neg {
            v = -v;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    v = &v + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    v = &v - &self.term()?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let v = self.expr_inner()?;
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(v)
    }
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rat> for FieldElement {
    fn from(r: Rat) -> Self {
        FieldElement::Q(r)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::int(n)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElement::Q(a), FieldElement::Q(b)) => a == b,
            (FieldElement::Cyc(a), FieldElement::Cyc(b)) if a.m == b.m => a.c == b.c,
            (FieldElement::Cyc(_), FieldElement::Cyc(_)) => {
                self.canonical_cmp(other) == Ordering::Equal
            }
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Q(a), FieldElement::Q(b)) => FieldElement::Q(a + b),
            (FieldElement::Cyc(a), FieldElement::Q(b)) | (FieldElement::Q(b), FieldElement::Cyc(a)) => {
                let mut c = a.c.clone();
                c[0] = &c[0] + b;
                FieldElement::from_coeffs(a.m, c)
            }
            _ => {
                let m = FieldElement::common_order(self, rhs);
                let x = self.coeffs_in(m);
                let y = rhs.coeffs_in(m);
                FieldElement::from_coeffs(m, x.iter().zip(&y).map(|(p, q)| p + q).collect())
            }
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Q(a), FieldElement::Q(b)) => FieldElement::Q(a - b),
            _ => self + &(-rhs),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Q(a), FieldElement::Q(b)) => FieldElement::Q(a * b),
            (FieldElement::Cyc(a), FieldElement::Q(b)) | (FieldElement::Q(b), FieldElement::Cyc(a)) => {
                if b.is_zero() {
                    return FieldElement::zero();
                }
                FieldElement::from_coeffs(a.m, a.c.iter().map(|x| x * b).collect())
            }
            _ => {
                let m = FieldElement::common_order(self, rhs);
                let t = CycloTable::get(m);
                let x = self.coeffs_in(m);
                let y = rhs.coeffs_in(m);
                let mut out = vec![Rat::ZERO; t.phi];
                for (i, p) in x.iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    for (j, q) in y.iter().enumerate() {
                        if q.is_zero() {
                            continue;
                        }
                        let pq = p * q;
                        if i + j < t.phi {
                            out[i + j] = &out[i + j] + &pq;
                        } else {
                            for (k, r) in t.red[i + j].iter().enumerate() {
                                if !r.is_zero() {
                                    out[k] = &out[k] + &(&pq * r);
                                }
                            }
                        }
                    }
                }
                FieldElement::from_coeffs(m, out)
            }
        }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &'a FieldElement) -> FieldElement {
        self * &rhs.inv()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Q(a) => FieldElement::Q(-a),
            FieldElement::Cyc(a) => FieldElement::Cyc(Box::new(Cyclo {
                m: a.m,
                c: a.c.iter().map(|x| -x).collect(),
            })),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Q(r) => write!(f, "{r}"),
            FieldElement::Cyc(c) => {
                let mut first = true;
                for (k, a) in c.c.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let mag = if first { a.clone() } else { a.abs() };
                    if !first {
                        f.write_str(if a.is_negative() { " - " } else { " + " })?;
                    }
                    first = false;
                    if k == 0 {
                        write!(f, "{mag}")?;
                    } else if mag.is_one() {
                        write!(f, "zeta_{}^{k}", c.m)?;
                    } else if mag == Rat::from_int(-1) {
                        write!(f, "-zeta_{}^{k}", c.m)?;
                    } else {
                        write!(f, "{mag}*zeta_{}^{k}", c.m)?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta4_squared_is_minus_one() {
        let z = FieldElement::zeta(4, 1);
        assert_eq!(&z * &z, FieldElement::int(-1));
    }

    #[test]
    fn zeta3_relation() {
        let z = FieldElement::zeta(3, 1);
        let s = &(&(&z * &z) + &z) + &FieldElement::one();
        assert!(s.is_zero());
    }

    #[test]
    fn rational_inverse() {
        assert_eq!(FieldElement::rat(2, 3).inv(), FieldElement::rat(3, 2));
        assert!(matches!(FieldElement::zero().checked_inv(), Err(EmaError::DivisionByZero)));
    }

    #[test]
    fn cyclotomic_inverse_round_trip() {
        for m in [3u32, 4, 5, 8, 12] {
            let a = &FieldElement::zeta(m, 1) + &FieldElement::rat(1, 2);
            let b = &a * &FieldElement::zeta(m, 2);
            assert!((&b * &b.inv()).is_one(), "order {m}");
        }
    }

    #[test]
    fn mixed_orders_embed() {
        let z4 = FieldElement::zeta(4, 1);
        let z8sq = FieldElement::zeta(8, 2);
        assert_eq!(z4, z8sq);
        let sum = &z4 + &FieldElement::zeta(3, 1);
        assert_eq!(sum.order(), 12);
        assert_eq!(&sum - &FieldElement::zeta(3, 1), z4);
    }

    #[test]
    fn parse_and_print() {
        let v = FieldElement::parse_with_order("1/2 + 3*zeta^1", 4).unwrap();
        assert_eq!(v.to_string(), "1/2 + 3*zeta_4^1");
        assert_eq!(FieldElement::parse_with_order("1/2 + 3*zeta_4^1", 7).unwrap(), v);
        assert_eq!(FieldElement::parse_with_order("zeta^2", 4).unwrap(), FieldElement::int(-1));
        assert_eq!(FieldElement::parse_with_order("-1/2", 4).unwrap(), FieldElement::rat(-1, 2));
        assert!(FieldElement::parse_with_order("zeta^", 4).is_err());
        assert!(FieldElement::parse_with_order("1/0", 4).is_err());
    }
}
