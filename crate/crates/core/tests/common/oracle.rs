//! Independent dimension oracle for local Weyl modules of sl2 ⊗ C[t]/(t^N)
//! at t = 0.
//!
//! n⁻ ⊗ C[t] is abelian for sl2, so the induced module is the polynomial ring
//! in x_s = f ⊗ t^s acting on w. The relation submodule is the closure of
//! x_0^(m+1) w under multiplication by x_s and the actions of e ⊗ t^r and
//! h ⊗ t^q, computed by brute force on homogeneous vectors of bounded degree.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

type Q = BigRational;
type Mono = Vec<u8>;
type Poly = BTreeMap<Mono, Q>;

struct Closure {
    m: i64,
    n: usize,
    cap: usize,
    e_memo: HashMap<(usize, Mono), Poly>,
}

fn degree(a: &Mono) -> usize {
    a.iter().map(|&k| k as usize).sum()
}

fn add_into(p: &mut Poly, mono: Mono, c: Q) {
    let slot = p.entry(mono.clone()).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&mono);
    }
}

impl Closure {
    fn x_mul(&self, s: usize, p: &Poly) -> Poly {
        p.iter()
            .map(|(a, c)| {
                let mut b = a.clone();
                b[s] += 1;
                (b, c.clone())
            })
            .collect()
    }

    /// h ⊗ t^q on x^a w.
    fn h_mono(&self, q: usize, a: &Mono) -> Poly {
        let mut out = Poly::new();
        if q == 0 {
            let k = self.m - 2 * degree(a) as i64;
            if k != 0 {
                out.insert(a.clone(), Q::from_integer(k.into()));
            }
            return out;
        }
        for s in 0..self.n {
            if a[s] > 0 && q + s < self.n {
                let mut b = a.clone();
                b[s] -= 1;
                b[q + s] += 1;
                add_into(&mut out, b, Q::from_integer((-2 * a[s] as i64).into()));
            }
        }
        out
    }

    /// e ⊗ t^r on x^a w, peeling off the lowest variable:
    /// e_r x_s Q w = x_s e_r Q w + h_{r+s} Q w.
    fn e_mono(&mut self, r: usize, a: &Mono) -> Poly {
        if let Some(p) = self.e_memo.get(&(r, a.clone())) {
            return p.clone();
        }
        let mut out = Poly::new();
        if let Some(s) = a.iter().position(|&k| k > 0) {
            let mut rest = a.clone();
            rest[s] -= 1;
            let inner = self.e_mono(r, &rest);
            for (b, c) in self.x_mul(s, &inner) {
                add_into(&mut out, b, c);
            }
            if r + s < self.n {
                for (b, c) in self.h_mono(r + s, &rest) {
                    add_into(&mut out, b, c);
                }
            }
        }
        self.e_memo.insert((r, a.clone()), out.clone());
        out
    }

    fn apply(&mut self, p: &Poly, op: impl Fn(&mut Self, &Mono) -> Poly) -> Poly {
        let mut out = Poly::new();
        for (a, c) in p {
            for (b, d) in op(self, a) {
                add_into(&mut out, b, d * c);
            }
        }
        out
    }
}

/// Rows with distinct leading (largest) monomials, normalized to 1.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<Mono, Poly>,
}

impl Echelon {
    fn reduce(&self, mut v: Poly) -> Poly {
        while let Some(pivot) = v.keys().rev().find(|k| self.rows.contains_key(*k)).cloned() {
            let c = v[&pivot].clone();
            for (b, d) in &self.rows[&pivot] {
                add_into(&mut v, b.clone(), -(d * &c));
            }
        }
        v
    }

    fn insert(&mut self, v: Poly) -> Option<Poly> {
        let v = self.reduce(v);
        let (lead, c) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone()))?;
        let inv = Q::one() / c;
        let row: Poly = v.into_iter().map(|(k, d)| (k, d * &inv)).collect();
        self.rows.insert(lead, row.clone());
        Some(row)
    }
}

fn monomials_of_degree(n: usize, d: usize) -> usize {
    // C(d + n - 1, d)
    (1..=d).fold(1usize, |acc, i| acc * (n - 1 + i) / i)
}

/// Per-degree dimensions of the quotient up to degree `cap`, for the
/// highest weight m ω with t^`n` = 0.
pub fn graded_dims(m: i64, n: usize, cap: usize) -> Vec<usize> {
    let mut cl = Closure { m, n, cap, e_memo: HashMap::new() };
    let mut ech = Echelon::default();
    let mut seed = vec![0u8; n];
    seed[0] = (m + 1) as u8;
    let mut queue = vec![Poly::from([(seed, Q::one())])];
    while let Some(v) = queue.pop() {
        let Some(row) = ech.insert(v) else { continue };
        let d = degree(row.keys().next().expect("nonzero row"));
        if d < cl.cap {
            for s in 0..n {
                queue.push(cl.x_mul(s, &row));
            }
        }
        for r in 0..n {
            queue.push(cl.apply(&row, |c, a| c.e_mono(r, a)));
            queue.push(cl.apply(&row, |c, a| c.h_mono(r, a)));
        }
    }
    let mut pivots = vec![0usize; cap + 1];
    for lead in ech.rows.keys() {
        pivots[degree(lead)] += 1;
    }
    (0..=cap).map(|d| monomials_of_degree(n, d) - pivots[d]).collect()
}

/// dim W(m ω), requiring the quotient to vanish in degree m + 1 and the
/// answer to be stable when both N and the degree cap grow by one.
pub fn sl2_local_weyl_dim(m: i64) -> usize {
    let k = m as usize;
    let first = graded_dims(m, k + 1, 2 * k + 2);
    let second = graded_dims(m, k + 2, 2 * k + 3);
    assert_eq!(first[k + 1], 0, "relations did not kill degree {}", k + 1);
    assert_eq!(first[..=k], second[..=k], "oracle not stable");
    first[..=k].iter().sum()
}
