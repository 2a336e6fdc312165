//! Laurent polynomials k[t_1^{±1}, ..., t_n^{±1}].

use std::collections::BTreeMap;
use std::fmt;

use crate::foundations::FieldElement as F;
use crate::liealg::GammaGroup;

use super::point::Point;

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentFunction {
    pub nvars: usize,
    /// Exponent tuple → nonzero coefficient.
    pub terms: BTreeMap<Vec<i64>, F>,
}

impl LaurentFunction {
    pub fn zero(nvars: usize) -> Self {
        LaurentFunction { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<i64>, c: F) -> Self {
        let mut f = Self::zero(nvars);
        if !c.is_zero() {
            f.terms.insert(exps, c);
        }
        f
    }

    /// The coordinate function t_i.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, F::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<i64>, c: F) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&e) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&F::int(-1)))
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &Point) -> F {
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (xi, &ei) in x.coords.iter().zip(e) {
                term = &term * &xi.pow(ei);
            }
            acc = &acc + &term;
        }
        acc
    }

    /// (γ·f)(z) = f(γ^{-1} z): the monomial t^a is multiplied by s_γ^{−a}.
    pub fn gamma_act(&self, group: &GammaGroup, a: usize) -> Self {
        let s = &group.elements[a].scaling;
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut factor = c.clone();
            for (si, &ei) in s.iter().zip(e) {
                factor = &factor * &si.pow(-ei);
            }
            out.add_term(e.clone(), factor);
        }
        out
    }

    /// Isotypic component |Γ|^{-1} Σ_γ χ(γ)^{-1} γ·f.
    pub fn xi_component(&self, group: &GammaGroup, r: &[i64]) -> Self {
        let mut out = Self::zero(self.nvars);
        for a in 0..group.order() {
            let w = group.character_value(r, a).inv();
            out = out.add(&self.gamma_act(group, a).scale(&w));
        }
        out.scale(&F::rat(1, group.order() as i64))
    }
}

impl fmt::Display for LaurentFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| if k == 1 { format!("t{}", i + 1) } else { format!("t{}^{k}", i + 1) })
                .collect();
            if mono.is_empty() {
                parts.push(format!("({c})"));
            } else {
                parts.push(format!("({c})*{}", mono.join("*")));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{ChevalleyAlgebra, GeneratorSpec};
    use crate::rootdata::DiagramSymmetry;

    fn cyclic(order: u32) -> GammaGroup {
        let g = ChevalleyAlgebra::build_sl(2).unwrap();
        let spec = GeneratorSpec {
            order,
            scaling: vec![1],
            tau: DiagramSymmetry::Identity,
            torus: vec![0],
        };
        GammaGroup::build(&g, 4, 1, &[spec]).unwrap()
    }

    fn t(k: i64) -> LaurentFunction {
        LaurentFunction::monomial(1, vec![k], F::one())
    }

    #[test]
    fn z2_action() {
        let gamma = cyclic(2);
        assert_eq!(t(1).gamma_act(&gamma, 1), t(1).scale(&F::int(-1)));
        assert_eq!(t(2).gamma_act(&gamma, 1), t(2));
    }

    #[test]
    fn components() {
        let gamma = cyclic(2);
        let f = t(1).add(&t(2));
        assert_eq!(f.xi_component(&gamma, &[0]), t(2));
        assert_eq!(f.xi_component(&gamma, &[1]), t(1));
        let z4 = cyclic(4);
        assert_eq!(t(3).xi_component(&z4, &[3]), t(3));
        for r in 0..3 {
            assert!(t(3).xi_component(&z4, &[r]).is_zero());
        }
    }

    #[test]
    fn evaluation() {
        let f = t(-1).add(&t(2));
        assert_eq!(f.eval(&Point::from_ints(&[2])), F::rat(9, 2));
    }
}
