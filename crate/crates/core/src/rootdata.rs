//! Root and weight combinatorics for type A_n (n <= 3).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{EmaError, Result};
use crate::foundations::Rat;

/// An integral weight in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    pub fn zero(n: usize) -> Self {
        Weight { coords: vec![0; n] }
    }

    pub fn fundamental(n: usize, i: usize) -> Self {
        let mut coords = vec![0; n];
        coords[i] = 1;
        Weight { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight::new(self.coords.iter().map(|a| a * k).collect())
    }

    /// λ(h_θ); for type A the sum of the fundamental coordinates.
    pub fn h_theta(&self) -> i64 {
        self.coords.iter().sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Diagram automorphisms of A_n: the identity and the flip i -> n+1-i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagramSymmetry {
    Identity,
    Flip,
}

impl DiagramSymmetry {
    /// Image of node `i` (0-based) in rank `n`.
    pub fn node(self, n: usize, i: usize) -> usize {
        match self {
            DiagramSymmetry::Identity => i,
            DiagramSymmetry::Flip => n - 1 - i,
        }
    }

    pub fn compose(self, other: DiagramSymmetry) -> DiagramSymmetry {
        if self == other {
            DiagramSymmetry::Identity
        } else {
            DiagramSymmetry::Flip
        }
    }

    pub fn pow(self, k: i64) -> DiagramSymmetry {
        if k.rem_euclid(2) == 0 {
            DiagramSymmetry::Identity
        } else {
            self
        }
    }

    /// Acts on weights by permuting fundamental coordinates.
    pub fn act(self, lambda: &Weight) -> Weight {
        let n = lambda.rank();
        let mut out = vec![0; n];
        for (i, &c) in lambda.coords.iter().enumerate() {
            out[self.node(n, i)] = c;
        }
        Weight::new(out)
    }
}

pub fn diagram_act(tau: DiagramSymmetry, lambda: &Weight) -> Weight {
    tau.act(lambda)
}

/// Root datum of type A_n.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub n: usize,
    pub cartan: Vec<Vec<i64>>,
    inv_cartan: Vec<Vec<Rat>>,
    /// Positive roots in simple-root coordinates, ordered by (height, first node).
    pub positive_roots: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn type_a(n: usize) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(EmaError::RankOutOfRange(n + 1));
        }
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        // (C^{-1})_{ij} = min(i,j)(n+1-max(i,j))/(n+1) with 1-based indices
        let inv_cartan = (1..=n as i64)
            .map(|i| {
                (1..=n as i64)
                    .map(|j| Rat::new(i.min(j) * (n as i64 + 1 - i.max(j)), n as i64 + 1))
                    .collect()
            })
            .collect();
        let mut positive_roots = Vec::new();
        for h in 1..=n {
            for i in 0..=(n - h) {
                let mut r = vec![0; n];
                for c in r.iter_mut().skip(i).take(h) {
                    *c = 1;
                }
                positive_roots.push(r);
            }
        }
        Ok(RootDatum { n, cartan, inv_cartan, positive_roots })
    }

    /// Span of positive root `k` as 0-based node range `[i, j]`.
    pub fn root_span(&self, k: usize) -> (usize, usize) {
        let r = &self.positive_roots[k];
        let i = r.iter().position(|&c| c == 1).expect("nonzero root");
        let j = r.iter().rposition(|&c| c == 1).expect("nonzero root");
        (i, j)
    }

    pub fn root_height(&self, k: usize) -> i64 {
        self.positive_roots[k].iter().sum()
    }

    pub fn highest_root(&self) -> Vec<i64> {
        vec![1; self.n]
    }

    /// ht θ.
    pub fn theta_height(&self) -> i64 {
        self.n as i64
    }

    pub fn rho(&self) -> Weight {
        Weight::new(vec![1; self.n])
    }

    /// Fundamental coordinates of a root-lattice element given in root coordinates.
    pub fn root_to_weight(&self, k: &[i64]) -> Weight {
        Weight::new(
            (0..self.n).map(|j| (0..self.n).map(|i| k[i] * self.cartan[i][j]).sum()).collect(),
        )
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::new(self.cartan[i].clone())
    }

    /// Coefficients k with λ = Σ k_i α_i.
    pub fn root_coords(&self, lambda: &Weight) -> Vec<Rat> {
        (0..self.n)
            .map(|i| {
                let mut acc = Rat::ZERO;
                for j in 0..self.n {
                    acc = &acc + &(&self.inv_cartan[i][j] * &Rat::from_int(lambda.coords[j]));
                }
                acc
            })
            .collect()
    }

    pub fn height(&self, lambda: &Weight) -> Rat {
        self.root_coords(lambda).iter().fold(Rat::ZERO, |a, b| &a + b)
    }

    /// μ ≤ λ in the dominance order.
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.root_coords(&lambda.sub(mu)).iter().all(|k| k.is_integer() && !k.is_negative())
    }

    /// Integer root coordinates of λ − μ when it lies in Q⁺.
    fn drop_coords(&self, lambda: &Weight, mu: &Weight) -> Option<Vec<i64>> {
        self.root_coords(&lambda.sub(mu)).iter().map(|k| k.to_i64().filter(|&v| v >= 0)).collect()
    }

    pub fn w0(&self, lambda: &Weight) -> Weight {
        DiagramSymmetry::Flip.act(lambda).neg()
    }

    /// All μ with w₀λ ≤ μ ≤ λ.
    pub fn weight_interval(&self, lambda: &Weight) -> Result<BTreeSet<Weight>> {
        if !lambda.is_dominant() {
            return Err(EmaError::NotDominant(lambda.to_string()));
        }
        let span = self
            .drop_coords(lambda, &self.w0(lambda))
            .expect("λ − w₀λ lies in Q⁺ for dominant λ");
        let mut out = BTreeSet::new();
        let mut k = vec![0i64; self.n];
        loop {
            out.insert(lambda.sub(&self.root_to_weight(&k)));
            let mut i = 0;
            loop {
                if i == self.n {
                    return Ok(out);
                }
                if k[i] < span[i] {
                    k[i] += 1;
                    break;
                }
                k[i] = 0;
                i += 1;
            }
        }
    }

    /// Symmetric form with (ω_i, ω_j) = (C^{-1})_{ij} (roots have length² 2).
    pub fn inner(&self, a: &Weight, b: &Weight) -> Rat {
        let mut acc = Rat::ZERO;
        for i in 0..self.n {
            if a.coords[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                if b.coords[j] == 0 {
                    continue;
                }
                acc = &acc + &(&self.inv_cartan[i][j] * &Rat::from_int(a.coords[i] * b.coords[j]));
            }
        }
        acc
    }

    fn to_epsilon(&self, w: &Weight) -> Vec<i64> {
        let mut x = vec![0i64; self.n + 1];
        for i in (0..self.n).rev() {
            x[i] = x[i + 1] + w.coords[i];
        }
        x
    }

    fn from_epsilon(&self, x: &[i64]) -> Weight {
        Weight::new((0..self.n).map(|i| x[i] - x[i + 1]).collect())
    }

    /// The dominant weight in the Weyl orbit of `w`.
    pub fn dominant_conjugate(&self, w: &Weight) -> Weight {
        let mut x = self.to_epsilon(w);
        x.sort_unstable_by(|a, b| b.cmp(a));
        self.from_epsilon(&x)
    }

    /// Weyl orbit of a weight (distinct permutations of ε-coordinates).
    pub fn weyl_orbit(&self, w: &Weight) -> BTreeSet<Weight> {
        let mut x = self.to_epsilon(w);
        x.sort_unstable();
        let mut out = BTreeSet::new();
        loop {
            out.insert(self.from_epsilon(&x));
            if !next_permutation(&mut x) {
                return out;
            }
        }
    }

    /// Weight multiplicities of V(λ) by Freudenthal's formula.
    pub fn freudenthal_mults(&self, lambda: &Weight) -> Result<BTreeMap<Weight, usize>> {
        if !lambda.is_dominant() {
            return Err(EmaError::NotDominant(lambda.to_string()));
        }
        let rho = self.rho();
        let lr = lambda.add(&rho);
        let norm_lr = self.inner(&lr, &lr);
        // dominant weights below λ, processed top-down by height of λ − μ
        let mut dominant: Vec<(Rat, Weight)> = self
            .weight_interval(lambda)?
            .into_iter()
            .filter(Weight::is_dominant)
            .map(|mu| (self.height(&lambda.sub(&mu)), mu))
            .collect();
        dominant.sort();
        let roots: Vec<Weight> =
            self.positive_roots.iter().map(|r| self.root_to_weight(r)).collect();
        let mut dom_mult: BTreeMap<Weight, Rat> = BTreeMap::new();
        for (_, mu) in dominant {
            if &mu == lambda {
                dom_mult.insert(mu, Rat::ONE);
                continue;
            }
            let mut sum = Rat::ZERO;
            for alpha in &roots {
                let mut k = 1;
                loop {
                    let nu = mu.add(&alpha.scale(k));
                    let d = self.dominant_conjugate(&nu);
                    if !self.dominance_leq(&d, lambda) {
                        break;
                    }
                    let m = dom_mult.get(&d).cloned().unwrap_or(Rat::ZERO);
                    sum = &sum + &(&m * &self.inner(&nu, alpha));
                    k += 1;
                }
            }
            let mr = mu.add(&rho);
            let denom = &norm_lr - &self.inner(&mr, &mr);
            let m = &(&sum * &Rat::from_int(2)) / &denom;
            dom_mult.insert(mu, m);
        }
        let mut out = BTreeMap::new();
        for (mu, m) in dom_mult {
            let m = m.to_i64().expect("Freudenthal multiplicities are integers");
            if m == 0 {
                continue;
            }
            for w in self.weyl_orbit(&mu) {
                out.insert(w, m as usize);
            }
        }
        Ok(out)
    }

    /// Weyl dimension formula Π (λ+ρ, α)/(ρ, α).
    pub fn weyl_dimension(&self, lambda: &Weight) -> usize {
        let rho = self.rho();
        let lr = lambda.add(&rho);
        let mut acc = Rat::ONE;
        for r in &self.positive_roots {
            let a = self.root_to_weight(r);
            acc = &acc * &(&self.inner(&lr, &a) / &self.inner(&rho, &a));
        }
        acc.to_i64().expect("integral dimension") as usize
    }
}

fn next_permutation(x: &mut [i64]) -> bool {
    if x.len() < 2 {
        return false;
    }
    let mut i = x.len() - 1;
    while i > 0 && x[i - 1] >= x[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = x.len() - 1;
    while x[j] <= x[i - 1] {
        j -= 1;
    }
    x.swap(i - 1, j);
    x[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight::new(c.to_vec())
    }

    #[test]
    fn heights() {
        let a1 = RootDatum::type_a(1).unwrap();
        assert_eq!(a1.height(&w(&[2])), Rat::ONE);
        assert_eq!(a1.height(&w(&[1])), Rat::new(1, 2));
        let a2 = RootDatum::type_a(2).unwrap();
        assert_eq!(a2.root_coords(&w(&[1, 0])), vec![Rat::new(2, 3), Rat::new(1, 3)]);
        assert_eq!(a2.height(&w(&[1, 0])), Rat::ONE);
    }

    #[test]
    fn dominance() {
        let a1 = RootDatum::type_a(1).unwrap();
        assert!(a1.dominance_leq(&w(&[0]), &w(&[2])));
        assert!(!a1.dominance_leq(&w(&[1]), &w(&[2])));
        let a2 = RootDatum::type_a(2).unwrap();
        assert!(!a2.dominance_leq(&w(&[1, 0]), &w(&[0, 1])));
    }

    #[test]
    fn intervals() {
        let a1 = RootDatum::type_a(1).unwrap();
        let i = a1.weight_interval(&w(&[2])).unwrap();
        assert_eq!(i.into_iter().collect::<Vec<_>>(), vec![w(&[-2]), w(&[0]), w(&[2])]);
        assert_eq!(a1.weight_interval(&w(&[1])).unwrap().len(), 2);
        assert!(a1.weight_interval(&w(&[-1])).is_err());

        // brute force over a box: (a, b) has root coordinates ((2a+b)/3, (a+2b)/3)
        let in_q_plus = |a: i64, b: i64| (2 * a + b) % 3 == 0 && 2 * a + b >= 0 && a + 2 * b >= 0;
        let a2 = RootDatum::type_a(2).unwrap();
        let brute: BTreeSet<Weight> = (-4..=4)
            .flat_map(|a| (-4..=4).map(move |b| (a, b)))
            .filter(|&(a, b)| in_q_plus(1 - a, 1 - b) && in_q_plus(a + 1, b + 1))
            .map(|(a, b)| w(&[a, b]))
            .collect();
        assert_eq!(brute.len(), 9);
        assert_eq!(a2.weight_interval(&w(&[1, 1])).unwrap(), brute);
    }

    #[test]
    fn freudenthal_examples() {
        let a1 = RootDatum::type_a(1).unwrap();
        let m = a1.freudenthal_mults(&w(&[2])).unwrap();
        assert_eq!(m.values().sum::<usize>(), 3);
        let a2 = RootDatum::type_a(2).unwrap();
        let adj = a2.freudenthal_mults(&w(&[1, 1])).unwrap();
        assert_eq!(adj.values().sum::<usize>(), 8);
        assert_eq!(adj[&w(&[0, 0])], 2);
        assert_eq!(a2.freudenthal_mults(&w(&[1, 0])).unwrap().len(), 3);
    }

    #[test]
    fn diagram_symmetry() {
        assert_eq!(DiagramSymmetry::Flip.act(&w(&[1, 0])), w(&[0, 1]));
        assert_eq!(DiagramSymmetry::Identity.act(&w(&[3])), w(&[3]));
        assert_eq!(DiagramSymmetry::Flip.act(&w(&[1, 0, 2])), w(&[2, 0, 1]));
    }
}
