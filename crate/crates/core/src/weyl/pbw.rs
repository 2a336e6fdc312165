//! PBW monomials in n⁻ ⊗ A/I^N applied to a highest weight vector, with the
//! action of the truncated algebra computed by commutator straightening.

use std::collections::HashMap;
use std::sync::Arc;

use crate::ema::TruncatedAlgebra;
use crate::error::{EmaError, Result};
use crate::foundations::sparse::{Accumulator, SparseVec};
use crate::foundations::FieldElement as F;
use crate::liealg::BasisKind;
use crate::repmod::PsiFunction;

/// A generator f_β ⊗ u_p^γ of n⁻ ⊗ A/I^N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub root: usize,
    pub point: usize,
    /// Index in the quotient algebra basis.
    pub jet: usize,
    /// Index in the truncated algebra basis.
    pub element: usize,
    pub height: i64,
}

/// Monomials y_1 y_2 ... y_k w with y_1 ≥ y_2 ≥ ... in generator order and
/// total drop height at most `bound`.
pub struct PbwSpace {
    pub alg: Arc<TruncatedAlgebra>,
    pub generators: Vec<Generator>,
    gen_of_element: HashMap<usize, usize>,
    pub monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    /// Root coordinates of λ − weight, per monomial.
    pub drops: Vec<Vec<i64>>,
    pub heights: Vec<i64>,
    pub bound: i64,
    /// ψ(p)(h_i) per support point of the algebra.
    hw: Vec<Vec<i64>>,
    act_memo: HashMap<(usize, usize), SparseVec>,
    mul_memo: HashMap<(usize, usize), SparseVec>,
}

impl PbwSpace {
    pub fn new(
        alg: Arc<TruncatedAlgebra>,
        psi: &PsiFunction,
        bound: i64,
        reverse_order: bool,
        max_size: usize,
    ) -> Result<Self> {
        let g = alg.g.clone();
        let datum = &g.datum;
        let mut generators = Vec::new();
        for (k, root) in datum.positive_roots.iter().enumerate() {
            let height: i64 = root.iter().sum();
            for p in 0..alg.quot.points.len() {
                let jets = &alg.quot.jets[p];
                for j in 0..jets.dim() {
                    let jet = alg.quot.offsets[p] + j;
                    let element = alg.index(g.f(k), jet);
                    generators.push(Generator { root: k, point: p, jet, element, height });
                }
            }
        }
        generators.sort_by_key(|g| (g.height, g.root, g.point, alg.quot.degree(g.jet), g.jet));
        if reverse_order {
            generators.reverse();
        }
        let gen_of_element = generators.iter().enumerate().map(|(i, g)| (g.element, i)).collect();
        let rank = g.rank();
        let hw = alg
            .quot
            .points
            .iter()
            .map(|p| psi.get(p).map(|w| w.coords.clone()).unwrap_or_else(|| vec![0; rank]))
            .collect();
        let mut space = PbwSpace {
            alg,
            generators,
            gen_of_element,
            monomials: Vec::new(),
            index: HashMap::new(),
            drops: Vec::new(),
            heights: Vec::new(),
            bound,
            hw,
            act_memo: HashMap::new(),
            mul_memo: HashMap::new(),
        };
        space.enumerate(max_size)?;
        Ok(space)
    }

    fn root_of(&self, gen: usize) -> &[i64] {
        &self.alg.g.datum.positive_roots[self.generators[gen].root]
    }

    fn enumerate(&mut self, max_size: usize) -> Result<()> {
        let rank = self.alg.g.rank();
        // depth-first over nonincreasing sequences
        let mut stack: Vec<(Vec<usize>, Vec<i64>, i64)> = vec![(vec![], vec![0; rank], 0)];
        let mut found = Vec::new();
        while let Some((seq, drop, h)) = stack.pop() {
            found.push((seq.clone(), drop.clone(), h));
            if found.len() > max_size {
                return Err(EmaError::Budget { size: found.len(), limit: max_size });
            }
            let top = seq.last().copied().unwrap_or(self.generators.len().saturating_sub(1));
            for gi in 0..=top.min(self.generators.len().saturating_sub(1)) {
                if self.generators.is_empty() {
                    break;
                }
                let nh = h + self.generators[gi].height;
                if nh > self.bound {
                    continue;
                }
                let mut s = seq.clone();
                s.push(gi);
                let d: Vec<i64> = drop.iter().zip(self.root_of(gi)).map(|(a, b)| a + b).collect();
                stack.push((s, d, nh));
            }
        }
        found.sort_by(|a, b| a.2.cmp(&b.2).then_with(|| b.0.cmp(&a.0)));
        for (seq, drop, h) in found {
            self.index.insert(seq.clone(), self.monomials.len());
            self.monomials.push(seq);
            self.drops.push(drop);
            self.heights.push(h);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Root coordinates by which `x` lowers the weight (negative for raising).
    fn element_drop(&self, x: usize) -> (Vec<i64>, i64) {
        let g = &self.alg.g;
        let (a, _) = self.alg.split(x);
        let rank = g.rank();
        let root = g.basis_root(a);
        let d: Vec<i64> = (0..rank).map(|i| -root.get(i).copied().unwrap_or(0)).collect();
        let h = d.iter().sum();
        (d, h)
    }

    fn within(&self, drop: &[i64], h: i64) -> bool {
        h <= self.bound && drop.iter().all(|&c| c >= 0)
    }

    /// Monomial index of the sequence, when it is within the bound.
    pub fn lookup(&self, seq: &[usize]) -> Option<usize> {
        self.index.get(seq).copied()
    }

    fn rest_of(&self, m: usize) -> Option<usize> {
        let seq = &self.monomials[m];
        self.lookup(&seq[1..])
    }

    /// y · m for a generator y.
    pub fn left_mul(&mut self, y: usize, m: usize) -> SparseVec {
        if let Some(v) = self.mul_memo.get(&(y, m)) {
            return v.clone();
        }
        let h = self.heights[m] + self.generators[y].height;
        let out = if h > self.bound {
            Vec::new()
        } else {
            let seq = self.monomials[m].clone();
            if seq.is_empty() || y >= seq[0] {
                let mut s = vec![y];
                s.extend_from_slice(&seq);
                vec![(self.lookup(&s).expect("bounded monomials are enumerated"), F::one())]
            } else {
                let y1 = seq[0];
                let rest = self.rest_of(m).expect("suffix of an enumerated monomial");
                let inner = self.left_mul(y, rest);
                let mut acc = Accumulator::new();
                for (k, c) in inner {
                    acc.add_scaled(&self.left_mul(y1, k), &c);
                }
                let ey = self.generators[y].element;
                let e1 = self.generators[y1].element;
                let br = self.alg.brackets[ey][e1].clone();
                for (z, c) in br {
                    acc.add_scaled(&self.act(z, rest), &c);
                }
                acc.finish()
            }
        };
        self.mul_memo.insert((y, m), out.clone());
        out
    }

    /// The action of truncated algebra basis element `x` on monomial `m`.
    pub fn act(&mut self, x: usize, m: usize) -> SparseVec {
        if let Some(v) = self.act_memo.get(&(x, m)) {
            return v.clone();
        }
        let (dx, hx) = self.element_drop(x);
        let drop: Vec<i64> = self.drops[m].iter().zip(&dx).map(|(a, b)| a + b).collect();
        let out = if !self.within(&drop, self.heights[m] + hx) {
            Vec::new()
        } else if let Some(&y) = self.gen_of_element.get(&x) {
            self.left_mul(y, m)
        } else if self.monomials[m].is_empty() {
            self.on_highest(x)
        } else {
            let y1 = self.monomials[m][0];
            let rest = self.rest_of(m).expect("suffix of an enumerated monomial");
            let inner = self.act(x, rest);
            let mut acc = Accumulator::new();
            for (k, c) in inner {
                acc.add_scaled(&self.left_mul(y1, k), &c);
            }
            let e1 = self.generators[y1].element;
            let br = self.alg.brackets[x][e1].clone();
            for (z, c) in br {
                acc.add_scaled(&self.act(z, rest), &c);
            }
            acc.finish()
        };
        self.act_memo.insert((x, m), out.clone());
        out
    }

    fn on_highest(&self, x: usize) -> SparseVec {
        let g = &self.alg.g;
        let (a, q) = self.alg.split(x);
        match g.kind(a) {
            BasisKind::E(_) => Vec::new(),
            BasisKind::H(i) => {
                if self.alg.quot.degree(q) > 0 {
                    return Vec::new();
                }
                let (p, _) = self.alg.quot.locate(q);
                let c = self.hw[p][i];
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(0, F::int(c))]
                }
            }
            BasisKind::F(_) => unreachable!("lowering generators are handled by left multiplication"),
        }
    }

    pub fn act_vec(&mut self, x: usize, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (m, c) in v {
            acc.add_scaled(&self.act(x, *m), c);
        }
        acc.finish()
    }

    pub fn label(&self, m: usize) -> String {
        let g = &self.alg.g;
        let parts: Vec<String> = self.monomials[m]
            .iter()
            .map(|&y| {
                let gen = &self.generators[y];
                format!("{}⊗{}", g.labels[g.f(gen.root)], self.alg.quot.label(gen.jet))
            })
            .collect();
        if parts.is_empty() {
            "w".into()
        } else {
            format!("{} w", parts.join(" "))
        }
    }
}
