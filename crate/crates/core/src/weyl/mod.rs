//! Local Weyl modules W(ψ) and their twisted versions.

pub mod head;
pub mod pbw;
pub mod twisted;

use std::collections::HashMap;

use crate::ema::{constant_eta, EmaSetting};
use crate::error::{EmaError, Result};
use crate::foundations::sparse::{Accumulator, SparseVec};
use crate::foundations::{FieldElement as F, Matrix, Subspace};
use crate::liealg::BasisKind;
use crate::repmod::{AlgebraRef, FiniteModule, PsiFunction};
use crate::rootdata::Weight;

pub use head::{head, hw_quotient_check, top_vector, HwQuotient};
pub use pbw::{Generator, PbwSpace};
pub use twisted::{
    all_transversals, check_choice_independence, check_gamma_twist, gamma_pullback, tensor_check, twisted_weyl,
    TensorReport, TwistedWeyl,
};

/// Default cap on PBW space and module dimensions.
pub const DEFAULT_MAX_DIM: usize = 4096;

#[derive(Clone, Debug)]
pub struct WeylOptions {
    /// Layers added to the buffer beyond ht(θ).
    pub extra_buffer: i64,
    /// Added to the truncation exponent N.
    pub extra_n: u32,
    /// Reverse the PBW generator order.
    pub reverse_order: bool,
    pub max_dim: usize,
    /// Re-run with a larger buffer and compare dimensions.
    pub certify_buffer: bool,
}

impl Default for WeylOptions {
    fn default() -> Self {
        WeylOptions { extra_buffer: 0, extra_n: 0, reverse_order: false, max_dim: DEFAULT_MAX_DIM, certify_buffer: true }
    }
}

impl WeylOptions {
    pub fn with_max_dim(max_dim: usize) -> Self {
        WeylOptions { max_dim, ..Default::default() }
    }
}

#[derive(Clone, Debug)]
pub struct WeylModule {
    pub psi: PsiFunction,
    pub module: FiniteModule,
    /// w_ψ in module coordinates.
    pub cyclic: Vec<F>,
    /// Truncated algebra elements y_1..y_k with basis vector k = y_1 ⋯ y_k w.
    pub words: Vec<Vec<usize>>,
    pub labels: Vec<String>,
    pub weights: Vec<Weight>,
    pub exponent: u32,
    pub pbw_size: usize,
    /// Verified relation groups, in the order they were checked.
    pub certification: Vec<String>,
}

impl WeylModule {
    pub fn dim(&self) -> usize {
        self.module.dim
    }

    /// g-weight multiplicities.
    pub fn character(&self) -> std::collections::BTreeMap<Weight, usize> {
        let mut out = std::collections::BTreeMap::new();
        for w in &self.weights {
            *out.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }
}

fn fail(what: &str) -> EmaError {
    EmaError::Certification(what.to_string())
}

/// W(ψ) over g ⊗ A/I^N on Supp ψ with N = max(1, λ(h_θ)).
pub fn weyl_module(setting: &EmaSetting, psi: &PsiFunction, opts: &WeylOptions) -> Result<WeylModule> {
    let g = &setting.g;
    let datum = &g.datum;
    let rank = g.rank();
    for w in psi.values.values() {
        if w.rank() != rank {
            return Err(EmaError::Input(format!("weight {w} has the wrong rank")));
        }
        if !w.is_dominant() {
            return Err(EmaError::NotDominant(w.to_string()));
        }
    }
    let lambda = psi.total(rank);
    let n = (lambda.h_theta().max(1) as u32) + opts.extra_n;
    let support = psi.support();
    let alg = setting.truncated(&constant_eta(&support, n));
    let depth = datum
        .height(&lambda.sub(&datum.w0(&lambda)))
        .to_i64()
        .expect("λ − w₀λ lies in the root lattice");
    let bound = depth + datum.theta_height() + opts.extra_buffer;
    let mut pbw = PbwSpace::new(alg.clone(), psi, bound, opts.reverse_order, opts.max_dim)?;
    let total = pbw.len();

    let mut classes: HashMap<Vec<i64>, Subspace> = HashMap::new();
    let mut queue: Vec<(Vec<i64>, SparseVec)> = Vec::new();
    let push = |classes: &mut HashMap<Vec<i64>, Subspace>, queue: &mut Vec<(Vec<i64>, SparseVec)>, drop: Vec<i64>, v: SparseVec| {
        if v.is_empty() {
            return;
        }
        let space = classes.entry(drop.clone()).or_insert_with(|| Subspace::zero(total));
        if let Some(r) = space.insert(&v) {
            queue.push((drop, r));
        }
    };
    for m in 0..total {
        if pbw.heights[m] > depth {
            push(&mut classes, &mut queue, pbw.drops[m].clone(), vec![(m, F::one())]);
        }
    }
    let constants: Vec<Vec<usize>> = (0..rank)
        .map(|i| {
            (0..alg.quot.points.len())
                .map(|p| {
                    let q = alg.quot.index(p, &vec![0; alg.quot.nvars]).expect("constant jet");
                    alg.index(g.f(i), q)
                })
                .collect()
        })
        .collect();
    for i in 0..rank {
        let mut v: SparseVec = vec![(0, F::one())];
        let mut drop = vec![0i64; rank];
        for _ in 0..=lambda.coords[i] {
            let mut acc = Accumulator::new();
            for &x in &constants[i] {
                acc.add_scaled(&pbw.act_vec(x, &v), &F::one());
            }
            v = acc.finish();
            drop[i] += 1;
        }
        push(&mut classes, &mut queue, drop, v);
    }
    let element_drops: Vec<Vec<i64>> =
        (0..alg.dim).map(|x| g.basis_root(alg.split(x).0).iter().map(|c| -c).collect()).collect();
    while let Some((drop, v)) = queue.pop() {
        for x in 0..alg.dim {
            let image = pbw.act_vec(x, &v);
            let d: Vec<i64> = drop.iter().zip(&element_drops[x]).map(|(a, b)| a + b).collect();
            push(&mut classes, &mut queue, d, image);
        }
    }

    let pivots: std::collections::HashSet<usize> = classes.values().flat_map(|s| s.pivots()).collect();
    let keep: Vec<usize> = (0..total).filter(|m| pbw.heights[*m] <= depth && !pivots.contains(m)).collect();
    if keep.len() > opts.max_dim {
        return Err(EmaError::Budget { size: keep.len(), limit: opts.max_dim });
    }
    if keep.first() != Some(&0) {
        return Err(fail("the relations kill the highest weight vector"));
    }
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let dim = keep.len();
    let mut actions = Vec::with_capacity(alg.dim);
    for x in 0..alg.dim {
        let mut mat = Matrix::zeros(dim, dim);
        for (k, &m) in keep.iter().enumerate() {
            let image = pbw.act(x, m);
            if image.is_empty() {
                continue;
            }
            let d: Vec<i64> = pbw.drops[m].iter().zip(&element_drops[x]).map(|(a, b)| a + b).collect();
            let reduced = match classes.get(&d) {
                Some(s) => s.reduce(&image),
                None => image,
            };
            for (j, c) in reduced {
                let row = pos.get(&j).ok_or_else(|| fail("the action leaves the quotient basis"))?;
                mat[(*row, k)] = c;
            }
        }
        actions.push(mat);
    }
    let module = FiniteModule::new(AlgebraRef::Truncated(alg.clone()), dim, actions)?;
    let weights: Vec<Weight> = keep.iter().map(|&m| lambda.sub(&datum.root_to_weight(&pbw.drops[m]))).collect();
    let words: Vec<Vec<usize>> =
        keep.iter().map(|&m| pbw.monomials[m].iter().map(|&y| pbw.generators[y].element).collect()).collect();
    let labels: Vec<String> = keep.iter().map(|&m| pbw.label(m)).collect();
    let mut cyclic = vec![F::zero(); dim];
    cyclic[0] = F::one();
    let mut out = WeylModule {
        psi: psi.clone(),
        module,
        cyclic,
        words,
        labels,
        weights,
        exponent: n,
        pbw_size: total,
        certification: Vec::new(),
    };
    certify(&mut out, &lambda)?;
    if opts.certify_buffer {
        let bigger = WeylOptions { extra_buffer: opts.extra_buffer + 1, certify_buffer: false, ..opts.clone() };
        if weyl_module(setting, psi, &bigger)?.dim() != out.dim() {
            return Err(fail("dimension changes when the buffer grows"));
        }
        out.certification.push("buffer stability".into());
    }
    Ok(out)
}

fn certify(w: &mut WeylModule, lambda: &Weight) -> Result<()> {
    let m = &w.module;
    let AlgebraRef::Truncated(alg) = &m.algebra else { unreachable!("Weyl modules live over truncations") };
    let g = &alg.g;
    let datum = &g.datum;
    if !m.check_representation() {
        return Err(fail("action is not a representation"));
    }
    w.certification.push("representation".into());
    let v = &w.cyclic;
    for x in 0..alg.dim {
        let (a, q) = alg.split(x);
        let image = m.actions[x].mul_vec(v);
        match g.kind(a) {
            BasisKind::E(_) => {
                if image.iter().any(|c| !c.is_zero()) {
                    return Err(fail("n⁺ ⊗ A does not kill w"));
                }
            }
            BasisKind::H(i) => {
                let (p, _) = alg.quot.locate(q);
                let want = if alg.quot.degree(q) == 0 {
                    w.psi.get(&alg.quot.points[p]).map(|wt| wt.coords[i]).unwrap_or(0)
                } else {
                    0
                };
                let expected: Vec<F> = v.iter().map(|c| c * &F::int(want)).collect();
                if image != expected {
                    return Err(fail("h ⊗ A does not act on w by the character of ψ"));
                }
            }
            BasisKind::F(_) => {}
        }
    }
    w.certification.push("n⁺ ⊗ A kills w".into());
    w.certification.push("h ⊗ A acts by ψ".into());
    let zero = vec![0u32; alg.quot.nvars];
    for i in 0..g.rank() {
        let mut op = Matrix::zeros(m.dim, m.dim);
        for p in 0..alg.quot.points.len() {
            let q = alg.quot.index(p, &zero).expect("constant jet");
            op = op.add(&m.actions[alg.index(g.f(i), q)]);
        }
        let mut u = v.clone();
        for _ in 0..=lambda.coords[i] {
            u = op.mul_vec(&u);
        }
        if u.iter().any(|c| !c.is_zero()) {
            return Err(fail("(f_i ⊗ 1)^(λ(h_i)+1) does not kill w"));
        }
    }
    w.certification.push("(f_i ⊗ 1)^(λ(h_i)+1) w = 0".into());
    let low = datum.w0(lambda);
    if !w.weights.iter().all(|mu| datum.dominance_leq(mu, lambda) && datum.dominance_leq(&low, mu)) {
        return Err(fail("weights leave the interval [w₀λ, λ]"));
    }
    w.certification.push("weights in [w₀λ, λ]".into());
    Ok(())
}

/// Dimensions computed with the default settings, a larger buffer, a larger
/// N and the reversed PBW order.
pub fn dimension_certificate(setting: &EmaSetting, psi: &PsiFunction, max_dim: usize) -> Result<[usize; 4]> {
    let base = WeylOptions { max_dim, certify_buffer: false, ..Default::default() };
    let runs = [
        base.clone(),
        WeylOptions { extra_buffer: 1, ..base.clone() },
        WeylOptions { extra_n: 1, ..base.clone() },
        WeylOptions { reverse_order: true, ..base },
    ];
    let mut out = [0; 4];
    for (slot, opts) in out.iter_mut().zip(&runs) {
        *slot = weyl_module(setting, psi, opts)?.dim();
    }
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coordalg::Point;
    use crate::ema::tests::sl2_z2;
    use crate::liealg::{ChevalleyAlgebra, GammaGroup, GeneratorSpec};
    use crate::repmod::{evaluation_module, is_isomorphic, multiplicities, psi_gamma, untwist};
    use crate::rootdata::DiagramSymmetry;

    pub(crate) fn untwisted(n: usize) -> EmaSetting {
        let g = Arc::new(ChevalleyAlgebra::build_sl(n + 1).unwrap());
        let gamma = Arc::new(GammaGroup::trivial(&g, 1));
        EmaSetting::new(g, gamma, 1)
    }

    pub(crate) fn sl3_flip() -> EmaSetting {
        let g = Arc::new(ChevalleyAlgebra::build_sl(3).unwrap());
        let spec = GeneratorSpec { order: 2, scaling: vec![1], tau: DiagramSymmetry::Flip, torus: vec![0, 0] };
        let gamma = Arc::new(GammaGroup::build(&g, 4, 1, &[spec]).unwrap());
        EmaSetting::new(g, gamma, 1)
    }

    fn p(x: i64) -> Point {
        Point::from_ints(&[x])
    }

    fn single(x: i64, w: &[i64]) -> PsiFunction {
        PsiFunction::new([(p(x), Weight::new(w.to_vec()))], false)
    }

    #[test]
    fn sl2_single_point_dimensions() {
        let s = untwisted(1);
        for (k, d) in [(1, 2), (2, 4), (3, 8)] {
            let w = weyl_module(&s, &single(1, &[k]), &WeylOptions::default()).unwrap();
            assert_eq!(w.dim(), d, "λ = {k}ω");
            assert_eq!(dimension_certificate(&s, &single(1, &[k]), DEFAULT_MAX_DIM).unwrap(), [d; 4]);
        }
    }

    #[test]
    fn character_of_2omega() {
        let s = untwisted(1);
        let w = weyl_module(&s, &single(1, &[2]), &WeylOptions::default()).unwrap();
        let ch = w.character();
        assert_eq!(ch[&Weight::new(vec![2])], 1);
        assert_eq!(ch[&Weight::new(vec![0])], 2);
        assert_eq!(ch[&Weight::new(vec![-2])], 1);
        let table = multiplicities(&s, &w.module).unwrap();
        assert_eq!(table.len(), 2);
        assert_eq!(table[&single(1, &[2])], 1);
        assert_eq!(table[&PsiFunction::zero(false)], 1);
        assert!(w.certification.iter().any(|c| c == "buffer stability"));
    }

    #[test]
    fn minuscule_is_irreducible() {
        let s = untwisted(2);
        let psi = single(1, &[1, 0]);
        let w = weyl_module(&s, &psi, &WeylOptions::default()).unwrap();
        assert_eq!(w.dim(), 3);
        let h = head(&s, &w.module).unwrap();
        assert_eq!(h.dim, 3);
    }

    #[test]
    fn budget_is_enforced() {
        let s = untwisted(1);
        let err = weyl_module(&s, &single(1, &[3]), &WeylOptions::with_max_dim(10)).unwrap_err();
        assert!(matches!(err, EmaError::Budget { limit: 10, .. }));
    }

    #[test]
    fn head_of_weyl_is_evaluation() {
        let s = untwisted(1);
        let psi = single(1, &[2]);
        let w = weyl_module(&s, &psi, &WeylOptions::default()).unwrap();
        let h = head(&s, &w.module).unwrap();
        assert_eq!(h.dim, 3);
        let v = evaluation_module(&s, &psi, &h.algebra).unwrap();
        assert!(is_isomorphic(&h, &v).unwrap());
        let q = hw_quotient_check(&s, &h, &WeylOptions::default()).unwrap();
        assert_eq!(q.psi, psi);
        assert_eq!(q.rank, 3);
    }

    #[test]
    fn untwisted_tensor() {
        let s = untwisted(1);
        let r = tensor_check(&s, &single(1, &[1]), &single(2, &[1]), &WeylOptions::default()).unwrap();
        assert_eq!(r, TensorReport { dim_sum: 4, dim_left: 2, dim_right: 2, isomorphic: true });
        let r = tensor_check(&s, &single(1, &[2]), &PsiFunction::zero(false), &WeylOptions::default()).unwrap();
        assert!(r.isomorphic);
        assert!(tensor_check(&s, &single(1, &[1]), &single(1, &[2]), &WeylOptions::default()).is_err());
    }

    #[test]
    fn twisted_sl2() {
        let s = sl2_z2();
        let psi = psi_gamma(&single(1, &[2]), &s.gamma).unwrap();
        let opts = WeylOptions::default();
        let a = twisted_weyl(&s, &psi, &[p(1)], &opts).unwrap();
        let b = twisted_weyl(&s, &psi, &[p(-1)], &opts).unwrap();
        assert_eq!((a.module.dim, b.module.dim), (4, 4));
        assert!(check_choice_independence(&s, &psi, &opts).unwrap());
        let u = untwist(&s, &a.module, &[p(1)]).unwrap();
        assert_eq!(u.actions, a.untwisted.module.actions);
        for g in 0..s.gamma.order() {
            assert!(check_gamma_twist(&s, &psi, &[p(1)], g, &opts).unwrap());
        }
        let table = multiplicities(&s, &a.module).unwrap();
        assert!(crate::repmod::is_maximal_weight(&table, &psi, &s.g.datum, &s.gamma));
    }

    #[test]
    fn twisted_sl2_tensor() {
        let s = sl2_z2();
        let a = psi_gamma(&single(1, &[2]), &s.gamma).unwrap();
        let b = psi_gamma(&single(2, &[1]), &s.gamma).unwrap();
        let r = tensor_check(&s, &a, &b, &WeylOptions::default()).unwrap();
        assert_eq!((r.dim_sum, r.dim_left, r.dim_right, r.isomorphic), (8, 4, 2, true));
    }

    #[test]
    fn sl3_flip_twist() {
        let s = sl3_flip();
        let psi = psi_gamma(&single(1, &[1, 0]), &s.gamma).unwrap();
        let opts = WeylOptions::default();
        let t = twisted_weyl(&s, &psi, &[p(1)], &opts).unwrap();
        assert_eq!(t.module.dim, 3);
        let flip = (0..s.gamma.order()).find(|&g| p(1).act(&s.gamma, g) == p(-1)).unwrap();
        assert!(check_gamma_twist(&s, &psi, &[p(1)], flip, &opts).unwrap());
        assert!(check_choice_independence(&s, &psi, &opts).unwrap());
    }
}
