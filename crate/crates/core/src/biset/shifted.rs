//! Products and composition in the functor shifted by a group `G`.
//!
//! An element of `A_G(X_1 × ... × X_r) = A(X_1 × ... × X_r × G)` is a class function
//! on a flat product whose last factor is the shift `G`.

use std::sync::Arc;

use super::Biset;
use crate::arith::{int, rat, Cyclo};
use crate::classfn::ClassFunction;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, ProductGroup};

/// Which evaluation path to use for shifted operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Route {
    /// Pointwise kernel formulas.
    #[default]
    Kernel,
    /// The character action formula applied to the defining products of explicit bisets.
    ExplicitBiset,
}

/// A class function on a product `X_1 × ... × X_r × G`, keeping the factorization.
#[derive(Clone, Debug)]
pub struct ShiftedFn {
    shape: Arc<ProductGroup>,
    func: ClassFunction,
}

impl PartialEq for ShiftedFn {
    fn eq(&self, other: &Self) -> bool {
        self.shape.num_factors() == other.shape.num_factors()
            && self.shape.factors().iter().zip(other.shape.factors()).all(|(a, b)| a.same_table(b))
            && self.func == other.func
    }
}

impl ShiftedFn {
    pub fn new(shape: Arc<ProductGroup>, func: ClassFunction) -> Result<Self> {
        if shape.num_factors() == 0 {
            return Err(Error::GroupMismatch("a shifted shape needs at least the shift factor".into()));
        }
        if !func.group().same_table(shape.group()) {
            return Err(Error::GroupMismatch(format!(
                "class function on {} does not live on {}",
                func.group().name(),
                shape.group().name()
            )));
        }
        Ok(ShiftedFn { shape, func })
    }

    /// Evaluates `f` on the factor components of each class representative.
    pub fn from_fn(factors: &[Arc<FiniteGroup>], mut f: impl FnMut(&[usize]) -> Cyclo) -> Self {
        let shape = ProductGroup::shared(factors);
        let g = shape.group().clone();
        let func = ClassFunction::from_fn(&g, |c| f(&shape.split(g.class_rep(c))));
        ShiftedFn { shape, func }
    }

    pub fn shape(&self) -> &Arc<ProductGroup> {
        &self.shape
    }

    pub fn func(&self) -> &ClassFunction {
        &self.func
    }

    pub fn shift(&self) -> &Arc<FiniteGroup> {
        self.shape.factor(self.shape.num_factors() - 1)
    }

    /// Value at the element with the given factor components.
    pub fn at(&self, parts: &[usize]) -> &Cyclo {
        self.func.at(self.shape.join(parts))
    }

    fn check_shift(&self, other: &ShiftedFn) -> Result<()> {
        if self.shift().same_table(other.shift()) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!(
                "shift groups {} and {} differ",
                self.shift().name(),
                other.shift().name()
            )))
        }
    }
}

/// `a ×^d b` for `a` on `K × G` and `b` on `H × G`; the result lives on `K × H × G`
/// (with `K` and `H` possibly flat products themselves).
pub fn shifted_product(a: &ShiftedFn, b: &ShiftedFn) -> Result<ShiftedFn> {
    shifted_product_via(Route::Kernel, a, b)
}

pub fn shifted_product_via(route: Route, a: &ShiftedFn, b: &ShiftedFn) -> Result<ShiftedFn> {
    a.check_shift(b)?;
    let p = a.shape.num_factors() - 1;
    let q = b.shape.num_factors() - 1;
    let g = a.shift().clone();
    let mut factors: Vec<Arc<FiniteGroup>> = a.shape.factors()[..p].to_vec();
    factors.extend_from_slice(&b.shape.factors()[..q]);
    factors.push(g.clone());
    let split_args = |parts: &[usize], gk: usize, gh: usize| {
        let mut pa = parts[..p].to_vec();
        pa.push(gk);
        let mut pb = parts[p..p + q].to_vec();
        pb.push(gh);
        (pa, pb)
    };
    match route {
        Route::Kernel => Ok(ShiftedFn::from_fn(&factors, |parts| {
            let gg = parts[p + q];
            let (pa, pb) = split_args(parts, gg, gg);
            a.at(&pa) * b.at(&pb)
        })),
        Route::ExplicitBiset => {
            // Id(K_1) × ... × Id(H_q) × _G(G×G)_{G×G}, restricting along the diagonal
            let mut bisets: Vec<Biset> = factors[..p + q].iter().map(Biset::identity).collect();
            let (gg, diag) = diagonal_restriction(&g);
            bisets.push(diag);
            Ok(ShiftedFn::from_fn(&factors, |parts| {
                act_factored(&bisets, parts, |right| {
                    let (pa, pb) = split_args(right, gg.component(right[p + q], 0), gg.component(right[p + q], 1));
                    a.at(&pa) * b.at(&pb)
                })
            }))
        }
    }
}

/// `β ∘ α` for `β` on `L × K × G` and `α` on `K × H × G`; the result lives on `L × H × G`.
pub fn shifted_compose(beta: &ShiftedFn, alpha: &ShiftedFn) -> Result<ShiftedFn> {
    shifted_compose_via(Route::Kernel, beta, alpha)
}

pub fn shifted_compose_via(route: Route, beta: &ShiftedFn, alpha: &ShiftedFn) -> Result<ShiftedFn> {
    if beta.shape.num_factors() != 3 || alpha.shape.num_factors() != 3 {
        return Err(Error::GroupMismatch(
            "composition needs elements on three-factor shapes (target, source, shift)".into(),
        ));
    }
    beta.check_shift(alpha)?;
    let k = beta.shape.factor(1).clone();
    if !k.same_table(alpha.shape.factor(0)) {
        return Err(Error::GroupMismatch(format!(
            "middle groups {} and {} differ",
            k.name(),
            alpha.shape.factor(0).name()
        )));
    }
    let l = beta.shape.factor(0).clone();
    let h = alpha.shape.factor(1).clone();
    let g = beta.shift().clone();
    let factors = [l.clone(), h.clone(), g.clone()];
    match route {
        Route::Kernel => {
            // (β∘α)(l,h,g) = (1/|K|) Σ_k β(l,k,g) α(k,h,g), summed class by class over K
            let inv_k = rat(1, k.order() as i64);
            Ok(ShiftedFn::from_fn(&factors, |parts| {
                let (ll, hh, gg) = (parts[0], parts[1], parts[2]);
                let s: Cyclo = (0..k.num_classes())
                    .map(|c| {
                        let kk = k.class_rep(c);
                        (beta.at(&[ll, kk, gg]) * alpha.at(&[kk, hh, gg])).scale(&int(k.class_size(c) as i64))
                    })
                    .sum();
                s.scale(&inv_k)
            }))
        }
        Route::ExplicitBiset => {
            let back = backward_biset(&k)?;
            let kk = ProductGroup::shared(&[k.clone(), k.clone()]);
            let (gg, diag) = diagonal_restriction(&g);
            let bisets = [Biset::identity(&l), back, Biset::identity(&h), diag];
            Ok(ShiftedFn::from_fn(&factors, |parts| {
                let left = [parts[0], 0, parts[1], parts[2]];
                act_factored(&bisets, &left, |right| {
                    let (k1, k2) = (kk.component(right[1], 0), kk.component(right[1], 1));
                    let (g1, g2) = (gg.component(right[3], 0), gg.component(right[3], 1));
                    beta.at(&[right[0], k1, g1]) * alpha.at(&[k2, right[2], g2])
                })
            }))
        }
    }
}

/// The `(G, G×G)`-biset `G×G` obtained by restricting along the diagonal.
fn diagonal_restriction(g: &Arc<FiniteGroup>) -> (Arc<ProductGroup>, Biset) {
    let gg = ProductGroup::shared(&[g.clone(), g.clone()]);
    let delta = GroupHom::new(g, gg.group(), (0..g.order()).map(|x| gg.join(&[x, x])).collect())
        .expect("the diagonal is a homomorphism");
    (gg.clone(), Biset::restriction_along(&delta))
}

/// `←K`: the opposite of the `(K×K, 1)`-biset `K` with `(k_1, k_2)·x = k_1 x k_2⁻¹`.
fn backward_biset(k: &Arc<FiniteGroup>) -> Result<Biset> {
    let kk = ProductGroup::shared(&[k.clone(), k.clone()]);
    let n = k.order();
    let left_action = (0..kk.group().order() * n)
        .map(|i| {
            let (pair, x) = (i / n, i % n);
            let (k1, k2) = (kk.component(pair, 0), kk.component(pair, 1));
            k.mul(k.mul(k1, x), k.inv(k2)) as u32
        })
        .collect();
    let trivial = Arc::new(FiniteGroup::trivial());
    let forward = Biset::new(kk.group(), &trivial, n, left_action, (0..n as u32).collect())?;
    Ok(forward.opposite())
}

/// The character action formula for a product of bisets `X_1 × ... × X_r`, evaluated at the left
/// element with components `left`, where the class function on the right
/// group is given through `f` on right components.
///
/// Points and solutions `u·g = a·u` decompose factor by factor, so the sum runs
/// over tuples of per-factor solutions weighted by how many points admit them.
pub fn act_factored(factors: &[Biset], left: &[usize], mut f: impl FnMut(&[usize]) -> Cyclo) -> Cyclo {
    assert_eq!(factors.len(), left.len());
    let mut supports: Vec<Vec<(usize, u64)>> = Vec::with_capacity(factors.len());
    let mut denom: u64 = 1;
    for (x, &a) in factors.iter().zip(left) {
        let m = x.right().order();
        denom *= m as u64;
        let mut counts = vec![0u64; m];
        for u in 0..x.size() {
            let v = x.lact(a, u);
            for g in 0..m {
                if x.ract(u, g) == v {
                    counts[g] += 1;
                }
            }
        }
        let support: Vec<(usize, u64)> = counts.into_iter().enumerate().filter(|&(_, c)| c > 0).collect();
        if support.is_empty() {
            return Cyclo::zero();
        }
        supports.push(support);
    }
    let mut idx = vec![0usize; supports.len()];
    let mut right = vec![0usize; supports.len()];
    let mut total = Cyclo::zero();
    loop {
        let mut weight = 1u64;
        for (i, s) in supports.iter().enumerate() {
            right[i] = s[idx[i]].0;
            weight *= s[idx[i]].1;
        }
        let v = f(&right);
        if !v.is_zero() {
            total += &v.scale(&int(weight as i64));
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return total.scale(&rat(1, denom as i64));
            }
            idx[i] += 1;
            if idx[i] < supports[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}
