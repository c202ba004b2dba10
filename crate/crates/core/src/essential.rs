//! Essential algebras of the shifted functor `kR_{F,G}`, as exact dimension counts.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::linalg::RowEchelon;
use crate::arith::{divisors, euler_phi, factorize, gcd, Cyclo};
use crate::biset::{shifted_compose, ShiftedFn};
use crate::classfn::ClassFunction;
use crate::error::{Error, Result};
use crate::group::{check_cap, cyclic, cyclic_subgroups_up_to_conjugacy, FiniteGroup, ProductGroup};
use crate::ideal::Context;
use crate::rep::{f_classes, FieldSpec};

/// Number of primitive characters of `(Z/nZ)^×`.
pub fn prim(n: u64) -> u64 {
    assert!(n >= 1, "prim is defined for n >= 1");
    factorize(n)
        .into_iter()
        .map(|(p, a)| {
            let q = p.pow(a);
            euler_phi(q) - euler_phi(q / p)
        })
        .product()
}

/// Which groups of order below `|H|` the ideal `I_A(H)` is generated through.
#[derive(Clone, Debug)]
pub enum SmallerGroups {
    /// `C_d` for each proper divisor `d` of `|H|`; only valid for shifts `G` that are
    /// trivial, have exponent dividing `e(H)`, or have order coprime to `|H|`.
    CyclicDivisors,
    /// Caller-supplied groups, which should cover every group of order below `|H|`
    /// up to isomorphism.
    Explicit(Vec<Arc<FiniteGroup>>),
}

#[derive(Clone, Debug, Serialize)]
pub struct EssentialReport {
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "G")]
    pub g: String,
    pub k: FieldSpec,
    #[serde(rename = "F")]
    pub f: FieldSpec,
    pub through: Vec<String>,
    pub end_dim: usize,
    pub ideal_dim: usize,
    pub essential_dim: usize,
}

/// Whether the cyclic-divisor shortcut applies to `H` with shift `G`.
pub fn shortcut_licensed(h: &FiniteGroup, g: &FiniteGroup) -> bool {
    g.order() == 1 || h.exponent() % g.exponent() == 0 || gcd(h.order() as u64, g.order() as u64) == 1
}

/// `end_dim = dim End(H) = dim kR_F(H×H×G)` and `ideal_dim`, the dimension of the span of all
/// `β ∘ α` with `α ∈ kR_F(K×H×G)`, `β ∈ kR_F(H×K×G)` for `K` among the smaller groups.
///
/// Dimensions do not depend on `k`: every hom-set is spanned by F-class indicators once
/// scalars are extended to a field containing all character values.
pub fn essential_dim(ctx: &Context, h: &Arc<FiniteGroup>, smaller: &SmallerGroups) -> Result<EssentialReport> {
    let g = ctx.g();
    let ks: Vec<Arc<FiniteGroup>> = match smaller {
        SmallerGroups::CyclicDivisors => {
            if !shortcut_licensed(h, g) {
                return Err(Error::ShortcutNotLicensed { h: h.name().to_string(), g: g.name().to_string() });
            }
            divisors(h.order() as u64)
                .into_iter()
                .filter(|&d| d < h.order() as u64)
                .map(|d| cyclic(d as usize).map(Arc::new))
                .collect::<Result<_>>()?
        }
        SmallerGroups::Explicit(list) => {
            if let Some(k) = list.iter().find(|k| k.order() >= h.order()) {
                return Err(Error::GroupMismatch(format!("{} is not smaller than {}", k.name(), h.name())));
            }
            list.clone()
        }
    };
    check_cap(h.order() * h.order() * g.order())?;
    let target = ProductGroup::shared(&[h.clone(), h.clone(), g.clone()]);
    let target_classes = f_classes(target.group(), ctx.f());
    let end_dim = target_classes.len();
    let reps: Vec<[usize; 3]> = (0..end_dim)
        .map(|b| {
            let x = target.group().class_rep(target_classes.representative_class(b));
            [target.component(x, 0), target.component(x, 1), target.component(x, 2)]
        })
        .collect();

    let mut span = RowEchelon::new(end_dim);
    for k in &ks {
        if span.rank() == end_dim {
            break;
        }
        check_cap(h.order() * k.order() * g.order())?;
        let left = ProductGroup::shared(&[h.clone(), k.clone(), g.clone()]);
        let right = ProductGroup::shared(&[k.clone(), h.clone(), g.clone()]);
        let left_classes = f_classes(left.group(), ctx.f());
        let right_classes = f_classes(right.group(), ctx.f());
        // the composite of indicators 1_B ∘ 1_A at (h1, h2, g) counts the k with
        // (h1, k, g) ∈ B and (k, h2, g) ∈ A, up to the factor 1/|K|
        let mut columns: BTreeMap<(usize, usize), Vec<i64>> = BTreeMap::new();
        for (r, &[h1, h2, z]) in reps.iter().enumerate() {
            for kk in 0..k.order() {
                let b = left_classes.block_of_element(left.join(&[h1, kk, z]));
                let a = right_classes.block_of_element(right.join(&[kk, h2, z]));
                columns.entry((b, a)).or_insert_with(|| vec![0; end_dim])[r] += 1;
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for col in columns.into_values() {
            if span.rank() == end_dim {
                break;
            }
            if seen.insert(col.clone()) {
                let v: Vec<Cyclo> = col.into_iter().map(Cyclo::from_int).collect();
                span.insert(&v);
            }
        }
    }
    let ideal_dim = span.rank();
    Ok(EssentialReport {
        h: h.name().to_string(),
        g: g.name().to_string(),
        k: ctx.k(),
        f: ctx.f(),
        through: ks.iter().map(|k| k.name().to_string()).collect(),
        end_dim,
        ideal_dim,
        essential_dim: end_dim - ideal_dim,
    })
}

/// Number of seed triplets `(H, V, C)` with `|H| = m` over `k = FullCyclotomic`, for `m`
/// coprime to `|G|`: `Prim(m)` simple modules of the essential algebra of `C_m`, for each
/// cyclic subgroup class `C` of `G`.
pub fn seed_triplet_count(g: &Arc<FiniteGroup>, m: u64) -> Result<u64> {
    if m == 0 || gcd(m, g.order() as u64) != 1 {
        return Err(Error::NotCoprime { m, order: g.order() });
    }
    Ok(prim(m) * cyclic_subgroups_up_to_conjugacy(g).len() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub full_dim: usize,
}

/// Rank of the span of `b ∘ a` for class indicators `a` on `1×H×G` and `b` on `K×1×G`,
/// against `#classes(K×H×G)`.
pub fn factor_through_trivial_rank(
    k: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
    g: &Arc<FiniteGroup>,
) -> Result<RankReport> {
    check_cap(k.order() * h.order() * g.order())?;
    let one = Arc::new(FiniteGroup::trivial());
    let indicators = |factors: [Arc<FiniteGroup>; 3]| -> Result<Vec<ShiftedFn>> {
        let shape = ProductGroup::shared(&factors);
        let grp = shape.group().clone();
        (0..grp.num_classes()).map(|c| ShiftedFn::new(shape.clone(), ClassFunction::indicator(&grp, &[c]))).collect()
    };
    let alphas = indicators([one.clone(), h.clone(), g.clone()])?;
    let betas = indicators([k.clone(), one, g.clone()])?;
    let full_dim = ProductGroup::shared(&[k.clone(), h.clone(), g.clone()]).group().num_classes();
    let mut span = RowEchelon::new(full_dim);
    for b in &betas {
        for a in &alphas {
            span.insert(shifted_compose(b, a)?.func().values());
        }
    }
    Ok(RankReport { rank: span.rank(), full_dim })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prim_of_small_orders() {
        let got: Vec<u64> = (1..=8).map(prim).collect();
        assert_eq!(got, [1, 0, 1, 1, 3, 0, 5, 2]);
    }

    #[test]
    fn shortcut_rule() {
        let c = |n| cyclic(n).unwrap();
        assert!(shortcut_licensed(&c(4), &c(2)));
        assert!(shortcut_licensed(&c(3), &c(2)));
        assert!(!shortcut_licensed(&c(2), &c(4)));
    }
}
