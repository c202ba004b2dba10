//! The ideals of the shifted functor `kR_{F,G}`, described by subsets of `Ω(k, F, G)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::linalg::RowEchelon;
use crate::biset::{Biset, BisetAction};
use crate::classfn::ClassFunction;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, ProductGroup};
use crate::rep::{idempotent_orbit, orbit_k_basis, orbit_space, FieldSpec, KClassFunction, OrbitSpace};

/// The data `(k, F, G)` of a shifted functor `kR_{F,G}`.
#[derive(Clone, Debug)]
pub struct Context {
    k: FieldSpec,
    f: FieldSpec,
    g: Arc<FiniteGroup>,
    omega: OrbitSpace,
}

/// `kR_{F,G}(H) = kR_F(H×G)` together with the second projection on orbits.
#[derive(Clone, Debug)]
pub struct Level {
    h: Arc<FiniteGroup>,
    shape: Arc<ProductGroup>,
    omega: OrbitSpace,
    pi2: Vec<usize>,
}

impl Level {
    pub fn h(&self) -> &Arc<FiniteGroup> {
        &self.h
    }

    /// The product `H × G`.
    pub fn shape(&self) -> &Arc<ProductGroup> {
        &self.shape
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.shape.group()
    }

    /// `Ω(k, F, H×G)`.
    pub fn omega(&self) -> &OrbitSpace {
        &self.omega
    }

    /// `O(π_2(D))` as an index into `Ω(k, F, G)`, for an orbit `O(D)` of `H×G`.
    pub fn pi2(&self, o: usize) -> usize {
        self.pi2[o]
    }

    /// Number of F-classes in orbit `o`: the k-dimension of `kR_F(H×G) e_O`.
    pub fn orbit_dim(&self, o: usize) -> usize {
        self.omega.orbit(o).len()
    }
}

impl Context {
    pub fn new(k: FieldSpec, f: FieldSpec, g: &Arc<FiniteGroup>) -> Self {
        Context { k, f, g: g.clone(), omega: orbit_space(g, k, f) }
    }

    pub fn k(&self) -> FieldSpec {
        self.k
    }

    pub fn f(&self) -> FieldSpec {
        self.f
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    /// `Ω(k, F, G)`.
    pub fn omega(&self) -> &OrbitSpace {
        &self.omega
    }

    pub fn level(&self, h: &Arc<FiniteGroup>) -> Result<Level> {
        crate::group::check_cap(h.order() * self.g.order())?;
        let shape = ProductGroup::shared(&[h.clone(), self.g.clone()]);
        let omega = orbit_space(shape.group(), self.k, self.f);
        let mut pi2 = vec![usize::MAX; omega.len()];
        let hg = shape.group();
        for c in 0..hg.num_classes() {
            let o = omega.orbit_of_class(c);
            let image = self.omega.orbit_of_element(shape.component(hg.class_rep(c), 1));
            if pi2[o] == usize::MAX {
                pi2[o] = image;
            } else if pi2[o] != image {
                return Err(Error::InvariantViolation(format!(
                    "orbit {o} of {} does not project onto a single orbit of {}",
                    hg.name(),
                    self.g.name()
                )));
            }
        }
        Ok(Level { h: h.clone(), shape, omega, pi2 })
    }

    /// The ideal of orbits in `support`, checked against `Ω(k, F, G)`.
    pub fn ideal(&self, support: impl IntoIterator<Item = usize>) -> Result<IdealSpec> {
        let support: BTreeSet<usize> = support.into_iter().collect();
        if let Some(&o) = support.iter().find(|&&o| o >= self.omega.len()) {
            return Err(Error::OutOfRange { index: o, len: self.omega.len() });
        }
        Ok(IdealSpec { support })
    }

    pub fn whole(&self) -> IdealSpec {
        IdealSpec { support: (0..self.omega.len()).collect() }
    }

    /// Every subset of `Ω(k, F, G)`, in binary counting order.
    pub fn all_ideals(&self) -> Vec<IdealSpec> {
        let n = self.omega.len();
        (0u64..1 << n).map(|mask| IdealSpec { support: (0..n).filter(|i| mask >> i & 1 == 1).collect() }).collect()
    }

    /// The action of `α × G` for an `(K, H)`-biset `α`, from `kR_F(H×G)` to `kR_F(K×G)`.
    pub fn crossed_action(&self, alpha: &Biset) -> BisetAction {
        alpha.product(&Biset::identity(&self.g)).action()
    }
}

/// A set of orbits of `Ω(k, F, G)`; the corresponding ideal is `I_E`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IdealSpec {
    support: BTreeSet<usize>,
}

impl IdealSpec {
    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn contains(&self, o: usize) -> bool {
        self.support.contains(&o)
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn union(&self, other: &IdealSpec) -> IdealSpec {
        IdealSpec { support: self.support.union(&other.support).copied().collect() }
    }

    pub fn intersection(&self, other: &IdealSpec) -> IdealSpec {
        IdealSpec { support: self.support.intersection(&other.support).copied().collect() }
    }
}

/// `I_E(H)`: the orbits of `H×G` whose second projection lies in `E`, with their idempotents.
#[derive(Clone, Debug)]
pub struct IdealEvaluation {
    pub orbits: Vec<usize>,
    pub generators: Vec<KClassFunction>,
    /// `Σ |O|` over the qualifying orbits.
    pub k_dim: usize,
}

impl IdealEvaluation {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// A k-basis of `I_E(H)` as a subspace of `kR_F(H×G)`.
    pub fn k_basis(&self, level: &Level) -> Vec<KClassFunction> {
        self.orbits.iter().flat_map(|&o| orbit_k_basis(level.omega(), o)).collect()
    }
}

pub fn ideal_evaluation(level: &Level, spec: &IdealSpec) -> Result<IdealEvaluation> {
    let orbits: Vec<usize> = (0..level.omega.len()).filter(|&o| spec.contains(level.pi2(o))).collect();
    let generators = orbits.iter().map(|&o| idempotent_orbit(&level.omega, o)).collect::<Result<Vec<_>>>()?;
    let k_dim = orbits.iter().map(|&o| level.orbit_dim(o)).sum();
    Ok(IdealEvaluation { orbits, generators, k_dim })
}

/// Orbits `O` of `H×G` with `e_O` in the span of `evaluation`: the evaluation must be
/// spanned over the orbit idempotents it touches.
fn orbits_of_evaluation(level: &Level, evaluation: &[KClassFunction]) -> Result<Vec<usize>> {
    let hg = level.group();
    let mut span = RowEchelon::new(hg.num_classes());
    for v in evaluation {
        if !v.group().same_table(hg) {
            return Err(Error::GroupMismatch(format!(
                "evaluation element on {} at a level on {}",
                v.group().name(),
                hg.name()
            )));
        }
        span.insert(v.values());
    }
    let mut found = Vec::new();
    for o in 0..level.omega.len() {
        let classes = level.omega.orbit_classes(o);
        if !evaluation.iter().any(|v| classes.iter().any(|&c| !v.value(c).is_zero())) {
            continue;
        }
        let e = idempotent_orbit(&level.omega, o)?;
        if !span.contains(e.values()) {
            return Err(Error::NotAnIdeal(format!(
                "the evaluation meets orbit {o} of {} without containing its idempotent",
                hg.name()
            )));
        }
        found.push(o);
    }
    Ok(found)
}

/// The support `E_I` of an ideal, read from its evaluation at the trivial group.
pub fn ideal_support_from_evaluation(ctx: &Context, evaluation: &[KClassFunction]) -> Result<IdealSpec> {
    let trivial = Arc::new(FiniteGroup::trivial());
    ideal_support_at(ctx, &ctx.level(&trivial)?, evaluation)
}

/// The support `E_I` of an ideal, read from its evaluation at any `H` by deflating
/// each of its orbit idempotents along `H×G → 1×G`.
pub fn ideal_support_at(ctx: &Context, level: &Level, evaluation: &[KClassFunction]) -> Result<IdealSpec> {
    let found = orbits_of_evaluation(level, evaluation)?;
    let trivial = Arc::new(FiniteGroup::trivial());
    let bottom = ctx.level(&trivial)?;
    let shape = level.shape();
    let pi2 = GroupHom::new(
        level.group(),
        bottom.group(),
        (0..level.group().order()).map(|x| shape.component(x, 1)).collect(),
    )?;
    let def = Biset::induction_along(&pi2).action();
    let mut support = BTreeSet::new();
    for &o in &found {
        let e = idempotent_orbit(&level.omega, o)?;
        let down = e.apply(&def)?;
        let hit: BTreeSet<usize> = (0..bottom.omega.len())
            .filter(|&d| bottom.omega.orbit_classes(d).iter().any(|&c| !down.value(c).is_zero()))
            .map(|d| bottom.pi2(d))
            .collect();
        if hit.len() != 1 || !hit.contains(&level.pi2(o)) {
            return Err(Error::InvariantViolation(format!(
                "deflating orbit {o} of {} reached orbits {hit:?} instead of its projection {}",
                level.group().name(),
                level.pi2(o)
            )));
        }
        support.extend(hit);
    }
    ctx.ideal(support)
}

/// Whether `e_{O(D)} · (α × G)(e_{O(C)}) ≠ 0`, for `α` an `(K, H)`-biset, `C` an orbit
/// of `H×G` and `D` an orbit of `K×G`.
pub fn check_morphism_support(ctx: &Context, alpha: &Biset, c: usize, d: usize) -> Result<bool> {
    let from = ctx.level(alpha.right())?;
    let to = ctx.level(alpha.left())?;
    Ok(morphism_support_table(ctx, alpha, &from, &to)?[c][d])
}

/// The full table of [`check_morphism_support`] for one biset, indexed `[C][D]`.
pub fn morphism_support_table(ctx: &Context, alpha: &Biset, from: &Level, to: &Level) -> Result<Vec<Vec<bool>>> {
    let action = ctx.crossed_action(alpha);
    if !action.right().same_table(from.group()) || !action.left().same_table(to.group()) {
        return Err(Error::GroupMismatch(format!(
            "biset {} <- {} does not connect levels {} and {}",
            alpha.left().name(),
            alpha.right().name(),
            to.group().name(),
            from.group().name()
        )));
    }
    let dest: Vec<Vec<usize>> = (0..to.omega.len()).map(|d| to.omega.orbit_classes(d)).collect();
    (0..from.omega.len())
        .map(|c| {
            let image = idempotent_orbit(&from.omega, c)?.apply(&action)?;
            Ok(dest.iter().map(|cls| cls.iter().any(|&x| !image.value(x).is_zero())).collect())
        })
        .collect()
}

/// Checks that `α × G` maps `I_E(H)` into `I_E(K)` by exact membership, on a k-basis.
pub fn check_closure(ctx: &Context, spec: &IdealSpec, alpha: &Biset) -> Result<()> {
    let from = ctx.level(alpha.right())?;
    let to = ctx.level(alpha.left())?;
    let action = ctx.crossed_action(alpha);
    let source = ideal_evaluation(&from, spec)?;
    let allowed: BTreeSet<usize> =
        ideal_evaluation(&to, spec)?.orbits.iter().flat_map(|&o| to.omega.orbit_classes(o)).collect();
    for v in source.k_basis(&from) {
        let w = v.apply(&action)?;
        if let Some(c) = (0..w.values().len()).find(|c| !allowed.contains(c) && !w.value(*c).is_zero()) {
            return Err(Error::InvariantViolation(format!(
                "{} <- {} maps I_E({}) outside I_E({}) (class {c})",
                alpha.left().name(),
                alpha.right().name(),
                from.h.name(),
                to.h.name()
            )));
        }
    }
    Ok(())
}

/// One summand `I_{O(C)}(H)` of the semisimple decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    pub orbit: usize,
    pub orbit_count: usize,
    pub k_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub h: String,
    pub summands: Vec<Summand>,
    /// `|Ω(k, F, H×G)|`
    pub omega_size: usize,
    /// `dim_k kR_F(H×G)`, the number of F-classes of `H×G`.
    pub k_dim: usize,
}

/// `kR_{F,G}(H) = ⊕_{O(C)} I_{O(C)}(H)` for each `H`, with both totals checked.
pub fn semisimple_decomposition(ctx: &Context, hs: &[Arc<FiniteGroup>]) -> Result<Vec<Decomposition>> {
    hs.iter()
        .map(|h| {
            let level = ctx.level(h)?;
            let summands = (0..ctx.omega.len())
                .map(|o| {
                    let ev = ideal_evaluation(&level, &ctx.ideal([o])?)?;
                    Ok(Summand { orbit: o, orbit_count: ev.orbit_count(), k_dim: ev.k_dim })
                })
                .collect::<Result<Vec<_>>>()?;
            let omega_size = level.omega.len();
            let k_dim = level.omega.f_classes().len();
            let (count, dim): (usize, usize) =
                summands.iter().fold((0, 0), |(a, b), s| (a + s.orbit_count, b + s.k_dim));
            if count != omega_size || dim != k_dim {
                return Err(Error::InvariantViolation(format!(
                    "summands of kR_F({}) cover {count} orbits / dimension {dim}, expected {omega_size} / {k_dim}",
                    level.group().name()
                )));
            }
            Ok(Decomposition { h: h.name().to_string(), summands, omega_size, k_dim })
        })
        .collect()
}

/// The class function of an ideal evaluation, summed: the identity of `I_E(H)`.
pub fn ideal_unit(level: &Level, ev: &IdealEvaluation) -> ClassFunction {
    let classes: Vec<usize> = ev.orbits.iter().flat_map(|&o| level.omega.orbit_classes(o)).collect();
    ClassFunction::indicator(level.group(), &classes)
}
