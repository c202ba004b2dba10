//! Explicit finite bisets, their composition, and their action on class functions.

mod basic;
mod shifted;

use std::sync::Arc;

pub use basic::{basic_family, BasicBiset};
pub use shifted::{
    act_factored, shifted_compose, shifted_compose_via, shifted_product, shifted_product_via, Route, ShiftedFn,
};

use crate::arith::{int, rat, Cyclo};
use crate::classfn::ClassFunction;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, ProductGroup, Subgroup};

/// A finite `(H, G)`-biset: commuting left `H`- and right `G`-actions on `0..size`.
#[derive(Clone, Debug)]
pub struct Biset {
    left: Arc<FiniteGroup>,
    right: Arc<FiniteGroup>,
    size: usize,
    /// `left_action[h * size + x] = h·x`
    left_action: Vec<u32>,
    /// `right_action[x * |G| + g] = x·g`
    right_action: Vec<u32>,
}

impl Biset {
    /// Checks both action laws and that the actions commute.
    pub fn new(
        left: &Arc<FiniteGroup>,
        right: &Arc<FiniteGroup>,
        size: usize,
        left_action: Vec<u32>,
        right_action: Vec<u32>,
    ) -> Result<Self> {
        let b = Biset { left: left.clone(), right: right.clone(), size, left_action, right_action };
        b.validate()?;
        Ok(b)
    }

    fn trusted(
        left: &Arc<FiniteGroup>,
        right: &Arc<FiniteGroup>,
        size: usize,
        left_action: Vec<u32>,
        right_action: Vec<u32>,
    ) -> Self {
        let b = Biset { left: left.clone(), right: right.clone(), size, left_action, right_action };
        debug_assert!(b.validate().is_ok(), "{:?}", b.validate());
        b
    }

    fn validate(&self) -> Result<()> {
        let (h, g, n) = (&self.left, &self.right, self.size);
        let bad = |m: &str| Err(Error::InvalidBiset(m.to_string()));
        if self.left_action.len() != h.order() * n || self.right_action.len() != g.order() * n {
            return bad("action tables have the wrong size");
        }
        if self.left_action.iter().chain(&self.right_action).any(|&x| x as usize >= n) {
            return bad("action table entry out of range");
        }
        for x in 0..n {
            if self.lact(0, x) != x || self.ract(x, 0) != x {
                return bad("identity does not act trivially");
            }
            for a in 0..h.order() {
                for b in 0..h.order() {
                    if self.lact(a, self.lact(b, x)) != self.lact(h.mul(a, b), x) {
                        return bad("left action is not an action");
                    }
                }
            }
            for a in 0..g.order() {
                for b in 0..g.order() {
                    if self.ract(self.ract(x, a), b) != self.ract(x, g.mul(a, b)) {
                        return bad("right action is not an action");
                    }
                }
            }
            for a in 0..h.order() {
                for b in 0..g.order() {
                    if self.lact(a, self.ract(x, b)) != self.ract(self.lact(a, x), b) {
                        return bad("left and right actions do not commute");
                    }
                }
            }
        }
        Ok(())
    }

    /// The transitive biset `(H×G)/D`, with `h·(a,b)D·g = (ha, g⁻¹b)D` and
    /// `D` generated by the given pairs.
    pub fn from_subgroup(h: &Arc<FiniteGroup>, g: &Arc<FiniteGroup>, gens: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(a, b)) = gens.iter().find(|&&(a, b)| a >= h.order() || b >= g.order()) {
            return Err(Error::NotAnElement(format!("({a}, {b}) in {} x {}", h.name(), g.name())));
        }
        let p = ProductGroup::pair(h, g);
        let pg = p.group();
        let flat: Vec<usize> = gens.iter().map(|&(a, b)| p.join(&[a, b])).collect();
        let d = Subgroup::generated(pg, &flat)?;
        let mut coset = vec![u32::MAX; pg.order()];
        let mut reps = Vec::new();
        for x in 0..pg.order() {
            if coset[x] == u32::MAX {
                for &y in d.elements() {
                    coset[pg.mul(x, y)] = reps.len() as u32;
                }
                reps.push(x);
            }
        }
        let n = reps.len();
        let mut left_action = vec![0; h.order() * n];
        for a in 0..h.order() {
            let la = p.join(&[a, 0]);
            for (i, &r) in reps.iter().enumerate() {
                left_action[a * n + i] = coset[pg.mul(la, r)];
            }
        }
        let mut right_action = vec![0; g.order() * n];
        for (i, &r) in reps.iter().enumerate() {
            for b in 0..g.order() {
                let rb = p.join(&[0, g.inv(b)]);
                right_action[i * g.order() + b] = coset[pg.mul(rb, r)];
            }
        }
        Ok(Self::trusted(h, g, n, left_action, right_action))
    }

    /// The `(K, G)`-biset `G` with `k·x·g = φ(k) x g`, for `φ: K → G`.
    pub fn restriction_along(phi: &GroupHom) -> Self {
        let (k, g) = (phi.source(), phi.target());
        let n = g.order();
        let left_action = (0..k.order() * n).map(|i| g.mul(phi.apply(i / n), i % n) as u32).collect();
        let right_action = (0..n * n).map(|i| g.mul(i / n, i % n) as u32).collect();
        Self::trusted(k, g, n, left_action, right_action)
    }

    /// The `(G, K)`-biset `G` with `g·x·k = g x φ(k)`, for `φ: K → G`.
    pub fn induction_along(phi: &GroupHom) -> Self {
        let (k, g) = (phi.source(), phi.target());
        let n = g.order();
        let left_action = (0..n * n).map(|i| g.mul(i / n, i % n) as u32).collect();
        let right_action = (0..n * k.order()).map(|i| g.mul(i / k.order(), phi.apply(i % k.order())) as u32).collect();
        Self::trusted(g, k, n, left_action, right_action)
    }

    /// The identity `(G, G)`-biset `G`.
    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        Self::induction_along(&GroupHom::identity(g))
    }

    pub fn left(&self) -> &Arc<FiniteGroup> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FiniteGroup> {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn lact(&self, h: usize, x: usize) -> usize {
        self.left_action[h * self.size + x] as usize
    }

    #[inline]
    pub fn ract(&self, x: usize, g: usize) -> usize {
        self.right_action[x * self.right.order() + g] as usize
    }

    pub fn left_table(&self) -> &[u32] {
        &self.left_action
    }

    /// `Y ∘ X` for `Y` a `(K, H)`-biset and `X = self` an `(H, G)`-biset: the
    /// orbit space of `Y × X` under `h·(y, x) = (y h⁻¹, h x)`.
    pub fn compose_after(y: &Biset, x: &Biset) -> Result<Biset> {
        if !y.right.same_table(&x.left) {
            return Err(Error::GroupMismatch(format!(
                "cannot compose: middle groups {} and {} differ",
                y.right.name(),
                x.left.name()
            )));
        }
        let (ny, nx) = (y.size, x.size);
        let pair = |a: usize, b: usize| a * nx + b;
        let mut uf = UnionFind::new(ny * nx);
        for h in x.left.generators() {
            for a in 0..ny {
                for b in 0..nx {
                    // (y·h, x) ~ (y, h·x)
                    uf.union(pair(y.ract(a, h), b), pair(a, x.lact(h, b)));
                }
            }
        }
        let (labels, n) = uf.labels();
        let mut rep = vec![usize::MAX; n];
        for (p, &l) in labels.iter().enumerate() {
            if rep[l] == usize::MAX {
                rep[l] = p;
            }
        }
        let (k, g) = (&y.left, &x.right);
        let mut left_action = vec![0; k.order() * n];
        for kk in 0..k.order() {
            for (o, &p) in rep.iter().enumerate() {
                left_action[kk * n + o] = labels[pair(y.lact(kk, p / nx), p % nx)] as u32;
            }
        }
        let mut right_action = vec![0; n * g.order()];
        for (o, &p) in rep.iter().enumerate() {
            for gg in 0..g.order() {
                right_action[o * g.order() + gg] = labels[pair(p / nx, x.ract(p % nx, gg))] as u32;
            }
        }
        Ok(Self::trusted(k, g, n, left_action, right_action))
    }

    /// `self ∘ x`.
    pub fn compose(&self, x: &Biset) -> Result<Biset> {
        Self::compose_after(self, x)
    }

    /// The `(H×L, G×K)`-biset `X × Y` with componentwise actions.
    pub fn product(&self, other: &Biset) -> Biset {
        let lp = ProductGroup::shared(&[self.left.clone(), other.left.clone()]);
        let rp = ProductGroup::shared(&[self.right.clone(), other.right.clone()]);
        let (nx, ny) = (self.size, other.size);
        let n = nx * ny;
        let mut left_action = vec![0; lp.group().order() * n];
        for a in 0..lp.group().order() {
            let (h, l) = (lp.component(a, 0), lp.component(a, 1));
            for p in 0..n {
                left_action[a * n + p] = (self.lact(h, p / ny) * ny + other.lact(l, p % ny)) as u32;
            }
        }
        let m = rp.group().order();
        let mut right_action = vec![0; n * m];
        for p in 0..n {
            for b in 0..m {
                let (g, k) = (rp.component(b, 0), rp.component(b, 1));
                right_action[p * m + b] = (self.ract(p / ny, g) * ny + other.ract(p % ny, k)) as u32;
            }
        }
        Self::trusted(lp.group(), rp.group(), n, left_action, right_action)
    }

    /// The `(G, H)`-biset with `g·x·h = h⁻¹ x g⁻¹`.
    pub fn opposite(&self) -> Biset {
        let (h, g, n) = (&self.left, &self.right, self.size);
        let mut left_action = vec![0; g.order() * n];
        for a in 0..g.order() {
            for x in 0..n {
                left_action[a * n + x] = self.ract(x, g.inv(a)) as u32;
            }
        }
        let mut right_action = vec![0; n * h.order()];
        for x in 0..n {
            for b in 0..h.order() {
                right_action[x * h.order() + b] = self.lact(h.inv(b), x) as u32;
            }
        }
        Self::trusted(g, h, n, left_action, right_action)
    }

    /// Orbits of the combined `H × G^op` action, as a label per point.
    pub fn orbits(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.size);
        let lg = self.left.generators();
        let rg = self.right.generators();
        for x in 0..self.size {
            for &h in &lg {
                uf.union(x, self.lact(h, x));
            }
            for &g in &rg {
                uf.union(x, self.ract(x, g));
            }
        }
        uf.labels()
    }

    /// Whether the two bisets are isomorphic, by matching transitive components
    /// and extending a base-point correspondence along generators.
    pub fn is_isomorphic(&self, other: &Biset) -> bool {
        if !self.left.same_table(&other.left) || !self.right.same_table(&other.right) || self.size != other.size {
            return false;
        }
        let (la, na) = self.orbits();
        let (lb, nb) = other.orbits();
        if na != nb {
            return false;
        }
        let members = |labels: &[usize], n: usize| {
            let mut m = vec![Vec::new(); n];
            for (x, &l) in labels.iter().enumerate() {
                m[l].push(x);
            }
            m
        };
        let (ma, mb) = (members(&la, na), members(&lb, nb));
        let lg = self.left.generators();
        let rg = self.right.generators();
        let mut used = vec![false; nb];
        'orbits: for oa in &ma {
            for (j, ob) in mb.iter().enumerate() {
                if used[j] || ob.len() != oa.len() {
                    continue;
                }
                for &y0 in ob {
                    if self.extend_map(other, oa[0], y0, &lg, &rg) {
                        used[j] = true;
                        continue 'orbits;
                    }
                }
            }
            return false;
        }
        true
    }

    fn extend_map(&self, other: &Biset, x0: usize, y0: usize, lg: &[usize], rg: &[usize]) -> bool {
        let mut map = vec![usize::MAX; self.size];
        let mut hit = vec![false; other.size];
        map[x0] = y0;
        hit[y0] = true;
        let mut stack = vec![x0];
        while let Some(x) = stack.pop() {
            let y = map[x];
            let steps = lg
                .iter()
                .map(|&h| (self.lact(h, x), other.lact(h, y)))
                .chain(rg.iter().map(|&g| (self.ract(x, g), other.ract(y, g))));
            for (x2, y2) in steps {
                if map[x2] == usize::MAX {
                    if hit[y2] {
                        return false;
                    }
                    map[x2] = y2;
                    hit[y2] = true;
                    stack.push(x2);
                } else if map[x2] != y2 {
                    return false;
                }
            }
        }
        true
    }

    /// `count[c_H][c_G] = #{(u, g) : h_c u = u g, g ∈ c_G}` for class representatives `h_c`.
    pub fn fixed_point_counts(&self) -> Vec<Vec<u64>> {
        let (h, g) = (&self.left, &self.right);
        (0..h.num_classes())
            .map(|c| {
                let r = h.class_rep(c);
                let mut counts = vec![0u64; g.num_classes()];
                for u in 0..self.size {
                    let v = self.lact(r, u);
                    for gg in 0..g.order() {
                        if self.ract(u, gg) == v {
                            counts[g.class_of(gg)] += 1;
                        }
                    }
                }
                counts
            })
            .collect()
    }

    /// The action on class functions:
    /// `(X·χ)(h) = (1/|G|) Σ_{(u, g) : h u = u g} χ(g)`.
    pub fn act(&self, chi: &ClassFunction) -> Result<ClassFunction> {
        self.action().apply(chi)
    }

    /// The linear map of [`Biset::act`], precomputed.
    pub fn action(&self) -> BisetAction {
        BisetAction { left: self.left.clone(), right: self.right.clone(), counts: self.fixed_point_counts() }
    }

    /// The permutation character of the left action.
    pub fn left_permutation_character(&self) -> ClassFunction {
        crate::chartable::perm_character(&self.left, self.size, &self.left_action)
    }
}

/// The fixed-point matrix of a biset, applied to class functions of its right group.
#[derive(Clone, Debug)]
pub struct BisetAction {
    left: Arc<FiniteGroup>,
    right: Arc<FiniteGroup>,
    counts: Vec<Vec<u64>>,
}

impl BisetAction {
    pub fn left(&self) -> &Arc<FiniteGroup> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FiniteGroup> {
        &self.right
    }

    pub fn apply_values(&self, values: &[Cyclo]) -> Vec<Cyclo> {
        let scale = rat(1, self.right.order() as i64);
        self.counts
            .iter()
            .map(|row| {
                let s: Cyclo = row
                    .iter()
                    .zip(values)
                    .filter(|(&m, v)| m != 0 && !v.is_zero())
                    .map(|(&m, v)| v.scale(&int(m as i64)))
                    .sum();
                s.scale(&scale)
            })
            .collect()
    }

    pub fn apply(&self, chi: &ClassFunction) -> Result<ClassFunction> {
        if !chi.group().same_table(&self.right) {
            return Err(Error::GroupMismatch(format!(
                "class function on {} acted on by a biset with right group {}",
                chi.group().name(),
                self.right.name()
            )));
        }
        Ok(ClassFunction::new(&self.left, self.apply_values(chi.values())))
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so labels follow first occurrence
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Component labels numbered by first occurrence, and the component count.
    pub(crate) fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut labels = vec![0; n];
        let mut count = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = count;
                count += 1;
            }
            labels[x] = id[r];
        }
        (labels, count)
    }
}
