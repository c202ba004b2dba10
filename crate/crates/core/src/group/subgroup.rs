use std::collections::BTreeSet;
use std::sync::Arc;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A subgroup of `parent`, stored as its sorted element list.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub(crate) fn trivial_elements(g: &FiniteGroup) -> Vec<bool> {
        let mut m = vec![false; g.order()];
        m[0] = true;
        m
    }

    pub(crate) fn closure_mask(g: &FiniteGroup, gens: &[usize]) -> Vec<bool> {
        let mut mask = Self::trivial_elements(g);
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = g.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    stack.push(y);
                }
            }
        }
        mask
    }

    fn from_mask(parent: Arc<FiniteGroup>, mask: Vec<bool>) -> Self {
        let elements = (0..mask.len()).filter(|&x| mask[x]).collect();
        Subgroup { parent, elements, mask }
    }

    /// The subgroup generated by `gens`.
    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Result<Self> {
        if let Some(&g) = gens.iter().find(|&&g| g >= parent.order()) {
            return Err(Error::NotAnElement(format!("{g} (group {} has order {})", parent.name(), parent.order())));
        }
        Ok(Self::from_mask(parent.clone(), Self::closure_mask(parent, gens)))
    }

    /// A subgroup from an explicit element set, checked for closure.
    pub fn from_elements(parent: &Arc<FiniteGroup>, elements: &[usize]) -> Result<Self> {
        let n = parent.order();
        let mut mask = vec![false; n];
        for &x in elements {
            if x >= n {
                return Err(Error::NotAnElement(x.to_string()));
            }
            mask[x] = true;
        }
        let sub = Self::from_mask(parent.clone(), mask);
        if sub.elements.is_empty()
            || sub.elements.iter().any(|&a| sub.elements.iter().any(|&b| !sub.mask[parent.mul(a, b)]))
        {
            return Err(Error::NotAGroup("element set is not closed under multiplication".into()));
        }
        Ok(sub)
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Self::from_mask(parent.clone(), vec![true; parent.order()])
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Self::from_mask(parent.clone(), Self::trivial_elements(parent))
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn conjugate_by(&self, g: usize) -> Subgroup {
        let mut mask = vec![false; self.parent.order()];
        for &x in &self.elements {
            mask[self.parent.conjugate(g, x)] = true;
        }
        Self::from_mask(self.parent.clone(), mask)
    }

    pub fn is_normal(&self) -> bool {
        (0..self.parent.order()).all(|g| self.elements.iter().all(|&x| self.mask[self.parent.conjugate(g, x)]))
    }

    /// The subgroup as a group in its own right, with its inclusion into the parent.
    ///
    /// Elements are numbered by their position in the sorted element list.
    pub fn to_group(&self) -> (Arc<FiniteGroup>, GroupHom) {
        let n = self.order();
        let mut pos = vec![usize::MAX; self.parent.order()];
        for (i, &x) in self.elements.iter().enumerate() {
            pos[x] = i;
        }
        let mut table = vec![0; n * n];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                table[i * n + j] = pos[self.parent.mul(a, b)];
            }
        }
        let name = format!("subgroup of order {n} of {}", self.parent.name());
        let group = Arc::new(FiniteGroup::from_flat_table(name, n, table));
        let hom = GroupHom { source: group.clone(), target: self.parent.clone(), map: self.elements.clone() };
        (group, hom)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_table(&other.parent) && self.elements == other.elements
    }
}

/// A homomorphism given by its element table.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    /// Checks that `map` is a homomorphism `source → target`.
    pub fn new(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::NotHomomorphism(format!(
                "table has {} entries for a group of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&y) = map.iter().find(|&&y| y >= target.order()) {
            return Err(Error::NotHomomorphism(format!("image {y} is not an element of {}", target.name())));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotHomomorphism(format!("f({a}·{b}) ≠ f({a})·f({b})")));
                }
            }
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), map })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), map: (0..g.order()).collect() }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().filter(|&&y| y == 0).count() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.source.order() == self.target.order()
    }

    pub fn kernel(&self) -> Subgroup {
        let mask = self.map.iter().map(|&y| y == 0).collect();
        Subgroup::from_mask(self.source.clone(), mask)
    }

    pub fn image(&self) -> Subgroup {
        let mut mask = vec![false; self.target.order()];
        for &y in &self.map {
            mask[y] = true;
        }
        Subgroup::from_mask(self.target.clone(), mask)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if !self.target.same_table(&other.source) {
            return Err(Error::GroupMismatch("composable homomorphisms need matching groups".into()));
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    /// The inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut map = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y] = x;
        }
        Some(GroupHom { source: self.target.clone(), target: self.source.clone(), map })
    }
}

/// The quotient `G/N` on cosets ordered by smallest element, with the projection.
pub fn quotient(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom)> {
    if !n.parent().same_table(g) {
        return Err(Error::GroupMismatch("normal subgroup of a different group".into()));
    }
    if !n.is_normal() {
        return Err(Error::NotNormal { group: g.name().to_string(), order: n.order() });
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset[x] == usize::MAX {
            for &m in n.elements() {
                coset[g.mul(x, m)] = reps.len();
            }
            reps.push(x);
        }
    }
    let q = reps.len();
    let mut table = vec![0; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * q + j] = coset[g.mul(a, b)];
        }
    }
    let name = format!("{} / (order {})", g.name(), n.order());
    let quot = Arc::new(FiniteGroup::from_flat_table(name, q, table));
    let proj = GroupHom { source: g.clone(), target: quot.clone(), map: coset };
    Ok((quot, proj))
}

/// One cyclic subgroup per conjugacy class of cyclic subgroups, each generated
/// by a class representative, sorted by order and then by elements.
pub fn cyclic_subgroups_up_to_conjugacy(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for c in 0..g.num_classes() {
        let sub = Subgroup::generated(g, &[g.class_rep(c)]).expect("class representative is an element");
        if seen.contains(sub.elements()) {
            continue;
        }
        for x in 0..g.order() {
            seen.insert(sub.conjugate_by(x).elements().to_vec());
        }
        out.push(sub);
    }
    out.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    out
}

/// One subgroup per conjugacy class of subgroups, sorted by order and then by elements.
pub fn subgroups_up_to_conjugacy(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier = vec![Subgroup::trivial(g)];
    all.insert(vec![0]);
    while let Some(s) = frontier.pop() {
        for x in 0..g.order() {
            if s.contains(x) {
                continue;
            }
            let mut gens = s.elements().to_vec();
            gens.push(x);
            let t = Subgroup::generated(g, &gens).expect("elements of g");
            if all.insert(t.elements().to_vec()) {
                frontier.push(t);
            }
        }
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for elements in all {
        if seen.contains(&elements) {
            continue;
        }
        let sub = Subgroup::from_elements(g, &elements).expect("closed by construction");
        for x in 0..g.order() {
            seen.insert(sub.conjugate_by(x).elements().to_vec());
        }
        out.push(sub);
    }
    out.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    out
}
