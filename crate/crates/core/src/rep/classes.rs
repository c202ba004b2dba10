use std::sync::Arc;

use serde::Serialize;

use super::{FieldSpec, GaloisSubgroup};
use crate::group::FiniteGroup;

/// The F-conjugacy classes of a group, as blocks of ordinary class indices.
///
/// Blocks are ordered by their smallest class, and the representative class
/// of a block is its smallest member.
#[derive(Clone, Debug)]
pub struct FClassPartition {
    group: Arc<FiniteGroup>,
    field: FieldSpec,
    galois: GaloisSubgroup,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl FClassPartition {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `F_n` for `n` the exponent of the group.
    pub fn galois(&self) -> &GaloisSubgroup {
        &self.galois
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn block_of(&self, class: usize) -> usize {
        self.block_of[class]
    }

    pub fn block_of_element(&self, x: usize) -> usize {
        self.block_of[self.group.class_of(x)]
    }

    /// The smallest class in block `b`.
    pub fn representative_class(&self, b: usize) -> usize {
        self.blocks[b][0]
    }

    /// The block `C^j`.
    pub fn power_block(&self, b: usize, j: i64) -> usize {
        self.block_of[self.group.power_class(self.representative_class(b), j)]
    }

    /// The elements of block `b`, sorted.
    pub fn elements(&self, b: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.blocks[b].iter().flat_map(|&c| self.group.class_elements(c)).collect();
        out.sort_unstable();
        out
    }
}

/// `c_F(G)`: classes `c` and `power_class(c, i)` fused for every `i ∈ F_n`.
pub fn f_classes(g: &Arc<FiniteGroup>, field: FieldSpec) -> FClassPartition {
    let galois = field.galois_subgroup(g.exponent());
    partition_by(g, &galois, field)
}

fn partition_by(g: &Arc<FiniteGroup>, galois: &GaloisSubgroup, field: FieldSpec) -> FClassPartition {
    let mut block_of = vec![usize::MAX; g.num_classes()];
    let mut blocks = Vec::new();
    for c in 0..g.num_classes() {
        if block_of[c] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = galois.members().iter().map(|&i| g.power_class(c, i as i64)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            block_of[m] = blocks.len();
        }
        blocks.push(members);
    }
    FClassPartition { group: g.clone(), field, galois: galois.clone(), blocks, block_of }
}

/// `Ω(k, F, G)`: orbits of `K_n` acting on the F-classes by `C ↦ C^j`.
#[derive(Clone, Debug)]
pub struct OrbitSpace {
    classes: FClassPartition,
    k_field: FieldSpec,
    k_galois: GaloisSubgroup,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
}

impl OrbitSpace {
    pub fn f_classes(&self) -> &FClassPartition {
        &self.classes
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.classes.group()
    }

    pub fn k_field(&self) -> FieldSpec {
        self.k_field
    }

    pub fn f_field(&self) -> FieldSpec {
        self.classes.field
    }

    /// `K_n` for `n` the exponent of the group.
    pub fn k_galois(&self) -> &GaloisSubgroup {
        &self.k_galois
    }

    /// Orbits as lists of F-class block indices.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbit(&self, o: usize) -> &[usize] {
        &self.orbits[o]
    }

    pub fn orbit_of_block(&self, b: usize) -> usize {
        self.orbit_of[b]
    }

    pub fn orbit_of_class(&self, c: usize) -> usize {
        self.orbit_of[self.classes.block_of(c)]
    }

    pub fn orbit_of_element(&self, x: usize) -> usize {
        self.orbit_of[self.classes.block_of_element(x)]
    }

    /// Ordinary class indices covered by orbit `o`, sorted.
    pub fn orbit_classes(&self, o: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.orbits[o].iter().flat_map(|&b| self.classes.block(b).iter().copied()).collect();
        out.sort_unstable();
        out
    }
}

impl Serialize for OrbitSpace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let g = self.group();
        let orbits: Vec<Vec<Vec<usize>>> =
            self.orbits.iter().map(|o| o.iter().map(|&b| self.classes.elements(b)).collect()).collect();
        let mut s = serializer.serialize_struct("OrbitSpace", 6)?;
        s.serialize_field("group", g.name())?;
        s.serialize_field("k", &self.k_field)?;
        s.serialize_field("F", &self.classes.field)?;
        s.serialize_field("K_n", self.k_galois.members())?;
        s.serialize_field("F_n", self.classes.galois.members())?;
        s.serialize_field("orbits", &orbits)?;
        s.end()
    }
}

pub fn orbit_space(g: &Arc<FiniteGroup>, k: FieldSpec, f: FieldSpec) -> OrbitSpace {
    let classes = f_classes(g, f);
    let k_galois = k.galois_subgroup(g.exponent());
    let mut orbit_of = vec![usize::MAX; classes.len()];
    let mut orbits = Vec::new();
    for b in 0..classes.len() {
        if orbit_of[b] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = k_galois.members().iter().map(|&j| classes.power_block(b, j as i64)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            orbit_of[m] = orbits.len();
        }
        orbits.push(members);
    }
    OrbitSpace { classes, k_field: k, k_galois, orbits, orbit_of }
}
