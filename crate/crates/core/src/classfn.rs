//! Class functions with exact cyclotomic values.

use std::sync::Arc;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::arith::{Cyclo, Rat};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A function on the conjugacy classes of a group, one value per class index.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclo>,
}

impl ClassFunction {
    pub fn new(group: &Arc<FiniteGroup>, values: Vec<Cyclo>) -> Self {
        assert_eq!(values.len(), group.num_classes(), "one value per class");
        ClassFunction { group: group.clone(), values }
    }

    pub fn from_fn(group: &Arc<FiniteGroup>, f: impl FnMut(usize) -> Cyclo) -> Self {
        Self::new(group, (0..group.num_classes()).map(f).collect())
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        Self::constant(group, Cyclo::zero())
    }

    pub fn constant(group: &Arc<FiniteGroup>, v: Cyclo) -> Self {
        Self::new(group, vec![v; group.num_classes()])
    }

    /// The indicator of a union of classes.
    pub fn indicator(group: &Arc<FiniteGroup>, classes: &[usize]) -> Self {
        let mut values = vec![Cyclo::zero(); group.num_classes()];
        for &c in classes {
            values[c] = Cyclo::one();
        }
        Self::new(group, values)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Cyclo> {
        self.values
    }

    pub fn value(&self, c: usize) -> &Cyclo {
        &self.values[c]
    }

    /// The value at a group element.
    pub fn at(&self, x: usize) -> &Cyclo {
        &self.values[self.group.class_of(x)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclo::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.group.same_table(&other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("class functions on {} and {}", self.group.name(), other.group.name())))
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Cyclo, &Cyclo) -> Cyclo) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::new(&self.group, self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, s: &Cyclo) -> Self {
        Self::new(&self.group, self.values.iter().map(|v| v * s).collect())
    }

    pub fn scale_rat(&self, s: &Rat) -> Self {
        Self::new(&self.group, self.values.iter().map(|v| v.scale(s)).collect())
    }

    /// `⟨a, b⟩ = (1/|G|) Σ_g a(g) conj(b(g))`.
    pub fn inner(&self, other: &Self) -> Result<Cyclo> {
        self.check_same(other)?;
        let g = &self.group;
        let total: Cyclo = (0..g.num_classes())
            .map(|c| (&self.values[c] * &other.values[c].conj()).scale(&crate::arith::int(g.class_size(c) as i64)))
            .sum();
        Ok(total.scale(&crate::arith::rat(1, g.order() as i64)))
    }

    /// `c ↦ σ_j(f(c))`.
    pub fn galois(&self, j: i64) -> Result<Self> {
        let values = self.values.iter().map(|v| v.galois(j)).collect::<Result<_>>()?;
        Ok(Self::new(&self.group, values))
    }

    /// `c ↦ f(c^j)`.
    pub fn power_map(&self, j: i64) -> Self {
        Self::from_fn(&self.group, |c| self.values[self.group.power_class(c, j)].clone())
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_table(&other.group) && self.values == other.values
    }
}

impl Eq for ClassFunction {}

impl Serialize for ClassFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ClassFunction", 2)?;
        s.serialize_field("group", self.group.name())?;
        s.serialize_field("values", &self.values)?;
        s.end()
    }
}
