//! Finite groups as dense Cayley tables with derived class data.

mod named;
mod product;
mod spec;
mod subgroup;

use std::fmt;
use std::sync::Arc;

pub use named::{alternating, cyclic, dihedral, permutation_group, quaternion, symmetric, Permutation};
pub use product::ProductGroup;
pub use spec::GroupSpec;
pub use subgroup::{cyclic_subgroups_up_to_conjugacy, quotient, subgroups_up_to_conjugacy, GroupHom, Subgroup};

use crate::arith::lcm;
use crate::error::{Error, Result};

/// Default bound on group orders accepted by the builders.
pub const DEFAULT_ORDER_CAP: usize = 200;

/// The active order cap: `GREENRING_ORDER_CAP` if set and valid, else [`DEFAULT_ORDER_CAP`].
pub fn order_cap() -> usize {
    std::env::var("GREENRING_ORDER_CAP").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_ORDER_CAP)
}

pub(crate) fn check_cap(order: usize) -> Result<()> {
    let cap = order_cap();
    if order > cap {
        return Err(Error::OrderCap { order, cap });
    }
    Ok(())
}

/// A finite group on the elements `0..order`, with identity `0`.
///
/// Conjugacy classes are indexed in increasing order of their smallest element,
/// which is also the class representative.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    element_order: Vec<u32>,
    exponent: u32,
    class_of: Vec<u16>,
    classes: Vec<Vec<u16>>,
    /// `power_class[c][j]` is the class of `rep(c)^j`, for `j < exponent`.
    power_class: Vec<Vec<u16>>,
    fingerprint: u64,
}

impl FiniteGroup {
    /// Validates an explicit Cayley table: closure, a two-sided identity,
    /// inverses, and associativity (checked in full).
    ///
    /// Elements are relabelled only to move the identity to index `0`.
    pub fn from_cayley(name: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        check_cap(n)?;
        if let Some(r) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::NotAGroup(format!("row {r} does not have {n} entries")));
        }
        for (a, row) in rows.iter().enumerate() {
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n {
                    return Err(Error::NotAGroup(format!("entry {x} out of range in row {a}")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NotAGroup(format!("row {a} repeats {x}")));
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = rows[a][b];
                for c in 0..n {
                    if rows[ab][c] != rows[a][rows[b][c]] {
                        return Err(Error::NotAGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        // swap labels 0 and e
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut table = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel(a) * n + relabel(b)] = relabel(rows[a][b]);
            }
        }
        Ok(Self::from_flat_table(name.into(), n, table))
    }

    /// Builds the derived data of a table already known to be a group with identity `0`.
    pub(crate) fn from_flat_table(name: String, n: usize, table: Vec<usize>) -> Self {
        assert!(n <= u16::MAX as usize + 1, "group too large for 16-bit indices");
        debug_assert!((0..n).all(|x| table[x] == x && table[x * n] == x));
        let table: Vec<u16> = table.into_iter().map(|x| x as u16).collect();
        let mul = |a: usize, b: usize| table[a * n + b] as usize;

        let mut inverse = vec![0u16; n];
        for a in 0..n {
            let b = (0..n).find(|&b| mul(a, b) == 0).expect("inverse exists");
            inverse[a] = b as u16;
        }
        let mut element_order = vec![1u32; n];
        for a in 1..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = mul(x, a);
                k += 1;
            }
            element_order[a] = k;
        }
        let exponent = element_order.iter().fold(1u64, |acc, &o| lcm(acc, o as u64)) as u32;

        let mut class_of = vec![u16::MAX; n];
        let mut classes: Vec<Vec<u16>> = Vec::new();
        for a in 0..n {
            if class_of[a] != u16::MAX {
                continue;
            }
            let idx = classes.len() as u16;
            let mut members = Vec::new();
            for g in 0..n {
                let c = mul(mul(g, a), inverse[g] as usize);
                if class_of[c] == u16::MAX {
                    class_of[c] = idx;
                    members.push(c as u16);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }

        let power_class = classes
            .iter()
            .map(|members| {
                let r = members[0] as usize;
                let mut x = 0usize;
                (0..exponent)
                    .map(|_| {
                        let c = class_of[x];
                        x = mul(x, r);
                        c
                    })
                    .collect()
            })
            .collect();

        let fingerprint = {
            use std::hash::{Hash, Hasher};
            let mut h = std::collections::hash_map::DefaultHasher::new();
            table.hash(&mut h);
            h.finish()
        };
        FiniteGroup {
            fingerprint,
            name,
            order: n,
            table,
            inverse,
            element_order,
            exponent,
            class_of,
            classes,
            power_class,
        }
    }

    pub fn trivial() -> Self {
        cyclic(1).expect("trivial group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g a g^{-1}`.
    #[inline]
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.element_order[a] as i64;
        let k = k.rem_euclid(o);
        (0..k).fold(0, |x, _| self.mul(x, a))
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.element_order[a]
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    #[inline]
    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a] as usize
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0] as usize
    }

    pub fn class_elements(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.classes[c].iter().map(|&x| x as usize)
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.order / self.classes[c].len()
    }

    /// The class of `g^j` for `g` in class `c`; `j` is taken modulo the exponent.
    #[inline]
    pub fn power_class(&self, c: usize, j: i64) -> usize {
        let j = j.rem_euclid(self.exponent as i64) as usize;
        self.power_class[c][j] as usize
    }

    /// Class of the inverse of an element of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.power_class(c, -1)
    }

    /// Whether two groups have the same multiplication table (names are ignored).
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        std::ptr::eq(self, other)
            || (self.fingerprint == other.fingerprint && self.order == other.order && self.table == other.table)
    }

    /// A hash of the multiplication table.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Order, exponent and sorted (class size, element order) multiset: a cheap
    /// isomorphism-invariant fingerprint.
    pub fn signature(&self) -> (usize, u32, Vec<(usize, u32)>) {
        let mut sig: Vec<(usize, u32)> =
            (0..self.num_classes()).map(|c| (self.class_size(c), self.element_order(self.class_rep(c)))).collect();
        sig.sort_unstable();
        (self.order, self.exponent, sig)
    }

    /// Generators found greedily: each new generator is the smallest element
    /// outside the subgroup generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = Subgroup::trivial_elements(self);
        while let Some(x) = (0..self.order).find(|&x| !sub[x]) {
            gens.push(x);
            sub = Subgroup::closure_mask(self, &gens);
        }
        gens
    }

    /// A copy of the group as an `Arc`, for sharing between structures.
    pub fn into_arc(self) -> Arc<FiniteGroup> {
        Arc::new(self)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("classes", &self.classes.len())
            .finish()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
