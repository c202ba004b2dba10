use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::FiniteGroup;

/// A direct product `G_1 × ... × G_r` with mixed-radix element encoding:
/// `(a_1, ..., a_r) ↦ Σ a_i · stride_i` where the last factor has stride 1.
#[derive(Clone, Debug)]
pub struct ProductGroup {
    factors: Vec<Arc<FiniteGroup>>,
    strides: Vec<usize>,
    group: Arc<FiniteGroup>,
}

impl ProductGroup {
    pub fn new(factors: Vec<Arc<FiniteGroup>>) -> Self {
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].order();
        }
        let n: usize = factors.iter().map(|f| f.order()).product();
        let name = if factors.is_empty() {
            "cyclic:1".to_string()
        } else {
            factors.iter().map(|f| f.name().to_string()).collect::<Vec<_>>().join(" x ")
        };
        let split: Vec<Vec<usize>> =
            (0..n).map(|x| factors.iter().zip(&strides).map(|(f, s)| (x / s) % f.order()).collect()).collect();
        let mut table = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = factors
                    .iter()
                    .zip(&strides)
                    .enumerate()
                    .map(|(i, (f, s))| f.mul(split[a][i], split[b][i]) * s)
                    .sum();
            }
        }
        let group = Arc::new(FiniteGroup::from_flat_table(name, n, table));
        ProductGroup { factors, strides, group }
    }

    /// A shared instance for the given factors, built once per distinct factor list.
    pub fn shared(factors: &[Arc<FiniteGroup>]) -> Arc<ProductGroup> {
        type Cache = Mutex<HashMap<Vec<u64>, Vec<Arc<ProductGroup>>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let key: Vec<u64> = factors.iter().map(|f| f.fingerprint()).collect();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(found) = cache
            .lock()
            .unwrap()
            .get(&key)
            .and_then(|v| v.iter().find(|p| p.factors.iter().zip(factors).all(|(a, b)| a.same_table(b))).cloned())
        {
            return found;
        }
        let p = Arc::new(Self::new(factors.to_vec()));
        cache.lock().unwrap().entry(key).or_default().push(p.clone());
        p
    }

    pub fn pair(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Self {
        Self::new(vec![a.clone(), b.clone()])
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn factors(&self) -> &[Arc<FiniteGroup>] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &Arc<FiniteGroup> {
        &self.factors[i]
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    #[inline]
    pub fn component(&self, x: usize, i: usize) -> usize {
        (x / self.strides[i]) % self.factors[i].order()
    }

    pub fn split(&self, x: usize) -> Vec<usize> {
        (0..self.factors.len()).map(|i| self.component(x, i)).collect()
    }

    pub fn join(&self, parts: &[usize]) -> usize {
        debug_assert_eq!(parts.len(), self.factors.len());
        parts.iter().zip(&self.strides).map(|(p, s)| p * s).sum()
    }

    /// Factor class indices of the representative of product class `c`.
    pub fn class_tuple(&self, c: usize) -> Vec<usize> {
        let rep = self.group.class_rep(c);
        self.factors.iter().enumerate().map(|(i, f)| f.class_of(self.component(rep, i))).collect()
    }

    /// The product class containing elements whose components lie in the given factor classes.
    pub fn class_of_tuple(&self, classes: &[usize]) -> usize {
        let reps: Vec<usize> = self.factors.iter().zip(classes).map(|(f, &c)| f.class_rep(c)).collect();
        self.group.class_of(self.join(&reps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};

    #[test]
    fn c2_times_c3_is_cyclic_of_order_6() {
        let p = ProductGroup::pair(&Arc::new(cyclic(2).unwrap()), &Arc::new(cyclic(3).unwrap()));
        let g = p.group();
        assert_eq!((g.order(), g.exponent()), (6, 6));
        assert!(g.is_abelian());
        assert_eq!(p.join(&[1, 2]), 5);
        assert_eq!(p.split(5), vec![1, 2]);
    }

    #[test]
    fn classes_are_pairs_of_classes() {
        let s3 = Arc::new(symmetric(3).unwrap());
        let c4 = Arc::new(cyclic(4).unwrap());
        let p = ProductGroup::new(vec![s3.clone(), c4.clone(), s3.clone()]);
        assert_eq!(p.group().num_classes(), 3 * 4 * 3);
        for c in 0..p.group().num_classes() {
            assert_eq!(p.class_of_tuple(&p.class_tuple(c)), c);
        }
    }
}
