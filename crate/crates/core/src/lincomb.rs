//! Sparse finite linear combinations over `Rat` indexed by an ordered key.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rat>,
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }

    pub fn term(k: K, c: Rat) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Rat)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in it {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, k: K, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Rat) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Rat {
        self.terms.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &Rat)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl DoubleEndedIterator<Item = &K> {
        self.terms.keys()
    }

    /// Greatest key and its coefficient.
    pub fn leading(&self) -> Option<(&K, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn map_keys<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> LinComb<K2> {
        LinComb::from_terms(self.terms.iter().map(|(k, v)| (f(k), v.clone())))
    }
}

impl<K: Ord + Clone> Default for LinComb<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a, K: Ord + Clone> Add<&'a LinComb<K>> for &'a LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, o: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl<'a, K: Ord + Clone> Sub<&'a LinComb<K>> for &'a LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, o: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), -v);
        }
        out
    }
}

impl<K: Ord + Clone> Neg for &LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        LinComb {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rat)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rat)>>(it: I) -> Self {
        Self::from_terms(it)
    }
}
