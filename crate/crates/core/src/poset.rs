//! Finite partially ordered sets.

use std::collections::HashMap;

use crate::error::OrderError;
use crate::subset::{Subset, MAX_CARRIER};

/// A finite poset on `{0, .., len - 1}` with display names.
///
/// The order is stored twice, as principal up-sets and principal down-sets,
/// so both `[Y)` and `(Y]` are unions of precomputed words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    up: Vec<Subset>,
    down: Vec<Subset>,
}

impl Poset {
    /// Builds the poset generated by `pairs` (each `(x, y)` meaning `x <= y`)
    /// on the declared `elements`, taking the reflexive-transitive closure.
    pub fn build<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self, OrderError> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(OrderError::DuplicateElement(name.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| OrderError::UnknownElement(s.as_ref().to_owned()))
        };
        let mut edges = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            edges.push((lookup(a)?, lookup(b)?));
        }
        Self::from_generating_pairs(names, &edges)
    }

    /// Same as [`Poset::build`] with elements already resolved to indices.
    pub fn from_generating_pairs(
        names: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, OrderError> {
        let len = names.len();
        if len > MAX_CARRIER {
            return Err(OrderError::TooLarge(len));
        }
        let mut up: Vec<Subset> = (0..len).map(Subset::singleton).collect();
        for &(a, b) in pairs {
            if a >= len || b >= len {
                return Err(OrderError::IndexOutOfRange(a.max(b)));
            }
            up[a].insert(b);
        }
        // Warshall over bit rows.
        for k in 0..len {
            let row_k = up[k];
            for row in up.iter_mut() {
                if row.contains(k) {
                    *row |= row_k;
                }
            }
        }
        for a in 0..len {
            for b in up[a].iter() {
                if b != a && up[b].contains(a) {
                    return Err(OrderError::Cycle {
                        a: names[a].clone(),
                        b: names[b].clone(),
                    });
                }
            }
        }
        Ok(Self::from_up_sets(names, up))
    }

    /// Builds a poset from a relation that is already a partial order.
    pub fn from_relation(
        names: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, OrderError> {
        let len = names.len();
        if len > MAX_CARRIER {
            return Err(OrderError::TooLarge(len));
        }
        let up: Vec<Subset> = (0..len)
            .map(|a| (0..len).filter(|&b| leq(a, b)).collect())
            .collect();
        for a in 0..len {
            if !up[a].contains(a) {
                return Err(OrderError::NotReflexive(names[a].clone()));
            }
            for b in up[a].iter() {
                if b != a && up[b].contains(a) {
                    return Err(OrderError::Cycle {
                        a: names[a].clone(),
                        b: names[b].clone(),
                    });
                }
                if !up[b].is_subset(up[a]) {
                    return Err(OrderError::NotTransitive {
                        a: names[a].clone(),
                        b: names[b].clone(),
                    });
                }
            }
        }
        Ok(Self::from_up_sets(names, up))
    }

    fn from_up_sets(names: Vec<String>, up: Vec<Subset>) -> Self {
        let len = names.len();
        let mut down = vec![Subset::EMPTY; len];
        for (a, row) in up.iter().enumerate() {
            for b in row.iter() {
                down[b].insert(a);
            }
        }
        Poset { names, up, down }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn carrier(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `[x)`.
    pub fn principal_up(&self, x: usize) -> Subset {
        self.up[x]
    }

    /// `(x]`.
    pub fn principal_down(&self, x: usize) -> Subset {
        self.down[x]
    }

    /// `[Y) = {x : y <= x for some y in Y}`.
    pub fn up_set(&self, y: Subset) -> Subset {
        y.iter().fold(Subset::EMPTY, |acc, i| acc | self.up[i])
    }

    /// `(Y] = {x : x <= y for some y in Y}`.
    pub fn down_set(&self, y: Subset) -> Subset {
        y.iter().fold(Subset::EMPTY, |acc, i| acc | self.down[i])
    }

    pub fn is_increasing(&self, y: Subset) -> bool {
        self.up_set(y) == y
    }

    pub fn is_decreasing(&self, y: Subset) -> bool {
        self.down_set(y) == y
    }

    /// `x <= z <= y` with `x, y` in `Y` forces `z` in `Y`.
    pub fn is_convex(&self, y: Subset) -> bool {
        self.up_set(y) & self.down_set(y) == y
    }

    pub fn is_chain(&self, y: Subset) -> bool {
        y.iter().all(|a| y.iter().all(|b| self.comparable(a, b)))
    }

    /// Minimal elements of `y`.
    pub fn minimal(&self, y: Subset) -> Subset {
        y.iter().filter(|&a| (self.down[a] & y).len() == 1).collect()
    }

    /// Maximal elements of `y`.
    pub fn maximal(&self, y: Subset) -> Subset {
        y.iter().filter(|&a| (self.up[a] & y).len() == 1).collect()
    }

    /// Cover pairs `(x, y)`, i.e. the Hasse diagram, in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            let strictly_above = self.up[x] - Subset::singleton(x);
            for y in strictly_above.iter() {
                let between = strictly_above & self.down[y] - Subset::singleton(y);
                if between.is_empty() {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Connected components of the comparability graph, ordered by least
    /// member.
    pub fn components(&self) -> Vec<Subset> {
        let mut seen = Subset::EMPTY;
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = Subset::singleton(start);
            loop {
                let grown = self.up_set(comp) | self.down_set(comp);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Every increasing subset, ordered by size and then by bits.
    pub fn increasing_sets(&self) -> Vec<Subset> {
        // Visit elements so that anything strictly above x is decided before x.
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.up[x].len(), x));
        let mut out = Vec::new();
        self.extend_up_sets(&order, Subset::EMPTY, &mut out);
        out.sort_by_key(|s| (s.len(), s.bits()));
        out
    }

    fn extend_up_sets(&self, rest: &[usize], acc: Subset, out: &mut Vec<Subset>) {
        let Some((&x, tail)) = rest.split_first() else {
            out.push(acc);
            return;
        };
        self.extend_up_sets(tail, acc, out);
        let above = self.up[x] - Subset::singleton(x);
        if above.is_subset(acc) {
            self.extend_up_sets(tail, acc | Subset::singleton(x), out);
        }
    }

    /// Names of the members of `y`, in index order.
    pub fn names_of(&self, y: Subset) -> Vec<String> {
        y.iter().map(|i| self.names[i].clone()).collect()
    }
}
