//! Finite groups given by full multiplication tables.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use super::GaloisError;

/// Largest group the exhaustive checks are run on.
pub const MAX_ORDER: usize = 1000;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    /// For each element, a word in `generators` (indices into it) evaluating to it.
    words: Vec<Vec<usize>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a multiplication table: closure, identity, inverses, associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GaloisError> {
        let n = table.len();
        if n == 0 {
            return Err(GaloisError::NotAGroup("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(GaloisError::TooLarge(n));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GaloisError::NotAGroup(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(x) = row.iter().find(|&&x| x >= n) {
                return Err(GaloisError::NotAGroup(format!("entry {x} in row {i} out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GaloisError::NotAGroup("no identity element".into()))?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| GaloisError::NotAGroup(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GaloisError::NonAssociative(a, b, c));
                    }
                }
            }
        }
        let mut g = FiniteGroup { table, identity, inverses, generators: Vec::new(), words: Vec::new() };
        let gens = g.greedy_generators();
        g.set_generators(gens);
        Ok(g)
    }

    /// Closure of permutation generators (images of `0..d`); element 0 is the identity
    /// and elements are numbered in breadth-first order.  Composition is `(gh)(x) = g(h(x))`.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self, GaloisError> {
        let d = gens.first().map_or(0, |g| g.len());
        for g in gens {
            let mut seen = vec![false; d];
            if g.len() != d || g.iter().any(|&x| x >= d || std::mem::replace(&mut seen[x], true)) {
                return Err(GaloisError::NotAGroup(format!("{g:?} is not a permutation of 0..{d}")));
            }
        }
        let id: Vec<usize> = (0..d).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let prod: Vec<usize> = (0..d).map(|x| elems[i][g[x]]).collect();
                if !index.contains_key(&prod) {
                    if elems.len() >= MAX_ORDER {
                        return Err(GaloisError::TooLarge(elems.len() + 1));
                    }
                    index.insert(prod.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(prod);
                }
            }
        }
        let n = elems.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| index[&(0..d).map(|x| elems[a][elems[b][x]]).collect::<Vec<_>>()]).collect())
            .collect();
        let mut g = FiniteGroup::from_table(table)?;
        let gen_idx = gens.iter().map(|p| index[p]).collect();
        g.set_generators(gen_idx);
        Ok(g)
    }

    /// Cyclic group of order n, element i = generator^i.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic table is a group")
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let (n, m) = (self.order(), other.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("direct product of groups is a group")
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        while span.len() < self.order() {
            // add the element of largest order outside the current span
            let next = (0..self.order())
                .filter(|x| span.binary_search(x).is_err())
                .max_by_key(|&x| (self.element_order(x), std::cmp::Reverse(x)))
                .unwrap();
            gens.push(next);
            span = self.generated(&gens);
        }
        gens
    }

    pub(crate) fn set_generators(&mut self, gens: Vec<usize>) {
        let n = self.order();
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[self.identity] = Some(Vec::new());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(gi);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        self.words = words.into_iter().map(|w| w.expect("generators span the group")).collect();
        self.generators = gens;
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Word in [`Self::generators`] for `a`.
    pub fn word(&self, a: usize) -> &[usize] {
        &self.words[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, a| acc.lcm(&self.element_order(a)))
    }

    /// `g h g^-1`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// Classes as sorted element lists, ordered by smallest element
    /// (so the identity class `{identity}` comes first when the identity is 0).
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.conj(g, a)).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = vec![self.identity];
        let mut queue = VecDeque::from([self.identity]);
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    set.push(y);
                    queue.push_back(y);
                }
            }
        }
        set.sort_unstable();
        set
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        !set.is_empty()
            && set.iter().all(|&x| x < self.order())
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    /// Checks and canonicalises (sorts, dedups) a subgroup.
    pub fn subgroup(&self, set: &[usize]) -> Result<Vec<usize>, GaloisError> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if self.is_subgroup(&s) {
            Ok(s)
        } else {
            Err(GaloisError::NotSubgroup(s))
        }
    }

    pub fn normalizes(&self, g: usize, sub: &[usize]) -> bool {
        sub.iter().all(|&h| sub.binary_search(&self.conj(g, h)).is_ok())
    }

    /// Derived subgroup of a subgroup.
    pub fn derived(&self, sub: &[usize]) -> Vec<usize> {
        let comms: Vec<usize> = sub.iter().flat_map(|&a| sub.iter().map(move |&b| (a, b))).map(|(a, b)| self.commutator(a, b)).collect();
        self.generated(&comms)
    }

    /// Whether the derived series of `sub` reaches a subgroup of `floor`.
    pub fn solvable_modulo(&self, sub: &[usize], floor: &[usize]) -> bool {
        let mut cur = sub.to_vec();
        loop {
            if cur.iter().all(|x| floor.binary_search(x).is_ok()) {
                return true;
            }
            let next = self.derived(&cur);
            if next.len() == cur.len() {
                return false;
            }
            cur = next;
        }
    }

    /// The subgroup as a group in its own right, with the embedding into `self`.
    pub fn induced(&self, sub: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GaloisError> {
        let sub = self.subgroup(sub)?;
        let pos: HashMap<usize, usize> = sub.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let table = sub.iter().map(|&a| sub.iter().map(|&b| pos[&self.mul(a, b)]).collect()).collect();
        Ok((FiniteGroup::from_table(table)?, sub))
    }
}
