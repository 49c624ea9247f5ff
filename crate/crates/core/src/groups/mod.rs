//! Finite groups realized concretely, with full multiplication tables.

mod catalog;
mod element;

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};

pub use catalog::{catalog, catalog_names, family_of, generators as catalog_generators, CatalogEntry, Family, CATALOG};
pub use element::{CycloMatrix, FfMatrix, FiniteField, GroupElement, Permutation};

pub const DEFAULT_LIMIT: usize = 10_000;

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Index of the representative (the least member index).
    pub representative: usize,
    pub members: Vec<usize>,
    pub centralizer: Vec<usize>,
    pub rep_order: usize,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A finite group with its multiplication table and class structure.
/// Element 0 is always the identity.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub name: String,
    elements: Vec<GroupElement>,
    lookup: HashMap<GroupElement, usize>,
    table: Vec<u32>,
    inverse: Vec<usize>,
    orders: Vec<usize>,
    generators: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    center: Vec<usize>,
    derived: Vec<usize>,
    exponent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureInvariants {
    pub center: Vec<usize>,
    pub derived_subgroup: Vec<usize>,
    pub exponent: usize,
    pub abelianization_order: usize,
}

impl GroupData {
    /// Breadth-first closure of the generators.
    pub fn enumerate(name: &str, generators: &[GroupElement], limit: usize) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Self::from_parts(
                name,
                vec![GroupElement::Perm(Permutation::identity(0))],
                vec![0],
                vec![],
            );
        };
        for g in generators {
            g.validate(first)?;
        }
        let id = first.identity_like();
        let ng = generators.len();
        let mut elements = vec![id.clone()];
        let mut lookup = HashMap::new();
        lookup.insert(id, 0usize);
        let mut right: Vec<u32> = Vec::new();
        let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
        let mut head = 0;
        while head < elements.len() {
            for (gi, g) in generators.iter().enumerate() {
                let y = elements[head].mul(g);
                let idx = match lookup.get(&y) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len();
                        if i >= limit {
                            return Err(Error::OrderOverflow(limit));
                        }
                        lookup.insert(y.clone(), i);
                        elements.push(y);
                        parent.push((head, gi));
                        i
                    }
                };
                right.push(idx as u32);
            }
            head += 1;
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut table[a * n..(a + 1) * n];
            row[0] = a as u32;
            for b in 1..n {
                let (p, gi) = parent[b];
                row[b] = right[row[p] as usize * ng + gi];
            }
        }
        let gens = (0..ng).map(|gi| right[gi] as usize).collect();
        let mut g = Self::from_table(name, table, gens)?;
        g.elements = elements;
        g.lookup = lookup;
        Ok(g)
    }

    fn from_parts(
        name: &str,
        elements: Vec<GroupElement>,
        table: Vec<u32>,
        generators: Vec<usize>,
    ) -> Result<Self> {
        let mut g = Self::from_table(name, table, generators)?;
        g.lookup = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        g.elements = elements;
        Ok(g)
    }

    /// Build class data from a multiplication table with identity 0.
    fn from_table(name: &str, table: Vec<u32>, generators: Vec<usize>) -> Result<Self> {
        let n = (table.len() as f64).sqrt().round() as usize;
        debug_assert_eq!(n * n, table.len());
        let mut inverse = vec![0usize; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a * n + b] == 0)
                .ok_or_else(|| Error::InvalidGenerator("no inverse".into()))?;
        }
        let mut orders = vec![1usize; n];
        for a in 1..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            orders[a] = k;
        }
        let mut g = GroupData {
            name: name.to_string(),
            elements: Vec::new(),
            lookup: HashMap::new(),
            table,
            inverse,
            orders,
            generators,
            classes: Vec::new(),
            class_of: vec![usize::MAX; n],
            center: Vec::new(),
            derived: Vec::new(),
            exponent: 1,
        };
        g.compute_classes();
        g.exponent = g.orders.iter().fold(1, |acc, &o| acc.lcm(&o));
        g.center = (0..n)
            .filter(|&x| g.class_of[x] != usize::MAX && g.classes[g.class_of[x]].size() == 1)
            .collect();
        g.derived = g.compute_derived();
        Ok(g)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut raw: Vec<Vec<usize>> = Vec::new();
        let mut seen = vec![false; n];
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut orbit = vec![x];
            seen[x] = true;
            let mut q = VecDeque::from([x]);
            while let Some(y) = q.pop_front() {
                for &g in &self.generators {
                    let z = self.mul(self.mul(g, y), self.inverse[g]);
                    if !seen[z] {
                        seen[z] = true;
                        orbit.push(z);
                        q.push_back(z);
                    }
                }
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }
        raw.sort_by_key(|c| (self.orders[c[0]], c.len(), c[0]));
        self.classes = raw
            .into_iter()
            .map(|members| {
                let rep = members[0];
                let centralizer = (0..n).filter(|&h| self.mul(h, rep) == self.mul(rep, h)).collect();
                ConjugacyClass {
                    representative: rep,
                    rep_order: self.orders[rep],
                    members,
                    centralizer,
                }
            })
            .collect();
        for (ci, c) in self.classes.iter().enumerate() {
            for &m in &c.members {
                self.class_of[m] = ci;
            }
        }
    }

    fn compute_derived(&self) -> Vec<usize> {
        let n = self.order();
        let mut is_comm = vec![false; n];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(self.inverse[a], self.inverse[b]), self.mul(a, b));
                is_comm[c] = true;
            }
        }
        let comms: Vec<usize> = (0..n).filter(|&c| is_comm[c]).collect();
        self.closure(&self.greedy_generators(&comms))
    }

    /// Subgroup generated by the given element indices.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut out = vec![0];
        let mut q = VecDeque::from([0usize]);
        while let Some(x) = q.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    out.push(y);
                    q.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Greedy generating set for the subgroup generated by `members`.
    pub fn greedy_generators(&self, members: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        for &m in members {
            if !inside[m] {
                gens.push(m);
                for x in self.closure(&gens) {
                    inside[x] = true;
                }
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.inverse.len()
    }

    pub fn class_number(&self) -> usize {
        self.classes.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut x = 0;
        for _ in 0..k % self.orders[a] {
            x = self.mul(x, a);
        }
        x
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &GroupElement) -> Result<usize> {
        self.lookup.get(x).copied().ok_or(Error::ForeignElement)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn center(&self) -> &[usize] {
        &self.center
    }

    pub fn derived_subgroup(&self) -> &[usize] {
        &self.derived
    }

    pub fn is_abelian(&self) -> bool {
        self.center.len() == self.order()
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.iter().any(|&o| o == self.order())
    }

    pub fn structure_invariants(&self) -> StructureInvariants {
        StructureInvariants {
            center: self.center.clone(),
            derived_subgroup: self.derived.clone(),
            exponent: self.exponent,
            abelianization_order: self.order() / self.derived.len(),
        }
    }

    pub fn centralizer(&self, x: &GroupElement) -> Result<Vec<usize>> {
        let i = self.index_of(x)?;
        Ok(self.centralizer_of_index(i))
    }

    pub fn centralizer_of_index(&self, i: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&h| self.mul(h, i) == self.mul(i, h))
            .collect()
    }

    fn check_subgroup(&self, sub: &[usize]) -> Result<Vec<bool>> {
        let n = self.order();
        let mut inside = vec![false; n];
        for &h in sub {
            *inside.get_mut(h).ok_or(Error::NotASubgroup)? = true;
        }
        if !inside[0] {
            return Err(Error::NotASubgroup);
        }
        for &a in sub {
            for &b in sub {
                if !inside[self.mul(a, b)] {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(inside)
    }

    /// Least element index of each left coset xH, in increasing order.
    pub fn coset_representatives(&self, sub: &[usize]) -> Result<Vec<usize>> {
        self.check_subgroup(sub)?;
        let n = self.order();
        let mut done = vec![false; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if done[x] {
                continue;
            }
            reps.push(x);
            for &h in sub {
                done[self.mul(x, h)] = true;
            }
        }
        Ok(reps)
    }

    /// The subgroup on the given members, elements referencing this group by
    /// index. Local order follows increasing parent index.
    pub fn subgroup(&self, name: &str, members: &[usize]) -> Result<GroupData> {
        self.check_subgroup(members)?;
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let m = sorted.len();
        let mut local = HashMap::with_capacity(m);
        for (i, &x) in sorted.iter().enumerate() {
            local.insert(x, i);
        }
        let mut table = vec![0u32; m * m];
        for (i, &a) in sorted.iter().enumerate() {
            for (j, &b) in sorted.iter().enumerate() {
                table[i * m + j] = local[&self.mul(a, b)] as u32;
            }
        }
        let gens: Vec<usize> = self.greedy_generators(&sorted).iter().map(|g| local[g]).collect();
        let elements = sorted.iter().map(|&x| GroupElement::Index(x as u32)).collect();
        Self::from_parts(name, elements, table, gens)
    }

    /// Parent index of a local element of a subgroup built by `subgroup`.
    pub fn parent_index(&self, local: usize) -> Option<usize> {
        match self.elements.get(local) {
            Some(GroupElement::Index(i)) => Some(*i as usize),
            _ => None,
        }
    }
}

/// Parse a generator file: one permutation per line in 1-based cycle
/// notation; blank lines and lines starting with '#' are skipped.
pub fn parse_generator_file(text: &str) -> Result<Vec<GroupElement>> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let degree = lines.iter().map(|l| Permutation::max_point(l)).max().unwrap_or(0);
    lines
        .iter()
        .map(|l| Permutation::parse_cycles(l, degree).map(GroupElement::Perm))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, d: usize) -> GroupElement {
        GroupElement::Perm(Permutation::parse_cycles(s, d).unwrap())
    }

    #[test]
    fn cyclic_six() {
        let g = GroupData::enumerate("Z6", &[perm("(1,2,3,4,5,6)", 6)], DEFAULT_LIMIT).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.class_number(), 6);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn trivial_group() {
        let g = GroupData::enumerate("trivial", &[], DEFAULT_LIMIT).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.class_number(), 1);
        assert_eq!(g.coset_representatives(&[0]).unwrap(), vec![0]);
    }

    #[test]
    fn limit_and_foreign() {
        let gens = [perm("(1,2,3,4,5,6,7)", 7), perm("(1,2)", 7)];
        assert_eq!(
            GroupData::enumerate("S7", &gens, 100).unwrap_err(),
            Error::OrderOverflow(100)
        );
        let g = GroupData::enumerate("Z3", &[perm("(1,2,3)", 3)], 10).unwrap();
        assert_eq!(g.centralizer(&perm("(1,2)", 3)), Err(Error::ForeignElement));
        assert_eq!(g.coset_representatives(&[0, 1]), Err(Error::NotASubgroup));
    }

    #[test]
    fn mixed_generators_rejected() {
        let f = FiniteField::prime(3);
        let m = GroupElement::Finite(FfMatrix::from_ints(f.clone(), 2, &[1, 1, 0, 1]).unwrap());
        assert!(matches!(
            GroupData::enumerate("x", &[perm("(1,2)", 2), m], 10),
            Err(Error::InvalidGenerator(_))
        ));
        let singular = GroupElement::Finite(FfMatrix::from_ints(f, 2, &[1, 1, 1, 1]).unwrap());
        assert!(matches!(
            GroupData::enumerate("x", &[singular], 10),
            Err(Error::InvalidGenerator(_))
        ));
    }

    #[test]
    fn generator_file() {
        let gens = parse_generator_file("# S3\n(1,2)\n\n(1,2,3)\n").unwrap();
        let g = GroupData::enumerate("S3", &gens, 100).unwrap();
        assert_eq!((g.order(), g.class_number()), (6, 3));
    }
}
