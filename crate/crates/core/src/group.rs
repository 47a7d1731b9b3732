//! Finite matrix groups held as explicit element lists.
//!
//! A [`Group`] owns its elements in a deterministic order, a hash index for
//! O(1) membership and product lookup, a small generating set found
//! greedily, and the conjugacy-class partition (computed by closing each
//! class under conjugation by the generators, which is exact once the
//! generators generate).

use crate::error::{Error, Result};
use crate::gfq::MatrixFq;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct ConjClass {
    /// Index of the class representative (smallest member).
    pub rep: usize,
    /// Member indices, sorted.
    pub members: Vec<usize>,
}

#[derive(Clone)]
pub struct Group {
    pub q: u32,
    pub dim: usize,
    elements: Vec<MatrixFq>,
    index: HashMap<Vec<u8>, usize>,
    pub generators: Vec<usize>,
    pub classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
}

impl Group {
    /// Builds a group from a complete, duplicate-free element list.
    pub fn from_elements(mut elements: Vec<MatrixFq>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Internal("empty element list".into()));
        }
        let q = elements[0].q;
        let dim = elements[0].rows;
        elements.sort_by(|a, b| a.key().cmp(&b.key()));
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if e.rows != dim || e.cols != dim || e.q != q {
                return Err(Error::Shape("mixed element shapes".into()));
            }
            if index.insert(e.key(), i).is_some() {
                return Err(Error::Internal("duplicate element".into()));
            }
        }
        let id = MatrixFq::identity(dim, q);
        let identity = *index
            .get(&id.key())
            .ok_or_else(|| Error::Internal("identity not in element list".into()))?;

        let inverse = elements
            .iter()
            .map(|e| {
                let inv = e.inverse().ok_or(Error::Internal("singular element".into()))?;
                index
                    .get(&inv.key())
                    .copied()
                    .ok_or(Error::Internal("inverse missing; not a group".into()))
            })
            .collect::<Result<Vec<_>>>()?;

        let mut g = Group {
            q,
            dim,
            elements,
            index,
            generators: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
            inverse,
            identity,
        };
        g.generators = g.find_generators()?;
        g.compute_classes();
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn element(&self, i: usize) -> &MatrixFq {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[MatrixFq] {
        &self.elements
    }

    pub fn lookup(&self, m: &MatrixFq) -> Option<usize> {
        self.index.get(&m.key()).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let prod = self.elements[a].mul(&self.elements[b]);
        *self.index.get(&prod.key()).expect("group closed under product")
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].members.len()
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.order() / self.class_size(c)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Order of the element at index `a`.
    pub fn element_order(&self, a: usize) -> u32 {
        let mut cur = a;
        let mut n = 1;
        while cur != self.identity {
            cur = self.mul(cur, a);
            n += 1;
        }
        n
    }

    /// Exponent of the group (lcm of the orders of class representatives).
    pub fn exponent(&self) -> u32 {
        self.classes.iter().fold(1u32, |acc, c| lcm(acc, self.element_order(c.rep)))
    }

    /// Class index of `rep(c)^t`.
    pub fn power_class(&self, c: usize, t: u32) -> usize {
        let mut cur = self.identity;
        for _ in 0..t {
            cur = self.mul(cur, self.classes[c].rep);
        }
        self.class_of[cur]
    }

    fn find_generators(&self) -> Result<Vec<usize>> {
        let mut gens: Vec<usize> = Vec::new();
        let mut in_closure = vec![false; self.order()];
        in_closure[self.identity] = true;
        let mut closed: Vec<usize> = vec![self.identity];
        for cand in 0..self.order() {
            if in_closure[cand] {
                continue;
            }
            gens.push(cand);
            // Close <gens>: multiply everything reachable by the generators.
            let mut frontier = closed.clone();
            if !in_closure[cand] {
                in_closure[cand] = true;
                closed.push(cand);
                frontier.push(cand);
            }
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    for y in [self.mul(x, g), self.mul(g, x)] {
                        if !in_closure[y] {
                            in_closure[y] = true;
                            closed.push(y);
                            frontier.push(y);
                        }
                    }
                }
            }
            if closed.len() == self.order() {
                break;
            }
        }
        if closed.len() != self.order() {
            return Err(Error::Internal("element list is not closed".into()));
        }
        Ok(gens)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = vec![start];
            class_of[start] = c;
            let mut frontier = vec![start];
            while let Some(x) = frontier.pop() {
                for &g in &self.generators {
                    let y = self.mul(self.mul(g, x), self.inverse[g]);
                    if class_of[y] == usize::MAX {
                        class_of[y] = c;
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjClass { rep: members[0], members });
        }
        // Class equation sanity.
        debug_assert_eq!(classes.iter().map(|c| c.members.len()).sum::<usize>(), n);
        self.classes = classes;
        self.class_of = class_of;
    }

    /// Direct product realized on block-diagonal matrices.
    pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
        if a.q != b.q {
            return Err(Error::ModulusMismatch { left: a.q, right: b.q });
        }
        let mut elements = Vec::with_capacity(a.order() * b.order());
        for x in a.elements() {
            for y in b.elements() {
                elements.push(block_diag(x, y));
            }
        }
        Group::from_elements(elements)
    }
}

/// Block-diagonal sum of two square matrices.
pub fn block_diag(a: &MatrixFq, b: &MatrixFq) -> MatrixFq {
    assert_eq!(a.q, b.q);
    let n = a.rows + b.rows;
    let mut m = MatrixFq::zero(n, n, a.q);
    for r in 0..a.rows {
        for c in 0..a.cols {
            m.set(r, c, a.get(r, c));
        }
    }
    for r in 0..b.rows {
        for c in 0..b.cols {
            m.set(a.rows + r, a.cols + c, b.get(r, c));
        }
    }
    m
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// A subgroup of a parent group, rebuilt as a standalone [`Group`] plus the
/// index maps between the two.
pub struct Subgroup {
    pub group: Group,
    /// Subgroup element index -> parent element index.
    pub to_parent: Vec<usize>,
    /// Parent element index -> subgroup element index.
    pub from_parent: HashMap<usize, usize>,
    /// Subgroup class -> parent class (fusion).
    pub fusion: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: &Group, members: &[usize]) -> Result<Subgroup> {
        let elements: Vec<MatrixFq> = members.iter().map(|&i| parent.element(i).clone()).collect();
        let group = Group::from_elements(elements)?;
        let to_parent: Vec<usize> = (0..group.order())
            .map(|i| parent.lookup(group.element(i)).expect("subgroup element in parent"))
            .collect();
        let from_parent: HashMap<usize, usize> =
            to_parent.iter().enumerate().map(|(sub, &par)| (par, sub)).collect();
        let fusion = group
            .classes
            .iter()
            .map(|c| parent.class_of(to_parent[c.rep]))
            .collect();
        Ok(Subgroup { group, to_parent, from_parent, fusion })
    }
}
