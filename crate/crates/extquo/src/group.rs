//! Finite groups given by multiplication tables.

use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

/// Structure tag recorded at construction time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupTag {
    Generic,
    /// S_n with the permutation of each element (images of 0..n).
    Symmetric {
        n: usize,
        perms: Vec<Vec<usize>>,
    },
    Cyclic(usize),
    /// N ⋊ Γ with element (n, γ) stored at index n + |N|·γ.
    Semidirect {
        n_order: usize,
        gamma_order: usize,
    },
    Matrix,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    tag: GroupTag,
}

/// Conjugacy classes, identity class first, then ordered by smallest member.
#[derive(Clone, Debug)]
pub struct Classes {
    pub members: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl Classes {
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn rep(&self, i: usize) -> usize {
        self.members[i][0]
    }
    pub fn size(&self, i: usize) -> usize {
        self.members[i].len()
    }
    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.len()).collect()
    }
}

impl FiniteGroup {
    /// Build from a full multiplication table (`table[a * n + b] = a·b`).
    /// Group axioms are checked exhaustively for orders up to 200 and by
    /// sampling above that.
    pub fn from_table(order: usize, table: Vec<u32>, tag: GroupTag) -> Result<Self> {
        if table.len() != order * order || order == 0 {
            return Err(Error::Invalid("multiplication table has wrong size".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e * order + a] as usize == a && table[a * order + e] as usize == a))
            .ok_or_else(|| Error::Invalid("no identity element".into()))?;
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] as usize == identity {
                    inv[a] = b as u32;
                    break;
                }
            }
            if inv[a] == u32::MAX {
                return Err(Error::Invalid(format!("element {a} has no inverse")));
            }
        }
        let g = FiniteGroup { order, table, inv, identity, tag };
        let assoc = |a: usize, b: usize, c: usize| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c));
        if order <= 200 {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !assoc(a, b, c) {
                            return Err(Error::Invalid("multiplication is not associative".into()));
                        }
                    }
                }
            }
        } else {
            let mut s = 0x9e37_79b9_u64;
            for _ in 0..4000 {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                let (a, b, c) = ((s % order as u64) as usize, ((s >> 20) % order as u64) as usize, ((s >> 40) % order as u64) as usize);
                if !assoc(a, b, c) {
                    return Err(Error::Invalid("multiplication is not associative".into()));
                }
            }
        }
        Ok(g)
    }

    /// Close a set of generators under multiplication, where elements are any
    /// hashable, ordered values with an explicit product. Elements are returned
    /// sorted, and the group table indexes that sorted list.
    pub fn generate<T, F>(gens: &[T], identity: T, mul: F, bound: usize, tag: GroupTag) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Eq + Hash + Ord,
        F: Fn(&T, &T) -> T,
    {
        let mut seen: HashMap<T, ()> = HashMap::new();
        let mut list = vec![identity.clone()];
        seen.insert(identity, ());
        let mut i = 0;
        while i < list.len() {
            for g in gens {
                let p = mul(&list[i], g);
                if !seen.contains_key(&p) {
                    seen.insert(p.clone(), ());
                    list.push(p);
                    if list.len() > bound {
                        return Err(Error::NonFiniteType(bound));
                    }
                }
            }
            i += 1;
        }
        list.sort();
        let index: HashMap<T, usize> = list.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let n = list.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&mul(&list[a], &list[b])] as u32;
            }
        }
        let g = FiniteGroup::from_table_unchecked(n, table, tag);
        Ok((g, list))
    }

    /// Table-based constructor for tables that are groups by construction.
    pub(crate) fn from_table_unchecked(order: usize, table: Vec<u32>, tag: GroupTag) -> Self {
        let identity = (0..order).find(|&e| (0..order).all(|a| table[e * order + a] as usize == a)).expect("identity");
        let mut inv = vec![0u32; order];
        for a in 0..order {
            inv[a] = (0..order).find(|&b| table[a * order + b] as usize == identity).expect("inverse") as u32;
        }
        FiniteGroup { order, table, inv, identity, tag }
    }

    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            perms.push(cur.clone());
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let m = perms.len();
        let mut table = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                // (a·b)(i) = a(b(i))
                let p: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
                table[a * m + b] = index[&p] as u32;
            }
        }
        Self::from_table_unchecked(m, table, GroupTag::Symmetric { n, perms })
    }

    pub fn cyclic(n: usize) -> Self {
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = ((a + b) % n) as u32;
            }
        }
        Self::from_table_unchecked(n, table, GroupTag::Cyclic(n))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x % na, x / na);
                let (ya, yb) = (y % na, y / na);
                table[x * n + y] = (a.mul(xa, ya) + na * b.mul(xb, yb)) as u32;
            }
        }
        Self::from_table_unchecked(n, table, GroupTag::Generic)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn tag(&self) -> &GroupTag {
        &self.tag
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut r = self.identity;
        for _ in 0..k.unsigned_abs() {
            r = self.mul(r, base);
        }
        r
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn classes(&self) -> Classes {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut m: Vec<usize> = (0..n).map(|g| self.conj(g, a)).collect();
            m.sort_unstable();
            m.dedup();
            for &x in &m {
                class_of[x] = members.len();
            }
            members.push(m);
        }
        // identity class first, then by smallest member (already increasing)
        let id_class = class_of[self.identity];
        let mut order: Vec<usize> = (0..members.len()).collect();
        order.sort_by_key(|&c| (c != id_class, members[c][0]));
        let members: Vec<Vec<usize>> = order.iter().map(|&c| members[c].clone()).collect();
        let mut class_of = vec![0; n];
        for (i, m) in members.iter().enumerate() {
            for &x in m {
                class_of[x] = i;
            }
        }
        Classes { members, class_of }
    }

    /// Subgroup generated by the given elements, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut list = vec![self.identity];
        let mut i = 0;
        while i < list.len() {
            for &g in gens {
                let p = self.mul(list[i], g);
                if !inside[p] {
                    inside[p] = true;
                    list.push(p);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// The subgroup on a given element set (which must be closed), re-indexed
    /// in the order of `elements`.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let m = elements.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                let p = self.mul(a, b);
                let k = *pos.get(&p).ok_or_else(|| Error::Invalid("element set is not closed under multiplication".into()))?;
                table[i * m + j] = k as u32;
            }
        }
        if !pos.contains_key(&self.identity) {
            return Err(Error::Invalid("element set does not contain the identity".into()));
        }
        let tag = match &self.tag {
            GroupTag::Matrix => GroupTag::Matrix,
            _ => GroupTag::Generic,
        };
        Ok(Subgroup { group: Self::from_table_unchecked(m, table, tag), embedding: elements.to_vec() })
    }

    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        (0..self.order).filter(|&g| self.mul(g, a) == self.mul(a, g)).collect()
    }

    /// Retag a group (used when an isomorphism to a structured group is known).
    pub fn with_tag(mut self, tag: GroupTag) -> Self {
        self.tag = tag;
        self
    }

    /// Cycle-type-like signature for tests: sorted list of element orders.
    pub fn order_statistics(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for a in 0..self.order {
            *m.entry(self.element_order(a)).or_insert(0) += 1;
        }
        m
    }
}

/// A subgroup together with its embedding into the ambient element indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FiniteGroup,
    pub embedding: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        let c = s3.classes();
        assert_eq!(c.len(), 3);
        assert_eq!(c.sizes().iter().sum::<usize>(), 6);
        assert_eq!(c.rep(0), s3.identity());
        assert_eq!(s3.exponent(), 6);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn closure_and_subgroup() {
        let s4 = FiniteGroup::symmetric(4);
        let t = (0..24).find(|&a| s4.element_order(a) == 4).unwrap();
        let h = s4.closure(&[t]);
        assert_eq!(h.len(), 4);
        let sub = s4.subgroup(&h).unwrap();
        assert!(sub.group.is_abelian());
    }
}
