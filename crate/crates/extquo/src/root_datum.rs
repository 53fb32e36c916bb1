//! Root data of split groups and their Weyl groups as integer matrix groups.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupTag};
use crate::matrix::{IMat, QMat, Q};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};

const ROOT_BOUND: usize = 512;

#[derive(Clone, Debug, Serialize)]
pub struct RootDatum {
    pub label: String,
    pub rank: usize,
    /// Roots in X^*: positive roots by height, then their negatives in the same order.
    pub roots: Vec<Vec<i64>>,
    /// Coroot of `roots[i]`, in X_*.
    pub coroots: Vec<Vec<i64>>,
    pub simple_indices: Vec<usize>,
    /// Coefficients of each root in the simple roots.
    #[serde(skip)]
    pub coefficients: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
struct CustomDatum {
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    #[serde(default)]
    label: Option<String>,
}

pub fn pairing(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Cartan matrix in the order of the standard simple roots of type A_{n-1}.
fn cartan_a(n: usize) -> Vec<Vec<i64>> {
    let m = n - 1;
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn parse_n(s: &str) -> Option<usize> {
    let s = s.strip_prefix(':').unwrap_or(s);
    s.parse().ok().filter(|&n: &usize| n >= 1)
}

/// Build one of the built-in data from its label.
pub fn build_root_datum(label: &str) -> Result<RootDatum> {
    let l = label.trim();
    let upper = l.to_ascii_uppercase();
    let (kind, n) = if let Some(r) = upper.strip_prefix("PGLN") {
        ("PGL", parse_n(r))
    } else if let Some(r) = upper.strip_prefix("SLN") {
        ("SL", parse_n(r))
    } else if let Some(r) = upper.strip_prefix("GLN") {
        ("GL", parse_n(r))
    } else if let Some(r) = upper.strip_prefix("PGL") {
        ("PGL", parse_n(r))
    } else if let Some(r) = upper.strip_prefix("SL") {
        ("SL", parse_n(r))
    } else if let Some(r) = upper.strip_prefix("GL") {
        ("GL", parse_n(r))
    } else {
        (upper.as_str(), Some(0))
    };
    let unknown = || Error::UnknownLabel(label.to_string());
    match (kind, n) {
        ("GL", Some(n)) => {
            let simple: Vec<Vec<i64>> = (0..n - 1)
                .map(|i| {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v[i + 1] = -1;
                    v
                })
                .collect();
            RootDatum::from_simple(format!("GL{n}"), n, simple.clone(), simple)
        }
        ("SL", Some(n)) if n >= 2 => {
            let a = cartan_a(n);
            let co = (0..n - 1).map(|i| unit(n - 1, i)).collect();
            RootDatum::from_simple(format!("SL{n}"), n - 1, a, co)
        }
        ("PGL", Some(n)) if n >= 2 => {
            let a = cartan_a(n);
            let roots = (0..n - 1).map(|i| unit(n - 1, i)).collect();
            let co = (0..n - 1).map(|j| (0..n - 1).map(|i| a[i][j]).collect()).collect();
            RootDatum::from_simple(format!("PGL{n}"), n - 1, roots, co)
        }
        ("A1", _) => build_root_datum("SL2").map(|d| d.relabel("A1")),
        ("A2", _) => build_root_datum("SL3").map(|d| d.relabel("A2")),
        ("C2", _) | ("SP4", _) => RootDatum::from_simple("C2".into(), 2, vec![vec![1, -1], vec![0, 2]], vec![vec![1, -1], vec![0, 1]]),
        ("G2", _) => RootDatum::from_simple("G2".into(), 2, vec![vec![0, 1], vec![1, -1]], vec![vec![-1, 2], vec![1, -1]]),
        _ => Err(unknown()),
    }
}

/// Parse a custom datum from its JSON descriptor.
pub fn parse_custom_datum(json: &str) -> Result<RootDatum> {
    let c: CustomDatum = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    RootDatum::from_simple(c.label.unwrap_or_else(|| "custom".into()), c.rank, c.simple_roots, c.simple_coroots)
}

impl RootDatum {
    /// Generate the full datum from simple roots and coroots by reflection closure.
    pub fn from_simple(label: String, rank: usize, simple: Vec<Vec<i64>>, simple_co: Vec<Vec<i64>>) -> Result<Self> {
        let l = simple.len();
        if simple_co.len() != l {
            return Err(Error::InvalidDatum("simple roots and coroots differ in number".into()));
        }
        if rank == 0 {
            return Err(Error::InvalidDatum("rank must be positive".into()));
        }
        for v in simple.iter().chain(&simple_co) {
            if v.len() != rank {
                return Err(Error::RankMismatch { expected: rank, got: v.len() });
            }
        }
        let cartan: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| pairing(&simple[i], &simple_co[j])).collect()).collect();
        for i in 0..l {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidDatum(format!("⟨α_{i}, α_{i}^∨⟩ = {} ≠ 2", cartan[i][i])));
            }
            for j in 0..l {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::InvalidDatum("not a generalized Cartan matrix".into()));
                }
            }
        }
        let mut m = QMat::zeros(l, rank);
        for i in 0..l {
            for j in 0..rank {
                m.set(i, j, Q::from(simple[i][j]));
            }
        }
        if m.rank() != l {
            return Err(Error::InvalidDatum("simple roots are linearly dependent".into()));
        }

        // reflection closure, tracking coefficients in the simple roots
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut coroots: Vec<Vec<i64>> = Vec::new();
        let mut coeffs: Vec<Vec<i64>> = Vec::new();
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..l {
            let c = unit(l, i);
            index.insert(simple[i].clone(), roots.len());
            roots.push(simple[i].clone());
            coroots.push(simple_co[i].clone());
            coeffs.push(c);
            queue.push_back(i);
        }
        while let Some(k) = queue.pop_front() {
            for i in 0..l {
                let p = pairing(&roots[k], &simple_co[i]);
                let q = pairing(&simple[i], &coroots[k]);
                if p.abs() > 3 || q.abs() > 3 {
                    return Err(Error::NonFiniteType(ROOT_BOUND));
                }
                let r: Vec<i64> = roots[k].iter().zip(&simple[i]).map(|(a, b)| a - p * b).collect();
                if let Some(&existing) = index.get(&r) {
                    let c: Vec<i64> = coroots[k].iter().zip(&simple_co[i]).map(|(a, b)| a - q * b).collect();
                    if coroots[existing] != c {
                        return Err(Error::InvalidDatum("coroot assignment is not well defined".into()));
                    }
                    continue;
                }
                let c: Vec<i64> = coroots[k].iter().zip(&simple_co[i]).map(|(a, b)| a - q * b).collect();
                let mut cf = coeffs[k].clone();
                cf[i] -= p;
                index.insert(r.clone(), roots.len());
                roots.push(r);
                coroots.push(c);
                coeffs.push(cf);
                queue.push_back(roots.len() - 1);
                if roots.len() > ROOT_BOUND {
                    return Err(Error::NonFiniteType(ROOT_BOUND));
                }
            }
        }
        for cf in &coeffs {
            if !(cf.iter().all(|&c| c >= 0) || cf.iter().all(|&c| c <= 0)) {
                return Err(Error::InvalidDatum("root with mixed-sign coefficients".into()));
            }
        }
        let mut pos: Vec<usize> = (0..roots.len()).filter(|&i| coeffs[i].iter().all(|&c| c >= 0)).collect();
        pos.sort_by_key(|&i| (coeffs[i].iter().sum::<i64>(), std::cmp::Reverse(coeffs[i].clone())));
        let neg_of = |i: usize| index[&roots[i].iter().map(|x| -x).collect::<Vec<_>>()];
        let mut order = pos.clone();
        for &i in &pos {
            order.push(neg_of(i));
        }
        if order.len() != roots.len() {
            return Err(Error::InvalidDatum("root set is not symmetric".into()));
        }
        let d = RootDatum {
            label,
            rank,
            roots: order.iter().map(|&i| roots[i].clone()).collect(),
            coroots: order.iter().map(|&i| coroots[i].clone()).collect(),
            coefficients: order.iter().map(|&i| coeffs[i].clone()).collect(),
            simple_indices: Vec::new(),
        };
        let simple_indices = simple.iter().map(|s| d.root_index(s).unwrap()).collect();
        let d = RootDatum { simple_indices, ..d };
        d.validate()?;
        Ok(d)
    }

    fn relabel(mut self, label: &str) -> Self {
        self.label = label.into();
        self
    }

    fn validate(&self) -> Result<()> {
        for (a, c) in self.roots.iter().zip(&self.coroots) {
            if pairing(a, c) != 2 {
                return Err(Error::InvalidDatum("⟨α, α^∨⟩ ≠ 2".into()));
            }
        }
        for &s in &self.simple_indices {
            for r in 0..self.roots.len() {
                let img = self.reflect_root(s, r);
                if self.root_index(&img).is_none() {
                    return Err(Error::InvalidDatum("simple reflection does not preserve the roots".into()));
                }
            }
        }
        Ok(())
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.num_positive()
    }

    pub fn negative(&self, i: usize) -> usize {
        let p = self.num_positive();
        if i < p {
            i + p
        } else {
            i - p
        }
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_indices.len()
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == v)
    }

    pub fn coroot_index(&self, v: &[i64]) -> Option<usize> {
        self.coroots.iter().position(|r| r == v)
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let s = &self.simple_indices;
        s.iter().map(|&i| s.iter().map(|&j| pairing(&self.roots[i], &self.coroots[j])).collect()).collect()
    }

    fn reflect_root(&self, s: usize, r: usize) -> Vec<i64> {
        let p = pairing(&self.roots[r], &self.coroots[s]);
        self.roots[r].iter().zip(&self.roots[s]).map(|(a, b)| a - p * b).collect()
    }

    /// Matrix of s_α on X^*: x ↦ x − ⟨x, α^∨⟩α.
    pub fn reflection(&self, i: usize) -> IMat {
        let n = self.rank;
        let mut m = IMat::identity(n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, m.get(r, c) - self.roots[i][r] * self.coroots[i][c]);
            }
        }
        m
    }

    /// W-invariant squared length Σ_β ⟨α, β^∨⟩².
    pub fn root_norm(&self, i: usize) -> i64 {
        self.coroots.iter().map(|c| pairing(&self.roots[i], c).pow(2)).sum()
    }

    /// Long roots of a component with two root lengths; all roots otherwise.
    pub fn is_long(&self, i: usize) -> bool {
        let comp = self.component_of(i);
        let max = comp.iter().map(|&j| self.root_norm(j)).max().unwrap_or(0);
        self.root_norm(i) == max
    }

    fn component_of(&self, i: usize) -> Vec<usize> {
        let n = self.num_roots();
        let mut seen = vec![false; n];
        let mut stack = vec![i];
        seen[i] = true;
        while let Some(k) = stack.pop() {
            for j in 0..n {
                if !seen[j] && pairing(&self.roots[k], &self.coroots[j]) != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        (0..n).filter(|&j| seen[j]).collect()
    }

    /// Whether the roots span X^* ⊗ Q (no central torus).
    pub fn is_semisimple(&self) -> bool {
        self.semisimple_rank() == self.rank
    }
}

/// A Weyl group as a matrix group on X^*, with the dual action on X_* and the
/// permutation action on roots.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub group: FiniteGroup,
    /// Action on X^*, sorted lexicographically.
    pub elements: Vec<IMat>,
    /// Action on X_*: the inverse transpose.
    pub cochar: Vec<IMat>,
    pub generators: Vec<usize>,
    /// Shortest words in the generators (indices into `generators`).
    pub words: Vec<Vec<usize>>,
    /// `root_perm[w][i]` is the index of w(α_i).
    pub root_perm: Vec<Vec<usize>>,
    pub identity: usize,
}

pub fn weyl_group(d: &RootDatum) -> Result<WeylGroup> {
    let gens: Vec<IMat> = d.simple_indices.iter().map(|&i| d.reflection(i)).collect();
    let bound = crate::resource_bound();
    let (group, elements) = if gens.is_empty() {
        FiniteGroup::generate(&[IMat::identity(d.rank)], IMat::identity(d.rank), |a, b| a.mul(b), bound, GroupTag::Matrix)?
    } else {
        FiniteGroup::generate(&gens, IMat::identity(d.rank), |a, b| a.mul(b), bound, GroupTag::Matrix)?
    };
    let index: HashMap<&IMat, usize> = elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let generators: Vec<usize> = gens.iter().map(|g| index[g]).collect();
    let identity = group.identity();
    let mut words: Vec<Option<Vec<usize>>> = vec![None; elements.len()];
    words[identity] = Some(Vec::new());
    let mut queue = VecDeque::from([identity]);
    while let Some(w) = queue.pop_front() {
        for (k, &g) in generators.iter().enumerate() {
            let x = group.mul(w, g);
            if words[x].is_none() {
                let mut word = words[w].clone().unwrap();
                word.push(k);
                words[x] = Some(word);
                queue.push_back(x);
            }
        }
    }
    let cochar: Vec<IMat> = (0..elements.len()).map(|w| elements[group.inv(w)].transpose()).collect();
    let root_index: HashMap<&Vec<i64>, usize> = d.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut root_perm = Vec::with_capacity(elements.len());
    for m in &elements {
        let mut p = Vec::with_capacity(d.num_roots());
        for r in &d.roots {
            let img = m.mul_vec(r);
            let j = *root_index.get(&img).ok_or_else(|| Error::InvalidDatum("Weyl element does not preserve the roots".into()))?;
            p.push(j);
        }
        root_perm.push(p);
    }
    Ok(WeylGroup { group, elements, cochar, generators, words: words.into_iter().map(|w| w.unwrap()).collect(), root_perm, identity })
}

/// Conjugacy class of a Weyl group: representative plus members.
#[derive(Clone, Debug, Serialize)]
pub struct WeylClass {
    pub rep: usize,
    pub members: Vec<usize>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.group.mul(a, b)
    }

    pub fn inv(&self, a: usize) -> usize {
        self.group.inv(a)
    }

    pub fn index_of(&self, m: &IMat) -> Option<usize> {
        self.elements.binary_search(m).ok()
    }

    /// Classes with the identity first; each representative is the lexicographically
    /// smallest matrix in its class.
    pub fn conjugacy_classes(&self) -> Vec<WeylClass> {
        let c = self.group.classes();
        c.members
            .iter()
            .map(|m| {
                let mut members = m.clone();
                members.sort_unstable();
                WeylClass { rep: members[0], members }
            })
            .collect()
    }

    /// The element acting on X^* as a permutation of roots; `is_reflection` etc.
    pub fn det(&self, w: usize) -> i64 {
        self.elements[w].det()
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, d: &RootDatum, w: usize) -> usize {
        (0..d.num_positive()).filter(|&i| !d.is_positive(self.root_perm[w][i])).count()
    }

    /// The element s_α for an arbitrary root α.
    pub fn reflection_of(&self, d: &RootDatum, i: usize) -> usize {
        self.index_of(&d.reflection(i)).expect("reflection lies in W")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        let g2 = build_root_datum("G2").unwrap();
        assert_eq!(g2.num_roots(), 12);
        assert_eq!(weyl_group(&g2).unwrap().order(), 12);
        let gl2 = build_root_datum("GL2").unwrap();
        assert_eq!(gl2.rank, 2);
        assert_eq!(gl2.roots, vec![vec![1, -1], vec![-1, 1]]);
        let a1 = build_root_datum("A1").unwrap();
        assert_eq!(a1.roots, vec![vec![2], vec![-2]]);
        assert_eq!(weyl_group(&a1).unwrap().order(), 2);
        assert_eq!(weyl_group(&build_root_datum("A2").unwrap()).unwrap().order(), 6);
        assert_eq!(weyl_group(&build_root_datum("C2").unwrap()).unwrap().order(), 8);
        assert_eq!(build_root_datum("GLn:4").unwrap().num_roots(), 12);
        assert_eq!(build_root_datum("PGLn:3").unwrap().cartan_matrix(), cartan_a(3));
        assert!(build_root_datum("E9").is_err());
    }

    #[test]
    fn g2_lengths() {
        let g2 = build_root_datum("G2").unwrap();
        let long: Vec<Vec<i64>> = (0..6).filter(|&i| g2.is_long(i)).map(|i| g2.roots[i].clone()).collect();
        assert_eq!(long.len(), 3);
        for r in [vec![1, -1], vec![1, 2], vec![2, 1]] {
            assert!(long.contains(&r));
        }
    }

    #[test]
    fn classes() {
        let w = weyl_group(&build_root_datum("G2").unwrap()).unwrap();
        let c = w.conjugacy_classes();
        assert_eq!(c.len(), 6);
        assert_eq!(c[0].rep, w.identity);
        assert_eq!(c.iter().map(|k| k.members.len()).sum::<usize>(), 12);
    }

    #[test]
    fn custom_and_invalid() {
        let d = parse_custom_datum(r#"{"rank": 2, "simple_roots": [[1,-1]], "simple_coroots": [[1,-1]]}"#).unwrap();
        assert_eq!(d.num_roots(), 2);
        // affine A1 Cartan matrix is not of finite type
        let bad = RootDatum::from_simple("x".into(), 2, vec![vec![2, -2], vec![-2, 2]], vec![vec![1, 0], vec![0, 1]]);
        assert!(bad.is_err());
        let e = parse_custom_datum(r#"{"rank": 2, "simple_roots": [[1,0],[0,1]], "simple_coroots": [[2,-3],[-3,2]]}"#);
        assert!(e.is_err());
    }
}
