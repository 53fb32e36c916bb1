//! Extended quotients T//W^s (first kind), fibers of the second kind and the projection to T/W^s.

use crate::centralizer::{stabilizer_formal, CentralizerData};
use crate::chartable::{character_table, CharacterTable};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::par;
use crate::root_datum::{weyl_group, RootDatum, WeylGroup};
use crate::torus::{act_matrix, fixed_locus, SubtorusCoset, TorusPoint};
use serde::Serialize;
use std::collections::BTreeSet;

/// A finite subgroup W^s ≤ W acting linearly on T, cut out by the inertial generators.
#[derive(Clone, Debug)]
pub struct Action {
    pub datum: RootDatum,
    pub weyl: WeylGroup,
    /// Generators of the finite subgroup im c^s ⊂ T.
    pub inertial: Vec<TorusPoint>,
    /// W^s as sorted Weyl element indices.
    pub elements: Vec<usize>,
    pub group: Subgroup,
    /// Centralizer data of H = Z_G(im c^s).
    pub h: CentralizerData,
}

impl Action {
    pub fn new(datum: RootDatum, inertial: Vec<TorusPoint>) -> Result<Self> {
        for g in &inertial {
            g.check_rank(datum.rank)?;
            if !g.is_finite_order() {
                return Err(Error::QExponent);
            }
        }
        let weyl = weyl_group(&datum)?;
        let h = stabilizer_formal(&datum, &weyl, &inertial)?;
        let elements = h.full.clone();
        let group = weyl.group.subgroup(&elements)?;
        Ok(Action { datum, weyl, inertial, elements, group, h })
    }

    pub fn unramified(datum: RootDatum) -> Result<Self> {
        Self::new(datum, Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn act(&self, w: usize, t: &TorusPoint) -> TorusPoint {
        act_matrix(&self.weyl.cochar[w], t)
    }

    /// Lexicographically minimal point of the W^s-orbit.
    pub fn canonical(&self, t: &TorusPoint) -> TorusPoint {
        self.canonical_under(&self.elements, t)
    }

    pub fn canonical_under(&self, elems: &[usize], t: &TorusPoint) -> TorusPoint {
        elems.iter().map(|&w| self.act(w, t)).min().unwrap_or_else(|| t.clone())
    }

    pub fn orbit(&self, t: &TorusPoint) -> Vec<TorusPoint> {
        let s: BTreeSet<TorusPoint> = self.elements.iter().map(|&w| self.act(w, t)).collect();
        s.into_iter().collect()
    }

    /// W^s_t together with R_t and Γ_t (stabilizer of the inertial generators and t).
    pub fn point_stabilizer(&self, t: &TorusPoint) -> Result<CentralizerData> {
        let mut pts = self.inertial.clone();
        pts.push(t.clone());
        stabilizer_formal(&self.datum, &self.weyl, &pts)
    }

    /// Conjugacy classes of W^s, identity first, representatives lexicographically minimal.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let c = self.group.group.classes();
        c.members
            .iter()
            .map(|m| {
                let mut v: Vec<usize> = m.iter().map(|&i| self.group.embedding[i]).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    pub fn centralizer(&self, w: usize) -> Vec<usize> {
        self.elements.iter().copied().filter(|&u| self.weyl.mul(u, w) == self.weyl.mul(w, u)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Stratum {
    /// Conjugacy class representative w (Weyl element index).
    pub class_rep: usize,
    pub class_rep_word: Vec<usize>,
    pub class_index: usize,
    pub component: SubtorusCoset,
    /// Index of the component in the fixed locus of w.
    pub component_index: usize,
    /// {u ∈ Z_{W^s}(w) : u C = C}.
    pub residual: Vec<usize>,
    pub dim: usize,
    pub is_ordinary: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtendedQuotient {
    pub group: String,
    pub order: usize,
    pub strata: Vec<Stratum>,
}

impl ExtendedQuotient {
    pub fn count_by_dim(&self) -> (usize, Vec<usize>) {
        let ord = self.strata.iter().filter(|s| s.is_ordinary).count();
        let maxd = self.strata.iter().filter(|s| !s.is_ordinary).map(|s| s.dim).max().unwrap_or(0);
        let mut v = vec![0; maxd + 1];
        for s in self.strata.iter().filter(|s| !s.is_ordinary) {
            v[s.dim] += 1;
        }
        (ord, v)
    }
}

pub fn extended_quotient_first(a: &Action) -> Result<ExtendedQuotient> {
    let classes = a.classes();
    let per_class: Vec<Vec<Stratum>> = par::map(&classes.iter().enumerate().collect::<Vec<_>>(), |&(ci, members)| {
        let w = members[0];
        let fl = fixed_locus(&a.weyl.cochar[w]);
        let z = a.centralizer(w);
        let mut seen = vec![false; fl.len()];
        let mut out = Vec::new();
        for i in 0..fl.len() {
            if seen[i] {
                continue;
            }
            let mut residual = Vec::new();
            for &u in &z {
                let j = fl.component_of(&a.act(u, &fl.components[i].base)).expect("centralizer permutes components");
                seen[j] = true;
                if j == i {
                    residual.push(u);
                }
            }
            out.push(Stratum {
                class_rep: w,
                class_rep_word: a.weyl.words[w].clone(),
                class_index: ci,
                component: fl.components[i].clone(),
                component_index: i,
                residual,
                dim: fl.components[i].dim,
                is_ordinary: w == a.weyl.identity,
            });
        }
        out
    });
    let mut strata: Vec<Stratum> = per_class.into_iter().flatten().collect();
    strata.sort_by(|x, y| {
        (!x.is_ordinary, std::cmp::Reverse(x.dim), &x.component.base, x.class_index).cmp(&(
            !y.is_ordinary,
            std::cmp::Reverse(y.dim),
            &y.component.base,
            y.class_index,
        ))
    });
    Ok(ExtendedQuotient { group: a.datum.label.clone(), order: a.order(), strata })
}

#[derive(Clone, Debug)]
pub struct SecondKindFiber {
    pub point: TorusPoint,
    pub stabilizer: CentralizerData,
    /// W^s_t as a subgroup of W.
    pub subgroup: Subgroup,
    pub table: CharacterTable,
}

impl SecondKindFiber {
    pub fn len(&self) -> usize {
        self.table.num_classes()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Position of a Weyl element inside W^s_t.
    pub fn position(&self, w: usize) -> Option<usize> {
        self.subgroup.embedding.binary_search(&w).ok()
    }
}

pub fn second_kind_fiber(a: &Action, t: &TorusPoint) -> Result<SecondKindFiber> {
    t.check_rank(a.rank())?;
    if !t.is_finite_order() {
        return Err(Error::QExponent);
    }
    let stabilizer = a.point_stabilizer(t)?;
    let subgroup = a.weyl.group.subgroup(&stabilizer.full)?;
    let table = character_table(&subgroup.group)?;
    Ok(SecondKindFiber { point: t.clone(), stabilizer, subgroup, table })
}

/// ρ: the image of a stratum point in T/W^s.
pub fn project_rho(a: &Action, s: &Stratum, p: &TorusPoint) -> Result<TorusPoint> {
    p.check_rank(a.rank())?;
    if !s.component.contains(p) {
        return Err(Error::OffCoset);
    }
    Ok(a.canonical(p))
}

/// Stratum points (up to the residual group) whose image under p ↦ p·shift is W^s-conjugate to `target`.
pub fn stratum_preimages(a: &Action, s: &Stratum, target: &TorusPoint, shift: &TorusPoint) -> Vec<TorusPoint> {
    let fl = fixed_locus(&a.weyl.cochar[s.class_rep]);
    let sinv = shift.inv();
    let mut found: BTreeSet<TorusPoint> = BTreeSet::new();
    for &u in &a.elements {
        let p = a.act(u, target).mul(&sinv);
        if fl.component_of(&p) == Some(s.component_index) {
            found.insert(a.canonical_under(&s.residual, &p));
        }
    }
    found.into_iter().collect()
}

/// Canonical W^s-translate of a coset (minimum over the orbit).
pub fn canonical_coset(a: &Action, c: &SubtorusCoset) -> SubtorusCoset {
    a.elements.iter().map(|&w| c.act(&a.weyl.cochar[w])).min().unwrap()
}

/// R(ρ): the images of the non-ordinary strata in T/W^s, as distinct cosets.
pub fn reducibility_subvariety(a: &Action, eq: &ExtendedQuotient) -> Vec<SubtorusCoset> {
    let set: BTreeSet<SubtorusCoset> = eq.strata.iter().filter(|s| !s.is_ordinary).map(|s| canonical_coset(a, &s.component)).collect();
    set.into_iter().collect()
}
