//! Semidirect products N ⋊ Γ and the Clifford decomposition of their irreducible characters.

use crate::chartable::{character_table, induce, CharacterTable, ClassFn};
use crate::cyclo::Cyc;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupTag, Subgroup};
use crate::matrix::Q;
use num_traits::{One, Zero};
use serde::Serialize;

/// N ⋊ Γ with (n, γ) stored at index `n + |N|·γ`.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    pub n: FiniteGroup,
    pub gamma: FiniteGroup,
    /// `action[γ][n]` is the image of n under the automorphism attached to γ.
    pub action: Vec<Vec<usize>>,
}

impl SemidirectProduct {
    pub fn element(&self, n: usize, g: usize) -> usize {
        n + self.n.order() * g
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        (x % self.n.order(), x / self.n.order())
    }

    pub fn n_elements(&self) -> Vec<usize> {
        (0..self.n.order()).map(|n| self.element(n, self.gamma.identity())).collect()
    }

    pub fn gamma_elements(&self, gammas: &[usize]) -> Vec<usize> {
        gammas.iter().map(|&g| self.element(self.n.identity(), g)).collect()
    }
}

/// Form N ⋊ Γ; the action must be a homomorphism Γ → Aut(N).
pub fn semidirect_product(n: &FiniteGroup, gamma: &FiniteGroup, action: Vec<Vec<usize>>) -> Result<SemidirectProduct> {
    let (no, go) = (n.order(), gamma.order());
    if action.len() != go || action.iter().any(|a| a.len() != no) {
        return Err(Error::Invalid("action has the wrong shape".into()));
    }
    for a in &action {
        let mut seen = vec![false; no];
        for &x in a {
            if x >= no || seen[x] {
                return Err(Error::Invalid("action map is not a permutation of N".into()));
            }
            seen[x] = true;
        }
        for x in 0..no {
            for y in 0..no {
                if a[n.mul(x, y)] != n.mul(a[x], a[y]) {
                    return Err(Error::Invalid("action map is not an automorphism of N".into()));
                }
            }
        }
    }
    for g in 0..go {
        for h in 0..go {
            let gh = gamma.mul(g, h);
            if (0..no).any(|x| action[gh][x] != action[g][action[h][x]]) {
                return Err(Error::Invalid("action is not a homomorphism into Aut(N)".into()));
            }
        }
    }
    let m = no * go;
    let mut table = vec![0u32; m * m];
    for x in 0..m {
        let (n1, g1) = (x % no, x / no);
        for y in 0..m {
            let (n2, g2) = (y % no, y / no);
            let nn = n.mul(n1, action[g1][n2]);
            table[x * m + y] = (nn + no * gamma.mul(g1, g2)) as u32;
        }
    }
    let group = FiniteGroup::from_table(m, table, GroupTag::Semidirect { n_order: no, gamma_order: go })?;
    Ok(SemidirectProduct { group, n: n.clone(), gamma: gamma.clone(), action })
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordLabel {
    /// Index of σ in the character table of Γ_τ.
    pub sigma: usize,
    /// Index of χ = Ind(τ̃ ⊗ σ) in the table of G.
    pub chi: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordOrbit {
    /// Indices into Irr(N); the first is the orbit representative τ.
    pub members: Vec<usize>,
    /// Γ_τ as Γ element indices.
    pub stabilizer: Vec<usize>,
    /// Irr(G) indices lying over the orbit.
    pub over: Vec<usize>,
    /// ⟨Res_N χ, τ⟩ for each χ in `over`.
    #[serde(serialize_with = "crate::matrix::ser_qvec")]
    pub multiplicities: Vec<Q>,
    pub stabilizer_irr_count: usize,
    pub cocycle_trivial: bool,
    pub labels: Vec<CliffordLabel>,
    #[serde(skip)]
    pub stabilizer_table: Option<CharacterTable>,
    #[serde(skip)]
    pub stabilizer_group: Option<Subgroup>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordDecomposition {
    #[serde(skip)]
    pub n_table: CharacterTable,
    #[serde(skip)]
    pub g_table: CharacterTable,
    pub orbits: Vec<CliffordOrbit>,
    pub cocycle_trivial: bool,
}

impl CliffordDecomposition {
    /// The (orbit, σ) label of an irreducible character of G, if recorded.
    pub fn label_of(&self, chi: usize) -> Option<(usize, usize)> {
        self.orbits.iter().enumerate().find_map(|(o, orb)| orb.labels.iter().find(|l| l.chi == chi).map(|l| (o, l.sigma)))
    }
}

/// γ·τ, i.e. n ↦ τ(φ_γ⁻¹(n)).
pub fn conjugate_character(sp: &SemidirectProduct, nt: &CharacterTable, tau: &ClassFn, g: usize) -> ClassFn {
    let ginv = sp.gamma.inv(g);
    (0..nt.num_classes()).map(|c| tau[nt.classes.class_of[sp.action[ginv][nt.classes.rep(c)]]].clone()).collect()
}

fn lex_key(f: &ClassFn, n: u32) -> Vec<Vec<Q>> {
    f.iter().map(|v| v.lift(n).coeffs().to_vec()).collect()
}

pub fn clifford_decomposition(sp: &SemidirectProduct) -> Result<CliffordDecomposition> {
    let nt = character_table(&sp.n)?;
    let gt = character_table(&sp.group)?;
    let n_sub = sp.group.subgroup(&sp.n_elements())?;
    let mut assigned = vec![false; nt.num_classes()];
    let mut orbits = Vec::new();
    for t in 0..nt.num_classes() {
        if assigned[t] {
            continue;
        }
        let tau = &nt.characters[t];
        let mut members = vec![t];
        let mut stabilizer = Vec::new();
        for g in 0..sp.gamma.order() {
            let c = conjugate_character(sp, &nt, tau, g);
            let idx = nt.index_of(&c).ok_or_else(|| Error::Inconsistent("conjugate of an irreducible is not irreducible".into()))?;
            if idx == t {
                stabilizer.push(g);
            } else if !members.contains(&idx) {
                members.push(idx);
            }
        }
        for &m in &members {
            assigned[m] = true;
        }
        // characters of G over the orbit
        let mut over = Vec::new();
        let mut multiplicities = Vec::new();
        for (ci, chi) in gt.characters.iter().enumerate() {
            let res: ClassFn = (0..nt.num_classes()).map(|c| chi[gt.classes.class_of[n_sub.embedding[c_rep_in_sub(&nt, &n_sub, c)]]].clone()).collect();
            let m = nt.inner(&res, tau);
            if !m.is_zero() {
                over.push(ci);
                multiplicities.push(m);
            }
        }
        let gamma_tau = sp.gamma.subgroup(&stabilizer)?;
        let gamma_tau_table = character_table(&gamma_tau.group)?;
        let count = gamma_tau_table.num_classes();
        let mut cocycle_trivial = over.len() == count;
        let mut labels = Vec::new();
        if cocycle_trivial {
            match label_orbit(sp, &nt, &gt, t, &stabilizer, &gamma_tau, &gamma_tau_table)? {
                Some(l) => labels = l,
                None => cocycle_trivial = false,
            }
        }
        orbits.push(CliffordOrbit {
            members,
            stabilizer,
            over,
            multiplicities,
            stabilizer_irr_count: count,
            cocycle_trivial,
            labels,
            stabilizer_table: Some(gamma_tau_table),
            stabilizer_group: Some(gamma_tau),
        });
    }
    let cocycle_trivial = orbits.iter().all(|o| o.cocycle_trivial);
    Ok(CliffordDecomposition { n_table: nt, g_table: gt, orbits, cocycle_trivial })
}

// The N-class representatives are N element indices; in the subgroup N ≤ G the
// element n sits at position n (n_elements lists them in order).
fn c_rep_in_sub(nt: &CharacterTable, _sub: &Subgroup, c: usize) -> usize {
    nt.classes.rep(c)
}

/// Choose the canonical extension τ̃ of τ to N ⋊ Γ_τ and label the characters over τ
/// as Ind(τ̃ ⊗ σ). Returns None if τ has no extension or an induced character is reducible.
fn label_orbit(
    sp: &SemidirectProduct,
    nt: &CharacterTable,
    gt: &CharacterTable,
    t: usize,
    stabilizer: &[usize],
    gamma_tau: &Subgroup,
    gamma_tau_table: &CharacterTable,
) -> Result<Option<Vec<CliffordLabel>>> {
    let tau = &nt.characters[t];
    let gt_elems: Vec<usize> = stabilizer.iter().flat_map(|&g| (0..sp.n.order()).map(move |n| (n, g))).map(|(n, g)| sp.element(n, g)).collect();
    let mut gt_elems = gt_elems;
    gt_elems.sort_unstable();
    let g_tau = sp.group.subgroup(&gt_elems)?;
    let g_tau_table = character_table(&g_tau.group)?;
    let pos = |x: usize| g_tau.embedding.binary_search(&x).expect("element of N ⋊ Γ_τ");
    let gamma_pos = |g: usize| gamma_tau.embedding.iter().position(|&e| e == g).expect("element of Γ_τ");

    let extends = |psi: &ClassFn| (0..sp.n.order()).all(|n| g_tau_table.value(psi, pos(sp.element(n, sp.gamma.identity()))) == nt.value(tau, n));
    let candidates: Vec<usize> = (0..g_tau_table.num_classes()).filter(|&i| extends(&g_tau_table.characters[i])).collect();
    if candidates.is_empty() {
        return Ok(None);
    }
    let tau_trivial = tau.iter().all(|v| *v == Cyc::one(1));
    let fixed_mult = |i: usize| -> Q {
        let psi = &g_tau_table.characters[i];
        let mut s = Cyc::zero(1);
        for &g in stabilizer {
            s = &s + &g_tau_table.value(psi, pos(sp.element(sp.n.identity(), g)));
        }
        s.scale(Q::new(1, stabilizer.len() as i64)).to_rational().unwrap()
    };
    let ext = if tau_trivial {
        *candidates.iter().find(|&&i| g_tau_table.characters[i].iter().all(|v| *v == Cyc::one(1))).expect("trivial character extends")
    } else {
        let e = g_tau_table.exponent;
        *candidates
            .iter()
            .max_by(|&&a, &&b| {
                fixed_mult(a).cmp(&fixed_mult(b)).then_with(|| lex_key(&g_tau_table.characters[b], e).cmp(&lex_key(&g_tau_table.characters[a], e)))
            })
            .unwrap()
    };
    let tilde = &g_tau_table.characters[ext];
    let mut labels = Vec::new();
    for (si, sigma) in gamma_tau_table.characters.iter().enumerate() {
        let psi: ClassFn = (0..g_tau_table.num_classes())
            .map(|c| {
                let x = g_tau.embedding[g_tau_table.classes.rep(c)];
                let (_, g) = sp.split(x);
                &tilde[c] * &gamma_tau_table.value(sigma, gamma_pos(g))
            })
            .collect();
        let ind = induce(&sp.group, gt, &g_tau, &g_tau_table, &psi);
        match gt.index_of(&ind) {
            Some(chi) => labels.push(CliffordLabel { sigma: si, chi }),
            None => return Ok(None),
        }
    }
    let _ = Q::one();
    Ok(Some(labels))
}

/// Action of Γ on N by conjugation inside an ambient group, for N, Γ given as
/// subgroups of the same group. Returns the permutation table expected by
/// `semidirect_product`.
pub fn conjugation_action(ambient: &FiniteGroup, n: &Subgroup, gamma: &Subgroup) -> Result<Vec<Vec<usize>>> {
    let pos: std::collections::HashMap<usize, usize> = n.embedding.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    gamma
        .embedding
        .iter()
        .map(|&g| n.embedding.iter().map(|&x| pos.get(&ambient.conj(g, x)).copied().ok_or_else(|| Error::Invalid("Γ does not normalize N".into()))).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_as_semidirect() {
        let z3 = FiniteGroup::cyclic(3);
        let z2 = FiniteGroup::cyclic(2);
        let act = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let sp = semidirect_product(&z3, &z2, act).unwrap();
        assert_eq!(sp.group.order(), 6);
        let cd = clifford_decomposition(&sp).unwrap();
        assert!(cd.cocycle_trivial);
        let mut counts: Vec<usize> = cd.orbits.iter().map(|o| o.over.len()).collect();
        counts.sort();
        assert_eq!(counts, vec![1, 2]);
        assert_eq!(cd.g_table.degrees, vec![1, 1, 2]);
    }

    #[test]
    fn trivial_gamma() {
        let z4 = FiniteGroup::cyclic(4);
        let sp = semidirect_product(&z4, &FiniteGroup::trivial(), vec![vec![0, 1, 2, 3]]).unwrap();
        let cd = clifford_decomposition(&sp).unwrap();
        assert_eq!(cd.orbits.len(), 4);
        assert!(cd.orbits.iter().all(|o| o.stabilizer.len() == 1 && o.over.len() == 1));
    }

    #[test]
    fn rejects_non_automorphism() {
        let z3 = FiniteGroup::cyclic(3);
        let z2 = FiniteGroup::cyclic(2);
        assert!(semidirect_product(&z3, &z2, vec![vec![0, 1, 2], vec![0, 0, 1]]).is_err());
    }
}
