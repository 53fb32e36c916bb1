//! Parameters of a principal-series Bernstein component: affine Springer, Kazhdan–Lusztig
//! and KLR parameters, correcting cocharacters θ_z, stratum labels, fibers and L-packets.

use crate::centralizer::CentralizerData;
use crate::chartable::{character_table, ClassFn};
use crate::cirr::CIrr;
use crate::clifford::{clifford_decomposition, conjugate_character, conjugation_action, semidirect_product};
use crate::error::{Error, Result};
use crate::extquo::{stratum_preimages, Action, ExtendedQuotient, SecondKindFiber, Stratum};
use crate::matrix::{smith_normal_form, IMat, Q};
use crate::root_datum::RootDatum;
use crate::springer::{cocharacter_h, extended_springer, springer_for, ExtendedSpringer, SpringerTable, UnipotentClass};
use crate::torus::{cocharacter_point, TorusCoordinate, TorusPoint};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// im c^s, modelled by finite-order generators.
#[derive(Clone, Debug, Serialize)]
pub struct InertialCharacter {
    pub name: String,
    pub generators: Vec<TorusPoint>,
}

/// Group label that a built-in inertial character lives on.
pub fn inertial_builtin_group(name: &str) -> Option<&'static str> {
    match name {
        "pgl2-order2" => Some("PGL2"),
        "so4-in-g2" => Some("G2"),
        _ => None,
    }
}

/// "trivial", a built-in name, or point literals separated by ';'.
pub fn parse_inertial(spec: &str, d: &RootDatum) -> Result<InertialCharacter> {
    let s = spec.trim();
    let gens = match s {
        "" | "trivial" => Vec::new(),
        "pgl2-order2" | "so4-in-g2" => {
            let g = inertial_builtin_group(s).unwrap();
            if d.label != g {
                return Err(Error::Invalid(format!("inertial character {s} lives on {g}, not {}", d.label)));
            }
            vec![TorusPoint::parse(if s == "pgl2-order2" { "1/2" } else { "1/2@0/2,0/1@0/2" })?]
        }
        _ => s.split(';').map(TorusPoint::parse).collect::<Result<Vec<_>>>()?,
    };
    for g in &gens {
        g.check_rank(d.rank)?;
        if !g.is_finite_order() {
            return Err(Error::QExponent);
        }
    }
    Ok(InertialCharacter { name: if s.is_empty() { "trivial".into() } else { s.into() }, generators: gens })
}

pub fn action_for(d: &RootDatum, c: &InertialCharacter) -> Result<Action> {
    Action::new(d.clone(), c.generators.clone())
}

/// H = Z_G(im c^s): its roots, W^s and the component group.
pub fn build_h(d: &RootDatum, c: &InertialCharacter) -> Result<CentralizerData> {
    Ok(action_for(d, c)?.h)
}

/// W^s_t with its character table, for any point (q-exponents handled formally).
pub fn formal_fiber(a: &Action, t: &TorusPoint) -> Result<SecondKindFiber> {
    t.check_rank(a.rank())?;
    let stabilizer = a.point_stabilizer(t)?;
    let subgroup = a.weyl.group.subgroup(&stabilizer.full)?;
    let table = character_table(&subgroup.group)?;
    Ok(SecondKindFiber { point: t.clone(), stabilizer, subgroup, table })
}

/// The affine Springer side at a point: extended Springer pairs and their Clifford images in Irr(W^s_t).
#[derive(Clone, Debug)]
pub struct PointData {
    pub fib: SecondKindFiber,
    pub ext: ExtendedSpringer,
    /// `right[k]` is the index in `fib.table` of Ind(τ̃ ⊗ σ) for extended pair k.
    pub right: Vec<usize>,
}

pub fn analyse_point(a: &Action, t: &TorusPoint) -> Result<PointData> {
    let fib = formal_fiber(a, t)?;
    let cd = &fib.stabilizer;
    let ext = extended_springer(&a.datum, &a.weyl, &cd.roots_trivial, &cd.component_part)?;
    let right = right_map(a, &fib, &ext)?;
    Ok(PointData { fib, ext, right })
}

fn right_map(a: &Action, fib: &SecondKindFiber, ext: &ExtendedSpringer) -> Result<Vec<usize>> {
    let cd = &fib.stabilizer;
    let wg = &a.weyl.group;
    let n_sub = wg.subgroup(&cd.reflection_part)?;
    let g_sub = wg.subgroup(&cd.component_part)?;
    let sp = semidirect_product(&n_sub.group, &g_sub.group, conjugation_action(wg, &n_sub, &g_sub)?)?;
    let cl = clifford_decomposition(&sp)?;
    if !cl.cocycle_trivial {
        return Err(Error::Inconsistent(format!("Clifford cocycle is not trivial at {}", fib.point)));
    }
    let nt = &cl.n_table;
    let to_abstract: HashMap<usize, usize> = (0..sp.group.order())
        .map(|x| {
            let (n, g) = sp.split(x);
            (a.weyl.mul(n_sub.embedding[n], g_sub.embedding[g]), x)
        })
        .collect();
    let mut out = Vec::with_capacity(ext.pairs.len());
    for p in &ext.pairs {
        let tau = ext.table.tensor_character(&a.datum, &a.weyl, &p.tau, &n_sub, nt);
        let ti = nt.index_of(&tau).ok_or_else(|| Error::Inconsistent(format!("τ = {} is not irreducible on W(R_t)", p.tau_label)))?;
        let orbit = cl.orbits.iter().find(|o| o.members.contains(&ti)).unwrap();
        let rep = &nt.characters[orbit.members[0]];
        let g = (0..sp.gamma.order()).find(|&g| conjugate_character(&sp, nt, &tau, g) == *rep).unwrap();
        let gw = g_sub.embedding[g];
        let gwi = a.weyl.inv(gw);
        let mut moved: Vec<usize> = p.stabilizer.iter().map(|&s| a.weyl.mul(a.weyl.mul(gw, s), gwi)).collect();
        moved.sort_unstable();
        let mut clif: Vec<usize> = orbit.stabilizer.iter().map(|&h| g_sub.embedding[h]).collect();
        clif.sort_unstable();
        if moved != clif {
            return Err(Error::Inconsistent(format!("Γ_τ differs from Γ_[x,ρ] for {}", p.tau_label)));
        }
        let (ssub, stable) = &ext.stabilizer_tables[&p.stabilizer];
        let sigma = &stable.characters[p.sigma];
        let st = orbit.stabilizer_table.as_ref().unwrap();
        let sg = orbit.stabilizer_group.as_ref().unwrap();
        let moved_sigma: ClassFn = (0..st.num_classes())
            .map(|c| {
                let s1 = g_sub.embedding[sg.embedding[st.classes.rep(c)]];
                let s0 = a.weyl.mul(a.weyl.mul(gwi, s1), gw);
                let pos = ssub.embedding.iter().position(|&e| e == s0).unwrap();
                stable.value(sigma, pos)
            })
            .collect();
        let si = st.index_of(&moved_sigma).unwrap();
        let chi_abs = orbit.labels.iter().find(|l| l.sigma == si).unwrap().chi;
        let f: ClassFn = (0..fib.table.num_classes())
            .map(|k| {
                let e = fib.subgroup.embedding[fib.table.classes.rep(k)];
                cl.g_table.value(&cl.g_table.characters[chi_abs], to_abstract[&e])
            })
            .collect();
        out.push(fib.table.index_of(&f).ok_or_else(|| Error::Inconsistent("Clifford character does not transport to W_t".into()))?);
    }
    let distinct: BTreeSet<usize> = out.iter().copied().collect();
    if distinct.len() != out.len() || out.len() != fib.table.num_classes() {
        return Err(Error::Inconsistent(format!(
            "extended Springer pairs ({}) do not biject onto Irr(W_t) ({}) at {}",
            out.len(),
            fib.table.num_classes(),
            fib.point
        )));
    }
    Ok(out)
}

/// (t, x, ρ ⋊ σ) with x a unipotent class of M° = Z_H(t)°.
#[derive(Clone, Debug, Serialize)]
pub struct AffineSpringerParam {
    pub t: TorusPoint,
    /// Roots of M°.
    pub m_roots: Vec<usize>,
    pub m_semisimple_rank: usize,
    pub class_index: usize,
    pub class: UnipotentClass,
    pub rho: usize,
    pub rho_label: String,
    /// Γ_{t,[x,ρ]} as Weyl element indices.
    pub stabilizer: Vec<usize>,
    pub sigma: usize,
    pub sigma_label: String,
    pub tau_label: String,
    /// Index of the underlying extended Springer pair.
    pub pair: usize,
}

fn params_from(t: &TorusPoint, ext: &ExtendedSpringer) -> Vec<AffineSpringerParam> {
    let ss: usize = ext.table.components.iter().map(|c| c.rank()).sum();
    ext.pairs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let class = ext.table.classes[p.class].clone();
            AffineSpringerParam {
                t: t.clone(),
                m_roots: ext.table.roots.clone(),
                m_semisimple_rank: ss,
                class_index: p.class,
                rho_label: class.a_x_irreps[p.rho].clone(),
                class,
                rho: p.rho,
                stabilizer: p.stabilizer.clone(),
                sigma: p.sigma,
                sigma_label: p.sigma_label.clone(),
                tau_label: p.tau_label.clone(),
                pair: i,
            }
        })
        .collect()
}

pub fn enumerate_affine_springer(a: &Action, t: &TorusPoint) -> Result<Vec<AffineSpringerParam>> {
    t.check_rank(a.rank())?;
    let cd = a.point_stabilizer(t)?;
    let ext = extended_springer(&a.datum, &a.weyl, &cd.roots_trivial, &cd.component_part)?;
    Ok(params_from(t, &ext))
}

#[derive(Clone, Debug, Serialize)]
pub struct KLParam {
    pub t_q: TorusPoint,
    pub m_roots: Vec<usize>,
    pub class_index: usize,
    pub class: UnipotentClass,
    pub rho: usize,
    pub stabilizer: Vec<usize>,
    pub sigma: usize,
}

pub fn affine_to_kl(p: &AffineSpringerParam) -> KLParam {
    KLParam {
        t_q: p.t.mul(&cocharacter_h(&p.class, TorusCoordinate::sqrt_q())),
        m_roots: p.m_roots.clone(),
        class_index: p.class_index,
        class: p.class.clone(),
        rho: p.rho,
        stabilizer: p.stabilizer.clone(),
        sigma: p.sigma,
    }
}

pub fn kl_to_affine(a: &Action, k: &KLParam) -> Result<AffineSpringerParam> {
    let t = k.t_q.mul(&cocharacter_h(&k.class, TorusCoordinate::sqrt_q()).inv());
    let cd = a.point_stabilizer(&t)?;
    if cd.roots_trivial != k.m_roots {
        return Err(Error::Invalid(format!("t_q = {} is not t·h_x(q^1/2) for x = {}", k.t_q, k.class.label)));
    }
    enumerate_affine_springer(a, &t)?
        .into_iter()
        .find(|p| p.class_index == k.class_index && p.rho == k.rho && p.stabilizer == k.stabilizer && p.sigma == k.sigma)
        .ok_or_else(|| Error::Invalid(format!("no affine Springer parameter with t_q = {}", k.t_q)))
}

/// Unipotent classes of H°, identified by the W^s-orbit of their weighted Dynkin cocharacter.
#[derive(Clone, Debug)]
pub struct HClasses {
    pub table: SpringerTable,
    keys: Vec<Vec<i64>>,
}

fn h_key(a: &Action, h: &[i64]) -> Vec<i64> {
    a.elements.iter().map(|&u| a.weyl.cochar[u].mul_vec(h)).min().unwrap()
}

pub fn h_classes(a: &Action) -> Result<HClasses> {
    let table = springer_for(&a.datum, &a.h.roots_trivial, a.inertial.is_empty())?;
    let keys = table.classes.iter().map(|c| h_key(a, &c.h_cochar)).collect();
    Ok(HClasses { table, keys })
}

impl HClasses {
    pub fn class_of_h(&self, a: &Action, h: &[i64]) -> Result<usize> {
        let k = h_key(a, h);
        let hits: Vec<usize> = (0..self.keys.len()).filter(|&i| self.keys[i] == k).collect();
        match hits.as_slice() {
            [i] => Ok(*i),
            [] => Err(Error::Inconsistent(format!("cocharacter {h:?} matches no unipotent class of H"))),
            _ => Err(Error::AmbiguousLabel(hits.iter().map(|&i| self.table.classes[i].label.clone()).collect::<Vec<_>>().join(", "))),
        }
    }

    pub fn label(&self, i: usize) -> &str {
        &self.table.classes[i].label
    }
}

/// (Φ, ρ): Frobenius image t, unipotent x and the component-group character.
#[derive(Clone, Debug, Serialize)]
pub struct KLRParam {
    pub inertial: Vec<TorusPoint>,
    pub frobenius_image: TorusPoint,
    pub t_q: TorusPoint,
    pub unipotent: UnipotentClass,
    pub h_class: usize,
    pub h_label: String,
    pub h_levi: Vec<usize>,
    pub rho_label: String,
    pub sigma_label: String,
    pub m_semisimple_rank: usize,
    pub spherical: bool,
    /// W^s-canonical (t, h_x), the L-packet key together with `h_class`.
    pub key_t: TorusPoint,
    pub key_h: Vec<i64>,
}

pub fn to_klr(a: &Action, hc: &HClasses, p: &AffineSpringerParam) -> Result<KLRParam> {
    let h_class = hc.class_of_h(a, &p.class.h_cochar)?;
    let (key_t, key_h) = a.elements.iter().map(|&u| (a.act(u, &p.t), a.weyl.cochar[u].mul_vec(&p.class.h_cochar))).min().unwrap();
    Ok(KLRParam {
        inertial: a.inertial.clone(),
        frobenius_image: a.canonical(&p.t),
        t_q: a.canonical(&affine_to_kl(p).t_q),
        unipotent: p.class.clone(),
        h_class,
        h_label: hc.label(h_class).to_string(),
        h_levi: hc.table.classes[h_class].bala_carter_levi.clone(),
        rho_label: p.rho_label.clone(),
        sigma_label: p.sigma_label.clone(),
        m_semisimple_rank: p.m_semisimple_rank,
        spherical: p.class.is_trivial() && p.rho == 0 && p.sigma_label == "1",
        key_t,
        key_h,
    })
}

pub fn is_tempered(p: &KLRParam) -> bool {
    p.frobenius_image.is_finite_order() && p.inertial.iter().all(|g| g.is_finite_order())
}

pub fn is_essentially_discrete(d: &RootDatum, p: &KLRParam) -> bool {
    p.unipotent.distinguished && p.m_semisimple_rank == d.semisimple_rank()
}

/// Packet ids in order of first appearance.
pub fn l_packets(params: &[KLRParam]) -> Vec<usize> {
    let mut ids: BTreeMap<(usize, &TorusPoint, &Vec<i64>), usize> = BTreeMap::new();
    params
        .iter()
        .map(|p| {
            let n = ids.len();
            *ids.entry((p.h_class, &p.key_t, &p.key_h)).or_insert(n)
        })
        .collect()
}

pub fn spherical_param(a: &Action, hc: &HClasses, t: &TorusPoint) -> Result<KLRParam> {
    let ps = enumerate_affine_springer(a, t)?;
    let p =
        ps.iter().find(|p| p.class.is_trivial() && p.rho == 0 && p.sigma_label == "1").ok_or_else(|| Error::Inconsistent("no spherical parameter".into()))?;
    to_klr(a, hc, p)
}

/// All KLR parameters whose infinitesimal character t·h_x(q^{1/2}) is W^s-conjugate to `t_q`.
pub fn params_with_infinitesimal_character(a: &Action, hc: &HClasses, t_q: &TorusPoint) -> Result<Vec<KLRParam>> {
    t_q.check_rank(a.rank())?;
    let target = a.canonical(t_q);
    let sq = TorusCoordinate::sqrt_q();
    let mut hs: BTreeSet<Vec<i64>> = BTreeSet::new();
    for c in &hc.table.classes {
        for &u in &a.elements {
            hs.insert(a.weyl.cochar[u].mul_vec(&c.h_cochar));
        }
    }
    let mut ts: BTreeSet<TorusPoint> = BTreeSet::new();
    for p in a.orbit(&target) {
        for h in &hs {
            ts.insert(a.canonical(&p.mul(&cocharacter_point(h, sq).inv())));
        }
    }
    let mut out = Vec::new();
    for t in ts {
        for p in enumerate_affine_springer(a, &t)? {
            if a.canonical(&affine_to_kl(&p).t_q) == target {
                out.push(to_klr(a, hc, &p)?);
            }
        }
    }
    Ok(out)
}

/// The unipotent label of a stratum and the cocharacter used by θ_z on it.
#[derive(Clone, Debug, Serialize)]
pub struct StratumLabel {
    pub stratum: usize,
    /// The point at which the label was read off.
    pub point: TorusPoint,
    pub h_class: usize,
    pub label: String,
    pub levi: Vec<usize>,
    /// The class in M° = Z_H(point)° and its cocharacter.
    pub m_class: String,
    pub h: Vec<i64>,
    pub rho: String,
    pub sigma: String,
}

/// Label of the point (w, p): ψ_p([w]) read through the extended Springer correspondence.
pub fn label_point(a: &Action, hc: &HClasses, sys: &dyn CIrr, pd: &PointData, w: usize) -> Result<(usize, usize)> {
    let chi = sys.psi(a, &pd.fib, w)?;
    let pair = pd.right.iter().position(|&c| c == chi).unwrap();
    let class = &pd.ext.table.classes[pd.ext.pairs[pair].class];
    Ok((pair, hc.class_of_h(a, &class.h_cochar)?))
}

pub fn label_strata(a: &Action, eq: &ExtendedQuotient, sys: &dyn CIrr) -> Result<Vec<StratumLabel>> {
    label_strata_each(a, eq, sys)?.into_iter().collect()
}

/// Labels stratum by stratum, keeping per-stratum failures.
pub fn label_strata_each(a: &Action, eq: &ExtendedQuotient, sys: &dyn CIrr) -> Result<Vec<Result<StratumLabel>>> {
    let hc = h_classes(a)?;
    let per: Vec<Result<StratumLabel>> = crate::par::map(&eq.strata.iter().enumerate().collect::<Vec<_>>(), |&(i, s)| {
        let p = s.component.generic_point();
        let pd = analyse_point(a, &p)?;
        let (pair, h_class) = label_point(a, &hc, sys, &pd, s.class_rep)?;
        let ep = &pd.ext.pairs[pair];
        let class = &pd.ext.table.classes[ep.class];
        for &r in &class.bala_carter_levi {
            let root = &a.datum.roots[r];
            if !s.component.base.evaluate(root).is_one() || s.component.lattice.iter().any(|l| crate::root_datum::pairing(root, l) != 0) {
                return Err(Error::Inconsistent(format!("stratum {i} does not lie in Z_T(im γ_x) for x = {}", class.label)));
            }
        }
        Ok(StratumLabel {
            stratum: i,
            point: p,
            h_class,
            label: hc.label(h_class).to_string(),
            levi: hc.table.classes[h_class].bala_carter_levi.clone(),
            m_class: class.label.clone(),
            h: class.h_cochar.clone(),
            rho: class.a_x_irreps[ep.rho].clone(),
            sigma: ep.sigma_label.clone(),
        })
    });
    Ok(per)
}

/// θ_z(p) = canonical form of p·h(z).
pub fn theta_z(a: &Action, s: &Stratum, label: &StratumLabel, z: TorusCoordinate, p: &TorusPoint) -> Result<TorusPoint> {
    p.check_rank(a.rank())?;
    if !s.component.contains(p) {
        return Err(Error::OffCoset);
    }
    Ok(a.canonical(&p.mul(&cocharacter_point(&label.h, z))))
}

/// Stratum points (up to the residual group) with θ_z-image W^s-conjugate to `target`.
pub fn theta_fiber(a: &Action, eq: &ExtendedQuotient, labels: &[StratumLabel], target: &TorusPoint, z: TorusCoordinate) -> Vec<(usize, TorusPoint)> {
    eq.strata
        .iter()
        .zip(labels)
        .enumerate()
        .flat_map(|(i, (s, l))| {
            let shift = cocharacter_point(&l.h, z);
            stratum_preimages(a, s, target, &shift).into_iter().map(move |p| (i, p))
        })
        .collect()
}

/// (#(x, ρ^s), #(x, π^s)): preimages under θ_1 and θ_{√q}.
pub fn fiber_counts(a: &Action, eq: &ExtendedQuotient, labels: &[StratumLabel], point: &TorusPoint) -> (usize, usize) {
    (theta_fiber(a, eq, labels, point, TorusCoordinate::one()).len(), theta_fiber(a, eq, labels, point, TorusCoordinate::sqrt_q()).len())
}

/// Points of θ_z(S1) ∩ θ_z(S2) when the dimensions are complementary (finitely many).
pub fn image_intersections(a: &Action, s1: &Stratum, l1: &StratumLabel, s2: &Stratum, l2: &StratumLabel, z: TorusCoordinate) -> Result<Vec<TorusPoint>> {
    let n = a.rank();
    let (d1, d2) = (s1.dim, s2.dim);
    if d1 + d2 != n {
        return Err(Error::Unsupported("intersection of strata with non-complementary dimensions".into()));
    }
    let b1 = s1.component.base.mul(&cocharacter_point(&l1.h, z));
    let b2 = s2.component.base.mul(&cocharacter_point(&l2.h, z));
    let mut found = BTreeSet::new();
    for &u in &a.elements {
        let b = &a.weyl.cochar[u];
        let mut cols: Vec<Vec<i64>> = s1.component.lattice.iter().map(|l| b.mul_vec(l)).collect();
        cols.extend(s2.component.lattice.iter().map(|l| l.iter().map(|x| -x).collect::<Vec<_>>()));
        let m = IMat::from_cols(n, &cols);
        if m.det() == 0 {
            continue;
        }
        let c = b2.mul(&a.act(u, &b1).inv());
        let e = m.to_q().solve(&c.qexps()).unwrap();
        let (uu, s, v) = smith_normal_form(&m);
        let rhs = uu.mul_qvec(&c.phases());
        let diag: Vec<i64> = (0..n).map(|i| s.get(i, i).abs()).collect();
        let mut ks: Vec<Vec<i64>> = vec![Vec::new()];
        for &di in &diag {
            ks = ks.into_iter().flat_map(|k| (0..di).map(move |j| [k.clone(), vec![j]].concat())).collect();
        }
        for k in ks {
            let yp: Vec<Q> = (0..n).map(|i| (rhs[i] + Q::from(k[i])) / Q::from(s.get(i, i))).collect();
            let y = v.mul_qvec(&yp);
            let z2: Vec<TorusCoordinate> = (d1..n).map(|j| TorusCoordinate::new(y[j], e[j])).collect();
            let p = s2.component.point_at(&z2);
            debug_assert!(s2.component.contains(&p));
            found.insert(a.canonical(&p.mul(&cocharacter_point(&l2.h, z))));
        }
    }
    Ok(found.into_iter().collect())
}

/// A W^s-translate of p lying on the stratum's component, if any.
pub fn move_onto(a: &Action, s: &Stratum, p: &TorusPoint) -> Option<TorusPoint> {
    a.elements.iter().map(|&u| a.act(u, p)).find(|q| s.component.contains(q))
}

/// Whether p1 ≠ p2 (up to the residual group) on one stratum have the same θ_z-image.
pub fn theta_identifies(a: &Action, s: &Stratum, l: &StratumLabel, z: TorusCoordinate, p1: &TorusPoint, p2: &TorusPoint) -> Result<bool> {
    let i1 = theta_z(a, s, l, z, p1)?;
    let i2 = theta_z(a, s, l, z, p2)?;
    let distinct = a.canonical_under(&s.residual, p1) != a.canonical_under(&s.residual, p2);
    Ok(distinct && i1 == i2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cirr::StandardCIrr;
    use crate::extquo::extended_quotient_first;
    use crate::root_datum::build_root_datum;

    fn setup(label: &str) -> (Action, ExtendedQuotient, Vec<StratumLabel>) {
        let a = Action::unramified(build_root_datum(label).unwrap()).unwrap();
        let eq = extended_quotient_first(&a).unwrap();
        let l = label_strata(&a, &eq, &StandardCIrr::default()).unwrap();
        (a, eq, l)
    }

    #[test]
    fn enumeration_counts() {
        let a = Action::unramified(build_root_datum("GL2").unwrap()).unwrap();
        assert_eq!(enumerate_affine_springer(&a, &TorusPoint::identity(2)).unwrap().len(), 2);
        assert_eq!(enumerate_affine_springer(&a, &TorusPoint::parse("1/1009,1/1013").unwrap()).unwrap().len(), 1);
        let p = Action::unramified(build_root_datum("PGL2").unwrap()).unwrap();
        let ps = enumerate_affine_springer(&p, &TorusPoint::parse("1/2").unwrap()).unwrap();
        assert_eq!(ps.len(), 2);
        let hc = h_classes(&p).unwrap();
        let sph = spherical_param(&p, &hc, &TorusPoint::parse("1/2").unwrap()).unwrap();
        assert!(sph.spherical);
    }

    #[test]
    fn kl_round_trip() {
        let a = Action::unramified(build_root_datum("G2").unwrap()).unwrap();
        for p in enumerate_affine_springer(&a, &TorusPoint::identity(2)).unwrap() {
            let k = affine_to_kl(&p);
            let back = kl_to_affine(&a, &k).unwrap();
            assert_eq!(back.pair, p.pair);
        }
        let g = Action::unramified(build_root_datum("GL2").unwrap()).unwrap();
        let t = TorusPoint::parse("1/5,1/5").unwrap();
        let reg = enumerate_affine_springer(&g, &t).unwrap().into_iter().find(|p| p.class.label == "(2)").unwrap();
        assert_eq!(affine_to_kl(&reg).t_q.to_string(), "1/5@1/2,1/5@-1/2");
    }

    #[test]
    fn g2_labels_and_fiber() {
        let (a, eq, l) = setup("G2");
        assert_eq!(l[0].label, "1");
        let target = TorusPoint::parse("0/1@-2/2,0/1@0/2").unwrap();
        let f = theta_fiber(&a, &eq, &l, &target, TorusCoordinate::sqrt_q());
        assert_eq!(f.len(), 5, "{f:?}");
        let hc = h_classes(&a).unwrap();
        assert_eq!(params_with_infinitesimal_character(&a, &hc, &target).unwrap().len(), 5);
    }

    #[test]
    fn g2_curve_intersections() {
        let (a, eq, l) = setup("G2");
        let curves: Vec<usize> = (0..eq.strata.len()).filter(|&i| eq.strata[i].dim == 1).collect();
        assert_eq!(curves.len(), 2);
        let (c1, c2) = (curves[0], curves[1]);
        let pts = image_intersections(&a, &eq.strata[c1], &l[c1], &eq.strata[c2], &l[c2], TorusCoordinate::sqrt_q()).unwrap();
        assert_eq!(pts.len(), 3, "{pts:?}");
    }

    #[test]
    fn g2_self_intersection() {
        let (a, eq, l) = setup("G2");
        let c = (0..eq.strata.len()).find(|&i| eq.strata[i].dim == 1 && l[i].label == "A1").unwrap();
        let p1 = move_onto(&a, &eq.strata[c], &TorusPoint::parse("1/3@-1/2,1/3@-1/2").unwrap()).unwrap();
        let p2 = move_onto(&a, &eq.strata[c], &TorusPoint::parse("2/3@-1/2,2/3@-1/2").unwrap()).unwrap();
        assert!(theta_identifies(&a, &eq.strata[c], &l[c], TorusCoordinate::sqrt_q(), &p1, &p2).unwrap());
    }
}
