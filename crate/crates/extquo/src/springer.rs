//! Unipotent classes, weighted Dynkin cocharacters and the Springer correspondence,
//! including its extension to disconnected centralizers W(R) ⋊ Γ.

use crate::centralizer::{root_subsystem, CartanType, RootComponent};
use crate::chartable::{character_table, CharacterTable, ClassFn};
use crate::cyclo::Cyc;
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::matrix::{gcd_i64, QMat, Q};
use crate::partition::{conjugate, cycle_type, format_partition, mn_character, partitions};
use crate::root_datum::{pairing, RootDatum, WeylGroup};
use crate::torus::{cocharacter_point, TorusCoordinate, TorusPoint};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::OnceLock;

const G2_DATA: &str = include_str!("../data/g2.json");
const C2_DATA: &str = include_str!("../data/c2.json");

#[derive(Deserialize)]
struct TableFile {
    #[serde(rename = "type")]
    kind: String,
    source: String,
    weyl_classes: Vec<String>,
    weyl_class_sizes: Vec<usize>,
    characters: Vec<CharRow>,
    classes: Vec<ClassRow>,
}

#[derive(Deserialize)]
struct CharRow {
    name: String,
    values: Vec<i64>,
}

#[derive(Deserialize)]
struct ClassRow {
    name: String,
    levi: Vec<String>,
    wdd: Vec<i64>,
    component_group: String,
    springer_rows: Vec<RowSpec>,
}

#[derive(Deserialize)]
struct RowSpec {
    rho: String,
    tau: Option<String>,
}

/// A unipotent class of one simple component.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentClass {
    pub label: String,
    /// Bala–Carter Levi as positions in the component's simple roots.
    pub levi: Vec<usize>,
    pub wdd: Vec<i64>,
    pub component_group: String,
    pub a_x_irreps: Vec<String>,
    /// τ(x, ρ) as an index into the component irreducibles; None for non-geometric ρ.
    pub springer: Vec<Option<usize>>,
}

/// Named irreducible characters of the Weyl group of a simple component and its Springer data.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentTable {
    pub cartan_type: CartanType,
    pub irreps: Vec<String>,
    pub classes: Vec<ComponentClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(skip)]
    class_names: Vec<String>,
    #[serde(skip)]
    values: Vec<Vec<i64>>,
}

fn a_x_irreps(group: &str) -> Result<Vec<String>> {
    Ok(match group {
        "1" => vec!["1".into()],
        "Z2" => vec!["1".into(), "eps".into()],
        "S3" => vec!["1".into(), "r".into(), "sgn".into()],
        g => match g.strip_prefix('Z').and_then(|k| k.parse::<usize>().ok()) {
            Some(k) => (0..k).map(|j| if j == 0 { "1".into() } else { format!("z^{j}") }).collect(),
            None => return Err(Error::Invalid(format!("unknown component group {g}"))),
        },
    })
}

fn load_dihedral(text: &str, expect: &str) -> Result<ComponentTable> {
    let f: TableFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if f.kind != expect || f.source.trim().is_empty() {
        return Err(Error::Inconsistent(format!("table for {expect} lacks type or source")));
    }
    let k = f.weyl_classes.len();
    let order: usize = f.weyl_class_sizes.iter().sum();
    if f.characters.len() != k || f.characters.iter().any(|c| c.values.len() != k) {
        return Err(Error::Inconsistent(format!("{expect} character table is not square")));
    }
    for (i, a) in f.characters.iter().enumerate() {
        for (j, b) in f.characters.iter().enumerate() {
            let s: i64 = (0..k).map(|c| f.weyl_class_sizes[c] as i64 * a.values[c] * b.values[c]).sum();
            if s != if i == j { order as i64 } else { 0 } {
                return Err(Error::Inconsistent(format!("{expect} characters {} and {} are not orthonormal", a.name, b.name)));
            }
        }
    }
    let irreps: Vec<String> = f.characters.iter().map(|c| c.name.clone()).collect();
    let mut classes = Vec::new();
    for c in &f.classes {
        let levi = c
            .levi
            .iter()
            .map(|s| match s.as_str() {
                "short" => Ok(0),
                "long" => Ok(1),
                o => Err(Error::Inconsistent(format!("unknown Levi root {o}"))),
            })
            .collect::<Result<Vec<usize>>>()?;
        let a = a_x_irreps(&c.component_group)?;
        if c.springer_rows.len() != a.len() {
            return Err(Error::Inconsistent(format!("class {} has {} rows for {} characters of A_x", c.name, c.springer_rows.len(), a.len())));
        }
        let mut springer = vec![None; a.len()];
        for r in &c.springer_rows {
            let pos = a.iter().position(|x| *x == r.rho).ok_or_else(|| Error::Inconsistent(format!("unknown ρ {}", r.rho)))?;
            springer[pos] = match &r.tau {
                Some(t) => Some(irreps.iter().position(|x| x == t).ok_or_else(|| Error::Inconsistent(format!("unknown τ {t}")))?),
                None => None,
            };
        }
        classes.push(ComponentClass { label: c.name.clone(), levi, wdd: c.wdd.clone(), component_group: c.component_group.clone(), a_x_irreps: a, springer });
    }
    let cartan_type = if expect == "G2" { CartanType::G2 } else { CartanType::C2 };
    let t = ComponentTable {
        cartan_type,
        irreps,
        classes,
        source: Some(f.source),
        class_names: f.weyl_classes,
        values: f.characters.into_iter().map(|c| c.values).collect(),
    };
    t.validate()?;
    Ok(t)
}

fn type_a_table(n: usize) -> ComponentTable {
    let parts = partitions(n + 1);
    let irreps: Vec<String> = parts.iter().map(|p| format_partition(p)).collect();
    let classes = parts
        .iter()
        .rev()
        .map(|lambda| {
            let mut levi = Vec::new();
            let mut pos = 0;
            for &p in lambda {
                levi.extend(pos..pos + p - 1);
                pos += p;
            }
            let h = type_a_weights(lambda);
            let wdd = (0..n).map(|k| h[k] - h[k + 1]).collect();
            let tau = parts.iter().position(|p| *p == conjugate(lambda)).unwrap();
            ComponentClass { label: format_partition(lambda), levi, wdd, component_group: "1".into(), a_x_irreps: vec!["1".into()], springer: vec![Some(tau)] }
        })
        .collect();
    ComponentTable { cartan_type: CartanType::A(n), irreps, classes, source: None, class_names: Vec::new(), values: Vec::new() }
}

/// Concatenated weights (p−1, p−3, …, 1−p) of the Jordan blocks, sorted decreasingly.
pub fn type_a_weights(lambda: &[usize]) -> Vec<i64> {
    let mut h: Vec<i64> = lambda.iter().flat_map(|&p| (0..p).map(move |i| p as i64 - 1 - 2 * i as i64)).collect();
    h.sort_unstable_by(|a, b| b.cmp(a));
    h
}

static G2_TABLE: OnceLock<std::result::Result<ComponentTable, String>> = OnceLock::new();
static C2_TABLE: OnceLock<std::result::Result<ComponentTable, String>> = OnceLock::new();

/// The character and Springer table of a simple component type.
pub fn component_table(ct: &CartanType) -> Result<ComponentTable> {
    match ct {
        CartanType::A(n) => Ok(type_a_table(*n)),
        CartanType::G2 => G2_TABLE.get_or_init(|| load_dihedral(G2_DATA, "G2").map_err(|e| e.to_string())).clone().map_err(Error::Inconsistent),
        CartanType::C2 => C2_TABLE.get_or_init(|| load_dihedral(C2_DATA, "C2").map_err(|e| e.to_string())).clone().map_err(Error::Inconsistent),
        CartanType::Unsupported(s) => Err(Error::Unsupported(format!("root system component of type {s}"))),
    }
}

impl ComponentTable {
    pub fn trivial(&self) -> usize {
        match self.cartan_type {
            CartanType::A(_) => 0,
            _ => self.irreps.iter().position(|s| s == "1").unwrap(),
        }
    }

    pub fn sign(&self) -> usize {
        match self.cartan_type {
            CartanType::A(_) => self.irreps.len() - 1,
            _ => self.irreps.iter().position(|s| s == "sgn").unwrap(),
        }
    }

    pub fn irrep_index(&self, name: &str) -> Option<usize> {
        self.irreps.iter().position(|s| s == name)
    }

    fn validate(&self) -> Result<()> {
        let mut hit = vec![0; self.irreps.len()];
        for c in &self.classes {
            for t in c.springer.iter().flatten() {
                hit[*t] += 1;
            }
        }
        if hit.iter().any(|&h| h != 1) {
            return Err(Error::Inconsistent(format!("{} Springer map is not a bijection onto Irr(W)", self.cartan_type)));
        }
        let rank = self.classes[0].wdd.len();
        let triv = self.classes.iter().find(|c| c.wdd.iter().all(|&x| x == 0));
        let reg = self.classes.iter().find(|c| c.wdd.iter().all(|&x| x == 2) && c.levi.len() == rank);
        match (triv, reg) {
            (Some(t), Some(r)) if t.springer[0] == Some(self.trivial()) && r.springer[0] == Some(self.sign()) => Ok(()),
            _ => Err(Error::Inconsistent(format!("{} table violates the trivial/regular anchors", self.cartan_type))),
        }
    }

    /// Name of the class of x in W(component): a cycle type for type A, a class name otherwise.
    pub fn class_key(&self, d: &RootDatum, w: &WeylGroup, comp: &RootComponent, x: usize) -> String {
        match self.cartan_type {
            CartanType::A(_) => format_partition(&cycle_type(&comp.permutation(w, x))),
            _ => self.class_names[self.dihedral_class(d, w, comp, x)].clone(),
        }
    }

    fn dihedral_class(&self, d: &RootDatum, w: &WeylGroup, comp: &RootComponent, x: usize) -> usize {
        let o = comp.order(w, x);
        let odd = comp.length(w, x) % 2 == 1;
        let g2 = self.cartan_type == CartanType::G2;
        let name = match (o, odd) {
            (1, _) => "e",
            (2, true) => {
                let b = *comp.positive.iter().find(|&&r| w.root_perm[x][r] == d.negative(r)).expect("a reflection negates its root");
                if d.root_norm(b) > d.root_norm(comp.simple[0]) {
                    "s_long"
                } else {
                    "s_short"
                }
            }
            (2, false) => {
                if g2 {
                    "r3"
                } else {
                    "r2"
                }
            }
            (3, _) => "r2",
            _ => "r",
        };
        self.class_names.iter().position(|s| s == name).unwrap()
    }

    /// Value of the named irreducible `irrep` at x.
    pub fn value(&self, d: &RootDatum, w: &WeylGroup, comp: &RootComponent, irrep: usize, x: usize) -> i64 {
        match self.cartan_type {
            CartanType::A(n) => {
                let lambda = &partitions(n + 1)[irrep];
                mn_character(lambda, &cycle_type(&comp.permutation(w, x)))
            }
            _ => self.values[irrep][self.dihedral_class(d, w, comp, x)],
        }
    }
}

/// A unipotent class of a connected reductive group given by a root subsystem.
#[derive(Clone, Debug, Serialize)]
pub struct UnipotentClass {
    pub label: String,
    /// Class index within each component table.
    pub parts: Vec<usize>,
    /// Bala–Carter Levi as datum root indices.
    pub bala_carter_levi: Vec<usize>,
    pub wdd: Vec<i64>,
    /// The weighted Dynkin cocharacter in X_*.
    pub h_cochar: Vec<i64>,
    pub component_group: String,
    pub a_x_irreps: Vec<String>,
    pub dim_orbit: usize,
    pub distinguished: bool,
}

impl UnipotentClass {
    pub fn is_trivial(&self) -> bool {
        self.h_cochar.iter().all(|&x| x == 0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpringerRow {
    pub class: usize,
    pub rho: usize,
    /// τ(x, ρ) as one irreducible index per component; None when ρ is not geometric.
    pub tau: Option<Vec<usize>>,
    pub tau_label: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpringerTable {
    pub group: String,
    pub roots: Vec<usize>,
    pub components: Vec<RootComponent>,
    pub tables: Vec<ComponentTable>,
    pub classes: Vec<UnipotentClass>,
    pub rows: Vec<SpringerRow>,
}

fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for l in lists {
        out = out
            .into_iter()
            .flat_map(|p| {
                l.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out
}

fn join(parts: &[String]) -> String {
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("⊗")
    }
}

/// h = Σ c_j β_j^∨ with ⟨β_i, h⟩ = wdd_i on the component's simple roots.
fn weighted_cocharacter(d: &RootDatum, comp: &RootComponent, wdd: &[i64]) -> Result<Vec<i64>> {
    let a = comp.cartan(d);
    let k = comp.rank();
    let mut m = QMat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m.set(i, j, Q::from(a[i][j]));
        }
    }
    let b: Vec<Q> = wdd.iter().map(|&x| Q::from(x)).collect();
    let c = m.solve(&b).ok_or_else(|| Error::Inconsistent("singular Cartan matrix".into()))?;
    let mut h = vec![Q::from(0); d.rank];
    for (j, &s) in comp.simple.iter().enumerate() {
        for i in 0..d.rank {
            h[i] += c[j] * Q::from(d.coroots[s][i]);
        }
    }
    h.into_iter()
        .map(|x| if x.is_integer() { Ok(*x.numer()) } else { Err(Error::Inconsistent("weighted Dynkin cocharacter is not integral".into())) })
        .collect()
}

/// Order of the centre seen by a type A semisimple datum: [X^* : ZR].
fn center_index(d: &RootDatum) -> i64 {
    let simple: Vec<Vec<i64>> = d.simple_indices.iter().map(|&i| d.roots[i].clone()).collect();
    crate::matrix::IMat::from_cols(d.rank, &simple).det().abs()
}

/// Springer data of the reductive group with maximal torus T and root system `roots` ⊂ R(G).
/// With `whole = true` the roots are all of R(G) and component groups of SL-type data are enlarged.
pub fn springer_for(d: &RootDatum, roots: &[usize], whole: bool) -> Result<SpringerTable> {
    let (_, _, components) = root_subsystem(d, roots);
    let tables = components.iter().map(|c| component_table(&c.cartan_type)).collect::<Result<Vec<_>>>()?;
    let sl_center =
        if whole && d.is_semisimple() && components.len() == 1 && matches!(components[0].cartan_type, CartanType::A(_)) { center_index(d) } else { 1 };
    let idx: Vec<Vec<usize>> = tables.iter().map(|t| (0..t.classes.len()).collect()).collect();
    let mut classes = Vec::new();
    let mut rows = Vec::new();
    for parts in product(&idx) {
        let mut levi = Vec::new();
        let mut wdd = Vec::new();
        let mut h = vec![0i64; d.rank];
        let mut labels = Vec::new();
        let mut rho_lists = Vec::new();
        for (c, &k) in parts.iter().enumerate() {
            let cc = &tables[c].classes[k];
            levi.extend(cc.levi.iter().map(|&p| components[c].simple[p]));
            wdd.extend(cc.wdd.iter().copied());
            for (hi, x) in h.iter_mut().zip(weighted_cocharacter(d, &components[c], &cc.wdd)?) {
                *hi += x;
            }
            labels.push(cc.label.clone());
            rho_lists.push((0..cc.a_x_irreps.len()).collect::<Vec<usize>>());
        }
        let dim_orbit = roots.len() - roots.iter().filter(|&&r| matches!(pairing(&d.roots[r], &h), 0 | 1)).count();
        let semisimple_rank: usize = components.iter().map(|c| c.rank()).sum();
        let distinguished = levi.len() == semisimple_rank;
        let (component_group, a_x) = if sl_center > 1 {
            let lambda = crate::partition::parse_partition(&labels[0]).unwrap();
            let g = lambda.iter().fold(sl_center, |acc, &p| gcd_i64(acc, p as i64));
            let name = if g == 1 { "1".to_string() } else { format!("Z{g}") };
            let irr = a_x_irreps(&name)?;
            (name, irr)
        } else {
            let names: Vec<String> = parts.iter().enumerate().map(|(c, &k)| tables[c].classes[k].component_group.clone()).filter(|g| g != "1").collect();
            let irr: Vec<String> = product(&parts.iter().enumerate().map(|(c, &k)| tables[c].classes[k].a_x_irreps.clone()).collect::<Vec<_>>())
                .into_iter()
                .map(|p| join(&p))
                .collect();
            (if names.is_empty() { "1".into() } else { names.join("×") }, irr)
        };
        let ci = classes.len();
        let rho_tuples = if sl_center > 1 { (0..a_x.len()).map(|j| vec![j]).collect() } else { product(&rho_lists) };
        for (ri, rt) in rho_tuples.iter().enumerate() {
            let tau: Option<Vec<usize>> = if sl_center > 1 {
                if ri == 0 {
                    Some(vec![tables[0].classes[parts[0]].springer[0].unwrap()])
                } else {
                    None
                }
            } else {
                parts.iter().enumerate().map(|(c, &k)| tables[c].classes[k].springer[rt[c]]).collect()
            };
            let tau_label = tau.as_ref().map(|t| join(&t.iter().enumerate().map(|(c, &i)| tables[c].irreps[i].clone()).collect::<Vec<_>>()));
            rows.push(SpringerRow { class: ci, rho: ri, tau, tau_label });
        }
        classes.push(UnipotentClass {
            label: join(&labels),
            parts,
            bala_carter_levi: levi,
            wdd,
            h_cochar: h,
            component_group,
            a_x_irreps: a_x,
            dim_orbit,
            distinguished,
        });
    }
    let t = SpringerTable { group: d.label.clone(), roots: roots.to_vec(), components, tables, classes, rows };
    t.check_bijection()?;
    Ok(t)
}

/// The unipotent classes of the datum's group.
pub fn unipotent_classes(d: &RootDatum) -> Result<Vec<UnipotentClass>> {
    Ok(springer_table(d)?.classes)
}

pub fn springer_table(d: &RootDatum) -> Result<SpringerTable> {
    let all: Vec<usize> = (0..d.num_roots()).collect();
    springer_for(d, &all, true)
}

/// h_x(z).
pub fn cocharacter_h(x: &UnipotentClass, z: TorusCoordinate) -> TorusPoint {
    cocharacter_point(&x.h_cochar, z)
}

impl SpringerTable {
    fn check_bijection(&self) -> Result<()> {
        let mut seen = BTreeMap::new();
        for r in &self.rows {
            if let Some(t) = &r.tau {
                if seen.insert(t.clone(), r.class).is_some() {
                    return Err(Error::Inconsistent("Springer map is not injective".into()));
                }
            }
        }
        if seen.len() != self.irr_count() {
            return Err(Error::Inconsistent("Springer map is not onto Irr(W)".into()));
        }
        Ok(())
    }

    /// |Irr(W(R))| as the product of the component counts.
    pub fn irr_count(&self) -> usize {
        self.tables.iter().map(|t| t.irreps.len()).product()
    }

    pub fn geometric_rows(&self) -> impl Iterator<Item = &SpringerRow> {
        self.rows.iter().filter(|r| r.tau.is_some())
    }

    pub fn row_for_tau(&self, tau: &[usize]) -> Option<&SpringerRow> {
        self.rows.iter().find(|r| r.tau.as_deref() == Some(tau))
    }

    pub fn row(&self, class: usize, rho: usize) -> Option<&SpringerRow> {
        self.rows.iter().find(|r| r.class == class && r.rho == rho)
    }

    pub fn class_index(&self, parts: &[usize]) -> usize {
        self.classes.iter().position(|c| c.parts == parts).expect("class tuple")
    }

    pub fn trivial_class(&self) -> usize {
        self.classes.iter().position(|c| c.is_trivial()).unwrap()
    }

    /// The class function on a subgroup of W of the tensor product of component irreducibles.
    pub fn tensor_character(&self, d: &RootDatum, w: &WeylGroup, labels: &[usize], sub: &Subgroup, table: &CharacterTable) -> ClassFn {
        (0..table.num_classes())
            .map(|k| {
                let x = sub.embedding[table.classes.rep(k)];
                let v: i64 = self.components.iter().zip(&self.tables).zip(labels).map(|((c, t), &i)| t.value(d, w, c, i, x)).product();
                Cyc::from_int(1, v)
            })
            .collect()
    }

    /// Permutation of components induced by a Weyl element preserving the positive system,
    /// or an error if it does not act by diagram automorphisms.
    pub fn component_permutation(&self, w: &WeylGroup, g: usize) -> Result<Vec<usize>> {
        let simple: Vec<usize> = self.components.iter().flat_map(|c| c.simple.iter().copied()).collect();
        self.components
            .iter()
            .map(|c| {
                let imgs: Vec<usize> = c.simple.iter().map(|&s| w.root_perm[g][s]).collect();
                if imgs.iter().any(|i| !simple.contains(i)) {
                    return Err(Error::Invalid("Γ does not act by diagram automorphisms".into()));
                }
                let target = self.components.iter().position(|k| k.simple.contains(&imgs[0])).unwrap();
                if imgs.iter().any(|i| !self.components[target].simple.contains(i)) {
                    return Err(Error::Invalid("Γ does not act by diagram automorphisms".into()));
                }
                Ok(target)
            })
            .collect()
    }
}

/// A Γ-orbit of Springer pairs together with one σ ∈ Irr(Γ_{[x,ρ]}).
#[derive(Clone, Debug, Serialize)]
pub struct ExtendedPair {
    pub class: usize,
    pub rho: usize,
    pub tau: Vec<usize>,
    pub tau_label: String,
    /// Rows (class, ρ) in the Γ-orbit, the representative first.
    pub orbit: Vec<(usize, usize)>,
    /// Γ_{[x,ρ]} as Weyl element indices.
    pub stabilizer: Vec<usize>,
    pub sigma: usize,
    pub sigma_label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtendedSpringer {
    pub table: SpringerTable,
    pub gamma: Vec<usize>,
    pub pairs: Vec<ExtendedPair>,
    #[serde(skip)]
    pub stabilizer_tables: BTreeMap<Vec<usize>, (Subgroup, CharacterTable)>,
}

pub fn sigma_label(t: &CharacterTable, i: usize) -> String {
    if t.characters[i].iter().all(|v| *v == Cyc::one(1)) {
        "1".into()
    } else if t.num_classes() == 2 {
        "sgn".into()
    } else {
        format!("s{i}")
    }
}

/// Irr(W(R) ⋊ Γ) in terms of Γ-orbits of Springer pairs and characters of their stabilizers.
pub fn extended_springer(d: &RootDatum, w: &WeylGroup, roots: &[usize], gamma: &[usize]) -> Result<ExtendedSpringer> {
    let table = springer_for(d, roots, false)?;
    let (positive, _, _) = root_subsystem(d, roots);
    let mut perms = Vec::new();
    for &g in gamma {
        if positive.iter().any(|&r| !positive.contains(&w.root_perm[g][r])) {
            return Err(Error::Invalid("Γ does not preserve the positive system".into()));
        }
        perms.push(table.component_permutation(w, g)?);
    }
    // γ moves component c to perm[c]; labels travel with their components
    let act = |p: &[usize], lab: &[usize]| -> Vec<usize> {
        let mut out = vec![0; lab.len()];
        for (c, &l) in lab.iter().enumerate() {
            out[p[c]] = l;
        }
        out
    };
    let mut done = vec![false; table.rows.len()];
    let mut pairs = Vec::new();
    let mut stabilizer_tables = BTreeMap::new();
    for (ri, row) in table.rows.iter().enumerate() {
        let tau = match (&row.tau, done[ri]) {
            (Some(t), false) => t.clone(),
            _ => continue,
        };
        let mut orbit = vec![(row.class, row.rho)];
        let mut stab = Vec::new();
        for (gi, &g) in gamma.iter().enumerate() {
            let img = act(&perms[gi], &tau);
            if img == tau {
                stab.push(g);
            }
            let r2 = table.row_for_tau(&img).expect("Γ permutes geometric pairs");
            let j = table.rows.iter().position(|r| std::ptr::eq(r, r2)).unwrap();
            done[j] = true;
            if !orbit.contains(&(r2.class, r2.rho)) {
                orbit.push((r2.class, r2.rho));
            }
        }
        stab.sort_unstable();
        if !stabilizer_tables.contains_key(&stab) {
            let sub = w.group.subgroup(&stab)?;
            let t = character_table(&sub.group)?;
            stabilizer_tables.insert(stab.clone(), (sub, t));
        }
        let (_, st) = &stabilizer_tables[&stab];
        for s in 0..st.num_classes() {
            pairs.push(ExtendedPair {
                class: row.class,
                rho: row.rho,
                tau: tau.clone(),
                tau_label: row.tau_label.clone().unwrap(),
                orbit: orbit.clone(),
                stabilizer: stab.clone(),
                sigma: s,
                sigma_label: sigma_label(st, s),
            });
        }
    }
    Ok(ExtendedSpringer { table, gamma: gamma.to_vec(), pairs, stabilizer_tables })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partition_count;
    use crate::root_datum::{build_root_datum, weyl_group};

    fn geometric(label: &str) -> usize {
        springer_table(&build_root_datum(label).unwrap()).unwrap().geometric_rows().count()
    }

    #[test]
    fn bijection_counts() {
        assert_eq!(geometric("G2"), 6);
        assert_eq!(geometric("C2"), 5);
        for n in 1..=5 {
            assert_eq!(geometric(&format!("GL{n}")), partition_count(n));
        }
        assert_eq!(geometric("A2"), 3);
    }

    #[test]
    fn gl2_regular_cocharacter() {
        let d = build_root_datum("GL2").unwrap();
        let cls = unipotent_classes(&d).unwrap();
        assert_eq!(cls.len(), 2);
        let reg = cls.iter().find(|c| c.label == "(2)").unwrap();
        assert_eq!(reg.h_cochar, vec![1, -1]);
        let p = cocharacter_h(reg, TorusCoordinate::sqrt_q());
        assert_eq!(p.to_string(), "0/1@1/2,0/1@-1/2");
    }

    #[test]
    fn g2_classes() {
        let d = build_root_datum("G2").unwrap();
        let cls = unipotent_classes(&d).unwrap();
        assert_eq!(cls.len(), 5);
        assert_eq!(cls.iter().filter(|c| c.component_group == "S3").count(), 1);
        let dims: Vec<usize> = cls.iter().map(|c| c.dim_orbit).collect();
        assert_eq!(dims, vec![0, 6, 8, 10, 12]);
    }

    #[test]
    fn sl_component_groups() {
        let d = build_root_datum("SL4").unwrap();
        let cls = unipotent_classes(&d).unwrap();
        let reg = cls.iter().find(|c| c.label == "(4)").unwrap();
        assert_eq!(reg.component_group, "Z4");
        let t = cls.iter().find(|c| c.label == "(2,2)").unwrap();
        assert_eq!(t.component_group, "Z2");
        let p = unipotent_classes(&build_root_datum("PGL4").unwrap()).unwrap();
        assert!(p.iter().all(|c| c.component_group == "1"));
    }

    #[test]
    fn extended_examples() {
        let d = build_root_datum("GL2").unwrap();
        let w = weyl_group(&d).unwrap();
        let e = extended_springer(&d, &w, &[], &(0..2).collect::<Vec<_>>()).unwrap();
        assert_eq!(e.pairs.len(), 2);
        let c = build_root_datum("C2").unwrap();
        let wc = weyl_group(&c).unwrap();
        let long: Vec<usize> = (0..c.num_roots()).filter(|&r| c.is_long(r)).collect();
        let swap = wc.reflection_of(&c, c.root_index(&[1, -1]).unwrap());
        let mut gamma = vec![wc.identity, swap];
        gamma.sort();
        let e = extended_springer(&c, &wc, &long, &gamma).unwrap();
        assert_eq!(e.pairs.len(), 5);
        let bad = wc.reflection_of(&c, c.root_index(&[1, 1]).unwrap());
        let mut g2 = vec![wc.identity, bad];
        g2.sort();
        assert!(extended_springer(&c, &wc, &long, &g2).is_err());
    }
}
