//! Stabilizers W_t = W(R_t) ⋊ Γ_t of torus points and the structure of R_t.

use crate::error::{Error, Result};
use crate::matrix::{QMat, Q};
use crate::root_datum::{pairing, RootDatum, WeylGroup};
use crate::torus::TorusPoint;
use num_traits::Zero;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CartanType {
    A(usize),
    C2,
    G2,
    Unsupported(String),
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::C2 => write!(f, "C2"),
            CartanType::G2 => write!(f, "G2"),
            CartanType::Unsupported(s) => write!(f, "{s}"),
        }
    }
}

/// An irreducible component of a root subsystem.
#[derive(Clone, Debug, Serialize)]
pub struct RootComponent {
    pub cartan_type: CartanType,
    /// Simple roots as datum root indices: chain order for type A, [short, long] for C2 and G2.
    pub simple: Vec<usize>,
    pub roots: Vec<usize>,
    pub positive: Vec<usize>,
    /// Type A only: root `roots[k]` is ε_i − ε_j for `pairs[k] = (i, j)`.
    #[serde(skip)]
    pub pairs: Vec<(usize, usize)>,
}

impl RootComponent {
    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    /// Cartan matrix ⟨β_i, β_j^∨⟩ in the order of `simple`.
    pub fn cartan(&self, d: &RootDatum) -> Vec<Vec<i64>> {
        self.simple.iter().map(|&i| self.simple.iter().map(|&j| pairing(&d.roots[i], &d.coroots[j])).collect()).collect()
    }

    /// Permutation of `roots` positions induced by w (which must preserve the component).
    pub fn root_action(&self, w: &WeylGroup, x: usize) -> Vec<usize> {
        self.roots
            .iter()
            .map(|&r| {
                let img = w.root_perm[x][r];
                self.roots.iter().position(|&s| s == img).expect("w preserves the component")
            })
            .collect()
    }

    /// Number of positive roots of the component made negative by w.
    pub fn length(&self, w: &WeylGroup, x: usize) -> usize {
        self.positive.iter().filter(|&&r| !self.positive.contains(&w.root_perm[x][r])).count()
    }

    /// Order of w restricted to the span of the component.
    pub fn order(&self, w: &WeylGroup, x: usize) -> usize {
        let p = self.root_action(w, x);
        let mut cur = p.clone();
        let mut k = 1;
        while cur.iter().enumerate().any(|(i, &j)| i != j) {
            cur = cur.iter().map(|&j| p[j]).collect();
            k += 1;
        }
        k
    }

    /// Type A only: the permutation of {0, …, n} induced by w.
    pub fn permutation(&self, w: &WeylGroup, x: usize) -> Vec<usize> {
        let n = self.rank() + 1;
        let act = self.root_action(w, x);
        (0..n)
            .map(|i| {
                let j = if i == 0 { 1 } else { 0 };
                let k = self.pairs.iter().position(|&p| p == (i, j)).unwrap();
                self.pairs[act[k]].0
            })
            .collect()
    }
}

/// R_t, its positive and simple systems and the factorization W_t = W(R_t) ⋊ Γ_t.
#[derive(Clone, Debug, Serialize)]
pub struct CentralizerData {
    pub points: Vec<TorusPoint>,
    pub roots_trivial: Vec<usize>,
    pub positive: Vec<usize>,
    pub simple: Vec<usize>,
    pub components: Vec<RootComponent>,
    /// W(R_t) as sorted Weyl element indices.
    pub reflection_part: Vec<usize>,
    /// Γ_t: the elements of W_t preserving the positive system of R_t.
    pub component_part: Vec<usize>,
    /// W_t.
    pub full: Vec<usize>,
}

impl CentralizerData {
    pub fn is_connected(&self) -> bool {
        self.component_part.len() == 1
    }

    /// Semisimple rank of the centralizer.
    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }
}

/// Roots α with α(t) = 1 for every listed point (exact, on phase and q-exponent).
pub fn roots_trivial_on(d: &RootDatum, points: &[TorusPoint]) -> Vec<usize> {
    (0..d.num_roots()).filter(|&i| points.iter().all(|t| t.evaluate(&d.roots[i]).is_one())).collect()
}

fn coefficients(d: &RootDatum, simple: &[usize], r: usize) -> Vec<Q> {
    let mut m = QMat::zeros(d.rank, simple.len());
    for (j, &s) in simple.iter().enumerate() {
        for i in 0..d.rank {
            m.set(i, j, Q::from(d.roots[s][i]));
        }
    }
    let b: Vec<Q> = d.roots[r].iter().map(|&x| Q::from(x)).collect();
    m.solve(&b).expect("root lies in the span of the simple roots")
}

/// Positive system (induced from the ambient one), simple system and components
/// of a closed root subsystem given by datum root indices.
pub fn root_subsystem(d: &RootDatum, roots: &[usize]) -> (Vec<usize>, Vec<usize>, Vec<RootComponent>) {
    let positive: Vec<usize> = roots.iter().copied().filter(|&i| d.is_positive(i)).collect();
    let simple: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&i| {
            !positive.iter().any(|&a| {
                let diff: Vec<i64> = d.roots[i].iter().zip(&d.roots[a]).map(|(x, y)| x - y).collect();
                a != i && positive.iter().any(|&b| d.roots[b] == diff)
            })
        })
        .collect();
    // connected components of the Dynkin diagram
    let mut comp_of = vec![usize::MAX; simple.len()];
    let mut ncomp = 0;
    for s in 0..simple.len() {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp_of[s] = ncomp;
        while let Some(k) = stack.pop() {
            for j in 0..simple.len() {
                if comp_of[j] == usize::MAX && pairing(&d.roots[simple[k]], &d.coroots[simple[j]]) != 0 {
                    comp_of[j] = ncomp;
                    stack.push(j);
                }
            }
        }
        ncomp += 1;
    }
    let mut components = Vec::new();
    for c in 0..ncomp {
        let sim: Vec<usize> = (0..simple.len()).filter(|&k| comp_of[k] == c).map(|k| simple[k]).collect();
        let comp_roots: Vec<usize> = roots
            .iter()
            .copied()
            .filter(|&r| {
                let cf = coefficients(d, &simple, r);
                simple.iter().zip(&cf).all(|(s, x)| x.is_zero() || sim.contains(s))
            })
            .collect();
        components.push(classify_component(d, sim, comp_roots));
    }
    components.sort_by_key(|c| c.simple.iter().min().copied());
    (positive, simple, components)
}

fn classify_component(d: &RootDatum, sim: Vec<usize>, roots: Vec<usize>) -> RootComponent {
    let n = sim.len();
    let bond = |i: usize, j: usize| pairing(&d.roots[sim[i]], &d.coroots[sim[j]]) * pairing(&d.roots[sim[j]], &d.coroots[sim[i]]);
    let max_bond = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| bond(i, j)).max().unwrap_or(0);
    let degree = |i: usize| (0..n).filter(|&j| j != i && bond(i, j) != 0).count();
    let positive: Vec<usize> = roots.iter().copied().filter(|&r| d.is_positive(r)).collect();
    let mut comp = RootComponent { cartan_type: CartanType::Unsupported(String::new()), simple: sim.clone(), roots, positive, pairs: Vec::new() };
    match (n, max_bond) {
        (_, 0 | 1) if (0..n).all(|i| degree(i) <= 2) && (n == 1 || (0..n).filter(|&i| degree(i) == 1).count() == 2) => {
            // chain order starting from the endpoint with the smallest index
            let start = (0..n).filter(|&i| degree(i) <= 1).min_by_key(|&i| sim[i]).unwrap();
            let mut order = vec![start];
            while order.len() < n {
                let last = *order.last().unwrap();
                let next = (0..n).find(|&j| !order.contains(&j) && bond(last, j) != 0).unwrap();
                order.push(next);
            }
            comp.simple = order.iter().map(|&i| sim[i]).collect();
            comp.cartan_type = CartanType::A(n);
            let cf: Vec<Vec<Q>> = comp.roots.iter().map(|&r| coefficients(d, &comp.simple, r)).collect();
            comp.pairs = cf
                .iter()
                .map(|c| {
                    let nz: Vec<usize> = (0..n).filter(|&k| !c[k].is_zero()).collect();
                    let (lo, hi) = (nz[0], *nz.last().unwrap());
                    if c[lo] > Q::from(0) {
                        (lo, hi + 1)
                    } else {
                        (hi + 1, lo)
                    }
                })
                .collect();
        }
        (2, 2) | (2, 3) => {
            let (a, b) = (sim[0], sim[1]);
            let (short, long) = if d.root_norm(a) < d.root_norm(b) { (a, b) } else { (b, a) };
            comp.simple = vec![short, long];
            comp.cartan_type = if max_bond == 2 { CartanType::C2 } else { CartanType::G2 };
        }
        _ => {
            let name = match max_bond {
                0 | 1 => format!("simply-laced rank {n} (non-chain)"),
                2 => format!("doubly-laced rank {n}"),
                _ => format!("rank {n}"),
            };
            comp.cartan_type = CartanType::Unsupported(name);
        }
    }
    comp
}

/// Stabilizer of a finite-order point.
pub fn stabilizer(d: &RootDatum, w: &WeylGroup, t: &TorusPoint) -> Result<CentralizerData> {
    t.check_rank(d.rank)?;
    if !t.is_finite_order() {
        return Err(Error::QExponent);
    }
    stabilizer_formal(d, w, std::slice::from_ref(t))
}

/// Common stabilizer of several points, computed formally in (phase, q-exponent).
pub fn stabilizer_formal(d: &RootDatum, w: &WeylGroup, points: &[TorusPoint]) -> Result<CentralizerData> {
    for t in points {
        t.check_rank(d.rank)?;
    }
    let roots_trivial = roots_trivial_on(d, points);
    let (positive, simple, components) = root_subsystem(d, &roots_trivial);
    let refl: Vec<usize> = simple.iter().map(|&s| w.reflection_of(d, s)).collect();
    let reflection_part = w.group.closure(&refl);
    let full: Vec<usize> = (0..w.order()).filter(|&x| points.iter().all(|t| crate::torus::act_matrix(&w.cochar[x], t) == *t)).collect();
    let component_part: Vec<usize> = full.iter().copied().filter(|&x| positive.iter().all(|&r| positive.contains(&w.root_perm[x][r]))).collect();
    if reflection_part.len() * component_part.len() != full.len() || !reflection_part.iter().all(|x| full.contains(x)) {
        return Err(Error::Inconsistent("W_t does not factor as W(R_t) ⋊ Γ_t".into()));
    }
    Ok(CentralizerData { points: points.to_vec(), roots_trivial, positive, simple, components, reflection_part, component_part, full })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_root_datum, weyl_group};

    #[test]
    fn identity_and_generic() {
        let d = build_root_datum("G2").unwrap();
        let w = weyl_group(&d).unwrap();
        let c = stabilizer(&d, &w, &TorusPoint::identity(2)).unwrap();
        assert_eq!(c.roots_trivial.len(), 12);
        assert_eq!(c.full.len(), 12);
        assert_eq!(c.components[0].cartan_type, CartanType::G2);
        let g = stabilizer(&d, &w, &TorusPoint::parse("1/1009,1/1013").unwrap()).unwrap();
        assert_eq!(g.full.len(), 1);
        assert!(stabilizer(&d, &w, &TorusPoint::parse("0@1/2,0").unwrap()).is_err());
    }

    #[test]
    fn pgl2_order_two() {
        let d = build_root_datum("PGL2").unwrap();
        let w = weyl_group(&d).unwrap();
        let c = stabilizer(&d, &w, &TorusPoint::parse("1/2").unwrap()).unwrap();
        assert!(c.roots_trivial.is_empty());
        assert_eq!(c.full.len(), 2);
        assert_eq!(c.component_part.len(), 2);
    }

    #[test]
    fn g2_torsion_points() {
        let d = build_root_datum("G2").unwrap();
        let w = weyl_group(&d).unwrap();
        let c = stabilizer(&d, &w, &TorusPoint::parse("1/2,0").unwrap()).unwrap();
        let types: Vec<CartanType> = c.components.iter().map(|k| k.cartan_type.clone()).collect();
        assert_eq!(types, vec![CartanType::A(1), CartanType::A(1)]);
        assert_eq!(c.full.len(), 4);
        let t = stabilizer(&d, &w, &TorusPoint::parse("1/3,1/3").unwrap()).unwrap();
        assert_eq!(t.full.len(), 6);
        assert_eq!(t.components.len(), 1);
        assert_eq!(t.components[0].cartan_type, CartanType::A(2));
    }

    #[test]
    fn type_a_permutations() {
        let d = build_root_datum("GL3").unwrap();
        let w = weyl_group(&d).unwrap();
        let c = stabilizer(&d, &w, &TorusPoint::identity(3)).unwrap();
        let comp = &c.components[0];
        for x in 0..w.order() {
            let p = comp.permutation(&w, x);
            // the X^* matrix of a GL_n Weyl element is a permutation matrix
            for i in 0..3 {
                assert_eq!(w.elements[x].get(p[i], i), 1);
            }
        }
    }
}
