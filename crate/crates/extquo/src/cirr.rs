//! c-Irr systems: compatible bijections between conjugacy classes and irreducible
//! characters of the stabilizers W^s_t, and a checker for the compatibility conditions.

use crate::centralizer::CartanType;
use crate::chartable::{character_table, induce, ClassFn};
use crate::cyclo::Cyc;
use crate::error::{Error, Result};
use crate::extquo::{second_kind_fiber, Action, ExtendedQuotient, SecondKindFiber};
use crate::partition::{conjugate, format_partition, parse_partition};
use crate::springer::component_table;
use crate::torus::{fixed_locus_common, TorusPoint};
use serde::Serialize;

pub trait CIrr: Sync {
    fn name(&self) -> String;

    /// ψ_t([w]) as an index into the character table of W^s_t.
    fn psi(&self, a: &Action, fib: &SecondKindFiber, w: usize) -> Result<usize>;

    /// ψ_t on every class of W^s_t (indexed like the table's classes); must be a bijection.
    fn assignment(&self, a: &Action, fib: &SecondKindFiber) -> Result<Vec<usize>> {
        let k = fib.table.num_classes();
        let mut out = Vec::with_capacity(k);
        for c in 0..k {
            out.push(self.psi(a, fib, fib.subgroup.embedding[fib.table.classes.rep(c)])?);
        }
        let mut seen = out.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != k {
            return Err(Error::Inconsistent(format!("{} is not a bijection at {}", self.name(), fib.point)));
        }
        Ok(out)
    }

    /// ψ_t⁻¹(χ) as a class index of W^s_t.
    fn inverse(&self, a: &Action, fib: &SecondKindFiber, chi: usize) -> Result<usize> {
        let asg = self.assignment(a, fib)?;
        Ok(asg.iter().position(|&c| c == chi).unwrap())
    }
}

/// Product of symmetric-group dictionaries (cycle type μ ↦ χ^{μ'}) with fixed
/// class-to-character tables for C2 and G2 components, and the sign rule for a
/// component group of order two with no roots.
#[derive(Clone, Debug)]
pub struct StandardCIrr {
    pub g2: Vec<(String, String)>,
    pub c2: Vec<(String, String)>,
}

fn pairs(p: &[(&str, &str)]) -> Vec<(String, String)> {
    p.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

impl Default for StandardCIrr {
    fn default() -> Self {
        StandardCIrr {
            g2: pairs(&[("e", "1"), ("s_short", "refl2"), ("s_long", "eps_s"), ("r", "sgn"), ("r2", "refl"), ("r3", "eps_l")]),
            c2: pairs(&[("e", "1"), ("s_short", "refl"), ("s_long", "eps_s"), ("r", "sgn"), ("r2", "eps_l")]),
        }
    }
}

impl CIrr for StandardCIrr {
    fn name(&self) -> String {
        "standard".into()
    }

    fn psi(&self, a: &Action, fib: &SecondKindFiber, w: usize) -> Result<usize> {
        let cd = &fib.stabilizer;
        let table = &fib.table;
        if fib.position(w).is_none() {
            return Err(Error::Invalid("element does not fix the point".into()));
        }
        if cd.is_connected() {
            let mut labels = Vec::new();
            let mut tabs = Vec::new();
            for comp in &cd.components {
                let t = component_table(&comp.cartan_type)?;
                let key = t.class_key(&a.datum, &a.weyl, comp, w);
                let name = match &comp.cartan_type {
                    CartanType::A(_) => format_partition(&conjugate(&parse_partition(&key).unwrap())),
                    CartanType::G2 => lookup(&self.g2, &key)?,
                    CartanType::C2 => lookup(&self.c2, &key)?,
                    CartanType::Unsupported(s) => return Err(Error::Unsupported(format!("c-Irr for type {s}"))),
                };
                labels.push(t.irrep_index(&name).ok_or_else(|| Error::Inconsistent(format!("unknown character {name}")))?);
                tabs.push(t);
            }
            let f: ClassFn = (0..table.num_classes())
                .map(|k| {
                    let x = fib.subgroup.embedding[table.classes.rep(k)];
                    let v: i64 = cd.components.iter().zip(&tabs).zip(&labels).map(|((c, t), &i)| t.value(&a.datum, &a.weyl, c, i, x)).product();
                    Cyc::from_int(1, v)
                })
                .collect();
            return table.index_of(&f).ok_or_else(|| Error::Inconsistent("product character is not irreducible".into()));
        }
        if cd.roots_trivial.is_empty() && cd.component_part.len() == 2 {
            let triv = table.index_of(&table.trivial()).unwrap();
            return Ok(if w == a.weyl.identity { triv } else { 1 - triv });
        }
        Err(Error::Unsupported(format!(
            "c-Irr for a stabilizer with {} roots and component group of order {}",
            cd.roots_trivial.len(),
            cd.component_part.len()
        )))
    }
}

fn lookup(rule: &[(String, String)], key: &str) -> Result<String> {
    rule.iter().find(|(k, _)| k == key).map(|(_, v)| v.clone()).ok_or_else(|| Error::Inconsistent(format!("no c-Irr entry for class {key}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionResult {
    pub condition: usize,
    pub pass: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CIrrReport {
    pub system: String,
    pub points: usize,
    pub conditions: Vec<ConditionResult>,
    pub pass: bool,
}

/// Base points and pseudo-generic points of every stratum, plus the identity.
pub fn c_irr_sample_points(a: &Action, eq: &ExtendedQuotient) -> Vec<TorusPoint> {
    let mut pts = vec![TorusPoint::identity(a.rank())];
    for s in &eq.strata {
        pts.push(s.component.base.clone());
        pts.push(s.component.generic_point());
    }
    pts.sort();
    pts.dedup();
    pts
}

struct Sample {
    fib: SecondKindFiber,
    psi: Vec<usize>,
}

fn fail(res: &mut ConditionResult, w: String) {
    if res.pass {
        res.pass = false;
        res.witness = Some(w);
    }
}

/// Check conditions (1)–(4) on the given points (and their W^s-translates for (2)).
pub fn verify_c_irr(system: &dyn CIrr, a: &Action, points: &[TorusPoint]) -> Result<CIrrReport> {
    let mut samples = Vec::new();
    for p in points {
        let fib = second_kind_fiber(a, p)?;
        let psi = system.assignment(a, &fib)?;
        samples.push(Sample { fib, psi });
    }
    let mut c = (1..=4).map(|k| ConditionResult { condition: k, pass: true, checked: 0, witness: None }).collect::<Vec<_>>();

    for s in &samples {
        c[0].checked += 1;
        let triv = s.fib.table.index_of(&s.fib.table.trivial()).unwrap();
        if s.psi[s.fib.table.classes.class_of[s.fib.subgroup.group.identity()]] != triv {
            fail(&mut c[0], format!("identity class not sent to the trivial character at {}", s.fib.point));
        }
    }

    for s in &samples {
        for &g in &a.elements {
            let y = a.act(g, &s.fib.point);
            let fy = second_kind_fiber(a, &y)?;
            let gi = a.weyl.inv(g);
            for k in 0..s.fib.table.num_classes() {
                c[1].checked += 1;
                let h = s.fib.subgroup.embedding[s.fib.table.classes.rep(k)];
                let hy = a.weyl.mul(a.weyl.mul(g, h), gi);
                let chi_y = system.psi(a, &fy, hy)?;
                let chi_x = s.psi[k];
                let ok = s.fib.subgroup.embedding.iter().all(|&e| {
                    let ey = a.weyl.mul(a.weyl.mul(g, e), gi);
                    let vy = fy.table.value(&fy.table.characters[chi_y], fy.position(ey).unwrap());
                    let vx = s.fib.table.value(&s.fib.table.characters[chi_x], s.fib.position(e).unwrap());
                    vy == vx
                });
                if !ok {
                    fail(&mut c[1], format!("conjugation by {:?} breaks equivariance at {} for class of {:?}", a.weyl.words[g], s.fib.point, a.weyl.words[h]));
                }
            }
        }
    }

    for x in &samples {
        let gx = &x.fib.subgroup.embedding;
        let mats: Vec<_> = gx.iter().map(|&e| a.weyl.cochar[e].clone()).collect();
        let fl = fixed_locus_common(a.rank(), &mats);
        let cx = fl.component_of(&x.fib.point);
        for y in &samples {
            if std::ptr::eq(x, y) {
                continue;
            }
            let gy = &y.fib.subgroup.embedding;
            if !gx.iter().all(|e| gy.binary_search(e).is_ok()) || fl.component_of(&y.fib.point) != cx {
                continue;
            }
            if gx == gy {
                c[2].checked += 1;
                if x.psi != y.psi {
                    fail(&mut c[2], format!("{} and {} share a stabilizer and a component but differ", x.fib.point, y.fib.point));
                }
                continue;
            }
            // Γ_x inside Γ_y
            let pos: Vec<usize> = gx.iter().map(|e| y.fib.position(*e).unwrap()).collect();
            let sub = y.fib.subgroup.group.subgroup(&pos)?;
            let st = character_table(&sub.group)?;
            for k in 0..x.fib.table.num_classes() {
                c[3].checked += 1;
                let chi_x = &x.fib.table.characters[x.psi[k]];
                let phi: ClassFn = (0..st.num_classes())
                    .map(|j| {
                        let e = y.fib.subgroup.embedding[sub.embedding[st.classes.rep(j)]];
                        x.fib.table.value(chi_x, x.fib.position(e).unwrap())
                    })
                    .collect();
                let ind = induce(&y.fib.subgroup.group, &y.fib.table, &sub, &st, &phi);
                let gamma = gx[x.fib.table.classes.rep(k)];
                let ky = y.fib.table.classes.class_of[y.fib.position(gamma).unwrap()];
                let chi_y = &y.fib.table.characters[y.psi[ky]];
                if y.fib.table.inner(&ind, chi_y) == num_traits::Zero::zero() {
                    fail(
                        &mut c[3],
                        format!("ψ at {} of the class of {:?} does not occur in the induced ψ from {}", y.fib.point, a.weyl.words[gamma], x.fib.point),
                    );
                }
            }
        }
    }
    let pass = c.iter().all(|r| r.pass);
    Ok(CIrrReport { system: system.name(), points: samples.len(), conditions: c, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extquo::extended_quotient_first;
    use crate::root_datum::build_root_datum;

    fn report(label: &str, sys: &dyn CIrr) -> CIrrReport {
        let a = Action::unramified(build_root_datum(label).unwrap()).unwrap();
        let eq = extended_quotient_first(&a).unwrap();
        verify_c_irr(sys, &a, &c_irr_sample_points(&a, &eq)).unwrap()
    }

    #[test]
    fn standard_system_passes() {
        for g in ["A1", "GL2", "GL3", "A2", "C2", "G2", "PGL2"] {
            let r = report(g, &StandardCIrr::default());
            assert!(r.pass, "{g}: {:?}", r.conditions);
            assert!(r.conditions[3].checked > 0 || g == "PGL2", "{g}");
        }
    }

    #[test]
    fn swapped_system_fails_condition_four() {
        let mut s = StandardCIrr::default();
        for (k, v) in s.g2.iter_mut() {
            if k == "s_short" {
                *v = "eps_s".into();
            } else if k == "s_long" {
                *v = "refl2".into();
            }
        }
        let r = report("G2", &s);
        assert!(!r.conditions[3].pass);
        assert!(r.conditions[3].witness.is_some());
    }
}
