//! The triangle at a point t: Irr(W^s_t) (second kind), extended Springer pairs (right map)
//! and KLR parameters (bottom map), matched through the shared (x, ρ, σ) labels and checked
//! against the independent route through the labelled strata of the first kind.

use crate::cirr::CIrr;
use crate::error::{Error, Result};
use crate::extquo::{extended_quotient_first, Action, ExtendedQuotient};
use crate::klr::{
    affine_to_kl, analyse_point, enumerate_affine_springer, h_classes, kl_to_affine, l_packets, label_strata_each, theta_z, to_klr, HClasses, StratumLabel,
};
use crate::par;
use crate::torus::{fixed_locus, FixedLocus, TorusCoordinate, TorusPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sample {
    StrataGeneric,
    /// k seeded random finite-order points on every stratum.
    Random {
        per_stratum: usize,
        seed: u64,
    },
    Points(Vec<TorusPoint>),
}

impl Sample {
    /// "strata-generic", "random:K" or point literals separated by ';'.
    pub fn parse(s: &str, seed: u64) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "strata-generic" {
            return Ok(Sample::StrataGeneric);
        }
        if let Some(k) = s.strip_prefix("random:") {
            let per_stratum = k.trim().parse().map_err(|_| Error::Parse(format!("bad sample count {k:?}")))?;
            return Ok(Sample::Random { per_stratum, seed });
        }
        Ok(Sample::Points(s.split(';').map(TorusPoint::parse).collect::<Result<_>>()?))
    }
}

pub fn random_stratum_points(eq: &ExtendedQuotient, per_stratum: usize, seed: u64) -> Vec<TorusPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for s in &eq.strata {
        for _ in 0..per_stratum {
            let z: Vec<TorusCoordinate> = (0..s.dim)
                .map(|_| {
                    let n = rng.gen_range(1..=24);
                    TorusCoordinate::root_of_unity(rng.gen_range(0..n), n)
                })
                .collect();
            out.push(s.component.point_at(&z));
        }
    }
    out
}

/// One element of the fiber over t, followed around the triangle.
#[derive(Clone, Debug, Serialize)]
pub struct Matching {
    /// w ∈ W^s_t representing the class, as a Weyl word.
    pub w: Vec<usize>,
    /// ψ_t([w]) and the right-map preimage of it.
    pub chi: usize,
    pub pair: usize,
    pub tau: String,
    pub unipotent: String,
    pub rho: String,
    pub sigma: String,
    /// The bottom image.
    pub h_label: String,
    pub t_q: TorusPoint,
    pub packet: usize,
    /// The point (w, t) on the first kind: its stratum and the θ_{√q}-image there.
    pub stratum: usize,
    pub stratum_label: String,
    pub stratum_t_q: TorusPoint,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointReport {
    pub point: TorusPoint,
    pub irr_w_t: usize,
    pub left: usize,
    pub right: usize,
    pub bottom: usize,
    pub matchings: Vec<Matching>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleReport {
    pub group: String,
    pub inertial: Vec<TorusPoint>,
    pub c_irr: String,
    pub verdict: String,
    /// Side conditions taken on trust (none for unramified data).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assumed: Vec<String>,
    pub labels: Vec<StratumLabel>,
    pub points: Vec<PointReport>,
}

/// Pseudo-generic point of every stratum, deduplicated up to W^s.
pub fn strata_generic_points(a: &Action, eq: &ExtendedQuotient) -> Vec<TorusPoint> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in &eq.strata {
        let p = s.component.generic_point();
        if seen.insert(a.canonical(&p)) {
            out.push(p);
        }
    }
    out
}

struct Ctx<'a> {
    a: &'a Action,
    eq: &'a ExtendedQuotient,
    labels: &'a [Result<StratumLabel>],
    loci: Vec<FixedLocus>,
    hc: HClasses,
    sys: &'a dyn CIrr,
}

impl Ctx<'_> {
    /// The stratum through (w, t) and a W^s-translate of t lying on its component.
    fn locate(&self, w: usize, t: &TorusPoint) -> Option<(usize, TorusPoint)> {
        let a = self.a;
        for (i, s) in self.eq.strata.iter().enumerate() {
            for &u in &a.elements {
                if a.weyl.mul(a.weyl.mul(u, w), a.weyl.inv(u)) != s.class_rep {
                    continue;
                }
                let p = a.act(u, t);
                if self.loci[i].component_of(&p) == Some(s.component_index) {
                    return Some((i, p));
                }
            }
        }
        None
    }

    fn point(&self, t: &TorusPoint) -> PointReport {
        match self.point_inner(t) {
            Ok(r) => r,
            Err(e) => PointReport {
                point: t.clone(),
                irr_w_t: 0,
                left: 0,
                right: 0,
                bottom: 0,
                matchings: Vec::new(),
                verdict: if matches!(e, Error::Unsupported(_)) { "unsupported".into() } else { "fail".into() },
                failures: vec![e.to_string()],
            },
        }
    }

    fn point_inner(&self, t: &TorusPoint) -> Result<PointReport> {
        let a = self.a;
        let sq = TorusCoordinate::sqrt_q();
        let pd = analyse_point(a, t)?;
        let table = &pd.fib.table;
        let irr = table.characters.len();
        let mut failures = Vec::new();

        let params = enumerate_affine_springer(a, t)?;
        let klr = params.iter().map(|p| to_klr(a, &self.hc, p)).collect::<Result<Vec<_>>>()?;
        let packets = l_packets(&klr);
        for p in &params {
            match kl_to_affine(a, &affine_to_kl(p)) {
                Ok(back) if back.pair == p.pair => {}
                Ok(back) => failures.push(format!("KL round trip sends pair {} to {}", p.pair, back.pair)),
                Err(e) => failures.push(format!("KL round trip failed for pair {}: {e}", p.pair)),
            }
        }
        let bottom: BTreeSet<String> = klr.iter().map(|k| serde_json::to_string(k).unwrap()).collect();

        let mut matchings = Vec::new();
        let mut hit = vec![false; irr];
        for k in 0..table.num_classes() {
            let w = pd.fib.subgroup.embedding[table.classes.rep(k)];
            let chi = self.sys.psi(a, &pd.fib, w)?;
            hit[chi] = true;
            let pair = pd.right.iter().position(|&c| c == chi).ok_or_else(|| Error::Inconsistent("right map misses a character".into()))?;
            let param = params.iter().position(|p| p.pair == pair).unwrap();
            let bk = &klr[param];
            let (si, p) = self.locate(w, t).ok_or_else(|| Error::Inconsistent(format!("no stratum contains ({:?}, {t})", a.weyl.words[w])))?;
            let s = &self.eq.strata[si];
            let l = self.labels[si].as_ref().map_err(Clone::clone)?;
            let img = theta_z(a, s, l, sq, &p)?;
            if theta_z(a, s, l, TorusCoordinate::one(), &p)? != a.canonical(t) {
                failures.push(format!("θ_1 differs from the projection on stratum {si}"));
            }
            if l.h_class != bk.h_class || img != bk.t_q {
                failures.push(format!(
                    "class of {:?}: stratum {si} gives ({}, {img}), the right and bottom maps give ({}, {})",
                    a.weyl.words[w], l.label, bk.h_label, bk.t_q
                ));
            }
            let ep = &pd.ext.pairs[pair];
            matchings.push(Matching {
                w: a.weyl.words[w].clone(),
                chi,
                pair,
                tau: ep.tau_label.clone(),
                unipotent: params[param].class.label.clone(),
                rho: params[param].rho_label.clone(),
                sigma: ep.sigma_label.clone(),
                h_label: bk.h_label.clone(),
                t_q: bk.t_q.clone(),
                packet: packets[param],
                stratum: si,
                stratum_label: l.label.clone(),
                stratum_t_q: img,
            });
        }
        if hit.iter().any(|h| !h) {
            failures.push("ψ_t is not onto Irr(W_t)".into());
        }
        let (left, right, bottom) = (table.num_classes(), pd.ext.pairs.len(), bottom.len());
        if left != irr || right != irr || bottom != irr {
            failures.push(format!("fiber sizes left {left}, right {right}, bottom {bottom}, |Irr(W_t)| = {irr}"));
        }
        let verdict = if failures.is_empty() { "pass" } else { "fail" };
        Ok(PointReport { point: t.clone(), irr_w_t: irr, left, right, bottom, matchings, verdict: verdict.into(), failures })
    }
}

pub fn verify_triangle(a: &Action, sys: &dyn CIrr, sample: &Sample) -> Result<TriangleReport> {
    let eq = extended_quotient_first(a)?;
    let each = label_strata_each(a, &eq, sys)?;
    if let Some(Err(e)) = each.iter().find(|l| matches!(l, Err(e) if !matches!(e, Error::Unsupported(_)))) {
        return Err(e.clone());
    }
    let points = match sample {
        Sample::StrataGeneric => strata_generic_points(a, &eq),
        Sample::Random { per_stratum, seed } => random_stratum_points(&eq, *per_stratum, *seed),
        Sample::Points(p) => {
            for x in p {
                x.check_rank(a.rank())?;
                if !x.is_finite_order() {
                    return Err(Error::QExponent);
                }
            }
            p.clone()
        }
    };
    let ctx = Ctx { a, eq: &eq, labels: &each, loci: eq.strata.iter().map(|s| fixed_locus(&a.weyl.cochar[s.class_rep])).collect(), hc: h_classes(a)?, sys };
    let reports = par::map(&points, |t| ctx.point(t));
    let verdict = if reports.iter().any(|r| r.verdict == "fail") {
        "fail"
    } else if reports.iter().any(|r| r.verdict == "unsupported") {
        "unsupported"
    } else {
        "pass"
    };
    Ok(TriangleReport {
        group: a.datum.label.clone(),
        inertial: a.inertial.clone(),
        c_irr: sys.name(),
        verdict: verdict.into(),
        assumed: if a.inertial.is_empty() {
            Vec::new()
        } else {
            vec!["residual characteristic large enough for the ramified inertial character (not checked)".into()]
        },
        labels: each.into_iter().flatten().collect(),
        points: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cirr::StandardCIrr;
    use crate::root_datum::build_root_datum;

    fn run(label: &str, sample: Sample) -> TriangleReport {
        let a = Action::unramified(build_root_datum(label).unwrap()).unwrap();
        verify_triangle(&a, &StandardCIrr::default(), &sample).unwrap()
    }

    #[test]
    fn gl2_diagonal() {
        let r = run("GL2", Sample::parse("1/5,1/5", 0).unwrap());
        assert_eq!(r.verdict, "pass", "{:?}", r.points);
        assert_eq!((r.points[0].left, r.points[0].right, r.points[0].bottom), (2, 2, 2));
    }

    #[test]
    fn g2_identity() {
        let r = run("G2", Sample::parse("0/1,0/1", 0).unwrap());
        assert_eq!(r.verdict, "pass", "{:?}", r.points[0].failures);
        assert_eq!(r.points[0].left, 6);
    }

    #[test]
    fn inversion_minus_one() {
        let r = run("A1", Sample::parse("1/2", 0).unwrap());
        assert_eq!(r.verdict, "pass");
        assert_eq!(r.points[0].left, 2);
    }
}
