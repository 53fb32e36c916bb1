//! The inner-form GL_m(D) picture: blocks (m_i, e_i, n_i), the combinatorial Langlands map
//! φ^s(t, τ) and its inverse, the GL triangle and the flat families Y_v.

use crate::chartable::character_table;
use crate::error::{Error, Result};
use crate::extquo::Action;
use crate::group::FiniteGroup;
use crate::partition::{conjugate, format_partition, parse_partition, partition_count, partitions, Partition};
use crate::torus::{TorusCoordinate, TorusPoint};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlBlock {
    pub m: usize,
    pub e: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InertialDataGL {
    pub blocks: Vec<GlBlock>,
}

impl InertialDataGL {
    pub fn new(blocks: Vec<GlBlock>) -> Result<Self> {
        if blocks.is_empty() || blocks.iter().any(|b| b.m == 0 || b.e == 0 || b.n == 0) {
            return Err(Error::Invalid("blocks need m, e, n ≥ 1".into()));
        }
        Ok(InertialDataGL { blocks })
    }

    /// "m=1,e=2,n=1;m=2,e=1,n=1".
    pub fn parse(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in s.split(';').filter(|p| !p.trim().is_empty()) {
            let (mut m, mut e, mut n) = (1, None, 1);
            for kv in part.split(',') {
                let (k, v) = kv.split_once('=').ok_or_else(|| Error::Parse(format!("bad block entry {kv:?}")))?;
                let v: usize = v.trim().parse().map_err(|_| Error::Parse(format!("bad number in {kv:?}")))?;
                match k.trim() {
                    "m" => m = v,
                    "e" => e = Some(v),
                    "n" => n = v,
                    o => return Err(Error::Parse(format!("unknown block key {o:?}"))),
                }
            }
            blocks.push(GlBlock { m, e: e.ok_or_else(|| Error::Parse("block without e".into()))?, n });
        }
        Self::new(blocks)
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().map(|b| b.e).sum()
    }
}

/// A coordinate of T_i: a torus literal (normalized) or a symbolic generic value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GlValue(pub String);

impl GlValue {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty coordinate".into()));
        }
        if s.chars().next().unwrap().is_ascii_alphabetic() {
            return Ok(GlValue(s.to_string()));
        }
        Ok(GlValue(TorusCoordinate::parse(s)?.to_string()))
    }
}

/// Per block, the coordinates of t.
pub type GlPoint = Vec<Vec<GlValue>>;

/// Per block, τ_j = χ^λ for each distinct value (in order of first appearance).
pub type GlTau = Vec<Vec<Partition>>;

pub fn parse_gl_point(s: &str) -> Result<GlPoint> {
    s.split(';').map(|b| b.split(',').map(GlValue::parse).collect()).collect()
}

/// "sgn", "triv" or a partition label per distinct value; blocks separated by ';'.
pub fn parse_gl_tau(s: &str, t: &GlPoint) -> Result<GlTau> {
    let blocks: Vec<&str> = s.split(';').collect();
    if blocks.len() != t.len() {
        return Err(Error::Invalid("τ and t have different block counts".into()));
    }
    blocks
        .iter()
        .zip(t)
        .map(|(b, tb)| {
            let vals = distinct_values(tb);
            let items = split_top_level(b);
            if items.len() != vals.len() {
                return Err(Error::Invalid(format!("expected {} characters, got {}", vals.len(), items.len())));
            }
            items
                .iter()
                .zip(&vals)
                .map(|(it, (_, k))| match it.trim() {
                    "sgn" => Ok(vec![1; *k]),
                    "triv" => Ok(vec![*k]),
                    o => parse_partition(o).ok_or_else(|| Error::Parse(format!("bad character {o:?}"))),
                })
                .collect()
        })
        .collect()
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur);
    out
}

/// Distinct values with multiplicities, in order of first appearance.
fn distinct_values(t: &[GlValue]) -> Vec<(GlValue, usize)> {
    let mut out: Vec<(GlValue, usize)> = Vec::new();
    for v in t {
        match out.iter_mut().find(|(w, _)| w == v) {
            Some((_, k)) => *k += 1,
            None => out.push((v.clone(), 1)),
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GlSummand {
    pub block: usize,
    pub z: GlValue,
    /// Jordan type p_j: the summand is (R(p_1) ⊕ … ⊕ R(p_l)) ⊗ ν_z ⊗ η_i.
    pub partition: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LanglandsParamGL {
    pub summands: Vec<GlSummand>,
}

fn check_shape(data: &InertialDataGL, t: &GlPoint) -> Result<()> {
    if t.len() != data.blocks.len() {
        return Err(Error::Invalid(format!("t has {} blocks, data has {}", t.len(), data.blocks.len())));
    }
    for (b, tb) in data.blocks.iter().zip(t) {
        if tb.len() != b.e {
            return Err(Error::Invalid(format!("block with e = {} given {} coordinates", b.e, tb.len())));
        }
    }
    Ok(())
}

pub fn gl_phi(data: &InertialDataGL, t: &GlPoint, tau: &GlTau) -> Result<LanglandsParamGL> {
    check_shape(data, t)?;
    if tau.len() != t.len() {
        return Err(Error::Invalid("τ and t have different block counts".into()));
    }
    let mut summands = Vec::new();
    for (i, (tb, taub)) in t.iter().zip(tau).enumerate() {
        let vals = distinct_values(tb);
        if vals.len() != taub.len() {
            return Err(Error::Invalid("one character per distinct coordinate is required".into()));
        }
        for ((z, b), lambda) in vals.into_iter().zip(taub) {
            if lambda.iter().sum::<usize>() != b {
                return Err(Error::Invalid(format!("partition {} does not match multiplicity {b}", format_partition(lambda))));
            }
            summands.push(GlSummand { block: i, z, partition: conjugate(lambda) });
        }
    }
    summands.sort();
    Ok(LanglandsParamGL { summands })
}

/// (t, τ) in canonical form: distinct values sorted within each block.
pub fn gl_phi_inverse(data: &InertialDataGL, phi: &LanglandsParamGL) -> Result<(GlPoint, GlTau)> {
    let mut t: GlPoint = vec![Vec::new(); data.blocks.len()];
    let mut tau: GlTau = vec![Vec::new(); data.blocks.len()];
    let mut s = phi.summands.clone();
    s.sort();
    for x in &s {
        if x.block >= data.blocks.len() {
            return Err(Error::Invalid("summand refers to a missing block".into()));
        }
        if t[x.block].contains(&x.z) {
            return Err(Error::Invalid(format!("value {} repeated in block {}", x.z.0, x.block)));
        }
        let b: usize = x.partition.iter().sum();
        t[x.block].extend(std::iter::repeat_n(x.z.clone(), b));
        tau[x.block].push(conjugate(&x.partition));
    }
    for (b, tb) in data.blocks.iter().zip(&t) {
        if tb.len() != b.e {
            return Err(Error::Invalid(format!("partition sizes sum to {} in a block with e = {}", tb.len(), b.e)));
        }
    }
    Ok((t, tau))
}

pub fn canonical_gl(t: &GlPoint, tau: &GlTau) -> (GlPoint, GlTau) {
    let mut ct = Vec::new();
    let mut ctau = Vec::new();
    for (tb, taub) in t.iter().zip(tau) {
        let mut pairs: Vec<((GlValue, usize), Partition)> = distinct_values(tb).into_iter().zip(taub.iter().cloned()).collect();
        pairs.sort();
        ct.push(pairs.iter().flat_map(|((v, k), _)| std::iter::repeat_n(v.clone(), *k)).collect());
        ctau.push(pairs.into_iter().map(|(_, p)| p).collect());
    }
    (ct, ctau)
}

/// All τ ∈ Irr(W_t) for W_t = ∏ S_{b_j}.
pub fn gl_fiber(t: &GlPoint) -> Vec<GlTau> {
    let per_block: Vec<Vec<Vec<Partition>>> = t
        .iter()
        .map(|tb| {
            let mut acc: Vec<Vec<Partition>> = vec![Vec::new()];
            for (_, b) in distinct_values(tb) {
                acc = acc.into_iter().flat_map(|p| partitions(b).into_iter().map(move |l| [p.clone(), vec![l]].concat())).collect();
            }
            acc
        })
        .collect();
    let mut out: Vec<GlTau> = vec![Vec::new()];
    for blk in per_block {
        out = out.into_iter().flat_map(|p| blk.iter().map(move |c| [p.clone(), vec![c.clone()]].concat())).collect();
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct GlMatching {
    /// Cycle types of the element w ∈ W_t (extended quotient of the first kind).
    pub cycle_types: Vec<Vec<String>>,
    /// ψ(w) = τ, as χ^λ labels.
    pub tau: Vec<Vec<String>>,
    pub phi: LanglandsParamGL,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlPointReport {
    pub t: GlPoint,
    pub left: usize,
    pub right: usize,
    pub bottom: usize,
    pub expected: usize,
    pub matchings: Vec<GlMatching>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlTriangleReport {
    pub data: InertialDataGL,
    pub verdict: String,
    pub points: Vec<GlPointReport>,
}

fn w_t_irr_count(t: &GlPoint) -> Result<usize> {
    let mut g = FiniteGroup::trivial();
    for tb in t {
        for (_, b) in distinct_values(tb) {
            g = FiniteGroup::direct_product(&g, &FiniteGroup::symmetric(b));
        }
    }
    Ok(character_table(&g)?.num_classes())
}

fn labels(tau: &GlTau) -> Vec<Vec<String>> {
    tau.iter().map(|b| b.iter().map(|p| format_partition(p)).collect()).collect()
}

/// Sample points: in every block, one point per multiplicity pattern (partition of e_i).
pub fn gl_sample(data: &InertialDataGL) -> Vec<GlPoint> {
    let mut out: Vec<GlPoint> = vec![Vec::new()];
    for (i, b) in data.blocks.iter().enumerate() {
        let pats: Vec<Vec<GlValue>> = partitions(b.e)
            .into_iter()
            .map(|p| p.iter().enumerate().flat_map(|(j, &k)| std::iter::repeat_n(GlValue(format!("z{i}_{j}")), k)).collect())
            .collect();
        out = out.into_iter().flat_map(|t| pats.iter().map(move |p| [t.clone(), vec![p.clone()]].concat())).collect();
    }
    out
}

pub fn gl_triangle(data: &InertialDataGL, sample: &[GlPoint]) -> Result<GlTriangleReport> {
    let mut points = Vec::new();
    for t in sample {
        check_shape(data, t)?;
        let mut failures = Vec::new();
        let expected: usize = t.iter().flat_map(|tb| distinct_values(tb).into_iter().map(|(_, b)| partition_count(b))).product();
        let left = w_t_irr_count(t)?;
        let fiber = gl_fiber(t);
        // first kind: classes of W_t are tuples of cycle types
        let classes = fiber.clone();
        let mut images = BTreeSet::new();
        let mut matchings = Vec::new();
        for mu in &classes {
            // c-Irr: cycle type μ ↦ χ^{μ'}
            let tau: GlTau = mu.iter().map(|b| b.iter().map(|p| conjugate(p)).collect()).collect();
            let phi = gl_phi(data, t, &tau)?;
            // direct route: the point (w, t) carries the unipotent of Jordan type μ
            let mut direct: Vec<GlSummand> = Vec::new();
            for (i, (tb, mb)) in t.iter().zip(mu).enumerate() {
                for ((z, _), p) in distinct_values(tb).into_iter().zip(mb) {
                    direct.push(GlSummand { block: i, z, partition: p.clone() });
                }
            }
            direct.sort();
            if direct != phi.summands {
                failures.push(format!("φ(ψ(w)) differs from the direct labelling for cycle types {:?}", labels(mu)));
            }
            let (bt, btau) = gl_phi_inverse(data, &phi)?;
            if (bt.clone(), btau.clone()) != canonical_gl(t, &tau) {
                failures.push(format!("φ⁻¹ does not return (t, τ) for {:?}", labels(&tau)));
            }
            if gl_phi(data, &bt, &btau)? != phi {
                failures.push("φ ∘ φ⁻¹ is not the identity".into());
            }
            images.insert(format!("{:?}", phi.summands));
            matchings.push(GlMatching { cycle_types: labels(mu), tau: labels(&tau), phi });
        }
        let right = classes.len();
        let bottom = images.len();
        if !(left == expected && right == expected && bottom == expected && fiber.len() == expected) {
            failures.push(format!("fiber sizes left {left}, right {right}, bottom {bottom}, expected {expected}"));
        }
        // multiplicativity across blocks
        if data.blocks.len() > 1 {
            let prod: usize = data.blocks.iter().zip(t).map(|(b, tb)| gl_fiber(&vec![tb.clone()]).len().max(usize::from(b.e == 0))).product();
            if prod != fiber.len() {
                failures.push("fiber does not factor over blocks".into());
            }
        }
        let verdict = if failures.is_empty() { "pass" } else { "fail" };
        points.push(GlPointReport { t: t.clone(), left, right, bottom, expected, matchings, verdict: verdict.into(), failures });
    }
    let verdict = if points.iter().all(|p| p.verdict == "pass") { "pass" } else { "fail" };
    Ok(GlTriangleReport { data: data.clone(), verdict: verdict.into(), points })
}

/// Membership in Y_v = {∏_{i≠j} (z_i − v² z_j) = 0}.
pub fn flat_family_membership(v: TorusCoordinate, point: &[TorusCoordinate]) -> bool {
    let v2 = v.mul(&v);
    (0..point.len()).any(|i| (0..point.len()).any(|j| i != j && point[i] == v2.mul(&point[j])))
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyLocus {
    pub e: usize,
    pub v: String,
    /// The hypersurface is the union of the hyperplanes z_i = v²·z_j over these pairs.
    pub pairs: Vec<(usize, usize)>,
    pub conditions: Vec<String>,
}

pub fn flat_family_locus(e: usize, v: TorusCoordinate) -> FamilyLocus {
    let pairs: Vec<(usize, usize)> = (0..e).flat_map(|i| (0..e).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let v2 = v.mul(&v);
    let conditions = pairs.iter().map(|(i, j)| format!("z{} = ({v2})·z{}", i + 1, j + 1)).collect();
    FamilyLocus { e, v: v.to_string(), pairs, conditions }
}

/// The G2 family Y_α = {(1 − α²y)(x − α²y) = 0}, for the point itself.
pub fn g2_family_membership(alpha: TorusCoordinate, p: &TorusPoint) -> bool {
    let a2 = alpha.mul(&alpha);
    let (x, y) = (p.coords[0], p.coords[1]);
    a2.mul(&y).is_one() || x == a2.mul(&y)
}

/// Whether some W^s-translate of p lies on the G2 family.
pub fn g2_family_orbit_membership(a: &Action, alpha: TorusCoordinate, p: &TorusPoint) -> bool {
    a.orbit(p).iter().any(|q| g2_family_membership(alpha, q))
}
